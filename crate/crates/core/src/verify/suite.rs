use super::config::SuiteConfig;
use super::ortho::{orthogonality_suite, selfadjoint_check};
use super::report::CheckReport;
use super::spectral::{eigen_h, eigen_l, eigen_q, eigen_y};
use super::structure::{cmv_suite, identity_suite};
use crate::algebra::{relation_suite, RelationConfig};
use crate::error::{Error, Result};
use crate::realline::{check_three_term, special_suite, UFamily};
use std::fmt;
use std::str::FromStr;

/// Random pairs used by [`Suite::SelfAdjoint`].
pub const SELFADJOINT_PAIRS: usize = 100;

/// Every verification suite, addressable by its command-line name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    EigenL,
    EigenH,
    EigenQ,
    EigenY,
    Ortho,
    SelfAdjoint,
    Algebra,
    Identities,
    Cmv,
    ThreeTerm,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::EigenL,
        Suite::EigenH,
        Suite::EigenQ,
        Suite::EigenY,
        Suite::Ortho,
        Suite::SelfAdjoint,
        Suite::Algebra,
        Suite::Identities,
        Suite::Cmv,
        Suite::ThreeTerm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::EigenL => "eigen-l",
            Suite::EigenH => "eigen-h",
            Suite::EigenQ => "eigen-q",
            Suite::EigenY => "eigen-y",
            Suite::Ortho => "ortho",
            Suite::SelfAdjoint => "selfadjoint",
            Suite::Algebra => "algebra",
            Suite::Identities => "identities",
            Suite::Cmv => "cmv",
            Suite::ThreeTerm => "three-term",
        }
    }

    /// Runs the suite. Parameters whose Verblunsky sequence leaves the unit
    /// interval are rejected up front with [`Error::Validity`].
    pub fn run(self, cfg: &SuiteConfig) -> Result<CheckReport> {
        cfg.validate()?;
        cfg.params.validate(cfg.n_max + 2)?;
        match self {
            Suite::EigenL => eigen_l(cfg),
            Suite::EigenH => eigen_h(cfg),
            Suite::EigenQ => eigen_q(cfg),
            Suite::EigenY => eigen_y(cfg),
            Suite::Ortho => orthogonality_suite(cfg),
            Suite::SelfAdjoint => selfadjoint_check(cfg, SELFADJOINT_PAIRS),
            Suite::Algebra => {
                let mut rc = RelationConfig { seed: cfg.seed, tolerance: cfg.tolerance, execution: cfg.execution, ..Default::default() };
                if let Some(s) = cfg.samples {
                    rc.samples = s;
                }
                let mut r = relation_suite(&cfg.params, cfg.order, &rc)?;
                r.params = cfg.run_params();
                Ok(r)
            }
            Suite::Identities => identity_suite(cfg),
            Suite::Cmv => cmv_suite(cfg),
            Suite::ThreeTerm => three_term(cfg),
        }
    }
}

/// Every recurrence family that applies at these parameters, plus the
/// special-case operators.
fn three_term(cfg: &SuiteConfig) -> Result<CheckReport> {
    let (p, n) = (&cfg.params, cfg.order);
    let mut report = cfg.report("three-term");
    for family in [UFamily::GeneralizedUltra, UFamily::SievedUltra1, UFamily::SievedUltra2] {
        if family.check(p, n).is_ok() {
            report.absorb(check_three_term(family, p, n, cfg.n_max, cfg.tolerance)?);
        }
    }
    let special = special_suite(p, n, cfg.n_max, cfg.samples.unwrap_or(0), cfg.tolerance, cfg.execution)?;
    report.samples = special.samples;
    report.absorb(special);
    Ok(report)
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite `{s}`")))
    }
}
