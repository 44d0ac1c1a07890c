use super::report::{CheckReport, RunParams};
use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;
use crate::laurent::SamplePlan;
use crate::par::Execution;

/// Parameters shared by every suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub params: JacobiParams,
    pub order: usize,
    pub n_max: usize,
    /// Sample count; `None` means `2·(exponent span) + 17` for each identity.
    pub samples: Option<usize>,
    pub tolerance: f64,
    pub seed: u64,
    pub execution: Execution,
}

impl SuiteConfig {
    pub fn new(alpha: f64, beta: f64, order: usize, n_max: usize) -> Self {
        SuiteConfig {
            params: JacobiParams::new(alpha, beta),
            order,
            n_max,
            samples: None,
            tolerance: 1e-8,
            seed: 42,
            execution: Execution::default(),
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    /// Rejects orders, tolerances and sample counts no suite can use.
    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::Domain("N must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) || !self.tolerance.is_finite() {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.samples == Some(0) {
            return Err(Error::Domain("sample count must be at least 1".into()));
        }
        if !self.params.alpha.is_finite() || !self.params.beta.is_finite() {
            return Err(Error::Domain("α and β must be finite".into()));
        }
        Ok(())
    }

    /// Sample plan certifying identities whose exponents span `width`.
    pub fn plan(&self, width: usize) -> Result<SamplePlan> {
        let count = self.samples.unwrap_or(2 * width + 17);
        let plan = SamplePlan::for_order(count, self.order).with_execution(self.execution);
        plan.certify_span(width)?;
        Ok(plan)
    }

    pub fn run_params(&self) -> RunParams {
        RunParams::new(self.params.alpha, self.params.beta, self.order, self.n_max)
    }

    pub fn report(&self, suite: &str) -> CheckReport {
        CheckReport::new(suite, self.run_params(), self.tolerance)
    }
}
