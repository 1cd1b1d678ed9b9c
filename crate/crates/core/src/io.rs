//! On-disk JSON shapes shared by the CLI and tests.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::CountAudit;
use crate::configuration::Configuration;
use crate::system::{VortexSystem, VorticityError};

/// Configuration document: `{"gammas":[...], "positions":[[re,im],...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConfigDocument {
    pub gammas: Vec<f64>,
    pub positions: Vec<[f64; 2]>,
}

impl ConfigDocument {
    pub fn from_parts(config: &Configuration, system: &VortexSystem) -> Self {
        Self {
            gammas: system.gammas().to_vec(),
            positions: config.positions().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_parts(self) -> Result<(Configuration, VortexSystem), VorticityError> {
        let system = VortexSystem::new(self.gammas)?;
        let config = Configuration::from_parts(&self.positions);
        Ok((config, system))
    }
}

/// Counts document: `{"per_lambda":[{"re":..,"im":..,"count":..}],
/// "n_i":.., "n_minus_i":.., "n_1":.., "n_minus_1":..}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct CountsDocument {
    pub per_lambda: Vec<LambdaCount>,
    #[serde(default)]
    pub n_i: u64,
    #[serde(default)]
    pub n_minus_i: u64,
    #[serde(default)]
    pub n_1: u64,
    #[serde(default)]
    pub n_minus_1: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LambdaCount {
    pub re: f64,
    pub im: f64,
    pub count: u64,
}

impl From<&CountAudit> for CountsDocument {
    fn from(audit: &CountAudit) -> Self {
        Self {
            per_lambda: audit
                .per_lambda
                .iter()
                .map(|(l, c)| LambdaCount { re: l.re, im: l.im, count: *c })
                .collect(),
            n_i: audit.n_i,
            n_minus_i: audit.n_minus_i,
            n_1: audit.n_1,
            n_minus_1: audit.n_minus_1,
        }
    }
}

impl From<&CountsDocument> for CountAudit {
    fn from(doc: &CountsDocument) -> Self {
        CountAudit {
            per_lambda: doc
                .per_lambda
                .iter()
                .map(|lc| (Complex64::new(lc.re, lc.im), lc.count))
                .collect(),
            n_i: doc.n_i,
            n_minus_i: doc.n_minus_i,
            n_1: doc.n_1,
            n_minus_1: doc.n_minus_1,
        }
    }
}
