//! Module-spec files: a JSON description of how to build a module.
//!
//! ```json
//! {"algebra": {"family": "A", "n": 2},
//!  "constructor": "exponential",
//!  "params": {"b": ["1", "2"], "lambda": [0, "1/2"], "S": [2]}}
//! ```
//!
//! Constructors: `m0`, `exponential` (b, lambda, S), `verma` (b, lambda),
//! `twist` (base, kind = tau | diag, a), `tensor` (base, rep) and `dual`
//! (base). Weights are in the Cartan-basis coordinates of the algebra.
//! Nested `base` specs may omit `algebra`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::carrier::exponential_module;
use super::free::FreeHModule;
use super::m0::from_sp2n_m0;
use super::ops::{dual_module, parabolic_verma_from_weight, tensor_finite, twist};
use crate::error::{Error, Result};
use crate::exactalg::Rat;
use crate::liealg::{build_algebra, irrep, make_automorphism, AutoKind, Family, LieAlgebraData, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub family: String,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    pub constructor: String,
    #[serde(default)]
    pub params: Value,
}

#[derive(Deserialize)]
struct ExpParams {
    b: Vec<Rat>,
    lambda: Vec<Rat>,
    #[serde(rename = "S", default)]
    s: Vec<usize>,
}

#[derive(Deserialize)]
struct VermaParams {
    b: Vec<Rat>,
    lambda: Vec<Rat>,
}

#[derive(Deserialize)]
struct TwistParams {
    base: ModuleSpec,
    kind: String,
    #[serde(default)]
    a: Vec<Rat>,
}

#[derive(Deserialize)]
struct TensorParams {
    base: ModuleSpec,
    rep: Vec<Rat>,
}

#[derive(Deserialize)]
struct BaseParams {
    base: ModuleSpec,
}

fn params<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("{what} params: {e}")))
}

impl ModuleSpec {
    pub fn parse(text: &str) -> Result<ModuleSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("module spec: {e}")))
    }

    pub fn build(&self) -> Result<FreeHModule> {
        let alg = self.algebra.clone().ok_or_else(|| Error::Parse("module spec needs an algebra".into()))?;
        self.build_in(&alg)
    }

    fn build_in(&self, outer: &AlgebraSpec) -> Result<FreeHModule> {
        let alg = self.algebra.clone().unwrap_or_else(|| outer.clone());
        if alg != *outer {
            return Err(Error::Incompatible("nested spec uses a different algebra".into()));
        }
        let family = Family::parse(&alg.family)?;
        let m = match self.constructor.as_str() {
            "m0" => {
                if family != Family::C {
                    return Err(Error::NotInScope("m0 is an sp(2n)-module".into()));
                }
                from_sp2n_m0(alg.n)?
            }
            "exponential" => {
                require_a(family, "exponential")?;
                let p: ExpParams = params(&self.params, "exponential")?;
                check_len(&p.b, alg.n, "b")?;
                exponential_module(&p.b, &Weight(p.lambda), &p.s)?
            }
            "verma" => {
                require_a(family, "verma")?;
                let p: VermaParams = params(&self.params, "verma")?;
                check_len(&p.b, alg.n, "b")?;
                parabolic_verma_from_weight(&p.b, &Weight(p.lambda))?
            }
            "twist" => {
                let p: TwistParams = params(&self.params, "twist")?;
                let base = p.base.build_in(&alg)?;
                let kind = match p.kind.as_str() {
                    "tau" => AutoKind::Tau,
                    "diag" => AutoKind::Diag(p.a),
                    other => return Err(Error::Parse(format!("twist kind {other:?}: expected tau or diag"))),
                };
                twist(&base, &make_automorphism(&base.algebra, kind)?)?
            }
            "tensor" => {
                let p: TensorParams = params(&self.params, "tensor")?;
                let base = p.base.build_in(&alg)?;
                let v = irrep(&base.algebra, &Weight(p.rep))?;
                tensor_finite(&base, &v)?
            }
            "dual" => {
                let p: BaseParams = params(&self.params, "dual")?;
                dual_module(&p.base.build_in(&alg)?)?
            }
            other => return Err(Error::Parse(format!("unknown constructor {other:?}"))),
        };
        Ok(m)
    }
}

fn require_a(f: Family, what: &str) -> Result<()> {
    if f == Family::A {
        Ok(())
    } else {
        Err(Error::NotInScope(format!("{what} modules are sl(n+1)-modules")))
    }
}

fn check_len(v: &[Rat], n: usize, what: &str) -> Result<()> {
    if v.len() == n {
        Ok(())
    } else {
        Err(Error::Dimension(format!("{what} has {} entries, expected {n}", v.len())))
    }
}

/// Shared algebra handle for a spec's algebra.
pub fn algebra_of(spec: &AlgebraSpec) -> Result<Arc<LieAlgebraData>> {
    Ok(Arc::new(build_algebra(Family::parse(&spec.family)?, spec.n)?))
}
