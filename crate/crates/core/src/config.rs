//! JSON network configuration.
//!
//! ```json
//! {"n": 3, "gamma": ["1", "1", "1/2"],
//!  "couplings": [{"k": 1, "l": 3, "J": "1"}, {"k": 2, "l": 3, "M": "1", "N": "0.5", "P": "0"}],
//!  "control_axes": ["x", "y"]}
//! ```
//!
//! Indices are 1-based. Scalars are exact: integer, `p/q` or finite decimal
//! strings, or JSON integers. JSON floats are rejected.

use serde::{Deserialize, Serialize};

use crate::rational::{int, parse_rational, Rational};
use crate::spin_model::{Axis, CouplingTriple, SpinNetwork};
use crate::{Error, Result};

/// An exact scalar as written in the document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
    /// Present only so that floats produce a targeted error.
    Float(f64),
}

impl ScalarText {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            ScalarText::Int(v) => Ok(int(*v)),
            ScalarText::Text(s) => parse_rational(s),
            ScalarText::Float(f) => Err(Error::Config(format!(
                "floating-point literal {f} is not accepted; write it as a string such as \"{f}\""
            ))),
        }
    }
}

impl From<&str> for ScalarText {
    fn from(s: &str) -> Self {
        ScalarText::Text(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingConfig {
    pub k: usize,
    pub l: usize,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<ScalarText>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<ScalarText>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<ScalarText>,
    #[serde(rename = "P", default, skip_serializing_if = "Option::is_none")]
    pub p: Option<ScalarText>,
}

impl CouplingConfig {
    /// `J` expands to `M = N = P = J`; missing `M`, `N`, `P` default to zero.
    pub fn triple(&self) -> Result<CouplingTriple> {
        let has_mnp = self.m.is_some() || self.n.is_some() || self.p.is_some();
        match (&self.j, has_mnp) {
            (Some(_), true) => Err(Error::Config(format!("coupling {{{}, {}}} mixes J with M/N/P", self.k, self.l))),
            (Some(j), false) => Ok(CouplingTriple::heisenberg(j.to_rational()?)),
            (None, false) => Err(Error::Config(format!("coupling {{{}, {}}} has neither J nor M/N/P", self.k, self.l))),
            (None, true) => {
                let get = |v: &Option<ScalarText>| v.as_ref().map_or(Ok(int(0)), ScalarText::to_rational);
                Ok(CouplingTriple::new(get(&self.m)?, get(&self.n)?, get(&self.p)?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub n: usize,
    pub gamma: Vec<ScalarText>,
    #[serde(default)]
    pub couplings: Vec<CouplingConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control_axes: Option<Vec<Axis>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure_cap: Option<usize>,
}

pub fn parse_config(document: &str) -> Result<NetworkConfig> {
    Ok(serde_json::from_str(document)?)
}

impl NetworkConfig {
    /// Converts to a validated 0-based network. Returns the validation warnings.
    pub fn to_network(&self) -> Result<(SpinNetwork, Vec<String>)> {
        let gamma = self.gamma.iter().map(ScalarText::to_rational).collect::<Result<Vec<_>>>()?;
        let mut net = SpinNetwork::new(gamma);
        net.n = self.n;
        for c in &self.couplings {
            for idx in [c.k, c.l] {
                if idx == 0 || idx > self.n {
                    return Err(Error::IndexOutOfRange { index: idx, n: self.n });
                }
            }
            net = net.with_coupling(c.k - 1, c.l - 1, c.triple()?);
        }
        if let Some(axes) = &self.control_axes {
            net = net.with_axes(axes.iter().copied());
        }
        let warnings = net.validate()?;
        Ok((net, warnings))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn heisenberg_pair() {
        let cfg = parse_config(r#"{"n":2,"gamma":["1","2"],"couplings":[{"k":1,"l":2,"J":"1"}]}"#).unwrap();
        let (net, warnings) = cfg.to_network().unwrap();
        assert!(warnings.is_empty());
        assert_eq!(net.gamma, vec![int(1), int(2)]);
        assert_eq!(net.coupling(0, 1), Some(&CouplingTriple::heisenberg(int(1))));
        assert_eq!(net.control_axes.len(), 3);
    }

    #[test]
    fn decimal_and_integer_scalars() {
        let cfg = parse_config(r#"{"n":2,"gamma":["0.5", 3],"couplings":[{"k":2,"l":1,"M":"1/3","P":"-2"}]}"#).unwrap();
        let (net, _) = cfg.to_network().unwrap();
        assert_eq!(net.gamma, vec![ratio(1, 2), int(3)]);
        assert_eq!(net.coupling(0, 1), Some(&CouplingTriple::new(ratio(1, 3), int(0), int(-2))));
    }

    #[test]
    fn rejects_bad_documents() {
        let mixed = parse_config(r#"{"n":2,"gamma":["1","2"],"couplings":[{"k":1,"l":2,"J":"1","M":"1"}]}"#).unwrap();
        assert!(matches!(mixed.to_network(), Err(Error::Config(_))));
        let float = parse_config(r#"{"n":1,"gamma":[0.5]}"#).unwrap();
        assert!(matches!(float.to_network(), Err(Error::Config(_))));
        let index = parse_config(r#"{"n":2,"gamma":["1","2"],"couplings":[{"k":0,"l":2,"J":"1"}]}"#).unwrap();
        assert!(matches!(index.to_network(), Err(Error::IndexOutOfRange { .. })));
        let count = parse_config(r#"{"n":3,"gamma":["1","2"]}"#).unwrap();
        assert!(matches!(count.to_network(), Err(Error::GammaCount { .. })));
        assert!(matches!(parse_config("{"), Err(Error::Json(_))));
        assert!(matches!(parse_config(r#"{"n":1,"gamma":["1"],"extra":1}"#), Err(Error::Json(_))));
        let bad = parse_config(r#"{"n":1,"gamma":["1/0"]}"#).unwrap();
        assert!(matches!(bad.to_network(), Err(Error::BadRational(_))));
    }

    #[test]
    fn axes_subset() {
        let cfg = parse_config(r#"{"n":1,"gamma":["1"],"control_axes":["x","y"]}"#).unwrap();
        let (net, _) = cfg.to_network().unwrap();
        assert_eq!(net.control_axes.iter().copied().collect::<Vec<_>>(), vec![Axis::X, Axis::Y]);
    }
}
