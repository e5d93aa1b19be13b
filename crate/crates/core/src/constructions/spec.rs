use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{is_prime, is_square_mod, smallest_nonresidue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Abelian,
    Extraspecial,
    SemidirectCyclic,
    DirectProduct,
    Yo,
    SnDelta,
    Sl2Triangle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExponentFlag {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "p2")]
    P2,
}

/// JSON description of a group to construct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub type_: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<ExponentFlag>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<GroupSpec>>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl GroupSpec {
    fn empty(kind: GroupKind) -> Self {
        Self {
            kind,
            p: None,
            type_: None,
            n: None,
            exponent: None,
            precision: None,
            k: None,
            t: None,
            u: None,
            m: None,
            factors: None,
        }
    }

    pub fn abelian(p: u32, type_: &[u32]) -> Self {
        Self { p: Some(p), type_: Some(type_.to_vec()), ..Self::empty(GroupKind::Abelian) }
    }

    pub fn trivial(p: u32) -> Self {
        Self::abelian(p, &[])
    }

    pub fn extraspecial(p: u32, n: u32, exponent: ExponentFlag) -> Self {
        Self { p: Some(p), n: Some(n), exponent: Some(exponent), ..Self::empty(GroupKind::Extraspecial) }
    }

    pub fn semidirect_cyclic(n: u32, m: u32, u: u32) -> Self {
        Self { n: Some(n), m: Some(m), u: Some(u), ..Self::empty(GroupKind::SemidirectCyclic) }
    }

    pub fn direct_product(factors: Vec<GroupSpec>) -> Self {
        Self { factors: Some(factors), ..Self::empty(GroupKind::DirectProduct) }
    }

    pub fn yo() -> Self {
        Self::empty(GroupKind::Yo)
    }

    pub fn sn_delta(p: u32, precision: u32, k: Option<u32>) -> Self {
        Self { p: Some(p), precision: Some(precision), k, ..Self::empty(GroupKind::SnDelta) }
    }

    pub fn sl2_triangle(p: u32, precision: u32, k: Option<u32>) -> Self {
        Self { p: Some(p), precision: Some(precision), k, ..Self::empty(GroupKind::Sl2Triangle) }
    }

    pub fn with_t(mut self, t: u32) -> Self {
        self.t = Some(t);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validated copy with defaults filled in and irrelevant fields rejected.
    pub fn canonical(&self) -> Result<Self> {
        let allowed: &[&str] = match self.kind {
            GroupKind::Abelian => &["p", "type"],
            GroupKind::Extraspecial => &["p", "n", "exponent"],
            GroupKind::SemidirectCyclic => &["n", "m", "u"],
            GroupKind::DirectProduct => &["factors"],
            GroupKind::Yo => &[],
            GroupKind::SnDelta => &["p", "M", "k", "t"],
            GroupKind::Sl2Triangle => &["p", "M", "k"],
        };
        let present = [
            ("p", self.p.is_some()),
            ("type", self.type_.is_some()),
            ("n", self.n.is_some()),
            ("exponent", self.exponent.is_some()),
            ("M", self.precision.is_some()),
            ("k", self.k.is_some()),
            ("t", self.t.is_some()),
            ("u", self.u.is_some()),
            ("m", self.m.is_some()),
            ("factors", self.factors.is_some()),
        ];
        if let Some((name, _)) = present.iter().find(|(name, set)| *set && !allowed.contains(name)) {
            return Err(bad(format!("field \"{name}\" does not apply to this kind")));
        }
        let mut out = self.clone();
        let need_p = || -> Result<u32> {
            let p = self.p.ok_or_else(|| bad("missing p"))?;
            if !is_prime(p as u64) {
                return Err(bad(format!("{p} is not prime")));
            }
            Ok(p)
        };
        match self.kind {
            GroupKind::Abelian => {
                need_p()?;
                let ty = self.type_.clone().unwrap_or_default();
                if ty.contains(&0) {
                    return Err(bad("abelian type entries must be at least 1"));
                }
                out.type_ = Some(ty);
            }
            GroupKind::Extraspecial => {
                need_p()?;
                let n = self.n.unwrap_or(1);
                let exponent = self.exponent.unwrap_or(ExponentFlag::P);
                if n == 0 {
                    return Err(bad("n must be at least 1"));
                }
                if exponent == ExponentFlag::P2 && n != 1 {
                    return Err(bad("exponent p2 requires n = 1"));
                }
                out.n = Some(n);
                out.exponent = Some(exponent);
            }
            GroupKind::SemidirectCyclic => {
                let (n, m) = (self.n.ok_or_else(|| bad("missing n"))?, self.m.ok_or_else(|| bad("missing m"))?);
                if n == 0 || m == 0 {
                    return Err(bad("n and m must be positive"));
                }
                out.u = Some(self.u.ok_or_else(|| bad("missing u"))?);
            }
            GroupKind::DirectProduct => {
                let factors = self.factors.as_ref().ok_or_else(|| bad("missing factors"))?;
                out.factors = Some(factors.iter().map(|f| f.canonical()).collect::<Result<_>>()?);
            }
            GroupKind::Yo => {}
            GroupKind::SnDelta | GroupKind::Sl2Triangle => {
                let p = need_p()?;
                if p <= 3 {
                    return Err(bad(format!("p = {p} must exceed 3")));
                }
                let m = self.precision.ok_or_else(|| bad("missing M"))?;
                if m < 2 {
                    return Err(bad("M must be at least 2"));
                }
                if let Some(k) = self.k {
                    if k == 0 || k > 2 * m {
                        return Err(bad(format!("k must lie in 1..={}", 2 * m)));
                    }
                }
                if self.kind == GroupKind::SnDelta {
                    let t = self.t.unwrap_or_else(|| smallest_nonresidue(p));
                    if is_square_mod(t, p) {
                        return Err(bad(format!("t = {t} is a square modulo {p}")));
                    }
                    out.t = Some(t);
                }
            }
        }
        Ok(out)
    }

    /// Canonical JSON text; equal specs give equal text.
    pub fn canonical_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.canonical()?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_canonicalize() {
        let s = GroupSpec::from_json(r#"{"kind":"sn_delta","p":5,"M":2}"#).unwrap();
        assert_eq!(s.canonical_json().unwrap(), r#"{"kind":"sn_delta","p":5,"M":2,"t":2}"#);
        let e = GroupSpec::from_json(r#"{"kind":"extraspecial","p":5,"exponent":"p2"}"#).unwrap();
        assert_eq!(e.canonical().unwrap().n, Some(1));
        let d = GroupSpec::from_json(r#"{"kind":"direct_product","factors":[{"kind":"abelian","p":3,"type":[2]}]}"#)
            .unwrap();
        assert!(d.canonical().is_ok());
    }

    #[test]
    fn rejections() {
        assert!(GroupSpec::from_json(r#"{"kind":"yo","colour":1}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"kind":"abelian","p":4,"type":[1]}"#).unwrap().canonical().is_err());
        assert!(GroupSpec::from_json(r#"{"kind":"yo","p":3}"#).unwrap().canonical().is_err());
        assert!(GroupSpec::from_json(r#"{"kind":"extraspecial","p":3,"n":2,"exponent":"p2"}"#)
            .unwrap()
            .canonical()
            .is_err());
        assert!(GroupSpec::sn_delta(5, 2, None).with_t(4).canonical().is_err());
        assert!(GroupSpec::sn_delta(3, 2, None).canonical().is_err());
        assert!(GroupSpec::sl2_triangle(5, 2, Some(5)).canonical().is_err());
    }
}
