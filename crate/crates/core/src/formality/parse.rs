//! JSON presentations `{generators: [{name, degree}], differential: {name: "poly"}}`
//! and the polynomial syntax `-2*a*v1 + 1/2*b^2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::cdga::{Cdga, Generator, Poly};
use crate::error::{Error, Result};
use crate::linalg::Q;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CdgaSpec {
    pub generators: Vec<Generator>,
    /// Missing entries mean `d = 0`.
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
}

impl CdgaSpec {
    pub fn build(&self) -> Result<Cdga> {
        let free = Cdga::free(self.generators.clone())?;
        if let Some(name) = self.differential.keys().find(|n| free.index_of(n).is_none()) {
            return Err(Error::Parse(format!("differential given for unknown generator {name}")));
        }
        let d = self
            .generators
            .iter()
            .map(|g| match self.differential.get(&g.name) {
                Some(text) => parse_poly(&free, text),
                None => Ok(Poly::zero()),
            })
            .collect::<Result<Vec<_>>>()?;
        let a = Cdga::new(self.generators.clone(), d)?;
        Ok(match self.cutoff {
            Some(c) => a.with_cutoff(c),
            None => a,
        })
    }

    pub fn from_cdga(a: &Cdga) -> Self {
        let differential = a
            .generators()
            .iter()
            .enumerate()
            .filter(|(i, _)| !a.differential(*i).is_zero())
            .map(|(i, g)| (g.name.clone(), a.display_poly(a.differential(i))))
            .collect();
        CdgaSpec { generators: a.generators().to_vec(), differential, cutoff: Some(a.cutoff()) }
    }
}

pub fn parse_cdga_json(text: &str) -> Result<Cdga> {
    let spec: CdgaSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.build()
}

fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad coefficient {s}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Products are taken in the written order, so `b*a = -a*b` for odd `a, b`.
pub fn parse_poly(a: &Cdga, text: &str) -> Result<Poly> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..bytes.len() {
        // A sign starts a new term unless it follows '*', '^' or '/'.
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'*' | b'^' | b'/') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut out = Poly::zero();
    for term in terms {
        let (negative, body) = match term.as_bytes()[0] {
            b'-' => (true, &term[1..]),
            b'+' => (false, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {text}")));
        }
        let mut value = a.one();
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in {text}")));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                value = value.scale(&parse_rational(factor)?);
                continue;
            }
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (n, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor}")))?),
                None => (factor, 1),
            };
            let idx = a.index_of(name).ok_or_else(|| Error::Parse(format!("unknown generator {name}")))?;
            for _ in 0..power {
                value = a.mul(&value, &a.gen(idx));
            }
        }
        out = out.add(&if negative { value.scale(&-Q::one()) } else { value });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"generators":[{"name":"x","degree":1},{"name":"y","degree":1},{"name":"z","degree":1}],
                       "differential":{"z":"x*y"}}"#;
        let a = parse_cdga_json(text).unwrap();
        let z = a.index_of("z").unwrap();
        assert_eq!(a.display_poly(a.differential(z)), "x*y");
        let spec = CdgaSpec::from_cdga(&a);
        let b = spec.build().unwrap();
        assert_eq!(b.differential(z), a.differential(z));
        // Heisenberg nilmanifold: b = (1, 2, 2, 1).
        assert_eq!(a.cohomology(3).unwrap().dims, vec![1, 2, 2, 1]);
    }

    #[test]
    fn written_order_carries_sign() {
        let a = Cdga::free(vec![Generator { name: "x".into(), degree: 1 }, Generator { name: "y".into(), degree: 1 }])
            .unwrap();
        let p = parse_poly(&a, "y*x + 1/2*x*y").unwrap();
        assert_eq!(a.display_poly(&p), "-1/2*x*y");
        assert!(parse_poly(&a, "x*w").is_err());
        assert!(parse_poly(&a, "x+").is_err());
    }

    #[test]
    fn bad_differential_is_rejected() {
        let text = r#"{"generators":[{"name":"x","degree":1}],"differential":{"x":"x"}}"#;
        assert!(parse_cdga_json(text).is_err());
    }
}
