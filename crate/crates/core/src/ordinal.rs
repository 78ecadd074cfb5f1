//! Ordinals below ε₀ in Cantor normal form.
//!
//! An ordinal is stored as a strictly decreasing list of `(exponent, coefficient)`
//! pairs, `ω^e₁·c₁ + ω^e₂·c₂ + …`, with every coefficient at least one. The empty
//! list is `0`. Exponents are themselves ordinals, so `ω^ω` is representable, but the
//! text parser only accepts natural exponents.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("multiplier must be a positive integer")]
    ZeroMultiplier,
    #[error("coefficient overflow")]
    Overflow,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from(1u64)
    }

    /// ω
    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `ω^d`, a single Cantor-normal-form term.
    pub fn omega_pow(d: Ordinal) -> Self {
        Ordinal {
            terms: vec![(d, 1)],
        }
    }

    /// Builds an ordinal from raw terms, normalizing: zero coefficients are dropped,
    /// terms are sorted by decreasing exponent and equal exponents are merged.
    ///
    /// Note that this is the *natural* reading of the term list, not a left-to-right
    /// ordinal sum; use [`Ordinal::add`] for the latter.
    pub fn from_terms(terms: impl IntoIterator<Item = (Ordinal, u64)>) -> Self {
        let mut v: Vec<(Ordinal, u64)> = terms.into_iter().filter(|t| t.1 > 0).collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Ordinal, u64)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = last.1.checked_add(c).expect("coefficient overflow"),
                _ => out.push((e, c)),
            }
        }
        Ordinal { terms: out }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns `Some(n)` when the ordinal is a natural number.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    /// Checks the Cantor-normal-form invariants recursively.
    pub fn is_normalized(&self) -> bool {
        self.terms.iter().all(|(e, c)| *c >= 1 && e.is_normalized())
            && self.terms.windows(2).all(|w| w[0].0 > w[1].0)
    }

    fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.0)
    }

    /// Ordinal sum `self + other`. Terms of `self` below the leading exponent of
    /// `other` are absorbed.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.leading_exponent() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::new();
        let mut carry = 0u64;
        for (e, c) in &self.terms {
            match e.cmp(lead) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => carry = *c,
                Ordering::Less => break,
            }
        }
        for (i, (e, c)) in other.terms.iter().enumerate() {
            let c = if i == 0 { c.checked_add(carry).expect("coefficient overflow") } else { *c };
            terms.push((e.clone(), c));
        }
        Ordinal { terms }
    }

    /// Natural (Hessenberg) sum: merge the normal forms, adding coefficients of equal
    /// exponents.
    pub fn natural_sum(&self, other: &Ordinal) -> Ordinal {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Greater => {
                        terms.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        terms.push(b.clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        terms.push((a.0.clone(), a.1.checked_add(b.1).expect("coefficient overflow")));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(a), None) => {
                    terms.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    terms.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Ordinal { terms }
    }

    /// `self · r`: `self` added to itself `r` times.
    pub fn mul_nat(&self, r: u64) -> Result<Ordinal, OrdinalError> {
        if r == 0 {
            return Err(OrdinalError::ZeroMultiplier);
        }
        let mut terms = self.terms.clone();
        if let Some(first) = terms.first_mut() {
            first.1 = first.1.checked_mul(r).ok_or(OrdinalError::Overflow)?;
        }
        Ok(Ordinal { terms })
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match e.as_finite() {
                Some(0) => write!(f, "{c}")?,
                Some(1) => write!(f, "w")?,
                Some(n) => write!(f, "w^{n}")?,
                None => write!(f, "w^({e})")?,
            }
            if *c != 1 && !e.is_zero() {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    /// Parses `w^2*3 + w*1 + 4`. Terms must appear in strictly decreasing exponent
    /// order with positive coefficients; `0` alone denotes zero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |pos: usize, msg: &str| OrdinalError::Parse {
            pos,
            msg: msg.to_string(),
        };
        if s.trim() == "0" {
            return Ok(Ordinal::zero());
        }
        let mut terms: Vec<(u64, u64)> = Vec::new();
        let mut offset = 0;
        for raw in s.split('+') {
            let start = offset + raw.len() - raw.trim_start().len();
            offset += raw.len() + 1;
            let t: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if t.is_empty() {
                return Err(err(start, "empty term"));
            }
            let (exp, coeff) = if let Some(rest) = t.strip_prefix('w') {
                let (exp_part, coeff_part) = match rest.split_once('*') {
                    Some((a, b)) => (a, Some(b)),
                    None => (rest, None),
                };
                let exp = if exp_part.is_empty() {
                    1
                } else if let Some(n) = exp_part.strip_prefix('^') {
                    n.parse::<u64>()
                        .map_err(|_| err(start, "exponent must be a natural number"))?
                } else {
                    return Err(err(start, "expected '^' or '*' after 'w'"));
                };
                let coeff = match coeff_part {
                    Some(c) => c.parse::<u64>().map_err(|_| err(start, "bad coefficient"))?,
                    None => 1,
                };
                (exp, coeff)
            } else {
                (0, t.parse::<u64>().map_err(|_| err(start, "expected natural number or w-term"))?)
            };
            if coeff == 0 {
                return Err(err(start, "coefficient must be positive"));
            }
            if let Some(&(prev, _)) = terms.last() {
                if exp >= prev {
                    return Err(err(start, "exponents must be strictly decreasing (not in normal form)"));
                }
            }
            terms.push((exp, coeff));
        }
        Ok(Ordinal {
            terms: terms
                .into_iter()
                .map(|(e, c)| (Ordinal::from(e), c))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn w() -> Ordinal {
        Ordinal::omega()
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(Ordinal::zero().cmp(&Ordinal::zero()), Ordering::Equal);
        assert_eq!(w().cmp(&Ordinal::from(3)), Ordering::Greater);
        assert_eq!(o("w^2 + 1").cmp(&o("w*5")), Ordering::Greater);
    }

    #[test]
    fn add_examples() {
        let x = o("w^3*2 + 7");
        assert_eq!(x.add(&Ordinal::zero()), x);
        assert_eq!(Ordinal::from(1).add(&w()), w());
        assert_eq!(o("w + 1").add(&w()), o("w*2"));
    }

    #[test]
    fn natural_sum_examples() {
        assert_eq!(w().natural_sum(&Ordinal::one()), o("w + 1"));
        assert_eq!(Ordinal::one().natural_sum(&w()), o("w + 1"));
        assert_eq!(o("w^2 + w").natural_sum(&o("w*2 + 3")), o("w^2 + w*3 + 3"));
    }

    #[test]
    fn mul_nat_examples() {
        assert_eq!(w().mul_nat(3).unwrap(), o("w*3"));
        assert_eq!(Ordinal::from(5).mul_nat(4).unwrap(), Ordinal::from(20));
        assert_eq!(o("w + 2").mul_nat(2).unwrap(), o("w*2 + 2"));
        assert_eq!(w().mul_nat(0), Err(OrdinalError::ZeroMultiplier));
    }

    #[test]
    fn omega_pow_examples() {
        assert_eq!(Ordinal::omega_pow(Ordinal::zero()), Ordinal::one());
        assert_eq!(Ordinal::omega_pow(Ordinal::one()), w());
        assert_eq!(Ordinal::omega_pow(Ordinal::from(2)), o("w^2"));
    }

    #[test]
    fn parser_rejects_non_normal_input() {
        assert!("w + w^2".parse::<Ordinal>().is_err());
        assert!("w + w".parse::<Ordinal>().is_err());
        assert!("w*0".parse::<Ordinal>().is_err());
        assert!("3 + ".parse::<Ordinal>().is_err());
        assert!("x".parse::<Ordinal>().is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(o("w^2*3 + w*1 + 4").to_string(), "w^2*3 + w + 4");
        assert_eq!(Ordinal::omega_pow(w()).to_string(), "w^(w)");
        assert_eq!(Ordinal::zero().to_string(), "0");
    }

    /// Independent recursive definitions, used as oracle for `add` and `natural_sum`.
    /// Ordinals with natural exponents are encoded as coefficient vectors indexed by
    /// exponent (index 0 is the finite part).
    mod oracle {
        pub type Vec4 = [u64; 4];

        /// α + β: ω^e·c + β = β when e < lead(β), recursing term by term from the right.
        pub fn add(a: &Vec4, b: &Vec4) -> Vec4 {
            let lead = (0..4).rev().find(|&i| b[i] > 0);
            let Some(lead) = lead else { return *a };
            let mut out = *b;
            for i in (0..4).rev() {
                if i > lead {
                    out[i] = a[i];
                } else if i == lead {
                    out[i] = a[i] + b[i];
                }
            }
            out
        }

        pub fn natural(a: &Vec4, b: &Vec4) -> Vec4 {
            let mut out = [0; 4];
            for i in 0..4 {
                out[i] = a[i] + b[i];
            }
            out
        }
    }

    fn from_vec(v: &[u64; 4]) -> Ordinal {
        Ordinal::from_terms((0..4).map(|i| (Ordinal::from(i as u64), v[i])))
    }

    fn arb_vec() -> impl Strategy<Value = [u64; 4]> {
        prop::array::uniform4(0u64..10)
    }

    fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        arb_vec().prop_map(|v| from_vec(&v))
    }

    proptest! {
        #[test]
        fn add_matches_oracle(a in arb_vec(), b in arb_vec()) {
            prop_assert_eq!(from_vec(&a).add(&from_vec(&b)), from_vec(&oracle::add(&a, &b)));
        }

        #[test]
        fn natural_sum_matches_oracle(a in arb_vec(), b in arb_vec()) {
            prop_assert_eq!(from_vec(&a).natural_sum(&from_vec(&b)), from_vec(&oracle::natural(&a, &b)));
        }

        #[test]
        fn algebraic_laws(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.natural_sum(&b), b.natural_sum(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            let s = a.add(&b);
            prop_assert!(s >= a.clone().max(b.clone()));
            prop_assert!(a.natural_sum(&b) >= s);
            if b < c {
                prop_assert!(a.add(&b) < a.add(&c));
                prop_assert!(a.natural_sum(&b) < a.natural_sum(&c));
            }
            prop_assert!(s.is_normalized());
        }

        #[test]
        fn display_parse_round_trip(a in arb_ordinal()) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }

        #[test]
        fn mul_nat_is_repeated_add(a in arb_ordinal(), r in 1u64..6) {
            let mut acc = a.clone();
            for _ in 1..r {
                acc = acc.add(&a);
            }
            prop_assert_eq!(a.mul_nat(r).unwrap(), acc);
        }
    }
}
