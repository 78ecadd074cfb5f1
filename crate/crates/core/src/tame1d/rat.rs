//! Exact rationals, extended rationals and the number theory used by chain alignment.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `base^k` for possibly negative `k`.
pub fn powi(base: &Rat, k: i64) -> Rat {
    if k >= 0 {
        num_traits::pow(base.clone(), k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    }
}

/// Natural logarithm of a positive rational, accurate enough to seed exact searches.
pub fn ln(r: &Rat) -> f64 {
    debug_assert!(r.is_positive());
    let bits_n = r.numer().bits() as i64;
    let bits_d = r.denom().bits() as i64;
    let shift_n = (bits_n - 60).max(0);
    let shift_d = (bits_d - 60).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(f64::MAX);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(f64::MAX);
    n.ln() - d.ln() + (shift_n - shift_d) as f64 * std::f64::consts::LN_2
}

/// Least `k ≥ 0` such that `pred(k)` holds, for a predicate that is monotone
/// (false … false true … true). The float estimate only seeds the search;
/// correctness rests on the exact predicate.
pub fn least_index(estimate: f64, cap: i64, mut pred: impl FnMut(i64) -> bool) -> Option<i64> {
    let mut k = if estimate.is_finite() {
        (estimate.floor() as i64).clamp(0, cap)
    } else {
        0
    };
    if pred(k) {
        while k > 0 && pred(k - 1) {
            k -= 1;
        }
        Some(k)
    } else {
        while !pred(k) {
            k += 1;
            if k > cap {
                return None;
            }
        }
        Some(k)
    }
}

/// Extended rational: `-∞`, a finite rational, or `+∞`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtRat {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl ExtRat {
    pub fn fin(&self) -> Option<&Rat> {
        match self {
            ExtRat::Fin(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Fin(_))
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Fin(r)
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRat::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<Rat> for ExtRat {
    fn eq(&self, other: &Rat) -> bool {
        matches!(self, ExtRat::Fin(r) if r == other)
    }
}

impl PartialOrd<Rat> for ExtRat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(match self {
            ExtRat::NegInf => Ordering::Less,
            ExtRat::PosInf => Ordering::Greater,
            ExtRat::Fin(r) => r.cmp(other),
        })
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => write!(f, "-inf"),
            ExtRat::PosInf => write!(f, "inf"),
            ExtRat::Fin(r) => write!(f, "{}", fmt_rat(r)),
        }
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Prime valuations of a positive rational. Trial division; the ratios fed here
/// are user-supplied chain ratios, so their parts are small.
pub fn valuations(r: &Rat) -> Option<BTreeMap<u64, i64>> {
    let mut out = BTreeMap::new();
    for (part, sign) in [(r.numer().abs(), 1i64), (r.denom().abs(), -1i64)] {
        let mut n = part.to_u64()?;
        let mut p = 2u64;
        while p * p <= n {
            while n % p == 0 {
                *out.entry(p).or_insert(0) += sign;
                n /= p;
            }
            p += 1;
            if p > 1_000_000 {
                return None;
            }
        }
        if n > 1 {
            *out.entry(n).or_insert(0) += sign;
        }
    }
    out.retain(|_, v| *v != 0);
    Some(out)
}

/// Writes a ratio `q ∈ (0,1)` as `p^a` with `a` maximal. Returns `(p, a)`.
pub fn primitive_root(q: &Rat) -> Option<(Rat, u64)> {
    let v = valuations(q)?;
    let g = v.values().fold(0i64, |g, &e| g.gcd(&e)).unsigned_abs();
    if g == 0 {
        return None;
    }
    let mut p = Rat::one();
    for (prime, e) in &v {
        p *= powi(&Rat::from_integer(BigInt::from(*prime)), e / g as i64);
    }
    Some((p, g))
}

/// Solves `q1^k / q2^j = target` for integers `k, j ≥ 0` when `q1`, `q2` are
/// multiplicatively independent. At most one solution exists.
pub fn solve_independent_powers(q1: &Rat, q2: &Rat, target: &Rat) -> Option<Option<(u64, u64)>> {
    if !target.is_positive() {
        return Some(None);
    }
    let v1 = valuations(q1)?;
    let v2 = valuations(q2)?;
    let vt = valuations(target)?;
    let primes: Vec<u64> = v1.keys().chain(v2.keys()).chain(vt.keys()).copied().collect();
    let get = |m: &BTreeMap<u64, i64>, p: u64| *m.get(&p).unwrap_or(&0);
    // k·v1(p) − j·v2(p) = vt(p) for every prime p
    for &p in &primes {
        for &p2 in &primes {
            let (a, b, c) = (get(&v1, p), -get(&v2, p), get(&vt, p));
            let (d, e, f) = (get(&v1, p2), -get(&v2, p2), get(&vt, p2));
            let det = a * e - b * d;
            if det == 0 {
                continue;
            }
            let kn = c * e - b * f;
            let jn = a * f - c * d;
            if kn % det != 0 || jn % det != 0 {
                return Some(None);
            }
            let (k, j) = (kn / det, jn / det);
            if k < 0 || j < 0 {
                return Some(None);
            }
            let ok = &powi(q1, k) / &powi(q2, j) == *target;
            return Some(ok.then_some((k as u64, j as u64)));
        }
    }
    None
}
