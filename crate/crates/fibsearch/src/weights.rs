//! Canonical comparison-cost vectors.
//!
//! A search problem charges a fixed cost for each comparison, but the cost
//! depends on the outcome: outcome `i` of a probe costs `w_i`. Internally all
//! modules work with *canonical* weights (strictly positive integers with
//! gcd 1) plus a rational `scale` factor that maps canonical units back to
//! whatever units the caller supplied. Working in canonical units keeps the
//! lower bounds tight; scaling happens only at reporting boundaries.

use num_integer::Integer;
use num_rational::Ratio;
use thiserror::Error;

/// Rational number used for weight inputs and the canonical scale factor.
pub type Rational = Ratio<u64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("need at least 2 outcome weights, got {0}")]
    TooFew(usize),
    #[error("weight #{index} ({value}) must be strictly positive")]
    NonPositive { index: usize, value: String },
    #[error("weight #{index} ({value}) is not a rational number")]
    NotRational { index: usize, value: String },
    #[error("weight #{index} overflows the canonical integer range")]
    TooLarge { index: usize },
}

/// An ordered vector of canonical outcome costs.
///
/// Outcome `i` of every comparison maps to `values[i]`; the user-supplied
/// order is preserved exactly. Invariants: at least two entries, every entry
/// at least 1, gcd over all entries equal to 1. `scale * values[i]`
/// reconstructs the raw weight the caller passed in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights {
    values: Vec<u64>,
    scale: Rational,
    min: u64,
    max: u64,
}

impl Weights {
    /// Canonicalizes already-integral weights (gcd reduction only).
    pub fn from_integers(raw: &[u64]) -> Result<Self, WeightError> {
        let rationals: Vec<Rational> = raw.iter().map(|&w| Ratio::from_integer(w)).collect();
        canonical_weights(&rationals)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of comparison outcomes (h).
    pub fn arity(&self) -> usize {
        self.values.len()
    }

    /// Cheapest outcome cost, in canonical units.
    pub fn min_weight(&self) -> u64 {
        self.min
    }

    /// Most expensive outcome cost, in canonical units.
    pub fn max_weight(&self) -> u64 {
        self.max
    }

    /// Rational factor mapping canonical units back to the caller's units.
    pub fn scale(&self) -> Rational {
        self.scale
    }

    /// The raw weights as supplied by the caller, reconstructed exactly.
    pub fn raw(&self) -> Vec<Rational> {
        self.values
            .iter()
            .map(|&w| self.scale * Ratio::from_integer(w))
            .collect()
    }

    /// Converts a cost in canonical units to the caller's units.
    pub fn scale_cost(&self, canonical: u128) -> Ratio<u128> {
        let s = Ratio::new(*self.scale.numer() as u128, *self.scale.denom() as u128);
        s * Ratio::from_integer(canonical)
    }
}

/// Clears denominators with their lcm, divides by the common gcd, and records
/// the reduction in `scale` so that `scale * canonical_i = raw_i` for all `i`.
pub fn canonical_weights(raw: &[Rational]) -> Result<Weights, WeightError> {
    if raw.len() < 2 {
        return Err(WeightError::TooFew(raw.len()));
    }
    for (index, r) in raw.iter().enumerate() {
        if *r.numer() == 0 {
            return Err(WeightError::NonPositive {
                index,
                value: r.to_string(),
            });
        }
    }
    let mut denom_lcm: u64 = 1;
    for r in raw {
        denom_lcm = denom_lcm.lcm(r.denom());
    }
    let mut cleared: Vec<u128> = Vec::with_capacity(raw.len());
    for (index, r) in raw.iter().enumerate() {
        let v = *r.numer() as u128 * (denom_lcm / r.denom()) as u128;
        if v > u64::MAX as u128 {
            return Err(WeightError::TooLarge { index });
        }
        cleared.push(v);
    }
    let mut common: u64 = 0;
    for &v in &cleared {
        common = common.gcd(&(v as u64));
    }
    let values: Vec<u64> = cleared.iter().map(|&v| v as u64 / common).collect();
    let min = *values.iter().min().expect("nonempty");
    let max = *values.iter().max().expect("nonempty");
    Ok(Weights {
        values,
        scale: Ratio::new(common, denom_lcm),
        min,
        max,
    })
}

/// Parses a single weight given as an integer (`3`), a decimal (`0.5`) or a
/// fraction (`3/2`). Exact: decimals are read as numerator over a power of
/// ten, never through floating point.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: u64 = p.trim().parse().ok()?;
        let q: u64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Ratio::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        let frac_num: u64 = frac.parse().ok()?;
        let denom = 10u64.checked_pow(frac.len() as u32)?;
        let num = int.checked_mul(denom)?.checked_add(frac_num)?;
        return Some(Ratio::new(num, denom));
    }
    let n: u64 = s.parse().ok()?;
    Some(Ratio::from_integer(n))
}

/// Parses a comma-separated weight list (`"1,3"`, `"0.5,1.5"`, `"1,3/2"`)
/// into a canonical weight vector.
pub fn parse_weights(list: &str) -> Result<Weights, WeightError> {
    let mut parsed = Vec::new();
    for (index, part) in list.split(',').enumerate() {
        match parse_rational(part) {
            Some(r) if *r.numer() > 0 => parsed.push(r),
            Some(r) => {
                return Err(WeightError::NonPositive {
                    index,
                    value: r.to_string(),
                })
            }
            None => {
                return Err(WeightError::NotRational {
                    index,
                    value: part.trim().to_string(),
                })
            }
        }
    }
    canonical_weights(&parsed)
}
