//! `alpha(n) = l(I_n / I_{n+1})` and `l(R / I_n)` for a value sequence.
//!
//! For `n` in the block `r_i <= n < r_{i+1}` the recursion
//! `alpha(n) = alpha(r_i - 1) + min(alpha(r_i - 1), alpha(n - r_i))`
//! reduces a point query to `O(I)` steps, given the block heads
//! `alpha(r_i - 1)`. Those heads are themselves produced by the recursion,
//! bottom-up, so nothing here assumes a closed form for them.

use std::io::{self, Write};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::format::decimal_string;
use crate::theta::{build_value_sequence, expand_theta, ThetaSpec, ValueSequence};
use crate::{Error, Result};

fn too_short(vs: &ValueSequence, n: impl ToString) -> Error {
    Error::SequenceTooShort {
        n: n.to_string(),
        max_index: vs.max_index(),
        last: vs.last().to_string(),
    }
}

/// Point evaluator for `alpha` with the block heads `alpha(r_i - 1)` cached.
///
/// Immutable once built, so it can be shared freely across threads.
#[derive(Clone, Debug)]
pub struct AlphaEvaluator {
    vs: ValueSequence,
    heads: Vec<BigUint>,
    // leading values of r and heads that fit in a machine word
    r_small: Vec<u64>,
    heads_small: Vec<u64>,
}

impl AlphaEvaluator {
    pub fn new(vs: &ValueSequence) -> Self {
        let r = vs.values();
        let mut heads: Vec<BigUint> = Vec::with_capacity(r.len());
        for i in 0..r.len() {
            let head = if i < 2 {
                // r_0 - 1 = r_1 - 1 = 0
                BigUint::one()
            } else {
                descend(&r[..i], &heads, &(&r[i] - 1u32))
            };
            heads.push(head);
        }
        let r_small: Vec<u64> = r.iter().map_while(|x| x.to_u64()).collect();
        let heads_small = heads[..r_small.len()]
            .iter()
            .map(|h| h.to_u64().expect("head is at most r_i"))
            .collect();
        AlphaEvaluator {
            vs: vs.clone(),
            heads,
            r_small,
            heads_small,
        }
    }

    pub fn sequence(&self) -> &ValueSequence {
        &self.vs
    }

    /// `alpha(r_i - 1)` for `0 <= i <= I`.
    pub fn head(&self, i: usize) -> Option<&BigUint> {
        self.heads.get(i)
    }

    /// Index `i` with `r_i <= n < r_{i+1}` (0 for `n = 0`).
    pub fn block_of(&self, n: &BigUint) -> Result<usize> {
        if n >= self.vs.last() {
            return Err(too_short(&self.vs, n));
        }
        if n.is_zero() {
            return Ok(0);
        }
        Ok(self.vs.values().partition_point(|ri| ri <= n) - 1)
    }

    pub fn alpha(&self, n: &BigUint) -> Result<BigUint> {
        if n >= self.vs.last() {
            return Err(too_short(&self.vs, n));
        }
        let top = self.vs.max_index();
        Ok(descend(&self.vs.values()[..top], &self.heads[..top], n))
    }

    /// Same as [`alpha`](Self::alpha) in machine arithmetic.
    pub fn alpha_u64(&self, n: u64) -> Result<u64> {
        let top = self.vs.max_index();
        let limit = if self.r_small.len() == top + 1 {
            if n >= self.r_small[top] {
                return Err(too_short(&self.vs, n));
            }
            top
        } else {
            // r_I does not fit in u64, so n < r_I
            self.r_small.len()
        };
        let r = &self.r_small[..limit];
        let heads = &self.heads_small[..limit];
        let mut stack = Vec::new();
        let mut m = n;
        let mut value = 1u64;
        while m > 0 {
            let i = r.partition_point(|&ri| ri <= m) - 1;
            let h = heads[i];
            if h == 1 {
                // alpha >= 1 everywhere, so min(1, alpha(m - r_i)) = 1
                value = 2;
                break;
            }
            stack.push(h);
            m -= r[i];
        }
        for h in stack.into_iter().rev() {
            value = h + h.min(value);
        }
        Ok(value)
    }
}

/// Iterative descent `n -> n - r_i`, then unwinding
/// `v <- h_i + min(h_i, v)`. Blocks are searched in `r` only; the caller
/// guarantees `n < r_{r.len()}`.
fn descend(r: &[BigUint], heads: &[BigUint], n: &BigUint) -> BigUint {
    let mut stack: Vec<&BigUint> = Vec::new();
    let mut m = n.clone();
    let mut value = BigUint::one();
    while !m.is_zero() {
        let i = r.partition_point(|ri| ri <= &m) - 1;
        let h = &heads[i];
        if h.is_one() {
            value = BigUint::from(2u32);
            break;
        }
        stack.push(h);
        m -= &r[i];
    }
    for h in stack.into_iter().rev() {
        value = if &value < h { h + value } else { h * 2u32 };
    }
    value
}

/// Exact `alpha(n)`; requires `n < r_I`.
pub fn alpha_at(vs: &ValueSequence, n: &BigUint) -> Result<BigUint> {
    AlphaEvaluator::new(vs).alpha(n)
}

/// Dense table of `alpha(n)` and `l(R/I_n)` for `0 <= n <= n_max`.
///
/// Entries are machine words: `alpha(n) <= n + 1` and
/// `l(R/I_n) <= n (n + 1)`, so no dense table that fits in memory can
/// overflow them.
#[derive(Clone, Debug)]
pub struct HilbertTable {
    vs: ValueSequence,
    alpha: Vec<u64>,
    cumulative: Vec<u128>,
}

impl HilbertTable {
    pub fn sequence(&self) -> &ValueSequence {
        &self.vs
    }

    pub fn n_max(&self) -> u64 {
        self.alpha.len() as u64 - 1
    }

    pub fn alpha(&self, n: u64) -> Option<u64> {
        self.alpha.get(usize::try_from(n).ok()?).copied()
    }

    /// `l(R/I_n) = alpha(0) + ... + alpha(n-1)`.
    pub fn cumulative(&self, n: u64) -> Option<u128> {
        self.cumulative.get(usize::try_from(n).ok()?).copied()
    }

    pub fn alpha_values(&self) -> &[u64] {
        &self.alpha
    }

    pub fn cumulative_values(&self) -> &[u128] {
        &self.cumulative
    }

    /// Rows `n,alpha,cumulative`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "n,alpha,cumulative")?;
        for (n, (a, c)) in self.alpha.iter().zip(&self.cumulative).enumerate() {
            writeln!(w, "{n},{a},{c}")?;
        }
        Ok(())
    }
}

pub fn alpha_table(vs: &ValueSequence, n_max: u64) -> Result<HilbertTable> {
    if BigUint::from(n_max) >= *vs.last() {
        return Err(too_short(vs, n_max));
    }
    let len = usize::try_from(n_max)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or_else(|| Error::Domain(format!("n_max = {n_max} too large for a dense table")))?;
    // every r_i <= n_max fits in u64
    let r: Vec<u64> = vs.values().iter().map_while(|x| x.to_u64()).collect();
    let mut alpha = Vec::with_capacity(len);
    alpha.push(1u64);
    let mut block = 0usize;
    for n in 1..len as u64 {
        while block + 1 < r.len() && r[block + 1] <= n {
            block += 1;
        }
        let head = alpha[(r[block] - 1) as usize];
        let rest = alpha[(n - r[block]) as usize];
        alpha.push(head + head.min(rest));
    }
    let mut cumulative = Vec::with_capacity(len);
    let mut acc = 0u128;
    for &a in &alpha {
        cumulative.push(acc);
        acc += u128::from(a);
    }
    Ok(HilbertTable {
        vs: vs.clone(),
        alpha,
        cumulative,
    })
}

/// A maximal run `lo..=hi` on which `alpha = 2^i`; empty when `lo = hi + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Plateau {
    pub level: usize,
    #[serde(serialize_with = "decimal_string::serialize")]
    pub lo: BigUint,
    #[serde(serialize_with = "decimal_string::serialize")]
    pub hi: BigUint,
    #[serde(serialize_with = "decimal_string::serialize")]
    pub value: BigUint,
}

impl Plateau {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    /// Number of integers in the plateau.
    pub fn len(&self) -> BigUint {
        if self.is_empty() {
            BigUint::zero()
        } else {
            &self.hi - &self.lo + 1u32
        }
    }

    pub fn contains(&self, n: &BigUint) -> bool {
        &self.lo <= n && n <= &self.hi
    }
}

/// Plateaus `(r_0 + ... + r_i, r_{i+1})` for `1 <= i < I`, empty ones included.
pub fn plateau_decomposition(vs: &ValueSequence) -> Vec<Plateau> {
    let r = vs.values();
    let mut prefix = &r[0] + &r[1];
    let mut out = Vec::new();
    for i in 1..vs.max_index() {
        if i > 1 {
            prefix += &r[i];
        }
        out.push(Plateau {
            level: i,
            lo: &prefix + 1u32,
            // r_{i+1} >= 3, so no underflow
            hi: &r[i + 1] - 1u32,
            value: BigUint::one() << i,
        });
    }
    out
}

/// First integer of `plateau` whose `alpha` differs from the plateau value.
pub fn verify_plateau(eval: &AlphaEvaluator, plateau: &Plateau) -> Result<Option<BigUint>> {
    if let (Some(lo), Some(hi), Some(value)) =
        (plateau.lo.to_u64(), plateau.hi.to_u64(), plateau.value.to_u64())
    {
        for s in lo..=hi {
            if eval.alpha_u64(s)? != value {
                return Ok(Some(s.into()));
            }
        }
        return Ok(None);
    }
    let mut s = plateau.lo.clone();
    while s <= plateau.hi {
        if eval.alpha(&s)? != plateau.value {
            return Ok(Some(s));
        }
        s += 1u32;
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonTerm {
    pub index: usize,
    pub value: BigRational,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn pow2_recip(e: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e)
}

/// `limit = 1/(2 + theta)` when `theta` is known exactly (0 for infinity).
fn exact_limit(theta: &ThetaSpec) -> Option<BigRational> {
    match theta {
        ThetaSpec::Rational(q) => Some((rat(2) + q).recip()),
        ThetaSpec::Infinity => Some(BigRational::zero()),
        ThetaSpec::ExplicitBits { .. } => None,
    }
}

fn needs_exact(theta: &ThetaSpec, index: usize) -> Error {
    Error::InsufficientPrecision {
        requested: index,
        available: theta.exact_upto().unwrap_or(index),
    }
}

/// Error term `eps_i = alpha(r_i - 1)/r_i - 1/(2 + theta)`, in closed form:
/// `(R_i + 2^(1-i)) / ((2+theta)(2+theta - R_i - 2^(1-i)))` for finite
/// `theta` and `1/(1 + i - 2^(1-i))` for infinite `theta`.
pub fn epsilon_at(theta: &ThetaSpec, i: usize) -> Result<EpsilonTerm> {
    if i < 2 {
        return Err(Error::Domain(format!("epsilon_i is defined for i >= 2, got {i}")));
    }
    let step = pow2_recip(i - 1);
    let value = match theta {
        ThetaSpec::Rational(q) => {
            let digits = expand_theta(theta, i)?;
            let rem = digits.remainder(i).expect("rational theta has remainders");
            let two_plus = rat(2) + q;
            (rem + &step) / (&two_plus * (&two_plus - rem - &step))
        }
        ThetaSpec::Infinity => (rat(1 + i as u64) - step).recip(),
        ThetaSpec::ExplicitBits { .. } => return Err(needs_exact(theta, i)),
    };
    Ok(EpsilonTerm { index: i, value })
}

/// Index `N(eps)` from which `eps_i < eps` holds for every `i >= N`.
///
/// Infinite `theta`: `eps_i` strictly decreases, so `N` is the first index
/// below `eps`. Finite `theta`: `eps_i < 2^(1-i)` for all `i >= 2`, so every
/// index past the first `T` with `2^(1-T) <= eps` qualifies and only
/// `2..T` has to be scanned.
pub fn epsilon_threshold(theta: &ThetaSpec, eps: &BigRational) -> Result<usize> {
    if eps <= &BigRational::zero() {
        return Err(Error::Domain("epsilon must be positive".into()));
    }
    match theta {
        ThetaSpec::Infinity => {
            let mut i = 2;
            while epsilon_at(theta, i)?.value >= *eps {
                i += 1;
            }
            Ok(i)
        }
        ThetaSpec::Rational(_) => {
            let mut tail = 2;
            while pow2_recip(tail - 1) > *eps {
                tail += 1;
            }
            let mut n = 2;
            for j in (2..=tail).rev() {
                if epsilon_at(theta, j)?.value >= *eps {
                    n = j + 1;
                    break;
                }
            }
            Ok(n)
        }
        ThetaSpec::ExplicitBits { .. } => Err(needs_exact(theta, 2)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EnvelopeOutcome {
    Pass { checked: u64 },
    Violation { n: u64, alpha: u64 },
}

impl EnvelopeOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, EnvelopeOutcome::Pass { .. })
    }
}

/// `alpha(n) (2 + theta) > n` for every `0 <= n <= n_max`; for infinite
/// `theta`, `alpha(n) >= 1`. An explicit prefix is checked against its
/// truncation, which generates the same values.
pub fn lower_envelope_check(vs: &ValueSequence, n_max: u64) -> Result<EnvelopeOutcome> {
    let table = alpha_table(vs, n_max)?;
    lower_envelope_on(&table)
}

pub fn lower_envelope_on(table: &HilbertTable) -> Result<EnvelopeOutcome> {
    let theta = match table.sequence().theta() {
        ThetaSpec::Infinity => {
            let bad = table.alpha_values().iter().position(|&a| a < 1);
            return Ok(match bad {
                Some(n) => EnvelopeOutcome::Violation {
                    n: n as u64,
                    alpha: table.alpha_values()[n],
                },
                None => EnvelopeOutcome::Pass {
                    checked: table.n_max() + 1,
                },
            });
        }
        ThetaSpec::Rational(q) => q.clone(),
        t @ ThetaSpec::ExplicitBits { .. } => t.prefix_interval().expect("prefix").0,
    };
    // alpha (2 + a/b) > n  <=>  alpha (2b + a) > n b
    let slope = BigInt::from(2) * theta.denom() + theta.numer();
    let den = theta.denom().clone();
    for (n, &a) in table.alpha_values().iter().enumerate() {
        if BigInt::from(a) * &slope <= BigInt::from(n) * &den {
            return Ok(EnvelopeOutcome::Violation { n: n as u64, alpha: a });
        }
    }
    Ok(EnvelopeOutcome::Pass {
        checked: table.n_max() + 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperEnvelopeReport {
    pub eps: BigRational,
    /// `N(eps)`.
    pub threshold_index: usize,
    /// `alpha(r_N - 1)`, the additive slack.
    pub head: BigUint,
    pub outcome: EnvelopeOutcome,
}

/// `alpha(n) <= (1/(2+theta) + eps) n + alpha(r_N - 1)` for
/// `r_N <= n <= n_max`, with `N = N(eps)`.
pub fn upper_envelope_check(vs: &ValueSequence, eps: &BigRational, n_max: u64) -> Result<UpperEnvelopeReport> {
    let table = alpha_table(vs, n_max)?;
    upper_envelope_on(&table, eps)
}

pub fn upper_envelope_on(table: &HilbertTable, eps: &BigRational) -> Result<UpperEnvelopeReport> {
    let vs = table.sequence();
    let theta = vs.theta();
    let n_idx = epsilon_threshold(theta, eps)?;
    let limit = exact_limit(theta).ok_or_else(|| needs_exact(theta, n_idx))?;
    let longer;
    let seq = if n_idx > vs.max_index() {
        longer = build_value_sequence(theta, n_idx)?;
        &longer
    } else {
        vs
    };
    let r_n = seq.get(n_idx).expect("index covered").clone();
    let head = AlphaEvaluator::new(seq).head(n_idx).expect("index covered").clone();

    let start = match r_n.to_u64() {
        Some(s) if s <= table.n_max() => s,
        _ => {
            return Ok(UpperEnvelopeReport {
                eps: eps.clone(),
                threshold_index: n_idx,
                head,
                outcome: EnvelopeOutcome::Pass { checked: 0 },
            })
        }
    };
    // q alpha <= p n + q head, with p/q = limit + eps
    let slope = limit + eps;
    let (p, q) = (slope.numer().clone(), slope.denom().clone());
    let slack = &q * BigInt::from(head.clone());
    for n in start..=table.n_max() {
        let a = table.alpha(n).expect("in range");
        if &q * BigInt::from(a) > &p * BigInt::from(n) + &slack {
            return Ok(UpperEnvelopeReport {
                eps: eps.clone(),
                threshold_index: n_idx,
                head,
                outcome: EnvelopeOutcome::Violation { n, alpha: a },
            });
        }
    }
    Ok(UpperEnvelopeReport {
        eps: eps.clone(),
        threshold_index: n_idx,
        head,
        outcome: EnvelopeOutcome::Pass {
            checked: table.n_max() - start + 1,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitRow {
    pub index: usize,
    pub r: BigUint,
    /// `alpha(r_i - 1)`.
    pub head: BigUint,
    /// `alpha(r_i - 1) / r_i`.
    pub ratio: BigRational,
    /// `ratio - 1/(2 + theta)`; `None` for an explicit prefix.
    pub distance: Option<BigRational>,
}

pub fn limit_report(vs: &ValueSequence, indices: &[usize]) -> Result<Vec<LimitRow>> {
    let eval = AlphaEvaluator::new(vs);
    let limit = exact_limit(vs.theta());
    indices
        .iter()
        .map(|&i| {
            let r = vs.get(i).ok_or_else(|| too_short(vs, format!("r_{i}")))?.clone();
            let head = eval.head(i).expect("index checked").clone();
            let ratio = BigRational::new(head.clone().into(), r.clone().into());
            let distance = limit.as_ref().map(|l| &ratio - l);
            Ok(LimitRow {
                index: i,
                r,
                head,
                ratio,
                distance,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulativeRow {
    pub n: u64,
    pub cumulative: u128,
    /// `2 l(R/I_n) / n^2`.
    pub normalized: BigRational,
    /// `|normalized - C|`; `None` for an explicit prefix.
    pub distance: Option<BigRational>,
}

pub fn cumulative_limit_report(vs: &ValueSequence, samples: &[u64]) -> Result<Vec<CumulativeRow>> {
    let n_max = samples.iter().copied().max().unwrap_or(0);
    let table = alpha_table(vs, n_max)?;
    cumulative_rows(&table, samples)
}

pub fn cumulative_rows(table: &HilbertTable, samples: &[u64]) -> Result<Vec<CumulativeRow>> {
    let limit = exact_limit(table.sequence().theta());
    samples
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::Domain("normalized length needs n >= 1".into()));
            }
            let cumulative = table
                .cumulative(n)
                .ok_or_else(|| too_short(table.sequence(), n))?;
            let normalized = BigRational::new(
                BigInt::from(cumulative) * 2,
                BigInt::from(n) * BigInt::from(n),
            );
            let distance = limit.as_ref().map(|c| {
                let d = &normalized - c;
                if d < BigRational::zero() {
                    -d
                } else {
                    d
                }
            });
            Ok(CumulativeRow {
                n,
                cumulative,
                normalized,
                distance,
            })
        })
        .collect()
}

/// Rows `i,lo,hi,value`.
pub fn write_plateaus_csv<W: Write>(plateaus: &[Plateau], mut w: W) -> io::Result<()> {
    writeln!(w, "i,lo,hi,value")?;
    for p in plateaus {
        writeln!(w, "{},{},{},{}", p.level, p.lo, p.hi, p.value)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::build_value_sequence;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn seq(theta: ThetaSpec, i: usize) -> ValueSequence {
        build_value_sequence(&theta, i).unwrap()
    }

    #[test]
    fn point_values() {
        let zero = seq(ThetaSpec::integer(0), 8);
        assert_eq!(alpha_at(&zero, &6u32.into()).unwrap(), 4u32.into());
        assert_eq!(alpha_at(&zero, &0u32.into()).unwrap(), 1u32.into());
        let one = seq(ThetaSpec::integer(1), 8);
        assert_eq!(alpha_at(&one, &10u32.into()).unwrap(), 4u32.into());
        assert_eq!(alpha_at(&one, &5u32.into()).unwrap(), 3u32.into());
    }

    #[test]
    fn point_query_beyond_sequence() {
        let zero = seq(ThetaSpec::integer(0), 4);
        assert!(matches!(
            alpha_at(&zero, &15u32.into()),
            Err(Error::SequenceTooShort { .. })
        ));
        let eval = AlphaEvaluator::new(&zero);
        assert!(eval.alpha_u64(15).is_err());
        assert_eq!(eval.alpha_u64(14).unwrap(), 8);
    }

    #[test]
    fn dense_table_theta_zero() {
        let t = alpha_table(&seq(ThetaSpec::integer(0), 6), 15).unwrap();
        assert_eq!(t.alpha_values(), &[1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9]);
        assert_eq!(t.cumulative(4), Some(8));
        let t0 = alpha_table(&seq(ThetaSpec::integer(3), 3), 0).unwrap();
        assert_eq!(t0.alpha_values(), &[1]);
        assert_eq!(t0.cumulative(0), Some(0));
        assert!(alpha_table(&seq(ThetaSpec::integer(0), 4), 15).is_err());
    }

    #[test]
    fn block_location() {
        let eval = AlphaEvaluator::new(&seq(ThetaSpec::integer(0), 6));
        assert_eq!(eval.block_of(&0u32.into()).unwrap(), 0);
        assert_eq!(eval.block_of(&1u32.into()).unwrap(), 1);
        assert_eq!(eval.block_of(&2u32.into()).unwrap(), 1);
        assert_eq!(eval.block_of(&3u32.into()).unwrap(), 2);
        assert_eq!(eval.block_of(&30u32.into()).unwrap(), 4);
    }

    #[test]
    fn big_and_small_paths_agree() {
        for theta in [ThetaSpec::integer(0), ThetaSpec::from_ratio(17, 5).unwrap(), ThetaSpec::Infinity] {
            let vs = seq(theta, 14);
            let eval = AlphaEvaluator::new(&vs);
            let n_max = 3000u64;
            let table = alpha_table(&vs, n_max).unwrap();
            for n in 0..=n_max {
                let small = eval.alpha_u64(n).unwrap();
                assert_eq!(Some(small), table.alpha(n));
                assert_eq!(eval.alpha(&n.into()).unwrap(), small.into());
            }
        }
    }

    #[test]
    fn huge_arguments() {
        let vs = seq(ThetaSpec::integer(0), 200);
        let eval = AlphaEvaluator::new(&vs);
        // r_i - 1 = 2^i - 2 is the last point of block i-1
        let n = (BigUint::one() << 150) - 2u32;
        assert_eq!(eval.alpha(&n).unwrap(), BigUint::one() << 149);
    }

    #[test]
    fn plateaus_theta_zero() {
        let ps = plateau_decomposition(&seq(ThetaSpec::integer(0), 6));
        assert_eq!(ps.len(), 5);
        let p1 = &ps[0];
        assert!(p1.is_empty());
        assert_eq!((p1.lo.clone(), p1.hi.clone()), (3u32.into(), 2u32.into()));
        let p2 = &ps[1];
        assert_eq!((p2.lo.clone(), p2.hi.clone(), p2.value.clone()), (6u32.into(), 6u32.into(), 4u32.into()));
        let p3 = &ps[2];
        assert_eq!((p3.lo.clone(), p3.hi.clone(), p3.value.clone()), (13u32.into(), 14u32.into(), 8u32.into()));
        let eval = AlphaEvaluator::new(&seq(ThetaSpec::integer(0), 6));
        for p in &ps {
            assert_eq!(verify_plateau(&eval, p).unwrap(), None);
        }
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon_at(&ThetaSpec::integer(0), 3).unwrap().value, q(1, 14));
        assert_eq!(epsilon_at(&ThetaSpec::integer(1), 3).unwrap().value, q(1, 33));
        assert_eq!(epsilon_at(&ThetaSpec::Infinity, 2).unwrap().value, q(2, 5));
        assert!(epsilon_at(&ThetaSpec::integer(0), 1).is_err());
        assert!(matches!(
            epsilon_at(&ThetaSpec::bits(0u32, vec![true; 8]), 4),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn epsilon_matches_ratio() {
        let vs = seq(ThetaSpec::integer(0), 4);
        let rows = limit_report(&vs, &[3]).unwrap();
        assert_eq!(rows[0].ratio, q(4, 7));
        assert_eq!(rows[0].distance, Some(q(1, 14)));
        let vs = seq(ThetaSpec::Infinity, 4);
        let rows = limit_report(&vs, &[3]).unwrap();
        assert_eq!(rows[0].head, 4u32.into());
        assert_eq!(rows[0].ratio, q(4, 15));
        assert_eq!(epsilon_at(&ThetaSpec::Infinity, 3).unwrap().value, q(4, 15));
    }

    #[test]
    fn limit_distance_at_index_ten() {
        let vs = seq(ThetaSpec::integer(0), 11);
        let row = &limit_report(&vs, &[10]).unwrap()[0];
        assert_eq!(row.head, BigUint::from(512u32));
        assert_eq!(row.distance, Some(q(1, 2046)));
    }

    #[test]
    fn threshold_index() {
        assert_eq!(epsilon_threshold(&ThetaSpec::integer(0), &q(1, 10)).unwrap(), 3);
        assert_eq!(epsilon_threshold(&ThetaSpec::Infinity, &q(1, 2)).unwrap(), 2);
        assert_eq!(epsilon_threshold(&ThetaSpec::integer(0), &q(10, 1)).unwrap(), 2);
        assert!(epsilon_threshold(&ThetaSpec::integer(0), &q(0, 1)).is_err());
    }

    #[test]
    fn envelopes_small() {
        let vs = seq(ThetaSpec::integer(0), 16);
        assert!(lower_envelope_check(&vs, 10_000).unwrap().passed());
        let report = upper_envelope_check(&vs, &q(1, 10), 10_000).unwrap();
        assert_eq!(report.threshold_index, 3);
        assert!(report.outcome.passed());
        let slack = upper_envelope_check(&vs, &q(10, 1), 10_000).unwrap();
        assert!(slack.outcome.passed());
        let inf = seq(ThetaSpec::Infinity, 12);
        let report = upper_envelope_check(&inf, &q(1, 2), 10_000).unwrap();
        assert_eq!(report.threshold_index, 2);
        assert!(report.outcome.passed());
        assert!(lower_envelope_check(&inf, 10_000).unwrap().passed());
    }

    #[test]
    fn cumulative_rows_small() {
        let vs = seq(ThetaSpec::integer(0), 6);
        let rows = cumulative_limit_report(&vs, &[1, 4]).unwrap();
        assert_eq!(rows[0].normalized, q(2, 1));
        assert_eq!(rows[1].cumulative, 8);
        assert_eq!(rows[1].normalized, q(1, 1));
        assert_eq!(rows[1].distance, Some(q(1, 2)));
        assert!(cumulative_limit_report(&vs, &[0]).is_err());
    }

    #[test]
    fn csv_output() {
        let t = alpha_table(&seq(ThetaSpec::integer(0), 3), 2).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,alpha,cumulative\n0,1,0\n1,2,1\n2,2,3\n");
        let mut buf = Vec::new();
        write_plateaus_csv(&plateau_decomposition(&seq(ThetaSpec::integer(0), 3)), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "i,lo,hi,value\n1,3,2,2\n2,6,6,4\n");
    }
}
