//! Exact refutation of "quasi-polynomial plus bounded" models for `alpha`.
//!
//! A candidate `(d, s, M)` claims that on every residue class `p mod s`,
//! `alpha(p + s t) = A_p(t) + b(t)` with `deg A_p <= d` and `|b| <= M`. For a
//! fixed class and a finite set of points this is a linear feasibility
//! problem in the `d + 1` coefficients of `A_p`:
//!
//! ```text
//!   sum_k a_k t_j^k <= v_j + M      (upper row of point j)
//!  -sum_k a_k t_j^k <= M - v_j      (lower row of point j)
//! ```
//!
//! A certificate is a non-negative combination of these rows whose
//! coefficient part vanishes and whose right-hand side is negative.
//!
//! The system lives in `d + 1` dimensions, so it is infeasible exactly when
//! some `d + 2` of its points already are. For `d + 2` points the
//! coefficient rows have a one-dimensional kernel spanned by the divided
//! difference weights `w_j = 1 / prod_{l != j} (t_j - t_l)`, and those
//! points fit within `M` iff `|sum w_j v_j| <= M sum |w_j|`. The solver
//! scans all `(d + 2)`-subsets, which makes it complete for the points it
//! is given; point selection is the heuristic part.
//!
//! Points are drawn from long plateaus, where `alpha` is constant, and from
//! far-away plateaus, where it has grown: a polynomial cannot follow both
//! within a fixed band once the plateau is long enough.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::format::{parse_natural, parse_rational, rational_to_string};
use crate::hilbert::{plateau_decomposition, AlphaEvaluator};
use crate::theta::{build_value_sequence, ThetaSpec, ValueSequence};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CandidateJson", try_from = "CandidateJson")]
pub struct ModelCandidate {
    pub degree: usize,
    pub period: u64,
    pub bound: BigRational,
}

impl ModelCandidate {
    pub fn new(degree: usize, period: u64, bound: BigRational) -> Result<Self> {
        if period == 0 {
            return Err(Error::Domain("period must be at least 1".into()));
        }
        if bound.is_negative() {
            return Err(Error::Domain("deviation bound must be non-negative".into()));
        }
        Ok(ModelCandidate { degree, period, bound })
    }

    pub fn integral(degree: usize, period: u64, bound: u64) -> Result<Self> {
        Self::new(degree, period, BigRational::from_integer(bound.into()))
    }
}

#[derive(Serialize, Deserialize)]
struct CandidateJson {
    d: usize,
    s: u64,
    #[serde(rename = "M")]
    m: String,
}

impl From<ModelCandidate> for CandidateJson {
    fn from(c: ModelCandidate) -> Self {
        CandidateJson {
            d: c.degree,
            s: c.period,
            m: rational_to_string(&c.bound),
        }
    }
}

impl TryFrom<CandidateJson> for ModelCandidate {
    type Error = Error;

    fn try_from(j: CandidateJson) -> Result<Self> {
        ModelCandidate::new(j.d, j.s, parse_rational(&j.m)?)
    }
}

/// Maps a model `Q + sigma` of `l(R/I_n)` with `|sigma| <= M` to the model
/// `(Q(n+1) - Q(n)) + (sigma(n+1) - sigma(n))` of `alpha`: same period,
/// degree kept as an upper bound, deviation `2M`.
pub fn difference_reduce(candidate: &ModelCandidate) -> ModelCandidate {
    ModelCandidate {
        degree: candidate.degree,
        period: candidate.period,
        bound: &candidate.bound * BigInt::from(2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationCertificate {
    /// The construction whose `alpha` values the points cite.
    pub theta: ThetaSpec,
    pub candidate: ModelCandidate,
    pub residue_class: u64,
    /// `(n, alpha(n))` with `n = residue_class (mod period)`.
    pub points: Vec<(BigUint, BigUint)>,
    /// Non-negative multipliers, two per point: upper row then lower row.
    pub witness: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    theta: ThetaSpec,
    candidate: ModelCandidate,
    class: u64,
    points: Vec<[String; 2]>,
    witness: Vec<[String; 2]>,
}

impl RefutationCertificate {
    pub fn to_json(&self) -> String {
        let j = CertificateJson {
            theta: self.theta.clone(),
            candidate: self.candidate.clone(),
            class: self.residue_class,
            points: self
                .points
                .iter()
                .map(|(n, a)| [n.to_string(), a.to_string()])
                .collect(),
            witness: self
                .witness
                .iter()
                .map(|y| [y.numer().to_string(), y.denom().to_string()])
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: CertificateJson =
            serde_json::from_str(s).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        let points = j
            .points
            .iter()
            .map(|[n, a]| Ok((parse_natural(n)?, parse_natural(a)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
        let witness = j
            .witness
            .iter()
            .map(|[num, den]| {
                let num: BigInt = num.parse().map_err(|_| Error::MalformedCertificate(format!("bad numerator {num:?}")))?;
                let den: BigInt = den.parse().map_err(|_| Error::MalformedCertificate(format!("bad denominator {den:?}")))?;
                if den.is_zero() {
                    return Err(Error::MalformedCertificate("zero denominator".into()));
                }
                Ok(BigRational::new(num, den))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RefutationCertificate {
            theta: j.theta,
            candidate: j.candidate,
            residue_class: j.class,
            points,
            witness,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RefutationOutcome {
    Refuted(Box<RefutationCertificate>),
    /// Every selected point set was fitted within the bound.
    Inconclusive { levels_tried: usize },
}

impl RefutationOutcome {
    pub fn certificate(&self) -> Option<&RefutationCertificate> {
        match self {
            RefutationOutcome::Refuted(c) => Some(c),
            RefutationOutcome::Inconclusive { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RefuteConfig {
    /// Largest sequence index point selection may reach.
    pub max_index: usize,
    /// Levels tried beyond the one whose plateau is provably long enough.
    pub extra_levels: usize,
}

impl Default for RefuteConfig {
    fn default() -> Self {
        RefuteConfig {
            max_index: 4096,
            extra_levels: 4,
        }
    }
}

fn t_of(n: &BigUint, class: u64, period: u64) -> BigRational {
    BigRational::from_integer(BigInt::from((n - class) / period))
}

/// Multipliers proving that no degree-`d` polynomial in `t` stays within
/// `M` of the given values, or `None` when the points admit such a fit.
///
/// Points must lie in `class (mod period)`; duplicate `n` are ignored.
pub fn find_witness(candidate: &ModelCandidate, class: u64, points: &[(BigUint, BigUint)]) -> Option<Vec<BigRational>> {
    let size = candidate.degree + 2;
    let mut distinct: Vec<usize> = Vec::new();
    for (j, (n, _)) in points.iter().enumerate() {
        if !distinct.iter().any(|&k| points[k].0 == *n) {
            distinct.push(j);
        }
    }
    if distinct.len() < size {
        return None;
    }
    let ts: Vec<BigInt> = points
        .iter()
        .map(|(n, _)| BigInt::from((n - class) / candidate.period))
        .collect();
    let vs: Vec<BigInt> = points.iter().map(|(_, v)| BigInt::from(v.clone())).collect();
    let (m_num, m_den) = (candidate.bound.numer(), candidate.bound.denom());

    // w_j = 1 / P_j with P_j = prod_{l != j} (t_j - t_l). Scaling by
    // prod |P_j| gives integer weights q_j; the subset is infeasible iff
    // |sum q_j v_j| > M sum |q_j|. Best subset maximizes that ratio.
    let mut best: Option<(BigInt, BigInt, Vec<usize>)> = None;
    for subset in combinations(&distinct, size) {
        let ps: Vec<BigInt> = subset
            .iter()
            .map(|&j| {
                subset
                    .iter()
                    .filter(|&&l| l != j)
                    .fold(BigInt::one(), |acc, &l| acc * (&ts[j] - &ts[l]))
            })
            .collect();
        let qs: Vec<BigInt> = (0..size)
            .map(|k| {
                let others = ps
                    .iter()
                    .enumerate()
                    .filter(|&(l, _)| l != k)
                    .fold(BigInt::one(), |acc, (_, p)| acc * p.abs());
                if ps[k].is_negative() {
                    -others
                } else {
                    others
                }
            })
            .collect();
        let d: BigInt = subset.iter().zip(&qs).map(|(&j, q)| q * &vs[j]).sum();
        let mass: BigInt = qs.iter().map(|q| q.abs()).sum();
        if d.abs() * m_den <= m_num * &mass {
            continue;
        }
        if best
            .as_ref()
            .is_none_or(|(bd, bm, _)| d.abs() * bm > bd * &mass)
        {
            best = Some((d.abs(), mass, subset));
        }
    }
    let (_, _, subset) = best?;
    let ts: Vec<BigRational> = ts.into_iter().map(BigRational::from_integer).collect();
    let weights: Vec<BigRational> = subset
        .iter()
        .map(|&j| {
            subset
                .iter()
                .filter(|&&l| l != j)
                .fold(BigRational::one(), |acc, &l| acc * (&ts[j] - &ts[l]))
                .recip()
        })
        .collect();
    let d: BigRational = subset
        .iter()
        .zip(&weights)
        .map(|(&j, w)| w * BigRational::from_integer(vs[j].clone()))
        .sum();

    // combination c_j = -sign(D) w_j: upper rows take the positive part
    let mut witness = vec![BigRational::zero(); 2 * points.len()];
    for (&j, w) in subset.iter().zip(&weights) {
        let c = if d.is_positive() { -w } else { w.clone() };
        if c.is_positive() {
            witness[2 * j] = c;
        } else {
            witness[2 * j + 1] = -c;
        }
    }
    Some(primitive(witness))
}

/// Rescales a non-negative rational vector to coprime integers.
fn primitive(v: Vec<BigRational>) -> Vec<BigRational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v;
    }
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &gcd))
        .collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Up to `count` integers of `lo..=hi` congruent to `class`, evenly spread
/// and always including the first and last such integer.
fn class_points(lo: &BigUint, hi: &BigUint, class: u64, period: u64, count: usize) -> Vec<BigUint> {
    if lo > hi || count == 0 {
        return Vec::new();
    }
    let period_big = BigUint::from(period);
    let offset = (BigUint::from(class) + &period_big - (lo % &period_big)) % &period_big;
    let first = lo + offset;
    if &first > hi {
        return Vec::new();
    }
    let steps = (hi - &first) / &period_big;
    let last = &first + &steps * &period_big;
    if count == 1 || steps.is_zero() {
        return vec![first];
    }
    let parts = BigUint::from(count - 1);
    let mut out: Vec<BigUint> = (0..count)
        .map(|k| &first + (&steps * BigUint::from(k) / &parts) * &period_big)
        .collect();
    out.dedup();
    debug_assert_eq!(out.last(), Some(&last));
    out
}

/// Last integer `<= n` congruent to `class`.
fn class_floor(n: &BigUint, class: u64, period: u64) -> Option<BigUint> {
    let period_big = BigUint::from(period);
    let back = (n + &period_big * 2u32 - BigUint::from(class)) % &period_big;
    if &back > n {
        None
    } else {
        Some(n - back)
    }
}

/// Points of one residue class used at plateau `level`: several from that
/// plateau, the ends of its neighbours, and the last class point before the
/// block heads `r_{2 level}` and `r_{4 level}`.
pub fn select_points(vs: &ValueSequence, candidate: &ModelCandidate, class: u64, level: usize) -> Result<Vec<BigUint>> {
    let need = 4 * level + 1;
    if vs.max_index() < need {
        return Err(Error::SequenceTooShort {
            n: format!("r_{need}"),
            max_index: vs.max_index(),
            last: vs.last().to_string(),
        });
    }
    // plateau i is (r_0 + ... + r_i, r_{i+1})
    let bounds = |i: usize| -> (BigUint, BigUint) { (vs.prefix_sum(i) + 1u32, vs.get(i + 1).expect("length checked") - 1u32) };
    let s = candidate.period;
    let (lo, hi) = bounds(level);
    let mut pts = class_points(&lo, &hi, class, s, candidate.degree + 3);
    if level > 1 {
        let (lo, hi) = bounds(level - 1);
        pts.extend(class_points(&lo, &hi, class, s, 2).into_iter().skip(1));
    }
    let (lo, hi) = bounds(level + 1);
    pts.extend(class_points(&lo, &hi, class, s, 2));
    for j in [2 * level, 4 * level] {
        let head = vs.get(j).expect("length checked") - 1u32;
        pts.extend(class_floor(&head, class, s));
    }
    pts.sort();
    pts.dedup();
    Ok(pts)
}

/// Smallest level whose plateau holds at least
/// `s (d + 2) max(2, ceil(2M(2 + theta)) + 2)` integers.
fn sufficient_level(vs: &ValueSequence, candidate: &ModelCandidate) -> Option<usize> {
    let factor: BigInt = match vs.theta().exact_value() {
        Some(theta) => {
            let scaled = &candidate.bound * BigRational::from_integer(2.into()) * (BigRational::from_integer(2.into()) + theta);
            scaled.ceil().to_integer() + 2
        }
        None => (&candidate.bound * BigRational::from_integer(2.into())).ceil().to_integer() + 2,
    };
    let factor = factor.max(BigInt::from(2)).to_biguint().expect("positive");
    let need = factor * candidate.period * (candidate.degree as u64 + 2);
    plateau_decomposition(vs)
        .iter()
        .find(|p| p.len() >= need)
        .map(|p| p.level)
}

/// Searches plateau levels upward for a certificate against `candidate`.
pub fn refute(vs: &ValueSequence, candidate: &ModelCandidate) -> Result<RefutationOutcome> {
    refute_with(vs, candidate, &RefuteConfig::default())
}

pub fn refute_with(vs: &ValueSequence, candidate: &ModelCandidate, config: &RefuteConfig) -> Result<RefutationOutcome> {
    let theta = vs.theta().clone();
    let cap = config.max_index.max(vs.max_index());
    // grow the sequence until a plateau of the required length appears
    let mut probe = 16usize.min(cap).max(3);
    let last_level = loop {
        let seq = build_value_sequence(&theta, probe)?;
        if let Some(level) = sufficient_level(&seq, candidate) {
            break level + config.extra_levels;
        }
        if probe >= cap {
            return Err(Error::SequenceTooShort {
                n: "plateau of the required length".into(),
                max_index: probe,
                last: seq.last().to_string(),
            });
        }
        probe = (probe * 2).min(cap);
    };
    let mut full = build_value_sequence(&theta, (4 * last_level + 2).min(cap).min(34))?;
    let mut eval = AlphaEvaluator::new(&full);

    let mut tried = 0;
    for level in 2..=last_level {
        if 4 * level + 1 > full.max_index() {
            if full.max_index() >= cap {
                if tried == 0 {
                    return Err(Error::SequenceTooShort {
                        n: format!("r_{}", 4 * level + 1),
                        max_index: full.max_index(),
                        last: full.last().to_string(),
                    });
                }
                break;
            }
            let top = (2 * full.max_index()).max(4 * level + 2).min(cap);
            full = build_value_sequence(&theta, top)?;
            eval = AlphaEvaluator::new(&full);
            if 4 * level + 1 > full.max_index() {
                break;
            }
        }
        tried += 1;
        for class in 0..candidate.period {
            let ns = select_points(&full, candidate, class, level)?;
            let points = ns
                .into_iter()
                .map(|n| {
                    let a = eval.alpha(&n)?;
                    Ok((n, a))
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(witness) = find_witness(candidate, class, &points) {
                return Ok(RefutationOutcome::Refuted(Box::new(RefutationCertificate {
                    theta,
                    candidate: candidate.clone(),
                    residue_class: class,
                    points,
                    witness,
                })));
            }
        }
    }
    Ok(RefutationOutcome::Inconclusive { levels_tried: tried })
}

/// Refutes a model of `l(R/I_n)` through its difference model for `alpha`.
pub fn refute_cumulative(vs: &ValueSequence, candidate: &ModelCandidate) -> Result<RefutationOutcome> {
    refute(vs, &difference_reduce(candidate))
}

/// Runs [`refute`] over every candidate in the grid.
pub fn refute_sweep(
    vs: &ValueSequence,
    max_degree: usize,
    max_period: u64,
    bounds: &[BigRational],
) -> Result<Vec<(ModelCandidate, RefutationOutcome)>> {
    let mut out = Vec::new();
    for degree in 0..=max_degree {
        for period in 1..=max_period {
            for bound in bounds {
                let c = ModelCandidate::new(degree, period, bound.clone())?;
                let outcome = refute(vs, &c)?;
                out.push((c, outcome));
            }
        }
    }
    Ok(out)
}

/// Re-checks a certificate from scratch.
///
/// The cited `alpha` values are recomputed from the certificate's `theta`;
/// the multipliers must be non-negative, cancel every coefficient of the
/// degree-`d` polynomial, and leave a negative right-hand side.
pub fn verify_certificate(cert: &RefutationCertificate) -> Result<bool> {
    let c = &cert.candidate;
    if c.period == 0 {
        return Err(Error::MalformedCertificate("period 0".into()));
    }
    if c.bound.is_negative() {
        return Err(Error::MalformedCertificate("negative deviation bound".into()));
    }
    if cert.residue_class >= c.period {
        return Err(Error::MalformedCertificate(format!(
            "class {} outside 0..{}",
            cert.residue_class, c.period
        )));
    }
    if cert.points.is_empty() {
        return Err(Error::MalformedCertificate("no points".into()));
    }
    if cert.witness.len() != 2 * cert.points.len() {
        return Err(Error::MalformedCertificate(format!(
            "{} multipliers for {} points",
            cert.witness.len(),
            cert.points.len()
        )));
    }

    if cert
        .points
        .iter()
        .any(|(n, _)| (n % c.period).to_u64() != Some(cert.residue_class))
    {
        return Ok(false);
    }
    let max_n = cert.points.iter().map(|(n, _)| n).max().expect("non-empty");
    let vs = ValueSequence::covering(&cert.theta, max_n)?;
    let eval = AlphaEvaluator::new(&vs);
    for (n, a) in &cert.points {
        if &eval.alpha(n)? != a {
            return Ok(false);
        }
    }
    if cert.witness.iter().any(|y| y.is_negative()) {
        return Ok(false);
    }

    let combo: Vec<BigRational> = cert.witness.chunks(2).map(|ul| &ul[0] - &ul[1]).collect();
    let ts: Vec<BigRational> = cert
        .points
        .iter()
        .map(|(n, _)| t_of(n, cert.residue_class, c.period))
        .collect();
    let mut powers = vec![BigRational::one(); ts.len()];
    for _ in 0..=c.degree {
        let coeff: BigRational = combo.iter().zip(&powers).map(|(y, p)| y * p).sum();
        if !coeff.is_zero() {
            return Ok(false);
        }
        for (p, t) in powers.iter_mut().zip(&ts) {
            *p *= t;
        }
    }
    let rhs: BigRational = cert
        .witness
        .chunks(2)
        .zip(&cert.points)
        .map(|(ul, (_, a))| {
            let v = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, a.clone()));
            &ul[0] * (&v + &c.bound) + &ul[1] * (&c.bound - &v)
        })
        .sum();
    Ok(rhs.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn pts(v: &[(u64, u64)]) -> Vec<(BigUint, BigUint)> {
        v.iter().map(|&(n, a)| (n.into(), a.into())).collect()
    }

    #[test]
    fn difference_doubles_bound() {
        let c = ModelCandidate::new(2, 3, q(5, 1)).unwrap();
        assert_eq!(difference_reduce(&c), ModelCandidate::new(2, 3, q(10, 1)).unwrap());
        let c = ModelCandidate::integral(0, 1, 0).unwrap();
        assert_eq!(difference_reduce(&c), c);
        let c = ModelCandidate::new(1, 2, q(7, 2)).unwrap();
        assert_eq!(difference_reduce(&c).bound, q(7, 1));
    }

    #[test]
    fn candidate_validation() {
        assert!(ModelCandidate::integral(1, 0, 1).is_err());
        assert!(ModelCandidate::new(1, 1, q(-1, 2)).is_err());
    }

    #[test]
    fn exact_line_is_not_refuted() {
        let c = ModelCandidate::integral(1, 1, 0).unwrap();
        let data = pts(&[(3, 3), (10, 10), (50, 50), (900, 900)]);
        assert_eq!(find_witness(&c, 0, &data), None);
    }

    #[test]
    fn constant_model_against_growth() {
        let c = ModelCandidate::integral(0, 1, 2).unwrap();
        let data = pts(&[(10, 3), (20, 9)]);
        let w = find_witness(&c, 0, &data).unwrap();
        // a <= 3 + 2 from the first point against a >= 9 - 2 from the second
        assert_eq!(w, vec![q(1, 1), q(0, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn class_point_spacing() {
        let got = class_points(&10u32.into(), &30u32.into(), 1, 3, 3);
        let want: Vec<BigUint> = [10u32, 19, 28].iter().map(|&x| x.into()).collect();
        assert_eq!(got, want);
        assert!(class_points(&10u32.into(), &11u32.into(), 0, 3, 3).is_empty());
        assert_eq!(class_floor(&10u32.into(), 2, 3), Some(8u32.into()));
        assert_eq!(class_floor(&1u32.into(), 2, 3), None);
    }

    #[test]
    fn refute_linear_theta_zero() {
        let vs = build_value_sequence(&ThetaSpec::integer(0), 8).unwrap();
        let c = ModelCandidate::integral(1, 1, 1).unwrap();
        let outcome = refute(&vs, &c).unwrap();
        let cert = outcome.certificate().expect("refuted");
        assert!(verify_certificate(cert).unwrap());
    }

    #[test]
    fn refute_constant_with_large_bound() {
        let vs = build_value_sequence(&ThetaSpec::integer(0), 8).unwrap();
        let c = ModelCandidate::integral(0, 1, 100).unwrap();
        let cert = refute(&vs, &c).unwrap().certificate().cloned().expect("refuted");
        assert!(verify_certificate(&cert).unwrap());
        let values: Vec<&BigUint> = cert.points.iter().map(|(_, a)| a).collect();
        let spread = *values.iter().max().unwrap() - *values.iter().min().unwrap();
        assert!(spread > BigUint::from(200u32));
    }

    #[test]
    fn tampering_is_detected() {
        let vs = build_value_sequence(&ThetaSpec::integer(0), 8).unwrap();
        let c = ModelCandidate::integral(1, 2, 3).unwrap();
        let cert = refute(&vs, &c).unwrap().certificate().cloned().expect("refuted");
        assert!(verify_certificate(&cert).unwrap());

        let mut negated = cert.clone();
        let k = negated.witness.iter().position(|y| !y.is_zero()).unwrap();
        negated.witness[k] = -negated.witness[k].clone();
        assert!(!verify_certificate(&negated).unwrap());

        let mut wrong_alpha = cert.clone();
        wrong_alpha.points[0].1 += 1u32;
        assert!(!verify_certificate(&wrong_alpha).unwrap());

        let mut short = cert.clone();
        short.witness.pop();
        assert!(matches!(verify_certificate(&short), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn certificate_json_round_trip() {
        let vs = build_value_sequence(&ThetaSpec::integer(0), 8).unwrap();
        let c = ModelCandidate::new(1, 1, q(1, 2)).unwrap();
        let cert = refute(&vs, &c).unwrap().certificate().cloned().unwrap();
        let back = RefutationCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert!(cert.to_json().contains(r#""M": "1/2""#));
        assert!(RefutationCertificate::from_json("{}").is_err());
    }
}
