//! The parameter `theta`, its digit expansion, and the value sequence
//! `r_0, r_1, ...` it determines.
//!
//! For finite `theta` the digits are `e_2 = floor(2 theta)` followed by the
//! binary digits `e_3, e_4, ... in {0, 1}` of the remainder, chosen greedily so
//! that `0 <= R_j < 2^(1-j)` where `R_j = theta - sum_{k=2..j} e_k 2^(1-k)`.
//! For `theta = inf` the digits are `e_j = 2^(j-1)`. The values then follow
//! `r_0 = r_1 = 1`, `r_{i+1} = 2 r_i + 1 + e_{i+1}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::format::{parse_natural, parse_rational, rational_to_string};
use crate::{Error, Result};

/// The parameter steering the whole construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ThetaJson", try_from = "ThetaJson")]
pub enum ThetaSpec {
    /// An exact non-negative rational, kept in lowest terms.
    Rational(BigRational),
    /// A finite digit prefix: `e_2` followed by the bits `e_3, e_4, ...`.
    ExplicitBits { e2: BigUint, bits: Vec<bool> },
    Infinity,
}

impl ThetaSpec {
    pub fn rational(q: BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Domain(format!(
                "theta must be non-negative, got {}",
                rational_to_string(&q)
            )));
        }
        Ok(ThetaSpec::Rational(q))
    }

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(v: u64) -> Self {
        ThetaSpec::Rational(BigRational::from_integer(v.into()))
    }

    pub fn bits(e2: impl Into<BigUint>, bits: Vec<bool>) -> Self {
        ThetaSpec::ExplicitBits {
            e2: e2.into(),
            bits,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ThetaSpec::Infinity)
    }

    /// The exact value, when one is known.
    pub fn exact_value(&self) -> Option<&BigRational> {
        match self {
            ThetaSpec::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Largest digit index available, `None` when unbounded.
    pub fn exact_upto(&self) -> Option<usize> {
        match self {
            ThetaSpec::ExplicitBits { bits, .. } => Some(2 + bits.len()),
            _ => None,
        }
    }

    /// Truncation `sum_{k=2..J} e_k 2^(1-k)` of an explicit digit prefix
    /// together with the width `2^(1-J)` of the interval it pins `theta` to.
    pub fn prefix_interval(&self) -> Option<(BigRational, BigRational)> {
        match self {
            ThetaSpec::ExplicitBits { e2, bits } => {
                let mut lo = BigRational::new(BigInt::from(e2.clone()), BigInt::from(2));
                let mut w = BigRational::new(BigInt::one(), BigInt::from(2));
                for &b in bits {
                    w /= BigInt::from(2);
                    if b {
                        lo += &w;
                    }
                }
                Some((lo, w))
            }
            _ => None,
        }
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaSpec::Rational(q) => f.write_str(&rational_to_string(q)),
            ThetaSpec::ExplicitBits { e2, bits } => {
                write!(f, "{e2}:")?;
                for &b in bits {
                    f.write_str(if b { "1" } else { "0" })?;
                }
                Ok(())
            }
            ThetaSpec::Infinity => f.write_str("inf"),
        }
    }
}

/// Accepts `p/q`, `p`, `inf`, or `e2:b3b4...` for an explicit prefix.
impl FromStr for ThetaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => return Ok(ThetaSpec::Infinity),
            _ => {}
        }
        if let Some((e2, bits)) = s.split_once(':') {
            let e2 = parse_natural(e2)?;
            let bits = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::Parse(format!("bit must be 0 or 1, got {c:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(ThetaSpec::ExplicitBits { e2, bits });
        }
        ThetaSpec::rational(parse_rational(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct ThetaJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    num: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    e2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bits: Option<Vec<u8>>,
}

impl From<ThetaSpec> for ThetaJson {
    fn from(t: ThetaSpec) -> Self {
        let empty = ThetaJson {
            kind: String::new(),
            num: None,
            den: None,
            e2: None,
            bits: None,
        };
        match t {
            ThetaSpec::Rational(q) => ThetaJson {
                kind: "rational".into(),
                num: Some(q.numer().to_string()),
                den: Some(q.denom().to_string()),
                ..empty
            },
            ThetaSpec::ExplicitBits { e2, bits } => ThetaJson {
                kind: "bits".into(),
                e2: Some(e2.to_string()),
                bits: Some(bits.into_iter().map(u8::from).collect()),
                ..empty
            },
            ThetaSpec::Infinity => ThetaJson {
                kind: "infinity".into(),
                ..empty
            },
        }
    }
}

impl TryFrom<ThetaJson> for ThetaSpec {
    type Error = Error;

    fn try_from(j: ThetaJson) -> Result<Self> {
        let missing = |field: &str| Error::Parse(format!("theta of kind {:?} lacks {field:?}", j.kind));
        match j.kind.as_str() {
            "rational" => {
                let num: BigUint = parse_natural(j.num.as_deref().ok_or_else(|| missing("num"))?)?;
                let den: BigUint = parse_natural(j.den.as_deref().ok_or_else(|| missing("den"))?)?;
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                ThetaSpec::rational(BigRational::new(num.into(), den.into()))
            }
            "bits" => {
                let e2 = parse_natural(j.e2.as_deref().ok_or_else(|| missing("e2"))?)?;
                let bits = j
                    .bits
                    .as_ref()
                    .ok_or_else(|| missing("bits"))?
                    .iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        _ => Err(Error::Parse(format!("bit must be 0 or 1, got {b}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ThetaSpec::ExplicitBits { e2, bits })
            }
            "infinity" => Ok(ThetaSpec::Infinity),
            other => Err(Error::Parse(format!("unknown theta kind {other:?}"))),
        }
    }
}

/// Digits `e_2, ..., e_J` and, for exact rational `theta`, the remainders
/// `R_2, ..., R_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    digits: Vec<BigUint>,
    remainders: Option<Vec<BigRational>>,
}

impl DigitExpansion {
    /// Largest index `J` for which `e_J` is stored.
    pub fn exact_upto(&self) -> usize {
        self.digits.len() + 1
    }

    /// `e_j` for `2 <= j <= exact_upto()`.
    pub fn digit(&self, j: usize) -> Option<&BigUint> {
        j.checked_sub(2).and_then(|k| self.digits.get(k))
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    /// `R_j`, only known when `theta` is an exact rational.
    pub fn remainder(&self, j: usize) -> Option<&BigRational> {
        let k = j.checked_sub(2)?;
        self.remainders.as_ref()?.get(k)
    }

    pub fn remainders(&self) -> Option<&[BigRational]> {
        self.remainders.as_deref()
    }
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Digit expansion of `theta` through index `upto`.
pub fn expand_theta(theta: &ThetaSpec, upto: usize) -> Result<DigitExpansion> {
    if upto < 2 {
        return Err(Error::Domain(format!("digit index starts at 2, got {upto}")));
    }
    match theta {
        ThetaSpec::Rational(q) => {
            // Work with R_j * 2^(j-1) * den as an integer: each step doubles it
            // and subtracts den when the next bit is set.
            let den = q.denom().clone();
            let twice: BigInt = q.numer() * 2;
            let e2: BigInt = &twice / &den;
            let mut scaled = twice - &e2 * &den;
            let mut digits = Vec::with_capacity(upto - 1);
            let mut remainders = Vec::with_capacity(upto - 1);
            digits.push(e2.to_biguint().expect("theta is non-negative"));
            remainders.push(BigRational::new(scaled.clone(), den.clone() * 2));
            for j in 3..=upto {
                scaled *= 2;
                if scaled >= den {
                    scaled -= &den;
                    digits.push(BigUint::one());
                } else {
                    digits.push(BigUint::zero());
                }
                let scale = BigInt::from(pow2(j - 1)) * &den;
                remainders.push(BigRational::new(scaled.clone(), scale));
            }
            Ok(DigitExpansion {
                digits,
                remainders: Some(remainders),
            })
        }
        ThetaSpec::ExplicitBits { e2, bits } => {
            let available = 2 + bits.len();
            if upto > available {
                return Err(Error::InsufficientPrecision {
                    requested: upto,
                    available,
                });
            }
            let mut digits = vec![e2.clone()];
            digits.extend(bits[..upto - 2].iter().map(|&b| BigUint::from(u8::from(b))));
            Ok(DigitExpansion {
                digits,
                remainders: None,
            })
        }
        ThetaSpec::Infinity => Ok(DigitExpansion {
            digits: (2..=upto).map(|j| pow2(j - 1)).collect(),
            remainders: None,
        }),
    }
}

/// The limit `lim alpha(n)/n = 1/(2 + theta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Exact(BigRational),
    /// Open lower end, closed upper end, as implied by a truncated prefix.
    Interval { lo: BigRational, hi: BigRational },
}

pub fn multiplicity_from_theta(theta: &ThetaSpec) -> Multiplicity {
    let two = BigRational::from_integer(2.into());
    match theta {
        ThetaSpec::Rational(q) => Multiplicity::Exact((&two + q).recip()),
        ThetaSpec::Infinity => Multiplicity::Exact(BigRational::zero()),
        ThetaSpec::ExplicitBits { .. } => {
            let (lo, w) = theta.prefix_interval().expect("explicit bits");
            let hi = &lo + w;
            Multiplicity::Interval {
                lo: (&two + hi).recip(),
                hi: (two + lo).recip(),
            }
        }
    }
}

/// `theta = 1/C - 2`, with `C = 0` mapping to infinity.
pub fn theta_from_multiplicity(c: &BigRational) -> Result<ThetaSpec> {
    let half = BigRational::new(1.into(), 2.into());
    if c.is_negative() || c > &half {
        return Err(Error::Domain(format!(
            "multiplicity must lie in [0, 1/2], got {}",
            rational_to_string(c)
        )));
    }
    if c.is_zero() {
        return Ok(ThetaSpec::Infinity);
    }
    ThetaSpec::rational(c.recip() - BigRational::from_integer(2.into()))
}

/// The values `r_0, ..., r_I` of a generating sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSequence {
    theta: ThetaSpec,
    #[serde(with = "decimal_vec")]
    r: Vec<BigUint>,
}

mod decimal_vec {
    use num_bigint::BigUint;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}

impl ValueSequence {
    /// Wraps caller-supplied values without checking them; see
    /// [`check_sequence_invariants`].
    pub fn from_values(theta: ThetaSpec, r: Vec<BigUint>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::Domain("value sequence needs at least r_0".into()));
        }
        Ok(ValueSequence { theta, r })
    }

    /// Shortest constructed sequence with `r_I > n` (and `I >= 2`).
    pub fn covering(theta: &ThetaSpec, n: &BigUint) -> Result<Self> {
        // r_i >= 2^i - 1, so I = bits(n) + 2 always suffices
        let cap = n.bits() as usize + 2;
        let full = build_value_sequence(theta, cap.max(2)).or_else(|e| match e {
            // fall back to whatever the prefix allows; the check below decides
            Error::InsufficientPrecision { available, .. } if available >= 2 => {
                build_value_sequence(theta, available)
            }
            e => Err(e),
        })?;
        let idx = full.r.iter().position(|ri| ri > n);
        match idx {
            Some(i) => Ok(full.truncated(i.max(2))),
            None => Err(Error::InsufficientPrecision {
                requested: full.max_index() + 1,
                available: full.max_index(),
            }),
        }
    }

    pub fn theta(&self) -> &ThetaSpec {
        &self.theta
    }

    pub fn values(&self) -> &[BigUint] {
        &self.r
    }

    pub fn get(&self, i: usize) -> Option<&BigUint> {
        self.r.get(i)
    }

    /// `I`, the largest stored index.
    pub fn max_index(&self) -> usize {
        self.r.len() - 1
    }

    pub fn last(&self) -> &BigUint {
        self.r.last().expect("non-empty")
    }

    /// `r_0 + ... + r_i`.
    pub fn prefix_sum(&self, i: usize) -> BigUint {
        self.r[..=i].iter().sum()
    }

    pub fn truncated(&self, max_index: usize) -> Self {
        ValueSequence {
            theta: self.theta.clone(),
            r: self.r[..=max_index.min(self.max_index())].to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let vs: ValueSequence = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if vs.r.is_empty() {
            return Err(Error::Parse("empty value list".into()));
        }
        Ok(vs)
    }
}

/// `r_0 = r_1 = 1`, `r_{i+1} = 2 r_i + 1 + e_{i+1}` for `1 <= i < I`.
pub fn build_value_sequence(theta: &ThetaSpec, max_index: usize) -> Result<ValueSequence> {
    if max_index < 1 {
        return Err(Error::Domain("value sequence needs I >= 1".into()));
    }
    let mut r = vec![BigUint::one(), BigUint::one()];
    if max_index >= 2 {
        let digits = expand_theta(theta, max_index)?;
        for j in 2..=max_index {
            let next = &r[j - 1] * 2u32 + 1u32 + digits.digit(j).expect("expanded");
            r.push(next);
        }
    }
    Ok(ValueSequence {
        theta: theta.clone(),
        r,
    })
}

/// `r_i = 2^i - 1 + sum_{k=2..i} e_k 2^(i-k)` for `i >= 1`, and `r_0 = 1`.
pub fn value_sequence_closed_form(theta: &ThetaSpec, i: usize) -> Result<BigUint> {
    if i == 0 {
        return Ok(BigUint::one());
    }
    let mut r = pow2(i) - 1u32;
    if i >= 2 {
        let digits = expand_theta(theta, i)?;
        for k in 2..=i {
            r += digits.digit(k).expect("expanded") << (i - k);
        }
    }
    Ok(r)
}

/// The inequality families satisfied by every constructed sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum InequalityFamily {
    /// `r_{i+1} > 2 r_i` for `1 <= i < I`.
    Doubling,
    /// `2 r_i > r_0 + ... + r_i` for `2 <= i <= I`.
    Dominance,
    /// `r_{i+1} >= max(2 r_i, r_0 + ... + r_i) + 1` for `1 <= i < I`.
    Spacing,
    /// `r_{i+1} - (r_0 + ... + r_i) >= i` for `1 <= i < I`.
    Growth,
}

impl InequalityFamily {
    pub const ALL: [InequalityFamily; 4] = [
        InequalityFamily::Doubling,
        InequalityFamily::Dominance,
        InequalityFamily::Spacing,
        InequalityFamily::Growth,
    ];
}

impl fmt::Display for InequalityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InequalityFamily::Doubling => "r_{i+1} > 2r_i",
            InequalityFamily::Dominance => "2r_i > r_0+...+r_i",
            InequalityFamily::Spacing => "r_{i+1} >= max(2r_i, r_0+...+r_i)+1",
            InequalityFamily::Growth => "r_{i+1} - (r_0+...+r_i) >= i",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyResult {
    pub family: InequalityFamily,
    pub checked: usize,
    /// Every index `i` at which the inequality fails.
    pub violations: Vec<usize>,
}

impl FamilyResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.violations.first().copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub families: Vec<FamilyResult>,
}

impl InvariantReport {
    pub fn all_passed(&self) -> bool {
        self.families.iter().all(FamilyResult::passed)
    }

    pub fn family(&self, f: InequalityFamily) -> &FamilyResult {
        self.families
            .iter()
            .find(|r| r.family == f)
            .expect("all families are evaluated")
    }
}

pub fn check_sequence_invariants(vs: &ValueSequence) -> InvariantReport {
    let r = vs.values();
    let top = vs.max_index();
    // prefix[i] = r_0 + ... + r_i
    let mut prefix = Vec::with_capacity(r.len());
    let mut acc = BigUint::zero();
    for ri in r {
        acc += ri;
        prefix.push(acc.clone());
    }

    let mut families = Vec::new();
    for family in InequalityFamily::ALL {
        let range: Vec<usize> = match family {
            InequalityFamily::Dominance => (2..=top).collect(),
            _ => (1..top).collect(),
        };
        let violations = range
            .iter()
            .copied()
            .filter(|&i| {
                let holds = match family {
                    InequalityFamily::Doubling => r[i + 1] > &r[i] * 2u32,
                    InequalityFamily::Dominance => &r[i] * 2u32 > prefix[i],
                    InequalityFamily::Spacing => {
                        let twice = &r[i] * 2u32;
                        r[i + 1] > twice.max(prefix[i].clone())
                    }
                    InequalityFamily::Growth => r[i + 1] >= &prefix[i] + i,
                };
                !holds
            })
            .collect();
        families.push(FamilyResult {
            family,
            checked: range.len(),
            violations,
        });
    }
    InvariantReport { families }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn nat(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn expand_zero() {
        let d = expand_theta(&ThetaSpec::integer(0), 6).unwrap();
        assert_eq!(d.digits(), nat(&[0, 0, 0, 0, 0]).as_slice());
        assert!(d.remainders().unwrap().iter().all(Zero::is_zero));
        assert_eq!(d.exact_upto(), 6);
    }

    #[test]
    fn expand_one() {
        let d = expand_theta(&ThetaSpec::integer(1), 4).unwrap();
        assert_eq!(d.digits(), nat(&[2, 0, 0]).as_slice());
        for j in 2..=4 {
            assert!(d.remainder(j).unwrap().is_zero());
        }
    }

    #[test]
    fn expand_infinity() {
        let d = expand_theta(&ThetaSpec::Infinity, 4).unwrap();
        assert_eq!(d.digits(), nat(&[2, 4, 8]).as_slice());
        assert!(d.remainders().is_none());
    }

    #[test]
    fn expand_seventeen_fifths() {
        // 17/5 = 3 + 2/5; 2/5 = 0.0110 0110 ... in binary
        let d = expand_theta(&ThetaSpec::from_ratio(17, 5).unwrap(), 10).unwrap();
        assert_eq!(d.digit(2), Some(&BigUint::from(6u32)));
        let bits: Vec<u64> = (3..=10).map(|j| d.digit(j).unwrap().try_into().unwrap()).collect();
        assert_eq!(bits, vec![1, 1, 0, 0, 1, 1, 0, 0]);
    }

    #[test]
    fn dyadic_theta_uses_terminating_digits() {
        let d = expand_theta(&ThetaSpec::from_ratio(3, 4).unwrap(), 8).unwrap();
        // 3/4 = 1/2 + 1/4, then zeros forever
        let all: Vec<u64> = d.digits().iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(all, vec![1, 1, 0, 0, 0, 0, 0]);
        assert!(d.remainder(8).unwrap().is_zero());
    }

    #[test]
    fn explicit_bits_precision() {
        let t = ThetaSpec::bits(3u32, vec![true, false]);
        let d = expand_theta(&t, 4).unwrap();
        assert_eq!(d.digits(), nat(&[3, 1, 0]).as_slice());
        assert_eq!(
            expand_theta(&t, 5),
            Err(Error::InsufficientPrecision {
                requested: 5,
                available: 4
            })
        );
        let bare = ThetaSpec::bits(0u32, vec![]);
        assert_eq!(expand_theta(&bare, 2).unwrap().digits(), nat(&[0]).as_slice());
    }

    #[test]
    fn expand_rejects_low_index() {
        assert!(matches!(expand_theta(&ThetaSpec::Infinity, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn multiplicity_conversions() {
        assert_eq!(theta_from_multiplicity(&q(1, 2)).unwrap(), ThetaSpec::integer(0));
        assert_eq!(theta_from_multiplicity(&q(1, 3)).unwrap(), ThetaSpec::integer(1));
        assert_eq!(theta_from_multiplicity(&q(0, 1)).unwrap(), ThetaSpec::Infinity);
        assert!(theta_from_multiplicity(&q(-1, 5)).is_err());
        assert!(theta_from_multiplicity(&q(3, 5)).is_err());

        assert_eq!(multiplicity_from_theta(&ThetaSpec::integer(0)), Multiplicity::Exact(q(1, 2)));
        assert_eq!(multiplicity_from_theta(&ThetaSpec::Infinity), Multiplicity::Exact(q(0, 1)));
        assert_eq!(multiplicity_from_theta(&ThetaSpec::integer(1)), Multiplicity::Exact(q(1, 3)));
    }

    #[test]
    fn multiplicity_interval_for_prefix() {
        // e2 = 1, bits 1: theta in [3/4, 1)
        let m = multiplicity_from_theta(&ThetaSpec::bits(1u32, vec![true]));
        assert_eq!(
            m,
            Multiplicity::Interval {
                lo: q(1, 3),
                hi: q(4, 11)
            }
        );
    }

    #[test]
    fn sequences_from_recurrence() {
        let r = |t: ThetaSpec| build_value_sequence(&t, 5).unwrap().values().to_vec();
        assert_eq!(r(ThetaSpec::integer(0)), nat(&[1, 1, 3, 7, 15, 31]));
        assert_eq!(r(ThetaSpec::integer(1)), nat(&[1, 1, 5, 11, 23, 47]));
        assert_eq!(r(ThetaSpec::Infinity), nat(&[1, 1, 5, 15, 39, 95]));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(value_sequence_closed_form(&ThetaSpec::integer(0), 4).unwrap(), 15u32.into());
        assert_eq!(value_sequence_closed_form(&ThetaSpec::Infinity, 4).unwrap(), 39u32.into());
        for t in [ThetaSpec::integer(0), ThetaSpec::Infinity, ThetaSpec::integer(7)] {
            assert_eq!(value_sequence_closed_form(&t, 0).unwrap(), BigUint::one());
        }
        // infinity: 2^i - 1 + (i-1) 2^(i-1)
        for i in 1..30usize {
            let expect = pow2(i) - 1u32 + (pow2(i - 1) * (i - 1));
            assert_eq!(value_sequence_closed_form(&ThetaSpec::Infinity, i).unwrap(), expect);
        }
    }

    #[test]
    fn build_requires_digits() {
        let t = ThetaSpec::bits(1u32, vec![true]);
        assert!(build_value_sequence(&t, 3).is_ok());
        assert!(matches!(
            build_value_sequence(&t, 4),
            Err(Error::InsufficientPrecision { .. })
        ));
        assert!(build_value_sequence(&t, 0).is_err());
    }

    #[test]
    fn invariants_hold_for_constructed_sequences() {
        let vs = build_value_sequence(&ThetaSpec::integer(0), 20).unwrap();
        assert!(check_sequence_invariants(&vs).all_passed());
        let vs = build_value_sequence(&ThetaSpec::Infinity, 20).unwrap();
        let report = check_sequence_invariants(&vs);
        assert!(report.family(InequalityFamily::Growth).passed());
        assert!(report.all_passed());
    }

    #[test]
    fn invariants_flag_hand_built_sequence() {
        let vs = ValueSequence::from_values(ThetaSpec::integer(0), nat(&[1, 1, 3, 5])).unwrap();
        let report = check_sequence_invariants(&vs);
        assert_eq!(report.family(InequalityFamily::Doubling).first_failure(), Some(2));
        assert!(!report.all_passed());
    }

    #[test]
    fn covering_sequence() {
        let vs = ValueSequence::covering(&ThetaSpec::integer(0), &BigUint::from(100u32)).unwrap();
        assert_eq!(vs.last(), &BigUint::from(127u32));
        let vs = ValueSequence::covering(&ThetaSpec::integer(0), &BigUint::from(0u32)).unwrap();
        assert_eq!(vs.max_index(), 2);
        let short = ThetaSpec::bits(0u32, vec![false]);
        assert!(ValueSequence::covering(&short, &BigUint::from(1000u32)).is_err());
    }

    #[test]
    fn parse_theta_strings() {
        assert_eq!("17/5".parse::<ThetaSpec>().unwrap(), ThetaSpec::from_ratio(17, 5).unwrap());
        assert_eq!("inf".parse::<ThetaSpec>().unwrap(), ThetaSpec::Infinity);
        assert_eq!(
            "2:0110".parse::<ThetaSpec>().unwrap(),
            ThetaSpec::bits(2u32, vec![false, true, true, false])
        );
        assert!("-1".parse::<ThetaSpec>().is_err());
        assert!("2:012".parse::<ThetaSpec>().is_err());
    }

    #[test]
    fn json_shape() {
        let vs = build_value_sequence(&ThetaSpec::from_ratio(1, 3).unwrap(), 3).unwrap();
        assert_eq!(
            vs.to_json(),
            r#"{"theta":{"kind":"rational","num":"1","den":"3"},"r":["1","1","3","8"]}"#
        );
        let bits = build_value_sequence(&ThetaSpec::bits(1u32, vec![true]), 2).unwrap();
        assert_eq!(
            bits.to_json(),
            r#"{"theta":{"kind":"bits","e2":"1","bits":[1]},"r":["1","1","4"]}"#
        );
        assert_eq!(ValueSequence::from_json(&bits.to_json()).unwrap(), bits);
    }
}
