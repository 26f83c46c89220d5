//! Brute-force ground truth for `alpha`.
//!
//! A basis of `I_n / I_{n+1}` is indexed by exponent tuples
//! `(n_0; n_1, ..., n_i)` with `n_j in {0, 1}` for `j >= 1` and
//! `n_0 + sum n_j r_j = n`. The slack `n_0` is forced once the flags are
//! chosen, so (derived, not a quoted statement) `alpha(n)` is the number of
//! index sets `T` of `{1, ..., i}` with `sum_{j in T} r_j <= n`. Nothing in
//! this module uses the recursion of [`crate::hilbert`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::theta::ValueSequence;
use crate::{Error, Result};

/// `(n_0; n_1, ..., n_i)`. Equality ignores trailing zero flags.
#[derive(Clone, Debug, Eq)]
pub struct ExponentTuple {
    pub n0: BigUint,
    pub flags: Vec<bool>,
}

impl ExponentTuple {
    pub fn new(n0: impl Into<BigUint>, flags: Vec<bool>) -> Self {
        ExponentTuple { n0: n0.into(), flags }
    }

    fn trimmed(&self) -> &[bool] {
        let end = self.flags.iter().rposition(|&f| f).map_or(0, |p| p + 1);
        &self.flags[..end]
    }

    /// `n_0 + sum_j n_j r_j`; `None` if a set flag has no stored `r_j`.
    pub fn value(&self, vs: &ValueSequence) -> Option<BigUint> {
        let mut v = self.n0.clone();
        for (j, &f) in self.flags.iter().enumerate() {
            if f {
                v += vs.get(j + 1)?;
            }
        }
        Some(v)
    }

    /// Flags as a bit string, `n_1` first.
    pub fn flag_string(&self) -> String {
        self.flags.iter().map(|&f| if f { '1' } else { '0' }).collect()
    }
}

impl PartialEq for ExponentTuple {
    fn eq(&self, other: &Self) -> bool {
        self.n0 == other.n0 && self.trimmed() == other.trimmed()
    }
}

impl Hash for ExponentTuple {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n0.hash(state);
        self.trimmed().hash(state);
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.n0)?;
        let flags: Vec<&str> = self.trimmed().iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "{})", flags.join(","))
    }
}

fn check_range(vs: &ValueSequence, n: &BigUint) -> Result<()> {
    if n >= vs.last() {
        return Err(Error::SequenceTooShort {
            n: n.to_string(),
            max_index: vs.max_index(),
            last: vs.last().to_string(),
        });
    }
    Ok(())
}

/// Number of flag positions for `n`: the count of `j >= 1` with `r_j <= n`.
fn flag_count(vs: &ValueSequence, n: &BigUint) -> usize {
    vs.values().iter().skip(1).take_while(|r| *r <= n).count()
}

/// All basis tuples of `I_n / I_{n+1}`, ordered by the flag vector read as
/// a binary number with `n_1` least significant.
pub fn enumerate_basis(vs: &ValueSequence, n: &BigUint) -> Result<Vec<ExponentTuple>> {
    check_range(vs, n)?;
    let width = flag_count(vs, n);
    let r = &vs.values()[1..=width];
    let mut out: Vec<(Vec<bool>, BigUint)> = Vec::new();
    let mut flags = vec![false; width];
    collect(r, 0, n.clone(), &mut flags, &mut out);
    out.sort_by(|a, b| a.0.iter().rev().cmp(b.0.iter().rev()));
    Ok(out
        .into_iter()
        .map(|(flags, n0)| ExponentTuple { n0, flags })
        .collect())
}

fn collect(r: &[BigUint], j: usize, slack: BigUint, flags: &mut Vec<bool>, out: &mut Vec<(Vec<bool>, BigUint)>) {
    if j == r.len() {
        out.push((flags.clone(), slack));
        return;
    }
    flags[j] = false;
    collect(r, j + 1, slack.clone(), flags, out);
    if r[j] <= slack {
        flags[j] = true;
        collect(r, j + 1, slack - &r[j], flags, out);
        flags[j] = false;
    }
}

/// `|enumerate_basis(vs, n)|`, counted without materializing the tuples.
pub fn alpha_bruteforce(vs: &ValueSequence, n: u64) -> Result<u64> {
    let big = BigUint::from(n);
    check_range(vs, &big)?;
    let r: Vec<u64> = vs.values()[1..]
        .iter()
        .map_while(|x| x.to_u64())
        .take_while(|&x| x <= n)
        .collect();
    Ok(count_subsets(&r, n))
}

fn count_subsets(r: &[u64], slack: u64) -> u64 {
    match r.split_first() {
        None => 1,
        Some((&first, rest)) => {
            let without = count_subsets(rest, slack);
            if first <= slack {
                without + count_subsets(rest, slack - first)
            } else {
                without
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RangeComparison {
    Pass { checked: u64 },
    Mismatch { n: u64, fast: u64, brute: u64 },
}

impl RangeComparison {
    pub fn passed(&self) -> bool {
        matches!(self, RangeComparison::Pass { .. })
    }
}

/// Compares [`alpha_bruteforce`] with the recursive point evaluator on
/// `0..=n_max`.
pub fn compare_range(vs: &ValueSequence, n_max: u64) -> Result<RangeComparison> {
    check_range(vs, &BigUint::from(n_max))?;
    let eval = crate::hilbert::AlphaEvaluator::new(vs);
    for n in 0..=n_max {
        let fast = eval.alpha_u64(n)?;
        let brute = alpha_bruteforce(vs, n)?;
        if fast != brute {
            return Ok(RangeComparison::Mismatch { n, fast, brute });
        }
    }
    Ok(RangeComparison::Pass { checked: n_max + 1 })
}

/// Block index of `n >= 1`: the largest `i` with `r_i <= n`.
fn block_index(vs: &ValueSequence, n: &BigUint) -> usize {
    vs.values().partition_point(|ri| ri <= n) - 1
}

/// The map `(n_0; n_1..n_{i-1}, 0) -> (n_0 - n + r_i - 1; n_1..n_{i-1})`
/// from tuples of `n` with `n_i = 0` onto the basis of `r_i - 1`, where
/// `i` is the block index of `n`. `None` if `t` is outside the domain.
pub fn lambda_map(vs: &ValueSequence, n: &BigUint, t: &ExponentTuple) -> Option<ExponentTuple> {
    if n.is_zero() {
        return None;
    }
    let i = block_index(vs, n);
    if t.flags.get(i - 1).copied().unwrap_or(false) || t.value(vs)? != *n {
        return None;
    }
    let ri = vs.get(i)?;
    // n_0 > n - r_i, so the shifted slack is non-negative
    let shifted = &t.n0 + ri - 1u32;
    if shifted < *n {
        return None;
    }
    let n0 = shifted - n;
    let mut flags = t.flags.clone();
    flags.truncate(i - 1);
    Some(ExponentTuple { n0, flags })
}

/// The map `(n_0; n_1..n_{i-1}, 1) -> (n_0; n_1..n_{i-1})` from tuples of
/// `n` with `n_i = 1` into the basis of `n - r_i`.
pub fn mu_map(vs: &ValueSequence, n: &BigUint, t: &ExponentTuple) -> Option<ExponentTuple> {
    if n.is_zero() {
        return None;
    }
    let i = block_index(vs, n);
    if !t.flags.get(i - 1).copied().unwrap_or(false) || t.value(vs)? != *n {
        return None;
    }
    let mut flags = t.flags.clone();
    flags.truncate(i - 1);
    Some(ExponentTuple { n0: t.n0.clone(), flags })
}

/// Rows `n,n0,flags` with flags as a bit string, `n_1` first.
pub fn write_basis_csv<W: Write>(n: &BigUint, tuples: &[ExponentTuple], mut w: W) -> io::Result<()> {
    writeln!(w, "n,n0,flags")?;
    for t in tuples {
        writeln!(w, "{n},{},{}", t.n0, t.flag_string())?;
    }
    Ok(())
}
