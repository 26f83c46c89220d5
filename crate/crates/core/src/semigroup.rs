//! Finite residue degree: value semigroups, dimension models of
//! `I_n / I_{n+1}`, and the eventually linear `l(R/I_n)`.

use std::io::{self, BufRead, Write};

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A numerical semigroup given by generators, with membership tabulated on
/// `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupSpec {
    generators: Vec<u64>,
    member: Vec<bool>,
}

impl SemigroupSpec {
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn bound(&self) -> u64 {
        self.member.len() as u64 - 1
    }

    /// Membership of `n`; `None` beyond the tabulated bound.
    pub fn contains(&self, n: u64) -> Option<bool> {
        self.member.get(usize::try_from(n).ok()?).copied()
    }

    pub fn members(&self) -> Vec<u64> {
        (0..self.member.len() as u64).filter(|&n| self.member[n as usize]).collect()
    }
}

/// Additive closure of `gens` up to `bound`. Zero generators are ignored.
pub fn members(gens: &[u64], bound: u64) -> SemigroupSpec {
    let mut generators: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
    generators.sort_unstable();
    generators.dedup();
    let len = bound as usize + 1;
    let mut member = vec![false; len];
    member[0] = true;
    for n in 1..len {
        member[n] = generators
            .iter()
            .any(|&g| g as usize <= n && member[n - g as usize]);
    }
    SemigroupSpec { generators, member }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConductorWitness {
    /// Least `n_0` with `[n_0, inf)` inside the semigroup.
    pub conductor: u64,
    /// `u` and `t = u + 1`, both members, `u` minimal.
    pub u: u64,
    pub t: u64,
    /// `u^2`, an upper bound for the conductor.
    pub square_bound: u64,
}

pub fn conductor(gens: &[u64]) -> Result<ConductorWitness> {
    let positive: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
    let g = positive.iter().fold(0u64, |acc, &x| acc.gcd(&x));
    if g != 1 {
        return Err(Error::NoConductor(gens.to_vec()));
    }
    let smallest = *positive.iter().min().expect("gcd 1 needs a generator");
    // a run of `smallest` consecutive members continues forever
    let mut bound = 4 * smallest;
    let sg = loop {
        let sg = members(&positive, bound);
        let m = &sg.member;
        let run_end = (0..m.len()).rev().take_while(|&n| m[n]).count();
        if run_end as u64 > smallest {
            break sg;
        }
        bound *= 2;
    };
    let conductor = sg
        .member
        .iter()
        .rposition(|&m| !m)
        .map_or(0, |gap| gap as u64 + 1);
    let u = (0..sg.bound())
        .find(|&n| sg.member[n as usize] && sg.member[n as usize + 1])
        .expect("the tail run holds consecutive members");
    Ok(ConductorWitness {
        conductor,
        u,
        t: u + 1,
        square_bound: u * u,
    })
}

/// Dimensions `dim(I_n / I_{n+1})` over a window `0..dims.len()`, with the
/// residue degree (`None` for an infinite extension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionModel {
    pub dims: Vec<u64>,
    pub residue_degree: Option<u64>,
}

impl DimensionModel {
    pub fn new(dims: Vec<u64>, residue_degree: Option<u64>) -> Self {
        DimensionModel { dims, residue_degree }
    }

    /// `l(R/I_n)` for `0 <= n <= dims.len()`.
    pub fn cumulative(&self) -> Vec<u128> {
        let mut out = Vec::with_capacity(self.dims.len() + 1);
        let mut acc = 0u128;
        out.push(0);
        for &d in &self.dims {
            acc += u128::from(d);
            out.push(acc);
        }
        out
    }

    /// Reads rows `n,dim`; `n` must run `0, 1, 2, ...`.
    pub fn read_csv<R: BufRead>(reader: R, residue_degree: Option<u64>) -> Result<Self> {
        let mut dims = Vec::new();
        for (k, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            let line = line.trim();
            if line.is_empty() || (k == 0 && line.starts_with('n')) {
                continue;
            }
            let (n, d) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected `n,dim`, got {line:?}")))?;
            let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad index {n:?}")))?;
            if n != dims.len() {
                return Err(Error::Parse(format!("expected n = {}, got {n}", dims.len())));
            }
            dims.push(d.trim().parse().map_err(|_| Error::Parse(format!("bad dimension {d:?}")))?);
        }
        Ok(DimensionModel { dims, residue_degree })
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "n,dim")?;
        for (n, d) in self.dims.iter().enumerate() {
            writeln!(w, "{n},{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ModelViolation {
    /// `dim(n + k) < dim(n)` for a semigroup element `k`.
    Persistence { n: usize, k: usize },
    /// `dim(n)` exceeds the residue degree.
    Cap { n: usize },
}

/// Checks persistence against every `k >= 1` of `semigroup` that keeps
/// `n + k` inside the window (and within the tabulated bound), and the cap
/// by the residue degree.
pub fn verify_dimension_model(model: &DimensionModel, semigroup: &SemigroupSpec) -> Vec<ModelViolation> {
    let dims = &model.dims;
    let mut out = Vec::new();
    for n in 0..dims.len() {
        for k in 1..dims.len() - n {
            if semigroup.contains(k as u64) == Some(true) && dims[n + k] < dims[n] {
                out.push(ModelViolation::Persistence { n, k });
            }
        }
    }
    if let Some(cap) = model.residue_degree {
        out.extend(
            dims.iter()
                .enumerate()
                .filter(|&(_, &d)| d > cap)
                .map(|(n, _)| ModelViolation::Cap { n }),
        );
    }
    out
}

/// `l(R/I_n) = c n + b` for `n >= n1`, certified on the model's window only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearTail {
    pub c: u64,
    pub b: i128,
    pub n1: usize,
}

impl LinearTail {
    pub fn predict(&self, n: u64) -> i128 {
        i128::from(self.c) * i128::from(n) + self.b
    }

    /// `2 (c n + b) / n^2`.
    pub fn normalized(&self, n: u64) -> BigRational {
        let n = i128::from(n);
        BigRational::new((2 * (i128::from(self.c) * n + self.b)).into(), (n * n).into())
    }

    /// Beyond this `n`, `2 (c n + b) / n^2 < eps`.
    pub fn zero_limit_threshold(&self, eps: &BigRational) -> BigRational {
        let slack = BigRational::from_integer((2 * i128::from(self.c) + self.b.abs()).into());
        slack / eps
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

pub fn eventual_linear(model: &DimensionModel) -> Result<LinearTail> {
    let target = model.residue_degree.ok_or_else(|| Error::NotStabilized {
        target: "an infinite residue degree".into(),
    })?;
    if model.dims.last() != Some(&target) {
        return Err(Error::NotStabilized {
            target: target.to_string(),
        });
    }
    let n1 = model
        .dims
        .iter()
        .rposition(|&d| d != target)
        .map_or(0, |p| p + 1);
    let head: i128 = model.dims[..n1].iter().map(|&d| i128::from(d)).sum();
    Ok(LinearTail {
        c: target,
        b: head - n1 as i128 * i128::from(target),
        n1,
    })
}
