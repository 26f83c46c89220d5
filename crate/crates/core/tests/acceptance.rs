//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p valhilbert --test acceptance`.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use valhilbert::hilbert::{
    epsilon_at, lower_envelope_check, plateau_decomposition, upper_envelope_check, verify_plateau,
    EnvelopeOutcome,
};
use valhilbert::oracle::{compare_range, RangeComparison};
use valhilbert::quasifit::refute_sweep;
use valhilbert::theta::check_sequence_invariants;
use valhilbert::{
    alpha_table, build_value_sequence, conductor, verify_certificate, AlphaEvaluator, DimensionModel,
    RefutationCertificate, RefutationOutcome, ThetaSpec, ValueSequence,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn grid() -> Vec<ThetaSpec> {
    vec![
        ThetaSpec::integer(0),
        ThetaSpec::integer(1),
        ThetaSpec::from_ratio(1, 2).unwrap(),
        ThetaSpec::from_ratio(17, 5).unwrap(),
        ThetaSpec::Infinity,
    ]
}

fn finite_grid() -> Vec<ThetaSpec> {
    grid().into_iter().filter(|t| !t.is_infinite()).collect()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn limit(theta: &ThetaSpec) -> BigRational {
    match theta {
        ThetaSpec::Rational(t) => (BigRational::from_integer(2.into()) + t).recip(),
        _ => q(0, 1),
    }
}

fn covering(theta: &ThetaSpec, n: u64) -> ValueSequence {
    ValueSequence::covering(theta, &BigUint::from(n)).expect("sequence")
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    for theta in grid() {
        match compare_range(&covering(&theta, 5000), 5000).map_err(|e| e.to_string())? {
            RangeComparison::Pass { .. } => {}
            RangeComparison::Mismatch { n, fast, brute } => {
                return Err(format!("theta={theta}: n={n} recursion {fast} vs brute force {brute}"))
            }
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(30) {
        return Err(format!("exact, but took {took:.2?} (limit 30s)"));
    }
    Ok(format!("n<=5000 on 5 thetas in {took:.2?}"))
}

fn plateau_law() -> Outcome {
    let mut points = 0u64;
    for theta in grid() {
        let vs = build_value_sequence(&theta, 21).map_err(|e| e.to_string())?;
        let eval = AlphaEvaluator::new(&vs);
        for p in plateau_decomposition(&vs).iter().filter(|p| (1..=20).contains(&p.level)) {
            if let Some(s) = verify_plateau(&eval, p).map_err(|e| e.to_string())? {
                return Err(format!("theta={theta}, level {}: alpha({s}) != {}", p.level, p.value));
            }
            points += p.len().to_u64().unwrap();
        }
    }
    Ok(format!("levels 1..20, {points} points"))
}

fn epsilon_identity() -> Outcome {
    for theta in grid() {
        let vs = build_value_sequence(&theta, 30).map_err(|e| e.to_string())?;
        let eval = AlphaEvaluator::new(&vs);
        for i in 2..=30 {
            let ratio = BigRational::new(
                BigInt::from(eval.head(i).unwrap().clone()),
                BigInt::from(vs.get(i).unwrap().clone()),
            );
            let eps = epsilon_at(&theta, i).map_err(|e| e.to_string())?.value;
            if ratio - limit(&theta) != eps {
                return Err(format!("theta={theta}, i={i}"));
            }
        }
    }
    let e2 = epsilon_at(&ThetaSpec::Infinity, 2).map_err(|e| e.to_string())?.value;
    if e2 != q(2, 5) {
        return Err(format!("theta=inf: eps_2 = {e2}, expected 2/5"));
    }
    Ok("2<=i<=30 on 5 thetas; eps_2(inf) = 2/5".into())
}

fn lower_envelope() -> Outcome {
    for theta in grid() {
        match lower_envelope_check(&covering(&theta, 100_000), 100_000).map_err(|e| e.to_string())? {
            EnvelopeOutcome::Pass { .. } => {}
            EnvelopeOutcome::Violation { n, alpha } => return Err(format!("theta={theta}: n={n}, alpha={alpha}")),
        }
    }
    Ok("n<=10^5 on 5 thetas".into())
}

fn upper_envelope() -> Outcome {
    let mut notes = Vec::new();
    for theta in grid() {
        let vs = covering(&theta, 100_000);
        for eps in [q(1, 10), q(1, 100)] {
            let report = upper_envelope_check(&vs, &eps, 100_000).map_err(|e| e.to_string())?;
            match report.outcome {
                EnvelopeOutcome::Pass { checked } => {
                    notes.push(format!("{theta}@{eps}:N={},{checked}", report.threshold_index))
                }
                EnvelopeOutcome::Violation { n, alpha } => {
                    return Err(format!("theta={theta}, eps={eps}: n={n}, alpha={alpha}"))
                }
            }
        }
    }
    Ok(notes.join(" "))
}

fn limit_convergence() -> Outcome {
    for theta in finite_grid() {
        let vs = build_value_sequence(&theta, 40).map_err(|e| e.to_string())?;
        let eval = AlphaEvaluator::new(&vs);
        for i in 2..=40 {
            let ratio = BigRational::new(
                BigInt::from(eval.head(i).unwrap().clone()),
                BigInt::from(vs.get(i).unwrap().clone()),
            );
            let tol = BigRational::new(BigInt::from(4), BigInt::one() << i);
            if (ratio - limit(&theta)).abs() >= tol {
                return Err(format!("theta={theta}, i={i}"));
            }
        }
    }
    Ok("2<=i<=40 on 4 finite thetas".into())
}

fn cumulative_limit() -> Outcome {
    let n = 100_000u64;
    let mut notes = Vec::new();
    for theta in [ThetaSpec::integer(0), ThetaSpec::integer(1)] {
        let table = alpha_table(&covering(&theta, n), n).map_err(|e| e.to_string())?;
        let normalized = BigRational::new(BigInt::from(table.cumulative(n).unwrap()) * 2, BigInt::from(n * n));
        let dist = (normalized - limit(&theta)).abs();
        if dist >= q(1, 100) {
            return Err(format!("theta={theta}: distance {dist}"));
        }
        notes.push(format!("theta={theta}: {:.2e}", dist.to_f64().unwrap()));
    }
    Ok(notes.join(", "))
}

fn refutation_sweep() -> Outcome {
    let vs = build_value_sequence(&ThetaSpec::integer(0), 8).unwrap();
    let bounds: Vec<BigRational> = (0..=10).map(|m| q(m, 1)).collect();
    let results = refute_sweep(&vs, 2, 3, &bounds).map_err(|e| e.to_string())?;
    let mut certs: Vec<RefutationCertificate> = Vec::new();
    for (c, outcome) in results {
        match outcome {
            RefutationOutcome::Refuted(cert) => {
                if !verify_certificate(&cert).map_err(|e| e.to_string())? {
                    return Err(format!("certificate for d={} s={} M={} rejected", c.degree, c.period, c.bound));
                }
                let back = RefutationCertificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
                if back != *cert {
                    return Err(format!("JSON round trip changed d={} s={} M={}", c.degree, c.period, c.bound));
                }
                certs.push(*cert);
            }
            RefutationOutcome::Inconclusive { .. } => {
                return Err(format!("no certificate for d={} s={} M={}", c.degree, c.period, c.bound))
            }
        }
    }
    let mut tampered = 0;
    for cert in &certs {
        let mut bad_alpha = cert.clone();
        bad_alpha.points[0].1 += 1u32;
        let pos = cert.witness.iter().position(|y| y.is_positive()).expect("non-zero witness");
        let mut bad_mult = cert.clone();
        bad_mult.witness[pos] = -bad_mult.witness[pos].clone();
        let mut zero_mult = cert.clone();
        zero_mult.witness[pos] = q(0, 1);
        for t in [bad_alpha, bad_mult, zero_mult] {
            if verify_certificate(&t).unwrap_or(false) {
                return Err(format!(
                    "tampered certificate accepted for d={} s={} M={}",
                    cert.candidate.degree, cert.candidate.period, cert.candidate.bound
                ));
            }
            tampered += 1;
        }
    }
    Ok(format!("{} certificates verified, {tampered} tampered rejected", certs.len()))
}

fn semigroups() -> Outcome {
    let c = conductor(&[3, 4]).map_err(|e| e.to_string())?;
    if (c.conductor, c.square_bound) != (6, 9) {
        return Err(format!("<3,4>: conductor {}, bound {}", c.conductor, c.square_bound));
    }
    let c = conductor(&[2, 3]).map_err(|e| e.to_string())?;
    if (c.conductor, c.square_bound) != (2, 4) {
        return Err(format!("<2,3>: conductor {}, bound {}", c.conductor, c.square_bound));
    }
    let mut dims = vec![1, 1];
    dims.extend(std::iter::repeat_n(2, 40));
    let model = DimensionModel::new(dims, Some(2));
    let tail = valhilbert::semigroup::eventual_linear(&model).map_err(|e| e.to_string())?;
    if (tail.c, tail.b, tail.n1) != (2, -2, 2) {
        return Err(format!("tail {}", tail.to_json()));
    }
    let cum = model.cumulative();
    for (n, &l) in cum.iter().enumerate().skip(tail.n1) {
        if tail.predict(n as u64) != l as i128 {
            return Err(format!("tail mispredicts l(R/I_{n})"));
        }
    }
    Ok(format!("conductors 6 (<=9), 2 (<=4); tail {}", tail.to_json()))
}

fn sequence_invariants() -> Outcome {
    for theta in grid() {
        let vs = build_value_sequence(&theta, 64).map_err(|e| e.to_string())?;
        let report = check_sequence_invariants(&vs);
        if let Some(f) = report.families.iter().find(|f| !f.passed()) {
            return Err(format!("theta={theta}: {} fails at i={:?}", f.family, f.first_failure()));
        }
    }
    Ok("I=64 on 5 thetas, 4 families".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("plateau law", plateau_law),
        ("epsilon identity", epsilon_identity),
        ("lower envelope", lower_envelope),
        ("upper envelope", upper_envelope),
        ("limit convergence", limit_convergence),
        ("cumulative limit", cumulative_limit),
        ("refutation sweep", refutation_sweep),
        ("semigroup", semigroups),
        ("sequence invariants", sequence_invariants),
    ];
    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}) [{took:.2?}]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({detail}) [{took:.2?}]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
