//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use hyperclean::cleaning::{
    derive_parameters, eta_bound, run_cleaning, slack_factor, verify_potential_gain,
    CleaningTranscript, StopCase, TieBreak,
};
use hyperclean::harness::{check_structure, generate, FamilySpec, Property};
use hyperclean::independent::{
    deletion_probability, enumerate_alpha, exact_alpha, hall_ratio_exact, random_deletion,
    transfer_alpha, GreedySolver, MaxDegDelegate, TransferOptions,
};
use hyperclean::nearly_log::{classify, FailReason, ProbeConfig};
use hyperclean::numeric::{ratio_to_f64, rational_to_big};
use hyperclean::weighted::{weighted_profile, VertexWeights};
use hyperclean::{CandidateFunction, Rational, UniformHypergraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::Instant;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Random instance with skewed vertex choice, so that cleaning has work to do.
fn skewed_instance(seed: u64, max_n: usize, r: usize) -> UniformHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range((r + 3)..=max_n);
    let m = rng.random_range(0..=3 * n);
    let skew = rng.random_range(1.0..3.0);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let mut e: Vec<usize> = Vec::with_capacity(r + 1);
        while e.len() < r + 1 {
            let v = ((n as f64) * rng.random::<f64>().powf(skew)) as usize;
            if !e.contains(&v) {
                e.push(v);
            }
        }
        edges.push(e);
    }
    UniformHypergraph::new(r + 1, n, edges).unwrap()
}

const FUNCTIONS: [&str; 4] = ["log", "const:3", "logpow:2", "const:1.2"];

fn cleaning_runs() -> Vec<(UniformHypergraph, CleaningTranscript)> {
    (0..500u64)
        .map(|seed| {
            let r = 1 + (seed % 2) as usize;
            let h = skewed_instance(seed, 80, r);
            let f = CandidateFunction::parse(FUNCTIONS[(seed / 2 % 4) as usize]).unwrap();
            let probe = derive_parameters(0.5, r, None).unwrap();
            let eta = probe.eta_bound() * (0.1 + 0.8 * ((seed * 37 % 100) as f64 / 100.0));
            let p = derive_parameters(0.5, r, Some(eta)).unwrap();
            let t = run_cleaning(&h, &f, &p, TieBreak::default()).unwrap();
            (h, t)
        })
        .collect()
}

fn criterion1(runs: &[(UniformHypergraph, CleaningTranscript)]) -> Outcome {
    let mut steps = 0;
    let mut min_margin = f64::INFINITY;
    for (h, t) in runs {
        let rep = verify_potential_gain(t).map_err(|e| format!("n={}: {e}", h.num_vertices()))?;
        steps += rep.steps_checked;
        min_margin = min_margin.min(rep.min_step_margin);
    }
    Ok(format!(
        "500 runs, {steps} steps; minimum step margin {min_margin:.6}"
    ))
}

fn criterion2(runs: &[(UniformHypergraph, CleaningTranscript)]) -> Outcome {
    let mut counts = [0usize; 3];
    for (seed, (h, t)) in runs.iter().enumerate() {
        ensure(t.t <= h.num_vertices() && t.steps.len() == t.t, || {
            format!("seed {seed}: T > n")
        })?;
        let dg = &t.diagnostics;
        let mut keep = vec![true; h.num_vertices()];
        for i in 0..=t.t {
            let members: Vec<usize> = (0..h.num_vertices()).filter(|&v| keep[v]).collect();
            let prof = h.induce(&members).unwrap().graph.degree_profile().unwrap();
            let d_i = ratio_to_f64(&prof.avg_degree);
            let preds = [
                d_i < dg.s1_threshold,
                h.num_vertices() as f64 / members.len() as f64 > dg.s2_threshold,
                prof.max_degree as f64 <= (1.0 + t.params.eta) * d_i,
            ];
            let recorded = t.checks(i);
            ensure([recorded.s1, recorded.s2, recorded.s3] == preds, || {
                format!("seed {seed}: stage {i} predicates disagree with recomputation")
            })?;
            if i < t.t {
                ensure(!preds.iter().any(|&p| p), || {
                    format!("seed {seed}: stage {i} should have stopped")
                })?;
                keep[t.steps[i].vertex] = false;
            } else {
                let idx = match t.stop_case {
                    StopCase::S1 => 0,
                    StopCase::S2 => 1,
                    StopCase::S3 => 2,
                };
                ensure(preds[idx] && !preds[..idx].iter().any(|&p| p), || {
                    format!(
                        "seed {seed}: stop case {} not the first true predicate",
                        t.stop_case
                    )
                })?;
                counts[idx] += 1;
            }
        }
    }
    Ok(format!(
        "stop cases S1={} S2={} S3={}",
        counts[0], counts[1], counts[2]
    ))
}

fn complete(n: usize) -> UniformHypergraph {
    UniformHypergraph::new(
        2,
        n,
        (0..n).flat_map(|u| (u + 1..n).map(move |v| vec![u, v])),
    )
    .unwrap()
}

fn fano() -> UniformHypergraph {
    let lines = [
        [0, 1, 2],
        [0, 3, 4],
        [0, 5, 6],
        [1, 3, 5],
        [1, 4, 6],
        [2, 3, 6],
        [2, 4, 5],
    ];
    UniformHypergraph::new(3, 7, lines).unwrap()
}

fn petersen() -> UniformHypergraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(vec![i, (i + 1) % 5]);
        edges.push(vec![i, i + 5]);
        edges.push(vec![i + 5, (i + 2) % 5 + 5]);
    }
    UniformHypergraph::new(2, 10, edges).unwrap()
}

fn criterion3() -> Outcome {
    let trials = 100_000u64;
    let mut parts = Vec::new();
    for (name, h) in [("K5", complete(5)), ("K10", complete(10)), ("Fano", fano())] {
        let r = h.rank() as f64;
        let p = deletion_probability(&h);
        let target = r / (r + 1.0) * p * h.num_vertices() as f64;
        let (mut sum, mut sq) = (0.0, 0.0);
        for seed in 0..trials {
            let c = random_deletion(&h, seed);
            ensure(c.verified && c.recheck(&h), || {
                format!("{name}: seed {seed} not independent")
            })?;
            let x = c.size as f64;
            sum += x;
            sq += x * x;
        }
        let mean = sum / trials as f64;
        let var = (sq / trials as f64 - mean * mean) * trials as f64 / (trials - 1) as f64;
        let se = (var / trials as f64).sqrt();
        ensure(mean >= target - 3.0 * se, || {
            format!("{name}: mean {mean} < {target} - 3·{se}")
        })?;
        parts.push(format!("{name} mean {mean:.4} ≥ {target:.4}"));
    }
    ensure((r_over(&complete(5)) - 0.625).abs() < 1e-12, || {
        "K5 analytic mean is not 0.625".into()
    })?;
    Ok(parts.join("; "))
}

fn r_over(h: &UniformHypergraph) -> f64 {
    let r = h.rank() as f64;
    r / (r + 1.0) * deletion_probability(h) * h.num_vertices() as f64
}

fn criterion4() -> Outcome {
    for r in 1..=3usize {
        for i in 0..100u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * r as u64 + i);
            let n = rng.random_range((r + 1)..=14);
            let m = rng.random_range(0..=3 * n);
            let edges: Vec<Vec<usize>> = (0..m)
                .map(|_| rand::seq::index::sample(&mut rng, n, r + 1).into_vec())
                .collect();
            let h = UniformHypergraph::new(r + 1, n, edges).unwrap();
            let bb = exact_alpha(&h).unwrap();
            let en = enumerate_alpha(&h).unwrap();
            ensure(bb.size == en.size && bb.verified && en.verified, || {
                format!(
                    "r={r} instance {i}: branch and bound {} vs enumeration {}",
                    bb.size, en.size
                )
            })?;
        }
    }
    let from = |h: &UniformHypergraph| exact_alpha(h).unwrap().size;
    let c5 = UniformHypergraph::new(2, 5, (0..5).map(|v| vec![v, (v + 1) % 5])).unwrap();
    let got = (from(&c5), from(&petersen()), from(&fano()));
    ensure(got == (2, 4, 4), || format!("fixtures gave {got:?}"))?;
    Ok("300 random instances agree; C5=2, Petersen=4, Fano=4".into())
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let eps0 = rng.random_range(0.001..0.999);
        let r = rng.random_range(1..=8usize);
        let base = derive_parameters(eps0, r, None).unwrap();
        let eta = rng.random_range(0.001..0.999) * eta_bound(base.eps, 2.0, r);
        let p = derive_parameters(eps0, r, Some(eta)).map_err(|e| format!("draw {i}: {e}"))?;
        let (x, y) = p.identity_residuals();
        worst = worst.max(x).max(y);
        ensure(x < 1e-12 && y < 1e-12, || {
            format!("draw {i}: residuals {x:e}, {y:e}")
        })?;
        ensure(slack_factor(p.eps, r) >= 1.0 - eps0, || {
            format!("draw {i}: slack inequality fails")
        })?;
    }
    Ok(format!("1000 draws, worst relative residual {worst:.2e}"))
}

fn criterion6() -> Outcome {
    let cfg = ProbeConfig::default();
    let pass = ["log", "logpow:2", "logoverloglog", "loglog", "exploga:0.3"];
    let fail = ["exploga:0.5", "pow:0.1", "const:1.5"];
    for spec in pass {
        let rep = classify(&CandidateFunction::parse(spec).unwrap(), &cfg);
        ensure(rep.verdict.is_pass(), || {
            format!("{spec}: expected pass, got {:?}", rep.verdict)
        })?;
    }
    for spec in fail {
        let rep = classify(&CandidateFunction::parse(spec).unwrap(), &cfg);
        ensure(rep.verdict.fail_reason().is_some(), || {
            format!("{spec}: expected fail, got {:?}", rep.verdict)
        })?;
    }
    let rep = classify(&CandidateFunction::parse("exploga:0.5").unwrap(), &cfg);
    ensure(
        rep.verdict.fail_reason() == Some(FailReason::GrowthIndex),
        || format!("exploga:0.5 failed for {:?}", rep.verdict),
    )?;
    let a = rep.index_trend.final_value.unwrap_or(f64::NAN);
    ensure((a - 0.5).abs() < 1e-6, || {
        format!("growth index {a} is not 0.5")
    })?;
    Ok("5 pass, 3 fail; exp((log)^0.5) fails on growth index 0.5".into())
}

fn criterion7() -> Outcome {
    let k3 = complete(3);
    let c5 = UniformHypergraph::new(2, 5, (0..5).map(|v| vec![v, (v + 1) % 5])).unwrap();
    let empty = UniformHypergraph::empty(2, 8).unwrap();
    let got = (
        hall_ratio_exact(&k3).unwrap(),
        hall_ratio_exact(&c5).unwrap(),
        hall_ratio_exact(&empty).unwrap(),
    );
    let want = (
        Rational::from_integer(3),
        Rational::new(5, 2),
        Rational::from_integer(1),
    );
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("rho(K3)=3, rho(C5)=5/2, rho(edgeless)=1".into())
}

fn criterion8() -> Outcome {
    let f = CandidateFunction::parse("log").unwrap();
    let params = derive_parameters(0.5, 2, None).unwrap();
    let opts = TransferOptions::default();
    let mut cases = [0usize; 3];
    for i in 0..50u64 {
        let spec = FamilySpec {
            family: "girth4-uniform".into(),
            n: 200 + 36 * i as usize,
            target_d: 2.0 + (i % 4) as f64,
            r: 2,
            seed: i,
        };
        let h = generate(&spec).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(check_structure(&h, Property::Girth4).unwrap(), || {
            format!("instance {i} is not girth 4")
        })?;
        let rep =
            transfer_alpha(&h, &f, &params, &GreedySolver, &opts).map_err(|e| e.to_string())?;
        ensure(
            rep.certificate.verified && rep.certificate.recheck(&h),
            || format!("instance {i}: set is not independent in H"),
        )?;
        let t = &rep.transcript;
        let inner = h.induce(&t.retained).unwrap();
        match t.stop_case {
            StopCase::S1 | StopCase::S2 => {
                let crude = hyperclean::cleaning::crude_bound(
                    2,
                    t.final_state.n,
                    ratio_to_f64(&t.final_state.d),
                );
                ensure(rep.certificate.size as f64 >= crude, || {
                    format!(
                        "instance {i}: size {} below crude bound {crude}",
                        rep.certificate.size
                    )
                })?;
            }
            StopCase::S3 => {
                let direct = GreedySolver.solve(&inner.graph).unwrap().size;
                ensure(rep.certificate.size == direct, || {
                    format!(
                        "instance {i}: size {} differs from delegate {direct}",
                        rep.certificate.size
                    )
                })?;
            }
        }
        cases[t.stop_case as usize] += 1;
        let again = transfer_alpha(&h, &f, &params, &GreedySolver, &opts).unwrap();
        let (a, b) = (
            serde_json::to_string(&rep).unwrap(),
            serde_json::to_string(&again).unwrap(),
        );
        ensure(a == b, || {
            format!("instance {i}: reports differ between runs")
        })?;
        ensure(generate(&spec).unwrap() == h, || {
            format!("instance {i}: generator not deterministic")
        })?;
    }
    Ok(format!(
        "50 instances; S1={} S2={} S3={}",
        cases[0], cases[1], cases[2]
    ))
}

fn criterion9() -> Outcome {
    for seed in 0..200u64 {
        let r = 1 + (seed % 3) as usize;
        let h = skewed_instance(10_000 + seed, 40, r);
        let p = h.degree_profile().unwrap();
        let w = weighted_profile(&h, &VertexWeights::unit(h.num_vertices())).unwrap();
        let degs: Vec<BigRational> = p
            .degrees
            .iter()
            .map(|&d| BigRational::from_integer(BigInt::from(d)))
            .collect();
        ensure(w.lambda == degs, || {
            format!("seed {seed}: lambda differs from degrees")
        })?;
        ensure(w.d_w == rational_to_big(&p.avg_degree), || {
            format!("seed {seed}: d_w differs")
        })?;
        ensure(
            w.delta_w == BigRational::from_integer(BigInt::from(p.max_degree)),
            || format!("seed {seed}: Delta_w differs"),
        )?;
        ensure(
            w.mu_total == BigRational::from_integer(BigInt::from(h.num_vertices())),
            || format!("seed {seed}: mu differs from n"),
        )?;
    }
    Ok("200 instances reproduce the degree profile exactly".into())
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let start = Instant::now();
    let runs = cleaning_runs();
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "1 potential gain along cleaning",
            Box::new(|| criterion1(&runs)),
        ),
        (
            "2 trichotomy and termination",
            Box::new(|| criterion2(&runs)),
        ),
        ("3 randomized deletion expectation", Box::new(criterion3)),
        ("4 exact solver equivalence", Box::new(criterion4)),
        ("5 parameter identities", Box::new(criterion5)),
        ("6 nearly-log fixture table", Box::new(criterion6)),
        ("7 Hall ratio", Box::new(criterion7)),
        ("8 end-to-end transfer", Box::new(criterion8)),
        ("9 unit-weight reduction", Box::new(criterion9)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let t0 = Instant::now();
        match check() {
            Ok(detail) => println!(
                "PASS criterion {name}: {detail} [{:.2}s]",
                t0.elapsed().as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
