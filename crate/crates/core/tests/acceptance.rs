//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.

use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF, StudentsT};

use clustcmp::combinatorics::{bell_ratio, bell_ratio_approx};
use clustcmp::compare::{compare, CompareOptions};
use clustcmp::mutual_info::{entropy_bound, expected_mi, expected_mi_num, mutual_information, MiModelSpec};
use clustcmp::oracle::{enumerate_all, enumerate_fixed_k, exact_expectation, OracleMeasure};
use clustcmp::rand_index::{expected_rand, expected_rand_num, RandModelSpec};
use clustcmp::random_models::{
    monte_carlo_expectation, pa_randomize, sample_all, sample_num, stream_rng, Ensemble, Measure,
};
use clustcmp::verify::{verify_formula, Formula, VerifyOptions};
use clustcmp::{Clustering, Evaluation, MiNormalizer, Model, ReferenceSide};

const SEED: u64 = 20_261_016;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn random_clustering<R: Rng>(n: usize, max_k: usize, rng: &mut R) -> Clustering {
    let k = rng.random_range(1..=max_k);
    let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    Clustering::from_labels(&labels).unwrap()
}

fn formula_group(formulas: &[Formula], limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut passed = true;
    for &f in formulas {
        let check = verify_formula(
            f,
            &VerifyOptions {
                max_n: f.cap(),
                corrupt: None,
            },
        )
        .unwrap();
        passed &= check.passed;
        details.push(format!(
            "{} N<={} err={:.1e}{}",
            f.name(),
            check.max_n,
            check.max_relative_error,
            match check.exact_match {
                Some(true) => " exact",
                Some(false) => " NOT-EXACT",
                None => "",
            }
        ));
    }
    let elapsed = start.elapsed();
    passed &= elapsed < limit;
    outcome(passed, format!("{}; {:.1}s", details.join(", "), elapsed.as_secs_f64()))
}

fn c1_rand_oracle() -> Outcome {
    formula_group(
        &[
            Formula::RandNum,
            Formula::RandAll,
            Formula::RandPerm,
            Formula::RandNumOneSided,
            Formula::RandAllOneSided,
        ],
        Duration::from_secs(120),
    )
}

fn c2_mi_oracle() -> Outcome {
    formula_group(
        &[
            Formula::MiPerm,
            Formula::EntropyNum,
            Formula::JointEntropyNum,
            Formula::MiNum,
            Formula::EntropyAll,
            Formula::JointEntropyAll,
            Formula::MiAll,
            Formula::MiNumOneSided,
            Formula::MiAllOneSided,
        ],
        Duration::from_secs(300),
    )
}

fn c3_spot_values() -> Outcome {
    let num = exact_expectation(OracleMeasure::Rand, &Ensemble::Num { n: 4, k_a: 2, k_b: 2 }).unwrap();
    let all = exact_expectation(OracleMeasure::Rand, &Ensemble::All { n: 4 }).unwrap();
    let halves = Clustering::from_sizes(&[2, 2]).unwrap();
    let mi = exact_expectation(
        OracleMeasure::Mi,
        &Ensemble::Perm {
            a: halves.clone(),
            b: halves,
        },
    )
    .unwrap();
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let closed_num = expected_rand_num(2, 2, 4, Evaluation::Exact).unwrap();
    let closed_all = clustcmp::rand_index::expected_rand_all(4, Evaluation::Exact).unwrap();
    let closed_mi = clustcmp::mutual_info::expected_mi_perm(&[2, 2], &[2, 2], 4).unwrap();
    let target_mi = std::f64::consts::LN_2 / 3.0;
    let passed = num.as_rational() == Some(&r(25, 49))
        && all.as_rational() == Some(&r(5, 9))
        && (mi.to_f64() - target_mi).abs() <= 1e-15
        && (closed_num - 25.0 / 49.0).abs() <= 1e-15
        && (closed_all - 5.0 / 9.0).abs() <= 1e-15
        && (closed_mi - target_mi).abs() <= 1e-15;
    outcome(passed, format!("E_num[RI]={num} E_all[RI]={all} E_perm[MI]={mi}"))
}

fn c4_asymptotics() -> Outcome {
    let mut worst_num: f64 = 0.0;
    for ka in 1..=10 {
        for kb in 1..=10 {
            let exact = expected_rand_num(ka, kb, 100, Evaluation::Exact).unwrap();
            let approx = expected_rand_num(ka, kb, 100, Evaluation::Approx).unwrap();
            worst_num = worst_num.max((exact - approx).abs());
        }
    }
    let grid = [50usize, 100, 200, 500, 1000, 2000, 5000, 10000, 20000];
    let gaps: Vec<f64> = grid
        .iter()
        .map(|&n| {
            let exact = bell_ratio(n).unwrap();
            ((exact - bell_ratio_approx(n)) / exact).abs()
        })
        .collect();
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let worst_bell = gaps.iter().cloned().fold(0.0, f64::max);
    let bell_ok = worst_bell <= 0.2;
    let text: Vec<String> = grid.iter().zip(&gaps).map(|(n, g)| format!("{n}:{g:.3}")).collect();
    outcome(
        worst_num < 1e-3 && bell_ok && decreasing,
        format!(
            "num max|exact-approx|={worst_num:.2e} (<1e-3 {}); bell rel gap {} (<=0.2 {}, decreasing {})",
            worst_num < 1e-3,
            text.join(" "),
            bell_ok,
            decreasing
        ),
    )
}

fn c5_bound_chain() -> Outcome {
    let mut rng = stream_rng(SEED, 5);
    let mut violations = 0;
    let pairs = 2000;
    for _ in 0..pairs {
        let n = rng.random_range(2..=60);
        let a = random_clustering(n, 12, &mut rng);
        let b = random_clustering(n, 12, &mut rng);
        let mi = mutual_information(&a, &b).unwrap();
        let mut chain = vec![mi];
        chain.extend(MiNormalizer::ALL.iter().map(|&m| entropy_bound(m, &a, &b)));
        violations += chain.windows(2).filter(|w| w[0] > w[1] + 1e-12).count();
    }
    outcome(violations == 0, format!("{pairs} pairs, {violations} violations"))
}

fn order_by(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    idx
}

fn c6_all_model_ranking() -> Outcome {
    let mut rng = stream_rng(SEED, 6);
    let mut mismatches = 0;
    for _ in 0..100 {
        let n = rng.random_range(10..=80);
        let set: Vec<Clustering> = (0..5).map(|_| random_clustering(n, 10, &mut rng)).collect();
        for options in [
            CompareOptions::rand(Model::All),
            CompareOptions::mi(Model::All, MiNormalizer::Max),
        ] {
            let mut raw = Vec::new();
            let mut adjusted = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    let r = compare(&set[i], &set[j], &options).unwrap();
                    raw.push(r.raw);
                    adjusted.push(r.adjusted);
                }
            }
            if order_by(&raw) != order_by(&adjusted) {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("100 sets x 2 measures, {mismatches} mismatches"),
    )
}

fn c7_perm_sidedness() -> Outcome {
    let fixtures = [
        (vec![0, 0, 1, 1], vec![0, 1, 0, 1]),
        (vec![0, 0, 0, 1, 1, 2], vec![0, 1, 2, 3, 4, 5]),
        (vec![0; 7], vec![0, 1, 1, 2, 2, 2, 3]),
        ((0..40).map(|i| i % 3).collect(), (0..40).map(|i| i / 9).collect()),
        (
            (0..100).map(|i| i / 30).collect(),
            (0..100).map(|i| (i * 7) % 11).collect(),
        ),
    ];
    let mut worst: f64 = 0.0;
    for (la, lb) in &fixtures {
        let a = Clustering::from_labels(la).unwrap();
        let b = Clustering::from_labels(lb).unwrap();
        let two_r = expected_rand(&a, &b, &RandModelSpec::two_sided(Model::Perm)).unwrap();
        let two_m = expected_mi(&a, &b, &MiModelSpec::two_sided(Model::Perm, MiNormalizer::Max)).unwrap();
        for side in [ReferenceSide::A, ReferenceSide::B] {
            let one_r = expected_rand(&a, &b, &RandModelSpec::one_sided(Model::Perm, side)).unwrap();
            let one_m = expected_mi(&a, &b, &MiModelSpec::one_sided(Model::Perm, MiNormalizer::Max, side)).unwrap();
            worst = worst.max((one_r - two_r).abs()).max((one_m - two_m).abs());
        }
    }
    outcome(
        worst <= 1e-12,
        format!("{} fixtures, max diff {worst:.1e}", fixtures.len()),
    )
}

fn chi_square_p(observed: &[u64], draws: u64) -> f64 {
    let expected = draws as f64 / observed.len() as f64;
    let stat: f64 = observed.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let dist = ChiSquared::new((observed.len() - 1) as f64).unwrap();
    1.0 - dist.cdf(stat)
}

fn index_of(all: &[Vec<usize>], c: &Clustering) -> usize {
    all.iter()
        .position(|s| s.as_slice() == c.membership())
        .expect("sample is a partition")
}

fn c8_samplers() -> Outcome {
    let mut notes = Vec::new();
    let mut passed = true;

    let support: Vec<Vec<usize>> = enumerate_all(5).unwrap().map(|s| s.codes().to_vec()).collect();
    let mut counts = vec![0u64; support.len()];
    let mut rng = stream_rng(SEED, 80);
    let draws = 52_000;
    for _ in 0..draws {
        counts[index_of(&support, &sample_all(5, &mut rng).unwrap())] += 1;
    }
    let p_all = chi_square_p(&counts, draws);
    passed &= p_all > 1e-3;
    notes.push(format!("all N=5 ({} cells) p={p_all:.3}", support.len()));

    let support: Vec<Vec<usize>> = enumerate_fixed_k(4, 2).unwrap().map(|s| s.codes().to_vec()).collect();
    let mut counts = vec![0u64; support.len()];
    let mut rng = stream_rng(SEED, 81);
    let draws = 7_000;
    for _ in 0..draws {
        counts[index_of(&support, &sample_num(4, 2, &mut rng).unwrap())] += 1;
    }
    let p_num = chi_square_p(&counts, draws);
    passed &= p_num > 1e-3;
    notes.push(format!("num N=4 K=2 ({} cells) p={p_num:.3}", support.len()));

    let reference = Clustering::from_sizes(&[40, 25, 15, 10, 5, 3, 2]).unwrap();
    let other = Clustering::from_sizes(&[50, 30, 20]).unwrap();
    let ensembles = [
        (
            "perm",
            Ensemble::Perm {
                a: reference.clone(),
                b: other.clone(),
            },
        ),
        (
            "perm1",
            Ensemble::PermOneSided {
                template: other,
                reference: reference.clone(),
            },
        ),
        ("num", Ensemble::Num { n: 100, k_a: 5, k_b: 8 }),
        (
            "num1",
            Ensemble::NumOneSided {
                k_a: 5,
                reference: reference.clone(),
            },
        ),
        ("all", Ensemble::All { n: 100 }),
        ("all1", Ensemble::AllOneSided { reference }),
    ];
    let mut worst_z: f64 = 0.0;
    for (i, (name, ensemble)) in ensembles.iter().enumerate() {
        for (j, measure) in [Measure::Rand, Measure::Mi].into_iter().enumerate() {
            let mut rng = stream_rng(SEED, 100 + 2 * i as u64 + j as u64);
            let est = monte_carlo_expectation(measure, ensemble, 10_000, &mut rng).unwrap();
            let z = (est.mean - ensemble.closed_form(measure).unwrap()) / est.std_error;
            if z.abs() > 3.0 {
                passed = false;
                notes.push(format!("{name}/{measure:?} z={z:.2}"));
            }
            worst_z = worst_z.max(z.abs());
        }
    }
    notes.push(format!("Monte Carlo N=100, 12 expectations, max |z|={worst_z:.2}"));
    outcome(passed, notes.join("; "))
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        let average = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = average;
        }
        i = j + 1;
    }
    out
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

fn c9_pref_attach() -> Outcome {
    let start_time = Instant::now();
    let start = Clustering::from_sizes(&[20; 10]).unwrap();
    let mut rng = stream_rng(SEED, 9);
    let trajectory = pa_randomize(&start, 100_000, &mut rng, 1).unwrap();
    let mut tail: Vec<_> = trajectory.into_iter().filter(|p| p.step > 10_000).collect();

    let mean_perm = tail.iter().map(|p| p.ari_perm).sum::<f64>() / tail.len() as f64;
    let entropy: Vec<f64> = tail.iter().map(|p| p.size_entropy_bits).collect();
    let ari_num: Vec<f64> = tail.iter().map(|p| p.ari_num).collect();
    let rho = pearson(&ranks(&entropy), &ranks(&ari_num));
    let df = tail.len() as f64 - 2.0;
    let t = rho * (df / (1.0 - rho * rho)).sqrt();
    let p_value = 1.0 - StudentsT::new(0.0, 1.0, df).unwrap().cdf(t);

    tail.sort_by(|a, b| a.size_entropy_bits.total_cmp(&b.size_entropy_bits));
    let per = tail.len() / 10;
    let decile_means = |f: fn(&clustcmp::random_models::PaTrajectoryPoint) -> f64| -> Vec<f64> {
        (0..10)
            .map(|d| {
                let chunk = &tail[d * per..if d == 9 { tail.len() } else { (d + 1) * per }];
                chunk.iter().map(f).sum::<f64>() / chunk.len() as f64
            })
            .collect()
    };
    let range = |v: Vec<f64>| v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
    let range_num = range(decile_means(|p| p.ari_num));
    let range_perm = range(decile_means(|p| p.ari_perm));
    let elapsed = start_time.elapsed();
    let passed = mean_perm.abs() < 0.05
        && range_num > 5.0 * range_perm
        && rho > 0.0
        && p_value < 0.01
        && elapsed < Duration::from_secs(60);
    outcome(
        passed,
        format!(
            "mean ARI_perm={mean_perm:.4}; decile range num={range_num:.3} perm={range_perm:.4}; \
             spearman={rho:.3} p={p_value:.1e}; {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn c10_performance() -> Outcome {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let many = rayon::ThreadPoolBuilder::new().num_threads(8).build().unwrap();
    let mut slowest = Duration::ZERO;
    let mut identical = true;
    for (ka, kb) in [(20, 20), (10, 20), (5, 5), (2, 17)] {
        let start = Instant::now();
        let single = one.install(|| expected_mi_num(ka, kb, 300)).unwrap();
        slowest = slowest.max(start.elapsed());
        let parallel = many.install(|| expected_mi_num(ka, kb, 300)).unwrap();
        identical &= single.to_bits() == parallel.to_bits();
    }
    outcome(
        slowest < Duration::from_secs(60) && identical,
        format!(
            "slowest single-threaded N=300 call {:.2}s; 1 vs 8 threads bit-identical: {identical}",
            slowest.as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 oracle equivalence, Rand", c1_rand_oracle),
        ("2 oracle equivalence, MI", c2_mi_oracle),
        ("3 spot values", c3_spot_values),
        ("4 asymptotics", c4_asymptotics),
        ("5 NMI bound chain", c5_bound_chain),
        ("6 all-model ranking invariance", c6_all_model_ranking),
        ("7 perm one/two-sided equivalence", c7_perm_sidedness),
        ("8 sampler uniformity", c8_samplers),
        ("9 preferential attachment", c9_pref_attach),
        ("10 performance and determinism", c10_performance),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let o = check();
        if !o.passed {
            failures += 1;
        }
        println!(
            "{} criterion {name}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
