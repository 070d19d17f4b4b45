//! Acceptance suite: eight criteria, one PASS/FAIL line each. Measured values
//! go to `acceptance_manifest.json` under the cargo target tmpdir.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use meanchaos::construct::{
    delta_example, example_point, example_stage, stage_stats, DeltaExampleParams, ExampleSource, StageStats,
};
use meanchaos::measure::{delta_fixpoint_diagnostic, diagonal_mass, empirical};
use meanchaos::metric::{cesaro, disagreement_density, CesaroSeries, RationalInterval};
use meanchaos::pairclass::{classify, ClassifyParams, PairVerdict, Verdict};
use meanchaos::rational::{rat, Rational};
use meanchaos::symseq::{periodic_point, Symbol, SymbolicPoint, Word, DEFAULT_PREFIX_BUDGET};
use meanchaos::witness::{build_scrambled_candidates, find_sensitivity_witness, SensitivityParams};

// Pinned tolerances and limits.
const C1_PAIRS: usize = 200;
const C1_MAX_N: usize = 512;
const C1_MAX_W: usize = 32;
const C1_RUNTIME: Duration = Duration::from_secs(10);
const C2_MAX_STAGE: u32 = 6;
const C2_RUNTIME: Duration = Duration::from_secs(30);
const C4_WINDOW: usize = 64;
const C4_BOUND: (u128, u128) = (1, 8);
const C4_SCAN: usize = 100_000;
const C5_MAX_DEPTH: usize = 14;
const C5_HORIZON: usize = 100_000;
const C5_TARGET: (u128, u128) = (1, 2);
const C6_RANDOM_PAIRS: usize = 100;
const C6_HORIZON: usize = 2_000;
const C7_HORIZON: usize = 100_000;
const C7_GRID: [usize; 3] = [1_000, 10_000, 100_000];
const C7_FIXPOINT_MAX: (u128, u128) = (3, 100);
const C7_DIAGONAL_MIN: (u128, u128) = (95, 100);
const C7_RUNTIME: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    summary: String,
    measured: Value,
}

fn fixed(s: u8) -> SymbolicPoint {
    SymbolicPoint::fixed(Symbol(s), 2).unwrap()
}

fn bits(codes: Vec<u8>, label: &str) -> SymbolicPoint {
    SymbolicPoint::finite(Word::from_codes(&codes).into_symbols(), 2, label).unwrap()
}

fn ratio(p: (u128, u128)) -> Rational {
    rat(p.0, p.1)
}

/// Per-index intervals straight from the definition, summed independently.
fn naive_series(a: &[u8], b: &[u8], n: usize, w: usize) -> Vec<RationalInterval> {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        match (0..w).find(|&m| a[i + m] != b[i + m]) {
            Some(m) => {
                lo += rat(1, m as u128 + 1);
                hi += rat(1, m as u128 + 1);
            }
            None => hi += rat(1, w as u128 + 1),
        }
        let k = Rational::from_integer(BigInt::from(i + 1));
        out.push(RationalInterval::new(&lo / &k, &hi / &k).unwrap());
    }
    out
}

fn random_pair(rng: &mut ChaCha8Rng, len: usize) -> (Vec<u8>, Vec<u8>) {
    let a: Vec<u8> = (0..len).map(|_| rng.gen_range(0..2)).collect();
    let flip = [0.0, 0.005, 0.05, 0.3, 1.0][rng.gen_range(0..5)];
    let cut = rng.gen_range(0..=len);
    let b = a
        .iter()
        .enumerate()
        .map(|(i, &s)| if i < cut && rng.gen_bool(flip) { 1 - s } else { s })
        .collect();
    (a, b)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mismatches = 0usize;
    let mut intervals = 0usize;
    for _ in 0..C1_PAIRS {
        let n = rng.gen_range(16..=C1_MAX_N);
        let w = rng.gen_range(1..=C1_MAX_W);
        let (a, b) = random_pair(&mut rng, n + w);
        let oracle = naive_series(&a, &b, n, w);
        let s = cesaro(&bits(a, "a"), &bits(b, "b"), n, w, 16).unwrap();
        for k in 1..=n {
            intervals += 1;
            if s.interval(k) != oracle[k - 1] {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: mismatches == 0 && elapsed < C1_RUNTIME,
        summary: format!("{C1_PAIRS} pairs, {intervals} intervals, {mismatches} mismatches, {elapsed:.2?}"),
        measured: json!({"pairs": C1_PAIRS, "intervals": intervals, "mismatches": mismatches}),
    }
}

fn stage_json(s: &StageStats) -> Value {
    json!({
        "k": s.k, "len": s.len.to_string(), "padding": s.padding.to_string(), "ones": s.ones.to_string(),
        "padding_holds": s.padding_holds(), "ones_fraction_holds": s.ones_fraction_holds(),
    })
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let w2 = example_stage(2, DEFAULT_PREFIX_BUDGET).unwrap();
    let n2_search = (0u128..).find(|&n| 2 * n >= 1 + n + 6).unwrap();
    let w2_ok = w2.word.to_string() == format!("{}11", "0".repeat(12)) && w2.padding == 7 && n2_search == 7;
    let mut stages = Vec::new();
    let mut ok = w2_ok;
    let mut missing = Vec::new();
    let known = stage_stats(4, DEFAULT_PREFIX_BUDGET).unwrap();
    for k in 1..=C2_MAX_STAGE {
        match known.get(k as usize - 1) {
            Some(s) => {
                let mut good = s.padding_holds() && s.ones_fraction_holds();
                if let Ok(built) = example_stage(k, DEFAULT_PREFIX_BUDGET) {
                    let (kk, len, ones) = (u128::from(k), built.len() as u128, built.ones() as u128);
                    good &= len == s.len && ones == s.ones;
                    good &= k < 2 || built.padding * kk >= len * (kk - 1);
                    good &= ones * kk <= len;
                }
                ok &= good;
                stages.push(stage_json(s));
            }
            None => {
                let err = stage_stats(k, DEFAULT_PREFIX_BUDGET).unwrap_err();
                ok = false;
                missing.push(k);
                stages.push(json!({"k": k, "error": err.to_string()}));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: ok && elapsed < C2_RUNTIME,
        summary: format!(
            "w_2 = 0^12·11 with n_2 = 7: {w2_ok}; stages checked exactly up to k = 4; unreachable stages {missing:?}; {elapsed:.2?}"
        ),
        measured: json!({"n2_linear_search": n2_search.to_string(), "stages": stages}),
    }
}

fn criterion_3() -> Outcome {
    let x = example_point();
    let zero = fixed(0);
    let source = ExampleSource::default();
    let known = stage_stats(4, DEFAULT_PREFIX_BUDGET).unwrap();
    let mut ok = true;
    let mut rows = Vec::new();
    let mut missing = Vec::new();
    for k in 2..=C2_MAX_STAGE {
        let Some(s) = known.get(k as usize - 1) else {
            ok = false;
            missing.push(k);
            rows.push(json!({"k": k, "error": "|w_k| not computable"}));
            continue;
        };
        let n = s.len;
        let d = if n <= u128::from(DEFAULT_PREFIX_BUDGET) {
            u128::from(disagreement_density(&x, &zero, n as usize, 16, 0).unwrap().disagreements)
        } else {
            u128::from(source.count_in_prefix(n as u64, Symbol::ONE).unwrap())
        };
        let holds = d * u128::from(k) <= n;
        ok &= holds && d == s.ones;
        rows.push(json!({"k": k, "N": n.to_string(), "disagreements": d.to_string(), "holds": holds}));
    }
    Outcome {
        pass: ok,
        summary: format!("density ≤ 1/k counted exactly for k = 2..4; unreachable stages {missing:?}"),
        measured: json!({"rows": rows}),
    }
}

fn criterion_4() -> Outcome {
    let x = example_point();
    let s = cesaro(&x, &fixed(0), C4_SCAN, C4_WINDOW, 16).unwrap();
    let (n, hi) = s.liminf_hi();
    let w4 = stage_stats(4, DEFAULT_PREFIX_BUDGET).unwrap()[3].len;
    // |w_6| ≥ |w_4| ≥ scan horizon, so this minimum bounds the one over n ≤ |w_6|.
    let inside = (C4_SCAN as u128) <= w4;
    let pass = inside && hi <= ratio(C4_BOUND);
    Outcome {
        pass,
        summary: format!("min S_n.hi = {hi} ≈ {:.6} at n = {n} (scan to {C4_SCAN} ≤ |w_4| = {w4})", meanchaos::rational::to_f64(&hi)),
        measured: json!({"argmin_n": n, "min_hi": hi.to_string(), "scan": C4_SCAN, "w4": w4.to_string()}),
    }
}

fn criterion_5() -> Outcome {
    let x = example_point();
    let mut rows = Vec::new();
    let mut ok = true;
    let mut worst: Option<Rational> = None;
    for c in 1..=C5_MAX_DEPTH {
        let p = SensitivityParams::new(c, ClassifyParams::new(C5_HORIZON), ratio(C5_TARGET));
        let w = find_sensitivity_witness(&x, &p).unwrap();
        let y = w.witness_point.as_ref().unwrap();
        let same_cylinder = y.prefix(c).unwrap() == x.prefix(c).unwrap();
        ok &= w.found && same_cylinder && w.limsup_lo >= ratio(C5_TARGET);
        worst = Some(worst.map_or(w.limsup_lo.clone(), |m| m.min(w.limsup_lo.clone())));
        rows.push(json!({"c": c, "witness": w.witness, "limsup_lo": w.limsup_lo.to_string(), "found": w.found}));
    }
    let worst = worst.unwrap();
    Outcome {
        pass: ok,
        summary: format!("c = 1..{C5_MAX_DEPTH} at N = {C5_HORIZON}: smallest limsup_lo {:.6}", meanchaos::rational::to_f64(&worst)),
        measured: json!({"rows": rows}),
    }
}

fn check_pair(x: &SymbolicPoint, y: &SymbolicPoint, params: &ClassifyParams) -> (PairVerdict, bool) {
    let v = classify(x, y, params).unwrap();
    let r = classify(y, x, params).unwrap();
    let symmetric = v.flags() == r.flags();
    let consistent = v.hierarchy_violations().is_empty() && symmetric;
    (v, consistent)
}

fn criterion_6() -> Outcome {
    let x = example_point();
    let delta = delta_example(DeltaExampleParams::default());
    let w = |s: &str| periodic_point(&Word::from_digits(s).unwrap()).unwrap();
    let (t0, t1) = meanchaos::construct::tail_witnesses(&x, 14).unwrap();
    let fixtures: Vec<(&str, SymbolicPoint, SymbolicPoint)> = vec![
        ("x,x", x.clone(), x.clone()),
        ("0,1", fixed(0), fixed(1)),
        ("example,0", x.clone(), fixed(0)),
        ("delta,0", delta.clone(), fixed(0)),
        ("delta,σdelta", delta.clone(), delta.shift(1)),
        ("tails c=14", t0, t1),
        ("example,tail1", x.clone(), meanchaos::construct::tail_witness(&x, 1, Symbol::ONE).unwrap()),
        ("01,10", w("01"), w("10")),
        ("001,0", w("001"), fixed(0)),
        ("σx,σ²x", x.shift(1), x.shift(2)),
    ];
    let mut violations = 0;
    let mut checked = 0;
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for (_, a, b) in &fixtures {
        for n in [1_000, 10_000] {
            let (v, ok) = check_pair(a, b, &ClassifyParams::new(n));
            checked += 1;
            violations += usize::from(!ok);
            *tally.entry(v.mean_li_yorke.verdict.to_string()).or_default() += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..C6_RANDOM_PAIRS {
        let (a, b) = random_pair(&mut rng, C6_HORIZON + 64);
        let (v, ok) = check_pair(&bits(a, "a"), &bits(b, "b"), &ClassifyParams::new(C6_HORIZON));
        checked += 1;
        violations += usize::from(!ok);
        *tally.entry(v.mean_proximal.verdict.to_string()).or_default() += 1;
    }
    Outcome {
        pass: violations == 0,
        summary: format!("{checked} classifications ({} fixture pairs, {C6_RANDOM_PAIRS} random), {violations} violations", fixtures.len()),
        measured: json!({"checked": checked, "violations": violations, "verdicts": tally}),
    }
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let delta = delta_example(DeltaExampleParams::default());
    let zero = fixed(0);
    let mut bounds = true;
    let mut rows = Vec::new();
    for l in 1..=3 {
        let fp = delta_fixpoint_diagnostic(&delta, C7_HORIZON, l, Symbol::ZERO).unwrap();
        let dm = diagonal_mass(&delta, &zero, C7_HORIZON, l).unwrap();
        bounds &= fp <= ratio(C7_FIXPOINT_MAX) && dm >= ratio(C7_DIAGONAL_MIN);
        rows.push(json!({"L": l, "fixpoint": fp.to_string(), "diagonal_mass": dm.to_string()}));
    }
    let samples: [(u64, u64); 5] = [(0, 1), (0, 7), (3, 50), (10, 100), (1, 1000)];
    let mut mly_holds = 0;
    let mut grid = Vec::new();
    for n in C7_GRID {
        let params = ClassifyParams::new(n);
        let mut mp = BTreeMap::<String, usize>::new();
        let mut pairs = vec![(delta.clone(), zero.clone())];
        pairs.extend(samples.iter().map(|&(a, b)| (delta.shift(a), delta.shift(b))));
        for (a, b) in &pairs {
            let v = classify(a, b, &params).unwrap();
            mly_holds += usize::from(v.mean_li_yorke.verdict == Verdict::Holds);
            *mp.entry(v.mean_proximal.verdict.to_string()).or_default() += 1;
        }
        let fp = delta_fixpoint_diagnostic(&delta, n, 3, Symbol::ZERO).unwrap();
        let dm = diagonal_mass(&delta, &zero, n, 3).unwrap();
        grid.push(json!({"N": n, "mean_proximal": mp, "fixpoint": fp.to_string(), "one_minus_diagonal": (Rational::from_integer(1.into()) - dm).to_string()}));
    }
    let mut ok = bounds && mly_holds == 0;
    let full = classify(&zero, &fixed(1), &ClassifyParams::new(C7_HORIZON)).unwrap();
    let full_dm = diagonal_mass(&zero, &fixed(1), C7_HORIZON, 1).unwrap();
    ok &= full_dm.is_zero() && full.mean_proximal.verdict == Verdict::Fails;
    let freq1 = empirical(&delta, C7_HORIZON, 1).unwrap().freq(&Word::from_digits("1").unwrap());
    let elapsed = start.elapsed();
    Outcome {
        pass: ok && elapsed < C7_RUNTIME,
        summary: format!(
            "fixpoint/diagonal bounds at L ≤ 3: {}; mean Li-Yorke HOLDS on sampled delta pairs: {mly_holds}; full-shift pair diagonal {full_dm}, mean_proximal {}; {elapsed:.2?}",
            bounds,
            full.mean_proximal.verdict
        ),
        measured: json!({"rows": rows, "grid": grid, "freq_1": freq1.to_string(), "mly_holds": mly_holds}),
    }
}

/// The files a suite run emits, regenerated from scratch on every call.
fn artifacts() -> Vec<(&'static str, Vec<u8>)> {
    let x = example_point();
    let zero = fixed(0);
    let series: CesaroSeries = cesaro(&x, &zero, 10_000, 64, 16).unwrap();
    let mut csv = Vec::new();
    series.write_csv(&mut csv, true).unwrap();
    let verdict = classify(&x, &zero, &ClassifyParams::new(10_000)).unwrap();
    let scrambled = build_scrambled_candidates(&x, &zero, 3, &ClassifyParams::new(10_000)).unwrap();
    let delta = delta_example(DeltaExampleParams::default());
    let measure = empirical(&delta, 10_000, 3).unwrap();
    let sens = find_sensitivity_witness(&x, &SensitivityParams::new(3, ClassifyParams::new(10_000), rat(1, 2))).unwrap();
    vec![
        ("cesaro_example_zero.csv", csv),
        ("verdict_example_zero.json", serde_json::to_vec_pretty(&verdict).unwrap()),
        ("scrambled_example.json", serde_json::to_vec_pretty(&scrambled).unwrap()),
        ("empirical_delta.json", serde_json::to_vec_pretty(&measure).unwrap()),
        ("sensitivity_c3.json", serde_json::to_vec_pretty(&sens).unwrap()),
    ]
}

fn out_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

fn criterion_8() -> Outcome {
    let first = artifacts();
    let second = artifacts();
    let mut differing = Vec::new();
    for (run, files) in [("run1", &first), ("run2", &second)] {
        let dir = out_dir().join(run);
        std::fs::create_dir_all(&dir).unwrap();
        for (name, bytes) in files.iter() {
            std::fs::write(dir.join(name), bytes).unwrap();
        }
    }
    for ((name, a), (_, b)) in first.iter().zip(&second) {
        if a != b {
            differing.push(*name);
        }
    }
    let bytes: usize = first.iter().map(|(_, b)| b.len()).sum();
    Outcome {
        pass: differing.is_empty(),
        summary: format!("{} artifacts, {bytes} bytes, differing: {differing:?}", first.len()),
        measured: json!({"artifacts": first.iter().map(|(n, _)| *n).collect::<Vec<_>>(), "differing": differing}),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", criterion_1),
        ("example construction exactness", criterion_2),
        ("density-one zeros", criterion_3),
        ("mean proximality of (x, 0^∞)", criterion_4),
        ("mean sensitivity", criterion_5),
        ("pair hierarchy", criterion_6),
        ("fixture coherence", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut manifest = serde_json::Map::new();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {} ({name}): {}", i + 1, out.summary);
        failed += usize::from(!out.pass);
        manifest.insert(format!("criterion_{}", i + 1), json!({"pass": out.pass, "measured": out.measured}));
    }
    std::fs::create_dir_all(out_dir()).unwrap();
    let path = out_dir().join("acceptance_manifest.json");
    std::fs::write(&path, serde_json::to_vec_pretty(&Value::Object(manifest)).unwrap()).unwrap();
    println!("manifest: {}", path.display());
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
