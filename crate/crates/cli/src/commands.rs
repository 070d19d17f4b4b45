use std::path::Path;

use meanchaos::construct::{example_stages, DEFAULT_STAGE_CAP};
use meanchaos::measure::{
    delta_fixpoint_diagnostic, empirical, product_empirical, unique_ergodicity_diagnostic,
};
use meanchaos::metric::cesaro;
use meanchaos::pairclass::{classify_series, ClassifyParams, PairVerdict};
use meanchaos::rational::{fmt_rational, parse_rational, Rational};
use meanchaos::symseq::{write_sym, Symbol, SymbolicPoint};
use meanchaos::witness::{build_scrambled_candidates, find_sensitivity_witness, mean_proximal_anchor, SensitivityParams};
use serde_json::{json, Value};

use crate::output::{emit, write_atomic, Csv, Format, Manifest};
use crate::points::parse_point;
use crate::{ClassArgs, CliError, GenArgs, MeasureArgs, MeasurePairArgs, OutputArgs, PairArgs, ScanKind};

fn rational_arg(flag: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::usage(format!("--{flag} {s:?}: {e}")))
}

fn classify_params(a: &ClassArgs) -> Result<ClassifyParams, CliError> {
    let p = ClassifyParams::new(a.n)
        .with_window(a.w)
        .with_burn_in(a.burn_in)
        .with_tolerance(rational_arg("eps", &a.eps)?)
        .with_modulus(rational_arg("eta", &a.eta)?);
    p.validate().map_err(|e| CliError::usage(e.to_string()))?;
    Ok(p)
}

fn params_json(p: &ClassifyParams) -> Value {
    serde_json::to_value(p).expect("params serialize")
}

fn format_or(out: &OutputArgs, default: Format) -> Format {
    out.format.unwrap_or(default)
}

fn verdict_rows(csv: &mut Csv, v: &PairVerdict) {
    let flags = [
        ("proximal", &v.proximal),
        ("asymptotic", &v.asymptotic),
        ("li_yorke", &v.li_yorke),
        ("mean_proximal", &v.mean_proximal),
        ("mean_asymptotic", &v.mean_asymptotic),
        ("mean_limsup", &v.mean_limsup),
        ("mean_li_yorke", &v.mean_li_yorke),
    ];
    for (name, flag) in flags {
        if flag.certificates.is_empty() {
            csv.row(&[name, &flag.verdict.to_string(), "", "", "", ""]);
        }
        for c in &flag.certificates {
            let quantity = serde_json::to_value(c.quantity).expect("quantity serializes");
            csv.row(&[
                name.to_string(),
                flag.verdict.to_string(),
                quantity.as_str().unwrap_or_default().to_string(),
                c.index.to_string(),
                fmt_rational(c.bound.lo()),
                fmt_rational(c.bound.hi()),
            ]);
        }
    }
}

pub fn gen(a: GenArgs) -> Result<(), CliError> {
    let budget = a.budget.budget;
    let mut params = json!({"builtin": a.builtin, "k": a.k, "len": a.len, "force": a.force, "budget": budget});
    let (alphabet, symbols, label, stages) = match (a.builtin.as_str(), a.k, a.len) {
        ("example", Some(k), None) => {
            if k == 0 {
                return Err(CliError::usage("--k must be at least 1"));
            }
            if k > DEFAULT_STAGE_CAP && !a.force {
                return Err(meanchaos::Error::StageCap { stage: k, cap: DEFAULT_STAGE_CAP }.into());
            }
            let builds = example_stages(k, budget)?;
            let stages: Vec<Value> = builds
                .iter()
                .map(|b| json!({"k": b.k, "n_k": b.padding, "len": b.len(), "ones": b.ones(), "tail_len": b.tail_len}))
                .collect();
            let last = builds.into_iter().last().expect("at least one stage");
            (2, last.word.into_symbols(), format!("w_{k}"), Some(stages))
        }
        (_, Some(_), _) => return Err(CliError::usage("--k applies to --builtin example without --len")),
        (spec, None, Some(len)) => {
            let x = parse_point(spec, budget)?;
            let symbols = x.prefix(len)?.into_symbols();
            (x.alphabet_size(), symbols, x.label(), None)
        }
        (_, None, None) => return Err(CliError::usage("gen needs --len (or --k for the example)")),
    };
    let mut bytes = Vec::with_capacity(symbols.len() + 32);
    write_sym(&mut bytes, alphabet, &symbols)?;
    write_atomic(&a.out, &bytes)?;
    if let Some(stages) = stages {
        params["stages"] = Value::Array(stages);
    }
    params["written"] = json!({"alphabet": alphabet, "length": symbols.len(), "ones": symbols.iter().filter(|&&s| s == Symbol::ONE).count()});
    let manifest = Manifest::new("gen", params).point(&a.builtin, label);
    write_atomic(&crate::output::sidecar(&a.out), &to_pretty(&manifest))?;
    Ok(())
}

fn to_pretty(v: &impl serde::Serialize) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("manifest serializes");
    out.push(b'\n');
    out
}

fn load_pair(x: &str, y: &str, budget: u64) -> Result<(SymbolicPoint, SymbolicPoint), CliError> {
    Ok((parse_point(x, budget)?, parse_point(y, budget)?))
}

pub fn pair(a: PairArgs) -> Result<(), CliError> {
    let params = classify_params(&a.class)?;
    let (x, y) = load_pair(&a.x, &a.y, a.budget.budget)?;
    let series = cesaro(&x, &y, params.horizon, params.window, params.burn_in)?;
    let verdict = classify_series(&series, &params)?;
    if let Some(path) = &a.series {
        let mut buf = Vec::new();
        series.write_csv(&mut buf, a.log_spaced)?;
        write_atomic(path, &buf)?;
    }
    let mut p = params_json(&params);
    p["budget"] = json!(a.budget.budget);
    p["series"] = json!(a.series.as_deref().map(Path::display).map(|d| d.to_string()));
    p["log_spaced"] = json!(a.log_spaced);
    let manifest = Manifest::new("pair", p).point(&a.x, x.label()).point(&a.y, y.label());
    emit(format_or(&a.output, Format::Json), a.output.out.as_deref(), &manifest, &verdict, || {
        let mut csv = Csv::new(&["flag", "verdict", "quantity", "index", "lo", "hi"]);
        verdict_rows(&mut csv, &verdict);
        csv
    })
}

fn check_grid(ns: &[usize], l: usize) -> Result<(), CliError> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(CliError::usage("--N needs positive horizons"));
    }
    if l == 0 {
        return Err(CliError::usage("--L must be at least 1"));
    }
    Ok(())
}

pub fn measure(a: MeasureArgs) -> Result<(), CliError> {
    check_grid(&a.n, a.l)?;
    let x = parse_point(&a.x, a.budget.budget)?;
    let fixed = Symbol(a.fixed).check(x.alphabet_size()).map_err(|e| CliError::usage(format!("--fixed: {e}")))?;
    let mut shifted = vec![x.clone()];
    shifted.extend(a.shifts.iter().map(|&s| x.shift(s)));
    let mut rows = Vec::new();
    for &n in &a.n {
        let table = empirical(&x, n, a.l)?;
        let delta = delta_fixpoint_diagnostic(&x, n, a.l, fixed)?;
        let ue = if shifted.len() >= 2 { Some(unique_ergodicity_diagnostic(&shifted, n, a.l)?) } else { None };
        rows.push((n, delta, ue, table));
    }
    let params = json!({"N": a.n, "L": a.l, "fixed": a.fixed, "shifts": a.shifts, "budget": a.budget.budget});
    let manifest = Manifest::new("measure", params).point(&a.x, x.label());
    let result: Vec<Value> = rows
        .iter()
        .map(|(n, delta, ue, table)| {
            json!({
                "N": n,
                "L": a.l,
                "delta_fixpoint": delta.to_string(),
                "unique_ergodicity": ue.as_ref().map(Rational::to_string),
                "support": table.support_len(),
                "empirical": table,
            })
        })
        .collect();
    emit(format_or(&a.output, Format::Csv), a.output.out.as_deref(), &manifest, &result, || {
        let mut csv = Csv::new(&["N", "L", "delta_fixpoint", "unique_ergodicity", "support"]);
        for (n, delta, ue, table) in &rows {
            csv.row(&[
                n.to_string(),
                a.l.to_string(),
                fmt_rational(delta),
                ue.as_ref().map(fmt_rational).unwrap_or_default(),
                table.support_len().to_string(),
            ]);
        }
        csv
    })
}

pub fn measure_pair(a: MeasurePairArgs) -> Result<(), CliError> {
    check_grid(&a.n, a.l)?;
    let (x, y) = load_pair(&a.x, &a.y, a.budget.budget)?;
    let tables = a.n.iter().map(|&n| product_empirical(&x, &y, n, a.l)).collect::<meanchaos::Result<Vec<_>>>()?;
    let params = json!({"N": a.n, "L": a.l, "budget": a.budget.budget});
    let manifest = Manifest::new("measure-pair", params).point(&a.x, x.label()).point(&a.y, y.label());
    let result: Vec<Value> = tables
        .iter()
        .map(|t| json!({"N": t.horizon(), "L": a.l, "diagonal_mass": t.diagonal_mass().to_string(), "product": t}))
        .collect();
    emit(format_or(&a.output, Format::Csv), a.output.out.as_deref(), &manifest, &result, || {
        let mut csv = Csv::new(&["N", "L", "diagonal_mass"]);
        for t in &tables {
            csv.row(&[t.horizon().to_string(), a.l.to_string(), fmt_rational(&t.diagonal_mass())]);
        }
        csv
    })
}

pub fn scan(kind: ScanKind) -> Result<(), CliError> {
    match kind {
        ScanKind::Sensitivity { x, c, delta, pool_self_only, reentries, seed, sampled, class, output, budget } => {
            let params = classify_params(&class)?;
            let target = rational_arg("delta", &delta)?;
            let point = parse_point(&x, budget.budget)?;
            let mut sp = SensitivityParams::new(c, params, target);
            sp.reentries = reentries;
            sp.self_only = pool_self_only;
            sp.seed = seed;
            sp.sampled = if seed.is_some() { sampled } else { 0 };
            let report = find_sensitivity_witness(&point, &sp)?;
            let mut p = serde_json::to_value(&sp).expect("params serialize");
            p["budget"] = json!(budget.budget);
            let manifest = Manifest::new("scan sensitivity", p).point(&x, point.label());
            emit(format_or(&output, Format::Json), output.out.as_deref(), &manifest, &report, || {
                let mut csv = Csv::new(&["candidate", "index", "limsup_lo", "reaches_target"]);
                for t in &report.tried {
                    let lo = t.limsup_lo.bound.lo();
                    csv.row(&[
                        t.label.clone(),
                        t.limsup_lo.index.to_string(),
                        fmt_rational(lo),
                        (lo >= &report.target).to_string(),
                    ]);
                }
                csv
            })
        }
        ScanKind::Scrambled { x, anchor, m, class, output, budget } => {
            let params = classify_params(&class)?;
            if m < 2 {
                return Err(CliError::usage("--m must be at least 2"));
            }
            let point = parse_point(&x, budget.budget)?;
            let p = parse_point(&anchor, budget.budget)?;
            let report = build_scrambled_candidates(&point, &p, m, &params)?;
            let mut pj = params_json(&params);
            pj["m"] = json!(m);
            pj["budget"] = json!(budget.budget);
            let manifest = Manifest::new("scan scrambled", pj).point(&x, point.label()).point(&anchor, p.label());
            emit(format_or(&output, Format::Json), output.out.as_deref(), &manifest, &report, || {
                let mut csv = Csv::new(&["i", "j", "selected", "mean_proximal", "mean_limsup", "mean_li_yorke"]);
                for pp in &report.pairs {
                    let sel = report.selected.contains(&pp.i) && report.selected.contains(&pp.j);
                    csv.row(&[
                        pp.i.to_string(),
                        pp.j.to_string(),
                        sel.to_string(),
                        pp.verdict.mean_proximal.verdict.to_string(),
                        pp.verdict.mean_limsup.verdict.to_string(),
                        pp.verdict.mean_li_yorke.verdict.to_string(),
                    ]);
                }
                csv
            })
        }
        ScanKind::Anchor { x, anchor, period, multiples, class, output, budget } => {
            let params = classify_params(&class)?;
            let point = parse_point(&x, budget.budget)?;
            let p = parse_point(&anchor, budget.budget)?;
            let report = mean_proximal_anchor(&point, &p, period, multiples, &params)?;
            let mut pj = params_json(&params);
            pj["period"] = json!(period);
            pj["multiples"] = json!(multiples);
            pj["budget"] = json!(budget.budget);
            let manifest = Manifest::new("scan anchor", pj).point(&x, point.label()).point(&anchor, p.label());
            emit(format_or(&output, Format::Json), output.out.as_deref(), &manifest, &report, || {
                let mut csv = Csv::new(&["pair", "mean_proximal", "mean_asymptotic", "mean_li_yorke"]);
                let row = |csv: &mut Csv, name: String, v: &PairVerdict| {
                    csv.row(&[
                        name,
                        v.mean_proximal.verdict.to_string(),
                        v.mean_asymptotic.verdict.to_string(),
                        v.mean_li_yorke.verdict.to_string(),
                    ])
                };
                row(&mut csv, "(x,p)".into(), &report.anchor);
                for d in &report.derived {
                    row(&mut csv, format!("({}t+{},{}t+{})", d.n1, d.j, d.n2, d.j), &d.verdict);
                }
                csv
            })
        }
    }
}
