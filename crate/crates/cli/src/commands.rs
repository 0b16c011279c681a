//! Subcommand implementations: each returns the outcome, a text rendering and
//! the exit code.

use std::error::Error;
use std::fmt::Write as _;
use std::path::Path;

use ratiolog_core::certify::{builtin_certificate, CertificateReport, HypothesisStatus, Verdict};
use ratiolog_core::exact::{parse_number, BigRat};
use ratiolog_core::gamma::{check_gamma_eligibility, h_kernel_grid_check, verify_finite_log_monotonicity};
use ratiolog_core::io::{cache_terms, cross_validate, load_cached, parse_bfile, parse_certificate_doc, parse_sequence_doc};
use ratiolog_core::logbehavior::{
    all_hold, check_log_concave, check_log_convex, check_ratio_log_concave, check_ratio_log_convex,
    log_monotonic_order, order_onset, CheckOutcome,
};
use ratiolog_core::sequences::{catalog_lookup, catalog_names, GammaQuotientDef, SequenceDef};
use serde_json::{json, Value};

use crate::{Command, Output, Property};

type CliResult = Result<Output, Box<dyn Error>>;

pub fn run(cmd: &Command) -> CliResult {
    match cmd {
        Command::List => list(),
        Command::Gen { seq, count, cache } => gen(seq, *count, cache.as_deref()),
        Command::Check { seq, property, from, to, strict } => check(seq, *property, *from, *to, *strict),
        Command::Order { seq, k, horizon, from } => order(seq, *k, *horizon, *from),
        Command::Certify { seq, file, builtin } => certify(seq.as_deref(), file.as_deref(), *builtin),
        Command::GammaCheck { params, verify_k, count } => gamma_check(params, *verify_k, *count),
        Command::Onset { seq, k, horizon } => onset(seq, *k, *horizon),
        Command::OeisDiff { seq, bfile } => oeis_diff(seq, bfile),
        Command::HKernel { p, q, grid, t, u, digits } => h_kernel(p, q, *grid, t, u, *digits),
    }
}

/// A catalog name, or a path to a sequence document.
fn resolve(seq: &str) -> Result<SequenceDef, Box<dyn Error>> {
    let path = Path::new(seq);
    if seq.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{seq}: {e}"))?;
        return Ok(parse_sequence_doc(&text)?);
    }
    Ok(catalog_lookup(seq)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn exit_code(holds: bool) -> u8 {
    if holds {
        0
    } else {
        1
    }
}

fn describe(label: &str, o: &CheckOutcome) -> String {
    let (lo, hi) = o.checked_range;
    let strict = if o.strict { "strict" } else { "non-strict" };
    match &o.first_violation {
        None => format!("{label} on [{lo}, {hi}]: holds ({strict}, {} equalities)\n", o.equalities),
        Some(v) => format!(
            "{label} on [{lo}, {hi}]: violated at n = {}: {} {} {} fails\n",
            v.index,
            v.lhs,
            o.relation.symbol(o.strict),
            v.rhs
        ),
    }
}

fn list() -> CliResult {
    let mut text = String::new();
    let mut rows = Vec::new();
    for name in catalog_names() {
        let probe = name.replace(":P", ":3");
        let def = catalog_lookup(&probe)?;
        let oeis = if name.ends_with(":P") { None } else { def.oeis_id.clone() };
        writeln!(text, "{name:<18} {}", oeis.as_deref().unwrap_or("-"))?;
        rows.push(json!({"name": name, "oeis_id": oeis, "offset": def.offset()}));
    }
    Ok(Output { command: "list", inputs: json!({}), outcome: json!({ "sequences": rows }), text, code: 0 })
}

fn gen(seq: &str, count: usize, cache: Option<&Path>) -> CliResult {
    let def = resolve(seq)?;
    let (terms, from_cache, generated) = match cache {
        Some(dir) => {
            let load = load_cached(&def, count, dir)?;
            if load.generated > 0 {
                cache_terms(&def, &load.terms, dir)?;
            }
            (load.terms, load.from_cache, load.generated)
        }
        None => (def.terms(count)?.values, 0, count),
    };
    let start = def.offset();
    let mut text = String::new();
    for (i, t) in terms.iter().enumerate() {
        writeln!(text, "{} {t}", start + i as i64)?;
    }
    let strings: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    Ok(Output {
        command: "gen",
        inputs: json!({"sequence": def.name, "count": count, "cache": cache.map(|p| p.display().to_string())}),
        outcome: json!({"start": start, "terms": strings, "from_cache": from_cache, "generated": generated}),
        text,
        code: 0,
    })
}

fn check(seq: &str, property: Property, from: i64, to: i64, strict: bool) -> CliResult {
    if from > to {
        return Err(format!("--from {from} exceeds --to {to}").into());
    }
    let def = resolve(seq)?;
    let (reach, label, checker): (i64, &str, fn(&_, bool) -> _) = match property {
        Property::LogConvex => (1, "log-convex", check_log_convex),
        Property::LogConcave => (1, "log-concave", check_log_concave),
        Property::RatioLogConvex => (2, "ratio-log-convex", check_ratio_log_convex),
        Property::RatioLogConcave => (2, "ratio-log-concave", check_ratio_log_concave),
    };
    let lo = (from - reach).max(def.offset());
    let window = def.terms_through(to + reach + 1)?.window(lo, to + reach);
    let outcome = checker(&window, strict)?;
    Ok(Output {
        command: "check",
        inputs: json!({"sequence": def.name, "property": label, "from": from, "to": to, "strict": strict}),
        text: describe(&format!("{} {label}", def.name), &outcome),
        code: exit_code(outcome.holds),
        outcome: to_value(&outcome),
    })
}

fn order(seq: &str, k: usize, horizon: i64, from: Option<i64>) -> CliResult {
    let def = resolve(seq)?;
    let from = from.unwrap_or(def.offset()).max(def.offset());
    let window = def.terms_through(horizon + 1)?.window(from, horizon);
    let levels = log_monotonic_order(&window, k, false)?;
    let holds = all_hold(&levels);
    let mut text = String::new();
    for (r, o) in levels.iter().enumerate() {
        let shape = if r % 2 == 0 { "log-convex" } else { "log-concave" };
        text.push_str(&describe(&format!("R^{r} {shape}"), o));
    }
    writeln!(text, "order {k} on [{from}, {horizon}]: {}", if holds { "holds" } else { "fails" })?;
    Ok(Output {
        command: "order",
        inputs: json!({"sequence": def.name, "k": k, "from": from, "horizon": horizon}),
        outcome: json!({"holds": holds, "levels": levels}),
        text,
        code: exit_code(holds),
    })
}

fn render_certificate(report: &CertificateReport) -> String {
    let mut text = format!(
        "{} theorem {:?} N = {}: {:?}\n",
        report.sequence, report.theorem, report.n, report.verdict
    );
    for h in &report.hypotheses {
        let status = match h.status {
            HypothesisStatus::Holds => "holds",
            HypothesisStatus::Fails => "FAILS",
            HypothesisStatus::Undecided => "undecided",
        };
        let _ = writeln!(text, "  {:<4} {status:<9} n >= {}: {}", h.name, h.from, h.statement);
    }
    match &report.base {
        Some(b) => text.push_str(&describe("  base ratio-log-convex", b)),
        None => text.push_str("  base: not checked\n"),
    }
    let _ = writeln!(text, "  theorem covers n >= {}", report.covered_from);
    for note in &report.notes {
        let _ = writeln!(text, "  note: {note}");
    }
    text
}

fn certify(seq: Option<&str>, file: Option<&Path>, builtin: bool) -> CliResult {
    let (cert, source) = match (seq, file) {
        (_, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            (parse_certificate_doc(&text)?, path.display().to_string())
        }
        (Some(name), None) if builtin => (builtin_certificate(name)?, format!("builtin:{name}")),
        _ => return Err("give --file PATH or <seq> --builtin".into()),
    };
    let report = cert.verify()?;
    let code = match report.verdict {
        Verdict::Certified => 0,
        Verdict::Refuted => 1,
        Verdict::Inconclusive => 2,
    };
    Ok(Output {
        command: "certify",
        inputs: json!({"certificate": source}),
        text: render_certificate(&report),
        outcome: to_value(&report),
        code,
    })
}

fn gamma_check(params: &[u64], verify_k: Option<usize>, count: usize) -> CliResult {
    let [n0, k0, k0bar, a, b, bbar] = params else {
        return Err("--params needs n0,k0,k0bar,a,b,bbar".into());
    };
    let fam = GammaQuotientDef::new(*n0, *k0, *k0bar, *a, *b, *bbar)?;
    let elig = check_gamma_eligibility(&fam);
    let mut text = format!(
        "family {params:?}: {} (u = {}, p = {}, q = {})\n",
        if elig.eligible { "eligible" } else { "not eligible" },
        elig.u,
        elig.p,
        elig.q
    );
    for c in &elig.conditions {
        writeln!(text, "  {:<40} {}", c.name, if c.holds { "holds" } else { "fails" })?;
    }
    let finite = match verify_k {
        Some(k) => {
            let levels = verify_finite_log_monotonicity(&fam, k, count)?;
            writeln!(text, "order {k} on the first {count} terms: {}", if all_hold(&levels) { "holds" } else { "fails" })?;
            Some(levels)
        }
        None => None,
    };
    let violated = finite.as_ref().is_some_and(|l| !all_hold(l));
    let code = if violated {
        1
    } else if elig.eligible {
        0
    } else {
        2
    };
    Ok(Output {
        command: "gamma-check",
        inputs: json!({"params": params, "verify_k": verify_k, "count": count}),
        outcome: json!({"eligibility": elig, "finite": finite}),
        text,
        code,
    })
}

fn onset(seq: &str, k: usize, horizon: i64) -> CliResult {
    let def = resolve(seq)?;
    let onset = order_onset(&def, k, horizon)?;
    let text = match onset.onset {
        Some(n) => format!("{} order {k}: holds on [{n}, {horizon}] (window-relative)\n", def.name),
        None => format!("{} order {k}: no onset up to {horizon}\n", def.name),
    };
    Ok(Output {
        command: "onset",
        inputs: json!({"sequence": def.name, "k": k, "horizon": horizon}),
        code: exit_code(onset.onset.is_some()),
        outcome: to_value(&onset),
        text,
    })
}

fn oeis_diff(seq: &str, bfile: &Path) -> CliResult {
    let def = resolve(seq)?;
    let bytes = std::fs::read(bfile).map_err(|e| format!("{}: {e}", bfile.display()))?;
    let parsed = parse_bfile(&bytes)?;
    let outcome = cross_validate(&def, &parsed)?;
    let mut text = describe(&format!("{} vs {}", def.name, bfile.display()), &outcome);
    let mut notes = Vec::new();
    if let (Some(ours), Some(theirs)) = (&def.oeis_id, &parsed.oeis_id) {
        if ours != theirs {
            notes.push(format!("b-file header names {theirs}, sequence is {ours}"));
            writeln!(text, "note: {}", notes[0])?;
        }
    }
    Ok(Output {
        command: "oeis-diff",
        inputs: json!({"sequence": def.name, "bfile": bfile.display().to_string(), "shift": def.oeis_index_shift}),
        code: exit_code(outcome.holds),
        outcome: json!({"check": outcome, "notes": notes}),
        text,
    })
}

fn number(s: &str) -> Result<BigRat, Box<dyn Error>> {
    parse_number(s).ok_or_else(|| format!("not a number: {s}").into())
}

fn h_kernel(p: &str, q: &str, grid: usize, t: &[String], u: &[String], digits: u32) -> CliResult {
    let (p, q) = (number(p)?, number(q)?);
    let n = grid.max(1) as i64;
    let axis = |given: &[String], default: Vec<BigRat>| -> Result<Vec<BigRat>, Box<dyn Error>> {
        if given.is_empty() {
            Ok(default)
        } else {
            given.iter().map(|s| number(s)).collect()
        }
    };
    let grid_t = axis(t, (1..=n).map(|i| BigRat::new((4 * i).into(), n.into())).collect())?;
    let denom = (n - 1).max(1);
    let grid_u = axis(u, (0..n).map(|i| BigRat::new((-i).into(), denom.into())).collect())?;
    let report = h_kernel_grid_check(&p, &q, &grid_t, &grid_u, digits)?;
    let mut text = format!("h(t,u) with p = {p}, q = {q} ({}):\n", report.label);
    for pt in &report.points {
        writeln!(text, "  t = {:<8} u = {:<8} h ~ {:.12e}", pt.t.to_string(), pt.u.to_string(), pt.approx)?;
    }
    writeln!(text, "positive at every point: {}", report.outcome.holds)?;
    Ok(Output {
        command: "h-kernel",
        inputs: json!({"p": p.to_string(), "q": q.to_string(), "digits": digits,
            "t": grid_t.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "u": grid_u.iter().map(|x| x.to_string()).collect::<Vec<_>>()}),
        code: exit_code(report.outcome.holds),
        outcome: to_value(&report),
        text,
    })
}
