use std::fmt::Write;
use std::time::{Duration, Instant};

use koszul_core::analysis::{
    conjecture_scan, detect_gap, generator_series, generator_series_negated,
    gk_functional_residual, gk_inverse_test_with, FirstNegativeResult, ScanBounds, SearchProgress,
};
use koszul_core::analytic::derivative_roots;
use koszul_core::golden::{self, ReproduceOptions, Reproduction};
use koszul_core::linalg::Deadline;
use koszul_core::operad::{
    dimension_table, dual_presentation, EngineConfig, OperadPresentation, SpanLimits,
};
use koszul_core::series::SeriesJson;
use koszul_core::ExactSeries;
use serde::Serialize;

use crate::args::{parse_n_list, Cli, Command, Format, Global, OperadArgs};
use crate::{plot, CliError};

type Out = Result<String, CliError>;

fn json<T: Serialize>(value: &T) -> Out {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))
}

fn engine_config(g: &Global) -> Result<EngineConfig, CliError> {
    let cap = |v: Option<u64>| v.map(|x| usize::try_from(x).unwrap_or(usize::MAX));
    let deadline = match g.time_budget {
        Some(s) if s.is_finite() && s > 0.0 => Deadline::after(Duration::from_secs_f64(s)),
        Some(s) => {
            return Err(CliError::Usage(format!(
                "time budget must be positive, got {s}"
            )))
        }
        None => Deadline::none(),
    };
    Ok(EngineConfig {
        rank_mode: g.rank_mode,
        exact_column_threshold: g.exact_threshold,
        primes: g.primes as usize,
        seed: g.seed,
        limits: SpanLimits {
            max_trees: cap(g.max_trees),
            max_entries: cap(g.max_entries),
        },
        deadline,
    })
}

fn presentation(a: &OperadArgs) -> Result<OperadPresentation, CliError> {
    Ok(OperadPresentation::new(a.family, a.n, a.d)?)
}

pub fn run(cli: &Cli) -> Out {
    let g = &cli.global;
    if let Some(id) = &g.reproduce {
        if !matches!(cli.command, Some(Command::Reproduce { .. })) {
            return reproduce(g, std::slice::from_ref(id), false, None, false);
        }
    }
    let Some(command) = &cli.command else {
        return Err(CliError::Usage("no subcommand given; see --help".into()));
    };
    match command {
        Command::Invert { series, order } => invert(g, series, *order),
        Command::Gk {
            n,
            bound,
            gp,
            gdual,
            order,
        } => match (gp, gdual, n) {
            (Some(gp), Some(gd), _) => functional(g, gp, gd, *order),
            (_, _, Some(n)) => first_negative(g, &[*n], *bound),
            _ => Err(CliError::Usage(
                "gk needs --n or both --gp and --gdual".into(),
            )),
        },
        Command::Table { n, bound, csv, svg } => {
            let ns = parse_n_list(n).map_err(CliError::Usage)?;
            let rows = search_rows(g, &ns, *bound)?;
            write_figure(&rows, csv.as_deref(), svg.as_deref())?;
            render_rows(g, &rows)
        }
        Command::Plot { n, bound, csv, svg } => {
            let ns = parse_n_list(n).map_err(CliError::Usage)?;
            let rows = search_rows(g, &ns, *bound)?;
            write_figure(&rows, csv.as_deref(), svg.as_deref())?;
            Ok(if svg.is_some() {
                String::new()
            } else {
                plot::svg(&rows)
            })
        }
        Command::Dims { operad, max_p } => dims(g, operad, *max_p),
        Command::Series { operad, max_p } => series(g, operad, *max_p),
        Command::Dual { operad } => dual(g, operad),
        Command::Gap { operad, max_p } => gap(g, operad, *max_p),
        Command::Scan { n, d, bound, max_p } => scan(g, n, *d, *bound, *max_p),
        Command::CriticalPoints { n } => critical_points(g, n),
        Command::Reproduce {
            ids,
            list,
            search_cap,
            stretch,
        } => {
            let mut ids = ids.clone();
            ids.extend(g.reproduce.iter().cloned());
            reproduce(g, &ids, *list, *search_cap, *stretch)
        }
    }
}

fn invert(g: &Global, text: &str, order: Option<usize>) -> Out {
    let inv = ExactSeries::parse(text, order)?.invert()?;
    match g.format() {
        Format::Human => Ok(inv.to_polynomial_string()),
        Format::Json => json(&inv.to_json()),
        Format::Csv => Ok(series_csv(&inv)),
    }
}

fn series_csv(s: &ExactSeries) -> String {
    let mut out = String::from("exponent,coefficient\n");
    for (e, c) in s.terms() {
        let _ = writeln!(out, "{e},{c}");
    }
    out
}

#[derive(Serialize)]
struct FunctionalJson {
    holds: bool,
    order: usize,
    residual: SeriesJson,
}

fn functional(g: &Global, gp: &str, gdual: &str, order: Option<usize>) -> Out {
    let a = ExactSeries::parse(gp, order)?;
    let b = ExactSeries::parse(gdual, order)?;
    let residual = gk_functional_residual(&a, &b)?;
    let holds = residual.is_zero();
    match g.format() {
        Format::Json => json(&FunctionalJson {
            holds,
            order: residual.order(),
            residual: residual.to_json(),
        }),
        Format::Csv => Ok(format!("holds,order\n{holds},{}\n", residual.order())),
        Format::Human if holds => Ok(format!(
            "g_P(-g_dual(-t)) = t holds to order {}",
            residual.order()
        )),
        Format::Human => Ok(format!(
            "g_P(-g_dual(-t)) - t = {}: the pair fails",
            residual.to_polynomial_string()
        )),
    }
}

fn progress_printer(g: &Global, n: usize) -> impl FnMut(&SearchProgress) {
    let every = (g.progress_every > 0.0).then(|| Duration::from_secs_f64(g.progress_every));
    let start = Instant::now();
    let mut last = start;
    move |s: &SearchProgress| {
        if let Some(every) = every {
            if last.elapsed() >= every {
                last = Instant::now();
                eprintln!(
                    "n = {n}: degree {}, p = {}, {:.1?} elapsed, {} bits",
                    s.degree,
                    s.p,
                    start.elapsed(),
                    s.bits
                );
            }
        }
    }
}

fn search_rows(
    g: &Global,
    ns: &[usize],
    bound: usize,
) -> Result<Vec<FirstNegativeResult>, CliError> {
    let deadline = engine_config(g)?.deadline;
    ns.iter()
        .map(|&n| {
            Ok(gk_inverse_test_with(
                n,
                bound,
                deadline,
                progress_printer(g, n),
            )?)
        })
        .collect()
}

fn first_negative(g: &Global, ns: &[usize], bound: usize) -> Out {
    let rows = search_rows(g, ns, bound)?;
    if g.format() == Format::Human {
        let r = &rows[0];
        return Ok(match (r.first_negative_exponent, &r.coefficient) {
            (Some(e), Some(c)) => format!(
                "n = {}: first negative coefficient {c} at t^{e} (p = {})",
                r.n,
                r.p_label()
            ),
            _ => format!(
                "n = {}: no negative coefficient up to t^{} (p = {})",
                r.n,
                r.search_bound,
                r.p_label()
            ),
        });
    }
    render_rows(g, &rows)
}

fn render_rows(g: &Global, rows: &[FirstNegativeResult]) -> Out {
    match g.format() {
        Format::Json => json(&rows),
        Format::Csv => Ok(plot::csv(rows)),
        Format::Human => {
            let mut out = String::from("n   p       first negative at\n");
            for r in rows {
                let at = r
                    .first_negative_exponent
                    .map_or_else(|| "-".into(), |e| format!("t^{e}"));
                let _ = writeln!(out, "{:<3} {:<7} {at}", r.n, r.p_label());
            }
            Ok(out)
        }
    }
}

fn write_figure(
    rows: &[FirstNegativeResult],
    csv: Option<&std::path::Path>,
    svg: Option<&std::path::Path>,
) -> Result<(), CliError> {
    if let Some(path) = csv {
        std::fs::write(path, plot::csv(rows))?;
        eprintln!("wrote {}", path.display());
    }
    if let Some(path) = svg {
        std::fs::write(path, plot::svg(rows))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn dims(g: &Global, a: &OperadArgs, max_p: usize) -> Out {
    let pres = presentation(a)?;
    let table = dimension_table(&pres, max_p, &engine_config(g)?)?;
    match g.format() {
        Format::Json => json(&table.to_json()),
        Format::Csv => {
            let mut out = String::from("p,arity,dim,certainty\n");
            for e in &table.entries {
                let _ = writeln!(out, "{},{},{},{}", e.p, e.arity, e.dim, e.certainty);
            }
            Ok(out)
        }
        Format::Human => {
            let mut out = format!("{pres}\np   arity  dim        rank\n");
            for e in &table.entries {
                let _ = writeln!(
                    out,
                    "{:<3} {:<6} {:<10} {}",
                    e.p, e.arity, e.dim, e.certainty
                );
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct SeriesReport {
    presentation: OperadPresentation,
    series: SeriesJson,
    modular_certified: bool,
}

fn series(g: &Global, a: &OperadArgs, max_p: usize) -> Out {
    let pres = presentation(a)?;
    let table = dimension_table(&pres, max_p, &engine_config(g)?)?;
    let s = table.to_series();
    let modular = table
        .entries
        .iter()
        .any(|e| e.certainty == koszul_core::linalg::RankCertainty::Modular);
    match g.format() {
        Format::Json => json(&SeriesReport {
            presentation: pres,
            series: s.to_json(),
            modular_certified: modular,
        }),
        Format::Csv => Ok(series_csv(&s)),
        Format::Human => Ok(format!(
            "{s}{}",
            if modular {
                "\n(some ranks modular-certified)"
            } else {
                ""
            }
        )),
    }
}

fn dual(g: &Global, a: &OperadArgs) -> Out {
    let pres = presentation(a)?;
    let d = dual_presentation(&pres);
    match g.format() {
        Format::Json => json(&d),
        Format::Csv => Ok(format!("family,n,d\n{},{},{}\n", d.family, d.n, d.d)),
        Format::Human => Ok(format!("{pres} -> {d}")),
    }
}

#[derive(Serialize)]
struct GapJson {
    presentation: OperadPresentation,
    generator_series: SeriesJson,
    /// `-f(t)`, the normalization with leading term `-t`.
    generator_series_negated: SeriesJson,
    report: koszul_core::analysis::GapReport,
}

fn gap(g: &Global, a: &OperadArgs, max_p: usize) -> Out {
    let pres = presentation(a)?;
    let series = generator_series(&pres, max_p, &engine_config(g)?)?;
    let report = detect_gap(&series, pres.n)?;
    match g.format() {
        Format::Json => json(&GapJson {
            presentation: pres,
            generator_series: series.to_json(),
            generator_series_negated: generator_series_negated(&series).to_json(),
            report,
        }),
        Format::Csv => {
            let mut out = String::from("p,exponent,coefficient\n");
            for (p, c) in report.generator_coefficients.iter().enumerate() {
                let _ = writeln!(out, "{p},{},{c}", p * (pres.n - 1) + 1);
            }
            Ok(out)
        }
        Format::Human => {
            let mut out = format!("{pres} generators: {}\n", report.coefficient_listing());
            let _ = match report.zero_run {
                Some(run) => writeln!(out, "zero run: {run}"),
                None => writeln!(out, "zero run: none within t^{}", series.order()),
            };
            let _ = writeln!(
                out,
                "gap of length n - 1: {}",
                if report.gap_length_matches {
                    "yes"
                } else {
                    "no"
                }
            );
            let _ = writeln!(out, "certainty: {}", report.certainty);
            Ok(out)
        }
    }
}

fn scan(g: &Global, n: &str, d: Option<i64>, bound: usize, max_p: Option<usize>) -> Out {
    let pairs: Vec<(usize, Option<i64>)> = parse_n_list(n)
        .map_err(CliError::Usage)?
        .into_iter()
        .map(|n| (n, d))
        .collect();
    let report = conjecture_scan(
        &pairs,
        ScanBounds {
            search_bound: bound,
            max_p,
        },
        &engine_config(g)?,
    )?;
    match g.format() {
        Format::Json => json(&report),
        Format::Csv => {
            let mut out =
                String::from("n,d,analytic,first_negative_p,run_q,run_length,open_ended,verdict\n");
            for e in &report.entries {
                let run = e.gap.zero_run;
                let _ = writeln!(
                    out,
                    "{},{},{:?},{},{},{},{},{:?}",
                    e.presentation.n,
                    e.presentation.d,
                    e.analytic,
                    e.first_negative
                        .p_index
                        .map(|p| p.to_string())
                        .unwrap_or_default(),
                    run.map(|r| r.q.to_string()).unwrap_or_default(),
                    run.map(|r| r.length.to_string()).unwrap_or_default(),
                    run.is_some_and(|r| r.open_ended),
                    e.verdict
                );
            }
            Ok(out)
        }
        Format::Human => {
            let mut out = String::new();
            for e in &report.entries {
                let _ = writeln!(out, "{} (max p = {})", e.presentation, e.max_p);
                let _ = writeln!(out, "  analytic (dual, odd degree): {}", e.analytic);
                let _ = writeln!(
                    out,
                    "  first negative inverse coefficient: p = {}",
                    e.first_negative.p_label()
                );
                let _ = writeln!(out, "  generators: {}", e.gap.coefficient_listing());
                let run = e
                    .gap
                    .zero_run
                    .map_or_else(|| "none".to_string(), |r| r.to_string());
                let _ = writeln!(out, "  zero run: {run}");
                let _ = writeln!(out, "  gap of length n - 1: {}", e.verdict);
            }
            for x in &report.excluded {
                let _ = writeln!(out, "excluded n = {}, d = {}: {}", x.n, x.d, x.reason);
            }
            let _ = writeln!(out, "certainty: {}", report.certainty);
            Ok(out)
        }
    }
}

fn critical_points(g: &Global, n: &str) -> Out {
    let reports = parse_n_list(n)
        .map_err(CliError::Usage)?
        .into_iter()
        .map(derivative_roots)
        .collect::<Result<Vec<_>, _>>()?;
    match g.format() {
        Format::Json => json(&reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()),
        Format::Csv => {
            let mut out = String::from("n,discriminant,real_critical_points,theorem_applies\n");
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    r.n,
                    r.discriminant,
                    r.critical_points().join(" "),
                    r.theorem_applies
                );
            }
            Ok(out)
        }
        Format::Human => {
            let mut out = String::new();
            for r in &reports {
                let roots: Vec<String> =
                    r.quadratic_roots.iter().map(ToString::to_string).collect();
                let _ = writeln!(
                    out,
                    "n = {}: discriminant {}, w roots [{}], critical points [{}], negative inverse coefficient forced: {}",
                    r.n,
                    r.discriminant,
                    roots.join(", "),
                    r.critical_points().join(", "),
                    if r.theorem_applies { "yes" } else { "no" }
                );
            }
            Ok(out)
        }
    }
}

fn reproduce(
    g: &Global,
    ids: &[String],
    list: bool,
    search_cap: Option<usize>,
    stretch: bool,
) -> Out {
    let entries: Vec<&golden::GoldenEntry> = if ids.is_empty() {
        golden::published()
            .iter()
            .filter(|e| stretch || !e.is_stretch())
            .collect()
    } else {
        ids.iter()
            .map(|id| golden::entry(id))
            .collect::<Result<_, _>>()?
    };
    if list {
        let mut out = String::new();
        for e in &entries {
            let _ = writeln!(out, "{:<26} {}", e.id(), e.source());
        }
        return Ok(out);
    }
    let options = ReproduceOptions {
        config: engine_config(g)?,
        search_cap,
    };
    let results = entries
        .iter()
        .map(|e| golden::reproduce(e, &options))
        .collect::<Result<Vec<Reproduction>, _>>()?;
    let out = match g.format() {
        Format::Json => json(&results)?,
        Format::Csv => {
            let mut out = String::from("id,check,expected,actual,ok\n");
            for r in &results {
                for c in &r.checks {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        r.id, c.label, c.expected, c.actual, c.ok
                    );
                }
            }
            out
        }
        Format::Human => {
            let mut out = String::new();
            for r in &results {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    out,
                    "{status} {} ({}): {} checks",
                    r.id,
                    r.source,
                    r.checks.len()
                );
                for c in r.mismatches() {
                    let _ = writeln!(
                        out,
                        "  {}: expected {}, got {}",
                        c.label, c.expected, c.actual
                    );
                }
            }
            out
        }
    };
    if results.iter().all(Reproduction::passed) {
        Ok(out)
    } else {
        Err(CliError::Mismatch(out))
    }
}
