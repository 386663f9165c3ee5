use std::io::Write;

use serde::Serialize;

use super::cache::{CacheHeader, ResultCache, SCHEMA_VERSION};
use super::config::{Format, RunConfig};
use super::output::{
    sig12, write_json, write_tree_csv, write_tree_text, write_value_csv, write_value_text, TreeRow, ValueRow,
};
use crate::analysis::{
    asymptotics_report, check_interlacing, check_j_recursion, check_q_recursion, check_structure, coincidence_bound,
    computed_envelope, gg_prime_ranges, theorem2_constants, Envelope, InterlaceMode, Report, Series, TreeValues,
};
use crate::cycle_integral::{CycleIntegrator, CycleValue};
use crate::error::{Error, Result};
use crate::markov_tree::{locate_fraction, node_for_key, MarkovTree, TreeNode};
use crate::quadrature::QuadOptions;
use crate::tree_path::NodeKey;

/// Integrator plus optional cache for one run.
pub struct Session {
    pub config: RunConfig,
    pub integrator: CycleIntegrator,
    cache: Option<ResultCache>,
}

impl Session {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let quad = QuadOptions {
            abs_tol: config.tol,
            ..QuadOptions::default()
        };
        let mut integrator = CycleIntegrator::new(config.series()?);
        integrator.quad = quad;
        let cache = match &config.cache {
            Some(path) => Some(ResultCache::open(
                path,
                CacheHeader {
                    schema: SCHEMA_VERSION,
                    tol: config.tol,
                    series_order: config.series_order,
                    orientation: integrator.orientation,
                },
            )?),
            None => None,
        };
        Ok(Session {
            config,
            integrator,
            cache,
        })
    }

    /// Values for `nodes`, in order; missing ones are computed in parallel and
    /// then written to the cache in one pass.
    pub fn values(&mut self, nodes: &[TreeNode]) -> Result<Vec<CycleValue>> {
        let cached = |k: &NodeKey| self.cache.as_ref().and_then(|c| c.get(k)).cloned();
        let missing: Vec<TreeNode> = nodes.iter().filter(|n| cached(&n.key).is_none()).cloned().collect();
        let computed = self.integrator.evaluate_nodes(&missing)?;
        let mut fresh = computed.iter();
        let out = nodes
            .iter()
            .map(|n| cached(&n.key).unwrap_or_else(|| fresh.next().expect("one value per missing node").clone()))
            .collect::<Vec<_>>();
        for (n, v) in nodes.iter().zip(&out) {
            if n.farey.p != v.p || n.farey.q != v.q || n.c() != &v.c {
                return Err(Error::CorruptCache {
                    line: 0,
                    reason: format!("record for {} does not match the tree", n.key),
                });
            }
        }
        if let Some(cache) = self.cache.as_mut() {
            cache.append(&computed)?;
        }
        Ok(out)
    }

    pub fn tree_values(&mut self, depth: u32) -> Result<TreeValues> {
        let tree = MarkovTree::build(depth)?;
        let values = self.values(tree.nodes())?;
        TreeValues::new(tree, values)
    }
}

/// Resolves `p/q`, `0`, a tip (`L*`, `R*`), `root` or an `L`/`R` path.
pub fn resolve_node(spec: &str, max_depth: u32) -> Result<TreeNode> {
    let spec = spec.trim();
    if spec == "0" {
        return locate_fraction(0, 1, max_depth);
    }
    if let Some((p, q)) = spec.split_once('/') {
        let parse = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("cannot read {spec:?} as a fraction p/q")))
        };
        return locate_fraction(parse(p)?, parse(q)?, max_depth);
    }
    node_for_key(&spec.parse()?)
}

pub fn cmd_tree(config: &RunConfig, out: &mut dyn Write) -> Result<()> {
    config.validate()?;
    let tree = MarkovTree::build(config.depth)?;
    let rows: Vec<TreeRow> = tree.nodes().iter().map(TreeRow::new).collect();
    match config.format_or(Format::Csv) {
        Format::Csv => write_tree_csv(out, &rows),
        Format::Json => write_json(out, &rows),
        Format::Text => write_tree_text(out, &rows),
    }
}

pub fn cmd_value(session: &mut Session, spec: &str, max_depth: u32, out: &mut dyn Write) -> Result<()> {
    let node = resolve_node(spec, max_depth)?;
    let value = session.values(std::slice::from_ref(&node))?.remove(0);
    let row = ValueRow::new(&value);
    match session.config.format_or(Format::Text) {
        Format::Csv => write_value_csv(out, &[row]),
        Format::Json => write_json(out, &row),
        Format::Text => write_value_text(out, &row),
    }
}

/// All vertices to the configured depth, ordered by `p/q`.
pub fn cmd_table(session: &mut Session, out: &mut dyn Write) -> Result<()> {
    let tv = session.tree_values(session.config.depth)?;
    let mut rows: Vec<(&CycleValue, ValueRow)> = tv.values().iter().map(|v| (v, ValueRow::new(v))).collect();
    rows.sort_by(|a, b| (a.0.p as u128 * b.0.q as u128).cmp(&(b.0.p as u128 * a.0.q as u128)));
    let rows: Vec<ValueRow> = rows.into_iter().map(|(_, r)| r).collect();
    match session.config.format_or(Format::Csv) {
        Format::Csv => write_value_csv(out, &rows),
        Format::Json => write_json(out, &rows),
        Format::Text => {
            writeln!(out, "{:>13}  {:>20}  {:>20}  {:>20}  {:>20}", "p/q", "Re J/q", "Im J/q", "Re j", "Im j")?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>13}  {:>20}  {:>20}  {:>20}  {:>20}",
                    format!("{}/{}", r.p, r.q),
                    sig12(r.jq_re),
                    sig12(r.jq_im),
                    sig12(r.j_re),
                    sig12(r.j_im)
                )?;
            }
            Ok(())
        }
    }
}

fn write_report(out: &mut dyn Write, report: &Report, format: Format) -> Result<()> {
    match format {
        Format::Text => write!(out, "{report}")?,
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for c in &report.checks {
                w.serialize(c)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct InterlaceRow {
    path: String,
    level: u32,
    re_violation: f64,
    im_violation: f64,
    ok: bool,
}

pub fn cmd_interlace(
    session: &mut Session,
    tol: f64,
    mode: InterlaceMode,
    out: &mut dyn Write,
) -> Result<bool> {
    let tv = session.tree_values(session.config.depth)?;
    let rep = check_interlacing(&tv, tv.depth(), tol, mode)?;
    let rows: Vec<InterlaceRow> = rep
        .results
        .iter()
        .map(|r| InterlaceRow {
            path: r.key.to_string(),
            level: r.level,
            re_violation: r.re_violation,
            im_violation: r.im_violation,
            ok: r.ok,
        })
        .collect();
    match session.config.format_or(Format::Text) {
        Format::Text => {
            write!(out, "{}", rep.to_report())?;
            for r in rows.iter().filter(|r| !r.ok) {
                match mode {
                    InterlaceMode::Componentwise => writeln!(
                        out,
                        "  {} (level {}): outside by {:e} (re), {:e} (im)",
                        r.path, r.level, r.re_violation, r.im_violation
                    )?,
                    InterlaceMode::Segment => writeln!(
                        out,
                        "  {} (level {}): {:e} from the segment",
                        r.path, r.level, r.re_violation
                    )?,
                }
            }
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                report: Report,
                nodes: &'a [InterlaceRow],
            }
            write_json(
                out,
                &Doc {
                    report: rep.to_report(),
                    nodes: &rows,
                },
            )?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(rep.passed())
}

#[derive(Serialize)]
struct WindowRow<'a> {
    series: &'a str,
    start: usize,
    end: usize,
    mean: f64,
    target: f64,
    distance: f64,
}

fn window_rows(series: &[&Series]) -> Vec<WindowRow<'static>> {
    series
        .iter()
        .flat_map(|s| {
            s.windows.iter().map(|w| WindowRow {
                series: s.name,
                start: w.start,
                end: w.end,
                mean: w.mean,
                target: s.target,
                distance: w.distance,
            })
        })
        .collect()
}

pub fn cmd_asymptotics(config: &RunConfig, max_q: u64, max_log10_c: u32, out: &mut dyn Write) -> Result<()> {
    let rep = asymptotics_report(max_q, max_log10_c);
    let series = [&rep.q_series, &rep.c_series, &rep.eps_series];
    match config.format_or(Format::Text) {
        Format::Text => {
            writeln!(
                out,
                "{} fractions with q <= {max_q}, {} Markov numbers below 10^{max_log10_c}",
                rep.fraction_count, rep.markov_count
            )?;
            for s in series {
                writeln!(out, "\n{} (target {}), monotone approach: {}", s.name, sig12(s.target), s.monotone())?;
                writeln!(out, "{:>10}  {:>10}  {:>16}  {:>12}", "from", "to", "mean", "distance")?;
                for w in &s.windows {
                    writeln!(
                        out,
                        "{:>10}  {:>10}  {:>16.10}  {:>12.4e}",
                        w.start, w.end, w.mean, w.distance
                    )?;
                }
            }
            writeln!(out)?;
            write!(out, "{}", rep.to_report())?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                fraction_count: usize,
                markov_count: usize,
                windows: Vec<WindowRow<'a>>,
                report: Report,
            }
            write_json(
                out,
                &Doc {
                    fraction_count: rep.fraction_count,
                    markov_count: rep.markov_count,
                    windows: window_rows(&series),
                    report: rep.to_report(),
                },
            )?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in window_rows(&series) {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// The bound chain from the published envelope, or from the envelope of the
/// values computed to the configured depth when `computed` is set.
pub fn cmd_bounds(session: &mut Session, k0: u32, computed: bool, out: &mut dyn Write) -> Result<()> {
    let envelope = if computed {
        let tv = session.tree_values(session.config.depth)?;
        computed_envelope(tv.values(), tv.depth()).expect("tree has tips")
    } else {
        Envelope::PUBLISHED
    };
    let chain = theorem2_constants(k0, envelope)?;
    match session.config.format_or(Format::Text) {
        Format::Text => {
            writeln!(
                out,
                "k0 = {k0}, envelope Re J/q in [{}, {}], Im J/q in [{}, {}]",
                envelope.re_min, envelope.re_max, envelope.im_min, envelope.im_max
            )?;
            for (name, v) in chain.constants() {
                writeln!(out, "{name:<22} {}", sig12(v))?;
            }
        }
        Format::Json => write_json(out, &chain)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["name", "value"])?;
            for (name, v) in chain.constants() {
                w.write_record([name.to_string(), sig12(v)])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub grid: usize,
    pub samples: usize,
    pub seed: u64,
    pub interlace_tol: f64,
    pub delta_slack: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            grid: 200,
            samples: 20_000,
            seed: 1,
            interlace_tol: 1e-9,
            delta_slack: 1e-6,
        }
    }
}

/// Runs every hard check; returns whether all passed.
pub fn cmd_verify(session: &mut Session, opts: VerifyOptions, out: &mut dyn Write) -> Result<bool> {
    let tv = session.tree_values(session.config.depth)?;
    let depth = tv.depth();
    let mut report = Report::default();
    report.extend(check_structure(&tv.tree).to_report());
    report.extend(check_q_recursion(&tv.tree)?.to_report());
    report.extend(check_j_recursion(&tv, depth, opts.delta_slack)?.to_report());
    report.extend(check_interlacing(&tv, depth, opts.interlace_tol, InterlaceMode::Componentwise)?.to_report());
    report.extend(gg_prime_ranges(opts.grid).to_report());
    report.extend(coincidence_bound(&tv.tree, opts.samples, opts.seed)?.to_report());
    report.extend(theorem2_constants(12, Envelope::PUBLISHED)?.to_report());
    write_report(out, &report, session.config.format_or(Format::Text))?;
    Ok(report.passed())
}
