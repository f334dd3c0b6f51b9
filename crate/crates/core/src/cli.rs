//! Batch command interface.
//!
//! Exit codes: 0 for success and true verdicts, 1 for false or negative
//! verdicts, 2 for errors. With `--machine` every report line is a
//! tab-separated record whose first field names the record kind.

use std::fs;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::aperiodic::{self, Status};
use crate::error::{Error, Result};
use crate::graph::{parse_graph_file, parse_graph_text, render_graph, truncate, NGraph};
use crate::ideal::{self, VertexSet};
use crate::kp::{parse_expr, KPElement};
use crate::multidegree::{Color, MultiIndex};
use crate::pathrep::{check_ck, matrix_of, omega_matrix_units, RelationReport, Window};
use crate::ring::{Integers, IntegersMod, Rationals, Ring};

#[derive(Parser, Debug)]
#[command(name = "ngraph", about = "Exact computations for row-finite infinite-rank graphs")]
struct Cli {
    /// Emit tab-separated records instead of prose.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Graph file.
    #[arg(long)]
    graph: String,
    /// Restrict to the colors `1..=k` first.
    #[arg(long, value_name = "K")]
    truncate: Option<Color>,
}

#[derive(Args, Debug)]
struct SetArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Vertex set such as `u,v` or `{u,v}`.
    #[arg(long)]
    set: String,
}

#[derive(Args, Debug)]
struct RingArg {
    /// Coefficient ring: `int`, `rat` or `mod:m`.
    #[arg(long, default_value = "int")]
    ring: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph file and print the validation report.
    Validate(GraphArgs),
    /// List the saturated hereditary vertex sets.
    Ideals(GraphArgs),
    /// Smallest saturated hereditary superset of a vertex set.
    Closure(SetArgs),
    /// Quotient graph by a saturated hereditary set.
    Quotient(SetArgs),
    /// Decide whether the ideal of a saturated hereditary set is regular.
    Regular(SetArgs),
    /// Search for aperiodicity witnesses.
    Aperiodic {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_name = "IDX")]
        pair_cap: MultiIndex,
        #[arg(long, value_name = "IDX")]
        bound: MultiIndex,
    },
    /// Search for a separating path at a vertex.
    Separate {
        #[command(flatten)]
        graph: GraphArgs,
        vertex: String,
        level: MultiIndex,
        #[arg(long, value_name = "IDX")]
        bound: MultiIndex,
    },
    /// Evaluate an algebra element.
    KpEval {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        ring: RingArg,
        expr: String,
    },
    /// Decide equality of two algebra elements.
    KpEqual {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        ring: RingArg,
        left: String,
        right: String,
    },
    /// Check the relations in the finite path representation, or print the
    /// action matrix of an element.
    RepCheck {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        ring: RingArg,
        #[arg(long, value_name = "IDX")]
        cap: MultiIndex,
        expr: Option<String>,
    },
    /// Check matrix units in the grid graph over a cap.
    OmegaCheck {
        #[arg(long, value_name = "IDX")]
        cap: MultiIndex,
    },
    /// Print the canonical form of a graph file.
    Render(GraphArgs),
}

/// Collected output lines; each line has a prose and a record form.
struct Out {
    machine: bool,
    text: String,
}

impl Out {
    fn line(&mut self, human: impl AsRef<str>, record: &[&str]) {
        if self.machine {
            self.text.push_str(&record.join("\t"));
        } else {
            self.text.push_str(human.as_ref());
        }
        self.text.push('\n');
    }

    fn human(&mut self, human: impl AsRef<str>) {
        if !self.machine {
            self.text.push_str(human.as_ref());
            self.text.push('\n');
        }
    }

    fn record(&mut self, record: &[&str]) {
        if self.machine {
            self.text.push_str(&record.join("\t"));
            self.text.push('\n');
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code with everything that should be printed.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let mut out = Out {
        machine: cli.machine,
        text: String::new(),
    };
    match execute(cli.command, &mut out) {
        Ok(code) => (code, out.text),
        Err(e) => {
            let msg = e.to_string();
            if out.machine {
                out.text.push_str(&format!("error\t{}\n", msg.replace('\n', " | ")));
            } else {
                out.text.push_str(&format!("error: {msg}\n"));
            }
            (2, out.text)
        }
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {path}: {e}")))
}

fn load(args: &GraphArgs) -> Result<Arc<NGraph>> {
    let g = parse_graph_file(&read(&args.graph)?)?;
    Ok(Arc::new(match args.truncate {
        Some(k) => truncate(&g, k),
        None => g,
    }))
}

fn load_set(args: &SetArgs) -> Result<(Arc<NGraph>, VertexSet)> {
    let g = load(&args.graph)?;
    let h = VertexSet::parse(&g, &args.set)?;
    Ok((g, h))
}

enum AnyRing {
    Int(Integers),
    Rat(Rationals),
    Mod(IntegersMod),
}

fn parse_ring(text: &str) -> Result<AnyRing> {
    match text {
        "int" => Ok(AnyRing::Int(Integers)),
        "rat" => Ok(AnyRing::Rat(Rationals)),
        _ => {
            let m = text
                .strip_prefix("mod:")
                .and_then(|m| m.parse::<u64>().ok())
                .ok_or_else(|| Error::Usage(format!("unknown ring `{text}`; expected int, rat or mod:m")))?;
            Ok(AnyRing::Mod(IntegersMod::new(m)?))
        }
    }
}

macro_rules! with_ring {
    ($ring:expr, $r:ident => $body:expr) => {
        match parse_ring($ring)? {
            AnyRing::Int($r) => $body,
            AnyRing::Rat($r) => $body,
            AnyRing::Mod($r) => $body,
        }
    };
}

fn execute(command: Command, out: &mut Out) -> Result<i32> {
    match command {
        Command::Validate(args) => {
            let g = parse_graph_text(&read(&args.graph)?)?;
            let g = match args.truncate {
                Some(k) => truncate(&g, k),
                None => g,
            };
            let report = g.validate();
            for c in &report.checks {
                let status = if c.skipped.is_some() {
                    "skip"
                } else if c.passed() {
                    "ok"
                } else {
                    "fail"
                };
                out.record(&["check", &c.name, status]);
                for f in &c.failures {
                    out.record(&["failure", &c.name, f]);
                }
            }
            out.human(report.to_string());
            let verdict = if report.passed() { "valid" } else { "invalid" };
            out.record(&["verdict", verdict]);
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Ideals(args) => {
            let g = load(&args)?;
            let lattice = ideal::enumerate_lattice(&g);
            for h in &lattice {
                let s = h.render(&g);
                out.line(&s, &["set", &s]);
            }
            let n = lattice.len().to_string();
            out.line(format!("{n} saturated hereditary sets"), &["count", &n]);
            Ok(0)
        }
        Command::Closure(args) => {
            let (g, h) = load_set(&args)?;
            let c = ideal::closure(&g, &h).render(&g);
            out.line(&c, &["closure", &c]);
            Ok(0)
        }
        Command::Quotient(args) => {
            let (g, h) = load_set(&args)?;
            let q = ideal::quotient(&g, &h)?;
            let text = render_graph(&q);
            if out.machine {
                for l in text.lines() {
                    out.record(&["graph", l]);
                }
            } else {
                out.text.push_str(&text);
            }
            Ok(0)
        }
        Command::Regular(args) => {
            let (g, h) = load_set(&args)?;
            let dp = ideal::double_perp(&g, &h)?;
            let perp = ideal::perp(&g, &h)?.render(&g);
            let dps = dp.render(&g);
            let regular = dp == h;
            let verdict = if regular { "regular" } else { "not regular" };
            out.line(format!("{verdict}: double-perp = {dps}"), &["verdict", verdict, &dps]);
            out.record(&["perp", &perp]);
            Ok(if regular { 0 } else { 1 })
        }
        Command::Aperiodic { graph, pair_cap, bound } => {
            let g = load(&graph)?;
            let verdict = aperiodic::is_aperiodic(&g, &pair_cap, &bound)?;
            let mut rows: Vec<_> = verdict
                .witnesses
                .iter()
                .map(|(k, p)| (k.clone(), Some(p.clone())))
                .chain(verdict.unresolved.iter().map(|k| (k.clone(), None)))
                .collect();
            rows.sort_by(|a, b| a.0.cmp(&b.0));
            for ((v, m, n), p) in rows {
                let (vn, ms, ns) = (g.vertex_name(v), m.to_string(), n.to_string());
                let w = p.map_or("unknown".to_string(), |p| g.render_path(&p));
                out.line(format!("{vn} {ms} {ns} -> {w}"), &["pair", vn, &ms, &ns, &w]);
            }
            let (text, code) = match verdict.status {
                Status::AperiodicWitnessed => ("aperiodic: witnessed", 0),
                Status::UnknownWithinBound => ("unknown within bound", 1),
            };
            out.line(text, &["verdict", text]);
            Ok(code)
        }
        Command::Separate {
            graph,
            vertex,
            level,
            bound,
        } => {
            let g = load(&graph)?;
            let v = g.vertex(&vertex)?;
            match aperiodic::separating_path(&g, v, &level, &bound)? {
                Some(p) => {
                    let s = g.render_path(&p);
                    out.line(format!("separating path: {s}"), &["separating", &s]);
                    Ok(0)
                }
                None => {
                    out.line("unknown within bound", &["verdict", "unknown within bound"]);
                    Ok(1)
                }
            }
        }
        Command::KpEval { graph, ring, expr } => {
            let g = load(&graph)?;
            with_ring!(&ring.ring, r => kp_eval(g, r, &expr, out))
        }
        Command::KpEqual {
            graph,
            ring,
            left,
            right,
        } => {
            let g = load(&graph)?;
            with_ring!(&ring.ring, r => kp_equal(g, r, &left, &right, out))
        }
        Command::RepCheck { graph, ring, cap, expr } => {
            let g = load(&graph)?;
            match expr {
                None => Ok(report(&check_ck(g, &cap)?, out)),
                Some(e) => with_ring!(&ring.ring, r => rep_matrix(g, r, &cap, &e, out)),
            }
        }
        Command::OmegaCheck { cap } => Ok(report(&omega_matrix_units(&cap)?, out)),
        Command::Render(args) => {
            let g = load(&args)?;
            let text = render_graph(&g);
            if out.machine {
                for l in text.lines() {
                    out.record(&["graph", l]);
                }
            } else {
                out.text.push_str(&text);
            }
            Ok(0)
        }
    }
}

fn kp_eval<R: Ring>(g: Arc<NGraph>, ring: R, expr: &str, out: &mut Out) -> Result<i32> {
    let x = parse_expr(g, ring, expr)?;
    let terms = x.render();
    out.line(format!("terms: {terms}"), &["terms", &terms]);
    match x.normal_form() {
        Ok(nf) => {
            let s = nf.render();
            out.line(format!("normal form: {s}"), &["normal", &s]);
        }
        Err(Error::SourcesPresent) => {
            out.line(
                "normal form: unavailable (graph has sources)",
                &["normal", "unavailable"],
            );
        }
        Err(e) => return Err(e),
    }
    let support: Vec<String> = x.degree_support().iter().map(ToString::to_string).collect();
    let s = support.join(" ");
    out.line(format!("support: {s}"), &["support", &s]);
    Ok(0)
}

fn kp_equal<R: Ring>(g: Arc<NGraph>, ring: R, left: &str, right: &str, out: &mut Out) -> Result<i32> {
    let x: KPElement<R> = parse_expr(g.clone(), ring.clone(), left)?;
    let y = parse_expr(g, ring, right)?;
    let diff = x.sub(&y)?.normal_form()?;
    if diff.is_zero() {
        out.line("equal", &["verdict", "equal"]);
        Ok(0)
    } else {
        let d = diff.render();
        out.line(format!("not equal: difference = {d}"), &["verdict", "not equal", &d]);
        Ok(1)
    }
}

fn rep_matrix<R: Ring>(g: Arc<NGraph>, ring: R, cap: &MultiIndex, expr: &str, out: &mut Out) -> Result<i32> {
    let x = parse_expr(g.clone(), ring.clone(), expr)?;
    let w = Window::new(g, cap.clone())?;
    let m = matrix_of(&x, &w)?;
    let text = m.render_triplets(&w, &ring);
    if out.machine {
        for l in text.lines() {
            let fields: Vec<&str> = l.split(' ').collect();
            let mut record = vec!["matrix"];
            record.extend(fields);
            out.record(&record);
        }
    } else {
        out.text.push_str(&text);
    }
    Ok(0)
}

fn report(r: &RelationReport, out: &mut Out) -> i32 {
    out.human(r.to_string());
    for c in &r.checks {
        let status = match (&c.skipped, c.passed()) {
            (Some(_), _) => "skip",
            (None, true) => "ok",
            (None, false) => "fail",
        };
        out.record(&[&c.name, status, &c.instances.to_string(), &c.columns.to_string()]);
        for f in &c.failures {
            out.record(&["failure", &c.name, f]);
        }
    }
    out.record(&["verdict", if r.passed() { "pass" } else { "fail" }]);
    if r.passed() {
        0
    } else {
        1
    }
}
