//! Command-line front end. `main` is a thin wrapper over [`run`].

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::expr::{parse, Evaluator, GRAMMAR};
use crate::harness::examples::ExampleReport;
use crate::harness::{
    build_catalog, counterexample_search, implication_chain, reproduce_examples, run_suite, search_rings,
    Catalog, CatalogParams, ClauseId, ExampleStatus, SearchReport, Status, Sweep, Verdict,
};
use crate::ideal::Ideal;
use crate::properties::{ArithmeticalRoute, ArithmeticalWitness, PropertyReport, PruferRoute};
use crate::records::{render_human, render_machine, Record};
use crate::ring::{join_indices, FiniteRing, Limits, Ring};

#[derive(Parser, Debug)]
#[command(
    name = "amalgam",
    version,
    about = "Finite commutative rings, amalgamations along ideals, and Gaussian/arithmetical/Prüfer checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Include witnesses for failed properties and checks.
    #[arg(long, global = true)]
    pub witness: bool,
    /// Run the polynomial content oracle up to this degree.
    #[arg(long, global = true, value_name = "D")]
    pub oracle_degree: Option<usize>,
    #[arg(long, global = true, value_name = "N", default_value_t = Limits::default().max_ring_size)]
    pub max_ring_size: usize,
    #[arg(long, global = true, value_name = "N", default_value_t = Limits::default().max_lattice_size)]
    pub max_lattice_size: usize,
    /// Worker threads for sweeps; output order does not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// One `key=value` record per line instead of tables.
    #[arg(long, global = true)]
    pub machine: bool,
    /// Report phase timings on standard error.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Property report for one ring.
    Props { expr: String },
    /// Check a clause on one amalgamation or over the catalog.
    #[command(group(ArgGroup::new("target").required(true).args(["expr", "catalog"])))]
    Verify {
        clause: String,
        expr: Option<String>,
        #[arg(long)]
        catalog: bool,
    },
    /// Reproduce the worked examples.
    Examples,
    /// Look for rings separating the three properties.
    Search,
    /// Every clause, example and search over the catalog.
    Suite,
    /// Carrier index to element table.
    Encode { expr: String },
    /// Print the expression grammar.
    Grammar,
}

struct Ctx<'a> {
    opts: &'a Opts,
    limits: Limits,
    timings: Vec<String>,
    clock: Instant,
}

impl Ctx<'_> {
    fn lap(&mut self, phase: &str) {
        if self.opts.timing {
            let secs = self.clock.elapsed().as_secs_f64();
            self.timings.push(format!("timing phase={phase} seconds={secs:.3}"));
            self.clock = Instant::now();
        }
    }

    fn catalog(&mut self) -> Result<Catalog> {
        let params = CatalogParams {
            limits: self.limits,
            ..CatalogParams::default()
        };
        let c = build_catalog(&params)?;
        self.lap("catalog");
        Ok(c)
    }
}

/// Parses `args` (program name first), runs the command, and returns the
/// exit code: 0 clean, 1 violation, 2 usage, parse or cap error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    if matches!(cli.command, Command::Grammar) && !cli.opts.machine {
        return match out.write_all(GRAMMAR.as_bytes()) {
            Ok(()) => 0,
            Err(_) => 2,
        };
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.opts.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return 2;
        }
    };
    let mut ctx = Ctx {
        opts: &cli.opts,
        limits: Limits {
            max_ring_size: cli.opts.max_ring_size,
            max_lattice_size: cli.opts.max_lattice_size,
            ..Limits::default()
        },
        timings: Vec::new(),
        clock: Instant::now(),
    };
    let result = pool.install(|| dispatch(&cli.command, &mut ctx));
    for t in &ctx.timings {
        let _ = writeln!(err, "{t}");
    }
    match result {
        Ok((records, code)) => {
            let text = if cli.opts.machine {
                render_machine(&records)
            } else {
                render_human(&records)
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<(Vec<Record>, i32)> {
    match cmd {
        Command::Props { expr } => props(expr, ctx).map(|r| (r, 0)),
        Command::Verify { clause, expr, catalog } => {
            let clause: ClauseId = clause.parse()?;
            match expr {
                Some(e) if !catalog => verify_one(clause, e, ctx),
                _ => verify_catalog(clause, ctx),
            }
        }
        Command::Examples => {
            let catalog = ctx.catalog()?;
            let reports = reproduce_examples(&catalog)?;
            ctx.lap("examples");
            let failed = reports.iter().any(|r| r.status == ExampleStatus::Failed);
            Ok((example_records(&reports, ctx.opts.witness), failed as i32))
        }
        Command::Search => {
            let catalog = ctx.catalog()?;
            let report = counterexample_search(&search_rings(&catalog), &ctx.limits)?;
            ctx.lap("search");
            Ok((vec![search_record(&report)], 0))
        }
        Command::Suite => {
            let catalog = ctx.catalog()?;
            let report = run_suite(&catalog)?;
            ctx.lap("suite");
            let mut records = vec![Record::new("catalog")
                .with("rings", report.rings)
                .with("modules", catalog.modules.len())
                .with("instances", report.instances)];
            records.extend(report.verdicts.iter().map(verdict_record));
            records.extend(example_records(&report.examples, ctx.opts.witness));
            records.push(search_record(&report.search));
            Ok((records, report.has_violation() as i32))
        }
        Command::Encode { expr } => {
            let ring = Evaluator::new(&ctx.limits).ring(&parse(expr)?)?;
            let records = ring
                .elements()
                .map(|i| Record::new("element").with("index", i).with("element", ring.describe(i)))
                .collect();
            Ok((records, 0))
        }
        Command::Grammar => Ok((
            GRAMMAR
                .lines()
                .map(|l| Record::new("grammar").with("rule", l))
                .collect(),
            0,
        )),
    }
}

/// Generators as indices and as described elements.
fn ideal_text(ring: &FiniteRing, i: &Ideal) -> String {
    let gens = i.generators(ring);
    let described: Vec<String> = gens.iter().map(|&g| ring.describe(g)).collect();
    format!("({}) = <{}>", join_indices(&gens), described.join(", "))
}

fn pair_text(ring: &FiniteRing, (a, b): (usize, usize)) -> String {
    format!("{a}, {b} = {}, {}", ring.describe(a), ring.describe(b))
}

fn props(text: &str, ctx: &mut Ctx) -> Result<Vec<Record>> {
    let ring = Evaluator::new(&ctx.limits).ring(&parse(text)?)?;
    ctx.lap("construct");
    let rep = PropertyReport::compute(&ring, &ctx.limits, ctx.opts.oracle_degree)?;
    ctx.lap("properties");
    let w = ctx.opts.witness;
    let mut r = Record::new("props")
        .with("ring", &rep.ring)
        .with("size", rep.size)
        .with("local", rep.local.is_some())
        .with_opt("maximal_ideal", rep.local.as_ref().map(|m| ideal_text(&ring, m)))
        .with("reduced", rep.reduced)
        .with("field", rep.field)
        .with("total_quotient_ring", rep.total_quotient_ring)
        .with("chain_ring", rep.chain_ring.holds());
    if w {
        r = r.with_opt("chain_ring_witness", rep.chain_ring.witness().map(|&p| pair_text(&ring, p)));
    }
    r = r.with("gaussian", rep.gaussian.holds());
    if let (true, Some(g)) = (w, rep.gaussian.witness()) {
        r = r
            .with("gaussian_witness", pair_text(&ring, g.lifted))
            .with("gaussian_witness_factor", &g.factor);
    }
    r = r.with("arithmetical", rep.arithmetical.outcome.holds()).with(
        "arithmetical_route",
        match rep.arithmetical.route {
            ArithmeticalRoute::Lattice => "lattice",
            ArithmeticalRoute::LocalChainRings => "local-chain-rings",
        },
    );
    if let (true, Some(aw)) = (w, rep.arithmetical.outcome.witness()) {
        r = r.with(
            "arithmetical_witness",
            match aw {
                ArithmeticalWitness::Triple(t) => format!(
                    "I={} J={} K={}: I∩(J+K)={} (I∩J)+(I∩K)={}",
                    ideal_text(&ring, &t.i),
                    ideal_text(&ring, &t.j),
                    ideal_text(&ring, &t.k),
                    ideal_text(&ring, &t.left),
                    ideal_text(&ring, &t.right)
                ),
                ArithmeticalWitness::Incomparable { factor, pair } => {
                    format!("incomparable principal ideals {}, {} in {factor}", pair.0, pair.1)
                }
            },
        );
    }
    r = r
        .with("prufer", rep.prufer.outcome.holds())
        .with(
            "prufer_route",
            match rep.prufer.route {
                PruferRoute::Lattice => "lattice",
                PruferRoute::RegularElements => "regular-elements",
            },
        )
        .with("regular_ideals", rep.prufer.regular_ideals);
    if let (true, Some(i)) = (w, rep.prufer.outcome.witness()) {
        r = r.with("prufer_witness", format!("non-invertible regular ideal {}", ideal_text(&ring, i)));
    }
    if let Some((d, o)) = &rep.oracle {
        r = r.with("oracle_degree", d).with("oracle_gaussian", o.holds());
        if let (true, Some((f, g))) = (w, o.witness()) {
            r = r.with("oracle_witness", format!("f={} g={}", f.to_text(), g.to_text()));
        }
    }
    Ok(vec![r])
}

fn verdict_record(v: &Verdict) -> Record {
    Record::new("verdict")
        .with("clause", v.clause)
        .with("status", v.status)
        .with("checked", v.checked)
        .with("applicable", v.applicable)
        .with("rhs_true", v.rhs_true)
        .with("rhs_false", v.rhs_false)
        .with_opt("witness", v.witness.as_ref())
        .with_opt("reason", v.reason.as_ref())
}

fn exit_for(v: &Verdict) -> i32 {
    (v.status == Status::Violation) as i32
}

fn verify_one(clause: ClauseId, text: &str, ctx: &mut Ctx) -> Result<(Vec<Record>, i32)> {
    let e = parse(text)?;
    let mut ev = Evaluator::new(&ctx.limits);
    if clause == ClauseId::Chain {
        let ring: Ring = ev.ring(&e)?;
        let v = implication_chain(std::slice::from_ref(&ring), &ctx.limits)?;
        ctx.lap("verify");
        return Ok((vec![verdict_record(&v)], exit_for(&v)));
    }
    if !e.is_instance() {
        return Err(Error::InvalidArgument(format!(
            "clause {clause} needs an amalgamation, dup(..) or amalg(..); got {e}"
        )));
    }
    let inst = ev.instance(&e)?;
    ctx.lap("construct");
    let sweep = Sweep::new(std::slice::from_ref(&inst), &[], &ctx.limits);
    let fact = &sweep.facts()[0];
    let eval = crate::harness::evaluate(clause, fact)?;
    let v = sweep.verify(clause)?;
    ctx.lap("verify");
    let mut rec = Record::new("instance")
        .with("instance", &inst.label)
        .with("size", inst.ring.size())
        .with("hypotheses", eval.is_some());
    if let Some(e) = &eval {
        rec = rec.with("holds", e.holds).with("detail", &e.detail);
    }
    Ok((vec![rec, verdict_record(&v)], exit_for(&v)))
}

fn verify_catalog(clause: ClauseId, ctx: &mut Ctx) -> Result<(Vec<Record>, i32)> {
    let catalog = ctx.catalog()?;
    let v = if clause == ClauseId::Chain {
        implication_chain(&catalog.rings, &ctx.limits)?
    } else {
        Sweep::new(&catalog.instances, &catalog.rings, &ctx.limits).verify(clause)?
    };
    ctx.lap("verify");
    Ok((vec![verdict_record(&v)], exit_for(&v)))
}

fn example_records(reports: &[ExampleReport], witness: bool) -> Vec<Record> {
    let mut out: Vec<Record> = reports
        .iter()
        .map(|r| {
            let passed = |c: &[crate::harness::examples::Check]| {
                format!("{}/{}", c.iter().filter(|x| x.passed()).count(), c.len())
            };
            Record::new("example")
                .with("id", r.id)
                .with("status", r.status)
                .with("instance", if r.instance.is_empty() { "-" } else { &r.instance })
                .with("hypotheses", passed(&r.hypotheses))
                .with("conclusions", passed(&r.conclusions))
                .with_opt("note", r.note.as_ref())
        })
        .collect();
    if witness {
        for r in reports {
            for (kind, checks) in [("hypothesis", &r.hypotheses), ("conclusion", &r.conclusions)] {
                for c in checks {
                    out.push(
                        Record::new("check")
                            .with("example", r.id)
                            .with("kind", kind)
                            .with("name", &c.name)
                            .with("expected", c.expected)
                            .with("actual", c.actual)
                            .with("passed", c.passed()),
                    );
                }
            }
        }
    }
    out
}

fn search_record(s: &SearchReport) -> Record {
    Record::new("search")
        .with("rings_searched", s.rings_searched)
        .with("gaussian_not_arithmetical", s.gaussian_not_arithmetical.as_deref().unwrap_or("none"))
        .with("prufer_not_gaussian", s.prufer_not_gaussian.as_deref().unwrap_or("none"))
}

/// In-process invocation returning `(exit code, stdout, stderr)`.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(args, &mut out, &mut err);
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}
