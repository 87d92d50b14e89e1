//! `posetq`: enumerators, comparisons and property checks for labeled
//! posets.  Exit status is 0 on success, 1 when a verification finds a
//! counterexample, and 2 on usage, input or capacity errors.

mod input;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use posetq::families::FPositivityPoset;
use posetq::transforms::is_grbd_reachable_with_cap;
use posetq::verify::{self, Theorem, VerifyOptions};
use posetq::{
    assemble, bar, compare_with, count_linear_extensions, enumerator_f_with, enumerator_m_with, f_positivity_poset,
    greene_shapes, jump_sequence, rbd_certificate, split_on_incomparable, star, write_poset, AssemblyInput,
    BatteryMode, EdgeKind, EnumConfig, Error, Family, LabeledPoset, RbdCertificate, SplitBranch,
};

#[derive(Parser)]
#[command(name = "posetq", version, about = "Quasisymmetric enumerators and positivity comparisons of labeled posets")]
struct Cli {
    /// Worker threads for parallel work (default: one per core).
    #[arg(long, global = true, env = "POSETQ_WORKERS")]
    workers: Option<usize>,

    /// Largest poset expanded in the F basis.
    #[arg(long, global = true, default_value_t = EnumConfig::default().f_cap, value_parser = positive)]
    f_cap: usize,

    /// Largest poset expanded in the M basis.
    #[arg(long, global = true, default_value_t = EnumConfig::default().m_cap, value_parser = positive)]
    m_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the enumerator of each poset in FILE (or of FILE:NAME).
    Enumerate {
        file: String,
        #[arg(long, value_enum, default_value_t = BasisArg::F)]
        basis: BasisArg,
    },
    /// Print jump sequences, Greene shapes and chain statistics.
    Invariants { poset: String },
    /// Decide the relations between two posets and run the necessary-condition battery.
    ///
    /// Posets are given as FILE or FILE:NAME.
    Compare {
        p: String,
        q: String,
        #[arg(long, value_enum, default_value_t = BatteryArg::F)]
        battery: BatteryArg,
    },
    /// Decide whether Q is reachable from P by redundancy-before-deletion.
    Rbd {
        p: String,
        q: String,
        /// Also allow consistent relabelings of P.
        #[arg(long)]
        generalized: bool,
        /// Largest poset for the relabeling search.
        #[arg(long, default_value_t = 10, value_parser = positive)]
        relabel_cap: usize,
    },
    /// Substitute one component per framework label into a framework poset.
    Assemble {
        framework: String,
        /// Component for framework label 1, 2, ... in order.
        #[arg(required = true)]
        components: Vec<String>,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value = "assembled")]
        name: String,
    },
    /// Split the partitions of a poset by comparing two incomparable elements.
    Split {
        poset: String,
        /// Element ids (not labels).
        x: usize,
        y: usize,
    },
    /// Build the F-positivity poset of a classified family.
    Fposet {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Spine length.
        #[arg(long, value_parser = positive)]
        k: usize,
        /// Caterpillar spine edges bottom-up, e.g. `wsw` (default all weak).
        #[arg(long)]
        spine: Option<String>,
        /// Caterpillar leaves.
        #[arg(long, default_value_t = 1)]
        leaves: usize,
        /// Write a DOT digraph to this file (`-` for stdout).
        #[arg(long)]
        dot: Option<String>,
        /// Check every pair against full F-expansions.
        #[arg(long)]
        validate: bool,
    },
    /// Run a property suite; counterexamples are printed as poset stanzas.
    Verify {
        #[arg(long)]
        theorem: Theorem,
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        max_leaves: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Caterpillar suite: only spines without strict edges.
        #[arg(long)]
        weak_spines_only: bool,
        /// Write counterexamples here instead of stdout.
        #[arg(long)]
        counterexamples: Option<String>,
        /// No progress lines on stderr.
        #[arg(long, short)]
        quiet: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    F,
    M,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum BatteryArg {
    F,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    GreeneK1,
    Caterpillar,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn emit(out: Option<&str>, text: &str) -> Result<()> {
    match out {
        None | Some("-") => {
            print!("{text}");
            Ok(())
        }
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {path}")),
    }
}

fn parse_spine(s: &str) -> Result<Vec<EdgeKind>> {
    s.chars()
        .map(|c| match c {
            'w' => Ok(EdgeKind::Weak),
            's' => Ok(EdgeKind::Strict),
            other => bail!("spine letters must be w or s, found `{other}`"),
        })
        .collect()
}

fn enumerate(file: &str, basis: BasisArg, cfg: &EnumConfig) -> Result<()> {
    let posets = input::read_many(file)?;
    for np in &posets {
        if posets.len() > 1 {
            println!("# {}", np.name);
        }
        if basis != BasisArg::M {
            println!("{}", enumerator_f_with(&np.poset, cfg)?);
        }
        if basis != BasisArg::F {
            println!("{}", enumerator_m_with(&np.poset, cfg)?);
        }
    }
    Ok(())
}

fn invariants(spec: &str) -> Result<()> {
    let p = input::poset(spec)?.ensure_labels();
    let stats = p.maximal_chain_edge_stats();
    println!("elements: {}", p.len());
    println!("linear extensions: {}", count_linear_extensions(&p));
    println!("jump: {}", jump_sequence(&p));
    println!("star jump: {}", jump_sequence(&star(&p)));
    println!("bar jump: {}", jump_sequence(&bar(&p)));
    println!("bar star jump: {}", jump_sequence(&star(&bar(&p))));
    println!("max strict edges on a maximal chain: {}", stats.max_strict);
    println!("max weak edges on a maximal chain: {}", stats.max_weak);
    println!("max edges on a maximal chain: {}", stats.max_length);
    // Greene shapes do not depend on the labeling.
    match greene_shapes(&p) {
        Ok(g) => {
            let show = |v: &[usize]| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            println!("greene chain shape: {}", show(&g.chain_shape));
            println!("greene antichain shape: {}", show(&g.antichain_shape));
        }
        Err(e @ Error::SizeCap { .. }) => println!("greene shapes: skipped ({e})"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn rbd(p: &str, q: &str, generalized: bool, cap: usize) -> Result<()> {
    let (p, q) = (input::poset(p)?.ensure_labels(), input::poset(q)?.ensure_labels());
    if generalized {
        match is_grbd_reachable_with_cap(&p, &q, cap)? {
            Some(labels) => {
                println!("GRBD-REACHABLE: true");
                println!("relabeling {}", labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "));
            }
            None => println!("GRBD-REACHABLE: false"),
        }
        return Ok(());
    }
    match rbd_certificate(&p, &q)? {
        RbdCertificate::Reachable { deletions } => {
            println!("RBD-REACHABLE: true");
            for (a, b) in deletions {
                println!("delete {a} {b}");
            }
        }
        RbdCertificate::Unreachable { missing: (a, b) } => {
            println!("RBD-REACHABLE: false");
            println!("missing {a} {b}");
        }
    }
    Ok(())
}

fn assemble_cmd(framework: &str, components: &[String], out: Option<&str>, name: &str) -> Result<()> {
    let framework = input::poset(framework)?;
    let components = components.iter().map(|c| input::poset(c)).collect::<Result<Vec<_>>>()?;
    let a = assemble(&AssemblyInput { framework, components })?;
    let mut text = String::new();
    for (e, (k, l)) in a.pairs.iter().enumerate() {
        text.push_str(&format!("# element {} = ({k},{l})\n", e + 1));
    }
    text.push_str(&write_poset(name, &a.poset));
    emit(out, &text)
}

fn split(spec: &str, x: usize, y: usize, cfg: &EnumConfig) -> Result<()> {
    let np = input::read_one(spec)?;
    let p = np.poset.ensure_labels();
    let s = split_on_incomparable(&p, x, y)?;
    let mut parts = Vec::new();
    for (tag, branch) in [("ge", &s.ge), ("lt", &s.lt)] {
        match branch {
            SplitBranch::Feasible(b) => {
                print!("{}", write_poset(&format!("{}-{tag}", np.name), b));
                parts.push(enumerator_f_with(b, cfg)?);
            }
            SplitBranch::Infeasible => println!("# {tag} branch: bad cycle, not a labeled poset"),
        }
    }
    if parts.len() == 2 {
        let sum = parts[0].add(&parts[1])?;
        println!("# ADDITIVE: {}", sum == enumerator_f_with(&p, cfg)?);
    } else {
        println!("# ADDITIVE: n/a");
    }
    Ok(())
}

fn fposet(
    family: FamilyArg,
    k: usize,
    spine: Option<&str>,
    leaves: usize,
    dot: Option<&str>,
    validate: bool,
    cfg: &EnumConfig,
) -> Result<bool> {
    let family = match family {
        FamilyArg::GreeneK1 => Family::GreeneK1 { k },
        FamilyArg::Caterpillar => {
            let spine_kinds = match spine {
                Some(s) => parse_spine(s)?,
                None => vec![EdgeKind::Weak; k - 1],
            };
            if spine_kinds.len() != k - 1 {
                bail!("a spine of length {k} has {} edges, got {}", k - 1, spine_kinds.len());
            }
            Family::Caterpillar { spine_kinds, leaves }
        }
    };
    let fp: FPositivityPoset = f_positivity_poset(&family)?;
    match dot {
        Some(path) => emit(Some(path), &fp.to_dot())?,
        None => {
            println!("nodes {}", fp.nodes.len());
            for n in &fp.nodes {
                println!("node {}", n.short_label());
            }
            for (a, b) in fp.cover_labels() {
                println!("cover {a} -> {b}");
            }
        }
    }
    if !validate {
        return Ok(true);
    }
    let bad = fp.validate(cfg)?;
    let n = fp.nodes.len();
    eprintln!("validated {} ordered pairs against full expansions: {} disagreements", n * n, bad.len());
    for (i, j) in &bad {
        eprintln!("  containment and <=_F disagree on {} vs {}", fp.nodes[*i], fp.nodes[*j]);
    }
    Ok(bad.is_empty())
}

fn verify_cmd(theorem: Theorem, opts: &VerifyOptions, out: Option<&str>, quiet: bool) -> Result<bool> {
    let progress = |msg: &str| {
        if !quiet {
            eprintln!("[{theorem}] {msg}");
        }
    };
    let summary = verify::run(theorem, opts, &progress)?;
    let text: String = summary.counterexamples.iter().map(|c| c.to_string()).collect();
    if !text.is_empty() {
        emit(out, &text)?;
    }
    if summary.failures as usize > summary.counterexamples.len() {
        eprintln!(
            "[{theorem}] {} counterexamples not shown",
            summary.failures as usize - summary.counterexamples.len()
        );
    }
    println!("{}", summary.machine_line());
    std::io::stdout().flush()?;
    Ok(summary.passed())
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global().context("cannot start worker pool")?;
    }
    let cfg = EnumConfig { f_cap: cli.f_cap, m_cap: cli.m_cap };
    match cli.command {
        Command::Enumerate { file, basis } => enumerate(&file, basis, &cfg)?,
        Command::Invariants { poset } => invariants(&poset)?,
        Command::Compare { p, q, battery } => {
            let mode = match battery {
                BatteryArg::F => BatteryMode::FSupport,
                BatteryArg::M => BatteryMode::MSupport,
            };
            let (p, q): (LabeledPoset, LabeledPoset) = (input::poset(&p)?, input::poset(&q)?);
            print!("{}", compare_with(&p, &q, mode, &cfg)?);
        }
        Command::Rbd { p, q, generalized, relabel_cap } => rbd(&p, &q, generalized, relabel_cap)?,
        Command::Assemble { framework, components, out, name } => {
            assemble_cmd(&framework, &components, out.as_deref(), &name)?
        }
        Command::Split { poset, x, y } => split(&poset, x, y, &cfg)?,
        Command::Fposet { family, k, spine, leaves, dot, validate } => {
            return fposet(family, k, spine.as_deref(), leaves, dot.as_deref(), validate, &cfg)
        }
        Command::Verify {
            theorem,
            max_k,
            max_leaves,
            max_n,
            trials,
            seed,
            weak_spines_only,
            counterexamples,
            quiet,
        } => {
            let opts = VerifyOptions { max_k, max_leaves, max_n, trials, seed, weak_spines_only };
            return verify_cmd(theorem, &opts, counterexamples.as_deref(), quiet);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
