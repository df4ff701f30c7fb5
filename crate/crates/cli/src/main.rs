//! `wcalc`: enumerate pieces, compute dimensions and closure relations, and
//! run the invariant suites from the command line.
//!
//! Without `--g2` the commands work on the wonderful compactification of the
//! adjoint group of type `--g` with acting triple `--triple`. With `--g2` they
//! work on `G1 x G2` with triples `--triple` (acting) and `--ctriple`
//! (stabilizer).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wcalc_core::cache::GroupCache;
use wcalc_core::pieces_gg::{self, GgPiece, Variant};
use wcalc_core::pieces_wonderful::{Criterion, WonderfulContext};
use wcalc_core::rootdata::RootSystem;
use wcalc_core::triples::{PairContext, Triple};
use wcalc_core::verify::{self, FreshGroups, GroupSource, Scope, Status, Suite};
use wcalc_core::weyl::WeylGroup;

#[derive(Parser, Debug)]
#[command(name = "wcalc", version, about = "Weyl group combinatorics for orbit closures")]
struct Cli {
    /// Directory for cached Weyl group tables; caching is off when unset.
    #[arg(long, env = "WCALC_CACHE", global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all pieces with their dimensions.
    Enumerate {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Dimension of one piece.
    Dim {
        #[command(flatten)]
        ctx: ContextArgs,
        /// `J={1};v1=s2 s1;v2=e`, or `v1=...;v2=...` with --g2.
        #[arg(long)]
        piece: String,
    },
    /// Decide whether `--query` lies in the closure of `--target`.
    Closure {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long)]
        target: String,
        #[arg(long)]
        query: String,
    },
    /// Closure order on all pieces.
    Poset {
        #[command(flatten)]
        ctx: ContextArgs,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Run invariant suites; exits nonzero if any check fails.
    Verify {
        /// Comma-separated suites or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict to one root system; defaults to the standard set.
        #[arg(long)]
        g: Option<String>,
        /// Triple used with --g.
        #[arg(long, default_value = "trivial")]
        triple: String,
    },
    /// Manage the table cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Delete all cached tables.
    Clear,
}

#[derive(Args, Debug, Clone)]
struct ContextArgs {
    /// Root system, e.g. `A2`, `G2`, `A1xA1`.
    #[arg(long)]
    g: String,
    /// Second root system; switches to `G1 x G2` mode.
    #[arg(long)]
    g2: Option<String>,
    /// Acting triple: `trivial`, `diag`, `swap` or a literal.
    #[arg(long, default_value = "trivial")]
    triple: String,
    /// Stabilizer triple in `G1 x G2` mode.
    #[arg(long, default_value = "trivial")]
    ctriple: String,
    /// Closure description in wonderful mode.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    criterion: u8,
    /// Stabilizer sign in `G1 x G2` mode.
    #[arg(long, value_enum, default_value_t = VariantArg::Plus)]
    variant: VariantArg,
    /// Report dimensions of preimages in `G1 x G2`.
    #[arg(long)]
    ambient: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Tsv,
    Json,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum VariantArg {
    Plus,
    Minus,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Plus => Variant::Plus,
            VariantArg::Minus => Variant::Minus,
        }
    }
}

enum Groups {
    Fresh(FreshGroups),
    Cached(GroupCache),
}

impl Groups {
    fn source(&mut self) -> &mut dyn GroupSource {
        match self {
            Groups::Fresh(f) => f,
            Groups::Cached(c) => c,
        }
    }

    fn get(&mut self, system: &str) -> Result<(RootSystem, Arc<WeylGroup>)> {
        let rs = RootSystem::parse(system).with_context(|| format!("root system {system:?}"))?;
        let g = self.source().group(&rs)?;
        Ok((rs, g))
    }

    fn flush_warnings(&mut self) {
        if let Groups::Cached(c) = self {
            for w in c.warnings.drain(..) {
                eprintln!("warning: {w}");
            }
        }
    }
}

enum Mode {
    Wonderful(WonderfulContext, Criterion),
    Pair(PairContext, Variant, bool),
}

fn build_mode(args: &ContextArgs, groups: &mut Groups) -> Result<Mode> {
    let (rs1, g1) = groups.get(&args.g)?;
    match &args.g2 {
        None => {
            let a = Triple::parse(&args.triple, &rs1, &rs1).context("--triple")?;
            let crit = Criterion::from_number(args.criterion).expect("range checked by clap");
            Ok(Mode::Wonderful(WonderfulContext::new(g1, a)?, crit))
        }
        Some(s2) => {
            let (rs2, g2) = groups.get(s2)?;
            let a = Triple::parse(&args.triple, &rs1, &rs2).context("--triple")?;
            let c = Triple::parse(&args.ctriple, &rs1, &rs2).context("--ctriple")?;
            Ok(Mode::Pair(PairContext::new(g1, g2, a, c)?, args.variant.into(), args.ambient))
        }
    }
}

fn gg_dim(ctx: &PairContext, p: GgPiece, variant: Variant, ambient: bool) -> i64 {
    if ambient {
        pieces_gg::ambient_dim(ctx, p, variant)
    } else {
        pieces_gg::dim_gg(ctx, p, variant).total()
    }
}

fn enumerate(mode: &Mode, format: Format) -> Result<String> {
    let mut out = String::new();
    match mode {
        Mode::Wonderful(w, _) => {
            let pieces = w.enumerate();
            match format {
                Format::Tsv => {
                    out.push_str("index\tpiece\tdim\tflag\tfiber\taffine\tstable\n");
                    for (i, &p) in pieces.iter().enumerate() {
                        let d = w.dim_breakdown(p);
                        out.push_str(&format!(
                            "{i}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                            w.format(p),
                            d.total(),
                            d.flag,
                            d.fiber,
                            d.affine,
                            d.stable
                        ));
                    }
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = pieces
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| {
                            serde_json::json!({
                                "id": i, "J": p.j.to_string(), "v1": w.g.format(p.v1),
                                "v2": w.g.format(p.v2), "dim": w.dim(p),
                            })
                        })
                        .collect();
                    out = serde_json::to_string_pretty(&rows)? + "\n";
                }
                Format::Dot => bail!("enumerate supports --format tsv or json"),
            }
        }
        Mode::Pair(ctx, variant, ambient) => {
            let pieces = pieces_gg::enumerate_gg(ctx);
            match format {
                Format::Tsv => {
                    out.push_str("index\tpiece\tdim\tflag\tfiber\taffine\n");
                    for (i, &p) in pieces.iter().enumerate() {
                        let d = pieces_gg::dim_gg(ctx, p, *variant);
                        let total = gg_dim(ctx, p, *variant, *ambient);
                        out.push_str(&format!(
                            "{i}\t{}\t{total}\t{}\t{}\t{}\n",
                            pieces_gg::format_gg(ctx, p),
                            d.flag,
                            d.fiber,
                            d.affine
                        ));
                    }
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = pieces
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| {
                            serde_json::json!({
                                "id": i, "v1": ctx.g1.format(p.v1), "v2": ctx.g2.format(p.v2),
                                "dim": gg_dim(ctx, p, *variant, *ambient),
                            })
                        })
                        .collect();
                    out = serde_json::to_string_pretty(&rows)? + "\n";
                }
                Format::Dot => bail!("enumerate supports --format tsv or json"),
            }
        }
    }
    Ok(out)
}

fn dim(mode: &Mode, piece: &str) -> Result<String> {
    Ok(match mode {
        Mode::Wonderful(w, _) => {
            let p = w.parse(piece)?;
            let d = w.dim_breakdown(p);
            format!(
                "{}\tdim={}\tflag={}\tfiber={}\taffine={}\tstable={}\n",
                w.format(p),
                d.total(),
                d.flag,
                d.fiber,
                d.affine,
                d.stable
            )
        }
        Mode::Pair(ctx, variant, ambient) => {
            let p = pieces_gg::parse_gg(ctx, piece)?;
            let d = pieces_gg::dim_gg(ctx, p, *variant);
            format!(
                "{}\tdim={}\tflag={}\tfiber={}\taffine={}\n",
                pieces_gg::format_gg(ctx, p),
                gg_dim(ctx, p, *variant, *ambient),
                d.flag,
                d.fiber,
                d.affine
            )
        }
    })
}

fn closure(mode: &Mode, target: &str, query: &str) -> Result<String> {
    Ok(match mode {
        Mode::Wonderful(w, crit) => {
            let t = w.parse(target).context("--target")?;
            let q = w.parse(query).context("--query")?;
            match w.closure(*crit, t, q) {
                Some(wt) => format!(
                    "yes\tx={};y={};z={}\n",
                    w.g.format(wt.x),
                    w.g.format(wt.y),
                    w.g.format(wt.z)
                ),
                None => "no\n".into(),
            }
        }
        Mode::Pair(ctx, variant, _) => {
            let t = pieces_gg::parse_gg(ctx, target).context("--target")?;
            let q = pieces_gg::parse_gg(ctx, query).context("--query")?;
            let found = match variant {
                Variant::Plus => pieces_gg::closure_gg(ctx, t, q),
                Variant::Minus => pieces_gg::closure_gg_minus(ctx, t, q),
            };
            match found {
                Some(wt) => format!("yes\tx1={};y1={}\n", ctx.g1.format(wt.x1), ctx.g1.format(wt.y1)),
                None => "no\n".into(),
            }
        }
    })
}

fn poset(mode: &Mode, format: Format) -> Result<String> {
    Ok(match mode {
        Mode::Wonderful(w, crit) => {
            let p = w.poset(*crit)?;
            match format {
                Format::Dot => w.to_dot(&p),
                Format::Tsv => w.to_tsv(&p),
                Format::Json => serde_json::to_string_pretty(&w.to_json(&p))? + "\n",
            }
        }
        Mode::Pair(ctx, variant, ambient) => {
            let p = pieces_gg::gg_poset(ctx, *variant);
            if let Err(e) = p.check_partial_order() {
                bail!("{}", e.describe(|i| pieces_gg::format_gg(ctx, p.nodes[i])));
            }
            let label = |x: &GgPiece| pieces_gg::format_gg(ctx, *x);
            let d = |x: &GgPiece| gg_dim(ctx, *x, *variant, *ambient);
            match format {
                Format::Dot => p.to_dot("closure", label, d),
                Format::Tsv => p.to_tsv(label, d),
                Format::Json => {
                    let js = p.to_json(|x| {
                        serde_json::json!({ "v1": ctx.g1.format(x.v1), "v2": ctx.g2.format(x.v2), "dim": d(x) })
                    });
                    serde_json::to_string_pretty(&js)? + "\n"
                }
            }
        }
    })
}

fn run_verify(groups: &mut Groups, suite: &str, g: Option<&str>, triple: &str) -> Result<bool> {
    let suites = Suite::parse_list(suite)?;
    let scope = match g {
        Some(s) => Scope::single(s, triple),
        None => Scope::standard(),
    };
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    for s in suites {
        for r in verify::run(s, &scope, groups.source())? {
            match r.status {
                Status::Pass => pass += 1,
                Status::Fail => fail += 1,
                Status::Skip => skip += 1,
            }
            writeln!(lock, "{r}")?;
        }
    }
    writeln!(lock, "{pass} passed, {fail} failed, {skip} skipped")?;
    Ok(fail == 0)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut groups = match &cli.cache_dir {
        Some(dir) => Groups::Cached(GroupCache::new(dir)),
        None => Groups::Fresh(FreshGroups::default()),
    };
    let output = match &cli.command {
        Command::Cache { action: CacheAction::Clear } => {
            let Groups::Cached(cache) = &groups else {
                bail!("no cache directory configured; pass --cache-dir or set WCALC_CACHE");
            };
            let n = cache.clear().with_context(|| format!("clearing {}", cache.dir().display()))?;
            format!("removed {n} cache files\n")
        }
        Command::Verify { suite, g, triple } => {
            let ok = run_verify(&mut groups, suite, g.as_deref(), triple)?;
            groups.flush_warnings();
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Enumerate { ctx, format } => enumerate(&build_mode(ctx, &mut groups)?, *format)?,
        Command::Dim { ctx, piece } => dim(&build_mode(ctx, &mut groups)?, piece)?,
        Command::Closure { ctx, target, query } => closure(&build_mode(ctx, &mut groups)?, target, query)?,
        Command::Poset { ctx, format } => poset(&build_mode(ctx, &mut groups)?, *format)?,
    };
    groups.flush_warnings();
    std::io::stdout().write_all(output.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn argument_definitions_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn criterion_is_range_checked() {
        assert!(Cli::try_parse_from(["wcalc", "poset", "--g", "A1", "--criterion", "4"]).is_err());
        let cli = Cli::try_parse_from(["wcalc", "poset", "--g", "A1", "--criterion", "3"]).unwrap();
        assert!(matches!(cli.command, Command::Poset { ctx: ContextArgs { criterion: 3, .. }, .. }));
    }
}
