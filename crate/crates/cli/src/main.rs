use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cohomoring::catalog::{default_catalog, ring_checks, sweep, Catalog, Summary};
use cohomoring::cocycles::enumerate_z1;
use cohomoring::cohomology2::{h2_bruteforce, h2_linear, H2Group};
use cohomoring::endo::EndoQN;
use cohomoring::examples::{dihedral_report, ring2_report};
use cohomoring::extension::{AbelianExtension, ExtensionJson};
use cohomoring::group::{cyclic, dihedral, FiniteGroup, GroupJson};
use cohomoring::report::{Check, Status};
use cohomoring::ring::{FiniteRing, RingJson};
use cohomoring::Budget;

/// Endomorphism rings, crossed homomorphisms and low-degree cohomology of
/// finite abelian extensions.
#[derive(Parser)]
#[command(name = "cohomoring", version)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a group.
    Group(GroupArgs),
    /// Describe an extension: action, section, classifying cocycle.
    Extension(ExtArgs),
    /// Count crossed homomorphisms Z^1(G,N) and Z^1(Q,N).
    Z1(ExtArgs),
    /// Compute H^2(Q,N) for the action of an extension.
    H2 {
        #[command(flatten)]
        ext: ExtArgs,
        /// Use the enumerative oracle instead of Smith normal form.
        #[arg(long)]
        brute: bool,
    },
    /// The ring End^Q_N(G) with its ideal and restriction map.
    Endo(ExtArgs),
    /// Check a ring given as JSON tables.
    Ring {
        path: PathBuf,
    },
    /// Verify every sequence on a catalog (the built-in one by default).
    Verify {
        /// Catalog file; the built-in catalog when omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Do not compute H^2(G,N); the last node of the five-term sequence is reported as not checked.
        #[arg(long)]
        skip_h2g: bool,
        /// Write one JSON report per entry into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The worked examples.
    #[command(subcommand)]
    Examples(Example),
}

#[derive(Subcommand)]
enum Example {
    /// D_n as an extension of C2 by C_n (3 <= n <= 64).
    Dihedral { n: usize },
    /// The 432-element ring S ⋊ R over Z/12.
    Ring2,
    /// Print the built-in catalog as JSON.
    Catalog,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long, conflicts_with_all = ["dihedral", "file"])]
    cyclic: Option<usize>,
    #[arg(long, conflicts_with = "file")]
    dihedral: Option<usize>,
    /// Group JSON: order, table, optional generators and labels.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct ExtArgs {
    /// The dihedral extension of C2 by C_n.
    #[arg(long, conflicts_with = "file")]
    dihedral: Option<usize>,
    /// Extension JSON: groups n, g, q and maps i, p.
    #[arg(long)]
    file: Option<PathBuf>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

impl GroupArgs {
    fn load(&self) -> Result<FiniteGroup> {
        Ok(match (self.cyclic, self.dihedral, &self.file) {
            (Some(n), _, _) => cyclic(n)?,
            (_, Some(n), _) => dihedral(n)?,
            (_, _, Some(p)) => FiniteGroup::from_json(&read_json::<GroupJson>(p)?)?,
            _ => bail!("give one of --cyclic, --dihedral or --file"),
        })
    }
}

impl ExtArgs {
    fn load(&self) -> Result<AbelianExtension> {
        Ok(match (self.dihedral, &self.file) {
            (Some(n), _) => AbelianExtension::dihedral(n)?,
            (_, Some(p)) => AbelianExtension::from_json(&read_json::<ExtensionJson>(p)?)?,
            _ => bail!("give one of --dihedral or --file"),
        })
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn print_checks(checks: &[Check]) {
    for c in checks {
        print!("  [{}] {}", c.status, c.name);
        if !c.detail.is_empty() {
            print!(" ({})", c.detail);
        }
        if let Some(w) = &c.witness {
            print!(": {w}");
        }
        println!();
    }
}

fn h2_json(h: &H2Group) -> serde_json::Value {
    json!({
        "invariant_factors": h.invariant_factors(),
        "order": h.order().to_string(),
        "generators": h.generators().iter().map(|g| g.values().to_vec()).collect::<Vec<_>>(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every check that ran passed.
fn run(cli: &Cli) -> Result<bool> {
    let budget = Budget::from_env()?;
    match &cli.command {
        Command::Group(args) => {
            let g = args.load()?;
            let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
            if cli.json {
                print_json(&json!({
                    "order": g.order(),
                    "abelian": g.is_abelian(),
                    "generators": g.generators(),
                    "element_orders": orders,
                    "group": g.to_json(),
                }))?;
            } else {
                println!("order {}", g.order());
                println!("abelian {}", g.is_abelian());
                println!("generators {:?}", g.generators());
                println!("element orders {orders:?}");
            }
            Ok(true)
        }
        Command::Extension(args) => {
            let e = args.load()?;
            let f = e.cocycle();
            if cli.json {
                print_json(&json!({
                    "orders": {"n": e.n.order(), "g": e.g.order(), "q": e.q.order()},
                    "action": e.action.rows(),
                    "section": e.sections(),
                    "cocycle": f.values(),
                    "split": e.is_split(),
                    "extension": e.to_json(),
                }))?;
            } else {
                println!("|N| = {}, |G| = {}, |Q| = {}", e.n.order(), e.g.order(), e.q.order());
                println!("action {:?}", e.action.rows());
                println!("section {:?}", e.sections());
                println!("cocycle {:?}", f.values());
                println!("split {}", e.is_split());
            }
            Ok(true)
        }
        Command::Z1(args) => {
            let e = args.load()?;
            let zg = enumerate_z1(&e.g_action, &budget)?;
            let zq = enumerate_z1(&e.action, &budget)?;
            if cli.json {
                print_json(&json!({
                    "z1_g": zg.iter().map(|c| c.values().to_vec()).collect::<Vec<_>>(),
                    "z1_q": zq.iter().map(|c| c.values().to_vec()).collect::<Vec<_>>(),
                }))?;
            } else {
                println!("|Z^1(G,N)| = {}", zg.len());
                println!("|Z^1(Q,N)| = {}", zq.len());
            }
            Ok(true)
        }
        Command::H2 { ext, brute } => {
            let e = ext.load()?;
            let h = if *brute { h2_bruteforce(&e.action, &budget)? } else { h2_linear(&e.action, &budget)? };
            let class = h.reduce(&e.cocycle())?;
            if cli.json {
                let mut v = h2_json(&h);
                v["extension_class"] = json!(class);
                print_json(&v)?;
            } else {
                println!("H^2(Q,N) invariant factors {:?} (order {})", h.invariant_factors(), h.order());
                println!("class of the extension {class:?}");
            }
            Ok(true)
        }
        Command::Endo(args) => {
            let e = args.load()?;
            let endo = EndoQN::new(&e, &budget)?;
            let checks = endo.ideal_check();
            let ok = checks.iter().all(|c| !c.failed());
            if cli.json {
                print_json(&json!({ "ring": endo.report(), "checks": checks }))?;
            } else {
                let rep = endo.report();
                println!("|End^Q_N(G)| = {}", rep.carrier_size);
                println!("ideal End^(N,Q)(G) = {:?}", rep.ideal);
                println!("automorphisms {}", endo.automorphisms().len());
                print_checks(&checks);
            }
            Ok(ok)
        }
        Command::Ring { path } => {
            let json: RingJson = read_json(path)?;
            let ring = FiniteRing::from_json_unverified(&json)?;
            let checks = ring_checks(&ring, &budget)?;
            if cli.json {
                print_json(&json!({ "order": ring.order(), "checks": checks }))?;
            } else {
                println!("order {}", ring.order());
                print_checks(&checks);
            }
            Ok(checks.iter().all(|c| !c.failed()))
        }
        Command::Verify { catalog, skip_h2g, out } => {
            let cat = match catalog {
                Some(p) => read_json::<Catalog>(p)?,
                None => default_catalog(&budget)?,
            };
            let summary = sweep(&cat, !skip_h2g, &budget);
            if let Some(dir) = out {
                write_reports(dir, &summary)?;
            }
            if cli.json {
                print_json(&summary)?;
            } else {
                print_summary(&summary);
            }
            Ok(summary.all_passed())
        }
        Command::Examples(Example::Dihedral { n }) => {
            let r = dihedral_report(*n, &budget)?;
            if cli.json {
                print_json(&r)?;
            } else {
                let f = |i: usize| format!("f_{},{}", i % n, i / n);
                println!("D{n}: |End_C2(C{n})| = {}, |End^(C2,C{n})(D{n})| = {}, |End^C2_C{n}(D{n})| = {}",
                    r.q_endos, r.ideal, r.endos);
                for (op, table) in [("⊞", &r.boxplus), ("⊠", &r.boxtimes)] {
                    println!("{op} table (rows and columns f_k,l at k + {n} l):");
                    for row in table.iter() {
                        println!("  {}", row.iter().map(|&i| f(i)).collect::<Vec<_>>().join(" "));
                    }
                }
                print_checks(&r.checks);
                for rep in &r.reports {
                    print!("{rep}");
                }
            }
            Ok(r.passed())
        }
        Command::Examples(Example::Ring2) => {
            let r = ring2_report(&budget)?;
            if cli.json {
                print_json(&r)?;
            } else {
                println!("S ⋊ R of order {} (|S| = {}, |R| = {})", r.order, r.s_elements.len(), r.r_elements.len());
                print_checks(&r.checks);
            }
            Ok(r.passed())
        }
        Command::Examples(Example::Catalog) => {
            println!("{}", default_catalog(&budget)?.to_json_string()?);
            Ok(true)
        }
    }
}

fn slug(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
        .collect();
    s.split('-').filter(|p| !p.is_empty()).collect::<Vec<_>>().join("-")
}

fn write_reports(dir: &Path, summary: &Summary) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (k, e) in summary.entries.iter().enumerate() {
        let path = dir.join(format!("{k:03}-{}.json", slug(&e.name)));
        fs::write(&path, serde_json::to_string_pretty(e)?).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn print_summary(summary: &Summary) {
    let width = summary.entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(4).max(4);
    println!("{:width$}  {:9}  status", "name", "kind");
    for e in &summary.entries {
        let pad = width - e.name.chars().count();
        let status = if e.passed { "pass" } else { "FAIL" };
        print!("{}{}  {:9}  {status}", e.name, " ".repeat(pad), e.kind);
        let not_checked = e.reports.iter().flat_map(|r| &r.checks).filter(|c| c.status == Status::NotChecked).count()
            + e.checks.iter().filter(|c| c.status == Status::NotChecked).count();
        if not_checked > 0 {
            print!(" ({not_checked} not checked)");
        }
        if let Some(w) = e.witness.as_ref().or(e.error.as_ref()) {
            print!("  {w}");
        }
        println!();
    }
    println!("{} of {} entries passed", summary.passed, summary.total);
}
