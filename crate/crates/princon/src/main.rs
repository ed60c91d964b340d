use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use princon::certificate::{certify, Certificate, Check, Subject};
use princon::corpus::{corpus_checks, run_corpus};
use princon::dot::emit_colored_dot;
use princon::format::{serialize_colored, serialize_lattice, Document};
use princon::report::ReportJson;
use princon_core::congruence::congruence_lattice;
use princon_core::kit::find_s8;
use princon_core::lattice::downset_lattice;
use princon_core::pipeline::assemble;
use princon_core::{FiniteLattice, GadgetS8, Mode};

#[derive(Parser)]
#[command(
    name = "princon",
    version,
    about = "Planar semimodular lattices with a prescribed congruence lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// The file holds the poset P; D is its lattice of down-sets.
    Poset,
    /// The file holds the distributive lattice D itself.
    Lattice,
}

#[derive(Subcommand)]
enum Command {
    /// Build L with Con L isomorphic to D and certify it.
    Construct {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_parser = parse_mode, default_value = "principal")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "poset")]
        kind: Kind,
        /// Gadget file to use instead of searching for one.
        #[arg(long)]
        gadget: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run checks on a lattice file; exits with 0 only if all pass.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        /// D, needed by con-iso and witnesses.
        #[arg(short)]
        d: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "lattice")]
        d_kind: Kind,
        /// A construction report supplying the witness pairs.
        #[arg(long)]
        witnesses: Option<PathBuf>,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "semimodular,planar")]
        checks: Vec<Check>,
        /// Write the certificate (with timings) as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write the congruence lattice of a lattice file.
    Conlat {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Search for the eight-element gadget, or validate a gadget file.
    Gadget {
        #[arg(long, required_unless_present = "input")]
        search: bool,
        #[arg(short, long, conflicts_with = "search")]
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct and certify for every poset up to a size.
    Corpus {
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long, value_parser = parse_mode, default_value = "principal")]
        mode: Mode,
        /// Write the per-case results as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::from_name(s).ok_or_else(|| format!("unknown mode `{s}` (expected planar or principal)"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_order(path: &Path, kind: Kind) -> Result<FiniteLattice> {
    let doc = Document::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(match kind {
        Kind::Poset => downset_lattice(&doc.to_poset()?),
        Kind::Lattice => doc.to_lattice()?,
    })
}

fn load_gadget(path: Option<&Path>) -> Result<GadgetS8> {
    match path {
        None => Ok(find_s8()?),
        Some(p) => {
            let colored = Document::parse(&read(p)?)?.to_colored()?;
            Ok(GadgetS8::from_colored(colored)?)
        }
    }
}

fn print_certificate(cert: &Certificate) {
    for o in &cert.outcomes {
        let verdict = if o.passed { "pass" } else { "FAIL" };
        let ms = o.millis.map(|m| format!(" ({m} ms)")).unwrap_or_default();
        if o.detail.is_empty() {
            println!("{:<12} {verdict}{ms}", o.check.name());
        } else {
            println!("{:<12} {verdict}{ms}  {}", o.check.name(), o.detail);
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Construct {
            input,
            output,
            mode,
            kind,
            gadget,
            dot,
            report,
        } => {
            let start = Instant::now();
            let input_text = read(&input)?;
            let d = load_order(&input, kind)?;
            if !d.is_distributive() {
                bail!("{} does not describe a distributive lattice", input.display());
            }
            let gadget = load_gadget(gadget.as_deref())?;
            let built = assemble(&d, mode, &gadget)?;
            let lattice_text = serialize_colored(&built.lattice);
            write(&output, &lattice_text)?;
            if let Some(path) = dot {
                write(&path, &emit_colored_dot(&built.lattice))?;
            }
            let subject = Subject {
                lattice: built.lattice.lattice(),
                colored: Some(&built.lattice),
                d: Some(&d),
                witnesses: Some(&built.witnesses),
            };
            let mut cert = certify(&subject, corpus_checks(mode))?;
            cert.add_digest("input", input_text.as_bytes());
            cert.add_digest("lattice", lattice_text.as_bytes());
            cert.add_digest("gadget", serialize_colored(gadget.colored()).as_bytes());
            println!(
                "{mode} mode: |P| = {}, |D| = {}, |L| = {}, gadgets = {}, |C| = {}",
                built.poset.len(),
                d.len(),
                built.lattice.len(),
                built.sizes.gadgets,
                built.sizes.c
            );
            print_certificate(&cert);
            println!("total {} ms", start.elapsed().as_millis());
            let passed = cert.passed();
            if let Some(path) = report {
                write(&path, &ReportJson::new(&built, cert).to_json())?;
            }
            Ok(passed)
        }
        Command::Verify {
            input,
            d,
            d_kind,
            witnesses,
            checks,
            report,
        } => {
            let text = read(&input)?;
            let doc = Document::parse(&text).with_context(|| format!("parsing {}", input.display()))?;
            let colored = match doc.colors {
                Some(_) => Some(doc.to_colored()?),
                None => None,
            };
            let plain = match colored {
                Some(_) => None,
                None => Some(doc.to_lattice()?),
            };
            let lattice = colored
                .as_ref()
                .map_or_else(|| plain.as_ref().expect("one of the two"), |c| c.lattice());
            let d_lattice = d.as_deref().map(|p| load_order(p, d_kind)).transpose()?;
            let witness_list = match &witnesses {
                Some(path) => Some(
                    ReportJson::from_json(&read(path)?)
                        .with_context(|| format!("parsing {}", path.display()))?
                        .witnesses(),
                ),
                None => None,
            };
            let subject = Subject {
                lattice,
                colored: colored.as_ref(),
                d: d_lattice.as_ref(),
                witnesses: witness_list.as_deref(),
            };
            let mut cert = certify(&subject, &checks)?;
            cert.add_digest("lattice", text.as_bytes());
            if let Some(path) = &d {
                cert.add_digest("d", read(path)?.as_bytes());
            }
            print_certificate(&cert);
            if let Some(path) = report {
                let mut json = serde_json::to_string_pretty(&cert)?;
                json.push('\n');
                write(&path, &json)?;
            }
            Ok(cert.passed())
        }
        Command::Conlat { input, output } => {
            let doc = Document::parse(&read(&input)?)?;
            let lattice = doc.to_lattice()?;
            let con = congruence_lattice(&lattice);
            let con_lattice = con.to_lattice();
            write(&output, &serialize_lattice(&con_lattice))?;
            println!(
                "|Con L| = {}, join-irreducible congruences = {}, distributive = {}",
                con.len(),
                con.join_irreducibles().len(),
                con_lattice.is_distributive()
            );
            Ok(true)
        }
        Command::Gadget { search, input, output } => {
            let start = Instant::now();
            let gadget = if search {
                load_gadget(None)?
            } else {
                load_gadget(input.as_deref())?
            };
            let text = serialize_colored(gadget.colored());
            match gadget.rank() {
                Some(rank) => println!(
                    "gadget found at position {rank} of 222 ({} skipped for layout) in {} ms",
                    gadget.skipped(),
                    start.elapsed().as_millis()
                ),
                None => println!("gadget file is valid"),
            }
            match output {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Corpus { max, mode, json } => {
            let start = Instant::now();
            let gadget = load_gadget(None)?;
            let summary = run_corpus(max, mode, &gadget)?;
            print!("{}", summary.table());
            println!("total {} ms", start.elapsed().as_millis());
            if let Some(path) = json {
                let mut text = serde_json::to_string_pretty(&summary)?;
                text.push('\n');
                write(&path, &text)?;
            }
            Ok(summary.all_passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
