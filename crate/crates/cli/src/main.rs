use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use witt_borel::classify::{self, CensusMode, NormalizeOptions};
use witt_borel::json::{self, AutDoc, ElementDoc, SubalgebraDoc};
use witt_borel::standard::{self, dimension_report};
use witt_borel::{Error, Field, WittAlgebra};

mod suites;

#[derive(Parser, Debug)]
#[command(name = "witt-borel", version, about = "Borel subalgebras of the Jacobson-Witt algebras W(n)")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "WITT_BOREL_THREADS")]
    threads: Option<usize>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub p: u32,
    /// Degree of the ground field over GF(p).
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Permit p = 3.
    #[arg(long)]
    pub allow_small_p: bool,
}

impl AlgebraArgs {
    pub fn algebra(&self) -> Result<WittAlgebra, Failure> {
        if self.p < 3 || !witt_borel::field::is_prime(self.p) {
            return Err(Failure::Input(format!("--p: {} is not an odd prime", self.p)));
        }
        if self.p == 3 && !self.allow_small_p {
            return Err(Failure::Input("--p: p = 3 needs --allow-small-p".into()));
        }
        if self.n == 0 {
            return Err(Failure::Input("--n: must be at least 1".into()));
        }
        let field = Field::new(self.p, self.e).map_err(|e| Failure::Input(format!("--e: {e}")))?;
        WittAlgebra::new(&field, self.n).map_err(|e| Failure::Input(format!("--n: {e}")))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The standard torus t_r.
    ConstructTorus {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, alias = "q")]
        r: usize,
    },
    /// The standard Borel subalgebra B_r.
    ConstructBorel {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, alias = "q")]
        r: usize,
    },
    /// Bracket of two element files.
    Bracket {
        a: PathBuf,
        b: PathBuf,
    },
    /// Iterated p-power of an element file.
    PPower {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Apply an automorphism file to an element or subalgebra file.
    Act {
        #[arg(long)]
        aut: PathBuf,
        input: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: suites::Suite,
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Subalgebra file for the borel suite ("-" for stdin).
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random cases, where the suite uses them.
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
    },
    /// Conjugate a Borel subalgebra onto its standard model.
    Classify {
        #[arg(long)]
        input: PathBuf,
        /// Index r of a standard torus t_r contained in the input.
        #[arg(long)]
        torus: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Census of maximal solvable subalgebras of W(1).
    CensusW1 {
        #[arg(long, default_value_t = 5)]
        p: u32,
        /// Restrict to monomial subspaces; required for p > 5.
        #[arg(long)]
        graded: bool,
        /// Allow p > 5 (graded search).
        #[arg(long)]
        long: bool,
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Dimensions of the standard Borels against the closed formula.
    Dims {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Emit CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NormalizationFailed(_) => Failure::Verification(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn parse_file<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = read_input(path)?;
    json::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Output of a command: JSON or raw text, and whether it passed.
enum Output {
    Json(Value, bool),
    Text(String, bool),
}

fn tagged<T: Serialize>(v: &T) -> Value {
    json::to_tagged(v)
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::ConstructTorus { alg, r } => {
            let alg = alg.algebra()?;
            let t = standard::torus(&alg, r)?;
            let doc = SubalgebraDoc {
                schema: None,
                p: alg.p(),
                e: alg.field().degree(),
                n: alg.n(),
                basis: t.basis.iter().map(ElementDoc::from_element).collect(),
            };
            eprintln!("t_{r} in W({}) over GF({}): dim {}", alg.n(), alg.field().order(), t.basis.len());
            Ok(Output::Json(tagged(&doc), true))
        }
        Command::ConstructBorel { alg, r } => {
            let alg = alg.algebra()?;
            let b = standard::borel(&alg, r)?;
            eprintln!("B_{r} in W({}) over GF({}): dim {}", alg.n(), alg.field().order(), b.dim());
            Ok(Output::Json(tagged(&SubalgebraDoc::from_subalgebra(&b)), true))
        }
        Command::Bracket { a, b } => {
            let da: ElementDoc = parse_file(&a)?;
            let x = da.to_element(None)?;
            let db: ElementDoc = parse_file(&b)?;
            let y = db.to_element(Some(x.algebra()))?;
            let z = x.bracket(&y);
            eprintln!("[{x}, {y}] = {z}");
            Ok(Output::Json(tagged(&ElementDoc::from_element(&z)), true))
        }
        Command::PPower { input, k } => {
            let d: ElementDoc = parse_file(&input)?;
            let x = d.to_element(None)?;
            let z = x.p_power_iter(k);
            eprintln!("({x})^[p^{k}] = {z}");
            Ok(Output::Json(tagged(&ElementDoc::from_element(&z)), true))
        }
        Command::Act { aut, input } => {
            let doc: AutDoc = parse_file(&aut)?;
            let text = read_input(&input)?;
            let raw: Value = json::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
            if raw.get("basis").is_some() {
                let s: SubalgebraDoc = json::parse(&text)?;
                let s = s.to_subalgebra(None)?;
                let sigma = doc.to_aut(Some(s.algebra().ring()))?;
                let img = sigma.induce_subalgebra(&s);
                eprintln!("image subalgebra: dim {}", img.dim());
                Ok(Output::Json(tagged(&SubalgebraDoc::from_subalgebra(&img)), true))
            } else {
                let d: ElementDoc = json::parse(&text)?;
                let x = d.to_element(None)?;
                let sigma = doc.to_aut(Some(x.algebra().ring()))?;
                let img = sigma.induce(&x);
                eprintln!("{x} -> {img}");
                Ok(Output::Json(tagged(&ElementDoc::from_element(&img)), true))
            }
        }
        Command::Verify { suite, alg, input, seed, cases, budget } => {
            let report = suites::run(suite, &alg, input.as_ref(), seed, cases, budget)?;
            for c in &report.checks {
                eprintln!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let pass = report.pass;
            Ok(Output::Json(tagged(&report), pass))
        }
        Command::Classify { input, torus, seed } => {
            let s: SubalgebraDoc = parse_file(&input)?;
            let b = s.to_subalgebra(None)?;
            let opts = NormalizeOptions { seed, ..NormalizeOptions::default() };
            let c = classify::normalize_borel_with(&b, torus, &opts)?;
            eprintln!("class r = {} via {:?} [{}]", c.r, c.route, c.stages.join(", "));
            #[derive(Serialize)]
            struct ClassDoc<'a> {
                r: usize,
                route: &'a classify::Route,
                stages: &'a [String],
                witness: AutDoc,
            }
            let doc = ClassDoc { r: c.r, route: &c.route, stages: &c.stages, witness: AutDoc::from_aut(&c.witness) };
            Ok(Output::Json(tagged(&doc), true))
        }
        Command::CensusW1 { p, graded, long, budget, seed } => {
            if !witt_borel::field::is_prime(p) || p < 5 {
                return Err(Failure::Input(format!("--p: {p} must be a prime at least 5")));
            }
            if p > 5 && !long {
                return Err(Failure::Input(format!("--p: p = {p} is a long run; pass --long")));
            }
            let mode = if graded || p > 5 { CensusMode::Graded } else { CensusMode::Exhaustive };
            let opts = NormalizeOptions { seed, ..NormalizeOptions::default() };
            let rep = classify::census_w1(p, mode, budget, &opts)?;
            eprintln!(
                "W(1), p = {p}, {:?}: {} subspaces, {} closed solvable, {} maximal, {} non-split, {} unresolved",
                mode,
                rep.subspaces_scanned,
                rep.closed_solvable,
                rep.entries.len(),
                rep.non_split,
                rep.unresolved
            );
            for c in &rep.classes {
                eprintln!("  class r = {}: {} subalgebras of dim {}", c.r, c.count, c.dim);
            }
            let pass = rep.pass;
            Ok(Output::Json(tagged(&rep), pass))
        }
        Command::Dims { alg, csv } => {
            let alg = alg.algebra()?;
            let rep = dimension_report(&alg)?;
            for row in &rep.rows {
                eprintln!(
                    "r = {}: computed {} enumerated {} formula {}{}",
                    row.r,
                    row.computed,
                    row.enumerated,
                    row.formula,
                    if row.formula_discrepancy { " (discrepancy)" } else { "" }
                );
            }
            if csv {
                let mut s = String::from("n,p,r,computed,enumerated,formula,formula_discrepancy\n");
                for row in &rep.rows {
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        rep.n, rep.p, row.r, row.computed, row.enumerated, row.formula, row.formula_discrepancy
                    ));
                }
                Ok(Output::Text(s, rep.pass))
            } else {
                let pass = rep.pass;
                Ok(Output::Json(tagged(&rep), pass))
            }
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads: must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
    }
    match run(cli.command) {
        Ok(output) => {
            let (text, pass) = match output {
                Output::Json(v, pass) => (serde_json::to_string_pretty(&v).unwrap() + "\n", pass),
                Output::Text(s, pass) => (s, pass),
            };
            if let Err(e) = emit(cli.out.as_ref(), &text) {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
