//! Command-line front end for diagram invariants: per-file reports,
//! corpus-wide verification suites, batch processing, and Gauss-code
//! conversion. All output is deterministic for fixed inputs, flags, and
//! seeds; exit codes are 0 (success), 1 (verification failure), 2 (input
//! error).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use vlk::alexander::{
    alexander_matrix, alexander_polynomial, alexander_polynomial_mod_p, ideal_generators, wirtinger,
};
use vlk::conway::{
    conway_matrix, kink_factor, skein_residual, skein_triple, switch_profile, z_normalized,
    z_polynomial, z_prime,
};
use vlk::moves::{random_walk_capped, MoveSite, R1Variant};
use vlk::report::{alexander_report, conway_report, AlexanderReport, ConwayReport};
use vlk::rng::Lcg64;
use vlk::{parse_gauss, parse_vld, random_code, serialize_vld, DiagramCode, EdgeLabel};

#[derive(Parser)]
#[command(
    name = "vlk",
    version,
    about = "Exact polynomial invariants of virtual link diagrams",
    long_about = "Computes the two-variable determinant polynomial Z(x,y), its normalized and \
                  t-substituted forms, and Wirtinger/Fox Alexander invariants of virtual link \
                  diagrams given as crossing codes (VLD files) or Gauss codes. Randomized \
                  commands are driven by a seeded 64-bit linear congruential generator, so every \
                  run is reproducible from its flags."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    /// Line-oriented human-readable report
    #[default]
    Text,
    /// One compact JSON record per input file (newline-delimited)
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Residual of the t-form skein relation vanishes at every classical
    /// crossing of seeded random codes and all fixtures
    Skein,
    /// Normalized Z and unit-normalized Alexander polynomial survive seeded
    /// random move walks; kink insertions scale det(M-P) by exactly
    /// {-1, -1, -x, -x^-1}
    Moves,
    /// Z vanishes under y = -x and y = -1, and Z(1,y) is blind to every
    /// crossing-switch pattern
    Evals,
    /// Z of a disjoint union equals the product of the parts, exactly
    Union,
    /// Classical skein consistency of Alexander polynomials: holds on
    /// classical triples, fails on the virtualized Hopf triple
    AlexSkein,
}

#[derive(Subcommand)]
enum Cmd {
    /// Two-variable determinant polynomial and its evaluations
    Conway {
        /// Diagram files (.vld crossing codes; .gauss Gauss codes)
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Wirtinger presentation, Fox matrix, ideal, and Alexander polynomials
    Alexander {
        /// Diagram files (.vld crossing codes; .gauss Gauss codes)
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Moduli for the refined gcds, comma-separated primes
        #[arg(long, value_delimiter = ',', default_values_t = vec![2u64, 3, 5])]
        primes: Vec<u64>,
    },
    /// Run a corpus-wide verification suite (exit 1 on any failure)
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Seed for the random corpus / walks
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random instances to draw (defaults: skein 200, moves 100,
        /// evals 100, union 50; alex-skein takes none)
        #[arg(long)]
        iterations: Option<usize>,
    },
    /// Process every diagram listed in a manifest, one JSON record per line
    Batch {
        /// File listing diagram paths, one per line ('#' comments allowed)
        manifest: PathBuf,
    },
    /// Convert a Gauss code (literal argument or file path) to VLD text
    Gauss2vld { input: String },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Conway { paths, format } => cmd_conway(&paths, format),
        Cmd::Alexander {
            paths,
            format,
            primes,
        } => cmd_alexander(&paths, format, &primes),
        Cmd::Verify {
            suite,
            seed,
            iterations,
        } => Ok(cmd_verify(suite, seed, iterations)),
        Cmd::Batch { manifest } => cmd_batch(&manifest),
        Cmd::Gauss2vld { input } => cmd_gauss2vld(&input),
    }
}

fn load_code(path: &Path) -> Result<DiagramCode, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let is_gauss = path.extension().is_some_and(|e| e == "gauss");
    if is_gauss {
        parse_gauss(text.trim()).map_err(|e| format!("{}: {e}", path.display()))
    } else {
        parse_vld(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

// ---- conway ----

#[derive(Serialize)]
struct FileRecord<T: Serialize> {
    file: String,
    #[serde(flatten)]
    body: T,
}

fn conway_text(path: &str, code: &DiagramCode) -> String {
    let z = z_polynomial(code);
    let mut s = String::new();
    let _ = writeln!(s, "# {path}");
    let _ = writeln!(s, "writhe: {}", code.writhe());
    let _ = writeln!(s, "components: {}", code.components().count());
    let _ = writeln!(s, "conway: {}", z.to_canonical_with("x", "y"));
    let _ = writeln!(
        s,
        "conway_normalized: {}",
        z_normalized(&z).to_canonical_with("x", "y")
    );
    let _ = writeln!(
        s,
        "conway_tform: {}",
        z_prime(code).to_canonical_with("t", "y")
    );
    let _ = writeln!(s, "eval_x1: {}", z.eval_x_1().to_canonical_with("y"));
    let _ = writeln!(s, "vanishes_y_eq_minus_x: {}", z.eval_y_minus_x().is_zero());
    let _ = writeln!(s, "vanishes_y_eq_minus_1: {}", z.eval_y_minus_1().is_zero());
    s
}

fn cmd_conway(paths: &[PathBuf], format: Format) -> Result<ExitCode, String> {
    let mut out = String::new();
    for (i, path) in paths.iter().enumerate() {
        let code = load_code(path)?;
        let name = path.display().to_string();
        match format {
            Format::Text => {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&conway_text(&name, &code));
            }
            Format::Json => {
                let rec = FileRecord {
                    file: name,
                    body: conway_report(&code),
                };
                out.push_str(&serde_json::to_string(&rec).expect("serializable"));
                out.push('\n');
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

// ---- alexander ----

fn word_text(word: &[(usize, i8)], generators: &[EdgeLabel]) -> String {
    let mut s = String::new();
    for (i, &(g, e)) in word.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{}", generators[g]);
        if e < 0 {
            s.push_str("^-1");
        }
    }
    s
}

fn alexander_text(path: &str, code: &DiagramCode, primes: &[u64]) -> Result<String, String> {
    let pres = wirtinger(code);
    let m = alexander_matrix(code);
    let mut s = String::new();
    let _ = writeln!(s, "# {path}");
    let gens: Vec<String> = pres.generators.iter().map(|g| g.to_string()).collect();
    let _ = writeln!(s, "generators: {}", gens.join(" "));
    for w in &pres.relators {
        let _ = writeln!(s, "relator: {}", word_text(w, &pres.generators));
    }
    let _ = writeln!(s, "matrix:");
    for row in &m.rows {
        let cells: Vec<String> = row.iter().map(|e| e.to_canonical_with("t")).collect();
        let _ = writeln!(s, "  [{}]", cells.join(", "));
    }
    let ideal: Vec<String> = ideal_generators(code)
        .iter()
        .map(|g| g.to_canonical_with("t"))
        .collect();
    let _ = writeln!(s, "ideal: {}", ideal.join("; "));
    let _ = writeln!(
        s,
        "alexander: {}",
        alexander_polynomial(code).to_canonical_with("t")
    );
    for &p in primes {
        let g = alexander_polynomial_mod_p(code, p).map_err(|e| e.to_string())?;
        let _ = writeln!(s, "alexander_mod_{p}: {}", g.to_canonical_with("t"));
    }
    Ok(s)
}

fn cmd_alexander(paths: &[PathBuf], format: Format, primes: &[u64]) -> Result<ExitCode, String> {
    let mut out = String::new();
    for (i, path) in paths.iter().enumerate() {
        let code = load_code(path)?;
        let name = path.display().to_string();
        match format {
            Format::Text => {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&alexander_text(&name, &code, primes)?);
            }
            Format::Json => {
                let body = alexander_report(&code, primes).map_err(|e| e.to_string())?;
                let rec = FileRecord { file: name, body };
                out.push_str(&serde_json::to_string(&rec).expect("serializable"));
                out.push('\n');
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

// ---- verify ----

struct Failures {
    lines: Vec<String>,
}

impl Failures {
    fn new() -> Self {
        Failures { lines: Vec::new() }
    }

    fn report(&mut self, headline: String, code: &DiagramCode, detail: String) {
        let mut s = headline;
        s.push('\n');
        for line in serialize_vld(code).lines() {
            s.push_str("    ");
            s.push_str(line);
            s.push('\n');
        }
        s.push_str("    ");
        s.push_str(&detail);
        self.lines.push(s);
    }

    fn finish(self, suite: &str, summary: String) -> ExitCode {
        if self.lines.is_empty() {
            println!("{suite}: {summary}: PASS");
            ExitCode::SUCCESS
        } else {
            for f in &self.lines {
                println!("{suite}: FAIL {f}");
            }
            println!("{suite}: {} failure(s): FAIL", self.lines.len());
            ExitCode::from(1)
        }
    }
}

fn split_seed(rng: &mut Lcg64) -> u64 {
    ((rng.next_u32() as u64) << 32) | rng.next_u32() as u64
}

/// Fixture corpus for the verification suites, in a fixed order.
fn fixture_corpus() -> Vec<(&'static str, DiagramCode)> {
    vec![
        ("vt", vlk::fixtures::vt()),
        ("vh", vlk::fixtures::vh()),
        ("kink", vlk::fixtures::kink()),
        ("tref", vlk::fixtures::tref()),
        ("hopf", vlk::fixtures::hopf()),
        ("r2pair", vlk::fixtures::r2pair()),
        ("fig8", vlk::fixtures::fig8()),
    ]
}

fn cmd_verify(suite: Suite, seed: u64, iterations: Option<usize>) -> ExitCode {
    match suite {
        Suite::Skein => verify_skein(seed, iterations.unwrap_or(200)),
        Suite::Moves => verify_moves(seed, iterations.unwrap_or(100)),
        Suite::Evals => verify_evals(seed, iterations.unwrap_or(100)),
        Suite::Union => verify_union(seed, iterations.unwrap_or(50)),
        Suite::AlexSkein => verify_alex_skein(),
    }
}

fn verify_skein(seed: u64, iterations: usize) -> ExitCode {
    let mut rng = Lcg64::new(seed);
    let mut corpus: Vec<DiagramCode> = fixture_corpus().into_iter().map(|(_, c)| c).collect();
    for _ in 0..iterations {
        let n = 1 + rng.below(6);
        corpus.push(random_code(n, split_seed(&mut rng)));
    }
    let mut failures = Failures::new();
    let mut sites = 0usize;
    for code in &corpus {
        for i in 0..code.n_crossings() {
            sites += 1;
            let r = skein_residual(code, i).expect("crossing index in range");
            if !r.is_zero() {
                failures.report(
                    format!("skein residual nonzero at crossing {i} of:"),
                    code,
                    format!("residual: {}", r.to_canonical_with("t", "y")),
                );
            }
        }
    }
    failures.finish(
        "skein",
        format!("{} codes, {sites} crossing sites", corpus.len()),
    )
}

fn verify_moves(seed: u64, iterations: usize) -> ExitCode {
    let mut failures = Failures::new();

    // Kink insertions must scale the raw determinant by exactly the four
    // advertised units: -1 twice, -x, and -x^-1.
    let vt = vlk::fixtures::vt();
    let base_det = conway_matrix(&vt).determinant();
    let mut observed = Vec::new();
    for variant in R1Variant::ALL {
        let site = MoveSite::R1Add {
            strand: EdgeLabel::new("e1").expect("valid label"),
            variant,
        };
        let kinked = vlk::moves::apply_move(&vt, &site).expect("kink site applies");
        let factor = conway_matrix(&kinked).determinant().div_exact(&base_det);
        if factor != kink_factor(variant.sign, variant.over_first) {
            failures.report(
                format!("kink factor mismatch for variant {}:", variant.token()),
                &kinked,
                format!("observed: {}", factor.to_canonical_with("x", "y")),
            );
        }
        observed.push(factor.to_canonical_with("x", "y"));
    }
    observed.sort();
    let expected = {
        let mut e = vec![
            "-1".to_string(),
            "-1".to_string(),
            "-1*x".to_string(),
            "-1*x^-1".to_string(),
        ];
        e.sort();
        e
    };
    if observed != expected {
        failures.report(
            format!(
                "kink factor set {{{}}} differs from expected:",
                observed.join(", ")
            ),
            &vt,
            format!("expected: {{{}}}", expected.join(", ")),
        );
    }

    // Random walks: both invariants must come back unchanged.
    let mut rng = Lcg64::new(seed);
    let bases = fixture_corpus();
    let mut walked_moves = 0usize;
    for k in 0..iterations {
        let (_, base) = &bases[k % bases.len()];
        let walk = random_walk_capped(base, 50, split_seed(&mut rng), base.n_crossings() + 16);
        walked_moves += walk.log.len();
        let z_base = z_normalized(&z_polynomial(base));
        let z_walk = z_normalized(&z_polynomial(&walk.code));
        if z_base != z_walk {
            failures.report(
                format!("normalized Z changed after walk {k}:"),
                &walk.code,
                format!(
                    "got: {} want: {}",
                    z_walk.to_canonical_with("x", "y"),
                    z_base.to_canonical_with("x", "y")
                ),
            );
        }
        let a_base = alexander_polynomial(base).normalize_units();
        let a_walk = alexander_polynomial(&walk.code).normalize_units();
        if a_base != a_walk {
            failures.report(
                format!("Alexander polynomial changed after walk {k}:"),
                &walk.code,
                format!(
                    "got: {} want: {}",
                    a_walk.to_canonical_with("t"),
                    a_base.to_canonical_with("t")
                ),
            );
        }
    }
    failures.finish(
        "moves",
        format!("4 kink factors, {iterations} walks ({walked_moves} moves applied)"),
    )
}

fn verify_evals(seed: u64, iterations: usize) -> ExitCode {
    let mut rng = Lcg64::new(seed);
    let mut corpus: Vec<DiagramCode> = fixture_corpus().into_iter().map(|(_, c)| c).collect();
    for _ in 0..iterations {
        let n = 1 + rng.below(6);
        corpus.push(random_code(n, split_seed(&mut rng)));
    }
    let mut failures = Failures::new();
    for code in &corpus {
        let z = z_polynomial(code);
        if !z.eval_y_minus_x().is_zero() {
            failures.report(
                "Z does not vanish under y = -x for:".to_string(),
                code,
                format!("Z: {}", z.to_canonical_with("x", "y")),
            );
        }
        if !z.eval_y_minus_1().is_zero() {
            failures.report(
                "Z does not vanish under y = -1 for:".to_string(),
                code,
                format!("Z: {}", z.to_canonical_with("x", "y")),
            );
        }
    }
    // Switch-pattern blindness of Z(1,y) on the fixtures.
    let mut patterns = 0usize;
    for (name, code) in fixture_corpus() {
        let n = code.n_crossings();
        let base = switch_profile(&code);
        for mask in 1u32..(1 << n) {
            patterns += 1;
            let mut switched = code.clone();
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    switched = switched.switch_crossing(i).expect("index in range");
                }
            }
            let got = switch_profile(&switched);
            if got != base {
                failures.report(
                    format!("Z(1,y) moved under switch pattern {mask:#b} of {name}:"),
                    &switched,
                    format!(
                        "got: {} want: {}",
                        got.to_canonical_with("y"),
                        base.to_canonical_with("y")
                    ),
                );
            }
        }
    }
    failures.finish(
        "evals",
        format!(
            "{} codes under both evaluations, {patterns} switch patterns",
            corpus.len()
        ),
    )
}

fn verify_union(seed: u64, iterations: usize) -> ExitCode {
    let mut rng = Lcg64::new(seed);
    let mut corpus: Vec<DiagramCode> = fixture_corpus().into_iter().map(|(_, c)| c).collect();
    for _ in 0..iterations {
        let n = 1 + rng.below(5);
        corpus.push(random_code(n, split_seed(&mut rng)));
    }
    let mut failures = Failures::new();
    for _ in 0..iterations {
        let a = &corpus[rng.below(corpus.len())];
        let b = &corpus[rng.below(corpus.len())];
        let union = a.disjoint_union(b);
        let want = &z_polynomial(a) * &z_polynomial(b);
        let got = z_polynomial(&union);
        if got != want {
            failures.report(
                "Z of a disjoint union is not the product for:".to_string(),
                &union,
                format!(
                    "got: {} want: {}",
                    got.to_canonical_with("x", "y"),
                    want.to_canonical_with("x", "y")
                ),
            );
        }
    }
    failures.finish("union", format!("{iterations} pairs"))
}

fn verify_alex_skein() -> ExitCode {
    let mut failures = Failures::new();
    let hopf = vlk::fixtures::hopf();
    let kink = vlk::fixtures::kink();
    let vh = vlk::fixtures::vh();
    let mut verdicts = Vec::new();
    let mut expect = |name: &str, code: &DiagramCode, i: usize, want: bool| {
        let triple = skein_triple(code, i).expect("crossing index in range");
        let got = vlk::alexander::check_classical_alexander_skein(&triple, 4);
        let verdict = if got { "consistent" } else { "inconsistent" };
        verdicts.push(format!("alex-skein: {name} crossing {i}: {verdict}"));
        if got != want {
            failures.report(
                format!(
                    "{name} crossing {i}: expected {}, computed {verdict}, for:",
                    if want { "consistent" } else { "inconsistent" }
                ),
                code,
                String::new(),
            );
        }
    };
    expect("hopf", &hopf, 0, true);
    expect("hopf", &hopf, 1, true);
    expect("kink", &kink, 0, true);
    expect("vh", &vh, 0, false);
    for v in &verdicts {
        println!("{v}");
    }
    failures.finish(
        "alex-skein",
        "3 classical triples consistent, virtual triple contradicts".to_string(),
    )
}

// ---- batch ----

#[derive(Serialize)]
struct BatchRecord {
    file: String,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conway: Option<ConwayReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alexander: Option<AlexanderReport>,
}

fn cmd_batch(manifest: &Path) -> Result<ExitCode, String> {
    let text = fs::read_to_string(manifest).map_err(|e| format!("{}: {e}", manifest.display()))?;
    let mut any_ok = false;
    let mut any_entry = false;
    let mut out = String::new();
    for raw in text.lines() {
        let entry = raw.split('#').next().unwrap_or("").trim();
        if entry.is_empty() {
            continue;
        }
        any_entry = true;
        let record = match load_code(Path::new(entry)).and_then(|code| {
            let alex = alexander_report(&code, &[2, 3, 5]).map_err(|e| e.to_string())?;
            Ok((alex, code))
        }) {
            Ok((alex, code)) => {
                any_ok = true;
                BatchRecord {
                    file: entry.to_string(),
                    ok: true,
                    error: None,
                    conway: Some(conway_report(&code)),
                    alexander: Some(alex),
                }
            }
            Err(e) => BatchRecord {
                file: entry.to_string(),
                ok: false,
                error: Some(e),
                conway: None,
                alexander: None,
            },
        };
        out.push_str(&serde_json::to_string(&record).expect("serializable"));
        out.push('\n');
    }
    print!("{out}");
    if any_entry && !any_ok {
        return Err("no manifest entry could be processed".to_string());
    }
    Ok(ExitCode::SUCCESS)
}

// ---- gauss2vld ----

fn cmd_gauss2vld(input: &str) -> Result<ExitCode, String> {
    let path = Path::new(input);
    let code = if path.exists() {
        load_code(path)?
    } else {
        parse_gauss(input.trim()).map_err(|e| format!("{input:?}: {e}"))?
    };
    print!("{}", serialize_vld(&code));
    Ok(ExitCode::SUCCESS)
}
