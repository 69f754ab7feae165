//! The `vucert` command line: gluing-matrix checks, presentations, H₁,
//! forcing verdicts, sweeps and representation checks.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a well-formed
//! negative verdict, 2 for malformed input (with a one-line diagnostic on
//! standard error).

use std::fmt::Display;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use vucert::engine::{check_forcing, run_sweep, BlockPattern, Outcome, SweepConfig};
use vucert::manifolds::{
    abelianization_image, build_presentation, certificate_words, heisenberg_presentation, normalize_gluing, npc_check,
    AbelianizedGroup, Case, GluingMatrix, Presentation, Word,
};
use vucert::rep::{analyze_word, extract_block_data, verify_relations, Representation};

#[derive(Parser, Debug)]
#[command(name = "vucert", version, about = "Virtually unipotent certificates for one-torus graph manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the nonpositive-curvature criterion for a gluing matrix.
    Npc(GluingArgs),
    /// Print the certificate words for a gluing matrix.
    Certificate(CertificateArgs),
    /// Print the fundamental-group presentation.
    Presentation(PresentationArgs),
    /// First homology, and optionally the image of a word.
    H1(H1Args),
    /// Run the forcing argument for one block pattern and check it.
    Force(ForceArgs),
    /// Forcing verdicts over an enumerated grid, one JSON line per job.
    Sweep(SweepArgs),
    /// Check a representation file against its relations.
    VerifyRep(VerifyRepArgs),
    /// Decide whether a word maps to a virtually unipotent matrix.
    VuWord(VuWordArgs),
}

#[derive(Args, Debug)]
struct GluingArgs {
    /// `loop` or `edge`.
    #[arg(long)]
    case: String,
    /// Row-major `a,b,c,d`.
    #[arg(long, allow_hyphen_values = true)]
    matrix: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct CertificateArgs {
    #[command(flatten)]
    gluing: GluingArgs,
    /// Normalize the matrix first and report the moves used.
    #[arg(long)]
    normalize: bool,
}

#[derive(Args, Debug)]
struct PresentationArgs {
    #[command(flatten)]
    gluing: GluingArgs,
    #[arg(long)]
    genus: usize,
    /// Genus of the second block (edge only).
    #[arg(long)]
    genus2: Option<usize>,
}

#[derive(Args, Debug)]
struct H1Args {
    #[command(flatten)]
    presentation: PresentationArgs,
    /// Word such as `f^2*z`; the exit code reports whether its image is torsion.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
}

#[derive(Args, Debug)]
struct ForceArgs {
    #[command(flatten)]
    gluing: GluingArgs,
    /// Block dimensions, rows separated by `;`, entries by `,`.
    #[arg(long)]
    pattern: String,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    case: String,
    /// Bound on `|a|, |c|, |d|` (loop) or on every entry (edge).
    #[arg(long)]
    entry_bound: i64,
    /// Loop only: bound on `b` (defaults to the entry bound).
    #[arg(long)]
    max_b: Option<i64>,
    #[arg(long)]
    max_k: usize,
    /// Edge only.
    #[arg(long, default_value_t = 1)]
    max_l: usize,
    /// Edge only: bound on each block dimension.
    #[arg(long, default_value_t = 1)]
    max_entry: u32,
    /// Loop only: bound on the total dimension.
    #[arg(long, default_value_t = 1)]
    max_total: u32,
}

#[derive(Args, Debug)]
struct VerifyRepArgs {
    /// Representation JSON file.
    file: String,
    /// Check against the Heisenberg relations instead of the file's presentation.
    #[arg(long)]
    heisenberg: bool,
    /// Also extract the joint eigenspace block data.
    #[arg(long)]
    blocks: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VuWordArgs {
    file: String,
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[arg(long)]
    json: bool,
}

struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand | ErrorKind::MissingSubcommand => {
                    let _ = writeln!(err, "error: missing subcommand, try --help");
                    2
                }
                _ => {
                    let rendered = e.to_string();
                    let line = rendered.lines().next().unwrap_or("error: invalid arguments");
                    let _ = writeln!(err, "{line}");
                    2
                }
            };
        }
    };
    let result = match cli.command {
        Command::Npc(a) => npc(&a, out),
        Command::Certificate(a) => certificate(&a, out),
        Command::Presentation(a) => presentation(&a, out),
        Command::H1(a) => h1(&a, out),
        Command::Force(a) => force(&a, out),
        Command::Sweep(a) => sweep(&a, out),
        Command::VerifyRep(a) => verify_rep(&a, out),
        Command::VuWord(a) => vu_word(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {}", msg.lines().next().unwrap_or(""));
            2
        }
    }
}

fn gluing(a: &GluingArgs) -> Result<GluingMatrix, Failure> {
    let case = Case::parse(&a.case)?;
    Ok(GluingMatrix::parse(case, &a.matrix)?)
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn npc(a: &GluingArgs, out: &mut dyn Write) -> CmdResult {
    let b = gluing(a)?;
    let verdict = npc_check(&b);
    if a.json {
        emit_json(out, &json!({"case": b.case.name(), "matrix": b.entries(), "npc": verdict}))?;
    } else {
        writeln!(out, "{}", if verdict { "NPC" } else { "not NPC" })?;
    }
    Ok(code(verdict))
}

fn certificate(a: &CertificateArgs, out: &mut dyn Write) -> CmdResult {
    let mut b = gluing(&a.gluing)?;
    let mut moves = Vec::new();
    if a.normalize {
        match normalize_gluing(&b) {
            Ok(n) => {
                moves = n.moves.iter().map(ToString::to_string).collect();
                b = n.matrix;
            }
            Err(e) => return refuse(a.gluing.json, &b, &e.to_string(), out),
        }
    }
    let words = match certificate_words(&b) {
        Ok(w) => w,
        Err(e) => return refuse(a.gluing.json, &b, &e.to_string(), out),
    };
    let rendered: Vec<String> = words.iter().map(ToString::to_string).collect();
    if a.gluing.json {
        let mut v = json!({"case": b.case.name(), "matrix": b.entries(), "words": rendered});
        if a.normalize {
            v["moves"] = json!(moves);
        }
        emit_json(out, &v)?;
    } else {
        if a.normalize {
            let [p, q, r, s] = b.entries();
            let via = if moves.is_empty() { "no moves".to_string() } else { moves.join(", ") };
            writeln!(out, "normalized: {p},{q},{r},{s} ({via})")?;
        }
        for w in rendered {
            writeln!(out, "{w}")?;
        }
    }
    Ok(0)
}

fn refuse(json_mode: bool, b: &GluingMatrix, reason: &str, out: &mut dyn Write) -> CmdResult {
    if json_mode {
        emit_json(out, &json!({"case": b.case.name(), "matrix": b.entries(), "words": [], "refused": reason}))?;
    } else {
        writeln!(out, "no certificate: {reason}")?;
    }
    Ok(1)
}

fn build(a: &PresentationArgs) -> Result<Presentation, Failure> {
    let b = gluing(&a.gluing)?;
    Ok(build_presentation(b.case, a.genus, a.genus2, &b)?)
}

fn presentation(a: &PresentationArgs, out: &mut dyn Write) -> CmdResult {
    let p = build(a)?;
    if a.gluing.json {
        let relators: Vec<Value> =
            p.relators.iter().map(|r| json!({"label": r.label, "word": r.word.to_string()})).collect();
        emit_json(out, &json!({"generators": p.generators, "relators": relators}))?;
    } else {
        write!(out, "{p}")?;
    }
    Ok(0)
}

fn group_text(g: &AbelianizedGroup) -> String {
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion_divisors.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn h1(a: &H1Args, out: &mut dyn Write) -> CmdResult {
    let p = build(&a.presentation)?;
    let json_mode = a.presentation.gluing.json;
    let Some(text) = &a.word else {
        let g = AbelianizedGroup::of(&p);
        if json_mode {
            let torsion: Vec<String> = g.torsion_divisors.iter().map(ToString::to_string).collect();
            emit_json(out, &json!({"free_rank": g.free_rank, "torsion": torsion}))?;
        } else {
            writeln!(out, "H1 = {}", group_text(&g))?;
        }
        return Ok(0);
    };
    let w = Word::parse(text)?;
    let img = abelianization_image(&p, &w)?;
    let coords: Vec<String> = img.image.iter().map(ToString::to_string).collect();
    if json_mode {
        let torsion: Vec<String> = img.group.torsion_divisors.iter().map(ToString::to_string).collect();
        emit_json(
            out,
            &json!({
                "free_rank": img.group.free_rank,
                "torsion": torsion,
                "word": w.to_string(),
                "image": coords,
                "is_torsion": img.is_torsion,
                "is_zero": img.is_zero,
            }),
        )?;
    } else {
        writeln!(out, "H1 = {}", group_text(&img.group))?;
        let kind = if img.is_zero {
            "zero"
        } else if img.is_torsion {
            "torsion"
        } else {
            "infinite order"
        };
        writeln!(out, "image of {w}: [{}] ({kind})", coords.join(", "))?;
    }
    Ok(code(img.is_torsion))
}

fn force(a: &ForceArgs, out: &mut dyn Write) -> CmdResult {
    let b = gluing(&a.gluing)?;
    let n = BlockPattern::parse(b.case, &a.pattern)?;
    let v = check_forcing(&b, &n)?;
    if a.gluing.json {
        emit_json(out, &v.to_json())?;
    } else {
        writeln!(out, "{}", v.outcome)?;
        if !v.targets.is_empty() {
            writeln!(out, "targets: {}", v.targets.join(", "))?;
        }
        writeln!(out, "oracle confirmed: {}", if v.oracle_confirmed { "yes" } else { "no" })?;
        for step in &v.trace {
            writeln!(out, "  {step}")?;
        }
    }
    Ok(code(v.outcome == Outcome::ForcedVU))
}

fn sweep(a: &SweepArgs, out: &mut dyn Write) -> CmdResult {
    let case = Case::parse(&a.case)?;
    if a.entry_bound < 0 || a.entry_bound > 50 || a.max_k > 4 || a.max_l > 4 || a.max_entry > 8 || a.max_total > 12 {
        return Err(Failure("sweep bounds too large (entry bound <= 50, k, l <= 4, entries <= 8, total <= 12)".into()));
    }
    let config = SweepConfig {
        case,
        entry_bound: a.entry_bound,
        max_b: a.max_b.unwrap_or(a.entry_bound),
        max_k: a.max_k,
        max_l: a.max_l,
        max_entry: a.max_entry,
        max_total: a.max_total,
    };
    let summary = run_sweep(&config, out)?;
    Ok(code(summary.disagreements == 0))
}

fn load(path: &str) -> Result<Representation, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {path}: {e}")))?;
    Ok(Representation::from_json_str(&text)?)
}

fn verify_rep(a: &VerifyRepArgs, out: &mut dyn Write) -> CmdResult {
    let rho = load(&a.file)?;
    let p = if a.heisenberg { heisenberg_presentation() } else { rho.presentation()? };
    let report = verify_relations(&rho, &p)?;
    let blocks = if a.blocks && report.passed() {
        if a.heisenberg {
            return Err(Failure("block data needs a loop or edge presentation".into()));
        }
        Some(extract_block_data(&rho, &p)?)
    } else {
        None
    };
    if a.json {
        let failures: Vec<Value> = report
            .failures
            .iter()
            .map(|f| json!({"relator": f.label, "word": f.word.to_string(), "residue": f.residue}))
            .collect();
        let mut v = json!({"pass": report.passed(), "checked": report.checked, "failures": failures});
        if let Some(data) = &blocks {
            v["blocks"] = data.to_json();
        }
        emit_json(out, &v)?;
    } else if report.passed() {
        writeln!(out, "pass: {} relators hold", report.checked)?;
        if let Some(data) = &blocks {
            writeln!(out, "pattern: {}", data.pattern)?;
            writeln!(out, "lambda: {}", data.lambdas.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))?;
            writeln!(
                out,
                "lambda': {}",
                data.lambda_primes.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            )?;
            for c in &data.cells {
                writeln!(
                    out,
                    "cell ({},{}): dimension {}, mu {}, residue {}{}",
                    c.r + 1,
                    c.s + 1,
                    c.dimension,
                    c.mu,
                    c.residue,
                    if c.residue_is_root_of_unity { " (root of unity)" } else { " (NOT a root of unity)" }
                )?;
            }
        }
    } else {
        writeln!(out, "fail: {} of {} relators", report.failures.len(), report.checked)?;
        for f in &report.failures {
            writeln!(out, "relator {}: {} evaluates to {}", f.label, f.word, f.residue)?;
        }
    }
    let ok = report.passed() && blocks.as_ref().is_none_or(|d| d.residues_ok());
    Ok(code(ok))
}

fn vu_word(a: &VuWordArgs, out: &mut dyn Write) -> CmdResult {
    let rho = load(&a.file)?;
    let w = Word::parse(&a.word)?;
    let report = analyze_word(&rho, &w)?;
    if a.json {
        emit_json(out, &report.to_json())?;
    } else {
        match report.witness_order {
            Some(n) => writeln!(out, "VU: {w} (witness order {n})")?,
            None => writeln!(out, "not VU: {w}")?,
        }
        writeln!(out, "char poly: {}", report.char_poly)?;
        writeln!(out, "norm: {}", report.norm_poly)?;
        if let Some(m) = &report.cyclotomic_multiset {
            writeln!(out, "cyclotomic orders: {}", m.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))?;
        }
    }
    Ok(code(report.verdict))
}
