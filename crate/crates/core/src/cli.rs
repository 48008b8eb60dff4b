//! The `hammock` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::category::{check_functor, connected_components};
use crate::dsl::{load_model, LoadError, Model};
use crate::fincat::{FinCat, MorId, ObjId};
use crate::hammock::{pi0_tower, HammockStage, TowerVerdict};
use crate::natural::check_nat_trans;
use crate::oracle::{localize_hom, Saturation};
use crate::relcat::{
    check_two_out_of_three, validate_hoalgebra, validate_idempotent, validate_monad,
    IdempotentVerdict, RelCat,
};
use crate::report::{nonidentity_ladders, stage_dot, Report, INPUT_ERROR};
use crate::theorems::hoalg::hoalg;
use crate::theorems::lemma53::{lemma53_part1, lemma53_part2};
use crate::theorems::prop52::prop52;
use crate::theorems::rmk33::{inclusions, rmk33_on};
use crate::theorems::thm31::thm31;
use crate::theorems::thm32::{check_displayed, thm32};
use crate::theorems::{FamilyReport, TheoremError, Verdict};

const DEFAULT_STAGE: usize = 7;
const DEFAULT_BOUND: usize = 8;

#[derive(Debug, Parser)]
#[command(
    name = "hammock",
    version,
    about = "Hammock mapping spaces of finite categories with weak equivalences"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Human)]
    emit: Emit,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timings: bool,
    /// Category to work in; defaults to the first one in the file, or to
    /// the one owning the named payload.
    #[arg(long, global = true)]
    category: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Human,
    Json,
    /// Only for `hom`.
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load a file and check every declared law.
    Validate { file: PathBuf },
    /// Size and components of one stage L_n(X,Y).
    Hom {
        file: PathBuf,
        #[command(flatten)]
        ends: Ends,
        #[arg(long, default_value_t = DEFAULT_STAGE)]
        stage: usize,
    },
    /// Components of every odd stage up to a bound.
    Pi0 {
        file: PathBuf,
        #[command(flatten)]
        ends: Ends,
        #[arg(long, default_value_t = DEFAULT_STAGE)]
        max_stage: usize,
        /// Read off the answer at stage 3, as for a model category.
        #[arg(long)]
        assume_model: bool,
    },
    /// Hom-set of the localization by bounded word rewriting.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        ends: Ends,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Build and check homotopy certificates.
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Write one stage as a DOT graph.
    ExportDot {
        file: PathBuf,
        #[command(flatten)]
        ends: Ends,
        #[arg(long, default_value_t = DEFAULT_STAGE)]
        stage: usize,
        #[arg(short = 'o', long)]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
struct Ends {
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// A left homotopy f ~ g gives f_* ~ g_* on L(X, -).
    Thm31(VerifyArgs),
    /// A natural transformation between homotopical functors.
    Thm32(VerifyArgs),
    /// Any two stage inclusions are homotopic.
    Rmk33(VerifyArgs),
    /// A homotopy idempotent gives homotopy equivalences of mapping spaces.
    Lemma53(VerifyArgs),
    /// A homotopy algebra is a retract along the unit.
    Hoalg(VerifyArgs),
    /// Maps inverted by L against local objects, on components.
    Prop52(VerifyArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    /// Largest odd stage; the stage itself for rmk33.
    #[arg(long, default_value_t = DEFAULT_STAGE)]
    max_stage: usize,
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    #[arg(long)]
    pos_i: Option<usize>,
    #[arg(long)]
    pos_j: Option<usize>,
    #[arg(long)]
    object: Option<String>,
    /// Left homotopy for thm31.
    #[arg(long)]
    homotopy: Option<String>,
    /// Natural transformation for thm32.
    #[arg(long)]
    nat: Option<String>,
    /// Homotopy idempotent for lemma53 and prop52.
    #[arg(long)]
    idem: Option<String>,
    /// Algebra for hoalg.
    #[arg(long)]
    algebra: Option<String>,
    /// Morphism for hoalg and prop52.
    #[arg(long)]
    map: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}:{source}")]
    Load { file: String, source: LoadError },
    #[error("cannot read {file}: {source}")]
    Io {
        file: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
}

fn input<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Input(msg.into()))
}

struct Loaded {
    model: Model,
    file: String,
}

impl Loaded {
    fn read(path: &Path) -> Result<Loaded, CliError> {
        let file = path
            .file_name()
            .map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into_owned());
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            file: file.clone(),
            source,
        })?;
        let model = load_model(&text).map_err(|source| CliError::Load {
            file: file.clone(),
            source,
        })?;
        Ok(Loaded { model, file })
    }

    /// The `--category` choice, else the owner of `payload`, else the first.
    fn rel(&self, chosen: Option<&str>, payload: Option<&str>) -> Result<Arc<RelCat>, CliError> {
        if let Some(name) = chosen {
            return match self.model.category(name) {
                Some(r) => Ok(r.clone()),
                None => input(format!("no category named '{name}'")),
            };
        }
        Ok(payload
            .and_then(|p| self.model.owner_of(p))
            .unwrap_or(&self.model.rel)
            .clone())
    }

    fn category_of(&self, c: &FinCat) -> Result<Arc<RelCat>, CliError> {
        match self.model.categories.iter().find(|r| r.cat() == c) {
            Some(r) => Ok(r.clone()),
            None => input("functor between undeclared categories"),
        }
    }
}

fn object(r: &RelCat, name: Option<&str>, flag: &str) -> Result<ObjId, CliError> {
    let Some(name) = name else {
        return input(format!("missing --{flag}"));
    };
    match r.cat().object(name) {
        Some(o) => Ok(o),
        None => input(format!("no object '{name}' in {}", r.name())),
    }
}

fn morphism(r: &RelCat, name: Option<&str>, flag: &str) -> Result<MorId, CliError> {
    let Some(name) = name else {
        return input(format!("missing --{flag}"));
    };
    match r.cat().morphism(name) {
        Some(m) => Ok(m),
        None => input(format!("no morphism '{name}' in {}", r.name())),
    }
}

/// The payload named by `flag`, or the only one of its kind.
fn pick<'a, T>(
    map: &'a std::collections::BTreeMap<String, T>,
    name: Option<&str>,
    kind: &str,
) -> Result<(&'a str, &'a T), CliError> {
    match name {
        Some(n) => match map.get_key_value(n) {
            Some((k, v)) => Ok((k.as_str(), v)),
            None => input(format!("no {kind} named '{n}'")),
        },
        None if map.len() == 1 => {
            let (k, v) = map.iter().next().expect("one entry");
            Ok((k.as_str(), v))
        }
        None => input(format!("name the {kind} with --{kind}")),
    }
}

fn stage(r: &Arc<RelCat>, ends: &Ends, n: usize) -> Result<HammockStage, CliError> {
    let (x, y) = (
        object(r, Some(&ends.from), "from")?,
        object(r, Some(&ends.to), "to")?,
    );
    HammockStage::new(r, x, y, n).map_err(|e| CliError::Input(e.to_string()))
}

fn family_into(report: &mut Report, f: &FamilyReport) {
    let failed = f.stages.iter().filter(|s| s.error.is_some()).count()
        + f.compatibility.iter().filter(|c| c.error.is_some()).count();
    for s in &f.stages {
        report.line(format!(
            "{} stage {}: {} zig-zags, {} steps, {}",
            f.name,
            s.stage,
            s.zigzags,
            s.shape.len(),
            if s.error.is_none() { "ok" } else { "FAILED" }
        ));
    }
    report.line(format!(
        "{}: {} compatibility squares, {failed} failures",
        f.name,
        f.compatibility.len()
    ));
    report.witness(f);
    report.fold(Verdict::from_bool(f.passed()), f.first_error());
}

fn validate(l: &Loaded, report: &mut Report) {
    let m = &l.model;
    for r in &m.categories {
        let c = r.cat();
        report.line(format!(
            "category {}: {} objects, {} morphisms, {} weak equivalences",
            r.name(),
            c.object_count(),
            c.morphism_count(),
            r.weq_names().len()
        ));
        if let Err(e) = check_two_out_of_three(r) {
            report.line(format!(
                "  two-out-of-three fails: {} then {} is {}, {} is not a weak equivalence",
                e.inner, e.outer, e.composite, e.not_weq
            ));
        }
    }
    let fail = |what: String, report: &mut Report| {
        report.fold(Verdict::Fail, Some(what));
    };
    for (name, f) in &m.functors {
        if let Err(v) = check_functor(f) {
            fail(format!("functor {name}: {v}"), report);
        }
    }
    for (name, n) in &m.nats {
        if let Err(v) = check_nat_trans(n) {
            fail(format!("nat {name}: {v}"), report);
        }
    }
    for (name, mo) in &m.monads {
        let r = m.owner_of(name).unwrap_or(&m.rel);
        if let Err(e) = validate_monad(r, mo) {
            fail(format!("monad {name}: {e}"), report);
        }
    }
    for (name, a) in &m.algebras {
        let r = m.owner_of(name).unwrap_or(&m.rel);
        if let Err(e) = validate_hoalgebra(r, a) {
            fail(format!("algebra {name}: {e}"), report);
        }
    }
    let bound = report.bounds.get("bound").copied().unwrap_or(DEFAULT_BOUND);
    for (name, d) in &m.idempotents {
        let r = m.owner_of(name).unwrap_or(&m.rel);
        match validate_idempotent(r, d, bound) {
            Ok(IdempotentVerdict::Pass) => {}
            Ok(IdempotentVerdict::Fail { object, reason }) => {
                fail(format!("idem {name} at {object}: {reason}"), report);
            }
            Ok(IdempotentVerdict::Unknown { object }) => {
                report.line(format!("idem {name}: undecided at {object}"));
                report.fold(Verdict::Unknown, None);
            }
            Err(e) => fail(format!("idem {name}: {e}"), report),
        }
    }
    report.line(format!(
        "payloads: {} functors, {} nats, {} homotopies, {} monads, {} algebras, {} idempotents",
        m.functors.len(),
        m.nats.len(),
        m.homotopies.len(),
        m.monads.len(),
        m.algebras.len(),
        m.idempotents.len()
    ));
}

fn run_verify(which: &Verify, chosen: Option<&str>) -> Result<Report, CliError> {
    let (name, a) = match which {
        Verify::Thm31(a) => ("thm31", a),
        Verify::Thm32(a) => ("thm32", a),
        Verify::Rmk33(a) => ("rmk33", a),
        Verify::Lemma53(a) => ("lemma53", a),
        Verify::Hoalg(a) => ("hoalg", a),
        Verify::Prop52(a) => ("prop52", a),
    };
    let l = Loaded::read(&a.file)?;
    let m = &l.model;
    let mut report = Report::new(&format!("verify {name}"));
    report.input("file", &l.file);
    let x_name = a.x.as_deref();
    let y_name = a.y.as_deref();
    match which {
        Verify::Thm31(_) => {
            let (hname, h) = pick(&m.homotopies, a.homotopy.as_deref(), "homotopy")?;
            let rel = l.rel(chosen, Some(hname))?;
            let x = object(&rel, a.object.as_deref().or(x_name), "object")?;
            report
                .input("homotopy", hname)
                .input("object", rel.cat().obj_name(x))
                .bound("max-stage", a.max_stage);
            let family = thm31(&rel, h, x, a.max_stage)?;
            family_into(&mut report, &family.verify());
        }
        Verify::Thm32(_) => {
            let (nname, eta) = pick(&m.nats, a.nat.as_deref(), "nat")?;
            let source = l.category_of(&eta.source.source)?;
            let target = l.category_of(&eta.source.target)?;
            let x = object(&source, x_name, "x")?;
            let y = object(&source, y_name, "y")?;
            report
                .input("nat", nname)
                .input("x", source.cat().obj_name(x))
                .input("y", source.cat().obj_name(y))
                .bound("max-stage", a.max_stage);
            let family = thm32(&source, &target, eta, x, y, a.max_stage)?;
            family_into(&mut report, &family.verify());
            for w in &family.stages {
                if let Err(e) = check_displayed(w, &source, &target, eta) {
                    report.fold(Verdict::Fail, Some(format!("stage {}: {e}", w.stage)));
                }
            }
            report.line("endpoint functors match the displayed composites");
        }
        Verify::Rmk33(_) => {
            let rel = l.rel(chosen, None)?;
            let (x, y) = (object(&rel, x_name, "x")?, object(&rel, y_name, "y")?);
            let n = a.max_stage;
            let (Some(i), Some(j)) = (a.pos_i, a.pos_j) else {
                return input("rmk33 needs --pos-i and --pos-j");
            };
            report
                .input("x", rel.cat().obj_name(x))
                .input("y", rel.cat().obj_name(y))
                .input("positions", format!("{i},{j}"))
                .bound("stage", n);
            let stage = HammockStage::new(&rel, x, y, n).map_err(TheoremError::from)?;
            let cert = rmk33_on(&stage, i, j)?;
            let incl = inclusions(&stage)?;
            report.line(format!(
                "{} zig-zags, certificate of length {}",
                stage.zigzags().len(),
                cert.len()
            ));
            report.witness(&cert.shape());
            let checked = cert.verify_between(&incl[i], &incl[j]);
            report.fold(
                Verdict::from_bool(checked.is_ok()),
                checked.err().map(|e| e.to_string()),
            );
        }
        Verify::Lemma53(_) => {
            let (dname, d) = pick(&m.idempotents, a.idem.as_deref(), "idem")?;
            let rel = l.rel(chosen, Some(dname))?;
            let (x, y) = (object(&rel, x_name, "x")?, object(&rel, y_name, "y")?);
            report
                .input("idem", dname)
                .input("x", rel.cat().obj_name(x))
                .input("y", rel.cat().obj_name(y))
                .bound("max-stage", a.max_stage)
                .bound("bound", a.bound);
            let p1 = lemma53_part1(&rel, d, x, y, a.max_stage)?;
            family_into(&mut report, &p1.first.verify());
            family_into(&mut report, &p1.second.verify());
            let p2 = lemma53_part2(&rel, d, x, y, a.max_stage, a.bound)?;
            report.line(format!(
                "{}: {} -> {}, {} classes to {}, bijective {}",
                p2.pi0.map,
                p2.pi0.source,
                p2.pi0.target,
                p2.pi0.source_classes.len(),
                p2.pi0.target_classes.len(),
                p2.pi0
                    .bijective
                    .map_or_else(|| "undecided".to_string(), |b| b.to_string())
            ));
            report.witness(&p2);
            report.fold(p2.verdict, p2.certificates.first_error());
        }
        Verify::Hoalg(_) => {
            let (aname, alg) = pick(&m.algebras, a.algebra.as_deref(), "algebra")?;
            let rel = l.rel(chosen, Some(aname))?;
            let f = morphism(&rel, a.map.as_deref(), "map")?;
            report
                .input("algebra", aname)
                .input("map", rel.cat().mor_name(f))
                .bound("max-stage", a.max_stage);
            let r = hoalg(&rel, alg, f, a.max_stage)?;
            for k in &r.components {
                report.line(format!("component {}: {}", k.object, k.verdict));
            }
            let bad = r.compatibility.iter().find(|s| s.error.is_some());
            report.line(format!(
                "{} compatibility squares, {} failures",
                r.compatibility.len(),
                r.compatibility.iter().filter(|s| s.error.is_some()).count()
            ));
            let first = r
                .components
                .iter()
                .find_map(|k| {
                    k.unit_square.first_error().or_else(|| {
                        k.retract
                            .iter()
                            .find_map(|s| s.error.clone())
                            .or_else(|| k.action_square.iter().find_map(|s| s.error.clone()))
                    })
                })
                .or_else(|| bad.and_then(|s| s.error.clone()));
            report.fold(r.verdict, first);
            report.witness(&r);
        }
        Verify::Prop52(_) => {
            let (dname, d) = pick(&m.idempotents, a.idem.as_deref(), "idem")?;
            let rel = l.rel(chosen, Some(dname))?;
            let g = morphism(&rel, a.map.as_deref(), "map")?;
            let z = object(&rel, a.object.as_deref(), "object")?;
            report
                .input("idem", dname)
                .input("map", rel.cat().mor_name(g))
                .input("object", rel.cat().obj_name(z))
                .bound("max-stage", a.max_stage)
                .bound("bound", a.bound);
            let r = prop52(&rel, d, g, z, a.bound, a.max_stage)?;
            report.line(&r.note);
            report.fold(r.verdict, Some(r.note.clone()));
            report.witness(&r);
        }
    }
    Ok(report)
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<Report, CliError> {
    let chosen = cli.category.as_deref();
    if cli.emit == Emit::Dot && !matches!(cli.command, Command::Hom { .. }) {
        return input("--emit dot is only available for hom");
    }
    let report = match &cli.command {
        Command::Validate { file } => {
            let l = Loaded::read(file)?;
            let mut report = Report::new("validate");
            report.input("file", &l.file).bound("bound", DEFAULT_BOUND);
            validate(&l, &mut report);
            report
        }
        Command::Hom { file, ends, stage: n } => {
            let l = Loaded::read(file)?;
            let rel = l.rel(chosen, None)?;
            let s = stage(&rel, ends, *n)?;
            if cli.emit == Emit::Dot {
                out.write_all(stage_dot(&s).as_bytes())
                    .map_err(|e| CliError::Input(e.to_string()))?;
            }
            let mut report = Report::new("hom");
            report
                .input("file", &l.file)
                .input("from", &ends.from)
                .input("to", &ends.to)
                .bound("stage", *n);
            let comps = connected_components(&s);
            report.line(format!(
                "{}: {} zig-zags, {} non-identity ladders, {} components",
                s.label(),
                s.zigzags().len(),
                nonidentity_ladders(&s),
                comps.len()
            ));
            report.witness(&serde_json::json!({
                "stage": s.label(),
                "zigzags": s.zigzags().iter().map(|z| z.show(rel.cat())).collect::<Vec<_>>(),
                "ladders": s.ladders().len(),
                "components": comps.len(),
            }));
            report
        }
        Command::Pi0 {
            file,
            ends,
            max_stage,
            assume_model,
        } => {
            let l = Loaded::read(file)?;
            let rel = l.rel(chosen, None)?;
            let (x, y) = (
                object(&rel, Some(&ends.from), "from")?,
                object(&rel, Some(&ends.to), "to")?,
            );
            let t = pi0_tower(&rel, x, y, *max_stage, *assume_model)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let mut report = Report::new("pi0");
            report
                .input("file", &l.file)
                .input("from", &ends.from)
                .input("to", &ends.to)
                .bound("max-stage", *max_stage);
            if *assume_model {
                report.input("assume-model", "true");
            }
            let sizes: Vec<String> = t.stages.iter().map(|s| s.components.to_string()).collect();
            report.line(format!("components per stage: [{}]", sizes.join(", ")));
            report.line(format!(
                "tower {}, value {}",
                t.verdict,
                t.value.map_or_else(|| "-".to_string(), |v| v.to_string())
            ));
            report.verdict = match (t.verdict, t.value) {
                (TowerVerdict::Stable, _) | (_, Some(_)) => Verdict::Pass,
                _ => Verdict::Unknown,
            };
            report.witness(&t);
            report
        }
        Command::Oracle { file, ends, bound } => {
            let l = Loaded::read(file)?;
            let rel = l.rel(chosen, None)?;
            let (x, y) = (
                object(&rel, Some(&ends.from), "from")?,
                object(&rel, Some(&ends.to), "to")?,
            );
            let (_, h) = localize_hom(&rel, x, y, *bound);
            let mut report = Report::new("oracle");
            report
                .input("file", &l.file)
                .input("from", &ends.from)
                .input("to", &ends.to)
                .bound("bound", *bound);
            report.line(format!(
                "{} classes: {{{}}}, {}",
                h.classes.len(),
                h.classes.join(", "),
                h.verdict
            ));
            report.verdict = match h.verdict {
                Saturation::Saturated => Verdict::Pass,
                Saturation::Unknown => Verdict::Unknown,
            };
            report.witness(&h);
            report
        }
        Command::Verify { which } => run_verify(which, chosen)?,
        Command::ExportDot {
            file,
            ends,
            stage: n,
            output,
        } => {
            let l = Loaded::read(file)?;
            let rel = l.rel(chosen, None)?;
            let s = stage(&rel, ends, *n)?;
            std::fs::write(output, stage_dot(&s)).map_err(|source| CliError::Io {
                file: output.display().to_string(),
                source,
            })?;
            let mut report = Report::new("export-dot");
            report
                .input("file", &l.file)
                .input("from", &ends.from)
                .input("to", &ends.to)
                .bound("stage", *n);
            report.line(format!(
                "{} nodes, {} edges",
                s.zigzags().len(),
                nonidentity_ladders(&s)
            ));
            report
        }
    };
    Ok(report)
}

/// Parses `argv`, runs the command and writes the report to `out`. Returns
/// the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => INPUT_ERROR,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let start = Instant::now();
    match run(&cli, out) {
        Ok(mut report) => {
            if cli.timings {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                report.timings = Some([("total".to_string(), ms)].into_iter().collect());
            }
            let text = match cli.emit {
                Emit::Json => report.to_json(),
                Emit::Human => report.to_human(),
                Emit::Dot => String::new(),
            };
            let _ = out.write_all(text.as_bytes());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            INPUT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> String {
        format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_cli(std::iter::once("hammock").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn unknown_flag_is_an_input_error() {
        assert_eq!(run_args(&["validate", "--nope"]).0, INPUT_ERROR);
        assert_eq!(run_args(&["--help"]).0, 0);
    }

    #[test]
    fn oracle_on_the_parallel_pair_is_unknown() {
        let f = fixture("para.spec");
        let (code, out) = run_args(&["oracle", &f, "--from", "A", "--to", "A", "--bound", "6"]);
        assert_eq!(code, 2, "{out}");
        assert!(out.ends_with("verdict: UNKNOWN\n"));
    }

    #[test]
    fn missing_payload_name() {
        let f = fixture("cylfix.spec");
        let (code, _) = run_args(&["verify", "hoalg", &f, "--map", "f"]);
        assert_eq!(code, INPUT_ERROR);
    }
}
