//! Command dispatch and report rendering.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use smith_ideals::algebra::{
    bimodule_report, dga_map_report, dga_report, verify_bimodule, verify_dga, verify_dga_map,
    BimoduleCandidate, BimoduleStructure, DgaMorphism, DgaStructure,
};
use smith_ideals::complex::{homology, ChainComplex, ChainMap};
use smith_ideals::error::Error;
use smith_ideals::graded::GradedMap;
use smith_ideals::ideal::{
    derive_reduced, reduced_conditions, reduced_report, verify_ideal, IdealData, SmithIdealData,
};
use smith_ideals::quotient::{
    cone_candidate, cone_dga, cone_then_fiber, fiber_ideal, roundtrip_check,
};
use smith_ideals::report::{DiagramReport, Status};

use crate::document::{self, IdealDecl};
use crate::export;
use crate::resolve::{resolve, Model};

#[derive(Parser, Debug)]
#[command(name = "smith", version, about = "Check and construct ideals of DGAs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Not supported: the field is part of the document.
    #[arg(long, global = true, hide = true, value_name = "FIELD")]
    pub field_override: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    pub file: PathBuf,
    pub name: String,
    /// Include witnesses in the machine-readable report.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Args, Debug, Clone)]
pub struct MapTarget {
    #[command(flatten)]
    pub target: Target,
    /// DGA on the source complex, when it is not unique.
    #[arg(long)]
    pub source: Option<String>,
    /// DGA on the target complex, when it is not unique.
    #[arg(long = "target")]
    pub target_dga: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct IdealTarget {
    #[command(flatten)]
    pub target: Target,
    /// Check the full form: the 16 associativity squares and the unit laws.
    #[arg(long, conflicts_with = "reduced")]
    pub full: bool,
    /// Check the reduced form: a central bimodule map into the ring.
    #[arg(long)]
    pub reduced: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// DGA axioms.
    CheckDga(Target),
    /// DGA map axioms.
    CheckMap(MapTarget),
    /// Bimodule axioms.
    CheckBimodule(Target),
    /// Ideal axioms, full (default) or reduced form.
    CheckIdeal(IdealTarget),
    /// Full ideal to reduced ideal.
    Derive(Target),
    /// Reduced ideal to full ideal.
    Build(Target),
    /// Quotient DGA on the cone of j.
    Cone(Target),
    /// Ideal on the kernel of a surjective DGA map.
    Fiber(MapTarget),
    /// Fiber then cone, and cone then fiber.
    Roundtrip(MapTarget),
    /// Homology of a complex or of the carrier of a DGA.
    Homology(Target),
    /// Parse a document and print it in canonical form.
    Print { file: PathBuf },
    /// Write the fixture corpus into a directory.
    ExportFixtures { dir: PathBuf },
}

/// One line of the machine-readable report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub label: String,
    pub status: &'static str,
    pub witness_degree: Option<i64>,
    pub witness_basis: Option<String>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Records plus human-readable notes for one command.
#[derive(Default)]
struct Outcome {
    records: Vec<Record>,
    /// Failure and duplicate lines for the summary, in report order.
    details: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn add(&mut self, prefix: &str, report: &DiagramReport, witness: bool) {
        for e in &report.entries {
            let label = format!("{prefix}{}", e.label);
            let w = e.witness.as_ref().filter(|_| witness);
            self.records.push(Record {
                label: label.clone(),
                status: e.status.as_str(),
                witness_degree: w.map(|w| w.degree),
                witness_basis: w.map(|w| w.basis.clone()),
                lhs: w.map(|w| w.lhs.clone()),
                rhs: w.map(|w| w.rhs.clone()),
            });
            if let Some(d) = &e.duplicate_of {
                self.details
                    .push(format!("{label}: same equation as the ring's {prefix}{d}"));
            }
            if let (Status::Fail, Some(w)) = (e.status, &e.witness) {
                self.details.push(format!(
                    "FAIL {label}: degree {} at {}: {} vs {} ({} failing basis elements)",
                    w.degree, w.basis, w.lhs, w.rhs, e.failures
                ));
            }
        }
    }

    fn single(&mut self, label: &str, passed: bool, degree: Option<i64>, message: Option<String>) {
        self.records.push(Record {
            label: label.into(),
            status: if passed { "pass" } else { "fail" },
            witness_degree: degree,
            witness_basis: None,
            lhs: message.clone(),
            rhs: None,
        });
        if !passed {
            self.details
                .push(format!("FAIL {label}: {}", message.unwrap_or_default()));
        }
    }

    /// A library error that stops a construction becomes failing records.
    fn error(&mut self, prefix: &str, e: Error, witness: bool) {
        match e {
            Error::Rejected { what, report } => {
                let p = format!("{prefix}{}.", what.replace(' ', "_"));
                self.add(&p, &report, witness);
            }
            Error::NotSurjective { degree } => self.single(
                &format!("{prefix}surjective"),
                false,
                Some(degree),
                Some(format!("not surjective in degree {degree}")),
            ),
            Error::NotInjective { degree } => self.single(
                &format!("{prefix}injective"),
                false,
                Some(degree),
                Some(format!("not injective in degree {degree}")),
            ),
            Error::NotChainMap { degree } => self.single(
                &format!("{prefix}chain_map"),
                false,
                Some(degree),
                Some(e.to_string()),
            ),
            other => self.single(
                &format!("{prefix}error"),
                false,
                None,
                Some(other.to_string()),
            ),
        }
    }

    fn failed(&self) -> usize {
        self.records.iter().filter(|r| r.status == "fail").count()
    }
}

/// Usage problems: exit 2.
struct Usage(String);

impl From<document::ParseError> for Usage {
    fn from(e: document::ParseError) -> Self {
        Usage(e.to_string())
    }
}

type Step<T> = Result<T, Usage>;

/// Result of a check that either produced a validated object or failing records.
enum Checked<T> {
    Ok(T),
    Failed,
}

struct Session {
    model: Model,
    doc: document::Document,
    witness: bool,
    out: Outcome,
}

impl Session {
    fn load(t: &Target) -> Step<Self> {
        let text = std::fs::read_to_string(&t.file)
            .map_err(|e| Usage(format!("cannot read {}: {e}", t.file.display())))?;
        let doc = document::parse(&text)?;
        let model = resolve(&doc)?;
        Ok(Session {
            model,
            doc,
            witness: t.witness,
            out: Outcome::default(),
        })
    }

    fn kind_of(&self, name: &str) -> Step<&'static str> {
        self.doc
            .decls
            .get(name)
            .map(|d| d.kind())
            .ok_or_else(|| Usage(format!("no declaration named '{name}'")))
    }

    fn require(&self, name: &str, kind: &str) -> Step<()> {
        let k = self.kind_of(name)?;
        if k != kind {
            return Err(Usage(format!(
                "'{name}' is declared as {k}, expected {kind}"
            )));
        }
        Ok(())
    }

    /// Runs a library step, turning errors into failing records.
    fn attempt<T>(&mut self, prefix: &str, r: Result<T, Error>) -> Checked<T> {
        match r {
            Ok(v) => Checked::Ok(v),
            Err(e) => {
                self.out.error(prefix, e, self.witness);
                Checked::Failed
            }
        }
    }

    fn dga(&mut self, name: &str) -> Checked<DgaStructure> {
        let c = self.model.dgas[name].candidate.clone();
        let r = verify_dga(&c).map_err(|e| match e {
            Error::Rejected { report, .. } => Error::Rejected {
                what: name.to_string(),
                report,
            },
            e => e,
        });
        self.attempt("", r)
    }

    fn bimodule_candidate(&mut self, name: &str) -> Checked<BimoduleCandidate> {
        let b = self.model.bimodules[name].clone();
        let Checked::Ok(ring) = self.dga(&b.ring) else {
            return Checked::Failed;
        };
        Checked::Ok(BimoduleCandidate {
            ring,
            carrier: self.model.complexes[&b.complex].clone(),
            left: b.left,
            right: b.right,
        })
    }

    fn bimodule(&mut self, name: &str) -> Checked<BimoduleStructure> {
        let Checked::Ok(c) = self.bimodule_candidate(name) else {
            return Checked::Failed;
        };
        let r = verify_bimodule(&c).map_err(|e| match e {
            Error::Rejected { report, .. } => Error::Rejected {
                what: name.to_string(),
                report,
            },
            e => e,
        });
        self.attempt("", r)
    }

    fn map(&self, name: &str) -> GradedMap {
        self.model.maps[name].map.clone()
    }

    /// The unique DGA on a complex, or the one named explicitly.
    fn dga_on(&self, names: &[String], explicit: Option<&String>) -> Step<String> {
        if let Some(e) = explicit {
            self.require(e, "dga")?;
            return Ok(e.clone());
        }
        let [complex] = names else {
            return Err(Usage(
                "map between tensor products cannot be a DGA map".into(),
            ));
        };
        let found: Vec<&String> = self
            .model
            .dgas
            .iter()
            .filter(|(_, d)| &d.complex == complex)
            .map(|(n, _)| n)
            .collect();
        match found[..] {
            [one] => Ok(one.clone()),
            [] => Err(Usage(format!("no dga is declared on complex '{complex}'"))),
            _ => Err(Usage(format!(
                "several dgas on complex '{complex}'; name one with --source/--target"
            ))),
        }
    }

    fn morphism(&mut self, m: &MapTarget) -> Step<Checked<DgaMorphism>> {
        let name = &m.target.name;
        self.require(name, "map")?;
        let rm = self.model.maps[name].clone();
        let s = self.dga_on(&rm.source_names, m.source.as_ref())?;
        let t = self.dga_on(&rm.target_names, m.target_dga.as_ref())?;
        if self.model.dgas[&s].complex != rm.source_names[0]
            || self.model.dgas[&t].complex != rm.target_names[0]
        {
            return Err(Usage(format!(
                "'{name}' does not run between '{s}' and '{t}'"
            )));
        }
        let (Checked::Ok(s), Checked::Ok(t)) = (self.dga(&s), self.dga(&t)) else {
            return Ok(Checked::Failed);
        };
        let report = dga_map_report(&s, &t, &rm.map).expect("shapes agree");
        self.out.add("", &report, self.witness);
        if !report.passed() {
            return Ok(Checked::Failed);
        }
        Ok(Checked::Ok(
            verify_dga_map(&s, &t, &rm.map).expect("report passed"),
        ))
    }

    fn full_ideal(&mut self, name: &str) -> Checked<IdealData> {
        let decl = self.model.ideals[name].clone();
        match decl {
            IdealDecl::Full {
                ring,
                bimodule,
                nu_l,
                nu_r,
            } => {
                let Checked::Ok(r) = self.dga(&ring) else {
                    return Checked::Failed;
                };
                let b = self.model.bimodules[&bimodule].clone();
                let carrier = self.model.complexes[&b.complex].clone();
                let (nl, nr) = (self.map(&nu_l), self.map(&nu_r));
                let r = IdealData::new(r, carrier, b.left, b.right, nl, nr);
                self.attempt("", r)
            }
            IdealDecl::Reduced { bimodule, j } => {
                let Checked::Ok(b) = self.bimodule(&bimodule) else {
                    return Checked::Failed;
                };
                let j = self.map(&j);
                let r = (|| {
                    IdealData::new(
                        b.ring().clone(),
                        b.carrier().clone(),
                        b.left().map().clone(),
                        b.right().map().clone(),
                        j.compose(b.left().map())?,
                        j.compose(b.right().map())?,
                    )
                })();
                self.attempt("", r)
            }
        }
    }

    /// Bimodule and `j` of a reduced ideal; `j` is not yet checked.
    fn reduced_parts(&mut self, name: &str) -> Step<Checked<(BimoduleStructure, GradedMap)>> {
        let IdealDecl::Reduced { bimodule, j } = self.model.ideals[name].clone() else {
            return Err(Usage(format!(
                "'{name}' is a full ideal; this command needs a reduced one"
            )));
        };
        let Checked::Ok(b) = self.bimodule(&bimodule) else {
            return Ok(Checked::Failed);
        };
        Ok(Checked::Ok((b, self.map(&j))))
    }

    fn note_map(&mut self, title: &str, f: &GradedMap) {
        self.out.notes.push(format!("{title}:"));
        let field = f.field();
        for n in f.source().degrees() {
            for i in 0..f.source().dim(n) {
                let v = f.column(n, i);
                let t = f.target().render_vector(field, n + f.degree(), &v);
                self.out
                    .notes
                    .push(format!("  {} |-> {t}", f.source().label(n, i)));
            }
        }
    }

    fn note_homology(&mut self, title: &str, c: &ChainComplex) {
        let h = homology(c);
        let line: Vec<String> = c
            .space()
            .degrees()
            .map(|n| format!("H_{n}: {}", h.dim(n)))
            .collect();
        self.out.notes.push(format!("{title}{}", line.join(", ")));
    }
}

fn check_ideal(s: &mut Session, t: &IdealTarget) -> Step<()> {
    let name = &t.target.name;
    s.require(name, "ideal")?;
    let is_full = matches!(s.model.ideals[name], IdealDecl::Full { .. });
    if t.reduced {
        if is_full {
            if let Checked::Ok(i) = s.full_ideal(name) {
                let r = reduced_conditions(&i).expect("shapes agree");
                s.out.add("", &r, s.witness);
            }
        } else if let Checked::Ok((b, j)) = s.reduced_parts(name)? {
            let r = reduced_report(&b, &j).expect("shapes agree");
            s.out.add("", &r, s.witness);
        }
    } else if let Checked::Ok(i) = s.full_ideal(name) {
        let r = verify_ideal(&i).expect("shapes agree");
        s.out.add("", &r, s.witness);
    }
    Ok(())
}

fn derive(s: &mut Session, name: &str) -> Step<()> {
    s.require(name, "ideal")?;
    if !matches!(s.model.ideals[name], IdealDecl::Full { .. }) {
        return Err(Usage(format!(
            "'{name}' is a reduced ideal; derive needs a full one"
        )));
    }
    let Checked::Ok(i) = s.full_ideal(name) else {
        return Ok(());
    };
    let squares = verify_ideal(&i).expect("shapes agree");
    let conditions = reduced_conditions(&i).expect("shapes agree");
    s.out.add("", &squares, s.witness);
    s.out.add("", &conditions, s.witness);
    if squares.passed() && conditions.passed() {
        let reduced = derive_reduced(&i).expect("all conditions passed");
        s.note_map("j", &reduced.j().map().clone());
    }
    Ok(())
}

fn build(s: &mut Session, name: &str) -> Step<()> {
    s.require(name, "ideal")?;
    let Checked::Ok((b, j)) = s.reduced_parts(name)? else {
        return Ok(());
    };
    let reduced = reduced_report(&b, &j).expect("shapes agree");
    s.out.add("", &reduced, s.witness);
    if let Checked::Ok(i) = s.full_ideal(name) {
        let r = verify_ideal(&i).expect("shapes agree");
        s.out.add("", &r, s.witness);
        s.note_map("nuL", &i.nu_l().map().clone());
        s.note_map("nuR", &i.nu_r().map().clone());
    }
    Ok(())
}

fn cone(s: &mut Session, name: &str) -> Step<()> {
    s.require(name, "ideal")?;
    let Checked::Ok((b, j)) = s.reduced_parts(name)? else {
        return Ok(());
    };
    let reduced = reduced_report(&b, &j).expect("shapes agree");
    s.out.add("", &reduced, s.witness);
    let j_chain = ChainMap::new(b.carrier().clone(), b.ring().carrier().clone(), j.clone());
    let Checked::Ok(jc) = s.attempt("", j_chain) else {
        return Ok(());
    };
    let (c, candidate) = cone_candidate(&b, &jc).expect("shapes agree");
    let report = dga_report(&candidate).expect("shapes agree");
    s.out.add("cone_", &report, s.witness);
    s.note_homology("cone: ", &c.complex);
    if reduced.passed() && report.passed() {
        let ideal = SmithIdealData::new(b, j).expect("reduced report passed");
        if let Checked::Ok(q) = s.attempt("", cone_dga(&ideal)) {
            s.out.notes.push(format!(
                "quotient basis: {}",
                export::basis_line(q.quotient.space())
            ));
        }
    }
    Ok(())
}

fn fiber(s: &mut Session, m: &MapTarget) -> Step<()> {
    let Checked::Ok(f) = s.morphism(m)? else {
        return Ok(());
    };
    let Checked::Ok(fib) = s.attempt("", fiber_ideal(&f)) else {
        return Ok(());
    };
    s.out.single("surjective", true, None, None);
    let r = reduced_report(fib.ideal.bimodule(), fib.ideal.j().map()).expect("shapes agree");
    s.out.add("", &r, s.witness);
    s.out.notes.push(format!(
        "kernel basis: {}",
        export::basis_line(fib.ideal.carrier().space())
    ));
    Ok(())
}

fn roundtrip(s: &mut Session, m: &MapTarget) -> Step<()> {
    let Checked::Ok(f) = s.morphism(m)? else {
        return Ok(());
    };
    let Checked::Ok(rt) = s.attempt("", roundtrip_check(&f)) else {
        return Ok(());
    };
    s.out.add("", &rt.report, s.witness);
    if let Checked::Ok(back) = s.attempt("inverse_", cone_then_fiber(&rt.fiber.ideal)) {
        s.out.add("inverse_", &back.report, s.witness);
    }
    Ok(())
}

fn homology_command(s: &mut Session, name: &str) -> Step<()> {
    let c = match s.kind_of(name)? {
        "complex" => s.model.complexes[name].clone(),
        "dga" => s.model.dgas[name].candidate.carrier.clone(),
        k => {
            return Err(Usage(format!(
                "'{name}' is declared as {k}, expected complex or dga"
            )))
        }
    };
    let h = homology(&c);
    for n in c.space().degrees() {
        s.out.records.push(Record {
            label: format!("H_{n}"),
            status: "pass",
            witness_degree: Some(n),
            witness_basis: None,
            lhs: Some(h.dim(n).to_string()),
            rhs: None,
        });
    }
    s.note_homology("", &c);
    Ok(())
}

fn execute(cli: &Cli) -> Step<Rendered> {
    if cli.field_override.is_some() {
        return Err(Usage(
            "--field-override is not supported: the field is part of the document".into(),
        ));
    }
    let (title, target) = match &cli.command {
        Command::Print { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Usage(format!("cannot read {}: {e}", file.display())))?;
            let doc = document::parse(&text)?;
            resolve(&doc)?;
            return Ok(Rendered {
                stdout: doc.to_string(),
                stderr: String::new(),
                code: 0,
            });
        }
        Command::ExportFixtures { dir } => {
            let files = export::corpus();
            std::fs::create_dir_all(dir)
                .map_err(|e| Usage(format!("cannot create {}: {e}", dir.display())))?;
            for (name, text) in &files {
                std::fs::write(dir.join(name), text)
                    .map_err(|e| Usage(format!("cannot write {name}: {e}")))?;
            }
            return Ok(Rendered {
                stdout: String::new(),
                stderr: format!("wrote {} files to {}\n", files.len(), dir.display()),
                code: 0,
            });
        }
        Command::CheckDga(t) => ("check-dga", t),
        Command::CheckMap(m) => ("check-map", &m.target),
        Command::CheckBimodule(t) => ("check-bimodule", t),
        Command::CheckIdeal(t) => ("check-ideal", &t.target),
        Command::Derive(t) => ("derive", t),
        Command::Build(t) => ("build", t),
        Command::Cone(t) => ("cone", t),
        Command::Fiber(m) => ("fiber", &m.target),
        Command::Roundtrip(m) => ("roundtrip", &m.target),
        Command::Homology(t) => ("homology", t),
    };
    let mut s = Session::load(target)?;
    let name = target.name.as_str();
    match &cli.command {
        Command::CheckDga(_) => {
            s.require(name, "dga")?;
            let r = dga_report(&s.model.dgas[name].candidate).expect("shapes agree");
            s.out.add("", &r, s.witness);
        }
        Command::CheckMap(m) => {
            s.morphism(m)?;
        }
        Command::CheckBimodule(_) => {
            s.require(name, "bimodule")?;
            if let Checked::Ok(c) = s.bimodule_candidate(name) {
                let r = bimodule_report(&c).expect("shapes agree");
                s.out.add("", &r, s.witness);
            }
        }
        Command::CheckIdeal(t) => check_ideal(&mut s, t)?,
        Command::Derive(_) => derive(&mut s, name)?,
        Command::Build(_) => build(&mut s, name)?,
        Command::Cone(_) => cone(&mut s, name)?,
        Command::Fiber(m) => fiber(&mut s, m)?,
        Command::Roundtrip(m) => roundtrip(&mut s, m)?,
        Command::Homology(_) => homology_command(&mut s, name)?,
        Command::Print { .. } | Command::ExportFixtures { .. } => unreachable!(),
    }
    Ok(render(title, name, s.out))
}

fn render(title: &str, name: &str, mut out: Outcome) -> Rendered {
    out.records.sort_by(|a, b| a.label.cmp(&b.label));
    let mut stdout = String::new();
    for r in &out.records {
        stdout.push_str(&serde_json::to_string(r).expect("records serialize"));
        stdout.push('\n');
    }
    let failed = out.failed();
    let mut stderr = String::new();
    let _ = writeln!(
        stderr,
        "{title} {name}: {} checks, {failed} failed",
        out.records.len()
    );
    for line in out.details.iter().chain(&out.notes) {
        let _ = writeln!(stderr, "{line}");
    }
    Rendered {
        stdout,
        stderr,
        code: i32::from(failed > 0),
    }
}

/// Runs the command line `args` (including the program name) without
/// touching the process streams.
pub fn run<I, T>(args: I) -> Rendered
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Rendered {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Rendered {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            };
        }
    };
    execute(&cli).unwrap_or_else(|Usage(msg)| Rendered {
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
        code: 2,
    })
}
