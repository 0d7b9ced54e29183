//! Library objects written back as documents, and the shipped fixture corpus.

use std::collections::BTreeMap;

use num_traits::Zero;
use smith_ideals::algebra::{BimoduleStructure, DgaMorphism, DgaStructure};
use smith_ideals::complex::ChainComplex;
use smith_ideals::constructions::{fixtures, free_square_candidate};
use smith_ideals::field::{Field, Scalar};
use smith_ideals::graded::{tensor_positions, GradedMap, GradedSpace};
use smith_ideals::ideal::{build_ideal, SmithIdealData};

use crate::document::{
    BimoduleDecl, ComplexDecl, Decl, DgaDecl, Document, IdealDecl, MapDecl, Term,
};

/// `degree 0: one eps; degree 1: …` for summaries.
pub fn basis_line(space: &GradedSpace) -> String {
    if space.is_zero() {
        return "(zero)".into();
    }
    space
        .degrees()
        .map(|n| {
            let ls: Vec<String> = (0..space.dim(n)).map(|i| space.label(n, i)).collect();
            format!("degree {n}: {}", ls.join(" "))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn term(space: &GradedSpace, n: i64, v: &[Scalar]) -> Term {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (space.label(n, i), c.clone()))
        .collect()
}

pub fn complex_decl(c: &ChainComplex) -> ComplexDecl {
    let s = c.space();
    let d = c.differential();
    let mut decl = ComplexDecl::default();
    for n in s.degrees() {
        decl.degrees
            .insert(n, (0..s.dim(n)).map(|i| s.label(n, i)).collect());
        for i in 0..s.dim(n) {
            let t = term(s, n - 1, &d.column(n, i));
            if !t.is_empty() {
                decl.d.insert(s.label(n, i), t);
            }
        }
    }
    decl
}

/// Nonzero values of a degree 0 map `x ⊗ y -> z` on basis pairs.
fn pairs(x: &GradedSpace, y: &GradedSpace, f: &GradedMap) -> BTreeMap<(String, String), Term> {
    let positions = tensor_positions(x, y);
    let mut out = BTreeMap::new();
    for p in x.degrees() {
        for q in y.degrees() {
            for i in 0..x.dim(p) {
                for j in 0..y.dim(q) {
                    let col = f.column(p + q, positions[&(p, i, q, j)]);
                    let t = term(f.target(), p + q, &col);
                    if !t.is_empty() {
                        out.insert((x.label(p, i), y.label(q, j)), t);
                    }
                }
            }
        }
    }
    out
}

pub fn dga_decl(complex: &str, r: &DgaStructure) -> DgaDecl {
    DgaDecl {
        complex: complex.into(),
        unit: term(r.space(), 0, &r.unit().map().column(0, 0)),
        mul: pairs(r.space(), r.space(), r.mult().map()),
    }
}

pub fn map_decl(source: &[&str], target: &[&str], f: &GradedMap) -> MapDecl {
    let s = f.source();
    let mut images = BTreeMap::new();
    for n in s.degrees() {
        for i in 0..s.dim(n) {
            let t = term(f.target(), n + f.degree(), &f.column(n, i));
            if !t.is_empty() {
                images.insert(s.label(n, i), t);
            }
        }
    }
    MapDecl {
        source: source.iter().map(|x| x.to_string()).collect(),
        target: target.iter().map(|x| x.to_string()).collect(),
        images,
    }
}

pub fn bimodule_decl(complex: &str, ring: &str, b: &BimoduleStructure) -> BimoduleDecl {
    BimoduleDecl {
        complex: complex.into(),
        ring: ring.into(),
        left: pairs(b.ring().space(), b.space(), b.left().map()),
        right: pairs(b.space(), b.ring().space(), b.right().map()),
    }
}

struct Builder {
    doc: Document,
}

impl Builder {
    fn new(field: Field) -> Self {
        Builder {
            doc: Document {
                field,
                decls: BTreeMap::new(),
                lines: BTreeMap::new(),
            },
        }
    }

    fn add(&mut self, name: &str, d: Decl) -> &mut Self {
        self.doc.decls.insert(name.into(), d);
        self
    }

    fn ring(&mut self, complex: &str, name: &str, r: &DgaStructure) -> &mut Self {
        self.add(complex, Decl::Complex(complex_decl(r.carrier())))
            .add(name, Decl::Dga(dga_decl(complex, r)))
    }

    fn bimodule(&mut self, b: &BimoduleStructure) -> &mut Self {
        self.add("CI", Decl::Complex(complex_decl(b.carrier())))
            .add("I", Decl::Bimodule(bimodule_decl("CI", "R", b)))
    }

    fn finish(&self, header: &str) -> String {
        let mut s = String::new();
        for line in header.lines() {
            s.push_str("# ");
            s.push_str(line);
            s.push('\n');
        }
        s + &self.doc.to_string()
    }
}

/// Ring `R` on complex `CR`.
pub fn ring_document(r: &DgaStructure) -> Document {
    let mut b = Builder::new(r.field());
    b.ring("CR", "R", r);
    b.doc
}

/// Reduced ideal `Ideal = reduced(I, j=j)` over `R`.
pub fn ideal_document(i: &SmithIdealData) -> Document {
    let mut b = Builder::new(i.ring().field());
    b.ring("CR", "R", i.ring())
        .bimodule(i.bimodule())
        .add("j", Decl::Map(map_decl(&["CI"], &["CR"], i.j().map())))
        .add(
            "Ideal",
            Decl::Ideal(IdealDecl::Reduced {
                bimodule: "I".into(),
                j: "j".into(),
            }),
        );
    b.doc
}

/// Full ideal `Full = full(R, I, nuL=nuL, nuR=nuR)` built from a reduced one.
pub fn full_document(i: &SmithIdealData) -> Document {
    let full = build_ideal(i).expect("catalog ideals build");
    let mut b = Builder::new(i.ring().field());
    b.ring("CR", "R", i.ring())
        .bimodule(i.bimodule())
        .add(
            "nuL",
            Decl::Map(map_decl(&["CR", "CI"], &["CR"], full.nu_l().map())),
        )
        .add(
            "nuR",
            Decl::Map(map_decl(&["CI", "CR"], &["CR"], full.nu_r().map())),
        )
        .add(
            "Full",
            Decl::Ideal(IdealDecl::Full {
                ring: "R".into(),
                bimodule: "I".into(),
                nu_l: "nuL".into(),
                nu_r: "nuR".into(),
            }),
        );
    b.doc
}

/// DGA map `f : R -> Q`.
pub fn morphism_document(f: &DgaMorphism) -> Document {
    let mut b = Builder::new(f.source().field());
    b.ring("CR", "R", f.source())
        .ring("CQ", "Q", f.target())
        .add("f", Decl::Map(map_decl(&["CR"], &["CQ"], f.map().map())));
    b.doc
}

/// `MuCandidate`: the multiplication `R ⊗ R -> R` offered as a reduced ideal
/// on the free bimodule `R ⊗ R`.
pub fn free_square_document(r: &DgaStructure) -> Document {
    let fs = free_square_candidate(r).expect("free square builds");
    let mut b = Builder::new(r.field());
    b.ring("CR", "R", r)
        .add("CRR", Decl::Complex(complex_decl(fs.bimodule.carrier())))
        .add(
            "FreeSquare",
            Decl::Bimodule(bimodule_decl("CRR", "R", &fs.bimodule)),
        )
        .add("mu", Decl::Map(map_decl(&["CRR"], &["CR"], fs.j.map())))
        .add(
            "MuCandidate",
            Decl::Ideal(IdealDecl::Reduced {
                bimodule: "FreeSquare".into(),
                j: "mu".into(),
            }),
        );
    b.doc
}

/// Every fixture file as `(file name, contents)`, sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let c = fixtures();
    let mut files = BTreeMap::new();
    let wrap = |doc: Document, header: String| Builder { doc }.finish(&header);
    for r in &c.rings {
        let header = format!("ring {}: {}", r.name, r.notes);
        files.insert(
            format!("ring_{}.smith", r.name),
            wrap(ring_document(&r.value), header),
        );
        let header = format!(
            "multiplication of {} offered as an ideal on the free bimodule R⊗R",
            r.name
        );
        files.insert(
            format!("free_square_{}.smith", r.name),
            wrap(free_square_document(&r.value), header),
        );
    }
    for i in &c.ideals {
        let header = format!("ideal {}: {}", i.name, i.notes);
        files.insert(
            format!("ideal_{}.smith", i.name),
            wrap(ideal_document(&i.value), header.clone()),
        );
        files.insert(
            format!("full_{}.smith", i.name),
            wrap(full_document(&i.value), header),
        );
    }
    for m in &c.morphisms {
        let header = format!("morphism {}: {}", m.name, m.notes);
        files.insert(
            format!("morphism_{}.smith", m.name),
            wrap(morphism_document(&m.value), header),
        );
    }
    files.into_iter().collect()
}
