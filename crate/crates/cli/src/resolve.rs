//! Turns a parsed [`Document`] into unvalidated library objects. Everything
//! that is a matter of shape (names, kinds, basis labels, degrees) is checked
//! here; the algebraic axioms are left to the commands.

use std::collections::BTreeMap;

use smith_ideals::algebra::DgaCandidate;
use smith_ideals::complex::ChainComplex;
use smith_ideals::field::{Field, Scalar};
use smith_ideals::graded::{tensor_positions, GradedMap, GradedSpace};

use crate::document::{Decl, Document, IdealDecl, ParseError, Term};

#[derive(Clone, Debug)]
pub struct ResolvedDga {
    pub complex: String,
    pub candidate: DgaCandidate,
}

#[derive(Clone, Debug)]
pub struct ResolvedMap {
    pub source_names: Vec<String>,
    pub target_names: Vec<String>,
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub map: GradedMap,
}

#[derive(Clone, Debug)]
pub struct ResolvedBimodule {
    pub complex: String,
    pub ring: String,
    pub left: GradedMap,
    pub right: GradedMap,
}

#[derive(Clone, Debug, Default)]
pub struct Model {
    pub complexes: BTreeMap<String, ChainComplex>,
    pub dgas: BTreeMap<String, ResolvedDga>,
    pub maps: BTreeMap<String, ResolvedMap>,
    pub bimodules: BTreeMap<String, ResolvedBimodule>,
    pub ideals: BTreeMap<String, IdealDecl>,
}

struct Ctx<'a> {
    doc: &'a Document,
    name: &'a str,
}

impl Ctx<'_> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.doc.lines.get(self.name).copied().unwrap_or(1),
            column: 1,
            message: format!("{} '{}': {}", self.kind(), self.name, message.into()),
        })
    }

    fn kind(&self) -> &'static str {
        self.doc.decls[self.name].kind()
    }

    /// Looks up `reference` and insists on its kind.
    fn expect(&self, reference: &str, kind: &str) -> Result<(), ParseError> {
        match self.doc.decls.get(reference) {
            None => self.fail(format!("unknown reference '{reference}'")),
            Some(d) if d.kind() != kind => self.fail(format!(
                "'{reference}' is declared as {}, expected {kind}",
                d.kind()
            )),
            Some(_) => Ok(()),
        }
    }

    fn locate(&self, space: &GradedSpace, label: &str) -> Result<(i64, usize), ParseError> {
        match space.find(label) {
            Some(at) => Ok(at),
            None => self.fail(format!("unknown basis element '{label}'")),
        }
    }

    /// Coordinates of `term` in degree `n` of `space`.
    fn vector(
        &self,
        field: Field,
        space: &GradedSpace,
        n: i64,
        term: &Term,
    ) -> Result<Vec<Scalar>, ParseError> {
        let mut v = vec![field.zero(); space.dim(n)];
        for (label, c) in term {
            let (m, i) = self.locate(space, label)?;
            if m != n {
                return self.fail(format!(
                    "dimension mismatch: '{label}' lies in degree {m}, expected degree {n}"
                ));
            }
            v[i] = field.add(&v[i], c);
        }
        Ok(v)
    }

    /// Bilinear map `x ⊗ y -> z` of degree 0 from products on basis pairs.
    fn bilinear(
        &self,
        field: Field,
        x: &GradedSpace,
        y: &GradedSpace,
        z: &GradedSpace,
        entries: &BTreeMap<(String, String), Term>,
    ) -> Result<GradedMap, ParseError> {
        let xy = x.tensor(y);
        let positions = tensor_positions(x, y);
        let mut columns: BTreeMap<(i64, usize), Vec<Scalar>> = BTreeMap::new();
        for ((a, b), term) in entries {
            let (p, i) = self.locate(x, a)?;
            let (q, j) = self.locate(y, b)?;
            let v = self.vector(field, z, p + q, term)?;
            columns.insert((p + q, positions[&(p, i, q, j)]), v);
        }
        Ok(GradedMap::from_columns(field, xy, z.clone(), 0, |n, k| {
            columns
                .remove(&(n, k))
                .unwrap_or_else(|| vec![field.zero(); z.dim(n)])
        })
        .expect("columns have the target dimension"))
    }
}

fn complex(
    doc: &Document,
    name: &str,
    decl: &crate::document::ComplexDecl,
) -> Result<ChainComplex, ParseError> {
    let ctx = Ctx { doc, name };
    let field = doc.field;
    let mut seen = std::collections::BTreeSet::new();
    for ids in decl.degrees.values() {
        for id in ids {
            if !seen.insert(id) {
                return ctx.fail(format!("basis element '{id}' declared twice"));
            }
        }
    }
    let space = GradedSpace::new(decl.degrees.iter().map(|(n, ids)| (*n, ids.clone())));
    let mut columns = BTreeMap::new();
    for (b, term) in &decl.d {
        let (n, i) = ctx.locate(&space, b)?;
        columns.insert((n, i), ctx.vector(field, &space, n - 1, term)?);
    }
    let d = GradedMap::from_columns(field, space.clone(), space.clone(), -1, |n, i| {
        columns
            .remove(&(n, i))
            .unwrap_or_else(|| vec![field.zero(); space.dim(n - 1)])
    })
    .expect("columns have the target dimension");
    ChainComplex::new(d).or_else(|e| ctx.fail(e.to_string()))
}

fn tensor_of(model: &Model, field: Field, names: &[String]) -> ChainComplex {
    names
        .iter()
        .map(|n| model.complexes[n].clone())
        .reduce(|a, b| a.tensor(&b).expect("same field"))
        .unwrap_or_else(|| ChainComplex::unit(field))
}

pub fn resolve(doc: &Document) -> Result<Model, ParseError> {
    let field = doc.field;
    let mut model = Model::default();
    for (name, decl) in &doc.decls {
        if let Decl::Complex(c) = decl {
            model.complexes.insert(name.clone(), complex(doc, name, c)?);
        }
    }
    for (name, decl) in &doc.decls {
        let ctx = Ctx { doc, name };
        match decl {
            Decl::Dga(g) => {
                ctx.expect(&g.complex, "complex")?;
                let carrier = model.complexes[&g.complex].clone();
                let r = carrier.space();
                let mult = ctx.bilinear(field, r, r, r, &g.mul)?;
                let one = ctx.vector(field, r, 0, &g.unit)?;
                let unit =
                    GradedMap::from_columns(field, GradedSpace::unit(), r.clone(), 0, |_, _| {
                        one.clone()
                    })
                    .expect("unit has the degree 0 dimension");
                model.dgas.insert(
                    name.clone(),
                    ResolvedDga {
                        complex: g.complex.clone(),
                        candidate: DgaCandidate {
                            carrier,
                            mult,
                            unit,
                        },
                    },
                );
            }
            Decl::Map(m) => {
                for c in m.source.iter().chain(&m.target) {
                    ctx.expect(c, "complex")?;
                }
                let source = tensor_of(&model, field, &m.source);
                let target = tensor_of(&model, field, &m.target);
                let mut columns = BTreeMap::new();
                for (b, term) in &m.images {
                    let (n, i) = ctx.locate(source.space(), b)?;
                    columns.insert((n, i), ctx.vector(field, target.space(), n, term)?);
                }
                let map = GradedMap::from_columns(
                    field,
                    source.space().clone(),
                    target.space().clone(),
                    0,
                    |n, i| {
                        columns
                            .remove(&(n, i))
                            .unwrap_or_else(|| vec![field.zero(); target.space().dim(n)])
                    },
                )
                .expect("columns have the target dimension");
                model.maps.insert(
                    name.clone(),
                    ResolvedMap {
                        source_names: m.source.clone(),
                        target_names: m.target.clone(),
                        source,
                        target,
                        map,
                    },
                );
            }
            _ => {}
        }
    }
    for (name, decl) in &doc.decls {
        let ctx = Ctx { doc, name };
        if let Decl::Bimodule(b) = decl {
            ctx.expect(&b.complex, "complex")?;
            ctx.expect(&b.ring, "dga")?;
            let m = model.complexes[&b.complex].space().clone();
            let r = model.dgas[&b.ring].candidate.carrier.space().clone();
            let left = ctx.bilinear(field, &r, &m, &m, &b.left)?;
            let right = ctx.bilinear(field, &m, &r, &m, &b.right)?;
            model.bimodules.insert(
                name.clone(),
                ResolvedBimodule {
                    complex: b.complex.clone(),
                    ring: b.ring.clone(),
                    left,
                    right,
                },
            );
        }
    }
    for (name, decl) in &doc.decls {
        let ctx = Ctx { doc, name };
        let Decl::Ideal(i) = decl else { continue };
        let signature =
            |map: &str, source: Vec<&str>, target: Vec<&str>| -> Result<(), ParseError> {
                ctx.expect(map, "map")?;
                let m = &model.maps[map];
                if m.source_names != source || m.target_names != target {
                    return ctx.fail(format!(
                        "map '{map}' has type {} -> {}, expected {} -> {}",
                        m.source_names.join(" ⊗ "),
                        m.target_names.join(" ⊗ "),
                        source.join(" ⊗ "),
                        target.join(" ⊗ ")
                    ));
                }
                Ok(())
            };
        match i {
            IdealDecl::Full {
                ring,
                bimodule,
                nu_l,
                nu_r,
            } => {
                ctx.expect(ring, "dga")?;
                ctx.expect(bimodule, "bimodule")?;
                let b = &model.bimodules[bimodule];
                if &b.ring != ring {
                    return ctx.fail(format!(
                        "bimodule '{bimodule}' is over '{}', not '{ring}'",
                        b.ring
                    ));
                }
                let rc = model.dgas[ring].complex.as_str();
                signature(nu_l, vec![rc, &b.complex], vec![rc])?;
                signature(nu_r, vec![&b.complex, rc], vec![rc])?;
            }
            IdealDecl::Reduced { bimodule, j } => {
                ctx.expect(bimodule, "bimodule")?;
                let b = &model.bimodules[bimodule];
                let rc = model.dgas[&b.ring].complex.as_str();
                signature(j, vec![&b.complex], vec![rc])?;
            }
        }
        model.ideals.insert(name.clone(), i.clone());
    }
    Ok(model)
}
