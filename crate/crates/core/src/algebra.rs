//! Differential graded algebras, their morphisms, and bimodules, each checked
//! axiom by axiom as exact equalities of composite maps.

use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::{
    left_unitor_inverse, right_unitor_inverse, tensor_vector, GradedMap, GradedSpace,
};
use crate::report::{DiagramEntry, DiagramReport, Witness};

pub(crate) fn id(field: Field, space: &GradedSpace) -> GradedMap {
    GradedMap::identity(field, space)
}

/// `f ⊗ 1_X`
pub(crate) fn right_id(f: &GradedMap, x: &GradedSpace) -> Result<GradedMap> {
    f.tensor(&id(f.field(), x))
}

/// `1_X ⊗ f`
pub(crate) fn left_id(x: &GradedSpace, f: &GradedMap) -> Result<GradedMap> {
    id(f.field(), x).tensor(f)
}

/// Chain-map condition `d ∘ f = f ∘ d` as a report entry.
pub(crate) fn chain_entry(
    label: &str,
    source: &ChainComplex,
    target: &ChainComplex,
    f: &GradedMap,
) -> Result<DiagramEntry> {
    DiagramEntry::compare(
        label,
        &target.differential().compose(f)?,
        &f.compose(source.differential())?,
    )
}

fn expect_shape(
    what: &str,
    f: &GradedMap,
    source: &GradedSpace,
    target: &GradedSpace,
) -> Result<()> {
    if f.degree() != 0 {
        return Err(Error::Shape(format!(
            "{what} must have degree 0, has {}",
            f.degree()
        )));
    }
    if f.source() != source {
        return Err(Error::Shape(format!("{what} has the wrong source space")));
    }
    if f.target() != target {
        return Err(Error::Shape(format!("{what} has the wrong target space")));
    }
    Ok(())
}

/// Unvalidated DGA data: a complex with a product and a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaCandidate {
    pub carrier: ChainComplex,
    pub mult: GradedMap,
    pub unit: GradedMap,
}

impl DgaCandidate {
    /// Product given on basis pairs: `product(p, i, q, j)` is the
    /// coordinate vector of `b_{p,i} · b_{q,j}` in degree `p + q`.
    pub fn from_products(
        carrier: ChainComplex,
        unit: &[Scalar],
        product: impl FnMut(i64, usize, i64, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let field = carrier.field();
        let space = carrier.space().clone();
        let mult = GradedMap::bilinear(field, &space, &space, space.clone(), 0, product)?;
        let unit =
            GradedMap::from_columns(field, GradedSpace::unit(), space, 0, |_, _| unit.to_vec())?;
        Ok(DgaCandidate {
            carrier,
            mult,
            unit,
        })
    }
}

/// A validated DGA `(R, μ, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DgaStructure {
    carrier: ChainComplex,
    mult: ChainMap,
    unit: ChainMap,
}

/// Runs every DGA axiom and returns the full report; shape problems are errors.
pub fn dga_report(c: &DgaCandidate) -> Result<DiagramReport> {
    let field = c.carrier.field();
    let r = c.carrier.space();
    let rr = r.tensor(r);
    expect_shape("product", &c.mult, &rr, r)?;
    expect_shape("unit", &c.unit, &GradedSpace::unit(), r)?;
    let rr_complex = c.carrier.tensor(&c.carrier)?;
    let s = ChainComplex::unit(field);
    let mu = &c.mult;
    let i = &c.unit;
    Ok(DiagramReport::new(vec![
        associativity_entry("assoc", mu)?,
        chain_entry("leibniz", &rr_complex, &c.carrier, mu)?,
        chain_entry("unit_chain", &s, &c.carrier, i)?,
        DiagramEntry::compare(
            "unit_left",
            &mu.compose(&right_id(i, r)?)?
                .compose(&left_unitor_inverse(field, r))?,
            &id(field, r),
        )?,
        DiagramEntry::compare(
            "unit_right",
            &mu.compose(&left_id(r, i)?)?
                .compose(&right_unitor_inverse(field, r))?,
            &id(field, r),
        )?,
    ]))
}

/// Every basis pair of `R ⊗ R` on which `d ∘ μ` and `μ ∘ d` disagree.
pub fn leibniz_failures(c: &DgaCandidate) -> Result<Vec<Witness>> {
    let rr = c.carrier.tensor(&c.carrier)?;
    let lhs = c.carrier.differential().compose(&c.mult)?;
    let rhs = c.mult.compose(rr.differential())?;
    Ok(lhs
        .differences(&rhs)?
        .iter()
        .map(|d| Witness::from_difference(&lhs, d))
        .collect())
}

/// `μ ∘ (1 ⊗ μ) = μ ∘ (μ ⊗ 1)` on `R ⊗ R ⊗ R`.
pub fn associativity_entry(label: &str, mu: &GradedMap) -> Result<DiagramEntry> {
    let r = mu.target();
    DiagramEntry::compare(
        label,
        &mu.compose(&left_id(r, mu)?)?,
        &mu.compose(&right_id(mu, r)?)?,
    )
}

pub fn verify_dga(c: &DgaCandidate) -> Result<DgaStructure> {
    let report = dga_report(c)?;
    if !report.passed() {
        return Err(Error::Rejected {
            what: "dga".into(),
            report,
        });
    }
    let field = c.carrier.field();
    let rr = c.carrier.tensor(&c.carrier)?;
    Ok(DgaStructure {
        mult: ChainMap::new(rr, c.carrier.clone(), c.mult.clone())?,
        unit: ChainMap::new(ChainComplex::unit(field), c.carrier.clone(), c.unit.clone())?,
        carrier: c.carrier.clone(),
    })
}

impl DgaStructure {
    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub fn space(&self) -> &GradedSpace {
        self.carrier.space()
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    pub fn mult(&self) -> &ChainMap {
        &self.mult
    }

    pub fn unit(&self) -> &ChainMap {
        &self.unit
    }

    /// Back to raw data; `verify_dga` on the result returns `self`.
    pub fn candidate(&self) -> DgaCandidate {
        DgaCandidate {
            carrier: self.carrier.clone(),
            mult: self.mult.map().clone(),
            unit: self.unit.map().clone(),
        }
    }

    /// The unit `1 ∈ R_0` as a coordinate vector.
    pub fn one(&self) -> Vec<Scalar> {
        self.unit.map().column(0, 0)
    }

    /// `b_{p,i} · b_{q,j}` via the product matrix.
    pub fn product_of_basis(&self, p: i64, i: usize, q: i64, j: usize) -> Vec<Scalar> {
        let r = self.space();
        let field = self.field();
        let mut a = vec![field.zero(); r.dim(p)];
        a[i] = field.one();
        let mut b = vec![field.zero(); r.dim(q)];
        b[j] = field.one();
        self.multiply(p, &a, q, &b)
    }

    /// Product of homogeneous elements given as coordinate vectors.
    pub fn multiply(&self, p: i64, a: &[Scalar], q: i64, b: &[Scalar]) -> Vec<Scalar> {
        let r = self.space();
        let ab = tensor_vector(self.field(), r, r, p, a, q, b);
        self.mult.map().apply(p + q, &ab)
    }
}

/// Validated `f : R -> R'` with `f ∘ μ = μ' ∘ (f ⊗ f)` and `f ∘ i = i'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaMorphism {
    source: DgaStructure,
    target: DgaStructure,
    map: ChainMap,
}

pub fn dga_map_report(
    source: &DgaStructure,
    target: &DgaStructure,
    f: &GradedMap,
) -> Result<DiagramReport> {
    expect_shape("dga map", f, source.space(), target.space())?;
    Ok(DiagramReport::new(vec![
        chain_entry("chain", source.carrier(), target.carrier(), f)?,
        DiagramEntry::compare(
            "mult",
            &f.compose(source.mult().map())?,
            &target.mult().map().compose(&f.tensor(f)?)?,
        )?,
        DiagramEntry::compare(
            "unit",
            &f.compose(source.unit().map())?,
            target.unit().map(),
        )?,
    ]))
}

pub fn verify_dga_map(
    source: &DgaStructure,
    target: &DgaStructure,
    f: &GradedMap,
) -> Result<DgaMorphism> {
    let report = dga_map_report(source, target, f)?;
    if !report.passed() {
        return Err(Error::Rejected {
            what: "dga map".into(),
            report,
        });
    }
    Ok(DgaMorphism {
        map: ChainMap::new(
            source.carrier().clone(),
            target.carrier().clone(),
            f.clone(),
        )?,
        source: source.clone(),
        target: target.clone(),
    })
}

impl DgaMorphism {
    pub fn identity(r: &DgaStructure) -> Self {
        DgaMorphism {
            source: r.clone(),
            target: r.clone(),
            map: ChainMap::identity(r.carrier()),
        }
    }

    pub fn source(&self) -> &DgaStructure {
        &self.source
    }

    pub fn target(&self) -> &DgaStructure {
        &self.target
    }

    pub fn map(&self) -> &ChainMap {
        &self.map
    }
}

/// Unvalidated bimodule data over a validated ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleCandidate {
    pub ring: DgaStructure,
    pub carrier: ChainComplex,
    /// `μ_L : R ⊗ I -> I`
    pub left: GradedMap,
    /// `μ_R : I ⊗ R -> I`
    pub right: GradedMap,
}

/// A validated unital `R`-`R`-bimodule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BimoduleStructure {
    ring: DgaStructure,
    carrier: ChainComplex,
    left: ChainMap,
    right: ChainMap,
}

pub fn bimodule_report(c: &BimoduleCandidate) -> Result<DiagramReport> {
    let field = c.ring.field();
    let r = c.ring.space();
    let m = c.carrier.space();
    expect_shape("left action", &c.left, &r.tensor(m), m)?;
    expect_shape("right action", &c.right, &m.tensor(r), m)?;
    let mu = c.ring.mult().map();
    let i = c.ring.unit().map();
    let (ml, mr) = (&c.left, &c.right);
    Ok(DiagramReport::new(vec![
        chain_entry(
            "left_chain",
            &c.ring.carrier().tensor(&c.carrier)?,
            &c.carrier,
            ml,
        )?,
        chain_entry(
            "right_chain",
            &c.carrier.tensor(c.ring.carrier())?,
            &c.carrier,
            mr,
        )?,
        // a <- a <- a <- b
        DiagramEntry::compare(
            "aaab",
            &ml.compose(&left_id(r, ml)?)?,
            &ml.compose(&right_id(mu, m)?)?,
        )?,
        // a <- a <- b <- b
        DiagramEntry::compare(
            "aabb",
            &ml.compose(&left_id(r, mr)?)?,
            &mr.compose(&right_id(ml, r)?)?,
        )?,
        // a <- b <- b <- b
        DiagramEntry::compare(
            "abbb",
            &mr.compose(&left_id(m, mu)?)?,
            &mr.compose(&right_id(mr, r)?)?,
        )?,
        DiagramEntry::compare(
            "unit_L",
            &ml.compose(&right_id(i, m)?)?
                .compose(&left_unitor_inverse(field, m))?,
            &id(field, m),
        )?,
        DiagramEntry::compare(
            "unit_R",
            &mr.compose(&left_id(m, i)?)?
                .compose(&right_unitor_inverse(field, m))?,
            &id(field, m),
        )?,
    ]))
}

pub fn verify_bimodule(c: &BimoduleCandidate) -> Result<BimoduleStructure> {
    let report = bimodule_report(c)?;
    if !report.passed() {
        return Err(Error::Rejected {
            what: "bimodule".into(),
            report,
        });
    }
    let r = c.ring.carrier();
    Ok(BimoduleStructure {
        left: ChainMap::new(r.tensor(&c.carrier)?, c.carrier.clone(), c.left.clone())?,
        right: ChainMap::new(c.carrier.tensor(r)?, c.carrier.clone(), c.right.clone())?,
        ring: c.ring.clone(),
        carrier: c.carrier.clone(),
    })
}

impl BimoduleStructure {
    /// `R` over itself through `μ` on both sides.
    pub fn regular(ring: &DgaStructure) -> Self {
        BimoduleStructure {
            ring: ring.clone(),
            carrier: ring.carrier().clone(),
            left: ring.mult().clone(),
            right: ring.mult().clone(),
        }
    }

    /// The free bimodule `R ⊗ X ⊗ R`, acting by `μ ⊗ 1 ⊗ 1` and `1 ⊗ 1 ⊗ μ`.
    pub fn free(ring: &DgaStructure, x: &ChainComplex) -> Result<Self> {
        let r = ring.carrier();
        let carrier = r.tensor(x)?.tensor(r)?;
        let mu = ring.mult().map();
        let left = right_id(&right_id(mu, x.space())?, r.space())?;
        let right = left_id(&r.space().tensor(x.space()), mu)?;
        verify_bimodule(&BimoduleCandidate {
            ring: ring.clone(),
            carrier,
            left,
            right,
        })
    }

    /// `R ⊗ R` with `μ ⊗ 1` on the left and `1 ⊗ μ` on the right.
    pub fn free_square(ring: &DgaStructure) -> Result<Self> {
        let r = ring.carrier();
        let mu = ring.mult().map();
        verify_bimodule(&BimoduleCandidate {
            ring: ring.clone(),
            carrier: r.tensor(r)?,
            left: right_id(mu, r.space())?,
            right: left_id(r.space(), mu)?,
        })
    }

    pub fn ring(&self) -> &DgaStructure {
        &self.ring
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub fn space(&self) -> &GradedSpace {
        self.carrier.space()
    }

    pub fn left(&self) -> &ChainMap {
        &self.left
    }

    pub fn right(&self) -> &ChainMap {
        &self.right
    }

    pub fn candidate(&self) -> BimoduleCandidate {
        BimoduleCandidate {
            ring: self.ring.clone(),
            carrier: self.carrier.clone(),
            left: self.left.map().clone(),
            right: self.right.map().clone(),
        }
    }
}

/// Left and right linearity of `f : M -> N` between bimodules over the same ring.
pub fn bimodule_map_report(
    prefix: &str,
    source: &BimoduleStructure,
    target: &BimoduleStructure,
    f: &GradedMap,
) -> Result<DiagramReport> {
    let r = source.ring().space();
    expect_shape("bimodule map", f, source.space(), target.space())?;
    Ok(DiagramReport::new(vec![
        chain_entry(
            &format!("{prefix}chain"),
            source.carrier(),
            target.carrier(),
            f,
        )?,
        DiagramEntry::compare(
            format!("{prefix}left"),
            &f.compose(source.left().map())?,
            &target.left().map().compose(&left_id(r, f)?)?,
        )?,
        DiagramEntry::compare(
            format!("{prefix}right"),
            &f.compose(source.right().map())?,
            &target.right().map().compose(&right_id(f, r)?)?,
        )?,
    ]))
}
