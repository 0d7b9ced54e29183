//! Ideals as two-object enriched categories, and their reduced form.
//!
//! An [`IdealData`] is the full unpacking: a ring `R` (the hom-objects
//! `a→a`, `a→b`, `b→b`), a complex `I` (the hom-object `b→a`), and the four
//! structure maps
//!
//! | composite        | map                  |
//! |------------------|----------------------|
//! | `a ← a ← b`      | `μ_L : R ⊗ I -> I`   |
//! | `a ← b ← b`      | `μ_R : I ⊗ R -> I`   |
//! | `a ← b ← a`      | `ν_R : I ⊗ R -> R`   |
//! | `b ← a ← b`      | `ν_L : R ⊗ I -> R`   |
//!
//! besides the product of `R`. Associativity of composition is sixteen
//! squares, one per path of four objects; [`verify_ideal`] evaluates all of
//! them plus the identity diagrams.
//!
//! A [`SmithIdealData`] is the reduced form: a bimodule `I` with a bimodule
//! map `j : I -> R` that is central, `j(x)·y = x·j(y)`. [`derive_reduced`] and
//! [`build_ideal`] pass between the two.

use crate::algebra::{
    bimodule_map_report, bimodule_report, chain_entry, id, left_id, right_id, BimoduleCandidate,
    BimoduleStructure, DgaStructure,
};
use crate::complex::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::graded::{left_unitor_inverse, right_unitor_inverse, GradedMap};
use crate::report::{DiagramEntry, DiagramReport, Witness};

/// Labels of the sixteen associativity squares, in report order.
pub const SQUARE_LABELS: [&str; 16] = [
    "aaaa", "aaab", "aaba", "aabb", "abaa", "abab", "abba", "abbb", "baaa", "baab", "baba", "babb",
    "bbaa", "bbab", "bbba", "bbbb",
];

/// Squares whose four edges are all the product of `R`: each is literally
/// the associativity equation of the ring.
pub const RING_SQUARES: [&str; 5] = ["aaaa", "baaa", "bbaa", "bbba", "bbbb"];

pub const UNIT_LABELS: [&str; 3] = ["unit_a", "unit_b_L", "unit_b_R"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealData {
    ring: DgaStructure,
    carrier: ChainComplex,
    mu_l: ChainMap,
    mu_r: ChainMap,
    nu_l: ChainMap,
    nu_r: ChainMap,
}

impl IdealData {
    /// Checks shapes and that all four maps are chain maps; the category
    /// axioms are left to [`verify_ideal`].
    pub fn new(
        ring: DgaStructure,
        carrier: ChainComplex,
        mu_l: GradedMap,
        mu_r: GradedMap,
        nu_l: GradedMap,
        nu_r: GradedMap,
    ) -> Result<Self> {
        let r = ring.carrier().clone();
        let ri = r.tensor(&carrier)?;
        let ir = carrier.tensor(&r)?;
        Ok(IdealData {
            mu_l: ChainMap::new(ri.clone(), carrier.clone(), mu_l)?,
            mu_r: ChainMap::new(ir.clone(), carrier.clone(), mu_r)?,
            nu_l: ChainMap::new(ri, r.clone(), nu_l)?,
            nu_r: ChainMap::new(ir, r, nu_r)?,
            ring,
            carrier,
        })
    }

    pub fn ring(&self) -> &DgaStructure {
        &self.ring
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub fn mu_l(&self) -> &ChainMap {
        &self.mu_l
    }

    pub fn mu_r(&self) -> &ChainMap {
        &self.mu_r
    }

    pub fn nu_l(&self) -> &ChainMap {
        &self.nu_l
    }

    pub fn nu_r(&self) -> &ChainMap {
        &self.nu_r
    }

    pub fn with_nu_l(&self, nu_l: GradedMap) -> Result<Self> {
        Self::new(
            self.ring.clone(),
            self.carrier.clone(),
            self.mu_l.map().clone(),
            self.mu_r.map().clone(),
            nu_l,
            self.nu_r.map().clone(),
        )
    }

    pub fn with_nu_r(&self, nu_r: GradedMap) -> Result<Self> {
        Self::new(
            self.ring.clone(),
            self.carrier.clone(),
            self.mu_l.map().clone(),
            self.mu_r.map().clone(),
            self.nu_l.map().clone(),
            nu_r,
        )
    }
}

/// The five structure maps as plain graded maps, possibly violating the axioms.
#[derive(Clone, Copy, Debug)]
pub struct StructureMaps<'a> {
    pub mu: &'a GradedMap,
    pub mu_l: &'a GradedMap,
    pub mu_r: &'a GradedMap,
    pub nu_l: &'a GradedMap,
    pub nu_r: &'a GradedMap,
}

/// Evaluates the sixteen squares. Each entry compares the path along the top
/// and right edge, `Y ∘ (1 ⊗ X)`, with the path along the left and bottom
/// edge, `W ∘ (Z ⊗ 1)`.
pub fn associativity_squares(m: StructureMaps<'_>) -> Result<Vec<DiagramEntry>> {
    let r = m.mu.target();
    let i = m.mu_l.target();
    let StructureMaps {
        mu,
        mu_l,
        mu_r,
        nu_l,
        nu_r,
    } = m;
    let square = |label: &str,
                  first: &crate::graded::GradedSpace,
                  x: &GradedMap,
                  y: &GradedMap,
                  z: &GradedMap,
                  last: &crate::graded::GradedSpace,
                  w: &GradedMap|
     -> Result<DiagramEntry> {
        DiagramEntry::compare(
            label,
            &y.compose(&left_id(first, x)?)?,
            &w.compose(&right_id(z, last)?)?,
        )
    };
    let mut out = vec![
        square("aaaa", r, mu, mu, mu, r, mu)?,
        square("aaab", r, mu_l, mu_l, mu, i, mu_l)?,
        square("aaba", r, nu_r, mu, mu_l, r, nu_r)?,
        square("aabb", r, mu_r, mu_l, mu_l, r, mu_r)?,
        square("abaa", i, mu, nu_r, nu_r, r, mu)?,
        square("abab", i, nu_l, mu_r, nu_r, i, mu_l)?,
        square("abba", i, mu, nu_r, mu_r, r, nu_r)?,
        square("abbb", i, mu, mu_r, mu_r, r, mu_r)?,
        square("baaa", r, mu, mu, mu, r, mu)?,
        square("baab", r, mu_l, nu_l, mu, i, nu_l)?,
        square("baba", r, nu_r, mu, nu_l, r, mu)?,
        square("babb", r, mu_r, nu_l, nu_l, r, mu)?,
        square("bbaa", r, mu, mu, mu, r, mu)?,
        square("bbab", r, nu_l, mu, mu, i, nu_l)?,
        square("bbba", r, mu, mu, mu, r, mu)?,
        square("bbbb", r, mu, mu, mu, r, mu)?,
    ];
    for e in &mut out {
        if RING_SQUARES.contains(&e.label.as_str()) {
            e.duplicate_of = Some("assoc".into());
        }
    }
    Ok(out)
}

/// All sixteen squares and the three identity diagrams. Never short-circuits.
pub fn verify_ideal(ideal: &IdealData) -> Result<DiagramReport> {
    let field = ideal.ring.field();
    let r = ideal.ring.space();
    let i = ideal.carrier.space();
    let mu = ideal.ring.mult().map();
    let unit = ideal.ring.unit().map();
    let mut entries = associativity_squares(StructureMaps {
        mu,
        mu_l: ideal.mu_l.map(),
        mu_r: ideal.mu_r.map(),
        nu_l: ideal.nu_l.map(),
        nu_r: ideal.nu_r.map(),
    })?;

    let unit_a_left = DiagramEntry::compare(
        "unit_a",
        &mu.compose(&right_id(unit, r)?)?
            .compose(&left_unitor_inverse(field, r))?,
        &id(field, r),
    )?;
    let unit_a = if unit_a_left.passed() {
        DiagramEntry::compare(
            "unit_a",
            &mu.compose(&left_id(r, unit)?)?
                .compose(&right_unitor_inverse(field, r))?,
            &id(field, r),
        )?
    } else {
        unit_a_left
    };
    entries.push(unit_a);
    entries.push(DiagramEntry::compare(
        "unit_b_L",
        &ideal
            .mu_l
            .map()
            .compose(&right_id(unit, i)?)?
            .compose(&left_unitor_inverse(field, i))?,
        &id(field, i),
    )?);
    entries.push(DiagramEntry::compare(
        "unit_b_R",
        &ideal
            .mu_r
            .map()
            .compose(&left_id(i, unit)?)?
            .compose(&right_unitor_inverse(field, i))?,
        &id(field, i),
    )?);
    Ok(DiagramReport::new(entries))
}

/// `j_L = ν_L ∘ (i ⊗ 1) ∘ (I ≅ S ⊗ I)` and `j_R = ν_R ∘ (1 ⊗ i) ∘ (I ≅ I ⊗ S)`.
pub fn derive_units(ideal: &IdealData) -> Result<(ChainMap, ChainMap)> {
    let field = ideal.ring.field();
    let i = ideal.carrier.space();
    let unit = ideal.ring.unit().map();
    let j_l = ideal
        .nu_l
        .map()
        .compose(&right_id(unit, i)?)?
        .compose(&left_unitor_inverse(field, i))?;
    let j_r = ideal
        .nu_r
        .map()
        .compose(&left_id(i, unit)?)?
        .compose(&right_unitor_inverse(field, i))?;
    let (src, tgt) = (ideal.carrier.clone(), ideal.ring.carrier().clone());
    Ok((
        ChainMap::new(src.clone(), tgt.clone(), j_l)?,
        ChainMap::new(src, tgt, j_r)?,
    ))
}

fn relabel(mut report: DiagramReport, prefix: &str) -> DiagramReport {
    for e in &mut report.entries {
        e.label = format!("{prefix}{}", e.label);
    }
    report
}

/// Consequences of the axioms that single out the reduced form, each as exact
/// map equalities:
///
/// 1. `μ_L`, `μ_R` make `I` a unital bimodule;
/// 2. `ν_L`, `ν_R` are bimodule maps;
/// 3. `j_L = j_R`;
/// 4. `j` is a bimodule map;
/// 5. `μ_R ∘ (1 ⊗ j) = μ_L ∘ (j ⊗ 1)`;
/// 6. `ν_L = j ∘ μ_L = μ ∘ (1 ⊗ j)` and `ν_R = j ∘ μ_R = μ ∘ (j ⊗ 1)`.
pub fn reduced_conditions(ideal: &IdealData) -> Result<DiagramReport> {
    let r = ideal.ring.space();
    let i = ideal.carrier.space();
    let mu = ideal.ring.mult().map();
    let (mu_l, mu_r) = (ideal.mu_l.map(), ideal.mu_r.map());
    let (nu_l, nu_r) = (ideal.nu_l.map(), ideal.nu_r.map());

    let mut report = relabel(
        bimodule_report(&BimoduleCandidate {
            ring: ideal.ring.clone(),
            carrier: ideal.carrier.clone(),
            left: mu_l.clone(),
            right: mu_r.clone(),
        })?,
        "bimodule_",
    );

    report.entries.extend([
        DiagramEntry::compare(
            "nuL_left_linear",
            &nu_l.compose(&right_id(mu, i)?)?,
            &mu.compose(&left_id(r, nu_l)?)?,
        )?,
        DiagramEntry::compare(
            "nuL_right_linear",
            &nu_l.compose(&left_id(r, mu_r)?)?,
            &mu.compose(&right_id(nu_l, r)?)?,
        )?,
        DiagramEntry::compare(
            "nuR_left_linear",
            &nu_r.compose(&right_id(mu_l, r)?)?,
            &mu.compose(&left_id(r, nu_r)?)?,
        )?,
        DiagramEntry::compare(
            "nuR_right_linear",
            &nu_r.compose(&left_id(i, mu)?)?,
            &mu.compose(&right_id(nu_r, r)?)?,
        )?,
    ]);

    let (j_l, j_r) = derive_units(ideal)?;
    report
        .entries
        .push(DiagramEntry::compare("jL_eq_jR", j_l.map(), j_r.map())?);
    let j = j_l.map();

    report.entries.extend([
        DiagramEntry::compare(
            "j_left",
            &j.compose(mu_l)?,
            &mu.compose(&left_id(r, j)?)?,
        )?,
        DiagramEntry::compare(
            "j_right",
            &j.compose(mu_r)?,
            &mu.compose(&right_id(j, r)?)?,
        )?,
    ]);

    let mut central = centrality_entry(mu_l, mu_r, j)?;
    central.label = "centrality".into();
    report.entries.push(central);

    report.entries.extend([
        DiagramEntry::compare("nuL_eq_j_muL", nu_l, &j.compose(mu_l)?)?,
        DiagramEntry::compare("nuL_eq_mu_1j", nu_l, &mu.compose(&left_id(r, j)?)?)?,
        DiagramEntry::compare("nuR_eq_j_muR", nu_r, &j.compose(mu_r)?)?,
        DiagramEntry::compare("nuR_eq_mu_j1", nu_r, &mu.compose(&right_id(j, r)?)?)?,
    ]);
    Ok(report)
}

/// Forward direction of the reduction: a full Ideal passing every diagram
/// yields its reduced form with `j = j_L`.
pub fn derive_reduced(ideal: &IdealData) -> Result<SmithIdealData> {
    let axioms = verify_ideal(ideal)?;
    if !axioms.passed() {
        return Err(Error::Rejected {
            what: "ideal".into(),
            report: axioms,
        });
    }
    let conditions = reduced_conditions(ideal)?;
    if !conditions.passed() {
        return Err(Error::Rejected {
            what: "reduced conditions".into(),
            report: conditions,
        });
    }
    let bimodule = crate::algebra::verify_bimodule(&BimoduleCandidate {
        ring: ideal.ring.clone(),
        carrier: ideal.carrier.clone(),
        left: ideal.mu_l.map().clone(),
        right: ideal.mu_r.map().clone(),
    })?;
    let (j_l, _) = derive_units(ideal)?;
    SmithIdealData::new(bimodule, j_l.map().clone())
}

/// `j(x)·y` against `x·j(y)` on `I ⊗ I`: lhs is `μ_L ∘ (j ⊗ 1)`, rhs is
/// `μ_R ∘ (1 ⊗ j)`.
fn centrality_entry(mu_l: &GradedMap, mu_r: &GradedMap, j: &GradedMap) -> Result<DiagramEntry> {
    let i = mu_l.target();
    DiagramEntry::compare(
        "centrality",
        &mu_l.compose(&right_id(j, i)?)?,
        &mu_r.compose(&left_id(i, j)?)?,
    )
}

/// Centrality of a candidate `j` against a validated bimodule. On failure the
/// witness is the lexicographically first failing pair in `I ⊗ I`.
pub fn centrality_check(bimodule: &BimoduleStructure, j: &GradedMap) -> Result<DiagramEntry> {
    centrality_entry(bimodule.left().map(), bimodule.right().map(), j)
}

/// Every failing pair of the centrality equation, in basis order.
pub fn centrality_failures(bimodule: &BimoduleStructure, j: &GradedMap) -> Result<Vec<Witness>> {
    let i = bimodule.space();
    let lhs = bimodule.left().map().compose(&right_id(j, i)?)?;
    let rhs = bimodule.right().map().compose(&left_id(i, j)?)?;
    Ok(lhs
        .differences(&rhs)?
        .iter()
        .map(|d| Witness::from_difference(&lhs, d))
        .collect())
}

/// Chain-map, bimodule-map and centrality checks for a reduced candidate.
pub fn reduced_report(bimodule: &BimoduleStructure, j: &GradedMap) -> Result<DiagramReport> {
    let target = BimoduleStructure::regular(bimodule.ring());
    let mut report = bimodule_map_report("j_", bimodule, &target, j)?;
    report.entries.push(centrality_check(bimodule, j)?);
    Ok(report)
}

/// Reduced form: a bimodule with a central bimodule map into the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmithIdealData {
    bimodule: BimoduleStructure,
    j: ChainMap,
}

impl SmithIdealData {
    pub fn new(bimodule: BimoduleStructure, j: GradedMap) -> Result<Self> {
        let report = reduced_report(&bimodule, &j)?;
        if !report.passed() {
            return Err(Error::Rejected {
                what: "reduced ideal".into(),
                report,
            });
        }
        let j = ChainMap::new(
            bimodule.carrier().clone(),
            bimodule.ring().carrier().clone(),
            j,
        )?;
        Ok(SmithIdealData { bimodule, j })
    }

    pub fn bimodule(&self) -> &BimoduleStructure {
        &self.bimodule
    }

    pub fn ring(&self) -> &DgaStructure {
        self.bimodule.ring()
    }

    pub fn carrier(&self) -> &ChainComplex {
        self.bimodule.carrier()
    }

    pub fn j(&self) -> &ChainMap {
        &self.j
    }
}

/// Converse direction: `ν_L = j ∘ μ_L`, `ν_R = j ∘ μ_R`. The result is run
/// through [`verify_ideal`] and returned only if every diagram passes.
pub fn build_ideal(reduced: &SmithIdealData) -> Result<IdealData> {
    let b = &reduced.bimodule;
    let j = reduced.j.map();
    let ideal = IdealData::new(
        b.ring().clone(),
        b.carrier().clone(),
        b.left().map().clone(),
        b.right().map().clone(),
        j.compose(b.left().map())?,
        j.compose(b.right().map())?,
    )?;
    let report = verify_ideal(&ideal)?;
    if !report.passed() {
        return Err(Error::Rejected {
            what: "built ideal".into(),
            report,
        });
    }
    Ok(ideal)
}

/// Checks that `j` is a chain map into the ring (without bimodule checks).
pub fn j_chain_entry(bimodule: &BimoduleStructure, j: &GradedMap) -> Result<DiagramEntry> {
    chain_entry("j_chain", bimodule.carrier(), bimodule.ring().carrier(), j)
}
