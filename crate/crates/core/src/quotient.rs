//! Quotients by ideals (as mapping cones) and ideals from morphisms (as
//! kernels), and the round trips between them.
//!
//! For a reduced ideal `j : I -> R` the cone `R ⊕ sI` carries the product
//!
//! ```text
//! (r, 0)(r', 0)  = (r r', 0)
//! (r, 0)(0, sx)  = (0, (-1)^|r| s(r x))
//! (0, sx)(r, 0)  = (0, s(x r))
//! (0, sx)(0, sy) = 0
//! ```
//!
//! Leibniz on `sI ⊗ sI` is exactly centrality of `j`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{
    dga_report, verify_bimodule, verify_dga, verify_dga_map, BimoduleCandidate, BimoduleStructure,
    DgaCandidate, DgaMorphism, DgaStructure,
};
use crate::complex::{
    cone, homology, is_quasi_iso, lift_through, strict_kernel, ChainComplex, ChainMap, Cone,
    Kernel, QuasiIsoReport,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graded::{tensor_positions, GradedMap, GradedSpace};
use crate::ideal::{build_ideal, SmithIdealData};
use crate::matrix::Matrix;
use crate::report::{DiagramEntry, DiagramReport};

/// Cone product for an arbitrary chain map `j : I -> R` out of a bimodule.
/// No centrality or linearity is assumed, so the result may fail
/// [`dga_report`].
pub fn cone_candidate(bimodule: &BimoduleStructure, j: &ChainMap) -> Result<(Cone, DgaCandidate)> {
    let ring = bimodule.ring();
    let field = ring.field();
    let r = ring.space();
    let i = bimodule.space();
    let c = cone(j)?;
    let q = c.complex.space().clone();
    let rr = tensor_positions(r, r);
    let ri = tensor_positions(r, i);
    let ir = tensor_positions(i, r);
    let (mu, mu_l, mu_r) = (
        ring.mult().map(),
        bimodule.left().map(),
        bimodule.right().map(),
    );

    // Basis element `a` of degree `n` of the cone: ring part or shifted ideal part.
    let split = |n: i64, a: usize| -> std::result::Result<(i64, usize), (i64, usize)> {
        let rn = r.dim(n);
        if a < rn {
            Ok((n, a))
        } else {
            Err((n - 1, a - rn))
        }
    };
    let mult = GradedMap::bilinear(field, &q, &q, q.clone(), 0, |p, a, s, b| {
        let n = p + s;
        let mut out = vec![Scalar::zero(); q.dim(n)];
        let offset = r.dim(n);
        match (split(p, a), split(s, b)) {
            (Ok((p, a)), Ok((s, b))) => {
                let col = mu.column(n, rr[&(p, a, s, b)]);
                out[..offset].clone_from_slice(&col);
            }
            (Ok((p, a)), Err((s, b))) => {
                let col = mu_l.column(p + s, ri[&(p, a, s, b)]);
                let sign = field.sign(p);
                for (k, v) in col.iter().enumerate() {
                    out[offset + k] = field.mul(&sign, v);
                }
            }
            (Err((p, a)), Ok((s, b))) => {
                let col = mu_r.column(p + s, ir[&(p, a, s, b)]);
                out[offset..].clone_from_slice(&col);
            }
            (Err(_), Err(_)) => {}
        }
        out
    })?;
    let mut unit = ring.one();
    unit.resize(q.dim(0), Scalar::zero());
    let unit = GradedMap::from_columns(field, GradedSpace::unit(), q, 0, |_, _| unit.clone())?;
    let candidate = DgaCandidate {
        carrier: c.complex.clone(),
        mult,
        unit,
    };
    Ok((c, candidate))
}

/// DGA axioms of the cone product for a candidate `j`.
pub fn cone_report(bimodule: &BimoduleStructure, j: &GradedMap) -> Result<DiagramReport> {
    let j = ChainMap::new(
        bimodule.carrier().clone(),
        bimodule.ring().carrier().clone(),
        j.clone(),
    )?;
    dga_report(&cone_candidate(bimodule, &j)?.1)
}

/// The quotient `R/I` as a DGA together with `R -> R/I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    pub ideal: SmithIdealData,
    pub cone: Cone,
    pub quotient: DgaStructure,
    pub projection: DgaMorphism,
}

pub fn cone_dga(ideal: &SmithIdealData) -> Result<QuotientData> {
    let (c, candidate) = cone_candidate(ideal.bimodule(), ideal.j())?;
    let report = dga_report(&candidate)?;
    if !report.passed() {
        return Err(Error::Rejected {
            what: "cone dga".into(),
            report,
        });
    }
    let quotient = verify_dga(&candidate)?;
    let projection = verify_dga_map(ideal.ring(), &quotient, c.inclusion.map())?;
    Ok(QuotientData {
        ideal: ideal.clone(),
        cone: c,
        quotient,
        projection,
    })
}

/// Degreewise quotient `R / j(I)` for injective `j`, compared with the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictQuotient {
    pub cone: QuotientData,
    pub quotient: DgaStructure,
    pub projection: DgaMorphism,
    /// `Cone(j) -> R/j(I)`, `(r, sx) ↦ [r]`.
    pub comparison: DgaMorphism,
    pub quasi_iso: QuasiIsoReport,
}

pub fn strict_quotient_dga(ideal: &SmithIdealData) -> Result<StrictQuotient> {
    let j = ideal.j();
    if let Some(n) = j.first_non_injective_degree() {
        return Err(Error::NotInjective { degree: n });
    }
    let ring = ideal.ring();
    let field = ring.field();
    let r = ring.space();

    // Complement of the image spanned by standard basis vectors, chosen
    // greedily in basis order.
    let mut complement: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut project: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for n in r.degrees() {
        let rn = r.dim(n);
        let jn = j.map().block(n);
        let k = jn.cols();
        let (_, pivots) = jn.hstack(&Matrix::identity(field, rn)).rref();
        let chosen: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k).collect();
        let e = Matrix::identity(field, rn).select_columns(&chosen);
        let inv = jn.hstack(&e).inverse().expect("image and complement span");
        let rows: Vec<usize> = (k..rn).collect();
        project.insert(n, inv.select_rows(&rows));
        if !chosen.is_empty() {
            labels.insert(
                n,
                chosen
                    .iter()
                    .map(|&c| format!("[{}]", r.label(n, c)))
                    .collect(),
            );
        }
        complement.insert(n, e);
    }
    let space = GradedSpace::new(labels);
    let proj = |n: i64, v: &[Scalar]| -> Vec<Scalar> {
        match project.get(&n) {
            Some(p) => p.apply(v),
            None => Vec::new(),
        }
    };
    let lift = |n: i64, i: usize| complement[&n].column(i);

    let d = ring.carrier().differential();
    let diff = GradedMap::from_columns(field, space.clone(), space.clone(), -1, |n, i| {
        proj(n - 1, &d.apply(n, &lift(n, i)))
    })?;
    let carrier = ChainComplex::new(diff)?;
    let candidate = DgaCandidate::from_products(carrier, &proj(0, &ring.one()), |p, a, q, b| {
        proj(p + q, &ring.multiply(p, &lift(p, a), q, &lift(q, b)))
    })?;
    let quotient = verify_dga(&candidate)?;
    let pmap = GradedMap::from_columns(field, r.clone(), space.clone(), 0, |n, i| {
        project[&n].column(i)
    })?;
    let projection = verify_dga_map(ring, &quotient, &pmap)?;

    let cone = cone_dga(ideal)?;
    let cspace = cone.quotient.space().clone();
    let cmap = GradedMap::from_columns(field, cspace, space.clone(), 0, |n, i| {
        if i < r.dim(n) {
            project[&n].column(i)
        } else {
            vec![Scalar::zero(); space.dim(n)]
        }
    })?;
    let comparison = verify_dga_map(&cone.quotient, &quotient, &cmap)?;
    let quasi_iso = is_quasi_iso(comparison.map());
    Ok(StrictQuotient {
        cone,
        quotient,
        projection,
        comparison,
        quasi_iso,
    })
}

/// The kernel of a surjective DGA map as a reduced ideal of its source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub morphism: DgaMorphism,
    pub kernel: Kernel,
    pub ideal: SmithIdealData,
}

pub fn fiber_ideal(f: &DgaMorphism) -> Result<FiberData> {
    if let Some(n) = f.map().first_non_surjective_degree() {
        return Err(Error::NotSurjective { degree: n });
    }
    let ring = f.source();
    let kernel = strict_kernel(f.map())?;
    let inc = kernel.inclusion.map();
    let r = ring.space();
    let k = kernel.complex.space();
    let mu = ring.mult().map();
    let closed = |g: GradedMap| {
        lift_through(&g, inc)
            .ok_or_else(|| Error::Shape("kernel is not closed under products".into()))
    };
    let left = closed(mu.compose(&GradedMap::identity(ring.field(), r).tensor(inc)?)?)?;
    let right = closed(mu.compose(&inc.tensor(&GradedMap::identity(ring.field(), r))?)?)?;
    debug_assert_eq!(left.target(), k);
    let bimodule = verify_bimodule(&BimoduleCandidate {
        ring: ring.clone(),
        carrier: kernel.complex.clone(),
        left,
        right,
    })?;
    let ideal = SmithIdealData::new(bimodule, inc.clone())?;
    build_ideal(&ideal)?;
    Ok(FiberData {
        morphism: f.clone(),
        kernel,
        ideal,
    })
}

/// Fiber then cone: `Cone(ker f -> R) -> R'` is a DGA quasi-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub fiber: FiberData,
    pub cone: QuotientData,
    /// `(r, sx) ↦ f(r)`
    pub comparison: DgaMorphism,
    pub quasi_iso: QuasiIsoReport,
    pub report: DiagramReport,
}

fn entry(label: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<DiagramEntry> {
    if ok {
        Ok(DiagramEntry::pass(label))
    } else {
        Err(Error::RoundTrip(format!("{label}: {}", detail())))
    }
}

pub fn roundtrip_check(f: &DgaMorphism) -> Result<RoundTrip> {
    let fiber = fiber_ideal(f)?;
    let cone = cone_dga(&fiber.ideal)?;
    let field = f.source().field();
    let r = f.source().space();
    let target = f.target().space();
    let fm = f.map().map();
    let cmap = GradedMap::from_columns(
        field,
        cone.quotient.space().clone(),
        target.clone(),
        0,
        |n, i| {
            if i < r.dim(n) {
                fm.column(n, i)
            } else {
                vec![Scalar::zero(); target.dim(n)]
            }
        },
    )?;
    let comparison = verify_dga_map(&cone.quotient, f.target(), &cmap)?;
    let quasi_iso = is_quasi_iso(comparison.map());

    let mut entries = vec![
        DiagramEntry::pass("fiber_ideal"),
        DiagramEntry::pass("cone_dga"),
        DiagramEntry::pass("comparison_dga_map"),
    ];
    entries.push(entry("quasi_iso", quasi_iso.is_quasi_iso(), || {
        quasi_iso
            .degrees
            .iter()
            .filter(|d| !d.is_iso())
            .map(|d| {
                format!(
                    "H_{} {} -> {} rank {}",
                    d.degree, d.source_dim, d.target_dim, d.rank
                )
            })
            .collect::<Vec<_>>()
            .join(", ")
    })?);
    let chi_cone = cone.quotient.space().euler_characteristic();
    let chi_target = target.euler_characteristic();
    entries.push(entry("euler", chi_cone == chi_target, || {
        format!("{chi_cone} != {chi_target}")
    })?);
    let h_cone = homology(cone.quotient.carrier()).euler_characteristic();
    let h_target = homology(f.target().carrier()).euler_characteristic();
    entries.push(entry("homology_euler", h_cone == h_target, || {
        format!("{h_cone} != {h_target}")
    })?);
    Ok(RoundTrip {
        fiber,
        cone,
        comparison,
        quasi_iso,
        report: DiagramReport::new(entries),
    })
}

/// Cone then fiber: for injective `j`, the kernel of `R -> R/j(I)` is
/// isomorphic to `I` as a bimodule, compatibly with `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealIso {
    pub quotient: StrictQuotient,
    pub fiber: FiberData,
    /// `I -> ker(R -> R/j(I))`
    pub iso: ChainMap,
    pub report: DiagramReport,
}

pub fn cone_then_fiber(ideal: &SmithIdealData) -> Result<IdealIso> {
    let quotient = strict_quotient_dga(ideal)?;
    let fiber = fiber_ideal(&quotient.projection)?;
    let inc = fiber.ideal.j().map();
    let phi = lift_through(ideal.j().map(), inc)
        .ok_or_else(|| Error::RoundTrip("j does not land in the kernel".into()))?;
    let iso = ChainMap::new(ideal.carrier().clone(), fiber.ideal.carrier().clone(), phi)?;
    let space = ideal.carrier().space();
    let mut entries = vec![
        DiagramEntry::pass("strict_quotient"),
        DiagramEntry::pass("fiber_ideal"),
    ];
    let bad = space
        .degrees()
        .chain(fiber.ideal.carrier().space().degrees())
        .find(|&n| {
            let b = iso.map().block(n);
            b.rows() != b.cols() || b.rank() != b.rows()
        });
    entries.push(entry("iso", bad.is_none(), || {
        format!("not invertible in degree {}", bad.unwrap_or(0))
    })?);
    let linear = crate::algebra::bimodule_map_report(
        "iso_",
        ideal.bimodule(),
        fiber.ideal.bimodule(),
        iso.map(),
    )?;
    for e in linear.entries {
        let ok = e.passed();
        entries.push(entry(&e.label.clone(), ok, || format!("{:?}", e.witness))?);
    }
    entries.push(DiagramEntry::compare(
        "j_compatible",
        ideal.j().map(),
        &inc.compose(iso.map())?,
    )?);
    Ok(IdealIso {
        quotient,
        fiber,
        iso,
        report: DiagramReport::new(entries),
    })
}
