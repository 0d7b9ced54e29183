//! Concrete rings, ideals and morphisms: discrete algebras from structure
//! constants, sub-ideals, sums, the free-square candidate, and the fixture
//! catalog used throughout the tests and shipped with the CLI.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{
    left_id, right_id, verify_bimodule, verify_dga, verify_dga_map, BimoduleCandidate,
    BimoduleStructure, DgaCandidate, DgaMorphism, DgaStructure,
};
use crate::complex::{lift_through, vector_label, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::{tensor_positions, GradedMap, GradedSpace};
use crate::ideal::{build_ideal, centrality_check, centrality_failures, SmithIdealData};
use crate::matrix::Matrix;
use crate::report::{DiagramEntry, Witness};

/// Finite-dimensional unital associative algebra in degree 0, given by
/// structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteAlgebra {
    field: Field,
    labels: Vec<String>,
    unit: Vec<Scalar>,
    /// `table[a][b]` holds the coordinates of `e_a e_b`.
    table: Vec<Vec<Vec<Scalar>>>,
}

fn unit_vector(field: Field, len: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); len];
    v[i] = field.one();
    v
}

impl DiscreteAlgebra {
    pub fn new(
        field: Field,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        table: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self> {
        let n = labels.len();
        let ok = unit.len() == n
            && table.len() == n
            && table
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if !ok {
            return Err(Error::Shape(format!(
                "structure constants for a {n}-dimensional algebra"
            )));
        }
        Ok(DiscreteAlgebra {
            field,
            labels,
            unit,
            table,
        })
    }

    /// Commutative `field[vars] / (vars)^(max + 1)` on monomials of total
    /// degree at most `max`, ordered by total degree and then by exponents
    /// in decreasing order (`one, u, v, u2, uv, v2`).
    pub fn monomial(field: Field, vars: &[&str], max: u32) -> Self {
        let mut monos: Vec<Vec<u32>> = Vec::new();
        for total in 0..=max {
            let mut layer = Vec::new();
            compositions(total, vars.len(), &mut Vec::new(), &mut layer);
            layer.sort_by(|a, b| b.cmp(a));
            monos.extend(layer);
        }
        let labels = monos
            .iter()
            .map(|m| {
                let s: String = m
                    .iter()
                    .zip(vars)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, v)| {
                        if *e == 1 {
                            v.to_string()
                        } else {
                            format!("{v}{e}")
                        }
                    })
                    .collect();
                if s.is_empty() {
                    "one".to_string()
                } else {
                    s
                }
            })
            .collect();
        let n = monos.len();
        let table = monos
            .iter()
            .map(|a| {
                monos
                    .iter()
                    .map(|b| {
                        let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        match monos.iter().position(|m| *m == prod) {
                            Some(k) => unit_vector(field, n, k),
                            None => vec![field.zero(); n],
                        }
                    })
                    .collect()
            })
            .collect();
        DiscreteAlgebra {
            field,
            labels,
            unit: unit_vector(field, n, 0),
            table,
        }
    }

    /// `field[t]/(t^n)`.
    pub fn truncated_polynomial(field: Field, n: u32) -> Self {
        Self::monomial(field, &["t"], n.saturating_sub(1))
    }

    /// `field[ε]/(ε²)` with basis `one, eps`.
    pub fn dual_numbers(field: Field) -> Self {
        Self::monomial(field, &["eps"], 1)
    }

    /// `field[u,v]/(u,v)^k`.
    pub fn uv(field: Field, k: u32) -> Self {
        Self::monomial(field, &["u", "v"], k.saturating_sub(1))
    }

    /// Upper-triangular 2×2 matrices, basis `e11, e12, e22`.
    pub fn upper_triangular(field: Field) -> Self {
        let idx = [(1, 1), (1, 2), (2, 2)];
        let table = idx
            .iter()
            .map(|&(i, j)| {
                idx.iter()
                    .map(|&(k, l)| {
                        let mut v = vec![field.zero(); 3];
                        if j == k {
                            let pos = idx.iter().position(|&e| e == (i, l)).unwrap();
                            v[pos] = field.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        DiscreteAlgebra {
            field,
            labels: vec!["e11".into(), "e12".into(), "e22".into()],
            unit: vec![field.one(), field.zero(), field.one()],
            table,
        }
    }

    /// `field × field` with idempotents `p1, p2`.
    pub fn diagonal(field: Field) -> Self {
        let table = (0..2)
            .map(|a| {
                (0..2)
                    .map(|b| {
                        if a == b {
                            unit_vector(field, 2, a)
                        } else {
                            vec![field.zero(); 2]
                        }
                    })
                    .collect()
            })
            .collect();
        DiscreteAlgebra {
            field,
            labels: vec!["p1".into(), "p2".into()],
            unit: vec![field.one(), field.one()],
            table,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis_vector(&self, label: &str) -> Option<Vec<Scalar>> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(unit_vector(self.field, self.dim(), i))
    }

    pub fn dga(&self) -> Result<DgaStructure> {
        let space = GradedSpace::new([(0, self.labels.clone())]);
        let carrier = ChainComplex::with_zero_differential(self.field, space);
        verify_dga(&DgaCandidate::from_products(
            carrier,
            &self.unit,
            |_, a, _, b| self.table[a][b].clone(),
        )?)
    }
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if parts == 1 {
        let mut v = prefix.clone();
        v.push(total);
        out.push(v);
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(total - k, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Sub-ideal spanned by the given homogeneous vectors, with actions and
/// differential restricted from `R` and `j` the inclusion.
pub fn ideal_from_subspace(
    ring: &DgaStructure,
    generators: &BTreeMap<i64, Vec<Vec<Scalar>>>,
) -> Result<SmithIdealData> {
    let field = ring.field();
    let r = ring.space();
    let mut blocks = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for (&n, vs) in generators {
        if vs.is_empty() {
            continue;
        }
        let m = Matrix::from_columns(field, r.dim(n), vs);
        if m.rank() != vs.len() {
            return Err(Error::Shape(format!("dependent generators in degree {n}")));
        }
        labels.insert(
            n,
            vs.iter()
                .map(|v| vector_label(field, r, n, v))
                .collect::<Vec<_>>(),
        );
        blocks.insert(n, m);
    }
    let space = GradedSpace::new(labels);
    let inc = GradedMap::new(field, space.clone(), r.clone(), 0, blocks)?;

    let inside = |n: i64, v: &[Scalar]| -> bool {
        v.iter().all(Zero::is_zero)
            || inc
                .block_ref(n)
                .and_then(|m| m.solve(&Matrix::from_columns(field, v.len(), &[v.to_vec()])))
                .is_some()
    };
    for q in space.degrees() {
        for (b, elem) in space.basis(q).iter().enumerate() {
            let v = inc.column(q, b);
            for p in r.degrees() {
                for a in 0..r.dim(p) {
                    let e = unit_vector(field, r.dim(p), a);
                    for (prod, ring_left) in [
                        (ring.multiply(p, &e, q, &v), true),
                        (ring.multiply(q, &v, p, &e), false),
                    ] {
                        if !inside(p + q, &prod) {
                            let (re, el) = (r.label(p, a), elem.label());
                            let (ring_element, element) =
                                if ring_left { (re, el) } else { (el, re) };
                            return Err(Error::NotTwoSided {
                                ring_element,
                                element,
                                product: r.render_vector(field, p + q, &prod),
                            });
                        }
                    }
                }
            }
            let dv = ring.carrier().differential().apply(q, &v);
            if !inside(q - 1, &dv) {
                return Err(Error::NotTwoSided {
                    ring_element: "d".into(),
                    element: elem.label(),
                    product: r.render_vector(field, q - 1, &dv),
                });
            }
        }
    }
    let d = lift_through(&ring.carrier().differential().compose(&inc)?, &inc)
        .expect("closure checked above");
    let carrier = ChainComplex::new(d)?;
    let mu = ring.mult().map();
    let left = lift_through(&mu.compose(&left_id(r, &inc)?)?, &inc).expect("closure checked above");
    let right =
        lift_through(&mu.compose(&right_id(&inc, r)?)?, &inc).expect("closure checked above");
    let bimodule = verify_bimodule(&BimoduleCandidate {
        ring: ring.clone(),
        carrier,
        left,
        right,
    })?;
    SmithIdealData::new(bimodule, inc)
}

/// A subspace of a discrete algebra, checked for two-sidedness.
pub fn discrete_import(
    algebra: &DiscreteAlgebra,
    subspace: &[Vec<Scalar>],
) -> Result<SmithIdealData> {
    let ring = algebra.dga()?;
    ideal_from_subspace(&ring, &BTreeMap::from([(0, subspace.to_vec())]))
}

/// `I = R`, `j = id`.
pub fn identity_ideal(ring: &DgaStructure) -> SmithIdealData {
    let b = BimoduleStructure::regular(ring);
    SmithIdealData::new(b, GradedMap::identity(ring.field(), ring.space()))
        .expect("the identity is central")
}

pub fn zero_ideal(ring: &DgaStructure) -> SmithIdealData {
    let field = ring.field();
    let zero = ChainComplex::zero(field);
    let r = ring.space();
    let z = GradedSpace::zero();
    let bimodule = verify_bimodule(&BimoduleCandidate {
        ring: ring.clone(),
        carrier: zero.clone(),
        left: GradedMap::zero(field, r.tensor(&z), z.clone(), 0),
        right: GradedMap::zero(field, z.tensor(r), z.clone(), 0),
    })
    .expect("zero bimodule");
    SmithIdealData::new(bimodule, GradedMap::zero(field, z, r.clone(), 0)).expect("zero ideal")
}

/// Tags summand basis labels `in1.` and `in2.`.
fn sum_space(a: &GradedSpace, b: &GradedSpace) -> GradedSpace {
    a.direct_sum(b).relabel(|n, i, l| {
        if i < a.dim(n) {
            format!("in1.{l}")
        } else {
            format!("in2.{l}")
        }
    })
}

/// External sum `I₁ ⊕ I₂ -> R` with `j = [j₁, j₂]`. The bimodule is always
/// valid; centrality can fail on cross pairs, which is reported as a
/// rejection carrying the first failing pair.
pub fn sum_ideals(a: &SmithIdealData, b: &SmithIdealData) -> Result<SmithIdealData> {
    if a.ring() != b.ring() {
        return Err(Error::Shape("summands live over different rings".into()));
    }
    let ring = a.ring();
    let field = ring.field();
    let r = ring.space();
    let (sa, sb) = (a.carrier().space(), b.carrier().space());
    let space = sum_space(sa, sb);
    let carrier = a
        .carrier()
        .direct_sum(b.carrier())?
        .relabel(space.clone())?;

    let (ra, rb) = (tensor_positions(r, sa), tensor_positions(r, sb));
    let (ar, br) = (tensor_positions(sa, r), tensor_positions(sb, r));
    let place = |n: i64, second: bool, col: Vec<Scalar>| -> Vec<Scalar> {
        let mut out = vec![field.zero(); space.dim(n)];
        let off = if second { sa.dim(n) } else { 0 };
        out[off..off + col.len()].clone_from_slice(&col);
        out
    };
    let (la, lb) = (a.bimodule().left().map(), b.bimodule().left().map());
    let left = GradedMap::bilinear(field, r, &space, space.clone(), 0, |p, i, q, k| {
        let n = p + q;
        if k < sa.dim(q) {
            place(n, false, la.column(n, ra[&(p, i, q, k)]))
        } else {
            place(n, true, lb.column(n, rb[&(p, i, q, k - sa.dim(q))]))
        }
    })?;
    let (rta, rtb) = (a.bimodule().right().map(), b.bimodule().right().map());
    let right = GradedMap::bilinear(field, &space, r, space.clone(), 0, |q, k, p, i| {
        let n = p + q;
        if k < sa.dim(q) {
            place(n, false, rta.column(n, ar[&(q, k, p, i)]))
        } else {
            place(n, true, rtb.column(n, br[&(q, k - sa.dim(q), p, i)]))
        }
    })?;
    let (ja, jb) = (a.j().map(), b.j().map());
    let j = GradedMap::from_columns(field, space.clone(), r.clone(), 0, |n, k| {
        if k < sa.dim(n) {
            ja.column(n, k)
        } else {
            jb.column(n, k - sa.dim(n))
        }
    })?;
    let bimodule = verify_bimodule(&BimoduleCandidate {
        ring: ring.clone(),
        carrier,
        left,
        right,
    })?;
    SmithIdealData::new(bimodule, j)
}

/// The isomorphism `I₁ ⊕ I₂ -> I₂ ⊕ I₁` exchanging summands, between the
/// carriers [`sum_ideals`] builds for `(a, b)` and `(b, a)`.
pub fn summand_swap(a: &ChainComplex, b: &ChainComplex) -> Result<GradedMap> {
    let (sa, sb) = (a.space(), b.space());
    let ab = sum_space(sa, sb);
    let ba = sum_space(sb, sa);
    GradedMap::from_columns(a.field(), ab, ba.clone(), 0, |n, k| {
        let pos = if k < sa.dim(n) {
            sb.dim(n) + k
        } else {
            k - sa.dim(n)
        };
        unit_vector(a.field(), ba.dim(n), pos)
    })
}

/// The free bimodule `R ⊗ R` with candidate `j = μ`. Centrality asks for
/// `(ab)c ⊗ d = a ⊗ b(cd)`, which fails whenever `R` is bigger than the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSquare {
    pub bimodule: BimoduleStructure,
    pub j: ChainMap,
    pub centrality: DiagramEntry,
    /// Every failing pair, in basis order.
    pub failures: Vec<Witness>,
}

impl FreeSquare {
    pub fn passed(&self) -> bool {
        self.centrality.passed()
    }
}

pub fn free_square_candidate(ring: &DgaStructure) -> Result<FreeSquare> {
    let bimodule = BimoduleStructure::free_square(ring)?;
    let mu = ring.mult().map();
    let centrality = centrality_check(&bimodule, mu)?;
    let failures = centrality_failures(&bimodule, mu)?;
    Ok(FreeSquare {
        j: ChainMap::new(
            bimodule.carrier().clone(),
            ring.carrier().clone(),
            mu.clone(),
        )?,
        bimodule,
        centrality,
        failures,
    })
}

/// Copies of `j` with one matrix entry shifted by each of `shifts`, in
/// order of degree, row, column and shift.
pub fn single_entry_perturbations(j: &GradedMap, shifts: &[i64]) -> Vec<GradedMap> {
    let f = j.field();
    let mut out = Vec::new();
    for n in j.source().degrees() {
        let block = j.block(n);
        for row in 0..block.rows() {
            for col in 0..block.cols() {
                for &c in shifts {
                    let v = f.add(block.get(row, col), &f.from_int(c));
                    out.push(j.with_entry(n, row, col, v));
                }
            }
        }
    }
    out
}

/// DGA map given by the images of basis elements, written as
/// `(coefficient, target label)` terms. Unlisted basis elements go to zero.
pub fn morphism_from_images(
    source: &DgaStructure,
    target: &DgaStructure,
    images: &[(&str, &[(i64, &str)])],
) -> Result<DgaMorphism> {
    let field = source.field();
    let (s, t) = (source.space(), target.space());
    let mut cols: BTreeMap<(i64, usize), Vec<Scalar>> = BTreeMap::new();
    for (label, terms) in images {
        let (n, i) = s
            .find(label)
            .ok_or_else(|| Error::Shape(format!("unknown basis element {label}")))?;
        let mut v = vec![field.zero(); t.dim(n)];
        for (c, tl) in terms.iter() {
            let (m, k) = t
                .find(tl)
                .ok_or_else(|| Error::Shape(format!("unknown basis element {tl}")))?;
            if m != n {
                return Err(Error::DegreeMismatch(m, n));
            }
            v[k] = field.add(&v[k], &field.from_int(*c));
        }
        cols.insert((n, i), v);
    }
    let map = GradedMap::from_columns(field, s.clone(), t.clone(), 0, |n, i| {
        cols.get(&(n, i))
            .cloned()
            .unwrap_or_else(|| vec![field.zero(); t.dim(n)])
    })?;
    verify_dga_map(source, target, &map)
}

/// The ground field as a DGA, basis `one`.
pub fn ground_field(field: Field) -> DgaStructure {
    DiscreteAlgebra::monomial(field, &[], 0)
        .dga()
        .expect("ground field")
}

/// Degree 0 basis `one, x`, degree 1 basis `e`, `de = x`, all products of
/// non-unit elements zero.
pub fn koszul(field: Field) -> DgaStructure {
    let space = GradedSpace::new([(0, vec!["one", "x"]), (1, vec!["e"])]);
    let dmap = GradedMap::from_columns(field, space.clone(), space.clone(), -1, |n, _| {
        if n == 1 {
            vec![field.zero(), field.one()]
        } else {
            vec![field.zero(); space.dim(n - 1)]
        }
    })
    .expect("koszul differential");
    let carrier = ChainComplex::new(dmap).expect("d² = 0");
    let one = vec![field.one(), field.zero()];
    let candidate = DgaCandidate::from_products(carrier, &one, |p, a, q, b| {
        let n = p + q;
        let mut v = vec![field.zero(); space.dim(n)];
        if p == 0 && a == 0 {
            v[b] = field.one();
        } else if q == 0 && b == 0 {
            v[a] = field.one();
        }
        v
    })
    .expect("koszul products");
    verify_dga(&candidate).expect("koszul dga")
}

/// A catalog entry with a short description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named<T> {
    pub name: String,
    pub notes: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, notes: impl Into<String>, value: T) -> Named<T> {
    Named {
        name: name.into(),
        notes: notes.into(),
        value,
    }
}

/// Imported subspace of a discrete algebra in the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteIdeal {
    pub algebra: String,
    pub subspace: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureCatalog {
    pub field: Field,
    pub algebras: Vec<Named<DiscreteAlgebra>>,
    pub rings: Vec<Named<DgaStructure>>,
    pub ideals: Vec<Named<SmithIdealData>>,
    pub discrete_ideals: Vec<Named<DiscreteIdeal>>,
    pub morphisms: Vec<Named<DgaMorphism>>,
}

fn lookup<'a, T>(items: &'a [Named<T>], name: &str) -> Option<&'a T> {
    items.iter().find(|n| n.name == name).map(|n| &n.value)
}

impl FixtureCatalog {
    pub fn algebra(&self, name: &str) -> Option<&DiscreteAlgebra> {
        lookup(&self.algebras, name)
    }

    pub fn ring(&self, name: &str) -> Option<&DgaStructure> {
        lookup(&self.rings, name)
    }

    pub fn ideal(&self, name: &str) -> Option<&SmithIdealData> {
        lookup(&self.ideals, name)
    }

    pub fn morphism(&self, name: &str) -> Option<&DgaMorphism> {
        lookup(&self.morphisms, name)
    }
}

/// The catalog over the rationals.
pub fn fixtures() -> FixtureCatalog {
    fixtures_over(Field::Rationals)
}

/// Every entry is verified while it is built; a failure here is a bug.
pub fn fixtures_over(field: Field) -> FixtureCatalog {
    let mut algebras = vec![
        named(
            "field",
            "the ground field",
            DiscreteAlgebra::monomial(field, &[], 0),
        ),
        named(
            "dual",
            "dual numbers field[eps]/(eps^2)",
            DiscreteAlgebra::dual_numbers(field),
        ),
        named(
            "tri",
            "upper-triangular 2x2 matrices",
            DiscreteAlgebra::upper_triangular(field),
        ),
        named("diag", "field x field", DiscreteAlgebra::diagonal(field)),
        named("uv2", "field[u,v]/(u,v)^2", DiscreteAlgebra::uv(field, 2)),
        named("uv3", "field[u,v]/(u,v)^3", DiscreteAlgebra::uv(field, 3)),
    ];
    for n in 2..=4 {
        algebras.push(named(
            format!("trunc{n}"),
            format!("field[t]/(t^{n})"),
            DiscreteAlgebra::truncated_polynomial(field, n),
        ));
    }

    let mut rings: Vec<Named<DgaStructure>> = algebras
        .iter()
        .map(|a| {
            named(
                a.name.clone(),
                a.notes.clone(),
                a.value.dga().expect("catalog algebra"),
            )
        })
        .collect();
    rings.push(named(
        "koszul",
        "one, x in degree 0, e in degree 1, de = x",
        koszul(field),
    ));

    let span = |alg: &DiscreteAlgebra, labels: &[&str]| -> Vec<Vec<Scalar>> {
        labels
            .iter()
            .map(|l| alg.basis_vector(l).expect("catalog label"))
            .collect()
    };
    let mut discrete_ideals = Vec::new();
    let mut push_discrete = |name: &str, notes: &str, alg: &str, labels: &[&str]| {
        let a = algebras
            .iter()
            .find(|a| a.name == alg)
            .expect("catalog algebra");
        discrete_ideals.push(named(
            name,
            notes,
            DiscreteIdeal {
                algebra: alg.into(),
                subspace: span(&a.value, labels),
            },
        ));
    };
    push_discrete("dual_eps", "(eps) in the dual numbers", "dual", &["eps"]);
    push_discrete(
        "tri_upper",
        "strictly upper-triangular matrices",
        "tri",
        &["e12"],
    );
    push_discrete(
        "tri_column",
        "second column span(e12, e22)",
        "tri",
        &["e12", "e22"],
    );
    push_discrete("diag_p1", "first factor of field x field", "diag", &["p1"]);
    push_discrete("uv2_u", "(u) in field[u,v]/(u,v)^2", "uv2", &["u"]);
    push_discrete("uv2_v", "(v) in field[u,v]/(u,v)^2", "uv2", &["v"]);
    push_discrete("uv2_max", "maximal ideal (u,v)", "uv2", &["u", "v"]);
    push_discrete(
        "uv3_u",
        "(u) in field[u,v]/(u,v)^3",
        "uv3",
        &["u", "u2", "uv"],
    );
    push_discrete(
        "uv3_v",
        "(v) in field[u,v]/(u,v)^3",
        "uv3",
        &["v", "uv", "v2"],
    );
    push_discrete("uv3_square", "(u,v)^2", "uv3", &["u2", "uv", "v2"]);
    for n in 2..=4u32 {
        for k in 1..n {
            let labels: Vec<String> = (k..n)
                .map(|e| {
                    if e == 1 {
                        "t".to_string()
                    } else {
                        format!("t{e}")
                    }
                })
                .collect();
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            push_discrete(
                &format!("trunc{n}_t{k}"),
                &format!("(t^{k}) in field[t]/(t^{n})"),
                &format!("trunc{n}"),
                &refs,
            );
        }
    }
    let mut ideals = Vec::new();
    for d in &discrete_ideals {
        let alg = algebras.iter().find(|a| a.name == d.value.algebra).unwrap();
        ideals.push(named(
            d.name.clone(),
            d.notes.clone(),
            discrete_import(&alg.value, &d.value.subspace).expect("two-sided"),
        ));
    }
    let kz = rings
        .iter()
        .find(|r| r.name == "koszul")
        .unwrap()
        .value
        .clone();
    let kx = ideal_from_subspace(
        &kz,
        &BTreeMap::from([
            (0, vec![vec![field.zero(), field.one()]]),
            (1, vec![vec![field.one()]]),
        ]),
    )
    .expect("span(x, e) is a dg ideal");
    ideals.push(named("koszul_xe", "span(x, e) in the Koszul ring", kx));
    for r in &rings {
        ideals.push(named(
            format!("{}_zero", r.name),
            "zero ideal",
            zero_ideal(&r.value),
        ));
        ideals.push(named(
            format!("{}_identity", r.name),
            "identity ideal I = R",
            identity_ideal(&r.value),
        ));
    }
    for i in &ideals {
        build_ideal(&i.value).expect("catalog ideals build");
    }

    let ring = |name: &str| rings.iter().find(|r| r.name == name).unwrap().value.clone();
    let fld = ring("field");
    let mut morphisms = Vec::new();
    let mut push_morphism = |name: &str,
                             notes: &str,
                             s: &DgaStructure,
                             t: &DgaStructure,
                             images: &[(&str, &[(i64, &str)])]| {
        morphisms.push(named(
            name,
            notes,
            morphism_from_images(s, t, images).expect("catalog morphism"),
        ));
    };
    let one: &[(i64, &str)] = &[(1, "one")];
    push_morphism(
        "dual_aug",
        "augmentation eps -> 0",
        &ring("dual"),
        &fld,
        &[("one", one)],
    );
    push_morphism(
        "koszul_aug",
        "augmentation x, e -> 0",
        &kz,
        &fld,
        &[("one", one)],
    );
    push_morphism(
        "tri_diag",
        "diagonal part of a triangular matrix",
        &ring("tri"),
        &ring("diag"),
        &[("e11", &[(1, "p1")]), ("e22", &[(1, "p2")])],
    );
    push_morphism(
        "uv2_aug",
        "augmentation u, v -> 0",
        &ring("uv2"),
        &fld,
        &[("one", one)],
    );
    push_morphism(
        "uv3_aug",
        "augmentation u, v -> 0",
        &ring("uv3"),
        &fld,
        &[("one", one)],
    );
    push_morphism(
        "uv3_to_uv2",
        "truncation (u,v)^3 -> (u,v)^2",
        &ring("uv3"),
        &ring("uv2"),
        &[("one", one), ("u", &[(1, "u")]), ("v", &[(1, "v")])],
    );
    for n in 2..=4 {
        push_morphism(
            &format!("trunc{n}_aug"),
            "augmentation t -> 0",
            &ring(&format!("trunc{n}")),
            &fld,
            &[("one", one)],
        );
    }
    push_morphism(
        "trunc4_to_trunc2",
        "t -> t",
        &ring("trunc4"),
        &ring("trunc2"),
        &[("one", one), ("t", &[(1, "t")])],
    );
    for r in &rings {
        morphisms.push(named(
            format!("{}_id", r.name),
            "identity",
            DgaMorphism::identity(&r.value),
        ));
    }

    FixtureCatalog {
        field,
        algebras,
        rings,
        ideals,
        discrete_ideals,
        morphisms,
    }
}

/// One bimodule map `j : I -> R` run through both centrality and the cone's
/// DGA axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryCase {
    pub name: String,
    pub perturbed: bool,
    pub centrality: bool,
    pub cone_dga: bool,
    pub leibniz_failures: usize,
    /// Leibniz failures on a pair that is not in `sI ⊗ sI`.
    pub outside_ideal_block: usize,
}

fn battery_case(
    name: String,
    perturbed: bool,
    bimodule: &BimoduleStructure,
    j: &GradedMap,
) -> Result<BatteryCase> {
    let r = bimodule.ring().space();
    let j = ChainMap::new(
        bimodule.carrier().clone(),
        bimodule.ring().carrier().clone(),
        j.clone(),
    )?;
    let (_, candidate) = crate::quotient::cone_candidate(bimodule, &j)?;
    let failures = crate::algebra::leibniz_failures(&candidate)?;
    let outside = failures
        .iter()
        .filter(|w| {
            let [(p, a), (q, b)] = w.factors[..] else {
                return true;
            };
            a < r.dim(p) || b < r.dim(q)
        })
        .count();
    Ok(BatteryCase {
        name,
        perturbed,
        centrality: centrality_check(bimodule, j.map())?.passed(),
        cone_dga: crate::algebra::dga_report(&candidate)?.passed(),
        leibniz_failures: failures.len(),
        outside_ideal_block: outside,
    })
}

/// Catalog ideals, the free-square candidate over every catalog ring, and
/// every single-entry perturbation (by +1, -1, +2) of a catalog `j` that is
/// still a chain map and a bimodule map.
pub fn leibniz_battery(catalog: &FixtureCatalog) -> Result<Vec<BatteryCase>> {
    let mut out = Vec::new();
    for i in &catalog.ideals {
        let b = i.value.bimodule();
        out.push(battery_case(i.name.clone(), false, b, i.value.j().map())?);
        let regular = BimoduleStructure::regular(b.ring());
        for (k, pj) in single_entry_perturbations(i.value.j().map(), &[1, -1, 2])
            .into_iter()
            .enumerate()
        {
            let admitted = crate::algebra::bimodule_map_report("j_", b, &regular, &pj)?.passed();
            if admitted {
                out.push(battery_case(format!("{}#{k}", i.name), true, b, &pj)?);
            }
        }
    }
    for r in &catalog.rings {
        let fs = free_square_candidate(&r.value)?;
        out.push(battery_case(
            format!("{}_free_square", r.name),
            false,
            &fs.bimodule,
            fs.j.map(),
        )?);
    }
    Ok(out)
}
