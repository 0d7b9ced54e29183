//! Chain complexes (homological grading, differential of degree -1), chain
//! maps, tensor complexes, mapping cones, strict kernels and homology.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::{render_term, GradedMap, GradedSpace};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainComplex {
    differential: GradedMap,
}

impl ChainComplex {
    /// Validates that `d` is a degree -1 endomorphism with `d ∘ d = 0`.
    pub fn new(differential: GradedMap) -> Result<Self> {
        if differential.degree() != -1 {
            return Err(Error::DegreeMismatch(differential.degree(), -1));
        }
        if differential.source() != differential.target() {
            return Err(Error::Shape("differential must be an endomorphism".into()));
        }
        let dd = differential.compose(&differential)?;
        if let Some(n) = differential
            .source()
            .degrees()
            .find(|&n| dd.block_ref(n).is_some())
        {
            return Err(Error::NotDifferential { degree: n });
        }
        Ok(ChainComplex { differential })
    }

    pub fn with_zero_differential(field: Field, space: GradedSpace) -> Self {
        ChainComplex {
            differential: GradedMap::zero(field, space.clone(), space, -1),
        }
    }

    /// The monoidal unit: the field in degree 0.
    pub fn unit(field: Field) -> Self {
        Self::with_zero_differential(field, GradedSpace::unit())
    }

    pub fn zero(field: Field) -> Self {
        Self::with_zero_differential(field, GradedSpace::zero())
    }

    pub fn field(&self) -> Field {
        self.differential.field()
    }

    pub fn space(&self) -> &GradedSpace {
        self.differential.source()
    }

    pub fn differential(&self) -> &GradedMap {
        &self.differential
    }

    pub fn is_zero(&self) -> bool {
        self.space().is_zero()
    }

    /// `X[k]`, with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let space = self.space().shift(k);
        let d = self
            .differential
            .scale(&self.field().sign(k))
            .reindex(k, space.clone(), space)
            .expect("shift preserves dimensions");
        ChainComplex { differential: d }
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> Result<Self> {
        Ok(ChainComplex {
            differential: self.differential.direct_sum(&other.differential)?,
        })
    }

    /// `d(x ⊗ y) = dx ⊗ y + (-1)^{|x|} x ⊗ dy`.
    pub fn tensor(&self, other: &ChainComplex) -> Result<Self> {
        let field = self.field();
        let id_x = GradedMap::identity(field, self.space());
        let id_y = GradedMap::identity(field, other.space());
        let d = self
            .differential
            .tensor(&id_y)?
            .add(&id_x.tensor(&other.differential)?)?;
        ChainComplex::new(d)
    }

    /// Replaces basis labels, keeping the differential.
    pub fn relabel(&self, space: GradedSpace) -> Result<Self> {
        Ok(ChainComplex {
            differential: self.differential.reframe(space.clone(), space)?,
        })
    }
}

/// `X ⊗ Y` with the Koszul differential.
pub fn tensor_complex(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    x.tensor(y)
}

/// A degree-0 map commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    map: GradedMap,
}

impl ChainMap {
    pub fn new(source: ChainComplex, target: ChainComplex, map: GradedMap) -> Result<Self> {
        check_frame(&source, &target, &map)?;
        let lhs = target.differential.compose(&map)?;
        let rhs = map.compose(&source.differential)?;
        if let Some(d) = lhs.differences(&rhs)?.first() {
            return Err(Error::NotChainMap { degree: d.degree });
        }
        Ok(ChainMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(x: &ChainComplex) -> Self {
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            map: GradedMap::identity(x.field(), x.space()),
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            map: GradedMap::zero(
                source.field(),
                source.space().clone(),
                target.space().clone(),
                0,
            ),
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn map(&self) -> &GradedMap {
        &self.map
    }

    pub fn field(&self) -> Field {
        self.map.field()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        if inner.target != self.source {
            return Err(Error::Shape(
                "chain map composition: complexes differ".into(),
            ));
        }
        Ok(ChainMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&inner.map)?,
        })
    }

    pub fn tensor(&self, other: &ChainMap) -> Result<ChainMap> {
        Ok(ChainMap {
            source: self.source.tensor(&other.source)?,
            target: self.target.tensor(&other.target)?,
            map: self.map.tensor(&other.map)?,
        })
    }

    pub fn direct_sum(&self, other: &ChainMap) -> Result<ChainMap> {
        Ok(ChainMap {
            source: self.source.direct_sum(&other.source)?,
            target: self.target.direct_sum(&other.target)?,
            map: self.map.direct_sum(&other.map)?,
        })
    }

    /// Degree of the first basis column where `f` fails to be injective.
    pub fn first_non_injective_degree(&self) -> Option<i64> {
        self.source
            .space()
            .degrees()
            .find(|&n| self.map.block(n).rank() < self.source.space().dim(n))
    }

    pub fn first_non_surjective_degree(&self) -> Option<i64> {
        self.target
            .space()
            .degrees()
            .find(|&n| self.map.block(n).rank() < self.target.space().dim(n))
    }
}

fn check_frame(source: &ChainComplex, target: &ChainComplex, map: &GradedMap) -> Result<()> {
    if map.degree() != 0 {
        return Err(Error::DegreeMismatch(map.degree(), 0));
    }
    if map.source() != source.space() || map.target() != target.space() {
        return Err(Error::Shape(
            "chain map spaces do not match its complexes".into(),
        ));
    }
    Ok(())
}

/// Solves `inc ∘ h = g` for `h`, where `inc` is injective.
pub(crate) fn lift_through(g: &GradedMap, inc: &GradedMap) -> Option<GradedMap> {
    if g.target() != inc.target() || inc.degree() != 0 {
        return None;
    }
    let mut blocks = BTreeMap::new();
    for n in g.source().degrees() {
        let out = n + g.degree();
        let h = inc.block(out).solve(&g.block(n))?;
        blocks.insert(n, h);
    }
    GradedMap::new(
        g.field(),
        g.source().clone(),
        inc.source().clone(),
        g.degree(),
        blocks,
    )
    .ok()
}

/// Mapping cone of `f : X -> Y` with its two canonical maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub complex: ChainComplex,
    /// `Y -> Cone(f)`
    pub inclusion: ChainMap,
    /// `Cone(f) -> X[1]`
    pub projection: ChainMap,
}

/// `Cone(f)_n = Y_n ⊕ X_{n-1}` with `d(y, x) = (dy + f(x), -dx)`.
pub fn cone(f: &ChainMap) -> Result<Cone> {
    let field = f.field();
    let x = f.source();
    let y = f.target();
    let shifted = x.shift(1);
    let space = y.space().direct_sum(shifted.space());
    let mut blocks = BTreeMap::new();
    for n in space.degrees() {
        let (yn, ym) = (y.space().dim(n), y.space().dim(n - 1));
        let (xn1, xn2) = (x.space().dim(n - 1), x.space().dim(n - 2));
        let top = y.differential().block(n).hstack(&f.map().block(n - 1));
        let bottom = Matrix::zeros(field, xn2, yn).hstack(&x.differential().block(n - 1).neg());
        let m = top.vstack(&bottom);
        debug_assert_eq!((m.rows(), m.cols()), (ym + xn2, yn + xn1));
        blocks.insert(n, m);
    }
    let complex = ChainComplex::new(GradedMap::new(
        field,
        space.clone(),
        space.clone(),
        -1,
        blocks,
    )?)?;
    let inclusion_map =
        GradedMap::from_columns(field, y.space().clone(), space.clone(), 0, |n, i| {
            let mut v = vec![Scalar::zero(); space.dim(n)];
            v[i] = Scalar::one();
            v
        })?;
    let projection_map =
        GradedMap::from_columns(field, space.clone(), shifted.space().clone(), 0, |n, i| {
            let mut v = vec![Scalar::zero(); shifted.space().dim(n)];
            let yn = y.space().dim(n);
            if i >= yn {
                v[i - yn] = Scalar::one();
            }
            v
        })?;
    Ok(Cone {
        inclusion: ChainMap::new(y.clone(), complex.clone(), inclusion_map)?,
        projection: ChainMap::new(complex.clone(), shifted, projection_map)?,
        complex,
    })
}

/// Degreewise kernel with its inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub complex: ChainComplex,
    pub inclusion: ChainMap,
}

pub(crate) fn vector_label(field: Field, space: &GradedSpace, n: i64, v: &[Scalar]) -> String {
    let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    if nonzero.len() == 1 && v[nonzero[0]].is_one() {
        return space.label(n, nonzero[0]);
    }
    let term = render_term(
        field,
        v.iter().zip(space.basis(n)).map(|(c, e)| (c, e.label())),
    );
    format!("[{}]", term.replace(' ', ""))
}

pub fn strict_kernel(f: &ChainMap) -> Result<Kernel> {
    let field = f.field();
    let src = f.source().space();
    let mut bases: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for n in src.degrees() {
        let k = f.map().block(n).kernel();
        if k.cols() == 0 {
            continue;
        }
        labels.insert(
            n,
            (0..k.cols())
                .map(|c| vector_label(field, src, n, &k.column(c)))
                .collect(),
        );
        bases.insert(n, k);
    }
    let space = GradedSpace::new(labels);
    let inc = GradedMap::new(field, space.clone(), src.clone(), 0, bases)?;
    let d = lift_through(&f.source().differential().compose(&inc)?, &inc)
        .expect("kernel of a chain map is a subcomplex");
    let complex = ChainComplex::new(d)?;
    let inclusion = ChainMap::new(complex.clone(), f.source().clone(), inc)?;
    Ok(Kernel { complex, inclusion })
}

/// Homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyDegree {
    pub cycles: usize,
    pub boundaries: usize,
    /// Columns: chosen cycle representatives of a basis of `H_n`.
    pub representatives: Matrix,
    /// Columns: a basis of the boundaries `im d_{n+1}`.
    boundary_basis: Matrix,
}

impl HomologyDegree {
    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyData {
    field: Field,
    degrees: BTreeMap<i64, HomologyDegree>,
}

impl HomologyData {
    pub fn dim(&self, n: i64) -> usize {
        self.degrees.get(&n).map_or(0, HomologyDegree::dim)
    }

    /// Every degree where the complex is nonzero, with its homology dimension.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degrees.iter().map(|(n, h)| (*n, h.dim())).collect()
    }

    pub fn degree(&self, n: i64) -> Option<&HomologyDegree> {
        self.degrees.get(&n)
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees.values().all(|h| h.dim() == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|(n, h)| {
                if n.rem_euclid(2) == 0 {
                    h.dim() as i64
                } else {
                    -(h.dim() as i64)
                }
            })
            .sum()
    }

    /// Coordinates of the class of cycle `z` in the representative basis.
    pub fn coordinates(&self, n: i64, z: &[Scalar]) -> Option<Vec<Scalar>> {
        let Some(h) = self.degrees.get(&n) else {
            return z.iter().all(Zero::is_zero).then(Vec::new);
        };
        let m = h.boundary_basis.hstack(&h.representatives);
        let rhs = Matrix::from_columns(self.field, z.len(), &[z.to_vec()]);
        let sol = m.solve(&rhs)?;
        let b = h.boundary_basis.cols();
        Some((0..h.dim()).map(|i| sol.get(b + i, 0).clone()).collect())
    }
}

pub fn homology(x: &ChainComplex) -> HomologyData {
    let field = x.field();
    let d = x.differential();
    let mut degrees = BTreeMap::new();
    for n in x.space().degrees() {
        let cycles = d.block(n).kernel();
        let incoming = d.block(n + 1);
        let (_, pivots) = incoming.rref();
        let boundary_basis = incoming.select_columns(&pivots);
        let mut span = boundary_basis.clone();
        let mut reps = Vec::new();
        for c in 0..cycles.cols() {
            let z = cycles.select_columns(&[c]);
            let candidate = span.hstack(&z);
            if candidate.rank() > span.cols() {
                span = candidate;
                reps.push(cycles.column(c));
            }
        }
        let dim_n = x.space().dim(n);
        degrees.insert(
            n,
            HomologyDegree {
                cycles: cycles.cols(),
                boundaries: pivots.len(),
                representatives: Matrix::from_columns(field, dim_n, &reps),
                boundary_basis,
            },
        );
    }
    HomologyData { field, degrees }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedDegree {
    pub degree: i64,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl InducedDegree {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub degrees: Vec<InducedDegree>,
}

impl QuasiIsoReport {
    pub fn is_quasi_iso(&self) -> bool {
        self.degrees.iter().all(InducedDegree::is_iso)
    }
}

/// Matrix of `H_n(f)` in the representative bases.
pub fn induced_map(f: &ChainMap, hs: &HomologyData, ht: &HomologyData, n: i64) -> Matrix {
    let field = f.field();
    let target_dim = ht.dim(n);
    let cols: Vec<Vec<Scalar>> = match hs.degree(n) {
        None => Vec::new(),
        Some(h) => (0..h.dim())
            .map(|i| {
                let image = f.map().apply(n, &h.representatives.column(i));
                ht.coordinates(n, &image)
                    .expect("chain maps send cycles to cycles")
            })
            .collect(),
    };
    Matrix::from_columns(field, target_dim, &cols)
}

pub fn is_quasi_iso(f: &ChainMap) -> QuasiIsoReport {
    let hs = homology(f.source());
    let ht = homology(f.target());
    let degrees: BTreeSet<i64> = f
        .source()
        .space()
        .degrees()
        .chain(f.target().space().degrees())
        .collect();
    QuasiIsoReport {
        degrees: degrees
            .into_iter()
            .map(|n| InducedDegree {
                degree: n,
                source_dim: hs.dim(n),
                target_dim: ht.dim(n),
                rank: induced_map(f, &hs, &ht, n).rank(),
            })
            .collect(),
    }
}
