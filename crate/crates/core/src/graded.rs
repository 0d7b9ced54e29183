//! Graded vector spaces and degreewise linear maps.
//!
//! A basis element of a graded space is a sequence of *atoms*: an atomic space
//! has one atom per basis element, a tensor product concatenates the atoms of
//! its factors. Inside each degree the basis of `X ⊗ Y` is sorted
//! lexicographically by atom sequence. For atomic factors this is the order
//! (left degree, left index, right index), and because concatenation is
//! associative, `(X ⊗ Y) ⊗ Z` and `X ⊗ (Y ⊗ Z)` come out as the *same* space
//! with the same basis order. No associator maps are ever needed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub degree: i64,
    pub index: usize,
    pub label: Arc<str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    atoms: Vec<Atom>,
}

impl BasisElement {
    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn label(&self) -> String {
        self.atoms
            .iter()
            .map(|a| a.label.as_ref())
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Finitely supported graded vector space with a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedSpace {
    blocks: BTreeMap<i64, Vec<BasisElement>>,
}

fn atomic(labels: BTreeMap<i64, Vec<String>>) -> GradedSpace {
    let blocks = labels
        .into_iter()
        .filter(|(_, ls)| !ls.is_empty())
        .map(|(n, ls)| {
            let basis = ls
                .into_iter()
                .enumerate()
                .map(|(i, l)| BasisElement {
                    atoms: vec![Atom {
                        degree: n,
                        index: i,
                        label: Arc::from(l),
                    }],
                })
                .collect();
            (n, basis)
        })
        .collect();
    GradedSpace { blocks }
}

impl GradedSpace {
    /// Atomic space from per-degree basis labels.
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = (i64, Vec<S>)>,
        S: Into<String>,
    {
        let mut map: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (n, ls) in labels {
            map.entry(n)
                .or_default()
                .extend(ls.into_iter().map(Into::into));
        }
        atomic(map)
    }

    /// Atomic space with generated labels `b<n>_<i>` (`bm<n>_<i>` for negative degrees).
    pub fn from_dims(dims: &[(i64, usize)]) -> Self {
        Self::new(dims.iter().map(|&(n, k)| {
            let tag = if n < 0 {
                format!("bm{}", -n)
            } else {
                format!("b{n}")
            };
            (n, (0..k).map(|i| format!("{tag}_{i}")).collect::<Vec<_>>())
        }))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The monoidal unit: one basis element `1` in degree 0.
    pub fn unit() -> Self {
        Self::new([(0, vec!["1"])])
    }

    pub fn dim(&self, n: i64) -> usize {
        self.blocks.get(&n).map_or(0, Vec::len)
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.blocks.keys().copied()
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.blocks.iter().map(|(n, b)| (*n, b.len())).collect()
    }

    pub fn basis(&self, n: i64) -> &[BasisElement] {
        self.blocks.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn label(&self, n: i64, i: usize) -> String {
        self.basis(n)[i].label()
    }

    /// Position of the basis element with the given label, if unique.
    pub fn find(&self, label: &str) -> Option<(i64, usize)> {
        self.blocks
            .iter()
            .find_map(|(n, b)| b.iter().position(|e| e.label() == label).map(|i| (*n, i)))
    }

    /// Euler characteristic `Σ (-1)^n dim X_n`.
    pub fn euler_characteristic(&self) -> i64 {
        self.blocks
            .iter()
            .map(|(n, b)| {
                if n.rem_euclid(2) == 0 {
                    b.len() as i64
                } else {
                    -(b.len() as i64)
                }
            })
            .sum()
    }

    /// Forgets tensor structure: every basis element becomes a single atom
    /// carrying its full label.
    pub fn atomized(&self) -> Self {
        self.relabel(|_, _, l| l.to_string())
    }

    /// Atomic copy with labels rewritten by `f(degree, index, old_label)`.
    pub fn relabel(&self, mut f: impl FnMut(i64, usize, &str) -> String) -> Self {
        atomic(
            self.blocks
                .iter()
                .map(|(n, b)| {
                    (
                        *n,
                        b.iter()
                            .enumerate()
                            .map(|(i, e)| f(*n, i, &e.label()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// `X[k]_n = X_{n-k}`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let prefix = if k == 1 {
            "s".to_string()
        } else {
            format!("s{k}_")
        };
        atomic(
            self.blocks
                .iter()
                .map(|(n, b)| {
                    let labels = b
                        .iter()
                        .map(|e| {
                            if e.atoms.len() == 1 {
                                format!("{prefix}{}", e.label())
                            } else {
                                format!("{prefix}({})", e.label())
                            }
                        })
                        .collect();
                    (n + k, labels)
                })
                .collect(),
        )
    }

    /// Degreewise concatenation, `self`'s basis first.
    pub fn direct_sum(&self, other: &GradedSpace) -> Self {
        let mut map: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for space in [self, other] {
            for (n, b) in &space.blocks {
                map.entry(*n)
                    .or_default()
                    .extend(b.iter().map(|e| e.label()));
            }
        }
        atomic(map)
    }

    /// Graded tensor product with the canonical basis order.
    pub fn tensor(&self, other: &GradedSpace) -> Self {
        tensor_layout(self, other).0
    }

    /// Renders a coordinate vector in degree `n` as a term such as `2*a - b`.
    pub fn render_vector(&self, field: Field, n: i64, v: &[Scalar]) -> String {
        let basis = self.basis(n);
        render_term(field, v.iter().zip(basis).map(|(c, e)| (c, e.label())))
    }
}

pub(crate) fn render_term<'a>(
    field: Field,
    terms: impl Iterator<Item = (&'a Scalar, String)>,
) -> String {
    let mut out = String::new();
    for (c, label) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = field.display_negative(c);
        let mag = if neg { field.neg(c) } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != field.one() {
            out.push_str(&field.render(&mag));
            out.push('*');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Where each pair of factor basis elements lands in a tensor product.
pub(crate) struct TensorLayout {
    /// `(p, i, q, j) -> (n, position)`
    positions: HashMap<(i64, usize, i64, usize), (i64, usize)>,
    /// For each degree, the factor pair behind every basis position.
    origins: BTreeMap<i64, Vec<(i64, usize, i64, usize)>>,
}

/// `x_{p,i} ⊗ y_{q,j}` as `(p, i, q, j)`.
type Pair = (i64, usize, i64, usize);

pub(crate) fn tensor_layout(x: &GradedSpace, y: &GradedSpace) -> (GradedSpace, TensorLayout) {
    let mut by_degree: BTreeMap<i64, Vec<(Vec<Atom>, Pair)>> = BTreeMap::new();
    for (p, xb) in &x.blocks {
        for (q, yb) in &y.blocks {
            let bucket = by_degree.entry(p + q).or_default();
            for (i, a) in xb.iter().enumerate() {
                for (j, b) in yb.iter().enumerate() {
                    let mut atoms = a.atoms.clone();
                    atoms.extend(b.atoms.iter().cloned());
                    bucket.push((atoms, (*p, i, *q, j)));
                }
            }
        }
    }
    let mut blocks = BTreeMap::new();
    let mut positions = HashMap::new();
    let mut origins = BTreeMap::new();
    for (n, mut elems) in by_degree {
        elems.sort_by(|a, b| a.0.cmp(&b.0));
        let mut basis = Vec::with_capacity(elems.len());
        let mut orig = Vec::with_capacity(elems.len());
        for (pos, (atoms, o)) in elems.into_iter().enumerate() {
            positions.insert(o, (n, pos));
            orig.push(o);
            basis.push(BasisElement { atoms });
        }
        blocks.insert(n, basis);
        origins.insert(n, orig);
    }
    (GradedSpace { blocks }, TensorLayout { positions, origins })
}

/// Position of `x_{p,i} ⊗ y_{q,j}` inside degree `p + q` of `x ⊗ y`.
pub fn tensor_positions(
    x: &GradedSpace,
    y: &GradedSpace,
) -> HashMap<(i64, usize, i64, usize), usize> {
    let (_, layout) = tensor_layout(x, y);
    layout
        .positions
        .into_iter()
        .map(|(k, (_, pos))| (k, pos))
        .collect()
}

/// Coordinates of `a ⊗ b` in `(x ⊗ y)_{p+q}` for `a ∈ x_p`, `b ∈ y_q`.
pub fn tensor_vector(
    field: Field,
    x: &GradedSpace,
    y: &GradedSpace,
    p: i64,
    a: &[Scalar],
    q: i64,
    b: &[Scalar],
) -> Vec<Scalar> {
    let (space, layout) = tensor_layout(x, y);
    let mut v = vec![Scalar::zero(); space.dim(p + q)];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let (_, pos) = layout.positions[&(p, i, q, j)];
            v[pos] = field.add(&v[pos], &field.mul(ai, bj));
        }
    }
    v
}

/// One column on which two maps with the same source and target disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Difference {
    pub degree: i64,
    pub column: usize,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

/// A homogeneous linear map of some degree between graded spaces, stored as
/// one matrix per source degree. Zero blocks are never stored, so two maps are
/// equal exactly when they agree as linear maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedMap {
    field: Field,
    source: GradedSpace,
    target: GradedSpace,
    degree: i64,
    blocks: BTreeMap<i64, Matrix>,
}

impl GradedMap {
    pub fn new(
        field: Field,
        source: GradedSpace,
        target: GradedSpace,
        degree: i64,
        blocks: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        for (n, m) in &blocks {
            let want = (target.dim(n + degree), source.dim(*n));
            if (m.rows(), m.cols()) != want {
                return Err(Error::Shape(format!(
                    "block in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(
                    m.field().to_string(),
                    field.to_string(),
                ));
            }
        }
        Ok(Self::from_blocks_unchecked(
            field, source, target, degree, blocks,
        ))
    }

    fn from_blocks_unchecked(
        field: Field,
        source: GradedSpace,
        target: GradedSpace,
        degree: i64,
        mut blocks: BTreeMap<i64, Matrix>,
    ) -> Self {
        blocks.retain(|_, m| !m.is_zero());
        GradedMap {
            field,
            source,
            target,
            degree,
            blocks,
        }
    }

    pub fn zero(field: Field, source: GradedSpace, target: GradedSpace, degree: i64) -> Self {
        Self::from_blocks_unchecked(field, source, target, degree, BTreeMap::new())
    }

    pub fn identity(field: Field, space: &GradedSpace) -> Self {
        let blocks = space
            .degrees()
            .map(|n| (n, Matrix::identity(field, space.dim(n))))
            .collect();
        Self::from_blocks_unchecked(field, space.clone(), space.clone(), 0, blocks)
    }

    /// Degree-0 map that is the identity matrix in every degree between two
    /// spaces of equal dimensions (used for the unit isomorphisms).
    pub fn identification(
        field: Field,
        source: &GradedSpace,
        target: &GradedSpace,
    ) -> Result<Self> {
        if source.dims() != target.dims() {
            return Err(Error::Shape(
                "identification between spaces of different dimensions".into(),
            ));
        }
        let blocks = source
            .degrees()
            .map(|n| (n, Matrix::identity(field, source.dim(n))))
            .collect();
        Ok(Self::from_blocks_unchecked(
            field,
            source.clone(),
            target.clone(),
            0,
            blocks,
        ))
    }

    /// Builds a map from the images of basis elements: `image(n, i)` is the
    /// coordinate vector of the image of basis element `i` of degree `n`.
    pub fn from_columns(
        field: Field,
        source: GradedSpace,
        target: GradedSpace,
        degree: i64,
        mut image: impl FnMut(i64, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for n in source.degrees() {
            let rows = target.dim(n + degree);
            let cols: Vec<Vec<Scalar>> = (0..source.dim(n)).map(|i| image(n, i)).collect();
            if let Some(bad) = cols.iter().find(|c| c.len() != rows) {
                return Err(Error::Shape(format!(
                    "image vector of length {} in degree {n}, expected {rows}",
                    bad.len()
                )));
            }
            blocks.insert(n, Matrix::from_columns(field, rows, &cols));
        }
        Ok(Self::from_blocks_unchecked(
            field, source, target, degree, blocks,
        ))
    }

    /// Map out of `x ⊗ y` given on pairs of basis elements:
    /// `image(p, i, q, j)` is the image of `x_{p,i} ⊗ y_{q,j}`.
    pub fn bilinear(
        field: Field,
        x: &GradedSpace,
        y: &GradedSpace,
        target: GradedSpace,
        degree: i64,
        mut image: impl FnMut(i64, usize, i64, usize) -> Vec<Scalar>,
    ) -> Result<Self> {
        let (source, layout) = tensor_layout(x, y);
        let origins = layout.origins;
        Self::from_columns(field, source, target, degree, |n, pos| {
            let (p, i, q, j) = origins[&n][pos];
            image(p, i, q, j)
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn block_ref(&self, n: i64) -> Option<&Matrix> {
        self.blocks.get(&n)
    }

    /// Block from source degree `n` to target degree `n + degree`.
    pub fn block(&self, n: i64) -> Matrix {
        self.blocks.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                self.field,
                self.target.dim(n + self.degree),
                self.source.dim(n),
            )
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn apply(&self, n: i64, v: &[Scalar]) -> Vec<Scalar> {
        match self.blocks.get(&n) {
            Some(m) => m.apply(v),
            None => vec![Scalar::zero(); self.target.dim(n + self.degree)],
        }
    }

    /// Image of basis element `i` in degree `n`.
    pub fn column(&self, n: i64, i: usize) -> Vec<Scalar> {
        match self.blocks.get(&n) {
            Some(m) => m.column(i),
            None => vec![Scalar::zero(); self.target.dim(n + self.degree)],
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GradedMap) -> Result<GradedMap> {
        if inner.target != self.source {
            return Err(Error::Composition {
                degree: first_mismatch(&inner.target, &self.source),
            });
        }
        self.check_field(inner)?;
        let mut blocks = BTreeMap::new();
        for (n, m) in &inner.blocks {
            if let Some(outer) = self.blocks.get(&(n + inner.degree)) {
                blocks.insert(*n, outer.mul(m));
            }
        }
        Ok(Self::from_blocks_unchecked(
            self.field,
            inner.source.clone(),
            self.target.clone(),
            self.degree + inner.degree,
            blocks,
        ))
    }

    fn check_field(&self, other: &GradedMap) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    fn check_parallel(&self, other: &GradedMap) -> Result<()> {
        self.check_field(other)?;
        if self.source != other.source {
            return Err(Error::Composition {
                degree: first_mismatch(&self.source, &other.source),
            });
        }
        if self.target != other.target {
            return Err(Error::Composition {
                degree: first_mismatch(&self.target, &other.target),
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    fn combine(
        &self,
        other: &GradedMap,
        op: impl Fn(&Matrix, &Matrix) -> Matrix,
    ) -> Result<GradedMap> {
        self.check_parallel(other)?;
        let blocks = self
            .source
            .degrees()
            .map(|n| (n, op(&self.block(n), &other.block(n))))
            .collect();
        Ok(Self::from_blocks_unchecked(
            self.field,
            self.source.clone(),
            self.target.clone(),
            self.degree,
            blocks,
        ))
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, Matrix::add)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, Matrix::sub)
    }

    pub fn scale(&self, s: &Scalar) -> GradedMap {
        let blocks = self.blocks.iter().map(|(n, m)| (*n, m.scale(s))).collect();
        Self::from_blocks_unchecked(
            self.field,
            self.source.clone(),
            self.target.clone(),
            self.degree,
            blocks,
        )
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(&self.field.from_int(-1))
    }

    /// Same matrices, reinterpreted between spaces of identical dimensions.
    pub fn reframe(&self, source: GradedSpace, target: GradedSpace) -> Result<GradedMap> {
        if source.dims() != self.source.dims() || target.dims() != self.target.dims() {
            return Err(Error::Shape(
                "reframe between spaces of different dimensions".into(),
            ));
        }
        Ok(Self::from_blocks_unchecked(
            self.field,
            source,
            target,
            self.degree,
            self.blocks.clone(),
        ))
    }

    /// Same matrices with the source degree of every block moved by `k`,
    /// between the given spaces (typically `source.shift(k)`, `target.shift(k)`).
    pub fn reindex(&self, k: i64, source: GradedSpace, target: GradedSpace) -> Result<GradedMap> {
        let blocks: BTreeMap<i64, Matrix> = self
            .blocks
            .iter()
            .map(|(n, m)| (n + k, m.clone()))
            .collect();
        GradedMap::new(self.field, source, target, self.degree, blocks)
    }

    /// Returns a copy with entry `(row, col)` of the degree-`n` block replaced.
    pub fn with_entry(&self, n: i64, row: usize, col: usize, value: Scalar) -> GradedMap {
        let mut blocks = self.blocks.clone();
        let mut m = self.block(n);
        m.set(row, col, value);
        blocks.insert(n, m);
        Self::from_blocks_unchecked(
            self.field,
            self.source.clone(),
            self.target.clone(),
            self.degree,
            blocks,
        )
    }

    /// All source columns, in (degree, column) order, on which `self` and
    /// `other` differ. Both maps must be parallel.
    pub fn differences(&self, other: &GradedMap) -> Result<Vec<Difference>> {
        self.check_parallel(other)?;
        let mut out = Vec::new();
        for n in self.source.degrees() {
            let (a, b) = (self.block_ref(n), other.block_ref(n));
            if a == b {
                continue;
            }
            for c in 0..self.source.dim(n) {
                let (l, r) = (self.column(n, c), other.column(n, c));
                if l != r {
                    out.push(Difference {
                        degree: n,
                        column: c,
                        lhs: l,
                        rhs: r,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Graded tensor product `f ⊗ g` with the Koszul sign
    /// `(f ⊗ g)(x ⊗ y) = (-1)^{|g||x|} f(x) ⊗ g(y)`.
    pub fn tensor(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_field(other)?;
        let field = self.field;
        let (source, src_layout) = tensor_layout(&self.source, &other.source);
        let (target, tgt_layout) = tensor_layout(&self.target, &other.target);
        let degree = self.degree + other.degree;
        let mut blocks = BTreeMap::new();
        for (n, origins) in &src_layout.origins {
            let mut m = Matrix::zeros(field, target.dim(n + degree), origins.len());
            for (col, &(p, i, q, j)) in origins.iter().enumerate() {
                let (Some(fb), Some(gb)) = (self.blocks.get(&p), other.blocks.get(&q)) else {
                    continue;
                };
                let sign = field.sign(other.degree * p);
                for r1 in 0..fb.rows() {
                    let a = fb.get(r1, i);
                    if a.is_zero() {
                        continue;
                    }
                    for r2 in 0..gb.rows() {
                        let b = gb.get(r2, j);
                        if b.is_zero() {
                            continue;
                        }
                        let key = (p + self.degree, r1, q + other.degree, r2);
                        let (tn, row) = tgt_layout.positions[&key];
                        debug_assert_eq!(tn, n + degree);
                        let v = field.mul(&sign, &field.mul(a, b));
                        let cur = m.get(row, col).clone();
                        m.set(row, col, field.add(&cur, &v));
                    }
                }
            }
            blocks.insert(*n, m);
        }
        Ok(Self::from_blocks_unchecked(
            field, source, target, degree, blocks,
        ))
    }

    /// Block-diagonal sum `f ⊕ g`.
    pub fn direct_sum(&self, other: &GradedMap) -> Result<GradedMap> {
        self.check_field(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let blocks = source
            .degrees()
            .map(|n| (n, self.block(n).block_diagonal(&other.block(n))))
            .collect();
        Ok(Self::from_blocks_unchecked(
            self.field,
            source,
            target,
            self.degree,
            blocks,
        ))
    }
}

fn first_mismatch(a: &GradedSpace, b: &GradedSpace) -> i64 {
    a.blocks
        .keys()
        .chain(b.blocks.keys())
        .copied()
        .filter(|n| a.blocks.get(n) != b.blocks.get(n))
        .min()
        .unwrap_or(0)
}

/// `S ⊗ X -> X`.
pub fn left_unitor(field: Field, x: &GradedSpace) -> GradedMap {
    GradedMap::identification(field, &GradedSpace::unit().tensor(x), x).expect("unit law")
}

/// `X -> S ⊗ X`.
pub fn left_unitor_inverse(field: Field, x: &GradedSpace) -> GradedMap {
    GradedMap::identification(field, x, &GradedSpace::unit().tensor(x)).expect("unit law")
}

/// `X ⊗ S -> X`.
pub fn right_unitor(field: Field, x: &GradedSpace) -> GradedMap {
    GradedMap::identification(field, &x.tensor(&GradedSpace::unit()), x).expect("unit law")
}

/// `X -> X ⊗ S`.
pub fn right_unitor_inverse(field: Field, x: &GradedSpace) -> GradedMap {
    GradedMap::identification(field, x, &x.tensor(&GradedSpace::unit())).expect("unit law")
}

/// `X ⊗ Y -> Y ⊗ X`, `x ⊗ y ↦ (-1)^{|x||y|} y ⊗ x`.
pub fn symmetry(field: Field, x: &GradedSpace, y: &GradedSpace) -> GradedMap {
    let (source, src_layout) = tensor_layout(x, y);
    let (target, tgt_layout) = tensor_layout(y, x);
    let mut blocks = BTreeMap::new();
    for (n, origins) in &src_layout.origins {
        let mut m = Matrix::zeros(field, target.dim(*n), origins.len());
        for (col, &(p, i, q, j)) in origins.iter().enumerate() {
            let (_, row) = tgt_layout.positions[&(q, j, p, i)];
            m.set(row, col, field.sign(p * q));
        }
        blocks.insert(*n, m);
    }
    GradedMap::from_blocks_unchecked(field, source, target, 0, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn degree_zero_tensor_dims() {
        let x = GradedSpace::from_dims(&[(0, 2)]);
        let y = GradedSpace::from_dims(&[(0, 3)]);
        assert_eq!(x.tensor(&y).dims(), BTreeMap::from([(0, 6)]));
    }

    #[test]
    fn two_degree_tensor_dims() {
        // (p, q) pairs: (0,0) -> 0, (0,1),(1,0) -> 1, (1,1) -> 2
        let x = GradedSpace::from_dims(&[(0, 1), (1, 1)]);
        assert_eq!(
            x.tensor(&x).dims(),
            BTreeMap::from([(0, 1), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn unit_is_neutral_up_to_labels() {
        let x = GradedSpace::new([(0, vec!["a", "b"]), (1, vec!["c"])]);
        let sx = GradedSpace::unit().tensor(&x);
        assert_eq!(sx.dims(), x.dims());
        assert_eq!(sx.label(1, 0), "1⊗c");
        let round = left_unitor(q(), &x)
            .compose(&left_unitor_inverse(q(), &x))
            .unwrap();
        assert_eq!(round, GradedMap::identity(q(), &x));
    }

    #[test]
    fn basis_order_is_left_degree_then_indices() {
        let x = GradedSpace::new([(0, vec!["a0", "a1"]), (1, vec!["a2"])]);
        let y = GradedSpace::new([(0, vec!["b0"]), (1, vec!["b1", "b2"])]);
        let t = x.tensor(&y);
        let labels: Vec<String> = t.basis(1).iter().map(|e| e.label()).collect();
        assert_eq!(labels, ["a0⊗b1", "a0⊗b2", "a1⊗b1", "a1⊗b2", "a2⊗b0"]);
    }

    #[test]
    fn identity_tensor_identity() {
        let x = GradedSpace::from_dims(&[(0, 1), (1, 2)]);
        let y = GradedSpace::from_dims(&[(-1, 1), (0, 1)]);
        let t = GradedMap::identity(q(), &x)
            .tensor(&GradedMap::identity(q(), &y))
            .unwrap();
        assert_eq!(t, GradedMap::identity(q(), &x.tensor(&y)));
    }

    #[test]
    fn scalar_tensor_scalar() {
        let x = GradedSpace::from_dims(&[(0, 1)]);
        let f = GradedMap::identity(q(), &x).scale(&q().from_int(3));
        let g = GradedMap::identity(q(), &x).scale(&q().from_int(-5));
        let t = f.tensor(&g).unwrap();
        assert_eq!(t.block(0), Matrix::from_int_rows(q(), &[&[-15]]));
    }

    #[test]
    fn koszul_sign_on_degree_one_left_factor() {
        // id_X ⊗ d_Y on x ⊗ y with |x| = 1 picks up (-1)^1.
        let x = GradedSpace::new([(1, vec!["x"])]);
        let y = GradedSpace::new([(0, vec!["y0"]), (1, vec!["y1"])]);
        let d = GradedMap::from_columns(q(), y.clone(), y.clone(), -1, |n, _| {
            if n == 1 {
                vec![q().one()]
            } else {
                vec![]
            }
        })
        .unwrap();
        let t = GradedMap::identity(q(), &x).tensor(&d).unwrap();
        // source x⊗y1 in degree 2, target x⊗y0 in degree 1
        assert_eq!(t.block(2), Matrix::from_int_rows(q(), &[&[-1]]));
    }

    #[test]
    fn shift_reindexes_and_prefixes() {
        let x = GradedSpace::new([(0, vec!["a", "b"])]);
        assert_eq!(x.shift(0), x);
        let s = x.shift(1);
        assert_eq!(s.dims(), BTreeMap::from([(1, 2)]));
        assert_eq!(s.label(1, 0), "sa");
    }

    #[test]
    fn direct_sum_concatenates() {
        let x = GradedSpace::from_dims(&[(0, 1)]);
        let y = GradedSpace::from_dims(&[(1, 1)]);
        assert_eq!(x.direct_sum(&y).dims(), BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(x.direct_sum(&GradedSpace::zero()), x);
    }

    #[test]
    fn direct_sum_map_acts_blockwise() {
        let x = GradedSpace::from_dims(&[(0, 2)]);
        let y = GradedSpace::from_dims(&[(0, 1)]);
        let f = GradedMap::new(
            q(),
            x.clone(),
            x.clone(),
            0,
            BTreeMap::from([(0, Matrix::from_int_rows(q(), &[&[1, 2], &[3, 4]]))]),
        )
        .unwrap();
        let g = GradedMap::identity(q(), &y).scale(&q().from_int(7));
        let fg = f.direct_sum(&g).unwrap();
        let v: Vec<Scalar> = [1, -1, 2].iter().map(|&k| q().from_int(k)).collect();
        let mut expected = f.apply(0, &v[..2]);
        expected.extend(g.apply(0, &v[2..]));
        assert_eq!(fg.apply(0, &v), expected);
    }

    #[test]
    fn composition_mismatch_names_degree() {
        let x = GradedSpace::from_dims(&[(0, 1)]);
        let y = GradedSpace::from_dims(&[(0, 1), (3, 1)]);
        let f = GradedMap::identity(q(), &x);
        let g = GradedMap::identity(q(), &y);
        assert_eq!(g.compose(&f), Err(Error::Composition { degree: 3 }));
    }

    #[test]
    fn zero_annihilates_and_identity_is_neutral() {
        let x = GradedSpace::from_dims(&[(0, 2), (1, 1)]);
        let f = GradedMap::from_columns(q(), x.clone(), x.clone(), 0, |n, i| {
            (0..x.dim(n))
                .map(|r| q().from_int((r + 2 * i) as i64 + n))
                .collect()
        })
        .unwrap();
        let id = GradedMap::identity(q(), &x);
        assert_eq!(id.compose(&f).unwrap(), f);
        let z = GradedMap::zero(q(), x.clone(), x.clone(), 0);
        assert!(z.compose(&f).unwrap().is_zero());
    }

    #[test]
    fn term_rendering() {
        let x = GradedSpace::new([(0, vec!["a", "b", "c"])]);
        let v = vec![q().from_int(2), q().from_int(-1), q().zero()];
        assert_eq!(x.render_vector(q(), 0, &v), "2*a - b");
        assert_eq!(
            x.render_vector(q(), 0, &[q().zero(), q().zero(), q().zero()]),
            "0"
        );
    }
}
