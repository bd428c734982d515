//! Graded quotient rings of weighted GF(2) polynomial rings, realized through
//! per-degree exact linear algebra.
//!
//! For each degree `d` up to a cap, the ring stores the monomial basis of the
//! free algebra, a reduced echelon basis of the relation subspace (spanned by
//! all monomial multiples of the relation generators landing in degree `d`),
//! and the residue basis of non-pivot monomials. Normal forms, dimension
//! counts, duality pairings, kernels and in-ring linear solving all reduce to
//! operations on those echelon forms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::f2core::{ambient_eq, Monomial, PolyF2, VarSet};
use crate::linalg::{BitRow, Echelon, Matrix};
use crate::{Error, Result};

/// Per-degree slice of a quotient ring.
#[derive(Debug, Clone)]
struct DegreeData {
    /// All monomials of this degree, in decreasing graded-lex order, so the
    /// pivot of a bit row is its leading monomial.
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: Echelon,
    /// Columns without a pivot: the residue (quotient) basis.
    residue: Vec<usize>,
    /// column -> position in `residue`, or `usize::MAX`.
    residue_pos: Vec<usize>,
}

impl DegreeData {
    fn new(ambient: &Arc<VarSet>, d: u32) -> Self {
        let monomials = ambient.monomials_of_degree(d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let relations = Echelon::new(monomials.len());
        DegreeData {
            monomials,
            index,
            relations,
            residue: Vec::new(),
            residue_pos: Vec::new(),
        }
    }

    fn finish(&mut self) {
        self.residue = self.relations.free_cols();
        self.residue_pos = vec![usize::MAX; self.monomials.len()];
        for (pos, &col) in self.residue.iter().enumerate() {
            self.residue_pos[col] = pos;
        }
    }

    fn dim(&self) -> usize {
        self.residue.len()
    }
}

/// A weighted polynomial ring over GF(2) modulo a homogeneous ideal, with all
/// structure computed degree by degree up to `cap`. Degrees beyond the cap
/// are treated as zero.
#[derive(Debug, Clone)]
pub struct GradedQuotientRing {
    ambient: Arc<VarSet>,
    relations: Vec<PolyF2>,
    cap: u32,
    degrees: Vec<DegreeData>,
}

/// Quotient of the polynomial ring over `ambient` by the homogeneous
/// `relations`, computed up to degree `cap`.
///
/// Identically zero relations are skipped; they occur naturally when a
/// relation family hits a vanishing class.
pub fn build_quotient(
    ambient: Arc<VarSet>,
    relations: Vec<PolyF2>,
    cap: u32,
) -> Result<GradedQuotientRing> {
    let mut kept = Vec::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let Some(deg) = r.homogeneous_degree() else {
            return Err(Error::NonHomogeneousRelation(r.to_string()));
        };
        if deg > cap {
            return Err(Error::CapTooSmall {
                relation_degree: deg,
                cap,
            });
        }
        kept.push(r);
    }
    let mut degrees = Vec::with_capacity(cap as usize + 1);
    for d in 0..=cap {
        let mut data = DegreeData::new(&ambient, d);
        for r in &kept {
            let e = r.homogeneous_degree().unwrap();
            if e > d {
                continue;
            }
            for m in ambient.monomials_of_degree(d - e) {
                let product = r.times_mono(&m);
                let mut row = BitRow::zeros(data.monomials.len());
                for t in product.terms() {
                    row.flip(data.index[t]);
                }
                data.relations.insert(row);
            }
        }
        data.finish();
        degrees.push(data);
    }
    Ok(GradedQuotientRing {
        ambient,
        relations: kept,
        cap,
        degrees,
    })
}

impl GradedQuotientRing {
    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    pub fn relations(&self) -> &[PolyF2] {
        &self.relations
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Dimension of the degree-`d` component; zero beyond the cap.
    pub fn dim(&self, d: u32) -> usize {
        if d > self.cap {
            0
        } else {
            self.degrees[d as usize].dim()
        }
    }

    /// Dimensions for degrees `0..=cap`.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(|d| d.dim()).sum()
    }

    /// The residue-basis monomials of degree `d`.
    pub fn residue_basis(&self, d: u32) -> Vec<Monomial> {
        if d > self.cap {
            return Vec::new();
        }
        let data = &self.degrees[d as usize];
        data.residue
            .iter()
            .map(|&c| data.monomials[c].clone())
            .collect()
    }

    /// Residue coordinates of the degree-`d` component of `p`.
    fn component_coords(&self, p: &PolyF2, d: u32) -> BitRow {
        let data = &self.degrees[d as usize];
        let mut raw = BitRow::zeros(data.monomials.len());
        for t in p.terms() {
            if self.ambient.mono_degree(t) == d {
                raw.flip(data.index[t]);
            }
        }
        let reduced = data.relations.reduce(raw);
        let mut coords = BitRow::zeros(data.residue.len());
        for col in reduced.ones() {
            coords.set(data.residue_pos[col], true);
        }
        coords
    }

    fn coords_to_poly(&self, d: u32, coords: &BitRow) -> PolyF2 {
        let data = &self.degrees[d as usize];
        let monos = coords
            .ones()
            .map(|pos| data.monomials[data.residue[pos]].clone())
            .collect();
        PolyF2::from_monomials(self.ambient.clone(), monos)
    }

    /// Residue coordinates of the degree-`d` component of `p`; the zero-width
    /// vector beyond the cap.
    pub fn coords(&self, p: &PolyF2, d: u32) -> Result<BitRow> {
        if !ambient_eq(p.ambient(), &self.ambient) {
            return Err(Error::AmbientMismatch);
        }
        if d > self.cap {
            return Ok(BitRow::zeros(0));
        }
        Ok(self.component_coords(p, d))
    }

    /// Reconstructs the reduced polynomial from residue coordinates.
    pub fn poly_from_coords(&self, d: u32, coords: &BitRow) -> PolyF2 {
        self.coords_to_poly(d, coords)
    }

    /// The reduced representative of `p`, supported on the residue basis.
    /// Terms above the cap are treated as zero.
    pub fn normal_form(&self, p: &PolyF2) -> Result<PolyF2> {
        if !ambient_eq(p.ambient(), &self.ambient) {
            return Err(Error::AmbientMismatch);
        }
        let mut degrees_seen: Vec<u32> = p
            .terms()
            .iter()
            .map(|t| self.ambient.mono_degree(t))
            .collect();
        degrees_seen.sort_unstable();
        degrees_seen.dedup();
        let mut out = PolyF2::zero(self.ambient.clone());
        for d in degrees_seen {
            if d > self.cap {
                continue;
            }
            let coords = self.component_coords(p, d);
            out = out.add(&self.coords_to_poly(d, &coords))?;
        }
        Ok(out)
    }

    pub fn is_zero_class(&self, p: &PolyF2) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Multiply then reduce.
    pub fn mul_nf(&self, a: &PolyF2, b: &PolyF2) -> Result<PolyF2> {
        self.normal_form(&a.mul(b)?)
    }

    /// The matrix of multiplication by homogeneous `m` from degree `d` to
    /// degree `d + deg m`, in residue coordinates. Stored rows are the images
    /// of the source basis vectors.
    pub fn mul_matrix(&self, m: &PolyF2, d: u32) -> Result<Matrix> {
        let md = m
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidInput("multiplier must be nonzero homogeneous".into()))?;
        let target = d + md;
        let width = self.dim(target);
        let mut matrix = Matrix::new(width);
        for b in self.residue_basis(d) {
            let image = m.times_mono(&b);
            let coords = if target > self.cap {
                BitRow::zeros(0)
            } else {
                self.component_coords(&image, target)
            };
            matrix.push(coords);
        }
        Ok(matrix)
    }

    /// Rank of multiplication by `m` out of degree `d`.
    pub fn mul_rank(&self, m: &PolyF2, d: u32) -> Result<usize> {
        Ok(self.mul_matrix(m, d)?.rank())
    }

    /// Dimension of `ker(. * m)` on degree `d`.
    pub fn mul_kernel_dim(&self, m: &PolyF2, d: u32) -> Result<usize> {
        let matrix = self.mul_matrix(m, d)?;
        Ok(self.dim(d) - matrix.rank())
    }

    /// A basis of `ker(. * m)` on degree `d`, as reduced polynomials.
    pub fn mul_kernel_basis(&self, m: &PolyF2, d: u32) -> Result<Vec<PolyF2>> {
        let matrix = self.mul_matrix(m, d)?;
        Ok(matrix
            .kernel_basis()
            .into_iter()
            .map(|v| self.coords_to_poly(d, &v))
            .collect())
    }

    /// Solves `x * m = t` for `x` in degree `d`.
    ///
    /// Returns the echelon-canonical solution (coordinates at kernel pivots
    /// zeroed) or `None` when `t` is outside the image, along with the
    /// dimension of `ker(. * m)` on degree `d`.
    pub fn solve_mul(&self, m: &PolyF2, t: &PolyF2, d: u32) -> Result<SolveOutcome> {
        let md = m
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidInput("multiplier must be nonzero homogeneous".into()))?;
        let target_deg = d + md;
        let t_nf = self.normal_form(t)?;
        if let Some(td) = t_nf.homogeneous_degree() {
            if td != target_deg {
                return Err(Error::DegreeMismatch {
                    expected: target_deg,
                    found: td,
                });
            }
        }
        let matrix = self.mul_matrix(m, d)?;
        let rhs = if target_deg > self.cap {
            BitRow::zeros(0)
        } else {
            self.component_coords(&t_nf, target_deg)
        };
        let (solution, kernel_dim) = matrix.solve_from_columns(&rhs);
        Ok(SolveOutcome {
            solution: solution.map(|v| self.coords_to_poly(d, &v)),
            kernel_dim,
        })
    }
}

/// Result of [`GradedQuotientRing::solve_mul`].
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solution: Option<PolyF2>,
    pub kernel_dim: usize,
}

/// Number of partitions of `d` fitting inside a `k x m` box (at most `k`
/// parts, each at most `m`), by the Gaussian-binomial recurrence. Serves as
/// the independent oracle for Borel-ring dimensions.
pub fn partition_box_count(k: u32, m: u32, d: u32) -> u64 {
    fn go(k: u32, m: u32, d: u32, memo: &mut HashMap<(u32, u32, u32), u64>) -> u64 {
        if d == 0 {
            return 1;
        }
        if k == 0 || m == 0 || d > k * m {
            return 0;
        }
        if let Some(&v) = memo.get(&(k, m, d)) {
            return v;
        }
        // Either every part is at most m-1, or remove one part equal to m.
        let v = go(k, m - 1, d, memo) + if d >= m { go(k - 1, m, d - m, memo) } else { 0 };
        memo.insert((k, m, d), v);
        v
    }
    go(k, m, d, &mut HashMap::new())
}

/// A finite-dimensional graded GF(2) algebra given by basis labels per degree
/// and full multiplication tables. The common carrier for quotient rings and
/// presented rings.
#[derive(Debug, Clone)]
pub struct FiniteGradedRing {
    labels: Vec<Vec<String>>,
    top: usize,
    /// `mult[(d1, d2)]` is a flat table: entry `i * dim(d2) + j` holds the
    /// product of basis element `i` of degree `d1` with `j` of degree `d2`,
    /// in the basis of degree `d1 + d2`. Products beyond `top` are zero and
    /// not stored.
    mult: HashMap<(usize, usize), Vec<BitRow>>,
}

impl FiniteGradedRing {
    /// Builds the carrier from a quotient ring: residue monomials become
    /// basis labels and all pairwise products are tabulated. The top degree
    /// is the last degree with a nonzero component, which may sit below the
    /// quotient's cap.
    pub fn from_quotient(ring: &GradedQuotientRing) -> Result<Self> {
        let top = (0..=ring.cap())
            .rev()
            .find(|&d| ring.dim(d) > 0)
            .unwrap_or(0) as usize;
        let mut labels = Vec::with_capacity(top + 1);
        for d in 0..=top as u32 {
            labels.push(
                ring.residue_basis(d)
                    .iter()
                    .map(|m| ring.ambient().mono_to_string(m))
                    .collect::<Vec<_>>(),
            );
        }
        if labels[0].len() != 1 {
            return Err(Error::InvalidInput(format!(
                "degree-0 component has dimension {}, expected 1",
                labels[0].len()
            )));
        }
        let mut mult = HashMap::new();
        for d1 in 0..=top as u32 {
            if ring.dim(d1) == 0 {
                continue;
            }
            let basis1 = ring.residue_basis(d1);
            for d2 in 0..=(top as u32 - d1) {
                if ring.dim(d2) == 0 {
                    continue;
                }
                let basis2 = ring.residue_basis(d2);
                let mut table = Vec::with_capacity(basis1.len() * basis2.len());
                for a in &basis1 {
                    for b in &basis2 {
                        let product = PolyF2::from_monomial(ring.ambient().clone(), a.times(b));
                        table.push(ring.coords(&product, d1 + d2)?);
                    }
                }
                mult.insert((d1 as usize, d2 as usize), table);
            }
        }
        Ok(FiniteGradedRing { labels, top, mult })
    }

    /// Assembles a ring directly from labels and tables; used by tests that
    /// need hand-built (counter)examples.
    pub fn from_raw(
        labels: Vec<Vec<String>>,
        mult: HashMap<(usize, usize), Vec<BitRow>>,
    ) -> Result<Self> {
        if labels.is_empty() || labels[0].len() != 1 {
            return Err(Error::InvalidInput("degree-0 basis must be {1}".into()));
        }
        let top = labels.len() - 1;
        Ok(FiniteGradedRing { labels, top, mult })
    }

    pub fn top_degree(&self) -> usize {
        self.top
    }

    pub fn dim(&self, d: usize) -> usize {
        if d > self.top {
            0
        } else {
            self.labels[d].len()
        }
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.len()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.labels.iter().map(|l| l.len()).sum()
    }

    pub fn labels(&self, d: usize) -> &[String] {
        &self.labels[d]
    }

    /// Product of basis element `i` (degree `d1`) with basis element `j`
    /// (degree `d2`), as coordinates in degree `d1 + d2`.
    pub fn basis_product(&self, d1: usize, i: usize, d2: usize, j: usize) -> BitRow {
        if d1 + d2 > self.top {
            return BitRow::zeros(0);
        }
        match self.mult.get(&(d1, d2)) {
            Some(table) => table[i * self.dim(d2) + j].clone(),
            None => BitRow::zeros(self.dim(d1 + d2)),
        }
    }

    /// Product of two coordinate vectors of fixed degrees.
    pub fn mul_vec(&self, d1: usize, x: &BitRow, d2: usize, y: &BitRow) -> BitRow {
        let target = d1 + d2;
        if target > self.top {
            return BitRow::zeros(0);
        }
        let mut acc = BitRow::zeros(self.dim(target));
        for i in x.ones() {
            for j in y.ones() {
                acc.xor_assign(&self.basis_product(d1, i, d2, j));
            }
        }
        acc
    }

    /// Exhaustive identity, commutativity and associativity check over all
    /// basis pairs/triples. Intended for desk-scale rings in tests.
    pub fn check_axioms(&self) -> Result<()> {
        let one = {
            let mut v = BitRow::zeros(1);
            v.set(0, true);
            v
        };
        for d in 0..=self.top {
            for i in 0..self.dim(d) {
                let mut x = BitRow::zeros(self.dim(d));
                x.set(i, true);
                if self.mul_vec(0, &one, d, &x) != x {
                    return Err(Error::InvalidInput(format!(
                        "1 * {} differs from it",
                        self.labels[d][i]
                    )));
                }
            }
        }
        for d1 in 0..=self.top {
            for d2 in 0..=self.top - d1 {
                for i in 0..self.dim(d1) {
                    for j in 0..self.dim(d2) {
                        let ab = self.basis_product(d1, i, d2, j);
                        if ab != self.basis_product(d2, j, d1, i) {
                            return Err(Error::InvalidInput(format!(
                                "commutativity fails at degrees ({d1},{d2})"
                            )));
                        }
                        for d3 in 0..=self.top - d1 - d2 {
                            for k in 0..self.dim(d3) {
                                let mut c = BitRow::zeros(self.dim(d3));
                                c.set(k, true);
                                let left = self.mul_vec(d1 + d2, &ab, d3, &c);
                                let bc = self.basis_product(d2, j, d3, k);
                                let mut a = BitRow::zeros(self.dim(d1));
                                a.set(i, true);
                                let right = self.mul_vec(d1, &a, d2 + d3, &bc);
                                if left != right {
                                    return Err(Error::InvalidInput(format!(
                                        "associativity fails at degrees ({d1},{d2},{d3})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Whether the cup-product pairing `H^d x H^(T-d) -> H^T = GF(2)` is perfect:
/// the two dimensions agree and the pairing matrix has full rank.
///
/// Errors when the top degree is not one-dimensional.
pub fn pairing_perfect(ring: &FiniteGradedRing, d: usize) -> Result<bool> {
    let top = ring.top_degree();
    if ring.dim(top) != 1 {
        return Err(Error::TopDegreeNotOneDimensional {
            degree: top,
            dim: ring.dim(top),
        });
    }
    let e = top - d;
    if ring.dim(d) != ring.dim(e) {
        return Ok(false);
    }
    let n = ring.dim(d);
    if n == 0 {
        return Ok(true);
    }
    let mut matrix = Matrix::new(ring.dim(e));
    for i in 0..n {
        let mut row = BitRow::zeros(ring.dim(e));
        for j in 0..ring.dim(e) {
            if ring.basis_product(d, i, e, j).get(0) {
                row.set(j, true);
            }
        }
        matrix.push(row);
    }
    Ok(matrix.rank() == n)
}

/// The largest `m` with `(H^+)^m != 0`: start from the full positive part
/// and repeatedly multiply by positive-degree basis elements, tracking the
/// span per degree, until everything dies.
pub fn cup_length(ring: &FiniteGradedRing) -> usize {
    let top = ring.top_degree();
    let mut span: Vec<Echelon> = (0..=top).map(|d| Echelon::new(ring.dim(d))).collect();
    let mut any = false;
    for (d, ech) in span.iter_mut().enumerate().skip(1) {
        for i in 0..ring.dim(d) {
            let mut v = BitRow::zeros(ring.dim(d));
            v.set(i, true);
            ech.insert(v);
            any = true;
        }
    }
    if !any {
        return 0;
    }
    let mut length = 1;
    loop {
        let mut next: Vec<Echelon> = (0..=top).map(|d| Echelon::new(ring.dim(d))).collect();
        let mut nonzero = false;
        for d1 in 1..=top {
            if ring.dim(d1) == 0 {
                continue;
            }
            for d2 in 1..=top.saturating_sub(d1) {
                if span[d2].rank() == 0 {
                    continue;
                }
                let rows: Vec<BitRow> = span[d2].rows().to_vec();
                for i in 0..ring.dim(d1) {
                    let mut x = BitRow::zeros(ring.dim(d1));
                    x.set(i, true);
                    for v in &rows {
                        let product = ring.mul_vec(d1, &x, d2, v);
                        if !product.is_zero() && next[d1 + d2].insert(product) {
                            nonzero = true;
                        }
                    }
                }
            }
        }
        if !nonzero {
            return length;
        }
        span = next;
        length += 1;
    }
}
