//! Lie algebras given by explicit bases of matrices acting on ℚⁿ, and the
//! combinators used to assemble the representations of the catalog.

mod classical;
mod octonion;
mod spin;

pub use classical::{gl, sl, so, sp, symplectic_form};
pub use octonion::{e6_rep, freudenthal_terms, g2_rep, octonion_product, OCTONION_DIM};
pub use spin::{spin_rep, spin_vector_rep, SUPPORTED_SPIN};

use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{sparsify, zero, Rational, RationalMatrix, SparseEchelon};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("shared factor `{label}` has dimension {left} in one summand and {right} in another")]
    LabelMismatch { label: String, left: usize, right: usize },
    #[error("factor `{0}` occurs twice in one summand")]
    DuplicateLabel(String),
    #[error("cannot add {k} torus generators to a space with {blocks} summands")]
    TorusCount { k: usize, blocks: usize },
    #[error("basis matrices are linearly dependent")]
    DependentBasis,
    #[error("unsupported construction: {0}")]
    Unsupported(String),
}

/// A named block of consecutive basis elements. Torus factors are never
/// shared between summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    pub start: usize,
    pub len: usize,
    pub torus: bool,
}

#[derive(Clone, Debug)]
pub struct MatrixRep {
    space_dim: usize,
    basis: Vec<RationalMatrix>,
    factors: Vec<Factor>,
    /// Sizes of the direct summands of the space, in order.
    blocks: Vec<usize>,
    derived: OnceLock<Subalgebra>,
    pivots: OnceLock<Vec<usize>>,
}

/// A subalgebra given by coefficient vectors over the parent's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub coefficient_basis: Vec<Vec<Rational>>,
}

impl Subalgebra {
    pub fn dim(&self) -> usize {
        self.coefficient_basis.len()
    }

    /// Whether the bracket of any two basis elements stays in the span.
    /// The parent must be bracket closed: commutators are then determined by
    /// their entries at the parent's pivot positions, and only those entries
    /// are computed.
    pub fn is_closed(&self, parent: &MatrixRep) -> bool {
        let positions = parent.pivot_positions();
        let n = parent.space_dim;
        let mats: Vec<RationalMatrix> = self.coefficient_basis.iter().map(|c| parent.element(c)).collect();
        let restrict = |m: &RationalMatrix| -> Vec<Rational> { positions.iter().map(|&p| m.entries()[p].clone()).collect() };
        let mut span = SparseEchelon::new(positions.len());
        for m in &mats {
            span.insert(&restrict(m));
        }
        let sparse_rows = |m: &RationalMatrix| -> Vec<Vec<(usize, Rational)>> {
            (0..n).map(|i| sparsify(m.row(i))).collect()
        };
        let rows: Vec<Vec<Vec<(usize, Rational)>>> = mats.iter().map(sparse_rows).collect();
        let columns: Vec<Vec<Vec<(usize, Rational)>>> = mats.iter().map(|m| sparse_rows(&m.transpose())).collect();
        let entry = |a: usize, b: usize, i: usize, j: usize| -> Rational {
            // (AB)_ij from row i of A and column j of B
            let col = &columns[b][j];
            let mut acc = zero();
            let mut k = 0;
            for (c, v) in &rows[a][i] {
                while k < col.len() && col[k].0 < *c {
                    k += 1;
                }
                if k < col.len() && col[k].0 == *c {
                    acc += v * &col[k].1;
                }
            }
            acc
        };
        for a in 0..mats.len() {
            for b in a + 1..mats.len() {
                let c: Vec<Rational> = positions
                    .iter()
                    .map(|&p| entry(a, b, p / n, p % n) - entry(b, a, p / n, p % n))
                    .collect();
                if !span.contains(&c) {
                    return false;
                }
            }
        }
        true
    }
}

fn flat_rank(basis: &[RationalMatrix], width: usize) -> usize {
    let mut e = SparseEchelon::new(width);
    for m in basis {
        e.insert(m.entries());
    }
    e.rank()
}

impl MatrixRep {
    /// Validates shapes and linear independence of the basis.
    pub fn new(space_dim: usize, basis: Vec<RationalMatrix>, factors: Vec<Factor>, blocks: Vec<usize>) -> Result<Self, RepError> {
        for m in &basis {
            if m.rows() != space_dim || m.cols() != space_dim {
                return Err(RepError::InvalidParameter(format!(
                    "basis matrix of shape {}x{} on a space of dimension {space_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let covered: usize = factors.iter().map(|f| f.len).sum();
        if covered != basis.len() || blocks.iter().sum::<usize>() != space_dim {
            return Err(RepError::InvalidParameter("factor or block sizes do not add up".into()));
        }
        if flat_rank(&basis, space_dim * space_dim) != basis.len() {
            return Err(RepError::DependentBasis);
        }
        Ok(MatrixRep {
            space_dim,
            basis,
            factors,
            blocks,
            derived: OnceLock::new(),
            pivots: OnceLock::new(),
        })
    }

    /// A single simple factor acting irreducibly.
    pub fn simple(label: impl Into<String>, space_dim: usize, basis: Vec<RationalMatrix>) -> Result<Self, RepError> {
        let len = basis.len();
        MatrixRep::new(
            space_dim,
            basis,
            vec![Factor {
                label: label.into(),
                start: 0,
                len,
                torus: false,
            }],
            vec![space_dim],
        )
    }

    pub fn algebra_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn labels(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.label.clone()).collect()
    }

    /// `Σ cᵢ Xᵢ`.
    pub fn element(&self, coeffs: &[Rational]) -> RationalMatrix {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut m = RationalMatrix::zeros(self.space_dim, self.space_dim);
        for (c, x) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = &m + &x.scale(c);
            }
        }
        m
    }

    /// Renames a factor; used to keep two copies of the same algebra apart
    /// before forming a direct sum.
    pub fn relabel(mut self, from: &str, to: &str) -> Self {
        for f in &mut self.factors {
            if f.label == from {
                f.label = to.to_string();
            }
        }
        self
    }

    /// Whether every commutator of basis elements lies in their span.
    pub fn is_bracket_closed(&self) -> bool {
        let width = self.space_dim * self.space_dim;
        let mut span = SparseEchelon::new(width);
        for m in &self.basis {
            span.insert(m.entries());
        }
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if !span.contains(a.commutator(b).entries()) {
                    return false;
                }
            }
        }
        true
    }

    /// Span of all brackets, as coefficient vectors in reduced echelon form.
    pub fn derived_subalgebra(&self) -> &Subalgebra {
        self.derived.get_or_init(|| {
            let n = self.basis.len();
            let width = self.space_dim * self.space_dim;
            let mut coords = SparseEchelon::with_tracking(width);
            for m in &self.basis {
                coords.insert(m.entries());
            }
            let mut derived = SparseEchelon::new(n);
            'outer: for i in 0..n {
                for j in i + 1..n {
                    if derived.rank() == n {
                        break 'outer;
                    }
                    let c = self.basis[i].commutator(&self.basis[j]);
                    if c.is_zero() {
                        continue;
                    }
                    let v = coords.coordinates(c.entries()).expect("basis is bracket closed");
                    derived.insert(&v);
                }
            }
            Subalgebra {
                coefficient_basis: derived
                    .reduced_rows()
                    .into_iter()
                    .map(|(_, row)| {
                        let mut v = vec![zero(); n];
                        for (k, x) in row {
                            v[k] = x;
                        }
                        v
                    })
                    .collect(),
            }
        })
    }

    /// Entry positions at which the basis matrices are already linearly
    /// independent, so an element of the span is determined there.
    pub fn pivot_positions(&self) -> &[usize] {
        self.pivots.get_or_init(|| {
            let mut e = SparseEchelon::new(self.space_dim * self.space_dim);
            for m in &self.basis {
                e.insert(m.entries());
            }
            e.pivots()
        })
    }

    /// Elements commuting with the whole algebra.
    pub fn center(&self) -> Subalgebra {
        let n = self.basis.len();
        let width = self.space_dim * self.space_dim;
        // c ↦ ([Σ cᵢXᵢ, X_j])_j is linear; its kernel is the center
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for xj in &self.basis {
            let cols: Vec<Vec<Rational>> = self.basis.iter().map(|xi| xi.commutator(xj).into_entries()).collect();
            for r in 0..width {
                if cols.iter().any(|c| !c[r].is_zero()) {
                    rows.push(cols.iter().map(|c| c[r].clone()).collect());
                }
            }
        }
        let mut e = SparseEchelon::new(n);
        for r in &rows {
            e.insert_sparse(&sparsify(r));
        }
        Subalgebra {
            coefficient_basis: e.nullspace(),
        }
    }
}

/// Contragredient: each `X` becomes `−Xᵀ`.
pub fn dual(r: &MatrixRep) -> MatrixRep {
    MatrixRep {
        space_dim: r.space_dim,
        basis: r.basis.iter().map(|x| -&x.transpose()).collect(),
        factors: r.factors.clone(),
        blocks: r.blocks.clone(),
        derived: OnceLock::new(),
        pivots: OnceLock::new(),
    }
}

/// `X ⊗ I + I ⊗ Y` on the product space, coordinate `(i, j)` at
/// `i · dim₂ + j`; on `M_{dim₁, dim₂}` this is `M ↦ XM + MYᵀ`.
pub fn tensor(a: &MatrixRep, b: &MatrixRep) -> Result<MatrixRep, RepError> {
    let ia = RationalMatrix::identity(a.space_dim);
    let ib = RationalMatrix::identity(b.space_dim);
    let mut basis: Vec<RationalMatrix> = a.basis.iter().map(|x| x.kron(&ib)).collect();
    basis.extend(b.basis.iter().map(|y| ia.kron(y)));
    let mut factors = a.factors.clone();
    factors.extend(b.factors.iter().map(|f| Factor {
        start: f.start + a.basis.len(),
        ..f.clone()
    }));
    let dim = a.space_dim * b.space_dim;
    MatrixRep::new(dim, basis, factors, vec![dim])
}

fn sym_coords(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

fn alt_coords(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// `s ↦ Xs + sXᵀ` on matrices spanned by `E_kl + sign·E_lk`, read back on the
/// coordinates `(i, j)`.
fn square_action(r: &MatrixRep, coords: &[(usize, usize)], sign: i64) -> Result<MatrixRep, RepError> {
    if r.blocks.len() != 1 {
        return Err(RepError::Unsupported("symmetric or exterior square of a reducible space".into()));
    }
    let n = r.space_dim;
    let d = coords.len();
    let sign = Rational::from_integer(sign.into());
    let basis = r
        .basis
        .iter()
        .map(|x| {
            let xt = x.transpose();
            let mut m = RationalMatrix::zeros(d, d);
            for (col, &(k, l)) in coords.iter().enumerate() {
                let mut s = RationalMatrix::unit(n, n, k, l);
                if k != l {
                    s.set(l, k, sign.clone());
                }
                let image = &(x * &s) + &(&s * &xt);
                for (row, &(i, j)) in coords.iter().enumerate() {
                    m.set(row, col, image.get(i, j).clone());
                }
            }
            m
        })
        .collect();
    MatrixRep::new(d, basis, r.factors.clone(), vec![d])
}

/// Action on `Sym(n)`, coordinates the entries `(i, j)` with `i ≤ j`.
pub fn sym2(r: &MatrixRep) -> Result<MatrixRep, RepError> {
    square_action(r, &sym_coords(r.space_dim), 1)
}

/// Action on `AS(n)`, coordinates the entries `(i, j)` with `i < j`.
pub fn alt2(r: &MatrixRep) -> Result<MatrixRep, RepError> {
    square_action(r, &alt_coords(r.space_dim), -1)
}

/// Appends `k` scaling generators: the identity when `k = 1`, one scalar per
/// summand when `k` equals the number of summands.
pub fn add_torus(r: &MatrixRep, k: usize) -> Result<MatrixRep, RepError> {
    let mut basis = r.basis.clone();
    let n = r.space_dim;
    if k == 1 {
        basis.push(RationalMatrix::identity(n));
    } else if k == r.blocks.len() {
        let mut offset = 0;
        for &b in &r.blocks {
            let mut m = RationalMatrix::zeros(n, n);
            for i in offset..offset + b {
                m.set(i, i, crate::linalg::one());
            }
            basis.push(m);
            offset += b;
        }
    } else {
        return Err(RepError::TorusCount { k, blocks: r.blocks.len() });
    }
    let mut factors = r.factors.clone();
    factors.push(Factor {
        label: format!("torus^{k}"),
        start: r.basis.len(),
        len: k,
        torus: true,
    });
    MatrixRep::new(n, basis, factors, r.blocks.clone())
}

/// Direct sum of the spaces, where factors carrying the same label in
/// several summands are identified and act diagonally. Torus factors stay
/// separate.
pub fn direct_sum_shared(summands: &[MatrixRep]) -> Result<MatrixRep, RepError> {
    let space_dim: usize = summands.iter().map(|s| s.space_dim).sum();
    // distinct factors in order of first appearance: (label, len, torus, [(summand, start)])
    let mut merged: Vec<(String, usize, bool, Vec<(usize, usize)>)> = Vec::new();
    for (si, s) in summands.iter().enumerate() {
        let mut seen: Vec<&str> = Vec::new();
        for f in &s.factors {
            if seen.contains(&f.label.as_str()) {
                return Err(RepError::DuplicateLabel(f.label.clone()));
            }
            seen.push(&f.label);
            let existing = merged.iter_mut().find(|(label, _, torus, _)| !f.torus && !*torus && *label == f.label);
            match existing {
                Some((label, len, _, places)) => {
                    if *len != f.len {
                        return Err(RepError::LabelMismatch {
                            label: label.clone(),
                            left: *len,
                            right: f.len,
                        });
                    }
                    places.push((si, f.start));
                }
                None => merged.push((f.label.clone(), f.len, f.torus, vec![(si, f.start)])),
            }
        }
    }
    let offsets: Vec<usize> = summands
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s.space_dim;
            Some(o)
        })
        .collect();
    let mut basis = Vec::new();
    let mut factors = Vec::new();
    for (label, len, torus, places) in merged {
        factors.push(Factor {
            label,
            start: basis.len(),
            len,
            torus,
        });
        for k in 0..len {
            let mut m = RationalMatrix::zeros(space_dim, space_dim);
            for &(si, start) in &places {
                let x = &summands[si].basis[start + k];
                let o = offsets[si];
                for i in 0..x.rows() {
                    for j in 0..x.cols() {
                        let v = x.get(i, j);
                        if !v.is_zero() {
                            m.set(o + i, o + j, v.clone());
                        }
                    }
                }
            }
            basis.push(m);
        }
    }
    let blocks = summands.iter().flat_map(|s| s.blocks.iter().copied()).collect();
    MatrixRep::new(space_dim, basis, factors, blocks)
}

/// `{T : ρ(X)T = Tσ(X) for all basis X}` for two representations of the same
/// algebra with matching bases. Returns the dimension of the intertwiner space.
pub fn intertwiner_dim(rho: &MatrixRep, sigma: &MatrixRep) -> usize {
    assert_eq!(rho.algebra_dim(), sigma.algebra_dim());
    let (p, q) = (rho.space_dim, sigma.space_dim);
    // unknown T is p×q, index a*q + b
    let mut e = SparseEchelon::new(p * q);
    for (x, y) in rho.basis.iter().zip(&sigma.basis) {
        for i in 0..p {
            for j in 0..q {
                // (XT − TY)_ij = Σ_a X_ia T_aj − Σ_b T_ib Y_bj
                let mut row: Vec<(usize, Rational)> = Vec::new();
                for a in 0..p {
                    let v = x.get(i, a);
                    if !v.is_zero() {
                        row.push((a * q + j, v.clone()));
                    }
                }
                for b in 0..q {
                    let v = y.get(b, j);
                    if !v.is_zero() {
                        row.push((i * q + b, -v.clone()));
                    }
                }
                if !row.is_empty() {
                    e.insert_sparse(&row);
                }
            }
        }
    }
    p * q - e.rank()
}

/// Symmetric forms `S` with `XᵀS + SX = 0` for every basis element: the
/// invariant quadratic forms `x ↦ xᵀSx`.
pub fn invariant_symmetric_forms(r: &MatrixRep) -> Vec<RationalMatrix> {
    let n = r.space_dim;
    let coords = sym_coords(n);
    let index = |i: usize, j: usize| -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        coords.iter().position(|&c| c == (a, b)).expect("coordinate exists")
    };
    let mut e = SparseEchelon::new(coords.len());
    for x in &r.basis {
        for i in 0..n {
            for j in i..n {
                // (XᵀS + SX)_ij = Σ_k X_ki S_kj + Σ_k S_ik X_kj
                let mut acc: Vec<Rational> = vec![zero(); coords.len()];
                for k in 0..n {
                    let a = x.get(k, i);
                    if !a.is_zero() {
                        acc[index(k, j)] += a;
                    }
                    let b = x.get(k, j);
                    if !b.is_zero() {
                        acc[index(i, k)] += b;
                    }
                }
                e.insert(&acc);
            }
        }
    }
    e.nullspace()
        .into_iter()
        .map(|v| {
            let mut s = RationalMatrix::zeros(n, n);
            for (c, &(i, j)) in coords.iter().enumerate() {
                s.set(i, j, v[c].clone());
                s.set(j, i, v[c].clone());
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn dual_is_an_involution_and_negates_traces() {
        let r = sl(3).unwrap();
        let dd = dual(&dual(&r));
        assert_eq!(dd.basis(), r.basis());
        for (x, y) in r.basis().iter().zip(dual(&r).basis()) {
            assert_eq!(y.trace(), -x.trace());
        }
        let g = gl(2).unwrap();
        for (x, y) in g.basis().iter().zip(dual(&g).basis()) {
            assert_eq!(y.trace(), -x.trace());
        }
    }

    #[test]
    fn square_dimensions() {
        for n in 2..=4 {
            assert_eq!(sym2(&sl(n).unwrap()).unwrap().space_dim(), n * (n + 1) / 2);
        }
        for p in 2..=3 {
            assert_eq!(alt2(&sl(2 * p).unwrap()).unwrap().space_dim(), p * (2 * p - 1));
        }
    }

    #[test]
    fn squares_preserve_symmetry_type() {
        // rebuild Xs + sXᵀ on full matrices and compare with the coordinate action
        let g = gl(3).unwrap();
        let s = sym2(&g).unwrap();
        let a = alt2(&g).unwrap();
        for (x, (ms, ma)) in g.basis().iter().zip(s.basis().iter().zip(a.basis())) {
            let sym = RationalMatrix::from_i64(3, 3, &[1, 2, 0, 2, -1, 3, 0, 3, 4]);
            let out = &(x * &sym) + &(&sym * &x.transpose());
            assert_eq!(out, out.transpose());
            let v: Vec<Rational> = sym_coords(3).iter().map(|&(i, j)| sym.get(i, j).clone()).collect();
            let w = ms.mul_vec(&v);
            let expect: Vec<Rational> = sym_coords(3).iter().map(|&(i, j)| out.get(i, j).clone()).collect();
            assert_eq!(w, expect);
            let alt = RationalMatrix::from_i64(3, 3, &[0, 1, -2, -1, 0, 5, 2, -5, 0]);
            let out = &(x * &alt) + &(&alt * &x.transpose());
            assert_eq!(out, -&out.transpose());
            let v: Vec<Rational> = alt_coords(3).iter().map(|&(i, j)| alt.get(i, j).clone()).collect();
            let expect: Vec<Rational> = alt_coords(3).iter().map(|&(i, j)| out.get(i, j).clone()).collect();
            assert_eq!(ma.mul_vec(&v), expect);
        }
    }

    #[test]
    fn tensor_acts_on_matrices() {
        let a = gl(2).unwrap();
        let b = gl(3).unwrap();
        // gl(2) ⊗ gl(3) has a repeated identity, so use sl on one side
        let t = tensor(&a, &sl(3).unwrap()).unwrap();
        assert_eq!(t.algebra_dim(), 4 + 8);
        let m = RationalMatrix::from_i64(2, 3, &[1, 0, 2, -1, 3, 1]);
        let x = &a.basis()[1];
        let out = x * &m;
        assert_eq!(t.basis()[1].mul_vec(m.entries()), out.into_entries());
        assert!(matches!(tensor(&a, &b), Err(RepError::DependentBasis)));
    }

    #[test]
    fn shared_sum_of_two_symplectic_copies() {
        for n in 2..=3 {
            let v = sp(n).unwrap();
            let r = add_torus(&direct_sum_shared(&[v.clone(), v]).unwrap(), 2).unwrap();
            assert_eq!(r.algebra_dim(), n * (2 * n + 1) + 2);
            assert_eq!(r.space_dim(), 4 * n);
            assert!(r.is_bracket_closed());
        }
    }

    #[test]
    fn shared_sum_rejects_mismatched_labels() {
        let a = sl(2).unwrap();
        let b = sl(3).unwrap().relabel("sl(3)", "sl(2)");
        assert_eq!(
            direct_sum_shared(&[a, b]).unwrap_err(),
            RepError::LabelMismatch {
                label: "sl(2)".into(),
                left: 3,
                right: 8
            }
        );
    }

    #[test]
    fn torus_count_must_match_summands() {
        let r = sl(2).unwrap();
        assert!(matches!(add_torus(&r, 2), Err(RepError::TorusCount { k: 2, blocks: 1 })));
    }

    #[test]
    fn derived_subalgebras() {
        let g = gl(3).unwrap();
        assert_eq!(g.derived_subalgebra().dim(), 8);
        let t = add_torus(&direct_sum_shared(&[sl(1).unwrap(), sl(1).unwrap().relabel("sl(1)", "x")]).unwrap(), 2).unwrap();
        assert_eq!(t.algebra_dim(), 2);
        assert_eq!(t.derived_subalgebra().dim(), 0);
        let s = add_torus(&direct_sum_shared(&[sp(2).unwrap(), sp(2).unwrap()]).unwrap(), 2).unwrap();
        assert_eq!(s.derived_subalgebra().dim(), 10);
        assert!(s.derived_subalgebra().is_closed(&s));
    }

    #[test]
    fn center_of_gl() {
        let c = gl(3).unwrap().center();
        assert_eq!(c.dim(), 1);
        let g = gl(3).unwrap();
        assert_eq!(g.element(&c.coefficient_basis[0]).scale(&q(1)).get(0, 1), &zero());
        assert_eq!(sl(3).unwrap().center().dim(), 0);
    }

    #[test]
    fn so_has_the_standard_invariant_form() {
        let forms = invariant_symmetric_forms(&so(4).unwrap());
        assert_eq!(forms, vec![RationalMatrix::identity(4)]);
    }
}
