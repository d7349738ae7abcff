//! Exactly evaluable polynomials: determinants, pfaffians, quadratic forms and
//! the cubic norm, each evaluated as a black box over any [`Scalar`] so the
//! same code yields values and second-order jets.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{one, Jet2, JetEval, Rational, RationalMatrix, Scalar};
use crate::reps::freudenthal_terms;

/// How a square matrix is read from the coordinate vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixLayout {
    /// All `n²` entries, row-major.
    Full,
    /// Entries `(i, j)` with `i ≤ j`, row by row.
    Symmetric,
    /// Entries `(i, j)` with `i < j`, row by row; the matrix is antisymmetric.
    Alternating,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InvariantKind {
    /// `det` of an `n×n` matrix stored from `offset`.
    Determinant { n: usize, layout: MatrixLayout, offset: usize },
    /// Pfaffian of an `n×n` antisymmetric matrix stored from `offset`.
    Pfaffian { n: usize, offset: usize },
    /// `xᵀSx` on the coordinates from `offset`.
    Quadratic { form: RationalMatrix, offset: usize },
    /// `u·v` for `(u, v) ∈ M_{1,n} ⊕ M_{n,1}`.
    PairDot { n: usize },
    /// `uᵀJv` for `(u, v) ∈ M_{2n,1} ⊕ M_{2n,1}`.
    SymplecticPair { n: usize },
    /// `Pf(XᵀJX)` for `X ∈ M_{2n,2}` stored row-major from `offset`.
    PfGram { n: usize, offset: usize },
    /// `Pf([[x, v], [−vᵀ, 0]])` for `v ∈ ℚⁿ` followed by `x ∈ AS(n)`.
    BorderedPfaffian { n: usize },
    /// `det(v; x)` for `v ∈ M_{n,1}` followed by `x ∈ M_{n,n−1}` row-major,
    /// with `v` as the first column.
    DetAugmented { n: usize },
    /// The cubic norm on `[x₁, x₂, x₃, o₁, o₂, o₃]`.
    Freudenthal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPolynomial {
    pub name: String,
    pub arity: usize,
    pub degree: u32,
    pub kind: InvariantKind,
}

fn entry_reader(n: usize, layout: &MatrixLayout) -> impl Fn(usize, usize) -> Option<(usize, bool)> + '_ {
    // returns (coordinate index, negate)
    move |i, j| match layout {
        MatrixLayout::Full => Some((i * n + j, false)),
        MatrixLayout::Symmetric => {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            Some((a * n - a * (a + 1) / 2 + b, false))
        }
        MatrixLayout::Alternating => {
            if i == j {
                return None;
            }
            let (a, b, neg) = if i < j { (i, j, false) } else { (j, i, true) };
            Some((a * n - a * (a + 1) / 2 + (b - a - 1), neg))
        }
    }
}

fn layout_len(n: usize, layout: &MatrixLayout) -> usize {
    match layout {
        MatrixLayout::Full => n * n,
        MatrixLayout::Symmetric => n * (n + 1) / 2,
        MatrixLayout::Alternating => n * (n.saturating_sub(1)) / 2,
    }
}

fn read_matrix<S: Scalar>(x: &[S], n: usize, layout: &MatrixLayout, offset: usize) -> Vec<Vec<S>> {
    let read = entry_reader(n, layout);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match read(i, j) {
                    None => S::zero(),
                    Some((k, false)) => x[offset + k].clone(),
                    Some((k, true)) => -x[offset + k].clone(),
                })
                .collect()
        })
        .collect()
}

/// Determinant by Laplace expansion along rows, memoized over the set of
/// columns still available.
pub fn determinant_of<S: Scalar>(a: &[Vec<S>]) -> S {
    let n = a.len();
    if n == 0 {
        return S::one();
    }
    let mut memo: HashMap<u32, S> = HashMap::new();
    det_rec(a, 0, (1u32 << n) - 1, &mut memo)
}

fn det_rec<S: Scalar>(a: &[Vec<S>], row: usize, cols: u32, memo: &mut HashMap<u32, S>) -> S {
    if row == a.len() {
        return S::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = S::zero();
    let mut position = 0;
    for c in 0..a.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &a[row][c];
        if !entry.is_zero() {
            let minor = det_rec(a, row + 1, cols & !(1 << c), memo);
            let term = entry.clone() * minor;
            acc = if position % 2 == 0 { acc + term } else { acc - term };
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// `Pf(A) = Σ sgn(σ) Π a_{σ(2i−1)σ(2i)}`, expanded along the first remaining
/// index and memoized over index sets.
pub fn pfaffian_of<S: Scalar>(a: &[Vec<S>]) -> S {
    let n = a.len();
    if n % 2 == 1 {
        return S::zero();
    }
    if n == 0 {
        return S::one();
    }
    let mut memo: HashMap<u32, S> = HashMap::new();
    pf_rec(a, (1u32 << n) - 1, &mut memo)
}

fn pf_rec<S: Scalar>(a: &[Vec<S>], set: u32, memo: &mut HashMap<u32, S>) -> S {
    if set == 0 {
        return S::one();
    }
    if let Some(v) = memo.get(&set) {
        return v.clone();
    }
    let i = set.trailing_zeros() as usize;
    let rest = set & !(1 << i);
    let mut acc = S::zero();
    let mut position = 0;
    for j in 0..a.len() {
        if rest & (1 << j) == 0 {
            continue;
        }
        let entry = &a[i][j];
        if !entry.is_zero() {
            let term = entry.clone() * pf_rec(a, rest & !(1 << j), memo);
            acc = if position % 2 == 0 { acc + term } else { acc - term };
        }
        position += 1;
    }
    memo.insert(set, acc.clone());
    acc
}

fn bilinear<S: Scalar>(form: &RationalMatrix, u: &[S], v: &[S]) -> S {
    let mut acc = S::zero();
    for i in 0..form.rows() {
        for j in 0..form.cols() {
            let c = form.get(i, j);
            if !c.is_zero() {
                acc = acc + S::from_rational(c.clone()) * u[i].clone() * v[j].clone();
            }
        }
    }
    acc
}

impl InvariantPolynomial {
    pub fn determinant(n: usize, layout: MatrixLayout) -> Self {
        Self::determinant_at(n, layout, 0, 0)
    }

    /// Determinant of a matrix block that starts at `offset` in a space of
    /// total dimension `arity` (0 means the block fills the space).
    pub fn determinant_at(n: usize, layout: MatrixLayout, offset: usize, arity: usize) -> Self {
        let len = layout_len(n, &layout);
        let name = match layout {
            MatrixLayout::Symmetric => format!("det on Sym({n})"),
            _ => format!("det on M({n})"),
        };
        InvariantPolynomial {
            name,
            arity: if arity == 0 { offset + len } else { arity },
            degree: n as u32,
            kind: InvariantKind::Determinant { n, layout, offset },
        }
    }

    pub fn pfaffian(n: usize) -> Self {
        Self::pfaffian_at(n, 0, 0)
    }

    pub fn pfaffian_at(n: usize, offset: usize, arity: usize) -> Self {
        assert!(n.is_multiple_of(2), "pfaffian needs an even size");
        let len = layout_len(n, &MatrixLayout::Alternating);
        InvariantPolynomial {
            name: format!("Pf on AS({n})"),
            arity: if arity == 0 { offset + len } else { arity },
            degree: (n / 2) as u32,
            kind: InvariantKind::Pfaffian { n, offset },
        }
    }

    pub fn quadratic_form(form: RationalMatrix) -> Self {
        Self::quadratic_form_at(form, 0, 0)
    }

    pub fn quadratic_form_at(form: RationalMatrix, offset: usize, arity: usize) -> Self {
        assert_eq!(form, form.transpose(), "quadratic form must be symmetric");
        let len = form.rows();
        InvariantPolynomial {
            name: format!("quadratic form on Q^{len}"),
            arity: if arity == 0 { offset + len } else { arity },
            degree: 2,
            kind: InvariantKind::Quadratic { form, offset },
        }
    }

    pub fn pair_dot(n: usize) -> Self {
        InvariantPolynomial {
            name: format!("uv on M(1,{n}) + M({n},1)"),
            arity: 2 * n,
            degree: 2,
            kind: InvariantKind::PairDot { n },
        }
    }

    pub fn symplectic_pair(n: usize) -> Self {
        InvariantPolynomial {
            name: format!("u^T J v on M({},1) + M({},1)", 2 * n, 2 * n),
            arity: 4 * n,
            degree: 2,
            kind: InvariantKind::SymplecticPair { n },
        }
    }

    pub fn pf_gram(n: usize) -> Self {
        Self::pf_gram_at(n, 0, 0)
    }

    pub fn pf_gram_at(n: usize, offset: usize, arity: usize) -> Self {
        InvariantPolynomial {
            name: format!("Pf(X^T J X) on M({},2)", 2 * n),
            arity: if arity == 0 { offset + 4 * n } else { arity },
            degree: 2,
            kind: InvariantKind::PfGram { n, offset },
        }
    }

    pub fn bordered_pfaffian(n: usize) -> Self {
        assert!(n % 2 == 1, "bordered pfaffian needs odd n");
        InvariantPolynomial {
            name: format!("bordered Pf on Q^{n} + AS({n})"),
            arity: n + n * (n - 1) / 2,
            degree: n.div_ceil(2) as u32,
            kind: InvariantKind::BorderedPfaffian { n },
        }
    }

    pub fn det_augmented(n: usize) -> Self {
        assert!(n >= 2);
        InvariantPolynomial {
            name: format!("det(v;x) on M({n},1) + M({n},{})", n - 1),
            arity: n * n,
            degree: n as u32,
            kind: InvariantKind::DetAugmented { n },
        }
    }

    pub fn freudenthal_cubic() -> Self {
        InvariantPolynomial {
            name: "Freudenthal cubic".into(),
            arity: 27,
            degree: 3,
            kind: InvariantKind::Freudenthal,
        }
    }

    /// Evaluates over any commutative scalar type.
    pub fn eval<S: Scalar>(&self, x: &[S]) -> S {
        assert_eq!(x.len(), self.arity, "{}: wrong number of coordinates", self.name);
        match &self.kind {
            InvariantKind::Determinant { n, layout, offset } => determinant_of(&read_matrix(x, *n, layout, *offset)),
            InvariantKind::Pfaffian { n, offset } => {
                pfaffian_of(&read_matrix(x, *n, &MatrixLayout::Alternating, *offset))
            }
            InvariantKind::Quadratic { form, offset } => {
                let v = &x[*offset..*offset + form.rows()];
                bilinear(form, v, v)
            }
            InvariantKind::PairDot { n } => {
                (0..*n).fold(S::zero(), |acc, i| acc + x[i].clone() * x[n + i].clone())
            }
            InvariantKind::SymplecticPair { n } => {
                // uᵀJv = Σ u_i v_{n+i} − u_{n+i} v_i
                let (u, v) = x.split_at(2 * n);
                (0..*n).fold(S::zero(), |acc, i| {
                    acc + u[i].clone() * v[n + i].clone() - u[n + i].clone() * v[i].clone()
                })
            }
            InvariantKind::PfGram { n, offset } => {
                // (XᵀJX)_{12} = c₁ᵀJc₂ for the two columns
                let col = |c: usize, i: usize| x[offset + 2 * i + c].clone();
                (0..*n).fold(S::zero(), |acc, i| {
                    acc + col(0, i) * col(1, n + i) - col(0, n + i) * col(1, i)
                })
            }
            InvariantKind::BorderedPfaffian { n } => {
                let inner = read_matrix(&x[*n..], *n, &MatrixLayout::Alternating, 0);
                let mut m: Vec<Vec<S>> = inner
                    .into_iter()
                    .enumerate()
                    .map(|(i, mut row)| {
                        row.push(x[i].clone());
                        row
                    })
                    .collect();
                let mut last: Vec<S> = (0..*n).map(|i| -x[i].clone()).collect();
                last.push(S::zero());
                m.push(last);
                pfaffian_of(&m)
            }
            InvariantKind::DetAugmented { n } => {
                let m: Vec<Vec<S>> = (0..*n)
                    .map(|i| {
                        let mut row = vec![x[i].clone()];
                        row.extend((0..n - 1).map(|j| x[n + i * (n - 1) + j].clone()));
                        row
                    })
                    .collect();
                determinant_of(&m)
            }
            InvariantKind::Freudenthal => freudenthal_terms().iter().fold(S::zero(), |acc, (c, m)| {
                let coeff = S::from_rational(Rational::from_integer((*c).into()));
                acc + coeff * x[m[0]].clone() * x[m[1]].clone() * x[m[2]].clone()
            }),
        }
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.eval(x)
    }
}

impl JetEval for InvariantPolynomial {
    fn arity(&self) -> usize {
        self.arity
    }

    fn eval_jet(&self, x: &[Jet2]) -> Jet2 {
        self.eval(x)
    }
}

/// Coordinates of a square matrix in the given layout (used to build test
/// points and generic points).
pub fn matrix_coords(m: &RationalMatrix, layout: &MatrixLayout) -> Vec<Rational> {
    let n = m.rows();
    match layout {
        MatrixLayout::Full => m.entries().to_vec(),
        MatrixLayout::Symmetric => (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).clone()).collect(),
        MatrixLayout::Alternating => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).clone())
            .collect(),
    }
}

/// `t^degree`, used by homogeneity checks.
pub fn power(t: &Rational, degree: u32) -> Rational {
    (0..degree).fold(one(), |acc, _| acc * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qvec};
    use crate::reps::symplectic_form;

    #[test]
    fn determinant_examples() {
        let d = InvariantPolynomial::determinant(3, MatrixLayout::Full);
        assert_eq!(d.evaluate(&matrix_coords(&RationalMatrix::identity(3), &MatrixLayout::Full)), q(1));
        let d2 = InvariantPolynomial::determinant(2, MatrixLayout::Full);
        assert_eq!(d2.evaluate(&qvec(&[2, 0, 0, 3])), q(6));
        let s = InvariantPolynomial::determinant(2, MatrixLayout::Symmetric);
        // [[1,2],[2,5]]
        assert_eq!(s.evaluate(&qvec(&[1, 2, 5])), q(1));
    }

    #[test]
    fn pfaffian_examples() {
        let p2 = InvariantPolynomial::pfaffian(2);
        assert_eq!(p2.evaluate(&qvec(&[1])), q(1));
        let p4 = InvariantPolynomial::pfaffian(4);
        assert_eq!(p4.evaluate(&qvec(&[1, 2, 3, 4, 5, 6])), q(8));
        let j = symplectic_form(2);
        assert_eq!(p4.evaluate(&matrix_coords(&j, &MatrixLayout::Alternating)), q(-1));
    }

    #[test]
    fn quadratic_examples() {
        let f = InvariantPolynomial::quadratic_form(RationalMatrix::identity(3));
        assert_eq!(f.evaluate(&qvec(&[1, 0, 0])), q(1));
        assert_eq!(f.evaluate(&qvec(&[1, 2, 2])), q(9));
        let h = crate::linalg::hessian(&f, &qvec(&[3, -1, 2])).unwrap();
        assert_eq!(h, RationalMatrix::identity(3).scale(&q(2)));
    }

    #[test]
    fn pair_examples() {
        let f = InvariantPolynomial::pair_dot(2);
        assert_eq!(f.evaluate(&qvec(&[1, 0, 1, 0])), q(1));
        assert_eq!(f.evaluate(&qvec(&[1, 2, 3, 4])), q(11));
        let g = InvariantPolynomial::symplectic_pair(2);
        assert_eq!(g.evaluate(&qvec(&[1, 0, 0, 0, 0, 0, 1, 0])), q(1));
        assert_eq!(g.evaluate(&qvec(&[1, 2, 3, 4, 1, 2, 3, 4])), q(0));
    }

    #[test]
    fn pf_gram_examples() {
        let f = InvariantPolynomial::pf_gram(2);
        // columns e1 and e3 of a 4×2 matrix
        assert_eq!(f.evaluate(&qvec(&[1, 0, 0, 0, 0, 1, 0, 0])), q(1));
        assert_eq!(f.evaluate(&qvec(&[1, 1, 2, 2, 3, 3, 4, 4])), q(0));
    }

    #[test]
    fn bordered_pfaffian_example() {
        let f = InvariantPolynomial::bordered_pfaffian(3);
        // v = e3, x = [[0,1,0],[-1,0,0],[0,0,0]] with coordinates (x12, x13, x23)
        let point = qvec(&[0, 0, 1, 1, 0, 0]);
        assert_eq!(f.evaluate(&point), q(1));
        assert_eq!(f.evaluate(&qvec(&[0, 0, 0, 1, 0, 0])), q(0));
        let scaled = qvec(&[0, 0, 5, 1, 0, 0]);
        assert_eq!(f.evaluate(&scaled), q(5));
    }

    #[test]
    fn det_augmented_examples() {
        let f = InvariantPolynomial::det_augmented(3);
        // v = e1, x = [e2 e3]
        let point = qvec(&[1, 0, 0, 0, 0, 1, 0, 0, 1]);
        assert_eq!(f.evaluate(&point), q(1));
        // v = first column of x
        let dependent = qvec(&[2, 3, 1, 2, 0, 3, 1, 1, 5]);
        assert_eq!(f.evaluate(&dependent), q(0));
    }

    #[test]
    fn freudenthal_on_diagonal() {
        let f = InvariantPolynomial::freudenthal_cubic();
        let mut x = vec![q(0); 27];
        x[0] = q(1);
        x[1] = q(1);
        x[2] = q(1);
        assert_eq!(f.evaluate(&x), q(1));
        x[0] = q(2);
        x[1] = q(-3);
        x[2] = q(5);
        assert_eq!(f.evaluate(&x), q(-30));
    }
}
