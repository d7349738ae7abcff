//! Octonions by Cayley–Dickson doubling, the derivation algebra `g₂` and the
//! stabilizer `e₆` of the Freudenthal cubic on 3×3 Hermitian octonion
//! matrices.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use super::MatrixRep;
use crate::linalg::{q, RationalMatrix, SparseEchelon};

pub const OCTONION_DIM: usize = 8;

fn conj(x: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = x.iter().map(|v| -v).collect();
    out[0] = x[0];
    out
}

/// `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.
fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    if n == 1 {
        return vec![x[0] * y[0]];
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let db = cd_mul(&conj(d), b);
    let da = cd_mul(d, a);
    let bc = cd_mul(b, &conj(c));
    let mut out: Vec<i64> = ac.iter().zip(&db).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

fn table() -> &'static [[(i64, usize); OCTONION_DIM]; OCTONION_DIM] {
    static TABLE: OnceLock<[[(i64, usize); OCTONION_DIM]; OCTONION_DIM]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0i64, 0usize); OCTONION_DIM]; OCTONION_DIM];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut x = vec![0; OCTONION_DIM];
                let mut y = vec![0; OCTONION_DIM];
                x[i] = 1;
                y[j] = 1;
                let p = cd_mul(&x, &y);
                let k = p.iter().position(|&v| v != 0).expect("basis products are nonzero");
                *cell = (p[k], k);
            }
        }
        t
    })
}

/// `e_i · e_j = sign · e_k`, returned as `(sign, k)`.
pub fn octonion_product(i: usize, j: usize) -> (i64, usize) {
    table()[i][j]
}

/// Monomials of the Freudenthal cubic
/// `N = x₁x₂x₃ − x₁n(o₁) − x₂n(o₂) − x₃n(o₃) + 2Re((o₁o₂)o₃)` on the
/// coordinates `[x₁, x₂, x₃, o₁, o₂, o₃]` (27 in total), as
/// `(coefficient, sorted variable triple)`.
pub fn freudenthal_terms() -> &'static [(i64, [usize; 3])] {
    static TERMS: OnceLock<Vec<(i64, [usize; 3])>> = OnceLock::new();
    TERMS.get_or_init(|| {
        let mut acc: BTreeMap<[usize; 3], i64> = BTreeMap::new();
        let mut add = |mut m: [usize; 3], c: i64| {
            m.sort_unstable();
            *acc.entry(m).or_insert(0) += c;
        };
        add([0, 1, 2], 1);
        for (x, o) in [(0, 3), (1, 11), (2, 19)] {
            for a in 0..OCTONION_DIM {
                add([x, o + a, o + a], -1);
            }
        }
        for a in 0..OCTONION_DIM {
            for b in 0..OCTONION_DIM {
                let (s1, k) = octonion_product(a, b);
                for c in 0..OCTONION_DIM {
                    let (s2, l) = octonion_product(k, c);
                    if l == 0 {
                        add([3 + a, 11 + b, 19 + c], 2 * s1 * s2);
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (c, m)).collect()
    })
}

/// `g₂` on the imaginary octonions: derivations `D(xy) = D(x)y + xD(y)`
/// solved on the 64 entries of an 8×8 matrix, then restricted.
pub fn g2_rep() -> MatrixRep {
    static G2: OnceLock<MatrixRep> = OnceLock::new();
    G2.get_or_init(|| {
        let n = OCTONION_DIM;
        let var = |k: usize, i: usize| k * n + i;
        let mut e = SparseEchelon::new(n * n);
        for i in 0..n {
            for j in 0..n {
                let (s, m) = octonion_product(i, j);
                // component l of D(e_i e_j) − D(e_i)e_j − e_i D(e_j)
                let mut rows: Vec<HashMap<usize, i64>> = vec![HashMap::new(); n];
                for (l, row) in rows.iter_mut().enumerate() {
                    *row.entry(var(l, m)).or_insert(0) += s;
                }
                for k in 0..n {
                    let (s1, l1) = octonion_product(k, j);
                    *rows[l1].entry(var(k, i)).or_insert(0) -= s1;
                    let (s2, l2) = octonion_product(i, k);
                    *rows[l2].entry(var(k, j)).or_insert(0) -= s2;
                }
                for row in rows {
                    let mut sparse: Vec<(usize, crate::linalg::Rational)> =
                        row.into_iter().filter(|(_, c)| *c != 0).map(|(v, c)| (v, q(c))).collect();
                    sparse.sort_by_key(|(v, _)| *v);
                    if !sparse.is_empty() {
                        e.insert_sparse(&sparse);
                    }
                }
            }
        }
        let imaginary: Vec<usize> = (1..n).collect();
        let basis = e
            .nullspace()
            .into_iter()
            .map(|v| RationalMatrix::from_entries(n, n, v).submatrix(&imaginary, &imaginary))
            .collect();
        MatrixRep::simple("g2", n - 1, basis).expect("derivations are independent")
    })
    .clone()
}

/// `e₆` on ℚ²⁷: matrices `A` with `Σ_k (Ax)_k ∂_k N(x) = 0` identically,
/// found by equating every cubic monomial coefficient to zero.
pub fn e6_rep() -> MatrixRep {
    static E6: OnceLock<MatrixRep> = OnceLock::new();
    E6.get_or_init(|| {
        let n = 27;
        let mut equations: HashMap<[usize; 3], HashMap<usize, i64>> = HashMap::new();
        for &(c, m) in freudenthal_terms() {
            for t in 0..3 {
                let k = m[t];
                let others: Vec<usize> = (0..3).filter(|&s| s != t).map(|s| m[s]).collect();
                for j in 0..n {
                    let mut mono = [j, others[0], others[1]];
                    mono.sort_unstable();
                    *equations.entry(mono).or_default().entry(k * n + j).or_insert(0) += c;
                }
            }
        }
        let mut keys: Vec<&[usize; 3]> = equations.keys().collect();
        keys.sort();
        let mut e = SparseEchelon::new(n * n);
        for key in keys {
            let mut row: Vec<(usize, crate::linalg::Rational)> = equations[key]
                .iter()
                .filter(|(_, c)| **c != 0)
                .map(|(v, c)| (*v, q(*c)))
                .collect();
            row.sort_by_key(|(v, _)| *v);
            if !row.is_empty() {
                e.insert_sparse(&row);
            }
        }
        let basis = e
            .nullspace()
            .into_iter()
            .map(|v| RationalMatrix::from_entries(n, n, v))
            .collect();
        MatrixRep::simple("e6", n, basis).expect("stabilizer basis is independent")
    })
    .clone()
}
