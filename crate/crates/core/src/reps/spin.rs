//! Spin representations from integer gamma matrices.
//!
//! With `σ₁ = [[0,1],[1,0]]`, `ε = [[0,1],[−1,0]]`, `σ₃ = diag(1,−1)` and
//! `k = ⌊m/2⌋`, the matrices
//! `γ_{2j−1} = σ₃^{⊗(j−1)} ⊗ σ₁ ⊗ I…`, `γ_{2j} = σ₃^{⊗(j−1)} ⊗ ε ⊗ I…` and, for
//! odd `m`, `γ_m = σ₃^{⊗k}` anticommute and square to `ηᵢ = +1` (odd `i`) or
//! `−1` (even `i`). The elements `½γᵢγⱼ` span `so(η)`, a split real form of
//! `so(m)` with rational structure constants. For even `m` the spinor space
//! splits into the `±1` eigenspaces of `σ₃^{⊗k}`; the `+1` half is used.

use super::{MatrixRep, RepError};
use crate::linalg::{frac, q, RationalMatrix};

pub const SUPPORTED_SPIN: [usize; 4] = [7, 8, 9, 10];

fn sigma1() -> RationalMatrix {
    RationalMatrix::from_i64(2, 2, &[0, 1, 1, 0])
}

fn epsilon() -> RationalMatrix {
    RationalMatrix::from_i64(2, 2, &[0, 1, -1, 0])
}

fn sigma3() -> RationalMatrix {
    RationalMatrix::from_i64(2, 2, &[1, 0, 0, -1])
}

fn kron_all(factors: &[RationalMatrix]) -> RationalMatrix {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kron(f))
}

pub(crate) fn gammas(m: usize) -> Vec<RationalMatrix> {
    let k = m / 2;
    let id = RationalMatrix::identity(2);
    let mut out = Vec::with_capacity(m);
    for j in 0..k {
        for middle in [sigma1(), epsilon()] {
            let mut parts = vec![sigma3(); j];
            parts.push(middle);
            parts.extend(std::iter::repeat_n(id.clone(), k - j - 1));
            out.push(kron_all(&parts));
        }
    }
    if m % 2 == 1 {
        out.push(kron_all(&vec![sigma3(); k]));
    }
    out
}

fn eta(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn check(m: usize) -> Result<(), RepError> {
    if SUPPORTED_SPIN.contains(&m) {
        Ok(())
    } else {
        Err(RepError::Unsupported(format!("spin({m}); supported: 7, 8, 9, 10")))
    }
}

/// Spinor representation of `so(m)`: dimension 8, 8, 16, 16 for
/// `m = 7, 8, 9, 10` (half-spin for even `m`). Basis `½γᵢγⱼ`, `i < j`.
pub fn spin_rep(m: usize) -> Result<MatrixRep, RepError> {
    check(m)?;
    let g = gammas(m);
    let full = g[0].rows();
    let keep: Vec<usize> = if m.is_multiple_of(2) {
        let chirality = kron_all(&vec![sigma3(); m / 2]);
        (0..full).filter(|&i| chirality.get(i, i) == &q(1)).collect()
    } else {
        (0..full).collect()
    };
    let half = frac(1, 2);
    let mut basis = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let l = (&g[i] * &g[j]).scale(&half);
            basis.push(l.submatrix(&keep, &keep));
        }
    }
    MatrixRep::simple(format!("spin({m})"), keep.len(), basis)
}

/// The vector representation of the same basis: `½γᵢγⱼ ↦ ηⱼE_ij − ηᵢE_ji`.
pub fn spin_vector_rep(m: usize) -> Result<MatrixRep, RepError> {
    check(m)?;
    let mut basis = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            let mut x = RationalMatrix::zeros(m, m);
            x.set(i, j, q(eta(j)));
            x.set(j, i, q(-eta(i)));
            basis.push(x);
        }
    }
    MatrixRep::simple(format!("spin({m})"), m, basis)
}
