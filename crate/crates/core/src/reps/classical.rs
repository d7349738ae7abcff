use super::{MatrixRep, RepError};
use crate::linalg::{one, q, RationalMatrix};

fn check(n: usize, min: usize, name: &str) -> Result<(), RepError> {
    if n < min {
        Err(RepError::InvalidParameter(format!("{name}({n}) needs n >= {min}")))
    } else {
        Ok(())
    }
}

/// `gl(n)` on ℚⁿ, basis `E_ij` in lexicographic order.
pub fn gl(n: usize) -> Result<MatrixRep, RepError> {
    check(n, 1, "gl")?;
    let basis = (0..n)
        .flat_map(|i| (0..n).map(move |j| RationalMatrix::unit(n, n, i, j)))
        .collect();
    MatrixRep::simple(format!("gl({n})"), n, basis)
}

/// `sl(n)` on ℚⁿ. Lexicographic over `(i, j)`: `E_ij` off the diagonal and
/// `E_ii − E_{i+1,i+1}` on it (skipping the last diagonal position).
pub fn sl(n: usize) -> Result<MatrixRep, RepError> {
    check(n, 1, "sl")?;
    let mut basis = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(RationalMatrix::unit(n, n, i, j));
            } else if i + 1 < n {
                let mut h = RationalMatrix::unit(n, n, i, i);
                h.set(i + 1, i + 1, q(-1));
                basis.push(h);
            }
        }
    }
    MatrixRep::simple(format!("sl({n})"), n, basis)
}

/// `so(n)` preserving `Σ xᵢ²`: basis `E_ij − E_ji`, `i < j`.
pub fn so(n: usize) -> Result<MatrixRep, RepError> {
    check(n, 1, "so")?;
    let mut basis = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut m = RationalMatrix::unit(n, n, i, j);
            m.set(j, i, q(-1));
            basis.push(m);
        }
    }
    MatrixRep::simple(format!("so({n})"), n, basis)
}

/// `J = [[0, Id_n], [−Id_n, 0]]`.
pub fn symplectic_form(n: usize) -> RationalMatrix {
    let mut j = RationalMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j.set(i, n + i, one());
        j.set(n + i, i, q(-1));
    }
    j
}

/// `sp(n)` on ℚ²ⁿ preserving `J`: matrices `[[A, B], [C, −Aᵀ]]` with `B`, `C`
/// symmetric. Basis: the `A` part, then `B`, then `C`.
pub fn sp(n: usize) -> Result<MatrixRep, RepError> {
    check(n, 2, "sp")?;
    let d = 2 * n;
    let mut basis = Vec::with_capacity(n * (2 * n + 1));
    for i in 0..n {
        for j in 0..n {
            let mut m = RationalMatrix::unit(d, d, i, j);
            m.set(n + j, n + i, q(-1));
            basis.push(m);
        }
    }
    for offset in [(0, n), (n, 0)] {
        for i in 0..n {
            for j in i..n {
                let mut m = RationalMatrix::unit(d, d, offset.0 + i, offset.1 + j);
                m.set(offset.0 + j, offset.1 + i, one());
                basis.push(m);
            }
        }
    }
    MatrixRep::simple(format!("sp({n})"), d, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(sl(2).unwrap().algebra_dim(), 3);
        assert_eq!(so(4).unwrap().algebra_dim(), 6);
        assert_eq!(sp(2).unwrap().algebra_dim(), 10);
        for n in 1..=4 {
            assert_eq!(gl(n).unwrap().algebra_dim(), n * n);
            assert_eq!(sl(n).unwrap().algebra_dim(), n * n - 1);
            assert_eq!(so(n).unwrap().algebra_dim(), n * (n - 1) / 2);
        }
        for n in 2..=4 {
            assert_eq!(sp(n).unwrap().algebra_dim(), n * (2 * n + 1));
        }
        assert!(sp(1).is_err());
        assert!(gl(0).is_err());
    }

    #[test]
    fn forms_are_preserved() {
        let j = symplectic_form(3);
        for x in sp(3).unwrap().basis() {
            assert!((&(&x.transpose() * &j) + &(&j * x)).is_zero());
        }
        for x in so(4).unwrap().basis() {
            assert!((&x.transpose() + x).is_zero());
        }
        for x in sl(4).unwrap().basis() {
            assert_eq!(x.trace(), q(0));
        }
    }

    #[test]
    fn classical_algebras_are_closed() {
        for n in 1..=4 {
            assert!(gl(n).unwrap().is_bracket_closed());
            assert!(sl(n).unwrap().is_bracket_closed());
            assert!(so(n).unwrap().is_bracket_closed());
        }
        for n in 2..=3 {
            assert!(sp(n).unwrap().is_bracket_closed());
        }
    }
}
