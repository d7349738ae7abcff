use num_traits::Zero;
use pvkit::invariants::{matrix_coords, power, InvariantPolynomial, MatrixLayout};
use pvkit::linalg::{q, qvec, Jet2, JetEval, Rational, RationalMatrix};
use pvkit::reps::{e6_rep, sp, symplectic_form};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_vec(r: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| q(r.gen_range(-3..=3))).collect()
}

fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    RationalMatrix::from_entries(rows, cols, random_vec(r, rows * cols))
}

fn random_invertible(r: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    loop {
        let g = random_matrix(r, n, n);
        if !g.determinant().is_zero() {
            return g;
        }
    }
}

fn random_antisymmetric(r: &mut ChaCha8Rng, n: usize) -> RationalMatrix {
    let mut a = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = q(r.gen_range(-3..=3));
            a.set(j, i, -v.clone());
            a.set(i, j, v);
        }
    }
    a
}

fn column(v: &[Rational]) -> RationalMatrix {
    RationalMatrix::from_entries(v.len(), 1, v.to_vec())
}

#[test]
fn pfaffian_squared_is_determinant() {
    let mut r = rng(1);
    for k in 0..100 {
        let n = 2 * (1 + k % 4);
        let a = random_antisymmetric(&mut r, n);
        let pf = InvariantPolynomial::pfaffian(n).evaluate(&matrix_coords(&a, &MatrixLayout::Alternating));
        let det = InvariantPolynomial::determinant(n, MatrixLayout::Full).evaluate(&matrix_coords(&a, &MatrixLayout::Full));
        assert_eq!(&pf * &pf, det, "size {n}");
        assert_eq!(det, a.determinant());
    }
}

#[test]
fn determinant_is_multiplicative() {
    let mut r = rng(2);
    for n in 1..=5 {
        let g = random_matrix(&mut r, n, n);
        let x = random_matrix(&mut r, n, n);
        let s = &x + &x.transpose();
        let full = InvariantPolynomial::determinant(n, MatrixLayout::Full);
        let sym = InvariantPolynomial::determinant(n, MatrixLayout::Symmetric);
        let dg = g.determinant();
        let gx = &(&g * &x) * &g.transpose();
        let gs = &(&g * &s) * &g.transpose();
        assert_eq!(full.evaluate(&matrix_coords(&gx, &MatrixLayout::Full)), &dg * &dg * x.determinant());
        assert_eq!(
            sym.evaluate(&matrix_coords(&gs, &MatrixLayout::Symmetric)),
            &dg * &dg * sym.evaluate(&matrix_coords(&s, &MatrixLayout::Symmetric))
        );
    }
}

#[test]
fn pfaffian_transforms_by_det() {
    let mut r = rng(3);
    for p in 1..=3 {
        let n = 2 * p;
        let pf = InvariantPolynomial::pfaffian(n);
        let g = random_matrix(&mut r, n, n);
        let x = random_antisymmetric(&mut r, n);
        let gx = &(&g * &x) * &g.transpose();
        assert_eq!(
            pf.evaluate(&matrix_coords(&gx, &MatrixLayout::Alternating)),
            g.determinant() * pf.evaluate(&matrix_coords(&x, &MatrixLayout::Alternating))
        );
    }
}

#[test]
fn pair_dot_is_invariant() {
    let mut r = rng(4);
    for n in 1..=4 {
        let f = InvariantPolynomial::pair_dot(n);
        let g = random_invertible(&mut r, n);
        let gi = g.inverse().unwrap();
        let u = random_vec(&mut r, n);
        let v = random_vec(&mut r, n);
        let u2 = (&column(&u).transpose() * &gi).into_entries();
        let v2 = g.mul_vec(&v);
        let before: Vec<Rational> = u.iter().chain(&v).cloned().collect();
        let after: Vec<Rational> = u2.iter().chain(&v2).cloned().collect();
        assert_eq!(f.evaluate(&before), f.evaluate(&after));
    }
}

#[test]
fn symplectic_pair_is_sp_invariant() {
    let mut r = rng(5);
    for n in 2..=3 {
        let f = InvariantPolynomial::symplectic_pair(n);
        let u = random_vec(&mut r, 2 * n);
        let v = random_vec(&mut r, 2 * n);
        let x: Vec<Rational> = u.iter().chain(&v).cloned().collect();
        for a in sp(n).unwrap().basis() {
            let dir: Vec<Rational> = a.mul_vec(&u).into_iter().chain(a.mul_vec(&v)).collect();
            assert!(f.eval_jet(&Jet2::line(&x, &dir)).d1.is_zero());
        }
        let w = random_vec(&mut r, 2 * n);
        let same: Vec<Rational> = w.iter().chain(&w).cloned().collect();
        assert!(f.evaluate(&same).is_zero());
    }
}

#[test]
fn pf_gram_transforms_by_det_h() {
    let mut r = rng(6);
    for n in 2..=3 {
        let f = InvariantPolynomial::pf_gram(n);
        let j = symplectic_form(n);
        // exp of a nilpotent element of sp(n) is an integral symplectic matrix
        let mut b = RationalMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for k in i..n {
                let v = q(r.gen_range(-2..=2));
                b.set(i, n + k, v.clone());
                b.set(k, n + i, v);
            }
        }
        let g = &RationalMatrix::identity(2 * n) + &b;
        assert_eq!(&(&g.transpose() * &j) * &g, j);
        let h = random_matrix(&mut r, 2, 2);
        let x = random_matrix(&mut r, 2 * n, 2);
        let y = &(&g * &x) * &h.transpose();
        assert_eq!(f.evaluate(y.entries()), h.determinant() * f.evaluate(x.entries()));
        let equal_columns: Vec<Rational> = (0..2 * n).flat_map(|i| [q(i as i64), q(i as i64)]).collect();
        assert!(f.evaluate(&equal_columns).is_zero());
    }
}

#[test]
fn det_augmented_transforms_by_det() {
    let mut r = rng(7);
    for n in 2..=4 {
        let f = InvariantPolynomial::det_augmented(n);
        let g = random_matrix(&mut r, n, n);
        let v = random_vec(&mut r, n);
        let x = random_matrix(&mut r, n, n - 1);
        let before: Vec<Rational> = v.iter().chain(x.entries()).cloned().collect();
        let after: Vec<Rational> = g.mul_vec(&v).into_iter().chain((&g * &x).into_entries()).collect();
        assert_eq!(f.evaluate(&after), g.determinant() * f.evaluate(&before));
    }
}

#[test]
fn bordered_pfaffian_transforms_by_det() {
    let mut r = rng(8);
    for n in [3, 5] {
        let f = InvariantPolynomial::bordered_pfaffian(n);
        let g = random_matrix(&mut r, n, n);
        let v = random_vec(&mut r, n);
        let x = random_antisymmetric(&mut r, n);
        let gx = &(&g * &x) * &g.transpose();
        let before: Vec<Rational> = v.iter().cloned().chain(matrix_coords(&x, &MatrixLayout::Alternating)).collect();
        let after: Vec<Rational> = g
            .mul_vec(&v)
            .into_iter()
            .chain(matrix_coords(&gx, &MatrixLayout::Alternating))
            .collect();
        assert_eq!(f.evaluate(&after), g.determinant() * f.evaluate(&before));
    }
}

fn all_examples() -> Vec<InvariantPolynomial> {
    vec![
        InvariantPolynomial::determinant(3, MatrixLayout::Full),
        InvariantPolynomial::determinant(3, MatrixLayout::Symmetric),
        InvariantPolynomial::determinant_at(2, MatrixLayout::Full, 3, 7),
        InvariantPolynomial::pfaffian(4),
        InvariantPolynomial::pfaffian(6),
        InvariantPolynomial::pfaffian_at(4, 4, 10),
        InvariantPolynomial::quadratic_form(RationalMatrix::from_i64(2, 2, &[1, 2, 2, -1])),
        InvariantPolynomial::pair_dot(3),
        InvariantPolynomial::symplectic_pair(2),
        InvariantPolynomial::pf_gram(3),
        InvariantPolynomial::bordered_pfaffian(5),
        InvariantPolynomial::det_augmented(3),
        InvariantPolynomial::freudenthal_cubic(),
    ]
}

#[test]
fn homogeneity_matches_degree() {
    let mut r = rng(9);
    for f in all_examples() {
        for _ in 0..3 {
            let x = random_vec(&mut r, f.arity);
            let t = q(r.gen_range(2..=4));
            let tx: Vec<Rational> = x.iter().map(|v| v * &t).collect();
            assert_eq!(f.evaluate(&tx), power(&t, f.degree) * f.evaluate(&x), "{}", f.name);
        }
    }
}

/// Values of `t ↦ f(x + t·u)` at `t = 0..=d`, interpolated to read off the
/// first and second derivatives at zero.
fn derivatives_by_interpolation(f: &InvariantPolynomial, x: &[Rational], u: &[Rational]) -> (Rational, Rational) {
    let d = f.degree as usize;
    let points = d + 1;
    let mut vandermonde = RationalMatrix::zeros(points, points);
    let mut values = Vec::with_capacity(points);
    for t in 0..points {
        let tq = q(t as i64);
        for k in 0..points {
            vandermonde.set(t, k, power(&tq, k as u32));
        }
        let xt: Vec<Rational> = x.iter().zip(u).map(|(a, b)| a + b * &tq).collect();
        values.push(f.evaluate(&xt));
    }
    let c = vandermonde.solve(&values).unwrap();
    let second = if d >= 2 { &c[2] * q(2) } else { q(0) };
    (c[1].clone(), second)
}

#[test]
fn jets_agree_with_interpolation() {
    let mut r = rng(10);
    for f in all_examples() {
        for _ in 0..3 {
            let x = random_vec(&mut r, f.arity);
            let u = random_vec(&mut r, f.arity);
            let jet = f.eval_jet(&Jet2::line(&x, &u));
            assert_eq!(jet.value, f.evaluate(&x));
            let (d1, d2) = derivatives_by_interpolation(&f, &x, &u);
            assert_eq!(jet.d1, d1, "{}", f.name);
            assert_eq!(jet.d2, d2, "{}", f.name);
        }
    }
}

#[test]
fn e6_annihilates_the_cubic() {
    let f = InvariantPolynomial::freudenthal_cubic();
    let e6 = e6_rep();
    let mut r = rng(11);
    for _ in 0..50 {
        let x = random_vec(&mut r, 27);
        let k = r.gen_range(0..e6.algebra_dim());
        let dir = e6.basis()[k].mul_vec(&x);
        assert!(f.eval_jet(&Jet2::line(&x, &dir)).d1.is_zero());
    }
}

#[test]
fn bordered_pfaffian_sign_example() {
    // v = (0,0,1), x = [[0,1,0],[−1,0,0],[0,0,0]]: the bordered matrix has
    // pairs (1,2) and (3,4), so the combinatorial pfaffian is +1
    let f = InvariantPolynomial::bordered_pfaffian(3);
    assert_eq!(f.evaluate(&qvec(&[0, 0, 1, 1, 0, 0])), q(1));
}
