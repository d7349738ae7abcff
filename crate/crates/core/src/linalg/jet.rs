use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{zero, LinalgError, Rational, RationalMatrix};

/// Commutative ring elements that polynomial evaluators can be run over.
pub trait Scalar: Clone + Zero + One + Sub<Output = Self> + Neg<Output = Self> {
    fn from_rational(value: Rational) -> Self;
}

impl Scalar for Rational {
    fn from_rational(value: Rational) -> Self {
        value
    }
}

/// Second-order Taylor jet `f(x + t·u)` truncated after `t²`: the value, the
/// first and the second derivative in `t` at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jet2 {
    pub value: Rational,
    pub d1: Rational,
    pub d2: Rational,
}

impl Jet2 {
    pub fn new(value: Rational, d1: Rational, d2: Rational) -> Self {
        Jet2 { value, d1, d2 }
    }

    pub fn constant(value: Rational) -> Self {
        Jet2 {
            value,
            d1: zero(),
            d2: zero(),
        }
    }

    /// The jet of the coordinate function `x + t·u`.
    pub fn variable(value: Rational, direction: Rational) -> Self {
        Jet2 {
            value,
            d1: direction,
            d2: zero(),
        }
    }

    /// Lifts the line `x + t·u` to a vector of jets.
    pub fn line(x: &[Rational], u: &[Rational]) -> Vec<Jet2> {
        x.iter()
            .zip(u)
            .map(|(a, b)| Jet2::variable(a.clone(), b.clone()))
            .collect()
    }
}

impl Add for Jet2 {
    type Output = Jet2;

    fn add(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + rhs.value,
            d1: self.d1 + rhs.d1,
            d2: self.d2 + rhs.d2,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;

    fn sub(self, rhs: Jet2) -> Jet2 {
        Jet2 {
            value: self.value - rhs.value,
            d1: self.d1 - rhs.d1,
            d2: self.d2 - rhs.d2,
        }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;

    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            d1: -self.d1,
            d2: -self.d2,
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;

    // (a, a', a'')·(b, b', b'') = (ab, a'b + ab', a''b + 2a'b' + ab'')
    fn mul(self, rhs: Jet2) -> Jet2 {
        let Jet2 { value: a, d1: a1, d2: a2 } = self;
        let Jet2 { value: b, d1: b1, d2: b2 } = rhs;
        let mut d2 = &a2 * &b + &a * &b2;
        if !a1.is_zero() && !b1.is_zero() {
            let cross = &a1 * &b1;
            d2 += &cross + &cross;
        }
        Jet2 {
            value: &a * &b,
            d1: &a1 * &b + &a * &b1,
            d2,
        }
    }
}

impl Zero for Jet2 {
    fn zero() -> Self {
        Jet2::constant(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.d1.is_zero() && self.d2.is_zero()
    }
}

impl One for Jet2 {
    fn one() -> Self {
        Jet2::constant(Rational::one())
    }
}

impl Scalar for Jet2 {
    fn from_rational(value: Rational) -> Self {
        Jet2::constant(value)
    }
}

/// A polynomial that can be evaluated on jet vectors.
pub trait JetEval {
    fn arity(&self) -> usize;
    fn eval_jet(&self, x: &[Jet2]) -> Jet2;
}

impl<F: Fn(&[Jet2]) -> Jet2> JetEval for (usize, F) {
    fn arity(&self) -> usize {
        self.0
    }

    fn eval_jet(&self, x: &[Jet2]) -> Jet2 {
        (self.1)(x)
    }
}

/// `(f(x), D_u f(x), D_v f(x), D_u D_v f(x))`, the mixed derivative obtained by
/// polarization `½(D²_{u+v} − D²_u − D²_v)`.
pub fn jet_eval2<F: JetEval + ?Sized>(
    f: &F,
    x: &[Rational],
    u: &[Rational],
    v: &[Rational],
) -> Result<(Rational, Rational, Rational, Rational), LinalgError> {
    let n = f.arity();
    for len in [x.len(), u.len(), v.len()] {
        if len != n {
            return Err(LinalgError::DimensionMismatch { expected: n, got: len });
        }
    }
    let ju = f.eval_jet(&Jet2::line(x, u));
    let jv = f.eval_jet(&Jet2::line(x, v));
    let w: Vec<Rational> = u.iter().zip(v).map(|(a, b)| a + b).collect();
    let jw = f.eval_jet(&Jet2::line(x, &w));
    let mixed = (jw.d2 - &ju.d2 - &jv.d2) / Rational::from_integer(2.into());
    Ok((ju.value, ju.d1, jv.d1, mixed))
}

/// Full Hessian of `f` at `x`, assembled entry by entry from polarized second
/// directional derivatives.
pub fn hessian<F: JetEval + ?Sized>(f: &F, x: &[Rational]) -> Result<RationalMatrix, LinalgError> {
    let n = f.arity();
    if x.len() != n {
        return Err(LinalgError::DimensionMismatch { expected: n, got: x.len() });
    }
    let second = |dir: &[usize]| -> Rational {
        let mut w = vec![zero(); n];
        for &i in dir {
            w[i] += Rational::one();
        }
        f.eval_jet(&Jet2::line(x, &w)).d2
    };
    let diag: Vec<Rational> = (0..n).map(|i| second(&[i])).collect();
    let mut h = RationalMatrix::zeros(n, n);
    let two = Rational::from_integer(2.into());
    for i in 0..n {
        h.set(i, i, diag[i].clone());
        for j in i + 1..n {
            let hij = (second(&[i, j]) - &diag[i] - &diag[j]) / &two;
            h.set(i, j, hij.clone());
            h.set(j, i, hij);
        }
    }
    Ok(h)
}
