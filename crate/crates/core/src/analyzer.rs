//! Infinitesimal criteria for a representation with declared invariants:
//! generic points certified by exact rank, isotropy subalgebras, the rank of
//! the character group, relative-invariant characters and Hessian regularity.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::invariants::InvariantPolynomial;
use crate::linalg::{hessian, q, rank_of_vectors, Jet2, JetEval, LinalgError, Rational, RationalMatrix, SparseEchelon};
use crate::reps::{MatrixRep, Subalgebra};

pub const DEFAULT_MAX_RETRIES: usize = 64;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("point has {got} coordinates, space has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no generic point found after {attempts} attempts")]
    NotPrehomogeneous { attempts: usize },
    #[error("invariant `{0}` vanishes at every available test point")]
    ZeroAtTestPoint(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointSource {
    Hint,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericPoint {
    #[serde(serialize_with = "rationals_as_strings")]
    pub coordinates: Vec<Rational>,
    pub certified: bool,
    pub source: PointSource,
}

pub(crate) fn rationals_as_strings<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Columns `Xᵢ·x` for the basis elements `Xᵢ`.
pub fn action_matrix(rep: &MatrixRep, x: &[Rational]) -> Result<RationalMatrix, AnalysisError> {
    if x.len() != rep.space_dim() {
        return Err(AnalysisError::DimensionMismatch {
            expected: rep.space_dim(),
            got: x.len(),
        });
    }
    let columns: Vec<Vec<Rational>> = rep.basis().iter().map(|m| m.mul_vec(x)).collect();
    Ok(RationalMatrix::from_columns(rep.space_dim(), &columns))
}

/// Whether the infinitesimal orbit map at `x` is onto.
pub fn is_generic(rep: &MatrixRep, x: &[Rational]) -> Result<bool, AnalysisError> {
    Ok(action_matrix(rep, x)?.rank() == rep.space_dim())
}

/// Deterministic source of certified generic points: integer vectors with
/// entries in `[−3, 3]`.
pub struct PointSampler<'a> {
    rep: &'a MatrixRep,
    rng: ChaCha8Rng,
    max_retries: usize,
}

impl<'a> PointSampler<'a> {
    pub fn new(rep: &'a MatrixRep, seed: u64, max_retries: usize) -> Self {
        PointSampler {
            rep,
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_retries,
        }
    }

    pub fn next_point(&mut self) -> Result<GenericPoint, AnalysisError> {
        for _ in 0..self.max_retries {
            let x: Vec<Rational> = (0..self.rep.space_dim()).map(|_| q(self.rng.gen_range(-3..=3))).collect();
            if is_generic(self.rep, &x)? {
                return Ok(GenericPoint {
                    coordinates: x,
                    certified: true,
                    source: PointSource::Random,
                });
            }
        }
        Err(AnalysisError::NotPrehomogeneous {
            attempts: self.max_retries,
        })
    }
}

/// The hint when it is certified, otherwise the first certified random point.
pub fn find_generic_point(
    rep: &MatrixRep,
    hint: Option<&[Rational]>,
    seed: u64,
    max_retries: usize,
) -> Result<GenericPoint, AnalysisError> {
    if let Some(h) = hint {
        if is_generic(rep, h)? {
            return Ok(GenericPoint {
                coordinates: h.to_vec(),
                certified: true,
                source: PointSource::Hint,
            });
        }
    }
    PointSampler::new(rep, seed, max_retries).next_point()
}

/// `{X : X·x = 0}` as coefficient vectors.
pub fn isotropy_algebra(rep: &MatrixRep, x: &GenericPoint) -> Result<Subalgebra, AnalysisError> {
    Ok(Subalgebra {
        coefficient_basis: action_matrix(rep, &x.coordinates)?.nullspace(),
    })
}

/// `dim 𝔤 − dim([𝔤,𝔤] + 𝔤ₓ)`.
pub fn character_space_dim_with(rep: &MatrixRep, isotropy: &Subalgebra) -> usize {
    let n = rep.algebra_dim();
    let mut stacked = SparseEchelon::new(n);
    for v in rep.derived_subalgebra().coefficient_basis.iter().chain(&isotropy.coefficient_basis) {
        stacked.insert(v);
    }
    n - stacked.rank()
}

pub fn character_space_dim(rep: &MatrixRep, x: &GenericPoint) -> Result<usize, AnalysisError> {
    Ok(character_space_dim_with(rep, &isotropy_algebra(rep, x)?))
}

/// `λⱼ = (D_{Xⱼx} f)(x) / f(x)`, or `None` when `f(x) = 0`.
pub fn character_at(rep: &MatrixRep, f: &InvariantPolynomial, x: &[Rational]) -> Option<Vec<Rational>> {
    let value = f.evaluate(x);
    if value.is_zero() {
        return None;
    }
    Some(
        rep.basis()
            .iter()
            .map(|m| f.eval_jet(&Jet2::line(x, &m.mul_vec(x))).d1 / &value)
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub degree: u32,
    pub verified: bool,
    #[serde(serialize_with = "rationals_as_strings")]
    pub lambda: Vec<Rational>,
    pub points_checked: usize,
    pub points_skipped: usize,
    pub vanishes_on_derived: bool,
    pub vanishes_on_isotropy: bool,
}

fn lambda_of(lambda: &[Rational], coeffs: &[Rational]) -> Rational {
    lambda.iter().zip(coeffs).fold(Rational::zero(), |acc, (l, c)| acc + l * c)
}

/// Checks `X·f = λ(X) f` with one `λ` at every point where `f` is nonzero,
/// and that `λ` kills the derived and isotropy subalgebras.
pub fn verify_relative_invariant(
    rep: &MatrixRep,
    f: &InvariantPolynomial,
    points: &[GenericPoint],
    isotropy: &Subalgebra,
) -> Result<InvariantCheck, AnalysisError> {
    if f.arity != rep.space_dim() {
        return Err(AnalysisError::DimensionMismatch {
            expected: rep.space_dim(),
            got: f.arity,
        });
    }
    let mut lambda: Option<Vec<Rational>> = None;
    let mut consistent = true;
    let mut checked = 0;
    let mut skipped = 0;
    for p in points {
        match character_at(rep, f, &p.coordinates) {
            None => skipped += 1,
            Some(l) => {
                checked += 1;
                match &lambda {
                    None => lambda = Some(l),
                    Some(first) => consistent &= *first == l,
                }
            }
        }
    }
    let lambda = lambda.ok_or_else(|| AnalysisError::ZeroAtTestPoint(f.name.clone()))?;
    let vanishes = |s: &Subalgebra| s.coefficient_basis.iter().all(|c| lambda_of(&lambda, c).is_zero());
    let vanishes_on_derived = vanishes(rep.derived_subalgebra());
    let vanishes_on_isotropy = vanishes(isotropy);
    Ok(InvariantCheck {
        name: f.name.clone(),
        degree: f.degree,
        verified: consistent && vanishes_on_derived && vanishes_on_isotropy,
        lambda,
        points_checked: checked,
        points_skipped: skipped,
        vanishes_on_derived,
        vanishes_on_isotropy,
    })
}

/// `det Hess f(x) ≠ 0`.
pub fn hessian_regularity(f: &InvariantPolynomial, x: &[Rational]) -> Result<bool, AnalysisError> {
    if f.evaluate(x).is_zero() {
        return Err(AnalysisError::ZeroAtTestPoint(f.name.clone()));
    }
    Ok(!hessian(f, x)?.determinant().is_zero())
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub max_retries: usize,
    /// Certified points used to compare characters.
    pub verification_points: usize,
    /// Certified points at which the character rank is recomputed.
    pub stability_points: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
            verification_points: 10,
            stability_points: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub prehomogeneous: bool,
    pub algebra_dim: usize,
    pub space_dim: usize,
    pub isotropy_dim: usize,
    pub isotropy_closed: bool,
    pub character_dim: usize,
    pub character_dim_stable: bool,
    pub qd1: bool,
    pub generic_point: GenericPoint,
    pub invariant_checks: Vec<InvariantCheck>,
    pub independent_invariants: usize,
    pub regular: Option<bool>,
    /// Whether `det Hess` was zero at all or at none of the sampled points.
    pub hessian_dichotomy: Option<bool>,
    pub notes: Vec<String>,
}

/// The full pipeline: generic point, isotropy, character rank (recomputed at
/// several points), every declared invariant, and regularity of the first
/// invariant when the character rank is one.
pub fn classify(
    rep: &MatrixRep,
    declared: &[InvariantPolynomial],
    hint: Option<&[Rational]>,
    options: &AnalysisOptions,
) -> Result<AnalysisReport, AnalysisError> {
    let mut notes = Vec::new();
    if let Some(h) = hint {
        if !is_generic(rep, h)? {
            notes.push("registered point is not generic; sampled a random point instead".to_string());
        }
    }
    let primary = find_generic_point(rep, hint, options.seed, options.max_retries)?;
    let mut sampler = PointSampler::new(rep, options.seed.wrapping_add(1), options.max_retries);
    let wanted = options.verification_points.max(options.stability_points);
    let mut points = vec![primary.clone()];
    while points.len() < wanted {
        points.push(sampler.next_point()?);
    }

    let isotropy = isotropy_algebra(rep, &primary)?;
    let isotropy_closed = isotropy.is_closed(rep);
    let character_dim = character_space_dim_with(rep, &isotropy);
    let mut character_dim_stable = true;
    for p in points.iter().skip(1).take(options.stability_points.saturating_sub(1)) {
        character_dim_stable &= character_space_dim(rep, p)? == character_dim;
    }

    let mut verification = points[..options.verification_points.min(points.len())].to_vec();
    let mut invariant_checks = Vec::with_capacity(declared.len());
    for f in declared {
        // top up with fresh points when f vanishes at some of them
        let mut extra = 0;
        let check = loop {
            let check = verify_relative_invariant(rep, f, &verification, &isotropy);
            let short = match &check {
                Ok(c) => c.points_checked < options.verification_points,
                Err(AnalysisError::ZeroAtTestPoint(_)) => true,
                Err(_) => false,
            };
            if !short || extra == options.max_retries {
                break check;
            }
            verification.push(sampler.next_point()?);
            extra += 1;
        };
        invariant_checks.push(check?);
    }
    let lambdas: Vec<Vec<Rational>> = invariant_checks.iter().map(|c| c.lambda.clone()).collect();
    let independent_invariants = rank_of_vectors(&lambdas, rep.algebra_dim());

    let mut regular = None;
    let mut hessian_dichotomy = None;
    if character_dim == 1 {
        if let Some(f) = declared.first() {
            let mut observed = Vec::new();
            for p in &verification {
                if !f.evaluate(&p.coordinates).is_zero() {
                    observed.push(hessian_regularity(f, &p.coordinates)?);
                }
                if observed.len() == options.verification_points {
                    break;
                }
            }
            regular = observed.first().copied();
            hessian_dichotomy = Some(observed.iter().all(|&b| b) || observed.iter().all(|&b| !b));
        }
    }

    Ok(AnalysisReport {
        prehomogeneous: true,
        algebra_dim: rep.algebra_dim(),
        space_dim: rep.space_dim(),
        isotropy_dim: isotropy.dim(),
        isotropy_closed,
        character_dim,
        character_dim_stable,
        qd1: character_dim == 1,
        generic_point: primary,
        invariant_checks,
        independent_invariants,
        regular,
        hessian_dichotomy,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::MatrixLayout;
    use crate::linalg::{frac, qvec};
    use crate::reps::{add_torus, alt2, gl, so, sp, sym2};

    #[test]
    fn action_matrix_examples() {
        let torus = MatrixRep::simple("t", 1, vec![RationalMatrix::identity(1)]).unwrap();
        let a = action_matrix(&torus, &qvec(&[1])).unwrap();
        assert_eq!(a, RationalMatrix::identity(1));
        let sym = sym2(&gl(3).unwrap()).unwrap();
        let id = qvec(&[1, 0, 0, 1, 0, 1]);
        assert_eq!(action_matrix(&sym, &id).unwrap().rank(), 6);
        assert!(action_matrix(&sym, &qvec(&[0; 6])).unwrap().is_zero());
        assert!(matches!(
            action_matrix(&sym, &qvec(&[1, 2])),
            Err(AnalysisError::DimensionMismatch { expected: 6, got: 2 })
        ));
    }

    #[test]
    fn generic_point_examples() {
        let r = sym2(&gl(2).unwrap()).unwrap();
        let p = find_generic_point(&r, Some(&qvec(&[1, 0, 1])), 0, 8).unwrap();
        assert_eq!(p.source, PointSource::Hint);
        assert!(p.certified);
        let zero = MatrixRep::simple("z", 1, vec![]).unwrap();
        assert_eq!(
            find_generic_point(&zero, None, 0, 5),
            Err(AnalysisError::NotPrehomogeneous { attempts: 5 })
        );
    }

    #[test]
    fn isotropy_of_so_plus_torus() {
        for n in 3..=5 {
            let r = add_torus(&so(n).unwrap(), 1).unwrap();
            let mut e1 = vec![q(0); n];
            e1[0] = q(1);
            let p = find_generic_point(&r, Some(&e1), 0, 8).unwrap();
            let iso = isotropy_algebra(&r, &p).unwrap();
            assert_eq!(iso.dim(), (n - 1) * (n - 2) / 2);
            assert!(iso.is_closed(&r));
        }
    }

    #[test]
    fn symplectic_torus_has_no_character() {
        let r = add_torus(&sp(2).unwrap(), 1).unwrap();
        let p = find_generic_point(&r, None, 3, 64).unwrap();
        assert_eq!(character_space_dim(&r, &p).unwrap(), 0);
    }

    #[test]
    fn character_examples() {
        // det on Sym(n) under gl(n): λ(X) = 2 tr X
        let r = sym2(&gl(3).unwrap()).unwrap();
        let f = InvariantPolynomial::determinant(3, MatrixLayout::Symmetric);
        let mut sampler = PointSampler::new(&r, 5, 64);
        let points: Vec<GenericPoint> = (0..4).map(|_| sampler.next_point().unwrap()).collect();
        let iso = isotropy_algebra(&r, &points[0]).unwrap();
        let check = verify_relative_invariant(&r, &f, &points, &iso).unwrap();
        assert!(check.verified);
        let expected: Vec<Rational> = gl(3).unwrap().basis().iter().map(|m| m.trace() * q(2)).collect();
        assert_eq!(check.lambda, expected);

        // Pf under gl(4) on AS(4): λ(X) = tr X
        let r = alt2(&gl(4).unwrap()).unwrap();
        let f = InvariantPolynomial::pfaffian(4);
        let mut sampler = PointSampler::new(&r, 6, 64);
        let points: Vec<GenericPoint> = (0..4).map(|_| sampler.next_point().unwrap()).collect();
        let iso = isotropy_algebra(&r, &points[0]).unwrap();
        let check = verify_relative_invariant(&r, &f, &points, &iso).unwrap();
        let expected: Vec<Rational> = gl(4).unwrap().basis().iter().map(|m| m.trace()).collect();
        assert_eq!(check.lambda, expected);

        // Σx² under so(3) + scaling
        let r = add_torus(&so(3).unwrap(), 1).unwrap();
        let f = InvariantPolynomial::quadratic_form(RationalMatrix::identity(3));
        let p = find_generic_point(&r, None, 0, 64).unwrap();
        let iso = isotropy_algebra(&r, &p).unwrap();
        let check = verify_relative_invariant(&r, &f, &[p], &iso).unwrap();
        assert_eq!(check.lambda, qvec(&[0, 0, 0, 2]));
    }

    #[test]
    fn hessian_examples() {
        let f = InvariantPolynomial::quadratic_form(RationalMatrix::identity(4));
        assert!(hessian_regularity(&f, &qvec(&[1, 0, 0, 0])).unwrap());
        let d = InvariantPolynomial::determinant(3, MatrixLayout::Symmetric);
        assert!(hessian_regularity(&d, &qvec(&[1, 0, 0, 1, 0, 1])).unwrap());
        assert!(matches!(
            hessian_regularity(&d, &qvec(&[0; 6])),
            Err(AnalysisError::ZeroAtTestPoint(_))
        ));
        let half = frac(1, 2);
        assert!(hessian_regularity(&d, &[half.clone(), q(0), q(0), half.clone(), q(0), half]).unwrap());
    }

    #[test]
    fn classify_symmetric_determinant() {
        let r = add_torus(&sym2(&crate::reps::sl(3).unwrap()).unwrap(), 1).unwrap();
        let f = InvariantPolynomial::determinant(3, MatrixLayout::Symmetric);
        let report = classify(&r, &[f], None, &AnalysisOptions::default()).unwrap();
        assert!(report.prehomogeneous);
        assert_eq!(report.character_dim, 1);
        assert!(report.qd1);
        assert_eq!(report.regular, Some(true));
        assert_eq!(report.algebra_dim - report.isotropy_dim, report.space_dim);
        assert!(report.character_dim_stable);
        assert_eq!(report.independent_invariants, 1);
        assert_eq!(report.invariant_checks[0].points_checked, 10);
    }
}
