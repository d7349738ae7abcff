//! Every irreducible and non-irreducible space with a one-dimensional
//! quotient, plus the spaces that fail to be, as constructible entries with
//! expected flags, and the pipeline that checks them.

use std::time::Instant;

use serde::Serialize;

use crate::analyzer::{classify, AnalysisError, AnalysisOptions, AnalysisReport, InvariantCheck, PointSource};
use crate::grading::{compute_grading, irreducible_components, is_commutative_parabolic, GradingError, WeightedDiagram};
use crate::invariants::{matrix_coords, InvariantPolynomial, MatrixLayout};
use crate::linalg::{q, unit_vector, Rational, RationalMatrix};
use crate::reps::{
    add_torus, alt2, direct_sum_shared, dual, e6_rep, g2_rep, invariant_symmetric_forms, sl, so, sp, spin_rep,
    spin_vector_rep, sym2, symplectic_form, tensor, MatrixRep, RepError,
};
use crate::roots::CartanType;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown entry `{0}`")]
    UnknownEntry(String),
    #[error("{entry}: {message}")]
    ParameterOutOfRange { entry: String, message: String },
    #[error(transparent)]
    Construction(#[from] RepError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Table2,
    Table3,
    Negative,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Table2 => "table2",
            Group::Table3 => "table3",
            Group::Negative => "negatives",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub qd1: bool,
    pub regular: Option<bool>,
    pub character_dim: usize,
    pub diagram: Option<String>,
    pub commutative_parabolic: Option<bool>,
}

/// A concrete space ready for analysis.
pub struct Instance {
    pub rep: MatrixRep,
    pub invariants: Vec<InvariantPolynomial>,
    pub hint: Option<Vec<Rational>>,
    pub diagram: Option<WeightedDiagram>,
    pub expected: Expected,
    pub realization: String,
}

type Params = [usize];

/// Named parameter values in declaration order; serialized as a JSON object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Parameters(pub Vec<(String, usize)>);

impl Serialize for Parameters {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

pub struct CatalogEntry {
    pub id: &'static str,
    pub group: Group,
    pub title: &'static str,
    pub params: &'static [&'static str],
    /// The two smallest admissible choices (or the single fixed one).
    pub defaults: &'static [&'static [usize]],
    /// Rank column of the tables, stored but not checked.
    pub mf_rank: Option<&'static str>,
    check: fn(&Params) -> Result<(), String>,
    build: fn(&Params) -> Result<Instance, CatalogError>,
}

impl CatalogEntry {
    pub fn validate(&self, params: &Params) -> Result<(), CatalogError> {
        let out_of_range = |message: String| CatalogError::ParameterOutOfRange {
            entry: self.id.to_string(),
            message,
        };
        if params.len() != self.params.len() {
            return Err(out_of_range(format!(
                "expected parameters [{}], got {} values",
                self.params.join(", "),
                params.len()
            )));
        }
        (self.check)(params).map_err(out_of_range)
    }

    pub fn instantiate(&self, params: &Params) -> Result<Instance, CatalogError> {
        self.validate(params)?;
        (self.build)(params)
    }

    /// Positional parameters from `name=value` pairs. With no pairs the
    /// first default instance is used.
    pub fn resolve_params(&self, named: &[(String, usize)]) -> Result<Vec<usize>, CatalogError> {
        if named.is_empty() {
            return Ok(self.defaults.first().map_or_else(Vec::new, |d| d.to_vec()));
        }
        let out_of_range = |message: String| CatalogError::ParameterOutOfRange {
            entry: self.id.to_string(),
            message,
        };
        if let Some((bad, _)) = named.iter().find(|(k, _)| !self.params.contains(&k.as_str())) {
            return Err(out_of_range(format!("unknown parameter `{bad}`")));
        }
        self.params
            .iter()
            .map(|name| {
                named
                    .iter()
                    .rev()
                    .find(|(k, _)| k == name)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| out_of_range(format!("missing parameter `{name}`")))
            })
            .collect()
    }

    pub fn named_params(&self, params: &Params) -> Parameters {
        Parameters(self.params.iter().map(|s| s.to_string()).zip(params.iter().copied()).collect())
    }
}

fn require(cond: bool, message: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.to_string())
    }
}

fn no_check(_: &Params) -> Result<(), String> {
    Ok(())
}

fn diagram(ty: CartanType, rank: usize, circled: &[usize]) -> Result<Option<WeightedDiagram>, CatalogError> {
    Ok(Some(WeightedDiagram::from_labels(ty, rank, circled)?))
}

fn label_of(d: &Option<WeightedDiagram>) -> Option<String> {
    d.as_ref().map(WeightedDiagram::label)
}

fn qd1(regular: bool, d: &Option<WeightedDiagram>, commutative: Option<bool>) -> Expected {
    Expected {
        qd1: true,
        regular: Some(regular),
        character_dim: 1,
        diagram: label_of(d),
        commutative_parabolic: commutative,
    }
}

fn negative(character_dim: usize, d: &Option<WeightedDiagram>) -> Expected {
    Expected {
        qd1: false,
        regular: None,
        character_dim,
        diagram: label_of(d),
        commutative_parabolic: None,
    }
}

fn second(r: MatrixRep, n: usize) -> MatrixRep {
    r.relabel(&format!("sl({n})"), &format!("sl({n})'"))
}

fn concat(parts: &[Vec<Rational>]) -> Vec<Rational> {
    parts.iter().flatten().cloned().collect()
}

/// `n×m` matrix with ones at `(i, i)` for `i < min(n, m)`, row-major.
fn identity_block(n: usize, m: usize) -> Vec<Rational> {
    let mut x = RationalMatrix::zeros(n, m);
    for i in 0..n.min(m) {
        x.set(i, i, q(1));
    }
    x.into_entries()
}

/// `[[J_p, 0], [0, 0]]` in `AS(n)`, `n = 2p + 1`, as alternating coordinates.
fn padded_symplectic(n: usize) -> Vec<Rational> {
    let p = n / 2;
    let j = symplectic_form(p);
    let mut x = RationalMatrix::zeros(n, n);
    for a in 0..2 * p {
        for b in 0..2 * p {
            x.set(a, b, j.get(a, b).clone());
        }
    }
    matrix_coords(&x, &MatrixLayout::Alternating)
}

fn only_form(r: &MatrixRep) -> Result<RationalMatrix, CatalogError> {
    let mut forms = invariant_symmetric_forms(r);
    if forms.len() != 1 {
        return Err(RepError::Unsupported(format!("expected one invariant quadratic form, found {}", forms.len())).into());
    }
    Ok(forms.remove(0))
}

fn as_alt(n: usize) -> usize {
    n * (n - 1) / 2
}

// Table 2

fn t2_1(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = if n % 2 == 1 {
        diagram(CartanType::B, n.div_ceil(2), &[1])?
    } else if n == 4 {
        diagram(CartanType::A, 3, &[2])?
    } else {
        diagram(CartanType::D, n / 2 + 1, &[1])?
    };
    Ok(Instance {
        rep: add_torus(&so(n)?, 1)?,
        invariants: vec![InvariantPolynomial::quadratic_form(RationalMatrix::identity(n))],
        hint: None,
        expected: qd1(true, &d, Some(true)),
        diagram: d,
        realization: format!("so({n}) + scalars on Q^{n}"),
    })
}

fn t2_2(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = diagram(CartanType::C, n, &[n])?;
    Ok(Instance {
        rep: add_torus(&sym2(&sl(n)?)?, 1)?,
        invariants: vec![InvariantPolynomial::determinant(n, MatrixLayout::Symmetric)],
        hint: None,
        expected: qd1(true, &d, Some(true)),
        diagram: d,
        realization: format!("gl({n}) on Sym({n}), s -> Xs + sX^T"),
    })
}

fn t2_3(p: &Params) -> Result<Instance, CatalogError> {
    let n = 2 * p[0];
    let d = diagram(CartanType::D, n, &[n])?;
    Ok(Instance {
        rep: add_torus(&alt2(&sl(n)?)?, 1)?,
        invariants: vec![InvariantPolynomial::pfaffian(n)],
        hint: None,
        expected: qd1(true, &d, Some(true)),
        diagram: d,
        realization: format!("gl({n}) on AS({n}), x -> Xx + xX^T"),
    })
}

fn t2_4(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = diagram(CartanType::A, 2 * n - 1, &[n])?;
    Ok(Instance {
        rep: add_torus(&tensor(&sl(n)?, &second(dual(&sl(n)?), n))?, 1)?,
        invariants: vec![InvariantPolynomial::determinant(n, MatrixLayout::Full)],
        hint: None,
        expected: qd1(true, &d, Some(true)),
        diagram: d,
        realization: format!("sl({n}) x sl({n}) + scalars on M({n}), x -> g1 x g2^-1"),
    })
}

fn t2_5(_: &Params) -> Result<Instance, CatalogError> {
    let d = diagram(CartanType::E, 7, &[7])?;
    Ok(Instance {
        rep: add_torus(&e6_rep(), 1)?,
        invariants: vec![InvariantPolynomial::freudenthal_cubic()],
        hint: None,
        expected: qd1(true, &d, Some(true)),
        diagram: d,
        realization: "stabilizer of the cubic norm on 3x3 Hermitian octonion matrices + scalars".into(),
    })
}

fn t2_6(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = diagram(CartanType::C, n + 2, &[2])?;
    Ok(Instance {
        rep: add_torus(&tensor(&sp(n)?, &sl(2)?)?, 1)?,
        invariants: vec![InvariantPolynomial::pf_gram(n)],
        hint: None,
        expected: qd1(true, &d, Some(false)),
        diagram: d,
        realization: format!("sp({n}) x gl(2) on M({},2), X -> g X h^T", 2 * n),
    })
}

fn t2_7(_: &Params) -> Result<Instance, CatalogError> {
    let d = diagram(CartanType::C, 6, &[4])?;
    Ok(Instance {
        rep: add_torus(&tensor(&sl(4)?, &dual(&sp(2)?))?, 1)?,
        invariants: vec![InvariantPolynomial::determinant(4, MatrixLayout::Full)],
        hint: None,
        expected: qd1(true, &d, Some(false)),
        diagram: d,
        realization: "sl(4) x sp(2) + scalars on M(4), X -> g1 X g2^-1".into(),
    })
}

fn spin_quadratic(m: usize) -> Result<(MatrixRep, InvariantPolynomial), CatalogError> {
    let s = spin_rep(m)?;
    let form = only_form(&s)?;
    Ok((add_torus(&s, 1)?, InvariantPolynomial::quadratic_form(form)))
}

fn t2_8(_: &Params) -> Result<Instance, CatalogError> {
    let d = diagram(CartanType::F, 4, &[4])?;
    let (rep, f) = spin_quadratic(7)?;
    Ok(Instance {
        rep,
        invariants: vec![f],
        hint: None,
        expected: qd1(true, &d, Some(false)),
        diagram: d,
        realization: "spin(7) on its 8-dimensional spinors + scalars".into(),
    })
}

fn t2_9(_: &Params) -> Result<Instance, CatalogError> {
    let (rep, f) = spin_quadratic(9)?;
    Ok(Instance {
        rep,
        invariants: vec![f],
        hint: None,
        expected: qd1(true, &None, None),
        diagram: None,
        realization: "spin(9) on its 16-dimensional spinors + scalars".into(),
    })
}

fn t2_10(_: &Params) -> Result<Instance, CatalogError> {
    Ok(Instance {
        rep: add_torus(&g2_rep(), 1)?,
        invariants: vec![InvariantPolynomial::quadratic_form(RationalMatrix::identity(7))],
        hint: None,
        expected: qd1(true, &None, None),
        diagram: None,
        realization: "derivations of the octonions on the imaginary octonions + scalars".into(),
    })
}

// Table 3

fn t3_1(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = diagram(CartanType::A, n + 1, &[1, n + 1])?;
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[dual(&sl(n)?), sl(n)?])?, 2)?,
        invariants: vec![InvariantPolynomial::pair_dot(n)],
        hint: None,
        expected: qd1(true, &d, None),
        diagram: d,
        realization: format!("sl({n}) on M(1,{n}) + M({n},1), (u, v) -> (-uX, Xv), two scalars"),
    })
}

fn vector_plus_alt(n: usize, dual_first: bool) -> Result<MatrixRep, CatalogError> {
    let first = if dual_first { dual(&sl(n)?) } else { sl(n)? };
    Ok(add_torus(&direct_sum_shared(&[first, alt2(&sl(n)?)?])?, 2)?)
}

fn t3_2a(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = if n == 6 { diagram(CartanType::E, 7, &[1, 2])? } else { None };
    Ok(Instance {
        rep: vector_plus_alt(n, false)?,
        invariants: vec![InvariantPolynomial::pfaffian_at(n, n, n + as_alt(n))],
        hint: None,
        expected: qd1(false, &d, None),
        diagram: d,
        realization: format!("sl({n}) on Q^{n} + AS({n}), (v, x) -> (Xv, Xx + xX^T), two scalars"),
    })
}

fn t3_2b(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = match n {
        5 => diagram(CartanType::E, 6, &[1, 2])?,
        7 => diagram(CartanType::E, 8, &[1, 2])?,
        _ => None,
    };
    Ok(Instance {
        rep: vector_plus_alt(n, false)?,
        invariants: vec![InvariantPolynomial::bordered_pfaffian(n)],
        hint: Some(concat(&[unit_vector(n, n - 1), padded_symplectic(n)])),
        expected: qd1(true, &d, None),
        diagram: d,
        realization: format!("sl({n}) on Q^{n} + AS({n}), (v, x) -> (Xv, Xx + xX^T), two scalars"),
    })
}

fn t3_3(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = diagram(CartanType::D, n + 1, &[1, n + 1])?;
    Ok(Instance {
        rep: vector_plus_alt(n, true)?,
        invariants: vec![InvariantPolynomial::pfaffian_at(n, n, n + as_alt(n))],
        hint: None,
        expected: qd1(false, &d, None),
        diagram: d,
        realization: format!("sl({n}) on M(1,{n}) + AS({n}), (v, x) -> (-vX, Xx + xX^T), two scalars"),
    })
}

/// `v ↦ g₁v`, `x ↦ g₁xg₂⁻¹` on `M_{n,1} ⊕ M_{n,m}`.
fn vector_plus_matrix(n: usize, m: usize) -> Result<MatrixRep, CatalogError> {
    let right = if n == m { second(dual(&sl(m)?), m) } else { dual(&sl(m)?) };
    Ok(add_torus(&direct_sum_shared(&[sl(n)?, tensor(&sl(n)?, &right)?])?, 2)?)
}

fn t3_4a(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = match n {
        3 => diagram(CartanType::D, 6, &[3, 5])?,
        4 => diagram(CartanType::E, 8, &[2, 5])?,
        _ => None,
    };
    Ok(Instance {
        rep: vector_plus_matrix(n, n)?,
        invariants: vec![InvariantPolynomial::determinant_at(n, MatrixLayout::Full, n, n + n * n)],
        hint: Some(concat(&[unit_vector(n, 0), identity_block(n, n)])),
        expected: qd1(false, &d, None),
        diagram: d,
        realization: format!("sl({n}) x sl({n}) on M({n},1) + M({n}), (v, x) -> (g1 v, g1 x g2^-1), two scalars"),
    })
}

fn t3_4b(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let m = n - 1;
    let d = match n {
        3 => diagram(CartanType::D, 5, &[2, 4])?,
        4 => diagram(CartanType::E, 7, &[2, 5])?,
        _ => None,
    };
    Ok(Instance {
        rep: vector_plus_matrix(n, m)?,
        invariants: vec![InvariantPolynomial::det_augmented(n)],
        hint: Some(concat(&[unit_vector(n, n - 1), identity_block(n, m)])),
        expected: qd1(true, &d, None),
        diagram: d,
        realization: format!("sl({n}) x sl({m}) on M({n},1) + M({n},{m}), (v, x) -> (g1 v, g1 x g2^-1), two scalars"),
    })
}

fn t3_5(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = diagram(CartanType::A, 2 * n, &[1, n + 1])?;
    let matrices = tensor(&sl(n)?, &second(dual(&sl(n)?), n))?;
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[dual(&sl(n)?), matrices])?, 2)?,
        invariants: vec![InvariantPolynomial::determinant_at(n, MatrixLayout::Full, n, n + n * n)],
        hint: Some(concat(&[unit_vector(n, 0), identity_block(n, n)])),
        expected: qd1(false, &d, None),
        diagram: d,
        realization: format!("sl({n}) x sl({n}) on M(1,{n}) + M({n}), (v, x) -> (v g1^-1, g1 x g2^-1), two scalars"),
    })
}

fn t3_6(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = diagram(CartanType::C, n + 3, &[1, 3])?;
    // x = [e₁, e_{n+1}] as a 2n×2 matrix
    let mut x = RationalMatrix::zeros(2 * n, 2);
    x.set(0, 0, q(1));
    x.set(n, 1, q(1));
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[sl(2)?, tensor(&sp(n)?, &sl(2)?)?])?, 2)?,
        invariants: vec![InvariantPolynomial::pf_gram_at(n, 2, 2 + 4 * n)],
        hint: Some(concat(&[unit_vector(2, 0), x.into_entries()])),
        expected: qd1(false, &d, None),
        diagram: d,
        realization: format!("gl(2) x sp({n}) on Q^2 + M({},2), (v, X) -> (hv, gXh^T), two scalars", 2 * n),
    })
}

fn t3_7(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let d = diagram(CartanType::A, n + 3, &[2, 4])?;
    let first = tensor(&sl(2)?.relabel("sl(2)", "sl(2)'"), &dual(&sl(2)?))?;
    let second_part = tensor(&sl(2)?, &dual(&sl(n)?))?;
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[first, second_part])?, 2)?,
        invariants: vec![InvariantPolynomial::determinant_at(2, MatrixLayout::Full, 0, 4 + 2 * n)],
        hint: None,
        expected: qd1(false, &d, None),
        diagram: d,
        realization: format!("sl(2) x sl(2) x sl({n}) on M(2) + M(2,{n}), (u, v) -> (g1 u g2^-1, g2 v g3^-1), two scalars"),
    })
}

fn t3_8(p: &Params) -> Result<Instance, CatalogError> {
    let (n, m) = (p[0], p[1]);
    let d = diagram(CartanType::C, n + m + 2, &[n, n + 2])?;
    let first = tensor(&sl(n)?, &sl(2)?)?;
    let second_part = tensor(&sp(m)?, &sl(2)?)?;
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[first, second_part])?, 2)?,
        invariants: vec![InvariantPolynomial::pf_gram_at(m, 2 * n, 2 * n + 4 * m)],
        hint: None,
        expected: qd1(false, &d, None),
        diagram: d,
        realization: format!(
            "sl({n}) x sl(2) x sp({m}) on M({n},2) + M({},2), (u, v) -> (g1 u g2^T, g3 v g2^T), two scalars",
            2 * m
        ),
    })
}

fn t3_9(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[sp(n)?, sp(n)?])?, 2)?,
        invariants: vec![InvariantPolynomial::symplectic_pair(n)],
        hint: Some(concat(&[unit_vector(2 * n, 0), unit_vector(2 * n, n)])),
        expected: qd1(true, &None, None),
        diagram: None,
        realization: format!("sp({n}) on Q^{0} + Q^{0}, diagonally, two scalars", 2 * n),
    })
}

// negative cases

fn bare(rep: MatrixRep, realization: String) -> Instance {
    Instance {
        rep,
        invariants: Vec::new(),
        hint: None,
        expected: negative(0, &None),
        diagram: None,
        realization,
    }
}

fn neg_4_1_3(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    Ok(bare(add_torus(&sp(n)?, 1)?, format!("sp({n}) + scalars on Q^{}", 2 * n)))
}

fn neg_4_1_5(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    Ok(bare(add_torus(&alt2(&sl(n)?)?, 1)?, format!("gl({n}) on AS({n})")))
}

fn neg_4_1_6(p: &Params) -> Result<Instance, CatalogError> {
    let (n, m) = (p[0], p[1]);
    Ok(bare(
        add_torus(&tensor(&sl(n)?, &dual(&sl(m)?))?, 1)?,
        format!("sl({n}) x sl({m}) + scalars on M({n},{m})"),
    ))
}

fn neg_4_1_8(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    Ok(bare(
        add_torus(&tensor(&sp(n)?, &sl(3)?)?, 1)?,
        format!("sp({n}) x sl(3) + scalars on M({},3)", 2 * n),
    ))
}

fn neg_4_1_9(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    Ok(bare(
        add_torus(&tensor(&sl(n)?, &dual(&sp(2)?))?, 1)?,
        format!("sl({n}) x sp(2) + scalars on M({n},4)"),
    ))
}

fn neg_4_1_12(_: &Params) -> Result<Instance, CatalogError> {
    Ok(bare(add_torus(&spin_rep(10)?, 1)?, "spin(10) on a 16-dimensional half-spinor space + scalars".into()))
}

fn neg_4_2_1(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let mut inst = bare(
        add_torus(&direct_sum_shared(&[sl(n)?, sl(n)?])?, 2)?,
        format!("sl({n}) + diagonal scalars on M({n},2), X -> gX diag(a, b)"),
    );
    inst.hint = Some(concat(&[unit_vector(n, 0), unit_vector(n, 1)]));
    Ok(inst)
}

fn neg_4_2_4(p: &Params) -> Result<Instance, CatalogError> {
    let n = p[0];
    let mut inst = bare(
        vector_plus_alt(n, true)?,
        format!("sl({n}) on M(1,{n}) + AS({n}), two scalars"),
    );
    inst.hint = Some(concat(&[unit_vector(n, 0), padded_symplectic(n)]));
    Ok(inst)
}

fn neg_4_2_5(p: &Params) -> Result<Instance, CatalogError> {
    let (n, m) = (p[0], p[1]);
    let hint = if n < m {
        concat(&[unit_vector(n, 0), identity_block(n, m)])
    } else {
        concat(&[unit_vector(n, n - 1), identity_block(n, m)])
    };
    let mut inst = bare(
        vector_plus_matrix(n, m)?,
        format!("sl({n}) x sl({m}) on M({n},1) + M({n},{m}), two scalars"),
    );
    inst.hint = Some(hint);
    Ok(inst)
}

fn neg_4_2_8b(_: &Params) -> Result<Instance, CatalogError> {
    let first = tensor(&sl(2)?.relabel("sl(2)", "sl(2)'"), &dual(&sl(2)?))?;
    let second_part = tensor(&sl(2)?, &dual(&sl(2)?.relabel("sl(2)", "sl(2)''")))?;
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[first, second_part])?, 2)?,
        invariants: vec![
            InvariantPolynomial::determinant_at(2, MatrixLayout::Full, 0, 8),
            InvariantPolynomial::determinant_at(2, MatrixLayout::Full, 4, 8),
        ],
        hint: None,
        expected: negative(2, &None),
        diagram: None,
        realization: "sl(2)^3 on M(2) + M(2), (u, v) -> (g1 u g2^-1, g2 v g3^-1), two scalars".into(),
    })
}

fn neg_4_2_9b(p: &Params) -> Result<Instance, CatalogError> {
    let m = p[1];
    let first = tensor(&sl(2)?.relabel("sl(2)", "sl(2)'"), &sl(2)?)?;
    let second_part = tensor(&sp(m)?, &sl(2)?)?;
    let arity = 4 + 4 * m;
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[first, second_part])?, 2)?,
        invariants: vec![
            InvariantPolynomial::determinant_at(2, MatrixLayout::Full, 0, arity),
            InvariantPolynomial::pf_gram_at(m, 4, arity),
        ],
        hint: None,
        expected: negative(2, &None),
        diagram: None,
        realization: format!("sl(2) x sl(2) x sp({m}) on M(2) + M({},2), two scalars", 2 * m),
    })
}

fn neg_4_2_10(p: &Params) -> Result<Instance, CatalogError> {
    let (n, m) = (p[0], p[1]);
    let first = tensor(&sp(n)?.relabel(&format!("sp({n})"), &format!("sp({n})'")), &sl(2)?)?;
    let second_part = tensor(&sp(m)?, &sl(2)?)?;
    let arity = 4 * n + 4 * m;
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[first, second_part])?, 2)?,
        invariants: vec![InvariantPolynomial::pf_gram_at(n, 0, arity), InvariantPolynomial::pf_gram_at(m, 4 * n, arity)],
        hint: None,
        expected: negative(2, &None),
        diagram: None,
        realization: format!("sp({n}) x sl(2) x sp({m}) on M({},2) + M({},2), two scalars", 2 * n, 2 * m),
    })
}

fn neg_4_2_12(_: &Params) -> Result<Instance, CatalogError> {
    let half = spin_rep(8)?;
    let vector = spin_vector_rep(8)?;
    let (s1, s2) = (only_form(&half)?, only_form(&vector)?);
    let d = diagram(CartanType::E, 6, &[1, 6])?;
    Ok(Instance {
        rep: add_torus(&direct_sum_shared(&[half, vector])?, 2)?,
        invariants: vec![
            InvariantPolynomial::quadratic_form_at(s1, 0, 16),
            InvariantPolynomial::quadratic_form_at(s2, 8, 16),
        ],
        hint: None,
        expected: negative(2, &d),
        diagram: d,
        realization: "spin(8) on half-spinors + vectors, two scalars".into(),
    })
}

fn even(n: usize) -> bool {
    n.is_multiple_of(2)
}

static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        id: "T2.1",
        group: Group::Table2,
        title: "SO(n) x C* on C^n",
        params: &["n"],
        defaults: &[&[3], &[4]],
        mf_rank: Some("2"),
        check: |p| require(p[0] >= 3, "n >= 3"),
        build: t2_1,
    },
    CatalogEntry {
        id: "T2.2",
        group: Group::Table2,
        title: "S^2(SL(n)) x C*",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: Some("n"),
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: t2_2,
    },
    CatalogEntry {
        id: "T2.3",
        group: Group::Table2,
        title: "Lambda^2(SL(2p)) x C*",
        params: &["p"],
        defaults: &[&[2], &[3]],
        mf_rank: Some("p"),
        check: |p| require(p[0] >= 2, "p >= 2"),
        build: t2_3,
    },
    CatalogEntry {
        id: "T2.4",
        group: Group::Table2,
        title: "(SL(n)* x SL(n)) x C*",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: Some("n"),
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: t2_4,
    },
    CatalogEntry {
        id: "T2.5",
        group: Group::Table2,
        title: "E6 x C* on C^27",
        params: &[],
        defaults: &[&[]],
        mf_rank: Some("3"),
        check: no_check,
        build: t2_5,
    },
    CatalogEntry {
        id: "T2.6",
        group: Group::Table2,
        title: "(SL(2) x Sp(n)) x C*",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: Some("3"),
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: t2_6,
    },
    CatalogEntry {
        id: "T2.7",
        group: Group::Table2,
        title: "SL(4) x Sp(2) x C*",
        params: &[],
        defaults: &[&[]],
        mf_rank: Some("6"),
        check: no_check,
        build: t2_7,
    },
    CatalogEntry {
        id: "T2.8",
        group: Group::Table2,
        title: "Spin(7) x C*",
        params: &[],
        defaults: &[&[]],
        mf_rank: Some("2"),
        check: no_check,
        build: t2_8,
    },
    CatalogEntry {
        id: "T2.9",
        group: Group::Table2,
        title: "Spin(9) x C*",
        params: &[],
        defaults: &[&[]],
        mf_rank: Some("3"),
        check: no_check,
        build: t2_9,
    },
    CatalogEntry {
        id: "T2.10",
        group: Group::Table2,
        title: "G2 x C* on C^7",
        params: &[],
        defaults: &[&[]],
        mf_rank: Some("2"),
        check: no_check,
        build: t2_10,
    },
    CatalogEntry {
        id: "T3.1",
        group: Group::Table3,
        title: "(SL(n)* + SL(n)) x (C*)^2",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: Some("3"),
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: t3_1,
    },
    CatalogEntry {
        id: "T3.2a",
        group: Group::Table3,
        title: "(SL(n) + Lambda^2(SL(n))) x (C*)^2, n even",
        params: &["n"],
        defaults: &[&[4], &[6]],
        mf_rank: Some("n"),
        check: |p| require(p[0] >= 4 && even(p[0]), "n >= 4 and even"),
        build: t3_2a,
    },
    CatalogEntry {
        id: "T3.2b",
        group: Group::Table3,
        title: "(SL(n) + Lambda^2(SL(n))) x (C*)^2, n odd",
        params: &["n"],
        defaults: &[&[5], &[7]],
        mf_rank: Some("n"),
        check: |p| require(p[0] >= 5 && !even(p[0]), "n >= 5 and odd"),
        build: t3_2b,
    },
    CatalogEntry {
        id: "T3.3",
        group: Group::Table3,
        title: "(SL(n)* + Lambda^2(SL(n))) x (C*)^2, n even",
        params: &["n"],
        defaults: &[&[4], &[6]],
        mf_rank: Some("n"),
        check: |p| require(p[0] >= 4 && even(p[0]), "n >= 4 and even"),
        build: t3_3,
    },
    CatalogEntry {
        id: "T3.4a",
        group: Group::Table3,
        title: "(SL(n) + SL(n) x SL(n)) x (C*)^2",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: None,
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: t3_4a,
    },
    CatalogEntry {
        id: "T3.4b",
        group: Group::Table3,
        title: "(SL(n) + SL(n) x SL(n-1)) x (C*)^2",
        params: &["n"],
        defaults: &[&[3], &[4]],
        mf_rank: None,
        check: |p| require(p[0] >= 3, "n >= 3"),
        build: t3_4b,
    },
    CatalogEntry {
        id: "T3.5",
        group: Group::Table3,
        title: "(SL(n)* + SL(n) x SL(n)) x (C*)^2",
        params: &["n"],
        defaults: &[&[3], &[4]],
        mf_rank: Some("2n"),
        check: |p| require(p[0] >= 3, "n >= 3"),
        build: t3_5,
    },
    CatalogEntry {
        id: "T3.6",
        group: Group::Table3,
        title: "(SL(2) + SL(2) x Sp(n)) x (C*)^2",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: Some("3"),
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: t3_6,
    },
    CatalogEntry {
        id: "T3.7",
        group: Group::Table3,
        title: "(SL(2) x SL(2) + SL(2) x SL(n)) x (C*)^2",
        params: &["n"],
        defaults: &[&[3], &[4]],
        mf_rank: Some("5"),
        check: |p| require(p[0] >= 3, "n >= 3"),
        build: t3_7,
    },
    CatalogEntry {
        id: "T3.8",
        group: Group::Table3,
        title: "(SL(n) x SL(2) + SL(2) x Sp(m)) x (C*)^2",
        params: &["n", "m"],
        defaults: &[&[3, 2], &[3, 3]],
        mf_rank: None,
        check: |p| require(p[0] >= 3 && p[1] >= 2, "n >= 3 and m >= 2"),
        build: t3_8,
    },
    CatalogEntry {
        id: "T3.9",
        group: Group::Table3,
        title: "(Sp(n) + Sp(n)) x (C*)^2",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: Some("4"),
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: t3_9,
    },
    CatalogEntry {
        id: "NEG-4.1.3",
        group: Group::Negative,
        title: "Sp(n) x C* on C^2n",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: None,
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: neg_4_1_3,
    },
    CatalogEntry {
        id: "NEG-4.1.5",
        group: Group::Negative,
        title: "Lambda^2(SL(n)) x C*, n odd",
        params: &["n"],
        defaults: &[&[5], &[7]],
        mf_rank: None,
        check: |p| require(p[0] >= 3 && !even(p[0]), "n >= 3 and odd"),
        build: neg_4_1_5,
    },
    CatalogEntry {
        id: "NEG-4.1.6",
        group: Group::Negative,
        title: "(SL(n) x SL(m)) x C*, n != m",
        params: &["n", "m"],
        defaults: &[&[2, 3], &[3, 2]],
        mf_rank: None,
        check: |p| require(p[0] >= 2 && p[1] >= 2 && p[0] != p[1], "n, m >= 2 and n != m"),
        build: neg_4_1_6,
    },
    CatalogEntry {
        id: "NEG-4.1.8",
        group: Group::Negative,
        title: "(SL(3) x Sp(n)) x C*",
        params: &["n"],
        defaults: &[&[2], &[3]],
        mf_rank: None,
        check: |p| require(p[0] >= 2, "n >= 2"),
        build: neg_4_1_8,
    },
    CatalogEntry {
        id: "NEG-4.1.9",
        group: Group::Negative,
        title: "(SL(n) x Sp(2)) x C*, n > 4",
        params: &["n"],
        defaults: &[&[5], &[6]],
        mf_rank: None,
        check: |p| require(p[0] >= 5, "n >= 5"),
        build: neg_4_1_9,
    },
    CatalogEntry {
        id: "NEG-4.1.12",
        group: Group::Negative,
        title: "Spin(10) x C* on C^16",
        params: &[],
        defaults: &[&[]],
        mf_rank: None,
        check: no_check,
        build: neg_4_1_12,
    },
    CatalogEntry {
        id: "NEG-4.2.1",
        group: Group::Negative,
        title: "(SL(n) + SL(n)) x (C*)^2 on M(n,2), n > 2",
        params: &["n"],
        defaults: &[&[3], &[4]],
        mf_rank: None,
        check: |p| require(p[0] >= 3, "n >= 3"),
        build: neg_4_2_1,
    },
    CatalogEntry {
        id: "NEG-4.2.4",
        group: Group::Negative,
        title: "(SL(n)* + Lambda^2(SL(n))) x (C*)^2, n odd",
        params: &["n"],
        defaults: &[&[5], &[7]],
        mf_rank: None,
        check: |p| require(p[0] >= 5 && !even(p[0]), "n >= 5 and odd"),
        build: neg_4_2_4,
    },
    CatalogEntry {
        id: "NEG-4.2.5",
        group: Group::Negative,
        title: "(SL(n) + SL(n) x SL(m)) x (C*)^2, n < m or n > m + 1",
        params: &["n", "m"],
        defaults: &[&[2, 3], &[3, 4], &[4, 2], &[5, 2]],
        mf_rank: None,
        check: |p| require(p[0] >= 2 && p[1] >= 2 && (p[0] < p[1] || p[0] > p[1] + 1), "n, m >= 2 with n < m or n > m + 1"),
        build: neg_4_2_5,
    },
    CatalogEntry {
        id: "NEG-4.2.8b",
        group: Group::Negative,
        title: "(SL(2) x SL(2) + SL(2) x SL(2)) x (C*)^2",
        params: &["n", "m"],
        defaults: &[&[2, 2]],
        mf_rank: None,
        check: |p| require(p[0] == 2 && p[1] == 2, "n = m = 2"),
        build: neg_4_2_8b,
    },
    CatalogEntry {
        id: "NEG-4.2.9b",
        group: Group::Negative,
        title: "(SL(2) x SL(2) + SL(2) x Sp(m)) x (C*)^2",
        params: &["n", "m"],
        defaults: &[&[2, 2], &[2, 3]],
        mf_rank: None,
        check: |p| require(p[0] == 2 && p[1] >= 2, "n = 2 and m >= 2"),
        build: neg_4_2_9b,
    },
    CatalogEntry {
        id: "NEG-4.2.10",
        group: Group::Negative,
        title: "(Sp(n) x SL(2) + SL(2) x Sp(m)) x (C*)^2",
        params: &["n", "m"],
        defaults: &[&[2, 2], &[2, 3]],
        mf_rank: None,
        check: |p| require(p[0] >= 2 && p[1] >= 2, "n, m >= 2"),
        build: neg_4_2_10,
    },
    CatalogEntry {
        id: "NEG-4.2.12",
        group: Group::Negative,
        title: "(Spin(8) + SO(8)) x (C*)^2",
        params: &[],
        defaults: &[&[]],
        mf_rank: None,
        check: no_check,
        build: neg_4_2_12,
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn find_entry(id: &str) -> Result<&'static CatalogEntry, CatalogError> {
    CATALOG
        .iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| CatalogError::UnknownEntry(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramLink {
    pub label: String,
    pub component_dims: Vec<usize>,
    pub summand_dims: Vec<usize>,
    pub commutative_parabolic: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub entry: String,
    pub group: Group,
    pub parameters: Parameters,
    pub seed: u64,
    pub status: Status,
    pub realization: String,
    pub algebra_dim: usize,
    pub space_dim: usize,
    pub isotropy_dim: Option<usize>,
    pub isotropy_closed: Option<bool>,
    pub character_dim: Option<usize>,
    pub character_dim_stable: Option<bool>,
    pub qd1: Option<bool>,
    pub regular: Option<bool>,
    pub generic_point: Option<PointSource>,
    pub invariants: Vec<InvariantCheck>,
    pub diagram: Option<DiagramLink>,
    pub mf_rank: Option<String>,
    pub expected: Expected,
    pub diff: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub max_retries: usize,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            max_retries: crate::analyzer::DEFAULT_MAX_RETRIES,
            timings: false,
        }
    }
}

/// FNV-1a over the entry id, its parameters and the user seed, so that each
/// instance draws from its own stream regardless of scheduling.
pub fn instance_seed(id: &str, params: &Params, seed: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |bytes: &[u8]| {
        for b in bytes {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    feed(id.as_bytes());
    for p in params {
        feed(&(*p as u64).to_le_bytes());
    }
    feed(&seed.to_le_bytes());
    h
}

fn diagram_link(inst: &Instance) -> Option<DiagramLink> {
    let d = inst.diagram.as_ref()?;
    let grading = compute_grading(d);
    let mut component_dims: Vec<usize> = irreducible_components(&grading).iter().map(|c| c.dimension).collect();
    component_dims.sort_unstable();
    let mut summand_dims = inst.rep.blocks().to_vec();
    summand_dims.sort_unstable();
    Some(DiagramLink {
        label: d.label(),
        component_dims,
        summand_dims,
        commutative_parabolic: is_commutative_parabolic(&grading).ok(),
    })
}

fn compare(expected: &Expected, inst: &Instance, a: &AnalysisReport, link: &Option<DiagramLink>) -> Vec<String> {
    let mut diff = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            diff.push(what);
        }
    };
    check(
        a.character_dim == expected.character_dim,
        format!("character_dim: expected {}, observed {}", expected.character_dim, a.character_dim),
    );
    check(a.qd1 == expected.qd1, format!("qd1: expected {}, observed {}", expected.qd1, a.qd1));
    if expected.regular.is_some() {
        check(
            a.regular == expected.regular,
            format!("regular: expected {:?}, observed {:?}", expected.regular, a.regular),
        );
    }
    check(
        a.algebra_dim - a.isotropy_dim == a.space_dim,
        format!("dimension identity: {} - {} != {}", a.algebra_dim, a.isotropy_dim, a.space_dim),
    );
    check(a.isotropy_closed, "isotropy subalgebra is not bracket closed".into());
    check(a.character_dim_stable, "character_dim changes between generic points".into());
    for c in &a.invariant_checks {
        check(c.verified, format!("invariant `{}` not verified", c.name));
        check(
            c.points_checked >= 10,
            format!("invariant `{}` checked at {} points only", c.name, c.points_checked),
        );
    }
    check(
        a.independent_invariants == inst.invariants.len() && a.independent_invariants <= a.character_dim,
        format!(
            "independent invariants: {} of {} declared, character_dim {}",
            a.independent_invariants,
            inst.invariants.len(),
            a.character_dim
        ),
    );
    if let Some(false) = a.hessian_dichotomy {
        check(false, "Hessian determinant vanishes at some generic points only".into());
    }
    if let Some(link) = link {
        check(
            link.component_dims == link.summand_dims,
            format!(
                "diagram {}: component dims {:?} vs summand dims {:?}",
                link.label, link.component_dims, link.summand_dims
            ),
        );
        if expected.commutative_parabolic.is_some() {
            check(
                link.commutative_parabolic == expected.commutative_parabolic,
                format!(
                    "commutative parabolic: expected {:?}, observed {:?}",
                    expected.commutative_parabolic, link.commutative_parabolic
                ),
            );
        }
    }
    diff
}

/// Builds, analyzes and compares one instance.
pub fn run(entry_id: &str, params: &Params, options: &RunOptions) -> Result<VerificationReport, CatalogError> {
    let entry = find_entry(entry_id)?;
    let start = options.timings.then(Instant::now);
    let inst = entry.instantiate(params)?;
    let seed = instance_seed(entry.id, params, options.seed);
    let analysis_options = AnalysisOptions {
        seed,
        max_retries: options.max_retries,
        ..AnalysisOptions::default()
    };
    let link = diagram_link(&inst);
    let mut report = VerificationReport {
        entry: entry.id.to_string(),
        group: entry.group,
        parameters: entry.named_params(params),
        seed: options.seed,
        status: Status::Inconclusive,
        realization: inst.realization.clone(),
        algebra_dim: inst.rep.algebra_dim(),
        space_dim: inst.rep.space_dim(),
        isotropy_dim: None,
        isotropy_closed: None,
        character_dim: None,
        character_dim_stable: None,
        qd1: None,
        regular: None,
        generic_point: None,
        invariants: Vec::new(),
        diagram: link.clone(),
        mf_rank: entry.mf_rank.map(str::to_string),
        expected: inst.expected.clone(),
        diff: Vec::new(),
        notes: Vec::new(),
        elapsed_ms: None,
    };
    match classify(&inst.rep, &inst.invariants, inst.hint.as_deref(), &analysis_options) {
        Ok(a) => {
            report.diff = compare(&inst.expected, &inst, &a, &link);
            report.status = if report.diff.is_empty() { Status::Pass } else { Status::Fail };
            report.isotropy_dim = Some(a.isotropy_dim);
            report.isotropy_closed = Some(a.isotropy_closed);
            report.character_dim = Some(a.character_dim);
            report.character_dim_stable = Some(a.character_dim_stable);
            report.qd1 = Some(a.qd1);
            report.regular = a.regular;
            report.generic_point = Some(a.generic_point.source);
            report.invariants = a.invariant_checks;
            report.notes = a.notes;
        }
        Err(e @ AnalysisError::NotPrehomogeneous { .. }) => {
            report.notes.push(format!("{e}; absence of a generic point is not proven"));
        }
        Err(e) => {
            report.status = Status::Fail;
            report.diff.push(e.to_string());
        }
    }
    report.elapsed_ms = start.map(|t| t.elapsed().as_millis() as u64);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    Table2,
    Table3,
    Negatives,
    All,
}

impl std::str::FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table2" => Ok(Filter::Table2),
            "table3" => Ok(Filter::Table3),
            "negatives" => Ok(Filter::Negatives),
            "all" => Ok(Filter::All),
            _ => Err(format!("unknown filter `{s}`; use table2, table3, negatives or all")),
        }
    }
}

impl Filter {
    pub fn accepts(self, group: Group) -> bool {
        match self {
            Filter::All => true,
            Filter::Table2 => group == Group::Table2,
            Filter::Table3 => group == Group::Table3,
            Filter::Negatives => group == Group::Negative,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub filter: String,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

pub struct RunAll {
    pub summary: Summary,
    pub reports: Vec<VerificationReport>,
}

impl RunAll {
    /// One JSON object per report, then the summary object, newline separated.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.to_json());
            out.push('\n');
        }
        out.push_str(&self.summary.to_json());
        out.push('\n');
        out
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.inconclusive == 0
    }
}

/// Every default instance selected by the filter, in catalog order.
pub fn default_instances(filter: Filter) -> Vec<(&'static CatalogEntry, Vec<usize>)> {
    CATALOG
        .iter()
        .filter(|e| filter.accepts(e.group))
        .flat_map(|e| e.defaults.iter().map(move |p| (e, p.to_vec())))
        .collect()
}

fn run_instance(entry: &CatalogEntry, params: &[usize], options: &RunOptions) -> VerificationReport {
    run(entry.id, params, options).expect("default parameters are admissible")
}

/// Runs every default instance, on up to `jobs` threads when the `parallel`
/// feature is enabled. Report order never depends on scheduling.
pub fn run_all(filter: Filter, jobs: usize, options: &RunOptions) -> RunAll {
    let instances = default_instances(filter);
    let reports = run_instances(&instances, jobs, options);
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let summary = Summary {
        filter: format!("{filter:?}").to_lowercase(),
        seed: options.seed,
        total: reports.len(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        inconclusive: count(Status::Inconclusive),
    };
    RunAll { summary, reports }
}

#[cfg(feature = "parallel")]
fn run_instances(instances: &[(&CatalogEntry, Vec<usize>)], jobs: usize, options: &RunOptions) -> Vec<VerificationReport> {
    use rayon::prelude::*;
    if jobs <= 1 {
        return instances.iter().map(|(e, p)| run_instance(e, p, options)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| instances.par_iter().map(|(e, p)| run_instance(e, p, options)).collect())
}

#[cfg(not(feature = "parallel"))]
fn run_instances(instances: &[(&CatalogEntry, Vec<usize>)], _jobs: usize, options: &RunOptions) -> Vec<VerificationReport> {
    instances.iter().map(|(e, p)| run_instance(e, p, options)).collect()
}

fn yes_no(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn opt(v: Option<usize>) -> String {
    v.map_or("-".into(), |x| x.to_string())
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn params_text(&self) -> String {
        if self.parameters.0.is_empty() {
            return "-".into();
        }
        self.parameters
            .0
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// One row of the human-readable table.
    pub fn to_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        let mut line = format!(
            "{:<12} {:<8} {:<12} dim g={:<3} dim V={:<3} iso={:<3} char={:<2} qd1={:<3} regular={:<3} {}",
            self.entry,
            self.params_text(),
            status,
            self.algebra_dim,
            self.space_dim,
            opt(self.isotropy_dim),
            opt(self.character_dim),
            yes_no(self.qd1),
            yes_no(self.regular),
            self.diagram.as_ref().map_or("", |d| d.label.as_str()),
        );
        for d in &self.diff {
            line.push_str(&format!("\n    {d}"));
        }
        line.trim_end().to_string()
    }
}

pub const TEXT_HEADER: &str = "entry        params   status";

impl Summary {
    pub fn to_json(&self) -> String {
        serde_json::json!({ "summary": self }).to_string()
    }

    pub fn to_text(&self) -> String {
        format!(
            "{} instances: {} passed, {} failed, {} inconclusive (filter {}, seed {})",
            self.total, self.passed, self.failed, self.inconclusive, self.filter, self.seed
        )
    }
}
