//! Root systems of the simple types A–G, stored as integer data over the
//! simple roots.
//!
//! Numbering follows Bourbaki. For A–D the simple roots run left to right
//! with the multiple edge or the fork at the right end, so `B_n` has the short
//! root `α_n`, `C_n` the long root `α_n`, and `D_n` attaches `α_n` to
//! `α_{n-2}`. In `E_n` the root `α_2` hangs off `α_4`; in `F_4` the double
//! edge joins the long `α_2` to the short `α_3`; in `G_2` the root `α_1` is
//! short.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn letter(self) -> char {
        match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<CartanType> {
        Some(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("{ty}{rank} is not a simple root system type")]
    InvalidType { ty: CartanType, rank: usize },
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

/// A root is a vector of integer coefficients over the simple roots.
pub type Root = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    ty: CartanType,
    rank: usize,
    /// `cartan[i][j] = α_j(H_{α_i})`.
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    highest_root: Root,
}

fn valid(ty: CartanType, rank: usize) -> bool {
    match ty {
        CartanType::A => rank >= 1,
        CartanType::B => rank >= 2,
        CartanType::C => rank >= 2,
        CartanType::D => rank >= 4,
        CartanType::E => (6..=8).contains(&rank),
        CartanType::F => rank == 4,
        CartanType::G => rank == 2,
    }
}

/// Edges of the Dynkin graph as `(i, j)` pairs, 0-based.
fn graph_edges(ty: CartanType, rank: usize) -> Vec<(usize, usize)> {
    match ty {
        CartanType::D => {
            let mut e: Vec<_> = (0..rank - 2).map(|i| (i, i + 1)).collect();
            e.push((rank - 3, rank - 1));
            e
        }
        CartanType::E => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..rank - 1).map(|i| (i, i + 1)));
            e
        }
        _ => (0..rank - 1).map(|i| (i, i + 1)).collect(),
    }
}

fn cartan_matrix(ty: CartanType, rank: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in graph_edges(ty, rank) {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    let n = rank;
    match ty {
        // α_{n-1} long, α_n short
        CartanType::B => a[n - 1][n - 2] = -2,
        // α_{n-1} short, α_n long
        CartanType::C => a[n - 2][n - 1] = -2,
        // α_2 long, α_3 short
        CartanType::F => a[2][1] = -2,
        // α_1 short, α_2 long
        CartanType::G => a[0][1] = -3,
        _ => {}
    }
    a
}

impl RootSystem {
    pub fn new(ty: CartanType, rank: usize) -> Result<RootSystem, RootSystemError> {
        if !valid(ty, rank) {
            return Err(RootSystemError::InvalidType { ty, rank });
        }
        let cartan = cartan_matrix(ty, rank);
        let positive_roots = positive_roots(&cartan);
        let highest_root = positive_roots
            .iter()
            .max_by_key(|r| r.iter().sum::<i64>())
            .expect("nonempty root system")
            .clone();
        Ok(RootSystem {
            ty,
            rank,
            cartan,
            positive_roots,
            highest_root,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// All roots, positive ones first followed by their negatives.
    pub fn roots(&self) -> Vec<Root> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| r.iter().map(|c| -c).collect::<Root>()));
        all
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest_root
    }

    /// `dim 𝔤 = |Σ| + rank`.
    pub fn algebra_dim(&self) -> usize {
        2 * self.positive_roots.len() + self.rank
    }

    pub fn simple_root(&self, index: usize) -> Root {
        let mut r = vec![0; self.rank];
        r[index] = 1;
        r
    }

    /// `α(H_β)` for `α` given by coefficients and `β` the simple root at
    /// `beta_index`.
    pub fn pairing(&self, alpha: &[i64], beta_index: usize) -> i64 {
        alpha
            .iter()
            .zip(&self.cartan[beta_index])
            .map(|(a, c)| a * c)
            .sum()
    }

    /// Whether simple roots `i` and `j` are joined in the Dynkin diagram.
    pub fn connected(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// Number of edges joining simple roots `i` and `j`.
    pub fn edge_multiplicity(&self, i: usize, j: usize) -> i64 {
        if i == j {
            0
        } else {
            self.cartan[i][j] * self.cartan[j][i]
        }
    }

    /// Squared lengths of the simple roots, normalized so the shortest is 1.
    pub fn squared_lengths(&self) -> Vec<Rational> {
        let n = self.rank;
        let mut len: Vec<Option<Rational>> = vec![None; n];
        len[0] = Some(Rational::from_integer(1.into()));
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if self.connected(i, j) && len[j].is_none() {
                    // |α_j|² = |α_i|² · a_ij / a_ji
                    let li = len[i].clone().expect("visited");
                    let ratio = Rational::new(self.cartan[i][j].into(), self.cartan[j][i].into());
                    len[j] = Some(li * ratio);
                    queue.push_back(j);
                }
            }
        }
        let len: Vec<Rational> = len.into_iter().map(|l| l.expect("connected diagram")).collect();
        let min = len.iter().min().expect("rank ≥ 1").clone();
        len.into_iter().map(|l| l / &min).collect()
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        if coeffs.iter().all(|&c| c >= 0) {
            self.positive_roots.iter().any(|r| r.as_slice() == coeffs)
        } else if coeffs.iter().all(|&c| c <= 0) {
            let neg: Root = coeffs.iter().map(|c| -c).collect();
            self.positive_roots.contains(&neg)
        } else {
            false
        }
    }

    /// Classical count of positive roots, independent of the generation
    /// procedure.
    pub fn expected_positive_count(ty: CartanType, rank: usize) -> usize {
        let n = rank;
        match ty {
            CartanType::A => n * (n + 1) / 2,
            CartanType::B | CartanType::C => n * n,
            CartanType::D => n * (n - 1),
            CartanType::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            CartanType::F => 24,
            CartanType::G => 6,
        }
    }
}

/// Generates the positive roots level by level with root strings: for a root
/// `β` and simple `α_i`, `β + α_i` is a root iff `p − β(H_i) > 0`, where `p`
/// is the largest integer with `β − p·α_i` a root.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let n = cartan.len();
    let pair = |r: &Root, i: usize| -> i64 { r.iter().zip(&cartan[i]).map(|(a, c)| a * c).sum() };
    let mut known: HashMap<Root, ()> = HashMap::new();
    let mut levels: Vec<Vec<Root>> = vec![(0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect()];
    for r in &levels[0] {
        known.insert(r.clone(), ());
    }
    loop {
        let mut next: Vec<Root> = Vec::new();
        for beta in levels.last().expect("at least one level") {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair(beta, i) > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), ());
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}


#[cfg(test)]
mod tests {
    use super::tests_support::all_types;
    use super::*;

    /// Independent oracle: close the simple roots under simple reflections
    /// `s_i(γ) = γ − γ(H_i)·α_i`.
    fn reflection_closure(rs: &RootSystem) -> usize {
        let n = rs.rank();
        let mut seen: std::collections::HashSet<Root> = std::collections::HashSet::new();
        let mut queue: VecDeque<Root> = (0..n).map(|i| rs.simple_root(i)).collect();
        while let Some(r) = queue.pop_front() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in 0..n {
                let mut s = r.clone();
                s[i] -= rs.pairing(&r, i);
                if !seen.contains(&s) {
                    queue.push_back(s);
                }
            }
        }
        seen.len() / 2
    }

    #[test]
    fn small_examples() {
        assert_eq!(RootSystem::new(CartanType::A, 2).unwrap().positive_roots().len(), 3);
        assert_eq!(RootSystem::new(CartanType::C, 3).unwrap().positive_roots().len(), 9);
        assert_eq!(RootSystem::new(CartanType::G, 2).unwrap().positive_roots().len(), 6);
    }

    #[test]
    fn d3_is_rejected() {
        assert_eq!(
            RootSystem::new(CartanType::D, 3),
            Err(RootSystemError::InvalidType { ty: CartanType::D, rank: 3 })
        );
        assert!(RootSystem::new(CartanType::E, 5).is_err());
        assert!(RootSystem::new(CartanType::B, 1).is_err());
    }

    #[test]
    fn counts_match_reflection_closure_and_formula() {
        for (ty, n) in all_types() {
            let rs = RootSystem::new(ty, n).unwrap();
            let count = rs.positive_roots().len();
            assert_eq!(count, RootSystem::expected_positive_count(ty, n), "{}", rs.name());
            assert_eq!(count, reflection_closure(&rs), "{}", rs.name());
        }
    }

    #[test]
    fn cartan_entries_are_well_formed() {
        for (ty, n) in all_types() {
            let rs = RootSystem::new(ty, n).unwrap();
            for i in 0..n {
                assert_eq!(rs.cartan()[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!([0, -1, -2, -3].contains(&rs.cartan()[i][j]));
                    }
                }
            }
        }
    }

    #[test]
    fn highest_root_dominates() {
        for (ty, n) in all_types() {
            let rs = RootSystem::new(ty, n).unwrap();
            let h = rs.highest_root();
            for r in rs.positive_roots() {
                assert!(r.iter().zip(h).all(|(a, b)| a <= b), "{} {:?}", rs.name(), r);
            }
            assert!(h.iter().sum::<i64>() > 0);
        }
    }

    #[test]
    fn known_highest_roots() {
        let e8 = RootSystem::new(CartanType::E, 8).unwrap();
        assert_eq!(e8.highest_root(), &vec![2, 3, 4, 6, 5, 4, 3, 2]);
        let f4 = RootSystem::new(CartanType::F, 4).unwrap();
        assert_eq!(f4.highest_root(), &vec![2, 3, 4, 2]);
        let g2 = RootSystem::new(CartanType::G, 2).unwrap();
        assert_eq!(g2.highest_root(), &vec![3, 2]);
        let c4 = RootSystem::new(CartanType::C, 4).unwrap();
        assert_eq!(c4.highest_root(), &vec![2, 2, 2, 1]);
        let b4 = RootSystem::new(CartanType::B, 4).unwrap();
        assert_eq!(b4.highest_root(), &vec![1, 2, 2, 2]);
    }

    #[test]
    fn pairing_examples() {
        let a4 = RootSystem::new(CartanType::A, 4).unwrap();
        assert_eq!(a4.pairing(&a4.simple_root(1), 1), 2);
        assert_eq!(a4.pairing(&a4.simple_root(1), 2), -1);
        let c4 = RootSystem::new(CartanType::C, 4).unwrap();
        assert_eq!(c4.pairing(&c4.simple_root(3), 2), -2);
        assert_eq!(c4.pairing(&c4.simple_root(2), 3), -1);
    }

    #[test]
    fn lengths() {
        let b3 = RootSystem::new(CartanType::B, 3).unwrap();
        assert_eq!(b3.squared_lengths(), crate::linalg::qvec(&[2, 2, 1]));
        let g2 = RootSystem::new(CartanType::G, 2).unwrap();
        assert_eq!(g2.squared_lengths(), crate::linalg::qvec(&[1, 3]));
        let f4 = RootSystem::new(CartanType::F, 4).unwrap();
        assert_eq!(f4.squared_lengths(), crate::linalg::qvec(&[2, 2, 1, 1]));
    }
}
