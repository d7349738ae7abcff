use num_traits::{One, Zero};

use super::{zero, Rational};

/// Sparse vector as `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparsify(dense: &[Rational]) -> SparseVec {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Incremental row echelon form over the rationals, built one row at a time.
///
/// Pivot rows are stored sparsely with a leading 1. When combination tracking
/// is on, each pivot row also records which inserted vectors it is made of,
/// so a vector in the span can be written in terms of the inserted ones.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    width: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
    pivot_cols: Vec<usize>,
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
}

impl SparseEchelon {
    pub fn new(width: usize) -> Self {
        SparseEchelon {
            width,
            pivot_of_col: vec![None; width],
            rows: Vec::new(),
            pivot_cols: Vec::new(),
            combos: None,
            inserted: 0,
        }
    }

    /// Echelon builder that remembers how pivot rows combine inserted vectors.
    pub fn with_tracking(width: usize) -> Self {
        SparseEchelon {
            combos: Some(Vec::new()),
            ..Self::new(width)
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivot_cols.clone();
        p.sort_unstable();
        p
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `row` against the current pivots in place and returns the
    /// coefficients used, as a combination of inserted vectors (empty when
    /// tracking is off).
    fn reduce_dense(&self, row: &mut [Rational]) -> Vec<Rational> {
        let mut coeffs = match &self.combos {
            Some(_) => vec![zero(); self.inserted],
            None => Vec::new(),
        };
        for c in 0..self.width {
            if row[c].is_zero() {
                continue;
            }
            let Some(k) = self.pivot_of_col[c] else {
                continue;
            };
            let factor = std::mem::take(&mut row[c]);
            for (j, v) in self.rows[k].iter().skip(1) {
                row[*j] -= &factor * v;
            }
            if let Some(combos) = &self.combos {
                for (i, v) in &combos[k] {
                    coeffs[*i] += &factor * v;
                }
            }
        }
        coeffs
    }

    /// Inserts a dense row. Returns `true` if it was independent of the rows
    /// inserted so far.
    pub fn insert(&mut self, row: &[Rational]) -> bool {
        assert_eq!(row.len(), self.width, "row width mismatch");
        let mut work = row.to_vec();
        self.insert_owned(&mut work)
    }

    pub fn insert_sparse(&mut self, row: &[(usize, Rational)]) -> bool {
        let mut work = vec![zero(); self.width];
        for (i, v) in row {
            work[*i] += v;
        }
        self.insert_owned(&mut work)
    }

    fn insert_owned(&mut self, work: &mut [Rational]) -> bool {
        let coeffs = self.reduce_dense(work);
        let index = self.inserted;
        self.inserted += 1;
        let Some(lead) = work.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &work[lead];
        let pivot_row: SparseVec = work
            .iter()
            .enumerate()
            .skip(lead)
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v * &inv))
            .collect();
        if let Some(combos) = &mut self.combos {
            // new pivot = inv · (inserted[index] − Σ coeffs)
            let mut combo: SparseVec = coeffs
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, -(v * &inv)))
                .collect();
            combo.push((index, inv.clone()));
            combos.push(combo);
        }
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.pivot_cols.push(lead);
        self.rows.push(pivot_row);
        true
    }

    /// Whether `v` lies in the span of the inserted rows.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut work = v.to_vec();
        self.reduce_dense(&mut work);
        work.iter().all(Zero::is_zero)
    }

    /// Coefficients expressing `v` over the inserted vectors (in insertion
    /// order), or `None` if `v` is outside their span. Requires tracking.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert!(self.combos.is_some(), "coordinates require combination tracking");
        let mut work = v.to_vec();
        let coeffs = self.reduce_dense(&mut work);
        if work.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    /// Fully reduced pivot rows, ordered by pivot column.
    pub fn reduced_rows(&self) -> Vec<(usize, SparseVec)> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(self.pivot_cols[k]));
        let mut reduced: Vec<Option<SparseVec>> = vec![None; self.rows.len()];
        let mut work = vec![zero(); self.width];
        for &k in &order {
            for (j, v) in &self.rows[k] {
                work[*j] = v.clone();
            }
            let pc = self.pivot_cols[k];
            for c in pc + 1..self.width {
                if work[c].is_zero() {
                    continue;
                }
                if let Some(other) = self.pivot_of_col[c] {
                    let factor = std::mem::take(&mut work[c]);
                    let other_row = reduced[other].as_ref().expect("later pivots reduced first");
                    for (j, v) in other_row.iter().skip(1) {
                        work[*j] -= &factor * v;
                    }
                }
            }
            let row: SparseVec = work
                .iter_mut()
                .enumerate()
                .skip(pc)
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, std::mem::take(v)))
                .collect();
            reduced[k] = Some(row);
        }
        let mut out: Vec<(usize, SparseVec)> = reduced
            .into_iter()
            .enumerate()
            .map(|(k, r)| (self.pivot_cols[k], r.expect("all rows reduced")))
            .collect();
        out.sort_by_key(|(p, _)| *p);
        out
    }

    /// Basis of the orthogonal complement `{v : r·v = 0 for all inserted r}`,
    /// in the same reduced-echelon normal form as
    /// [`RationalMatrix::nullspace`](super::RationalMatrix::nullspace).
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let reduced = self.reduced_rows();
        let mut is_pivot = vec![false; self.width];
        for (p, _) in &reduced {
            is_pivot[*p] = true;
        }
        let mut index_of_free = vec![usize::MAX; self.width];
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for f in (0..self.width).filter(|&f| !is_pivot[f]) {
            index_of_free[f] = basis.len();
            let mut v = vec![zero(); self.width];
            v[f] = Rational::one();
            basis.push(v);
        }
        for (p, row) in &reduced {
            for (j, val) in row.iter().skip(1) {
                basis[index_of_free[*j]][*p] = -val.clone();
            }
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{qvec, RationalMatrix};

    #[test]
    fn tracks_rank_and_dependence() {
        let mut e = SparseEchelon::new(3);
        assert!(e.insert(&qvec(&[1, 2, 3])));
        assert!(!e.insert(&qvec(&[2, 4, 6])));
        assert!(e.insert(&qvec(&[0, 1, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&qvec(&[1, 3, 4])));
        assert!(!e.contains(&qvec(&[0, 0, 1])));
    }

    #[test]
    fn coordinates_reconstruct_vector() {
        let vs = [qvec(&[1, 1, 0, 0]), qvec(&[0, 1, 1, 0]), qvec(&[1, 2, 1, 0]), qvec(&[0, 0, 1, 1])];
        let mut e = SparseEchelon::with_tracking(4);
        for v in &vs {
            e.insert(v);
        }
        let target = qvec(&[2, 1, 2, 3]);
        let c = e.coordinates(&target).unwrap();
        let mut sum = vec![zero(); 4];
        for (ci, v) in c.iter().zip(&vs) {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += ci * x;
            }
        }
        assert_eq!(sum, target);
    }

    #[test]
    fn nullspace_matches_dense_route() {
        let m = RationalMatrix::from_i64(3, 5, &[1, 2, 0, -1, 3, 2, 4, 1, 0, 0, 3, 6, 1, -1, 3]);
        let mut e = SparseEchelon::new(5);
        for i in 0..3 {
            e.insert(m.row(i));
        }
        assert_eq!(e.nullspace(), m.nullspace());
    }
}
