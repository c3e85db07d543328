//! Exact sparse linear algebra over the Gaussian rationals.
//!
//! Everything downstream (cohomology quotients, ideal slices, pairings) is
//! phrased in terms of the three primitives here: reduced row echelon form,
//! deterministic linear solving, and subspaces in canonical RREF basis form.
//!
//! Determinism rules, fixed once for the whole crate: pivots are chosen
//! leftmost-first, free variables are set to zero, and quotient
//! representatives are picked greedily in basis order. Identical inputs give
//! byte-identical outputs regardless of thread count.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;

/// A sparse vector: index -> nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Remove explicitly stored zeros.
pub fn normalize_vec(v: &mut SparseVec) {
    v.retain(|_, s| !s.is_zero());
}

/// v += c * w
pub fn add_scaled(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&j, s) in w {
        let t = c.mul(s);
        match v.get_mut(&j) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    v.remove(&j);
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(j, t);
                }
            }
        }
    }
}

pub fn scale_vec(v: &mut SparseVec, c: &Scalar) {
    if c.is_zero() {
        v.clear();
        return;
    }
    for s in v.values_mut() {
        *s *= c;
    }
}

/// Sparse matrix acting on column vectors: `rows x cols`, stored row-wise
/// with no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<SparseVec>,
}

/// Below this column count row reduction runs on a dense scratch copy; the
/// result is the canonical RREF either way.
const DENSE_COLS: usize = 64;

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i].insert(i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<SparseVec>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.keys().all(|&j| j < cols)));
        SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if s.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, s);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zero(self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (&c, s) in row {
                t.data[c].insert(r, s.clone());
            }
        }
        t
    }

    /// Matrix-vector product (column vector convention).
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut y = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = Scalar::zero();
            for (&c, s) in row {
                if let Some(xc) = x.get(&c) {
                    acc += &s.mul(xc);
                }
            }
            if !acc.is_zero() {
                y.insert(r, acc);
            }
        }
        y
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        SparseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot column list.
    /// Idempotent; the row space is preserved exactly.
    pub fn rref(&self) -> (SparseMatrix, Vec<usize>) {
        if self.cols < DENSE_COLS {
            self.rref_dense()
        } else {
            self.rref_sparse()
        }
    }

    fn rref_sparse(&self) -> (SparseMatrix, Vec<usize>) {
        let mut rows: Vec<SparseVec> = self.data.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut done = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (done..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
                continue;
            };
            rows.swap(done, pr);
            let inv = rows[done][&col].inv();
            scale_vec(&mut rows[done], &inv);
            let pivot_row = rows[done].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != done {
                    if let Some(c) = row.get(&col).cloned() {
                        add_scaled(row, &(-&c), &pivot_row);
                    }
                }
            }
            pivots.push(col);
            done += 1;
            if done == rows.len() {
                break;
            }
        }
        rows.truncate(done);
        (SparseMatrix::from_rows(rows, self.cols), pivots)
    }

    fn rref_dense(&self) -> (SparseMatrix, Vec<usize>) {
        let mut m: Vec<Vec<Scalar>> = self
            .data
            .iter()
            .map(|row| {
                let mut dense = vec![Scalar::zero(); self.cols];
                for (&c, s) in row {
                    dense[c] = s.clone();
                }
                dense
            })
            .collect();
        let mut pivots = Vec::new();
        let mut done = 0usize;
        for col in 0..self.cols {
            let Some(pr) = (done..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(done, pr);
            let inv = m[done][col].inv();
            for e in m[done].iter_mut() {
                *e *= &inv;
            }
            for r in 0..m.len() {
                if r != done && !m[r][col].is_zero() {
                    let c = m[r][col].clone();
                    for j in 0..self.cols {
                        let t = (&c).mul(&m[done][j]);
                        m[r][j] -= &t;
                    }
                }
            }
            pivots.push(col);
            done += 1;
            if done == m.len() {
                break;
            }
        }
        let rows: Vec<SparseVec> = m
            .into_iter()
            .take(done)
            .map(|dense| {
                dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .collect()
            })
            .collect();
        (SparseMatrix::from_rows(rows, self.cols), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Solve `self * x = b`. Returns the solution with all free variables set
    /// to zero, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &SparseVec) -> Result<Option<SparseVec>> {
        if let Some((&j, _)) = b.iter().next_back() {
            if j >= self.rows {
                return Err(Error::DimensionMismatch(format!(
                    "rhs index {} out of {} rows",
                    j, self.rows
                )));
            }
        }
        // Augmented [A | b], reduce, read off.
        let mut aug = SparseMatrix::zero(self.rows, self.cols + 1);
        for (r, row) in self.data.iter().enumerate() {
            aug.data[r] = row.clone();
        }
        for (&r, s) in b {
            aug.data[r].insert(self.cols, s.clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = SparseVec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            if let Some(v) = red.data[i].get(&self.cols) {
                x.insert(pc, v.clone());
            }
        }
        Ok(Some(x))
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let (red, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(free, Scalar::one());
            for (i, &pc) in pivots.iter().enumerate() {
                if let Some(c) = red.data[i].get(&free) {
                    v.insert(pc, -c);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// A linear subspace of a fixed coordinate space, stored as an RREF basis.
/// The representation is unique for a given subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let id = SparseMatrix::identity(ambient);
        Subspace {
            ambient,
            basis: id.data,
        }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vectors: &[SparseVec]) -> Self {
        let m = SparseMatrix::from_rows(vectors.to_vec(), ambient);
        let (red, _) = m.rref();
        Subspace {
            ambient,
            basis: red.data,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Reduce `v` modulo the basis; the result is zero iff `v` lies in the
    /// subspace.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        for row in &self.basis {
            let &pivot = row.keys().next().expect("nonempty RREF row");
            if let Some(c) = w.get(&pivot).cloned() {
                add_scaled(&mut w, &(-&c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, &vs))
    }

    /// Zassenhaus intersection: reduce [[A A],[B 0]]; rows whose left block
    /// vanished span the intersection in the right block.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let mut rows: Vec<SparseVec> = Vec::new();
        for v in &self.basis {
            let mut row = v.clone();
            for (&j, s) in v {
                row.insert(n + j, s.clone());
            }
            rows.push(row);
        }
        for v in &other.basis {
            rows.push(v.clone());
        }
        let m = SparseMatrix::from_rows(rows, 2 * n);
        let (red, _) = m.rref();
        let mut basis = Vec::new();
        for row in &red.data {
            if row.keys().next().map_or(false, |&j| j >= n) {
                let shifted: SparseVec = row.iter().map(|(&j, s)| (j - n, s.clone())).collect();
                basis.push(shifted);
            }
        }
        Ok(Subspace::span(n, &basis))
    }

    /// Coset representatives for `self / sub`: vectors from this subspace's
    /// RREF basis, kept greedily when independent modulo `sub`. For the full
    /// ambient space this yields the lexicographically least standard basis
    /// vectors outside `sub`.
    pub fn quotient_reps(&self, sub: &Subspace) -> Result<Vec<SparseVec>> {
        self.check_ambient(sub)?;
        let mut reps = Vec::new();
        let mut seen = sub.clone();
        for v in &self.basis {
            if !seen.contains(v) {
                reps.push(v.clone());
                let mut vs = seen.basis.clone();
                vs.push(v.clone());
                seen = Subspace::span(self.ambient, &vs);
            }
        }
        Ok(reps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(entries: &[(usize, Scalar)]) -> SparseVec {
        entries.iter().cloned().collect()
    }

    fn e(i: usize) -> SparseVec {
        vec_of(&[(i, Scalar::one())])
    }

    #[test]
    fn rref_rank_one_complex() {
        // [[1, i], [-i, 1]]: second row is (-i) times the first.
        let mut m = SparseMatrix::zero(2, 2);
        m.set(0, 0, Scalar::one());
        m.set(0, 1, Scalar::i());
        m.set(1, 0, -Scalar::i());
        m.set(1, 1, Scalar::one());
        let (red, pivots) = m.rref();
        assert_eq!(pivots, vec![0]);
        assert_eq!(red.rows, 1);
        assert_eq!(red.get(0, 1), Scalar::i());
    }

    #[test]
    fn rref_zero_and_identity() {
        let z = SparseMatrix::zero(3, 4);
        let (red, pivots) = z.rref();
        assert!(red.is_zero());
        assert!(pivots.is_empty());

        let id = SparseMatrix::identity(3);
        let (red, pivots) = id.rref();
        assert_eq!(red, SparseMatrix::identity(3));
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn solve_free_variable_zeroed() {
        // [[1, 1]] x = [2] -> x = [2, 0]
        let mut m = SparseMatrix::zero(1, 2);
        m.set(0, 0, Scalar::one());
        m.set(0, 1, Scalar::one());
        let b = vec_of(&[(0, Scalar::from_int(2))]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(x, vec_of(&[(0, Scalar::from_int(2))]));
    }

    #[test]
    fn solve_inconsistent() {
        // [[1],[1]] x = [1,2] has no solution.
        let mut m = SparseMatrix::zero(2, 1);
        m.set(0, 0, Scalar::one());
        m.set(1, 0, Scalar::one());
        let b = vec_of(&[(0, Scalar::one()), (1, Scalar::from_int(2))]);
        assert!(m.solve(&b).unwrap().is_none());
    }

    #[test]
    fn solve_identity() {
        let m = SparseMatrix::identity(3);
        let b = vec_of(&[(0, Scalar::i()), (2, Scalar::from_ratio(1, 2))]);
        let x = m.solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn subspace_ops_basics() {
        let a = Subspace::span(3, &[e(0)]);
        let b = Subspace::span(3, &[e(1)]);
        let s = a.sum(&b).unwrap();
        assert_eq!(s.dim(), 2);
        let i = a.intersect(&a).unwrap();
        assert_eq!(i, a);
        let i2 = a.intersect(&b).unwrap();
        assert_eq!(i2.dim(), 0);
        assert!(s.contains_subspace(&a));
    }

    #[test]
    fn quotient_of_ambient_by_e1() {
        let full = Subspace::full(3);
        let sub = Subspace::span(3, &[e(0)]);
        let reps = full.quotient_reps(&sub).unwrap();
        assert_eq!(reps, vec![e(1), e(2)]);
    }

    #[test]
    fn kernel_rank_nullity() {
        let mut m = SparseMatrix::zero(2, 4);
        m.set(0, 0, Scalar::one());
        m.set(0, 2, Scalar::from_int(3));
        m.set(1, 1, Scalar::one());
        m.set(1, 3, -Scalar::from_ratio(1, 2));
        let k = m.kernel();
        assert_eq!(m.rank() + k.len(), 4);
        for v in &k {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let a = Subspace::span(2, &[e(0)]);
        let b = Subspace::span(3, &[e(0)]);
        assert!(a.sum(&b).is_err());
    }
}
