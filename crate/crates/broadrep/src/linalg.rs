//! Dense row-major matrices and Gaussian elimination, generic over the field.
//!
//! Everything here is exact: elimination over F_q or F_{q^l} via
//! [`crate::field::FieldOps`]. No pivoting heuristics are needed beyond
//! "find a nonzero entry".

use crate::error::{Error, Result};
use crate::field::FieldOps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[T]) -> Result<()> {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} into matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    /// Vertical stack; both operands must agree on the column count
    /// (an empty matrix adapts).
    pub fn stack(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        let mut out = self.clone();
        if out.rows == 0 {
            out.cols = other.cols;
        }
        for i in 0..other.rows {
            out.push_row(other.row(i))?;
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn empty(cols: usize) -> Self {
        Self { rows: 0, cols, data: Vec::new() }
    }
}

impl Matrix<u64> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| u64::from(i == j))
    }
}

/// Forward elimination in place. Returns the pivot columns; the matrix is
/// left in row echelon form with pivot rows first.
fn echelon_in_place<F: FieldOps>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0; // next pivot row
    for pc in 0..m.cols {
        // find a nonzero pivot at or below pr
        let Some(sel) = (pr..m.rows).find(|&i| !f.is_zero(m.get(i, pc))) else {
            continue;
        };
        m.swap_rows(pr, sel);
        let inv = f.inv(m.get(pr, pc)).expect("pivot is nonzero");
        for j in pc..m.cols {
            let v = f.mul(m.get(pr, j), &inv);
            m.set(pr, j, v);
        }
        for i in (pr + 1)..m.rows {
            if f.is_zero(m.get(i, pc)) {
                continue;
            }
            let factor = m.get(i, pc).clone();
            for j in pc..m.cols {
                let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(pr, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(pc);
        pr += 1;
        if pr == m.rows {
            break;
        }
    }
    pivots
}

/// Row rank over the given field. Zero for an empty matrix.
pub fn rank<F: FieldOps>(f: &F, m: &Matrix<F::Elem>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut work = m.clone();
    echelon_in_place(f, &mut work).len()
}

/// Reduced row echelon form: returns (rref matrix with zero rows dropped,
/// pivot columns). The rows of the result are a canonical basis of the
/// row space.
pub fn rref<F: FieldOps>(f: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut work = m.clone();
    let pivots = echelon_in_place(f, &mut work);
    // back-substitute
    for (pr, &pc) in pivots.iter().enumerate().rev() {
        for i in 0..pr {
            if f.is_zero(work.get(i, pc)) {
                continue;
            }
            let factor = work.get(i, pc).clone();
            for j in pc..work.cols {
                let v = f.sub(work.get(i, j), &f.mul(&factor, work.get(pr, j)));
                work.set(i, j, v);
            }
        }
    }
    let mut out = Matrix::empty(work.cols);
    for i in 0..pivots.len() {
        out.push_row(work.row(i)).expect("same width");
    }
    (out, pivots)
}

/// Indices of a maximal set of linearly independent rows, greedy in row
/// order (the first row of any dependent group wins). Incremental: each
/// candidate row is reduced against the pivot rows accepted so far.
pub fn independent_rows<F: FieldOps>(f: &F, m: &Matrix<F::Elem>) -> Vec<usize> {
    // basis rows kept normalized with pivot 1 at pivot_cols[i]
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut idxs = Vec::new();
    for i in 0..m.rows {
        let mut row = m.row(i).to_vec();
        for (b, &pc) in basis.iter().zip(&pivot_cols) {
            if f.is_zero(&row[pc]) {
                continue;
            }
            let factor = row[pc].clone();
            for j in pc..row.len() {
                row[j] = f.sub(&row[j], &f.mul(&factor, &b[j]));
            }
        }
        let Some(pc) = row.iter().position(|x| !f.is_zero(x)) else {
            continue;
        };
        let inv = f.inv(&row[pc]).expect("nonzero leading entry");
        for x in row.iter_mut().skip(pc) {
            *x = f.mul(x, &inv);
        }
        // keep basis ordered by pivot column for cheap reduction
        let at = pivot_cols.partition_point(|&c| c < pc);
        basis.insert(at, row);
        pivot_cols.insert(at, pc);
        idxs.push(i);
    }
    idxs
}

/// Solve A x = y for square invertible A.
pub fn solve_linear<F: FieldOps>(
    f: &F,
    a: &Matrix<F::Elem>,
    y: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", a.rows, a.cols)));
    }
    if y.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "rhs of length {} for {} rows",
            y.len(),
            a.rows
        )));
    }
    let n = a.rows;
    // augmented elimination
    let mut work = Matrix::from_fn(n, n + 1, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else {
            y[i].clone()
        }
    });
    for pc in 0..n {
        let Some(sel) = (pc..n).find(|&i| !f.is_zero(work.get(i, pc))) else {
            return Err(Error::SingularMatrix);
        };
        work.swap_rows(pc, sel);
        let inv = f.inv(work.get(pc, pc))?;
        for j in pc..=n {
            let v = f.mul(work.get(pc, j), &inv);
            work.set(pc, j, v);
        }
        for i in 0..n {
            if i == pc || f.is_zero(work.get(i, pc)) {
                continue;
            }
            let factor = work.get(i, pc).clone();
            for j in pc..=n {
                let v = f.sub(work.get(i, j), &f.mul(&factor, work.get(pc, j)));
                work.set(i, j, v);
            }
        }
    }
    Ok((0..n).map(|i| work.get(i, n).clone()).collect())
}

/// Basis of rowspace(U) ∩ rowspace(V).
///
/// Zassenhaus: eliminate the block matrix [U | U; V | 0]. Rows whose left
/// half is zero after elimination have right halves spanning exactly the
/// intersection. rank(result) = rank(U) + rank(V) - rank(stack(U, V)).
pub fn intersection_basis<F: FieldOps>(
    f: &F,
    u: &Matrix<F::Elem>,
    v: &Matrix<F::Elem>,
) -> Result<Matrix<F::Elem>> {
    if u.rows > 0 && v.rows > 0 && u.cols != v.cols {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions differ: {} vs {}",
            u.cols, v.cols
        )));
    }
    let c = if u.rows > 0 { u.cols } else { v.cols };
    let mut work: Matrix<F::Elem> = Matrix::empty(2 * c);
    for i in 0..u.rows {
        let mut row = Vec::with_capacity(2 * c);
        row.extend_from_slice(u.row(i));
        row.extend_from_slice(u.row(i));
        work.push_row(&row)?;
    }
    for i in 0..v.rows {
        let mut row: Vec<F::Elem> = Vec::with_capacity(2 * c);
        row.extend_from_slice(v.row(i));
        row.extend(std::iter::repeat_n(f.zero(), c));
        work.push_row(&row)?;
    }
    let mut reduced = work;
    echelon_in_place(f, &mut reduced);
    let mut out = Matrix::empty(c);
    for i in 0..reduced.rows {
        let left_zero = (0..c).all(|j| f.is_zero(reduced.get(i, j)));
        if !left_zero {
            continue;
        }
        let right: Vec<F::Elem> = (c..2 * c).map(|j| reduced.get(i, j).clone()).collect();
        if right.iter().any(|x| !f.is_zero(x)) {
            out.push_row(&right)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeFieldContext;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn f5() -> PrimeFieldContext {
        PrimeFieldContext::new(5).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f2 = PrimeFieldContext::new(2).unwrap();
        assert_eq!(rank(&f2, &Matrix::identity(3)), 3);
        assert_eq!(rank(&f2, &Matrix::zero(4, 4)), 0);
        assert_eq!(rank(&f2, &Matrix::<u64>::empty(0)), 0);
        // second row is 2x the first mod 5
        let m = Matrix::from_rows(vec![vec![1u64, 2], vec![2, 4]]).unwrap();
        assert_eq!(rank(&f5(), &m), 1);
    }

    #[test]
    fn solve_round_trip() {
        let f = PrimeFieldContext::new(29).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        for _ in 0..50 {
            let n = rng.gen_range(1..6usize);
            let a = Matrix::from_fn(n, n, |_, _| rng.gen_range(0..29u64));
            if rank(&f, &a) < n {
                assert!(matches!(
                    solve_linear(&f, &a, &vec![0u64; n]),
                    Err(Error::SingularMatrix) | Ok(_)
                ));
                continue;
            }
            let x: Vec<u64> = (0..n).map(|_| rng.gen_range(0..29u64)).collect();
            let y: Vec<u64> = (0..n)
                .map(|i| {
                    let mut acc = 0u64;
                    for j in 0..n {
                        acc = f.add(&acc, &f.mul(a.get(i, j), &x[j]));
                    }
                    acc
                })
                .collect();
            assert_eq!(solve_linear(&f, &a, &y).unwrap(), x);
        }
    }

    #[test]
    fn solve_identity_and_singular() {
        let f = f5();
        let y = vec![3u64, 1, 4];
        assert_eq!(solve_linear(&f, &Matrix::identity(3), &y).unwrap(), y);
        let singular = Matrix::from_rows(vec![vec![1u64, 2], vec![2, 4]]).unwrap();
        assert!(matches!(solve_linear(&f, &singular, &[1, 1]), Err(Error::SingularMatrix)));
    }

    #[test]
    fn intersection_examples() {
        let f = f5();
        // span{e1,e2} ∩ span{e2,e3} = span{e2}
        let u = Matrix::from_rows(vec![vec![1u64, 0, 0], vec![0, 1, 0]]).unwrap();
        let v = Matrix::from_rows(vec![vec![0u64, 1, 0], vec![0, 0, 1]]).unwrap();
        let w = intersection_basis(&f, &u, &v).unwrap();
        assert_eq!(w.rows, 1);
        let (r, _) = rref(&f, &w);
        assert_eq!(r.row(0), &[0, 1, 0]);
        // disjoint coordinate lines intersect trivially
        let u = Matrix::from_rows(vec![vec![1u64, 0]]).unwrap();
        let v = Matrix::from_rows(vec![vec![0u64, 1]]).unwrap();
        assert_eq!(intersection_basis(&f, &u, &v).unwrap().rows, 0);
        // U = V gives the whole row space back
        let u = Matrix::from_rows(vec![vec![1u64, 2, 3], vec![0, 1, 4]]).unwrap();
        let w = intersection_basis(&f, &u, &u).unwrap();
        assert_eq!(rank(&f, &w), 2);
    }

    #[test]
    fn intersection_rank_identity_random() {
        // rank(U) + rank(V) = rank(stack) + rank(intersection)
        let f = PrimeFieldContext::new(7).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for _ in 0..200 {
            let c = rng.gen_range(1..6usize);
            let u = Matrix::from_fn(rng.gen_range(0..4usize), c, |_, _| rng.gen_range(0..7u64));
            let v = Matrix::from_fn(rng.gen_range(0..4usize), c, |_, _| rng.gen_range(0..7u64));
            let inter = intersection_basis(&f, &u, &v).unwrap();
            let stacked = u.stack(&v).unwrap();
            assert_eq!(
                rank(&f, &u) + rank(&f, &v),
                rank(&f, &stacked) + rank(&f, &inter)
            );
        }
    }

    #[test]
    fn independent_rows_tracks_originals() {
        let f = f5();
        let m = Matrix::from_rows(vec![
            vec![1u64, 0, 0],
            vec![2, 0, 0], // dependent on row 0
            vec![0, 1, 0],
            vec![1, 1, 0], // dependent on rows 0,2
            vec![0, 0, 3],
        ])
        .unwrap();
        assert_eq!(independent_rows(&f, &m), vec![0, 2, 4]);
    }

    #[test]
    fn rref_canonical() {
        let f = f5();
        let a = Matrix::from_rows(vec![vec![2u64, 4, 0], vec![1, 2, 1]]).unwrap();
        let b = Matrix::from_rows(vec![vec![1u64, 2, 3], vec![0, 0, 4]]).unwrap();
        // same row space -> same rref
        let (ra, _) = rref(&f, &a);
        let (rb, _) = rref(&f, &b);
        assert_eq!(ra, rb);
    }
}
