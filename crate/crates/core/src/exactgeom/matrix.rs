//! Dense exact rational matrices: fraction-free determinants, solving,
//! inverses and kernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::rat::Rat;

/// A dense matrix with exact rational entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl MatrixQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from machine integers, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| crate::rat::int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Rat::zero();
                for (a, v) in self.row(r).iter().zip(x) {
                    if !a.is_zero() {
                        acc += a * v;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = MatrixQ::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// `a·self + b·rhs` entry-wise.
    pub fn lin_comb(&self, a: &Rat, rhs: &MatrixQ, b: &Rat) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Rows are first scaled to integers; the Bareiss recurrence then stays
    /// in integers with exact divisions, and the row scales are divided back
    /// out at the end.
    pub fn det(&self) -> Result<Rat, Error> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rat::one());
        }

        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut l = BigInt::one();
            for v in self.row(r) {
                l = l.lcm(v.denom());
            }
            scale *= &l;
            m.push(
                self.row(r)
                    .iter()
                    .map(|v| v.numer() * (&l / v.denom()))
                    .collect(),
            );
        }

        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Rat::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = t / &prev; // exact by the Bareiss identity
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let mut d = m[n - 1][n - 1].clone();
        if negate {
            d = -d;
        }
        Ok(Rat::new(d, scale))
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<MatrixQ>, Error> {
        if !self.is_square() {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Rat>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = rref_in_place(&mut aug, n);
        if pivots.len() < n {
            return Ok(None);
        }
        Ok(Some(MatrixQ::from_rows(
            (0..n).map(|r| aug[r][n..].to_vec()).collect(),
        )))
    }

    /// A basis of `{x : Mx = 0}` from the reduced row echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut work = self.row_vecs();
        let pivots = rref_in_place(&mut work, self.cols);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (col, &slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    vec[col] = -work[row][free].clone();
                }
            }
            basis.push(vec);
        }
        basis
    }
}

/// Gauss-Jordan reduction restricted to the first `lead_cols` columns;
/// returns the pivot columns. Rows may be wider than `lead_cols` (augmented
/// systems), in which case the tail columns are carried along.
fn rref_in_place(rows: &mut [Vec<Rat>], lead_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..lead_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = {
            let pivot = rows[r][c].clone();
            pivot.recip()
        };
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..rows[i].len() {
                let delta = &factor * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solution set of `Mx + c = y` for a square `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Unique(Vec<Rat>),
    Inconsistent,
    /// Singular but consistent: `particular + span(kernel)`.
    Underdetermined {
        particular: Vec<Rat>,
        kernel: Vec<Vec<Rat>>,
    },
}

pub fn solve_affine(m: &MatrixQ, offset: &[Rat], target: &[Rat]) -> Result<AffineSolution, Error> {
    if !m.is_square() {
        return Err(Error::NonSquareMatrix {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if offset.len() != n || target.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if offset.len() != n {
                offset.len()
            } else {
                target.len()
            },
        });
    }
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(&target[r] - &offset[r]);
            row
        })
        .collect();
    let pivots = rref_in_place(&mut aug, n);
    // Inconsistency: a zero row with nonzero right-hand side.
    for row in aug.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Ok(AffineSolution::Inconsistent);
        }
    }
    let mut particular = vec![Rat::zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        particular[col] = aug[row][n].clone();
    }
    if pivots.len() == n {
        return Ok(AffineSolution::Unique(particular));
    }
    let kernel = m.kernel_basis();
    Ok(AffineSolution::Underdetermined { particular, kernel })
}
