//! Small dense exact linear algebra over the rational scalars: just enough
//! for metric inversion, Gram matrices, projector assembly and the
//! linear-solve oracles in the test suites.

use crate::scalar::Scalar;
use num::{One, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Fraction-free-ish Gaussian elimination returning (rank, det of the
    /// square part, reduced echelon matrix augmented with `rhs`).
    fn eliminate(&self, rhs: Option<&Mat>) -> (usize, Scalar, Mat) {
        let extra = rhs.map_or(0, |m| m.cols);
        let mut a = Mat::zeros(self.rows, self.cols + extra);
        for i in 0..self.rows {
            for j in 0..self.cols {
                a[(i, j)] = self[(i, j)].clone();
            }
            if let Some(r) = rhs {
                for j in 0..extra {
                    a[(i, self.cols + j)] = r[(i, j)].clone();
                }
            }
        }
        let mut det = Scalar::one();
        let mut rank = 0usize;
        let mut pivot_col = 0usize;
        while rank < self.rows && pivot_col < self.cols {
            // Pick the shortest nonzero pivot to keep entries small.
            let mut pivot_row = None;
            for i in rank..self.rows {
                if !a[(i, pivot_col)].is_zero() {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(p) = pivot_row else {
                pivot_col += 1;
                det = Scalar::zero();
                continue;
            };
            if p != rank {
                for j in 0..a.cols {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(rank, j)].clone();
                    a[(rank, j)] = tmp;
                }
                det = -det;
            }
            let piv = a[(rank, pivot_col)].clone();
            det *= &piv;
            let inv = Scalar::one() / piv;
            for j in pivot_col..a.cols {
                let scaled = &a[(rank, j)] * &inv;
                a[(rank, j)] = scaled;
            }
            for i in 0..self.rows {
                if i == rank || a[(i, pivot_col)].is_zero() {
                    continue;
                }
                let factor = a[(i, pivot_col)].clone();
                for j in pivot_col..a.cols {
                    let delta = &factor * &a[(rank, j)];
                    a[(i, j)] -= delta;
                }
            }
            rank += 1;
            pivot_col += 1;
        }
        if rank < self.rows.min(self.cols) || self.rows != self.cols {
            det = Scalar::zero();
        }
        (rank, det, a)
    }

    pub fn rank(&self) -> usize {
        self.eliminate(None).0
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        self.eliminate(None).1
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let id = Mat::identity(self.rows);
        let (rank, _, red) = self.eliminate(Some(&id));
        if rank < self.rows {
            return None;
        }
        let mut out = Mat::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..self.rows {
                out[(i, j)] = red[(i, self.cols + j)].clone();
            }
        }
        Some(out)
    }

    /// Any solution of A x = b, or None if inconsistent. Free variables are
    /// set to zero.
    pub fn solve_any(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let rhs = Mat::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
        let (_, _, red) = self.eliminate(Some(&rhs));
        let mut x = vec![Scalar::zero(); self.cols];
        for i in 0..self.rows {
            // Find pivot column of row i.
            let mut pivot = None;
            for j in 0..self.cols {
                if !red[(i, j)].is_zero() {
                    pivot = Some(j);
                    break;
                }
            }
            match pivot {
                Some(j) => x[j] = red[(i, self.cols)].clone(),
                None => {
                    if !red[(i, self.cols)].is_zero() {
                        return None; // 0 = nonzero row
                    }
                }
            }
        }
        // Reduced echelon form with free vars at zero solves exactly.
        Some(x)
    }

    /// Extracts the k x k minor with the given row/column index sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    /// Leading principal minors, for exact definiteness tests.
    pub fn leading_minors(&self) -> Vec<Scalar> {
        assert_eq!(self.rows, self.cols);
        (1..=self.rows)
            .map(|k| {
                let idx: Vec<usize> = (0..k).collect();
                self.minor(&idx, &idx).det()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}
