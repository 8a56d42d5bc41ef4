//! Arbitrary-precision integer matrices with schoolbook and Strassen products.
//!
//! Both product routines are exact, so they must agree bit-for-bit; the
//! recursive one exists as the fast path for large balanced shapes.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn check_conformal(&self, rhs: &IntMatrix) -> Result<()> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                lr: self.rows,
                lc: self.cols,
                rr: rhs.rows,
                rc: rhs.cols,
            });
        }
        Ok(())
    }

    /// Classical cubic product, the baseline every other route is checked
    /// against.
    pub fn mul_schoolbook(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.check_conformal(rhs)?;
        Ok(self.mul_range(rhs, 0, self.cols))
    }

    /// Schoolbook product restricted to inner indices `klo..khi`.
    pub fn mul_range(&self, rhs: &IntMatrix, klo: usize, khi: usize) -> IntMatrix {
        debug_assert!(khi <= self.cols && self.cols == rhs.rows);
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in klo..khi {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let rrow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        out
    }

    /// Strassen product; pads to a square power of two and recurses down to
    /// `STRASSEN_CUTOFF`.
    pub fn mul_strassen(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.check_conformal(rhs)?;
        let dim = self.rows.max(self.cols).max(rhs.cols).max(1).next_power_of_two();
        let a = self.padded(dim);
        let b = rhs.padded(dim);
        let c = strassen_square(&a, &b);
        Ok(c.cropped(self.rows, rhs.cols))
    }

    /// Product dispatcher: Strassen for large balanced shapes, schoolbook
    /// otherwise.
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        self.check_conformal(rhs)?;
        let dims = [self.rows, self.cols, rhs.cols];
        let smallest = *dims.iter().min().unwrap();
        let largest = *dims.iter().max().unwrap();
        if smallest > STRASSEN_CUTOFF && largest <= smallest * 2 {
            self.mul_strassen(rhs)
        } else {
            self.mul_schoolbook(rhs)
        }
    }

    fn padded(&self, dim: usize) -> IntMatrix {
        let mut out = IntMatrix::zero(dim, dim);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * dim + j] = self.get(i, j).clone();
            }
        }
        out
    }

    fn cropped(&self, rows: usize, cols: usize) -> IntMatrix {
        IntMatrix::from_fn(rows, cols, |i, j| self.get(i, j).clone())
    }

    fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    fn quadrant(&self, qi: usize, qj: usize) -> IntMatrix {
        let h = self.rows / 2;
        IntMatrix::from_fn(h, h, |i, j| self.get(qi * h + i, qj * h + j).clone())
    }
}

const STRASSEN_CUTOFF: usize = 8;

fn strassen_square(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.rows;
    if n <= STRASSEN_CUTOFF {
        return a.mul_range(b, 0, n);
    }
    let (a11, a12, a21, a22) = (a.quadrant(0, 0), a.quadrant(0, 1), a.quadrant(1, 0), a.quadrant(1, 1));
    let (b11, b12, b21, b22) = (b.quadrant(0, 0), b.quadrant(0, 1), b.quadrant(1, 0), b.quadrant(1, 1));

    let m1 = strassen_square(&a11.add(&a22), &b11.add(&b22));
    let m2 = strassen_square(&a21.add(&a22), &b11);
    let m3 = strassen_square(&a11, &b12.sub(&b22));
    let m4 = strassen_square(&a22, &b21.sub(&b11));
    let m5 = strassen_square(&a11.add(&a12), &b22);
    let m6 = strassen_square(&a21.sub(&a11), &b11.add(&b12));
    let m7 = strassen_square(&a12.sub(&a22), &b21.add(&b22));

    let c11 = m1.add(&m4).sub(&m5).add(&m7);
    let c12 = m3.add(&m5);
    let c21 = m2.add(&m4);
    let c22 = m1.sub(&m2).add(&m3).add(&m6);

    let h = n / 2;
    let mut out = IntMatrix::zero(n, n);
    for i in 0..h {
        for j in 0..h {
            out.set(i, j, c11.get(i, j).clone());
            out.set(i, j + h, c12.get(i, j).clone());
            out.set(i + h, j, c21.get(i, j).clone());
            out.set(i + h, j + h, c22.get(i, j).clone());
        }
    }
    out
}
