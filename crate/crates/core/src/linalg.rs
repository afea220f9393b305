//! Dense exact linear algebra over a coefficient field.

use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub ncols: usize,
    pub rows: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Matrix {
        Matrix {
            field,
            ncols,
            rows: vec![vec![field.zero(); ncols]; nrows],
        }
    }

    pub fn from_rows(field: Field, ncols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix { field, ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.ncols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inv().expect("nonzero pivot");
            for v in self.rows[r].iter_mut() {
                *v = v.mul(&inv);
            }
            let prow = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow).skip(c) {
                    if !pv.is_zero() {
                        *v = v.sub(&f.mul(pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.ncols];
                v[f] = self.field.one();
                for (row, &p) in m.rows.iter().zip(&pivots) {
                    v[p] = row[f].neg();
                }
                v
            })
            .collect()
    }

    /// Whether `v` lies in the row span.
    pub fn row_span_contains(&self, v: &[Scalar]) -> bool {
        let mut m = self.clone();
        let before = m.rank();
        m.rows.push(v.to_vec());
        m.rank() == before
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Field::Rational.int(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_rows(Field::Rational, 3, vec![q(&[1, 2, 3]), q(&[2, 4, 6]), q(&[1, 0, 1])]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        for r in &m.rows {
            let dot = r
                .iter()
                .zip(&k[0])
                .fold(Field::Rational.zero(), |a, (x, y)| a.add(&x.mul(y)));
            assert!(dot.is_zero());
        }
        assert!(m.row_span_contains(&q(&[3, 2, 5])));
        assert!(!m.row_span_contains(&q(&[0, 0, 1])));
    }

    #[test]
    fn prime_field_rank() {
        let f = Field::prime(3).unwrap();
        let m = Matrix::from_rows(f, 2, vec![vec![f.int(1), f.int(2)], vec![f.int(2), f.int(1)]]);
        // det = 1 - 4 = -3 = 0 mod 3
        assert_eq!(m.rank(), 1);
    }
}
