//! Dense matrices over GF(2^ℓ) with Gaussian elimination.

use super::{AlgebraError, Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(AlgebraError::LengthMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, f: &Field, v: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| f.dot(self.row(r), v)).collect())
    }

    pub fn rref(&self, f: &Field) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(lead, j);
                if !v.is_zero() {
                    m.set(lead, j, f.mul(v, inv));
                }
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(lead, j);
                    if !pv.is_zero() {
                        let v = f.sub(m.get(r, j), f.mul(factor, pv));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).pivots.len()
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

/// Systematic parametrization of the null space `{x : Hx = 0}`.
///
/// Free columns of the reduced form of `H` carry the message; pivot
/// coordinates are determined by them.
#[derive(Clone, Debug)]
pub struct NullSpace {
    cols: usize,
    free: Vec<usize>,
    pivots: Vec<usize>,
    // pivot row i: x[pivots[i]] = Σ_j coef[i][j] · x[free[j]]
    coef: Vec<Vec<Fe>>,
}

impl NullSpace {
    pub fn of(f: &Field, h: &Matrix) -> Self {
        let Rref { matrix, pivots } = h.rref(f);
        let mut is_pivot = vec![false; h.cols()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..h.cols()).filter(|&c| !is_pivot[c]).collect();
        // characteristic 2: -a = a
        let coef = (0..pivots.len())
            .map(|i| free.iter().map(|&c| matrix.get(i, c)).collect())
            .collect();
        NullSpace {
            cols: h.cols(),
            free,
            pivots,
            coef,
        }
    }

    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn length(&self) -> usize {
        self.cols
    }

    /// Coordinates that carry the message, in increasing order.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn encode(&self, f: &Field, msg: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
        if msg.len() != self.free.len() {
            return Err(AlgebraError::LengthMismatch {
                expected: self.free.len(),
                got: msg.len(),
            });
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (&c, &m) in self.free.iter().zip(msg) {
            x[c] = m;
        }
        for (&p, row) in self.pivots.iter().zip(&self.coef) {
            x[p] = f.dot(row, msg);
        }
        Ok(x)
    }

    /// Reads the message back from a null-space vector.
    pub fn extract(&self, x: &[Fe]) -> Vec<Fe> {
        self.free.iter().map(|&c| x[c]).collect()
    }

    /// Basis vectors, one per free column.
    pub fn basis(&self, f: &Field) -> Vec<Vec<Fe>> {
        (0..self.free.len())
            .map(|j| {
                let mut e = vec![Fe::ZERO; self.free.len()];
                e[j] = Fe::ONE;
                self.encode(f, &e).expect("dimension matches")
            })
            .collect()
    }
}
