//! Dense bit matrices over F2.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from rows given as bitmasks over at most 64 columns.
    pub fn from_row_masks(rows: &[u64], cols: usize) -> Self {
        assert!(cols <= 64, "row masks hold at most 64 columns");
        let mut m = Self::zeros(rows.len(), cols);
        for (r, &mask) in rows.iter().enumerate() {
            debug_assert!(cols == 64 || mask >> cols == 0);
            m.data[r * m.words] = mask;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for w in 0..other.words {
                        out.data[r * out.words + w] ^= other.data[k * other.words + w];
                    }
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let words = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(pivot) = (rank..self.rows).find(|&r| m[r * words + w] & bit != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..words {
                    m.swap(pivot * words + k, rank * words + k);
                }
            }
            for r in rank + 1..self.rows {
                if m[r * words + w] & bit != 0 {
                    for k in w..words {
                        m[r * words + k] ^= m[rank * words + k];
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '.' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(F2Matrix::identity(70).rank(), 70);
        assert_eq!(F2Matrix::zeros(3, 4).rank(), 0);
        // rows 011, 101, 110 sum to zero over F2
        let m = F2Matrix::from_row_masks(&[0b011, 0b101, 0b110], 3);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.nullity(), 1);
    }

    #[test]
    fn transpose_and_product() {
        let a = F2Matrix::from_row_masks(&[0b01, 0b11], 2);
        let p = a.mul(&a);
        // [[1,0],[1,1]]^2 = [[1,0],[0,1]] over F2
        assert_eq!(p, F2Matrix::identity(2));
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.get(1, 1) && !a.get(0, 1));
    }

    #[test]
    fn wide_matrices_span_words() {
        let mut m = F2Matrix::zeros(2, 130);
        m.set(0, 129, true);
        m.set(1, 129, true);
        m.set(1, 3, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }
}
