use std::fmt;

/// Dense bit matrix over Z2 with 64-bit packed rows.
///
/// Throughout the crate a matrix holding a differential follows the row
/// convention: row `i` lists the coefficients of `d(e_i)`, so composition of
/// maps is plain matrix multiplication `self * rhs`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Z2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64).max(1);
        Z2Matrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
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
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        let w = self.bits[r * self.words_per_row + c / 64];
        (w >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, r: usize, c: usize) {
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        *w ^= 1 << (c % 64);
    }

    /// rows[dst] += rows[src]
    pub fn row_xor(&mut self, dst: usize, src: usize) {
        debug_assert!(dst != src);
        let (d, s) = (dst * self.words_per_row, src * self.words_per_row);
        for k in 0..self.words_per_row {
            let v = self.bits[s + k];
            self.bits[d + k] ^= v;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn mul(&self, rhs: &Z2Matrix) -> Z2Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in matrix product");
        let mut out = Z2Matrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let (d, s) = (i * out.words_per_row, k * rhs.words_per_row);
                    for w in 0..rhs.words_per_row.min(out.words_per_row) {
                        out.bits[d + w] ^= rhs.bits[s + w];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Z2Matrix) -> Z2Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&rhs.bits) {
            *a ^= b;
        }
        out
    }

    /// Inverse of a unipotent upper-triangular matrix (I + N with N strictly
    /// upper): the Neumann series I + N + N^2 + ... terminates.
    pub fn unitriangular_inverse(&self) -> Z2Matrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut nil = self.clone();
        for i in 0..n {
            assert!(nil.get(i, i), "matrix is not unipotent");
            nil.set(i, i, false);
            for j in 0..i {
                assert!(!nil.get(i, j), "matrix is not upper triangular");
            }
        }
        let mut inv = Z2Matrix::identity(n);
        let mut pow = Z2Matrix::identity(n);
        for _ in 0..n {
            pow = pow.mul(&nil);
            if pow.is_zero() {
                break;
            }
            inv = inv.add(&pow);
        }
        inv
    }

    /// Rank by Gaussian elimination (leftmost pivot first; deterministic).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let mut pivot = None;
            for r in rank..m.rows {
                if m.get(r, col) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            m.swap_rows(p, rank);
            for r in 0..m.rows {
                if r != rank && m.get(r, col) {
                    m.row_xor(r, rank);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.words_per_row {
            self.bits
                .swap(a * self.words_per_row + k, b * self.words_per_row + k);
        }
    }

    /// Conjugate by the permutation matrix of the transposition (a b):
    /// swaps rows a,b and columns a,b.
    pub fn transposition_conjugate(&self, a: usize, b: usize) -> Z2Matrix {
        assert_eq!(self.rows, self.cols);
        let mut out = Z2Matrix::zero(self.rows, self.cols);
        let sw = |i: usize| {
            if i == a {
                b
            } else if i == b {
                a
            } else {
                i
            }
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(sw(i), sw(j), true);
                }
            }
        }
        out
    }

    pub fn is_strictly_upper(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..=i.min(self.cols - 1) {
                if self.get(i, j) {
                    return false;
                }
            }
        }
        self.rows == self.cols
    }
}

impl fmt::Debug for Z2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Z2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
