use std::collections::BTreeMap;

use thiserror::Error;

use super::Z2Matrix;

/// Finite Z2 chain complex with integer degrees (optionally reduced mod a
/// positive modulus) and a degree -1 differential.
///
/// Row convention: row `i` of `d` is the image of basis element `i`.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    degrees: Vec<i64>,
    /// 0 means integer grading; m > 0 means degrees are residues mod m.
    modulus: i64,
    d: Z2Matrix,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential does not square to zero")]
    NotAComplex,
    #[error("differential entry ({0},{1}) does not have degree -1")]
    WrongDegree(usize, usize),
    #[error("differential shape {0}x{1} does not match basis of size {2}")]
    ShapeMismatch(usize, usize, usize),
}

impl GradedComplex {
    pub fn new(degrees: Vec<i64>, modulus: i64, d: Z2Matrix) -> Result<Self, ComplexError> {
        if d.rows() != degrees.len() || d.cols() != degrees.len() {
            return Err(ComplexError::ShapeMismatch(
                d.rows(),
                d.cols(),
                degrees.len(),
            ));
        }
        let c = GradedComplex {
            degrees: degrees.iter().map(|&x| reduce(x, modulus)).collect(),
            modulus,
            d,
        };
        for i in 0..c.dim() {
            for j in 0..c.dim() {
                if c.d.get(i, j) && reduce(c.degrees[j] + 1, modulus) != c.degrees[i] {
                    return Err(ComplexError::WrongDegree(i, j));
                }
            }
        }
        if !c.d.mul(&c.d).is_zero() {
            return Err(ComplexError::NotAComplex);
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn differential(&self) -> &Z2Matrix {
        &self.d
    }
}

/// Reduce a degree into the grading: identity for integer grading
/// (modulus 0), representative in `[0, m)` otherwise.
pub fn reduce(x: i64, modulus: i64) -> i64 {
    if modulus > 0 {
        x.rem_euclid(modulus)
    } else {
        x
    }
}

/// Homology dimension per degree: dim ker - rank in each degree, computed by
/// Gaussian elimination on the degree-restricted blocks. Degrees with zero
/// homology are omitted from the map.
pub fn homology_dims(complex: &GradedComplex) -> BTreeMap<i64, usize> {
    let n = complex.dim();
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        by_degree.entry(complex.degrees[i]).or_default().push(i);
    }
    // rank of d restricted to sources of degree k (targets have degree k-1)
    let rank_at = |k: i64| -> usize {
        let Some(sources) = by_degree.get(&k) else {
            return 0;
        };
        let targets = by_degree.get(&reduce(k - 1, complex.modulus)).cloned();
        let Some(targets) = targets else { return 0 };
        let mut m = Z2Matrix::zero(sources.len(), targets.len());
        for (r, &i) in sources.iter().enumerate() {
            for (c, &j) in targets.iter().enumerate() {
                if complex.d.get(i, j) {
                    m.set(r, c, true);
                }
            }
        }
        m.rank()
    };
    let mut dims = BTreeMap::new();
    for (&k, basis) in &by_degree {
        let rk = rank_at(k);
        let rk_above = rank_at(reduce(k + 1, complex.modulus));
        let h = basis.len() - rk - rk_above;
        if h > 0 {
            dims.insert(k, h);
        }
    }
    dims
}
