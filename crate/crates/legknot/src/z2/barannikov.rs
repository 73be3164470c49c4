use thiserror::Error;

use super::Z2Matrix;

/// Canonical pairing of a triangular exact differential.
///
/// For `d` strictly triangular with respect to a basis ordered by decreasing
/// critical value (row `i` of the matrix is `d(e_i)`, supported on indices
/// `j > i`) and exact (ker d = im d), there is a unique fixed-point-free
/// involution `tau` and a unipotent upper-triangular change of basis such
/// that the differential becomes `d(e'_i) = e'_{tau(i)}` when `tau(i) > i`
/// and `0` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarannikovPairing {
    /// tau[i] = partner of basis element i.
    pub tau: Vec<usize>,
    /// Rows are the new basis elements in terms of the old ones.
    pub basis_change: Z2Matrix,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BarannikovError {
    #[error("matrix is not strictly triangular at entry ({0},{1})")]
    NotTriangular(usize, usize),
    #[error("differential is not exact")]
    NotExact,
    #[error("differential does not square to zero")]
    NotAComplex,
}

/// Compute the canonical pairing by column reduction: rows are processed from
/// the bottom of the order upward, each reduced against previously claimed
/// pivots; the surviving term of lowest index is the partner.
pub fn barannikov_pairing(d: &Z2Matrix) -> Result<BarannikovPairing, BarannikovError> {
    let n = d.rows();
    assert_eq!(n, d.cols(), "differential must be square");
    for i in 0..n {
        for j in 0..=i.min(n.saturating_sub(1)) {
            if n > 0 && d.get(i, j) {
                return Err(BarannikovError::NotTriangular(i, j));
            }
        }
    }
    if !d.mul(d).is_zero() {
        return Err(BarannikovError::NotAComplex);
    }

    // reduced[i]: current image of e'_i as a bit row; comb[i]: e'_i itself.
    let mut reduced = d.clone();
    let mut comb = Z2Matrix::identity(n);
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let lowest = |m: &Z2Matrix, i: usize| (0..n).find(|&j| m.get(i, j));

    for i in (0..n).rev() {
        while let Some(p) = lowest(&reduced, i) {
            match owner[p] {
                Some(prev) => {
                    reduced.row_xor(i, prev);
                    comb.row_xor(i, prev);
                }
                None => {
                    owner[p] = Some(i);
                    break;
                }
            }
        }
    }

    let mut tau = vec![usize::MAX; n];
    for p in 0..n {
        if let Some(i) = owner[p] {
            if tau[i] != usize::MAX || tau[p] != usize::MAX {
                return Err(BarannikovError::NotExact);
            }
            tau[i] = p;
            tau[p] = i;
        }
    }
    if tau.contains(&usize::MAX) {
        return Err(BarannikovError::NotExact);
    }

    // Targets get e'_p := d(e'_i), realizing d(e'_i) = e'_p on the nose.
    let mut basis_change = Z2Matrix::zero(n, n);
    for (i, &p) in tau.iter().enumerate() {
        if p > i {
            for j in 0..n {
                if comb.get(i, j) {
                    basis_change.set(i, j, true);
                }
                if reduced.get(i, j) {
                    basis_change.set(p, j, true);
                }
            }
        }
    }
    Ok(BarannikovPairing { tau, basis_change })
}
