//! Combinatorial Morse movies: a sequence of triangular acyclic Z2 complexes
//! (slices, one per generic parameter value) connected by birth, death,
//! critical-value crossing, and handle-slide events. This is the discrete
//! shadow of a one-parameter family of functions; a closed front diagram is
//! recovered from the births, deaths and value crossings.

mod build;
mod convert;
mod gf;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::ruling_to_movie;
pub use convert::{movie_to_augmentation, movie_to_front};
pub use gf::gf_homology;

use crate::z2::Z2Matrix;

/// One generic slice: critical points in decreasing-value order, each with a
/// Morse index, and the incidence matrix eta (row i = differential of point
/// i; entries only between adjacent indices, one step down in value order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseSlice {
    lambda: Vec<i64>,
    eta: Z2Matrix,
}

impl MorseSlice {
    pub fn new(lambda: Vec<i64>, eta: Z2Matrix) -> Result<Self, MovieError> {
        let s = MorseSlice { lambda, eta };
        s.check()?;
        Ok(s)
    }

    pub fn empty() -> Self {
        MorseSlice {
            lambda: Vec::new(),
            eta: Z2Matrix::zero(0, 0),
        }
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn index_of(&self, pos: usize) -> i64 {
        self.lambda[pos - 1]
    }

    pub fn eta(&self) -> &Z2Matrix {
        &self.eta
    }

    /// eta entry between 1-based positions.
    pub fn eta_at(&self, i: usize, j: usize) -> bool {
        self.eta.get(i - 1, j - 1)
    }

    fn check(&self) -> Result<(), MovieError> {
        let n = self.len();
        if self.eta.rows() != n || self.eta.cols() != n {
            return Err(MovieError::EtaShape {
                points: n,
                rows: self.eta.rows(),
            });
        }
        for i in 1..=n {
            for j in 1..=n {
                if self.eta_at(i, j) {
                    if j <= i {
                        return Err(MovieError::EtaNotTriangular(i, j));
                    }
                    if self.lambda[i - 1] != self.lambda[j - 1] + 1 {
                        return Err(MovieError::EtaIndexMismatch(i, j));
                    }
                }
            }
        }
        if !self.eta.mul(&self.eta).is_zero() {
            return Err(MovieError::EtaNotSquareZero);
        }
        // a closed front collapses the sublevel set: the complex is acyclic
        if self.eta.rank() * 2 != n {
            return Err(MovieError::SliceNotAcyclic);
        }
        Ok(())
    }

    /// Quotient by the acyclic pair (p_k, d p_k): removes positions k, k+1
    /// and substitutes d p_k for p_{k+1} elsewhere. Requires eta(k, k+1) = 1.
    pub(crate) fn quotient_pair(&self, k: usize) -> MorseSlice {
        let n = self.len();
        debug_assert!(self.eta_at(k, k + 1));
        let keep: Vec<usize> = (1..=n).filter(|&p| p != k && p != k + 1).collect();
        let lambda = keep.iter().map(|&p| self.lambda[p - 1]).collect();
        let mut eta = Z2Matrix::zero(n - 2, n - 2);
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                let v = self.eta_at(i, j) ^ (self.eta_at(i, k + 1) && self.eta_at(k, j));
                if v {
                    eta.set(a, b, true);
                }
            }
        }
        MorseSlice { lambda, eta }
    }

    /// Conjugate by the transposition of positions k, k+1 (value crossing).
    pub(crate) fn cross_values(&self, k: usize) -> MorseSlice {
        let mut lambda = self.lambda.clone();
        lambda.swap(k - 1, k);
        MorseSlice {
            lambda,
            eta: self.eta.transposition_conjugate(k - 1, k),
        }
    }

    /// Basis change p_k -> p_k + p_l across a handle slide (indices equal).
    pub(crate) fn handle_slide(&self, k: usize, l: usize) -> MorseSlice {
        let n = self.len();
        let mut e = Z2Matrix::identity(n);
        e.set(k - 1, l - 1, true);
        MorseSlice {
            lambda: self.lambda.clone(),
            eta: e.mul(&self.eta).mul(&e),
        }
    }
}

/// A bifurcation between two slices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum MovieEvent {
    /// Birth of a pair at positions pos, pos+1 with indices index+1, index.
    #[serde(rename = "B")]
    Birth { pos: usize, index: i64 },
    /// Death of the pair at positions pos, pos+1 (requires eta(pos,pos+1)=1).
    #[serde(rename = "D")]
    Death { pos: usize },
    /// Transverse crossing of the critical values at pos, pos+1.
    #[serde(rename = "TCV")]
    CrossValues { pos: usize },
    /// Handle slide between same-index points pos < pos2.
    #[serde(rename = "MS")]
    HandleSlide { pos: usize, pos2: usize },
    /// No bifurcation: an extra subdivision point.
    #[serde(rename = "Parallel")]
    Parallel,
}

/// Alternating slices and events; `slices.len() == events.len() + 1`, and the
/// first and last slices are empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorseMovie {
    pub slices: Vec<MorseSlice>,
    pub events: Vec<MovieEvent>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MovieError {
    #[error("movie must have one more slice than events")]
    LengthMismatch,
    #[error("first and last slices must be empty")]
    EndsNotEmpty,
    #[error("slice has {points} points but eta has {rows} rows")]
    EtaShape { points: usize, rows: usize },
    #[error("eta({0},{1}) set below or on the diagonal")]
    EtaNotTriangular(usize, usize),
    #[error("eta({0},{1}) set between non-adjacent Morse indices")]
    EtaIndexMismatch(usize, usize),
    #[error("eta does not square to zero")]
    EtaNotSquareZero,
    #[error("slice complex is not acyclic")]
    SliceNotAcyclic,
    #[error("event {0} is out of range for its slice")]
    EventOutOfRange(usize),
    #[error("event {0}: slice after the event does not satisfy the event rule")]
    InconsistentEvent(usize),
    #[error("event {0}: death requires eta(k,k+1) = 1")]
    DeathWithoutTrajectory(usize),
    #[error("event {0}: value crossing requires eta(k,k+1) = 0")]
    CrossingWithTrajectory(usize),
    #[error("event {0}: handle slide requires equal Morse indices and pos < pos2")]
    BadHandleSlide(usize),
    #[error("event {0}: birth indices must be (index+1, index)")]
    BadBirthIndices(usize),
}

/// Check all slice invariants and the local consistency rule of every event.
pub fn validate_movie(movie: &MorseMovie) -> Result<(), MovieError> {
    if movie.slices.len() != movie.events.len() + 1 {
        return Err(MovieError::LengthMismatch);
    }
    if !movie.slices.first().is_none_or(|s| s.is_empty())
        || !movie.slices.last().is_none_or(|s| s.is_empty())
    {
        return Err(MovieError::EndsNotEmpty);
    }
    for s in &movie.slices {
        s.check()?;
    }
    for (t, ev) in movie.events.iter().enumerate() {
        let (p, n) = (&movie.slices[t], &movie.slices[t + 1]);
        match *ev {
            MovieEvent::Birth { pos: k, index } => {
                if k < 1 || k > p.len() + 1 || n.len() != p.len() + 2 {
                    return Err(MovieError::EventOutOfRange(t));
                }
                if n.index_of(k) != index + 1 || n.index_of(k + 1) != index {
                    return Err(MovieError::BadBirthIndices(t));
                }
                if !n.eta_at(k, k + 1) {
                    return Err(MovieError::InconsistentEvent(t));
                }
                if n.quotient_pair(k) != *p {
                    return Err(MovieError::InconsistentEvent(t));
                }
            }
            MovieEvent::Death { pos: k } => {
                if k < 1 || k + 1 > p.len() || n.len() + 2 != p.len() {
                    return Err(MovieError::EventOutOfRange(t));
                }
                if !p.eta_at(k, k + 1) {
                    return Err(MovieError::DeathWithoutTrajectory(t));
                }
                if p.quotient_pair(k) != *n {
                    return Err(MovieError::InconsistentEvent(t));
                }
            }
            MovieEvent::CrossValues { pos: k } => {
                if k < 1 || k + 1 > p.len() || n.len() != p.len() {
                    return Err(MovieError::EventOutOfRange(t));
                }
                if p.eta_at(k, k + 1) {
                    return Err(MovieError::CrossingWithTrajectory(t));
                }
                if p.cross_values(k) != *n {
                    return Err(MovieError::InconsistentEvent(t));
                }
            }
            MovieEvent::HandleSlide { pos: k, pos2: l } => {
                if k < 1 || l > p.len() || n.len() != p.len() {
                    return Err(MovieError::EventOutOfRange(t));
                }
                if k >= l || p.lambda[k - 1] != p.lambda[l - 1] {
                    return Err(MovieError::BadHandleSlide(t));
                }
                if p.handle_slide(k, l) != *n {
                    return Err(MovieError::InconsistentEvent(t));
                }
            }
            MovieEvent::Parallel => {
                if p != n {
                    return Err(MovieError::InconsistentEvent(t));
                }
            }
        }
    }
    Ok(())
}

/// Dimension relations satisfied by both linearized contact homology and
/// generating family homology: dim_k = dim_{-k} away from k = 1, and
/// dim_1 = dim_{-1} + 1.
pub fn duality_check(dims: &BTreeMap<i64, usize>) -> bool {
    let at = |k: i64| dims.get(&k).copied().unwrap_or(0);
    if at(1) != at(-1) + 1 {
        return false;
    }
    dims.keys().all(|&k| k == 1 || k == -1 || at(k) == at(-k))
}

/// Outcome of comparing the two homology theories on one movie.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyComparison {
    pub gf: BTreeMap<i64, usize>,
    pub lch: BTreeMap<i64, usize>,
    pub equal: bool,
}

/// Compute generating family homology and the linearized homology of the
/// movie's canonical augmentation, and compare them degree by degree.
pub fn compare_homologies(movie: &MorseMovie) -> Result<HomologyComparison, MovieError> {
    let gf = gf_homology(movie)?;
    let (sdga, aug) = movie_to_augmentation(movie)?;
    let lch =
        crate::augment::linearized_homology(sdga.dga(), &aug).expect("movie augmentations verify");
    let equal = gf == lch;
    Ok(HomologyComparison { gf, lch, equal })
}

// ---- serde ----

#[derive(Serialize, Deserialize)]
struct PointWire {
    index: i64,
}

#[derive(Serialize, Deserialize)]
struct SliceWire {
    points: Vec<PointWire>,
    eta: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct MovieWire {
    slices: Vec<SliceWire>,
    events: Vec<MovieEvent>,
}

impl Serialize for MorseMovie {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let slices = self
            .slices
            .iter()
            .map(|sl| {
                let n = sl.len();
                SliceWire {
                    points: sl.lambda.iter().map(|&index| PointWire { index }).collect(),
                    eta: (0..n)
                        .map(|i| (0..n).map(|j| u8::from(sl.eta.get(i, j))).collect())
                        .collect(),
                }
            })
            .collect();
        MovieWire {
            slices,
            events: self.events.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MorseMovie {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = MovieWire::deserialize(de)?;
        let mut slices = Vec::with_capacity(wire.slices.len());
        for sw in wire.slices {
            let n = sw.points.len();
            let mut eta = Z2Matrix::zero(n, n);
            if sw.eta.len() != n || sw.eta.iter().any(|r| r.len() != n) {
                return Err(serde::de::Error::custom("eta must be a square 0/1 matrix"));
            }
            for (i, row) in sw.eta.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v == 1 {
                        eta.set(i, j, true);
                    }
                }
            }
            slices.push(MorseSlice {
                lambda: sw.points.into_iter().map(|p| p.index).collect(),
                eta,
            });
        }
        Ok(MorseMovie {
            slices,
            events: wire.events,
        })
    }
}
