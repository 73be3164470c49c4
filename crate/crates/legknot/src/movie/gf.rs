//! The cellular complex of a movie built from fiber products of descending
//! and ascending cells, after killing the standard acyclic subcomplexes. Its
//! generators come in two families indexed by strand pairs i < j: one copy
//! over every subdivision point (slices and events) and one over every open
//! interval between consecutive subdivision points. Homology of this complex
//! is the generating family homology, already shifted to match linearized
//! degrees.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::z2::{homology_dims, GradedComplex, Z2Matrix};

use super::{validate_movie, MorseMovie, MorseSlice, MovieError, MovieEvent};

#[derive(Clone, Debug)]
struct Block {
    /// sorted 1-based labels of the points alive in this block
    labels: Vec<usize>,
    lam: HashMap<usize, i64>,
    eta: HashSet<(usize, usize)>,
}

impl Block {
    fn from_slice(s: &MorseSlice) -> Block {
        let n = s.len();
        Block {
            labels: (1..=n).collect(),
            lam: (1..=n).map(|p| (p, s.index_of(p))).collect(),
            eta: (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| s.eta_at(i, j))
                .collect(),
        }
    }

    /// Relabel a slice into the ambient labeling that omits k, k+1 (used on
    /// both sides of births and deaths).
    fn from_slice_shifted(s: &MorseSlice, k: usize) -> Block {
        let shift = |p: usize| if p < k { p } else { p + 2 };
        let n = s.len();
        Block {
            labels: (1..=n).map(shift).collect(),
            lam: (1..=n).map(|p| (shift(p), s.index_of(p))).collect(),
            eta: (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| s.eta_at(i, j))
                .map(|(i, j)| (shift(i), shift(j)))
                .collect(),
        }
    }

    fn eta_at(&self, u: usize, v: usize) -> bool {
        self.eta.contains(&(u, v))
    }
}

/// How a subdivision-point block resolves pairs that are not in its basis.
#[derive(Clone, Debug)]
enum Resolution {
    /// every pair of labels is a basis element
    Plain,
    /// the pair (k, k+1) is killed (value crossings and deaths)
    SkipPair(usize),
    /// births: pairs touching k or k+1 are rewritten through the post-birth
    /// incidences or killed
    Birth {
        k: usize,
        post_eta: HashSet<(usize, usize)>,
        post_n: usize,
    },
}

struct ABlock {
    block: Block,
    res: Resolution,
}

impl ABlock {
    fn basis_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, &u) in self.block.labels.iter().enumerate() {
            for &v in &self.block.labels[a + 1..] {
                if let Resolution::SkipPair(k) = self.res {
                    if (u, v) == (k, k + 1) {
                        continue;
                    }
                }
                out.push((u, v));
            }
        }
        out
    }

    /// Express the cell (u, v) in the block's basis, as a mod-2 list of
    /// basis pairs. Cells with u >= v die in the quotient.
    fn resolve(&self, u: usize, v: usize, acc: &mut Vec<(usize, usize)>) {
        if u >= v {
            return;
        }
        match &self.res {
            Resolution::Plain => acc.push((u, v)),
            Resolution::SkipPair(k) => {
                if (u, v) != (*k, *k + 1) {
                    acc.push((u, v));
                }
            }
            Resolution::Birth {
                k,
                post_eta,
                post_n,
            } => {
                let k = *k;
                let u_is = u == k || u == k + 1;
                let v_is = v == k || v == k + 1;
                match (u_is, v_is) {
                    (false, false) => acc.push((u, v)),
                    (true, true) => {} // (k, k+1) dies
                    (true, false) => {
                        if u == k + 1 {
                            // [p_{k+1} x q_v] = sum of post incidences out of k
                            for l in k + 2..=*post_n {
                                if post_eta.contains(&(k, l)) && l < v {
                                    acc.push((l, v));
                                }
                            }
                        }
                        // u == k dies
                    }
                    (false, true) => {
                        if v == k {
                            // [p_u x q_k] = sum of post incidences into k+1
                            for l in 1..k {
                                if post_eta.contains(&(l, k + 1)) && u < l {
                                    acc.push((u, l));
                                }
                            }
                        }
                        // v == k+1 dies
                    }
                }
            }
        }
    }
}

struct IntervalBlock {
    block: Block,
}

/// Assemble the full complex. Subdivision point 2t is slice t; subdivision
/// point 2t+1 is event t; interval q joins subdivision points q-1 and q.
fn build_blocks(movie: &MorseMovie) -> (Vec<ABlock>, Vec<IntervalBlock>) {
    let m = movie.events.len();
    let mut a_blocks = Vec::with_capacity(2 * m + 1);
    let mut intervals = Vec::with_capacity(2 * m);
    for t in 0..=m {
        a_blocks.push(ABlock {
            block: Block::from_slice(&movie.slices[t]),
            res: Resolution::Plain,
        });
        if t == m {
            break;
        }
        let pre = &movie.slices[t];
        let post = &movie.slices[t + 1];
        // interval (slice t, event t)
        let left_interval = match movie.events[t] {
            MovieEvent::Birth { pos: k, .. } => Block::from_slice_shifted(pre, k),
            _ => Block::from_slice(pre),
        };
        intervals.push(IntervalBlock {
            block: left_interval,
        });
        // the event block
        let (block, res) = match movie.events[t] {
            MovieEvent::Birth { pos: k, .. } => (
                Block::from_slice_shifted(pre, k),
                Resolution::Birth {
                    k,
                    post_eta: Block::from_slice(post).eta,
                    post_n: post.len(),
                },
            ),
            MovieEvent::Death { pos: k } => (Block::from_slice(pre), Resolution::SkipPair(k)),
            MovieEvent::CrossValues { pos: k } => (Block::from_slice(pre), Resolution::SkipPair(k)),
            MovieEvent::HandleSlide { .. } | MovieEvent::Parallel => {
                (Block::from_slice(pre), Resolution::Plain)
            }
        };
        a_blocks.push(ABlock { block, res });
        // interval (event t, slice t+1)
        let right_interval = match movie.events[t] {
            MovieEvent::Death { pos: k } => Block::from_slice_shifted(post, k),
            _ => Block::from_slice(post),
        };
        intervals.push(IntervalBlock {
            block: right_interval,
        });
    }
    (a_blocks, intervals)
}

pub(crate) fn gf_complex(movie: &MorseMovie) -> Result<GradedComplex, MovieError> {
    validate_movie(movie)?;
    let (a_blocks, intervals) = build_blocks(movie);
    let m = movie.events.len();

    // generator table: (true = subdivision cell x^+, block idx, u, v)
    let mut ids: BTreeMap<(bool, usize, usize, usize), usize> = BTreeMap::new();
    let mut degrees: Vec<i64> = Vec::new();
    for (p, ab) in a_blocks.iter().enumerate() {
        for (u, v) in ab.basis_pairs() {
            ids.insert((true, p, u, v), degrees.len());
            degrees.push(ab.block.lam[&u] - ab.block.lam[&v] - 1);
        }
    }
    for (q, ib) in intervals.iter().enumerate() {
        for (a, &u) in ib.block.labels.iter().enumerate() {
            for &v in &ib.block.labels[a + 1..] {
                ids.insert((false, q, u, v), degrees.len());
                degrees.push(ib.block.lam[&u] - ib.block.lam[&v]);
            }
        }
    }

    let n_gens = degrees.len();
    let mut d = Z2Matrix::zero(n_gens, n_gens);
    let flip_resolved = |d: &mut Z2Matrix, row: usize, p: usize, u: usize, v: usize| {
        let mut acc = Vec::new();
        a_blocks[p].resolve(u, v, &mut acc);
        for (ru, rv) in acc {
            d.flip(row, ids[&(true, p, ru, rv)]);
        }
    };

    // differentials of the subdivision cells: within-block incidences on
    // either side of the pair
    for (p, ab) in a_blocks.iter().enumerate() {
        for (u, v) in ab.basis_pairs() {
            let row = ids[&(true, p, u, v)];
            for &l in &ab.block.labels {
                if l <= u || l >= v {
                    continue;
                }
                if ab.block.eta_at(u, l) {
                    flip_resolved(&mut d, row, p, l, v);
                }
                if ab.block.eta_at(l, v) {
                    flip_resolved(&mut d, row, p, u, l);
                }
            }
        }
    }

    // differentials of the interval cells
    for q in 1..=2 * m {
        let ib = &intervals[q - 1];
        let event_t = (q - 1) / 2; // the event this interval touches
        let event = movie.events[event_t];
        let event_p = 2 * event_t + 1;
        let interval_left_of_event = q % 2 == 1;
        for (ai, &u) in ib.block.labels.iter().enumerate() {
            for &v in &ib.block.labels[ai + 1..] {
                let row = ids[&(false, q - 1, u, v)];

                // within-interval incidences
                for &l in &ib.block.labels {
                    if l <= u || l >= v {
                        continue;
                    }
                    if ib.block.eta_at(u, l) {
                        d.flip(row, ids[&(false, q - 1, l, v)]);
                    }
                    if ib.block.eta_at(l, v) {
                        d.flip(row, ids[&(false, q - 1, u, l)]);
                    }
                }

                if interval_left_of_event {
                    // left endpoint: the slice before the event, with the
                    // identity comparison
                    let slice_p = q - 1;
                    let (su, sv) = match event {
                        MovieEvent::Birth { pos: k, .. } => (unshift(u, k), unshift(v, k)),
                        _ => (u, v),
                    };
                    flip_resolved(&mut d, row, slice_p, su, sv);
                    // right endpoint: the event block
                    flip_resolved(&mut d, row, event_p, u, v);
                } else {
                    // left endpoint: the event block, through the
                    // event-specific comparison map
                    match event {
                        MovieEvent::Parallel | MovieEvent::Birth { .. } => {
                            flip_resolved(&mut d, row, event_p, u, v);
                        }
                        MovieEvent::Death { pos: k } => {
                            let pre = &a_blocks[event_p].block;
                            flip_resolved(&mut d, row, event_p, u, v);
                            if pre.eta_at(u, k + 1) {
                                flip_resolved(&mut d, row, event_p, k, v);
                            }
                            if pre.eta_at(k, v) {
                                flip_resolved(&mut d, row, event_p, u, k + 1);
                            }
                        }
                        MovieEvent::CrossValues { pos: k } => {
                            let sw = |w: usize| {
                                if w == k {
                                    k + 1
                                } else if w == k + 1 {
                                    k
                                } else {
                                    w
                                }
                            };
                            flip_resolved(&mut d, row, event_p, sw(u), sw(v));
                        }
                        MovieEvent::HandleSlide { pos: k, pos2: l } => {
                            flip_resolved(&mut d, row, event_p, u, v);
                            if u == k {
                                flip_resolved(&mut d, row, event_p, l, v);
                            }
                            if v == l {
                                flip_resolved(&mut d, row, event_p, u, k);
                            }
                        }
                    }
                    // right endpoint: the slice after the event; after a
                    // death the interval labels skip the dead pair
                    let slice_p = q;
                    let (su, sv) = match event {
                        MovieEvent::Death { pos: k } => (unshift(u, k), unshift(v, k)),
                        _ => (u, v),
                    };
                    flip_resolved(&mut d, row, slice_p, su, sv);
                }
            }
        }
    }

    Ok(GradedComplex::new(degrees, 0, d)
        .expect("the cellular complex squares to zero with degree -1"))
}

fn unshift(p: usize, k: usize) -> usize {
    if p < k {
        p
    } else {
        p - 2
    }
}

/// Generating family homology of the movie, degree -> dimension.
pub fn gf_homology(movie: &MorseMovie) -> Result<BTreeMap<i64, usize>, MovieError> {
    Ok(homology_dims(&gf_complex(movie)?))
}
