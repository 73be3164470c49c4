//! Rulings of a front diagram: the left-to-right sweep, normality and
//! gradedness of switches, exhaustive enumeration, and the ruling polynomial.
//!
//! A ruling pairs left cusps with right cusps by disjoint monotone paths; it
//! is determined by its set of switched crossings, and at every generic
//! x-value it induces a fixed-point-free involution on strand positions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::front::{EventKind, FrontDiagram, MaslovPotential};
use crate::z2::reduce_degree;

/// A ruling, stored as the set of switched crossings (event indices into the
/// front's event word) together with the induced cusp pairing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ruling {
    /// Event indices (0-based) of the switched crossings.
    pub switches: BTreeSet<usize>,
    /// Pairs (left cusp event index, right cusp event index).
    pub pairing: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SweepError {
    #[error("event {0} is not a crossing but was marked as a switch")]
    SwitchAtNonCrossing(usize),
    #[error("right cusp at event {0} closes strands that are not partners")]
    RightCuspMismatch(usize),
    #[error("switch at event {0} would cross the two paths of one pair")]
    SwitchOfPartneredStrands(usize),
    #[error("partnered strands cross transversally at event {0}")]
    PartneredStrandsCross(usize),
}

/// The involution on strand positions in one zone: `tau[p-1]` is the partner
/// position of strand `p`.
pub type Involution = Vec<usize>;

/// Run the left-to-right sweep of a switch set over the front, producing the
/// per-zone involution, or the first structural failure.
///
/// A left cusp adds the pair (k, k+1); a non-switched crossing conjugates the
/// involution by the transposition (k, k+1); a switch leaves it unchanged; a
/// right cusp requires its two strands to be partners and removes them. The
/// two paths of one pair may never meet at a crossing, switched or not.
pub fn sweep_involutions(
    front: &FrontDiagram,
    switches: &BTreeSet<usize>,
) -> Result<Vec<Involution>, SweepError> {
    for &s in switches {
        if front.events().get(s).map(|e| e.kind) != Some(EventKind::Crossing) {
            return Err(SweepError::SwitchAtNonCrossing(s));
        }
    }
    let mut tau: Vec<usize> = Vec::new();
    let mut zones = Vec::with_capacity(front.zones());
    zones.push(tau.clone());
    for (e, ev) in front.events().iter().enumerate() {
        let k = ev.pos;
        match ev.kind {
            EventKind::LeftCusp => {
                // shift partners at positions >= k up by two, insert the pair
                tau.iter_mut().for_each(|p| {
                    if *p >= k {
                        *p += 2;
                    }
                });
                tau.insert(k - 1, k + 1);
                tau.insert(k, k);
            }
            EventKind::Crossing => {
                if tau[k - 1] == k + 1 {
                    return Err(if switches.contains(&e) {
                        SweepError::SwitchOfPartneredStrands(e)
                    } else {
                        SweepError::PartneredStrandsCross(e)
                    });
                }
                if !switches.contains(&e) {
                    let (a, b) = (tau[k - 1], tau[k]);
                    tau[k - 1] = b;
                    tau[k] = a;
                    tau[a - 1] = k + 1;
                    tau[b - 1] = k;
                }
            }
            EventKind::RightCusp => {
                if tau[k - 1] != k + 1 {
                    return Err(SweepError::RightCuspMismatch(e));
                }
                tau.remove(k);
                tau.remove(k - 1);
                tau.iter_mut().for_each(|p| {
                    if *p > k + 1 {
                        *p -= 2;
                    }
                });
            }
        }
        zones.push(tau.clone());
    }
    Ok(zones)
}

fn cusp_pairing(front: &FrontDiagram, switches: &BTreeSet<usize>) -> Option<Vec<(usize, usize)>> {
    // Track which left cusp owns each current position; a right cusp closes
    // the pair owned by its upper strand.
    let mut owner: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for (e, ev) in front.events().iter().enumerate() {
        let k = ev.pos;
        match ev.kind {
            EventKind::LeftCusp => {
                owner.insert(k - 1, e);
                owner.insert(k, e);
            }
            EventKind::Crossing => {
                if !switches.contains(&e) {
                    owner.swap(k - 1, k);
                }
            }
            EventKind::RightCusp => {
                if owner[k - 1] != owner[k] {
                    return None;
                }
                pairs.push((owner[k - 1], e));
                owner.remove(k);
                owner.remove(k - 1);
            }
        }
    }
    pairs.sort_unstable();
    Some(pairs)
}

impl Ruling {
    /// Assemble a ruling from a switch set, validating it by the sweep.
    pub fn from_switches(
        front: &FrontDiagram,
        switches: BTreeSet<usize>,
    ) -> Result<Ruling, SweepError> {
        sweep_involutions(front, &switches)?;
        let pairing = cusp_pairing(front, &switches)
            .expect("sweep succeeded, so paths close in matched cusps");
        Ok(Ruling { switches, pairing })
    }
}

/// Normality of every switch: with partners a = tau(k), b = tau(k+1) read
/// just before the crossing (smaller position = higher strand), a switch is
/// normal when the partner heights interleave the crossing as
/// a < k and b > k+1, or b < a < k, or a > b > k+1.
pub fn is_normal(front: &FrontDiagram, ruling: &Ruling) -> bool {
    let zones = match sweep_involutions(front, &ruling.switches) {
        Ok(z) => z,
        Err(_) => return false,
    };
    ruling.switches.iter().all(|&e| {
        let k = front.events()[e].pos;
        let tau = &zones[e];
        let a = tau[k - 1];
        let b = tau[k];
        (a < k && b > k + 1) || (b < a && a < k) || (a > b && b > k + 1)
    })
}

/// Gradedness: every switch sits at a crossing whose degree vanishes mod rho
/// (rho = 0 demands degree exactly 0 in the finest available grading).
pub fn is_graded(
    front: &FrontDiagram,
    ruling: &Ruling,
    rho: i64,
    potential: &MaslovPotential,
) -> bool {
    ruling.switches.iter().all(|&e| {
        let deg = potential.crossing_degree(front, e);
        degree_vanishes(deg, rho, potential.modulus())
    })
}

/// Whether a degree counts as 0 for rho-graded objects. For rho = 0 the
/// degree must vanish in the ambient grading (integer, or mod 2|r|); rho = 1
/// accepts everything; otherwise the degree must be divisible by rho.
pub fn degree_vanishes(degree: i64, rho: i64, modulus: i64) -> bool {
    if rho == 0 {
        reduce_degree(degree, modulus) == 0
    } else {
        degree.rem_euclid(rho) == 0
    }
}

/// Filters for `enumerate_rulings`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RulingFilter {
    pub normal: bool,
    /// Some(rho): keep only rho-graded rulings.
    pub graded: Option<i64>,
}

/// All rulings of the front passing the filter, in lexicographic order on
/// switch sets. Depth-first sweep, branching switch / no-switch at each
/// crossing and pruning invalid states as early as possible.
pub fn enumerate_rulings(
    front: &FrontDiagram,
    filter: RulingFilter,
    potential: Option<&MaslovPotential>,
) -> Vec<Ruling> {
    let computed;
    let mu = match (filter.graded, potential) {
        (Some(_), Some(p)) => Some(p),
        (Some(_), None) => {
            computed = front.maslov_potential(None);
            Some(&computed)
        }
        _ => None,
    };

    struct Dfs<'a> {
        front: &'a FrontDiagram,
        filter: RulingFilter,
        mu: Option<&'a MaslovPotential>,
        out: Vec<BTreeSet<usize>>,
    }
    impl Dfs<'_> {
        fn go(&mut self, e: usize, tau: &mut Involution, switches: &mut BTreeSet<usize>) {
            let Some(ev) = self.front.events().get(e) else {
                self.out.push(switches.clone());
                return;
            };
            let k = ev.pos;
            match ev.kind {
                EventKind::LeftCusp => {
                    let saved = tau.clone();
                    tau.iter_mut().for_each(|p| {
                        if *p >= k {
                            *p += 2;
                        }
                    });
                    tau.insert(k - 1, k + 1);
                    tau.insert(k, k);
                    tau[k - 1] = k + 1;
                    tau[k] = k;
                    self.go(e + 1, tau, switches);
                    *tau = saved;
                }
                EventKind::RightCusp => {
                    if tau[k - 1] != k + 1 {
                        return;
                    }
                    let saved = tau.clone();
                    tau.remove(k);
                    tau.remove(k - 1);
                    tau.iter_mut().for_each(|p| {
                        if *p > k + 1 {
                            *p -= 2;
                        }
                    });
                    self.go(e + 1, tau, switches);
                    *tau = saved;
                }
                EventKind::Crossing => {
                    if tau[k - 1] == k + 1 {
                        return; // partners may not meet at a crossing
                    }
                    // branch 1: not a switch; conjugate by (k, k+1)
                    {
                        let (a, b) = (tau[k - 1], tau[k]);
                        tau[k - 1] = b;
                        tau[k] = a;
                        tau[a - 1] = k + 1;
                        tau[b - 1] = k;
                        self.go(e + 1, tau, switches);
                        let (a, b) = (tau[k - 1], tau[k]);
                        tau[k - 1] = b;
                        tau[k] = a;
                        tau[a - 1] = k + 1;
                        tau[b - 1] = k;
                    }
                    // branch 2: switch, if the filters allow it here
                    let (a, b) = (tau[k - 1], tau[k]);
                    let normal_ok = !self.filter.normal
                        || (a < k && b > k + 1)
                        || (b < a && a < k)
                        || (a > b && b > k + 1);
                    let graded_ok = match (self.filter.graded, self.mu) {
                        (Some(rho), Some(mu)) => {
                            degree_vanishes(mu.crossing_degree(self.front, e), rho, mu.modulus())
                        }
                        _ => true,
                    };
                    if normal_ok && graded_ok {
                        switches.insert(e);
                        self.go(e + 1, tau, switches);
                        switches.remove(&e);
                    }
                }
            }
        }
    }

    let mut dfs = Dfs {
        front,
        filter,
        mu,
        out: Vec::new(),
    };
    dfs.go(0, &mut Vec::new(), &mut BTreeSet::new());
    let mut sets = dfs.out;
    sets.sort_by(|a, b| {
        a.iter()
            .collect::<Vec<_>>()
            .cmp(&b.iter().collect::<Vec<_>>())
    });
    sets.into_iter()
        .map(|s| Ruling::from_switches(front, s).expect("sweep validated during enumeration"))
        .collect()
}

/// Laurent polynomial in z with nonnegative integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingPolynomial {
    /// exponent -> coefficient
    pub coefficients: BTreeMap<i64, u64>,
}

impl RulingPolynomial {
    pub fn add_term(&mut self, exponent: i64) {
        *self.coefficients.entry(exponent).or_insert(0) += 1;
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl std::fmt::Display for RulingPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (&e, &c) in self.coefficients.iter().rev() {
            let body = match e {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{e}"),
            };
            let t = match (c, body.is_empty()) {
                (1, false) => body,
                (_, false) => format!("{c}{body}"),
                (_, true) => format!("{c}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// The rho-graded ruling polynomial: sum of z^{j(r)} over rho-graded normal
/// rulings, with j(r) = #switches - #right cusps + 1.
pub fn ruling_polynomial(
    front: &FrontDiagram,
    rho: i64,
    potential: Option<&MaslovPotential>,
) -> RulingPolynomial {
    let rulings = enumerate_rulings(
        front,
        RulingFilter {
            normal: true,
            graded: Some(rho),
        },
        potential,
    );
    let right_cusps = front.right_cusp_count() as i64;
    let mut poly = RulingPolynomial::default();
    for r in &rulings {
        poly.add_term(r.switches.len() as i64 - right_cusps + 1);
    }
    poly
}
