//! Augmentations of splashed DGAs: verification, structured enumeration,
//! linearized homology, and the zone-by-zone extraction of a normal ruling
//! from an augmentation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ruling::{degree_vanishes, is_graded, is_normal, Ruling};
use crate::splash::{InsertKind, SplashedDga};
use crate::z2::{barannikov_pairing, homology_dims, Dga, GradedComplex, Z2Matrix};

/// A Z2 assignment on the generators of a DGA, with its gradedness contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    /// value per generator, indexed like the DGA's generator table
    pub values: Vec<u8>,
    /// rho-graded support promised by the producer (0 = graded, 1 = ungraded)
    pub rho: i64,
}

impl Augmentation {
    pub fn value_of(&self, dga: &Dga, name: &str) -> Option<u8> {
        dga.id_of(name).map(|id| self.values[id as usize])
    }

    /// Wire form: only the generators with value 1, by name.
    pub fn to_wire(&self, dga: &Dga) -> AugmentationWire {
        let values = dga
            .generators()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.values[*i] == 1)
            .map(|(_, g)| (g.name.clone(), 1u8))
            .collect();
        AugmentationWire {
            values,
            rho: self.rho,
        }
    }

    pub fn from_wire(wire: &AugmentationWire, dga: &Dga) -> Result<Self, AugmentationError> {
        let mut values = vec![0u8; dga.len()];
        for (name, &v) in &wire.values {
            let id = dga
                .id_of(name)
                .ok_or_else(|| AugmentationError::UnknownGenerator(name.clone()))?;
            values[id as usize] = v & 1;
        }
        Ok(Augmentation {
            values,
            rho: wire.rho,
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AugmentationWire {
    pub values: BTreeMap<String, u8>,
    #[serde(default)]
    pub rho: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AugmentationError {
    #[error("eps(d {0}) = 1, so eps does not vanish on the image of d")]
    NotClosed(String),
    #[error("generator {0} has eps = 1 but its degree is not 0 mod rho")]
    UngradedSupport(String),
    #[error("unknown generator `{0}` in augmentation")]
    UnknownGenerator(String),
    #[error("assignment vector has wrong length")]
    WrongLength,
}

/// Check that the assignment is a unital algebra map killed by d, with
/// rho-graded support.
pub fn verify_augmentation(dga: &Dga, aug: &Augmentation) -> Result<(), AugmentationError> {
    if aug.values.len() != dga.len() {
        return Err(AugmentationError::WrongLength);
    }
    for (i, g) in dga.generators().iter().enumerate() {
        if aug.values[i] == 1 && !degree_vanishes(g.degree, aug.rho, dga.modulus()) {
            return Err(AugmentationError::UngradedSupport(g.name.clone()));
        }
    }
    for (i, g) in dga.generators().iter().enumerate() {
        if dga.d(i as u32).eval(&aug.values) != 0 {
            return Err(AugmentationError::NotClosed(g.name.clone()));
        }
    }
    Ok(())
}

/// All rho-graded augmentations of a splashed DGA, by left-to-right
/// constraint propagation over the zones.
///
/// The free choices are the graded-support entries of each zone's `E^-`
/// matrix and the insert values eps(y), eps(z); the `E^+` matrix of each zone
/// is then forced by conjugation across the insert. A crossing insert demands
/// eps(x^+) = 0 at its entry in the previous zone (from d y) and a right cusp
/// demands 1 (from d z); branches violating either die immediately. Results
/// come out in lexicographic order of the choice bits in sweep order.
pub fn enumerate_augmentations(sdga: &SplashedDga, rho: i64) -> Vec<Augmentation> {
    let dga = sdga.dga();

    struct Sweep<'a> {
        sdga: &'a SplashedDga,
        rho: i64,
        values: Vec<u8>,
        out: Vec<Augmentation>,
    }

    impl Sweep<'_> {
        fn run(&mut self, m: usize, e_prev: &Z2Matrix) {
            let sdga = self.sdga;
            let dga = sdga.dga();
            let rho = self.rho;
            if m > sdga.zone_count() {
                let aug = Augmentation {
                    values: self.values.clone(),
                    rho,
                };
                debug_assert_eq!(verify_augmentation(dga, &aug), Ok(()));
                self.out.push(aug);
                return;
            }
            let allowed = move |id: u32| degree_vanishes(dga.degree(id), rho, dga.modulus());
            let at = |mat: &Z2Matrix, i: usize, j: usize| mat.get(i - 1, j - 1);

            // insert-generator choices, and the conjugand seen across the insert
            let mut branches: Vec<(u8, Z2Matrix)> = Vec::new();
            match sdga.inserts()[m - 1] {
                InsertKind::LeftCusp { pos: k } => {
                    let n = sdga.zone_strands(m);
                    let mut t = Z2Matrix::zero(n, n);
                    for i in 1..=n - 2 {
                        for j in i + 1..=n - 2 {
                            let (li, lj) = (shift(i, k), shift(j, k));
                            if at(e_prev, i, j) {
                                t.set(li - 1, lj - 1, true);
                            }
                        }
                    }
                    t.set(k - 1, k, true);
                    branches.push((0, t));
                }
                InsertKind::RightCusp { pos: k } => {
                    if !at(e_prev, k, k + 1) {
                        return; // eps(d z) = 1 + eps(x^+_{k,k+1}) must vanish
                    }
                    let z_id = sdga.z_id(m).unwrap();
                    let zetas: &[u8] = if allowed(z_id) { &[0, 1] } else { &[0] };
                    let n = sdga.zone_strands(m);
                    let np = sdga.zone_strands(m - 1);
                    for &zeta in zetas {
                        let mut t = Z2Matrix::zero(n, n);
                        for lu in 1..=np {
                            for lv in lu + 1..=np {
                                if lu == k || lu == k + 1 || lv == k || lv == k + 1 {
                                    continue;
                                }
                                let mut v = u8::from(at(e_prev, lu, lv));
                                if lu < k && lv > k + 1 {
                                    let e = |a: usize, b: usize| u8::from(at(e_prev, a, b));
                                    v ^= e(lu, k + 1) & e(k, lv);
                                    v ^= e(lu, k) & zeta & e(k, lv);
                                    v ^= e(lu, k + 1) & zeta & e(k + 1, lv);
                                    v ^= e(lu, k) & zeta & e(k + 1, lv);
                                }
                                if v == 1 {
                                    t.set(unshift(lu, k) - 1, unshift(lv, k) - 1, true);
                                }
                            }
                        }
                        branches.push((zeta, t));
                    }
                }
                InsertKind::Crossing { pos: k } => {
                    if at(e_prev, k, k + 1) {
                        return; // eps(d y) = eps(x^+_{k,k+1}) must vanish
                    }
                    let y_id = sdga.y_id(m).unwrap();
                    let alphas: &[u8] = if allowed(y_id) { &[0, 1] } else { &[0] };
                    let n = sdga.zone_strands(m);
                    for &alpha in alphas {
                        let mut a = Z2Matrix::identity(n);
                        a.set(k - 1, k - 1, false);
                        a.set(k, k, alpha == 1);
                        a.set(k - 1, k, true);
                        a.set(k, k - 1, true);
                        let mut a_inv = Z2Matrix::identity(n);
                        a_inv.set(k, k, false);
                        a_inv.set(k - 1, k - 1, alpha == 1);
                        a_inv.set(k - 1, k, true);
                        a_inv.set(k, k - 1, true);
                        branches.push((alpha, a.mul(e_prev).mul(&a_inv)));
                    }
                }
                InsertKind::Parallel => branches.push((0, e_prev.clone())),
            }

            let insert_id = sdga.y_id(m).or_else(|| sdga.z_id(m));
            let n = sdga.zone_strands(m);
            let free: Vec<(usize, usize)> = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .filter(|&(i, j)| allowed(sdga.xm_id(m, i, j)))
                .collect();

            for (ival, tilde) in branches {
                if let Some(id) = insert_id {
                    self.values[id as usize] = ival;
                }
                // every subset of the free E^- entries, in lexicographic order
                assert!(
                    free.len() < 48,
                    "zone {m} has {} free entries; enumeration is infeasible",
                    free.len()
                );
                let combos = 1u64 << free.len();
                'combo: for mask in 0..combos {
                    let mut b = Z2Matrix::identity(n);
                    for (t, &(i, j)) in free.iter().enumerate() {
                        // bit t of the choice vector is the t-th entry; make
                        // earlier entries the most significant so masks run
                        // in lexicographic order of the bit sequence
                        if mask >> (free.len() - 1 - t) & 1 == 1 {
                            b.set(i - 1, j - 1, true);
                        }
                    }
                    let e_next = b.mul(&tilde).mul(&b.unitriangular_inverse());
                    debug_assert!(e_next.is_strictly_upper() || n == 0);
                    // record eps on this zone's generators, pruning branches
                    // whose forced E^+ leaves the graded support
                    for i in 1..=n {
                        for j in i + 1..=n {
                            let v = e_next.get(i - 1, j - 1);
                            if v && !allowed(sdga.xp_id(m, i, j)) {
                                continue 'combo;
                            }
                            self.values[sdga.xp_id(m, i, j) as usize] = u8::from(v);
                            self.values[sdga.xm_id(m, i, j) as usize] =
                                u8::from(b.get(i - 1, j - 1));
                        }
                    }
                    self.run(m + 1, &e_next);
                }
            }
        }
    }

    let mut sweep = Sweep {
        sdga,
        rho,
        values: vec![0u8; dga.len()],
        out: Vec::new(),
    };
    sweep.run(1, &Z2Matrix::zero(0, 0));
    sweep.out
}

fn shift(p: usize, k: usize) -> usize {
    if p < k {
        p
    } else {
        p + 2
    }
}

fn unshift(p: usize, k: usize) -> usize {
    if p < k {
        p
    } else {
        p - 2
    }
}

/// The linearized complex of an augmentation: basis s + eps(s) over all
/// generators, differential keeping the length-one terms of d after the
/// substitution.
pub fn linearize(dga: &Dga, aug: &Augmentation) -> Result<GradedComplex, AugmentationError> {
    verify_augmentation(dga, aug)?;
    let n = dga.len();
    let mut d = Z2Matrix::zero(n, n);
    for i in 0..n {
        for w in dga.d(i as u32).linearize(&aug.values).words() {
            d.flip(i, w[0] as usize);
        }
    }
    let degrees = dga.generators().iter().map(|g| g.degree).collect();
    Ok(GradedComplex::new(degrees, dga.modulus(), d)
        .expect("linearization of an augmented DGA is a degree -1 complex"))
}

/// Linearized homology dimensions, degree -> dimension.
pub fn linearized_homology(
    dga: &Dga,
    aug: &Augmentation,
) -> Result<BTreeMap<i64, usize>, AugmentationError> {
    Ok(homology_dims(&linearize(dga, aug)?))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RulingFromAugError {
    #[error(transparent)]
    NotAnAugmentation(#[from] AugmentationError),
    #[error("zone {0} complex is not acyclic")]
    NotAcyclic(usize),
    #[error("involutions of zones {0} and {1} are not related by the insert")]
    UnexpectedPairing(usize, usize),
    #[error("extracted ruling is not normal")]
    NormalityViolation,
    #[error("extracted ruling is not rho-graded")]
    GradednessViolation,
}

/// Extract the normal ruling of an augmentation: the canonical pairing of
/// each zone complex (with differential entries eps(x^+)) gives a strand
/// involution per zone; a crossing is a switch exactly when the involution
/// does not change across it. Acyclicity of every zone complex and normality
/// of the result are asserted, not assumed.
pub fn augmentation_to_ruling(
    sdga: &SplashedDga,
    aug: &Augmentation,
) -> Result<Ruling, RulingFromAugError> {
    let dga = sdga.dga();
    verify_augmentation(dga, aug)?;

    // canonical involution per zone (positions 1-based)
    let mut taus: Vec<Vec<usize>> = Vec::with_capacity(sdga.zone_count() + 1);
    taus.push(Vec::new());
    for m in 1..=sdga.zone_count() {
        let n = sdga.zone_strands(m);
        let mut d = Z2Matrix::zero(n, n);
        for i in 1..=n {
            for j in i + 1..=n {
                if aug.values[sdga.xp_id(m, i, j) as usize] == 1 {
                    d.set(i - 1, j - 1, true);
                }
            }
        }
        let pairing = barannikov_pairing(&d).map_err(|_| RulingFromAugError::NotAcyclic(m))?;
        taus.push(pairing.tau.iter().map(|&t| t + 1).collect());
    }

    // relate consecutive involutions across each insert
    let mut switches = std::collections::BTreeSet::new();
    for m in 1..=sdga.zone_count() {
        let (prev, next) = (&taus[m - 1], &taus[m]);
        let ok = match sdga.inserts()[m - 1] {
            InsertKind::LeftCusp { pos: k } => {
                next[k - 1] == k + 1
                    && (1..=prev.len()).all(|p| next[shift(p, k) - 1] == shift(prev[p - 1], k))
            }
            InsertKind::RightCusp { pos: k } => {
                prev[k - 1] == k + 1
                    && (1..=prev.len())
                        .filter(|&p| p != k && p != k + 1)
                        .all(|p| next[unshift(p, k) - 1] == unshift(prev[p - 1], k))
            }
            InsertKind::Parallel => prev == next,
            InsertKind::Crossing { pos: k } => {
                if prev == next {
                    // the paths bounce: a switch at the front crossing
                    let event = sdga
                        .insert_event(m)
                        .expect("crossing inserts map to events");
                    switches.insert(event);
                    true
                } else {
                    // the paths cross: involution conjugated by (k, k+1)
                    let sw = |p: usize| {
                        if p == k {
                            k + 1
                        } else if p == k + 1 {
                            k
                        } else {
                            p
                        }
                    };
                    (1..=prev.len()).all(|p| next[p - 1] == sw(prev[sw(p) - 1]))
                }
            }
        };
        if !ok {
            return Err(RulingFromAugError::UnexpectedPairing(m - 1, m));
        }
    }

    let front = sdga.front();
    let ruling = Ruling::from_switches(front, switches)
        .map_err(|_| RulingFromAugError::UnexpectedPairing(0, 0))?;
    if !is_normal(front, &ruling) {
        return Err(RulingFromAugError::NormalityViolation);
    }
    let mu_zones: Vec<Vec<i64>> = (0..=sdga.zone_count())
        .map(|m| sdga.zone_potential(m).to_vec())
        .collect();
    // the splash plan may repeat front zones; rebuild the front-aligned
    // potential for the gradedness check
    let mut front_mu = vec![Vec::new(); front.zones()];
    let mut fz = 0;
    for (m, zone_mu) in mu_zones.iter().enumerate().skip(1) {
        if sdga.insert_event(m).is_some() {
            fz += 1;
        }
        front_mu[fz] = zone_mu.clone();
    }
    let mu = crate::front::MaslovPotential::from_zones(front_mu, dga.modulus());
    if !is_graded(front, &ruling, aug.rho, &mu) {
        return Err(RulingFromAugError::GradednessViolation);
    }
    Ok(ruling)
}
