//! The splashed Chekanov-Eliashberg DGA of a front diagram.
//!
//! Splashing cuts the resolved diagram into laminated zones separated by
//! inserts (one per front event, plus optional trivial "parallel" inserts)
//! and adds a pair of crossings `x^-, x^+` for every pair of strands in every
//! zone. The differential then becomes completely explicit: polygons are
//! trapped between consecutive zones, and `d` of a zone-`m` generator only
//! involves zones `m-1`, `m` and the insert between them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::front::{EventKind, FrontDiagram, MaslovPotential};
use crate::z2::{reduce_degree, Dga, Generator, Z2Poly};

/// One insert of the splash decomposition, separating two laminated zones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum InsertKind {
    #[serde(rename = "L")]
    LeftCusp { pos: usize },
    #[serde(rename = "R")]
    RightCusp { pos: usize },
    #[serde(rename = "X")]
    Crossing { pos: usize },
    #[serde(rename = "parallel")]
    Parallel,
}

/// Where to put splashes: the sequence of inserts, whose non-parallel entries
/// must reproduce the front's event word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplashPlan {
    inserts: Vec<InsertKind>,
}

impl SplashPlan {
    /// Default plan: one splashed zone per front event.
    pub fn from_front(front: &FrontDiagram) -> Self {
        SplashPlan {
            inserts: front
                .events()
                .iter()
                .map(|e| event_insert(e.kind, e.pos))
                .collect(),
        }
    }

    /// Plan with an extra parallel insert after each listed event index
    /// (repeats allowed, yielding several parallel zones in a row).
    pub fn with_parallels(front: &FrontDiagram, after_events: &[usize]) -> Self {
        let mut inserts = Vec::new();
        for (e, ev) in front.events().iter().enumerate() {
            inserts.push(event_insert(ev.kind, ev.pos));
            for _ in after_events.iter().filter(|&&a| a == e) {
                inserts.push(InsertKind::Parallel);
            }
        }
        SplashPlan { inserts }
    }

    /// Arbitrary insert sequence; panics unless the non-parallel inserts
    /// match the front's events in order.
    pub fn new(front: &FrontDiagram, inserts: Vec<InsertKind>) -> Self {
        let evs: Vec<InsertKind> = inserts
            .iter()
            .copied()
            .filter(|i| !matches!(i, InsertKind::Parallel))
            .collect();
        let want: Vec<InsertKind> = front
            .events()
            .iter()
            .map(|e| event_insert(e.kind, e.pos))
            .collect();
        assert_eq!(
            evs, want,
            "plan inserts do not spell the front's event word"
        );
        SplashPlan { inserts }
    }

    pub fn inserts(&self) -> &[InsertKind] {
        &self.inserts
    }
}

fn event_insert(kind: EventKind, pos: usize) -> InsertKind {
    match kind {
        EventKind::LeftCusp => InsertKind::LeftCusp { pos },
        EventKind::RightCusp => InsertKind::RightCusp { pos },
        EventKind::Crossing => InsertKind::Crossing { pos },
    }
}

/// The splashed DGA together with its zone/insert bookkeeping.
///
/// Generators are named `xp_m_i_j`, `xm_m_i_j` (the `+`/`-` splash crossings
/// of strands `i < j` in zone `m`), `y_m` (crossing insert `m`), and `z_m`
/// (right-cusp insert `m`); zones and inserts are numbered from 1, with
/// insert `m` directly to the left of zone `m`.
#[derive(Clone, Debug)]
pub struct SplashedDga {
    dga: Dga,
    front: FrontDiagram,
    inserts: Vec<InsertKind>,
    /// strand count of zone m (index m; zone 0 is the empty zone at the left)
    zone_strands: Vec<usize>,
    /// Maslov potential of each strand per zone
    zone_potential: Vec<Vec<i64>>,
    /// front event index of each insert (None for parallel inserts)
    insert_event: Vec<Option<usize>>,
    xp: BTreeMap<(usize, usize, usize), u32>,
    xm: BTreeMap<(usize, usize, usize), u32>,
    y: BTreeMap<usize, u32>,
    z: BTreeMap<usize, u32>,
}

impl SplashedDga {
    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn front(&self) -> &FrontDiagram {
        &self.front
    }

    pub fn inserts(&self) -> &[InsertKind] {
        &self.inserts
    }

    pub fn zone_count(&self) -> usize {
        self.inserts.len()
    }

    pub fn zone_strands(&self, m: usize) -> usize {
        self.zone_strands[m]
    }

    pub fn zone_potential(&self, m: usize) -> &[i64] {
        &self.zone_potential[m]
    }

    pub fn insert_event(&self, m: usize) -> Option<usize> {
        self.insert_event[m - 1]
    }

    pub fn xp_id(&self, m: usize, i: usize, j: usize) -> u32 {
        self.xp[&(m, i, j)]
    }

    pub fn xm_id(&self, m: usize, i: usize, j: usize) -> u32 {
        self.xm[&(m, i, j)]
    }

    pub fn y_id(&self, m: usize) -> Option<u32> {
        self.y.get(&m).copied()
    }

    pub fn z_id(&self, m: usize) -> Option<u32> {
        self.z.get(&m).copied()
    }

    /// Map generator name -> degree, in generator order.
    pub fn degree_table(&self) -> BTreeMap<String, i64> {
        self.dga
            .generators()
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect()
    }
}

/// Build the splashed DGA over the given plan. The potential defaults to the
/// min-0 normalization; pass one explicitly to control component shifts.
pub fn splash_dga(
    front: &FrontDiagram,
    plan: &SplashPlan,
    potential: Option<&MaslovPotential>,
) -> SplashedDga {
    let computed;
    let mu = match potential {
        Some(p) => p,
        None => {
            computed = front.maslov_potential(None);
            &computed
        }
    };
    let modulus = mu.modulus();

    // Zone profile over the plan: parallel inserts repeat the previous zone.
    let m_count = plan.inserts.len();
    let mut zone_strands = vec![0usize; m_count + 1];
    let mut zone_potential: Vec<Vec<i64>> = vec![Vec::new(); m_count + 1];
    let mut insert_event = vec![None; m_count];
    {
        let mut front_zone = 0usize;
        let mut event = 0usize;
        for (idx, ins) in plan.inserts.iter().enumerate() {
            if !matches!(ins, InsertKind::Parallel) {
                front_zone += 1;
                insert_event[idx] = Some(event);
                event += 1;
            }
            zone_strands[idx + 1] = front.strands(front_zone);
            zone_potential[idx + 1] = mu.zone(front_zone).to_vec();
        }
        assert_eq!(event, front.events().len());
    }

    // Generator table, in deterministic order: per insert its y/z generator,
    // then the zone's x^+ and x^- crossings.
    let mut generators = Vec::new();
    let mut xp = BTreeMap::new();
    let mut xm = BTreeMap::new();
    let mut y = BTreeMap::new();
    let mut z = BTreeMap::new();
    let red = |d: i64| reduce_degree(d, modulus);
    for m in 1..=m_count {
        match plan.inserts[m - 1] {
            InsertKind::Crossing { pos } => {
                let deg = red(zone_potential[m - 1][pos - 1] - zone_potential[m - 1][pos]);
                y.insert(m, generators.len() as u32);
                generators.push(Generator {
                    name: format!("y_{m}"),
                    degree: deg,
                });
            }
            InsertKind::RightCusp { .. } => {
                z.insert(m, generators.len() as u32);
                generators.push(Generator {
                    name: format!("z_{m}"),
                    degree: red(1),
                });
            }
            _ => {}
        }
        let n = zone_strands[m];
        for i in 1..=n {
            for j in i + 1..=n {
                let diff = zone_potential[m][i - 1] - zone_potential[m][j - 1];
                xp.insert((m, i, j), generators.len() as u32);
                generators.push(Generator {
                    name: format!("xp_{m}_{i}_{j}"),
                    degree: red(diff - 1),
                });
                xm.insert((m, i, j), generators.len() as u32);
                generators.push(Generator {
                    name: format!("xm_{m}_{i}_{j}"),
                    degree: red(diff),
                });
            }
        }
    }

    let gen_count = generators.len();
    let mut differential = vec![Z2Poly::zero(); gen_count];

    let xp_gen = |m: usize, i: usize, j: usize| Z2Poly::gen(xp[&(m, i, j)]);
    let xm_gen = |m: usize, i: usize, j: usize| Z2Poly::gen(xm[&(m, i, j)]);

    for m in 1..=m_count {
        let n = zone_strands[m];

        // d x^+ = (X^+)^2 within the zone
        for i in 1..=n {
            for j in i + 1..=n {
                let mut acc = Z2Poly::zero();
                for s in i + 1..j {
                    acc.add_assign(&xp_gen(m, i, s).mul(&xp_gen(m, s, j)));
                }
                differential[xp[&(m, i, j)] as usize] = acc;
            }
        }

        // The insert determines d of y/z and the previous-zone correction
        // terms entering d x^-.
        match plan.inserts[m - 1] {
            InsertKind::Crossing { pos: k } => {
                differential[y[&m] as usize] = xp_gen(m - 1, k, k + 1);
                // conjugated previous-zone matrix: swap the two crossing
                // strands and pick up y-terms along row k+1 and column k
                let bar = |w: usize| {
                    if w == k {
                        k + 1
                    } else if w == k + 1 {
                        k
                    } else {
                        w
                    }
                };
                let tilde = |u: usize, v: usize| -> Z2Poly {
                    if (u, v) == (k, k + 1) {
                        return Z2Poly::zero();
                    }
                    let mut t = xp_gen(m - 1, bar(u).min(bar(v)), bar(u).max(bar(v)));
                    debug_assert!(bar(u) < bar(v));
                    if u == k + 1 {
                        t.add_assign(&Z2Poly::gen(y[&m]).mul(&xp_gen(m - 1, u, v)));
                    }
                    if v == k {
                        t.add_assign(&xp_gen(m - 1, u, v).mul(&Z2Poly::gen(y[&m])));
                    }
                    t
                };
                for i in 1..=n {
                    for j in i + 1..=n {
                        let mut acc = xp_gen(m, i, j);
                        for s in i + 1..j {
                            acc.add_assign(&xp_gen(m, i, s).mul(&xm_gen(m, s, j)));
                            acc.add_assign(&xm_gen(m, i, s).mul(&tilde(s, j)));
                        }
                        acc.add_assign(&tilde(i, j));
                        differential[xm[&(m, i, j)] as usize] = acc;
                    }
                }
            }
            InsertKind::LeftCusp { pos: k } => {
                // zone m-1 strands carry the zone-m labels with k, k+1 omitted
                let unshift = |w: usize| if w < k { w } else { w - 2 };
                let tilde = |u: usize, v: usize| -> Z2Poly {
                    let u_new = u == k || u == k + 1;
                    let v_new = v == k || v == k + 1;
                    match (u_new, v_new) {
                        (false, false) => xp_gen(m - 1, unshift(u), unshift(v)),
                        (true, true) if (u, v) == (k, k + 1) => Z2Poly::one(),
                        _ => Z2Poly::zero(),
                    }
                };
                for i in 1..=n {
                    for j in i + 1..=n {
                        let mut acc = xp_gen(m, i, j);
                        for s in i + 1..j {
                            acc.add_assign(&xp_gen(m, i, s).mul(&xm_gen(m, s, j)));
                            acc.add_assign(&xm_gen(m, i, s).mul(&tilde(s, j)));
                        }
                        acc.add_assign(&tilde(i, j));
                        differential[xm[&(m, i, j)] as usize] = acc;
                    }
                }
            }
            InsertKind::RightCusp { pos: k } => {
                differential[z[&m] as usize] = Z2Poly::one().add(&xp_gen(m - 1, k, k + 1));
                // zone m strands carry the zone-(m-1) labels with k, k+1
                // omitted; spanning pairs pick up corrections through the
                // cusp, including the z^2 term
                let np = zone_strands[m - 1];
                let zm = Z2Poly::gen(z[&m]);
                let tilde = |u: usize, v: usize| -> Z2Poly {
                    let mut t = xp_gen(m - 1, u, v);
                    if u < k && v > k + 1 {
                        t.add_assign(&xp_gen(m - 1, u, k + 1).mul(&xp_gen(m - 1, k, v)));
                        t.add_assign(&xp_gen(m - 1, u, k).mul(&zm).mul(&xp_gen(m - 1, k, v)));
                        t.add_assign(&xp_gen(m - 1, u, k + 1).mul(&zm).mul(&xp_gen(
                            m - 1,
                            k + 1,
                            v,
                        )));
                        t.add_assign(&xp_gen(m - 1, u, k).mul(&zm).mul(&zm).mul(&xp_gen(
                            m - 1,
                            k + 1,
                            v,
                        )));
                    }
                    t
                };
                let shift = |w: usize| if w < k { w } else { w + 2 };
                debug_assert_eq!(n + 2, np);
                for i in 1..=n {
                    for j in i + 1..=n {
                        let (li, lj) = (shift(i), shift(j));
                        let mut acc = xp_gen(m, i, j);
                        for ls in li + 1..lj {
                            if ls == k || ls == k + 1 {
                                continue;
                            }
                            let s = if ls < k { ls } else { ls - 2 };
                            acc.add_assign(&xp_gen(m, i, s).mul(&xm_gen(m, s, j)));
                            acc.add_assign(&xm_gen(m, i, s).mul(&tilde(ls, lj)));
                        }
                        acc.add_assign(&tilde(li, lj));
                        differential[xm[&(m, i, j)] as usize] = acc;
                    }
                }
            }
            InsertKind::Parallel => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        let mut acc = xp_gen(m, i, j);
                        acc.add_assign(&xp_gen(m - 1, i, j));
                        for s in i + 1..j {
                            acc.add_assign(&xp_gen(m, i, s).mul(&xm_gen(m, s, j)));
                            acc.add_assign(&xm_gen(m, i, s).mul(&xp_gen(m - 1, s, j)));
                        }
                        differential[xm[&(m, i, j)] as usize] = acc;
                    }
                }
            }
        }
    }

    SplashedDga {
        dga: Dga::new(generators, differential, modulus),
        front: front.clone(),
        inserts: plan.inserts.clone(),
        zone_strands,
        zone_potential,
        insert_event,
        xp,
        xm,
        y,
        z,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::z2::dga_check;

    const TREFOIL: &str = "L1 L3 X2 X2 X2 R1 R1";

    fn build(word: &str) -> SplashedDga {
        let f = FrontDiagram::parse(word).unwrap();
        splash_dga(&f, &SplashPlan::from_front(&f), None)
    }

    #[test]
    fn unknot_generators_and_differentials() {
        let s = build("L1 R1");
        let dga = s.dga();
        assert_eq!(dga.len(), 3);
        let names: Vec<&str> = dga.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["xp_1_1_2", "xm_1_1_2", "z_2"]);
        let degs: Vec<i64> = dga.generators().iter().map(|g| g.degree).collect();
        assert_eq!(degs, vec![0, 1, 1]);

        let xp = dga.id_of("xp_1_1_2").unwrap();
        let xm = dga.id_of("xm_1_1_2").unwrap();
        let z = dga.id_of("z_2").unwrap();
        assert!(dga.d(xp).is_zero());
        assert_eq!(*dga.d(xm), Z2Poly::one().add(&Z2Poly::gen(xp)));
        assert_eq!(*dga.d(z), Z2Poly::one().add(&Z2Poly::gen(xp)));
        assert_eq!(dga_check(dga), Ok(()));
    }

    #[test]
    fn trefoil_generator_count_and_d_squared() {
        let s = build(TREFOIL);
        // zones 2,4,4,4,4,2 strands: 2 * (1+6+6+6+6+1) x's + 3 y's + 2 z's
        assert_eq!(s.dga().len(), 57);
        assert_eq!(dga_check(s.dga()), Ok(()));
    }

    #[test]
    fn degree_table_examples() {
        let unknot = build("L1 R1");
        let degs = unknot.degree_table();
        assert_eq!(degs["xp_1_1_2"], 0);
        assert_eq!(degs["z_2"], 1);
        let trefoil = build(TREFOIL);
        let degs = trefoil.degree_table();
        // every right-cusp generator has degree 1; crossing generators sit
        // at degree-0 front crossings here
        assert_eq!(degs["z_6"], 1);
        assert_eq!(degs["z_7"], 1);
        for y in ["y_3", "y_4", "y_5"] {
            assert_eq!(degs[y], 0);
        }
    }

    #[test]
    fn crossing_insert_dy_is_previous_zone_entry() {
        let s = build(TREFOIL);
        // first crossing is insert 3 (1-based): d y_3 = xp_2_2_3
        let y3 = s.dga().id_of("y_3").unwrap();
        let expect = Z2Poly::gen(s.dga().id_of("xp_2_2_3").unwrap());
        assert_eq!(*s.dga().d(y3), expect);
    }

    #[test]
    fn corpus_fronts_pass_dga_check() {
        for word in [
            "L1 R1",
            TREFOIL,
            "L1 L3 R2 R1",
            "L1 L1 R1 R1",
            "L1 L3 X2 X2 X2 X2 X2 R1 R1",
        ] {
            let s = build(word);
            assert_eq!(
                dga_check(s.dga()),
                Ok(()),
                "d^2 != 0 or wrong degree for {word}"
            );
        }
    }

    #[test]
    fn parallel_inserts_preserve_d_squared() {
        let f = FrontDiagram::parse(TREFOIL).unwrap();
        let plan = SplashPlan::with_parallels(&f, &[1, 3, 3]);
        let s = splash_dga(&f, &plan, None);
        assert_eq!(s.zone_count(), 10);
        assert_eq!(dga_check(s.dga()), Ok(()));
    }

    #[test]
    fn zigzag_modulus_two_degrees() {
        let s = build("L1 L3 R2 R1");
        assert_eq!(s.dga().modulus(), 2);
        assert_eq!(dga_check(s.dga()), Ok(()));
    }

    /// The scalar formulas match the matrix form
    /// dX^- = X^+ (I + X^-) + (I + X^-) Xtilde^+ at a crossing insert, with
    /// the conjugating block [[0,1],[1,y]].
    #[test]
    fn crossing_insert_matrix_form_cross_check() {
        let s = build(TREFOIL);
        let dga = s.dga();
        for m in 1..=s.zone_count() {
            let InsertKind::Crossing { pos: k } = s.inserts()[m - 1] else {
                continue;
            };
            let n = s.zone_strands(m);
            let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
            // entries of the n x n polynomial matrices
            let mut xplus = vec![Z2Poly::zero(); n * n];
            let mut xminus = vec![Z2Poly::zero(); n * n];
            let mut id = vec![Z2Poly::zero(); n * n];
            let mut a = vec![Z2Poly::zero(); n * n];
            let mut a_inv = vec![Z2Poly::zero(); n * n];
            let mut xhat_prev = vec![Z2Poly::zero(); n * n];
            for i in 1..=n {
                id[idx(i, i)] = Z2Poly::one();
                for j in i + 1..=n {
                    xplus[idx(i, j)] = Z2Poly::gen(s.xp_id(m, i, j));
                    xminus[idx(i, j)] = Z2Poly::gen(s.xm_id(m, i, j));
                    if (i, j) != (k, k + 1) {
                        xhat_prev[idx(i, j)] = Z2Poly::gen(s.xp_id(m - 1, i, j));
                    }
                }
            }
            let y = Z2Poly::gen(s.y_id(m).unwrap());
            for i in 1..=n {
                if i != k && i != k + 1 {
                    a[idx(i, i)] = Z2Poly::one();
                    a_inv[idx(i, i)] = Z2Poly::one();
                }
            }
            a[idx(k, k + 1)] = Z2Poly::one();
            a[idx(k + 1, k)] = Z2Poly::one();
            a[idx(k + 1, k + 1)] = y.clone();
            a_inv[idx(k, k + 1)] = Z2Poly::one();
            a_inv[idx(k + 1, k)] = Z2Poly::one();
            a_inv[idx(k, k)] = y.clone();

            let matmul = |p: &[Z2Poly], q: &[Z2Poly]| -> Vec<Z2Poly> {
                let mut out = vec![Z2Poly::zero(); n * n];
                for i in 1..=n {
                    for j in 1..=n {
                        for t in 1..=n {
                            out[idx(i, j)] = out[idx(i, j)].add(&p[idx(i, t)].mul(&q[idx(t, j)]));
                        }
                    }
                }
                out
            };
            let matadd = |p: &[Z2Poly], q: &[Z2Poly]| -> Vec<Z2Poly> {
                p.iter().zip(q).map(|(a, b)| a.add(b)).collect()
            };
            let tilde = matmul(&matmul(&a, &xhat_prev), &a_inv);
            let i_plus_xm = matadd(&id, &xminus);
            let dxm = matadd(&matmul(&xplus, &i_plus_xm), &matmul(&i_plus_xm, &tilde));
            for i in 1..=n {
                for j in i + 1..=n {
                    assert_eq!(
                        dxm[idx(i, j)],
                        *dga.d(s.xm_id(m, i, j)),
                        "matrix form mismatch at zone {m} entry ({i},{j})"
                    );
                }
            }
        }
    }
}
