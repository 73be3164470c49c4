//! Build a Morse movie realizing a graded normal ruling.
//!
//! Away from switches every slice is in pure-pair form: each ruling pair is
//! joined by exactly one trajectory, from its upper point (index one higher)
//! down to its partner. Cusps create and remove pairs; non-switch crossings
//! transpose positions. A switch keeps the pairing but needs handle slides
//! around the value crossing to return the complex to pure-pair form; which
//! slides occur depends on where the two partners sit relative to the switch.

use thiserror::Error;

use crate::front::{EventKind, FrontDiagram, MaslovPotential};
use crate::ruling::{is_graded, is_normal, sweep_involutions, Ruling};
use crate::z2::Z2Matrix;

use super::{MorseMovie, MorseSlice, MovieEvent};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildMovieError {
    #[error("ruling is not normal")]
    NotNormal,
    #[error("ruling is not graded")]
    NotGraded,
    #[error("an integer Maslov potential is required (every rotation number 0)")]
    NoIntegerPotential,
    #[error("ruling does not sweep")]
    InvalidRuling,
}

fn pure_slice(tau: &[usize], lambda: &[i64]) -> MorseSlice {
    let n = tau.len();
    let mut eta = Z2Matrix::zero(n, n);
    for a in 1..=n {
        let b = tau[a - 1];
        if a < b {
            debug_assert_eq!(
                lambda[a - 1],
                lambda[b - 1] + 1,
                "upper partner must have index one above its mate"
            );
            eta.set(a - 1, b - 1, true);
        }
    }
    MorseSlice::new(lambda.to_vec(), eta).expect("pure-pair slices satisfy all invariants")
}

/// Movie whose slices realize the ruling: the non-singular slices are in
/// pure-pair form for the ruling's involution, and the events spell the front
/// word with handle slides inserted around each switch.
pub fn ruling_to_movie(
    front: &FrontDiagram,
    ruling: &Ruling,
    potential: &MaslovPotential,
) -> Result<MorseMovie, BuildMovieError> {
    if potential.modulus() != 0 {
        return Err(BuildMovieError::NoIntegerPotential);
    }
    let zones =
        sweep_involutions(front, &ruling.switches).map_err(|_| BuildMovieError::InvalidRuling)?;
    if !is_normal(front, ruling) {
        return Err(BuildMovieError::NotNormal);
    }
    if !is_graded(front, ruling, 0, potential) {
        return Err(BuildMovieError::NotGraded);
    }

    let mut slices = vec![MorseSlice::empty()];
    let mut events = Vec::new();
    let push = |ev: MovieEvent,
                slice: MorseSlice,
                events: &mut Vec<MovieEvent>,
                slices: &mut Vec<MorseSlice>| {
        events.push(ev);
        slices.push(slice);
    };

    for (e, ev) in front.events().iter().enumerate() {
        let k = ev.pos;
        let tau_after = &zones[e + 1];
        let lambda_after: Vec<i64> = potential.zone(e + 1).to_vec();
        match ev.kind {
            EventKind::LeftCusp => {
                let index = potential.value(e + 1, k + 1);
                push(
                    MovieEvent::Birth { pos: k, index },
                    pure_slice(tau_after, &lambda_after),
                    &mut events,
                    &mut slices,
                );
            }
            EventKind::RightCusp => {
                push(
                    MovieEvent::Death { pos: k },
                    pure_slice(tau_after, &lambda_after),
                    &mut events,
                    &mut slices,
                );
            }
            EventKind::Crossing if !ruling.switches.contains(&e) => {
                push(
                    MovieEvent::CrossValues { pos: k },
                    pure_slice(tau_after, &lambda_after),
                    &mut events,
                    &mut slices,
                );
            }
            EventKind::Crossing => {
                // A switch: the involution is unchanged, but restoring
                // pure-pair form costs handle slides. Partners of the
                // crossing strands, read before the crossing:
                let tau = &zones[e];
                let (pa, pb) = (tau[k - 1], tau[k]);
                let both_same_side = (pa < k && pb < k) || (pa > k + 1 && pb > k + 1);
                let mut seq = vec![
                    MovieEvent::HandleSlide {
                        pos: k,
                        pos2: k + 1,
                    },
                    MovieEvent::CrossValues { pos: k },
                    MovieEvent::HandleSlide {
                        pos: k,
                        pos2: k + 1,
                    },
                ];
                if both_same_side {
                    // both partners above or both below: one more slide
                    // between the partners themselves finishes the cleanup
                    debug_assert!(pb < pa, "normality orders the partners");
                    seq.push(MovieEvent::HandleSlide { pos: pb, pos2: pa });
                }
                let mut cur = slices.last().unwrap().clone();
                for ev in seq {
                    cur = match ev {
                        MovieEvent::HandleSlide { pos, pos2 } => cur.handle_slide(pos, pos2),
                        MovieEvent::CrossValues { pos } => cur.cross_values(pos),
                        _ => unreachable!(),
                    };
                    push(ev, cur.clone(), &mut events, &mut slices);
                }
                debug_assert_eq!(
                    slices.last().unwrap(),
                    &pure_slice(tau_after, &lambda_after),
                    "switch sequence must restore pure-pair form"
                );
            }
        }
    }

    let movie = MorseMovie { slices, events };
    debug_assert_eq!(super::validate_movie(&movie), Ok(()));
    Ok(movie)
}
