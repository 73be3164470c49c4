//! From a movie to its front diagram and to the canonical augmentation of
//! the splashed DGA built over it.

use crate::augment::{verify_augmentation, Augmentation};
use crate::front::{EventKind, FrontDiagram, FrontEvent, MaslovPotential};
use crate::splash::{splash_dga, InsertKind, SplashPlan, SplashedDga};

use super::{validate_movie, MorseMovie, MovieError, MovieEvent};

/// Births, deaths and value crossings become left cusps, right cusps and
/// crossings; handle slides and parallel events leave no trace. The Morse
/// indices of the slices are the Maslov potential of the front.
pub fn movie_to_front(movie: &MorseMovie) -> Result<(FrontDiagram, MaslovPotential), MovieError> {
    validate_movie(movie)?;
    let mut events = Vec::new();
    let mut zones = vec![Vec::new()];
    for (t, ev) in movie.events.iter().enumerate() {
        let kind = match *ev {
            MovieEvent::Birth { pos, .. } => Some((EventKind::LeftCusp, pos)),
            MovieEvent::Death { pos } => Some((EventKind::RightCusp, pos)),
            MovieEvent::CrossValues { pos } => Some((EventKind::Crossing, pos)),
            MovieEvent::HandleSlide { .. } | MovieEvent::Parallel => None,
        };
        if let Some((kind, pos)) = kind {
            events.push(FrontEvent { kind, pos });
            zones.push(movie.slices[t + 1].lambda().to_vec());
        }
    }
    let front =
        FrontDiagram::from_events(events).expect("a valid movie spells a valid closed front");
    let potential = MaslovPotential::from_zones(zones, 0);
    Ok((front, potential))
}

/// Build the splashed DGA with one zone per movie slice and read off the
/// canonical augmentation: eps(x^+) records each slice's incidences,
/// eps(x^-) records the comparison isomorphism across each event (nonzero
/// only at births and handle slides), and eps(y) = eps(z) = 0.
pub fn movie_to_augmentation(
    movie: &MorseMovie,
) -> Result<(SplashedDga, Augmentation), MovieError> {
    let (front, potential) = movie_to_front(movie)?;
    let inserts: Vec<InsertKind> = movie
        .events
        .iter()
        .map(|ev| match *ev {
            MovieEvent::Birth { pos, .. } => InsertKind::LeftCusp { pos },
            MovieEvent::Death { pos } => InsertKind::RightCusp { pos },
            MovieEvent::CrossValues { pos } => InsertKind::Crossing { pos },
            MovieEvent::HandleSlide { .. } | MovieEvent::Parallel => InsertKind::Parallel,
        })
        .collect();
    let plan = SplashPlan::new(&front, inserts);
    let sdga = splash_dga(&front, &plan, Some(&potential));

    let mut values = vec![0u8; sdga.dga().len()];
    for m in 1..=sdga.zone_count() {
        let slice = &movie.slices[m];
        let n = slice.len();
        debug_assert_eq!(n, sdga.zone_strands(m));
        for i in 1..=n {
            for j in i + 1..=n {
                if slice.eta_at(i, j) {
                    values[sdga.xp_id(m, i, j) as usize] = 1;
                }
            }
        }
        match movie.events[m - 1] {
            MovieEvent::Birth { pos: k, .. } => {
                // the comparison isomorphism feeds the new pair's incidences
                // into column k and row k+1
                for i in 1..k {
                    if slice.eta_at(i, k + 1) {
                        values[sdga.xm_id(m, i, k) as usize] = 1;
                    }
                }
                for j in k + 2..=n {
                    if slice.eta_at(k, j) {
                        values[sdga.xm_id(m, k + 1, j) as usize] = 1;
                    }
                }
            }
            MovieEvent::HandleSlide { pos: k, pos2: l } => {
                values[sdga.xm_id(m, k, l) as usize] = 1;
            }
            _ => {}
        }
    }

    let aug = Augmentation { values, rho: 0 };
    assert_eq!(
        verify_augmentation(sdga.dga(), &aug),
        Ok(()),
        "the canonical assignment of a valid movie is always an augmentation",
    );
    Ok((sdga, aug))
}
