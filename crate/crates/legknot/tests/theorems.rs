//! Structural checks on randomized fronts, beyond the fixed corpus: the
//! ruling/augmentation/movie equivalences and the duality relations are
//! exercised on generated diagrams, and the generating-family complex is
//! fuzzed through the validator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use legknot::augment::augmentation_to_ruling;
use legknot::front::{EventKind, FrontDiagram, FrontEvent};
use legknot::movie::{
    compare_homologies, duality_check, gf_homology, movie_to_augmentation, ruling_to_movie,
    validate_movie, MovieEvent,
};
use legknot::ruling::{enumerate_rulings, RulingFilter};

fn random_front(rng: &mut ChaCha8Rng, max_crossings: usize) -> FrontDiagram {
    let mut events: Vec<FrontEvent> = Vec::new();
    let mut n = 0usize;
    let mut crossings = 0usize;
    loop {
        let closing = events.len() >= 12;
        let kind = if n == 0 {
            if !events.is_empty() {
                break;
            }
            EventKind::LeftCusp
        } else if closing {
            EventKind::RightCusp
        } else {
            match rng.gen_range(0..6) {
                0 | 1 if n < 6 => EventKind::LeftCusp,
                2 | 3 if crossings < max_crossings && n >= 2 => EventKind::Crossing,
                _ if n >= 2 => EventKind::RightCusp,
                _ => EventKind::LeftCusp,
            }
        };
        let pos = match kind {
            EventKind::LeftCusp => rng.gen_range(1..=n + 1),
            _ => rng.gen_range(1..=n - 1),
        };
        match kind {
            EventKind::LeftCusp => n += 2,
            EventKind::RightCusp => n -= 2,
            EventKind::Crossing => crossings += 1,
        }
        events.push(FrontEvent { kind, pos });
    }
    FrontDiagram::from_events(events).expect("walk preserves validity")
}

#[test]
fn random_fronts_roundtrip_and_homologies_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1eaf);
    let mut movies = 0;
    let mut fronts_with_rulings = 0;
    for _ in 0..200 {
        let f = random_front(&mut rng, 5);
        if f.rotation_numbers().iter().any(|&r| r != 0) {
            continue; // movies need an integer potential
        }
        let mu = f.maslov_potential(None);
        let rulings = enumerate_rulings(
            &f,
            RulingFilter {
                normal: true,
                graded: Some(0),
            },
            None,
        );
        if rulings.is_empty() {
            continue;
        }
        fronts_with_rulings += 1;
        for ruling in rulings.iter().take(3) {
            let movie = ruling_to_movie(&f, ruling, &mu).unwrap();
            assert_eq!(validate_movie(&movie), Ok(()), "{f}");

            // the movie's augmentation recovers the ruling it came from
            let (sdga, aug) = movie_to_augmentation(&movie).unwrap();
            let back = augmentation_to_ruling(&sdga, &aug)
                .unwrap_or_else(|e| panic!("{f} switches {:?}: {e}", ruling.switches));
            assert_eq!(back.switches, ruling.switches, "{f}");

            // both homology theories agree, and satisfy duality on knots
            let report = compare_homologies(&movie).unwrap();
            assert!(
                report.equal,
                "{f} switches {:?}: {report:?}",
                ruling.switches
            );
            if f.components().count == 1 {
                assert!(duality_check(&report.gf), "{f}: {report:?}");
            }
            movies += 1;
        }
    }
    assert!(
        fronts_with_rulings >= 30,
        "generator should produce usable fronts"
    );
    println!("checked {movies} movies over {fronts_with_rulings} random fronts");
}

#[test]
fn parallel_padding_never_changes_gf_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfade);
    let mut checked = 0;
    for _ in 0..80 {
        let f = random_front(&mut rng, 4);
        if f.rotation_numbers().iter().any(|&r| r != 0) {
            continue;
        }
        let mu = f.maslov_potential(None);
        let rulings = enumerate_rulings(
            &f,
            RulingFilter {
                normal: true,
                graded: Some(0),
            },
            None,
        );
        let Some(ruling) = rulings.first() else {
            continue;
        };
        let movie = ruling_to_movie(&f, ruling, &mu).unwrap();
        let base = gf_homology(&movie).unwrap();

        // pad with parallel events at a few random positions
        let mut padded = movie.clone();
        for _ in 0..3 {
            let t = rng.gen_range(0..padded.events.len());
            padded.events.insert(t, MovieEvent::Parallel);
            padded.slices.insert(t + 1, padded.slices[t].clone());
        }
        assert_eq!(validate_movie(&padded), Ok(()), "{f}");
        assert_eq!(gf_homology(&padded).unwrap(), base, "{f}");
        let report = compare_homologies(&padded).unwrap();
        assert!(report.equal, "{f}: {report:?}");
        checked += 1;
    }
    assert!(checked >= 20);
    println!("parallel padding checked on {checked} movies");
}
