mod common;

use common::{oracle, Gen, RawFrame};
use kripke_lewis::correspondence::{enumerate_frames, sample_frames};
use kripke_lewis::properties::{check_property_with, Strategy};
use kripke_lewis::{check_property, Event, Frame, PropertyId};

fn oracle_holds(raw: &RawFrame, k: PropertyId) -> bool {
    match k {
        PropertyId::P2 => oracle::p2(raw),
        PropertyId::P3 => oracle::p3(raw),
        PropertyId::P4 => oracle::p4(raw),
        PropertyId::P5 => oracle::p5(raw),
        PropertyId::P7 => oracle::p7(raw),
        PropertyId::P8 => oracle::p8(raw),
    }
}

#[test]
fn checkers_match_brute_force_on_every_two_state_frame() {
    for frame in enumerate_frames(2, false).unwrap() {
        let raw = RawFrame::of(&frame);
        for k in PropertyId::ALL {
            let verdict = check_property(&frame, k);
            assert_eq!(verdict.is_ok(), oracle_holds(&raw, k), "{k} on {}", frame.digest());
            if let Err(w) = verdict {
                assert!(w.replays(&frame));
            }
        }
    }
}

#[test]
fn checkers_match_brute_force_on_random_three_state_frames() {
    for frame in sample_frames(3, 1500, 5) {
        let raw = RawFrame::of(&frame);
        for k in PropertyId::ALL {
            assert_eq!(check_property(&frame, k).is_ok(), oracle_holds(&raw, k), "{k}");
        }
    }
}

#[test]
fn literal_and_reformulated_strategies_agree() {
    for frame in enumerate_frames(2, false).unwrap().chain(sample_frames(3, 1000, 6)) {
        for k in [PropertyId::P7, PropertyId::P8] {
            assert_eq!(
                check_property_with(&frame, k, Strategy::Literal).is_ok(),
                check_property_with(&frame, k, Strategy::Reformulated).is_ok()
            );
        }
    }
}

/// Probability that a uniformly sampled `n`-state frame has P2: every state
/// reachable by belief must select within each event, which happens with
/// probability `prod_E 2^|E| / 2^n` per state.
fn p2_probability(n: usize) -> f64 {
    let events = 1u32 << n;
    let per_state: f64 = (1..events).map(|e| 2f64.powi(e.count_ones() as i32) / events as f64).product();
    let mut total = 0.0;
    let relations = (events as usize - 1).pow(n as u32);
    for code in 0..relations {
        let mut rest = code;
        let mut reach = 0u32;
        for _ in 0..n {
            reach |= (rest % (events as usize - 1)) as u32 + 1;
            rest /= events as usize - 1;
        }
        total += per_state.powi(reach.count_ones() as i32);
    }
    total / relations as f64
}

#[test]
fn p2_closed_form_count_on_two_states() {
    let holds = enumerate_frames(2, false)
        .unwrap()
        .filter(|f| check_property(f, PropertyId::P2).is_ok())
        .count();
    assert_eq!(holds, 3840);
    assert!((p2_probability(2) * 36_864.0 - 3840.0).abs() < 1e-6);
}

#[test]
fn p2_sampling_frequency_matches_its_probability() {
    const SAMPLES: u64 = 10_000;
    for n in [2usize, 3] {
        let p = p2_probability(n);
        let hits = sample_frames(n, SAMPLES, 99)
            .filter(|f| check_property(f, PropertyId::P2).is_ok())
            .count() as f64;
        let mean = p * SAMPLES as f64;
        let sigma = (SAMPLES as f64 * p * (1.0 - p)).sqrt();
        assert!((hits - mean).abs() <= 3.0 * sigma + 1.0, "n={n}: {hits} vs {mean}");
    }
}

#[test]
fn shrinking_belief_preserves_p2() {
    let mut gen = Gen::new(21);
    for _ in 0..300 {
        let random = gen.frame(3);
        let reach = random.belief_table().iter().fold(Event::EMPTY, |acc, b| acc.union(*b));
        // Only believed states are forced to select inside the event.
        let frame = Frame::from_fn(random.belief_table().to_vec(), |s, e| {
            let f = random.select(s, e);
            if reach.contains(s) { f.intersection(e) } else { f }
        })
        .unwrap();
        assert!(check_property(&frame, PropertyId::P2).is_ok());
        let shrunk: Vec<Event> = frame
            .belief_table()
            .iter()
            .map(|b| {
                let keep = gen.event(frame.len()).intersection(*b);
                if keep.is_empty() { Event::singleton(b.first().unwrap()) } else { keep }
            })
            .collect();
        let smaller = Frame::from_tables(frame.len(), shrunk, frame.selection_table().to_vec()).unwrap();
        assert!(check_property(&smaller, PropertyId::P2).is_ok());
    }
}
