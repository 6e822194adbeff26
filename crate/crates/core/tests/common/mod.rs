//! Shared generators and brute-force oracles for the integration tests.
//!
//! The oracles work on plain `u32` masks and re-derive everything from the
//! frame's raw tables, so they share no code with the library's evaluators.

#![allow(dead_code)]

use std::collections::BTreeMap;

use kripke_lewis::{Event, Formula, Frame, Model};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 3] = ["p", "q", "r"];

pub struct Gen {
    pub rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn atom(&mut self) -> Formula {
        Formula::atom(ATOMS[self.rng.gen_range(0..ATOMS.len())])
    }

    /// Combines two subformulas with a random connective, or negates one.
    fn connect(&mut self, a: Formula, b: Formula) -> Formula {
        match self.rng.gen_range(0..5) {
            0 => Formula::not(a),
            1 => Formula::and(a, b),
            2 => Formula::or(a, b),
            3 => Formula::implies(a, b),
            _ => Formula::iff(a, b),
        }
    }

    pub fn boolean(&mut self, depth: u32) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return self.atom();
        }
        let a = self.boolean(depth - 1);
        let b = self.boolean(depth - 1);
        self.connect(a, b)
    }

    pub fn conditional(&mut self) -> Formula {
        Formula::cond(self.boolean(2), self.boolean(2))
    }

    /// Boolean combinations of Boolean formulas and conditionals.
    pub fn phi1(&mut self, depth: u32) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return if self.rng.gen_bool(0.5) { self.boolean(2) } else { self.conditional() };
        }
        let a = self.phi1(depth - 1);
        let b = self.phi1(depth - 1);
        self.connect(a, b)
    }

    /// Any formula of the language.
    pub fn formula(&mut self, depth: u32) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.25) {
            return match self.rng.gen_range(0..3) {
                0 => self.phi1(2),
                1 => Formula::bel(self.phi1(2)),
                _ => Formula::boxed(self.boolean(2)),
            };
        }
        let a = self.formula(depth - 1);
        let b = self.formula(depth - 1);
        self.connect(a, b)
    }

    pub fn event(&mut self, n: usize) -> Event {
        Event::from_bits(self.rng.gen_range(0..1u32 << n))
    }

    pub fn frame(&mut self, n: usize) -> Frame {
        let events = 1u32 << n;
        let belief = (0..n).map(|_| Event::from_bits(self.rng.gen_range(1..events))).collect();
        let selection = (0..n * (events as usize - 1))
            .map(|_| Event::from_bits(self.rng.gen_range(0..events)))
            .collect();
        Frame::from_tables(n, belief, selection).unwrap()
    }

    pub fn model(&mut self, n: usize) -> Model {
        let frame = self.frame(n);
        let valuation: BTreeMap<String, Event> =
            ATOMS.iter().map(|a| (a.to_string(), self.event(n))).collect();
        Model::new(frame, valuation).unwrap()
    }
}

/// A frame as raw masks: `belief[s]` and `select(s, e)` for `e != 0`.
pub struct RawFrame {
    pub n: usize,
    pub belief: Vec<u32>,
    pub table: Vec<u32>,
}

impl RawFrame {
    pub fn of(frame: &Frame) -> Self {
        RawFrame {
            n: frame.len(),
            belief: frame.belief_table().iter().map(|e| e.bits()).collect(),
            table: frame.selection_table().iter().map(|e| e.bits()).collect(),
        }
    }

    pub fn full(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn select(&self, s: usize, e: u32) -> u32 {
        assert!(e != 0);
        self.table[s * self.full() as usize + e as usize - 1]
    }

    pub fn believed(&self, s: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.belief[s] >> x & 1 == 1).collect()
    }

    pub fn support(&self, s: usize, e: u32) -> u32 {
        self.believed(s).iter().fold(0, |acc, &x| acc | self.select(x, e))
    }
}

fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

/// Truth set of `f`, computed state by state from the raw tables.
pub fn oracle_truth_set(raw: &RawFrame, valuation: &BTreeMap<String, Event>, f: &Formula) -> u32 {
    let full = raw.full();
    match f {
        Formula::Atom(a) => valuation.get(a).map_or(0, |e| e.bits()),
        Formula::Not(g) => full & !oracle_truth_set(raw, valuation, g),
        Formula::And(g, h) => oracle_truth_set(raw, valuation, g) & oracle_truth_set(raw, valuation, h),
        Formula::Or(g, h) => oracle_truth_set(raw, valuation, g) | oracle_truth_set(raw, valuation, h),
        Formula::Implies(g, h) => {
            (full & !oracle_truth_set(raw, valuation, g)) | oracle_truth_set(raw, valuation, h)
        }
        Formula::Iff(g, h) => {
            full & !(oracle_truth_set(raw, valuation, g) ^ oracle_truth_set(raw, valuation, h))
        }
        Formula::Cond(g, h) => {
            let ante = oracle_truth_set(raw, valuation, g);
            let cons = oracle_truth_set(raw, valuation, h);
            if ante == 0 {
                return full;
            }
            (0..raw.n)
                .filter(|&s| subset(raw.select(s, ante), cons))
                .fold(0, |acc, s| acc | 1 << s)
        }
        Formula::Bel(g) => {
            let inner = oracle_truth_set(raw, valuation, g);
            (0..raw.n)
                .filter(|&s| subset(raw.belief[s], inner))
                .fold(0, |acc, s| acc | 1 << s)
        }
        Formula::Box(g) => {
            if oracle_truth_set(raw, valuation, g) == full {
                full
            } else {
                0
            }
        }
    }
}

/// The frame properties by their literal quantifier forms.
pub mod oracle {
    use super::{subset, RawFrame};

    fn nonempty(raw: &RawFrame) -> std::ops::RangeInclusive<u32> {
        1..=raw.full()
    }

    pub fn p2(raw: &RawFrame) -> bool {
        (0..raw.n).all(|s| {
            nonempty(raw).all(|e| raw.believed(s).iter().all(|&x| subset(raw.select(x, e), e)))
        })
    }

    pub fn p3(raw: &RawFrame) -> bool {
        (0..raw.n).all(|s| {
            nonempty(raw).all(|e| {
                raw.believed(s)
                    .iter()
                    .all(|&x| e >> x & 1 == 0 || raw.support(s, e) >> x & 1 == 1)
            })
        })
    }

    pub fn p4(raw: &RawFrame) -> bool {
        (0..raw.n).all(|s| {
            nonempty(raw).all(|e| {
                let be = raw.belief[s] & e;
                be == 0 || raw.believed(s).iter().all(|&x| subset(raw.select(x, e), be))
            })
        })
    }

    pub fn p5(raw: &RawFrame) -> bool {
        (0..raw.n).all(|s| {
            nonempty(raw).all(|e| raw.believed(s).iter().any(|&x| raw.select(x, e) != 0))
        })
    }

    pub fn p7(raw: &RawFrame) -> bool {
        (0..raw.n).all(|s| {
            nonempty(raw).all(|e| {
                (0..=raw.full()).filter(|f| e & f != 0).all(|f| {
                    (0..=raw.full()).all(|g| {
                        let ante = raw.believed(s).iter().all(|&x| subset(raw.select(x, e & f), g));
                        let cons = raw.believed(s).iter().all(|&x| subset(raw.select(x, e) & f, g));
                        !ante || cons
                    })
                })
            })
        })
    }

    pub fn p8(raw: &RawFrame) -> bool {
        (0..raw.n).all(|s| {
            nonempty(raw).all(|e| {
                nonempty(raw).filter(|f| e & f != 0).all(|f| {
                    let ante = raw.believed(s).iter().any(|&x| raw.select(x, e) & f != 0);
                    let bound = raw.support(s, e) & f;
                    !ante || raw.believed(s).iter().all(|&x| subset(raw.select(x, e & f), bound))
                })
            })
        })
    }
}
