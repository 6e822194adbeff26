//! Decision procedures for the frame properties that characterize the AGM
//! postulates K*2, K*3, K*4, K*5b, K*7 and K*8.
//!
//! Writing `U(s, E) = ⋃_{x ∈ B(s)} f(x, E)`:
//!
//! * P2: `f(s', E) ⊆ E` for every `s' ∈ B(s)`.
//! * P3: every `s' ∈ B(s) ∩ E` lies in `U(s, E)`.
//! * P4: if `B(s) ∩ E ≠ ∅` then `f(s', E) ⊆ B(s) ∩ E` for every `s' ∈ B(s)`.
//! * P5: some `s' ∈ B(s)` has `f(s', E) ≠ ∅`.
//! * P7: for `E ∩ F ≠ ∅` and any `G`, if every `f(s', E ∩ F) ⊆ G` then every
//!   `f(s', E) ∩ F ⊆ G`.
//! * P8: for nonempty `E`, `F`, if some `f(ŝ, E) ∩ F ≠ ∅` then every
//!   `f(s', E ∩ F) ⊆ ⋃_{x ∈ B(s)} (f(x, E) ∩ F)`.
//!
//! All quantify over every state `s` and every nonempty `E`. In P8 the
//! consequent is vacuous when `E ∩ F = ∅`, since `f` is undefined there.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::event::{events_by_size, nonempty_events_by_size, Event};
use crate::model::{Frame, StateId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PropertyId {
    P2,
    P3,
    P4,
    P5,
    P7,
    P8,
}

impl PropertyId {
    pub const ALL: [PropertyId; 6] = [
        PropertyId::P2,
        PropertyId::P3,
        PropertyId::P4,
        PropertyId::P5,
        PropertyId::P7,
        PropertyId::P8,
    ];

    /// The postulate number `k` in K*k (5 stands for K*5b).
    pub fn number(self) -> u8 {
        match self {
            PropertyId::P2 => 2,
            PropertyId::P3 => 3,
            PropertyId::P4 => 4,
            PropertyId::P5 => 5,
            PropertyId::P7 => 7,
            PropertyId::P8 => 8,
        }
    }

    pub fn from_number(k: u8) -> Option<PropertyId> {
        PropertyId::ALL.into_iter().find(|p| p.number() == k)
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.number())
    }
}

impl FromStr for PropertyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.trim_start_matches(['P', 'p']).trim_start_matches('*');
        digits
            .parse::<u8>()
            .ok()
            .and_then(PropertyId::from_number)
            .ok_or_else(|| format!("unknown frame property `{s}` (expected P2, P3, P4, P5, P7 or P8)"))
    }
}

/// A concrete violation of a frame property.
///
/// `belief_state` is the `s' ∈ B(s)` at which the matrix fails (absent for
/// P5, which fails for all of them). `f` and `g` are the extra events of P7
/// and P8.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyWitness {
    pub property: PropertyId,
    pub state: StateId,
    pub belief_state: Option<StateId>,
    pub e: Event,
    pub f: Option<Event>,
    pub g: Option<Event>,
}

impl PropertyWitness {
    /// Re-evaluates the property's matrix on the witness data; true iff the
    /// violation is real.
    pub fn replays(&self, frame: &Frame) -> bool {
        let n = frame.len();
        let full = frame.full();
        let in_frame = |e: Event| e.is_subset(full);
        if self.state >= n || self.e.is_empty() || !in_frame(self.e) {
            return false;
        }
        let s = self.state;
        let belief = frame.belief(s);
        let e = self.e;
        let believed = |x: Option<StateId>| x.filter(|&x| x < n && belief.contains(x));
        match self.property {
            PropertyId::P2 => believed(self.belief_state)
                .is_some_and(|x| !frame.select(x, e).is_subset(e)),
            PropertyId::P3 => believed(self.belief_state).is_some_and(|x| {
                e.contains(x) && !frame.union_selection(belief, e).contains(x)
            }),
            PropertyId::P4 => believed(self.belief_state).is_some_and(|x| {
                belief.intersects(e) && !frame.select(x, e).is_subset(belief.intersection(e))
            }),
            PropertyId::P5 => belief.states().all(|x| frame.select(x, e).is_empty()),
            PropertyId::P7 => {
                let (Some(f), Some(g)) = (self.f, self.g) else { return false };
                let ef = e.intersection(f);
                !ef.is_empty()
                    && in_frame(f)
                    && in_frame(g)
                    && belief.states().all(|x| frame.select(x, ef).is_subset(g))
                    && believed(self.belief_state).is_some_and(|x| {
                        !frame.select(x, e).intersection(f).is_subset(g)
                    })
            }
            PropertyId::P8 => {
                let Some(f) = self.f else { return false };
                let ef = e.intersection(f);
                !f.is_empty()
                    && in_frame(f)
                    && !ef.is_empty()
                    && belief.states().any(|x| frame.select(x, e).intersects(f))
                    && believed(self.belief_state).is_some_and(|x| {
                        let bound = belief.states().fold(Event::EMPTY, |acc, y| {
                            acc.union(frame.select(y, e).intersection(f))
                        });
                        !frame.select(x, ef).is_subset(bound)
                    })
            }
        }
    }
}

/// How P7 and P8 are decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// P7 with `G` fixed to its strongest instance `U(s, E ∩ F)`; P8 with the
    /// antecedent read as `U(s, E) ∩ F ≠ ∅`.
    #[default]
    Reformulated,
    /// The quantifiers exactly as stated, including the loop over every `G`.
    Literal,
}

pub fn check_property(frame: &Frame, property: PropertyId) -> Result<(), PropertyWitness> {
    check_property_with(frame, property, Strategy::Reformulated)
}

/// Decides `property` on `frame`, returning the least violation in the order
/// (E by size then mask, F likewise, s, s').
pub fn check_property_with(
    frame: &Frame,
    property: PropertyId,
    strategy: Strategy,
) -> Result<(), PropertyWitness> {
    let n = frame.len();
    let nonempty = nonempty_events_by_size(n);
    let witness = |state, belief_state, e, f, g| PropertyWitness {
        property,
        state,
        belief_state,
        e,
        f,
        g,
    };
    match property {
        PropertyId::P2 => {
            for &e in &nonempty {
                for s in frame.states() {
                    for x in frame.belief(s).states() {
                        if !frame.select(x, e).is_subset(e) {
                            return Err(witness(s, Some(x), e, None, None));
                        }
                    }
                }
            }
        }
        PropertyId::P3 => {
            for &e in &nonempty {
                for s in frame.states() {
                    let belief = frame.belief(s);
                    let support = frame.union_selection(belief, e);
                    if let Some(x) = belief.intersection(e).difference(support).first() {
                        return Err(witness(s, Some(x), e, None, None));
                    }
                }
            }
        }
        PropertyId::P4 => {
            for &e in &nonempty {
                for s in frame.states() {
                    let belief = frame.belief(s);
                    if !belief.intersects(e) {
                        continue;
                    }
                    let target = belief.intersection(e);
                    for x in belief.states() {
                        if !frame.select(x, e).is_subset(target) {
                            return Err(witness(s, Some(x), e, None, None));
                        }
                    }
                }
            }
        }
        PropertyId::P5 => {
            for &e in &nonempty {
                for s in frame.states() {
                    if frame.belief(s).states().all(|x| frame.select(x, e).is_empty()) {
                        return Err(witness(s, None, e, None, None));
                    }
                }
            }
        }
        PropertyId::P7 => {
            let all = events_by_size(n);
            for &e in &nonempty {
                for &f in &all {
                    let ef = e.intersection(f);
                    if ef.is_empty() {
                        continue;
                    }
                    for s in frame.states() {
                        let belief = frame.belief(s);
                        let found = match strategy {
                            Strategy::Reformulated => {
                                let g = frame.union_selection(belief, ef);
                                belief
                                    .states()
                                    .find(|&x| !frame.select(x, e).intersection(f).is_subset(g))
                                    .map(|x| (x, g))
                            }
                            Strategy::Literal => all.iter().find_map(|&g| {
                                let premise =
                                    belief.states().all(|x| frame.select(x, ef).is_subset(g));
                                if !premise {
                                    return None;
                                }
                                belief
                                    .states()
                                    .find(|&x| !frame.select(x, e).intersection(f).is_subset(g))
                                    .map(|x| (x, g))
                            }),
                        };
                        if let Some((x, g)) = found {
                            return Err(witness(s, Some(x), e, Some(f), Some(g)));
                        }
                    }
                }
            }
        }
        PropertyId::P8 => {
            for &e in &nonempty {
                for &f in &nonempty {
                    let ef = e.intersection(f);
                    for s in frame.states() {
                        let belief = frame.belief(s);
                        let (antecedent, bound) = match strategy {
                            Strategy::Reformulated => {
                                let bound = frame.union_selection(belief, e).intersection(f);
                                (!bound.is_empty(), bound)
                            }
                            Strategy::Literal => {
                                let antecedent =
                                    belief.states().any(|x| frame.select(x, e).intersects(f));
                                let bound = belief.states().fold(Event::EMPTY, |acc, x| {
                                    acc.union(frame.select(x, e).intersection(f))
                                });
                                (antecedent, bound)
                            }
                        };
                        if !antecedent || ef.is_empty() {
                            continue;
                        }
                        if let Some(x) =
                            belief.states().find(|&x| !frame.select(x, ef).is_subset(bound))
                        {
                            return Err(witness(s, Some(x), e, Some(f), None));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}
