//! Belief sets and their revisions read off a model.
//!
//! At state `s` the initial belief set is `K = {φ : B(s) ⊆ ‖φ‖}` and the
//! revision by `φ` is `K∗φ = {ψ : U(s, ‖φ‖) ⊆ ‖ψ‖}`, the consequents of
//! believed conditionals with antecedent `φ`. Belief sets are kept as the
//! event they filter on rather than as sets of formulas.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::event::{events_by_size, nonempty_events_by_size, Event};
use crate::formula::{classify, Formula, SyntacticClass};
use crate::model::{Frame, Model, StateId};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RevisionError {
    #[error("`{0}` is not a Boolean formula (class {1})")]
    NotBoolean(String, SyntacticClass),
    #[error("no state {0} in a frame of {1} states")]
    NoSuchState(StateId, usize),
}

fn boolean_extension(model: &Model, f: &Formula) -> Result<Event, RevisionError> {
    let class = classify(f);
    if class != SyntacticClass::Phi0 {
        return Err(RevisionError::NotBoolean(f.to_string(), class));
    }
    Ok(model.truth_set(f).expect("Boolean formulas are well-formed"))
}

fn check_state(model: &Model, s: StateId) -> Result<(), RevisionError> {
    let n = model.frame().len();
    if s >= n {
        return Err(RevisionError::NoSuchState(s, n));
    }
    Ok(())
}

/// The agent's epistemic position at one state of a model.
#[derive(Clone, Copy, Debug)]
pub struct BeliefStateView<'m> {
    model: &'m Model,
    state: StateId,
}

impl<'m> BeliefStateView<'m> {
    pub fn new(model: &'m Model, state: StateId) -> Result<Self, RevisionError> {
        check_state(model, state)?;
        Ok(BeliefStateView { model, state })
    }

    /// `B(s)`; never empty.
    pub fn belief(&self) -> Event {
        self.model.frame().belief(self.state)
    }

    /// `U(s, E)`, or `None` for the empty event.
    pub fn revised(&self, e: Event) -> Option<Event> {
        self.model.frame().revised_support(self.state, e).ok()
    }

    /// `φ ∈ K`.
    pub fn believes(&self, phi: &Formula) -> Result<bool, RevisionError> {
        Ok(self.belief().is_subset(boolean_extension(self.model, phi)?))
    }

    /// `ψ ∈ K∗φ`. An input with empty truth set yields every formula.
    pub fn revision_contains(&self, input: &Formula, query: &Formula) -> Result<bool, RevisionError> {
        let e = boolean_extension(self.model, input)?;
        let target = boolean_extension(self.model, query)?;
        Ok(match self.revised(e) {
            None => true,
            Some(support) => support.is_subset(target),
        })
    }

    /// `ψ ∈ K+φ`: `B(s) ∩ ‖φ‖ ⊆ ‖ψ‖`.
    pub fn expansion_contains(&self, input: &Formula, query: &Formula) -> Result<bool, RevisionError> {
        let e = boolean_extension(self.model, input)?;
        let target = boolean_extension(self.model, query)?;
        Ok(self.belief().intersection(e).is_subset(target))
    }
}

pub fn in_k(model: &Model, s: StateId, phi: &Formula) -> Result<bool, RevisionError> {
    BeliefStateView::new(model, s)?.believes(phi)
}

pub fn revise_membership(
    model: &Model,
    s: StateId,
    input: &Formula,
    query: &Formula,
) -> Result<bool, RevisionError> {
    BeliefStateView::new(model, s)?.revision_contains(input, query)
}

pub fn expand_membership(
    model: &Model,
    s: StateId,
    input: &Formula,
    query: &Formula,
) -> Result<bool, RevisionError> {
    BeliefStateView::new(model, s)?.expansion_contains(input, query)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AgmPostulateId {
    K1,
    K2,
    K3,
    K4,
    K5a,
    K5b,
    K6,
    K7,
    K8,
}

impl AgmPostulateId {
    pub const ALL: [AgmPostulateId; 9] = [
        AgmPostulateId::K1,
        AgmPostulateId::K2,
        AgmPostulateId::K3,
        AgmPostulateId::K4,
        AgmPostulateId::K5a,
        AgmPostulateId::K5b,
        AgmPostulateId::K6,
        AgmPostulateId::K7,
        AgmPostulateId::K8,
    ];

    /// Postulates that hold on every frame.
    pub fn is_unconditional(self) -> bool {
        matches!(self, AgmPostulateId::K1 | AgmPostulateId::K5a | AgmPostulateId::K6)
    }
}

impl fmt::Display for AgmPostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("{self:?}");
        write!(f, "K*{}", &s[1..])
    }
}

impl FromStr for AgmPostulateId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase().replace('*', "");
        AgmPostulateId::ALL
            .into_iter()
            .find(|k| format!("{k:?}").to_ascii_lowercase() == key)
            .ok_or_else(|| format!("unknown AGM postulate `{s}`"))
    }
}

/// Events at which a postulate fails for the belief state at `state`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgmWitness {
    pub postulate: AgmPostulateId,
    pub state: StateId,
    pub e: Event,
    pub f: Option<Event>,
}

impl AgmWitness {
    pub fn replays(&self, frame: &Frame) -> bool {
        if self.state >= frame.len() || !self.e.is_subset(frame.full()) {
            return false;
        }
        match self.f {
            Some(f) if !f.is_subset(frame.full()) => false,
            f => !postulate_holds_at(frame, self.state, self.postulate, self.e, f),
        }
    }
}

/// The event form of a postulate for input events `E` (and `F` for K*7,
/// K*8), with `U = U(s, ·)`:
///
/// * K*2: `U(E) ⊆ E`
/// * K*3: `B(s) ∩ E ⊆ U(E)`
/// * K*4: `B(s) ∩ E ≠ ∅ ⇒ U(E) ⊆ B(s)`
/// * K*5b: `U(E) ≠ ∅`
/// * K*7: `E ∩ F ≠ ∅ ⇒ U(E) ∩ F ⊆ U(E ∩ F)`
/// * K*8: `U(E) ∩ F ≠ ∅ ∧ E ∩ F ≠ ∅ ⇒ U(E ∩ F) ⊆ U(E) ∩ F`
fn postulate_holds_at(
    frame: &Frame,
    s: StateId,
    k: AgmPostulateId,
    e: Event,
    f: Option<Event>,
) -> bool {
    use AgmPostulateId::*;
    if k.is_unconditional() {
        return true;
    }
    if e.is_empty() {
        return true;
    }
    let belief = frame.belief(s);
    let u = |x: Event| frame.union_selection(belief, x);
    match k {
        K2 => u(e).is_subset(e),
        K3 => belief.intersection(e).is_subset(u(e)),
        K4 => !belief.intersects(e) || u(e).is_subset(belief),
        K5b => !u(e).is_empty(),
        K7 => {
            let f = f.unwrap_or(Event::EMPTY);
            let ef = e.intersection(f);
            ef.is_empty() || u(e).intersection(f).is_subset(u(ef))
        }
        K8 => {
            let f = f.unwrap_or(Event::EMPTY);
            let ef = e.intersection(f);
            let bound = u(e).intersection(f);
            bound.is_empty() || ef.is_empty() || u(ef).is_subset(bound)
        }
        K1 | K5a | K6 => true,
    }
}

/// Checks a postulate for the revision function at `state`, with inputs
/// ranging over every nonempty event (each is the truth set of some input
/// under some valuation). K*1, K*5a and K*6 hold on every frame.
pub fn agm_event_check(
    frame: &Frame,
    state: StateId,
    postulate: AgmPostulateId,
) -> Result<(), AgmWitness> {
    use AgmPostulateId::*;
    let n = frame.len();
    let witness = |e, f| AgmWitness { postulate, state, e, f };
    match postulate {
        K1 | K5a | K6 => Ok(()),
        K2 | K3 | K4 | K5b => {
            for e in nonempty_events_by_size(n) {
                if !postulate_holds_at(frame, state, postulate, e, None) {
                    return Err(witness(e, None));
                }
            }
            Ok(())
        }
        K7 | K8 => {
            let all = events_by_size(n);
            for e in nonempty_events_by_size(n) {
                for &f in &all {
                    if !postulate_holds_at(frame, state, postulate, e, Some(f)) {
                        return Err(witness(e, Some(f)));
                    }
                }
            }
            Ok(())
        }
    }
}

/// Whether the postulate holds at every state of the frame.
pub fn agm_holds_everywhere(frame: &Frame, postulate: AgmPostulateId) -> bool {
    frame.states().all(|s| agm_event_check(frame, s, postulate).is_ok())
}
