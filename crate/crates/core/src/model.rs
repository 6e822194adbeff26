//! Finite Kripke-Lewis frames and models, and the truth clauses of the
//! modal language over them.
//!
//! A frame is a finite state set with a serial belief relation and a total
//! selection function `f(s, E)` defined on every nonempty event `E`. Nothing
//! else is assumed about `f`: selected sets may be empty or leave `E`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::event::{nonempty_events, Event, MAX_STATES};
use crate::formula::{classify, Formula, SyntacticClass};

/// Index of a state within its frame.
pub type StateId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    names: Vec<String>,
    belief: Vec<Event>,
    /// `selection[s * (2^n - 1) + (E - 1)]` holds `f(s, E)`; the empty event
    /// has no slot.
    selection: Vec<Event>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("state `{0}` has an empty belief set")]
    NonSerial(String),
    #[error("no selection entry for state `{0}` and event {{{events}}}", events = .1.join(","))]
    MissingSelectionEntry(String, Vec<String>),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state `{0}` is declared twice")]
    DuplicateState(String),
    #[error("selection entry for state `{0}` and event {{{events}}} is given twice", events = .1.join(","))]
    DuplicateSelectionEntry(String, Vec<String>),
    #[error("selection entry for state `{0}` has an empty event; f(s, E) needs E nonempty")]
    EmptySelectionEvent(String),
    #[error("frame must have between 1 and {MAX_STATES} states, got {0}")]
    StateCount(usize),
}

/// One row of the serialized selection table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSelection {
    pub state: String,
    pub event: Vec<String>,
    pub selected: Vec<String>,
}

/// JSON form of a frame, optionally with a valuation (then it is a model).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawModel {
    pub states: Vec<String>,
    pub belief: BTreeMap<String, Vec<String>>,
    pub selection: Vec<RawSelection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

struct NameTable<'a> {
    index: HashMap<&'a str, StateId>,
}

impl<'a> NameTable<'a> {
    fn event(&self, names: &[String], errors: &mut Vec<FrameError>) -> Event {
        let mut e = Event::EMPTY;
        for name in names {
            match self.index.get(name.as_str()) {
                Some(&i) => e = e.union(Event::singleton(i)),
                None => errors.push(FrameError::UnknownState(name.clone())),
            }
        }
        e
    }
}

/// Checks seriality and selection totality and builds the frame. Every
/// violation found is reported, not just the first.
pub fn validate_frame(raw: &RawModel) -> Result<Frame, Vec<FrameError>> {
    let n = raw.states.len();
    if n == 0 || n > MAX_STATES {
        return Err(vec![FrameError::StateCount(n)]);
    }
    let mut errors = Vec::new();
    let mut index = HashMap::new();
    for (i, name) in raw.states.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            errors.push(FrameError::DuplicateState(name.clone()));
        }
    }
    let table = NameTable { index };

    let mut belief = vec![Event::EMPTY; n];
    for (name, targets) in &raw.belief {
        match table.index.get(name.as_str()) {
            Some(&s) => belief[s] = table.event(targets, &mut errors),
            None => errors.push(FrameError::UnknownState(name.clone())),
        }
    }
    for (s, b) in belief.iter().enumerate() {
        if b.is_empty() {
            errors.push(FrameError::NonSerial(raw.states[s].clone()));
        }
    }

    let width = (1usize << n) - 1;
    let mut selection: Vec<Option<Event>> = vec![None; n * width];
    for row in &raw.selection {
        let Some(&s) = table.index.get(row.state.as_str()) else {
            errors.push(FrameError::UnknownState(row.state.clone()));
            continue;
        };
        let event = table.event(&row.event, &mut errors);
        let selected = table.event(&row.selected, &mut errors);
        if event.is_empty() {
            if row.event.is_empty() {
                errors.push(FrameError::EmptySelectionEvent(row.state.clone()));
            }
            continue;
        }
        let slot = &mut selection[s * width + event.nonempty_index()];
        if slot.is_some() {
            errors.push(FrameError::DuplicateSelectionEntry(
                row.state.clone(),
                names_of(&raw.states, event),
            ));
        }
        *slot = Some(selected);
    }
    for s in 0..n {
        for e in nonempty_events(n) {
            if selection[s * width + e.nonempty_index()].is_none() {
                errors.push(FrameError::MissingSelectionEntry(
                    raw.states[s].clone(),
                    names_of(&raw.states, e),
                ));
            }
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(Frame {
        names: raw.states.clone(),
        belief,
        selection: selection.into_iter().map(Option::unwrap).collect(),
    })
}

fn names_of(names: &[String], e: Event) -> Vec<String> {
    e.states().map(|s| names[s].clone()).collect()
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("frame must have between 1 and {MAX_STATES} states, got {0}")]
    StateCount(usize),
    #[error("expected {expected} entries, got {found}")]
    Length { expected: usize, found: usize },
    #[error("state s{0} has an empty belief set")]
    NonSerial(StateId),
    #[error("event {0:?} mentions states outside the frame")]
    OutOfRange(Event),
}

impl Frame {
    /// Builds a frame on states `s0..s{n-1}` from dense tables: `belief[s]`
    /// and `selection[s * (2^n - 1) + (E - 1)] = f(s, E)`.
    pub fn from_tables(
        n: usize,
        belief: Vec<Event>,
        selection: Vec<Event>,
    ) -> Result<Frame, TableError> {
        if n == 0 || n > MAX_STATES {
            return Err(TableError::StateCount(n));
        }
        let width = (1usize << n) - 1;
        if belief.len() != n {
            return Err(TableError::Length { expected: n, found: belief.len() });
        }
        if selection.len() != n * width {
            return Err(TableError::Length { expected: n * width, found: selection.len() });
        }
        let full = Event::full(n);
        for e in belief.iter().chain(&selection) {
            if !e.is_subset(full) {
                return Err(TableError::OutOfRange(*e));
            }
        }
        if let Some(s) = belief.iter().position(|b| b.is_empty()) {
            return Err(TableError::NonSerial(s));
        }
        Ok(Frame { names: default_names(n), belief, selection })
    }

    /// Builds a frame from a closure giving `f(s, E)` for nonempty `E`.
    pub fn from_fn(
        belief: Vec<Event>,
        select: impl Fn(StateId, Event) -> Event,
    ) -> Result<Frame, TableError> {
        let n = belief.len();
        if n == 0 || n > MAX_STATES {
            return Err(TableError::StateCount(n));
        }
        let selection = (0..n)
            .flat_map(|s| nonempty_events(n).map(move |e| (s, e)))
            .map(|(s, e)| select(s, e))
            .collect();
        Frame::from_tables(n, belief, selection)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.len(), "one name per state");
        self.names = names;
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.len()
    }

    pub fn full(&self) -> Event {
        Event::full(self.len())
    }

    pub fn name(&self, s: StateId) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    /// The belief set `B(s)`.
    pub fn belief(&self, s: StateId) -> Event {
        self.belief[s]
    }

    /// The selection `f(s, E)`. `E` must be nonempty.
    pub fn select(&self, s: StateId, e: Event) -> Event {
        assert!(!e.is_empty(), "selection is undefined on the empty event");
        self.selection[s * self.width() + e.nonempty_index()]
    }

    fn width(&self) -> usize {
        (1usize << self.len()) - 1
    }

    pub fn belief_table(&self) -> &[Event] {
        &self.belief
    }

    pub fn selection_table(&self) -> &[Event] {
        &self.selection
    }

    /// `U(s, E) = ⋃_{x ∈ B(s)} f(x, E)`: the states the agent considers
    /// possible after revising by `E` at `s`.
    pub fn revised_support(&self, s: StateId, e: Event) -> Result<Event, EmptyEvent> {
        if e.is_empty() {
            return Err(EmptyEvent);
        }
        Ok(self.union_selection(self.belief(s), e))
    }

    /// `⋃_{x ∈ over} f(x, E)` for nonempty `E`.
    pub(crate) fn union_selection(&self, over: Event, e: Event) -> Event {
        over.states()
            .fold(Event::EMPTY, |acc, x| acc.union(self.select(x, e)))
    }

    pub fn names_of(&self, e: Event) -> Vec<String> {
        names_of(&self.names, e)
    }

    /// Canonical text encoding of the tables; equal frames (up to state
    /// names) have equal digests.
    pub fn digest(&self) -> String {
        let hex = |es: &[Event]| {
            es.iter()
                .map(|e| format!("{:x}", e.bits()))
                .collect::<Vec<_>>()
                .join(".")
        };
        format!("n{}|b{}|f{}", self.len(), hex(&self.belief), hex(&self.selection))
    }

    pub fn to_raw(&self) -> RawModel {
        let n = self.len();
        let belief = self
            .states()
            .map(|s| (self.names[s].clone(), self.names_of(self.belief(s))))
            .collect();
        let selection = self
            .states()
            .flat_map(|s| nonempty_events(n).map(move |e| (s, e)))
            .map(|(s, e)| RawSelection {
                state: self.names[s].clone(),
                event: self.names_of(e),
                selected: self.names_of(self.select(s, e)),
            })
            .collect();
        RawModel { states: self.names.clone(), belief, selection, valuation: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("the selection function is undefined on the empty event")]
pub struct EmptyEvent;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("formula `{0}` is not in the language")]
    Illformed(String),
    #[error("no state {0} in a frame of {1} states")]
    NoSuchState(StateId, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid frame: {}", join_errors(.0))]
    Frame(Vec<FrameError>),
    #[error("valuation of `{0}` mentions unknown state `{1}`")]
    Valuation(String, String),
    #[error("valuation of `{0}` is outside the frame")]
    ValuationRange(String),
}

fn join_errors(errors: &[FrameError]) -> String {
    errors.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

/// A frame plus a valuation. Atoms missing from the valuation are false
/// everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    frame: Frame,
    valuation: BTreeMap<String, Event>,
}

impl Model {
    pub fn new(frame: Frame, valuation: BTreeMap<String, Event>) -> Result<Model, ModelError> {
        let full = frame.full();
        for (atom, e) in &valuation {
            if !e.is_subset(full) {
                return Err(ModelError::ValuationRange(atom.clone()));
            }
        }
        Ok(Model { frame, valuation })
    }

    /// Convenience constructor from `(atom, event)` pairs.
    pub fn with_atoms<'a>(
        frame: Frame,
        atoms: impl IntoIterator<Item = (&'a str, Event)>,
    ) -> Result<Model, ModelError> {
        Model::new(frame, atoms.into_iter().map(|(a, e)| (a.to_string(), e)).collect())
    }

    pub fn from_raw(raw: &RawModel) -> Result<Model, ModelError> {
        let frame = validate_frame(raw).map_err(ModelError::Frame)?;
        let mut valuation = BTreeMap::new();
        for (atom, names) in raw.valuation.iter().flatten() {
            let mut e = Event::EMPTY;
            for name in names {
                let s = frame
                    .state_id(name)
                    .ok_or_else(|| ModelError::Valuation(atom.clone(), name.clone()))?;
                e = e.union(Event::singleton(s));
            }
            valuation.insert(atom.clone(), e);
        }
        Ok(Model { frame, valuation })
    }

    pub fn to_raw(&self) -> RawModel {
        let mut raw = self.frame.to_raw();
        raw.valuation = Some(
            self.valuation
                .iter()
                .map(|(a, e)| (a.clone(), self.frame.names_of(*e)))
                .collect(),
        );
        raw
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn valuation(&self) -> &BTreeMap<String, Event> {
        &self.valuation
    }

    pub fn atom(&self, name: &str) -> Event {
        self.valuation.get(name).copied().unwrap_or(Event::EMPTY)
    }

    fn check(&self, f: &Formula) -> Result<(), EvalError> {
        if classify(f) == SyntacticClass::Illformed {
            return Err(EvalError::Illformed(f.to_string()));
        }
        Ok(())
    }

    /// Whether `f` is true at state `s`, evaluated clause by clause at that
    /// state. Subformulas under `B` are evaluated at each belief state and
    /// conditional antecedents by scanning all states, so this path shares
    /// nothing with [`Model::truth_set`].
    pub fn truth(&self, s: StateId, f: &Formula) -> Result<bool, EvalError> {
        self.check(f)?;
        if s >= self.frame.len() {
            return Err(EvalError::NoSuchState(s, self.frame.len()));
        }
        Ok(self.holds_at(s, f))
    }

    fn holds_at(&self, s: StateId, f: &Formula) -> bool {
        match f {
            Formula::Atom(a) => self.atom(a).contains(s),
            Formula::Not(g) => !self.holds_at(s, g),
            Formula::Or(g, h) => self.holds_at(s, g) || self.holds_at(s, h),
            Formula::And(g, h) => self.holds_at(s, g) && self.holds_at(s, h),
            Formula::Implies(g, h) => !self.holds_at(s, g) || self.holds_at(s, h),
            Formula::Iff(g, h) => self.holds_at(s, g) == self.holds_at(s, h),
            Formula::Box(g) => self.frame.states().all(|x| self.holds_at(x, g)),
            Formula::Bel(g) => self.frame.belief(s).states().all(|x| self.holds_at(x, g)),
            Formula::Cond(g, h) => {
                let antecedent =
                    Event::from_states(self.frame.states().filter(|&x| self.holds_at(x, g)));
                antecedent.is_empty()
                    || self
                        .frame
                        .select(s, antecedent)
                        .states()
                        .all(|x| self.holds_at(x, h))
            }
        }
    }

    /// The truth set `‖f‖`, computed bottom-up over events.
    pub fn truth_set(&self, f: &Formula) -> Result<Event, EvalError> {
        self.check(f)?;
        Ok(self.extension(f))
    }

    pub(crate) fn extension(&self, f: &Formula) -> Event {
        let n = self.frame.len();
        match f {
            Formula::Atom(a) => self.atom(a),
            Formula::Not(g) => self.extension(g).complement(n),
            Formula::Or(g, h) => self.extension(g).union(self.extension(h)),
            Formula::And(g, h) => self.extension(g).intersection(self.extension(h)),
            Formula::Implies(g, h) => self.extension(g).complement(n).union(self.extension(h)),
            Formula::Iff(g, h) => {
                let (a, b) = (self.extension(g), self.extension(h));
                Event::from_bits(!(a.bits() ^ b.bits())).intersection(self.frame.full())
            }
            Formula::Box(g) => semantics::necessity(&self.frame, self.extension(g)),
            Formula::Bel(g) => semantics::belief(&self.frame, self.extension(g)),
            Formula::Cond(g, h) => {
                semantics::conditional(&self.frame, self.extension(g), self.extension(h))
            }
        }
    }
}

/// Truth sets of the modal operators as functions of their operands' truth
/// sets.
pub mod semantics {
    use super::Frame;
    use crate::event::Event;

    /// `‖[]φ‖` given `‖φ‖`: everything or nothing.
    pub fn necessity(frame: &Frame, phi: Event) -> Event {
        if phi == frame.full() {
            phi
        } else {
            Event::EMPTY
        }
    }

    /// `‖Bφ‖ = {s : B(s) ⊆ ‖φ‖}`.
    pub fn belief(frame: &Frame, phi: Event) -> Event {
        Event::from_states(frame.states().filter(|&s| frame.belief(s).is_subset(phi)))
    }

    /// `‖φ > ψ‖`: all states when `‖φ‖ = ∅`, else `{s : f(s, ‖φ‖) ⊆ ‖ψ‖}`.
    pub fn conditional(frame: &Frame, phi: Event, psi: Event) -> Event {
        if phi.is_empty() {
            return frame.full();
        }
        Event::from_states(frame.states().filter(|&s| frame.select(s, phi).is_subset(psi)))
    }
}

/// The frames and models every worked example is anchored to.
pub mod fixtures {
    use super::*;

    /// One state `s0`, `B(s0) = {s0}`, `f(s0, {s0}) = {s0}`.
    pub fn m0_frame() -> Frame {
        Frame::from_fn(vec![Event::singleton(0)], |_, e| e).unwrap()
    }

    /// Two states with `B(s0) = B(s1) = {s1}`, `f(s1, {s0}) = {s1}`, and
    /// `f(s, E) = E` otherwise. Violates the success property at `s0`.
    pub fn fx2_frame() -> Frame {
        let s1 = Event::singleton(1);
        Frame::from_fn(vec![s1, s1], |s, e| {
            if s == 1 && e == Event::singleton(0) {
                s1
            } else {
                e
            }
        })
        .unwrap()
    }

    /// Two states believing only `s0`, where `f(s0, {s1}) = ∅`: revising by
    /// `{s1}` at `s0` leaves no doxastic possibilities.
    pub fn empty_selection_frame() -> Frame {
        let s0 = Event::singleton(0);
        Frame::from_fn(vec![s0, s0], |s, e| {
            if s == 0 && e == Event::singleton(1) {
                Event::EMPTY
            } else {
                e
            }
        })
        .unwrap()
    }

    /// Two states believing only `s0`, where `f(s0, {s0}) = {s1}` and
    /// `f(s, E) = E` otherwise. Violates the conjunctive-revision property
    /// for `E = S`, `F = {s0}`.
    pub fn conjunction_frame() -> Frame {
        let s0 = Event::singleton(0);
        Frame::from_fn(vec![s0, s0], |s, e| {
            if s == 0 && e == s0 {
                Event::singleton(1)
            } else {
                e
            }
        })
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::parser::parse;

    fn f(text: &str) -> Formula {
        parse(text).unwrap()
    }

    fn m0(p: Event, q: Event) -> Model {
        Model::with_atoms(m0_frame(), [("p", p), ("q", q)]).unwrap()
    }

    const S0: Event = Event::from_bits(1);
    const S1: Event = Event::from_bits(2);

    fn raw_m0() -> RawModel {
        serde_json::from_str(
            r#"{"states":["s0"],"belief":{"s0":["s0"]},
                "selection":[{"state":"s0","event":["s0"],"selected":["s0"]}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn validates_smallest_frame() {
        let frame = validate_frame(&raw_m0()).unwrap();
        assert_eq!(frame, m0_frame());
    }

    #[test]
    fn empty_belief_set_is_non_serial() {
        let mut raw = fx2_frame().to_raw();
        raw.belief.insert("s0".into(), vec![]);
        let errors = validate_frame(&raw).unwrap_err();
        assert_eq!(errors, vec![FrameError::NonSerial("s0".into())]);
    }

    #[test]
    fn missing_selection_entry_is_reported() {
        let mut raw = fx2_frame().to_raw();
        raw.selection.retain(|r| !(r.state == "s1" && r.event == ["s0"]));
        let errors = validate_frame(&raw).unwrap_err();
        assert_eq!(
            errors,
            vec![FrameError::MissingSelectionEntry("s1".into(), vec!["s0".into()])]
        );
    }

    #[test]
    fn all_violations_are_listed() {
        let mut raw = fx2_frame().to_raw();
        raw.belief.remove("s1");
        raw.belief.insert("s0".into(), vec!["s9".into()]);
        raw.selection.retain(|r| r.state != "s0");
        let errors = validate_frame(&raw).unwrap_err();
        assert!(errors.contains(&FrameError::UnknownState("s9".into())));
        assert!(errors.contains(&FrameError::NonSerial("s0".into())));
        assert!(errors.contains(&FrameError::NonSerial("s1".into())));
        let missing = errors
            .iter()
            .filter(|e| matches!(e, FrameError::MissingSelectionEntry(s, _) if s == "s0"))
            .count();
        assert_eq!(missing, 3);
    }

    #[test]
    fn duplicate_and_empty_selection_rows() {
        let mut raw = raw_m0();
        raw.selection.push(raw.selection[0].clone());
        raw.selection.push(RawSelection { state: "s0".into(), event: vec![], selected: vec![] });
        let errors = validate_frame(&raw).unwrap_err();
        assert!(errors.contains(&FrameError::DuplicateSelectionEntry("s0".into(), vec!["s0".into()])));
        assert!(errors.contains(&FrameError::EmptySelectionEvent("s0".into())));
    }

    #[test]
    fn json_round_trip_through_raw() {
        let model = Model::with_atoms(fx2_frame(), [("p", S0)]).unwrap();
        let json = serde_json::to_string(&model.to_raw()).unwrap();
        let back: RawModel = serde_json::from_str(&json).unwrap();
        assert_eq!(Model::from_raw(&back).unwrap(), model);
    }

    #[test]
    fn valuation_with_unknown_state_is_rejected() {
        let mut raw = raw_m0();
        raw.valuation = Some([("p".to_string(), vec!["s7".to_string()])].into());
        assert_eq!(
            Model::from_raw(&raw),
            Err(ModelError::Valuation("p".into(), "s7".into()))
        );
    }

    #[test]
    fn vacuous_conditional_on_m0() {
        let model = m0(Event::EMPTY, Event::EMPTY);
        assert_eq!(model.truth(0, &f("p > q")), Ok(true));
    }

    #[test]
    fn belief_in_conditional_on_m0() {
        let model = m0(S0, S0);
        assert_eq!(model.truth(0, &f("B(p > q)")), Ok(true));
    }

    #[test]
    fn fx2_refutes_belief_in_success() {
        let model = Model::with_atoms(fx2_frame(), [("p", S0)]).unwrap();
        assert_eq!(model.truth(0, &f("B(p > p)")), Ok(false));
        // Pointwise: s1 believes only s1, whose selection for {s0} is {s1}.
        assert_eq!(model.truth(1, &f("B(p > p)")), Ok(false));
        assert_eq!(model.truth_set(&f("B(p > p)")), Ok(Event::EMPTY));
    }

    #[test]
    fn truth_set_examples() {
        let model = Model::with_atoms(fx2_frame(), [("p", S0)]).unwrap();
        assert_eq!(model.truth_set(&f("p | ~p")), Ok(model.frame().full()));
        assert_eq!(m0(S0, Event::EMPTY).truth_set(&f("[] p")), Ok(S0));
        assert_eq!(m0(Event::EMPTY, Event::EMPTY).truth_set(&f("[] p")), Ok(Event::EMPTY));
        assert_eq!(model.truth_set(&f("p > ~p")), Ok(S1));
    }

    #[test]
    fn illformed_formulas_are_rejected() {
        let model = m0(S0, S0);
        let bad = Formula::cond(f("p"), f("q > p"));
        assert!(matches!(model.truth(0, &bad), Err(EvalError::Illformed(_))));
        assert!(matches!(model.truth_set(&bad), Err(EvalError::Illformed(_))));
        assert_eq!(model.truth(3, &f("p")), Err(EvalError::NoSuchState(3, 1)));
    }

    #[test]
    fn revised_support_examples() {
        assert_eq!(m0_frame().revised_support(0, S0), Ok(S0));
        assert_eq!(fx2_frame().revised_support(0, S0), Ok(S1));
        let frame = fx2_frame();
        for e in nonempty_events(2) {
            assert_eq!(frame.revised_support(0, e), Ok(frame.select(1, e)));
        }
        assert_eq!(fx2_frame().revised_support(0, Event::EMPTY), Err(EmptyEvent));
    }

    #[test]
    fn from_tables_rejects_bad_input() {
        assert_eq!(
            Frame::from_tables(1, vec![Event::EMPTY], vec![S0]),
            Err(TableError::NonSerial(0))
        );
        assert_eq!(
            Frame::from_tables(1, vec![S0], vec![]),
            Err(TableError::Length { expected: 1, found: 0 })
        );
        assert_eq!(
            Frame::from_tables(1, vec![S0], vec![S1]),
            Err(TableError::OutOfRange(S1))
        );
    }

    #[test]
    fn digest_separates_fixtures() {
        assert_ne!(fx2_frame().digest(), conjunction_frame().digest());
        assert_eq!(fx2_frame().digest(), fx2_frame().digest());
    }
}
