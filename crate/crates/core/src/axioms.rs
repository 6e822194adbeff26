//! Validity of the modal counterparts of the AGM postulates on a frame, and
//! the countermodels that refute them on frames lacking the matching
//! property.
//!
//! A schema is valid on a frame when it holds at every state of every model
//! on the frame. Every event is the truth set of an atom under some
//! valuation, so it suffices to range each schematic letter over all events.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::event::{events_by_size, Event};
use crate::formula::Formula;
use crate::model::semantics::{belief, conditional, necessity};
use crate::model::{Frame, Model, StateId};
use crate::parser::parse;
use crate::properties::{PropertyId, PropertyWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomId {
    A1,
    A2,
    A3,
    A4,
    A5,
    A7,
    A8,
    RuleK5a,
    RuleK6,
}

impl AxiomId {
    pub const SCHEMAS: [AxiomId; 7] = [
        AxiomId::A1,
        AxiomId::A2,
        AxiomId::A3,
        AxiomId::A4,
        AxiomId::A5,
        AxiomId::A7,
        AxiomId::A8,
    ];

    pub const RULES: [AxiomId; 2] = [AxiomId::RuleK5a, AxiomId::RuleK6];

    pub fn is_rule(self) -> bool {
        matches!(self, AxiomId::RuleK5a | AxiomId::RuleK6)
    }

    /// Number of schematic letters (φ, ψ, χ) the schema uses.
    pub fn letters(self) -> usize {
        match self {
            AxiomId::A2 => 1,
            AxiomId::A3 | AxiomId::A4 | AxiomId::A5 | AxiomId::RuleK5a => 2,
            AxiomId::A1 | AxiomId::A7 | AxiomId::A8 | AxiomId::RuleK6 => 3,
        }
    }

    /// The frame property the axiom corresponds to.
    pub fn property(self) -> Option<PropertyId> {
        match self {
            AxiomId::A2 => Some(PropertyId::P2),
            AxiomId::A3 => Some(PropertyId::P3),
            AxiomId::A4 => Some(PropertyId::P4),
            AxiomId::A5 => Some(PropertyId::P5),
            AxiomId::A7 => Some(PropertyId::P7),
            AxiomId::A8 => Some(PropertyId::P8),
            _ => None,
        }
    }

    pub fn for_property(property: PropertyId) -> AxiomId {
        match property {
            PropertyId::P2 => AxiomId::A2,
            PropertyId::P3 => AxiomId::A3,
            PropertyId::P4 => AxiomId::A4,
            PropertyId::P5 => AxiomId::A5,
            PropertyId::P7 => AxiomId::A7,
            PropertyId::P8 => AxiomId::A8,
        }
    }

    /// The schema instantiated with `φ, ψ, χ := p, q, r`. For the rules this
    /// is the conclusion: `B(p > q)` with `p` contradictory, and
    /// `B(p > r) <-> B(q > r)` with `p`, `q` equivalent.
    pub fn instance_text(self) -> &'static str {
        match self {
            AxiomId::A1 => "B(p > q) & B(p > (q -> r)) -> B(p > r)",
            AxiomId::A2 => "B(p > p)",
            AxiomId::A3 => "~[]~p & B(p > q) -> B(p -> q)",
            AxiomId::A4 => "~B~p & B(p -> q) -> B(p > q)",
            AxiomId::A5 => "~[]~p & B(p > q) -> ~B(p > ~q)",
            AxiomId::A7 => "~[]~(p & q) & B(p & q > r) -> B(p > (q -> r))",
            AxiomId::A8 => "~B(p > ~q) & B(p > (q -> r)) -> B(p & q > q & r)",
            AxiomId::RuleK5a => "B(p > q)",
            AxiomId::RuleK6 => "B(p > r) <-> B(q > r)",
        }
    }

    pub fn instance(self) -> Formula {
        parse(self.instance_text()).expect("axiom instances are well-formed")
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let id = match s.to_ascii_lowercase().as_str() {
            "a1" => AxiomId::A1,
            "a2" => AxiomId::A2,
            "a3" => AxiomId::A3,
            "a4" => AxiomId::A4,
            "a5" => AxiomId::A5,
            "a7" => AxiomId::A7,
            "a8" => AxiomId::A8,
            "rulek5a" | "k5a" => AxiomId::RuleK5a,
            "rulek6" | "k6" => AxiomId::RuleK6,
            _ => {
                return Err(format!(
                    "unknown axiom `{s}` (expected A1-A5, A7, A8, RuleK5a or RuleK6)"
                ))
            }
        };
        Ok(id)
    }
}

/// Events assigned to the schematic letters φ, ψ, χ. Letters a schema does
/// not use stay empty.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaAssignment {
    pub phi: Event,
    pub psi: Event,
    pub chi: Event,
}

impl SchemaAssignment {
    /// The model on `frame` interpreting `p, q, r` as `φ, ψ, χ`.
    pub fn model(&self, frame: &Frame, letters: usize) -> Model {
        let atoms = [("p", self.phi), ("q", self.psi), ("r", self.chi)];
        Model::with_atoms(frame.clone(), atoms.into_iter().take(letters))
            .expect("assignment events lie within the frame")
    }
}

/// A falsifying assignment and the least state where the instance fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaWitness {
    pub axiom: AxiomId,
    pub assignment: SchemaAssignment,
    pub state: StateId,
}

impl SchemaWitness {
    /// A concrete model on `frame` where `axiom.instance()` is false at
    /// `self.state`.
    pub fn model(&self, frame: &Frame) -> Model {
        self.assignment.model(frame, self.axiom.letters())
    }

    pub fn replays(&self, frame: &Frame) -> bool {
        self.state < frame.len()
            && !self
                .model(frame)
                .truth(self.state, &self.axiom.instance())
                .expect("axiom instances are well-formed")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(SchemaWitness),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn witness(&self) -> Option<&SchemaWitness> {
        match self {
            Validity::Valid => None,
            Validity::Invalid(w) => Some(w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("{0} is an inference rule, not an axiom schema")]
    RuleNotSchema(AxiomId),
    #[error("{0} is an axiom schema, not an inference rule")]
    SchemaNotRule(AxiomId),
    #[error("a {found} witness cannot refute {axiom}")]
    MismatchedWitness { axiom: AxiomId, found: PropertyId },
    #[error("{0} has no corresponding frame property and no countermodel construction")]
    NoProperty(AxiomId),
}

/// Truth set of the schema under an assignment, composed from the operator
/// semantics without building a formula or a valuation.
pub fn schema_truth_set(frame: &Frame, axiom: AxiomId, a: &SchemaAssignment) -> Event {
    let n = frame.len();
    let not = |e: Event| e.complement(n);
    let implies = |x: Event, y: Event| not(x).union(y);
    let b = |e: Event| belief(frame, e);
    let cond = |x: Event, y: Event| conditional(frame, x, y);
    let possible = |e: Event| not(necessity(frame, not(e)));
    let (phi, psi, chi) = (a.phi, a.psi, a.chi);
    match axiom {
        AxiomId::A1 => implies(
            b(cond(phi, psi)).intersection(b(cond(phi, implies(psi, chi)))),
            b(cond(phi, chi)),
        ),
        AxiomId::A2 => b(cond(phi, phi)),
        AxiomId::A3 => implies(
            possible(phi).intersection(b(cond(phi, psi))),
            b(implies(phi, psi)),
        ),
        AxiomId::A4 => implies(
            not(b(not(phi))).intersection(b(implies(phi, psi))),
            b(cond(phi, psi)),
        ),
        AxiomId::A5 => implies(
            possible(phi).intersection(b(cond(phi, psi))),
            not(b(cond(phi, not(psi)))),
        ),
        AxiomId::A7 => {
            let both = phi.intersection(psi);
            implies(
                possible(both).intersection(b(cond(both, chi))),
                b(cond(phi, implies(psi, chi))),
            )
        }
        AxiomId::A8 => implies(
            not(b(cond(phi, not(psi)))).intersection(b(cond(phi, implies(psi, chi)))),
            b(cond(phi.intersection(psi), psi.intersection(chi))),
        ),
        AxiomId::RuleK5a => b(cond(phi, psi)),
        AxiomId::RuleK6 => {
            let x = b(cond(phi, chi));
            let y = b(cond(psi, chi));
            Event::from_bits(!(x.bits() ^ y.bits())).intersection(frame.full())
        }
    }
}

/// All assignments for `letters` letters, least first.
fn assignments(n: usize, letters: usize) -> impl Iterator<Item = SchemaAssignment> {
    let events = events_by_size(n);
    let pick = move |k: usize| if letters > k { events.clone() } else { vec![Event::EMPTY] };
    let (phis, psis, chis) = (pick(0), pick(1), pick(2));
    phis.into_iter().flat_map(move |phi| {
        let chis = chis.clone();
        psis.clone().into_iter().flat_map(move |psi| {
            chis.clone()
                .into_iter()
                .map(move |chi| SchemaAssignment { phi, psi, chi })
        })
    })
}

/// Decides whether an axiom schema is valid on `frame`; on failure returns
/// the least falsifying assignment and the least state where it fails.
pub fn schema_valid_on_frame(frame: &Frame, axiom: AxiomId) -> Result<Validity, AxiomError> {
    if axiom.is_rule() {
        return Err(AxiomError::RuleNotSchema(axiom));
    }
    let full = frame.full();
    for assignment in assignments(frame.len(), axiom.letters()) {
        let holds = schema_truth_set(frame, axiom, &assignment);
        if let Some(state) = full.difference(holds).first() {
            return Ok(Validity::Invalid(SchemaWitness { axiom, assignment, state }));
        }
    }
    Ok(Validity::Valid)
}

/// Checks that a rule's conclusion holds everywhere on `frame` whenever its
/// premise does, reading the premise at the level of events: a
/// contradictory `φ` has the empty truth set, and tautologically equivalent
/// `φ`, `ψ` have the same truth set. Conclusions are evaluated as formulas
/// over concrete models.
pub fn rule_valid_on_frame(frame: &Frame, rule: AxiomId) -> Result<Validity, AxiomError> {
    let conclusion = rule.instance();
    let events = events_by_size(frame.len());
    let candidates: Vec<SchemaAssignment> = match rule {
        AxiomId::RuleK5a => events
            .iter()
            .map(|&psi| SchemaAssignment { phi: Event::EMPTY, psi, chi: Event::EMPTY })
            .collect(),
        AxiomId::RuleK6 => events
            .iter()
            .flat_map(|&e| {
                events
                    .iter()
                    .map(move |&chi| SchemaAssignment { phi: e, psi: e, chi })
            })
            .collect(),
        other => return Err(AxiomError::SchemaNotRule(other)),
    };
    for assignment in candidates {
        let witness = SchemaWitness { axiom: rule, assignment, state: 0 };
        let model = witness.model(frame);
        let holds = model.truth_set(&conclusion).expect("rule conclusions are well-formed");
        if let Some(state) = frame.full().difference(holds).first() {
            return Ok(Validity::Invalid(SchemaWitness { state, ..witness }));
        }
    }
    Ok(Validity::Valid)
}

/// Schema or rule, whichever `axiom` is.
pub fn axiom_valid_on_frame(frame: &Frame, axiom: AxiomId) -> Validity {
    if axiom.is_rule() {
        rule_valid_on_frame(frame, axiom)
    } else {
        schema_valid_on_frame(frame, axiom)
    }
    .expect("dispatched on kind")
}

/// A model and state where an axiom instance is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub axiom: AxiomId,
    pub model: Model,
    pub state: StateId,
    pub instance: Formula,
}

impl Countermodel {
    pub fn falsifies(&self) -> bool {
        !self
            .model
            .truth(self.state, &self.instance)
            .expect("axiom instances are well-formed")
    }
}

/// Builds the refuting model for `axiom` out of a violation of its frame
/// property:
///
/// | axiom | valuation                                   |
/// |-------|---------------------------------------------|
/// | A2    | `p = E`                                     |
/// | A3    | `p = E`, `q = U(s, E)`                      |
/// | A4    | `p = E`, `q = B(s) ∩ E`                     |
/// | A5    | `p = E`, `q = ∅`                            |
/// | A7    | `p = E`, `q = F`, `r = G`                   |
/// | A8    | `p = E`, `q = F`, `r = U(s, E)`             |
///
/// The instance is false at the witness state `s`.
pub fn build_countermodel(
    frame: &Frame,
    axiom: AxiomId,
    witness: &PropertyWitness,
) -> Result<Countermodel, AxiomError> {
    let property = axiom.property().ok_or(AxiomError::NoProperty(axiom))?;
    if witness.property != property {
        return Err(AxiomError::MismatchedWitness { axiom, found: witness.property });
    }
    let s = witness.state;
    let e = witness.e;
    let support = || frame.union_selection(frame.belief(s), e);
    let extra = |x: Option<Event>| x.ok_or(AxiomError::MismatchedWitness { axiom, found: property });
    let atoms: Vec<(&str, Event)> = match axiom {
        AxiomId::A2 => vec![("p", e)],
        AxiomId::A3 => vec![("p", e), ("q", support())],
        AxiomId::A4 => vec![("p", e), ("q", frame.belief(s).intersection(e))],
        AxiomId::A5 => vec![("p", e), ("q", Event::EMPTY)],
        AxiomId::A7 => vec![("p", e), ("q", extra(witness.f)?), ("r", extra(witness.g)?)],
        AxiomId::A8 => vec![("p", e), ("q", extra(witness.f)?), ("r", support())],
        _ => unreachable!("axioms without a property were rejected above"),
    };
    let model = Model::with_atoms(frame.clone(), atoms).expect("events lie within the frame");
    Ok(Countermodel { axiom, model, state: s, instance: axiom.instance() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::properties::check_property;

    const S0: Event = Event::from_bits(1);

    #[test]
    fn m0_validates_success_schema() {
        assert_eq!(schema_valid_on_frame(&m0_frame(), AxiomId::A2), Ok(Validity::Valid));
    }

    #[test]
    fn fx2_refutes_success_schema() {
        let v = schema_valid_on_frame(&fx2_frame(), AxiomId::A2).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.assignment.phi, S0);
        assert_eq!(w.state, 0);
        assert!(w.replays(&fx2_frame()));
    }

    #[test]
    fn closure_schema_holds_on_fixtures() {
        for frame in [m0_frame(), fx2_frame(), empty_selection_frame(), conjunction_frame()] {
            assert_eq!(schema_valid_on_frame(&frame, AxiomId::A1), Ok(Validity::Valid));
        }
    }

    #[test]
    fn rules_hold_on_fixtures() {
        for frame in [m0_frame(), fx2_frame(), empty_selection_frame(), conjunction_frame()] {
            for rule in AxiomId::RULES {
                assert_eq!(rule_valid_on_frame(&frame, rule), Ok(Validity::Valid), "{rule}");
            }
        }
    }

    #[test]
    fn kinds_are_not_interchangeable() {
        assert_eq!(
            schema_valid_on_frame(&m0_frame(), AxiomId::RuleK6),
            Err(AxiomError::RuleNotSchema(AxiomId::RuleK6))
        );
        assert_eq!(
            rule_valid_on_frame(&m0_frame(), AxiomId::A3),
            Err(AxiomError::SchemaNotRule(AxiomId::A3))
        );
    }

    #[test]
    fn success_countermodel_on_fx2() {
        let frame = fx2_frame();
        let w = check_property(&frame, PropertyId::P2).unwrap_err();
        let cm = build_countermodel(&frame, AxiomId::A2, &w).unwrap();
        assert_eq!(cm.model.atom("p"), S0);
        assert_eq!(cm.state, 0);
        assert_eq!(cm.instance.to_string(), "B(p > p)");
        assert!(cm.falsifies());
    }

    #[test]
    fn consistency_countermodel_believes_both_conditionals() {
        let frame = empty_selection_frame();
        let w = check_property(&frame, PropertyId::P5).unwrap_err();
        let cm = build_countermodel(&frame, AxiomId::A5, &w).unwrap();
        assert_eq!(cm.model.atom("p"), w.e);
        assert_eq!(cm.model.atom("q"), Event::EMPTY);
        let at = |text: &str| cm.model.truth(cm.state, &parse(text).unwrap()).unwrap();
        assert!(at("B(p > q)"));
        assert!(at("B(p > ~q)"));
        assert!(cm.falsifies());
    }

    #[test]
    fn conjunction_countermodel_matches_construction() {
        let frame = conjunction_frame();
        let w = check_property(&frame, PropertyId::P8).unwrap_err();
        let cm = build_countermodel(&frame, AxiomId::A8, &w).unwrap();
        let s = w.state;
        assert_eq!(cm.model.atom("r"), frame.revised_support(s, w.e).unwrap());
        let at = |text: &str| cm.model.truth(s, &parse(text).unwrap()).unwrap();
        assert!(at("B(p > (q -> r))"));
        assert!(at("~B(p > ~q)"));
        assert!(!at("B((p & q) > (q & r))"));
        assert!(cm.falsifies());
    }

    #[test]
    fn mismatched_witness_is_rejected() {
        let frame = fx2_frame();
        let w = check_property(&frame, PropertyId::P2).unwrap_err();
        assert_eq!(
            build_countermodel(&frame, AxiomId::A4, &w),
            Err(AxiomError::MismatchedWitness { axiom: AxiomId::A4, found: PropertyId::P2 })
        );
        assert_eq!(
            build_countermodel(&frame, AxiomId::A1, &w),
            Err(AxiomError::NoProperty(AxiomId::A1))
        );
    }

    #[test]
    fn assignment_counts() {
        assert_eq!(assignments(2, 1).count(), 4);
        assert_eq!(assignments(2, 2).count(), 16);
        assert_eq!(assignments(3, 3).count(), 512);
        let first = assignments(2, 3).next().unwrap();
        assert_eq!(first, SchemaAssignment::default());
    }

    #[test]
    fn axiom_names_parse() {
        for id in AxiomId::SCHEMAS.into_iter().chain(AxiomId::RULES) {
            assert_eq!(id.to_string().parse::<AxiomId>(), Ok(id));
        }
        assert!("A6".parse::<AxiomId>().is_err());
    }
}
