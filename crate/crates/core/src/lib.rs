//! A workbench for the logic of belief, conditionals and global necessity
//! over finite Kripke-Lewis frames, and for checking how the AGM belief
//! revision postulates line up with frame properties and modal axioms.
//!
//! * [`formula`] and [`parser`]: the stratified language and its syntax.
//! * [`model`]: frames, models, and truth.
//! * [`properties`]: the frame properties behind K*2, K*3, K*4, K*5b, K*7
//!   and K*8.
//! * [`axioms`]: validity of the matching modal axioms, and countermodels.
//! * [`revision`]: belief sets, revision and expansion read off a model.
//! * [`correspondence`]: frame enumeration and the agreement sweep.

pub mod axioms;
pub mod correspondence;
pub mod event;
pub mod formula;
pub mod model;
pub mod parser;
pub mod properties;
pub mod revision;

pub use axioms::{
    build_countermodel, rule_valid_on_frame, schema_valid_on_frame, AxiomId,
    Countermodel, SchemaAssignment, SchemaWitness, Validity,
};
pub use correspondence::{
    enumerate_frames, sample_frames, sweep, triple_check, FrameRecord, Report, SweepConfig,
    SweepMode,
};
pub use event::Event;
pub use formula::{atoms, classify, is_tautology, Formula, SyntacticClass};
pub use model::{validate_frame, Frame, Model, RawModel, StateId};
pub use parser::{parse, FormulaError, ParseError};
pub use properties::{check_property, PropertyId, PropertyWitness};
pub use revision::{
    agm_event_check, expand_membership, in_k, revise_membership, AgmPostulateId, AgmWitness,
};
