//! Frame enumeration and sampling, and the sweep that checks, frame by
//! frame, that each frame property, its modal axiom and its AGM postulate
//! agree.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{axiom_valid_on_frame, build_countermodel, AxiomId};
use crate::event::{Event, MAX_STATES};
use crate::model::Frame;
use crate::properties::{check_property, PropertyId};
use crate::revision::{agm_holds_everywhere, AgmPostulateId};

/// Largest state count enumerated exhaustively without an explicit override.
pub const EXHAUSTIVE_LIMIT: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("frames need between 1 and {MAX_STATES} states, got {0}")]
    StateCount(usize),
    #[error("exhaustive enumeration of {0}-state frames is refused without an override")]
    TooLarge(usize),
    #[error("random sampling needs a seed")]
    MissingSeed,
    #[error("random sampling needs a positive sample count")]
    ZeroCount,
    #[error("no property/axiom pairs selected")]
    NoPairs,
    #[error("worker failed on frame {frame_index}: {message}")]
    Worker {
        frame_index: u64,
        message: String,
        partial: Box<Report>,
    },
}

/// Number of frames on `n` states: `(2^n - 1)^n` serial belief relations
/// times `(2^n)^(n (2^n - 1))` selection tables. `None` on overflow.
pub fn frame_count(n: usize) -> Option<u128> {
    if n == 0 || n > MAX_STATES {
        return Some(0);
    }
    let events = 1u128 << n;
    let beliefs = (events - 1).checked_pow(n as u32)?;
    let entries = u32::try_from(n as u128 * (events - 1)).ok()?;
    let tables = events.checked_pow(entries)?;
    beliefs.checked_mul(tables)
}

/// Every frame on `n` states exactly once. Belief relations vary slowest;
/// within one, selection tables count up with the first entry fastest.
pub struct FrameEnumerator {
    n: usize,
    belief: Vec<u32>,
    selection: Vec<u32>,
    done: bool,
}

impl Iterator for FrameEnumerator {
    type Item = Frame;

    fn next(&mut self) -> Option<Frame> {
        if self.done {
            return None;
        }
        let frame = Frame::from_tables(
            self.n,
            self.belief.iter().map(|&b| Event::from_bits(b)).collect(),
            self.selection.iter().map(|&f| Event::from_bits(f)).collect(),
        )
        .expect("enumerated tables are serial and total");

        let events = 1u32 << self.n;
        let carried_out = increment(&mut self.selection, 0, events);
        if carried_out && increment(&mut self.belief, 1, events) {
            self.done = true;
        }
        Some(frame)
    }
}

/// Mixed-radix increment over `[low, high)`; true when it wraps around.
fn increment(digits: &mut [u32], low: u32, high: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < high {
            return false;
        }
        *d = low;
    }
    true
}

pub fn enumerate_frames(n: usize, allow_large: bool) -> Result<FrameEnumerator, SweepError> {
    if n == 0 || n > MAX_STATES {
        return Err(SweepError::StateCount(n));
    }
    if n > EXHAUSTIVE_LIMIT && !allow_large {
        return Err(SweepError::TooLarge(n));
    }
    let width = (1usize << n) - 1;
    Ok(FrameEnumerator {
        n,
        belief: vec![1; n],
        selection: vec![0; n * width],
        done: false,
    })
}

/// Independent uniform draws: each `B(s)` over the nonempty events, each
/// `f(s, E)` over all events.
pub fn sample_frames(n: usize, count: u64, seed: u64) -> impl Iterator<Item = Frame> {
    assert!((1..=MAX_STATES).contains(&n), "frames need 1..={MAX_STATES} states");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let events = 1u32 << n;
    let width = events as usize - 1;
    (0..count).map(move |_| {
        let belief = (0..n).map(|_| Event::from_bits(rng.gen_range(1..events))).collect();
        let selection = (0..n * width)
            .map(|_| Event::from_bits(rng.gen_range(0..events)))
            .collect();
        Frame::from_tables(n, belief, selection).expect("sampled tables are serial and total")
    })
}

/// The AGM postulate a frame property characterizes.
pub fn postulate_for(property: PropertyId) -> AgmPostulateId {
    match property {
        PropertyId::P2 => AgmPostulateId::K2,
        PropertyId::P3 => AgmPostulateId::K3,
        PropertyId::P4 => AgmPostulateId::K4,
        PropertyId::P5 => AgmPostulateId::K5b,
        PropertyId::P7 => AgmPostulateId::K7,
        PropertyId::P8 => AgmPostulateId::K8,
    }
}

/// The three verdicts for one `k` on one frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub property: bool,
    pub axiom: bool,
    /// The event-level postulate holds at every state.
    pub agm: bool,
}

/// Verdicts for the checks expected to succeed on every frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlwaysValid {
    pub a1: bool,
    pub rule_k5a: bool,
    pub rule_k6: bool,
    pub k1: bool,
    pub k5a: bool,
    pub k6: bool,
}

impl AlwaysValid {
    fn columns(&self) -> [(&'static str, bool); 6] {
        [
            ("A1", self.a1),
            ("RuleK5a", self.rule_k5a),
            ("RuleK6", self.rule_k6),
            ("K1", self.k1),
            ("K5a", self.k5a),
            ("K6", self.k6),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "id")]
pub enum DiscrepancyKind {
    /// Frame property and modal axiom disagree.
    PropertyAxiom(PropertyId),
    /// Frame property and AGM postulate disagree where they should coincide.
    PropertyAgm(PropertyId),
    /// P4 holds but K*4 fails at some state.
    PropertyImpliesAgm(PropertyId),
    /// A check expected on every frame failed.
    AlwaysValid(String),
    /// The countermodel built from a property witness does not refute the
    /// axiom.
    CountermodelReplay(PropertyId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameRecord {
    pub digest: String,
    pub pairs: BTreeMap<PropertyId, PairRecord>,
    pub always_valid: AlwaysValid,
    pub discrepancies: Vec<DiscrepancyKind>,
}

impl FrameRecord {
    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Runs every property, axiom and postulate check on one frame.
pub fn triple_check(frame: &Frame) -> FrameRecord {
    triple_check_pairs(frame, &PropertyId::ALL)
}

pub fn triple_check_pairs(frame: &Frame, pairs: &[PropertyId]) -> FrameRecord {
    let mut discrepancies = Vec::new();
    let mut records = BTreeMap::new();
    for &k in pairs {
        let record = PairRecord {
            property: check_property(frame, k).is_ok(),
            axiom: axiom_valid_on_frame(frame, AxiomId::for_property(k)).is_valid(),
            agm: agm_holds_everywhere(frame, postulate_for(k)),
        };
        if record.property != record.axiom {
            discrepancies.push(DiscrepancyKind::PropertyAxiom(k));
        }
        if k == PropertyId::P4 {
            if record.property && !record.agm {
                discrepancies.push(DiscrepancyKind::PropertyImpliesAgm(k));
            }
        } else if record.property != record.agm {
            discrepancies.push(DiscrepancyKind::PropertyAgm(k));
        }
        records.insert(k, record);
    }
    let always_valid = AlwaysValid {
        a1: axiom_valid_on_frame(frame, AxiomId::A1).is_valid(),
        rule_k5a: axiom_valid_on_frame(frame, AxiomId::RuleK5a).is_valid(),
        rule_k6: axiom_valid_on_frame(frame, AxiomId::RuleK6).is_valid(),
        k1: agm_holds_everywhere(frame, AgmPostulateId::K1),
        k5a: agm_holds_everywhere(frame, AgmPostulateId::K5a),
        k6: agm_holds_everywhere(frame, AgmPostulateId::K6),
    };
    for (name, ok) in always_valid.columns() {
        if !ok {
            discrepancies.push(DiscrepancyKind::AlwaysValid(name.to_string()));
        }
    }
    FrameRecord { digest: frame.digest(), pairs: records, always_valid, discrepancies }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub states: usize,
    pub mode: SweepMode,
    /// Frames drawn in random mode; ignored when exhaustive.
    pub count: u64,
    pub seed: Option<u64>,
    pub pairs: Vec<PropertyId>,
    /// Permits exhaustive enumeration beyond two states.
    pub allow_large: bool,
    #[serde(skip)]
    pub workers: usize,
}

impl SweepConfig {
    pub fn exhaustive(states: usize) -> Self {
        SweepConfig {
            states,
            mode: SweepMode::Exhaustive,
            count: 0,
            seed: None,
            pairs: PropertyId::ALL.to_vec(),
            allow_large: false,
            workers: 1,
        }
    }

    pub fn random(states: usize, count: u64, seed: u64) -> Self {
        SweepConfig {
            mode: SweepMode::Random,
            count,
            seed: Some(seed),
            ..SweepConfig::exhaustive(states)
        }
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.states == 0 || self.states > MAX_STATES {
            return Err(SweepError::StateCount(self.states));
        }
        if self.pairs.is_empty() {
            return Err(SweepError::NoPairs);
        }
        match self.mode {
            SweepMode::Exhaustive if self.states > EXHAUSTIVE_LIMIT && !self.allow_large => {
                Err(SweepError::TooLarge(self.states))
            }
            SweepMode::Random if self.seed.is_none() => Err(SweepError::MissingSeed),
            SweepMode::Random if self.count == 0 => Err(SweepError::ZeroCount),
            _ => Ok(()),
        }
    }
}

/// Cells keyed by (first verdict, second verdict): `pf` counts frames where
/// the property passes and the paired check fails.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contingency {
    pub pp: u64,
    pub pf: u64,
    pub fp: u64,
    pub ff: u64,
}

impl Contingency {
    fn record(&mut self, first: bool, second: bool) {
        match (first, second) {
            (true, true) => self.pp += 1,
            (true, false) => self.pf += 1,
            (false, true) => self.fp += 1,
            (false, false) => self.ff += 1,
        }
    }

    fn merge(&mut self, other: &Contingency) {
        self.pp += other.pp;
        self.pf += other.pf;
        self.fp += other.fp;
        self.ff += other.ff;
    }

    pub fn total(&self) -> u64 {
        self.pp + self.pf + self.fp + self.ff
    }

    /// Frames where the two verdicts differ.
    pub fn disagreements(&self) -> u64 {
        self.pf + self.fp
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayTally {
    pub attempted: u64,
    pub succeeded: u64,
}

impl ReplayTally {
    pub fn all_succeeded(&self) -> bool {
        self.attempted == self.succeeded
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub frame_index: u64,
    pub digest: String,
    #[serde(flatten)]
    pub kind: DiscrepancyKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub frames: u64,
    pub discrepancies: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: SweepConfig,
    pub totals: Totals,
    /// Property against modal axiom, per `Pk`.
    pub per_axiom: BTreeMap<PropertyId, Contingency>,
    /// Property against the AGM postulate holding at every state, per `Pk`.
    /// For P4 only the `pf` cell counts as a discrepancy; `fp` is observed.
    pub per_agm: BTreeMap<PropertyId, Contingency>,
    /// Frames on which each always-valid check held.
    pub always_valid: BTreeMap<String, u64>,
    pub countermodel_replay: BTreeMap<PropertyId, ReplayTally>,
    pub discrepancies: Vec<Discrepancy>,
    pub duration_ms: u64,
}

impl Report {
    pub fn empty(config: SweepConfig) -> Report {
        let zeroed = |pairs: &[PropertyId]| pairs.iter().map(|&k| (k, Contingency::default())).collect();
        Report {
            per_axiom: zeroed(&config.pairs),
            per_agm: zeroed(&config.pairs),
            always_valid: AlwaysValid {
                a1: true,
                rule_k5a: true,
                rule_k6: true,
                k1: true,
                k5a: true,
                k6: true,
            }
            .columns()
            .iter()
            .map(|(name, _)| (name.to_string(), 0))
            .collect(),
            countermodel_replay: config
                .pairs
                .iter()
                .map(|&k| (k, ReplayTally::default()))
                .collect(),
            config,
            totals: Totals::default(),
            discrepancies: Vec::new(),
            duration_ms: 0,
        }
    }

    fn absorb(&mut self, index: u64, frame: &Frame, record: &FrameRecord) {
        self.totals.frames += 1;
        for (k, pair) in &record.pairs {
            self.per_axiom.entry(*k).or_default().record(pair.property, pair.axiom);
            self.per_agm.entry(*k).or_default().record(pair.property, pair.agm);
        }
        for (name, ok) in record.always_valid.columns() {
            if ok {
                *self.always_valid.entry(name.to_string()).or_default() += 1;
            }
        }
        let mut found: Vec<DiscrepancyKind> = record.discrepancies.clone();
        for &k in record.pairs.keys() {
            let Err(witness) = check_property(frame, k) else { continue };
            let tally = self.countermodel_replay.entry(k).or_default();
            tally.attempted += 1;
            let refuted = build_countermodel(frame, AxiomId::for_property(k), &witness)
                .map(|cm| cm.falsifies())
                .unwrap_or(false);
            if refuted {
                tally.succeeded += 1;
            } else {
                found.push(DiscrepancyKind::CountermodelReplay(k));
            }
        }
        for kind in found {
            self.totals.discrepancies += 1;
            self.discrepancies.push(Discrepancy {
                frame_index: index,
                digest: record.digest.clone(),
                kind,
            });
        }
    }

    /// Combines reports over disjoint parts of one frame stream. Counts add,
    /// discrepancies are kept in frame order, and the duration is the longer
    /// of the two.
    pub fn merge(mut self, other: Report) -> Report {
        self.totals.frames += other.totals.frames;
        self.totals.discrepancies += other.totals.discrepancies;
        for (k, c) in &other.per_axiom {
            self.per_axiom.entry(*k).or_default().merge(c);
        }
        for (k, c) in &other.per_agm {
            self.per_agm.entry(*k).or_default().merge(c);
        }
        for (name, count) in other.always_valid {
            *self.always_valid.entry(name).or_default() += count;
        }
        for (k, t) in other.countermodel_replay {
            let mine = self.countermodel_replay.entry(k).or_default();
            mine.attempted += t.attempted;
            mine.succeeded += t.succeeded;
        }
        self.discrepancies.extend(other.discrepancies);
        self.discrepancies
            .sort_by(|a, b| (a.frame_index, &a.kind).cmp(&(b.frame_index, &b.kind)));
        self.duration_ms = self.duration_ms.max(other.duration_ms);
        self
    }

    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
            && self.countermodel_replay.values().all(ReplayTally::all_succeeded)
    }

    /// Serialized report with the duration zeroed, for determinism checks.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.duration_ms = 0;
        serde_json::to_string(&copy).expect("reports serialize")
    }
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "worker panicked".to_string())
}

/// Folds [`triple_check`] and countermodel replay over a numbered frame
/// stream using `config.workers` threads. A failing frame aborts the sweep
/// and returns what had been accumulated.
pub fn sweep_frames<I>(config: &SweepConfig, frames: I) -> Result<Report, SweepError>
where
    I: Iterator<Item = (u64, Frame)> + Send,
{
    if config.pairs.is_empty() {
        return Err(SweepError::NoPairs);
    }
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .expect("thread pool");
    let fresh = || Report::empty(config.clone());
    type Failed = (u64, String, Report);
    let result: Result<Report, Failed> = pool.install(|| {
        frames
            .par_bridge()
            .try_fold(fresh, |mut acc, (index, frame)| {
                let outcome = catch_unwind(AssertUnwindSafe(|| {
                    let record = triple_check_pairs(&frame, &config.pairs);
                    acc.absorb(index, &frame, &record);
                }));
                match outcome {
                    Ok(()) => Ok(acc),
                    Err(payload) => Err((index, panic_message(payload), acc)),
                }
            })
            .try_reduce(fresh, |a, b| Ok(a.merge(b)))
    });
    let elapsed = started.elapsed().as_millis() as u64;
    match result {
        Ok(mut report) => {
            report
                .discrepancies
                .sort_by(|a, b| (a.frame_index, &a.kind).cmp(&(b.frame_index, &b.kind)));
            report.duration_ms = elapsed;
            Ok(report)
        }
        Err((frame_index, message, mut partial)) => {
            partial.duration_ms = elapsed;
            Err(SweepError::Worker { frame_index, message, partial: Box::new(partial) })
        }
    }
}

/// Sweeps the frame stream described by `config`.
pub fn sweep(config: &SweepConfig) -> Result<Report, SweepError> {
    config.validate()?;
    match config.mode {
        SweepMode::Exhaustive => {
            let frames = enumerate_frames(config.states, config.allow_large)?;
            sweep_frames(config, (0u64..).zip(frames))
        }
        SweepMode::Random => {
            let seed = config.seed.ok_or(SweepError::MissingSeed)?;
            let frames = sample_frames(config.states, config.count, seed);
            sweep_frames(config, (0u64..).zip(frames))
        }
    }
}
