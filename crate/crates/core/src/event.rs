//! Events: subsets of a frame's state set, stored as fixed-width bit masks.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest frame the bit-mask representation supports.
///
/// Selection tables hold `n * (2^n - 1)` entries, so frames anywhere near this
/// bound are already impractical to write down by hand.
pub const MAX_STATES: usize = 16;

/// A set of state indices `0..n` of some frame.
///
/// The owning frame's size is not stored; operations that need it (complement,
/// the full set) take `n` explicitly.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Event(u32);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub const fn from_bits(bits: u32) -> Self {
        Event(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The set of all `n` states.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_STATES);
        Event(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(state: usize) -> Self {
        Event(1 << state)
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(states: I) -> Self {
        states
            .into_iter()
            .fold(Event::EMPTY, |acc, s| acc.union(Event::singleton(s)))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, state: usize) -> bool {
        state < 32 && self.0 & (1 << state) != 0
    }

    pub fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Event) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Event) -> Self {
        Event(self.0 | other.0)
    }

    pub fn intersection(self, other: Event) -> Self {
        Event(self.0 & other.0)
    }

    pub fn difference(self, other: Event) -> Self {
        Event(self.0 & !other.0)
    }

    /// Complement relative to a frame of `n` states.
    pub fn complement(self, n: usize) -> Self {
        Event::full(n).difference(self)
    }

    /// Member states in increasing index order.
    pub fn states(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let s = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(s)
            }
        })
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Dense index of a nonempty event among the `2^n - 1` nonempty events.
    pub(crate) fn nonempty_index(self) -> usize {
        debug_assert!(!self.is_empty());
        self.0 as usize - 1
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.states().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

/// All `2^n` events over `n` states, in mask order.
pub fn all_events(n: usize) -> impl Iterator<Item = Event> + Clone {
    (0..1u32 << n).map(Event)
}

/// All nonempty events over `n` states, in mask order.
pub fn nonempty_events(n: usize) -> impl Iterator<Item = Event> + Clone {
    (1..1u32 << n).map(Event)
}

/// All events ordered by size, then by mask. Witness searches scan in this
/// order so that reported witnesses are the lexicographically least ones.
pub fn events_by_size(n: usize) -> Vec<Event> {
    let mut events: Vec<Event> = all_events(n).collect();
    events.sort_by_key(|e| (e.len(), e.bits()));
    events
}

/// Nonempty events ordered by size, then by mask.
pub fn nonempty_events_by_size(n: usize) -> Vec<Event> {
    let mut events = events_by_size(n);
    events.remove(0);
    events
}
