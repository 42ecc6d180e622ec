//! Per-thread counter of envelope constructions.
//!
//! One "pass" is building the upper and lower envelope of one candidate
//! signal. The sawtooth method records one pass per mode; the EMD baseline
//! records one per sift.

use std::cell::Cell;

thread_local! {
    static ENVELOPE_PASSES: Cell<u64> = const { Cell::new(0) };
}

pub(crate) fn record_envelope_pass() {
    ENVELOPE_PASSES.with(|c| c.set(c.get() + 1));
}

/// Envelope passes performed on the current thread so far.
pub fn envelope_passes() -> u64 {
    ENVELOPE_PASSES.with(Cell::get)
}
