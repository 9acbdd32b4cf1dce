//! Instrumentation counters.

use std::sync::atomic::{AtomicU64, Ordering};

/// Shared counters, safe to bump from several threads.
#[derive(Debug, Default)]
pub struct Stats {
    entries: AtomicU64,
    conv_len: AtomicU64,
}

/// A snapshot of [`Stats`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Matrix entries evaluated by SMAWK.
    pub entries: u64,
    /// Total output length of sumset computations.
    pub conv_len: u64,
}

impl Stats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_entries(&self, k: u64) {
        self.entries.fetch_add(k, Ordering::Relaxed);
    }

    pub fn add_conv_len(&self, k: u64) {
        self.conv_len.fetch_add(k, Ordering::Relaxed);
    }

    pub fn snapshot(&self) -> Counters {
        Counters {
            entries: self.entries.load(Ordering::Relaxed),
            conv_len: self.conv_len.load(Ordering::Relaxed),
        }
    }
}
