//! Cooperative cancellation for long-running builders.

use core::sync::atomic::{AtomicBool, Ordering};

/// A flag polled by saturation, Buchberger and cycle enumeration loops.
///
/// Callers that want to interrupt a computation share one token with the
/// worker and set it from another thread; the builder returns a `Cancelled`
/// error at the next checkpoint.
#[derive(Debug, Default)]
pub struct CancelToken {
    flag: AtomicBool,
}

impl CancelToken {
    pub const fn new() -> Self {
        Self { flag: AtomicBool::new(false) }
    }

    pub fn cancel(&self) {
        self.flag.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.flag.load(Ordering::Relaxed)
    }
}

/// Token used by the convenience entry points that never cancel.
pub(crate) static NEVER: CancelToken = CancelToken::new();
