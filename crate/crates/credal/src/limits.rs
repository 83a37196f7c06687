//! Process-wide cap on operations that enumerate all `2^n` subsets of a frame.
//!
//! Frames themselves may be arbitrarily large; only operations that walk the
//! full power set (Moebius inversion, belief vectors, exhaustive dominance
//! checks) refuse to run above the cap. The default of 20 keeps the worst
//! case around a million subsets.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_ENUM_CAP: usize = 20;

static ENUM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENUM_CAP);

/// Current power-set enumeration cap (frame size, not subset count).
pub fn enum_cap() -> usize {
    ENUM_CAP.load(Ordering::Relaxed)
}

/// Override the enumeration cap. The CLI wires `EVID_ENUM_CAP` here.
pub fn set_enum_cap(cap: usize) {
    ENUM_CAP.store(cap, Ordering::Relaxed);
}

/// Fail with a distinct error when a frame is too large to enumerate.
pub fn check_enum_cap(frame_size: usize) -> Result<()> {
    let cap = enum_cap();
    if frame_size > cap {
        Err(Error::EnumCapExceeded {
            size: frame_size,
            cap,
        })
    } else {
        Ok(())
    }
}
