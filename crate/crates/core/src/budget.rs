use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Cooperative time budget checked from inside long-running loops.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    pub fn none() -> Self {
        Self { at: None }
    }

    pub fn after(limit: Duration) -> Self {
        Self {
            at: Instant::now().checked_add(limit),
        }
    }

    pub fn from_option(limit: Option<Duration>) -> Self {
        limit.map_or_else(Self::none, Self::after)
    }

    pub fn check(&self) -> Result<()> {
        match self.at {
            Some(at) if Instant::now() >= at => Err(Error::Timeout),
            _ => Ok(()),
        }
    }

    /// Checks only every 1024th tick to keep `Instant::now` off hot paths.
    pub fn tick(&self, counter: &mut u32) -> Result<()> {
        *counter = counter.wrapping_add(1);
        if *counter & 0x3ff == 0 {
            self.check()
        } else {
            Ok(())
        }
    }
}
