use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// An infinite sequence of points given as a finite prefix followed by a
/// cycle that repeats forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventualSequence {
    prefix: Vec<usize>,
    cycle: Vec<usize>,
}

impl EventualSequence {
    pub fn new(prefix: Vec<usize>, cycle: Vec<usize>) -> Result<EventualSequence> {
        if cycle.is_empty() {
            return invalid("eventual sequence needs a nonempty repeating cycle");
        }
        Ok(EventualSequence { prefix, cycle })
    }

    pub fn constant(x: usize) -> EventualSequence {
        EventualSequence {
            prefix: Vec::new(),
            cycle: vec![x],
        }
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    /// Every tail of the sequence contains exactly these points.
    pub fn cycle(&self) -> &[usize] {
        &self.cycle
    }

    /// The `i`-th term.
    pub fn term(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[(i - self.prefix.len()) % self.cycle.len()]
        }
    }

    pub(crate) fn check(&self, n: usize) -> Result<()> {
        if self.cycle.is_empty() {
            return invalid("eventual sequence needs a nonempty repeating cycle");
        }
        if let Some(p) = self.prefix.iter().chain(&self.cycle).find(|&&p| p >= n) {
            return invalid(format!("sequence term {p} outside carrier of {n} points"));
        }
        Ok(())
    }
}
