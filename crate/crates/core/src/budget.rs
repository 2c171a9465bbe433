use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default cap on candidate assignments for every exhaustive search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Counts candidate assignments across enumerations and aborts once the cap
/// is passed. Shared by reference; the counter is atomic so a budget can be
/// handed to worker threads.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    #[inline]
    pub fn tick(&self) -> Result<()> {
        self.spend(1)
    }

    #[inline]
    pub fn spend(&self, n: u64) -> Result<()> {
        let prev = self.used.fetch_add(n, Ordering::Relaxed);
        if prev.saturating_add(n) > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exceeding_the_cap_is_an_error() {
        let b = Budget::new(3);
        assert!(b.spend(3).is_ok());
        assert_eq!(b.tick(), Err(Error::BudgetExceeded { limit: 3 }));
        assert_eq!(b.used(), 4);
    }
}
