//! Explicit caps on exhaustive enumeration.

use crate::error::{Error, Result};

/// Environment variable holding a global ceiling on enumeration size.
pub const BUDGET_ENV: &str = "GAPFORGE_BUDGET_CAP";

/// Default ceiling: enough for 2^16 codewords of length 2^16.
pub const DEFAULT_CAP: u128 = 1 << 34;

/// Maximum number of enumerated items (codewords, subsets, assignments) a
/// search may visit before it refuses to start.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub cap: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { cap: DEFAULT_CAP }
    }
}

impl Budget {
    pub fn new(cap: u128) -> Self {
        Budget { cap }
    }

    pub fn unlimited() -> Self {
        Budget { cap: u128::MAX }
    }

    /// Reads [`BUDGET_ENV`], falling back to [`DEFAULT_CAP`].
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => {
                let cap = v
                    .trim()
                    .parse::<u128>()
                    .map_err(|_| Error::InvalidInput(format!("{BUDGET_ENV}={v} is not a positive integer")))?;
                if cap == 0 {
                    return Err(Error::InvalidInput(format!("{BUDGET_ENV} must be positive")));
                }
                Ok(Budget { cap })
            }
            Err(_) => Ok(Budget::default()),
        }
    }

    /// The tighter of two budgets.
    pub fn min(self, other: Budget) -> Budget {
        Budget { cap: self.cap.min(other.cap) }
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.cap {
            Err(Error::BudgetExceeded { needed, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_pow(base: u128, exp: u64) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

/// Binomial coefficient, saturating.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul(u128::from(n - i)) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of subsets of size 1..=bound of an n-set, saturating.
pub fn subsets_up_to(n: u64, bound: u64) -> u128 {
    (1..=bound.min(n)).fold(0u128, |acc, s| acc.saturating_add(binomial(n, s)))
}
