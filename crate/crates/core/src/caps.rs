//! Enumeration caps.

use crate::error::{Error, Result};

/// Environment variable that overrides every enumeration cap at once.
pub const CAP_ENV: &str = "ZIPSTRATA_CAP";

pub const DEFAULT_WEYL_CAP: usize = 10_000;
pub const DEFAULT_GROUP_CAP: usize = 200_000;

/// Upper bounds on the sizes of enumerated objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximal |W| for Weyl group enumeration.
    pub weyl: usize,
    /// Maximal |H(F)| (and |E(F)|) for matrix group enumeration.
    pub group: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl: DEFAULT_WEYL_CAP,
            group: DEFAULT_GROUP_CAP,
        }
    }
}

impl Caps {
    /// Defaults, with both caps replaced by `ZIPSTRATA_CAP` when it is set to a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            Some(cap) if cap > 0 => Caps {
                weyl: cap,
                group: cap,
            },
            _ => Caps::default(),
        }
    }

    pub(crate) fn check(what: &str, needed: u128, cap: usize) -> Result<()> {
        if needed > cap as u128 {
            Err(Error::Cap {
                what: what.to_string(),
                needed,
                cap: cap as u128,
            })
        } else {
            Ok(())
        }
    }
}
