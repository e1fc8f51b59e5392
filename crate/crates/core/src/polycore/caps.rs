//! Desk-scale resource caps.
//!
//! Caps are process-wide settings read by the Gröbner engine and the graded
//! linear solvers. Exceeding a cap is always reported as an error.

use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_MAX_BASIS: usize = 4000;
pub const DEFAULT_MAX_DEGREE: usize = 40;

/// Environment variables consulted by [`Caps::from_env`].
pub const ENV_MAX_BASIS: &str = "CMDEF_CAP_BASIS";
pub const ENV_MAX_DEGREE: &str = "CMDEF_CAP_DEGREE";

static MAX_BASIS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_BASIS);
static MAX_DEGREE: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_DEGREE);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum Gröbner basis size, and maximum number of unknowns in one graded
    /// linear system.
    pub max_basis: usize,
    /// Maximum total degree of any S-polynomial or graded component.
    pub max_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_basis: DEFAULT_MAX_BASIS,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

impl Caps {
    pub fn from_env() -> Self {
        let read = |k: &str, d: usize| {
            std::env::var(k)
                .ok()
                .and_then(|v| v.parse().ok())
                .unwrap_or(d)
        };
        Self {
            max_basis: read(ENV_MAX_BASIS, DEFAULT_MAX_BASIS),
            max_degree: read(ENV_MAX_DEGREE, DEFAULT_MAX_DEGREE),
        }
    }

    pub fn install(self) {
        MAX_BASIS.store(self.max_basis, Ordering::Relaxed);
        MAX_DEGREE.store(self.max_degree, Ordering::Relaxed);
    }

    pub fn current() -> Self {
        Self {
            max_basis: MAX_BASIS.load(Ordering::Relaxed),
            max_degree: MAX_DEGREE.load(Ordering::Relaxed),
        }
    }
}
