//! Error type shared by every module.
//!
//! Three failure categories, chosen so a front end can map them onto distinct
//! exit codes:
//! * [`Error::Domain`]: the arguments are outside the mathematical domain of
//!   the operation (a radius off the unit circle, `n > d` where the estimate
//!   needs `n <= d`, an empty radius set).  Nothing was computed.
//! * [`Error::Guard`]: the arguments are valid but the work or memory implied
//!   exceeds a safety cap.  Caps live in [`Guards`] and can be raised
//!   explicitly by callers who know what they are asking for.
//! * [`Error::NonFinite`]: a numeric kernel produced an `inf`/`NaN`
//!   intermediate; reported with the node or site index for diagnosis.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the operation's mathematical domain.
    #[error("invalid argument: {0}")]
    Domain(String),

    /// A resource cap would be exceeded. `guard` names the cap, `detail`
    /// reports the offending size next to the limit.
    #[error("guard `{guard}` violated: {detail}")]
    Guard {
        guard: &'static str,
        detail: String,
    },

    /// A numeric kernel hit a non-finite intermediate value.
    #[error("non-finite value at node {node}: {detail}")]
    NonFinite { node: usize, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Safety caps for operations whose cost is data dependent.
///
/// The defaults are sized for interactive use; `raised()` multiplies every cap
/// by 64 for callers that opt in (the command line front end does this behind
/// an explicit `--unsafe-raise-guard` flag).
#[derive(Debug, Clone)]
pub struct Guards {
    /// Max number of lattice points an enumeration may visit.
    pub enumeration_points: u64,
    /// Max value of d*n^2-style work estimates in the budget DPs.
    pub dp_work: u64,
    /// Max number of grid sites in a dense box.
    pub box_sites: u64,
    /// Max dimension for the lattice-count polynomial.
    pub polynomial_dim: u32,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            enumeration_points: 100_000_000,
            dp_work: 500_000_000,
            box_sites: 4_000_000,
            polynomial_dim: 64,
        }
    }
}

impl Guards {
    /// Every cap multiplied by 64; for callers that accept the cost.
    pub fn raised() -> Self {
        let g = Guards::default();
        Guards {
            enumeration_points: g.enumeration_points.saturating_mul(64),
            dp_work: g.dp_work.saturating_mul(64),
            box_sites: g.box_sites.saturating_mul(64),
            polynomial_dim: g.polynomial_dim.saturating_mul(64),
        }
    }

    pub(crate) fn check(&self, guard: &'static str, need: u64, cap: u64) -> Result<()> {
        if need > cap {
            return Err(Error::Guard {
                guard,
                detail: format!("requires {need}, cap is {cap}"),
            });
        }
        Ok(())
    }
}
