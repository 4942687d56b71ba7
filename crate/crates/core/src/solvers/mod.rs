//! Iteration schemes and the solve loop.
//!
//! | method     | state `(x, aux)`      | gradients per step |
//! |------------|-----------------------|--------------------|
//! | `Gd`       | `(x, x)`              | 1                  |
//! | `Nag`      | `(x, y)`              | 2                  |
//! | `Tm`       | `(x, ξ)`, `ξ_prev`    | 2                  |
//! | `Hnag`     | `(x, y)`              | 1                  |
//! | `HnagPlus` | `(x, y)`              | 1                  |
//! | `HnagBox`  | `(x, v)`              | 1                  |
//!
//! NAG and TM spend their second evaluation on `∇f(x_k)` at the reported
//! iterate, which the stopping rule needs.

mod params;
mod step;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use params::{make_params, Coefficients, MethodParams};
pub use step::{step, SolverState};
pub use trace::{
    forms_deviation, solve, Column, SolverConfig, Status, Trace, TraceRecord, TRACE_CSV_HEADER,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MethodKind {
    #[serde(rename = "gd")]
    Gd,
    #[serde(rename = "nag")]
    Nag,
    #[serde(rename = "tm")]
    Tm,
    /// HNAG in its two-sequence form. HNAG++ is the same iteration.
    #[serde(rename = "hnag")]
    Hnag,
    #[serde(rename = "hnag+")]
    HnagPlus,
    /// The single-gradient pseudocode form with the `1/L` and `2/L` step
    /// weights as printed; differs from `Hnag` (see [`forms_deviation`]).
    #[serde(rename = "hnag_box")]
    HnagBox,
}

impl MethodKind {
    pub const ALL: [MethodKind; 6] = [
        MethodKind::Gd,
        MethodKind::Nag,
        MethodKind::Tm,
        MethodKind::Hnag,
        MethodKind::HnagPlus,
        MethodKind::HnagBox,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodKind::Gd => "gd",
            MethodKind::Nag => "nag",
            MethodKind::Tm => "tm",
            MethodKind::Hnag => "hnag",
            MethodKind::HnagPlus => "hnag+",
            MethodKind::HnagBox => "hnag_box",
        }
    }

    /// HNAG, HNAG+ and the box form: one gradient per step, `y` reported.
    pub fn is_hnag_family(self) -> bool {
        matches!(
            self,
            MethodKind::Hnag | MethodKind::HnagPlus | MethodKind::HnagBox
        )
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.trim().to_ascii_lowercase();
        match key.as_str() {
            "gd" => Ok(MethodKind::Gd),
            "nag" => Ok(MethodKind::Nag),
            "tm" => Ok(MethodKind::Tm),
            "hnag" | "hnagpp" | "hnag++" => Ok(MethodKind::Hnag),
            "hnag+" | "hnagplus" | "hnag_plus" | "hnag-plus" => Ok(MethodKind::HnagPlus),
            "hnag_box" | "hnagbox" | "hnag-box" => Ok(MethodKind::HnagBox),
            _ => Err(Error::Input(format!("unknown method '{s}'"))),
        }
    }
}
