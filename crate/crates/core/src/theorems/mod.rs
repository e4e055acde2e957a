//! The verification harness: every transformation and special-value identity
//! as an executable check over admissible `(q, x)`.

mod checks;
mod report;
mod session;
mod suite;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use checks::verify;
pub use report::{CheckResult, Meta, Report, Status, Summary};
pub use session::{Session, SessionOptions};
pub use suite::{run_suite, special_value_table, SuiteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum TheoremId {
    MT1,
    SPV1,
    MT4,
    MT3,
    MT2,
    MT5_G,
    MT5_F,
    MT7_85,
    MT7_86,
    MT7_87,
    MT6_83,
    MT6_84,
    COR1,
    COR_FINAL,
    PROP1,
    PROP2,
    TR1,
    TR2,
    TR3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 19] = [
        TheoremId::MT1,
        TheoremId::SPV1,
        TheoremId::MT4,
        TheoremId::MT3,
        TheoremId::MT2,
        TheoremId::MT5_G,
        TheoremId::MT5_F,
        TheoremId::MT7_85,
        TheoremId::MT7_86,
        TheoremId::MT7_87,
        TheoremId::MT6_83,
        TheoremId::MT6_84,
        TheoremId::COR1,
        TheoremId::COR_FINAL,
        TheoremId::PROP1,
        TheoremId::PROP2,
        TheoremId::TR1,
        TheoremId::TR2,
        TheoremId::TR3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::MT1 => "MT1",
            TheoremId::SPV1 => "SPV1",
            TheoremId::MT4 => "MT4",
            TheoremId::MT3 => "MT3",
            TheoremId::MT2 => "MT2",
            TheoremId::MT5_G => "MT5_G",
            TheoremId::MT5_F => "MT5_F",
            TheoremId::MT7_85 => "MT7_85",
            TheoremId::MT7_86 => "MT7_86",
            TheoremId::MT7_87 => "MT7_87",
            TheoremId::MT6_83 => "MT6_83",
            TheoremId::MT6_84 => "MT6_84",
            TheoremId::COR1 => "COR1",
            TheoremId::COR_FINAL => "COR_FINAL",
            TheoremId::PROP1 => "PROP1",
            TheoremId::PROP2 => "PROP2",
            TheoremId::TR1 => "TR1",
            TheoremId::TR2 => "TR2",
            TheoremId::TR3 => "TR3",
        }
    }

    /// Checks whose input is a sweep over `x ∈ F_q`.
    pub fn sweeps_x(self) -> bool {
        matches!(
            self,
            TheoremId::MT1
                | TheoremId::MT4
                | TheoremId::MT3
                | TheoremId::MT2
                | TheoremId::PROP1
                | TheoremId::PROP2
                | TheoremId::TR1
                | TheoremId::TR2
                | TheoremId::TR3
        )
    }

    /// Ids accepted by [`special_value_table`].
    pub fn tabulates(self) -> bool {
        !self.sweeps_x()
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown theorem id {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
            let js = serde_json::to_string(&id).unwrap();
            assert_eq!(js, format!("\"{id}\""));
        }
        assert_eq!("mt7-85".parse::<TheoremId>().unwrap(), TheoremId::MT7_85);
        assert!("MT9".parse::<TheoremId>().is_err());
    }
}
