use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The five process-tomography strategies compared by the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchemeTag {
    #[serde(rename = "sqpt")]
    Sqpt,
    #[serde(rename = "aapt-sep")]
    AaptSeparable,
    #[serde(rename = "aapt-mub")]
    AaptMub,
    #[serde(rename = "aapt-povm")]
    AaptPovm,
    #[serde(rename = "dcqd")]
    Dcqd,
}

impl SchemeTag {
    pub const ALL: [SchemeTag; 5] = [
        SchemeTag::Sqpt,
        SchemeTag::AaptSeparable,
        SchemeTag::AaptMub,
        SchemeTag::AaptPovm,
        SchemeTag::Dcqd,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeTag::Sqpt => "sqpt",
            SchemeTag::AaptSeparable => "aapt-sep",
            SchemeTag::AaptMub => "aapt-mub",
            SchemeTag::AaptPovm => "aapt-povm",
            SchemeTag::Dcqd => "dcqd",
        }
    }
}

impl fmt::Display for SchemeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown scheme {s:?}")))
    }
}
