use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The classical series: `sl` (A), odd `so` (B), `sp` (C), even `so` (D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    pub const ALL: [Series; 4] = [Series::A, Series::B, Series::C, Series::D];

    /// Smallest dimV accepted for the series.
    pub fn min_dimv(self) -> usize {
        match self {
            Series::A | Series::C => 2,
            Series::B => 3,
            Series::D => 4,
        }
    }

    pub fn check_dimv(self, dimv: usize) -> Result<()> {
        let fail = |reason| {
            Err(Error::InvalidDimension {
                series: self,
                dimv,
                reason,
            })
        };
        if dimv < self.min_dimv() {
            return fail("below the smallest supported dimension");
        }
        match self {
            Series::B if dimv.is_multiple_of(2) => fail("series B needs odd dimV"),
            Series::C | Series::D if dimv % 2 == 1 => fail("series C and D need even dimV"),
            _ => Ok(()),
        }
    }

    pub fn rank(self, dimv: usize) -> usize {
        match self {
            Series::A => dimv - 1,
            Series::B => (dimv - 1) / 2,
            Series::C | Series::D => dimv / 2,
        }
    }

    pub fn algebra_dim(self, dimv: usize) -> usize {
        match self {
            Series::A => dimv * dimv - 1,
            Series::B | Series::D => dimv * (dimv - 1) / 2,
            Series::C => dimv * (dimv + 1) / 2,
        }
    }

    /// Human name of the algebra, e.g. `so9`.
    pub fn algebra_name(self, dimv: usize) -> String {
        match self {
            Series::A => format!("sl{dimv}"),
            Series::B | Series::D => format!("so{dimv}"),
            Series::C => format!("sp{dimv}"),
        }
    }

    /// Series whose algebra preserves a bilinear form.
    pub fn has_form(self) -> bool {
        self != Series::A
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Series::A),
            "B" => Ok(Series::B),
            "C" => Ok(Series::C),
            "D" => Ok(Series::D),
            other => Err(Error::Parse(format!("unknown series {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairKind {
    Distinguished,
    Principal,
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::Distinguished => "distinguished",
            PairKind::Principal => "principal",
        })
    }
}

impl FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "distinguished" => Ok(PairKind::Distinguished),
            "principal" => Ok(PairKind::Principal),
            other => Err(Error::Parse(format!("unknown pair kind {other:?}"))),
        }
    }
}
