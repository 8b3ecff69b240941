use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Generator families of the coefficient rings in play.
///
/// `V` are the Hazewinkel generators of `BP_*`, `T` the generators of
/// `BP_*BP`, `L` the logarithm coefficients (internal only: no value
/// crossing a module boundary may contain them), and `X` a placeholder for
/// formal cell variables in parsed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    V,
    T,
    L,
    X,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::V => 'v',
            Family::T => 't',
            Family::L => 'l',
            Family::X => 'x',
        }
    }
}

/// A single polynomial generator such as `v2` or `t1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gen {
    pub family: Family,
    pub index: u32,
}

impl Gen {
    pub fn v(index: u32) -> Self {
        Gen { family: Family::V, index }
    }

    pub fn t(index: u32) -> Self {
        Gen { family: Family::T, index }
    }

    pub fn l(index: u32) -> Self {
        Gen { family: Family::L, index }
    }

    /// Internal degree at the prime `p`: `v_n`, `t_n` and `l_n` all have
    /// degree `2(p^n - 1)`; the cell variable `x` has degree `-2`.
    pub fn degree_at(self, p: u32) -> i64 {
        match self.family {
            Family::V | Family::T | Family::L => 2 * ((p as i64).pow(self.index) - 1),
            Family::X => -2,
        }
    }

    /// Internal degree at p = 2.
    pub fn degree(self) -> i64 {
        self.degree_at(2)
    }

    pub fn name(self) -> String {
        format!("{}{}", self.family.letter(), self.index)
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next() {
            Some('v') => Family::V,
            Some('t') => Family::T,
            Some('l') => Family::L,
            Some('x') => Family::X,
            _ => return Err(Error::Parse(format!("unknown generator {s:?}"))),
        };
        let rest = chars.as_str();
        let index: u32 = if rest.is_empty() && fam == Family::X {
            1
        } else {
            rest.parse().map_err(|_| Error::Parse(format!("bad generator index in {s:?}")))?
        };
        if index == 0 && fam != Family::L {
            return Err(Error::Parse(format!("generator index must be positive in {s:?}")));
        }
        Ok(Gen { family: fam, index })
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(Gen::v(1).degree(), 2);
        assert_eq!(Gen::v(2).degree(), 6);
        assert_eq!(Gen::v(3).degree(), 14);
        assert_eq!(Gen::t(2).degree(), 6);
        assert_eq!(Gen::l(3).degree(), 14);
        assert_eq!(Gen::v(2).degree_at(3), 16);
    }

    #[test]
    fn parse_roundtrip() {
        for name in ["v1", "t3", "l2", "x1"] {
            assert_eq!(Gen::parse(name).unwrap().name(), name);
        }
        assert!(Gen::parse("w1").is_err());
        assert!(Gen::parse("v0").is_err());
    }
}
