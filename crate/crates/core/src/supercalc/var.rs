use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// Z/2 grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `(-1)^(self * other)` as a boolean "negate".
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() != rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Which block of a chart matrix a coordinate lives in.
///
/// `X` and `Y` hold even coordinates, `Xi` (upper right) and `Eta`
/// (lower left) hold odd ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Block {
    X,
    Y,
    Xi,
    Eta,
}

impl Block {
    pub fn parity(self) -> Parity {
        match self {
            Block::X | Block::Y => Parity::Even,
            Block::Xi | Block::Eta => Parity::Odd,
        }
    }

    /// Block for an entry in row/column parity slots of a chart matrix.
    pub fn for_slot(row: Parity, col: Parity) -> Block {
        match (row, col) {
            (Parity::Even, Parity::Even) => Block::X,
            (Parity::Even, Parity::Odd) => Block::Xi,
            (Parity::Odd, Parity::Even) => Block::Eta,
            (Parity::Odd, Parity::Odd) => Block::Y,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Block::X => "x",
            Block::Y => "y",
            Block::Xi => "xi",
            Block::Eta => "eta",
        }
    }
}

/// A coordinate variable, named canonically by (level, block, row, col).
///
/// Row and column are 0-based and relative to the block. Free-standing
/// test variables use level 0 with `col = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var {
    pub level: u8,
    pub block: Block,
    pub row: u16,
    pub col: u16,
}

impl Var {
    pub fn new(level: u8, block: Block, row: usize, col: usize) -> Var {
        Var {
            level,
            block,
            row: row as u16,
            col: col as u16,
        }
    }

    /// Standalone even variable `x_i`.
    pub fn even(i: usize) -> Var {
        Var::new(0, Block::X, i, 0)
    }

    /// Standalone odd variable `xi_i`.
    pub fn odd(i: usize) -> Var {
        Var::new(0, Block::Xi, i, 0)
    }

    pub fn parity(self) -> Parity {
        self.block.parity()
    }

    pub fn is_odd(self) -> bool {
        self.parity().is_odd()
    }

    /// Parse the output of `Display`.
    pub fn parse(s: &str) -> Option<Var> {
        let (tag, rest) = if let Some(r) = s.strip_prefix("eta") {
            (Block::Eta, r)
        } else if let Some(r) = s.strip_prefix("xi") {
            (Block::Xi, r)
        } else if let Some(r) = s.strip_prefix('x') {
            (Block::X, r)
        } else if let Some(r) = s.strip_prefix('y') {
            (Block::Y, r)
        } else {
            return None;
        };
        let mut parts = rest.split('_');
        let level: u8 = parts.next()?.parse().ok()?;
        if level == 0 {
            let i: usize = parts.next()?.parse().ok()?;
            if parts.next().is_some() {
                return None;
            }
            return Some(Var::new(0, tag, i, 0));
        }
        let row: usize = parts.next()?.parse().ok()?;
        let col: usize = parts.next()?.parse().ok()?;
        if parts.next().is_some() || row == 0 || col == 0 {
            return None;
        }
        Some(Var::new(level, tag, row - 1, col - 1))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "{}0_{}", self.block.tag(), self.row)
        } else {
            write!(
                f,
                "{}{}_{}_{}",
                self.block.tag(),
                self.level,
                self.row + 1,
                self.col + 1
            )
        }
    }
}
