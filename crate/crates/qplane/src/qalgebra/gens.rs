use std::fmt;

use serde::Serialize;

/// The generator `u^i_j` of `O(SU_q(3))`, `i, j` in `1..=3`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(u8);

impl Gen {
    pub fn new(i: u8, j: u8) -> Gen {
        assert!((1..=3).contains(&i) && (1..=3).contains(&j), "generator index out of range");
        Gen(3 * (i - 1) + (j - 1))
    }

    pub fn from_index(n: u8) -> Gen {
        assert!(n < 9);
        Gen(n)
    }

    /// Row-major index `3(i-1) + (j-1)`.
    pub fn index(self) -> u8 {
        self.0
    }

    pub fn row(self) -> u8 {
        self.0 / 3 + 1
    }

    pub fn col(self) -> u8 {
        self.0 % 3 + 1
    }

    pub fn all() -> impl Iterator<Item = Gen> {
        (0..9).map(Gen)
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}{}", self.row(), self.col())
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A total order on the nine generators, smallest first. Words are compared
/// degree-lexicographically with respect to it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenOrder {
    by_rank: [Gen; 9],
    rank: [u8; 9],
}

impl GenOrder {
    pub fn new(by_rank: [Gen; 9]) -> Self {
        let mut rank = [u8::MAX; 9];
        for (r, g) in by_rank.iter().enumerate() {
            assert!(rank[g.index() as usize] == u8::MAX, "generator listed twice");
            rank[g.index() as usize] = r as u8;
        }
        GenOrder { by_rank, rank }
    }

    /// `u12 < u13 < u21 < u23 < u31 < u32 < u11 < u22 < u33`: the diagonal
    /// generators are the three largest, so the quantum determinant leads
    /// with `u11 u22 u33`.
    pub fn diagonal_last() -> Self {
        let g = |i, j| Gen::new(i, j);
        Self::new([g(1, 2), g(1, 3), g(2, 1), g(2, 3), g(3, 1), g(3, 2), g(1, 1), g(2, 2), g(3, 3)])
    }

    /// `u11 < u12 < ... < u33`.
    pub fn row_major() -> Self {
        Self::new(std::array::from_fn(|k| Gen::from_index(k as u8)))
    }

    pub fn rank(&self, g: Gen) -> u8 {
        self.rank[g.index() as usize]
    }

    pub fn gen(&self, rank: u8) -> Gen {
        self.by_rank[rank as usize]
    }

    pub fn describe(&self) -> String {
        let names: Vec<String> = self.by_rank.iter().map(|g| g.to_string()).collect();
        format!("deglex {}", names.join("<"))
    }
}

impl Serialize for GenOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.describe())
    }
}
