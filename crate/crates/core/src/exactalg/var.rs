use std::fmt;

/// Number of indeterminates in the registry.
pub const NVARS: usize = 15;

const NAMES: [char; NVARS] = [
    'L', 'M', 'J', 'I', 'H', 'a', 'p', 'q', 's', 't', 'h', 'u', 'v', 'x', 'y',
];

/// An indeterminate drawn from the fixed, ordered alphabet
/// `L, M, J, I, H, a, p, q, s, t, h, u, v, x, y`.
///
/// The registry position is the variable's rank in the canonical term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u8);

impl Var {
    pub const L: Var = Var(0);
    pub const M: Var = Var(1);
    pub const J: Var = Var(2);
    pub const I: Var = Var(3);
    /// Upper-case `H`.
    pub const H: Var = Var(4);
    pub const A: Var = Var(5);
    pub const P: Var = Var(6);
    pub const Q: Var = Var(7);
    pub const S: Var = Var(8);
    pub const T: Var = Var(9);
    /// Lower-case `h`.
    pub const LOWER_H: Var = Var(10);
    pub const U: Var = Var(11);
    pub const V: Var = Var(12);
    pub const X: Var = Var(13);
    pub const Y: Var = Var(14);

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS as u8).map(Var)
    }

    pub fn from_char(c: char) -> Option<Var> {
        NAMES.iter().position(|&n| n == c).map(|i| Var(i as u8))
    }

    pub fn name(self) -> char {
        NAMES[self.0 as usize]
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
