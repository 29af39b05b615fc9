use std::fmt;
use std::str::FromStr;

use super::{EnumError, Perm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColoredStat {
    /// `pi_i > i`, or `pi_i = i` with a nonzero color.
    Exc,
    /// `pi_i = i` with color zero.
    Fix,
}

impl ColoredStat {
    pub const ALL: [ColoredStat; 2] = [ColoredStat::Exc, ColoredStat::Fix];

    pub fn name(self) -> &'static str {
        match self {
            ColoredStat::Exc => "exc",
            ColoredStat::Fix => "fix",
        }
    }
}

impl FromStr for ColoredStat {
    type Err = EnumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ColoredStat::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| EnumError::UnknownStatistic(s.to_string()))
    }
}

/// An element of `Z_r wr S_n`: a permutation with one color in `0..r` per
/// entry.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredPerm {
    perm: Perm,
    colors: Vec<u8>,
    r: u8,
}

impl ColoredPerm {
    pub fn new(perm: Perm, colors: Vec<u8>, r: u8) -> Option<Self> {
        if colors.len() != perm.len() || r == 0 || colors.iter().any(|&c| c >= r) {
            return None;
        }
        Some(Self { perm, colors, r })
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn num_colors(&self) -> u8 {
        self.r
    }

    pub fn stat(&self, which: ColoredStat) -> u32 {
        let w = self.perm.one_line();
        let it = w.iter().zip(&self.colors).enumerate();
        match which {
            ColoredStat::Exc => it
                .filter(|&(k, (&p, &c))| p as usize > k + 1 || (p as usize == k + 1 && c > 0))
                .count() as u32,
            ColoredStat::Fix => it.filter(|&(k, (&p, &c))| p as usize == k + 1 && c == 0).count() as u32,
        }
    }
}

impl fmt::Debug for ColoredPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .perm
            .one_line()
            .iter()
            .zip(&self.colors)
            .map(|(p, c)| format!("{p}^{c}"))
            .collect();
        write!(f, "{}", body.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_colors_match_plain_excedances() {
        let p = Perm::new(vec![2, 3, 1]).unwrap();
        let cp = ColoredPerm::new(p.clone(), vec![0, 0, 0], 3).unwrap();
        assert_eq!(cp.stat(ColoredStat::Exc), p.stat(super::super::PermStat::Exc));
        assert_eq!(cp.stat(ColoredStat::Fix), 0);
    }

    #[test]
    fn colored_fixed_point_is_an_excedance() {
        let cp = ColoredPerm::new(Perm::identity(2), vec![1, 0], 2).unwrap();
        assert_eq!(cp.stat(ColoredStat::Exc), 1);
        assert_eq!(cp.stat(ColoredStat::Fix), 1);
        assert!(ColoredPerm::new(Perm::identity(2), vec![2, 0], 2).is_none());
    }
}
