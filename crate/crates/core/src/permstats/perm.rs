use std::fmt;
use std::str::FromStr;

use super::EnumError;

/// Statistics on ordinary permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PermStat {
    /// Descents `pi(i) > pi(i+1)`, `i in [n-1]`.
    Des,
    /// Ascents `pi(i) < pi(i+1)`, `i in [n-1]`.
    Asc,
    /// Excedances `pi(i) > i`.
    Exc,
    /// Anti-excedances `pi(i) < i`, counted over all of `[n]`.
    Aexc,
    Fix,
    Cyc,
    /// Successions `pi(k+1) = pi(k) + 1`.
    Suc,
    /// Big ascents `pi(i+1) >= pi(i) + 2`.
    Basc,
    /// Left peaks with `pi(0) = 0`.
    Lpk,
    /// Interior peaks, positions `2..=n-1`.
    Ipk,
    /// Double descents with `pi(0) = pi(n+1) = 0`.
    Dd,
    /// Cycle double ascents: values `x` with `pi^-1(x) < x < pi(x)`.
    Cda,
}

impl PermStat {
    pub const ALL: [PermStat; 12] = [
        PermStat::Des,
        PermStat::Asc,
        PermStat::Exc,
        PermStat::Aexc,
        PermStat::Fix,
        PermStat::Cyc,
        PermStat::Suc,
        PermStat::Basc,
        PermStat::Lpk,
        PermStat::Ipk,
        PermStat::Dd,
        PermStat::Cda,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PermStat::Des => "des",
            PermStat::Asc => "asc",
            PermStat::Exc => "exc",
            PermStat::Aexc => "aexc",
            PermStat::Fix => "fix",
            PermStat::Cyc => "cyc",
            PermStat::Suc => "suc",
            PermStat::Basc => "basc",
            PermStat::Lpk => "lpk",
            PermStat::Ipk => "ipk",
            PermStat::Dd => "dd",
            PermStat::Cda => "cda",
        }
    }
}

impl FromStr for PermStat {
    type Err = EnumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PermStat::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| EnumError::UnknownStatistic(s.to_string()))
    }
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    pub(crate) w: Vec<u8>,
}

impl Perm {
    /// Validates that `one_line` is a bijection on `[n]`.
    pub fn new(one_line: Vec<u8>) -> Option<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &x in &one_line {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Self { w: one_line })
    }

    pub fn identity(n: usize) -> Self {
        Self { w: (1..=n as u8).collect() }
    }

    /// Builds a permutation from disjoint cycles over `[n]`; letters not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<u8>]) -> Option<Self> {
        let mut w: Vec<u8> = (1..=n as u8).collect();
        let mut seen = vec![false; n + 1];
        for cyc in cycles {
            for (k, &a) in cyc.iter().enumerate() {
                let b = cyc[(k + 1) % cyc.len()];
                if a == 0 || a as usize > n || b == 0 || b as usize > n || seen[a as usize] {
                    return None;
                }
                seen[a as usize] = true;
                w[a as usize - 1] = b;
            }
        }
        Self::new(w)
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.w
    }

    /// `pi(i)` for `i in [n]`.
    pub fn apply(&self, i: usize) -> usize {
        self.w[i - 1] as usize
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.w.len()];
        for (i, &x) in self.w.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Perm { w: inv }
    }

    /// Standard cycle form: each cycle starts with its minimum, cycles in
    /// increasing order of their minima.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.w.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x as u8);
                x = self.w[x - 1] as usize;
            }
            out.push(cyc);
        }
        out
    }

    pub fn stat(&self, which: PermStat) -> u32 {
        let w = &self.w;
        let n = w.len();
        let count = |f: &dyn Fn(usize) -> bool, range: std::ops::Range<usize>| -> u32 {
            range.filter(|&k| f(k)).count() as u32
        };
        match which {
            PermStat::Des => count(&|k| w[k] > w[k + 1], 0..n.saturating_sub(1)),
            PermStat::Asc => count(&|k| w[k] < w[k + 1], 0..n.saturating_sub(1)),
            PermStat::Suc => count(&|k| w[k + 1] == w[k] + 1, 0..n.saturating_sub(1)),
            PermStat::Basc => count(&|k| w[k + 1] >= w[k] + 2, 0..n.saturating_sub(1)),
            PermStat::Exc => count(&|k| w[k] as usize > k + 1, 0..n),
            PermStat::Aexc => count(&|k| (w[k] as usize) < k + 1, 0..n),
            PermStat::Fix => count(&|k| w[k] as usize == k + 1, 0..n),
            PermStat::Cyc => self.cycle_count(),
            PermStat::Lpk => count(
                &|k| {
                    let prev = if k == 0 { 0 } else { w[k - 1] };
                    prev < w[k] && w[k] > w[k + 1]
                },
                0..n.saturating_sub(1),
            ),
            PermStat::Ipk => count(&|k| w[k - 1] < w[k] && w[k] > w[k + 1], 1..n.saturating_sub(1)),
            PermStat::Dd => count(
                &|k| {
                    let prev = if k == 0 { 0 } else { w[k - 1] };
                    let next = if k + 1 == n { 0 } else { w[k + 1] };
                    prev > w[k] && w[k] > next
                },
                0..n,
            ),
            PermStat::Cda => {
                let inv = self.inverse();
                count(
                    &|k| {
                        let x = k as u8 + 1;
                        inv.w[k] < x && x < w[k]
                    },
                    0..n,
                )
            }
        }
    }

    fn cycle_count(&self) -> u32 {
        let n = self.w.len();
        let mut seen = [false; 256];
        let mut cycles = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.w[x - 1] as usize;
            }
        }
        cycles
    }

    /// Every restriction to `[k]` avoids `w(i) > w(i+1) > w(i+2)`.
    pub fn is_simsun(&self) -> bool {
        let mut word = self.w.clone();
        for k in (1..=self.w.len() as u8).rev() {
            if word.windows(3).any(|t| t[0] > t[1] && t[1] > t[2]) {
                return false;
            }
            word.retain(|&x| x != k);
        }
        true
    }

    /// Removing the `k` largest letters, for every `k in 0..n`, leaves a
    /// permutation without cycle double ascents. Deleting a letter splices it
    /// out of its cycle.
    pub fn is_simsun_second_kind(&self) -> bool {
        let n = self.w.len();
        let mut next: Vec<usize> = std::iter::once(0).chain(self.w.iter().map(|&x| x as usize)).collect();
        let mut prev = vec![0usize; n + 1];
        for i in 1..=n {
            prev[next[i]] = i;
        }
        for m in (1..=n).rev() {
            if (1..=m).any(|x| prev[x] < x && x < next[x]) {
                return false;
            }
            let (p, q) = (prev[m], next[m]);
            if p != m {
                next[p] = q;
                prev[q] = p;
            }
        }
        true
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cyc in self.cycles() {
            let body: Vec<String> = cyc.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &[u8]) -> Perm {
        Perm::new(w.to_vec()).unwrap()
    }

    #[test]
    fn identity_stats() {
        let id = p(&[1, 2, 3]);
        assert_eq!(id.stat(PermStat::Suc), 2);
        assert_eq!(id.stat(PermStat::Fix), 3);
        assert_eq!(id.stat(PermStat::Cyc), 3);
    }

    #[test]
    fn cycle_double_ascent_example() {
        let pi = Perm::from_cycles(4, &[vec![1, 3, 4], vec![2]]).unwrap();
        assert_eq!(pi.stat(PermStat::Cda), 1);
        assert_eq!(pi.to_string(), "(1,3,4)(2)");
    }

    #[test]
    fn simsun_second_kind_example() {
        let pi = Perm::from_cycles(6, &[vec![1, 6, 5, 3, 4], vec![2]]).unwrap();
        assert!(!pi.is_simsun_second_kind());
        assert!(Perm::identity(5).is_simsun_second_kind());
    }

    #[test]
    fn peak_conventions() {
        // 2 1 3: left peak at 1 (pi(0)=0), no interior peak.
        let w = p(&[2, 1, 3]);
        assert_eq!(w.stat(PermStat::Lpk), 1);
        assert_eq!(w.stat(PermStat::Ipk), 0);
        // 1 3 2: interior peak at 2, final descent is a double descent.
        let w = p(&[1, 3, 2]);
        assert_eq!(w.stat(PermStat::Ipk), 1);
        assert_eq!(w.stat(PermStat::Dd), 1);
        assert_eq!(p(&[3, 1, 2]).stat(PermStat::Dd), 0);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![1, 1]).is_none());
        assert!(Perm::new(vec![0, 1]).is_none());
        assert!(Perm::new(vec![3, 1]).is_none());
        assert!(Perm::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_none());
    }

    #[test]
    fn unknown_statistic_name() {
        assert_eq!("des".parse::<PermStat>().unwrap(), PermStat::Des);
        assert!(matches!("maj".parse::<PermStat>(), Err(EnumError::UnknownStatistic(_))));
    }

    #[test]
    fn simsun_first_kind_small() {
        assert!(p(&[2, 1]).is_simsun());
        assert!(!p(&[3, 2, 1]).is_simsun());
        // 4 3 1 2: restriction to [3] is 3 1 2, to [4] has 4 3 1.
        assert!(!p(&[4, 3, 1, 2]).is_simsun());
    }
}
