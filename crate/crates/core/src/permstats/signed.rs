use std::fmt;
use std::str::FromStr;

use super::EnumError;

/// Statistics on signed permutations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignedStat {
    /// `sigma(|sigma(i)|) > sigma(i)`.
    Exc,
    /// `sigma(|sigma(i)|) < sigma(i)`.
    Aexc,
    Fix,
    /// Singletons `sigma(i) = -i`.
    St,
    /// Number of negative entries.
    Neg,
    Cyc,
    /// Type B descents over `{0, .., n-1}` with `sigma(0) = 0`.
    DesB,
    /// Weak excedances: `exc + fix`.
    Wexc,
    /// Type B excedances: `exc + st`.
    ExcB,
    /// Weak anti-excedances: `aexc + st`.
    Waexc,
}

impl SignedStat {
    pub const ALL: [SignedStat; 10] = [
        SignedStat::Exc,
        SignedStat::Aexc,
        SignedStat::Fix,
        SignedStat::St,
        SignedStat::Neg,
        SignedStat::Cyc,
        SignedStat::DesB,
        SignedStat::Wexc,
        SignedStat::ExcB,
        SignedStat::Waexc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SignedStat::Exc => "exc",
            SignedStat::Aexc => "aexc",
            SignedStat::Fix => "fix",
            SignedStat::St => "st",
            SignedStat::Neg => "N",
            SignedStat::Cyc => "cyc",
            SignedStat::DesB => "desB",
            SignedStat::Wexc => "wexc",
            SignedStat::ExcB => "excB",
            SignedStat::Waexc => "waexc",
        }
    }
}

impl FromStr for SignedStat {
    type Err = EnumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SignedStat::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| EnumError::UnknownStatistic(s.to_string()))
    }
}

/// An element of the hyperoctahedral group, stored as `sigma(1..=n)`.
/// `sigma(-i) = -sigma(i)` is implied.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    pub(crate) images: Vec<i8>,
}

impl SignedPerm {
    pub fn new(images: Vec<i8>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return None;
            }
            seen[a] = true;
        }
        Some(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n as i8).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[i8] {
        &self.images
    }

    /// `sigma(i)` for `i in [n]`.
    pub fn apply(&self, i: usize) -> i32 {
        self.images[i - 1] as i32
    }

    /// `sigma(|sigma(i)|)`.
    fn follow(&self, k: usize) -> i8 {
        self.images[self.images[k].unsigned_abs() as usize - 1]
    }

    pub fn stat(&self, which: SignedStat) -> u32 {
        let s = &self.images;
        let n = s.len();
        let count = |f: &dyn Fn(usize) -> bool| -> u32 { (0..n).filter(|&k| f(k)).count() as u32 };
        match which {
            SignedStat::Exc => count(&|k| self.follow(k) > s[k]),
            SignedStat::Aexc => count(&|k| self.follow(k) < s[k]),
            SignedStat::Fix => count(&|k| s[k] as usize == k + 1 && s[k] > 0),
            SignedStat::St => count(&|k| s[k] < 0 && s[k].unsigned_abs() as usize == k + 1),
            SignedStat::Neg => count(&|k| s[k] < 0),
            SignedStat::Cyc => self.cycle_count(),
            SignedStat::DesB => count(&|k| if k == 0 { s[0] < 0 } else { s[k - 1] > s[k] }),
            SignedStat::Wexc => self.stat(SignedStat::Exc) + self.stat(SignedStat::Fix),
            SignedStat::ExcB => self.stat(SignedStat::Exc) + self.stat(SignedStat::St),
            SignedStat::Waexc => self.stat(SignedStat::Aexc) + self.stat(SignedStat::St),
        }
    }

    fn cycle_count(&self) -> u32 {
        let n = self.images.len();
        let mut seen = [false; 128];
        let mut cycles = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x - 1].unsigned_abs() as usize;
            }
        }
        cycles
    }

    /// The value among `sigma(1..=n)` whose absolute value is `m`.
    pub fn entry_with_abs(&self, m: usize) -> i8 {
        *self
            .images
            .iter()
            .find(|x| x.unsigned_abs() as usize == m)
            .expect("absolute values form a bijection")
    }

    pub fn to_cycles(&self) -> CycleForm {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for m in 1..=n {
            if seen[m] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut c = self.entry_with_abs(m);
            loop {
                let a = c.unsigned_abs() as usize;
                if seen[a] {
                    break;
                }
                seen[a] = true;
                cyc.push(c as i32);
                c = self.images[a - 1];
            }
            cycles.push(cyc);
        }
        CycleForm { cycles }
    }

    /// Signed permutations of `[n]` that agree with an unsigned one.
    pub fn from_unsigned(w: &[u8]) -> Self {
        Self { images: w.iter().map(|&x| x as i8).collect() }
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation for signed (or unsigned) permutations. Consecutive
/// entries satisfy `c_{j+1} = sigma(|c_j|)`, wrapping around; negative
/// values are barred entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycleForm {
    pub cycles: Vec<Vec<i32>>,
}

impl CycleForm {
    /// Interprets the cycles over `[n]`; `n` is the largest absolute value.
    pub fn to_signed(&self) -> Option<SignedPerm> {
        let n = self.cycles.iter().flatten().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0);
        let mut images = vec![0i8; n];
        let mut seen = vec![false; n + 1];
        for cyc in &self.cycles {
            for (k, &c) in cyc.iter().enumerate() {
                let a = c.unsigned_abs() as usize;
                if a == 0 || seen[a] {
                    return None;
                }
                seen[a] = true;
                images[a - 1] = cyc[(k + 1) % cyc.len()] as i8;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return None;
        }
        SignedPerm::new(images)
    }

    /// Rotates each cycle to start at its smallest absolute value and sorts
    /// cycles by that value.
    pub fn standardize(&self) -> CycleForm {
        let mut cycles: Vec<Vec<i32>> = self
            .cycles
            .iter()
            .map(|cyc| {
                let k = (0..cyc.len()).min_by_key(|&k| cyc[k].unsigned_abs()).unwrap_or(0);
                cyc[k..].iter().chain(&cyc[..k]).copied().collect()
            })
            .collect();
        cycles.sort_by_key(|c| c.first().map(|x| x.unsigned_abs()));
        CycleForm { cycles }
    }
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cyc in &self.cycles {
            let body: Vec<String> = cyc.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for CycleForm {
    type Err = String;
    /// Parses `(1,4,3,-9,-8)(2,5)(-6)(-7)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| format!("malformed cycle near '{rest}'"))?;
            let cyc = body
                .0
                .split(',')
                .map(|t| t.parse::<i32>().map_err(|e| format!("bad entry '{t}': {e}")))
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cyc);
            rest = body.1;
        }
        Ok(CycleForm { cycles })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPerm {
        s.parse::<CycleForm>().unwrap().to_signed().unwrap()
    }

    #[test]
    fn labeling_example_statistics() {
        let sigma = sp("(1,3,-2,6)(-4)(5)");
        assert_eq!(sigma.images(), &[3, 6, -2, -4, 5, 1]);
        let got: Vec<u32> = [
            SignedStat::Exc,
            SignedStat::Aexc,
            SignedStat::Fix,
            SignedStat::St,
            SignedStat::Neg,
            SignedStat::Cyc,
        ]
        .iter()
        .map(|&s| sigma.stat(s))
        .collect();
        assert_eq!(got, vec![2, 2, 1, 1, 2, 3]);
        assert_eq!(sigma.to_cycles().to_string(), "(1,3,-2,6)(-4)(5)");
    }

    #[test]
    fn identity_statistics() {
        let id = SignedPerm::identity(4);
        assert_eq!(id.stat(SignedStat::Fix), 4);
        assert_eq!(id.stat(SignedStat::Cyc), 4);
        for s in [SignedStat::Exc, SignedStat::Aexc, SignedStat::St, SignedStat::Neg, SignedStat::DesB] {
            assert_eq!(id.stat(s), 0);
        }
    }

    #[test]
    fn type_b_descent_uses_zero_sentinel() {
        assert_eq!(SignedPerm::new(vec![-1]).unwrap().stat(SignedStat::DesB), 1);
        assert_eq!(SignedPerm::new(vec![2, -1]).unwrap().stat(SignedStat::DesB), 1);
        assert_eq!(SignedPerm::new(vec![-2, -1]).unwrap().stat(SignedStat::DesB), 1);
    }

    #[test]
    fn standardize_rotates_minimum_first_output() {
        let c: CycleForm = "(2,5,4,-9,1)(3,6)(-7)(-8)".parse().unwrap();
        assert_eq!(c.standardize().to_string(), "(1,2,5,4,-9)(3,6)(-7)(-8)");
        assert_eq!(c.to_signed(), c.standardize().to_signed());
    }

    #[test]
    fn malformed_cycles_rejected() {
        assert!("(1,2".parse::<CycleForm>().is_err());
        assert!("(1,x)".parse::<CycleForm>().is_err());
        let dup: CycleForm = "(1,2)(-2)".parse().unwrap();
        assert!(dup.to_signed().is_none());
        let gap: CycleForm = "(1,3)".parse().unwrap();
        assert!(gap.to_signed().is_none());
    }
}
