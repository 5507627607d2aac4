//! Permutations of the four vertices of a tetrahedron.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A bijection of `{0, 1, 2, 3}` stored as its image list.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Result<Self, Error> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm4(images))
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        let mut out = [0u8; 4];
        for (v, slot) in out.iter_mut().enumerate() {
            *slot = self.0[other.0[v] as usize];
        }
        Perm4(out)
    }

    pub fn inverse(self) -> Perm4 {
        let mut out = [0u8; 4];
        for v in 0..4 {
            out[self.0[v] as usize] = v as u8;
        }
        Perm4(out)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_odd(self) -> bool {
        self.sign() < 0
    }

    /// Transposition swapping `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Perm4 {
        let mut out = [0u8, 1, 2, 3];
        out.swap(a, b);
        Perm4(out)
    }

    /// All 24 permutations in lexicographic order of their image lists.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Ok(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

impl Default for Perm4 {
    fn default() -> Self {
        Perm4::IDENTITY
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl FromStr for Perm4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(Error::InvalidPermutation(s.to_string()));
        }
        let mut images = [0u8; 4];
        for (slot, b) in images.iter_mut().zip(bytes) {
            if !(b'0'..=b'3').contains(b) {
                return Err(Error::InvalidPermutation(s.to_string()));
            }
            *slot = b - b'0';
        }
        Perm4::new(images).map_err(|_| Error::InvalidPermutation(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        let p: Perm4 = "3012".parse().unwrap();
        assert_eq!(p.apply(0), 3);
        assert_eq!(p.to_string(), "3012");
        assert!("3312".parse::<Perm4>().is_err());
        assert!("301".parse::<Perm4>().is_err());
        assert!("30a2".parse::<Perm4>().is_err());
    }

    #[test]
    fn solid_torus_gluings_are_mutually_inverse() {
        let a: Perm4 = "3012".parse().unwrap();
        let b: Perm4 = "1230".parse().unwrap();
        assert_eq!(a.inverse(), b);
        assert!(a.is_odd());
    }

    #[test]
    fn there_are_24() {
        let all = Perm4::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.is_odd()).count(), 12);
    }

    fn arb_perm() -> impl Strategy<Value = Perm4> {
        (0usize..24).prop_map(|i| Perm4::all()[i])
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_perm(), b in arb_perm(), c in arb_perm()) {
            prop_assert_eq!(a.compose(b).compose(c), a.compose(b.compose(c)));
            prop_assert_eq!(a.compose(a.inverse()), Perm4::IDENTITY);
            prop_assert_eq!(a.inverse().compose(a), Perm4::IDENTITY);
            prop_assert_eq!(a.compose(b).sign(), a.sign() * b.sign());
        }
    }
}
