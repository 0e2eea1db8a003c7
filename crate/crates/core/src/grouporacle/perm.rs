use std::fmt;

use crate::error::{argument, Error, Result};

/// Bijection of `{0, …, degree−1}`; `images[x]` is the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(argument(format!("{images:?} is not a permutation of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Images given 1-based, as in `[2, 1, 3]` for the transposition of the first two points.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(argument("1-based images must be positive"));
        }
        Self::new(images.iter().map(|x| x - 1).collect())
    }

    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).collect() }
    }

    /// Parses 1-based cycle notation such as `"(1 2)(3 4)"` or `"(1,2,3)"`; `"()"` is the identity.
    pub fn from_cycles(s: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let s = s.trim();
        let mut rest = s;
        // Cycles compose right to left, as products of permutations do.
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        while let Some(start) = rest.find('(') {
            let end = rest[start..].find(')').ok_or_else(|| Error::Parse(format!("unbalanced cycle in {s:?}")))? + start;
            let inner = &rest[start + 1..end];
            let pts: Vec<usize> = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?} in {s:?}"))))
                .collect::<Result<_>>()?;
            for &p in &pts {
                if p == 0 || p > degree {
                    return Err(argument(format!("point {p} outside 1..={degree}")));
                }
            }
            let mut uniq = pts.clone();
            uniq.sort_unstable();
            uniq.dedup();
            if uniq.len() != pts.len() {
                return Err(argument(format!("repeated point in cycle {inner:?}")));
            }
            cycles.push(pts.iter().map(|p| p - 1).collect());
            rest = &rest[end + 1..];
        }
        if !rest.trim().is_empty() && !s.is_empty() && cycles.is_empty() {
            return Err(Error::Parse(format!("expected cycle notation, got {s:?}")));
        }
        for cyc in cycles.iter().rev() {
            let mut c = Self::identity(degree);
            for (i, &p) in cyc.iter().enumerate() {
                c.images[p] = cyc[(i + 1) % cyc.len()];
            }
            images = (0..degree).map(|x| c.images[images[x]]).collect();
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Self { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Disjoint cycles, 1-based, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_cycles() {
        let p = Permutation::from_cycles("(1 2)(3 4)", 4).unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(Permutation::from_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::from_cycles("(1,2,3)", 3).unwrap().order(), 3);
    }

    #[test]
    fn products_compose_right_to_left() {
        // (1 2)(2 3) sends 3 -> 2 -> 1
        let p = Permutation::from_cycles("(1 2)(2 3)", 3).unwrap();
        assert_eq!(p.apply(2), 0);
        let a = Permutation::from_cycles("(1 2)", 3).unwrap();
        let b = Permutation::from_cycles("(2 3)", 3).unwrap();
        assert_eq!(a.compose(&b), p);
    }

    #[test]
    fn invalid_inputs() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::from_cycles("(1 5)", 4).is_err());
        assert!(Permutation::from_cycles("(1 1)", 4).is_err());
        assert!(Permutation::from_cycles("(1 2", 4).is_err());
    }

    #[test]
    fn inverse_and_order() {
        let p = Permutation::from_cycles("(1 2 3 4)", 4).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.order(), 4);
    }
}
