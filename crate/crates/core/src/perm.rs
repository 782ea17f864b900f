//! Permutations on a finite point set.
//!
//! Points are 0-based internally and 1-based in cycle notation, so
//! `"(1 2 3)(4 5)"` moves internal points 0,1,2 cyclically and swaps 3,4.
//! Composition is written left to right: `a.then(b)` applies `a` first,
//! i.e. `x^(a.then(b)) = (x^a)^b`.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    /// Build from an image table (0-based). Fails unless it is a bijection.
    pub fn new(images: Vec<u32>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "image table of length {n} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// g^{-1} * self * g.
    pub fn conjugated_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// [self, other] = self^{-1} other^{-1} self other.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of the permutation.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut order = 1u64;
        for start in 0..self.degree() as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            loop {
                seen[p as usize] = true;
                len += 1;
                p = self.apply(p);
                if p == start {
                    break;
                }
            }
            order = crate::arith::lcm(order, len);
        }
        order
    }

    /// Parse cycle notation with 1-based points, e.g. "(1 2 3)(4 5)".
    /// The identity is written "()". Cycles are applied left to right.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
        let mut result = Permutation::identity(degree);
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::InvalidInput("empty permutation string".into()));
        }
        let mut chars = trimmed.chars().peekable();
        let mut any = false;
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            if c != '(' {
                return Err(Error::InvalidInput(format!(
                    "expected '(' in cycle notation, found {c:?}"
                )));
            }
            chars.next();
            let mut body = String::new();
            loop {
                match chars.next() {
                    Some(')') => break,
                    Some(ch) => body.push(ch),
                    None => {
                        return Err(Error::InvalidInput("unbalanced '(' in cycle notation".into()))
                    }
                }
            }
            any = true;
            let points: Vec<u32> = body
                .split(|ch: char| ch.is_whitespace() || ch == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| Error::InvalidInput(format!("bad point {s:?} in cycle")))
                })
                .collect::<Result<_>>()?;
            if points.is_empty() {
                continue; // "()" stands for the identity
            }
            let mut cycle_images: Vec<u32> = (0..degree as u32).collect();
            let mut seen = vec![false; degree];
            for (k, &p) in points.iter().enumerate() {
                if p == 0 || p as usize > degree {
                    return Err(Error::InvalidInput(format!(
                        "point {p} out of range 1..={degree}"
                    )));
                }
                if seen[(p - 1) as usize] {
                    return Err(Error::InvalidInput(format!("repeated point {p} in cycle")));
                }
                seen[(p - 1) as usize] = true;
                let q = points[(k + 1) % points.len()];
                cycle_images[(p - 1) as usize] = q - 1;
            }
            let cycle = Permutation {
                images: cycle_images,
            };
            result = result.then(&cycle);
        }
        if !any {
            return Err(Error::InvalidInput("no cycles found".into()));
        }
        Ok(result)
    }

    /// Canonical cycle-notation string (1-based, disjoint cycles, each
    /// cycle starting at its smallest point, cycles ordered by smallest
    /// point). The identity prints as "()".
    pub fn cycle_string(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() as u32 {
            if seen[start as usize] || self.apply(start) == start {
                seen[start as usize] = true;
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            loop {
                seen[p as usize] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                first = false;
                p = self.apply(p);
                if p == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Stable 64-bit hash of the image table (FNV-1a); deterministic
    /// across runs and platforms.
    pub fn stable_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for &x in &self.images {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        h
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}
