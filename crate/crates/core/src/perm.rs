use std::fmt;

use crate::error::{LoopError, Result};
use crate::table::Element;

/// A bijection on `1..=n`. `images[0]` is padding so labels index directly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Element>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..=degree).collect(),
        }
    }

    /// From the images of `1..=n` in order.
    pub fn from_images(images: &[Element]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(LoopError::NotBijection(n));
            }
        }
        let mut padded = Vec::with_capacity(n + 1);
        padded.push(0);
        padded.extend_from_slice(images);
        Ok(Perm { images: padded })
    }

    /// Takes a padded image vector (`v[0] == 0`) already known to be a bijection.
    pub(crate) fn from_padded_unchecked(images: Vec<Element>) -> Self {
        debug_assert_eq!(images[0], 0);
        Perm { images }
    }

    /// Builds a permutation from disjoint cycles, e.g. `[[3, 5], [4, 6]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[Element]]) -> Result<Self> {
        let mut images: Vec<Element> = (0..=degree).collect();
        let mut touched = vec![false; degree + 1];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > degree || std::mem::replace(&mut touched[a], true) {
                    return Err(LoopError::NotBijection(degree));
                }
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation such as `(3,5)(4,6)(7,8)`, `(5 8)` or `()`.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let bad = |message: &str| LoopError::Parse {
            line: 1,
            column: 1,
            message: message.to_string(),
        };
        let mut cycles: Vec<Vec<Element>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let cycle = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<Element>()
                        .map_err(|_| bad("bad element in cycle"))
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = open[close + 1..].trim_start();
        }
        let refs: Vec<&[Element]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len() - 1
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.images[x]
    }

    /// Images of `1..=n`.
    pub fn images(&self) -> &[Element] {
        &self.images[1..]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self ∘ other)(z) = self(other(z))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Perm { images: inv }
    }

    /// Image of a set of labels, sorted.
    pub fn image_of(&self, set: &[Element]) -> Vec<Element> {
        let mut out: Vec<Element> = set.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<Element>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}
