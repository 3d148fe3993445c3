//! Permutations of tensor positions and their integer linear combinations.
//!
//! A permutation `s` acts on a pure tensor by moving the factor in position
//! `p` to position `s(p)`, so that `action(s * t) = action(s) * action(t)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

/// A permutation of `{0, ..., d-1}` stored by its images.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(d: usize) -> Permutation {
        Permutation((0..d).collect())
    }

    /// `images[p]` is the image of `p`; `None` unless this is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Permutation> {
        let mut seen = alloc::vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    /// Product of cycles written with 1-based positions, applied right to left;
    /// `from_cycles(4, &[&[2, 3, 4]])` sends 2 to 3, 3 to 4 and 4 to 2.
    pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Option<Permutation> {
        let mut acc = Permutation::identity(d);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (0..d).collect();
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > d || b == 0 || b > d {
                    return None;
                }
                images[a - 1] = b - 1;
            }
            acc = Permutation::from_images(images)?.compose(&acc);
        }
        Some(acc)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, p: usize) -> usize {
        self.0[p]
    }

    /// `self * other`, i.e. `p -> self(other(p))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation(other.0.iter().map(|&p| self.0[p]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.degree()];
        for (p, &q) in self.0.iter().enumerate() {
            inv[q] = p;
        }
        Permutation(inv)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i64 {
        let mut seen = alloc::vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            let mut p = start;
            let mut len = 0;
            while !seen[p] {
                seen[p] = true;
                p = self.0[p];
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Moves the entry at position `p` to position `self(p)`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.degree(), "degree mismatch");
        let mut out = items.to_vec();
        for (p, x) in items.iter().enumerate() {
            out[self.0[p]] = x.clone();
        }
        out
    }

    /// The permutation acting as `self` on positions `offset..offset+d` of a
    /// longer tuple of length `total`, fixing everything else.
    pub fn embed(&self, offset: usize, total: usize) -> Permutation {
        assert!(offset + self.degree() <= total, "embedding out of range");
        let mut images: Vec<usize> = (0..total).collect();
        for (p, &q) in self.0.iter().enumerate() {
            images[offset + p] = offset + q;
        }
        Permutation(images)
    }

    /// `self` on the first positions and `other` on the following ones.
    pub fn juxtapose(&self, other: &Permutation) -> Permutation {
        let d = self.degree();
        let mut images = self.0.clone();
        images.extend(other.0.iter().map(|&q| q + d));
        Permutation(images)
    }

    /// All permutations of degree `d` in lexicographic order of their images.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (0..d).collect();
        let mut out = alloc::vec![Permutation(cur.clone())];
        loop {
            let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
            let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Permutation(cur.clone()));
        }
    }
}

impl fmt::Display for Permutation {
    /// One-line notation with 1-based images, e.g. `[1 3 4 2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "]")
    }
}

/// An element of the group ring `Z[S_d]`, acting on `F^{(x)d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationSum {
    degree: usize,
    terms: Vec<(Permutation, i64)>,
}

impl PermutationSum {
    pub fn zero(degree: usize) -> PermutationSum {
        PermutationSum { degree, terms: Vec::new() }
    }

    pub fn identity(degree: usize) -> PermutationSum {
        PermutationSum::single(Permutation::identity(degree), 1)
    }

    pub fn single(p: Permutation, coeff: i64) -> PermutationSum {
        PermutationSum::from_terms(p.degree(), [(p, coeff)])
    }

    /// Collects like terms and drops zero coefficients.
    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Permutation, i64)>) -> PermutationSum {
        let mut acc: BTreeMap<Permutation, i64> = BTreeMap::new();
        for (p, c) in terms {
            assert_eq!(p.degree(), degree, "degree mismatch");
            *acc.entry(p).or_insert(0) += c;
        }
        PermutationSum { degree, terms: acc.into_iter().filter(|(_, c)| *c != 0).collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(Permutation, i64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PermutationSum) -> PermutationSum {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        PermutationSum::from_terms(self.degree, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: i64) -> PermutationSum {
        PermutationSum::from_terms(self.degree, self.terms.iter().map(|(p, a)| (p.clone(), a * c)))
    }

    /// `self * other`: first `other`, then `self`.
    pub fn compose(&self, other: &PermutationSum) -> PermutationSum {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let terms = self.terms.iter().flat_map(|(p, a)| other.terms.iter().map(move |(q, b)| (p.compose(q), a * b)));
        PermutationSum::from_terms(self.degree, terms)
    }

    /// `self (x) other` acting on disjoint blocks of positions.
    pub fn tensor(&self, other: &PermutationSum) -> PermutationSum {
        let terms = self.terms.iter().flat_map(|(p, a)| other.terms.iter().map(move |(q, b)| (p.juxtapose(q), a * b)));
        PermutationSum::from_terms(self.degree + other.degree, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn cycle_notation() {
        let s = Permutation::from_cycles(4, &[&[2, 3, 4]]).unwrap();
        assert_eq!(s.images(), &[0, 2, 3, 1]);
        assert_eq!(s.permute(&['a', 'b', 'c', 'd']), vec!['a', 'd', 'b', 'c']);
        assert_eq!(s.sign(), 1);
        let t = Permutation::from_cycles(4, &[&[2, 3]]).unwrap();
        assert_eq!(t.sign(), -1);
        assert_eq!(t.to_string(), "[1 3 2 4]");
        assert!(Permutation::from_cycles(2, &[&[1, 3]]).is_none());
    }

    #[test]
    fn composition_matches_sequential_action() {
        let perms = Permutation::all(4);
        assert_eq!(perms.len(), 24);
        let word = ['w', 'x', 'y', 'z'];
        for s in perms.iter().step_by(5) {
            for t in perms.iter().step_by(3) {
                assert_eq!(s.compose(t).permute(&word), s.permute(&t.permute(&word)));
            }
            assert_eq!(s.compose(&s.inverse()), Permutation::identity(4));
        }
    }

    #[test]
    fn sign_is_multiplicative() {
        let perms = Permutation::all(4);
        for s in &perms {
            for t in &perms {
                assert_eq!(s.compose(t).sign(), s.sign() * t.sign());
            }
        }
        assert_eq!(perms.iter().map(|p| p.sign()).sum::<i64>(), 0);
    }

    #[test]
    fn group_ring_arithmetic() {
        let t = PermutationSum::single(Permutation::from_cycles(2, &[&[1, 2]]).unwrap(), 1);
        let one = PermutationSum::identity(2);
        let sym = one.add(&t);
        let alt = one.add(&t.scale(-1));
        assert_eq!(sym.compose(&sym), sym.scale(2));
        assert!(sym.compose(&alt).is_empty());
        assert_eq!(sym.tensor(&PermutationSum::identity(1)).degree(), 3);
        assert_eq!(sym.tensor(&sym).len(), 4);
    }
}
