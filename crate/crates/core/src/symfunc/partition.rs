//! Integer partitions and their combinatorial invariants.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One};

use crate::{Error, Result};

/// A partition: weakly decreasing positive integer parts.
///
/// The ordering is weight-ascending, then reverse-lexicographic within a
/// weight (so the partitions of 2 order as `(2) < (1,1)`). This is the
/// canonical enumeration and report order throughout the library.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidParameter(format!(
                    "parts {parts:?} are not weakly decreasing"
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "parts {parts:?} contain zero"
            )));
        }
        Ok(Self { parts })
    }

    /// Builds from any list of nonnegative entries by sorting and dropping zeros.
    pub fn from_unsorted(mut entries: Vec<u32>) -> Self {
        entries.retain(|&e| e > 0);
        entries.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts: entries }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|lambda|`, the sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `l(lambda)`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The i-th part (1-based); zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// Parts padded with zeros to length `n`. Panics if the partition is longer.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(self.parts.len() <= n, "partition longer than pad length");
        let mut v = self.parts.clone();
        v.resize(n, 0);
        v
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut conj = vec![0u32; cols];
        for (j, c) in conj.iter_mut().enumerate() {
            *c = self.parts.iter().filter(|&&p| p as usize > j).count() as u32;
        }
        Partition { parts: conj }
    }

    /// `n(lambda) = sum_i (i - 1) lambda_i`.
    pub fn n_lambda(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// `z_lambda = prod_r r^{m_r} m_r!` where `m_r` is the multiplicity of `r`.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.parts.len() {
            let r = self.parts[i];
            let mut mult = 0u64;
            while i < self.parts.len() && self.parts[i] == r {
                mult += 1;
                i += 1;
            }
            for m in 1..=mult {
                acc *= BigInt::from(r as u64 * m);
            }
        }
        acc
    }

    /// Cells `(i, j)` of the diagram, 1-based, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// Arm length of cell `(i, j)`: cells strictly to the right.
    pub fn arm(&self, i: usize, j: usize) -> u32 {
        self.part(i) - j as u32
    }

    /// Leg length of cell `(i, j)`: cells strictly below.
    pub fn leg(&self, i: usize, j: usize) -> u32 {
        self.parts.iter().skip(i).filter(|&&p| p as usize >= j).count() as u32
    }

    /// Dominance: `self >= other` iff the weights agree and every prefix sum
    /// of `self` is at least the corresponding prefix sum of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let len = self.parts.len().max(other.parts.len());
        let (mut sa, mut sb) = (0u64, 0u64);
        for i in 1..=len {
            sa += self.part(i) as u64;
            sb += other.part(i) as u64;
            if sa < sb {
                return false;
            }
        }
        true
    }

    /// Multiset union of parts (the power-sum product index).
    pub fn union_parts(&self, other: &Partition) -> Partition {
        let mut v = self.parts.clone();
        v.extend_from_slice(&other.parts);
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: v }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            // reverse-lexicographic within a weight: (2) before (1,1)
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions with weight `<= max_weight` and length `<= max_length`,
/// each exactly once, in the canonical order (weight ascending, then
/// reverse-lexicographic).
pub fn partitions_upto(max_weight: u32, max_length: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for w in 0..=max_weight {
        out.extend(partitions_of_weight(w, max_length));
    }
    out
}

/// All partitions of exactly `weight` with length `<= max_length`, in
/// reverse-lexicographic order.
pub fn partitions_of_weight(weight: u32, max_length: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    gen_rec(weight, weight, max_length, &mut prefix, &mut out);
    out
}

fn gen_rec(
    remaining: u32,
    max_part: u32,
    slots: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    if slots == 0 {
        return;
    }
    let first = remaining.min(max_part);
    for p in (1..=first).rev() {
        prefix.push(p);
        gen_rec(remaining - p, p, slots - 1, prefix, out);
        prefix.pop();
    }
}

/// Distinct permutations of `entries` (a multiset), in descending
/// lexicographic order. Used to expand monomial symmetric polynomials.
pub fn distinct_permutations(entries: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = entries.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // step to the next permutation in descending lex order
    loop {
        // find the longest weakly increasing suffix
        let n = cur.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && cur[i - 1] <= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let pivot = i - 1;
        let mut j = n - 1;
        while cur[j] >= cur[pivot] {
            j -= 1;
        }
        cur.swap(pivot, j);
        cur[i..].reverse();
        cur[i..].sort_unstable_by(|a, b| b.cmp(a));
        out.push(cur.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_matches_hand_lists() {
        let got = partitions_upto(0, 3);
        assert_eq!(got, vec![Partition::empty()]);
        let got = partitions_upto(2, 2);
        assert_eq!(got, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[1, 1])]);
        let got = partitions_upto(3, 1);
        assert_eq!(got, vec![Partition::empty(), p(&[1]), p(&[2]), p(&[3])]);
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let got = partitions_upto(7, 7);
        for w in got.windows(2) {
            assert!(w[0] < w[1]);
        }
        // p(0..7) = 1,1,2,3,5,7,11,15
        assert_eq!(got.len(), 1 + 1 + 2 + 3 + 5 + 7 + 11 + 15);
    }

    #[test]
    fn n_lambda_values() {
        assert_eq!(Partition::empty().n_lambda(), 0);
        assert_eq!(p(&[2, 1]).n_lambda(), 1);
        assert_eq!(p(&[1, 1, 1]).n_lambda(), 3);
    }

    #[test]
    fn n_lambda_conjugate_identity() {
        // n(lambda) = sum_j C(conj_j, 2)
        for lam in partitions_upto(6, 6) {
            let direct = lam.n_lambda();
            let viaconj: u64 = lam
                .conjugate()
                .parts()
                .iter()
                .map(|&c| c as u64 * (c as u64 - 1) / 2)
                .sum();
            assert_eq!(direct, viaconj, "failed at {lam}");
        }
    }

    #[test]
    fn conjugate_involution() {
        for lam in partitions_upto(7, 7) {
            assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }

    #[test]
    fn arms_and_legs() {
        let lam = p(&[3, 2]);
        assert_eq!(lam.arm(1, 1), 2);
        assert_eq!(lam.leg(1, 1), 1);
        assert_eq!(lam.arm(1, 3), 0);
        assert_eq!(lam.leg(1, 3), 0);
        assert_eq!(lam.arm(2, 1), 1);
        assert_eq!(lam.leg(2, 1), 0);
    }

    #[test]
    fn dominance_order() {
        assert!(p(&[4]).dominates(&p(&[2, 2])));
        assert!(p(&[2, 2]).dominates(&p(&[2, 1, 1])));
        assert!(!p(&[2, 2]).dominates(&p(&[4])));
        // incomparable pair at weight 6
        assert!(!p(&[4, 1, 1]).dominates(&p(&[3, 3])));
        assert!(!p(&[3, 3]).dominates(&p(&[4, 1, 1])));
        assert!(!p(&[2, 1]).dominates(&p(&[2])));
    }

    #[test]
    fn z_values() {
        assert_eq!(p(&[1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(p(&[2]).z(), BigInt::from(2));
        assert_eq!(p(&[2, 1]).z(), BigInt::from(2));
        assert_eq!(p(&[2, 2]).z(), BigInt::from(8));
    }

    #[test]
    fn distinct_permutations_counts() {
        assert_eq!(distinct_permutations(&[1, 0]).len(), 2);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 2]).len(), 1);
        let perms = distinct_permutations(&[3, 1, 1]);
        assert_eq!(perms.len(), 3);
        assert!(perms.contains(&vec![1, 3, 1]));
    }
}
