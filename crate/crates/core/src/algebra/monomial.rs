use std::cmp::Ordering;
use std::fmt;

/// A basis word `e_{i1} ∨ … ∨ e_{in}` of the symmetric algebra, stored as a
/// multiset: `(generator, multiplicity)` pairs sorted by generator with no zero
/// multiplicities. The empty monomial is the unit `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    counts: Vec<(usize, u32)>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn generator(k: usize) -> Self {
        Monomial {
            counts: vec![(k, 1)],
        }
    }

    /// `e_k^{∨n}`.
    pub fn power(k: usize, n: u32) -> Self {
        if n == 0 {
            Monomial::unit()
        } else {
            Monomial {
                counts: vec![(k, n)],
            }
        }
    }

    /// Builds a monomial from generator indices in any order, with repetition.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        let mut counts: Vec<(usize, u32)> = Vec::new();
        for k in idx {
            match counts.last_mut() {
                Some((last, c)) if *last == k => *c += 1,
                _ => counts.push((k, 1)),
            }
        }
        Monomial { counts }
    }

    /// Builds from `(generator, multiplicity)` pairs; zero multiplicities are dropped
    /// and repeated generators merged.
    pub fn from_counts<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut counts: Vec<(usize, u32)> = pairs.into_iter().filter(|&(_, c)| c > 0).collect();
        counts.sort_unstable();
        counts.dedup_by(|next, prev| {
            if next.0 == prev.0 {
                prev.1 += next.1;
                true
            } else {
                false
            }
        });
        Monomial { counts }
    }

    pub fn counts(&self) -> &[(usize, u32)] {
        &self.counts
    }

    pub fn grading(&self) -> usize {
        self.counts.iter().map(|&(_, c)| c as usize).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn multiplicity(&self, k: usize) -> u32 {
        self.counts
            .binary_search_by_key(&k, |&(g, _)| g)
            .map(|pos| self.counts[pos].1)
            .unwrap_or(0)
    }

    /// Largest generator index present (0 for the unit).
    pub fn max_generator(&self) -> usize {
        self.counts.last().map_or(0, |&(k, _)| k)
    }

    /// Generator indices in nondecreasing order, repeated by multiplicity.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .flat_map(|&(k, c)| std::iter::repeat_n(k, c as usize))
    }

    pub fn index_vec(&self) -> Vec<usize> {
        self.indices().collect()
    }

    /// The symmetric product: multiset union.
    pub fn vee(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.counts, &other.counts);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { counts: out }
    }

    /// Removes one copy of `e_k`; `None` if `e_k` does not occur.
    pub fn remove_one(&self, k: usize) -> Option<Monomial> {
        let pos = self.counts.binary_search_by_key(&k, |&(g, _)| g).ok()?;
        let mut counts = self.counts.clone();
        if counts[pos].1 == 1 {
            counts.remove(pos);
        } else {
            counts[pos].1 -= 1;
        }
        Some(Monomial { counts })
    }

    /// All componentwise splits `m = left ∨ right` with the binomial multiplicity
    /// `∏ C(k_i, j_i)`: the shuffle coproduct with equal labels merged.
    pub fn splits(&self) -> Vec<(Monomial, Monomial, u64)> {
        let n = self.counts.len();
        let total: usize = self.counts.iter().map(|&(_, c)| c as usize + 1).product();
        let mut out = Vec::with_capacity(total);
        let mut take = vec![0u32; n];
        loop {
            let mut left = Vec::with_capacity(n);
            let mut right = Vec::with_capacity(n);
            let mut coeff = 1u64;
            for (slot, &(k, c)) in self.counts.iter().enumerate() {
                let j = take[slot];
                coeff *= binomial(c, j);
                if j > 0 {
                    left.push((k, j));
                }
                if c > j {
                    right.push((k, c - j));
                }
            }
            out.push((Monomial { counts: left }, Monomial { counts: right }, coeff));
            // mixed-radix increment
            let mut slot = 0;
            loop {
                if slot == n {
                    return out;
                }
                if take[slot] < self.counts[slot].1 {
                    take[slot] += 1;
                    break;
                }
                take[slot] = 0;
                slot += 1;
            }
        }
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Display order: higher grading first, then lexicographic on the index sequence.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .grading()
            .cmp(&self.grading())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `e1 v e1 v e2`; the unit prints as `1`.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        for (n, k) in self.indices().enumerate() {
            if n > 0 {
                f.write_str(" v ")?;
            }
            write!(f, "e{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let m = Monomial::from_indices([2, 1, 2]);
        assert_eq!(m.counts(), &[(1, 1), (2, 2)]);
        assert_eq!(m.grading(), 3);
        assert_eq!(m, Monomial::from_counts([(2, 1), (1, 1), (2, 1), (3, 0)]));
        assert_eq!(Monomial::unit().grading(), 0);
        assert_eq!(m.to_string(), "e1 v e2 v e2");
    }

    #[test]
    fn vee_is_multiset_union() {
        let a = Monomial::from_indices([1, 3]);
        let b = Monomial::from_indices([1, 2]);
        assert_eq!(a.vee(&b), Monomial::from_indices([1, 1, 2, 3]));
        assert_eq!(a.vee(&Monomial::unit()), a);
    }

    #[test]
    fn remove_one_decrements() {
        let m = Monomial::from_indices([1, 1, 2]);
        assert_eq!(m.remove_one(1), Some(Monomial::from_indices([1, 2])));
        assert_eq!(m.remove_one(2), Some(Monomial::from_indices([1, 1])));
        assert_eq!(m.remove_one(3), None);
    }

    #[test]
    fn splits_count_and_weights() {
        let m = Monomial::from_indices([1, 1, 2]);
        let s = m.splits();
        assert_eq!(s.len(), 6);
        // total weight is 2^grading
        assert_eq!(s.iter().map(|t| t.2).sum::<u64>(), 8);
    }

    #[test]
    fn ordering_by_grading_then_lex() {
        let mut v = [
            Monomial::unit(),
            Monomial::from_indices([2]),
            Monomial::from_indices([1, 2]),
            Monomial::from_indices([1]),
            Monomial::from_indices([1, 1]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["e1 v e1", "e1 v e2", "e1", "e2", "1"]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}
