use std::fmt;

use smallvec::{smallvec, SmallVec};

use super::space::StateSpace;

const WORD: usize = 64;

/// A set of states, indexed by the canonical enumeration of a [`StateSpace`].
/// Bits past the universe are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Predicate {
    len: usize,
    words: SmallVec<[u64; 2]>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Iterator over the set bits of a word slice.
struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.index * WORD + bit)
    }
}

impl Predicate {
    pub fn empty(size: usize) -> Self {
        Predicate {
            len: size,
            words: smallvec![0; word_count(size)],
        }
    }

    pub fn full(size: usize) -> Self {
        let mut p = Predicate {
            len: size,
            words: smallvec![!0; word_count(size)],
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn zip_with(&self, other: &Predicate, f: impl Fn(u64, u64) -> u64) -> Predicate {
        debug_assert_eq!(self.len, other.len);
        Predicate {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn first_where(&self, other: &Predicate, f: impl Fn(u64, u64) -> u64) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find_map(|(i, (&a, &b))| {
                let w = f(a, b);
                (w != 0).then(|| i * WORD + w.trailing_zeros() as usize)
            })
    }

    pub fn singleton(size: usize, index: usize) -> Self {
        let mut p = Self::empty(size);
        p.insert(index);
        p
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(size: usize, indices: I) -> Self {
        let mut p = Self::empty(size);
        for i in indices {
            p.insert(i);
        }
        p
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut p = Self::empty(size);
        for i in 0..size {
            if f(i) {
                p.words[i / WORD] |= 1 << (i % WORD);
            }
        }
        p
    }

    /// The `k`-th predicate of the `2^|Σ|` predicates, bit `i` of `k` being
    /// membership of state `i`. Only meaningful for `size < 64`.
    pub fn from_mask(size: usize, mask: u64) -> Self {
        assert!(size < 64, "predicate enumeration needs |Σ| < 64");
        let mut p = Self::empty(size);
        if size > 0 {
            p.words[0] = mask;
            p.trim();
        }
        p
    }

    /// Number of states in the underlying space.
    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.len && self.words[index / WORD] >> (index % WORD) & 1 == 1
    }

    pub fn insert(&mut self, index: usize) {
        assert!(
            index < self.len,
            "state {index} outside a universe of {}",
            self.len
        );
        self.words[index / WORD] |= 1 << (index % WORD);
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.len {
            self.words[index / WORD] &= !(1 << (index % WORD));
        }
    }

    /// Removes every state.
    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn complement(&self) -> Predicate {
        let mut p = Predicate {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        p.trim();
        p
    }

    pub fn union(&self, other: &Predicate) -> Predicate {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Predicate) -> Predicate {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Predicate) -> Predicate {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &Predicate) {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a |= b);
    }

    pub fn intersect_with(&mut self, other: &Predicate) {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter_mut()
            .zip(&other.words)
            .for_each(|(a, b)| *a &= b);
    }

    pub fn is_subset(&self, other: &Predicate) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Predicate) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Lowest-indexed state of `self \ other`, the canonical witness of a
    /// failed inclusion.
    pub fn first_outside(&self, other: &Predicate) -> Option<usize> {
        self.first_where(other, |a, b| a & !b)
    }

    /// Lowest-indexed state on which the two predicates disagree.
    pub fn first_difference(&self, other: &Predicate) -> Option<usize> {
        self.first_where(other, |a, b| a ^ b)
    }

    pub fn render(&self, space: &StateSpace) -> String {
        let states: Vec<String> = self
            .iter()
            .map(|i| format!("({})", space.render_state(i)))
            .collect();
        format!("{{{}}}", states.join(", "))
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// All `2^|Σ|` predicates in mask order.
pub fn all_predicates(size: usize) -> impl Iterator<Item = Predicate> {
    assert!(size < 24, "refusing to enumerate 2^{size} predicates");
    (0..1u64 << size).map(move |m| Predicate::from_mask(size, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_basics() {
        let bot = Predicate::empty(5);
        let top = Predicate::full(5);
        let p = Predicate::from_indices(5, [1, 3]);
        assert!(bot.is_subset(&p) && p.is_subset(&top));
        assert_eq!(p.complement().complement(), p);
        assert_eq!(p.union(&p.complement()), top);
        assert_eq!(p.intersection(&p.complement()), bot);
        assert_eq!(top.complement(), bot);
        assert_eq!(p.count(), 2);
        assert!(top.is_full() && !p.is_full());
    }

    #[test]
    fn multi_word_universes() {
        let n = 150;
        let p = Predicate::from_indices(n, [0, 63, 64, 127, 128, 149]);
        assert_eq!(p.iter().collect::<Vec<_>>(), [0, 63, 64, 127, 128, 149]);
        assert_eq!(p.complement().count(), n - 6);
        assert!(p.complement().complement() == p);
        assert!(Predicate::full(n).is_full());
        assert_eq!(Predicate::full(n).complement(), Predicate::empty(n));
        let q = Predicate::from_indices(n, [0, 63, 64, 127, 128]);
        assert_eq!(p.first_outside(&q), Some(149));
        assert!(q.is_subset(&p) && !p.is_subset(&q));
        let mut r = p.clone();
        r.remove(64);
        assert_eq!(p.first_difference(&r), Some(64));
        r.clear();
        assert!(r.is_empty());
    }

    #[test]
    fn witnesses() {
        let a = Predicate::from_indices(4, [0, 2, 3]);
        let b = Predicate::from_indices(4, [0, 3]);
        assert_eq!(a.first_outside(&b), Some(2));
        assert_eq!(b.first_outside(&a), None);
        assert_eq!(a.first_difference(&b), Some(2));
    }

    #[test]
    fn enumeration_is_exhaustive() {
        let all: Vec<_> = all_predicates(3).collect();
        assert_eq!(all.len(), 8);
        assert!(all[0].is_empty());
        assert!(all[7].is_full());
        assert_eq!(all[5], Predicate::from_indices(3, [0, 2]));
    }

    #[test]
    fn render_uses_state_names() {
        let sp = StateSpace::new(&["x"], 3).unwrap();
        let p = Predicate::from_indices(3, [0, 2]);
        assert_eq!(p.render(&sp), "{(x=0), (x=2)}");
        assert_eq!(Predicate::empty(3).render(&sp), "{}");
    }
}
