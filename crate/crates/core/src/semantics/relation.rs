use std::fmt;

use crate::lang::Predicate;

/// A binary relation on `Σ`, stored as one successor row per state.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<Predicate>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![Predicate::empty(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            rows: (0..n).map(|i| Predicate::singleton(n, i)).collect(),
        }
    }

    /// `⊤ = Σ × Σ`.
    pub fn top(n: usize) -> Self {
        Relation {
            rows: vec![Predicate::full(n); n],
        }
    }

    /// The test `{(σ, σ) | σ ∈ b}`.
    pub fn test(b: &Predicate) -> Self {
        let n = b.universe();
        Relation {
            rows: (0..n)
                .map(|i| {
                    if b.contains(i) {
                        Predicate::singleton(n, i)
                    } else {
                        Predicate::empty(n)
                    }
                })
                .collect(),
        }
    }

    /// `a × b`.
    pub fn product(a: &Predicate, b: &Predicate) -> Self {
        let n = a.universe();
        Relation {
            rows: (0..n)
                .map(|i| {
                    if a.contains(i) {
                        b.clone()
                    } else {
                        Predicate::empty(n)
                    }
                })
                .collect(),
        }
    }

    /// Pairs whose source lies in `b`.
    pub fn restrict_domain(mut self, b: &Predicate) -> Relation {
        for (i, r) in self.rows.iter_mut().enumerate() {
            if !b.contains(i) {
                r.clear();
            }
        }
        self
    }

    /// Pairs whose target lies in `c`.
    pub fn restrict_codomain(mut self, c: &Predicate) -> Relation {
        for r in self.rows.iter_mut() {
            r.intersect_with(c);
        }
        self
    }

    pub fn from_rows(rows: Vec<Predicate>) -> Self {
        let n = rows.len();
        assert!(
            rows.iter().all(|r| r.universe() == n),
            "relation must be square"
        );
        Relation { rows }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    /// Successors of `σ`, i.e. `⟦p⟧(σ)` for a program denotation.
    pub fn image_of(&self, a: usize) -> &Predicate {
        &self.rows[a]
    }

    pub fn rows(&self) -> &[Predicate] {
        &self.rows
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, r)| r.iter().map(move |b| (a, b)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Predicate::count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(Predicate::is_empty)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.union(b))
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        Relation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.intersection(b))
                .collect(),
        }
    }

    /// `self ; other`: first `self`, then `other`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let n = self.size();
        Relation {
            rows: self
                .rows
                .iter()
                .map(|row| {
                    let mut out = Predicate::empty(n);
                    for mid in row.iter() {
                        out.union_with(&other.rows[mid]);
                    }
                    out
                })
                .collect(),
        }
    }

    /// Reflexive-transitive closure.
    pub fn star(&self) -> Relation {
        let n = self.size();
        let mut rows = self.rows.clone();
        for (i, r) in rows.iter_mut().enumerate() {
            r.insert(i);
        }
        // Warshall: after step k, paths through intermediates 0..=k are closed
        for k in 0..n {
            let rk = rows[k].clone();
            for r in rows.iter_mut() {
                if r.contains(k) {
                    r.union_with(&rk);
                }
            }
        }
        Relation { rows }
    }

    pub fn converse(&self) -> Relation {
        let mut out = Relation::empty(self.size());
        for (a, b) in self.pairs() {
            out.insert(b, a);
        }
        out
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a.is_subset(b))
    }

    /// `{σ | ∃τ. (σ, τ) ∈ R}`.
    pub fn domain(&self) -> Predicate {
        let n = self.size();
        Predicate::from_fn(n, |i| !self.rows[i].is_empty())
    }

    /// `{τ | ∃σ. (σ, τ) ∈ R}`.
    pub fn codomain(&self) -> Predicate {
        let mut out = Predicate::empty(self.size());
        for r in &self.rows {
            out.union_with(r);
        }
        out
    }

    /// `{τ | ∃σ ∈ s. (σ, τ) ∈ R}`.
    pub fn image(&self, s: &Predicate) -> Predicate {
        let mut out = Predicate::empty(self.size());
        for i in s.iter() {
            out.union_with(&self.rows[i]);
        }
        out
    }

    /// `{σ | ∃τ ∈ t. (σ, τ) ∈ R}`.
    pub fn preimage(&self, t: &Predicate) -> Predicate {
        let n = self.size();
        Predicate::from_fn(n, |i| !self.rows[i].is_disjoint(t))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Relation {
        Relation::from_pairs(n, (0..n - 1).map(|i| (i, i + 1)))
    }

    #[test]
    fn units_and_absorption() {
        let r = Relation::from_pairs(4, [(0, 1), (1, 1), (3, 2)]);
        let one = Relation::identity(4);
        assert_eq!(r.compose(&one), r);
        assert_eq!(one.compose(&r), r);
        assert!(Relation::empty(4).compose(&r).is_empty());
        assert!(r.is_subset(&Relation::top(4)));
        assert_eq!(r.union(&Relation::empty(4)), r);
    }

    #[test]
    fn star_is_reachability() {
        let s = chain(4).star();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(s.contains(a, b), a <= b);
            }
        }
        assert_eq!(s.compose(&s), s);
    }

    #[test]
    fn domain_codomain_image() {
        let r = Relation::from_pairs(5, [(1, 1), (2, 2), (3, 2), (4, 3), (4, 4)]);
        assert_eq!(r.domain(), Predicate::from_indices(5, [1, 2, 3, 4]));
        assert_eq!(r.codomain(), Predicate::from_indices(5, [1, 2, 3, 4]));
        assert_eq!(
            r.image(&Predicate::from_indices(5, [3])),
            Predicate::from_indices(5, [2])
        );
        assert_eq!(
            r.preimage(&Predicate::from_indices(5, [2])),
            Predicate::from_indices(5, [2, 3])
        );
        assert_eq!(r.converse().converse(), r);
    }
}
