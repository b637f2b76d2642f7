use std::fmt;

use smallvec::SmallVec;

/// Position of an independent variable in its [`Space`](super::Space) declaration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u8);

/// Position of a dependent variable in its [`Space`](super::Space) declaration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DepId(pub u8);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl DepId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Set of independent variables, at most 32 of them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn all(p: usize) -> Self {
        assert!(p <= 32, "at most 32 independent variables are supported");
        if p == 32 {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << p) - 1)
        }
    }

    pub fn from_vars(vars: impl IntoIterator<Item = VarId>) -> Self {
        vars.into_iter().fold(VarSet(0), |s, v| s.with(v))
    }

    pub fn with(self, v: VarId) -> Self {
        VarSet(self.0 | (1 << v.0))
    }

    pub fn contains(self, v: VarId) -> bool {
        self.0 & (1 << v.0) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = VarId> {
        (0..32u8).filter(move |i| self.0 & (1 << i) != 0).map(VarId)
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }
}

/// Unordered multi-index: a multiplicity per independent variable.
///
/// Stored densely by variable id with trailing zeros trimmed, so two
/// multi-indices naming the same multiset of directions compare equal.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(SmallVec<[u8; 4]>);

impl MultiIndex {
    pub fn empty() -> Self {
        MultiIndex(SmallVec::new())
    }

    pub fn single(v: VarId) -> Self {
        Self::empty().bump(v)
    }

    /// Builds a multi-index from a sequence of directions; order is irrelevant.
    pub fn from_vars(vars: impl IntoIterator<Item = VarId>) -> Self {
        vars.into_iter().fold(Self::empty(), |j, v| j.bump(v))
    }

    pub fn from_counts(counts: &[u8]) -> Self {
        let mut m = MultiIndex(counts.iter().copied().collect());
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn count(&self, v: VarId) -> u8 {
        self.0.get(v.index()).copied().unwrap_or(0)
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The index with one more derivative in `v`.
    pub fn bump(&self, v: VarId) -> Self {
        let mut out = self.clone();
        let i = v.index();
        if out.0.len() <= i {
            out.0.resize(i + 1, 0);
        }
        out.0[i] = out.0[i]
            .checked_add(1)
            .expect("derivative multiplicity overflow");
        out
    }

    /// The index with one derivative in `v` removed, if there is one.
    pub fn lower(&self, v: VarId) -> Option<Self> {
        let c = self.count(v);
        if c == 0 {
            return None;
        }
        let mut out = self.clone();
        out.0[v.index()] = c - 1;
        out.trim();
        Some(out)
    }

    pub fn add(&self, other: &MultiIndex) -> Self {
        let n = self.0.len().max(other.0.len());
        let counts: SmallVec<[u8; 4]> = (0..n)
            .map(|i| {
                let v = VarId(i as u8);
                self.count(v) + other.count(v)
            })
            .collect();
        MultiIndex(counts)
    }

    /// `self - other` when `other` is contained in `self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<Self> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.clone();
        for (i, &c) in other.0.iter().enumerate() {
            out.0[i] = out.0[i].checked_sub(c)?;
        }
        out.trim();
        Some(out)
    }

    pub fn contains(&self, other: &MultiIndex) -> bool {
        self.checked_sub(other).is_some()
    }

    /// Variables with nonzero multiplicity, ascending, each with its count.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, u8)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (VarId(i as u8), c))
    }

    /// The directions of this index as an ascending sequence with repetition.
    pub fn sequence(&self) -> Vec<VarId> {
        self.iter()
            .flat_map(|(v, c)| std::iter::repeat_n(v, c as usize))
            .collect()
    }

    pub fn support(&self) -> VarSet {
        VarSet::from_vars(self.iter().map(|(v, _)| v))
    }

    /// Every sub-index `K <= self`, in lexicographic order of counts.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::empty()];
        for (v, c) in self.iter() {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for k in &out {
                let mut cur = k.clone();
                next.push(cur.clone());
                for _ in 0..c {
                    cur = cur.bump(v);
                    next.push(cur.clone());
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Multinomial `prod_i binom(self_i, k_i)`.
    pub fn binomial(&self, k: &MultiIndex) -> u64 {
        self.iter()
            .map(|(v, n)| binom(n as u64, k.count(v) as u64))
            .product()
    }

    /// `prod_i self_i!`.
    pub fn factorial(&self) -> u64 {
        self.iter()
            .map(|(_, n)| (1..=n as u64).product::<u64>())
            .product()
    }
}

pub(crate) fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "J{:?}",
            self.sequence().iter().map(|v| v.0).collect::<Vec<_>>()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: VarId = VarId(0);
    const X: VarId = VarId(1);
    const Y: VarId = VarId(2);

    #[test]
    fn unordered_semantics() {
        assert_eq!(MultiIndex::from_vars([X, Y]), MultiIndex::from_vars([Y, X]));
        assert_eq!(MultiIndex::from_vars([X, T, X]).order(), 3);
    }

    #[test]
    fn zero_counts_are_trimmed() {
        let j = MultiIndex::from_vars([Y]).lower(Y).unwrap();
        assert_eq!(j, MultiIndex::empty());
        assert!(j.is_empty());
        assert_eq!(MultiIndex::from_counts(&[1, 0, 0]), MultiIndex::single(T));
    }

    #[test]
    fn sub_indices_and_binomials() {
        let j = MultiIndex::from_vars([X, X, Y]);
        let subs = j.sub_indices();
        assert_eq!(subs.len(), 6);
        let total: u64 = subs.iter().map(|k| j.binomial(k)).sum();
        assert_eq!(total, 8);
        assert_eq!(
            j.checked_sub(&MultiIndex::single(X)),
            Some(MultiIndex::from_vars([X, Y]))
        );
        assert_eq!(j.checked_sub(&MultiIndex::single(T)), None);
        assert_eq!(j.factorial(), 2);
        assert_eq!(j.sequence(), vec![X, X, Y]);
    }
}
