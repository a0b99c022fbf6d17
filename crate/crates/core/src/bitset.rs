/// Dense subset of `0..len`, used for represented-value sets of field elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
    len: usize,
}

impl ElemSet {
    pub fn new(len: usize) -> Self {
        ElemSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_iter<I: IntoIterator<Item = u32>>(len: usize, items: I) -> Self {
        let mut s = ElemSet::new(len);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// Universe size.
    pub fn capacity(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, x: u32) -> bool {
        let (w, b) = (x as usize / 64, x % 64);
        debug_assert!((x as usize) < self.len);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: u32) {
        self.words[x as usize / 64] &= !(1 << (x % 64));
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        (x as usize) < self.len && self.words[x as usize / 64] & (1 << (x % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_count() {
        let s = ElemSet::from_iter(130, [0, 5, 64, 129, 5]);
        assert_eq!(s.to_vec(), vec![0, 5, 64, 129]);
        assert_eq!(s.count(), 4);
        assert!(s.contains(129));
        assert!(!s.contains(128));
        assert!(!s.contains(400));
    }

    #[test]
    fn union_and_subset() {
        let mut a = ElemSet::from_iter(70, [1, 2]);
        let b = ElemSet::from_iter(70, [2, 69]);
        assert!(!b.is_subset(&a));
        a.union_with(&b);
        assert!(b.is_subset(&a));
        assert_eq!(a.to_vec(), vec![1, 2, 69]);
        a.remove(2);
        assert_eq!(a.to_vec(), vec![1, 69]);
    }
}
