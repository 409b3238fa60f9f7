use crate::error::{invalid, Result};

use super::{iter_bits, words_for};

/// A subset of the vertices `0..universe` of some host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            bits: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.bits[v / 64] |= 1 << (v % 64);
        }
        s
    }

    pub fn from_slice(universe: usize, vs: &[usize]) -> Result<Self> {
        let mut s = Self::new(universe);
        for &v in vs {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) -> Result<bool> {
        if v >= self.universe {
            return Err(invalid(format!(
                "vertex {v} out of range for {} vertices",
                self.universe
            )));
        }
        let fresh = !self.contains(v);
        self.bits[v / 64] |= 1 << (v % 64);
        Ok(fresh)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let had = self.contains(v);
        self.bits[v / 64] &= !(1 << (v % 64));
        had
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && (self.bits[v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_in_range_bits() {
        let mut s = VertexSet::new(70);
        assert!(s.insert(69).unwrap());
        assert!(!s.insert(69).unwrap());
        assert!(s.insert(70).is_err());
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![69]);
        assert!(s.remove(69));
        assert!(s.is_empty());
        assert_eq!(VertexSet::full(70).len(), 70);
    }
}
