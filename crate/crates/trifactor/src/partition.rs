//! Ordered vertex partitions.

use crate::bitset::VertexSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition has no parts")]
    NoParts,
    #[error("part {index} is empty")]
    EmptyPart { index: usize },
    #[error("parts {a} and {b} overlap")]
    Overlap { a: usize, b: usize },
    #[error("parts do not cover every vertex ({covered} of {n})")]
    NotCovering { covered: usize, n: usize },
    #[error("part index {index} out of range 0..{parts}")]
    BadIndex { index: usize, parts: usize },
    #[error("vertex {v} out of range 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Ordered list of disjoint nonempty vertex sets covering `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    parts: Vec<VertexSet>,
    part_of: Vec<u32>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::NoParts);
        }
        let mut part_of = vec![u32::MAX; n];
        let mut covered = 0usize;
        for (i, p) in parts.iter().enumerate() {
            if p.is_empty() {
                return Err(PartitionError::EmptyPart { index: i });
            }
            for v in p.iter() {
                if part_of[v] != u32::MAX {
                    return Err(PartitionError::Overlap {
                        a: part_of[v] as usize,
                        b: i,
                    });
                }
                part_of[v] = i as u32;
                covered += 1;
            }
        }
        if covered != n {
            return Err(PartitionError::NotCovering { covered, n });
        }
        Ok(Partition { n, parts, part_of })
    }

    pub fn from_index_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self, PartitionError> {
        for l in lists {
            for &v in l {
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange { v, n });
                }
            }
        }
        let parts = lists
            .iter()
            .map(|l| VertexSet::from_vertices(n, l.iter().copied()))
            .collect();
        Self::new(n, parts)
    }

    /// The trivial partition `{V}`.
    pub fn trivial(n: usize) -> Self {
        Partition {
            n,
            parts: vec![VertexSet::full(n)],
            part_of: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts, always at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn part(&self, i: usize) -> &VertexSet {
        &self.parts[i]
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v] as usize
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.len()).collect()
    }

    pub fn sizes_all_congruent_mod3(&self) -> bool {
        let r0 = self.parts[0].len() % 3;
        self.parts.iter().all(|p| p.len() % 3 == r0)
    }

    /// Replaces parts `i` and `j` by their union (placed at `min(i, j)`).
    pub fn merge_parts(&self, i: usize, j: usize) -> Result<Partition, PartitionError> {
        let k = self.parts.len();
        if i >= k {
            return Err(PartitionError::BadIndex { index: i, parts: k });
        }
        if j >= k || i == j {
            return Err(PartitionError::BadIndex { index: j, parts: k });
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let merged = self.parts[lo].union(&self.parts[hi]);
        let mut parts = Vec::with_capacity(k - 1);
        for (idx, p) in self.parts.iter().enumerate() {
            if idx == lo {
                parts.push(merged.clone());
            } else if idx != hi {
                parts.push(p.clone());
            }
        }
        Partition::new(self.n, parts)
    }

    pub fn to_index_lists(&self) -> Vec<Vec<usize>> {
        self.parts.iter().map(|p| p.to_vec()).collect()
    }
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.parts.iter()).finish()
    }
}
