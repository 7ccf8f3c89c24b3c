//! Index vectors, edge-vector multiplicities, integer-lattice membership via
//! Hermite normal form, and 2-transferral detection.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bitset::VertexSet;
use crate::exact::{ceil_mul, Rat};
use crate::hypergraph::TriangleHypergraph;
use crate::partition::Partition;

/// Vector of part-intersection sizes. For a hyperedge the entries sum to 3;
/// for the whole vertex set they sum to `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexVector(pub Vec<u64>);

impl IndexVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }
}

/// `i_P(U)`: componentwise `|U ∩ V_i|`.
pub fn index_vector(p: &Partition, u: &VertexSet) -> IndexVector {
    IndexVector(
        p.parts()
            .iter()
            .map(|part| part.intersection_len(u) as u64)
            .collect(),
    )
}

/// Edge-vectors of a hypergraph with their multiplicities (each hyperedge
/// counted once), sorted; only vectors realized by at least `⌈mu·n³⌉`
/// hyperedges are kept, so `mu = 0` gives the full set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeVectorSet {
    pub dim: usize,
    pub vectors: Vec<(IndexVector, u64)>,
}

impl EdgeVectorSet {
    pub fn total_multiplicity(&self) -> u64 {
        self.vectors.iter().map(|(_, m)| m).sum()
    }
}

pub fn edge_vectors(h: &TriangleHypergraph, p: &Partition, mu: Rat) -> EdgeVectorSet {
    assert_eq!(h.n(), p.n(), "hypergraph and partition sizes differ");
    let mut mult: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for e in h.edges() {
        let mut v = vec![0u64; p.len()];
        for &x in e {
            v[p.part_of(x as usize)] += 1;
        }
        *mult.entry(v).or_insert(0) += 1;
    }
    let floor = ceil_mul(mu, (h.n() as u64).pow(3));
    let vectors = mult
        .into_iter()
        .filter(|&(_, m)| m >= floor)
        .map(|(v, m)| (IndexVector(v), m))
        .collect();
    EdgeVectorSet {
        dim: p.len(),
        vectors,
    }
}

/// A difference of two robust edge-vectors equal to a unit-vector
/// difference `u_plus - u_minus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transferral {
    pub plus: usize,
    pub minus: usize,
    pub v1: IndexVector,
    pub v2: IndexVector,
}

/// Scans ordered pairs of edge-vectors for a difference `u_i - u_j`.
pub fn find_2_transferral(s: &EdgeVectorSet) -> Option<Transferral> {
    for (v1, _) in &s.vectors {
        for (v2, _) in &s.vectors {
            if v1 == v2 {
                continue;
            }
            let mut plus = None;
            let mut minus = None;
            let mut ok = true;
            for (k, (&a, &b)) in v1.0.iter().zip(&v2.0).enumerate() {
                match a as i64 - b as i64 {
                    0 => {}
                    1 if plus.is_none() => plus = Some(k),
                    -1 if minus.is_none() => minus = Some(k),
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                if let (Some(plus), Some(minus)) = (plus, minus) {
                    return Some(Transferral {
                        plus,
                        minus,
                        v1: v1.clone(),
                        v2: v2.clone(),
                    });
                }
            }
        }
    }
    None
}

/// Linking-length bookkeeping for merging two parts of a closed partition:
/// the merged partition is closed at length `4·ell + 1`.
pub fn ell_after(ell: u64) -> u64 {
    4 * ell + 1
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("vector has dimension {got}, lattice has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Integer column basis in Hermite normal form: columns ordered by pivot
/// row, pivots positive, entries left of a pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    cols: Vec<Vec<BigInt>>,
    pivot_rows: Vec<usize>,
}

impl LatticeBasis {
    pub fn from_generators<I, V>(dim: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[i64]>,
    {
        let mut cols: Vec<Vec<BigInt>> = gens
            .into_iter()
            .map(|g| {
                let g = g.as_ref();
                assert_eq!(g.len(), dim, "generator dimension mismatch");
                g.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        let mut pivot_rows = Vec::new();
        let mut c = 0usize;
        for row in 0..dim {
            // move a column with nonzero entry in this row into position c
            let Some(j) = (c..cols.len()).find(|&j| !cols[j][row].is_zero()) else {
                continue;
            };
            cols.swap(c, j);
            // gcd out the rest of the row with unimodular column ops
            for j in (c + 1)..cols.len() {
                if cols[j][row].is_zero() {
                    continue;
                }
                let a = cols[c][row].clone();
                let b = cols[j][row].clone();
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let a_g = &a / &g;
                let b_g = &b / &g;
                let old_c = cols[c].clone();
                let old_j = cols[j].clone();
                for (vc, (oc, oj)) in cols[c].iter_mut().zip(old_c.iter().zip(&old_j)) {
                    *vc = &x * oc + &y * oj;
                }
                for (vj, (oc, oj)) in cols[j].iter_mut().zip(old_c.iter().zip(&old_j)) {
                    *vj = &a_g * oj - &b_g * oc;
                }
            }
            if cols[c][row].is_negative() {
                for entry in cols[c].iter_mut() {
                    *entry = -entry.clone();
                }
            }
            // canonical form: earlier columns reduced mod the new pivot
            let pivot = cols[c][row].clone();
            let pivot_col = cols[c].clone();
            for col in cols.iter_mut().take(c) {
                let q = col[row].div_floor(&pivot);
                if !q.is_zero() {
                    for (entry, p) in col.iter_mut().zip(&pivot_col) {
                        *entry -= &q * p;
                    }
                }
            }
            pivot_rows.push(row);
            c += 1;
        }
        debug_assert!(cols[c..].iter().all(|col| col.iter().all(|x| x.is_zero())));
        cols.truncate(c);
        LatticeBasis {
            dim,
            cols,
            pivot_rows,
        }
    }

    pub fn from_edge_vectors(s: &EdgeVectorSet) -> Self {
        Self::from_generators(s.dim, s.vectors.iter().map(|(v, _)| v.as_i64()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.cols
    }

    /// Exact membership of `v` in the integer span, by triangular solve
    /// along the pivots.
    pub fn contains(&self, v: &[i64]) -> Result<bool, LatticeError> {
        if v.len() != self.dim {
            return Err(LatticeError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (i, &row) in self.pivot_rows.iter().enumerate() {
            if w[row].is_zero() {
                continue;
            }
            let (q, r) = w[row].div_rem(&self.cols[i][row]);
            if !r.is_zero() {
                return Ok(false);
            }
            for (entry, b) in w.iter_mut().zip(&self.cols[i]) {
                *entry -= &q * b;
            }
        }
        Ok(w.iter().all(|x| x.is_zero()))
    }
}

/// Membership of `i_P(V)` in the lattice generated by the unfiltered
/// edge-vectors; `false` certifies that no perfect matching exists.
pub fn total_index_in_edge_lattice(h: &TriangleHypergraph, p: &Partition) -> bool {
    let evs = edge_vectors(h, p, Rat::new(0, 1));
    let basis = LatticeBasis::from_edge_vectors(&evs);
    let total = index_vector(p, &VertexSet::full(p.n()));
    basis
        .contains(&total.as_i64())
        .expect("dimensions agree by construction")
}
