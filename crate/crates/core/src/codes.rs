//! Binary codes of even node sets: GF(2) linear algebra on bit vectors,
//! weight enumeration, and extraction of the geometric code from the
//! fibre/node incidence data.

use std::collections::BTreeMap;
use std::fmt;

use crate::fibration::IncidenceTable;
use crate::quotient::SingularityCensus;
use crate::{Error, Result};

/// Full weight enumeration caps out here; the codes in scope have length at
/// most 16 and dimension at most 4.
pub const MAX_ENUMERATED_DIM: usize = 20;

/// A word of a binary code of length `len <= 64`.  Bit `i` is node `i`;
/// the string form lists node 0 first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    len: usize,
    bits: u64,
}

impl BinaryWord {
    pub fn new(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "word length {len} exceeds 64");
        let mask = if len == 64 { !0 } else { (1u64 << len) - 1 };
        BinaryWord {
            len,
            bits: bits & mask,
        }
    }

    pub fn zero(len: usize) -> Self {
        BinaryWord::new(len, 0)
    }

    pub fn ones(len: usize) -> Self {
        BinaryWord::new(len, !0)
    }

    /// Word with the given node indices set.
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut bits = 0u64;
        for &i in indices {
            assert!(i < len, "index {i} out of range for length {len}");
            bits |= 1 << i;
        }
        BinaryWord::new(len, bits)
    }

    /// Parse a 0/1 string, first character = node 0.
    pub fn parse(s: &str) -> Result<Self> {
        let len = s.len();
        assert!(len <= 64);
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(Error::OutOfScope {
                        detail: format!("invalid code word character `{c}`"),
                    })
                }
            }
        }
        Ok(BinaryWord::new(len, bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.bits >> i & 1 == 1
    }

    pub fn xor(&self, other: &BinaryWord) -> BinaryWord {
        assert_eq!(self.len, other.len, "length mismatch");
        BinaryWord::new(self.len, self.bits ^ other.bits)
    }

    pub fn or(&self, other: &BinaryWord) -> BinaryWord {
        assert_eq!(self.len, other.len, "length mismatch");
        BinaryWord::new(self.len, self.bits | other.bits)
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A binary linear code given by a reduced basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryCode {
    len: usize,
    /// Row-reduced basis, sorted by leading (lowest set) bit.
    basis: Vec<BinaryWord>,
}

impl BinaryCode {
    /// Span of the generators, by incremental Gauss-Jordan elimination over
    /// GF(2).  The stored basis is the reduced row-echelon basis (leading
    /// bit = lowest set bit), which is unique, so equal codes get equal
    /// bases regardless of generator order.
    pub fn span(len: usize, generators: &[BinaryWord]) -> Self {
        // Invariant: rows have pairwise distinct leading bits, no row has a
        // set bit at another row's lead, rows sorted by lead.
        let mut rows: Vec<u64> = Vec::new();
        for g in generators {
            assert_eq!(g.len(), len, "generator length mismatch");
            let mut w = g.bits();
            for &r in &rows {
                if w & (r & r.wrapping_neg()) != 0 {
                    w ^= r;
                }
            }
            if w == 0 {
                continue;
            }
            let lead = w & w.wrapping_neg();
            for r in rows.iter_mut() {
                if *r & lead != 0 {
                    *r ^= w;
                }
            }
            rows.push(w);
            rows.sort_by_key(|r| r.trailing_zeros());
        }
        BinaryCode {
            len,
            basis: rows.into_iter().map(|b| BinaryWord::new(len, b)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BinaryWord] {
        &self.basis
    }

    /// Membership by reduction against the basis.
    pub fn contains(&self, w: &BinaryWord) -> bool {
        assert_eq!(w.len(), self.len);
        let mut bits = w.bits();
        for b in &self.basis {
            let lead = b.bits() & b.bits().wrapping_neg();
            if bits & lead != 0 {
                bits ^= b.bits();
            }
        }
        bits == 0
    }

    /// All `2^dim` words, in increasing mask order of basis combinations.
    pub fn words(&self) -> Result<Vec<BinaryWord>> {
        if self.dim() > MAX_ENUMERATED_DIM {
            return Err(Error::DimensionTooLarge {
                dim: self.dim(),
                cap: MAX_ENUMERATED_DIM,
            });
        }
        let mut out = Vec::with_capacity(1 << self.dim());
        for mask in 0u64..(1 << self.dim()) {
            let mut w = 0u64;
            for (i, b) in self.basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w ^= b.bits();
                }
            }
            out.push(BinaryWord::new(self.len, w));
        }
        Ok(out)
    }

    /// Multiset of word weights: weight -> number of words.
    pub fn weight_enumerator(&self) -> Result<BTreeMap<u32, u64>> {
        let mut map = BTreeMap::new();
        for w in self.words()? {
            *map.entry(w.weight()).or_insert(0) += 1;
        }
        Ok(map)
    }

    /// Number of coordinates in which some word of the code is nonzero.
    pub fn support_size(&self) -> usize {
        let mut support = 0u64;
        for b in &self.basis {
            support |= b.bits();
        }
        support.count_ones() as usize
    }
}

/// Span the generators and enumerate all word weights in one step.
/// Fails with [`Error::DimensionTooLarge`] past the enumeration cap.
pub fn span_and_weights(
    len: usize,
    generators: &[BinaryWord],
) -> Result<(BinaryCode, BTreeMap<u32, u64>)> {
    let code = BinaryCode::span(len, generators);
    let weights = code.weight_enumerator()?;
    Ok((code, weights))
}

/// True when every word of the code has weight divisible by 4.
pub fn check_weight_divisibility(code: &BinaryCode) -> Result<bool> {
    Ok(code.words()?.iter().all(|w| w.weight() % 4 == 0))
}

/// Even node sets visible in the fibration geometry: the node set of every
/// singular double fibre of either pencil, plus the set of all nodes.
/// Duplicates are emitted once, in first-occurrence order.
pub fn even_sets_from_geometry(
    census: &SingularityCensus,
    incidence: &IncidenceTable,
) -> Vec<BinaryWord> {
    let k = census.node_count();
    if k == 0 {
        return Vec::new();
    }
    let mut words: Vec<BinaryWord> = Vec::new();
    let mut push = |w: BinaryWord| {
        if !words.contains(&w) {
            words.push(w);
        }
    };
    for col in 0..incidence.columns.len() {
        push(BinaryWord::from_indices(k, &incidence.nodes_on_column(col)));
    }
    push(BinaryWord::ones(k));
    words
}
