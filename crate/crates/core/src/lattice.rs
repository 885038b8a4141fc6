//! Integer Gram matrices, the discriminant relation between a node lattice
//! and its even-set code, and the invariant formulas for Galois covers
//! branched on nodes.

use crate::{Error, Result};

/// A small symmetric integer Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<Vec<i64>>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Self {
        let n = entries.len();
        for row in &entries {
            assert_eq!(row.len(), n, "matrix must be square");
        }
        for i in 0..n {
            for j in 0..n {
                assert_eq!(entries[i][j], entries[j][i], "matrix must be symmetric");
            }
        }
        GramMatrix { n, entries }
    }

    /// Gram matrix of two isotropic classes with intersection number `d`:
    /// `[[0, d], [d, 0]]`.  These are the half-fibre classes of the two
    /// induced pencils, which square to zero by adjunction.
    pub fn hyperbolic_pair(d: i64) -> Self {
        GramMatrix::new(vec![vec![0, d], vec![d, 0]])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// Determinant by fraction-free Gaussian elimination (Bareiss), exact.
    pub fn det(&self) -> i64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let swap = (k + 1..n).find(|&i| m[i][k] != 0);
                match swap {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        (sign * m[n - 1][n - 1]) as i64
    }

    /// Absolute value of the determinant.
    pub fn discriminant(&self) -> u64 {
        self.det().unsigned_abs()
    }
}

/// `disc <A1, A2> = d^2` for `A1^2 = A2^2 = 0`, `A1 A2 = d`.
pub fn gram_discriminant(d: i64) -> u64 {
    GramMatrix::hyperbolic_pair(d).discriminant()
}

/// Discriminant of the node lattice from the code dimension:
/// `2^k = 2^(2 dim) * disc`, so `disc = 2^(k - 2 dim)`.
/// Requires `2 dim <= k`.
pub fn discriminant_from_dim(k: u32, dim_vnum: u32) -> Result<u64> {
    if 2 * dim_vnum > k {
        return Err(Error::OutOfScope {
            detail: format!("code dimension {dim_vnum} exceeds half the length {k}"),
        });
    }
    Ok(1u64 << (k - 2 * dim_vnum))
}

/// Inverse of the discriminant relation: `dim = (k - log2 disc) / 2`.
pub fn dim_vnum_from_discriminant(k: u32, delta: u64) -> Result<u32> {
    if delta == 0 || !delta.is_power_of_two() {
        return Err(Error::NonPowerOfTwoDiscriminant { delta });
    }
    let log = delta.trailing_zeros();
    if log > k || (k - log) % 2 != 0 {
        return Err(Error::NonIntegralDimension { k, delta });
    }
    Ok((k - log) / 2)
}

/// Data of a Galois cover determined by an `r`-dimensional subcode with
/// `m` nodes appearing in it, over a base with invariants
/// `(chi_base, k2_base)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CoverData {
    pub chi_base: i64,
    pub k2_base: i64,
    pub r: u32,
    pub m: u32,
}

/// Invariants of the cover:
/// `chi = 2^r chi_base - m 2^(r-3)` and `K^2 = 2^r K^2_base`,
/// evaluated exactly; fails when `chi` is not an integer.
pub fn cover_invariants(c: &CoverData) -> Result<(i64, i64)> {
    // m * 2^(r-3) = m * 2^r / 8 must be integral.
    let scaled = (c.m as i64) << c.r;
    if scaled % 8 != 0 {
        return Err(Error::NonIntegralInvariant {
            detail: format!("m 2^(r-3) = {}/8 with r = {}, m = {}", scaled, c.r, c.m),
        });
    }
    let chi = (c.chi_base << c.r) - scaled / 8;
    let k2 = c.k2_base << c.r;
    Ok((chi, k2))
}
