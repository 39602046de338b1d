//! Unitary operator factory: roots of unity, the Chrestenson transform,
//! modulo-add permutations, and their controlled two-qudit forms, plus
//! composition, Kronecker products, and application to states.

use crate::error::{Error, Result};
use crate::json::CpxJson;
use crate::render;
use crate::state::QuditState;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Entrywise tolerance for the unitarity invariant `U^dag U = I`.
pub const UNITARY_EPS: f64 = 1e-12;

/// The r-th roots of unity `w_k = e^(i 2 pi k / r)`, in index order.
#[derive(Debug, Clone)]
pub struct RootsOfUnity {
    radix: usize,
    values: Vec<Complex64>,
}

impl RootsOfUnity {
    pub fn new(radix: usize) -> Result<Self> {
        if radix < 2 {
            return Err(Error::RadixTooSmall(radix));
        }
        // Each root from the closed form, not by repeated multiplication,
        // so no drift accumulates at larger radices. w_0 is exactly 1.
        let values = (0..radix)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / radix as f64))
            .collect();
        Ok(Self { radix, values })
    }

    pub fn radix(&self) -> usize {
        self.radix
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `w_1^exponent`, reduced modulo the radix.
    pub fn power(&self, exponent: usize) -> Complex64 {
        self.values[exponent % self.radix]
    }
}

/// Parameters of a controlled modulo-add gate: apply `+k (mod r)` to the
/// target when the control reads `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateParams {
    pub h: usize,
    pub k: usize,
}

impl GateParams {
    pub fn new(h: usize, k: usize) -> Self {
        Self { h, k }
    }
}

#[derive(Serialize, Deserialize, Clone)]
struct RawOperator {
    dim: usize,
    entries: Vec<Vec<CpxJson>>,
}

/// A square complex matrix with asserted unitarity, stored row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawOperator", into = "RawOperator")]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl TryFrom<RawOperator> for OperatorMatrix {
    type Error = Error;

    fn try_from(raw: RawOperator) -> Result<Self> {
        if raw.entries.len() != raw.dim {
            return Err(Error::DimMismatch {
                expected: raw.dim,
                found: raw.entries.len(),
            });
        }
        let mut entries = Vec::with_capacity(raw.dim * raw.dim);
        for row in raw.entries {
            if row.len() != raw.dim {
                return Err(Error::DimMismatch {
                    expected: raw.dim,
                    found: row.len(),
                });
            }
            entries.extend(row.into_iter().map(Complex64::from));
        }
        Self::new(raw.dim, entries)
    }
}

impl From<OperatorMatrix> for RawOperator {
    fn from(m: OperatorMatrix) -> Self {
        let entries = (0..m.dim)
            .map(|i| m.row(i).iter().copied().map(CpxJson::from).collect())
            .collect();
        RawOperator {
            dim: m.dim,
            entries,
        }
    }
}

impl OperatorMatrix {
    /// Validates unitarity within [`UNITARY_EPS`] and wraps the entries.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        for (idx, z) in entries.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry(idx / dim, idx % dim));
            }
        }
        let m = Self { dim, entries };
        let dev = m.max_unitarity_deviation();
        if dev > UNITARY_EPS {
            return Err(Error::NotUnitary(dev));
        }
        Ok(m)
    }

    /// Wraps entries that are unitary by construction (factory outputs,
    /// products and Kronecker products of unitaries).
    fn from_parts_unchecked(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::ONE;
        }
        Self::from_parts_unchecked(dim, entries)
    }

    /// The radix-r Chrestenson transform: row k, column j holds
    /// `w_k^j / sqrt(r)`, a Vandermonde matrix of the r-th roots of unity.
    /// For r = 2 this is the Hadamard matrix.
    pub fn chrestenson(radix: usize) -> Result<Self> {
        let roots = RootsOfUnity::new(radix)?;
        let scale = (radix as f64).sqrt().recip();
        let mut entries = Vec::with_capacity(radix * radix);
        for k in 0..radix {
            for j in 0..radix {
                entries.push(roots.power(k * j) * scale);
            }
        }
        Ok(Self::from_parts_unchecked(radix, entries))
    }

    /// The single-qudit modulo-add permutation `M_k: |x> -> |(x+k) mod r>`.
    /// `M_0` is the identity.
    pub fn mod_add(radix: usize, k: usize) -> Result<Self> {
        if radix < 2 {
            return Err(Error::RadixTooSmall(radix));
        }
        if k >= radix {
            return Err(Error::AddendOutOfRange { k, radix });
        }
        let mut entries = vec![Complex64::ZERO; radix * radix];
        for x in 0..radix {
            entries[((x + k) % radix) * radix + x] = Complex64::ONE;
        }
        Ok(Self::from_parts_unchecked(radix, entries))
    }

    /// The two-qudit controlled modulo-add gate: block diagonal with one
    /// identity block per control value except block `h`, which is `M_k`.
    /// The control is wire 0 (most significant digit), the target wire 1.
    /// At radix 2 with h = k = 1 this is the controlled-NOT.
    pub fn controlled_mod_add(radix: usize, params: GateParams) -> Result<Self> {
        if radix < 2 {
            return Err(Error::RadixTooSmall(radix));
        }
        if params.h >= radix {
            return Err(Error::ControlOutOfRange { h: params.h, radix });
        }
        if params.k >= radix {
            return Err(Error::AddendOutOfRange { k: params.k, radix });
        }
        let dim = radix * radix;
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for control in 0..radix {
            let shift = if control == params.h { params.k } else { 0 };
            for x in 0..radix {
                let row = control * radix + (x + shift) % radix;
                let col = control * radix + x;
                entries[row * dim + col] = Complex64::ONE;
            }
        }
        Ok(Self::from_parts_unchecked(dim, entries))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    /// Matrix product `self * other`: `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let n = self.dim;
        let mut entries = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(Self::from_parts_unchecked(n, entries))
    }

    /// Kronecker product; `self` acts on the more significant wire block.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i1 in 0..da {
            for j1 in 0..da {
                let a = self.entries[i1 * da + j1];
                if a == Complex64::ZERO {
                    continue;
                }
                for i2 in 0..db {
                    for j2 in 0..db {
                        entries[(i1 * db + i2) * dim + (j1 * db + j2)] =
                            a * other.entries[i2 * db + j2];
                    }
                }
            }
        }
        Self::from_parts_unchecked(dim, entries)
    }

    /// Applies the operator to a state vector.
    pub fn apply(&self, state: &QuditState) -> Result<QuditState> {
        if self.dim != state.dim() {
            return Err(Error::DimMismatch {
                expected: state.dim(),
                found: self.dim,
            });
        }
        let amps = state.amplitudes();
        let out: Vec<Complex64> = (0..self.dim)
            .map(|i| self.row(i).iter().zip(amps).map(|(m, a)| m * a).sum())
            .collect();
        Ok(QuditState::from_parts_unchecked(
            state.radix(),
            state.wires(),
            out,
        ))
    }

    /// Max entry of `|U^dag U - I|`.
    pub fn max_unitarity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut max_dev = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::ZERO;
                for k in 0..n {
                    acc += self.entries[k * n + i].conj() * self.entries[k * n + j];
                }
                if i == j {
                    acc -= Complex64::ONE;
                }
                max_dev = max_dev.max(acc.norm());
            }
        }
        max_dev
    }

    /// True when all entries agree within `eps`; false on dimension mismatch.
    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        self.dim == other.dim
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= eps)
    }

    /// True when every entry is exactly 0.0 or 1.0 with a single 1 per row
    /// and per column.
    pub fn is_permutation(&self) -> bool {
        let n = self.dim;
        let mut col_ones = vec![0usize; n];
        for i in 0..n {
            let mut row_ones = 0;
            for (j, z) in self.row(i).iter().enumerate() {
                if *z == Complex64::ONE {
                    row_ones += 1;
                    col_ones[j] += 1;
                } else if *z != Complex64::ZERO {
                    return false;
                }
            }
            if row_ones != 1 {
                return false;
            }
        }
        col_ones.iter().all(|&c| c == 1)
    }

    /// Aligned grid of symbolic entries; `radix` scales the √r denominators.
    pub fn pretty(&self, radix: usize) -> String {
        let cells: Vec<Vec<String>> = (0..self.dim)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&z| render::format_entry(z, radix, UNITARY_EPS))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.dim)
            .map(|j| {
                cells
                    .iter()
                    .map(|row| row[j].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in &cells {
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str("  ");
                }
                for _ in 0..widths[j] - cell.chars().count() {
                    out.push(' ');
                }
                out.push_str(cell);
            }
            out.push('\n');
        }
        out
    }
}
