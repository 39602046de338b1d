//! Radix-generic state vectors: basis construction, tensor products,
//! probabilities, and measurement conditioning.
//!
//! A state over `n` wires of radix `r` is a normalized complex vector of
//! length `r^n`. Wire 0 is the most significant digit of a basis label, so
//! `|31>` at radix 4 is the one-hot vector at linear index `3*4 + 1 = 13`.

use crate::error::{Error, Result};
use crate::json::{complex_vec, CpxJson};
use crate::render;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Comparison tolerance. Defaults to `1e-9` for state comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

impl Tolerance {
    /// Default tolerance for state comparisons.
    pub const STATE: Self = Self { eps: 1e-9 };

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 {
            Ok(Self { eps })
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::STATE
    }
}

/// A basis-state label: one digit per wire, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    radix: usize,
    digits: Vec<usize>,
}

impl DigitString {
    pub fn new(radix: usize, digits: Vec<usize>) -> Result<Self> {
        if radix < 2 {
            return Err(Error::RadixTooSmall(radix));
        }
        if digits.is_empty() {
            return Err(Error::NoWires);
        }
        for &d in &digits {
            if d >= radix {
                return Err(Error::DigitOutOfRange { digit: d, radix });
            }
        }
        Ok(Self { radix, digits })
    }

    /// Parses a digit string such as `"31"`, one base-36 character per wire.
    pub fn parse(radix: usize, s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| render::digit_value(c).ok_or(Error::InvalidDigitChar(c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(radix, digits)
    }

    /// Label of the basis state at `index` in a `wires`-wire system.
    pub fn from_index(radix: usize, wires: usize, index: usize) -> Result<Self> {
        if radix < 2 {
            return Err(Error::RadixTooSmall(radix));
        }
        if wires == 0 {
            return Err(Error::NoWires);
        }
        let mut digits = vec![0; wires];
        let mut rem = index;
        for slot in digits.iter_mut().rev() {
            *slot = rem % radix;
            rem /= radix;
        }
        if rem != 0 {
            return Err(Error::DimMismatch {
                expected: radix.pow(wires as u32),
                found: index,
            });
        }
        Ok(Self { radix, digits })
    }

    pub fn radix(&self) -> usize {
        self.radix
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn wires(&self) -> usize {
        self.digits.len()
    }

    /// Linear index with wire 0 most significant: `sum d_j * r^(n-1-j)`.
    pub fn linear_index(&self) -> usize {
        self.digits.iter().fold(0, |acc, &d| acc * self.radix + d)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{}", render::digit_char(d))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize, Clone)]
struct RawState {
    radix: usize,
    wires: usize,
    amplitudes: Vec<CpxJson>,
}

/// A pure state of `wires` radix-`radix` qudits.
///
/// Invariants: the amplitude vector has length `radix^wires`, every entry is
/// finite, and the squared magnitudes sum to 1 within tolerance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "RawState", into = "RawState")]
pub struct QuditState {
    radix: usize,
    wires: usize,
    amplitudes: Vec<Complex64>,
}

impl TryFrom<RawState> for QuditState {
    type Error = Error;

    fn try_from(raw: RawState) -> Result<Self> {
        let amps = raw.amplitudes.into_iter().map(Complex64::from).collect();
        QuditState::new(raw.radix, raw.wires, amps, Tolerance::default())
    }
}

impl From<QuditState> for RawState {
    fn from(s: QuditState) -> Self {
        RawState {
            radix: s.radix,
            wires: s.wires,
            amplitudes: complex_vec(&s.amplitudes),
        }
    }
}

/// `radix^wires`, rejecting sizes that do not fit an allocation.
fn dimension(radix: usize, wires: usize) -> Result<usize> {
    radix
        .checked_pow(wires as u32)
        .ok_or(Error::DimensionOverflow { radix, wires })
}

impl QuditState {
    /// Validates and wraps an amplitude vector.
    pub fn new(
        radix: usize,
        wires: usize,
        amplitudes: Vec<Complex64>,
        tol: Tolerance,
    ) -> Result<Self> {
        if radix < 2 {
            return Err(Error::RadixTooSmall(radix));
        }
        if wires == 0 {
            return Err(Error::NoWires);
        }
        let dim = dimension(radix, wires)?;
        if amplitudes.len() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        for (i, a) in amplitudes.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::NonFiniteAmplitude(i));
            }
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > tol.eps() {
            return Err(Error::NotNormalized((norm_sq - 1.0).abs()));
        }
        Ok(Self {
            radix,
            wires,
            amplitudes,
        })
    }

    pub(crate) fn from_parts_unchecked(
        radix: usize,
        wires: usize,
        amplitudes: Vec<Complex64>,
    ) -> Self {
        debug_assert_eq!(amplitudes.len(), radix.pow(wires as u32));
        debug_assert!(
            (amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs() <= 1e-9,
            "internal construction produced an unnormalized state"
        );
        Self {
            radix,
            wires,
            amplitudes,
        }
    }

    /// The one-hot computational basis state labeled by `digits`.
    pub fn basis(digits: &DigitString) -> Result<Self> {
        let dim = dimension(digits.radix(), digits.wires())?;
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[digits.linear_index()] = Complex64::ONE;
        Ok(Self {
            radix: digits.radix(),
            wires: digits.wires(),
            amplitudes,
        })
    }

    /// Convenience form of [`QuditState::basis`] taking bare digits.
    pub fn basis_digits(radix: usize, digits: &[usize]) -> Result<Self> {
        Self::basis(&DigitString::new(radix, digits.to_vec())?)
    }

    pub fn radix(&self) -> usize {
        self.radix
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    /// Kronecker product; `self` supplies the more significant wires.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.radix != other.radix {
            return Err(Error::RadixMismatch(self.radix, other.radix));
        }
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(Self::from_parts_unchecked(
            self.radix,
            self.wires + other.wires,
            amplitudes,
        ))
    }

    /// Measurement probabilities for each basis outcome.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Projects a two-wire state onto `wire` reading `outcome` and returns
    /// the renormalized residual state of the other wire.
    ///
    /// Outcomes with probability below `tol` are an error: a branch that
    /// cannot occur has no post-measurement state.
    pub fn conditional(&self, wire: usize, outcome: usize, tol: Tolerance) -> Result<Self> {
        if self.wires != 2 {
            return Err(Error::WrongWireCount {
                expected: 2,
                found: self.wires,
            });
        }
        if wire > 1 {
            return Err(Error::WireOutOfRange {
                wire,
                wires: self.wires,
            });
        }
        if outcome >= self.radix {
            return Err(Error::DigitOutOfRange {
                digit: outcome,
                radix: self.radix,
            });
        }
        let r = self.radix;
        let residual: Vec<Complex64> = (0..r)
            .map(|other| {
                let idx = if wire == 0 {
                    outcome * r + other
                } else {
                    other * r + outcome
                };
                self.amplitudes[idx]
            })
            .collect();
        let prob: f64 = residual.iter().map(|a| a.norm_sqr()).sum();
        if prob < tol.eps() {
            return Err(Error::ZeroProbability { wire, outcome });
        }
        let scale = prob.sqrt().recip();
        let amplitudes = residual.into_iter().map(|a| a * scale).collect();
        Ok(Self::from_parts_unchecked(r, 1, amplitudes))
    }

    /// Entrywise comparison, exact in global phase: `|00> + |11>` and
    /// `|00> - |11>` differ.
    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> Result<bool> {
        if self.radix != other.radix {
            return Err(Error::RadixMismatch(self.radix, other.radix));
        }
        if self.wires != other.wires {
            return Err(Error::WrongWireCount {
                expected: self.wires,
                found: other.wires,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .all(|(a, b)| (a - b).norm() <= tol.eps()))
    }
}

impl fmt::Display for QuditState {
    /// Pretty ket form, e.g. `1/2|00> + 1/2|10> + 1/2|20> + 1/2|31>`.
    /// Terms with magnitude at most the state tolerance are dropped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps = Tolerance::STATE.eps();
        let terms: Vec<String> = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > eps)
            .map(|(i, a)| {
                let label = DigitString::from_index(self.radix, self.wires, i)
                    .expect("index below dimension");
                format!("{}|{}>", render::format_coefficient(*a, eps), label)
            })
            .collect();
        write!(f, "{}", render::join_terms(&terms))
    }
}
