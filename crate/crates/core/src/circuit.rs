//! Two-wire gate lists, their compiled transfer matrices, and the
//! entanglement generator constructors.
//!
//! A generator circuit is a Chrestenson gate on wire 0 followed by
//! controlled modulo-add gates with pairwise-distinct control values and
//! pairwise-distinct nonzero addends. With r-1 such gates the circuit is a
//! full entanglement generator; with fewer it is a partial one. At radix 2
//! the construction degenerates to the Bell state generator.

use crate::error::{Error, Result};
use crate::operator::{GateParams, OperatorMatrix};
use crate::state::{DigitString, QuditState};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// One gate in a two-wire circuit. Controlled gates always control on
/// wire 0 and target wire 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GateSpec {
    Chrestenson {
        wire: usize,
    },
    #[serde(rename = "cmodadd")]
    ControlledModAdd {
        h: usize,
        k: usize,
    },
}

impl GateSpec {
    fn validate(&self, radix: usize) -> Result<()> {
        match *self {
            GateSpec::Chrestenson { wire } => {
                if wire > 1 {
                    return Err(Error::WireOutOfRange { wire, wires: 2 });
                }
            }
            GateSpec::ControlledModAdd { h, k } => {
                if h >= radix {
                    return Err(Error::ControlOutOfRange { h, radix });
                }
                if k >= radix {
                    return Err(Error::AddendOutOfRange { k, radix });
                }
            }
        }
        Ok(())
    }

    /// The full two-wire matrix of this gate.
    fn matrix(&self, radix: usize) -> OperatorMatrix {
        match *self {
            GateSpec::Chrestenson { wire } => {
                let c = OperatorMatrix::chrestenson(radix).expect("radix validated");
                let i = OperatorMatrix::identity(radix);
                if wire == 0 {
                    c.tensor(&i)
                } else {
                    i.tensor(&c)
                }
            }
            GateSpec::ControlledModAdd { h, k } => {
                OperatorMatrix::controlled_mod_add(radix, GateParams::new(h, k))
                    .expect("params validated")
            }
        }
    }
}

/// An ordered gate list over two qudit wires. Gates are listed in circuit
/// order: the leftmost gate acts first.
#[derive(Debug, Clone, Serialize)]
pub struct Circuit {
    radix: usize,
    gates: Vec<GateSpec>,
}

impl Circuit {
    pub fn new(radix: usize, gates: Vec<GateSpec>) -> Result<Self> {
        if radix < 2 {
            return Err(Error::RadixTooSmall(radix));
        }
        for gate in &gates {
            gate.validate(radix)?;
        }
        Ok(Self { radix, gates })
    }

    pub fn radix(&self) -> usize {
        self.radix
    }

    pub fn wires(&self) -> usize {
        2
    }

    pub fn gates(&self) -> &[GateSpec] {
        &self.gates
    }

    /// Parses the on-disk circuit format. Gate errors name the offending
    /// gate index.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::CircuitJson(e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::CircuitJson("expected a JSON object".into()))?;
        let radix = obj
            .get("radix")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::CircuitJson("missing integer field \"radix\"".into()))?
            as usize;
        let raw_gates = obj
            .get("gates")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::CircuitJson("missing array field \"gates\"".into()))?;
        let mut gates = Vec::with_capacity(raw_gates.len());
        for (index, raw) in raw_gates.iter().enumerate() {
            let gate: GateSpec =
                serde_json::from_value(raw.clone()).map_err(|e| Error::GateJson {
                    index,
                    message: e.to_string(),
                })?;
            gate.validate(radix).map_err(|e| Error::GateJson {
                index,
                message: e.to_string(),
            })?;
            gates.push(gate);
        }
        Self::new(radix, gates)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit serializes")
    }

    /// The overall unitary: the right-to-left product of the gate matrices.
    /// An empty circuit compiles to the identity.
    pub fn transfer_matrix(&self) -> OperatorMatrix {
        let dim = self.radix * self.radix;
        let mut acc = OperatorMatrix::identity(dim);
        for gate in &self.gates {
            acc = gate
                .matrix(self.radix)
                .compose(&acc)
                .expect("uniform circuit dimension");
        }
        acc
    }

    pub fn run(&self, input: &QuditState) -> Result<QuditState> {
        if input.radix() != self.radix {
            return Err(Error::RadixMismatch(self.radix, input.radix()));
        }
        if input.wires() != 2 {
            return Err(Error::WrongWireCount {
                expected: 2,
                found: input.wires(),
            });
        }
        self.transfer_matrix().apply(input)
    }

    /// Evolves every basis input, in digit-lexicographic order.
    pub fn table_outputs(&self) -> Vec<(DigitString, QuditState)> {
        let transfer = self.transfer_matrix();
        (0..self.radix * self.radix)
            .map(|index| {
                let label =
                    DigitString::from_index(self.radix, 2, index).expect("index below dimension");
                let input = QuditState::basis(&label).expect("valid basis label");
                let output = transfer.apply(&input).expect("matching dimension");
                (label, output)
            })
            .collect()
    }
}

/// The controlled modulo-add schedule of an entanglement generator:
/// pairwise-distinct control values and pairwise-distinct nonzero addends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSpec {
    pairs: Vec<GateParams>,
}

impl GeneratorSpec {
    pub fn new(pairs: Vec<GateParams>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyGeneratorSpec);
        }
        let mut seen_h = HashSet::new();
        let mut seen_k = HashSet::new();
        for p in &pairs {
            if p.k == 0 {
                return Err(Error::ZeroAddend);
            }
            if !seen_h.insert(p.h) {
                return Err(Error::DuplicateControl(p.h));
            }
            if !seen_k.insert(p.k) {
                return Err(Error::DuplicateAddend(p.k));
            }
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[GateParams] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Builds the generator circuit for `spec`: a Chrestenson gate on wire 0
/// followed by one controlled modulo-add per pair, in the given order.
/// A spec of length r-1 yields a full generator, shorter specs partial ones.
pub fn entanglement_generator(radix: usize, spec: &GeneratorSpec) -> Result<Circuit> {
    if radix < 2 {
        return Err(Error::RadixTooSmall(radix));
    }
    if spec.len() > radix - 1 {
        return Err(Error::GeneratorTooLong {
            len: spec.len(),
            radix,
            max: radix - 1,
        });
    }
    let mut gates = vec![GateSpec::Chrestenson { wire: 0 }];
    gates.extend(
        spec.pairs()
            .iter()
            .map(|p| GateSpec::ControlledModAdd { h: p.h, k: p.k }),
    );
    Circuit::new(radix, gates)
}
