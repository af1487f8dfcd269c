//! Circuits over `{h, x, z, cx}`, state-vector simulation, seeded
//! measurement and per-slice geometry traces.

mod gates;
mod parse;

use std::collections::BTreeMap;
use std::num::NonZeroUsize;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub use gates::{ControlledX, Gate, GateOp, GateRegistry, SingleQubit};
pub use parse::{parse_circuit, parse_circuit_with};

use crate::error::{Error, Result};
use crate::geometry::{sample_mesh, GridSpec, SurfaceMesh};
use crate::mpoly::{state_to_poly, MultilinearPoly};
use crate::qstate::{check_qubits, QubitState};

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    nqubits: usize,
    gates: Vec<Gate>,
    /// Number of gates applied before each `slice` marker.
    slices: Vec<usize>,
}

impl Circuit {
    pub fn new(nqubits: usize) -> Result<Self> {
        check_qubits(nqubits)?;
        Ok(Self {
            nqubits,
            gates: Vec::new(),
            slices: Vec::new(),
        })
    }

    pub fn nqubits(&self) -> usize {
        self.nqubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn slice_marks(&self) -> &[usize] {
        &self.slices
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn mark_slice(&mut self) {
        self.slices.push(self.gates.len());
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub final_state: QubitState,
    /// State at each `slice` marker, then the final state.
    pub slices: Vec<QubitState>,
}

fn check_arity(c: &Circuit, s: &QubitState) -> Result<()> {
    if s.n() != c.nqubits {
        return Err(Error::WrongArity {
            expected: c.nqubits,
            actual: s.n(),
        });
    }
    Ok(())
}

/// Runs the circuit and returns the state after every prefix of
/// `0..=gates.len()` gates.
fn prefix_states(c: &Circuit, initial: &QubitState) -> Vec<Vec<crate::numerics::Complex>> {
    let mut amps = initial.amplitudes().to_vec();
    let mut out = Vec::with_capacity(c.gates.len() + 1);
    out.push(amps.clone());
    for gate in &c.gates {
        gate.apply(&mut amps, c.nqubits);
        out.push(amps.clone());
    }
    out
}

pub fn run_circuit(c: &Circuit, initial: &QubitState) -> Result<RunResult> {
    check_arity(c, initial)?;
    let mut amps = initial.amplitudes().to_vec();
    let mut slices = Vec::with_capacity(c.slices.len() + 1);
    let mut marks = c.slices.iter().peekable();
    for (applied, gate) in std::iter::once(None)
        .chain(c.gates.iter().map(Some))
        .enumerate()
    {
        if let Some(g) = gate {
            g.apply(&mut amps, c.nqubits);
        }
        while marks.next_if(|m| **m == applied).is_some() {
            slices.push(QubitState::from_raw(c.nqubits, amps.clone()));
        }
    }
    let final_state = QubitState::from_raw(c.nqubits, amps);
    slices.push(final_state.clone());
    Ok(RunResult {
        final_state,
        slices,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub shots: usize,
    /// Bitstring (qubit 0 leftmost) to number of occurrences.
    pub counts: BTreeMap<String, usize>,
    pub seed: u64,
}

/// Samples `shots` computational-basis outcomes with probabilities
/// `|a_j|²`.
///
/// Uses `ChaCha20Rng::seed_from_u64(seed)`; each shot draws one
/// `Rng::gen::<f64>()` uniform `u` and picks the first index whose
/// cumulative probability exceeds `u`.
pub fn measure(s: &QubitState, shots: NonZeroUsize, seed: u64) -> MeasurementRecord {
    let amps = s.amplitudes();
    let mut cumulative = Vec::with_capacity(amps.len());
    let mut acc = 0.0;
    for z in amps {
        acc += z.norm_sqr();
        cumulative.push(acc);
    }
    let last_live = amps.iter().rposition(|z| z.norm_sqr() > 0.0).unwrap_or(0);

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut hits = vec![0usize; amps.len()];
    for _ in 0..shots.get() {
        let u: f64 = rng.gen();
        let j = cumulative.partition_point(|c| *c <= u).min(last_live);
        hits[j] += 1;
    }
    let width = s.n();
    let counts = hits
        .into_iter()
        .enumerate()
        .filter(|(_, h)| *h > 0)
        .map(|(j, h)| (format!("{j:0width$b}"), h))
        .collect();
    MeasurementRecord {
        shots: shots.get(),
        counts,
        seed,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceSlice {
    pub label: String,
    /// Gates applied before this slice.
    pub position: usize,
    pub poly: MultilinearPoly,
    /// Present for two-qubit slices whose polynomial is real.
    pub mesh: Option<SurfaceMesh>,
}

pub fn trace_geometry(c: &Circuit) -> Result<Vec<TraceSlice>> {
    trace_geometry_on(c, &GridSpec::default())
}

/// Runs from `|0…0⟩` and emits the initial state, every marked slice and
/// the final state as polynomials. Consecutive slices at the same gate
/// position are emitted once.
pub fn trace_geometry_on(c: &Circuit, grid: &GridSpec) -> Result<Vec<TraceSlice>> {
    let states = prefix_states(c, &QubitState::zero(c.nqubits)?);
    let mut positions = vec![0];
    positions.extend(&c.slices);
    positions.push(c.gates.len());
    positions.dedup();

    positions
        .into_iter()
        .enumerate()
        .map(|(k, pos)| {
            let poly = state_to_poly(&QubitState::from_raw(c.nqubits, states[pos].clone()));
            let mesh = if poly.nvars() == 2 && poly.max_imag() <= crate::geometry::IMAG_TOL {
                Some(sample_mesh(&poly, grid)?)
            } else {
                None
            };
            Ok(TraceSlice {
                label: format!("slice_{k}"),
                position: pos,
                poly,
                mesh,
            })
        })
        .collect()
}
