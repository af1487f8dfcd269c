use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{re, Complex, Mat2};

/// A gate kind the simulator knows how to apply.
///
/// Qubit `q` of an `n`-qubit register is bit `n - 1 - q` of the amplitude
/// index, so qubit 0 is the leftmost ket symbol.
pub trait GateOp: fmt::Debug + Send + Sync {
    /// Mnemonic used in circuit files.
    fn name(&self) -> &'static str;
    /// Number of qubit operands.
    fn arity(&self) -> usize;
    fn apply(&self, amps: &mut [Complex], nqubits: usize, targets: &[usize]);
}

#[inline]
fn bit(nqubits: usize, q: usize) -> usize {
    1 << (nqubits - 1 - q)
}

/// Applies a 2×2 matrix to one qubit.
fn apply_single(m: &Mat2, amps: &mut [Complex], nqubits: usize, q: usize) {
    let mask = bit(nqubits, q);
    for idx in (0..amps.len()).filter(|i| i & mask == 0) {
        let [a, b] = m.apply([amps[idx], amps[idx | mask]]);
        amps[idx] = a;
        amps[idx | mask] = b;
    }
}

/// Fixed one-qubit gate given by its matrix.
#[derive(Debug, Clone)]
pub struct SingleQubit {
    name: &'static str,
    matrix: Mat2,
}

impl SingleQubit {
    pub fn new(name: &'static str, matrix: Mat2) -> Self {
        Self { name, matrix }
    }

    pub fn hadamard() -> Self {
        let h = FRAC_1_SQRT_2;
        Self::new("h", Mat2::raw([[re(h), re(h)], [re(h), re(-h)]]))
    }

    pub fn pauli_x() -> Self {
        Self::new("x", Mat2::raw([[re(0.0), re(1.0)], [re(1.0), re(0.0)]]))
    }

    pub fn pauli_z() -> Self {
        Self::new("z", Mat2::raw([[re(1.0), re(0.0)], [re(0.0), re(-1.0)]]))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.matrix
    }
}

impl GateOp for SingleQubit {
    fn name(&self) -> &'static str {
        self.name
    }

    fn arity(&self) -> usize {
        1
    }

    fn apply(&self, amps: &mut [Complex], nqubits: usize, targets: &[usize]) {
        apply_single(&self.matrix, amps, nqubits, targets[0]);
    }
}

/// Controlled NOT: operands are `control, target`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ControlledX;

impl GateOp for ControlledX {
    fn name(&self) -> &'static str {
        "cx"
    }

    fn arity(&self) -> usize {
        2
    }

    fn apply(&self, amps: &mut [Complex], nqubits: usize, targets: &[usize]) {
        let (cm, tm) = (bit(nqubits, targets[0]), bit(nqubits, targets[1]));
        for idx in 0..amps.len() {
            if idx & cm != 0 && idx & tm == 0 {
                amps.swap(idx, idx | tm);
            }
        }
    }
}

/// Gate kinds by mnemonic.
#[derive(Debug, Clone, Default)]
pub struct GateRegistry {
    ops: BTreeMap<&'static str, Arc<dyn GateOp>>,
}

impl GateRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `h`, `x`, `z` and `cx`.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register(Arc::new(SingleQubit::hadamard()));
        reg.register(Arc::new(SingleQubit::pauli_x()));
        reg.register(Arc::new(SingleQubit::pauli_z()));
        reg.register(Arc::new(ControlledX));
        reg
    }

    /// Replaces any gate already registered under the same name.
    pub fn register(&mut self, op: Arc<dyn GateOp>) {
        self.ops.insert(op.name(), op);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn GateOp>> {
        self.ops.get(name).cloned()
    }

    pub fn lookup(&self, name: &str) -> Result<Arc<dyn GateOp>> {
        self.get(name).ok_or_else(|| Error::Unknown {
            kind: "gate",
            name: name.to_string(),
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.ops.keys().copied()
    }
}

/// A gate kind bound to its operands.
#[derive(Debug, Clone)]
pub struct Gate {
    op: Arc<dyn GateOp>,
    targets: Vec<usize>,
}

impl Gate {
    pub fn new(op: Arc<dyn GateOp>, targets: Vec<usize>, nqubits: usize) -> Result<Self> {
        if targets.len() != op.arity() {
            return Err(Error::WrongArity {
                expected: op.arity(),
                actual: targets.len(),
            });
        }
        for (i, q) in targets.iter().enumerate() {
            if *q >= nqubits {
                return Err(Error::BadIndex(*q));
            }
            if targets[..i].contains(q) {
                return Err(Error::BadVarMap(format!("qubit {q} used twice")));
            }
        }
        Ok(Self { op, targets })
    }

    pub fn name(&self) -> &'static str {
        self.op.name()
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn apply(&self, amps: &mut [Complex], nqubits: usize) {
        self.op.apply(amps, nqubits, &self.targets);
    }
}

impl PartialEq for Gate {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name() && self.targets == other.targets
    }
}
