//! Line-oriented circuit description.
//!
//! ```text
//! # Bell pair
//! qubits 2
//! h 0
//! slice
//! cx 0 1
//! ```
//!
//! The first non-comment line must be `qubits N`. Each following line is a
//! gate mnemonic with 0-based qubit indices, or `slice`. `#` starts a
//! comment; blank lines are ignored.

use super::gates::{Gate, GateRegistry};
use super::Circuit;
use crate::error::{Error, Result};
use crate::qstate::MAX_QUBITS;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn index(tok: &str, line: usize) -> Result<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(
            line,
            format!("expected a decimal index, found '{tok}'"),
        ));
    }
    tok.parse()
        .map_err(|_| err(line, format!("index '{tok}' out of range")))
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    parse_circuit_with(text, &GateRegistry::standard())
}

pub fn parse_circuit_with(text: &str, gates: &GateRegistry) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 0;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some((&head, args)) = toks.split_first() else {
            continue;
        };

        let Some(c) = circuit.as_mut() else {
            if head != "qubits" {
                return Err(err(
                    line,
                    format!("expected 'qubits N' header, found '{head}'"),
                ));
            }
            let [n] = args else {
                return Err(err(line, "'qubits' takes exactly one count"));
            };
            let n = index(n, line)?;
            if !(1..=MAX_QUBITS).contains(&n) {
                return Err(err(
                    line,
                    format!("qubit count {n} outside 1..={MAX_QUBITS}"),
                ));
            }
            circuit = Some(Circuit::new(n)?);
            continue;
        };

        match head {
            "qubits" => return Err(err(line, "duplicate 'qubits' header")),
            "slice" => {
                if !args.is_empty() {
                    return Err(err(line, "'slice' takes no operands"));
                }
                c.mark_slice();
            }
            name => {
                let op = gates
                    .get(name)
                    .ok_or_else(|| err(line, format!("unknown gate '{name}'")))?;
                if args.len() != op.arity() {
                    return Err(err(
                        line,
                        format!(
                            "'{name}' takes {} operand(s), found {}",
                            op.arity(),
                            args.len()
                        ),
                    ));
                }
                let targets = args
                    .iter()
                    .map(|t| index(t, line))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(q) = targets.iter().find(|q| **q >= c.nqubits()) {
                    return Err(err(
                        line,
                        format!("qubit {q} out of range for {} qubits", c.nqubits()),
                    ));
                }
                if targets.len() == 2 && targets[0] == targets[1] {
                    return Err(err(line, "control equals target"));
                }
                let gate =
                    Gate::new(op, targets, c.nqubits()).map_err(|e| err(line, e.to_string()))?;
                c.push(gate);
            }
        }
    }
    circuit.ok_or_else(|| err(last_line.max(1), "missing 'qubits N' header"))
}
