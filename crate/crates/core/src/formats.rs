//! JSON file formats for states, polynomials and resource bases.
//!
//! Complex numbers are two-element `[re, im]` arrays, in index order:
//!
//! ```json
//! {"n": 2, "amplitudes": [[0.7071067811865476, 0], [0, 0], [0, 0], [0.7071067811865476, 0]]}
//! {"nvars": 2, "coeffs": [[1, 0], [0, 0], [0, 0], [0, 0]]}
//! {"T": [[[1, 0], [0, 0], [0, 0], [0, 0]], ...]}
//! ```
//!
//! Syntax errors and wrong-length arrays are `Error::Format`; a
//! well-formed file can still fail domain checks (normalization,
//! unitarity).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mpoly::MultilinearPoly;
use crate::numerics::{c, Complex, Mat4};
use crate::qstate::{QubitState, MAX_QUBITS};
use crate::teleport::{make_basis, EntangledBasis};

type Pair = [f64; 2];

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    n: usize,
    amplitudes: Vec<Pair>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyFile {
    nvars: usize,
    coeffs: Vec<Pair>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisFile {
    #[serde(rename = "T")]
    t: [[Pair; 4]; 4],
}

fn to_pairs(v: &[Complex]) -> Vec<Pair> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn from_pairs(v: &[Pair]) -> Vec<Complex> {
    v.iter().map(|[r, i]| c(*r, *i)).collect()
}

fn check_len(count: usize, len: usize, what: &str) -> Result<()> {
    if !(1..=MAX_QUBITS).contains(&count) {
        return Err(Error::Format(format!(
            "{what} count {count} outside 1..={MAX_QUBITS}"
        )));
    }
    if len != 1 << count {
        return Err(Error::Format(format!(
            "expected {} entries, found {len}",
            1usize << count
        )));
    }
    Ok(())
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn render<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn parse_state(text: &str) -> Result<QubitState> {
    let f: StateFile = parse(text)?;
    check_len(f.n, f.amplitudes.len(), "qubit")?;
    QubitState::new(f.n, from_pairs(&f.amplitudes))
}

pub fn write_state(s: &QubitState) -> String {
    render(&StateFile {
        n: s.n(),
        amplitudes: to_pairs(s.amplitudes()),
    })
}

pub fn parse_poly(text: &str) -> Result<MultilinearPoly> {
    let f: PolyFile = parse(text)?;
    check_len(f.nvars, f.coeffs.len(), "variable")?;
    MultilinearPoly::new(f.nvars, from_pairs(&f.coeffs))
}

pub fn write_poly(p: &MultilinearPoly) -> String {
    render(&PolyFile {
        nvars: p.nvars(),
        coeffs: to_pairs(p.coeffs()),
    })
}

pub fn parse_basis(text: &str) -> Result<EntangledBasis> {
    let f: BasisFile = parse(text)?;
    make_basis(Mat4::new(f.t.map(|row| row.map(|[r, i]| c(r, i))))?)
}

pub fn write_basis(b: &EntangledBasis) -> String {
    render(&BasisFile {
        t: b.matrix().entries().map(|row| row.map(|z| [z.re, z.im])),
    })
}
