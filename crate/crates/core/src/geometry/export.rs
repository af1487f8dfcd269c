use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use super::SurfaceMesh;
use crate::error::{Error, Result};

/// Formats `v` like C's `printf("%.17g", v)`.
///
/// Negative zero prints as `0`.
pub fn format_g17(v: f64) -> String {
    let v = v + 0.0;
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{v:.*}", (16 - exp) as usize)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// A mesh serialization, selected by name.
pub trait MeshFormat: Send + Sync {
    fn name(&self) -> &'static str;
    fn extension(&self) -> &'static str;
    fn write(&self, mesh: &SurfaceMesh) -> Vec<u8>;
}

/// Wavefront OBJ: `v x y z` per grid point, then 1-based `f a b c`
/// triangles.
#[derive(Debug, Clone, Copy, Default)]
pub struct Obj;

impl MeshFormat for Obj {
    fn name(&self) -> &'static str {
        "obj"
    }

    fn extension(&self) -> &'static str {
        "obj"
    }

    fn write(&self, mesh: &SurfaceMesh) -> Vec<u8> {
        let mut out = String::new();
        for (x, y, z) in mesh.vertices() {
            let _ = writeln!(
                out,
                "v {} {} {}",
                format_g17(x),
                format_g17(y),
                format_g17(z)
            );
        }
        for [a, b, c] in mesh.triangles() {
            let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
        }
        out.into_bytes()
    }
}

/// `x,y,z` header, one row per grid point.
#[derive(Debug, Clone, Copy, Default)]
pub struct Csv;

impl MeshFormat for Csv {
    fn name(&self) -> &'static str {
        "csv"
    }

    fn extension(&self) -> &'static str {
        "csv"
    }

    fn write(&self, mesh: &SurfaceMesh) -> Vec<u8> {
        let mut out = String::from("x,y,z\n");
        for (x, y, z) in mesh.vertices() {
            let _ = writeln!(out, "{},{},{}", format_g17(x), format_g17(y), format_g17(z));
        }
        out.into_bytes()
    }
}

#[derive(Clone, Default)]
pub struct MeshFormatRegistry {
    formats: BTreeMap<&'static str, Arc<dyn MeshFormat>>,
}

impl MeshFormatRegistry {
    pub fn standard() -> Self {
        let mut reg = Self::default();
        reg.register(Arc::new(Obj));
        reg.register(Arc::new(Csv));
        reg
    }

    pub fn register(&mut self, format: Arc<dyn MeshFormat>) {
        self.formats.insert(format.name(), format);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn MeshFormat>> {
        self.formats
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Unknown {
                kind: "mesh format",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.formats.keys().copied()
    }
}

/// Serializes with one of the standard formats (`obj`, `csv`).
pub fn export_mesh(mesh: &SurfaceMesh, format: &str) -> Result<Vec<u8>> {
    Ok(MeshFormatRegistry::standard().get(format)?.write(mesh))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_mesh, GridSpec};
    use crate::mpoly::basis_function;

    #[test]
    fn g17_matches_printf() {
        // reference strings from C printf("%.17g")
        let cases = [
            (4.0, "4"),
            (-2.0, "-2"),
            (0.5, "0.5"),
            (0.1, "0.10000000000000001"),
            (std::f64::consts::FRAC_1_SQRT_2, "0.70710678118654757"),
            (-1.8333333333333333, "-1.8333333333333333"),
            (1e-5, "1.0000000000000001e-05"),
            (1e17, "1e+17"),
            (123456789012345678.0, "1.2345678901234568e+17"),
            (1e16, "10000000000000000"),
            (0.0001, "0.0001"),
            (-0.0, "0"),
        ];
        for (v, want) in cases {
            assert_eq!(format_g17(v), want, "{v:e}");
        }
    }

    #[test]
    fn g17_round_trips() {
        for v in [
            std::f64::consts::PI,
            -1.0 / 3.0,
            2.0f64.sqrt() * 1e-7,
            6.02214076e23,
        ] {
            assert_eq!(format_g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn constant_two_by_two() {
        let m = sample_mesh(
            &basis_function(1).unwrap(),
            &GridSpec::new(-2.0, 2.0, 2).unwrap(),
        )
        .unwrap();
        let obj = String::from_utf8(export_mesh(&m, "obj").unwrap()).unwrap();
        assert_eq!(
            obj,
            "v -2 -2 1\nv 2 -2 1\nv -2 2 1\nv 2 2 1\nf 1 2 4\nf 1 4 3\n"
        );
        let csv = String::from_utf8(export_mesh(&m, "csv").unwrap()).unwrap();
        assert_eq!(csv, "x,y,z\n-2,-2,1\n2,-2,1\n-2,2,1\n2,2,1\n");
    }

    #[test]
    fn default_grid_counts_and_determinism() {
        let m = sample_mesh(&basis_function(4).unwrap(), &GridSpec::default()).unwrap();
        let obj = export_mesh(&m, "obj").unwrap();
        let text = std::str::from_utf8(&obj).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 625);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 1152);
        assert_eq!(obj, export_mesh(&m, "obj").unwrap());
        assert!(matches!(export_mesh(&m, "ply"), Err(Error::Unknown { .. })));
    }
}
