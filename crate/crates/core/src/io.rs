//! Plain-text writers for meshes, polylines and shooting candidates.
//!
//! Every float is written as `{:.16e}`: 17 significant digits, enough to
//! round-trip any `f64`, and independent of locale. JSON output goes through
//! `serde_json`, which prints the shortest round-trip representation.

use std::io::{self, Write};

use serde::Serialize;

use crate::distance::ShootingSolution;
use crate::geodesic::GeodesicSample;
use crate::mesh::TriMesh;

pub fn fmt_f64(v: f64) -> String {
    // no negative zeros in output
    format!("{:.16e}", v + 0.0)
}

/// `v x y z` lines, then `f i j k` lines with 1-based indices.
pub fn write_obj<W: Write>(w: &mut W, mesh: &TriMesh) -> io::Result<()> {
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]))?;
    }
    for f in &mesh.faces {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

/// ASCII PLY with every scalar field as an extra `double` vertex property.
pub fn write_ply<W: Write>(w: &mut W, mesh: &TriMesh) -> io::Result<()> {
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "element vertex {}", mesh.vertices.len())?;
    for axis in ["x", "y", "z"] {
        writeln!(w, "property double {axis}")?;
    }
    for s in &mesh.scalars {
        writeln!(w, "property double {}", s.name)?;
    }
    writeln!(w, "element face {}", mesh.faces.len())?;
    writeln!(w, "property list uchar uint vertex_indices")?;
    writeln!(w, "end_header")?;
    for (i, v) in mesh.vertices.iter().enumerate() {
        let mut line = format!("{} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]));
        for s in &mesh.scalars {
            line.push(' ');
            line.push_str(&fmt_f64(s.values[i]));
        }
        writeln!(w, "{line}")?;
    }
    for f in &mesh.faces {
        writeln!(w, "3 {} {} {}", f[0], f[1], f[2])?;
    }
    Ok(())
}

pub const POLYLINE_HEADER: &str = "s,x,y,z,alpha,beta,gamma";

/// One row per sample; `alpha, beta, gamma` are the velocity's frame
/// coefficients.
pub fn write_polyline_csv<W: Write>(w: &mut W, samples: &[GeodesicSample]) -> io::Result<()> {
    writeln!(w, "{POLYLINE_HEADER}")?;
    for p in samples {
        let v = p.velocity_frame;
        let row = [p.s, p.point.x, p.point.y, p.point.z, v.a, v.b, v.c].map(fmt_f64);
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Vertices followed by a single `l` line through all of them.
pub fn write_polyline_obj<W: Write>(w: &mut W, samples: &[GeodesicSample]) -> io::Result<()> {
    for p in samples {
        writeln!(w, "v {} {} {}", fmt_f64(p.point.x), fmt_f64(p.point.y), fmt_f64(p.point.z))?;
    }
    if samples.len() >= 2 {
        let idx: Vec<String> = (1..=samples.len()).map(|i| i.to_string()).collect();
        writeln!(w, "l {}", idx.join(" "))?;
    }
    Ok(())
}

/// Polyline as a PLY vertex list with `s, alpha, beta, gamma` properties and
/// an edge element joining consecutive samples.
pub fn write_polyline_ply<W: Write>(w: &mut W, samples: &[GeodesicSample]) -> io::Result<()> {
    let edges = samples.len().saturating_sub(1);
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "element vertex {}", samples.len())?;
    for name in ["x", "y", "z", "s", "alpha", "beta", "gamma"] {
        writeln!(w, "property double {name}")?;
    }
    writeln!(w, "element edge {edges}")?;
    writeln!(w, "property uint vertex1")?;
    writeln!(w, "property uint vertex2")?;
    writeln!(w, "end_header")?;
    for p in samples {
        let v = p.velocity_frame;
        let row = [p.point.x, p.point.y, p.point.z, p.s, v.a, v.b, v.c].map(fmt_f64);
        writeln!(w, "{}", row.join(" "))?;
    }
    for i in 0..edges {
        writeln!(w, "{} {}", i, i + 1)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SampleRecord {
    s: f64,
    x: f64,
    y: f64,
    z: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
}

pub fn write_polyline_jsonl<W: Write>(w: &mut W, samples: &[GeodesicSample]) -> io::Result<()> {
    for p in samples {
        let rec = SampleRecord {
            s: p.s,
            x: p.point.x,
            y: p.point.y,
            z: p.point.z,
            alpha: p.velocity_frame.a,
            beta: p.velocity_frame.b,
            gamma: p.velocity_frame.c,
        };
        writeln!(w, "{}", serde_json::to_string(&rec)?)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CandidateRecord {
    gamma: f64,
    phi: f64,
    s: f64,
    residual: f64,
    azimuth_free: bool,
}

/// One JSON object per candidate geodesic, in the order given.
pub fn write_candidates_jsonl<W: Write>(w: &mut W, candidates: &[ShootingSolution]) -> io::Result<()> {
    for c in candidates {
        let rec = CandidateRecord {
            gamma: c.spec.gamma(),
            phi: c.spec.phi(),
            s: c.s,
            residual: c.residual,
            azimuth_free: c.azimuth_free,
        };
        writeln!(w, "{}", serde_json::to_string(&rec)?)?;
    }
    Ok(())
}

/// Same columns as the JSON lines, for spreadsheets.
pub fn write_candidates_csv<W: Write>(w: &mut W, candidates: &[ShootingSolution]) -> io::Result<()> {
    writeln!(w, "gamma,phi,s,residual,azimuth_free")?;
    for c in candidates {
        let row = [c.spec.gamma(), c.spec.phi(), c.s, c.residual].map(fmt_f64);
        writeln!(w, "{},{}", row.join(","), c.azimuth_free)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::{sample, GeodesicSpec};
    use crate::mesh::{sphere_exp_mesh, SphereGrid};

    fn text(f: impl FnOnce(&mut Vec<u8>) -> io::Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn floats_round_trip() {
        for v in [0.1, -1.0 / 3.0, std::f64::consts::PI, 1e-300, 6.02e23, 0.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn obj_is_one_based() {
        let mesh = sphere_exp_mesh(&SphereGrid::new(4, 3, 1.0).unwrap()).unwrap();
        let out = text(|w| write_obj(w, &mesh));
        let v = out.lines().filter(|l| l.starts_with("v ")).count();
        let faces: Vec<&str> = out.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(v, mesh.vertices.len());
        assert_eq!(faces.len(), mesh.faces.len());
        let max = faces
            .iter()
            .flat_map(|l| l[2..].split(' ').map(|t| t.parse::<usize>().unwrap()))
            .collect::<Vec<_>>();
        assert_eq!(*max.iter().min().unwrap(), 1);
        assert_eq!(*max.iter().max().unwrap(), v);
    }

    #[test]
    fn ply_lists_scalars() {
        let mesh = sphere_exp_mesh(&SphereGrid::new(4, 3, 1.0).unwrap()).unwrap();
        let out = text(|w| write_ply(w, &mesh));
        assert!(out.contains("property double gamma\n"));
        let body: Vec<&str> = out.split("end_header\n").nth(1).unwrap().lines().collect();
        assert_eq!(body.len(), mesh.vertices.len() + mesh.faces.len());
        assert_eq!(body[0].split(' ').count(), 3 + mesh.scalars.len());
    }

    #[test]
    fn csv_header_and_columns() {
        let spec = GeodesicSpec::new(0.5, 0.0).unwrap();
        let samples: Vec<_> = (0..3).map(|k| sample(&spec, k as f64)).collect();
        let out = text(|w| write_polyline_csv(w, &samples));
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], POLYLINE_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 7));
    }
}
