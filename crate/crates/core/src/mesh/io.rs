//! OFF / OBJ mesh readers and the `vertex_index,value` field format.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{ScalarField, SphereMesh, Vec3};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "off" => Some(Self::Off),
            "obj" => Some(Self::Obj),
            _ => None,
        }
    }
}

pub fn load_mesh(path: &Path, format: MeshFormat) -> Result<SphereMesh> {
    let text = fs::read_to_string(path)?;
    let (v, t) = match format {
        MeshFormat::Off => parse_off(&text)?,
        MeshFormat::Obj => parse_obj(&text)?,
    };
    SphereMesh::new(v, t)
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("expected a number, found `{tok}`")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("expected an index, found `{tok}`")))
}

pub fn parse_off(text: &str) -> Result<(Vec<Vec3>, Vec<[usize; 3]>)> {
    // tokens with their line numbers, comments stripped
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut header_toks: Vec<&str> = header.split_whitespace().collect();
    if header_toks[0] == "OFF" {
        header_toks.remove(0);
    } else if let Some(rest) = header_toks[0].strip_prefix("OFF") {
        if !rest.is_empty() {
            return Err(parse_err(hline, format!("unsupported OFF variant `{}`", header_toks[0])));
        }
    } else {
        return Err(parse_err(hline, "missing OFF header"));
    }
    let (cline, counts) = if header_toks.is_empty() {
        let (l, s) = lines.next().ok_or_else(|| parse_err(hline, "missing counts"))?;
        (l, s.split_whitespace().collect::<Vec<_>>())
    } else {
        (hline, header_toks)
    };
    if counts.len() < 2 {
        return Err(parse_err(cline, "expected vertex and face counts"));
    }
    let nv = parse_usize(counts[0], cline)?;
    let nf = parse_usize(counts[1], cline)?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (l, s) = lines.next().ok_or_else(|| parse_err(cline, "truncated vertex list"))?;
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(parse_err(l, "vertex needs three coordinates"));
        }
        vertices.push([
            parse_f64(toks[0], l)?,
            parse_f64(toks[1], l)?,
            parse_f64(toks[2], l)?,
        ]);
    }
    let mut triangles = Vec::with_capacity(nf);
    for _ in 0..nf {
        let (l, s) = lines.next().ok_or_else(|| parse_err(cline, "truncated face list"))?;
        let toks: Vec<&str> = s.split_whitespace().collect();
        let n = parse_usize(toks[0], l)?;
        if n != 3 {
            return Err(parse_err(l, format!("face with {n} vertices; only triangles are supported")));
        }
        if toks.len() < 4 {
            return Err(parse_err(l, "face lists fewer indices than declared"));
        }
        let tri = [
            parse_usize(toks[1], l)?,
            parse_usize(toks[2], l)?,
            parse_usize(toks[3], l)?,
        ];
        if tri.iter().any(|&i| i >= nv) {
            return Err(parse_err(l, "face index out of range"));
        }
        triangles.push(tri);
    }
    Ok((vertices, triangles))
}

/// Reads `v` and `f` records; every other record type is ignored.
pub fn parse_obj(text: &str) -> Result<(Vec<Vec3>, Vec<[usize; 3]>)> {
    let mut vertices = Vec::new();
    let mut faces: Vec<(usize, Vec<i64>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = i + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        let mut toks = s.split_whitespace();
        match toks.next() {
            Some("v") => {
                let c: Vec<&str> = toks.collect();
                if c.len() < 3 {
                    return Err(parse_err(l, "vertex needs three coordinates"));
                }
                vertices.push([parse_f64(c[0], l)?, parse_f64(c[1], l)?, parse_f64(c[2], l)?]);
            }
            Some("f") => {
                let idx = toks
                    .map(|t| {
                        let head = t.split('/').next().unwrap_or("");
                        head.parse::<i64>()
                            .map_err(|_| parse_err(l, format!("bad face index `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if idx.len() != 3 {
                    return Err(parse_err(
                        l,
                        format!("face with {} vertices; only triangles are supported", idx.len()),
                    ));
                }
                faces.push((l, idx));
            }
            _ => {}
        }
    }
    let nv = vertices.len() as i64;
    let triangles = faces
        .into_iter()
        .map(|(l, idx)| {
            let mut tri = [0usize; 3];
            for (k, &i) in idx.iter().enumerate() {
                // 1-based, negative indices count back from the end
                let j = if i > 0 { i - 1 } else { nv + i };
                if i == 0 || j < 0 || j >= nv {
                    return Err(parse_err(l, "face index out of range"));
                }
                tri[k] = j as usize;
            }
            Ok(tri)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((vertices, triangles))
}

pub fn write_off(mesh: &SphereMesh) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "OFF\n{} {} {}", mesh.vertex_count(), mesh.face_count(), mesh.edge_count());
    for v in mesh.vertices() {
        let _ = writeln!(s, "{:e} {:e} {:e}", v[0], v[1], v[2]);
    }
    for t in mesh.triangles() {
        let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
    }
    s
}

/// Reads `vertex_index,value` lines. Every vertex must be assigned exactly once.
pub fn load_field_csv(mesh: &SphereMesh, text: &str) -> Result<ScalarField> {
    let n = mesh.vertex_count();
    let mut values: Vec<Option<f64>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let l = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut parts = s.split(',').map(str::trim);
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(parse_err(l, "expected `vertex_index,value`")),
        };
        // tolerate a header line
        let idx = match a.parse::<usize>() {
            Ok(idx) => idx,
            Err(_) if l == 1 => continue,
            Err(_) => return Err(parse_err(l, format!("bad vertex index `{a}`"))),
        };
        if idx >= n {
            return Err(parse_err(l, format!("vertex index {idx} out of range")));
        }
        if values[idx].replace(parse_f64(b, l)?).is_some() {
            return Err(parse_err(l, format!("vertex {idx} assigned twice")));
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| parse_err(0, format!("vertex {i} has no value"))))
        .collect::<Result<Vec<_>>>()?;
    ScalarField::new(mesh, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    const OCTA_OFF: &str = "OFF
# regular octahedron
6 8 12
1 0 0
-1 0 0
0 1 0
0 -1 0
0 0 1
0 0 -1
3 0 2 4
3 2 1 4
3 1 3 4
3 3 0 4
3 2 0 5
3 1 2 5
3 3 1 5
3 0 3 5
";

    #[test]
    fn reads_octahedron_off() {
        let (v, t) = parse_off(OCTA_OFF).unwrap();
        let m = SphereMesh::new(v, t).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (6, 12, 8));
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn quad_face_is_parse_error() {
        let text = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
        assert!(matches!(parse_off(text), Err(Error::Parse { line: 7, .. })));
    }

    #[test]
    fn malformed_number_is_parse_error() {
        let text = "OFF\n1 0 0\n0 zero 0\n";
        assert!(matches!(parse_off(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn obj_ignores_other_records() {
        let mut obj = String::from("o octa\nvn 0 0 1\n");
        let (v, t) = parse_off(OCTA_OFF).unwrap();
        for p in &v {
            obj.push_str(&format!("v {} {} {}\n", p[0], p[1], p[2]));
        }
        obj.push_str("s off\n");
        for f in &t {
            obj.push_str(&format!("f {}/1 {}//1 {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
        }
        let (v2, t2) = parse_obj(&obj).unwrap();
        assert_eq!(v, v2);
        assert_eq!(t, t2);
    }

    #[test]
    fn off_roundtrip() {
        let m = crate::mesh::make_icosphere(1).unwrap();
        let (v, t) = parse_off(&write_off(&m)).unwrap();
        let m2 = SphereMesh::new(v, t).unwrap();
        assert_eq!(m2.triangles(), m.triangles());
    }

    #[test]
    fn field_csv() {
        let (v, t) = parse_off(OCTA_OFF).unwrap();
        let m = SphereMesh::new(v, t).unwrap();
        let f = load_field_csv(&m, "vertex_index,value\n0,1\n1,-1\n2,0\n3,0\n5,-2\n4,2.5\n").unwrap();
        assert_eq!(f.values, vec![1.0, -1.0, 0.0, 0.0, 2.5, -2.0]);
        assert!(load_field_csv(&m, "0,1\n").is_err());
        assert!(load_field_csv(&m, "0,1\n0,2\n").is_err());
    }
}
