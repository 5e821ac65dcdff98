use std::collections::HashMap;

use super::{norm, SphereMesh, Vec3};
use crate::error::{Error, Result};

/// Largest accepted subdivision level (10·4⁸ + 2 ≈ 655k vertices).
pub const MAX_SUBDIVISIONS: u32 = 8;

/// Icosahedron subdivided `subdivisions` times, projected to the round
/// sphere and rescaled to unit total area.
pub fn make_icosphere(subdivisions: u32) -> Result<SphereMesh> {
    if subdivisions > MAX_SUBDIVISIONS {
        return Err(Error::Resource(format!(
            "icosphere subdivision {subdivisions} exceeds the limit of {MAX_SUBDIVISIONS}"
        )));
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<Vec3> = vec![
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    for v in &mut vertices {
        *v = unit(*v);
    }
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..subdivisions {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::with_capacity(faces.len() * 3 / 2);
        let mut next = Vec::with_capacity(faces.len() * 4);
        let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Vec3>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoints.entry(key).or_insert_with(|| {
                let (p, q) = (vertices[a], vertices[b]);
                vertices.push(unit([p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                vertices.len() - 1
            })
        };
        for &[a, b, c] in &faces {
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            next.extend_from_slice(&[[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }

    SphereMesh::new(vertices, faces)?.normalize_total_area()
}

fn unit(v: Vec3) -> Vec3 {
    let n = norm(v);
    [v[0] / n, v[1] / n, v[2] / n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedron_combinatorics() {
        let m = make_icosphere(0).unwrap();
        assert_eq!((m.vertex_count(), m.face_count(), m.edge_count()), (12, 20, 30));
    }

    #[test]
    fn subdivided_counts_and_area() {
        for n in 0..=4u32 {
            let m = make_icosphere(n).unwrap();
            let four = 4usize.pow(n);
            assert_eq!(m.vertex_count(), 10 * four + 2);
            assert_eq!(m.face_count(), 20 * four);
            assert_eq!(m.edge_count(), 30 * four);
            assert!((m.total_area() - 1.0).abs() < 1e-12, "n={n}");
        }
        let m = make_icosphere(3).unwrap();
        assert_eq!((m.vertex_count(), m.face_count(), m.edge_count()), (642, 1280, 1920));
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(make_icosphere(9), Err(Error::Resource(_))));
    }
}
