//! Triangulated 2-spheres and scalar fields on their vertices.

mod field;
mod icosphere;
mod io;

use std::collections::HashMap;

use crate::error::{Error, Result};

pub use field::{builtin_field, FieldSpec, BUILTIN_FIELDS};
pub use icosphere::{make_icosphere, MAX_SUBDIVISIONS};
pub use io::{load_field_csv, load_mesh, parse_obj, parse_off, write_off, MeshFormat};

pub type Vec3 = [f64; 3];

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

fn triangle_area(p: Vec3, q: Vec3, r: Vec3) -> f64 {
    0.5 * norm(cross(sub(q, p), sub(r, p)))
}

/// A closed, oriented, genus-0 triangle mesh.
///
/// Construction validates the topology (edge- and vertex-manifold, χ = 2)
/// and rejects zero-area triangles. Triangles are re-oriented so that the
/// enclosed signed volume is positive.
#[derive(Debug, Clone)]
pub struct SphereMesh {
    vertices: Vec<Vec3>,
    triangles: Vec<[usize; 3]>,
    triangle_areas: Vec<f64>,
    total_area: f64,
    /// Cyclically ordered one-ring of every vertex.
    links: Vec<Vec<usize>>,
    edge_count: usize,
}

impl SphereMesh {
    pub fn new(vertices: Vec<Vec3>, mut triangles: Vec<[usize; 3]>) -> Result<Self> {
        let nv = vertices.len();
        if nv == 0 || triangles.is_empty() {
            return Err(Error::Topology("empty mesh".into()));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::Degenerate(format!("vertex {i} has non-finite coordinates")));
            }
        }
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&i| i >= nv) {
                return Err(Error::Topology(format!("triangle {t} references a missing vertex")));
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(Error::Topology(format!("triangle {t} repeats a vertex")));
            }
        }

        // every undirected edge in exactly two triangles, with opposite directions
        let mut directed: HashMap<(usize, usize), usize> = HashMap::with_capacity(3 * triangles.len());
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                if directed.insert((a, b), t).is_some() {
                    return Err(Error::Topology(format!(
                        "directed edge ({a}, {b}) used twice: non-manifold or inconsistently oriented"
                    )));
                }
            }
        }
        for &(a, b) in directed.keys() {
            if !directed.contains_key(&(b, a)) {
                return Err(Error::Topology(format!("boundary edge ({a}, {b})")));
            }
        }
        let edge_count = directed.len() / 2;

        let chi = nv as i64 - edge_count as i64 + triangles.len() as i64;
        if chi != 2 {
            return Err(Error::Topology(format!("Euler characteristic {chi}, expected 2")));
        }

        let triangle_areas: Vec<f64> = triangles
            .iter()
            .map(|t| triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]))
            .collect();
        let max_area = triangle_areas.iter().copied().fold(0.0, f64::max);
        if let Some(t) = triangle_areas
            .iter()
            .position(|&a| !(a > 1e-14 * max_area) || a == 0.0)
        {
            return Err(Error::Degenerate(format!("triangle {t} has zero area")));
        }
        let total_area: f64 = triangle_areas.iter().sum();

        // outward orientation
        let signed_volume: f64 = triangles
            .iter()
            .map(|t| dot(vertices[t[0]], cross(vertices[t[1]], vertices[t[2]])))
            .sum();
        if signed_volume < 0.0 {
            for t in &mut triangles {
                t.swap(1, 2);
            }
        }

        let links = build_links(nv, &triangles)?;

        Ok(Self {
            vertices,
            triangles,
            triangle_areas,
            total_area,
            links,
            edge_count,
        })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_areas(&self) -> &[f64] {
        &self.triangle_areas
    }

    pub fn total_area(&self) -> f64 {
        self.total_area
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn face_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Neighbours of `v` in cyclic order around the vertex.
    pub fn link(&self, v: usize) -> &[usize] {
        &self.links[v]
    }

    /// Undirected edges `(a, b)` with `a < b`, in a deterministic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (a, link) in self.links.iter().enumerate() {
            out.extend(link.iter().filter(|&&b| a < b).map(|&b| (a, b)));
        }
        out
    }

    /// Lumped vertex masses: one third of the incident triangle areas.
    pub fn vertex_masses(&self) -> Vec<f64> {
        let mut mass = vec![0.0; self.vertices.len()];
        for (tri, &area) in self.triangles.iter().zip(&self.triangle_areas) {
            for &v in tri {
                mass[v] += area / 3.0;
            }
        }
        mass
    }

    /// Uniformly rescales positions so that the total area becomes 1.
    pub fn normalize_total_area(&self) -> Result<Self> {
        if !(self.total_area > 0.0) {
            return Err(Error::Degenerate("total area is zero".into()));
        }
        let s = 1.0 / self.total_area.sqrt();
        let vertices: Vec<Vec3> = self
            .vertices
            .iter()
            .map(|v| [v[0] * s, v[1] * s, v[2] * s])
            .collect();
        let triangle_areas: Vec<f64> = self
            .triangles
            .iter()
            .map(|t| triangle_area(vertices[t[0]], vertices[t[1]], vertices[t[2]]))
            .collect();
        let total_area = triangle_areas.iter().sum();
        Ok(Self {
            vertices,
            triangles: self.triangles.clone(),
            triangle_areas,
            total_area,
            links: self.links.clone(),
            edge_count: self.edge_count,
        })
    }
}

fn build_links(nv: usize, triangles: &[[usize; 3]]) -> Result<Vec<Vec<usize>>> {
    // for each vertex, the oriented opposite edges of its incident triangles
    let mut next: Vec<HashMap<usize, usize>> = vec![HashMap::new(); nv];
    for tri in triangles {
        for k in 0..3 {
            let v = tri[k];
            next[v].insert(tri[(k + 1) % 3], tri[(k + 2) % 3]);
        }
    }
    let mut links = Vec::with_capacity(nv);
    for (v, nx) in next.iter().enumerate() {
        if nx.is_empty() {
            return Err(Error::Topology(format!("vertex {v} is not used by any triangle")));
        }
        let start = *nx.keys().min().unwrap();
        let mut cycle = vec![start];
        let mut cur = nx[&start];
        while cur != start {
            if cycle.len() > nx.len() {
                return Err(Error::Topology(format!("vertex {v} has a non-manifold link")));
            }
            cycle.push(cur);
            cur = *nx
                .get(&cur)
                .ok_or_else(|| Error::Topology(format!("vertex {v} has an open link")))?;
        }
        if cycle.len() != nx.len() {
            return Err(Error::Topology(format!(
                "vertex {v} is a pinch point (link splits into several cycles)"
            )));
        }
        links.push(cycle);
    }
    Ok(links)
}

/// Per-vertex values of a scalar field on a [`SphereMesh`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub values: Vec<f64>,
}

impl ScalarField {
    pub fn new(mesh: &SphereMesh, values: Vec<f64>) -> Result<Self> {
        if values.len() != mesh.vertex_count() {
            return Err(Error::BadParam(format!(
                "field has {} values for {} vertices",
                values.len(),
                mesh.vertex_count()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::DegenerateField("non-finite field value".into()));
        }
        Ok(Self { values })
    }

    pub fn from_fn(mesh: &SphereMesh, f: impl Fn(Vec3) -> f64) -> Self {
        Self {
            values: mesh.vertices().iter().map(|&p| f(p)).collect(),
        }
    }

    /// Area-weighted mean with lumped vertex masses; exact for the PL interpolant.
    pub fn mean(&self, mesh: &SphereMesh) -> f64 {
        let mass = mesh.vertex_masses();
        let s: f64 = mass.iter().zip(&self.values).map(|(m, h)| m * h).sum();
        s / mesh.total_area()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn osc(&self) -> f64 {
        self.max() - self.min()
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| t * v).collect(),
        }
    }

    /// Subtracts the area-weighted mean.
    ///
    /// A mean already within the rounding error of its own computation is
    /// left alone, which makes the operation exactly idempotent.
    pub fn normalize_mean_zero(&self, mesh: &SphereMesh) -> Self {
        let mass = mesh.vertex_masses();
        let mean = self.mean(mesh);
        let magnitude: f64 = mass
            .iter()
            .zip(&self.values)
            .map(|(m, h)| (m * h).abs())
            .sum::<f64>()
            / mesh.total_area();
        let noise = 4.0 * f64::EPSILON * self.values.len() as f64 * magnitude;
        if mean.abs() <= noise {
            return self.clone();
        }
        Self {
            values: self.values.iter().map(|v| v - mean).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> SphereMesh {
        let v = vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ];
        let t = vec![
            [0, 2, 4],
            [2, 1, 4],
            [1, 3, 4],
            [3, 0, 4],
            [2, 0, 5],
            [1, 2, 5],
            [3, 1, 5],
            [0, 3, 5],
        ];
        SphereMesh::new(v, t).unwrap()
    }

    #[test]
    fn octahedron_counts() {
        let m = octahedron();
        assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (6, 12, 8));
        assert_eq!(m.euler_characteristic(), 2);
        assert_eq!(m.link(4).len(), 4);
    }

    #[test]
    fn flips_inward_orientation() {
        let m = octahedron();
        let flipped: Vec<[usize; 3]> = m.triangles().iter().map(|t| [t[0], t[2], t[1]]).collect();
        let m2 = SphereMesh::new(m.vertices().to_vec(), flipped).unwrap();
        assert_eq!(m2.triangles(), m.triangles());
    }

    #[test]
    fn boundary_edge_is_topology_error() {
        let m = octahedron();
        let t = m.triangles()[..7].to_vec();
        assert!(matches!(
            SphereMesh::new(m.vertices().to_vec(), t),
            Err(Error::Topology(_))
        ));
    }

    #[test]
    fn zero_area_triangle_is_degenerate() {
        // tetrahedron with one vertex collapsed onto an edge midpoint
        let v = vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 0.0, 0.0], [0.0, 1.0, 1.0]];
        let t = vec![[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]];
        assert!(matches!(SphereMesh::new(v, t), Err(Error::Degenerate(_))));
    }

    #[test]
    fn normalize_area_scales_triangles() {
        let m = octahedron();
        let before = m.triangle_areas()[0] / m.total_area();
        let n = m.normalize_total_area().unwrap();
        assert!((n.total_area() - 1.0).abs() < 1e-12);
        assert!((n.triangle_areas()[0] - before).abs() < 1e-15);
        let again = n.normalize_total_area().unwrap();
        for (a, b) in again.vertices().iter().zip(n.vertices()) {
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn masses_sum_to_area() {
        let m = octahedron().normalize_total_area().unwrap();
        let s: f64 = m.vertex_masses().iter().sum();
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_zero_projection() {
        let m = octahedron().normalize_total_area().unwrap();
        let c = ScalarField::new(&m, vec![5.0; 6]).unwrap().normalize_mean_zero(&m);
        assert!(c.values.iter().all(|v| v.abs() < 1e-14));

        let f = ScalarField::from_fn(&m, |p| p[2] + 0.3 * p[0] * p[0] + 0.1);
        let once = f.normalize_mean_zero(&m);
        let twice = once.normalize_mean_zero(&m);
        assert_eq!(once, twice);
        assert!(once.mean(&m).abs() < 1e-10);
    }
}
