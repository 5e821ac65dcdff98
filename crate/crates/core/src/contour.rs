//! Contour trees of PL fields on triangulated spheres.
//!
//! Ties are broken by the total order `(value, vertex index)`, which makes
//! every vertex value distinct. The augmented contour tree (every vertex a
//! node) is built from the join and split trees; each mesh triangle then
//! deposits its exact PL area, slab by slab, on the augmented arcs its
//! edges map to. Collapsing regular vertices gives the Reeb tree whose
//! edges carry their band areas and area-coordinate profiles.

use std::cmp::Ordering;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{ScalarField, SphereMesh};
use crate::pl::PiecewiseLinear;
use crate::profile::EvenProfile;
use crate::tree::{symmetrize_tree, MeasuredTree, NodeKind, TreeEdge, TreeFunction};

/// Breakpoints `(cumulative area within the band, value)` along a Reeb edge.
pub type AreaProfile = PiecewiseLinear;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub vertex: usize,
    pub kind: NodeKind,
    pub value: f64,
    /// 1 for extrema and simple saddles; `m` for a saddle whose link has
    /// `2m + 2` sign changes.
    pub multiplicity: usize,
}

/// Simulation-of-simplicity order on vertices.
#[derive(Debug, Clone)]
pub struct VertexOrder {
    rank: Vec<usize>,
    sorted: Vec<usize>,
}

impl VertexOrder {
    pub fn new(values: &[f64]) -> Self {
        let mut sorted: Vec<usize> = (0..values.len()).collect();
        sorted.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
        let mut rank = vec![0; values.len()];
        for (r, &v) in sorted.iter().enumerate() {
            rank[v] = r;
        }
        Self { rank, sorted }
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn cmp(&self, a: usize, b: usize) -> Ordering {
        self.rank[a].cmp(&self.rank[b])
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    /// Vertices from lowest to highest.
    pub fn sorted(&self) -> &[usize] {
        &self.sorted
    }
}

fn check_field(mesh: &SphereMesh, field: &ScalarField) -> Result<()> {
    if field.values.len() != mesh.vertex_count() {
        return Err(Error::BadParam(format!(
            "field has {} values for {} vertices",
            field.values.len(),
            mesh.vertex_count()
        )));
    }
    if field.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateField("non-finite field value".into()));
    }
    if !(field.osc() > 0.0) {
        return Err(Error::DegenerateField("field is constant: no regular values".into()));
    }
    Ok(())
}

/// Classifies vertices by the number of sign changes of `H(n) − H(v)`
/// around the cyclic link: 0 → extremum, 2 → regular, `2m + 2` → saddle
/// of multiplicity `m`. Regular vertices are omitted.
pub fn critical_points(mesh: &SphereMesh, field: &ScalarField) -> Result<Vec<CriticalPoint>> {
    check_field(mesh, field)?;
    let order = VertexOrder::new(&field.values);
    let mut out = Vec::new();
    for v in 0..mesh.vertex_count() {
        let link = mesh.link(v);
        let above: Vec<bool> = link.iter().map(|&n| order.less(v, n)).collect();
        let changes = (0..above.len())
            .filter(|&i| above[i] != above[(i + 1) % above.len()])
            .count();
        let (kind, multiplicity) = match changes {
            0 if above[0] => (NodeKind::Minimum, 1),
            0 => (NodeKind::Maximum, 1),
            2 => continue,
            c => (NodeKind::Saddle, c / 2 - 1),
        };
        out.push(CriticalPoint {
            vertex: v,
            kind,
            value: field.values[v],
            multiplicity,
        });
    }
    Ok(out)
}

/// PL-exact area of `{H < t}`.
pub fn sublevel_area(mesh: &SphereMesh, field: &ScalarField, t: f64) -> f64 {
    mesh.triangles()
        .iter()
        .zip(mesh.triangle_areas())
        .map(|(tri, &area)| {
            let mut f = [field.values[tri[0]], field.values[tri[1]], field.values[tri[2]]];
            f.sort_by(f64::total_cmp);
            TriangleSweep::new(f, area).below(t)
        })
        .sum()
}

/// Area of `{H < t}` inside one triangle with sorted vertex values.
#[derive(Debug, Clone, Copy)]
struct TriangleSweep {
    f: [f64; 3],
    area: f64,
}

impl TriangleSweep {
    fn new(f: [f64; 3], area: f64) -> Self {
        Self { f, area }
    }

    fn below(&self, t: f64) -> f64 {
        let [fa, fb, fc] = self.f;
        if t <= fa {
            0.0
        } else if t >= fc {
            self.area
        } else if t <= fb {
            self.area * (t - fa) * (t - fa) / ((fb - fa) * (fc - fa))
        } else {
            self.area * (1.0 - (fc - t) * (fc - t) / ((fc - fa) * (fc - fb)))
        }
    }
}

/// The augmented contour tree: one node per vertex, `V − 1` arcs.
#[derive(Debug, Clone)]
struct AugmentedTree {
    adjacency: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

fn augmented_contour_tree(mesh: &SphereMesh, order: &VertexOrder) -> Result<AugmentedTree> {
    let n = mesh.vertex_count();

    // join tree: sweep upward; children are the heads of merged sublevel components
    let mut jt_parent: Vec<Option<usize>> = vec![None; n];
    let mut jt_children: Vec<Vec<usize>> = vec![Vec::new(); n];
    sweep(mesh, order.sorted().iter().copied(), |a, b| order.less(a, b), |head, v| {
        jt_parent[head] = Some(v);
        jt_children[v].push(head);
    });
    // split tree: sweep downward
    let mut st_parent: Vec<Option<usize>> = vec![None; n];
    let mut st_children: Vec<Vec<usize>> = vec![Vec::new(); n];
    sweep(mesh, order.sorted().iter().rev().copied(), |a, b| order.less(b, a), |head, v| {
        st_parent[head] = Some(v);
        st_children[v].push(head);
    });

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut removed = vec![false; n];
    let mut arcs = 0usize;
    let mut queue: VecDeque<usize> = order
        .sorted()
        .iter()
        .copied()
        .filter(|&v| jt_children[v].len() + st_children[v].len() == 1)
        .collect();

    fn replace(list: &mut [usize], old: usize, new: usize) {
        if let Some(slot) = list.iter_mut().find(|x| **x == old) {
            *slot = new;
        }
    }
    fn remove(list: &mut Vec<usize>, old: usize) {
        if let Some(i) = list.iter().position(|&x| x == old) {
            list.swap_remove(i);
        }
    }

    while let Some(v) = queue.pop_front() {
        if removed[v] || jt_children[v].len() + st_children[v].len() != 1 {
            continue;
        }
        let neighbour;
        if jt_children[v].is_empty() {
            // lower leaf: attach to the join-tree parent
            let Some(u) = jt_parent[v] else { continue };
            neighbour = u;
            remove(&mut jt_children[u], v);
            let c = st_children[v][0];
            st_parent[c] = st_parent[v];
            if let Some(p) = st_parent[v] {
                replace(&mut st_children[p], v, c);
            }
        } else {
            // upper leaf: attach to the split-tree parent
            let Some(u) = st_parent[v] else { continue };
            neighbour = u;
            remove(&mut st_children[u], v);
            let c = jt_children[v][0];
            jt_parent[c] = jt_parent[v];
            if let Some(p) = jt_parent[v] {
                replace(&mut jt_children[p], v, c);
            }
        }
        removed[v] = true;
        adjacency[v].push(neighbour);
        adjacency[neighbour].push(v);
        arcs += 1;
        if jt_children[neighbour].len() + st_children[neighbour].len() == 1 {
            queue.push_back(neighbour);
        }
    }
    if arcs + 1 != n {
        return Err(Error::Topology(format!(
            "contour tree merge produced {arcs} arcs for {n} vertices; the surface is not a sphere"
        )));
    }

    // root at the global minimum
    let root = order.sorted()[0];
    let mut parent = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut bfs = VecDeque::from([root]);
    seen[root] = true;
    while let Some(x) = bfs.pop_front() {
        for &y in &adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                depth[y] = depth[x] + 1;
                bfs.push_back(y);
            }
        }
    }
    Ok(AugmentedTree {
        adjacency,
        parent,
        depth,
    })
}

/// Union-find sweep shared by the join and split trees. For each vertex in
/// sweep order, every already-swept neighbour component is merged into the
/// vertex's component and `arc(head, v)` reports the component's previous
/// head (its most recently swept vertex).
fn sweep(
    mesh: &SphereMesh,
    sequence: impl Iterator<Item = usize>,
    before: impl Fn(usize, usize) -> bool,
    mut arc: impl FnMut(usize, usize),
) {
    let n = mesh.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut head: Vec<usize> = (0..n).collect();
    for v in sequence {
        for &u in mesh.link(v) {
            if !before(u, v) {
                continue;
            }
            let (ru, rv) = (uf.find(u), uf.find(v));
            if ru != rv {
                arc(head[ru], v);
                uf.union(ru, rv);
            }
        }
        let r = uf.find(v);
        head[r] = v;
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            Ordering::Less => self.parent[a] = b,
            Ordering::Greater => self.parent[b] = a,
            Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

impl AugmentedTree {
    /// Nodes on the tree path from `a` to `b`, both included.
    fn path(&self, a: usize, b: usize, out: &mut Vec<usize>, tail: &mut Vec<usize>) {
        out.clear();
        tail.clear();
        let (mut x, mut y) = (a, b);
        out.push(x);
        tail.push(y);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].expect("non-root");
            out.push(x);
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].expect("non-root");
            tail.push(y);
        }
        while x != y {
            x = self.parent[x].expect("non-root");
            y = self.parent[y].expect("non-root");
            out.push(x);
            tail.push(y);
        }
        tail.pop();
        out.extend(tail.iter().rev());
    }

    /// The augmented arc between adjacent nodes, keyed by its child end.
    fn arc_key(&self, a: usize, b: usize) -> usize {
        if self.parent[a] == Some(b) {
            a
        } else {
            b
        }
    }
}

/// An edge of the unmerged Reeb tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkeletonEdge {
    /// Indices into [`ContourTree::critical`].
    pub lower: usize,
    pub upper: usize,
    pub area: f64,
    /// Number of regular vertices inside the band.
    pub interior_values: usize,
}

/// Output of [`build_contour_tree`].
#[derive(Debug, Clone)]
pub struct ContourTree {
    /// Critical vertices of the tie-broken field (nodes of the unmerged tree).
    pub critical: Vec<CriticalPoint>,
    /// Edges of the unmerged tree; some may have zero area when the field
    /// has exactly repeated values.
    pub skeleton: Vec<SkeletonEdge>,
    /// The measured Reeb tree after contracting zero-area bands.
    pub tree: MeasuredTree,
    /// The field in area coordinates (profiles are [`AreaProfile`]s).
    pub function: TreeFunction,
    pub node_kinds: Vec<NodeKind>,
    /// Lowest-ranked mesh vertex represented by each tree node.
    pub node_vertices: Vec<usize>,
}

impl ContourTree {
    pub fn profile(&self, edge: usize) -> &AreaProfile {
        self.function.profile(edge)
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edge_count()
    }

    /// Symmetrizes the tree function after removing its mean. Linear
    /// interpolation in area coordinates shifts the mean by `O(h²)` relative
    /// to the PL field, so the function is re-centred here on purpose.
    pub fn symmetrize(&self) -> Result<EvenProfile> {
        let mean = self.function.mean();
        log::debug!("area-coordinate mean offset {mean:e}");
        symmetrize_tree(&self.tree, &self.function.shift(-mean))
    }
}

/// Builds the measured Reeb tree of `field`.
///
/// Each edge carries `μ(e)`, the area of its band, and an [`AreaProfile`]
/// sampled at every vertex value inside the band. Measures are divided by
/// the total deposited area so that they sum to 1.
pub fn build_contour_tree(mesh: &SphereMesh, field: &ScalarField) -> Result<ContourTree> {
    check_field(mesh, field)?;
    let values = &field.values;
    let order = VertexOrder::new(values);
    let aug = augmented_contour_tree(mesh, &order)?;
    let n = mesh.vertex_count();

    // area deposited on each augmented arc, keyed by child node
    let mut arc_area = vec![0.0; n];
    let (mut path, mut tail) = (Vec::new(), Vec::new());
    for (tri, &area) in mesh.triangles().iter().zip(mesh.triangle_areas()) {
        let mut t = *tri;
        t.sort_by(|&a, &b| order.cmp(a, b));
        let sweep = TriangleSweep::new([values[t[0]], values[t[1]], values[t[2]]], area);
        // slabs below the middle vertex lie on the contours of edge t0–t1,
        // slabs above it on those of edge t1–t2
        for (a, b) in [(t[0], t[1]), (t[1], t[2])] {
            aug.path(a, b, &mut path, &mut tail);
            for w in path.windows(2) {
                let slab = sweep.below(values[w[1]]) - sweep.below(values[w[0]]);
                arc_area[aug.arc_key(w[0], w[1])] += slab;
            }
        }
    }

    // critical nodes of the augmented tree and their classification
    let is_critical = |v: usize| aug.adjacency[v].len() != 2;
    let mut crit_index = vec![usize::MAX; n];
    let mut critical = Vec::new();
    for &v in order.sorted() {
        if !is_critical(v) {
            let ups = aug.adjacency[v].iter().filter(|&&u| order.less(v, u)).count();
            if ups == 1 {
                continue;
            }
        }
        let ups = aug.adjacency[v].iter().filter(|&&u| order.less(v, u)).count();
        let downs = aug.adjacency[v].len() - ups;
        let kind = match (downs, ups) {
            (0, _) => NodeKind::Minimum,
            (_, 0) => NodeKind::Maximum,
            _ => NodeKind::Saddle,
        };
        crit_index[v] = critical.len();
        critical.push(CriticalPoint {
            vertex: v,
            kind,
            value: values[v],
            multiplicity: (aug.adjacency[v].len().max(2) - 2).max(1),
        });
    }

    // chains of regular vertices between critical ones, walked upward
    struct Chain {
        lower: usize,
        upper: usize,
        points: Vec<(f64, f64)>,
    }
    let mut chains = Vec::new();
    for c in &critical {
        for &start in &aug.adjacency[c.vertex] {
            if !order.less(c.vertex, start) {
                continue;
            }
            let mut prev = c.vertex;
            let mut cur = start;
            let mut cum = 0.0;
            let mut points = vec![(0.0, values[c.vertex])];
            loop {
                cum += arc_area[aug.arc_key(prev, cur)];
                points.push((cum, values[cur]));
                if crit_index[cur] != usize::MAX {
                    break;
                }
                let next = *aug.adjacency[cur]
                    .iter()
                    .find(|&&x| x != prev)
                    .expect("regular node has two neighbours");
                prev = cur;
                cur = next;
            }
            chains.push(Chain {
                lower: crit_index[c.vertex],
                upper: crit_index[cur],
                points,
            });
        }
    }
    let skeleton: Vec<SkeletonEdge> = chains
        .iter()
        .map(|ch| SkeletonEdge {
            lower: ch.lower,
            upper: ch.upper,
            area: ch.points.last().expect("non-empty").0,
            interior_values: ch.points.len() - 2,
        })
        .collect();

    // contract zero-area bands
    let mut uf = UnionFind::new(critical.len());
    for ch in &chains {
        if ch.points.last().expect("non-empty").0 == 0.0 {
            uf.union(ch.lower, ch.upper);
        }
    }
    let mut group_id = vec![usize::MAX; critical.len()];
    let mut node_vertices = Vec::new();
    let mut node_values = Vec::new();
    for (i, c) in critical.iter().enumerate() {
        let r = uf.find(i);
        if group_id[r] == usize::MAX {
            group_id[r] = node_vertices.len();
            node_vertices.push(c.vertex);
            node_values.push(c.value);
        }
    }
    let node_of = |i: usize, uf: &mut UnionFind| group_id[uf.find(i)];

    let total: f64 = chains.iter().map(|c| c.points.last().expect("non-empty").0).sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateField("no band carries positive area".into()));
    }
    let mut edges = Vec::new();
    let mut profiles = Vec::new();
    for ch in &chains {
        let area = ch.points.last().expect("non-empty").0;
        if area == 0.0 {
            continue;
        }
        let (u, v) = (node_of(ch.lower, &mut uf), node_of(ch.upper, &mut uf));
        let mut pts: Vec<(f64, f64)> = Vec::with_capacity(ch.points.len());
        for &(s, y) in &ch.points {
            let s = s / total;
            match pts.last_mut() {
                Some(last) if s <= last.0 => last.1 = y,
                _ => pts.push((s, y)),
            }
        }
        let measure = pts.last().expect("non-empty").0;
        pts[0].1 = node_values[u];
        let last = pts.len() - 1;
        pts[last].1 = node_values[v];
        edges.push(TreeEdge { u, v, measure });
        profiles.push(PiecewiseLinear::new(pts)?);
    }
    let tree = MeasuredTree::new(node_vertices.len(), edges)?;
    let function = TreeFunction::new(&tree, node_values, profiles)?;
    let node_kinds = (0..tree.node_count()).map(|i| function.node_kind(&tree, i)).collect();
    Ok(ContourTree {
        critical,
        skeleton,
        tree,
        function,
        node_kinds,
        node_vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{builtin_field, make_icosphere, FieldSpec};

    fn field(n: u32, name: &str) -> (SphereMesh, ScalarField) {
        let m = make_icosphere(n).unwrap();
        let f = builtin_field(&m, &FieldSpec::named(name)).unwrap();
        (m, f)
    }

    #[test]
    fn height_has_two_critical_points() {
        let (m, f) = field(4, "height_z");
        let cps = critical_points(&m, &f).unwrap();
        assert_eq!(cps.len(), 2);
        assert_eq!(cps.iter().filter(|c| c.kind == NodeKind::Minimum).count(), 1);
        assert_eq!(cps.iter().filter(|c| c.kind == NodeKind::Maximum).count(), 1);
    }

    #[test]
    fn constant_field_is_degenerate() {
        let m = make_icosphere(1).unwrap();
        let f = ScalarField::new(&m, vec![0.0; m.vertex_count()]).unwrap();
        assert!(matches!(critical_points(&m, &f), Err(Error::DegenerateField(_))));
        assert!(matches!(build_contour_tree(&m, &f), Err(Error::DegenerateField(_))));
    }

    #[test]
    fn height_tree_is_one_band() {
        let (m, f) = field(5, "height_z");
        let ct = build_contour_tree(&m, &f).unwrap();
        assert_eq!(ct.edge_count(), 1);
        assert!((ct.tree.edges()[0].measure - 1.0).abs() < 1e-9);
        // area coordinate ≈ value + 1/2
        let p = ct.profile(0);
        let dev = p
            .points()
            .iter()
            .map(|&(s, y)| (y - (s - 0.5)).abs())
            .fold(0.0, f64::max);
        assert!(dev < 5e-3, "{dev}");
    }

    #[test]
    fn sublevel_area_limits() {
        let (m, f) = field(5, "height_z");
        assert_eq!(sublevel_area(&m, &f, f.min() - 1.0), 0.0);
        assert_eq!(sublevel_area(&m, &f, f.min()), 0.0);
        assert!((sublevel_area(&m, &f, f.max() + 1.0) - 1.0).abs() < 1e-12);
        assert!((sublevel_area(&m, &f, 0.0) - 0.5).abs() < 1e-3);
    }

    #[test]
    fn band_areas_tile_the_sphere() {
        for name in ["height_x", "cubic_z", "quadratic_z", "double_bump"] {
            let (m, f) = field(4, name);
            let ct = build_contour_tree(&m, &f).unwrap();
            let raw: f64 = ct.skeleton.iter().map(|e| e.area).sum();
            assert!((raw - 1.0).abs() < 1e-9, "{name}: {raw}");
            assert!((ct.tree.total_measure() - 1.0).abs() < 1e-12, "{name}");
        }
    }

    #[test]
    fn tree_matches_link_classification() {
        for name in ["height_z", "double_bump", "quadratic_z"] {
            let (m, f) = field(4, name);
            let mut from_links = critical_points(&m, &f).unwrap();
            let ct = build_contour_tree(&m, &f).unwrap();
            let mut from_tree = ct.critical.clone();
            from_links.sort_by_key(|c| c.vertex);
            from_tree.sort_by_key(|c| c.vertex);
            let a: Vec<_> = from_links.iter().map(|c| (c.vertex, c.kind)).collect();
            let b: Vec<_> = from_tree.iter().map(|c| (c.vertex, c.kind)).collect();
            assert_eq!(a, b, "{name}");
        }
    }

    #[test]
    fn unmerged_tree_shape() {
        let (m, f) = field(4, "quadratic_z");
        let ct = build_contour_tree(&m, &f).unwrap();
        assert_eq!(ct.skeleton.len() + 1, ct.critical.len());
        // exactly tied equator vertices merge; the two poles stay the only maxima
        assert!(ct.tree.edge_count() < ct.skeleton.len());
        let maxima = ct.node_kinds.iter().filter(|k| **k == NodeKind::Maximum).count();
        assert_eq!(maxima, 2);
    }
}
