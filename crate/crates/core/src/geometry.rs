//! Combinatorial geodesics, intervals, medians, convex hulls, nearest-point
//! projections, thin-triangle estimates and geodesic surgery, over any
//! [`CubeComplex`].
//!
//! Both providers compute distances exactly and generate neighbors on demand,
//! so enumerations here are complete; the only limit is an explicit vertex cap
//! on how much of an interval or hull may be materialized.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Color, CubeComplex};
use crate::error::{Error, Result};

/// An edge path with the colors of its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path<V> {
    vertices: Vec<V>,
    colors: Vec<Color>,
}

impl<V: Clone + Eq> Path<V> {
    /// Validates adjacency of consecutive vertices and records edge colors.
    pub fn new<C>(complex: &C, vertices: Vec<V>) -> Result<Self>
    where
        C: CubeComplex<Vertex = V>,
    {
        if vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        let colors = vertices
            .windows(2)
            .map(|w| {
                complex.edge_color(&w[0], &w[1]).ok_or_else(|| Error::NotAdjacent {
                    from: complex.format_vertex(&w[0]),
                    to: complex.format_vertex(&w[1]),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Path { vertices, colors })
    }

    /// Follows `colors` from `start`.
    pub fn follow<C>(complex: &C, start: V, colors: &[Color]) -> Result<Self>
    where
        C: CubeComplex<Vertex = V>,
    {
        let mut vertices = Vec::with_capacity(colors.len() + 1);
        vertices.push(start);
        for &color in colors {
            let next = complex
                .neighbors(vertices.last().unwrap())
                .into_iter()
                .find(|&(c, _)| c == color)
                .map(|(_, w)| w)
                .ok_or_else(|| Error::OutOfRange {
                    what: format!("no edge colored {color}"),
                })?;
            vertices.push(next);
        }
        Ok(Path {
            vertices,
            colors: colors.to_vec(),
        })
    }

    pub fn single(v: V) -> Self {
        Path {
            vertices: vec![v],
            colors: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn source(&self) -> &V {
        &self.vertices[0]
    }

    pub fn target(&self) -> &V {
        self.vertices.last().unwrap()
    }

    /// The subpath through vertices `from..=to`.
    pub fn slice(&self, from: usize, to: usize) -> Path<V> {
        Path {
            vertices: self.vertices[from..=to].to_vec(),
            colors: self.colors[from..to].to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicCheck<W> {
    pub geodesic: bool,
    /// First wall crossed twice, with the index of the edge recrossing it.
    pub repeated: Option<(W, usize)>,
}

/// A path is a combinatorial geodesic iff its edges are dual to distinct
/// walls. The result is cross-checked against the path length and the
/// endpoint distance.
pub fn is_geodesic<C: CubeComplex>(complex: &C, path: &Path<C::Vertex>) -> Result<GeodesicCheck<C::Wall>> {
    let mut seen = HashSet::with_capacity(path.len());
    let mut repeated = None;
    for (i, w) in path.vertices.windows(2).enumerate() {
        let wall = complex.wall_of_edge(&w[0], &w[1])?;
        if !seen.insert(wall.clone()) {
            repeated = Some((wall, i));
            break;
        }
    }
    let geodesic = repeated.is_none();
    if geodesic != (complex.distance(path.source(), path.target()) == path.len()) {
        return Err(Error::Inconsistent(format!(
            "wall test says geodesic={geodesic} for a path of length {} between vertices at distance {}",
            path.len(),
            complex.distance(path.source(), path.target())
        )));
    }
    Ok(GeodesicCheck { geodesic, repeated })
}

/// The interval between two vertices as a layered DAG: layer `k` holds the
/// vertices `w` with `d(u, w) = k` and `d(u, w) + d(w, v) = d(u, v)`, and
/// edges go from layer `k` to layer `k + 1`.
#[derive(Clone, Debug)]
pub struct IntervalDag<V> {
    vertices: Vec<V>,
    layer_starts: Vec<usize>,
    succ: Vec<Vec<(Color, usize)>>,
}

impl<V: Clone + Ord> IntervalDag<V> {
    pub fn build<C>(complex: &C, u: &V, v: &V, vertex_cap: usize) -> Result<Self>
    where
        C: CubeComplex<Vertex = V>,
    {
        let total = complex.distance(u, v);
        let mut vertices = vec![u.clone()];
        let mut layer_starts = vec![0, 1];
        let mut succ: Vec<Vec<(Color, usize)>> = Vec::new();
        for k in 0..total {
            let (lo, hi) = (layer_starts[k], layer_starts[k + 1]);
            let remaining = total - k - 1;
            let mut next: BTreeMap<V, usize> = BTreeMap::new();
            let mut pending = Vec::with_capacity(hi - lo);
            for w in &vertices[lo..hi] {
                let steps: Vec<(Color, V)> = complex
                    .neighbors(w)
                    .into_iter()
                    .filter(|(_, nb)| complex.distance(nb, v) == remaining)
                    .collect();
                for (_, nb) in &steps {
                    next.insert(nb.clone(), 0);
                }
                pending.push(steps);
            }
            if vertices.len() + next.len() > vertex_cap {
                return Err(Error::ResourceCap {
                    what: "interval materialization",
                    limit: vertex_cap,
                });
            }
            for (i, slot) in next.values_mut().enumerate() {
                *slot = hi + i;
            }
            for steps in pending {
                succ.push(steps.into_iter().map(|(c, nb)| (c, next[&nb])).collect());
            }
            vertices.extend(next.into_keys());
            layer_starts.push(vertices.len());
        }
        succ.push(Vec::new());
        Ok(IntervalDag {
            vertices,
            layer_starts,
            succ,
        })
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Outgoing DAG edges of vertex `i`, sorted by color.
    pub fn successors(&self, i: usize) -> &[(Color, usize)] {
        &self.succ[i]
    }

    /// Vertices at distance `k` from the source.
    pub fn layer(&self, k: usize) -> &[V] {
        &self.vertices[self.layer_starts[k]..self.layer_starts[k + 1]]
    }

    /// Length of the geodesics the DAG encodes.
    pub fn depth(&self) -> usize {
        self.layer_starts.len() - 2
    }

    pub fn layer_of(&self, i: usize) -> usize {
        self.layer_starts.partition_point(|&s| s <= i) - 1
    }

    /// Number of source-to-target paths, saturating.
    pub fn count_geodesics(&self) -> u64 {
        let mut ways = vec![0u64; self.len()];
        *ways.last_mut().unwrap() = 1;
        for i in (0..self.len() - 1).rev() {
            ways[i] = self.succ[i]
                .iter()
                .fold(0u64, |acc, &(_, j)| acc.saturating_add(ways[j]));
        }
        ways[0]
    }
}

pub fn interval<C: CubeComplex>(
    complex: &C,
    u: &C::Vertex,
    v: &C::Vertex,
    vertex_cap: usize,
) -> Result<BTreeSet<C::Vertex>> {
    Ok(IntervalDag::build(complex, u, v, vertex_cap)?
        .vertices
        .into_iter()
        .collect())
}

#[derive(Clone, Debug)]
pub struct GeodesicEnumeration<V> {
    pub paths: Vec<Path<V>>,
    pub truncated: bool,
}

/// Enumerates geodesics from `u` to `v`, smaller colors first, so the first
/// path is the ShortLex-least one. Stops after `cap` paths and flags it.
pub fn geodesics_between<C: CubeComplex>(
    complex: &C,
    u: &C::Vertex,
    v: &C::Vertex,
    cap: usize,
    vertex_cap: usize,
) -> Result<GeodesicEnumeration<C::Vertex>> {
    let dag = IntervalDag::build(complex, u, v, vertex_cap)?;
    let mut paths = Vec::new();
    let mut truncated = false;
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    let mut colors: Vec<Color> = Vec::new();
    let last = dag.len() - 1;
    while let Some(&(node, next_edge)) = stack.last() {
        if node == last {
            if paths.len() == cap {
                truncated = true;
                break;
            }
            paths.push(Path {
                vertices: stack.iter().map(|&(i, _)| dag.vertices[i].clone()).collect(),
                colors: colors.clone(),
            });
            stack.pop();
            colors.pop();
            continue;
        }
        match dag.succ[node].get(next_edge) {
            Some(&(color, child)) => {
                stack.last_mut().unwrap().1 += 1;
                stack.push((child, 0));
                colors.push(color);
            }
            None => {
                stack.pop();
                colors.pop();
            }
        }
    }
    Ok(GeodesicEnumeration { paths, truncated })
}

/// The geodesic that always takes the smallest available color.
pub fn canonical_geodesic<C: CubeComplex>(
    complex: &C,
    u: &C::Vertex,
    v: &C::Vertex,
) -> Path<C::Vertex> {
    let mut remaining = complex.distance(u, v);
    let mut vertices = vec![u.clone()];
    let mut colors = Vec::with_capacity(remaining);
    while remaining > 0 {
        let (color, next) = complex
            .neighbors(vertices.last().unwrap())
            .into_iter()
            .find(|(_, nb)| complex.distance(nb, v) + 1 == remaining)
            .expect("some neighbor lies closer to the target");
        vertices.push(next);
        colors.push(color);
        remaining -= 1;
    }
    Path { vertices, colors }
}

pub fn median<C: CubeComplex>(
    complex: &C,
    u: &C::Vertex,
    v: &C::Vertex,
    w: &C::Vertex,
    vertex_cap: usize,
) -> Result<C::Vertex> {
    let (duw, dvw) = (complex.distance(u, w), complex.distance(v, w));
    let candidates: Vec<C::Vertex> = IntervalDag::build(complex, u, v, vertex_cap)?
        .vertices
        .into_iter()
        .filter(|x| {
            let dxw = complex.distance(x, w);
            complex.distance(u, x) + dxw == duw && complex.distance(v, x) + dxw == dvw
        })
        .collect();
    match <[C::Vertex; 1]>::try_from(candidates) {
        Ok([m]) => Ok(m),
        Err(c) => Err(Error::NoMedian { found: c.len() }),
    }
}

/// A vertex between two members that is not itself a member.
pub fn convexity_witness<C: CubeComplex>(
    complex: &C,
    set: &BTreeSet<C::Vertex>,
    vertex_cap: usize,
) -> Result<Option<C::Vertex>> {
    let members: Vec<&C::Vertex> = set.iter().collect();
    for (i, u) in members.iter().enumerate() {
        for v in &members[i + 1..] {
            let dag = IntervalDag::build(complex, u, v, vertex_cap)?;
            if let Some(x) = dag.vertices.iter().find(|x| !set.contains(*x)) {
                return Ok(Some(x.clone()));
            }
        }
    }
    Ok(None)
}

pub fn is_convex<C: CubeComplex>(
    complex: &C,
    set: &BTreeSet<C::Vertex>,
    vertex_cap: usize,
) -> Result<bool> {
    Ok(convexity_witness(complex, set, vertex_cap)?.is_none())
}

/// A nonempty interval-closed vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexSet<V> {
    vertices: BTreeSet<V>,
}

impl<V: Clone + Ord> ConvexSet<V> {
    pub fn new<C>(complex: &C, vertices: BTreeSet<V>, vertex_cap: usize) -> Result<Self>
    where
        C: CubeComplex<Vertex = V>,
    {
        if vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        if let Some(w) = convexity_witness(complex, &vertices, vertex_cap)? {
            return Err(Error::NotConvex {
                witness: complex.format_vertex(&w),
            });
        }
        Ok(ConvexSet { vertices })
    }

    /// Closes `seed` under intervals. Fails rather than clipping when the
    /// hull grows past `vertex_cap`.
    pub fn hull<C>(complex: &C, seed: impl IntoIterator<Item = V>, vertex_cap: usize) -> Result<Self>
    where
        C: CubeComplex<Vertex = V>,
    {
        let mut members: BTreeSet<V> = BTreeSet::new();
        let mut queue: Vec<V> = Vec::new();
        for v in seed {
            if members.insert(v.clone()) {
                queue.push(v);
            }
        }
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut processed: Vec<V> = Vec::new();
        while let Some(x) = queue.pop() {
            for y in &processed {
                for w in IntervalDag::build(complex, &x, y, vertex_cap)?.vertices {
                    if members.insert(w.clone()) {
                        if members.len() > vertex_cap {
                            return Err(Error::ResourceCap {
                                what: "convex hull",
                                limit: vertex_cap,
                            });
                        }
                        queue.push(w);
                    }
                }
            }
            processed.push(x);
        }
        Ok(ConvexSet { vertices: members })
    }

    pub fn vertices(&self) -> &BTreeSet<V> {
        &self.vertices
    }

    pub fn contains(&self, v: &V) -> bool {
        self.vertices.contains(v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

pub fn convex_hull<C: CubeComplex>(
    complex: &C,
    set: &BTreeSet<C::Vertex>,
    vertex_cap: usize,
) -> Result<ConvexSet<C::Vertex>> {
    ConvexSet::hull(complex, set.iter().cloned(), vertex_cap)
}

pub fn distance_to_set<C: CubeComplex>(complex: &C, v: &C::Vertex, set: &ConvexSet<C::Vertex>) -> usize {
    set.vertices
        .iter()
        .map(|y| complex.distance(v, y))
        .min()
        .expect("convex sets are nonempty")
}

/// The unique vertex of `set` nearest to `v`.
pub fn project<C: CubeComplex>(complex: &C, v: &C::Vertex, set: &ConvexSet<C::Vertex>) -> Result<C::Vertex> {
    let best = distance_to_set(complex, v, set);
    let mut nearest = set.vertices.iter().filter(|y| complex.distance(v, y) == best);
    let first = nearest.next().unwrap().clone();
    if let Some(other) = nearest.next() {
        return Err(Error::Inconsistent(format!(
            "{} has two nearest points {} and {} in a convex set",
            complex.format_vertex(v),
            complex.format_vertex(&first),
            complex.format_vertex(other)
        )));
    }
    Ok(first)
}

/// Walls with `v` on one side and all of `set` on the other.
pub fn walls_separating_from_set<C: CubeComplex>(
    complex: &C,
    v: &C::Vertex,
    set: &ConvexSet<C::Vertex>,
) -> Vec<C::Wall> {
    let anchor = set.vertices.iter().next().expect("convex sets are nonempty");
    complex
        .walls_separating(v, anchor)
        .into_iter()
        .filter(|h| {
            let side = complex.wall_side(h, v);
            set.vertices.iter().all(|y| complex.wall_side(h, y) != side)
        })
        .collect()
}

/// Whether `wall` crosses the subcomplex spanned by `set`, i.e. separates two
/// of its vertices.
pub fn wall_meets<C: CubeComplex>(complex: &C, wall: &C::Wall, set: &ConvexSet<C::Vertex>) -> bool {
    let mut sides = set.vertices.iter().map(|y| complex.wall_side(wall, y));
    let first = sides.next().unwrap();
    sides.any(|s| s != first)
}

/// How an edge projects to a convex set: either both ends land on one
/// vertex, or the image is an edge dual to the same wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeProjection<V, W> {
    /// The edge's wall misses the set; both endpoints project to `image`.
    Collapsed { wall: W, image: V },
    /// The wall crosses the set; the images are adjacent and dual to `wall`.
    Parallel { wall: W, images: (V, V) },
}

pub fn project_edge<C: CubeComplex>(
    complex: &C,
    u: &C::Vertex,
    v: &C::Vertex,
    set: &ConvexSet<C::Vertex>,
) -> Result<EdgeProjection<C::Vertex, C::Wall>> {
    let wall = complex.wall_of_edge(u, v)?;
    let (pu, pv) = (project(complex, u, set)?, project(complex, v, set)?);
    if !wall_meets(complex, &wall, set) {
        if pu != pv {
            return Err(Error::Inconsistent(format!(
                "wall misses the set but {} and {} project apart",
                complex.format_vertex(u),
                complex.format_vertex(v)
            )));
        }
        return Ok(EdgeProjection::Collapsed { wall, image: pu });
    }
    if complex.distance(&pu, &pv) != 1 || complex.wall_of_edge(&pu, &pv)? != wall {
        return Err(Error::Inconsistent(format!(
            "wall meets the set but the images of {} and {} are not dual to it",
            complex.format_vertex(u),
            complex.format_vertex(v)
        )));
    }
    Ok(EdgeProjection::Parallel {
        wall,
        images: (pu, pv),
    })
}

/// Projects a geodesic vertex by vertex, collapsing repeats.
pub fn project_path<C: CubeComplex>(
    complex: &C,
    path: &Path<C::Vertex>,
    set: &ConvexSet<C::Vertex>,
) -> Result<Path<C::Vertex>> {
    if let Some((_, edge)) = is_geodesic(complex, path)?.repeated {
        return Err(Error::NonGeodesic { edge });
    }
    let mut image: Vec<C::Vertex> = Vec::with_capacity(path.vertices.len());
    for v in &path.vertices {
        let p = project(complex, v, set)?;
        if image.last() != Some(&p) {
            image.push(p);
        }
    }
    Path::new(complex, image)
}

/// Largest observed thin-triangle defect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaEstimate {
    pub value: usize,
    pub radius: usize,
    pub triangles_checked: u64,
    /// Set when geodesic side choices were truncated. Side choices are
    /// optimized over exactly here, so this only reports caller-side limits.
    pub capped: bool,
}

const MAX_DELTA_VERTICES: usize = 20_000;

struct PairDag {
    /// Indices into the shared vertex table, in DAG order.
    nodes: Vec<u32>,
    succ: Vec<Vec<u32>>,
}

impl PairDag {
    /// Max over geodesics of the distance from `p` to the geodesic: a
    /// bottleneck path problem on the DAG.
    fn farthest_side(&self, p_row: &[u16]) -> u16 {
        let mut best = vec![0u16; self.nodes.len()];
        for i in (0..self.nodes.len()).rev() {
            let here = p_row[self.nodes[i] as usize];
            best[i] = match self.succ[i].iter().map(|&j| best[j as usize]).max() {
                Some(next) => here.min(next),
                None => here,
            };
        }
        best[0]
    }
}

/// Thinness of geodesic triangles with corners in `domain`.
///
/// For corners `x, y, z` the defect is the largest distance from a point on
/// one side to the union of the other two, maximized over every choice of
/// geodesic sides; degenerate triangles (bigons) are included. Side choices
/// are optimized on interval DAGs, not enumerated.
pub fn delta_estimate<C: CubeComplex>(
    complex: &C,
    domain: &[C::Vertex],
    radius: usize,
    vertex_cap: usize,
) -> Result<DeltaEstimate> {
    let n = domain.len();
    let mut table: Vec<C::Vertex> = Vec::new();
    let mut index: HashMap<C::Vertex, u32> = HashMap::new();
    let mut dags: Vec<PairDag> = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            let dag = IntervalDag::build(complex, &domain[i], &domain[j], vertex_cap)?;
            let nodes = dag
                .vertices
                .iter()
                .map(|v| {
                    *index.entry(v.clone()).or_insert_with(|| {
                        table.push(v.clone());
                        (table.len() - 1) as u32
                    })
                })
                .collect();
            let succ = dag
                .succ
                .iter()
                .map(|s| s.iter().map(|&(_, k)| k as u32).collect())
                .collect();
            dags.push(PairDag { nodes, succ });
        }
        if table.len() > MAX_DELTA_VERTICES.min(vertex_cap) {
            return Err(Error::ResourceCap {
                what: "thin-triangle scan",
                limit: MAX_DELTA_VERTICES.min(vertex_cap),
            });
        }
    }
    let m = table.len();
    let dist: Vec<u16> = (0..m)
        .into_par_iter()
        .flat_map_iter(|a| {
            let table = &table;
            (0..m).map(move |b| complex.distance(&table[a], &table[b]) as u16)
        })
        .collect();
    // pair (a, b), a <= b, sits at offsets[a] + (b - a)
    let offsets: Vec<usize> = (0..n)
        .scan(0usize, |acc, a| {
            let here = *acc;
            *acc += n - a;
            Some(here)
        })
        .collect();
    let dag_of = |i: usize, j: usize| -> &PairDag {
        let (a, b) = (i.min(j), i.max(j));
        &dags[offsets[a] + (b - a)]
    };
    let side_defect = |side: &PairDag, o1: &PairDag, o2: &PairDag| -> u16 {
        side.nodes
            .iter()
            .map(|&p| {
                let row = &dist[p as usize * m..(p as usize + 1) * m];
                o1.farthest_side(row).min(o2.farthest_side(row))
            })
            .max()
            .unwrap_or(0)
    };
    let (value, checked) = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut worst = 0u16;
            let mut count = 0u64;
            for j in i..n {
                for k in j..n {
                    let (xy, yz, xz) = (dag_of(i, j), dag_of(j, k), dag_of(i, k));
                    worst = worst
                        .max(side_defect(xy, yz, xz))
                        .max(side_defect(yz, xy, xz))
                        .max(side_defect(xz, xy, yz));
                    count += 1;
                }
            }
            (worst, count)
        })
        .reduce(|| (0, 0), |a, b| (a.0.max(b.0), a.1 + b.1));
    Ok(DeltaEstimate {
        value: value as usize,
        radius,
        triangles_checked: checked,
        capped: false,
    })
}

/// Which case of the ray surgery applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurgeryCase<V> {
    /// The ray never crosses the wall between `x` and `y` within the depth;
    /// the edge `x y` is prepended.
    NeverCrosses,
    /// The ray crosses the wall on edge `edge`; `z` is the vertex after it.
    Crosses { edge: usize, z: V },
}

#[derive(Clone, Debug)]
pub struct Surgery<V> {
    pub path: Path<V>,
    pub case: SurgeryCase<V>,
}

/// Turns a geodesic ray from `y` into a geodesic from the neighbor `x`,
/// following the ray through vertex `depth`. The output is verified.
pub fn ray_surgery<C: CubeComplex>(
    complex: &C,
    x: &C::Vertex,
    y: &C::Vertex,
    ray: &Path<C::Vertex>,
    depth: usize,
) -> Result<Surgery<C::Vertex>> {
    if ray.source() != y {
        return Err(Error::Mismatch("ray does not start at y".into()));
    }
    if depth > ray.len() {
        return Err(Error::DepthTooSmall {
            depth: ray.len(),
            needed: depth,
        });
    }
    let prefix = ray.slice(0, depth);
    if let Some((_, edge)) = is_geodesic(complex, &prefix)?.repeated {
        return Err(Error::NonGeodesic { edge });
    }
    let wall = complex.wall_of_edge(x, y)?;
    let mut crossing = None;
    for (i, w) in prefix.vertices.windows(2).enumerate() {
        if complex.wall_of_edge(&w[0], &w[1])? == wall {
            crossing = Some(i);
            break;
        }
    }
    let (path, case) = match crossing {
        None => {
            let mut vertices = vec![x.clone()];
            vertices.extend(prefix.vertices.iter().cloned());
            let mut colors = vec![complex.edge_color(x, y).unwrap()];
            colors.extend(prefix.colors.iter().copied());
            (Path { vertices, colors }, SurgeryCase::NeverCrosses)
        }
        Some(i) => {
            let z = prefix.vertices[i + 1].clone();
            let mut path = canonical_geodesic(complex, x, &z);
            path.vertices.extend(prefix.vertices[i + 2..].iter().cloned());
            path.colors.extend(prefix.colors[i + 1..].iter().copied());
            (path, SurgeryCase::Crosses { edge: i, z })
        }
    };
    if !is_geodesic(complex, &path)?.geodesic {
        return Err(Error::Inconsistent("surgery produced a non-geodesic".into()));
    }
    Ok(Surgery { path, case })
}
