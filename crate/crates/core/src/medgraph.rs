//! Finite median graphs given explicitly: validation, Θ-classes (the
//! hyperplanes of the cube complex they are the 1-skeleton of) and
//! halfspaces.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::complex::{Color, CubeComplex};
use crate::error::{Error, Result};
use crate::racg::json_field;

/// A finite simple graph with a basepoint. Edges are stored as `(u, v)` with
/// `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    basepoint: usize,
    colors: Option<Vec<Color>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: usize,
    edges: Vec<Vec<usize>>,
    #[serde(default)]
    basepoint: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<Vec<Color>>,
}

impl ExplicitGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)], basepoint: usize) -> Result<Self> {
        Self::build(vertex_count, edges, basepoint, None)
    }

    /// `colors[i]` colors `edges[i]`.
    pub fn with_colors(
        vertex_count: usize,
        edges: &[(usize, usize)],
        basepoint: usize,
        colors: Vec<Color>,
    ) -> Result<Self> {
        Self::build(vertex_count, edges, basepoint, Some(colors))
    }

    fn build(
        vertex_count: usize,
        edges: &[(usize, usize)],
        basepoint: usize,
        colors: Option<Vec<Color>>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::malformed("vertices", "graph needs at least one vertex"));
        }
        if basepoint >= vertex_count {
            return Err(Error::malformed(
                "basepoint",
                format!("{basepoint} is not a vertex (graph has {vertex_count})"),
            ));
        }
        if let Some(c) = &colors {
            if c.len() != edges.len() {
                return Err(Error::malformed(
                    "colors",
                    format!("{} colors for {} edges", c.len(), edges.len()),
                ));
            }
        }
        let mut tagged = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::malformed(
                    format!("edges[{i}]"),
                    format!("endpoint out of range 0..{vertex_count}"),
                ));
            }
            if u == v {
                return Err(Error::malformed(format!("edges[{i}]"), "loops are not allowed"));
            }
            tagged.push(((u.min(v), u.max(v)), colors.as_ref().map(|c| c[i])));
        }
        tagged.sort();
        for w in tagged.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::malformed(
                    "edges",
                    format!("duplicate edge {:?}", w[0].0),
                ));
            }
        }
        Ok(ExplicitGraph {
            vertex_count,
            edges: tagged.iter().map(|t| t.0).collect(),
            basepoint,
            colors: colors.map(|_| tagged.iter().map(|t| t.1.unwrap()).collect()),
        })
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges, 0)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges, 0)
    }

    /// The `d`-cube: vertices are bitmasks, edges flip one bit.
    pub fn hypercube(d: usize) -> Result<Self> {
        let n = 1usize << d;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..d {
                let w = v ^ (1 << b);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Self::new(n, &edges, 0)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::malformed(json_field(&e), e.to_string()))?;
        let mut edges = Vec::with_capacity(file.edges.len());
        for (i, e) in file.edges.iter().enumerate() {
            match e.as_slice() {
                &[u, v] => edges.push((u, v)),
                _ => {
                    return Err(Error::malformed(
                        format!("edges[{i}]"),
                        format!("expected a pair, found {} entries", e.len()),
                    ))
                }
            }
        }
        Self::build(file.vertices, &edges, file.basepoint, file.colors)
    }

    pub fn to_json_string(&self) -> String {
        let file = GraphFile {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| vec![u, v]).collect(),
            basepoint: self.basepoint,
            colors: self.colors.clone(),
        };
        serde_json::to_string(&file).expect("graph serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn colors(&self) -> Option<&[Color]> {
        self.colors.as_deref()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// All-pairs distances, row-major. Errors if the graph is disconnected.
    pub fn distance_matrix(&self) -> Result<Vec<u32>> {
        let n = self.vertex_count;
        let adj = self.adjacency();
        let mut dist = vec![u32::MAX; n * n];
        let mut queue = VecDeque::new();
        for src in 0..n {
            let row = &mut dist[src * n..(src + 1) * n];
            row[src] = 0;
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if row[w] == u32::MAX {
                        row[w] = row[u] + 1;
                        queue.push_back(w);
                    }
                }
            }
            if let Some(v) = row.iter().position(|&d| d == u32::MAX) {
                return Err(Error::Disconnected { vertex: v });
            }
        }
        Ok(dist)
    }
}

/// Outcome of [`validate_median`]. On failure, `witness` is the first triple
/// `u < v < w` (lexicographic) without a unique median, and `witness_medians`
/// its median set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MedianCheck {
    pub is_median: bool,
    pub witness: Option<(usize, usize, usize)>,
    pub witness_medians: Vec<usize>,
}

fn intervals(n: usize, dist: &[u32]) -> Vec<FixedBitSet> {
    let mut out = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let duv = dist[u * n + v];
            let mut bits = FixedBitSet::with_capacity(n);
            for x in 0..n {
                if dist[u * n + x] + dist[x * n + v] == duv {
                    bits.insert(x);
                }
            }
            out.push(bits);
        }
    }
    out
}

/// Checks that every vertex triple has exactly one median by intersecting the
/// three pairwise intervals. Cubic in the vertex count.
pub fn validate_median(g: &ExplicitGraph) -> Result<MedianCheck> {
    let n = g.vertex_count;
    let dist = g.distance_matrix()?;
    let iv = intervals(n, &dist);
    for u in 0..n {
        for v in u + 1..n {
            let uv = &iv[u * n + v];
            for w in v + 1..n {
                let mut common = uv.clone();
                common.intersect_with(&iv[v * n + w]);
                common.intersect_with(&iv[u * n + w]);
                if common.count_ones(..) != 1 {
                    return Ok(MedianCheck {
                        is_median: false,
                        witness: Some((u, v, w)),
                        witness_medians: common.ones().collect(),
                    });
                }
            }
        }
    }
    Ok(MedianCheck {
        is_median: true,
        witness: None,
        witness_medians: Vec::new(),
    })
}

/// Θ-classes of a median graph. Class indices follow the first edge (in
/// sorted edge order) of each class; `halves[c].0` contains the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaClasses {
    class_of_edge: Vec<usize>,
    halves: Vec<(Vec<usize>, Vec<usize>)>,
    far_side: Vec<FixedBitSet>,
}

impl ThetaClasses {
    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    pub fn class_of_edge(&self) -> &[usize] {
        &self.class_of_edge
    }

    pub fn edges_in_class(&self, class: usize) -> Vec<usize> {
        (0..self.class_of_edge.len())
            .filter(|&e| self.class_of_edge[e] == class)
            .collect()
    }

    pub fn halfspaces(&self, class: usize) -> Result<(&[usize], &[usize])> {
        self.halves
            .get(class)
            .map(|(a, b)| (a.as_slice(), b.as_slice()))
            .ok_or(Error::InvalidClass {
                class,
                count: self.halves.len(),
            })
    }
}

fn theta_from(g: &ExplicitGraph, dist: &[u32]) -> Result<ThetaClasses> {
    let n = g.vertex_count;
    let d = |a: usize, b: usize| dist[a * n + b];
    let m = g.edges.len();
    let mut class_of_edge = vec![usize::MAX; m];
    let mut classes = 0;
    for e in 0..m {
        if class_of_edge[e] != usize::MAX {
            continue;
        }
        let (u, v) = g.edges[e];
        for f in e..m {
            let (x, y) = g.edges[f];
            if d(u, x) + d(v, y) != d(u, y) + d(v, x) {
                if class_of_edge[f] != usize::MAX {
                    return Err(Error::Inconsistent(format!(
                        "Θ is not transitive at edges {e} and {f}"
                    )));
                }
                class_of_edge[f] = classes;
            }
        }
        classes += 1;
    }

    let adj = g.adjacency();
    let edge_index = |a: usize, b: usize| g.edges.binary_search(&(a.min(b), a.max(b))).unwrap();
    let mut halves = Vec::with_capacity(classes);
    let mut far_side = Vec::with_capacity(classes);
    for c in 0..classes {
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in std::iter::once(g.basepoint).chain(0..n) {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for &b in &adj[a] {
                    if comp[b] == usize::MAX && class_of_edge[edge_index(a, b)] != c {
                        comp[b] = count;
                        queue.push_back(b);
                    }
                }
            }
            count += 1;
        }
        if count != 2 {
            return Err(Error::Inconsistent(format!(
                "removing class {c} leaves {count} components"
            )));
        }
        let near: Vec<usize> = (0..n).filter(|&v| comp[v] == 0).collect();
        let far: Vec<usize> = (0..n).filter(|&v| comp[v] == 1).collect();
        let mut bits = FixedBitSet::with_capacity(n);
        far.iter().for_each(|&v| bits.insert(v));
        halves.push((near, far));
        far_side.push(bits);
    }
    Ok(ThetaClasses {
        class_of_edge,
        halves,
        far_side,
    })
}

/// Djoković–Winkler classes of a median graph.
pub fn theta_classes(g: &ExplicitGraph) -> Result<ThetaClasses> {
    Ok(MedianGraph::new(g.clone())?.theta)
}

/// A validated median graph with its distance matrix and Θ-classes; the
/// explicit [`CubeComplex`] provider. Vertices are indices, walls are class
/// indices, and uncolored edges take their class index as color.
#[derive(Clone, Debug)]
pub struct MedianGraph {
    graph: ExplicitGraph,
    dist: Vec<u32>,
    neighbors: Vec<Vec<(Color, usize)>>,
    theta: ThetaClasses,
}

impl MedianGraph {
    pub fn new(graph: ExplicitGraph) -> Result<Self> {
        let check = validate_median(&graph)?;
        if let Some(triple) = check.witness {
            return Err(Error::NotMedian {
                triple,
                medians: check.witness_medians.len(),
            });
        }
        let dist = graph.distance_matrix()?;
        let theta = theta_from(&graph, &dist)?;
        let mut neighbors = vec![Vec::new(); graph.vertex_count];
        for (i, &(u, v)) in graph.edges.iter().enumerate() {
            let color = match &graph.colors {
                Some(c) => c[i],
                None => theta.class_of_edge[i],
            };
            neighbors[u].push((color, v));
            neighbors[v].push((color, u));
        }
        neighbors.iter_mut().for_each(|list| list.sort());
        Ok(MedianGraph {
            graph,
            dist,
            neighbors,
            theta,
        })
    }

    pub fn graph(&self) -> &ExplicitGraph {
        &self.graph
    }

    pub fn theta(&self) -> &ThetaClasses {
        &self.theta
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count
    }

    pub fn halfspaces(&self, class: usize) -> Result<(&[usize], &[usize])> {
        self.theta.halfspaces(class)
    }

    fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.graph.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }
}

impl CubeComplex for MedianGraph {
    type Vertex = usize;
    type Wall = usize;

    fn distance(&self, u: &usize, v: &usize) -> usize {
        self.dist[u * self.graph.vertex_count + v] as usize
    }

    fn neighbors(&self, v: &usize) -> Vec<(Color, usize)> {
        self.neighbors[*v].clone()
    }

    fn edge_color(&self, u: &usize, v: &usize) -> Option<Color> {
        self.neighbors[*u]
            .iter()
            .find(|&&(_, w)| w == *v)
            .map(|&(c, _)| c)
    }

    fn wall_of_edge(&self, u: &usize, v: &usize) -> Result<usize> {
        self.edge_index(*u, *v)
            .map(|e| self.theta.class_of_edge[e])
            .ok_or_else(|| Error::NotAdjacent {
                from: u.to_string(),
                to: v.to_string(),
            })
    }

    fn walls_separating(&self, u: &usize, v: &usize) -> Vec<usize> {
        (0..self.theta.len())
            .filter(|&c| self.theta.far_side[c][*u] != self.theta.far_side[c][*v])
            .collect()
    }

    fn wall_side(&self, wall: &usize, v: &usize) -> bool {
        self.theta.far_side[*wall][*v]
    }

    fn format_vertex(&self, v: &usize) -> String {
        v.to_string()
    }

    fn format_wall(&self, class: &usize) -> String {
        class.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_examples() {
        assert!(validate_median(&ExplicitGraph::hypercube(3).unwrap()).unwrap().is_median);
        assert!(validate_median(&ExplicitGraph::cycle(4).unwrap()).unwrap().is_median);
        let c5 = validate_median(&ExplicitGraph::cycle(5).unwrap()).unwrap();
        assert!(!c5.is_median);
        assert_eq!(c5.witness, Some((0, 1, 3)));
        assert!(c5.witness_medians.is_empty());
    }

    #[test]
    fn k23_has_two_medians() {
        // K_{2,3}: the triple of the three-side has medians {0, 1}.
        let g = ExplicitGraph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)], 0).unwrap();
        let check = validate_median(&g).unwrap();
        assert_eq!(check.witness, Some((2, 3, 4)));
        assert_eq!(check.witness_medians, vec![0, 1]);
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = ExplicitGraph::new(3, &[(0, 1)], 0).unwrap();
        assert_eq!(validate_median(&g), Err(Error::Disconnected { vertex: 2 }));
    }

    #[test]
    fn theta_examples() {
        let c4 = theta_classes(&ExplicitGraph::cycle(4).unwrap()).unwrap();
        assert_eq!(c4.len(), 2);
        assert!((0..2).all(|c| c4.edges_in_class(c).len() == 2));
        let q3 = theta_classes(&ExplicitGraph::hypercube(3).unwrap()).unwrap();
        assert_eq!(q3.len(), 3);
        assert!((0..3).all(|c| q3.edges_in_class(c).len() == 4));
        let p3 = theta_classes(&ExplicitGraph::path(3).unwrap()).unwrap();
        assert_eq!(p3.len(), 2);
        assert!((0..2).all(|c| p3.edges_in_class(c).len() == 1));
        assert!(matches!(
            theta_classes(&ExplicitGraph::cycle(5).unwrap()),
            Err(Error::NotMedian { triple: (0, 1, 3), .. })
        ));
    }

    #[test]
    fn halfspace_examples() {
        // C4 edges sorted: (0,1) (0,3) (1,2) (2,3); class 0 = {01, 23}
        let c4 = MedianGraph::new(ExplicitGraph::cycle(4).unwrap()).unwrap();
        assert_eq!(c4.theta().edges_in_class(0), vec![0, 3]);
        assert_eq!(c4.halfspaces(0).unwrap(), (&[0, 3][..], &[1, 2][..]));

        // star tree with center 0: the edge to leaf 2 splits off {2}
        let tree = MedianGraph::new(ExplicitGraph::new(4, &[(0, 1), (0, 2), (0, 3)], 0).unwrap()).unwrap();
        assert_eq!(tree.halfspaces(1).unwrap(), (&[0, 1, 3][..], &[2][..]));

        let q3 = MedianGraph::new(ExplicitGraph::hypercube(3).unwrap()).unwrap();
        for c in 0..3 {
            let (a, b) = q3.halfspaces(c).unwrap();
            assert_eq!((a.len(), b.len()), (4, 4));
            assert!(a.contains(&0));
        }
        assert_eq!(
            q3.halfspaces(3).unwrap_err(),
            Error::InvalidClass { class: 3, count: 3 }
        );
    }

    #[test]
    fn json_errors_name_the_field() {
        let err = ExplicitGraph::from_json_str(r#"{"vertices":2,"edges":[[0,5]]}"#).unwrap_err();
        assert!(matches!(err, Error::Malformed { ref field, .. } if field == "edges[0]"));
        let err = ExplicitGraph::from_json_str(r#"{"vertices":2,"edges":[[0,1,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::Malformed { ref field, .. } if field == "edges[0]"));
        let err = ExplicitGraph::from_json_str(r#"{"vertices":2,"edges":[[0,1]],"basepoint":4}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Malformed { ref field, .. } if field == "basepoint"));
        let err = ExplicitGraph::from_json_str(r#"{"edges":[]}"#).unwrap_err();
        assert!(matches!(err, Error::Malformed { ref field, .. } if field == "vertices"));
        let g = ExplicitGraph::hypercube(2).unwrap();
        assert_eq!(ExplicitGraph::from_json_str(&g.to_json_string()).unwrap(), g);
    }

    #[test]
    fn provider_walls_match_distance() {
        let q3 = MedianGraph::new(ExplicitGraph::hypercube(3).unwrap()).unwrap();
        for u in 0..8 {
            for v in 0..8 {
                assert_eq!(q3.walls_separating(&u, &v).len(), q3.distance(&u, &v));
            }
        }
        assert_eq!(q3.wall_of_edge(&0, &1).unwrap(), q3.wall_of_edge(&6, &7).unwrap());
        assert!(q3.wall_of_edge(&0, &3).is_err());
    }
}
