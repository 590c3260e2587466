//! The view of a CAT(0) cube complex that geometry needs: the 1-skeleton with
//! colored edges, exact ℓ¹ distances, and walls with a side predicate.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::racg::{DefiningGraph, GroupElement, Hyperplane};

pub type Color = usize;

pub trait CubeComplex: Sync {
    type Vertex: Clone + Eq + Ord + Hash + Debug + Send + Sync;
    type Wall: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn distance(&self, u: &Self::Vertex, v: &Self::Vertex) -> usize;

    /// Neighbors of `v` with the color of the connecting edge, sorted by color.
    fn neighbors(&self, v: &Self::Vertex) -> Vec<(Color, Self::Vertex)>;

    /// Color of the edge `u -> v`, or `None` if they are not adjacent.
    fn edge_color(&self, u: &Self::Vertex, v: &Self::Vertex) -> Option<Color>;

    fn wall_of_edge(&self, u: &Self::Vertex, v: &Self::Vertex) -> Result<Self::Wall>;

    /// All walls separating `u` and `v`; as many as `distance(u, v)`.
    fn walls_separating(&self, u: &Self::Vertex, v: &Self::Vertex) -> Vec<Self::Wall>;

    /// Which halfspace of `wall` contains `v`. Sides are only meaningful
    /// relative to each other.
    fn wall_side(&self, wall: &Self::Wall, v: &Self::Vertex) -> bool;

    fn format_vertex(&self, v: &Self::Vertex) -> String;

    fn format_wall(&self, wall: &Self::Wall) -> String;

    fn separates(&self, wall: &Self::Wall, u: &Self::Vertex, v: &Self::Vertex) -> bool {
        self.wall_side(wall, u) != self.wall_side(wall, v)
    }
}

impl CubeComplex for DefiningGraph {
    type Vertex = GroupElement;
    type Wall = Hyperplane;

    fn distance(&self, u: &GroupElement, v: &GroupElement) -> usize {
        DefiningGraph::distance(self, u, v)
    }

    fn neighbors(&self, v: &GroupElement) -> Vec<(Color, GroupElement)> {
        self.generators()
            .map(|s| (s as Color, self.multiply(v, s)))
            .collect()
    }

    fn edge_color(&self, u: &GroupElement, v: &GroupElement) -> Option<Color> {
        let step = self.compose(&self.invert(u), v);
        match step.word() {
            [s] => Some(*s as Color),
            _ => None,
        }
    }

    fn wall_of_edge(&self, u: &GroupElement, v: &GroupElement) -> Result<Hyperplane> {
        let s = self.edge_color(u, v).ok_or_else(|| Error::NotAdjacent {
            from: self.format(u),
            to: self.format(v),
        })?;
        DefiningGraph::wall_of_edge(self, u, s as u8)
    }

    fn walls_separating(&self, u: &GroupElement, v: &GroupElement) -> Vec<Hyperplane> {
        DefiningGraph::walls_separating(self, u, v)
    }

    fn wall_side(&self, wall: &Hyperplane, v: &GroupElement) -> bool {
        DefiningGraph::wall_side(self, wall, v)
    }

    fn format_vertex(&self, v: &GroupElement) -> String {
        self.format(v)
    }

    /// A wall is named by its reflection.
    fn format_wall(&self, wall: &Hyperplane) -> String {
        self.format(wall.reflection())
    }
}
