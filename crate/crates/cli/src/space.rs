use std::fs;
use std::path::{Path, PathBuf};

use cubemedian::boundary::RaySpec;
use cubemedian::{CubeComplex, DefiningGraph, Error, ExplicitGraph, GroupElement, MedianGraph};

use crate::args::Common;
use crate::cache::BallCache;
use crate::error::{CliError, CliResult};

pub fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file<T>(path: &Path, parsed: cubemedian::Result<T>) -> CliResult<T> {
    parsed.map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub enum Loaded {
    Racg(DefiningGraph),
    Median(MedianGraph),
}

pub fn load(common: &Common) -> CliResult<Loaded> {
    match (&common.presentation, &common.graph) {
        (Some(p), _) => Ok(Loaded::Racg(load_presentation(p)?)),
        (None, Some(g)) => {
            let explicit = load_explicit(g)?;
            Ok(Loaded::Median(in_file(g, MedianGraph::new(explicit))?))
        }
        (None, None) => Err(CliError::Usage("one of --presentation or --graph is required".into())),
    }
}

pub fn load_presentation(path: &Path) -> CliResult<DefiningGraph> {
    in_file(path, DefiningGraph::from_json_str(&read(path)?))
}

pub fn load_explicit(path: &Path) -> CliResult<ExplicitGraph> {
    in_file(path, ExplicitGraph::from_json_str(&read(path)?))
}

/// The presentation, for commands that only make sense on a group.
pub fn require_racg(common: &Common, command: &str) -> CliResult<DefiningGraph> {
    match &common.presentation {
        Some(p) => load_presentation(p),
        None => Err(CliError::Usage(format!("{command} needs --presentation"))),
    }
}

pub fn load_spec(graph: &DefiningGraph, path: &PathBuf) -> CliResult<RaySpec> {
    in_file(path, RaySpec::from_json_str(graph, &read(path)?))
}

/// What the commands need beyond [`CubeComplex`]: parsing vertices from the
/// command line and listing a ball around the origin.
pub trait Space: CubeComplex {
    fn parse_vertex(&self, text: &str) -> cubemedian::Result<Self::Vertex>;

    fn origin(&self) -> Self::Vertex;

    /// Vertices within `radius` of the origin, nearest first.
    fn ball_vertices(&self, radius: usize, cap: usize, cache: Option<&BallCache>) -> CliResult<Vec<Self::Vertex>>;

    /// Vertex name used in reports and drawings.
    fn label(&self, v: &Self::Vertex) -> String {
        self.format_vertex(v)
    }
}

impl Space for DefiningGraph {
    fn parse_vertex(&self, text: &str) -> cubemedian::Result<GroupElement> {
        self.parse_element(text)
    }

    fn origin(&self) -> GroupElement {
        GroupElement::identity()
    }

    fn ball_vertices(&self, radius: usize, cap: usize, cache: Option<&BallCache>) -> CliResult<Vec<GroupElement>> {
        let ball = match cache {
            Some(c) => c.ball(self, radius, cap)?,
            None => self.ball(radius, cap)?,
        };
        Ok(ball.vertices().to_vec())
    }
}

impl Space for MedianGraph {
    fn parse_vertex(&self, text: &str) -> cubemedian::Result<usize> {
        let v: usize = text
            .trim()
            .parse()
            .map_err(|_| Error::malformed("vertex", format!("expected a vertex index, got {text:?}")))?;
        if v >= self.vertex_count() {
            return Err(Error::OutOfRange {
                what: format!("vertex {v} (graph has {} vertices)", self.vertex_count()),
            });
        }
        Ok(v)
    }

    fn origin(&self) -> usize {
        self.graph().basepoint()
    }

    fn ball_vertices(&self, radius: usize, cap: usize, _cache: Option<&BallCache>) -> CliResult<Vec<usize>> {
        let base = self.origin();
        let mut within: Vec<(usize, usize)> = (0..self.vertex_count())
            .map(|v| (self.distance(&base, &v), v))
            .filter(|&(d, _)| d <= radius)
            .collect();
        if within.len() > cap {
            return Err(Error::ResourceCap {
                what: "ball materialization",
                limit: cap,
            }
            .into());
        }
        within.sort();
        Ok(within.into_iter().map(|(_, v)| v).collect())
    }
}

pub fn parse_flag<S: Space>(space: &S, flag: &'static str, text: &str) -> CliResult<S::Vertex> {
    space
        .parse_vertex(text)
        .map_err(|source| CliError::Arg { flag, source })
}
