//! Least recurring color strings along geodesics toward a boundary point, and
//! the normalized vertex sets they pick out, at finite depth.
//!
//! The group acts freely and transitively on vertices, so the basepoint is
//! the identity and the color of the edge `g → gs` is the generator `s`.
//! Vertices are ordered by length and then ShortLex, which is the order of
//! [`GroupElement`].

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::boundary::{materialize, RaySpec};
use crate::complex::Color;
use crate::error::{Error, Result};
use crate::geometry::{IntervalDag, Path};
use crate::racg::{DefiningGraph, GroupElement};

/// Colors of edges `m .. m + n` of `path`.
pub fn color_string<V: Clone + Eq>(path: &Path<V>, m: usize, n: usize) -> Result<Vec<Color>> {
    match m.checked_add(n) {
        Some(end) if end <= path.len() => Ok(path.colors()[m..end].to_vec()),
        _ => Err(Error::OutOfRange {
            what: format!("colors {m}..{m}+{n} of a path with {} edges", path.len()),
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HfParams {
    /// Depth of the farthest ray vertex used as a target.
    pub depth: usize,
    /// Distinct distances at which a string must occur to count as recurring.
    pub threshold: usize,
    pub vertex_cap: usize,
}

impl HfParams {
    pub const DEFAULT_THRESHOLD: usize = 3;

    pub fn new(depth: usize, vertex_cap: usize) -> Self {
        HfParams {
            depth,
            threshold: Self::DEFAULT_THRESHOLD,
            vertex_cap,
        }
    }
}

/// Pairs `(v, s)` where `s` is read from `v` along a geodesic from the
/// identity toward the ray, for strings up to length `n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxS {
    pub depth: usize,
    pub n_max: usize,
    /// Target depths `ω(N)` every recorded geodesic reaches.
    pub targets: (usize, usize),
    /// Length of the nearest target; occurrences near it are frontier
    /// witnesses.
    pub frontier: usize,
    pub occurrences: BTreeMap<Vec<Color>, BTreeSet<GroupElement>>,
    /// Always false: the pairs are read off interval DAGs rather than from
    /// enumerated geodesics, so no enumeration cap applies.
    pub capped: bool,
}

impl ApproxS {
    pub fn contains(&self, v: &GroupElement, s: &[Color]) -> bool {
        self.occurrences.get(s).is_some_and(|t| t.contains(v))
    }

    /// Distances from the identity at which `s` occurs.
    pub fn distances(&self, s: &[Color]) -> BTreeSet<usize> {
        self.occurrences
            .get(s)
            .map(|t| t.iter().map(GroupElement::len).collect())
            .unwrap_or_default()
    }

    pub fn pair_count(&self) -> usize {
        self.occurrences.values().map(BTreeSet::len).sum()
    }
}

/// Window of target depths: one full period ending at `depth`.
fn target_window(spec: &RaySpec, depth: usize) -> Result<(usize, usize)> {
    let w = spec.period().len();
    if depth < w {
        return Err(Error::DepthTooSmall { depth, needed: w });
    }
    Ok((depth + 1 - w, depth))
}

/// Reads `(vertex, string)` pairs off the interval from the identity to
/// `ω(depth)`, keeping a segment only when its endpoint also lies between the
/// identity and every other target `ω(N)` of the trailing window.
pub fn approx_s(graph: &DefiningGraph, spec: &RaySpec, n_max: usize, params: &HfParams) -> Result<ApproxS> {
    let (lo, hi) = target_window(spec, params.depth)?;
    let ray = materialize(graph, spec, hi)?;
    let targets = &ray.vertices()[lo..=hi];
    let origin = GroupElement::identity();
    let dag = IntervalDag::build(graph, &origin, &targets[targets.len() - 1], params.vertex_cap)?;
    let spans: Vec<usize> = targets.iter().map(GroupElement::len).collect();
    let ok: Vec<bool> = dag
        .vertices()
        .iter()
        .map(|v| {
            targets
                .iter()
                .zip(&spans)
                .all(|(w, &span)| v.len() + graph.distance(v, w) == span)
        })
        .collect();
    let mut occurrences: BTreeMap<Vec<Color>, BTreeSet<GroupElement>> = BTreeMap::new();
    let mut stack: Vec<(usize, Vec<Color>)> = Vec::new();
    for (i, v) in dag.vertices().iter().enumerate() {
        stack.push((i, Vec::new()));
        while let Some((node, s)) = stack.pop() {
            if s.len() == n_max {
                continue;
            }
            for &(color, next) in dag.successors(node) {
                if !ok[next] {
                    continue;
                }
                let mut longer = s.clone();
                longer.push(color);
                occurrences.entry(longer.clone()).or_default().insert(v.clone());
                stack.push((next, longer));
            }
        }
    }
    Ok(ApproxS {
        depth: params.depth,
        n_max,
        targets: (lo, hi),
        frontier: spans[0],
        occurrences,
        capped: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeastStringProfile {
    pub n: usize,
    pub s: Vec<Color>,
    /// Vertices where `s` is read, within the computed depth.
    pub t: BTreeSet<GroupElement>,
    /// Least element of `t`.
    pub v: GroupElement,
    pub k: usize,
    /// Occurrence distances of every length-`n` string extending the previous
    /// profile's string.
    pub evidence: BTreeMap<Vec<Color>, BTreeSet<usize>>,
}

/// Slack allowed between the last occurrence of a recurring string and the
/// frontier.
pub fn frontier_slack(spec: &RaySpec) -> usize {
    2 * spec.period().len()
}

/// The least recurring string of each length `1..=n_max`.
///
/// A string recurs when it occurs at `threshold` distinct distances, one of
/// them within the frontier slack of the deepest possible start. Each string
/// is searched among extensions of the previous one.
pub fn least_strings(
    graph: &DefiningGraph,
    spec: &RaySpec,
    n_max: usize,
    params: &HfParams,
) -> Result<Vec<LeastStringProfile>> {
    let approx = approx_s(graph, spec, n_max, params)?;
    least_strings_from(&approx, spec, params.threshold)
}

pub fn least_strings_from(approx: &ApproxS, spec: &RaySpec, threshold: usize) -> Result<Vec<LeastStringProfile>> {
    let slack = frontier_slack(spec);
    let mut profiles: Vec<LeastStringProfile> = Vec::with_capacity(approx.n_max);
    for n in 1..=approx.n_max {
        let prefix: &[Color] = profiles.last().map(|p| p.s.as_slice()).unwrap_or(&[]);
        let evidence: BTreeMap<Vec<Color>, BTreeSet<usize>> = approx
            .occurrences
            .keys()
            .filter(|s| s.len() == n && s.starts_with(prefix))
            .map(|s| (s.clone(), approx.distances(s)))
            .collect();
        let reach = approx.frontier.saturating_sub(n + slack);
        let chosen = evidence.iter().find(|(_, d)| {
            d.len() >= threshold && d.last().is_some_and(|&far| far >= reach)
        });
        let Some((s, _)) = chosen else {
            return Err(Error::NoRecurringString {
                n,
                depth: approx.depth,
            });
        };
        let s = s.clone();
        let t = approx.occurrences[&s].clone();
        let v = t.first().expect("recurring strings occur").clone();
        profiles.push(LeastStringProfile {
            n,
            k: v.len(),
            s,
            t,
            v,
            evidence,
        });
    }
    Ok(profiles)
}

/// `H_n = g·T_n` cut down to `ball(radius)`, with `g = v_n⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub n: usize,
    pub depth: usize,
    pub radius: usize,
    pub g: GroupElement,
    /// Sorted; always contains the identity.
    pub members: Vec<GroupElement>,
}

impl Fingerprint {
    /// Normal forms of the members in order, one per line. The identity is
    /// the empty line.
    pub fn encoding(&self, graph: &DefiningGraph) -> String {
        self.members
            .iter()
            .map(|m| graph.format(m))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn contains(&self, v: &GroupElement) -> bool {
        self.members.binary_search(v).is_ok()
    }
}

pub fn fingerprint_from(
    graph: &DefiningGraph,
    spec: &RaySpec,
    profile: &LeastStringProfile,
    approx: &ApproxS,
    radius: usize,
) -> Result<Fingerprint> {
    // members of T are complete up to the frontier minus the string length
    let needed = profile.k + radius + profile.n + frontier_slack(spec);
    if needed > approx.frontier {
        return Err(Error::DepthTooSmall {
            depth: approx.depth,
            needed: approx.depth + needed - approx.frontier,
        });
    }
    let g = graph.invert(&profile.v);
    let members: BTreeSet<GroupElement> = profile
        .t
        .iter()
        .map(|t| graph.compose(&g, t))
        .filter(|h| h.len() <= radius)
        .collect();
    Ok(Fingerprint {
        n: profile.n,
        depth: approx.depth,
        radius,
        g,
        members: members.into_iter().collect(),
    })
}

pub fn fingerprint(
    graph: &DefiningGraph,
    spec: &RaySpec,
    n: usize,
    radius: usize,
    params: &HfParams,
) -> Result<Fingerprint> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "fingerprints start at string length 1".into(),
        });
    }
    let approx = approx_s(graph, spec, n, params)?;
    let profiles = least_strings_from(&approx, spec, params.threshold)?;
    fingerprint_from(graph, spec, &profiles[n - 1], &approx, radius)
}

/// Fingerprints for `n = 1..=n_max` from one pass over the interval.
pub fn fingerprints(
    graph: &DefiningGraph,
    spec: &RaySpec,
    n_max: usize,
    radius: usize,
    params: &HfParams,
) -> Result<Vec<Fingerprint>> {
    let approx = approx_s(graph, spec, n_max, params)?;
    least_strings_from(&approx, spec, params.threshold)?
        .iter()
        .map(|p| fingerprint_from(graph, spec, p, &approx, radius))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// `g·H₁` and `H₂` agree on the ball of radius `R - search_radius`.
    Related { g: GroupElement },
    Unrelated { search_radius: usize },
}

impl Comparison {
    pub fn is_related(&self) -> bool {
        matches!(self, Comparison::Related { .. })
    }
}

/// Looks for `g` with `|g| ≤ search_radius` and `g·H₁ = H₂` on the ball of
/// radius `R - search_radius`, where both sets are fully known. Since both
/// sets contain the identity, `g` is the inverse of a member of `H₁`.
///
/// Relatedness is necessary for the rays to define the same boundary point,
/// not sufficient.
pub fn compare_fingerprints(
    graph: &DefiningGraph,
    fp1: &Fingerprint,
    fp2: &Fingerprint,
    search_radius: usize,
) -> Result<Comparison> {
    if fp1.n != fp2.n || fp1.radius != fp2.radius {
        return Err(Error::Mismatch(format!(
            "fingerprints at (n={}, R={}) and (n={}, R={})",
            fp1.n, fp1.radius, fp2.n, fp2.radius
        )));
    }
    if search_radius > fp1.radius {
        return Err(Error::OutOfRange {
            what: format!("search radius {search_radius} exceeds fingerprint radius {}", fp1.radius),
        });
    }
    let inner = fp1.radius - search_radius;
    let target: Vec<&GroupElement> = fp2.members.iter().filter(|h| h.len() <= inner).collect();
    let mut candidates: Vec<GroupElement> = fp1
        .members
        .iter()
        .filter(|h| h.len() <= search_radius)
        .map(|h| graph.invert(h))
        .collect();
    candidates.sort();
    for g in candidates {
        let mut moved: Vec<GroupElement> = fp1
            .members
            .iter()
            .map(|h| graph.compose(&g, h))
            .filter(|h| h.len() <= inner)
            .collect();
        moved.sort();
        if moved.len() == target.len() && moved.iter().zip(&target).all(|(a, b)| a == *b) {
            return Ok(Comparison::Related { g });
        }
    }
    Ok(Comparison::Unrelated { search_radius })
}

/// `K = |ball(6δ)|`: a bound on how many distinct fingerprints one shift
/// class can hold. Counted, not materialized.
pub fn k_bound(graph: &DefiningGraph, delta: usize) -> Result<u64> {
    graph.ball_size(6 * delta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KBoundCheck {
    pub k: u64,
    pub distinct: usize,
    /// Distinct fingerprints grouped by relatedness, as indices into the
    /// input (first occurrence of each distinct set).
    pub classes: Vec<Vec<usize>>,
    pub largest_class: usize,
    pub respected: bool,
}

/// Groups distinct fingerprints (all at the same `n` and `R`) into classes of
/// the relation generated by [`compare_fingerprints`] and checks every class
/// against `k`.
pub fn k_bound_check(
    graph: &DefiningGraph,
    fps: &[Fingerprint],
    search_radius: usize,
    k: u64,
) -> Result<KBoundCheck> {
    let mut distinct: Vec<usize> = Vec::new();
    for (i, fp) in fps.iter().enumerate() {
        if !distinct.iter().any(|&j| fps[j].members == fp.members) {
            distinct.push(i);
        }
    }
    let mut parent: Vec<usize> = (0..distinct.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for a in 0..distinct.len() {
        for b in a + 1..distinct.len() {
            let (fa, fb) = (&fps[distinct[a]], &fps[distinct[b]]);
            let related = compare_fingerprints(graph, fa, fb, search_radius)?.is_related()
                || compare_fingerprints(graph, fb, fa, search_radius)?.is_related();
            if related {
                let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..distinct.len() {
        let r = root(&mut parent, a);
        groups.entry(r).or_default().push(distinct[a]);
    }
    let classes: Vec<Vec<usize>> = groups.into_values().collect();
    let largest_class = classes.iter().map(Vec::len).max().unwrap_or(0);
    Ok(KBoundCheck {
        k,
        distinct: distinct.len(),
        respected: largest_class as u64 <= k,
        classes,
        largest_class,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZVerdict {
    /// `k_n` did not grow over the computed range.
    BoundedWithinDepth,
    Increasing,
}

/// Finite-depth behavior of `k_n`. Says nothing about the limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZDiagnostic {
    pub ks: Vec<usize>,
    pub verdict: ZVerdict,
}

pub fn z_diagnostic(profiles: &[LeastStringProfile]) -> ZDiagnostic {
    let ks: Vec<usize> = profiles.iter().map(|p| p.k).collect();
    let verdict = match (ks.first(), ks.last()) {
        (Some(a), Some(b)) if b > a => ZVerdict::Increasing,
        _ => ZVerdict::BoundedWithinDepth,
    };
    ZDiagnostic { ks, verdict }
}
