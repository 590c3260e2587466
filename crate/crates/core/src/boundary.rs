//! Boundary points given by eventually periodic geodesic rays, and the
//! intervals `Geo(x, η)` toward them cut down to finite balls.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::Color;
use crate::error::{Error, Result};
use crate::geometry::{is_geodesic, Path};
use crate::racg::{json_field, DefiningGraph, Generator, GroupElement};

/// Deepest ray vertex any query may ask for.
pub const MAX_RAY_DEPTH: usize = 1 << 16;

/// A ray starting at `base`, reading `preperiod` once and then `period`
/// forever.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RaySpec {
    base: GroupElement,
    preperiod: Vec<Generator>,
    period: Vec<Generator>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RaySpecFile {
    base: String,
    #[serde(default)]
    preperiod: Vec<String>,
    period: Vec<String>,
}

impl RaySpec {
    pub fn new(
        graph: &DefiningGraph,
        base: GroupElement,
        preperiod: Vec<Generator>,
        period: Vec<Generator>,
    ) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidRay {
                reason: "period is empty".into(),
            });
        }
        let count = graph.generator_count();
        for &s in base.word().iter().chain(&preperiod).chain(&period) {
            if s as usize >= count {
                return Err(Error::InvalidGenerator {
                    index: s as usize,
                    count,
                });
            }
        }
        Ok(RaySpec {
            base,
            preperiod,
            period,
        })
    }

    /// Parses `base`, `preperiod` and `period` as symbol words.
    pub fn parse(graph: &DefiningGraph, base: &str, preperiod: &str, period: &str) -> Result<Self> {
        RaySpec::new(
            graph,
            graph.parse_element(base)?,
            graph.parse_word(preperiod)?,
            graph.parse_word(period)?,
        )
    }

    pub fn from_json_str(graph: &DefiningGraph, text: &str) -> Result<Self> {
        let file: RaySpecFile =
            serde_json::from_str(text).map_err(|e| Error::malformed(json_field(&e), e.to_string()))?;
        let base = graph
            .parse_element(&file.base)
            .map_err(|e| Error::malformed("base", e.to_string()))?;
        let letters = |field: &str, syms: &[String]| -> Result<Vec<Generator>> {
            syms.iter()
                .enumerate()
                .map(|(i, s)| {
                    graph
                        .symbol(s)
                        .map_err(|e| Error::malformed(format!("{field}[{i}]"), e.to_string()))
                })
                .collect()
        };
        let preperiod = letters("preperiod", &file.preperiod)?;
        let period = letters("period", &file.period)?;
        if period.is_empty() {
            return Err(Error::malformed("period", "period must be non-empty"));
        }
        RaySpec::new(graph, base, preperiod, period)
    }

    pub fn to_json_string(&self, graph: &DefiningGraph) -> String {
        let names = |w: &[Generator]| w.iter().map(|&s| graph.name(s).to_string()).collect();
        let file = RaySpecFile {
            base: graph.format(&self.base),
            preperiod: names(&self.preperiod),
            period: names(&self.period),
        };
        serde_json::to_string(&file).expect("ray spec serializes")
    }

    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn preperiod(&self) -> &[Generator] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Generator] {
        &self.period
    }

    /// Color of edge `t` (from vertex `t` to vertex `t + 1`).
    pub fn color_at(&self, t: usize) -> Generator {
        match self.preperiod.get(t) {
            Some(&s) => s,
            None => self.period[(t - self.preperiod.len()) % self.period.len()],
        }
    }

    /// The same ray started one step later.
    pub fn tail(&self, graph: &DefiningGraph) -> RaySpec {
        let first = self.color_at(0);
        let base = graph.multiply(&self.base, first);
        if self.preperiod.is_empty() {
            let mut period = self.period[1..].to_vec();
            period.push(first);
            RaySpec {
                base,
                preperiod: Vec::new(),
                period,
            }
        } else {
            RaySpec {
                base,
                preperiod: self.preperiod[1..].to_vec(),
                period: self.period.clone(),
            }
        }
    }

    /// The ray `g·ω`; colors are unchanged since the coloring is invariant.
    pub fn translate(&self, graph: &DefiningGraph, g: &GroupElement) -> RaySpec {
        RaySpec {
            base: graph.compose(g, &self.base),
            preperiod: self.preperiod.clone(),
            period: self.period.clone(),
        }
    }
}

/// Vertices `ω(0), ..., ω(n)` without any checks.
fn ray_vertices(graph: &DefiningGraph, spec: &RaySpec, n: usize) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(spec.base.clone());
    for t in 0..n {
        let next = graph.multiply(&out[t], spec.color_at(t));
        out.push(next);
    }
    out
}

fn check_depth(n: usize) -> Result<()> {
    if n > MAX_RAY_DEPTH {
        return Err(Error::ResourceCap {
            what: "ray depth",
            limit: MAX_RAY_DEPTH,
        });
    }
    Ok(())
}

/// The first `n` edges of the ray.
pub fn materialize(graph: &DefiningGraph, spec: &RaySpec, n: usize) -> Result<Path<GroupElement>> {
    check_depth(n)?;
    let colors: Vec<Color> = (0..n).map(|t| spec.color_at(t) as Color).collect();
    Path::follow(graph, spec.base.clone(), &colors)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayCertificate {
    pub valid: bool,
    pub depth_checked: usize,
    /// Length of the shortest non-geodesic prefix.
    pub failing_prefix: Option<usize>,
    /// `|period^k|` for `k = 1..=cert_power`.
    pub power_lengths: Vec<usize>,
    /// Smallest `k` with `|period^k| < k·|period|`.
    pub failing_power: Option<usize>,
}

/// Checks that the first `depth_cap` edges form a geodesic and that the
/// period word stays reduced up to its `cert_power`-th power.
pub fn validate_ray_spec(
    graph: &DefiningGraph,
    spec: &RaySpec,
    depth_cap: usize,
    cert_power: usize,
) -> Result<RayCertificate> {
    let path = materialize(graph, spec, depth_cap)?;
    let failing_prefix = is_geodesic(graph, &path)?.repeated.map(|(_, edge)| edge + 1);
    let mut power = Vec::with_capacity(spec.period.len() * cert_power);
    let mut power_lengths = Vec::with_capacity(cert_power);
    let mut failing_power = None;
    for k in 1..=cert_power {
        power.extend_from_slice(&spec.period);
        let len = graph.normalize(&power)?.len();
        if len < power.len() && failing_power.is_none() {
            failing_power = Some(k);
        }
        power_lengths.push(len);
    }
    Ok(RayCertificate {
        valid: failing_prefix.is_none() && failing_power.is_none(),
        depth_checked: depth_cap,
        failing_prefix,
        power_lengths,
        failing_power,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TravelVerdict {
    Same,
    Diverged { at: usize },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FellowTravel {
    #[serde(flatten)]
    pub verdict: TravelVerdict,
    pub max_distance: usize,
    pub threshold: usize,
    pub distances: Vec<usize>,
}

/// Compares `ω1(t)` and `ω2(t)` for `t ≤ depth`.
///
/// Rays to the same boundary point stay `2δ` apart once their starting
/// points agree; for distinct starting points the allowance grows by their
/// distance. Divergence needs the distance above the allowance and
/// non-decreasing over the last `window` steps.
pub fn fellow_travel(
    graph: &DefiningGraph,
    spec1: &RaySpec,
    spec2: &RaySpec,
    depth: usize,
    delta: usize,
    window: usize,
) -> Result<FellowTravel> {
    check_depth(depth)?;
    let (w1, w2) = (ray_vertices(graph, spec1, depth), ray_vertices(graph, spec2, depth));
    let distances: Vec<usize> = w1.iter().zip(&w2).map(|(a, b)| graph.distance(a, b)).collect();
    let threshold = 2 * delta + distances[0];
    let max_distance = *distances.iter().max().unwrap();
    let verdict = if max_distance <= threshold {
        TravelVerdict::Same
    } else {
        let at = distances.iter().position(|&d| d > threshold).unwrap();
        let tail = &distances[distances.len().saturating_sub(window.max(1))..];
        let rising = tail.windows(2).all(|p| p[0] <= p[1]);
        if rising && *tail.last().unwrap() > threshold {
            TravelVerdict::Diverged { at }
        } else {
            TravelVerdict::Inconclusive
        }
    };
    Ok(FellowTravel {
        verdict,
        max_distance,
        threshold,
        distances,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    /// Exact betweenness toward every window target.
    Strict,
    /// Betweenness up to a defect of `2δ`.
    Slack,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoParams {
    pub radius: usize,
    /// First target depth `n₀`.
    pub start: usize,
    pub window: usize,
    pub delta: usize,
    pub tier: Tier,
}

impl GeoParams {
    pub const DEFAULT_WINDOW: usize = 4;

    /// Extra depth past the radius required of the first target.
    pub fn slack(delta: usize) -> usize {
        2 * delta + 2
    }

    /// Defaults with the first target placed `slack` beyond the ball around
    /// `x`, measured from the ray's base.
    pub fn for_center(
        graph: &DefiningGraph,
        x: &GroupElement,
        spec: &RaySpec,
        radius: usize,
        delta: usize,
        tier: Tier,
    ) -> Self {
        GeoParams {
            radius,
            start: radius + graph.distance(x, &spec.base) + Self::slack(delta),
            window: Self::DEFAULT_WINDOW,
            delta,
            tier,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoSetResult {
    pub members: BTreeSet<GroupElement>,
    pub radius: usize,
    pub window: (usize, usize),
    /// Candidates that pass for some window targets but not all.
    pub unstable: BTreeSet<GroupElement>,
    pub tier: Tier,
}

/// Candidate set `x·ball(R)` in ShortLex order of the offsets.
fn translated_ball(
    graph: &DefiningGraph,
    x: &GroupElement,
    radius: usize,
    vertex_cap: usize,
) -> Result<Vec<GroupElement>> {
    Ok(graph
        .ball(radius, vertex_cap)?
        .vertices()
        .iter()
        .map(|g| graph.compose(x, g))
        .collect())
}

fn classify(
    graph: &DefiningGraph,
    x: &GroupElement,
    candidates: &[GroupElement],
    targets: &[GroupElement],
    tier: Tier,
    delta: usize,
) -> (BTreeSet<GroupElement>, BTreeSet<GroupElement>) {
    let allowed = match tier {
        Tier::Strict => 0,
        Tier::Slack => 2 * delta,
    };
    let spans: Vec<usize> = targets.iter().map(|w| graph.distance(x, w)).collect();
    let mut members = BTreeSet::new();
    let mut unstable = BTreeSet::new();
    for y in candidates {
        let dxy = graph.distance(x, y);
        let hits = targets
            .iter()
            .zip(&spans)
            .filter(|(w, &span)| dxy + graph.distance(y, w) - span <= allowed)
            .count();
        if hits == targets.len() {
            members.insert(y.clone());
        } else if hits > 0 {
            unstable.insert(y.clone());
        }
    }
    (members, unstable)
}

fn window_targets(graph: &DefiningGraph, spec: &RaySpec, start: usize, window: usize) -> Result<Vec<GroupElement>> {
    let end = start + window;
    if end > MAX_RAY_DEPTH {
        return Err(Error::InvalidWindow {
            start,
            end,
            reason: format!("rays are materialized to depth {MAX_RAY_DEPTH} at most"),
        });
    }
    Ok(ray_vertices(graph, spec, end).split_off(start))
}

/// Vertices within `radius` of `x` lying between `x` and the ray's
/// vertices `ω(n)` for every `n` in `[start, start + window]`.
pub fn geo_set(
    graph: &DefiningGraph,
    x: &GroupElement,
    spec: &RaySpec,
    params: &GeoParams,
    vertex_cap: usize,
) -> Result<GeoSetResult> {
    let needed = params.radius + GeoParams::slack(params.delta);
    if params.start < needed {
        return Err(Error::InvalidWindow {
            start: params.start,
            end: params.start + params.window,
            reason: format!("window must start at depth {needed} or later"),
        });
    }
    let targets = window_targets(graph, spec, params.start, params.window)?;
    let candidates = translated_ball(graph, x, params.radius, vertex_cap)?;
    let (members, unstable) = classify(graph, x, &candidates, &targets, params.tier, params.delta);
    Ok(GeoSetResult {
        members,
        radius: params.radius,
        window: (params.start, params.start + params.window),
        unstable,
        tier: params.tier,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoDiffConfig {
    pub delta: usize,
    pub window: usize,
    pub tier: Tier,
    /// Consecutive radii with equal `|∆|` needed to call the sizes stable.
    pub stabilization: usize,
}

impl GeoDiffConfig {
    pub fn new(delta: usize, tier: Tier) -> Self {
        GeoDiffConfig {
            delta,
            window: GeoParams::DEFAULT_WINDOW,
            tier,
            stabilization: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoDiffRow {
    pub radius: usize,
    pub difference: BTreeSet<GroupElement>,
    pub unstable: usize,
}

impl GeoDiffRow {
    pub fn size(&self) -> usize {
        self.difference.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DiffVerdict {
    Stabilized { from: usize, size: usize },
    NotStabilized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoDiffReport {
    pub rows: Vec<GeoDiffRow>,
    pub verdict: DiffVerdict,
    /// Whether `|∆(R)|` never decreased.
    pub monotone: bool,
}

impl GeoDiffReport {
    pub fn sizes(&self) -> Vec<usize> {
        self.rows.iter().map(GeoDiffRow::size).collect()
    }
}

/// `|Geo(x) ∆ Geo(y)|` restricted to `ball(x, R)` for `R = 1..=rmax`.
///
/// Both sets are evaluated on the same candidates and the same window of
/// ray targets, starting past both points.
pub fn geo_diff_experiment(
    graph: &DefiningGraph,
    x: &GroupElement,
    y: &GroupElement,
    spec: &RaySpec,
    rmax: usize,
    config: &GeoDiffConfig,
    vertex_cap: usize,
) -> Result<GeoDiffReport> {
    let reach = graph.distance(x, &spec.base).max(graph.distance(y, &spec.base));
    let offsets = graph.ball(rmax, vertex_cap)?;
    let mut rows = Vec::with_capacity(rmax);
    for radius in 1..=rmax {
        let start = radius + reach + GeoParams::slack(config.delta);
        let targets = window_targets(graph, spec, start, config.window)?;
        let candidates: Vec<GroupElement> = offsets
            .within(radius)
            .iter()
            .map(|g| graph.compose(x, g))
            .collect();
        let (gx, ux) = classify(graph, x, &candidates, &targets, config.tier, config.delta);
        let (gy, uy) = classify(graph, y, &candidates, &targets, config.tier, config.delta);
        rows.push(GeoDiffRow {
            radius,
            difference: gx.symmetric_difference(&gy).cloned().collect(),
            unstable: ux.union(&uy).count(),
        });
    }
    let sizes: Vec<usize> = rows.iter().map(GeoDiffRow::size).collect();
    let monotone = sizes.windows(2).all(|p| p[0] <= p[1]);
    let last = *sizes.last().unwrap_or(&0);
    let run = sizes.iter().rev().take_while(|&&s| s == last).count();
    let verdict = if config.stabilization > 0 && run >= config.stabilization {
        DiffVerdict::Stabilized {
            from: rmax + 1 - run,
            size: last,
        }
    } else {
        DiffVerdict::NotStabilized
    };
    Ok(GeoDiffReport {
        rows,
        verdict,
        monotone,
    })
}
