use std::collections::BTreeSet;

use cubemedian::boundary::{self, GeoDiffConfig, GeoParams, GeoSetResult};
use cubemedian::geometry::{self, ConvexSet, IntervalDag};
use cubemedian::hyperfinite::{self, Comparison, HfParams};
use cubemedian::{validate_median, theta_classes, DefiningGraph, DeltaEstimate, GroupElement, RaySpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::args::*;
use crate::cache::BallCache;
use crate::dot;
use crate::error::{CliError, CliResult};
use crate::space::{self, load, load_spec, parse_flag, require_racg, Loaded, Space};

pub enum Output {
    Report { results: Value, truncated: bool },
    Dot(String),
}

fn report(results: Value) -> CliResult<Output> {
    Ok(Output::Report {
        results,
        truncated: false,
    })
}

macro_rules! on_space {
    ($loaded:expr, $f:ident($($arg:expr),*)) => {
        match &$loaded {
            Loaded::Racg(g) => $f(g, $($arg),*),
            Loaded::Median(m) => $f(m, $($arg),*),
        }
    };
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let common = &cli.common;
    let cap = common.vertex_cap;
    let cache = BallCache::from_env();
    let cache = cache.as_ref();
    match &cli.command {
        Command::Validate(a) => match &load_for_validate(common)? {
            Input::Racg(g) => validate_racg(g, a, common.seed, cap, cache),
            Input::Explicit(m) => validate_explicit(m, a, common.seed, cap),
        },
        Command::Ball(a) => on_space!(load(common)?, ball(a, cap, cache)),
        Command::Dist(a) => on_space!(load(common)?, dist(a)),
        Command::Median(a) => on_space!(load(common)?, median(a, cap)),
        Command::Interval(a) => on_space!(load(common)?, interval(a, cap)),
        Command::Walls(a) => on_space!(load(common)?, walls(a)),
        Command::Project(a) => on_space!(load(common)?, project(a, cap)),
        Command::Delta(a) => on_space!(load(common)?, delta(a, cap, cache)),
        Command::RayValidate(a) => ray_validate(&require_racg(common, "ray-validate")?, a),
        Command::Geoset(a) => geoset(&require_racg(common, "geoset")?, a, cap, cache),
        Command::Geodiff(a) => geodiff(&require_racg(common, "geodiff")?, a, cap, cache),
        Command::HfLeast(a) => hf_least(&require_racg(common, "hf-least")?, a, cap),
        Command::HfFp(a) => hf_fp(&require_racg(common, "hf-fp")?, a, cap),
        Command::HfCmp(a) => hf_cmp(&require_racg(common, "hf-cmp")?, a, cap),
        Command::HfKbound(a) => hf_kbound(&require_racg(common, "hf-kbound")?, a, cap, cache),
        Command::ExportDot(a) => export_dot(&load(common)?, a, cap, cache),
    }
}

fn labels<S: Space>(space: &S, vs: impl IntoIterator<Item = impl std::borrow::Borrow<S::Vertex>>) -> Vec<String> {
    vs.into_iter().map(|v| space.label(v.borrow())).collect()
}

fn word(graph: &DefiningGraph, colors: &[usize]) -> String {
    let gens: Vec<_> = colors.iter().map(|&c| c as cubemedian::Generator).collect();
    graph.format_word(&gens)
}

// validate

enum Input {
    Racg(DefiningGraph),
    Explicit(cubemedian::ExplicitGraph),
}

/// Unlike the other commands, validate reports a non-median graph instead of
/// failing on it.
fn load_for_validate(common: &Common) -> CliResult<Input> {
    match (&common.presentation, &common.graph) {
        (Some(p), _) => Ok(Input::Racg(space::load_presentation(p)?)),
        (None, Some(g)) => Ok(Input::Explicit(space::load_explicit(g)?)),
        (None, None) => Err(CliError::Usage("one of --presentation or --graph is required".into())),
    }
}

fn validate_racg(
    g: &DefiningGraph,
    a: &ValidateArgs,
    seed: u64,
    cap: usize,
    cache: Option<&BallCache>,
) -> CliResult<Output> {
    let names = |gens: &[cubemedian::Generator]| gens.iter().map(|&s| g.name(s).to_string()).collect::<Vec<_>>();
    let commuting: Vec<Vec<String>> = g
        .commuting_pairs()
        .into_iter()
        .map(|(s, t)| names(&[s as _, t as _]))
        .collect();
    let square = g.induced_square().map(|sq| names(&sq));
    let pool = g.ball_vertices(a.radius, cap, cache)?;
    report(json!({
        "kind": "presentation",
        "generators": g.names(),
        "commuting": commuting,
        "hyperbolic": g.is_hyperbolic(),
        "induced_square": square,
        "sampled": sampled_checks(g, &pool, a, seed, cap)?,
    }))
}

fn validate_explicit(explicit: &cubemedian::ExplicitGraph, a: &ValidateArgs, seed: u64, cap: usize) -> CliResult<Output> {
    let check = validate_median(explicit)?;
    let mut results = json!({
        "kind": "graph",
        "vertices": explicit.vertex_count(),
        "edges": explicit.edges().len(),
        "median": check,
    });
    if check.is_median {
        results["theta_classes"] = json!(theta_classes(explicit)?.len());
        let m = cubemedian::MedianGraph::new(explicit.clone())?;
        let pool = m.ball_vertices(a.radius, cap, None)?;
        results["sampled"] = sampled_checks(&m, &pool, a, seed, cap)?;
    }
    report(results)
}

/// Random pairs and triples from `pool`: distance is symmetric and equals the
/// number of separating walls, each of which separates; triples have a median.
fn sampled_checks<S: Space>(space: &S, pool: &[S::Vertex], a: &ValidateArgs, seed: u64, cap: usize) -> CliResult<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures: Vec<Value> = Vec::new();
    for _ in 0..a.samples {
        let pick = |rng: &mut ChaCha8Rng| &pool[rng.random_range(0..pool.len())];
        let (u, v, w) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let d = space.distance(u, v);
        let walls = space.walls_separating(u, v);
        let mut problems = Vec::new();
        if d != space.distance(v, u) {
            problems.push("asymmetric distance");
        }
        if walls.len() != d {
            problems.push("wall count differs from distance");
        }
        if walls.iter().any(|h| !space.separates(h, u, v)) {
            problems.push("listed wall does not separate");
        }
        match geometry::median(space, u, v, w, cap) {
            Ok(_) => {}
            Err(e) if e.is_resource_cap() => return Err(e.into()),
            Err(_) => problems.push("no unique median"),
        }
        if !problems.is_empty() {
            failures.push(json!({"vertices": labels(space, [u, v, w]), "problems": problems}));
        }
    }
    Ok(json!({
        "samples": a.samples,
        "radius": a.radius,
        "pool": pool.len(),
        "passed": failures.is_empty(),
        "failures": failures,
    }))
}

// queries

fn ball<S: Space>(space: &S, a: &BallArgs, cap: usize, cache: Option<&BallCache>) -> CliResult<Output> {
    let vertices = space.ball_vertices(a.radius, cap, cache)?;
    let origin = space.origin();
    let mut spheres: Vec<usize> = Vec::new();
    for v in &vertices {
        let d = space.distance(&origin, v);
        if spheres.len() <= d {
            spheres.resize(d + 1, 0);
        }
        spheres[d] += 1;
    }
    let members: BTreeSet<&S::Vertex> = vertices.iter().collect();
    let edges: usize = vertices
        .iter()
        .map(|v| space.neighbors(v).iter().filter(|(_, w)| members.contains(w)).count())
        .sum::<usize>()
        / 2;
    let mut results = json!({
        "radius": a.radius,
        "size": vertices.len(),
        "sphere_sizes": spheres,
        "edges": edges,
    });
    if a.list {
        results["vertices"] = json!(labels(space, &vertices));
    }
    report(results)
}

fn dist<S: Space>(space: &S, a: &DistArgs) -> CliResult<Output> {
    let u = parse_flag(space, "word1", &a.word1)?;
    let v = parse_flag(space, "word2", &a.word2)?;
    report(json!({"distance": space.distance(&u, &v)}))
}

fn median<S: Space>(space: &S, a: &MedianArgs, cap: usize) -> CliResult<Output> {
    let u = parse_flag(space, "u", &a.u)?;
    let v = parse_flag(space, "v", &a.v)?;
    let w = parse_flag(space, "w", &a.w)?;
    let m = geometry::median(space, &u, &v, &w, cap)?;
    report(json!({"median": space.label(&m)}))
}

fn interval<S: Space>(space: &S, a: &IntervalArgs, cap: usize) -> CliResult<Output> {
    let u = parse_flag(space, "u", &a.u)?;
    let v = parse_flag(space, "v", &a.v)?;
    let dag = IntervalDag::build(space, &u, &v, cap)?;
    let members: BTreeSet<S::Vertex> = dag.vertices().iter().cloned().collect();
    let mut results = json!({
        "distance": space.distance(&u, &v),
        "size": members.len(),
        "vertices": labels(space, &members),
        "geodesic_count": dag.count_geodesics(),
    });
    let mut truncated = false;
    if a.geodesics {
        let found = geometry::geodesics_between(space, &u, &v, a.geodesic_cap, cap)?;
        truncated = found.truncated;
        results["geodesics"] = json!(found
            .paths
            .iter()
            .map(|p| labels(space, p.vertices()))
            .collect::<Vec<_>>());
    }
    Ok(Output::Report { results, truncated })
}

fn walls<S: Space>(space: &S, a: &WallsArgs) -> CliResult<Output> {
    let u = parse_flag(space, "u", &a.u)?;
    let v = parse_flag(space, "v", &a.v)?;
    let walls: Vec<String> = space.walls_separating(&u, &v).iter().map(|h| space.format_wall(h)).collect();
    report(json!({"count": walls.len(), "walls": walls}))
}

fn project<S: Space>(space: &S, a: &ProjectArgs, cap: usize) -> CliResult<Output> {
    let v = parse_flag(space, "v", &a.v)?;
    let seed = a
        .set
        .split(';')
        .map(|t| parse_flag(space, "set", t))
        .collect::<CliResult<BTreeSet<_>>>()?;
    let set = if a.hull {
        ConvexSet::hull(space, seed, cap)?
    } else {
        ConvexSet::new(space, seed, cap)?
    };
    let p = geometry::project(space, &v, &set)?;
    let walls: Vec<String> = geometry::walls_separating_from_set(space, &v, &set)
        .iter()
        .map(|h| space.format_wall(h))
        .collect();
    report(json!({
        "set": labels(space, set.vertices()),
        "projection": space.label(&p),
        "distance": geometry::distance_to_set(space, &v, &set),
        "walls_separating": walls,
    }))
}

fn estimate<S: Space>(space: &S, radius: usize, cap: usize, cache: Option<&BallCache>) -> CliResult<DeltaEstimate> {
    let domain = space.ball_vertices(radius, cap, cache)?;
    Ok(geometry::delta_estimate(space, &domain, radius, cap)?)
}

fn delta<S: Space>(space: &S, a: &DeltaArgs, cap: usize, cache: Option<&BallCache>) -> CliResult<Output> {
    let est = estimate(space, a.radius, cap, cache)?;
    Ok(Output::Report {
        truncated: est.capped,
        results: json!(est),
    })
}

/// The working δ and a description of where it came from.
fn resolve_delta(
    graph: &DefiningGraph,
    opts: &DeltaOpts,
    cap: usize,
    cache: Option<&BallCache>,
) -> CliResult<(usize, Value)> {
    match opts.delta {
        DeltaChoice::Fixed(d) => Ok((d, json!({"value": d, "source": "override"}))),
        DeltaChoice::Estimate => {
            let est = estimate(graph, opts.delta_radius, cap, cache)?;
            Ok((est.value, json!({"value": est.value, "source": "estimate", "estimate": est})))
        }
    }
}

// boundary

fn ray_validate(g: &DefiningGraph, a: &RayValidateArgs) -> CliResult<Output> {
    let spec = load_spec(g, &a.spec)?;
    let cert = boundary::validate_ray_spec(g, &spec, a.depth, a.cert_power)?;
    report(json!({
        "spec": serde_json::from_str::<Value>(&spec.to_json_string(g)).expect("spec is JSON"),
        "certificate": cert,
    }))
}

fn geo_set_json(g: &DefiningGraph, r: &GeoSetResult) -> Value {
    json!({
        "radius": r.radius,
        "window": [r.window.0, r.window.1],
        "size": r.members.len(),
        "members": labels(g, &r.members),
        "unstable": labels(g, &r.unstable),
    })
}

fn geoset(g: &DefiningGraph, a: &GeosetArgs, cap: usize, cache: Option<&BallCache>) -> CliResult<Output> {
    let x = parse_flag(g, "x", &a.x)?;
    let spec = load_spec(g, &a.spec)?;
    let (d, delta_info) = resolve_delta(g, &a.delta, cap, cache)?;
    let mut params = GeoParams::for_center(g, &x, &spec, a.radius, d, a.tier.into());
    params.window = a.window;
    if let Some(start) = a.start {
        params.start = start;
    }
    let result = boundary::geo_set(g, &x, &spec, &params, cap)?;
    let mut results = geo_set_json(g, &result);
    results["delta"] = delta_info;
    report(results)
}

fn geo_diff(
    g: &DefiningGraph,
    (x, y): (&str, &str),
    spec: &RaySpec,
    rmax: usize,
    config: &GeoDiffConfig,
    cap: usize,
) -> CliResult<(GroupElement, boundary::GeoDiffReport)> {
    let x = parse_flag(g, "x", x)?;
    let y = parse_flag(g, "y", y)?;
    let report = boundary::geo_diff_experiment(g, &x, &y, spec, rmax, config, cap)?;
    Ok((x, report))
}

fn geodiff(g: &DefiningGraph, a: &GeodiffArgs, cap: usize, cache: Option<&BallCache>) -> CliResult<Output> {
    let spec = load_spec(g, &a.spec)?;
    let (d, delta_info) = resolve_delta(g, &a.delta, cap, cache)?;
    let config = GeoDiffConfig {
        window: a.window,
        stabilization: a.stabilization,
        ..GeoDiffConfig::new(d, a.tier.into())
    };
    let (_, rep) = geo_diff(g, (&a.x, &a.y), &spec, a.rmax, &config, cap)?;
    let rows: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            json!({
                "radius": r.radius,
                "size": r.size(),
                "unstable": r.unstable,
                "difference": labels(g, &r.difference),
            })
        })
        .collect();
    let mut results = Map::new();
    results.insert("delta".into(), delta_info);
    results.insert("sizes".into(), json!(rep.sizes()));
    results.insert("monotone".into(), json!(rep.monotone));
    if let Value::Object(verdict) = json!(rep.verdict) {
        results.extend(verdict);
    }
    results.insert("rows".into(), json!(rows));
    report(Value::Object(results))
}

// hyperfiniteness

fn hf_params(opts: &HfOpts, cap: usize) -> HfParams {
    HfParams {
        threshold: opts.threshold,
        ..HfParams::new(opts.depth, cap)
    }
}

fn hf_least(g: &DefiningGraph, a: &HfLeastArgs, cap: usize) -> CliResult<Output> {
    let spec = load_spec(g, &a.spec)?;
    let approx = hyperfinite::approx_s(g, &spec, a.nmax, &hf_params(&a.hf, cap))?;
    let profiles = hyperfinite::least_strings_from(&approx, &spec, a.hf.threshold)?;
    let rows: Vec<Value> = profiles
        .iter()
        .map(|p| {
            json!({
                "n": p.n,
                "s": word(g, &p.s),
                "v": g.format(&p.v),
                "k": p.k,
                "occurrences": p.t.len(),
                "distances": approx.distances(&p.s),
            })
        })
        .collect();
    Ok(Output::Report {
        truncated: approx.capped,
        results: json!({
            "frontier": approx.frontier,
            "pairs": approx.pair_count(),
            "profiles": rows,
            "z": hyperfinite::z_diagnostic(&profiles),
        }),
    })
}

fn fingerprint_json(g: &DefiningGraph, fp: &hyperfinite::Fingerprint) -> Value {
    let digest: String = Sha256::digest(fp.encoding(g).as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    json!({
        "n": fp.n,
        "depth": fp.depth,
        "radius": fp.radius,
        "g": g.format(&fp.g),
        "size": fp.members.len(),
        "members": labels(g, &fp.members),
        "sha256": digest,
    })
}

fn hf_fp(g: &DefiningGraph, a: &HfFpArgs, cap: usize) -> CliResult<Output> {
    let spec = load_spec(g, &a.spec)?;
    let fp = hyperfinite::fingerprint(g, &spec, a.n, a.radius, &hf_params(&a.hf, cap))?;
    report(fingerprint_json(g, &fp))
}

fn hf_cmp(g: &DefiningGraph, a: &HfCmpArgs, cap: usize) -> CliResult<Output> {
    let params = hf_params(&a.hf, cap);
    let spec1 = load_spec(g, &a.spec1)?;
    let spec2 = load_spec(g, &a.spec2)?;
    let fp1 = hyperfinite::fingerprint(g, &spec1, a.n, a.radius, &params)?;
    let fp2 = hyperfinite::fingerprint(g, &spec2, a.n, a.radius, &params)?;
    let cmp = hyperfinite::compare_fingerprints(g, &fp1, &fp2, a.search_radius)?;
    let g_value = match &cmp {
        Comparison::Related { g: h } => json!(g.format(h)),
        Comparison::Unrelated { .. } => Value::Null,
    };
    report(json!({
        "related": cmp.is_related(),
        "g": g_value,
        "search_radius": a.search_radius,
        "fingerprint1": fingerprint_json(g, &fp1),
        "fingerprint2": fingerprint_json(g, &fp2),
    }))
}

fn hf_kbound(g: &DefiningGraph, a: &HfKboundArgs, cap: usize, cache: Option<&BallCache>) -> CliResult<Output> {
    let (d, delta_info) = resolve_delta(g, &a.delta, cap, cache)?;
    let k = hyperfinite::k_bound(g, d)?;
    let mut results = json!({"K": k});
    if a.delta.delta == DeltaChoice::Estimate {
        results["delta"] = delta_info;
    }
    if let Some(path) = &a.spec {
        let spec = load_spec(g, path)?;
        let fps = hyperfinite::fingerprints(g, &spec, a.nmax, a.radius, &hf_params(&a.hf, cap))?;
        results["check"] = json!(hyperfinite::k_bound_check(g, &fps, a.search_radius, k)?);
    }
    report(results)
}

// drawing

fn export_dot(loaded: &Loaded, a: &ExportDotArgs, cap: usize, cache: Option<&BallCache>) -> CliResult<Output> {
    let (text, summary) = match (loaded, &a.spec) {
        (Loaded::Racg(g), Some(path)) => {
            let spec = load_spec(g, path)?;
            let radius = a.radius.expect("clap requires --radius with --spec");
            let (xs, ys) = (a.x.as_deref().unwrap_or(""), a.y.as_deref().unwrap_or(""));
            let (d, _) = resolve_delta(g, &a.delta, cap, cache)?;
            let config = GeoDiffConfig {
                window: a.window,
                ..GeoDiffConfig::new(d, a.tier.into())
            };
            let (x, rep) = geo_diff(g, (xs, ys), &spec, radius, &config, cap)?;
            let around: Vec<GroupElement> = g
                .ball_vertices(radius, cap, cache)?
                .iter()
                .map(|h| g.compose(&x, h))
                .collect();
            let diff = &rep.rows.last().expect("radius is at least 1").difference;
            dot::render(g, &around, diff, a.node_cap)?
        }
        (Loaded::Median(_), Some(_)) => {
            return Err(CliError::Usage("--spec overlays need --presentation".into()));
        }
        (Loaded::Racg(g), None) => {
            let radius = a
                .radius
                .ok_or_else(|| CliError::Usage("export-dot needs --radius with --presentation".into()))?;
            let vs = g.ball_vertices(radius, cap, cache)?;
            dot::render(g, &vs, &BTreeSet::new(), a.node_cap)?
        }
        (Loaded::Median(m), None) => {
            let vs = m.ball_vertices(a.radius.unwrap_or(usize::MAX), cap, None)?;
            dot::render(m, &vs, &BTreeSet::new(), a.node_cap)?
        }
    };
    let header = format!(
        "// nodes={} edges={} walls={} highlighted={}\n",
        summary.nodes, summary.edges, summary.walls, summary.highlighted
    );
    Ok(Output::Dot(header + &text))
}
