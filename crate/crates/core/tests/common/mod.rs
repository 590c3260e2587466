//! Oracles independent of the library's normal-form code.
#![allow(dead_code)]

use std::collections::HashMap;

use cubemedian::DefiningGraph;

pub type Matrix = Vec<i64>;

/// Tits geometric representation of a right-angled Coxeter group:
/// `σ_s(x) = x - 2 B(e_s, x) e_s` with `B(e_s, e_t)` = 1, 0 or -1 for
/// equal, commuting or non-commuting generators. Faithful, so two words are
/// equal in the group iff their matrices agree.
pub struct Tits {
    n: usize,
    gens: Vec<Matrix>,
}

impl Tits {
    pub fn new(g: &DefiningGraph) -> Self {
        let n = g.generator_count();
        let bilinear = |s: usize, t: usize| -> i64 {
            if s == t {
                1
            } else if g.commute(s as u8, t as u8) {
                0
            } else {
                -1
            }
        };
        let gens = (0..n)
            .map(|s| {
                let mut m = identity(n);
                // column t of σ_s is e_t - 2 B(e_s, e_t) e_s
                for t in 0..n {
                    m[s * n + t] -= 2 * bilinear(s, t);
                }
                m
            })
            .collect();
        Tits { n, gens }
    }

    pub fn word(&self, w: &[u8]) -> Matrix {
        w.iter()
            .fold(identity(self.n), |acc, &s| mul(self.n, &acc, &self.gens[s as usize]))
    }

    /// BFS over matrices: for each radius, the ShortLex-least word of every
    /// element of that length, listed in ShortLex order.
    pub fn shortlex_ball(&self, radius: usize) -> Vec<Vec<u8>> {
        let mut seen: HashMap<Matrix, ()> = HashMap::new();
        seen.insert(identity(self.n), ());
        let mut layers: Vec<Vec<(Vec<u8>, Matrix)>> = vec![vec![(Vec::new(), identity(self.n))]];
        for _ in 0..radius {
            let mut cands: Vec<(Vec<u8>, Matrix)> = Vec::new();
            for (w, m) in layers.last().unwrap() {
                for s in 0..self.n {
                    let mut w2 = w.clone();
                    w2.push(s as u8);
                    cands.push((w2, mul(self.n, m, &self.gens[s])));
                }
            }
            cands.sort_by(|a, b| a.0.cmp(&b.0));
            let mut layer = Vec::new();
            for (w, m) in cands {
                if !seen.contains_key(&m) {
                    seen.insert(m.clone(), ());
                    layer.push((w, m));
                }
            }
            layers.push(layer);
        }
        layers.into_iter().flatten().map(|(w, _)| w).collect()
    }
}

fn identity(n: usize) -> Matrix {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mul(n: usize, a: &Matrix, b: &Matrix) -> Matrix {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

/// Sphere sizes from the growth series of a right-angled Coxeter group,
/// `1/W(t) = Σ_{cliques σ} (-t/(1+t))^{|σ|}` (empty clique included).
pub fn growth_sphere_sizes(g: &DefiningGraph, radius: usize) -> Vec<i64> {
    let n = g.generator_count();
    let mut clique_sizes = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let clique = members
            .iter()
            .enumerate()
            .all(|(i, &s)| members[i + 1..].iter().all(|&t| g.commute(s as u8, t as u8)));
        if clique {
            clique_sizes.push(members.len());
        }
    }
    let d = *clique_sizes.iter().max().unwrap();
    let len = radius + 1;
    // P(t) = Σ (-t)^k (1+t)^(d-k); W(t) = (1+t)^d / P(t)
    let mut p = vec![0i64; len + d + 1];
    for &k in &clique_sizes {
        let binom = binomial_row(d - k);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        for (j, b) in binom.iter().enumerate() {
            p[k + j] += sign * b;
        }
    }
    let num = binomial_row(d);
    let mut w = vec![0i64; len];
    for i in 0..len {
        let mut acc = if i < num.len() { num[i] } else { 0 };
        for j in 1..=i {
            acc -= p[j] * w[i - j];
        }
        w[i] = acc / p[0];
    }
    w
}

fn binomial_row(m: usize) -> Vec<i64> {
    let mut row = vec![1i64];
    for _ in 0..m {
        let mut next = vec![1i64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

pub fn tree() -> DefiningGraph {
    DefiningGraph::edgeless(3).unwrap()
}

pub fn pentagon() -> DefiningGraph {
    DefiningGraph::cycle(5).unwrap()
}

pub fn square() -> DefiningGraph {
    DefiningGraph::complete(2).unwrap()
}

/// The first `count` valid rays from the identity, periods of length 2 to 4
/// in lexicographic order, no preperiod.
pub fn valid_specs(g: &DefiningGraph, count: usize) -> Vec<cubemedian::RaySpec> {
    use cubemedian::boundary::validate_ray_spec;
    let n = g.generator_count() as u8;
    let mut out = Vec::new();
    for len in 2..=4u32 {
        for code in 0..(n as u32).pow(len) {
            let mut period = Vec::with_capacity(len as usize);
            let mut c = code;
            for _ in 0..len {
                period.push((c % n as u32) as u8);
                c /= n as u32;
            }
            period.reverse();
            let spec = cubemedian::RaySpec::new(g, cubemedian::GroupElement::identity(), Vec::new(), period).unwrap();
            if validate_ray_spec(g, &spec, 24, 6).unwrap().valid {
                out.push(spec);
                if out.len() == count {
                    return out;
                }
            }
        }
    }
    out
}
