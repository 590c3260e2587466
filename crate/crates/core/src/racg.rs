//! Right-angled Coxeter groups: ShortLex normal forms, walls (reflections),
//! word distances and ball materialization of the Cayley graph.
//!
//! A presentation is a [`DefiningGraph`]: generators are involutions and two
//! generators commute exactly when they are joined by an edge. Group elements
//! are kept in ShortLex normal form, so equality of elements is equality of
//! words and the word length is the distance from the identity in the
//! 1-skeleton of the Davis complex.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a generator; doubles as the edge color in the Cayley graph.
pub type Generator = u8;

/// Commutation is stored as one bitmask per generator.
pub const MAX_GENERATORS: usize = 64;

pub const DEFAULT_VERTEX_CAP: usize = 500_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    commute: Vec<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    generators: Vec<String>,
    #[serde(default)]
    commuting: Vec<Vec<String>>,
}

impl DefiningGraph {
    /// Builds a presentation from generator symbols and commuting index pairs.
    pub fn new(names: Vec<String>, commuting: &[(usize, usize)]) -> Result<Self> {
        if names.len() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                count: names.len(),
                max: MAX_GENERATORS,
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '.' || c == ',') {
                return Err(Error::malformed(
                    format!("generators[{i}]"),
                    "symbols must be non-empty and contain no whitespace, '.' or ','",
                ));
            }
            if names[..i].contains(name) {
                return Err(Error::malformed(
                    format!("generators[{i}]"),
                    format!("duplicate symbol {name:?}"),
                ));
            }
        }
        let mut commute = vec![0u64; names.len()];
        for (k, &(s, t)) in commuting.iter().enumerate() {
            for x in [s, t] {
                if x >= names.len() {
                    return Err(Error::InvalidGenerator {
                        index: x,
                        count: names.len(),
                    });
                }
            }
            if s == t {
                return Err(Error::malformed(
                    format!("commuting[{k}]"),
                    "a generator cannot be paired with itself",
                ));
            }
            commute[s] |= 1 << t;
            commute[t] |= 1 << s;
        }
        Ok(DefiningGraph { names, commute })
    }

    /// Convenience constructor from symbol pairs.
    pub fn with_symbols(generators: &[&str], commuting: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let lookup = |sym: &str| {
            names
                .iter()
                .position(|n| n == sym)
                .ok_or_else(|| Error::UnknownSymbol {
                    symbol: sym.to_string(),
                })
        };
        let pairs = commuting
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        DefiningGraph::new(names, &pairs)
    }

    /// Edgeless defining graph on `n` generators `a, b, c, ...`: the free
    /// product of `n` copies of Z/2, whose Cayley graph is the `n`-valent tree.
    pub fn edgeless(n: usize) -> Result<Self> {
        DefiningGraph::new(letter_names(n)?, &[])
    }

    /// Cycle of length `n` on generators `a, b, c, ...` in order.
    pub fn cycle(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        DefiningGraph::new(letter_names(n)?, &pairs)
    }

    /// Complete graph: the RACG is (Z/2)^n and its Davis complex an n-cube.
    pub fn complete(n: usize) -> Result<Self> {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j));
            }
        }
        DefiningGraph::new(letter_names(n)?, &pairs)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| Error::malformed(json_field(&e), e.to_string()))?;
        let lookup = |field: String, sym: &str| {
            file.generators
                .iter()
                .position(|n| n == sym)
                .ok_or_else(|| Error::malformed(field, format!("unknown generator {sym:?}")))
        };
        let mut pairs = Vec::with_capacity(file.commuting.len());
        for (k, pair) in file.commuting.iter().enumerate() {
            if pair.len() != 2 {
                return Err(Error::malformed(
                    format!("commuting[{k}]"),
                    format!("expected a pair, found {} entries", pair.len()),
                ));
            }
            pairs.push((
                lookup(format!("commuting[{k}]"), &pair[0])?,
                lookup(format!("commuting[{k}]"), &pair[1])?,
            ));
        }
        DefiningGraph::new(file.generators.clone(), &pairs)
    }

    pub fn to_json_string(&self) -> String {
        let file = PresentationFile {
            generators: self.names.clone(),
            commuting: self
                .commuting_pairs()
                .into_iter()
                .map(|(s, t)| vec![self.names[s].clone(), self.names[t].clone()])
                .collect(),
        };
        serde_json::to_string(&file).expect("presentation serializes")
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> {
        (0..self.names.len() as u16).map(|g| g as Generator)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Generator) -> &str {
        &self.names[s as usize]
    }

    pub fn symbol(&self, name: &str) -> Result<Generator> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Generator)
            .ok_or_else(|| Error::UnknownSymbol {
                symbol: name.to_string(),
            })
    }

    pub fn commute(&self, s: Generator, t: Generator) -> bool {
        self.commute[s as usize] & (1 << t) != 0
    }

    /// Commuting pairs `(s, t)` with `s < t`, in generator order.
    pub fn commuting_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.names.len();
        let mut out = Vec::new();
        for s in 0..n {
            for t in s + 1..n {
                if self.commute[s] & (1 << t) != 0 {
                    out.push((s, t));
                }
            }
        }
        out
    }

    fn check(&self, word: &[Generator]) -> Result<()> {
        match word.iter().find(|&&s| s as usize >= self.names.len()) {
            Some(&s) => Err(Error::InvalidGenerator {
                index: s as usize,
                count: self.names.len(),
            }),
            None => Ok(()),
        }
    }

    /// Appends `s` to a word in ShortLex normal form, keeping it normal.
    ///
    /// `s` cancels against the last occurrence of itself reachable through
    /// letters it commutes with; otherwise it is inserted at the leftmost
    /// legal slot in front of a larger letter.
    fn push_normal(&self, word: &mut Vec<Generator>, s: Generator) {
        let mask = self.commute[s as usize];
        let mut slot = word.len();
        while slot > 0 {
            let t = word[slot - 1];
            if t == s {
                word.remove(slot - 1);
                return;
            }
            if mask & (1 << t) == 0 {
                break;
            }
            slot -= 1;
        }
        while slot < word.len() && word[slot] < s {
            slot += 1;
        }
        word.insert(slot, s);
    }

    /// Like [`Self::push_normal`] but only keeps the word reduced.
    fn push_reduced(&self, word: &mut Vec<Generator>, s: Generator) {
        let mask = self.commute[s as usize];
        let mut i = word.len();
        while i > 0 {
            let t = word[i - 1];
            if t == s {
                word.remove(i - 1);
                return;
            }
            if mask & (1 << t) == 0 {
                break;
            }
            i -= 1;
        }
        word.push(s);
    }

    pub fn normalize(&self, word: &[Generator]) -> Result<GroupElement> {
        self.check(word)?;
        let mut out = Vec::with_capacity(word.len());
        for &s in word {
            self.push_normal(&mut out, s);
        }
        Ok(GroupElement(out))
    }

    /// Length of the reduced form of `word` (letters already validated).
    fn reduced_length(&self, letters: impl IntoIterator<Item = Generator>) -> usize {
        let mut w = Vec::new();
        for s in letters {
            self.push_reduced(&mut w, s);
        }
        w.len()
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut w = g.0.clone();
        for &s in &h.0 {
            self.push_normal(&mut w, s);
        }
        GroupElement(w)
    }

    /// Right multiplication by a single generator: the neighbor of `g` across
    /// the edge colored `s`.
    pub fn multiply(&self, g: &GroupElement, s: Generator) -> GroupElement {
        let mut w = g.0.clone();
        self.push_normal(&mut w, s);
        GroupElement(w)
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        let mut w = Vec::with_capacity(g.0.len());
        for &s in g.0.iter().rev() {
            self.push_normal(&mut w, s);
        }
        GroupElement(w)
    }

    /// Word distance `|g⁻¹h|`.
    pub fn distance(&self, g: &GroupElement, h: &GroupElement) -> usize {
        self.reduced_length(g.0.iter().rev().chain(h.0.iter()).copied())
    }

    /// `w s w⁻¹` in normal form.
    fn reflection(&self, prefix: &[Generator], s: Generator) -> GroupElement {
        let mut w = Vec::with_capacity(2 * prefix.len() + 1);
        for &t in prefix.iter().chain(std::iter::once(&s)).chain(prefix.iter().rev()) {
            self.push_normal(&mut w, t);
        }
        GroupElement(w)
    }

    /// The wall dual to the edge `(g, gs)`.
    pub fn wall_of_edge(&self, g: &GroupElement, s: Generator) -> Result<Hyperplane> {
        self.check(&[s])?;
        Ok(Hyperplane(self.reflection(&g.0, s)))
    }

    /// Walls crossed, in order, by the ShortLex geodesic from `g` to `h`.
    pub fn walls_separating(&self, g: &GroupElement, h: &GroupElement) -> Vec<Hyperplane> {
        let path = self.compose(&self.invert(g), h);
        let mut prefix = g.0.clone();
        let mut walls = Vec::with_capacity(path.len());
        for &s in &path.0 {
            walls.push(Hyperplane(self.reflection(&prefix, s)));
            prefix.push(s);
        }
        walls
    }

    /// True when `wall` separates `v` from the identity, i.e. left
    /// multiplication by the reflection shortens `v`.
    pub fn wall_side(&self, wall: &Hyperplane, v: &GroupElement) -> bool {
        self.reduced_length(wall.0 .0.iter().chain(v.0.iter()).copied()) < v.len()
    }

    /// Materializes every element of length at most `radius`, sphere by
    /// sphere, each sphere sorted in ShortLex order.
    pub fn ball(&self, radius: usize, vertex_cap: usize) -> Result<Ball> {
        let mut vertices = vec![GroupElement::identity()];
        let mut index = HashMap::new();
        index.insert(GroupElement::identity(), 0);
        let mut sphere_starts = vec![0, 1];
        for k in 0..radius {
            let (lo, hi) = (sphere_starts[k], sphere_starts[k + 1]);
            let mut next = Vec::new();
            for i in lo..hi {
                for s in self.generators() {
                    let w = self.multiply(&vertices[i], s);
                    if w.len() == k + 1 && !index.contains_key(&w) {
                        index.insert(w.clone(), usize::MAX);
                        next.push(w);
                    }
                }
            }
            if vertices.len() + next.len() > vertex_cap {
                return Err(Error::ResourceCap {
                    what: "ball materialization",
                    limit: vertex_cap,
                });
            }
            next.sort();
            for w in next {
                index.insert(w.clone(), vertices.len());
                vertices.push(w);
            }
            sphere_starts.push(vertices.len());
        }
        Ok(Ball {
            radius,
            vertices,
            index,
            sphere_starts,
        })
    }

    /// Rebuilds `ball(radius)` from its words in ShortLex order, as produced
    /// by [`Ball::words`]. Rejects anything that is not exactly that ball.
    pub fn ball_from_words(&self, radius: usize, words: Vec<Vec<Generator>>) -> Result<Ball> {
        let expected = self.sphere_sizes(radius)?;
        let mut vertices: Vec<GroupElement> = Vec::with_capacity(words.len());
        let mut sphere_starts = vec![0];
        for (i, word) in words.into_iter().enumerate() {
            let field = || format!("vertices[{i}]");
            let g = self.normalize(&word).map_err(|e| Error::malformed(field(), e.to_string()))?;
            if g.word() != word.as_slice() {
                return Err(Error::malformed(field(), "not a ShortLex normal form"));
            }
            if vertices.last().is_some_and(|p| *p >= g) {
                return Err(Error::malformed(field(), "out of ShortLex order"));
            }
            if g.len() > radius {
                return Err(Error::malformed(field(), format!("longer than radius {radius}")));
            }
            while sphere_starts.len() <= g.len() {
                sphere_starts.push(vertices.len());
            }
            vertices.push(g);
        }
        while sphere_starts.len() <= radius + 1 {
            sphere_starts.push(vertices.len());
        }
        let counts: Vec<u64> = sphere_starts.windows(2).map(|w| (w[1] - w[0]) as u64).collect();
        if counts != expected {
            return Err(Error::malformed("vertices", "sphere sizes do not match the presentation"));
        }
        let index = vertices.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        Ok(Ball {
            radius,
            vertices,
            index,
            sphere_starts,
        })
    }

    /// Number of elements of each length `0..=radius`, without materializing
    /// them: counts ShortLex normal forms with a subset automaton.
    ///
    /// The state of a normal word is the set of letters that may not follow
    /// it; a letter is forbidden if it could slide left through commuting
    /// letters to cancel, or to pass a larger letter.
    pub fn sphere_sizes(&self, radius: usize) -> Result<Vec<u64>> {
        let overflow = || Error::ResourceCap {
            what: "sphere count",
            limit: u64::MAX as usize,
        };
        let mut states: HashMap<u64, u64> = HashMap::from([(0, 1)]);
        let mut sizes = vec![1u64];
        for _ in 0..radius {
            let mut next: HashMap<u64, u64> = HashMap::new();
            for (&forbidden, &count) in &states {
                for s in self.generators() {
                    if forbidden & (1 << s) != 0 {
                        continue;
                    }
                    let mask = self.commute[s as usize];
                    let smaller = if s == 0 { 0 } else { (1u64 << s) - 1 };
                    let state = (forbidden & mask) | (1 << s) | (smaller & mask);
                    let slot = next.entry(state).or_insert(0);
                    *slot = slot.checked_add(count).ok_or_else(overflow)?;
                }
            }
            let total = next
                .values()
                .try_fold(0u64, |acc, &c| acc.checked_add(c))
                .ok_or_else(overflow)?;
            sizes.push(total);
            states = next;
        }
        Ok(sizes)
    }

    /// `|ball(radius)|` from [`Self::sphere_sizes`].
    pub fn ball_size(&self, radius: usize) -> Result<u64> {
        self.sphere_sizes(radius)?
            .into_iter()
            .try_fold(0u64, |acc, c| acc.checked_add(c))
            .ok_or(Error::ResourceCap {
                what: "ball count",
                limit: u64::MAX as usize,
            })
    }

    /// Moussong's criterion for right-angled groups: hyperbolic iff the
    /// defining graph has no induced 4-cycle.
    pub fn is_hyperbolic(&self) -> bool {
        self.induced_square().is_none()
    }

    /// An induced 4-cycle `a-b-c-d-a` (with `a,c` and `b,d` non-adjacent).
    pub fn induced_square(&self) -> Option<[Generator; 4]> {
        let n = self.names.len() as u16;
        let adj = |s: u16, t: u16| self.commute(s as Generator, t as Generator);
        for a in 0..n {
            for c in a + 1..n {
                if adj(a, c) {
                    continue;
                }
                let common: Vec<u16> = (0..n).filter(|&x| adj(a, x) && adj(c, x)).collect();
                for (i, &b) in common.iter().enumerate() {
                    for &d in &common[i + 1..] {
                        if !adj(b, d) {
                            return Some([a, b, c, d].map(|x| x as Generator));
                        }
                    }
                }
            }
        }
        None
    }

    /// Renders a word by concatenating symbols, or joining with `.` when some
    /// symbol has more than one character.
    pub fn format_word(&self, word: &[Generator]) -> String {
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) {
            ""
        } else {
            "."
        };
        word.iter()
            .map(|&s| self.names[s as usize].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub fn format(&self, g: &GroupElement) -> String {
        self.format_word(&g.0)
    }

    /// Parses a word of generator symbols. Tokens may be separated by
    /// whitespace, `.` or `,`; unseparated text is split by longest match.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Generator>> {
        let text = text.trim();
        if text.contains(|c: char| c.is_whitespace() || c == '.' || c == ',') {
            return text
                .split(|c: char| c.is_whitespace() || c == '.' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| self.symbol(t))
                .collect();
        }
        let mut rest = text;
        let mut out = Vec::new();
        while !rest.is_empty() {
            let best = self
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            match best {
                Some((i, n)) => {
                    out.push(i as Generator);
                    rest = &rest[n.len()..];
                }
                None => {
                    return Err(Error::UnknownSymbol {
                        symbol: rest.chars().next().unwrap().to_string(),
                    })
                }
            }
        }
        Ok(out)
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        self.normalize(&self.parse_word(text)?)
    }
}

fn letter_names(n: usize) -> Result<Vec<String>> {
    if n > 26 {
        return Err(Error::TooManyGenerators { count: n, max: 26 });
    }
    Ok((0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect())
}

/// Best-effort field name for serde_json errors that carry one.
pub(crate) fn json_field(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    if let Some(start) = msg.find('`') {
        if let Some(len) = msg[start + 1..].find('`') {
            return msg[start + 1..start + 1 + len].to_string();
        }
    }
    "<document>".to_string()
}

/// A group element as its ShortLex normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement(Vec<Generator>);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(Vec::new())
    }

    pub fn word(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// ShortLex: shorter words first, then lexicographic in generator order.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A wall of the Davis complex, identified by its reflection `w s w⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Hyperplane(GroupElement);

impl Hyperplane {
    pub fn reflection(&self) -> &GroupElement {
        &self.0
    }
}

/// Ball of the Cayley graph around the identity.
#[derive(Clone, Debug)]
pub struct Ball {
    radius: usize,
    vertices: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    sphere_starts: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub color: Generator,
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    /// Elements of length exactly `k`.
    pub fn sphere(&self, k: usize) -> &[GroupElement] {
        if k > self.radius {
            return &[];
        }
        &self.vertices[self.sphere_starts[k]..self.sphere_starts[k + 1]]
    }

    /// Elements of length at most `r` (a prefix of the vertex list).
    pub fn within(&self, r: usize) -> &[GroupElement] {
        let r = r.min(self.radius);
        &self.vertices[..self.sphere_starts[r + 1]]
    }

    pub fn words(&self) -> Vec<Vec<Generator>> {
        self.vertices.iter().map(|g| g.word().to_vec()).collect()
    }

    /// Every directed edge `(g, gs)` with both ends in the ball.
    pub fn edges(&self, graph: &DefiningGraph) -> Vec<BallEdge> {
        let mut out = Vec::new();
        for (from, g) in self.vertices.iter().enumerate() {
            for s in graph.generators() {
                if let Some(to) = self.index_of(&graph.multiply(g, s)) {
                    out.push(BallEdge { from, to, color: s });
                }
            }
        }
        out
    }
}
