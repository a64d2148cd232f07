//! Finite simplicial graphs: the defining data of right-angled Artin and
//! Coxeter groups.
//!
//! Vertices are the integers `0..n`. Edges are unordered pairs stored as
//! `(u, v)` with `u < v`, sorted.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<bool>,
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated edges.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![false; n * n];
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            let (a, b) = (u.min(v), u.max(v));
            if adj[a * n + b] {
                return Err(Error::DuplicateEdge(a, b));
            }
            adj[a * n + b] = true;
            adj[b * n + a] = true;
            list.push((a, b));
        }
        list.sort_unstable();
        Ok(Self {
            n,
            edges: list,
            adj,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![false; n * n],
        }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(n, edges).expect("complete graph edges are valid")
    }

    /// The star `K_{1,k}` with center `0`.
    pub fn star(k: usize) -> Self {
        Self::new(k + 1, (1..=k).map(|v| (0, v))).expect("star edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Index of edge `{u, v}` in [`Graph::edges`], if present.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.adj[v * self.n + w])
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(self.neighbors(v).count())
    }

    /// Degrees in ascending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.neighbors(v).count()).collect();
        degrees.sort_unstable();
        degrees
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        Self::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Self {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Self::new(self.n + other.n, edges).expect("disjoint union of valid graphs is valid")
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        Self::new(vertices.len(), edges)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, ordered by smallest original vertex.
    pub fn components(&self) -> Vec<Component> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut vertices = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        vertices.push(w);
                        queue.push_back(w);
                    }
                }
            }
            vertices.sort_unstable();
            let graph = self
                .induced(&vertices)
                .expect("component vertices are in range");
            out.push(Component { graph, vertices });
        }
        out
    }
}

/// A connected component together with its embedding into the parent graph:
/// local vertex `i` is `vertices[i]` in the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

/// Parses the line-oriented graph format:
///
/// ```text
/// graph <n>
/// edge <u> <v>
/// ```
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut adj = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |message: String| Error::Syntax {
            line: line_no,
            message,
        };
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        let args: Vec<&str> = words.collect();
        let number = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| syntax(format!("expected a non-negative integer, found `{s}`")))
        };
        match (keyword, n) {
            ("graph", None) => {
                if args.len() != 1 {
                    return Err(syntax("expected `graph <n>`".into()));
                }
                let count = number(args[0])?;
                adj = vec![false; count * count];
                n = Some(count);
            }
            ("graph", Some(_)) => return Err(syntax("repeated `graph` header".into())),
            ("edge", Some(count)) => {
                if args.len() != 2 {
                    return Err(syntax("expected `edge <u> <v>`".into()));
                }
                let (u, v) = (number(args[0])?, number(args[1])?);
                for x in [u, v] {
                    if x >= count {
                        return Err(Error::VertexOutOfRange {
                            vertex: x,
                            n: count,
                        });
                    }
                }
                if u == v {
                    return Err(Error::LoopEdge(u));
                }
                if adj[u * count + v] {
                    return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
                }
                adj[u * count + v] = true;
                adj[v * count + u] = true;
                edges.push((u, v));
            }
            ("edge", None) => return Err(syntax("`edge` before `graph` header".into())),
            (other, _) => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    let n = n.ok_or(Error::Syntax {
        line: text.lines().count().max(1),
        message: "missing `graph <n>` header".into(),
    })?;
    Graph::new(n, edges)
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {}", self.n)?;
        for &(u, v) in &self.edges {
            writeln!(f, "edge {u} {v}")?;
        }
        Ok(())
    }
}

/// A graph isomorphism: vertex `v` of the first graph maps to `mapping[v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub mapping: Vec<usize>,
}

impl IsoWitness {
    /// Checks that `mapping` is a bijection carrying edges of `g` onto edges of `h`.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        if g.n != h.n || g.edge_count() != h.edge_count() || self.mapping.len() != g.n {
            return false;
        }
        let mut hit = vec![false; g.n];
        for &m in &self.mapping {
            if m >= g.n || hit[m] {
                return false;
            }
            hit[m] = true;
        }
        g.edges
            .iter()
            .all(|&(u, v)| h.has_edge(self.mapping[u], self.mapping[v]))
    }
}

/// Joint colour refinement of two graphs. Colours are comparable across
/// the two graphs.
fn refine_colours(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let total = g.n + h.n;
    let mut colour = vec![0usize; total];
    let locate = |i: usize| {
        if i < g.n {
            (g, i, 0)
        } else {
            (h, i - g.n, g.n)
        }
    };
    let mut classes = 1;
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..total)
            .map(|i| {
                let (gr, v, base) = locate(i);
                let mut nb: Vec<usize> = gr.neighbors(v).map(|w| colour[base + w]).collect();
                nb.sort_unstable();
                (colour[i], nb)
            })
            .collect();
        let mut index: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for sig in &signatures {
            let next = index.len();
            index.entry(sig).or_insert(next);
        }
        // BTreeMap order gives colours independent of vertex numbering.
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> =
            index.keys().enumerate().map(|(r, k)| (*k, r)).collect();
        let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        colour = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let h_colours = colour.split_off(g.n);
    (colour, h_colours)
}

/// Decides graph isomorphism by backtracking over refined colour classes.
///
/// Vertices of `g` are assigned in index order and candidates in `h` are
/// tried in index order, so the witness returned is the lexicographically
/// smallest isomorphism. In particular `are_isomorphic(g, g)` is the identity.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<IsoWitness> {
    if g.n != h.n || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence()
    {
        return None;
    }
    let (cg, ch) = refine_colours(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return None;
    }
    let mut mapping = vec![usize::MAX; g.n];
    let mut used = vec![false; h.n];
    if extend_iso(g, h, &cg, &ch, 0, &mut mapping, &mut used) {
        Some(IsoWitness { mapping })
    } else {
        None
    }
}

fn extend_iso(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    v: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == g.n {
        return true;
    }
    for cand in 0..h.n {
        if used[cand] || ch[cand] != cg[v] {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(mapping[u], cand));
        if !consistent {
            continue;
        }
        mapping[v] = cand;
        used[cand] = true;
        if extend_iso(g, h, cg, ch, v + 1, mapping, used) {
            return true;
        }
        used[cand] = false;
    }
    mapping[v] = usize::MAX;
    false
}

/// One representative of every isomorphism class of graphs on `n` vertices,
/// ordered by edge count and then by edge list.
///
/// Classes are grown one edge at a time and deduplicated with
/// [`are_isomorphic`] inside buckets of equal degree sequence.
pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
    let mut layer = vec![Graph::empty(n)];
    let mut all = layer.clone();
    let max_edges = n * n.saturating_sub(1) / 2;
    for _ in 0..max_edges {
        let mut buckets: BTreeMap<Vec<usize>, Vec<Graph>> = BTreeMap::new();
        let mut next = Vec::new();
        for g in &layer {
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let cand = Graph::new(n, g.edges.iter().copied().chain([(u, v)]))
                        .expect("adding a missing edge keeps the graph valid");
                    let bucket = buckets.entry(cand.degree_sequence()).or_default();
                    if bucket.iter().all(|b| are_isomorphic(b, &cand).is_none()) {
                        bucket.push(cand.clone());
                        next.push(cand);
                    }
                }
            }
        }
        next.sort_by(|a, b| a.edges.cmp(&b.edges));
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}
