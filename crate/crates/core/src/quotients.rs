//! Presentations of RAAGs, RACGs and the order-4 extension of a RACG, exact
//! homomorphism counts into finite groups, and separation certificates.
//!
//! `|Hom(G, Q)|` for a finite group `Q` depends only on the profinite
//! completion of `G` (and, for a `p`-group `Q`, only on the pro-`p`
//! completion), so a differing count separates two groups.

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::cohomology::{raag_algebra, racg_algebra};
use crate::error::{Error, Result};
use crate::graphs::{are_isomorphic, Graph};
use crate::groups::{catalog, FiniteGroup};
use crate::linalg::is_prime;
use crate::reconstruction::{reconstruct, ReconstructOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationTerm {
    /// `[g_i, g_j] = 1`
    Commutator(usize, usize),
    /// `g_i^k = 1`
    Power(usize, u32),
    /// `g_i^2` commutes with every generator.
    CentralSquare(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    n_generators: usize,
    relations: Vec<RelationTerm>,
    label: String,
}

impl Presentation {
    pub fn new(
        label: impl Into<String>,
        n_generators: usize,
        relations: Vec<RelationTerm>,
    ) -> Result<Self> {
        for r in &relations {
            let ok = match *r {
                RelationTerm::Commutator(i, j) => i < n_generators && j < n_generators,
                RelationTerm::Power(i, k) => i < n_generators && k >= 1,
                RelationTerm::CentralSquare(i) => i < n_generators,
            };
            if !ok {
                return Err(Error::InvalidParameter(format!(
                    "relation {r:?} is invalid"
                )));
            }
        }
        Ok(Self {
            n_generators,
            relations,
            label: label.into(),
        })
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relations(&self) -> &[RelationTerm] {
        &self.relations
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Whether the assignment `g_i ↦ images[i]` respects every relation.
    pub fn is_satisfied(&self, q: &FiniteGroup, images: &[usize]) -> bool {
        images.len() == self.n_generators && self.atoms().iter().all(|a| a.holds(q, images))
    }

    fn atoms(&self) -> Vec<Atom> {
        let mut atoms = Vec::new();
        for r in &self.relations {
            match *r {
                RelationTerm::Commutator(i, j) => atoms.push(Atom::Commute(i, j)),
                RelationTerm::Power(i, k) => atoms.push(Atom::Power(i, k)),
                RelationTerm::CentralSquare(i) => atoms.extend(
                    (0..self.n_generators)
                        .filter(|&j| j != i)
                        .map(|j| Atom::SquareCommutes(i, j)),
                ),
            }
        }
        atoms
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| match *r {
                RelationTerm::Commutator(i, j) => format!("[g{i},g{j}]"),
                RelationTerm::Power(i, k) => format!("g{i}^{k}"),
                RelationTerm::CentralSquare(i) => format!("g{i}^2 central"),
            })
            .collect();
        write!(
            f,
            "{}: <{} generators | {}>",
            self.label,
            self.n_generators,
            rels.join(", ")
        )
    }
}

/// Single-condition pieces that relations compile into.
#[derive(Debug, Clone, Copy)]
enum Atom {
    Commute(usize, usize),
    Power(usize, u32),
    SquareCommutes(usize, usize),
}

impl Atom {
    fn generators(self) -> (usize, usize) {
        match self {
            Atom::Commute(i, j) | Atom::SquareCommutes(i, j) => (i, j),
            Atom::Power(i, _) => (i, i),
        }
    }

    fn holds(self, q: &FiniteGroup, x: &[usize]) -> bool {
        match self {
            Atom::Commute(i, j) => q.commute(x[i], x[j]),
            Atom::Power(i, k) => q.pow(x[i], k) == q.identity(),
            Atom::SquareCommutes(i, j) => q.commute(q.mul(x[i], x[i]), x[j]),
        }
    }
}

pub fn raag_presentation(g: &Graph) -> Presentation {
    let relations = g
        .edges()
        .iter()
        .map(|&(u, v)| RelationTerm::Commutator(u, v))
        .collect();
    Presentation::new("A", g.vertex_count(), relations).expect("edges are in range")
}

pub fn racg_presentation(g: &Graph) -> Presentation {
    let mut p = raag_presentation(g);
    p.relations
        .extend((0..g.vertex_count()).map(|v| RelationTerm::Power(v, 2)));
    p.label = "C".into();
    p
}

/// `<V | [u,v] for edges, v^2 for v != w, w^4, w^2 central>`: a central
/// extension of `C(Γ)` by `Z/2` that maps onto `Z/4`.
pub fn remark_extension_presentation(g: &Graph, w: usize) -> Result<Presentation> {
    let n = g.vertex_count();
    if w >= n {
        return Err(Error::VertexOutOfRange { vertex: w, n });
    }
    let mut relations: Vec<RelationTerm> = g
        .edges()
        .iter()
        .map(|&(u, v)| RelationTerm::Commutator(u, v))
        .collect();
    relations.extend(
        (0..n)
            .filter(|&v| v != w)
            .map(|v| RelationTerm::Power(v, 2)),
    );
    relations.push(RelationTerm::Power(w, 4));
    relations.push(RelationTerm::CentralSquare(w));
    Presentation::new(format!("P(w={w})"), n, relations)
}

/// Exact `|Hom(G, q)|` for the group `G` presented by `pres`.
///
/// Generators linked by relations are counted together by backtracking,
/// most-constrained generator first, checking each relation as soon as all
/// of its generators are assigned. Unlinked groups of generators multiply.
pub fn count_homs(pres: &Presentation, q: &FiniteGroup) -> BigUint {
    count_homs_with(pres, q, false)
}

/// As [`count_homs`], splitting each block on the image of its first
/// generator across the current rayon pool. The result is identical.
pub fn count_homs_parallel(pres: &Presentation, q: &FiniteGroup) -> BigUint {
    count_homs_with(pres, q, true)
}

fn count_homs_with(pres: &Presentation, q: &FiniteGroup, parallel: bool) -> BigUint {
    let n = pres.n_generators();
    let atoms = pres.atoms();
    let mut total = BigUint::from(1u32);
    for block in linked_blocks(n, &atoms) {
        let count = count_block(n, &block, &atoms, q, parallel);
        if count == 0 {
            return BigUint::from(0u32);
        }
        total *= count;
    }
    total
}

/// Connected pieces of the "shares a relation" graph on generators.
fn linked_blocks(n: usize, atoms: &[Atom]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for a in atoms {
        let (i, j) = a.generators();
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        parent[ri.max(rj)] = ri.min(rj);
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if index[r] == usize::MAX {
            index[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[r]].push(v);
    }
    blocks
}

fn count_block(n: usize, block: &[usize], atoms: &[Atom], q: &FiniteGroup, parallel: bool) -> u64 {
    // most relations first; ties by index
    let incidence = |v: usize| {
        atoms
            .iter()
            .filter(|a| {
                let (i, j) = a.generators();
                i == v || j == v
            })
            .count()
    };
    let mut order = block.to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(incidence(v)), v));
    let mut position = vec![usize::MAX; n];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    // checks[k]: atoms whose last assigned generator is order[k]
    let mut checks: Vec<Vec<Atom>> = vec![Vec::new(); order.len()];
    for &a in atoms {
        let (i, j) = a.generators();
        if position[i] != usize::MAX {
            checks[position[i].max(position[j])].push(a);
        }
    }
    let search = |first: usize| {
        let mut images = vec![0usize; n];
        images[order[0]] = first;
        if !checks[0].iter().all(|a| a.holds(q, &images)) {
            return 0;
        }
        extend_count(&order, &checks, q, 1, &mut images)
    };
    // the count never exceeds the number of leaves visited, so u64 suffices
    if parallel {
        (0..q.order()).into_par_iter().map(search).sum()
    } else {
        (0..q.order()).map(search).sum()
    }
}

fn extend_count(
    order: &[usize],
    checks: &[Vec<Atom>],
    q: &FiniteGroup,
    depth: usize,
    images: &mut [usize],
) -> u64 {
    if depth == order.len() {
        return 1;
    }
    let v = order[depth];
    let mut total = 0;
    for x in 0..q.order() {
        images[v] = x;
        if checks[depth].iter().all(|a| a.holds(q, images)) {
            total += extend_count(order, checks, q, depth + 1, images);
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupMode {
    Raag,
    Racg,
}

impl GroupMode {
    pub fn keyword(self) -> &'static str {
        match self {
            GroupMode::Raag => "raag",
            GroupMode::Racg => "racg",
        }
    }

    pub fn presentation(self, g: &Graph) -> Presentation {
        match self {
            GroupMode::Raag => raag_presentation(g),
            GroupMode::Racg => racg_presentation(g),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Distinct,
    NotSeparated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationMethod {
    /// A finite group with different hom counts from the two groups.
    HomCount {
        group: String,
        count1: BigUint,
        count2: BigUint,
    },
    /// The reconstructed graphs of the two cup-product algebras are not isomorphic.
    Cohomology {
        graph1: Graph,
        graph2: Graph,
    },
    Absent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub verdict: Verdict,
    pub method: SeparationMethod,
    /// Groups tried before a verdict, with their counts, in catalog order.
    pub tried: Vec<(String, BigUint, BigUint)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistinguishOptions {
    pub mode: GroupMode,
    pub p: u64,
    /// Largest catalog group order to try.
    pub order_bound: usize,
    pub reconstruct: ReconstructOptions,
}

/// Tries to separate `A(g)` from `A(h)` (or `C(g)` from `C(h)`) first by hom
/// counts into the `p`-group catalog, in catalog order, then through the
/// degree one and two cohomology.
pub fn distinguish(
    g: &Graph,
    h: &Graph,
    options: DistinguishOptions,
) -> Result<SeparationCertificate> {
    let p = options.p;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if options.mode == GroupMode::Racg && p != 2 {
        return Err(Error::InvalidParameter(format!(
            "racg mode works over p = 2, got p = {p}"
        )));
    }
    if are_isomorphic(g, h).is_some() {
        return Ok(SeparationCertificate {
            verdict: Verdict::NotSeparated,
            method: SeparationMethod::Absent,
            tried: Vec::new(),
        });
    }
    let (pg, ph) = (options.mode.presentation(g), options.mode.presentation(h));
    let mut tried = Vec::new();
    for q in catalog(p, options.order_bound)? {
        let (c1, c2) = (count_homs(&pg, &q), count_homs(&ph, &q));
        tried.push((q.name().to_string(), c1.clone(), c2.clone()));
        if c1 != c2 {
            return Ok(SeparationCertificate {
                verdict: Verdict::Distinct,
                method: SeparationMethod::HomCount {
                    group: q.name().to_string(),
                    count1: c1,
                    count2: c2,
                },
                tried,
            });
        }
    }
    let algebra = |x: &Graph| match options.mode {
        GroupMode::Raag => raag_algebra(x, p),
        GroupMode::Racg => racg_algebra(x).reduce_racg(),
    };
    let graph1 = reconstruct(&algebra(g)?, options.reconstruct)?.graph;
    let graph2 = reconstruct(&algebra(h)?, options.reconstruct)?.graph;
    if are_isomorphic(&graph1, &graph2).is_some() {
        return Err(Error::Internal(
            "non-isomorphic graphs produced isomorphic cup-product algebras".into(),
        ));
    }
    Ok(SeparationCertificate {
        verdict: Verdict::Distinct,
        method: SeparationMethod::Cohomology { graph1, graph2 },
        tried,
    })
}
