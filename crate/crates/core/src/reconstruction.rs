//! Recovering the defining graph from an abstractly presented alternating
//! cup-product algebra, and deciding algebra isomorphism through it.
//!
//! A vertex dual `f_v` is a class whose multiplication map `y ↦ f_v ⌣ y`
//! has rank `deg(v)`, and `f_v ⌣ f_w ≠ 0` exactly when `v` and `w` are
//! adjacent. The search below looks for a basis of `H^1` made of projective
//! classes that behaves this way, then checks the resulting isomorphism
//! entry by entry. Nothing about which classes are vertex duals is assumed
//! beyond what the final check confirms.

use rayon::prelude::*;

use crate::cohomology::{raag_algebra, BasisChange, CupAlgebra, Flavor};
use crate::error::{Error, Result};
use crate::graphs::{are_isomorphic, Graph, IsoWitness};
use crate::linalg::{EchelonBasis, Fp, Matrix};

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReconstructOptions {
    /// Largest number of projective classes the search may enumerate.
    pub cap: u64,
    /// Split the search over the first chosen class on the current rayon pool.
    pub parallel: bool,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub graph: Graph,
    /// `vertex_classes[v]` is the recovered dual of vertex `v`, in the input basis.
    pub vertex_classes: Vec<Vec<u32>>,
    /// Carries `raag_algebra(graph, p)` onto the input algebra.
    pub witness: BasisChange,
}

/// Number of one-dimensional subspaces of `F_p^dim`, saturating at `u128::MAX`.
pub fn projective_count(p: u64, dim: usize) -> u128 {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..dim {
        total = total.saturating_add(power);
        power = power.saturating_mul(p as u128);
    }
    total
}

/// Iterator over normalized representatives of the lines of `F_p^dim`:
/// first nonzero coordinate equal to 1, in lexicographic order.
#[derive(Debug, Clone)]
pub struct ProjectiveClasses {
    p: u32,
    current: Option<Vec<u32>>,
}

impl Iterator for ProjectiveClasses {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let mut v = out.clone();
        let lead = v
            .iter()
            .position(|&x| x != 0)
            .expect("representatives are nonzero");
        // increment the tail after the leading 1 as a base-p counter
        let mut pos = v.len();
        loop {
            if pos == lead + 1 {
                // tail exhausted: move the leading 1 one step left
                if lead == 0 {
                    self.current = None;
                } else {
                    v.iter_mut().for_each(|x| *x = 0);
                    v[lead - 1] = 1;
                    self.current = Some(v);
                }
                break;
            }
            pos -= 1;
            if v[pos] + 1 < self.p {
                v[pos] += 1;
                self.current = Some(v);
                break;
            }
            v[pos] = 0;
        }
        Some(out)
    }
}

pub fn projective_classes(p: u64, dim: usize, cap: u64) -> Result<ProjectiveClasses> {
    let field = Fp::new(p)?;
    let required = projective_count(p, dim);
    if required > cap as u128 {
        return Err(Error::CapExceeded { required, cap });
    }
    let current = (dim > 0).then(|| {
        let mut v = vec![0; dim];
        v[dim - 1] = 1;
        v
    });
    Ok(ProjectiveClasses {
        p: field.modulus(),
        current,
    })
}

struct Candidate {
    vector: Vec<u32>,
    rank: usize,
}

struct Search<'a> {
    alg: &'a CupAlgebra,
    candidates: Vec<Candidate>,
    max_rank: usize,
}

#[derive(Clone)]
struct State {
    chosen: Vec<usize>,
    // multiplication matrices of the chosen classes
    mult: Vec<Matrix>,
    neighbours: Vec<usize>,
    edges: Vec<(usize, usize)>,
    rank_sum: usize,
    span: EchelonBasis,
    products: EchelonBasis,
}

impl<'a> Search<'a> {
    fn new(alg: &'a CupAlgebra, cap: u64) -> Result<Self> {
        let d1 = alg.dim1();
        let mut candidates = Vec::new();
        for vector in projective_classes(alg.prime() as u64, d1, cap)? {
            let rank = alg.cup_rank(&vector)?;
            // a vertex has at most dim1 - 1 neighbours
            if rank < d1 {
                candidates.push(Candidate { vector, rank });
            }
        }
        // stable: lexicographic order within each rank
        candidates.sort_by_key(|c| c.rank);
        let max_rank = candidates.iter().map(|c| c.rank).max().unwrap_or(0);
        Ok(Self {
            alg,
            candidates,
            max_rank,
        })
    }

    fn empty_state(&self) -> State {
        let f = self.alg.field();
        State {
            chosen: Vec::new(),
            mult: Vec::new(),
            neighbours: Vec::new(),
            edges: Vec::new(),
            rank_sum: 0,
            span: EchelonBasis::new(f, self.alg.dim1()),
            products: EchelonBasis::new(f, self.alg.dim2()),
        }
    }

    /// Tries to add candidate `idx`; returns the extended state if every
    /// local constraint still holds.
    fn extend(&self, state: &State, idx: usize) -> Option<State> {
        let d1 = self.alg.dim1();
        let target = 2 * self.alg.dim2();
        let cand = &self.candidates[idx];
        let remaining_after = d1 - state.chosen.len() - 1;
        // ranks are sorted, so later picks have rank >= cand.rank
        if state.rank_sum + cand.rank * (remaining_after + 1) > target {
            return None;
        }
        if state.rank_sum + cand.rank + remaining_after * self.max_rank < target {
            return None;
        }
        if state.span.contains(&cand.vector) {
            return None;
        }
        let f = self.alg.field();
        let mut next = state.clone();
        let pos = state.chosen.len();
        let mut own = 0;
        for (k, m) in state.mult.iter().enumerate() {
            let mut prod = vec![0; self.alg.dim2()];
            for (j, &c) in cand.vector.iter().enumerate() {
                f.axpy(&mut prod, c, m.row(j));
            }
            if prod.iter().all(|&x| x == 0) {
                continue;
            }
            own += 1;
            next.neighbours[k] += 1;
            let rank_k = self.candidates[state.chosen[k]].rank;
            if next.neighbours[k] > rank_k || !next.products.insert(&prod) {
                return None;
            }
            next.edges.push((k, pos));
        }
        if own > cand.rank {
            return None;
        }
        next.neighbours.push(own);
        // every class still needs rank - neighbours more neighbours
        for (k, &nb) in next.neighbours.iter().enumerate() {
            let rank_k = if k == pos {
                cand.rank
            } else {
                self.candidates[state.chosen[k]].rank
            };
            if rank_k - nb > remaining_after {
                return None;
            }
        }
        next.span.insert(&cand.vector);
        next.mult.push(
            self.alg
                .left_multiplication(&cand.vector)
                .expect("candidate has length dim1"),
        );
        next.rank_sum += cand.rank;
        next.chosen.push(idx);
        Some(next)
    }

    fn complete(&self, state: &State) -> bool {
        state.chosen.len() == self.alg.dim1()
            && state.products.len() == self.alg.dim2()
            && state
                .chosen
                .iter()
                .zip(&state.neighbours)
                .all(|(&i, &nb)| self.candidates[i].rank == nb)
    }

    fn dfs(&self, state: &State, start: usize) -> Option<State> {
        if state.chosen.len() == self.alg.dim1() {
            return self.complete(state).then(|| state.clone());
        }
        for idx in start..self.candidates.len() {
            if let Some(next) = self.extend(state, idx) {
                if let Some(found) = self.dfs(&next, idx + 1) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn run(&self, parallel: bool) -> Option<State> {
        let root = self.empty_state();
        if self.alg.dim1() == 0 {
            return self.complete(&root).then_some(root);
        }
        let branch = |idx: usize| {
            self.extend(&root, idx)
                .and_then(|next| self.dfs(&next, idx + 1))
        };
        if parallel {
            (0..self.candidates.len())
                .into_par_iter()
                .find_map_first(branch)
        } else {
            (0..self.candidates.len()).find_map(branch)
        }
    }
}

/// Recovers a graph whose RAAG algebra is isomorphic to `alg`, together
/// with a verified isomorphism.
pub fn reconstruct(alg: &CupAlgebra, options: ReconstructOptions) -> Result<ReconstructionResult> {
    if alg.flavor() != Flavor::Alternating {
        return Err(Error::WrongFlavor {
            expected: "alternating (raag)",
        });
    }
    let search = Search::new(alg, options.cap)?;
    let state = search.run(options.parallel).ok_or(Error::NotARaagAlgebra)?;

    let f = alg.field();
    let n = alg.dim1();
    let graph =
        Graph::new(n, state.edges.iter().copied()).map_err(|e| Error::Internal(e.to_string()))?;
    let vertex_classes: Vec<Vec<u32>> = state
        .chosen
        .iter()
        .map(|&i| search.candidates[i].vector.clone())
        .collect();

    // H^1: raag basis e_v corresponds to f_v, so the change is F^{-1}
    let classes = Matrix::from_columns(f, n, &vertex_classes)?;
    let h1 = classes.inverse().map_err(|_| Error::VerificationFailed)?;
    // H^2: edge class e_{uv} (u < v) goes to f_u ⌣ f_v
    let edge_images = graph
        .edges()
        .iter()
        .map(|&(u, v)| alg.cup(&vertex_classes[u], &vertex_classes[v]))
        .collect::<Result<Vec<_>>>()?;
    let h2 = Matrix::from_columns(f, alg.dim2(), &edge_images)?;
    let witness = BasisChange::new(h1, h2).map_err(|_| Error::VerificationFailed)?;

    let model = raag_algebra(&graph, f.modulus() as u64)?;
    if model.apply_basis_change(&witness)? != *alg {
        return Err(Error::VerificationFailed);
    }
    Ok(ReconstructionResult {
        graph,
        vertex_classes,
        witness,
    })
}

/// Decides whether two alternating algebras over the same field are
/// isomorphic by reconstructing both graphs and comparing them.
pub fn algebras_isomorphic(
    a: &CupAlgebra,
    b: &CupAlgebra,
    options: ReconstructOptions,
) -> Result<Option<IsoWitness>> {
    for alg in [a, b] {
        if alg.flavor() != Flavor::Alternating {
            return Err(Error::WrongFlavor {
                expected: "alternating (raag)",
            });
        }
    }
    if a.field() != b.field() {
        return Err(Error::InvalidParameter(format!(
            "algebras over F_{} and F_{}",
            a.prime(),
            b.prime()
        )));
    }
    if a.dim1() != b.dim1() || a.dim2() != b.dim2() {
        return Ok(None);
    }
    let ga = reconstruct(a, options)?.graph;
    let gb = reconstruct(b, options)?.graph;
    Ok(are_isomorphic(&ga, &gb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::racg_algebra;

    #[test]
    fn projective_examples() {
        let f2: Vec<Vec<u32>> = projective_classes(2, 2, DEFAULT_CAP).unwrap().collect();
        assert_eq!(f2, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(projective_classes(3, 2, DEFAULT_CAP).unwrap().count(), 4);
        assert_eq!(
            projective_classes(2, 10, DEFAULT_CAP).unwrap().count(),
            1023
        );
        assert_eq!(projective_classes(5, 0, DEFAULT_CAP).unwrap().count(), 0);
        assert_eq!(
            projective_classes(2, 21, DEFAULT_CAP).unwrap_err(),
            Error::CapExceeded {
                required: (1 << 21) - 1,
                cap: DEFAULT_CAP
            }
        );
        assert_eq!(
            projective_classes(4, 2, DEFAULT_CAP).unwrap_err(),
            Error::NotPrime(4)
        );
    }

    #[test]
    fn projective_classes_are_sorted_normalized_and_distinct_lines() {
        for (p, dim) in [(2u64, 4usize), (3, 3), (5, 2), (7, 1)] {
            let all: Vec<Vec<u32>> = projective_classes(p, dim, DEFAULT_CAP).unwrap().collect();
            assert_eq!(all.len() as u128, projective_count(p, dim));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for v in &all {
                assert_eq!(v.iter().find(|&&x| x != 0), Some(&1));
            }
            // brute force: scalar multiples cover F_p^dim \ {0} exactly once
            let total = (p as usize).pow(dim as u32) - 1;
            let mut hits = std::collections::HashSet::new();
            for v in &all {
                for s in 1..p as u32 {
                    let w: Vec<u32> = v.iter().map(|&x| x * s % p as u32).collect();
                    assert!(hits.insert(w));
                }
            }
            assert_eq!(hits.len(), total);
        }
    }

    #[test]
    fn reconstruct_c4_unscrambled() {
        let c4 = Graph::cycle(4);
        let alg = raag_algebra(&c4, 2).unwrap();
        let r = reconstruct(&alg, ReconstructOptions::default()).unwrap();
        assert!(are_isomorphic(&r.graph, &c4).is_some());
        assert_eq!(
            raag_algebra(&r.graph, 2)
                .unwrap()
                .apply_basis_change(&r.witness)
                .unwrap(),
            alg
        );
    }

    #[test]
    fn reconstruct_scrambled_p4_over_f3() {
        let p4 = Graph::path(4);
        let alg = raag_algebra(&p4, 3).unwrap();
        for seed in 0..10 {
            let (s, _) = alg.random_scramble(seed);
            let r = reconstruct(&s, ReconstructOptions::default()).unwrap();
            assert!(are_isomorphic(&r.graph, &p4).is_some(), "seed {seed}");
        }
    }

    #[test]
    fn result_invariants_hold() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let (s, _) = raag_algebra(&g, 5).unwrap().random_scramble(9);
        let r = reconstruct(&s, ReconstructOptions::default()).unwrap();
        let mut span = EchelonBasis::new(s.field(), 5);
        for (v, class) in r.vertex_classes.iter().enumerate() {
            assert!(span.insert(class));
            assert_eq!(s.cup_rank(class).unwrap(), r.graph.degree(v).unwrap());
            for (w, other) in r.vertex_classes.iter().enumerate() {
                let nonzero = s.cup(class, other).unwrap().iter().any(|&x| x != 0);
                assert_eq!(nonzero, r.graph.has_edge(v, w));
            }
        }
    }

    #[test]
    fn zero_algebra_gives_empty_graph() {
        let f3 = Fp::new(3).unwrap();
        let zero = CupAlgebra::from_tensor(f3, 4, 0, vec![], Flavor::Alternating).unwrap();
        let r = reconstruct(&zero, ReconstructOptions::default()).unwrap();
        assert_eq!(r.graph, Graph::empty(4));
        let none = CupAlgebra::from_tensor(f3, 0, 0, vec![], Flavor::Alternating).unwrap();
        assert_eq!(
            reconstruct(&none, ReconstructOptions::default())
                .unwrap()
                .graph,
            Graph::empty(0)
        );
    }

    #[test]
    fn malformed_algebra_is_rejected() {
        // dim1 = 2, dim2 = 2: a single product cannot span two dimensions
        let f2 = Fp::new(2).unwrap();
        let t = vec![0, 0, 1, 1, 1, 1, 0, 0];
        let bad = CupAlgebra::from_tensor(f2, 2, 2, t, Flavor::Alternating).unwrap();
        assert_eq!(
            reconstruct(&bad, ReconstructOptions::default()),
            Err(Error::NotARaagAlgebra)
        );
        assert!(matches!(
            reconstruct(
                &racg_algebra(&Graph::path(2)),
                ReconstructOptions::default()
            ),
            Err(Error::WrongFlavor { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let alg = raag_algebra(&Graph::path(4), 3).unwrap();
        let opts = ReconstructOptions {
            cap: 10,
            parallel: false,
        };
        assert_eq!(
            reconstruct(&alg, opts),
            Err(Error::CapExceeded {
                required: 40,
                cap: 10
            })
        );
    }

    #[test]
    fn parallel_search_matches_sequential() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 4), (4, 5)]).unwrap();
        let (s, _) = raag_algebra(&g, 3).unwrap().random_scramble(4);
        let seq = reconstruct(&s, ReconstructOptions::default()).unwrap();
        let par = reconstruct(
            &s,
            ReconstructOptions {
                parallel: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn isomorphism_examples() {
        let p4 = raag_algebra(&Graph::path(4), 2).unwrap();
        let (s, _) = p4.random_scramble(1);
        let opts = ReconstructOptions::default();
        assert!(algebras_isomorphic(&p4, &s, opts).unwrap().is_some());
        let star = raag_algebra(&Graph::star(3), 2).unwrap();
        assert!(algebras_isomorphic(&p4, &star, opts).unwrap().is_none());
        let k3 = raag_algebra(&Graph::complete(3), 2).unwrap();
        assert!(algebras_isomorphic(&p4, &k3, opts).unwrap().is_none());
        let p4_3 = raag_algebra(&Graph::path(4), 3).unwrap();
        assert!(matches!(
            algebras_isomorphic(&p4, &p4_3, opts),
            Err(Error::InvalidParameter(_))
        ));
    }
}
