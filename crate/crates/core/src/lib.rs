//! Cup-product algebras, graph reconstruction and finite-quotient invariants
//! of right-angled Artin groups `A(Γ)` and right-angled Coxeter groups `C(Γ)`.
//!
//! The degree one and two mod-`p` cohomology of `A(Γ)`, with its cup
//! product, determines `Γ` up to isomorphism, and so does the mod-2
//! cohomology of `C(Γ)` once the span of the squares is factored out. This
//! crate builds those algebras from a graph ([`cohomology`]), recovers the
//! graph from an algebra in an arbitrary basis ([`reconstruction`]), and
//! compares groups through homomorphism counts into finite `p`-groups
//! ([`quotients`]).
//!
//! ```
//! use raag_core::{raag_algebra, reconstruct, are_isomorphic, Graph, ReconstructOptions};
//!
//! let c4 = Graph::cycle(4);
//! let (scrambled, _) = raag_algebra(&c4, 3).unwrap().random_scramble(7);
//! let recovered = reconstruct(&scrambled, ReconstructOptions::default()).unwrap();
//! assert!(are_isomorphic(&recovered.graph, &c4).is_some());
//! ```

pub mod cohomology;
pub mod error;
pub mod graphs;
pub mod groups;
pub mod linalg;
pub mod quotients;
pub mod reconstruction;
pub mod rng;

pub use cohomology::{parse_algebra, raag_algebra, racg_algebra, BasisChange, CupAlgebra, Flavor};
pub use error::{Error, Result};
pub use graphs::{are_isomorphic, isomorphism_classes, parse_graph, Component, Graph, IsoWitness};
pub use groups::{catalog, cyclic, dihedral, direct_product, heisenberg, quaternion8, FiniteGroup};
pub use linalg::{Fp, Matrix, Subspace};
pub use quotients::{
    count_homs, count_homs_parallel, distinguish, raag_presentation, racg_presentation,
    remark_extension_presentation, DistinguishOptions, GroupMode, Presentation, RelationTerm,
    SeparationCertificate, SeparationMethod, Verdict,
};
pub use reconstruction::{
    algebras_isomorphic, projective_classes, reconstruct, ReconstructOptions, ReconstructionResult,
    DEFAULT_CAP,
};
pub use rng::SplitMix64;
