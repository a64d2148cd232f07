//! Degree one and two cup-product algebras of right-angled Artin groups over
//! `F_p` and of right-angled Coxeter groups over `F_2`.
//!
//! An algebra is stored as its structure tensor in the current basis of
//! `H^1`: entry `(i, j)` is the vector `e_i ⌣ e_j` in `F_p^{dim2}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::linalg::{Fp, Matrix, Subspace};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// `x ⌣ x = 0` and `y ⌣ x = -(x ⌣ y)`: the algebra of a RAAG.
    Alternating,
    /// Symmetric over `F_2` with squares allowed: the algebra of a RACG.
    Quadratic,
}

impl Flavor {
    pub fn keyword(self) -> &'static str {
        match self {
            Flavor::Alternating => "raag",
            Flavor::Quadratic => "racg",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CupAlgebra {
    field: Fp,
    dim1: usize,
    dim2: usize,
    tensor: Vec<u32>,
    flavor: Flavor,
}

/// A pair of invertible matrices acting on `H^1` and `H^2`.
///
/// Applying it to an algebra replaces basis vector `e_i` of `H^1` by column
/// `i` of `h1` and then pushes every product through `h2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisChange {
    h1: Matrix,
    h2: Matrix,
}

impl BasisChange {
    pub fn new(h1: Matrix, h2: Matrix) -> Result<Self> {
        if h1.field() != h2.field() {
            return Err(Error::InvalidParameter(
                "basis change matrices over different fields".into(),
            ));
        }
        for m in [&h1, &h2] {
            if !m.is_square() {
                return Err(Error::DimensionMismatch {
                    expected: m.rows(),
                    found: m.cols(),
                });
            }
            if !m.is_invertible() {
                return Err(Error::SingularMatrix);
            }
        }
        Ok(Self { h1, h2 })
    }

    pub fn identity(field: Fp, dim1: usize, dim2: usize) -> Self {
        Self {
            h1: Matrix::identity(field, dim1),
            h2: Matrix::identity(field, dim2),
        }
    }

    /// Samples both matrices uniformly from the invertible ones: entries are
    /// drawn row-major and a singular draw is discarded and redrawn. `h1` is
    /// sampled before `h2`.
    pub fn random(field: Fp, dim1: usize, dim2: usize, rng: &mut SplitMix64) -> Self {
        let h1 = random_invertible(field, dim1, rng);
        let h2 = random_invertible(field, dim2, rng);
        Self { h1, h2 }
    }

    pub fn h1(&self) -> &Matrix {
        &self.h1
    }

    pub fn h2(&self) -> &Matrix {
        &self.h2
    }

    pub fn field(&self) -> Fp {
        self.h1.field()
    }

    pub fn inverse(&self) -> Self {
        Self {
            h1: self.h1.inverse().expect("basis change is invertible"),
            h2: self.h2.inverse().expect("basis change is invertible"),
        }
    }

    /// The change equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &BasisChange) -> Result<Self> {
        Ok(Self {
            h1: self.h1.mul(&next.h1)?,
            h2: next.h2.mul(&self.h2)?,
        })
    }
}

fn random_invertible(field: Fp, n: usize, rng: &mut SplitMix64) -> Matrix {
    let p = field.modulus() as u64;
    loop {
        let entries = (0..n * n).map(|_| rng.below(p)).collect();
        let m = Matrix::from_entries(field, n, n, entries).expect("entry count matches");
        if m.is_invertible() {
            return m;
        }
    }
}

impl CupAlgebra {
    /// Builds an algebra from its structure tensor, indexed as
    /// `tensor[(i * dim1 + j) * dim2 + k]`, and checks the flavor's symmetry.
    pub fn from_tensor(
        field: Fp,
        dim1: usize,
        dim2: usize,
        tensor: Vec<u32>,
        flavor: Flavor,
    ) -> Result<Self> {
        if tensor.len() != dim1 * dim1 * dim2 {
            return Err(Error::DimensionMismatch {
                expected: dim1 * dim1 * dim2,
                found: tensor.len(),
            });
        }
        if let Some(&bad) = tensor.iter().find(|&&x| x >= field.modulus()) {
            return Err(Error::InvalidTensor(format!(
                "entry {bad} is not a residue mod {}",
                field.modulus()
            )));
        }
        let alg = Self {
            field,
            dim1,
            dim2,
            tensor,
            flavor,
        };
        alg.check_symmetry()?;
        Ok(alg)
    }

    fn check_symmetry(&self) -> Result<()> {
        let f = self.field;
        if self.flavor == Flavor::Quadratic && f.modulus() != 2 {
            return Err(Error::InvalidTensor(
                "quadratic algebras are defined over F_2 only".into(),
            ));
        }
        for i in 0..self.dim1 {
            if self.flavor == Flavor::Alternating && self.product(i, i).iter().any(|&x| x != 0) {
                return Err(Error::InvalidTensor(format!("e{i} ⌣ e{i} is nonzero")));
            }
            for j in i + 1..self.dim1 {
                let ok = self
                    .product(i, j)
                    .iter()
                    .zip(self.product(j, i))
                    .all(|(&a, &b)| b == f.neg(a));
                if !ok {
                    return Err(Error::InvalidTensor(format!(
                        "e{j} ⌣ e{i} is not the negative of e{i} ⌣ e{j}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn prime(&self) -> u32 {
        self.field.modulus()
    }

    pub fn dim1(&self) -> usize {
        self.dim1
    }

    pub fn dim2(&self) -> usize {
        self.dim2
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// `e_i ⌣ e_j` in the current bases.
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        let start = (i * self.dim1 + j) * self.dim2;
        &self.tensor[start..start + self.dim2]
    }

    pub fn tensor(&self) -> &[u32] {
        &self.tensor
    }

    fn check_len(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.dim1 {
            return Err(Error::DimensionMismatch {
                expected: self.dim1,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the tensor.
    pub fn cup(&self, x: &[u32], y: &[u32]) -> Result<Vec<u32>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let f = self.field;
        let mut out = vec![0; self.dim2];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                f.axpy(&mut out, f.mul(xi, yj), self.product(i, j));
            }
        }
        Ok(out)
    }

    /// Matrix of `y ↦ x ⌣ y`: row `j` is `x ⌣ e_j`.
    pub fn left_multiplication(&self, x: &[u32]) -> Result<Matrix> {
        self.check_len(x)?;
        let f = self.field;
        let mut rows = vec![vec![0; self.dim2]; self.dim1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, row) in rows.iter_mut().enumerate() {
                f.axpy(row, xi, self.product(i, j));
            }
        }
        Matrix::from_rows(f, self.dim2, &rows)
    }

    /// Rank of the linear map `y ↦ x ⌣ y` from `H^1` to `H^2`.
    pub fn cup_rank(&self, x: &[u32]) -> Result<usize> {
        Ok(self.left_multiplication(x)?.rank())
    }

    pub fn apply_basis_change(&self, change: &BasisChange) -> Result<CupAlgebra> {
        if change.field() != self.field {
            return Err(Error::InvalidParameter(
                "basis change and algebra are over different fields".into(),
            ));
        }
        for (expected, m) in [(self.dim1, change.h1()), (self.dim2, change.h2())] {
            if m.rows() != expected || m.cols() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: m.rows(),
                });
            }
            if !m.is_invertible() {
                return Err(Error::SingularMatrix);
            }
        }
        let f = self.field;
        let (d1, d2) = (self.dim1, self.dim2);
        let p1 = change.h1();
        let idx = |i: usize, j: usize| (i * d1 + j) * d2;
        // substitute in the first slot, then the second
        let mut first = vec![0; self.tensor.len()];
        for i in 0..d1 {
            for a in 0..d1 {
                let c = p1.get(a, i);
                if c == 0 {
                    continue;
                }
                for b in 0..d1 {
                    let (dst, src) = (idx(i, b), idx(a, b));
                    let src = &self.tensor[src..src + d2];
                    f.axpy(&mut first[dst..dst + d2], c, src);
                }
            }
        }
        let mut second = vec![0; self.tensor.len()];
        for i in 0..d1 {
            for j in 0..d1 {
                for b in 0..d1 {
                    let c = p1.get(b, j);
                    if c == 0 {
                        continue;
                    }
                    let (dst, src) = (idx(i, j), idx(i, b));
                    let src = first[src..src + d2].to_vec();
                    f.axpy(&mut second[dst..dst + d2], c, &src);
                }
            }
        }
        let mut tensor = vec![0; self.tensor.len()];
        for i in 0..d1 {
            for j in 0..d1 {
                let at = idx(i, j);
                let image = change.h2().apply(&second[at..at + d2])?;
                tensor[at..at + d2].copy_from_slice(&image);
            }
        }
        Ok(CupAlgebra {
            field: f,
            dim1: d1,
            dim2: d2,
            tensor,
            flavor: self.flavor,
        })
    }

    /// Applies a basis change sampled from `seed` and returns it as witness.
    pub fn random_scramble(&self, seed: u64) -> (CupAlgebra, BasisChange) {
        let mut rng = SplitMix64::new(seed);
        let change = BasisChange::random(self.field, self.dim1, self.dim2, &mut rng);
        let scrambled = self
            .apply_basis_change(&change)
            .expect("sampled change matches the algebra");
        (scrambled, change)
    }

    fn require_quadratic(&self) -> Result<()> {
        if self.flavor != Flavor::Quadratic {
            return Err(Error::WrongFlavor {
                expected: "quadratic (racg)",
            });
        }
        Ok(())
    }

    /// Image of the squaring map `x ↦ x ⌣ x`. Squaring is additive mod 2,
    /// so this is the span of the squares of the basis vectors.
    pub fn sigma_subspace(&self) -> Result<Subspace> {
        self.require_quadratic()?;
        let squares: Vec<Vec<u32>> = (0..self.dim1)
            .map(|i| self.product(i, i).to_vec())
            .collect();
        Subspace::span(self.field, self.dim2, &squares)
    }

    /// Quotient of `H^2` by the squaring subspace, giving the alternating
    /// algebra of the corresponding RAAG over `F_2`. Quotient coordinates are
    /// the non-pivot coordinates of the squaring subspace's echelon basis.
    pub fn reduce_racg(&self) -> Result<CupAlgebra> {
        self.require_quadratic()?;
        let sigma = self.sigma_subspace()?;
        if sigma.dim() != self.dim1 {
            return Err(Error::SigmaDimension {
                expected: self.dim1,
                found: sigma.dim(),
            });
        }
        let mut keep = vec![true; self.dim2];
        for &p in sigma.pivots() {
            keep[p] = false;
        }
        let dim2 = self.dim2 - sigma.dim();
        let mut tensor = Vec::with_capacity(self.dim1 * self.dim1 * dim2);
        for i in 0..self.dim1 {
            for j in 0..self.dim1 {
                let reduced = sigma.reduce(self.product(i, j));
                tensor.extend(
                    reduced
                        .iter()
                        .zip(&keep)
                        .filter(|(_, &k)| k)
                        .map(|(&x, _)| x),
                );
            }
        }
        CupAlgebra::from_tensor(self.field, self.dim1, dim2, tensor, Flavor::Alternating)
    }
}

/// Algebra of `A(Γ)` over `F_p`: one `H^1` basis vector per vertex, one
/// `H^2` basis vector per edge (in [`Graph::edges`] order), and
/// `e_u ⌣ e_v = +e_{uv}` for `u < v`.
pub fn raag_algebra(g: &Graph, p: u64) -> Result<CupAlgebra> {
    let field = Fp::new(p)?;
    let (d1, d2) = (g.vertex_count(), g.edge_count());
    let mut tensor = vec![0; d1 * d1 * d2];
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        tensor[(u * d1 + v) * d2 + k] = 1;
        tensor[(v * d1 + u) * d2 + k] = field.neg(1);
    }
    CupAlgebra::from_tensor(field, d1, d2, tensor, Flavor::Alternating)
}

/// Algebra of `C(Γ)` over `F_2`. `H^2` has the edge coordinates first
/// (as in [`raag_algebra`]) followed by one coordinate `α_v = e_v ⌣ e_v`
/// per vertex.
pub fn racg_algebra(g: &Graph) -> CupAlgebra {
    let field = Fp::new(2).expect("2 is prime");
    let (n, m) = (g.vertex_count(), g.edge_count());
    let d2 = m + n;
    let mut tensor = vec![0; n * n * d2];
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        tensor[(u * n + v) * d2 + k] = 1;
        tensor[(v * n + u) * d2 + k] = 1;
    }
    for v in 0..n {
        tensor[(v * n + v) * d2 + m + v] = 1;
    }
    CupAlgebra::from_tensor(field, n, d2, tensor, Flavor::Quadratic)
        .expect("coxeter tensor is symmetric")
}

/// Writes the line-oriented algebra format read by [`parse_algebra`]:
///
/// ```text
/// algebra raag|racg
/// p <prime>
/// dim1 <n>
/// dim2 <m>
/// cup <i> <j> <c_0> ... <c_{m-1}>
/// ```
///
/// One `cup` line per ordered pair with a nonzero product, in row-major order.
impl fmt::Display for CupAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {}", self.flavor.keyword())?;
        writeln!(f, "p {}", self.prime())?;
        writeln!(f, "dim1 {}", self.dim1)?;
        writeln!(f, "dim2 {}", self.dim2)?;
        for i in 0..self.dim1 {
            for j in 0..self.dim1 {
                let v = self.product(i, j);
                if v.iter().any(|&x| x != 0) {
                    let coords: Vec<String> = v.iter().map(u32::to_string).collect();
                    writeln!(f, "cup {i} {j} {}", coords.join(" "))?;
                }
            }
        }
        Ok(())
    }
}

pub fn parse_algebra(text: &str) -> Result<CupAlgebra> {
    let mut flavor = None;
    let mut prime = None;
    let mut dim1 = None;
    let mut dim2 = None;
    let mut tensor: Option<Vec<u32>> = None;
    let mut seen: Vec<bool> = Vec::new();
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
        let words: Vec<&str> = line.split_whitespace().collect();
        let number = |s: &str| {
            s.parse::<u64>()
                .map_err(|_| syntax(format!("expected a non-negative integer, found `{s}`")))
        };
        let single = |words: &[&str]| -> Result<u64> {
            if words.len() != 2 {
                return Err(syntax(format!("expected `{} <value>`", words[0])));
            }
            number(words[1])
        };
        match words[0] {
            "algebra" if flavor.is_none() => {
                flavor = Some(match words.get(1..) {
                    Some(["raag"]) => Flavor::Alternating,
                    Some(["racg"]) => Flavor::Quadratic,
                    _ => return Err(syntax("expected `algebra raag` or `algebra racg`".into())),
                });
            }
            "p" if prime.is_none() => prime = Some(single(&words)?),
            "dim1" if dim1.is_none() => dim1 = Some(single(&words)? as usize),
            "dim2" if dim2.is_none() => dim2 = Some(single(&words)? as usize),
            "cup" => {
                let (Some(p), Some(d1), Some(d2)) = (prime, dim1, dim2) else {
                    return Err(syntax(
                        "`cup` before the `p`, `dim1` and `dim2` headers".into(),
                    ));
                };
                if words.len() != 3 + d2 {
                    return Err(syntax(format!(
                        "expected `cup <i> <j>` and {d2} coordinates"
                    )));
                }
                let (i, j) = (number(words[1])? as usize, number(words[2])? as usize);
                if i >= d1 || j >= d1 {
                    return Err(syntax(format!("index out of range for dim1 = {d1}")));
                }
                let t = tensor.get_or_insert_with(|| vec![0; d1 * d1 * d2]);
                seen.resize(d1 * d1, false);
                if std::mem::replace(&mut seen[i * d1 + j], true) {
                    return Err(syntax(format!("repeated product ({i}, {j})")));
                }
                for (k, w) in words[3..].iter().enumerate() {
                    let c = number(w)?;
                    if c >= p {
                        return Err(syntax(format!("coordinate {c} is not a residue mod {p}")));
                    }
                    t[(i * d1 + j) * d2 + k] = c as u32;
                }
            }
            "algebra" | "p" | "dim1" | "dim2" => {
                return Err(syntax(format!("repeated `{}` header", words[0])))
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }
    let missing = |what: &str| Error::Syntax {
        line: text.lines().count().max(1),
        message: format!("missing `{what}` header"),
    };
    let flavor = flavor.ok_or_else(|| missing("algebra"))?;
    let field = Fp::new(prime.ok_or_else(|| missing("p"))?)?;
    let d1 = dim1.ok_or_else(|| missing("dim1"))?;
    let d2 = dim2.ok_or_else(|| missing("dim2"))?;
    let tensor = tensor.unwrap_or_else(|| vec![0; d1 * d1 * d2]);
    CupAlgebra::from_tensor(field, d1, d2, tensor, flavor)
}
