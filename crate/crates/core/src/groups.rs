//! Finite groups given by multiplication tables, and a small catalog of
//! p-groups used as hom-count targets.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::is_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    name: String,
}

impl FiniteGroup {
    /// Builds a group from its multiplication table (`table[a * order + b]`
    /// is `a * b`), checking closure, associativity, the identity and inverses.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<usize>,
        identity: usize,
    ) -> Result<Self> {
        let name = name.into();
        let fail = |why: &str| Err(Error::InvalidGroup(format!("{name}: {why}")));
        if order == 0 {
            return fail("empty group");
        }
        if table.len() != order * order {
            return fail("table size is not order^2");
        }
        if table.iter().any(|&x| x >= order) {
            return fail("table not closed");
        }
        if identity >= order {
            return fail("identity out of range");
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        if (0..order).any(|a| mul(identity, a) != a || mul(a, identity) != a) {
            return fail("identity is not neutral");
        }
        if (0..order).any(|a| !(0..order).any(|b| mul(a, b) == identity)) {
            return fail("missing inverse");
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul(a, b);
                for c in 0..order {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return fail("not associative");
                    }
                }
            }
        }
        Ok(Self {
            order,
            table,
            identity,
            name,
        })
    }

    /// Builds the table from a multiplication closure on `0..order`.
    pub fn from_fn<F>(
        name: impl Into<String>,
        order: usize,
        identity: usize,
        mul: F,
    ) -> Result<Self>
    where
        F: Fn(usize, usize) -> usize,
    {
        let table = (0..order * order)
            .map(|i| mul(i / order.max(1), i % order.max(1)))
            .collect();
        Self::from_table(name, order, table, identity)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn pow(&self, a: usize, k: u32) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.commute(a, b)))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Cyclic group `C_k` on residues mod `k`.
pub fn cyclic(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::InvalidParameter("cyclic group of order 0".into()));
    }
    FiniteGroup::from_fn(format!("C{k}"), k, 0, |a, b| (a + b) % k)
}

/// Direct product; element `(g, h)` is encoded as `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order, h.order);
    let name = format!("{}x{}", g.name, h.name);
    let table = (0..m * n)
        .flat_map(|a| (0..m * n).map(move |b| (a, b)))
        .map(|(a, b)| g.mul(a / n, b / n) * n + h.mul(a % n, b % n))
        .collect();
    FiniteGroup::from_table(name, m * n, table, g.identity * n + h.identity)
        .expect("product of groups is a group")
}

/// Dihedral group of order `2k`, the symmetries of a `k`-gon, named `D{2k}`.
/// Element `r^i s^e` is encoded as `e * k + i`.
pub fn dihedral(k: usize) -> Result<FiniteGroup> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "dihedral group needs k >= 1".into(),
        ));
    }
    // r^i s^a * r^j s^b = r^(i + (-1)^a j) s^(a+b)
    FiniteGroup::from_fn(format!("D{}", 2 * k), 2 * k, 0, |x, y| {
        let (a, i) = (x / k, x % k);
        let (b, j) = (y / k, y % k);
        let j = if a == 1 { (k - j) % k } else { j };
        ((a + b) % 2) * k + (i + j) % k
    })
}

/// Quaternion group `Q8 = {±1, ±i, ±j, ±k}`. Element `sign * 4 + unit` with
/// units ordered `1, i, j, k`.
pub fn quaternion8() -> FiniteGroup {
    // unit products: (sign, unit) for u * v
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn("Q8", 8, 0, |x, y| {
        let (s, u) = UNIT[x % 4][y % 4];
        ((x / 4 + y / 4 + s) % 2) * 4 + u
    })
    .expect("quaternion table is a group")
}

/// Heisenberg group of upper unitriangular 3x3 matrices over `F_p`, `p` odd.
/// Element `(a, b, c)` (entries above the diagonal) is `a p^2 + b p + c`.
pub fn heisenberg(p: usize) -> Result<FiniteGroup> {
    if p == 2 || !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!(
            "heisenberg group needs an odd prime, got {p}"
        )));
    }
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    FiniteGroup::from_fn(format!("Heis{p}"), p * p * p, 0, |x, y| {
        let (a1, b1, c1) = split(x);
        let (a2, b2, c2) = split(y);
        // [1 a1 c1][1 a2 c2]   [1 a1+a2 c1+c2+a1*b2]
        // [0 1  b1][0 1  b2] = [0 1     b1+b2      ]
        let a = (a1 + a2) % p;
        let b = (b1 + b2) % p;
        let c = (c1 + c2 + a1 * b2) % p;
        a * p * p + b * p + c
    })
}

/// The fixed catalog of `p`-groups of order at most `bound`, sorted by
/// ascending order and then ascending name.
///
/// For `p = 2`: cyclic `C2..C32`, elementary abelian and mixed abelian
/// products, `D8`, `D16`, `D32`, `Q8` and its products with `C2`, `C4` and
/// `C2xC2`. For odd `p`: `Cp`, `Cp^2`, `Cp^3`, `CpxCp`, `CpxCp^2` and the
/// Heisenberg group.
pub fn catalog(p: u64, bound: usize) -> Result<Vec<FiniteGroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut out: Vec<FiniteGroup> = Vec::new();
    let mut push = |g: FiniteGroup| {
        if g.order() <= bound {
            out.push(g);
        }
    };
    let c = |k: usize| cyclic(k).expect("k >= 1");
    let prod = |gs: &[usize]| {
        let mut g = c(gs[0]);
        for &k in &gs[1..] {
            g = direct_product(&g, &c(k));
        }
        g
    };
    if p == 2 {
        for k in [2, 4, 8, 16, 32] {
            push(c(k));
        }
        let abelian: &[&[usize]] = &[
            &[2, 2],
            &[2, 2, 2],
            &[2, 2, 2, 2],
            &[2, 2, 2, 2, 2],
            &[2, 2, 2, 2, 2, 2],
            &[2, 4],
            &[2, 8],
            &[4, 4],
            &[2, 16],
            &[2, 2, 4],
            &[2, 2, 8],
            &[2, 4, 4],
            &[4, 8],
            &[2, 2, 2, 4],
        ];
        for parts in abelian {
            let order: usize = parts.iter().product();
            if order <= bound {
                push(prod(parts));
            }
        }
        for k in [4, 8, 16] {
            push(dihedral(k).expect("k >= 1"));
        }
        let q8 = quaternion8();
        if 16 <= bound {
            push(direct_product(&q8, &c(2)));
        }
        if 32 <= bound {
            push(direct_product(&q8, &c(4)));
            push(direct_product(&q8, &prod(&[2, 2])));
        }
        push(q8);
    } else {
        let p = p as usize;
        for k in [p, p * p, p * p * p] {
            if k <= bound {
                push(c(k));
            }
        }
        if p * p <= bound {
            push(prod(&[p, p]));
        }
        if p * p * p <= bound {
            push(prod(&[p, p * p]));
            push(heisenberg(p)?);
        }
    }
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.name().cmp(b.name()))
    });
    Ok(out)
}
