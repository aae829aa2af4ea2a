//! Quandle chain complex in degrees <= 3 (quotient by the degenerate
//! subcomplex), second quandle homology with explicit cycle generators,
//! 2-cocycle verification and search, and the homomorphism a cocycle
//! induces on homology classes.

use num_traits::{ToPrimitive, Zero};

use crate::intmat;
use crate::quandle::FiniteQuandle;
use crate::ring::{AbelianGroup, GroupElem};
use crate::Int;

/// Ordered basis of the degree-`n` quotient chain group: non-degenerate
/// tuples (no `x_i = x_{i+1}`) in lexicographic order.
pub fn chain_basis(x: &FiniteQuandle, degree: usize) -> Vec<Vec<usize>> {
    assert!((1..=3).contains(&degree), "degrees 1..=3 only");
    let n = x.order();
    let mut out = Vec::new();
    let mut tuple = vec![0usize; degree];
    'outer: loop {
        if tuple.windows(2).all(|w| w[0] != w[1]) {
            out.push(tuple.clone());
        }
        let mut i = degree;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
        }
    }
    out
}

fn pair_index(x: &FiniteQuandle, a: usize, b: usize) -> Option<usize> {
    if a == b {
        return None;
    }
    let n = x.order();
    Some(a * (n - 1) + if b > a { b - 1 } else { b })
}

/// Boundary `∂_n` on the quotient bases, as a `|C_{n-1}| x |C_n|` integer
/// matrix. Degenerate targets project to zero.
pub fn boundary_matrix(x: &FiniteQuandle, degree: usize) -> Vec<Vec<Int>> {
    assert!(
        (2..=3).contains(&degree),
        "boundaries for degrees 2 and 3 only"
    );
    let n = x.order();
    let cols = chain_basis(x, degree);
    let nrows = if degree == 2 { n } else { n * (n - 1) };
    let mut m = vec![vec![Int::zero(); cols.len()]; nrows];
    for (j, tuple) in cols.iter().enumerate() {
        if degree == 2 {
            // ∂(a, b) = (a) - (a^b)
            let (a, b) = (tuple[0], tuple[1]);
            m[a][j] += 1;
            m[x.op(a, b)][j] -= 1;
        } else {
            // ∂(a, b, c) = (a, c) - (a^b, c) - (a, b) + (a^c, b^c)
            let (a, b, c) = (tuple[0], tuple[1], tuple[2]);
            let mut add = |p: Option<usize>, sign: i64| {
                if let Some(i) = p {
                    m[i][j] += sign;
                }
            };
            add(pair_index(x, a, c), 1);
            add(pair_index(x, x.op(a, b), c), -1);
            add(pair_index(x, a, b), -1);
            add(pair_index(x, x.op(a, c), x.op(b, c)), 1);
        }
    }
    m
}

/// Second quandle homology: invariant factors (`0` encodes a free summand)
/// plus one explicit generating 2-cycle per factor, in the coordinates of
/// [`chain_basis`] at degree 2.
#[derive(Debug, Clone)]
pub struct HomologyResult {
    pub factors: Vec<Int>,
    pub generators: Vec<Vec<Int>>,
    pub basis: Vec<(usize, usize)>,
}

impl HomologyResult {
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// `H2 = Z/2 + Z`-style description.
    pub fn group_string(&self) -> String {
        if self.factors.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| {
                if f.is_zero() {
                    "Z".to_string()
                } else {
                    format!("Z/{f}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Smith normal form of `∂_3` restricted to `ker ∂_2` coordinates.
pub fn quandle_h2(x: &FiniteQuandle) -> HomologyResult {
    let d2 = boundary_matrix(x, 2);
    let d3 = boundary_matrix(x, 3);
    let c2 = chain_basis(x, 2);
    let kernel = intmat::kernel_basis(&d2, c2.len());
    let image: Vec<Vec<Int>> = if d3.is_empty() || d3[0].is_empty() {
        vec![]
    } else {
        (0..d3[0].len())
            .map(|j| d3.iter().map(|row| row[j].clone()).collect())
            .collect()
    };
    let q = intmat::lattice_quotient(kernel, &image);
    let basis = c2.into_iter().map(|t| (t[0], t[1])).collect();
    HomologyResult {
        factors: q.factors,
        generators: q.generators,
        basis,
    }
}

/// Where a cocycle candidate fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum CocycleViolation {
    #[error("θ({x},{x}) != 0")]
    Diagonal { x: usize },
    #[error("cocycle identity fails at ({x},{y},{z})")]
    Triple { x: usize, y: usize, z: usize },
}

/// Quandle 2-cocycle candidate: a full table of values `θ(x, y)` in an
/// abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    group: AbelianGroup,
    values: Vec<Vec<GroupElem>>,
}

impl Cocycle {
    pub fn new(group: AbelianGroup, values: Vec<Vec<GroupElem>>) -> Self {
        let n = values.len();
        assert!(
            values.iter().all(|row| row.len() == n),
            "square value table required"
        );
        Cocycle { group, values }
    }

    pub fn zero(n: usize, group: &AbelianGroup) -> Self {
        Cocycle {
            group: group.clone(),
            values: vec![vec![group.zero_elem(); n]; n],
        }
    }

    pub fn from_fn(n: usize, group: &AbelianGroup, f: impl Fn(usize, usize) -> GroupElem) -> Self {
        let values = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Cocycle {
            group: group.clone(),
            values,
        }
    }

    /// Coboundary of a 1-cochain: `θ(a, b) = φ(a) - φ(a^b)`.
    pub fn coboundary(x: &FiniteQuandle, group: &AbelianGroup, phi: &[GroupElem]) -> Self {
        assert_eq!(phi.len(), x.order());
        Self::from_fn(x.order(), group, |a, b| {
            group.add(&phi[a], &group.neg(&phi[x.op(a, b)]))
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, x: usize, y: usize) -> &GroupElem {
        &self.values[x][y]
    }

    pub fn set_value(&mut self, x: usize, y: usize, v: GroupElem) {
        self.values[x][y] = v;
    }

    /// Exhaustive diagonal plus triple-identity verification.
    pub fn check(&self, x: &FiniteQuandle) -> Result<(), CocycleViolation> {
        let n = x.order();
        assert_eq!(n, self.values.len(), "cocycle table order mismatch");
        for a in 0..n {
            if !self.values[a][a].is_zero() {
                return Err(CocycleViolation::Diagonal { x: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // θ(a,b) + θ(a^b,c) = θ(a,c) + θ(a^c,b^c)
                    let lhs = self
                        .group
                        .add(&self.values[a][b], &self.values[x.op(a, b)][c]);
                    let rhs = self
                        .group
                        .add(&self.values[a][c], &self.values[x.op(a, c)][x.op(b, c)]);
                    if lhs != rhs {
                        return Err(CocycleViolation::Triple { x: a, y: b, z: c });
                    }
                }
            }
        }
        Ok(())
    }

    /// Linear extension applied to an integer 2-chain in the given pair
    /// basis.
    pub fn eval_chain(&self, coeffs: &[Int], basis: &[(usize, usize)]) -> GroupElem {
        let mut acc = self.group.zero_elem();
        for (c, (a, b)) in coeffs.iter().zip(basis.iter()) {
            if c.is_zero() {
                continue;
            }
            acc = self
                .group
                .add(&acc, &scale_elem(&self.group, self.value(*a, *b), c));
        }
        acc
    }
}

fn scale_elem(group: &AbelianGroup, e: &GroupElem, k: &Int) -> GroupElem {
    let coords = e
        .coords()
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if i < group.free_rank() {
                let v = k.clone() * c;
                v.to_i64().expect("free coordinate overflow")
            } else {
                let n = group.torsion()[i - group.free_rank()];
                let v = (k.clone() * c) % n;
                v.to_i64().unwrap()
            }
        })
        .collect();
    group.elem(coords)
}

/// Representatives generating `H^2_Q(X; Z/m)`: solves the cocycle
/// conditions over `Z/m` on non-degenerate pairs and quotients by
/// coboundaries. For prime `m` the result is a basis; in general it lists
/// one representative per cyclic summand.
pub fn cocycle_basis(x: &FiniteQuandle, m: i64) -> Vec<Cocycle> {
    assert!(m >= 2, "modulus must be >= 2");
    let n = x.order();
    let pairs: Vec<(usize, usize)> = chain_basis(x, 2)
        .into_iter()
        .map(|t| (t[0], t[1]))
        .collect();
    let np = pairs.len();
    if np == 0 {
        return vec![];
    }
    // cocycle condition matrix = ∂_3 transposed
    let d3 = boundary_matrix(x, 3);
    let ntriples = if d3.is_empty() { 0 } else { d3[0].len() };
    let mut cond: Vec<Vec<Int>> = vec![vec![Int::zero(); np + ntriples]; ntriples];
    for (j, row) in cond.iter_mut().enumerate() {
        for i in 0..np {
            row[i] = d3[i][j].clone();
        }
        row[np + j] = Int::from(m);
    }
    // K = { v : cond_matrix · v ≡ 0 mod m }, via the kernel of [D | mI]
    let aug_kernel = intmat::kernel_basis(&cond, np + ntriples);
    let k_rows: Vec<Vec<Int>> = aug_kernel.into_iter().map(|r| r[..np].to_vec()).collect();

    // coboundaries and m·Z^np
    let d2 = boundary_matrix(x, 2);
    let mut sub: Vec<Vec<Int>> = Vec::new();
    for phi in 0..n {
        // δφ on pair (a, b) is φ(a) - φ(a^b), the transpose of ∂_2
        let row: Vec<Int> = (0..np).map(|i| d2[phi][i].clone()).collect();
        sub.push(row);
    }
    for i in 0..np {
        let mut row = vec![Int::zero(); np];
        row[i] = Int::from(m);
        sub.push(row);
    }

    let q = intmat::lattice_quotient(k_rows, &sub);
    let group = AbelianGroup::cyclic(m);
    let mut out = Vec::new();
    for gen in q
        .generators
        .iter()
        .zip(q.factors.iter())
        .filter(|(_, f)| !f.is_zero())
    {
        let (vec, _) = gen;
        let mut theta = Cocycle::zero(n, &group);
        for (v, &(a, b)) in vec.iter().zip(pairs.iter()) {
            let c = (v % m + m) % m;
            theta.set_value(a, b, group.elem(vec![c.to_i64().unwrap()]));
        }
        debug_assert!(theta.check(x).is_ok());
        out.push(theta);
    }
    out
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("the map is not a quandle homomorphism")]
    NonHomomorphism,
}

/// Image generators of `θ ∘ ρ_*`: each generating cycle of `H^Q_2(q)` is
/// pushed forward tuple-wise along `ρ`, degenerate pairs die in the
/// quotient complex, and `θ` evaluates the result in `A`.
pub fn theta_rho_image(
    q: &FiniteQuandle,
    x: &FiniteQuandle,
    rho: &[usize],
    theta: &Cocycle,
) -> Result<Vec<GroupElem>, HomologyError> {
    if !q.is_homomorphism(x, rho) {
        return Err(HomologyError::NonHomomorphism);
    }
    let h2 = quandle_h2(q);
    let group = theta.group().clone();
    let mut out = Vec::new();
    for cycle in &h2.generators {
        let mut acc = group.zero_elem();
        for (c, &(a, b)) in cycle.iter().zip(h2.basis.iter()) {
            if c.is_zero() {
                continue;
            }
            let (pa, pb) = (rho[a], rho[b]);
            if pa == pb {
                continue;
            }
            acc = group.add(&acc, &scale_elem(&group, theta.value(pa, pb), c));
        }
        out.push(acc);
    }
    Ok(out)
}
