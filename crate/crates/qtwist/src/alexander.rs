//! Alexander pairs, `f`-derivatives of free quandle words, twisted
//! Alexander matrices, unit-pivot reduction, and elementary ideals.

use num_traits::One;

use crate::homology::{Cocycle, CocycleViolation};
use crate::quandle::{FiniteQuandle, FreeQuandleElem, Presentation};
use crate::ring::{AbelianGroup, GroupRingElem, IdealLattice, RingError};
use crate::Int;

#[derive(Debug, thiserror::Error)]
pub enum AlexanderError {
    #[error("assignment is not a coloring: relator {index} has unequal sides")]
    NonColoring { index: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cocycle(#[from] CocycleViolation),
}

/// Pair of maps `f1, f2 : X^2 -> Z[A]` satisfying the Alexander pair
/// axioms, tabulated on a finite quandle together with the pointwise
/// inverse of `f1`. Only `±1·a` monomials are invertible here, which covers
/// both built-in pairs.
#[derive(Debug, Clone)]
pub struct AlexanderPair {
    group: AbelianGroup,
    f1: Vec<Vec<GroupRingElem>>,
    f2: Vec<Vec<GroupRingElem>>,
    f1_inv: Vec<Vec<GroupRingElem>>,
    f2_zero: bool,
}

/// First failing Alexander-pair axiom instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum PairViolation {
    #[error("f1({x},{x}) + f2({x},{x}) != 1")]
    Diagonal { x: usize },
    #[error("f1({x},{y}) is not a unit")]
    Unit { x: usize, y: usize },
    #[error("triple identity {index} fails at ({x},{y},{z})")]
    Triple {
        index: u8,
        x: usize,
        y: usize,
        z: usize,
    },
}

impl AlexanderPair {
    /// Tabulates a pair from closures; fails if some `f1` value has no
    /// monomial inverse.
    pub fn from_fns(
        x: &FiniteQuandle,
        group: &AbelianGroup,
        f1: impl Fn(usize, usize) -> GroupRingElem,
        f2: impl Fn(usize, usize) -> GroupRingElem,
    ) -> Result<Self, RingError> {
        let n = x.order();
        let mut t1 = Vec::with_capacity(n);
        let mut t2 = Vec::with_capacity(n);
        let mut tinv = Vec::with_capacity(n);
        let mut f2_zero = true;
        for a in 0..n {
            let mut r1 = Vec::with_capacity(n);
            let mut r2 = Vec::with_capacity(n);
            let mut rinv = Vec::with_capacity(n);
            for b in 0..n {
                let v1 = f1(a, b);
                let v2 = f2(a, b);
                assert_eq!(v1.group(), group);
                assert_eq!(v2.group(), group);
                rinv.push(v1.monomial_inverse()?);
                f2_zero &= v2.is_zero();
                r1.push(v1);
                r2.push(v2);
            }
            t1.push(r1);
            t2.push(r2);
            tinv.push(rinv);
        }
        Ok(AlexanderPair {
            group: group.clone(),
            f1: t1,
            f2: t2,
            f1_inv: tinv,
            f2_zero,
        })
    }

    /// The constant pair `(t, 1 - t)` over `Z[t^{±1}]`.
    pub fn laurent(x: &FiniteQuandle) -> Self {
        let group = AbelianGroup::infinite_cyclic();
        let t = GroupRingElem::t_pow(1);
        let one_minus_t = &GroupRingElem::one(&group) - &t;
        Self::from_fns(x, &group, |_, _| t.clone(), |_, _| one_minus_t.clone())
            .expect("t is a monomial unit")
    }

    /// The pair `(f_θ, 0)` with `f_θ(x,y) = 1·θ(x,y)` for a verified
    /// quandle 2-cocycle.
    pub fn from_cocycle(x: &FiniteQuandle, theta: &Cocycle) -> Result<Self, CocycleViolation> {
        theta.check(x)?;
        let group = theta.group().clone();
        Ok(Self::from_fns(
            x,
            &group,
            |a, b| GroupRingElem::monomial(&group, Int::one(), theta.value(a, b).clone()),
            |_, _| GroupRingElem::zero(&group),
        )
        .expect("cocycle monomials are units"))
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn f1(&self, x: usize, y: usize) -> &GroupRingElem {
        &self.f1[x][y]
    }

    pub fn f2(&self, x: usize, y: usize) -> &GroupRingElem {
        &self.f2[x][y]
    }

    pub fn f1_inv(&self, x: usize, y: usize) -> &GroupRingElem {
        &self.f1_inv[x][y]
    }

    pub fn has_zero_f2(&self) -> bool {
        self.f2_zero
    }

    /// Exhaustive check of the unit axiom, the diagonal axiom, and the
    /// three triple identities.
    pub fn verify(&self, x: &FiniteQuandle) -> Result<(), PairViolation> {
        let n = x.order();
        for a in 0..n {
            for b in 0..n {
                if !self.f1[a][b].is_monomial_unit() {
                    return Err(PairViolation::Unit { x: a, y: b });
                }
            }
            if !(&self.f1[a][a] + &self.f2[a][a]).is_one() {
                return Err(PairViolation::Diagonal { x: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = x.op(a, b);
                    let ac = x.op(a, c);
                    let bc = x.op(b, c);
                    let lhs1 = &self.f1[ab][c] * &self.f1[a][b];
                    let rhs1 = &self.f1[ac][bc] * &self.f1[a][c];
                    if lhs1 != rhs1 {
                        return Err(PairViolation::Triple {
                            index: 1,
                            x: a,
                            y: b,
                            z: c,
                        });
                    }
                    let lhs2 = &self.f1[ab][c] * &self.f2[a][b];
                    let rhs2 = &self.f2[ac][bc] * &self.f1[b][c];
                    if lhs2 != rhs2 {
                        return Err(PairViolation::Triple {
                            index: 2,
                            x: a,
                            y: b,
                            z: c,
                        });
                    }
                    let rhs3 =
                        &(&self.f1[ac][bc] * &self.f2[a][c]) + &(&self.f2[ac][bc] * &self.f2[b][c]);
                    if self.f2[ab][c] != rhs3 {
                        return Err(PairViolation::Triple {
                            index: 3,
                            x: a,
                            y: b,
                            z: c,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Colors of every prefix of `w` under the assignment: entry `k` is the
/// image of the base operated by the first `k` tail letters.
fn prefix_colors(w: &FreeQuandleElem, assignment: &[usize], x: &FiniteQuandle) -> Vec<usize> {
    let mut colors = Vec::with_capacity(w.tail().len() + 1);
    let mut e = assignment[w.base()];
    colors.push(e);
    for &(g, s) in w.tail() {
        let yc = assignment[g];
        e = if s > 0 { x.op(e, yc) } else { x.op_inv(e, yc) };
        colors.push(e);
    }
    colors
}

/// `f`-derivative of `w` with respect to generator `j`, computed by the
/// two-rule recursion peeling the last tail letter.
pub fn f_derivative(
    w: &FreeQuandleElem,
    j: usize,
    pair: &AlexanderPair,
    assignment: &[usize],
    x: &FiniteQuandle,
) -> GroupRingElem {
    let colors = prefix_colors(w, assignment, x);
    let mut acc = if w.base() == j {
        GroupRingElem::one(&pair.group)
    } else {
        GroupRingElem::zero(&pair.group)
    };
    // left-to-right accumulation of the recursion's coefficient products
    for (k, &(g, s)) in w.tail().iter().enumerate() {
        let yc = assignment[g];
        if s > 0 {
            // ∂(u^y) = f1(ρu, ρy)·∂u + f2(ρu, ρy)·∂y
            let ucolor = colors[k];
            acc = &pair.f1[ucolor][yc] * &acc;
            if g == j {
                acc = &acc + &pair.f2[ucolor][yc];
            }
        } else {
            // ∂(u^{y^{-1}}) = f1_inv(ρ(u^{y^{-1}}), ρy)·∂u
            //              - f1_inv·f2(ρ(u^{y^{-1}}), ρy)·∂y
            let wcolor = colors[k + 1];
            acc = &pair.f1_inv[wcolor][yc] * &acc;
            if g == j {
                acc = &acc - &(&pair.f1_inv[wcolor][yc] * &pair.f2[wcolor][yc]);
            }
        }
    }
    acc
}

/// Closed form for pairs with `f2 ≡ 0`: the derivative is a single
/// monomial coefficient on the base generator's column.
pub fn f_derivative_fast(
    w: &FreeQuandleElem,
    j: usize,
    pair: &AlexanderPair,
    assignment: &[usize],
    x: &FiniteQuandle,
) -> GroupRingElem {
    assert!(pair.f2_zero, "fast path requires f2 = 0");
    if w.base() != j {
        return GroupRingElem::zero(&pair.group);
    }
    derivative_coefficient(w, pair, assignment, x)
}

/// The monomial `c` with `∂w/∂x_j = c · ∂(base)/∂x_j` for an `f2 ≡ 0` pair.
pub fn derivative_coefficient(
    w: &FreeQuandleElem,
    pair: &AlexanderPair,
    assignment: &[usize],
    x: &FiniteQuandle,
) -> GroupRingElem {
    let mut acc = GroupRingElem::one(&pair.group);
    let mut e = assignment[w.base()];
    for &(g, s) in w.tail() {
        let yc = assignment[g];
        if s > 0 {
            acc = &pair.f1[e][yc] * &acc;
            e = x.op(e, yc);
        } else {
            e = x.op_inv(e, yc);
            acc = &pair.f1_inv[e][yc] * &acc;
        }
    }
    acc
}

/// `m × n` matrix of relator derivatives under an Alexander pair pulled
/// back along a coloring: entry `(i, j)` is
/// `∂(lhs_i)/∂x_j - ∂(rhs_i)/∂x_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedMatrix {
    group: AbelianGroup,
    entries: Vec<Vec<GroupRingElem>>,
    cols: usize,
}

impl TwistedMatrix {
    pub fn from_entries(
        group: AbelianGroup,
        entries: Vec<Vec<GroupRingElem>>,
        cols: usize,
    ) -> Self {
        for row in &entries {
            assert_eq!(row.len(), cols, "ragged matrix");
            for e in row {
                assert_eq!(e.group(), &group);
            }
        }
        TwistedMatrix {
            group,
            entries,
            cols,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElem {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[GroupRingElem] {
        &self.entries[i]
    }
}

/// Builds the twisted Alexander matrix of a presentation under a coloring.
/// The assignment must satisfy every relator; otherwise the entries would
/// be meaningless.
pub fn build_matrix(
    p: &Presentation,
    assignment: &[usize],
    x: &FiniteQuandle,
    pair: &AlexanderPair,
) -> Result<TwistedMatrix, AlexanderError> {
    let n = p.num_generators();
    assert_eq!(assignment.len(), n, "assignment length mismatch");
    for (index, (l, r)) in p.relators().iter().enumerate() {
        if l.evaluate(assignment, x) != r.evaluate(assignment, x) {
            return Err(AlexanderError::NonColoring { index });
        }
    }
    let mut entries = Vec::with_capacity(p.relators().len());
    for (l, r) in p.relators() {
        let mut row = vec![GroupRingElem::zero(&pair.group); n];
        if pair.f2_zero {
            let cl = derivative_coefficient(l, pair, assignment, x);
            let cr = derivative_coefficient(r, pair, assignment, x);
            row[l.base()] = &row[l.base()] + &cl;
            row[r.base()] = &row[r.base()] - &cr;
        } else {
            for (j, slot) in row.iter_mut().enumerate() {
                let dl = f_derivative(l, j, pair, assignment, x);
                let dr = f_derivative(r, j, pair, assignment, x);
                *slot = &dl - &dr;
            }
        }
        entries.push(row);
    }
    Ok(TwistedMatrix::from_entries(pair.group.clone(), entries, n))
}

/// Unit-pivot reduction: repeatedly find a `±1·a` entry, clear its row and
/// column by row/column combinations, remove the pivot row and column, and
/// drop zero rows. Every elementary ideal `E_d` of the result equals that
/// of the input.
pub fn reduce_matrix(m: &TwistedMatrix) -> TwistedMatrix {
    let mut entries = m.entries.clone();
    let mut cols = m.cols;
    loop {
        entries.retain(|row| row.iter().any(|e| !e.is_zero()));
        // cheapest unit pivot by fill-in estimate, ties to smallest (i, j)
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in entries.iter().enumerate() {
            let row_nnz = row.iter().filter(|e| !e.is_zero()).count();
            for (j, e) in row.iter().enumerate() {
                if !e.is_monomial_unit() {
                    continue;
                }
                let col_nnz = entries.iter().filter(|r| !r[j].is_zero()).count();
                let cost = (row_nnz - 1) * (col_nnz - 1);
                if best.map(|(c, _, _)| cost < c).unwrap_or(true) {
                    best = Some((cost, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let u_inv = entries[pi][pj].monomial_inverse().expect("pivot is a unit");
        // clear the pivot column with row operations
        let pivot_row = entries[pi].clone();
        for (i, row) in entries.iter_mut().enumerate() {
            if i == pi || row[pj].is_zero() {
                continue;
            }
            let r = &row[pj] * &u_inv;
            for (e, p) in row.iter_mut().zip(pivot_row.iter()) {
                *e = &*e - &(&r * p);
            }
        }
        // the pivot row is now the only row with a nonzero entry in column
        // pj, so clearing the row with column operations affects nothing
        // else; removing the pivot row and column finishes the step
        entries.remove(pi);
        for row in entries.iter_mut() {
            row.remove(pj);
        }
        cols -= 1;
    }
    TwistedMatrix {
        group: m.group.clone(),
        entries,
        cols,
    }
}

/// All `s × s` minors (row sets outer, column sets inner, both
/// lexicographic), by Laplace expansion with column-subset memoization.
pub fn minors(m: &TwistedMatrix, s: usize) -> Vec<GroupRingElem> {
    if s == 0 {
        return vec![GroupRingElem::one(&m.group)];
    }
    if s > m.rows() || s > m.cols() {
        return vec![];
    }
    assert!(m.cols() <= 64, "column masks limited to 64 columns");
    let mut out = Vec::new();
    let mut row_set: Vec<usize> = (0..s).collect();
    loop {
        let mut memo: std::collections::HashMap<(usize, u64), GroupRingElem> =
            std::collections::HashMap::new();
        let mut col_set: Vec<usize> = (0..s).collect();
        loop {
            let mask = col_set.iter().fold(0u64, |acc, &c| acc | (1 << c));
            out.push(laplace(m, &row_set, 0, mask, &mut memo));
            if !advance(&mut col_set, m.cols()) {
                break;
            }
        }
        if !advance(&mut row_set, m.rows()) {
            break;
        }
    }
    out
}

fn advance(set: &mut [usize], limit: usize) -> bool {
    let k = set.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if set[i] < limit - (k - i) {
            set[i] += 1;
            for j in i + 1..k {
                set[j] = set[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn laplace(
    m: &TwistedMatrix,
    rows: &[usize],
    level: usize,
    mask: u64,
    memo: &mut std::collections::HashMap<(usize, u64), GroupRingElem>,
) -> GroupRingElem {
    if level == rows.len() {
        return GroupRingElem::one(&m.group);
    }
    if let Some(v) = memo.get(&(level, mask)) {
        return v.clone();
    }
    let mut acc = GroupRingElem::zero(&m.group);
    let mut sign_flip = false;
    let mut bits = mask;
    while bits != 0 {
        let col = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let e = m.entry(rows[level], col);
        if !e.is_zero() {
            let sub = laplace(m, rows, level + 1, mask & !(1u64 << col), memo);
            let term = &sub * e;
            acc = if sign_flip {
                &acc - &term
            } else {
                &acc + &term
            };
        }
        sign_flip = !sign_flip;
    }
    memo.insert((level, mask), acc.clone());
    acc
}

/// Elementary ideal of a twisted matrix: the full ring for `d >= n`, the
/// zero ideal for `d < n - m`, and the ideal of all `(n-d)`-minors in
/// between, computed after unit-pivot reduction. Finite coefficient groups
/// give a lattice; `A = Z` gives generators plus a Laurent gcd.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementaryIdeal {
    Finite(IdealLattice),
    Laurent {
        generators: Vec<GroupRingElem>,
        gcd: GroupRingElem,
    },
}

impl ElementaryIdeal {
    pub fn is_zero(&self) -> bool {
        match self {
            ElementaryIdeal::Finite(l) => l.is_zero(),
            ElementaryIdeal::Laurent { generators, .. } => generators.is_empty(),
        }
    }

    pub fn lattice(&self) -> Option<&IdealLattice> {
        match self {
            ElementaryIdeal::Finite(l) => Some(l),
            _ => None,
        }
    }

    pub fn gcd(&self) -> Option<&GroupRingElem> {
        match self {
            ElementaryIdeal::Laurent { gcd, .. } => Some(gcd),
            _ => None,
        }
    }
}

pub fn elementary_ideal(m: &TwistedMatrix, d: i64) -> Result<ElementaryIdeal, AlexanderError> {
    let group = m.group().clone();
    let finite = group.is_finite();
    if !finite && !group.is_laurent() {
        return Err(RingError::UnsupportedGroup(group.spec_string()).into());
    }
    let reduced = reduce_matrix(m);
    let n = reduced.cols() as i64;
    let rows = reduced.rows() as i64;
    if d >= n {
        return Ok(if finite {
            ElementaryIdeal::Finite(IdealLattice::full(&group))
        } else {
            let one = GroupRingElem::one(&group);
            ElementaryIdeal::Laurent {
                generators: vec![one.clone()],
                gcd: one,
            }
        });
    }
    if d < n - rows {
        return Ok(if finite {
            ElementaryIdeal::Finite(IdealLattice::zero(&group))
        } else {
            ElementaryIdeal::Laurent {
                generators: vec![],
                gcd: GroupRingElem::zero(&group),
            }
        });
    }
    let s = (n - d) as usize;
    let mut gens = minors(&reduced, s);
    gens.retain(|g| !g.is_zero());
    if finite {
        Ok(ElementaryIdeal::Finite(IdealLattice::from_generators(
            &group, &gens,
        )?))
    } else {
        let gcd = crate::ring::laurent_normalize(&gens);
        Ok(ElementaryIdeal::Laurent {
            generators: gens,
            gcd,
        })
    }
}

/// One of the eight matrix transformations preserving every elementary
/// ideal over a commutative ring.
#[derive(Debug, Clone)]
pub enum MatrixMove {
    /// (M1) `col_dst += col_src · r`
    AddColMultiple {
        src: usize,
        dst: usize,
        r: GroupRingElem,
    },
    /// (M2) `row_dst += r · row_src`
    AddRowMultiple {
        src: usize,
        dst: usize,
        r: GroupRingElem,
    },
    /// (M3) append a zero row
    AppendZeroRow,
    /// (M4) extend to `[[A, 0], [0, 1]]`
    ExtendUnit,
    /// (M5) swap two columns
    SwapCols { a: usize, b: usize },
    /// (M6) scale a column by a unit
    ScaleCol { col: usize, u: GroupRingElem },
    /// (M7) swap two rows
    SwapRows { a: usize, b: usize },
    /// (M8) scale a row by a unit
    ScaleRow { row: usize, u: GroupRingElem },
}

pub fn apply_move(m: &TwistedMatrix, mv: &MatrixMove) -> TwistedMatrix {
    let mut entries = m.entries.clone();
    let mut cols = m.cols;
    let group = m.group.clone();
    match mv {
        MatrixMove::AddColMultiple { src, dst, r } => {
            assert_ne!(src, dst);
            for row in entries.iter_mut() {
                row[*dst] = &row[*dst] + &(&row[*src] * r);
            }
        }
        MatrixMove::AddRowMultiple { src, dst, r } => {
            assert_ne!(src, dst);
            let src_row = entries[*src].clone();
            for (e, s) in entries[*dst].iter_mut().zip(src_row.iter()) {
                *e = &*e + &(r * s);
            }
        }
        MatrixMove::AppendZeroRow => {
            entries.push(vec![GroupRingElem::zero(&group); cols]);
        }
        MatrixMove::ExtendUnit => {
            for row in entries.iter_mut() {
                row.push(GroupRingElem::zero(&group));
            }
            let mut last = vec![GroupRingElem::zero(&group); cols + 1];
            last[cols] = GroupRingElem::one(&group);
            entries.push(last);
            cols += 1;
        }
        MatrixMove::SwapCols { a, b } => {
            for row in entries.iter_mut() {
                row.swap(*a, *b);
            }
        }
        MatrixMove::ScaleCol { col, u } => {
            assert!(u.is_monomial_unit(), "column scale must be a unit");
            for row in entries.iter_mut() {
                row[*col] = &row[*col] * u;
            }
        }
        MatrixMove::SwapRows { a, b } => {
            entries.swap(*a, *b);
        }
        MatrixMove::ScaleRow { row, u } => {
            assert!(u.is_monomial_unit(), "row scale must be a unit");
            for e in entries[*row].iter_mut() {
                *e = u * &*e;
            }
        }
    }
    TwistedMatrix {
        group,
        entries,
        cols,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::trefoil_presentation;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r3() -> FiniteQuandle {
        FiniteQuandle::dihedral(3)
    }

    fn coboundary_z3(x: &FiniteQuandle) -> Cocycle {
        let group = AbelianGroup::cyclic(3);
        let phi: Vec<_> = (0..x.order()).map(|i| group.elem(vec![i as i64])).collect();
        Cocycle::coboundary(x, &group, &phi)
    }

    #[test]
    fn laurent_pair_is_valid() {
        let x = r3();
        let pair = AlexanderPair::laurent(&x);
        assert!(pair.verify(&x).is_ok());
        // f1 + f2 = t + (1 - t) = 1 on the diagonal
        assert!((pair.f1(0, 0) + pair.f2(0, 0)).is_one());
    }

    #[test]
    fn zero_cocycle_pair_is_valid() {
        let x = r3();
        let theta = Cocycle::zero(x.order(), &AbelianGroup::cyclic(3));
        let pair = AlexanderPair::from_cocycle(&x, &theta).unwrap();
        assert!(pair.verify(&x).is_ok());
        assert!(pair.has_zero_f2());
        assert!(pair.f1(0, 1).is_one());
    }

    #[test]
    fn coboundary_pair_is_valid() {
        let x = r3();
        let pair = AlexanderPair::from_cocycle(&x, &coboundary_z3(&x)).unwrap();
        assert!(pair.verify(&x).is_ok());
    }

    #[test]
    fn broken_pair_reports_diagonal() {
        let x = r3();
        let group = AbelianGroup::cyclic(2);
        let one = GroupRingElem::one(&group);
        let pair =
            AlexanderPair::from_fns(&x, &group, |_, _| one.clone(), |_, _| one.clone()).unwrap();
        assert_eq!(pair.verify(&x), Err(PairViolation::Diagonal { x: 0 }));
    }

    #[test]
    fn non_unit_f1_rejected_at_construction() {
        let x = r3();
        let group = AbelianGroup::cyclic(2);
        let bad = &GroupRingElem::one(&group)
            + &GroupRingElem::monomial(&group, Int::one(), group.elem(vec![1]));
        let res = AlexanderPair::from_fns(
            &x,
            &group,
            |_, _| bad.clone(),
            |_, _| GroupRingElem::zero(&group),
        );
        assert!(matches!(res, Err(RingError::NotMonomialUnit(_))));
    }

    #[test]
    fn perturbed_cocycle_rejected() {
        let x = r3();
        let group = AbelianGroup::cyclic(3);
        let mut theta = coboundary_z3(&x);
        theta.set_value(0, 1, group.elem(vec![theta.value(0, 1).coords()[0] + 1]));
        assert!(AlexanderPair::from_cocycle(&x, &theta).is_err());
    }

    #[test]
    fn derivative_of_generators_is_kronecker() {
        let x = r3();
        let pair = AlexanderPair::laurent(&x);
        let a = FreeQuandleElem::generator(0);
        let assignment = [0usize, 1, 2];
        assert!(f_derivative(&a, 0, &pair, &assignment, &x).is_one());
        assert!(f_derivative(&a, 1, &pair, &assignment, &x).is_zero());
    }

    #[test]
    fn inverse_letter_rule_for_cocycle_pair() {
        // ∂(x^{y^{-1}}) = 1·(-θ(ρ(x^{y^{-1}}), ρy)) · ∂x for f2 = 0
        let x = r3();
        let theta = coboundary_z3(&x);
        let pair = AlexanderPair::from_cocycle(&x, &theta).unwrap();
        let assignment = [0usize, 1, 2];
        let w = FreeQuandleElem::new(0, vec![(1, -1)]);
        let got = f_derivative(&w, 0, &pair, &assignment, &x);
        let wcolor = w.evaluate(&assignment, &x);
        let expected = GroupRingElem::monomial(
            pair.group(),
            Int::one(),
            pair.group().neg(theta.value(wcolor, 1)),
        );
        assert_eq!(got, expected);
        assert!(f_derivative(&w, 2, &pair, &assignment, &x).is_zero());
    }

    #[test]
    fn fast_path_matches_recursion() {
        let x = r3();
        let theta = coboundary_z3(&x);
        let pair = AlexanderPair::from_cocycle(&x, &theta).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let base = rng.gen_range(0..3);
            let len = rng.gen_range(0..=8);
            let letters: Vec<(usize, i8)> = (0..len)
                .map(|_| (rng.gen_range(0..3), if rng.gen::<bool>() { 1 } else { -1 }))
                .collect();
            let w = FreeQuandleElem::new(base, letters);
            let assignment = [
                rng.gen_range(0..3),
                rng.gen_range(0..3),
                rng.gen_range(0..3),
            ];
            for j in 0..3 {
                assert_eq!(
                    f_derivative_fast(&w, j, &pair, &assignment, &x),
                    f_derivative(&w, j, &pair, &assignment, &x)
                );
            }
        }
    }

    #[test]
    fn diagonal_relator_gives_zero_entry() {
        // <a | (a^[a], a)>: the 1x1 entry is f1(x,x) + f2(x,x) - 1 = 0
        let x = r3();
        let a = FreeQuandleElem::generator(0);
        let p = Presentation::new(vec!["a".into()], vec![(a.operate(&a, 1), a.clone())]).unwrap();
        for pair in [AlexanderPair::laurent(&x), {
            let theta = coboundary_z3(&x);
            AlexanderPair::from_cocycle(&x, &theta).unwrap()
        }] {
            let m = build_matrix(&p, &[2], &x, &pair).unwrap();
            assert_eq!(m.rows(), 1);
            assert!(m.entry(0, 0).is_zero());
        }
    }

    #[test]
    fn trefoil_laurent_rows() {
        let p = trefoil_presentation();
        let x = r3();
        let pair = AlexanderPair::laurent(&x);
        let t = GroupRingElem::t_pow(1);
        let one = GroupRingElem::one(pair.group());
        let m = build_matrix(&p, &[0, 0, 0], &x, &pair).unwrap();
        // relator (a^[c], b): t at column a, 1-t at column c, -1 at column b
        assert_eq!(m.entry(0, 0), &t);
        assert_eq!(m.entry(0, 2), &(&one - &t));
        assert_eq!(m.entry(0, 1), &(-&one));
    }

    #[test]
    fn cocycle_matrix_entries_are_short() {
        let p = trefoil_presentation();
        let x = r3();
        let theta = coboundary_z3(&x);
        let pair = AlexanderPair::from_cocycle(&x, &theta).unwrap();
        for coloring in p.enumerate_homs(&x) {
            let m = build_matrix(&p, &coloring, &x, &pair).unwrap();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let e = m.entry(i, j);
                    assert!(e.num_terms() <= 2);
                    assert!(e.terms().all(|(_, c)| c.abs().is_one()));
                }
            }
        }
    }

    #[test]
    fn non_coloring_rejected() {
        let p = trefoil_presentation();
        let x = r3();
        let pair = AlexanderPair::laurent(&x);
        assert!(matches!(
            build_matrix(&p, &[0, 1, 0], &x, &pair),
            Err(AlexanderError::NonColoring { .. })
        ));
    }

    #[test]
    fn reduce_unit_matrix_to_empty() {
        let group = AbelianGroup::cyclic(2);
        let m =
            TwistedMatrix::from_entries(group.clone(), vec![vec![GroupRingElem::one(&group)]], 1);
        let r = reduce_matrix(&m);
        assert_eq!(r.rows(), 0);
        assert_eq!(r.cols(), 0);
        // E_0 = R on both sides
        let full = IdealLattice::full(&group);
        assert_eq!(elementary_ideal(&m, 0).unwrap().lattice(), Some(&full));
        assert_eq!(elementary_ideal(&r, 0).unwrap().lattice(), Some(&full));
    }

    #[test]
    fn reduce_drops_zero_rows() {
        let group = AbelianGroup::cyclic(2);
        let z = GroupRingElem::zero(&group);
        let two = GroupRingElem::one(&group).scale(&Int::from(2));
        let m =
            TwistedMatrix::from_entries(group.clone(), vec![vec![two.clone()], vec![z.clone()]], 1);
        let r = reduce_matrix(&m);
        assert_eq!(r.rows(), 1);
        assert_eq!(r.entry(0, 0), &two);
    }

    #[test]
    fn boundary_conventions() {
        let group = AbelianGroup::cyclic(3);
        let g = GroupRingElem::monomial(&group, Int::one(), group.elem(vec![1]));
        let gen = &g - &GroupRingElem::one(&group);
        let m = TwistedMatrix::from_entries(group.clone(), vec![vec![gen]], 1);
        assert!(elementary_ideal(&m, 1)
            .unwrap()
            .lattice()
            .unwrap()
            .is_full());
        assert!(elementary_ideal(&m, -1)
            .unwrap()
            .lattice()
            .unwrap()
            .is_zero());
    }

    fn random_matrix(
        group: &AbelianGroup,
        rows: usize,
        cols: usize,
        rng: &mut ChaCha8Rng,
    ) -> TwistedMatrix {
        let entries = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        let mut e = GroupRingElem::zero(group);
                        for _ in 0..rng.gen_range(0..3) {
                            let g = group.elem(vec![rng.gen_range(0..3)]);
                            let c = Int::from(rng.gen_range(-2..=2i64));
                            e = &e + &GroupRingElem::monomial(group, c, g);
                        }
                        e
                    })
                    .collect()
            })
            .collect();
        TwistedMatrix::from_entries(group.clone(), entries, cols)
    }

    /// `E_d` assembled from raw minors, with the boundary conventions but
    /// no unit-pivot reduction. Independent route for the reduction tests.
    fn elementary_ideal_raw(m: &TwistedMatrix, d: i64) -> IdealLattice {
        let group = m.group().clone();
        let n = m.cols() as i64;
        if d >= n {
            return IdealLattice::full(&group);
        }
        if d < n - m.rows() as i64 {
            return IdealLattice::zero(&group);
        }
        let mut gens = minors(m, (n - d) as usize);
        gens.retain(|g| !g.is_zero());
        IdealLattice::from_generators(&group, &gens).unwrap()
    }

    #[test]
    fn reduction_preserves_elementary_ideals() {
        let group = AbelianGroup::cyclic(3);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m = random_matrix(&group, rows, cols, &mut rng);
            for d in -1..=(cols as i64 + 1) {
                let raw = elementary_ideal_raw(&m, d);
                let reduced = elementary_ideal(&m, d).unwrap();
                assert_eq!(
                    reduced.lattice(),
                    Some(&raw),
                    "E_{d} changed under reduction"
                );
            }
        }
    }

    #[test]
    fn laplace_matches_leibniz() {
        let group = AbelianGroup::cyclic(3);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10 {
            let m = random_matrix(&group, 4, 4, &mut rng);
            let det = minors(&m, 4);
            assert_eq!(det.len(), 1);

            // naive Leibniz sum over all permutations
            let perms = permutations(4);
            let mut acc = GroupRingElem::zero(&group);
            for (p, parity) in perms {
                let mut term = GroupRingElem::one(&group);
                for (i, &j) in p.iter().enumerate() {
                    term = &term * m.entry(i, j);
                }
                acc = if parity { &acc + &term } else { &acc - &term };
            }
            assert_eq!(det[0], acc);
        }
    }

    fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
        let mut out = vec![(vec![], true)];
        for _ in 0..n {
            let mut next = Vec::new();
            for (p, parity) in out {
                for v in 0..n {
                    if p.contains(&v) {
                        continue;
                    }
                    let mut q = p.clone();
                    q.push(v);
                    let inversions = p.iter().filter(|&&u| u > v).count();
                    next.push((q, parity ^ (inversions % 2 == 1)));
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn trefoil_laurent_e1_gcd() {
        let p = trefoil_presentation();
        let x = r3();
        let pair = AlexanderPair::laurent(&x);
        let m = build_matrix(&p, &[1, 1, 1], &x, &pair).unwrap();
        let e1 = elementary_ideal(&m, 1).unwrap();
        let gcd = e1.gcd().unwrap();
        assert_eq!(gcd, &GroupRingElem::laurent(&[(0, 1), (1, -1), (2, 1)]));
        // E_0 of the knot quandle matrix vanishes
        let e0 = elementary_ideal(&m, 0).unwrap();
        assert!(e0.is_zero());
    }

    #[test]
    fn minor_inclusion_chain() {
        // E_d ⊆ E_{d+1}
        let p = trefoil_presentation();
        let x = r3();
        let theta = coboundary_z3(&x);
        let pair = AlexanderPair::from_cocycle(&x, &theta).unwrap();
        for coloring in p.enumerate_homs(&x) {
            let m = build_matrix(&p, &coloring, &x, &pair).unwrap();
            let mut prev: Option<IdealLattice> = None;
            for d in -1..=4 {
                let ideal = elementary_ideal(&m, d).unwrap().lattice().unwrap().clone();
                if let Some(p) = prev {
                    for b in p.basis_elements() {
                        assert!(ideal.contains(&b), "E_d not contained in E_(d+1)");
                    }
                }
                prev = Some(ideal);
            }
        }
    }
}
