//! Finite quandles, free quandle words in conjugation form, finite
//! presentations, word evaluation, and homomorphism (coloring) enumeration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QuandleError {
    #[error("malformed table: {0}")]
    Structural(String),
    #[error(transparent)]
    Axiom(#[from] AxiomViolation),
}

/// First failing axiom instance of a candidate table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum AxiomViolation {
    #[error("Q1 fails at x={x}: x^x != x")]
    Q1 { x: usize },
    #[error("Q2 fails in column y={y}: x1={x1} and x2={x2} have the same image")]
    Q2 { y: usize, x1: usize, x2: usize },
    #[error("Q3 fails at (x,y,z)=({x},{y},{z})")]
    Q3 { x: usize, y: usize, z: usize },
}

/// Checks (Q1)-(Q3) exhaustively on a square table with in-range entries.
pub fn check_axioms(table: &[Vec<usize>]) -> Result<(), QuandleError> {
    let n = table.len();
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(QuandleError::Structural(format!(
                "row {x} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (y, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(QuandleError::Structural(format!(
                    "entry ({x},{y}) = {v} out of range 0..{n}"
                )));
            }
        }
    }
    for x in 0..n {
        if table[x][x] != x {
            return Err(AxiomViolation::Q1 { x }.into());
        }
    }
    for y in 0..n {
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            let v = table[x][y];
            if seen[v] != usize::MAX {
                return Err(AxiomViolation::Q2 {
                    y,
                    x1: seen[v],
                    x2: x,
                }
                .into());
            }
            seen[v] = x;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[table[x][z]][table[y][z]] {
                    return Err(AxiomViolation::Q3 { x, y, z }.into());
                }
            }
        }
    }
    Ok(())
}

/// Finite quandle as an order-n operation table, axioms verified on
/// construction. `table[x][y] = x^y`; the derived inverse table holds
/// `x^{y^{-1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    n: usize,
    table: Vec<Vec<usize>>,
    inverse_table: Vec<Vec<usize>>,
}

impl FiniteQuandle {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        if table.is_empty() {
            return Err(QuandleError::Structural("empty table".into()));
        }
        check_axioms(&table)?;
        let n = table.len();
        let mut inverse_table = vec![vec![0usize; n]; n];
        for y in 0..n {
            for x in 0..n {
                inverse_table[table[x][y]][y] = x;
            }
        }
        Ok(FiniteQuandle {
            n,
            table,
            inverse_table,
        })
    }

    /// Dihedral quandle `R_n`: `x^y = 2y - x (mod n)`.
    pub fn dihedral(n: usize) -> Self {
        let table = (0..n)
            .map(|x| (0..n).map(|y| (2 * y + n - x % n) % n).collect())
            .collect();
        Self::from_table(table).expect("dihedral table is a quandle")
    }

    /// Trivial quandle: `x^y = x`.
    pub fn trivial(n: usize) -> Self {
        let table = (0..n).map(|x| vec![x; n]).collect();
        Self::from_table(table).expect("trivial table is a quandle")
    }

    /// Alexander quandle on `Z/n` with multiplier `t`: `x^y = t x + (1-t) y`.
    pub fn alexander_cyclic(n: usize, t: usize) -> Result<Self, QuandleError> {
        let table = (0..n)
            .map(|x| (0..n).map(|y| (t * x + (n + 1 - t % n) * y) % n).collect())
            .collect();
        Self::from_table(table)
    }

    /// Alexander quandle on the field with four elements with `t` a
    /// primitive element; the smallest connected quandle with nontrivial
    /// second cohomology over `Z/2`.
    pub fn alexander_f4() -> Self {
        let table = vec![
            vec![0, 3, 1, 2],
            vec![2, 1, 3, 0],
            vec![3, 0, 2, 1],
            vec![1, 2, 0, 3],
        ];
        Self::from_table(table).expect("F4 Alexander table is a quandle")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// `x^y`
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// `x^{y^{-1}}`
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.inverse_table[x][y]
    }

    /// Orbits of the group generated by all right translations and their
    /// inverses, as sorted lists.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut orbits = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for y in 0..self.n {
                    for next in [self.table[x][y], self.inverse_table[x][y]] {
                        if !seen[next] {
                            seen[next] = true;
                            orbit.push(next);
                            stack.push(next);
                        }
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Does `map` define a quandle homomorphism into `other`?
    pub fn is_homomorphism(&self, other: &FiniteQuandle, map: &[usize]) -> bool {
        map.len() == self.n
            && map.iter().all(|&v| v < other.n)
            && (0..self.n)
                .all(|x| (0..self.n).all(|y| map[self.table[x][y]] == other.table[map[x]][map[y]]))
    }

    /// Conjugates the table by a permutation of the element set.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, QuandleError> {
        let mut table = vec![vec![0usize; self.n]; self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                table[perm[x]][perm[y]] = perm[self.table[x][y]];
            }
        }
        Self::from_table(table)
    }
}

/// Searches for a connected quandle of the requested order: cyclic Alexander
/// quandles first, then conjugation quandles on conjugacy classes of small
/// symmetric groups. Deterministic.
pub fn find_connected_quandle(order: usize) -> Option<FiniteQuandle> {
    for t in 2..order {
        if let Ok(q) = FiniteQuandle::alexander_cyclic(order, t) {
            if q.is_connected() {
                return Some(q);
            }
        }
    }
    for k in 3..=5usize {
        for class in conjugacy_classes(k) {
            if class.len() != order {
                continue;
            }
            // x^y = y^{-1} x y on the class
            let index: BTreeMap<Vec<usize>, usize> = class.iter().cloned().zip(0..).collect();
            let mut table = vec![vec![0usize; order]; order];
            for (xi, x) in class.iter().enumerate() {
                for (yi, y) in class.iter().enumerate() {
                    let yinv = invert_perm(y);
                    let conj: Vec<usize> = (0..k).map(|i| yinv[x[y[i]]]).collect();
                    table[xi][yi] = index[&conj];
                }
            }
            if let Ok(q) = FiniteQuandle::from_table(table) {
                if q.is_connected() {
                    return Some(q);
                }
            }
        }
    }
    None
}

fn invert_perm(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable();
    lens
}

fn conjugacy_classes(k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut perms = vec![vec![]];
    for i in 0..k {
        let mut next = Vec::new();
        for p in perms {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, i);
                next.push(q);
            }
        }
        perms = next;
    }
    perms.sort();
    let mut classes: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for p in perms {
        classes.entry(cycle_type(&p)).or_default().push(p);
    }
    classes.into_values().collect()
}

/// Element of the free quandle `FQ(S)` in conjugation normal form: a base
/// generator operated on by a reduced word of signed generators. The tail is
/// freely reduced and never begins with the base letter (which `x^x = x`
/// absorbs), so structural equality decides equality in `FQ(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeQuandleElem {
    base: usize,
    tail: Vec<(usize, i8)>,
}

impl FreeQuandleElem {
    pub fn generator(i: usize) -> Self {
        FreeQuandleElem {
            base: i,
            tail: vec![],
        }
    }

    /// Canonical element with the given base and tail letters.
    pub fn new(base: usize, letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut tail: Vec<(usize, i8)> = Vec::new();
        for (g, s) in letters {
            debug_assert!(s == 1 || s == -1, "letter sign must be ±1");
            if tail.last() == Some(&(g, -s)) {
                tail.pop();
            } else {
                tail.push((g, s));
            }
        }
        let keep = tail.iter().take_while(|(g, _)| *g == base).count();
        tail.drain(..keep);
        FreeQuandleElem { base, tail }
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn tail(&self) -> &[(usize, i8)] {
        &self.tail
    }

    pub fn max_generator(&self) -> usize {
        self.tail
            .iter()
            .map(|&(g, _)| g)
            .fold(self.base, usize::max)
    }

    /// `self ^ {y^sign}` in canonical form. The conjugator of `y` expands to
    /// tail-reversed-inverted, base, tail; only the base letter carries the
    /// sign.
    pub fn operate(&self, y: &FreeQuandleElem, sign: i8) -> Self {
        let letters = self
            .tail
            .iter()
            .copied()
            .chain(y.tail.iter().rev().map(|&(g, s)| (g, -s)))
            .chain(std::iter::once((y.base, sign)))
            .chain(y.tail.iter().copied());
        Self::new(self.base, letters)
    }

    /// Image under the assignment-induced homomorphism into a finite
    /// quandle: fold the tail over the base image.
    pub fn evaluate(&self, assignment: &[usize], x: &FiniteQuandle) -> usize {
        let mut e = assignment[self.base];
        for &(g, s) in &self.tail {
            let yc = assignment[g];
            e = if s > 0 { x.op(e, yc) } else { x.op_inv(e, yc) };
        }
        e
    }
}

/// Finite quandle presentation: named generators plus ordered-pair relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<(FreeQuandleElem, FreeQuandleElem)>,
}

impl Presentation {
    pub fn new(
        generators: Vec<String>,
        relators: Vec<(FreeQuandleElem, FreeQuandleElem)>,
    ) -> Result<Self, QuandleError> {
        let n = generators.len();
        for (lhs, rhs) in &relators {
            for w in [lhs, rhs] {
                if w.max_generator() >= n {
                    return Err(QuandleError::Structural(format!(
                        "relator references generator {} but only {} exist",
                        w.max_generator(),
                        n
                    )));
                }
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Realizes a finite quandle by its multiplication table: one generator
    /// per element and the relator `(x_i^{x_j}, x_{i^j})` for every pair.
    pub fn from_table(x: &FiniteQuandle) -> Self {
        let n = x.order();
        let generators = (0..n).map(|i| format!("x{i}")).collect();
        let mut relators = Vec::with_capacity(n * n);
        for i in 0..n {
            let gi = FreeQuandleElem::generator(i);
            for j in 0..n {
                let lhs = gi.operate(&FreeQuandleElem::generator(j), 1);
                let rhs = FreeQuandleElem::generator(x.op(i, j));
                relators.push((lhs, rhs));
            }
        }
        Presentation {
            generators,
            relators,
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[(FreeQuandleElem, FreeQuandleElem)] {
        &self.relators
    }

    pub fn push_relator(&mut self, lhs: FreeQuandleElem, rhs: FreeQuandleElem) {
        assert!(lhs.max_generator() < self.generators.len());
        assert!(rhs.max_generator() < self.generators.len());
        self.relators.push((lhs, rhs));
    }

    /// Word in the input grammar: `a` or `a^[b c' b]`.
    pub fn word_string(&self, w: &FreeQuandleElem) -> String {
        let mut s = self.generators[w.base()].clone();
        if !w.tail().is_empty() {
            s.push_str("^[");
            for (i, &(g, sign)) in w.tail().iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}", self.generators[g]);
                if sign < 0 {
                    s.push('\'');
                }
            }
            s.push(']');
        }
        s
    }

    pub fn is_coloring(&self, assignment: &[usize], x: &FiniteQuandle) -> bool {
        assignment.len() == self.generators.len()
            && self
                .relators
                .iter()
                .all(|(l, r)| l.evaluate(assignment, x) == r.evaluate(assignment, x))
    }

    /// All homomorphisms into `x` as assignment vectors, in lexicographic
    /// order. Depth-first assignment with relator propagation: a relator is
    /// checked as soon as its last generator gets a value.
    pub fn enumerate_homs(&self, x: &FiniteQuandle) -> Vec<Vec<usize>> {
        let n = self.generators.len();
        let mut by_stage: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (ri, (l, r)) in self.relators.iter().enumerate() {
            let stage = l.max_generator().max(r.max_generator());
            by_stage[stage].push(ri);
        }
        let mut out = Vec::new();
        let mut assignment = vec![0usize; n];
        self.search(0, x, &by_stage, &mut assignment, &mut out);
        out
    }

    fn search(
        &self,
        stage: usize,
        x: &FiniteQuandle,
        by_stage: &[Vec<usize>],
        assignment: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if stage == self.generators.len() {
            out.push(assignment.clone());
            return;
        }
        for v in 0..x.order() {
            assignment[stage] = v;
            let ok = by_stage[stage].iter().all(|&ri| {
                let (l, r) = &self.relators[ri];
                l.evaluate(assignment, x) == r.evaluate(assignment, x)
            });
            if ok {
                self.search(stage + 1, x, by_stage, assignment, out);
            }
        }
    }
}

/// The standard three-generator trefoil presentation
/// `<a, b, c | a^c = b, b^a = c, c^b = a>`.
pub fn trefoil_presentation() -> Presentation {
    let a = FreeQuandleElem::generator(0);
    let b = FreeQuandleElem::generator(1);
    let c = FreeQuandleElem::generator(2);
    Presentation::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![
            (a.operate(&c, 1), b.clone()),
            (b.operate(&a, 1), c.clone()),
            (c.operate(&b, 1), a),
        ],
    )
    .unwrap()
}
