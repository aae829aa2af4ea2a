//! Classical knot diagram ingestion (PD codes) into Wirtinger
//! presentations, state-sum cocycle weights, marked surface-knot
//! presentations, and the two ideal-comparison harnesses.

use num_traits::One;

use crate::alexander::{
    build_matrix, elementary_ideal, AlexanderError, AlexanderPair, ElementaryIdeal,
};
use crate::homology::{theta_rho_image, Cocycle, CocycleViolation, HomologyError};
use crate::quandle::{FiniteQuandle, FreeQuandleElem, Presentation};
use crate::ring::{GroupElem, GroupRingElem, IdealLattice, RingError};
use crate::Int;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PdError {
    #[error("arc label {label} out of range 1..={max}")]
    LabelRange { label: usize, max: usize },
    #[error("arc label {label} appears {count} times, expected 2")]
    LabelCount { label: usize, count: usize },
    #[error("crossing {index}: over-strand labels {b} and {d} are not cyclically consecutive")]
    OverStrand { index: usize, b: usize, d: usize },
}

#[derive(Debug, thiserror::Error)]
pub enum KnotError {
    #[error("loop word {index} does not close under the given coloring")]
    LoopNotClosed { index: usize },
    #[error("assignment is not a coloring of the presentation")]
    NotColoring,
    #[error("quandle is not connected")]
    NotConnected,
    #[error(transparent)]
    NonHomomorphism(#[from] HomologyError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Cocycle(#[from] CocycleViolation),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
}

/// Planar-diagram code of an oriented knot: per crossing the four edge
/// labels counterclockwise from the incoming under-edge. Edge labels run
/// 1..2c consecutively along the knot, so the over-strand labels of a
/// crossing are cyclically consecutive; which of them comes first fixes
/// the crossing sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode {
    crossings: Vec<[usize; 4]>,
}

impl PdCode {
    pub fn new(crossings: Vec<[usize; 4]>) -> Result<Self, PdError> {
        let max = 2 * crossings.len();
        let mut counts = vec![0usize; max + 1];
        for c in &crossings {
            for &label in c {
                if label == 0 || label > max {
                    return Err(PdError::LabelRange { label, max });
                }
                counts[label] += 1;
            }
        }
        for (label, &count) in counts.iter().enumerate().skip(1) {
            if count != 2 {
                return Err(PdError::LabelCount { label, count });
            }
        }
        let pd = PdCode { crossings };
        for (index, c) in pd.crossings.iter().enumerate() {
            if pd.sign_of(c).is_none() {
                return Err(PdError::OverStrand {
                    index,
                    b: c[1],
                    d: c[3],
                });
            }
        }
        Ok(pd)
    }

    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn num_edges(&self) -> usize {
        2 * self.crossings.len()
    }

    fn next_label(&self, label: usize) -> usize {
        if label == self.num_edges() {
            1
        } else {
            label + 1
        }
    }

    fn sign_of(&self, c: &[usize; 4]) -> Option<i8> {
        if self.next_label(c[1]) == c[3] {
            Some(1)
        } else if self.next_label(c[3]) == c[1] {
            Some(-1)
        } else {
            None
        }
    }

    /// Crossing sign: positive when the over-strand runs from position `b`
    /// to position `d`.
    pub fn sign(&self, index: usize) -> i8 {
        self.sign_of(&self.crossings[index])
            .expect("validated at construction")
    }
}

/// Wirtinger data of a diagram: the presentation plus, per crossing, the
/// generator roles the state sum needs.
#[derive(Debug, Clone)]
pub struct Wirtinger {
    pub presentation: Presentation,
    pub crossings: Vec<CrossingRole>,
}

/// Generator indices around one crossing; `source^over = target` is the
/// relator and the weight contribution is `sign · θ(c(source), c(over))`.
#[derive(Debug, Clone, Copy)]
pub struct CrossingRole {
    pub sign: i8,
    pub source: usize,
    pub over: usize,
    pub target: usize,
}

impl PdCode {
    /// Merges edges into arcs (edges are unified across over-passages,
    /// smallest label as representative) and emits one relator per
    /// crossing. The empty code is the 0-crossing unknot diagram with a
    /// single arc.
    pub fn wirtinger(&self) -> Wirtinger {
        if self.crossings.is_empty() {
            let presentation = Presentation::new(vec!["a".into()], vec![]).unwrap();
            return Wirtinger {
                presentation,
                crossings: vec![],
            };
        }
        let edges = self.num_edges();
        let mut parent: Vec<usize> = (0..=edges).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut root = i;
            while parent[root] != root {
                root = parent[root];
            }
            let mut i = i;
            while parent[i] != root {
                let next = parent[i];
                parent[i] = root;
                i = next;
            }
            root
        }
        for c in &self.crossings {
            let (a, b) = (find(&mut parent, c[1]), find(&mut parent, c[3]));
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
        let mut reps: Vec<usize> = (1..=edges).filter(|&e| find(&mut parent, e) == e).collect();
        reps.sort_unstable();
        let gen_of = |parent: &mut [usize], e: usize, reps: &[usize]| {
            let r = find(parent, e);
            reps.binary_search(&r)
                .expect("edge root is a representative")
        };
        let generators = reps.iter().map(|r| format!("x{r}")).collect();
        let mut relators = Vec::with_capacity(self.crossings.len());
        let mut roles = Vec::with_capacity(self.crossings.len());
        for c in &self.crossings {
            let sign = self.sign_of(c).unwrap();
            let under_in = gen_of(&mut parent, c[0], &reps);
            let under_out = gen_of(&mut parent, c[2], &reps);
            let over = gen_of(&mut parent, c[1], &reps);
            let (source, target) = if sign > 0 {
                (under_in, under_out)
            } else {
                (under_out, under_in)
            };
            let lhs =
                FreeQuandleElem::generator(source).operate(&FreeQuandleElem::generator(over), 1);
            relators.push((lhs, FreeQuandleElem::generator(target)));
            roles.push(CrossingRole {
                sign,
                source,
                over,
                target,
            });
        }
        let presentation = Presentation::new(generators, relators).unwrap();
        Wirtinger {
            presentation,
            crossings: roles,
        }
    }

    pub fn to_presentation(&self) -> Presentation {
        self.wirtinger().presentation
    }
}

/// State-sum weights per coloring: for each coloring of the diagram, the
/// sum over crossings of `sign · θ(color(source), color(over))`, paired
/// with the coloring.
pub fn state_sum_weights(
    pd: &PdCode,
    x: &FiniteQuandle,
    theta: &Cocycle,
) -> Result<Vec<(Vec<usize>, GroupElem)>, KnotError> {
    theta.check(x)?;
    let group = theta.group().clone();
    let w = pd.wirtinger();
    let mut out = Vec::new();
    for coloring in w.presentation.enumerate_homs(x) {
        let mut acc = group.zero_elem();
        for role in &w.crossings {
            let v = theta.value(coloring[role.source], coloring[role.over]);
            let v = if role.sign > 0 {
                v.clone()
            } else {
                group.neg(v)
            };
            acc = group.add(&acc, &v);
        }
        out.push((coloring, acc));
    }
    Ok(out)
}

/// Finite presentation of a surface-knot quandle together with a basepoint
/// generator and the intersection words of an `H_1` basis of loops with
/// upper sheets. This is the algebraic interface for surface knots; the
/// geometric diagram work of producing it is the caller's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPresentation {
    pub presentation: Presentation,
    pub base: usize,
    pub loops: Vec<Vec<(usize, i8)>>,
}

impl MarkedPresentation {
    pub fn new(
        presentation: Presentation,
        base: usize,
        loops: Vec<Vec<(usize, i8)>>,
    ) -> Result<Self, crate::quandle::QuandleError> {
        use crate::quandle::QuandleError;
        let n = presentation.num_generators();
        if base >= n {
            return Err(QuandleError::Structural(format!(
                "basepoint generator {base} out of range 0..{n}"
            )));
        }
        for w in &loops {
            for &(g, s) in w {
                if g >= n {
                    return Err(QuandleError::Structural(format!(
                        "loop letter {g} out of range 0..{n}"
                    )));
                }
                if s != 1 && s != -1 {
                    return Err(QuandleError::Structural(
                        "loop letter sign must be ±1".into(),
                    ));
                }
            }
        }
        Ok(MarkedPresentation {
            presentation,
            base,
            loops,
        })
    }

    /// The relator `(x_base^w, x_base)` each loop word contributes.
    pub fn loop_relators(&self) -> Vec<(FreeQuandleElem, FreeQuandleElem)> {
        self.loops
            .iter()
            .map(|w| {
                (
                    FreeQuandleElem::new(self.base, w.iter().copied()),
                    FreeQuandleElem::generator(self.base),
                )
            })
            .collect()
    }

    /// Presentation augmented with the loop relators.
    pub fn augmented_presentation(&self) -> Presentation {
        let mut p = self.presentation.clone();
        for (lhs, rhs) in self.loop_relators() {
            p.push_relator(lhs, rhs);
        }
        p
    }
}

/// Signed cocycle weight along a colored word: positive letters contribute
/// `θ` at the color before the step, negative letters `-θ` at the color
/// after stepping back.
pub fn word_weight(
    x: &FiniteQuandle,
    theta: &Cocycle,
    start: usize,
    letters: impl IntoIterator<Item = (usize, i8)>,
) -> GroupElem {
    let group = theta.group().clone();
    let mut acc = group.zero_elem();
    let mut e = start;
    for (yc, s) in letters {
        if s > 0 {
            acc = group.add(&acc, theta.value(e, yc));
            e = x.op(e, yc);
        } else {
            e = x.op_inv(e, yc);
            acc = group.add(&acc, &group.neg(theta.value(e, yc)));
        }
    }
    acc
}

/// The weight ideal of a marked presentation under one coloring: the ideal
/// generated by `1·W(λ) - 1·0_A` over the loop words. A loop word must
/// evaluate back to the basepoint color; a basis of loops suffices because
/// weights add along loop concatenation.
pub fn surface_weight_ideal(
    mp: &MarkedPresentation,
    assignment: &[usize],
    x: &FiniteQuandle,
    theta: &Cocycle,
) -> Result<IdealLattice, KnotError> {
    theta.check(x)?;
    let group = theta.group().clone();
    if !group.is_finite() {
        return Err(RingError::UnsupportedGroup(group.spec_string()).into());
    }
    if !mp.presentation.is_coloring(assignment, x) {
        return Err(KnotError::NotColoring);
    }
    let base_color = assignment[mp.base];
    let mut gens = Vec::new();
    for (index, w) in mp.loops.iter().enumerate() {
        let colored = w.iter().map(|&(g, s)| (assignment[g], s));
        let mut end = base_color;
        for (yc, s) in colored.clone() {
            end = if s > 0 {
                x.op(end, yc)
            } else {
                x.op_inv(end, yc)
            };
        }
        if end != base_color {
            return Err(KnotError::LoopNotClosed { index });
        }
        let weight = word_weight(x, theta, base_color, colored);
        let gen =
            &GroupRingElem::monomial(&group, Int::one(), weight) - &GroupRingElem::one(&group);
        gens.push(gen);
    }
    Ok(IdealLattice::from_generators(&group, &gens)?)
}

/// `E_0` of the twisted matrix of the presentation augmented with the loop
/// relators; the independent route to the same ideal.
pub fn marked_matrix_ideal(
    mp: &MarkedPresentation,
    assignment: &[usize],
    x: &FiniteQuandle,
    theta: &Cocycle,
) -> Result<IdealLattice, KnotError> {
    let pair = AlexanderPair::from_cocycle(x, theta)?;
    let p = mp.augmented_presentation();
    let m = build_matrix(&p, assignment, x, &pair)?;
    match elementary_ideal(&m, 0)? {
        ElementaryIdeal::Finite(l) => Ok(l),
        ElementaryIdeal::Laurent { .. } => {
            Err(KnotError::Ring(RingError::UnsupportedGroup("Z".into())))
        }
    }
}

/// Outcome of the connected-quandle ideal comparison: `E_0` of the table
/// presentation's twisted matrix against the ideal generated by
/// `1·a - 1·0_A` over the image of `θ ∘ ρ_*`.
#[derive(Debug, Clone)]
pub struct Thm2Report {
    pub lhs: IdealLattice,
    pub rhs: IdealLattice,
    pub image: Vec<GroupElem>,
    pub equal: bool,
}

/// General form over a verified homomorphism `ρ : q -> x`; `q` must be
/// connected.
pub fn verify_theorem2_with(
    q: &FiniteQuandle,
    x: &FiniteQuandle,
    rho: &[usize],
    theta: &Cocycle,
) -> Result<Thm2Report, KnotError> {
    theta.check(x)?;
    if !q.is_connected() {
        return Err(KnotError::NotConnected);
    }
    let group = theta.group().clone();
    if !group.is_finite() {
        return Err(RingError::UnsupportedGroup(group.spec_string()).into());
    }
    let image = theta_rho_image(q, x, rho, theta)?;
    let p = Presentation::from_table(q);
    let pair = AlexanderPair::from_cocycle(x, theta)?;
    let m = build_matrix(&p, rho, x, &pair)?;
    let lhs = match elementary_ideal(&m, 0)? {
        ElementaryIdeal::Finite(l) => l,
        ElementaryIdeal::Laurent { .. } => unreachable!("finite group checked above"),
    };
    let gens: Vec<GroupRingElem> = image
        .iter()
        .map(|a| {
            &GroupRingElem::monomial(&group, Int::one(), a.clone()) - &GroupRingElem::one(&group)
        })
        .collect();
    let rhs = IdealLattice::from_generators(&group, &gens)?;
    let equal = lhs == rhs;
    Ok(Thm2Report {
        lhs,
        rhs,
        image,
        equal,
    })
}

/// Identity-homomorphism harness on a connected quandle.
pub fn verify_theorem2(x: &FiniteQuandle, theta: &Cocycle) -> Result<Thm2Report, KnotError> {
    let id: Vec<usize> = (0..x.order()).collect();
    verify_theorem2_with(x, x, &id, theta)
}

/// The standard trefoil diagram.
pub fn trefoil_pd() -> PdCode {
    PdCode::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap()
}

/// A figure-eight diagram (closure of the braid word s1 s2^{-1} s1 s2^{-1}).
pub fn figure_eight_pd() -> PdCode {
    PdCode::new(vec![[4, 1, 5, 2], [2, 8, 3, 7], [8, 5, 1, 6], [6, 4, 7, 3]]).unwrap()
}
