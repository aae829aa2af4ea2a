//! Integer matrix normal forms: row Hermite form, Smith form, kernels and
//! lattice quotients. Everything is generic over the integer scalar via
//! `num-integer`/`num-traits`, so the same kernels run on `i64` in small
//! tests and on [`crate::Int`] in production code.

use num_integer::Integer;
use num_traits::Signed;

/// Scalar bound for the matrix kernels.
pub trait MatInt: Integer + Signed + Clone + std::fmt::Debug {}
impl<T: Integer + Signed + Clone + std::fmt::Debug> MatInt for T {}

fn is_zero_row<I: MatInt>(row: &[I]) -> bool {
    row.iter().all(|v| v.is_zero())
}

/// Row Hermite normal form of the lattice spanned by `rows`.
///
/// The result is canonical for the lattice: pivots are positive, each pivot
/// is the only nonzero entry of its column below it, entries above a pivot
/// are reduced into `[0, pivot)`, and zero rows are dropped.
pub fn hermite_normal_form<I: MatInt>(mut rows: Vec<Vec<I>>) -> Vec<Vec<I>> {
    rows.retain(|r| !is_zero_row(r));
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");

    let mut top = 0usize;
    for col in 0..ncols {
        loop {
            // pick the row (>= top) with the smallest nonzero |entry| in this column
            let mut pivot: Option<usize> = None;
            for i in top..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some(i),
                    Some(p) => {
                        if rows[i][col].abs() < rows[p][col].abs() {
                            pivot = Some(i);
                        }
                    }
                }
            }
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].clone() / rows[top][col].clone();
                if !q.is_zero() {
                    for k in col..ncols {
                        let delta = q.clone() * rows[top][k].clone();
                        rows[i][k] = rows[i][k].clone() - delta;
                    }
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            if rows[top][col].is_negative() {
                for v in rows[top].iter_mut() {
                    *v = -v.clone();
                }
            }
            // reduce entries above the pivot into [0, pivot)
            for i in 0..top {
                let q = rows[i][col].div_floor(&rows[top][col]);
                if !q.is_zero() {
                    for k in 0..ncols {
                        let delta = q.clone() * rows[top][k].clone();
                        rows[i][k] = rows[i][k].clone() - delta;
                    }
                }
            }
            top += 1;
            if top == rows.len() {
                break;
            }
        }
    }
    rows.truncate(top);
    rows
}

/// Coefficients expressing `x` on the rows of an HNF basis, or `None` when
/// `x` is not in the lattice.
pub fn lattice_solve<I: MatInt>(hnf: &[Vec<I>], x: &[I]) -> Option<Vec<I>> {
    let mut residue = x.to_vec();
    let mut coeffs = Vec::with_capacity(hnf.len());
    for row in hnf {
        let pivot_col = row
            .iter()
            .position(|v| !v.is_zero())
            .expect("zero row in HNF basis");
        let (q, r) = residue[pivot_col].div_rem(&row[pivot_col]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for k in 0..residue.len() {
                let delta = q.clone() * row[k].clone();
                residue[k] = residue[k].clone() - delta;
            }
        }
        coeffs.push(q);
    }
    if is_zero_row(&residue) {
        Some(coeffs)
    } else {
        None
    }
}

pub fn lattice_contains<I: MatInt>(hnf: &[Vec<I>], x: &[I]) -> bool {
    lattice_solve(hnf, x).is_some()
}

/// Basis of the right kernel `{ v : M v = 0 }` of the column action of `mat`.
pub fn kernel_basis<I: MatInt>(mat: &[Vec<I>], ncols: usize) -> Vec<Vec<I>> {
    let nrows = mat.len();
    // HNF of [M^T | I]; rows whose left block vanished carry a kernel basis.
    let mut aug: Vec<Vec<I>> = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let mut row: Vec<I> = Vec::with_capacity(nrows + ncols);
        for mat_row in mat.iter() {
            row.push(mat_row[j].clone());
        }
        for k in 0..ncols {
            row.push(if k == j { I::one() } else { I::zero() });
        }
        aug.push(row);
    }
    let h = hermite_normal_form(aug);
    let mut basis = Vec::new();
    for row in &h {
        if row[..nrows].iter().all(|v| v.is_zero()) {
            basis.push(row[nrows..].to_vec());
        }
    }
    basis
}

/// Outcome of a lattice quotient `ambient / sub`: torsion factors first
/// (each > 1, in divisibility order), then one `0` per free summand, with a
/// generating vector of the ambient space aligned to each factor.
#[derive(Debug, Clone)]
pub struct QuotientGroup<I> {
    pub factors: Vec<I>,
    pub generators: Vec<Vec<I>>,
}

/// Quotient of the lattice spanned by `ambient` by the sublattice spanned by
/// `sub` (every row of `sub` must lie in the ambient lattice).
pub fn lattice_quotient<I: MatInt>(ambient: Vec<Vec<I>>, sub: &[Vec<I>]) -> QuotientGroup<I> {
    let basis = hermite_normal_form(ambient);
    let k = basis.len();
    if k == 0 {
        return QuotientGroup {
            factors: vec![],
            generators: vec![],
        };
    }
    let ncols = basis[0].len();
    let mut coords: Vec<Vec<I>> = Vec::with_capacity(sub.len());
    for s in sub {
        let c = lattice_solve(&basis, s).expect("sublattice generator outside ambient lattice");
        coords.push(c);
    }
    let (diag, vinv) = smith_with_vinv(coords, k);
    let mut torsion = Vec::new();
    let mut gens = Vec::new();
    let expand = |z: &[I]| -> Vec<I> {
        let mut v = vec![I::zero(); ncols];
        for (c, row) in z.iter().zip(basis.iter()) {
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row.iter()) {
                *vi = vi.clone() + c.clone() * ri.clone();
            }
        }
        v
    };
    for (i, d) in diag.iter().enumerate() {
        if *d > I::one() {
            torsion.push(d.clone());
            gens.push(expand(&vinv[i]));
        }
    }
    let mut factors = torsion;
    let mut generators = gens;
    for i in diag.len()..k {
        factors.push(I::zero());
        generators.push(expand(&vinv[i]));
    }
    QuotientGroup {
        factors,
        generators,
    }
}

/// Nonzero invariant factors of an integer matrix.
pub fn invariant_factors<I: MatInt>(mat: Vec<Vec<I>>) -> Vec<I> {
    let ncols = if mat.is_empty() { 0 } else { mat[0].len() };
    smith_with_vinv(mat, ncols).0
}

/// Smith reduction of `mat` (any row count, `ncols` columns), returning the
/// nonzero diagonal and the inverse of the accumulated column transform.
/// With `D = U A V`, row `i` of the returned matrix is `e_i V^{-1}`, i.e. the
/// `i`-th member of the basis of `Z^ncols` in which the row span of `A`
/// becomes `⊕ d_i Z e_i`.
fn smith_with_vinv<I: MatInt>(mat: Vec<Vec<I>>, ncols: usize) -> (Vec<I>, Vec<Vec<I>>) {
    let mut a: Vec<Vec<I>> = mat.into_iter().filter(|r| !is_zero_row(r)).collect();
    let nrows = a.len();
    let mut vinv: Vec<Vec<I>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { I::one() } else { I::zero() })
                .collect()
        })
        .collect();

    // column op mirrors on vinv: C -> C·E  implies  V^{-1} -> E^{-1}·V^{-1}
    let mut t = 0usize;
    while t < nrows.min(ncols) {
        // smallest nonzero |entry| in the trailing block keeps growth down
        let mut pos: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if a[i][j].is_zero() {
                    continue;
                }
                match &pos {
                    None => pos = Some((i, j)),
                    Some((pi, pj)) => {
                        if a[i][j].abs() < a[*pi][*pj].abs() {
                            pos = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pos else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            vinv.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..nrows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].clone() / a[t][t].clone();
            if !q.is_zero() {
                for k in 0..ncols {
                    let delta = q.clone() * a[t][k].clone();
                    a[i][k] = a[i][k].clone() - delta;
                }
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..ncols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].clone() / a[t][t].clone();
            if !q.is_zero() {
                // col_j -= q * col_t, so on vinv: row_t += q * row_j
                for row in a.iter_mut() {
                    let delta = q.clone() * row[t].clone();
                    row[j] = row[j].clone() - delta;
                }
                for k in 0..ncols {
                    let delta = q.clone() * vinv[j][k].clone();
                    vinv[t][k] = vinv[t][k].clone() + delta;
                }
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce the divisibility chain before moving on
        let d = a[t][t].clone();
        let mut offender = None;
        'scan: for i in t + 1..nrows {
            for j in t + 1..ncols {
                if !a[i][j].mod_floor(&d).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for k in 0..ncols {
                let v = a[i][k].clone();
                a[t][k] = a[t][k].clone() + v;
            }
            continue;
        }
        if a[t][t].is_negative() {
            for row in a.iter_mut() {
                row[t] = -row[t].clone();
            }
            for v in vinv[t].iter_mut() {
                *v = -v.clone();
            }
        }
        t += 1;
    }
    let diag: Vec<I> = (0..t).map(|i| a[i][i].clone()).collect();
    (diag, vinv)
}
