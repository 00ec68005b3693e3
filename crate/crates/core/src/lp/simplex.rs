//! Dense two-phase primal simplex with Bland's rule.
//!
//! Problems are `min c·x  s.t.  A x (≤|=) b,  x ≥ 0`. Small by design: the
//! tableau is dense and every pivot touches every row.

use thiserror::Error;

use super::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
}

#[derive(Debug, Clone)]
pub struct DenseLp<S> {
    /// Row-major constraint matrix, `m × n`.
    pub a: Vec<Vec<S>>,
    pub senses: Vec<Sense>,
    pub b: Vec<S>,
    pub c: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<S> {
    Optimal { x: Vec<S>, objective: S },
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimplexError {
    #[error("objective is unbounded below")]
    Unbounded,
    #[error("constraint residual {residual:e} exceeds tolerance after refinement")]
    NumericalFailure { residual: f64 },
    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
}

/// Residual tolerance enforced on the final point.
pub const RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Col {
    Structural,
    Slack,
    Artificial,
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    /// Reduced costs; last entry holds `-z`.
    obj: Vec<S>,
    basis: Vec<usize>,
    kinds: Vec<Col>,
}

impl<S: Scalar> Tableau<S> {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width();
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[col].clone();
            if f == S::zero() {
                continue;
            }
            for j in 0..=w {
                row[j].sub_mul(&f, &pivot_row[j]);
            }
            row[col] = S::zero();
        }
        let f = self.obj[col].clone();
        if f != S::zero() {
            for j in 0..=w {
                self.obj[j].sub_mul(&f, &pivot_row[j]);
            }
            self.obj[col] = S::zero();
        }
        self.basis[r] = col;
    }

    /// Installs `cost` as the objective and prices out the current basis.
    fn set_objective(&mut self, cost: &[S]) {
        let w = self.width();
        self.obj = cost.to_vec();
        self.obj.push(S::zero());
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = cost[bv].clone();
            if cb == S::zero() {
                continue;
            }
            for j in 0..=w {
                self.obj[j].sub_mul(&cb, &self.rows[i][j]);
            }
        }
    }

    /// Bland's rule until optimal. `allowed` filters entering columns.
    fn optimize(&mut self, allowed: impl Fn(Col) -> bool, limit: usize) -> Result<(), SimplexError> {
        let w = self.width();
        for _ in 0..limit {
            let Some(col) = (0..w).find(|&j| allowed(self.kinds[j]) && self.obj[j].is_neg()) else {
                return Ok(());
            };
            let mut leave: Option<(usize, S)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_pos() {
                    continue;
                }
                let ratio = row[w].clone() / row[col].clone();
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        let diff = ratio.clone() - best.clone();
                        diff.is_neg() || (diff.is_negligible() && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return Err(SimplexError::Unbounded),
            }
        }
        Err(SimplexError::IterationLimit(limit))
    }
}

pub fn solve<S: Scalar>(lp: &DenseLp<S>) -> Result<Outcome<S>, SimplexError> {
    let m = lp.a.len();
    let n = lp.c.len();
    debug_assert!(lp.a.iter().all(|r| r.len() == n));

    // Normalize to b ≥ 0; a flipped ≤ row becomes ≥ and needs an artificial.
    let mut kinds = vec![Col::Structural; n];
    let mut slack_of = vec![None; m];
    let mut art_of = vec![None; m];
    let mut flipped = vec![false; m];
    for i in 0..m {
        flipped[i] = lp.b[i] < S::zero();
        if lp.senses[i] == Sense::Le {
            slack_of[i] = Some(kinds.len());
            kinds.push(Col::Slack);
        }
    }
    for i in 0..m {
        if lp.senses[i] == Sense::Eq || flipped[i] {
            art_of[i] = Some(kinds.len());
            kinds.push(Col::Artificial);
        }
    }
    let w = kinds.len();
    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let sign = if flipped[i] { -S::one() } else { S::one() };
        let mut row = vec![S::zero(); w + 1];
        for j in 0..n {
            row[j] = lp.a[i][j].clone() * sign.clone();
        }
        if let Some(s) = slack_of[i] {
            row[s] = sign.clone();
        }
        if let Some(a) = art_of[i] {
            row[a] = S::one();
        }
        row[w] = lp.b[i].clone() * sign;
        basis.push(art_of[i].or(slack_of[i]).expect("every row has a basic column"));
        rows.push(row);
    }
    let mut t = Tableau { rows, obj: Vec::new(), basis, kinds };
    let limit = 50_000 + 200 * (m + w);

    // Phase 1.
    let phase1: Vec<S> = t
        .kinds
        .iter()
        .map(|&k| if k == Col::Artificial { S::one() } else { S::zero() })
        .collect();
    t.set_objective(&phase1);
    t.optimize(|_| true, limit)?;
    let infeasibility = -t.obj[w].clone();
    if infeasibility.is_pos() {
        return Ok(Outcome::Infeasible);
    }
    // Drive artificials out of the basis; drop rows that are redundant.
    let mut i = 0;
    while i < t.rows.len() {
        if t.kinds[t.basis[i]] == Col::Artificial {
            let col = (0..w).find(|&j| t.kinds[j] != Col::Artificial && !t.rows[i][j].is_negligible());
            match col {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2.
    let mut cost = vec![S::zero(); w];
    cost[..n].clone_from_slice(&lp.c);
    t.set_objective(&cost);
    t.optimize(|k| k != Col::Artificial, limit)?;

    let mut x = vec![S::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rows[i][w].clone();
        }
    }
    if !S::EXACT {
        refine(lp, &t, &slack_of, &mut x);
    }
    let residual = max_residual(lp, &x);
    if residual > RESIDUAL_TOL {
        return Err(SimplexError::NumericalFailure { residual });
    }
    let objective = x
        .iter()
        .zip(&lp.c)
        .fold(S::zero(), |acc, (xi, ci)| acc + xi.clone() * ci.clone());
    Ok(Outcome::Optimal { x, objective })
}

/// Largest violation of any row or sign constraint at `x`, in f64.
pub fn max_residual<S: Scalar>(lp: &DenseLp<S>, x: &[S]) -> f64 {
    let mut worst = 0.0f64;
    for v in x {
        worst = worst.max(-v.to_f64());
    }
    for (i, row) in lp.a.iter().enumerate() {
        let lhs = row
            .iter()
            .zip(x)
            .fold(S::zero(), |acc, (a, xi)| acc + a.clone() * xi.clone());
        let r = (lhs - lp.b[i].clone()).to_f64();
        worst = worst.max(match lp.senses[i] {
            Sense::Le => r,
            Sense::Eq => r.abs(),
        });
    }
    worst
}

/// Re-solves `B x_B = b` from the original data with partial pivoting,
/// discarding drift accumulated in the tableau.
fn refine<S: Scalar>(lp: &DenseLp<S>, t: &Tableau<S>, slack_of: &[Option<usize>], x: &mut [S]) {
    let n = lp.c.len();
    let m = lp.a.len();
    let k = t.basis.len();
    let mut col_of_slack = vec![usize::MAX; t.kinds.len()];
    for (i, s) in slack_of.iter().enumerate() {
        if let Some(s) = s {
            col_of_slack[*s] = i;
        }
    }
    // Original column of each basic variable, over all m original rows.
    let column = |bv: usize| -> Vec<f64> {
        if bv < n {
            (0..m).map(|i| lp.a[i][bv].to_f64()).collect()
        } else {
            let mut c = vec![0.0; m];
            if col_of_slack[bv] != usize::MAX {
                c[col_of_slack[bv]] = 1.0;
            }
            c
        }
    };
    let cols: Vec<Vec<f64>> = t.basis.iter().map(|&bv| column(bv)).collect();
    // Least-squares-free approach: pick k linearly independent original rows
    // by elimination over the m × k system [B | b].
    let mut mat: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut r: Vec<f64> = cols.iter().map(|c| c[i]).collect();
            r.push(lp.b[i].to_f64());
            r
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut used = vec![false; m];
    for col in 0..k {
        let best = (0..m)
            .filter(|&i| !used[i])
            .max_by(|&a, &b| mat[a][col].abs().total_cmp(&mat[b][col].abs()));
        let Some(p) = best else { return };
        if mat[p][col].abs() < 1e-12 {
            return;
        }
        used[p] = true;
        pivot_rows.push(p);
        let pr = mat[p].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i == p {
                continue;
            }
            let f = row[col] / pr[col];
            if f != 0.0 {
                for j in col..=k {
                    row[j] -= f * pr[j];
                }
            }
        }
    }
    // Rows never chosen must be consistent; otherwise keep the tableau values.
    if (0..m).any(|i| !used[i] && mat[i][k].abs() > 1e-9) {
        return;
    }
    for (col, &p) in pivot_rows.iter().enumerate() {
        let bv = t.basis[col];
        if bv < n {
            let v = mat[p][k] / mat[p][col];
            x[bv] = S::from_f64(if v.abs() < 1e-13 { 0.0 } else { v });
        }
    }
}
