//! Solving a [`LinearProgram`] and post-processing its solution.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::model::{Orientation, ScaledInstance, VertexId};

use super::relaxation::{LinearProgram, RowKind};
use super::scalar::Scalar;
use super::simplex::{self, DenseLp, Outcome, Sense};
use super::LpError;

/// Fractional orientation `x[edge][endpoint]` (zero on forbidden endpoints).
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    pub x: Vec<Vec<f64>>,
    pub objective_value: f64,
}

impl FractionalSolution {
    /// Indicator solution of an integral orientation.
    pub fn from_orientation(inst: &ScaledInstance, orientation: &Orientation) -> Self {
        let mut objective_value = 0.0;
        let x = inst
            .edges()
            .iter()
            .zip(&orientation.assignment)
            .map(|(edge, &to)| {
                edge.endpoints
                    .iter()
                    .map(|ep| {
                        if ep.vertex == to {
                            objective_value += ep.c;
                            1.0
                        } else {
                            0.0
                        }
                    })
                    .collect()
            })
            .collect();
        Self { x, objective_value }
    }

    /// `Σ_e x_{e,u}` for every vertex.
    pub fn vertex_mass(&self, inst: &ScaledInstance) -> Vec<f64> {
        let mut mass = vec![0.0; inst.num_vertices()];
        for (edge, xs) in inst.edges().iter().zip(&self.x) {
            for (ep, &v) in edge.endpoints.iter().zip(xs) {
                mass[ep.vertex.0] += v;
            }
        }
        mass
    }

    /// `Σ_e x_{e,u} p(e,u)` for every vertex.
    pub fn fractional_loads(&self, inst: &ScaledInstance) -> Vec<f64> {
        let mut loads = vec![0.0; inst.num_vertices()];
        for (edge, xs) in inst.edges().iter().zip(&self.x) {
            for (ep, &v) in edge.endpoints.iter().zip(xs) {
                loads[ep.vertex.0] += v * ep.p;
            }
        }
        loads
    }

    pub fn value(&self, edge: usize, vertex: VertexId, inst: &ScaledInstance) -> f64 {
        inst.edges()[edge].endpoint_index(vertex).map_or(0.0, |i| self.x[edge][i])
    }

    pub fn is_integral(&self) -> bool {
        self.x.iter().flatten().all(|&v| v == 0.0 || v == 1.0)
    }
}

/// Solution computed in exact rational arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSolution {
    pub x: Vec<Vec<BigRational>>,
    pub objective_value: BigRational,
}

impl ExactSolution {
    pub fn to_fractional(&self) -> FractionalSolution {
        FractionalSolution {
            x: self.x.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect(),
            objective_value: self.objective_value.to_f64(),
        }
    }

    /// Exact `Σ_e x_{e,u} p(e,u)`, with weights read back as rationals.
    pub fn fractional_loads(&self, inst: &ScaledInstance) -> Vec<BigRational> {
        let mut loads = vec![<BigRational as Scalar>::zero(); inst.num_vertices()];
        for (edge, xs) in inst.edges().iter().zip(&self.x) {
            for (ep, v) in edge.endpoints.iter().zip(xs) {
                loads[ep.vertex.0] += v * <BigRational as Scalar>::from_f64(ep.p);
            }
        }
        loads
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<FractionalSolution, LpError> {
    let (values, objective) = solve_generic::<f64>(lp)?;
    Ok(FractionalSolution { x: to_table(lp, &values), objective_value: objective })
}

/// Same as [`solve_lp`] with every coefficient converted to a rational first.
pub fn solve_lp_exact(lp: &LinearProgram) -> Result<ExactSolution, LpError> {
    let (values, objective) = solve_generic::<BigRational>(lp)?;
    Ok(ExactSolution { x: to_table(lp, &values), objective_value: objective })
}

fn to_table<S: Scalar>(lp: &LinearProgram, values: &[S]) -> Vec<Vec<S>> {
    lp.var_of
        .iter()
        .map(|slots| slots.iter().map(|s| s.map_or(S::zero(), |j| values[j].clone())).collect())
        .collect()
}

/// Fixes edges with a single allowed endpoint, substitutes them out, drops
/// empty and duplicate rows, then runs the simplex on what is left.
fn solve_generic<S: Scalar>(lp: &LinearProgram) -> Result<(Vec<S>, S), LpError> {
    let nv = lp.variables.len();
    let mut fixed: Vec<Option<S>> = vec![None; nv];
    for row in &lp.rows {
        if let (RowKind::Edge(_), [(j, a)]) = (&row.kind, row.terms.as_slice()) {
            fixed[*j] = Some(S::from_f64(row.rhs) / S::from_f64(*a));
        }
    }
    let mut col = vec![usize::MAX; nv];
    let mut free = Vec::new();
    for j in 0..nv {
        if fixed[j].is_none() {
            col[j] = free.len();
            free.push(j);
        }
    }
    let n = free.len();

    let mut a: Vec<Vec<S>> = Vec::new();
    let mut senses = Vec::new();
    let mut b: Vec<S> = Vec::new();
    let mut seen: HashMap<(bool, Vec<(usize, u64)>), usize> = HashMap::new();
    for row in &lp.rows {
        let mut rhs = S::from_f64(row.rhs);
        let mut key = Vec::new();
        let mut dense = vec![S::zero(); n];
        for &(j, coef) in &row.terms {
            match &fixed[j] {
                Some(v) => rhs.sub_mul(&S::from_f64(coef), v),
                None => {
                    dense[col[j]] = dense[col[j]].clone() + S::from_f64(coef);
                    key.push((col[j], coef.to_bits()));
                }
            }
        }
        if key.is_empty() {
            let bad = match row.sense {
                Sense::Le => rhs.is_neg(),
                Sense::Eq => !rhs.is_negligible(),
            };
            if bad {
                return Err(LpError::Infeasible);
            }
            continue;
        }
        key.sort_unstable();
        let is_eq = row.sense == Sense::Eq;
        match seen.get(&(is_eq, key.clone())) {
            Some(&i) => {
                if is_eq {
                    if !(b[i].clone() - rhs).is_negligible() {
                        return Err(LpError::Infeasible);
                    }
                } else if rhs < b[i] {
                    b[i] = rhs;
                }
            }
            None => {
                seen.insert((is_eq, key), a.len());
                a.push(dense);
                senses.push(row.sense);
                b.push(rhs);
            }
        }
    }

    let mut constant = S::zero();
    for (j, v) in fixed.iter().enumerate() {
        if let Some(v) = v {
            constant = constant + S::from_f64(lp.objective[j]) * v.clone();
        }
    }
    let c: Vec<S> = free.iter().map(|&j| S::from_f64(lp.objective[j])).collect();
    let (xs, obj) = if n == 0 {
        (Vec::new(), S::zero())
    } else {
        match simplex::solve(&DenseLp { a, senses, b, c })? {
            Outcome::Optimal { x, objective } => (x, objective),
            Outcome::Infeasible => return Err(LpError::Infeasible),
        }
    };
    let mut values = vec![S::zero(); nv];
    for j in 0..nv {
        values[j] = match &fixed[j] {
            Some(v) => v.clone(),
            None => xs[col[j]].clone(),
        };
    }
    Ok((values, constant + obj))
}

/// Clamps into `[0,1]`, renormalizes every edge to sum exactly 1 and
/// recomputes the objective from the instance costs.
pub fn sanitize_solution(inst: &ScaledInstance, sol: &FractionalSolution) -> FractionalSolution {
    let mut x = sol.x.clone();
    let mut objective_value = 0.0;
    for ((row, edge), allowed) in x.iter_mut().zip(inst.edges()).zip(&inst.allowed) {
        for (v, &ok) in row.iter_mut().zip(allowed) {
            *v = if ok { v.clamp(0.0, 1.0) } else { 0.0 };
        }
        let sum: f64 = row.iter().sum();
        if sum > 0.0 && sum != 1.0 {
            for v in row.iter_mut() {
                *v /= sum;
            }
        }
        objective_value += row.iter().zip(&edge.endpoints).map(|(v, ep)| v * ep.c).sum::<f64>();
    }
    FractionalSolution { x, objective_value }
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{build_relaxation, RelaxationSpec};
    use crate::model::{scale_to_target, InstanceBuilder};

    fn single(p: f64, cu: f64, cv: f64) -> ScaledInstance {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        b.related_edge(&[(u, cu), (v, cv)], p);
        scale_to_target(&b.build(), 1.0).unwrap()
    }

    #[test]
    fn cheapest_side_wins() {
        let s = single(1.0, 0.0, 1.0);
        let lp = build_relaxation(&s, RelaxationSpec::plain()).unwrap();
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.x, vec![vec![1.0, 0.0]]);
        assert_eq!(sol.objective_value, 0.0);
    }

    #[test]
    fn forced_overload_is_infeasible() {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        b.self_loop(u, 0.6);
        b.self_loop(u, 0.6);
        let s = scale_to_target(&b.build(), 1.0).unwrap();
        let lp = build_relaxation(&s, RelaxationSpec::plain()).unwrap();
        assert_eq!(solve_lp(&lp), Err(LpError::Infeasible));
        assert_eq!(solve_lp_exact(&lp), Err(LpError::Infeasible));
    }

    #[test]
    fn fractional_split_under_load_pressure() {
        // Both endpoints carry 0.5 of fixed load; the unit edge must split.
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        b.related_edge(&[(u, 0.0), (v, 1.0)], 1.0);
        b.self_loop(u, 0.5);
        b.self_loop(v, 0.5);
        let s = scale_to_target(&b.build(), 1.0).unwrap();
        let lp = build_relaxation(&s, RelaxationSpec::plain()).unwrap();
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.x[0][0] - 0.5).abs() < 1e-12);
        assert!((sol.objective_value - 0.5).abs() < 1e-12);
        let exact = solve_lp_exact(&lp).unwrap();
        assert_eq!(exact.objective_value, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn sanitize_clamps_and_renormalizes() {
        let s = single(1.0, 0.0, 1.0);
        let raw = FractionalSolution { x: vec![vec![1.0000000001, -1e-12]], objective_value: 0.0 };
        assert_eq!(sanitize_solution(&s, &raw).x, vec![vec![1.0, 0.0]]);
        let raw = FractionalSolution { x: vec![vec![0.5000001, 0.4999999]], objective_value: 0.0 };
        let clean = sanitize_solution(&s, &raw);
        assert_eq!(clean.x[0].iter().sum::<f64>(), 1.0);
        let exact = FractionalSolution { x: vec![vec![0.25, 0.75]], objective_value: 0.75 };
        assert_eq!(sanitize_solution(&s, &exact), exact);
    }
}
