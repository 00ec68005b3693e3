//! Two-phase rounding: orient edges whose fractional value clears the
//! threshold, then round what is left with the slot matching.

use crate::lp::FractionalSolution;
use crate::model::{Orientation, ScaledInstance, VertexId};
use crate::st::{st_round_partial, StError};
use crate::threshold::ThresholdFunction;

/// Strict margin for the local decision: ties stay fractional.
pub const LOCAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LocalStepResult {
    /// Per edge: the endpoint fixed by the local step, if any.
    pub pre_oriented: Vec<Option<VertexId>>,
}

impl LocalStepResult {
    /// Mask of edges left for the global step.
    pub fn residual(&self) -> Vec<bool> {
        self.pre_oriented.iter().map(Option::is_none).collect()
    }

    pub fn residual_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.pre_oriented.iter().enumerate().filter(|(_, o)| o.is_none()).map(|(e, _)| e)
    }

    /// Number of locally oriented edges per vertex.
    pub fn count_per_vertex(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n];
        for v in self.pre_oriented.iter().flatten() {
            c[v.0] += 1;
        }
        c
    }
}

/// # Panics
/// If two endpoints of one edge clear the threshold, which cannot happen for
/// `f ≥ 1/2` and an `x` whose Edge rows sum to 1.
pub fn local_step(inst: &ScaledInstance, x: &FractionalSolution, f: &ThresholdFunction) -> LocalStepResult {
    let pre_oriented = inst
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| {
            let mut chosen = None;
            for (i, ep) in edge.endpoints.iter().enumerate() {
                if inst.allowed[e][i] && x.x[e][i] > f.eval(ep.p) + LOCAL_TOL {
                    assert!(chosen.is_none(), "edge {} cleared the threshold at two endpoints", edge.id);
                    chosen = Some(ep.vertex);
                }
            }
            chosen
        })
        .collect();
    LocalStepResult { pre_oriented }
}

pub fn framework_round(
    inst: &ScaledInstance,
    x: &FractionalSolution,
    f: &ThresholdFunction,
) -> Result<Orientation, StError> {
    Ok(framework_round_detailed(inst, x, f)?.0)
}

/// Like [`framework_round`], also returning the local-step decisions.
pub fn framework_round_detailed(
    inst: &ScaledInstance,
    x: &FractionalSolution,
    f: &ThresholdFunction,
) -> Result<(Orientation, LocalStepResult), StError> {
    let local = local_step(inst, x, f);
    let global = st_round_partial(inst, x, &local.residual())?;
    let assignment = local
        .pre_oriented
        .iter()
        .zip(global)
        .map(|(l, g)| l.or(g).expect("every edge is oriented by one of the two steps"))
        .collect();
    Ok((Orientation { assignment }, local))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{scale_to_target, InstanceBuilder};

    fn unit_edge() -> ScaledInstance {
        let mut b = InstanceBuilder::new();
        let u = b.vertex("u");
        let v = b.vertex("v");
        b.related_edge(&[(u, 0.0), (v, 0.0)], 1.0);
        scale_to_target(&b.build(), 1.0).unwrap()
    }

    fn split(xu: f64) -> FractionalSolution {
        FractionalSolution { x: vec![vec![xu, 1.0 - xu]], objective_value: 0.0 }
    }

    #[test]
    fn strict_threshold() {
        let s = unit_edge();
        let f = ThresholdFunction::step_half(0.75).unwrap();
        assert_eq!(local_step(&s, &split(0.76), &f).pre_oriented, vec![Some(VertexId(0))]);
        assert_eq!(local_step(&s, &split(0.75), &f).pre_oriented, vec![None]);
    }

    #[test]
    fn constant_one_orients_nothing() {
        let s = unit_edge();
        let r = local_step(&s, &split(1.0), &ThresholdFunction::ConstantOne);
        assert_eq!(r.pre_oriented, vec![None]);
    }

    #[test]
    fn integral_input_is_preserved() {
        let s = unit_edge();
        for f in [ThresholdFunction::ConstantOne, ThresholdFunction::step_half(0.8).unwrap()] {
            let o = framework_round(&s, &split(0.0), &f).unwrap();
            assert_eq!(o.assignment, vec![VertexId(1)]);
        }
    }
}
