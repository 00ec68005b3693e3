//! Piecewise-constant threshold functions `f : [0,1] → [1/2, 1]` used by the
//! local rounding step.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Upper end of the admissible `ε` for [`ThresholdFunction::TwoStep`].
pub fn two_step_eps_max() -> f64 {
    33f64.sqrt() / 2.0 - 17.0 / 6.0
}

const RANGE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThresholdFunction {
    ConstantOne,
    /// `1` for `p ≤ 1/2`, `alpha` above.
    StepHalf { alpha: f64 },
    /// `2/3 − ε` above 1/2, `2/3 + ε/2` on `(1/3, 1/2]`, `1` for `p ≤ 1/3`.
    TwoStep { eps: f64 },
    /// `1` for `p ≤ 1/3`, `alpha` above.
    StepThird { alpha: f64 },
    /// `1` for `p ≤ b`, `a` above.
    StepAt { a: f64, b: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("threshold parameter {name} = {value} outside [{lo}, {hi}]")]
pub struct ThresholdError {
    pub name: &'static str,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

fn check(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<(), ThresholdError> {
    if value.is_finite() && value >= lo - RANGE_TOL && value <= hi + RANGE_TOL {
        Ok(())
    } else {
        Err(ThresholdError { name, value, lo, hi })
    }
}

impl ThresholdFunction {
    pub fn step_half(alpha: f64) -> Result<Self, ThresholdError> {
        check("alpha", alpha, 2.0 / 3.0, 1.0)?;
        Ok(Self::StepHalf { alpha })
    }

    pub fn two_step(eps: f64) -> Result<Self, ThresholdError> {
        check("eps", eps, 0.0, two_step_eps_max())?;
        Ok(Self::TwoStep { eps })
    }

    /// `beta` is the light-job bound of the instance family the function serves.
    pub fn step_third(alpha: f64, beta: f64) -> Result<Self, ThresholdError> {
        check("alpha", alpha, (1.0 / 3.0 + 2.0 * beta / 3.0).max(2.0 / 3.0), 1.0)?;
        Ok(Self::StepThird { alpha })
    }

    pub fn step_at(a: f64, b: f64) -> Result<Self, ThresholdError> {
        check("a", a, 0.5, 1.0)?;
        check("b", b, 0.0, f64::MAX)?;
        Ok(Self::StepAt { a, b })
    }

    pub fn eval(&self, p: f64) -> f64 {
        match *self {
            Self::ConstantOne => 1.0,
            Self::StepHalf { alpha } => {
                if p <= 0.5 {
                    1.0
                } else {
                    alpha
                }
            }
            Self::TwoStep { eps } => {
                if p <= 1.0 / 3.0 {
                    1.0
                } else if p <= 0.5 {
                    2.0 / 3.0 + eps / 2.0
                } else {
                    2.0 / 3.0 - eps
                }
            }
            Self::StepThird { alpha } => {
                if p <= 1.0 / 3.0 {
                    1.0
                } else {
                    alpha
                }
            }
            Self::StepAt { a, b } => {
                if p <= b {
                    1.0
                } else {
                    a
                }
            }
        }
    }

    /// `inf_p f(p)`, which bounds the cost blow-up of the local step.
    pub fn infimum(&self) -> f64 {
        match *self {
            Self::ConstantOne => 1.0,
            Self::StepHalf { alpha } | Self::StepThird { alpha } => alpha,
            Self::TwoStep { eps } => 2.0 / 3.0 - eps,
            Self::StepAt { a, .. } => a,
        }
    }

    pub fn cost_factor(&self) -> f64 {
        1.0 / self.infimum()
    }
}

impl fmt::Display for ThresholdFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ConstantOne => write!(f, "const(1)"),
            Self::StepHalf { alpha } => write!(f, "step_half(alpha={alpha})"),
            Self::TwoStep { eps } => write!(f, "two_step(eps={eps})"),
            Self::StepThird { alpha } => write!(f, "step_third(alpha={alpha})"),
            Self::StepAt { a, b } => write!(f, "step_at(a={a}, b={b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_half_boundary() {
        let f = ThresholdFunction::step_half(0.75).unwrap();
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(0.51), 0.75);
    }

    #[test]
    fn two_step_middle_tier() {
        let f = ThresholdFunction::two_step(0.03).unwrap();
        assert!((f.eval(0.4) - (2.0 / 3.0 + 0.015)).abs() < 1e-15);
        assert_eq!(f.eval(1.0 / 3.0), 1.0);
        assert_eq!(f.eval(0.5), 2.0 / 3.0 + 0.015);
        assert_eq!(f.eval(0.6), 2.0 / 3.0 - 0.03);
    }

    #[test]
    fn step_at_boundary_inclusive() {
        let f = ThresholdFunction::step_at(2.0 / 3.0, 1.0 / 3.0).unwrap();
        assert_eq!(f.eval(1.0 / 3.0), 1.0);
        assert_eq!(f.eval(0.34), 2.0 / 3.0);
    }

    #[test]
    fn ranges_are_enforced() {
        assert!(ThresholdFunction::step_half(0.6).is_err());
        assert!(ThresholdFunction::two_step(0.05).is_err());
        assert!(ThresholdFunction::two_step(-0.01).is_err());
        assert!(ThresholdFunction::step_third(0.7, 0.7).is_err());
        assert!(ThresholdFunction::step_third(0.8, 0.7).is_ok());
        assert!(ThresholdFunction::step_at(0.4, 0.1).is_err());
        assert!(ThresholdFunction::step_at(0.6, -0.1).is_err());
    }

    #[test]
    fn range_and_monotonicity() {
        let fs = [
            ThresholdFunction::ConstantOne,
            ThresholdFunction::step_half(2.0 / 3.0).unwrap(),
            ThresholdFunction::two_step(two_step_eps_max()).unwrap(),
            ThresholdFunction::step_third(0.7, 0.5).unwrap(),
            ThresholdFunction::step_at(0.55, 0.2).unwrap(),
        ];
        for f in fs {
            let mut prev = f64::INFINITY;
            for i in 0..=1000 {
                let v = f.eval(i as f64 / 1000.0);
                assert!((0.5..=1.0).contains(&v), "{f} at {i}");
                assert!(v <= prev);
                prev = v;
            }
            assert!(f.infimum() >= 0.5);
        }
    }
}
