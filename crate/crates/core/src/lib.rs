//! Bicriteria graph balancing: orient every (hyper)edge toward one endpoint so
//! that both the maximum load and the total orientation cost stay small.
//!
//! The pipeline is: [`model::scale_to_target`] → [`lp::build_relaxation`] →
//! [`lp::solve_lp`] → [`framework::framework_round`], with
//! [`drivers`] choosing thresholds per problem variant and [`oracle`]
//! providing exhaustive ground truth on small inputs.

pub mod bench;
pub mod drivers;
pub mod framework;
pub mod io;
pub mod lab;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod st;
pub mod threshold;
pub mod verify;
