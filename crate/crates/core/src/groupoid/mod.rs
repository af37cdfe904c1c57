//! Linear groupoids (unit fibers of VB-groupoids over a group), their
//! Pradines duals, modules, and the metrized groupoid `q ⇉ g`.

mod linear;
mod metrized;
mod module;

pub use linear::{dualize, pairing_failure, DualGroupoid, LinearGroupoid};
pub use metrized::{from_manin_pair, gamma_g, moment_to_action, MetrizedLinearGroupoid, MetrizedModule};
pub use module::{dual_module, module_pairing_failure, LinearModule};
