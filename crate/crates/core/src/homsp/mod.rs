//! Classification data of Dirac actions on homogeneous spaces `H/K`:
//! validation, the map `F_n`, the normal form of the module, reduction of
//! the fibers, Robinson's reconstruction from a coisotropic subalgebra, and
//! the search for such subalgebras.

mod data;
mod normal;
mod robinson;
mod search;

pub use data::{
    build_f_n, check_exact_case, check_transitive, comparison_map, moment_into_q, reduce_fibers, trivial_datum,
    validate_classification, ClassificationData, Comparison, FiberReduction, KSample,
};
pub use normal::NormalForm;
pub use robinson::{check_robinson, robinson_build, robinson_datum_of, RobinsonDatum};
pub use search::{
    is_beta_lagrangian, la_data_of, la_moment, search_coisotropic, validate_la, LAClassData, SearchConstraints,
};
