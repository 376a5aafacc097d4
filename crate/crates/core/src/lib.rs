//! Scheduling chains of unit-time multiprocessor tasks on `M` identical
//! processors.
//!
//! Each application is a chain of phases; phase `j` of chain `i` needs
//! `p_ij` processors for one time slot and may start only after phase `j - 1`
//! has finished. Tasks are either non-splitable (all processors in one slot)
//! or splitable into integer pieces over several slots.
//!
//! The crate provides
//!  * instance types, validation, a seeded generator and a file format ([`workload`]),
//!  * schedule feasibility checks, waste metrics, the makespan lower bound and
//!    task criticality ([`schedule`]),
//!  * four list-scheduling heuristics, LCMPF, LCF, MCF and LCMCF ([`algorithms`]),
//!  * the knapsack selectors behind MCF ([`knapsack`]),
//!  * an exact memoised search for the optimal makespan ([`oracle`]),
//!  * seeded comparison sweeps with CSV output ([`experiments`]).
//!
//! ```
//! use chainsched::{algorithms::Algorithm, schedule::{lower_bound, metrics}, workload::TaskSystem};
//!
//! let system = TaskSystem::from_requirements(
//!     16,
//!     &[&[8, 8, 8, 8], &[4, 4, 4], &[6, 6, 6, 6, 6], &[10, 10, 10, 10]],
//!     true,
//! )
//! .unwrap();
//! let schedule = Algorithm::Lcmpf.run(&system).unwrap();
//! let m = metrics(&system, &schedule).unwrap();
//! assert_eq!(m.makespan, lower_bound(&system));
//! ```

pub mod algorithms;
pub mod error;
pub mod experiments;
pub mod knapsack;
pub mod oracle;
pub mod schedule;
pub mod workload;

pub use error::{Error, Result};
