//! Littlewood-Richardson coefficients, domino tableaux, Horn-type eigenvalue
//! and singular value inequalities, and numerical checks of them.

pub mod conjectures;
pub mod domino;
pub mod horn;
pub mod ineq;
pub mod lr;
pub mod partitions;
pub mod spectra;
