//! Local Frobenius solutions at the singular points, decomposition of global
//! solutions in those local bases, connection coefficients between the local
//! regular solution at `z_j` and the pair `(F1, F2)` at the origin, and the
//! two-point boundary problem in the accessory parameter.

mod frobenius;
mod gamma;
mod spectrum;

pub use frobenius::{
    decompose_local, frobenius_local, solve_in_basis, ExponentChoice, LocalBasis,
    LocalDecomposition, LocalFrobenius, LocalValue,
};
pub use gamma::{best_local_frame, connect, connection_gamma, ConnectionPair, MATCH_RADIUS};
pub use spectrum::{
    eigenvalue_search, pair_integral, Eigenfunction, Eigenvalue, LambdaWindow, Shooting,
};
