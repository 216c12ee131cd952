//! Central invariants, Cayley-Hamilton identities for the generator matrices
//! and the coefficient calculus relating the shifted and unshifted forms.

mod ch;
pub mod coeffs;
pub mod sigma;
pub mod tau;

use crate::nc::NCPoly;
use crate::tensor::TensorOp;

pub use ch::{
    assemble_ch, qh_coefficients, reduce_matrix, ugl_coefficients, verify_ch_qh, verify_ch_re,
    verify_ch_ugl, verify_identity, CHReport, Convention, ResidualEntry,
};
pub use coeffs::{
    coefficient_table, compare_phi, omega, phi_from_xi, phi_product, rho, xi, xi_closed,
    xi_from_phi, CoeffRow, PhiVerdict, ShiftReading,
};
pub use sigma::{
    shift_generators, sigma, sigma_hbar, sigma_shift_direct, sigma_shift_transform, sigmas,
};
pub use tau::{nc_determinant, tau, tau_hbar, taus};

/// Square matrix (or operator on several copies of the space) with entries in
/// the free algebra.
pub type MatrixPoly = TensorOp<NCPoly>;
