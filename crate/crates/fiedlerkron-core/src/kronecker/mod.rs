//! Extended block Kronecker structure: wing pencils, antidiagonal sums, permuted views and
//! the permutations that reveal them for Fiedler-like pencils.

pub mod antidiag;
pub mod derive;
pub mod ebk;
pub mod wing;

pub use antidiag::{antidiagonal_sum, body_polynomial, check_as, check_cas};
pub use wing::{annulus_points, highest_row_degree_coefficient, is_minimal_basis_numeric, is_minimal_basis_wing, is_wing, l_pencil, lambda_row, wing_factor, wing_from_factor};
pub use ebk::{enumerate_ebk, permute_to_ebk, recognize_all, recognize_ebk, view_from_sets, EbkView, ReversedEbkView};
pub use derive::{
    fiedler_ebk, gfp_ebk, gfpr_ebk, gfpr_partition, gfpr_q_side_ebk, gfpr_z_side_ebk, nonproper_normalize, Normalization,
};
