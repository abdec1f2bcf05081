//! Matrix-level computations in `gl_n` and `GL_n`: commutants and
//! bicommutants of nilpotents, centers of matrix-group families at a
//! generic point, the polynomial Springer family `I + Σ a_i X^i` and its
//! tangent maps, flag counts, and tangent weights on projective space.

mod commutant;
mod family;
mod flags;
mod jordan;
mod ptangent;
mod springer;

pub use commutant::{
    bicommutant, commutant, commuting_space, matrix_span, minimal_polynomial_degree,
    polynomial_span, subspace_matrices, commutant_report, CommutantReport,
};
pub use family::{
    center_report, lie_algebra, lie_center_generic, nonsmooth_center_report, poly_determinant,
    reduced_center_dim, CenterReport, GroupFamily,
};
pub use flags::{flag_count, flags_preserved, FlagCount, FLAG_BUDGET};
pub use jordan::{is_regular_nilpotent, jordan_nilpotent, jordan_type_of_nilpotent, JordanType};
pub use ptangent::{ptangent_weights, ptangent_weights_chart, Character};
pub use springer::{
    curve_tangent, dgamma0, equivariance_check, equivariance_check_with, product_dgamma0,
    random_invertible, random_nilpotent, regular_locus_check, reversion, springer_apply,
    springer_invert, unipotent_in_commutant, ProductTangent, SpringerCoeffs,
};
