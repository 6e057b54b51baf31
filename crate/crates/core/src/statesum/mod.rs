//! Bracket state sums, resolution operators and the deformation expansion.

mod bracket;
mod checks;
mod chi;
mod expansion;
mod poly;

pub use bracket::{bfk_first_order, bracket, bracket_order, bracket_series, bracket_with, t0_bracket};
pub use checks::{
    axiom_checks, composition_check, divergence_check, grading_check, injectivity_witness, mirror_symmetry_check,
    skein_relation_residual, vacuum_check, weak_product_check, AxiomInputs,
};
pub use chi::{chi_apply, chi_apply_sum, phi_star, phi_star_with, phi_table, FormalDiagramSum};
pub use expansion::{expansion, expansion_series, ExpansionTable};
pub use poly::{cached_table, derive_p, fit_p, install_table, DeformationPolyTable};
