//! Cut locus, Schubert varieties and conjugate locus of the base plane `O`.

mod conjugate;
mod cut;
mod schubert;

pub use conjugate::{
    cartan_to_tangent, cartan_to_tangent_with, classify_conjugate, classify_conjugate_tangent, conjugate_test_jacobian,
    cut_time, probe_along, tangent_conjugate_params, CartanDirection, ConjugateClass, ConjugateFamily, ConjugateParam,
    JacobianBand, JacobianProbe, LocusVerdict, CONJUGATE_TOL, DEGENERATE_TOL, REGULAR_FLOOR,
};
pub use cut::{cayley_cut_check, cut_locus_report, cut_locus_test, CutReport, CAYLEY_TOL};
pub use schubert::{
    flag_space, intersection_dim, is_generic, jumps, schubert_cell_plane, schubert_generic_sample,
    schubert_generic_sample_with, schubert_membership, v_pl_symbol, CellPoint, SchubertSymbol, INTERSECTION_TOL,
};
