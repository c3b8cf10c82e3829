//! Landau-Ginzburg side: rational superpotentials for types A and D, residue sums for the
//! dual Frobenius structure, the pole-by-pole lemma and spectral curves.

pub mod dual;
pub mod lemma;
pub mod local;
pub mod mirror;
pub mod spectral;
pub mod superpotential;

pub use dual::{
    critical_residue_sum, dual_core, dual_core_assembled, lemma_core, lemma_integrand, lg_dual_core_tensor,
    lg_dual_eta, lg_dual_eta_matrix, lg_dual_tensor, lg_dual_triple, per_pole_contribution, per_pole_contributions,
    per_pole_contributions_assembled, pole_orders, residue_budget, upsilon, ResidueBudget,
};
pub use lemma::{lemma_closed_form, lemma_p, lemma_q, lemma_tags};
pub use local::{LocalExpansions, LocalSeries};
pub use mirror::{sample_lg_points, verify_d_eta, verify_lemma, verify_mirror, CheckReport, Mismatch};
pub use spectral::{default_spectral_weight, e6_lg_eta, e6_pairing_matrix, spectral_poly, SpectralData};
pub use superpotential::{atype_kappa_exponents, kappa_from_q, PoleTag, Superpotential};
