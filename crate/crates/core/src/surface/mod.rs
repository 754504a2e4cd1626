//! Double covers, rational maps between them, differential forms and the
//! Kummer-surface calculus.

pub mod conic;
pub mod cover;
pub mod elliptic;
pub mod fibration;
pub mod forms;
pub mod kummer;
pub mod manifest;
pub mod map;
pub mod sample;

pub use conic::{tangency_multiplicity, Conic, Intersection, Line};
pub use cover::{DoubleCover, SurfaceFunction};
pub use elliptic::{weierstrass_add, EllipticCurveLong, Point};
pub use fibration::{verify_fibration_form, FibrationData};
pub use forms::{jacobian_determinant, pullback_one_form, pullback_two_form, OneForm, TopForm, TwoForm};
pub use kummer::{
    kummer_from_genus2, kummer_sum_map, split_jacobian_constant, sum_map_form_factor, symmetrize_product, SplitJacobian,
};
pub use manifest::{parse_manifest, Manifest};
pub use map::{compose, RationalMap};
pub use sample::{sample_check_mod_p, SampleOutcome};
