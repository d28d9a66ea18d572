//! Exact computations in the category of graded `k[x]`-modules glued with
//! pairs of vector spaces: Hom and Ext¹ spaces, Serre duality, Krull–Schmidt
//! decomposition, almost split sequences and Auslander–Reiten quivers.

pub mod ar;
pub mod catalog;
pub mod decomp;
pub mod error;
mod graded;
pub mod hom_ext;
pub mod lattice;
pub mod matrix;
pub mod objects;
pub mod scalar;
pub mod singularity;

pub use error::{Error, Result};
pub use lattice::{Generator, GradedLattice, GradedVector};
pub use matrix::{Mat, Subspace};
pub use objects::{
    from_presentation, injective_resolution, CObject, Cyclic, Element, InjectiveProfile, InjectiveResolution,
    Presentation, TorsionPart,
};
pub use scalar::{FieldSpec, Scalar};
pub use hom_ext::{
    eta, euler_form, ext_space, hom_kx_space, hom_space, serre_check, serre_gram, serre_gram_flipped, twist_class,
    twist_morphism, yoneda_compose, ExtClass, ExtSpace, HomSpace, Morphism, SerreReport, Yoneda,
};
pub use decomp::{
    decompose, decompose_with_seed, end_ring, filtration, format_sum, identify, is_isomorphism, sum_of_labels, Decomposition,
    EndRing, FiltrationStep, IndecLabel,
};
pub use ar::{
    almost_split, dot_export, extension_object, json_export, no_proj_no_inj_witness, quiver_window,
    quiver_window_over, AlmostSplit, QuiverWindow, ShortExactSeq,
};
pub use singularity::{is_rm_stable, singularity_index, y_linearity_bound, Poly, RmElement};
pub use catalog::CatalogSpec;
