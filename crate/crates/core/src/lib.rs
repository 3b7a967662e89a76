//! Exact lattice, cone and fan algorithms for the Nash problem on toric
//! pairs and affine stable toric varieties.
//!
//! Everything is generic over an exact integer [`Scalar`]; the aliases below
//! fix it to `BigInt`, with `i64` variants for small inputs.

pub mod cone;
pub mod enumerate;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod nash;
pub mod oracle;
pub mod stv;

pub use cone::{fundamental_parallelepiped, Face, HRep, ParallelepipedPoint};
pub use enumerate::{minimal_level_bound, EnumerationOptions, LevelEnumerator, SearchOutcome};
pub use error::{Error, Result};
pub use fan::{
    avoidance_resolution, covers, is_y_resolution, make_y_resolution, make_y_resolution_seeded,
    minimal_regular_subdivision_2d, resolve_smooth, simplicialize, star_subdivide, validate_fan,
    Validation,
};
pub use lattice::{hermite_normal_form, smith_normal_form, sublattice_index, Scalar};
pub use nash::{
    certify_essential, certify_essential_from, compute_w, contact_components, faces_to_ideal, is_minimal_in_contact_set,
    monomial_valuation, orbit_closure_leq, singular_faces, y_face_closure, CertificationFailure,
    EssentialCertificate, MinimalityWitness, NashPairReport, OrbitComparison, SampleResolution,
    WitnessReason,
};
pub use stv::{component_pairs, is_equidimensional, stv_nash_report, validate_complex, ComponentPair, ComponentReport};

pub use num_bigint::BigInt;

pub type LatticeVector = lattice::LatticeVector<BigInt>;
pub type IntMatrix = lattice::IntMatrix<BigInt>;
pub type Cone = cone::Cone<BigInt>;
pub type Fan = fan::Fan<BigInt>;
pub type Subdivision = fan::Subdivision<BigInt>;
pub type YFaceSet = nash::YFaceSet<BigInt>;
pub type MonomialIdeal = nash::MonomialIdeal<BigInt>;
pub type STVComplex = stv::STVComplex<BigInt>;
pub type Gluing = stv::Gluing<BigInt>;
pub type STVNashReport = stv::STVNashReport<BigInt>;

pub type LatticeVector64 = lattice::LatticeVector<i64>;
pub type IntMatrix64 = lattice::IntMatrix<i64>;
pub type Cone64 = cone::Cone<i64>;
pub type Fan64 = fan::Fan<i64>;
pub type YFaceSet64 = nash::YFaceSet<i64>;
