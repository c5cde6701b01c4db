//! Period cocycles of (higher-order) cusp forms: the representation `p_n`,
//! q-series evaluation, path integrals of `ω(f)` and the identities around them.

pub mod fixture;
pub mod form;
pub mod mat2;
pub mod poly;
pub mod quad;
pub mod suite;

pub use fixture::{base_points, GroupFixture, GroupRingElement, Parabolic};
pub use form::{level11_form, CuspFormSpec, EichlerIntegral, Form, SecondOrderForm};
pub use mat2::Mat2;
pub use poly::{delta_vector, pn_matrix, pn_matrix_exact};
pub use quad::{Integrator, QuadConfig};
pub use suite::{phi, verify_suite, CocycleTable, EsCheck, EsConfig, EsReport};
