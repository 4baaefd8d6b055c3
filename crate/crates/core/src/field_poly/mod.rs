//! Exact arithmetic over Z_d and GF(p^r), reduced multivariate polynomials,
//! interpolation and the degree classes closed under affine side-processing.

mod closure;
mod element;
pub mod linalg;
mod modulus;
mod poly;
mod ring;
mod table;

pub use closure::{closure_generate, span_dimension, CLOSURE_INPUT_LIMIT};
pub use element::FieldElement;
pub use modulus::{
    factorize, gcd, is_prime, make_field, mod_inverse, mod_pow, smallest_irreducible, Modulus,
    ModulusKind,
};
pub use poly::{
    combined_degree, delta_poly, enumerate_subspace, in_subspace, interpolate, monomials_up_to,
    MultiPoly,
};
pub use ring::{is_polynomial_over_ring, min_degree_representation, RING_INPUT_LIMIT};
pub use table::{all_inputs, index_of, input_at, input_count, FunctionTable};
