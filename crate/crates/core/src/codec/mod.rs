//! The compressor and the decompression algorithm: parameter encoding,
//! exact plan construction, precision management, approximate unitary
//! application, and the complexity certificates measured from round trips.
//!
//! The decompression algorithm is a fixed numbered recipe, referenced by its
//! step numbers throughout this module:
//!
//!  1. solve the block schedule for l (power of two);
//!  2. n = floor(m / l);
//!  3. R = l * r;
//!  4. enumerate the codebook Omega at (l, n, R);
//!  5. set up the symmetric operator basis {A_k};
//!  6. scan the spanning candidates A_k|omega_i> in (k, i) order, keeping an
//!     exactly independent subset;
//!  7. tensor with the computational basis of the padding qubits;
//!  8. complete to a full basis against the computational basis, discarding
//!     the earliest dependent vectors;
//!  9. exact Gram-Schmidt; the first D~ columns span the plan subspace;
//! 10. compute the digit count N(k, m) and round the basis entrywise to N
//!     binary digits;
//! 11. pad the compressed state with |0> qubits on the high-order side;
//! 12. apply a certified nearly unitary V close to the rounded basis;
//! 13. normalize;
//! 14. emit the output state.
//!
//! Steps 1-9 run in exact rational arithmetic (the plan); steps 10-14 run in
//! fixed-point integers at an explicit scale (the precision stage).

pub mod certificates;
pub mod plan;
pub mod precision;
pub mod prefix;
pub mod program;
pub mod roundtrip;

pub use certificates::{complexity_certificates, CertReport};
pub use plan::{build_plan, DecompressionPlan, ExactPlan};
pub use precision::compute_n_digits;
pub use prefix::{decode_k, decode_rational, encode_k, encode_rational, BitString};
pub use program::{assemble_program, CodecProgram};
pub use roundtrip::{compress, decompress, ExactPureState, Payload, RoundTripReport};
