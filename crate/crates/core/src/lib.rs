//! Morphic words, return words, and the WELLDOC property.
//!
//! - [`word`]: letters, words, Parikh vectors, morphisms and lazily expanded
//!   fixed points.
//! - [`zlinalg`]: exact determinants, ranks modulo primes, and the test for
//!   generating `Z^n`.
//! - [`returns`]: return words to a factor, and the S-tables that bound them.
//! - [`welldoc`]: recurrence, the WELLDOC decision, and the empirical
//!   verifier.
//! - [`prng`]: linear congruential generators combined along a word.
//! - [`format`]: text and JSON forms of morphisms.

pub mod error;
pub mod format;
pub mod prng;
pub mod returns;
pub mod welldoc;
pub mod word;
pub mod zlinalg;

pub use error::{Error, Result};
pub use prng::{lcg_next, tuple_coverage, CombinedStream, Coverage, Lcg, LcgParams, ModularStream};
pub use returns::{
    returns_by_scan, returns_complete, returns_via_images, s_table_fixpoint, Completeness, ReturnCertificate,
    ReturnSet, STable,
};
pub use welldoc::{
    decide_welldoc, empirical_welldoc, empirical_x, is_recurrent, EmpiricalReport, EmpiricalVerdict, EmpiricalX,
    Report, Verdict, WelldocVerdict,
};
pub use word::{parikh, Alphabet, Letter, LetterGraph, Morphism, ParikhVector, PrefixStream, Word};
pub use zlinalg::{
    det, generates_mod_p, generates_z, inverse_mod_m, prime_factors, rank_mod_p, GenerationCertificate, IntMatrix,
    IntVectorSet,
};
