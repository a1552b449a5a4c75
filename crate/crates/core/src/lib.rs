//! Exact computations in Akizuki's one-dimensional local domain `C_M` at finite
//! `t`-adic precision.
//!
//! The ring is `C = A[t(z_0 - a_0), {(z_i - a_i)^2}]` localized at
//! `M = (t, t(z_0 - a_0))`, where `A` is a discrete valuation ring with
//! uniformizer `t` and `z = a_0 + a_1 t^{n_1} + a_2 t^{n_2} + ...` in the
//! completion `Â`. Here `A` is modelled by power series over an exact field,
//! truncated at a working precision `N`.
//!
//! * [`series`]: truncated series (`Â / t^N`) and principal parts (`K/A`).
//! * [`instance`]: the exponent and unit data of a concrete ring.
//! * [`normal_form`], [`expr`]: elements `X + Y w` of `C_M / t^m C_M`.
//! * [`cohomology`]: generalized fractions in `H^1_M(C_M)`.
//! * [`duality`]: residue maps, continuous homomorphisms and `Φ_{σ,ρ}`.
//! * [`completion`]: the ring `Â[X] / (X + t(z - a_0))^2`.

pub mod cohomology;
pub mod completion;
pub mod duality;
pub mod error;
pub mod expr;
pub mod field;
pub mod instance;
pub mod normal_form;
pub mod parse;
pub mod random;
pub mod selftest;
pub mod series;

pub use cohomology::H1Class;
pub use completion::CompletionElement;
pub use duality::{ContinuousHom, ResiduePair};
pub use error::{Error, Result};
pub use expr::Expr;
pub use field::{CoeffField, PrimeField, Rationals};
pub use instance::{AkizukiInstance, ExponentRule, UnitRule};
pub use normal_form::NormalForm;
pub use series::{LaurentTail, TruncatedSeries};
