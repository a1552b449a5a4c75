//! Seeded random generators for the property suites.
//!
//! Coefficients are small integers so rational arithmetic stays cheap; over
//! `F_p` they are reduced like any other constant.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::H1Class;
use crate::completion::CompletionElement;
use crate::duality::{ContinuousHom, ResiduePair};
use crate::expr::Expr;
use crate::field::CoeffField;
use crate::instance::AkizukiInstance;
use crate::normal_form::NormalForm;
use crate::series::TruncatedSeries;

/// Independent stream for case `case` of property `property` under `seed`, so
/// a counterexample does not depend on which other cases ran.
pub fn case_rng(seed: u64, property: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(property.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ case);
    rng
}

pub fn elem<F: CoeffField, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    field.from_i64(rng.gen_range(-9..=9))
}

pub fn nonzero_elem<F: CoeffField, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    loop {
        let c = elem(field, rng);
        if !field.is_zero(&c) {
            return c;
        }
    }
}

/// Roughly half the coefficients nonzero.
pub fn series<F: CoeffField, R: Rng>(field: &F, precision: usize, rng: &mut R) -> TruncatedSeries<F> {
    let coeffs =
        (0..precision).map(|_| if rng.gen_bool(0.5) { elem(field, rng) } else { field.zero() }).collect();
    TruncatedSeries::from_coeffs(field, coeffs, precision)
}

/// A series with nonzero constant term.
pub fn unit_series<F: CoeffField, R: Rng>(field: &F, precision: usize, rng: &mut R) -> TruncatedSeries<F> {
    let mut coeffs = series(field, precision, rng).coeffs().to_vec();
    coeffs[0] = nonzero_elem(field, rng);
    TruncatedSeries::from_coeffs(field, coeffs, precision)
}

pub fn normal_form<F: CoeffField, R: Rng>(field: &F, level: usize, rng: &mut R) -> NormalForm<F> {
    NormalForm::new(series(field, level, rng), series(field, level, rng)).expect("same level")
}

pub fn unit_normal_form<F: CoeffField, R: Rng>(field: &F, level: usize, rng: &mut R) -> NormalForm<F> {
    NormalForm::new(unit_series(field, level, rng), series(field, level, rng)).expect("same level")
}

/// A class `⌈(X + Y w) / t^n⌉` with `1 <= n <= max_level`.
pub fn h1_class<F: CoeffField, R: Rng>(field: &F, max_level: usize, rng: &mut R) -> H1Class<F> {
    let n = rng.gen_range(1..=max_level);
    H1Class::from_parts(series(field, n, rng), series(field, n, rng)).expect("same level")
}

pub fn hom<F: CoeffField, R: Rng>(field: &F, max_level: usize, rng: &mut R) -> ContinuousHom<F> {
    let n = rng.gen_range(1..=max_level);
    ContinuousHom::new(n, &series(field, n, rng), &series(field, n, rng)).expect("level n")
}

/// `(σ, ρ)` at precision `N`, with `ρ` a unit when `invertible`.
pub fn pair<F: CoeffField, R: Rng>(
    field: &F,
    precision: usize,
    invertible: bool,
    rng: &mut R,
) -> ResiduePair<F> {
    let rho = if invertible { unit_series(field, precision, rng) } else { series(field, precision, rng) };
    ResiduePair::new(series(field, precision, rng), rho).expect("same precision")
}

pub fn completion<F: CoeffField, R: Rng>(field: &F, precision: usize, rng: &mut R) -> CompletionElement<F> {
    CompletionElement::new(series(field, precision, rng), series(field, precision, rng))
        .expect("same precision")
}

/// Generator indices `i` whose normal form is available at level `m`.
pub fn usable_generators<F: CoeffField>(inst: &AkizukiInstance<F>, m: usize) -> Vec<usize> {
    (0..inst.max_index()).filter(|&i| inst.generator_nf(i, m).is_ok()).collect()
}

/// A random expression tree of depth at most `depth`. Division only ever
/// divides by `±1 + t·e`, which is a unit of `C_M` for any `e`.
pub fn expression<R: Rng>(gens: &[usize], depth: usize, rng: &mut R) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..4) {
            0 => Expr::T,
            1 => Expr::W,
            2 if !gens.is_empty() => Expr::Gen(gens[rng.gen_range(0..gens.len())]),
            _ => Expr::int(rng.gen_range(-5..=5)),
        };
    }
    let a = expression(gens, depth - 1, rng);
    match rng.gen_range(0..6) {
        0 => Expr::add(a, expression(gens, depth - 1, rng)),
        1 => Expr::sub(a, expression(gens, depth - 1, rng)),
        2 | 3 => Expr::mul(a, expression(gens, depth - 1, rng)),
        4 if depth >= 3 => {
            // Div(a, Add(c, Mul(T, e))) spends three levels on the denominator
            let inner = expression(gens, depth - 3, rng);
            let c = if rng.gen_bool(0.5) { 1 } else { -1 };
            Expr::div(a, Expr::add(Expr::int(c), Expr::mul(Expr::T, inner)))
        }
        4 => Expr::mul(a, expression(gens, depth - 1, rng)),
        _ => Expr::Neg(Box::new(a)),
    }
}
