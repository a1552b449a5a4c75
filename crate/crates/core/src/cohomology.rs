//! Generalized fractions `⌈(X + Y w) / t^n⌉` in `H^1_M(C_M)`.
//!
//! `H^1_M(C_M)` is the cokernel of `C_M → (C_M)_t`, so `⌈f / t^n⌉` is the class
//! of `f / t^n`. It vanishes exactly when `f ∈ t^n C_M`, which for a normal form
//! `X + Y w` means `X, Y ∈ t^n A`. A class is therefore stored as its numerator
//! pair at level `n`, reduced to the smallest possible `n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::instance::AkizukiInstance;
use crate::normal_form::NormalForm;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Class<F: CoeffField> {
    numerator: NormalForm<F>,
}

impl<F: CoeffField> H1Class<F> {
    /// The zero class, stored as `⌈0 / t⌉`.
    pub fn zero(field: &F) -> Self {
        Self { numerator: NormalForm::zero(field, 1) }
    }

    /// `⌈f / t^n⌉`, truncating `f` to level `n` and stripping common powers of `t`.
    pub fn new(f: &NormalForm<F>, n: usize) -> Result<Self> {
        if f.level() < n {
            return Err(Error::PrecisionExhausted(format!(
                "numerator known modulo t^{}, fraction over t^{n} requested",
                f.level()
            )));
        }
        if n == 0 {
            return Ok(Self::zero(f.field()));
        }
        Ok(Self::canonical(f.truncate(n)?))
    }

    /// `⌈(X + Y w) / t^n⌉` with `n` the common precision of `X` and `Y`.
    pub fn from_parts(x: TruncatedSeries<F>, y: TruncatedSeries<F>) -> Result<Self> {
        Ok(Self::canonical(NormalForm::new(x, y)?))
    }

    fn canonical(mut num: NormalForm<F>) -> Self {
        if num.is_zero() {
            return Self::zero(num.field());
        }
        while num.level() > 1 && num.x().divisible_by_t_pow(1) && num.y().divisible_by_t_pow(1) {
            num =
                NormalForm::new(num.x().shift(-1).expect("divisible"), num.y().shift(-1).expect("divisible"))
                    .expect("same precision");
        }
        Self { numerator: num }
    }

    pub fn numerator(&self) -> &NormalForm<F> {
        &self.numerator
    }

    /// The denominator exponent `n` of `⌈(X + Y w) / t^n⌉`.
    pub fn exponent(&self) -> usize {
        self.numerator.level()
    }

    pub fn field(&self) -> &F {
        self.numerator.field()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The same class written over `t^n`, `n >= exponent`.
    pub fn numerator_at(&self, n: usize) -> Result<NormalForm<F>> {
        let k = n.checked_sub(self.exponent()).ok_or_else(|| {
            Error::PrecisionExhausted(format!(
                "class over t^{} cannot be written over t^{n}",
                self.exponent()
            ))
        })?;
        NormalForm::new(self.numerator.x().raise(k), self.numerator.y().raise(k))
    }

    /// Equality of classes, comparing numerators over the larger denominator.
    /// Works on arbitrary (not necessarily reduced) representatives.
    pub fn equals(&self, other: &Self) -> bool {
        let n = self.exponent().max(other.exponent());
        let a = self.numerator_at(n).expect("raising");
        let b = other.numerator_at(n).expect("raising");
        a == b
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.exponent().max(other.exponent());
        let a = self.numerator_at(n).expect("raising");
        let b = other.numerator_at(n).expect("raising");
        Self::canonical(a.add(&b).expect("common level"))
    }

    pub fn neg(&self) -> Self {
        Self { numerator: self.numerator.neg() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplication by `a ∈ A`.
    pub fn scale(&self, a: &TruncatedSeries<F>) -> Result<Self> {
        let a = a.truncate(self.exponent())?;
        Ok(Self::canonical(self.numerator.scale(&a)?))
    }
}

impl<F: CoeffField> fmt::Display for H1Class<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf({};{};{})", self.numerator.x(), self.numerator.y(), self.exponent())
    }
}

impl<F: CoeffField> AkizukiInstance<F> {
    /// The `C_M`-action `f · ⌈g / t^n⌉ = ⌈f g / t^n⌉`.
    pub fn h1_act(&self, f: &NormalForm<F>, omega: &H1Class<F>) -> Result<H1Class<F>> {
        let n = omega.exponent();
        if f.level() < n {
            return Err(Error::PrecisionExhausted(format!(
                "multiplier known modulo t^{}, class needs t^{n}",
                f.level()
            )));
        }
        let prod = self.nf_mul(&f.truncate(n)?, omega.numerator())?;
        H1Class::new(&prod, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn q(terms: &[(usize, i64)], n: usize) -> TruncatedSeries<Rationals> {
        TruncatedSeries::from_terms(&Rationals, terms.iter().map(|&(e, c)| (e, Rationals.from_i64(c))), n)
    }

    fn gf(x: &[(usize, i64)], y: &[(usize, i64)], n: usize) -> H1Class<Rationals> {
        H1Class::from_parts(q(x, n), q(y, n)).unwrap()
    }

    fn nf(x: &[(usize, i64)], y: &[(usize, i64)], m: usize) -> NormalForm<Rationals> {
        NormalForm::new(q(x, m), q(y, m)).unwrap()
    }

    #[test]
    fn make_examples() {
        let one_over_t = H1Class::new(&NormalForm::one(&Rationals, 1), 1).unwrap();
        assert_eq!(one_over_t.exponent(), 1);
        assert!(!one_over_t.is_zero());

        let c = H1Class::new(&nf(&[(1, 1)], &[(1, 1)], 2), 2).unwrap();
        assert_eq!(c, gf(&[(0, 1)], &[(0, 1)], 1));

        let w_over_t = H1Class::new(&NormalForm::w(&Rationals, 1), 1).unwrap();
        assert!(!w_over_t.is_zero());

        assert!(H1Class::new(&NormalForm::one(&Rationals, 2), 3).is_err());
        assert_eq!(H1Class::new(&NormalForm::one(&Rationals, 2), 0).unwrap(), H1Class::zero(&Rationals));
    }

    #[test]
    fn zero_examples() {
        assert!(gf(&[(1, 1)], &[], 1).is_zero());
        assert!(!gf(&[], &[(0, 1)], 1).is_zero());
        assert!(gf(&[(3, 1)], &[(3, 1)], 3).is_zero());
        assert_eq!(gf(&[(3, 1)], &[], 3), H1Class::zero(&Rationals));
    }

    #[test]
    fn eq_examples() {
        assert!(gf(&[(0, 1)], &[], 1).equals(&gf(&[(1, 1)], &[], 2)));
        assert!(!gf(&[], &[(0, 1)], 1).equals(&gf(&[], &[], 1)));
        assert!(gf(&[(0, 1), (1, 1)], &[], 2).equals(&gf(&[(0, 1), (1, 1), (2, 1)], &[], 2)));
    }

    #[test]
    fn act_examples() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        let t = NormalForm::from_a(TruncatedSeries::t(&Rationals, 6));
        assert!(inst.h1_act(&t, &gf(&[(0, 1)], &[], 1)).unwrap().is_zero());

        let w = NormalForm::w(&Rationals, 6);
        assert_eq!(inst.h1_act(&w, &gf(&[(0, 1)], &[], 2)).unwrap(), gf(&[], &[(0, 1)], 2));

        let got = inst.h1_act(&w, &gf(&[], &[(0, 1)], 6)).unwrap();
        assert_eq!(got, gf(&[], &[(0, 2)], 3));
        assert!(!got.is_zero());

        assert!(inst.h1_act(&NormalForm::w(&Rationals, 2), &gf(&[(0, 1)], &[], 3)).is_err());
    }

    #[test]
    fn add_examples() {
        assert!(gf(&[(0, 1)], &[], 1).add(&gf(&[(0, -1)], &[], 1)).is_zero());
        assert_eq!(gf(&[(0, 1)], &[], 1).add(&gf(&[(0, 1)], &[], 2)), gf(&[(0, 1), (1, 1)], &[], 2));
        let omega = gf(&[(0, 2)], &[(1, 1)], 4);
        assert_eq!(omega.add(&H1Class::zero(&Rationals)), omega);
    }

    #[test]
    fn display() {
        assert_eq!(gf(&[(1, 1)], &[(0, 1)], 3).to_string(), "gf(t;1;3)");
    }
}
