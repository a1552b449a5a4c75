//! Residue maps, continuous homomorphisms and the local duality isomorphism.
//!
//! For `σ, ρ ∈ Â` the residue map `res_{σ,ρ} : H^1_M(C_M) → K/A` is the
//! `A`-linear map `⌈(X + Y w) / t^n⌉ ↦ ⌈(X σ + Y ρ) / t^n⌉`, and
//! `Φ_{σ,ρ}(ω)(f) = res_{σ,ρ}(f ω)` sends a class to a continuous homomorphism
//! `C_M → K/A`. Such a homomorphism is fixed by a level `n` with
//! `t^n C_M` in its kernel together with its values at `1` and `w`.
//!
//! When `ρ` is a unit `Φ_{σ,ρ}` is an isomorphism with the explicit inverse in
//! [`AkizukiInstance::phi_inverse`].

use std::fmt;

use crate::cohomology::H1Class;
use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::instance::AkizukiInstance;
use crate::normal_form::NormalForm;
use crate::series::{LaurentTail, TruncatedSeries};

/// The parameters `(σ, ρ)` of a residue map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePair<F: CoeffField> {
    sigma: TruncatedSeries<F>,
    rho: TruncatedSeries<F>,
}

impl<F: CoeffField> ResiduePair<F> {
    pub fn new(sigma: TruncatedSeries<F>, rho: TruncatedSeries<F>) -> Result<Self> {
        if sigma.precision() != rho.precision() {
            return Err(Error::PrecisionMismatch { left: sigma.precision(), right: rho.precision() });
        }
        Ok(Self { sigma, rho })
    }

    pub fn sigma(&self) -> &TruncatedSeries<F> {
        &self.sigma
    }

    pub fn rho(&self) -> &TruncatedSeries<F> {
        &self.rho
    }

    pub fn precision(&self) -> usize {
        self.sigma.precision()
    }

    /// Whether `Φ_{σ,ρ}` is covered by the duality theorem (`ρ` a unit).
    pub fn is_invertible(&self) -> bool {
        self.rho.is_unit()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(self.sigma.checked_add(&other.sigma)?, self.rho.checked_add(&other.rho)?)
    }

    fn truncated(&self, n: usize) -> Result<(TruncatedSeries<F>, TruncatedSeries<F>)> {
        if n > self.precision() {
            return Err(Error::PrecisionExhausted(format!(
                "residue pair known modulo t^{}, level {n} requested",
                self.precision()
            )));
        }
        Ok((self.sigma.truncate(n)?, self.rho.truncate(n)?))
    }
}

impl<F: CoeffField> fmt::Display for ResiduePair<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pair({};{})", self.sigma, self.rho)
    }
}

/// `φ ∈ Hom^c_A(C_M, K/A)` with `φ(t^n C_M) = 0`, `φ(1) = ⌈α / t^n⌉`,
/// `φ(w) = ⌈β / t^n⌉`, stored at the least such `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousHom<F: CoeffField> {
    alpha: TruncatedSeries<F>,
    beta: TruncatedSeries<F>,
}

impl<F: CoeffField> ContinuousHom<F> {
    pub fn zero(field: &F) -> Self {
        Self { alpha: TruncatedSeries::zero(field, 1), beta: TruncatedSeries::zero(field, 1) }
    }

    /// The homomorphism of level `n` with values `⌈α/t^n⌉`, `⌈β/t^n⌉` at `1`, `w`.
    pub fn new(n: usize, alpha: &TruncatedSeries<F>, beta: &TruncatedSeries<F>) -> Result<Self> {
        if n == 0 {
            return Ok(Self::zero(alpha.field()));
        }
        Ok(Self::canonical(alpha.truncate(n)?, beta.truncate(n)?))
    }

    fn canonical(mut alpha: TruncatedSeries<F>, mut beta: TruncatedSeries<F>) -> Self {
        if alpha.is_zero() && beta.is_zero() {
            return Self::zero(alpha.field());
        }
        while alpha.precision() > 1 && alpha.divisible_by_t_pow(1) && beta.divisible_by_t_pow(1) {
            alpha = alpha.shift(-1).expect("divisible");
            beta = beta.shift(-1).expect("divisible");
        }
        Self { alpha, beta }
    }

    pub fn level(&self) -> usize {
        self.alpha.precision()
    }

    pub fn alpha(&self) -> &TruncatedSeries<F> {
        &self.alpha
    }

    pub fn beta(&self) -> &TruncatedSeries<F> {
        &self.beta
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    /// `(α, β)` written over `t^n` for `n >= level`.
    pub fn values_at(&self, n: usize) -> Result<(TruncatedSeries<F>, TruncatedSeries<F>)> {
        let k = n.checked_sub(self.level()).ok_or_else(|| {
            Error::PrecisionExhausted(format!(
                "homomorphism of level {} cannot be written at level {n}",
                self.level()
            ))
        })?;
        Ok((self.alpha.raise(k), self.beta.raise(k)))
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.level().max(other.level());
        let (a1, b1) = self.values_at(n).expect("raising");
        let (a2, b2) = other.values_at(n).expect("raising");
        Self::canonical(&a1 + &a2, &b1 + &b2)
    }

    /// `φ(f) = ⌈(X α + Y β) / t^n⌉` for `f = X + Y w + t^n Z`.
    pub fn eval(&self, f: &NormalForm<F>) -> Result<LaurentTail<F>> {
        let n = self.level();
        if f.level() < n {
            return Err(Error::PrecisionExhausted(format!(
                "argument known modulo t^{}, homomorphism has level {n}",
                f.level()
            )));
        }
        let f = f.truncate(n)?;
        let num = &(f.x() * &self.alpha) + &(f.y() * &self.beta);
        LaurentTail::from_fraction(&num, n)
    }
}

impl<F: CoeffField> fmt::Display for ContinuousHom<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hom({};{};{})", self.level(), self.alpha, self.beta)
    }
}

impl<F: CoeffField> AkizukiInstance<F> {
    /// `res_{σ,ρ} ⌈(X + Y w) / t^n⌉ = ⌈(X σ + Y ρ) / t^n⌉`.
    pub fn residue(&self, pair: &ResiduePair<F>, omega: &H1Class<F>) -> Result<LaurentTail<F>> {
        self.residue_at(pair, omega, omega.exponent())
    }

    /// The residue computed from the representative of `ω` over `t^n`, `n >= exponent`.
    /// The value does not depend on `n`.
    pub fn residue_at(&self, pair: &ResiduePair<F>, omega: &H1Class<F>, n: usize) -> Result<LaurentTail<F>> {
        let num = omega.numerator_at(n)?;
        let (sigma, rho) = pair.truncated(n)?;
        LaurentTail::from_fraction(&(&(num.x() * &sigma) + &(num.y() * &rho)), n)
    }

    /// `Φ_{σ,ρ}(ω)`: the homomorphism `f ↦ res_{σ,ρ}(f ω)`.
    ///
    /// With `ω = ⌈(X + Y w) / t^n⌉`, its value at `1` is `⌈(Xσ + Yρ)/t^n⌉` and
    /// at `w` (using `w^2 ≡ 2 t s_r w - t^2 s_r^2`) it is
    /// `⌈(X ρ + Y (2 t s_r ρ - t^2 s_r^2 σ)) / t^n⌉`.
    pub fn phi(&self, pair: &ResiduePair<F>, omega: &H1Class<F>) -> Result<ContinuousHom<F>> {
        let n = omega.exponent();
        self.check_level(n)?;
        let (sigma, rho) = pair.truncated(n)?;
        let ts = self.t_partial_sum(self.reduction_index(n), n);
        let two = self.field().from_i64(2);
        let (x, y) = (omega.numerator().x(), omega.numerator().y());
        let alpha = &(x * &sigma) + &(y * &rho);
        let w_image = &(&ts * &rho).scale(&two) - &(&(&ts * &ts) * &sigma);
        let beta = &(x * &rho) + &(y * &w_image);
        ContinuousHom::new(n, &alpha, &beta)
    }

    /// `Φ_{σ,ρ}^{-1}(φ)` for a unit `ρ`, reducing through the minimal admissible `s_r`.
    pub fn phi_inverse(&self, pair: &ResiduePair<F>, hom: &ContinuousHom<F>) -> Result<H1Class<F>> {
        let r = self.reduction_index(hom.level());
        let omega = self.phi_inverse_with_index(pair, hom, r)?;
        if cfg!(debug_assertions) {
            debug_assert_eq!(&self.phi(pair, &omega)?, hom, "Φ(Φ^{{-1}}(φ)) must return φ");
        }
        Ok(omega)
    }

    /// `Φ_{σ,ρ}^{-1}(φ) = ⌈(X + Y w) / t^n⌉` where, with `u = (ρ - t s_r σ)^{-2}`,
    /// `X = (α t s_r (σ t s_r - 2ρ) + β ρ) u` and `Y = (α ρ - β σ) u` modulo `t^n`.
    pub fn phi_inverse_with_index(
        &self,
        pair: &ResiduePair<F>,
        hom: &ContinuousHom<F>,
        r: usize,
    ) -> Result<H1Class<F>> {
        if !pair.is_invertible() {
            return Err(Error::NotInvertible("rho is not a unit; the duality inverse is undefined".into()));
        }
        let n = hom.level();
        self.check_level(n)?;
        self.check_index(r, n)?;
        let (sigma, rho) = pair.truncated(n)?;
        let ts = self.t_partial_sum(r, n);
        let two = self.field().from_i64(2);
        let (alpha, beta) = (hom.alpha(), hom.beta());
        let base = &rho - &(&ts * &sigma);
        let u = (&base * &base).invert()?;
        let x_num = &(&(alpha * &ts) * &(&(&sigma * &ts) - &rho.scale(&two))) + &(beta * &rho);
        let y_num = &(alpha * &rho) - &(beta * &sigma);
        H1Class::from_parts(&x_num * &u, &y_num * &u)
    }

    /// Recovers `(σ mod t^n, ρ mod t^n)` from a `C_M`-linear map
    /// `H^1_M(C_M) → Hom^c_A(C_M, K/A)` by probing it at `⌈1 / t^n⌉`.
    ///
    /// The probe at `⌈1 / t^{n-1}⌉` must agree modulo `t^{n-1}`; a mismatch means
    /// the map is not `C_M`-linear.
    pub fn endo_extract<B>(&self, blackbox: B, n: usize) -> Result<ResiduePair<F>>
    where
        B: Fn(&H1Class<F>) -> Result<ContinuousHom<F>>,
    {
        self.check_level(n)?;
        let (sigma, rho) = self.probe(&blackbox, n)?;
        if n > 1 {
            let (sigma_prev, rho_prev) = self.probe(&blackbox, n - 1)?;
            if sigma.truncate(n - 1)? != sigma_prev || rho.truncate(n - 1)? != rho_prev {
                return Err(Error::InconsistentBlackbox(format!(
                    "probes at levels {} and {n} disagree modulo t^{}",
                    n - 1,
                    n - 1
                )));
            }
        }
        ResiduePair::new(sigma, rho)
    }

    fn probe<B>(&self, blackbox: &B, n: usize) -> Result<(TruncatedSeries<F>, TruncatedSeries<F>)>
    where
        B: Fn(&H1Class<F>) -> Result<ContinuousHom<F>>,
    {
        let probe = H1Class::new(&NormalForm::one(self.field(), n), n)?;
        let hom = blackbox(&probe)?;
        if hom.level() > n {
            return Err(Error::InconsistentBlackbox(format!(
                "image of 1/t^{n} has level {} > {n}",
                hom.level()
            )));
        }
        hom.values_at(n)
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

    fn pair(sigma: &[(usize, i64)], rho: &[(usize, i64)]) -> ResiduePair<Rationals> {
        ResiduePair::new(q(sigma, 31), q(rho, 31)).unwrap()
    }

    fn hom(n: usize, a: &[(usize, i64)], b: &[(usize, i64)]) -> ContinuousHom<Rationals> {
        ContinuousHom::new(n, &q(a, n), &q(b, n)).unwrap()
    }

    fn tail(terms: &[(usize, i64)]) -> LaurentTail<Rationals> {
        LaurentTail::from_terms(&Rationals, terms.iter().map(|&(j, c)| (j, Rationals.from_i64(c))))
    }

    fn inst() -> AkizukiInstance<Rationals> {
        AkizukiInstance::default_rational(31).unwrap()
    }

    #[test]
    fn residue_examples() {
        let inst = inst();
        let omega = gf(&[(0, 2), (1, 1)], &[(0, 5)], 3);
        assert_eq!(inst.residue(&pair(&[(0, 1)], &[]), &omega).unwrap(), tail(&[(3, 2), (2, 1)]));
        assert_eq!(inst.residue(&pair(&[], &[(0, 1)]), &gf(&[], &[(0, 1)], 3)).unwrap(), tail(&[(3, 1)]));
        let got = inst.residue(&pair(&[(0, 1)], &[(0, 1), (1, 1)]), &gf(&[(1, 1)], &[(0, 1)], 2)).unwrap();
        assert_eq!(got, tail(&[(2, 1), (1, 2)]));
    }

    #[test]
    fn hom_eval_examples() {
        let phi = hom(2, &[(0, 1)], &[]);
        let f = NormalForm::new(q(&[(1, 1)], 2), q(&[(0, 3)], 2)).unwrap();
        assert_eq!(phi.eval(&f).unwrap(), tail(&[(1, 1)]));

        let phi = hom(3, &[(0, 2), (2, 1)], &[(1, -1)]);
        let f = NormalForm::new(q(&[(3, 4)], 5), q(&[(3, 1), (4, 1)], 5)).unwrap();
        assert!(phi.eval(&f).unwrap().is_zero());

        let phi = hom(3, &[(0, 1)], &[(1, 1)]);
        assert_eq!(phi.eval(&NormalForm::w(&Rationals, 3)).unwrap(), tail(&[(2, 1)]));
        assert!(phi.eval(&NormalForm::w(&Rationals, 2)).is_err());
    }

    #[test]
    fn phi_examples() {
        let inst = inst();
        let got = inst.phi(&pair(&[], &[(0, 1)]), &gf(&[(0, 1)], &[], 1)).unwrap();
        assert_eq!(got, hom(1, &[], &[(0, 1)]));

        let got = inst.phi(&pair(&[(0, 1)], &[(0, 1)]), &gf(&[], &[(0, 1)], 3)).unwrap();
        assert_eq!(got, hom(3, &[(0, 1)], &[]));

        assert!(inst.phi(&pair(&[(0, 1)], &[(1, 1)]), &H1Class::zero(&Rationals)).unwrap().is_zero());
    }

    #[test]
    fn phi_inverse_examples() {
        let inst = inst();
        let p = pair(&[], &[(0, 1)]);
        let got = inst.phi_inverse(&p, &hom(3, &[(0, 1)], &[(1, 1)])).unwrap();
        assert_eq!(got, gf(&[(1, 1)], &[(0, 1)], 3));
        assert_eq!(inst.phi(&p, &got).unwrap(), hom(3, &[(0, 1)], &[(1, 1)]));

        // β = 0 gives ⌈(-2 α t s_r + α w) / t^n⌉.
        let n = 9;
        let alpha = q(&[(0, 1), (2, 3)], n);
        let got = inst.phi_inverse(&p, &ContinuousHom::new(n, &alpha, &q(&[], n)).unwrap()).unwrap();
        let ts = inst.partial_sum(inst.reduction_index(n)).unwrap().truncate(n).unwrap().shift(1).unwrap();
        let expected_x = -&(&alpha * &ts).scale(&Rationals.from_i64(2));
        assert_eq!(got, H1Class::from_parts(expected_x, alpha.clone()).unwrap());

        assert!(inst.phi_inverse(&p, &ContinuousHom::zero(&Rationals)).unwrap().is_zero());
        assert!(matches!(
            inst.phi_inverse(&pair(&[], &[(1, 1)]), &hom(3, &[(0, 1)], &[])),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn extract_examples() {
        let inst = inst();
        let p = pair(&[(1, 1)], &[(0, 1), (1, 1)]);
        let got = inst.endo_extract(|omega| inst.phi(&p, omega), 5).unwrap();
        assert_eq!(got, ResiduePair::new(q(&[(1, 1)], 5), q(&[(0, 1), (1, 1)], 5)).unwrap());

        let unit = pair(&[], &[(0, 1)]);
        let got = inst.endo_extract(|omega| inst.phi(&unit, omega), 31).unwrap();
        assert_eq!(got, unit);
    }

    #[test]
    fn extract_rejects_inconsistent_blackbox() {
        let inst = inst();
        let too_deep = |_: &H1Class<Rationals>| Ok(hom(31, &[(0, 1)], &[]));
        assert!(matches!(inst.endo_extract(too_deep, 5), Err(Error::InconsistentBlackbox(_))));
        // Not C_M-linear: the image of 1/t^n does not depend on n coherently.
        let wrong = |omega: &H1Class<Rationals>| {
            let n = omega.exponent();
            Ok(hom(n, &[(0, n as i64)], &[]))
        };
        assert!(matches!(inst.endo_extract(wrong, 6), Err(Error::InconsistentBlackbox(_))));
    }

    #[test]
    fn display() {
        assert_eq!(hom(3, &[(0, 1)], &[(1, 1)]).to_string(), "hom(3;1;t)");
        assert_eq!(pair(&[], &[(0, 1)]).to_string(), "pair(0;1)");
    }
}
