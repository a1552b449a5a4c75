//! The completion of `C_M` as pairs `(ρ, σ)`, read as `ρ + σ X` in
//! `Â[X] / (X + t(z - a_0))^2`.
//!
//! A pair stands for the map `Φ_{σ,ρ}`; addition is addition of the
//! parameters and multiplication is composition `Φ_1 ∘ Φ_0^{-1} ∘ Φ_2` for a
//! chosen unit `Φ_0`. With the unit `(ρ_0, σ_0) = (1, 0)` the product has the
//! closed form in [`AkizukiInstance::comp_mul`].

use std::fmt;

use crate::duality::ResiduePair;
use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::instance::AkizukiInstance;
use crate::normal_form::NormalForm;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionElement<F: CoeffField> {
    rho: TruncatedSeries<F>,
    sigma: TruncatedSeries<F>,
}

impl<F: CoeffField> CompletionElement<F> {
    pub fn new(rho: TruncatedSeries<F>, sigma: TruncatedSeries<F>) -> Result<Self> {
        if rho.precision() != sigma.precision() {
            return Err(Error::PrecisionMismatch { left: rho.precision(), right: sigma.precision() });
        }
        Ok(Self { rho, sigma })
    }

    pub fn zero(field: &F, precision: usize) -> Self {
        Self { rho: TruncatedSeries::zero(field, precision), sigma: TruncatedSeries::zero(field, precision) }
    }

    /// The standard unit `Φ_{0,1}`, i.e. `1 + 0·X`.
    pub fn one(field: &F, precision: usize) -> Self {
        Self { rho: TruncatedSeries::one(field, precision), sigma: TruncatedSeries::zero(field, precision) }
    }

    pub fn from_pair(pair: &ResiduePair<F>) -> Self {
        Self { rho: pair.rho().clone(), sigma: pair.sigma().clone() }
    }

    /// The residue parameters `(σ, ρ)` of this element.
    pub fn as_pair(&self) -> ResiduePair<F> {
        ResiduePair::new(self.sigma.clone(), self.rho.clone()).expect("same precision")
    }

    pub fn rho(&self) -> &TruncatedSeries<F> {
        &self.rho
    }

    pub fn sigma(&self) -> &TruncatedSeries<F> {
        &self.sigma
    }

    pub fn precision(&self) -> usize {
        self.rho.precision()
    }

    pub fn is_zero(&self) -> bool {
        self.rho.is_zero() && self.sigma.is_zero()
    }

    /// `Φ_{σ1,ρ1} + Φ_{σ2,ρ2} = Φ_{σ1+σ2, ρ1+ρ2}`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { rho: self.rho.checked_add(&other.rho)?, sigma: self.sigma.checked_add(&other.sigma)? })
    }

    pub fn neg(&self) -> Self {
        Self { rho: -&self.rho, sigma: -&self.sigma }
    }
}

impl<F: CoeffField> fmt::Display for CompletionElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "comp({};{})", self.rho, self.sigma)
    }
}

impl<F: CoeffField> AkizukiInstance<F> {
    fn check_full_precision(&self, u: &CompletionElement<F>) -> Result<()> {
        if u.precision() != self.precision() {
            return Err(Error::PrecisionMismatch { left: u.precision(), right: self.precision() });
        }
        Ok(())
    }

    /// Product for the unit `(1, 0)`:
    /// `ρ = ρ1 ρ2 - σ1 σ2 w^2`, `σ = σ1 ρ2 + σ2 ρ1 - 2 σ1 σ2 w`, with `w = t(z - a_0)`.
    pub fn comp_mul(
        &self,
        u: &CompletionElement<F>,
        v: &CompletionElement<F>,
    ) -> Result<CompletionElement<F>> {
        self.check_full_precision(u)?;
        self.check_full_precision(v)?;
        let w = self.w();
        let two = self.field().from_i64(2);
        let ss = &u.sigma * &v.sigma;
        let rho = &(&u.rho * &v.rho) - &(&ss * &(w * w));
        let sigma = &(&(&u.sigma * &v.rho) + &(&v.sigma * &u.rho)) - &(&ss * w).scale(&two);
        Ok(CompletionElement { rho, sigma })
    }

    /// Product `Φ_u ∘ Φ_unit^{-1} ∘ Φ_v`, computed by composing the maps and
    /// reading the parameters back off the composite at level `N`.
    pub fn comp_mul_general(
        &self,
        u: &CompletionElement<F>,
        v: &CompletionElement<F>,
        unit: &CompletionElement<F>,
    ) -> Result<CompletionElement<F>> {
        self.check_full_precision(u)?;
        self.check_full_precision(v)?;
        self.check_full_precision(unit)?;
        let (pu, pv, p0) = (u.as_pair(), v.as_pair(), unit.as_pair());
        if !p0.is_invertible() {
            return Err(Error::NotInvertible("unit element must have invertible rho".into()));
        }
        let composite = |omega: &_| {
            let hom = self.phi(&pv, omega)?;
            let back = self.phi_inverse(&p0, &hom)?;
            self.phi(&pu, &back)
        };
        let pair = self.endo_extract(composite, self.precision())?;
        Ok(CompletionElement::from_pair(&pair))
    }

    /// `C_M → Â → Â[X]/(X + t(z - a_0))^2`: `f ↦ (f, 0)`. Needs `f` at level `N`.
    pub fn comp_embed(&self, f: &NormalForm<F>) -> Result<CompletionElement<F>> {
        if f.level() != self.precision() {
            return Err(Error::PrecisionExhausted(format!(
                "embedding needs level {}, got {}",
                self.precision(),
                f.level()
            )));
        }
        let rho = self.nf_embed(f)?;
        let sigma = TruncatedSeries::zero(self.field(), self.precision());
        Ok(CompletionElement { rho, sigma })
    }
}
