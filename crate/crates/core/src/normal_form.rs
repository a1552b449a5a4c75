//! Elements of `C_M` modulo `t^m C_M` in the form `X + Y w`.
//!
//! Every `f ∈ C_M` decomposes as `f = X + Y w + t^m Z` with `X, Y ∈ A`, and the
//! pair `(X mod t^m, Y mod t^m)` determines the class of `f` modulo `t^m C_M`
//! (if `X + Y w ∈ t^m C_M` then `X, Y ∈ t^m A`). The remainder `Z` is never
//! stored.
//!
//! Multiplication rests on the identity
//!
//! ```text
//! w^2 - 2 t s_r w + t^2 s_r^2 = t^{2 n_r + 2} (z_r - a_r)^2 ∈ t^{2 n_r + 2} C_M
//! ```
//!
//! so modulo `t^m C_M` with `2 n_r + 2 >= m` we may replace `w^2` by
//! `2 t s_r w - t^2 s_r^2`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::instance::AkizukiInstance;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm<F: CoeffField> {
    x: TruncatedSeries<F>,
    y: TruncatedSeries<F>,
}

impl<F: CoeffField> NormalForm<F> {
    /// `X + Y w` at level `X.precision()`.
    pub fn new(x: TruncatedSeries<F>, y: TruncatedSeries<F>) -> Result<Self> {
        if x.precision() != y.precision() {
            return Err(Error::PrecisionMismatch { left: x.precision(), right: y.precision() });
        }
        if x.precision() == 0 {
            return Err(Error::PrecisionExhausted("normal forms need level >= 1".into()));
        }
        Ok(Self { x, y })
    }

    pub fn zero(field: &F, level: usize) -> Self {
        Self::from_a(TruncatedSeries::zero(field, level))
    }

    pub fn one(field: &F, level: usize) -> Self {
        Self::from_a(TruncatedSeries::one(field, level))
    }

    /// The generator `w = t (z_0 - a_0)`, i.e. the pair `(0, 1)`.
    pub fn w(field: &F, level: usize) -> Self {
        Self { x: TruncatedSeries::zero(field, level), y: TruncatedSeries::one(field, level) }
    }

    /// An element of `A ⊂ C_M`.
    pub fn from_a(x: TruncatedSeries<F>) -> Self {
        let y = TruncatedSeries::zero(x.field(), x.precision());
        Self { x, y }
    }

    pub fn x(&self) -> &TruncatedSeries<F> {
        &self.x
    }

    pub fn y(&self) -> &TruncatedSeries<F> {
        &self.y
    }

    pub fn level(&self) -> usize {
        self.x.precision()
    }

    pub fn field(&self) -> &F {
        self.x.field()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Units of `C_M` are exactly the classes with `X` a unit of `A`.
    pub fn is_unit(&self) -> bool {
        self.x.is_unit()
    }

    pub fn truncate(&self, level: usize) -> Result<Self> {
        Self::new(self.x.truncate(level)?, self.y.truncate(level)?)
    }

    fn check_level(&self, other: &Self) -> Result<()> {
        if self.level() != other.level() {
            return Err(Error::LevelMismatch { left: self.level(), right: other.level() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(Self { x: &self.x + &other.x, y: &self.y + &other.y })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_level(other)?;
        Ok(Self { x: &self.x - &other.x, y: &self.y - &other.y })
    }

    pub fn neg(&self) -> Self {
        Self { x: -&self.x, y: -&self.y }
    }

    /// Multiplication by `a ∈ A`; `a` must be at the same level.
    pub fn scale(&self, a: &TruncatedSeries<F>) -> Result<Self> {
        Ok(Self { x: self.x.checked_mul(a)?, y: self.y.checked_mul(a)? })
    }

    /// Multiplication by `t^k`, keeping the level.
    pub fn mul_t_pow(&self, k: usize) -> Self {
        Self {
            x: self.x.shift(k as isize).expect("non-negative shift"),
            y: self.y.shift(k as isize).expect("non-negative shift"),
        }
    }
}

impl<F: CoeffField> fmt::Display for NormalForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}) mod t^{}", self.x, self.y, self.level())
    }
}

impl<F: CoeffField> AkizukiInstance<F> {
    /// Product in `C_M / t^m C_M`, reducing `w^2` through the minimal admissible `s_r`.
    pub fn nf_mul(&self, f: &NormalForm<F>, g: &NormalForm<F>) -> Result<NormalForm<F>> {
        let r = self.reduction_index(f.level());
        self.nf_mul_with_index(f, g, r)
    }

    /// Product using `s_r` for the `w^2` reduction. Any admissible `r`
    /// (`2 n_r + 2 >= m`, `r <= R`) gives the same pair.
    pub fn nf_mul_with_index(&self, f: &NormalForm<F>, g: &NormalForm<F>, r: usize) -> Result<NormalForm<F>> {
        f.check_level(g)?;
        let m = f.level();
        self.check_level(m)?;
        self.check_index(r, m)?;
        let ts = self.t_partial_sum(r, m);
        let t2s2 = &ts * &ts;
        let two = self.field().from_i64(2);
        let yy = &f.y * &g.y;
        let x = &(&f.x * &g.x) - &(&yy * &t2s2);
        let y = &(&(&f.x * &g.y) + &(&g.x * &f.y)) + &(&yy * &ts).scale(&two);
        Ok(NormalForm { x, y })
    }

    /// Inverse in the local ring `C_M`; fails for elements of the maximal ideal.
    ///
    /// `(X + Y w)^{-1} = (X + 2 Y t s_r - Y w) / (X + Y t s_r)^2`.
    pub fn nf_invert(&self, f: &NormalForm<F>) -> Result<NormalForm<F>> {
        let m = f.level();
        self.check_level(m)?;
        if !f.is_unit() {
            return Err(Error::NotInvertible("element lies in the maximal ideal of C_M".into()));
        }
        let r = self.reduction_index(m);
        let ts = self.t_partial_sum(r, m);
        let yts = &f.y * &ts;
        let base = &f.x + &yts;
        let d_inv = (&base * &base).invert()?;
        let two = self.field().from_i64(2);
        let x = &(&f.x + &yts.scale(&two)) * &d_inv;
        let y = -&(&f.y * &d_inv);
        Ok(NormalForm { x, y })
    }

    /// Normal form of the generator `g_i = (z_i - a_i)^2` at level `m`.
    ///
    /// From `w - t s_i = t^{n_i + 1} (z_i - a_i)` we get
    /// `g_i = (w - t s_i)^2 / t^{2 n_i + 2}`, and reducing `w^2` through `s_R`
    /// leaves `X = t^2 (s_i^2 - s_R^2) / t^{2 n_i + 2}`,
    /// `Y = 2 t (s_R - s_i) / t^{2 n_i + 2}`. Both divisions are exact; the
    /// discarded remainder is `t^{2 n_R - 2 n_i} g_R`, so `m <= 2 n_R - 2 n_i`.
    pub fn generator_nf(&self, i: usize, m: usize) -> Result<NormalForm<F>> {
        self.check_level(m)?;
        let big_r = self.max_index();
        if i >= big_r {
            return Err(Error::PrecisionExhausted(format!(
                "g_{i} needs a materialized s_r with r > {i}; R = {big_r}"
            )));
        }
        let ns = self.exponents();
        let headroom = 2 * ns[big_r] - 2 * ns[i];
        if m > headroom {
            return Err(Error::PrecisionExhausted(format!(
                "g_{i} is only known modulo t^{headroom}, level {m} requested"
            )));
        }
        let shift = 2 * ns[i] + 2;
        let p = m + shift;
        let s_i = self.partial_sum_at(i, p)?;
        let s_big = self.partial_sum_at(big_r, p)?;
        let t = TruncatedSeries::t(self.field(), p);
        let two = self.field().from_i64(2);
        let x_num = &(&t * &t) * &(&(&s_i * &s_i) - &(&s_big * &s_big));
        let y_num = (&t * &(&s_big - &s_i)).scale(&two);
        let x = x_num.shift(-(shift as isize))?;
        let y = y_num.shift(-(shift as isize))?;
        NormalForm::new(x, y)
    }

    /// The inclusion `C_M ⊂ Â`: `X + Y w` as a series at precision `m`.
    pub fn nf_embed(&self, f: &NormalForm<F>) -> Result<TruncatedSeries<F>> {
        let m = f.level();
        self.check_level(m)?;
        let w = self.w().truncate(m)?;
        Ok(&f.x + &(&f.y * &w))
    }
}
