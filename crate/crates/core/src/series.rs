//! Truncated power series over an exact field and principal parts modelling `K/A`.
//!
//! `TruncatedSeries` is an element of `Â / t^N Â` where `Â = k[[t]]`. The
//! precision `N` is part of the value: the checked operations reject operands of
//! different precision, and the arithmetic operators panic on them. The only
//! ways to change precision are [`TruncatedSeries::truncate`],
//! [`TruncatedSeries::shift`] with a negative exponent, and
//! [`TruncatedSeries::raise`].
//!
//! `LaurentTail` is a finite principal part `Σ d_j t^{-j}`, the canonical
//! representative of a class in `K/A` (equivalently `K̂/Â`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{CoeffField, ElemDisplay};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<F: CoeffField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: CoeffField> TruncatedSeries<F> {
    /// Build from coefficients `c_0, c_1, ...`; missing entries are zero and
    /// entries at index `>= precision` are dropped.
    pub fn from_coeffs(field: &F, mut coeffs: Vec<F::Elem>, precision: usize) -> Self {
        coeffs.resize(precision, field.zero());
        Self { field: field.clone(), coeffs }
    }

    pub fn zero(field: &F, precision: usize) -> Self {
        Self::from_coeffs(field, Vec::new(), precision)
    }

    pub fn constant(field: &F, c: F::Elem, precision: usize) -> Self {
        Self::monomial(field, c, 0, precision)
    }

    pub fn one(field: &F, precision: usize) -> Self {
        Self::constant(field, field.one(), precision)
    }

    /// `c·t^exp`, which is zero when `exp >= precision`.
    pub fn monomial(field: &F, c: F::Elem, exp: usize, precision: usize) -> Self {
        let mut s = Self::zero(field, precision);
        if exp < precision {
            s.coeffs[exp] = c;
        }
        s
    }

    /// The uniformizer `t`.
    pub fn t(field: &F, precision: usize) -> Self {
        Self::monomial(field, field.one(), 1, precision)
    }

    /// `Σ c_i t^{e_i}` from sparse terms; repeated exponents accumulate.
    pub fn from_terms<I>(field: &F, terms: I, precision: usize) -> Self
    where
        I: IntoIterator<Item = (usize, F::Elem)>,
    {
        let mut s = Self::zero(field, precision);
        for (e, c) in terms {
            if e < precision {
                s.coeffs[e] = field.add(&s.coeffs[e], &c);
            }
        }
        s
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; zero past the precision.
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    /// A unit of `Â` has nonzero constant term.
    pub fn is_unit(&self) -> bool {
        self.coeffs.first().is_some_and(|c| !self.field.is_zero(c))
    }

    /// Least `i` with `c_i != 0`, or `None` when every stored coefficient vanishes.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    /// Whether `t^k` divides the stored representative.
    pub fn divisible_by_t_pow(&self, k: usize) -> bool {
        self.valuation().is_none_or(|v| v >= k)
    }

    fn check_precision(&self, other: &Self) -> Result<()> {
        if self.precision() != other.precision() {
            return Err(Error::PrecisionMismatch { left: self.precision(), right: other.precision() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_precision(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_precision(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| self.field.sub(a, b)).collect();
        Ok(Self { field: self.field.clone(), coeffs })
    }

    /// Cauchy product truncated modulo `t^N`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_precision(other)?;
        let n = self.precision();
        let f = &self.field;
        let mut out = vec![f.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !f.is_zero(b) {
                    out[i + j] = f.add(&out[i + j], &f.mul(a, b));
                }
            }
        }
        Ok(Self { field: f.clone(), coeffs: out })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Self { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = Self::one(&self.field, self.precision());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse in `Â / t^N`; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let f = &self.field;
        let n = self.precision();
        let c0_inv = self
            .coeffs
            .first()
            .and_then(|c| f.inv(c))
            .ok_or_else(|| Error::NotInvertible("series has zero constant term".into()))?;
        let mut b: Vec<F::Elem> = Vec::with_capacity(n);
        b.push(c0_inv.clone());
        for k in 1..n {
            // b_k = -c0^{-1} Σ_{i=1..k} c_i b_{k-i}
            let mut acc = f.zero();
            for i in 1..=k {
                if !f.is_zero(&self.coeffs[i]) {
                    acc = f.add(&acc, &f.mul(&self.coeffs[i], &b[k - i]));
                }
            }
            b.push(f.neg(&f.mul(&acc, &c0_inv)));
        }
        Ok(Self { field: f.clone(), coeffs: b })
    }

    /// Multiplication by `t^k`.
    ///
    /// For `k >= 0` the precision is unchanged and the top `k` coefficients fall
    /// off. For `k < 0` the first `|k|` coefficients must vanish and the result
    /// has precision `N - |k|`, the window that is still known.
    pub fn shift(&self, k: isize) -> Result<Self> {
        let n = self.precision();
        if k >= 0 {
            let k = k as usize;
            let mut coeffs = vec![self.field.zero(); k.min(n)];
            coeffs.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
            Ok(Self { field: self.field.clone(), coeffs })
        } else {
            let k = k.unsigned_abs();
            if k > n {
                return Err(Error::PrecisionExhausted(format!(
                    "cannot divide a series of precision {n} by t^{k}"
                )));
            }
            if !self.coeffs[..k].iter().all(|c| self.field.is_zero(c)) {
                return Err(Error::Divisibility(k));
            }
            Ok(Self { field: self.field.clone(), coeffs: self.coeffs[k..].to_vec() })
        }
    }

    /// Multiplication by `t^k` into precision `N + k`; exact since
    /// `t^k (f mod t^N) = t^k f mod t^{N+k}`.
    pub fn raise(&self, k: usize) -> Self {
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { field: self.field.clone(), coeffs }
    }

    /// Reduce to precision `precision <= N`.
    pub fn truncate(&self, precision: usize) -> Result<Self> {
        if precision > self.precision() {
            return Err(Error::PrecisionExhausted(format!(
                "cannot raise precision {} to {precision} by truncation",
                self.precision()
            )));
        }
        Ok(Self { field: self.field.clone(), coeffs: self.coeffs[..precision].to_vec() })
    }
}

impl<F: CoeffField> Add for &TruncatedSeries<F> {
    type Output = TruncatedSeries<F>;

    fn add(self, rhs: Self) -> TruncatedSeries<F> {
        self.checked_add(rhs).expect("series precisions must agree")
    }
}

impl<F: CoeffField> Sub for &TruncatedSeries<F> {
    type Output = TruncatedSeries<F>;

    fn sub(self, rhs: Self) -> TruncatedSeries<F> {
        self.checked_sub(rhs).expect("series precisions must agree")
    }
}

impl<F: CoeffField> Mul for &TruncatedSeries<F> {
    type Output = TruncatedSeries<F>;

    fn mul(self, rhs: Self) -> TruncatedSeries<F> {
        self.checked_mul(rhs).expect("series precisions must agree")
    }
}

impl<F: CoeffField> Neg for &TruncatedSeries<F> {
    type Output = TruncatedSeries<F>;

    fn neg(self) -> TruncatedSeries<F> {
        let coeffs = self.coeffs.iter().map(|a| self.field.neg(a)).collect();
        TruncatedSeries { field: self.field.clone(), coeffs }
    }
}

/// Writes `Σ c t^e` with ascending exponents and no zero terms; `0` when empty.
pub(crate) fn fmt_terms<'a, F, I>(field: &F, terms: I, f: &mut fmt::Formatter<'_>) -> fmt::Result
where
    F: CoeffField,
    I: IntoIterator<Item = (i64, &'a F::Elem)>,
{
    let mut first = true;
    for (e, c) in terms {
        if field.is_zero(c) {
            continue;
        }
        let (negative, mag) = if field.is_negative(c) { (true, field.neg(c)) } else { (false, c.clone()) };
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let coeff = ElemDisplay(field, &mag).to_string();
        let unit = field.is_one(&mag);
        match e {
            0 => write!(f, "{coeff}")?,
            _ => {
                if !unit {
                    if coeff.contains('/') {
                        write!(f, "{coeff}*")?;
                    } else {
                        write!(f, "{coeff}")?;
                    }
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<F: CoeffField> fmt::Display for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(&self.field, self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)), f)
    }
}

/// A class in `K/A`: the principal part `Σ_{j=1..depth} d_j t^{-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTail<F: CoeffField> {
    field: F,
    /// `coeffs[j - 1]` is `d_j`; the last entry is nonzero.
    coeffs: Vec<F::Elem>,
}

impl<F: CoeffField> LaurentTail<F> {
    pub fn zero(field: &F) -> Self {
        Self { field: field.clone(), coeffs: Vec::new() }
    }

    /// Build from `d_1, d_2, ...` and canonicalize.
    pub fn from_coeffs(field: &F, coeffs: Vec<F::Elem>) -> Self {
        let mut tail = Self { field: field.clone(), coeffs };
        tail.trim();
        tail
    }

    /// `Σ d_j t^{-j}` from sparse `(j, d_j)` terms with `j >= 1`.
    pub fn from_terms<I>(field: &F, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, F::Elem)>,
    {
        let mut coeffs: Vec<F::Elem> = Vec::new();
        for (j, d) in terms {
            assert!(j >= 1, "principal parts only carry negative exponents");
            if coeffs.len() < j {
                coeffs.resize(j, field.zero());
            }
            coeffs[j - 1] = field.add(&coeffs[j - 1], &d);
        }
        Self::from_coeffs(field, coeffs)
    }

    /// The class of `f / t^n` in `K/A`: `d_j` is the coefficient of `t^{n-j}` in `f`.
    pub fn from_fraction(f: &TruncatedSeries<F>, n: usize) -> Result<Self> {
        if n > f.precision() {
            return Err(Error::PrecisionExhausted(format!(
                "fraction over t^{n} needs a numerator of precision {n}, have {}",
                f.precision()
            )));
        }
        let coeffs = (1..=n).map(|j| f.coeff(n - j)).collect();
        Ok(Self::from_coeffs(f.field(), coeffs))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Minimal `n` with `t^n` killing the class.
    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    /// `d_j`, the coefficient of `t^{-j}`.
    pub fn coeff(&self, j: usize) -> F::Elem {
        if j == 0 {
            return self.field.zero();
        }
        self.coeffs.get(j - 1).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The numerator `f` of `f / t^n` at precision `n`; `n` must be at least the depth.
    pub fn numerator(&self, n: usize) -> Result<TruncatedSeries<F>> {
        if n < self.depth() {
            return Err(Error::PrecisionExhausted(format!(
                "class of depth {} has no representative over t^{n}",
                self.depth()
            )));
        }
        let coeffs = (0..n).map(|i| self.coeff(n - i)).collect();
        Ok(TruncatedSeries::from_coeffs(&self.field, coeffs, n))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.depth().max(other.depth());
        let coeffs = (1..=len).map(|j| self.field.add(&self.coeff(j), &other.coeff(j))).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Self { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// The class of `c · τ` for `c ∈ A`; non-negative powers of `t` are dropped.
    pub fn scale(&self, c: &TruncatedSeries<F>) -> Result<Self> {
        if c.precision() < self.depth() {
            return Err(Error::PrecisionExhausted(format!(
                "scalar of precision {} cannot act on a tail of depth {}",
                c.precision(),
                self.depth()
            )));
        }
        let f = &self.field;
        // (Σ c_i t^i)(Σ d_j t^{-j}) has t^{-k} coefficient Σ_i c_i d_{k+i}.
        let coeffs = (1..=self.depth())
            .map(|k| {
                (0..=self.depth() - k)
                    .fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&c.coeff(i), &self.coeff(k + i))))
            })
            .collect();
        Ok(Self::from_coeffs(f, coeffs))
    }
}

impl<F: CoeffField> fmt::Display for LaurentTail<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Ascending exponents: t^{-depth} first.
        let terms = (1..=self.depth()).rev().map(|j| (-(j as i64), &self.coeffs[j - 1]));
        fmt_terms(&self.field, terms, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(terms: &[(usize, i64)], n: usize) -> TruncatedSeries<Rationals> {
        TruncatedSeries::from_terms(&Rationals, terms.iter().map(|&(e, c)| (e, Rationals.from_i64(c))), n)
    }

    fn tail(terms: &[(usize, i64)]) -> LaurentTail<Rationals> {
        LaurentTail::from_terms(&Rationals, terms.iter().map(|&(j, c)| (j, Rationals.from_i64(c))))
    }

    #[test]
    fn add_examples() {
        assert_eq!(&q(&[(0, 1), (1, 1)], 4) + &q(&[(1, 1)], 4), q(&[(0, 1), (1, 2)], 4));
        let f = q(&[(0, 3), (2, -1)], 5);
        assert_eq!(&f + &TruncatedSeries::zero(&Rationals, 5), f);
        let g = q(&[(2, 1), (6, 1)], 8);
        assert_eq!(&g + &g, q(&[(2, 2), (6, 2)], 8));
    }

    #[test]
    fn mixed_precision_is_an_error() {
        let a = q(&[(0, 1)], 4);
        let b = q(&[(0, 1)], 5);
        assert_eq!(a.checked_add(&b), Err(Error::PrecisionMismatch { left: 4, right: 5 }));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = q(&[(0, 1), (1, 1)], 4);
        assert_eq!(&a * &a, q(&[(0, 1), (1, 2), (2, 1)], 4));
        let w = q(&[(3, 1), (7, 1)], 14);
        assert_eq!(&w * &w, q(&[(6, 1), (10, 2)], 14));
        assert_eq!(&w * &TruncatedSeries::one(&Rationals, 14), w);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(q(&[(0, 1)], 3).invert().unwrap(), q(&[(0, 1)], 3));
        assert_eq!(q(&[(0, 1), (1, -1)], 4).invert().unwrap(), q(&[(0, 1), (1, 1), (2, 1), (3, 1)], 4));
        let a = q(&[(0, 1), (2, 1)], 6);
        let b = a.invert().unwrap();
        assert_eq!(b, q(&[(0, 1), (2, -1), (4, 1)], 6));
        assert_eq!(&a * &b, TruncatedSeries::one(&Rationals, 6));
        assert!(matches!(q(&[(1, 1)], 4).invert(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn shift_examples() {
        let w = q(&[(3, 1), (7, 1)], 10);
        let s = w.shift(-3).unwrap();
        assert_eq!(s, q(&[(0, 1), (4, 1)], 7));
        assert_eq!(q(&[(0, 1), (1, 1)], 4).shift(1).unwrap(), q(&[(1, 1), (2, 1)], 4));
        assert_eq!(q(&[(0, 1), (1, 1)], 4).shift(-1), Err(Error::Divisibility(1)));
        assert_eq!(q(&[(3, 1)], 4).shift(2).unwrap(), TruncatedSeries::zero(&Rationals, 4));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(q(&[(3, 1), (7, 1)], 10).valuation(), Some(3));
        assert_eq!(q(&[(0, 1)], 10).valuation(), Some(0));
        assert_eq!(TruncatedSeries::zero(&Rationals, 7).valuation(), None);
    }

    #[test]
    fn fraction_examples() {
        assert_eq!(LaurentTail::from_fraction(&q(&[(0, 1)], 3), 3).unwrap(), tail(&[(3, 1)]));
        let w = q(&[(3, 1), (7, 1)], 31);
        assert!(LaurentTail::from_fraction(&w, 1).unwrap().is_zero());
        assert_eq!(LaurentTail::from_fraction(&q(&[(0, 1), (1, 1)], 2), 2).unwrap(), tail(&[(2, 1), (1, 1)]));
        assert!(LaurentTail::from_fraction(&q(&[(0, 1)], 2), 3).is_err());
    }

    #[test]
    fn scale_examples() {
        let t = q(&[(1, 1)], 3);
        assert!(tail(&[(1, 1)]).scale(&t).unwrap().is_zero());
        assert_eq!(tail(&[(2, 1), (1, 1)]).scale(&t).unwrap(), tail(&[(1, 1)]));
        let one_plus_t = q(&[(0, 1), (1, 1)], 2);
        assert_eq!(tail(&[(2, 1)]).scale(&one_plus_t).unwrap(), tail(&[(2, 1), (1, 1)]));
        assert!(tail(&[(3, 1)]).scale(&q(&[(0, 1)], 2)).is_err());
    }

    #[test]
    fn tail_numerator_roundtrip() {
        let tau = tail(&[(2, 1), (1, -3)]);
        let f = tau.numerator(4).unwrap();
        assert_eq!(LaurentTail::from_fraction(&f, 4).unwrap(), tau);
        assert!(tau.numerator(1).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(&[(6, -1), (10, -2)], 14).to_string(), "-t^6 - 2t^10");
        assert_eq!(q(&[(0, 1), (1, 2)], 4).to_string(), "1 + 2t");
        assert_eq!(TruncatedSeries::zero(&Rationals, 3).to_string(), "0");
        let half = Rationals.from_ratio(&2.into(), &(-4).into()).unwrap();
        assert_eq!(TruncatedSeries::monomial(&Rationals, half, 5, 6).to_string(), "-1/2*t^5");
        assert_eq!(tail(&[(2, 1), (1, 2)]).to_string(), "t^-2 + 2t^-1");
        assert_eq!(LaurentTail::zero(&Rationals).to_string(), "0");
        let f101 = PrimeField::new(101).unwrap();
        let s = TruncatedSeries::from_terms(&f101, [(6, f101.from_i64(-1))], 8);
        assert_eq!(s.to_string(), "100t^6");
    }
}
