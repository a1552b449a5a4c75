//! Brute-force truncated power series over Q, used as an independent oracle.
//!
//! Nothing here calls into the library's arithmetic: series are plain
//! coefficient vectors, products are schoolbook, and `z` is rebuilt from the
//! exponent recursion `n_0 = 0`, `n_{i+1} = 2 n_i + 2` with every `a_i = 1`.

#![allow(dead_code)]

use akizuki::{CoeffField, Expr, TruncatedSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of a series modulo `t^len`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly(pub Vec<BigRational>);

impl Poly {
    pub fn zero(len: usize) -> Self {
        Poly(vec![BigRational::zero(); len])
    }

    pub fn constant(c: BigRational, len: usize) -> Self {
        let mut p = Self::zero(len);
        if len > 0 {
            p.0[0] = c;
        }
        p
    }

    pub fn monomial(c: i64, exp: usize, len: usize) -> Self {
        let mut p = Self::zero(len);
        if exp < len {
            p.0[exp] = BigRational::from_integer(c.into());
        }
        p
    }

    pub fn from_terms(terms: &[(usize, i64)], len: usize) -> Self {
        let mut p = Self::zero(len);
        for &(e, c) in terms {
            if e < len {
                p.0[e] += BigRational::from_integer(c.into());
            }
        }
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        Poly(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Poly(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Poly(self.0.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n - i {
                out.0[i + j] += &self.0[i] * &o.0[j];
            }
        }
        out
    }

    /// Inverse of a series with nonzero constant term, by solving `f g = 1`
    /// one coefficient at a time.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.len();
        if n == 0 {
            return Some(Self::zero(0));
        }
        if self.0[0].is_zero() {
            return None;
        }
        let c0 = self.0[0].recip();
        let mut g = Self::zero(n);
        g.0[0] = c0.clone();
        for k in 1..n {
            let mut s = BigRational::zero();
            for i in 1..=k {
                s += &self.0[i] * &g.0[k - i];
            }
            g.0[k] = -s * &c0;
        }
        Some(g)
    }

    pub fn truncate(&self, len: usize) -> Self {
        Poly(self.0[..len].to_vec())
    }

    /// `f / t^k` for `f` divisible by `t^k`.
    pub fn div_t_pow(&self, k: usize) -> Self {
        assert!(self.0[..k].iter().all(|c| c.is_zero()), "not divisible by t^{k}");
        Poly(self.0[k..].to_vec())
    }

    /// Reduction into a library series over `field` at precision `len`.
    pub fn to_series<F: CoeffField>(&self, field: &F, len: usize) -> TruncatedSeries<F> {
        let coeffs = self.0[..len]
            .iter()
            .map(|c| field.from_ratio(c.numer(), c.denom()).expect("denominator invertible"))
            .collect();
        TruncatedSeries::from_coeffs(field, coeffs, len)
    }
}

/// `n_0, n_1, ...` for the minimal instance, as long as `n_i < bound`.
pub fn minimal_exponents(bound: usize) -> Vec<usize> {
    let mut out = vec![0];
    loop {
        let next = 2 * out.last().unwrap() + 2;
        if next >= bound {
            return out;
        }
        out.push(next);
    }
}

/// `z - a_0 - s_i = sum_{j > i} t^{n_j}` modulo `t^len`.
pub fn z_tail(i: usize, len: usize) -> Poly {
    let mut p = Poly::zero(len);
    for &n in minimal_exponents(len).iter().skip(i + 1) {
        p.0[n] += BigRational::one();
    }
    p
}

/// `w = t (z - a_0)` modulo `t^len`.
pub fn w_tilde(len: usize) -> Poly {
    let zt = z_tail(0, len + 1);
    let mut p = Poly::zero(len);
    for k in 1..len {
        p.0[k] = zt.0[k - 1].clone();
    }
    p
}

/// `g_i = ((z - a_0 - s_i) / t^{n_i})^2` modulo `t^len`.
pub fn generator(i: usize, len: usize) -> Poly {
    let n_i = (0..i).fold(0, |n, _| 2 * n + 2);
    let q = z_tail(i, len + n_i).div_t_pow(n_i);
    q.mul(&q)
}

/// Direct evaluation of `e` in `Â / t^len`. `None` when a divisor is not a unit.
pub fn eval(e: &Expr, len: usize) -> Option<Poly> {
    Some(match e {
        Expr::T => Poly::monomial(1, 1, len),
        Expr::W => w_tilde(len),
        Expr::Gen(i) => generator(*i, len),
        Expr::Const(c) => Poly::constant(c.clone(), len),
        Expr::Neg(a) => eval(a, len)?.neg(),
        Expr::Add(a, b) => eval(a, len)?.add(&eval(b, len)?),
        Expr::Sub(a, b) => eval(a, len)?.sub(&eval(b, len)?),
        Expr::Mul(a, b) => eval(a, len)?.mul(&eval(b, len)?),
        Expr::Div(a, b) => eval(a, len)?.mul(&eval(b, len)?.inverse()?),
        Expr::Pow(a, k) => {
            let base = eval(a, len)?;
            (0..*k).fold(Poly::constant(BigRational::one(), len), |acc, _| acc.mul(&base))
        }
    })
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A library series from `(exponent, coefficient)` pairs.
pub fn series<F: CoeffField>(field: &F, terms: &[(usize, i64)], precision: usize) -> TruncatedSeries<F> {
    TruncatedSeries::from_terms(field, terms.iter().map(|&(e, c)| (e, field.from_i64(c))), precision)
}
