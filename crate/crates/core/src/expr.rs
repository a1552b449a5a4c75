//! Expressions over the generators of `C_M` and their evaluation to normal form.
//!
//! Atoms are `t`, `w = t (z_0 - a_0)`, `g_i = (z_i - a_i)^2` and rational
//! constants. Division is allowed by anything that evaluates to a unit of
//! `C_M`, which is how the localization at `M` enters.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::instance::AkizukiInstance;
use crate::normal_form::NormalForm;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    T,
    W,
    /// `g_i = (z_i - a_i)^2`.
    Gen(usize),
    Const(BigRational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Const(BigRational::from_integer(n.into()))
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Self {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, k: u32) -> Self {
        Expr::Pow(Box::new(a), k)
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::T | Expr::W | Expr::Gen(_) | Expr::Const(_) => 0,
            Expr::Neg(a) | Expr::Pow(a, _) => 1 + a.depth(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::T => write!(f, "t"),
            Expr::W => write!(f, "w"),
            Expr::Gen(i) => write!(f, "g{i}"),
            Expr::Const(c) if c.denom().is_one() => write!(f, "({})", c.numer()),
            Expr::Const(c) => write!(f, "({}/{})", c.numer(), c.denom()),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "{a}^{k}"),
        }
    }
}

impl<F: CoeffField> AkizukiInstance<F> {
    /// Normal form of `e` modulo `t^m C_M`, evaluated bottom-up.
    pub fn eval_expression(&self, e: &Expr, m: usize) -> Result<NormalForm<F>> {
        self.check_level(m)?;
        let field = self.field();
        Ok(match e {
            Expr::T => NormalForm::from_a(TruncatedSeries::t(field, m)),
            Expr::W => NormalForm::w(field, m),
            Expr::Gen(i) => self.generator_nf(*i, m)?,
            Expr::Const(c) => {
                let c = field.from_ratio(c.numer(), c.denom())?;
                NormalForm::from_a(TruncatedSeries::constant(field, c, m))
            }
            Expr::Neg(a) => self.eval_expression(a, m)?.neg(),
            Expr::Add(a, b) => self.eval_expression(a, m)?.add(&self.eval_expression(b, m)?)?,
            Expr::Sub(a, b) => self.eval_expression(a, m)?.sub(&self.eval_expression(b, m)?)?,
            Expr::Mul(a, b) => self.nf_mul(&self.eval_expression(a, m)?, &self.eval_expression(b, m)?)?,
            Expr::Div(a, b) => {
                let den = self.eval_expression(b, m)?;
                let den_inv = self
                    .nf_invert(&den)
                    .map_err(|_| Error::NotInvertible(format!("{b} is not a unit of C_M")))?;
                self.nf_mul(&self.eval_expression(a, m)?, &den_inv)?
            }
            Expr::Pow(a, k) => {
                let base = self.eval_expression(a, m)?;
                let mut acc = NormalForm::one(field, m);
                for _ in 0..*k {
                    acc = self.nf_mul(&acc, &base)?;
                }
                acc
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn q(terms: &[(usize, i64)], n: usize) -> TruncatedSeries<Rationals> {
        TruncatedSeries::from_terms(&Rationals, terms.iter().map(|&(e, c)| (e, Rationals.from_i64(c))), n)
    }

    #[test]
    fn eval_examples() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        let ww = Expr::mul(Expr::W, Expr::W);
        assert_eq!(
            inst.eval_expression(&ww, 14).unwrap(),
            NormalForm::new(q(&[(6, -1), (10, -2)], 14), q(&[(3, 2), (7, 2)], 14)).unwrap()
        );
        let lin = Expr::add(Expr::pow(Expr::T, 2), Expr::mul(Expr::int(3), Expr::W));
        assert_eq!(
            inst.eval_expression(&lin, 5).unwrap(),
            NormalForm::new(q(&[(2, 1)], 5), q(&[(0, 3)], 5)).unwrap()
        );
    }

    #[test]
    fn division_by_unit() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        let den = Expr::sub(Expr::int(1), Expr::mul(Expr::T, Expr::W));
        let e = Expr::div(Expr::int(1), den.clone());
        let got = inst.eval_expression(&e, 6).unwrap();
        // D = (1 - t^4)^2, so the inverse is (1, t + 2t^5) modulo t^6.
        assert_eq!(got, NormalForm::new(q(&[(0, 1)], 6), q(&[(1, 1), (5, 2)], 6)).unwrap());
        let back = inst.nf_mul(&got, &inst.eval_expression(&den, 6).unwrap()).unwrap();
        assert_eq!(back, NormalForm::one(&Rationals, 6));
    }

    #[test]
    fn division_by_non_unit() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        let e = Expr::div(Expr::int(1), Expr::T);
        assert!(matches!(inst.eval_expression(&e, 4), Err(Error::NotInvertible(_))));
        let e = Expr::div(Expr::int(1), Expr::W);
        assert!(matches!(inst.eval_expression(&e, 4), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn generator_atoms() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        assert_eq!(inst.eval_expression(&Expr::Gen(0), 12).unwrap(), inst.generator_nf(0, 12).unwrap());
        assert!(inst.eval_expression(&Expr::Gen(4), 3).is_err());
    }
}
