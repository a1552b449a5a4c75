//! Truncated data for Akizuki's ring.
//!
//! An instance fixes the coefficient field `k` (so `A = k[[t]]` up to
//! precision), the working precision `N`, exponents `0 = n_0 < n_1 < ... < n_R`
//! with `n_r >= 2 n_{r-1} + 2`, and units `a_0, ..., a_R`. From these it derives
//!
//! * `z = Σ a_i t^{n_i}` modulo `t^N`,
//! * `w = t (z - a_0)` modulo `t^N`,
//! * the partial sums `s_r = a_1 t^{n_1} + ... + a_r t^{n_r}`.
//!
//! `R` is the least index with `2 n_R + 2 >= N`, which is exactly what the
//! reduction `w^2 ≡ 2 t s_r w - t^2 s_r^2 (mod t^{2 n_r + 2} C_M)` needs at every
//! level up to `N`. Transcendence of `z` over `A` is assumed, not checked.

use crate::error::{Error, Result};
use crate::field::{CoeffField, Rationals};
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentRule {
    /// `n_r = 2 n_{r-1} + 2`, giving `0, 2, 6, 14, 30, ...`.
    Minimal,
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnitRule<E> {
    /// Every `a_i = 1`.
    Ones,
    /// `a_0, a_1, ...`; must cover every materialized index.
    Explicit(Vec<E>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkizukiInstance<F: CoeffField> {
    field: F,
    precision: usize,
    exponents: Vec<usize>,
    units: Vec<F::Elem>,
    z: TruncatedSeries<F>,
    w: TruncatedSeries<F>,
    partial_sums: Vec<TruncatedSeries<F>>,
}

impl AkizukiInstance<Rationals> {
    /// Rationals, minimal exponents, all `a_i = 1`.
    pub fn default_rational(precision: usize) -> Result<Self> {
        Self::new(Rationals, precision, ExponentRule::Minimal, UnitRule::Ones)
    }
}

impl<F: CoeffField> AkizukiInstance<F> {
    pub fn new(
        field: F,
        precision: usize,
        exponents: ExponentRule,
        units: UnitRule<F::Elem>,
    ) -> Result<Self> {
        if precision < 2 {
            return Err(Error::PrecisionExhausted(format!(
                "working precision must be at least 2, got {precision}"
            )));
        }
        let exponents = match exponents {
            ExponentRule::Minimal => {
                let mut ns = vec![0usize];
                while 2 * ns.last().unwrap() + 2 < precision {
                    let next = 2 * ns.last().unwrap() + 2;
                    ns.push(next);
                }
                ns
            }
            ExponentRule::Explicit(ns) => {
                if ns.first() != Some(&0) {
                    return Err(Error::ExponentCondition("n_0 must be 0".into()));
                }
                for r in 1..ns.len() {
                    if ns[r] < 2 * ns[r - 1] + 2 {
                        return Err(Error::ExponentCondition(format!(
                            "n_{r} = {} < 2 n_{} + 2 = {}",
                            ns[r],
                            r - 1,
                            2 * ns[r - 1] + 2
                        )));
                    }
                }
                let last = ns.iter().position(|&n| 2 * n + 2 >= precision).ok_or_else(|| {
                    Error::ExponentCondition(format!(
                        "no exponent n_R with 2 n_R + 2 >= {precision}; extend the list"
                    ))
                })?;
                ns[..=last].to_vec()
            }
        };
        let units = match units {
            UnitRule::Ones => vec![field.one(); exponents.len()],
            UnitRule::Explicit(us) => {
                if us.len() < exponents.len() {
                    return Err(Error::ExponentCondition(format!(
                        "{} units given, {} needed",
                        us.len(),
                        exponents.len()
                    )));
                }
                us[..exponents.len()].to_vec()
            }
        };
        if let Some(index) = units.iter().position(|a| field.is_zero(a)) {
            return Err(Error::NonUnitCoefficient { index });
        }

        let z = TruncatedSeries::from_terms(
            &field,
            exponents.iter().copied().zip(units.iter().cloned()),
            precision,
        );
        let z_minus_a0 = &z - &TruncatedSeries::constant(&field, units[0].clone(), precision);
        let w = z_minus_a0.shift(1)?;
        let partial_sums = (0..exponents.len())
            .map(|r| partial_sum_series(&field, &exponents, &units, r, precision))
            .collect();
        Ok(Self { field, precision, exponents, units, z, w, partial_sums })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// The working precision `N`.
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `n_0, ..., n_R`.
    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    /// `a_0, ..., a_R`.
    pub fn units(&self) -> &[F::Elem] {
        &self.units
    }

    /// The largest materialized index `R`.
    pub fn max_index(&self) -> usize {
        self.exponents.len() - 1
    }

    /// `z` modulo `t^N`.
    pub fn z(&self) -> &TruncatedSeries<F> {
        &self.z
    }

    /// `w = t (z - a_0)` modulo `t^N`.
    pub fn w(&self) -> &TruncatedSeries<F> {
        &self.w
    }

    /// `s_r` at precision `N`; `s_0 = 0`.
    pub fn partial_sum(&self, r: usize) -> Result<&TruncatedSeries<F>> {
        self.partial_sums.get(r).ok_or(Error::OutOfRange { index: r, max: self.max_index() })
    }

    /// `s_r` at an arbitrary precision; `s_r` is a polynomial so any precision is exact.
    pub fn partial_sum_at(&self, r: usize, precision: usize) -> Result<TruncatedSeries<F>> {
        if r > self.max_index() {
            return Err(Error::OutOfRange { index: r, max: self.max_index() });
        }
        Ok(partial_sum_series(&self.field, &self.exponents, &self.units, r, precision))
    }

    /// Least `r` with `2 n_r + 2 >= m`: the `w^2` reduction through `s_r` is exact modulo `t^m`.
    pub fn reduction_index(&self, m: usize) -> usize {
        self.exponents.iter().position(|&n| 2 * n + 2 >= m).unwrap_or(self.max_index())
    }

    /// Whether `s_r` may drive the `w^2` reduction at level `m`.
    pub fn is_admissible_index(&self, r: usize, m: usize) -> bool {
        r <= self.max_index() && 2 * self.exponents[r] + 2 >= m
    }

    pub(crate) fn check_index(&self, r: usize, m: usize) -> Result<()> {
        if r > self.max_index() {
            return Err(Error::OutOfRange { index: r, max: self.max_index() });
        }
        if !self.is_admissible_index(r, m) {
            return Err(Error::PrecisionExhausted(format!(
                "s_{r} does not reduce w^2 modulo t^{m} (2 n_{r} + 2 = {})",
                2 * self.exponents[r] + 2
            )));
        }
        Ok(())
    }

    pub(crate) fn check_level(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.precision {
            return Err(Error::PrecisionExhausted(format!("level {m} outside 1..={}", self.precision)));
        }
        Ok(())
    }

    /// `t s_r` at precision `m`.
    pub(crate) fn t_partial_sum(&self, r: usize, m: usize) -> TruncatedSeries<F> {
        self.partial_sums[r]
            .truncate(m.min(self.precision))
            .and_then(|s| s.shift(1))
            .expect("reduction level within working precision")
    }
}

fn partial_sum_series<F: CoeffField>(
    field: &F,
    exponents: &[usize],
    units: &[F::Elem],
    r: usize,
    precision: usize,
) -> TruncatedSeries<F> {
    TruncatedSeries::from_terms(
        field,
        exponents[1..=r].iter().copied().zip(units[1..=r].iter().cloned()),
        precision,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn q(terms: &[(usize, i64)], n: usize) -> TruncatedSeries<Rationals> {
        TruncatedSeries::from_terms(&Rationals, terms.iter().map(|&(e, c)| (e, Rationals.from_i64(c))), n)
    }

    #[test]
    fn default_instance() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        assert_eq!(inst.exponents(), &[0, 2, 6, 14, 30]);
        assert_eq!(*inst.z(), q(&[(0, 1), (2, 1), (6, 1), (14, 1), (30, 1)], 31));
        assert_eq!(*inst.w(), q(&[(3, 1), (7, 1), (15, 1)], 31));
    }

    #[test]
    fn exponent_condition() {
        let err =
            AkizukiInstance::new(Rationals, 31, ExponentRule::Explicit(vec![0, 2, 5, 20]), UnitRule::Ones);
        assert!(matches!(err, Err(Error::ExponentCondition(_))));
        let ok =
            AkizukiInstance::new(Rationals, 20, ExponentRule::Explicit(vec![0, 3, 9, 30]), UnitRule::Ones)
                .unwrap();
        assert_eq!(ok.exponents(), &[0, 3, 9]);
        assert!(
            AkizukiInstance::new(Rationals, 40, ExponentRule::Explicit(vec![0, 3]), UnitRule::Ones).is_err()
        );
        assert!(
            AkizukiInstance::new(Rationals, 40, ExponentRule::Explicit(vec![1, 4]), UnitRule::Ones).is_err()
        );
    }

    #[test]
    fn unit_check() {
        let us = vec![1, 0, 1, 1, 1].into_iter().map(|c| Rationals.from_i64(c)).collect();
        let err = AkizukiInstance::new(Rationals, 31, ExponentRule::Minimal, UnitRule::Explicit(us));
        assert_eq!(err, Err(Error::NonUnitCoefficient { index: 1 }));
        let short = UnitRule::Explicit(vec![Rationals.from_i64(1)]);
        assert!(AkizukiInstance::new(Rationals, 31, ExponentRule::Minimal, short).is_err());
        assert!(AkizukiInstance::default_rational(1).is_err());
    }

    #[test]
    fn partial_sums() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        assert!(inst.partial_sum(0).unwrap().is_zero());
        assert_eq!(*inst.partial_sum(1).unwrap(), q(&[(2, 1)], 31));
        assert_eq!(*inst.partial_sum(2).unwrap(), q(&[(2, 1), (6, 1)], 31));
        assert!(inst.partial_sum(5).is_err());
        // w = t^{n_r + 1}(z_r - a_r) + t s_r: w - t s_r is divisible by t^{n_r + 1}.
        for r in 0..=inst.max_index() {
            let ts = inst.partial_sum(r).unwrap().shift(1).unwrap();
            let rest = inst.w() - &ts;
            assert!(rest.divisible_by_t_pow(inst.exponents()[r] + 1));
        }
    }

    #[test]
    fn reduction_index_examples() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        assert_eq!(inst.reduction_index(3), 1);
        assert_eq!(inst.reduction_index(14), 2);
        assert_eq!(inst.reduction_index(1), 0);
        assert_eq!(inst.reduction_index(31), 4);
    }

    #[test]
    fn exponent_growth() {
        let inst = AkizukiInstance::default_rational(200).unwrap();
        for (r, &n) in inst.exponents().iter().enumerate() {
            assert!(n + 2 >= 1 << (r + 1));
        }
    }

    #[test]
    fn prime_field_instance() {
        let f = PrimeField::new(101).unwrap();
        let inst =
            AkizukiInstance::new(f, 31, ExponentRule::Minimal, UnitRule::Explicit(vec![3, 5, 7, 9, 11]))
                .unwrap();
        assert_eq!(inst.w().coeff(3), 5);
        assert_eq!(inst.w().coeff(0), 0);
    }
}
