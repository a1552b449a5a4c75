//! Seeded property suites, one per module, driven by the `selftest` command.
//!
//! Every case draws from its own RNG stream (see [`crate::random::case_rng`]),
//! so a reported counterexample depends only on the seed, the property and the
//! case number.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cohomology::H1Class;
use crate::completion::CompletionElement;
use crate::error::{Error, Result};
use crate::field::CoeffField;
use crate::instance::AkizukiInstance;
use crate::normal_form::NormalForm;
use crate::random;
use crate::series::{LaurentTail, TruncatedSeries};

pub const SUITES: &[&str] = &["series", "ring", "cohomology", "duality", "completion"];

type CaseResult = std::result::Result<(), String>;
type Property<F> = (&'static str, fn(&AkizukiInstance<F>, &mut ChaCha8Rng) -> CaseResult);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// Case number and description of the first counterexample.
    pub failure: Option<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub outcomes: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.failure.is_none())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.failure {
                None => writeln!(f, "PASS {}/{} ({} cases)", self.suite, o.name, o.cases)?,
                Some((case, msg)) => writeln!(f, "FAIL {}/{} (case {case}): {msg}", self.suite, o.name)?,
            }
        }
        Ok(())
    }
}

/// Runs suite `name` with `count` cases per randomized property.
pub fn run_suite<F: CoeffField>(
    inst: &AkizukiInstance<F>,
    name: &str,
    seed: u64,
    count: usize,
) -> Result<SuiteReport> {
    let props: Vec<Property<F>> = match name {
        "series" => series_properties(),
        "ring" => ring_properties(),
        "cohomology" => cohomology_properties(),
        "duality" => duality_properties(),
        "completion" => completion_properties(),
        other => {
            return Err(Error::Parse(format!(
                "unknown suite {other:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    let outcomes = props
        .into_iter()
        .enumerate()
        .map(|(pi, (pname, prop))| {
            let failure = (0..count).find_map(|case| {
                let mut rng = random::case_rng(seed, pi as u64, case as u64);
                prop(inst, &mut rng).err().map(|msg| (case, msg))
            });
            PropertyOutcome { name: pname, cases: count, failure }
        })
        .collect();
    Ok(SuiteReport { suite: name.to_string(), outcomes })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CaseResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn level<R: rand::Rng>(inst: &AkizukiInstance<impl CoeffField>, rng: &mut R) -> usize {
    rng.gen_range(1..=inst.precision())
}

// ---------------------------------------------------------------- series

fn series_properties<F: CoeffField>() -> Vec<Property<F>> {
    vec![
        ("ring_axioms", |inst, rng| {
            let n = level(inst, rng);
            let f = inst.field();
            let (a, b, c) = (random::series(f, n, rng), random::series(f, n, rng), random::series(f, n, rng));
            ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity fails for {a}, {b}, {c}"))?;
            ensure(&a * &b == &b * &a, || format!("commutativity fails for {a}, {b}"))?;
            ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || {
                format!("distributivity fails for {a}, {b}, {c}")
            })
        }),
        ("inverse", |inst, rng| {
            let n = level(inst, rng);
            let a = random::unit_series(inst.field(), n, rng);
            let inv = lift(a.invert())?;
            ensure(&a * &inv == TruncatedSeries::one(inst.field(), n), || format!("a * a^-1 != 1 for {a}"))
        }),
        ("fraction_representative", |inst, rng| {
            let big_n = inst.precision();
            let n = rng.gen_range(1..big_n);
            let f = random::series(inst.field(), big_n, rng);
            let tf = lift(f.shift(1))?;
            ensure(
                lift(LaurentTail::from_fraction(&f, n))? == lift(LaurentTail::from_fraction(&tf, n + 1))?,
                || format!("f/t^{n} != tf/t^{} for f = {f}", n + 1),
            )
        }),
        ("vanishing_criterion", |inst, rng| {
            let big_n = inst.precision();
            let n = level(inst, rng);
            let zeros = rng.gen_range(0..=big_n);
            let f = lift(random::series(inst.field(), big_n, rng).shift(zeros as isize))?;
            let vanishes = lift(LaurentTail::from_fraction(&f, n))?.is_zero();
            ensure(vanishes == f.divisible_by_t_pow(n), || format!("f/t^{n} vanishing mismatch for {f}"))
        }),
        ("a_linearity", |inst, rng| {
            let big_n = inst.precision();
            let n = level(inst, rng);
            let (c, f) = (random::series(inst.field(), big_n, rng), random::series(inst.field(), big_n, rng));
            let lhs = lift(lift(LaurentTail::from_fraction(&f, n))?.scale(&c))?;
            let rhs = lift(LaurentTail::from_fraction(&(&c * &f), n))?;
            ensure(lhs == rhs, || format!("c (f/t^{n}) != (cf)/t^{n} for c = {c}, f = {f}"))
        }),
    ]
}

// ---------------------------------------------------------------- ring

fn ring_properties<F: CoeffField>() -> Vec<Property<F>> {
    vec![
        ("embed_multiplicative", |inst, rng| {
            let m = level(inst, rng);
            let (f, g) =
                (random::normal_form(inst.field(), m, rng), random::normal_form(inst.field(), m, rng));
            let lhs = lift(inst.nf_embed(&lift(inst.nf_mul(&f, &g))?))?;
            let rhs = &lift(inst.nf_embed(&f))? * &lift(inst.nf_embed(&g))?;
            ensure(lhs == rhs, || format!("embed(fg) != embed(f) embed(g) for {f}, {g}"))
        }),
        ("embed_additive", |inst, rng| {
            let m = level(inst, rng);
            let (f, g) =
                (random::normal_form(inst.field(), m, rng), random::normal_form(inst.field(), m, rng));
            let lhs = lift(inst.nf_embed(&lift(f.add(&g))?))?;
            let rhs = &lift(inst.nf_embed(&f))? + &lift(inst.nf_embed(&g))?;
            ensure(lhs == rhs, || format!("embed(f+g) != embed(f) + embed(g) for {f}, {g}"))
        }),
        ("reduction_index_independence", |inst, rng| {
            let m = level(inst, rng);
            let (f, g) =
                (random::normal_form(inst.field(), m, rng), random::normal_form(inst.field(), m, rng));
            let base = lift(inst.nf_mul(&f, &g))?;
            for r in inst.reduction_index(m)..=inst.max_index() {
                let other = lift(inst.nf_mul_with_index(&f, &g, r))?;
                ensure(other == base, || format!("r = {r} changes {f} * {g}"))?;
            }
            Ok(())
        }),
        ("inverse_law", |inst, rng| {
            let m = level(inst, rng);
            let f = random::unit_normal_form(inst.field(), m, rng);
            let prod = lift(inst.nf_mul(&f, &lift(inst.nf_invert(&f))?))?;
            ensure(prod == NormalForm::one(inst.field(), m), || format!("f f^-1 != 1 for {f}"))
        }),
        ("generator_consistency", |inst, rng| {
            let m = level(inst, rng);
            let gens = random::usable_generators(inst, m);
            if gens.is_empty() {
                return Ok(());
            }
            let i = gens[rng.gen_range(0..gens.len())];
            let got = lift(inst.nf_embed(&lift(inst.generator_nf(i, m))?))?;
            // (z - a_0 - s_i) / t^{n_i} = z_i - a_i, squared, from the raw exponent data.
            let n_i = inst.exponents()[i];
            let p = m + n_i;
            let tail_terms =
                inst.exponents().iter().zip(inst.units()).skip(i + 1).map(|(&e, a)| (e, a.clone()));
            let z_i = lift(TruncatedSeries::from_terms(inst.field(), tail_terms, p).shift(-(n_i as isize)))?;
            let expected = &z_i * &z_i;
            ensure(got == expected, || format!("g_{i} at level {m}: {got} != {expected}"))
        }),
        ("exponent_growth", |inst, _rng| {
            for (r, &n) in inst.exponents().iter().enumerate() {
                ensure(n + 2 >= 1usize << (r + 1), || format!("n_{r} = {n} < 2^{} - 2", r + 1))?;
            }
            Ok(())
        }),
    ]
}

// ---------------------------------------------------------------- cohomology

fn raised<F: CoeffField>(omega: &H1Class<F>, k: usize) -> Result<H1Class<F>> {
    let n = omega.exponent() + k;
    H1Class::new(&omega.numerator_at(n)?, n)
}

fn cohomology_properties<F: CoeffField>() -> Vec<Property<F>> {
    vec![
        ("equivalence", |inst, rng| {
            let big_n = inst.precision();
            let a = random::h1_class(inst.field(), big_n, rng);
            let b = lift(raised(&a, rng.gen_range(0..=big_n - a.exponent())))?;
            let c = lift(raised(&a, rng.gen_range(0..=big_n - a.exponent())))?;
            let d = random::h1_class(inst.field(), big_n, rng);
            ensure(a.equals(&a) && a.equals(&b) && b.equals(&a) && b.equals(&c) && a.equals(&c), || {
                format!("raised representatives of {a} are not equal")
            })?;
            ensure(a.equals(&d) == (a == d), || format!("equals disagrees with canonical form: {a}, {d}"))?;
            ensure(d.is_zero() == d.equals(&H1Class::zero(inst.field())), || format!("zero test for {d}"))
        }),
        ("annihilation", |inst, rng| {
            let omega = random::h1_class(inst.field(), inst.precision(), rng);
            let n = omega.exponent();
            let t_pow = |k: usize| NormalForm::from_a(TruncatedSeries::t(inst.field(), n).pow(k as u32));
            ensure(lift(inst.h1_act(&t_pow(n), &omega))?.is_zero(), || {
                format!("t^{n} does not kill {omega}")
            })?;
            if !omega.is_zero() {
                ensure(!lift(inst.h1_act(&t_pow(n - 1), &omega))?.is_zero(), || {
                    format!("t^{} already kills reduced {omega}", n - 1)
                })?;
            }
            Ok(())
        }),
        ("action_compatibility", |inst, rng| {
            let big_n = inst.precision();
            let omega = random::h1_class(inst.field(), big_n, rng);
            let (f, g) = (
                random::normal_form(inst.field(), big_n, rng),
                random::normal_form(inst.field(), big_n, rng),
            );
            let lhs = lift(inst.h1_act(&lift(inst.nf_mul(&f, &g))?, &omega))?;
            let rhs = lift(inst.h1_act(&f, &lift(inst.h1_act(&g, &omega))?))?;
            ensure(lhs == rhs, || format!("(fg)ω != f(gω) for f = {f}, g = {g}, ω = {omega}"))
        }),
        ("raising_invariance", |inst, rng| {
            let n = rng.gen_range(1..inst.precision());
            let f = random::normal_form(inst.field(), n, rng);
            let tf = lift(NormalForm::new(f.x().raise(1), f.y().raise(1)))?;
            ensure(lift(H1Class::new(&f, n))? == lift(H1Class::new(&tf, n + 1))?, || {
                format!("f/t^{n} != tf/t^{} for {f}", n + 1)
            })
        }),
        ("bilinearity", |inst, rng| {
            let big_n = inst.precision();
            let (a, b) =
                (random::h1_class(inst.field(), big_n, rng), random::h1_class(inst.field(), big_n, rng));
            let f = random::normal_form(inst.field(), big_n, rng);
            let lhs = lift(inst.h1_act(&f, &a.add(&b)))?;
            let rhs = lift(inst.h1_act(&f, &a))?.add(&lift(inst.h1_act(&f, &b))?);
            ensure(lhs == rhs, || format!("f(a+b) != fa + fb for f = {f}, a = {a}, b = {b}"))
        }),
    ]
}

// ---------------------------------------------------------------- duality

fn duality_properties<F: CoeffField>() -> Vec<Property<F>> {
    vec![
        ("residue_well_defined", |inst, rng| {
            let big_n = inst.precision();
            let pair = random::pair(inst.field(), big_n, rng.gen_bool(0.5), rng);
            let omega = random::h1_class(inst.field(), big_n, rng);
            let base = lift(inst.residue(&pair, &omega))?;
            let n = rng.gen_range(omega.exponent()..=big_n);
            ensure(lift(inst.residue_at(&pair, &omega, n))? == base, || {
                format!("residue of {omega} changes when written over t^{n}")
            })
        }),
        ("residue_a_linear", |inst, rng| {
            let big_n = inst.precision();
            let pair = random::pair(inst.field(), big_n, rng.gen_bool(0.5), rng);
            let (w1, w2) =
                (random::h1_class(inst.field(), big_n, rng), random::h1_class(inst.field(), big_n, rng));
            let a = random::series(inst.field(), big_n, rng);
            let lhs = lift(inst.residue(&pair, &lift(w1.scale(&a))?.add(&w2)))?;
            let rhs = lift(lift(inst.residue(&pair, &w1))?.scale(&a))?.add(&lift(inst.residue(&pair, &w2))?);
            ensure(lhs == rhs, || format!("res(a w1 + w2) mismatch for a = {a}, w1 = {w1}, w2 = {w2}"))
        }),
        ("phi_defining_identity", |inst, rng| {
            let big_n = inst.precision();
            let pair = random::pair(inst.field(), big_n, rng.gen_bool(0.5), rng);
            let omega = random::h1_class(inst.field(), big_n, rng);
            let f = random::normal_form(inst.field(), big_n, rng);
            let lhs = lift(lift(inst.phi(&pair, &omega))?.eval(&f))?;
            let rhs = lift(inst.residue(&pair, &lift(inst.h1_act(&f, &omega))?))?;
            ensure(lhs == rhs, || format!("Φ(ω)(f) != res(fω) for {pair}, {omega}, {f}"))
        }),
        ("roundtrip_classes", |inst, rng| {
            let big_n = inst.precision();
            let pair = random::pair(inst.field(), big_n, true, rng);
            let omega = random::h1_class(inst.field(), big_n, rng);
            let back = lift(inst.phi_inverse(&pair, &lift(inst.phi(&pair, &omega))?))?;
            ensure(back == omega, || format!("Φ^-1(Φ(ω)) = {back} != {omega} for {pair}"))
        }),
        ("roundtrip_homs", |inst, rng| {
            let big_n = inst.precision();
            let pair = random::pair(inst.field(), big_n, true, rng);
            let hom = random::hom(inst.field(), big_n, rng);
            let back = lift(inst.phi(&pair, &lift(inst.phi_inverse(&pair, &hom))?))?;
            ensure(back == hom, || format!("Φ(Φ^-1(φ)) = {back} != {hom} for {pair}"))
        }),
        ("phi_cm_linear", |inst, rng| {
            let big_n = inst.precision();
            let pair = random::pair(inst.field(), big_n, rng.gen_bool(0.5), rng);
            let omega = random::h1_class(inst.field(), big_n, rng);
            let f = random::normal_form(inst.field(), big_n, rng);
            let lhs = lift(inst.phi(&pair, &lift(inst.h1_act(&f, &omega))?))?;
            let rhs = lift(inst.phi(&pair, &omega))?;
            let probes = [
                NormalForm::one(inst.field(), big_n),
                NormalForm::w(inst.field(), big_n),
                random::normal_form(inst.field(), big_n, rng),
            ];
            for g in &probes {
                let a = lift(lhs.eval(g))?;
                let b = lift(rhs.eval(&lift(inst.nf_mul(&f, g))?))?;
                ensure(a == b, || format!("Φ(fω)(g) != Φ(ω)(fg) for f = {f}, ω = {omega}, g = {g}"))?;
            }
            Ok(())
        }),
        ("pair_additivity", |inst, rng| {
            let big_n = inst.precision();
            let p1 = random::pair(inst.field(), big_n, rng.gen_bool(0.5), rng);
            let p2 = random::pair(inst.field(), big_n, rng.gen_bool(0.5), rng);
            let omega = random::h1_class(inst.field(), big_n, rng);
            let lhs = lift(inst.phi(&lift(p1.add(&p2))?, &omega))?;
            let rhs = lift(inst.phi(&p1, &omega))?.add(&lift(inst.phi(&p2, &omega))?);
            ensure(lhs == rhs, || format!("Φ_(p1+p2) != Φ_p1 + Φ_p2 at {omega}"))
        }),
        ("endomorphism_classification", |inst, rng| {
            let big_n = inst.precision();
            let p1 = random::pair(inst.field(), big_n, rng.gen_bool(0.5), rng);
            let p2 = random::pair(inst.field(), big_n, rng.gen_bool(0.5), rng);
            let f = random::normal_form(inst.field(), big_n, rng);
            let blackbox = |omega: &H1Class<F>| -> Result<_> {
                let twisted = inst.phi(&p2, &inst.h1_act(&f, omega)?)?;
                Ok(inst.phi(&p1, omega)?.add(&twisted))
            };
            let extracted = lift(inst.endo_extract(blackbox, big_n))?;
            for _ in 0..4 {
                let omega = random::h1_class(inst.field(), big_n, rng);
                let expected = lift(blackbox(&omega))?;
                ensure(lift(inst.phi(&extracted, &omega))? == expected, || {
                    format!("extracted {extracted} disagrees with the map at {omega}")
                })?;
            }
            Ok(())
        }),
    ]
}

// ---------------------------------------------------------------- completion

fn completion_properties<F: CoeffField>() -> Vec<Property<F>> {
    vec![
        ("ring_axioms", |inst, rng| {
            let big_n = inst.precision();
            let f = inst.field();
            let (a, b, c) = (
                random::completion(f, big_n, rng),
                random::completion(f, big_n, rng),
                random::completion(f, big_n, rng),
            );
            let ab_c = lift(inst.comp_mul(&lift(inst.comp_mul(&a, &b))?, &c))?;
            let a_bc = lift(inst.comp_mul(&a, &lift(inst.comp_mul(&b, &c))?))?;
            ensure(ab_c == a_bc, || format!("associativity fails for {a}, {b}, {c}"))?;
            ensure(lift(inst.comp_mul(&a, &b))? == lift(inst.comp_mul(&b, &a))?, || {
                format!("commutativity fails for {a}, {b}")
            })?;
            let lhs = lift(inst.comp_mul(&a, &lift(b.add(&c))?))?;
            let rhs = lift(lift(inst.comp_mul(&a, &b))?.add(&lift(inst.comp_mul(&a, &c))?))?;
            ensure(lhs == rhs, || format!("distributivity fails for {a}, {b}, {c}"))
        }),
        ("nilpotent_square", |inst, _rng| {
            let eps = lift(CompletionElement::new(
                inst.w().clone(),
                TruncatedSeries::one(inst.field(), inst.precision()),
            ))?;
            let sq = lift(inst.comp_mul(&eps, &eps))?;
            ensure(sq.is_zero(), || format!("(X + t(z - a_0))^2 = {sq}, expected 0"))
        }),
        ("closed_form_matches_composition", |inst, rng| {
            let big_n = inst.precision();
            let (u, v) =
                (random::completion(inst.field(), big_n, rng), random::completion(inst.field(), big_n, rng));
            let one = CompletionElement::one(inst.field(), big_n);
            let closed = lift(inst.comp_mul(&u, &v))?;
            let composed = lift(inst.comp_mul_general(&u, &v, &one))?;
            ensure(closed == composed, || format!("{u} * {v}: closed {closed} != composed {composed}"))
        }),
        ("general_unit_law", |inst, rng| {
            let big_n = inst.precision();
            let u = random::completion(inst.field(), big_n, rng);
            let unit = CompletionElement::from_pair(&random::pair(inst.field(), big_n, true, rng));
            ensure(lift(inst.comp_mul_general(&u, &unit, &unit))? == u, || {
                format!("{unit} is not a unit for {u}")
            })
        }),
        ("embed_homomorphism", |inst, rng| {
            let big_n = inst.precision();
            let (f, g) = (
                random::normal_form(inst.field(), big_n, rng),
                random::normal_form(inst.field(), big_n, rng),
            );
            let lhs = lift(inst.comp_embed(&lift(inst.nf_mul(&f, &g))?))?;
            let rhs = lift(inst.comp_mul(&lift(inst.comp_embed(&f))?, &lift(inst.comp_embed(&g))?))?;
            ensure(lhs == rhs, || format!("embed(fg) != embed(f) embed(g) for {f}, {g}"))?;
            let lhs = lift(inst.comp_embed(&lift(f.add(&g))?))?;
            let rhs = lift(lift(inst.comp_embed(&f))?.add(&lift(inst.comp_embed(&g))?))?;
            ensure(lhs == rhs, || format!("embed(f+g) != embed(f) + embed(g) for {f}, {g}"))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn unknown_suite() {
        let inst = AkizukiInstance::default_rational(31).unwrap();
        assert!(matches!(run_suite(&inst, "bogus", 1, 1), Err(Error::Parse(_))));
    }

    #[test]
    fn report_is_deterministic() {
        let inst =
            AkizukiInstance::new(Rationals, 12, crate::ExponentRule::Minimal, crate::UnitRule::Ones).unwrap();
        let a = run_suite(&inst, "cohomology", 3, 5).unwrap();
        let b = run_suite(&inst, "cohomology", 3, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{a}");
    }
}
