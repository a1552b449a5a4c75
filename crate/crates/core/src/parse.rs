//! Text formats: series and tail literals, generalized-fraction and hom
//! literals, generator expressions, and instance configuration files.
//!
//! Series: `<term> (("+"|"-") <term>)*` with `<term>` one of `c`, `c*t^e`,
//! `c t^e` (juxtaposed), `t^e` or `t`, and `c` an integer or `p/q`. Tails use
//! the same grammar with negative exponents only.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cohomology::H1Class;
use crate::completion::CompletionElement;
use crate::duality::{ContinuousHom, ResiduePair};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::field::{CoeffField, PrimeField, Rationals};
use crate::instance::{AkizukiInstance, ExponentRule, UnitRule};
use crate::series::{LaurentTail, TruncatedSeries};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_non_ws(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_non_ws() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(format!("expected '{c}' at offset {} in {:?}", self.pos, self.src)))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek_non_ws().is_none()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn uint(&mut self) -> Result<BigInt> {
        let d = self.digits().ok_or_else(|| perr(format!("expected digits at offset {}", self.pos)))?;
        Ok(BigInt::from_str(d).expect("ascii digits"))
    }

    fn small_uint(&mut self) -> Result<usize> {
        let d = self.digits().ok_or_else(|| perr(format!("expected digits at offset {}", self.pos)))?;
        d.parse().map_err(|_| perr(format!("integer {d} too large")))
    }

    fn signed_exponent(&mut self) -> Result<i64> {
        let negative = self.eat('-');
        let d = self.digits().ok_or_else(|| perr("expected exponent"))?;
        let e: i64 = d.parse().map_err(|_| perr(format!("exponent {d} too large")))?;
        Ok(if negative { -e } else { e })
    }
}

/// `(exponent, coefficient)` pairs of a series or tail literal.
fn parse_terms(src: &str) -> Result<Vec<(i64, BigRational)>> {
    let mut cur = Cursor::new(src);
    let mut terms = Vec::new();
    if cur.at_end() {
        return Err(perr("empty series literal"));
    }
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') || first {
            false
        } else {
            return Err(perr(format!("expected '+' or '-' at offset {} in {src:?}", cur.pos)));
        };
        first = false;
        let (exp, mut coeff) = parse_term(&mut cur)?;
        if negative {
            coeff = -coeff;
        }
        terms.push((exp, coeff));
        if cur.at_end() {
            break;
        }
    }
    Ok(terms)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(i64, BigRational)> {
    let mut coeff = BigRational::one();
    let mut has_coeff = false;
    if cur.peek_non_ws().is_some_and(|c| c.is_ascii_digit()) {
        let num = cur.uint()?;
        let den = if cur.eat('/') { cur.uint()? } else { BigInt::one() };
        if den.is_zero() {
            return Err(perr("zero denominator"));
        }
        coeff = BigRational::new(num, den);
        has_coeff = true;
    }
    let star = has_coeff && cur.eat('*');
    if cur.eat('t') {
        let exp = if cur.eat('^') { cur.signed_exponent()? } else { 1 };
        Ok((exp, coeff))
    } else if star || !has_coeff {
        Err(perr(format!("expected 't' at offset {}", cur.pos)))
    } else {
        Ok((0, coeff))
    }
}

fn to_elem<F: CoeffField>(field: &F, c: &BigRational) -> Result<F::Elem> {
    field.from_ratio(c.numer(), c.denom()).map_err(|e| perr(e.to_string()))
}

/// A series literal at the given precision; terms at or beyond it are dropped.
pub fn parse_series<F: CoeffField>(field: &F, src: &str, precision: usize) -> Result<TruncatedSeries<F>> {
    let mut terms = Vec::new();
    for (e, c) in parse_terms(src)? {
        if e < 0 {
            return Err(perr(format!("negative exponent {e} in a power series")));
        }
        terms.push((e as usize, to_elem(field, &c)?));
    }
    Ok(TruncatedSeries::from_terms(field, terms, precision))
}

/// A principal part such as `t^-2 + 2t^-1`, or `0`.
pub fn parse_tail<F: CoeffField>(field: &F, src: &str) -> Result<LaurentTail<F>> {
    let mut terms = Vec::new();
    for (e, c) in parse_terms(src)? {
        if e == 0 && c.is_zero() {
            continue;
        }
        if e >= 0 {
            return Err(perr(format!("exponent {e} in a principal part")));
        }
        terms.push((e.unsigned_abs() as usize, to_elem(field, &c)?));
    }
    Ok(LaurentTail::from_terms(field, terms))
}

/// Splits `name(a;b;c)` into its `;`-separated arguments.
fn literal_args<'a>(src: &'a str, name: &str, arity: usize) -> Result<Vec<&'a str>> {
    let s = src.trim();
    let inner = s
        .strip_prefix(name)
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('('))
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| perr(format!("expected {name}(...), got {s:?}")))?;
    let args: Vec<&str> = inner.split(';').map(str::trim).collect();
    if args.len() != arity {
        return Err(perr(format!("{name}(...) takes {arity} arguments, got {}", args.len())));
    }
    Ok(args)
}

fn parse_level(src: &str) -> Result<usize> {
    src.trim().parse().map_err(|_| perr(format!("invalid level {src:?}")))
}

/// `gf(X; Y; n)`, the class `⌈(X + Y w) / t^n⌉`.
pub fn parse_h1<F: CoeffField>(field: &F, src: &str) -> Result<H1Class<F>> {
    let args = literal_args(src, "gf", 3)?;
    let n = parse_level(args[2])?;
    if n == 0 {
        return Ok(H1Class::zero(field));
    }
    H1Class::from_parts(parse_series(field, args[0], n)?, parse_series(field, args[1], n)?)
}

/// `hom(n; alpha; beta)`.
pub fn parse_hom<F: CoeffField>(field: &F, src: &str) -> Result<ContinuousHom<F>> {
    let args = literal_args(src, "hom", 3)?;
    let n = parse_level(args[0])?;
    let p = n.max(1);
    ContinuousHom::new(n, &parse_series(field, args[1], p)?, &parse_series(field, args[2], p)?)
}

/// `pair(sigma; rho)` at precision `N`.
pub fn parse_pair<F: CoeffField>(field: &F, src: &str, precision: usize) -> Result<ResiduePair<F>> {
    let args = literal_args(src, "pair", 2)?;
    ResiduePair::new(parse_series(field, args[0], precision)?, parse_series(field, args[1], precision)?)
}

/// `comp(rho; sigma)` at precision `N`.
pub fn parse_comp<F: CoeffField>(field: &F, src: &str, precision: usize) -> Result<CompletionElement<F>> {
    let args = literal_args(src, "comp", 2)?;
    CompletionElement::new(parse_series(field, args[0], precision)?, parse_series(field, args[1], precision)?)
}

/// A generator expression: atoms `t`, `w`, `g0`, `g1`, ..., integer constants,
/// `+ - * /`, parentheses and `^k` powers.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut cur = Cursor::new(src);
    let e = expr_sum(&mut cur)?;
    if !cur.at_end() {
        return Err(perr(format!("unexpected input at offset {} in {src:?}", cur.pos)));
    }
    Ok(e)
}

fn expr_sum(cur: &mut Cursor<'_>) -> Result<Expr> {
    let mut lhs = expr_product(cur)?;
    loop {
        if cur.eat('+') {
            lhs = Expr::add(lhs, expr_product(cur)?);
        } else if cur.eat('-') {
            lhs = Expr::sub(lhs, expr_product(cur)?);
        } else {
            return Ok(lhs);
        }
    }
}

fn expr_product(cur: &mut Cursor<'_>) -> Result<Expr> {
    let mut lhs = expr_unary(cur)?;
    loop {
        if cur.eat('*') {
            lhs = Expr::mul(lhs, expr_unary(cur)?);
        } else if cur.eat('/') {
            lhs = Expr::div(lhs, expr_unary(cur)?);
        } else if matches!(cur.peek_non_ws(), Some('t' | 'w' | 'g' | '(')) {
            // juxtaposition, as in `2t^3` or `3(w + t)`
            lhs = Expr::mul(lhs, expr_unary(cur)?);
        } else {
            return Ok(lhs);
        }
    }
}

fn expr_unary(cur: &mut Cursor<'_>) -> Result<Expr> {
    if cur.eat('-') {
        return Ok(Expr::Neg(Box::new(expr_unary(cur)?)));
    }
    expr_power(cur)
}

fn expr_power(cur: &mut Cursor<'_>) -> Result<Expr> {
    let base = expr_atom(cur)?;
    if cur.eat('^') {
        let k = cur.small_uint()?;
        let k = u32::try_from(k).map_err(|_| perr("exponent too large"))?;
        return Ok(Expr::pow(base, k));
    }
    Ok(base)
}

fn expr_atom(cur: &mut Cursor<'_>) -> Result<Expr> {
    match cur.peek_non_ws() {
        Some('(') => {
            cur.expect('(')?;
            let e = expr_sum(cur)?;
            cur.expect(')')?;
            Ok(e)
        }
        Some('t') => {
            cur.pos += 1;
            Ok(Expr::T)
        }
        Some('w') => {
            cur.pos += 1;
            Ok(Expr::W)
        }
        Some('g') => {
            cur.pos += 1;
            let i = cur.small_uint().map_err(|_| perr("expected generator index after 'g'"))?;
            Ok(Expr::Gen(i))
        }
        Some(c) if c.is_ascii_digit() => Ok(Expr::Const(BigRational::from_integer(cur.uint()?))),
        Some(c) => Err(perr(format!("unexpected {c:?} at offset {}", cur.pos))),
        None => Err(perr("unexpected end of expression")),
    }
}

/// Coefficient field named in a configuration file or on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        let p =
            s.strip_prefix("fp:").ok_or_else(|| perr(format!("unknown field {s:?}; use q or fp:<prime>")))?;
        let p: u64 = p.trim().parse().map_err(|_| perr(format!("invalid prime {p:?}")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

/// Contents of an instance configuration file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceConfig {
    pub field: FieldSpec,
    pub precision: usize,
    pub exponents: ExponentRule,
    /// `None` means every `a_i = 1`.
    pub units: Option<Vec<BigRational>>,
}

impl Default for InstanceConfig {
    fn default() -> Self {
        Self { field: FieldSpec::Rationals, precision: 31, exponents: ExponentRule::Minimal, units: None }
    }
}

impl InstanceConfig {
    /// Parses `key = value` lines; `#` starts a comment. Unset keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| perr(format!("line {}: expected key = value", lineno + 1)))?;
            let value = value.trim();
            match key.trim() {
                "field" => cfg.field = value.parse()?,
                "precision" => {
                    cfg.precision =
                        value.parse().map_err(|_| perr(format!("line {}: invalid precision", lineno + 1)))?
                }
                "exponents" => {
                    cfg.exponents = if value == "minimal" {
                        ExponentRule::Minimal
                    } else {
                        ExponentRule::Explicit(
                            value
                                .split(',')
                                .map(|s| s.trim().parse::<usize>())
                                .collect::<std::result::Result<_, _>>()
                                .map_err(|_| perr(format!("line {}: invalid exponents", lineno + 1)))?,
                        )
                    }
                }
                "units" => {
                    let units = value
                        .split(',')
                        .map(|s| {
                            let terms = parse_terms(s)?;
                            match terms.as_slice() {
                                [(0, c)] => Ok(c.clone()),
                                _ => Err(perr(format!("unit {s:?} must be a constant"))),
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    cfg.units = Some(units);
                }
                other => return Err(perr(format!("line {}: unknown key {other:?}", lineno + 1))),
            }
        }
        Ok(cfg)
    }

    pub fn build<F: CoeffField>(&self, field: F) -> Result<AkizukiInstance<F>> {
        let units = match &self.units {
            None => UnitRule::Ones,
            Some(us) => {
                UnitRule::Explicit(us.iter().map(|c| to_elem(&field, c)).collect::<Result<Vec<_>>>()?)
            }
        };
        AkizukiInstance::new(field, self.precision, self.exponents.clone(), units)
    }

    pub fn build_rational(&self) -> Result<AkizukiInstance<Rationals>> {
        self.build(Rationals)
    }
}
