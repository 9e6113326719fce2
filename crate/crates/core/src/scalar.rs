//! Exact arithmetic in the coefficient field: rational functions in one
//! formal parameter over the integers, always stored reduced.
//!
//! Two parameter contexts are used. The generic one works in `Q(t)` with
//! `k = t^2 - 1` and `l = t^{-2} - 3`, so that `(k+1)(l+3) = 1` holds
//! identically and `sqrt(k+1) = t` is a genuine element of the field. The
//! limit one works in `Q(s)` with `l = s^{-2}`, `sqrt(l) = s^{-1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("pole at substitution point: denominator {denominator} vanishes at {at}")]
    Pole { denominator: String, at: String },
    #[error("unknown parameter symbol `{0}` in this context")]
    UnknownSymbol(String),
    #[error("scalar parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

/// Dense integer-coefficient polynomial; `coeffs[i]` is the coefficient of
/// the i-th power. No trailing zeros are stored, so zero is the empty vec.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(BigInt::from(c))
    }

    /// The monomial `c * x^deg`.
    pub fn monomial(deg: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn var() -> Self {
        Poly::monomial(1, BigInt::one())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// gcd of all coefficients, with the sign of the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.leading().is_negative() {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let c = self.content();
        self.div_int_exact(&c)
    }

    fn div_int_exact(&self, c: &BigInt) -> Self {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    debug_assert!(r.is_zero());
                    q
                })
                .collect(),
        }
    }

    /// Pseudo-remainder of `self` by `d`: rem of `lc(d)^(deg self - deg d + 1) * self`.
    fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero");
        let mut r = self.clone();
        let lc = d.leading();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            let rl = r.leading();
            // r := lc*r - rl * x^shift * d
            let mut coeffs = vec![BigInt::zero(); dr + 1];
            for (i, c) in r.coeffs.iter().enumerate() {
                coeffs[i] = c * &lc;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                coeffs[i + shift] -= c * &rl;
            }
            r = Poly { coeffs };
            r.trim();
        }
        r
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let dd = d.degree().expect("division by zero polynomial");
        let dn = self.degree().unwrap();
        assert!(dn >= dd, "inexact polynomial division");
        let lc = d.leading();
        let mut rem = self.clone();
        let mut q = vec![BigInt::zero(); dn - dd + 1];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let (qc, r) = rem.leading().div_rem(&lc);
            assert!(r.is_zero(), "inexact polynomial division");
            let shift = dr - dd;
            q[shift] = qc.clone();
            let mut coeffs = rem.coeffs.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                coeffs[i + shift] -= c * &qc;
            }
            rem = Poly { coeffs };
            rem.trim();
        }
        assert!(rem.is_zero(), "inexact polynomial division");
        let mut p = Poly { coeffs: q };
        p.trim();
        p
    }

    /// Polynomial gcd over the integers via the primitive PRS, normalized to
    /// positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return if other.leading().is_negative() {
                other.neg()
            } else {
                other.clone()
            };
        }
        if other.is_zero() {
            return if self.leading().is_negative() {
                self.neg()
            } else {
                self.clone()
            };
        }
        let cont = self.content().abs().gcd(&other.content().abs());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                let mut g = b.primitive_part().mul_int(&cont);
                if g.leading().is_negative() {
                    g = g.neg();
                }
                return g;
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Evaluate with the variable replaced by an arbitrary scalar.
    pub fn eval(&self, v: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(v).add(&Scalar::from_bigint(c.clone()));
        }
        acc
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (pos, (i, c)) in self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .enumerate()
        {
            let mag = c.abs();
            if pos == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            if i > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{}", i));
                }
            }
        }
        out
    }
}

/// An element of the fraction field of `Z[x]`: kept reduced, denominator
/// primitive with positive leading coefficient. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Scalar {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Scalar { num, den }
    }

    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Scalar {
            num: Poly::from_int(c),
            den: Poly::one(),
        }
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "rational with zero denominator");
        Scalar::reduced(Poly::from_int(p), Poly::from_int(q))
    }

    /// The active parameter itself.
    pub fn param() -> Self {
        Scalar {
            num: Poly::var(),
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    pub fn neg(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Scalar::reduced(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Scalar::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduced(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Scalar::one().div(self)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        if e >= 0 {
            Ok(Scalar {
                num: self.num.pow(e as u32),
                den: self.den.pow(e as u32),
            })
        } else {
            self.inv()?.pow(-e)
        }
    }

    /// Substitute the active parameter by `value`; errors if `value` is a
    /// pole of this rational function.
    pub fn substitute(&self, value: &Scalar) -> Result<Self, ScalarError> {
        let den = self.den.eval(value);
        if den.is_zero() {
            return Err(ScalarError::Pole {
                denominator: self.den.render("x"),
                at: value.to_string(),
            });
        }
        self.num.eval(value).div(&den)
    }

    /// Render with an explicit variable name instead of the generic `x`.
    pub fn render(&self, var: &str) -> String {
        if self.den == Poly::one() {
            self.num.render(var)
        } else {
            format!("({})/({})", self.num.render(var), self.den.render(var))
        }
    }

    /// Rewrite as a rational function in `k` (with `x^2 = k + 1`), when both
    /// numerator and denominator only involve even powers of the parameter.
    pub fn render_in_k(&self) -> Option<String> {
        let num = poly_even_to_k(&self.num)?;
        let den = poly_even_to_k(&self.den)?;
        if den == Poly::one() {
            Some(num.render("k"))
        } else {
            Some(format!("({})/({})", num.render("k"), den.render("k")))
        }
    }
}

/// For a polynomial in even powers of `t`, substitute `t^2 = k + 1` and
/// return the result as a polynomial in `k`. `None` if odd powers occur.
fn poly_even_to_k(p: &Poly) -> Option<Poly> {
    let mut out = Poly::zero();
    let kp1 = Poly {
        coeffs: vec![BigInt::one(), BigInt::one()],
    };
    for (i, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if i % 2 != 0 {
            return None;
        }
        out = out.add(&kp1.pow((i / 2) as u32).mul_int(c));
    }
    Some(out)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// The two parameter regimes of the engine. Exactly one is active per
/// computation; the bindings of one never mix with the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterContext {
    name: &'static str,
    bindings: Vec<(&'static str, Scalar)>,
}

impl ParameterContext {
    /// `Q(t)` with `k = t^2 - 1`, `l = t^{-2} - 3`, `sqrt(k+1) = t`.
    pub fn generic() -> Self {
        let t = Scalar::param();
        let k = t.mul(&t).sub(&Scalar::one());
        // l = (1 - 3 t^2) / t^2
        let l = Scalar::one()
            .div(&t.mul(&t))
            .unwrap()
            .sub(&Scalar::from_int(3));
        ParameterContext {
            name: "t",
            bindings: vec![("k", k), ("l", l), ("sqrt(k+1)", t)],
        }
    }

    /// `Q(s)` with `l = s^{-2}`, `sqrt(l) = s^{-1}`.
    pub fn limit() -> Self {
        let s = Scalar::param();
        let l = s.mul(&s).inv().unwrap();
        let sqrt_l = s.inv().unwrap();
        ParameterContext {
            name: "s",
            bindings: vec![("l", l), ("sqrt(l)", sqrt_l)],
        }
    }

    pub fn param_name(&self) -> &'static str {
        self.name
    }

    pub fn lookup(&self, symbol: &str) -> Result<Scalar, ScalarError> {
        if symbol == self.name {
            return Ok(Scalar::param());
        }
        self.bindings
            .iter()
            .find(|(s, _)| *s == symbol)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| ScalarError::UnknownSymbol(symbol.to_string()))
    }

    pub fn k(&self) -> Scalar {
        self.lookup("k").expect("k is only bound in the generic context")
    }

    pub fn l(&self) -> Scalar {
        self.lookup("l").expect("l is bound in both contexts")
    }
}

/// Parse a scalar literal: integers, the context's parameter symbols, and
/// `+ - * / ^` with parentheses. Used for gram-matrix entries and screening
/// weights in JSON configuration documents.
pub fn parse_scalar(text: &str, ctx: &ParameterContext) -> Result<Scalar, ScalarError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut p = ScalarParser {
        chars: &bytes,
        pos: 0,
        ctx,
    };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(ScalarError::Parse {
            offset: p.pos,
            message: "trailing input".to_string(),
        });
    }
    Ok(v)
}

struct ScalarParser<'a> {
    chars: &'a [char],
    pos: usize,
    ctx: &'a ParameterContext,
}

impl<'a> ScalarParser<'a> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).map_or(false, |c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, message: &str) -> ScalarError {
        ScalarError::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn sum(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.product()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some('/') => {
                    self.pos += 1;
                    acc = acc.div(&self.power()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e = i64::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Scalar::from_bigint(n))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .map_or(false, |c| c.is_alphanumeric())
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.ctx.lookup(&name)
            }
            _ => Err(self.err("expected scalar atom")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .map_or(false, |c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sc(text: &str) -> Scalar {
        parse_scalar(text, &ParameterContext::generic()).unwrap()
    }

    #[test]
    fn polynomial_identity() {
        let t = Scalar::param();
        let lhs = t.mul(&t).sub(&Scalar::one()).add(&Scalar::one());
        assert_eq!(lhs, t.mul(&t));
    }

    #[test]
    fn level_relation() {
        // (k+1)(l+3) = 1 in the generic context
        let ctx = ParameterContext::generic();
        let kp1 = ctx.k().add(&Scalar::one());
        let lp3 = ctx.l().add(&Scalar::from_int(3));
        assert_eq!(kp1.mul(&lp3), Scalar::one());
    }

    #[test]
    fn partial_fractions() {
        let t = Scalar::param();
        let a = Scalar::one().div(&t.sub(&Scalar::one())).unwrap();
        let b = Scalar::one().div(&t.add(&Scalar::one())).unwrap();
        let expect = Scalar::from_int(2)
            .mul(&t)
            .div(&t.mul(&t).sub(&Scalar::one()))
            .unwrap();
        assert_eq!(a.add(&b), expect);
    }

    #[test]
    fn substitute_at_point() {
        // a = 6l/(l+3) with l = t^{-2} - 3; at t = 1/2 this is 3/2.
        let ctx = ParameterContext::generic();
        let l = ctx.l();
        let a = Scalar::from_int(6)
            .mul(&l)
            .div(&l.add(&Scalar::from_int(3)))
            .unwrap();
        assert_eq!(
            a.substitute(&Scalar::rational(1, 2)).unwrap(),
            Scalar::rational(3, 2)
        );
    }

    #[test]
    fn substitute_pole_detected() {
        let s = Scalar::param();
        let a = s.inv().unwrap();
        match a.substitute(&Scalar::zero()) {
            Err(ScalarError::Pole { .. }) => {}
            other => panic!("expected pole error, got {:?}", other),
        }
    }

    #[test]
    fn substitute_regular_point() {
        let s = Scalar::param();
        let a = Scalar::one().sub(&Scalar::from_int(3).mul(&s).mul(&s));
        assert_eq!(a.substitute(&Scalar::zero()).unwrap(), Scalar::one());
    }

    #[test]
    fn central_charge_identity() {
        // -6(3k+2) = 6l/(l+3) under (k+1)(l+3) = 1
        let ctx = ParameterContext::generic();
        let k = ctx.k();
        let l = ctx.l();
        let lhs = Scalar::from_int(-6)
            .mul(&Scalar::from_int(3).mul(&k).add(&Scalar::from_int(2)));
        let rhs = Scalar::from_int(6)
            .mul(&l)
            .div(&l.add(&Scalar::from_int(3)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_zero() {
        let a = sc("(3*t^2 - 1)/(t + 7)");
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.sub(&a), Scalar::zero());
    }

    #[test]
    fn division_by_zero_reported() {
        assert_eq!(
            Scalar::one().div(&Scalar::zero()),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn parser_round_trip() {
        let ctx = ParameterContext::generic();
        for text in ["k+1", "-1/(k+1)", "(t^2-1)*t/2", "3/2", "t^-2 - 3"] {
            let v = parse_scalar(text, &ctx).unwrap();
            let again = parse_scalar(&v.render("t"), &ctx).unwrap();
            assert_eq!(v, again, "round trip failed for {}", text);
        }
    }

    #[test]
    fn render_in_k_even_powers() {
        let ctx = ParameterContext::generic();
        let v = Scalar::from_int(-2)
            .mul(&Scalar::from_int(3).mul(&ctx.k()).add(&Scalar::from_int(2)));
        assert_eq!(v.render_in_k().unwrap(), "-6*k - 4");
        assert!(Scalar::param().render_in_k().is_none());
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        // rational functions built from small numerator/denominator polys
        let poly = proptest::collection::vec(-6i64..=6, 1..4);
        (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| {
            let num = n
                .iter()
                .enumerate()
                .fold(Poly::zero(), |acc, (i, c)| {
                    acc.add(&Poly::monomial(i, BigInt::from(*c)))
                });
            let den = d
                .iter()
                .enumerate()
                .fold(Poly::zero(), |acc, (i, c)| {
                    acc.add(&Poly::monomial(i, BigInt::from(*c)))
                });
            if den.is_zero() {
                None
            } else {
                Some(Scalar::new(num, den).unwrap())
            }
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(a.mul(&a.inv().unwrap()), Scalar::one());
            }
        }
    }
}

