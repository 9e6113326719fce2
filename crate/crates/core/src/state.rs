//! States of a vertex superalgebra in PBW normal form.
//!
//! A monomial is an ordered list of letters, each a generator with a
//! derivative order, read as the right-nested normally ordered product
//! applied to the vacuum (or to a Fock highest-weight vector when the state
//! carries a Fock tag). Letters are kept sorted by (ordinal, derivative
//! order descending); anything else must be rewritten on construction, which
//! is the job of the engine in `bracket.rs`.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Koszul sign (-1)^{ p(a) p(b) } as an i64 factor.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

/// A named free-field or current generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSymbol {
    pub name: String,
    pub parity: Parity,
    /// Conformal weight, doubled so that half-integers stay integral.
    pub weight2: u32,
}

impl GeneratorSymbol {
    pub fn even(name: impl Into<String>, weight2: u32) -> Self {
        GeneratorSymbol {
            name: name.into(),
            parity: Parity::Even,
            weight2,
        }
    }

    pub fn odd(name: impl Into<String>, weight2: u32) -> Self {
        GeneratorSymbol {
            name: name.into(),
            parity: Parity::Odd,
            weight2,
        }
    }
}

/// One factor of a monomial: the `der`-th derivative of generator `gen`
/// (identified by its ordinal in the algebra's generator list).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: u16,
    pub der: u16,
}

impl Letter {
    pub fn new(gen: u16, der: u16) -> Self {
        Letter { gen, der }
    }
}

// PBW order: by ordinal, then derivative order *descending*.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.gen
            .cmp(&other.gen)
            .then(other.der.cmp(&self.der))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub type Monomial = Vec<Letter>;

/// Highest weight of a Fock module over the Heisenberg part: mu = sum of
/// coefficients over the Heisenberg generator basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockWeight {
    /// Coefficient of each generator of the algebra (zero on non-Heisenberg
    /// generators).
    pub coefficients: Vec<Scalar>,
    /// Human-readable tag used in rendering and reports.
    pub label: String,
}

/// A finite linear combination of normal-form monomials with exact scalar
/// coefficients. All monomials share the algebra and the optional Fock tag.
#[derive(Debug, Clone)]
pub struct State {
    pub algebra_id: u32,
    pub fock: Option<Arc<FockWeight>>,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl State {
    pub fn zero(algebra_id: u32) -> Self {
        State {
            algebra_id,
            fock: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum(algebra_id: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), Scalar::one());
        State {
            algebra_id,
            fock: None,
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return State {
                algebra_id: self.algebra_id,
                fock: None,
                terms: BTreeMap::new(),
            };
        }
        State {
            algebra_id: self.algebra_id,
            fock: self.fock.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Scalar::from_int(c))
    }

    pub fn neg(&self) -> Self {
        self.scale_int(-1)
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
        if self.terms.is_empty() {
            self.fock = None;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.algebra_id, other.algebra_id);
        debug_assert!(
            self.is_zero() || other.is_zero() || self.fock == other.fock,
            "adding states from different modules"
        );
        let mut out = self.clone();
        if out.is_zero() {
            out.fock = other.fock.clone();
        }
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Coefficient of the vacuum (empty) monomial.
    pub fn vacuum_coefficient(&self) -> Scalar {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn substitute(&self, value: &Scalar) -> Result<State, crate::scalar::ScalarError> {
        let mut out = State::zero(self.algebra_id);
        out.fock = self.fock.clone();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.substitute(value)?);
        }
        if out.terms.is_empty() {
            out.fock = None;
        }
        Ok(out)
    }
}

impl PartialEq for State {
    fn eq(&self, other: &Self) -> bool {
        self.algebra_id == other.algebra_id
            && self.terms == other.terms
            && (self.is_zero() || self.fock == other.fock)
    }
}

impl Eq for State {}

/// Polynomial in the formal lambda with state coefficients, in divided
/// powers: `coeffs[n]` is the coefficient of lambda^n / n!, i.e. the n-th
/// product.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaPolynomial {
    pub algebra_id: u32,
    pub coeffs: Vec<State>,
}

impl LambdaPolynomial {
    pub fn zero(algebra_id: u32) -> Self {
        LambdaPolynomial {
            algebra_id,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(algebra_id: u32, coeffs: Vec<State>) -> Self {
        let mut p = LambdaPolynomial { algebra_id, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |s| s.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The n-th product `A_(n) B` this polynomial encodes.
    pub fn nth(&self, n: usize) -> State {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| State::zero(self.algebra_id))
    }

    pub fn set(&mut self, n: usize, state: State) {
        while self.coeffs.len() <= n {
            self.coeffs.push(State::zero(self.algebra_id));
        }
        self.coeffs[n] = state;
        self.trim();
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.algebra_id, other.algebra_id);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.nth(i).add(&other.nth(i)));
        }
        LambdaPolynomial::from_coeffs(self.algebra_id, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LambdaPolynomial::from_coeffs(
            self.algebra_id,
            self.coeffs.iter().map(|s| s.scale(c)).collect(),
        )
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Scalar::from_int(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&State) -> State) -> Self {
        LambdaPolynomial::from_coeffs(self.algebra_id, self.coeffs.iter().map(f).collect())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}
