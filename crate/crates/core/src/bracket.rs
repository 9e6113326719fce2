//! The lambda-bracket / n-th-product engine.
//!
//! States are kept in PBW normal form (see `state.rs`). The rewriting rules
//! are the standard vertex-superalgebra calculus:
//!
//! * sesquilinearity  `[Ta_l b] = -l [a_l b]`, `[a_l Tb] = (l+T)[a_l b]`;
//! * the non-commutative Wick formula for `[a_l :bc:]`;
//! * the left Wick formula for `[:ab:_l c]`;
//! * quasi-associativity for `(:ab:)_(-1) c`;
//! * adjacent letters are swapped with the Borcherds mode commutator
//!   `[A_(m), B_(n)] = sum_j C(m,j) (A_(j)B)_(m+n-j)`.
//!
//! Lambda polynomials use divided powers `l^(n) = l^n / n!`, so coefficient
//! `n` is exactly the n-th product and no factorial bookkeeping leaks into
//! the recursion.

use crate::algebra::AffineInfo;
use crate::error::Error;
use crate::scalar::{ParameterContext, Scalar};
use crate::state::{
    FockWeight, GeneratorSymbol, LambdaPolynomial, Letter, Monomial, Parity, State,
};
use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::One;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

static NEXT_ALGEBRA_ID: AtomicU32 = AtomicU32::new(1);

pub fn fresh_algebra_id() -> u32 {
    NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed)
}

/// One tensor factor of an algebra, for generator bookkeeping.
#[derive(Debug, Clone)]
pub struct Component {
    pub name: String,
    pub offset: u16,
    pub count: u16,
    pub affine: Option<AffineInfo>,
}

/// A generator list together with the base-case lambda-brackets between
/// generators. Immutable once built; all operations are pure.
pub struct Algebra {
    pub id: u32,
    pub name: String,
    pub context: ParameterContext,
    pub generators: Vec<GeneratorSymbol>,
    pub components: Vec<Component>,
    /// Full matrix of base brackets, row-major `i * n + j` for `[g_i l g_j]`.
    base: Vec<LambdaPolynomial>,
    /// True when every base bracket is a multiple of the vacuum (free
    /// fields); screenings and mode actions require this.
    pub free_field: bool,
    bracket_cache: DashMap<(Monomial, Monomial), Arc<LambdaPolynomial>>,
    nop_cache: DashMap<(Monomial, Monomial), Arc<State>>,
}

/// Builder used by the concrete algebra constructors.
pub struct AlgebraBuilder {
    id: u32,
    name: String,
    context: ParameterContext,
    generators: Vec<GeneratorSymbol>,
    components: Vec<Component>,
    brackets: Vec<((u16, u16), LambdaPolynomial)>,
}

impl AlgebraBuilder {
    pub fn new(name: impl Into<String>, context: ParameterContext) -> Self {
        AlgebraBuilder {
            id: fresh_algebra_id(),
            name: name.into(),
            context,
            generators: Vec::new(),
            components: Vec::new(),
            brackets: Vec::new(),
        }
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn add_generator(&mut self, g: GeneratorSymbol) -> u16 {
        self.generators.push(g);
        (self.generators.len() - 1) as u16
    }

    pub fn add_component(&mut self, name: impl Into<String>, offset: u16, count: u16, affine: Option<AffineInfo>) {
        self.components.push(Component {
            name: name.into(),
            offset,
            count,
            affine,
        });
    }

    /// Record `[g_i l g_j]`; the reflected bracket is filled in by
    /// skew-symmetry at build time if not given explicitly.
    pub fn set_bracket(&mut self, i: u16, j: u16, p: LambdaPolynomial) {
        self.brackets.push(((i, j), p));
    }

    pub fn build(self) -> Result<Arc<Algebra>, Error> {
        let n = self.generators.len();
        let mut seen = std::collections::HashSet::new();
        for g in &self.generators {
            if !seen.insert(g.name.clone()) {
                return Err(Error::NameCollision(g.name.clone()));
            }
        }
        let components = if self.components.is_empty() {
            vec![Component {
                name: self.name.clone(),
                offset: 0,
                count: n as u16,
                affine: None,
            }]
        } else {
            self.components.clone()
        };
        let mut given: Vec<Option<LambdaPolynomial>> = vec![None; n * n];
        for ((i, j), p) in self.brackets {
            given[i as usize * n + j as usize] = Some(p);
        }
        let mut alg = Algebra {
            id: self.id,
            name: self.name,
            context: self.context,
            generators: self.generators,
            components,
            base: vec![LambdaPolynomial::zero(self.id); n * n],
            free_field: false,
            bracket_cache: DashMap::new(),
            nop_cache: DashMap::new(),
        };
        // first pass: copy what was given
        for i in 0..n {
            for j in 0..n {
                if let Some(p) = &given[i * n + j] {
                    alg.base[i * n + j] = p.clone();
                }
            }
        }
        // second pass: complete by skew-symmetry and validate
        for i in 0..n {
            for j in 0..n {
                if given[i * n + j].is_none() {
                    if let Some(p) = &given[j * n + i] {
                        let pi = alg.generators[i].parity;
                        let pj = alg.generators[j].parity;
                        alg.base[i * n + j] = alg.lambda_skew(p, pj, pi);
                    }
                }
            }
        }
        alg.validate()?;
        alg.free_field = alg
            .base
            .iter()
            .all(|p| p.coeffs.iter().all(|s| s.terms.keys().all(|m| m.is_empty())));
        Ok(Arc::new(alg))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VirasoroData {
    pub is_virasoro: bool,
    pub central_charge: Option<Scalar>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalData {
    /// Conformal weight, doubled (so 3 means weight 3/2).
    pub weight2: i64,
    pub primary: bool,
}

pub(crate) fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// lambda^p * lambda^(n) = (n+p)!/n! * lambda^(n+p)
fn rising(n: u64, p: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=p {
        acc *= BigInt::from(n + i);
    }
    acc
}

impl Algebra {
    pub fn gen_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, i: u16) -> &GeneratorSymbol {
        &self.generators[i as usize]
    }

    pub fn find_generator(&self, name: &str) -> Option<u16> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u16)
    }

    /// Single-letter state for a generator.
    pub fn gen_state(&self, i: u16) -> State {
        let mut s = State::zero(self.id);
        s.add_term(vec![Letter::new(i, 0)], Scalar::one());
        s
    }

    pub fn gen_state_by_name(&self, name: &str) -> Result<State, Error> {
        let i = self
            .find_generator(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        Ok(self.gen_state(i))
    }

    pub fn base_bracket(&self, i: u16, j: u16) -> &LambdaPolynomial {
        &self.base[i as usize * self.gen_count() + j as usize]
    }

    pub fn parity_letter(&self, l: Letter) -> Parity {
        self.generators[l.gen as usize].parity
    }

    pub fn parity_mono(&self, m: &Monomial) -> Parity {
        m.iter().fold(Parity::Even, |p, l| p.xor(self.parity_letter(*l)))
    }

    /// Parity of a homogeneous state; `None` if zero or mixed.
    pub fn parity_state(&self, s: &State) -> Option<Parity> {
        let mut it = s.terms.keys().map(|m| self.parity_mono(m));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn weight2_mono(&self, m: &Monomial) -> i64 {
        m.iter()
            .map(|l| self.generators[l.gen as usize].weight2 as i64 + 2 * l.der as i64)
            .sum()
    }

    /// Doubled weight of a homogeneous state; `None` if zero or mixed.
    pub fn weight2_state(&self, s: &State) -> Option<i64> {
        let mut it = s.terms.keys().map(|m| self.weight2_mono(m));
        let first = it.next()?;
        if it.all(|w| w == first) {
            Some(first)
        } else {
            None
        }
    }

    fn check_vacuum_pair(&self, a: &State, b: &State) -> Result<(), Error> {
        if a.algebra_id != self.id || b.algebra_id != self.id {
            return Err(Error::MismatchedAlgebras);
        }
        if a.fock.is_some() || b.fock.is_some() {
            return Err(Error::FockTagged);
        }
        Ok(())
    }

    // ------------------------------------------------------------------
    // derivative
    // ------------------------------------------------------------------

    /// Translation operator T. Leibniz over letters; on a Fock module the
    /// highest-weight vector contributes `mu_(-1) v_mu` as an extra letter.
    pub fn derivative(&self, s: &State) -> State {
        let mut out = State::zero(self.id);
        out.fock = s.fock.clone();
        for (m, c) in &s.terms {
            for i in 0..m.len() {
                let mut letters = m.clone();
                letters[i].der += 1;
                out = out.add(&self.normalize_letters(&letters, c, &s.fock));
            }
            if let Some(mu) = &s.fock {
                for (g, cg) in mu.coefficients.iter().enumerate() {
                    if cg.is_zero() {
                        continue;
                    }
                    let mut letters = m.clone();
                    letters.push(Letter::new(g as u16, 0));
                    out = out.add(&self.normalize_letters(&letters, &c.mul(cg), &s.fock));
                }
            }
        }
        if out.terms.is_empty() {
            out.fock = None;
        }
        out
    }

    fn derivative_n(&self, s: &State, n: u32) -> State {
        let mut out = s.clone();
        for _ in 0..n {
            out = self.derivative(&out);
        }
        out
    }

    /// `T^n A / n!`
    fn derivative_divided(&self, s: &State, n: u32) -> State {
        let inv = Scalar::one()
            .div(&Scalar::from_bigint(factorial(n as u64)))
            .unwrap();
        self.derivative_n(s, n).scale(&inv)
    }

    // ------------------------------------------------------------------
    // normal ordering / PBW rewriting
    // ------------------------------------------------------------------

    /// Bring an arbitrary list of letters into normal form (fold of
    /// `prepend_letter` from the right).
    pub fn normalize_letters(
        &self,
        letters: &[Letter],
        coeff: &Scalar,
        fock: &Option<Arc<FockWeight>>,
    ) -> State {
        let mut acc = {
            let mut s = State::zero(self.id);
            s.fock = fock.clone();
            s.add_term(Vec::new(), Scalar::one());
            s
        };
        for l in letters.iter().rev() {
            acc = self.prepend_letter_state(*l, &acc);
        }
        acc.scale(coeff)
    }

    /// `(d! * g_(-1-d))` applied to a normal-form state: the letter is
    /// inserted at its PBW position, generating commutator corrections.
    pub fn prepend_letter_state(&self, a: Letter, s: &State) -> State {
        let mut out = State::zero(self.id);
        out.fock = s.fock.clone();
        for (m, c) in &s.terms {
            out = out.add(&self.prepend_letter(a, c, m, &s.fock));
        }
        if out.terms.is_empty() {
            out.fock = None;
        }
        out
    }

    fn prepend_letter(
        &self,
        a: Letter,
        coeff: &Scalar,
        m: &Monomial,
        fock: &Option<Arc<FockWeight>>,
    ) -> State {
        let mut out = State::zero(self.id);
        out.fock = fock.clone();
        if m.is_empty() {
            out.add_term(vec![a], coeff.clone());
            return out;
        }
        let b = m[0];
        let rest: Monomial = m[1..].to_vec();
        if a < b {
            let mut letters = Vec::with_capacity(m.len() + 1);
            letters.push(a);
            letters.extend_from_slice(m);
            out.add_term(letters, coeff.clone());
            return out;
        }
        if a == b {
            if !self.parity_letter(a).is_odd() {
                let mut letters = Vec::with_capacity(m.len() + 1);
                letters.push(a);
                letters.extend_from_slice(m);
                out.add_term(letters, coeff.clone());
                return out;
            }
            // equal odd letters: a_(m) a_(m) = 1/2 [a_(m), a_(m)]_+
            let corr = self.swap_correction(a, b, &rest, fock);
            return corr.scale(&coeff.mul(&Scalar::rational(1, 2)));
        }
        // a > b: swap through, with mode-commutator correction
        let kosz = self.parity_letter(a).koszul(self.parity_letter(b));
        let swapped = self.prepend_letter(a, &Scalar::one(), &rest, fock);
        let main = self.prepend_letter_state(b, &swapped).scale_int(kosz);
        let corr = self.swap_correction(a, b, &rest, fock);
        main.add(&corr).scale(coeff)
    }

    /// `sum_j (-1)^j ( T^{j+1} (a_(j) b) / (j+1)! )_(-1)` applied to the
    /// rest of the monomial, where a, b are letter states.
    fn swap_correction(
        &self,
        a: Letter,
        b: Letter,
        rest: &Monomial,
        fock: &Option<Arc<FockWeight>>,
    ) -> State {
        let mut out = State::zero(self.id);
        out.fock = fock.clone();
        let p = self.bracket_letter_letter(a, b);
        for (j, y) in p.coeffs.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let dy = self.derivative_divided(y, (j + 1) as u32);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            out = out.add(&self.nop_state_tagged(&dy, rest, fock).scale_int(sign));
        }
        out
    }

    /// Normally ordered product of an (untagged) state with a monomial that
    /// may live in a Fock module. Only letter prepending and scalar action
    /// are used, so the module makes no difference.
    fn nop_state_tagged(
        &self,
        a: &State,
        b: &Monomial,
        fock: &Option<Arc<FockWeight>>,
    ) -> State {
        let mut out = State::zero(self.id);
        out.fock = fock.clone();
        for (m, c) in &a.terms {
            if m.is_empty() {
                let mut s = State::zero(self.id);
                s.fock = fock.clone();
                s.add_term(b.clone(), c.clone());
                out = out.add(&s);
            } else if fock.is_none() {
                out = out.add(&Arc::unwrap_or_clone(self.nop_mono(m, b)).scale(c));
            } else {
                // composite times tagged monomial: fold letters in directly
                let mut letters = m.clone();
                letters.extend_from_slice(b);
                // valid because quasi-associativity corrections vanish for
                // free fields once the left factor is a plain letter chain
                debug_assert!(self.free_field);
                out = out.add(&self.normalize_letters(&letters, c, fock));
            }
        }
        out
    }

    /// Normally ordered product `A_(-1) B` on the vacuum module.
    pub fn nop(&self, a: &State, b: &State) -> Result<State, Error> {
        self.check_vacuum_pair(a, b)?;
        let mut out = State::zero(self.id);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out = out.add(&Arc::unwrap_or_clone(self.nop_mono(ma, mb)).scale(&ca.mul(cb)));
            }
        }
        Ok(out)
    }

    fn mono_state(&self, m: &Monomial) -> State {
        let mut s = State::zero(self.id);
        s.add_term(m.clone(), Scalar::one());
        s
    }

    fn nop_mono(&self, a: &Monomial, b: &Monomial) -> Arc<State> {
        if a.is_empty() {
            return Arc::new(self.mono_state(b));
        }
        if b.is_empty() {
            return Arc::new(self.mono_state(a));
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.nop_cache.get(&key) {
            return hit.clone();
        }
        let head = a[0];
        let tail: Monomial = a[1..].to_vec();
        let result = if tail.is_empty() {
            self.prepend_letter(head, &Scalar::one(), b, &None)
        } else {
            // quasi-associativity:
            // (:a A':)_(-1) B = a_(-1)(A'_(-1) B)
            //   + sum_n (T^{n+1}a/(n+1)!)_(-1) (A'_(n) B)
            //   + koszul * sum_n (T^{n+1}A'/(n+1)!)_(-1) (a_(n) B)
            let inner = Arc::unwrap_or_clone(self.nop_mono(&tail, b));
            let mut acc = self.prepend_letter_state(head, &inner);
            let tail_bracket = self.bracket_mono(&tail, b);
            for (n, s) in tail_bracket.coeffs.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let da = Letter::new(head.gen, head.der + n as u16 + 1);
                let inv = Scalar::one()
                    .div(&Scalar::from_bigint(factorial(n as u64 + 1)))
                    .unwrap();
                acc = acc.add(&self.prepend_letter_state(da, s).scale(&inv));
            }
            let kosz = self
                .parity_letter(head)
                .koszul(self.parity_mono(&tail));
            let head_bracket = self.bracket_letter_mono(head, b);
            let tail_state = self.mono_state(&tail);
            for (n, s) in head_bracket.coeffs.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let dtail = self.derivative_divided(&tail_state, n as u32 + 1);
                let prod = self.nop(&dtail, s).expect("vacuum module");
                acc = acc.add(&prod.scale_int(kosz));
            }
            acc
        };
        let result = Arc::new(result);
        self.nop_cache.insert(key, result.clone());
        result
    }

    // ------------------------------------------------------------------
    // lambda brackets
    // ------------------------------------------------------------------

    pub fn bracket(&self, a: &State, b: &State) -> Result<LambdaPolynomial, Error> {
        self.check_vacuum_pair(a, b)?;
        let mut out = LambdaPolynomial::zero(self.id);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out = out.add(&self.bracket_mono(ma, mb).scale(&ca.mul(cb)));
            }
        }
        Ok(out)
    }

    fn bracket_states(&self, a: &State, b: &State) -> LambdaPolynomial {
        let mut out = LambdaPolynomial::zero(self.id);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                out = out.add(&self.bracket_mono(ma, mb).scale(&ca.mul(cb)));
            }
        }
        out
    }

    fn bracket_mono(&self, a: &Monomial, b: &Monomial) -> Arc<LambdaPolynomial> {
        if a.is_empty() || b.is_empty() {
            return Arc::new(LambdaPolynomial::zero(self.id));
        }
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.bracket_cache.get(&key) {
            return hit.clone();
        }
        let result = if a.len() == 1 {
            self.bracket_letter_mono(a[0], b)
        } else {
            self.bracket_left_wick(a, b)
        };
        let result = Arc::new(result);
        self.bracket_cache.insert(key, result.clone());
        result
    }

    /// `[:a A':_l B]` by the left Wick formula:
    /// `:(e^{T d/dl} a)[A'_l B]: + k :(e^{T d/dl} A')[a_l B]:`
    /// `+ k Int_0^l [A'_m [a_{l-m} B]] dm`,  k = (-1)^{p(a) p(A')}.
    fn bracket_left_wick(&self, a: &Monomial, b: &Monomial) -> LambdaPolynomial {
        let head = a[0];
        let tail: Monomial = a[1..].to_vec();
        let kosz = self.parity_letter(head).koszul(self.parity_mono(&tail));
        let tail_state = self.mono_state(&tail);
        let mut out = LambdaPolynomial::zero(self.id);

        // :(e^{T d/dl} a)[A'_l B]:
        let p_tail = self.bracket_mono(&tail, b);
        for (m, s) in p_tail.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for j in 0..=m {
                let da = Letter::new(head.gen, head.der + j as u16);
                let inv = Scalar::one()
                    .div(&Scalar::from_bigint(factorial(j as u64)))
                    .unwrap();
                let term = self.prepend_letter_state(da, s).scale(&inv);
                let mut lp = LambdaPolynomial::zero(self.id);
                lp.set(m - j, term);
                out = out.add(&lp);
            }
        }

        // koszul * :(e^{T d/dl} A')[a_l B]:
        let p_head = self.bracket_letter_mono(head, b);
        for (m, s) in p_head.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            for j in 0..=m {
                let dtail = self.derivative_divided(&tail_state, j as u32);
                let term = self.nop(&dtail, s).expect("vacuum module").scale_int(kosz);
                let mut lp = LambdaPolynomial::zero(self.id);
                lp.set(m - j, term);
                out = out.add(&lp);
            }
        }

        // koszul * Int_0^l [A'_m [a_{l-m} B]] dm
        for (m, t) in p_head.coeffs.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            // (l - m)^(m) = sum_{i+j=m} l^(i) (-1)^j m^(j)
            for i in 0..=m {
                let j = m - i;
                let r = self.bracket_states(&tail_state, t);
                for (q, rq) in r.coeffs.iter().enumerate() {
                    if rq.is_zero() {
                        continue;
                    }
                    // m^(j) m^(q) = C(j+q, j) m^(j+q); integral -> l^(j+q+1);
                    // then l^(i) l^(j+q+1) = C(i+j+q+1, i) l^(i+j+q+1)
                    let c1 = binom((j + q) as u64, j as u64);
                    let c2 = binom((i + j + q + 1) as u64, i as u64);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let coeff = Scalar::from_bigint(c1 * c2).mul(&Scalar::from_int(sign * kosz));
                    let mut lp = LambdaPolynomial::zero(self.id);
                    lp.set(i + j + q + 1, rq.scale(&coeff));
                    out = out.add(&lp);
                }
            }
        }
        out
    }

    /// `[(d^d g)_l B] = (-l)^d [g_l B]`.
    fn bracket_letter_mono(&self, a: Letter, b: &Monomial) -> LambdaPolynomial {
        let base = self.bracket_gen_mono(a.gen, b);
        self.shift_pow_lambda(&base, a.der as u64, true)
    }

    /// Multiply a lambda polynomial by `(±l)^p`.
    fn shift_pow_lambda(&self, p: &LambdaPolynomial, pow: u64, negative: bool) -> LambdaPolynomial {
        if pow == 0 {
            return p.clone();
        }
        let mut out = LambdaPolynomial::zero(self.id);
        for (n, s) in p.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mut c = Scalar::from_bigint(rising(n as u64, pow));
            if negative && pow % 2 == 1 {
                c = c.neg();
            }
            let mut lp = LambdaPolynomial::zero(self.id);
            lp.set(n + pow as usize, s.scale(&c));
            out = out.add(&lp);
        }
        out
    }

    fn bracket_gen_mono(&self, g: u16, b: &Monomial) -> LambdaPolynomial {
        if b.is_empty() {
            return LambdaPolynomial::zero(self.id);
        }
        let head = b[0];
        if b.len() == 1 {
            // [g_l (d^e h)] = (l + T)^e [g_l h]
            let base = self.base_bracket(g, head.gen).clone();
            return self.lambda_plus_t_pow(&base, head.der as u64);
        }
        let tail: Monomial = b[1..].to_vec();
        let tail_state = self.mono_state(&tail);
        let pg = self.generators[g as usize].parity;
        let pb = self.parity_letter(head);
        let kosz = pg.koszul(pb);
        let mut out = LambdaPolynomial::zero(self.id);

        // :[g_l b] B':
        let x = self.bracket_letter_letter(Letter::new(g, 0), head);
        for (n, s) in x.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mut lp = LambdaPolynomial::zero(self.id);
            lp.set(n, self.nop(s, &tail_state).expect("vacuum module"));
            out = out.add(&lp);
        }

        // koszul * :b [g_l B']:
        let inner = self.bracket_gen_mono(g, &tail);
        for (n, s) in inner.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mut lp = LambdaPolynomial::zero(self.id);
            lp.set(n, self.prepend_letter_state(head, s).scale_int(kosz));
            out = out.add(&lp);
        }

        // Int_0^l [[g_l b]_m B'] dm
        for (n, s) in x.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let r = self.bracket_states(s, &tail_state);
            for (q, rq) in r.coeffs.iter().enumerate() {
                if rq.is_zero() {
                    continue;
                }
                let c = binom((n + q + 1) as u64, n as u64);
                let mut lp = LambdaPolynomial::zero(self.id);
                lp.set(n + q + 1, rq.scale(&Scalar::from_bigint(c)));
                out = out.add(&lp);
            }
        }
        out
    }

    /// `[(d^da g)_l (d^db h)]` for two letters.
    pub(crate) fn bracket_letter_letter(&self, a: Letter, b: Letter) -> LambdaPolynomial {
        let base = self.base_bracket(a.gen, b.gen).clone();
        let shifted = self.lambda_plus_t_pow(&base, b.der as u64);
        self.shift_pow_lambda(&shifted, a.der as u64, true)
    }

    /// Apply `(l + T)^e` to a lambda polynomial (T acting on coefficients).
    fn lambda_plus_t_pow(&self, p: &LambdaPolynomial, e: u64) -> LambdaPolynomial {
        let mut out = p.clone();
        for _ in 0..e {
            let mut next = LambdaPolynomial::zero(self.id);
            for (n, s) in out.coeffs.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                // l * l^(n) = (n+1) l^(n+1)
                let mut lp = LambdaPolynomial::zero(self.id);
                lp.set(n + 1, s.scale_int(n as i64 + 1));
                next = next.add(&lp);
                let mut lp2 = LambdaPolynomial::zero(self.id);
                lp2.set(n, self.derivative(s));
                next = next.add(&lp2);
            }
            out = next;
        }
        out
    }

    /// Skew-symmetry: given `[a_l b]` (with parities supplied), produce
    /// `[b_l a] = -(-1)^{p(a)p(b)} [a_{-l-T} b]`.
    pub fn lambda_skew(&self, p: &LambdaPolynomial, pa: Parity, pb: Parity) -> LambdaPolynomial {
        let kosz = pa.koszul(pb);
        let mut out = LambdaPolynomial::zero(self.id);
        for (n, s) in p.coeffs.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            // (-l - T)^(n) = sum_{i+j=n} (-1)^n l^(i) T^j/j!
            for i in 0..=n {
                let j = n - i;
                let sign = if n % 2 == 0 { 1 } else { -1 };
                let term = self
                    .derivative_divided(s, j as u32)
                    .scale_int(sign * (-kosz));
                let mut lp = LambdaPolynomial::zero(self.id);
                lp.set(i, term);
                out = out.add(&lp);
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // products and structure data
    // ------------------------------------------------------------------

    pub fn nth_product(&self, a: &State, b: &State, n: i64) -> Result<State, Error> {
        if n >= 0 {
            Ok(self.bracket(a, b)?.nth(n as usize))
        } else if n == -1 {
            self.nop(a, b)
        } else {
            let k = (-n - 1) as u32;
            let da = self.derivative_divided(a, k);
            self.nop(&da, b)
        }
    }

    /// Check `[L_l L] = (T + 2l) L + l^3/12 c |0>` and extract `c`.
    pub fn virasoro_data(&self, l: &State) -> Result<VirasoroData, Error> {
        let p = self.bracket(l, l)?;
        let not = Ok(VirasoroData {
            is_virasoro: false,
            central_charge: None,
        });
        if p.nth(0) != self.derivative(l) {
            return not;
        }
        if p.nth(1) != l.scale_int(2) {
            return not;
        }
        if !p.nth(2).is_zero() {
            return not;
        }
        let third = p.nth(3);
        if !third.terms.keys().all(|m| m.is_empty()) {
            return not;
        }
        for n in 4..p.coeffs.len() {
            if !p.nth(n).is_zero() {
                return not;
            }
        }
        // l^3/12 c = l^(3) c/2, so c = 2 * vacuum coefficient
        let c = third.vacuum_coefficient().mul(&Scalar::from_int(2));
        Ok(VirasoroData {
            is_virasoro: true,
            central_charge: Some(c),
        })
    }

    /// Conformal weight and primarity of `a` with respect to `l`.
    pub fn conformal_data(&self, l: &State, a: &State) -> Result<ConformalData, Error> {
        let p = self.bracket(l, a)?;
        let l1 = p.nth(1);
        // find the eigenvalue from the leading monomial, then verify
        let delta = if l1.is_zero() {
            Scalar::zero()
        } else {
            let (m, c) = l1.terms.iter().next().unwrap();
            let ca = a.terms.get(m).ok_or_else(|| {
                Error::NotEigenvector(format!(
                    "L_(1) produced monomial absent from the input state"
                ))
            })?;
            c.div(ca).unwrap()
        };
        if l1 != a.scale(&delta) {
            return Err(Error::NotEigenvector(
                "state is not an L_(1) eigenvector".to_string(),
            ));
        }
        // weight must be a half integer
        let two_delta = delta.mul(&Scalar::from_int(2));
        let w2 = scalar_to_integer(&two_delta).ok_or_else(|| {
            Error::NotEigenvector(format!("non half-integer weight {}", delta))
        })?;
        let mut primary = true;
        for n in 2..p.coeffs.len() {
            if !p.nth(n).is_zero() {
                primary = false;
            }
        }
        Ok(ConformalData {
            weight2: w2,
            primary,
        })
    }

    // ------------------------------------------------------------------
    // rendering
    // ------------------------------------------------------------------

    fn render_scalar(&self, c: &Scalar) -> String {
        if self.context == ParameterContext::generic() {
            if let Some(s) = c.render_in_k() {
                return s;
            }
        }
        c.render(self.context.param_name())
    }

    fn render_letter(&self, l: Letter) -> String {
        let name = &self.generators[l.gen as usize].name;
        match l.der {
            0 => name.clone(),
            1 => format!("D({})", name),
            d => format!("D^{}({})", d, name),
        }
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        match m.len() {
            0 => "vac".to_string(),
            1 => self.render_letter(m[0]),
            _ => {
                let parts: Vec<String> = m.iter().map(|l| self.render_letter(*l)).collect();
                format!(":{}:", parts.join(" "))
            }
        }
    }

    pub fn render_state(&self, s: &State) -> String {
        if s.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in s.terms.iter().enumerate() {
            let cs = self.render_scalar(c);
            let (neg, mag) = if let Some(rest) = cs.strip_prefix('-') {
                // only strip a leading sign of a simple term
                if rest.contains(" + ") || rest.contains(" - ") {
                    (false, cs.clone())
                } else {
                    (true, rest.to_string())
                }
            } else {
                (false, cs.clone())
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mono = self.render_monomial(m);
            if mag == "1" {
                out.push_str(&mono);
            } else {
                let needs_parens = mag.contains(' ') || mag.contains('+') || mag.contains('-');
                if needs_parens && !(mag.starts_with('(') && mag.ends_with(')')) {
                    out.push_str(&format!("({})*{}", mag, mono));
                } else {
                    out.push_str(&format!("{}*{}", mag, mono));
                }
            }
        }
        if let Some(mu) = &s.fock {
            out.push_str(&format!(" @ F[{}]", mu.label));
        }
        out
    }

    /// Render the singular part of the OPE of two states in pole notation.
    pub fn ope_singular(&self, a: &State, b: &State) -> Result<String, Error> {
        let p = self.bracket(a, b)?;
        if p.is_zero() {
            return Ok("0".to_string());
        }
        let mut parts = Vec::new();
        for n in (0..p.coeffs.len()).rev() {
            let s = p.nth(n);
            if s.is_zero() {
                continue;
            }
            let body = self.render_state(&s);
            let wrapped = if s.terms.len() > 1 {
                format!("({})", body)
            } else {
                body
            };
            if n == 0 {
                parts.push(format!("{}/(z-w)", wrapped));
            } else {
                parts.push(format!("{}/(z-w)^{}", wrapped, n + 1));
            }
        }
        Ok(parts.join(" + "))
    }

    // ------------------------------------------------------------------
    // validation
    // ------------------------------------------------------------------

    fn validate(&self) -> Result<(), Error> {
        let n = self.gen_count();
        for i in 0..n {
            for j in 0..n {
                let p = self.base_bracket(i as u16, j as u16);
                let pi = self.generators[i].parity;
                let pj = self.generators[j].parity;
                let w2 = self.generators[i].weight2 as i64 + self.generators[j].weight2 as i64;
                for (k, s) in p.coeffs.iter().enumerate() {
                    if s.is_zero() {
                        continue;
                    }
                    if let Some(w) = self.weight2_state(s) {
                        if w != w2 - 2 * (k as i64) - 2 {
                            return Err(Error::InvalidAlgebra(format!(
                                "weight additivity fails in [{} l {}] at l^({})",
                                self.generators[i].name, self.generators[j].name, k
                            )));
                        }
                    }
                    if let Some(par) = self.parity_state(s) {
                        if par != pi.xor(pj) {
                            return Err(Error::InvalidAlgebra(format!(
                                "parity additivity fails in [{} l {}]",
                                self.generators[i].name, self.generators[j].name
                            )));
                        }
                    }
                }
                // base-bracket skew-symmetry
                let q = self.base_bracket(j as u16, i as u16);
                if self.lambda_skew(p, pi, pj) != *q {
                    return Err(Error::InvalidAlgebra(format!(
                        "base brackets [{} l {}] and [{} l {}] violate skew-symmetry",
                        self.generators[i].name,
                        self.generators[j].name,
                        self.generators[j].name,
                        self.generators[i].name
                    )));
                }
            }
        }
        Ok(())
    }
}

fn scalar_to_integer(c: &Scalar) -> Option<i64> {
    if c.is_zero() {
        return Some(0);
    }
    if c.denominator() != &crate::scalar::Poly::one() {
        return None;
    }
    let num = c.numerator();
    if num.degree() != Some(0) {
        return None;
    }
    let v = num.coeff(0);
    i64::try_from(v).ok()
}

/// A raw nested normally ordered expression, the input format of
/// `normalize_state`. Evaluation lands in PBW normal form.
#[derive(Debug, Clone)]
pub enum RawExpr {
    Gen(String),
    Derivative(Box<RawExpr>, u32),
    Nop(Box<RawExpr>, Box<RawExpr>),
    Sum(Vec<RawExpr>),
    Scale(Scalar, Box<RawExpr>),
    Nth(Box<RawExpr>, Box<RawExpr>, i64),
}

impl Algebra {
    pub fn normalize_state(&self, raw: &RawExpr) -> Result<State, Error> {
        match raw {
            RawExpr::Gen(name) => self.gen_state_by_name(name),
            RawExpr::Derivative(e, n) => Ok(self.derivative_n(&self.normalize_state(e)?, *n)),
            RawExpr::Nop(a, b) => self.nop(&self.normalize_state(a)?, &self.normalize_state(b)?),
            RawExpr::Sum(es) => {
                let mut acc = State::zero(self.id);
                for e in es {
                    acc = acc.add(&self.normalize_state(e)?);
                }
                Ok(acc)
            }
            RawExpr::Scale(c, e) => Ok(self.normalize_state(e)?.scale(c)),
            RawExpr::Nth(a, b, n) => {
                self.nth_product(&self.normalize_state(a)?, &self.normalize_state(b)?, *n)
            }
        }
    }
}
