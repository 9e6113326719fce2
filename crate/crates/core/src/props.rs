//! Randomized structural checks of the vertex-superalgebra axioms.
//!
//! Shared between the `axioms` verification suite and the test harness.
//! The RNG is seeded, so reports are identical across runs.

use crate::algebra;
use crate::bracket::Algebra;
use crate::scalar::{ParameterContext, Scalar};
use crate::state::{LambdaPolynomial, Letter, State};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct AxiomCategory {
    pub name: &'static str,
    pub instances: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub categories: Vec<AxiomCategory>,
}

impl AxiomReport {
    pub fn total_instances(&self) -> usize {
        self.categories.iter().map(|c| c.instances).sum()
    }

    pub fn passed(&self) -> bool {
        self.categories.iter().all(|c| c.failures.is_empty())
    }
}

/// multiply by a single power of lambda: l * l^(n) = (n+1) l^(n+1)
fn lp_mul_lambda(p: &LambdaPolynomial) -> LambdaPolynomial {
    let mut out = LambdaPolynomial::zero(p.algebra_id);
    for (n, s) in p.coeffs.iter().enumerate() {
        if !s.is_zero() {
            out.set(n + 1, s.scale_int(n as i64 + 1));
        }
    }
    out
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Scalar {
    let c = loop {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            break c;
        }
    };
    if rng.gen_bool(0.25) {
        Scalar::from_int(c).mul(&Scalar::param())
    } else {
        Scalar::from_int(c)
    }
}

fn random_monomial_letters(alg: &Algebra, rng: &mut ChaCha8Rng, max_letters: usize) -> Vec<Letter> {
    let count = rng.gen_range(0..=max_letters);
    (0..count)
        .map(|_| {
            Letter::new(
                rng.gen_range(0..alg.gen_count()) as u16,
                rng.gen_range(0..=1),
            )
        })
        .collect()
}

/// A small parity-homogeneous state in the vacuum module.
pub fn random_state(alg: &Algebra, rng: &mut ChaCha8Rng, max_letters: usize) -> State {
    loop {
        let terms = rng.gen_range(1..=2);
        let mut s = State::zero(alg.id);
        for _ in 0..terms {
            let letters = random_monomial_letters(alg, rng, max_letters);
            s = s.add(&alg.normalize_letters(&letters, &random_coeff(rng), &None));
        }
        if s.is_zero() {
            continue;
        }
        if alg.parity_state(&s).is_some() {
            return s;
        }
    }
}

/// A single-monomial (hence weight- and parity-homogeneous) state.
pub fn random_monomial_state(alg: &Algebra, rng: &mut ChaCha8Rng, max_letters: usize) -> State {
    loop {
        let letters = random_monomial_letters(alg, rng, max_letters);
        let s = alg.normalize_letters(&letters, &random_coeff(rng), &None);
        if !s.is_zero() && alg.weight2_state(&s).is_some() {
            return s;
        }
    }
}

pub fn check_skew_symmetry(alg: &Algebra, a: &State, b: &State) -> Result<(), String> {
    let lhs = alg.bracket(a, b).map_err(|e| e.to_string())?;
    let ba = alg.bracket(b, a).map_err(|e| e.to_string())?;
    let pa = alg.parity_state(a).ok_or("mixed parity")?;
    let pb = alg.parity_state(b).ok_or("mixed parity")?;
    let rhs = alg.lambda_skew(&ba, pb, pa);
    if lhs != rhs {
        return Err(format!(
            "skew-symmetry fails for A = {}, B = {}",
            alg.render_state(a),
            alg.render_state(b)
        ));
    }
    Ok(())
}

pub fn check_sesquilinearity(alg: &Algebra, a: &State, b: &State) -> Result<(), String> {
    let p = alg.bracket(a, b).map_err(|e| e.to_string())?;
    let da = alg.derivative(a);
    let lhs1 = alg.bracket(&da, b).map_err(|e| e.to_string())?;
    let rhs1 = lp_mul_lambda(&p).scale_int(-1);
    if lhs1 != rhs1 {
        return Err(format!(
            "[Ta_l b] != -l[a_l b] for A = {}, B = {}",
            alg.render_state(a),
            alg.render_state(b)
        ));
    }
    let db = alg.derivative(b);
    let lhs2 = alg.bracket(a, &db).map_err(|e| e.to_string())?;
    let rhs2 = lp_mul_lambda(&p).add(&p.map_coeffs(|s| alg.derivative(s)));
    if lhs2 != rhs2 {
        return Err(format!(
            "[a_l Tb] != (l+T)[a_l b] for A = {}, B = {}",
            alg.render_state(a),
            alg.render_state(b)
        ));
    }
    Ok(())
}

/// Two-variable lambda/mu polynomial in divided powers, used by the Jacobi
/// check.
type TwoVar = std::collections::BTreeMap<(usize, usize), State>;

fn twovar_add(acc: &mut TwoVar, key: (usize, usize), s: State) {
    if s.is_zero() {
        return;
    }
    let entry = acc.entry(key).or_insert_with(|| State::zero(s.algebra_id));
    *entry = entry.add(&s);
    if entry.is_zero() {
        acc.remove(&key);
    }
}

pub fn check_jacobi(alg: &Algebra, a: &State, b: &State, c: &State) -> Result<(), String> {
    let pa = alg.parity_state(a).ok_or("mixed parity")?;
    let pb = alg.parity_state(b).ok_or("mixed parity")?;
    let kosz = pa.koszul(pb);
    let mut lhs: TwoVar = TwoVar::new();
    // [a_l [b_m c]]
    let bc = alg.bracket(b, c).map_err(|e| e.to_string())?;
    for (m, s) in bc.coeffs.iter().enumerate() {
        let p = alg.bracket(a, s).map_err(|e| e.to_string())?;
        for (n, t) in p.coeffs.iter().enumerate() {
            twovar_add(&mut lhs, (n, m), t.clone());
        }
    }
    // - koszul [b_m [a_l c]]
    let ac = alg.bracket(a, c).map_err(|e| e.to_string())?;
    for (n, s) in ac.coeffs.iter().enumerate() {
        let p = alg.bracket(b, s).map_err(|e| e.to_string())?;
        for (m, t) in p.coeffs.iter().enumerate() {
            twovar_add(&mut lhs, (n, m), t.scale_int(-kosz));
        }
    }
    // [[a_l b]_{l+m} c]
    let ab = alg.bracket(a, b).map_err(|e| e.to_string())?;
    let mut rhs: TwoVar = TwoVar::new();
    for (p, s) in ab.coeffs.iter().enumerate() {
        let q = alg.bracket(s, c).map_err(|e| e.to_string())?;
        for (total, t) in q.coeffs.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            // (l+m)^(total) = sum_{i+j=total} l^(i) m^(j); then l^(p) l^(i)
            for i in 0..=total {
                let j = total - i;
                let c1 = crate::bracket::binom((p + i) as u64, i as u64);
                twovar_add(&mut rhs, (p + i, j), t.scale(&Scalar::from_bigint(c1)));
            }
        }
    }
    if lhs != rhs {
        return Err(format!(
            "Jacobi fails for A = {}, B = {}, C = {}",
            alg.render_state(a),
            alg.render_state(b),
            alg.render_state(c)
        ));
    }
    Ok(())
}

pub fn check_weight_parity_additivity(alg: &Algebra, a: &State, b: &State) -> Result<(), String> {
    let w2a = alg.weight2_state(a).ok_or("inhomogeneous")?;
    let w2b = alg.weight2_state(b).ok_or("inhomogeneous")?;
    let pa = alg.parity_state(a).ok_or("mixed parity")?;
    let pb = alg.parity_state(b).ok_or("mixed parity")?;
    let p = alg.bracket(a, b).map_err(|e| e.to_string())?;
    for (n, s) in p.coeffs.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let expect = w2a + w2b - 2 * (n as i64) - 2;
        if alg.weight2_state(s) != Some(expect) {
            return Err(format!(
                "weight additivity fails at n = {} for A = {}, B = {}",
                n,
                alg.render_state(a),
                alg.render_state(b)
            ));
        }
        if alg.parity_state(s) != Some(pa.xor(pb)) {
            return Err(format!(
                "parity additivity fails at n = {} for A = {}, B = {}",
                n,
                alg.render_state(a),
                alg.render_state(b)
            ));
        }
    }
    let prod = alg.nop(a, b).map_err(|e| e.to_string())?;
    if !prod.is_zero()
        && (alg.weight2_state(&prod) != Some(w2a + w2b)
            || alg.parity_state(&prod) != Some(pa.xor(pb)))
    {
        return Err(format!(
            "additivity fails for the (-1)-product of A = {}, B = {}",
            alg.render_state(a),
            alg.render_state(b)
        ));
    }
    Ok(())
}

/// Alternative rewrite strategy: divide-and-conquer. The mode product of the
/// left half is normalized first, then its normal monomials are folded onto
/// the normalized right half. Must agree with the straight right fold.
fn normalize_split(alg: &Algebra, letters: &[Letter]) -> State {
    if letters.len() <= 1 {
        return alg.normalize_letters(letters, &Scalar::one(), &None);
    }
    let mid = letters.len() / 2;
    let left = normalize_split(alg, &letters[..mid]);
    let right = normalize_split(alg, &letters[mid..]);
    let mut out = State::zero(alg.id);
    for (ml, cl) in &left.terms {
        let mut acc = right.clone();
        for l in ml.iter().rev() {
            acc = alg.prepend_letter_state(*l, &acc);
        }
        out = out.add(&acc.scale(cl));
    }
    out
}

pub fn check_normalize_confluence(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let letters = random_monomial_letters(alg, rng, 4);
    let direct = alg.normalize_letters(&letters, &Scalar::one(), &None);
    let split = normalize_split(alg, &letters);
    if direct != split {
        return Err(format!(
            "rewrite strategies disagree on letters {:?}",
            letters
        ));
    }
    // idempotence: every monomial of the result is already normal
    for m in direct.terms.keys() {
        let again = alg.normalize_letters(m, &Scalar::one(), &None);
        if again.terms.len() != 1 || again.terms.get(m) != Some(&Scalar::one()) {
            return Err(format!("normal form is not idempotent on {:?}", m));
        }
    }
    Ok(())
}

/// The standard test algebras: a rank-2 Heisenberg, the rank-2 bc-system,
/// the rank-4 fermion algebra, and affine sl2.
pub fn standard_test_algebras() -> Vec<Arc<Algebra>> {
    let ctx = ParameterContext::generic;
    let kp1 = ctx().k().add(&Scalar::one());
    vec![
        algebra::heisenberg(&algebra::alternating_adjacent_gram(2), &kp1, ctx()).unwrap(),
        algebra::bc_system(2, ctx()).unwrap(),
        algebra::neutral_fermion(&algebra::alternating_adjacent_gram(4), ctx()).unwrap(),
        algebra::affine(&algebra::LieData::sl(2), &ctx().l(), ctx()).unwrap(),
    ]
}

/// Run the whole axiom suite on >= `target` randomized instances, spread
/// over the standard algebras. Deterministic for a fixed seed.
pub fn run_axioms(target: usize, seed: u64) -> AxiomReport {
    let algebras = standard_test_algebras();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let per = (target / (algebras.len() * 10)).max(8);
    let mut skew = AxiomCategory {
        name: "skew-symmetry",
        instances: 0,
        failures: Vec::new(),
    };
    let mut jacobi = AxiomCategory {
        name: "jacobi",
        instances: 0,
        failures: Vec::new(),
    };
    let mut sesqui = AxiomCategory {
        name: "sesquilinearity",
        instances: 0,
        failures: Vec::new(),
    };
    let mut additivity = AxiomCategory {
        name: "weight-parity-additivity",
        instances: 0,
        failures: Vec::new(),
    };
    let mut confluence = AxiomCategory {
        name: "normal-form-idempotence-confluence",
        instances: 0,
        failures: Vec::new(),
    };
    for alg in &algebras {
        for _ in 0..per {
            let a = random_state(alg, &mut rng, 2);
            let b = random_state(alg, &mut rng, 2);
            skew.instances += 2;
            if let Err(e) = check_skew_symmetry(alg, &a, &b) {
                skew.failures.push(format!("[{}] {}", alg.name, e));
            }

            let c = random_state(alg, &mut rng, 2);
            jacobi.instances += 3;
            if let Err(e) = check_jacobi(alg, &a, &b, &c) {
                jacobi.failures.push(format!("[{}] {}", alg.name, e));
            }

            sesqui.instances += 2;
            if let Err(e) = check_sesquilinearity(alg, &a, &b) {
                sesqui.failures.push(format!("[{}] {}", alg.name, e));
            }

            let ma = random_monomial_state(alg, &mut rng, 3);
            let mb = random_monomial_state(alg, &mut rng, 3);
            additivity.instances += 2;
            if let Err(e) = check_weight_parity_additivity(alg, &ma, &mb) {
                additivity.failures.push(format!("[{}] {}", alg.name, e));
            }

            confluence.instances += 1;
            if let Err(e) = check_normalize_confluence(alg, &mut rng) {
                confluence.failures.push(format!("[{}] {}", alg.name, e));
            }
        }
    }
    AxiomReport {
        categories: vec![skew, jacobi, sesqui, additivity, confluence],
    }
}
