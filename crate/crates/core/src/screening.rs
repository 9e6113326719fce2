//! Screening charges on free-field algebras.
//!
//! A screening charge is the residue of a dressed exponential vertex
//! operator `e^{mu} Phi` mapping the vacuum module into the Fock module of
//! weight `mu`:
//!
//! `Q v = Res_z  E^-(z) E^+(z) Phi(z) v`, tagged with `mu`,
//!
//! where `E^-(z) = exp(sum_{n>=1} mu_(-n) z^n / n)` creates and
//! `E^+(z) = exp(-sum_{n>=1} mu_(n) z^-n / n)` annihilates, annihilation
//! half rightmost. The z-monodromy factor is trivial because the screening
//! weights are isotropic and act on charge-zero states; isotropy is checked
//! at construction. The expansion is finite: the annihilation half is
//! bounded by the Heisenberg content of the input, the creation half by the
//! residue constraint.

use crate::bracket::{factorial, Algebra};
use crate::error::Error;
use crate::scalar::{Poly, Scalar};
use crate::state::{FockWeight, Letter, Monomial, Parity, State};
use std::sync::Arc;

/// `Q_i = Res :e^{mu} Phi_i:` with `mu` a Heisenberg weight and `Phi_i` an
/// odd dressing generator.
#[derive(Debug, Clone)]
pub struct ScreeningCharge {
    pub mu: Arc<FockWeight>,
    pub dressing: u16,
    pub index: usize,
}

/// Pairing `B(g, mu) = sum_b mu_b * (central lambda-coefficient of
/// [g l x_b])`, the eigenvalue of the zero mode `g_(0)` on `v_mu`.
pub fn pairing_with_weight(alg: &Algebra, g: u16, mu: &FockWeight) -> Scalar {
    let mut acc = Scalar::zero();
    for (b, c) in mu.coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = alg.base_bracket(g, b as u16);
        acc = acc.add(&c.mul(&p.nth(1).vacuum_coefficient()));
    }
    acc
}

pub fn screening_charge(
    alg: &Algebra,
    mu_coefficients: Vec<Scalar>,
    dressing: &str,
    index: usize,
) -> Result<ScreeningCharge, Error> {
    if !alg.free_field {
        return Err(Error::NotFreeField);
    }
    if mu_coefficients.len() != alg.gen_count() {
        return Err(Error::Config(format!(
            "screening weight has {} coefficients for {} generators",
            mu_coefficients.len(),
            alg.gen_count()
        )));
    }
    let d = alg
        .find_generator(dressing)
        .ok_or_else(|| Error::UnknownName(dressing.to_string()))?;
    if alg.generator(d).parity != Parity::Odd {
        return Err(Error::InvalidAlgebra(format!(
            "dressing generator `{}` must be odd",
            dressing
        )));
    }
    let mu = Arc::new(FockWeight {
        coefficients: mu_coefficients,
        label: format!("mu{}", index),
    });
    // isotropy B(mu, mu) = 0, required for integer moding
    let mut norm = Scalar::zero();
    for (g, c) in mu.coefficients.iter().enumerate() {
        if !c.is_zero() {
            norm = norm.add(&c.mul(&pairing_with_weight(alg, g as u16, &mu)));
        }
    }
    if !norm.is_zero() {
        return Err(Error::InvalidAlgebra(
            "screening weight is not isotropic".into(),
        ));
    }
    Ok(ScreeningCharge {
        mu,
        dressing: d,
        index,
    })
}

/// Central contraction `[g_(n), letter]` for free fields: the vacuum
/// coefficient of the n-th product of the two letter states.
fn contraction(alg: &Algebra, g: u16, n: usize, letter: Letter) -> Scalar {
    let p = alg.bracket_letter_letter(Letter::new(g, 0), letter);
    p.nth(n).vacuum_coefficient()
}

/// Apply the mode `g_(n)` of a generator field to a state (free fields
/// only). Negative modes create, non-negative modes contract; the zero mode
/// also measures the Fock weight of the highest-weight vector.
pub fn apply_gen_mode(alg: &Algebra, g: u16, n: i64, s: &State) -> State {
    if n < 0 {
        let d = (-1 - n) as u16;
        let inv = Scalar::one()
            .div(&Scalar::from_bigint(factorial(d as u64)))
            .unwrap();
        return alg.prepend_letter_state(Letter::new(g, d), s).scale(&inv);
    }
    let n = n as usize;
    let pg = alg.generator(g).parity;
    let mut out = State::zero(s.algebra_id);
    out.fock = s.fock.clone();
    for (m, c) in &s.terms {
        let mut sign = 1i64;
        for (i, b) in m.iter().enumerate() {
            let gamma = contraction(alg, g, n, *b);
            if !gamma.is_zero() {
                let mut rest: Monomial = m.clone();
                rest.remove(i);
                out.add_term(rest, c.mul(&gamma).mul(&Scalar::from_int(sign)));
            }
            if pg.is_odd() && alg.parity_letter(*b).is_odd() {
                sign = -sign;
            }
        }
        if n == 0 {
            if let Some(mu) = &s.fock {
                let b = pairing_with_weight(alg, g, mu);
                if !b.is_zero() {
                    out.add_term(m.clone(), c.mul(&b).mul(&Scalar::from_int(sign)));
                }
            }
        }
    }
    if out.terms.is_empty() {
        out.fock = None;
    } else {
        out.fock = s.fock.clone();
    }
    out
}

/// Mode of a linear combination of generators.
fn apply_combo_mode(alg: &Algebra, combo: &[Scalar], n: i64, s: &State) -> State {
    let mut out = State::zero(s.algebra_id);
    out.fock = s.fock.clone();
    for (g, c) in combo.iter().enumerate() {
        if !c.is_zero() {
            let t = apply_gen_mode(alg, g as u16, n, s);
            for (m, cm) in &t.terms {
                out.add_term(m.clone(), cm.mul(c));
            }
        }
    }
    if out.terms.is_empty() {
        out.fock = None;
    }
    out
}

/// All partitions of `total` as (part, multiplicity) lists.
fn partitions(total: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        rest: usize,
        max: usize,
        acc: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            for mult in (1..=rest / part).rev() {
                acc.push((part, mult));
                rec(rest - part * mult, part - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut acc = Vec::new();
    rec(total, total, &mut acc, &mut out);
    out
}

/// Coefficient of `z^{-q}` in `E^+` (`plus = true`) or of `z^{r}` in `E^-`,
/// applied to a state.
fn exp_half(alg: &Algebra, mu: &FockWeight, degree: usize, plus: bool, s: &State) -> State {
    if degree == 0 {
        return s.clone();
    }
    let mut out = State::zero(s.algebra_id);
    out.fock = s.fock.clone();
    for part in partitions(degree) {
        let mut coeff = Scalar::one();
        let mut t = s.clone();
        for &(n, mult) in &part {
            let base = Scalar::rational(if plus { -1 } else { 1 }, n as i64);
            coeff = coeff
                .mul(&base.pow(mult as i64).unwrap())
                .div(&Scalar::from_bigint(factorial(mult as u64)))
                .unwrap();
            let mode = if plus { n as i64 } else { -(n as i64) };
            for _ in 0..mult {
                t = apply_combo_mode(alg, &mu.coefficients, mode, &t);
                if t.is_zero() {
                    break;
                }
            }
            if t.is_zero() {
                break;
            }
        }
        for (m, c) in &t.terms {
            out.add_term(m.clone(), c.mul(&coeff));
        }
    }
    if out.terms.is_empty() {
        out.fock = None;
    }
    out
}

/// Apply a screening charge to a vacuum-module state. The result lives in
/// the Fock module of the screening weight.
pub fn apply_screening(alg: &Algebra, q: &ScreeningCharge, v: &State) -> Result<State, Error> {
    if !alg.free_field {
        return Err(Error::NotFreeField);
    }
    if v.algebra_id != alg.id {
        return Err(Error::MismatchedAlgebras);
    }
    if v.fock.is_some() {
        return Err(Error::AlreadyTagged);
    }
    let pairings: Vec<Scalar> = (0..alg.gen_count())
        .map(|g| pairing_with_weight(alg, g as u16, &q.mu))
        .collect();
    let mut out = State::zero(alg.id);
    out.fock = Some(q.mu.clone());
    for (mono, c) in &v.terms {
        let single = {
            let mut s = State::zero(alg.id);
            s.add_term(mono.clone(), c.clone());
            s
        };
        let w2 = alg.weight2_mono(mono);
        // annihilation budget: letters that pair with mu
        let qmax: i64 = mono
            .iter()
            .filter(|l| !pairings[l.gen as usize].is_zero())
            .map(|l| 1 + l.der as i64)
            .sum();
        for m in -qmax..=((w2 - 1) / 2) {
            let u = apply_gen_mode(alg, q.dressing, m, &single);
            if u.is_zero() {
                continue;
            }
            for qq in (0.max(-m) as usize)..=(qmax.max(0) as usize) {
                let w1 = exp_half(alg, &q.mu, qq, true, &u);
                if w1.is_zero() {
                    continue;
                }
                let r = (qq as i64 + m) as usize;
                let w2s = exp_half(alg, &q.mu, r, false, &w1);
                for (mm, cc) in &w2s.terms {
                    out.add_term(mm.clone(), cc.clone());
                }
            }
        }
    }
    if out.terms.is_empty() {
        out.fock = None;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct KernelWitness {
    pub screening: usize,
    pub term: String,
}

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub passes: bool,
    pub witnesses: Vec<KernelWitness>,
}

/// `passes` iff every screening kills the state exactly.
pub fn kernel_check(
    alg: &Algebra,
    screenings: &[ScreeningCharge],
    a: &State,
) -> Result<KernelReport, Error> {
    let mut witnesses = Vec::new();
    for q in screenings {
        let image = apply_screening(alg, q, a)?;
        if !image.is_zero() {
            let (m, c) = image.terms.iter().next().unwrap();
            witnesses.push(KernelWitness {
                screening: q.index,
                term: format!(
                    "{} * {}",
                    c.render(alg.context.param_name()),
                    alg.render_monomial(m)
                ),
            });
        }
    }
    Ok(KernelReport {
        passes: witnesses.is_empty(),
        witnesses,
    })
}

/// The PBW monomial basis of the vacuum module at doubled weight `w2`. The
/// same letter lists serve the Fock modules of the screening weights, whose
/// highest-weight vectors have conformal weight zero.
pub fn enumerate_basis(alg: &Algebra, w2: i64) -> Vec<Monomial> {
    fn rec(alg: &Algebra, gen: usize, rest2: i64, current: &mut Monomial, out: &mut Vec<Monomial>) {
        if rest2 == 0 {
            out.push(current.clone());
            return;
        }
        if gen >= alg.gen_count() {
            return;
        }
        rec(alg, gen + 1, rest2, current, out);
        ders(alg, gen, rest2, i64::MAX, current, out);
    }
    // choose derivative orders for one generator, descending
    fn ders(
        alg: &Algebra,
        gen: usize,
        rest2: i64,
        max_der: i64,
        current: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        let g2 = alg.generator(gen as u16).weight2 as i64;
        let odd = alg.generator(gen as u16).parity.is_odd();
        let top = ((rest2 - g2) / 2).min(max_der);
        let mut d = 0;
        while d <= top {
            current.push(Letter::new(gen as u16, d as u16));
            let new_rest = rest2 - g2 - 2 * d;
            if new_rest == 0 {
                out.push(current.clone());
            } else {
                let next_max = if odd { d - 1 } else { d };
                if next_max >= 0 {
                    ders(alg, gen, new_rest, next_max, current, out);
                }
                rec(alg, gen + 1, new_rest, current, out);
            }
            current.pop();
            d += 1;
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    rec(alg, 0, w2, &mut current, &mut out);
    for m in &mut out {
        m.sort();
    }
    out.sort();
    out.dedup();
    out
}

/// Exact nullity of the joint screening map on a weight stratum, by
/// fraction-free elimination over the integer polynomial ring.
pub fn graded_kernel_dimension(
    alg: &Algebra,
    screenings: &[ScreeningCharge],
    w2: i64,
    cap2: i64,
) -> Result<usize, Error> {
    if w2 > cap2 {
        return Err(Error::WeightCapExceeded {
            requested: format!("{}/2", w2),
            bound: format!("{}/2", cap2),
        });
    }
    let basis = enumerate_basis(alg, w2);
    let n = basis.len();
    let mut row_index: std::collections::HashMap<(usize, Monomial), usize> =
        std::collections::HashMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (j, mono) in basis.iter().enumerate() {
        let mut v = State::zero(alg.id);
        v.add_term(mono.clone(), Scalar::one());
        for (qi, q) in screenings.iter().enumerate() {
            let image = apply_screening(alg, q, &v)?;
            for (m, c) in &image.terms {
                let next = row_index.len();
                let r = *row_index.entry((qi, m.clone())).or_insert(next);
                entries.push((r, j, c.clone()));
            }
        }
    }
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); row_index.len()];
    for (r, j, c) in entries {
        rows[r].push((j, c));
    }
    let int_rows: Vec<Vec<(usize, Poly)>> = rows.into_iter().map(clear_denominators).collect();
    let rank = sparse_rank(int_rows);
    Ok(n - rank)
}

/// Multiply a row by the lcm of its denominators (row scaling preserves the
/// kernel), landing in Z[t].
fn clear_denominators(mut row: Vec<(usize, Scalar)>) -> Vec<(usize, Poly)> {
    row.sort_by_key(|(j, _)| *j);
    let mut lcm = Poly::one();
    for (_, c) in &row {
        let den = c.denominator();
        let g = lcm.gcd(den);
        lcm = lcm.mul(&den.div_exact(&g));
    }
    row.into_iter()
        .map(|(j, c)| {
            let extra = lcm.div_exact(c.denominator());
            (j, c.numerator().mul(&extra))
        })
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

fn strip_content(row: &mut [(usize, Poly)]) {
    if row.is_empty() {
        return;
    }
    let mut g = row[0].1.clone();
    for (_, p) in row.iter().skip(1) {
        g = g.gcd(p);
        if g.degree() == Some(0) && g.leading() == num_bigint::BigInt::from(1) {
            return;
        }
    }
    for (_, p) in row.iter_mut() {
        *p = p.div_exact(&g);
    }
}

/// Rank of a sparse integer-polynomial matrix by leading-column elimination
/// with cross-multiplication: all arithmetic stays in Z[t], rows are
/// content-stripped to control growth.
pub fn sparse_rank(rows: Vec<Vec<(usize, Poly)>>) -> usize {
    let mut active: Vec<Vec<(usize, Poly)>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut rank = 0;
    while !active.is_empty() {
        let lead = active.iter().map(|r| r[0].0).min().unwrap();
        let mut group = Vec::new();
        let mut rest = Vec::new();
        for r in active.into_iter() {
            if r[0].0 == lead {
                group.push(r);
            } else {
                rest.push(r);
            }
        }
        group.sort_by_key(|r| (r.len(), r[0].1.degree().unwrap_or(0)));
        let pivot = group.remove(0);
        rank += 1;
        let pv = pivot[0].1.clone();
        for r in group {
            let f = r[0].1.clone();
            // r' = pv * r - f * pivot; the leading entries cancel
            let mut merged: Vec<(usize, Poly)> = Vec::with_capacity(r.len() + pivot.len());
            let (mut i, mut j) = (1, 1);
            loop {
                let next = match (r.get(i), pivot.get(j)) {
                    (Some((cj, a)), Some((ck, b))) => {
                        if cj == ck {
                            i += 1;
                            j += 1;
                            (*cj, pv.mul(a).sub(&f.mul(b)))
                        } else if cj < ck {
                            i += 1;
                            (*cj, pv.mul(a))
                        } else {
                            j += 1;
                            (*ck, f.mul(b).neg())
                        }
                    }
                    (Some((cj, a)), None) => {
                        i += 1;
                        (*cj, pv.mul(a))
                    }
                    (None, Some((ck, b))) => {
                        j += 1;
                        (*ck, f.mul(b).neg())
                    }
                    (None, None) => break,
                };
                if !next.1.is_zero() {
                    merged.push(next);
                }
            }
            if !merged.is_empty() {
                strip_content(&mut merged);
                rest.push(merged);
            }
        }
        active = rest;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alternating_adjacent_gram, heisenberg, neutral_fermion, tensor};
    use crate::scalar::ParameterContext;

    /// The rank-2n free-field algebra with its screening weights
    /// mu_i = -x_i/(k+1), dressed by F_i.
    fn free_field(n: usize) -> (std::sync::Arc<Algebra>, Vec<ScreeningCharge>) {
        let ctx = ParameterContext::generic();
        let kp1 = ctx.k().add(&Scalar::one());
        let gram = alternating_adjacent_gram(2 * n);
        let h = heisenberg(&gram, &kp1, ctx.clone()).unwrap();
        let f = neutral_fermion(&gram, ctx.clone()).unwrap();
        let alg = tensor(&h, &f).unwrap();
        let inv = kp1.inv().unwrap().neg();
        let qs = (0..2 * n)
            .map(|i| {
                let mut mu = vec![Scalar::zero(); alg.gen_count()];
                mu[i] = inv.clone();
                screening_charge(&alg, mu, &format!("F{}", i + 1), i + 1).unwrap()
            })
            .collect();
        (alg, qs)
    }

    #[test]
    fn screening_kills_vacuum() {
        let (alg, qs) = free_field(2);
        let vac = State::vacuum(alg.id);
        for q in &qs {
            assert!(apply_screening(&alg, q, &vac).unwrap().is_zero());
        }
    }

    #[test]
    fn screening_of_paired_fermion() {
        // Q_1 applied to the F2 letter contracts once: a pure multiple of
        // the highest-weight vector, with coefficient the gram entry.
        let (alg, qs) = free_field(2);
        let f2 = alg.gen_state_by_name("F2").unwrap();
        let image = apply_screening(&alg, &qs[0], &f2).unwrap();
        assert_eq!(image.terms.len(), 1);
        let (m, c) = image.terms.iter().next().unwrap();
        assert!(m.is_empty());
        assert_eq!(c, &Scalar::one());
        assert!(image.fock.is_some());
        // a fermion letter with no pairing against F1 is killed outright
        let f3 = alg.gen_state_by_name("F3").unwrap();
        assert!(apply_screening(&alg, &qs[0], &f3).unwrap().is_zero());
    }

    #[test]
    fn lone_heisenberg_letter_not_in_kernel() {
        let (alg, qs) = free_field(2);
        // x1 itself is isotropic, so Q_1 kills it; x2 pairs with x1 and is
        // the generic witness for failing the kernel test.
        let a1 = alg.gen_state_by_name("a1").unwrap();
        assert!(apply_screening(&alg, &qs[0], &a1).unwrap().is_zero());
        let a2 = alg.gen_state_by_name("a2").unwrap();
        let report = kernel_check(&alg, &qs[..1], &a2).unwrap();
        assert!(!report.passes);
        assert_eq!(report.witnesses.len(), 1);
    }

    #[test]
    fn screening_commutes_with_derivative() {
        use rand_chacha::rand_core::SeedableRng;
        let (alg, qs) = free_field(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..12 {
            let v = crate::props::random_state(&alg, &mut rng, 3);
            let dv = alg.derivative(&v);
            for q in &qs {
                let lhs = apply_screening(&alg, q, &dv).unwrap();
                let rhs = alg.derivative(&apply_screening(&alg, q, &v).unwrap());
                assert_eq!(
                    lhs,
                    rhs,
                    "Q does not commute with T on {}",
                    alg.render_state(&v)
                );
            }
        }
    }

    #[test]
    fn screening_linearity() {
        use rand_chacha::rand_core::SeedableRng;
        let (alg, qs) = free_field(1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let v = crate::props::random_state(&alg, &mut rng, 2);
            let w = crate::props::random_state(&alg, &mut rng, 2);
            let c = Scalar::from_int(3);
            let q = &qs[0];
            let lhs = apply_screening(&alg, q, &v.scale(&c).add(&w)).unwrap();
            let rhs = apply_screening(&alg, q, &v)
                .unwrap()
                .scale(&c)
                .add(&apply_screening(&alg, q, &w).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn basis_enumeration_counts() {
        // rank-1 bc system: strata 0, 1/2, 1, 3/2, 2 have 1, 2, 1, 2, 4
        let alg = crate::algebra::bc_system(1, ParameterContext::generic()).unwrap();
        assert_eq!(enumerate_basis(&alg, 0).len(), 1);
        assert_eq!(enumerate_basis(&alg, 1).len(), 2);
        assert_eq!(enumerate_basis(&alg, 2).len(), 1);
        assert_eq!(enumerate_basis(&alg, 3).len(), 2);
        assert_eq!(enumerate_basis(&alg, 4).len(), 4);
    }

    #[test]
    fn sparse_rank_small() {
        let p = Poly::from_int;
        let rows = vec![
            vec![(0, p(1)), (1, p(2))],
            vec![(0, p(2)), (1, p(4))],
            vec![(1, p(1))],
        ];
        assert_eq!(sparse_rank(rows), 2);
    }
}
