//! The Kazama-Suzuki coset side: the diagonal embedding of gl_n into
//! V^l(sl_{n+1}) (x) E(n), commutant membership, the hatted n = 2 fields
//! with their OPE table, and the rescaled large-level limit.

use crate::algebra::{affine_scaled, bc_system, tensor, LieData};
use crate::bracket::Algebra;
use crate::error::Error;
use crate::scalar::{ParameterContext, Scalar};
use crate::state::{LambdaPolynomial, State};
use crate::wsuper::{derived_fields, W32Set};
use std::sync::Arc;

/// `V^l(sl_{n+1}) (x) E(n)`, either at the generic level `l = t^{-2} - 3`
/// or in the rescaled limit regime over `Q(s)` with `l = s^{-2}` where the
/// algebra generators stand for `e_{i,j}/sqrt(l)`.
pub struct CosetSide {
    pub n: usize,
    pub algebra: Arc<Algebra>,
    pub l: Scalar,
    /// Each displayed current is `current_scale * generator`.
    pub current_scale: Scalar,
}

impl CosetSide {
    pub fn generic(n: usize) -> Result<Self, Error> {
        let ctx = ParameterContext::generic();
        let l = ctx.l();
        let lie = LieData::sl(n + 1);
        let aff = affine_scaled(&lie, &Scalar::one(), &l, ctx.clone())?;
        let bc = bc_system(n, ctx.clone())?;
        let algebra = tensor(&aff, &bc)?;
        Ok(CosetSide {
            n,
            algebra,
            l,
            current_scale: Scalar::one(),
        })
    }

    /// Rescaled regime: generators are divided by sqrt(l), so the structure
    /// constants carry a factor `s = 1/sqrt(l)` and the central terms are
    /// the plain trace form.
    pub fn limit() -> Result<Self, Error> {
        let ctx = ParameterContext::limit();
        let l = ctx.l();
        let s = Scalar::param();
        let lie = LieData::sl(3);
        let aff = affine_scaled(&lie, &s, &Scalar::one(), ctx.clone())?;
        let bc = bc_system(2, ctx.clone())?;
        let algebra = tensor(&aff, &bc)?;
        Ok(CosetSide {
            n: 2,
            algebra,
            l,
            current_scale: s.inv()?,
        })
    }

    /// The displayed current `e_{i,j}` or `h_i` as a state.
    pub fn current(&self, name: &str) -> Result<State, Error> {
        Ok(self.algebra.gen_state_by_name(name)?.scale(&self.current_scale))
    }

    pub fn bc(&self, name: &str) -> Result<State, Error> {
        self.algebra.gen_state_by_name(name)
    }
}

/// Images of the gl_n basis under the diagonal action: the current part
/// embeds via the traceless completion (the identity of gl_n lands on the
/// fundamental coweight), the bc part is `e_{i,j} -> :b_i c_j:`.
pub struct DiagonalEmbedding {
    pub n: usize,
    /// (name, gl_n matrix, image state); basis order e[i,j] then h[i]
    /// then the central element I.
    pub images: Vec<(String, Vec<Vec<Scalar>>, State)>,
}

fn gl_matrix(n: usize, entries: &[(usize, usize, i64)]) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(); n]; n];
    for &(i, j, c) in entries {
        m[i][j] = Scalar::from_int(c);
    }
    m
}

/// The image of a gl_n matrix on the sl_{n+1} side: pad with a zero row and
/// column and subtract the trace part.
fn sl_image_of_matrix(side: &CosetSide, m: &[Vec<Scalar>]) -> Result<State, Error> {
    let n = side.n;
    let mut padded = vec![vec![Scalar::zero(); n + 1]; n + 1];
    let mut trace = Scalar::zero();
    for i in 0..n {
        for j in 0..n {
            padded[i][j] = m[i][j].clone();
        }
        trace = trace.add(&m[i][i]);
    }
    let shift = trace.div(&Scalar::from_int((n + 1) as i64))?;
    for i in 0..=n {
        padded[i][i] = padded[i][i].sub(&shift);
    }
    let mut out = State::zero(side.algebra.id);
    for i in 0..=n {
        for j in 0..=n {
            if i != j && !padded[i][j].is_zero() {
                out = out.add(
                    &side
                        .current(&format!("e[{},{}]", i + 1, j + 1))?
                        .scale(&padded[i][j]),
                );
            }
        }
    }
    // diagonal part through partial sums in the h basis
    let mut acc = Scalar::zero();
    for i in 0..n {
        acc = acc.add(&padded[i][i]);
        if !acc.is_zero() {
            out = out.add(&side.current(&format!("h[{}]", i + 1))?.scale(&acc));
        }
    }
    Ok(out)
}

fn bc_image_of_matrix(side: &CosetSide, m: &[Vec<Scalar>]) -> Result<State, Error> {
    let n = side.n;
    let alg = &side.algebra;
    let mut out = State::zero(alg.id);
    for i in 0..n {
        for j in 0..n {
            if m[i][j].is_zero() {
                continue;
            }
            let b = side.bc(&format!("b{}", i + 1))?;
            let c = side.bc(&format!("c{}", j + 1))?;
            out = out.add(&alg.nop(&b, &c)?.scale(&m[i][j]));
        }
    }
    Ok(out)
}

pub fn image_of_matrix(side: &CosetSide, m: &[Vec<Scalar>]) -> Result<State, Error> {
    Ok(sl_image_of_matrix(side, m)?.add(&bc_image_of_matrix(side, m)?))
}

pub fn diagonal_embedding(side: &CosetSide) -> Result<DiagonalEmbedding, Error> {
    let n = side.n;
    let mut images = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let m = gl_matrix(n, &[(i, j, 1)]);
                images.push((
                    format!("e[{},{}]", i + 1, j + 1),
                    m.clone(),
                    image_of_matrix(side, &m)?,
                ));
            }
        }
    }
    for i in 0..n.saturating_sub(1) {
        let m = gl_matrix(n, &[(i, i, 1), (i + 1, i + 1, -1)]);
        images.push((format!("h[{}]", i + 1), m.clone(), image_of_matrix(side, &m)?));
    }
    let eye: Vec<(usize, usize, i64)> = (0..n).map(|i| (i, i, 1)).collect();
    let m = gl_matrix(n, &eye);
    images.push(("I".to_string(), m.clone(), image_of_matrix(side, &m)?));
    Ok(DiagonalEmbedding { n, images })
}

#[derive(Debug, Clone)]
pub struct ClosureCheck {
    pub pair: String,
    pub pass: bool,
    pub detail: String,
}

/// Verify that the diagonal images close on the gl_n current algebra: the
/// zeroth products realize the Lie brackets and the first products are the
/// expected central terms, `(l+1) tr(uv)` on the sl_n part.
pub fn embedding_closure_check(
    side: &CosetSide,
    emb: &DiagonalEmbedding,
) -> Result<Vec<ClosureCheck>, Error> {
    let alg = &side.algebra;
    let n = side.n;
    let mut out = Vec::new();
    for (name_u, mu, img_u) in &emb.images {
        for (name_v, mv, img_v) in &emb.images {
            let p = alg.bracket(img_u, img_v)?;
            // gl_n bracket of the matrices
            let mut comm = vec![vec![Scalar::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut acc = Scalar::zero();
                    for r in 0..n {
                        acc = acc.add(&mu[i][r].mul(&mv[r][j]));
                        acc = acc.sub(&mv[i][r].mul(&mu[r][j]));
                    }
                    comm[i][j] = acc;
                }
            }
            let expect0 = image_of_matrix(side, &comm)?;
            // central: l tr_{n+1}(u~ v~) + tr_n(u v)
            let mut tr_small = Scalar::zero();
            let mut tr_embedded = Scalar::zero();
            for i in 0..n {
                for j in 0..n {
                    tr_small = tr_small.add(&mu[i][j].mul(&mv[j][i]));
                }
            }
            // tr_{n+1}(u~ v~) = tr_n(uv) - tr(u)tr(v)/(n+1)
            let (mut tru, mut trv) = (Scalar::zero(), Scalar::zero());
            for i in 0..n {
                tru = tru.add(&mu[i][i]);
                trv = trv.add(&mv[i][i]);
            }
            tr_embedded = tr_embedded
                .add(&tr_small)
                .sub(&tru.mul(&trv).div(&Scalar::from_int((n + 1) as i64))?);
            let central = side.l.mul(&tr_embedded).add(&tr_small);
            let mut expect = LambdaPolynomial::zero(alg.id);
            if !expect0.is_zero() {
                expect.set(0, expect0);
            }
            if !central.is_zero() {
                let mut c = State::zero(alg.id);
                c.add_term(Vec::new(), central);
                expect.set(1, c);
            }
            let pass = p == expect;
            out.push(ClosureCheck {
                pair: format!("[{} , {}]", name_u, name_v),
                pass,
                detail: if pass {
                    "closes at the shifted level".to_string()
                } else {
                    "unexpected bracket".to_string()
                },
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub passes: bool,
    pub witnesses: Vec<String>,
}

/// `A` lies in the coset iff every non-negative product of every diagonal
/// image with `A` vanishes exactly.
pub fn coset_membership(
    side: &CosetSide,
    emb: &DiagonalEmbedding,
    a: &State,
) -> Result<MembershipReport, Error> {
    let alg = &side.algebra;
    let mut witnesses = Vec::new();
    for (name, _, img) in &emb.images {
        let p = alg.bracket(img, a)?;
        if !p.is_zero() {
            let n = p.coeffs.iter().position(|s| !s.is_zero()).unwrap();
            witnesses.push(format!(
                "[{} _l A] has l^({}) coefficient {}",
                name,
                n,
                alg.render_state(&p.nth(n))
            ));
        }
    }
    Ok(MembershipReport {
        passes: witnesses.is_empty(),
        witnesses,
    })
}

/// The hatted n = 2 fields in `V^l(sl_3) (x) E(2)`; works both at the
/// generic level and in the rescaled limit regime.
///
/// The sl_3 Cartan part of `H^` is `-(h_1 + 2 h_2)/(l+3)`: the printed
/// source drops the sign of `h_1`, but the commutant condition against the
/// diagonal gl_2 forces the Cartan part to pair to zero with `h_1`, which
/// pins it to a multiple of `h_1 + 2 h_2`, and the `[H^ G+-^]` eigenvalues
/// fix the overall sign. The membership and table tests check this.
pub fn coset_generators_n2(side: &CosetSide) -> Result<W32Set, Error> {
    assert_eq!(side.n, 2);
    let alg = &side.algebra;
    let l = &side.l;
    let lp3 = l.add(&Scalar::from_int(3));
    let inv_lp3 = lp3.inv()?;
    let k = inv_lp3.sub(&Scalar::one());

    let h1 = side.current("h[1]")?;
    let h2 = side.current("h[2]")?;
    let e12 = side.current("e[1,2]")?;
    let e21 = side.current("e[2,1]")?;
    let e13 = side.current("e[1,3]")?;
    let e31 = side.current("e[3,1]")?;
    let e23 = side.current("e[2,3]")?;
    let e32 = side.current("e[3,2]")?;
    let b1 = side.bc("b1")?;
    let b2 = side.bc("b2")?;
    let c1 = side.bc("c1")?;
    let c2 = side.bc("c2")?;

    let no = |x: &State, y: &State| alg.nop(x, y);
    let no3 = |x: &State, y: &State, z: &State| alg.nop(x, &alg.nop(y, z)?);

    // H^ = (1/(l+3)) (-h1 - 2h2 + l :b1c1: + l :b2c2:)
    let hhat = h1
        .neg()
        .sub(&h2.scale_int(2))
        .add(&no(&b1, &c1)?.scale(l))
        .add(&no(&b2, &c2)?.scale(l))
        .scale(&inv_lp3);

    // G+^ = (1/(l+3)) (:e31 b1: + :e32 b2:)
    let gplus = no(&e31, &b1)?.add(&no(&e32, &b2)?).scale(&inv_lp3);
    // G-^ = (1/(l+3)) (:e13 c1: + :e23 c2:)
    let gminus = no(&e13, &c1)?.add(&no(&e23, &c2)?).scale(&inv_lp3);

    // S^ = -(3/(2(l+3)^2)) ( ... ). Relative to the printed display the
    // h1-dependent coefficients are corrected (the transcription of the
    // source drops minus signs around h_1, as in H^ above) and the
    // (db_1)c_1 term is restored; the corrected element is re-derived from
    // scratch in the derive_shat integration test: it is the unique
    // weight-2 commutant element with the displayed H, G+- and S.S poles.
    let half = Scalar::rational(1, 2);
    let lin = |a: i64, b: i64| Scalar::from_int(a).mul(l).add(&Scalar::from_int(b));
    let mut inner = no(&h1, &h1)?.scale(&half);
    inner = inner.sub(&no(&h1, &h2)?);
    inner = inner.sub(&no(&h2, &h2)?);
    inner = inner.add(&no(&e12, &e21)?.scale_int(3));
    inner = inner.sub(&no(&e23, &e32)?);
    inner = inner.sub(&no(&e13, &e31)?);
    inner = inner.sub(&no3(&h1, &b1, &c1)?.scale(&lin(1, 2)));
    inner = inner.add(&no3(&h1, &b2, &c2)?.scale(&lin(2, 3)));
    inner = inner.add(&no3(&h2, &b1, &c1)?.scale(&lin(1, 1)));
    inner = inner.add(&no3(&h2, &b2, &c2)?.scale(&lin(1, 1)));
    inner = inner.sub(&no3(&e12, &b2, &c1)?.scale(&lin(3, 5)));
    inner = inner.sub(&no3(&e21, &b1, &c2)?.scale(&lin(3, 5)));
    inner = inner.add(
        &alg.nop(&b1, &no3(&b2, &c1, &c2)?)?
            .scale(&l.mul(&lin(2, 3))),
    );
    let lhalf = half.mul(l).mul(&lin(1, 2)); // l(l+2)/2
    inner = inner.sub(&no(&b1, &alg.derivative(&c1))?.scale(&lhalf));
    inner = inner.add(&no(&alg.derivative(&b1), &c1)?.scale(&lhalf));
    inner = inner.sub(&no(&b2, &alg.derivative(&c2))?.scale(&lhalf));
    inner = inner.add(&no(&alg.derivative(&b2), &c2)?.scale(&lhalf));
    inner = inner.sub(&alg.derivative(&h1));
    inner = inner.add(&alg.derivative(&h2));
    let shat = inner.scale(
        &Scalar::rational(-3, 2)
            .mul(&inv_lp3)
            .mul(&inv_lp3),
    );

    derived_fields(side.algebra.clone(), k, hhat, shat, gplus, gminus)
}

/// The eight rescaled fields whose large-level limits generate the coset,
/// built over `Q(s)` with `l = s^{-2}`. Every coefficient must be pole-free
/// at `s = 0`.
pub fn limit_fields(side: &CosetSide) -> Result<Vec<(String, State)>, Error> {
    if side.algebra.context != ParameterContext::limit() {
        return Err(Error::Config(
            "limit fields require the limit parameter context".into(),
        ));
    }
    let alg = &side.algebra;
    let set = coset_generators_n2(side)?;
    let l = &side.l;
    let sqrt_l = alg.context.lookup("sqrt(l)")?;
    let no = |x: &State, y: &State| alg.nop(x, y);
    let r = |p: i64, q: i64| Scalar::rational(p, q);

    let hh = no(&set.h, &set.h)?;
    let j0 = set.h.clone();
    let j1 = set
        .w2
        .scale(&r(2, 9))
        .sub(&set.l.scale(&r(1, 9)))
        .sub(&hh.scale(&r(1, 3)))
        .add(&alg.derivative(&set.h).scale(&r(1, 2)));
    let omega0 = set
        .l
        .scale(&r(8, 9))
        .add(&set.w2.scale(&r(2, 9)))
        .sub(&hh.scale(&r(1, 3)));
    let omega1 = set
        .w3
        .scale(&l.mul(&r(2, 9)))
        .sub(&no(&set.h, &set.l)?.scale(&r(2, 9)))
        .add(&alg.derivative(&set.l).scale(&r(1, 9)))
        .sub(&no(&alg.derivative(&set.h), &set.h)?.scale(&r(1, 3)))
        .add(&no(&set.h, &hh)?.scale(&r(1, 18)))
        .sub(&alg.derivative(&alg.derivative(&set.h)).scale(&r(1, 9)))
        .add(&alg.derivative(&set.w2).scale(&r(1, 9)))
        .add(&no(&set.gplus, &set.gminus)?.scale(&l.mul(&r(2, 3))))
        .sub(&no(&set.h, &set.w2)?.scale(&r(2, 9)));
    let n0 = set.gplus.scale(&sqrt_l);
    let n1 = set
        .qplus
        .scale(&sqrt_l.mul(&r(-2, 9)))
        .sub(&no(&set.h, &set.gplus)?.scale(&sqrt_l.mul(&r(2, 3))))
        .add(&alg.derivative(&set.gplus).scale(&sqrt_l.mul(&r(8, 9))));
    let m0 = set.gminus.scale(&sqrt_l);
    let m1 = set
        .qminus
        .scale(&sqrt_l.mul(&r(2, 9)))
        .sub(&no(&set.h, &set.gminus)?.scale(&sqrt_l.mul(&r(2, 3))))
        .add(&alg.derivative(&set.gminus).scale(&sqrt_l.mul(&r(1, 9))));
    Ok(vec![
        ("J0".to_string(), j0),
        ("J1".to_string(), j1),
        ("Omega0".to_string(), omega0),
        ("Omega1".to_string(), omega1),
        ("N0".to_string(), n0),
        ("N1".to_string(), n1),
        ("M0".to_string(), m0),
        ("M1".to_string(), m1),
    ])
}

/// Evaluate at `s = 0`; a surviving negative power of `s` is reported as an
/// ill-defined limit, naming the offending term.
pub fn limit_value(side: &CosetSide, a: &State) -> Result<State, Error> {
    let mut out = State::zero(a.algebra_id);
    out.fock = a.fock.clone();
    for (m, c) in &a.terms {
        match c.substitute(&Scalar::zero()) {
            Ok(v) => out.add_term(m.clone(), v),
            Err(_) => {
                return Err(Error::LimitPole {
                    term: side.algebra.render_monomial(m),
                })
            }
        }
    }
    if out.terms.is_empty() {
        out.fock = None;
    }
    Ok(out)
}

/// The invariant-bilinear generators of the limit algebra, built in a
/// standalone rank-4 Heisenberg (x) E(2) with pairings `[a_i l ab_j] =
/// delta_ij l`.
pub fn invariant_limit_targets() -> Result<(Arc<Algebra>, Vec<(String, State)>), Error> {
    let ctx = ParameterContext::limit();
    let mut b = crate::bracket::AlgebraBuilder::new("H4", ctx.clone());
    for name in ["a1", "a2", "ab1", "ab2"] {
        b.add_generator(crate::state::GeneratorSymbol::even(name, 2));
    }
    let id = b.id();
    for i in 0..2u16 {
        let mut central = State::zero(id);
        central.add_term(Vec::new(), Scalar::one());
        let mut p = LambdaPolynomial::zero(id);
        p.set(1, central);
        b.set_bracket(i, i + 2, p);
    }
    let h4 = b.build()?;
    let bc = bc_system(2, ctx)?;
    let alg = tensor(&h4, &bc)?;
    let g = |name: &str| alg.gen_state_by_name(name);
    let d = |s: &State| alg.derivative(s);
    let no = |x: &State, y: &State| alg.nop(x, y);
    let pair = |x: &State, y: &State, xd: &State, yd: &State| -> Result<(State, State), Error> {
        Ok((no(x, y)?.add(&no(xd, yd)?), no(x, &d(y))?.add(&no(xd, &d(yd))?)))
    };
    let (b1, c1, b2, c2) = (g("b1")?, g("c1")?, g("b2")?, g("c2")?);
    let (a1, a2, ab1, ab2) = (g("a1")?, g("a2")?, g("ab1")?, g("ab2")?);
    let (j0, j1) = pair(&b1, &c1, &b2, &c2)?;
    let (w0, w1) = pair(&a1, &ab1, &a2, &ab2)?;
    let (nu0, nu1) = pair(&b1, &ab1, &b2, &ab2)?;
    let (mu0, mu1) = pair(&a1, &c1, &a2, &c2)?;
    Ok((
        alg,
        vec![
            ("j0".to_string(), j0),
            ("j1".to_string(), j1),
            ("w0".to_string(), w0),
            ("w1".to_string(), w1),
            ("nu0".to_string(), nu0),
            ("nu1".to_string(), nu1),
            ("mu0".to_string(), mu0),
            ("mu1".to_string(), mu1),
        ],
    ))
}

/// Transport a target-algebra state into the rescaled limit algebra: the
/// rank-4 Heisenberg generators name the limits of the rescaled root
/// currents.
pub fn transport_target(side: &CosetSide, target_alg: &Algebra, s: &State) -> Result<State, Error> {
    let map = [
        ("a1", "e[1,3]"),
        ("a2", "e[2,3]"),
        ("ab1", "e[3,1]"),
        ("ab2", "e[3,2]"),
        ("b1", "b1"),
        ("c1", "c1"),
        ("b2", "b2"),
        ("c2", "c2"),
    ];
    let mut out = State::zero(side.algebra.id);
    for (m, c) in &s.terms {
        let mut letters = Vec::with_capacity(m.len());
        for letter in m {
            let name = &target_alg.generator(letter.gen).name;
            let (_, to) = map
                .iter()
                .find(|(from, _)| from == name)
                .ok_or_else(|| Error::UnknownName(name.clone()))?;
            let gen = side
                .algebra
                .find_generator(to)
                .ok_or_else(|| Error::UnknownName(to.to_string()))?;
            letters.push(crate::state::Letter::new(gen, letter.der));
        }
        out = out.add(&side.algebra.normalize_letters(&letters, c, &None));
    }
    Ok(out)
}
