//! Constructors for the concrete vertex superalgebras in play: Heisenberg
//! and neutral-fermion algebras from a Gram matrix, bc-systems, affine
//! current algebras from Lie data, and tensor products of any of these.

use crate::bracket::{Algebra, AlgebraBuilder};
use crate::error::Error;
use crate::scalar::{parse_scalar, ParameterContext, Scalar};
use crate::state::{GeneratorSymbol, LambdaPolynomial, Letter, State};
use std::sync::Arc;

pub type GramMatrix = Vec<Vec<Scalar>>;

fn check_gram(gram: &GramMatrix) -> Result<usize, Error> {
    let n = gram.len();
    for row in gram {
        if row.len() != n {
            return Err(Error::InvalidAlgebra("gram matrix is not square".into()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if gram[i][j] != gram[j][i] {
                return Err(Error::InvalidAlgebra(format!(
                    "gram matrix is not symmetric at ({}, {})",
                    i, j
                )));
            }
        }
    }
    Ok(n)
}

/// The Gram matrix `(x_i|x_j) = (-1)^{i+1} delta_{j,i+1}` (symmetrized),
/// shared by the Heisenberg and fermion halves of the free-field data.
pub fn alternating_adjacent_gram(size: usize) -> GramMatrix {
    let mut gram = vec![vec![Scalar::zero(); size]; size];
    for i in 0..size.saturating_sub(1) {
        // entry for (i+1, i+2) in 1-based indexing: sign (-1)^{i+2} = (-1)^i
        let sign = if i % 2 == 0 { 1 } else { -1 };
        gram[i][i + 1] = Scalar::from_int(sign);
        gram[i + 1][i] = Scalar::from_int(sign);
    }
    gram
}

/// Heisenberg vertex algebra: even weight-1 generators `a1..aN` with
/// `[a_i l a_j] = l * scale * gram[i][j] |0>`.
pub fn heisenberg(
    gram: &GramMatrix,
    scale: &Scalar,
    context: ParameterContext,
) -> Result<Arc<Algebra>, Error> {
    let n = check_gram(gram)?;
    let mut b = AlgebraBuilder::new("heisenberg", context);
    for i in 0..n {
        b.add_generator(GeneratorSymbol::even(format!("a{}", i + 1), 2));
    }
    let id = b.id();
    for i in 0..n {
        for j in i..n {
            let c = scale.mul(&gram[i][j]);
            if c.is_zero() {
                continue;
            }
            let mut central = State::zero(id);
            central.add_term(Vec::new(), c);
            let mut p = LambdaPolynomial::zero(id);
            p.set(1, central);
            b.set_bracket(i as u16, j as u16, p);
        }
    }
    b.build()
}

/// Neutral fermion algebra: odd weight-1/2 generators `F1..FN` with
/// `[F_i l F_j] = gram[i][j] |0>`.
pub fn neutral_fermion(gram: &GramMatrix, context: ParameterContext) -> Result<Arc<Algebra>, Error> {
    let n = check_gram(gram)?;
    let mut b = AlgebraBuilder::new("fermion", context);
    for i in 0..n {
        b.add_generator(GeneratorSymbol::odd(format!("F{}", i + 1), 1));
    }
    let id = b.id();
    for i in 0..n {
        for j in i..n {
            if gram[i][j].is_zero() {
                continue;
            }
            let mut central = State::zero(id);
            central.add_term(Vec::new(), gram[i][j].clone());
            let mut p = LambdaPolynomial::zero(id);
            p.set(0, central);
            b.set_bracket(i as u16, j as u16, p);
        }
    }
    b.build()
}

/// Rank-n bc-system: odd weight-1/2 pairs `b_i, c_i` with
/// `[b_i l c_j] = delta_{ij} |0>`. Generator order is b1, c1, b2, c2, ...
pub fn bc_system(n: usize, context: ParameterContext) -> Result<Arc<Algebra>, Error> {
    let mut b = AlgebraBuilder::new("bc", context);
    for i in 0..n {
        b.add_generator(GeneratorSymbol::odd(format!("b{}", i + 1), 1));
        b.add_generator(GeneratorSymbol::odd(format!("c{}", i + 1), 1));
    }
    let id = b.id();
    for i in 0..n {
        let mut central = State::zero(id);
        central.add_term(Vec::new(), Scalar::one());
        let mut p = LambdaPolynomial::zero(id);
        p.set(0, central);
        b.set_bracket(2 * i as u16, 2 * i as u16 + 1, p);
    }
    b.build()
}

/// The standard bc Virasoro element
/// `L = -1/2 sum_i ( :b_i dc_i: - :(db_i) c_i: )`,
/// located by generator names so it also works inside tensor products.
pub fn bc_virasoro(alg: &Algebra) -> Result<State, Error> {
    let mut out = State::zero(alg.id);
    let half = Scalar::rational(-1, 2);
    let mut i = 1;
    let mut found = false;
    while let (Some(bi), Some(ci)) = (
        alg.find_generator(&format!("b{}", i)),
        alg.find_generator(&format!("c{}", i)),
    ) {
        found = true;
        out.add_term(vec![Letter::new(bi, 0), Letter::new(ci, 1)], half.clone());
        out.add_term(vec![Letter::new(bi, 1), Letter::new(ci, 0)], half.neg());
        i += 1;
    }
    if !found {
        return Err(Error::UnknownName("b1".to_string()));
    }
    Ok(out)
}

// ----------------------------------------------------------------------
// Lie data and affine algebras
// ----------------------------------------------------------------------

/// Finite-dimensional Lie algebra presented by structure constants and an
/// invariant bilinear form (the defining-representation trace for sl_n).
#[derive(Debug, Clone)]
pub struct LieData {
    pub names: Vec<String>,
    /// `brackets[i][j]` is `[x_i, x_j]` as a list of (basis index, coeff).
    pub brackets: Vec<Vec<Vec<(usize, Scalar)>>>,
    pub form: Vec<Vec<Scalar>>,
}

impl LieData {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// sl_n with basis e[i,j] (i != j, row-major) followed by h[1..n-1],
    /// h_i = e_{i,i} - e_{i+1,i+1}; the form is the trace form.
    pub fn sl(n: usize) -> LieData {
        assert!(n >= 2);
        // basis as n x n integer matrices
        let mut names = Vec::new();
        let mut mats: Vec<Vec<Vec<i64>>> = Vec::new();
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![0i64; n]; n];
            m[i][j] = 1;
            m
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    names.push(format!("e[{},{}]", i + 1, j + 1));
                    mats.push(unit(i, j));
                }
            }
        }
        for i in 0..n - 1 {
            names.push(format!("h[{}]", i + 1));
            let mut m = vec![vec![0i64; n]; n];
            m[i][i] = 1;
            m[i + 1][i + 1] = -1;
            mats.push(m);
        }
        let dim = mats.len();
        let mat_mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| {
            let mut c = vec![vec![0i64; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if a[i][k] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        c[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            c
        };
        // express a traceless matrix in the chosen basis
        let to_coords = |m: &Vec<Vec<i64>>| {
            let mut coords = vec![0i64; dim];
            let mut idx = 0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        coords[idx] = m[i][j];
                        idx += 1;
                    }
                }
            }
            // diagonal: partial sums give the h coefficients
            let mut acc = 0;
            for i in 0..n - 1 {
                acc += m[i][i];
                coords[idx + i] = acc;
            }
            coords
        };
        let mut brackets = vec![vec![Vec::new(); dim]; dim];
        let mut form = vec![vec![Scalar::zero(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                let ab = mat_mul(&mats[a], &mats[b]);
                let ba = mat_mul(&mats[b], &mats[a]);
                let mut comm = vec![vec![0i64; n]; n];
                let mut trace = 0i64;
                for i in 0..n {
                    for j in 0..n {
                        comm[i][j] = ab[i][j] - ba[i][j];
                    }
                    trace += ab[i][i];
                }
                form[a][b] = Scalar::from_int(trace);
                brackets[a][b] = to_coords(&comm)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(k, c)| (k, Scalar::from_int(c)))
                    .collect();
            }
        }
        LieData {
            names,
            brackets,
            form,
        }
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    /// Dual Coxeter number, from the Casimir eigenvalue on the adjoint
    /// representation: `sum_i [x_i, [x^i, y]] = 2 h^v y`.
    pub fn dual_coxeter(&self) -> Result<Scalar, Error> {
        let g = invert_matrix(&self.form)
            .ok_or_else(|| Error::InvalidAlgebra("degenerate invariant form".into()))?;
        let dim = self.dim();
        // act on y = x_0
        let y = 0;
        let mut total = vec![Scalar::zero(); dim];
        for i in 0..dim {
            // x^i = sum_j g[j][i] x_j
            for j in 0..dim {
                if g[j][i].is_zero() {
                    continue;
                }
                for &(k, ref c1) in &self.brackets[j][y] {
                    for &(m, ref c2) in &self.brackets[i][k] {
                        total[m] = total[m].add(&g[j][i].mul(c1).mul(c2));
                    }
                }
            }
        }
        for (m, v) in total.iter().enumerate() {
            if m != y && !v.is_zero() {
                return Err(Error::InvalidAlgebra(
                    "Casimir does not act by a scalar on the adjoint".into(),
                ));
            }
        }
        total[y].div(&Scalar::from_int(2)).map_err(Error::from)
    }
}

fn invert_matrix(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].div(&p).unwrap();
            inv[col][j] = inv[col][j].div(&p).unwrap();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
            }
        }
    }
    Some(inv)
}

/// Level data carried by an affine component, for Sugawara vectors and for
/// the rescaled limit construction.
#[derive(Debug, Clone)]
pub struct AffineInfo {
    pub lie: LieData,
    pub level: Scalar,
    /// Structure constants are multiplied by this (1 for the plain affine
    /// algebra; `s` for the limit regime where generators are divided by
    /// sqrt(l) = 1/s).
    pub struct_scale: Scalar,
}

/// Universal affine vertex algebra: even weight-1 currents with
/// `[u l v] = struct_scale [u,v] + l * level * (u|v) |0>`.
pub fn affine_scaled(
    lie: &LieData,
    struct_scale: &Scalar,
    level: &Scalar,
    context: ParameterContext,
) -> Result<Arc<Algebra>, Error> {
    let dim = lie.dim();
    let mut b = AlgebraBuilder::new("affine", context);
    for name in &lie.names {
        b.add_generator(GeneratorSymbol::even(name.clone(), 2));
    }
    b.add_component(
        "affine",
        0,
        dim as u16,
        Some(AffineInfo {
            lie: lie.clone(),
            level: level.clone(),
            struct_scale: struct_scale.clone(),
        }),
    );
    let id = b.id();
    for i in 0..dim {
        for j in 0..dim {
            let mut p = LambdaPolynomial::zero(id);
            let mut zeroth = State::zero(id);
            for (k, c) in &lie.brackets[i][j] {
                zeroth.add_term(vec![Letter::new(*k as u16, 0)], struct_scale.mul(c));
            }
            if !zeroth.is_zero() {
                p.set(0, zeroth);
            }
            let central = level.mul(&lie.form[i][j]);
            if !central.is_zero() {
                let mut first = State::zero(id);
                first.add_term(Vec::new(), central);
                p.set(1, first);
            }
            if !p.is_zero() {
                b.set_bracket(i as u16, j as u16, p);
            }
        }
    }
    b.build()
}

pub fn affine(lie: &LieData, level: &Scalar, context: ParameterContext) -> Result<Arc<Algebra>, Error> {
    affine_scaled(lie, &Scalar::one(), level, context)
}

/// Sugawara Virasoro vector of the affine component `comp`:
/// `L = 1/(2(level + h^v)) sum_i :x_i x^i:`. Errors at critical level.
pub fn sugawara(alg: &Algebra, comp: usize) -> Result<State, Error> {
    let info = alg
        .components
        .get(comp)
        .and_then(|c| c.affine.as_ref().map(|a| (c.offset, a)))
        .ok_or_else(|| Error::InvalidAlgebra("component is not affine".into()))?;
    let (offset, info) = info;
    if !info.struct_scale.is_one() {
        return Err(Error::InvalidAlgebra(
            "Sugawara vector of a rescaled algebra is not defined".into(),
        ));
    }
    let hv = info.lie.dual_coxeter()?;
    let shifted = info.level.add(&hv);
    if shifted.is_zero() {
        return Err(Error::CriticalLevel);
    }
    let g = invert_matrix(&info.lie.form)
        .ok_or_else(|| Error::InvalidAlgebra("degenerate invariant form".into()))?;
    let dim = info.lie.dim();
    let norm = Scalar::one()
        .div(&Scalar::from_int(2).mul(&shifted))
        .unwrap();
    let mut acc = State::zero(alg.id);
    for i in 0..dim {
        for j in 0..dim {
            if g[j][i].is_zero() {
                continue;
            }
            let xi = alg.gen_state(offset + i as u16);
            let xj = alg.gen_state(offset + j as u16);
            acc = acc.add(&alg.nop(&xi, &xj)?.scale(&g[j][i]));
        }
    }
    Ok(acc.scale(&norm))
}

// ----------------------------------------------------------------------
// tensor products
// ----------------------------------------------------------------------

fn remap_lambda(p: &LambdaPolynomial, new_id: u32, offset: u16) -> LambdaPolynomial {
    LambdaPolynomial::from_coeffs(
        new_id,
        p.coeffs
            .iter()
            .map(|s| {
                let mut out = State::zero(new_id);
                for (m, c) in &s.terms {
                    let letters = m
                        .iter()
                        .map(|l| Letter::new(l.gen + offset, l.der))
                        .collect();
                    out.add_term(letters, c.clone());
                }
                out
            })
            .collect(),
    )
}

/// Tensor product: disjoint union of generators, cross-brackets zero.
pub fn tensor(a: &Algebra, b: &Algebra) -> Result<Arc<Algebra>, Error> {
    if a.context != b.context {
        return Err(Error::InvalidAlgebra(
            "tensor factors use different parameter contexts".into(),
        ));
    }
    let mut builder = AlgebraBuilder::new(format!("{}(x){}", a.name, b.name), a.context.clone());
    for g in &a.generators {
        builder.add_generator(g.clone());
    }
    for g in &b.generators {
        builder.add_generator(g.clone());
    }
    let na = a.gen_count() as u16;
    for c in &a.components {
        builder.add_component(c.name.clone(), c.offset, c.count, c.affine.clone());
    }
    for c in &b.components {
        builder.add_component(c.name.clone(), c.offset + na, c.count, c.affine.clone());
    }
    let id = builder.id();
    for i in 0..a.gen_count() {
        for j in 0..a.gen_count() {
            let p = a.base_bracket(i as u16, j as u16);
            if !p.is_zero() {
                builder.set_bracket(i as u16, j as u16, remap_lambda(p, id, 0));
            }
        }
    }
    for i in 0..b.gen_count() {
        for j in 0..b.gen_count() {
            let p = b.base_bracket(i as u16, j as u16);
            if !p.is_zero() {
                builder.set_bracket(i as u16 + na, j as u16 + na, remap_lambda(p, id, na));
            }
        }
    }
    builder.build()
}

/// Transport a state of a tensor factor into the tensor algebra.
pub fn embed(target: &Algebra, offset: u16, s: &State) -> State {
    let mut out = State::zero(target.id);
    for (m, c) in &s.terms {
        let letters = m.iter().map(|l| Letter::new(l.gen + offset, l.der)).collect();
        out.add_term(letters, c.clone());
    }
    out
}

// ----------------------------------------------------------------------
// JSON configuration
// ----------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum AlgebraConfig {
    Heisenberg {
        gram: Vec<Vec<String>>,
        scale: String,
    },
    Fermion {
        gram: Vec<Vec<String>>,
    },
    Bc {
        n: usize,
    },
    Affine {
        algebra: String,
        rank: usize,
        level: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scale: Option<String>,
    },
    Tensor {
        parts: Vec<AlgebraConfig>,
    },
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq)]
pub struct ScreeningConfig {
    pub mu: Vec<String>,
    pub dressing: String,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize, PartialEq)]
pub struct EngineConfig {
    pub context: String,
    pub algebra: AlgebraConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub screenings: Vec<ScreeningConfig>,
}

fn parse_gram(gram: &[Vec<String>], ctx: &ParameterContext) -> Result<GramMatrix, Error> {
    gram.iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_scalar(s, ctx).map_err(Error::from))
                .collect()
        })
        .collect()
}

pub fn build_algebra(cfg: &AlgebraConfig, ctx: &ParameterContext) -> Result<Arc<Algebra>, Error> {
    match cfg {
        AlgebraConfig::Heisenberg { gram, scale } => {
            let gram = parse_gram(gram, ctx)?;
            let scale = parse_scalar(scale, ctx)?;
            heisenberg(&gram, &scale, ctx.clone())
        }
        AlgebraConfig::Fermion { gram } => {
            let gram = parse_gram(gram, ctx)?;
            neutral_fermion(&gram, ctx.clone())
        }
        AlgebraConfig::Bc { n } => bc_system(*n, ctx.clone()),
        AlgebraConfig::Affine {
            algebra,
            rank,
            level,
            scale,
        } => {
            if algebra != "sl" {
                return Err(Error::Config(format!(
                    "unsupported affine algebra `{}` (only `sl`)",
                    algebra
                )));
            }
            let lie = LieData::sl(*rank);
            let level = parse_scalar(level, ctx)?;
            let scale = match scale {
                Some(s) => parse_scalar(s, ctx)?,
                None => Scalar::one(),
            };
            affine_scaled(&lie, &scale, &level, ctx.clone())
        }
        AlgebraConfig::Tensor { parts } => {
            if parts.is_empty() {
                return Err(Error::Config("empty tensor product".into()));
            }
            let mut acc = build_algebra(&parts[0], ctx)?;
            for part in &parts[1..] {
                let next = build_algebra(part, ctx)?;
                acc = tensor(&acc, &next)?;
            }
            Ok(acc)
        }
    }
}

pub fn context_from_name(name: &str) -> Result<ParameterContext, Error> {
    match name {
        "generic" => Ok(ParameterContext::generic()),
        "limit" => Ok(ParameterContext::limit()),
        other => Err(Error::Config(format!("unknown context `{}`", other))),
    }
}
