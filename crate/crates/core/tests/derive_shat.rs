//! Derive the weight-2 commutant element with the displayed pole data from
//! scratch, as an independent check on the transcription of S^.

use voa_core::coset::{coset_generators_n2, diagonal_embedding, CosetSide};
use voa_core::scalar::Scalar;
use voa_core::screening::enumerate_basis;
use voa_core::state::{Monomial, State};

/// Dense nullspace over the scalar field.
fn nullspace(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut rank = 0;
    for col in 0..ncols {
        let Some(r) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = rows[rank][col].inv().unwrap();
        for j in 0..ncols {
            rows[rank][j] = rows[rank][j].mul(&inv);
        }
        for r2 in 0..rows.len() {
            if r2 != rank && !rows[r2][col].is_zero() {
                let f = rows[r2][col].clone();
                for j in 0..ncols {
                    let v = rows[r2][j].sub(&f.mul(&rows[rank][j]));
                    rows[r2][j] = v;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for &(r, c) in &pivots {
            v[c] = rows[r][free].neg();
        }
        out.push(v);
    }
    out
}

#[test]
fn derive_shat_from_commutant() {
    let side = CosetSide::generic(2).unwrap();
    let alg = &side.algebra;
    let emb = diagonal_embedding(&side).unwrap();
    let basis: Vec<Monomial> = enumerate_basis(alg, 4);
    let n = basis.len();
    println!("weight-2 stratum dimension: {}", n);

    // commutant constraints
    let mut row_index: std::collections::HashMap<(usize, usize, Monomial), usize> =
        std::collections::HashMap::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (j, mono) in basis.iter().enumerate() {
        let mut v = State::zero(alg.id);
        v.add_term(mono.clone(), Scalar::one());
        for (ui, (_, _, img)) in emb.images.iter().enumerate() {
            let p = alg.bracket(img, &v).unwrap();
            for (k, s) in p.coeffs.iter().enumerate() {
                for (m, c) in &s.terms {
                    let next = row_index.len();
                    let r = *row_index.entry((ui, k, m.clone())).or_insert(next);
                    entries.push((r, j, c.clone()));
                }
            }
        }
    }
    let mut rows = vec![vec![Scalar::zero(); n]; row_index.len()];
    for (r, j, c) in entries {
        rows[r][j] = rows[r][j].add(&c);
    }
    let null = nullspace(rows, n);
    println!("commutant dimension at weight 2: {}", null.len());
    assert_eq!(null.len(), 4);

    let state_of = |v: &[Scalar]| {
        let mut s = State::zero(alg.id);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                s.add_term(basis[j].clone(), c.clone());
            }
        }
        s
    };

    // pin S^ by linear pole data: its poles against H^ and G+-^, plus the
    // primarity of Q+-^ = (G+-)_(0) v + dG+-/4 (the lambda^(2,3) parts of
    // [L^ _l Q+-^] vanish), which is also linear in v.
    let set = coset_generators_n2(&side).unwrap();
    let k = &set.k;
    let c_hs = Scalar::rational(-3, 2).mul(&Scalar::from_int(2).mul(k).add(&Scalar::one()));
    let quarter = Scalar::rational(1, 4);
    // functionals of the form  v -> [probe2 _l [probe1 _l v]_(n1)]_(n2)
    // (probe2 = None means a single bracket)
    struct Cond {
        probe1: State,
        n1: usize,
        probe2: Option<(State, usize)>,
        want: State,
    }
    let mut targets: Vec<Cond> = vec![
        Cond { probe1: set.h.clone(), n1: 1, probe2: None, want: set.h.scale(&c_hs) },
        Cond { probe1: set.h.clone(), n1: 0, probe2: None, want: State::zero(alg.id) },
        Cond { probe1: set.gplus.clone(), n1: 1, probe2: None,
               want: set.gplus.scale(&Scalar::rational(-3, 4)) },
        Cond { probe1: set.gminus.clone(), n1: 1, probe2: None,
               want: set.gminus.scale(&Scalar::rational(-3, 4)) },
    ];
    for (g, sign) in [(set.gplus.clone(), 1i64), (set.gminus.clone(), 1)] {
        let _ = sign;
        for n2 in [2usize, 3] {
            // L_(n2) ( G_(0) v ) = -1/4 L_(n2) dG
            let dg = alg.derivative(&g);
            let rhs_state = alg
                .bracket(&set.l, &dg)
                .unwrap()
                .nth(n2)
                .scale(&quarter.neg());
            targets.push(Cond {
                probe1: g.clone(),
                n1: 0,
                probe2: Some((set.l.clone(), n2)),
                want: rhs_state,
            });
        }
    }
    // solve sum_i y_i * (functionals on null_i) = targets
    let mut rhs_index: std::collections::HashMap<(usize, Monomial), usize> =
        std::collections::HashMap::new();
    let mut sys: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut rhs: Vec<(usize, Scalar)> = Vec::new();
    for (ti, cond) in targets.iter().enumerate() {
        for (i, nv) in null.iter().enumerate() {
            let s = state_of(nv);
            let mut val = alg.bracket(&cond.probe1, &s).unwrap().nth(cond.n1);
            if let Some((p2, n2)) = &cond.probe2 {
                val = alg.bracket(p2, &val).unwrap().nth(*n2);
            }
            for (m, c) in &val.terms {
                let next = rhs_index.len();
                let r = *rhs_index.entry((ti, m.clone())).or_insert(next);
                sys.push((r, i, c.clone()));
            }
        }
        for (m, c) in &cond.want.terms {
            let next = rhs_index.len();
            let r = *rhs_index.entry((ti, m.clone())).or_insert(next);
            rhs.push((r, c.clone()));
        }
    }
    let nrows = rhs_index.len();
    let cols = null.len();
    let mut mat = vec![vec![Scalar::zero(); cols + 1]; nrows];
    for (r, i, c) in sys {
        mat[r][i] = mat[r][i].add(&c);
    }
    for (r, c) in rhs {
        mat[r][cols] = mat[r][cols].add(&c);
    }
    let mut rank = 0;
    for col in 0..cols {
        let Some(r) = (rank..nrows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, r);
        let inv = mat[rank][col].inv().unwrap();
        for j in 0..=cols {
            mat[rank][j] = mat[rank][j].mul(&inv);
        }
        for r2 in 0..nrows {
            if r2 != rank && !mat[r2][col].is_zero() {
                let f = mat[r2][col].clone();
                for j in 0..=cols {
                    let v = mat[r2][j].sub(&f.mul(&mat[rank][j]));
                    mat[r2][j] = v;
                }
            }
        }
        rank += 1;
    }
    for r in rank..nrows {
        assert!(
            mat[r][cols].is_zero(),
            "inconsistent system: no commutant element has the displayed poles"
        );
    }
    // pivot bookkeeping for a possibly rank-deficient system
    let mut pivot_of_row: Vec<usize> = Vec::new();
    {
        let mut col = 0;
        for r in 0..rank {
            while col < cols && mat[r][col].is_zero() {
                col += 1;
            }
            pivot_of_row.push(col);
        }
    }
    let pivot_cols: Vec<usize> = pivot_of_row.clone();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    assert!(free_cols.len() <= 1, "more than one free direction");
    let mut y_particular = vec![Scalar::zero(); cols];
    for (r, &pc) in pivot_of_row.iter().enumerate() {
        y_particular[pc] = mat[r][cols].clone();
    }
    let combine = |y: &[Scalar]| {
        let mut s = State::zero(alg.id);
        for (i, c) in y.iter().enumerate() {
            if !c.is_zero() {
                s = s.add(&state_of(&null[i]).scale(c));
            }
        }
        s
    };
    let vstar = combine(&y_particular);
    let solution = if free_cols.is_empty() {
        vstar
    } else {
        // one-parameter family v(t) = v* + t u0; pin t by the quadratic
        // S.S rows (quartic pole and double pole), eliminating t^2 between
        // pairs of scalar equations.
        let f = free_cols[0];
        let mut y_kernel = vec![Scalar::zero(); cols];
        y_kernel[f] = Scalar::one();
        for (r, &pc) in pivot_of_row.iter().enumerate() {
            y_kernel[pc] = mat[r][f].neg();
        }
        let u0 = combine(&y_kernel);
        println!("free direction u0 = {}", alg.render_state(&u0));
        let pvv = alg.bracket(&vstar, &vstar).unwrap();
        let pvu = alg
            .bracket(&vstar, &u0)
            .unwrap()
            .add(&alg.bracket(&u0, &vstar).unwrap());
        let puu = alg.bracket(&u0, &u0).unwrap();
        let kp1 = k.add(&Scalar::one());
        let quartic_target = Scalar::rational(9, 4)
            .mul(&Scalar::from_int(3).mul(k).add(&Scalar::from_int(2)))
            .mul(
                &Scalar::from_int(12)
                    .mul(k)
                    .mul(k)
                    .add(&Scalar::from_int(23).mul(k))
                    .add(&Scalar::from_int(6)),
            );
        let hh = alg.nop(&set.h, &set.h).unwrap();
        // double-pole target: 3(5k+2) v(t) - (9/2)(k+1)(4k+1) L - (9/4)(3k+1):HH:
        let c_s = Scalar::from_int(3).mul(&Scalar::from_int(5).mul(k).add(&Scalar::from_int(2)));
        let rest = set
            .l
            .scale(
                &Scalar::rational(9, 2)
                    .mul(&kp1)
                    .mul(&Scalar::from_int(4).mul(k).add(&Scalar::one())),
            )
            .add(&hh.scale(&Scalar::rational(9, 4).mul(&Scalar::from_int(3).mul(k).add(&Scalar::one()))));
        // equations: quad[i]: A + B t + C t^2 = 0
        let mut quads: Vec<(Scalar, Scalar, Scalar)> = Vec::new();
        quads.push((
            pvv.nth(3).vacuum_coefficient().sub(&quartic_target),
            pvu.nth(3).vacuum_coefficient(),
            puu.nth(3).vacuum_coefficient(),
        ));
        // collect monomial-wise equations from the double pole
        let mut monos: std::collections::BTreeSet<Monomial> = std::collections::BTreeSet::new();
        for s in [&pvv.nth(1), &pvu.nth(1), &puu.nth(1), &vstar, &u0, &rest] {
            monos.extend(s.terms.keys().cloned());
        }
        let coeff = |s: &State, m: &Monomial| s.terms.get(m).cloned().unwrap_or_else(Scalar::zero);
        for m in &monos {
            let a = coeff(&pvv.nth(1), m)
                .sub(&c_s.mul(&coeff(&vstar, m)))
                .add(&coeff(&rest, m));
            let b = coeff(&pvu.nth(1), m).sub(&c_s.mul(&coeff(&u0, m)));
            let c = coeff(&puu.nth(1), m);
            if !a.is_zero() || !b.is_zero() || !c.is_zero() {
                quads.push((a, b, c));
            }
        }
        // eliminate t^2 between pairs: t = (a1 c2 - a2 c1)/(a2 b1 - a1 b2)
        let mut t_value: Option<Scalar> = None;
        'outer: for i in 0..quads.len() {
            for j in i + 1..quads.len() {
                let (a1, b1, c1) = &quads[i];
                let (a2, b2, c2) = &quads[j];
                let den = c2.mul(b1).sub(&c1.mul(b2));
                if den.is_zero() {
                    continue;
                }
                let num = a2.mul(c1).sub(&a1.mul(c2));
                t_value = Some(num.div(&den).unwrap());
                break 'outer;
            }
        }
        let t = t_value.expect("no pair of quadratics eliminates t^2");
        println!("pinned t = {}", t.render("t"));
        // verify every quadratic at this root
        for (a, b, c) in &quads {
            let val = a.add(&b.mul(&t)).add(&c.mul(&t).mul(&t));
            assert!(val.is_zero(), "S.S rows reject the pinned parameter");
        }
        vstar.add(&u0.scale(&t))
    };
    println!("derived S^ =");
    println!("{}", alg.render_state(&solution));
    println!("---- difference (derived - transcribed):");
    println!("{}", alg.render_state(&solution.sub(&set.s)));
    assert_eq!(solution, set.s, "transcribed S^ disagrees with the derived one");
}
