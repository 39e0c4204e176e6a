//! Checks shared by the property tests and the acceptance harness. Each
//! returns `Err` with a description of the first counterexample.

#![allow(dead_code)]

use koszul_core::operad::{
    dimension, dual_presentation, enumerate_trees, fuss_catalan, graft, EngineConfig, Family,
    OperadPresentation, PlanarTree,
};
use koszul_core::series::{lagrange_coefficient, SparseTrinomial};
use koszul_core::{ExactSeries, Parity};
use num_bigint::BigUint;
use num_rational::BigRational;

pub type Check = Result<(), String>;

/// `g(f) = t` and `f(g) = t` for `f = g^{-1}`.
pub fn inversion_round_trip(g: &ExactSeries) -> Check {
    let f = g.invert().map_err(|e| e.to_string())?;
    let id = ExactSeries::identity(g.order());
    let gf = g.compose(&f).map_err(|e| e.to_string())?;
    let fg = f.compose(g).map_err(|e| e.to_string())?;
    if gf != id || fg != id {
        return Err(format!("g = {g}: g(f) = {gf}, f(g) = {fg}"));
    }
    Ok(())
}

/// Three routes to `[t^m]` of the inverse of `t - t^n + t^{2n-1}` agree.
pub fn lagrange_agreement(n: usize, max_m: usize) -> Check {
    let tri = SparseTrinomial::new(n).map_err(|e| e.to_string())?;
    let g = tri.to_series(max_m);
    let f = g.invert().map_err(|e| e.to_string())?;
    for m in 1..=max_m {
        let closed =
            BigRational::from_integer(tri.inverse_coefficient(m).map_err(|e| e.to_string())?);
        let general = lagrange_coefficient(&g, m).map_err(|e| e.to_string())?;
        if f.coeff(m) != &closed || closed != general {
            return Err(format!(
                "n = {n}, m = {m}: recurrence {}, closed form {closed}, Lagrange {general}",
                f.coeff(m)
            ));
        }
    }
    Ok(())
}

/// `-g(-t)` is an involution, and so is the dual presentation.
pub fn desuspension_involution(g: &ExactSeries, family: Family, n: usize, d: i64) -> Check {
    if &g.desuspend().desuspend() != g {
        return Err(format!("desuspending {g} twice changed it"));
    }
    for (k, c) in g.desuspend().terms() {
        let expected = if k % 2 == 1 {
            g.coeff(k).clone()
        } else {
            -g.coeff(k)
        };
        if c != &expected {
            return Err(format!(
                "coefficient of t^{k} in -g(-t) is {c}, expected {expected}"
            ));
        }
    }
    let pres = OperadPresentation::new(family, n, d).map_err(|e| e.to_string())?;
    if dual_presentation(&dual_presentation(&pres)) != pres {
        return Err(format!("dual of dual of {pres} differs"));
    }
    Ok(())
}

fn trees_upto(n: usize, max_p: usize) -> Vec<PlanarTree> {
    (0..=max_p)
        .flat_map(|p| enumerate_trees(n, p, None).unwrap())
        .collect()
}

/// Operadic associativity of signed grafting, exhaustively for triples with
/// at most `max_p` vertices in total.
///
/// Sequential: `(T ∘_i S) ∘_{i+j} U = T ∘_i (S ∘_j U)`.
/// Parallel: `(T ∘_i S) ∘_{k+|S|-1} U = (-1)^{|S||U|} (T ∘_k U) ∘_i S` for
/// `i < k`, where `|S|` counts vertices (each of odd degree).
pub fn graft_coherence(n: usize, max_p: usize, parity: Parity) -> Check {
    let trees = trees_upto(n, max_p);
    let g = |a: &PlanarTree, i: usize, b: &PlanarTree| graft(a, i, b, parity).unwrap();
    for t in &trees {
        for s in &trees {
            for u in &trees {
                if t.vertices() + s.vertices() + u.vertices() > max_p {
                    continue;
                }
                for i in 0..t.arity() {
                    let (ts, sign_ts) = g(t, i, s);
                    for j in 0..s.arity() {
                        let (left, s1) = g(&ts, i + j, u);
                        let (su, s2) = g(s, j, u);
                        let (right, s3) = g(t, i, &su);
                        if left != right || sign_ts * s1 != s2 * s3 {
                            return Err(format!(
                                "sequential: T = {t}, S = {s}, U = {u}, i = {i}, j = {j}"
                            ));
                        }
                    }
                    for k in i + 1..t.arity() {
                        let (left, s1) = g(&ts, k + s.arity() - 1, u);
                        let (tu, s2) = g(t, k, u);
                        let (right, s3) = g(&tu, i, s);
                        let twist = if parity.is_odd() && s.vertices() * u.vertices() % 2 == 1 {
                            -1
                        } else {
                            1
                        };
                        if left != right || sign_ts * s1 != twist * s2 * s3 {
                            return Err(format!(
                                "parallel: T = {t}, S = {s}, U = {u}, i = {i}, k = {k}"
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn fuss_catalan_count(n: usize, p: usize) -> Check {
    let trees = enumerate_trees(n, p, None).map_err(|e| e.to_string())?;
    if BigUint::from(trees.len()) != fuss_catalan(n, p) {
        return Err(format!(
            "n = {n}, p = {p}: {} trees, expected {}",
            trees.len(),
            fuss_catalan(n, p)
        ));
    }
    let mut sorted = trees.clone();
    sorted.sort();
    sorted.dedup();
    if sorted != trees {
        return Err(format!(
            "n = {n}, p = {p}: trees not in strictly increasing order"
        ));
    }
    Ok(())
}

/// `dim(d) = dim(d + 2)` for `d` in `0..=1`.
pub fn parity_only(family: Family, n: usize, p: usize) -> Check {
    let config = EngineConfig::default();
    for d in [0i64, 1] {
        let a = dimension(&OperadPresentation::new(family, n, d).unwrap(), p, &config)
            .map_err(|e| e.to_string())?;
        for shifted in [d + 2, d - 2] {
            let b = dimension(
                &OperadPresentation::new(family, n, shifted).unwrap(),
                p,
                &config,
            )
            .map_err(|e| e.to_string())?;
            if a.dim != b.dim {
                return Err(format!(
                    "{family} n = {n}, p = {p}: dim {} at d = {d} but {} at d = {shifted}",
                    a.dim, b.dim
                ));
            }
        }
    }
    Ok(())
}
