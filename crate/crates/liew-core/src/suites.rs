//! Named verification suites over randomized and fixture inputs.
//!
//! Each suite builds a list of independent cells (see [`crate::suite`]) and
//! runs them on the configured worker pool. Cell keys are stable content
//! labels, and every random draw is seeded from the suite seed and the cell
//! key, so a report is reproducible from its parameters alone.

use crate::action::pointwise_bracket;
use crate::derive::{bracket_s, curried_bracket_s, derive};
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::fixtures;
use crate::fundamental::{self, fundamental_action};
use crate::jet::CurriedJet;
use crate::lie::LieAlgebra;
use crate::rng::{cell_rng, jet_poly, vector};
use crate::space::{ProductSpace, SpaceDesc, Vector};
use crate::suite::{check, run_cells, Cell, SuiteReport};
use crate::wreath::WreathAlgebra;

/// Triple-bracket cancellation for polynomial fields in 1 to 3 variables.
pub fn jacobi_suite(order: i64, seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut cells = Vec::new();
    for dim in 1..=3usize {
        let space = SpaceDesc::numbered("X", "x", dim);
        for case in 0..cases {
            let key = format!("jacobi/dim{dim}/case{case}");
            let space = space.clone();
            cells.push(Cell::new(&key.clone(), move || {
                let mut rng = cell_rng(seed, &key);
                let xi = jet_poly(&mut rng, &space, &space, order, 4);
                let eta = jet_poly(&mut rng, &space, &space, order, 4);
                let zeta = jet_poly(&mut rng, &space, &space, order, 4);
                let a = bracket_s(&bracket_s(&xi, &eta)?, &zeta)?;
                let b = bracket_s(&bracket_s(&eta, &zeta)?, &xi)?;
                let c = bracket_s(&bracket_s(&zeta, &xi)?, &eta)?;
                let sum = a.add(&b)?.add(&c)?;
                check(sum.is_zero_through_valid(), || {
                    format!("triple bracket sum:\n{}", sum.pretty())
                })
            }));
        }
    }
    Ok(run_cells("jacobi", cells))
}

/// The frozen-coefficient and combinatorial identity cells.
pub fn identities_suite(max_m: u32, seed: u64) -> Result<SuiteReport> {
    Ok(run_cells("identities", fundamental::identity_suite(max_m, seed)))
}

/// Construct (and thereby validate) the canonical action for each named
/// algebra at the given order.
pub fn fundamental_suite(order: i64) -> Result<SuiteReport> {
    let mut cells = Vec::new();
    for (name, algebra) in fundamental::named_algebras() {
        let key = format!("fundamental/{name}/order{order}");
        cells.push(Cell::new(&key, move || {
            fundamental_action(&algebra, order)
                .map(|_| ())
                .map_err(|e| e.to_string())
        }));
    }
    let key = format!("fundamental/abelian2/order{order}");
    cells.push(Cell::new(&key, move || {
        fundamental_action(&fixtures::abelian(2), order)
            .map(|_| ())
            .map_err(|e| e.to_string())
    }));
    Ok(run_cells("fundamental", cells))
}

/// Wreath-product checks: antisymmetry and Jacobi on random elements, the
/// cross-term consistency oracle, and the triangular-field homomorphism.
pub fn wreath_suite(order: i64, seed: u64) -> Result<SuiteReport> {
    let mut cells = Vec::new();
    let configs: Vec<(&str, LieAlgebra, LieAlgebra)> = vec![
        ("abelian1_abelian1", fixtures::abelian_labeled("A", "a", 1), fixtures::abelian_labeled("B", "y", 1)),
        ("abelian2_solvable", fixtures::abelian_labeled("A", "a", 2), fixtures::solvable_2()),
        ("heisenberg_abelian1", fixtures::heisenberg_3(), fixtures::abelian_labeled("B", "y", 1)),
    ];
    for (name, a, b) in configs {
        for case in 0..4usize {
            let key = format!("wreath/jacobi/{name}/case{case}");
            let (a, b) = (a.clone(), b.clone());
            cells.push(Cell::new(&key.clone(), move || {
                let w = WreathAlgebra::fundamental(a, b, order).map_err(|e| e.to_string())?;
                let mut rng = cell_rng(seed, &key);
                let mut draw = || -> Result<crate::wreath::WreathElement> {
                    let f = jet_poly(&mut rng, w.y_space(), &w.a.space, order, 3);
                    let bv = vector(&mut rng, &w.b.space);
                    w.element(f, bv)
                };
                let u = draw().map_err(|e| e.to_string())?;
                let v = draw().map_err(|e| e.to_string())?;
                let t = draw().map_err(|e| e.to_string())?;
                let anti = w
                    .bracket(&u, &v)
                    .and_then(|x| w.bracket(&v, &u)?.add(&x))
                    .map_err(|e| e.to_string())?;
                if !anti.is_zero_through_valid() {
                    return Err(format!("antisymmetry defect:\n{}", anti.pretty()));
                }
                let jac = w
                    .bracket(&w.bracket(&u, &v).map_err(|e| e.to_string())?, &t)
                    .and_then(|x| {
                        let y = w.bracket(&w.bracket(&v, &t)?, &u)?;
                        let z = w.bracket(&w.bracket(&t, &u)?, &v)?;
                        x.add(&y)?.add(&z)
                    })
                    .map_err(|e| e.to_string())?;
                check(jac.is_zero_through_valid(), || {
                    format!("triple bracket sum:\n{}", jac.pretty())
                })
            }));
        }
        for case in 0..2usize {
            let key = format!("wreath/cross_term/{name}/case{case}");
            let (a, b) = (a.clone(), b.clone());
            cells.push(Cell::new(&key.clone(), move || {
                let w = WreathAlgebra::fundamental(a, b, order).map_err(|e| e.to_string())?;
                let mut rng = cell_rng(seed, &key);
                let bv = vector(&mut rng, &w.b.space);
                let f = jet_poly(&mut rng, w.y_space(), &w.a.space, order, 3);
                let g = jet_poly(&mut rng, w.y_space(), &w.a.space, order, 3);
                let report = w
                    .sigma_derivation_check(&bv, &f, &g, order - 1)
                    .map_err(|e| e.to_string())?;
                check(report.pass, || report.witness.unwrap_or_default())
            }));
        }
    }
    // Triangular fields: the map u -> prolonged f + lifted d_b preserves
    // brackets when the X-side action is a homomorphism.
    let triangular: Vec<(&str, LieAlgebra, LieAlgebra)> = vec![
        ("abelian1_abelian1", fixtures::abelian_labeled("A", "a", 1), fixtures::abelian_labeled("B", "y", 1)),
        ("heisenberg_abelian1", fixtures::heisenberg_3(), fixtures::abelian_labeled("B", "y", 1)),
    ];
    for (name, a, b) in triangular {
        for case in 0..3usize {
            let key = format!("wreath/triangular/fundamental/{name}/case{case}");
            let (a, b) = (a.clone(), b.clone());
            cells.push(Cell::new(&key.clone(), move || {
                let w = WreathAlgebra::fundamental(a.clone(), b, order).map_err(|e| e.to_string())?;
                let x_action = fundamental_action(&a, order).map_err(|e| e.to_string())?;
                triangular_cell(&w, &x_action, order, seed, &key)
            }));
        }
    }
    for case in 0..3usize {
        let key = format!("wreath/triangular/projective/case{case}");
        cells.push(Cell::new(&key.clone(), move || {
            let w = WreathAlgebra::fundamental(fixtures::sl2(), fixtures::heisenberg_3(), order)
                .map_err(|e| e.to_string())?;
            let x_action = fixtures::sl2_projective(order);
            triangular_cell(&w, &x_action, order, seed, &key)
        }));
    }
    Ok(run_cells("wreath", cells))
}

fn triangular_cell(
    w: &WreathAlgebra,
    x_action: &crate::action::FormalAction,
    order: i64,
    seed: u64,
    key: &str,
) -> std::result::Result<(), String> {
    let mut rng = cell_rng(seed, key);
    let mut draw = || -> Result<crate::wreath::WreathElement> {
        let f = jet_poly(&mut rng, w.y_space(), &w.a.space, order, 3);
        let bv = vector(&mut rng, &w.b.space);
        w.element(f, bv)
    };
    let u = draw().map_err(|e| e.to_string())?;
    let v = draw().map_err(|e| e.to_string())?;
    let du = w.triangular_field(x_action, &u).map_err(|e| e.to_string())?;
    let dv = w.triangular_field(x_action, &v).map_err(|e| e.to_string())?;
    let lhs = w
        .triangular_field(x_action, &w.bracket(&u, &v).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let rhs = bracket_s(&du, &dv).map_err(|e| e.to_string())?;
    let through = lhs.valid_order.min(rhs.valid_order);
    match lhs.first_difference(&rhs, through).map_err(|e| e.to_string())? {
        None => Ok(()),
        Some(witness) => Err(witness),
    }
}

/// Embedding checks: bracket preservation and injectivity per extension,
/// the nilpotent closed form, and the three series identities that support
/// the construction.
pub fn embedding_suite(order: i64) -> Result<SuiteReport> {
    let mut cells = Vec::new();
    let exts: Vec<(&str, Extension, bool)> = vec![
        ("solvable_split", fixtures::solvable_extension(0), false),
        ("solvable_shifted", fixtures::solvable_extension(1), false),
        ("heisenberg_center", fixtures::heisenberg_center_extension(), true),
        ("direct_product", fixtures::direct_product_extension(), true),
    ];
    for (name, ext, nilpotent) in &exts {
        let key = format!("embedding/verify/{name}/order{order}");
        let ext2 = ext.clone();
        cells.push(Cell::new(&key, move || {
            let report = ext2.verify_embedding(order).map_err(|e| e.to_string())?;
            if !report.injective {
                return Err("coordinate map is not injective".into());
            }
            check(report.failures.is_empty(), || {
                report
                    .failures
                    .iter()
                    .map(|f| format!("{}: {}", f.cell, f.witness))
                    .collect::<Vec<_>>()
                    .join("; ")
            })
        }));
        if *nilpotent {
            let key = format!("embedding/closed_form/{name}/order{order}");
            let ext2 = ext.clone();
            cells.push(Cell::new(&key, move || {
                for i in 0..ext2.c.dim() {
                    let c = Vector::basis(&ext2.c.space, i);
                    let series = ext2.h_series(&c, order).map_err(|e| e.to_string())?;
                    let closed = ext2
                        .h_closed_form_nilpotent(&c, order)
                        .map_err(|e| e.to_string())?;
                    if let Some(w) = series.first_difference(&closed, order).map_err(|e| e.to_string())? {
                        return Err(format!("basis {i}: {w}"));
                    }
                }
                Ok(())
            }));
        }
        for (idx, idname) in ["derivation_split", "projected_star", "curvature_split"]
            .iter()
            .enumerate()
        {
            let key = format!("embedding/series/{idname}/{name}/order{order}");
            let ext2 = ext.clone();
            cells.push(Cell::new(&key, move || {
                series_identity_cell(&ext2, idx, order)
            }));
        }
    }
    Ok(run_cells("embedding", cells))
}

/// The three component identities behind bracket preservation, checked on
/// every basis pair (a, b) of C:
///   0: u_[a,b] = [u_a, u_b]            (pointwise C-bracket)
///   1: (p a) . u_b = [v_a, u_b]        (quotient fields acting on u)
///   2: (p a) . v_b - (p b) . v_a = [v_a, v_b] + v_[a,b]
pub fn series_identity_cell(ext: &Extension, which: usize, order: i64) -> std::result::Result<(), String> {
    let action = fundamental_action(&ext.b, order).map_err(|e| e.to_string())?;
    let star = |bv: &Vector, f: &crate::jet::Jet| -> Result<crate::jet::Jet> {
        derive(&action.image_of(bv)?, f)
    };
    let dim = ext.c.dim();
    for i in 0..dim {
        for j in 0..dim {
            let a = Vector::basis(&ext.c.space, i);
            let b = Vector::basis(&ext.c.space, j);
            let bracket = Vector::new(ext.c.space.clone(), ext.c.bracket_coords(&a.coords, &b.coords))
                .map_err(|e| e.to_string())?;
            let ua = ext.u_jet(&a, order).map_err(|e| e.to_string())?;
            let ub = ext.u_jet(&b, order).map_err(|e| e.to_string())?;
            let va = ext.v_jet(&a, order).map_err(|e| e.to_string())?;
            let vb = ext.v_jet(&b, order).map_err(|e| e.to_string())?;
            let pa = ext.p.apply(&a).map_err(|e| e.to_string())?;
            let pb = ext.p.apply(&b).map_err(|e| e.to_string())?;
            let (lhs, rhs) = match which {
                0 => (
                    ext.u_jet(&bracket, order).map_err(|e| e.to_string())?,
                    pointwise_bracket(&ext.c, &ua, &ub).map_err(|e| e.to_string())?,
                ),
                1 => (
                    star(&pa, &ub).map_err(|e| e.to_string())?,
                    pointwise_bracket(&ext.c, &va, &ub).map_err(|e| e.to_string())?,
                ),
                _ => (
                    star(&pa, &vb)
                        .and_then(|x| Ok(x.sub(&star(&pb, &va)?)?))
                        .map_err(|e| e.to_string())?,
                    pointwise_bracket(&ext.c, &va, &vb)
                        .and_then(|x| x.add(&ext.v_jet(&bracket, order)?))
                        .map_err(|e| e.to_string())?,
                ),
            };
            let through = lhs.valid_order.min(rhs.valid_order);
            if let Some(w) = lhs.first_difference(&rhs, through).map_err(|e| e.to_string())? {
                return Err(format!(
                    "pair ({}, {}): {w}",
                    ext.c.space.basis[i], ext.c.space.basis[j]
                ));
            }
        }
    }
    Ok(())
}

/// Curried brackets of parametrized fields on the inner factor agree with
/// the flat bracket of their embeddings into the product.
pub fn curried_cells(order: i64, seed: u64) -> Vec<Cell> {
    let mut cells = Vec::new();
    for case in 0..3usize {
        let key = format!("jacobi/curried/case{case}");
        cells.push(Cell::new(&key.clone(), move || {
            let inner = SpaceDesc::numbered("X", "x", 2);
            let outer = SpaceDesc::numbered("Y", "y", 1);
            let prod = ProductSpace::new(inner, outer)?;
            let mut rng = cell_rng(seed, &key);
            let xi = jet_poly(&mut rng, &prod.total, &prod.left, order, 3);
            let eta = jet_poly(&mut rng, &prod.total, &prod.left, order, 3);
            let cx = CurriedJet::curry(&xi, &prod)?;
            let ce = CurriedJet::curry(&eta, &prod)?;
            let curried = curried_bracket_s(&cx, &ce)?.embed_left_fields()?;
            let flat = bracket_s(&cx.embed_left_fields()?, &ce.embed_left_fields()?)?;
            let through = curried.valid_order.min(flat.valid_order);
            match flat.first_difference(&curried, through)? {
                None => Ok(()),
                Some(w) => Err(w),
            }
        }));
    }
    cells
}

/// Run one named suite, or all of them.
pub fn run_suite(
    name: &str,
    order: i64,
    seed: u64,
    max_m: u32,
) -> Result<Vec<SuiteReport>> {
    match name {
        "jacobi" => {
            let report = jacobi_suite(order, seed, 8)?;
            let extra = run_cells("jacobi", curried_cells(order, seed));
            Ok(vec![report.merge(extra)])
        }
        "identities" => Ok(vec![identities_suite(max_m, seed)?]),
        "fundamental" => Ok(vec![fundamental_suite(order)?]),
        "wreath" => Ok(vec![wreath_suite(order, seed)?]),
        "embedding" => Ok(vec![embedding_suite(order)?]),
        "all" => {
            let mut out = Vec::new();
            out.extend(run_suite("jacobi", order, seed, max_m)?);
            out.extend(run_suite("identities", order, seed, max_m)?);
            out.extend(run_suite("fundamental", order, seed, max_m)?);
            out.extend(run_suite("wreath", order, seed, max_m)?);
            out.extend(run_suite("embedding", order, seed, max_m)?);
            Ok(out)
        }
        other => Err(Error::invalid(
            "suite",
            format!("unknown suite {other:?}; expected jacobi, identities, fundamental, wreath, embedding, or all"),
        )),
    }
}
