//! Acceptance gate: eleven exact criteria, one printed line each.
//!
//! Run `cargo test --test acceptance -- --nocapture` to see the lines for
//! passing runs; cargo shows them automatically on failure. Every check is
//! exact rational equality; each criterion also carries a wall-clock
//! budget that the measured time must stay under.

use std::time::Instant;

use liew_core::derive::{bracket_s, derive};
use liew_core::extension::Extension;
use liew_core::fixtures;
use liew_core::fundamental::{fundamental_action, t_routes, TCoeffTable};
use liew_core::rng::{cell_rng, jet_poly, vector};
use liew_core::scalar::{inv_factorial, rat, ratq, Rational};
use liew_core::space::{MultiIndex, SpaceDesc, Vector};
use liew_core::suites;
use liew_core::{Jet, WreathAlgebra};

type Check = (&'static str, u128, fn() -> Result<(), String>);

#[test]
fn acceptance_criteria() {
    let checks: Vec<Check> = vec![
        ("worked one-variable derivation values", 1_000, c01_worked_values),
        ("series-bracket Jacobi, 200 random triples", 30_000, c02_jacobi_triples),
        ("coefficient table frozen and cross-computed", 1_000, c03_coefficient_table),
        ("convolution, recursion, and splitting identities", 10_000, c04_identity_families),
        ("canonical action is a homomorphism on fixtures", 60_000, c05_fundamental_homomorphism),
        ("one-dimensional closed form and heisenberg star", 5_000, c06_closed_forms),
        ("triangular fields preserve brackets, 50 pairs", 60_000, c07_triangular_pairs),
        ("series correction stays in the kernel", 10_000, c08_kernel_discipline),
        ("solvable embedding verifies with two sections", 30_000, c09_solvable_embedding),
        ("nilpotent closed form equals the series", 10_000, c10_nilpotent_closed_form),
        ("three supporting series identities hold", 30_000, c11_series_identities),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget_ms, run)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed().as_millis();
        let over_budget = elapsed >= *budget_ms;
        let ok = outcome.is_ok() && !over_budget;
        println!(
            "acceptance {:02} {} {} ({} ms, budget {} ms)",
            i + 1,
            if ok { "pass" } else { "FAIL" },
            name,
            elapsed,
            budget_ms
        );
        if let Err(witness) = outcome {
            failed.push(format!("{:02} {name}: {witness}", i + 1));
        } else if over_budget {
            failed.push(format!("{:02} {name}: over budget ({elapsed} ms)", i + 1));
        }
    }
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}

fn monomial_field(space: &liew_core::Space, order: i64, deg: u32, c: i64) -> Jet {
    Jet::polynomial(space, space, order, &[(deg, &[deg], 0, rat(c))]).unwrap()
}

fn expect_monomial(jet: &Jet, deg: u32, c: i64, context: &str) -> Result<(), String> {
    for m in 0..=jet.valid_order {
        let comp = jet.component(m).unwrap();
        if m == deg as i64 {
            let got = comp.coefficient_at(&MultiIndex(vec![deg]), 0);
            if got != rat(c) {
                return Err(format!("{context}: coefficient {got} at degree {deg}, expected {c}"));
            }
        } else if !comp.is_zero() {
            return Err(format!("{context}: unexpected terms at degree {m}"));
        }
    }
    Ok(())
}

fn c01_worked_values() -> Result<(), String> {
    let x = SpaceDesc::numbered("X", "x", 1);
    let xi = monomial_field(&x, 9, 2, 1);
    let eta = monomial_field(&x, 9, 1, 1);
    let zeta = xi.clone();
    expect_monomial(&derive(&xi, &eta)?, 2, 1, "xi.eta")?;
    expect_monomial(&derive(&eta, &xi)?, 2, 2, "eta.xi")?;
    expect_monomial(&derive(&xi, &xi)?, 3, 2, "xi.xi")?;
    expect_monomial(&derive(&xi, &derive(&eta, &zeta)?)?, 3, 4, "xi.(eta.zeta)")?;
    expect_monomial(&derive(&derive(&xi, &eta)?, &zeta)?, 3, 2, "(xi.eta).zeta")?;
    Ok(())
}

fn c02_jacobi_triples() -> Result<(), String> {
    for case in 0..200usize {
        let dim = 1 + case % 3;
        let space = SpaceDesc::numbered("X", "x", dim);
        let key = format!("acceptance/jacobi/{case}");
        let mut rng = cell_rng(2026, &key);
        let xi = jet_poly(&mut rng, &space, &space, 10, 4);
        let eta = jet_poly(&mut rng, &space, &space, 10, 4);
        let zeta = jet_poly(&mut rng, &space, &space, 10, 4);
        let sum = bracket_s(&bracket_s(&xi, &eta)?, &zeta)?
            .add(&bracket_s(&bracket_s(&eta, &zeta)?, &xi)?)?
            .add(&bracket_s(&bracket_s(&zeta, &xi)?, &eta)?)?;
        if !sum.is_zero_through_valid() {
            return Err(format!("{key}: nonzero triple sum\n{}", sum.pretty()));
        }
    }
    Ok(())
}

fn c03_coefficient_table() -> Result<(), String> {
    let (division, recurrence) = t_routes(20);
    if division != recurrence {
        return Err("the two computations disagree".into());
    }
    let table = TCoeffTable::new(20);
    let frozen = [
        (0, rat(1)),
        (1, ratq(1, 2)),
        (2, ratq(1, 12)),
        (3, rat(0)),
    ];
    for (i, want) in frozen {
        if table.t(i) != want {
            return Err(format!("t_{i} = {}, expected {want}", table.t(i)));
        }
    }
    Ok(())
}

fn c04_identity_families() -> Result<(), String> {
    // Convolution family to m = 20, binomial family to m = 20 covering all
    // p, generating-series split through total degree 19.
    let report = suites::identities_suite(20, 2026).map_err(|e| e.to_string())?;
    if !report.pass() {
        return Err(format!("{:?}", report.failures));
    }
    Ok(())
}

fn c05_fundamental_homomorphism() -> Result<(), String> {
    // Construction re-checks d_[a,b] = [d_a, d_b] on every basis pair.
    fundamental_action(&fixtures::sl2(), 6).map_err(|e| format!("sl2: {e}"))?;
    let h_action =
        fundamental_action(&fixtures::heisenberg_3(), 6).map_err(|e| format!("heisenberg: {e}"))?;
    // The heisenberg fields are exact polynomials, so the order-6 check
    // already covers every degree: nothing lives above degree 1.
    for img in h_action.images() {
        if img.max_support_degree() > 1 {
            return Err("heisenberg field with unexpected high-degree term".into());
        }
    }
    fundamental_action(&fixtures::solvable_2(), 10).map_err(|e| format!("solvable: {e}"))?;
    Ok(())
}

fn c06_closed_forms() -> Result<(), String> {
    // (f,b),(g,c) in the doubly one-dimensional wreath: bracket equals
    // (b g' - c f', 0), with the derivative recomputed by coefficient
    // shifting.
    let a = fixtures::abelian_labeled("A", "a", 1);
    let b = fixtures::abelian_labeled("B", "y", 1);
    let w = WreathAlgebra::fundamental(a, b, 9).map_err(|e| e.to_string())?;
    for case in 0..30 {
        let key = format!("acceptance/onedim/{case}");
        let mut rng = cell_rng(2026, &key);
        let f = jet_poly(&mut rng, w.y_space(), &w.a.space, 9, 5);
        let g = jet_poly(&mut rng, w.y_space(), &w.a.space, 9, 5);
        let bv = vector(&mut rng, &w.b.space);
        let cv = vector(&mut rng, &w.b.space);
        let got = w.bracket(&w.element(f.clone(), bv.clone())?, &w.element(g.clone(), cv.clone())?)?;
        if !got.b.is_zero() {
            return Err(format!("{key}: quotient part is nonzero"));
        }
        let want = shift_derivative(&g)
            .scale(&bv.coords[0])
            .sub(&shift_derivative(&f).scale(&cv.coords[0]))?;
        let through = got.f.valid_order.min(want.valid_order);
        if let Some(witness) = got.f.first_difference(&want, through)? {
            return Err(format!("{key}: {witness}"));
        }
    }
    // Star components over heisenberg coefficients.
    let w = WreathAlgebra::fundamental(
        fixtures::abelian_labeled("A", "a", 1),
        fixtures::heisenberg_3(),
        8,
    )
    .map_err(|e| e.to_string())?;
    let bx = Vector::basis(&w.b.space, 0);
    let f = Jet::polynomial(w.y_space(), &w.a.space, 8, &[(2, &[2, 0, 0], 0, rat(1))])
        .map_err(|e| e.to_string())?;
    let starred = w.star(&bx, &f)?;
    if starred.component(1).unwrap().coefficient_at(&MultiIndex(vec![1, 0, 0]), 0) != rat(2) {
        return Err("star of x against x1^2 is not 2 x1".into());
    }
    let g = Jet::polynomial(w.y_space(), &w.a.space, 8, &[(2, &[0, 0, 2], 0, rat(1))])
        .map_err(|e| e.to_string())?;
    let starred = w.star(&bx, &g)?;
    if starred.component(2).unwrap().coefficient_at(&MultiIndex(vec![0, 1, 1]), 0) != rat(-1) {
        return Err("star of x against x3^2 is not -x2 x3".into());
    }
    Ok(())
}

fn c07_triangular_pairs() -> Result<(), String> {
    let configs: [(&str, WreathAlgebra, liew_core::FormalAction); 2] = [
        (
            "abelian",
            WreathAlgebra::fundamental(
                fixtures::abelian_labeled("A", "a", 1),
                fixtures::abelian_labeled("B", "y", 1),
                8,
            )
            .map_err(|e| e.to_string())?,
            fundamental_action(&fixtures::abelian_labeled("A", "a", 1), 8)
                .map_err(|e| e.to_string())?,
        ),
        (
            "projective",
            WreathAlgebra::fundamental(fixtures::sl2(), fixtures::heisenberg_3(), 8)
                .map_err(|e| e.to_string())?,
            fixtures::sl2_projective(8),
        ),
    ];
    for (name, w, x_action) in &configs {
        for case in 0..25 {
            let key = format!("acceptance/triangular/{name}/{case}");
            let mut rng = cell_rng(2026, &key);
            let mut draw = || -> Result<liew_core::WreathElement, String> {
                let f = jet_poly(&mut rng, w.y_space(), &w.a.space, 8, 3);
                let bv = vector(&mut rng, &w.b.space);
                Ok(w.element(f, bv)?)
            };
            let u = draw()?;
            let v = draw()?;
            let lhs = w.triangular_field(x_action, &w.bracket(&u, &v)?)?;
            let rhs = bracket_s(
                &w.triangular_field(x_action, &u)?,
                &w.triangular_field(x_action, &v)?,
            )?;
            let through = lhs.valid_order.min(rhs.valid_order);
            if through < 6 {
                return Err(format!("{key}: trusted range shrank to {through}"));
            }
            if let Some(witness) = lhs.first_difference(&rhs, through)? {
                return Err(format!("{key}: {witness}"));
            }
        }
    }
    Ok(())
}

fn c08_kernel_discipline() -> Result<(), String> {
    for (name, ext) in extension_fixtures() {
        for case in 0..5 {
            let key = format!("acceptance/kernel/{name}/{case}");
            let mut rng = cell_rng(2026, &key);
            let c = vector(&mut rng, &ext.c.space);
            let u = ext.u_jet(&c, 8)?;
            let v = ext.v_jet(&c, 8)?;
            let projected = u.sub(&v)?.postcompose_linear(&ext.p)?;
            if !projected.is_zero_through_valid() {
                return Err(format!("{key}: p(u - v) is nonzero"));
            }
        }
    }
    Ok(())
}

fn c09_solvable_embedding() -> Result<(), String> {
    for shift in [0, 1] {
        let ext = fixtures::solvable_extension(shift);
        let report = ext.verify_embedding(8)?;
        if !report.injective {
            return Err(format!("shift {shift}: not injective on coordinates"));
        }
        if !report.failures.is_empty() {
            return Err(format!("shift {shift}: {:?}", report.failures));
        }
    }
    // Analytic images for the plain section.
    let ext = fixtures::solvable_extension(0);
    let w = ext.wreath(8)?;
    let e1 = ext.kk_embed_in(&w, &Vector::basis(&ext.c.space, 0))?;
    if !e1.f.is_zero_through_valid() || e1.b.coords != vec![rat(1)] {
        return Err("image of e1 is not (0, 1)".into());
    }
    let e2 = ext.kk_embed_in(&w, &Vector::basis(&ext.c.space, 1))?;
    if !e2.b.is_zero() {
        return Err("image of e2 has a nonzero quotient part".into());
    }
    for m in 0..=8u32 {
        let got = e2
            .f
            .component(m as i64)
            .unwrap()
            .coefficient_at(&MultiIndex(vec![m]), 0);
        if got != inv_factorial(m) {
            return Err(format!("exp series coefficient at degree {m} is {got}"));
        }
    }
    // The shifted section must produce a genuinely different series.
    let shifted = fixtures::solvable_extension(1);
    let h_shifted = shifted.h_series(&Vector::basis(&shifted.c.space, 0), 6)?;
    if h_shifted.is_zero_through_valid() {
        return Err("shifted section gives the same h-series".into());
    }
    Ok(())
}

fn c10_nilpotent_closed_form() -> Result<(), String> {
    let ext = fixtures::heisenberg_center_extension();
    for i in 0..ext.c.dim() {
        let c = Vector::basis(&ext.c.space, i);
        let series = ext.h_series(&c, 9)?;
        let closed = ext.h_closed_form_nilpotent(&c, 9)?;
        if closed.max_support_degree() > 2 {
            return Err(format!("basis {i}: closed form exceeds the nilpotency bound"));
        }
        if let Some(witness) = series.first_difference(&closed, 9)? {
            return Err(format!("basis {i}: {witness}"));
        }
    }
    Ok(())
}

fn c11_series_identities() -> Result<(), String> {
    for (name, ext) in extension_fixtures() {
        for which in 0..3 {
            suites::series_identity_cell(&ext, which, 6)
                .map_err(|w| format!("{name}, identity {}: {w}", which + 1))?;
        }
    }
    Ok(())
}

fn extension_fixtures() -> Vec<(&'static str, Extension)> {
    vec![
        ("solvable_split", fixtures::solvable_extension(0)),
        ("solvable_shifted", fixtures::solvable_extension(1)),
        ("heisenberg_center", fixtures::heisenberg_center_extension()),
        ("direct_product", fixtures::direct_product_extension()),
    ]
}

fn shift_derivative(f: &Jet) -> Jet {
    let order = (f.order() - 1).max(0);
    let mut components = Vec::with_capacity(order as usize + 1);
    for m in 0..=order {
        let mut acc = liew_core::HomogeneousPoly::zero(&f.source, &f.target, m as u32);
        if let Some(src) = f.component(m + 1) {
            for (mono, v) in src.terms() {
                let scaled: Vec<Rational> = v.iter().map(|c| c * rat(mono.0[0] as i64)).collect();
                let mut lower = mono.clone();
                lower.0[0] -= 1;
                acc.add_vec(lower, &scaled).unwrap();
            }
        }
        components.push(acc);
    }
    let mut out = Jet::from_components(components, 0).unwrap();
    out.valid_order = (f.valid_order - 1).clamp(-1, order);
    out
}
