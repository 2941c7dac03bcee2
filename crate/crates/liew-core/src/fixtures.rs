//! Small named Lie algebras, actions, and split extensions used by tests,
//! verification suites, and the command-line examples.

use crate::action::FormalAction;
use crate::extension::Extension;
use crate::jet::Jet;
use crate::lie::LieAlgebra;
use crate::linalg::LinearMap;
use crate::scalar::{rat, Rational};
use crate::space::{Space, SpaceDesc, Vector};

fn table_from(dim: usize, entries: &[(usize, usize, &[(usize, i64)])]) -> Vec<Vec<Vec<Rational>>> {
    let mut table = vec![vec![vec![Rational::from_integer(0.into()); dim]; dim]; dim];
    for (i, j, cell) in entries {
        for (k, c) in *cell {
            table[*i][*j][*k] = rat(*c);
            table[*j][*i][*k] = rat(-*c);
        }
    }
    table
}

/// Abelian algebra of the given dimension, basis e1..e{dim}.
pub fn abelian(dim: usize) -> LieAlgebra {
    abelian_labeled(&format!("abelian_{dim}"), "e", dim)
}

/// Abelian algebra on a numbered basis with a chosen prefix, so two abelian
/// factors with distinct coordinates can coexist on one product space.
pub fn abelian_labeled(name: &str, prefix: &str, dim: usize) -> LieAlgebra {
    let space = numbered_from_one(name, prefix, dim);
    LieAlgebra::from_table(space, table_from(dim, &[])).expect("abelian table is valid")
}

fn numbered_from_one(name: &str, prefix: &str, dim: usize) -> Space {
    let basis = (1..=dim).map(|i| format!("{prefix}{i}")).collect();
    SpaceDesc::new(name, basis).expect("numbered labels are distinct")
}

/// Three-dimensional Heisenberg algebra: [x, y] = z, z central.
pub fn heisenberg_3() -> LieAlgebra {
    let space = SpaceDesc::new("heisenberg_3", vec!["x".into(), "y".into(), "z".into()])
        .expect("labels are distinct");
    LieAlgebra::from_table(space, table_from(3, &[(0, 1, &[(2, 1)])]))
        .expect("heisenberg table is valid")
}

/// sl2 with basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
pub fn sl2() -> LieAlgebra {
    let space = SpaceDesc::new("sl2", vec!["h".into(), "e".into(), "f".into()])
        .expect("labels are distinct");
    LieAlgebra::from_table(
        space,
        table_from(3, &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])]),
    )
    .expect("sl2 table is valid")
}

/// The nonabelian two-dimensional algebra: [e1, e2] = e2.
pub fn solvable_2() -> LieAlgebra {
    let space = numbered_from_one("solvable_2", "e", 2);
    LieAlgebra::from_table(space, table_from(2, &[(0, 1, &[(1, 1)])]))
        .expect("solvable table is valid")
}

/// sl2 acting on a line by projective fields:
/// h -> 2x d/dx, e -> -x^2 d/dx, f -> d/dx.
pub fn sl2_projective(order: i64) -> FormalAction {
    let alg = sl2();
    let x = SpaceDesc::numbered("P1", "x", 1);
    let order = order.max(2);
    let d_h = Jet::polynomial(&x, &x, order, &[(1, &[1], 0, rat(2))]).unwrap();
    let d_e = Jet::polynomial(&x, &x, order, &[(2, &[2], 0, rat(-1))]).unwrap();
    let d_f = Jet::polynomial(&x, &x, order, &[(0, &[0], 0, rat(1))]).unwrap();
    FormalAction::new(alg, x, order, vec![d_h, d_e, d_f]).expect("projective action is valid")
}

/// The solvable algebra [e1, e2] = e2 split over its line of e1, with
/// section s(y) = e1 + shift * e2. Every shift gives a section; the induced
/// embeddings differ.
pub fn solvable_extension(shift: i64) -> Extension {
    let c = solvable_2();
    let b = abelian_labeled("B", "y", 1);
    let p = LinearMap::new(
        c.space.clone(),
        b.space.clone(),
        vec![vec![rat(1), rat(0)]],
    )
    .unwrap();
    let s = LinearMap::new(
        b.space.clone(),
        c.space.clone(),
        vec![vec![rat(1)], vec![rat(shift)]],
    )
    .unwrap();
    let ideal = vec![Vector::basis(&c.space, 1)];
    Extension::new(c, b, p, ideal, s).expect("solvable extension is valid")
}

/// Direct product of the Heisenberg algebra with a line, split over the
/// line. The adjoint action of the section is zero, so the whole
/// correction series collapses to the complement projection.
pub fn direct_product_extension() -> Extension {
    let space = SpaceDesc::new(
        "heisenberg_line",
        vec!["x".into(), "y".into(), "z".into(), "w".into()],
    )
    .expect("labels are distinct");
    let c = LieAlgebra::from_table(space, table_from(4, &[(0, 1, &[(2, 1)])]))
        .expect("product table is valid");
    let b = abelian_labeled("B", "w", 1);
    let p = LinearMap::new(
        c.space.clone(),
        b.space.clone(),
        vec![vec![rat(0), rat(0), rat(0), rat(1)]],
    )
    .unwrap();
    let s = LinearMap::new(
        b.space.clone(),
        c.space.clone(),
        vec![vec![rat(0)], vec![rat(0)], vec![rat(0)], vec![rat(1)]],
    )
    .unwrap();
    let ideal = vec![
        Vector::basis(&c.space, 0),
        Vector::basis(&c.space, 1),
        Vector::basis(&c.space, 2),
    ];
    Extension::new(c, b, p, ideal, s).expect("direct product extension is valid")
}

/// The Heisenberg algebra split over its centre: the quotient is abelian of
/// dimension two and the obvious section is linear.
pub fn heisenberg_center_extension() -> Extension {
    let c = heisenberg_3();
    let b = abelian_labeled("B", "y", 2);
    let p = LinearMap::new(
        c.space.clone(),
        b.space.clone(),
        vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]],
    )
    .unwrap();
    let s = LinearMap::new(
        b.space.clone(),
        c.space.clone(),
        vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)], vec![rat(0), rat(0)]],
    )
    .unwrap();
    let ideal = vec![Vector::basis(&c.space, 2)];
    Extension::new(c, b, p, ideal, s).expect("heisenberg extension is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_construct() {
        assert_eq!(abelian(4).dim(), 4);
        assert_eq!(heisenberg_3().dim(), 3);
        assert_eq!(sl2().dim(), 3);
        assert_eq!(solvable_2().dim(), 2);
        sl2_projective(5);
        solvable_extension(0);
        solvable_extension(1);
        heisenberg_center_extension();
        direct_product_extension();
    }
}
