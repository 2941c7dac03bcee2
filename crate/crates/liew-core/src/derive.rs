//! Directional derivative of jets along formal vector fields, and the
//! bracket of fields it induces.
//!
//! For a field `xi` on X and a jet `f` out of X, `derive(xi, f)` applies the
//! first-order differential operator sum_i xi^(i) d/dx_i to every component
//! of f. Equivalently (in characteristic zero) it inserts `xi` into one slot
//! of each symmetrized coefficient; `derive_pointwise_consistency` checks
//! the two routes against each other.

use serde::Serialize;

use crate::error::Result;
use crate::jet::{CurriedJet, Jet};
use crate::multilinear::polarize;
use crate::poly::HomogeneousPoly;
use crate::scalar::{rat, Rational};
use crate::space::{space_mismatch, MultiIndex, Space};

/// The operator sum_i xi^(i) d/dx_i applied to f, truncated to the shared
/// storage order. The result is trusted through min(vo(xi), vo(f) - 1), or
/// through min(vo(xi), vo(f)) when xi has no constant term.
pub fn derive(xi: &Jet, f: &Jet) -> Result<Jet> {
    if xi.source != f.source {
        return Err(space_mismatch("derive", &f.source, &xi.source));
    }
    if xi.target != xi.source {
        return Err(space_mismatch("derive field", &xi.source, &xi.target));
    }
    let order_out = xi.order().min(f.order());
    let f_shift = if xi.constant_term_zero() { 0 } else { 1 };
    let valid_out = xi
        .valid_order
        .min(f.valid_order - f_shift)
        .clamp(-1, order_out);
    let dim = xi.source.dim();
    let mut out = Jet::zero(&xi.source, &f.target, order_out).with_valid(valid_out);
    for n in 0..=xi.order() {
        let xi_n = xi.component(n).unwrap();
        if xi_n.is_zero() {
            continue;
        }
        for r in 1..=f.order() {
            let s = n + r - 1;
            if s > order_out {
                break;
            }
            let f_r = f.component(r).unwrap();
            if f_r.is_zero() {
                continue;
            }
            for i in 0..dim {
                let xi_table = xi_n.coord_table(i);
                if xi_table.is_empty() {
                    continue;
                }
                let partial = f_r.partial(i);
                if partial.is_zero() {
                    continue;
                }
                let slot = out.component_mut(s as usize);
                for (mono_a, c) in &xi_table {
                    for (mono_b, v) in partial.terms() {
                        let scaled: Vec<Rational> = v.iter().map(|w| w * c).collect();
                        slot.add_vec(mono_a.add(mono_b), &scaled)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Bracket of formal vector fields: derive(xi, eta) - derive(eta, xi).
pub fn bracket_s(xi: &Jet, eta: &Jet) -> Result<Jet> {
    derive(xi, eta)?.sub(&derive(eta, xi)?)
}

/// Outcome of comparing two computations through a trusted degree.
#[derive(Debug, Clone, Serialize)]
pub struct Consistency {
    pub pass: bool,
    pub compared_order: i64,
    pub witness: Option<String>,
}

/// Check the differential-operator form of `derive` against the insertion
/// form: for each coefficient u_m of f (as a symmetric m-linear map),
/// insert xi into one slot, with multiplicity m.
pub fn derive_pointwise_consistency(xi: &Jet, f: &Jet, up_to: i64) -> Result<Consistency> {
    let direct = derive(xi, f)?;
    let order_out = direct.order();
    let ident = identity_poly(&xi.source);
    let mut oracle = Jet::zero(&xi.source, &f.target, order_out).with_valid(direct.valid_order);
    for m in 1..=f.order() {
        let f_m = f.component(m).unwrap();
        if f_m.is_zero() {
            continue;
        }
        let u = polarize(f_m)?;
        for n in 0..=xi.order() {
            let s = n + m - 1;
            if s > order_out {
                break;
            }
            let xi_n = xi.component(n).unwrap();
            if xi_n.is_zero() {
                continue;
            }
            let mut args: Vec<&HomogeneousPoly> = vec![&ident; m as usize];
            args[0] = xi_n;
            let inserted = u.apply_polys(&args)?.scale(&rat(m));
            *oracle.component_mut(s as usize) = oracle.component(s).unwrap().add(&inserted)?;
        }
    }
    let compared_order = up_to.min(direct.valid_order);
    let witness = direct.first_difference(&oracle, compared_order)?;
    Ok(Consistency {
        pass: witness.is_none(),
        compared_order,
        witness,
    })
}

fn identity_poly(space: &Space) -> HomogeneousPoly {
    let mut p = HomogeneousPoly::zero(space, space, 1);
    for i in 0..space.dim() {
        p.add_term(MultiIndex::unit(space.dim(), i), i, &Rational::from_integer(1.into()))
            .expect("well formed");
    }
    p
}

/// Parametrized version of `derive` for curried families of fields on the
/// left factor: outer monomials multiply, inner jets derive.
pub fn curried_derive(xi: &CurriedJet, f: &CurriedJet) -> Result<CurriedJet> {
    if xi.prod != f.prod {
        return Err(space_mismatch(
            "curried derive",
            &f.prod.total,
            &xi.prod.total,
        ));
    }
    if xi.target != xi.prod.left || f.target != f.prod.left {
        return Err(space_mismatch(
            "curried derive field",
            &xi.prod.left,
            &xi.target,
        ));
    }
    let inner_order = xi.inner_order.min(f.inner_order);
    let valid_total = xi.valid_total.min(f.valid_total) - 1;
    let mut out = CurriedJet::new(
        xi.prod.clone(),
        xi.target.clone(),
        inner_order,
        Default::default(),
        valid_total,
    )?;
    for (beta1, jet1) in xi.terms() {
        for (beta2, jet2) in f.terms() {
            let d = derive(jet1, jet2)?;
            out.add_scaled(&beta1.add(beta2), &d, &Rational::from_integer(1.into()))?;
        }
    }
    Ok(out)
}

/// Parametrized bracket of curried families of fields.
pub fn curried_bracket_s(xi: &CurriedJet, eta: &CurriedJet) -> Result<CurriedJet> {
    let left = curried_derive(xi, eta)?;
    let right = curried_derive(eta, xi)?;
    let mut out = left;
    for (beta, jet) in right.terms() {
        out.add_scaled(beta, jet, &Rational::from_integer((-1).into()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq};
    use crate::space::SpaceDesc;

    fn line() -> Space {
        SpaceDesc::numbered("X", "x", 1)
    }

    fn field(terms: &[(u32, i64)], order: i64) -> Jet {
        let x = line();
        let list: Vec<(u32, &[u32], usize, Rational)> = terms
            .iter()
            .map(|(d, c)| (*d, std::slice::from_ref(d), 0usize, rat(*c)))
            .collect();
        Jet::polynomial(&x, &x, order, &list).unwrap()
    }

    #[test]
    fn derive_is_not_associative() {
        // xi = zeta = x^2, eta = x: the two ways of composing derive differ.
        let xi = field(&[(2, 1)], 12);
        let eta = field(&[(1, 1)], 12);
        let xi_eta = derive(&xi, &eta).unwrap();
        assert!(xi_eta.equal_up_to(&field(&[(2, 1)], 12), 10).unwrap());
        let eta_xi = derive(&eta, &xi).unwrap();
        assert!(eta_xi.equal_up_to(&field(&[(2, 2)], 12), 10).unwrap());
        let xi_xi = derive(&xi, &xi).unwrap();
        assert!(xi_xi.equal_up_to(&field(&[(3, 2)], 12), 10).unwrap());
        let left = derive(&xi, &derive(&eta, &xi).unwrap()).unwrap();
        let right = derive(&derive(&xi, &eta).unwrap(), &xi).unwrap();
        assert!(left.equal_up_to(&field(&[(3, 4)], 12), 9).unwrap());
        assert!(right.equal_up_to(&field(&[(3, 2)], 12), 9).unwrap());
        assert!(!left.equal_up_to(&right, 9).unwrap());
    }

    #[test]
    fn bracket_on_monomial_fields() {
        // [x^a d/dx, x^b d/dx] = (b - a) x^(a+b-1) d/dx.
        for (a, b) in [(0u32, 2u32), (1, 3), (2, 2), (2, 5)] {
            let xi = field(&[(a, 1)], 10);
            let eta = field(&[(b, 1)], 10);
            let br = bracket_s(&xi, &eta).unwrap();
            let want = field(&[(a + b - 1, b as i64 - a as i64)], 10);
            let through = br.valid_order.min(9);
            assert!(br.equal_up_to(&want, through).unwrap(), "a={a} b={b}");
        }
    }

    #[test]
    fn validity_drops_without_zero_constant_term() {
        let xi = field(&[(0, 1)], 5);
        let f = field(&[(1, 1)], 5);
        assert_eq!(derive(&xi, &f).unwrap().valid_order, 4);
        let xi0 = field(&[(1, 1)], 5);
        assert_eq!(derive(&xi0, &f).unwrap().valid_order, 5);
    }

    #[test]
    fn insertion_oracle_matches_two_dims() {
        let x = SpaceDesc::numbered("X", "x", 2);
        let xi = Jet::polynomial(
            &x,
            &x,
            8,
            &[
                (1, &[0, 1], 0, rat(3)),
                (2, &[1, 1], 1, ratq(1, 2)),
                (0, &[0, 0], 1, rat(-1)),
            ],
        )
        .unwrap();
        let f = Jet::polynomial(
            &x,
            &x,
            8,
            &[
                (3, &[2, 1], 0, rat(1)),
                (2, &[0, 2], 1, ratq(-2, 3)),
                (1, &[1, 0], 1, rat(5)),
            ],
        )
        .unwrap();
        let check = derive_pointwise_consistency(&xi, &f, 7).unwrap();
        assert!(check.pass, "witness: {:?}", check.witness);
        assert_eq!(check.compared_order, 7);
    }

    #[test]
    fn curried_bracket_matches_uncurried() {
        use crate::space::ProductSpace;
        let prod = ProductSpace::new(
            SpaceDesc::numbered("X", "x", 1),
            SpaceDesc::numbered("Y", "y", 1),
        )
        .unwrap();
        // Fields on the product depending on the parameter y.
        let f = Jet::polynomial(
            &prod.total,
            &prod.left,
            8,
            &[(2, &[1, 1], 0, rat(1)), (1, &[1, 0], 0, rat(2))],
        )
        .unwrap();
        let g = Jet::polynomial(
            &prod.total,
            &prod.left,
            8,
            &[(3, &[2, 1], 0, rat(1)), (2, &[0, 2], 0, rat(-1))],
        )
        .unwrap();
        let cf = CurriedJet::curry(&f, &prod).unwrap();
        let cg = CurriedJet::curry(&g, &prod).unwrap();
        let br = curried_bracket_s(&cf, &cg).unwrap();
        assert_eq!(br.valid_total, 7);

        // Same computation done degreewise by hand on x-jets for y fixed,
        // here as plain bracket of the y^1 and y^2 slices composed by outer
        // monomial addition.
        let got = br.uncurry().unwrap();
        let f1 = cf.term(&MultiIndex(vec![1])).unwrap();
        let f0 = cf.term(&MultiIndex(vec![0])).unwrap();
        let g1 = cg.term(&MultiIndex(vec![1])).unwrap();
        let g2 = cg.term(&MultiIndex(vec![2])).unwrap();
        for beta in 0u32..=3 {
            let mut want = Jet::zero(&prod.left, &prod.left, 8).with_valid(8);
            for (b1, j1) in [(1u32, f1), (0, f0)] {
                for (b2, j2) in [(1u32, g1), (2, g2)] {
                    if b1 + b2 == beta {
                        want = want.add(&bracket_s(j1, j2).unwrap()).unwrap();
                    }
                }
            }
            let slice = got
                .components()
                .iter()
                .flat_map(|comp| comp.terms())
                .filter(|(gamma, _)| gamma.0[1] == beta);
            for (gamma, v) in slice {
                let alpha = MultiIndex(vec![gamma.0[0]]);
                let m = alpha.degree() as i64;
                if m + beta as i64 <= br.valid_total {
                    let want_v: Vec<Rational> = (0..1)
                        .map(|k| {
                            want.component(m)
                                .map(|p| p.coefficient_at(&alpha, k))
                                .unwrap_or_else(|| rat(0))
                        })
                        .collect();
                    assert_eq!(v, &want_v, "beta {beta} alpha {alpha}");
                }
            }
        }
    }
}
