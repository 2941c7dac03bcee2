//! Formal actions: construction re-checks the homomorphism law, the
//! pointwise bracket, prolongation, and the JSON format.

use liew_core::action::{embed_right, pointwise_bracket, FormalAction};
use liew_core::fixtures;
use liew_core::rng::{cell_rng, jet_poly};
use liew_core::scalar::rat;
use liew_core::space::{MultiIndex, ProductSpace, SpaceDesc};
use liew_core::{Error, Jet};

#[test]
fn projective_fields_represent_sl2() {
    // d_h = 2x d/dx, d_e = -x^2 d/dx, d_f = d/dx on a line: construction
    // validates [d_a, d_b] = d_[a,b] on every basis pair.
    let action = fixtures::sl2_projective(8);
    assert_eq!(action.order, 8);
    let e_img = action.image(1);
    assert_eq!(
        e_img.component(2).unwrap().coefficient_at(&MultiIndex(vec![2]), 0),
        rat(-1)
    );
}

#[test]
fn breaking_one_field_is_rejected_with_witness() {
    let good = fixtures::sl2_projective(6);
    let sl2 = fixtures::sl2();
    let line = good.space.clone();
    let mut images: Vec<Jet> = good.images().to_vec();
    // Perturb d_f by +x^2 d/dx.
    images[2] = images[2]
        .add(&Jet::polynomial(&line, &line, 6, &[(2, &[2], 0, rat(1))]).unwrap())
        .unwrap();
    let err = FormalAction::new(sl2, line, 6, images).unwrap_err();
    match err {
        Error::NotAHomomorphism { ref left, ref right, .. } => {
            assert!(!left.is_empty() && !right.is_empty());
        }
        other => panic!("expected homomorphism defect, got {other}"),
    }
    }

#[test]
fn pointwise_bracket_is_a_lie_bracket() {
    let alg = fixtures::sl2();
    let y = SpaceDesc::numbered("Y", "y", 2);
    let mut rng = cell_rng(31, "pointwise");
    let f = jet_poly(&mut rng, &y, &alg.space, 7, 3);
    let g = jet_poly(&mut rng, &y, &alg.space, 7, 3);
    let h = jet_poly(&mut rng, &y, &alg.space, 7, 3);
    let anti = pointwise_bracket(&alg, &f, &g)
        .unwrap()
        .add(&pointwise_bracket(&alg, &g, &f).unwrap())
        .unwrap();
    assert!(anti.is_zero_through_valid());
    let jac = pointwise_bracket(&alg, &pointwise_bracket(&alg, &f, &g).unwrap(), &h)
        .unwrap()
        .add(&pointwise_bracket(&alg, &pointwise_bracket(&alg, &g, &h).unwrap(), &f).unwrap())
        .unwrap()
        .add(&pointwise_bracket(&alg, &pointwise_bracket(&alg, &h, &f).unwrap(), &g).unwrap())
        .unwrap();
    assert!(jac.is_zero_through_valid());
}

#[test]
fn prolongation_multiplies_coefficients_onto_fields() {
    // With d_y = d/dy on a line and a = 3y e_h (sl2-valued), the prolonged
    // field on X x Y is 3y d_h = 6 x0 y d/dx0.
    let action = fixtures::sl2_projective(6);
    let y = SpaceDesc::numbered("Y", "y", 1);
    let prod = ProductSpace::new(action.space.clone(), y.clone()).unwrap();
    let a = Jet::polynomial(&y, &action.algebra.space, 6, &[(1, &[1], 0, rat(3))]).unwrap();
    let field = liew_core::action::prolong(&action, &a, &prod).unwrap();
    // Monomial x0 * y in the product, x0-coordinate.
    assert_eq!(
        field.component(2).unwrap().coefficient_at(&MultiIndex(vec![1, 1]), 0),
        rat(6)
    );
    assert_eq!(field.valid_order, 6);
}

#[test]
fn embedded_right_fields_only_move_right_coordinates() {
    let x = SpaceDesc::numbered("X", "x", 2);
    let y = SpaceDesc::numbered("Y", "y", 1);
    let prod = ProductSpace::new(x, y.clone()).unwrap();
    let d = Jet::polynomial(&y, &y, 5, &[(0, &[0], 0, rat(1)), (2, &[2], 0, rat(-4))]).unwrap();
    let lifted = embed_right(&d, &prod).unwrap();
    // Constant part sits in the y coordinate (index 2 of the product).
    assert_eq!(
        lifted.component(0).unwrap().coefficient_at(&MultiIndex(vec![0, 0, 0]), 2),
        rat(1)
    );
    // Degree-2 part depends only on y and points along y.
    assert_eq!(
        lifted.component(2).unwrap().coefficient_at(&MultiIndex(vec![0, 0, 2]), 2),
        rat(-4)
    );
    for comp in lifted.components() {
        for (_, v) in comp.terms() {
            assert!(v[0] == rat(0) && v[1] == rat(0));
        }
    }
}

#[test]
fn action_json_round_trip() {
    let action = fixtures::sl2_projective(5);
    let text = serde_json::to_string(&action).unwrap();
    let back: FormalAction = serde_json::from_str(&text).unwrap();
    assert_eq!(back.order, 5);
    for i in 0..3 {
        assert!(action.image(i).equal_up_to(back.image(i), 5).unwrap());
    }
}
