//! Regenerate the JSON fixture files in the repository root:
//!
//! ```text
//! cargo run -p liew-core --example dump_fixtures -- fixtures
//! ```

use std::fs;
use std::path::PathBuf;

use liew_core::fixtures;
use liew_core::scalar::rat;
use liew_core::space::Vector;
use liew_core::{Jet, WreathAlgebra};

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    fs::create_dir_all(&dir).expect("fixture directory");
    let write = |name: &str, value: serde_json::Value| {
        let path = dir.join(name);
        let text = serde_json::to_string_pretty(&value).expect("fixtures serialize");
        fs::write(&path, text + "\n").expect("fixture file");
        println!("wrote {}", path.display());
    };

    write("abelian_1.json", to_value(&fixtures::abelian_labeled("B", "y", 1)));
    write("abelian_a1.json", to_value(&fixtures::abelian_labeled("A", "a", 1)));
    write("abelian_r3.json", to_value(&fixtures::abelian(3)));
    write("heisenberg_3.json", to_value(&fixtures::heisenberg_3()));
    write("sl2.json", to_value(&fixtures::sl2()));
    write("solvable_2.json", to_value(&fixtures::solvable_2()));
    write("sl2_projective.json", to_value(&fixtures::sl2_projective(8)));
    write("solvable_split.json", to_value(&fixtures::solvable_extension(0)));
    write("solvable_split_alt.json", to_value(&fixtures::solvable_extension(1)));
    write("heisenberg_center.json", to_value(&fixtures::heisenberg_center_extension()));
    write("direct_product.json", to_value(&fixtures::direct_product_extension()));

    // Two one-variable fields whose bracket and derivations make a small
    // worked example: xi(x) = x^2 and eta(x) = x.
    let x = liew_core::SpaceDesc::numbered("X", "x", 1);
    let xi = Jet::polynomial(&x, &x, 9, &[(2, &[2], 0, rat(1))]).expect("xi");
    let eta = Jet::polynomial(&x, &x, 9, &[(1, &[1], 0, rat(1))]).expect("eta");
    write("jet_x_squared.json", to_value(&xi));
    write("jet_x.json", to_value(&eta));

    // Two elements of the doubly one-dimensional wreath product.
    let w = WreathAlgebra::fundamental(
        fixtures::abelian_labeled("A", "a", 1),
        fixtures::abelian_labeled("B", "y", 1),
        8,
    )
    .expect("wreath");
    let f = Jet::polynomial(w.y_space(), &w.a.space, 8, &[(2, &[2], 0, rat(1))]).expect("f");
    let g = Jet::polynomial(w.y_space(), &w.a.space, 8, &[(3, &[3], 0, rat(2))]).expect("g");
    let u = w.element(f, Vector::ints(&w.b.space, &[1])).expect("u");
    let v = w.element(g, Vector::ints(&w.b.space, &[0])).expect("v");
    write("wreath_u.json", u.to_json());
    write("wreath_v.json", v.to_json());

    // An element of the wreath product of sl2 with the heisenberg algebra,
    // for the triangular-field demonstration.
    let w = WreathAlgebra::fundamental(fixtures::sl2(), fixtures::heisenberg_3(), 8)
        .expect("wreath");
    let f = Jet::polynomial(w.y_space(), &w.a.space, 8, &[(1, &[1, 0, 0], 1, rat(1))])
        .expect("f");
    let u = w
        .element(f, Vector::basis(&w.b.space, 0))
        .expect("element");
    write("wreath_sl2_heis.json", u.to_json());
}

fn to_value<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("fixtures serialize")
}
