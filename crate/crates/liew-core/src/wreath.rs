//! Wreath product of two Lie algebras through an action by formal fields.
//!
//! Elements are pairs (f, b): a jet f from the acted-on space Y into A and
//! an element b of B. B acts on jets by deriving along the field of b, and
//! the bracket is
//!
//!   [(f, b), (g, c)] = ([f, g]_A + b.g - c.f, [b, c]_B)
//!
//! where [f, g]_A is the pointwise bracket and b.g derives g along the
//! field of b. With the canonical action of B on its own space this is the
//! product the split-extension embedding lands in.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::action::{embed_right, pointwise_bracket, prolong, FormalAction};
use crate::derive::{derive, Consistency};
use crate::error::{Error, Result};
use crate::fundamental::fundamental_action;
use crate::jet::Jet;
use crate::lie::LieAlgebra;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::space::{space_mismatch, ProductSpace, Space, Vector};

#[derive(Debug, Clone)]
pub struct WreathAlgebra {
    pub a: LieAlgebra,
    pub b: LieAlgebra,
    pub action: FormalAction,
    pub order: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WreathElement {
    pub f: Jet,
    pub b: Vector,
}

impl WreathAlgebra {
    /// Wreath product with B acting canonically on its own space.
    pub fn fundamental(a: LieAlgebra, b: LieAlgebra, order: i64) -> Result<Self> {
        let action = fundamental_action(&b, order)?;
        Self::with_action(a, b, action)
    }

    /// Wreath product with an explicit action of B.
    pub fn with_action(a: LieAlgebra, b: LieAlgebra, action: FormalAction) -> Result<Self> {
        if action.algebra != b {
            return Err(Error::invalid(
                "wreath action",
                "the acting algebra differs from the declared B",
            ));
        }
        let order = action.order;
        Ok(WreathAlgebra { a, b, action, order })
    }

    /// The space whose jets form the first components.
    pub fn y_space(&self) -> &Space {
        &self.action.space
    }

    pub fn element(&self, f: Jet, b: Vector) -> Result<WreathElement> {
        if f.source != *self.y_space() {
            return Err(space_mismatch("wreath element", self.y_space(), &f.source));
        }
        if f.target != self.a.space {
            return Err(space_mismatch("wreath element", &self.a.space, &f.target));
        }
        if b.space != self.b.space {
            return Err(space_mismatch("wreath element", &self.b.space, &b.space));
        }
        Ok(WreathElement { f, b })
    }

    pub fn zero(&self, order: i64) -> WreathElement {
        WreathElement {
            f: Jet::zero(self.y_space(), &self.a.space, order),
            b: Vector::zero(&self.b.space),
        }
    }

    /// The action of b on a jet: derive along the field of b. Trust drops
    /// by one degree because fields of the canonical action have constant
    /// terms.
    pub fn star(&self, b: &Vector, f: &Jet) -> Result<Jet> {
        derive(&self.action.image_of(b)?, f)
    }

    pub fn bracket(&self, u: &WreathElement, v: &WreathElement) -> Result<WreathElement> {
        let f_part = pointwise_bracket(&self.a, &u.f, &v.f)?
            .add(&self.star(&u.b, &v.f)?)?
            .sub(&self.star(&v.b, &u.f)?)?;
        let b_part = self.b.bracket(&u.b, &v.b)?;
        Ok(WreathElement { f: f_part, b: b_part })
    }

    /// Check that the action of b is a derivation of the pointwise bracket:
    /// b.[f, g] = [b.f, g] + [f, b.g] through every trusted degree.
    pub fn sigma_derivation_check(
        &self,
        b: &Vector,
        f: &Jet,
        g: &Jet,
        up_to: i64,
    ) -> Result<Consistency> {
        let lhs = self.star(b, &pointwise_bracket(&self.a, f, g)?)?;
        let rhs = pointwise_bracket(&self.a, &self.star(b, f)?, g)?
            .add(&pointwise_bracket(&self.a, f, &self.star(b, g)?)?)?;
        let compared_order = up_to.min(lhs.valid_order).min(rhs.valid_order);
        let witness = lhs.first_difference(&rhs, compared_order)?;
        Ok(Consistency {
            pass: witness.is_none(),
            compared_order,
            witness,
        })
    }

    /// The field on X x Y attached to a wreath element through an action of
    /// A on X: the prolongation of f plus the field of b on the Y factor.
    /// Bracketing these fields represents the wreath bracket.
    pub fn triangular_field(
        &self,
        x_action: &FormalAction,
        u: &WreathElement,
    ) -> Result<Jet> {
        if x_action.algebra != self.a {
            return Err(Error::invalid(
                "triangular field",
                "the X-action does not act for the declared A",
            ));
        }
        let prod = ProductSpace::new(x_action.space.clone(), self.y_space().clone())?;
        let left = prolong(x_action, &u.f, &prod)?;
        let right = embed_right(&self.action.image_of(&u.b)?, &prod)?;
        let n = left.order().max(right.order());
        left.truncated(n).add(&right.truncated(n))
    }
}

impl WreathElement {
    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(WreathElement {
            f: self.f.add(&other.f)?,
            b: self.b.add(&other.b)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(WreathElement {
            f: self.f.sub(&other.f)?,
            b: self.b.sub(&other.b)?,
        })
    }

    pub fn neg(&self) -> Self {
        WreathElement {
            f: self.f.neg(),
            b: self.b.neg(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WreathElement {
            f: self.f.scale(c),
            b: self.b.scale(c),
        }
    }

    /// True when the B part vanishes and the jet vanishes through its
    /// trusted order.
    pub fn is_zero_through_valid(&self) -> bool {
        self.b.is_zero() && self.f.is_zero_through_valid()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut coords = BTreeMap::new();
        for (label, c) in self.b.space.basis.iter().zip(&self.b.coords) {
            if !c.is_zero() {
                coords.insert(label.clone(), format_rational(c));
            }
        }
        serde_json::json!({ "f": self.f, "b": coords })
    }

    /// Parse from JSON against a containing wreath product: the B part is a
    /// map from basis labels to rationals, so it needs the product for
    /// context.
    pub fn from_json(value: &serde_json::Value, wreath: &WreathAlgebra) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::invalid("wreath element", "expected an object"))?;
        let f_value = obj
            .get("f")
            .ok_or_else(|| Error::invalid("wreath element", "missing field f"))?;
        let f: Jet = serde_json::from_value(f_value.clone())
            .map_err(|e| Error::invalid("wreath element", e.to_string()))?;
        let mut b = Vector::zero(&wreath.b.space);
        if let Some(b_value) = obj.get("b") {
            let map = b_value
                .as_object()
                .ok_or_else(|| Error::invalid("wreath element", "field b must be an object"))?;
            for (label, text) in map {
                let i = wreath.b.space.label_index(label).ok_or_else(|| {
                    Error::invalid("wreath element", format!("unknown basis label {label:?}"))
                })?;
                let s = text
                    .as_str()
                    .ok_or_else(|| Error::invalid("wreath element", "coordinates are strings"))?;
                b.coords[i] = parse_rational(s)?;
            }
        }
        wreath.element(f, b)
    }

    pub fn pretty(&self) -> String {
        format!(
            "f: {}b: {}\n",
            self.f.pretty(),
            crate::space::coords_string(&self.b.coords)
        )
    }
}

impl serde::Serialize for WreathElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{rat, ratq};
    use crate::space::MultiIndex;

    /// Both factors one-dimensional and abelian: the bracket collapses to
    /// ((b g' - c f'), 0).
    #[test]
    fn both_factors_one_dimensional() {
        let w = WreathAlgebra::fundamental(fixtures::abelian(1), fixtures::abelian(1), 8).unwrap();
        let y = w.y_space().clone();
        let f = Jet::polynomial(&y, &w.a.space, 8, &[(2, &[2], 0, rat(1))]).unwrap();
        let g = Jet::polynomial(&y, &w.a.space, 8, &[(3, &[3], 0, rat(1))]).unwrap();
        let u = w.element(f, Vector::ints(&w.b.space, &[2])).unwrap();
        let v = w.element(g, Vector::ints(&w.b.space, &[1])).unwrap();
        let br = w.bracket(&u, &v).unwrap();
        assert!(br.b.is_zero());
        // 2 (y^3)' - 1 (y^2)' = 6 y^2 - 2 y.
        assert_eq!(
            br.f.component(2).unwrap().coefficient_at(&MultiIndex(vec![2]), 0),
            rat(6)
        );
        assert_eq!(
            br.f.component(1).unwrap().coefficient_at(&MultiIndex(vec![1]), 0),
            rat(-2)
        );
        assert_eq!(br.f.valid_order, 7);
        let anti = w.bracket(&v, &u).unwrap();
        assert!(br.add(&anti).unwrap().is_zero_through_valid());
    }

    /// On the Heisenberg algebra (ad y)^2 vanishes for basis y, so the star
    /// action keeps only the first two terms of the canonical series.
    #[test]
    fn heisenberg_star_closed_form() {
        let h = fixtures::heisenberg_3();
        let w = WreathAlgebra::fundamental(h.clone(), h, 8).unwrap();
        let y = w.y_space().clone();
        // f = x-var^2 (x) y_basis; field of x acts as x - (1/2) y-var (x) z.
        let f = Jet::polynomial(&y, &w.a.space, 8, &[(2, &[2, 0, 0], 1, rat(1))]).unwrap();
        let b = Vector::basis(&w.b.space, 0);
        let s = w.star(&b, &f).unwrap();
        // derive(x d/d(x-var), x-var^2 y) = 2 x-var y; the z-correction
        // derives nothing of f. Degrees: d/dx of x^2 is 2x, scaled by the
        // constant field x.
        assert_eq!(
            s.component(1).unwrap().coefficient_at(&MultiIndex(vec![1, 0, 0]), 1),
            rat(2)
        );
        assert_eq!(s.valid_order, 7);
        let check = crate::derive::derive_pointwise_consistency(
            &w.action.image_of(&b).unwrap(),
            &f,
            7,
        )
        .unwrap();
        assert!(check.pass, "witness: {:?}", check.witness);
    }

    #[test]
    fn sigma_derivation_holds() {
        let h = fixtures::heisenberg_3();
        let w = WreathAlgebra::fundamental(h.clone(), h, 8).unwrap();
        let y = w.y_space().clone();
        let f = Jet::polynomial(
            &y,
            &w.a.space,
            8,
            &[(1, &[1, 0, 0], 0, rat(1)), (2, &[0, 2, 0], 1, ratq(1, 2))],
        )
        .unwrap();
        let g = Jet::polynomial(
            &y,
            &w.a.space,
            8,
            &[(2, &[1, 1, 0], 1, rat(3)), (0, &[0, 0, 0], 2, rat(1))],
        )
        .unwrap();
        let b = Vector::ints(&w.b.space, &[1, -2, 1]);
        let c = w.sigma_derivation_check(&b, &f, &g, 7).unwrap();
        assert!(c.pass, "witness: {:?}", c.witness);
        assert_eq!(c.compared_order, 7);
    }

    #[test]
    fn wreath_jacobi_on_sample() {
        let w = WreathAlgebra::fundamental(fixtures::abelian(2), fixtures::solvable_2(), 9).unwrap();
        let y = w.y_space().clone();
        let u = w
            .element(
                Jet::polynomial(&y, &w.a.space, 9, &[(2, &[1, 1], 0, rat(1))]).unwrap(),
                Vector::ints(&w.b.space, &[1, 0]),
            )
            .unwrap();
        let v = w
            .element(
                Jet::polynomial(&y, &w.a.space, 9, &[(1, &[0, 1], 1, rat(2))]).unwrap(),
                Vector::ints(&w.b.space, &[0, 1]),
            )
            .unwrap();
        let t = w
            .element(
                Jet::polynomial(&y, &w.a.space, 9, &[(3, &[2, 1], 0, ratq(1, 3))]).unwrap(),
                Vector::ints(&w.b.space, &[1, 1]),
            )
            .unwrap();
        let sum = w
            .bracket(&w.bracket(&u, &v).unwrap(), &t)
            .unwrap()
            .add(&w.bracket(&w.bracket(&v, &t).unwrap(), &u).unwrap())
            .unwrap()
            .add(&w.bracket(&w.bracket(&t, &u).unwrap(), &v).unwrap())
            .unwrap();
        assert!(sum.f.valid_order >= 7);
        assert!(sum.is_zero_through_valid());
    }

    #[test]
    fn element_json_round_trip() {
        let w = WreathAlgebra::fundamental(fixtures::abelian(1), fixtures::solvable_2(), 6).unwrap();
        let y = w.y_space().clone();
        let u = w
            .element(
                Jet::polynomial(&y, &w.a.space, 6, &[(1, &[1, 0], 0, ratq(-2, 3))]).unwrap(),
                Vector::ints(&w.b.space, &[0, 5]),
            )
            .unwrap();
        let value = u.to_json();
        let back = WreathElement::from_json(&value, &w).unwrap();
        assert_eq!(u, back);
    }
}
