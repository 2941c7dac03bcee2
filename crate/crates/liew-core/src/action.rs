//! Actions of a Lie algebra by formal vector fields, validated on
//! construction.
//!
//! A `FormalAction` assigns to every basis vector a field on a fixed space
//! so that brackets are preserved: the field of [a, b] equals the field
//! bracket of the images, checked degree by degree as far as the stored
//! truncations allow. The module also provides the pointwise bracket of
//! algebra-valued jets and the prolongation of an algebra-valued jet to a
//! vector field on a product space.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::derive::bracket_s;
use crate::error::{Error, Result};
use crate::jet::{CurriedJet, Jet};
use crate::lie::LieAlgebra;
use crate::space::{space_mismatch, ProductSpace, Space, SpaceDesc, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct FormalAction {
    pub algebra: LieAlgebra,
    pub space: Space,
    pub order: i64,
    images: Vec<Jet>,
}

impl FormalAction {
    /// Validate and store an action given by one field per basis vector.
    /// Each pair of images is bracketed and compared with the image of the
    /// algebra bracket through every degree both sides trust.
    pub fn new(algebra: LieAlgebra, space: Space, order: i64, images: Vec<Jet>) -> Result<Self> {
        if images.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                context: "action images".into(),
                expected: algebra.dim(),
                found: images.len(),
            });
        }
        let order = order.max(0);
        let mut stored = Vec::with_capacity(images.len());
        for img in images {
            if img.source != space {
                return Err(space_mismatch("action image source", &space, &img.source));
            }
            if img.target != space {
                return Err(space_mismatch("action image target", &space, &img.target));
            }
            if img.order() < order {
                return Err(Error::invalid(
                    "action image",
                    format!("stored order {} below action order {order}", img.order()),
                ));
            }
            stored.push(img.truncated(order));
        }
        let action = FormalAction {
            algebra,
            space,
            order,
            images: stored,
        };
        action.validate()?;
        Ok(action)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.algebra.dim();
        for i in 0..dim {
            for j in i + 1..dim {
                let lhs = bracket_s(&self.images[i], &self.images[j])?;
                let rhs = self.image_of_coords(self.algebra.structure(i, j))?;
                let through = lhs.valid_order.min(rhs.valid_order);
                for m in 0..=through.max(-1) {
                    let a = lhs.component(m).unwrap();
                    let b = rhs.component(m).unwrap();
                    if a != b {
                        return Err(Error::NotAHomomorphism {
                            left: self.algebra.space.basis[i].clone(),
                            right: self.algebra.space.basis[j].clone(),
                            degree: m,
                            defect: a.sub(b)?.terms_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn image(&self, i: usize) -> &Jet {
        &self.images[i]
    }

    pub fn images(&self) -> &[Jet] {
        &self.images
    }

    /// The field of an arbitrary algebra element, by linearity.
    pub fn image_of(&self, v: &Vector) -> Result<Jet> {
        if v.space != self.algebra.space {
            return Err(space_mismatch("action element", &self.algebra.space, &v.space));
        }
        self.image_of_coords(&v.coords)
    }

    fn image_of_coords(&self, coords: &[crate::scalar::Rational]) -> Result<Jet> {
        let mut out = Jet::zero(&self.space, &self.space, self.order);
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.images[k].scale(c))?;
            }
        }
        Ok(out)
    }
}

/// Pointwise bracket of two algebra-valued jets on a common source:
/// x maps to [f(x), g(x)]. Trust is the minimum of the inputs'.
pub fn pointwise_bracket(alg: &LieAlgebra, f: &Jet, g: &Jet) -> Result<Jet> {
    if f.target != alg.space {
        return Err(space_mismatch("pointwise bracket", &alg.space, &f.target));
    }
    if g.target != alg.space {
        return Err(space_mismatch("pointwise bracket", &alg.space, &g.target));
    }
    if f.source != g.source {
        return Err(space_mismatch("pointwise bracket", &f.source, &g.source));
    }
    let order_out = f.order().min(g.order());
    let valid_out = f.valid_order.min(g.valid_order);
    let mut out = Jet::zero(&f.source, &alg.space, order_out).with_valid(valid_out);
    for n in 0..=f.order() {
        let f_n = f.component(n).unwrap();
        if f_n.is_zero() {
            continue;
        }
        for r in 0..=g.order() {
            let s = n + r;
            if s > order_out {
                break;
            }
            let g_r = g.component(r).unwrap();
            if g_r.is_zero() {
                continue;
            }
            let prod = alg.poly_bracket(f_n, g_r)?;
            out.component_mut(s as usize).add_assign(&prod)?;
        }
    }
    Ok(out)
}

/// Prolong an algebra-valued jet on Y to a vector field on X x Y through an
/// action of the algebra on X: each Y-coefficient is replaced by the field
/// it acts as, and the result is injected as the X-component of a field on
/// the product (the Y-component is zero).
pub fn prolong(action: &FormalAction, a: &Jet, prod: &ProductSpace) -> Result<Jet> {
    if prod.left != action.space {
        return Err(space_mismatch("prolong", &action.space, &prod.left));
    }
    if prod.right != a.source {
        return Err(space_mismatch("prolong", &a.source, &prod.right));
    }
    if a.target != action.algebra.space {
        return Err(space_mismatch(
            "prolong values",
            &action.algebra.space,
            &a.target,
        ));
    }
    let image_valid = action
        .images
        .iter()
        .map(|img| img.valid_order)
        .min()
        .unwrap_or(action.order);
    let valid_total = image_valid.min(a.valid_order);
    let mut terms: BTreeMap<crate::space::MultiIndex, Jet> = BTreeMap::new();
    for comp in a.components() {
        for (beta, v) in comp.terms() {
            let mut inner = Jet::zero(&action.space, &action.space, action.order);
            for (j, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    inner = inner.add(&action.images[j].scale(c))?;
                }
            }
            terms.insert(beta.clone(), inner);
        }
    }
    let curried = CurriedJet::new(
        prod.clone(),
        action.space.clone(),
        action.order,
        terms,
        valid_total,
    )?;
    curried.embed_left_fields()
}

/// View a field on Y as a field on X x Y with zero X-component.
pub fn embed_right(d: &Jet, prod: &ProductSpace) -> Result<Jet> {
    if d.source != prod.right {
        return Err(space_mismatch("embed right", &prod.right, &d.source));
    }
    if d.target != prod.right {
        return Err(space_mismatch("embed right field", &prod.right, &d.target));
    }
    let dim_x = prod.left.dim();
    let mut out = Jet::zero(&prod.total, &prod.total, d.order()).with_valid(d.valid_order);
    for comp in d.components() {
        for (beta, v) in comp.terms() {
            let gamma = prod.join(&crate::space::MultiIndex::zero(dim_x), beta);
            out.component_mut(gamma.degree() as usize)
                .add_vec(gamma, &prod.inject_right(v))?;
        }
    }
    Ok(out)
}

/// Serialized form of an action: the algebra inline, the space by its
/// basis, and one jet per basis label.
#[derive(Serialize, Deserialize)]
struct ActionRepr {
    algebra: LieAlgebra,
    space: Vec<String>,
    order: i64,
    images: BTreeMap<String, Jet>,
}

impl FormalAction {
    fn to_repr(&self) -> ActionRepr {
        let images = self
            .algebra
            .space
            .basis
            .iter()
            .cloned()
            .zip(self.images.iter().cloned())
            .collect();
        ActionRepr {
            algebra: self.algebra.clone(),
            space: self.space.basis.clone(),
            order: self.order,
            images,
        }
    }

    fn from_repr(repr: ActionRepr) -> Result<Self> {
        let space = SpaceDesc::new(repr.space.join(","), repr.space.clone())?;
        let mut images = Vec::with_capacity(repr.algebra.dim());
        let mut supplied = repr.images;
        for label in &repr.algebra.space.basis {
            let jet = supplied.remove(label).ok_or_else(|| {
                Error::invalid("action images", format!("missing image for {label:?}"))
            })?;
            images.push(jet);
        }
        if let Some(extra) = supplied.into_keys().next() {
            return Err(Error::invalid(
                "action images",
                format!("image for unknown basis label {extra:?}"),
            ));
        }
        FormalAction::new(repr.algebra, space, repr.order, images)
    }
}

impl FormalAction {
    /// Parse from JSON text with the typed error kept: a broken
    /// homomorphism law reports itself, not a serialization message.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let repr: ActionRepr = serde_json::from_str(text)
            .map_err(|e| Error::invalid("action JSON", e.to_string()))?;
        FormalAction::from_repr(repr)
    }
}

impl Serialize for FormalAction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormalAction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ActionRepr::deserialize(deserializer)?;
        FormalAction::from_repr(repr).map_err(D::Error::custom)
    }
}
