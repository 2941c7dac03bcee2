//! Truncated formal power series maps (jets) between based spaces.
//!
//! A jet stores homogeneous components for degrees 0..=order together with a
//! `valid_order`: the largest degree whose component is trustworthy
//! (-1 means none is). Operations that lose a degree of validity keep their
//! partial sums in storage above `valid_order`, but evaluation and
//! comparison never look past it. A jet whose nonzero support lies within
//! `valid_order` is a polynomial: it is exact at every degree.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::LinearMap;
use crate::poly::{table_mul, HomogeneousPoly};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::space::{
    space_mismatch, MultiIndex, ProductSpace, Space, SpaceDesc, Vector,
};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub source: Space,
    pub target: Space,
    components: Vec<HomogeneousPoly>,
    pub valid_order: i64,
}

impl Jet {
    pub fn zero(source: &Space, target: &Space, order: i64) -> Self {
        let order = order.max(0);
        let components = (0..=order as u32)
            .map(|m| HomogeneousPoly::zero(source, target, m))
            .collect();
        Jet {
            source: source.clone(),
            target: target.clone(),
            components,
            valid_order: order,
        }
    }

    pub fn from_components(components: Vec<HomogeneousPoly>, valid_order: i64) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::invalid("jet", "no components"))?;
        let (source, target) = (first.source.clone(), first.target.clone());
        for (m, p) in components.iter().enumerate() {
            if p.degree as usize != m {
                return Err(Error::invalid(
                    "jet",
                    format!("component {m} has degree {}", p.degree),
                ));
            }
            if p.source != source || p.target != target {
                return Err(space_mismatch("jet components", &source, &p.source));
            }
        }
        let order = components.len() as i64 - 1;
        if valid_order < -1 || valid_order > order {
            return Err(Error::invalid(
                "jet",
                format!("valid_order {valid_order} outside -1..={order}"),
            ));
        }
        Ok(Jet {
            source,
            target,
            components,
            valid_order,
        })
    }

    /// Polynomial jet from explicit terms; every degree through `order` is
    /// trusted (the jet is the stated polynomial, exactly).
    pub fn polynomial(
        source: &Space,
        target: &Space,
        order: i64,
        terms: &[(u32, &[u32], usize, Rational)],
    ) -> Result<Self> {
        let mut jet = Self::zero(source, target, order);
        for (deg, mono, coord, c) in terms {
            if *deg as i64 > order {
                return Err(Error::invalid(
                    "jet",
                    format!("term degree {deg} above order {order}"),
                ));
            }
            jet.components[*deg as usize].add_term(MultiIndex(mono.to_vec()), *coord, c)?;
        }
        Ok(jet)
    }

    pub fn constant(value: &Vector, source: &Space, order: i64) -> Self {
        let mut jet = Self::zero(source, &value.space, order);
        jet.components[0]
            .add_vec(MultiIndex::zero(source.dim()), &value.coords)
            .expect("constant term is well formed");
        jet
    }

    /// The identity field x on a space.
    pub fn identity(space: &Space, order: i64) -> Self {
        let mut jet = Self::zero(space, space, order.max(1));
        for i in 0..space.dim() {
            jet.components[1]
                .add_term(MultiIndex::unit(space.dim(), i), i, &Rational::one())
                .expect("well formed");
        }
        jet
    }

    /// Degree-1 jet of a linear map.
    pub fn from_linear(m: &LinearMap, order: i64) -> Self {
        let mut jet = Self::zero(&m.source, &m.target, order.max(1));
        for j in 0..m.source.dim() {
            for (k, c) in m.column(j).iter().enumerate() {
                if !c.is_zero() {
                    jet.components[1]
                        .add_term(MultiIndex::unit(m.source.dim(), j), k, c)
                        .expect("well formed");
                }
            }
        }
        jet
    }

    pub fn order(&self) -> i64 {
        self.components.len() as i64 - 1
    }

    pub fn component(&self, m: i64) -> Option<&HomogeneousPoly> {
        if (0..=self.order()).contains(&m) {
            Some(&self.components[m as usize])
        } else {
            None
        }
    }

    pub fn components(&self) -> &[HomogeneousPoly] {
        &self.components
    }

    pub(crate) fn component_mut(&mut self, m: usize) -> &mut HomogeneousPoly {
        &mut self.components[m]
    }

    /// Largest degree with a nonzero component (0 for the zero jet).
    pub fn max_support_degree(&self) -> u32 {
        self.components
            .iter()
            .rev()
            .find(|p| !p.is_zero())
            .map_or(0, |p| p.degree)
    }

    /// True when all nonzero components sit at trusted degrees, so the jet
    /// is exactly the polynomial it stores.
    pub fn is_polynomial(&self) -> bool {
        self.components
            .iter()
            .all(|p| p.is_zero() || (p.degree as i64) <= self.valid_order)
    }

    /// True when the constant term is known to vanish.
    pub fn constant_term_zero(&self) -> bool {
        self.valid_order >= 0 && self.components[0].is_zero()
    }

    pub fn is_zero_through_valid(&self) -> bool {
        self.components
            .iter()
            .take((self.valid_order.max(-1) + 1) as usize)
            .all(HomogeneousPoly::is_zero)
    }

    /// Reduce the claimed validity (for building proper-series test data).
    pub fn with_valid(mut self, valid_order: i64) -> Self {
        self.valid_order = valid_order.clamp(-1, self.order());
        self
    }

    pub fn truncated(&self, order: i64) -> Self {
        let order = order.max(0);
        let mut components = self.components.clone();
        components.truncate(order as usize + 1);
        while components.len() as i64 <= order {
            components.push(HomogeneousPoly::zero(
                &self.source,
                &self.target,
                components.len() as u32,
            ));
        }
        Jet {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
            valid_order: self.valid_order.min(order),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&HomogeneousPoly, &HomogeneousPoly) -> Result<HomogeneousPoly>) -> Result<Self> {
        if self.source != other.source {
            return Err(space_mismatch("jet combine", &self.source, &other.source));
        }
        if self.target != other.target {
            return Err(space_mismatch("jet combine", &self.target, &other.target));
        }
        let order = self.order().min(other.order());
        let mut components = Vec::with_capacity(order as usize + 1);
        for m in 0..=order as usize {
            components.push(f(&self.components[m], &other.components[m])?);
        }
        Jet::from_components(components, self.valid_order.min(other.valid_order).min(order))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        let components = self.components.iter().map(HomogeneousPoly::neg).collect();
        Jet {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
            valid_order: self.valid_order,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let components = self.components.iter().map(|p| p.scale(c)).collect();
        Jet {
            source: self.source.clone(),
            target: self.target.clone(),
            components,
            valid_order: self.valid_order,
        }
    }

    /// Partial sum of the series at a point, through degree `up_to`,
    /// which must not exceed the trusted order.
    pub fn eval(&self, x: &Vector, up_to: i64) -> Result<Vector> {
        if x.space != self.source {
            return Err(space_mismatch("jet eval", &self.source, &x.space));
        }
        if up_to > self.valid_order {
            return Err(Error::OrderExceeded {
                requested: up_to,
                valid: self.valid_order,
            });
        }
        let mut acc = Vector::zero(&self.target);
        for m in 0..=up_to.max(-1) {
            let v = self.components[m as usize].eval(&x.coords)?;
            for (a, c) in acc.coords.iter_mut().zip(&v) {
                *a += c;
            }
        }
        Ok(acc)
    }

    /// First coefficient difference through degree `up_to` (which must be
    /// trusted on both sides), or None when the jets agree.
    pub fn first_difference(&self, other: &Self, up_to: i64) -> Result<Option<String>> {
        if self.source != other.source {
            return Err(space_mismatch("jet compare", &self.source, &other.source));
        }
        if self.target != other.target {
            return Err(space_mismatch("jet compare", &self.target, &other.target));
        }
        if up_to > self.valid_order || up_to > other.valid_order {
            return Err(Error::OrderExceeded {
                requested: up_to,
                valid: self.valid_order.min(other.valid_order),
            });
        }
        for m in 0..=up_to.max(-1) {
            let a = &self.components[m as usize];
            let b = &other.components[m as usize];
            if a == b {
                continue;
            }
            let mut monos: Vec<&MultiIndex> = a.terms().map(|(mono, _)| mono).collect();
            monos.extend(b.terms().map(|(mono, _)| mono));
            monos.sort();
            monos.dedup();
            for mono in monos {
                for k in 0..self.target.dim() {
                    let ca = a.coefficient_at(mono, k);
                    let cb = b.coefficient_at(mono, k);
                    if ca != cb {
                        return Ok(Some(format!(
                            "degree {m}, monomial {}, coordinate {}: {} vs {}",
                            mono.label(&self.source.basis),
                            self.target.basis[k],
                            format_rational(&ca),
                            format_rational(&cb)
                        )));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn equal_up_to(&self, other: &Self, up_to: i64) -> Result<bool> {
        Ok(self.first_difference(other, up_to)?.is_none())
    }

    /// Postcomposition with a linear map, applied to every coefficient.
    pub fn postcompose_linear(&self, s: &LinearMap) -> Result<Self> {
        let components = self
            .components
            .iter()
            .map(|p| p.map_linear(s))
            .collect::<Result<Vec<_>>>()?;
        Jet::from_components(components, self.valid_order)
    }

    /// Precomposition with a linear map: substitute the degree-1 jet of `p`.
    pub fn precompose_linear(&self, p: &LinearMap) -> Result<Self> {
        let pj = Jet::from_linear(p, self.order().max(1));
        substitute(self, &pj)
    }

    /// Deterministic listing, one line per trusted degree.
    pub fn pretty(&self) -> String {
        let mut out = format!(
            "jet ({}) -> ({}), order {}, valid {}\n",
            self.source.signature(),
            self.target.signature(),
            self.order(),
            self.valid_order
        );
        for m in 0..=self.valid_order.max(-1) {
            out.push_str(&format!(
                "deg {m}: {}\n",
                self.components[m as usize].terms_string()
            ));
        }
        out
    }
}

// Truncated multivariate scalar series: one monomial table per degree.
type Table = Vec<BTreeMap<MultiIndex, Rational>>;

fn table_one(dim: usize, cap: usize) -> Table {
    let mut t: Table = vec![BTreeMap::new(); cap + 1];
    t[0].insert(MultiIndex::zero(dim), Rational::one());
    t
}

fn series_mul(a: &Table, b: &Table, cap: usize) -> Table {
    let mut out: Table = vec![BTreeMap::new(); cap + 1];
    for (da, ta) in a.iter().enumerate() {
        if ta.is_empty() {
            continue;
        }
        for db in 0..=cap.saturating_sub(da) {
            let tb = &b[db];
            if tb.is_empty() {
                continue;
            }
            let prod = table_mul(ta, tb);
            let slot = &mut out[da + db];
            for (mono, c) in prod {
                let entry = slot.entry(mono.clone()).or_insert_with(Rational::zero);
                *entry += c;
                if entry.is_zero() {
                    slot.remove(&mono);
                }
            }
        }
    }
    out
}

/// Composition g(f) of jets. The substituted family is summable when g is a
/// polynomial or f has zero constant term; anything else is rejected. The
/// result is exact through every stored degree when both jets are
/// polynomials, and through min of the trusted orders otherwise.
pub fn substitute(g: &Jet, f: &Jet) -> Result<Jet> {
    if f.target != g.source {
        return Err(space_mismatch("substitute", &g.source, &f.target));
    }
    let g_poly = g.is_polynomial();
    let f0_zero = f.constant_term_zero();
    if !g_poly && !f0_zero {
        return Err(Error::NotSummable);
    }
    let (order_out, valid_out) = if g_poly && f.is_polynomial() {
        let bound = g.max_support_degree() as i64 * f.max_support_degree() as i64;
        (bound.max(0), bound.max(0))
    } else if g_poly {
        (f.valid_order.max(0), f.valid_order)
    } else {
        let v = g.valid_order.min(f.valid_order);
        (v.max(0), v)
    };
    let cap = order_out as usize;
    let dim_x = f.source.dim();
    let dim_e = g.source.dim();

    // Coordinate scalar series of the inner jet.
    let mut inner: Vec<Table> = vec![vec![BTreeMap::new(); cap + 1]; dim_e];
    for n in 0..=f.order().min(order_out) {
        for (mono, v) in f.components[n as usize].terms() {
            for (j, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    inner[j][n as usize].insert(mono.clone(), c.clone());
                }
            }
        }
    }
    // Monomial powers, computed on demand.
    let mut powers: Vec<Vec<Table>> = (0..dim_e).map(|_| vec![table_one(dim_x, cap)]).collect();

    let g_limit = if g_poly {
        g.max_support_degree() as i64
    } else {
        g.valid_order.min(order_out)
    };
    let mut result = Jet::zero(&f.source, &g.target, order_out);
    result.valid_order = valid_out;
    for m in 0..=g_limit.min(g.order()) {
        for (mono, v) in g.components[m as usize].terms() {
            let mut term: Table = table_one(dim_x, cap);
            for j in 0..dim_e {
                let e = mono.0[j] as usize;
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e {
                    let next = series_mul(powers[j].last().unwrap(), &inner[j], cap);
                    powers[j].push(next);
                }
                term = series_mul(&term, &powers[j][e], cap);
            }
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (s, slot) in term.iter().enumerate() {
                    for (out_mono, w) in slot {
                        result.components[s].add_term(out_mono.clone(), k, &(w * c))?;
                    }
                }
            }
        }
    }
    Ok(result)
}

/// A jet over a product space, curried into a table of inner jets indexed by
/// monomials of the outer factor: the coefficient of y^beta is a jet in x.
/// Validity is triangular: the bidegree (m, |beta|) is trusted when
/// m + |beta| <= valid_total.
#[derive(Debug, Clone, PartialEq)]
pub struct CurriedJet {
    pub prod: ProductSpace,
    pub target: Space,
    pub inner_order: i64,
    terms: BTreeMap<MultiIndex, Jet>,
    pub valid_total: i64,
}

impl CurriedJet {
    pub fn new(
        prod: ProductSpace,
        target: Space,
        inner_order: i64,
        terms: BTreeMap<MultiIndex, Jet>,
        valid_total: i64,
    ) -> Result<Self> {
        for (beta, jet) in &terms {
            if beta.len() != prod.right.dim() {
                return Err(Error::DimensionMismatch {
                    context: "curried outer monomial".into(),
                    expected: prod.right.dim(),
                    found: beta.len(),
                });
            }
            if jet.source != prod.left {
                return Err(space_mismatch("curried inner source", &prod.left, &jet.source));
            }
            if jet.target != target {
                return Err(space_mismatch("curried inner target", &target, &jet.target));
            }
        }
        let mut c = CurriedJet {
            prod,
            target,
            inner_order,
            terms,
            valid_total,
        };
        c.terms.retain(|_, jet| !jet.components().iter().all(HomogeneousPoly::is_zero));
        Ok(c)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Jet)> {
        self.terms.iter()
    }

    pub fn term(&self, beta: &MultiIndex) -> Option<&Jet> {
        self.terms.get(beta)
    }

    /// Accumulate `c * jet` at the outer monomial beta.
    pub fn add_scaled(&mut self, beta: &MultiIndex, jet: &Jet, c: &Rational) -> Result<()> {
        if jet.source != self.prod.left || jet.target != self.target {
            return Err(space_mismatch("curried accumulate", &self.prod.left, &jet.source));
        }
        let scaled = jet.scale(c).truncated(self.inner_order);
        match self.terms.get_mut(beta) {
            Some(existing) => {
                let sum = existing.add(&scaled)?;
                if sum.components().iter().all(HomogeneousPoly::is_zero) {
                    self.terms.remove(beta);
                } else {
                    self.terms.insert(beta.clone(), sum);
                }
            }
            None => {
                if !scaled.components().iter().all(HomogeneousPoly::is_zero) {
                    self.terms.insert(beta.clone(), scaled);
                }
            }
        }
        Ok(())
    }

    pub fn curry(f: &Jet, prod: &ProductSpace) -> Result<CurriedJet> {
        if f.source != prod.total {
            return Err(space_mismatch("curry", &prod.total, &f.source));
        }
        let inner_order = f.order();
        let mut terms: BTreeMap<MultiIndex, Jet> = BTreeMap::new();
        for comp in f.components() {
            for (gamma, v) in comp.terms() {
                let (alpha, beta) = prod.split(gamma);
                let jet = terms
                    .entry(beta)
                    .or_insert_with(|| Jet::zero(&prod.left, &f.target, inner_order));
                jet.component_mut(alpha.degree() as usize).add_vec(alpha, v)?;
            }
        }
        let valid_total = f.valid_order;
        for (beta, jet) in terms.iter_mut() {
            jet.valid_order = (valid_total - beta.degree() as i64).clamp(-1, inner_order);
        }
        CurriedJet::new(prod.clone(), f.target.clone(), inner_order, terms, valid_total)
    }

    pub fn uncurry(&self) -> Result<Jet> {
        let mut order_out = self.valid_total.max(0);
        for (beta, jet) in &self.terms {
            for comp in jet.components() {
                if !comp.is_zero() {
                    order_out = order_out.max(beta.degree() as i64 + comp.degree as i64);
                }
            }
        }
        let mut out = Jet::zero(&self.prod.total, &self.target, order_out);
        out.valid_order = self.valid_total;
        for (beta, jet) in &self.terms {
            for comp in jet.components() {
                for (alpha, v) in comp.terms() {
                    let gamma = self.prod.join(alpha, beta);
                    out.components[gamma.degree() as usize].add_vec(gamma, v)?;
                }
            }
        }
        Ok(out)
    }

    /// View a table of vector fields on the left factor as one vector field
    /// on the product, with zero components along the right factor.
    pub fn embed_left_fields(&self) -> Result<Jet> {
        if self.target != self.prod.left {
            return Err(space_mismatch(
                "embed fields",
                &self.prod.left,
                &self.target,
            ));
        }
        let mut order_out = self.valid_total.max(0);
        for (beta, jet) in &self.terms {
            for comp in jet.components() {
                if !comp.is_zero() {
                    order_out = order_out.max(beta.degree() as i64 + comp.degree as i64);
                }
            }
        }
        let mut out = Jet::zero(&self.prod.total, &self.prod.total, order_out);
        out.valid_order = self.valid_total;
        for (beta, jet) in &self.terms {
            for comp in jet.components() {
                for (alpha, v) in comp.terms() {
                    let gamma = self.prod.join(alpha, beta);
                    out.components[gamma.degree() as usize]
                        .add_vec(gamma, &self.prod.inject_left(v))?;
                }
            }
        }
        Ok(out)
    }
}

// Serialized form of a jet.
#[derive(Serialize, Deserialize)]
struct JetRepr {
    source: Vec<String>,
    target: Vec<String>,
    order: i64,
    valid_order: i64,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    deg: u32,
    mono: Vec<u32>,
    coord: usize,
    c: String,
}

impl Jet {
    fn to_repr(&self) -> JetRepr {
        let mut terms = Vec::new();
        for comp in &self.components {
            for (mono, v) in comp.terms() {
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        terms.push(TermRepr {
                            deg: comp.degree,
                            mono: mono.0.clone(),
                            coord: k,
                            c: format_rational(c),
                        });
                    }
                }
            }
        }
        JetRepr {
            source: self.source.basis.clone(),
            target: self.target.basis.clone(),
            order: self.order(),
            valid_order: self.valid_order,
            terms,
        }
    }

    fn from_repr(repr: JetRepr) -> Result<Self> {
        let source = SpaceDesc::new(repr.source.join(","), repr.source)?;
        let target = SpaceDesc::new(repr.target.join(","), repr.target)?;
        if repr.order < 0 {
            return Err(Error::invalid("jet", "order must be nonnegative"));
        }
        if repr.valid_order < -1 || repr.valid_order > repr.order {
            return Err(Error::invalid(
                "jet",
                format!(
                    "valid_order {} outside -1..={}",
                    repr.valid_order, repr.order
                ),
            ));
        }
        let mut jet = Jet::zero(&source, &target, repr.order);
        jet.valid_order = repr.valid_order;
        for t in repr.terms {
            if t.deg as i64 > repr.order {
                return Err(Error::invalid(
                    "jet term",
                    format!("degree {} above order {}", t.deg, repr.order),
                ));
            }
            let c = parse_rational(&t.c)?;
            jet.components[t.deg as usize].add_term(MultiIndex(t.mono), t.coord, &c)?;
        }
        Ok(jet)
    }
}

impl Jet {
    /// Parse from JSON text with the typed error kept.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let repr: JetRepr = serde_json::from_str(text)
            .map_err(|e| Error::invalid("jet JSON", e.to_string()))?;
        Jet::from_repr(repr)
    }
}

impl Serialize for Jet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Jet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = JetRepr::deserialize(deserializer)?;
        Jet::from_repr(repr).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq};
    use crate::space::SpaceDesc;

    fn line() -> Space {
        SpaceDesc::numbered("X", "x", 1)
    }

    fn exp_jet(order: i64) -> Jet {
        let x = line();
        let mut jet = Jet::zero(&x, &x, order);
        for m in 0..=order as u32 {
            jet.component_mut(m as usize)
                .add_term(MultiIndex(vec![m]), 0, &crate::scalar::inv_factorial(m))
                .unwrap();
        }
        jet
    }

    #[test]
    fn eval_exp_partial_sum() {
        let jet = exp_jet(6);
        let one = Vector::ints(&line(), &[1]);
        let v = jet.eval(&one, 6).unwrap();
        assert_eq!(v.coords[0], ratq(1957, 720));
        assert!(matches!(
            jet.eval(&one, 7),
            Err(Error::OrderExceeded { requested: 7, valid: 6 })
        ));
    }

    #[test]
    fn substitute_polynomial_outer() {
        // g(y) = y^2, f(x) = x + x^2: g(f) = x^2 + 2x^3 + x^4.
        let x = line();
        let g = Jet::polynomial(&x, &x, 2, &[(2, &[2], 0, rat(1))]).unwrap();
        let f = Jet::polynomial(&x, &x, 4, &[(1, &[1], 0, rat(1)), (2, &[2], 0, rat(1))]).unwrap();
        let h = substitute(&g, &f).unwrap();
        assert_eq!(h.valid_order, 4);
        let want = Jet::polynomial(
            &x,
            &x,
            4,
            &[
                (2, &[2], 0, rat(1)),
                (3, &[3], 0, rat(2)),
                (4, &[4], 0, rat(1)),
            ],
        )
        .unwrap();
        assert!(h.equal_up_to(&want, 4).unwrap());
    }

    #[test]
    fn substitute_series_into_series_needs_zero_constant() {
        let x = line();
        // exp jet truncated as a proper series: order 6, trusted through 5.
        let g = exp_jet(6).with_valid(5);
        let ok = Jet::polynomial(&x, &x, 6, &[(1, &[1], 0, rat(1))]).unwrap();
        let composed = substitute(&g, &ok).unwrap();
        assert_eq!(composed.valid_order, 5);
        assert_eq!(
            composed.component(3).unwrap().coefficient_at(&MultiIndex(vec![3]), 0),
            ratq(1, 6)
        );
        let bad = Jet::polynomial(&x, &x, 6, &[(0, &[0], 0, rat(1))]).unwrap();
        assert!(matches!(substitute(&g, &bad), Err(Error::NotSummable)));
    }

    #[test]
    fn substitute_into_exp_series() {
        // Declared as an exact polynomial (partial sum), exp(x) at order 4
        // composed with the identity returns its own coefficients.
        let g = exp_jet(4);
        let f = Jet::identity(&line(), 4);
        let h = substitute(&g, &f).unwrap();
        for m in 0..=4u32 {
            assert_eq!(
                h.component(m as i64).unwrap().coefficient_at(&MultiIndex(vec![m]), 0),
                crate::scalar::inv_factorial(m)
            );
        }
    }

    #[test]
    fn curry_round_trip_and_pointwise_values() {
        let prod = ProductSpace::new(
            SpaceDesc::numbered("X", "x", 2),
            SpaceDesc::numbered("Y", "y", 1),
        )
        .unwrap();
        let f_space = SpaceDesc::new("F", vec!["e".into()]).unwrap();
        let f = Jet::polynomial(
            &prod.total,
            &f_space,
            4,
            &[
                (3, &[1, 0, 2], 0, rat(2)),
                (2, &[0, 2, 0], 0, ratq(1, 3)),
                (1, &[0, 0, 1], 0, rat(-1)),
            ],
        )
        .unwrap();
        let curried = CurriedJet::curry(&f, &prod).unwrap();
        let back = curried.uncurry().unwrap();
        assert_eq!(back, f);

        // f-bar(y)(x) = f(x, y) on sample points.
        let x_pt = [rat(2), rat(-1)];
        let y_pt = [rat(3)];
        let joined = Vector::new(
            prod.total.clone(),
            x_pt.iter().chain(y_pt.iter()).cloned().collect(),
        )
        .unwrap();
        let direct = f.eval(&joined, 4).unwrap();
        let mut via_curry = vec![Rational::zero()];
        for (beta, jet) in curried.terms() {
            let scale = crate::space::monomial_eval(beta, &y_pt).unwrap();
            let inner = jet
                .eval(&Vector::new(prod.left.clone(), x_pt.to_vec()).unwrap(), jet.valid_order)
                .unwrap();
            via_curry[0] += &scale * &inner.coords[0];
        }
        assert_eq!(direct.coords, via_curry);
    }

    #[test]
    fn jet_json_round_trip() {
        let jet = exp_jet(3).with_valid(2);
        let text = serde_json::to_string(&jet).unwrap();
        let back: Jet = serde_json::from_str(&text).unwrap();
        assert_eq!(jet, back);
        let bad = r#"{"source":["x0"],"target":["x0"],"order":2,"valid_order":3,"terms":[]}"#;
        assert!(serde_json::from_str::<Jet>(bad).is_err());
    }

    #[test]
    fn pretty_lists_trusted_degrees() {
        let y = SpaceDesc::numbered("Y", "y", 1);
        let f = SpaceDesc::new("F", vec!["e1".into()]).unwrap();
        let jet = Jet::polynomial(&y, &f, 2, &[(2, &[2], 0, ratq(1, 12))]).unwrap();
        let text = jet.pretty();
        assert!(text.contains("deg 2: (1/12)·y0^2 ⊗ e1"));
        assert!(text.contains("deg 0: 0"));
    }
}
