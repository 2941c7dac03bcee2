//! Homogeneous polynomial maps between based spaces, stored as sparse
//! monomial tables with exact rational coefficient vectors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::LinearMap;
use crate::scalar::{format_rational, Rational};
use crate::space::{monomial_eval, space_mismatch, MultiIndex, Space};

/// A homogeneous polynomial map of fixed degree. Only monomials with a
/// nonzero coefficient vector are stored; the map iterates in the
/// deterministic monomial order.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPoly {
    pub source: Space,
    pub target: Space,
    pub degree: u32,
    coeffs: BTreeMap<MultiIndex, Vec<Rational>>,
}

impl HomogeneousPoly {
    pub fn zero(source: &Space, target: &Space, degree: u32) -> Self {
        HomogeneousPoly {
            source: source.clone(),
            target: target.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Build from `(exponents, target coordinate, coefficient)` triples.
    pub fn from_terms(
        source: &Space,
        target: &Space,
        degree: u32,
        terms: &[(&[u32], usize, Rational)],
    ) -> Result<Self> {
        let mut p = Self::zero(source, target, degree);
        for (mono, coord, c) in terms {
            p.add_term(MultiIndex(mono.to_vec()), *coord, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Vec<Rational>)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, mono: &MultiIndex) -> Option<&Vec<Rational>> {
        self.coeffs.get(mono)
    }

    pub fn coefficient_at(&self, mono: &MultiIndex, coord: usize) -> Rational {
        self.coeffs
            .get(mono)
            .map_or_else(Rational::zero, |v| v[coord].clone())
    }

    pub fn add_term(&mut self, mono: MultiIndex, coord: usize, c: &Rational) -> Result<()> {
        if mono.len() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                context: "monomial exponents".into(),
                expected: self.source.dim(),
                found: mono.len(),
            });
        }
        if mono.degree() != self.degree {
            return Err(Error::invalid(
                "homogeneous polynomial",
                format!("monomial {mono} has degree {}, table degree is {}", mono.degree(), self.degree),
            ));
        }
        if coord >= self.target.dim() {
            return Err(Error::DimensionMismatch {
                context: "target coordinate".into(),
                expected: self.target.dim(),
                found: coord,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let tdim = self.target.dim();
        let entry = self
            .coeffs
            .entry(mono.clone())
            .or_insert_with(|| vec![Rational::zero(); tdim]);
        entry[coord] += c;
        if entry.iter().all(Zero::is_zero) {
            self.coeffs.remove(&mono);
        }
        Ok(())
    }

    pub fn add_vec(&mut self, mono: MultiIndex, v: &[Rational]) -> Result<()> {
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                self.add_term(mono.clone(), k, c)?;
            }
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        if self.source != other.source {
            return Err(space_mismatch("poly add", &self.source, &other.source));
        }
        if self.target != other.target {
            return Err(space_mismatch("poly add", &self.target, &other.target));
        }
        if self.degree != other.degree {
            return Err(Error::invalid(
                "poly add",
                format!("degree {} vs {}", self.degree, other.degree),
            ));
        }
        for (mono, v) in &other.coeffs {
            self.add_vec(mono.clone(), v)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            for c in v.iter_mut() {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.source, &self.target, self.degree);
        }
        let mut out = self.clone();
        for v in out.coeffs.values_mut() {
            for x in v.iter_mut() {
                *x *= c;
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                context: "poly eval".into(),
                expected: self.source.dim(),
                found: x.len(),
            });
        }
        let mut acc = vec![Rational::zero(); self.target.dim()];
        for (mono, v) in &self.coeffs {
            let m = monomial_eval(mono, x)?;
            if m.is_zero() {
                continue;
            }
            for (a, c) in acc.iter_mut().zip(v) {
                if !c.is_zero() {
                    *a += &m * c;
                }
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative in the i-th source variable.
    pub fn partial(&self, i: usize) -> Self {
        let degree = self.degree.saturating_sub(1);
        let mut out = Self::zero(&self.source, &self.target, degree);
        if self.degree == 0 {
            return out;
        }
        for (mono, v) in &self.coeffs {
            let e = mono.0[i];
            if e == 0 {
                continue;
            }
            let mut lower = mono.clone();
            lower.0[i] -= 1;
            let factor = Rational::from_integer(e.into());
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(lower.clone(), k, &(c * &factor))
                        .expect("derived term is well formed");
                }
            }
        }
        out
    }

    /// Apply a linear map to every coefficient vector (postcomposition).
    pub fn map_linear(&self, m: &LinearMap) -> Result<Self> {
        if m.source != self.target {
            return Err(space_mismatch("poly postcompose", &m.source, &self.target));
        }
        let mut out = Self::zero(&self.source, &m.target, self.degree);
        for (mono, v) in &self.coeffs {
            out.add_vec(mono.clone(), &m.apply_coords(v))?;
        }
        Ok(out)
    }

    /// One symbolic raising step: sum over source variables i of
    /// (multiply by the variable i) after (apply mats[i] to the coefficient).
    /// With mats[i] = ad(e_i) this sends P(y) to [y, P(y)].
    pub fn raised_by(&self, mats: &[LinearMap]) -> Result<Self> {
        if mats.len() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                context: "raising family".into(),
                expected: self.source.dim(),
                found: mats.len(),
            });
        }
        let mut out = Self::zero(&self.source, &self.target, self.degree + 1);
        for (i, m) in mats.iter().enumerate() {
            if m.source != self.target || m.target != self.target {
                return Err(space_mismatch("raising step", &self.target, &m.source));
            }
            for (mono, v) in &self.coeffs {
                let image = m.apply_coords(v);
                let mut up = mono.clone();
                up.0[i] += 1;
                out.add_vec(up, &image)?;
            }
        }
        Ok(out)
    }

    /// Scalar table of one target coordinate.
    pub fn coord_table(&self, k: usize) -> BTreeMap<MultiIndex, Rational> {
        let mut out = BTreeMap::new();
        for (mono, v) in &self.coeffs {
            if !v[k].is_zero() {
                out.insert(mono.clone(), v[k].clone());
            }
        }
        out
    }

    /// Pretty terms like `(1/12)·y0^2 ⊗ e1 + (2)·y0·y1 ⊗ e2`, or `0`.
    pub fn terms_string(&self) -> String {
        let mut parts = Vec::new();
        for (mono, v) in &self.coeffs {
            let mlabel = mono.label(&self.source.basis);
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    parts.push(format!(
                        "({})·{} ⊗ {}",
                        format_rational(c),
                        mlabel,
                        self.target.basis[k]
                    ));
                }
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Product of two scalar monomial tables (used by series multiplication).
pub(crate) fn table_mul(
    a: &BTreeMap<MultiIndex, Rational>,
    b: &BTreeMap<MultiIndex, Rational>,
) -> BTreeMap<MultiIndex, Rational> {
    let mut out = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.add(mb);
            let c = ca * cb;
            let entry = out.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq};
    use crate::space::SpaceDesc;

    fn setup() -> (Space, Space) {
        (
            SpaceDesc::numbered("X", "x", 2),
            SpaceDesc::numbered("F", "e", 2),
        )
    }

    #[test]
    fn terms_accumulate_and_prune() {
        let (x, f) = setup();
        let mut p = HomogeneousPoly::zero(&x, &f, 2);
        p.add_term(MultiIndex(vec![1, 1]), 0, &rat(2)).unwrap();
        p.add_term(MultiIndex(vec![1, 1]), 0, &rat(-2)).unwrap();
        assert!(p.is_zero());
        assert!(p.add_term(MultiIndex(vec![1, 0]), 0, &rat(1)).is_err());
    }

    #[test]
    fn eval_homogeneity() {
        let (x, f) = setup();
        let p = HomogeneousPoly::from_terms(
            &x,
            &f,
            3,
            &[(&[2, 1], 0, rat(1)), (&[0, 3], 1, ratq(1, 2))],
        )
        .unwrap();
        let pt = [rat(2), rat(3)];
        let scaled: Vec<Rational> = pt.iter().map(|c| c * rat(5)).collect();
        let v = p.eval(&pt).unwrap();
        let vs = p.eval(&scaled).unwrap();
        let factor = rat(125);
        for (a, b) in v.iter().zip(&vs) {
            assert_eq!(&(a * &factor), b);
        }
    }

    #[test]
    fn partial_derivative_drops_degree() {
        let (x, f) = setup();
        let p =
            HomogeneousPoly::from_terms(&x, &f, 2, &[(&[2, 0], 0, rat(3))]).unwrap();
        let d = p.partial(0);
        assert_eq!(d.degree, 1);
        assert_eq!(d.coefficient_at(&MultiIndex(vec![1, 0]), 0), rat(6));
        assert!(p.partial(1).is_zero());
    }

    #[test]
    fn pretty_terms_format() {
        let y = SpaceDesc::numbered("Y", "y", 1);
        let f = SpaceDesc::new("F", vec!["e1".into()]).unwrap();
        let p =
            HomogeneousPoly::from_terms(&y, &f, 2, &[(&[2], 0, ratq(1, 12))]).unwrap();
        assert_eq!(p.terms_string(), "(1/12)·y0^2 ⊗ e1");
    }
}
