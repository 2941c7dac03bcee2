//! Based vector spaces over Q, product splits, multi-indices, and
//! coordinate vectors.
//!
//! A space is identified by its ordered basis labels; the name is only for
//! diagnostics. Monomials are exponent vectors over a space's basis and are
//! ordered degree first, then reverse-lexicographically inside a degree,
//! which is also the enumeration and serialization order.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};

pub type Space = Arc<SpaceDesc>;

#[derive(Debug, Clone, Eq)]
pub struct SpaceDesc {
    pub name: String,
    pub basis: Vec<String>,
}

impl PartialEq for SpaceDesc {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl SpaceDesc {
    pub fn new(name: impl Into<String>, basis: Vec<String>) -> Result<Space> {
        let name = name.into();
        if basis.is_empty() {
            return Err(Error::invalid("space", format!("{name}: empty basis")));
        }
        for (i, label) in basis.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::invalid("space", format!("{name}: empty basis label")));
            }
            if basis[..i].contains(label) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(Arc::new(SpaceDesc { name, basis }))
    }

    /// Space with labels `prefix0..prefix(dim-1)`.
    pub fn numbered(name: &str, prefix: &str, dim: usize) -> Space {
        SpaceDesc::new(name, (0..dim).map(|i| format!("{prefix}{i}")).collect())
            .expect("generated labels are distinct")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|l| l == label)
    }

    /// Label list for error messages.
    pub fn signature(&self) -> String {
        self.basis.join(", ")
    }
}

pub fn space_mismatch(context: &str, expected: &SpaceDesc, found: &SpaceDesc) -> Error {
    Error::SpaceMismatch {
        context: context.to_string(),
        expected: expected.signature(),
        found: found.signature(),
    }
}

/// A product X x Y realized as the concatenation of the two bases, with the
/// split point recorded so jets over the product can be curried back.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpace {
    pub left: Space,
    pub right: Space,
    pub total: Space,
}

impl ProductSpace {
    pub fn new(left: Space, right: Space) -> Result<Self> {
        let mut basis = left.basis.clone();
        basis.extend(right.basis.iter().cloned());
        let total = SpaceDesc::new(format!("{}x{}", left.name, right.name), basis)?;
        Ok(ProductSpace { left, right, total })
    }

    pub fn split_point(&self) -> usize {
        self.left.dim()
    }

    pub fn split(&self, gamma: &MultiIndex) -> (MultiIndex, MultiIndex) {
        let k = self.split_point();
        (
            MultiIndex(gamma.0[..k].to_vec()),
            MultiIndex(gamma.0[k..].to_vec()),
        )
    }

    pub fn join(&self, alpha: &MultiIndex, beta: &MultiIndex) -> MultiIndex {
        let mut v = alpha.0.clone();
        v.extend_from_slice(&beta.0);
        MultiIndex(v)
    }

    pub fn inject_left(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        out.resize(self.total.dim(), Rational::zero());
        out
    }

    pub fn inject_right(&self, w: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.split_point()];
        out.extend_from_slice(w);
        out
    }
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Monomial text like `y0^2·y1`, or `1` for the empty monomial.
    pub fn label(&self, basis: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(basis[i].clone()),
                _ => parts.push(format!("{}^{}", basis[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0) {
            match b.cmp(a) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Number of exponent vectors of the given dimension and total degree.
pub fn multiindex_count(dim: usize, degree: u32) -> usize {
    if dim == 0 {
        return usize::from(degree == 0);
    }
    num_integer::binomial(
        num_bigint::BigUint::from(degree as u64 + dim as u64 - 1),
        num_bigint::BigUint::from(dim as u64 - 1),
    )
    .try_into()
    .expect("count fits usize")
}

/// All exponent vectors of the given total degree, reverse-lexicographic:
/// dim 2, degree 2 enumerates (2,0), (1,1), (0,2).
pub fn multiindex_enumerate(dim: usize, degree: u32) -> Vec<MultiIndex> {
    fn rec(pos: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if pos + 1 == cur.len() {
            cur[pos] = remaining;
            out.push(MultiIndex(cur.clone()));
            return;
        }
        for e in (0..=remaining).rev() {
            cur[pos] = e;
            rec(pos + 1, remaining - e, cur, out);
        }
    }
    if dim == 0 {
        return if degree == 0 {
            vec![MultiIndex(vec![])]
        } else {
            vec![]
        };
    }
    let mut out = Vec::with_capacity(multiindex_count(dim, degree));
    let mut cur = vec![0u32; dim];
    rec(0, degree, &mut cur, &mut out);
    out
}

/// Evaluate the monomial x^alpha at a rational point.
pub fn monomial_eval(alpha: &MultiIndex, x: &[Rational]) -> Result<Rational> {
    if alpha.len() != x.len() {
        return Err(Error::DimensionMismatch {
            context: "monomial_eval".into(),
            expected: alpha.len(),
            found: x.len(),
        });
    }
    let mut acc = Rational::from_integer(1.into());
    for (e, xi) in alpha.0.iter().zip(x) {
        for _ in 0..*e {
            acc *= xi;
        }
    }
    Ok(acc)
}

/// Coordinate vector in a based space.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    pub space: Space,
    pub coords: Vec<Rational>,
}

impl Vector {
    pub fn new(space: Space, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                context: format!("vector in ({})", space.signature()),
                expected: space.dim(),
                found: coords.len(),
            });
        }
        Ok(Vector { space, coords })
    }

    pub fn zero(space: &Space) -> Self {
        Vector {
            space: space.clone(),
            coords: vec![Rational::zero(); space.dim()],
        }
    }

    pub fn basis(space: &Space, i: usize) -> Self {
        let mut v = Self::zero(space);
        v.coords[i] = Rational::from_integer(1.into());
        v
    }

    /// Convenience constructor from integer coordinates.
    pub fn ints(space: &Space, coords: &[i64]) -> Self {
        assert_eq!(coords.len(), space.dim());
        Vector {
            space: space.clone(),
            coords: coords.iter().map(|&n| crate::scalar::rat(n)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(space_mismatch("vector add", &self.space, &other.space));
        }
        Ok(Vector {
            space: self.space.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Vector {
            space: self.space.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Vector {
            space: self.space.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", coords_string(&self.coords))
    }
}

/// Shared coordinate formatting: `(1, 1/2, 0)`.
pub fn coords_string(coords: &[Rational]) -> String {
    let inner: Vec<String> = coords.iter().map(format_rational).collect();
    format!("({})", inner.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn enumeration_matches_reverse_lex() {
        let got = multiindex_enumerate(2, 2);
        let want: Vec<MultiIndex> = [[2, 0], [1, 1], [0, 2]]
            .iter()
            .map(|v| MultiIndex(v.to_vec()))
            .collect();
        assert_eq!(got, want);
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, got);
    }

    #[test]
    fn enumeration_count_and_distinctness() {
        for dim in 1..=4 {
            for degree in 0..=6 {
                let all = multiindex_enumerate(dim, degree);
                assert_eq!(all.len(), multiindex_count(dim, degree));
                let mut dedup = all.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
                assert!(all.iter().all(|m| m.degree() == degree));
            }
        }
    }

    #[test]
    fn monomial_eval_powers() {
        let alpha = MultiIndex(vec![2, 1]);
        let x = [rat(3), rat(-2)];
        assert_eq!(monomial_eval(&alpha, &x).unwrap(), rat(-18));
        assert!(monomial_eval(&alpha, &[rat(1)]).is_err());
    }

    #[test]
    fn spaces_compare_by_labels() {
        let a = SpaceDesc::new("X", vec!["x0".into(), "x1".into()]).unwrap();
        let b = SpaceDesc::new("other", vec!["x0".into(), "x1".into()]).unwrap();
        let c = SpaceDesc::new("X", vec!["x0".into(), "y1".into()]).unwrap();
        assert_eq!(*a, *b);
        assert_ne!(*a, *c);
        assert!(SpaceDesc::new("bad", vec!["u".into(), "u".into()]).is_err());
    }

    #[test]
    fn product_split_round_trip() {
        let x = SpaceDesc::numbered("X", "x", 2);
        let y = SpaceDesc::numbered("Y", "y", 3);
        let prod = ProductSpace::new(x, y).unwrap();
        let gamma = MultiIndex(vec![1, 0, 2, 0, 3]);
        let (a, b) = prod.split(&gamma);
        assert_eq!(prod.join(&a, &b), gamma);
        assert_eq!(a, MultiIndex(vec![1, 0]));
        assert_eq!(b, MultiIndex(vec![2, 0, 3]));
        let clash = ProductSpace::new(
            SpaceDesc::numbered("X", "u", 2),
            SpaceDesc::numbered("Y", "u", 1),
        );
        assert!(clash.is_err());
    }

    #[test]
    fn multiindex_label_text() {
        let basis: Vec<String> = vec!["y0".into(), "y1".into()];
        assert_eq!(MultiIndex(vec![2, 0]).label(&basis), "y0^2");
        assert_eq!(MultiIndex(vec![1, 1]).label(&basis), "y0·y1");
        assert_eq!(MultiIndex(vec![0, 0]).label(&basis), "1");
    }
}
