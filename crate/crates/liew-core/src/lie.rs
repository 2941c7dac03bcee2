//! Finite-dimensional Lie algebras over Q given by structure-constant
//! tables, validated on construction.
//!
//! `table[i][j]` holds the coordinates of the bracket of basis vectors i
//! and j. Construction checks antisymmetry and the Jacobi identity over
//! every basis triple, so a held `LieAlgebra` is always an actual Lie
//! algebra. The JSON form lists brackets sparsely; a pair given only as
//! (i, j) with i < j is mirrored automatically, while explicit mirror or
//! diagonal entries are kept verbatim so defective tables can be expressed
//! (and rejected).

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{defect_string, rank, LinearMap};
use crate::poly::HomogeneousPoly;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::space::{space_mismatch, Space, SpaceDesc, Vector};

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    pub space: Space,
    table: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    /// Build from a full structure-constant table and validate it.
    pub fn from_table(space: Space, table: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let dim = space.dim();
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch {
                context: "structure table".into(),
                expected: dim,
                found: table.len(),
            });
        }
        for row in &table {
            for cell in row {
                if cell.len() != dim {
                    return Err(Error::DimensionMismatch {
                        context: "structure table entry".into(),
                        expected: dim,
                        found: cell.len(),
                    });
                }
            }
        }
        let alg = LieAlgebra { space, table };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in i..dim {
                let defect: Vec<Rational> = (0..dim)
                    .map(|k| &self.table[i][j][k] + &self.table[j][i][k])
                    .collect();
                if defect.iter().any(|c| !c.is_zero()) {
                    return Err(Error::Antisymmetry {
                        i,
                        j,
                        defect: defect_string(&defect),
                    });
                }
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let mut defect = self.bracket_coords(&self.table[i][j], &unit(dim, k));
                    add_into(&mut defect, &self.bracket_coords(&self.table[j][k], &unit(dim, i)));
                    add_into(&mut defect, &self.bracket_coords(&self.table[k][i], &unit(dim, j)));
                    if defect.iter().any(|c| !c.is_zero()) {
                        return Err(Error::Jacobi {
                            i,
                            j,
                            k,
                            defect: defect_string(&defect),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coordinates of the bracket of basis vectors i and j.
    pub fn structure(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i][j]
    }

    pub fn bracket_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let dim = self.dim();
        let mut out = vec![Rational::zero(); dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let scale = ai * bj;
                for k in 0..dim {
                    let c = &self.table[i][j][k];
                    if !c.is_zero() {
                        out[k] += c * &scale;
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, a: &Vector, b: &Vector) -> Result<Vector> {
        if a.space != self.space {
            return Err(space_mismatch("bracket", &self.space, &a.space));
        }
        if b.space != self.space {
            return Err(space_mismatch("bracket", &self.space, &b.space));
        }
        Vector::new(self.space.clone(), self.bracket_coords(&a.coords, &b.coords))
    }

    /// Matrix of ad(y): column j holds the coordinates of [y, e_j].
    pub fn ad(&self, y: &Vector) -> Result<LinearMap> {
        if y.space != self.space {
            return Err(space_mismatch("ad", &self.space, &y.space));
        }
        let dim = self.dim();
        let mut matrix = vec![vec![Rational::zero(); dim]; dim];
        for j in 0..dim {
            let col = self.bracket_coords(&y.coords, &unit(dim, j));
            for (k, c) in col.into_iter().enumerate() {
                matrix[k][j] = c;
            }
        }
        LinearMap::new(self.space.clone(), self.space.clone(), matrix)
    }

    pub fn ad_basis(&self, i: usize) -> LinearMap {
        self.ad(&Vector::basis(&self.space, i))
            .expect("basis vector lives in the algebra")
    }

    /// The family ad(e_0), ..., ad(e_{dim-1}).
    pub fn ad_mats(&self) -> Vec<LinearMap> {
        (0..self.dim()).map(|i| self.ad_basis(i)).collect()
    }

    /// Pointwise bracket of algebra-valued polynomials:
    /// x maps to [f(x), g(x)]. Degrees add.
    pub fn poly_bracket(
        &self,
        f: &HomogeneousPoly,
        g: &HomogeneousPoly,
    ) -> Result<HomogeneousPoly> {
        if f.target != self.space {
            return Err(space_mismatch("poly bracket", &self.space, &f.target));
        }
        if g.target != self.space {
            return Err(space_mismatch("poly bracket", &self.space, &g.target));
        }
        if f.source != g.source {
            return Err(space_mismatch("poly bracket", &f.source, &g.source));
        }
        let mut out = HomogeneousPoly::zero(&f.source, &self.space, f.degree + g.degree);
        for (mono_a, va) in f.terms() {
            for (mono_b, vb) in g.terms() {
                let v = self.bracket_coords(va, vb);
                if v.iter().any(|c| !c.is_zero()) {
                    out.add_vec(mono_a.add(mono_b), &v)?;
                }
            }
        }
        Ok(out)
    }

    /// Nilpotency class via the lower central series: the smallest c with
    /// C_{c+1} = 0 where C_1 is the whole algebra and C_{k+1} = [L, C_k].
    /// None when the series has not reached zero after dim + 1 steps.
    pub fn nilpotency_bound(&self) -> Option<usize> {
        let dim = self.dim();
        let mut current: Vec<Vec<Rational>> = (0..dim).map(|i| unit(dim, i)).collect();
        for c in 1..=dim + 1 {
            let mut next = Vec::new();
            for i in 0..dim {
                for v in &current {
                    let w = self.bracket_coords(&unit(dim, i), v);
                    if w.iter().any(|x| !x.is_zero()) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                return Some(c);
            }
            if rank(&next) >= rank(&current) && c > dim {
                return None;
            }
            current = crate::linalg::span_basis(next);
        }
        None
    }
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::from_integer(1.into());
    v
}

fn add_into(acc: &mut [Rational], v: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// Serialized form: named basis plus a sparse bracket list.
#[derive(Serialize, Deserialize)]
struct LieRepr {
    name: String,
    basis: Vec<String>,
    brackets: Vec<BracketRepr>,
}

#[derive(Serialize, Deserialize)]
struct BracketRepr {
    i: BasisRef,
    j: BasisRef,
    v: BTreeMap<String, String>,
}

/// A basis vector named by label or by index.
#[derive(Serialize, Deserialize, Clone)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Label(String),
}

impl BasisRef {
    pub fn resolve(&self, space: &SpaceDesc) -> Result<usize> {
        match self {
            BasisRef::Index(i) => {
                if *i < space.dim() {
                    Ok(*i)
                } else {
                    Err(Error::invalid(
                        "basis reference",
                        format!("index {i} out of range for dimension {}", space.dim()),
                    ))
                }
            }
            BasisRef::Label(l) => space.label_index(l).ok_or_else(|| {
                Error::invalid("basis reference", format!("unknown label {l:?}"))
            }),
        }
    }
}

fn resolve_key(key: &str, space: &SpaceDesc) -> Result<usize> {
    if let Some(i) = space.label_index(key) {
        return Ok(i);
    }
    if let Ok(i) = key.parse::<usize>() {
        if i < space.dim() {
            return Ok(i);
        }
    }
    Err(Error::invalid(
        "bracket coordinate",
        format!("unknown label {key:?}"),
    ))
}

impl LieAlgebra {
    fn to_repr(&self) -> LieRepr {
        let dim = self.dim();
        let mut brackets = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let cell = &self.table[i][j];
                if cell.iter().all(Rational::is_zero) {
                    continue;
                }
                let mut v = BTreeMap::new();
                for (k, c) in cell.iter().enumerate() {
                    if !c.is_zero() {
                        v.insert(self.space.basis[k].clone(), format_rational(c));
                    }
                }
                brackets.push(BracketRepr {
                    i: BasisRef::Label(self.space.basis[i].clone()),
                    j: BasisRef::Label(self.space.basis[j].clone()),
                    v,
                });
            }
        }
        LieRepr {
            name: self.space.name.clone(),
            basis: self.space.basis.clone(),
            brackets,
        }
    }

    fn from_repr(repr: LieRepr) -> Result<Self> {
        let space = SpaceDesc::new(repr.name, repr.basis)?;
        let dim = space.dim();
        let mut table = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        let mut explicit = BTreeSet::new();
        for entry in &repr.brackets {
            let i = entry.i.resolve(&space)?;
            let j = entry.j.resolve(&space)?;
            if !explicit.insert((i, j)) {
                return Err(Error::invalid(
                    "bracket list",
                    format!("pair ({i}, {j}) given twice"),
                ));
            }
            for (key, text) in &entry.v {
                let k = resolve_key(key, &space)?;
                table[i][j][k] = parse_rational(text)?;
            }
        }
        for (i, j) in explicit.clone() {
            if i != j && !explicit.contains(&(j, i)) {
                for k in 0..dim {
                    table[j][i][k] = -&table[i][j][k];
                }
            }
        }
        LieAlgebra::from_table(space, table)
    }
}

impl LieAlgebra {
    /// Parse from JSON text with the typed error kept: a defective table
    /// reports the defect itself, not a serialization message.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let repr: LieRepr = serde_json::from_str(text)
            .map_err(|e| Error::invalid("lie algebra JSON", e.to_string()))?;
        LieAlgebra::from_repr(repr)
    }
}

impl Serialize for LieAlgebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = LieRepr::deserialize(deserializer)?;
        LieAlgebra::from_repr(repr).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rat;

    #[test]
    fn heisenberg_brackets_and_ad() {
        let h = fixtures::heisenberg_3();
        let x = Vector::basis(&h.space, 0);
        let y = Vector::basis(&h.space, 1);
        let z = Vector::basis(&h.space, 2);
        assert_eq!(h.bracket(&x, &y).unwrap(), z);
        assert_eq!(h.bracket(&y, &x).unwrap(), z.neg());
        assert!(h.bracket(&x, &z).unwrap().is_zero());
        let ad_x = h.ad(&x).unwrap();
        assert_eq!(ad_x.apply(&y).unwrap(), z);
        let ad_x2 = ad_x.compose(&ad_x).unwrap();
        assert!(ad_x2.is_zero());
    }

    #[test]
    fn json_round_trip_and_mirroring() {
        let sl2 = fixtures::sl2();
        let text = serde_json::to_string(&sl2).unwrap();
        let back: LieAlgebra = serde_json::from_str(&text).unwrap();
        assert_eq!(sl2, back);

        let by_index = r#"{
            "name": "sl2", "basis": ["h", "e", "f"],
            "brackets": [
                {"i": 0, "j": 1, "v": {"e": "2"}},
                {"i": "h", "j": "f", "v": {"1": "0", "2": "-2"}},
                {"i": "e", "j": "f", "v": {"h": "1"}}
            ]
        }"#;
        let again: LieAlgebra = serde_json::from_str(by_index).unwrap();
        assert_eq!(again, sl2);
    }

    #[test]
    fn antisymmetry_violation_is_caught() {
        let bad = r#"{
            "name": "bad", "basis": ["a", "b"],
            "brackets": [
                {"i": "a", "j": "b", "v": {"b": "1"}},
                {"i": "b", "j": "a", "v": {"b": "1"}}
            ]
        }"#;
        let err = serde_json::from_str::<LieAlgebra>(bad).unwrap_err();
        assert!(err.to_string().contains("antisymmetry"), "{err}");
    }

    #[test]
    fn jacobi_violation_is_caught() {
        // [a,b]=c, [b,c]=a, [c,a]=a is antisymmetric but fails Jacobi.
        let bad = r#"{
            "name": "bad", "basis": ["a", "b", "c"],
            "brackets": [
                {"i": "a", "j": "b", "v": {"c": "1"}},
                {"i": "b", "j": "c", "v": {"a": "1"}},
                {"i": "c", "j": "a", "v": {"a": "1"}}
            ]
        }"#;
        let err = serde_json::from_str::<LieAlgebra>(bad).unwrap_err();
        assert!(err.to_string().contains("Jacobi"), "{err}");
    }

    #[test]
    fn nilpotency_classes() {
        assert_eq!(fixtures::abelian(3).nilpotency_bound(), Some(1));
        assert_eq!(fixtures::heisenberg_3().nilpotency_bound(), Some(2));
        assert_eq!(fixtures::sl2().nilpotency_bound(), None);
        assert_eq!(fixtures::solvable_2().nilpotency_bound(), None);
    }

    #[test]
    fn poly_bracket_degrees_add() {
        let h = fixtures::heisenberg_3();
        let s = SpaceDesc::numbered("X", "x", 1);
        let mut f = HomogeneousPoly::zero(&s, &h.space, 1);
        f.add_term(crate::space::MultiIndex(vec![1]), 0, &rat(1)).unwrap();
        let mut g = HomogeneousPoly::zero(&s, &h.space, 2);
        g.add_term(crate::space::MultiIndex(vec![2]), 1, &rat(3)).unwrap();
        let fg = h.poly_bracket(&f, &g).unwrap();
        assert_eq!(fg.degree, 3);
        assert_eq!(
            fg.coefficient_at(&crate::space::MultiIndex(vec![3]), 2),
            rat(3)
        );
    }
}
