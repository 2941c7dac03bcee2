//! Exact linear algebra over Q: linear maps between based spaces and the
//! small Gaussian-elimination utilities the validation checks need.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, Rational};
use crate::space::{coords_string, space_mismatch, Space, Vector};

/// Linear map given by its matrix in the source and target bases
/// (`matrix[row][col]`, rows indexed by the target basis).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    pub source: Space,
    pub target: Space,
    pub matrix: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn new(source: Space, target: Space, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        if matrix.len() != target.dim() {
            return Err(Error::DimensionMismatch {
                context: "linear map rows".into(),
                expected: target.dim(),
                found: matrix.len(),
            });
        }
        for row in &matrix {
            if row.len() != source.dim() {
                return Err(Error::DimensionMismatch {
                    context: "linear map columns".into(),
                    expected: source.dim(),
                    found: row.len(),
                });
            }
        }
        Ok(LinearMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(space: &Space) -> Self {
        let n = space.dim();
        LinearMap {
            source: space.clone(),
            target: space.clone(),
            matrix: identity_matrix(n),
        }
    }

    pub fn zero(source: &Space, target: &Space) -> Self {
        LinearMap {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![Rational::zero(); source.dim()]; target.dim()],
        }
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.space != self.source {
            return Err(space_mismatch("linear map apply", &self.source, &v.space));
        }
        Vector::new(self.target.clone(), self.apply_coords(&v.coords))
    }

    pub fn apply_coords(&self, coords: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(coords.len(), self.source.dim());
        mat_vec(&self.matrix, coords)
    }

    /// self after `inner` (first `inner`, then `self`).
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.target != self.source {
            return Err(space_mismatch(
                "linear map compose",
                &self.source,
                &inner.target,
            ));
        }
        Ok(LinearMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: mat_mul(&self.matrix, &inner.matrix),
        })
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        self.matrix.iter().map(|row| row[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Zero::is_zero)
    }

    pub fn matrix_string(&self) -> String {
        let rows: Vec<String> = self.matrix.iter().map(|r| coords_string(r)).collect();
        format!("[{}]", rows.join("; "))
    }
}

pub fn identity_matrix(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            let mut acc = Rational::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for (x, brow) in row.iter().zip(b) {
                        if !x.is_zero() && !brow[j].is_zero() {
                            acc += x * &brow[j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Row-reduce in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone().recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &rows[r][j] * &factor;
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis (as rref rows) of the span of the given vectors.
pub fn span_basis(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let mut m = rows;
    rref(&mut m);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

/// Coordinates of `v` in the given spanning vectors, or None if `v` lies
/// outside their span. Free coordinates are set to zero.
pub fn solve_in_span(span: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let n = v.len();
    let k = span.len();
    debug_assert!(span.iter().all(|s| s.len() == n));
    // Augmented system: columns are the spanning vectors, last column is v.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|row| {
            let mut r: Vec<Rational> = (0..k).map(|col| span[col][row].clone()).collect();
            r.push(v[row].clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = m[row][k].clone();
    }
    Some(x)
}

/// Render a defect vector for witnesses.
pub fn defect_string(coords: &[Rational]) -> String {
    let inner: Vec<String> = coords.iter().map(format_rational).collect();
    format!("({})", inner.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq};
    use crate::space::SpaceDesc;

    #[test]
    fn rref_and_rank() {
        let m = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&identity_matrix(4)), 4);
    }

    #[test]
    fn solve_in_span_finds_exact_coordinates() {
        let span = vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(2), rat(0)]];
        let v = vec![rat(3), rat(5), rat(3)];
        let x = solve_in_span(&span, &v).unwrap();
        assert_eq!(x, vec![rat(3), ratq(5, 2)]);
        let outside = vec![rat(0), rat(0), rat(1)];
        assert!(solve_in_span(&span, &outside).is_none());
    }

    #[test]
    fn compose_matches_matrix_product() {
        let x = SpaceDesc::numbered("X", "x", 2);
        let y = SpaceDesc::numbered("Y", "y", 2);
        let f = LinearMap::new(
            x.clone(),
            y.clone(),
            vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]],
        )
        .unwrap();
        let g = LinearMap::new(
            y.clone(),
            x.clone(),
            vec![vec![rat(2), rat(0)], vec![rat(0), rat(3)]],
        )
        .unwrap();
        let h = g.compose(&f).unwrap();
        let v = Vector::ints(&x, &[1, 2]);
        let direct = g.apply(&f.apply(&v).unwrap()).unwrap();
        assert_eq!(h.apply(&v).unwrap(), direct);
    }
}
