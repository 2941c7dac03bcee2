//! Dense multilinear maps: the oracle and interchange format for
//! homogeneous polynomials.
//!
//! A degree-m homogeneous polynomial is `f(x) = u(x, ..., x)` for an m-linear
//! map u; conversely polarization recovers the unique symmetric u from f.
//! Dense storage is exponential in the arity, which is fine at the intended
//! scale (arity <= 5, dimension <= 4).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::HomogeneousPoly;
use crate::scalar::{factorial, Rational};
use crate::space::{space_mismatch, MultiIndex, Space, Vector};

/// Dense m-linear map: entry (i_1, ..., i_m; k) is the k-th target
/// coordinate of u(e_{i_1}, ..., e_{i_m}).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMultilinear {
    pub source: Space,
    pub target: Space,
    pub arity: u32,
    entries: Vec<Rational>,
}

/// Iterate all index tuples in {0..dim}^m, odometer order.
pub(crate) fn tuples(dim: usize, m: u32) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::with_capacity(out.len() * dim);
        for t in &out {
            for i in 0..dim {
                let mut s = t.clone();
                s.push(i);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..m {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

impl DenseMultilinear {
    pub fn zero(source: &Space, target: &Space, arity: u32) -> Self {
        let n = source.dim().pow(arity) * target.dim();
        DenseMultilinear {
            source: source.clone(),
            target: target.clone(),
            arity,
            entries: vec![Rational::zero(); n],
        }
    }

    fn offset(&self, idx: &[usize], k: usize) -> usize {
        debug_assert_eq!(idx.len(), self.arity as usize);
        let d = self.source.dim();
        let mut o = 0;
        for &i in idx {
            debug_assert!(i < d);
            o = o * d + i;
        }
        o * self.target.dim() + k
    }

    pub fn get(&self, idx: &[usize], k: usize) -> &Rational {
        &self.entries[self.offset(idx, k)]
    }

    pub fn set(&mut self, idx: &[usize], k: usize, c: Rational) {
        let o = self.offset(idx, k);
        self.entries[o] = c;
    }

    pub fn add_entry(&mut self, idx: &[usize], k: usize, c: &Rational) {
        let o = self.offset(idx, k);
        self.entries[o] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Full multilinear evaluation u(v_1, ..., v_m).
    pub fn apply(&self, args: &[&Vector]) -> Result<Vector> {
        if args.len() != self.arity as usize {
            return Err(Error::DimensionMismatch {
                context: "multilinear arity".into(),
                expected: self.arity as usize,
                found: args.len(),
            });
        }
        for v in args {
            if v.space != self.source {
                return Err(space_mismatch("multilinear argument", &self.source, &v.space));
            }
        }
        let mut out = Vector::zero(&self.target);
        for idx in tuples(self.source.dim(), self.arity) {
            let mut w = Rational::from_integer(1.into());
            for (pos, &i) in idx.iter().enumerate() {
                w *= &args[pos].coords[i];
                if w.is_zero() {
                    break;
                }
            }
            if w.is_zero() {
                continue;
            }
            for k in 0..self.target.dim() {
                let e = self.get(&idx, k);
                if !e.is_zero() {
                    out.coords[k] += e * &w;
                }
            }
        }
        Ok(out)
    }

    /// Substitute homogeneous polynomials for the arguments; the result is
    /// homogeneous of the summed degree.
    pub fn apply_polys(&self, args: &[&HomogeneousPoly]) -> Result<HomogeneousPoly> {
        if args.len() != self.arity as usize {
            return Err(Error::DimensionMismatch {
                context: "multilinear arity".into(),
                expected: self.arity as usize,
                found: args.len(),
            });
        }
        let var_space = if let Some(first) = args.first() {
            first.source.clone()
        } else {
            // Arity 0: constant in a one-point sense; callers with arity 0
            // should use `to_poly` on a constant instead.
            return Err(Error::invalid("apply_polys", "arity 0 has no argument space"));
        };
        for a in args {
            if a.source != var_space {
                return Err(space_mismatch("apply_polys argument", &var_space, &a.source));
            }
            if a.target != self.source {
                return Err(space_mismatch("apply_polys argument target", &self.source, &a.target));
            }
        }
        let degree: u32 = args.iter().map(|a| a.degree).sum();
        let mut out = HomogeneousPoly::zero(&var_space, &self.target, degree);
        for idx in tuples(self.source.dim(), self.arity) {
            let mut used = false;
            for k in 0..self.target.dim() {
                if !self.get(&idx, k).is_zero() {
                    used = true;
                    break;
                }
            }
            if !used {
                continue;
            }
            // Product of the selected coordinate tables.
            let mut prod = std::collections::BTreeMap::new();
            prod.insert(
                MultiIndex::zero(var_space.dim()),
                Rational::from_integer(1.into()),
            );
            for (pos, &i) in idx.iter().enumerate() {
                let table = args[pos].coord_table(i);
                prod = crate::poly::table_mul(&prod, &table);
                if prod.is_empty() {
                    break;
                }
            }
            if prod.is_empty() {
                continue;
            }
            for k in 0..self.target.dim() {
                let e = self.get(&idx, k);
                if e.is_zero() {
                    continue;
                }
                for (mono, c) in &prod {
                    out.add_term(mono.clone(), k, &(c * e))?;
                }
            }
        }
        Ok(out)
    }

    /// The homogeneous polynomial x -> u(x, ..., x).
    pub fn to_poly(&self) -> HomogeneousPoly {
        let dim = self.source.dim();
        let mut out = HomogeneousPoly::zero(&self.source, &self.target, self.arity);
        for idx in tuples(dim, self.arity) {
            let mut mono = MultiIndex::zero(dim);
            for &i in &idx {
                mono.0[i] += 1;
            }
            for k in 0..self.target.dim() {
                let e = self.get(&idx, k);
                if !e.is_zero() {
                    out.add_term(mono.clone(), k, e).expect("well formed");
                }
            }
        }
        out
    }

    /// Average over all argument permutations.
    pub fn symmetrize(&self) -> Self {
        let m = self.arity as usize;
        let perms = permutations(m);
        let inv = factorial(self.arity).recip();
        let mut out = Self::zero(&self.source, &self.target, self.arity);
        for idx in tuples(self.source.dim(), self.arity) {
            for k in 0..self.target.dim() {
                let mut acc = Rational::zero();
                for p in &perms {
                    let permuted: Vec<usize> = (0..m).map(|pos| idx[p[pos]]).collect();
                    let e = self.get(&permuted, k);
                    if !e.is_zero() {
                        acc += e;
                    }
                }
                if !acc.is_zero() {
                    out.set(&idx, k, acc * &inv);
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.symmetrize()
    }

    /// Partial symmetrization: sum of u over all argument sequences drawn
    /// from z_1, ..., z_r in which z_j appears exactly p_j times. By
    /// convention the result is zero unless p is componentwise nonnegative
    /// with total equal to the arity.
    pub fn p_symmetrized(&self, z: &[Vector], p: &[i64]) -> Result<Vector> {
        if z.len() != p.len() {
            return Err(Error::DimensionMismatch {
                context: "p_symmetrized arguments".into(),
                expected: z.len(),
                found: p.len(),
            });
        }
        for v in z {
            if v.space != self.source {
                return Err(space_mismatch("p_symmetrized argument", &self.source, &v.space));
            }
        }
        let out = Vector::zero(&self.target);
        if p.iter().any(|&c| c < 0) || p.iter().sum::<i64>() != self.arity as i64 {
            return Ok(out);
        }
        let mut remaining: Vec<i64> = p.to_vec();
        let mut seq: Vec<usize> = Vec::with_capacity(self.arity as usize);
        let mut acc = out;
        self.p_sym_rec(z, &mut remaining, &mut seq, &mut acc)?;
        Ok(acc)
    }

    fn p_sym_rec(
        &self,
        z: &[Vector],
        remaining: &mut Vec<i64>,
        seq: &mut Vec<usize>,
        acc: &mut Vector,
    ) -> Result<()> {
        if seq.len() == self.arity as usize {
            let args: Vec<&Vector> = seq.iter().map(|&j| &z[j]).collect();
            let v = self.apply(&args)?;
            *acc = acc.add(&v)?;
            return Ok(());
        }
        for j in 0..z.len() {
            if remaining[j] > 0 {
                remaining[j] -= 1;
                seq.push(j);
                self.p_sym_rec(z, remaining, seq, acc)?;
                seq.pop();
                remaining[j] += 1;
            }
        }
        Ok(())
    }
}

/// Polarization: the symmetric multilinear map determined by a homogeneous
/// polynomial, recovered by inclusion-exclusion over argument subsets.
pub fn polarize(f: &HomogeneousPoly) -> Result<DenseMultilinear> {
    let m = f.degree;
    let dim = f.source.dim();
    let mut u = DenseMultilinear::zero(&f.source, &f.target, m);
    if m == 0 {
        let v = f.eval(&vec![Rational::zero(); dim])?;
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                u.set(&[], k, c.clone());
            }
        }
        return Ok(u);
    }
    let inv = factorial(m).recip();
    for idx in tuples(dim, m) {
        let mut acc = vec![Rational::zero(); f.target.dim()];
        for mask in 1u32..(1 << m) {
            let mut point = vec![Rational::zero(); dim];
            for (pos, &i) in idx.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    point[i] += Rational::from_integer(1.into());
                }
            }
            let sign = if (m - mask.count_ones()) % 2 == 0 {
                1
            } else {
                -1
            };
            let v = f.eval(&point)?;
            for (a, c) in acc.iter_mut().zip(&v) {
                if !c.is_zero() {
                    if sign > 0 {
                        *a += c;
                    } else {
                        *a -= c;
                    }
                }
            }
        }
        for (k, c) in acc.iter().enumerate() {
            if !c.is_zero() {
                u.set(&idx, k, c * &inv);
            }
        }
    }
    Ok(u)
}
