//! Coefficients of the series T e^T / (e^T - 1) and the canonical action
//! they define.
//!
//! The table is computed by two independent routes and cross-checked:
//! inverting the series (e^T - 1)/T and multiplying by e^T, and the
//! recurrence obtained from multiplying back by (e^T - 1)/T. Every basis
//! vector b of a Lie algebra then acts on the algebra's own space by the
//! polynomial field whose degree-n part is t_n (ad y)^n b; this preserves
//! brackets, which `FormalAction::new` re-checks on construction.
//!
//! `identity_suite` packages the combinatorial identities these
//! coefficients satisfy (generating-series splitting, binomial recursion,
//! expansion of iterated derivations) as named check cells.

use num_traits::Zero;

use crate::action::FormalAction;
use crate::error::Result;
use crate::lie::LieAlgebra;
use crate::linalg::{defect_string, LinearMap};
use crate::jet::Jet;
use crate::poly::HomogeneousPoly;
use crate::rng::{cell_rng, vector};
use crate::scalar::{binomial, inv_factorial, rat, ratq, Rational};
use crate::space::{MultiIndex, Vector};
use crate::suite::{check, Cell};

#[derive(Debug, Clone)]
pub struct TCoeffTable {
    values: Vec<Rational>,
}

impl TCoeffTable {
    /// Table of t_0 .. t_max, computed twice and cross-checked.
    pub fn new(max: usize) -> Self {
        let (by_inversion, by_recurrence) = t_routes(max);
        assert_eq!(
            by_inversion, by_recurrence,
            "series inversion and recurrence disagree"
        );
        TCoeffTable { values: by_recurrence }
    }

    /// t_i, with t_i = 0 for negative i.
    pub fn t(&self, i: i64) -> Rational {
        if i < 0 {
            return Rational::zero();
        }
        self.values[i as usize].clone()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }
}

/// Both computations of t_0 .. t_max: series division on one side, the
/// recurrence t_m = 1/m! - sum_{r<m} t_r / (m-r+1)! on the other.
pub fn t_routes(max: usize) -> (Vec<Rational>, Vec<Rational>) {
    let len = max + 1;
    let a: Vec<Rational> = (0..len).map(|m| inv_factorial(m as u32)).collect();
    let b: Vec<Rational> = (0..len).map(|m| inv_factorial(m as u32 + 1)).collect();
    let inv = invert_series(&b);
    let by_inversion = convolve(&a, &inv);
    let mut by_recurrence: Vec<Rational> = Vec::with_capacity(len);
    for m in 0..len {
        let mut t_m = inv_factorial(m as u32);
        for (r, t_r) in by_recurrence.iter().enumerate() {
            t_m -= t_r * inv_factorial((m - r) as u32 + 1);
        }
        by_recurrence.push(t_m);
    }
    (by_inversion, by_recurrence)
}

/// Multiplicative inverse of a power series with unit constant term,
/// truncated to the input length.
fn invert_series(b: &[Rational]) -> Vec<Rational> {
    let mut inv = Vec::with_capacity(b.len());
    let lead = b[0].recip();
    inv.push(lead.clone());
    for m in 1..b.len() {
        let mut acc = Rational::zero();
        for k in 1..=m {
            acc += &b[k] * &inv[m - k];
        }
        inv.push(-acc * &lead);
    }
    inv
}

/// Cauchy product truncated to the common length.
fn convolve(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    (0..a.len().min(b.len()))
        .map(|m| (0..=m).map(|k| &a[k] * &b[m - k]).sum())
        .collect()
}

/// The canonical action of an algebra on its own space: basis vector b acts
/// by the field with degree-n component t_n (ad y)^n b.
pub fn fundamental_action(algebra: &LieAlgebra, order: i64) -> Result<FormalAction> {
    let order = order.max(0);
    let table = TCoeffTable::new(order as usize);
    let mats = algebra.ad_mats();
    let space = algebra.space.clone();
    let dim = algebra.dim();
    let mut images = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut raised = HomogeneousPoly::zero(&space, &space, 0);
        raised.add_vec(MultiIndex::zero(dim), &Vector::basis(&space, j).coords)?;
        let mut components = Vec::with_capacity(order as usize + 1);
        for n in 0..=order {
            components.push(raised.scale(&table.t(n)));
            if n < order {
                raised = raised.raised_by(&mats)?;
            }
        }
        images.push(Jet::from_components(components, order)?);
    }
    FormalAction::new(algebra.clone(), space, order, images)
}

/// Truncated series in two variables, indexed coeff[p][q] for x^p y^q with
/// p + q <= cap.
struct Bivar {
    cap: usize,
    coeff: Vec<Vec<Rational>>,
}

impl Bivar {
    fn zero(cap: usize) -> Self {
        Bivar {
            cap,
            coeff: vec![vec![Rational::zero(); cap + 1]; cap + 1],
        }
    }

    fn sub(&self, other: &Self) -> Self {
        let mut out = Bivar::zero(self.cap);
        for p in 0..=self.cap {
            for q in 0..=self.cap - p {
                out.coeff[p][q] = &self.coeff[p][q] - &other.coeff[p][q];
            }
        }
        out
    }

    /// Quotient by x of a series with no x^0 part; the cap drops by one.
    fn shift_down_x(&self) -> Self {
        let mut out = Bivar::zero(self.cap - 1);
        for p in 0..=out.cap {
            for q in 0..=out.cap - p {
                out.coeff[p][q] = self.coeff[p + 1][q].clone();
            }
        }
        out
    }

    /// Product with a series in x alone.
    fn mul_x_series(&self, g: &[Rational]) -> Self {
        let mut out = Bivar::zero(self.cap);
        for p in 0..=self.cap {
            for q in 0..=self.cap - p {
                let mut acc = Rational::zero();
                for p1 in 0..=p {
                    acc += &self.coeff[p1][q] * &g[p - p1];
                }
                out.coeff[p][q] = acc;
            }
        }
        out
    }

    fn transpose(&self) -> Self {
        let mut out = Bivar::zero(self.cap);
        for p in 0..=self.cap {
            for q in 0..=self.cap - p {
                out.coeff[p][q] = self.coeff[q][p].clone();
            }
        }
        out
    }

    fn first_difference(&self, other: &Self) -> Option<String> {
        for p in 0..=self.cap {
            for q in 0..=self.cap - p {
                if self.coeff[p][q] != other.coeff[p][q] {
                    return Some(format!(
                        "x^{p} y^{q}: {} vs {}",
                        self.coeff[p][q], other.coeff[p][q]
                    ));
                }
            }
        }
        None
    }
}

fn d_pow(d: &LinearMap, k: usize, v: &[Rational]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for _ in 0..k {
        out = d.apply_coords(&out);
    }
    out
}

fn add_scaled(acc: &mut [Rational], v: &[Rational], c: &Rational) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b * c;
    }
}

pub fn named_algebras() -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("heisenberg", crate::fixtures::heisenberg_3()),
        ("sl2", crate::fixtures::sl2()),
        ("solvable", crate::fixtures::solvable_2()),
    ]
}

/// Check cells for the coefficient identities, keyed by content.
pub fn identity_suite(max_m: u32, seed: u64) -> Vec<Cell> {
    let mut cells = Vec::new();
    let max_m = max_m.max(2) as usize;

    cells.push(Cell::new("tseries/frozen_prefix", || {
        let table = TCoeffTable::new(4);
        let want = [rat(1), ratq(1, 2), ratq(1, 12), rat(0), ratq(-1, 720)];
        check(table.values() == want, || {
            format!("table starts {:?}", table.values())
        })
    }));

    for m in 0..=max_m {
        cells.push(Cell::new(
            format!("tseries/factorial_convolution/m{m}"),
            move || {
                let table = TCoeffTable::new(m);
                let mut acc = Rational::zero();
                for r in 0..=m {
                    acc += table.t(r as i64) * inv_factorial((m - r) as u32 + 1);
                }
                let want = inv_factorial(m as u32);
                check(acc == want, || format!("sum {acc}, expected {want}"))
            },
        ));
    }

    for m in 0..=max_m {
        for p in 0..=m {
            let q = m - p;
            cells.push(Cell::new(
                format!("tseries/binomial_recursion/m{m}/p{p}"),
                move || {
                    let table = TCoeffTable::new(m + 1);
                    let lhs = binomial(m as u32, p as u32) * table.t(m as i64);
                    let mut rhs = Rational::zero();
                    for n in 0..=m + 1 {
                        let r = m + 1 - n;
                        let prod = table.t(n as i64) * table.t(r as i64);
                        if n >= p + 1 {
                            rhs += binomial(n as u32, p as u32) * &prod;
                        }
                        if r >= q + 1 {
                            rhs += binomial(r as u32, q as u32) * &prod;
                        }
                    }
                    check(lhs == rhs, || format!("lhs {lhs}, rhs {rhs}"))
                },
            ));
        }
    }

    let cap = max_m;
    cells.push(Cell::new("gen_series/two_variable_split", move || {
        let table = TCoeffTable::new(cap);
        let mut g2 = Bivar::zero(cap);
        for p in 0..=cap {
            for q in 0..=cap - p {
                g2.coeff[p][q] = binomial((p + q) as u32, p as u32) * table.t((p + q) as i64);
            }
        }
        let mut gy = Bivar::zero(cap);
        for q in 0..=cap {
            gy.coeff[0][q] = table.t(q as i64);
        }
        let gx: Vec<Rational> = (0..=cap).map(|p| table.t(p as i64)).collect();
        let l = g2.sub(&gy).shift_down_x().mul_x_series(&gx);
        let split = {
            let mut s = l.transpose();
            for p in 0..=s.cap {
                for q in 0..=s.cap - p {
                    s.coeff[p][q] += &l.coeff[p][q];
                }
            }
            s
        };
        let mut g2_clipped = Bivar::zero(cap - 1);
        for p in 0..=cap - 1 {
            for q in 0..=cap - 1 - p {
                g2_clipped.coeff[p][q] = g2.coeff[p][q].clone();
            }
        }
        check(g2_clipped.first_difference(&split).is_none(), || {
            g2_clipped.first_difference(&split).unwrap()
        })
    }));

    for (name, _) in named_algebras() {
        for m in 0..=max_m {
            let key = format!("adpower/expansion_one_sided/{name}/m{m}");
            let key_run = key.clone();
            cells.push(Cell::new(key, move || {
                let alg = named_algebras()
                    .into_iter()
                    .find(|(n, _)| *n == name)
                    .unwrap()
                    .1;
                let mut rng = cell_rng(seed, &key_run);
                let y = vector(&mut rng, &alg.space);
                let a = vector(&mut rng, &alg.space);
                let b = vector(&mut rng, &alg.space);
                let d = alg.ad(&y).unwrap();
                let dim = alg.dim();
                let mut lhs = vec![Rational::zero(); dim];
                for k in 0..=m {
                    let inner = alg.bracket_coords(&a.coords, &d_pow(&d, m - k, &b.coords));
                    add_scaled(&mut lhs, &d_pow(&d, k, &inner), &rat(1));
                }
                let mut rhs = vec![Rational::zero(); dim];
                for i in 0..=m {
                    let term = alg.bracket_coords(
                        &d_pow(&d, i, &a.coords),
                        &d_pow(&d, m - i, &b.coords),
                    );
                    add_scaled(&mut rhs, &term, &binomial(m as u32 + 1, i as u32 + 1));
                }
                check(lhs == rhs, || {
                    format!("lhs {} rhs {}", defect_string(&lhs), defect_string(&rhs))
                })
            }));

            let key = format!("adpower/expansion_two_sided/{name}/m{m}");
            let key_run = key.clone();
            cells.push(Cell::new(key, move || {
                let alg = named_algebras()
                    .into_iter()
                    .find(|(n, _)| *n == name)
                    .unwrap()
                    .1;
                let mut rng = cell_rng(seed, &key_run);
                let y = vector(&mut rng, &alg.space);
                let a = vector(&mut rng, &alg.space);
                let b = vector(&mut rng, &alg.space);
                let d = alg.ad(&y).unwrap();
                let dim = alg.dim();
                let mut lhs = vec![Rational::zero(); dim];
                for k in 0..=m {
                    let one = alg.bracket_coords(&a.coords, &d_pow(&d, m - k, &b.coords));
                    add_scaled(&mut lhs, &d_pow(&d, k, &one), &rat(1));
                    let two = alg.bracket_coords(&d_pow(&d, m - k, &a.coords), &b.coords);
                    add_scaled(&mut lhs, &d_pow(&d, k, &two), &rat(1));
                }
                let mut rhs = vec![Rational::zero(); dim];
                for i in 0..=m {
                    let term = alg.bracket_coords(
                        &d_pow(&d, i, &a.coords),
                        &d_pow(&d, m - i, &b.coords),
                    );
                    add_scaled(&mut rhs, &term, &binomial(m as u32 + 2, i as u32 + 1));
                }
                check(lhs == rhs, || {
                    format!("lhs {} rhs {}", defect_string(&lhs), defect_string(&rhs))
                })
            }));

            let key = format!("adpower/t_weighted_leibniz/{name}/m{m}");
            let key_run = key.clone();
            cells.push(Cell::new(key, move || {
                let alg = named_algebras()
                    .into_iter()
                    .find(|(n, _)| *n == name)
                    .unwrap()
                    .1;
                let mut rng = cell_rng(seed, &key_run);
                let y = vector(&mut rng, &alg.space);
                let a = vector(&mut rng, &alg.space);
                let b = vector(&mut rng, &alg.space);
                let d = alg.ad(&y).unwrap();
                let dim = alg.dim();
                let table = TCoeffTable::new(m + 1);
                let bracket = alg.bracket_coords(&a.coords, &b.coords);
                let mut lhs = vec![Rational::zero(); dim];
                add_scaled(&mut lhs, &d_pow(&d, m, &bracket), &table.t(m as i64));
                let mut rhs = vec![Rational::zero(); dim];
                for n in 0..=m + 1 {
                    let r = m + 1 - n;
                    let weight = table.t(n as i64) * table.t(r as i64);
                    for k in 0..r {
                        let inner = alg.bracket_coords(
                            &d_pow(&d, n, &a.coords),
                            &d_pow(&d, r - 1 - k, &b.coords),
                        );
                        add_scaled(&mut rhs, &d_pow(&d, k, &inner), &weight);
                    }
                    for k in 0..n {
                        let inner = alg.bracket_coords(
                            &d_pow(&d, n - 1 - k, &a.coords),
                            &d_pow(&d, r, &b.coords),
                        );
                        add_scaled(&mut rhs, &d_pow(&d, k, &inner), &weight);
                    }
                }
                check(lhs == rhs, || {
                    format!("lhs {} rhs {}", defect_string(&lhs), defect_string(&rhs))
                })
            }));
        }
    }

    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::suite::run_cells;

    #[test]
    fn frozen_values() {
        let table = TCoeffTable::new(8);
        assert_eq!(table.t(0), rat(1));
        assert_eq!(table.t(1), ratq(1, 2));
        assert_eq!(table.t(2), ratq(1, 12));
        assert_eq!(table.t(3), rat(0));
        assert_eq!(table.t(4), ratq(-1, 720));
        assert_eq!(table.t(5), rat(0));
        assert_eq!(table.t(-3), rat(0));
    }

    #[test]
    fn heisenberg_action_fields() {
        let h = fixtures::heisenberg_3();
        let action = fundamental_action(&h, 6).unwrap();
        // d_x = x - (1/2) y (x) z: the only correction is t_1 (ad y-var) x.
        let d_x = action.image(0);
        assert_eq!(
            d_x.component(0).unwrap().coefficient_at(&MultiIndex(vec![0, 0, 0]), 0),
            rat(1)
        );
        assert_eq!(
            d_x.component(1).unwrap().coefficient_at(&MultiIndex(vec![0, 1, 0]), 2),
            ratq(-1, 2)
        );
        assert!(d_x.component(2).unwrap().is_zero());
        // The centre acts by its constant field.
        let d_z = action.image(2);
        assert!(d_z.component(1).unwrap().is_zero());
        assert_eq!(
            d_z.component(0).unwrap().coefficient_at(&MultiIndex(vec![0, 0, 0]), 2),
            rat(1)
        );
    }

    #[test]
    fn identity_cells_pass() {
        let report = run_cells("identities", identity_suite(6, 0));
        assert!(report.pass(), "failures: {:?}", report.failures);
        assert!(report.cells > 60);
    }
}
