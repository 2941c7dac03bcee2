//! Split extensions of Lie algebras and their embedding into a wreath
//! product.
//!
//! An extension packages an algebra C, a quotient B, a projection p, a
//! linear section s of p, and a basis of the kernel ideal A. Construction
//! validates all of it: p s = id, the generators span ker p, p preserves
//! brackets, the ideal is invariant, and the projection-slide identity
//! p R^n e R^k = p R^{n+k} (with R = ad(s y) and e = s p) holds on a grid
//! of exponents.
//!
//! The embedding sends c to the pair (h_c, p c) in the wreath product of
//! the induced algebra on A with B, where h_c is the A-valued series with
//! degree-m coefficient
//!
//!   h_{c,m} = R^m c / m! - sum_{n+r=m} (t_r / (n+1)!) R^n e R^r c.
//!
//! `verify_embedding` re-checks bracket preservation and injectivity;
//! `h_closed_form_nilpotent` evaluates the same series as a finite sum when
//! the operators ad(s e_l) are jointly nilpotent, which certifies the
//! truncated computation.

use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fundamental::TCoeffTable;
use crate::jet::Jet;
use crate::lie::LieAlgebra;
use crate::linalg::{rank, solve_in_span, span_basis, LinearMap};
use crate::poly::HomogeneousPoly;
use crate::scalar::{format_rational, inv_factorial, parse_rational, Rational};
use crate::space::{coords_string, space_mismatch, MultiIndex, SpaceDesc, Vector};
use crate::suite::CellFailure;
use crate::wreath::{WreathAlgebra, WreathElement};

const SLIDE_GRID: u32 = 6;

#[derive(Debug, Clone)]
pub struct Extension {
    pub c: LieAlgebra,
    pub b: LieAlgebra,
    pub p: LinearMap,
    pub s: LinearMap,
    ideal: Vec<Vector>,
    span: Vec<Vec<Rational>>,
    pub a: LieAlgebra,
}

impl Extension {
    pub fn new(
        c: LieAlgebra,
        b: LieAlgebra,
        p: LinearMap,
        ideal: Vec<Vector>,
        s: LinearMap,
    ) -> Result<Self> {
        if p.source != c.space {
            return Err(space_mismatch("projection source", &c.space, &p.source));
        }
        if p.target != b.space {
            return Err(space_mismatch("projection target", &b.space, &p.target));
        }
        if s.source != b.space {
            return Err(space_mismatch("section source", &b.space, &s.source));
        }
        if s.target != c.space {
            return Err(space_mismatch("section target", &c.space, &s.target));
        }

        let ps = p.compose(&s)?;
        for j in 0..b.dim() {
            let col = ps.column(j);
            let ok = col
                .iter()
                .enumerate()
                .all(|(k, v)| (k == j) == (*v == Rational::from_integer(1.into())) && (k == j || v.is_zero()));
            if !ok {
                return Err(Error::NotASection {
                    column: j,
                    got: coords_string(&col),
                });
            }
        }

        let expected = c.dim() - b.dim().min(c.dim());
        if ideal.len() != expected {
            return Err(Error::KernelMismatch {
                detail: format!(
                    "expected {expected} generators for ker p, found {}",
                    ideal.len()
                ),
            });
        }
        for (k, v) in ideal.iter().enumerate() {
            if v.space != c.space {
                return Err(space_mismatch("ideal generator", &c.space, &v.space));
            }
            let image = p.apply(v)?;
            if !image.is_zero() {
                return Err(Error::KernelMismatch {
                    detail: format!(
                        "generator {k} maps to {} under p",
                        coords_string(&image.coords)
                    ),
                });
            }
        }
        let span: Vec<Vec<Rational>> = ideal.iter().map(|v| v.coords.clone()).collect();
        if rank(&span) != span.len() {
            return Err(Error::KernelMismatch {
                detail: "ideal generators are linearly dependent".into(),
            });
        }

        for i in 0..c.dim() {
            for j in i + 1..c.dim() {
                let lhs = p.apply_coords(c.structure(i, j));
                let rhs = b.bracket_coords(&p.column(i), &p.column(j));
                if lhs != rhs {
                    let defect: Vec<Rational> =
                        lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
                    return Err(Error::NotAHomomorphism {
                        left: c.space.basis[i].clone(),
                        right: c.space.basis[j].clone(),
                        degree: 0,
                        defect: coords_string(&defect),
                    });
                }
            }
        }

        let a_labels: Vec<String> = ideal
            .iter()
            .enumerate()
            .map(|(k, v)| match unit_label(&c, v) {
                Some(label) => label,
                None => format!("a{k}"),
            })
            .collect();
        let a_space = SpaceDesc::new("A", a_labels)?;

        for i in 0..c.dim() {
            for (k, gen) in ideal.iter().enumerate() {
                let w = c.bracket_coords(&unit(c.dim(), i), &gen.coords);
                if solve_in_span(&span, &w).is_none() {
                    return Err(Error::NotAnIdeal {
                        label: c.space.basis[i].clone(),
                        ideal: a_space.basis[k].clone(),
                        witness: coords_string(&w),
                    });
                }
            }
        }

        let r = ideal.len();
        let mut table = vec![vec![vec![Rational::zero(); r]; r]; r];
        for k in 0..r {
            for l in 0..r {
                let w = c.bracket_coords(&ideal[k].coords, &ideal[l].coords);
                let coords = solve_in_span(&span, &w).ok_or_else(|| Error::NotAnIdeal {
                    label: a_space.basis[k].clone(),
                    ideal: a_space.basis[l].clone(),
                    witness: coords_string(&w),
                })?;
                table[k][l] = coords;
            }
        }
        let a = LieAlgebra::from_table(a_space, table)?;

        let ext = Extension {
            c,
            b,
            p,
            s,
            ideal,
            span,
            a,
        };
        ext.check_projection_slide()?;
        Ok(ext)
    }

    /// The idempotent e = s p on C.
    pub fn e_map(&self) -> LinearMap {
        self.s.compose(&self.p).expect("shapes validated")
    }

    /// The operators ad(s e_l) on C, one per basis vector of B; their
    /// y-weighted sum is the symbolic operator R = ad(s y).
    pub fn r_mats(&self) -> Vec<LinearMap> {
        (0..self.b.dim())
            .map(|l| {
                let sl = self.s.apply(&Vector::basis(&self.b.space, l)).unwrap();
                self.c.ad(&sl).unwrap()
            })
            .collect()
    }

    pub fn ideal_generators(&self) -> &[Vector] {
        &self.ideal
    }

    /// Coordinates of a C-vector in the ideal basis, when it lies there.
    pub fn ideal_coords(&self, coords: &[Rational]) -> Option<Vec<Rational>> {
        solve_in_span(&self.span, coords)
    }

    fn check_projection_slide(&self) -> Result<()> {
        let mats = self.r_mats();
        let e = self.e_map();
        for j in 0..self.c.dim() {
            // powers[k] holds R^k e_j as a degree-k polynomial in y.
            let mut powers = vec![constant_poly(self, j)];
            for _ in 0..SLIDE_GRID {
                powers.push(powers.last().unwrap().raised_by(&mats)?);
            }
            for n in 0..=SLIDE_GRID {
                for k in 0..=SLIDE_GRID - n {
                    let mut lhs = powers[k as usize].map_linear(&e)?;
                    for _ in 0..n {
                        lhs = lhs.raised_by(&mats)?;
                    }
                    let lhs = lhs.map_linear(&self.p)?;
                    let rhs = powers[(n + k) as usize].map_linear(&self.p)?;
                    if lhs != rhs {
                        return Err(Error::ProjectionSlide {
                            n,
                            k,
                            label: self.c.space.basis[j].clone(),
                            witness: lhs.sub(&rhs)?.terms_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// C-valued jet with degree-m component R^m c / m!.
    pub fn u_jet(&self, cvec: &Vector, order: i64) -> Result<Jet> {
        if cvec.space != self.c.space {
            return Err(space_mismatch("series element", &self.c.space, &cvec.space));
        }
        let order = order.max(0);
        let mats = self.r_mats();
        let mut raised = constant_from(self, &cvec.coords);
        let mut components = Vec::with_capacity(order as usize + 1);
        for m in 0..=order {
            components.push(raised.scale(&inv_factorial(m as u32)));
            if m < order {
                raised = raised.raised_by(&mats)?;
            }
        }
        Jet::from_components(components, order)
    }

    /// C-valued jet with degree-m component
    /// sum_{n+r=m} (t_r / (n+1)!) R^n e R^r c.
    pub fn v_jet(&self, cvec: &Vector, order: i64) -> Result<Jet> {
        if cvec.space != self.c.space {
            return Err(space_mismatch("series element", &self.c.space, &cvec.space));
        }
        let order = order.max(0);
        let mats = self.r_mats();
        let e = self.e_map();
        let table = TCoeffTable::new(order as usize);
        // seeds[r] = e R^r c, then raised n more times.
        let mut r_power = constant_from(self, &cvec.coords);
        let mut seeds = Vec::with_capacity(order as usize + 1);
        for r in 0..=order {
            seeds.push(r_power.map_linear(&e)?);
            if r < order {
                r_power = r_power.raised_by(&mats)?;
            }
        }
        let mut components: Vec<HomogeneousPoly> = (0..=order as u32)
            .map(|m| HomogeneousPoly::zero(&self.b.space, &self.c.space, m))
            .collect();
        for (r, seed) in seeds.iter().enumerate() {
            let mut term = seed.clone();
            for n in 0..=order - r as i64 {
                let m = (n + r as i64) as usize;
                let weight = table.t(r as i64) * inv_factorial(n as u32 + 1);
                components[m].add_assign(&term.scale(&weight))?;
                if n < order - r as i64 {
                    term = term.raised_by(&mats)?;
                }
            }
        }
        Jet::from_components(components, order)
    }

    /// Project a C-valued jet into the ideal coordinates, failing on any
    /// coefficient outside the ideal.
    fn project_to_ideal(&self, jet: &Jet) -> Result<Jet> {
        let mut components = Vec::with_capacity(jet.order() as usize + 1);
        for comp in jet.components() {
            let mut out = HomogeneousPoly::zero(&self.b.space, &self.a.space, comp.degree);
            for (mono, v) in comp.terms() {
                let coords = self.ideal_coords(v).ok_or_else(|| Error::OutsideIdeal {
                    degree: comp.degree,
                    mono: mono.label(&self.b.space.basis),
                    witness: coords_string(v),
                })?;
                out.add_vec(mono.clone(), &coords)?;
            }
            components.push(out);
        }
        Jet::from_components(components, jet.valid_order)
    }

    /// The A-valued series h_c, truncated at the given order with every
    /// stored degree trusted.
    pub fn h_series(&self, cvec: &Vector, order: i64) -> Result<Jet> {
        let u = self.u_jet(cvec, order)?;
        let v = self.v_jet(cvec, order)?;
        self.project_to_ideal(&u.sub(&v)?)
    }

    /// The wreath product the embedding lands in.
    pub fn wreath(&self, order: i64) -> Result<WreathAlgebra> {
        WreathAlgebra::fundamental(self.a.clone(), self.b.clone(), order)
    }

    /// The embedding c -> (h_c, p c) into a prepared wreath product.
    pub fn kk_embed_in(&self, w: &WreathAlgebra, cvec: &Vector) -> Result<WreathElement> {
        let f = self.h_series(cvec, w.order)?;
        let b = self.p.apply(cvec)?;
        w.element(f, b)
    }

    /// The embedding c -> (h_c, p c) at the given truncation order.
    pub fn kk_embed(&self, cvec: &Vector, order: i64) -> Result<WreathElement> {
        let w = self.wreath(order)?;
        self.kk_embed_in(&w, cvec)
    }

    /// Recompute the embedding on every basis pair and compare both sides
    /// of bracket preservation; also check injectivity on coordinates.
    pub fn verify_embedding(&self, order: i64) -> Result<EmbeddingReport> {
        let w = self.wreath(order)?;
        let dim = self.c.dim();
        let images: Vec<WreathElement> = (0..dim)
            .map(|i| self.kk_embed_in(&w, &Vector::basis(&self.c.space, i)))
            .collect::<Result<_>>()?;
        let mut failures = Vec::new();
        let mut pairs = 0;
        for i in 0..dim {
            for j in i + 1..dim {
                pairs += 1;
                let lhs = w.bracket(&images[i], &images[j])?;
                let bracket_vec = Vector::new(
                    self.c.space.clone(),
                    self.c.structure(i, j).to_vec(),
                )?;
                let rhs = self.kk_embed_in(&w, &bracket_vec)?;
                let cell = format!(
                    "pair/{}/{}",
                    self.c.space.basis[i], self.c.space.basis[j]
                );
                if lhs.b != rhs.b {
                    failures.push(CellFailure {
                        cell,
                        witness: format!(
                            "B parts differ: {} vs {}",
                            coords_string(&lhs.b.coords),
                            coords_string(&rhs.b.coords)
                        ),
                    });
                    continue;
                }
                let through = lhs.f.valid_order.min(rhs.f.valid_order);
                if let Some(witness) = lhs.f.first_difference(&rhs.f, through)? {
                    failures.push(CellFailure { cell, witness });
                }
            }
        }
        // (h_{c,0}, p c) already determines c, so the stacked coordinate
        // matrix must have full rank.
        let mut stacked = Vec::with_capacity(dim);
        for img in &images {
            let mut row = Vec::new();
            let h0 = img.f.component(0).unwrap();
            let zero = MultiIndex::zero(self.b.dim());
            for k in 0..self.a.dim() {
                row.push(h0.coefficient_at(&zero, k));
            }
            row.extend(img.b.coords.iter().cloned());
            stacked.push(row);
        }
        let injective = rank(&stacked) == dim;
        Ok(EmbeddingReport {
            order,
            pairs,
            injective,
            failures,
        })
    }

    /// Evaluate h_c as a finite closed-form sum, after certifying that all
    /// long products of the operators ad(s e_l) vanish. The result is exact:
    /// padding it with zeros to any higher order stays correct.
    pub fn h_closed_form_nilpotent(&self, cvec: &Vector, order: i64) -> Result<Jet> {
        let mats = self.r_mats();
        let bound = self.nilpotency_certificate(&mats)?;
        let natural = 2 * (bound as i64 - 1);
        let wide = natural.max(order).max(0);
        let u = self.u_jet(cvec, wide)?;
        let v = self.v_jet(cvec, wide)?;
        let h = self.project_to_ideal(&u.sub(&v)?)?;
        Ok(h.truncated(order.max(0)).with_valid(order.max(0)))
    }

    /// Smallest k such that every product of k of the operators vanishes.
    fn nilpotency_certificate(&self, mats: &[LinearMap]) -> Result<u32> {
        let dim = self.c.dim();
        let mut current: Vec<Vec<Rational>> = (0..dim).map(|i| unit(dim, i)).collect();
        for k in 1..=dim as u32 + 1 {
            let mut next = Vec::new();
            for m in mats {
                for v in &current {
                    let w = m.apply_coords(v);
                    if w.iter().any(|x| !x.is_zero()) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                return Ok(k);
            }
            if rank(&next) >= rank(&current) {
                return Err(Error::NotNilpotent { bound: k });
            }
            current = span_basis(next);
        }
        Err(Error::NotNilpotent {
            bound: dim as u32 + 1,
        })
    }
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = Rational::from_integer(1.into());
    v
}

fn unit_label(c: &LieAlgebra, v: &Vector) -> Option<String> {
    let mut found = None;
    for (i, x) in v.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if found.is_some() || *x != Rational::from_integer(1.into()) {
            return None;
        }
        found = Some(c.space.basis[i].clone());
    }
    found
}

fn constant_poly(ext: &Extension, j: usize) -> HomogeneousPoly {
    constant_from(ext, &unit(ext.c.dim(), j))
}

fn constant_from(ext: &Extension, coords: &[Rational]) -> HomogeneousPoly {
    let mut p = HomogeneousPoly::zero(&ext.b.space, &ext.c.space, 0);
    p.add_vec(MultiIndex::zero(ext.b.dim()), coords)
        .expect("constant coefficient is well formed");
    p
}

/// Outcome of re-checking the embedding on all basis pairs.
#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingReport {
    pub order: i64,
    pub pairs: usize,
    pub injective: bool,
    pub failures: Vec<CellFailure>,
}

impl EmbeddingReport {
    pub fn pass(&self) -> bool {
        self.injective && self.failures.is_empty()
    }
}

/// Serialized form of an extension: both algebras inline, matrices as rows
/// of rationals, ideal generators as sparse coordinate maps over C labels.
#[derive(Serialize, Deserialize)]
struct ExtensionRepr {
    #[serde(rename = "C")]
    c: LieAlgebra,
    #[serde(rename = "B")]
    b: LieAlgebra,
    p: Vec<Vec<String>>,
    ideal: Vec<std::collections::BTreeMap<String, String>>,
    s: Vec<Vec<String>>,
}

fn matrix_strings(m: &LinearMap) -> Vec<Vec<String>> {
    m.matrix
        .iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect()
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect())
        .collect()
}

impl Extension {
    fn to_repr(&self) -> ExtensionRepr {
        let ideal = self
            .ideal
            .iter()
            .map(|v| {
                let mut map = std::collections::BTreeMap::new();
                for (label, c) in self.c.space.basis.iter().zip(&v.coords) {
                    if !c.is_zero() {
                        map.insert(label.clone(), format_rational(c));
                    }
                }
                map
            })
            .collect();
        ExtensionRepr {
            c: self.c.clone(),
            b: self.b.clone(),
            p: matrix_strings(&self.p),
            ideal,
            s: matrix_strings(&self.s),
        }
    }

    fn from_repr(repr: ExtensionRepr) -> Result<Self> {
        let p = LinearMap::new(
            repr.c.space.clone(),
            repr.b.space.clone(),
            parse_matrix(&repr.p)?,
        )?;
        let s = LinearMap::new(
            repr.b.space.clone(),
            repr.c.space.clone(),
            parse_matrix(&repr.s)?,
        )?;
        let mut ideal = Vec::with_capacity(repr.ideal.len());
        for map in &repr.ideal {
            let mut v = Vector::zero(&repr.c.space);
            for (label, text) in map {
                let i = repr.c.space.label_index(label).ok_or_else(|| {
                    Error::invalid("ideal generator", format!("unknown label {label:?}"))
                })?;
                v.coords[i] = parse_rational(text)?;
            }
            ideal.push(v);
        }
        Extension::new(repr.c, repr.b, p, ideal, s)
    }
}

impl Extension {
    /// Parse from JSON text with the typed error kept: defects found while
    /// re-validating report themselves, not a serialization message.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let repr: ExtensionRepr = serde_json::from_str(text)
            .map_err(|e| Error::invalid("extension JSON", e.to_string()))?;
        Extension::from_repr(repr)
    }
}

impl Serialize for Extension {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Extension {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ExtensionRepr::deserialize(deserializer)?;
        Extension::from_repr(repr).map_err(D::Error::custom)
    }
}
