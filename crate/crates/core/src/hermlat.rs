//! Hermitian lattices of signature (n,1) over imaginary quadratic orders:
//! trace forms, duals, discriminant groups and bounded vector enumeration.
//!
//! The sesquilinear form is linear in the first slot and conjugate-linear in
//! the second: ⟨x, y⟩ = xᵀ·G·ȳ for coordinate columns x, y.  The trace
//! lattice uses the Z-basis {b₁, ω b₁, b₂, ω b₂, …} with ω = ω_d the
//! standard module generator of O_F (ω = i, √d, or (1+√d)/2 as d demands).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::field::{parse_element, FieldElement, QuadraticField};
use crate::linalg::{
    column_span_index, f_inverse, f_transpose, rat_det, rat_signature, smith_normal_form, FMat,
    IntMat, RatMat,
};

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("gram matrix must be square and nonempty")]
    BadShape,
    #[error("gram matrix is not Hermitian at ({0},{1})")]
    NotHermitian(usize, usize),
    #[error("gram matrix is singular")]
    Degenerate,
    #[error("operation requires an even integral lattice")]
    NotIntegral,
    #[error("content computations require class number one (d = {0})")]
    ClassNumber(i64),
    #[error("vector has non-integral coordinates")]
    NotInLattice,
    #[error("field error: {0}")]
    Field(#[from] crate::field::FieldError),
    #[error("fixture error: {0}")]
    Fixture(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    Imprimitive,
    Unknown,
}

/// A vector of L (or of L′) with coordinates in the lattice basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeVector {
    pub coords: Vec<FieldElement>,
    pub primitivity: Primitivity,
}

/// The integral bilinear avatar Tr⟨−,−⟩ of a Hermitian lattice.
#[derive(Debug, Clone)]
pub struct TraceForm {
    pub gram_z: RatMat,
    pub parity_even: bool,
    pub det: BigRational,
    /// (positive, negative) inertia.
    pub signature: (usize, usize),
}

/// Discriminant group L′/L with its Q/Z-valued Hermitian form.
#[derive(Debug, Clone)]
pub struct DiscriminantGroup {
    /// Elementary divisors > 1 in divisibility order.
    pub elementary_divisors: Vec<BigInt>,
    /// Generators as F-coordinate vectors in the lattice basis, matching
    /// `elementary_divisors` index-for-index.
    pub generators: Vec<Vec<FieldElement>>,
    /// h(g) mod 1 for each generator.
    pub h_values: Vec<BigRational>,
    pub order: BigInt,
}

impl DiscriminantGroup {
    /// h of an integer combination of the generators, reduced mod 1.
    pub fn h_of(&self, lattice: &HermitianLattice, combo: &[i64]) -> BigRational {
        assert_eq!(combo.len(), self.generators.len());
        let k = lattice.field();
        let m = lattice.rank();
        let mut v = vec![k.zero(); m];
        for (c, g) in combo.iter().zip(&self.generators) {
            let c = k.elem_i64(*c, 0);
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi = &*vi + &(&c * gi);
            }
        }
        let h = lattice.herm(&v, &v);
        reduce_mod_1(h.as_rational().expect("h(x) is rational").clone())
    }
}

pub fn reduce_mod_1(x: BigRational) -> BigRational {
    &x - x.floor()
}

/// A Hermitian lattice given by a Gram matrix over F with entries in D_F⁻¹.
#[derive(Debug, Clone)]
pub struct HermitianLattice {
    field: QuadraticField,
    gram: FMat,
    rank: usize,
    name: Option<String>,
}

impl HermitianLattice {
    pub fn new(
        field: QuadraticField,
        gram: FMat,
        name: Option<String>,
    ) -> Result<Self, LatticeError> {
        let rank = gram.len();
        if rank == 0 || gram.iter().any(|r| r.len() != rank) {
            return Err(LatticeError::BadShape);
        }
        for i in 0..rank {
            for j in 0..rank {
                if gram[i][j] != gram[j][i].conjugate() {
                    return Err(LatticeError::NotHermitian(i, j));
                }
            }
        }
        let l = HermitianLattice { field, gram, rank, name };
        if l.trace_form().det.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(l)
    }

    pub fn field(&self) -> QuadraticField {
        self.field
    }

    pub fn gram(&self) -> &FMat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// n in the signature (n,1).
    pub fn n(&self) -> usize {
        self.rank - 1
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// ⟨x, y⟩ for coordinate vectors.
    pub fn herm(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let mut acc = self.field.zero();
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                if y[j].is_zero() {
                    continue;
                }
                acc = &acc + &(&(&x[i] * &self.gram[i][j]) * &y[j].conjugate());
            }
        }
        acc
    }

    /// The Hermitian norm h(x) = ⟨x,x⟩, always rational.
    pub fn norm(&self, x: &[FieldElement]) -> BigRational {
        self.herm(x, x)
            .as_rational()
            .expect("Hermitian norm is rational")
            .clone()
    }

    /// True iff ⟨x,y⟩ ∈ D_F⁻¹ on all basis pairs.
    pub fn is_integral(&self) -> bool {
        self.gram
            .iter()
            .flatten()
            .all(FieldElement::in_inverse_different)
    }

    /// True iff integral with h(x) ∈ Z for all x ∈ L (⟺ trace form even).
    pub fn is_even(&self) -> bool {
        self.is_integral() && self.trace_form().parity_even
    }

    /// The real trace form on the basis {b₁, ω b₁, …}.
    pub fn trace_form(&self) -> TraceForm {
        let w = self.field.omega_z();
        let gens = [self.field.one(), w];
        let m = 2 * self.rank;
        let mut gram_z = vec![vec![BigRational::zero(); m]; m];
        for i in 0..self.rank {
            for s in 0..2 {
                for j in 0..self.rank {
                    for t in 0..2 {
                        let v = &(&gens[s] * &self.gram[i][j]) * &gens[t].conjugate();
                        gram_z[2 * i + s][2 * j + t] = v.trace();
                    }
                }
            }
        }
        let det = rat_det(&gram_z);
        let parity_even = gram_z.iter().flatten().all(BigRational::is_integer)
            && (0..m).all(|i| (&gram_z[i][i] / BigRational::from_integer(2.into())).is_integer());
        let (p, n, _) = rat_signature(&gram_z);
        TraceForm {
            gram_z,
            parity_even,
            det,
            signature: (p, n),
        }
    }

    /// Basis of the dual lattice L′ as columns of (1/√D)·(Gᵀ)⁻¹, in
    /// L-coordinates.
    pub fn dual_basis(&self) -> Result<FMat, LatticeError> {
        let inv = f_inverse(&f_transpose(&self.gram)).ok_or(LatticeError::Degenerate)?;
        let s = self
            .field
            .sqrt_disc()
            .inv()
            .expect("sqrt of discriminant is nonzero");
        Ok(inv
            .iter()
            .map(|row| row.iter().map(|x| x * &s).collect())
            .collect())
    }

    /// Membership in L (integral coordinates).
    pub fn in_lattice(&self, x: &[FieldElement]) -> bool {
        x.iter().all(FieldElement::is_integral)
    }

    /// Membership in L′: ⟨x, b_j⟩ ∈ D_F⁻¹ for every basis vector.
    pub fn in_dual(&self, x: &[FieldElement]) -> bool {
        (0..self.rank).all(|j| {
            let mut acc = self.field.zero();
            for i in 0..self.rank {
                acc = &acc + &(&x[i] * &self.gram[i][j]);
            }
            acc.in_inverse_different()
        })
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup, LatticeError> {
        if !self.is_even() {
            return Err(LatticeError::NotIntegral);
        }
        let tf = self.trace_form();
        let gz: IntMat = tf
            .gram_z
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer()).collect())
            .collect();
        let (divs, t) = smith_normal_form(&gz);
        let order: BigInt = divs.iter().product();
        let w = self.field.omega_z();
        let mut elementary_divisors = Vec::new();
        let mut generators = Vec::new();
        let mut h_values = Vec::new();
        for (j, d) in divs.iter().enumerate() {
            if d <= &BigInt::one() {
                continue;
            }
            // Generator: column j of t·diag⁻¹ in trace Z-coordinates.
            let coords: Vec<BigRational> = (0..2 * self.rank)
                .map(|i| BigRational::new(t[i][j].clone(), d.clone()))
                .collect();
            let gen: Vec<FieldElement> = (0..self.rank)
                .map(|i| {
                    &self.field.from_rational(coords[2 * i].clone())
                        + &(&self.field.from_rational(coords[2 * i + 1].clone()) * &w)
                })
                .collect();
            let h = reduce_mod_1(self.norm(&gen));
            elementary_divisors.push(d.clone());
            generators.push(gen);
            h_values.push(h);
        }
        Ok(DiscriminantGroup {
            elementary_divisors,
            generators,
            h_values,
            order,
        })
    }

    /// Enumerate vectors with bounded ω-basis coordinates, optionally with a
    /// prescribed Hermitian norm, in L (default), in L′ (`in_dual`), or in the
    /// coset `coset + L`.  Deterministic lexicographic coordinate order.
    pub fn enumerate_vectors(
        &self,
        norm: Option<&BigRational>,
        box_radius: i64,
        in_dual: bool,
        coset: Option<&[FieldElement]>,
    ) -> Result<Vec<LatticeVector>, LatticeError> {
        assert!(box_radius >= 1);
        let m = self.rank;
        let w = self.field.omega_z();
        // Real generators of the search module.
        let basis: FMat = if in_dual {
            self.dual_basis()?
        } else {
            crate::linalg::f_identity(self.field, m)
        };
        let mut gens: Vec<Vec<FieldElement>> = Vec::with_capacity(2 * m);
        for j in 0..m {
            let col: Vec<FieldElement> = (0..m).map(|i| basis[i][j].clone()).collect();
            let wcol: Vec<FieldElement> = col.iter().map(|x| x * &w).collect();
            gens.push(col);
            gens.push(wcol);
        }
        // Quadratic form Re⟨g_s, g_t⟩ and the coset linear/constant parts.
        let q: Vec<Vec<BigRational>> = (0..2 * m)
            .map(|s| {
                (0..2 * m)
                    .map(|t| self.herm(&gens[s], &gens[t]).trace() / BigRational::from_integer(2.into()))
                    .collect()
            })
            .collect();
        let (lin, cst) = if let Some(beta) = coset {
            let lin: Vec<BigRational> = (0..2 * m)
                .map(|s| self.herm(&gens[s], beta).trace())
                .collect();
            (lin, self.norm(beta))
        } else {
            (vec![BigRational::zero(); 2 * m], BigRational::zero())
        };
        // Scale to integers for the fast filter.
        let mut denom = BigInt::one();
        for x in q.iter().flatten().chain(lin.iter()).chain([&cst]) {
            denom = num::integer::lcm(denom, x.denom().clone());
        }
        let scale = |x: &BigRational| -> i128 {
            let v = x * BigRational::from_integer(denom.clone());
            let t = v.to_integer();
            i128::try_from(&t).expect("scaled coefficient fits i128")
        };
        let qi: Vec<Vec<i128>> = q.iter().map(|r| r.iter().map(&scale).collect()).collect();
        let li: Vec<i128> = lin.iter().map(&scale).collect();
        let ci: i128 = scale(&cst);
        let target: Option<i128> = norm.map(|nv| {
            let v = nv * BigRational::from_integer(denom.clone());
            if v.is_integer() {
                i128::try_from(&v.to_integer()).expect("target fits i128")
            } else {
                // Non-representable norm: pick an impossible odd target.
                i128::MIN
            }
        });

        let dim = 2 * m;
        let mut out = Vec::new();
        let mut c = vec![-box_radius; dim];
        'outer: loop {
            // Evaluate the form.
            let mut val = ci;
            for s in 0..dim {
                if c[s] != 0 {
                    val += li[s] * c[s] as i128;
                    for t in 0..dim {
                        if c[t] != 0 {
                            val += qi[s][t] * c[s] as i128 * c[t] as i128;
                        }
                    }
                }
            }
            let keep = match target {
                Some(tv) => val == tv,
                None => true,
            };
            let nonzero = c.iter().any(|&x| x != 0) || coset.is_some();
            if keep && nonzero {
                let coords = {
                    let mut v = vec![self.field.zero(); m];
                    for s in 0..dim {
                        if c[s] == 0 {
                            continue;
                        }
                        let f = self.field.elem_i64(c[s], 0);
                        for i in 0..m {
                            v[i] = &v[i] + &(&f * &gens[s][i]);
                        }
                    }
                    if let Some(beta) = coset {
                        for i in 0..m {
                            v[i] = &v[i] + &beta[i];
                        }
                    }
                    v
                };
                let primitivity = self.primitivity_of(&coords);
                out.push(LatticeVector { coords, primitivity });
            }
            // Lexicographic increment.
            for s in (0..dim).rev() {
                if c[s] < box_radius {
                    c[s] += 1;
                    continue 'outer;
                }
                c[s] = -box_radius;
            }
            break;
        }
        Ok(out)
    }

    /// All lattice vectors in the coordinate box with 0 < h(x) ≤ max_norm,
    /// in lexicographic coordinate order.  Fast integer filter, exact
    /// reconstruction of survivors.
    pub fn enumerate_norm_in_box(
        &self,
        max_norm: &BigRational,
        box_radius: i64,
    ) -> Result<Vec<LatticeVector>, LatticeError> {
        assert!(box_radius >= 1);
        let m = self.rank;
        let w = self.field.omega_z();
        let mut gens: Vec<Vec<FieldElement>> = Vec::with_capacity(2 * m);
        for j in 0..m {
            let mut col = vec![self.field.zero(); m];
            col[j] = self.field.one();
            let wcol: Vec<FieldElement> = col.iter().map(|x| x * &w).collect();
            gens.push(col);
            gens.push(wcol);
        }
        let q: Vec<Vec<BigRational>> = (0..2 * m)
            .map(|s| {
                (0..2 * m)
                    .map(|t| {
                        self.herm(&gens[s], &gens[t]).trace()
                            / BigRational::from_integer(2.into())
                    })
                    .collect()
            })
            .collect();
        let mut denom = BigInt::one();
        for x in q.iter().flatten().chain([max_norm]) {
            denom = num::integer::lcm(denom, x.denom().clone());
        }
        let scale = |x: &BigRational| -> i128 {
            let v = x * BigRational::from_integer(denom.clone());
            i128::try_from(&v.to_integer()).expect("scaled coefficient fits i128")
        };
        let qi: Vec<Vec<i128>> = q.iter().map(|r| r.iter().map(&scale).collect()).collect();
        let max_scaled = scale(max_norm);
        let dim = 2 * m;
        let mut out = Vec::new();
        let mut c = vec![-box_radius; dim];
        'outer: loop {
            let mut val: i128 = 0;
            for s in 0..dim {
                if c[s] != 0 {
                    for t in 0..dim {
                        if c[t] != 0 {
                            val += qi[s][t] * c[s] as i128 * c[t] as i128;
                        }
                    }
                }
            }
            if val > 0 && val <= max_scaled {
                let coords: Vec<FieldElement> = (0..m)
                    .map(|i| {
                        &self.field.elem_i64(c[2 * i], 0)
                            + &(&self.field.elem_i64(c[2 * i + 1], 0) * &w)
                    })
                    .collect();
                let primitivity = self.primitivity_of(&coords);
                out.push(LatticeVector { coords, primitivity });
            }
            for s in (0..dim).rev() {
                if c[s] < box_radius {
                    c[s] += 1;
                    continue 'outer;
                }
                c[s] = -box_radius;
            }
            break;
        }
        Ok(out)
    }

    fn primitivity_of(&self, coords: &[FieldElement]) -> Primitivity {
        if !self.field.has_class_number_one() || !self.in_lattice(coords) {
            return Primitivity::Unknown;
        }
        match self.is_primitive_coords(coords) {
            Ok(true) => Primitivity::Primitive,
            Ok(false) => Primitivity::Imprimitive,
            Err(_) => Primitivity::Unknown,
        }
    }

    pub fn is_primitive(&self, v: &LatticeVector) -> Result<bool, LatticeError> {
        self.is_primitive_coords(&v.coords)
    }

    /// Content test: the O_F-ideal spanned by the coordinates is the unit
    /// ideal iff the Z-module spanned by {c_j, ω·c_j} has index 1 in O_F.
    pub fn is_primitive_coords(&self, coords: &[FieldElement]) -> Result<bool, LatticeError> {
        if !self.field.has_class_number_one() {
            return Err(LatticeError::ClassNumber(self.field.d()));
        }
        if !self.in_lattice(coords) {
            return Err(LatticeError::NotInLattice);
        }
        let w = self.field.omega_z();
        let mut cols: Vec<[BigInt; 2]> = Vec::new();
        for c in coords {
            for x in [c.clone(), c * &w] {
                let (u, v) = x.omega_coords();
                cols.push([u.to_integer(), v.to_integer()]);
            }
        }
        if cols.iter().all(|c| c[0].is_zero() && c[1].is_zero()) {
            return Ok(false);
        }
        let mat: IntMat = vec![
            cols.iter().map(|c| c[0].clone()).collect(),
            cols.iter().map(|c| c[1].clone()).collect(),
        ];
        Ok(column_span_index(&mat).is_one())
    }

    /// Exact norm enumeration for positive-definite lattices via recursive
    /// quadratic completion (Fincke–Pohst style); no box needed.
    pub fn enumerate_definite(&self, norm: &BigRational) -> Result<Vec<LatticeVector>, LatticeError> {
        let tf = self.trace_form();
        if tf.signature.1 != 0 {
            return Err(LatticeError::Fixture(
                "enumerate_definite requires a positive-definite lattice".into(),
            ));
        }
        let dim = 2 * self.rank;
        // Q(x) = Σ d_i (x_i + Σ_{j>i} u_{ij} x_j)², trace-form normalization.
        let mut a = tf.gram_z.clone();
        let mut d = vec![BigRational::zero(); dim];
        let mut u = vec![vec![BigRational::zero(); dim]; dim];
        for i in 0..dim {
            d[i] = a[i][i].clone();
            for j in i + 1..dim {
                u[i][j] = &a[i][j] / &a[i][i];
            }
            for r in i + 1..dim {
                for c in i + 1..dim {
                    let s = &a[i][r] * &a[i][c] / &a[i][i];
                    a[r][c] -= s;
                }
            }
        }
        let target = norm * BigRational::from_integer(2.into());
        let mut out = Vec::new();
        let mut x = vec![0i64; dim];
        self.definite_rec(&d, &u, &target, dim, &mut x, &mut out);
        out.sort_by_key(|v: &LatticeVector| {
            v.coords.iter().map(FieldElement::lex_key).collect::<Vec<_>>()
        });
        Ok(out)
    }

    fn definite_rec(
        &self,
        d: &[BigRational],
        u: &[Vec<BigRational>],
        budget: &BigRational,
        level: usize,
        x: &mut Vec<i64>,
        out: &mut Vec<LatticeVector>,
    ) {
        if level == 0 {
            if budget.is_zero() && x.iter().any(|&v| v != 0) {
                let w = self.field.omega_z();
                let coords: Vec<FieldElement> = (0..self.rank)
                    .map(|i| {
                        &self.field.elem_i64(x[2 * i], 0)
                            + &(&self.field.elem_i64(x[2 * i + 1], 0) * &w)
                    })
                    .collect();
                let primitivity = self.primitivity_of(&coords);
                out.push(LatticeVector { coords, primitivity });
            }
            return;
        }
        let i = level - 1;
        // center = Σ_{j>i} u_{ij} x_j ; need d_i (x_i + center)² ≤ budget.
        let mut center = BigRational::zero();
        for j in i + 1..x.len() {
            center += &u[i][j] * BigRational::from_integer(x[j].into());
        }
        let bound = budget / &d[i];
        // |x_i + center| ≤ sqrt(bound): iterate integers in that window.
        let lo = rational_sqrt_upper(&bound);
        let lo_i = (-&center - &lo).ceil().to_integer();
        let hi_i = (-&center + &lo).floor().to_integer();
        let mut v = lo_i.clone();
        while v <= hi_i {
            let vi = i64::try_from(&v).expect("coordinate fits i64");
            x[i] = vi;
            let off = BigRational::from_integer(v.clone()) + &center;
            let used = &d[i] * &off * &off;
            if &used <= budget {
                let rem = budget - &used;
                self.definite_rec(d, u, &rem, i, x, out);
            }
            v += 1;
        }
        x[i] = 0;
    }
}

/// A rational upper bound on √x used for search windows; exact candidates are
/// re-checked against the budget, so a slightly loose bound is harmless.
fn rational_sqrt_upper(x: &BigRational) -> BigRational {
    if x.is_negative() || x.is_zero() {
        return BigRational::zero();
    }
    // √x = √(numer·denom)/denom; floor-sqrt + 1 over-approximates.
    let num = x.numer() * x.denom();
    BigRational::new(num.sqrt() + BigInt::one(), x.denom().clone())
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
pub struct LatticeFixture {
    pub d: i64,
    pub gram: Vec<Vec<String>>,
    pub name: String,
    #[serde(default)]
    pub expected_trace_form: Option<String>,
}

pub fn lattice_from_fixture(doc: &LatticeFixture) -> Result<HermitianLattice, LatticeError> {
    let k = QuadraticField::new(doc.d)?;
    let gram: FMat = doc
        .gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_element(k, s))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    HermitianLattice::new(k, gram, Some(doc.name.clone()))
}

pub fn load_lattice(path: &std::path::Path) -> Result<HermitianLattice, LatticeError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LatticeError::Fixture(format!("{}: {e}", path.display())))?;
    let doc: LatticeFixture = serde_json::from_str(&text)
        .map_err(|e| LatticeError::Fixture(format!("{}: {e}", path.display())))?;
    lattice_from_fixture(&doc)
}

// ---------------------------------------------------------------------------
// Named integral comparison lattices (for expected_trace_form checks)
// ---------------------------------------------------------------------------

fn cartan(name: &str) -> Option<IntMat> {
    let int = |v: i64| BigInt::from(v);
    let mat = |rows: Vec<Vec<i64>>| -> IntMat {
        rows.into_iter()
            .map(|r| r.into_iter().map(int).collect())
            .collect()
    };
    Some(match name {
        "U" => mat(vec![vec![0, 1], vec![1, 0]]),
        "A1" => mat(vec![vec![2]]),
        "A2" => mat(vec![vec![2, -1], vec![-1, 2]]),
        "D4" => dn(4),
        "D6" => dn(6),
        "D8" => dn(8),
        "E6" => mat(vec![
            vec![2, -1, 0, 0, 0, 0],
            vec![-1, 2, -1, 0, 0, 0],
            vec![0, -1, 2, -1, 0, -1],
            vec![0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, -1, 2, 0],
            vec![0, 0, -1, 0, 0, 2],
        ]),
        "E8" => mat(vec![
            vec![2, -1, 0, 0, 0, 0, 0, 0],
            vec![-1, 2, -1, 0, 0, 0, 0, 0],
            vec![0, -1, 2, -1, 0, 0, 0, 0],
            vec![0, 0, -1, 2, -1, 0, 0, 0],
            vec![0, 0, 0, -1, 2, -1, 0, -1],
            vec![0, 0, 0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, 0, 0, -1, 2, 0],
            vec![0, 0, 0, 0, -1, 0, 0, 2],
        ]),
        _ => return None,
    })
}

fn dn(n: usize) -> IntMat {
    let mut m: IntMat = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        m[i][i] = BigInt::from(2);
    }
    for i in 0..n - 2 {
        m[i][i + 1] = BigInt::from(-1);
        m[i + 1][i] = BigInt::from(-1);
    }
    m[n - 3][n - 1] = BigInt::from(-1);
    m[n - 1][n - 3] = BigInt::from(-1);
    m
}

/// Gram matrix of a named orthogonal sum like `"2U+2A1"`, `"U+U(2)+D4"`,
/// `"2U(3)+A2"` or `"2U+A2(2)"` (leading count, optional `(m)` rescale).
pub fn named_lattice_gram(name: &str) -> Option<IntMat> {
    let mut blocks: Vec<IntMat> = Vec::new();
    for part in name.split('+') {
        let part = part.trim();
        let (count, rest) = match part.char_indices().find(|(_, c)| c.is_ascii_alphabetic()) {
            Some((0, _)) => (1usize, part),
            Some((i, _)) => (part[..i].parse().ok()?, &part[i..]),
            None => return None,
        };
        let (base, scale) = match rest.find('(') {
            Some(i) => {
                let m: i64 = rest[i + 1..rest.len() - 1].parse().ok()?;
                (&rest[..i], m)
            }
            None => (rest, 1),
        };
        let mut g = cartan(base)?;
        if scale != 1 {
            for row in g.iter_mut() {
                for x in row.iter_mut() {
                    *x *= scale;
                }
            }
        }
        for _ in 0..count {
            blocks.push(g.clone());
        }
    }
    let dim: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out: IntMat = vec![vec![BigInt::zero(); dim]; dim];
    let mut off = 0;
    for b in blocks {
        let k = b.len();
        for i in 0..k {
            for j in 0..k {
                out[off + i][off + j] = b[i][j].clone();
            }
        }
        off += k;
    }
    Some(out)
}

/// Invariant-matching comparison of the trace form against a named lattice:
/// rank, signature, parity, determinant and elementary divisors.
pub fn trace_form_matches(l: &HermitianLattice, name: &str) -> Result<bool, LatticeError> {
    let expected = named_lattice_gram(name)
        .ok_or_else(|| LatticeError::Fixture(format!("unknown lattice name {name:?}")))?;
    let tf = l.trace_form();
    if tf.gram_z.len() != expected.len() {
        return Ok(false);
    }
    let er: RatMat = expected
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let (ep, en, _) = rat_signature(&er);
    if tf.signature != (ep, en) {
        return Ok(false);
    }
    if tf.det != rat_det(&er) {
        return Ok(false);
    }
    let e_even = (0..er.len())
        .all(|i| (&er[i][i] / BigRational::from_integer(2.into())).is_integer());
    if tf.parity_even != e_even {
        return Ok(false);
    }
    let gz: IntMat = tf
        .gram_z
        .iter()
        .map(|r| r.iter().map(|x| x.to_integer()).collect())
        .collect();
    let actual_divs: Vec<BigInt> = smith_normal_form(&gz)
        .0
        .into_iter()
        .filter(|d| d > &BigInt::one())
        .collect();
    let expected_divs: Vec<BigInt> = smith_normal_form(&expected)
        .0
        .into_iter()
        .filter(|d| d > &BigInt::one())
        .collect();
    Ok(actual_divs == expected_divs)
}
