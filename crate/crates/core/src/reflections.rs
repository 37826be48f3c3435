//! Unitary reflections σ_{r,α} and their membership in U(L), the
//! discriminant kernel Ũ(L), and the associated real reflections in
//! O⁺(L_Z) — decided both by the classification criteria and by brute
//! force on matrices, so the two can be compared.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

use crate::field::{FieldElement, UnitElement};
use crate::hermlat::{HermitianLattice, LatticeError, Primitivity};
use crate::linalg::{f_identity, f_mul, FMat, RatMat};

#[derive(Debug, Error)]
pub enum ReflectionError {
    #[error("reflection vector must have nonzero norm")]
    IsotropicVector,
    #[error("alpha = 1 does not define a reflection")]
    TrivialUnit,
    #[error("lattice error: {0}")]
    Lattice(#[from] LatticeError),
}

/// A reflection datum (r, α) with r of positive norm and α a nontrivial unit.
#[derive(Debug, Clone)]
pub struct ReflectionSpec {
    pub r: Vec<FieldElement>,
    pub alpha: UnitElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthogonalPartner {
    /// σ_r ∈ O⁺(L_Z).
    SigmaR,
    /// σ_{(1+i)r}, σ_{(1+ω)r} or σ_{√d·r} ∈ O⁺(L_Z).
    SigmaScaledR,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub in_unitary: bool,
    pub in_kernel: bool,
    pub orthogonal_partner: OrthogonalPartner,
    /// Which classification clause decided the verdict (lemma path), or
    /// "matrix" for the brute-force path.
    pub lemma_clause: String,
}

/// The matrix of σ_{r,α}: x ↦ x − (1−α)·⟨x,r⟩/⟨r,r⟩·r, in lattice coordinates.
pub fn reflection_matrix(
    l: &HermitianLattice,
    spec: &ReflectionSpec,
) -> Result<FMat, ReflectionError> {
    let k = l.field();
    let t = l.herm(&spec.r, &spec.r);
    if t.is_zero() {
        return Err(ReflectionError::IsotropicVector);
    }
    if spec.alpha.value() == &k.one() {
        return Err(ReflectionError::TrivialUnit);
    }
    let m = l.rank();
    let c = &(&k.one() - spec.alpha.value()) / &t;
    let mut out = f_identity(k, m);
    for j in 0..m {
        let e_j: Vec<FieldElement> = (0..m)
            .map(|i| if i == j { k.one() } else { k.zero() })
            .collect();
        let f = &c * &l.herm(&e_j, &spec.r);
        for i in 0..m {
            out[i][j] = &out[i][j] - &(&f * &spec.r[i]);
        }
    }
    Ok(out)
}

fn scale_vec(v: &[FieldElement], c: &FieldElement) -> Vec<FieldElement> {
    v.iter().map(|x| x * c).collect()
}

/// Trace-lattice coordinates of an F-coordinate vector.
fn trace_coords(l: &HermitianLattice, v: &[FieldElement]) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(2 * l.rank());
    for x in v {
        let (a, b) = x.omega_coords();
        out.push(a);
        out.push(b);
    }
    out
}

/// Does the real reflection σ_v preserve L_Z?  (For positive-norm v this is
/// membership in O⁺(L_Z).)
fn real_reflection_in_oplus(gram_z: &RatMat, v: &[BigRational]) -> bool {
    let dim = gram_z.len();
    let gv: Vec<BigRational> = (0..dim)
        .map(|i| (0..dim).map(|j| &gram_z[i][j] * &v[j]).sum())
        .collect();
    let vv: BigRational = v.iter().zip(&gv).map(|(a, b)| a * b).sum();
    if !vv.is_positive() {
        return false;
    }
    let two = BigRational::from_integer(2.into());
    for j in 0..dim {
        let c = &two * &gv[j] / &vv;
        for vi in v {
            if !(&c * vi).is_integer() {
                return false;
            }
        }
    }
    true
}

/// The lemma's scaling element for the field: 1+i, 1+ω, or √d.
fn scaling_element(l: &HermitianLattice) -> FieldElement {
    let k = l.field();
    match k.d() {
        // 1+i = 3+ζ, 1+ω = 3+ζ.
        -1 | -3 => k.elem_i64(3, 1),
        _ => k.sqrt_d(),
    }
}

fn partner_of(l: &HermitianLattice, spec: &ReflectionSpec) -> OrthogonalPartner {
    let gz = l.trace_form().gram_z;
    let plain = real_reflection_in_oplus(&gz, &trace_coords(l, &spec.r));
    let scaled_vec = scale_vec(&spec.r, &scaling_element(l));
    let scaled = real_reflection_in_oplus(&gz, &trace_coords(l, &scaled_vec));
    // Prefer the real reflection the classification names for this (d, α).
    let scaled_first = match (l.field().d(), spec.alpha.order()) {
        (-1, 4) | (-3, 6) => true,
        (d, 2) if d != -1 && d != -3 && d.rem_euclid(4) != 1 => true,
        _ => false,
    };
    match (scaled_first, plain, scaled) {
        (true, _, true) => OrthogonalPartner::SigmaScaledR,
        (true, true, false) => OrthogonalPartner::SigmaR,
        (false, true, _) => OrthogonalPartner::SigmaR,
        (false, false, true) => OrthogonalPartner::SigmaScaledR,
        (_, false, false) => OrthogonalPartner::None,
    }
}

/// Brute-force membership: matrix integrality for U(L), plus γx − x ∈ L on
/// dual generators for the discriminant kernel.
pub fn membership(
    l: &HermitianLattice,
    spec: &ReflectionSpec,
) -> Result<MembershipVerdict, ReflectionError> {
    let mat = reflection_matrix(l, spec)?;
    let in_unitary = mat.iter().flatten().all(FieldElement::is_integral);
    let in_kernel = in_unitary && {
        let dual = l.dual_basis()?;
        let m = l.rank();
        let mut ok = true;
        'cols: for j in 0..m {
            let x: Vec<FieldElement> = (0..m).map(|i| dual[i][j].clone()).collect();
            let gx = crate::linalg::f_mul_vec(&mat, &x);
            for i in 0..m {
                if !(&gx[i] - &x[i]).is_integral() {
                    ok = false;
                    break 'cols;
                }
            }
        }
        ok
    };
    Ok(MembershipVerdict {
        in_unitary,
        in_kernel,
        orthogonal_partner: partner_of(l, spec),
        lemma_clause: "matrix".into(),
    })
}

/// Positive generator of the ideal {(x, w) : x ∈ L_Z} ⊆ Z for an integral
/// lattice, where (−,−) is the trace form and w is given in F-coordinates.
fn pairing_ideal_generator(l: &HermitianLattice, w: &[FieldElement]) -> BigInt {
    let k = l.field();
    let omega = k.omega_z();
    let mut g = BigInt::zero();
    let m = l.rank();
    for j in 0..m {
        for s in 0..2 {
            let mut x = vec![k.zero(); m];
            x[j] = if s == 0 { k.one() } else { omega.clone() };
            let val = l.herm(&x, w).trace();
            assert!(val.is_integer(), "pairing ideal requires an integral lattice");
            g = g.gcd(&val.to_integer());
        }
    }
    g
}

/// Membership decided purely from the classification criteria
/// (dual-membership and ideal conditions); no reflection matrix is formed.
pub fn classify_by_lemma(
    l: &HermitianLattice,
    spec: &ReflectionSpec,
) -> Result<MembershipVerdict, ReflectionError> {
    let k = l.field();
    let d = k.d();
    let t = l.herm(&spec.r, &spec.r);
    if t.is_zero() {
        return Err(ReflectionError::IsotropicVector);
    }
    let tr = t.as_rational().expect("Hermitian norm is rational").clone();
    let ord = spec.alpha.order();
    let r_over_t: Vec<FieldElement> = spec.r.iter().map(|x| x / &t).collect();
    let (in_unitary, clause): (bool, String) = match (d, ord) {
        (-1, 2) => (
            l.in_dual(&r_over_t),
            "d=-1: sigma_{r,-1} in U(L) iff r/<r,r> in L'".into(),
        ),
        (-1, 4) => {
            let s = k.elem_i64(3, 1); // 1+i
            let two_t = &k.elem_i64(2, 0) * &t;
            let v: Vec<FieldElement> = spec.r.iter().map(|x| &(x * &s) / &two_t).collect();
            (
                l.in_dual(&v),
                "d=-1: sigma_{r,i} in U(L) iff (1+i)r/(2<r,r>) in L'".into(),
            )
        }
        (-3, 3) => (
            l.in_dual(&r_over_t),
            "d=-3: sigma_{r,-w} in U(L) iff sigma_r in O+(L_Z), i.e. r/<r,r> in L'".into(),
        ),
        (-3, 6) => {
            let s = k.elem_i64(3, 1); // 1+ω
            let three_t = &k.elem_i64(3, 0) * &t;
            let v: Vec<FieldElement> = spec.r.iter().map(|x| &(x * &s) / &three_t).collect();
            (
                l.in_dual(&v),
                "d=-3: sigma_{r,w} in U(L) iff (1+w)r/(3<r,r>) in L'".into(),
            )
        }
        (-3, 2) => {
            // (r,r) = 2a, (L,(1+ω)r) = bZ; in U(L) iff 3a | 2b, i.e. 3a = b
            // or 3a = 2b.  The latter case (a = 2t, b = 3t) has no orthogonal
            // partner.
            let a = tr.clone();
            let s = k.elem_i64(3, 1);
            let w = scale_vec(&spec.r, &s);
            let b = BigRational::from_integer(pairing_ideal_generator(l, &w));
            let three_a = BigRational::from_integer(3.into()) * &a;
            let two_b = BigRational::from_integer(2.into()) * &b;
            let in_u = !b.is_zero() && (three_a == b || three_a == two_b);
            let clause = if three_a == two_b {
                "d=-3: sigma_{r,-1} in U(L) via (r,r)=4t, (L,(1+w)r)=3tZ (no orthogonal partner)"
                    .into()
            } else {
                "d=-3: sigma_{r,-1} in U(L) iff 3a|2b for (r,r)=2a, (L,(1+w)r)=bZ".into()
            };
            (in_u, clause)
        }
        (_, 2) if d.rem_euclid(4) == 1 => {
            // d ≡ 1 mod 4, d ≠ −3: (r,r) = 2a, (L, √d r) = bZ; in U(L) iff
            // |d|·a = b or |d|·a = 2b.
            let a = tr.clone();
            let w = scale_vec(&spec.r, &k.sqrt_d());
            let b = BigRational::from_integer(pairing_ideal_generator(l, &w));
            let da = BigRational::from_integer(d.abs().into()) * &a;
            let two_b = BigRational::from_integer(2.into()) * &b;
            let in_u = !b.is_zero() && (da == b || da == two_b);
            (
                in_u,
                "d=1 mod 4: sigma_{r,-1} in U(L) iff ad=2b or ad=b for (r,r)=2a, (L,sqrt(d)r)=bZ"
                    .into(),
            )
        }
        (_, 2) => {
            // d ≡ 2,3 mod 4, d ≠ −1: σ_{r,−1} ∈ U(L) iff σ_{√d·r} ∈ O⁺(L_Z),
            // i.e. r/(√d·<r,r>) ∈ L'.
            let st = &k.sqrt_d() * &t;
            let v: Vec<FieldElement> = spec.r.iter().map(|x| x / &st).collect();
            (
                l.in_dual(&v),
                "d=2,3 mod 4: sigma_{r,-1} in U(L) iff sigma_{sqrt(d)r} in O+(L_Z)".into(),
            )
        }
        _ => (false, format!("no unit of order {ord} over d={d}")),
    };
    // Kernel criterion: <r,r> = 1 with α = −1 (d = −1), α of order 3
    // (d = −3); no reflections in the kernel for any other field.
    let in_kernel = in_unitary
        && tr.is_one()
        && match d {
            -1 => ord == 2,
            -3 => ord == 3,
            _ => false,
        };
    Ok(MembershipVerdict {
        in_unitary,
        in_kernel,
        orthogonal_partner: partner_of(l, spec),
        lemma_clause: clause,
    })
}

/// One scanned mirror class: the canonical vector with all nontrivial units,
/// each verdict computed by both paths.
#[derive(Debug, Clone)]
pub struct ScanEntry {
    pub alpha: UnitElement,
    pub lemma: MembershipVerdict,
    pub brute: MembershipVerdict,
}

impl ScanEntry {
    pub fn agree(&self) -> bool {
        self.lemma.in_unitary == self.brute.in_unitary
            && self.lemma.in_kernel == self.brute.in_kernel
    }
}

#[derive(Debug, Clone)]
pub struct ScanRecord {
    pub r: Vec<FieldElement>,
    pub norm: BigRational,
    pub entries: Vec<ScanEntry>,
}

impl ScanRecord {
    pub fn agree(&self) -> bool {
        self.entries.iter().all(ScanEntry::agree)
    }

    /// Orders of units α with σ_{r,α} ∈ U(L).
    pub fn orders_present(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self
            .entries
            .iter()
            .filter(|e| e.brute.in_unitary)
            .map(|e| e.alpha.order())
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn in_kernel(&self) -> bool {
        self.entries.iter().any(|e| e.brute.in_kernel)
    }

    /// Clauses that certified a membership, for auditability.
    pub fn lemma_clauses(&self) -> Vec<String> {
        self.entries
            .iter()
            .filter(|e| e.lemma.in_unitary)
            .map(|e| e.lemma.lemma_clause.clone())
            .collect()
    }
}

fn canonical_unit_rep(l: &HermitianLattice, r: &[FieldElement]) -> Vec<FieldElement> {
    let mut best: Option<Vec<FieldElement>> = None;
    for u in l.field().units() {
        let cand = scale_vec(r, u.value());
        let better = match &best {
            None => true,
            Some(b) => {
                let kb: Vec<_> = b.iter().map(FieldElement::lex_key).collect();
                let kc: Vec<_> = cand.iter().map(FieldElement::lex_key).collect();
                kc < kb
            }
        };
        if better {
            best = Some(cand);
        }
    }
    best.expect("unit group nonempty")
}

/// Scan all primitive positive-norm vectors in a coordinate box, one record
/// per unit orbit, with every verdict double-computed.
pub fn scan_reflections(
    l: &HermitianLattice,
    norm_bound: &BigRational,
    box_radius: i64,
) -> Result<Vec<ScanRecord>, ReflectionError> {
    let mut seen: std::collections::BTreeSet<Vec<(BigRational, BigRational)>> =
        std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let units = l.field().units();
    for v in l.enumerate_norm_in_box(norm_bound, box_radius)? {
        if v.primitivity != Primitivity::Primitive {
            continue;
        }
        let r = canonical_unit_rep(l, &v.coords);
        let key: Vec<_> = r.iter().map(FieldElement::lex_key).collect();
        if !seen.insert(key) {
            continue;
        }
        let norm = l.norm(&r);
        let mut entries = Vec::new();
        for u in &units {
            if u.order() == 1 {
                continue;
            }
            let spec = ReflectionSpec {
                r: r.clone(),
                alpha: u.clone(),
            };
            let lemma = classify_by_lemma(l, &spec)?;
            let brute = membership(l, &spec)?;
            entries.push(ScanEntry {
                alpha: u.clone(),
                lemma,
                brute,
            });
        }
        out.push(ScanRecord { r, norm, entries });
    }
    Ok(out)
}

/// Order of a matrix under repeated multiplication, bounded by `max`.
pub fn matrix_order(mat: &FMat, max: u32) -> Option<u32> {
    let k = mat[0][0].field();
    let id = f_identity(k, mat.len());
    let mut p = mat.clone();
    for ord in 1..=max {
        if p == id {
            return Some(ord);
        }
        p = f_mul(&p, mat);
    }
    None
}
