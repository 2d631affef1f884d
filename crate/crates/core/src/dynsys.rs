//! Concrete endomorphism models over the rationals: split and
//! factor-permuting polynomial self-maps of a product of projective lines.
//! The morphism condition is certified per factor by an exact Sylvester
//! resultant, orbits are iterated with gcd reduction at every step, and the
//! pullback action on the rank-k divisor lattice comes straight from the
//! degree bookkeeping.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlin::{bareiss_det, certified_spectral_radius, IntMatrix, RatInterval};
use crate::{linalg, Int, Rat};

#[derive(Debug, Error)]
pub enum DynError {
    #[error("components of factor {factor} share a projective root (zero resultant); not a morphism")]
    NotAMorphism { factor: usize },
    #[error("component {factor} has degree zero")]
    DegreeZero { factor: usize },
    #[error("perm is not a permutation of the factors")]
    InvalidPermutation,
    #[error("factor subset is not preserved by the permutation")]
    NotEquivariant,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// A homogeneous binary form of formal degree `len − 1`; `coeffs[i]` is the
/// coefficient of `x^i y^(d−i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm {
    coeffs: Vec<Int>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Int>) -> Self {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        BinaryForm { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &Int, y: &Int) -> Int {
        let d = self.degree();
        let mut xp = vec![Int::one()];
        let mut yp = vec![Int::one()];
        for i in 1..=d {
            xp.push(&xp[i - 1] * x);
            yp.push(&yp[i - 1] * y);
        }
        let mut acc = Int::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &xp[i] * &yp[d - i];
            }
        }
        acc
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![Int::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm::new(out)
    }

    pub fn pow(&self, e: usize) -> BinaryForm {
        let mut acc = BinaryForm::new(vec![Int::one()]);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitution of two forms of common degree for the variables, giving a
    /// form of degree `self.degree() · inner degree`.
    pub fn compose(&self, x_form: &BinaryForm, y_form: &BinaryForm) -> BinaryForm {
        assert_eq!(x_form.degree(), y_form.degree());
        let d = self.degree();
        let mut acc = BinaryForm::new(vec![Int::zero(); d * x_form.degree() + 1]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = x_form.pow(i).mul(&y_form.pow(d - i));
            for (k, t) in term.coeffs.iter().enumerate() {
                acc.coeffs[k] += c * t;
            }
        }
        acc
    }
}

/// Resultant of two binary forms at their formal degrees, by a fraction-free
/// Sylvester determinant. Nonzero exactly when the forms share no projective
/// root (including the point at infinity, seen through vanishing leading
/// coefficients).
pub fn resultant(f: &BinaryForm, g: &BinaryForm) -> Int {
    let d1 = f.degree();
    let d2 = g.degree();
    let n = d1 + d2;
    if n == 0 {
        return Int::one();
    }
    bareiss_det(n, |i, j| {
        if i < d2 {
            // Row of f coefficients, descending by x-degree, shifted by i.
            let idx = d1 as i64 - (j as i64 - i as i64);
            if (0..=d1 as i64).contains(&idx) {
                f.coeffs[idx as usize].clone()
            } else {
                Int::zero()
            }
        } else {
            let s = i - d2;
            let idx = d2 as i64 - (j as i64 - s as i64);
            if (0..=d2 as i64).contains(&idx) {
                g.coeffs[idx as usize].clone()
            } else {
                Int::zero()
            }
        }
    })
}

/// A rational point of (ℙ¹)^k in canonical form: each coordinate pair is
/// gcd-reduced with either `y > 0`, or `y = 0` and `x > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    coords: Vec<(Int, Int)>,
}

impl ProjPoint {
    pub fn new(coords: Vec<(Int, Int)>) -> Self {
        let coords = coords
            .into_iter()
            .map(|(x, y)| {
                assert!(
                    !(x.is_zero() && y.is_zero()),
                    "projective coordinates cannot both vanish"
                );
                let g = x.abs().gcd(&y.abs());
                let (mut x, mut y) = (x / &g, y / &g);
                let flip = y.is_negative() || (y.is_zero() && x.is_negative());
                if flip {
                    x = -x;
                    y = -y;
                }
                (x, y)
            })
            .collect();
        ProjPoint { coords }
    }

    pub fn from_i64(pairs: &[(i64, i64)]) -> Self {
        ProjPoint::new(pairs.iter().map(|&(x, y)| (Int::from(x), Int::from(y))).collect())
    }

    pub fn factors(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[(Int, Int)] {
        &self.coords
    }

    /// Per-coordinate `max(|x|, |y|)`, the multiplicative factor height.
    pub fn factor_height_int(&self, i: usize) -> Int {
        let (x, y) = &self.coords[i];
        x.abs().max(y.abs())
    }

    /// Largest bit length over all coordinates, the budget currency.
    pub fn max_coord_bits(&self) -> u64 {
        self.coords
            .iter()
            .flat_map(|(x, y)| [x.bits(), y.bits()])
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(x, y)| format!("[{x}:{y}]"))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A divisor class on (ℙ¹)^k in the hyperplane basis: an integer multidegree.
/// Nef means all entries nonnegative, ample all positive; negative entries
/// are legal and carry empty section spaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorClass {
    pub multidegree: Vec<Int>,
}

impl DivisorClass {
    pub fn new(multidegree: Vec<Int>) -> Self {
        DivisorClass { multidegree }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        DivisorClass::new(entries.iter().map(|&a| Int::from(a)).collect())
    }

    pub fn is_nef(&self) -> bool {
        self.multidegree.iter().all(|a| !a.is_negative())
    }

    pub fn is_ample(&self) -> bool {
        self.multidegree.iter().all(|a| a.is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.multidegree.iter().all(|a| a.is_zero())
    }
}

/// A surjective polynomial self-map of (ℙ¹)^k: output factor `i` is a pair of
/// coprime forms of common degree `d_i` in the coordinates of input factor
/// `perm[i]`.
#[derive(Clone, Debug)]
pub struct ModelSystem {
    k: usize,
    perm: Vec<usize>,
    components: Vec<(BinaryForm, BinaryForm)>,
    pullback: IntMatrix,
}

/// Validates the morphism condition per factor (exact nonzero resultant),
/// rejects degree-zero components, and derives the pullback matrix
/// `f*H_i = d_i · H_{perm(i)}`.
pub fn build_system(
    perm: Vec<usize>,
    components: Vec<(BinaryForm, BinaryForm)>,
) -> Result<ModelSystem, DynError> {
    let k = components.len();
    if perm.len() != k || k == 0 {
        return Err(DynError::InvalidPermutation);
    }
    let mut seen = vec![false; k];
    for &p in &perm {
        if p >= k || seen[p] {
            return Err(DynError::InvalidPermutation);
        }
        seen[p] = true;
    }
    for (i, (f, g)) in components.iter().enumerate() {
        if f.degree() != g.degree() {
            return Err(DynError::DimensionMismatch(format!(
                "components of factor {i} have unequal degrees"
            )));
        }
        if f.degree() == 0 {
            return Err(DynError::DegreeZero { factor: i });
        }
        if resultant(f, g).is_zero() {
            return Err(DynError::NotAMorphism { factor: i });
        }
    }
    let mut pullback = IntMatrix::zero(k);
    for (i, (f, _)) in components.iter().enumerate() {
        pullback.set(perm[i], i, Int::from(f.degree() as i64));
    }
    Ok(ModelSystem { k, perm, components, pullback })
}

impl ModelSystem {
    pub fn factors(&self) -> usize {
        self.k
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn components(&self) -> &[(BinaryForm, BinaryForm)] {
        &self.components
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.components.iter().map(|(f, _)| f.degree()).collect()
    }

    /// The pullback action on divisor multidegrees.
    pub fn pullback(&self) -> &IntMatrix {
        &self.pullback
    }

    pub fn pullback_class(&self, d: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self.pullback.mul_int_vec(&d.multidegree))
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        assert_eq!(p.factors(), self.k, "point/system factor mismatch");
        let coords = (0..self.k)
            .map(|i| {
                let (x, y) = &p.coords()[self.perm[i]];
                let (f, g) = &self.components[i];
                (f.eval(x, y), g.eval(x, y))
            })
            .collect();
        ProjPoint::new(coords)
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ModelSystem) -> Result<ModelSystem, DynError> {
        assert_eq!(self.k, other.k);
        let perm: Vec<usize> = (0..self.k).map(|i| other.perm[self.perm[i]]).collect();
        let components: Vec<(BinaryForm, BinaryForm)> = (0..self.k)
            .map(|i| {
                let (fx, fy) = &self.components[i];
                let (gx, gy) = &other.components[self.perm[i]];
                (fx.compose(gx, gy), fy.compose(gx, gy))
            })
            .collect();
        build_system(perm, components)
    }
}

/// An orbit prefix with a truncation marker; hitting the digit budget is a
/// normal outcome, not a failure.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<ProjPoint>,
    pub truncated: bool,
}

/// Exact orbit prefix `P, f(P), …` with gcd reduction at every step, stopping
/// once any coordinate would exceed `digit_budget` decimal digits (compared
/// through bit lengths, `digits ≈ bits · log10 2`, never undercounting).
pub fn iterate(f: &ModelSystem, p: &ProjPoint, n: usize, digit_budget: u64) -> Orbit {
    let over_budget =
        |pt: &ProjPoint| -> bool { pt.max_coord_bits() * 30103 > digit_budget * 100000 };
    let mut points = vec![p.clone()];
    let mut truncated = false;
    for _ in 0..n {
        let next = f.apply(points.last().unwrap());
        if over_budget(&next) {
            truncated = true;
            break;
        }
        points.push(next);
    }
    Orbit { points, truncated }
}

/// Monomial basis of the space of global sections of a divisor class: all
/// exponent vectors `0 ≤ e_i ≤ a_i` (exponent of `x_i`; the `y_i` exponent is
/// `a_i − e_i`). Empty when some entry is negative.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub multidegree: Vec<Int>,
    pub monomials: Vec<Vec<u32>>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }
}

pub fn section_space(d: &DivisorClass) -> SectionSpace {
    if !d.is_nef() {
        return SectionSpace { multidegree: d.multidegree.clone(), monomials: Vec::new() };
    }
    let bounds: Vec<u32> = d
        .multidegree
        .iter()
        .map(|a| u32::try_from(a).expect("multidegree too large for a section basis"))
        .collect();
    let mut monomials = vec![Vec::new()];
    for &b in &bounds {
        let mut next = Vec::with_capacity(monomials.len() * (b as usize + 1));
        for m in &monomials {
            for e in 0..=b {
                let mut m2 = m.clone();
                m2.push(e);
                next.push(m2);
            }
        }
        monomials = next;
    }
    SectionSpace { multidegree: d.multidegree.clone(), monomials }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseLocus {
    Empty,
    Everything,
}

/// On this model family every effective class is basepoint-free and the
/// stable base locus equals the base locus: sections exist iff the class is
/// nef, and then the monomial sections already separate everything.
pub fn base_locus(d: &DivisorClass) -> BaseLocus {
    if d.is_nef() {
        BaseLocus::Empty
    } else {
        BaseLocus::Everything
    }
}

/// A section expressed by coefficients against the monomial basis of its
/// section space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub class: DivisorClass,
    pub coeffs: Vec<Int>,
}

/// The matrix of the pullback map on sections, columns indexed by the
/// monomial basis of `H⁰(D)` and rows by the basis of `H⁰(f*D)`, together
/// with its exact rank over the rationals.
pub struct SubstitutionMatrix {
    pub source: SectionSpace,
    pub target: SectionSpace,
    pub columns: Vec<Vec<Int>>,
    pub rank: usize,
}

pub fn substitution_matrix(f: &ModelSystem, d: &DivisorClass) -> SubstitutionMatrix {
    let source = section_space(d);
    let target_class = f.pullback_class(d);
    let target = section_space(&target_class);
    let mut columns = Vec::with_capacity(source.dim());
    for mono in &source.monomials {
        columns.push(pullback_monomial(f, d, mono, &target));
    }
    let rank = if source.dim() == 0 || target.dim() == 0 {
        0
    } else {
        let rows: Vec<Vec<Rat>> = (0..target.dim())
            .map(|r| columns.iter().map(|c| Rat::from(c[r].clone())).collect())
            .collect();
        linalg::rank(rows)
    };
    SubstitutionMatrix { source, target, columns, rank }
}

/// Coefficients of `f*(monomial)` in the target monomial basis. The product
/// over factors splits because each input factor feeds exactly one output
/// factor.
fn pullback_monomial(
    f: &ModelSystem,
    d: &DivisorClass,
    mono: &[u32],
    target: &SectionSpace,
) -> Vec<Int> {
    let k = f.factors();
    // Per input factor j, the substituted univariate form.
    let mut factor_forms: Vec<BinaryForm> = vec![BinaryForm::new(vec![Int::one()]); k];
    for i in 0..k {
        let j = f.perm()[i];
        let (fx, fy) = &f.components()[i];
        let a_i = usize::try_from(&d.multidegree[i]).expect("nef multidegree");
        let e_i = mono[i] as usize;
        factor_forms[j] = fx.pow(e_i).mul(&fy.pow(a_i - e_i));
    }
    let mut out = vec![Int::zero(); target.dim()];
    for (row, tmono) in target.monomials.iter().enumerate() {
        let mut c = Int::one();
        for j in 0..k {
            let e = tmono[j] as usize;
            c *= &factor_forms[j].coeffs()[e];
            if c.is_zero() {
                break;
            }
        }
        out[row] = c;
    }
    out
}

/// Pulls a section back along the system, verifying injectivity of the full
/// substitution map (exact column rank) on the way.
pub fn pullback_section(
    f: &ModelSystem,
    section: &Section,
) -> Result<Section, DynError> {
    let sub = substitution_matrix(f, &section.class);
    if section.coeffs.len() != sub.source.dim() {
        return Err(DynError::DimensionMismatch(format!(
            "section has {} coefficients but the basis has {} monomials",
            section.coeffs.len(),
            sub.source.dim()
        )));
    }
    if sub.source.dim() > 0 {
        debug_assert_eq!(sub.rank, sub.source.dim(), "pullback on sections must inject");
    }
    let mut coeffs = vec![Int::zero(); sub.target.dim()];
    for (col, c) in sub.columns.iter().zip(&section.coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, v) in coeffs.iter_mut().zip(col) {
            *o += c * v;
        }
    }
    Ok(Section {
        class: DivisorClass::new(sub.target.multidegree.clone()),
        coeffs,
    })
}

#[derive(Clone, Debug)]
pub struct RelativeDegreeReport {
    pub full: RatInterval,
    pub subsystem: RatInterval,
    pub complement: RatInterval,
    /// Whether the certified intervals confirm that the full spectral radius
    /// is the maximum of the block radii.
    pub max_matches: bool,
}

/// For a system whose permutation preserves a factor subset, compares the
/// spectral radius of the full pullback with the maximum over the two
/// diagonal blocks, through certified intervals of the requested width.
pub fn relative_degree_check(
    f: &ModelSystem,
    subset: &[usize],
    width: &Rat,
) -> Result<RelativeDegreeReport, DynError> {
    let k = f.factors();
    let mut in_subset = vec![false; k];
    for &i in subset {
        if i >= k {
            return Err(DynError::DimensionMismatch(format!("factor index {i} out of range")));
        }
        in_subset[i] = true;
    }
    if subset.is_empty() || subset.len() == k {
        return Err(DynError::DimensionMismatch(
            "subset must be a proper nonempty factor subset".into(),
        ));
    }
    for i in 0..k {
        if in_subset[i] != in_subset[f.perm()[i]] {
            return Err(DynError::NotEquivariant);
        }
    }
    let block = |members: &[usize]| -> IntMatrix {
        let mut m = IntMatrix::zero(members.len());
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate() {
                m.set(a, b, f.pullback().get(i, j).clone());
            }
        }
        m
    };
    let sub_idx: Vec<usize> = (0..k).filter(|&i| in_subset[i]).collect();
    let comp_idx: Vec<usize> = (0..k).filter(|&i| !in_subset[i]).collect();
    let full = certified_spectral_radius(f.pullback(), width)
        .map_err(|e| DynError::DimensionMismatch(e.to_string()))?;
    let subsystem = certified_spectral_radius(&block(&sub_idx), width)
        .map_err(|e| DynError::DimensionMismatch(e.to_string()))?;
    let complement = certified_spectral_radius(&block(&comp_idx), width)
        .map_err(|e| DynError::DimensionMismatch(e.to_string()))?;
    let max_lo = subsystem.lo.clone().max(complement.lo.clone());
    let max_hi = subsystem.hi.clone().max(complement.hi.clone());
    let max_matches = max_lo <= full.hi && full.lo <= max_hi;
    Ok(RelativeDegreeReport { full, subsystem, complement, max_matches })
}

/// Convenience constructors for common test systems.
pub mod systems {
    use super::*;

    /// The split power map `(x, y) ↦ (x^a, y^b)` on (ℙ¹)².
    pub fn split_powers(a: usize, b: usize) -> ModelSystem {
        let mono = |d: usize| {
            let mut c = vec![Int::zero(); d + 1];
            c[d] = Int::one();
            let mut yd = vec![Int::zero(); d + 1];
            yd[0] = Int::one();
            (BinaryForm::new(c), BinaryForm::new(yd))
        };
        build_system(vec![0, 1], vec![mono(a), mono(b)]).unwrap()
    }

    /// The swap map `(x, y) ↦ (y, x^2)`.
    pub fn swap_square() -> ModelSystem {
        let id = (BinaryForm::from_i64(&[0, 1]), BinaryForm::from_i64(&[1, 0]));
        let sq = (BinaryForm::from_i64(&[0, 0, 1]), BinaryForm::from_i64(&[1, 0, 0]));
        build_system(vec![1, 0], vec![id, sq]).unwrap()
    }

    /// The squaring map on ℙ¹.
    pub fn squaring() -> ModelSystem {
        let sq = (BinaryForm::from_i64(&[0, 0, 1]), BinaryForm::from_i64(&[1, 0, 0]));
        build_system(vec![0], vec![sq]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_split_system_pullback_is_diagonal() {
        let f = systems::split_powers(2, 3);
        assert_eq!(f.pullback(), &IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
    }

    #[test]
    fn build_swap_system_pullback() {
        let f = systems::swap_square();
        assert_eq!(f.pullback(), &IntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]));
    }

    #[test]
    fn resultant_accepts_coprime_pair() {
        // F = x² + y², G = y²: the only common candidate [1:0] misses F.
        let f = BinaryForm::from_i64(&[1, 0, 1]);
        let g = BinaryForm::from_i64(&[1, 0, 0]);
        assert!(!resultant(&f, &g).is_zero());
        let sys = build_system(vec![0], vec![(f, g)]);
        assert!(sys.is_ok());
    }

    #[test]
    fn resultant_rejects_common_root() {
        // F = xy and G = y² share [1:0].
        let f = BinaryForm::from_i64(&[0, 1, 0]);
        let g = BinaryForm::from_i64(&[1, 0, 0]);
        assert!(resultant(&f, &g).is_zero());
        match build_system(vec![0], vec![(f, g)]) {
            Err(DynError::NotAMorphism { factor: 0 }) => {}
            other => panic!("expected NotAMorphism, got {other:?}"),
        }
    }

    #[test]
    fn iterate_split_powers() {
        let f = systems::split_powers(2, 3);
        let p = ProjPoint::from_i64(&[(2, 1), (2, 1)]);
        let orbit = iterate(&f, &p, 2, 1000);
        assert!(!orbit.truncated);
        assert_eq!(orbit.points[2], ProjPoint::from_i64(&[(16, 1), (512, 1)]));
    }

    #[test]
    fn iterate_fixed_point() {
        let f = systems::squaring();
        let p = ProjPoint::from_i64(&[(1, 1)]);
        let orbit = iterate(&f, &p, 5, 1000);
        assert!(orbit.points.iter().all(|q| *q == p));
    }

    #[test]
    fn iterate_swap_map_orbit() {
        let f = systems::swap_square();
        let p = ProjPoint::from_i64(&[(2, 1), (3, 1)]);
        let orbit = iterate(&f, &p, 3, 1000);
        let affine: Vec<(i64, i64)> = vec![(3, 4), (4, 9), (9, 16)];
        for (n, (a, b)) in affine.iter().enumerate() {
            assert_eq!(orbit.points[n + 1], ProjPoint::from_i64(&[(*a, 1), (*b, 1)]));
        }
    }

    #[test]
    fn iterate_respects_budget() {
        let f = systems::squaring();
        let p = ProjPoint::from_i64(&[(10, 1)]);
        // 10^(2^n): 5 digits allows up to 10^4.
        let orbit = iterate(&f, &p, 10, 5);
        assert!(orbit.truncated);
        assert_eq!(orbit.points.len(), 3);
    }

    #[test]
    fn section_space_dimensions() {
        assert_eq!(section_space(&DivisorClass::from_i64(&[1, 1])).dim(), 4);
        assert_eq!(section_space(&DivisorClass::from_i64(&[-1, 0])).dim(), 0);
        assert_eq!(section_space(&DivisorClass::from_i64(&[2, 3])).dim(), 12);
    }

    #[test]
    fn base_locus_cases() {
        assert_eq!(base_locus(&DivisorClass::from_i64(&[1, 1])), BaseLocus::Empty);
        assert_eq!(base_locus(&DivisorClass::from_i64(&[0, 0])), BaseLocus::Empty);
        assert_eq!(base_locus(&DivisorClass::from_i64(&[0, -2])), BaseLocus::Everything);
    }

    #[test]
    fn pullback_of_x_through_squaring() {
        let f = systems::squaring();
        // D = (1), s = x: basis of H⁰(D) is [y, x] (exponent 0 then 1).
        let s = Section {
            class: DivisorClass::from_i64(&[1]),
            coeffs: vec![Int::zero(), Int::one()],
        };
        let fs = pullback_section(&f, &s).unwrap();
        assert_eq!(fs.class, DivisorClass::from_i64(&[2]));
        // x ↦ x²: coefficient on the exponent-2 monomial.
        assert_eq!(fs.coeffs, vec![Int::zero(), Int::zero(), Int::one()]);
    }

    #[test]
    fn pullback_through_swap_sends_x_to_y() {
        let f = systems::swap_square();
        // D = (1,0): basis { y₁, x₁ }; s = x₁.
        let s = Section {
            class: DivisorClass::from_i64(&[1, 0]),
            coeffs: vec![Int::zero(), Int::one()],
        };
        let fs = pullback_section(&f, &s).unwrap();
        assert_eq!(fs.class, DivisorClass::from_i64(&[0, 1]));
        // x₁ ∘ f = x₂ (first output reads the second input factor with degree 1).
        assert_eq!(fs.coeffs, vec![Int::zero(), Int::one()]);
    }

    #[test]
    fn substitution_rank_for_squaring() {
        let f = systems::squaring();
        let sub = substitution_matrix(&f, &DivisorClass::from_i64(&[1]));
        assert_eq!(sub.source.dim(), 2);
        assert_eq!(sub.target.dim(), 3);
        assert_eq!(sub.rank, 2);
    }

    #[test]
    fn composition_pullback_is_contravariant() {
        let f = systems::swap_square();
        let g = systems::split_powers(2, 3);
        let h = f.compose(&g).unwrap();
        let expected = g.pullback().mul(f.pullback());
        assert_eq!(h.pullback(), &expected);
        // And the composed system actually computes f(g(P)).
        let p = ProjPoint::from_i64(&[(2, 1), (3, 1)]);
        assert_eq!(h.apply(&p), f.apply(&g.apply(&p)));
    }

    #[test]
    fn relative_degree_split() {
        let w = Rat::new(Int::one(), Int::from(1u64 << 30));
        let f = systems::split_powers(2, 3);
        let rep = relative_degree_check(&f, &[1], &w).unwrap();
        assert!(rep.max_matches);
        assert!(rep.full.contains(&Rat::from(Int::from(3))));
    }

    #[test]
    fn relative_degree_swap_with_extra_factor() {
        // (x, y, z) ↦ (y, x², z⁵): subset {2} splits off the z factor.
        let id = (BinaryForm::from_i64(&[0, 1]), BinaryForm::from_i64(&[1, 0]));
        let sq = (BinaryForm::from_i64(&[0, 0, 1]), BinaryForm::from_i64(&[1, 0, 0]));
        let p5 = (
            BinaryForm::from_i64(&[0, 0, 0, 0, 0, 1]),
            BinaryForm::from_i64(&[1, 0, 0, 0, 0, 0]),
        );
        let f = build_system(vec![1, 0, 2], vec![id, sq, p5]).unwrap();
        let w = Rat::new(Int::one(), Int::from(1u64 << 30));
        let rep = relative_degree_check(&f, &[2], &w).unwrap();
        assert!(rep.max_matches);
        assert!(rep.full.contains(&Rat::from(Int::from(5))));
    }

    #[test]
    fn relative_degree_rejects_mixed_subset() {
        let f = systems::swap_square();
        let w = Rat::new(Int::one(), Int::from(1u64 << 30));
        assert!(matches!(
            relative_degree_check(&f, &[0], &w),
            Err(DynError::NotEquivariant)
        ));
    }
}
