//! Eigenvalue extraction for exact integer matrices.
//!
//! Rational eigenvalues are found exactly (they are integers, since
//! characteristic polynomials are monic) together with geometric
//! multiplicities and Jordan block sizes from ranks of powers. Irrational
//! eigenvalues are never represented symbolically: real ones become certified
//! isolating intervals with rational endpoints, complex conjugate pairs
//! become certified modulus intervals. The spectral radius is always returned
//! as a certified interval, intersected with the Cauchy bound and the
//! row/column norm bounds.

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::exactlin::matrix::IntMatrix;
use crate::exactlin::poly::{
    integer_roots, isolate_real_roots, refine_root, squarefree_part, yun_decomposition, IntPoly,
};
use crate::exactlin::LinError;
use crate::{Int, Rat};

/// A closed interval with exact rational endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rat) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn intersect(&self, other: &RatInterval) -> Option<RatInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(RatInterval { lo, hi })
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / Rat::from(Int::from(2));
        rat_to_f64(&mid)
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Scale down huge operands together so the ratio survives conversion.
    let nb = num.bits().max(1);
    let db = den.bits().max(1);
    let shift = nb.max(db).saturating_sub(900);
    let n = (num >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
    let d = (den >> shift).to_string().parse::<f64>().unwrap_or(f64::NAN);
    n / d
}

/// Lower rational bracket of `x^(1/n)` for `x ≥ 0`, with `2^-bits` resolution.
pub fn nth_root_lower(x: &Rat, n: u32, bits: u32) -> Rat {
    assert!(!x.is_negative());
    let s = Int::one() << bits;
    let sn = num_traits::pow::pow(s.clone(), n as usize);
    let t = (x.numer() * sn) / x.denom();
    let u = t.nth_root(n);
    Rat::new(u, s)
}

/// Upper rational bracket of `x^(1/n)`.
pub fn nth_root_upper(x: &Rat, n: u32, bits: u32) -> Rat {
    assert!(!x.is_negative());
    let s = Int::one() << bits;
    let sn = num_traits::pow::pow(s.clone(), n as usize);
    let t = (x.numer() * sn) / x.denom();
    let u = t.nth_root(n) + Int::one();
    Rat::new(u, s)
}

/// Certified enclosure of `x^(1/n)`.
pub fn nth_root_interval(x: &Rat, n: u32, bits: u32) -> RatInterval {
    RatInterval::new(nth_root_lower(x, n, bits), nth_root_upper(x, n, bits))
}

fn sqrt_lower(x: &Rat, bits: u32) -> Rat {
    nth_root_lower(x, 2, bits)
}

fn sqrt_upper(x: &Rat, bits: u32) -> Rat {
    nth_root_upper(x, 2, bits)
}

pub fn sqrt_interval(iv: &RatInterval, bits: u32) -> RatInterval {
    RatInterval::new(sqrt_lower(&iv.lo, bits), sqrt_upper(&iv.hi, bits))
}

/// Outward enclosure of the `2^k`-th root of a nonnegative interval, by
/// iterated directed square roots.
fn pow2k_root_interval(iv: &RatInterval, k: u32, bits: u32) -> RatInterval {
    let mut out = iv.clone();
    for _ in 0..k {
        out = sqrt_interval(&out, bits);
    }
    out
}

/// Fujiwara-type upper bound for the maximum root modulus of a polynomial.
fn max_modulus_upper_bound(p: &IntPoly, bits: u32) -> Rat {
    let m = p.degree().expect("nonzero polynomial");
    assert!(m >= 1);
    let lc = p.leading().unwrap().abs();
    let mut best = Rat::zero();
    for j in 1..=m {
        let c = p.coeff(m - j).abs();
        if c.is_zero() {
            continue;
        }
        let cand = nth_root_upper(&Rat::new(c, lc.clone()), j as u32, bits);
        if cand > best {
            best = cand;
        }
    }
    best * Rat::from(Int::from(2))
}

/// Elementary-symmetric-function lower bound for the maximum root modulus:
/// the j-th coefficient is a sum of C(m,j) root products of size j.
fn max_modulus_lower_bound(p: &IntPoly, bits: u32) -> Rat {
    let m = p.degree().expect("nonzero polynomial");
    let lc = p.leading().unwrap().abs();
    let mut best = Rat::zero();
    for j in 1..=m {
        let c = p.coeff(m - j).abs();
        if c.is_zero() {
            continue;
        }
        let base = Rat::new(c, &lc * binomial(Int::from(m as i64), Int::from(j as i64)));
        let cand = nth_root_lower(&base, j as u32, bits);
        if cand > best {
            best = cand;
        }
    }
    best
}

/// Certified enclosures of the maximum and minimum root moduli of a
/// polynomial with nonzero constant coefficient, by Graeffe root squaring.
/// Width improves geometrically in `log` scale with the iteration count, so
/// very small widths are out of reach; callers fall back to exact routes or
/// surface `IntervalSeparationFailure`.
pub fn graeffe_modulus_bounds(
    p: &IntPoly,
    target_width: &Rat,
    k_max: u32,
) -> (RatInterval, RatInterval) {
    assert!(!p.coeff(0).is_zero(), "expects nonzero constant coefficient");
    let bits = 96;
    let mut q = p.primitive_part();
    let mut best_max: Option<RatInterval> = None;
    let mut best_min: Option<RatInterval> = None;
    for k in 0..=k_max {
        let rev = q.reverse();
        let max_iv = pow2k_root_interval(
            &RatInterval::new(
                max_modulus_lower_bound(&q, bits),
                max_modulus_upper_bound(&q, bits),
            ),
            k,
            bits,
        );
        let inv_iv = pow2k_root_interval(
            &RatInterval::new(
                max_modulus_lower_bound(&rev, bits),
                max_modulus_upper_bound(&rev, bits),
            ),
            k,
            bits,
        );
        // min modulus of q = 1 / max modulus of the reversed polynomial.
        let min_iv = RatInterval::new(inv_iv.hi.recip(), inv_iv.lo.recip());
        best_max = Some(match &best_max {
            None => max_iv,
            Some(b) => b.intersect(&max_iv).unwrap_or_else(|| b.clone()),
        });
        best_min = Some(match &best_min {
            None => min_iv,
            Some(b) => b.intersect(&min_iv).unwrap_or_else(|| b.clone()),
        });
        let done = best_max.as_ref().unwrap().width() <= *target_width
            && best_min.as_ref().unwrap().width() <= *target_width;
        if done || k == k_max {
            break;
        }
        q = q.graeffe_step().primitive_part();
    }
    (best_max.unwrap(), best_min.unwrap())
}

/// An eigenvalue record: exact when rational, otherwise a certified interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenvalueEstimate {
    Rational(Rat),
    /// Isolating interval of a single irrational real eigenvalue.
    RealInterval(RatInterval),
    /// Certified common modulus enclosure of a set of non-real eigenvalues.
    ComplexModulus(RatInterval),
}

impl EigenvalueEstimate {
    /// Certified enclosure of |λ|.
    pub fn modulus_interval(&self) -> RatInterval {
        match self {
            EigenvalueEstimate::Rational(v) => RatInterval::point(v.abs()),
            EigenvalueEstimate::RealInterval(iv) => {
                if !iv.lo.is_negative() {
                    iv.clone()
                } else if !iv.hi.is_positive() {
                    RatInterval::new(-iv.hi.clone(), -iv.lo.clone())
                } else {
                    RatInterval::new(Rat::zero(), iv.hi.clone().max(-iv.lo.clone()))
                }
            }
            EigenvalueEstimate::ComplexModulus(iv) => iv.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralEntry {
    pub value: EigenvalueEstimate,
    pub algebraic_multiplicity: usize,
    pub geometric_multiplicity: Option<usize>,
    pub jordan_block_sizes: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    pub entries: Vec<SpectralEntry>,
    pub spectral_radius: RatInterval,
}

impl Spectrum {
    /// The exact rational eigenvalues with their data.
    pub fn rational_eigenvalues(&self) -> impl Iterator<Item = (&Rat, &SpectralEntry)> {
        self.entries.iter().filter_map(|e| match &e.value {
            EigenvalueEstimate::Rational(v) => Some((v, e)),
            _ => None,
        })
    }

    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.algebraic_multiplicity).sum()
    }

    /// True when every eigenvalue is rational and geometric multiplicities
    /// match algebraic ones.
    pub fn is_diagonalizable_over_q(&self) -> bool {
        self.entries.iter().all(|e| {
            matches!(e.value, EigenvalueEstimate::Rational(_))
                && e.geometric_multiplicity == Some(e.algebraic_multiplicity)
        })
    }
}

/// Jordan data of a single rational eigenvalue, from ranks of powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanData {
    pub algebraic_multiplicity: usize,
    pub geometric_multiplicity: usize,
    /// Block sizes in decreasing order; empty when λ is not an eigenvalue.
    pub block_sizes: Vec<usize>,
}

pub fn jordan_data(m: &IntMatrix, lambda: &Rat) -> JordanData {
    let n = m.dim();
    let shifted = m.shifted_by_rational(lambda);
    let mut ranks = vec![n];
    let mut power = IntMatrix::identity(n);
    loop {
        power = power.mul(&shifted);
        let r = power.rank();
        let stable = *ranks.last().unwrap() == r;
        ranks.push(r);
        if stable || ranks.len() > n + 1 {
            break;
        }
    }
    let alg = n - *ranks.last().unwrap();
    // d_j = #blocks of size ≥ j.
    let mut at_least = Vec::new();
    for j in 1..ranks.len() {
        let d = ranks[j - 1] - ranks[j];
        if d == 0 {
            break;
        }
        at_least.push(d);
    }
    let mut block_sizes = Vec::new();
    for j in 0..at_least.len() {
        let next = at_least.get(j + 1).copied().unwrap_or(0);
        for _ in 0..(at_least[j] - next) {
            block_sizes.push(j + 1);
        }
    }
    block_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let geom = at_least.first().copied().unwrap_or(0);
    debug_assert_eq!(block_sizes.iter().sum::<usize>(), alg);
    JordanData {
        algebraic_multiplicity: alg,
        geometric_multiplicity: geom,
        block_sizes,
    }
}

fn bits_for_width(width: &Rat) -> u32 {
    let mut bits = 8u32;
    let mut v = Rat::new(Int::one(), Int::from(256));
    let half = Rat::new(Int::one(), Int::from(2));
    while &v > width && bits < 4096 {
        v *= &half;
        bits += 1;
    }
    bits + 4
}

/// True when the polynomial is `a·x^m + c` with exactly two nonzero terms.
fn binomial_shape(p: &IntPoly) -> Option<(usize, Rat)> {
    let m = p.degree()?;
    if m < 1 || p.coeff(0).is_zero() {
        return None;
    }
    for j in 1..m {
        if !p.coeff(j).is_zero() {
            return None;
        }
    }
    // All m roots have modulus |c0/lc|^(1/m).
    Some((m, Rat::new(p.coeff(0).abs(), p.leading().unwrap().abs())))
}

fn refine_to_exclude_zero(p: &IntPoly, iv: (Rat, Rat)) -> (Rat, Rat) {
    let (mut lo, mut hi) = iv;
    let two = Rat::from(Int::from(2));
    while lo.is_negative() && hi.is_positive() {
        let half_width = (&hi - &lo) / &two;
        let (l, h) = refine_root(p, lo, hi, &half_width);
        lo = l;
        hi = h;
        if lo == hi {
            break;
        }
    }
    (lo, hi)
}

/// The maximum iteration count for Graeffe fallbacks; beyond this the
/// coefficient sizes outgrow their usefulness.
const GRAEFFE_K_MAX: u32 = 14;

/// Extracts the full spectrum of an integer matrix.
///
/// Rational (hence integer) eigenvalues come with exact multiplicities and
/// Jordan block sizes. Remaining real eigenvalues are isolated into disjoint
/// intervals of width at most `width`; non-real eigenvalues are grouped into
/// conjugate clusters with certified modulus enclosures. Fails with
/// `IntervalSeparationFailure` when a cluster of two or more conjugate pairs
/// cannot be enclosed at the requested width.
pub fn rational_spectrum(m: &IntMatrix, width: &Rat) -> Result<Spectrum, LinError> {
    let n = m.dim();
    let p = m.char_poly();
    let bits = bits_for_width(width);
    let mut entries: Vec<SpectralEntry> = Vec::new();

    let roots = integer_roots(&p);
    let mut rest = p.clone();
    for (r, mult) in &roots {
        for _ in 0..*mult {
            rest = rest.deflate_root(r);
        }
        let jd = jordan_data(m, &Rat::from(r.clone()));
        debug_assert_eq!(jd.algebraic_multiplicity, *mult);
        entries.push(SpectralEntry {
            value: EigenvalueEstimate::Rational(Rat::from(r.clone())),
            algebraic_multiplicity: *mult,
            geometric_multiplicity: Some(jd.geometric_multiplicity),
            jordan_block_sizes: Some(jd.block_sizes),
        });
    }

    if rest.degree().map_or(false, |d| d > 0) {
        for (factor, mult) in yun_decomposition(&rest) {
            let deg = factor.degree().unwrap();
            let real = isolate_real_roots(&factor, width);
            let real_entries: Vec<(Rat, Rat)> = real
                .into_iter()
                .map(|iv| refine_to_exclude_zero(&factor, iv))
                .collect();
            let complex_count = deg - real_entries.len();
            for (lo, hi) in &real_entries {
                entries.push(SpectralEntry {
                    value: EigenvalueEstimate::RealInterval(RatInterval::new(
                        lo.clone(),
                        hi.clone(),
                    )),
                    algebraic_multiplicity: mult,
                    geometric_multiplicity: None,
                    jordan_block_sizes: None,
                });
            }
            if complex_count > 0 {
                assert!(complex_count % 2 == 0, "non-real roots come in pairs");
                let modulus = if let Some((deg_b, base)) = binomial_shape(&factor) {
                    nth_root_interval(&base, deg_b as u32, bits)
                } else if complex_count == 2 {
                    // |pair|^2 = |c0/lc| / Π |real roots|, certified by
                    // interval division then an outward square root.
                    let total = Rat::new(
                        factor.coeff(0).abs(),
                        factor.leading().unwrap().abs(),
                    );
                    let mut lo = total.clone();
                    let mut hi = total;
                    for (rlo, rhi) in &real_entries {
                        let (alo, ahi) = if rlo.is_negative() {
                            (-rhi.clone(), -rlo.clone())
                        } else {
                            (rlo.clone(), rhi.clone())
                        };
                        // Dividing [lo,hi] by the modulus interval [alo,ahi].
                        lo /= &ahi;
                        hi /= &alo;
                    }
                    sqrt_interval(&RatInterval::new(lo, hi), bits)
                } else {
                    let (max_iv, min_iv) =
                        graeffe_modulus_bounds(&factor, width, GRAEFFE_K_MAX);
                    let enclosure = RatInterval::new(min_iv.lo.clone(), max_iv.hi.clone());
                    if enclosure.width() > *width {
                        return Err(LinError::IntervalSeparationFailure {
                            requested: width.to_string(),
                            achieved: enclosure.width().to_string(),
                        });
                    }
                    enclosure
                };
                entries.push(SpectralEntry {
                    value: EigenvalueEstimate::ComplexModulus(modulus),
                    algebraic_multiplicity: complex_count * mult,
                    geometric_multiplicity: None,
                    jordan_block_sizes: None,
                });
            }
        }
    }

    sort_entries(&mut entries);
    debug_assert_eq!(entries.iter().map(|e| e.algebraic_multiplicity).sum::<usize>(), n);

    let spectral_radius = radius_from_entries(m, &p, &entries);
    Ok(Spectrum { entries, spectral_radius })
}

/// Entries sorted by descending certified modulus; rational values come
/// before intervals when the moduli tie.
fn sort_entries(entries: &mut [SpectralEntry]) {
    entries.sort_by(|a, b| {
        let ma = a.value.modulus_interval();
        let mb = b.value.modulus_interval();
        mb.hi
            .cmp(&ma.hi)
            .then_with(|| mb.lo.cmp(&ma.lo))
            .then_with(|| kind_rank(&a.value).cmp(&kind_rank(&b.value)))
    });
}

fn kind_rank(v: &EigenvalueEstimate) -> u8 {
    match v {
        EigenvalueEstimate::Rational(_) => 0,
        EigenvalueEstimate::RealInterval(_) => 1,
        EigenvalueEstimate::ComplexModulus(_) => 2,
    }
}

fn radius_from_entries(m: &IntMatrix, p: &IntPoly, entries: &[SpectralEntry]) -> RatInterval {
    let n = m.dim();
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    for e in entries {
        let iv = e.value.modulus_interval();
        if iv.lo > lo {
            lo = iv.lo;
        }
        if iv.hi > hi {
            hi = iv.hi;
        }
    }
    // ρ ≥ |det|^(1/n).
    let det = m.det().abs();
    if !det.is_zero() {
        let det_lower = nth_root_lower(&Rat::from(det), n as u32, 64);
        if det_lower > lo {
            lo = det_lower;
        }
    }
    // ρ ≤ min(row norm, column norm, Cauchy bound).
    let mut outer = p.cauchy_bound();
    for rows in [true, false] {
        let mut norm = Rat::zero();
        for i in 0..n {
            let mut s = Int::zero();
            for j in 0..n {
                s += if rows { m.get(i, j).abs() } else { m.get(j, i).abs() };
            }
            let s = Rat::from(s);
            if s > norm {
                norm = s;
            }
        }
        if norm < outer {
            outer = norm;
        }
    }
    if outer < hi {
        hi = outer;
    }
    debug_assert!(lo <= hi, "inconsistent radius bounds");
    RatInterval::new(lo, hi)
}

/// Verdict of the equal-modulus test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SameModulusVerdict {
    AllEqual,
    NotAllEqual,
    Inconclusive,
}

/// A proven statement `modulus^exponent = value` about a set of eigenvalues.
#[derive(Clone, Debug)]
struct ModulusCertificate {
    exponent: usize,
    value: Rat,
}

impl ModulusCertificate {
    fn equals(&self, other: &ModulusCertificate) -> bool {
        // m1 = m2  ⟺  v1^(e2) = v2^(e1) for positive moduli.
        let a = num_traits::pow::pow(self.value.clone(), other.exponent);
        let b = num_traits::pow::pow(other.value.clone(), self.exponent);
        a == b
    }

    fn interval(&self, bits: u32) -> RatInterval {
        nth_root_interval(&self.value, self.exponent as u32, bits)
    }
}

/// Decides whether every eigenvalue of `m` has the same modulus.
///
/// Exact certificates are produced whenever the characteristic polynomial
/// decomposes into rational roots, quadratics, and binomial factors; the
/// general leftover is compared through certified Graeffe intervals, with
/// `AllEqual` claimed only when the common enclosure is narrower than
/// `width_budget` and `Inconclusive` returned when the intervals overlap
/// ambiguously.
pub fn same_modulus_test(m: &IntMatrix, width_budget: &Rat) -> SameModulusVerdict {
    let n = m.dim();
    let p = m.char_poly();
    let zeros = p.order_at_zero();
    if zeros == n {
        return SameModulusVerdict::AllEqual;
    }
    if zeros > 0 {
        // Zero is an eigenvalue together with at least one nonzero root.
        return SameModulusVerdict::NotAllEqual;
    }

    let mut certs: Vec<ModulusCertificate> = Vec::new();
    let mut intervals: Vec<RatInterval> = Vec::new();

    let roots = integer_roots(&p);
    let mut rest = p.clone();
    for (r, mult) in &roots {
        for _ in 0..*mult {
            rest = rest.deflate_root(r);
        }
        certs.push(ModulusCertificate { exponent: 1, value: Rat::from(r.abs()) });
    }

    if rest.degree().map_or(false, |d| d > 0) {
        let w = squarefree_part(&rest);
        match w.degree() {
            Some(2) => {
                let a = w.coeff(2);
                let b = w.coeff(1);
                let c = w.coeff(0);
                let disc = &b * &b - Int::from(4) * &a * &c;
                if disc.is_negative() {
                    certs.push(ModulusCertificate {
                        exponent: 2,
                        value: Rat::new(c.abs(), a.abs()),
                    });
                } else if b.is_zero() {
                    // Roots ±sqrt(−c/a) share a modulus.
                    certs.push(ModulusCertificate {
                        exponent: 2,
                        value: Rat::new(c.abs(), a.abs()),
                    });
                } else {
                    // Two distinct real roots that are not negatives of each
                    // other: moduli provably differ.
                    return SameModulusVerdict::NotAllEqual;
                }
            }
            _ => {
                if let Some((deg_b, base)) = binomial_shape(&w) {
                    certs.push(ModulusCertificate { exponent: deg_b, value: base });
                } else {
                    let (max_iv, min_iv) =
                        graeffe_modulus_bounds(&w, width_budget, GRAEFFE_K_MAX);
                    // Two roots of w provably differ in modulus.
                    if max_iv.lo > min_iv.hi {
                        return SameModulusVerdict::NotAllEqual;
                    }
                    intervals.push(RatInterval::new(min_iv.lo.clone(), max_iv.hi.clone()));
                }
            }
        }
    }

    for i in 1..certs.len() {
        if !certs[i].equals(&certs[0]) {
            return SameModulusVerdict::NotAllEqual;
        }
    }
    if intervals.is_empty() {
        return SameModulusVerdict::AllEqual;
    }

    let bits = bits_for_width(width_budget);
    for c in &certs {
        intervals.push(c.interval(bits));
    }
    // Certified separation: some lower endpoint above some upper endpoint.
    let max_lo = intervals.iter().map(|iv| iv.lo.clone()).max().unwrap();
    let min_hi = intervals.iter().map(|iv| iv.hi.clone()).min().unwrap();
    if max_lo > min_hi {
        return SameModulusVerdict::NotAllEqual;
    }
    let lo = intervals.iter().map(|iv| iv.lo.clone()).min().unwrap();
    let hi = intervals.iter().map(|iv| iv.hi.clone()).max().unwrap();
    if &hi - &lo <= *width_budget {
        SameModulusVerdict::AllEqual
    } else {
        SameModulusVerdict::Inconclusive
    }
}

/// Certified spectral radius enclosure at the requested interval width.
pub fn certified_spectral_radius(m: &IntMatrix, width: &Rat) -> Result<RatInterval, LinError> {
    Ok(rational_spectrum(m, width)?.spectral_radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::matrix::IntMatrix;

    fn q(a: i64) -> Rat {
        Rat::from(Int::from(a))
    }

    fn default_width() -> Rat {
        Rat::new(Int::one(), Int::one() << 40)
    }

    #[test]
    fn spectrum_of_diagonal() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = rational_spectrum(&m, &default_width()).unwrap();
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.entries[0].value, EigenvalueEstimate::Rational(q(3)));
        assert_eq!(s.entries[0].jordan_block_sizes, Some(vec![1]));
        assert_eq!(s.entries[1].value, EigenvalueEstimate::Rational(q(2)));
        assert_eq!(s.spectral_radius, RatInterval::point(q(3)));
    }

    #[test]
    fn spectrum_of_jordan_block() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![0, 2]]);
        let s = rational_spectrum(&m, &default_width()).unwrap();
        assert_eq!(s.entries.len(), 1);
        let e = &s.entries[0];
        assert_eq!(e.value, EigenvalueEstimate::Rational(q(2)));
        assert_eq!(e.algebraic_multiplicity, 2);
        assert_eq!(e.geometric_multiplicity, Some(1));
        assert_eq!(e.jordan_block_sizes, Some(vec![2]));
        assert_eq!(s.spectral_radius, RatInterval::point(q(2)));
    }

    #[test]
    fn spectrum_of_swap_map() {
        // Roots ±√2; the radius must land inside [1.414, 1.415].
        let m = IntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]);
        let s = rational_spectrum(&m, &default_width()).unwrap();
        assert_eq!(s.entries.len(), 2);
        for e in &s.entries {
            assert!(matches!(e.value, EigenvalueEstimate::RealInterval(_)));
        }
        let r = &s.spectral_radius;
        assert!(r.lo >= Rat::new(Int::from(1414), Int::from(1000)));
        assert!(r.hi <= Rat::new(Int::from(1415), Int::from(1000)));
    }

    #[test]
    fn same_modulus_examples() {
        let scalar = IntMatrix::scalar(3, &Int::from(2));
        assert_eq!(
            same_modulus_test(&scalar, &default_width()),
            SameModulusVerdict::AllEqual
        );
        let diag = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(
            same_modulus_test(&diag, &default_width()),
            SameModulusVerdict::NotAllEqual
        );
        let swap = IntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]);
        assert_eq!(
            same_modulus_test(&swap, &default_width()),
            SameModulusVerdict::AllEqual
        );
    }

    #[test]
    fn same_modulus_nilpotent_and_mixed() {
        let nil = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(
            same_modulus_test(&nil, &default_width()),
            SameModulusVerdict::AllEqual
        );
        let mixed = IntMatrix::from_rows(&[vec![0, 1], vec![0, 1]]);
        assert_eq!(
            same_modulus_test(&mixed, &default_width()),
            SameModulusVerdict::NotAllEqual
        );
    }

    #[test]
    fn graeffe_bounds_bracket_known_radius() {
        // x^2 − 3x + 2: roots 1 and 2.
        let p = IntPoly::from_i64(&[2, -3, 1]);
        let w = Rat::new(Int::one(), Int::from(1000));
        let (max_iv, min_iv) = graeffe_modulus_bounds(&p, &w, 14);
        assert!(max_iv.contains(&q(2)));
        assert!(min_iv.contains(&q(1)));
        assert!(max_iv.lo > min_iv.hi);
    }

    #[test]
    fn jordan_data_for_nontrivial_block_structure() {
        // Two blocks for eigenvalue 5: sizes 2 and 1.
        let m = IntMatrix::from_rows(&[
            vec![5, 1, 0],
            vec![0, 5, 0],
            vec![0, 0, 5],
        ]);
        let jd = jordan_data(&m, &q(5));
        assert_eq!(jd.algebraic_multiplicity, 3);
        assert_eq!(jd.geometric_multiplicity, 2);
        assert_eq!(jd.block_sizes, vec![2, 1]);
    }
}
