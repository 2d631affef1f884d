//! Dense univariate polynomials with exact integer or rational coefficients,
//! plus the root machinery the spectrum code relies on: squarefree
//! decomposition, Sturm-sequence real-root isolation, and exact extraction of
//! integer roots of monic polynomials.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, Rat};

/// Integer polynomial, coefficients ascending by degree, trailing zeros
/// stripped (empty vector = zero polynomial).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn x_power(k: usize) -> Self {
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = Int::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    pub fn eval_int(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Int::from(i as i64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Synthetic division by `x − r` for an integer root `r`; panics if `r`
    /// is not a root, so callers verify first.
    pub fn deflate_root(&self, r: &Int) -> IntPoly {
        let n = self.coeffs.len();
        assert!(n >= 2, "cannot deflate a constant");
        let mut out = vec![Int::zero(); n - 1];
        let mut carry = Int::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry;
            if i == 0 {
                assert!(v.is_zero(), "deflate_root called with a non-root");
            } else {
                carry = &v * r;
                out[i - 1] = v;
            }
        }
        IntPoly::new(out)
    }

    /// `p(−x)`.
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Reversed coefficient list `x^deg · p(1/x)`; requires `p(0) ≠ 0` to
    /// keep the root correspondence exact.
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// Divides out the content (gcd of coefficients), keeping the sign of the
    /// leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// One Graeffe root-squaring step: returns the monic-normalized
    /// polynomial whose roots are the squares of the roots of `self`.
    pub fn graeffe_step(&self) -> IntPoly {
        // p(x)p(−x) = q(x²) up to sign; extract even coefficients.
        let prod = self.mul(&self.reflect());
        let mut even = Vec::with_capacity(prod.coeffs.len() / 2 + 1);
        for (i, c) in prod.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                even.push(c.clone());
            }
        }
        let mut q = IntPoly::new(even);
        if q.leading().map_or(false, |c| c.is_negative()) {
            q = q.neg();
        }
        q
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| Rat::from(c.clone())).collect())
    }

    /// Largest `k` with `x^k` dividing the polynomial.
    pub fn order_at_zero(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Cauchy root bound: every complex root has modulus < 1 + max|c_i/c_n|.
    pub fn cauchy_bound(&self) -> Rat {
        let lc = self.leading().expect("nonzero polynomial").clone();
        let mut best = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = Rat::new(c.abs(), lc.abs());
            if r > best {
                best = r;
            }
        }
        best + Rat::one()
    }
}

/// Rational polynomial used for gcd chains and Sturm sequences.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::new(Vec::new());
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from(Int::from(i as i64)))
                .collect(),
        )
    }

    fn monic(&self) -> RatPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                RatPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    /// Euclidean remainder of `self` by `d`.
    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        let lead = d.coeffs[dd].clone();
        while r.len() > dd {
            let k = r.len() - 1;
            let f = &r[k] / &lead;
            if !f.is_zero() {
                for i in 0..=dd {
                    let t = &d.coeffs[i] * &f;
                    r[k - dd + i] -= t;
                }
            }
            r.pop();
            while r.last().map_or(false, |c| c.is_zero()) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        RatPoly::new(r)
    }

    /// Exact quotient; panics when the division is not exact.
    pub fn div_exact(&self, d: &RatPoly) -> RatPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        let lead = d.coeffs[dd].clone();
        let qdeg = match self.degree() {
            None => return RatPoly::new(Vec::new()),
            Some(sd) => {
                assert!(sd >= dd, "non-exact polynomial division");
                sd - dd
            }
        };
        let mut q = vec![Rat::zero(); qdeg + 1];
        for k in (0..=qdeg).rev() {
            let c = r[k + dd].clone();
            let f = &c / &lead;
            q[k] = f.clone();
            for i in 0..=dd {
                let t = &d.coeffs[i] * &f;
                r[k + i] -= t;
            }
        }
        assert!(r.iter().all(|c| c.is_zero()), "non-exact polynomial division");
        RatPoly::new(q)
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Clears denominators and returns a primitive integer polynomial with
    /// positive leading coefficient.
    pub fn to_int_primitive(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut lcm = Int::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut p = IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect(),
        )
        .primitive_part();
        if p.leading().map_or(false, |c| c.is_negative()) {
            p = p.neg();
        }
        p
    }
}

/// Squarefree part `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    let pr = p.to_rat();
    let g = pr.gcd(&pr.derivative());
    if g.degree() == Some(0) {
        let mut q = p.primitive_part();
        if q.leading().map_or(false, |c| c.is_negative()) {
            q = q.neg();
        }
        return q;
    }
    pr.div_exact(&g).to_int_primitive()
}

/// Yun squarefree decomposition: returns pairs `(q_i, i)` with the `q_i`
/// squarefree, pairwise coprime, and `p = lc · Π q_i^i`.
pub fn yun_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let f = p.to_rat();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let g = f.gcd(&df);
    if g.degree() == Some(0) {
        return vec![(squarefree_part(p), 1)];
    }
    let mut out = Vec::new();
    let mut c = f.div_exact(&g);
    let mut d = df.div_exact(&g).rem_sub(&c.derivative());
    let mut i = 1;
    loop {
        let q = c.gcd(&d);
        if q.degree().map_or(false, |dq| dq > 0) {
            out.push((q.to_int_primitive(), i));
        }
        let c_next = c.div_exact(&q);
        if c_next.degree() == Some(0) {
            break;
        }
        d = d.div_exact(&q).rem_sub(&c_next.derivative());
        c = c_next;
        i += 1;
    }
    out
}

impl RatPoly {
    /// `self − other`, helper for Yun's recurrence.
    fn rem_sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
            out.push(a - b);
        }
        RatPoly::new(out)
    }
}

/// Sturm chain of a squarefree polynomial.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(squarefree: &IntPoly) -> Self {
        let p0 = squarefree.to_rat();
        let p1 = p0.derivative();
        let mut chain = vec![p0, p1];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[k - 2].rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(RatPoly::new(r.coeffs.iter().map(|c| -c).collect()));
        }
        SturmChain { chain }
    }

    fn variations(&self, x: &Rat) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_zero() {
                continue;
            } else if v.is_negative() {
                -1
            } else {
                1
            };
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Isolates the distinct real roots of a squarefree integer polynomial into
/// pairwise disjoint open intervals `(lo, hi]`, each refined by bisection to
/// width at most `width`. Returned in increasing order.
pub fn isolate_real_roots(squarefree: &IntPoly, width: &Rat) -> Vec<(Rat, Rat)> {
    let deg = match squarefree.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let chain = SturmChain::new(squarefree);
    let bound = squarefree.cauchy_bound();
    let lo = -bound.clone();
    let hi = bound;
    let total = chain.count_roots(&lo, &hi);
    debug_assert!(total <= deg);
    let mut stack = vec![(lo, hi, total)];
    let mut isolated = Vec::new();
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        if count == 1 {
            isolated.push((a, b));
            continue;
        }
        let mut mid = (&a + &b) / Rat::from(Int::from(2));
        // A rational midpoint could hit a root only if the squarefree part
        // had a rational root; callers strip those, but nudge just in case.
        while squarefree.eval_rat(&mid).is_zero() {
            mid = (&a + &mid) / Rat::from(Int::from(2));
        }
        let left = chain.count_roots(&a, &mid);
        stack.push((a, mid.clone(), left));
        stack.push((mid, b, count - left));
    }
    let mut out: Vec<(Rat, Rat)> = isolated
        .into_iter()
        .map(|(a, b)| refine_root(squarefree, a, b, width))
        .collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Bisects an isolating interval of a simple root down to the requested width.
pub fn refine_root(p: &IntPoly, mut lo: Rat, mut hi: Rat, width: &Rat) -> (Rat, Rat) {
    let sign_at = |x: &Rat| -> i8 {
        let v = p.eval_rat(x);
        if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        }
    };
    let mut slo = sign_at(&lo);
    let shi = sign_at(&hi);
    if slo == 0 {
        // Root exactly at the left endpoint cannot happen for the intervals
        // produced by isolate_real_roots ((a,b] half-open); guard anyway.
        return (lo.clone(), lo);
    }
    if shi == 0 {
        return (hi.clone(), hi);
    }
    debug_assert!(slo != shi, "interval does not isolate a sign change");
    let two = Rat::from(Int::from(2));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let sm = sign_at(&mid);
        if sm == 0 {
            return (mid.clone(), mid);
        }
        if sm == slo {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// All integer roots of a monic integer polynomial, with multiplicities.
/// By the rational root theorem these are exactly the rational eigenvalues of
/// an integer matrix. Found by isolating real roots of the squarefree part
/// and testing the integers inside narrow isolating intervals, which avoids
/// factoring the constant coefficient.
pub fn integer_roots(p: &IntPoly) -> Vec<(Int, usize)> {
    assert!(p.is_monic(), "integer_roots expects a monic polynomial");
    let mut out: Vec<(Int, usize)> = Vec::new();
    let zeros = p.order_at_zero();
    let mut work = p.clone();
    if zeros > 0 {
        out.push((Int::zero(), zeros));
        let coeffs = work.coeffs()[zeros..].to_vec();
        work = IntPoly::new(coeffs);
    }
    if work.degree().unwrap_or(0) == 0 {
        return out;
    }
    let sf = squarefree_part(&work);
    let quarter = Rat::new(Int::one(), Int::from(4));
    for (lo, hi) in isolate_real_roots(&sf, &quarter) {
        let lo_ceil = lo.ceil().to_integer();
        let hi_floor = hi.floor().to_integer();
        let mut cand = lo_ceil.clone();
        while cand <= hi_floor {
            if !cand.is_zero() && work.eval_int(&cand).is_zero() {
                let mut mult = 0;
                while work.eval_int(&cand).is_zero() {
                    work = work.deflate_root(&cand);
                    mult += 1;
                    if work.degree().is_none() || work.degree() == Some(0) {
                        break;
                    }
                }
                out.push((cand.clone(), mult));
                break;
            }
            cand += Int::one();
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graeffe_squares_roots() {
        // x^2 - 3x + 2 has roots 1, 2; the Graeffe step gives roots 1, 4.
        let p = IntPoly::from_i64(&[2, -3, 1]);
        let q = p.graeffe_step();
        assert_eq!(q, IntPoly::from_i64(&[4, -5, 1]));
    }

    #[test]
    fn yun_finds_multiplicities() {
        // (x-1)^2 (x+2)
        let p = IntPoly::from_i64(&[2, -3, 0, 1]);
        let dec = yun_decomposition(&p);
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (IntPoly::from_i64(&[2, 1]), 1));
        assert_eq!(dec[1], (IntPoly::from_i64(&[-1, 1]), 2));
    }

    #[test]
    fn sturm_isolates_sqrt2() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let w = Rat::new(Int::one(), Int::from(1 << 20));
        let roots = isolate_real_roots(&p, &w);
        assert_eq!(roots.len(), 2);
        let (lo, hi) = &roots[1];
        let sq_lo = lo * lo;
        let sq_hi = hi * hi;
        let two = Rat::from(Int::from(2));
        assert!(sq_lo < two && two < sq_hi);
    }

    #[test]
    fn integer_roots_with_multiplicity() {
        // x^2 (x-3)^2 (x+5)
        let p = IntPoly::from_i64(&[0, 0, 45, -21, -1, 1]);
        let roots = integer_roots(&p);
        assert_eq!(
            roots,
            vec![
                (Int::from(-5), 1),
                (Int::from(0), 2),
                (Int::from(3), 2),
            ]
        );
    }

    #[test]
    fn integer_roots_none_for_irreducible() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert!(integer_roots(&p).is_empty());
    }
}
