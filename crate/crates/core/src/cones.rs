//! Rational polyhedral cones given by primitive integer rays: canonical
//! generator representations, facet enumeration by double description,
//! invariance under integer matrices, eigenspace separation, and the
//! dilation criteria for ray-permuting actions.
//!
//! Every membership and face test runs in exact rational arithmetic. Cones
//! are immutable after construction; the facet structure is computed lazily
//! and memoized behind a `OnceLock`, so concurrent callers either compute it
//! once or compute equal values.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactlin::{
    primitive_int_vector, same_modulus_test, IntMatrix, SameModulusVerdict,
};
use crate::{linalg, Int, Rat};

#[derive(Debug, Error)]
pub enum ConeError {
    #[error("zero vector is not a valid ray generator")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("criterion hypothesis satisfied but ray eigenvalues differ: {0}")]
    ContradictionDetected(String),
}

/// Facet structure of a cone: supporting inequalities `⟨a, x⟩ ≥ 0` plus the
/// equalities `⟨b, x⟩ = 0` cutting out the span when the cone is not
/// full-dimensional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetData {
    pub inequalities: Vec<Vec<Int>>,
    pub equalities: Vec<Vec<Int>>,
}

/// A finitely generated cone in ℚ^n described by primitive integer rays.
#[derive(Debug)]
pub struct RationalCone {
    dim: usize,
    rays: Vec<Vec<Int>>,
    pointed: bool,
    facets: OnceLock<FacetData>,
}

impl Clone for RationalCone {
    fn clone(&self) -> Self {
        let facets = OnceLock::new();
        if let Some(f) = self.facets.get() {
            let _ = facets.set(f.clone());
        }
        RationalCone { dim: self.dim, rays: self.rays.clone(), pointed: self.pointed, facets }
    }
}

impl RationalCone {
    /// Builds the canonical representation of the cone generated by the given
    /// vectors: primitivizes, removes duplicates and non-extremal generators
    /// (tested by exact linear programming), and detects pointedness.
    pub fn canonicalize(rays: &[Vec<Int>]) -> Result<Self, ConeError> {
        if rays.is_empty() {
            return Err(ConeError::PreconditionViolated("empty generator list".into()));
        }
        let dim = rays[0].len();
        if dim == 0 || rays.iter().any(|r| r.len() != dim) {
            return Err(ConeError::DimensionMismatch(
                "generators must share a positive common dimension".into(),
            ));
        }
        if rays.iter().any(|r| r.iter().all(|x| x.is_zero())) {
            return Err(ConeError::ZeroVector);
        }
        let mut work: Vec<Vec<Int>> = rays.iter().map(|r| primitive_int_vector(r)).collect();
        work.sort();
        work.dedup();
        // Drop generators expressible as nonnegative combinations of the rest.
        loop {
            let mut removed = false;
            for i in 0..work.len() {
                if work.len() == 1 {
                    break;
                }
                let others: Vec<Vec<Int>> = work
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, r)| r.clone())
                    .collect();
                if in_generated_cone(&work[i], &others) {
                    work.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
        }
        let pointed = work.iter().all(|r| {
            let neg: Vec<Int> = r.iter().map(|x| -x).collect();
            !in_generated_cone(&neg, &work)
        });
        Ok(RationalCone { dim, rays: work, pointed, facets: OnceLock::new() })
    }

    pub fn from_i64_rays(rays: &[Vec<i64>]) -> Result<Self, ConeError> {
        let rays: Vec<Vec<Int>> = rays
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Self::canonicalize(&rays)
    }

    /// The nonnegative orthant, the nef cone of the split model family.
    pub fn orthant(dim: usize) -> Self {
        let rays: Vec<Vec<Int>> = (0..dim)
            .map(|i| {
                let mut v = vec![Int::zero(); dim];
                v[i] = Int::one();
                v
            })
            .collect();
        RationalCone { dim, rays, pointed: true, facets: OnceLock::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn is_full_dimensional(&self) -> bool {
        let rows: Vec<Vec<Rat>> = self
            .rays
            .iter()
            .map(|r| r.iter().map(|x| Rat::from(x.clone())).collect())
            .collect();
        linalg::rank(rows) == self.dim
    }

    /// Proper cone: pointed and full-dimensional.
    pub fn is_proper(&self) -> bool {
        self.pointed && self.is_full_dimensional()
    }

    /// Facet data, computed on first use by double description on the polar.
    pub fn facets(&self) -> &FacetData {
        self.facets.get_or_init(|| {
            let dd = dual_description(&self.rays, self.dim);
            FacetData { inequalities: dd.generators, equalities: dd.lineality }
        })
    }

    /// Exact membership.
    pub fn contains(&self, v: &[Int]) -> bool {
        let f = self.facets();
        f.equalities.iter().all(|e| dot(e, v).is_zero())
            && f.inequalities.iter().all(|a| !dot(a, v).is_negative())
    }

    /// Relative-interior membership: strictly positive against every facet.
    pub fn contains_in_relative_interior(&self, v: &[Int]) -> bool {
        let f = self.facets();
        f.equalities.iter().all(|e| dot(e, v).is_zero())
            && f.inequalities.iter().all(|a| dot(a, v).is_positive())
    }

    /// Index of the ray positively proportional to `v`, if any.
    pub fn ray_index_of(&self, v: &[Int]) -> Option<usize> {
        let p = primitive_int_vector(v);
        self.rays.iter().position(|r| *r == p)
    }
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact membership of `target` in the cone generated by `gens`, by phase-I
/// simplex over the rationals.
pub fn in_generated_cone(target: &[Int], gens: &[Vec<Int>]) -> bool {
    let m = target.len();
    let a: Vec<Vec<Rat>> = (0..m)
        .map(|row| gens.iter().map(|g| Rat::from(g[row].clone())).collect())
        .collect();
    let b: Vec<Rat> = target.iter().map(|x| Rat::from(x.clone())).collect();
    lp_feasible(&a, &b)
}

/// Decides feasibility of `A x = b, x ≥ 0` by phase-I simplex with Bland's
/// rule (exact rational pivoting, guaranteed termination).
pub fn lp_feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 {
        return true;
    }
    // Tableau columns: n structural + m artificial + rhs.
    let cols = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rat::zero(); cols];
        let flip = b[i].is_negative();
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Rat::one();
        row[cols - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced costs for minimizing the artificial sum, relative to the
    // all-artificial starting basis.
    let mut obj = vec![Rat::zero(); cols];
    for row in &t {
        for j in 0..cols {
            obj[j] += &row[j];
        }
    }
    for j in n..n + m {
        obj[j] = Rat::zero();
    }
    loop {
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_positive()) else {
            break;
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols - 1] / &t[i][enter];
                let better = match &best {
                    None => true,
                    Some(bst) => {
                        ratio < *bst || (ratio == *bst && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // Phase-I objective is bounded below by zero, so this cannot
            // occur; bail out defensively.
            return false;
        };
        let piv = t[leave][enter].clone();
        for j in 0..cols {
            t[leave][j] /= &piv;
        }
        for i in 0..m {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..cols {
                    let d = &t[leave][j] * &f;
                    t[i][j] -= d;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..cols {
                let d = &t[leave][j] * &f;
                obj[j] -= d;
            }
        }
        basis[leave] = enter;
    }
    obj[cols - 1].is_zero()
}

/// Output of the double-description pass on an H-cone `{y : ⟨c_j, y⟩ ≥ 0}`:
/// a basis of the lineality space plus the extreme generators of the pointed
/// part, all primitive integer vectors.
#[derive(Clone, Debug)]
pub struct DualDescription {
    pub lineality: Vec<Vec<Int>>,
    pub generators: Vec<Vec<Int>>,
}

/// Double description with exact arithmetic and the algebraic adjacency test
/// (rank of the common tight constraint set), which keeps the generator list
/// minimal at every step.
pub fn dual_description(constraints: &[Vec<Int>], dim: usize) -> DualDescription {
    #[derive(Clone)]
    struct Gen {
        v: Vec<Rat>,
        tight: Vec<usize>,
    }
    let mut lineality: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            v
        })
        .collect();
    let mut gens: Vec<Gen> = Vec::new();
    let mut processed: Vec<&Vec<Int>> = Vec::new();

    let dot_rat = |c: &[Int], v: &[Rat]| -> Rat {
        c.iter().zip(v).map(|(a, b)| Rat::from(a.clone()) * b).sum()
    };

    for c in constraints {
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        let idx = processed.len();
        processed.push(c);
        let lin_vals: Vec<Rat> = lineality.iter().map(|l| dot_rat(c, l)).collect();
        if let Some(star) = lin_vals.iter().position(|v| !v.is_zero()) {
            // The constraint cuts the lineality space: split off one basis
            // vector as a generator and project everything else onto c^⊥.
            let mut lstar = lineality.remove(star);
            let mut val = lin_vals[star].clone();
            if val.is_negative() {
                for x in lstar.iter_mut() {
                    *x = -x.clone();
                }
                val = -val;
            }
            for (k, l) in lineality.iter_mut().enumerate() {
                let kv = if k < star { lin_vals[k].clone() } else { lin_vals[k + 1].clone() };
                if !kv.is_zero() {
                    let f = kv / &val;
                    for (x, s) in l.iter_mut().zip(&lstar) {
                        let d = s * &f;
                        *x -= d;
                    }
                }
            }
            for g in gens.iter_mut() {
                let gv = dot_rat(c, &g.v);
                if !gv.is_zero() {
                    let f = gv / &val;
                    for (x, s) in g.v.iter_mut().zip(&lstar) {
                        let d = s * &f;
                        *x -= d;
                    }
                }
                g.tight.push(idx);
            }
            gens.push(Gen { v: lstar, tight: (0..idx).collect() });
            continue;
        }
        let vals: Vec<Rat> = gens.iter().map(|g| dot_rat(c, &g.v)).collect();
        let pos: Vec<usize> = (0..gens.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..gens.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (g, v) in gens.iter_mut().zip(&vals) {
                if v.is_zero() {
                    g.tight.push(idx);
                }
            }
            continue;
        }
        let pointed_dim = dim - lineality.len();
        let mut next: Vec<Gen> = Vec::new();
        for i in 0..gens.len() {
            if !vals[i].is_negative() {
                let mut g = gens[i].clone();
                if vals[i].is_zero() {
                    g.tight.push(idx);
                }
                next.push(g);
            }
        }
        for &u in &pos {
            for &w in &neg {
                let common: Vec<usize> = gens[u]
                    .tight
                    .iter()
                    .filter(|t| gens[w].tight.contains(t))
                    .copied()
                    .collect();
                // Algebraic adjacency: the common tight set must cut the
                // pointed part down to a 2-face.
                let rows: Vec<Vec<Rat>> = common
                    .iter()
                    .map(|&t| processed[t].iter().map(|x| Rat::from(x.clone())).collect())
                    .collect();
                if pointed_dim >= 2 && linalg::rank(rows) != pointed_dim - 2 {
                    continue;
                }
                let mut v = vec![Rat::zero(); dim];
                for j in 0..dim {
                    v[j] = &vals[u] * &gens[w].v[j] - &vals[w] * &gens[u].v[j];
                }
                let mut tight = common;
                tight.push(idx);
                next.push(Gen { v, tight });
            }
        }
        gens = next;
    }

    let mut generators: Vec<Vec<Int>> = gens
        .iter()
        .map(|g| crate::exactlin::clear_denominators(&g.v))
        .collect();
    generators.sort();
    generators.dedup();
    let mut lin_out: Vec<Vec<Int>> = lineality
        .iter()
        .map(|l| crate::exactlin::clear_denominators(l))
        .collect();
    lin_out.sort();
    DualDescription { lineality: lin_out, generators }
}

/// Result of mapping a cone through an integer matrix.
#[derive(Clone, Debug)]
pub struct ConeMapReport {
    /// `M·r ∈ C` for every ray.
    pub invariant: bool,
    /// Present exactly when every ray image is positively proportional to a
    /// ray; entry `i` is the index of the ray the `i`-th ray maps onto.
    pub ray_permutation: Option<Vec<usize>>,
    /// Fixed rays with their exact rational eigenvalues.
    pub eigen_rays: Vec<(usize, Rat)>,
    pub verdict: DilationVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DilationVerdict {
    Dilation,
    NotDilation,
    Inconclusive,
}

/// Maps every ray through `M`, testing invariance exactly and extracting the
/// induced ray permutation and fixed-ray eigenvalues when they exist.
pub fn map_cone(m: &IntMatrix, cone: &RationalCone) -> Result<ConeMapReport, ConeError> {
    if m.dim() != cone.dim() {
        return Err(ConeError::DimensionMismatch(format!(
            "matrix is {}x{} but cone lives in dimension {}",
            m.dim(),
            m.dim(),
            cone.dim()
        )));
    }
    if m.det().is_zero() {
        return Err(ConeError::PreconditionViolated(
            "matrix must be invertible over the rationals".into(),
        ));
    }
    let images: Vec<Vec<Int>> = cone.rays().iter().map(|r| m.mul_int_vec(r)).collect();
    let invariant = images.iter().all(|v| cone.contains(v));
    let mut perm = Vec::with_capacity(images.len());
    let mut all_rays = true;
    for img in &images {
        match cone.ray_index_of(img) {
            Some(j) => perm.push(j),
            None => {
                all_rays = false;
                break;
            }
        }
    }
    let ray_permutation = if invariant && all_rays { Some(perm) } else { None };
    let mut eigen_rays = Vec::new();
    if let Some(p) = &ray_permutation {
        for (i, &j) in p.iter().enumerate() {
            if i == j {
                let ray = &cone.rays()[i];
                let k = ray.iter().position(|x| !x.is_zero()).unwrap();
                let lambda = Rat::new(images[i][k].clone(), ray[k].clone());
                eigen_rays.push((i, lambda));
            }
        }
    }
    let verdict = scalar_verdict(&ray_permutation, &eigen_rays, cone);
    Ok(ConeMapReport { invariant, ray_permutation, eigen_rays, verdict })
}

/// Dilation means the map acts as a single positive scalar on the span of the
/// cone; with all rays fixed and sharing one eigenvalue this is exact.
fn scalar_verdict(
    perm: &Option<Vec<usize>>,
    eigen_rays: &[(usize, Rat)],
    cone: &RationalCone,
) -> DilationVerdict {
    let Some(p) = perm else {
        return DilationVerdict::NotDilation;
    };
    if p.iter().enumerate().any(|(i, &j)| i != j) {
        return DilationVerdict::NotDilation;
    }
    let lambda = &eigen_rays[0].1;
    if eigen_rays.len() == cone.rays().len()
        && eigen_rays.iter().all(|(_, l)| l == lambda)
        && lambda.is_positive()
    {
        DilationVerdict::Dilation
    } else {
        DilationVerdict::NotDilation
    }
}

/// Whether the cone separates the `λ`-eigenspace: some `λ`-eigenvector lies
/// in the relative interior, equivalently two eigenvectors in the cone share
/// no common proper face. With every ray fixed, the eigenspace meets the cone
/// exactly in the subcone spanned by the `λ`-rays, so the sum of those rays
/// is the decisive witness.
pub fn separates_eigenspace(
    m: &IntMatrix,
    cone: &RationalCone,
    lambda: &Rat,
) -> Result<bool, ConeError> {
    let report = map_cone(m, cone)?;
    let fixed = report
        .ray_permutation
        .as_ref()
        .map_or(false, |p| p.iter().enumerate().all(|(i, &j)| i == j));
    if !fixed {
        return Err(ConeError::PreconditionViolated(
            "separation test requires the matrix to fix every ray".into(),
        ));
    }
    let members: Vec<usize> = report
        .eigen_rays
        .iter()
        .filter(|(_, l)| l == lambda)
        .map(|(i, _)| *i)
        .collect();
    if members.is_empty() {
        return Ok(false);
    }
    let mut witness = vec![Int::zero(); cone.dim()];
    for &i in &members {
        for (w, x) in witness.iter_mut().zip(&cone.rays()[i]) {
            *w += x;
        }
    }
    Ok(cone.contains_in_relative_interior(&witness))
}

#[derive(Clone, Debug)]
pub struct DilationReport {
    pub verdict: DilationVerdict,
    /// Interior eigenvector witness when the verdict is `Dilation`.
    pub witness: Option<Vec<Int>>,
    pub eigenvalue: Option<Rat>,
    /// Equal-modulus evidence from the spectrum side.
    pub same_modulus: SameModulusVerdict,
}

/// Decides whether `M` acts as a dilation on a proper invariant cone, with an
/// interior eigenvector witness. The scalar test is exact; the equal-modulus
/// verdict is attached as corroborating evidence.
pub fn dilation_criterion(
    m: &IntMatrix,
    cone: &RationalCone,
    width_budget: &Rat,
) -> Result<DilationReport, ConeError> {
    if !cone.is_proper() {
        return Err(ConeError::PreconditionViolated(
            "dilation criterion requires a pointed full-dimensional cone".into(),
        ));
    }
    let report = map_cone(m, cone)?;
    if !report.invariant {
        return Err(ConeError::PreconditionViolated(
            "dilation criterion requires M·C ⊆ C".into(),
        ));
    }
    let same_modulus = same_modulus_test(m, width_budget);
    if report.verdict == DilationVerdict::Dilation {
        let mut witness = vec![Int::zero(); cone.dim()];
        for r in cone.rays() {
            for (w, x) in witness.iter_mut().zip(r) {
                *w += x;
            }
        }
        let witness = primitive_int_vector(&witness);
        let eigenvalue = report.eigen_rays[0].1.clone();
        debug_assert!(cone.contains_in_relative_interior(&witness));
        debug_assert_ne!(same_modulus, SameModulusVerdict::NotAllEqual);
        Ok(DilationReport {
            verdict: DilationVerdict::Dilation,
            witness: Some(witness),
            eigenvalue: Some(eigenvalue),
            same_modulus,
        })
    } else {
        Ok(DilationReport {
            verdict: DilationVerdict::NotDilation,
            witness: None,
            eigenvalue: None,
            same_modulus,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayCountVerdict {
    ForcedDilation,
    CriterionSilent,
}

#[derive(Clone, Debug)]
pub struct RayCountReport {
    pub ray_count: usize,
    pub distinct_eigenvalues: usize,
    pub max_rays_per_facet: usize,
    pub verdict: RayCountVerdict,
    pub common_eigenvalue: Option<Rat>,
}

/// The counting criterion for forced dilations: with `s` rays all fixed with
/// positive rational eigenvalues, `t` distinct eigenvalues and at most `q`
/// rays on any facet, `s ≥ tq + 1` forces every ray eigenvalue to coincide.
/// A violation of that implication would falsify the criterion and is
/// surfaced loudly as `ContradictionDetected`.
pub fn ray_count_criterion(
    m: &IntMatrix,
    cone: &RationalCone,
) -> Result<RayCountReport, ConeError> {
    let report = map_cone(m, cone)?;
    let fixed = report
        .ray_permutation
        .as_ref()
        .map_or(false, |p| p.iter().enumerate().all(|(i, &j)| i == j));
    if !fixed || report.eigen_rays.iter().any(|(_, l)| !l.is_positive()) {
        return Err(ConeError::PreconditionViolated(
            "ray-count criterion requires every ray fixed with a positive eigenvalue".into(),
        ));
    }
    let s = cone.rays().len();
    let per_ray: Vec<Rat> = report.eigen_rays.iter().map(|(_, l)| l.clone()).collect();
    let mut eigenvalues = per_ray.clone();
    eigenvalues.sort();
    eigenvalues.dedup();
    let t = eigenvalues.len();
    let q = cone
        .facets()
        .inequalities
        .iter()
        .map(|f| cone.rays().iter().filter(|r| dot(f, r).is_zero()).count())
        .max()
        .unwrap_or(0);
    if s >= t * q + 1 {
        if t == 1 {
            Ok(RayCountReport {
                ray_count: s,
                distinct_eigenvalues: t,
                max_rays_per_facet: q,
                verdict: RayCountVerdict::ForcedDilation,
                common_eigenvalue: Some(per_ray[0].clone()),
            })
        } else {
            Err(ConeError::ContradictionDetected(format!(
                "s = {s} ≥ tq+1 = {} but ray eigenvalues are not all equal",
                t * q + 1
            )))
        }
    } else {
        Ok(RayCountReport {
            ray_count: s,
            distinct_eigenvalues: t,
            max_rays_per_facet: q,
            verdict: RayCountVerdict::CriterionSilent,
            common_eigenvalue: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadrant() -> RationalCone {
        RationalCone::orthant(2)
    }

    fn heptagonal() -> RationalCone {
        // Seven rational points on the unit circle lifted to height one;
        // every facet of the cone is spanned by two adjacent rays.
        RationalCone::from_i64_rays(&[
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![0, -1, 1],
            vec![-3, 4, 5],
            vec![-3, -4, 5],
            vec![-4, 3, 5],
            vec![-4, -3, 5],
        ])
        .unwrap()
    }

    #[test]
    fn canonicalize_drops_interior_generator() {
        let c = RationalCone::from_i64_rays(&[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(c.rays().len(), 2);
        assert!(c.is_pointed());
    }

    #[test]
    fn canonicalize_primitivizes() {
        let c = RationalCone::from_i64_rays(&[vec![2, 0], vec![0, 3]]).unwrap();
        let e2: Vec<Int> = vec![0.into(), 1.into()];
        let e1: Vec<Int> = vec![1.into(), 0.into()];
        assert_eq!(c.rays(), &[e2, e1]);
    }

    #[test]
    fn canonicalize_removes_simplex_interior_in_dim3() {
        let c = RationalCone::from_i64_rays(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 1],
        ])
        .unwrap();
        assert_eq!(c.rays().len(), 3);
    }

    #[test]
    fn canonicalize_rejects_zero() {
        assert!(matches!(
            RationalCone::from_i64_rays(&[vec![0, 0], vec![1, 0]]),
            Err(ConeError::ZeroVector)
        ));
    }

    #[test]
    fn facets_of_quadrant() {
        let c = quadrant();
        let f = c.facets();
        assert!(f.equalities.is_empty());
        assert_eq!(f.inequalities.len(), 2);
    }

    #[test]
    fn map_cone_diagonal() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let r = map_cone(&m, &quadrant()).unwrap();
        assert!(r.invariant);
        assert_eq!(r.ray_permutation, Some(vec![0, 1]));
        assert_eq!(r.eigen_rays.len(), 2);
        assert_eq!(r.verdict, DilationVerdict::NotDilation);
    }

    #[test]
    fn map_cone_swap() {
        let m = IntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]);
        let r = map_cone(&m, &quadrant()).unwrap();
        assert!(r.invariant);
        let p = r.ray_permutation.unwrap();
        assert_eq!(p, vec![1, 0]);
        assert!(r.eigen_rays.is_empty());
    }

    #[test]
    fn map_cone_shear_is_invariant_without_permutation() {
        let m = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let r = map_cone(&m, &quadrant()).unwrap();
        assert!(r.invariant);
        assert!(r.ray_permutation.is_none());
    }

    #[test]
    fn separation_examples() {
        let two = Rat::from(Int::from(2));
        let two_i = IntMatrix::scalar(2, &Int::from(2));
        assert!(separates_eigenspace(&two_i, &quadrant(), &two).unwrap());

        let diag = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert!(!separates_eigenspace(&diag, &quadrant(), &two).unwrap());

        let three = RationalCone::orthant(3);
        let m = IntMatrix::scalar(3, &Int::from(2));
        assert!(separates_eigenspace(&m, &three, &two).unwrap());
    }

    #[test]
    fn dilation_examples() {
        let w = Rat::new(Int::one(), Int::from(1u64 << 40));
        let m = IntMatrix::scalar(2, &Int::from(3));
        let rep = dilation_criterion(&m, &quadrant(), &w).unwrap();
        assert_eq!(rep.verdict, DilationVerdict::Dilation);
        assert_eq!(rep.witness, Some(vec![Int::one(), Int::one()]));

        let diag = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let rep = dilation_criterion(&diag, &quadrant(), &w).unwrap();
        assert_eq!(rep.verdict, DilationVerdict::NotDilation);

        let swap = IntMatrix::from_rows(&[vec![0, 2], vec![1, 0]]);
        let rep = dilation_criterion(&swap, &quadrant(), &w).unwrap();
        assert_eq!(rep.verdict, DilationVerdict::NotDilation);
        let rep = dilation_criterion(&swap.mul(&swap), &quadrant(), &w).unwrap();
        assert_eq!(rep.verdict, DilationVerdict::Dilation);
    }

    #[test]
    fn ray_count_examples() {
        let hept = heptagonal();
        assert_eq!(hept.rays().len(), 7);
        let m = IntMatrix::scalar(3, &Int::from(2));
        let rep = ray_count_criterion(&m, &hept).unwrap();
        assert_eq!(rep.ray_count, 7);
        assert_eq!(rep.distinct_eigenvalues, 1);
        assert_eq!(rep.max_rays_per_facet, 2);
        assert_eq!(rep.verdict, RayCountVerdict::ForcedDilation);

        let diag = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let rep = ray_count_criterion(&diag, &quadrant()).unwrap();
        assert_eq!(rep.verdict, RayCountVerdict::CriterionSilent);

        let m = IntMatrix::scalar(2, &Int::from(5));
        let rep = ray_count_criterion(&m, &quadrant()).unwrap();
        assert_eq!(rep.verdict, RayCountVerdict::ForcedDilation);
    }

    #[test]
    fn facet_round_trip_on_heptagonal_cone() {
        let c = heptagonal();
        let f = c.facets();
        assert_eq!(f.inequalities.len(), 7);
        // Recover rays from the facet inequalities.
        let dd = dual_description(&f.inequalities, 3);
        assert!(dd.lineality.is_empty());
        let mut recovered = dd.generators;
        recovered.sort();
        let mut orig = c.rays().to_vec();
        orig.sort();
        assert_eq!(recovered, orig);
    }
}
