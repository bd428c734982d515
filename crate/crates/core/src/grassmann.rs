//! Borel rings of real Grassmannians, the double-cover Gysin analysis, and
//! characteristic-rank computations.
//!
//! The Gysin sequence of the double cover interleaves cup product with `w1`
//! and the covering pullback, so oriented Betti numbers and the degrees where
//! the pullback stops being surjective fall out of per-degree kernels and
//! cokernels of multiplication by `w1` on the Borel ring.

use crate::f2core::{decompose_345, PolyF2};
use crate::quotient::{build_quotient, GradedQuotientRing};
use crate::swclasses::{dual_classes, g_classes, multinomial_parity, witness_monomial};
use crate::{Error, Result};

/// `H^*(G(n,k); Z2)` as the quotient of `Z2[w1..wk]` by the dual classes
/// `wbar[n-k+1..=n]`, capped at the manifold dimension `k(n-k)`.
///
/// `n < 2k` is folded through the diffeomorphism `G(n,k) = G(n,n-k)`.
pub fn borel_ring(n: u32, k: u32) -> Result<GradedQuotientRing> {
    let (n, k) = normalize(n, k)?;
    borel_ring_up_to(n, k, k * (n - k))
}

/// The same quotient computed only up to `cap`; relations above the cap are
/// dropped since they cannot touch the degrees kept. Used where only a low
/// range of degrees matters.
pub fn borel_ring_up_to(n: u32, k: u32, cap: u32) -> Result<GradedQuotientRing> {
    let (n, k) = normalize(n, k)?;
    let cap = cap.min(k * (n - k));
    let table = dual_classes(k, n)?;
    let relations = (n - k + 1..=n)
        .filter(|&i| i <= cap)
        .map(|i| table.wbar(i).clone())
        .collect();
    build_quotient(table.ambient().clone(), relations, cap)
}

fn normalize(n: u32, k: u32) -> Result<(u32, u32)> {
    if k == 0 || n <= k {
        return Err(Error::InvalidInput(format!("G({n},{k}) needs 0 < k < n")));
    }
    if n >= 2 * k {
        Ok((n, k))
    } else {
        Ok((n, n - k))
    }
}

/// The characteristic subring of the oriented 3-plane Grassmannian:
/// `Z2[w2,w3] / (g_{n-2}, g_{n-1}, g_n)`, capped at `3(n-3)`. This models the
/// image of the covering pullback on cohomology.
pub fn char_subring_oriented3(n: u32) -> Result<GradedQuotientRing> {
    if n < 6 {
        return Err(Error::InvalidInput(format!(
            "oriented 3-plane constructions need n >= 6, got {n}"
        )));
    }
    let g = g_classes(3, n)?;
    let ambient = g[0].ambient().clone();
    let relations = vec![
        g[(n - 2) as usize].clone(),
        g[(n - 1) as usize].clone(),
        g[n as usize].clone(),
    ];
    build_quotient(ambient, relations, 3 * (n - 3))
}

/// Per-degree data of the double-cover Gysin sequence for `G(n,k)`.
///
/// With `r_j` the rank of `cup w1 : H^j -> H^(j+1)` on the base,
/// `ker[j] = dim H^j - r_j` and `coker[j] = dim H^j - r_(j-1)`; exactness
/// makes `betti[j] = ker[j] + coker[j]` the oriented Betti number. The
/// pullback is surjective in degree `j` exactly when `ker[j] = 0`.
#[derive(Debug, Clone)]
pub struct GysinReport {
    pub n: u32,
    pub k: u32,
    /// Dimensions of the base Borel ring per degree.
    pub base_dims: Vec<usize>,
    pub ker: Vec<usize>,
    pub coker: Vec<usize>,
    /// Oriented Betti numbers, degree by degree up to `k(n-k)`.
    pub betti: Vec<usize>,
    /// Degrees where the pullback fails to be surjective.
    pub failure_degrees: Vec<u32>,
    /// `min(failure_degrees) - 1`.
    pub charrank: u32,
}

impl GysinReport {
    pub fn first_failure(&self) -> u32 {
        self.failure_degrees[0]
    }

    /// Smallest failure degree strictly above `d`.
    pub fn first_failure_above(&self, d: u32) -> Option<u32> {
        self.failure_degrees.iter().copied().find(|&j| j > d)
    }

    /// Poincare duality of the oriented cover: the Betti sequence must be a
    /// palindrome.
    pub fn betti_is_palindrome(&self) -> bool {
        let b = &self.betti;
        (0..b.len()).all(|j| b[j] == b[b.len() - 1 - j])
    }

    pub fn total_oriented_dim(&self) -> usize {
        self.betti.iter().sum()
    }
}

/// Runs the `cup w1` rank sweep over the full Borel ring of `G(n,k)`.
pub fn gysin_report(n: u32, k: u32) -> Result<GysinReport> {
    if k < 2 {
        return Err(Error::InvalidInput("Gysin analysis needs k >= 2".into()));
    }
    if k == 3 && n < 6 {
        return Err(Error::InvalidInput(
            "oriented 3-plane analysis needs n >= 6".into(),
        ));
    }
    if n < 2 * k {
        return Err(Error::InvalidInput(format!(
            "Gysin analysis expects n >= 2k, got ({n},{k})"
        )));
    }
    let ring = borel_ring(n, k)?;
    let cap = ring.cap();
    let w1 = PolyF2::var(ring.ambient().clone(), 0);
    let mut rank = vec![0usize; cap as usize + 1];
    for j in 0..=cap {
        rank[j as usize] = ring.mul_rank(&w1, j)?;
    }
    let mut ker = Vec::with_capacity(cap as usize + 1);
    let mut coker = Vec::with_capacity(cap as usize + 1);
    let mut betti = Vec::with_capacity(cap as usize + 1);
    let mut failure_degrees = Vec::new();
    for j in 0..=cap {
        let dim_j = ring.dim(j);
        let k_j = dim_j - rank[j as usize];
        let c_j = dim_j - if j == 0 { 0 } else { rank[(j - 1) as usize] };
        ker.push(k_j);
        coker.push(c_j);
        betti.push(k_j + c_j);
        if k_j > 0 {
            failure_degrees.push(j);
        }
    }
    // The top class is always killed by w1, so failures are nonempty.
    let charrank = failure_degrees[0] - 1;
    Ok(GysinReport {
        n,
        k,
        base_dims: ring.graded_dims(),
        ker,
        coker,
        betti,
        failure_degrees,
        charrank,
    })
}

/// Characteristic rank of the oriented tautological bundle: one less than the
/// first degree where the covering pullback fails to be surjective.
pub fn charrank_oriented_tautological(n: u32, k: u32) -> Result<u32> {
    Ok(gysin_report(n, k)?.charrank)
}

/// Upper characteristic rank of the oriented 3-plane Grassmannian.
///
/// Equal to the characteristic rank of the tautological bundle whenever
/// `charrank + 1` is not a power of two; that arithmetic hypothesis is
/// asserted here and its failure signals an engine bug rather than
/// mathematics.
pub fn ucharrank_oriented3(n: u32) -> Result<u32> {
    if n < 8 {
        return Err(Error::InvalidInput(
            "upper characteristic rank computed for n >= 8 only".into(),
        ));
    }
    let charrank = charrank_oriented_tautological(n, 3)?;
    let r = charrank + 1;
    if r.is_power_of_two() {
        return Err(Error::HypothesisViolation(format!(
            "first failure degree {r} at n={n} is a power of two"
        )));
    }
    Ok(charrank)
}

/// Verdict of the rank-`k >= 5` characteristic-rank bound: the kernel of
/// `cup w1` vanishes through degree `n-k+2`, and the dual class in degree
/// `n-k+3` contains its `w3^p1 w4^p2 w5^p3` witness monomial.
#[derive(Debug, Clone)]
pub struct K5Verdict {
    pub n: u32,
    pub k: u32,
    pub kernel_vanishes: bool,
    pub witness_present: bool,
    pub witness: (u64, u64, u64),
}

impl K5Verdict {
    pub fn pass(&self) -> bool {
        self.kernel_vanishes && self.witness_present
    }
}

pub fn verify_theorem_k5(n: u32, k: u32) -> Result<K5Verdict> {
    if k < 5 || n < 2 * k {
        return Err(Error::InvalidInput(format!(
            "the rank bound is stated for k >= 5, n >= 2k; got ({n},{k})"
        )));
    }
    let limit = n - k + 2;
    let ring = borel_ring_up_to(n, k, limit + 1)?;
    let w1 = PolyF2::var(ring.ambient().clone(), 0);
    let mut kernel_vanishes = true;
    for j in 0..=limit {
        if ring.mul_kernel_dim(&w1, j)? != 0 {
            kernel_vanishes = false;
            break;
        }
    }

    let i = n - k + 3;
    let (p1, p2, p3) = decompose_345(i as u64).expect("n - k + 3 >= 8 always decomposes");
    let table = dual_classes(k, i)?;
    let witness_present = table
        .wbar(i)
        .coefficient_of(&witness_monomial(k, p1, p2, p3));
    // The closed-form coefficient must agree with the computed table.
    debug_assert_eq!(witness_present, multinomial_parity(&[p1, p2, p3]));
    Ok(K5Verdict {
        n,
        k,
        kernel_vanishes,
        witness_present,
        witness: (p1, p2, p3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::partition_box_count;

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) / (i + 1);
        }
        acc
    }

    #[test]
    fn borel_dimensions_match_partition_oracle() {
        let ring = borel_ring(5, 2).unwrap();
        assert_eq!(ring.graded_dims(), vec![1, 1, 2, 2, 2, 1, 1]);
        let ring = borel_ring(6, 3).unwrap();
        assert_eq!(ring.total_dim(), 20); // C(6,3)
        for d in 0..=ring.cap() {
            assert_eq!(ring.dim(d) as u64, partition_box_count(3, 3, d));
        }
    }

    #[test]
    fn borel_top_degree_is_one_dimensional() {
        for (n, k) in [(5u32, 2u32), (6, 3), (8, 3), (9, 4)] {
            let ring = borel_ring(n, k).unwrap();
            assert_eq!(ring.dim(ring.cap()), 1, "top of G({n},{k})");
        }
    }

    #[test]
    fn small_n_uses_complementary_rank() {
        // G(5,3) = G(5,2).
        let a = borel_ring(5, 3).unwrap();
        let b = borel_ring(5, 2).unwrap();
        assert_eq!(a.graded_dims(), b.graded_dims());
    }

    #[test]
    fn char_subring_low_degrees() {
        let s = char_subring_oriented3(8).unwrap();
        assert_eq!(s.dim(1), 0);
        assert_eq!(s.dim(2), 1);
        assert_eq!(s.dim(3), 1);
        // w2~^4 is nonzero in degree 8 (top of the subring for n = 8).
        let w2 = PolyF2::var(s.ambient().clone(), 0);
        let w2_4 = w2.mul(&w2).unwrap().mul(&w2).unwrap().mul(&w2).unwrap();
        assert!(!s.is_zero_class(&w2_4).unwrap());
    }

    #[test]
    fn gysin_betti_of_oriented_5_2() {
        let report = gysin_report(5, 2).unwrap();
        assert_eq!(report.betti, vec![1, 0, 1, 0, 1, 0, 1]);
        assert!(report.betti_is_palindrome());
    }

    #[test]
    fn gysin_exactness_and_duality_sweep() {
        for (n, k) in [(5u32, 2u32), (6, 2), (7, 2), (6, 3), (7, 3), (8, 3), (8, 4)] {
            let report = gysin_report(n, k).unwrap();
            assert!(report.betti_is_palindrome(), "duality at ({n},{k})");
            for j in 0..report.betti.len() {
                assert_eq!(report.betti[j], report.ker[j] + report.coker[j]);
            }
            // Euler-characteristic style sanity: total dims agree with the
            // cell count on the base.
            let base_total: usize = report.base_dims.iter().sum();
            assert_eq!(base_total as u64, binomial(n as u64, k as u64));
        }
    }

    #[test]
    fn first_failure_matches_indecomposable_degrees() {
        // n = 2^t: failure at 2^t - 1.
        assert_eq!(gysin_report(8, 3).unwrap().first_failure(), 7);
        assert_eq!(gysin_report(16, 3).unwrap().first_failure(), 15);
        // n = 2^t - 1, 2^t - 2, 2^t - 3: failure at 2^t - 4.
        for n in [13, 14, 15] {
            assert_eq!(gysin_report(n, 3).unwrap().first_failure(), 12, "n={n}");
        }
        // 2^(t-1) < n <= 2^t - 4: failure at min(3n - 2^t - 1, 2^t - 4).
        for n in 9..=12u32 {
            let expected = (3 * n - 17).min(12);
            assert_eq!(
                gysin_report(n, 3).unwrap().first_failure(),
                expected,
                "n={n}"
            );
        }
    }

    /// Away from the four boundary families, the pullback is surjective
    /// through degree n-1.
    #[test]
    fn pullback_surjective_below_n_for_generic_n() {
        for n in [9u32, 10, 11, 12, 17, 18, 19, 20] {
            let report = gysin_report(n, 3).unwrap();
            for j in 0..n as usize {
                assert_eq!(report.ker[j], 0, "kernel at n={n}, j={j}");
            }
        }
    }

    #[test]
    fn charrank_and_ucharrank_examples() {
        assert_eq!(charrank_oriented_tautological(16, 3).unwrap(), 14);
        assert_eq!(charrank_oriented_tautological(13, 3).unwrap(), 11);
        assert_eq!(ucharrank_oriented3(16).unwrap(), 14);
        assert_eq!(ucharrank_oriented3(12).unwrap(), 11);
        assert_eq!(ucharrank_oriented3(13).unwrap(), 11);
    }

    #[test]
    fn rank_bound_for_k5_examples() {
        for (n, k) in [(10u32, 5u32), (12, 6), (14, 7)] {
            let verdict = verify_theorem_k5(n, k).unwrap();
            assert!(verdict.pass(), "({n},{k})");
        }
        // charrank of the oriented bundle is at least n-k+2.
        let charrank = {
            let ring = borel_ring(10, 5).unwrap();
            let w1 = PolyF2::var(ring.ambient().clone(), 0);
            let mut first = None;
            for j in 0..=ring.cap() {
                if ring.dim(j) - ring.mul_rank(&w1, j).unwrap() > 0 {
                    first = Some(j);
                    break;
                }
            }
            first.unwrap() - 1
        };
        assert!(charrank >= 7);
    }

    #[test]
    fn preconditions_are_enforced() {
        assert!(gysin_report(5, 3).is_err());
        assert!(char_subring_oriented3(5).is_err());
        assert!(verify_theorem_k5(9, 5).is_err());
        assert!(ucharrank_oriented3(7).is_err());
    }
}
