//! Dual Stiefel–Whitney classes and their reductions modulo `w1`.
//!
//! `wbar[i]` is the degree-`i` homogeneous component of the formal inverse of
//! `1 + w1 + ... + wk`; `g[i]` is `wbar[i]` with every `w1`-divisible term
//! deleted, viewed in `Z2[w2..wk]`. Both are computed by their defining
//! recursions; the power-series convolution identity is kept as a test, not a
//! code path.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::f2core::{Monomial, PolyF2, VarSet};
use crate::{Error, Result};

/// Default per-polynomial term limit. The `k = 3` tables stay tiny; the limit
/// exists so runaway requests fail instead of swallowing memory.
pub const DEFAULT_TERM_CAP: usize = 4_000_000;

/// Table of dual classes `wbar[0..=max_i]` over `w1..wk` together with their
/// mod-`w1` reductions `g[0..=max_i]` over `w2..wk`.
#[derive(Debug, Clone)]
pub struct DualClassTable {
    k: u32,
    ambient: Arc<VarSet>,
    reduced: Arc<VarSet>,
    wbar: Vec<PolyF2>,
    g: Vec<PolyF2>,
    cap_terms: usize,
}

impl DualClassTable {
    pub fn new(k: u32, max_i: u32) -> Result<Self> {
        Self::with_term_cap(k, max_i, DEFAULT_TERM_CAP)
    }

    pub fn with_term_cap(k: u32, max_i: u32, cap_terms: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidInput("dual classes need k >= 1".into()));
        }
        let ambient = VarSet::grassmann(k);
        let reduced = VarSet::grassmann_reduced(k.max(2));
        let mut table = DualClassTable {
            k,
            ambient,
            reduced,
            wbar: Vec::new(),
            g: Vec::new(),
            cap_terms,
        };
        table.extend_to(max_i)?;
        Ok(table)
    }

    /// Monotone extension: only degrees beyond the current bound are
    /// computed.
    pub fn extend_to(&mut self, max_i: u32) -> Result<()> {
        if self.wbar.is_empty() {
            self.wbar.push(PolyF2::one(self.ambient.clone()));
            self.g.push(PolyF2::one(self.reduced.clone()));
        }
        while self.wbar.len() <= max_i as usize {
            let i = self.wbar.len() as u32;
            // wbar_i = sum_{j=1..min(k,i)} w_j * wbar_{i-j}
            let mut wbar_i = PolyF2::zero(self.ambient.clone());
            for j in 1..=self.k.min(i) {
                let prev = &self.wbar[(i - j) as usize];
                wbar_i = wbar_i.add(&prev.times_var(j as usize - 1, 1))?;
            }
            if wbar_i.term_count() > self.cap_terms {
                return Err(Error::ResourceCap(format!(
                    "wbar[{i}] exceeds {} terms",
                    self.cap_terms
                )));
            }
            // g_i = sum_{j=2..min(k,i)} w_j * g_{i-j}, in Z2[w2..wk]
            let mut g_i = PolyF2::zero(self.reduced.clone());
            if self.k >= 2 {
                for j in 2..=self.k.min(i) {
                    let prev = &self.g[(i - j) as usize];
                    g_i = g_i.add(&prev.times_var(j as usize - 2, 1))?;
                }
            }
            self.wbar.push(wbar_i);
            self.g.push(g_i);
        }
        Ok(())
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn max_i(&self) -> u32 {
        self.wbar.len() as u32 - 1
    }

    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    pub fn reduced_ambient(&self) -> &Arc<VarSet> {
        &self.reduced
    }

    pub fn wbar(&self, i: u32) -> &PolyF2 {
        &self.wbar[i as usize]
    }

    pub fn g(&self, i: u32) -> &PolyF2 {
        &self.g[i as usize]
    }

    /// `wbar[i]` with `w1`-divisible terms deleted, pushed down into the
    /// reduced ambient. This is the slow second route to `g[i]`; the table
    /// itself uses the recursion.
    pub fn wbar_reduced_mod_w1(&self, i: u32) -> Result<PolyF2> {
        let stripped = self.wbar(i).delete_var_multiples(0);
        let mut images = Vec::with_capacity(self.ambient.len());
        images.push(PolyF2::zero(self.reduced.clone()));
        for j in 2..=self.k {
            images.push(PolyF2::var(self.reduced.clone(), j as usize - 2));
        }
        stripped.substitute(&self.reduced, &images)
    }
}

/// The dual-class table for `w1..wk` up to degree `max_i`.
pub fn dual_classes(k: u32, max_i: u32) -> Result<DualClassTable> {
    DualClassTable::new(k, max_i)
}

/// The classes `g[0..=max_i]` over `Z2[w2..wk]`, by the recursion
/// `g_i = sum_{j=2..min(k,i)} w_j g_{i-j}` with `g_0 = 1`, `g_1 = 0`.
pub fn g_classes(k: u32, max_i: u32) -> Result<Vec<PolyF2>> {
    g_classes_with_cap(k, max_i, DEFAULT_TERM_CAP)
}

pub fn g_classes_with_cap(k: u32, max_i: u32, cap_terms: usize) -> Result<Vec<PolyF2>> {
    if k < 2 {
        return Err(Error::InvalidInput("g classes need k >= 2".into()));
    }
    let reduced = VarSet::grassmann_reduced(k);
    let mut g: Vec<PolyF2> = vec![PolyF2::one(reduced.clone())];
    for i in 1..=max_i {
        let mut g_i = PolyF2::zero(reduced.clone());
        for j in 2..=k.min(i) {
            g_i = g_i.add(&g[(i - j) as usize].times_var(j as usize - 2, 1))?;
        }
        if g_i.term_count() > cap_terms {
            return Err(Error::ResourceCap(format!(
                "g[{i}] exceeds {cap_terms} terms"
            )));
        }
        g.push(g_i);
    }
    Ok(g)
}

/// `{ i in [2, max_i] : g_i = 0 }`.
///
/// For `k = 3` and `k = 4` the table is computed outright. For `k >= 5` the
/// classes get huge, so each degree is first certified nonzero through the
/// graded projection `w3, w4, w5 -> themselves, everything else -> 0`: the
/// projection of `g_i` is the degree-`i` component of `(1+w3+w4+w5)^{-1}`,
/// and a nonzero image forces a nonzero class. Degrees whose projection
/// vanishes fall back to the full computation.
pub fn g_vanishing_degrees(k: u32, max_i: u32) -> Result<BTreeSet<u32>> {
    g_vanishing_degrees_with_cap(k, max_i, DEFAULT_TERM_CAP)
}

pub fn g_vanishing_degrees_with_cap(k: u32, max_i: u32, cap_terms: usize) -> Result<BTreeSet<u32>> {
    if k < 3 {
        return Err(Error::InvalidInput(
            "vanishing-degree scan needs k >= 3".into(),
        ));
    }
    let mut vanishing = BTreeSet::new();
    if k <= 4 {
        let g = g_classes_with_cap(k, max_i, cap_terms)?;
        for i in 2..=max_i {
            if g[i as usize].is_zero() {
                vanishing.insert(i);
            }
        }
        return Ok(vanishing);
    }

    let proj = projection_345_table(max_i)?;
    let mut undecided: Vec<u32> = (2..=max_i)
        .filter(|&i| proj[i as usize].is_zero())
        .collect();
    if let Some(&top) = undecided.last() {
        let g = g_classes_with_cap(k, top, cap_terms)?;
        undecided.retain(|&i| g[i as usize].is_zero());
        vanishing.extend(undecided);
    }
    Ok(vanishing)
}

/// Degree-`i` components of `(1+w3+w4+w5)^{-1}` for `i <= max_i`.
fn projection_345_table(max_i: u32) -> Result<Vec<PolyF2>> {
    let vars = VarSet::new(vec![("w3", 3u32), ("w4", 4), ("w5", 5)]);
    let mut table: Vec<PolyF2> = vec![PolyF2::one(vars.clone())];
    for i in 1..=max_i {
        let mut p = PolyF2::zero(vars.clone());
        for (idx, j) in [3u32, 4, 5].iter().enumerate() {
            if *j <= i {
                p = p.add(&table[(i - j) as usize].times_var(idx, 1))?;
            }
        }
        table.push(p);
    }
    Ok(table)
}

/// Parity of the multinomial coefficient `(sum parts)! / prod parts!`.
///
/// Odd exactly when the binary supports of the parts are pairwise disjoint;
/// computed as a chain of Lucas parities. This is also the coefficient of the
/// monomial with those exponents inside the matching dual class, since only
/// one power of `w1 + ... + wk` contributes to it.
pub fn multinomial_parity(parts: &[u64]) -> bool {
    let mut total: u64 = parts.iter().sum();
    for &p in parts {
        if !crate::f2core::lucas_parity(total, p) {
            return false;
        }
        total -= p;
    }
    true
}

/// Coefficient of `w3^p1 * w4^p2 * w5^p3` inside `wbar[3p1+4p2+5p3]` for any
/// rank `k >= 5`, straight from the multinomial closed form.
pub fn wbar_345_coefficient(p1: u64, p2: u64, p3: u64) -> bool {
    multinomial_parity(&[p1, p2, p3])
}

/// Builds the `w3^p1 w4^p2 w5^p3` monomial in the `w1..wk` ambient.
pub fn witness_monomial(k: u32, p1: u64, p2: u64, p3: u64) -> Monomial {
    assert!(k >= 5);
    let mut exps = vec![0u16; k as usize];
    exps[2] = p1 as u16;
    exps[3] = p2 as u16;
    exps[4] = p3 as u16;
    Monomial::new(exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2core::decompose_345;

    #[test]
    fn low_degree_dual_classes_for_k3() {
        let t = dual_classes(3, 4).unwrap();
        let vs = t.ambient().clone();
        assert_eq!(*t.wbar(0), PolyF2::one(vs.clone()));
        assert_eq!(*t.wbar(1), PolyF2::var(vs.clone(), 0));
        // Hand inversion of 1 + w1 + w2 + w3 to degree 2: wbar_2 = w1^2 + w2.
        let expected = PolyF2::from_monomials(
            vs.clone(),
            vec![Monomial::new(vec![2, 0, 0]), Monomial::new(vec![0, 1, 0])],
        );
        assert_eq!(*t.wbar(2), expected);
    }

    /// The defining identity: sum_{j=0..min(k,i)} w_j wbar_{i-j} = 0.
    #[test]
    fn convolution_identity() {
        for k in [1u32, 2, 3, 5] {
            let max = 40;
            let t = dual_classes(k, max).unwrap();
            for i in 1..=max {
                let mut acc = t.wbar(i).clone();
                for j in 1..=k.min(i) {
                    acc = acc
                        .add(&t.wbar(i - j).times_var(j as usize - 1, 1))
                        .unwrap();
                }
                assert!(acc.is_zero(), "convolution fails at k={k}, i={i}");
            }
        }
    }

    #[test]
    fn g_low_degrees_k3() {
        let g = g_classes(3, 8).unwrap();
        let vs = g[0].ambient().clone();
        assert_eq!(g[2], PolyF2::var(vs.clone(), 0));
        assert_eq!(g[3], PolyF2::var(vs.clone(), 1));
        assert!(g[5].is_zero());
        // g7 = w2 g5 + w3 g4 = w2^2 w3.
        let expected = PolyF2::from_monomial(vs.clone(), Monomial::new(vec![2, 1]));
        assert_eq!(g[7], expected);
    }

    /// The recursion route and the strip-`w1` route must agree.
    #[test]
    fn g_equals_wbar_mod_w1() {
        for k in 2..=8u32 {
            let max = 64;
            let t = dual_classes(k, max).unwrap();
            for i in 0..=max {
                let reduced = t.wbar_reduced_mod_w1(i).unwrap();
                assert_eq!(&reduced, t.g(i), "paths disagree at k={k}, i={i}");
            }
        }
    }

    #[test]
    fn vanishing_degrees_k3() {
        let v = g_vanishing_degrees(3, 100).unwrap();
        let expected: BTreeSet<u32> = [5u32, 13, 29, 61].into_iter().collect();
        assert_eq!(v, expected);
        assert!(g_vanishing_degrees(3, 4).unwrap().is_empty());
    }

    #[test]
    fn vanishing_degrees_k5_empty() {
        assert!(g_vanishing_degrees(5, 100).unwrap().is_empty());
    }

    /// The projection shortcut must agree with the full computation where the
    /// full computation is affordable.
    #[test]
    fn projection_shortcut_agrees_with_full_scan() {
        for k in 5..=8u32 {
            let g = g_classes(k, 64).unwrap();
            let fast = g_vanishing_degrees(k, 64).unwrap();
            for i in 2..=64u32 {
                assert_eq!(fast.contains(&i), g[i as usize].is_zero(), "k={k}, i={i}");
            }
        }
    }

    #[test]
    fn coefficient_queries() {
        let t = dual_classes(3, 4).unwrap();
        // w1^2 occurs in wbar_2.
        assert!(t.wbar(2).coefficient_of(&Monomial::new(vec![2, 0, 0])));
        // w2 does not occur in g3 = w3.
        let g = g_classes(3, 4).unwrap();
        assert!(!g[3].coefficient_of(&Monomial::new(vec![1, 0])));
    }

    /// Every coefficient of `wbar` equals the multinomial parity of the
    /// exponent vector.
    #[test]
    fn wbar_coefficients_are_multinomial_parities() {
        let t = dual_classes(5, 24).unwrap();
        let vs = t.ambient();
        for i in 1..=24u32 {
            for m in vs.monomials_of_degree(i) {
                let parts: Vec<u64> = m.exps().iter().map(|&e| e as u64).collect();
                assert_eq!(
                    t.wbar(i).coefficient_of(&m),
                    multinomial_parity(&parts),
                    "i={i}, m={:?}",
                    m
                );
            }
        }
    }

    /// Decomposition witnesses always appear with coefficient 1.
    #[test]
    fn decomposition_witnesses_in_wbar() {
        let t = dual_classes(5, 40).unwrap();
        for i in 3..=40u64 {
            if let Some((p1, p2, p3)) = decompose_345(i) {
                let m = witness_monomial(5, p1, p2, p3);
                assert!(
                    t.wbar(i as u32).coefficient_of(&m),
                    "witness missing in wbar_{i}"
                );
                assert!(wbar_345_coefficient(p1, p2, p3));
            }
        }
    }

    #[test]
    fn monotone_extension_matches_fresh_table() {
        let mut t = dual_classes(3, 10).unwrap();
        t.extend_to(20).unwrap();
        let fresh = dual_classes(3, 20).unwrap();
        for i in 0..=20 {
            assert_eq!(t.wbar(i), fresh.wbar(i));
            assert_eq!(t.g(i), fresh.g(i));
        }
    }

    #[test]
    fn term_cap_trips() {
        let err = DualClassTable::with_term_cap(8, 64, 10).unwrap_err();
        assert!(matches!(err, Error::ResourceCap(_)));
    }
}
