//! The anomalous classes of oriented 3-plane Grassmannians and the identities
//! they satisfy: annihilation by the generators, vanishing products,
//! divisibility into the two distinguished classes, the `w2`-power congruence
//! for `g` classes, and the rational cup-length bounds.
//!
//! Everything runs inside the characteristic subring
//! `Z2[w2,w3]/(g_{n-2}, g_{n-1}, g_n)`, which injects into the cohomology of
//! the oriented Grassmannian; identities verified here hold there verbatim.

use std::cmp::Ordering;
use std::fmt;

use crate::f2core::{Monomial, PolyF2};
use crate::grassmann::char_subring_oriented3;
use crate::quotient::{cup_length, FiniteGradedRing, GradedQuotientRing};
use crate::swclasses::g_classes;
use crate::{Error, Result};

/// The `t` with `2^(t-1) < n <= 2^t`.
pub fn dyadic_exponent(n: u32) -> u32 {
    assert!(n >= 2);
    32 - (n - 1).leading_zeros()
}

/// A named list of pass/fail sub-checks, plus non-gating observations.
///
/// `checks` carry the verdict; `info` records outcomes for alternative
/// representatives of classes that are only defined modulo a kernel, where
/// the identities are asserted for one specific representative.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub label: String,
    pub checks: Vec<(String, bool)>,
    pub info: Vec<(String, bool)>,
}

impl Verdict {
    pub fn new(label: impl Into<String>) -> Self {
        Verdict {
            label: label.into(),
            checks: Vec::new(),
            info: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn observe(&mut self, name: impl Into<String>, ok: bool) {
        self.info.push((name.into(), ok));
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// The distinguished elements of the characteristic subring for an admissible
/// `n`: the two classes killed by `w3`, their `q` combination for odd `n`,
/// and the `v` classes obtained from them by `w2` powers.
///
/// The defining relations pin each `p` class as an exact polynomial quotient
/// of `g` classes by the variable `w3`; those polynomials are reduced into
/// the subring here. Every class the structure carries is a normal form.
#[derive(Debug)]
pub struct AnomalousClasses {
    pub n: u32,
    pub t: u32,
    pub parity: Parity,
    pub ring: GradedQuotientRing,
    /// `p_{n-4}` for even `n`, `p_{n-5}` for odd `n`.
    pub p_low: PolyF2,
    /// `p_{n-3}` for either parity.
    pub p_high: PolyF2,
    /// `q_{n-3} = p_{n-3} + w2 p_{n-5}`, odd `n` only.
    pub q: Option<PolyF2>,
    /// `v_{2^t - 8}`.
    pub v_small: PolyF2,
    /// `v_{3n - 2^t - 5}`.
    pub v_large: PolyF2,
    /// dim ker(. * w3) at the degree of `p_low`.
    pub kernel_dim_low: usize,
    /// dim ker(. * w3) at the degree of `p_high`.
    pub kernel_dim_high: usize,
}

impl AnomalousClasses {
    pub fn v_small_degree(&self) -> u32 {
        (1 << self.t) - 8
    }

    pub fn v_large_degree(&self) -> u32 {
        3 * self.n - (1 << self.t) - 5
    }

    fn w3(&self) -> PolyF2 {
        PolyF2::var(self.ring.ambient().clone(), 1)
    }

    /// All representatives of a class modulo `ker(. * w3)` in its degree:
    /// the affine solution set of its defining equation.
    pub fn representatives(&self, class: &PolyF2, degree: u32) -> Result<Vec<PolyF2>> {
        let kernel = self.ring.mul_kernel_basis(&self.w3(), degree)?;
        let mut reps = vec![self.ring.normal_form(class)?];
        for v in kernel {
            for i in 0..reps.len() {
                let shifted = reps[i].add(&v)?;
                reps.push(self.ring.normal_form(&shifted)?);
            }
        }
        reps.sort_by(|a, b| format!("{a}").cmp(&format!("{b}")));
        reps.dedup();
        Ok(reps)
    }
}

/// Whether `n` admits the anomalous classes: `2^(t-1) < n <= 2^t - 4`. This
/// range already avoids `2^t`, `2^t - 1`, `2^t - 2` and `2^t - 3`, the cases
/// the definitions exclude.
pub fn anomalous_admissible(n: u32) -> bool {
    if n < 9 {
        return false;
    }
    let t = dyadic_exponent(n);
    n + 4 <= (1 << t)
}

/// Builds the anomalous classes for an admissible `n`.
pub fn anomalous_classes(n: u32) -> Result<AnomalousClasses> {
    if !anomalous_admissible(n) {
        return Err(Error::InvalidInput(format!(
            "n={n} is outside the anomalous-class range (2^(t-1), 2^t - 4]"
        )));
    }
    let t = dyadic_exponent(n);
    let ring = char_subring_oriented3(n)?;
    let g = g_classes(3, n)?;
    let w2 = PolyF2::var(ring.ambient().clone(), 0);
    let w3 = PolyF2::var(ring.ambient().clone(), 1);

    let parity = if n.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    };
    let (p_low_poly, p_high_poly, q_poly, deg_low) = match parity {
        Parity::Even => {
            // w3 p_{n-4} = g_{n-1} and w3 p_{n-3} = g_n + w2 g_{n-2}.
            let p_low = g[(n - 1) as usize].exact_div_var(1)?;
            let rhs = g[n as usize].add(&w2.mul(&g[(n - 2) as usize])?)?;
            let p_high = rhs.exact_div_var(1)?;
            // The recursion makes g_n + w2 g_{n-2} = w3 g_{n-3}.
            debug_assert_eq!(p_high, g[(n - 3) as usize]);
            (p_low, p_high, None, n - 4)
        }
        Parity::Odd => {
            // w3 p_{n-5} = g_{n-2} and w3 p_{n-3} = g_n.
            let p_low = g[(n - 2) as usize].exact_div_var(1)?;
            let p_high = g[n as usize].exact_div_var(1)?;
            let q = p_high.add(&w2.mul(&p_low)?)?;
            debug_assert_eq!(q, g[(n - 3) as usize]);
            (p_low, p_high, Some(q), n - 5)
        }
    };
    let deg_high = n - 3;

    // Re-verify the defining equations inside the subring: each product must
    // reduce to the (vanishing) class of its right-hand side.
    let rhs_low = match parity {
        Parity::Even => g[(n - 1) as usize].clone(),
        Parity::Odd => g[(n - 2) as usize].clone(),
    };
    let rhs_high = match parity {
        Parity::Even => g[n as usize].add(&w2.mul(&g[(n - 2) as usize])?)?,
        Parity::Odd => g[n as usize].clone(),
    };
    for (p, rhs) in [(&p_low_poly, &rhs_low), (&p_high_poly, &rhs_high)] {
        if ring.normal_form(&w3.mul(p)?)? != ring.normal_form(rhs)? {
            return Err(Error::HypothesisViolation(format!(
                "defining equation fails to re-verify at n={n}"
            )));
        }
    }

    let kernel_dim_low = ring.mul_kernel_dim(&w3, deg_low)?;
    let kernel_dim_high = ring.mul_kernel_dim(&w3, deg_high)?;

    let half = 1u32 << (t - 1);
    let (src_small, e_small, src_large, e_large) = match parity {
        Parity::Even => (&p_low_poly, half - 2 - n / 2, &p_high_poly, n - half - 1),
        Parity::Odd => (
            &p_high_poly,
            half - 2 - n.div_ceil(2),
            q_poly.as_ref().unwrap(),
            n - half - 1,
        ),
    };
    let v_small = ring.normal_form(&src_small.mul(&power(&w2, e_small)?)?)?;
    let v_large = ring.normal_form(&src_large.mul(&power(&w2, e_large)?)?)?;
    for (v, deg) in [(&v_small, (1 << t) - 8), (&v_large, 3 * n - (1 << t) - 5)] {
        if v.is_zero() {
            return Err(Error::HypothesisViolation(format!(
                "v class of degree {deg} vanishes at n={n}"
            )));
        }
        debug_assert_eq!(v.homogeneous_degree(), Some(deg));
    }

    Ok(AnomalousClasses {
        n,
        t,
        parity,
        p_low: ring.normal_form(&p_low_poly)?,
        p_high: ring.normal_form(&p_high_poly)?,
        q: match q_poly {
            Some(q) => Some(ring.normal_form(&q)?),
            None => None,
        },
        v_small,
        v_large,
        kernel_dim_low,
        kernel_dim_high,
        ring,
    })
}

fn power(base: &PolyF2, e: u32) -> Result<PolyF2> {
    let mut acc = PolyF2::one(base.ambient().clone());
    for _ in 0..e {
        acc = acc.mul(base)?;
    }
    Ok(acc)
}

/// Checks that `w2` and `w3` annihilate both `v` classes.
///
/// The identities are asserted for the classes as defined; they gate the
/// verdict. The same products for every alternative representative modulo
/// the `w3` kernel are recorded as observations, since other representatives
/// need not be annihilated.
pub fn verify_annihilation(classes: &AnomalousClasses) -> Result<Verdict> {
    let mut verdict = Verdict::new(format!("annihilation n={}", classes.n));
    let ring = &classes.ring;
    let w2 = PolyF2::var(ring.ambient().clone(), 0);
    let w3 = PolyF2::var(ring.ambient().clone(), 1);
    for (name, v) in [("v_small", &classes.v_small), ("v_large", &classes.v_large)] {
        verdict.push(format!("w2*{name}"), ring.is_zero_class(&w2.mul(v)?)?);
        verdict.push(format!("w3*{name}"), ring.is_zero_class(&w3.mul(v)?)?);
    }
    for (name, shifted) in alternative_v_classes(classes)? {
        verdict.observe(
            format!("w2*{name}"),
            ring.is_zero_class(&w2.mul(&shifted)?)?,
        );
        verdict.observe(
            format!("w3*{name}"),
            ring.is_zero_class(&w3.mul(&shifted)?)?,
        );
    }
    Ok(verdict)
}

/// The `v` classes rebuilt from every non-canonical representative of their
/// defining solutions (the coset of the `w3` kernel in the source degree).
fn alternative_v_classes(classes: &AnomalousClasses) -> Result<Vec<(String, PolyF2)>> {
    let ring = &classes.ring;
    let w2 = PolyF2::var(ring.ambient().clone(), 0);
    let half = 1u32 << (classes.t - 1);
    let (src_small, e_small, deg_small) = match classes.parity {
        Parity::Even => (&classes.p_low, half - 2 - classes.n / 2, classes.n - 4),
        Parity::Odd => (
            &classes.p_high,
            half - 2 - classes.n.div_ceil(2),
            classes.n - 3,
        ),
    };
    let (src_large, e_large, deg_large) = match classes.parity {
        Parity::Even => (&classes.p_high, classes.n - half - 1, classes.n - 3),
        Parity::Odd => (
            classes.q.as_ref().unwrap(),
            classes.n - half - 1,
            classes.n - 3,
        ),
    };
    let mut out = Vec::new();
    for (name, src, e, deg, canonical) in [
        ("v_small", src_small, e_small, deg_small, &classes.v_small),
        ("v_large", src_large, e_large, deg_large, &classes.v_large),
    ] {
        let shift = power(&w2, e)?;
        for (ri, rep) in classes.representatives(src, deg)?.iter().enumerate() {
            let v = ring.normal_form(&rep.mul(&shift)?)?;
            if &v != canonical {
                out.push((format!("{name} alt-rep{ri}"), v));
            }
        }
    }
    Ok(out)
}

/// The `w2`-power congruence: `w2^(n - 2^(t-1)) g_{n-3} = g_{3n - 2^t - 3}`
/// in the characteristic subring, for `2^(t-1) < n <= 2^t`.
pub fn verify_lemma_not_so(n: u32, t: u32) -> Result<bool> {
    if !(3..=20).contains(&t) {
        return Err(Error::InvalidInput("t outside supported range".into()));
    }
    let half = 1u32 << (t - 1);
    if !(half < n && n <= 2 * half) {
        return Err(Error::InvalidInput(format!(
            "n={n} outside (2^(t-1), 2^t] for t={t}"
        )));
    }
    let ring = char_subring_oriented3(n)?;
    let target_degree = 3 * n - (1 << t) - 3;
    if target_degree > ring.cap() {
        return Err(Error::InvalidInput(format!(
            "degree {target_degree} exceeds cap {}",
            ring.cap()
        )));
    }
    let g = g_classes(3, target_degree.max(n))?;
    let w2 = PolyF2::var(ring.ambient().clone(), 0);
    let lhs = power(&w2, n - half)?.mul(&g[(n - 3) as usize])?;
    let rhs = &g[target_degree as usize];
    Ok(ring.normal_form(&lhs)? == ring.normal_form(rhs)?)
}

/// Deterministic splitmix64 generator for the seeded sampling below.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// Verifies the product relations among the `v` classes and the divisibility
/// property: every nonzero class of the subring divides one of the two `v`
/// classes through a monomial cofactor.
///
/// Monomial classes are swept exhaustively; `random_samples` further inputs
/// are drawn from the seeded generator.
pub fn verify_relations_a(
    classes: &AnomalousClasses,
    seed: u64,
    random_samples: usize,
) -> Result<Verdict> {
    let ring = &classes.ring;
    let mut verdict = Verdict::new(format!("relations-a n={}", classes.n));

    // (i) squares and the cross product vanish.
    verdict.push(
        "v_small^2",
        ring.is_zero_class(&classes.v_small.mul(&classes.v_small)?)?,
    );
    verdict.push(
        "v_large^2",
        ring.is_zero_class(&classes.v_large.mul(&classes.v_large)?)?,
    );
    verdict.push(
        "v_small*v_large",
        ring.is_zero_class(&classes.v_small.mul(&classes.v_large)?)?,
    );
    // The same products for alternative representatives, recorded only.
    for (name, v) in alternative_v_classes(classes)? {
        verdict.observe(format!("{name}^2"), ring.is_zero_class(&v.mul(&v)?)?);
        let other = if name.starts_with("v_small") {
            &classes.v_large
        } else {
            &classes.v_small
        };
        verdict.observe(format!("{name}*other"), ring.is_zero_class(&v.mul(other)?)?);
    }

    // (v) divisibility into one of the v classes, exhaustively over monomial
    // classes.
    let mut monomial_checked = 0usize;
    let mut monomial_failed = 0usize;
    for d in 0..=ring.cap() {
        for m in ring.ambient().monomials_of_degree(d) {
            let p = ring.normal_form(&PolyF2::from_monomial(ring.ambient().clone(), m))?;
            if p.is_zero() {
                continue;
            }
            monomial_checked += 1;
            if !divides_some_v(ring, &p, d, classes)? {
                monomial_failed += 1;
            }
        }
    }
    verdict.push(
        format!("divisibility: all {monomial_checked} nonzero monomial classes"),
        monomial_failed == 0,
    );

    // ... and over seeded random classes.
    let sampled_degrees: Vec<u32> = (1..=ring.cap()).filter(|&d| ring.dim(d) > 0).collect();
    let mut rng = SplitMix64::new(seed);
    let mut random_failed = 0usize;
    let mut random_done = 0usize;
    if !sampled_degrees.is_empty() {
        while random_done < random_samples {
            let d = sampled_degrees[rng.below(sampled_degrees.len() as u64) as usize];
            let basis = ring.residue_basis(d);
            let mut mask = rng.next_u64();
            if basis.len() < 64 {
                mask &= (1u64 << basis.len()) - 1;
            }
            if mask == 0 {
                continue;
            }
            let monos: Vec<Monomial> = basis
                .iter()
                .enumerate()
                .filter(|(i, _)| *i < 64 && mask >> i & 1 == 1)
                .map(|(_, m)| m.clone())
                .collect();
            let p = PolyF2::from_monomials(ring.ambient().clone(), monos);
            random_done += 1;
            if !divides_some_v(ring, &p, d, classes)? {
                random_failed += 1;
            }
        }
    }
    verdict.push(
        format!("divisibility: {random_done} seeded random classes"),
        random_failed == 0,
    );
    Ok(verdict)
}

/// Searches for a monomial `Q` with `P * Q` equal to one of the `v` classes.
fn divides_some_v(
    ring: &GradedQuotientRing,
    p: &PolyF2,
    degree: u32,
    classes: &AnomalousClasses,
) -> Result<bool> {
    for (v, vdeg) in [
        (&classes.v_small, classes.v_small_degree()),
        (&classes.v_large, classes.v_large_degree()),
    ] {
        if vdeg < degree {
            continue;
        }
        for q in ring.ambient().monomials_of_degree(vdeg - degree) {
            if &ring.normal_form(&p.times_mono(&q))? == v {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// An exact rational number; the cup-length bounds are half- and
/// third-integers and must never round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Rational {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        Rational::new(
            self.num * other.den - other.num * self.den,
            self.den * other.den,
        )
    }

    pub fn max(self, other: Rational) -> Rational {
        if self >= other {
            self
        } else {
            other
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The rational cup-length bounds for the oriented 3-plane Grassmannian:
/// lower bound `max(2^(t-1) - 3, 4(n-3)/3 - 2^(t-1) + 3)`, upper bound
/// `3(n-3)/2 - 2^(t-1) + 3`, valid for `t >= 4` and
/// `2^(t-1) + 2^(t-1)/3 <= n <= 2^t - 2`.
pub fn cup_bounds(n: u32, t: u32) -> Result<(Rational, Rational)> {
    if !(4..=20).contains(&t) {
        return Err(Error::InvalidInput("cup bounds need 4 <= t <= 20".into()));
    }
    let half = 1i64 << (t - 1);
    let n = n as i64;
    // n >= 2^(t-1) + 2^(t-1)/3  <=>  3n >= 2^(t+1).
    if 3 * n < 4 * half || n > 2 * half - 2 {
        return Err(Error::InvalidInput(format!(
            "n={n} outside the cup-bound interval for t={t}"
        )));
    }
    let lower = Rational::from_int(half - 3)
        .max(Rational::new(4 * (n - 3), 3).sub(&Rational::from_int(half - 3)));
    let upper = Rational::new(3 * (n - 3), 2).sub(&Rational::from_int(half - 3));
    Ok((lower, upper))
}

/// What the characteristic subring contributes to cup-length bookkeeping.
#[derive(Debug, Clone)]
pub struct SubringSupportReport {
    pub n: u32,
    pub t: u32,
    /// `w2^(2^(t-1) - 4)` survives in the subring.
    pub w2_power_nonzero: bool,
    /// Cup length of the subring itself.
    pub cup_length: usize,
    /// Largest `a + b` over nonzero monomial classes `w2^a w3^b`.
    pub max_monomial_length: u32,
}

/// Verifies `w2^(2^(t-1) - 4) != 0` in the characteristic subring and
/// measures how long monomial products survive; `2^(t-1) <= n <= 2^t - 1`.
pub fn subring_cup_support(n: u32, t: u32) -> Result<SubringSupportReport> {
    let half = 1u32 << (t - 1);
    if !(half <= n && n < 2 * half) {
        return Err(Error::InvalidInput(format!(
            "n={n} outside [2^(t-1), 2^t - 1] for t={t}"
        )));
    }
    let ring = char_subring_oriented3(n)?;
    let w2 = PolyF2::var(ring.ambient().clone(), 0);
    let w2_power_nonzero = !ring.is_zero_class(&power(&w2, half - 4)?)?;

    let mut max_monomial_length = 0u32;
    for d in 1..=ring.cap() {
        for m in ring.ambient().monomials_of_degree(d) {
            let len = m.exps().iter().map(|&e| e as u32).sum::<u32>();
            if len > max_monomial_length
                && !ring.is_zero_class(&PolyF2::from_monomial(ring.ambient().clone(), m))?
            {
                max_monomial_length = len;
            }
        }
    }
    let finite = FiniteGradedRing::from_quotient(&ring)?;
    Ok(SubringSupportReport {
        n,
        t,
        w2_power_nonzero,
        cup_length: cup_length(&finite),
        max_monomial_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_exponents() {
        assert_eq!(dyadic_exponent(8), 3);
        assert_eq!(dyadic_exponent(9), 4);
        assert_eq!(dyadic_exponent(16), 4);
        assert_eq!(dyadic_exponent(17), 5);
        assert_eq!(dyadic_exponent(28), 5);
    }

    #[test]
    fn admissible_range() {
        for n in [9u32, 10, 11, 12, 17, 20, 28] {
            assert!(anomalous_admissible(n), "n={n}");
        }
        for n in [8u32, 13, 14, 15, 16, 29, 30, 31, 32] {
            assert!(!anomalous_admissible(n), "n={n}");
        }
    }

    #[test]
    fn defining_equations_even_n12() {
        let classes = anomalous_classes(12).unwrap();
        assert_eq!(classes.parity, Parity::Even);
        let ring = &classes.ring;
        let w3 = PolyF2::var(ring.ambient().clone(), 1);
        // w3 * p_8 reduces to the class of g_11, which vanishes here.
        assert!(ring
            .is_zero_class(&w3.mul(&classes.p_low).unwrap())
            .unwrap());
        assert!(!classes.p_low.is_zero());
        assert_eq!(classes.p_low.homogeneous_degree(), Some(8));
        assert_eq!(classes.p_high.homogeneous_degree(), Some(9));
        // The kernel is one-dimensional in both degrees for even n.
        assert_eq!(classes.kernel_dim_low, 1);
        assert_eq!(classes.kernel_dim_high, 1);
    }

    #[test]
    fn q_combination_odd_n11() {
        let classes = anomalous_classes(11).unwrap();
        assert_eq!(classes.parity, Parity::Odd);
        let ring = &classes.ring;
        let w2 = PolyF2::var(ring.ambient().clone(), 0);
        let q = classes.q.as_ref().unwrap();
        let recombined = ring
            .normal_form(
                &classes
                    .p_high
                    .add(&w2.mul(&classes.p_low).unwrap())
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(q, &recombined);
        // Odd n: the kernel is 1-dimensional low and 2-dimensional at n-3.
        assert_eq!(classes.kernel_dim_low, 1);
        assert_eq!(classes.kernel_dim_high, 2);
    }

    #[test]
    fn v_classes_nonzero_and_well_placed_n10() {
        let classes = anomalous_classes(10).unwrap();
        // v_8 = w2 * p_6 and v_9 = w2 * p_7 for n = 10, t = 4.
        assert_eq!(classes.v_small_degree(), 8);
        assert_eq!(classes.v_large_degree(), 9);
        assert!(!classes.v_small.is_zero());
        assert!(!classes.v_large.is_zero());
        assert_eq!(classes.v_small.homogeneous_degree(), Some(8));
        assert_eq!(classes.v_large.homogeneous_degree(), Some(9));
    }

    #[test]
    fn annihilation_sweep_t4() {
        for n in [9u32, 10, 11, 12] {
            let classes = anomalous_classes(n).unwrap();
            let verdict = verify_annihilation(&classes).unwrap();
            assert!(verdict.pass(), "n={n}: {:?}", verdict.failures());
        }
    }

    #[test]
    fn relations_a_small_sweep() {
        for n in [10u32, 11, 12] {
            let classes = anomalous_classes(n).unwrap();
            let verdict = verify_relations_a(&classes, 7, 200).unwrap();
            assert!(verdict.pass(), "n={n}: {:?}", verdict.failures());
        }
    }

    #[test]
    fn lemma_congruence_t4() {
        for n in 9..=16u32 {
            assert!(verify_lemma_not_so(n, 4).unwrap(), "n={n}");
        }
    }

    #[test]
    fn rational_arithmetic_and_rendering() {
        let r = Rational::new(34, 4);
        assert_eq!((r.num(), r.den()), (17, 2));
        assert_eq!(format!("{r}"), "17/2");
        assert_eq!(format!("{}", Rational::from_int(7)), "7");
        assert!(Rational::new(29, 3) > Rational::from_int(5));
    }

    #[test]
    fn cup_bound_values_t4() {
        let (lower, upper) = cup_bounds(12, 4).unwrap();
        assert_eq!(lower, Rational::from_int(7));
        assert_eq!(upper, Rational::new(17, 2));

        let (lower, upper) = cup_bounds(14, 4).unwrap();
        assert_eq!(lower, Rational::new(29, 3));
        assert_eq!(upper, Rational::new(23, 2));

        let (lower, upper) = cup_bounds(11, 4).unwrap();
        assert_eq!(lower, Rational::new(17, 3));
        assert_eq!(upper, Rational::from_int(7));
    }

    #[test]
    fn cup_bounds_ordered_for_admissible_inputs() {
        for t in 4..=8u32 {
            let half = 1i64 << (t - 1);
            for n in 0..=(2 * half) as u32 {
                if let Ok((lower, upper)) = cup_bounds(n, t) {
                    assert!(lower <= upper, "n={n}, t={t}");
                }
            }
        }
    }

    #[test]
    fn cup_bounds_reject_out_of_range() {
        assert!(cup_bounds(10, 4).is_err());
        assert!(cup_bounds(15, 4).is_err());
        assert!(cup_bounds(12, 3).is_err());
    }

    #[test]
    fn subring_support_t4() {
        // Regression fixture, frozen from the first computation.
        let expected_cup = [4usize, 4, 4, 5, 6, 9, 10, 12];
        for n in 8..=15u32 {
            let report = subring_cup_support(n, 4).unwrap();
            assert!(report.w2_power_nonzero, "w2^4 vanished at n={n}");
            assert_eq!(report.cup_length, expected_cup[(n - 8) as usize], "n={n}");
            // Generated in degrees 2 and 3, the subring's cup length is
            // exactly the longest surviving monomial.
            assert_eq!(
                report.cup_length as u32, report.max_monomial_length,
                "n={n}"
            );
        }
    }

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..10 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}
