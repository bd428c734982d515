//! GF(2) polynomials with weighted variable degrees, plus the binary-expansion
//! combinatorics behind the `3p1 + 4p2 + 5p3` decomposition.
//!
//! A polynomial is a finite set of distinct monomials (every coefficient is 1;
//! cancellation is already applied). Each variable carries an internal degree,
//! so the graded degree of `w2^a * w3^b` is `2a + 3b`, not `a + b`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Exponent type. Degree caps in this problem keep exponents well below 2^16.
pub type Exp = u16;

/// An ambient set of variables with internal degrees.
///
/// Polynomials over different ambients never mix; operations return
/// [`Error::AmbientMismatch`] when handed mismatched operands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
    degrees: Vec<u32>,
}

impl VarSet {
    pub fn new<S: Into<String>>(vars: Vec<(S, u32)>) -> Arc<Self> {
        let mut names = Vec::with_capacity(vars.len());
        let mut degrees = Vec::with_capacity(vars.len());
        for (name, deg) in vars {
            assert!(deg > 0, "variables must have positive internal degree");
            names.push(name.into());
            degrees.push(deg);
        }
        Arc::new(VarSet { names, degrees })
    }

    /// Variables `w1, ..., wk` with deg `wi = i`.
    pub fn grassmann(k: u32) -> Arc<Self> {
        Self::new((1..=k).map(|i| (format!("w{i}"), i)).collect())
    }

    /// Variables `w2, ..., wk` with deg `wi = i`; the home of the `g`
    /// classes.
    pub fn grassmann_reduced(k: u32) -> Arc<Self> {
        Self::new((2..=k).map(|i| (format!("w{i}"), i)).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree_of(&self, var: usize) -> u32 {
        self.degrees[var]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Weighted degree of a monomial over this ambient.
    pub fn mono_degree(&self, m: &Monomial) -> u32 {
        debug_assert_eq!(m.exps.len(), self.len());
        m.exps
            .iter()
            .zip(&self.degrees)
            .map(|(&e, &d)| e as u32 * d)
            .sum()
    }

    /// Graded-lexicographic comparison: first by weighted degree, ties broken
    /// lexicographically on the exponent vector (first variable weighs most).
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.mono_degree(a)
            .cmp(&self.mono_degree(b))
            .then_with(|| a.exps.cmp(&b.exps))
    }

    /// All monomials of weighted degree exactly `d`, in decreasing
    /// graded-lexicographic order (the leading monomial comes first).
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0 as Exp; self.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| self.cmp_mono(b, a));
        out
    }

    fn enumerate(&self, var: usize, remaining: u32, exps: &mut Vec<Exp>, out: &mut Vec<Monomial>) {
        if var == self.len() {
            if remaining == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let d = self.degrees[var];
        let max = remaining / d;
        for e in 0..=max {
            exps[var] = e as Exp;
            self.enumerate(var + 1, remaining - e * d, exps, out);
        }
        exps[var] = 0;
    }

    pub fn mono_to_string(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        parts.join("*")
    }
}

/// Checks that two polynomials share an ambient (pointer equality fast path).
pub fn ambient_eq(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An exponent-vector monomial. Degrees live in the ambient [`VarSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<Exp>,
}

impl Monomial {
    pub fn new(exps: Vec<Exp>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, idx: usize, power: Exp) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = power;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[Exp] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> Exp {
        self.exps[var]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product of monomials: exponent vectors add.
    pub fn times(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        }
    }
}

/// A GF(2) polynomial: a set of distinct monomials over a shared ambient,
/// stored as a term list sorted in decreasing graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyF2 {
    ambient: Arc<VarSet>,
    terms: Vec<Monomial>,
}

impl PolyF2 {
    pub fn zero(ambient: Arc<VarSet>) -> Self {
        PolyF2 {
            ambient,
            terms: Vec::new(),
        }
    }

    pub fn one(ambient: Arc<VarSet>) -> Self {
        let m = Monomial::one(ambient.len());
        PolyF2 {
            ambient,
            terms: vec![m],
        }
    }

    pub fn var(ambient: Arc<VarSet>, idx: usize) -> Self {
        let m = Monomial::var(ambient.len(), idx, 1);
        PolyF2 {
            ambient,
            terms: vec![m],
        }
    }

    pub fn from_monomial(ambient: Arc<VarSet>, m: Monomial) -> Self {
        assert_eq!(m.exps.len(), ambient.len());
        PolyF2 {
            ambient,
            terms: vec![m],
        }
    }

    /// Builds a polynomial from an arbitrary monomial list, sorting and
    /// cancelling duplicate pairs mod 2.
    pub fn from_monomials(ambient: Arc<VarSet>, mut monos: Vec<Monomial>) -> Self {
        monos.sort_by(|a, b| ambient.cmp_mono(b, a));
        let terms = cancel_sorted(monos);
        PolyF2 { ambient, terms }
    }

    pub fn ambient(&self) -> &Arc<VarSet> {
        &self.ambient
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial in graded-lex order, if nonzero.
    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.first()
    }

    /// Degree of the highest term, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|m| self.ambient.mono_degree(m))
    }

    /// `Some(d)` when every term has degree `d`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let first = self.degree()?;
        for t in &self.terms {
            if self.ambient.mono_degree(t) != first {
                return None;
            }
        }
        Some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The degree-`d` graded component.
    pub fn graded_component(&self, d: u32) -> PolyF2 {
        let terms = self
            .terms
            .iter()
            .filter(|m| self.ambient.mono_degree(m) == d)
            .cloned()
            .collect();
        PolyF2 {
            ambient: self.ambient.clone(),
            terms,
        }
    }

    /// 1 iff `m` occurs in the term set. The query monomial must have one
    /// exponent per ambient variable.
    pub fn coefficient_of(&self, m: &Monomial) -> bool {
        assert_eq!(m.exps().len(), self.ambient.len(), "ambient mismatch");
        self.terms
            .binary_search_by(|t| self.ambient.cmp_mono(m, t))
            .is_ok()
    }

    /// Sum over GF(2): symmetric difference of term sets.
    pub fn add(&self, other: &PolyF2) -> Result<PolyF2> {
        if !ambient_eq(&self.ambient, &other.ambient) {
            return Err(Error::AmbientMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.ambient.cmp_mono(&self.terms[i], &other.terms[j]) {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend(other.terms[j..].iter().cloned());
        Ok(PolyF2 {
            ambient: self.ambient.clone(),
            terms,
        })
    }

    /// Product with a single monomial. Shifting every exponent vector by the
    /// same amount preserves graded-lex order, so no re-sort is needed.
    pub fn times_mono(&self, m: &Monomial) -> PolyF2 {
        PolyF2 {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|t| t.times(m)).collect(),
        }
    }

    /// Product with `var^power`.
    pub fn times_var(&self, var: usize, power: Exp) -> PolyF2 {
        self.times_mono(&Monomial::var(self.ambient.len(), var, power))
    }

    /// Distributive product with GF(2) cancellation.
    pub fn mul(&self, other: &PolyF2) -> Result<PolyF2> {
        if !ambient_eq(&self.ambient, &other.ambient) {
            return Err(Error::AmbientMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(PolyF2::zero(self.ambient.clone()));
        }
        // Keep the shorter factor outside so each inner pass stays sorted.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = PolyF2::zero(self.ambient.clone());
        for m in &small.terms {
            acc = acc.add(&large.times_mono(m))?;
        }
        Ok(acc)
    }

    /// Exact division by a single variable; fails with
    /// [`Error::NotDivisible`] if some term omits it.
    pub fn exact_div_var(&self, var: usize) -> Result<PolyF2> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exps[var] == 0 {
                return Err(Error::NotDivisible);
            }
            let mut exps = t.exps.clone();
            exps[var] -= 1;
            terms.push(Monomial::new(exps));
        }
        // Dividing every term by the same variable preserves the order.
        Ok(PolyF2 {
            ambient: self.ambient.clone(),
            terms,
        })
    }

    /// Deletes every term divisible by `var` (reduction modulo the variable),
    /// staying in the same ambient.
    pub fn delete_var_multiples(&self, var: usize) -> PolyF2 {
        PolyF2 {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|t| t.exps[var] == 0)
                .cloned()
                .collect(),
        }
    }

    /// Applies the ring homomorphism sending variable `i` to `images[i]`.
    ///
    /// Used both for reducing modulo `w1` across ambients and for checking
    /// homomorphisms between presented rings. Images must all share one
    /// target ambient.
    pub fn substitute(&self, target: &Arc<VarSet>, images: &[PolyF2]) -> Result<PolyF2> {
        if images.len() != self.ambient.len() {
            return Err(Error::AmbientMismatch);
        }
        for img in images {
            if !ambient_eq(img.ambient(), target) {
                return Err(Error::AmbientMismatch);
            }
        }
        let mut acc = PolyF2::zero(target.clone());
        for t in &self.terms {
            let mut prod = PolyF2::one(target.clone());
            for (var, &e) in t.exps.iter().enumerate() {
                for _ in 0..e {
                    prod = prod.mul(&images[var])?;
                    if prod.is_zero() {
                        break;
                    }
                }
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for PolyF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|m| self.ambient.mono_to_string(m))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Removes equal adjacent pairs from a descending-sorted monomial list
/// (GF(2) cancellation).
fn cancel_sorted(monos: Vec<Monomial>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(monos.len());
    for m in monos {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

/// Positions of the 1-bits of a non-negative integer, kept in decreasing
/// order. `S(q)` is empty exactly when `q = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySupport {
    bits: Vec<u32>,
}

impl BinarySupport {
    pub fn bits(&self) -> &[u32] {
        &self.bits
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Reconstructs the integer from its support.
    pub fn value(&self) -> u64 {
        self.bits.iter().map(|&b| 1u64 << b).sum()
    }
}

impl fmt::Display for BinarySupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.bits.iter().map(|b| b.to_string()).collect();
        write!(f, "{{{}}}", inner.join(","))
    }
}

/// The set of positions where the binary expansion of `q` has a 1, in
/// decreasing order.
pub fn binary_support(q: u64) -> BinarySupport {
    let mut bits = Vec::new();
    for b in (0..64).rev() {
        if q >> b & 1 == 1 {
            bits.push(b);
        }
    }
    BinarySupport { bits }
}

/// Parity of the binomial coefficient `C(m, r)`: odd exactly when the binary
/// support of `r` is contained in that of `m`. Returns 0 for `r > m`.
pub fn lucas_parity(m: u64, r: u64) -> bool {
    m & r == r
}

/// Property P: the binary supports of the three integers are pairwise
/// disjoint.
pub fn has_property_p(p1: u64, p2: u64, p3: u64) -> bool {
    p1 & p2 == 0 && p1 & p3 == 0 && p2 & p3 == 0
}

/// Writes `i = 3*p1 + 4*p2 + 5*p3` with `{p1, p2, p3}` satisfying property P,
/// or `None` for `i` in `{1, 2, 7}` where no such decomposition exists.
///
/// The construction is the recursion that proves the decomposition exists:
/// strip the largest `5 * 2^s <= i`, decompose the remainder, then repair the
/// exponent-`s` collision in whichever of `p1`, `p2` it landed. Remainders
/// 1, 2 and 7 are handled by their own closed families.
pub fn decompose_345(i: u64) -> Option<(u64, u64, u64)> {
    match i {
        0 => return Some((0, 0, 0)),
        1 | 2 | 7 => return None,
        3 => return Some((1, 0, 0)),
        4 => return Some((0, 1, 0)),
        5 => return Some((0, 0, 1)),
        6 => return Some((2, 0, 0)),
        8 => return Some((0, 2, 0)),
        9 => return Some((3, 0, 0)),
        10 => return Some((0, 0, 2)),
        _ => {}
    }
    let s = {
        let mut s = 0;
        while 5u64 << (s + 1) <= i {
            s += 1;
        }
        s
    };
    let r = i - (5 << s);
    match r {
        1 | 7 => {
            // 5*2^s + 1 and 5*2^s + 7 are divisible by 3 for even s; for odd
            // s split off a single 5.
            return if s % 2 == 0 {
                Some((i / 3, 0, 0))
            } else {
                Some(((i - 5) / 3, 0, 1))
            };
        }
        2 => {
            return if s % 2 == 1 {
                Some((i / 3, 0, 0))
            } else {
                Some(((i - 4) / 3, 1, 0))
            };
        }
        _ => {}
    }
    let (p1, p2, p3) = decompose_345(r).expect("remainder is never 1, 2 or 7 here");
    let pow = 1u64 << s;
    if p1 < pow && p2 < pow {
        // Case 1: the new 5*2^s slot is free.
        Some((p1, p2, p3 + pow))
    } else if p1 >= pow {
        // Case 2: move the colliding bit from p1 into p2 at position s+1.
        debug_assert!(p1 < 2 * pow && p2 < pow && p3 < pow);
        Some((p1 - pow, p2 + 2 * pow, p3))
    } else {
        // Case 3: move the colliding bit from p2 into p1 at positions s, s+1.
        debug_assert!(p2 >= pow && p2 < 2 * pow && p3 < pow);
        Some((p1 + pow + 2 * pow, p2 - pow, p3))
    }
}
