//! Finite graded rings from closed-form presentations: generators with
//! degrees, relation templates with named parameter slots, a small text
//! format, graded homomorphism verification, and the exhaustive search over
//! undetermined parameters.
//!
//! The presentation families built here cover the oriented 2-plane
//! Grassmannians, the orthogonal pair spaces `W(n)` sitting over them, the
//! Stiefel manifolds, and the oriented 3-plane rings with one adjoined
//! indecomposable.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::f2core::{ambient_eq, Monomial, PolyF2, VarSet};
use crate::grassmann::{char_subring_oriented3, gysin_report};
use crate::oriented3::dyadic_exponent;
use crate::quotient::{
    build_quotient, cup_length, pairing_perfect, FiniteGradedRing, GradedQuotientRing,
};
use crate::swclasses::g_classes;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
}

/// A named degree-constrained parameter; degree 0 means a GF(2) scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSlot {
    pub name: String,
    pub degree: u32,
}

/// A relation that is linear in the parameters:
/// `base + sum_j param_j * cofactor_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelTemplate {
    pub base: PolyF2,
    pub param_terms: Vec<(usize, PolyF2)>,
}

/// Generators with degrees, relation templates, parameter slots, and the
/// degree cap of the space being presented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<GeneratorSpec>,
    pub ambient: Arc<VarSet>,
    pub relations: Vec<RelTemplate>,
    pub params: Vec<ParamSlot>,
    pub cap: u32,
}

impl Presentation {
    fn new(name: impl Into<String>, generators: Vec<(String, u32)>, cap: u32) -> Self {
        let ambient = VarSet::new(generators.clone());
        Presentation {
            name: name.into(),
            generators: generators
                .into_iter()
                .map(|(name, degree)| GeneratorSpec { name, degree })
                .collect(),
            ambient,
            relations: Vec::new(),
            params: Vec::new(),
            cap,
        }
    }

    fn push_plain(&mut self, poly: PolyF2) {
        if !poly.is_zero() {
            self.relations.push(RelTemplate {
                base: poly,
                param_terms: Vec::new(),
            });
        }
    }

    /// Substitutes a parameter assignment into every relation template.
    /// Assignments must be homogeneous of the slot degree (or zero).
    pub fn instantiate(&self, params: &[PolyF2]) -> Result<Vec<PolyF2>> {
        if params.len() != self.params.len() {
            return Err(Error::InvalidInput(format!(
                "{} expects {} parameters, got {}",
                self.name,
                self.params.len(),
                params.len()
            )));
        }
        for (slot, value) in self.params.iter().zip(params) {
            if !ambient_eq(value.ambient(), &self.ambient) {
                return Err(Error::AmbientMismatch);
            }
            if let Some(d) = value.homogeneous_degree() {
                if d != slot.degree {
                    return Err(Error::DegreeMismatch {
                        expected: slot.degree,
                        found: d,
                    });
                }
            } else if !value.is_zero() {
                return Err(Error::NonHomogeneousRelation(format!(
                    "parameter {} is not homogeneous",
                    slot.name
                )));
            }
        }
        let mut out = Vec::with_capacity(self.relations.len());
        for template in &self.relations {
            let mut rel = template.base.clone();
            for (slot, cofactor) in &template.param_terms {
                rel = rel.add(&params[*slot].mul(cofactor)?)?;
            }
            if !rel.is_zero() && rel.homogeneous_degree().is_none() {
                return Err(Error::NonHomogeneousRelation(rel.to_string()));
            }
            out.push(rel);
        }
        Ok(out)
    }

    /// The canonical text rendering; the parser accepts exactly this shape.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name {}", self.name);
        let _ = writeln!(out, "cap {}", self.cap);
        for g in &self.generators {
            let _ = writeln!(out, "gen {} {}", g.name, g.degree);
        }
        for p in &self.params {
            let _ = writeln!(out, "param {} {}", p.name, p.degree);
        }
        for rel in &self.relations {
            let _ = writeln!(out, "rel {}", self.render_template(rel));
        }
        out
    }

    fn render_template(&self, rel: &RelTemplate) -> String {
        let mut parts = Vec::new();
        if !rel.base.is_zero() {
            parts.push(format!("{}", rel.base));
        }
        for (slot, cofactor) in &rel.param_terms {
            let name = &self.params[*slot].name;
            if cofactor.term_count() == 1 && cofactor.terms()[0].is_one() {
                parts.push(name.clone());
            } else {
                for t in cofactor.terms() {
                    if t.is_one() {
                        parts.push(name.clone());
                    } else {
                        parts.push(format!("{name}*{}", self.ambient.mono_to_string(t)));
                    }
                }
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Parses the declarative presentation format:
///
/// ```text
/// # comment
/// name <identifier>
/// cap <integer>
/// gen <name> <degree>        (one per generator)
/// param <name> <degree>      (zero or more)
/// rel <polynomial expression>
/// ```
///
/// Expressions are sums of products of `name`, `name^k` and `1`; parameters
/// may appear at most once per product term and without an exponent.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut name = String::from("unnamed");
    let mut cap: Option<u32> = None;
    let mut gens: Vec<(String, u32)> = Vec::new();
    let mut params: Vec<ParamSlot> = Vec::new();
    let mut rel_lines: Vec<String> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (keyword, rest) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("line {}: expected a directive", lineno + 1)))?;
        let rest = rest.trim();
        match keyword {
            "name" => name = rest.to_string(),
            "cap" => {
                cap =
                    Some(rest.parse().map_err(|_| {
                        Error::Parse(format!("line {}: bad cap '{rest}'", lineno + 1))
                    })?)
            }
            "gen" | "param" => {
                let mut it = rest.split_whitespace();
                let (Some(id), Some(deg), None) = (it.next(), it.next(), it.next()) else {
                    return Err(Error::Parse(format!(
                        "line {}: expected '<name> <degree>'",
                        lineno + 1
                    )));
                };
                let degree: u32 = deg.parse().map_err(|_| {
                    Error::Parse(format!("line {}: bad degree '{deg}'", lineno + 1))
                })?;
                if keyword == "gen" {
                    gens.push((id.to_string(), degree));
                } else {
                    params.push(ParamSlot {
                        name: id.to_string(),
                        degree,
                    });
                }
            }
            "rel" => rel_lines.push(rest.to_string()),
            other => {
                return Err(Error::Parse(format!(
                    "line {}: unknown directive '{other}'",
                    lineno + 1
                )))
            }
        }
    }
    let cap = cap.ok_or_else(|| Error::Parse("missing 'cap' directive".into()))?;
    if gens.is_empty() {
        return Err(Error::Parse("no generators declared".into()));
    }
    let mut pres = Presentation::new(name, gens, cap);
    pres.params = params;
    for line in rel_lines {
        let template = parse_relation(&pres, &line)?;
        pres.relations.push(template);
    }
    Ok(pres)
}

fn parse_relation(pres: &Presentation, expr: &str) -> Result<RelTemplate> {
    let nvars = pres.ambient.len();
    let mut base_monos: Vec<Monomial> = Vec::new();
    let mut param_monos: HashMap<usize, Vec<Monomial>> = HashMap::new();
    for term in expr.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in '{expr}'")));
        }
        if term == "0" {
            continue;
        }
        let mut exps = vec![0u16; nvars];
        let mut param: Option<usize> = None;
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor == "1" {
                continue;
            }
            let (id, power) = match factor.split_once('^') {
                Some((id, e)) => {
                    let e: u16 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?;
                    (id.trim(), e)
                }
                None => (factor, 1),
            };
            if let Some(var) = pres.ambient.index_of(id) {
                exps[var] += power;
            } else if let Some(slot) = pres.params.iter().position(|p| p.name == id) {
                if power != 1 {
                    return Err(Error::Parse(format!(
                        "parameter '{id}' cannot carry an exponent"
                    )));
                }
                if param.replace(slot).is_some() {
                    return Err(Error::Parse(format!(
                        "term '{term}' uses more than one parameter"
                    )));
                }
            } else {
                return Err(Error::Parse(format!("unknown symbol '{id}'")));
            }
        }
        let mono = Monomial::new(exps);
        match param {
            None => base_monos.push(mono),
            Some(slot) => param_monos.entry(slot).or_default().push(mono),
        }
    }
    let mut param_terms: Vec<(usize, PolyF2)> = param_monos
        .into_iter()
        .map(|(slot, monos)| (slot, PolyF2::from_monomials(pres.ambient.clone(), monos)))
        .collect();
    param_terms.sort_by_key(|(slot, _)| *slot);
    Ok(RelTemplate {
        base: PolyF2::from_monomials(pres.ambient.clone(), base_monos),
        param_terms,
    })
}

/// Instantiates a presentation and runs the per-degree quotient up to its
/// cap. Relations landing above the cap are dropped; they cannot touch the
/// degrees kept.
pub fn build_presented_quotient(
    pres: &Presentation,
    params: &[PolyF2],
) -> Result<GradedQuotientRing> {
    let relations: Vec<PolyF2> = pres
        .instantiate(params)?
        .into_iter()
        .filter(|r| r.homogeneous_degree().is_some_and(|d| d <= pres.cap))
        .collect();
    build_quotient(pres.ambient.clone(), relations, pres.cap)
}

/// The finite carrier of an instantiated presentation.
pub fn build_presented_ring(pres: &Presentation, params: &[PolyF2]) -> Result<FiniteGradedRing> {
    FiniteGradedRing::from_quotient(&build_presented_quotient(pres, params)?)
}

// ---------------------------------------------------------------------------
// Presentation families
// ---------------------------------------------------------------------------

/// The oriented 2-plane Grassmannian ring of `G~(n,2)`, `n >= 4`:
/// a truncated polynomial algebra on `w2` with one exterior-type generator
/// whose square is zero or `w2^((n-2)/2) b` depending on `n mod 4`.
pub fn g2n_oriented(n: u32) -> Result<Presentation> {
    if n < 4 {
        return Err(Error::InvalidInput(
            "oriented 2-plane ring needs n >= 4".into(),
        ));
    }
    let cap = 2 * (n - 2);
    let mut pres = if n % 2 == 1 {
        let mut p = Presentation::new(
            format!("g2n-odd-n{n}"),
            vec![("w2".into(), 2), (format!("a{}", n - 1), n - 1)],
            cap,
        );
        p.push_plain(mono_poly(&p.ambient, &[(0, (n - 1) as u16 / 2)]));
        p.push_plain(mono_poly(&p.ambient, &[(1, 2)]));
        p
    } else {
        let mut p = Presentation::new(
            format!("g2n-even-n{n}"),
            vec![("w2".into(), 2), (format!("b{}", n - 2), n - 2)],
            cap,
        );
        p.push_plain(mono_poly(&p.ambient, &[(0, n as u16 / 2)]));
        if n.is_multiple_of(4) {
            p.push_plain(mono_poly(&p.ambient, &[(1, 2)]));
        } else {
            let square = mono_poly(&p.ambient, &[(1, 2)]);
            let mixed = mono_poly(&p.ambient, &[(0, (n as u16 - 2) / 2), (1, 1)]);
            p.push_plain(square.add(&mixed).unwrap());
        }
        p
    };
    pres.name = pres.name.clone();
    Ok(pres)
}

/// The ring of the orthogonal pair space `W(nn)` over the oriented 2-plane
/// Grassmannian, `nn >= 4`. Odd `nn` carries the two undetermined GF(2)
/// scalars in the square of the lower exterior generator.
pub fn w21(nn: u32) -> Result<Presentation> {
    if nn < 4 {
        return Err(Error::InvalidInput("pair-space ring needs nn >= 4".into()));
    }
    let cap = 3 * nn - 7;
    if nn.is_multiple_of(2) {
        let m = (nn - 2) / 2;
        let mut p = Presentation::new(
            format!("w21-even-n{nn}"),
            vec![
                ("w2".into(), 2),
                (format!("c{}", 2 * m), 2 * m),
                (format!("c{}", 2 * m + 1), 2 * m + 1),
            ],
            cap,
        );
        p.push_plain(mono_poly(&p.ambient, &[(0, m as u16)]));
        p.push_plain(mono_poly(&p.ambient, &[(1, 2)]));
        p.push_plain(mono_poly(&p.ambient, &[(2, 2)]));
        Ok(p)
    } else {
        let m = (nn - 1) / 2;
        if m < 2 {
            return Err(Error::InvalidInput(
                "odd pair-space ring needs nn >= 5".into(),
            ));
        }
        let mut p = Presentation::new(
            format!("w21-odd-n{nn}"),
            vec![
                ("w2".into(), 2),
                (format!("d{}", 2 * m - 2), 2 * m - 2),
                (format!("d{}", 2 * m), 2 * m),
            ],
            cap,
        );
        p.params = vec![
            ParamSlot {
                name: "lambda".into(),
                degree: 0,
            },
            ParamSlot {
                name: "mu".into(),
                degree: 0,
            },
        ];
        p.push_plain(mono_poly(&p.ambient, &[(0, m as u16)]));
        p.push_plain(mono_poly(&p.ambient, &[(2, 2)]));
        // d^2 + lambda w2^(m-2) d' + mu w2^(m-1) d
        p.relations.push(RelTemplate {
            base: mono_poly(&p.ambient, &[(1, 2)]),
            param_terms: vec![
                (0, mono_poly(&p.ambient, &[(0, m as u16 - 2), (2, 1)])),
                (1, mono_poly(&p.ambient, &[(0, m as u16 - 1), (1, 1)])),
            ],
        });
        Ok(p)
    }
}

/// The Stiefel-manifold ring: generators `a_(n-k) .. a_(n-1)` with
/// `a_i^2 = a_(2i)` when `2i <= n-1` and `a_i^2 = 0` otherwise.
pub fn stiefel(k: u32, n: u32) -> Result<Presentation> {
    if k == 0 || n <= k {
        return Err(Error::InvalidInput("Stiefel ring needs 0 < k < n".into()));
    }
    let lo = n - k;
    let cap: u32 = (lo..n).sum();
    let gens: Vec<(String, u32)> = (lo..n).map(|i| (format!("a{i}"), i)).collect();
    let mut pres = Presentation::new(format!("stiefel-k{k}-n{n}"), gens, cap);
    for i in lo..n {
        let idx = (i - lo) as usize;
        let square = mono_poly(&pres.ambient, &[(idx, 2)]);
        let rel = if 2 * i < n && 2 * i >= lo {
            let other = (2 * i - lo) as usize;
            square
                .add(&mono_poly(&pres.ambient, &[(other, 1)]))
                .unwrap()
        } else {
            square
        };
        pres.push_plain(rel);
    }
    Ok(pres)
}

/// The oriented 3-plane pattern for `n` within distance 3 of a power of two:
/// the characteristic subring with one adjoined indecomposable `W` and the
/// undetermined square `W^2 = P W` (at `n = 2^t`) or `W^2 = P1 W + P2`
/// (otherwise, with `P2` forced to zero for `n = 2^t - 2` and `2^t - 3`).
pub fn oriented3_pattern(n: u32) -> Result<Presentation> {
    let t = dyadic_exponent(n);
    let pow = 1u32 << t;
    if t < 3 || !(n == pow || n == pow - 1 || n == pow - 2 || n == pow - 3) {
        return Err(Error::InvalidInput(format!(
            "pattern defined for n within 3 of a power of two >= 8, got {n}"
        )));
    }
    let cap = 3 * (n - 3);
    let g = g_classes(3, n)?;
    if n == pow {
        let w_deg = pow - 1;
        let mut pres = Presentation::new(
            format!("oriented3-n{n}"),
            vec![
                ("w2".into(), 2),
                ("w3".into(), 3),
                (format!("w{w_deg}"), w_deg),
            ],
            cap,
        );
        pres.params = vec![ParamSlot {
            name: "P".into(),
            degree: w_deg,
        }];
        for i in [n - 2, n - 1] {
            pres.push_plain(lift_g(&pres.ambient, &g[i as usize]));
        }
        pres.relations.push(RelTemplate {
            base: mono_poly(&pres.ambient, &[(2, 2)]),
            param_terms: vec![(0, mono_poly(&pres.ambient, &[(2, 1)]))],
        });
        Ok(pres)
    } else {
        let w_deg = pow - 4;
        let mut pres = Presentation::new(
            format!("oriented3-n{n}"),
            vec![
                ("w2".into(), 2),
                ("w3".into(), 3),
                (format!("w{w_deg}"), w_deg),
            ],
            cap,
        );
        pres.params = vec![
            ParamSlot {
                name: "P1".into(),
                degree: w_deg,
            },
            ParamSlot {
                name: "P2".into(),
                degree: 2 * w_deg,
            },
        ];
        for i in [n - 2, n - 1, n] {
            pres.push_plain(lift_g(&pres.ambient, &g[i as usize]));
        }
        pres.relations.push(RelTemplate {
            base: mono_poly(&pres.ambient, &[(2, 2)]),
            param_terms: vec![
                (0, mono_poly(&pres.ambient, &[(2, 1)])),
                (1, PolyF2::one(pres.ambient.clone())),
            ],
        });
        Ok(pres)
    }
}

/// Builds the oriented 3-plane presented ring for a concrete parameter
/// assignment, enforcing the forced `P2 = 0` cases.
pub fn oriented3_presented(n: u32, params: &[PolyF2]) -> Result<FiniteGradedRing> {
    let pres = oriented3_pattern(n)?;
    let t = dyadic_exponent(n);
    let pow = 1u32 << t;
    if (n == pow - 2 || n == pow - 3) && params.len() == 2 && !params[1].is_zero() {
        return Err(Error::InvalidInput(format!("P2 must vanish for n = {n}")));
    }
    build_presented_ring(&pres, params)
}

fn mono_poly(ambient: &Arc<VarSet>, powers: &[(usize, u16)]) -> PolyF2 {
    let mut exps = vec![0u16; ambient.len()];
    for &(var, e) in powers {
        exps[var] += e;
    }
    PolyF2::from_monomial(ambient.clone(), Monomial::new(exps))
}

/// Re-expresses a polynomial in `w2, w3` inside a presentation ambient whose
/// first two variables are `w2, w3`.
fn lift_g(ambient: &Arc<VarSet>, g: &PolyF2) -> PolyF2 {
    let monos = g
        .terms()
        .iter()
        .map(|m| {
            let mut exps = vec![0u16; ambient.len()];
            exps[0] = m.exp(0);
            exps[1] = m.exp(1);
            Monomial::new(exps)
        })
        .collect();
    PolyF2::from_monomials(ambient.clone(), monos)
}

// ---------------------------------------------------------------------------
// Parameter search
// ---------------------------------------------------------------------------

/// One parameter assignment that survived the feasibility screen.
#[derive(Debug, Clone)]
pub struct FeasibleEntry {
    /// Assignment per slot, as reduced polynomials in the presentation
    /// ambient.
    pub params: Vec<PolyF2>,
    pub ring: FiniteGradedRing,
}

/// Outcome of the exhaustive search over parameter slots.
#[derive(Debug)]
pub struct FeasibleSearch {
    pub n: u32,
    pub candidates_tested: usize,
    pub feasible: Vec<FeasibleEntry>,
}

/// Default bound on the number of parameter assignments tried.
pub const DEFAULT_SEARCH_CAP: usize = 4096;

/// Enumerates all parameter assignments over the characteristic subring in
/// each slot degree and keeps those whose presented ring has the oriented
/// Betti numbers of the Gysin analysis and a perfect duality pairing in
/// every degree.
pub fn feasible_params(n: u32, search_cap: usize) -> Result<FeasibleSearch> {
    let pres = oriented3_pattern(n)?;
    let t = dyadic_exponent(n);
    let pow = 1u32 << t;
    let target_betti = gysin_report(n, 3)?.betti;
    let subring = char_subring_oriented3(n)?;

    // Basis of each slot's space of values: subring residue monomials of the
    // slot degree, lifted into the presentation ambient.
    let mut slot_bases: Vec<Vec<PolyF2>> = Vec::new();
    for (idx, slot) in pres.params.iter().enumerate() {
        let forced_zero = (n == pow - 2 || n == pow - 3) && idx == 1;
        if forced_zero {
            slot_bases.push(Vec::new());
            continue;
        }
        let basis = subring
            .residue_basis(slot.degree)
            .into_iter()
            .map(|m| {
                lift_g(
                    &pres.ambient,
                    &PolyF2::from_monomial(subring.ambient().clone(), m),
                )
            })
            .collect();
        slot_bases.push(basis);
    }
    let total_bits: u32 = slot_bases.iter().map(|b| b.len() as u32).sum();
    let candidates = 1usize
        .checked_shl(total_bits)
        .ok_or_else(|| Error::ResourceCap("parameter space exceeds 2^63".into()))?;
    if candidates > search_cap {
        return Err(Error::ResourceCap(format!(
            "parameter space of size {candidates} exceeds the cap {search_cap}"
        )));
    }

    let mut feasible = Vec::new();
    for mask in 0..candidates as u64 {
        let mut bit = 0u32;
        let mut assignment = Vec::with_capacity(slot_bases.len());
        for basis in &slot_bases {
            let mut value = PolyF2::zero(pres.ambient.clone());
            for b in basis {
                if mask >> bit & 1 == 1 {
                    value = value.add(b)?;
                }
                bit += 1;
            }
            assignment.push(value);
        }
        let finite = build_presented_ring(&pres, &assignment)?;
        let mut dims = finite.graded_dims();
        dims.resize(target_betti.len(), 0);
        if dims != target_betti {
            continue;
        }
        if finite.dim(finite.top_degree()) != 1 {
            continue;
        }
        let duality_ok =
            (0..=finite.top_degree()).all(|d| pairing_perfect(&finite, d).unwrap_or(false));
        if duality_ok {
            feasible.push(FeasibleEntry {
                params: assignment,
                ring: finite,
            });
        }
    }
    Ok(FeasibleSearch {
        n,
        candidates_tested: candidates,
        feasible,
    })
}

/// Cup length of the oriented 3-plane presented ring under one assignment.
pub fn cup_length_presented(n: u32, params: &[PolyF2]) -> Result<usize> {
    Ok(cup_length(&oriented3_presented(n, params)?))
}

// ---------------------------------------------------------------------------
// Homomorphisms
// ---------------------------------------------------------------------------

/// A candidate graded ring homomorphism between two presentations: an image
/// in the target for each source generator.
#[derive(Debug, Clone)]
pub struct HomSpec {
    pub label: String,
    pub source: Presentation,
    pub target: Presentation,
    pub images: Vec<PolyF2>,
}

impl HomSpec {
    /// Degree sanity: every image is homogeneous of its generator's degree
    /// (or zero).
    pub fn validate(&self) -> Result<()> {
        if self.images.len() != self.source.generators.len() {
            return Err(Error::InvalidInput(format!(
                "{}: expected {} images",
                self.label,
                self.source.generators.len()
            )));
        }
        for (gen, img) in self.source.generators.iter().zip(&self.images) {
            if !ambient_eq(img.ambient(), &self.target.ambient) {
                return Err(Error::AmbientMismatch);
            }
            if let Some(d) = img.homogeneous_degree() {
                if d != gen.degree {
                    return Err(Error::DegreeMismatch {
                        expected: gen.degree,
                        found: d,
                    });
                }
            } else if !img.is_zero() {
                return Err(Error::NonHomogeneousRelation(format!(
                    "image of {} is inhomogeneous",
                    gen.name
                )));
            }
        }
        Ok(())
    }
}

/// Whether the generator assignment defines a graded ring homomorphism:
/// every instantiated source relation must map to zero in the target ring.
pub fn verify_hom(
    spec: &HomSpec,
    source_params: &[PolyF2],
    target_params: &[PolyF2],
) -> Result<bool> {
    spec.validate()?;
    let target_ring = build_presented_quotient(&spec.target, target_params)?;
    for relation in spec.source.instantiate(source_params)? {
        // Relations above the target cap map into degrees that vanish there.
        let image = relation.substitute(&spec.target.ambient, &spec.images)?;
        if !target_ring.is_zero_class(&image)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The restriction map between consecutive oriented 2-plane rings, evaluated
/// on generators: `w2` maps to `w2`; for odd `n` the top exterior generator
/// maps to its namesake, for even `n` it maps to `w2` times the lower one.
pub fn g2n_restriction_hom(n: u32) -> Result<HomSpec> {
    let source = g2n_oriented(n + 1)?;
    let target = g2n_oriented(n)?;
    let w2 = PolyF2::var(target.ambient.clone(), 0);
    let second = if n % 2 == 1 {
        // b_(n-1) -> a_(n-1)
        PolyF2::var(target.ambient.clone(), 1)
    } else {
        // a_n -> w2 * b_(n-2)
        w2.mul(&PolyF2::var(target.ambient.clone(), 1))?
    };
    let images = vec![w2, second];
    Ok(HomSpec {
        label: format!("g2n-restriction-n{n}"),
        source,
        target,
        images,
    })
}

/// The restriction map between consecutive pair-space rings, evaluated on
/// generators.
pub fn w21_restriction_hom(nn: u32) -> Result<HomSpec> {
    let source = w21(nn + 1)?;
    let target = w21(nn)?;
    let w2 = PolyF2::var(target.ambient.clone(), 0);
    let images = if nn % 2 == 1 {
        // Source even W(2k+2): [w2, c_2k, c_(2k+1)] -> [w2, d_2k, 0].
        vec![
            w2,
            PolyF2::var(target.ambient.clone(), 2),
            PolyF2::zero(target.ambient.clone()),
        ]
    } else {
        // Source odd W(2k+1): [w2, d_(2k-2), d_2k] -> [w2, c_(2k-2), w2 c_(2k-2)].
        let c_low = PolyF2::var(target.ambient.clone(), 1);
        vec![w2.clone(), c_low.clone(), w2.mul(&c_low)?]
    };
    Ok(HomSpec {
        label: format!("w21-restriction-n{nn}"),
        source,
        target,
        images,
    })
}

/// The scalar pairs `(lambda, mu)` for which the odd pair-space ring has a
/// perfect duality pairing in every degree.
pub fn duality_consistent_scalars(nn: u32) -> Result<Vec<(bool, bool)>> {
    if nn.is_multiple_of(2) {
        return Err(Error::InvalidInput("scalars live on odd nn".into()));
    }
    let pres = w21(nn)?;
    let mut out = Vec::new();
    for (lambda, mu) in [(false, false), (false, true), (true, false), (true, true)] {
        let params = vec![scalar(&pres, lambda), scalar(&pres, mu)];
        let finite = build_presented_ring(&pres, &params)?;
        if finite.dim(finite.top_degree()) == 1
            && (0..=finite.top_degree()).all(|d| pairing_perfect(&finite, d).unwrap_or(false))
        {
            out.push((lambda, mu));
        }
    }
    Ok(out)
}

/// A degree-0 parameter value.
pub fn scalar(pres: &Presentation, value: bool) -> PolyF2 {
    if value {
        PolyF2::one(pres.ambient.clone())
    } else {
        PolyF2::zero(pres.ambient.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Poincare series of CP^(m-1) x S^a x S^b.
    fn product_dims(m: u32, a: u32, b: u32, cap: u32) -> Vec<usize> {
        let mut dims = vec![0usize; cap as usize + 1];
        for i in 0..m {
            for &ea in &[0, a] {
                for &eb in &[0, b] {
                    let d = 2 * i + ea + eb;
                    if d <= cap {
                        dims[d as usize] += 1;
                    }
                }
            }
        }
        dims
    }

    #[test]
    fn g2n_odd_dims() {
        let pres = g2n_oriented(5).unwrap();
        let ring = build_presented_ring(&pres, &[]).unwrap();
        assert_eq!(ring.graded_dims(), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn g2n_even_cases_have_perfect_duality() {
        for n in [4u32, 6, 8, 10, 12] {
            let pres = g2n_oriented(n).unwrap();
            let ring = build_presented_ring(&pres, &[]).unwrap();
            assert_eq!(ring.top_degree() as u32, 2 * (n - 2), "n={n}");
            for d in 0..=ring.top_degree() {
                assert!(pairing_perfect(&ring, d).unwrap(), "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn stiefel_v3_r9() {
        let pres = stiefel(3, 9).unwrap();
        let ring = build_presented_ring(&pres, &[]).unwrap();
        assert_eq!(ring.total_dim(), 8);
        // All three squares vanish: a6^2 in degree 12 > 8.
        let quotient = build_presented_quotient(&pres, &[]).unwrap();
        for idx in 0..3usize {
            let gen = PolyF2::var(quotient.ambient().clone(), idx);
            assert!(quotient.is_zero_class(&gen.mul(&gen).unwrap()).unwrap());
        }
    }

    #[test]
    fn stiefel_total_dims_are_powers_of_two() {
        for (k, n) in [(2u32, 7u32), (3, 9), (3, 12), (4, 9), (5, 9)] {
            let pres = stiefel(k, n).unwrap();
            let ring = build_presented_ring(&pres, &[]).unwrap();
            assert_eq!(ring.total_dim(), 1 << k, "V_{k}(R^{n})");
        }
    }

    #[test]
    fn stiefel_square_relation_hits_other_generator() {
        // V_5(R^9): a4^2 = a8.
        let pres = stiefel(5, 9).unwrap();
        let quotient = build_presented_quotient(&pres, &[]).unwrap();
        let a4 = PolyF2::var(quotient.ambient().clone(), 0);
        let a8 = PolyF2::var(quotient.ambient().clone(), 4);
        let diff = a4.mul(&a4).unwrap().add(&a8).unwrap();
        assert!(quotient.is_zero_class(&diff).unwrap());
        assert!(!quotient.is_zero_class(&a8).unwrap());
    }

    #[test]
    fn w21_even_matches_product_of_spheres() {
        for m in [2u32, 3, 4, 5] {
            let nn = 2 * m + 2;
            let pres = w21(nn).unwrap();
            let ring = build_presented_ring(&pres, &[]).unwrap();
            let mut dims = ring.graded_dims();
            dims.resize((3 * nn - 7) as usize + 1, 0);
            assert_eq!(
                dims,
                product_dims(m, 2 * m, 2 * m + 1, 3 * nn - 7),
                "nn={nn}"
            );
        }
    }

    #[test]
    fn w21_odd_matches_product_of_spheres_for_all_scalars() {
        for m in [2u32, 3, 4] {
            let nn = 2 * m + 1;
            let pres = w21(nn).unwrap();
            for (lambda, mu) in [(false, false), (false, true), (true, false), (true, true)] {
                let params = vec![scalar(&pres, lambda), scalar(&pres, mu)];
                let ring = build_presented_ring(&pres, &params).unwrap();
                let mut dims = ring.graded_dims();
                dims.resize((3 * nn - 7) as usize + 1, 0);
                assert_eq!(
                    dims,
                    product_dims(m, 2 * m - 2, 2 * m, 3 * nn - 7),
                    "nn={nn}, ({lambda},{mu})"
                );
            }
        }
    }

    #[test]
    fn oriented3_pattern_n8_has_forced_trivial_parameter() {
        let subring = char_subring_oriented3(8).unwrap();
        // The slot degree 7 is empty: g7 = w2^2 w3 spans it.
        assert_eq!(subring.dim(7), 0);
        let search = feasible_params(8, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(search.candidates_tested, 1);
        assert_eq!(search.feasible.len(), 1);
        let ring = &search.feasible[0].ring;
        assert_eq!(ring.top_degree(), 15);
        assert_eq!(ring.total_dim(), 14);
    }

    /// n = 2^t - 2 and 2^t - 3 must reject a nonzero second parameter.
    #[test]
    fn forced_zero_second_parameter_is_enforced() {
        let pres = oriented3_pattern(14).unwrap();
        let p1 = PolyF2::zero(pres.ambient.clone());
        let p2 = mono_poly(&pres.ambient, &[(0, 12)]); // w2^12, degree 24
        assert!(oriented3_presented(14, &[p1.clone(), p2]).is_err());
        assert!(oriented3_presented(14, &[p1.clone(), PolyF2::zero(pres.ambient.clone())]).is_ok());
    }

    /// Regression fixtures: the cup length of every feasible presented ring,
    /// constant across the feasible assignments for each n, and at least the
    /// cup length of the characteristic subring.
    #[test]
    fn presented_cup_lengths_are_frozen() {
        let expected = [(8u32, 5usize), (13, 10), (14, 11), (15, 13), (16, 13)];
        for (n, want) in expected {
            let search = feasible_params(n, DEFAULT_SEARCH_CAP).unwrap();
            assert!(!search.feasible.is_empty());
            let subring =
                FiniteGradedRing::from_quotient(&char_subring_oriented3(n).unwrap()).unwrap();
            let subring_cup = cup_length(&subring);
            for entry in &search.feasible {
                let got = cup_length(&entry.ring);
                assert_eq!(got, want, "cup length drifted at n={n}");
                assert!(got >= subring_cup, "subring inclusion at n={n}");
            }
        }
    }

    #[test]
    fn identity_hom_verifies() {
        let pres = g2n_oriented(7).unwrap();
        let images = (0..pres.generators.len())
            .map(|i| PolyF2::var(pres.ambient.clone(), i))
            .collect();
        let spec = HomSpec {
            label: "identity".into(),
            source: pres.clone(),
            target: pres,
            images,
        };
        assert!(verify_hom(&spec, &[], &[]).unwrap());
    }

    #[test]
    fn g2n_restriction_holds_both_parities() {
        for n in 4..=12u32 {
            let spec = g2n_restriction_hom(n).unwrap();
            assert!(verify_hom(&spec, &[], &[]).unwrap(), "n={n}");
        }
    }

    #[test]
    fn w21_restriction_holds_for_consistent_scalars() {
        for nn in 5..=12u32 {
            let spec = w21_restriction_hom(nn).unwrap();
            if nn % 2 == 1 {
                // Source even, no params; target odd carries scalars.
                for (lambda, mu) in duality_consistent_scalars(nn).unwrap() {
                    let params = vec![scalar(&spec.target, lambda), scalar(&spec.target, mu)];
                    assert!(verify_hom(&spec, &[], &params).unwrap(), "nn={nn}");
                }
            } else {
                for (lambda, mu) in duality_consistent_scalars(nn + 1).unwrap() {
                    let params = vec![scalar(&spec.source, lambda), scalar(&spec.source, mu)];
                    assert!(verify_hom(&spec, &params, &[]).unwrap(), "nn={nn}");
                }
            }
        }
    }

    #[test]
    fn broken_hom_is_rejected() {
        // w2 -> w2, a4 -> w2^2 sends the source relation w2^2 to w2^2,
        // which survives in the bigger target ring.
        let source = g2n_oriented(5).unwrap();
        let target = g2n_oriented(9).unwrap();
        let w2 = PolyF2::var(target.ambient.clone(), 0);
        let spec = HomSpec {
            label: "relation-broken".into(),
            source: source.clone(),
            target: target.clone(),
            images: vec![w2.clone(), w2.mul(&w2).unwrap()],
        };
        assert!(!verify_hom(&spec, &[], &[]).unwrap());

        // Degree-mismatched images are rejected outright.
        let swapped = HomSpec {
            label: "degree-broken".into(),
            source,
            target: target.clone(),
            images: vec![
                PolyF2::var(target.ambient.clone(), 1),
                PolyF2::var(target.ambient.clone(), 0),
            ],
        };
        assert!(verify_hom(&swapped, &[], &[]).is_err());
    }

    #[test]
    fn parser_round_trips_the_builders() {
        let presentations = vec![
            g2n_oriented(5).unwrap(),
            g2n_oriented(6).unwrap(),
            g2n_oriented(8).unwrap(),
            w21(7).unwrap(),
            w21(8).unwrap(),
            stiefel(3, 9).unwrap(),
            oriented3_pattern(8).unwrap(),
            oriented3_pattern(13).unwrap(),
        ];
        for pres in presentations {
            let text = pres.to_text();
            let parsed = parse_presentation(&text).unwrap();
            assert_eq!(parsed, pres, "round trip failed for {}", pres.name);
        }
    }

    #[test]
    fn parser_rejects_malformed_input() {
        assert!(parse_presentation("gen x 1").is_err()); // no cap
        assert!(parse_presentation("cap 4\nrel x\n").is_err()); // no generators
        assert!(parse_presentation("cap 4\ngen x 1\nrel y^2\n").is_err()); // unknown symbol
        assert!(
            parse_presentation("cap 4\ngen x 1\nparam P 1\nparam Q 1\nrel P*Q\n").is_err(),
            "two parameters in one term"
        );
    }

    #[test]
    fn shipped_fixture_files_parse_to_the_builders() {
        let cases: Vec<(&str, Presentation)> = vec![
            (
                include_str!("../fixtures/presentations/thm22_odd_n5.pres"),
                g2n_oriented(5).unwrap(),
            ),
            (
                include_str!("../fixtures/presentations/thm22_mod4_n8.pres"),
                g2n_oriented(8).unwrap(),
            ),
            (
                include_str!("../fixtures/presentations/thm22_mod2_n6.pres"),
                g2n_oriented(6).unwrap(),
            ),
            (
                include_str!("../fixtures/presentations/thm25_even_n8.pres"),
                w21(8).unwrap(),
            ),
            (
                include_str!("../fixtures/presentations/thm25_odd_n7.pres"),
                w21(7).unwrap(),
            ),
            (
                include_str!("../fixtures/presentations/thmb_n8.pres"),
                oriented3_pattern(8).unwrap(),
            ),
            (
                include_str!("../fixtures/presentations/thmb_n13.pres"),
                oriented3_pattern(13).unwrap(),
            ),
            (
                include_str!("../fixtures/presentations/v3n_k3_n9.pres"),
                stiefel(3, 9).unwrap(),
            ),
        ];
        for (text, built) in cases {
            let parsed = parse_presentation(text).unwrap();
            assert_eq!(parsed, built, "fixture drifted for {}", built.name);
        }
    }
}
