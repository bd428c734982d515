//! Maps verification-suite names onto check jobs. Each job is independent
//! and returns the records for its slice of the suite; the runner may fan
//! jobs out across threads and prints records in job order.

use std::collections::BTreeSet;

use grasscoh::f2core::{decompose_345, has_property_p};
use grasscoh::grassmann::{
    charrank_oriented_tautological, gysin_report, ucharrank_oriented3, verify_theorem_k5,
};
use grasscoh::oriented3::{
    anomalous_classes, cup_bounds, dyadic_exponent, subring_cup_support, verify_annihilation,
    verify_lemma_not_so, verify_relations_a, Parity,
};
use grasscoh::presentations::{
    duality_consistent_scalars, feasible_params, g2n_restriction_hom, oriented3_pattern, scalar,
    verify_hom, w21_restriction_hom,
};
use grasscoh::swclasses::g_vanishing_degrees_with_cap;
use grasscoh::{Error, Result};

use crate::records::{fnv1a64, VerificationRecord};

pub const SUITES: &[&str] = &[
    "lemma21",
    "lemma31",
    "thmA",
    "thmB",
    "relations-a",
    "cup-bounds",
    "prop34",
    "thm-k5",
    "ucharrank",
    "homs",
    "all",
];

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub max: Option<u64>,
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub t: Option<u32>,
    pub seed: u64,
    pub samples: usize,
    pub cap_terms: usize,
    pub cap_dim: usize,
}

pub type Job = Box<dyn FnOnce() -> Result<Vec<VerificationRecord>> + Send>;

pub fn suite_jobs(suite: &str, opts: &SuiteOptions) -> Result<Vec<Job>> {
    let mut jobs: Vec<Job> = Vec::new();
    match suite {
        "lemma21" => lemma21_jobs(opts, &mut jobs),
        "lemma31" => lemma31_jobs(opts, &mut jobs),
        "thmA" => thm_a_jobs(opts, &mut jobs),
        "thmB" => thm_b_jobs(opts, &mut jobs),
        "relations-a" => relations_a_jobs(opts, &mut jobs),
        "cup-bounds" => cup_bounds_jobs(opts, &mut jobs),
        "prop34" => prop34_jobs(opts, &mut jobs),
        "thm-k5" => thm_k5_jobs(opts, &mut jobs),
        "ucharrank" => ucharrank_jobs(opts, &mut jobs),
        "homs" => homs_jobs(opts, &mut jobs),
        "all" => {
            for name in SUITES.iter().filter(|s| **s != "all") {
                jobs.extend(suite_jobs(name, opts)?);
            }
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown suite '{other}'; expected one of {SUITES:?}"
            )))
        }
    }
    Ok(jobs)
}

fn lemma21_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let max = opts.max.unwrap_or(2048) as u32;
    let cap_terms = opts.cap_terms;
    jobs.push(Box::new(move || {
        let vanishing = g_vanishing_degrees_with_cap(3, max, cap_terms)?;
        let expected: BTreeSet<u32> = (3..)
            .map(|r| (1u32 << r) - 3)
            .take_while(|&v| v <= max)
            .collect();
        let pass = vanishing == expected;
        let detail = format!(
            "vanishing={:?} expected={:?}",
            vanishing.iter().collect::<Vec<_>>(),
            expected.iter().collect::<Vec<_>>()
        );
        Ok(vec![VerificationRecord::new(
            "lemma21",
            "k3-vanishing-set",
            pass,
        )
        .with_param("k", 3)
        .with_param("max", max as i64)
        .with_detail(detail)])
    }));
    let max_high = max.min(512);
    for k in 5..=8u32 {
        let cap_terms = opts.cap_terms;
        jobs.push(Box::new(move || {
            let vanishing = g_vanishing_degrees_with_cap(k, max_high, cap_terms)?;
            Ok(vec![VerificationRecord::new(
                "lemma21",
                format!("k{k}-never-zero"),
                vanishing.is_empty(),
            )
            .with_param("k", k as i64)
            .with_param("max", max_high as i64)])
        }));
    }
}

fn lemma31_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let ts: Vec<u32> = match opts.t {
        Some(t) => vec![t],
        None => vec![4, 5],
    };
    for t in ts {
        let half = 1u32 << (t - 1);
        let ns: Vec<u32> = match opts.n {
            Some(n) => vec![n],
            None => (half + 1..=2 * half).collect(),
        };
        for n in ns {
            jobs.push(Box::new(move || {
                let pass = verify_lemma_not_so(n, t)?;
                Ok(vec![VerificationRecord::new(
                    "lemma31",
                    "w2-power-congruence",
                    pass,
                )
                .with_param("n", n as i64)
                .with_param("t", t as i64)])
            }));
        }
    }
}

/// Expected first surjectivity-failure degree after 3 for the oriented
/// 3-plane Grassmannian.
pub fn predicted_first_failure(n: u32) -> u32 {
    let t = dyadic_exponent(n);
    let pow = 1u32 << t;
    if n == pow {
        pow - 1
    } else if n >= pow - 3 {
        pow - 4
    } else {
        (3 * n - pow - 1).min(pow - 4)
    }
}

fn thm_a_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let ns: Vec<u32> = match opts.n {
        Some(n) => vec![n],
        None => (8..=16).collect(),
    };
    for n in ns {
        jobs.push(Box::new(move || {
            let report = gysin_report(n, 3)?;
            let expected = predicted_first_failure(n);
            let got = report.first_failure_above(3).unwrap_or(0);
            let pass = got == expected && report.first_failure() == got;
            Ok(vec![VerificationRecord::new(
                "thmA",
                "first-indecomposable-degree",
                pass,
            )
            .with_param("n", n as i64)
            .with_param("k", 3)
            .with_detail(format!(
                "first_failure={got} expected={expected}"
            ))])
        }));
    }
}

fn thm_b_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let ns: Vec<u32> = match opts.n {
        Some(n) => vec![n],
        None => vec![8, 13, 14, 15, 16],
    };
    for n in ns {
        let cap_dim = opts.cap_dim;
        jobs.push(Box::new(move || {
            let pattern_hash = fnv1a64(&oriented3_pattern(n)?.to_text());
            let search = feasible_params(n, cap_dim)?;
            let betti = gysin_report(n, 3)?.betti;
            let mut records = Vec::new();
            records.push(
                VerificationRecord::new("thmB", "feasible-nonempty", !search.feasible.is_empty())
                    .with_param("n", n as i64)
                    .with_detail(format!(
                        "{} of {} candidates feasible",
                        search.feasible.len(),
                        search.candidates_tested
                    ))
                    .with_fixture("pattern", pattern_hash.clone()),
            );
            let dims_ok = search.feasible.iter().all(|entry| {
                let mut dims = entry.ring.graded_dims();
                dims.resize(betti.len(), 0);
                dims == betti
            });
            records.push(
                VerificationRecord::new("thmB", "dims-match-betti", dims_ok)
                    .with_param("n", n as i64)
                    .with_fixture("pattern", pattern_hash.clone()),
            );
            let t = dyadic_exponent(n);
            let pow = 1u32 << t;
            if n == pow - 2 || n == pow - 3 {
                let forced_ok = search
                    .feasible
                    .iter()
                    .all(|entry| entry.params.len() == 2 && entry.params[1].is_zero());
                records.push(
                    VerificationRecord::new("thmB", "p2-forced-zero", forced_ok)
                        .with_param("n", n as i64)
                        .with_fixture("pattern", pattern_hash.clone()),
                );
            }
            let mut param_survey: Vec<String> = search
                .feasible
                .iter()
                .map(|entry| {
                    entry
                        .params
                        .iter()
                        .map(|p| format!("{p}"))
                        .collect::<Vec<_>>()
                        .join(" ; ")
                })
                .collect();
            param_survey.sort();
            records.push(
                VerificationRecord::new("thmB", "feasible-parameter-survey", true)
                    .with_param("n", n as i64)
                    .with_detail(param_survey.join(" | "))
                    .with_fixture("pattern", pattern_hash),
            );
            Ok(records)
        }));
    }
}

fn relations_a_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let ns: Vec<u32> = match opts.n {
        Some(n) => vec![n],
        None => (10..=12).chain(17..=28).collect(),
    };
    for n in ns {
        let seed = opts.seed;
        let samples = opts.samples;
        jobs.push(Box::new(move || {
            let classes = anomalous_classes(n)?;
            let mut records = Vec::new();
            records.push(
                VerificationRecord::new("relations-a", "defining-equations", true)
                    .with_param("n", n as i64)
                    .with_detail(format!(
                        "kernel dims ({}, {})",
                        classes.kernel_dim_low, classes.kernel_dim_high
                    )),
            );
            if classes.parity == Parity::Even {
                records.push(
                    VerificationRecord::new(
                        "relations-a",
                        "kernel-dimension-one",
                        classes.kernel_dim_low == 1 && classes.kernel_dim_high == 1,
                    )
                    .with_param("n", n as i64),
                );
            }
            let annihilation = verify_annihilation(&classes)?;
            records.push(
                VerificationRecord::new("relations-a", "w2-w3-annihilation", annihilation.pass())
                    .with_param("n", n as i64)
                    .with_detail(observations(&annihilation.info)),
            );
            let relations = verify_relations_a(&classes, seed, samples)?;
            for (name, ok) in &relations.checks {
                records.push(
                    VerificationRecord::new("relations-a", name.clone(), *ok)
                        .with_param("n", n as i64),
                );
            }
            Ok(records)
        }));
    }
}

fn observations(info: &[(String, bool)]) -> String {
    if info.is_empty() {
        return "no alternative representatives".into();
    }
    info.iter()
        .map(|(name, ok)| format!("{name}={}", if *ok { "holds" } else { "fails" }))
        .collect::<Vec<_>>()
        .join(", ")
}

fn cup_bounds_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let ts: Vec<u32> = match opts.t {
        Some(t) => vec![t],
        None => vec![4, 5],
    };
    for t in ts.clone() {
        let half = 1u32 << (t - 1);
        let ns: Vec<u32> = match opts.n {
            Some(n) => vec![n],
            None => ((4 * half).div_ceil(3)..=2 * half - 2).collect(),
        };
        for n in ns {
            jobs.push(Box::new(move || {
                let (lower, upper) = cup_bounds(n, t)?;
                Ok(vec![VerificationRecord::new(
                    "cup-bounds",
                    "lower-at-most-upper",
                    lower <= upper,
                )
                .with_param("n", n as i64)
                .with_param("t", t as i64)
                .with_detail(format!("lower={lower} upper={upper}"))])
            }));
        }
    }
    for t in ts {
        let half = 1u32 << (t - 1);
        let ns: Vec<u32> = match opts.n {
            Some(n) => vec![n],
            None => (half..=2 * half - 1).collect(),
        };
        for n in ns {
            jobs.push(Box::new(move || {
                let report = subring_cup_support(n, t)?;
                Ok(vec![VerificationRecord::new(
                    "cup-bounds",
                    "w2-power-nonzero",
                    report.w2_power_nonzero,
                )
                .with_param("n", n as i64)
                .with_param("t", t as i64)
                .with_detail(format!(
                    "subring cup length {} / longest monomial {}",
                    report.cup_length, report.max_monomial_length
                ))])
            }));
        }
    }
}

fn prop34_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let max = opts.max.unwrap_or(100_000);
    jobs.push(Box::new(move || {
        let mut bad = None;
        for i in 0..=max {
            match decompose_345(i) {
                Some((p1, p2, p3)) => {
                    if 3 * p1 + 4 * p2 + 5 * p3 != i || !has_property_p(p1, p2, p3) {
                        bad = Some(i);
                        break;
                    }
                }
                None => {
                    if i != 1 && i != 2 && i != 7 {
                        bad = Some(i);
                        break;
                    }
                }
            }
        }
        Ok(vec![VerificationRecord::new(
            "prop34",
            "constructive-decomposition-valid",
            bad.is_none(),
        )
        .with_param("max", max as i64)
        .with_detail(match bad {
            Some(i) => format!("first failure at i={i}"),
            None => "all decompositions satisfy the equation and property P".into(),
        })])
    }));
    let brute_max = max.min(2000);
    jobs.push(Box::new(move || {
        let mut pass = true;
        for i in 0..=brute_max {
            let exists = brute_force_exists(i);
            if decompose_345(i).is_some() != exists {
                pass = false;
                break;
            }
        }
        Ok(vec![VerificationRecord::new(
            "prop34",
            "matches-brute-force-oracle",
            pass,
        )
        .with_param("max", brute_max as i64)])
    }));
}

fn brute_force_exists(i: u64) -> bool {
    for p3 in 0..=i / 5 {
        for p2 in 0..=(i - 5 * p3) / 4 {
            let rem = i - 5 * p3 - 4 * p2;
            if rem.is_multiple_of(3) && has_property_p(rem / 3, p2, p3) {
                return true;
            }
        }
    }
    false
}

fn thm_k5_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let pairs: Vec<(u32, u32)> = match (opts.n, opts.k) {
        (Some(n), Some(k)) => vec![(n, k)],
        _ => vec![(10, 5), (11, 5), (12, 5), (12, 6), (13, 6), (14, 7)],
    };
    for (n, k) in pairs {
        jobs.push(Box::new(move || {
            let verdict = verify_theorem_k5(n, k)?;
            Ok(vec![
                VerificationRecord::new(
                    "thm-k5",
                    "kernel-vanishes-through-n-k+2",
                    verdict.kernel_vanishes,
                )
                .with_param("n", n as i64)
                .with_param("k", k as i64),
                VerificationRecord::new(
                    "thm-k5",
                    "dual-class-witness-monomial",
                    verdict.witness_present,
                )
                .with_param("n", n as i64)
                .with_param("k", k as i64)
                .with_detail(format!(
                    "w3^{} w4^{} w5^{} in degree {}",
                    verdict.witness.0,
                    verdict.witness.1,
                    verdict.witness.2,
                    n - k + 3
                )),
            ])
        }));
    }
}

fn ucharrank_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let ns: Vec<u32> = match opts.n {
        Some(n) => vec![n],
        None => (8..=32).collect(),
    };
    for n in ns {
        jobs.push(Box::new(move || {
            let charrank = charrank_oriented_tautological(n, 3)?;
            let r = charrank + 1;
            let mut records = vec![VerificationRecord::new(
                "ucharrank",
                "first-failure-not-power-of-two",
                !r.is_power_of_two(),
            )
            .with_param("n", n as i64)
            .with_detail(format!("charrank={charrank}"))];
            let equal = match ucharrank_oriented3(n) {
                Ok(u) => u == charrank,
                Err(_) => false,
            };
            records.push(
                VerificationRecord::new("ucharrank", "equals-charrank", equal)
                    .with_param("n", n as i64),
            );
            Ok(records)
        }));
    }
}

fn homs_jobs(opts: &SuiteOptions, jobs: &mut Vec<Job>) {
    let ns: Vec<u32> = match opts.n {
        Some(n) => vec![n],
        None => (4..=20).collect(),
    };
    for n in ns.clone() {
        jobs.push(Box::new(move || {
            let spec = g2n_restriction_hom(n)?;
            let pass = verify_hom(&spec, &[], &[])?;
            Ok(vec![VerificationRecord::new(
                "homs",
                "g2n-restriction",
                pass,
            )
            .with_param("n", n as i64)
            .with_fixture("source", fnv1a64(&spec.source.to_text()))
            .with_fixture("target", fnv1a64(&spec.target.to_text()))])
        }));
    }
    for nn in ns {
        if nn < 4 {
            continue;
        }
        jobs.push(Box::new(move || {
            let spec = w21_restriction_hom(nn)?;
            let mut pass = true;
            let mut tried = 0usize;
            if nn % 2 == 1 {
                for (lambda, mu) in duality_consistent_scalars(nn)? {
                    let params = vec![scalar(&spec.target, lambda), scalar(&spec.target, mu)];
                    tried += 1;
                    pass &= verify_hom(&spec, &[], &params)?;
                }
            } else {
                for (lambda, mu) in duality_consistent_scalars(nn + 1)? {
                    let params = vec![scalar(&spec.source, lambda), scalar(&spec.source, mu)];
                    tried += 1;
                    pass &= verify_hom(&spec, &params, &[])?;
                }
            }
            Ok(vec![VerificationRecord::new(
                "homs",
                "pair-space-restriction",
                pass,
            )
            .with_param("n", nn as i64)
            .with_detail(format!("{tried} duality-consistent scalar pairs"))
            .with_fixture("source", fnv1a64(&spec.source.to_text()))
            .with_fixture("target", fnv1a64(&spec.target.to_text()))])
        }));
    }
}
