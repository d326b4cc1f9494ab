//! Batch verification suites: named, grid-driven checks over the code
//! families, the exhaustive classification sweep, and the permutation-code
//! equivalences. Each suite produces a deterministic machine-readable
//! report; failing instances carry a reproducible counterexample.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{
    distance_partition, is_completely_transitive, is_diagonally_nt, is_nt, is_s_regular,
    neighbour_set, setwise_stabilizer, Code,
};
use crate::error::{Error, Result};
use crate::families::{
    a_group, all_fpa, blowup_aut, classify, inj, perm_code, perm_vertex, rep, rep_p_blowup, w_half,
    FamilyTag,
};
use crate::hamming::{
    close_auts, diag_group, diag_wreath_elements, distance, full_wreath_elements, HammingAut,
    Space, Symbol, Vertex,
};
use crate::perm::{all_subgroups, normalizer_in_sym, symmetric_elements, PermGroup, Permutation};
use crate::{factorial, Caps};

/// Grid overrides and switches shared by all suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub m: Option<usize>,
    pub q: Option<usize>,
    pub p: Option<usize>,
    pub full: bool,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            m: None,
            q: None,
            p: None,
            full: false,
            seed: 0xC0DE,
        }
    }
}

/// A failing instance ships the code and the witness-group generators that
/// reproduce the failure through `certify`.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub code_text: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub grid: String,
    pub passed: usize,
    pub failed: usize,
    pub wall_ms: u128,
    pub instances: Vec<InstanceResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

type Outcome = Result<(bool, String, Option<Counterexample>)>;
type Job = Box<dyn Fn() -> Outcome + Send + Sync>;

fn run_jobs(suite: &str, grid: String, jobs: Vec<(String, Job)>) -> SuiteReport {
    let started = Instant::now();
    let instances: Vec<InstanceResult> = jobs
        .par_iter()
        .map(|(name, job)| match job() {
            Ok((pass, detail, counterexample)) => InstanceResult {
                name: name.clone(),
                pass,
                detail,
                counterexample,
            },
            Err(e) => InstanceResult {
                name: name.clone(),
                pass: false,
                detail: format!("error: {e}"),
                counterexample: None,
            },
        })
        .collect();
    let passed = instances.iter().filter(|i| i.pass).count();
    let failed = instances.len() - passed;
    SuiteReport {
        suite: suite.to_string(),
        grid,
        passed,
        failed,
        wall_ms: started.elapsed().as_millis(),
        instances,
    }
}

fn counterexample(code: &Code, witness: &[HammingAut]) -> Counterexample {
    let gens = crate::hamming::generating_subset(witness)
        .unwrap_or_default()
        .iter()
        .map(|x| x.to_string())
        .collect();
    Counterexample {
        code_text: code.to_code_string(),
        generators: gens,
    }
}

fn diag_order(m: usize, q: usize) -> usize {
    (factorial(q) * factorial(m)) as usize
}

/// Family grid: every built-in family instance must be diagonally neighbour
/// transitive, with the full diagonal-wreath stabilizer and the family's
/// minimum distance.
pub fn families_grid(caps: &Caps, opts: &SuiteOptions) -> SuiteReport {
    let mut shapes: Vec<(String, Code, usize)> = Vec::new();
    let rep_range = if opts.full { 2..=5 } else { 2..=4 };
    for q in rep_range.clone() {
        for m in rep_range.clone() {
            shapes.push((format!("rep({m},{q})"), rep(m, q).expect("valid shape"), m));
        }
    }
    let inj_grid: &[(usize, usize)] = if opts.full {
        &[(2, 3), (2, 4), (3, 4), (2, 5), (3, 5), (4, 5)]
    } else {
        &[(2, 3), (2, 4), (3, 4)]
    };
    for &(m, q) in inj_grid {
        shapes.push((format!("inj({m},{q})"), inj(m, q).expect("m < q"), 1));
    }
    let w_grid: &[usize] = if opts.full { &[3, 5, 7] } else { &[3, 5] };
    for &m in w_grid {
        shapes.push((format!("whalf({m})"), w_half(m).expect("odd m"), 1));
    }
    let all_grid: &[(usize, usize)] = if opts.full {
        &[(1, 3), (2, 2), (1, 4), (2, 3), (3, 2), (1, 5)]
    } else {
        &[(1, 3), (2, 2), (1, 4), (2, 3)]
    };
    for &(p, q) in all_grid {
        shapes.push((
            format!("all({p},{q})"),
            all_fpa(p, q).expect("valid shape"),
            2,
        ));
    }

    let caps = *caps;
    let jobs: Vec<(String, Job)> = shapes
        .into_iter()
        .filter(|(_, c, _)| {
            opts.m.is_none_or(|m| c.m() == m) && opts.q.is_none_or(|q| c.q() == q)
        })
        .map(|(name, c, expected_delta)| {
            let job: Job = Box::new(move || {
                let cert = is_diagonally_nt(&c, &caps)?;
                let expected_order = diag_order(c.m(), c.q());
                let pass = cert.verdict
                    && cert.group_order == expected_order
                    && cert.delta == Some(expected_delta);
                let detail = format!(
                    "nt={} |Aut∩(Diag⋊L)|={} (expected {expected_order}) delta={:?} (expected {expected_delta}) rho={}",
                    cert.verdict, cert.group_order, cert.delta, cert.rho
                );
                let ce = (!pass).then(|| counterexample(&c, &cert.witness));
                Ok((pass, detail, ce))
            });
            (name, job)
        })
        .collect();
    run_jobs("thm-families", "built-in family grid".into(), jobs)
}

/// Full-wreath check at tiny shapes: brute force over all of S_q^m ⋊ S_m
/// finds no automorphisms outside the diagonal wreath.
pub fn families_full_wreath(caps: &Caps) -> SuiteReport {
    let shapes: Vec<(String, Code)> = vec![
        ("rep(3,2)".into(), rep(3, 2).expect("valid")),
        ("rep(3,3)".into(), rep(3, 3).expect("valid")),
        ("whalf(3)".into(), w_half(3).expect("valid")),
        ("all(2,2)".into(), all_fpa(2, 2).expect("valid")),
    ];
    let caps = *caps;
    let jobs: Vec<(String, Job)> = shapes
        .into_iter()
        .map(|(name, c)| {
            let job: Job = Box::new(move || {
                let wreath = full_wreath_elements(c.m(), c.q(), &caps)?;
                let mut stab = setwise_stabilizer(&c, &wreath);
                stab.sort();
                let expected = diag_wreath_elements(c.m(), c.q(), &caps)?;
                let pass = stab == expected;
                let detail = format!(
                    "|Aut(C)| in full wreath = {} , |Diag⋊L| = {}",
                    stab.len(),
                    expected.len()
                );
                let ce = (!pass).then(|| counterexample(&c, &stab));
                Ok((pass, detail, ce))
            });
            (format!("full-wreath {name}"), job)
        })
        .collect();
    run_jobs(
        "thm-families",
        "full-wreath stabilizers at tiny shapes".into(),
        jobs,
    )
}

/// Covering radii of the middle-weight and balanced families, with the far
/// cell equal to the repetition code, plus complete transitivity of the
/// binary pair.
pub fn covering_radius(caps: &Caps, opts: &SuiteOptions) -> SuiteReport {
    let caps = *caps;
    let mut jobs: Vec<(String, Job)> = Vec::new();

    let w_grid: &[usize] = if opts.full { &[3, 5, 7, 9] } else { &[3, 5, 7] };
    for &m in w_grid {
        let job: Job = Box::new(move || {
            let c = w_half(m)?;
            let partition = distance_partition(&c, &caps)?;
            let expected_rho = (m - 1) / 2;
            let far = partition.cell_vertices(partition.rho());
            let pass = partition.rho() == expected_rho
                && far == rep(m, 2).expect("valid").words().to_vec();
            let detail = format!(
                "rho={} (expected {expected_rho}), far cell = rep: {}",
                partition.rho(),
                far == rep(m, 2).expect("valid").words().to_vec()
            );
            Ok((pass, detail, None))
        });
        jobs.push((format!("rho whalf({m})"), job));
    }

    let all_grid: &[(usize, usize)] = if opts.full {
        &[(1, 3), (2, 2), (2, 3), (1, 4), (1, 5)]
    } else {
        &[(1, 3), (2, 2), (2, 3), (1, 4)]
    };
    for &(p, q) in all_grid {
        let job: Job = Box::new(move || {
            let c = all_fpa(p, q)?;
            let partition = distance_partition(&c, &caps)?;
            let expected_rho = p * (q - 1);
            let far = partition.cell_vertices(partition.rho());
            let pass = partition.rho() == expected_rho
                && far == rep(p * q, q).expect("valid").words().to_vec();
            let detail = format!("rho={} (expected {expected_rho})", partition.rho());
            Ok((pass, detail, None))
        });
        jobs.push((format!("rho all({p},{q})"), job));
    }

    for &m in &[3usize, 5] {
        let job: Job = Box::new(move || {
            let diag = diag_wreath_elements(m, 2, &caps)?;
            let w_ct = is_completely_transitive(&w_half(m)?, &diag, &caps)?;
            let rep_ct = is_completely_transitive(&rep(m, 2)?, &diag, &caps)?;
            let pass = w_ct && rep_ct;
            Ok((
                pass,
                format!("whalf({m}) completely transitive: {w_ct}, rep({m},2): {rep_ct}"),
                None,
            ))
        });
        jobs.push((format!("completely-transitive m={m}"), job));
    }

    run_jobs("cor-radius", "covering radii and far cells".into(), jobs)
}

/// Connectivity of the injection and middle-weight families, plus the
/// neighbour-meets-superset property on random proper subcodes.
pub fn connectivity(caps: &Caps, opts: &SuiteOptions) -> SuiteReport {
    let samples = if opts.full { 1000 } else { 100 };
    let deltas: Vec<(String, Code)> = vec![
        ("inj(2,3)".into(), inj(2, 3).expect("valid")),
        ("inj(2,4)".into(), inj(2, 4).expect("valid")),
        ("inj(3,4)".into(), inj(3, 4).expect("valid")),
        ("whalf(3)".into(), w_half(3).expect("valid")),
        ("whalf(5)".into(), w_half(5).expect("valid")),
        ("whalf(7)".into(), w_half(7).expect("valid")),
    ];
    let caps = *caps;
    let seed = opts.seed;
    let jobs: Vec<(String, Job)> = deltas
        .into_iter()
        .enumerate()
        .map(|(idx, (name, delta))| {
            let job: Job = Box::new(move || {
                if !crate::code::is_connected(&delta) {
                    return Ok((false, "induced subgraph is disconnected".into(), None));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx as u64));
                let words = delta.words().to_vec();
                let mut violations = 0usize;
                for _ in 0..samples {
                    let size = rng.gen_range(1..words.len());
                    let mut picked = words.clone();
                    picked.shuffle(&mut rng);
                    picked.truncate(size);
                    let sub = Code::in_space(delta.space(), picked)?;
                    let neighbours = neighbour_set(&sub, &caps)?;
                    if !neighbours.iter().any(|v| delta.contains(v)) {
                        violations += 1;
                    }
                }
                let pass = violations == 0;
                Ok((
                    pass,
                    format!("connected; {samples} random proper subcodes, {violations} violations"),
                    None,
                ))
            });
            (name, job)
        })
        .collect();
    run_jobs(
        "lemma-connect",
        format!("connectivity + {samples} subcode samples each"),
        jobs,
    )
}

/// The classification sweep: enumerate every nonempty code of a tiny shape,
/// decide diagonal neighbour transitivity, and check that each positive
/// matches exactly one classified family. Positive counts are frozen
/// regression values.
pub fn main2_sweep(caps: &Caps, opts: &SuiteOptions) -> SuiteReport {
    // (m, q, expected positive count).
    const GRID: [(usize, usize, usize); 5] =
        [(2, 2, 6), (3, 2, 4), (4, 2, 16), (2, 3, 5), (2, 4, 6)];
    let caps = *caps;
    let seed = opts.seed;
    let jobs: Vec<(String, Job)> = GRID
        .iter()
        .filter(|&&(m, q, _)| {
            opts.m.is_none_or(|want| m == want) && opts.q.is_none_or(|want| q == want)
        })
        .map(|&(m, q, expected)| {
            let job: Job = Box::new(move || sweep_shape(m, q, expected, &caps, seed));
            (format!("sweep H({m},{q})"), job)
        })
        .collect();
    run_jobs(
        "thm-main2",
        "exhaustive code sweep at tiny shapes".into(),
        jobs,
    )
}

const CASE_NAMES: [&str; 5] = [
    "singleton",
    "repetition",
    "injection",
    "middle-weight",
    "fpa-subset",
];

fn sweep_shape(m: usize, q: usize, expected: usize, caps: &Caps, seed: u64) -> Outcome {
    let space = Space::new(m, q)?;
    let n = caps.check_vertices(m, q)?;
    if n > 16 {
        return Err(Error::Invalid(format!(
            "sweep supports at most 16 vertices, H({m},{q}) has {n}"
        )));
    }
    let group = diag_wreath_elements(m, q, caps)?;
    // Vertex-index permutation per group element.
    let tables: Vec<Vec<u8>> = group
        .iter()
        .map(|x| (0..n).map(|r| x.apply_rank(&space, r) as u8).collect())
        .collect();
    let adjacency: Vec<u32> = (0..n)
        .map(|r| {
            let v = space.unrank(r);
            let mut mask = 0u32;
            for i in 0..m {
                for s in 0..q as Symbol {
                    if s != v.entry(i) {
                        mask |= 1 << space.rank(&space.nu(&v, i, s).expect("in range"));
                    }
                }
            }
            mask
        })
        .collect();

    let map_mask = |table: &[u8], mask: u32| -> u32 {
        let mut out = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << table[v];
        }
        out
    };

    // Family masks for the classification cases.
    let code_mask = |c: &Code| -> u32 {
        c.words()
            .iter()
            .fold(0u32, |acc, w| acc | 1 << space.rank(w))
    };
    let constant_mask: u32 = (0..q).fold(0u32, |acc, a| {
        acc | 1 << space.rank(&Vertex::new(vec![a as Symbol; m]))
    });
    let rep_mask = code_mask(&rep(m, q)?);
    let inj_mask = if m < q {
        Some(code_mask(&inj(m, q)?))
    } else {
        None
    };
    let w_mask = if q == 2 && m >= 3 && m % 2 == 1 {
        Some(code_mask(&w_half(m)?))
    } else {
        None
    };
    let all_mask = if m.is_multiple_of(q) {
        Some(code_mask(&all_fpa(m / q, q)?))
    } else {
        None
    };

    let classify_mask = |mask: u32| -> Vec<usize> {
        let mut cases = Vec::new();
        if mask.count_ones() == 1 && mask & constant_mask == mask {
            cases.push(0);
        }
        if mask == rep_mask {
            cases.push(1);
        }
        if inj_mask == Some(mask) {
            cases.push(2);
        }
        if w_mask == Some(mask) {
            cases.push(3);
        }
        if let Some(all) = all_mask {
            if mask & !all == 0 {
                cases.push(4);
            }
        }
        cases
    };

    let is_nt_mask = |mask: u32| -> bool {
        let neighbours = {
            let mut acc = 0u32;
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc |= adjacency[v];
            }
            acc & !mask
        };
        if neighbours == 0 {
            // The complete code: no neighbour set exists.
            return false;
        }
        let seed_c = mask.trailing_zeros() as usize;
        let seed_n = neighbours.trailing_zeros() as usize;
        let mut orbit_c = 0u32;
        let mut orbit_n = 0u32;
        let mut stabilizer_empty = true;
        for table in &tables {
            if map_mask(table, mask) == mask {
                stabilizer_empty = false;
                orbit_c |= 1 << table[seed_c];
                orbit_n |= 1 << table[seed_n];
            }
        }
        debug_assert!(!stabilizer_empty, "stabilizer always contains the identity");
        orbit_c == mask && orbit_n == neighbours
    };

    let total: u64 = (1u64 << n) - 1;
    let chunk = 1u64 << 12;
    let chunks: Vec<(u64, u64)> = (0..total.div_ceil(chunk))
        .map(|i| (i * chunk + 1, ((i + 1) * chunk).min(total)))
        .collect();
    let results: Vec<(usize, [usize; 5], usize)> = chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut positives = 0usize;
            let mut per_case = [0usize; 5];
            let mut violations = 0usize;
            for mask in lo..=hi {
                let mask = mask as u32;
                if is_nt_mask(mask) {
                    positives += 1;
                    let cases = classify_mask(mask);
                    if cases.len() == 1 {
                        per_case[cases[0]] += 1;
                    } else {
                        violations += 1;
                    }
                }
            }
            (positives, per_case, violations)
        })
        .collect();
    let mut positives = 0usize;
    let mut per_case = [0usize; 5];
    let mut violations = 0usize;
    for (p, cases, v) in results {
        positives += p;
        for (acc, c) in per_case.iter_mut().zip(cases) {
            *acc += c;
        }
        violations += v;
    }

    // Cross-route check: the bitmask path must agree with the generic
    // certificate path, exhaustively for small shapes and on a seeded
    // sample otherwise.
    let sample: Vec<u32> = if total <= 1024 {
        (1..=total as u32).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED);
        let mut s: Vec<u32> = (0..512).map(|_| rng.gen_range(1..=total) as u32).collect();
        s.push(rep_mask);
        if let Some(x) = all_mask {
            s.push(x);
        }
        if let Some(x) = w_mask {
            s.push(x);
        }
        s
    };
    let mismatches: usize = sample
        .par_iter()
        .map(|&mask| {
            let words: Vec<Vertex> = (0..n)
                .filter(|&v| mask & (1 << v) != 0)
                .map(|v| space.unrank(v))
                .collect();
            let c = Code::in_space(space, words).expect("nonempty mask");
            let cert = is_diagonally_nt(&c, caps).expect("within caps");
            let fast = is_nt_mask(mask);
            let tag = classify(&c, cert.verdict);
            let tag_consistent = match (cert.verdict, &classify_mask(mask)[..]) {
                (false, _) => tag == FamilyTag::None,
                (true, [single]) => {
                    matches!(
                        (single, tag),
                        (0, FamilyTag::Singleton { .. })
                            | (1, FamilyTag::Repetition { .. })
                            | (2, FamilyTag::Injection { .. })
                            | (3, FamilyTag::MiddleWeight { .. })
                            | (4, FamilyTag::FpaSubset { .. })
                    )
                }
                (true, _) => false,
            };
            usize::from(cert.verdict != fast || !tag_consistent)
        })
        .sum();

    let case_detail: Vec<String> = CASE_NAMES
        .iter()
        .zip(per_case)
        .filter(|(_, c)| *c > 0)
        .map(|(name, c)| format!("{name}={c}"))
        .collect();
    let pass = positives == expected && violations == 0 && mismatches == 0;
    let detail = format!(
        "positives={positives} (expected {expected}); cases: {}; multi/no-case violations={violations}; cross-route mismatches={mismatches} on {} samples",
        case_detail.join(" "),
        sample.len()
    );
    Ok((pass, detail, None))
}

/// One-regularity sweep for permutation codes: among all nonempty subsets
/// of S₃ — and all subgroups of S₄ and S₅ — exactly the full symmetric
/// group yields a 1-regular code of minimum distance 2.
pub fn one_regular(caps: &Caps, opts: &SuiteOptions) -> SuiteReport {
    let qs: Vec<usize> = match opts.q {
        Some(q) => vec![q],
        None => vec![3, 4, 5],
    };
    let caps = *caps;
    let mut jobs: Vec<(String, Job)> = Vec::new();
    for q in qs {
        match q {
            3 => {
                let job: Job = Box::new(move || {
                    let sym = symmetric_elements(3, &caps)?;
                    let mut holders = Vec::new();
                    for mask in 1u32..(1 << 6) {
                        let subset: Vec<Permutation> = (0..6)
                            .filter(|&i| mask & (1 << i) != 0)
                            .map(|i| sym[i].clone())
                            .collect();
                        let c = perm_code(&subset)?;
                        let holds = subset.len() >= 2
                            && c.min_distance()? == 2
                            && is_s_regular(&c, 1, &caps)?;
                        if holds {
                            holders.push(mask);
                        }
                    }
                    let pass = holders == vec![(1 << 6) - 1];
                    Ok((
                        pass,
                        format!(
                            "63 nonempty subsets swept; property holds for {} subset(s)",
                            holders.len()
                        ),
                        None,
                    ))
                });
                jobs.push(("subsets of S_3".into(), job));
            }
            4 | 5 => {
                let job: Job = Box::new(move || {
                    let subs = all_subgroups(q, &caps)?;
                    let full_order = factorial(q) as usize;
                    let mut holders = 0usize;
                    let mut misclassified = Vec::new();
                    for t in &subs {
                        let c = perm_code(t.elements())?;
                        let holds =
                            t.order() >= 2 && c.min_distance()? == 2 && is_s_regular(&c, 1, &caps)?;
                        if holds {
                            holders += 1;
                        }
                        if holds != (t.order() == full_order) {
                            misclassified.push(format!("order {}", t.order()));
                        }
                    }
                    let pass = misclassified.is_empty() && holders == 1;
                    Ok((
                        pass,
                        format!(
                            "{} subgroups swept; property holds for {holders}; mismatches: [{}]",
                            subs.len(),
                            misclassified.join(", ")
                        ),
                        None,
                    ))
                });
                jobs.push((format!("subgroups of S_{q}"), job));
            }
            other => {
                let job: Job =
                    Box::new(move || Err(Error::Invalid(format!("unsupported q={other}"))));
                jobs.push((format!("q={other}"), job));
            }
        }
    }
    run_jobs(
        "lemma-1reg",
        "1-regular with delta=2 iff T is the full symmetric group".into(),
        jobs,
    )
}

/// The permutation-code equivalence: C(T) is diagonally neighbour
/// transitive exactly when the normalizer of T in S_q is 2-transitive,
/// swept over every subgroup of S_q.
pub fn permiff(caps: &Caps, opts: &SuiteOptions) -> SuiteReport {
    let qs: Vec<usize> = match opts.q {
        Some(q) => vec![q],
        None => vec![3, 4, 5],
    };
    let expected_counts: BTreeMap<usize, usize> = [(3, 6), (4, 30), (5, 156)].into();
    let caps_v = *caps;
    let mut jobs: Vec<(String, Job)> = Vec::new();
    for q in qs {
        let subs = match all_subgroups(q, &caps_v) {
            Ok(s) => s,
            Err(e) => {
                let msg = e.clone();
                jobs.push((format!("q={q}"), Box::new(move || Err(msg.clone())) as Job));
                continue;
            }
        };
        if let Some(&expected) = expected_counts.get(&q) {
            let actual = subs.len();
            let job: Job = Box::new(move || {
                Ok((
                    actual == expected,
                    format!("{actual} subgroups enumerated (expected {expected})"),
                    None,
                ))
            });
            jobs.push((format!("q={q} subgroup census"), job));
        }
        for (idx, t) in subs.into_iter().enumerate() {
            let gens = t
                .minimal_generators()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let name = format!("q={q} #{idx} order {} gens [{gens}]", t.order());
            let job: Job = Box::new(move || {
                let c = perm_code(t.elements())?;
                let cert = is_diagonally_nt(&c, &caps_v)?;
                let normalizer = normalizer_in_sym(&t, &caps_v)?;
                let two_transitive = normalizer.is_2_transitive();
                let pass = cert.verdict == two_transitive;
                let detail = format!(
                    "diagonally nt={} , |N(T)|={} 2-transitive={}",
                    cert.verdict,
                    normalizer.order(),
                    two_transitive
                );
                let ce = (!pass).then(|| counterexample(&c, &cert.witness));
                Ok((pass, detail, ce))
            });
            jobs.push((name, job));
        }
        if q == 4 {
            // Named witnesses: the normal order-4 subgroup has a
            // 2-transitive normalizer of order 24; a single transposition
            // has normalizer of order 4.
            let job: Job = Box::new(move || {
                let subs = all_subgroups(4, &caps_v)?;
                let mut normal_order_4: Vec<&PermGroup> = Vec::new();
                for t in &subs {
                    if t.order() == 4 && normalizer_in_sym(t, &caps_v)?.order() == 24 {
                        normal_order_4.push(t);
                    }
                }
                let mut pass = normal_order_4.len() == 1;
                let mut detail = format!("{} normal subgroup(s) of order 4", normal_order_4.len());
                if let Some(t) = normal_order_4.first() {
                    let norm = normalizer_in_sym(t, &caps_v)?;
                    let cert = is_diagonally_nt(&perm_code(t.elements())?, &caps_v)?;
                    pass &= norm.is_2_transitive() && cert.verdict;
                    detail.push_str(&format!("; |N|={} nt={}", norm.order(), cert.verdict));
                }
                let transposition =
                    PermGroup::generate(4, &[Permutation::parse("(0 1)", 4)?], &caps_v)?;
                let norm = normalizer_in_sym(&transposition, &caps_v)?;
                let cert = is_diagonally_nt(&perm_code(transposition.elements())?, &caps_v)?;
                pass &= norm.order() == 4 && !norm.is_2_transitive() && !cert.verdict;
                detail.push_str(&format!(
                    "; transposition subgroup |N|={} nt={}",
                    norm.order(),
                    cert.verdict
                ));
                Ok((pass, detail, None))
            });
            jobs.push(("q=4 named witnesses".into(), job));
        }
    }
    run_jobs(
        "thm-permiff",
        "diagonal nt of C(T) iff N(T) is 2-transitive".into(),
        jobs,
    )
}

/// Blow-up transitivity: for each diagonally neighbour transitive C(T) with
/// δ ≥ 2 at q ∈ {3,4}, the doubled code is neighbour transitive under the
/// lifted witness times the block swap — and the δ = 1 counterexample shows
/// two neighbour types of a doubled distance-1 code in distinct orbits.
pub fn blowup(caps: &Caps, opts: &SuiteOptions) -> SuiteReport {
    let caps_v = *caps;
    let p = opts.p.unwrap_or(2);
    let mut jobs: Vec<(String, Job)> = Vec::new();

    for q in [3usize, 4] {
        let subs = match all_subgroups(q, &caps_v) {
            Ok(s) => s,
            Err(e) => {
                let msg = e.clone();
                jobs.push((format!("q={q}"), Box::new(move || Err(msg.clone())) as Job));
                continue;
            }
        };
        let mut eligible = 0usize;
        for (idx, t) in subs.into_iter().enumerate() {
            if t.order() < 2 {
                continue;
            }
            let c = match perm_code(t.elements()) {
                Ok(c) => c,
                Err(_) => continue,
            };
            let nt = match is_diagonally_nt(&c, &caps_v) {
                Ok(cert) => cert.verdict,
                Err(_) => false,
            };
            if !nt {
                continue;
            }
            eligible += 1;
            let name = format!("blowup q={q} #{idx} |T|={} p={p}", t.order());
            let job: Job = Box::new(move || {
                let c = perm_code(t.elements())?;
                let delta = c.min_distance()?;
                // Witness group X = ⟨A(T), Diag_q(T)⟩.
                let mut gens = a_group(&t, &caps_v)?;
                gens.extend(diag_group(q, &t));
                let x = close_auts(&gens, caps_v.max_group)?;
                // Codeword-stabilizer hypothesis: the elements of X fixing
                // α(identity) act transitively on its sphere.
                let identity_word = perm_vertex(&Permutation::identity(q));
                let fixing: Vec<HammingAut> = x
                    .iter()
                    .filter(|a| a.apply(&identity_word) == identity_word)
                    .cloned()
                    .collect();
                let mut sphere_orbit: Vec<Vertex> = Vec::new();
                let space = c.space();
                let first_nb = space.nu(&identity_word, 0, 1)?;
                for a in &fixing {
                    sphere_orbit.push(a.apply(&first_nb));
                }
                sphere_orbit.sort();
                sphere_orbit.dedup();
                let sphere_size = q * (q - 1);
                let stab_transitive = sphere_orbit.len() == sphere_size;

                let blown = rep_p_blowup(&c, p)?;
                let sym_p = symmetric_elements(p, &caps_v)?;
                let mut lifted = Vec::with_capacity(x.len() * sym_p.len());
                for aut in &x {
                    for tau in &sym_p {
                        lifted.push(blowup_aut(aut, p, tau));
                    }
                }
                let cert = is_nt(&blown, &lifted, &caps_v)?;
                let diag_cert = is_diagonally_nt(&blown, &caps_v)?;
                let pass = delta >= 2 && stab_transitive && cert.verdict && diag_cert.verdict;
                let detail = format!(
                    "delta={delta}; |X|={}; word-stabilizer transitive on sphere: {stab_transitive}; blown code (X x S_{p})-nt: {}; diagonally nt: {}",
                    x.len(),
                    cert.verdict,
                    diag_cert.verdict
                );
                let ce = (!pass).then(|| counterexample(&blown, &cert.witness));
                Ok((pass, detail, ce))
            });
            jobs.push((name, job));
        }
        let expected_eligible = if q == 3 { 2 } else { 3 };
        let job: Job = Box::new(move || {
            Ok((
                eligible == expected_eligible,
                format!("{eligible} eligible subgroups (expected {expected_eligible})"),
                None,
            ))
        });
        jobs.push((format!("blowup q={q} eligibility census"), job));
    }

    // δ = 1 separation: doubling a distance-1 code leaves two neighbour
    // types that no automorphism-times-block-swap can merge.
    let job: Job = Box::new(move || {
        let c = inj(2, 3)?;
        assert_eq!(c.min_distance()?, 1);
        let alpha = Vertex::parse("0,1")?;
        let beta = Vertex::parse("0,2")?; // codeword adjacent to alpha
        let nu = Vertex::parse("0,0")?; // non-codeword neighbour of alpha
        assert!(c.contains(&alpha) && c.contains(&beta) && !c.contains(&nu));
        // Change the first block of (α, α).
        let nu1 = Vertex::new([nu.entries(), alpha.entries()].concat());
        let nu2 = Vertex::new([beta.entries(), alpha.entries()].concat());
        let blown = rep_p_blowup(&c, 2)?;
        let partition = distance_partition(&blown, &caps_v)?;
        let cell1: Vec<Vertex> = partition.cell_vertices(1);
        let in_c1 = |v: &Vertex| cell1.binary_search(v).is_ok();
        if !in_c1(&nu1) || !in_c1(&nu2) {
            return Ok((
                false,
                "exhibited vertices are not both neighbours".into(),
                None,
            ));
        }
        let wreath = full_wreath_elements(2, 3, &caps_v)?;
        let aut_c = setwise_stabilizer(&c, &wreath);
        let sym2 = symmetric_elements(2, &caps_v)?;
        let mut lifted = Vec::new();
        for aut in &aut_c {
            for tau in &sym2 {
                lifted.push(blowup_aut(aut, 2, tau));
            }
        }
        let mut orbit: Vec<Vertex> = lifted.iter().map(|x| x.apply(&nu1)).collect();
        orbit.sort();
        orbit.dedup();
        let separated = !orbit.contains(&nu2);
        let detail = format!(
            "|Aut(C)|={}; orbit of first neighbour type has {} vertices; second type outside: {separated}",
            aut_c.len(),
            orbit.len()
        );
        Ok((separated, detail, None))
    });
    jobs.push(("delta-1 orbit separation inj(2,3)".into(), job));

    run_jobs(
        "lemma-blowup",
        format!("blow-up transitivity at p={p}"),
        jobs,
    )
}

/// Property suites: the structural identities behind everything else, over
/// exhaustive small domains or at least 10⁴ random cases each.
pub fn props(caps: &Caps, opts: &SuiteOptions) -> SuiteReport {
    let caps_v = *caps;
    let seed = opts.seed;
    let cases: usize = if opts.full { 100_000 } else { 10_000 };
    let mut jobs: Vec<(String, Job)> = Vec::new();

    // Substitution commutes with the action, exhaustively on H(2,3) under
    // the full wreath and randomly on H(4,3).
    let job: Job = Box::new(move || {
        let mut failures = 0usize;
        let space = Space::new(2, 3)?;
        let wreath = full_wreath_elements(2, 3, &caps_v)?;
        let mut checked = 0usize;
        for x in &wreath {
            for alpha in space.vertices() {
                for i in 0..2 {
                    for s in 0..3 as Symbol {
                        let lhs = x.apply(&space.nu(&alpha, i, s)?);
                        let rhs = space.nu(
                            &x.apply(&alpha),
                            x.cols().image(i),
                            x.cells()[i].image(s as usize) as Symbol,
                        )?;
                        let adj_before = s != alpha.entry(i);
                        let adj_after = distance(&lhs, &x.apply(&alpha)) == 1;
                        if lhs != rhs || adj_before != adj_after {
                            failures += 1;
                        }
                        checked += 1;
                    }
                }
            }
        }
        let space4 = Space::new(4, 3)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..cases {
            let x = random_aut(&mut rng, 4, 3);
            let alpha = space4.unrank(rng.gen_range(0..space4.vertex_count() as usize));
            let i = rng.gen_range(0..4);
            let s = rng.gen_range(0..3) as Symbol;
            let lhs = x.apply(&space4.nu(&alpha, i, s)?);
            let rhs = space4.nu(
                &x.apply(&alpha),
                x.cols().image(i),
                x.cells()[i].image(s as usize) as Symbol,
            )?;
            if lhs != rhs {
                failures += 1;
            }
            checked += 1;
        }
        Ok((
            failures == 0,
            format!("{checked} cases, {failures} failures"),
            None,
        ))
    });
    jobs.push(("substitution-action identity".into(), job));

    // Distance-partition equivariance under random automorphisms.
    let job: Job = Box::new(move || {
        let space = Space::new(3, 2)?;
        let wreath = full_wreath_elements(3, 2, &caps_v)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let mut failures = 0usize;
        let rounds = cases / 2;
        for _ in 0..rounds {
            let size = rng.gen_range(1..=8usize);
            let mut ranks: Vec<usize> = (0..8).collect();
            ranks.shuffle(&mut rng);
            let words: Vec<Vertex> = ranks[..size].iter().map(|&r| space.unrank(r)).collect();
            let c = Code::in_space(space, words)?;
            let y = wreath[rng.gen_range(0..wreath.len())].clone();
            let cy = c.apply(&y);
            let pc = distance_partition(&c, &caps_v)?;
            let pcy = distance_partition(&cy, &caps_v)?;
            if pc.rho() != pcy.rho() {
                failures += 1;
                continue;
            }
            for i in 0..=pc.rho() {
                let mut mapped: Vec<Vertex> =
                    pc.cell_vertices(i).iter().map(|w| y.apply(w)).collect();
                mapped.sort();
                if mapped != pcy.cell_vertices(i) {
                    failures += 1;
                }
            }
        }
        Ok((
            failures == 0,
            format!("{rounds} random (code, automorphism) pairs, {failures} failures"),
            None,
        ))
    });
    jobs.push(("partition equivariance".into(), job));

    // Profile invariance under the diagonal wreath: exhaustive at (3,3),
    // random at (4,4).
    let job: Job = Box::new(move || {
        let mut failures = 0usize;
        let mut checked = 0usize;
        let space = Space::new(3, 3)?;
        for x in diag_wreath_elements(3, 3, &caps_v)? {
            for alpha in space.vertices() {
                let image = x.apply(&alpha);
                let h = &x.cells()[0];
                let mut expected: Vec<(Symbol, usize)> = alpha
                    .composition()
                    .pairs
                    .iter()
                    .map(|&(a, p)| (h.image(a as usize) as Symbol, p))
                    .collect();
                expected.sort_unstable();
                if image.num_profile() != alpha.num_profile()
                    || image.composition().pairs != expected
                {
                    failures += 1;
                }
                checked += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
        let space4 = Space::new(4, 4)?;
        let diag4 = diag_wreath_elements(4, 4, &caps_v)?;
        for _ in 0..cases {
            let x = &diag4[rng.gen_range(0..diag4.len())];
            let alpha = space4.unrank(rng.gen_range(0..space4.vertex_count() as usize));
            if x.apply(&alpha).num_profile() != alpha.num_profile() {
                failures += 1;
            }
            checked += 1;
        }
        Ok((
            failures == 0,
            format!("{checked} cases, {failures} failures"),
            None,
        ))
    });
    jobs.push(("profile invariance".into(), job));

    // Permutation-word action formulas, exhaustive over S₃ and S₄.
    let job: Job = Box::new(move || {
        let mut failures = 0usize;
        let mut checked = 0usize;
        for n in [3usize, 4] {
            let sym = symmetric_elements(n, &caps_v)?;
            for g in &sym {
                for y in &sym {
                    let xy = crate::families::x_y(y);
                    let sy = crate::families::sigma_y(y);
                    if xy.apply(&perm_vertex(g)) != perm_vertex(&g.compose(y)) {
                        failures += 1;
                    }
                    if sy.apply(&perm_vertex(g)) != perm_vertex(&y.inverse().compose(g)) {
                        failures += 1;
                    }
                    if xy.compose(&sy).apply(&perm_vertex(g))
                        != perm_vertex(&y.inverse().compose(g).compose(y))
                    {
                        failures += 1;
                    }
                    checked += 3;
                }
            }
        }
        Ok((
            failures == 0,
            format!("{checked} cases, {failures} failures"),
            None,
        ))
    });
    jobs.push(("permutation-word action formulas".into(), job));

    // Metric axioms: exhaustive triples on H(3,2), random on H(4,4), and
    // isometry of the action.
    let job: Job = Box::new(move || {
        let mut failures = 0usize;
        let mut checked = 0usize;
        let space = Space::new(3, 2)?;
        let all: Vec<Vertex> = space.vertices().collect();
        for a in &all {
            for b in &all {
                if (distance(a, b) == 0) != (a == b) {
                    failures += 1;
                }
                if distance(a, b) != distance(b, a) {
                    failures += 1;
                }
                for c in &all {
                    if distance(a, c) > distance(a, b) + distance(b, c) {
                        failures += 1;
                    }
                    checked += 1;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
        let space4 = Space::new(4, 4)?;
        let count = space4.vertex_count() as usize;
        for _ in 0..cases {
            let a = space4.unrank(rng.gen_range(0..count));
            let b = space4.unrank(rng.gen_range(0..count));
            let c = space4.unrank(rng.gen_range(0..count));
            let x = random_aut(&mut rng, 4, 4);
            if distance(&a, &c) > distance(&a, &b) + distance(&b, &c)
                || distance(&x.apply(&a), &x.apply(&b)) != distance(&a, &b)
            {
                failures += 1;
            }
            checked += 1;
        }
        Ok((
            failures == 0,
            format!("{checked} cases, {failures} failures"),
            None,
        ))
    });
    jobs.push(("metric axioms and isometry".into(), job));

    run_jobs("props", format!("{cases} random cases per property"), jobs)
}

fn random_aut(rng: &mut ChaCha8Rng, m: usize, q: usize) -> HammingAut {
    let mut cells = Vec::with_capacity(m);
    for _ in 0..m {
        let mut images: Vec<usize> = (0..q).collect();
        images.shuffle(rng);
        cells.push(Permutation::from_images(images).expect("shuffled bijection"));
    }
    let mut col: Vec<usize> = (0..m).collect();
    col.shuffle(rng);
    HammingAut::new(
        cells,
        Permutation::from_images(col).expect("shuffled bijection"),
    )
    .expect("well-formed")
}

/// Names accepted by [`run_suite`].
pub fn suite_names() -> &'static [&'static str] {
    &[
        "thm-families",
        "cor-radius",
        "lemma-connect",
        "thm-main2",
        "lemma-1reg",
        "thm-permiff",
        "lemma-blowup",
        "props",
    ]
}

/// Dispatches a suite by name.
pub fn run_suite(name: &str, caps: &Caps, opts: &SuiteOptions) -> Result<SuiteReport> {
    match name {
        "thm-families" => {
            let mut grid = families_grid(caps, opts);
            let wreath = families_full_wreath(caps);
            let started_wall = grid.wall_ms + wreath.wall_ms;
            grid.instances.extend(wreath.instances);
            grid.passed += wreath.passed;
            grid.failed += wreath.failed;
            grid.wall_ms = started_wall;
            grid.grid = "family grid + full-wreath stabilizers".into();
            Ok(grid)
        }
        "cor-radius" => Ok(covering_radius(caps, opts)),
        "lemma-connect" => Ok(connectivity(caps, opts)),
        "thm-main2" => Ok(main2_sweep(caps, opts)),
        "lemma-1reg" => Ok(one_regular(caps, opts)),
        "thm-permiff" => Ok(permiff(caps, opts)),
        "lemma-blowup" => Ok(blowup(caps, opts)),
        "props" => Ok(props(caps, opts)),
        other => Err(Error::Invalid(format!(
            "unknown suite `{other}`; available: {}",
            suite_names().join(", ")
        ))),
    }
}
