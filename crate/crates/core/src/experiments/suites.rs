use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{construct, h_op, h_p, transform, FamilySpec, GraphClass, PathPartition};
use crate::error::{invalid, Result};
use crate::forbidden::{contains_bouquet, contains_bouquet_with, contains_cycle_of_length, is_free, BouquetReading, ForbiddenSpec};
use crate::graph::{Graph, VertexSet};
use crate::recognition::{is_outerplanar, is_planar};
use crate::search::{enumerate_class, exhaustive_spex, SearchConfig};
use crate::spectral::{
    check_eigenvector_box, check_lower_bound_claim11, check_path_boxes, check_shu_bound,
    compare_spectral_radii, BoundReport, HubStyle, Verdict, DEFAULT_TOLERANCE,
};

use super::{run_cases, CaseRecord, Outcome, SuiteParams};

fn hub_join(hubs: usize, h: &PathPartition) -> Result<Graph> {
    Graph::join(&Graph::complete(hubs)?, &h.to_graph()?)
}

fn bound_outcome(case: String, r: &BoundReport, g: Option<&Graph>) -> Outcome {
    if r.pass {
        Outcome::Pass
    } else {
        Outcome::Fail(CaseRecord::new(
            case,
            format!("{}: lhs {:.15e} > rhs {:.15e}", r.name, r.lhs, r.rhs),
            g,
        ))
    }
}

fn agree(case: String, got: bool, want: bool, g: &Graph) -> Outcome {
    if got == want {
        Outcome::Pass
    } else {
        Outcome::Fail(CaseRecord::new(case, format!("detector says {got}, criterion says {want}"), Some(g)))
    }
}

/// `Greater` passes, `Less` fails, anything else is indeterminate.
fn strict_outcome(case: String, better: &Graph, worse: &Graph, tol: f64) -> Result<Outcome> {
    let c = compare_spectral_radii(better, worse, tol)?;
    let detail = format!(
        "rho {:.17} vs {:.17}, gap {:.3e}, residuals {:.3e}",
        c.rho_a, c.rho_b, c.gap, c.residual_sum
    );
    Ok(match c.verdict {
        Verdict::Greater => Outcome::Pass,
        Verdict::Less => Outcome::Fail(CaseRecord::new(case, detail, Some(worse))),
        Verdict::Indeterminate => Outcome::Indeterminate(CaseRecord::new(case, detail, Some(worse))),
    })
}

/// Non-increasing partitions of `total`.
pub(crate) fn partitions(total: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, &mut Vec::new(), &mut out);
    out
}

fn list(v: &Option<Vec<usize>>, default: &[usize]) -> Vec<usize> {
    v.clone().unwrap_or_else(|| default.to_vec())
}

pub(super) fn claim_1_1(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let ns = list(&p.n, &[6, 10, 20, 50, 100, 1000, 10000]);
    let ts = list(&p.t, &[1, 2, 3, 5]);
    let cases: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| ts.iter().map(move |&t| (n, t)))
        .filter(|&(n, t)| n > 5 && t >= 1 && 2 * t < n)
        .collect();
    run_cases(&cases, |&(n, t)| {
        let r = check_lower_bound_claim11(n, t)?;
        Ok(bound_outcome(format!("n={n},t={t}"), &r, None))
    })
}

/// Outerplanar families checked at large orders.
fn outerplanar_families(n: usize) -> Vec<FamilySpec> {
    let mut v = vec![FamilySpec::Star { n }, FamilySpec::Jn { n }];
    for t in 1..=3 {
        for l in 3..=5 {
            v.push(FamilySpec::K1Hop { t, l, n });
        }
        v.push(FamilySpec::K1Match { t, n });
    }
    v.push(FamilySpec::WPrime { t: 2, n });
    v.push(FamilySpec::WPrime { t: 3, n });
    v
}

pub(super) fn lemma_lm2(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let nmax = p.nmax.unwrap_or(7);
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 3..=nmax {
        for (k, g) in enumerate_class(n, GraphClass::Outerplanar, None, true)?.into_iter().enumerate() {
            graphs.push((format!("n={n}#{k}"), g));
        }
    }
    let mut out = run_cases(&graphs, |(case, g)| {
        Ok(bound_outcome(case.clone(), &check_shu_bound(g)?, Some(g)))
    })?;
    let fams: Vec<FamilySpec> = list(&p.n, &[100, 1000, 10000])
        .into_iter()
        .flat_map(outerplanar_families)
        .collect();
    out.extend(run_cases(&fams, |f| {
        let g = construct(f)?;
        Ok(bound_outcome(f.to_string(), &check_shu_bound(&g)?, None))
    })?);
    Ok(out)
}

struct TransformCase {
    n: usize,
    h: PathPartition,
    i: usize,
    j: usize,
}

fn transform_cases(p: &SuiteParams, hubs: usize, threshold: fn(usize) -> f64) -> Result<Vec<TransformCase>> {
    let s2s = list(&p.s2, &[1, 2, 3, 4, 5, 6]);
    let count = p.cases.unwrap_or(50);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed.unwrap_or(0));
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let s2 = s2s[k % s2s.len()];
        if s2 == 0 {
            return Err(invalid("s2 must be positive"));
        }
        let s1 = s2 + rng.gen_range(0..=6);
        let n = match &p.n {
            Some(ns) => ns[k % ns.len()],
            None => threshold(s2).ceil() as usize + rng.gen_range(0..=64),
        };
        let total = n
            .checked_sub(hubs)
            .filter(|&t| t >= s1 + s2)
            .ok_or_else(|| invalid(format!("n = {n} too small for parts {s1}, {s2}")))?;
        let mut parts = vec![s1, s2];
        let mut rest = total - s1 - s2;
        while rest > 0 {
            let x = rng.gen_range(1..=rest.min(10));
            parts.push(x);
            rest -= x;
        }
        let h = PathPartition::new(parts)?;
        let i = h.parts().iter().position(|&x| x == s1).expect("s1 present");
        let j = (0..h.parts().len())
            .find(|&j| j != i && h.parts()[j] == s2)
            .expect("s2 present");
        out.push(TransformCase { n, h, i, j });
    }
    Ok(out)
}

fn transform_suite(p: &SuiteParams, hubs: usize, threshold: fn(usize) -> f64) -> Result<Vec<Outcome>> {
    let tol = p.tol.unwrap_or(DEFAULT_TOLERANCE);
    let cases = transform_cases(p, hubs, threshold)?;
    run_cases(&cases, |c| {
        let star = transform(&c.h, c.i, c.j)?;
        let (s1, s2) = (c.h.parts()[c.i], c.h.parts()[c.j]);
        strict_outcome(
            format!("n={},({s1},{s2})", c.n),
            &hub_join(hubs, &star)?,
            &hub_join(hubs, &c.h)?,
            tol,
        )
    })
}

pub(crate) fn lm1_threshold(s2: usize) -> f64 {
    6.5025 * 2f64.powi(s2 as i32 + 2)
}

pub(crate) fn lm5_threshold(s2: usize) -> f64 {
    10.2 * 2f64.powi(s2 as i32) + 2.0
}

pub(super) fn lemma_lm1(p: &SuiteParams) -> Result<Vec<Outcome>> {
    transform_suite(p, 1, lm1_threshold)
}

pub(super) fn lemma_lm5(p: &SuiteParams) -> Result<Vec<Outcome>> {
    transform_suite(p, 2, lm5_threshold)
}

fn box_suite(p: &SuiteParams, hubs: usize, shapes: &[(usize, usize)]) -> Result<Vec<Outcome>> {
    let cases: Vec<(usize, usize, usize)> = list(&p.n, &[5000])
        .into_iter()
        .flat_map(|n| shapes.iter().map(move |&(a, b)| (n, a, b)))
        .collect();
    run_cases(&cases, |&(n, a, b)| {
        let (h, style) = if hubs == 1 {
            (h_op(n, a, b)?, HubStyle::Hub1)
        } else {
            (h_p(n, a, b)?, HubStyle::Hub2)
        };
        let r = check_eigenvector_box(&hub_join(hubs, &h)?, style)?;
        Ok(bound_outcome(format!("K{hubs}+H({a},{b}),n={n}"), &r, None))
    })
}

pub(super) fn claim_3_1(p: &SuiteParams) -> Result<Vec<Outcome>> {
    box_suite(p, 1, &[(5, 3), (9, 2)])
}

pub(super) fn lemma_lm4(p: &SuiteParams) -> Result<Vec<Outcome>> {
    box_suite(p, 2, &[(7, 3)])
}

pub(super) fn claim_3_2(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let base = list(&p.n, &[2000]);
    let mut cases = Vec::new();
    for &n0 in &base {
        for s1 in 3..=8 {
            for s2 in 3..=s1 {
                cases.push((n0.max(lm1_threshold(s2).ceil() as usize), s1, s2));
            }
        }
    }
    run_cases(&cases, |&(n, s1, s2)| {
        let g = hub_join(1, &h_op(n, s1, s2)?)?;
        // hub 0, then P_s1 on 1..=s1, then P_s2
        let v: Vec<usize> = (1..=s1).collect();
        let w: Vec<usize> = (s1 + 1..=s1 + s2).collect();
        let r = check_path_boxes(&g, &v, &w)?;
        Ok(bound_outcome(format!("n={n},s1={s1},s2={s2}"), &r, None))
    })
}

pub(super) fn claim_3_3(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let ls = list(&p.l, &[5, 6, 7, 8]);
    let total_max = p.total_max.unwrap_or(20);
    let mut cases = Vec::new();
    for &l in &ls {
        for total in 1..=total_max {
            for parts in partitions(total) {
                cases.push((l, parts));
            }
        }
    }
    run_cases(&cases, |(l, parts)| {
        let h = PathPartition::new(parts.clone())?;
        let g = hub_join(1, &h)?;
        let got = contains_cycle_of_length(&g, *l)?.found;
        Ok(agree(format!("l={l},H={parts:?}"), got, h.largest() >= l - 1, &g))
    })
}

pub(super) fn claim_3_5(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let mut cases = Vec::new();
    for &t in &list(&p.t, &[2, 3]) {
        for &l in &list(&p.l, &[3, 4, 5]) {
            for n1 in 1..=t * (l - 1) + 3 {
                cases.push((t, l, n1));
            }
        }
    }
    run_cases(&cases, |&(t, l, n1)| {
        let g = hub_join(1, &PathPartition::new(vec![n1])?)?;
        let got = contains_bouquet(&g, t, l)?.found;
        Ok(agree(
            format!("t={t},l={l},n1={n1}"),
            got,
            n1 >= (l - 1) * (t - 1) + l - 1,
            &g,
        ))
    })
}

pub(super) fn claim_4_2(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let mut cases = Vec::new();
    for &t in &list(&p.t, &[3]) {
        for &l in &list(&p.l, &[3, 4, 5]) {
            let threshold = (t - 1) * (l - 1) + l - 2;
            for total in 2..=threshold + 2 {
                for n2 in 1..=total / 2 {
                    cases.push((t, l, total - n2, n2, threshold));
                }
            }
        }
    }
    run_cases(&cases, |&(t, l, n1, n2, threshold)| {
        let g = hub_join(2, &PathPartition::new(vec![n1, n2])?)?;
        let got = contains_bouquet(&g, t, l)?.found;
        Ok(agree(format!("t={t},l={l},n1={n1},n2={n2}"), got, n1 + n2 >= threshold, &g))
    })
}

pub(super) fn claim_4_3(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let mut cases = Vec::new();
    for &t in &list(&p.t, &[2, 3]) {
        for &l in &list(&p.l, &[3, 4, 5]) {
            let base = (t - 1) * (l - 1);
            for n1 in base.max(1)..=base + l - 1 {
                for n2 in 1..=n1.min(l - 1) {
                    for n3 in 0..=n2 {
                        cases.push((t, l, n1, n2, n3));
                    }
                }
            }
        }
    }
    run_cases(&cases, |&(t, l, n1, n2, n3)| {
        let parts: Vec<usize> = [n1, n2, n3].into_iter().filter(|&x| x > 0).collect();
        let g = hub_join(2, &PathPartition::new(parts)?)?;
        let got_free = !contains_bouquet(&g, t, l)?.found;
        let bar = n1 - (t - 1) * (l - 1);
        let want_free = bar + n2 + 3 <= l || n2 + n3 + 3 <= l;
        Ok(if got_free == want_free {
            Outcome::Pass
        } else {
            Outcome::Fail(CaseRecord::new(
                format!("t={t},l={l},H=({n1},{n2},{n3})"),
                format!("detector says free = {got_free}, criterion says free = {want_free}"),
                Some(&g),
            ))
        })
    })
}

/// A vertex of degree `n − 1` whose removal leaves a linear forest.
pub(crate) fn has_dominating_path_hub(g: &Graph) -> bool {
    let n = g.n();
    (0..n).filter(|&v| g.deg(v) + 1 == n).any(|v| {
        let mut rest = VertexSet::full(n);
        rest.remove(v);
        let h = g.induced_subgraph(&rest).expect("valid subset");
        (0..h.n()).all(|u| h.deg(u) <= 2) && h.edge_count() + h.components().len() == h.n()
    })
}

pub(super) fn thm_1_structure(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let nmax = p.nmax.unwrap_or(8);
    let specs = [
        ForbiddenSpec::Matching { m: 2 },
        ForbiddenSpec::Matching { m: 3 },
        ForbiddenSpec::Cycle { l: 4 },
        ForbiddenSpec::Bouquet { t: 2, l: 3 },
        ForbiddenSpec::Bouquet { t: 2, l: 4 },
    ];
    let mut out = Vec::new();
    for f in specs {
        let cfg = SearchConfig {
            forbidden: Some(f),
            ..SearchConfig::new(5, nmax.max(5), GraphClass::Outerplanar)
        };
        for r in exhaustive_spex(&cfg)?.results {
            for g6 in &r.maximizers {
                let g = Graph::from_graph6(g6)?;
                out.push(if has_dominating_path_hub(&g) {
                    Outcome::Pass
                } else {
                    Outcome::Fail(CaseRecord::new(
                        format!("{f},n={}", r.n),
                        "maximizer has no dominating vertex over a linear forest",
                        Some(&g),
                    ))
                });
            }
        }
    }
    Ok(out)
}

/// Partitions reached from `star` by a few inverse transformations, so that
/// `star` is reachable from each of them. Sorted and distinct from `star`.
pub(crate) fn sibling_partitions(star: &PathPartition, count: usize, seed: u64) -> Result<Vec<PathPartition>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    for _ in 0..count * 50 {
        if found.len() == count {
            break;
        }
        let mut cur = star.parts().to_vec();
        // an all-2 partition only admits splits, one new sibling per step
        for _ in 0..rng.gen_range(1..=count.max(4)) {
            // (a, b) with a >= b + 2 came from (a − 1, b + 1); a >= 2 came
            // from merging (a − 1, 1)
            let mut moves: Vec<(usize, Option<usize>)> = Vec::new();
            for i in 0..cur.len() {
                if cur[i] >= 2 && (i == 0 || cur[i] != cur[i - 1]) {
                    moves.push((i, None));
                    for j in 0..cur.len() {
                        if j != i && cur[i] >= cur[j] + 2 && (j == 0 || cur[j] != cur[j - 1] || j - 1 == i) {
                            moves.push((i, Some(j)));
                        }
                    }
                }
            }
            if moves.is_empty() {
                break;
            }
            let (i, j) = moves[rng.gen_range(0..moves.len())];
            match j {
                None => {
                    cur[i] -= 1;
                    cur.push(1);
                }
                Some(j) => {
                    cur[i] -= 1;
                    cur[j] += 1;
                }
            }
            cur.sort_unstable_by(|a, b| b.cmp(a));
        }
        if cur != star.parts() {
            found.insert(cur);
        }
    }
    found.into_iter().map(PathPartition::new).collect()
}

fn construction_outcome(f: &FamilySpec) -> Result<Outcome> {
    let g = construct(f)?;
    let in_class = match f.class() {
        GraphClass::Outerplanar => is_outerplanar(&g).planar,
        GraphClass::Planar => is_planar(&g).planar,
    };
    let free = match f.forbidden() {
        Some(spec) => is_free(&g, &spec)?,
        None => true,
    };
    Ok(if in_class && free {
        Outcome::Pass
    } else {
        Outcome::Fail(CaseRecord::new(
            f.to_string(),
            format!("in class: {in_class}, forbidden-free: {free}"),
            Some(&g),
        ))
    })
}

/// Construction sweep over `make(t, l, n)` plus sibling dominance for the
/// `sibling_t` × `sibling_l` grid.
fn theorem_suite(
    p: &SuiteParams,
    ts: &[usize],
    ls: &[usize],
    sts: &[usize],
    sls: &[usize],
    make: fn(usize, usize, usize) -> FamilySpec,
) -> Result<Vec<Outcome>> {
    let steps = p.steps.unwrap_or(30);
    let mut fams = Vec::new();
    for &t in &list(&p.t, ts) {
        for &l in &list(&p.l, ls) {
            let min = make(t, l, 0).min_n()?;
            fams.extend((min..min + steps).map(|n| make(t, l, n)));
        }
    }
    let mut out = run_cases(&fams, construction_outcome)?;

    let count = p.siblings.unwrap_or(20);
    let tol = p.tol.unwrap_or(DEFAULT_TOLERANCE);
    let seed = p.seed.unwrap_or(0);
    let mut cases = Vec::new();
    for &t in &list(&p.sibling_t, sts) {
        for &l in &list(&p.sibling_l, sls) {
            for &n in &list(&p.n, &[2000]) {
                let f = make(t, l, n);
                let star = f.partition()?.expect("hub family");
                let hubs = n - star.total();
                let mix = seed ^ ((t as u64) << 40) ^ ((l as u64) << 32) ^ n as u64;
                for sib in sibling_partitions(&star, count, mix)? {
                    cases.push((f, hubs, star.clone(), sib));
                }
            }
        }
    }
    out.extend(run_cases(&cases, |(f, hubs, star, sib)| {
        strict_outcome(
            format!("{f} vs {:?}", compact(sib.parts())),
            &hub_join(*hubs, star)?,
            &hub_join(*hubs, sib)?,
            tol,
        )
    })?);
    Ok(out)
}

/// Run-length form of a partition, e.g. `[5x1, 3x332, 2x1]`.
fn compact(parts: &[usize]) -> Vec<String> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in parts {
        match out.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => out.push((p, 1)),
        }
    }
    out.into_iter().map(|(v, c)| format!("{v}x{c}")).collect()
}

pub(super) fn thm_2(p: &SuiteParams) -> Result<Vec<Outcome>> {
    theorem_suite(p, &[1, 2, 3, 4], &[3, 4, 5, 6, 7], &[2, 3], &[4, 5], |t, l, n| {
        FamilySpec::K1Hop { t, l, n }
    })
}

pub(super) fn thm_3(p: &SuiteParams) -> Result<Vec<Outcome>> {
    theorem_suite(p, &[1, 2, 3, 4], &[0], &[2, 3], &[0], |t, _, n| FamilySpec::K1Match { t, n })
}

pub(super) fn thm_4(p: &SuiteParams) -> Result<Vec<Outcome>> {
    theorem_suite(p, &[2, 3, 4], &[3, 4, 5, 6, 7], &[2, 3], &[4, 5], |t, l, n| {
        FamilySpec::K2Hp { t, l, n }
    })
}

pub(super) fn remark_rk111(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let steps = p.steps.unwrap_or(30);
    let mut fams = Vec::new();
    for n in 5..5 + steps {
        fams.push(FamilySpec::K2nMinus2 { n });
        fams.push(FamilySpec::Jn { n });
    }
    for &l in &list(&p.l, &[5, 6, 7, 8]) {
        let min = FamilySpec::K2Cl { l, n: 0 }.min_n()?;
        fams.extend((min..min + steps).map(|n| FamilySpec::K2Cl { l, n }));
    }
    run_cases(&fams, |f| {
        let g = construct(f)?;
        let l = match *f {
            FamilySpec::K2nMinus2 { .. } => 3,
            FamilySpec::Jn { .. } => 4,
            FamilySpec::K2Cl { l, .. } => l,
            _ => unreachable!("only remark families are listed"),
        };
        let planar = is_planar(&g).planar;
        let free = !contains_cycle_of_length(&g, l)?.found;
        Ok(if planar && free {
            Outcome::Pass
        } else {
            Outcome::Fail(CaseRecord::new(
                f.to_string(),
                format!("planar: {planar}, C{l}-free: {free}"),
                Some(&g),
            ))
        })
    })
}

pub(super) fn bouquet_readings(p: &SuiteParams) -> Result<Vec<Outcome>> {
    let steps = p.steps.unwrap_or(4);
    let mut fams = Vec::new();
    for &t in &list(&p.t, &[2, 3]) {
        for &l in &list(&p.l, &[3, 4, 5]) {
            for f in [FamilySpec::K1Hop { t, l, n: 0 }, FamilySpec::K2Hp { t, l, n: 0 }] {
                let min = f.min_n()?;
                fams.extend((min..min + steps).map(|n| f.with_n(n)));
            }
        }
    }
    run_cases(&fams, |f| {
        let g = construct(f)?;
        let Some(ForbiddenSpec::Bouquet { t, l }) = f.forbidden() else {
            unreachable!("bouquet families only")
        };
        let hub = contains_bouquet_with(&g, t, l, BouquetReading::HubOnly)?.found;
        let edge = contains_bouquet_with(&g, t, l, BouquetReading::EdgeDisjoint)?.found;
        Ok(if hub == edge {
            Outcome::Pass
        } else {
            Outcome::Fail(CaseRecord::new(
                f.to_string(),
                format!("hub-only contains: {hub}, edge-disjoint contains: {edge}"),
                Some(&g),
            ))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|k| partitions(k).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn siblings_lie_below_the_star() {
        let star = h_op(60, 5, 3).unwrap();
        let sibs = sibling_partitions(&star, 10, 7).unwrap();
        assert_eq!(sibs.len(), 10);
        for s in &sibs {
            assert_eq!(s.total(), star.total());
            assert!(crate::constructions::transformation_chain_to(s, &star).is_ok());
        }
    }
}
