//! Verification suites: each suite checks one statement numerically or
//! exhaustively over a parameter grid and reports per-case outcomes.

mod suites;

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Graphs up to this order carry a graph6 string in failure records.
const GRAPH6_RECORD_LIMIT: usize = 64;

/// Tunable grid for a suite. Unset fields fall back to each suite's
/// defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub n: Option<Vec<usize>>,
    pub nmax: Option<usize>,
    pub t: Option<Vec<usize>>,
    pub l: Option<Vec<usize>>,
    pub s2: Option<Vec<usize>>,
    pub cases: Option<usize>,
    /// Consecutive orders per grid point in construction sweeps.
    pub steps: Option<usize>,
    pub siblings: Option<usize>,
    pub sibling_t: Option<Vec<usize>>,
    pub sibling_l: Option<Vec<usize>>,
    pub total_max: Option<usize>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

fn parse_list(key: &str, value: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let a: usize = parse_num(key, a)?;
            let b: usize = parse_num(key, b.trim_start_matches('='))?;
            out.extend(a..=b);
        } else {
            out.push(parse_num(key, item)?);
        }
    }
    if out.is_empty() {
        return Err(invalid(format!("{key}: empty list")));
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| invalid(format!("{key}: cannot parse {value:?}")))
}

impl SuiteParams {
    /// Sets one field from text. Lists accept `a,b,c` and ranges `a..b`
    /// (inclusive).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "n" => self.n = Some(parse_list(key, value)?),
            "nmax" => self.nmax = Some(parse_num(key, value)?),
            "t" => self.t = Some(parse_list(key, value)?),
            "l" => self.l = Some(parse_list(key, value)?),
            "s2" => self.s2 = Some(parse_list(key, value)?),
            "cases" => self.cases = Some(parse_num(key, value)?),
            "steps" => self.steps = Some(parse_num(key, value)?),
            "siblings" => self.siblings = Some(parse_num(key, value)?),
            "sibling_t" => self.sibling_t = Some(parse_list(key, value)?),
            "sibling_l" => self.sibling_l = Some(parse_list(key, value)?),
            "total_max" => self.total_max = Some(parse_num(key, value)?),
            "seed" => self.seed = Some(parse_num(key, value)?),
            "tol" => self.tol = Some(parse_num(key, value)?),
            _ => return Err(invalid(format!("unknown suite parameter {key:?}"))),
        }
        Ok(())
    }

    /// Overlays the fields set in `other`.
    pub fn merge(&mut self, other: &SuiteParams) {
        macro_rules! take {
            ($($f:ident),*) => {$(if other.$f.is_some() { self.$f = other.$f.clone(); })*};
        }
        take!(n, nmax, t, l, s2, cases, steps, siblings, sibling_t, sibling_l, total_max, seed, tol);
    }
}

/// Reproduction data for a case that did not pass.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case: String,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
}

impl CaseRecord {
    pub(crate) fn new(case: impl Into<String>, detail: impl Into<String>, g: Option<&Graph>) -> Self {
        CaseRecord {
            case: case.into(),
            detail: detail.into(),
            graph6: g.filter(|g| g.n() <= GRAPH6_RECORD_LIMIT).map(Graph::to_graph6),
        }
    }
}

pub(crate) enum Outcome {
    Pass,
    Fail(CaseRecord),
    Indeterminate(CaseRecord),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub id: String,
    /// The statement under test.
    pub statement: String,
    /// Exploratory suites report disagreements without failing a run.
    pub exploratory: bool,
    pub cases: usize,
    pub passes: usize,
    pub failures: Vec<CaseRecord>,
    /// Strict comparisons whose gap did not clear the residuals.
    pub indeterminates: Vec<CaseRecord>,
}

impl SuiteResult {
    pub(crate) fn collect(info: &SuiteInfo, outcomes: Vec<Outcome>) -> SuiteResult {
        let mut r = SuiteResult {
            id: info.id.to_string(),
            statement: info.statement.to_string(),
            exploratory: info.exploratory,
            cases: outcomes.len(),
            passes: 0,
            failures: Vec::new(),
            indeterminates: Vec::new(),
        };
        for o in outcomes {
            match o {
                Outcome::Pass => r.passes += 1,
                Outcome::Fail(c) => r.failures.push(c),
                Outcome::Indeterminate(c) => r.indeterminates.push(c),
            }
        }
        r
    }

    /// True when a gating suite saw a failure.
    pub fn failed(&self) -> bool {
        !self.exploratory && !self.failures.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        match (self.failures.is_empty(), self.indeterminates.is_empty()) {
            (true, true) => "pass",
            (true, false) => "indeterminate",
            (false, _) if self.exploratory => "disagreements",
            (false, _) => "fail",
        }
    }
}

/// Catalogue entry for one suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub exploratory: bool,
    run: fn(&SuiteParams) -> Result<Vec<Outcome>>,
}

const fn suite(
    id: &'static str,
    statement: &'static str,
    exploratory: bool,
    run: fn(&SuiteParams) -> Result<Vec<Outcome>>,
) -> SuiteInfo {
    SuiteInfo {
        id,
        statement,
        exploratory,
        run,
    }
}

pub static SUITES: &[SuiteInfo] = &[
    suite(
        "claim-1.1",
        "rho(K1 v ((t-1)K2 u (n-2t+1)K1)) >= sqrt(n) + 1 - (n-t)/(n - sqrt(n)) > (4/5) sqrt(n)",
        false,
        suites::claim_1_1,
    ),
    suite(
        "lemma-lm2",
        "every connected outerplanar graph on n >= 3 vertices has rho <= 3/2 + sqrt(n - 7/4)",
        false,
        suites::lemma_lm2,
    ),
    suite(
        "lemma-lm1",
        "for n >= 6.5025 * 2^(s2+2), an (s1,s2)-transformation H* of H gives rho(K1 v H*) > rho(K1 v H)",
        false,
        suites::lemma_lm1,
    ),
    suite(
        "lemma-lm5",
        "for n >= 10.2 * 2^s2 + 2, an (s1,s2)-transformation H* of H gives rho(K2 v H*) > rho(K2 v H)",
        false,
        suites::lemma_lm5,
    ),
    suite(
        "claim-3.1",
        "in K1 v H with H a linear forest, every non-hub Perron entry lies in [1/rho, 1/rho + 2.04/rho^2]",
        false,
        suites::claim_3_1,
    ),
    suite(
        "lemma-lm4",
        "in K2 v H with H a linear forest, every non-hub Perron entry lies in [2/rho, 2/rho + 4.496/rho^2]",
        false,
        suites::lemma_lm4,
    ),
    suite(
        "claim-3.2",
        "along paths P_s1, P_s2 of H in K1 v H: rho^i (x_{v_{i+1}} - x_{v_i}) in A_i and rho^i (x_{v_i} - x_{w_i}) in B_i",
        false,
        suites::claim_3_2,
    ),
    suite(
        "claim-3.3",
        "K1 v H (H a linear forest) is C_l-free if and only if n1(H) <= l - 2",
        false,
        suites::claim_3_3,
    ),
    suite(
        "claim-3.5",
        "K1 v P_n1 contains B_tl if and only if n1 >= (l-1)(t-1) + l - 1",
        false,
        suites::claim_3_5,
    ),
    suite(
        "claim-4.2",
        "K2 v (P_n1 u P_n2) contains B_tl if and only if n1 + n2 >= (t-1)(l-1) + l - 2",
        false,
        suites::claim_4_2,
    ),
    suite(
        "claim-4.3",
        "for n1 >= (t-1)(l-1), K2 v H is B_tl-free if and only if n1 - (t-1)(l-1) + n2 <= l - 3 or n2 + n3 <= l - 3",
        false,
        suites::claim_4_3,
    ),
    suite(
        "thm-1-structure",
        "small-order maximizers have a dominating vertex whose neighborhood induces a disjoint union of paths",
        true,
        suites::thm_1_structure,
    ),
    suite(
        "thm-2",
        "K1 v H_OP(tl-t-1, l-2) (t >= 2) and K1 v H_OP(l-2, l-2) (t = 1) are B_tl-free outerplanar and beat their transformation siblings",
        false,
        suites::thm_2,
    ),
    suite(
        "thm-3",
        "K_{1,n-1} (t = 1) and K1 v H_OP(2t-1, 1) (t >= 2) are (t+1)K2-free outerplanar and beat their transformation siblings",
        false,
        suites::thm_3,
    ),
    suite(
        "thm-4",
        "K2 v H_P(tl-t-l, l-2) is B_tl-free planar and beats its transformation siblings",
        false,
        suites::thm_4,
    ),
    suite(
        "remark-rk111",
        "K_{2,n-2} is C3-free planar, J_n is C4-free planar, K2 v H_P(floor((l-3)/2), ceil((l-3)/2)) is C_l-free planar",
        false,
        suites::remark_rk111,
    ),
    suite(
        "bouquet-readings",
        "hub-only and edge-disjoint bouquet readings agree on the extremal families",
        true,
        suites::bouquet_readings,
    ),
];

pub fn suite_info(id: &str) -> Result<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.id == id).ok_or_else(|| {
        let ids: Vec<&str> = SUITES.iter().map(|s| s.id).collect();
        invalid(format!("unknown suite {id:?}; known: {}", ids.join(", ")))
    })
}

/// Runs suite `id` with `params`; the result depends only on the inputs.
pub fn run_suite(id: &str, params: &SuiteParams) -> Result<SuiteResult> {
    let info = suite_info(id)?;
    let outcomes = (info.run)(params)?;
    Ok(SuiteResult::collect(info, outcomes))
}

/// Evaluates `cases` in parallel, keeping their order.
pub(crate) fn run_cases<C: Sync>(
    cases: &[C],
    f: impl Fn(&C) -> Result<Outcome> + Sync + Send,
) -> Result<Vec<Outcome>> {
    cases.par_iter().map(f).collect()
}

/// Suite id to statement to verdict, for a batch of results.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceabilityReport {
    pub suites: Vec<SuiteResult>,
}

impl TraceabilityReport {
    pub fn failed(&self) -> bool {
        self.suites.iter().any(SuiteResult::failed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| suite | statement | cases | passes | failures | indeterminate | verdict |\n");
        s.push_str("|---|---|---|---|---|---|---|\n");
        for r in &self.suites {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} |",
                r.id,
                r.statement.replace('|', "\\|"),
                r.cases,
                r.passes,
                r.failures.len(),
                r.indeterminates.len(),
                r.verdict()
            );
        }
        for r in &self.suites {
            let listed = r.failures.iter().chain(&r.indeterminates).take(20);
            let mut first = true;
            for c in listed {
                if first {
                    let _ = writeln!(s, "\n### {}\n", r.id);
                    first = false;
                }
                let _ = write!(s, "- `{}`: {}", c.case, c.detail);
                if let Some(g6) = &c.graph6 {
                    let _ = write!(s, " (`{g6}`)");
                }
                s.push('\n');
            }
        }
        s
    }
}
