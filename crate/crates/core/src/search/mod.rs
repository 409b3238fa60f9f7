//! Extremal search: exhaustive isomorph-free enumeration at small `n` and a
//! seeded hill climber for larger `n`.

mod canon;
mod checkpoint;
mod enumerate;

use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::GraphClass;
use crate::error::{invalid, Error, Result};
use crate::forbidden::ForbiddenSpec;
use crate::graph::Graph;
use crate::spectral::{spectral_radius, DEFAULT_TOLERANCE};

pub use canon::{canonical_form, canonical_graph, canonical_labeling, MAX_CANON_VERTICES};
pub use enumerate::{
    enumerate_class, enumerate_class_capped, ClassFilter, PruneStats, DEFAULT_EXHAUSTIVE_CAP,
};

use checkpoint::{Checkpoint, Partial};
use enumerate::{check_cap, Level};

/// Graphs whose ρ is within this of the best are reported as maximizers.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// A local move must raise ρ by more than this to be taken.
pub const IMPROVEMENT_THRESHOLD: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Local,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub class: GraphClass,
    pub forbidden: Option<ForbiddenSpec>,
    pub connected_only: bool,
    pub mode: SearchMode,
    pub seed: u64,
    /// Worker count; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub exhaustive_cap: usize,
    /// Extra randomized climbs after the one from the start graph.
    pub restarts: usize,
    pub tol: f64,
}

impl SearchConfig {
    pub fn new(n_min: usize, n_max: usize, class: GraphClass) -> SearchConfig {
        SearchConfig {
            n_min,
            n_max,
            class,
            forbidden: None,
            connected_only: true,
            mode: SearchMode::Exhaustive,
            seed: 0,
            threads: None,
            checkpoint: None,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            restarts: 0,
            tol: DEFAULT_TOLERANCE,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(invalid(format!(
                "n range {}..={} must be non-empty and start at 1 or more",
                self.n_min, self.n_max
            )));
        }
        if let Some(f) = &self.forbidden {
            f.validate()?;
        }
        if self.threads == Some(0) {
            return Err(invalid("thread count must be positive"));
        }
        if !(self.tol > 0.0) {
            return Err(invalid("tolerance must be positive"));
        }
        if self.mode == SearchMode::Exhaustive {
            check_cap(self.n_max, self.exhaustive_cap)?;
        }
        Ok(())
    }

    fn filter(&self) -> ClassFilter {
        ClassFilter {
            class: self.class,
            forbidden: self.forbidden,
        }
    }

    /// Fields that determine the output; runtime knobs are left out.
    fn fingerprint(&self) -> String {
        serde_json::json!({
            "n_min": self.n_min,
            "n_max": self.n_max,
            "class": self.class.to_string(),
            "forbidden": self.forbidden.map(|f| f.to_string()),
            "connected_only": self.connected_only,
            "tol": self.tol,
        })
        .to_string()
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.threads {
            None => Ok(f()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| invalid(format!("cannot start {t} workers: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    Add,
    Remove,
    /// Edge `(u, v)` becomes `(u, w)`.
    Rotate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Move {
    kind: MoveKind,
    u: usize,
    v: usize,
    w: usize,
}

impl Move {
    fn apply(&self, g: &Graph) -> Result<Graph> {
        match self.kind {
            MoveKind::Add => g.with_edge(self.u, self.v),
            MoveKind::Remove => g.without_edge(self.u, self.v),
            MoveKind::Rotate => g.without_edge(self.u, self.v)?.with_edge(self.u, self.w),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub u: usize,
    pub v: usize,
    /// New endpoint of a rotation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    pub rho_after: f64,
}

/// Outcome of the search at one order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NResult {
    pub n: usize,
    /// `None` when no graph qualifies.
    pub best_rho: Option<f64>,
    pub residual: f64,
    /// Canonical graph6 of every graph within the tie tolerance, sorted.
    pub maximizers: Vec<String>,
    pub candidates: u64,
    pub seconds: f64,
    pub prune: PruneStats,
    /// Local search only: restart index of the winning climb.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restart: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub moves: Vec<MoveRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub class: GraphClass,
    pub forbidden: Option<String>,
    pub connected_only: bool,
    pub mode: SearchMode,
    pub seed: u64,
    pub results: Vec<NResult>,
}

impl SearchReport {
    fn new(cfg: &SearchConfig, mode: SearchMode, results: Vec<NResult>) -> SearchReport {
        SearchReport {
            class: cfg.class,
            forbidden: cfg.forbidden.map(|f| f.to_string()),
            connected_only: cfg.connected_only,
            mode,
            seed: cfg.seed,
            results,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// JSON with wall times zeroed; equal for equal configurations.
    pub fn to_canonical_json(&self) -> Result<String> {
        let mut r = self.clone();
        for e in &mut r.results {
            e.seconds = 0.0;
        }
        r.to_json()
    }

    /// One row per maximizer: `n,best_rho,certificate_graph6,candidates,seconds`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "best_rho", "certificate_graph6", "candidates", "seconds"])
            .map_err(csv_err)?;
        for e in &self.results {
            let rho = e.best_rho.map(|r| format!("{r:.12}")).unwrap_or_default();
            let certs: Vec<&str> = if e.maximizers.is_empty() {
                vec![""]
            } else {
                e.maximizers.iter().map(String::as_str).collect()
            };
            for c in certs {
                w.write_record([
                    e.n.to_string(),
                    rho.clone(),
                    c.to_string(),
                    e.candidates.to_string(),
                    format!("{:.3}", e.seconds),
                ])
                .map_err(csv_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn result(&self, n: usize) -> Option<&NResult> {
        self.results.iter().find(|r| r.n == n)
    }
}

fn csv_err(e: csv::Error) -> Error {
    invalid(format!("csv: {e}"))
}

/// Keeps every `(rho, residual, graph6)` within the tie tolerance of the
/// running best.
fn absorb(leaders: &mut Vec<(f64, f64, String)>, mut fresh: Vec<(f64, f64, String)>) {
    leaders.append(&mut fresh);
    let Some(best) = leaders.iter().map(|x| x.0).reduce(f64::max) else {
        return;
    };
    leaders.retain(|x| x.0 >= best - TIE_TOLERANCE);
    leaders.sort_by(|a, b| a.2.cmp(&b.2));
    leaders.dedup_by(|a, b| a.2 == b.2);
}

fn finish(n: usize, leaders: &[(f64, f64, String)], candidates: u64, prune: PruneStats, seconds: f64) -> NResult {
    let best = leaders.iter().map(|x| x.0).reduce(f64::max);
    let residual = leaders.iter().map(|x| x.1).fold(0.0, f64::max);
    NResult {
        n,
        best_rho: best,
        residual,
        maximizers: leaders.iter().map(|x| x.2.clone()).collect(),
        candidates,
        seconds,
        prune,
        restart: None,
        moves: Vec::new(),
    }
}

fn decode_level(p: &Partial) -> Result<Level> {
    let graphs = p
        .frontier
        .iter()
        .map(|s| Ok((s.as_bytes().to_vec(), Graph::from_graph6(s)?)))
        .collect::<Result<_>>()?;
    Ok(Level {
        edges: p.edges,
        graphs,
    })
}

/// Runs one order from `state` (a fresh root or a resumed frontier).
fn exhaustive_n(cfg: &SearchConfig, mut state: Partial, ckpt: &mut Option<Checkpoint>) -> Result<NResult> {
    let filter = cfg.filter();
    let started = Instant::now();
    let base_seconds = state.seconds;
    let mut level = decode_level(&state)?;
    loop {
        let scored: Vec<(f64, f64, String)> = level
            .graphs
            .par_iter()
            .filter(|(_, g)| !cfg.connected_only || g.is_connected())
            .map(|(f, g)| {
                let est = spectral_radius(g, cfg.tol)?;
                Ok((est.rho, est.residual, String::from_utf8(f.clone()).expect("graph6 is ascii")))
            })
            .collect::<Result<_>>()?;
        state.candidates += scored.len() as u64;
        absorb(&mut state.leaders, scored);
        let (next, stats) = level.next(&filter)?;
        state.prune.add(&stats);
        level = next;
        state.edges = level.edges;
        state.frontier = level
            .graphs
            .iter()
            .map(|(f, _)| String::from_utf8(f.clone()).expect("graph6 is ascii"))
            .collect();
        state.seconds = base_seconds + started.elapsed().as_secs_f64();
        if let (Some(c), Some(path)) = (ckpt.as_mut(), cfg.checkpoint.as_ref()) {
            c.current = Some(state.clone());
            c.save(path)?;
        }
        if level.graphs.is_empty() {
            break;
        }
    }
    Ok(finish(state.n, &state.leaders, state.candidates, state.prune, state.seconds))
}

/// All maximizers of ρ over the configured class for each `n` in range, by
/// exhaustive isomorph-free enumeration. With a checkpoint path, progress is
/// saved after every edge level and an existing snapshot is resumed.
pub fn exhaustive_spex(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    cfg.install(|| exhaustive_inner(cfg))?
}

fn exhaustive_inner(cfg: &SearchConfig) -> Result<SearchReport> {
    let fingerprint = cfg.fingerprint();
    let mut ckpt = match &cfg.checkpoint {
        None => None,
        Some(path) => match Checkpoint::load(path)? {
            Some(c) if c.fingerprint != fingerprint => {
                return Err(Error::Checkpoint(format!(
                    "{} was written for a different search configuration",
                    path.display()
                )))
            }
            Some(c) => Some(c),
            None => Some(Checkpoint {
                fingerprint,
                done: Vec::new(),
                current: None,
            }),
        },
    };
    let mut results = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        if let Some(r) = ckpt.as_ref().and_then(|c| c.done.iter().find(|r| r.n == n)) {
            results.push(r.clone());
            continue;
        }
        let resumed = ckpt
            .as_ref()
            .and_then(|c| c.current.clone())
            .filter(|p| p.n == n);
        let state = match resumed {
            Some(p) => p,
            None => {
                let root = Level::root(n)?;
                let admitted = cfg.filter().admits(&root.graphs[0].1)?;
                Partial {
                    n,
                    edges: 0,
                    frontier: if admitted {
                        vec![String::from_utf8(root.graphs[0].0.clone()).expect("graph6 is ascii")]
                    } else {
                        Vec::new()
                    },
                    leaders: Vec::new(),
                    candidates: 0,
                    prune: PruneStats::default(),
                    seconds: 0.0,
                }
            }
        };
        let r = if state.frontier.is_empty() {
            finish(n, &state.leaders, state.candidates, state.prune, state.seconds)
        } else {
            exhaustive_n(cfg, state, &mut ckpt)?
        };
        if let (Some(c), Some(path)) = (ckpt.as_mut(), cfg.checkpoint.as_ref()) {
            c.done.push(r.clone());
            c.current = None;
            c.save(path)?;
        }
        results.push(r);
    }
    Ok(SearchReport::new(cfg, SearchMode::Exhaustive, results))
}

fn all_moves(g: &Graph) -> Vec<Move> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let kind = if g.has_edge(u, v) { MoveKind::Remove } else { MoveKind::Add };
            out.push(Move { kind, u, v, w: v });
        }
    }
    for (a, b) in g.edges() {
        for (u, v) in [(a, b), (b, a)] {
            for w in 0..n {
                if w != u && w != v && !g.has_edge(u, w) {
                    out.push(Move {
                        kind: MoveKind::Rotate,
                        u,
                        v,
                        w,
                    });
                }
            }
        }
    }
    out
}

fn admissible(cfg: &SearchConfig, g: &Graph) -> Result<bool> {
    Ok((!cfg.connected_only || g.is_connected()) && cfg.filter().admits(g)?)
}

/// Best-improvement hill climb; ties go to the earliest move in
/// [`all_moves`] order.
fn climb(cfg: &SearchConfig, start: Graph) -> Result<(Graph, f64, f64, Vec<MoveRecord>)> {
    let est = spectral_radius(&start, cfg.tol)?;
    let (mut g, mut rho, mut residual) = (start, est.rho, est.residual);
    let mut log = Vec::new();
    loop {
        let moves = all_moves(&g);
        let scored: Vec<Option<(f64, f64)>> = moves
            .par_iter()
            .map(|m| {
                let h = m.apply(&g)?;
                if !admissible(cfg, &h)? {
                    return Ok(None);
                }
                let e = spectral_radius(&h, cfg.tol)?;
                Ok(Some((e.rho, e.residual)))
            })
            .collect::<Result<_>>()?;
        let mut pick: Option<(usize, f64, f64)> = None;
        for (i, s) in scored.iter().enumerate() {
            if let Some((r, res)) = *s {
                if pick.is_none_or(|(_, br, _)| r > br) {
                    pick = Some((i, r, res));
                }
            }
        }
        match pick {
            Some((i, r, res)) if r > rho + IMPROVEMENT_THRESHOLD => {
                let m = moves[i];
                g = m.apply(&g)?;
                rho = r;
                residual = res;
                log.push(MoveRecord {
                    kind: m.kind,
                    u: m.u,
                    v: m.v,
                    w: (m.kind == MoveKind::Rotate).then_some(m.w),
                    rho_after: r,
                });
            }
            _ => return Ok((g, rho, residual, log)),
        }
    }
}

/// Applies a few random admissible moves to `g`.
fn perturb(cfg: &SearchConfig, g: &Graph, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let mut g = g.clone();
    let steps = 1 + rng.gen_range(0..g.n().max(1));
    for _ in 0..steps {
        let moves = all_moves(&g);
        if moves.is_empty() {
            break;
        }
        for _ in 0..32 {
            let h = moves[rng.gen_range(0..moves.len())].apply(&g)?;
            if admissible(cfg, &h)? {
                g = h;
                break;
            }
        }
    }
    Ok(g)
}

fn certificate(g: &Graph) -> Result<String> {
    if g.n() <= MAX_CANON_VERTICES {
        Ok(String::from_utf8(canonical_form(g)?).expect("graph6 is ascii"))
    } else {
        Ok(g.to_graph6())
    }
}

/// Hill climbs from `start` over single-edge additions, removals and
/// rotations that stay in the class and avoid the forbidden graph, followed
/// by `cfg.restarts` climbs from seeded random perturbations of `start`.
/// The report has one entry, for `n = start.n()`; its move log belongs to
/// the winning climb.
pub fn local_search_spex(cfg: &SearchConfig, start: &Graph) -> Result<SearchReport> {
    if let Some(f) = &cfg.forbidden {
        f.validate()?;
    }
    if cfg.threads == Some(0) || !(cfg.tol > 0.0) {
        return Err(invalid("thread count and tolerance must be positive"));
    }
    if !cfg.filter().admits(start)? {
        return Err(invalid(format!(
            "start graph is not a {}{} graph",
            match &cfg.forbidden {
                Some(f) => format!("{f}-free "),
                None => String::new(),
            },
            cfg.class
        )));
    }
    if cfg.connected_only && !start.is_connected() {
        return Err(invalid("start graph is disconnected but the search is connected-only"));
    }
    cfg.install(|| local_inner(cfg, start))?
}

fn local_inner(cfg: &SearchConfig, start: &Graph) -> Result<SearchReport> {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut best: Option<(f64, usize, Vec<MoveRecord>)> = None;
    let mut leaders: Vec<(f64, f64, String)> = Vec::new();
    let mut candidates = 0u64;
    for r in 0..=cfg.restarts {
        let from = if r == 0 { start.clone() } else { perturb(cfg, start, &mut rng)? };
        let (g, rho, residual, log) = climb(cfg, from)?;
        candidates += 1 + log.len() as u64;
        absorb(&mut leaders, vec![(rho, residual, certificate(&g)?)]);
        if best.as_ref().is_none_or(|b| rho > b.0 + IMPROVEMENT_THRESHOLD) {
            best = Some((rho, r, log));
        }
    }
    let (_, restart, moves) = best.expect("at least one climb");
    let mut res = finish(
        start.n(),
        &leaders,
        candidates,
        PruneStats::default(),
        started.elapsed().as_secs_f64(),
    );
    res.restart = Some(restart);
    res.moves = moves;
    Ok(SearchReport::new(cfg, SearchMode::Local, vec![res]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n_min: usize, n_max: usize, class: GraphClass, f: Option<ForbiddenSpec>) -> SearchConfig {
        SearchConfig {
            forbidden: f,
            ..SearchConfig::new(n_min, n_max, class)
        }
    }

    #[test]
    fn stars_win_without_two_matchings() {
        let c = cfg(5, 7, GraphClass::Outerplanar, Some(ForbiddenSpec::Matching { m: 2 }));
        let rep = exhaustive_spex(&c).unwrap();
        for e in &rep.results {
            let star = canonical_form(&Graph::star(e.n).unwrap()).unwrap();
            assert_eq!(e.maximizers, vec![String::from_utf8(star).unwrap()]);
        }
    }

    #[test]
    fn fan_wins_at_five() {
        let rep = exhaustive_spex(&SearchConfig::new(5, 5, GraphClass::Outerplanar)).unwrap();
        let fan = Graph::join(&Graph::empty(1).unwrap(), &Graph::path(4).unwrap()).unwrap();
        let want = String::from_utf8(canonical_form(&fan).unwrap()).unwrap();
        assert_eq!(rep.results[0].maximizers, vec![want]);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let mut c = SearchConfig::new(4, 6, GraphClass::Planar);
        c.threads = Some(1);
        let a = exhaustive_spex(&c).unwrap().to_canonical_json().unwrap();
        c.threads = Some(3);
        let b = exhaustive_spex(&c).unwrap().to_canonical_json().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn local_search_preconditions_and_fixed_points() {
        let c = cfg(5, 5, GraphClass::Outerplanar, None);
        let wheel = Graph::join(&Graph::empty(1).unwrap(), &Graph::cycle(5).unwrap()).unwrap();
        assert!(matches!(local_search_spex(&c, &wheel), Err(Error::InvalidParameter(_))));
        let fan = Graph::join(&Graph::empty(1).unwrap(), &Graph::path(4).unwrap()).unwrap();
        let rep = local_search_spex(&c, &fan).unwrap();
        assert!(rep.results[0].moves.is_empty());
    }

    #[test]
    fn checkpoint_resume_matches() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = SearchConfig::new(4, 6, GraphClass::Outerplanar);
        c.checkpoint = Some(dir.path().join("run.ckpt"));
        let a = exhaustive_spex(&c).unwrap().to_canonical_json().unwrap();
        let bytes = std::fs::read(c.checkpoint.as_ref().unwrap()).unwrap();
        assert!(bytes.starts_with(checkpoint::MAGIC));
        let b = exhaustive_spex(&c).unwrap().to_canonical_json().unwrap();
        assert_eq!(a, b);
        let mut other = c.clone();
        other.connected_only = false;
        assert!(matches!(exhaustive_spex(&other), Err(Error::Checkpoint(_))));
    }
}
