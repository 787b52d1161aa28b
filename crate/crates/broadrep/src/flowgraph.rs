//! Information flow graphs for failure/repair histories, and exact
//! min-cuts over them.
//!
//! This is the independent oracle for the trade-off math: build the graph
//! for any concrete history, run max-flow, and compare against the
//! closed-form cut capacity. Capacities are exact rationals; the flow
//! computation scales them to integers internally so no precision is lost.

use crate::error::{Error, Result};
use crate::subspace::combinations;
use crate::tradeoff::SystemParams;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed};
use rayon::prelude::*;
use std::collections::VecDeque;

/// Vertex roles. A storage node is an (In, Out) pair per instance; a
/// partial failure adds Mid (the α bottleneck into the surviving part)
/// and Fail (the lost part, a dead end). Every helper transmission in a
/// round goes through one Aux vertex, whose infinite out-edges to all of
/// that round's newcomers model the broadcast medium.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Source,
    In { node: usize, instance: usize },
    Mid { node: usize, instance: usize },
    Out { node: usize, instance: usize },
    Fail { node: usize, instance: usize },
    Aux { helper: usize, round: usize },
    Dc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Capacity {
    Finite(BigRational),
    Infinite,
}

#[derive(Debug, Clone)]
pub struct FlowEdge {
    pub from: usize,
    pub to: usize,
    pub capacity: Capacity,
}

#[derive(Debug, Clone)]
pub struct FlowGraph {
    pub vertices: Vec<VertexKind>,
    pub edges: Vec<FlowEdge>,
    pub source: usize,
    pub sink: usize,
}

/// One repair round: which nodes lose data and which broadcast.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairRound {
    pub failed: Vec<usize>,
    pub helpers: Vec<usize>,
}

/// A complete history: the repair rounds in order, then the k nodes a
/// data collector contacts at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailurePattern {
    pub rounds: Vec<RepairRound>,
    pub dc_selection: Vec<usize>,
}

impl FailurePattern {
    pub fn validate(&self, p: &SystemParams) -> Result<()> {
        for (t, round) in self.rounds.iter().enumerate() {
            if round.failed.len() != p.r {
                return Err(Error::InvalidParams(format!(
                    "round {t}: expected {} failed nodes, got {}",
                    p.r,
                    round.failed.len()
                )));
            }
            if round.helpers.len() != p.d {
                return Err(Error::InvalidParams(format!(
                    "round {t}: expected {} helpers, got {}",
                    p.d,
                    round.helpers.len()
                )));
            }
            if !distinct_in_range(&round.failed, p.n) || !distinct_in_range(&round.helpers, p.n) {
                return Err(Error::InvalidParams(format!(
                    "round {t}: node indices must be distinct and below n={}",
                    p.n
                )));
            }
            if round.failed.iter().any(|x| round.helpers.contains(x)) {
                return Err(Error::InvalidParams(format!(
                    "round {t}: a node cannot help its own repair"
                )));
            }
        }
        if self.dc_selection.len() != p.k {
            return Err(Error::InvalidParams(format!(
                "data collector must contact exactly k={} nodes, got {}",
                p.k,
                self.dc_selection.len()
            )));
        }
        if !distinct_in_range(&self.dc_selection, p.n) {
            return Err(Error::InvalidParams(
                "data collector selection must be distinct node indices below n".into(),
            ));
        }
        Ok(())
    }
}

fn distinct_in_range(ids: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    for &x in ids {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

// Current graph handle for one physical node. `wired` tracks whether the
// instance's own α edge (In→Out, or the faulty gadget replacing it) has
// been emitted; wiring is deferred so a node whose first event is a
// failure can take the compact in-place gadget.
struct NodeCursor {
    in_v: usize,
    out_v: usize,
    instance: usize,
    wired: bool,
}

struct Builder {
    vertices: Vec<VertexKind>,
    edges: Vec<FlowEdge>,
}

impl Builder {
    fn vertex(&mut self, kind: VertexKind) -> usize {
        self.vertices.push(kind);
        self.vertices.len() - 1
    }

    fn edge(&mut self, from: usize, to: usize, capacity: Capacity) {
        self.edges.push(FlowEdge { from, to, capacity });
    }

    fn finite(&mut self, from: usize, to: usize, cap: BigRational) {
        self.edge(from, to, Capacity::Finite(cap));
    }

    fn infinite(&mut self, from: usize, to: usize) {
        self.edge(from, to, Capacity::Infinite);
    }
}

/// Build the flow graph for a history. Storage per instance is `alpha`;
/// each helper broadcast carries `beta`; a failed instance keeps
/// alpha1 = ρ·alpha of its content.
pub fn build_graph(
    p: &SystemParams,
    pattern: &FailurePattern,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<FlowGraph> {
    pattern.validate(p)?;
    if alpha.is_negative() || beta.is_negative() {
        return Err(Error::InvalidParams("alpha and beta must be nonnegative".into()));
    }
    let alpha1 = &p.rho * alpha;
    let lost = alpha - &alpha1;
    let mut b = Builder { vertices: Vec::new(), edges: Vec::new() };
    let source = b.vertex(VertexKind::Source);
    let mut nodes: Vec<NodeCursor> = (0..p.n)
        .map(|i| {
            let in_v = b.vertex(VertexKind::In { node: i, instance: 0 });
            let out_v = b.vertex(VertexKind::Out { node: i, instance: 0 });
            b.infinite(source, in_v);
            NodeCursor { in_v, out_v, instance: 0, wired: false }
        })
        .collect();
    for (t, round) in pattern.rounds.iter().enumerate() {
        // helpers broadcast first; a round's newcomers then tap every Aux
        let mut aux_ids = Vec::with_capacity(round.helpers.len());
        for &h in &round.helpers {
            let cur = &mut nodes[h];
            if !cur.wired {
                b.finite(cur.in_v, cur.out_v, alpha.clone());
                cur.wired = true;
            }
            let aux = b.vertex(VertexKind::Aux { helper: h, round: t });
            b.finite(nodes[h].out_v, aux, beta.clone());
            aux_ids.push(aux);
        }
        for &x in &round.failed {
            let (faulty_out, next_instance) = {
                let cur = &nodes[x];
                if cur.wired {
                    // the current instance already emitted data (it helped,
                    // or it is a repaired node with its α edge in place), so
                    // its surviving part must flow through a fresh bottleneck
                    // rather than re-capping the instance retroactively
                    let inst = cur.instance + 1;
                    let in_f = b.vertex(VertexKind::In { node: x, instance: inst });
                    let mid = b.vertex(VertexKind::Mid { node: x, instance: inst });
                    let out_f = b.vertex(VertexKind::Out { node: x, instance: inst });
                    let fail = b.vertex(VertexKind::Fail { node: x, instance: inst });
                    b.infinite(cur.out_v, in_f);
                    b.finite(in_f, mid, alpha.clone());
                    b.finite(mid, out_f, alpha1.clone());
                    b.finite(mid, fail, lost.clone());
                    (out_f, inst + 1)
                } else {
                    // first event for this instance: convert in place to the
                    // faulty form In→Mid (α), Mid→Out (α1), Mid→Fail (α−α1)
                    let inst = cur.instance;
                    let mid = b.vertex(VertexKind::Mid { node: x, instance: inst });
                    let fail = b.vertex(VertexKind::Fail { node: x, instance: inst });
                    b.finite(cur.in_v, mid, alpha.clone());
                    b.finite(mid, cur.out_v, alpha1.clone());
                    b.finite(mid, fail, lost.clone());
                    (cur.out_v, inst + 1)
                }
            };
            let new_in = b.vertex(VertexKind::In { node: x, instance: next_instance });
            let new_out = b.vertex(VertexKind::Out { node: x, instance: next_instance });
            b.infinite(faulty_out, new_in);
            b.finite(new_in, new_out, alpha.clone());
            for &aux in &aux_ids {
                b.infinite(aux, new_in);
            }
            nodes[x] = NodeCursor {
                in_v: new_in,
                out_v: new_out,
                instance: next_instance,
                wired: true,
            };
        }
    }
    for cur in nodes.iter_mut().filter(|c| !c.wired) {
        b.finite(cur.in_v, cur.out_v, alpha.clone());
        cur.wired = true;
    }
    let sink = b.vertex(VertexKind::Dc);
    for &x in &pattern.dc_selection {
        b.infinite(nodes[x].out_v, sink);
    }
    Ok(FlowGraph { vertices: b.vertices, edges: b.edges, source, sink })
}

/// Exact min-cut between source and data collector, by max-flow.
/// Rational capacities are scaled by their common denominator so the
/// augmenting-path arithmetic runs on integers; infinite edges use a
/// sentinel larger than the sum of all finite capacities.
pub fn min_cut(g: &FlowGraph) -> Result<BigRational> {
    let v = g.vertices.len();
    // structural reachability first: a data collector with no path at all
    // is a malformed history, not a zero-capacity one
    let mut adj_any: Vec<Vec<usize>> = vec![Vec::new(); v];
    for e in &g.edges {
        adj_any[e.from].push(e.to);
    }
    let mut seen = vec![false; v];
    let mut queue = VecDeque::from([g.source]);
    seen[g.source] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj_any[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    if !seen[g.sink] {
        return Err(Error::DisconnectedDc);
    }
    let mut denom_lcm = BigInt::one();
    for e in &g.edges {
        if let Capacity::Finite(c) = &e.capacity {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
    }
    let scale = |c: &BigRational| -> Result<i128> {
        let scaled = (c * BigRational::from_integer(denom_lcm.clone())).to_integer();
        i128::try_from(&scaled)
            .map_err(|_| Error::InvalidParams("capacity too large for exact max-flow".into()))
    };
    let mut finite_sum: i128 = 0;
    let mut caps: Vec<Option<i128>> = Vec::with_capacity(g.edges.len());
    for e in &g.edges {
        match &e.capacity {
            Capacity::Finite(c) => {
                if c.is_negative() {
                    return Err(Error::InvalidParams("negative edge capacity".into()));
                }
                let s = scale(c)?;
                finite_sum = finite_sum
                    .checked_add(s)
                    .ok_or_else(|| Error::InvalidParams("capacity sum overflow".into()))?;
                caps.push(Some(s));
            }
            Capacity::Infinite => caps.push(None),
        }
    }
    let sentinel = finite_sum
        .checked_add(1)
        .ok_or_else(|| Error::InvalidParams("capacity sum overflow".into()))?;
    // paired forward/backward residual edges
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); v];
    let mut to: Vec<usize> = Vec::new();
    let mut cap: Vec<i128> = Vec::new();
    for (e, c) in g.edges.iter().zip(&caps) {
        adj[e.from].push(to.len());
        to.push(e.to);
        cap.push(c.unwrap_or(sentinel));
        adj[e.to].push(to.len());
        to.push(e.from);
        cap.push(0);
    }
    let mut flow: i128 = 0;
    loop {
        // BFS for the shortest augmenting path
        let mut prev_edge: Vec<Option<usize>> = vec![None; v];
        let mut queue = VecDeque::from([g.source]);
        let mut reached = vec![false; v];
        reached[g.source] = true;
        while let Some(x) = queue.pop_front() {
            if x == g.sink {
                break;
            }
            for &eid in &adj[x] {
                let y = to[eid];
                if !reached[y] && cap[eid] > 0 {
                    reached[y] = true;
                    prev_edge[y] = Some(eid);
                    queue.push_back(y);
                }
            }
        }
        if !reached[g.sink] {
            break;
        }
        let mut bottleneck = i128::MAX;
        let mut x = g.sink;
        while x != g.source {
            let eid = prev_edge[x].expect("path edge");
            bottleneck = bottleneck.min(cap[eid]);
            x = to[eid ^ 1];
        }
        let mut x = g.sink;
        while x != g.source {
            let eid = prev_edge[x].expect("path edge");
            cap[eid] -= bottleneck;
            cap[eid ^ 1] += bottleneck;
            x = to[eid ^ 1];
        }
        flow += bottleneck;
    }
    Ok(BigRational::new(BigInt::from(flow), denom_lcm))
}

/// The adversarial history matching the cut-capacity bound: enough warmup
/// rounds, then ⌈k/r⌉ windup rounds each failing a fresh group whose
/// helpers are the previously repaired groups plus the lowest-indexed
/// other survivors; the data collector contacts nodes 0..k (the most
/// recently repaired groups).
pub fn worst_case_pattern(p: &SystemParams, rounds: usize) -> Result<FailurePattern> {
    let window = p.k.div_ceil(p.r);
    if rounds < window {
        return Err(Error::InsufficientRounds { needed: window, got: rounds });
    }
    let mut out = Vec::with_capacity(rounds);
    for _ in 0..rounds - window {
        out.push(RepairRound {
            failed: (0..p.r).collect(),
            helpers: (p.r..p.r + p.d).collect(),
        });
    }
    for j in 0..window {
        let failed: Vec<usize> = (j * p.r..(j + 1) * p.r).collect();
        let mut helpers: Vec<usize> = (0..j * p.r).collect();
        helpers.extend((j + 1) * p.r..(j + 1) * p.r + (p.d - j * p.r));
        out.push(RepairRound { failed, helpers });
    }
    Ok(FailurePattern { rounds: out, dc_selection: (0..p.k).collect() })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut all = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            all.push(cur.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, cur, all);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
        heap(k - 1, cur, all);
    }
    heap(n, &mut cur, &mut all);
    all
}

type RoundChoice = (Vec<usize>, Vec<usize>);

// Lexicographically least byte encoding of (rounds, dc) over all node
// relabelings: the orbit representative used to dedup symmetric histories.
fn canonical_form(
    rounds: &[RoundChoice],
    dc: Option<&[usize]>,
    perms: &[Vec<usize>],
) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let mut buf = Vec::new();
    for perm in perms {
        buf.clear();
        let push_set = |buf: &mut Vec<u8>, ids: &[usize]| {
            let mut mapped: Vec<u8> = ids.iter().map(|&x| perm[x] as u8).collect();
            mapped.sort_unstable();
            buf.extend_from_slice(&mapped);
            buf.push(u8::MAX);
        };
        for (f, h) in rounds {
            push_set(&mut buf, f);
            push_set(&mut buf, h);
        }
        if let Some(sel) = dc {
            push_set(&mut buf, sel);
        }
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.expect("at least the identity permutation")
}

/// Enumerate every failure/repair history with at most `max_rounds`
/// rounds, together with every data-collector selection, deduplicated
/// under node relabeling. Errors if the deduplicated job count exceeds
/// `budget`.
pub fn enumerate_patterns(
    p: &SystemParams,
    max_rounds: usize,
    budget: u64,
) -> Result<Vec<FailurePattern>> {
    if p.n > 8 {
        return Err(Error::BudgetExceeded(format!(
            "exhaustive enumeration relabels {}! node orderings; n must be at most 8",
            p.n
        )));
    }
    let perms = permutations(p.n);
    // all (failed, helpers) choices for one round
    let mut choices: Vec<RoundChoice> = Vec::new();
    for failed in combinations(p.n, p.r) {
        let rest: Vec<usize> = (0..p.n).filter(|x| !failed.contains(x)).collect();
        for picks in combinations(rest.len(), p.d) {
            let helpers: Vec<usize> = picks.iter().map(|&i| rest[i]).collect();
            choices.push((failed.clone(), helpers));
        }
    }
    let perms_ref = &perms;
    let choices_ref = &choices;
    let mut histories: Vec<Vec<RoundChoice>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<RoundChoice>> = vec![Vec::new()];
    for _ in 0..max_rounds {
        let mut tagged: Vec<(Vec<u8>, Vec<RoundChoice>)> = frontier
            .par_iter()
            .flat_map_iter(|h| {
                choices_ref.iter().map(move |c| {
                    let mut ext = h.clone();
                    ext.push(c.clone());
                    (canonical_form(&ext, None, perms_ref), ext)
                })
            })
            .collect();
        tagged.sort_by(|a, b| a.0.cmp(&b.0));
        tagged.dedup_by(|a, b| a.0 == b.0);
        if tagged.len() as u64 > budget {
            return Err(Error::BudgetExceeded(format!(
                "{} distinct histories at one depth exceeds budget {budget}",
                tagged.len()
            )));
        }
        frontier = tagged.into_iter().map(|(_, h)| h).collect();
        histories.extend(frontier.iter().cloned());
    }
    let selections: Vec<Vec<usize>> = combinations(p.n, p.k).collect();
    let selections_ref = &selections;
    let mut jobs: Vec<(Vec<u8>, FailurePattern)> = histories
        .par_iter()
        .flat_map_iter(|h| {
            selections_ref.iter().map(move |sel| {
                let tag = canonical_form(h, Some(sel), perms_ref);
                let pattern = FailurePattern {
                    rounds: h
                        .iter()
                        .map(|(f, hel)| RepairRound { failed: f.clone(), helpers: hel.clone() })
                        .collect(),
                    dc_selection: sel.clone(),
                };
                (tag, pattern)
            })
        })
        .collect();
    jobs.sort_by(|a, b| a.0.cmp(&b.0));
    jobs.dedup_by(|a, b| a.0 == b.0);
    if jobs.len() as u64 > budget {
        return Err(Error::BudgetExceeded(format!(
            "{} history/collector pairs exceeds budget {budget}",
            jobs.len()
        )));
    }
    Ok(jobs.into_iter().map(|(_, pat)| pat).collect())
}

/// Minimum cut over every history with at most `max_rounds` rounds and
/// every data-collector choice. The enumeration is deduplicated under
/// node relabeling; `budget` caps the number of max-flow evaluations.
pub fn exhaustive_min(
    p: &SystemParams,
    alpha: &BigRational,
    beta: &BigRational,
    max_rounds: usize,
    budget: u64,
) -> Result<BigRational> {
    let patterns = enumerate_patterns(p, max_rounds, budget)?;
    let cuts: Result<Vec<BigRational>> = patterns
        .par_iter()
        .map(|pat| min_cut(&build_graph(p, pat, alpha, beta)?))
        .collect();
    Ok(cuts?.into_iter().min().expect("at least the zero-round pattern"))
}
