//! Executable repair code: system initialization, full and partial broadcast
//! repair with random recombination, reconstruction, and the experiment
//! harness that tracks subspace dimensions across repair rounds.
//!
//! Two modes. Dimension-tracking keeps only the evaluation points (vectors in
//! F_q^l) of each stored packet; since every repair step is an F_q-linear
//! combination, the subspace spanned by a node's points is an exact shadow of
//! what the node could hand a data collector, and rank arithmetic over F_q is
//! all the harness needs. Full-payload mode additionally stores the
//! evaluations f(θ) in F_{q^l} and reconstructs the file by Moore
//! interpolation; it is meant for small parameters.
//!
//! ## Repair geometry
//!
//! With window W = d−(j̄−1)r, a node stores S = W·ξ packets. A repair round
//! contacts d helpers; helper slot s ends up contributing r·ξ packets (in
//! partial repair the faulty node tops up each slot's (1−ρ)ξr received
//! combinations with ρξr of its own surviving packets). Per sub-round t and
//! window offset c, one row of the repair matrix Y is formed by taking packet
//! m of helper slot b·r + ((c+m) mod W) for each column g = b·r + m, which is
//! the block layout with row g of the transposed matrix rotated left by
//! (g mod r). The newcomer stores one random row combination per row of Y,
//! S rows in all.

use std::collections::BTreeMap;
use std::time::Instant;

use num::{BigRational, BigUint, One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{
    make_ext_field, ExtFieldContext, ExtFieldElement, FieldOps, PrimeFieldContext,
};
use crate::linalg::{independent_rows, rank, Matrix};
use crate::linpoly::{encode_file, evaluate, interpolate, LinearizedPolynomial};
use crate::subspace::{NodeSubspaceFamily, Subspace};
use crate::tradeoff::{pstar, SystemParams};

const MAX_COEFFICIENT_RETRIES: usize = 16;

const SALT_TRANSMIT: u64 = 1;
const SALT_COMBINE: u64 = 2;
const SALT_SURVIVE: u64 = 3;
const SALT_SHUFFLE: u64 = 4;
const SALT_ERASE: u64 = 5;
const SALT_ROUND: u64 = 6;
const SALT_DC: u64 = 7;
const SALT_CHECK: u64 = 8;
const SALT_FILE: u64 = 9;

fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One ChaCha20 stream per (seed, nonce, lane, salt) tuple, so every random
/// decision in a run is reproducible and independent of evaluation order.
fn derive_rng(seed: u64, nonce: u64, lane: u64, salt: u64) -> ChaCha20Rng {
    let mut s = mix64(seed);
    s = mix64(s ^ nonce);
    s = mix64(s ^ lane);
    s = mix64(s ^ salt);
    ChaCha20Rng::seed_from_u64(s)
}

fn rat_usize(x: &BigRational) -> usize {
    debug_assert!(x.is_integer());
    x.to_integer().to_usize().expect("count fits usize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SimMode {
    DimensionTracking,
    FullPayload,
}

impl std::fmt::Display for SimMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimMode::DimensionTracking => write!(f, "dimension-tracking"),
            SimMode::FullPayload => write!(f, "full-payload"),
        }
    }
}

/// Full parameterization of one concrete code instance.
#[derive(Debug, Clone)]
pub struct CodeConfig {
    pub params: SystemParams,
    /// Operating point on the trade-off curve, 1 ..= k/r.
    pub j_bar: usize,
    /// Helper sampling surplus: each transmission draws from (1−ρ)(r+e)ξ
    /// stored packets instead of the minimal (1−ρ)rξ.
    pub e: usize,
    /// Expansion factor for partial repair; ρξ must be an integer.
    pub xi: usize,
    pub q: u64,
    /// Extension degree / ambient dimension of the evaluation points.
    pub l: usize,
    pub mode: SimMode,
    pub seed: u64,
    target: u64,
}

impl CodeConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        params: SystemParams,
        j_bar: usize,
        e: usize,
        xi: usize,
        q: u64,
        l: usize,
        mode: SimMode,
        seed: u64,
    ) -> Result<Self> {
        let (n, k, d, r) = (params.n, params.k, params.d, params.r);
        if k % r != 0 {
            return Err(Error::InvalidParams(format!(
                "the construction needs r to divide k, got k={k} r={r}"
            )));
        }
        if j_bar == 0 || j_bar > k / r {
            return Err(Error::InvalidParams(format!(
                "j_bar must lie in 1..={}, got {j_bar}",
                k / r
            )));
        }
        if e > d - j_bar * r {
            return Err(Error::InvalidParams(format!(
                "helper surplus e={e} exceeds d - j_bar*r = {}",
                d - j_bar * r
            )));
        }
        if xi == 0 {
            return Err(Error::InvalidParams("xi must be positive".into()));
        }
        let rho_xi = &params.rho * BigRational::from_integer(xi.into());
        if !rho_xi.is_integer() {
            return Err(Error::InvalidParams(format!(
                "rho*xi must be an integer, got rho={} xi={xi}",
                params.rho
            )));
        }
        PrimeFieldContext::new(q)?;
        let s = (d - (j_bar - 1) * r) * xi;
        let min_l = (n - r) * s;
        if l < min_l {
            return Err(Error::InvalidParams(format!(
                "extension degree l={l} below (n-r)*S = {min_l}"
            )));
        }
        let target = pstar(k, d, r, j_bar, &params.rho, xi)?;
        Ok(Self { params, j_bar, e, xi, q, l, mode, seed, target })
    }

    /// W = d − (j̄−1)r: helpers per block of the repair matrix.
    pub fn window(&self) -> usize {
        self.params.d - (self.j_bar - 1) * self.params.r
    }

    /// S: packets stored per node.
    pub fn subpacketization(&self) -> usize {
        self.window() * self.xi
    }

    /// (1−ρ)ξr: packets each helper puts on the air per round.
    pub fn transmit_count(&self) -> usize {
        self.params.r * self.xi - self.surviving_per_slot()
    }

    /// ρξr: surviving packets the faulty node adds per helper slot.
    pub fn surviving_per_slot(&self) -> usize {
        rat_usize(
            &(&self.params.rho
                * BigRational::from_integer((self.params.r * self.xi).into())),
        )
    }

    /// (1−ρ)(r+e)ξ: stored packets a helper samples before combining.
    pub fn sample_count(&self) -> usize {
        let total = (self.params.r + self.e) * self.xi;
        total
            - rat_usize(&(&self.params.rho * BigRational::from_integer(total.into())))
    }

    /// (1−ρ)S: packets a partial failure erases.
    pub fn erased_count(&self) -> usize {
        let s = self.subpacketization();
        s - rat_usize(&(&self.params.rho * BigRational::from_integer(s.into())))
    }

    /// ξP*: the dimension every k-subset must reach, and the number of file
    /// packets the system carries.
    pub fn dimension_target(&self) -> u64 {
        self.target
    }
}

/// One stored or transmitted packet: its evaluation point as a coordinate
/// vector over F_q, plus the evaluation itself in full-payload mode.
#[derive(Debug, Clone)]
pub struct Packet {
    pub theta: Vec<u64>,
    pub payload: Option<ExtFieldElement>,
}

#[derive(Debug, Clone)]
pub struct NodeState {
    /// S × l; the rows span this node's subspace W_i.
    pub thetas: Matrix<u64>,
    pub payloads: Option<Vec<ExtFieldElement>>,
    pub erased_mask: Vec<bool>,
}

impl NodeState {
    fn packet(&self, i: usize) -> Packet {
        Packet {
            theta: self.thetas.row(i).to_vec(),
            payload: self.payloads.as_ref().map(|p| p[i].clone()),
        }
    }
}

/// The assembled repair matrix: S rows of j̄r (helper slot, packet) entries.
/// Each row turns into one newcomer packet.
#[derive(Debug, Clone)]
pub struct RepairMatrixY {
    pub entries: Vec<Vec<(usize, Packet)>>,
    pub rotation_applied: bool,
    /// Rows in which some helper slot appears more than once. Zero whenever
    /// the window geometry guarantees distinctness (see [`assemble_y`]).
    pub repeated_rows: usize,
}

/// Whether every row of Y is guaranteed to reference j̄r distinct helper
/// slots. Consecutive blocks shift their helper window by r, so a slot can
/// repeat within a row exactly when some multiple δr of the shift falls
/// strictly between W−r and W for δ ≤ j̄−1, i.e. when r ∤ W and ⌊W/r⌋ < j̄.
fn rows_distinct(w: usize, r: usize, j_bar: usize) -> bool {
    j_bar == 1 || w.is_multiple_of(r) || w >= j_bar * r
}

/// Arrange the per-slot packet lists into the repair matrix. `slot_packets`
/// must hold d lists of rξ packets each (received plus, in partial repair,
/// the faulty node's own surviving top-up).
pub fn assemble_y(slot_packets: &[Vec<Packet>], config: &CodeConfig) -> Result<RepairMatrixY> {
    let d = config.params.d;
    let r = config.params.r;
    let w = config.window();
    let cols = config.j_bar * r;
    if slot_packets.len() != d {
        return Err(Error::InvalidParams(format!(
            "expected {d} helper slots, got {}",
            slot_packets.len()
        )));
    }
    let per_slot = r * config.xi;
    if let Some(bad) = slot_packets.iter().position(|s| s.len() != per_slot) {
        return Err(Error::InvalidParams(format!(
            "helper slot {bad} holds {} packets, expected {per_slot}",
            slot_packets[bad].len()
        )));
    }
    let distinct_expected = rows_distinct(w, r, config.j_bar);
    let mut entries = Vec::with_capacity(w * config.xi);
    let mut repeated_rows = 0usize;
    for t in 0..config.xi {
        for c in 0..w {
            let mut row = Vec::with_capacity(cols);
            for g in 0..cols {
                let (b, m) = (g / r, g % r);
                let slot = b * r + (c + m) % w;
                row.push((slot, slot_packets[slot][t * r + m].clone()));
            }
            let mut slots: Vec<usize> = row.iter().map(|(s, _)| *s).collect();
            slots.sort_unstable();
            if let Some(dup) = slots.windows(2).find(|p| p[0] == p[1]) {
                if distinct_expected {
                    return Err(Error::DistinctHelpersViolated {
                        row: entries.len(),
                        slot: dup[0],
                    });
                }
                repeated_rows += 1;
            }
            entries.push(row);
        }
    }
    Ok(RepairMatrixY { entries, rotation_applied: true, repeated_rows })
}

/// Result of a data-collector read.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// dim of the span of the contacted nodes' evaluation points.
    pub dim: usize,
    /// The recovered file packets (full-payload mode only).
    pub packets: Option<Vec<ExtFieldElement>>,
}

#[derive(Debug)]
pub struct StorageSystem {
    pub config: CodeConfig,
    field: PrimeFieldContext,
    ext: Option<ExtFieldContext>,
    file_poly: Option<LinearizedPolynomial>,
    pub nodes: Vec<NodeState>,
    rounds_run: u64,
    /// Per-helper evaluation points broadcast in the most recent round,
    /// keyed by node index. Feeds the cross-round transmission overlap check.
    last_transmissions: BTreeMap<usize, Matrix<u64>>,
    /// Cumulative count of Y rows with a repeated helper slot (possible only
    /// for window geometries where distinctness is not guaranteed).
    pub repeated_helper_rows: u64,
    /// Cumulative recombination redraws forced by a rank-deficient draw.
    pub coefficient_retries: u64,
}

impl StorageSystem {
    /// Build and seed the system: nodes 0..n−r−1 receive disjoint blocks of
    /// standard basis vectors as evaluation points (additively independent by
    /// construction), then the remaining r nodes are filled by one full
    /// repair with nodes 0..d−1 as helpers.
    ///
    /// `file_packets` must hold exactly ξP* elements in full-payload mode and
    /// must be empty in dimension-tracking mode.
    pub fn init(config: CodeConfig, file_packets: &[ExtFieldElement]) -> Result<Self> {
        let field = PrimeFieldContext::new(config.q)?;
        let target = config.dimension_target() as usize;
        let (ext, file_poly) = match config.mode {
            SimMode::DimensionTracking => {
                if !file_packets.is_empty() {
                    return Err(Error::InvalidParams(
                        "dimension-tracking mode takes no file packets".into(),
                    ));
                }
                (None, None)
            }
            SimMode::FullPayload => {
                if file_packets.len() != target {
                    return Err(Error::InvalidParams(format!(
                        "need exactly {target} file packets, got {}",
                        file_packets.len()
                    )));
                }
                let ctx = make_ext_field(config.q, config.l)?;
                let poly = encode_file(&ctx, file_packets.to_vec())?;
                (Some(ctx), Some(poly))
            }
        };
        let (n, r, d) = (config.params.n, config.params.r, config.params.d);
        let s = config.subpacketization();
        let l = config.l;
        let mut nodes = Vec::with_capacity(n);
        for node in 0..n - r {
            let thetas = Matrix::from_fn(s, l, |i, j| u64::from(j == node * s + i));
            let payloads = match (&ext, &file_poly) {
                (Some(ctx), Some(poly)) => {
                    let mut vals = Vec::with_capacity(s);
                    for i in 0..s {
                        vals.push(evaluate(ctx, poly, &ctx.basis_elem(node * s + i)?)?);
                    }
                    Some(vals)
                }
                _ => None,
            };
            nodes.push(NodeState { thetas, payloads, erased_mask: vec![false; s] });
        }
        for _ in n - r..n {
            let payloads = ext.as_ref().map(|ctx| vec![ctx.zero_elem(); s]);
            nodes.push(NodeState {
                thetas: Matrix::zero(s, l),
                payloads,
                erased_mask: vec![false; s],
            });
        }
        let mut sys = Self {
            config,
            field,
            ext,
            file_poly,
            nodes,
            rounds_run: 0,
            last_transmissions: BTreeMap::new(),
            repeated_helper_rows: 0,
            coefficient_retries: 0,
        };
        let newcomers: Vec<usize> = (n - r..n).collect();
        let helpers: Vec<usize> = (0..d).collect();
        sys.repair_round(&newcomers, &helpers, false)?;
        Ok(sys)
    }

    pub fn rounds_run(&self) -> u64 {
        self.rounds_run
    }

    pub fn file_polynomial(&self) -> Option<&LinearizedPolynomial> {
        self.file_poly.as_ref()
    }

    /// Evaluation points most recently broadcast per helper node.
    pub fn last_transmissions(&self) -> &BTreeMap<usize, Matrix<u64>> {
        &self.last_transmissions
    }

    /// What one helper puts on the air: (1−ρ)ξr random combinations of
    /// (1−ρ)(r+e)ξ sampled stored packets. Deterministic per
    /// (seed, round_nonce, node).
    pub fn helper_transmit(&self, node: usize, round_nonce: u64) -> Result<Vec<Packet>> {
        self.transmit_from(
            node,
            round_nonce,
            self.config.transmit_count(),
            self.config.sample_count(),
        )
    }

    fn transmit_from(
        &self,
        node: usize,
        nonce: u64,
        count: usize,
        sample_size: usize,
    ) -> Result<Vec<Packet>> {
        let st = self.nodes.get(node).ok_or(Error::IndexOutOfRange(node))?;
        let s = self.config.subpacketization();
        if sample_size > s {
            return Err(Error::InvalidParams(format!(
                "transmit sample {sample_size} exceeds stored packet count {s}"
            )));
        }
        let mut rng = derive_rng(self.config.seed, nonce, node as u64, SALT_TRANSMIT);
        let picked = rand::seq::index::sample(&mut rng, s, sample_size).into_vec();
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let mut sent = None;
            for _ in 0..MAX_COEFFICIENT_RETRIES {
                let coeffs: Vec<u64> =
                    (0..sample_size).map(|_| rng.gen_range(0..self.config.q)).collect();
                let theta = self.combine_theta(&st.thetas, &picked, &coeffs);
                if theta.iter().all(|&x| x == 0) {
                    continue;
                }
                let payload = match (&self.ext, &st.payloads) {
                    (Some(ctx), Some(vals)) => {
                        Some(combine_payload(ctx, vals, &picked, &coeffs)?)
                    }
                    _ => None,
                };
                sent = Some(Packet { theta, payload });
                break;
            }
            out.push(sent.ok_or(Error::RetriesExhausted(MAX_COEFFICIENT_RETRIES))?);
        }
        Ok(out)
    }

    fn combine_theta(&self, thetas: &Matrix<u64>, idx: &[usize], coeffs: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; thetas.cols];
        for (&i, &c) in idx.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (a, &v) in acc.iter_mut().zip(thetas.row(i)) {
                *a = self.field.add(a, &self.field.mul(&c, &v));
            }
        }
        acc
    }

    /// Full repair: every newcomer's content is replaced outright.
    pub fn repair_full(&mut self, failed: &[usize], helpers: &[usize]) -> Result<()> {
        ensure_distinct(helpers, "helpers")?;
        self.repair_round(failed, helpers, false)
    }

    /// Partial repair: each failed node must carry exactly (1−ρ)S erased
    /// packets; its surviving packets top up every helper slot.
    pub fn repair_partial(&mut self, failed: &[usize], helpers: &[usize]) -> Result<()> {
        ensure_distinct(helpers, "helpers")?;
        self.repair_round(failed, helpers, true)
    }

    /// Fault-injection variant: `slots` may name the same helper twice, in
    /// which case both slots carry that node's single broadcast. Lets
    /// experiments model a round that effectively reached only d−1 helpers.
    pub fn repair_with_slots(
        &mut self,
        failed: &[usize],
        slots: &[usize],
        partial: bool,
    ) -> Result<()> {
        self.repair_round(failed, slots, partial)
    }

    fn repair_round(&mut self, failed: &[usize], slots: &[usize], partial: bool) -> Result<()> {
        let p = &self.config.params;
        if failed.len() != p.r {
            return Err(Error::InvalidParams(format!(
                "need {} failed nodes, got {}",
                p.r,
                failed.len()
            )));
        }
        if slots.len() != p.d {
            return Err(Error::InvalidParams(format!(
                "need {} helper slots, got {}",
                p.d,
                slots.len()
            )));
        }
        ensure_distinct(failed, "failed nodes")?;
        for &x in failed.iter().chain(slots) {
            if x >= p.n {
                return Err(Error::IndexOutOfRange(x));
            }
        }
        if slots.iter().any(|s| failed.contains(s)) {
            return Err(Error::InvalidParams(
                "helper slots and failed nodes overlap".into(),
            ));
        }
        let s = self.config.subpacketization();
        if partial {
            let expected = self.config.erased_count();
            for &f in failed {
                let got = self.nodes[f].erased_mask.iter().filter(|&&e| e).count();
                if got != expected {
                    return Err(Error::ErasureMismatch { node: f, got, expected });
                }
            }
        }
        let nonce = self.rounds_run;
        // Full repair rebuilds entire nodes, so it always moves ξr packets
        // per slot regardless of the configured survival fraction.
        let (count, sample) = if partial {
            (self.config.transmit_count(), self.config.sample_count())
        } else {
            (p.r * self.config.xi, (p.r + self.config.e) * self.config.xi)
        };
        let transmissions: Vec<Vec<Packet>> = slots
            .iter()
            .map(|&h| self.transmit_from(h, nonce, count, sample))
            .collect::<Result<_>>()?;
        self.last_transmissions = slots
            .iter()
            .zip(&transmissions)
            .map(|(&h, pkts)| {
                let rows = pkts.iter().map(|p| p.theta.clone()).collect();
                Ok((h, Matrix::from_rows(rows)?))
            })
            .collect::<Result<_>>()?;
        let cols = self.config.j_bar * p.r;
        let top_up = self.config.surviving_per_slot();
        for (w_idx, &f) in failed.iter().enumerate() {
            let slot_lists: Vec<Vec<Packet>> = if partial {
                let node = &self.nodes[f];
                let surviving: Vec<usize> =
                    (0..s).filter(|&i| !node.erased_mask[i]).collect();
                slots
                    .iter()
                    .enumerate()
                    .map(|(si, _)| {
                        let lane = ((w_idx as u64) << 32) | si as u64;
                        let mut list = transmissions[si].clone();
                        let mut srng =
                            derive_rng(self.config.seed, nonce, lane, SALT_SURVIVE);
                        for i in
                            rand::seq::index::sample(&mut srng, surviving.len(), top_up)
                        {
                            list.push(node.packet(surviving[i]));
                        }
                        if top_up > 0 {
                            let mut hrng =
                                derive_rng(self.config.seed, nonce, lane, SALT_SHUFFLE);
                            list.shuffle(&mut hrng);
                        }
                        list
                    })
                    .collect()
            } else {
                transmissions.clone()
            };
            let y = assemble_y(&slot_lists, &self.config)?;
            self.repeated_helper_rows += y.repeated_rows as u64;
            let mut crng = derive_rng(self.config.seed, nonce, w_idx as u64, SALT_COMBINE);
            let mut accepted = None;
            for attempt in 0..MAX_COEFFICIENT_RETRIES {
                let coeff_rows: Vec<Vec<u64>> = (0..s)
                    .map(|_| (0..cols).map(|_| crng.gen_range(0..self.config.q)).collect())
                    .collect();
                let mut theta_rows = Vec::with_capacity(s);
                for (row, coeffs) in y.entries.iter().zip(&coeff_rows) {
                    let mut acc = vec![0u64; self.config.l];
                    for ((_, pkt), &c) in row.iter().zip(coeffs) {
                        if c == 0 {
                            continue;
                        }
                        for (a, &v) in acc.iter_mut().zip(&pkt.theta) {
                            *a = self.field.add(a, &self.field.mul(&c, &v));
                        }
                    }
                    theta_rows.push(acc);
                }
                let mat = Matrix::from_rows(theta_rows)?;
                if rank(&self.field, &mat) == s {
                    self.coefficient_retries += attempt as u64;
                    accepted = Some((mat, coeff_rows));
                    break;
                }
            }
            let Some((new_thetas, coeff_rows)) = accepted else {
                return Err(Error::RetriesExhausted(MAX_COEFFICIENT_RETRIES));
            };
            let payloads = match &self.ext {
                Some(ctx) => {
                    let mut vals = Vec::with_capacity(s);
                    for (row, coeffs) in y.entries.iter().zip(&coeff_rows) {
                        let mut acc = ctx.zero_elem();
                        for ((_, pkt), &c) in row.iter().zip(coeffs) {
                            let payload = pkt.payload.as_ref().ok_or_else(|| {
                                Error::InvalidParams(
                                    "payload missing in full-payload mode".into(),
                                )
                            })?;
                            acc = ctx.ext_add(&acc, &ctx.scalar_mul(c, payload)?)?;
                        }
                        vals.push(acc);
                    }
                    Some(vals)
                }
                None => None,
            };
            self.nodes[f] =
                NodeState { thetas: new_thetas, payloads, erased_mask: vec![false; s] };
        }
        self.rounds_run += 1;
        Ok(())
    }

    /// Mark (1−ρ)S uniformly chosen packets of `node` as erased.
    pub fn erase_random(&mut self, node: usize, nonce: u64) -> Result<()> {
        let s = self.config.subpacketization();
        let count = self.config.erased_count();
        let st = self.nodes.get_mut(node).ok_or(Error::IndexOutOfRange(node))?;
        let mut rng = derive_rng(self.config.seed, nonce, node as u64, SALT_ERASE);
        st.erased_mask = vec![false; s];
        for i in rand::seq::index::sample(&mut rng, s, count) {
            st.erased_mask[i] = true;
        }
        Ok(())
    }

    fn stack_unerased(&self, nodes: &[usize]) -> Result<(Matrix<u64>, Vec<(usize, usize)>)> {
        let s = self.config.subpacketization();
        let mut stacked = Matrix::empty(self.config.l);
        let mut origin = Vec::new();
        for &i in nodes {
            let st = self.nodes.get(i).ok_or(Error::IndexOutOfRange(i))?;
            for p in 0..s {
                if st.erased_mask[p] {
                    continue;
                }
                stacked.push_row(st.thetas.row(p))?;
                origin.push((i, p));
            }
        }
        Ok((stacked, origin))
    }

    /// dim of the span of the given nodes' (unerased) evaluation points.
    /// Repeated indices are allowed and contribute nothing extra.
    pub fn subset_dimension(&self, nodes: &[usize]) -> Result<usize> {
        let (stacked, _) = self.stack_unerased(nodes)?;
        Ok(rank(&self.field, &stacked))
    }

    /// Data-collector read from k nodes. Fails with the achieved dimension
    /// when the span falls short of ξP*; otherwise, in full-payload mode,
    /// interpolates the file polynomial back out of ξP* independent
    /// (point, evaluation) pairs.
    pub fn reconstruct(&self, dc_nodes: &[usize]) -> Result<Reconstruction> {
        if dc_nodes.len() != self.config.params.k {
            return Err(Error::InvalidParams(format!(
                "data collector must contact exactly {} nodes, got {}",
                self.config.params.k,
                dc_nodes.len()
            )));
        }
        let (stacked, origin) = self.stack_unerased(dc_nodes)?;
        let independent = independent_rows(&self.field, &stacked);
        let target = self.config.dimension_target() as usize;
        if independent.len() < target {
            return Err(Error::DimensionDeficit {
                achieved: independent.len(),
                required: target,
            });
        }
        let packets = match &self.ext {
            Some(ctx) => {
                let mut points = Vec::with_capacity(target);
                let mut values = Vec::with_capacity(target);
                for &row in independent.iter().take(target) {
                    points.push(ctx.from_coeffs(stacked.row(row).to_vec())?);
                    let (node, pkt) = origin[row];
                    let vals = self.nodes[node].payloads.as_ref().ok_or_else(|| {
                        Error::InvalidParams("payload missing in full-payload mode".into())
                    })?;
                    values.push(vals[pkt].clone());
                }
                Some(interpolate(ctx, &points, &values)?.coeffs)
            }
            None => None,
        };
        Ok(Reconstruction { dim: independent.len(), packets })
    }

    /// The nodes' subspaces as a family, for the independence checks.
    pub fn node_family(&self) -> Result<NodeSubspaceFamily> {
        let spaces = self
            .nodes
            .iter()
            .map(|st| Subspace::new(&self.field, &st.thetas))
            .collect();
        NodeSubspaceFamily::new(self.field.clone(), spaces)
    }
}

fn ensure_distinct(xs: &[usize], what: &str) -> Result<()> {
    let mut seen = xs.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != xs.len() {
        return Err(Error::InvalidParams(format!("{what} contain a repeated index")));
    }
    Ok(())
}

fn combine_payload(
    ctx: &ExtFieldContext,
    vals: &[ExtFieldElement],
    idx: &[usize],
    coeffs: &[u64],
) -> Result<ExtFieldElement> {
    let mut acc = ctx.zero_elem();
    for (&i, &c) in idx.iter().zip(coeffs) {
        acc = ctx.ext_add(&acc, &ctx.scalar_mul(c, &vals[i])?)?;
    }
    Ok(acc)
}

fn binom_big(n: usize, m: usize) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    let m = m.min(n - m);
    let mut acc = BigUint::one();
    for i in 0..m {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Probability that the stacked coefficient matrix of two helper
/// transmissions toward consecutive newcomer groups has full column rank:
/// both draws sample r+e of the W = d−(j̄−1)r stored packets, and full rank
/// is exactly the event that the two sample sets share at most 2e packets.
pub fn t_fullrank_probability(d: usize, r: usize, j_bar: usize, e: usize) -> Result<BigRational> {
    if r == 0 {
        return Ok(BigRational::one());
    }
    if j_bar == 0 || j_bar * r + e > d {
        return Err(Error::InvalidParams(format!(
            "need j_bar >= 1 and j_bar*r + e <= d, got d={d} r={r} j_bar={j_bar} e={e}"
        )));
    }
    let w = d - (j_bar - 1) * r;
    let mut num = BigUint::zero();
    for i in 0..=(2 * e).min(r + e) {
        num += binom_big(r + e, i) * binom_big(w - (r + e), r + e - i);
    }
    let den = binom_big(w, r + e);
    Ok(BigRational::new(num.into(), den.into()))
}

/// Monte Carlo companion of [`t_fullrank_probability`]: draws the two sample
/// sets and counts how often they overlap in at most 2e packets.
pub fn t_fullrank_mc(
    d: usize,
    r: usize,
    j_bar: usize,
    e: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if r == 0 {
        return Ok(1.0);
    }
    if j_bar == 0 || j_bar * r + e > d || samples == 0 {
        return Err(Error::InvalidParams(format!(
            "need j_bar >= 1, j_bar*r + e <= d and samples > 0, got d={d} r={r} j_bar={j_bar} e={e} samples={samples}"
        )));
    }
    let w = d - (j_bar - 1) * r;
    let mut rng = ChaCha20Rng::seed_from_u64(mix64(seed));
    let mut hits = 0usize;
    let mut in_first = vec![false; w];
    for _ in 0..samples {
        in_first.iter_mut().for_each(|x| *x = false);
        for i in rand::seq::index::sample(&mut rng, w, r + e) {
            in_first[i] = true;
        }
        let overlap = rand::seq::index::sample(&mut rng, w, r + e)
            .iter()
            .filter(|&i| in_first[i])
            .count();
        if overlap <= 2 * e {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}

/// Outcome of one seeded experiment run. Serialization order is the
/// declaration order below; the wall-clock field is excluded so identical
/// seeds serialize identically.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub j_bar: usize,
    pub e: usize,
    pub xi: usize,
    pub q: u64,
    pub l: usize,
    pub rho: String,
    pub mode: String,
    pub seed: u64,
    pub rounds_run: usize,
    pub trials: usize,
    pub dc_samples: usize,
    pub pstar: u64,
    pub min_dim: usize,
    pub avg_dim: f64,
    pub target_met: bool,
    pub l1_pass_rate: Option<f64>,
    pub l2_pass_rate: Option<f64>,
    pub l3_pass_rate: Option<f64>,
    pub repeated_helper_rows: u64,
    pub coefficient_retries: u64,
    #[serde(skip)]
    pub wall_ms: u128,
}

fn rate(pass: usize, total: usize) -> Option<f64> {
    (total > 0).then(|| pass as f64 / total as f64)
}

/// Run init + `rounds` uniformly sampled repair rounds + `trials` random
/// k-subset dimension measurements. `dc_samples` additionally measures that
/// many k-subsets after every round and turns on the per-round L1/L2/L3
/// condition sampling (0 keeps the harness at the cheap end-of-run protocol).
/// Partial repair (with a fresh uniform erasure pattern per failed node) is
/// used whenever ρ > 0. Dimension shortfalls are recorded, not raised.
pub fn run_experiment(
    config: &CodeConfig,
    rounds: usize,
    trials: usize,
    dc_samples: usize,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let file;
    let packets: &[ExtFieldElement] = match config.mode {
        SimMode::DimensionTracking => &[],
        SimMode::FullPayload => {
            let ctx = make_ext_field(config.q, config.l)?;
            let mut rng = derive_rng(config.seed, 0, 0, SALT_FILE);
            file = (0..config.dimension_target())
                .map(|_| ctx.random_elem(&mut rng))
                .collect::<Vec<_>>();
            &file
        }
    };
    let mut sys = StorageSystem::init(config.clone(), packets)?;
    let p = &config.params;
    let (n, k, d, r) = (p.n, p.k, p.d, p.r);
    let partial = p.rho > BigRational::zero();
    let mut dims: Vec<usize> = Vec::new();
    let (mut l1_pass, mut l1_total) = (0usize, 0usize);
    let (mut l2_pass, mut l2_total) = (0usize, 0usize);
    let (mut l3_pass, mut l3_total) = (0usize, 0usize);
    let mut prev_transmissions: BTreeMap<usize, Subspace> = BTreeMap::new();
    for round in 0..rounds {
        let mut rng = derive_rng(config.seed, round as u64, 0, SALT_ROUND);
        let failed = rand::seq::index::sample(&mut rng, n, r).into_vec();
        let alive: Vec<usize> = (0..n).filter(|i| !failed.contains(i)).collect();
        let helpers: Vec<usize> = rand::seq::index::sample(&mut rng, alive.len(), d)
            .iter()
            .map(|i| alive[i])
            .collect();
        if partial {
            let nonce = sys.rounds_run();
            for &f in &failed {
                sys.erase_random(f, nonce)?;
            }
            sys.repair_partial(&failed, &helpers)?;
        } else {
            sys.repair_full(&failed, &helpers)?;
        }
        if dc_samples > 0 {
            for _ in 0..dc_samples {
                let sub = rand::seq::index::sample(&mut rng, n, k).into_vec();
                dims.push(sys.subset_dimension(&sub)?);
            }
            let family = sys.node_family()?;
            let l1 = family.check_l1(
                config.j_bar,
                r,
                mix64(config.seed ^ round as u64 ^ SALT_CHECK),
            )?;
            l1_total += 1;
            l1_pass += usize::from(l1.holds);
            let field = PrimeFieldContext::new(config.q)?;
            let cur: BTreeMap<usize, Subspace> = sys
                .last_transmissions()
                .iter()
                .map(|(&h, m)| (h, Subspace::new(&field, m)))
                .collect();
            for (h, sub) in &cur {
                if let Some(prev) = prev_transmissions.get(h) {
                    l2_total += 1;
                    l2_pass += usize::from(crate::subspace::check_l2(&field, prev, sub)?);
                }
            }
            prev_transmissions = cur;
            let groups: Vec<Vec<usize>> = (0..config.j_bar)
                .map(|b| helpers[b * r..(b + 1) * r].to_vec())
                .collect();
            let bound = config.transmit_count();
            for &a in &failed {
                l3_total += 1;
                l3_pass += usize::from(family.check_l3(a, &groups, bound)?);
            }
        }
    }
    let mut trial_rng = derive_rng(config.seed, 0, 0, SALT_DC);
    for _ in 0..trials {
        let sub = rand::seq::index::sample(&mut trial_rng, n, k).into_vec();
        dims.push(sys.subset_dimension(&sub)?);
    }
    let min_dim = dims.iter().copied().min().unwrap_or(0);
    let avg_dim = if dims.is_empty() {
        0.0
    } else {
        dims.iter().sum::<usize>() as f64 / dims.len() as f64
    };
    Ok(ExperimentReport {
        n,
        k,
        d,
        r,
        j_bar: config.j_bar,
        e: config.e,
        xi: config.xi,
        q: config.q,
        l: config.l,
        rho: p.rho.to_string(),
        mode: config.mode.to_string(),
        seed: config.seed,
        rounds_run: rounds,
        trials,
        dc_samples,
        pstar: config.dimension_target(),
        min_dim,
        avg_dim,
        target_met: !dims.is_empty() && min_dim as u64 >= config.dimension_target(),
        l1_pass_rate: rate(l1_pass, l1_total),
        l2_pass_rate: rate(l2_pass, l2_total),
        l3_pass_rate: rate(l3_pass, l3_total),
        repeated_helper_rows: sys.repeated_helper_rows,
        coefficient_retries: sys.coefficient_retries,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// Largest B with 256^B <= q^l: how many payload bytes one F_{q^l} element
/// carries under base-q digit encoding.
pub fn block_bytes(q: u64, l: usize) -> usize {
    let cap = BigUint::from(q).pow(l as u32);
    let mut b = 0usize;
    let mut pow = BigUint::one();
    loop {
        let next = &pow * BigUint::from(256u32);
        if next <= cap {
            pow = next;
            b += 1;
        } else {
            return b;
        }
    }
}

/// Smallest extension degree l such that `packet_count` elements of F_{q^l}
/// hold `data_len` bytes plus the 8-byte length prefix.
pub fn minimal_extension_degree(q: u64, packet_count: usize, data_len: usize) -> usize {
    let needed = data_len + 8;
    let mut l = 1usize;
    loop {
        if packet_count * block_bytes(q, l) >= needed {
            return l;
        }
        l += 1;
    }
}

/// Encode bytes as exactly `count` coefficient vectors (base-q digits, little
/// endian), prefixed with the payload length and zero padded.
pub fn bytes_to_packets(q: u64, l: usize, data: &[u8], count: usize) -> Result<Vec<Vec<u64>>> {
    let b = block_bytes(q, l);
    if b == 0 {
        return Err(Error::InvalidParams(format!(
            "q^l = {q}^{l} is too small to hold a byte"
        )));
    }
    let capacity = count * b;
    if data.len() + 8 > capacity {
        return Err(Error::PayloadTooLarge {
            capacity: capacity.saturating_sub(8),
            needed: data.len(),
        });
    }
    let mut buf = Vec::with_capacity(capacity);
    buf.extend_from_slice(&(data.len() as u64).to_le_bytes());
    buf.extend_from_slice(data);
    buf.resize(capacity, 0);
    let big_q = BigUint::from(q);
    let mut out = Vec::with_capacity(count);
    for chunk in buf.chunks(b) {
        let mut v = BigUint::from_bytes_le(chunk);
        let mut digits = vec![0u64; l];
        for digit in digits.iter_mut() {
            let rem = &v % &big_q;
            v /= &big_q;
            *digit = rem.to_u64().expect("digit below q");
        }
        debug_assert!(v.is_zero(), "chunk exceeds q^l");
        out.push(digits);
    }
    Ok(out)
}

/// Inverse of [`bytes_to_packets`].
pub fn packets_to_bytes(q: u64, l: usize, packets: &[Vec<u64>]) -> Result<Vec<u8>> {
    let b = block_bytes(q, l);
    let big_q = BigUint::from(q);
    let mut buf = Vec::with_capacity(packets.len() * b);
    for digits in packets {
        if digits.len() != l {
            return Err(Error::ContextMismatch { expected: l, got: digits.len() });
        }
        let mut v = BigUint::zero();
        for &digit in digits.iter().rev() {
            v = v * &big_q + BigUint::from(digit);
        }
        let mut bytes = v.to_bytes_le();
        if bytes.len() > b {
            return Err(Error::InvalidParams(
                "packet value exceeds the byte-block range".into(),
            ));
        }
        bytes.resize(b, 0);
        buf.extend_from_slice(&bytes);
    }
    if buf.len() < 8 {
        return Err(Error::InvalidParams("payload shorter than its length prefix".into()));
    }
    let len = u64::from_le_bytes(buf[..8].try_into().expect("read 8 bytes")) as usize;
    if len > buf.len() - 8 {
        return Err(Error::InvalidParams(format!(
            "length prefix {len} exceeds decoded payload {}",
            buf.len() - 8
        )));
    }
    Ok(buf[8..8 + len].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;
    use proptest::prelude::*;

    fn params(n: usize, k: usize, d: usize, r: usize, rho: BigRational) -> SystemParams {
        SystemParams::new(n, k, d, r, rho, BigRational::one()).unwrap()
    }

    fn table_config(mode: SimMode, seed: u64) -> CodeConfig {
        // n=9, k=6, d=6, r=3, j_bar=2: W=3, S=3, target 18.
        let p = params(9, 6, 6, 3, BigRational::zero());
        CodeConfig::new(p, 2, 0, 1, 1021, 18, mode, seed).unwrap()
    }

    fn partial_config(seed: u64) -> CodeConfig {
        // rho=1/2, xi=2: S=6, three packets erased per failure, target 36.
        // n=10 keeps j_bar*r = 6 below n-r = 7: with n=9 any six non-failed
        // nodes would span the whole ambient space (L1 additivity), which
        // inflates the L3 conditional dimension to S and voids the bound.
        let p = params(10, 6, 6, 3, ratio(1, 2));
        CodeConfig::new(p, 2, 0, 2, 1021, 42, SimMode::DimensionTracking, seed).unwrap()
    }

    #[test]
    fn config_validation() {
        let p = params(9, 6, 6, 3, BigRational::zero());
        assert!(CodeConfig::new(p.clone(), 2, 0, 1, 1021, 18, SimMode::DimensionTracking, 0).is_ok());
        // j_bar out of range
        assert!(CodeConfig::new(p.clone(), 3, 0, 1, 1021, 18, SimMode::DimensionTracking, 0).is_err());
        // e too large: d - j_bar*r = 0
        assert!(CodeConfig::new(p.clone(), 2, 1, 1, 1021, 18, SimMode::DimensionTracking, 0).is_err());
        // l below (n-r)*S
        assert!(CodeConfig::new(p.clone(), 2, 0, 1, 1021, 17, SimMode::DimensionTracking, 0).is_err());
        // q composite
        assert!(CodeConfig::new(p, 2, 0, 1, 1000, 18, SimMode::DimensionTracking, 0).is_err());
        // r does not divide k
        let bad = params(6, 3, 3, 2, BigRational::zero());
        assert!(CodeConfig::new(bad, 1, 0, 1, 29, 12, SimMode::DimensionTracking, 0).is_err());
        // rho*xi not an integer
        let half = params(9, 6, 6, 3, ratio(1, 2));
        assert!(CodeConfig::new(half, 2, 0, 1, 1021, 18, SimMode::DimensionTracking, 0).is_err());
    }

    #[test]
    fn derived_counts() {
        let c = partial_config(0);
        assert_eq!(c.window(), 3);
        assert_eq!(c.subpacketization(), 6);
        assert_eq!(c.transmit_count(), 3);
        assert_eq!(c.surviving_per_slot(), 3);
        assert_eq!(c.sample_count(), 3);
        assert_eq!(c.erased_count(), 3);
        assert_eq!(c.dimension_target(), 36);
        let full = table_config(SimMode::DimensionTracking, 0);
        assert_eq!(full.subpacketization(), 3);
        assert_eq!(full.transmit_count(), 3);
        assert_eq!(full.dimension_target(), 18);
    }

    #[test]
    fn init_assigns_basis_blocks_and_meets_target() {
        let sys = StorageSystem::init(table_config(SimMode::DimensionTracking, 7), &[]).unwrap();
        assert_eq!(sys.nodes.len(), 9);
        for node in 0..6 {
            let st = &sys.nodes[node];
            assert_eq!(st.thetas.rows, 3);
            for i in 0..3 {
                let row = st.thetas.row(i);
                assert!(row.iter().enumerate().all(|(j, &v)| {
                    if j == node * 3 + i { v == 1 } else { v == 0 }
                }));
            }
        }
        // every node full rank, and the whole system spans at least the target
        for node in &sys.nodes {
            assert_eq!(rank(&PrimeFieldContext::new(1021).unwrap(), &node.thetas), 3);
        }
        let all: Vec<usize> = (0..9).collect();
        assert!(sys.subset_dimension(&all).unwrap() >= 18);
        assert_eq!(sys.rounds_run(), 1);
    }

    #[test]
    fn helper_transmit_counts_deterministic_nonzero() {
        let sys = StorageSystem::init(table_config(SimMode::DimensionTracking, 3), &[]).unwrap();
        let a = sys.helper_transmit(0, 5).unwrap();
        let b = sys.helper_transmit(0, 5).unwrap();
        assert_eq!(a.len(), 3);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.theta, y.theta);
            assert!(x.theta.iter().any(|&v| v != 0));
        }
        let c = sys.helper_transmit(0, 6).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.theta != y.theta));
    }

    fn dummy_packet(tag: u64, l: usize) -> Packet {
        let mut theta = vec![0u64; l];
        theta[(tag as usize) % l] = 1 + tag % 7;
        Packet { theta, payload: None }
    }

    fn dummy_slots(d: usize, per_slot: usize, l: usize) -> Vec<Vec<Packet>> {
        (0..d)
            .map(|s| (0..per_slot).map(|m| dummy_packet((s * per_slot + m) as u64, l)).collect())
            .collect()
    }

    #[test]
    fn y_geometry_single_block_uses_each_packet_once() {
        // j_bar=1: Y is d x r and every (slot, packet) pair appears exactly once
        let p = params(9, 6, 6, 3, BigRational::zero());
        let c = CodeConfig::new(p, 1, 0, 1, 29, 36, SimMode::DimensionTracking, 0).unwrap();
        let y = assemble_y(&dummy_slots(6, 3, 36), &c).unwrap();
        assert_eq!(y.entries.len(), 6);
        assert!(y.entries.iter().all(|row| row.len() == 3));
        assert_eq!(y.repeated_rows, 0);
        let mut seen = std::collections::BTreeSet::new();
        for (ri, row) in y.entries.iter().enumerate() {
            for (slot, pkt) in row {
                let marker = pkt.theta.iter().position(|&v| v != 0).unwrap();
                assert!(seen.insert((*slot, marker)), "row {ri} repeats a packet");
            }
        }
        assert_eq!(seen.len(), 18);
    }

    #[test]
    fn y_geometry_two_blocks_distinct_helpers() {
        // d=6, r=3, j_bar=2: windows {0..2} and {3..5}, six distinct slots per row
        let c = table_config(SimMode::DimensionTracking, 0);
        let y = assemble_y(&dummy_slots(6, 3, 18), &c).unwrap();
        assert_eq!(y.entries.len(), 3);
        for row in &y.entries {
            assert_eq!(row.len(), 6);
            let mut slots: Vec<usize> = row.iter().map(|(s, _)| *s).collect();
            slots.sort_unstable();
            slots.dedup();
            assert_eq!(slots.len(), 6);
        }
        assert!(y.rotation_applied);
    }

    #[test]
    fn y_geometry_overlapping_windows_repeat_packets_across_rows() {
        // d=10, r=2, j_bar=2: 4x8 transposed layout = 8 rows of 4 entries,
        // 32 references over 20 distinct packets
        let p = params(14, 10, 10, 2, BigRational::zero());
        let c = CodeConfig::new(p, 2, 0, 1, 29, 96, SimMode::DimensionTracking, 0).unwrap();
        let y = assemble_y(&dummy_slots(10, 2, 96), &c).unwrap();
        assert_eq!(y.entries.len(), 8);
        assert!(y.entries.iter().all(|row| row.len() == 4));
        assert_eq!(y.repeated_rows, 0);
        let mut refs = std::collections::BTreeSet::new();
        let mut total = 0;
        for row in &y.entries {
            for (slot, pkt) in row {
                let marker = pkt.theta.iter().position(|&v| v != 0).unwrap();
                refs.insert((*slot, marker));
                total += 1;
            }
        }
        assert_eq!(total, 32);
        assert_eq!(refs.len(), 20);
    }

    #[test]
    fn y_geometry_forced_repeats_are_counted_not_fatal() {
        // d=11, r=2, j_bar=4: W=5, floor(W/r)=2 < j_bar and r does not divide
        // W, so some rows must repeat a helper slot
        assert!(!rows_distinct(5, 2, 4));
        let p = params(16, 8, 11, 2, BigRational::zero());
        let c = CodeConfig::new(p, 4, 0, 1, 29, 70, SimMode::DimensionTracking, 0).unwrap();
        let y = assemble_y(&dummy_slots(11, 2, 70), &c).unwrap();
        assert!(y.repeated_rows > 0);
    }

    #[test]
    fn repair_full_keeps_node_rank_and_system_dimension() {
        let mut sys =
            StorageSystem::init(table_config(SimMode::DimensionTracking, 11), &[]).unwrap();
        sys.repair_full(&[0, 4, 8], &[1, 2, 3, 5, 6, 7]).unwrap();
        let f = PrimeFieldContext::new(1021).unwrap();
        for &node in &[0usize, 4, 8] {
            assert_eq!(rank(&f, &sys.nodes[node].thetas), 3);
        }
        for sub in [[0, 1, 2, 3, 4, 5], [3, 4, 5, 6, 7, 8], [0, 2, 4, 6, 8, 1]] {
            assert!(sys.subset_dimension(&sub).unwrap() >= 18);
        }
    }

    #[test]
    fn repair_validation_errors() {
        let mut sys =
            StorageSystem::init(table_config(SimMode::DimensionTracking, 1), &[]).unwrap();
        // overlap between failed and helpers
        assert!(sys.repair_full(&[0, 1, 2], &[2, 3, 4, 5, 6, 7]).is_err());
        // wrong cardinalities
        assert!(sys.repair_full(&[0, 1], &[2, 3, 4, 5, 6, 7]).is_err());
        assert!(sys.repair_full(&[0, 1, 2], &[3, 4, 5, 6, 7]).is_err());
        // repeated helper rejected outside the injection entry point
        assert!(sys.repair_full(&[0, 1, 2], &[3, 3, 4, 5, 6, 7]).is_err());
        // partial repair without matching erasures
        assert!(matches!(
            sys.repair_partial(&[0, 1, 2], &[3, 4, 5, 6, 7, 8]),
            Err(Error::ErasureMismatch { .. })
        ));
    }

    #[test]
    fn partial_repair_accounting() {
        let mut sys = StorageSystem::init(partial_config(5), &[]).unwrap();
        let f = PrimeFieldContext::new(1021).unwrap();
        for node in &sys.nodes {
            assert_eq!(node.thetas.rows, 6);
            assert_eq!(rank(&f, &node.thetas), 6);
        }
        let failed = [0usize, 4, 8];
        let helpers = [1usize, 2, 3, 5, 6, 7];
        for &x in &failed {
            sys.erase_random(x, 0).unwrap();
            let erased = sys.nodes[x].erased_mask.iter().filter(|&&e| e).count();
            assert_eq!(erased, 3);
            // a DC that reads mid-failure sees only surviving packets
            assert_eq!(sys.subset_dimension(&[x]).unwrap(), 3);
        }
        // each helper puts exactly (1-rho)*xi*r = 3 packets on the air
        for &h in &helpers {
            assert_eq!(sys.helper_transmit(h, sys.rounds_run()).unwrap().len(), 3);
        }
        sys.repair_partial(&failed, &helpers).unwrap();
        for &x in &failed {
            assert_eq!(rank(&f, &sys.nodes[x].thetas), 6);
            assert!(sys.nodes[x].erased_mask.iter().all(|&e| !e));
        }
        assert!(sys.subset_dimension(&[0, 1, 2, 3, 4, 5]).unwrap() >= 36);
        // L3: fresh content overlaps the last helper group in at most
        // (1-rho)*r*xi = 3 dimensions beyond the earlier groups
        let family = sys.node_family().unwrap();
        let groups = vec![vec![1usize, 2, 3], vec![5usize, 6, 7]];
        for &x in &failed {
            assert!(family.check_l3(x, &groups, 3).unwrap());
        }
    }

    #[test]
    fn full_payload_roundtrip_and_shadow_exactness() {
        let config = table_config(SimMode::FullPayload, 42);
        let ctx = make_ext_field(1021, 18).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(99);
        let file: Vec<ExtFieldElement> =
            (0..18).map(|_| ctx.random_elem(&mut rng)).collect();
        let mut sys = StorageSystem::init(config, &file).unwrap();
        sys.repair_full(&[2, 5, 7], &[0, 1, 3, 4, 6, 8]).unwrap();
        // payload = f(theta) must survive recombination exactly
        let poly = sys.file_polynomial().unwrap().clone();
        for node in [2usize, 5, 7] {
            let st = &sys.nodes[node];
            for i in 0..3 {
                let point = ctx.from_coeffs(st.thetas.row(i).to_vec()).unwrap();
                let expect = evaluate(&ctx, &poly, &point).unwrap();
                assert_eq!(st.payloads.as_ref().unwrap()[i], expect);
            }
        }
        let got = sys.reconstruct(&[0, 2, 4, 5, 7, 8]).unwrap();
        assert!(got.dim >= 18);
        assert_eq!(got.packets.unwrap(), file);
        // a duplicated node cannot reach the target: dim collapses to S
        let err = sys.reconstruct(&[0, 0, 0, 0, 0, 0]).unwrap_err();
        match err {
            Error::DimensionDeficit { achieved, required } => {
                assert_eq!(achieved, 3);
                assert_eq!(required, 18);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn t_fullrank_matches_frozen_values() {
        // d=10, r=2, j_bar=1, e=0: (7/9)(8/10)
        assert_eq!(t_fullrank_probability(10, 2, 1, 0).unwrap(), ratio(28, 45));
        // e >= r collapses to certainty, exactly
        assert_eq!(t_fullrank_probability(10, 2, 1, 2).unwrap(), BigRational::one());
        assert_eq!(t_fullrank_probability(17, 5, 1, 6).unwrap(), BigRational::one());
        // degenerate r
        assert_eq!(t_fullrank_probability(10, 0, 1, 0).unwrap(), BigRational::one());
        // inadmissible surplus
        assert!(t_fullrank_probability(10, 2, 5, 1).is_err());
    }

    #[test]
    fn t_fullrank_e0_product_form_agrees() {
        for (d, r, j_bar) in [(10, 2, 1), (10, 2, 3), (17, 5, 2), (12, 4, 2), (6, 3, 1)] {
            let w = d - (j_bar - 1) * r;
            let mut prod = BigRational::one();
            for i in 1..=r {
                prod *= ratio((w - 2 * r + i) as i64, (w - r + i) as i64);
            }
            assert_eq!(t_fullrank_probability(d, r, j_bar, 0).unwrap(), prod, "d={d} r={r}");
        }
    }

    #[test]
    fn t_fullrank_mc_tracks_exact_value() {
        let exact = t_fullrank_probability(10, 2, 1, 1).unwrap();
        let exact = exact.numer().to_f64().unwrap() / exact.denom().to_f64().unwrap();
        let mc = t_fullrank_mc(10, 2, 1, 1, 20_000, 77).unwrap();
        assert!((mc - exact).abs() < 0.02, "mc={mc} exact={exact}");
    }

    #[test]
    fn experiment_zero_rounds_meets_target_and_is_deterministic() {
        let c = table_config(SimMode::DimensionTracking, 123);
        let a = run_experiment(&c, 0, 10, 0).unwrap();
        assert_eq!(a.min_dim, 18);
        assert!(a.target_met);
        assert!(a.min_dim as f64 <= a.avg_dim);
        assert_eq!(a.pstar, 18);
        let b = run_experiment(&c, 0, 10, 0).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn experiment_rounds_hold_dimension_small_case() {
        let c = table_config(SimMode::DimensionTracking, 9);
        let rep = run_experiment(&c, 20, 25, 0).unwrap();
        assert!(rep.target_met, "min_dim {} below 18", rep.min_dim);
        assert_eq!(rep.repeated_helper_rows, 0);
    }

    #[test]
    fn experiment_partial_mode_runs_checks() {
        // n=14 leaves enough nodes outside each sampled (A, R_1, R_2) triple
        // that survivor correlations cannot explain A's content away; smaller
        // n shows sporadic L3 excesses (see the note on partial_config)
        let p = params(14, 6, 6, 3, ratio(1, 2));
        let c = CodeConfig::new(p, 2, 0, 2, 1021, 66, SimMode::DimensionTracking, 0).unwrap();
        let rep = run_experiment(&c, 4, 8, 1).unwrap();
        assert!(rep.min_dim as u64 >= rep.pstar, "min {} < {}", rep.min_dim, rep.pstar);
        assert_eq!(rep.l3_pass_rate, Some(1.0));
        assert!(rep.l1_pass_rate.is_some());
    }

    #[test]
    fn codec_roundtrip_and_limits() {
        let q = 1021u64;
        let l = 10usize;
        // 10 * log2(1021) ~ 99.9 bits -> 12 bytes per element
        assert_eq!(block_bytes(q, l), 12);
        let data = b"the quick brown fox jumps over the lazy dog";
        let packets = bytes_to_packets(q, l, data, 5).unwrap();
        assert_eq!(packets.len(), 5);
        assert_eq!(packets_to_bytes(q, l, &packets).unwrap(), data);
        // zero-length payload
        let packets = bytes_to_packets(q, l, b"", 1).unwrap();
        assert_eq!(packets_to_bytes(q, l, &packets).unwrap(), b"");
        // over capacity: 5 packets hold 52 payload bytes
        assert!(matches!(
            bytes_to_packets(q, l, &[0u8; 53], 5),
            Err(Error::PayloadTooLarge { capacity: 52, needed: 53 })
        ));
        assert_eq!(minimal_extension_degree(q, 18, 1024), 47);
    }

    proptest! {
        #[test]
        fn codec_roundtrip_property(data in proptest::collection::vec(any::<u8>(), 0..200), q in prop_oneof![Just(13u64), Just(257u64), Just(1021u64)]) {
            let l = 8usize;
            let b = block_bytes(q, l);
            let count = (data.len() + 8).div_ceil(b);
            let packets = bytes_to_packets(q, l, &data, count).unwrap();
            prop_assert!(packets.iter().all(|p| p.iter().all(|&d| d < q)));
            prop_assert_eq!(packets_to_bytes(q, l, &packets).unwrap(), data);
        }
    }
}

