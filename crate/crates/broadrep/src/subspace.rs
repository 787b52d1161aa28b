//! Node contents viewed as subspaces of F_q^l.
//!
//! A node that stores packets `f(θ_1), …, f(θ_S)` of a linearized
//! polynomial is fully described, up to the file itself, by the row space
//! of its θ-vectors. This module provides that view: dimensions, sums,
//! conditional intersections, and the three conditions (L1, L2, L3) the
//! repair scheme needs for reconstruction to go through. Everything is
//! exact rank arithmetic.

use crate::error::{Error, Result};
use crate::field::PrimeFieldContext;
use crate::linalg::{intersection_basis, rref, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// A subspace of F_q^l, held as a reduced basis (RREF, zero rows dropped),
/// so equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix<u64>,
}

impl Subspace {
    /// The zero subspace of F_q^ambient_dim.
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Matrix::empty(ambient_dim) }
    }

    /// Span of the given rows. The basis is reduced on construction;
    /// entries are brought into canonical residues first.
    pub fn new(field: &PrimeFieldContext, rows: &Matrix<u64>) -> Self {
        let canon = Matrix::from_fn(rows.rows, rows.cols, |i, j| field.reduce(*rows.get(i, j)));
        let (reduced, _) = rref(field, &canon);
        Self { ambient_dim: rows.cols, basis: reduced }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix<u64> {
        &self.basis
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// W_1 + W_2.
    pub fn sum(&self, field: &PrimeFieldContext, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self.basis.stack(&other.basis)?;
        Ok(Subspace::new(field, &stacked))
    }

    /// W_1 ∩ W_2.
    pub fn intersect(&self, field: &PrimeFieldContext, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let raw = intersection_basis(field, &self.basis, &other.basis)?;
        let mut with_ambient = raw;
        if with_ambient.rows == 0 {
            with_ambient = Matrix::empty(self.ambient_dim);
        }
        Ok(Subspace::new(field, &with_ambient))
    }

    pub fn contains(&self, field: &PrimeFieldContext, other: &Subspace) -> Result<bool> {
        Ok(self.sum(field, other)?.dim() == self.dim())
    }
}

/// dim(∩_i W_i | W_0): what is left of the joint intersection once the
/// conditioning space W_0 is quotiented away. Computed as
/// dim(∩_i (W_i + W_0)) − dim((∩_i (W_i + W_0)) ∩ W_0) by folding pairwise
/// intersections; every step is exact, so the fold is exact. With W_0 = 0
/// this is the plain intersection dimension.
pub fn conditional_dim(
    field: &PrimeFieldContext,
    sets: &[&Subspace],
    w0: &Subspace,
) -> Result<usize> {
    let Some(first) = sets.first() else {
        return Err(Error::InvalidParams(
            "conditional_dim needs at least one subspace".into(),
        ));
    };
    let mut acc = first.sum(field, w0)?;
    for s in &sets[1..] {
        acc = acc.intersect(field, &s.sum(field, w0)?)?;
    }
    let overlap = acc.intersect(field, w0)?;
    Ok(acc.dim() - overlap.dim())
}

/// Outcome of the storage-additivity check (condition L1).
#[derive(Debug, Clone)]
pub struct L1Report {
    pub holds: bool,
    /// A node set of size j̄·r whose joint dimension falls short of the
    /// sum of the individual dimensions, when one was found.
    pub witness: Option<Vec<usize>>,
    /// Violations among probed sets of size j̄·r + 1. The repair argument
    /// quietly leans on additivity one node past the contract size; such
    /// violations are surfaced here but do not fail the check.
    pub extension_violations: usize,
    pub subsets_checked: usize,
    pub exhaustive: bool,
}

// Exhaustive subset enumeration is capped here; beyond it the check
// samples instead (experiment-grid sizes make C(n, j̄r) astronomically large).
const L1_EXHAUSTIVE_BUDGET: u128 = 100_000;
const L1_SAMPLE_COUNT: usize = 10_000;
const L1_EXTENSION_SAMPLE_COUNT: usize = 1_000;

fn binomial(n: usize, m: usize) -> u128 {
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut acc: u128 = 1;
    for i in 0..m {
        // acc * (n - i) is divisible by i + 1 at every step
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Lexicographic m-subsets of {0, …, n-1}.
pub(crate) fn combinations(n: usize, m: usize) -> Combinations {
    Combinations { n, m, next: (0..m).collect(), done: m > n }
}

pub(crate) struct Combinations {
    n: usize,
    m: usize,
    next: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.next.clone();
        // advance: bump the rightmost index that still has room
        let mut i = self.m;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.next[i] < self.n - (self.m - i) {
                self.next[i] += 1;
                for j in i + 1..self.m {
                    self.next[j] = self.next[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// The subspaces stored by the n nodes of a system, all in one ambient
/// space F_q^l.
#[derive(Debug, Clone)]
pub struct NodeSubspaceFamily {
    field: PrimeFieldContext,
    spaces: Vec<Subspace>,
}

impl NodeSubspaceFamily {
    pub fn new(field: PrimeFieldContext, spaces: Vec<Subspace>) -> Result<Self> {
        if let Some(first) = spaces.first() {
            if spaces.iter().any(|s| s.ambient_dim() != first.ambient_dim()) {
                return Err(Error::DimensionMismatch(
                    "family members disagree on the ambient dimension".into(),
                ));
            }
        }
        Ok(Self { field, spaces })
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn field(&self) -> &PrimeFieldContext {
        &self.field
    }

    pub fn node(&self, i: usize) -> Result<&Subspace> {
        self.spaces.get(i).ok_or(Error::IndexOutOfRange(i))
    }

    fn ambient_dim(&self) -> usize {
        self.spaces.first().map(|s| s.ambient_dim()).unwrap_or(0)
    }

    /// W_A = Σ_{i∈A} W_i as a subspace.
    pub fn sum_space(&self, a: &[usize]) -> Result<Subspace> {
        let mut stacked = Matrix::empty(self.ambient_dim());
        for &i in a {
            stacked = stacked.stack(self.node(i)?.basis())?;
        }
        Ok(Subspace::new(&self.field, &stacked))
    }

    /// dim(W_A): rank of the stacked bases. Empty A gives 0.
    pub fn dim_sum(&self, a: &[usize]) -> Result<usize> {
        Ok(self.sum_space(a)?.dim())
    }

    /// dim(∩_i W_{A_i} | W_{A_0}) where each set is given by node indices.
    pub fn conditional_intersection_dim(
        &self,
        sets: &[&[usize]],
        w0: &[usize],
    ) -> Result<usize> {
        let spaces: Vec<Subspace> =
            sets.iter().map(|s| self.sum_space(s)).collect::<Result<_>>()?;
        let refs: Vec<&Subspace> = spaces.iter().collect();
        conditional_dim(&self.field, &refs, &self.sum_space(w0)?)
    }

    fn is_additive(&self, subset: &[usize]) -> Result<bool> {
        let mut total = 0usize;
        for &i in subset {
            total += self.node(i)?.dim();
        }
        Ok(self.dim_sum(subset)? == total)
    }

    /// Condition L1: every set A of at most j̄·r nodes stores additively,
    /// dim(W_A) = Σ_{i∈A} dim(W_i). Additivity at size m implies it at
    /// every smaller size (drop a node from an additive set and equality
    /// is forced both ways), so only size-(j̄·r) sets are tested:
    /// exhaustively when the subset count fits the budget, by seeded
    /// sampling otherwise. Size-(j̄·r + 1) sets are probed as well and any
    /// violations reported without failing the check.
    pub fn check_l1(&self, j_bar: usize, r: usize, seed: u64) -> Result<L1Report> {
        if j_bar == 0 || r == 0 {
            return Err(Error::InvalidParams("check_l1 needs j̄ ≥ 1 and r ≥ 1".into()));
        }
        let n = self.spaces.len();
        let m = (j_bar * r).min(n);
        if m == 0 {
            return Ok(L1Report {
                holds: true,
                witness: None,
                extension_violations: 0,
                subsets_checked: 0,
                exhaustive: true,
            });
        }
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let exhaustive = binomial(n, m) <= L1_EXHAUSTIVE_BUDGET;
        let mut checked = 0usize;
        let mut witness = None;
        if exhaustive {
            for subset in combinations(n, m) {
                checked += 1;
                if !self.is_additive(&subset)? {
                    witness = Some(subset);
                    break;
                }
            }
        } else {
            for _ in 0..L1_SAMPLE_COUNT {
                let mut subset = rand::seq::index::sample(&mut rng, n, m).into_vec();
                subset.sort_unstable();
                checked += 1;
                if !self.is_additive(&subset)? {
                    witness = Some(subset);
                    break;
                }
            }
        }
        let mut extension_violations = 0usize;
        if witness.is_none() && m < n {
            if binomial(n, m + 1) <= L1_EXHAUSTIVE_BUDGET {
                for subset in combinations(n, m + 1) {
                    if !self.is_additive(&subset)? {
                        extension_violations += 1;
                    }
                }
            } else {
                for _ in 0..L1_EXTENSION_SAMPLE_COUNT {
                    let subset = rand::seq::index::sample(&mut rng, n, m + 1).into_vec();
                    if !self.is_additive(&subset)? {
                        extension_violations += 1;
                    }
                }
            }
        }
        Ok(L1Report {
            holds: witness.is_none(),
            witness,
            extension_violations,
            subsets_checked: checked,
            exhaustive,
        })
    }

    fn validate_groups(&self, groups: &[Vec<usize>]) -> Result<()> {
        let Some(first) = groups.first() else {
            return Err(Error::InvalidParams("at least one helper group required".into()));
        };
        if first.is_empty() || groups.iter().any(|g| g.len() != first.len()) {
            return Err(Error::InvalidParams(
                "helper groups must be nonempty and equally sized".into(),
            ));
        }
        let mut all: Vec<usize> = groups.concat();
        all.sort_unstable();
        let before = all.len();
        all.dedup();
        if all.len() != before {
            return Err(Error::InvalidParams("helper groups overlap".into()));
        }
        Ok(())
    }

    /// dim(W_a ∩ W_{R_j̄} | W_{R_1} + … + W_{R_{j̄−1}}) for helper groups
    /// R_1..R_j̄ given in order.
    pub fn l3_conditional_dim(&self, a: usize, groups: &[Vec<usize>]) -> Result<usize> {
        self.validate_groups(groups)?;
        let last = groups.last().expect("validated nonempty");
        let w0_nodes: Vec<usize> = groups[..groups.len() - 1].concat();
        let wa = self.node(a)?.clone();
        let wr = self.sum_space(last)?;
        let w0 = self.sum_space(&w0_nodes)?;
        conditional_dim(&self.field, &[&wa, &wr], &w0)
    }

    /// Condition L3: the conditional overlap of a node with its last
    /// helper group stays within `bound` (r for full repair, (1−ρ)rξ for
    /// partial repair).
    pub fn check_l3(&self, a: usize, groups: &[Vec<usize>], bound: usize) -> Result<bool> {
        Ok(self.l3_conditional_dim(a, groups)? <= bound)
    }

    /// Both sides of the helper-decomposition identity
    ///
    ///   dim(W_a ∩ W_B) = Σ_{s=j̄}^{⌊v/r⌋} dim(W_a ∩ W_{R_s} | W_{R_1} + … + W_{R_{j̄−1}}),
    ///
    /// where B (v = |B| nodes) is partitioned in the given order into
    /// groups R_s of r nodes plus a remainder that contributes no term,
    /// and every term conditions on the same first j̄−1 groups. The two
    /// sides are computed independently; equality is expected exactly
    /// when conditions L1, L2, L3 hold, which is what makes this usable
    /// as a test oracle.
    pub fn helper_decomposition(
        &self,
        a: usize,
        b: &[usize],
        j_bar: usize,
        r: usize,
    ) -> Result<(usize, usize)> {
        if j_bar == 0 || r == 0 {
            return Err(Error::InvalidParams("decomposition needs j̄ ≥ 1 and r ≥ 1".into()));
        }
        let wa = self.node(a)?.clone();
        let wb = self.sum_space(b)?;
        let lhs = wa.intersect(&self.field, &wb)?.dim();
        let p = b.len() / r;
        let mut rhs = 0usize;
        if p >= j_bar {
            let w0 = self.sum_space(&b[..(j_bar - 1) * r])?;
            for s in j_bar..=p {
                let wr = self.sum_space(&b[(s - 1) * r..s * r])?;
                rhs += conditional_dim(&self.field, &[&wa, &wr], &w0)?;
            }
        }
        Ok((lhs, rhs))
    }
}

/// Condition L2: the two subspaces a helper transmitted toward different
/// newcomers intersect trivially.
pub fn check_l2(field: &PrimeFieldContext, s1: &Subspace, s2: &Subspace) -> Result<bool> {
    Ok(s1.intersect(field, s2)?.dim() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn f2() -> PrimeFieldContext {
        PrimeFieldContext::new(2).unwrap()
    }

    fn f5() -> PrimeFieldContext {
        PrimeFieldContext::new(5).unwrap()
    }

    fn span(field: &PrimeFieldContext, rows: Vec<Vec<u64>>) -> Subspace {
        Subspace::new(field, &Matrix::from_rows(rows).unwrap())
    }

    fn unit(ambient: usize, i: usize) -> Vec<u64> {
        let mut v = vec![0u64; ambient];
        v[i] = 1;
        v
    }

    fn random_space(
        field: &PrimeFieldContext,
        rng: &mut impl Rng,
        ambient: usize,
        rows: usize,
    ) -> Subspace {
        let q = field.q;
        let m = Matrix::from_fn(rows, ambient, |_, _| rng.gen_range(0..q));
        Subspace::new(field, &m)
    }

    #[test]
    fn construction_reduces() {
        let f = f5();
        let s = span(&f, vec![vec![2, 4, 0], vec![1, 2, 1], vec![3, 6, 1]]);
        assert_eq!(s.dim(), 2);
        // same row space, different presentation -> equal value
        let t = span(&f, vec![vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(s, t);
        assert_eq!(Subspace::zero(4).dim(), 0);
    }

    #[test]
    fn dim_sum_examples() {
        let f = f5();
        let ambient = 5;
        let n1 = span(&f, vec![unit(ambient, 0), unit(ambient, 1), unit(ambient, 2)]);
        let n2 = span(&f, vec![unit(ambient, 2), unit(ambient, 3), unit(ambient, 4)]);
        let fam = NodeSubspaceFamily::new(f.clone(), vec![n1.clone(), n1.clone(), n2]).unwrap();
        assert_eq!(fam.dim_sum(&[0]).unwrap(), 3);
        assert_eq!(fam.dim_sum(&[0, 1]).unwrap(), 3); // identical bases
        assert_eq!(fam.dim_sum(&[0, 2]).unwrap(), 5); // e1..e3 and e3..e5
        assert_eq!(fam.dim_sum(&[]).unwrap(), 0);
        assert!(matches!(fam.dim_sum(&[7]), Err(Error::IndexOutOfRange(7))));
    }

    #[test]
    fn conditional_dim_examples() {
        let f = f2();
        let w1 = span(&f, vec![unit(3, 0), unit(3, 1)]);
        let w2 = span(&f, vec![unit(3, 1), unit(3, 2)]);
        let e2 = span(&f, vec![unit(3, 1)]);
        let zero = Subspace::zero(3);
        // t=1, empty conditioning -> plain dimension
        assert_eq!(conditional_dim(&f, &[&w1], &zero).unwrap(), 2);
        // W_1 contained in W_0 -> everything conditioned away
        assert_eq!(conditional_dim(&f, &[&e2], &w1).unwrap(), 0);
        // span{e1,e2} ∩ span{e2,e3}: 1 plain, 0 given span{e2}
        assert_eq!(conditional_dim(&f, &[&w1, &w2], &zero).unwrap(), 1);
        assert_eq!(conditional_dim(&f, &[&w1, &w2], &e2).unwrap(), 0);
        assert!(conditional_dim(&f, &[], &zero).is_err());
    }

    #[test]
    fn rank_nullity_on_random_pairs() {
        let f = PrimeFieldContext::new(3).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..200 {
            let ambient = rng.gen_range(1..7usize);
            let (r1, r2) = (rng.gen_range(0..5usize), rng.gen_range(0..5usize));
            let w1 = random_space(&f, &mut rng, ambient, r1);
            let w2 = random_space(&f, &mut rng, ambient, r2);
            let sum = w1.sum(&f, &w2).unwrap();
            let inter = w1.intersect(&f, &w2).unwrap();
            assert_eq!(sum.dim() + inter.dim(), w1.dim() + w2.dim());
        }
    }

    #[test]
    fn chain_rule_on_random_triples() {
        // dim(W_1 ∩ (W_2+W_3)) = dim(W_1 ∩ W_2) + dim(W_1 ∩ W_3 | W_2)
        let f = f5();
        let mut rng = ChaCha20Rng::seed_from_u64(12);
        for _ in 0..200 {
            let ambient = rng.gen_range(1..7usize);
            let rows: Vec<usize> = (0..3).map(|_| rng.gen_range(0..4usize)).collect();
            let w1 = random_space(&f, &mut rng, ambient, rows[0]);
            let w2 = random_space(&f, &mut rng, ambient, rows[1]);
            let w3 = random_space(&f, &mut rng, ambient, rows[2]);
            let lhs = w1.intersect(&f, &w2.sum(&f, &w3).unwrap()).unwrap().dim();
            let rhs = w1.intersect(&f, &w2).unwrap().dim()
                + conditional_dim(&f, &[&w1, &w3], &w2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn l1_disjoint_blocks_hold() {
        let f = f5();
        let ambient = 6;
        let spaces: Vec<Subspace> = (0..3)
            .map(|b| span(&f, vec![unit(ambient, 2 * b), unit(ambient, 2 * b + 1)]))
            .collect();
        let fam = NodeSubspaceFamily::new(f, spaces).unwrap();
        let report = fam.check_l1(1, 2, 0).unwrap();
        assert!(report.holds);
        assert!(report.exhaustive);
        assert_eq!(report.witness, None);
        assert_eq!(report.subsets_checked, 3); // C(3,2)
    }

    #[test]
    fn l1_shared_vector_fails_with_witness() {
        let f = f5();
        let ambient = 4;
        let shared = span(&f, vec![unit(ambient, 0)]);
        let spaces = vec![
            shared.clone(),
            shared,
            span(&f, vec![unit(ambient, 1)]),
            span(&f, vec![unit(ambient, 2)]),
        ];
        let fam = NodeSubspaceFamily::new(f, spaces).unwrap();
        let report = fam.check_l1(1, 2, 0).unwrap();
        assert!(!report.holds);
        assert_eq!(report.witness, Some(vec![0, 1]));
    }

    #[test]
    fn l1_extension_violations_reported_not_failed() {
        // pairwise additive, but e1+e2 ∈ the third space kills triples
        let f = f5();
        let ambient = 4;
        let spaces = vec![
            span(&f, vec![unit(ambient, 0)]),
            span(&f, vec![unit(ambient, 1)]),
            span(&f, vec![vec![1, 1, 0, 0]]),
            span(&f, vec![unit(ambient, 3)]),
        ];
        let fam = NodeSubspaceFamily::new(f, spaces).unwrap();
        let report = fam.check_l1(1, 2, 0).unwrap();
        assert!(report.holds);
        assert_eq!(report.extension_violations, 1); // exactly {0,1,2}
    }

    #[test]
    fn l2_examples() {
        let f = f5();
        let s1 = span(&f, vec![unit(4, 0)]);
        let s2 = span(&f, vec![unit(4, 1)]);
        assert!(check_l2(&f, &s1, &s2).unwrap());
        assert!(!check_l2(&f, &s1, &s1).unwrap());
    }

    #[test]
    fn l3_examples() {
        let f = f5();
        let ambient = 8;
        // nodes 0..5 span disjoint coordinates; node 6 = span{e1 + e3}
        let mut spaces: Vec<Subspace> =
            (0..6).map(|i| span(&f, vec![unit(ambient, i)])).collect();
        spaces.push(span(&f, vec![vec![1, 0, 1, 0, 0, 0, 0, 0]]));
        let fam = NodeSubspaceFamily::new(f, spaces).unwrap();
        let g1 = vec![0usize, 1];
        let g2 = vec![2usize, 3];
        // A = node 4, disjoint from both groups
        assert_eq!(fam.l3_conditional_dim(4, &[g1.clone(), g2.clone()]).unwrap(), 0);
        assert!(fam.check_l3(4, &[g1.clone(), g2.clone()], 2).unwrap());
        // j̄ = 1 reduces to a plain intersection
        assert_eq!(fam.l3_conditional_dim(6, &[vec![0, 2]]).unwrap(), 1);
        // A = node 6 meets group 2 only through e3, and e3 is not in W_{R_1}
        assert_eq!(fam.l3_conditional_dim(6, &[g1.clone(), g2.clone()]).unwrap(), 1);
        // overlapping groups are an error
        assert!(fam.l3_conditional_dim(4, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(fam.l3_conditional_dim(4, &[vec![0, 1], vec![2]]).is_err());
    }

    #[test]
    fn decomposition_trivial_cases() {
        let f = f5();
        let ambient = 8;
        let spaces: Vec<Subspace> =
            (0..7).map(|i| span(&f, vec![unit(ambient, i)])).collect();
        let fam = NodeSubspaceFamily::new(f, spaces).unwrap();
        // fully independent family -> (0, 0)
        assert_eq!(fam.helper_decomposition(0, &[1, 2, 3, 4], 2, 2).unwrap(), (0, 0));
        // v < j̄r -> no terms in the sum, both sides 0 under additivity
        assert_eq!(fam.helper_decomposition(0, &[1, 2, 3], 2, 2).unwrap(), (0, 0));
    }

    #[test]
    fn decomposition_hand_checked_instance() {
        // A stores span{e1+e2}; helper groups are span{e1}, span{e2},
        // span{e3} with r=1, j̄=2. The overlap of W_A with the helpers is
        // one-dimensional and lands entirely in the s=2 term.
        let f = f5();
        let ambient = 6;
        let spaces = vec![
            span(&f, vec![vec![1, 1, 0, 0, 0, 0]]),
            span(&f, vec![unit(ambient, 0)]),
            span(&f, vec![unit(ambient, 1)]),
            span(&f, vec![unit(ambient, 2)]),
        ];
        let fam = NodeSubspaceFamily::new(f, spaces).unwrap();
        let (lhs, rhs) = fam.helper_decomposition(0, &[1, 2, 3], 2, 1).unwrap();
        assert_eq!(lhs, 1);
        assert_eq!(rhs, 1);
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let all: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(3, 5).count(), 0);
        assert_eq!(combinations(20, 3).count(), 1140);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(27, 15), 17_383_860);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(10, 0), 1);
    }
}
