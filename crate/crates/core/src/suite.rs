//! Deterministic instance generators and cross-validation sweeps.
//!
//! The acceptance tests and the command-line `selftest` exercise the same
//! ground: exhaustive weight grids checked against the independent oracles,
//! certificate audits over random systems, and closed-form comparisons. The
//! generators and sweep loops live here so both entry points run identical
//! work and report identical counters.

use crate::decision::{self, CountBudget};
use crate::error::Result;
use crate::exactlp::{self, FeasibilityResult, Problem};
use crate::lpmodel;
use crate::oracle;
use crate::quiver::{DimensionVector, Quiver, Weight, WeightFamily};
use crate::semistability::{
    check_semistable, closed_form_a3, closed_form_diamond, ClosedForm, SigmaWeight,
};

/// Flow-size ceiling passed to the reference multiplicity formula. The
/// sweeps use weight entries of magnitude at most a few units, far below
/// this, so hitting the ceiling indicates a generator bug.
const FLOW_BOUND: u64 = 100_000;

/// A small deterministic generator (the splitmix64 sequence). Seeded runs
/// reproduce bit-for-bit across platforms and releases, which keeps the
/// "random" acceptance instances stable.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform-enough value in `0..bound`. The modulo bias is irrelevant
    /// here: the draws only pick instance shapes, never statistics.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        self.next_u64() % bound
    }

    /// Value in the inclusive range `lo..=hi`.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Deterministic connected acyclic quivers with `2..=max_vertices`
/// vertices: a spanning tree whose arrows point from lower to higher vertex
/// id, plus up to two extra forward arrows. Forward arrows can never close
/// a cycle, and the tree keeps the underlying graph connected.
pub fn seeded_random_quivers(count: usize, max_vertices: usize, seed: u64) -> Vec<Quiver> {
    assert!(max_vertices >= 2);
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let v = 2 + rng.below((max_vertices - 1) as u64) as usize;
        let mut arrows = Vec::new();
        for x in 2..=v {
            let p = 1 + rng.below((x - 1) as u64) as usize;
            arrows.push((p, x));
        }
        for _ in 0..rng.below(3) {
            let x = 1 + rng.below((v - 1) as u64) as usize;
            let y = x + 1 + rng.below((v - x) as u64) as usize;
            arrows.push((x, y));
        }
        out.push(
            Quiver::new(v, &arrows)
                .expect("a forward-oriented tree plus forward arrows is connected and acyclic"),
        );
    }
    out
}

/// All weakly decreasing integer vectors of length `n` with entries in
/// `lo..=hi`, in lexicographically decreasing order.
pub fn dominant_weights(n: usize, lo: i64, hi: i64) -> Vec<Weight> {
    fn extend(n: usize, lo: i64, cap: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if cur.len() == n {
            out.push(Weight::new(cur.clone()));
            return;
        }
        let mut v = cap;
        while v >= lo {
            cur.push(v);
            extend(n, lo, v, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    let mut out = Vec::new();
    extend(n, lo, hi, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All dimension vectors for `num_vertices` vertices with entries in
/// `1..=max_dim`.
pub fn dimension_vectors(num_vertices: usize, max_dim: usize) -> Vec<DimensionVector> {
    let mut out = Vec::new();
    let mut cur = vec![1usize; num_vertices];
    loop {
        out.push(DimensionVector::new(cur.clone()).expect("entries are positive"));
        let mut i = num_vertices;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < max_dim {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
        }
    }
}

/// Every weight family for `dims` whose per-vertex weights are dominant
/// with entries in `lo..=hi` (the full cartesian product over vertices).
pub fn weight_families(dims: &DimensionVector, lo: i64, hi: i64) -> Vec<WeightFamily> {
    let per_vertex: Vec<Vec<Weight>> =
        (1..=dims.len()).map(|x| dominant_weights(dims.dim(x), lo, hi)).collect();
    let mut out = Vec::new();
    let mut picks = vec![0usize; per_vertex.len()];
    loop {
        out.push(WeightFamily::new(
            picks.iter().zip(&per_vertex).map(|(&i, ws)| ws[i].clone()).collect(),
        ));
        let mut i = per_vertex.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            picks[i] += 1;
            if picks[i] < per_vertex[i].len() {
                break;
            }
            picks[i] = 0;
        }
    }
}

/// Counters from one exhaustive grid sweep over a single quiver. A clean
/// run has every `*_mismatches` and `*_failures` field at zero.
#[derive(Debug, Clone, Default)]
pub struct GridReport {
    /// Weight families visited across all dimension vectors.
    pub instances: u64,
    /// Instances with a positive multiplicity.
    pub positive_instances: u64,
    /// Largest multiplicity seen.
    pub max_multiplicity: u64,
    /// Instances where the polytope count and the reference formula differ.
    pub multiplicity_mismatches: u64,
    /// Instances where feasibility disagrees with count positivity.
    pub membership_mismatches: u64,
    /// Instances where membership of `N * lam` (N = 2, 3) differs from
    /// membership of `lam`.
    pub scaling_mismatches: u64,
    /// Solver results re-checked against their certificates.
    pub certificates_checked: u64,
    /// Certificates that failed re-verification.
    pub certificate_failures: u64,
}

impl GridReport {
    pub fn all_clean(&self) -> bool {
        self.multiplicity_mismatches == 0
            && self.membership_mismatches == 0
            && self.scaling_mismatches == 0
            && self.certificate_failures == 0
    }

    pub fn absorb(&mut self, other: &GridReport) {
        self.instances += other.instances;
        self.positive_instances += other.positive_instances;
        self.max_multiplicity = self.max_multiplicity.max(other.max_multiplicity);
        self.multiplicity_mismatches += other.multiplicity_mismatches;
        self.membership_mismatches += other.membership_mismatches;
        self.scaling_mismatches += other.scaling_mismatches;
        self.certificates_checked += other.certificates_checked;
        self.certificate_failures += other.certificate_failures;
    }
}

/// Solves one instantiated system, re-verifies the returned certificate,
/// and reports whether the system was feasible.
fn checked_membership(problem: &Problem, report: &mut GridReport) -> bool {
    let result = exactlp::solve_feasibility(problem);
    report.certificates_checked += 1;
    if !exactlp::verify_certificate(problem, &result) {
        report.certificate_failures += 1;
    }
    matches!(result, FeasibilityResult::Feasible { .. })
}

/// Exhaustive cross-validation of one quiver: every dimension vector with
/// entries in `1..=max_dim`, every dominant weight family with entries in
/// `lo..=hi`. For each instance the polytope count is compared against the
/// reference formula, membership against count positivity, and membership
/// against membership of the doubled and tripled weights; every solver
/// certificate is re-verified.
pub fn run_quiver_grid(
    q: &Quiver,
    max_dim: usize,
    lo: i64,
    hi: i64,
    budget: &CountBudget,
) -> Result<GridReport> {
    let mut report = GridReport::default();
    for dims in dimension_vectors(q.num_vertices(), max_dim) {
        let program = lpmodel::build_moment_polytope(q, &dims)?;
        for family in weight_families(&dims, lo, hi) {
            report.instances += 1;
            let lp = program.instantiate(&family)?;
            let problem = lp.to_problem();
            let member = checked_membership(&problem, &mut report);

            let count = decision::count_integer_points(&lp, budget)?;
            let formula = oracle::multiplicity_formula(q, &dims, &family, FLOW_BOUND)?;
            if count != formula {
                report.multiplicity_mismatches += 1;
            }
            if member != (count > 0) {
                report.membership_mismatches += 1;
            }
            if count > 0 {
                report.positive_instances += 1;
                report.max_multiplicity = report.max_multiplicity.max(count);
            }

            for n in [2, 3] {
                let scaled_lp = program.instantiate(&family.scaled(n))?;
                let scaled_member = checked_membership(&scaled_lp.to_problem(), &mut report);
                if scaled_member != member {
                    report.scaling_mismatches += 1;
                }
            }
        }
    }
    Ok(report)
}

/// Counters from a sweep of glued-hive counts against the tableau oracle.
#[derive(Debug, Clone, Default)]
pub struct TripleReport {
    /// Sum-zero dominant triples visited.
    pub triples: u64,
    /// Triples where the lattice count and the oracle differ.
    pub mismatches: u64,
    /// Largest agreed value seen.
    pub max_value: u64,
}

/// Compares the hive-block lattice count with the tableau-based invariant
/// dimension on every dominant triple of length-`n` weights, `n` ranging
/// over `ns`, with entries in `lo..=hi` and total sum zero (nonzero sums
/// are excluded: both sides vanish by weight homogeneity).
pub fn hive_oracle_sweep(
    ns: &[usize],
    lo: i64,
    hi: i64,
    budget: &CountBudget,
) -> Result<TripleReport> {
    let mut report = TripleReport::default();
    for &n in ns {
        let weights = dominant_weights(n, lo, hi);
        for a in &weights {
            for b in &weights {
                for c in &weights {
                    if a.sum() + b.sum() + c.sum() != 0 {
                        continue;
                    }
                    report.triples += 1;
                    let triple = [a.clone(), b.clone(), c.clone()];
                    let counted = decision::kt_coefficient(n, &triple, budget)?;
                    let reference = oracle::invariant_c(n, &triple);
                    if counted != reference {
                        report.mismatches += 1;
                    } else {
                        report.max_value = report.max_value.max(counted);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Counters from a certificate audit over random systems.
#[derive(Debug, Clone, Default)]
pub struct CertificateReport {
    pub systems: u64,
    pub feasible: u64,
    pub infeasible: u64,
    pub failures: u64,
}

/// One random system: up to six variables, up to eight rows, sparse
/// coefficients in `-3..=3`, right-hand sides in `-5..=5`, one row in four
/// an equality. Small enough to solve instantly, varied enough to hit
/// every solver path (feasible, infeasible, degenerate, unbounded).
pub fn random_problem(rng: &mut SplitMix64) -> Problem {
    let num_vars = 1 + rng.below(6) as usize;
    let num_rows = 1 + rng.below(8) as usize;
    let mut p = Problem::new(num_vars);
    for _ in 0..num_rows {
        let mut lhs = Vec::new();
        for j in 0..num_vars {
            if rng.below(10) < 6 {
                let c = rng.range_i64(-3, 3);
                if c != 0 {
                    lhs.push((j, c));
                }
            }
        }
        let rhs = rng.range_i64(-5, 5);
        if rng.below(4) == 0 {
            p.push_eq(lhs, rhs);
        } else {
            p.push_le(lhs, rhs);
        }
    }
    p
}

/// Solves `count` seeded random systems and re-verifies every returned
/// certificate against the original system.
pub fn certificate_sweep(count: u64, seed: u64) -> CertificateReport {
    let mut rng = SplitMix64::new(seed);
    let mut report = CertificateReport::default();
    for _ in 0..count {
        let p = random_problem(&mut rng);
        let result = exactlp::solve_feasibility(&p);
        report.systems += 1;
        match result {
            FeasibilityResult::Feasible { .. } => report.feasible += 1,
            FeasibilityResult::Infeasible { .. } => report.infeasible += 1,
        }
        if !exactlp::verify_certificate(&p, &result) {
            report.failures += 1;
        }
    }
    report
}

/// Counters from a closed-form versus reduction sweep.
#[derive(Debug, Clone, Default)]
pub struct SemistabilityReport {
    /// (dims, sigma) pairs checked.
    pub checked: u64,
    /// Pairs the closed form declined to classify.
    pub not_covered: u64,
    /// Pairs found semi-stable by the reduction.
    pub semistable: u64,
    /// Covered pairs where the closed form and the reduction disagree.
    pub mismatches: u64,
    /// Semi-stable pairs whose weighted coordinate sum is nonzero.
    pub balance_violations: u64,
}

impl SemistabilityReport {
    pub fn all_clean(&self) -> bool {
        self.mismatches == 0 && self.balance_violations == 0
    }
}

fn weighted_sum_is_zero(dims: &DimensionVector, sigma: &SigmaWeight) -> bool {
    (1..=dims.len()).map(|x| dims.dim(x) as i128 * sigma.value(x) as i128).sum::<i128>() == 0
}

/// All integer vectors of length `len` with entries in `lo..=hi`.
fn integer_boxes(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![lo; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < hi {
                cur[i] += 1;
                break;
            }
            cur[i] = lo;
        }
    }
}

/// Checks one (quiver, dims, sigma) pair: closed form against the
/// reduction to membership, and the balance identity on semi-stable pairs.
fn check_semistable_pair(
    q: &Quiver,
    dims: &DimensionVector,
    sigma: &SigmaWeight,
    closed: ClosedForm,
    report: &mut SemistabilityReport,
) -> Result<()> {
    report.checked += 1;
    let reduced = check_semistable(q, dims, sigma)?;
    match closed {
        ClosedForm::NotCovered => report.not_covered += 1,
        ClosedForm::Semistable => {
            if !reduced {
                report.mismatches += 1;
            }
        }
        ClosedForm::NotSemistable => {
            if reduced {
                report.mismatches += 1;
            }
        }
    }
    if reduced {
        report.semistable += 1;
        if !weighted_sum_is_zero(dims, sigma) {
            report.balance_violations += 1;
        }
    }
    Ok(())
}

/// Sweeps the three-vertex star: every dimension vector with entries in
/// `1..=max_dim`, every one-parameter weight with entries in `lo..=hi`.
pub fn a3_semistability_sweep(max_dim: usize, lo: i64, hi: i64) -> Result<SemistabilityReport> {
    let q = Quiver::star_a3();
    let mut report = SemistabilityReport::default();
    for dims in dimension_vectors(3, max_dim) {
        for entries in integer_boxes(3, lo, hi) {
            let sigma = SigmaWeight::new(entries);
            let closed = closed_form_a3(&dims, &sigma)?;
            check_semistable_pair(&q, &dims, &sigma, closed, &mut report)?;
        }
    }
    Ok(report)
}

/// Sweeps the diamond over its covered dimension patterns: for each base
/// `n` in `ns`, the steps (0,0,0), (0,0,1), (1,0,1), (0,1,1) and (1,1,1)
/// above `[n, n, n, n]`, with one-parameter weights in `lo..=hi`.
pub fn diamond_semistability_sweep(ns: &[usize], lo: i64, hi: i64) -> Result<SemistabilityReport> {
    let q = Quiver::diamond();
    let mut report = SemistabilityReport::default();
    for &n in ns {
        for steps in [[0, 0, 0], [0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]] {
            let dims =
                DimensionVector::new(vec![n, n + steps[0], n + steps[1], n + steps[2]])?;
            for entries in integer_boxes(4, lo, hi) {
                let sigma = SigmaWeight::new(entries);
                let closed = closed_form_diamond(&dims, &sigma)?;
                check_semistable_pair(&q, &dims, &sigma, closed, &mut report)?;
            }
        }
    }
    Ok(report)
}

/// Counters from a torus-case three-way comparison.
#[derive(Debug, Clone, Default)]
pub struct TorusReport {
    pub instances: u64,
    pub mismatches: u64,
    pub positive_instances: u64,
}

/// With every dimension equal to one, compares the closed flow count, the
/// reference formula, and the polytope count on every weight family with
/// entries in `lo..=hi`.
pub fn torus_sweep(q: &Quiver, lo: i64, hi: i64, budget: &CountBudget) -> Result<TorusReport> {
    let dims = DimensionVector::new(vec![1; q.num_vertices()])?;
    let program = lpmodel::build_moment_polytope(q, &dims)?;
    let mut report = TorusReport::default();
    for family in weight_families(&dims, lo, hi) {
        report.instances += 1;
        let torus = oracle::torus_multiplicity(q, &dims, &family)?;
        let formula = oracle::multiplicity_formula(q, &dims, &family, FLOW_BOUND)?;
        let counted = decision::multiplicity(&program, &family, budget)?;
        if torus != formula || formula != counted {
            report.mismatches += 1;
        } else if counted > 0 {
            report.positive_instances += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic_and_well_mixed() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        let first: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let again: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_eq!(first, again);
        // Known first output of the splitmix64 sequence for seed 0.
        let mut z = SplitMix64::new(0);
        assert_eq!(z.next_u64(), 0xe220_a839_7b1d_cdaf);
        let mut r = SplitMix64::new(7);
        for _ in 0..100 {
            let v = r.range_i64(-3, 3);
            assert!((-3..=3).contains(&v));
        }
    }

    #[test]
    fn seeded_quivers_are_reproducible_and_valid() {
        let qs = seeded_random_quivers(5, 4, 2026);
        let again = seeded_random_quivers(5, 4, 2026);
        assert_eq!(qs.len(), 5);
        for (q, p) in qs.iter().zip(&again) {
            assert_eq!(q.num_vertices(), p.num_vertices());
            assert_eq!(q.arrows(), p.arrows());
            assert!(q.num_vertices() >= 2 && q.num_vertices() <= 4);
        }
        let other = seeded_random_quivers(5, 4, 2027);
        let same_all = qs
            .iter()
            .zip(&other)
            .all(|(q, p)| q.num_vertices() == p.num_vertices() && q.arrows() == p.arrows());
        assert!(!same_all, "different seeds should give different quivers");
    }

    #[test]
    fn dominant_weight_grids_have_the_right_sizes() {
        // Entries from a k-element alphabet, weakly decreasing, length n:
        // multiset count C(n + k - 1, n).
        assert_eq!(dominant_weights(1, -3, 3).len(), 7);
        assert_eq!(dominant_weights(2, -3, 3).len(), 28);
        assert_eq!(dominant_weights(3, -3, 3).len(), 84);
        assert_eq!(dominant_weights(2, -2, 2).len(), 15);
        for w in dominant_weights(3, -2, 2) {
            assert!(w.is_dominant());
        }
    }

    #[test]
    fn dimension_and_family_grids_are_complete() {
        assert_eq!(dimension_vectors(3, 2).len(), 8);
        assert_eq!(dimension_vectors(4, 2).len(), 16);
        let dims = DimensionVector::new(vec![2, 1]).unwrap();
        // 15 dominant pairs at the first vertex times 5 singletons.
        assert_eq!(weight_families(&dims, -2, 2).len(), 75);
    }

    #[test]
    fn certificate_sweep_is_clean_and_hits_both_outcomes() {
        let report = certificate_sweep(200, 11);
        assert_eq!(report.systems, 200);
        assert_eq!(report.failures, 0);
        assert!(report.feasible > 0);
        assert!(report.infeasible > 0);
    }

    #[test]
    fn tiny_grid_sweep_is_clean() {
        let q = Quiver::path2();
        let report = run_quiver_grid(&q, 2, -1, 1, &CountBudget::default()).unwrap();
        assert!(report.all_clean(), "{report:?}");
        assert!(report.positive_instances > 0);
        assert_eq!(report.certificates_checked, 3 * report.instances);
    }

    #[test]
    fn tiny_hive_sweep_is_clean() {
        let report = hive_oracle_sweep(&[1, 2], -1, 1, &CountBudget::default()).unwrap();
        assert_eq!(report.mismatches, 0);
        assert!(report.triples > 0);
        assert!(report.max_value >= 1);
    }

    #[test]
    fn tiny_semistability_sweeps_are_clean() {
        let a3 = a3_semistability_sweep(2, -1, 1).unwrap();
        assert!(a3.all_clean(), "{a3:?}");
        assert_eq!(a3.not_covered, 0);
        assert!(a3.semistable > 0);
        let diamond = diamond_semistability_sweep(&[1], -1, 1).unwrap();
        assert!(diamond.all_clean(), "{diamond:?}");
        assert_eq!(diamond.not_covered, 0);
        assert!(diamond.semistable > 0);
    }

    #[test]
    fn tiny_torus_sweep_is_clean() {
        let report = torus_sweep(&Quiver::diamond(), -2, 2, &CountBudget::default()).unwrap();
        assert_eq!(report.mismatches, 0);
        assert!(report.positive_instances > 0);
    }
}
