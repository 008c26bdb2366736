//! Membership decisions and lattice-point counts for instantiated programs.
//!
//! Membership in the moment cone is rational feasibility of the program;
//! the multiplicity is its number of integer points. Counting recurses over
//! the variables in a structure-aware order. At each search node the system
//! with the current prefix pinned is presolved once: variables the equality
//! rows force are fixed without solving anything, and only the first
//! genuinely free variable needs its exact rational range before branching;
//! once a single free variable remains the integer count of its interval is
//! added directly.

use crate::error::{Error, Result};
use crate::exactlp::{solve_feasibility, FeasibilityResult, PreparedSystem, Problem, Rational};
use crate::hive::{kt_block, VarKind, VarPool, WeightSlot};
use crate::lpmodel::{instantiate_rows, ConcreteLp, SymbolicProgram};
use crate::quiver::{Weight, WeightFamily};

/// Limits for the counting recursion.
#[derive(Debug, Clone)]
pub struct CountBudget {
    /// Maximum number of search nodes (one per variable-range computation).
    pub max_nodes: u64,
    /// Optional cap on the count itself; exceeding it aborts the search.
    pub max_points: Option<u64>,
}

impl Default for CountBudget {
    fn default() -> CountBudget {
        CountBudget { max_nodes: 10_000_000, max_points: None }
    }
}

/// The verdict of a membership test, with a proof either way: a rational
/// point of the polytope, or multipliers refuting the whole system.
#[derive(Debug, Clone)]
pub enum Membership {
    Member { point: Vec<Rational> },
    NotMember { farkas: Vec<Rational> },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Decides whether the weights lie in the moment cone of the program's
/// quiver. The returned evidence has already been verified against the
/// instantiated system.
pub fn decide_membership(program: &SymbolicProgram, lam: &WeightFamily) -> Result<Membership> {
    let lp = program.instantiate(lam)?;
    Ok(match solve_feasibility(&lp.to_problem()) {
        FeasibilityResult::Feasible { point } => Membership::Member { point },
        FeasibilityResult::Infeasible { farkas } => Membership::NotMember { farkas },
    })
}

/// Enumeration order: arrow weights, then gluing weights, then hive
/// entries, each in their structural coordinates. Fixing the weights first
/// collapses most hive entries to forced values.
fn order_key(kind: &VarKind) -> (u8, usize, usize, usize, usize) {
    match *kind {
        VarKind::ArrowWeight { arrow, coord } => (0, arrow, coord, 0, 0),
        VarKind::AuxWeight { block, level, coord } => (1, block, level, coord, 0),
        VarKind::HiveEntry { block, level, row, col } => (2, block, level, row, col),
    }
}

struct CountCtx<'a> {
    problem: &'a Problem,
    budget: &'a CountBudget,
    nodes: u64,
    total: u64,
}

impl CountCtx<'_> {
    fn charge_node(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Error::BudgetExceeded(format!(
                "lattice-point search exceeded {} nodes",
                self.budget.max_nodes
            )));
        }
        Ok(())
    }

    fn add_points(&mut self, n: u64) -> Result<u64> {
        self.total = self.total.checked_add(n).ok_or_else(|| {
            Error::BudgetExceeded("lattice-point count overflows u64".into())
        })?;
        if let Some(cap) = self.budget.max_points {
            if self.total > cap {
                return Err(Error::BudgetExceeded(format!(
                    "lattice-point count exceeded the cap of {cap}"
                )));
            }
        }
        Ok(n)
    }

    fn count_from(&mut self, fixed: &mut Vec<(usize, i64)>, remaining: &[usize]) -> Result<u64> {
        self.charge_node()?;
        let Some(mut sys) = PreparedSystem::new(self.problem, fixed) else {
            return Ok(0);
        };
        // Fix everything the equality rows force, wherever it sits in the
        // order; a forced non-integer value empties the whole subtree.
        let before = fixed.len();
        let mut rest: Vec<usize> = Vec::with_capacity(remaining.len());
        for &v in remaining {
            match sys.pinned_value(v) {
                Some(val) => {
                    let floor = val.floor_i64();
                    if Rational::from_int(floor) != val {
                        fixed.truncate(before);
                        return Ok(0);
                    }
                    fixed.push((v, floor));
                }
                None => rest.push(v),
            }
        }
        let outcome = self.branch(fixed, &mut sys, &rest);
        fixed.truncate(before);
        outcome
    }

    fn branch(
        &mut self,
        fixed: &mut Vec<(usize, i64)>,
        sys: &mut PreparedSystem,
        rest: &[usize],
    ) -> Result<u64> {
        let Some((&v, tail)) = rest.split_first() else {
            // Every variable is pinned to an integer: exactly one point.
            return self.add_points(1);
        };
        let (min, max) = sys.variable_range(v);
        let lo = min.ok_or(Error::Unbounded(v))?.ceil_i64();
        let hi = max.ok_or(Error::Unbounded(v))?.floor_i64();
        if lo > hi {
            return Ok(0);
        }
        if tail.is_empty() {
            // Every other variable is pinned, so the feasible values of `v`
            // form exactly this interval.
            return self.add_points((hi - lo + 1) as u64);
        }
        let mut here = 0u64;
        for val in lo..=hi {
            fixed.push((v, val));
            let sub = self.count_from(fixed, tail);
            fixed.pop();
            here += sub?;
        }
        Ok(here)
    }
}

/// Counts the integer points of an instantiated program.
pub fn count_integer_points(lp: &ConcreteLp, budget: &CountBudget) -> Result<u64> {
    let problem = lp.to_problem();
    let mut order: Vec<usize> = (0..lp.num_vars).collect();
    order.sort_by_key(|&j| order_key(&lp.var_kinds[j]));
    let mut ctx = CountCtx { problem: &problem, budget, nodes: 0, total: 0 };
    let mut fixed = Vec::with_capacity(order.len());
    ctx.count_from(&mut fixed, &order)
}

/// The multiplicity of the weights for the program's quiver: the number of
/// integer points of the instantiated polytope.
pub fn multiplicity(
    program: &SymbolicProgram,
    lam: &WeightFamily,
    budget: &CountBudget,
) -> Result<u64> {
    let lp = program.instantiate(lam)?;
    count_integer_points(&lp, budget)
}

/// The invariant dimension of a tuple of dominant weights of length `n`,
/// computed by counting the integer points of its glued-hive block.
pub fn kt_coefficient(n: usize, weights: &[Weight], budget: &CountBudget) -> Result<u64> {
    let mut vals: Vec<i64> = Vec::new();
    let mut slots = Vec::with_capacity(weights.len());
    for w in weights {
        if w.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: w.len() });
        }
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.entries().to_vec()));
        }
        let base = vals.len();
        vals.extend_from_slice(w.entries());
        slots.push(WeightSlot::from_params(base..base + n));
    }
    let mut pool = VarPool::new();
    let rows = kt_block(&mut pool, 1, 0, n, &slots);
    let lp = ConcreteLp {
        num_vars: pool.len(),
        var_kinds: pool.into_kinds(),
        rows: instantiate_rows(&rows, &vals)?,
    };
    count_integer_points(&lp, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpmodel::build_moment_polytope;
    use crate::oracle::invariant_c;
    use crate::quiver::{DimensionVector, Quiver};

    fn w(entries: &[i64]) -> Weight {
        Weight::new(entries.to_vec())
    }

    fn family(weights: &[&[i64]]) -> WeightFamily {
        WeightFamily::new(weights.iter().map(|e| w(e)).collect())
    }

    #[test]
    fn single_coordinate_triples_count_by_total_sum() {
        let budget = CountBudget::default();
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    let got = kt_coefficient(1, &[w(&[a]), w(&[b]), w(&[c])], &budget).unwrap();
                    assert_eq!(got, u64::from(a + b + c == 0), "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn named_two_row_triples_have_the_expected_counts() {
        let budget = CountBudget::default();
        let cases: &[(&[i64], &[i64], &[i64], u64)] = &[
            (&[1, 0], &[1, 0], &[-1, -1], 1),
            (&[1, 0], &[1, 0], &[0, -2], 1),
            (&[1, 0], &[1, 0], &[1, -3], 0),
            (&[1, 0], &[0, -1], &[0, 0], 1),
            (&[1, 1], &[0, 0], &[-1, -1], 1),
            (&[1, 0], &[1, 0], &[-2, -2], 0),
        ];
        for &(a, b, c, expect) in cases {
            let got = kt_coefficient(2, &[w(a), w(b), w(c)], &budget).unwrap();
            assert_eq!(got, expect, "({a:?},{b:?},{c:?})");
        }
    }

    #[test]
    fn hive_counts_match_the_independent_oracle_on_a_small_box() {
        // The gate for the whole boundary convention: every dominant
        // two-row triple with entries in a small box must agree with the
        // representation-theoretic computation.
        let budget = CountBudget::default();
        let mut doms = Vec::new();
        for a in (-1..=1i64).rev() {
            for b in -1..=a {
                doms.push(w(&[a, b]));
            }
        }
        for x in &doms {
            for y in &doms {
                for z in &doms {
                    let expect = invariant_c(2, &[x.clone(), y.clone(), z.clone()]);
                    let got =
                        kt_coefficient(2, &[x.clone(), y.clone(), z.clone()], &budget).unwrap();
                    assert_eq!(got, expect, "{x:?} {y:?} {z:?}");
                }
            }
        }
    }

    #[test]
    fn four_slot_blocks_agree_with_the_oracle() {
        let budget = CountBudget::default();
        let tuple = [w(&[1, 0]), w(&[1, 0]), w(&[0, -1]), w(&[0, -1])];
        assert_eq!(invariant_c(2, &tuple), 2);
        assert_eq!(kt_coefficient(2, &tuple, &budget).unwrap(), 2);

        let shifted = [w(&[0, -5]), w(&[5, 5]), w(&[0, -5])];
        assert_eq!(invariant_c(2, &shifted), 1);
        assert_eq!(kt_coefficient(2, &shifted, &budget).unwrap(), 1);
    }

    #[test]
    fn membership_on_a_single_arrow_requires_containment() {
        let q = Quiver::path2();
        let dims = DimensionVector::new(vec![2, 2]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        let inside = decide_membership(&prog, &family(&[&[1, 0], &[0, -1]])).unwrap();
        assert!(inside.is_member());
        let outside = decide_membership(&prog, &family(&[&[1, 0], &[1, 0]])).unwrap();
        match outside {
            Membership::NotMember { farkas } => assert!(!farkas.is_empty()),
            Membership::Member { .. } => panic!("weights with nonzero total cannot be members"),
        }
    }

    #[test]
    fn named_multiplicities_come_out_of_the_polytope() {
        let budget = CountBudget::default();

        let q = Quiver::diamond();
        let dims = DimensionVector::new(vec![1, 1, 1, 1]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        let lam = family(&[&[2], &[0], &[0], &[-2]]);
        assert_eq!(multiplicity(&prog, &lam, &budget).unwrap(), 3);

        let q = Quiver::path2();
        let dims = DimensionVector::new(vec![2, 2]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        assert_eq!(multiplicity(&prog, &family(&[&[1, 0], &[0, -1]]), &budget).unwrap(), 1);

        let q = Quiver::star_a3();
        let dims = DimensionVector::new(vec![2, 2, 2]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        assert_eq!(
            multiplicity(&prog, &family(&[&[1, 0], &[1, 0], &[-1, -1]]), &budget).unwrap(),
            1
        );
    }

    #[test]
    fn node_budget_aborts_large_searches() {
        let q = Quiver::diamond();
        let dims = DimensionVector::new(vec![1, 1, 1, 1]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        let lam = family(&[&[6], &[0], &[0], &[-6]]);
        let tight = CountBudget { max_nodes: 2, max_points: None };
        assert!(matches!(
            multiplicity(&prog, &lam, &tight),
            Err(Error::BudgetExceeded(_))
        ));
        let roomy = CountBudget::default();
        assert_eq!(multiplicity(&prog, &lam, &roomy).unwrap(), 7);
    }

    #[test]
    fn point_cap_aborts_when_exceeded() {
        let q = Quiver::diamond();
        let dims = DimensionVector::new(vec![1, 1, 1, 1]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        let lam = family(&[&[6], &[0], &[0], &[-6]]);
        let capped = CountBudget { max_nodes: 10_000_000, max_points: Some(3) };
        assert!(matches!(
            multiplicity(&prog, &lam, &capped),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
