//! The combinatorial linear program attached to a quiver with dimensions.
//!
//! For every arrow the program carries an unknown dominant polynomial
//! weight of the source group; for every vertex it carries the constraint
//! block of the tuple formed by the dual of the vertex weight, the outgoing
//! arrow weights, and the duals of the resized incoming arrow weights. The
//! vertex weights themselves are symbolic parameters, so one symbolic
//! program serves a whole family of weight choices: membership in the
//! moment cone is rational feasibility of the instantiated system, and the
//! number of integer points is the multiplicity.

use crate::error::{Error, Result};
use crate::exactlp::{Problem, Rel};
use crate::hive::{kt_block, RowKind, SymbolicRow, VarKind, VarPool, WeightSlot};
use crate::quiver::{DimensionVector, Quiver, WeightFamily};

/// What a parameter index stands for: coordinate `coord` (zero-based) of
/// the weight at `vertex` (one-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamInfo {
    pub vertex: usize,
    pub coord: usize,
}

/// The symbolic program for one quiver and dimension vector.
#[derive(Debug, Clone)]
pub struct SymbolicProgram {
    pub num_vertices: usize,
    pub dims: DimensionVector,
    pub params: Vec<ParamInfo>,
    pub var_kinds: Vec<VarKind>,
    pub rows: Vec<SymbolicRow>,
}

/// One instantiated constraint: integer left-hand side against an integer
/// right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteRow {
    pub lhs: Vec<(usize, i64)>,
    pub rel: Rel,
    pub rhs: i64,
    pub kind: RowKind,
}

/// A fully instantiated linear program.
#[derive(Debug, Clone)]
pub struct ConcreteLp {
    pub num_vars: usize,
    pub var_kinds: Vec<VarKind>,
    pub rows: Vec<ConcreteRow>,
}

impl ConcreteLp {
    /// The same system as solver input.
    pub fn to_problem(&self) -> Problem {
        let mut p = Problem::new(self.num_vars);
        for row in &self.rows {
            p.rows.push(crate::exactlp::Row {
                lhs: row.lhs.clone(),
                rel: row.rel,
                rhs: row.rhs,
            });
        }
        p
    }
}

/// Builds the symbolic program for `q` with dimension vector `dims`.
pub fn build_moment_polytope(q: &Quiver, dims: &DimensionVector) -> Result<SymbolicProgram> {
    let v = q.num_vertices();
    if dims.len() != v {
        return Err(Error::LengthMismatch { expected: v, got: dims.len() });
    }

    // Parameters: the vertex weight coordinates, vertex by vertex.
    let mut params = Vec::new();
    let mut param_base = vec![0usize; v + 1];
    for x in 1..=v {
        param_base[x] = params.len();
        for coord in 0..dims.dim(x) {
            params.push(ParamInfo { vertex: x, coord });
        }
    }

    let mut pool = VarPool::new();
    let arrow_vars: Vec<Vec<usize>> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            (0..dims.dim(arrow.source))
                .map(|coord| pool.fresh(VarKind::ArrowWeight { arrow: a, coord }))
                .collect()
        })
        .collect();

    let mut rows = Vec::new();
    // Arrow domains: weakly decreasing, polynomial, and cut down to the
    // target dimension.
    for (a, arrow) in q.arrows().iter().enumerate() {
        let ids = &arrow_vars[a];
        let n_src = ids.len();
        let n_tgt = dims.dim(arrow.target);
        for k in 1..n_src {
            rows.push(SymbolicRow {
                lhs: vec![(ids[k], 1), (ids[k - 1], -1)],
                rel: Rel::Le,
                rhs: Vec::new(),
                kind: RowKind::Decreasing,
            });
        }
        rows.push(SymbolicRow {
            lhs: vec![(ids[n_src - 1], -1)],
            rel: Rel::Le,
            rhs: Vec::new(),
            kind: RowKind::NonNeg,
        });
        for &id in ids.iter().skip(n_tgt) {
            rows.push(SymbolicRow {
                lhs: vec![(id, 1)],
                rel: Rel::Eq,
                rhs: Vec::new(),
                kind: RowKind::ZeroRow,
            });
        }
    }

    // Vertex blocks: dual vertex weight, outgoing weights, duals of the
    // resized incoming weights, in arrow order.
    for x in 1..=v {
        let n = dims.dim(x);
        let lam = WeightSlot::from_params(param_base[x]..param_base[x] + n);
        let mut slots = vec![lam.dual()];
        let (outs, ins) = q.vertex_star(x)?;
        for a in outs {
            slots.push(WeightSlot::from_vars(arrow_vars[a].iter().copied()));
        }
        for a in ins {
            slots.push(WeightSlot::from_vars(arrow_vars[a].iter().copied()).resized(n).dual());
        }
        rows.extend(kt_block(&mut pool, x, 0, n, &slots));
    }

    Ok(SymbolicProgram {
        num_vertices: v,
        dims: dims.clone(),
        params,
        var_kinds: pool.into_kinds(),
        rows,
    })
}

impl SymbolicProgram {
    /// Substitutes concrete vertex weights for the parameters.
    pub fn instantiate(&self, lam: &WeightFamily) -> Result<ConcreteLp> {
        lam.validate_against(&self.dims)?;
        let mut vals = Vec::with_capacity(self.params.len());
        for info in &self.params {
            vals.push(lam.weight(info.vertex).entries()[info.coord]);
        }
        Ok(ConcreteLp {
            num_vars: self.var_kinds.len(),
            var_kinds: self.var_kinds.clone(),
            rows: instantiate_rows(&self.rows, &vals)?,
        })
    }
}

/// Evaluates the parameter side of each row at concrete values.
pub(crate) fn instantiate_rows(rows: &[SymbolicRow], vals: &[i64]) -> Result<Vec<ConcreteRow>> {
    rows.iter()
        .map(|row| {
            let mut rhs: i128 = 0;
            for &(p, c) in &row.rhs {
                rhs += i128::from(c) * i128::from(vals[p]);
            }
            let rhs = i64::try_from(rhs).map_err(|_| {
                Error::ShapeMismatch("weight entries overflow the right-hand side".into())
            })?;
            Ok(ConcreteRow {
                lhs: row.lhs.iter().map(|&(j, c)| (j, i64::from(c))).collect(),
                rel: row.rel,
                rhs,
                kind: row.kind,
            })
        })
        .collect()
}

/// Renders the instantiated system in a stable plain-text form: a header
/// `vars N`, then one line per row with `coeff*xI` terms (variables
/// one-based, ascending, zero coefficients omitted, `0` for an empty side),
/// the relation, and the integer right-hand side.
pub fn emit_lp_text(lp: &ConcreteLp) -> String {
    let mut out = format!("vars {}\n", lp.num_vars);
    for row in &lp.rows {
        let mut terms = row.lhs.clone();
        terms.sort_by_key(|&(j, _)| j);
        let mut line = String::new();
        for (j, c) in terms {
            if c == 0 {
                continue;
            }
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(&format!("{c}*x{}", j + 1));
        }
        if line.is_empty() {
            line.push('0');
        }
        let rel = match row.rel {
            Rel::Le => "<=",
            Rel::Eq => "=",
        };
        out.push_str(&format!("{line} {rel} {}\n", row.rhs));
    }
    out
}

/// Summary of a structural audit of a symbolic program.
#[derive(Debug, Clone)]
pub struct AuditReport {
    pub num_vars: usize,
    pub num_params: usize,
    pub num_rows: usize,
    pub num_eq_rows: usize,
    pub num_le_rows: usize,
    /// True when every coefficient, on both sides of every row, is 1 or -1.
    pub all_unit_coefficients: bool,
    /// Offending `(row index, coefficient)` pairs.
    pub offenders: Vec<(usize, i32)>,
}

/// Checks that the program is genuinely combinatorial: every stored
/// coefficient is a sign.
pub fn audit_combinatorial(program: &SymbolicProgram) -> AuditReport {
    let mut offenders = Vec::new();
    let mut num_eq = 0;
    let mut num_le = 0;
    for (i, row) in program.rows.iter().enumerate() {
        match row.rel {
            Rel::Eq => num_eq += 1,
            Rel::Le => num_le += 1,
        }
        for &(_, c) in row.lhs.iter().chain(&row.rhs) {
            if c != 1 && c != -1 {
                offenders.push((i, c));
            }
        }
    }
    AuditReport {
        num_vars: program.var_kinds.len(),
        num_params: program.params.len(),
        num_rows: program.rows.len(),
        num_eq_rows: num_eq,
        num_le_rows: num_le,
        all_unit_coefficients: offenders.is_empty(),
        offenders,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Weight;

    fn family(weights: &[&[i64]]) -> WeightFamily {
        WeightFamily::new(weights.iter().map(|w| Weight::new(w.to_vec())).collect())
    }

    #[test]
    fn diamond_program_sizes_match_closed_forms() {
        let q = Quiver::diamond();
        for n in 1..=5usize {
            let dims = DimensionVector::new(vec![n, n, n, n]).unwrap();
            let prog = build_moment_polytope(&q, &dims).unwrap();
            assert_eq!(prog.var_kinds.len(), 2 * n * n + 10 * n + 4, "vars at n={n}");
            assert_eq!(prog.rows.len(), 6 * n * n + 10 * n + 8, "rows at n={n}");
            assert_eq!(prog.params.len(), 4 * n);
        }
    }

    #[test]
    fn arrow_variables_come_first_in_arrow_order() {
        let q = Quiver::diamond();
        let dims = DimensionVector::new(vec![2, 2, 2, 2]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        for (a, chunk) in prog.var_kinds.chunks(2).take(4).enumerate() {
            assert_eq!(chunk[0], VarKind::ArrowWeight { arrow: a, coord: 0 });
            assert_eq!(chunk[1], VarKind::ArrowWeight { arrow: a, coord: 1 });
        }
    }

    #[test]
    fn shrinking_target_dimension_pins_trailing_coordinates() {
        // One arrow from a 3-dimensional vertex into a line: the last two
        // coordinates of the arrow weight are forced to zero.
        let q = Quiver::path2();
        let dims = DimensionVector::new(vec![3, 1]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        let zero_rows =
            prog.rows.iter().filter(|r| r.kind == RowKind::ZeroRow).count();
        assert_eq!(zero_rows, 2);
        let decreasing =
            prog.rows.iter().filter(|r| r.kind == RowKind::Decreasing).count();
        assert_eq!(decreasing, 2);
        let nonneg = prog.rows.iter().filter(|r| r.kind == RowKind::NonNeg).count();
        assert_eq!(nonneg, 1);
    }

    #[test]
    fn instantiation_is_linear_in_the_weights() {
        let q = Quiver::star_a3();
        let dims = DimensionVector::new(vec![2, 2, 2]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        let lam = family(&[&[1, 0], &[1, 0], &[-1, -1]]);
        let once = prog.instantiate(&lam).unwrap();
        let thrice = prog.instantiate(&lam.scaled(3)).unwrap();
        for (r1, r3) in once.rows.iter().zip(&thrice.rows) {
            assert_eq!(r1.lhs, r3.lhs);
            assert_eq!(r1.rel, r3.rel);
            assert_eq!(r1.rhs * 3, r3.rhs);
        }
    }

    #[test]
    fn instantiate_rejects_mismatched_or_non_dominant_weights() {
        let q = Quiver::path2();
        let dims = DimensionVector::new(vec![2, 2]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        assert!(prog.instantiate(&family(&[&[1, 0]])).is_err());
        assert!(prog.instantiate(&family(&[&[0, 1], &[0, 0]])).is_err());
        assert!(prog.instantiate(&family(&[&[1, 0, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn emitted_text_is_deterministic_and_matches_the_frozen_shape() {
        let q = Quiver::path2();
        let dims = DimensionVector::new(vec![1, 1]).unwrap();
        let prog = build_moment_polytope(&q, &dims).unwrap();
        let lam = family(&[&[2], &[-2]]);
        let lp = prog.instantiate(&lam).unwrap();
        let text = emit_lp_text(&lp);
        assert_eq!(text, emit_lp_text(&prog.instantiate(&lam).unwrap()));
        assert!(text.starts_with("vars "));
        for line in text.lines().skip(1) {
            assert!(line.contains("<=") || line.contains(" = "), "line: {line}");
        }
    }

    #[test]
    fn audit_accepts_generated_programs_and_flags_corruption() {
        let q = Quiver::diamond();
        let dims = DimensionVector::new(vec![2, 3, 2, 3]).unwrap();
        let mut prog = build_moment_polytope(&q, &dims).unwrap();
        let report = audit_combinatorial(&prog);
        assert!(report.all_unit_coefficients);
        assert_eq!(report.num_rows, prog.rows.len());
        assert_eq!(report.num_eq_rows + report.num_le_rows, report.num_rows);

        prog.rows[0].lhs[0].1 = 2;
        let report = audit_combinatorial(&prog);
        assert!(!report.all_unit_coefficients);
        assert_eq!(report.offenders, vec![(0, 2)]);
    }
}
