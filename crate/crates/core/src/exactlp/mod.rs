//! Exact rational linear programming with certificates.
//!
//! The solver runs in three stages: substitution of externally fixed
//! variables, Gauss-Jordan elimination of the equality rows, and a two-phase
//! primal simplex with Bland's rule on the surviving inequalities. All
//! arithmetic is exact, so a feasible point or an infeasibility certificate
//! is a proof; both are re-checked against the input before being returned.
//!
//! A certificate is one multiplier per input row: non-negative on `<=` rows,
//! unrestricted on `=` rows, combining the rows into `0 <= rhs` with a
//! negative right-hand side.

mod rat;

pub use rat::Rational;

/// Row sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
}

/// One constraint row: a sparse integer left-hand side against an integer
/// right-hand side. Repeated variable indices are accumulated.
#[derive(Debug, Clone)]
pub struct Row {
    pub lhs: Vec<(usize, i64)>,
    pub rel: Rel,
    pub rhs: i64,
}

/// A system of linear constraints over free rational variables; every sign
/// or bound restriction must appear as an explicit row.
#[derive(Debug, Clone, Default)]
pub struct Problem {
    pub num_vars: usize,
    pub rows: Vec<Row>,
}

impl Problem {
    pub fn new(num_vars: usize) -> Problem {
        Problem { num_vars, rows: Vec::new() }
    }

    pub fn push_le(&mut self, lhs: Vec<(usize, i64)>, rhs: i64) {
        self.rows.push(Row { lhs, rel: Rel::Le, rhs });
    }

    pub fn push_eq(&mut self, lhs: Vec<(usize, i64)>, rhs: i64) {
        self.rows.push(Row { lhs, rel: Rel::Eq, rhs });
    }
}

/// Outcome of a feasibility check, with proof either way.
#[derive(Debug, Clone)]
pub enum FeasibilityResult {
    Feasible { point: Vec<Rational> },
    Infeasible { farkas: Vec<Rational> },
}

/// Outcome of optimizing a linear objective over the feasible set.
#[derive(Debug, Clone)]
pub enum Optimum {
    Optimal { value: Rational, point: Vec<Rational> },
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Checks a candidate point against every row of the system.
pub fn verify_feasible(p: &Problem, point: &[Rational]) -> bool {
    if point.len() != p.num_vars {
        return false;
    }
    p.rows.iter().all(|row| {
        let mut acc = Rational::zero();
        for &(j, c) in &row.lhs {
            if c != 0 {
                acc = acc.add_ref(&Rational::from_int(c).mul_ref(&point[j]));
            }
        }
        let rhs = Rational::from_int(row.rhs);
        match row.rel {
            Rel::Le => acc <= rhs,
            Rel::Eq => acc == rhs,
        }
    })
}

/// Checks an infeasibility certificate: multipliers non-negative on `<=`
/// rows, cancelling every variable, with a negative combined right-hand side.
pub fn verify_farkas(p: &Problem, mult: &[Rational]) -> bool {
    if mult.len() != p.rows.len() {
        return false;
    }
    let mut combo = vec![Rational::zero(); p.num_vars];
    let mut rhs = Rational::zero();
    for (row, y) in p.rows.iter().zip(mult) {
        if row.rel == Rel::Le && y.is_negative() {
            return false;
        }
        if y.is_zero() {
            continue;
        }
        for &(j, c) in &row.lhs {
            if c != 0 {
                combo[j] = combo[j].add_ref(&y.mul_ref(&Rational::from_int(c)));
            }
        }
        rhs = rhs.add_ref(&y.mul_ref(&Rational::from_int(row.rhs)));
    }
    combo.iter().all(Rational::is_zero) && rhs.is_negative()
}

/// Checks whichever proof a feasibility result carries against the system.
pub fn verify_certificate(p: &Problem, result: &FeasibilityResult) -> bool {
    match result {
        FeasibilityResult::Feasible { point } => verify_feasible(p, point),
        FeasibilityResult::Infeasible { farkas } => verify_farkas(p, farkas),
    }
}

/// Decides feasibility and returns a verified proof either way.
pub fn solve_feasibility(p: &Problem) -> FeasibilityResult {
    match prepare(p, &[], true) {
        Prepared::Infeasible { farkas } => {
            let farkas = farkas.expect("certificate tracking was enabled");
            assert!(verify_farkas(p, &farkas), "internal error: certificate failed verification");
            FeasibilityResult::Infeasible { farkas }
        }
        Prepared::Ready { red, sx } => {
            let point = assemble_point(p.num_vars, &red, &sx.free_values());
            assert!(verify_feasible(p, &point), "internal error: point failed verification");
            FeasibilityResult::Feasible { point }
        }
    }
}

/// Optimizes a sparse integer objective over the system.
pub fn optimize(p: &Problem, objective: &[(usize, i64)], sense: Sense) -> Optimum {
    optimize_with_fixed(p, &[], objective, sense)
}

/// Optimizes with some variables pinned to integer values beforehand.
///
/// Pinning happens by substitution, before elimination, so repeated calls
/// that fix a growing prefix of the variables (as the lattice-point search
/// does) stay cheap.
pub fn optimize_with_fixed(
    p: &Problem,
    fixed: &[(usize, i64)],
    objective: &[(usize, i64)],
    sense: Sense,
) -> Optimum {
    match prepare(p, fixed, false) {
        Prepared::Infeasible { .. } => Optimum::Infeasible,
        Prepared::Ready { red, mut sx } => {
            // Rewrite the objective over the free columns only.
            let mut dense = vec![Rational::zero(); p.num_vars];
            for &(j, c) in objective {
                assert!(j < p.num_vars, "objective variable out of range");
                if c != 0 {
                    dense[j] = dense[j].add_ref(&Rational::from_int(c));
                }
            }
            for j in 0..p.num_vars {
                if red.fixed_vals[j].is_some() {
                    dense[j] = Rational::zero();
                }
            }
            for (c, prow) in &red.pivots {
                let f = std::mem::replace(&mut dense[*c], Rational::zero());
                if f.is_zero() {
                    continue;
                }
                for (j, coef) in prow.coef.iter().enumerate() {
                    if j != *c && !coef.is_zero() {
                        dense[j] = dense[j].sub_ref(&f.mul_ref(coef));
                    }
                }
            }
            let cost: Vec<Rational> = red
                .free_cols
                .iter()
                .map(|&j| match sense {
                    Sense::Minimize => dense[j].clone(),
                    Sense::Maximize => dense[j].neg_ref(),
                })
                .collect();
            sx.drive_out_artificials();
            match sx.phase2(&cost) {
                Phase2End::Unbounded => Optimum::Unbounded,
                Phase2End::Optimal => {
                    let point = assemble_point(p.num_vars, &red, &sx.free_values());
                    assert!(
                        verify_feasible(p, &point),
                        "internal error: optimal point failed verification"
                    );
                    for &(j, v) in fixed {
                        assert!(point[j] == Rational::from_int(v));
                    }
                    let mut value = Rational::zero();
                    for &(j, c) in objective {
                        if c != 0 {
                            value = value.add_ref(&Rational::from_int(c).mul_ref(&point[j]));
                        }
                    }
                    Optimum::Optimal { value, point }
                }
            }
        }
    }
}

/// A dense working row: coefficients over all original variables, plus the
/// running expression of this row as a combination of input rows (tracked
/// only when a certificate may be needed).
#[derive(Debug, Clone)]
struct WRow {
    coef: Vec<Rational>,
    rhs: Rational,
    combo: Option<Vec<Rational>>,
}

/// `dst -= f * src`.
fn wrow_axpy(dst: &mut WRow, f: &Rational, src: &WRow) {
    for (d, s) in dst.coef.iter_mut().zip(&src.coef) {
        if !s.is_zero() {
            *d = d.sub_ref(&f.mul_ref(s));
        }
    }
    dst.rhs = dst.rhs.sub_ref(&f.mul_ref(&src.rhs));
    if let (Some(dc), Some(sc)) = (dst.combo.as_mut(), src.combo.as_ref()) {
        for (d, s) in dc.iter_mut().zip(sc) {
            if !s.is_zero() {
                *d = d.sub_ref(&f.mul_ref(s));
            }
        }
    }
}

fn wrow_scale(row: &mut WRow, factor: &Rational) {
    for c in row.coef.iter_mut() {
        if !c.is_zero() {
            *c = c.mul_ref(factor);
        }
    }
    row.rhs = row.rhs.mul_ref(factor);
    if let Some(cb) = row.combo.as_mut() {
        for c in cb.iter_mut() {
            if !c.is_zero() {
                *c = c.mul_ref(factor);
            }
        }
    }
}

/// The system after substitution and equality elimination.
struct Reduced {
    /// Eliminated column -> its defining row (`coef[col] == 1`, other pivot
    /// and fixed columns zero), so `x_col = rhs - sum(coef[j] * x_j)`.
    pivots: Vec<(usize, WRow)>,
    /// Surviving `<=` rows, supported on free columns only.
    ineqs: Vec<WRow>,
    /// Ascending list of columns still free.
    free_cols: Vec<usize>,
    /// Values of externally pinned variables.
    fixed_vals: Vec<Option<Rational>>,
}

enum PresolveEnd {
    Reduced(Reduced),
    /// An equality combination reads `0 = nonzero`.
    Contradiction { farkas: Option<Vec<Rational>> },
}

fn presolve(p: &Problem, fixed: &[(usize, i64)], track: bool) -> PresolveEnd {
    let n = p.num_vars;
    let m = p.rows.len();
    let mut fixed_vals: Vec<Option<Rational>> = vec![None; n];
    for &(j, v) in fixed {
        assert!(j < n, "fixed variable out of range");
        assert!(fixed_vals[j].is_none(), "variable fixed twice");
        fixed_vals[j] = Some(Rational::from_int(v));
    }

    let mut eqs: Vec<WRow> = Vec::new();
    let mut ineqs: Vec<WRow> = Vec::new();
    for (idx, row) in p.rows.iter().enumerate() {
        let mut coef = vec![Rational::zero(); n];
        let mut rhs = Rational::from_int(row.rhs);
        for &(j, c) in &row.lhs {
            assert!(j < n, "row variable out of range");
            if c == 0 {
                continue;
            }
            let c = Rational::from_int(c);
            match &fixed_vals[j] {
                Some(v) => rhs = rhs.sub_ref(&c.mul_ref(v)),
                None => coef[j] = coef[j].add_ref(&c),
            }
        }
        let combo = track.then(|| {
            let mut e = vec![Rational::zero(); m];
            e[idx] = Rational::one();
            e
        });
        let wrow = WRow { coef, rhs, combo };
        match row.rel {
            Rel::Eq => eqs.push(wrow),
            Rel::Le => ineqs.push(wrow),
        }
    }

    let mut pivots: Vec<(usize, WRow)> = Vec::new();
    for mut row in eqs {
        for (c, prow) in &pivots {
            let f = row.coef[*c].clone();
            if !f.is_zero() {
                wrow_axpy(&mut row, &f, prow);
            }
        }
        let Some(c) = row.coef.iter().position(|x| !x.is_zero()) else {
            if row.rhs.is_zero() {
                continue; // redundant equality
            }
            // The tracked combination proves `0 = rhs` with `rhs != 0`;
            // orient it so the combined right-hand side is negative.
            let farkas = row.combo.map(|cb| {
                if row.rhs.is_positive() {
                    cb.iter().map(Rational::neg_ref).collect()
                } else {
                    cb
                }
            });
            return PresolveEnd::Contradiction { farkas };
        };
        let inv = Rational::one().div_ref(&row.coef[c]);
        wrow_scale(&mut row, &inv);
        for (_, prow) in pivots.iter_mut() {
            let f = prow.coef[c].clone();
            if !f.is_zero() {
                wrow_axpy(prow, &f, &row);
            }
        }
        pivots.push((c, row));
    }
    for row in ineqs.iter_mut() {
        for (c, prow) in &pivots {
            let f = row.coef[*c].clone();
            if !f.is_zero() {
                wrow_axpy(row, &f, prow);
            }
        }
    }

    let mut is_pivot = vec![false; n];
    for (c, _) in &pivots {
        is_pivot[*c] = true;
    }
    let free_cols: Vec<usize> =
        (0..n).filter(|&j| !is_pivot[j] && fixed_vals[j].is_none()).collect();
    PresolveEnd::Reduced(Reduced { pivots, ineqs, free_cols, fixed_vals })
}

/// Rebuilds a full assignment from simplex values of the free columns.
fn assemble_point(n: usize, red: &Reduced, free_vals: &[Rational]) -> Vec<Rational> {
    let mut point = vec![Rational::zero(); n];
    for (j, v) in red.fixed_vals.iter().enumerate() {
        if let Some(v) = v {
            point[j] = v.clone();
        }
    }
    for (f, &j) in red.free_cols.iter().enumerate() {
        point[j] = free_vals[f].clone();
    }
    for (c, prow) in &red.pivots {
        let mut acc = prow.rhs.clone();
        for (j, coef) in prow.coef.iter().enumerate() {
            if j != *c && !coef.is_zero() {
                acc = acc.sub_ref(&coef.mul_ref(&point[j]));
            }
        }
        point[*c] = acc;
    }
    point
}

enum Prepared {
    Infeasible { farkas: Option<Vec<Rational>> },
    Ready { red: Reduced, sx: Simplex },
}

/// Presolve, then run simplex phase 1 on the reduced inequalities.
fn prepare(p: &Problem, fixed: &[(usize, i64)], track: bool) -> Prepared {
    let red = match presolve(p, fixed, track) {
        PresolveEnd::Contradiction { farkas } => return Prepared::Infeasible { farkas },
        PresolveEnd::Reduced(red) => red,
    };
    let mut sx = Simplex::new(&red);
    match sx.phase1() {
        Err(y_reduced) => {
            // Multipliers on reduced rows lift to the input rows through the
            // tracked combinations; `<=` rows only ever absorbed equality
            // rows, so non-negativity on `<=` rows survives the lift.
            let farkas = track.then(|| {
                let m = p.rows.len();
                let mut y = vec![Rational::zero(); m];
                for (row, yi) in red.ineqs.iter().zip(&y_reduced) {
                    if yi.is_zero() {
                        continue;
                    }
                    let combo = row.combo.as_ref().expect("tracking enabled");
                    for (j, cj) in combo.iter().enumerate() {
                        if !cj.is_zero() {
                            y[j] = y[j].add_ref(&yi.mul_ref(cj));
                        }
                    }
                }
                y
            });
            Prepared::Infeasible { farkas }
        }
        Ok(()) => Prepared::Ready { red, sx },
    }
}

enum Phase2End {
    Optimal,
    Unbounded,
}

/// A feasible system with some variables pinned, presolved and phase-1
/// solved once, ready to answer repeated questions about its variables.
///
/// The lattice-point search builds one of these per search node. Variables
/// forced by the pinning and the equality rows alone are read off the
/// elimination for free, and the minimum/maximum pair for the branching
/// variable shares the presolve, phase-1, and basis work that separate
/// `optimize_with_fixed` calls would repeat.
pub struct PreparedSystem {
    num_vars: usize,
    red: Reduced,
    sx: Simplex,
    /// Variable -> its position in `red.free_cols`, if free.
    free_index: Vec<Option<usize>>,
    /// Variable -> its position in `red.pivots`, if eliminated.
    pivot_index: Vec<Option<usize>>,
    driven: bool,
}

impl PreparedSystem {
    /// Presolves and phase-1 solves with the given variables pinned;
    /// `None` means the pinned system is infeasible.
    pub fn new(p: &Problem, fixed: &[(usize, i64)]) -> Option<PreparedSystem> {
        match prepare(p, fixed, false) {
            Prepared::Infeasible { .. } => None,
            Prepared::Ready { red, sx } => {
                let mut free_index = vec![None; p.num_vars];
                for (f, &j) in red.free_cols.iter().enumerate() {
                    free_index[j] = Some(f);
                }
                let mut pivot_index = vec![None; p.num_vars];
                for (k, (c, _)) in red.pivots.iter().enumerate() {
                    pivot_index[*c] = Some(k);
                }
                Some(PreparedSystem {
                    num_vars: p.num_vars,
                    red,
                    sx,
                    free_index,
                    pivot_index,
                    driven: false,
                })
            }
        }
    }

    /// The value the pinning and the equality rows force on a variable, if
    /// they force one: the variable is pinned itself, or its defining row
    /// from the elimination involves no free column.
    pub fn pinned_value(&self, var: usize) -> Option<Rational> {
        assert!(var < self.num_vars, "variable out of range");
        if let Some(v) = &self.red.fixed_vals[var] {
            return Some(v.clone());
        }
        let k = self.pivot_index[var]?;
        let prow = &self.red.pivots[k].1;
        if self.red.free_cols.iter().all(|&j| prow.coef[j].is_zero()) {
            Some(prow.rhs.clone())
        } else {
            None
        }
    }

    /// Exact minimum and maximum of one variable over the feasible set;
    /// `None` on a side means unbounded there.
    pub fn variable_range(&mut self, var: usize) -> (Option<Rational>, Option<Rational>) {
        assert!(var < self.num_vars, "variable out of range");
        // The variable as `offset + sum(expr[f] * free_f)` over free columns.
        let nf = self.red.free_cols.len();
        let mut expr = vec![Rational::zero(); nf];
        let mut offset = Rational::zero();
        if let Some(v) = &self.red.fixed_vals[var] {
            offset = v.clone();
        } else if let Some(f) = self.free_index[var] {
            expr[f] = Rational::one();
        } else {
            let k = self.pivot_index[var].expect("every variable is fixed, free, or eliminated");
            let prow = &self.red.pivots[k].1;
            offset = prow.rhs.clone();
            for (f, &j) in self.red.free_cols.iter().enumerate() {
                if !prow.coef[j].is_zero() {
                    expr[f] = prow.coef[j].neg_ref();
                }
            }
        }
        if !self.driven {
            self.sx.drive_out_artificials();
            self.driven = true;
        }
        let min = match self.sx.phase2(&expr) {
            Phase2End::Unbounded => None,
            Phase2End::Optimal => Some(self.eval(&expr, &offset)),
        };
        let negated: Vec<Rational> = expr.iter().map(Rational::neg_ref).collect();
        let max = match self.sx.phase2(&negated) {
            Phase2End::Unbounded => None,
            Phase2End::Optimal => Some(self.eval(&expr, &offset)),
        };
        if let (Some(lo), Some(hi)) = (&min, &max) {
            assert!(lo <= hi, "internal error: crossed variable range");
        }
        (min, max)
    }

    fn eval(&self, expr: &[Rational], offset: &Rational) -> Rational {
        let vals = self.sx.free_values();
        let mut acc = offset.clone();
        for (e, v) in expr.iter().zip(&vals) {
            if !e.is_zero() && !v.is_zero() {
                acc = acc.add_ref(&e.mul_ref(v));
            }
        }
        acc
    }
}

/// Dense-tableau primal simplex over `<=` rows in free variables.
///
/// Each free variable is split into a non-negative difference, every row
/// gets a slack, rows with a negative right-hand side are sign-flipped and
/// given an artificial. Bland's rule (lowest eligible index entering, lowest
/// basic index on ratio ties) makes every run terminate deterministically.
struct Simplex {
    nf: usize,
    ncols: usize,
    art_start: usize,
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    rc: Vec<Rational>,
    /// Per original reduced row: sign flip, slack column, artificial column.
    negated: Vec<bool>,
    slack_col: Vec<usize>,
    art_col: Vec<Option<usize>>,
}

impl Simplex {
    fn new(red: &Reduced) -> Simplex {
        let nf = red.free_cols.len();
        let m = red.ineqs.len();
        let art_start = 2 * nf + m;
        let n_art = red.ineqs.iter().filter(|r| r.rhs.is_negative()).count();
        let ncols = art_start + n_art;

        let mut t = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut negated = Vec::with_capacity(m);
        let mut slack_col = Vec::with_capacity(m);
        let mut art_col = Vec::with_capacity(m);
        let mut next_art = art_start;
        for (i, row) in red.ineqs.iter().enumerate() {
            let flip = row.rhs.is_negative();
            let mut trow = vec![Rational::zero(); ncols];
            for (f, &j) in red.free_cols.iter().enumerate() {
                let a = &row.coef[j];
                if a.is_zero() {
                    continue;
                }
                let a = if flip { a.neg_ref() } else { a.clone() };
                trow[nf + f] = a.neg_ref();
                trow[f] = a;
            }
            let s = 2 * nf + i;
            trow[s] = if flip { Rational::from_int(-1) } else { Rational::one() };
            let b = if flip { row.rhs.neg_ref() } else { row.rhs.clone() };
            let bas = if flip {
                let a = next_art;
                next_art += 1;
                trow[a] = Rational::one();
                art_col.push(Some(a));
                a
            } else {
                art_col.push(None);
                s
            };
            t.push(trow);
            rhs.push(b);
            basis.push(bas);
            negated.push(flip);
            slack_col.push(s);
        }
        Simplex {
            nf,
            ncols,
            art_start,
            t,
            rhs,
            basis,
            rc: vec![Rational::zero(); ncols],
            negated,
            slack_col,
            art_col,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one().div_ref(&self.t[r][c]);
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        self.rhs[r] = self.rhs[r].mul_ref(&inv);
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        for k in 0..self.t.len() {
            if k == r {
                continue;
            }
            let f = self.t[k][c].clone();
            if f.is_zero() {
                continue;
            }
            for (x, s) in self.t[k].iter_mut().zip(&prow) {
                if !s.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(s));
                }
            }
            self.rhs[k] = self.rhs[k].sub_ref(&f.mul_ref(&prhs));
        }
        let f = self.rc[c].clone();
        if !f.is_zero() {
            for (x, s) in self.rc.iter_mut().zip(&prow) {
                if !s.is_zero() {
                    *x = x.sub_ref(&f.mul_ref(s));
                }
            }
        }
        self.basis[r] = c;
    }

    /// Bland iteration: minimize the priced-out objective in `self.rc` over
    /// columns below `col_limit`.
    fn bland(&mut self, col_limit: usize) -> Phase2End {
        loop {
            let Some(c) = (0..col_limit).find(|&c| self.rc[c].is_negative()) else {
                return Phase2End::Optimal;
            };
            let mut best: Option<usize> = None;
            let mut best_ratio = Rational::zero();
            for i in 0..self.t.len() {
                if !self.t[i][c].is_positive() {
                    continue;
                }
                let ratio = self.rhs[i].div_ref(&self.t[i][c]);
                let take = match best {
                    None => true,
                    Some(bi) => {
                        ratio < best_ratio || (ratio == best_ratio && self.basis[i] < self.basis[bi])
                    }
                };
                if take {
                    best = Some(i);
                    best_ratio = ratio;
                }
            }
            let Some(r) = best else {
                return Phase2End::Unbounded;
            };
            self.pivot(r, c);
        }
    }

    /// Minimizes the artificial total. `Ok` means the system is feasible;
    /// `Err` carries one non-negative multiplier per reduced row proving it
    /// is not.
    fn phase1(&mut self) -> Result<(), Vec<Rational>> {
        for x in self.rc.iter_mut() {
            *x = Rational::zero();
        }
        for c in self.art_start..self.ncols {
            self.rc[c] = Rational::one();
        }
        // Price out the artificial basics (cost one each).
        for i in 0..self.t.len() {
            if self.basis[i] >= self.art_start {
                let row = self.t[i].clone();
                let rrhs = self.rhs[i].clone();
                for (x, s) in self.rc.iter_mut().zip(&row) {
                    if !s.is_zero() {
                        *x = x.sub_ref(s);
                    }
                }
                let _ = rrhs;
            }
        }
        match self.bland(self.ncols) {
            Phase2End::Unbounded => unreachable!("a non-negative total cannot be unbounded below"),
            Phase2End::Optimal => {}
        }
        let mut total = Rational::zero();
        for i in 0..self.t.len() {
            if self.basis[i] >= self.art_start {
                total = total.add_ref(&self.rhs[i]);
            }
        }
        if total.is_zero() {
            return Ok(());
        }
        // Read the duals off the columns that started as unit vectors: the
        // artificial where one exists (cost one), the slack otherwise (cost
        // zero), then undo the sign flips.
        let mut y = Vec::with_capacity(self.t.len());
        for i in 0..self.t.len() {
            let pi = match self.art_col[i] {
                Some(a) => Rational::one().sub_ref(&self.rc[a]),
                None => self.rc[self.slack_col[i]].neg_ref(),
            };
            let yi = if self.negated[i] { pi } else { pi.neg_ref() };
            assert!(!yi.is_negative(), "internal error: negative inequality multiplier");
            y.push(yi);
        }
        Err(y)
    }

    /// Pivots basic artificials out (or drops their rows as redundant) so
    /// phase 2 can never re-grow them.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.t.len() {
            if self.basis[i] < self.art_start {
                i += 1;
                continue;
            }
            match (0..self.art_start).find(|&c| !self.t[i][c].is_zero()) {
                Some(c) => {
                    self.pivot(i, c);
                    i += 1;
                }
                None => {
                    self.t.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }

    /// Minimizes `sum(cost[f] * x_f)` from the current feasible basis.
    fn phase2(&mut self, cost: &[Rational]) -> Phase2End {
        assert_eq!(cost.len(), self.nf);
        for x in self.rc.iter_mut() {
            *x = Rational::zero();
        }
        for (f, cf) in cost.iter().enumerate() {
            self.rc[f] = cf.clone();
            self.rc[self.nf + f] = cf.neg_ref();
        }
        for i in 0..self.t.len() {
            let gamma = self.rc[self.basis[i]].clone();
            if !gamma.is_zero() {
                let row = self.t[i].clone();
                for (x, s) in self.rc.iter_mut().zip(&row) {
                    if !s.is_zero() {
                        *x = x.sub_ref(&gamma.mul_ref(s));
                    }
                }
            }
        }
        self.bland(self.art_start)
    }

    /// Values of the free variables as plus-part minus minus-part.
    fn free_values(&self) -> Vec<Rational> {
        let mut vals = vec![Rational::zero(); self.nf];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.nf {
                vals[b] = vals[b].add_ref(&self.rhs[i]);
            } else if b < 2 * self.nf {
                vals[b - self.nf] = vals[b - self.nf].sub_ref(&self.rhs[i]);
            }
        }
        vals
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn contradictory_sign_pair_yields_unit_multipliers() {
        // -x <= 0 and x <= -1 cannot both hold; the certificate is (1, 1).
        let mut p = Problem::new(1);
        p.push_le(vec![(0, -1)], 0);
        p.push_le(vec![(0, 1)], -1);
        match solve_feasibility(&p) {
            FeasibilityResult::Infeasible { farkas } => {
                assert_eq!(farkas, vec![rat(1), rat(1)]);
            }
            FeasibilityResult::Feasible { .. } => panic!("expected infeasible"),
        }
    }

    #[test]
    fn equality_contradiction_is_caught_before_simplex() {
        let mut p = Problem::new(1);
        p.push_eq(vec![(0, 1)], 1);
        p.push_eq(vec![(0, 1)], 2);
        match solve_feasibility(&p) {
            FeasibilityResult::Infeasible { farkas } => {
                assert!(verify_farkas(&p, &farkas));
            }
            FeasibilityResult::Feasible { .. } => panic!("expected infeasible"),
        }
    }

    #[test]
    fn equalities_can_combine_with_an_inequality_to_refute() {
        // x + y = 3 and x - y = 1 force x = 2, contradicting x <= 1.
        let mut p = Problem::new(2);
        p.push_eq(vec![(0, 1), (1, 1)], 3);
        p.push_eq(vec![(0, 1), (1, -1)], 1);
        p.push_le(vec![(0, 1)], 1);
        match solve_feasibility(&p) {
            FeasibilityResult::Infeasible { farkas } => {
                assert!(verify_farkas(&p, &farkas));
                assert!(!farkas[2].is_negative());
            }
            FeasibilityResult::Feasible { .. } => panic!("expected infeasible"),
        }
    }

    #[test]
    fn feasible_system_returns_a_checked_point() {
        let mut p = Problem::new(2);
        p.push_eq(vec![(0, 1), (1, 1)], 4);
        p.push_le(vec![(0, -1)], -1); // x >= 1
        p.push_le(vec![(1, -1)], 0); // y >= 0
        match solve_feasibility(&p) {
            FeasibilityResult::Feasible { point } => {
                assert!(verify_feasible(&p, &point));
                assert_eq!(point[0].add_ref(&point[1]), rat(4));
            }
            FeasibilityResult::Infeasible { .. } => panic!("expected feasible"),
        }
    }

    #[test]
    fn optimize_over_a_box() {
        // 0 <= x <= 5, 0 <= y <= 3, maximize x + 2y = 11 at (5, 3).
        let mut p = Problem::new(2);
        p.push_le(vec![(0, 1)], 5);
        p.push_le(vec![(0, -1)], 0);
        p.push_le(vec![(1, 1)], 3);
        p.push_le(vec![(1, -1)], 0);
        match optimize(&p, &[(0, 1), (1, 2)], Sense::Maximize) {
            Optimum::Optimal { value, point } => {
                assert_eq!(value, rat(11));
                assert_eq!(point, vec![rat(5), rat(3)]);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
        match optimize(&p, &[(0, 1), (1, 2)], Sense::Minimize) {
            Optimum::Optimal { value, .. } => assert_eq!(value, rat(0)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // 2x <= 1 with x >= 0: maximum of x is exactly one half.
        let mut p = Problem::new(1);
        p.push_le(vec![(0, 2)], 1);
        p.push_le(vec![(0, -1)], 0);
        match optimize(&p, &[(0, 1)], Sense::Maximize) {
            Optimum::Optimal { value, .. } => assert_eq!(value, Rational::new(1, 2)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_direction_is_reported() {
        let mut p = Problem::new(2);
        p.push_le(vec![(0, -1)], 0); // x >= 0, y free
        assert!(matches!(optimize(&p, &[(0, 1)], Sense::Maximize), Optimum::Unbounded));
        assert!(matches!(optimize(&p, &[(1, 1)], Sense::Minimize), Optimum::Unbounded));
        // But x is bounded below.
        match optimize(&p, &[(0, 1)], Sense::Minimize) {
            Optimum::Optimal { value, .. } => assert_eq!(value, rat(0)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn optimize_reports_infeasible_systems() {
        let mut p = Problem::new(1);
        p.push_le(vec![(0, 1)], -1);
        p.push_le(vec![(0, -1)], 0);
        assert!(matches!(optimize(&p, &[(0, 1)], Sense::Maximize), Optimum::Infeasible));
    }

    #[test]
    fn fixing_variables_restricts_the_range() {
        // x + y <= 10, x, y >= 0; with x pinned to 7 the best y is 3.
        let mut p = Problem::new(2);
        p.push_le(vec![(0, 1), (1, 1)], 10);
        p.push_le(vec![(0, -1)], 0);
        p.push_le(vec![(1, -1)], 0);
        match optimize_with_fixed(&p, &[(0, 7)], &[(1, 1)], Sense::Maximize) {
            Optimum::Optimal { value, point } => {
                assert_eq!(value, rat(3));
                assert_eq!(point[0], rat(7));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
        assert!(matches!(
            optimize_with_fixed(&p, &[(0, 11)], &[(1, 1)], Sense::Maximize),
            Optimum::Infeasible
        ));
    }

    #[test]
    fn empty_problem_is_feasible_at_origin() {
        let p = Problem::new(3);
        match solve_feasibility(&p) {
            FeasibilityResult::Feasible { point } => assert_eq!(point, vec![rat(0); 3]),
            FeasibilityResult::Infeasible { .. } => panic!("expected feasible"),
        }
    }

    #[test]
    fn duplicate_lhs_entries_accumulate() {
        // x + x <= 4 means x <= 2.
        let mut p = Problem::new(1);
        p.push_le(vec![(0, 1), (0, 1)], 4);
        p.push_le(vec![(0, -1)], 0);
        match optimize(&p, &[(0, 1)], Sense::Maximize) {
            Optimum::Optimal { value, .. } => assert_eq!(value, rat(2)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_candidate_terminates() {
        // A classic degenerate vertex; Bland's rule must still terminate.
        let mut p = Problem::new(4);
        for j in 0..4 {
            p.push_le(vec![(j, -1)], 0);
        }
        p.push_le(vec![(0, 1), (1, -8), (2, -1), (3, 9)], 0);
        p.push_le(vec![(0, 1), (1, -12), (2, -1), (3, 3)], 0);
        p.push_le(vec![(2, 1)], 1);
        match optimize(&p, &[(0, -3), (1, 4), (2, 1), (3, -44)], Sense::Minimize) {
            Optimum::Optimal { value, point } => {
                assert!(verify_feasible(&p, &point));
                assert!(value <= rat(0));
            }
            Optimum::Unbounded => {}
            Optimum::Infeasible => panic!("system contains the origin"),
        }
    }

    /// A tiny brute-force reference: feasibility of interval systems.
    #[test]
    fn interval_intersections_agree_with_direct_reasoning() {
        for lo in -3i64..=3 {
            for hi in -3i64..=3 {
                let mut p = Problem::new(1);
                p.push_le(vec![(0, -1)], -lo); // x >= lo
                p.push_le(vec![(0, 1)], hi); // x <= hi
                let feasible = matches!(solve_feasibility(&p), FeasibilityResult::Feasible { .. });
                assert_eq!(feasible, lo <= hi, "lo={lo} hi={hi}");
            }
        }
    }

    proptest! {
        // Random small systems: whichever answer comes back must verify.
        #[test]
        fn outcomes_always_carry_valid_proof(
            rows in proptest::collection::vec(
                (proptest::collection::vec(-4i64..=4, 3), -5i64..=5, proptest::bool::ANY),
                0..6,
            )
        ) {
            let mut p = Problem::new(3);
            for (coefs, rhs, is_eq) in rows {
                let lhs: Vec<(usize, i64)> =
                    coefs.iter().enumerate().map(|(j, &c)| (j, c)).collect();
                if is_eq {
                    p.push_eq(lhs, rhs);
                } else {
                    p.push_le(lhs, rhs);
                }
            }
            match solve_feasibility(&p) {
                FeasibilityResult::Feasible { point } => prop_assert!(verify_feasible(&p, &point)),
                FeasibilityResult::Infeasible { farkas } => prop_assert!(verify_farkas(&p, &farkas)),
            }
        }

        // Optimal values are consistent with feasibility of the level set.
        #[test]
        fn optimum_is_attained_and_tight(
            rows in proptest::collection::vec(
                (proptest::collection::vec(-3i64..=3, 2), 0i64..=6),
                1..5,
            )
        ) {
            let mut p = Problem::new(2);
            // Keep the box bounded so Optimal is the only outcome.
            p.push_le(vec![(0, 1)], 5);
            p.push_le(vec![(0, -1)], 5);
            p.push_le(vec![(1, 1)], 5);
            p.push_le(vec![(1, -1)], 5);
            for (coefs, rhs) in rows {
                let lhs: Vec<(usize, i64)> =
                    coefs.iter().enumerate().map(|(j, &c)| (j, c)).collect();
                p.push_le(lhs, rhs);
            }
            match optimize(&p, &[(0, 1), (1, 1)], Sense::Maximize) {
                Optimum::Optimal { value, point } => {
                    prop_assert!(verify_feasible(&p, &point));
                    prop_assert_eq!(point[0].add_ref(&point[1]), value.clone());
                    // Demanding strictly more must be infeasible. The value
                    // may be fractional, so scale the demand row instead of
                    // rounding: 2(x + y) >= 2 value + 1 exceeds the optimum
                    // whenever value has denominator 1 or 2.
                    let twice = value.add_ref(&value);
                    if twice.is_integer() {
                        let mut q = p.clone();
                        q.push_le(vec![(0, -2), (1, -2)], -(twice.floor_i64() + 1));
                        let refuted =
                            matches!(solve_feasibility(&q), FeasibilityResult::Infeasible { .. });
                        prop_assert!(refuted);
                    }
                }
                Optimum::Unbounded => prop_assert!(false, "box is bounded"),
                Optimum::Infeasible => prop_assert!(false, "origin is feasible"),
            }
        }
    }
}
