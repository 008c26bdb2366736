//! Symbolic building blocks for hive constraint systems.
//!
//! A hive of size `n` is a triangular array `h[i][j]` (`0 <= j <= i <= n`)
//! whose three boundary edge-difference sequences are pinned to prescribed
//! weights and whose interior satisfies one rhombus inequality per unit
//! rhombus and orientation. The number of integer hives with boundary
//! `(a, b, c)` is the invariant-dimension of the triple, and longer tuples
//! factor through a chain of hives glued along fresh auxiliary weights.
//!
//! Everything here is symbolic: rows mention variable ids (entries of the
//! unknown weights and hives) and parameter ids (entries of the prescribed
//! weights), each with coefficient `1` or `-1`, and are instantiated later.

use crate::exactlp::Rel;

/// What a flat LP variable stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// Coordinate `coord` of the weight attached to arrow `arrow`.
    ArrowWeight { arrow: usize, coord: usize },
    /// Coordinate of a fresh gluing weight inside block `block` at
    /// recursion depth `level`.
    AuxWeight { block: usize, level: usize, coord: usize },
    /// Hive entry `h[row][col]` of the hive in block `block` at depth
    /// `level`.
    HiveEntry { block: usize, level: usize, row: usize, col: usize },
}

/// Allocates flat variable indices and remembers what each one means.
#[derive(Debug, Default)]
pub struct VarPool {
    kinds: Vec<VarKind>,
}

impl VarPool {
    pub fn new() -> VarPool {
        VarPool::default()
    }

    pub fn fresh(&mut self, kind: VarKind) -> usize {
        self.kinds.push(kind);
        self.kinds.len() - 1
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn kinds(&self) -> &[VarKind] {
        &self.kinds
    }

    pub fn into_kinds(self) -> Vec<VarKind> {
        self.kinds
    }
}

/// One coordinate of a symbolic weight: a signed parameter, a signed
/// variable, or a literal zero (used when short weights are zero-extended).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Zero,
    Param { id: usize, neg: bool },
    Var { id: usize, neg: bool },
}

impl Atom {
    fn negated(self) -> Atom {
        match self {
            Atom::Zero => Atom::Zero,
            Atom::Param { id, neg } => Atom::Param { id, neg: !neg },
            Atom::Var { id, neg } => Atom::Var { id, neg: !neg },
        }
    }
}

/// A symbolic weight: an ordered list of coordinate atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSlot {
    atoms: Vec<Atom>,
}

impl WeightSlot {
    pub fn from_params(ids: impl IntoIterator<Item = usize>) -> WeightSlot {
        WeightSlot { atoms: ids.into_iter().map(|id| Atom::Param { id, neg: false }).collect() }
    }

    pub fn from_vars(ids: impl IntoIterator<Item = usize>) -> WeightSlot {
        WeightSlot { atoms: ids.into_iter().map(|id| Atom::Var { id, neg: false }).collect() }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Coordinate `i`, zero-based.
    pub fn atom(&self, i: usize) -> Atom {
        self.atoms[i]
    }

    /// The dual weight: coordinates reversed and negated.
    pub fn dual(&self) -> WeightSlot {
        WeightSlot { atoms: self.atoms.iter().rev().map(|a| a.negated()).collect() }
    }

    /// Truncates to the first `m` coordinates or zero-extends up to `m`.
    ///
    /// Truncation is only sound when the dropped coordinates are forced to
    /// zero elsewhere in the system; the arrow-domain rows guarantee that.
    pub fn resized(&self, m: usize) -> WeightSlot {
        let mut atoms: Vec<Atom> = self.atoms.iter().copied().take(m).collect();
        atoms.resize(m, Atom::Zero);
        WeightSlot { atoms }
    }
}

/// Structural tag of a row, for audits and structure-aware tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowKind {
    /// Rhombus inequality inside a hive.
    Rhombus,
    /// Left-edge difference of a hive equals a prescribed coordinate.
    BoundaryLeft,
    /// Bottom-edge difference of a hive.
    BoundaryBottom,
    /// Right-edge difference of a hive.
    BoundaryRight,
    /// The top corner entry of a hive is zero.
    Corner,
    /// The three boundary weights of a hive sum to zero.
    Compatibility,
    /// A single-slot block forces every coordinate to zero.
    KtEquation,
    /// A two-slot block forces the slots to be mutually dual.
    DualPair,
    /// Consecutive coordinates of an unknown weight are weakly decreasing.
    Decreasing,
    /// The last coordinate of an arrow weight is non-negative.
    NonNeg,
    /// A trailing arrow-weight coordinate is forced to zero by the target
    /// dimension.
    ZeroRow,
}

/// One symbolic constraint: variable terms on the left, parameter terms on
/// the right, every coefficient `1` or `-1` by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicRow {
    pub lhs: Vec<(usize, i32)>,
    pub rel: Rel,
    pub rhs: Vec<(usize, i32)>,
    pub kind: RowKind,
}

impl SymbolicRow {
    fn new(rel: Rel, kind: RowKind) -> SymbolicRow {
        SymbolicRow { lhs: Vec::new(), rel, rhs: Vec::new(), kind }
    }

    fn var(mut self, id: usize, coeff: i32) -> SymbolicRow {
        self.lhs.push((id, coeff));
        self
    }

    /// Adds `mult * atom` to the left side of the equation `expr REL 0`;
    /// parameter atoms move across the relation with flipped sign.
    fn atom(mut self, atom: Atom, mult: i32) -> SymbolicRow {
        match atom {
            Atom::Zero => {}
            Atom::Var { id, neg } => self.lhs.push((id, if neg { -mult } else { mult })),
            Atom::Param { id, neg } => self.rhs.push((id, if neg { mult } else { -mult })),
        }
        self
    }
}

/// Emits the constraint system of one hive of size `n` with boundary
/// weights `(a, b, c)`: going clockwise from the top corner, the left edge
/// steps by the coordinates of `a`, the bottom edge by those of `b`, and
/// the right edge steps by the dual of `c`, so that the three weights sum
/// to zero on any closed boundary walk.
///
/// Fresh hive entries are drawn from `pool` under `(block, level)`.
pub fn hive_block(
    pool: &mut VarPool,
    block: usize,
    level: usize,
    n: usize,
    a: &WeightSlot,
    b: &WeightSlot,
    c: &WeightSlot,
) -> Vec<SymbolicRow> {
    assert!(n >= 1);
    assert!(a.len() == n && b.len() == n && c.len() == n, "boundary weights must have length n");
    let h: Vec<Vec<usize>> = (0..=n)
        .map(|i| {
            (0..=i).map(|j| pool.fresh(VarKind::HiveEntry { block, level, row: i, col: j })).collect()
        })
        .collect();

    let mut rows = Vec::new();
    // Left edge: h[i][0] - h[i-1][0] = a_i.
    for i in 1..=n {
        rows.push(
            SymbolicRow::new(Rel::Eq, RowKind::BoundaryLeft)
                .var(h[i][0], 1)
                .var(h[i - 1][0], -1)
                .atom(a.atom(i - 1), -1),
        );
    }
    // Bottom edge: h[n][j] - h[n][j-1] = b_j.
    for j in 1..=n {
        rows.push(
            SymbolicRow::new(Rel::Eq, RowKind::BoundaryBottom)
                .var(h[n][j], 1)
                .var(h[n][j - 1], -1)
                .atom(b.atom(j - 1), -1),
        );
    }
    // Right edge: h[i][i] - h[i-1][i-1] = -c_{n+1-i}.
    for i in 1..=n {
        rows.push(
            SymbolicRow::new(Rel::Eq, RowKind::BoundaryRight)
                .var(h[i][i], 1)
                .var(h[i - 1][i - 1], -1)
                .atom(c.atom(n - i), 1),
        );
    }
    rows.push(SymbolicRow::new(Rel::Eq, RowKind::Corner).var(h[0][0], 1));
    {
        let mut compat = SymbolicRow::new(Rel::Eq, RowKind::Compatibility);
        for slot in [a, b, c] {
            for i in 0..n {
                compat = compat.atom(slot.atom(i), 1);
            }
        }
        rows.push(compat);
    }
    // Rhombus inequalities: in each orientation the two entries on the
    // shared (obtuse) diagonal weigh at least the two acute corners.
    for i in 1..n {
        for j in 0..i {
            rows.push(
                SymbolicRow::new(Rel::Le, RowKind::Rhombus)
                    .var(h[i - 1][j], 1)
                    .var(h[i + 1][j + 1], 1)
                    .var(h[i][j], -1)
                    .var(h[i][j + 1], -1),
            );
        }
    }
    for i in 1..n {
        for j in 1..=i {
            rows.push(
                SymbolicRow::new(Rel::Le, RowKind::Rhombus)
                    .var(h[i][j - 1], 1)
                    .var(h[i + 1][j + 1], 1)
                    .var(h[i][j], -1)
                    .var(h[i + 1][j], -1),
            );
        }
    }
    for i in 1..n {
        for j in 0..i {
            rows.push(
                SymbolicRow::new(Rel::Le, RowKind::Rhombus)
                    .var(h[i + 1][j], 1)
                    .var(h[i][j + 1], 1)
                    .var(h[i][j], -1)
                    .var(h[i + 1][j + 1], -1),
            );
        }
    }
    rows
}

/// Emits the constraint block whose integer points are counted by the
/// invariant dimension of the tuple of weights in `slots` (all of length
/// `n`).
///
/// No slots means no constraints; one slot must vanish; two slots must be
/// mutually dual; three slots form a single hive. Longer tuples introduce a
/// fresh weakly decreasing weight `mu`, recurse on the first `s - 2` slots
/// prefixed by the dual of `mu`, and close with a hive gluing `mu` to the
/// last two slots — summing hive counts over all `mu` realizes the
/// factorization of the invariant dimension through intermediate weights.
pub fn kt_block(
    pool: &mut VarPool,
    block: usize,
    depth: usize,
    n: usize,
    slots: &[WeightSlot],
) -> Vec<SymbolicRow> {
    assert!(n >= 1);
    for slot in slots {
        assert_eq!(slot.len(), n, "every slot must have length n");
    }
    match slots.len() {
        0 => Vec::new(),
        1 => (0..n)
            .map(|i| SymbolicRow::new(Rel::Eq, RowKind::KtEquation).atom(slots[0].atom(i), 1))
            .collect(),
        2 => (0..n)
            .map(|i| {
                SymbolicRow::new(Rel::Eq, RowKind::DualPair)
                    .atom(slots[1].atom(i), 1)
                    .atom(slots[0].atom(n - 1 - i), 1)
            })
            .collect(),
        3 => hive_block(pool, block, depth, n, &slots[0], &slots[1], &slots[2]),
        s => {
            let mu_ids: Vec<usize> =
                (0..n).map(|k| pool.fresh(VarKind::AuxWeight { block, level: depth, coord: k })).collect();
            let mu = WeightSlot::from_vars(mu_ids.iter().copied());
            let mut rows: Vec<SymbolicRow> = (1..n)
                .map(|k| {
                    SymbolicRow::new(Rel::Le, RowKind::Decreasing)
                        .var(mu_ids[k], 1)
                        .var(mu_ids[k - 1], -1)
                })
                .collect();
            let mut rec_slots = Vec::with_capacity(s - 1);
            rec_slots.push(mu.dual());
            rec_slots.extend_from_slice(&slots[..s - 2]);
            rows.extend(kt_block(pool, block, depth + 1, n, &rec_slots));
            rows.extend(hive_block(pool, block, depth, n, &mu, &slots[s - 2], &slots[s - 1]));
            rows
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn param_slot(n: usize, base: usize) -> WeightSlot {
        WeightSlot::from_params(base..base + n)
    }

    #[test]
    fn weight_slot_dual_reverses_and_negates() {
        let s = WeightSlot::from_params([0, 1, 2]);
        let d = s.dual();
        assert_eq!(d.atom(0), Atom::Param { id: 2, neg: true });
        assert_eq!(d.atom(2), Atom::Param { id: 0, neg: true });
        assert_eq!(d.dual(), s);
    }

    #[test]
    fn weight_slot_resize_truncates_or_pads_with_zero() {
        let s = WeightSlot::from_vars([5, 6, 7]);
        assert_eq!(s.resized(2).atom(1), Atom::Var { id: 6, neg: false });
        let padded = s.resized(5);
        assert_eq!(padded.atom(2), Atom::Var { id: 7, neg: false });
        assert_eq!(padded.atom(3), Atom::Zero);
        assert_eq!(padded.atom(4), Atom::Zero);
    }

    fn row_count_of_kind(rows: &[SymbolicRow], kind: RowKind) -> usize {
        rows.iter().filter(|r| r.kind == kind).count()
    }

    #[test]
    fn hive_block_sizes_follow_the_triangle() {
        for n in 1..=4 {
            let mut pool = VarPool::new();
            let rows = hive_block(
                &mut pool,
                1,
                0,
                n,
                &param_slot(n, 0),
                &param_slot(n, n),
                &param_slot(n, 2 * n),
            );
            assert_eq!(pool.len(), (n + 1) * (n + 2) / 2);
            assert_eq!(row_count_of_kind(&rows, RowKind::Rhombus), 3 * n * (n - 1) / 2);
            assert_eq!(row_count_of_kind(&rows, RowKind::BoundaryLeft), n);
            assert_eq!(row_count_of_kind(&rows, RowKind::BoundaryBottom), n);
            assert_eq!(row_count_of_kind(&rows, RowKind::BoundaryRight), n);
            assert_eq!(row_count_of_kind(&rows, RowKind::Corner), 1);
            assert_eq!(row_count_of_kind(&rows, RowKind::Compatibility), 1);
            assert_eq!(rows.len(), 3 * n + 2 + 3 * n * (n - 1) / 2);
        }
    }

    #[test]
    fn every_hive_coefficient_is_a_sign() {
        let mut pool = VarPool::new();
        let rows =
            hive_block(&mut pool, 1, 0, 3, &param_slot(3, 0), &param_slot(3, 3), &param_slot(3, 6));
        for row in &rows {
            for &(_, c) in row.lhs.iter().chain(&row.rhs) {
                assert!(c == 1 || c == -1);
            }
        }
    }

    #[test]
    fn single_slot_block_pins_every_coordinate() {
        let mut pool = VarPool::new();
        let rows = kt_block(&mut pool, 1, 0, 3, &[param_slot(3, 0)]);
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.kind == RowKind::KtEquation && r.rel == Rel::Eq));
        assert_eq!(pool.len(), 0);
    }

    #[test]
    fn two_slot_block_matches_coordinates_dually() {
        let mut pool = VarPool::new();
        let rows = kt_block(&mut pool, 1, 0, 2, &[param_slot(2, 0), param_slot(2, 2)]);
        assert_eq!(rows.len(), 2);
        // Row i says slot2_i + slot1_{n+1-i} = 0; as parameters both move
        // to the right-hand side with flipped sign.
        assert_eq!(rows[0].rhs, vec![(2, -1), (1, -1)]);
        assert_eq!(rows[1].rhs, vec![(3, -1), (0, -1)]);
        assert_eq!(pool.len(), 0);
    }

    #[test]
    fn four_slot_block_glues_two_hives_through_a_fresh_weight() {
        let n = 2;
        let mut pool = VarPool::new();
        let slots: Vec<WeightSlot> = (0..4).map(|k| param_slot(n, k * n)).collect();
        let rows = kt_block(&mut pool, 7, 0, n, &slots);
        let aux: Vec<&VarKind> = pool
            .kinds()
            .iter()
            .filter(|k| matches!(k, VarKind::AuxWeight { .. }))
            .collect();
        assert_eq!(aux.len(), n);
        assert!(aux
            .iter()
            .all(|k| matches!(k, VarKind::AuxWeight { block: 7, level: 0, .. })));
        let hives = pool
            .kinds()
            .iter()
            .filter(|k| matches!(k, VarKind::HiveEntry { .. }))
            .count();
        assert_eq!(hives, 2 * (n + 1) * (n + 2) / 2);
        assert_eq!(row_count_of_kind(&rows, RowKind::Decreasing), n - 1);
        assert_eq!(row_count_of_kind(&rows, RowKind::Rhombus), 2 * 3 * n * (n - 1) / 2);
        // Depth tags separate the two hives.
        let depth0 = pool
            .kinds()
            .iter()
            .filter(|k| matches!(k, VarKind::HiveEntry { level: 0, .. }))
            .count();
        let depth1 = pool
            .kinds()
            .iter()
            .filter(|k| matches!(k, VarKind::HiveEntry { level: 1, .. }))
            .count();
        assert_eq!(depth0, (n + 1) * (n + 2) / 2);
        assert_eq!(depth1, (n + 1) * (n + 2) / 2);
    }

    #[test]
    fn five_slot_block_recursion_adds_one_weight_per_extra_slot() {
        let n = 3;
        let mut pool = VarPool::new();
        let slots: Vec<WeightSlot> = (0..5).map(|k| param_slot(n, k * n)).collect();
        let rows = kt_block(&mut pool, 1, 0, n, &slots);
        let aux = pool
            .kinds()
            .iter()
            .filter(|k| matches!(k, VarKind::AuxWeight { .. }))
            .count();
        assert_eq!(aux, 2 * n); // one fresh weight at depth 0, one at depth 1
        let hives = pool
            .kinds()
            .iter()
            .filter(|k| matches!(k, VarKind::HiveEntry { .. }))
            .count();
        assert_eq!(hives, 3 * (n + 1) * (n + 2) / 2);
        assert_eq!(row_count_of_kind(&rows, RowKind::Decreasing), 2 * (n - 1));
    }
}
