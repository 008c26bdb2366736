//! Independent representation-theoretic reference computations.
//!
//! Everything in this module is pure partition combinatorics: skew tableaux
//! with the lattice-word condition, iterated tensor decompositions, and
//! integer flow enumeration. None of it touches the polytope or LP machinery,
//! so it serves as an independent cross-check for those paths.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::quiver::{d_map, dual_weight, DimensionVector, Quiver, Weight, WeightFamily};

/// A partition: weakly decreasing positive parts, stored without trailing
/// zeros. `Partition::part(i)` reads 0 beyond the last row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Partition> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) || parts.iter().any(|&p| p < 0) {
            return Err(Error::NotDominant(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// Converts a polynomial dominant weight, dropping trailing zeros.
    pub fn from_weight(w: &Weight) -> Result<Partition> {
        Partition::new(w.entries().to_vec())
    }

    /// Pads back out to a weight of length `len` (which must fit all rows).
    pub fn to_weight(&self, len: usize) -> Weight {
        let mut e = self.0.clone();
        assert!(e.len() <= len, "partition has more than {len} rows");
        e.resize(len, 0);
        Weight::new(e)
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn part(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        (0..inner.num_rows()).all(|i| self.part(i) >= inner.part(i))
    }
}

fn lr_memo() -> &'static RwLock<HashMap<(Vec<i64>, Vec<i64>, Vec<i64>), u64>> {
    static MEMO: OnceLock<RwLock<HashMap<(Vec<i64>, Vec<i64>, Vec<i64>), u64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The multiplicity `c^nu_{lam,mu}` of the Schur function for `nu` in the
/// product of those for `lam` and `mu`.
///
/// Counted as skew semistandard fillings of `nu/lam` with content `mu` whose
/// reverse reading word (rows top to bottom, right to left within a row) is a
/// lattice word. Memoized; concurrent readers are safe and every key has one
/// canonical value.
pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lam.size() + mu.size() != nu.size() || !nu.contains(lam) {
        return 0;
    }
    if mu.num_rows() == 0 {
        return 1; // nu == lam by the size check
    }
    let key = (lam.0.clone(), mu.0.clone(), nu.0.clone());
    if let Some(&hit) = lr_memo().read().unwrap().get(&key) {
        return hit;
    }
    let count = count_lr_fillings(lam, mu, nu);
    lr_memo().write().unwrap().insert(key, count);
    count
}

/// Depth-first enumeration over the cells of `nu/lam` in reading order, so
/// the ballot condition can be enforced one letter at a time.
fn count_lr_fillings(lam: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let rows = nu.num_rows();
    let values = mu.num_rows();
    // Reading order: each entry is (row, col), cols right-to-left per row.
    let mut cells = Vec::new();
    for i in 0..rows {
        for j in (lam.part(i)..nu.part(i)).rev() {
            cells.push((i, j));
        }
    }
    let mut filling: HashMap<(i64, i64), usize> = HashMap::new();
    let mut used = vec![0i64; values + 1];
    fn recurse(
        pos: usize,
        cells: &[(usize, i64)],
        lam: &Partition,
        mu: &Partition,
        nu: &Partition,
        filling: &mut HashMap<(i64, i64), usize>,
        used: &mut Vec<i64>,
    ) -> u64 {
        if pos == cells.len() {
            return 1;
        }
        let (i, j) = cells[pos];
        let mut total = 0u64;
        for v in 1..used.len() {
            if used[v] >= mu.part(v - 1) {
                continue; // content exhausted
            }
            if v > 1 && used[v] >= used[v - 1] {
                continue; // ballot: prefix counts must stay weakly decreasing
            }
            // Weak increase along the row (right neighbour was filled first).
            if j + 1 < nu.part(i) {
                if let Some(&right) = filling.get(&(i as i64, j + 1)) {
                    if v > right {
                        continue;
                    }
                }
            }
            // Strict increase down the column, among filled cells only.
            if i > 0 && j >= lam.part(i - 1) && j < nu.part(i - 1) {
                let above = filling[&(i as i64 - 1, j)];
                if v <= above {
                    continue;
                }
            }
            filling.insert((i as i64, j), v);
            used[v] += 1;
            total += recurse(pos + 1, cells, lam, mu, nu, filling, used);
            used[v] -= 1;
            filling.remove(&(i as i64, j));
        }
        total
    }
    recurse(0, &cells, lam, mu, nu, &mut filling, &mut used)
}

fn tensor_memo() -> &'static RwLock<HashMap<(Vec<i64>, Vec<i64>), Vec<(Partition, u64)>>> {
    static MEMO: OnceLock<RwLock<HashMap<(Vec<i64>, Vec<i64>), Vec<(Partition, u64)>>>> =
        OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Decomposes the product of two Schur functions into Schur functions:
/// all `nu` with `c^nu_{alpha,beta} > 0`, with multiplicities, sorted.
/// The row count of any `nu` is at most `rows(alpha) + rows(beta)`; callers
/// working inside a fixed rank filter on row count themselves.
pub fn tensor_pair(alpha: &Partition, beta: &Partition) -> Vec<(Partition, u64)> {
    let key = (alpha.0.clone(), beta.0.clone());
    if let Some(hit) = tensor_memo().read().unwrap().get(&key) {
        return hit.clone();
    }
    let mut out: Vec<(Partition, u64)> = Vec::new();
    let max_rows = alpha.num_rows() + beta.num_rows();
    let total = alpha.size() + beta.size();
    let cap = alpha.part(0) + beta.part(0);
    let mut rows: Vec<i64> = Vec::new();
    fn candidates(
        rows: &mut Vec<i64>,
        remaining: i64,
        max_rows: usize,
        cap: i64,
        alpha: &Partition,
        beta: &Partition,
        out: &mut Vec<(Partition, u64)>,
    ) {
        if remaining == 0 {
            let nu = Partition(rows.clone());
            let c = lr_coefficient(alpha, beta, &nu);
            if c > 0 {
                out.push((nu, c));
            }
            return;
        }
        let i = rows.len();
        if i == max_rows {
            return;
        }
        let hi = cap.min(rows.last().copied().unwrap_or(i64::MAX)).min(remaining);
        let lo = alpha.part(i).max(1);
        // Rows below must be able to absorb what remains while staying <= r.
        for r in (lo..=hi).rev() {
            if (max_rows - i - 1) as i64 * r < remaining - r {
                break;
            }
            rows.push(r);
            candidates(rows, remaining - r, max_rows, cap, alpha, beta, out);
            rows.pop();
        }
    }
    if total == 0 {
        out.push((Partition::empty(), 1));
    } else {
        candidates(&mut rows, total, max_rows, cap, alpha, beta, &mut out);
    }
    out.sort();
    tensor_memo().write().unwrap().insert(key, out.clone());
    out
}

/// The dimension of the invariant subspace of the tensor product of the
/// irreducible `GL(n)` representations with highest weights `weights`.
///
/// Every weight must be dominant of length `n`. Computed by translating the
/// first `s-1` factors into partitions, decomposing their product with
/// [`tensor_pair`], and reading off the multiplicity of the dual of the last
/// factor (shifted back by the accumulated translation).
pub fn invariant_c(n: usize, weights: &[Weight]) -> u64 {
    for w in weights {
        assert_eq!(w.len(), n, "weight length must equal the rank");
        assert!(w.is_dominant(), "weights must be weakly decreasing");
    }
    let s = weights.len();
    if s == 0 {
        return 1;
    }
    if weights.iter().map(|w| w.sum()).sum::<i64>() != 0 {
        return 0;
    }
    if s == 1 {
        return u64::from(weights[0].entries().iter().all(|&e| e == 0));
    }
    // Shift each leading factor into a partition; the last factor absorbs the
    // total shift through its dual below, keeping the product's determinant
    // twist at zero.
    let mut shift_total = 0i64;
    let mut dist: BTreeMap<Partition, u64> = BTreeMap::new();
    for (k, w) in weights[..s - 1].iter().enumerate() {
        let p = (-w.entries()[n - 1]).max(0);
        shift_total += p;
        let alpha = Partition::new(w.entries().iter().map(|&e| e + p).collect())
            .expect("shifted dominant weight is a partition");
        if k == 0 {
            dist.insert(alpha, 1);
        } else {
            let mut next: BTreeMap<Partition, u64> = BTreeMap::new();
            for (gamma, mult) in &dist {
                for (nu, c) in tensor_pair(gamma, &alpha) {
                    if nu.num_rows() <= n {
                        *next.entry(nu).or_insert(0) += mult * c;
                    }
                }
            }
            dist = next;
        }
    }
    let dual = dual_weight(&weights[s - 1]).expect("checked dominant above");
    let target: Vec<i64> = dual.entries().iter().map(|&e| e + shift_total).collect();
    if target.last().map_or(false, |&e| e < 0) {
        return 0; // the shifted dual is not polynomial, so it cannot appear
    }
    let target = Partition::new(target).expect("dual of dominant is dominant");
    dist.get(&target).copied().unwrap_or(0)
}

/// Calls `visit` for every assignment of non-negative integer sizes to the
/// arrows such that, at each vertex, (outgoing total) - (incoming total)
/// equals `div[x]`. Sizes never exceed `cap`, which is a genuine upper bound
/// for any acyclic quiver (see `flow_size_bound`).
fn for_each_flow(q: &Quiver, div: &[i64], cap: u64, visit: &mut dyn FnMut(&[u64])) {
    let m = q.arrows().len();
    let k = q.num_vertices();
    // balance[x] = assigned out - assigned in so far.
    let mut balance = vec![0i64; k + 1];
    let mut out_rem = vec![0i64; k + 1];
    let mut in_rem = vec![0i64; k + 1];
    for a in q.arrows() {
        out_rem[a.source] += 1;
        in_rem[a.target] += 1;
    }
    let mut sizes = vec![0u64; m];
    fn recurse(
        idx: usize,
        q: &Quiver,
        div: &[i64],
        cap: u64,
        sizes: &mut Vec<u64>,
        balance: &mut Vec<i64>,
        out_rem: &mut Vec<i64>,
        in_rem: &mut Vec<i64>,
        visit: &mut dyn FnMut(&[u64]),
    ) {
        // Prune: every vertex must still be able to reach its divergence.
        for x in 1..=q.num_vertices() {
            let need = div[x - 1] - balance[x];
            if need > out_rem[x] * cap as i64 || need < -(in_rem[x] * cap as i64) {
                return;
            }
        }
        if idx == sizes.len() {
            visit(sizes);
            return;
        }
        let arrow = q.arrows()[idx];
        out_rem[arrow.source] -= 1;
        in_rem[arrow.target] -= 1;
        for e in 0..=cap {
            sizes[idx] = e;
            balance[arrow.source] += e as i64;
            balance[arrow.target] -= e as i64;
            recurse(idx + 1, q, div, cap, sizes, balance, out_rem, in_rem, visit);
            balance[arrow.source] -= e as i64;
            balance[arrow.target] += e as i64;
        }
        out_rem[arrow.source] += 1;
        in_rem[arrow.target] += 1;
    }
    recurse(0, q, div, cap, &mut sizes, &mut balance, &mut out_rem, &mut in_rem, visit);
}

/// Any non-negative flow on an acyclic quiver decomposes into simple directed
/// paths, each starting at a vertex of positive divergence, so no arrow can
/// carry more than the total positive divergence.
fn flow_size_bound(div: &[i64]) -> u64 {
    div.iter().map(|&d| d.max(0) as u64).sum()
}

/// Reference value for the weight multiplicity of `lam`: a sum over all
/// integer arrow-weight families of products of per-vertex invariant
/// dimensions. Fails with `BoundExceeded` if some family could have a
/// coordinate sum beyond `bound`.
pub fn multiplicity_formula(
    q: &Quiver,
    dims: &DimensionVector,
    lam: &WeightFamily,
    bound: u64,
) -> Result<u64> {
    check_shapes(q, dims)?;
    lam.validate_against(dims)?;
    let div: Vec<i64> = (1..=q.num_vertices()).map(|x| lam.weight(x).sum()).collect();
    if div.iter().sum::<i64>() != 0 {
        return Ok(0);
    }
    let cap = flow_size_bound(&div);
    if cap > bound {
        return Err(Error::BoundExceeded { bound, needed: cap });
    }

    // For every vertex, the arrows incident to it in input order, and the
    // index of the last one (the point where its factor becomes computable).
    let k = q.num_vertices();
    let mut last_incident = vec![0usize; k + 1];
    for x in 1..=k {
        for (i, a) in q.arrows().iter().enumerate() {
            if a.source == x || a.target == x {
                last_incident[x] = i;
            }
        }
    }

    let mut factor_memo: HashMap<(usize, Vec<i64>), u64> = HashMap::new();
    let mut total: u64 = 0;
    let mut mus: Vec<Weight> = vec![Weight::zero(0); q.arrows().len()];

    // Candidate arrow weights per size are partitions with limited rows.
    let mut mu_candidates = |arrow: usize, size: u64| -> Vec<Weight> {
        let a = q.arrows()[arrow];
        let nx = dims.dim(a.source);
        let ny = dims.dim(a.target);
        partitions_with_rows(size as i64, nx.min(ny))
            .into_iter()
            .map(|p| p.to_weight(nx))
            .collect()
    };

    let mut vertex_factor = |x: usize,
                             mus: &[Weight],
                             memo: &mut HashMap<(usize, Vec<i64>), u64>|
     -> u64 {
        let (out, inc) = q.vertex_star(x).expect("vertex in range");
        let mut key = Vec::new();
        for &a in out.iter().chain(&inc) {
            key.extend_from_slice(mus[a].entries());
        }
        if let Some(&hit) = memo.get(&(x, key.clone())) {
            return hit;
        }
        let n = dims.dim(x);
        let mut slots = vec![dual_weight(lam.weight(x)).expect("validated dominant")];
        for &a in &out {
            slots.push(mus[a].clone());
        }
        for &a in &inc {
            let resized = d_map(&mus[a], n).expect("sizes were chosen to truncate cleanly");
            slots.push(dual_weight(&resized).expect("dominant"));
        }
        let value = invariant_c(n, &slots);
        memo.insert((x, key), value);
        value
    };

    // Enumerate sizes (flows), then arrow weights of those sizes, evaluating
    // each vertex as soon as its incident arrows are all assigned.
    for_each_flow(q, &div, cap, &mut |sizes| {
        fn assign(
            idx: usize,
            product: u64,
            sizes: &[u64],
            q: &Quiver,
            last_incident: &[usize],
            mus: &mut Vec<Weight>,
            mu_candidates: &mut dyn FnMut(usize, u64) -> Vec<Weight>,
            vertex_factor: &mut dyn FnMut(usize, &[Weight], &mut HashMap<(usize, Vec<i64>), u64>) -> u64,
            factor_memo: &mut HashMap<(usize, Vec<i64>), u64>,
            total: &mut u64,
        ) {
            if idx == sizes.len() {
                let mut product = product;
                // Vertices with no arrows at all still contribute a factor.
                for x in 1..=q.num_vertices() {
                    let star = q.vertex_star(x).expect("in range");
                    if star.0.is_empty() && star.1.is_empty() {
                        product *= vertex_factor(x, mus, factor_memo);
                    }
                }
                *total = total.checked_add(product).expect("multiplicity overflow");
                return;
            }
            for mu in mu_candidates(idx, sizes[idx]) {
                mus[idx] = mu;
                let mut product = product;
                let mut dead = false;
                for x in 1..=q.num_vertices() {
                    if last_incident[x] == idx {
                        let star = q.vertex_star(x).expect("in range");
                        if !star.0.is_empty() || !star.1.is_empty() {
                            product = product
                                .checked_mul(vertex_factor(x, mus, factor_memo))
                                .expect("multiplicity overflow");
                            if product == 0 {
                                dead = true;
                                break;
                            }
                        }
                    }
                }
                if !dead {
                    assign(
                        idx + 1,
                        product,
                        sizes,
                        q,
                        last_incident,
                        mus,
                        mu_candidates,
                        vertex_factor,
                        factor_memo,
                        total,
                    );
                }
            }
        }
        if q.arrows().is_empty() {
            assign(
                0,
                1,
                sizes,
                q,
                &last_incident,
                &mut mus,
                &mut mu_candidates,
                &mut vertex_factor,
                &mut factor_memo,
                &mut total,
            );
        } else {
            assign(
                0,
                1,
                sizes,
                q,
                &last_incident,
                &mut mus,
                &mut mu_candidates,
                &mut vertex_factor,
                &mut factor_memo,
                &mut total,
            );
        }
    });
    Ok(total)
}

/// All partitions of `size` with at most `max_rows` rows.
fn partitions_with_rows(size: i64, max_rows: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rows = Vec::new();
    fn recurse(rows: &mut Vec<i64>, remaining: i64, max_rows: usize, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(rows.clone()));
            return;
        }
        if rows.len() == max_rows {
            return;
        }
        let hi = rows.last().copied().unwrap_or(remaining).min(remaining);
        let slots_below = (max_rows - rows.len() - 1) as i64;
        for r in (1..=hi).rev() {
            if slots_below * r < remaining - r {
                break;
            }
            rows.push(r);
            recurse(rows, remaining - r, max_rows, out);
            rows.pop();
        }
    }
    recurse(&mut rows, size, max_rows, &mut out);
    out
}

/// Weight multiplicity when every vertex has dimension 1: the number of
/// monomials in the arrow coordinates with net exponent `lam_x` at each
/// vertex `x` (exponent counted `+1` at the arrow's source and `-1` at its
/// target). Finiteness is guaranteed by acyclicity.
pub fn torus_multiplicity(q: &Quiver, dims: &DimensionVector, lam: &WeightFamily) -> Result<u64> {
    check_shapes(q, dims)?;
    if dims.entries().iter().any(|&d| d != 1) {
        return Err(Error::ShapeMismatch(
            "torus multiplicity requires every dimension to be 1".into(),
        ));
    }
    lam.validate_against(dims)?;
    let div: Vec<i64> = (1..=q.num_vertices()).map(|x| lam.weight(x).entries()[0]).collect();
    if div.iter().sum::<i64>() != 0 {
        return Ok(0);
    }
    let cap = flow_size_bound(&div);
    let mut count: u64 = 0;
    for_each_flow(q, &div, cap, &mut |_| count += 1);
    Ok(count)
}

fn check_shapes(q: &Quiver, dims: &DimensionVector) -> Result<()> {
    if dims.len() != q.num_vertices() {
        return Err(Error::ShapeMismatch(format!(
            "{} dimensions for {} vertices",
            dims.len(),
            q.num_vertices()
        )));
    }
    Ok(())
}
