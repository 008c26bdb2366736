//! Acyclic quivers, dimension vectors, and dominant integer weights.
//!
//! A quiver here is a finite directed multigraph with vertices numbered
//! `1..=k`. Parallel arrows are allowed; self-loops and directed cycles are
//! not, and the underlying undirected graph must be connected. Every weight
//! attached to a vertex of dimension `n` is an integer vector of length `n`,
//! and the dominant ones are the weakly decreasing vectors.

use crate::error::{Error, Result};

/// One arrow of a quiver, `source -> target`, with 1-based vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

/// A connected acyclic directed multigraph with 1-based vertices.
///
/// Construction validates everything, so a `Quiver` value is always
/// well-formed: ids in range, no self-loops, no directed cycles, connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    num_vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds and validates a quiver from `(source, target)` pairs.
    pub fn new(num_vertices: usize, arrows: &[(usize, usize)]) -> Result<Quiver> {
        if num_vertices == 0 {
            return Err(Error::BadVertexId { id: 0, max: 0 });
        }
        for (idx, &(s, t)) in arrows.iter().enumerate() {
            for &v in &[s, t] {
                if v == 0 || v > num_vertices {
                    return Err(Error::BadVertexId { id: v, max: num_vertices });
                }
            }
            if s == t {
                return Err(Error::SelfLoop { arrow: idx + 1, vertex: s });
            }
        }
        let arrows: Vec<Arrow> = arrows
            .iter()
            .map(|&(source, target)| Arrow { source, target })
            .collect();
        let q = Quiver { num_vertices, arrows };
        q.check_acyclic()?;
        q.check_connected()?;
        Ok(q)
    }

    /// Kahn's algorithm; on failure extracts a witness cycle by walking
    /// backwards through the residual vertices (each of which keeps a
    /// positive residual in-degree).
    fn check_acyclic(&self) -> Result<()> {
        let k = self.num_vertices;
        let mut indeg = vec![0usize; k + 1];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: Vec<usize> = (1..=k).filter(|&v| indeg[v] == 0).collect();
        let mut removed = vec![false; k + 1];
        while let Some(v) = queue.pop() {
            removed[v] = true;
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        queue.push(a.target);
                    }
                }
            }
        }
        let residual: Vec<usize> = (1..=k).filter(|&v| !removed[v]).collect();
        if residual.is_empty() {
            return Ok(());
        }
        // Walk backwards inside the residual set until a vertex repeats.
        let mut seen_at = vec![usize::MAX; k + 1];
        let mut path = vec![residual[0]];
        seen_at[residual[0]] = 0;
        loop {
            let v = *path.last().unwrap();
            let prev = self
                .arrows
                .iter()
                .find(|a| a.target == v && !removed[a.source])
                .expect("residual vertex with no residual predecessor")
                .source;
            if seen_at[prev] != usize::MAX {
                let mut cycle: Vec<usize> = path[seen_at[prev]..].to_vec();
                cycle.reverse(); // backward walk -> arrow order
                return Err(Error::CyclicQuiver(cycle));
            }
            seen_at[prev] = path.len();
            path.push(prev);
        }
    }

    fn check_connected(&self) -> Result<()> {
        let k = self.num_vertices;
        let mut reached = vec![false; k + 1];
        reached[1] = true;
        let mut stack = vec![1usize];
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let w = if a.source == v {
                    a.target
                } else if a.target == v {
                    a.source
                } else {
                    continue;
                };
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        match (1..=k).find(|&v| !reached[v]) {
            None => Ok(()),
            Some(v) => Err(Error::Disconnected(v)),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Out-arrows and in-arrows of vertex `x`, as 0-based arrow indices in
    /// input order.
    pub fn vertex_star(&self, x: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        if x == 0 || x > self.num_vertices {
            return Err(Error::BadVertexId { id: x, max: self.num_vertices });
        }
        let out = (0..self.arrows.len()).filter(|&i| self.arrows[i].source == x).collect();
        let inc = (0..self.arrows.len()).filter(|&i| self.arrows[i].target == x).collect();
        Ok((out, inc))
    }

    /// The two-source quiver `1 -> 3 <- 2`.
    pub fn star_a3() -> Quiver {
        Quiver::new(3, &[(1, 3), (2, 3)]).expect("fixed quiver is valid")
    }

    /// The diamond `1 -> 2 -> 4`, `1 -> 3 -> 4`.
    pub fn diamond() -> Quiver {
        Quiver::new(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).expect("fixed quiver is valid")
    }

    /// The single arrow `1 -> 2`.
    pub fn path2() -> Quiver {
        Quiver::new(2, &[(1, 2)]).expect("fixed quiver is valid")
    }
}

/// One positive dimension per vertex, 1-indexed through [`DimensionVector::dim`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionVector(Vec<usize>);

impl DimensionVector {
    pub fn new(dims: Vec<usize>) -> Result<DimensionVector> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::ShapeMismatch(
                "dimension vector entries must be positive".into(),
            ));
        }
        Ok(DimensionVector(dims))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension at vertex `x` (1-based).
    pub fn dim(&self, x: usize) -> usize {
        self.0[x - 1]
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

/// An integer weight vector; dominant means weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Weight {
        Weight(entries)
    }

    pub fn zero(len: usize) -> Weight {
        Weight(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    /// Dominant with all entries non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.is_dominant() && self.0.last().map_or(true, |&e| e >= 0)
    }

    pub fn scaled(&self, n: i64) -> Weight {
        Weight(self.0.iter().map(|e| e * n).collect())
    }
}

/// Negate-and-reverse: the highest weight of the dual representation.
/// An involution on dominant weights.
pub fn dual_weight(w: &Weight) -> Result<Weight> {
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.entries().to_vec()));
    }
    Ok(Weight(w.entries().iter().rev().map(|&e| -e).collect()))
}

/// Resizes a polynomial dominant weight to length `m`: truncation must only
/// drop zeros, extension pads with zeros. Preserves the coordinate sum.
pub fn d_map(mu: &Weight, m: usize) -> Result<Weight> {
    if !mu.is_polynomial() {
        return Err(Error::NotDominant(mu.entries().to_vec()));
    }
    let e = mu.entries();
    if m < e.len() {
        if e[m..].iter().any(|&x| x != 0) {
            return Err(Error::TruncationViolation { weight: e.to_vec(), keep: m });
        }
        Ok(Weight(e[..m].to_vec()))
    } else {
        let mut out = e.to_vec();
        out.resize(m, 0);
        Ok(Weight(out))
    }
}

/// One weight per vertex, 1-indexed through [`WeightFamily::weight`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFamily(Vec<Weight>);

impl WeightFamily {
    pub fn new(weights: Vec<Weight>) -> WeightFamily {
        WeightFamily(weights)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weight at vertex `x` (1-based).
    pub fn weight(&self, x: usize) -> &Weight {
        &self.0[x - 1]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.0
    }

    pub fn scaled(&self, n: i64) -> WeightFamily {
        WeightFamily(self.0.iter().map(|w| w.scaled(n)).collect())
    }

    /// Checks one dominant weight of the right length per vertex.
    pub fn validate_against(&self, dims: &DimensionVector) -> Result<()> {
        if self.0.len() != dims.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} weights for {} vertices",
                self.0.len(),
                dims.len()
            )));
        }
        for x in 1..=dims.len() {
            let w = self.weight(x);
            if w.len() != dims.dim(x) {
                return Err(Error::LengthMismatch { expected: dims.dim(x), got: w.len() });
            }
            if !w.is_dominant() {
                return Err(Error::NotDominant(w.entries().to_vec()));
            }
        }
        Ok(())
    }
}
