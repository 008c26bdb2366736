//! Generic semi-stability of quiver weights.
//!
//! A one-dimensional weight `sigma` (one integer per vertex) is generically
//! semi-stable when some non-zero semi-invariant has that weight, which
//! happens exactly when the constant-coordinate dominant weight family
//! `lambda(sigma)_x = (sigma_x, ..., sigma_x)` lies in the moment cone.
//! [`check_semistable`] decides this through the linear program; for the
//! two-source join quiver and the diamond quiver with slowly growing
//! dimensions, closed-form descriptions of the semi-stable cone are also
//! provided and can be cross-checked against the reduction.

use crate::decision::decide_membership;
use crate::error::{Error, Result};
use crate::lpmodel::{build_moment_polytope, SymbolicProgram};
use crate::quiver::{DimensionVector, Quiver, Weight, WeightFamily};

/// One integer per vertex: the exponent of the determinant character there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaWeight(Vec<i64>);

impl SigmaWeight {
    pub fn new(entries: Vec<i64>) -> SigmaWeight {
        SigmaWeight(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Value at vertex `x` (1-based).
    pub fn value(&self, x: usize) -> i64 {
        self.0[x - 1]
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

/// The weight family with constant coordinates `sigma_x` at each vertex.
pub fn sigma_to_lambda(sigma: &SigmaWeight, dims: &DimensionVector) -> Result<WeightFamily> {
    if sigma.len() != dims.len() {
        return Err(Error::LengthMismatch { expected: dims.len(), got: sigma.len() });
    }
    Ok(WeightFamily::new(
        (1..=dims.len()).map(|x| Weight::new(vec![sigma.value(x); dims.dim(x)])).collect(),
    ))
}

/// Decides generic semi-stability by moment-cone membership of
/// `lambda(sigma)` in an already built program.
pub fn check_semistable_program(program: &SymbolicProgram, sigma: &SigmaWeight) -> Result<bool> {
    let lam = sigma_to_lambda(sigma, &program.dims)?;
    Ok(decide_membership(program, &lam)?.is_member())
}

/// Decides generic semi-stability for `sigma` on `q` with dimensions
/// `dims`, by rational feasibility of the instantiated program.
pub fn check_semistable(q: &Quiver, dims: &DimensionVector, sigma: &SigmaWeight) -> Result<bool> {
    let program = build_moment_polytope(q, dims)?;
    check_semistable_program(&program, sigma)
}

/// Verdict of a closed-form test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    Semistable,
    NotSemistable,
    /// The dimension pattern is outside the tabulated families.
    NotCovered,
}

impl ClosedForm {
    fn from_bool(b: bool) -> ClosedForm {
        if b {
            ClosedForm::Semistable
        } else {
            ClosedForm::NotSemistable
        }
    }
}

/// Closed form for the join quiver `1 -> 3 <- 2`.
///
/// Every dimension vector is covered. A weight at a source vertex is the
/// weight of a polynomial semi-invariant, so it must be non-negative; the
/// sign conditions below reflect that on top of the linear relations
/// defining each case.
pub fn closed_form_a3(dims: &DimensionVector, sigma: &SigmaWeight) -> Result<ClosedForm> {
    if dims.len() != 3 || sigma.len() != 3 {
        return Err(Error::ShapeMismatch("the join quiver has exactly 3 vertices".into()));
    }
    let (n1, n2, n3) = (dims.dim(1), dims.dim(2), dims.dim(3));
    let (s1, s2, s3) = (sigma.value(1), sigma.value(2), sigma.value(3));
    let verdict = if n1 == n2 && n2 == n3 {
        s1 >= 0 && s2 >= 0 && s1 + s2 + s3 == 0
    } else if n1 == n3 && n1 != n2 {
        s1 >= 0 && s1 + s3 == 0 && s2 == 0
    } else if n2 == n3 && n1 != n3 {
        s2 >= 0 && s1 == 0 && s2 + s3 == 0
    } else if n1 + n2 == n3 {
        s1 >= 0 && s1 == s2 && s2 == -s3
    } else {
        s1 == 0 && s2 == 0 && s3 == 0
    };
    Ok(ClosedForm::from_bool(verdict))
}

/// Weighted total `sum n_x * sigma_x`, computed widely.
fn weighted_sum(dims: &DimensionVector, sigma: &SigmaWeight) -> i128 {
    (1..=dims.len())
        .map(|x| i128::from(sigma.value(x)) * dims.dim(x) as i128)
        .sum()
}

/// Closed form for the diamond quiver `1 -> 2 -> 4`, `1 -> 3 -> 4`.
///
/// Covers the dimension vectors whose entries grow by at most one along
/// both paths: `[n,n,n,n]`, `[n,n,n,n+1]`, `[n,n+1,n,n+1]`,
/// `[n,n,n+1,n+1]`, and `[n,n+1,n+1,n+1]`. Anything else reports
/// [`ClosedForm::NotCovered`].
pub fn closed_form_diamond(dims: &DimensionVector, sigma: &SigmaWeight) -> Result<ClosedForm> {
    if dims.len() != 4 || sigma.len() != 4 {
        return Err(Error::ShapeMismatch("the diamond quiver has exactly 4 vertices".into()));
    }
    let n = dims.dim(1);
    let steps = (dims.dim(2) as i64 - n as i64, dims.dim(3) as i64 - n as i64, dims.dim(4) as i64 - n as i64);
    let (s1, s2, s3, s4) = (sigma.value(1), sigma.value(2), sigma.value(3), sigma.value(4));
    let balanced = weighted_sum(dims, sigma) == 0;
    let verdict = match steps {
        (0, 0, 0) => s1 >= 0 && s1 + s2 >= 0 && s1 + s3 >= 0 && s1 + s2 + s3 >= 0 && balanced,
        (0, 0, 1) => s1 + s2 + s4 >= 0 && s1 + s3 + s4 >= 0 && s4 <= 0 && balanced,
        (1, 0, 1) => s1 + s3 >= 0 && s1 + s2 + s4 >= 0 && s2 >= 0 && balanced,
        // The mirror image of the previous case under swapping the two
        // middle vertices.
        (0, 1, 1) => s1 + s2 >= 0 && s1 + s3 + s4 >= 0 && s3 >= 0 && balanced,
        (1, 1, 1) => s1 >= 0 && s2 >= 0 && s3 >= 0 && balanced,
        _ => return Ok(ClosedForm::NotCovered),
    };
    Ok(ClosedForm::from_bool(verdict))
}
