//! Linearized polynomials over F_{q^l}: encoding, evaluation, and
//! interpolation through a Moore system.
//!
//! f(x) = sum_i m_i x^{q^{i-1}} is F_q-linear in x, which is what makes
//! random F_q-recombination of stored packets lossless: evaluations move
//! with the same coefficients as their evaluation points.

use crate::error::{Error, Result};
use crate::field::{ExtFieldContext, ExtFieldElement};
use crate::linalg::{rank, solve_linear, Matrix};

/// Coefficients m_1..m_P; the encoded file is exactly this vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedPolynomial {
    pub coeffs: Vec<ExtFieldElement>,
}

impl LinearizedPolynomial {
    pub fn degree_count(&self) -> usize {
        self.coeffs.len()
    }
}

/// Store P packets as the coefficients of f. Requires P <= l so that P
/// independent evaluation points can exist.
pub fn encode_file(ctx: &ExtFieldContext, packets: Vec<ExtFieldElement>) -> Result<LinearizedPolynomial> {
    if packets.len() > ctx.l {
        return Err(Error::InvalidParams(format!(
            "{} packets exceed the extension degree {}",
            packets.len(),
            ctx.l
        )));
    }
    for p in &packets {
        if p.coeffs.len() != ctx.l {
            return Err(Error::ContextMismatch { expected: ctx.l, got: p.coeffs.len() });
        }
    }
    Ok(LinearizedPolynomial { coeffs: packets })
}

/// f(theta) with one q-power map application per term.
pub fn evaluate(
    ctx: &ExtFieldContext,
    f: &LinearizedPolynomial,
    theta: &ExtFieldElement,
) -> Result<ExtFieldElement> {
    let mut acc = ctx.zero_elem();
    let mut power = theta.clone(); // theta^{q^{i-1}} for the current term
    for (i, m) in f.coeffs.iter().enumerate() {
        if i > 0 {
            power = ctx.frobenius_apply(&power)?;
        }
        acc = ctx.ext_add(&acc, &ctx.ext_mul(m, &power)?)?;
    }
    Ok(acc)
}

/// Q[i][j] = theta_i^{q^j}: solving Q a = y recovers the coefficients from
/// evaluations at the points.
pub fn moore_matrix(
    ctx: &ExtFieldContext,
    points: &[ExtFieldElement],
) -> Result<Matrix<ExtFieldElement>> {
    let p = points.len();
    let mut rows = Vec::with_capacity(p);
    for theta in points {
        let mut row = Vec::with_capacity(p);
        let mut power = theta.clone();
        for j in 0..p {
            if j > 0 {
                power = ctx.frobenius_apply(&power)?;
            }
            row.push(power.clone());
        }
        rows.push(row);
    }
    Matrix::from_rows(rows)
}

/// Recover the unique f with f(theta_i) = values[i].
///
/// The points must be linearly independent over F_q; that is checked first
/// (rank of their coordinate vectors) so dependence gives a precise error
/// rather than a singular-matrix failure inside elimination.
pub fn interpolate(
    ctx: &ExtFieldContext,
    points: &[ExtFieldElement],
    values: &[ExtFieldElement],
) -> Result<LinearizedPolynomial> {
    if points.len() != values.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} points vs {} values",
            points.len(),
            values.len()
        )));
    }
    let p = points.len();
    if p > ctx.l {
        return Err(Error::InvalidParams(format!(
            "{p} points exceed the extension degree {}",
            ctx.l
        )));
    }
    let coord = Matrix::from_rows(points.iter().map(|t| t.coeffs.clone()).collect())?;
    let r = rank(&ctx.prime, &coord);
    if r < p {
        return Err(Error::DependentPoints { rank: r, needed: p });
    }
    let q = moore_matrix(ctx, points)?;
    let coeffs = solve_linear(ctx, &q, values)?;
    Ok(LinearizedPolynomial { coeffs })
}
