//! Independent oracle for `P_λ`: orthogonalize the monomial basis against
//! the power-sum inner product, without any use of branching rules.

use crate::error::{Error, Result};
use crate::jack::basis::DegreeBasis;
use crate::jack::SymFun;
use crate::linalg;
use crate::partition::{Partition, Theta};
use crate::scalar::Q;

/// Largest `|λ|` the oracle accepts.
pub const MAX_ORACLE_DEGREE: usize = 8;

/// `P_λ(x_1, …, x_n; θ)` as the monic member of the orthogonal family that is
/// triangular with respect to (any linear extension of) dominance order.
pub fn gram_schmidt_oracle(lambda: &Partition, n: usize, theta: &Theta) -> Result<SymFun> {
    if lambda.weight() > MAX_ORACLE_DEGREE {
        return Err(Error::OutOfRange(format!(
            "oracle supports |λ| <= {MAX_ORACLE_DEGREE}, got {}",
            lambda.weight()
        )));
    }
    let basis = DegreeBasis::new(lambda.weight())?;
    let coeffs = oracle_m_vector(&basis, lambda, theta)?;
    let mut f = SymFun::zero(n);
    for (nu, c) in basis.partitions().iter().zip(coeffs) {
        if nu.len() <= n {
            f.add_term(nu.padded(n), c);
        }
    }
    Ok(f)
}

/// Monomial coefficients (in `basis` order) of `P_λ` in infinitely many
/// variables.
pub fn oracle_m_vector(basis: &DegreeBasis, lambda: &Partition, theta: &Theta) -> Result<Vec<Q>> {
    let parts = basis.partitions();
    let pos = basis.index_of(lambda).expect("λ has the basis degree");
    // parts are in decreasing lex order, so the lex-smaller ones follow λ
    let lower: Vec<usize> = (pos + 1..parts.len()).collect();
    let gram = basis.monomial_gram(theta);
    let a: Vec<Vec<Q>> = lower.iter().map(|&t| lower.iter().map(|&k| gram[k][t].clone()).collect()).collect();
    let b: Vec<Q> = lower.iter().map(|&t| -gram[pos][t].clone()).collect();
    let c = if lower.is_empty() { Vec::new() } else { linalg::solve(&a, &b)? };
    let mut out = basis.unit(lambda);
    for (&k, ck) in lower.iter().zip(c) {
        out[k] = ck;
    }
    Ok(out)
}
