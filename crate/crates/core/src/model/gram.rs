//! Numeric Gram ranks of End(X^k) at specialized parameters.

use nalgebra::DMatrix;
use num::complex::Complex64;

use super::ModelError;
use crate::tl::{tl_basis, TLDiagram};

/// Which bilinear form to use on End(X^k).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// ⟨a, b⟩ = tr(a · flip(b)).
    Flip,
    /// ⟨a, b⟩ = tr(a · b).
    Plain,
}

fn loops_between(a: &TLDiagram, b: &TLDiagram) -> usize {
    let (c, l) = a.compose(b).expect("same shape");
    l + c.trace_loops().expect("endomorphism")
}

fn factor_gram(basis: &[TLDiagram], d: Complex64, pairing: Pairing) -> DMatrix<Complex64> {
    let n = basis.len();
    DMatrix::from_fn(n, n, |i, j| {
        let b = match pairing {
            Pairing::Flip => basis[j].flip(),
            Pairing::Plain => basis[j].clone(),
        };
        d.powu(loops_between(&basis[i], &b) as u32)
    })
}

/// Rank of the Gram matrix of End(X^k) at q1 = z1, q2 = z2 for one pairing.
pub fn gram_rank_with(k: usize, z1: Complex64, z2: Complex64, tol: f64, pairing: Pairing) -> Result<usize, ModelError> {
    if z1.norm() == 0.0 || z2.norm() == 0.0 {
        return Err(ModelError::Specialize("q1 and q2 must be nonzero".into()));
    }
    let basis = tl_basis(k);
    let g1 = factor_gram(&basis, z1 + z1.inv(), pairing);
    let g2 = factor_gram(&basis, z2 + z2.inv(), pairing);
    let g = g1.kronecker(&g2);
    let sv = g.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tol * max).count())
}

/// Rank of the flip-pairing Gram matrix, checked against the plain trace pairing.
pub fn gram_rank(k: usize, z1: Complex64, z2: Complex64, tol: f64) -> Result<usize, ModelError> {
    let a = gram_rank_with(k, z1, z2, tol, Pairing::Flip)?;
    let b = gram_rank_with(k, z1, z2, tol, Pairing::Plain)?;
    if a != b {
        return Err(ModelError::PairingMismatch(a, b));
    }
    Ok(a)
}
