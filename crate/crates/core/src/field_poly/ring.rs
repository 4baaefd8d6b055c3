//! Polynomial representability of functions over the ring Z_d.
//!
//! Over a composite modulus not every function is a polynomial. Every
//! polynomial function does have a representative with partial degrees
//! below `d` (the falling factorial of degree `d` vanishes on Z_d), so
//! representability reduces to a linear system in those coefficients.

use super::linalg::solve_mod;
use super::modulus::Modulus;
use super::poly::{monomials_up_to, MultiPoly};
use super::table::{all_inputs, input_count, FunctionTable};
use crate::error::{Error, Result};

/// Largest input space accepted by the ring solvers.
pub const RING_INPUT_LIMIT: usize = 4096;

fn evaluation_matrix(d: u32, n: usize, monos: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let ring = Modulus::ring(d).expect("d >= 2");
    all_inputs(d, n)
        .map(|x| {
            monos
                .iter()
                .map(|e| {
                    e.iter()
                        .zip(&x)
                        .fold(1, |acc, (&a, &xi)| ring.mul(acc, ring.pow(xi, a as u64)))
                })
                .collect()
        })
        .collect()
}

fn check_table(table: &FunctionTable) -> Result<()> {
    let expected = input_count(table.d, table.n)
        .filter(|&c| c <= RING_INPUT_LIMIT)
        .ok_or_else(|| Error::SizeGuard(format!("{}^{} inputs", table.d, table.n)))?;
    if table.values.len() != expected {
        return Err(Error::IncompleteTable {
            expected,
            got: table.values.len(),
        });
    }
    Ok(())
}

fn solve_with(table: &FunctionTable, monos: &[Vec<u32>]) -> Result<Option<MultiPoly>> {
    let ring = Modulus::ring(table.d)?;
    let a = evaluation_matrix(table.d, table.n, monos);
    Ok(match solve_mod(&a, &table.values, table.d) {
        Some(c) => Some(MultiPoly::from_terms(
            &ring,
            table.n,
            monos.iter().cloned().zip(c),
        )?),
        None => None,
    })
}

/// A polynomial over Z_d reproducing `table`, or `None` if the function is
/// not polynomial.
pub fn is_polynomial_over_ring(table: &FunctionTable) -> Result<Option<MultiPoly>> {
    check_table(table)?;
    let monos = monomials_up_to(table.d, table.n, u32::MAX);
    solve_with(table, &monos)
}

/// A representative of least combined degree, or `None` if the function is
/// not polynomial. Over a field this is the unique reduced polynomial.
pub fn min_degree_representation(table: &FunctionTable) -> Result<Option<MultiPoly>> {
    check_table(table)?;
    let max = table.n as u32 * (table.d - 1);
    for delta in 0..=max {
        let monos = monomials_up_to(table.d, table.n, delta);
        if let Some(p) = solve_with(table, &monos)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
