//! Closure of a polynomial under affine pre- and post-processing.

use std::collections::{BTreeSet, HashSet};

use super::linalg::field_basis;
use super::modulus::Modulus;
use super::poly::{interpolate, MultiPoly};
use super::table::{index_of, input_at, input_count, FunctionTable};
use crate::error::{Error, Result};

/// Largest input space `closure_generate` will enumerate.
pub const CLOSURE_INPUT_LIMIT: usize = 81;
/// Largest span `closure_generate` will list element by element.
pub const CLOSURE_SPAN_LIMIT: usize = 1 << 20;

/// Every function reachable from `g` by affine maps `x -> A x + b` before it,
/// affine maps `y -> c y + e` after it, and linear combinations of the
/// results. Returned as reduced polynomials.
pub fn closure_generate(g: &MultiPoly) -> Result<BTreeSet<MultiPoly>> {
    let modulus = g.modulus().clone();
    modulus.require_field()?;
    let d = modulus.d();
    let n = g.num_vars();
    let points = input_count(d, n)
        .filter(|&c| c <= CLOSURE_INPUT_LIMIT)
        .ok_or_else(|| Error::SizeGuard(format!("{d}^{n} inputs exceeds {CLOSURE_INPUT_LIMIT}")))?;
    let base = g.to_table();

    let pre_count = input_count(d, n * n + n).expect("guarded above");
    let mut generated: HashSet<Vec<u32>> = HashSet::new();
    for code in 0..pre_count {
        // A row-major in the first n*n digits, b in the last n
        let digits = input_at(d, n * n + n, code);
        let (a, b) = digits.split_at(n * n);
        let pre: Vec<u32> = (0..points)
            .map(|k| {
                let x = input_at(d, n, k);
                let y: Vec<u32> = (0..n)
                    .map(|r| {
                        let lin = (0..n).fold(0, |acc, c| {
                            modulus.add(acc, modulus.mul(a[r * n + c], x[c]))
                        });
                        modulus.add(lin, b[r])
                    })
                    .collect();
                base.values[index_of(d, &y)]
            })
            .collect();
        for c in 0..d {
            for e in 0..d {
                generated.insert(
                    pre.iter()
                        .map(|&v| modulus.add(modulus.mul(c, v), e))
                        .collect(),
                );
            }
        }
    }

    let mut vectors: Vec<Vec<u32>> = generated.into_iter().collect();
    vectors.sort();
    let basis = field_basis(&modulus, &vectors);
    let span_size = input_count(d, basis.len())
        .filter(|&c| c <= CLOSURE_SPAN_LIMIT)
        .ok_or_else(|| {
            Error::SizeGuard(format!(
                "span of dimension {} too large to list",
                basis.len()
            ))
        })?;

    let mut out = BTreeSet::new();
    for code in 0..span_size {
        let coeffs = input_at(d, basis.len(), code);
        let mut v = vec![0u32; points];
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = modulus.add(*x, modulus.mul(*c, y));
                }
            }
        }
        out.insert(interpolate(&modulus, &FunctionTable { d, n, values: v })?);
    }
    Ok(out)
}

/// Dimension of the span of the tables of `polys`.
pub fn span_dimension(modulus: &Modulus, polys: &[MultiPoly]) -> usize {
    let vectors: Vec<Vec<u32>> = polys.iter().map(|p| p.to_table().values).collect();
    field_basis(modulus, &vectors).len()
}
