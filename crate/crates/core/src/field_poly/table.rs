use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A function Z_d^n -> Z_d (or F_d^n -> F_d) stored as its value list.
///
/// Inputs are ordered lexicographically with `i_1` most significant, so the
/// table for `n = 2, d = 2` lists `(0,0), (0,1), (1,0), (1,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionTable {
    pub d: u32,
    pub n: usize,
    pub values: Vec<u32>,
}

/// Number of points in Z_d^n, `None` on overflow.
pub fn input_count(d: u32, n: usize) -> Option<usize> {
    (d as usize).checked_pow(n as u32)
}

/// Decode a lexicographic index into an input tuple.
pub fn input_at(d: u32, n: usize, mut index: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for slot in v.iter_mut().rev() {
        *slot = (index % d as usize) as u32;
        index /= d as usize;
    }
    v
}

pub fn index_of(d: u32, input: &[u32]) -> usize {
    input
        .iter()
        .fold(0usize, |acc, &x| acc * d as usize + x as usize)
}

/// All inputs of Z_d^n in lexicographic order.
pub fn all_inputs(d: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = input_count(d, n).expect("input space too large");
    (0..count).map(move |k| input_at(d, n, k))
}

impl FunctionTable {
    pub fn new(d: u32, n: usize, values: Vec<u32>) -> Result<Self> {
        let expected =
            input_count(d, n).ok_or_else(|| Error::SizeGuard(format!("{d}^{n} inputs")))?;
        if values.len() != expected {
            return Err(Error::IncompleteTable {
                expected,
                got: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|&&v| v >= d) {
            return Err(Error::OutOfRange(format!("table value {v} not below {d}")));
        }
        Ok(FunctionTable { d, n, values })
    }

    pub fn from_fn(d: u32, n: usize, f: impl Fn(&[u32]) -> u32) -> Self {
        let values = all_inputs(d, n).map(|x| f(&x) % d).collect();
        FunctionTable { d, n, values }
    }

    pub fn get(&self, input: &[u32]) -> u32 {
        self.values[index_of(self.d, input)]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Comma-separated values, the format used on the command line.
    pub fn to_csv(&self) -> String {
        self.values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
