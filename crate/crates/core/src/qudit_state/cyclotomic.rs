//! Exact sums of M-th roots of unity, reduced modulo the cyclotomic
//! polynomial Φ_M so that equal numbers have equal coefficient vectors.

/// Coefficients of Φ_M, lowest degree first.
pub fn cyclotomic_polynomial(m: usize) -> Vec<i64> {
    // x^m - 1 divided by Φ_k for every proper divisor k
    let mut num = vec![0i64; m + 1];
    num[0] = -1;
    num[m] = 1;
    for k in 1..m {
        if m % k == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(k));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &x) in den.iter().enumerate() {
            rem[i + j] -= c * x;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Arithmetic in Z[ρ] with ρ a primitive M-th root of unity.
#[derive(Debug, Clone)]
pub struct CyclotomicRing {
    m: usize,
    phi: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

impl CyclotomicRing {
    pub fn new(m: usize) -> Self {
        let phi = cyclotomic_polynomial(m);
        let mut ring = CyclotomicRing {
            m,
            phi,
            powers: Vec::new(),
        };
        ring.powers = (0..m)
            .map(|k| {
                let mut v = vec![0i64; m];
                v[k] = 1;
                ring.reduce(&v)
            })
            .collect();
        ring
    }

    pub fn order(&self) -> usize {
        self.m
    }

    /// Canonical form of `Σ_j coeffs[j] ρ^j`.
    pub fn reduce(&self, coeffs: &[i64]) -> Vec<i64> {
        let deg = self.phi.len() - 1;
        let mut r = coeffs.to_vec();
        for i in (deg..r.len()).rev() {
            let c = r[i];
            if c != 0 {
                for (j, &x) in self.phi.iter().enumerate() {
                    r[i - deg + j] -= c * x;
                }
            }
        }
        r.truncate(deg);
        r.resize(deg, 0);
        r
    }

    /// Write a reduced element as `n ρ^k` with `n > 0`, or `n < 0` when no
    /// positive form exists. `None` for zero or for anything else.
    pub fn as_scaled_root(&self, reduced: &[i64]) -> Option<(i64, usize)> {
        let i = reduced.iter().position(|&x| x != 0)?;
        let mut negative = None;
        for (k, p) in self.powers.iter().enumerate() {
            if p[i] == 0 || reduced[i] % p[i] != 0 {
                continue;
            }
            let n = reduced[i] / p[i];
            if reduced.iter().zip(p).all(|(&a, &b)| a == n * b) {
                if n > 0 {
                    return Some((n, k));
                }
                negative.get_or_insert((n, k));
            }
        }
        negative
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(10), vec![1, -1, 1, -1, 1]);
    }

    #[test]
    fn recognises_scaled_roots() {
        let r = CyclotomicRing::new(3);
        // 1 + ω + ω² = 0
        assert_eq!(r.as_scaled_root(&r.reduce(&[1, 1, 1])), None);
        // 1 + ω = -ω²
        assert_eq!(r.as_scaled_root(&r.reduce(&[1, 1, 0])), Some((-1, 2)));
        assert_eq!(r.as_scaled_root(&r.reduce(&[0, 0, 3])), Some((3, 2)));
        let r = CyclotomicRing::new(4);
        // 1 + i is not n i^k
        assert_eq!(r.as_scaled_root(&r.reduce(&[1, 1, 0, 0])), None);
        assert_eq!(r.as_scaled_root(&r.reduce(&[0, 0, 2, 0])), Some((2, 2)));
    }
}
