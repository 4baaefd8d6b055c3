//! Exact linear algebra over Z_d and finite fields.

use super::modulus::{factorize, mod_inverse, Modulus};

/// Solve `a x = b` over Z_d. Returns one solution (free variables set to
/// zero in the local eliminations), or `None` when the system is
/// inconsistent.
///
/// Composite `d` is split by CRT into prime-power factors; each factor is
/// eliminated with minimal-valuation pivots so that every pivot divides the
/// entries after it.
pub fn solve_mod(a: &[Vec<u32>], b: &[u32], d: u32) -> Option<Vec<u32>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut solution = vec![0u64; cols];
    let mut modulus_so_far = 1u64;
    for (p, e) in factorize(d) {
        let q = (p as u64).pow(e);
        let local = solve_prime_power(a, b, p as u64, e, cols)?;
        // combine x = solution mod modulus_so_far, x = local mod q
        let inv = mod_inverse(modulus_so_far % q, q).expect("coprime factors");
        for (x, l) in solution.iter_mut().zip(local) {
            let t = ((l + q - *x % q) % q) * inv % q;
            *x += modulus_so_far * t;
        }
        modulus_so_far *= q;
    }
    Some(solution.into_iter().map(|x| x as u32).collect())
}

fn valuation(mut x: u64, p: u64, cap: u32) -> u32 {
    let mut v = 0;
    while v < cap && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn solve_prime_power(a: &[Vec<u32>], b: &[u32], p: u64, e: u32, cols: usize) -> Option<Vec<u64>> {
    let q = p.pow(e);
    let rows = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as u64 % q).collect())
        .collect();
    let mut rhs: Vec<u64> = b.iter().map(|&x| x as u64 % q).collect();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut pivots: Vec<(u32, u64)> = Vec::new();
    let mut r = 0;
    while r < rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(r) {
            for (j, &x) in row.iter().enumerate().skip(r) {
                if x != 0 {
                    let v = valuation(x, p, e);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, i, j)) = best else { break };
        m.swap(r, i);
        rhs.swap(r, i);
        for row in m.iter_mut() {
            row.swap(r, j);
        }
        perm.swap(r, j);
        let pv = p.pow(v);
        let unit = m[r][r] / pv;
        let unit_inv = mod_inverse(unit % q, q).expect("pivot unit part is invertible");
        for i in r + 1..rows {
            if m[i][r] != 0 {
                let f = (m[i][r] / pv) % q * unit_inv % q;
                for j in r..cols {
                    let sub = f * m[r][j] % q;
                    m[i][j] = (m[i][j] + q - sub) % q;
                }
                rhs[i] = (rhs[i] + q - f * rhs[r] % q) % q;
            }
        }
        pivots.push((v, unit_inv));
        r += 1;
    }
    if rhs[r..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut y = vec![0u64; cols];
    for i in (0..r).rev() {
        let mut acc = rhs[i];
        for j in i + 1..cols {
            acc = (acc + q - m[i][j] * y[j] % q) % q;
        }
        let (v, unit_inv) = pivots[i];
        let pv = p.pow(v);
        if acc % pv != 0 {
            return None;
        }
        y[i] = (acc / pv) % q * unit_inv % q;
    }
    let mut x = vec![0u64; cols];
    for (k, &col) in perm.iter().enumerate() {
        x[col] = y[k];
    }
    Some(x)
}

/// Row-reduced basis of the span of `vectors` over a field.
pub fn field_basis(modulus: &Modulus, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for (b, &pc) in basis.iter().zip(&pivot_cols) {
            let f = v[pc];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = modulus.sub(*x, modulus.mul(f, y));
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = modulus.inv(v[pc]).expect("field element is invertible");
            for x in v.iter_mut() {
                *x = modulus.mul(*x, inv);
            }
            // keep the basis fully reduced
            for b in basis.iter_mut() {
                let f = b[pc];
                if f != 0 {
                    for (x, &y) in b.iter_mut().zip(&v) {
                        *x = modulus.sub(*x, modulus.mul(f, y));
                    }
                }
            }
            basis.push(v);
            pivot_cols.push(pc);
        }
    }
    basis
}
