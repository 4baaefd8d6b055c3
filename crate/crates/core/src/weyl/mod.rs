//! Single-site Weyl operators and Clifford conjugation.
//!
//! Labels are `(a, b)` with `a` the Z-part and `b` the X-part, so
//! `W_{a,b} = τ^{-ab} Z^a X^b` and `[v, w] = v_a w_b - v_b w_a`. Phases are
//! kept as τ-exponents modulo `2d`, where `τ² = ω`; for odd `d` we take
//! `τ = ω^{(d+1)/2}` and for even `d`, `τ = e^{iπ/d}`.

pub mod dense;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field_poly::{gcd, mod_inverse};

/// A Weyl operator `τ^{tau_exp} W_v` on one qudit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylLabel {
    pub d: u32,
    pub v: [u32; 2],
    pub tau_exp: u32,
}

impl WeylLabel {
    pub fn new(d: u32, v: [u32; 2], tau_exp: u32) -> Self {
        WeylLabel {
            d,
            v: [v[0] % d, v[1] % d],
            tau_exp: canonical_tau(d, tau_exp as i64),
        }
    }

    /// Pauli Z.
    pub fn z(d: u32) -> Self {
        Self::new(d, [1, 0], 0)
    }

    /// Pauli X.
    pub fn x(d: u32) -> Self {
        Self::new(d, [0, 1], 0)
    }

    pub fn identity(d: u32) -> Self {
        Self::new(d, [0, 0], 0)
    }

    /// Multiply the prefactor by `τ^t`.
    pub fn with_tau(self, t: i64) -> Self {
        WeylLabel {
            tau_exp: canonical_tau(self.d, self.tau_exp as i64 + t),
            ..self
        }
    }

    /// The prefactor as an ω-exponent, if it is one.
    pub fn omega_exp(&self) -> Result<u32> {
        tau_to_omega(self.d, self.tau_exp)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "labels over Z_{} and Z_{}",
                self.d, other.d
            )));
        }
        Ok(())
    }
}

/// Reduce a τ-exponent modulo `2d`. For odd `d`, τ has order `d`, and the
/// even representative is chosen so equal phases compare equal.
pub fn canonical_tau(d: u32, t: i64) -> u32 {
    let two_d = 2 * d as i64;
    if d % 2 == 1 {
        let w = (t.rem_euclid(two_d) * (d as i64 + 1) / 2).rem_euclid(d as i64);
        (2 * w) as u32
    } else {
        t.rem_euclid(two_d) as u32
    }
}

/// Convert `τ^t` to `ω^k`. Fails for odd `t` when `d` is even.
pub fn tau_to_omega(d: u32, t: u32) -> Result<u32> {
    if d % 2 == 1 {
        Ok(((t as u64 * (d as u64 + 1) / 2) % d as u64) as u32)
    } else if t % 2 == 0 {
        Ok((t / 2) % d)
    } else {
        Err(Error::PhaseDomain(format!("tau^{t} with d = {d}")))
    }
}

/// `[v, w] = vᵀσw mod d` with `σ = [[0, 1], [-1, 0]]`.
pub fn symplectic_product(v: [u32; 2], w: [u32; 2], d: u32) -> u32 {
    let d = d as i64;
    ((v[0] as i64 * w[1] as i64 - v[1] as i64 * w[0] as i64).rem_euclid(d)) as u32
}

/// The exponent `k` in `W_v W_w = ω^k W_w W_v`.
pub fn commutation_phase(v: &WeylLabel, w: &WeylLabel) -> Result<u32> {
    v.check_same(w)?;
    Ok(symplectic_product(v.v, w.v, v.d))
}

/// Whether `CᵀσC = σ` modulo `d`. For 2×2 matrices this is `det C = 1`.
pub fn check_symplectic(c: [[u32; 2]; 2], d: u32) -> bool {
    let det = c[0][0] as i64 * c[1][1] as i64 - c[0][1] as i64 * c[1][0] as i64;
    det.rem_euclid(d as i64) == 1 % d as i64
}

/// Split integer label `(a, b)` into a canonical label and the τ-exponent
/// picked up by `W_{a+dk, b+dl} = τ^{-d(al + kb + dkl)} W_{a,b}`.
fn reduce_integer_label(d: u32, a: i64, b: i64) -> ([u32; 2], i64) {
    let di = d as i64;
    let (a0, k) = (a.rem_euclid(di), a.div_euclid(di));
    let (b0, l) = (b.rem_euclid(di), b.div_euclid(di));
    ([a0 as u32, b0 as u32], -di * (a0 * l + k * b0 + di * k * l))
}

/// A single-site symplectic matrix over Z_d, acting on column labels `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    pub d: u32,
    pub c: [[u32; 2]; 2],
}

impl SymplecticMatrix {
    pub fn new(d: u32, c: [[u32; 2]; 2]) -> Result<Self> {
        let c = c.map(|row| row.map(|x| x % d));
        if !check_symplectic(c, d) {
            return Err(Error::NotSymplectic(d));
        }
        Ok(SymplecticMatrix { d, c })
    }

    pub fn identity(d: u32) -> Self {
        SymplecticMatrix {
            d,
            c: [[1 % d, 0], [0, 1 % d]],
        }
    }

    pub fn apply(&self, v: [u32; 2]) -> [u32; 2] {
        let d = self.d as u64;
        let row =
            |r: [u32; 2]| ((r[0] as u64 * v[0] as u64 + r[1] as u64 * v[1] as u64) % d) as u32;
        [row(self.c[0]), row(self.c[1])]
    }

    /// `U W_v U†` for the symplectic Clifford with `U Z U† = W_{Ce1}` and
    /// `U X U† = W_{Ce2}`, returned as a label carrying the τ-phase.
    pub fn conjugate(&self, w: &WeylLabel) -> WeylLabel {
        let [a, b] = w.v.map(|x| x as i64);
        let c = self.c.map(|row| row.map(|x| x as i64));
        let det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
        let (v, shift) =
            reduce_integer_label(self.d, c[0][0] * a + c[0][1] * b, c[1][0] * a + c[1][1] * b);
        WeylLabel { v, ..*w }.with_tau(a * b * (det - 1) + shift)
    }
}

/// `V = τ^{tau_exp} U W_x` with `U` the symplectic part described by `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CliffordSpec {
    pub c: SymplecticMatrix,
    pub x: [u32; 2],
    pub tau_exp: u32,
}

/// Cliffords with a name in the construction examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedClifford {
    /// Phase gate `Σ τ^{z²} |z⟩⟨z|`.
    S,
    /// Multiplier `Σ |uk⟩⟨k|`.
    Mu(u32),
    /// Pure Weyl displacement `W_x`.
    Displacement([u32; 2]),
}

impl CliffordSpec {
    pub fn new(d: u32, c: [[u32; 2]; 2], x: [u32; 2], tau_exp: u32) -> Result<Self> {
        Ok(CliffordSpec {
            c: SymplecticMatrix::new(d, c)?,
            x: [x[0] % d, x[1] % d],
            tau_exp: canonical_tau(d, tau_exp as i64),
        })
    }

    pub fn identity(d: u32) -> Self {
        CliffordSpec {
            c: SymplecticMatrix::identity(d),
            x: [0, 0],
            tau_exp: 0,
        }
    }

    pub fn d(&self) -> u32 {
        self.c.d
    }

    /// `V W_x'`: multiply on the right by a further displacement.
    pub fn then_displace(self, x: [u32; 2]) -> Self {
        let d = self.d();
        // W_x W_y = τ^{[x,y]} W_{x+y} over integer labels
        let t = self.x[0] as i64 * x[1] as i64 - self.x[1] as i64 * x[0] as i64;
        let (sum, shift) = reduce_integer_label(
            d,
            self.x[0] as i64 + x[0] as i64,
            self.x[1] as i64 + x[1] as i64,
        );
        CliffordSpec {
            x: sum,
            tau_exp: canonical_tau(d, self.tau_exp as i64 + t + shift),
            ..self
        }
    }

    /// One conjugation `V (τ^t W_v) V†`, as an ω-exponent plus a label.
    fn conjugate_once(&self, w: &WeylLabel) -> (u32, WeylLabel) {
        let phase = symplectic_product(self.x, w.v, self.d());
        (phase, self.c.conjugate(w))
    }
}

/// Build a named Clifford over Z_d.
pub fn named_clifford(name: NamedClifford, d: u32) -> Result<CliffordSpec> {
    match name {
        NamedClifford::S => CliffordSpec::new(d, [[1, 1], [0, 1]], [0, 0], 0),
        NamedClifford::Mu(u) => {
            if gcd(u as u64, d as u64) != 1 {
                return Err(Error::NotUnit { value: u % d, d });
            }
            let inv = mod_inverse(u as u64 % d as u64, d as u64).expect("unit") as u32;
            CliffordSpec::new(d, [[inv, 0], [0, u % d]], [0, 0], 0)
        }
        NamedClifford::Displacement(x) => Ok(CliffordSpec {
            x: [x[0] % d, x[1] % d],
            ..CliffordSpec::identity(d)
        }),
    }
}

/// `V^f (τ^t W_v) V^{-f} = ω^{phase} τ^{t'} W_{v'}`. Returns `(phase, label')`.
/// Every ω-power, including the one in the input prefactor, is moved into
/// `phase`; `t'` is 0 for odd `d` and 0 or 1 for even `d`.
///
/// For odd `d` and `t = 0`, `phase = Σ_{k<f} [x, C^k v]`.
pub fn conjugate_weyl(v_op: &CliffordSpec, v: &WeylLabel, f: u32) -> Result<(u32, WeylLabel)> {
    let d = v_op.d();
    if v.d != d {
        return Err(Error::DimensionMismatch(format!(
            "Clifford over Z_{d}, label over Z_{}",
            v.d
        )));
    }
    let mut phase = 0u32;
    let mut label = *v;
    for _ in 0..f {
        let (p, next) = v_op.conjugate_once(&label);
        phase = (phase + p) % d;
        label = next;
    }
    let odd_part = if d % 2 == 1 { 0 } else { label.tau_exp % 2 };
    let folded = tau_to_omega(d, label.tau_exp - odd_part).expect("even exponent");
    Ok((
        (phase + folded) % d,
        WeylLabel {
            tau_exp: odd_part,
            ..label
        },
    ))
}
