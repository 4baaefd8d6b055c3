//! Reduced multivariate polynomials and interpolation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::element::FieldElement;
use super::modulus::{make_field, Modulus};
use super::table::{all_inputs, input_count, FunctionTable};
use crate::error::{Error, Result};

/// Polynomial in `n` variables with every partial degree at most `d - 1`.
///
/// Coefficients are keyed by exponent tuple; zero coefficients are never
/// stored, so equal maps mean equal polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    modulus: Modulus,
    n: usize,
    terms: BTreeMap<Vec<u32>, u32>,
}

impl MultiPoly {
    pub fn zero(modulus: &Modulus, n: usize) -> Self {
        MultiPoly {
            modulus: modulus.clone(),
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(modulus: &Modulus, n: usize, c: u32) -> Self {
        let mut p = Self::zero(modulus, n);
        p.add_term(vec![0; n], c);
        p
    }

    /// Build from `(exponents, coefficient)` pairs; like terms are summed.
    pub fn from_terms(
        modulus: &Modulus,
        n: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, u32)>,
    ) -> Result<Self> {
        let mut p = Self::zero(modulus, n);
        for (exps, c) in terms {
            if exps.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "exponent tuple {exps:?} for {n} variables"
                )));
            }
            if exps.iter().any(|&a| a >= modulus.d()) {
                return Err(Error::OutOfRange(format!(
                    "partial degree in {exps:?} exceeds {}",
                    modulus.d() - 1
                )));
            }
            if c >= modulus.d() {
                return Err(Error::OutOfRange(format!("coefficient {c}")));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    /// The single variable `x_{index}` (zero-based).
    pub fn variable(modulus: &Modulus, n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        let mut p = Self::zero(modulus, n);
        p.add_term(e, 1);
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: u32) {
        if c == 0 {
            return;
        }
        let m = &self.modulus;
        let entry = self.terms.entry(exps).or_insert(0);
        *entry = m.add(*entry, c);
        if *entry == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u32> {
        &self.terms
    }

    pub fn coefficient(&self, exps: &[u32]) -> u32 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, x: &[u32]) -> u32 {
        assert_eq!(x.len(), self.n, "evaluation point has wrong arity");
        let m = &self.modulus;
        self.terms.iter().fold(0, |acc, (exps, &c)| {
            let mono = exps
                .iter()
                .zip(x)
                .fold(1, |prod, (&a, &xi)| m.mul(prod, m.pow(xi, a as u64)));
            m.add(acc, m.mul(c, mono))
        })
    }

    /// Value table over all of F_d^n.
    pub fn to_table(&self) -> FunctionTable {
        let d = self.modulus.d();
        let values = all_inputs(d, self.n).map(|x| self.evaluate(&x)).collect();
        FunctionTable {
            d,
            n: self.n,
            values,
        }
    }

    /// Maximum exponent sum over all monomials; 0 for constants and zero.
    pub fn combined_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// A monomial achieving the combined degree (lexicographically first).
    pub fn leading_monomial(&self) -> Option<Vec<u32>> {
        let deg = self.combined_degree();
        self.terms
            .keys()
            .find(|e| e.iter().sum::<u32>() == deg)
            .cloned()
    }

    /// Membership in the linearly closed class of combined degree at most `delta`.
    pub fn in_subspace(&self, delta: u32) -> Result<bool> {
        let max = self.n as u32 * (self.modulus.d() - 1);
        if delta < 1 || delta > max.max(1) {
            return Err(Error::OutOfRange(format!(
                "delta {delta} outside 1..={max}"
            )));
        }
        Ok(self.combined_degree() <= delta)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(&self.modulus, self.n);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), self.modulus.mul(v, c));
        }
        out
    }

    /// Product, reduced with `x^d = x` (field moduli only).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.modulus.require_field()?;
        assert_eq!(self.n, other.n);
        let d = self.modulus.d();
        let reduce = |e: u32| if e >= d { (e - 1) % (d - 1) + 1 } else { e };
        let mut out = Self::zero(&self.modulus, self.n);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| reduce(a + b)).collect();
                out.add_term(e, self.modulus.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// Text form `d=<d>;n=<n>;{(a1,..,an):coeff,...}`.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<String> = e.iter().map(|a| a.to_string()).collect();
                format!("({}):{}", exps.join(","), c)
            })
            .collect();
        format!("d={};n={};{{{}}}", self.modulus.d(), self.n, body.join(","))
    }

    /// Human-readable form in ascending monomial order, e.g. `1 + 1*x1*x2`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(j, &a)| {
                        if a == 1 {
                            format!("x{}", j + 1)
                        } else {
                            format!("x{}^{}", j + 1, a)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses the text form. The modulus is rebuilt with [`make_field`], so a
/// prime-power `d` is read as GF(d).
impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("polynomial text: {what}"));
        let mut parts = s.trim().splitn(3, ';');
        let d: u32 = parts
            .next()
            .and_then(|p| p.strip_prefix("d="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("missing d="))?;
        let n: usize = parts
            .next()
            .and_then(|p| p.strip_prefix("n="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("missing n="))?;
        let body = parts
            .next()
            .and_then(|p| p.strip_prefix('{'))
            .and_then(|p| p.strip_suffix('}'))
            .ok_or_else(|| bad("missing braces"))?;
        let modulus = make_field(d)?;
        let mut terms = Vec::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let close = rest
                .find(')')
                .ok_or_else(|| bad("unclosed exponent tuple"))?;
            let tuple = rest[..close]
                .strip_prefix('(')
                .ok_or_else(|| bad("expected '('"))?;
            let exps: Vec<u32> = if tuple.is_empty() {
                Vec::new()
            } else {
                tuple
                    .split(',')
                    .map(|t| t.trim().parse().map_err(|_| bad("bad exponent")))
                    .collect::<Result<_>>()?
            };
            rest = rest[close + 1..]
                .strip_prefix(':')
                .ok_or_else(|| bad("expected ':'"))?;
            let end = rest.find(',').unwrap_or(rest.len());
            let c: u32 = rest[..end]
                .trim()
                .parse()
                .map_err(|_| bad("bad coefficient"))?;
            terms.push((exps, c));
            rest = rest[end..].strip_prefix(',').unwrap_or(&rest[end..]);
        }
        MultiPoly::from_terms(&modulus, n, terms)
    }
}

/// Coefficients of the univariate `1 - (x - y)^(d-1)`, lowest first.
fn univariate_delta(m: &Modulus, y: u32) -> Vec<u32> {
    let d = m.d() as usize;
    // (x - y)^(d-1) by repeated multiplication
    let mut acc = vec![1u32];
    let neg_y = m.neg(y);
    for _ in 0..d - 1 {
        let mut next = vec![0u32; acc.len() + 1];
        for (i, &c) in acc.iter().enumerate() {
            next[i + 1] = m.add(next[i + 1], c);
            next[i] = m.add(next[i], m.mul(c, neg_y));
        }
        acc = next;
    }
    let mut out: Vec<u32> = acc.iter().map(|&c| m.neg(c)).collect();
    out[0] = m.add(out[0], 1);
    out.truncate(d);
    out
}

/// Indicator polynomial of the point `y`: 1 at `x = y`, 0 elsewhere.
pub fn delta_poly(modulus: &Modulus, y: &[FieldElement]) -> Result<MultiPoly> {
    modulus.require_field()?;
    let n = y.len();
    let mut acc = MultiPoly::constant(modulus, n, 1);
    for (j, yj) in y.iter().enumerate() {
        if yj.modulus() != modulus {
            return Err(Error::DimensionMismatch(
                "point lives over a different modulus".into(),
            ));
        }
        let uni = univariate_delta(modulus, yj.value());
        let factor = MultiPoly::from_terms(
            modulus,
            n,
            uni.iter().enumerate().map(|(e, &c)| {
                let mut exps = vec![0u32; n];
                exps[j] = e as u32;
                (exps, c)
            }),
        )?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Unique reduced polynomial reproducing `table` over the field `modulus`.
pub fn interpolate(modulus: &Modulus, table: &FunctionTable) -> Result<MultiPoly> {
    modulus.require_field()?;
    let d = modulus.d();
    if table.d != d {
        return Err(Error::DimensionMismatch(format!(
            "table over {} but modulus {}",
            table.d, d
        )));
    }
    let expected = input_count(d, table.n).ok_or_else(|| Error::SizeGuard("input space".into()))?;
    if table.values.len() != expected {
        return Err(Error::IncompleteTable {
            expected,
            got: table.values.len(),
        });
    }
    let du = d as usize;
    // basis[y][e]: coefficient of x^e in the indicator of y
    let basis: Vec<Vec<u32>> = (0..d).map(|y| univariate_delta(modulus, y)).collect();
    let mut coeffs = table.values.clone();
    // transform one axis at a time; axis j has stride d^(n-1-j)
    for axis in 0..table.n {
        let stride = du.pow((table.n - 1 - axis) as u32);
        let block = stride * du;
        let mut next = vec![0u32; coeffs.len()];
        for start in (0..coeffs.len()).step_by(block) {
            for offset in 0..stride {
                for e in 0..du {
                    let mut s = 0u32;
                    for y in 0..du {
                        let v = coeffs[start + offset + y * stride];
                        if v != 0 {
                            s = modulus.add(s, modulus.mul(v, basis[y][e]));
                        }
                    }
                    next[start + offset + e * stride] = s;
                }
            }
        }
        coeffs = next;
    }
    let terms = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| (super::table::input_at(d, table.n, k), c));
    MultiPoly::from_terms(modulus, table.n, terms)
}

pub fn combined_degree(g: &MultiPoly) -> u32 {
    g.combined_degree()
}

pub fn in_subspace(g: &MultiPoly, delta: u32) -> Result<bool> {
    g.in_subspace(delta)
}

/// Exponent tuples with partial degrees below `d` and sum at most `delta`,
/// in lexicographic order.
pub fn monomials_up_to(d: u32, n: usize, delta: u32) -> Vec<Vec<u32>> {
    all_inputs(d, n)
        .filter(|e| e.iter().sum::<u32>() <= delta)
        .collect()
}

/// Every polynomial of combined degree at most `delta`, in lexicographic
/// order of coefficient vectors over [`monomials_up_to`].
pub fn enumerate_subspace(
    modulus: &Modulus,
    n: usize,
    delta: u32,
    limit: usize,
) -> Result<Vec<MultiPoly>> {
    let monos = monomials_up_to(modulus.d(), n, delta);
    let count = input_count(modulus.d(), monos.len())
        .filter(|&c| c <= limit)
        .ok_or_else(|| Error::SizeGuard(format!("{}^{} polynomials", modulus.d(), monos.len())))?;
    (0..count)
        .map(|k| {
            let coeffs = super::table::input_at(modulus.d(), monos.len(), k);
            MultiPoly::from_terms(modulus, n, monos.iter().cloned().zip(coeffs))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(d: u32) -> Modulus {
        make_field(d).unwrap()
    }

    fn el(m: &Modulus, v: u32) -> FieldElement {
        FieldElement::new(m, v).unwrap()
    }

    #[test]
    fn delta_examples() {
        let m3 = field(3);
        let p = delta_poly(&m3, &[el(&m3, 0)]).unwrap();
        // 1 - x^2 over Z_3
        assert_eq!(p.to_text(), "d=3;n=1;{(0):1,(2):2}");

        let m2 = field(2);
        let p = delta_poly(&m2, &[el(&m2, 0)]).unwrap();
        assert_eq!(p.to_text(), "d=2;n=1;{(0):1,(1):1}");

        let m5 = field(5);
        let p = delta_poly(&m5, &[el(&m5, 2)]).unwrap();
        let vals: Vec<u32> = [2, 3, 4, 0, 1].iter().map(|&x| p.evaluate(&[x])).collect();
        assert_eq!(vals, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn delta_rejects_ring() {
        let m6 = field(6);
        assert!(matches!(
            delta_poly(&m6, &[el(&m6, 0)]),
            Err(Error::UnsupportedModulus(_))
        ));
    }

    #[test]
    fn interpolation_examples() {
        let m2 = field(2);
        let and = interpolate(&m2, &FunctionTable::new(2, 2, vec![0, 0, 0, 1]).unwrap()).unwrap();
        assert_eq!(and.to_text(), "d=2;n=2;{(1,1):1}");
        let nand = interpolate(&m2, &FunctionTable::new(2, 2, vec![1, 1, 1, 0]).unwrap()).unwrap();
        assert_eq!(nand.to_text(), "d=2;n=2;{(0,0):1,(1,1):1}");
        assert_eq!(nand.pretty(), "1 + 1*x1*x2");
        let zero = interpolate(&field(5), &FunctionTable::new(5, 2, vec![0; 25]).unwrap()).unwrap();
        assert!(zero.is_zero());
        assert!(matches!(
            interpolate(
                &m2,
                &FunctionTable {
                    d: 2,
                    n: 2,
                    values: vec![0, 1]
                }
            ),
            Err(Error::IncompleteTable { .. })
        ));
    }

    #[test]
    fn degree_examples() {
        let m2 = field(2);
        let nand: MultiPoly = "d=2;n=2;{(0,0):1,(1,1):1}".parse().unwrap();
        assert_eq!(nand.combined_degree(), 2);
        assert!(!nand.in_subspace(1).unwrap());
        assert!(nand.in_subspace(2).unwrap());
        assert!(nand.in_subspace(3).is_err());
        assert!(nand.in_subspace(0).is_err());
        let lin = MultiPoly::from_terms(&field(5), 1, [(vec![0], 3), (vec![1], 2)]).unwrap();
        assert_eq!(lin.combined_degree(), 1);
        let m = MultiPoly::from_terms(&field(7), 2, [(vec![2, 3], 1)]).unwrap();
        assert_eq!(m.combined_degree(), 5);
        assert_eq!(MultiPoly::zero(&m2, 2).combined_degree(), 0);
    }

    #[test]
    fn exponential_table_has_degree_at_most_four() {
        let m5 = field(5);
        let g = interpolate(&m5, &FunctionTable::new(5, 1, vec![1, 3, 4, 2, 1]).unwrap()).unwrap();
        assert!(g.in_subspace(4).unwrap());
        assert_eq!(g.to_table().values, vec![1, 3, 4, 2, 1]);
    }

    #[test]
    fn text_round_trip() {
        let p: MultiPoly = "d=4;n=2;{(0,1):3,(3,2):1}".parse().unwrap();
        assert_eq!(p.to_text(), "d=4;n=2;{(0,1):3,(3,2):1}");
        let z: MultiPoly = "d=3;n=1;{}".parse().unwrap();
        assert!(z.is_zero());
        assert!("d=3;n=1;{(3):1}".parse::<MultiPoly>().is_err());
    }

    #[test]
    fn subspace_enumeration_size() {
        let m3 = field(3);
        assert_eq!(enumerate_subspace(&m3, 1, 2, 1000).unwrap().len(), 27);
        assert_eq!(enumerate_subspace(&m3, 2, 2, 1000).unwrap().len(), 729);
        assert!(enumerate_subspace(&m3, 2, 4, 1000).is_err());
    }
}
