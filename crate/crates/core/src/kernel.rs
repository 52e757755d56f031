//! Signatures, cumulative products and exact monomial coefficients.
//!
//! Every weight that appears in the point and plane products is a signed
//! product of characteristic powers. Those weights are kept as integer
//! exponent vectors so that divisions by a characteristic are bookkeeping,
//! and legality (no negative power of a zero characteristic) is decided only
//! when the monomial is evaluated against a concrete signature.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Measure kind at one level of the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Characteristic {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl Characteristic {
    pub const ALL: [Characteristic; 3] = [
        Characteristic::Elliptic,
        Characteristic::Parabolic,
        Characteristic::Hyperbolic,
    ];

    #[inline]
    pub fn value(self) -> i32 {
        match self {
            Characteristic::Hyperbolic => -1,
            Characteristic::Parabolic => 0,
            Characteristic::Elliptic => 1,
        }
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    pub fn from_value(v: i32) -> Result<Self> {
        match v {
            -1 => Ok(Characteristic::Hyperbolic),
            0 => Ok(Characteristic::Parabolic),
            1 => Ok(Characteristic::Elliptic),
            _ => Err(Error::InvalidSignature(format!(
                "characteristic must be -1, 0 or 1, got {v}"
            ))),
        }
    }

    /// Characteristic of a product of characteristics.
    pub fn from_product(v: i32) -> Self {
        match v.signum() {
            -1 => Characteristic::Hyperbolic,
            0 => Characteristic::Parabolic,
            _ => Characteristic::Elliptic,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Characteristic::Hyperbolic => 'h',
            Characteristic::Parabolic => 'p',
            Characteristic::Elliptic => 'e',
        }
    }
}

/// The ordered characteristics `k_1..k_n` of an n-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    chars: Vec<Characteristic>,
}

impl Signature {
    pub fn new(chars: Vec<Characteristic>) -> Result<Self> {
        if chars.is_empty() {
            return Err(Error::InvalidSignature("signature must have n >= 1".into()));
        }
        Ok(Self { chars })
    }

    pub fn from_values(values: &[i32]) -> Result<Self> {
        let chars = values
            .iter()
            .map(|&v| Characteristic::from_value(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(chars)
    }

    /// Dimension n.
    #[inline]
    pub fn dim(&self) -> usize {
        self.chars.len()
    }

    /// `k_l` for `1 <= l <= n`.
    #[inline]
    pub fn k(&self, l: usize) -> Characteristic {
        assert!(l >= 1 && l <= self.chars.len(), "characteristic index {l} out of range");
        self.chars[l - 1]
    }

    pub fn chars(&self) -> &[Characteristic] {
        &self.chars
    }

    pub fn values(&self) -> Vec<i32> {
        self.chars.iter().map(|c| c.value()).collect()
    }

    /// All `3^n` signatures of dimension `n`.
    pub fn all(n: usize) -> Vec<Signature> {
        (0..n)
            .map(|_| Characteristic::ALL.iter().copied())
            .multi_cartesian_product()
            .map(|chars| Signature { chars })
            .collect()
    }

    /// Letter form, e.g. `"pe"`.
    pub fn to_letters(&self) -> String {
        self.chars.iter().map(|c| c.letter()).collect()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.values().iter().map(|v| v.to_string()).join(","))
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Accepts `"1,0,-1"` (optionally bracketed) or a word over `{e, p, h}`
    /// such as `"pe"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .or_else(|| s.strip_prefix('(').and_then(|t| t.strip_suffix(')')))
            .unwrap_or(s);
        if s.is_empty() {
            return Err(Error::InvalidSignature("empty signature".into()));
        }
        if s.chars().all(|c| matches!(c, 'e' | 'p' | 'h' | 'E' | 'P' | 'H')) {
            let chars = s
                .chars()
                .map(|c| match c.to_ascii_lowercase() {
                    'e' => Characteristic::Elliptic,
                    'p' => Characteristic::Parabolic,
                    _ => Characteristic::Hyperbolic,
                })
                .collect();
            return Self::new(chars);
        }
        let values = s
            .split(',')
            .map(|tok| {
                tok.trim().parse::<i32>().map_err(|_| {
                    Error::InvalidSignature(format!("cannot parse {tok:?} as a characteristic"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(&values)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Values(Vec<i32>),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Values(v) => Signature::from_values(&v).map_err(serde::de::Error::custom),
        }
    }
}

/// `K_0..K_n` with `K_0 = 1` and `K_i = K_{i-1} k_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulativeProducts(Vec<i32>);

impl CumulativeProducts {
    #[inline]
    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn has_zero(&self) -> bool {
        self.0.contains(&0)
    }
}

pub fn cumulative_products(sig: &Signature) -> CumulativeProducts {
    let mut out = Vec::with_capacity(sig.dim() + 1);
    let mut acc = 1;
    out.push(acc);
    for c in sig.chars() {
        acc *= c.value();
        out.push(acc);
    }
    CumulativeProducts(out)
}

/// `sign * prod_l k_l^{e_l}` with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub sign: i8,
    pub exponents: Vec<i32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self { sign: 1, exponents: vec![0; n] }
    }

    pub fn new(sign: i8, exponents: Vec<i32>) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Self { sign, exponents }
    }

    /// `K_i` as a monomial: `k_1 ... k_i`.
    pub fn cumulative(i: usize, n: usize) -> Self {
        let exponents = (1..=n).map(|l| i32::from(l <= i)).collect();
        Self { sign: 1, exponents }
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// Exponent of `k_l`, 1-based.
    pub fn exponent(&self, l: usize) -> i32 {
        self.exponents[l - 1]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.dim(), other.dim(), "monomials over different signatures");
        Monomial {
            sign: self.sign * other.sign,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Divide by `k_l^count`. Legality is checked at evaluation.
    pub fn div(&self, l: usize, count: u32) -> Monomial {
        let mut out = self.clone();
        out.exponents[l - 1] -= count as i32;
        out
    }

    /// Evaluate with the convention `k^0 = 1`, including `k = 0`.
    pub fn eval(&self, sig: &Signature) -> Result<i32> {
        assert_eq!(self.dim(), sig.dim(), "monomial and signature dimensions differ");
        let mut acc = i32::from(self.sign);
        for (l, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            match sig.chars[l].value() {
                0 if e < 0 => return Err(Error::NonDivisible { index: l + 1, exponent: e }),
                0 => acc = 0,
                -1 if e.rem_euclid(2) == 1 => acc = -acc,
                _ => {}
            }
        }
        Ok(acc)
    }
}

impl std::ops::Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial::mul(self, rhs)
    }
}

/// Weight of the `(x_i y_j - x_j y_i)^2` term in the point cross product:
/// `K_i K_j / k_1`.
pub fn coeff_point_cross(i: usize, j: usize, n: usize) -> Monomial {
    assert!(i < j && j <= n, "need 0 <= i < j <= n");
    Monomial::cumulative(i, n)
        .mul(&Monomial::cumulative(j, n))
        .div(1, 1)
}

/// Weight of `X_I Y_I` in the plane dot product:
/// `prod_{p=0..m} K_{i_p} / K_p`.
///
/// The `p = 0` factor is `K_{i_0}`; with it the m = 0 case is the point dot
/// product and the weights are the compound of the point form.
pub fn coeff_plane_dot(tuple: &[usize], n: usize) -> Monomial {
    check_tuple(tuple, n);
    let mut exponents = vec![0; n];
    for (p, &ip) in tuple.iter().enumerate() {
        for (l0, e) in exponents.iter_mut().enumerate() {
            let l = l0 + 1;
            *e += i32::from(l <= ip) - i32::from(l <= p);
        }
    }
    Monomial::new(1, exponents)
}

/// Weight of `(X_I Y_J - X_J Y_I)^2` in the plane cross product:
/// `prod_{p=0..m} K_{i_p} K_{j_p} / K_p^2`, divided by `k_{m+1}`.
pub fn coeff_plane_cross(i_tuple: &[usize], j_tuple: &[usize], n: usize) -> Result<Monomial> {
    check_tuple(i_tuple, n);
    check_tuple(j_tuple, n);
    assert_eq!(i_tuple.len(), j_tuple.len(), "tuples of different plane dimension");
    assert!(i_tuple < j_tuple, "tuples must be strictly ordered");
    let m = i_tuple.len() - 1;
    let product = coeff_plane_dot(i_tuple, n).mul(&coeff_plane_dot(j_tuple, n));
    // j_m >= m + 1 for every tuple after (0..=m), so k_{m+1} always divides.
    if product.exponent(m + 1) < 1 {
        return Err(Error::NonDivisible { index: m + 1, exponent: product.exponent(m + 1) - 1 });
    }
    Ok(product.div(m + 1, 1))
}

fn check_tuple(tuple: &[usize], n: usize) {
    assert!(!tuple.is_empty(), "empty index tuple");
    assert!(tuple.windows(2).all(|w| w[0] < w[1]), "tuple must be strictly increasing");
    assert!(*tuple.last().unwrap() <= n, "tuple index out of range");
}

/// Strictly increasing `(m+1)`-tuples over `0..=n`, in lexicographic order.
pub fn index_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..=n).combinations(m + 1).collect()
}

/// Evaluated product weights for one plane dimension `m` of one signature.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub m: usize,
    pub tuples: Vec<Vec<usize>>,
    /// Dot weight per tuple.
    pub dot: Vec<f64>,
    /// Nonzero cross weights as `(I, J, w)` with `I < J` tuple positions.
    pub cross: Vec<(usize, usize, f64)>,
}

impl CoefficientTable {
    pub fn build(sig: &Signature, m: usize) -> Result<Self> {
        let n = sig.dim();
        assert!(m < n, "plane dimension must be below the space dimension");
        let tuples = index_tuples(n, m);
        let dot = tuples
            .iter()
            .map(|t| coeff_plane_dot(t, n).eval(sig).map(f64::from))
            .collect::<Result<Vec<_>>>()?;
        let mut cross = Vec::new();
        for (a, ta) in tuples.iter().enumerate() {
            for (b, tb) in tuples.iter().enumerate().skip(a + 1) {
                let w = coeff_plane_cross(ta, tb, n)?.eval(sig)?;
                if w != 0 {
                    cross.push((a, b, f64::from(w)));
                }
            }
        }
        Ok(Self { m, tuples, dot, cross })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn cumulative_examples() {
        assert_eq!(cumulative_products(&sig("0,1")).as_slice(), &[1, 0, 0]);
        assert_eq!(cumulative_products(&sig("1,1")).as_slice(), &[1, 1, 1]);
        assert_eq!(cumulative_products(&sig("-1,1")).as_slice(), &[1, -1, -1]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(sig("pe"), sig("0,1"));
        assert_eq!(sig("hh"), sig("-1,-1"));
        assert_eq!(sig("[-1,1]"), sig("he"));
        assert_eq!(sig("(0,0)"), sig("pp"));
        assert_eq!(sig(" 1, 0 ,-1").values(), vec![1, 0, -1]);
        assert!("".parse::<Signature>().is_err());
        assert!("2,1".parse::<Signature>().is_err());
        assert!("ex".parse::<Signature>().is_err());
        assert_eq!(sig("hpe").to_letters(), "hpe");
    }

    #[test]
    fn monomial_mul_examples() {
        let m = |s, e: &[i32]| Monomial::new(s, e.to_vec());
        assert_eq!(m(1, &[1, 0]).mul(&m(1, &[1, 1])), m(1, &[2, 1]));
        assert_eq!(m(-1, &[0, 0]).mul(&m(-1, &[0, 0])), m(1, &[0, 0]));
        assert_eq!(&m(1, &[0, 1]) * &m(-1, &[1, 0]), m(-1, &[1, 1]));
    }

    #[test]
    fn monomial_div_examples() {
        let m = |e: &[i32]| Monomial::new(1, e.to_vec());
        assert_eq!(m(&[1, 1]).div(1, 1), m(&[0, 1]));
        assert_eq!(m(&[2, 1]).div(1, 1), m(&[1, 1]));
        assert_eq!(m(&[0, 1]).div(1, 1), m(&[-1, 1]));
    }

    #[test]
    fn monomial_eval_examples() {
        let m = |e: &[i32]| Monomial::new(1, e.to_vec());
        assert_eq!(m(&[1, 0]).eval(&sig("0,1")).unwrap(), 0);
        assert_eq!(m(&[0, 0]).eval(&sig("0,0")).unwrap(), 1);
        assert_eq!(m(&[2, 1]).eval(&sig("-1,1")).unwrap(), 1);
        assert_eq!(m(&[1, 3]).eval(&sig("-1,-1")).unwrap(), 1);
        assert_eq!(Monomial::new(-1, vec![1, 0]).eval(&sig("-1,0")).unwrap(), 1);
        assert!(matches!(
            m(&[-1, 1]).eval(&sig("0,1")),
            Err(Error::NonDivisible { index: 1, exponent: -1 })
        ));
        // negative exponents on nonzero characteristics are fine
        assert_eq!(m(&[-1, 1]).eval(&sig("-1,1")).unwrap(), -1);
    }

    #[test]
    fn point_cross_coefficients() {
        assert_eq!(coeff_point_cross(0, 1, 2), Monomial::new(1, vec![0, 0]));
        assert_eq!(coeff_point_cross(0, 2, 2), Monomial::new(1, vec![0, 1]));
        assert_eq!(coeff_point_cross(1, 2, 2), Monomial::new(1, vec![1, 1]));
        assert_eq!(coeff_point_cross(0, 1, 2).eval(&sig("0,1")).unwrap(), 1);
    }

    #[test]
    fn plane_dot_coefficients() {
        assert_eq!(coeff_plane_dot(&[0, 1], 2), Monomial::new(1, vec![0, 0]));
        assert_eq!(coeff_plane_dot(&[0, 2], 2), Monomial::new(1, vec![0, 1]));
        // K_1 K_2 / (K_0 K_1)
        assert_eq!(coeff_plane_dot(&[1, 2], 2), Monomial::new(1, vec![1, 1]));
        // m = 0 reproduces the point form weights K_i
        for i in 0..=3 {
            assert_eq!(coeff_plane_dot(&[i], 3), Monomial::cumulative(i, 3));
        }
    }

    #[test]
    fn plane_cross_coefficients() {
        let c = |a: &[usize], b: &[usize]| coeff_plane_cross(a, b, 2).unwrap();
        assert_eq!(c(&[0, 1], &[0, 2]), Monomial::new(1, vec![0, 0]));
        // 1 * K_2 / K_1 / k_2 = k_1
        assert_eq!(c(&[0, 1], &[1, 2]), Monomial::new(1, vec![1, 0]));
        // k_2 * k_1 k_2 / k_2
        assert_eq!(c(&[0, 2], &[1, 2]), Monomial::new(1, vec![1, 1]));
    }

    #[test]
    fn plane_cross_reduces_to_point_cross() {
        for n in 1..=4 {
            for i in 0..=n {
                for j in i + 1..=n {
                    assert_eq!(
                        coeff_plane_cross(&[i], &[j], n).unwrap(),
                        coeff_point_cross(i, j, n)
                    );
                }
            }
        }
    }

    #[test]
    fn all_signatures_enumerated() {
        assert_eq!(Signature::all(2).len(), 9);
        assert_eq!(Signature::all(3).len(), 27);
        let all = Signature::all(2);
        assert!(all.contains(&sig("ee")) && all.contains(&sig("hp")));
    }

    #[test]
    fn table_skips_zero_cross_weights() {
        let t = CoefficientTable::build(&sig("pp"), 0).unwrap();
        assert_eq!(t.dot, vec![1.0, 0.0, 0.0]);
        assert_eq!(t.cross, vec![(0, 1, 1.0)]);
    }
}
