//! Dense univariate polynomials over `Q`: evaluation, interpolation,
//! arithmetic, exact cube roots and squarefreeness. These are the working
//! tools behind the degree-seven invariant and the section-evidence checks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactla::{rat, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not an exact cube")]
    NotAPerfectCube,
    #[error("interpolation nodes must be distinct")]
    RepeatedNodes,
}

/// Coefficient list, ascending degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<Rat>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        UnivariatePoly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial mapped to `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UnivariatePoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        UnivariatePoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePoly::new(out)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        UnivariatePoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        UnivariatePoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat(k as i64 + 1))
                .collect(),
        )
    }

    /// Unique interpolating polynomial of degree `< nodes.len()` through the
    /// given points, by Lagrange interpolation.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Result<Self, PolyError> {
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[i + 1..].iter().any(|(xj, _)| xj == xi) {
                return Err(PolyError::RepeatedNodes);
            }
        }
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut num = Self::constant(yi.clone());
            let mut den = Rat::from_integer(1.into());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                num = num.mul(&UnivariatePoly::new(vec![-xj.clone(), rat(1)]));
                den *= xi - xj;
            }
            acc = acc.add(&num.scale(&den.recip()));
        }
        Ok(acc)
    }

    /// Exact cube root normalized to constant term 1: requires constant term
    /// 1 and returns the unique power series `q` with `q³ = self`, checked to
    /// terminate at degree `deg(self)/3` and to cube back exactly.
    pub fn cube_root_monic(&self) -> Result<Self, PolyError> {
        if self.coeff(0) != rat(1) {
            return Err(PolyError::NotAPerfectCube);
        }
        let deg = self.degree().unwrap_or(0);
        if deg % 3 != 0 {
            return Err(PolyError::NotAPerfectCube);
        }
        let target = deg / 3;
        // power-series recursion: coefficient k of q³ is
        // 3 q_k + (terms in q_1.. q_{k-1}), solved degree by degree
        let mut q = vec![Rat::zero(); target + 1];
        q[0] = rat(1);
        for k in 1..=target {
            // convolution of q*q*q at degree k, excluding the 3*q_k*q_0*q_0 term
            let mut acc = Rat::zero();
            for i in 0..=k {
                for j in 0..=(k - i) {
                    let l = k - i - j;
                    if i == k || j == k || l == k {
                        continue;
                    }
                    acc += &q[i] * &q[j] * &q[l];
                }
            }
            q[k] = (self.coeff(k) - acc) / rat(3);
        }
        let q = UnivariatePoly::new(q);
        let cube = q.mul(&q).mul(&q);
        if &cube == self {
            Ok(q)
        } else {
            Err(PolyError::NotAPerfectCube)
        }
    }

    /// Is the polynomial squarefree over `Q`? Exact via `gcd(p, p') = 1`.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == Some(0) {
            return true;
        }
        let g = gcd(self, &self.derivative());
        g.degree() == Some(0)
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn gcd(a: &UnivariatePoly, b: &UnivariatePoly) -> UnivariatePoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = a.degree() {
        let lead = a.coeff(d);
        a.scale(&lead.recip())
    } else {
        a
    }
}

fn rem(a: &UnivariatePoly, b: &UnivariatePoly) -> UnivariatePoly {
    let db = b.degree().expect("division by zero polynomial");
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let factor = r.coeff(dr) / b.coeff(db);
        let mut shifted = vec![Rat::zero(); dr - db];
        shifted.extend(b.coeffs().iter().map(|c| c * &factor));
        r = r.sub(&UnivariatePoly::new(shifted));
    }
    r
}

/// Exact cube root of a rational, if it is one. Independent of the
/// power-series route: reduces to integer cube roots of numerator and
/// denominator.
pub fn rational_cube_root(x: &Rat) -> Option<Rat> {
    let num = int_cube_root(x.numer())?;
    let den = int_cube_root(x.denom())?;
    Some(Rat::new(num, den))
}

fn int_cube_root(n: &BigInt) -> Option<BigInt> {
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let negative = n.is_negative();
    let mag = n.abs();
    // Newton descent from a power-of-two overestimate; stays above the root
    // until the last step, so the loop is monotone and terminates.
    let mut x: BigInt = BigInt::from(1) << (mag.bits() / 3 + 1);
    loop {
        let y = (&x * 2 + &mag / (&x * &x)) / 3;
        if y >= x {
            break;
        }
        x = y;
    }
    if &x * &x * &x == mag {
        Some(if negative { -x } else { x })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::ratq;

    #[test]
    fn interpolation_recovers_cubic() {
        let p = UnivariatePoly::new(vec![rat(1), rat(-2), rat(0), rat(5)]);
        let pts: Vec<(Rat, Rat)> = (-2..=1).map(|t| (rat(t), p.eval(&rat(t)))).collect();
        assert_eq!(UnivariatePoly::interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn cube_root_of_perfect_cube() {
        let q = UnivariatePoly::new(vec![rat(1), rat(2), ratq(-1, 3)]);
        let p = q.mul(&q).mul(&q);
        assert_eq!(p.cube_root_monic().unwrap(), q);
    }

    #[test]
    fn cube_root_rejects_non_cube() {
        let p = UnivariatePoly::new(vec![rat(1), rat(1)]);
        assert_eq!(p.cube_root_monic().unwrap_err(), PolyError::NotAPerfectCube);
    }

    #[test]
    fn rational_cube_roots() {
        assert_eq!(rational_cube_root(&ratq(27, 8)), Some(ratq(3, 2)));
        assert_eq!(rational_cube_root(&rat(-64)), Some(rat(-4)));
        assert_eq!(rational_cube_root(&rat(2)), None);
        assert_eq!(rational_cube_root(&rat(0)), Some(rat(0)));
    }

    #[test]
    fn squarefree_detection() {
        let p = UnivariatePoly::new(vec![rat(-1), rat(0), rat(1)]); // t^2 - 1
        assert!(p.is_squarefree());
        let q = p.mul(&p);
        assert!(!q.is_squarefree());
    }
}
