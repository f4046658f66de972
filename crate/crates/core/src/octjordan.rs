//! Octonions over `Q` and the exceptional Jordan algebra `H₃(O)` of
//! Hermitian 3x3 octonion matrices, with its cubic norm, sharp map and
//! Freudenthal cross product.
//!
//! Multiplication is Cayley-Dickson doubling of the quaternions,
//! `(a,b)(c,d) = (ac - d̄b, da + bc̄)`. Every claim made downstream (rank
//! drops, vanishing loci) is convention-independent, and the classical
//! Jordan identities `N(X#) = N(X)²` and `X## = N(X)·X` serve as the
//! ground truth for the norm formula: they are asserted in the test suite
//! over many random elements.

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::exactla::{rat, ratq, Rat};
use crate::rngutil;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JordanError {
    #[error("rank-1 sampler exhausted its redraw budget; construction formula is wrong")]
    SamplerExhausted,
}

/// Octonion in coordinates over the basis `1, i1, ..., i7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Octonion(pub [Rat; 8]);

impl Octonion {
    pub fn zero() -> Self {
        Octonion(std::array::from_fn(|_| Rat::zero()))
    }

    pub fn one() -> Self {
        Octonion::real(rat(1))
    }

    pub fn real(r: Rat) -> Self {
        let mut o = Octonion::zero();
        o.0[0] = r;
        o
    }

    /// The imaginary unit `i_k`, `k` in `1..=7`.
    pub fn unit(k: usize) -> Self {
        assert!((1..=7).contains(&k));
        let mut o = Octonion::zero();
        o.0[k] = rat(1);
        o
    }

    pub fn from_ints(coords: [i64; 8]) -> Self {
        Octonion(coords.map(rat))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Octonion(std::array::from_fn(|k| &self.0[k] + &other.0[k]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Octonion(std::array::from_fn(|k| &self.0[k] - &other.0[k]))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Octonion(std::array::from_fn(|k| &self.0[k] * s))
    }

    pub fn conj(&self) -> Self {
        Octonion(std::array::from_fn(|k| {
            if k == 0 {
                self.0[0].clone()
            } else {
                -self.0[k].clone()
            }
        }))
    }

    pub fn re(&self) -> Rat {
        self.0[0].clone()
    }

    /// The norm form `n(u) = Σ u_k²`; multiplicative for the doubling below.
    pub fn norm(&self) -> Rat {
        self.0.iter().map(|c| c * c).sum()
    }

    /// Polar form of the norm: `⟨u, v⟩ = (n(u+v) - n(u) - n(v))/2 = Σ u_k v_k`.
    pub fn dot(&self, other: &Self) -> Rat {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        // split into quaternion pairs: u = (a, b), v = (c, d)
        let (a, b) = self.split();
        let (c, d) = other.split();
        // (a,b)(c,d) = (ac - d̄b, da + bc̄)
        let first = quat_mul(&a, &c);
        let first = quat_sub(&first, &quat_mul(&quat_conj(&d), &b));
        let second = quat_mul(&d, &a);
        let second = quat_add(&second, &quat_mul(&b, &quat_conj(&c)));
        Octonion::join(first, second)
    }

    fn split(&self) -> ([Rat; 4], [Rat; 4]) {
        (
            std::array::from_fn(|k| self.0[k].clone()),
            std::array::from_fn(|k| self.0[k + 4].clone()),
        )
    }

    fn join(a: [Rat; 4], b: [Rat; 4]) -> Self {
        Octonion(std::array::from_fn(|k| {
            if k < 4 {
                a[k].clone()
            } else {
                b[k - 4].clone()
            }
        }))
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        Octonion(std::array::from_fn(|_| rat(rngutil::small_int(rng))))
    }
}

fn quat_mul(a: &[Rat; 4], b: &[Rat; 4]) -> [Rat; 4] {
    [
        &a[0] * &b[0] - &a[1] * &b[1] - &a[2] * &b[2] - &a[3] * &b[3],
        &a[0] * &b[1] + &a[1] * &b[0] + &a[2] * &b[3] - &a[3] * &b[2],
        &a[0] * &b[2] - &a[1] * &b[3] + &a[2] * &b[0] + &a[3] * &b[1],
        &a[0] * &b[3] + &a[1] * &b[2] - &a[2] * &b[1] + &a[3] * &b[0],
    ]
}

fn quat_conj(a: &[Rat; 4]) -> [Rat; 4] {
    [a[0].clone(), -a[1].clone(), -a[2].clone(), -a[3].clone()]
}

fn quat_add(a: &[Rat; 4], b: &[Rat; 4]) -> [Rat; 4] {
    std::array::from_fn(|k| &a[k] + &b[k])
}

fn quat_sub(a: &[Rat; 4], b: &[Rat; 4]) -> [Rat; 4] {
    std::array::from_fn(|k| &a[k] - &b[k])
}

/// Element of `H₃(O)`: diagonal `(a, b, c)` and off-diagonal octonions
/// `(x, y, z)` for the Hermitian matrix
///
/// ```text
/// [ a   z   ȳ ]
/// [ z̄   b   x ]
/// [ y   x̄   c ]
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanElement {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub x: Octonion,
    pub y: Octonion,
    pub z: Octonion,
}

pub const JORDAN_DIM: usize = 27;

impl JordanElement {
    pub fn zero() -> Self {
        JordanElement {
            a: Rat::zero(),
            b: Rat::zero(),
            c: Rat::zero(),
            x: Octonion::zero(),
            y: Octonion::zero(),
            z: Octonion::zero(),
        }
    }

    pub fn diag(a: Rat, b: Rat, c: Rat) -> Self {
        JordanElement {
            a,
            b,
            c,
            ..JordanElement::zero()
        }
    }

    /// The Jordan identity element `diag(1,1,1)`.
    pub fn identity() -> Self {
        JordanElement::diag(rat(1), rat(1), rat(1))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero()
            && self.b.is_zero()
            && self.c.is_zero()
            && self.x.is_zero()
            && self.y.is_zero()
            && self.z.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        JordanElement {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            c: &self.c + &other.c,
            x: self.x.add(&other.x),
            y: self.y.add(&other.y),
            z: self.z.add(&other.z),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        JordanElement {
            a: &self.a * s,
            b: &self.b * s,
            c: &self.c * s,
            x: self.x.scale(s),
            y: self.y.scale(s),
            z: self.z.scale(s),
        }
    }

    /// Flat 27 coordinates `(a, b, c, x0..x7, y0..y7, z0..z7)`.
    pub fn to_coords(&self) -> Vec<Rat> {
        let mut v = vec![self.a.clone(), self.b.clone(), self.c.clone()];
        v.extend(self.x.0.iter().cloned());
        v.extend(self.y.0.iter().cloned());
        v.extend(self.z.0.iter().cloned());
        v
    }

    pub fn from_coords(v: &[Rat]) -> Self {
        assert_eq!(v.len(), JORDAN_DIM);
        JordanElement {
            a: v[0].clone(),
            b: v[1].clone(),
            c: v[2].clone(),
            x: Octonion(std::array::from_fn(|k| v[3 + k].clone())),
            y: Octonion(std::array::from_fn(|k| v[11 + k].clone())),
            z: Octonion(std::array::from_fn(|k| v[19 + k].clone())),
        }
    }

    pub fn random(rng: &mut impl Rng) -> Self {
        let coords = rngutil::small_rat_vec(rng, JORDAN_DIM);
        JordanElement::from_coords(&coords)
    }
}

/// The Cartan cubic norm, normalized so `N(diag(1,1,1)) = 1`:
/// `N(X) = abc - a·n(x) - b·n(y) - c·n(z) + 2·Re((x·y)·z)`.
pub fn cubic_norm(v: &JordanElement) -> Rat {
    &v.a * &v.b * &v.c - &v.a * v.x.norm() - &v.b * v.y.norm() - &v.c * v.z.norm()
        + rat(2) * v.x.mul(&v.y).mul(&v.z).re()
}

/// Directional derivative `D_Y N(X)`, exact for the cubic form:
/// `N(X+Y) - N(X-Y) = 2 D_Y N(X) + 2 N(Y)`.
fn norm_derivative(x: &JordanElement, y: &JordanElement) -> Rat {
    (cubic_norm(&x.add(y)) - cubic_norm(&x.sub(y))) / rat(2) - cubic_norm(y)
}

/// Trace pairing `T(X, Y) = Σ diag products + 2Σ ⟨off-diagonals⟩`, the
/// bilinear form in which the sharp map is the gradient of `N`.
pub fn trace_pairing(u: &JordanElement, v: &JordanElement) -> Rat {
    &u.a * &v.a
        + &u.b * &v.b
        + &u.c * &v.c
        + rat(2) * (u.x.dot(&v.x) + u.y.dot(&v.y) + u.z.dot(&v.z))
}

/// The quadratic adjoint `X#`, defined by `T(X#, Y) = D_Y N(X)`. Vanishes
/// exactly on the rank-1 cone.
pub fn sharp(x: &JordanElement) -> JordanElement {
    let mut grad = Vec::with_capacity(JORDAN_DIM);
    for k in 0..JORDAN_DIM {
        let mut basis = vec![Rat::zero(); JORDAN_DIM];
        basis[k] = rat(1);
        grad.push(norm_derivative(x, &JordanElement::from_coords(&basis)));
    }
    // invert the diagonal trace pairing: weight 1 on diag, 2 off-diag
    for (k, g) in grad.iter_mut().enumerate() {
        if k >= 3 {
            *g *= ratq(1, 2);
        }
    }
    JordanElement::from_coords(&grad)
}

/// Freudenthal cross product, the polarization of the sharp map:
/// `X × Y = (X+Y)# - X# - Y#`.
pub fn cross(x: &JordanElement, y: &JordanElement) -> JordanElement {
    sharp(&x.add(y)).sub(&sharp(x)).sub(&sharp(y))
}

const RANK1_REDRAW_BUDGET: usize = 64;

/// Random nonzero element of the rank-1 cone, certified by `sharp = 0`.
///
/// Built as the Hermitian square of a column `(u, v, λ)` with real third
/// coordinate, so the entries associate; the certificate is still checked
/// and the element redrawn on failure.
pub fn rank1_sample(seed: u64) -> Result<JordanElement, JordanError> {
    let mut rng = rngutil::rng_from_seed(seed);
    for _ in 0..RANK1_REDRAW_BUDGET {
        let u = Octonion::random(&mut rng);
        let v = Octonion::random(&mut rng);
        let lambda = rat(rngutil::small_int(&mut rng));
        let l = Octonion::real(lambda);
        let cand = JordanElement {
            a: u.norm(),
            b: v.norm(),
            c: l.norm(),
            x: v.mul(&l.conj()),
            y: l.mul(&u.conj()),
            z: u.mul(&v.conj()),
        };
        if !cand.is_zero() && sharp(&cand).is_zero() {
            return Ok(cand);
        }
    }
    Err(JordanError::SamplerExhausted)
}
