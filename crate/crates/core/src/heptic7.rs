//! Three-forms in seven variables. Every `ω ∈ Λ³V₇` induces a symmetric
//! 21x21 pencil `φ(ω) : Λ²V₇ → Λ⁵V₇`, and the orbit structure is governed
//! by a degree-seven invariant `h` with `det(φ) = h³` after normalization.
//! There is no usable closed formula for `h`; it is computed by exact cube
//! roots, through two independent routes that are required to agree:
//!
//! * pointwise, as the rational cube root of `det(φ(ω)) / det(φ(ω_gen))`,
//! * along pencils, as the polynomial cube root of the interpolated
//!   `det(φ(ω(t)))`.

use num_traits::Zero;
use thiserror::Error;

use crate::exactla::{rat, Matrix, Rat};
use crate::exterior::{basis_tuples, ExtElement};
use crate::poly::{rational_cube_root, PolyError, UnivariatePoly};
use crate::rngutil;

pub const DIM_V: u32 = 7;
pub const DIM_WEDGE2: usize = 21;
pub const DIM_WEDGE3: usize = 35;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HepticError {
    #[error("pencil base point has singular pencil matrix")]
    SingularBasePoint,
    #[error("determinant along the pencil is not an exact polynomial cube")]
    NotAPerfectCube,
    #[error("orbit sampler exhausted its redraw budget")]
    SamplerExhausted,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

impl From<PolyError> for HepticError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::NotAPerfectCube => HepticError::NotAPerfectCube,
            PolyError::RepeatedNodes => unreachable!("nodes are distinct by construction"),
        }
    }
}

/// A three-form in seven variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeForm7(ExtElement);

impl ThreeForm7 {
    pub fn new(el: ExtElement) -> Self {
        assert_eq!(el.ambient_dim(), DIM_V);
        assert_eq!(el.grade(), 3);
        ThreeForm7(el)
    }

    pub fn zero() -> Self {
        ThreeForm7(ExtElement::zero(DIM_V, 3))
    }

    pub fn from_terms(terms: &[(&[u32], Rat)]) -> Self {
        ThreeForm7(ExtElement::from_terms(DIM_V, 3, terms))
    }

    pub fn from_dense(coords: &[Rat]) -> Self {
        ThreeForm7(ExtElement::from_dense(DIM_V, 3, coords))
    }

    pub fn element(&self) -> &ExtElement {
        &self.0
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        self.0.to_dense()
    }

    pub fn add(&self, other: &Self) -> Self {
        ThreeForm7(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        ThreeForm7(self.0.sub(&other.0))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        ThreeForm7(self.0.scale(s))
    }
}

/// Representative of the open orbit (`h ≠ 0`), stabilized by `G₂`.
pub fn omega0() -> ThreeForm7 {
    ThreeForm7::from_terms(&[
        (&[1, 2, 3], rat(1)),
        (&[4, 5, 6], rat(1)),
        (&[1, 4, 7], rat(1)),
        (&[2, 5, 7], rat(1)),
        (&[3, 6, 7], rat(1)),
    ])
}

/// Representative of the open orbit inside the invariant hypersurface.
pub fn omega1() -> ThreeForm7 {
    ThreeForm7::from_terms(&[
        (&[1, 2, 3], rat(1)),
        (&[4, 5, 6], rat(1)),
        (&[1, 4, 7], rat(1)),
        (&[2, 5, 7], rat(1)),
    ])
}

/// Representative of the 31-dimensional orbit, a singular point of the
/// hypersurface.
pub fn omega2() -> ThreeForm7 {
    ThreeForm7::from_terms(&[
        (&[1, 2, 3], rat(1)),
        (&[4, 5, 6], rat(1)),
        (&[1, 4, 7], rat(1)),
    ])
}

/// The symmetric pencil: entry `(I, J)` is the coefficient of `e_{1..7}` in
/// `ω ∧ e_I ∧ e_J`, over the lexicographic basis of `Λ²V₇`.
pub fn heptic_phi(omega: &ThreeForm7) -> Matrix {
    let pairs = basis_tuples(DIM_V, 2);
    let wedges: Vec<ExtElement> = pairs
        .iter()
        .map(|t| {
            omega
                .0
                .wedge(&ExtElement::basis(DIM_V, t))
                .expect("same ambient dimension")
        })
        .collect();
    Matrix::from_fn(DIM_WEDGE2, DIM_WEDGE2, |i, j| {
        wedges[i]
            .top_pair(&ExtElement::basis(DIM_V, &pairs[j]))
            .expect("grades 5 + 2 = 7")
    })
}

/// Kernel of `φ(ω₁)` as stated for the orbit representative:
/// `⟨e₁₅, e₂₄, e₁₄ − e₂₅⟩` in `Λ²V₇`.
pub fn omega1_kernel_span() -> Vec<Vec<Rat>> {
    vec![
        ExtElement::basis(DIM_V, &[1, 5]).to_dense(),
        ExtElement::basis(DIM_V, &[2, 4]).to_dense(),
        ExtElement::from_terms(DIM_V, 2, &[(&[1, 4], rat(1)), (&[2, 5], rat(-1))]).to_dense(),
    ]
}

const SAMPLE_REDRAW_BUDGET: usize = 64;

/// Random point of the open orbit in the hypersurface: `Λ³(g)·ω₁` for a
/// random invertible `g`, with corank 3 asserted.
pub fn heptic_sample_h(seed: u64) -> Result<ThreeForm7, HepticError> {
    let mut rng = rngutil::rng_from_seed(seed);
    for _ in 0..SAMPLE_REDRAW_BUDGET {
        let g = random_unimodular(&mut rng, 7);
        let moved = omega1()
            .0
            .lambda_power_action(&g)
            .expect("dimensions agree");
        let cand = ThreeForm7(moved);
        if heptic_phi(&cand).corank() == 3 {
            return Ok(cand);
        }
    }
    Err(HepticError::SamplerExhausted)
}

/// Random integer unimodular matrix: a product of a unit lower- and a unit
/// upper-triangular matrix with small entries.
pub(crate) fn random_unimodular(rng: &mut impl rand::Rng, n: usize) -> Matrix {
    let mut entries_l = Matrix::identity(n);
    let mut entries_u = Matrix::identity(n);
    entries_l = Matrix::from_fn(n, n, |r, c| {
        if r > c {
            rat(rng.gen_range(-2..=2))
        } else {
            entries_l.at(r, c).clone()
        }
    });
    entries_u = Matrix::from_fn(n, n, |r, c| {
        if r < c {
            rat(rng.gen_range(-2..=2))
        } else {
            entries_u.at(r, c).clone()
        }
    });
    entries_l.mul(&entries_u)
}

/// `p(t) = det(φ(ω_a + t·ω_b))`, interpolated exactly on the nodes
/// `0, ±1, ±2, ..., ±10, 11` (degree is at most 21), then reduced to the
/// unique `q` with `q(0) = 1` and `q(t)³ = p(t)/p(0)`.
pub fn heptic_cuberoot_line(
    omega_a: &ThreeForm7,
    omega_b: &ThreeForm7,
) -> Result<UnivariatePoly, HepticError> {
    let p = pencil_determinant(omega_a, omega_b);
    let p0 = p.coeff(0);
    if p0.is_zero() {
        return Err(HepticError::SingularBasePoint);
    }
    Ok(p.scale(&p0.recip()).cube_root_monic()?)
}

fn pencil_determinant(omega_a: &ThreeForm7, omega_b: &ThreeForm7) -> UnivariatePoly {
    let mut nodes: Vec<i64> = vec![0];
    for k in 1..=10i64 {
        nodes.push(k);
        nodes.push(-k);
    }
    nodes.push(11);
    let points: Vec<(Rat, Rat)> = nodes
        .into_iter()
        .map(|t| {
            let omega_t = omega_a.add(&omega_b.scale(&rat(t)));
            let det = heptic_phi(&omega_t).det().expect("21x21 is square");
            (rat(t), det)
        })
        .collect();
    UnivariatePoly::interpolate(&points).expect("distinct nodes")
}

/// The degree-seven invariant, normalized by `h(ω₀) = 1`. Computed twice —
/// as the value at `t = 1` of the polynomial cube root along the pencil
/// from `ω₀`, and as the pointwise rational cube root of
/// `det(φ(ω))/det(φ(ω₀))` — and the two must agree exactly.
pub fn heptic_invariant(omega: &ThreeForm7) -> Result<Rat, HepticError> {
    let q = heptic_cuberoot_line(&omega0(), &omega.sub(&omega0()))?;
    let along_pencil = q.eval(&rat(1));
    let pointwise = heptic_invariant_fast(omega)?;
    if along_pencil != pointwise {
        return Err(HepticError::NotAPerfectCube);
    }
    Ok(along_pencil)
}

/// Pointwise route only: the rational cube root of
/// `det(φ(ω))/det(φ(ω₀))`. This is the evaluator wired into the generic
/// verification engine; the pencil route cross-checks it.
pub fn heptic_invariant_fast(omega: &ThreeForm7) -> Result<Rat, HepticError> {
    let det = heptic_phi(omega).det().expect("21x21 is square");
    let base = heptic_phi(&omega0()).det().expect("21x21 is square");
    rational_cube_root(&(det / base)).ok_or(HepticError::NotAPerfectCube)
}

/// Does `ω₂` lie in `Λ²U ∧ V₇` for `U = ⟨e₁, e₄, s·e₂ + t·e₃, u·e₅ + v·e₆⟩`?
pub fn heptic_fiber_family(s: &Rat, t: &Rat, u: &Rat, v: &Rat) -> bool {
    assert!(!(s.is_zero() && t.is_zero()), "(s, t) must be nonzero");
    assert!(!(u.is_zero() && v.is_zero()), "(u, v) must be nonzero");
    let e = |i: u32| ExtElement::basis(DIM_V, &[i]);
    let u_basis = vec![
        e(1),
        e(4),
        e(2).scale(s).add(&e(3).scale(t)),
        e(5).scale(u).add(&e(6).scale(v)),
    ];
    subspace_membership(&u_basis, omega2().element())
}

/// Membership of `ω` in `Λ²U ∧ V₇` for a 4-dimensional `U ⊂ V₇` given by
/// grade-1 elements.
pub fn subspace_membership(u_basis: &[ExtElement], omega: &ExtElement) -> bool {
    let span = wedge2u_v7_span(u_basis);
    let mut stacked = span.clone();
    stacked.push(omega.to_dense());
    crate::exactla::span_rank(&span) == crate::exactla::span_rank(&stacked)
}

/// Spanning vectors of `Λ²U ∧ V₇` inside `Λ³V₇`, as dense 35-vectors.
fn wedge2u_v7_span(u_basis: &[ExtElement]) -> Vec<Vec<Rat>> {
    let mut span = Vec::new();
    for a in 0..u_basis.len() {
        for b in a + 1..u_basis.len() {
            let two = u_basis[a].wedge(&u_basis[b]).expect("ambient 7");
            for k in 1..=DIM_V {
                let w = two
                    .wedge(&ExtElement::basis(DIM_V, &[k]))
                    .expect("ambient 7");
                if !w.is_zero() {
                    span.push(w.to_dense());
                }
            }
        }
    }
    span
}

/// For `ω ∈ Λ²U ∧ V₇` of corank 3: does the kernel of `φ(ω)` coincide with
/// the kernel of the wedge map `Λ²U → Λ⁴U ∧ V₇`, `α ↦ ω ∧ α`? Both
/// preconditions are checked.
pub fn heptic_kernel_vs_wedge(
    omega: &ThreeForm7,
    u_basis: &[ExtElement],
) -> Result<bool, HepticError> {
    if u_basis.len() != 4 || u_basis.iter().any(|b| b.grade() != 1) {
        return Err(HepticError::PreconditionFailed(
            "U must be given by four grade-1 elements".into(),
        ));
    }
    let u_rows: Vec<Vec<Rat>> = u_basis.iter().map(ExtElement::to_dense).collect();
    if crate::exactla::span_rank(&u_rows) != 4 {
        return Err(HepticError::PreconditionFailed(
            "U basis is not independent".into(),
        ));
    }
    if !subspace_membership(u_basis, omega.element()) {
        return Err(HepticError::PreconditionFailed(
            "omega does not lie in wedge2(U) ∧ V7".into(),
        ));
    }
    let phi = heptic_phi(omega);
    if phi.corank() != 3 {
        return Err(HepticError::PreconditionFailed(format!(
            "pencil corank is {}, need 3",
            phi.corank()
        )));
    }

    // domain basis of Λ²U
    let mut dom: Vec<ExtElement> = Vec::with_capacity(6);
    for a in 0..4 {
        for b in a + 1..4 {
            dom.push(u_basis[a].wedge(&u_basis[b]).expect("ambient 7"));
        }
    }
    // wedge map into Λ⁵V₇ (the image lands in Λ⁴U ∧ V₇ automatically)
    let cols: Vec<Vec<Rat>> = dom
        .iter()
        .map(|alpha| omega.0.wedge(alpha).expect("ambient 7").to_dense())
        .collect();
    let w = Matrix::from_fn(cols[0].len(), dom.len(), |r, c| cols[c][r].clone());
    let wedge_kernel = w.kernel_basis();
    if wedge_kernel.len() != 3 {
        return Ok(false);
    }
    // express the wedge-map kernel inside Λ²V₇
    let kernel_in_wedge2: Vec<Vec<Rat>> = wedge_kernel
        .iter()
        .map(|coeffs| {
            let mut acc = ExtElement::zero(DIM_V, 2);
            for (c, alpha) in coeffs.iter().zip(&dom) {
                acc = acc.add(&alpha.scale(c));
            }
            acc.to_dense()
        })
        .collect();
    Ok(crate::exactla::same_span(
        &kernel_in_wedge2,
        &phi.kernel_basis(),
    ))
}

/// The parameter count for the family of heptic surfaces cut from the
/// invariant hypersurface: `dim G(4, 35) - dim sl₇`.
pub fn family_dimension() -> (i64, i64, i64) {
    let grassmannian = 4 * (35 - 4);
    let sl7 = 7 * 7 - 1;
    (grassmannian, sl7, grassmannian - sl7)
}
