//! The quadratic pencil attached to three-forms in six variables. The
//! quartic invariant of `Λ³V₆` gives an equivariant quadratic map
//! `θ : Λ³V₆ → sl₆` (polarize, wedge back to `Λ⁵V₆ ≅ V₆*`, project to the
//! traceless part), and with it quadratic pencils on the modules `V₆`,
//! `V₆*` and `Λ³V₆` itself. On the tangent-variety quartic the pencil on
//! `V₆` drops rank by exactly 3; on `Λ³V₆` it drops rank by 11, which is
//! the obstruction to the cokernel being a bundle on the hypersurface.

use num_traits::Zero;
use once_cell::sync::Lazy;
use thiserror::Error;

use crate::exactla::{rat, ratq, Matrix, Rat};
use crate::exterior::{basis_tuples, ExtElement};
use crate::rngutil;

pub const DIM_V: u32 = 6;
pub const DIM_WEDGE3: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Sl6Error {
    #[error("orbit sampler exhausted its redraw budget")]
    SamplerExhausted,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// A three-form in six variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeForm6(ExtElement);

impl ThreeForm6 {
    pub fn new(el: ExtElement) -> Self {
        assert_eq!(el.ambient_dim(), DIM_V);
        assert_eq!(el.grade(), 3);
        ThreeForm6(el)
    }

    pub fn from_terms(terms: &[(&[u32], Rat)]) -> Self {
        ThreeForm6(ExtElement::from_terms(DIM_V, 3, terms))
    }

    pub fn from_dense(coords: &[Rat]) -> Self {
        ThreeForm6(ExtElement::from_dense(DIM_V, 3, coords))
    }

    pub fn element(&self) -> &ExtElement {
        &self.0
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        self.0.to_dense()
    }

    pub fn scale(&self, s: &Rat) -> Self {
        ThreeForm6(self.0.scale(s))
    }
}

/// Traceless endomorphism of `V₆`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl6Element(Matrix);

impl Sl6Element {
    pub fn new(m: Matrix) -> Self {
        assert_eq!((m.rows(), m.cols()), (6, 6));
        assert!(m.trace().is_zero(), "sl6 elements are traceless");
        Sl6Element(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// The generic-orbit representative `e₁₂₃ + e₄₅₆`.
pub fn omega0() -> ThreeForm6 {
    ThreeForm6::from_terms(&[(&[1, 2, 3], rat(1)), (&[4, 5, 6], rat(1))])
}

/// General point of the quartic: `e₁₂₆ + e₂₃₄ + e₃₁₅`, a general element
/// of the affine tangent space at `⟨e₁, e₂, e₃⟩`.
pub fn omega1() -> ThreeForm6 {
    ThreeForm6::from_terms(&[
        (&[1, 2, 6], rat(1)),
        (&[2, 3, 4], rat(1)),
        (&[3, 1, 5], rat(1)),
    ])
}

/// The raw quadratic expression: polarize the second argument into
/// `Λ²V₆ ⊗ V₆`, wedge the first argument into `Λ⁵V₆`, and read the result
/// as an endomorphism through the `Λ⁵V₆ ≅ V₆*` trivialization.
fn theta_raw(w1: &ExtElement, w2: &ExtElement) -> Matrix {
    let mut entries = vec![Rat::zero(); 36];
    for (tuple, c) in w2.terms() {
        let (i, j, k) = (tuple[0], tuple[1], tuple[2]);
        // deconcatenation of e_{ijk} into (2-part, 1-part) with Koszul signs
        let parts: [([u32; 2], u32, i64); 3] = [([i, j], k, 1), ([i, k], j, -1), ([j, k], i, 1)];
        for (p, m, sgn) in parts {
            let five = w1.wedge(&ExtElement::basis(DIM_V, &p)).expect("ambient 6");
            if five.is_zero() {
                continue;
            }
            for l in 1..=DIM_V {
                let val = five
                    .top_pair(&ExtElement::basis(DIM_V, &[l]))
                    .expect("grades 5 + 1 = 6");
                if !val.is_zero() {
                    let cell = &mut entries[((m - 1) * 6 + (l - 1)) as usize];
                    *cell += &c * rat(sgn) * val;
                }
            }
        }
    }
    Matrix::new(6, 6, entries)
}

fn traceless(m: &Matrix) -> Matrix {
    let t = m.trace() * ratq(1, 6);
    m.sub(&Matrix::identity(6).scale(&t))
}

/// Overall scalar pinned once by `θ(ω₀) = Id_A − Id_B`; the equivariant
/// projection is unique up to this constant.
static KAPPA: Lazy<Rat> = Lazy::new(|| {
    let raw = traceless(&theta_raw(omega0().element(), omega0().element()));
    let expected = theta_omega0_expected();
    let mut kappa: Option<Rat> = None;
    for r in 0..6 {
        for c in 0..6 {
            let e = expected.at(r, c);
            let g = raw.at(r, c);
            if e.is_zero() != g.is_zero() {
                panic!("theta(omega0) is not proportional to Id_A - Id_B");
            }
            if !e.is_zero() {
                let ratio = e / g;
                if let Some(k) = &kappa {
                    assert_eq!(k, &ratio, "inconsistent scalar in calibration");
                } else {
                    kappa = Some(ratio);
                }
            }
        }
    }
    let kappa = kappa.expect("theta(omega0) vanished");
    assert_eq!(raw.scale(&kappa), expected);
    kappa
});

fn theta_omega0_expected() -> Matrix {
    Matrix::from_fn(6, 6, |r, c| {
        if r != c {
            rat(0)
        } else if r < 3 {
            rat(1)
        } else {
            rat(-1)
        }
    })
}

/// The equivariant quadratic map into `sl₆`, normalized so that
/// `θ(e₁₂₃ + e₄₅₆) = diag(1, 1, 1, -1, -1, -1)`.
pub fn sl6_theta(omega: &ThreeForm6) -> Sl6Element {
    Sl6Element::new(traceless(&theta_raw(omega.element(), omega.element())).scale(&KAPPA))
}

/// Modules on which the pencil acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sl6Module {
    V6,
    V6Dual,
    Wedge3V6,
}

impl Sl6Module {
    pub fn dim(self) -> usize {
        match self {
            Sl6Module::V6 | Sl6Module::V6Dual => 6,
            Sl6Module::Wedge3V6 => DIM_WEDGE3,
        }
    }
}

/// Matrix of `θ(ω)` on the chosen module: the natural action on `V₆`, the
/// negative transpose on `V₆*`, the derivation action on `Λ³V₆`.
pub fn sl6_theta_module(omega: &ThreeForm6, module: Sl6Module) -> Matrix {
    let theta = sl6_theta(omega);
    match module {
        Sl6Module::V6 => theta.0,
        Sl6Module::V6Dual => theta.0.transpose().scale(&rat(-1)),
        Sl6Module::Wedge3V6 => derivation_on_wedge3(theta.matrix()),
    }
}

/// Derivation action of an endomorphism on `Λ³V₆`:
/// `e_K ↦ Σ_p (-1)^p (M e_{k_p}) ∧ e_{K \ k_p}`.
fn derivation_on_wedge3(m: &Matrix) -> Matrix {
    let tuples = basis_tuples(DIM_V, 3);
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let mut acc = ExtElement::zero(DIM_V, 3);
        for (p, &idx) in t.iter().enumerate() {
            let image_col = ExtElement::from_dense(
                DIM_V,
                1,
                &(0..6)
                    .map(|r| m.at(r, (idx - 1) as usize).clone())
                    .collect::<Vec<_>>(),
            );
            let rest: Vec<u32> = t.iter().copied().filter(|&x| x != idx).collect();
            let wedge = image_col
                .wedge(&ExtElement::basis(DIM_V, &rest))
                .expect("ambient 6");
            let signed = if p % 2 == 0 {
                wedge
            } else {
                wedge.scale(&rat(-1))
            };
            acc = acc.add(&signed);
        }
        cols.push(acc.to_dense());
    }
    Matrix::from_fn(DIM_WEDGE3, DIM_WEDGE3, |r, c| cols[c][r].clone())
}

/// The quartic invariant `tr(θ(ω)²)`, normalized so `h(ω₀) = 1`; the trace
/// form stands in for the Killing form, which is proportional to it.
pub fn sl6_quartic(omega: &ThreeForm6) -> Rat {
    let theta = sl6_theta(omega);
    theta.0.mul(&theta.0).trace() * ratq(1, 6)
}

const SAMPLE_REDRAW_BUDGET: usize = 64;

/// Random point of the open orbit of the quartic: `Λ³(g)·ω₁` for random
/// `g` with `det g = 1` enforced by scaling a column. Vanishing of the
/// invariant and corank 3 on `V₆` are asserted.
pub fn sl6_sample_h(seed: u64) -> Result<ThreeForm6, Sl6Error> {
    let mut rng = rngutil::rng_from_seed(seed);
    for _ in 0..SAMPLE_REDRAW_BUDGET {
        let raw = Matrix::from_fn(6, 6, |_, _| rat(rngutil::small_int(&mut rng)));
        let det = raw.det().expect("square");
        if det.is_zero() {
            continue;
        }
        // divide the first column by the determinant: det becomes 1
        let g = Matrix::from_fn(6, 6, |r, c| {
            if c == 0 {
                raw.at(r, c) / &det
            } else {
                raw.at(r, c).clone()
            }
        });
        let cand = ThreeForm6(omega1().0.lambda_power_action(&g).expect("6x6"));
        if !sl6_quartic(&cand).is_zero() {
            continue;
        }
        if sl6_theta_module(&cand, Sl6Module::V6).corank() == 3 {
            return Ok(cand);
        }
    }
    Err(Sl6Error::SamplerExhausted)
}

/// For a point of the open orbit: the three-space `A(ω)`, computed as the
/// image of `θ_{V₆}(ω)`. Image = kernel and the tangency membership
/// `ω ∈ Λ²A ∧ V₆` are asserted.
pub fn sl6_pi_fiber(omega: &ThreeForm6) -> Result<Vec<Vec<Rat>>, Sl6Error> {
    let m = sl6_theta_module(omega, Sl6Module::V6);
    if m.corank() != 3 {
        return Err(Sl6Error::PreconditionFailed(format!(
            "corank on V6 is {}, need 3",
            m.corank()
        )));
    }
    let image = m.column_space_basis();
    let kernel = m.kernel_basis();
    if !crate::exactla::same_span(&image, &kernel) {
        return Err(Sl6Error::PreconditionFailed(
            "image and kernel of theta differ".into(),
        ));
    }
    // tangency: ω ∈ Λ²A ∧ V₆
    let a: Vec<ExtElement> = image
        .iter()
        .map(|v| ExtElement::from_dense(DIM_V, 1, v))
        .collect();
    let mut span: Vec<Vec<Rat>> = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let two = a[i].wedge(&a[j]).expect("ambient 6");
            for k in 1..=DIM_V {
                let w = two
                    .wedge(&ExtElement::basis(DIM_V, &[k]))
                    .expect("ambient 6");
                if !w.is_zero() {
                    span.push(w.to_dense());
                }
            }
        }
    }
    let r = crate::exactla::span_rank(&span);
    let mut stacked = span;
    stacked.push(omega.to_dense());
    if crate::exactla::span_rank(&stacked) != r {
        return Err(Sl6Error::PreconditionFailed(
            "omega is not tangent to the Grassmannian at A".into(),
        ));
    }
    Ok(image)
}

/// Multiplicity of each candidate eigenvalue of `θ(ω)` on `Λ³V₆`, computed
/// as the rank drop of `θ - λ·Id`.
pub fn sl6_wedge3_eigen_multiplicities(omega: &ThreeForm6, lambdas: &[i64]) -> Vec<(i64, usize)> {
    let m = sl6_theta_module(omega, Sl6Module::Wedge3V6);
    lambdas
        .iter()
        .map(|&l| {
            let shifted = m.sub(&Matrix::identity(DIM_WEDGE3).scale(&rat(l)));
            (l, DIM_WEDGE3 - shifted.rank())
        })
        .collect()
}
