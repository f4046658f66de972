//! Restriction of a pencil to a random linear section. The subspace
//! `L ⊂ V` is drawn with integer coordinates and the pencil becomes a
//! matrix of degree-`k` forms in the `d + 1` section coordinates, exported
//! with exact rational coefficients in graded-lex monomial order.
//!
//! Smoothness of the section is not certified (that would take elimination
//! theory); instead the draw is accompanied by evidence: the restricted
//! invariant is not identically zero, the determinant identity holds on
//! the section, and the invariant restricted to random lines inside the
//! section is squarefree of full degree — so every crossing of the
//! hypersurface seen by those lines is transverse.

use num_traits::Zero;
use serde::Serialize;

use super::{rat_pow, CaseDescriptor, Check, EngineError, Report};
use crate::exactla::{format_rat, rat, Matrix, Rat};
use crate::poly::UnivariatePoly;
use crate::rngutil;

/// A pencil restricted to `P^d`: entries are coefficient vectors over the
/// graded-lex monomials of degree `k` in `d + 1` variables.
pub struct SectionPresentation {
    pub case: String,
    pub d: usize,
    pub k: u32,
    pub dim_a: usize,
    /// Seed that drew the subspace.
    pub seed: u64,
    /// Basis of `L`: `d + 1` vectors of length `dim V`.
    pub subspace: Vec<Vec<Rat>>,
    /// Exponent vectors of the degree-`k` monomials, graded-lex.
    pub monomials: Vec<Vec<u32>>,
    /// `entries[r][c][m]` is the coefficient of `monomials[m]` in the
    /// `(r, c)` entry.
    pub entries: Vec<Vec<Vec<Rat>>>,
}

#[derive(Serialize)]
struct SectionJson<'a> {
    case: &'a str,
    d: usize,
    k: u32,
    #[serde(rename = "dimA")]
    dim_a: usize,
    matrix: Vec<Vec<Vec<String>>>,
    monomial_order: &'static str,
    subspace: Vec<Vec<String>>,
}

impl SectionPresentation {
    /// Evaluate the restricted pencil at section coordinates `x`.
    pub fn evaluate(&self, x: &[Rat]) -> Matrix {
        assert_eq!(x.len(), self.d + 1);
        let mono_values: Vec<Rat> = self
            .monomials
            .iter()
            .map(|expo| {
                let mut acc = rat(1);
                for (i, &e) in expo.iter().enumerate() {
                    for _ in 0..e {
                        acc *= &x[i];
                    }
                }
                acc
            })
            .collect();
        Matrix::from_fn(self.dim_a, self.dim_a, |r, c| {
            self.entries[r][c]
                .iter()
                .zip(&mono_values)
                .map(|(coef, m)| coef * m)
                .sum()
        })
    }

    /// Point of `V` under the subspace embedding.
    pub fn embed(&self, x: &[Rat]) -> Vec<Rat> {
        let dim_v = self.subspace[0].len();
        let mut v = vec![Rat::zero(); dim_v];
        for (xi, basis) in x.iter().zip(&self.subspace) {
            for (vi, bi) in v.iter_mut().zip(basis) {
                *vi += xi * bi;
            }
        }
        v
    }

    pub fn to_json(&self) -> String {
        let json = SectionJson {
            case: &self.case,
            d: self.d,
            k: self.k,
            dim_a: self.dim_a,
            matrix: self
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| cell.iter().map(format_rat).collect())
                        .collect()
                })
                .collect(),
            monomial_order: "graded-lex",
            subspace: self
                .subspace
                .iter()
                .map(|v| v.iter().map(format_rat).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&json).expect("section serializes")
    }
}

/// Degree-`m` monomial exponents in `vars` variables, graded-lex
/// (leading variable first, descending).
pub(crate) fn monomials(vars: usize, m: u32) -> Vec<Vec<u32>> {
    fn go(vars: usize, m: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            let mut full = acc.clone();
            full.push(m);
            out.push(full);
            return;
        }
        for e in (0..=m).rev() {
            acc.push(e);
            go(vars - 1, m - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, m, &mut Vec::new(), &mut out);
    out
}

const SECTION_REDRAW_BUDGET: usize = 32;
const LINE_REDRAW_BUDGET: usize = 8;

/// Draw a subspace with independent basis and restricted invariant not
/// identically zero (tested at random points, which is conclusive up to
/// the usual random-evaluation evidence).
pub(crate) fn draw_section(
    case: &CaseDescriptor,
    d: usize,
    seed: u64,
) -> Result<SectionPresentation, EngineError> {
    if d < 1 || d.saturating_sub(1) > case.section_budget {
        return Err(EngineError::SectionBudget {
            case: case.name.to_string(),
            d,
            max: case.section_budget + 1,
        });
    }
    let mut rng = rngutil::rng_from_seed(seed);
    for _ in 0..SECTION_REDRAW_BUDGET {
        let basis: Vec<Vec<Rat>> = (0..=d)
            .map(|_| rngutil::small_rat_vec(&mut rng, case.dim_v))
            .collect();
        if crate::exactla::span_rank(&basis) != d + 1 {
            continue;
        }
        let pres = build_presentation(case, d, seed, basis);
        let nonzero = (0..40).any(|_| {
            let x = rngutil::small_rat_vec(&mut rng, d + 1);
            !case.invariant(&pres.embed(&x)).is_zero()
        });
        if nonzero {
            return Ok(pres);
        }
    }
    Err(EngineError::DegenerateSection)
}

fn build_presentation(
    case: &CaseDescriptor,
    d: usize,
    seed: u64,
    basis: Vec<Vec<Rat>>,
) -> SectionPresentation {
    let monos = monomials(d + 1, case.map_degree);
    let n = case.dim_a;
    let mut entries = vec![vec![vec![Rat::zero(); monos.len()]; n]; n];
    let mono_index = |expo: &[u32]| {
        monos
            .iter()
            .position(|m| m == expo)
            .expect("valid monomial")
    };

    match case.map_degree {
        1 => {
            for (i, b) in basis.iter().enumerate() {
                let phi_b = case.phi(b);
                let mut expo = vec![0u32; d + 1];
                expo[i] = 1;
                let mi = mono_index(&expo);
                for r in 0..n {
                    for c in 0..n {
                        entries[r][c][mi] = phi_b.at(r, c).clone();
                    }
                }
            }
        }
        2 => {
            let phis: Vec<Matrix> = basis.iter().map(|b| case.phi(b)).collect();
            for i in 0..=d {
                let mut expo = vec![0u32; d + 1];
                expo[i] = 2;
                let mi = mono_index(&expo);
                for r in 0..n {
                    for c in 0..n {
                        entries[r][c][mi] = phis[i].at(r, c).clone();
                    }
                }
            }
            for i in 0..=d {
                for j in i + 1..=d {
                    let sum: Vec<Rat> =
                        basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                    let cross = case.phi(&sum).sub(&phis[i]).sub(&phis[j]);
                    let mut expo = vec![0u32; d + 1];
                    expo[i] = 1;
                    expo[j] = 1;
                    let mi = mono_index(&expo);
                    for r in 0..n {
                        for c in 0..n {
                            entries[r][c][mi] = cross.at(r, c).clone();
                        }
                    }
                }
            }
        }
        k => unreachable!("no registered case has pencil degree {k}"),
    }

    SectionPresentation {
        case: case.name.to_string(),
        d,
        k: case.map_degree,
        dim_a: case.dim_a,
        seed,
        subspace: basis,
        monomials: monos,
        entries,
    }
}

/// Draws a section and attaches the smoothness evidence. Returns the
/// presentation together with the evidence report.
pub fn restrict_section(
    case: &CaseDescriptor,
    d: usize,
    seed: u64,
) -> Result<(SectionPresentation, Report), EngineError> {
    let pres = draw_section(case, d, seed)?;
    let mut report = Report::new(case.name, seed);
    let mut rng = rngutil::rng_from_seed(seed.wrapping_add(0x5EC7));

    // determinant identity within the section, against the global constant
    let c = case.det_calibration();
    let mut det_ok = true;
    for _ in 0..10 {
        let x = rngutil::small_rat_vec(&mut rng, d + 1);
        let v = pres.embed(&x);
        let lhs = pres.evaluate(&x).det().expect("square");
        let rhs = &c * rat_pow(&case.invariant(&v), case.expected_rank);
        if lhs != rhs {
            det_ok = false;
            break;
        }
    }
    report.checks.push(Check::new(
        "section-det-identity",
        "det-power-law",
        det_ok,
        format!("det(phi|L) = c*h^{} at 10 points of L", case.expected_rank),
    ));

    // transversality evidence along random lines in L
    let mut lines_ok = 0;
    for _ in 0..10 {
        if line_is_transverse(case, &pres, &mut rng) {
            lines_ok += 1;
        }
    }
    report.checks.push(Check::new(
        "section-line-transversality",
        "generic-smooth-section",
        lines_ok == 10,
        format!(
            "h|L restricted to {lines_ok}/10 random lines is squarefree of degree {}",
            case.deg_h
        ),
    ));
    Ok((pres, report))
}

/// The invariant restricted to a random line in the section must be a
/// squarefree polynomial of full degree: its roots are the points where
/// the line crosses the hypersurface, and simple roots mean the gradient
/// of `h|L` cannot vanish there along the line.
fn line_is_transverse(
    case: &CaseDescriptor,
    pres: &SectionPresentation,
    rng: &mut impl rand::Rng,
) -> bool {
    for _ in 0..LINE_REDRAW_BUDGET {
        let p = rngutil::small_rat_vec(rng, pres.d + 1);
        let q = rngutil::small_rat_vec(rng, pres.d + 1);
        let points: Vec<(Rat, Rat)> = (0..=case.deg_h as i64)
            .map(|t| {
                let x: Vec<Rat> = p.iter().zip(&q).map(|(a, b)| a + rat(t) * b).collect();
                (rat(t), case.invariant(&pres.embed(&x)))
            })
            .collect();
        let poly = UnivariatePoly::interpolate(&points).expect("distinct nodes");
        if poly.degree() == Some(case.deg_h as usize) && poly.is_squarefree() {
            return true;
        }
    }
    false
}
