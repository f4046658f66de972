//! Hilbert functions of the restricted presentations. For a pencil
//! `A ⊗ O(-k) → B ⊗ O` on `P^d` the degree-`m` piece of the cokernel has
//! dimension `dim B·C(m+d, d) − rank(A ⊗ S_{m-k} → B ⊗ S_m)`, and the
//! multiplication matrix is exact integer data, so the values come out
//! exact.

use num_traits::Zero;

use super::section::{draw_section, monomials, SectionPresentation};
use super::{binomial, CaseDescriptor, Check, EngineError, Report};
use crate::exactla::{Matrix, Rat};

/// Exact Hilbert-function values `HF(0), ..., HF(m_max)` of the cokernel
/// of the pencil restricted to a random `P^d` section.
pub fn hilbert_function(
    case: &CaseDescriptor,
    d: usize,
    m_max: u32,
    seed: u64,
) -> Result<Vec<usize>, EngineError> {
    let pres = draw_section(case, d, seed)?;
    Ok((0..=m_max).map(|m| hilbert_value(&pres, m)).collect())
}

pub(crate) fn hilbert_value(pres: &SectionPresentation, m: u32) -> usize {
    let d = pres.d;
    let total = pres.dim_a * binomial(m as usize + d, d);
    if m < pres.k {
        return total;
    }
    total - multiplication_matrix(pres, m).rank()
}

/// Matrix of `A ⊗ S_{m-k} → B ⊗ S_m`: the column for `(a, α)` carries each
/// entry polynomial of column `a` multiplied by the monomial `x^α`.
fn multiplication_matrix(pres: &SectionPresentation, m: u32) -> Matrix {
    let d = pres.d;
    let source_monos = monomials(d + 1, m - pres.k);
    let target_monos = monomials(d + 1, m);
    let target_index: std::collections::HashMap<Vec<u32>, usize> = target_monos
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let rows = pres.dim_a * target_monos.len();
    let cols = pres.dim_a * source_monos.len();
    let mut entries = vec![Rat::zero(); rows * cols];
    for (ai, alpha) in source_monos.iter().enumerate() {
        for a in 0..pres.dim_a {
            let col = a * source_monos.len() + ai;
            for b in 0..pres.dim_a {
                for (bi, beta) in pres.monomials.iter().enumerate() {
                    let coef = &pres.entries[b][a][bi];
                    if coef.is_zero() {
                        continue;
                    }
                    let product: Vec<u32> = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
                    let row = b * target_monos.len() + target_index[&product];
                    entries[row * cols + col] += coef;
                }
            }
        }
    }
    Matrix::new(rows, cols, entries)
}

/// The splitting-exclusion witness on the quartic fourfold: the pencil has
/// twelve independent sections in degree zero, while any direct sum of
/// line bundles compatible with self-duality and global generation would
/// have `36 + 10a` of them.
pub fn unsplit_witness(case: &CaseDescriptor, seed: u64) -> Result<Report, EngineError> {
    let mut report = Report::new(case.name, seed);
    let hf0 = hilbert_function(case, 5, 0, seed)?[0];
    let split_counts: Vec<usize> = (0..=3).map(|a| 36 + 10 * a).collect();
    let ok = hf0 == 12 && !split_counts.contains(&hf0);
    report.checks.push(Check::new(
        "unsplit-witness",
        "section-count-exclusion",
        ok,
        format!("HF(0) = {hf0}; split ranks would need one of {split_counts:?}"),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::find_case;

    #[test]
    fn grassmann_bundle_hilbert_function_on_quartic_surface() {
        let case = find_case("freud-sl6").unwrap();
        let hf = hilbert_function(&case, 3, 4, 17).unwrap();
        let expected: Vec<usize> = (0..=4).map(|m| 6 * (m + 1) * (m + 1)).collect();
        assert_eq!(hf, expected);
    }

    #[test]
    fn heptic_ulrich_hilbert_function_is_linear_resolution() {
        // a linear Ulrich presentation forces HF(m) = 21·C(m+2, 2)
        let case = find_case("heptic7").unwrap();
        let hf = hilbert_function(&case, 3, 2, 23).unwrap();
        let expected: Vec<usize> = (0..=2).map(|m| 21 * binomial(m + 2, 2)).collect();
        assert_eq!(hf, expected);
        assert_eq!(hf, vec![21, 63, 126]);
    }

    #[test]
    fn spinor_bundle_degree_zero_sections() {
        let case = find_case("freud-spin12").unwrap();
        let hf = hilbert_function(&case, 5, 0, 29).unwrap();
        assert_eq!(hf, vec![12]);
    }

    #[test]
    fn unsplit_witness_passes() {
        let case = find_case("freud-spin12").unwrap();
        let report = unsplit_witness(&case, 31).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn cubic_case_sections_are_maximally_generated() {
        // a linear pencil with invertible generic fiber gives an injective
        // multiplication map in every degree, so on P^3 the cokernel has
        // HF(m) = dimB·(C(m+3,3) - C(m+2,3)) = dimB·C(m+2,2)
        for (name, dim_b) in [("severi-a2", 9), ("severi-a8", 27)] {
            let case = find_case(name).unwrap();
            let hf = hilbert_function(&case, 3, 2, 37).unwrap();
            let expected: Vec<usize> = (0..=2).map(|m| dim_b * binomial(m + 2, 2)).collect();
            assert_eq!(hf, expected, "{name}");
        }
    }
}
