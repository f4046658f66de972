//! The generic verification engine. Every construction in the crate fits
//! one mold: a representation `V`, a pencil `φ(v) ∈ Hom(A, B)` of degree
//! `k` in `v`, an invariant `h` of degree `deg H`, and an expected rank
//! drop `r` on the hypersurface `h = 0`, tied together by
//! `k·dim A = r·deg H` and `det(φ) = c·h^r`. The engine registers the
//! seven cases, runs determinant-identity trials and corank surveys,
//! restricts pencils to random linear sections, computes Hilbert
//! functions, and emits JSON reports.

mod hilbert;
mod section;
mod suites;

pub use hilbert::{hilbert_function, unsplit_witness};
pub use section::{restrict_section, SectionPresentation};
pub use suites::representative_suite;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{format_rat, rat, Matrix, Rat};
use crate::rngutil;
use crate::{freud_sl6, freud_spin12, heptic7, severi};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown case: {0}")]
    UnknownCase(String),
    #[error("registration invariant violated for {case}: k·dimA = {lhs}, r·degH = {rhs}")]
    InvariantViolation { case: String, lhs: u32, rhs: u32 },
    #[error("determinant identity violated for {case} at {witness}")]
    IdentityViolation { case: String, witness: String },
    #[error("corank mismatch for {case}: got {got}, expected {expected} at {witness}")]
    CorankMismatch {
        case: String,
        got: usize,
        expected: usize,
        witness: String,
    },
    #[error("section dimension {d} exceeds the smoothness budget of {case} (max {max})")]
    SectionBudget { case: String, d: usize, max: usize },
    #[error("could not draw a section with nonvanishing restricted invariant")]
    DegenerateSection,
    #[error("sampler failed: {0}")]
    Sampler(String),
}

/// One registered construction.
pub struct CaseDescriptor {
    pub name: &'static str,
    pub dim_v: usize,
    /// `dim A = dim B`, the pencil size.
    pub dim_a: usize,
    /// Degree `k` of the pencil in the point coordinates.
    pub map_degree: u32,
    pub deg_h: u32,
    /// Expected corank `r` on the smooth locus of the hypersurface.
    pub expected_rank: u32,
    /// Largest dimension of a linear section `X = H ∩ P^d` (that is,
    /// `d - 1`) that stays away from the singular locus.
    pub section_budget: usize,
    phi: Box<dyn Fn(&[Rat]) -> Matrix + Send + Sync>,
    invariant: Box<dyn Fn(&[Rat]) -> Rat + Send + Sync>,
    generic_rep: Vec<Rat>,
    h_rep: Vec<Rat>,
    h_sampler: Box<dyn Fn(u64) -> Vec<Rat> + Send + Sync>,
}

impl CaseDescriptor {
    pub fn phi(&self, v: &[Rat]) -> Matrix {
        (self.phi)(v)
    }

    pub fn invariant(&self, v: &[Rat]) -> Rat {
        (self.invariant)(v)
    }

    pub fn generic_rep(&self) -> &[Rat] {
        &self.generic_rep
    }

    pub fn h_rep(&self) -> &[Rat] {
        &self.h_rep
    }

    /// A random point of the hypersurface orbit, per-case sampler.
    pub fn sample_h(&self, seed: u64) -> Vec<Rat> {
        (self.h_sampler)(seed)
    }

    /// A random integer point with `h ≠ 0`.
    pub fn sample_generic(&self, seed: u64) -> Vec<Rat> {
        let mut rng = rngutil::rng_from_seed(seed);
        for _ in 0..64 {
            let v = rngutil::small_rat_vec(&mut rng, self.dim_v);
            if !self.invariant(&v).is_zero() {
                return v;
            }
        }
        panic!("generic sampler exhausted: the invariant vanished 64 times in a row");
    }

    /// Calibration constant `c = det(φ(rep)) / h(rep)^r`.
    pub fn det_calibration(&self) -> Rat {
        let h0 = self.invariant(&self.generic_rep);
        assert!(!h0.is_zero(), "generic representative lies on H");
        let det = self
            .phi(&self.generic_rep)
            .det()
            .expect("pencil matrices are square");
        det / rat_pow(&h0, self.expected_rank)
    }
}

pub(crate) fn rat_pow(x: &Rat, e: u32) -> Rat {
    let mut acc = rat(1);
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// The seven constructions, with the registration arithmetic
/// `k·dim A = r·deg H` checked for each.
pub fn register_cases() -> Result<Vec<CaseDescriptor>, EngineError> {
    let mut cases = Vec::new();

    for a in severi::SEVERI_AS {
        let case = severi::SeveriCase::new(a);
        let name: &'static str = match a {
            1 => "severi-a1",
            2 => "severi-a2",
            4 => "severi-a4",
            8 => "severi-a8",
            _ => unreachable!(),
        };
        let dim_v = case.dim_v();
        let phi_case = severi::SeveriCase::new(a);
        let inv_case = severi::SeveriCase::new(a);
        let samp_case = severi::SeveriCase::new(a);
        cases.push(CaseDescriptor {
            name,
            dim_v,
            dim_a: dim_v,
            map_degree: 1,
            deg_h: 3,
            expected_rank: a + 1,
            section_budget: a as usize,
            phi: Box::new(move |v| phi_case.phi(v).expect("dimension checked")),
            invariant: Box::new(move |v| inv_case.invariant(v).expect("dimension checked")),
            generic_rep: case.generic_rep(),
            h_rep: case.secant_rep(),
            h_sampler: Box::new(move |seed| {
                samp_case
                    .sample_hypersurface(seed)
                    .expect("secant sampler failed")
            }),
        });
    }

    cases.push(CaseDescriptor {
        name: "heptic7",
        dim_v: heptic7::DIM_WEDGE3,
        dim_a: heptic7::DIM_WEDGE2,
        map_degree: 1,
        deg_h: 7,
        expected_rank: 3,
        section_budget: 2,
        phi: Box::new(|v| heptic7::heptic_phi(&heptic7::ThreeForm7::from_dense(v))),
        invariant: Box::new(|v| {
            heptic7::heptic_invariant_fast(&heptic7::ThreeForm7::from_dense(v))
                .expect("pointwise determinant must be a perfect cube")
        }),
        generic_rep: heptic7::omega0().to_dense(),
        h_rep: heptic7::omega1().to_dense(),
        h_sampler: Box::new(|seed| {
            heptic7::heptic_sample_h(seed)
                .expect("orbit sampler failed")
                .to_dense()
        }),
    });

    cases.push(CaseDescriptor {
        name: "freud-sl6",
        dim_v: freud_sl6::DIM_WEDGE3,
        dim_a: 6,
        map_degree: 2,
        deg_h: 4,
        expected_rank: 3,
        section_budget: 2,
        phi: Box::new(|v| {
            freud_sl6::sl6_theta_module(
                &freud_sl6::ThreeForm6::from_dense(v),
                freud_sl6::Sl6Module::V6,
            )
        }),
        invariant: Box::new(|v| freud_sl6::sl6_quartic(&freud_sl6::ThreeForm6::from_dense(v))),
        generic_rep: freud_sl6::omega0().to_dense(),
        h_rep: freud_sl6::omega1().to_dense(),
        h_sampler: Box::new(|seed| {
            freud_sl6::sl6_sample_h(seed)
                .expect("orbit sampler failed")
                .to_dense()
        }),
    });

    cases.push(CaseDescriptor {
        name: "freud-spin12",
        dim_v: freud_spin12::DIM_SPINOR,
        dim_a: freud_spin12::DIM_V12,
        map_degree: 2,
        deg_h: 4,
        expected_rank: 6,
        section_budget: 4,
        phi: Box::new(|v| freud_spin12::spin_theta_v12(&freud_spin12::Spinor::from_dense(v))),
        invariant: Box::new(|v| freud_spin12::spin_quartic(&freud_spin12::Spinor::from_dense(v))),
        generic_rep: freud_spin12::w0().to_dense(),
        h_rep: freud_spin12::w1().to_dense(),
        h_sampler: Box::new(|seed| {
            freud_spin12::spin_sample_h(seed)
                .expect("orbit sampler failed")
                .to_dense()
        }),
    });

    for case in &cases {
        let lhs = case.map_degree * case.dim_a as u32;
        let rhs = case.expected_rank * case.deg_h;
        if lhs != rhs {
            return Err(EngineError::InvariantViolation {
                case: case.name.to_string(),
                lhs,
                rhs,
            });
        }
    }
    Ok(cases)
}

pub fn case_names() -> Vec<&'static str> {
    register_cases()
        .expect("registration arithmetic holds")
        .iter()
        .map(|c| c.name)
        .collect()
}

pub fn find_case(name: &str) -> Result<CaseDescriptor, EngineError> {
    register_cases()?
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| EngineError::UnknownCase(name.to_string()))
}

/// Versioned JSON report: one entry per executed check, each carrying a
/// stable claim tag ("anchor") for traceability, or "plumbing".
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub case: String,
    pub checks: Vec<Check>,
    pub seed: u64,
    /// Reserved timing field. Kept at 0 in serialized reports so that
    /// equal seeds produce byte-identical JSON; wall-clock time goes to
    /// the human-readable output instead.
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: String,
    pub witness: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn new(id: &str, anchor: &str, ok: bool, witness: String) -> Check {
        Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: if ok { "pass" } else { "fail" }.to_string(),
            witness,
        }
    }
}

impl Report {
    pub fn new(case: &str, seed: u64) -> Report {
        Report {
            schema: 1,
            case: case.to_string(),
            checks: Vec::new(),
            seed,
            elapsed_ms: 0,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Calibrates `c = det(φ(rep))/h(rep)^r` at the generic representative and
/// asserts `det(φ(v)) = c·h(v)^r` exactly at `trials` random integer
/// points. Exact agreement at random points is overwhelming evidence for
/// the polynomial identity, so any failure is a hard error.
pub fn det_identity_trials(
    case: &CaseDescriptor,
    trials: usize,
    seed: u64,
) -> Result<Report, EngineError> {
    assert!(trials >= 1);
    let mut report = Report::new(case.name, seed);
    let c = case.det_calibration();
    for t in 0..trials {
        let mut rng = rngutil::trial_rng(seed, t as u64);
        let v = rngutil::small_rat_vec(&mut rng, case.dim_v);
        let lhs = case.phi(&v).det().expect("square");
        let rhs = &c * rat_pow(&case.invariant(&v), case.expected_rank);
        if lhs != rhs {
            return Err(EngineError::IdentityViolation {
                case: case.name.to_string(),
                witness: format_point(&v),
            });
        }
    }
    report.checks.push(Check::new(
        "det-identity-trials",
        "det-power-law",
        true,
        format!(
            "det(phi) = c*h^{} at {} random points, c = {}",
            case.expected_rank,
            trials,
            format_rat(&c)
        ),
    ));
    Ok(report)
}

/// Samples generic and hypersurface points; asserts corank 0 off the
/// hypersurface and corank exactly `r` on it, and emits the pushforward
/// certificate when `r·deg H = k·dim A`.
pub fn corank_survey(
    case: &CaseDescriptor,
    trials: usize,
    seed: u64,
) -> Result<Report, EngineError> {
    assert!(trials >= 1);
    let mut report = Report::new(case.name, seed);
    for t in 0..trials {
        let sub = seed.wrapping_add(t as u64);
        let v = case.sample_generic(sub.wrapping_mul(2) + 1);
        let corank = case.phi(&v).corank();
        if corank != 0 {
            return Err(EngineError::CorankMismatch {
                case: case.name.to_string(),
                got: corank,
                expected: 0,
                witness: format_point(&v),
            });
        }
        let w = case.sample_h(sub.wrapping_mul(2));
        let corank = case.phi(&w).corank();
        if corank != case.expected_rank as usize {
            return Err(EngineError::CorankMismatch {
                case: case.name.to_string(),
                got: corank,
                expected: case.expected_rank as usize,
                witness: format_point(&w),
            });
        }
    }
    report.checks.push(Check::new(
        "corank-survey",
        "corank-stratification",
        true,
        format!(
            "corank 0 at {trials} generic points, corank {} at {trials} hypersurface points",
            case.expected_rank
        ),
    ));
    report.checks.push(pushforward_check(
        case.name,
        case.expected_rank as usize,
        case.map_degree,
        case.dim_a,
        case.deg_h,
    ));
    Ok(report)
}

/// The pushforward certificate: when the corank is uniformly `r` on the
/// hypersurface, the filtration weights collapse to the single term
/// `rank(E₀) = r`, and the certificate is exactly the arithmetic
/// `r·deg H = k·dim A`.
pub fn pushforward_certificate(corank: usize, k: u32, dim_a: usize, deg_h: u32) -> bool {
    corank * deg_h as usize == k as usize * dim_a
}

pub(crate) fn pushforward_check(
    case: &str,
    corank: usize,
    k: u32,
    dim_a: usize,
    deg_h: u32,
) -> Check {
    let ok = pushforward_certificate(corank, k, dim_a, deg_h);
    Check::new(
        "pushforward-certificate",
        "bundle-support-count",
        ok,
        format!(
            "{case}: corank*degH = {}*{} = {}, k*dimA = {}*{} = {}",
            corank,
            deg_h,
            corank * deg_h as usize,
            k,
            dim_a,
            k as usize * dim_a
        ),
    )
}

/// Representative suite + determinant-identity trials + corank survey,
/// with typed failures folded into the report as failed checks.
pub fn verify_case(name: &str, trials: usize, seed: u64) -> Result<Report, EngineError> {
    let case = find_case(name)?;
    let mut report = representative_suite(&case, seed);
    match det_identity_trials(&case, trials, seed) {
        Ok(r) => report.merge(r),
        Err(e) => report.checks.push(Check::new(
            "det-identity-trials",
            "det-power-law",
            false,
            e.to_string(),
        )),
    }
    match corank_survey(&case, trials, seed) {
        Ok(r) => report.merge(r),
        Err(e) => report.checks.push(Check::new(
            "corank-survey",
            "corank-stratification",
            false,
            e.to_string(),
        )),
    }
    Ok(report)
}

pub(crate) fn format_point(v: &[Rat]) -> String {
    let coords: Vec<String> = v.iter().map(format_rat).collect();
    format!("({})", coords.join(", "))
}

/// `C(n + d, d)`, the dimension of degree-`n` forms in `d + 1` variables.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
