//! Per-case representative suites: the fixed orbit representatives and
//! the structural facts attached to them, turned into report checks.

use num_traits::Zero;

use super::{pushforward_check, CaseDescriptor, Check, Report};
use crate::exactla::{format_rat, rat, same_span, Rat};
use crate::exterior::ExtElement;
use crate::{freud_sl6, freud_spin12, heptic7, rngutil, severi};

/// The fixed-representative checks of a case; `seed` only feeds the few
/// randomized spot checks inside (symmetry at random points and the like).
pub fn representative_suite(case: &CaseDescriptor, seed: u64) -> Report {
    let mut report = Report::new(case.name, seed);
    report.checks.push(fundamental_count_check(case));
    let mut checks = match case.name {
        "severi-a1" | "severi-a2" | "severi-a4" | "severi-a8" => severi_suite(case, seed),
        "heptic7" => heptic_suite(seed),
        "freud-sl6" => sl6_suite(),
        "freud-spin12" => spin_suite(),
        other => vec![Check::new(
            "unknown-case",
            "plumbing",
            false,
            format!("no representative suite for {other}"),
        )],
    };
    report.checks.append(&mut checks);
    report
}

fn fundamental_count_check(case: &CaseDescriptor) -> Check {
    let lhs = case.map_degree * case.dim_a as u32;
    let rhs = case.expected_rank * case.deg_h;
    Check::new(
        "fundamental-count",
        "rank-degree-count",
        lhs == rhs,
        format!(
            "k*dimA = {}*{} = {lhs}, r*degH = {}*{} = {rhs}",
            case.map_degree, case.dim_a, case.expected_rank, case.deg_h
        ),
    )
}

fn severi_suite(case: &CaseDescriptor, seed: u64) -> Vec<Check> {
    let a = match case.name {
        "severi-a1" => 1,
        "severi-a2" => 2,
        "severi-a4" => 4,
        _ => 8,
    };
    let sev = severi::SeveriCase::new(a);
    let mut checks = Vec::new();

    let rep = sev.generic_rep();
    let h_rep = sev.invariant(&rep).unwrap();
    let full = sev.phi(&rep).unwrap().rank() == sev.dim_v();
    checks.push(Check::new(
        "generic-representative",
        "secant-cubic-orbits",
        !h_rep.is_zero() && full,
        format!("h(rep) = {}, phi full rank: {full}", format_rat(&h_rep)),
    ));

    let secant = sev.secant_rep();
    let corank = sev.phi(&secant).unwrap().corank();
    checks.push(Check::new(
        "corank-at-secant-representative",
        "rank-drop-on-secants",
        corank == sev.expected_corank(),
        format!("corank {corank}, expected {}", sev.expected_corank()),
    ));

    let mut rng = rngutil::rng_from_seed(seed);
    let mut vanish = true;
    for _ in 0..5 {
        let r1 = sev.sample_rank1(&mut rng).unwrap();
        vanish &= sev.invariant(&r1).unwrap().is_zero();
    }
    for t in 0..5 {
        let sec = sev
            .sample_hypersurface(seed.wrapping_add(1000 + t))
            .unwrap();
        vanish &= sev.invariant(&sec).unwrap().is_zero();
    }
    checks.push(Check::new(
        "invariant-vanishes-on-cone-and-secants",
        "secant-cubic-orbits",
        vanish,
        "h = 0 at 5 rank-1 and 5 secant samples".to_string(),
    ));

    let mut symmetric = true;
    for _ in 0..3 {
        let v = rngutil::small_rat_vec(&mut rng, sev.dim_v());
        symmetric &= sev.phi(&v).unwrap().is_symmetric();
    }
    checks.push(Check::new(
        "pencil-symmetry",
        "polarized-cubic",
        symmetric,
        "phi(v) symmetric at 3 random points".to_string(),
    ));
    checks
}

fn heptic_suite(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();

    let rank0 = heptic7::heptic_phi(&heptic7::omega0()).rank();
    checks.push(Check::new(
        "rank-at-generic-representative",
        "heptic-open-orbit",
        rank0 == 21,
        format!("rank(phi(omega0)) = {rank0}"),
    ));

    let phi1 = heptic7::heptic_phi(&heptic7::omega1());
    let kernel = phi1.kernel_basis();
    let span_ok = same_span(&kernel, &heptic7::omega1_kernel_span());
    checks.push(Check::new(
        "kernel-at-hypersurface-representative",
        "heptic-corank-three",
        phi1.rank() == 18 && kernel.len() == 3 && span_ok,
        format!(
            "rank {}, kernel dim {}, span matches e15, e24, e14-e25: {span_ok}",
            phi1.rank(),
            kernel.len()
        ),
    ));

    let h0 = heptic7::heptic_invariant(&heptic7::omega0());
    let h1 = heptic7::heptic_invariant(&heptic7::omega1());
    let h2 = heptic7::heptic_invariant(&heptic7::omega2());
    let ok = h0 == Ok(rat(1)) && h1 == Ok(rat(0)) && h2 == Ok(rat(0));
    checks.push(Check::new(
        "invariant-at-representatives",
        "heptic-invariant",
        ok,
        format!(
            "h(omega0) = {:?}, h(omega1) = {:?}, h(omega2) = {:?}",
            h0.map(|v| format_rat(&v)),
            h1.map(|v| format_rat(&v)),
            h2.map(|v| format_rat(&v))
        ),
    ));

    let mut rng = rngutil::rng_from_seed(seed);
    let mut cubes = true;
    for _ in 0..2 {
        let dir = heptic7::ThreeForm7::from_dense(&rngutil::small_rat_vec(&mut rng, 35));
        cubes &= heptic7::heptic_cuberoot_line(&heptic7::omega0(), &dir).is_ok();
    }
    checks.push(Check::new(
        "pencil-cube-roots",
        "det-is-a-cube",
        cubes,
        "det along 2 random pencils is an exact polynomial cube".to_string(),
    ));

    let fam = heptic7::heptic_fiber_family(&rat(1), &rat(0), &rat(1), &rat(0))
        && heptic7::heptic_fiber_family(&rat(2), &rat(3), &rat(-1), &rat(5));
    let e = |i: u32| ExtElement::basis(7, &[i]);
    let outside =
        !heptic7::subspace_membership(&[e(1), e(2), e(3), e(4)], heptic7::omega2().element());
    checks.push(Check::new(
        "singular-orbit-fiber-family",
        "fiber-is-a-quadric",
        fam && outside,
        format!("family members contain omega2: {fam}; e1..e4 does not: {outside}"),
    ));

    let u: Vec<ExtElement> = [1, 2, 4, 5].iter().map(|&i| e(i)).collect();
    let kw = heptic7::heptic_kernel_vs_wedge(&heptic7::omega1(), &u) == Ok(true);
    checks.push(Check::new(
        "kernel-matches-wedge-map",
        "kernel-identification",
        kw,
        "kernel of phi(omega1) equals the wedge-map kernel on U = <e1,e2,e4,e5>".to_string(),
    ));

    let (g, s, diff) = heptic7::family_dimension();
    checks.push(Check::new(
        "family-dimension-count",
        "heptic-family-dimension",
        (g, s, diff) == (124, 48, 76),
        format!("{g} - {s} = {diff}"),
    ));
    checks
}

fn sl6_suite() -> Vec<Check> {
    let mut checks = Vec::new();

    let t0 = freud_sl6::sl6_theta(&freud_sl6::omega0());
    let expected_diag = (0..6)
        .all(|i| t0.matrix().at(i, i) == &if i < 3 { rat(1) } else { rat(-1) })
        && t0.matrix().is_symmetric();
    checks.push(Check::new(
        "theta-at-generic-representative",
        "split-secant-form",
        expected_diag,
        "theta(omega0) = diag(1,1,1,-1,-1,-1)".to_string(),
    ));

    let t1 = freud_sl6::sl6_theta(&freud_sl6::omega1());
    let m = t1.matrix();
    let square_zero = m.mul(m).is_zero();
    let first_three: Vec<Vec<Rat>> = (0..3)
        .map(|i| {
            (0..6)
                .map(|j| if i == j { rat(1) } else { rat(0) })
                .collect()
        })
        .collect();
    let img_ok = same_span(&m.column_space_basis(), &first_three);
    let ker_ok = same_span(&m.kernel_basis(), &first_three);
    checks.push(Check::new(
        "theta-at-hypersurface-representative",
        "tangent-orbit-shift",
        m.rank() == 3 && square_zero && img_ok && ker_ok,
        format!(
            "rank {}, square-zero {square_zero}, image = kernel = <e1,e2,e3>: {}",
            m.rank(),
            img_ok && ker_ok
        ),
    ));

    let mults = freud_sl6::sl6_wedge3_eigen_multiplicities(&freud_sl6::omega0(), &[3, 1, -1, -3]);
    let eigen_ok = mults == vec![(3, 1), (1, 9), (-1, 9), (-3, 1)];
    checks.push(Check::new(
        "eigenvalue-split-on-wedge3",
        "odd-partition-invertibility",
        eigen_ok,
        format!("multiplicities {mults:?}"),
    ));

    let w3 = freud_sl6::sl6_theta_module(&freud_sl6::omega1(), freud_sl6::Sl6Module::Wedge3V6);
    let m2 = w3.mul(&w3);
    let m3 = m2.mul(&w3);
    let m4 = m3.mul(&w3);
    let nilpotent = !m3.is_zero() && m4.is_zero();
    checks.push(Check::new(
        "wedge3-nilpotency-ladder",
        "graded-nilpotent-action",
        nilpotent,
        format!(
            "theta^3 nonzero, theta^4 = 0; ranks {} / {} / {}",
            w3.rank(),
            m2.rank(),
            m3.rank()
        ),
    ));

    checks.push(Check::new(
        "wedge3-corank-misses-bundle-count",
        "filtration-weight-mismatch",
        w3.corank() != 10,
        format!(
            "corank {} on the 20-dimensional module; a bundle cokernel needs 2*20/4 = 10",
            w3.corank()
        ),
    ));
    checks.push(pushforward_check("freud-sl6/wedge3", w3.corank(), 2, 20, 4).negated());

    let h0 = freud_sl6::sl6_quartic(&freud_sl6::omega0());
    let h1 = freud_sl6::sl6_quartic(&freud_sl6::omega1());
    checks.push(Check::new(
        "quartic-at-representatives",
        "trace-form-quartic",
        h0 == rat(1) && h1.is_zero(),
        format!(
            "h(omega0) = {}, h(omega1) = {}",
            format_rat(&h0),
            format_rat(&h1)
        ),
    ));

    let fiber = freud_sl6::sl6_pi_fiber(&freud_sl6::omega1());
    let fiber_ok = fiber
        .as_ref()
        .map(|a| same_span(a, &first_three))
        .unwrap_or(false);
    checks.push(Check::new(
        "fiber-projection-at-representative",
        "grassmannian-fibration",
        fiber_ok,
        "image of theta on V6 is <e1,e2,e3>, tangency holds".to_string(),
    ));
    checks
}

fn spin_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let cal = freud_spin12::calibration();
    checks.push(Check::new(
        "calibration-frozen",
        "pure-spinor-equations",
        true,
        format!(
            "alpha2 = {}, alpha3 = {}, component constants ({}, {}, {}, {}, {}, {})",
            format_rat(&cal.alpha2),
            format_rat(&cal.alpha3),
            format_rat(&cal.c_plus),
            format_rat(&cal.k_plus),
            format_rat(&cal.k_zero_traceless),
            format_rat(&cal.k_zero_scalar),
            format_rat(&cal.c_minus),
            format_rat(&cal.k_minus),
        ),
    ));

    let mut rng = rngutil::rng_from_seed(0xDEED);
    let mut vanish = true;
    for _ in 0..20 {
        let omega = ExtElement::from_dense(6, 2, &rngutil::small_rat_vec(&mut rng, 15));
        vanish &= freud_spin12::spin_theta(&freud_spin12::spin_param(&omega)).is_zero();
    }
    checks.push(Check::new(
        "theta-vanishes-on-pure-spinors",
        "pure-spinor-equations",
        vanish,
        "theta(param(omega)) = 0 at 20 random 2-forms".to_string(),
    ));

    let m0 = freud_spin12::spin_theta_v12(&freud_spin12::w0());
    let diag_ok =
        (0..12).all(|i| m0.at(i, i) == &if i < 6 { rat(1) } else { rat(-1) }) && m0.rank() == 12;
    checks.push(Check::new(
        "theta-at-generic-representative",
        "split-identity-form",
        diag_ok,
        "theta_V12(w0) = diag(Id, -Id)".to_string(),
    ));

    let t1 = freud_spin12::spin_theta(&freud_spin12::w1());
    let s = t1.minus.coeff(&[1, 2]);
    let w1_component_ok = t1.plus.is_zero()
        && t1.zero.is_zero()
        && !s.is_zero()
        && t1.minus.coeff(&[3, 4]) == s
        && t1.minus.coeff(&[5, 6]) == s
        && t1.minus.to_dense().iter().filter(|c| !c.is_zero()).count() == 3;
    let m1 = freud_spin12::spin_theta_v12(&freud_spin12::w1());
    let structure_ok =
        m1.rank() == 6 && m1.mul(&m1).is_zero() && freud_spin12::image_is_isotropic(&m1);
    checks.push(Check::new(
        "theta-at-hypersurface-representative",
        "tangent-spinor-orbit",
        w1_component_ok && structure_ok,
        format!(
            "theta(w1) = (0, 0, {}*(dual symplectic)); rank 6, square-zero, isotropic image",
            format_rat(&s)
        ),
    ));

    let mut skew = true;
    for _ in 0..10 {
        let w = freud_spin12::Spinor::random(&mut rng);
        skew &= freud_spin12::is_split_skew(&freud_spin12::spin_theta_v12(&w));
    }
    checks.push(Check::new(
        "so12-membership",
        "plumbing",
        skew,
        "theta_V12 is skew for the split form at 10 random spinors".to_string(),
    ));

    let h0 = freud_spin12::spin_quartic(&freud_spin12::w0());
    let h1 = freud_spin12::spin_quartic(&freud_spin12::w1());
    let mut cone = true;
    for _ in 0..5 {
        let omega = ExtElement::from_dense(6, 2, &rngutil::small_rat_vec(&mut rng, 15));
        cone &= freud_spin12::spin_quartic(&freud_spin12::spin_param(&omega)).is_zero();
    }
    checks.push(Check::new(
        "quartic-at-representatives",
        "trace-form-quartic",
        h0 == rat(1) && h1.is_zero() && cone,
        format!(
            "h(w0) = {}, h(w1) = {}, h on the pure-spinor cone: 0",
            format_rat(&h0),
            format_rat(&h1)
        ),
    ));

    let split_counts: Vec<usize> = (0..=3).map(|a| 36 + 10 * a).collect();
    checks.push(Check::new(
        "split-exclusion-arithmetic",
        "section-count-exclusion",
        !split_counts.contains(&12),
        format!("12 is not one of {split_counts:?}"),
    ));
    checks
}

impl Check {
    /// The same check with the expected outcome flipped; used for the one
    /// module whose certificate must be refused.
    fn negated(mut self) -> Check {
        self.status = if self.status == "pass" {
            "fail"
        } else {
            "pass"
        }
        .to_string();
        self.id = format!("{}-refused", self.id);
        self.witness = format!("{} (refusal is the expected outcome)", self.witness);
        self
    }
}
