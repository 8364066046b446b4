//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

mod common;

use std::f64::consts::FRAC_1_SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use triconc::bounds::bound_theorem1;
use triconc::concurrence::concurrence_pure;
use triconc::gpt::{apply_gpt, catalog_norms, gpt_norm, is_gpt_entangled, CatalogOp, GptOperation};
use triconc::states::{dct_state, ghz_basis, random_mixed_state, random_separable_state, special_type_state, DctWeights, RngSeed};
use triconc::verify::{run_cut_campaign, run_suite, RunConfig, Suite};
use triconc::{Complex64, ComplexMatrix, SystemDims};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

/// 1. DCT worked example.
fn dct_worked_example() -> Outcome {
    let s = dct_state(&DctWeights::worked_example());
    let norms = catalog_norms(&s).map_err(e)?;
    let report = bound_theorem1(&s).map_err(e)?;
    let verdict = is_gpt_entangled(&s, 1e-9).map_err(e)?;
    let ok = (norms[0] - 4.0 / 3.0).abs() <= 1e-9
        && (norms[1] - 1.0).abs() <= 1e-9
        && (norms[2] - 1.0).abs() <= 1e-9
        && norms[3..6].iter().all(|n| (n - 0.8727).abs() <= 5e-4)
        && (report.lower_bound - 1.0 / 3.0).abs() <= 1e-9
        && verdict.entangled;
    check(
        ok,
        format!(
            "Y1={:.10} Y2={:.10} Y3={:.10} Y4..Y6={:.6}/{:.6}/{:.6} bound={:.10} entangled={}",
            norms[0], norms[1], norms[2], norms[3], norms[4], norms[5], report.lower_bound, verdict.entangled
        ),
    )
}

fn suite_outcome(suite: Suite, samples: u64, tol: f64) -> Outcome {
    let config = RunConfig {
        samples,
        seed: 42,
        tolerance: tol,
    };
    let s = run_suite(suite, &config).map_err(e)?;
    check(
        s.passed(),
        format!(
            "{} samples, {} violations, worst residual {:e}{}",
            s.samples,
            s.violations,
            s.worst_residual,
            s.max_discrepancy
                .map(|d| format!(", max discrepancy {d:e}"))
                .unwrap_or_default()
        ),
    )
}

/// 2. Closed-form oracle agreement over 1e4 Schmidt-form states.
fn closed_form_agreement() -> Outcome {
    suite_outcome(Suite::ClosedForms, 10_000, 1e-9)
}

/// 3. Theorem-1 proof residual identities over 1e5 Schmidt-form states.
fn theorem1_residuals() -> Outcome {
    suite_outcome(Suite::T1Pure, 100_000, 1e-9)
}

/// 4. Corollary numeric replication over 1e5 Schmidt-form states.
fn corollary_numeric() -> Outcome {
    suite_outcome(Suite::CorollaryNumeric, 100_000, 1e-9)
}

/// 5. Theorem-2 soundness and cut inequalities on Haar-random pure states.
fn theorem2_soundness() -> Outcome {
    let a = run_cut_campaign(SystemDims::QUBITS, 10_000, 42, 1e-9).map_err(e)?;
    let b = run_cut_campaign(SystemDims::new(2, 3, 2).map_err(e)?, 1_000, 43, 1e-9).map_err(e)?;
    check(
        a.passed() && b.passed(),
        format!(
            "(2,2,2): {} samples, {} violations, min slack {:e}; (2,3,2): {} samples, {} violations, min slack {:e}",
            a.samples, a.violations, a.worst_residual, b.samples, b.violations, b.worst_residual
        ),
    )
}

/// 6. Special-type closed forms on the 99-point grid plus the GHZ endpoint.
fn special_type_grid() -> Outcome {
    let mut worst_norm = 0.0f64;
    let mut worst_c = 0.0f64;
    for k in 1..=99 {
        let l0 = k as f64 / 100.0;
        let l4 = (1.0 - l0 * l0).sqrt();
        let v = special_type_state(l0, l4).map_err(e)?;
        let s = v.density();
        let expected = 1.0 + 2.0 * l0 * l4;
        for n in catalog_norms(&s).map_err(e)? {
            worst_norm = worst_norm.max((n - expected).abs());
        }
        let c = concurrence_pure(&v).map_err(e)?;
        worst_c = worst_c.max((c - (6.0 * l0 * l0 * l4 * l4).sqrt()).abs());
    }
    let ghz = special_type_state(FRAC_1_SQRT_2, FRAC_1_SQRT_2).map_err(e)?;
    let ghz_c = concurrence_pure(&ghz).map_err(e)?;
    let ghz_norms = catalog_norms(&ghz.density()).map_err(e)?;
    let ghz_ok = (ghz_c - 1.5f64.sqrt()).abs() <= 1e-9 && ghz_norms.iter().all(|n| (n - 2.0).abs() <= 1e-9);
    check(
        worst_norm <= 1e-9 && worst_c <= 1e-9 && ghz_ok,
        format!("max |norm - (1+2 l0 l4)| = {worst_norm:e}, max |C - sqrt(6 mu0 mu4)| = {worst_c:e}, GHZ ok = {ghz_ok}"),
    )
}

/// 7. Separable mixtures never exceed unit GPT norm.
fn separability_ceiling() -> Outcome {
    let mut violations = 0;
    let mut max_norm = 0.0f64;
    for i in 0..1_000u64 {
        let (s, _) = random_separable_state(SystemDims::QUBITS, 8, RngSeed(7).derive(i)).map_err(e)?;
        for n in catalog_norms(&s).map_err(e)? {
            max_norm = max_norm.max(n);
            if n > 1.0 + 1e-9 {
                violations += 1;
            }
        }
    }
    check(
        violations == 0,
        format!("1000 mixtures x 9 operations, {violations} violations, max norm {max_norm:.15}"),
    )
}

/// 8. Structural identities against explicit index formulas.
fn structural_identities() -> Outcome {
    let mut worst = 0.0f64;
    let mut states = vec![dct_state(&DctWeights::worked_example())];
    for (k, dims) in [(2, 2, 2), (2, 3, 2), (3, 2, 4)].into_iter().enumerate() {
        let dims = SystemDims::new(dims.0, dims.1, dims.2).map_err(e)?;
        states.push(random_mixed_state(dims, 3, RngSeed(100 + k as u64)).map_err(e)?);
    }
    for s in &states {
        for (party, op) in [CatalogOp::Y1, CatalogOp::Y2, CatalogOp::Y3].into_iter().enumerate() {
            worst = worst.max(apply_gpt(s, op.operation()).max_abs_diff(&common::partial_transpose(s, party)));
        }
        for (which, op) in [(7, CatalogOp::Y7), (8, CatalogOp::Y8), (9, CatalogOp::Y9)] {
            let image = apply_gpt(s, op.operation());
            let explicit = common::realignment(s, which);
            if image.shape() != explicit.shape() {
                return Err(format!("Y{which} shape {:?} vs {:?}", image.shape(), explicit.shape()));
            }
            worst = worst.max(image.max_abs_diff(&explicit));
        }
        let full = apply_gpt(s, GptOperation::full_transpose());
        worst = worst.max(full.max_abs_diff(&s.rho().transpose()));
    }
    let basis = ghz_basis();
    let mut completeness = ComplexMatrix::zeros(8, 8);
    for (i, x) in basis.iter().enumerate() {
        completeness = &completeness + x.density().rho();
        for (j, y) in basis.iter().enumerate() {
            let want = Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0);
            worst = worst.max((x.inner(y).map_err(e)? - want).norm());
        }
    }
    worst = worst.max(completeness.max_abs_diff(&ComplexMatrix::identity(8)));
    // the trace norm agrees with the independent Gram oracle on the DCT images
    let mut norm_gap = 0.0f64;
    for op in CatalogOp::ALL {
        let image = apply_gpt(&states[0], op.operation());
        norm_gap = norm_gap.max((gpt_norm(&states[0], op.operation()).map_err(e)? - common::trace_norm_oracle(&image)).abs());
    }
    check(
        worst <= 1e-12 && norm_gap <= 1e-9,
        format!("max entrywise deviation {worst:e}, trace-norm oracle gap {norm_gap:e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 DCT worked example", dct_worked_example),
        ("2 closed-form oracle agreement", closed_form_agreement),
        ("3 Theorem-1 proof residuals", theorem1_residuals),
        ("4 Corollary numeric replication", corollary_numeric),
        ("5 Theorem-2 soundness", theorem2_soundness),
        ("6 special-type closed forms", special_type_grid),
        ("7 separability ceiling", separability_ceiling),
        ("8 structural identities", structural_identities),
    ];
    let mut failures = 0;
    println!("running {} acceptance criteria", criteria.len());
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({secs:.2}s): {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {name} ({secs:.2}s): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
