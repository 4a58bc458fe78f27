//! Seeded randomized verification of the duality laws.
//!
//! Each suite checks one law family on independently generated cases and
//! reports `<suite> <cases> <pass|fail>` lines that are byte-identical for
//! identical seeds and inputs. A failing case carries a counterexample bundle
//! whose sections are the standard vector/matrix file formats.

mod gen;

pub use gen::CaseRng;

use std::fmt::Write as _;

use crate::duality::{
    check_adjoint, check_exactness, exactness_preimages, faithful_witness, full_preimage,
    rows_independent, validate_witness, DualMorphism, Orientation,
};
use crate::field::{rank, DenseMatrix, FieldSpec};
use crate::io::{serialize_matrix, serialize_vector, VectorData};
use crate::limits::{check_compat, from_thread, project, restrict, to_thread};
use crate::rowfinite::RowFiniteMatrix;
use crate::seq::{Dim, FinSuppVec, ProdVec};

/// A law family. The first six are the command-line suites; `Locality` is the
/// perturbation check on the left action, callable from the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Adjoint,
    Exact,
    Faithful,
    Full,
    Functor,
    Limits,
    Locality,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Adjoint => "adjoint",
            Suite::Exact => "exact",
            Suite::Faithful => "faithful",
            Suite::Full => "full",
            Suite::Functor => "functor",
            Suite::Limits => "limits",
            Suite::Locality => "locality",
        }
    }
}

/// The command-line suites in report order (sorted by name).
pub const CLI_SUITES: [Suite; 6] = [
    Suite::Adjoint,
    Suite::Exact,
    Suite::Faithful,
    Suite::Full,
    Suite::Functor,
    Suite::Limits,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cases: usize,
    pub trunc: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 42, cases: 1000, trunc: 64 }
    }
}

/// A failing case, with the offending values serialized in the standard file
/// formats.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub case: usize,
    pub detail: String,
    pub sections: Vec<(String, String)>,
}

impl Counterexample {
    pub fn render(&self, suite: Suite) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", suite.name());
        let _ = writeln!(out, "case: {}", self.case);
        let _ = writeln!(out, "detail: {}", self.detail);
        for (name, body) in &self.sections {
            let _ = writeln!(out, "-- {name} --");
            out.push_str(body);
        }
        out
    }
}

/// Deterministic counterexample file name for a suite.
pub fn counterexample_file_name(suite: Suite) -> String {
    format!("counterexample_{}.txt", suite.name())
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

type Sections = Vec<(String, String)>;
type CaseOutcome = std::result::Result<(), (String, Sections)>;

fn fields() -> [FieldSpec; 4] {
    [
        FieldSpec::prime(2).expect("2 is prime"),
        FieldSpec::prime(7).expect("7 is prime"),
        FieldSpec::prime(97).expect("97 is prime"),
        FieldSpec::rationals(),
    ]
}

fn exact_fields() -> [FieldSpec; 3] {
    [
        FieldSpec::prime(2).expect("2 is prime"),
        FieldSpec::prime(3).expect("3 is prime"),
        FieldSpec::prime(5).expect("5 is prime"),
    ]
}

fn op<T>(r: crate::error::Result<T>, what: &str) -> std::result::Result<T, (String, Sections)> {
    r.map_err(|e| (format!("{what}: {e}"), Vec::new()))
}

fn matrix_section(name: &str, m: &RowFiniteMatrix) -> (String, String) {
    (format!("matrix {name}"), serialize_matrix(m))
}

fn fin_section(name: &str, x: &FinSuppVec) -> (String, String) {
    (format!("vector {name}"), serialize_vector(&VectorData::Sparse(x.clone())))
}

fn prod_section(name: &str, y: &ProdVec) -> (String, String) {
    (format!("vector {name}"), serialize_vector(&VectorData::Prefix(y.clone())))
}

/// A random matrix with the given finite shape, mixing explicit rows with the
/// rule bodies that fit it.
fn finite_matrix(rng: &mut CaseRng, spec: FieldSpec, b: usize, a: usize) -> RowFiniteMatrix {
    let explicit = |rng: &mut CaseRng| {
        rng.explicit_matrix(spec, Dim::Finite(b), Dim::Finite(a), b.min(8), a.min(8), b, a)
    };
    match rng.below(6) {
        0..=2 => explicit(rng),
        3 if b == a => RowFiniteMatrix::identity(spec, Dim::Finite(b)),
        4 if b <= a => {
            let k = rng.usize_below(a - b + 1);
            RowFiniteMatrix::shift(spec, Dim::Finite(b), Dim::Finite(a), k)
                .expect("offset fits by construction")
        }
        5 => {
            let len = rng.range(1, 3);
            let block = (0..len).map(|_| rng.scalar(spec)).collect();
            RowFiniteMatrix::diag_block(spec, Dim::Finite(b), Dim::Finite(a), block)
                .expect("nonempty block")
        }
        _ => explicit(rng),
    }
}

fn adjoint_case(rng: &mut CaseRng, case: usize) -> CaseOutcome {
    // Schedule fields round-robin, then per field one ω case in every six,
    // so a case budget of 4800 spends exactly 1000 finite and 200 ω cases on
    // each field.
    let spec = fields()[case % 4];
    let (f, x, y) = if (case / 4) % 6 == 5 {
        let f = rng.rule_matrix_omega(spec);
        let x = rng.fin_supp(spec, Dim::Omega, 8, 48);
        let y = rng.prod_vec(spec, Dim::Omega, 10, 4);
        (f, x, y)
    } else {
        let b = rng.range(1, 32);
        let a = rng.range(1, 32);
        let f = finite_matrix(rng, spec, b, a);
        let x = rng.fin_supp(spec, Dim::Finite(b), 8, b);
        let y = rng.prod_vec(spec, Dim::Finite(a), a, 1);
        (f, x, y)
    };
    if op(check_adjoint(&f, &x, &y), "check_adjoint")? {
        Ok(())
    } else {
        Err((
            "pairing identity <x.F, y> = <x, F.y> failed".into(),
            vec![matrix_section("F", &f), fin_section("x", &x), prod_section("y", &y)],
        ))
    }
}

fn functor_case(rng: &mut CaseRng, case: usize) -> CaseOutcome {
    let spec = fields()[case % 4];
    let (a_mat, b_mat, x, y, id_dim) = if (case / 4) % 5 == 4 {
        // ω pairs whose composite stays representable.
        let (a_mat, b_mat) = match rng.below(4) {
            0 => {
                let k1 = rng.usize_below(6);
                let k2 = rng.usize_below(6);
                (
                    RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, k1).expect("omega cols"),
                    RowFiniteMatrix::shift(spec, Dim::Omega, Dim::Omega, k2).expect("omega cols"),
                )
            }
            1 => {
                let block = |rng: &mut CaseRng| {
                    let len = rng.range(1, 3);
                    (0..len).map(|_| rng.scalar(spec)).collect::<Vec<_>>()
                };
                (
                    RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, block(rng))
                        .expect("nonempty block"),
                    RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, block(rng))
                        .expect("nonempty block"),
                )
            }
            2 => (
                rng.rule_matrix_omega(spec),
                rng.explicit_matrix(spec, Dim::Omega, Dim::Omega, 6, 6, 24, 24),
            ),
            _ => (
                rng.explicit_matrix(spec, Dim::Omega, Dim::Omega, 6, 6, 24, 24),
                rng.rule_matrix_omega(spec),
            ),
        };
        let x = rng.fin_supp(spec, Dim::Omega, 6, 24);
        let y = rng.prod_vec(spec, Dim::Omega, 10, 4);
        (a_mat, b_mat, x, y, Dim::Omega)
    } else {
        let b = rng.range(1, 16);
        let g = rng.range(1, 16);
        let a = rng.range(1, 16);
        let a_mat = finite_matrix(rng, spec, b, g);
        let b_mat = finite_matrix(rng, spec, g, a);
        let x = rng.fin_supp(spec, Dim::Finite(b), 8, b);
        let y = rng.prod_vec(spec, Dim::Finite(a), a, 1);
        (a_mat, b_mat, x, y, Dim::Finite(b))
    };

    let ab = op(a_mat.compose(&b_mat), "compose")?;

    let right_one = op(b_mat.act_right(&op(a_mat.act_right(&x), "act_right A")?), "act_right B")?;
    let right_two = op(ab.act_right(&x), "act_right A∘B")?;
    if !op(right_one.eq_checked(&right_two), "eq of right actions")? {
        return Err((
            "composition law (x.A).B = x.(A∘B) failed".into(),
            vec![matrix_section("A", &a_mat), matrix_section("B", &b_mat), fin_section("x", &x)],
        ));
    }

    let left_one = op(ab.act_left(&y), "act_left A∘B")?;
    let left_two = op(a_mat.act_left(&op(b_mat.act_left(&y), "act_left B")?), "act_left A")?;
    if !op(left_one.eq_checked(&left_two), "eq of left actions")? {
        return Err((
            "contravariant law (A∘B).y = A.(B.y) failed".into(),
            vec![matrix_section("A", &a_mat), matrix_section("B", &b_mat), prod_section("y", &y)],
        ));
    }

    // Identity preservation: composing with the identity changes nothing and
    // dualizing the identity morphism yields the identity morphism.
    let id = RowFiniteMatrix::identity(spec, id_dim);
    let absorbed = op(id.compose(&a_mat), "compose id∘A")?;
    if !op(absorbed.mat_eq(&a_mat), "mat_eq id∘A")? {
        return Err(("identity absorption failed".into(), vec![matrix_section("A", &a_mat)]));
    }
    let dual_id = DualMorphism::new(id.clone(), Orientation::RightOnFinSupp).dual();
    if !op(dual_id.matrix().mat_eq(&id), "mat_eq dual(id)")? {
        return Err(("dual of identity is not identity".into(), vec![matrix_section("id", &id)]));
    }
    Ok(())
}

fn faithful_case(rng: &mut CaseRng, case: usize) -> CaseOutcome {
    let spec = fields()[case % 4];
    if case == 0 {
        // The zero matrix yields no witness, in both zero representations.
        let zero = RowFiniteMatrix::zero(spec, Dim::Omega, Dim::Omega);
        let zero_diag =
            RowFiniteMatrix::diag_block(spec, Dim::Omega, Dim::Omega, vec![spec.zero()])
                .expect("nonempty block");
        for z in [zero, zero_diag] {
            if faithful_witness(&z).is_some() {
                return Err((
                    "zero matrix produced a witness".into(),
                    vec![matrix_section("Z", &z)],
                ));
            }
        }
    }
    let f = loop {
        let candidate = if rng.chance(1, 3) {
            rng.rule_matrix_omega(spec)
        } else {
            let b = rng.range(1, 16);
            let a = rng.range(1, 16);
            finite_matrix(rng, spec, b, a)
        };
        if !candidate.is_zero() {
            break candidate;
        }
    };
    let Some(witness) = faithful_witness(&f) else {
        return Err((
            "nonzero matrix yielded no witness".into(),
            vec![matrix_section("F", &f)],
        ));
    };
    if op(validate_witness(&f, witness), "validate_witness")? {
        Ok(())
    } else {
        Err((
            format!("witness ({}, {}) failed validation", witness.0, witness.1),
            vec![matrix_section("F", &f)],
        ))
    }
}

fn full_case(rng: &mut CaseRng, case: usize) -> CaseOutcome {
    let spec = fields()[case % 4];
    let g = if rng.chance(1, 3) {
        rng.rule_matrix_omega(spec)
    } else {
        let b = rng.range(1, 16);
        let a = rng.range(1, 16);
        finite_matrix(rng, spec, b, a)
    };
    let roundtrip = full_preimage(g.clone()).dual();
    if op(roundtrip.matrix().mat_eq(&g), "mat_eq roundtrip")? {
        Ok(())
    } else {
        Err((
            "dual(full_preimage(G)) does not reproduce G".into(),
            vec![matrix_section("G", &g)],
        ))
    }
}

fn exact_case(rng: &mut CaseRng, case: usize) -> CaseOutcome {
    let spec = exact_fields()[case % 3];
    let b = rng.range(1, 6);
    let a = rng.range(b, 12);
    let f = rng.echelon_matrix(spec, b, a);
    if !op(rows_independent(&f, a), "rows_independent")? {
        return Err((
            "echelon construction produced dependent rows".into(),
            vec![matrix_section("F", &f)],
        ));
    }
    let Some(preimages) = op(exactness_preimages(&f, a), "exactness_preimages")? else {
        return Err((
            "a basis functional has no verified preimage".into(),
            vec![matrix_section("F", &f)],
        ));
    };
    for (j, y) in preimages.iter().enumerate() {
        // Independent re-verification of each reported solution.
        let image = op(f.act_left(y), "act_left on preimage")?;
        let want = op(FinSuppVec::delta(spec, Dim::Finite(b), j), "delta")?.embed();
        if !op(image.eq_checked(&want), "eq of images")? {
            return Err((
                format!("preimage for basis functional {j} failed re-verification"),
                vec![matrix_section("F", &f), prod_section("y", y)],
            ));
        }
    }
    if op(check_exactness(&f, a), "check_exactness")? {
        Ok(())
    } else {
        Err(("exactness check returned false".into(), vec![matrix_section("F", &f)]))
    }
}

fn limits_case(rng: &mut CaseRng, case: usize, cfg: &VerifyConfig) -> CaseOutcome {
    let spec = fields()[case % 4];
    let depth = cfg.trunc.max(1);
    let y = rng.prod_vec(spec, Dim::Omega, 12, 6);

    let thread = op(to_thread(&y, depth), "to_thread")?;
    if !check_compat(thread.stages()) {
        return Err((
            "to_thread produced incompatible stages".into(),
            vec![prod_section("y", &y)],
        ));
    }

    // Naturality: restrict ∘ project = project.
    let n = rng.range(1, depth);
    let m = rng.usize_below(n + 1);
    let via_restrict = op(restrict(&op(project(&y, n), "project n")?, m), "restrict")?;
    if via_restrict != op(project(&y, m), "project m")? {
        return Err((
            format!("naturality failed at n={n}, m={m}"),
            vec![prod_section("y", &y)],
        ));
    }

    // Roundtrip through the zero-extension section.
    let back = from_thread(&thread);
    for n in 1..=depth {
        if op(project(&back, n), "project roundtrip")? != op(project(&y, n), "project y")? {
            return Err((
                format!("roundtrip failed at depth {n}"),
                vec![prod_section("y", &y), prod_section("from_thread", &back)],
            ));
        }
    }

    // Separation: y is zero iff every projection up to its own decidability
    // bound is zero.
    let zero = ProdVec::zero(spec, Dim::Omega);
    let bound = y.eq_bound(&zero).max(1);
    let all_zero = op(project(&y, bound), "project bound")?.iter().all(|s| s.is_zero());
    if all_zero != op(y.eq_checked(&zero), "eq_checked zero")? {
        return Err((
            "separation mismatch between projections and equality".into(),
            vec![prod_section("y", &y)],
        ));
    }

    if case == 0 {
        quotient_dimension_check()?;
    }
    Ok(())
}

/// Rank of the projected basis images is exactly `n` for `n = 1..=16`.
pub fn quotient_dimension_check() -> CaseOutcome {
    for spec in [FieldSpec::prime(2).expect("prime"), FieldSpec::prime(7).expect("prime")] {
        for n in 1..=16usize {
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let basis = op(FinSuppVec::delta(spec, Dim::Omega, i), "delta")?.embed();
                rows.push(op(project(&basis, n), "project basis")?);
            }
            let dense = op(DenseMatrix::from_rows(spec, rows), "dense")?;
            let r = op(rank(&dense), "rank")?;
            if r != n {
                return Err((
                    format!("projected basis of depth {n} has rank {r} over {spec}"),
                    Vec::new(),
                ));
            }
        }
    }
    Ok(())
}

fn locality_case(rng: &mut CaseRng, case: usize) -> CaseOutcome {
    let spec = fields()[case % 4];
    let (g, y, j) = if rng.chance(1, 2) {
        let g = rng.rule_matrix_omega(spec);
        let y = rng.prod_vec(spec, Dim::Omega, 10, 4);
        let j = rng.usize_below(24);
        (g, y, j)
    } else {
        let b = rng.range(1, 16);
        let a = rng.range(1, 16);
        let g = finite_matrix(rng, spec, b, a);
        let y = rng.prod_vec(spec, Dim::Finite(a), a, 1);
        let j = rng.usize_below(b);
        (g, y, j)
    };

    let row = op(g.row(j), "row")?;
    let support: std::collections::BTreeSet<usize> = row.support().collect();
    let horizon = match g.col_dim() {
        Dim::Finite(a) => a,
        Dim::Omega => (row.support_bound() + 8).max(16),
    };
    let candidates: Vec<usize> = (0..horizon).filter(|i| !support.contains(i)).collect();
    if candidates.is_empty() {
        // The row touches every coordinate; nothing lies outside its support.
        return Ok(());
    }

    let mut perturbation = FinSuppVec::zero(spec, g.col_dim());
    for _ in 0..rng.range(1, 3) {
        let t = candidates[rng.usize_below(candidates.len())];
        let bump = op(FinSuppVec::delta(spec, g.col_dim(), t), "delta")?
            .scale(&rng.nonzero_scalar(spec));
        perturbation = op(perturbation.add(&op(bump, "scale")?), "add")?;
    }
    let perturbed = op(y.add(&perturbation.embed()), "perturb")?;

    let before = op(op(g.act_left(&y), "act_left")?.get(j), "coordinate")?;
    let after = op(op(g.act_left(&perturbed), "act_left perturbed")?.get(j), "coordinate")?;
    if before == after {
        Ok(())
    } else {
        Err((
            format!("coordinate {j} moved under a perturbation outside the row support"),
            vec![matrix_section("G", &g), prod_section("y", &y), prod_section("y'", &perturbed)],
        ))
    }
}

/// Runs one suite under the config; stops at the first failing case.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let mut counterexample = None;
    for case in 0..cfg.cases {
        let mut rng = CaseRng::new(cfg.seed, suite.name(), case as u64);
        let outcome = match suite {
            Suite::Adjoint => adjoint_case(&mut rng, case),
            Suite::Exact => exact_case(&mut rng, case),
            Suite::Faithful => faithful_case(&mut rng, case),
            Suite::Full => full_case(&mut rng, case),
            Suite::Functor => functor_case(&mut rng, case),
            Suite::Limits => limits_case(&mut rng, case, cfg),
            Suite::Locality => locality_case(&mut rng, case),
        };
        if let Err((detail, sections)) = outcome {
            counterexample = Some(Counterexample { case, detail, sections });
            break;
        }
    }
    SuiteReport { suite, cases: cfg.cases, passed: counterexample.is_none(), counterexample }
}

/// Runs the six command-line suites in report order.
pub fn run_cli_suites(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    CLI_SUITES.iter().map(|&s| run_suite(s, cfg)).collect()
}

/// Renders the report: a header line, then one line per suite in the given
/// order. Byte-stable for identical seeds and inputs.
pub fn format_report(reports: &[SuiteReport], cfg: &VerifyConfig) -> String {
    let mut out = format!(
        "# dualspace verify seed={} trunc={} cases={}\n",
        cfg.seed, cfg.trunc, cfg.cases
    );
    for r in reports {
        if r.passed {
            let _ = writeln!(out, "{} {} pass", r.suite.name(), r.cases);
        } else {
            let _ = writeln!(
                out,
                "{} {} fail counterexample={}",
                r.suite.name(),
                r.cases,
                counterexample_file_name(r.suite)
            );
        }
    }
    out
}
