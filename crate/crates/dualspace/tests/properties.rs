//! Property tests for the algebraic laws the crate is built around.

use proptest::prelude::*;

use dualspace::duality::check_adjoint;
use dualspace::limits::{project, restrict, to_thread};
use dualspace::seq::{pair, Dim, FinSuppVec, ProdVec, TailSpec};
use dualspace::{gauss_solve, rank, DenseMatrix, FieldSpec, RowFiniteMatrix, Scalar};

fn field_of(idx: u8) -> FieldSpec {
    match idx % 4 {
        0 => FieldSpec::prime(2).unwrap(),
        1 => FieldSpec::prime(7).unwrap(),
        2 => FieldSpec::prime(97).unwrap(),
        _ => FieldSpec::rationals(),
    }
}

fn scalar_of(spec: FieldSpec, raw: i64) -> Scalar {
    match spec {
        FieldSpec::Prime(_) => spec.from_i64(raw),
        // Spread raw over numerator and denominator for rational variety.
        FieldSpec::Rationals => {
            Scalar::rational(raw % 13, (raw.rem_euclid(7)) + 1).unwrap()
        }
    }
}

fn finsupp_of(spec: FieldSpec, raw: &[(usize, i64)]) -> FinSuppVec {
    FinSuppVec::from_entries(
        spec,
        Dim::Omega,
        raw.iter().map(|&(i, v)| (i % 24, scalar_of(spec, v))),
    )
    .unwrap()
}

fn prodvec_of(spec: FieldSpec, prefix: &[i64], block: &Option<Vec<i64>>) -> ProdVec {
    let prefix = prefix.iter().map(|&v| scalar_of(spec, v)).collect();
    let tail = match block {
        None => TailSpec::Zeros,
        Some(b) => TailSpec::Repeat(b.iter().map(|&v| scalar_of(spec, v)).collect()),
    };
    ProdVec::new(spec, Dim::Omega, prefix, tail).unwrap()
}

fn explicit_of(spec: FieldSpec, rows: &[(usize, Vec<(usize, i64)>)]) -> RowFiniteMatrix {
    let mut by_index: std::collections::BTreeMap<usize, Vec<(usize, i64)>> = Default::default();
    for (j, entries) in rows {
        by_index.entry(j % 10).or_default().extend(entries.iter().copied());
    }
    let rows = by_index
        .into_iter()
        .map(|(j, entries)| {
            (
                j,
                FinSuppVec::from_entries(
                    spec,
                    Dim::Omega,
                    entries.into_iter().map(|(i, v)| (i % 16, scalar_of(spec, v))),
                )
                .unwrap(),
            )
        })
        .collect();
    RowFiniteMatrix::explicit(spec, Dim::Omega, Dim::Omega, rows).unwrap()
}

fn raw_entries() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..24, -20i64..20), 0..6)
}

fn raw_prefix() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..20, 0..6)
}

fn raw_block() -> impl Strategy<Value = Option<Vec<i64>>> {
    prop::option::of(prop::collection::vec(-20i64..20, 1..4))
}

fn raw_matrix() -> impl Strategy<Value = Vec<(usize, Vec<(usize, i64)>)>> {
    prop::collection::vec(
        (0usize..10, prop::collection::vec((0usize..16, -9i64..9), 0..4)),
        0..5,
    )
}

proptest! {
    // Field axioms, exactly, over all four shipped fields.
    #[test]
    fn scalar_ring_axioms(idx in 0u8..4, a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let spec = field_of(idx);
        let (a, b, c) = (scalar_of(spec, a), scalar_of(spec, b), scalar_of(spec, c));
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.add(&a.neg()).unwrap(), spec.zero());
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()).unwrap(), spec.one());
        }
    }

    #[test]
    fn scalar_text_roundtrip(idx in 0u8..4, raw in -50i64..50) {
        let spec = field_of(idx);
        let s = scalar_of(spec, raw);
        prop_assert_eq!(Scalar::parse(spec, &s.to_string()).unwrap(), s);
    }

    // gauss_solve: a returned solution re-multiplies exactly; absence means
    // the augmented rank strictly exceeds the plain rank.
    #[test]
    fn gauss_solution_or_rank_gap(
        idx in 0u8..4,
        rows in 1usize..5,
        cols in 1usize..5,
        data in prop::collection::vec(-9i64..9, 25),
        rhs in prop::collection::vec(-9i64..9, 5),
    ) {
        let spec = field_of(idx);
        let entries: Vec<Scalar> =
            data.iter().take(rows * cols).map(|&v| scalar_of(spec, v)).collect();
        let a = DenseMatrix::new(spec, rows, cols, entries).unwrap();
        let b: Vec<Scalar> = rhs.iter().take(rows).map(|&v| scalar_of(spec, v)).collect();
        match gauss_solve(&a, &b).unwrap() {
            Some(x) => prop_assert_eq!(a.mat_vec(&x).unwrap(), b),
            None => {
                let aug_rows: Vec<Vec<Scalar>> = b
                    .iter()
                    .enumerate()
                    .map(|(r, rhs)| {
                        let mut row: Vec<Scalar> =
                            (0..cols).map(|c| a.at(r, c).clone()).collect();
                        row.push(rhs.clone());
                        row
                    })
                    .collect();
                let aug = DenseMatrix::from_rows(spec, aug_rows).unwrap();
                prop_assert!(rank(&aug).unwrap() > rank(&a).unwrap());
            }
        }
    }

    // Bilinearity of the canonical pairing.
    #[test]
    fn pairing_is_bilinear(
        idx in 0u8..4,
        x1 in raw_entries(),
        x2 in raw_entries(),
        c in -20i64..20,
        prefix in raw_prefix(),
        block in raw_block(),
    ) {
        let spec = field_of(idx);
        let (x1, x2) = (finsupp_of(spec, &x1), finsupp_of(spec, &x2));
        let y = prodvec_of(spec, &prefix, &block);
        let c = scalar_of(spec, c);
        let lhs = pair(&x1.add(&x2).unwrap(), &y).unwrap();
        let rhs = pair(&x1, &y).unwrap().add(&pair(&x2, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = pair(&x1.scale(&c).unwrap(), &y).unwrap();
        let rhs = c.mul(&pair(&x1, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    // Product-vector addition agrees with the coordinatewise oracle.
    #[test]
    fn prod_add_coordinatewise(
        idx in 0u8..4,
        p1 in raw_prefix(), b1 in raw_block(),
        p2 in raw_prefix(), b2 in raw_block(),
    ) {
        let spec = field_of(idx);
        let u = prodvec_of(spec, &p1, &b1);
        let v = prodvec_of(spec, &p2, &b2);
        let sum = u.add(&v).unwrap();
        for i in 0..32 {
            let want = u.get(i).unwrap().add(&v.get(i).unwrap()).unwrap();
            prop_assert_eq!(sum.get(i).unwrap(), want);
        }
    }

    // Separation: equality with zero, coordinate vanishing up to the
    // decidability bound, and vanishing projections all coincide.
    #[test]
    fn hausdorff_separation(idx in 0u8..4, prefix in raw_prefix(), block in raw_block()) {
        let spec = field_of(idx);
        let y = prodvec_of(spec, &prefix, &block);
        let zero = ProdVec::zero(spec, Dim::Omega);
        let bound = y.eq_bound(&zero).max(1);
        let eq_zero = y.eq_checked(&zero).unwrap();
        let coords_vanish = (0..bound).all(|i| y.get(i).unwrap().is_zero());
        let projections_vanish =
            (0..=bound).all(|n| project(&y, n).unwrap().iter().all(Scalar::is_zero));
        prop_assert_eq!(eq_zero, coords_vanish);
        prop_assert_eq!(eq_zero, projections_vanish);
    }

    // Both composition laws, against materialized actions.
    #[test]
    fn action_associativity(
        idx in 0u8..4,
        ra in raw_matrix(),
        rb in raw_matrix(),
        x in raw_entries(),
        prefix in raw_prefix(),
        block in raw_block(),
    ) {
        let spec = field_of(idx);
        let a = explicit_of(spec, &ra);
        let b = explicit_of(spec, &rb);
        let ab = a.compose(&b).unwrap();

        let x = finsupp_of(spec, &x);
        let right_one = b.act_right(&a.act_right(&x).unwrap()).unwrap();
        let right_two = ab.act_right(&x).unwrap();
        prop_assert!(right_one.eq_checked(&right_two).unwrap());

        let y = prodvec_of(spec, &prefix, &block);
        let left_one = ab.act_left(&y).unwrap();
        let left_two = a.act_left(&b.act_left(&y).unwrap()).unwrap();
        prop_assert!(left_one.eq_checked(&left_two).unwrap());

        // Row-finiteness is closed under composition: every materialized row
        // has a finite support bound within the truncation the factors allow.
        for j in 0..10 {
            let bound = ab.row_support_bound(j).unwrap();
            prop_assert!(bound <= 16);
        }
    }

    // Linearity of both actions in the vector argument.
    #[test]
    fn actions_are_linear(
        idx in 0u8..4,
        rm in raw_matrix(),
        x1 in raw_entries(),
        x2 in raw_entries(),
        p1 in raw_prefix(), b1 in raw_block(),
        p2 in raw_prefix(), b2 in raw_block(),
        c in -20i64..20,
    ) {
        let spec = field_of(idx);
        let m = explicit_of(spec, &rm);
        let c = scalar_of(spec, c);

        let (x1, x2) = (finsupp_of(spec, &x1), finsupp_of(spec, &x2));
        let sum_then_act = m.act_right(&x1.add(&x2).unwrap()).unwrap();
        let act_then_sum = m.act_right(&x1).unwrap().add(&m.act_right(&x2).unwrap()).unwrap();
        prop_assert!(sum_then_act.eq_checked(&act_then_sum).unwrap());
        let scale_then_act = m.act_right(&x1.scale(&c).unwrap()).unwrap();
        let act_then_scale = m.act_right(&x1).unwrap().scale(&c).unwrap();
        prop_assert!(scale_then_act.eq_checked(&act_then_scale).unwrap());

        let (y1, y2) = (prodvec_of(spec, &p1, &b1), prodvec_of(spec, &p2, &b2));
        let sum_then_act = m.act_left(&y1.add(&y2).unwrap()).unwrap();
        let act_then_sum = m.act_left(&y1).unwrap().add(&m.act_left(&y2).unwrap()).unwrap();
        prop_assert!(sum_then_act.eq_checked(&act_then_sum).unwrap());
    }

    // The adjoint identity on explicit matrices.
    #[test]
    fn adjoint_identity(
        idx in 0u8..4,
        rm in raw_matrix(),
        x in raw_entries(),
        prefix in raw_prefix(),
        block in raw_block(),
    ) {
        let spec = field_of(idx);
        let m = explicit_of(spec, &rm);
        let x = finsupp_of(spec, &x);
        let y = prodvec_of(spec, &prefix, &block);
        prop_assert!(check_adjoint(&m, &x, &y).unwrap());
    }

    // Tower roundtrip and naturality.
    #[test]
    fn tower_roundtrip_and_naturality(
        idx in 0u8..4,
        prefix in raw_prefix(),
        block in raw_block(),
        depth in 1usize..24,
        n in 1usize..24,
        m in 0usize..24,
    ) {
        let spec = field_of(idx);
        let y = prodvec_of(spec, &prefix, &block);
        let thread = to_thread(&y, depth).unwrap();
        prop_assert!(dualspace::limits::check_compat(thread.stages()));
        let back = dualspace::limits::from_thread(&thread);
        for k in 1..=depth {
            prop_assert_eq!(project(&back, k).unwrap(), project(&y, k).unwrap());
        }
        let (n, m) = if m <= n { (n, m) } else { (m, n.min(m)) };
        let via = restrict(&project(&y, n).unwrap(), m).unwrap();
        prop_assert_eq!(via, project(&y, m).unwrap());
    }

    // Completeness at finite depth: every compatible thread arises from a
    // product vector, witnessed by the zero-extension section.
    #[test]
    fn every_compatible_thread_has_a_witness(
        idx in 0u8..4,
        coords in prop::collection::vec(-20i64..20, 0..12),
    ) {
        let spec = field_of(idx);
        let scalars: Vec<Scalar> = coords.iter().map(|&v| scalar_of(spec, v)).collect();
        let stages: Vec<Vec<Scalar>> =
            (1..=scalars.len()).map(|n| scalars[..n].to_vec()).collect();
        prop_assert!(dualspace::limits::check_compat(&stages));
        let thread = dualspace::limits::Thread::new(spec, stages).unwrap();
        let witness = dualspace::limits::from_thread(&thread);
        let observed = to_thread(&witness, thread.depth()).unwrap();
        prop_assert_eq!(observed, thread);
    }

    // File formats: serialize∘parse is the identity on canonical output.
    #[test]
    fn matrix_file_roundtrip(idx in 0u8..4, rm in raw_matrix()) {
        let spec = field_of(idx);
        let m = explicit_of(spec, &rm);
        let text = dualspace::io::serialize_matrix(&m);
        let parsed = dualspace::io::parse_matrix(&text).unwrap();
        prop_assert!(parsed.mat_eq(&m).unwrap());
        prop_assert_eq!(dualspace::io::serialize_matrix(&parsed), text);
    }

    #[test]
    fn vector_file_roundtrip(
        idx in 0u8..4,
        entries in raw_entries(),
        prefix in raw_prefix(),
        block in raw_block(),
    ) {
        let spec = field_of(idx);
        let sparse = dualspace::io::VectorData::Sparse(finsupp_of(spec, &entries));
        let text = dualspace::io::serialize_vector(&sparse);
        let parsed = dualspace::io::parse_vector(&text).unwrap();
        prop_assert_eq!(&parsed, &sparse);
        prop_assert_eq!(dualspace::io::serialize_vector(&parsed), text);

        let prod = dualspace::io::VectorData::Prefix(prodvec_of(spec, &prefix, &block));
        let text = dualspace::io::serialize_vector(&prod);
        let parsed = dualspace::io::parse_vector(&text).unwrap();
        prop_assert_eq!(&parsed, &prod);
        prop_assert_eq!(dualspace::io::serialize_vector(&parsed), text);
    }
}
