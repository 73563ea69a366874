//! Exact linear representations: validation, one-dimensional families,
//! tensor and hom constructions, invariants and coinvariants, limits and
//! colimits with their dimension identities, and hom-space bases.

use std::sync::Arc;

use gfrob::exactlin::{Field, Matrix};
use gfrob::groupoid::{cyclic_groupoid, ObjectId};
use gfrob::rep::{
    coinvariants, dual_rep, hom_space, invariants, rep_limits, tensor_rep, Representation,
};

fn main() {
    let q = Field::Rationals;
    let z2 = Arc::new(cyclic_groupoid(2).unwrap());

    // the regular representation of the order-two group
    let regular = Representation::new(
        Arc::clone(&z2),
        q,
        vec![2],
        vec![
            Matrix::identity(q, 2),
            Matrix::from_i64(q, &[&[0, 1], &[1, 0]]),
        ],
    )
    .unwrap();

    let (inv, _embedding) = invariants(&regular);
    let (coinv, _projection) = coinvariants(&regular);
    println!(
        "regular representation over Q: invariants dim {}, coinvariants dim {}",
        inv.dim(ObjectId(0)),
        coinv.dim(ObjectId(0))
    );
    assert_eq!(inv.dim(ObjectId(0)), 1);
    assert_eq!(coinv.dim(ObjectId(0)), 1);

    // over a field of characteristic two the same dimensions survive, but
    // the invariant and coinvariant subspaces are genuinely different
    let f2 = Field::prime(2).unwrap();
    let regular2 = Representation::new(
        Arc::clone(&z2),
        f2,
        vec![2],
        vec![
            Matrix::identity(f2, 2),
            Matrix::from_i64(f2, &[&[0, 1], &[1, 0]]),
        ],
    )
    .unwrap();
    let (inv2, _) = invariants(&regular2);
    println!("over F2: invariants dim {}", inv2.dim(ObjectId(0)));

    // a one-dimensional family must be multiplicative; the sign family is
    let sign = Representation::one_dimensional(
        &z2,
        q,
        &[q.one(), q.from_integer(-1)],
    )
    .unwrap();

    // tensor squares and duals
    let square = tensor_rep(&regular, &regular).unwrap();
    println!("tensor square dims: {:?}", square.dims());
    assert_eq!(square.dim(ObjectId(0)), 4);
    let dual = dual_rep(&regular);
    assert_eq!(dual.dims(), regular.dims());

    // limits and colimits with their dimension identities
    for (name, rep) in [("regular", &regular), ("sign", &sign)] {
        let report = rep_limits(rep);
        println!(
            "{name}: lim dim {} = hom(1, -) dim {}; colim dim {} = hom(-, 1) dim {}",
            report.limit_dim,
            report.hom_from_trivial_dim,
            report.colimit_dim,
            report.hom_to_trivial_dim
        );
        assert_eq!(report.limit_dim, report.hom_from_trivial_dim);
        assert_eq!(report.colimit_dim, report.hom_to_trivial_dim);
    }

    // a full hom-space basis: the regular representation decomposes into
    // trivial + sign over the rationals, so its endomorphism space is
    // two-dimensional
    let endos = hom_space(&regular, &regular).unwrap();
    println!("endomorphisms of the regular representation: dim {}", endos.len());
    assert_eq!(endos.len(), 2);
}
