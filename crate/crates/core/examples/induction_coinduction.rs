//! Restriction, induction and co-induction along a morphism, with the
//! built-in agreement between the direct naturality solve and the
//! orbit/stabilizer formula.

use std::sync::Arc;

use gfrob::exactlin::{Field, Subspace};
use gfrob::functors::{coinduce, induce, induced_fibre_direct};
use gfrob::groupoid::{cyclic_groupoid, symmetric_groupoid, trivial_groupoid, ObjectId};
use gfrob::morphism::build_morphism;
use gfrob::rep::{invariants, restrict, Representation};

fn main() {
    let q = Field::Rationals;

    // inducing the trivial representation of the trivial group into the
    // cyclic group of order three produces the regular representation
    let point = Arc::new(trivial_groupoid(&["*".into()]).unwrap());
    let z3 = Arc::new(cyclic_groupoid(3).unwrap());
    let into_z3 = build_morphism(
        Arc::clone(&point),
        Arc::clone(&z3),
        vec![ObjectId(0)],
        vec![z3.arrow_by_name("r0").unwrap()],
    )
    .unwrap();
    let one = Representation::trivial(&point, q);
    let induced = induce(&into_z3, &one).unwrap();
    println!(
        "inducing the trivial representation along a point into Z/3: dim {}",
        induced.rep.dim(ObjectId(0))
    );
    assert_eq!(induced.rep.dim(ObjectId(0)), 3);

    // the same fibre from the direct naturality solve: equal row spaces
    let direct = induced_fibre_direct(&into_z3, &one, ObjectId(0));
    let expanded = induced.rep.dim(ObjectId(0));
    assert_eq!(direct.rows(), expanded);
    assert!(Subspace::from_rows(&direct)
        .eq_subspace(&Subspace::from_rows(&induced.expanded_basis(ObjectId(0)))));
    println!("  direct solve agrees: {} basis vectors, identical row space", direct.rows());

    // co-induction gives the same dimension here
    let coinduced = coinduce(&into_z3, &one).unwrap();
    assert_eq!(coinduced.rep.dim(ObjectId(0)), 3);
    println!("  co-induced dimension matches: {}", coinduced.rep.dim(ObjectId(0)));

    // restriction along a subgroup inclusion, and invariants of the result
    let z2 = Arc::new(cyclic_groupoid(2).unwrap());
    let s3 = Arc::new(symmetric_groupoid(3).unwrap());
    let incl = build_morphism(
        Arc::clone(&z2),
        Arc::clone(&s3),
        vec![ObjectId(0)],
        vec![
            s3.arrow_by_name("e").unwrap(),
            s3.arrow_by_name("p102").unwrap(),
        ],
    )
    .unwrap();
    let regular_s3 = Representation::representable(&s3, ObjectId(0), q);
    let restricted = restrict(&incl, &regular_s3).unwrap();
    let (fixed, _) = invariants(&restricted);
    println!(
        "restricting the regular representation of the symmetric group to an \
         order-two subgroup: dim {} with invariants of dim {}",
        restricted.dim(ObjectId(0)),
        fixed.dim(ObjectId(0))
    );
    assert_eq!(restricted.dim(ObjectId(0)), 6);
    assert_eq!(fixed.dim(ObjectId(0)), 3);

    // induction out of the subgroup has fibre dimension = index * dim
    let w = Representation::trivial(&z2, q);
    let up = induce(&incl, &w).unwrap();
    println!(
        "inducing the trivial representation of the subgroup: dim {} (= index)",
        up.rep.dim(ObjectId(0))
    );
    assert_eq!(up.rep.dim(ObjectId(0)), 3);
}
