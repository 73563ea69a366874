//! Shared fixtures for the integration suites: the standing battery of
//! morphisms between small groupoids, and representation batteries over
//! both supported kinds of field.

use std::sync::Arc;

use gfrob::exactlin::{Field, Matrix};
use gfrob::groupoid::{
    action_groupoid, cyclic_groupoid, pair_groupoid, symmetric_groupoid, trivial_groupoid,
    FiniteGroupoid, ObjectId,
};
use gfrob::morphism::{build_morphism, identity_morphism, GroupoidMorphism};
use gfrob::rep::Representation;

pub fn q() -> Field {
    Field::Rationals
}

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

pub fn s3() -> Arc<FiniteGroupoid> {
    Arc::new(symmetric_groupoid(3).unwrap())
}

/// The inclusion of the order-two subgroup generated by a transposition.
pub fn z2_in_s3() -> GroupoidMorphism {
    let z2 = Arc::new(cyclic_groupoid(2).unwrap());
    let s3 = s3();
    let arrow_map = vec![
        s3.arrow_by_name("e").unwrap(),
        s3.arrow_by_name("p102").unwrap(),
    ];
    build_morphism(z2, s3, vec![ObjectId(0)], arrow_map).unwrap()
}

/// The inclusion of the order-three subgroup of rotations.
pub fn z3_in_s3() -> GroupoidMorphism {
    let z3 = Arc::new(cyclic_groupoid(3).unwrap());
    let s3 = s3();
    let arrow_map = vec![
        s3.arrow_by_name("e").unwrap(),
        s3.arrow_by_name("p120").unwrap(),
        s3.arrow_by_name("p201").unwrap(),
    ];
    build_morphism(z3, s3, vec![ObjectId(0)], arrow_map).unwrap()
}

fn point_into_pair(n: usize) -> GroupoidMorphism {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let dom = Arc::new(trivial_groupoid(&["1".into()]).unwrap());
    let cod = Arc::new(pair_groupoid(&names).unwrap());
    let id_arrow = cod.arrow_by_name("(1,1)").unwrap();
    build_morphism(dom, cod, vec![ObjectId(0)], vec![id_arrow]).unwrap()
}

fn point_into_z3() -> GroupoidMorphism {
    let dom = Arc::new(trivial_groupoid(&["*".into()]).unwrap());
    let cod = Arc::new(cyclic_groupoid(3).unwrap());
    build_morphism(
        dom,
        Arc::clone(&cod),
        vec![ObjectId(0)],
        vec![cod.arrow_by_name("r0").unwrap()],
    )
    .unwrap()
}

/// The wide trivial subgroupoid of the action groupoid of the swap on two
/// points.
fn trivial_into_swap_action() -> GroupoidMorphism {
    let z2 = Arc::new(cyclic_groupoid(2).unwrap());
    let act = action_groupoid(&z2, &["1".into(), "2".into()], &[vec![0, 1], vec![1, 0]])
        .unwrap()
        .groupoid;
    let cod = Arc::new(act);
    let dom = Arc::new(trivial_groupoid(&["1".into(), "2".into()]).unwrap());
    let arrow_map = vec![
        cod.arrow_by_name("(1,r0)").unwrap(),
        cod.arrow_by_name("(2,r0)").unwrap(),
    ];
    build_morphism(dom, cod, vec![ObjectId(0), ObjectId(1)], arrow_map).unwrap()
}

/// The standing battery of faithful, object-injective morphisms used by the
/// acceptance suites.
pub fn morphism_battery() -> Vec<(&'static str, GroupoidMorphism)> {
    let trivial = Arc::new(trivial_groupoid(&["a".into()]).unwrap());
    let pairs = Arc::new(pair_groupoid(&["1".into(), "2".into()]).unwrap());
    vec![
        ("identity on a point", identity_morphism(&trivial)),
        ("identity on the pair groupoid", identity_morphism(&pairs)),
        ("point into the pair groupoid on 2", point_into_pair(2)),
        ("point into the pair groupoid on 3", point_into_pair(3)),
        ("point into the cyclic group of order 3", point_into_z3()),
        ("order-two subgroup of the symmetric group", z2_in_s3()),
        ("order-three subgroup of the symmetric group", z3_in_s3()),
        (
            "wide trivial subgroupoid of a swap action groupoid",
            trivial_into_swap_action(),
        ),
    ]
}

/// The two-dimensional representation of the symmetric group on three
/// letters spanned by coordinate differences.
pub fn s3_standard_rep(g: &Arc<FiniteGroupoid>, field: Field) -> Representation {
    let mats = |name: &str| -> Matrix {
        match name {
            "e" => Matrix::from_i64(field, &[&[1, 0], &[0, 1]]),
            "p102" => Matrix::from_i64(field, &[&[-1, 1], &[0, 1]]),
            "p021" => Matrix::from_i64(field, &[&[1, 0], &[1, -1]]),
            "p210" => Matrix::from_i64(field, &[&[0, -1], &[-1, 0]]),
            "p120" => Matrix::from_i64(field, &[&[0, -1], &[1, -1]]),
            "p201" => Matrix::from_i64(field, &[&[-1, 1], &[-1, 0]]),
            _ => unreachable!(),
        }
    };
    let matrices: Vec<Matrix> = g.arrows().map(|a| mats(g.arrow_name(a))).collect();
    Representation::new(Arc::clone(g), field, vec![2], matrices).unwrap()
}
