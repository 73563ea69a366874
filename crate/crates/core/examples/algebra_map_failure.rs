//! The induced linear map between path algebras fails to be multiplicative
//! exactly when the morphism merges objects: merging two idempotents sends
//! their zero product to a nonzero square.

use std::sync::Arc;

use gfrob::exactlin::Field;
use gfrob::frobenius::{algebra_map, PathAlgebra};
use gfrob::groupoid::{pair_groupoid, trivial_groupoid, ArrowId, ObjectId};
use gfrob::morphism::{build_morphism, identity_morphism};

fn main() {
    let q = Field::Rationals;

    // two isolated points both mapped onto the single object of a pair
    // groupoid on one point
    let x = Arc::new(trivial_groupoid(&["x".into(), "xp".into()]).unwrap());
    let y = Arc::new(pair_groupoid(&["y".into()]).unwrap());
    let f = build_morphism(
        Arc::clone(&x),
        Arc::clone(&y),
        vec![ObjectId(0), ObjectId(0)],
        vec![ArrowId(0), ArrowId(0)],
    )
    .unwrap();

    let report = algebra_map(&f, q);
    assert!(!report.multiplicative);
    let witness = report.witness.unwrap();
    let cod_alg = PathAlgebra::new(Arc::clone(&y), q);
    println!("constant map on two points is not multiplicative:");
    println!(
        "  1_{} . 1_{} = 0 maps to {}",
        x.object_name(x.src(witness.f)),
        x.object_name(x.src(witness.g)),
        cod_alg.render(&witness.image_of_product)
    );
    println!(
        "  the images multiply to {} instead",
        cod_alg.render(&witness.product_of_images)
    );
    assert!(witness.image_of_product.is_zero());
    assert!(witness.product_of_images.is_basis_arrow(y.identity(ObjectId(0))));

    // with an injective object map the induced map is always multiplicative
    let ok = algebra_map(&identity_morphism(&y), q);
    println!("identity morphism multiplicative: {}", ok.multiplicative);
    assert!(ok.multiplicative);
}
