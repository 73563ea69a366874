//! The two reciprocity adjunctions, checked on full hom-space bases: the
//! transposes in each direction are mutually inverse, and the two sides of
//! each adjunction have equal dimension.

use std::sync::Arc;

use gfrob::exactlin::Field;
use gfrob::functors::{
    coinduce, gamma_transpose, induce, phi_transpose, psi_transpose, sigma_transpose,
};
use gfrob::groupoid::{cyclic_groupoid, symmetric_groupoid, ObjectId};
use gfrob::morphism::build_morphism;
use gfrob::rep::{hom_space, restrict, Representation};

fn main() {
    let q = Field::Rationals;
    let z2 = Arc::new(cyclic_groupoid(2).unwrap());
    let s3 = Arc::new(symmetric_groupoid(3).unwrap());
    let phi = build_morphism(
        Arc::clone(&z2),
        Arc::clone(&s3),
        vec![ObjectId(0)],
        vec![
            s3.arrow_by_name("e").unwrap(),
            s3.arrow_by_name("p102").unwrap(),
        ],
    )
    .unwrap();

    let v = Representation::representable(&s3, ObjectId(0), q);
    let w = Representation::representable(&z2, ObjectId(0), q);
    let restricted = restrict(&phi, &v).unwrap();

    // right adjunction: maps out of the restriction against maps into the
    // induction
    let ind = induce(&phi, &w).unwrap();
    let sigmas = hom_space(&restricted, &w).unwrap();
    let gammas = hom_space(&v, &ind.rep).unwrap();
    println!(
        "right adjunction hom dimensions: {} and {}",
        sigmas.len(),
        gammas.len()
    );
    assert_eq!(sigmas.len(), gammas.len());
    for sigma in &sigmas {
        let up = psi_transpose(&phi, &v, &ind, sigma).unwrap();
        let back = phi_transpose(&phi, &v, &ind, &up).unwrap();
        assert!(back.components_equal(sigma));
    }
    for gamma in &gammas {
        let down = phi_transpose(&phi, &v, &ind, gamma).unwrap();
        let back = psi_transpose(&phi, &v, &ind, &down).unwrap();
        assert!(back.components_equal(gamma));
    }
    println!("  transposes are mutually inverse on both bases");

    // left adjunction: maps into the restriction against maps out of the
    // co-induction
    let coind = coinduce(&phi, &w).unwrap();
    let deltas = hom_space(&w, &restricted).unwrap();
    let thetas = hom_space(&coind.rep, &v).unwrap();
    println!(
        "left adjunction hom dimensions: {} and {}",
        deltas.len(),
        thetas.len()
    );
    assert_eq!(deltas.len(), thetas.len());
    for delta in &deltas {
        let up = sigma_transpose(&phi, &v, &coind, delta).unwrap();
        let back = gamma_transpose(&phi, &v, &coind, &up).unwrap();
        assert!(back.components_equal(delta));
    }
    for theta in &thetas {
        let down = gamma_transpose(&phi, &v, &coind, theta).unwrap();
        let back = sigma_transpose(&phi, &v, &coind, &down).unwrap();
        assert!(back.components_equal(theta));
    }
    println!("  transposes are mutually inverse on both bases");
}
