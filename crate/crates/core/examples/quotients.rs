//! Kernels, normal subgroupoids (decided by two independent routes),
//! quotient groupoids and the universal factorization through a quotient.

use std::sync::Arc;

use gfrob::groupoid::{cyclic_groupoid, symmetric_groupoid, ArrowId, ObjectId};
use gfrob::morphism::{
    build_morphism, factor_through, is_normal, kernel, quotient, NormalSubgroupoid,
};

fn main() {
    let s3 = Arc::new(symmetric_groupoid(3).unwrap());
    let z2 = Arc::new(cyclic_groupoid(2).unwrap());

    // the parity morphism onto the cyclic group of order two
    let sign = build_morphism(
        Arc::clone(&s3),
        Arc::clone(&z2),
        vec![ObjectId(0)],
        s3.arrows()
            .map(|a| {
                if matches!(s3.arrow_name(a), "e" | "p120" | "p201") {
                    ArrowId(0)
                } else {
                    ArrowId(1)
                }
            })
            .collect(),
    )
    .unwrap();

    let ker = kernel(&sign);
    println!(
        "kernel of the parity morphism: {{{}}}",
        ker.arrows()
            .iter()
            .map(|&a| s3.arrow_name(a))
            .collect::<Vec<_>>()
            .join(", ")
    );
    assert_eq!(ker.arrows().len(), 3);

    // normality is decided by the direct definition and by invariance of
    // the loop set under conjugation; the two must agree
    let (normal, _) = is_normal(&s3, ker.arrows());
    assert!(normal);
    let subgroup = vec![
        s3.arrow_by_name("e").unwrap(),
        s3.arrow_by_name("p102").unwrap(),
    ];
    let (normal, witness) = is_normal(&s3, &subgroup);
    println!(
        "subgroup generated by a transposition normal? {normal} ({})",
        witness.unwrap_or_default()
    );
    assert!(!normal);

    // quotient by the kernel and the factorization through it
    let n = NormalSubgroupoid::new(Arc::clone(&s3), ker.arrows().to_vec()).unwrap();
    let (quot, pi) = quotient(&s3, &n).unwrap();
    println!(
        "quotient groupoid: {} object(s), {} arrow(s)",
        quot.n_objects(),
        quot.n_arrows()
    );
    assert_eq!(quot.n_arrows(), 2);
    // the kernel of the projection is exactly the subgroupoid
    assert_eq!(kernel(&pi).arrows(), n.arrows());

    let (_, pi2, bar) = factor_through(&sign, &n).unwrap();
    for f in s3.arrows() {
        assert_eq!(bar.on_arrow(pi2.on_arrow(f)), sign.on_arrow(f));
    }
    println!("factorization identity holds arrow by arrow");
}
