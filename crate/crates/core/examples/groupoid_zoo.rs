//! A tour of the stock groupoid constructors and the structural queries:
//! components, isotropy groups, stars, conjugation, and the parallel-arrow
//! test for equivalence-relation groupoids.

use gfrob::groupoid::{
    action_groupoid, cyclic_groupoid, frame_groupoid, induced_groupoid, pair_groupoid,
    symmetric_groupoid, trivial_groupoid, ObjectId, Side,
};

fn main() {
    let trivial = trivial_groupoid(&["a".into(), "b".into(), "c".into()]).unwrap();
    println!(
        "trivial on 3 objects: {} arrows, {} components",
        trivial.n_arrows(),
        trivial.connected_components().len()
    );
    assert_eq!(trivial.connected_components().len(), 3);

    let pairs = pair_groupoid(&["a".into(), "b".into()]).unwrap();
    println!(
        "pair groupoid on 2 objects: {} arrows, {} component(s)",
        pairs.n_arrows(),
        pairs.connected_components().len()
    );
    assert_eq!(pairs.n_arrows(), 4);
    let (no_parallel, _) = pairs.is_equivalence_relation_groupoid();
    assert!(no_parallel, "pair groupoids have no parallel arrows");

    let s3 = symmetric_groupoid(3).unwrap();
    let iso = s3.isotropy_group(ObjectId(0)).unwrap();
    println!("one-object symmetric group: isotropy order {}", iso.loops.len());
    assert_eq!(iso.loops.len(), 6);
    let (flag, witness) = s3.is_equivalence_relation_groupoid();
    assert!(!flag);
    let (w1, w2) = witness.unwrap();
    println!(
        "  parallel pair witness: {} and {}",
        s3.arrow_name(w1),
        s3.arrow_name(w2)
    );

    // conjugation along any arrow is a group isomorphism between isotropy groups
    let g = s3.arrow_by_name("p102").unwrap();
    let table = s3.adjoint(g).unwrap();
    println!("  conjugation by p102 maps {} loops bijectively", table.len());

    let z2 = cyclic_groupoid(2).unwrap();
    let swap = action_groupoid(&z2, &["1".into(), "2".into()], &[vec![0, 1], vec![1, 0]])
        .unwrap()
        .groupoid;
    println!(
        "swap action groupoid: {} arrows, all isotropy trivial: {}",
        swap.n_arrows(),
        swap.objects()
            .all(|x| swap.isotropy_group(x).unwrap().loops.len() == 1)
    );
    assert_eq!(swap.n_arrows(), 4);

    let induced = induced_groupoid(
        &s3,
        &["1".into(), "2".into()],
        &[ObjectId(0), ObjectId(0)],
    )
    .unwrap()
    .groupoid;
    println!("induced groupoid of the symmetric group along two points: {} arrows", induced.n_arrows());
    assert_eq!(induced.n_arrows(), 24);

    let frames = frame_groupoid(
        &["x".into(), "y".into()],
        &[vec!["u".into(), "v".into()], vec!["s".into(), "t".into()]],
    )
    .unwrap();
    println!("frame groupoid of two 2-element fibres: {} arrows", frames.n_arrows());

    for x in pairs.objects() {
        let left = pairs.star(x, Side::Left).unwrap().len();
        let right = pairs.star(x, Side::Right).unwrap().len();
        assert_eq!(left, right, "stars always have equal cardinality");
    }
    println!("done");
}
