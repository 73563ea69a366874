//! Groupoid-sets and bisets: validated actions, translation groupoids,
//! orbit partitions computed two independent ways, pull-back bisets of a
//! morphism, fibres, and the tensor product of bisets.

use std::sync::Arc;

use gfrob::action::{
    pullback_bisets, tensor_over, translation_groupoid, two_sided_translation, ActionSet,
};
use gfrob::groupoid::{pair_groupoid, trivial_groupoid, ObjectId, Side};
use gfrob::morphism::{build_morphism, identity_morphism};

fn main() {
    let pairs = Arc::new(pair_groupoid(&["1".into(), "2".into(), "3".into()]).unwrap());

    // the action of a groupoid on its own objects recovers the groupoid as
    // a translation groupoid, and its orbits are the connected components
    let objects = ActionSet::objects_right(&pairs);
    let (trans, proj) = translation_groupoid(&objects).unwrap();
    println!(
        "object action: {} orbits, translation groupoid has {} arrows",
        objects.orbits().len(),
        trans.n_arrows()
    );
    assert_eq!(objects.orbits().len(), trans.connected_components().len());
    assert!(proj.is_faithful());

    // the regular action, its opposite, and orbit stability
    let regular = ActionSet::regular_right(&pairs);
    let opposite = regular.opposite();
    assert_eq!(regular.orbits(), opposite.opposite().orbits());
    println!("regular action orbits: {}", regular.orbits().len());

    // pull-back bisets of a point inclusion
    let point = Arc::new(trivial_groupoid(&["1".into()]).unwrap());
    let incl = build_morphism(
        Arc::clone(&point),
        Arc::clone(&pairs),
        vec![ObjectId(0)],
        vec![pairs.arrow_by_name("(1,1)").unwrap()],
    )
    .unwrap();
    let (right_pb, left_pb) = pullback_bisets(&incl).unwrap();
    println!(
        "pull-back bisets of the point inclusion: carriers {} and {}",
        right_pb.len(),
        left_pb.len()
    );

    // fibres keep the surviving one-sided action; orbit counts of the two
    // fibres agree at every object
    for x in pairs.objects() {
        let incoming = left_pb.fibre(x, Side::Right).unwrap();
        let outgoing = right_pb.fibre(x, Side::Left).unwrap();
        println!(
            "  fibre over {}: {} element(s), {} orbit(s) on each side",
            pairs.object_name(x),
            incoming.len(),
            incoming.orbits().len()
        );
        assert_eq!(incoming.orbits().len(), outgoing.orbits().len());
    }

    // two-sided translation groupoid of a biset: components = orbits
    let trans2 = two_sided_translation(&right_pb).unwrap();
    assert_eq!(
        right_pb.orbits().len(),
        trans2.connected_components().len()
    );

    // tensoring the two pull-backs of the identity over the middle groupoid
    // is the arrow biset again
    let id = identity_morphism(&pairs);
    let (right_id, left_id) = pullback_bisets(&id).unwrap();
    let tensored = tensor_over(&right_id, &left_id).unwrap();
    println!(
        "tensor of the identity pull-backs: {} classes (= arrow count {})",
        tensored.len(),
        pairs.n_arrows()
    );
    assert_eq!(tensored.len(), pairs.n_arrows());
}
