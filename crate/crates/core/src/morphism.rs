//! Morphisms of groupoids, kernels, normal subgroupoids, quotient groupoids
//! and the universal factorization through a quotient.

use std::collections::HashSet;
use std::sync::Arc;

use crate::groupoid::{
    ArrowId, CheckConfig, FiniteGroupoid, GroupoidError, GroupoidTables, ObjectId,
};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error("object/arrow maps have the wrong length")]
    MapLength,
    #[error("arrow {arrow} is sent to an arrow with mismatched endpoints")]
    SourceTargetMismatch { arrow: String },
    #[error("identity of {object} is not preserved")]
    IdentityNotPreserved { object: String },
    #[error("composition not preserved on the pair ({f}, {g})")]
    CompositionNotPreserved { f: String, g: String },
    #[error("arrow subset is not a normal subgroupoid: {0}")]
    NotNormal(String),
    #[error("subgroupoid is not contained in the kernel: witness arrow {arrow}")]
    KernelTooSmall { arrow: String },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
}

/// A functor between finite groupoids, validated at construction: the arrow
/// map respects sources, targets, identities, and all composites.
#[derive(Clone, Debug)]
pub struct GroupoidMorphism {
    dom: Arc<FiniteGroupoid>,
    cod: Arc<FiniteGroupoid>,
    object_map: Vec<ObjectId>,
    arrow_map: Vec<ArrowId>,
}

pub fn build_morphism(
    dom: Arc<FiniteGroupoid>,
    cod: Arc<FiniteGroupoid>,
    object_map: Vec<ObjectId>,
    arrow_map: Vec<ArrowId>,
) -> Result<GroupoidMorphism, MorphismError> {
    if object_map.len() != dom.n_objects() || arrow_map.len() != dom.n_arrows() {
        return Err(MorphismError::MapLength);
    }
    if object_map.iter().any(|o| o.0 >= cod.n_objects())
        || arrow_map.iter().any(|a| a.0 >= cod.n_arrows())
    {
        return Err(MorphismError::MapLength);
    }
    for f in dom.arrows() {
        let img = arrow_map[f.0];
        if cod.src(img) != object_map[dom.src(f).0] || cod.tgt(img) != object_map[dom.tgt(f).0] {
            return Err(MorphismError::SourceTargetMismatch {
                arrow: dom.arrow_name(f).to_string(),
            });
        }
    }
    for x in dom.objects() {
        if arrow_map[dom.identity(x).0] != cod.identity(object_map[x.0]) {
            return Err(MorphismError::IdentityNotPreserved {
                object: dom.object_name(x).to_string(),
            });
        }
    }
    for f in dom.arrows() {
        for g in dom.arrows() {
            if let Some(fg) = dom.compose(f, g) {
                let lhs = arrow_map[fg.0];
                let rhs = cod
                    .compose(arrow_map[f.0], arrow_map[g.0])
                    .expect("images are composable");
                if lhs != rhs {
                    return Err(MorphismError::CompositionNotPreserved {
                        f: dom.arrow_name(f).to_string(),
                        g: dom.arrow_name(g).to_string(),
                    });
                }
            }
        }
    }
    Ok(GroupoidMorphism {
        dom,
        cod,
        object_map,
        arrow_map,
    })
}

pub fn identity_morphism(g: &Arc<FiniteGroupoid>) -> GroupoidMorphism {
    GroupoidMorphism {
        dom: Arc::clone(g),
        cod: Arc::clone(g),
        object_map: g.objects().collect(),
        arrow_map: g.arrows().collect(),
    }
}

/// Properties of a morphism: faithfulness and injectivity flags, plus the
/// per-object homomorphisms between isotropy groups.
#[derive(Clone, Debug)]
pub struct MorphismReport {
    pub faithful: bool,
    pub injective_on_objects: bool,
    pub injective_on_arrows: bool,
    /// per domain object: pairs (loop, image loop)
    pub isotropy_maps: Vec<(ObjectId, Vec<(ArrowId, ArrowId)>)>,
}

impl GroupoidMorphism {
    pub fn dom(&self) -> &Arc<FiniteGroupoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteGroupoid> {
        &self.cod
    }

    pub fn on_object(&self, x: ObjectId) -> ObjectId {
        self.object_map[x.0]
    }

    pub fn on_arrow(&self, f: ArrowId) -> ArrowId {
        self.arrow_map[f.0]
    }

    pub fn object_map(&self) -> &[ObjectId] {
        &self.object_map
    }

    pub fn arrow_map(&self) -> &[ArrowId] {
        &self.arrow_map
    }

    /// Composition `self . earlier` (apply `earlier` first).
    pub fn compose(&self, earlier: &GroupoidMorphism) -> Result<GroupoidMorphism, MorphismError> {
        assert!(
            same_groupoid(&self.dom, &earlier.cod),
            "morphisms are not composable"
        );
        build_morphism(
            Arc::clone(&earlier.dom),
            Arc::clone(&self.cod),
            earlier
                .object_map
                .iter()
                .map(|&x| self.on_object(x))
                .collect(),
            earlier
                .arrow_map
                .iter()
                .map(|&f| self.on_arrow(f))
                .collect(),
        )
    }

    pub fn is_faithful(&self) -> bool {
        for x in self.dom.objects() {
            for y in self.dom.objects() {
                let hom = self.dom.hom(x, y);
                let images: HashSet<ArrowId> =
                    hom.iter().map(|&f| self.arrow_map[f.0]).collect();
                if images.len() != hom.len() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let set: HashSet<ObjectId> = self.object_map.iter().copied().collect();
        set.len() == self.object_map.len()
    }

    pub fn properties(&self) -> MorphismReport {
        let injective_on_arrows = {
            let set: HashSet<ArrowId> = self.arrow_map.iter().copied().collect();
            set.len() == self.arrow_map.len()
        };
        let isotropy_maps = self
            .dom
            .objects()
            .map(|u| {
                let pairs = self
                    .dom
                    .loops_at(u)
                    .into_iter()
                    .map(|l| (l, self.arrow_map[l.0]))
                    .collect();
                (u, pairs)
            })
            .collect();
        MorphismReport {
            faithful: self.is_faithful(),
            injective_on_objects: self.is_injective_on_objects(),
            injective_on_arrows,
            isotropy_maps,
        }
    }
}

pub fn same_groupoid(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A wide subgroupoid stable under conjugation by every parent arrow. The
/// arrow subset is the only free data: it must contain all identities and be
/// closed under composition and inverse.
#[derive(Clone, Debug)]
pub struct NormalSubgroupoid {
    parent: Arc<FiniteGroupoid>,
    arrows: Vec<ArrowId>,
    mask: Vec<bool>,
}

impl NormalSubgroupoid {
    pub fn parent(&self) -> &Arc<FiniteGroupoid> {
        &self.parent
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn contains(&self, f: ArrowId) -> bool {
        self.mask[f.0]
    }

    pub fn new(
        parent: Arc<FiniteGroupoid>,
        arrows: Vec<ArrowId>,
    ) -> Result<NormalSubgroupoid, MorphismError> {
        let (normal, witness) = is_normal(&parent, &arrows);
        if !normal {
            return Err(MorphismError::NotNormal(witness.unwrap_or_default()));
        }
        let mut mask = vec![false; parent.n_arrows()];
        for &a in &arrows {
            mask[a.0] = true;
        }
        let mut sorted = arrows;
        sorted.sort();
        sorted.dedup();
        Ok(NormalSubgroupoid {
            parent,
            arrows: sorted,
            mask,
        })
    }

    /// Only the identity arrows: the smallest normal subgroupoid.
    pub fn identities(parent: &Arc<FiniteGroupoid>) -> NormalSubgroupoid {
        let arrows: Vec<ArrowId> = parent.objects().map(|x| parent.identity(x)).collect();
        NormalSubgroupoid::new(Arc::clone(parent), arrows).expect("identities are normal")
    }
}

/// Arrows sent to an identity; always a normal subgroupoid.
pub fn kernel(phi: &GroupoidMorphism) -> NormalSubgroupoid {
    let dom = phi.dom();
    let cod = phi.cod();
    let arrows: Vec<ArrowId> = dom
        .arrows()
        .filter(|&h| {
            let img = phi.on_arrow(h);
            cod.is_identity(img)
        })
        .collect();
    NormalSubgroupoid::new(Arc::clone(dom), arrows).expect("kernels are normal")
}

/// Decides normality of an arrow subset by the direct definition (wide,
/// closed, conjugation-stable isotropy) and, independently, by invariance of
/// the loop set under the conjugation action of the parent. The two routes
/// are asserted to agree; a witness is returned on failure.
pub fn is_normal(parent: &FiniteGroupoid, arrows: &[ArrowId]) -> (bool, Option<String>) {
    let direct = is_normal_direct(parent, arrows);
    let invariance = is_normal_by_loop_invariance(parent, arrows);
    assert_eq!(
        direct.0, invariance.0,
        "the two normality criteria must agree"
    );
    direct
}

fn subcategory_violation(parent: &FiniteGroupoid, mask: &[bool]) -> Option<String> {
    for x in parent.objects() {
        if !mask[parent.identity(x).0] {
            return Some(format!(
                "identity of {} is missing",
                parent.object_name(x)
            ));
        }
    }
    for f in parent.arrows().filter(|f| mask[f.0]) {
        if !mask[parent.inverse(f).0] {
            return Some(format!(
                "not closed under inverse at {}",
                parent.arrow_name(f)
            ));
        }
        for g in parent.arrows().filter(|g| mask[g.0]) {
            if let Some(fg) = parent.compose(f, g) {
                if !mask[fg.0] {
                    return Some(format!(
                        "not closed under composition at ({}, {})",
                        parent.arrow_name(f),
                        parent.arrow_name(g)
                    ));
                }
            }
        }
    }
    None
}

fn is_normal_direct(parent: &FiniteGroupoid, arrows: &[ArrowId]) -> (bool, Option<String>) {
    let mut mask = vec![false; parent.n_arrows()];
    for &a in arrows {
        mask[a.0] = true;
    }
    if let Some(w) = subcategory_violation(parent, &mask) {
        return (false, Some(w));
    }
    // conjugation by every parent arrow maps member isotropy onto member
    // isotropy, as an equality of subgroups
    for h in parent.arrows() {
        let hinv = parent.inverse(h);
        let src_loops: Vec<ArrowId> = parent
            .loops_at(parent.src(h))
            .into_iter()
            .filter(|l| mask[l.0])
            .collect();
        let tgt_loops: Vec<ArrowId> = parent
            .loops_at(parent.tgt(h))
            .into_iter()
            .filter(|l| mask[l.0])
            .collect();
        let conjugated: Vec<ArrowId> = src_loops
            .iter()
            .map(|&l| parent.compose2(parent.compose2(h, l), hinv))
            .collect();
        for (&l, &c) in src_loops.iter().zip(conjugated.iter()) {
            if !mask[c.0] {
                return (
                    false,
                    Some(format!(
                        "conjugate of {} by {} escapes the subset",
                        parent.arrow_name(l),
                        parent.arrow_name(h)
                    )),
                );
            }
        }
        if conjugated.len() != tgt_loops.len() {
            return (
                false,
                Some(format!(
                    "conjugation by {} is not onto the member isotropy",
                    parent.arrow_name(h)
                )),
            );
        }
    }
    (true, None)
}

fn is_normal_by_loop_invariance(
    parent: &FiniteGroupoid,
    arrows: &[ArrowId],
) -> (bool, Option<String>) {
    let mut mask = vec![false; parent.n_arrows()];
    for &a in arrows {
        mask[a.0] = true;
    }
    if let Some(w) = subcategory_violation(parent, &mask) {
        return (false, Some(w));
    }
    // the member loops form an invariant subset under l -> h l h^{-1}
    for h in parent.arrows() {
        let hinv = parent.inverse(h);
        for l in parent.loops_at(parent.src(h)) {
            if mask[l.0] {
                let c = parent.compose2(parent.compose2(h, l), hinv);
                if !mask[c.0] {
                    return (
                        false,
                        Some(format!(
                            "loop {} conjugated by {} leaves the subset",
                            parent.arrow_name(l),
                            parent.arrow_name(h)
                        )),
                    );
                }
            }
        }
    }
    (true, None)
}

/// The quotient groupoid and its projection. Objects are member-connectivity
/// classes; two arrows are identified when they differ by members on both
/// sides. Class representatives are least-index.
pub fn quotient(
    parent: &Arc<FiniteGroupoid>,
    n: &NormalSubgroupoid,
) -> Result<(Arc<FiniteGroupoid>, GroupoidMorphism), MorphismError> {
    assert!(
        same_groupoid(parent, n.parent()),
        "normal subgroupoid belongs to a different parent"
    );

    let mut obj_uf = UnionFind::new(parent.n_objects());
    for &e in n.arrows() {
        obj_uf.union(parent.src(e).0, parent.tgt(e).0);
    }
    let obj_blocks = obj_uf.blocks();
    let obj_class_of = {
        let mut v = vec![0usize; parent.n_objects()];
        for (ci, block) in obj_blocks.iter().enumerate() {
            for &o in block {
                v[o] = ci;
            }
        }
        v
    };

    let mut arr_uf = UnionFind::new(parent.n_arrows());
    for h in parent.arrows() {
        for &e in n.arrows() {
            if let Some(eh) = parent.compose(e, h) {
                arr_uf.union(h.0, eh.0);
            }
            if let Some(he) = parent.compose(h, e) {
                arr_uf.union(h.0, he.0);
            }
        }
    }
    let arr_blocks = arr_uf.blocks();
    let arr_class_of = {
        let mut v = vec![0usize; parent.n_arrows()];
        for (ci, block) in arr_blocks.iter().enumerate() {
            for &a in block {
                v[a] = ci;
            }
        }
        v
    };
    let arr_reps: Vec<ArrowId> = arr_blocks.iter().map(|b| ArrowId(b[0])).collect();
    let obj_reps: Vec<ObjectId> = obj_blocks.iter().map(|b| ObjectId(b[0])).collect();

    let object_names: Vec<String> = obj_reps
        .iter()
        .map(|&o| format!("[{}]", parent.object_name(o)))
        .collect();
    let arrows: Vec<(String, ObjectId, ObjectId)> = arr_reps
        .iter()
        .map(|&a| {
            (
                format!("[{}]", parent.arrow_name(a)),
                ObjectId(obj_class_of[parent.src(a).0]),
                ObjectId(obj_class_of[parent.tgt(a).0]),
            )
        })
        .collect();
    let identities: Vec<ArrowId> = obj_reps
        .iter()
        .map(|&o| ArrowId(arr_class_of[parent.identity(o).0]))
        .collect();

    // composite of classes: adjust representatives by a member connecting
    // src(rep of the left factor) with tgt(rep of the right factor)
    let mut composition = Vec::new();
    for (fi, &f) in arr_reps.iter().enumerate() {
        for (gi, &g) in arr_reps.iter().enumerate() {
            if obj_class_of[parent.src(f).0] != obj_class_of[parent.tgt(g).0] {
                continue;
            }
            let connector = n
                .arrows()
                .iter()
                .copied()
                .find(|&e| parent.src(e) == parent.tgt(g) && parent.tgt(e) == parent.src(f))
                .expect("objects in one class are member-connected");
            let fg = parent.compose2(parent.compose2(f, connector), g);
            composition.push((ArrowId(fi), ArrowId(gi), ArrowId(arr_class_of[fg.0])));
        }
    }

    let quotient_gpd = Arc::new(FiniteGroupoid::from_tables(
        GroupoidTables {
            object_names,
            arrows,
            identities,
            composition,
            inverses: None,
        },
        &CheckConfig::default(),
    )?);

    let projection = build_morphism(
        Arc::clone(parent),
        Arc::clone(&quotient_gpd),
        (0..parent.n_objects())
            .map(|o| ObjectId(obj_class_of[o]))
            .collect(),
        (0..parent.n_arrows())
            .map(|a| ArrowId(arr_class_of[a]))
            .collect(),
    )?;
    Ok((quotient_gpd, projection))
}

/// The unique morphism through the quotient: for `n` contained in the kernel
/// of `phi`, returns `phi_bar` with `phi_bar . projection = phi`, verified
/// arrow by arrow.
pub fn factor_through(
    phi: &GroupoidMorphism,
    n: &NormalSubgroupoid,
) -> Result<(Arc<FiniteGroupoid>, GroupoidMorphism, GroupoidMorphism), MorphismError> {
    let parent = phi.dom();
    for &e in n.arrows() {
        if !phi.cod().is_identity(phi.on_arrow(e)) {
            return Err(MorphismError::KernelTooSmall {
                arrow: parent.arrow_name(e).to_string(),
            });
        }
    }
    let (q, projection) = quotient(parent, n)?;
    // well defined on classes: send a class to the image of its representative
    let mut obj_map = vec![None; q.n_objects()];
    for x in parent.objects() {
        let cls = projection.on_object(x);
        let img = phi.on_object(x);
        match obj_map[cls.0] {
            None => obj_map[cls.0] = Some(img),
            Some(prev) => assert_eq!(prev, img, "class has a unique image"),
        }
    }
    let mut arr_map = vec![None; q.n_arrows()];
    for f in parent.arrows() {
        let cls = projection.on_arrow(f);
        let img = phi.on_arrow(f);
        match arr_map[cls.0] {
            None => arr_map[cls.0] = Some(img),
            Some(prev) => assert_eq!(prev, img, "class has a unique image"),
        }
    }
    let phi_bar = build_morphism(
        Arc::clone(&q),
        Arc::clone(phi.cod()),
        obj_map.into_iter().map(Option::unwrap).collect(),
        arr_map.into_iter().map(Option::unwrap).collect(),
    )?;
    // phi_bar . projection = phi, arrow by arrow
    for f in parent.arrows() {
        assert_eq!(
            phi_bar.on_arrow(projection.on_arrow(f)),
            phi.on_arrow(f),
            "factorization identity"
        );
    }
    Ok((q, projection, phi_bar))
}
