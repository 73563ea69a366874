//! Groupoid-sets and bisets: validated action tables, opposite actions,
//! translation groupoids, orbit partitions, tensor products of bisets and
//! the pull-back bisets of a morphism.
//!
//! A right action of `G` on a carrier `X` anchored by `anchor: X -> G_0`
//! is defined on pairs `(e, g)` with `anchor(e) = tgt(g)` and satisfies
//! `anchor(e.g) = src(g)`, the unit law and `(e.g).h = e.(gh)`. Left
//! actions are dual: defined when `anchor(e) = src(h)`, with
//! `anchor(h.e) = tgt(h)` and `h.(h'.e) = (hh').e`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::groupoid::{
    ArrowId, CheckConfig, FiniteGroupoid, GroupoidError, GroupoidTables, ObjectId, Side,
};
use crate::morphism::{build_morphism, same_groupoid, GroupoidMorphism, MorphismError};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("invalid action tables: {0}")]
    InvalidTables(String),
    #[error("anchor violated at ({element}, {arrow})")]
    StructureMapViolation { element: String, arrow: String },
    #[error("unit law violated at {element}")]
    UnitViolation { element: String },
    #[error("associativity violated at ({element}, {g}, {h})")]
    AssociativityViolation {
        element: String,
        g: String,
        h: String,
    },
    #[error("biset compatibility violated at ({element}, {left}, {right})")]
    CompatibilityViolation {
        element: String,
        left: String,
        right: String,
    },
    #[error("the two groupoids do not match")]
    GroupoidMismatch,
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

pub type ElemId = usize;

/// A finite one-sided groupoid-set with its action table.
#[derive(Clone, Debug)]
pub struct ActionSet {
    groupoid: Arc<FiniteGroupoid>,
    side: Side,
    carrier: Vec<String>,
    anchor: Vec<ObjectId>,
    /// right: (e, g) -> e.g for anchor(e) = tgt(g);
    /// left: (e, h) -> h.e for anchor(e) = src(h)
    table: HashMap<(ElemId, ArrowId), ElemId>,
}

/// Orbits of an action (or of the two-sided relation of a biset), with
/// least-index representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<ElemId>>,
    pub representatives: Vec<ElemId>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, e: ElemId) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&e))
            .expect("element belongs to some block")
    }
}

fn partition_from(uf: &mut UnionFind) -> OrbitPartition {
    let blocks = uf.blocks();
    let representatives = blocks.iter().map(|b| b[0]).collect();
    OrbitPartition {
        blocks,
        representatives,
    }
}

impl ActionSet {
    pub fn new(
        groupoid: Arc<FiniteGroupoid>,
        side: Side,
        carrier: Vec<String>,
        anchor: Vec<ObjectId>,
        table: HashMap<(ElemId, ArrowId), ElemId>,
    ) -> Result<ActionSet, ActionError> {
        let set = ActionSet {
            groupoid,
            side,
            carrier,
            anchor,
            table,
        };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<(), ActionError> {
        let g = &self.groupoid;
        if self.anchor.len() != self.carrier.len() {
            return Err(ActionError::InvalidTables(
                "one anchor object required per element".into(),
            ));
        }
        if self.anchor.iter().any(|o| o.0 >= g.n_objects()) {
            return Err(ActionError::InvalidTables(
                "anchor references an undeclared object".into(),
            ));
        }
        // domain of the table is exactly the composable pairs
        for e in 0..self.carrier.len() {
            for a in g.arrows() {
                let defined = self.table.contains_key(&(e, a));
                if self.is_composable(e, a) {
                    if !defined {
                        return Err(ActionError::InvalidTables(format!(
                            "action undefined on ({}, {})",
                            self.carrier[e],
                            g.arrow_name(a)
                        )));
                    }
                } else if defined {
                    return Err(ActionError::InvalidTables(format!(
                        "action defined on the non-composable pair ({}, {})",
                        self.carrier[e],
                        g.arrow_name(a)
                    )));
                }
            }
        }
        for (&(e, a), &img) in &self.table {
            if img >= self.carrier.len() {
                return Err(ActionError::InvalidTables(
                    "action table references an undeclared element".into(),
                ));
            }
            let expected = match self.side {
                Side::Right => g.src(a),
                Side::Left => g.tgt(a),
            };
            if self.anchor[img] != expected {
                return Err(ActionError::StructureMapViolation {
                    element: self.carrier[e].clone(),
                    arrow: g.arrow_name(a).to_string(),
                });
            }
        }
        for e in 0..self.carrier.len() {
            let id = g.identity(self.anchor[e]);
            if self.table[&(e, id)] != e {
                return Err(ActionError::UnitViolation {
                    element: self.carrier[e].clone(),
                });
            }
        }
        // (e.g).h = e.(gh) on the right; h.(h'.e) = (hh').e on the left
        for e in 0..self.carrier.len() {
            for a in g.arrows() {
                if !self.is_composable(e, a) {
                    continue;
                }
                let ea = self.table[&(e, a)];
                for b in g.arrows() {
                    if !self.is_composable(ea, b) {
                        continue;
                    }
                    let lhs = self.table[&(ea, b)];
                    let combined = match self.side {
                        Side::Right => g.compose2(a, b),
                        Side::Left => g.compose2(b, a),
                    };
                    let rhs = self.table[&(e, combined)];
                    if lhs != rhs {
                        return Err(ActionError::AssociativityViolation {
                            element: self.carrier[e].clone(),
                            g: g.arrow_name(a).to_string(),
                            h: g.arrow_name(b).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn is_composable(&self, e: ElemId, a: ArrowId) -> bool {
        match self.side {
            Side::Right => self.anchor[e] == self.groupoid.tgt(a),
            Side::Left => self.anchor[e] == self.groupoid.src(a),
        }
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn element_name(&self, e: ElemId) -> &str {
        &self.carrier[e]
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn anchor(&self, e: ElemId) -> ObjectId {
        self.anchor[e]
    }

    /// Applies the action; `None` when the pair is not composable.
    pub fn act(&self, e: ElemId, a: ArrowId) -> Option<ElemId> {
        self.table.get(&(e, a)).copied()
    }

    /// The same carrier with the side flipped: the new action is by the
    /// inverse arrow. An involution preserving orbits.
    pub fn opposite(&self) -> ActionSet {
        let g = &self.groupoid;
        let table = self
            .table
            .iter()
            .map(|(&(e, a), &img)| ((e, g.inverse(a)), img))
            .collect();
        ActionSet {
            groupoid: Arc::clone(g),
            side: match self.side {
                Side::Left => Side::Right,
                Side::Right => Side::Left,
            },
            carrier: self.carrier.clone(),
            anchor: self.anchor.clone(),
            table,
        }
    }

    pub fn orbits(&self) -> OrbitPartition {
        let mut uf = UnionFind::new(self.carrier.len());
        for (&(e, _), &img) in &self.table {
            uf.union(e, img);
        }
        partition_from(&mut uf)
    }

    /// The regular right action of a groupoid on its own arrows, anchored by
    /// the source map.
    pub fn regular_right(groupoid: &Arc<FiniteGroupoid>) -> ActionSet {
        let carrier: Vec<String> = groupoid
            .arrows()
            .map(|a| groupoid.arrow_name(a).to_string())
            .collect();
        let anchor: Vec<ObjectId> = groupoid.arrows().map(|a| groupoid.src(a)).collect();
        let mut table = HashMap::new();
        for f in groupoid.arrows() {
            for g in groupoid.arrows() {
                if let Some(fg) = groupoid.compose(f, g) {
                    table.insert((f.0, g), fg.0);
                }
            }
        }
        ActionSet::new(Arc::clone(groupoid), Side::Right, carrier, anchor, table)
            .expect("the regular action is valid")
    }

    /// The right action of a groupoid on its own objects: `x . g = src(g)`
    /// whenever `x = tgt(g)`.
    pub fn objects_right(groupoid: &Arc<FiniteGroupoid>) -> ActionSet {
        let carrier: Vec<String> = groupoid
            .objects()
            .map(|x| groupoid.object_name(x).to_string())
            .collect();
        let anchor: Vec<ObjectId> = groupoid.objects().collect();
        let mut table = HashMap::new();
        for x in groupoid.objects() {
            for g in groupoid.arrows() {
                if groupoid.tgt(g) == x {
                    table.insert((x.0, g), groupoid.src(g).0);
                }
            }
        }
        ActionSet::new(Arc::clone(groupoid), Side::Right, carrier, anchor, table)
            .expect("the object action is valid")
    }
}

/// The translation groupoid of a one-sided action, plus the canonical
/// morphism to the acting groupoid. For a right action the arrows are the
/// pairs `(e, g)` with `anchor(e) = tgt(g)`, source `e.g` and target `e`;
/// for a left action, pairs `(h, e)` with `anchor(e) = src(h)`, source `e`
/// and target `h.e`.
pub fn translation_groupoid(
    x: &ActionSet,
) -> Result<(Arc<FiniteGroupoid>, GroupoidMorphism), ActionError> {
    let g = x.groupoid();
    let pairs: Vec<(ElemId, ArrowId)> = (0..x.len())
        .flat_map(|e| g.arrows().map(move |a| (e, a)))
        .filter(|&(e, a)| x.act(e, a).is_some())
        .collect();
    let index_of = |e: ElemId, a: ArrowId| pairs.iter().position(|&p| p == (e, a)).unwrap();
    let arrows: Vec<(String, ObjectId, ObjectId)> = pairs
        .iter()
        .map(|&(e, a)| {
            let (s, t) = match x.side() {
                Side::Right => (x.act(e, a).unwrap(), e),
                Side::Left => (e, x.act(e, a).unwrap()),
            };
            (
                format!("({},{})", x.element_name(e), g.arrow_name(a)),
                ObjectId(s),
                ObjectId(t),
            )
        })
        .collect();
    let identities: Vec<ArrowId> = (0..x.len())
        .map(|e| ArrowId(index_of(e, g.identity(x.anchor(e)))))
        .collect();
    let mut composition = Vec::new();
    match x.side() {
        Side::Right => {
            // (e,a)(e2,a2) = (e, a a2) when e.a = e2
            for &(e, a) in &pairs {
                for &(e2, a2) in &pairs {
                    if x.act(e, a).unwrap() == e2 {
                        let aa2 = g.compose2(a, a2);
                        composition.push((
                            ArrowId(index_of(e, a)),
                            ArrowId(index_of(e2, a2)),
                            ArrowId(index_of(e, aa2)),
                        ));
                    }
                }
            }
        }
        Side::Left => {
            // (a,e) has source e, target a.e; (a,e)(a2,e2) = (a a2, e2) when e = a2.e2
            for &(e, a) in &pairs {
                for &(e2, a2) in &pairs {
                    if x.act(e2, a2).unwrap() == e {
                        let aa2 = g.compose2(a, a2);
                        composition.push((
                            ArrowId(index_of(e, a)),
                            ArrowId(index_of(e2, a2)),
                            ArrowId(index_of(e2, aa2)),
                        ));
                    }
                }
            }
        }
    }
    let object_names: Vec<String> = x.carrier().to_vec();
    let trans = Arc::new(FiniteGroupoid::from_tables(
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
        Arc::clone(&trans),
        Arc::clone(g),
        (0..x.len()).map(|e| x.anchor(e)).collect(),
        pairs.iter().map(|&(_, a)| a).collect(),
    )?;
    Ok((trans, projection))
}

/// A finite set with commuting left and right actions of two groupoids.
#[derive(Clone, Debug)]
pub struct Biset {
    left_groupoid: Arc<FiniteGroupoid>,
    right_groupoid: Arc<FiniteGroupoid>,
    carrier: Vec<String>,
    left_anchor: Vec<ObjectId>,
    right_anchor: Vec<ObjectId>,
    left_table: HashMap<(ElemId, ArrowId), ElemId>,
    right_table: HashMap<(ElemId, ArrowId), ElemId>,
}

impl Biset {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        left_groupoid: Arc<FiniteGroupoid>,
        right_groupoid: Arc<FiniteGroupoid>,
        carrier: Vec<String>,
        left_anchor: Vec<ObjectId>,
        right_anchor: Vec<ObjectId>,
        left_table: HashMap<(ElemId, ArrowId), ElemId>,
        right_table: HashMap<(ElemId, ArrowId), ElemId>,
    ) -> Result<Biset, ActionError> {
        let b = Biset {
            left_groupoid,
            right_groupoid,
            carrier,
            left_anchor,
            right_anchor,
            left_table,
            right_table,
        };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<(), ActionError> {
        // each single-sided restriction is a valid action set
        let left = self.left_action_set()?;
        let right = self.right_action_set()?;
        // anchors are invariant under the other side's action
        for (&(e, a), &img) in &self.right_table {
            if self.left_anchor[img] != self.left_anchor[e] {
                return Err(ActionError::StructureMapViolation {
                    element: self.carrier[e].clone(),
                    arrow: self.right_groupoid.arrow_name(a).to_string(),
                });
            }
        }
        for (&(e, a), &img) in &self.left_table {
            if self.right_anchor[img] != self.right_anchor[e] {
                return Err(ActionError::StructureMapViolation {
                    element: self.carrier[e].clone(),
                    arrow: self.left_groupoid.arrow_name(a).to_string(),
                });
            }
        }
        // h(eg) = (he)g
        for e in 0..self.carrier.len() {
            for h in self.left_groupoid.arrows() {
                let Some(he) = left.act(e, h) else { continue };
                for g in self.right_groupoid.arrows() {
                    let Some(eg) = right.act(e, g) else { continue };
                    let lhs = left.act(eg, h).expect("left anchor is right-invariant");
                    let rhs = right.act(he, g).expect("right anchor is left-invariant");
                    if lhs != rhs {
                        return Err(ActionError::CompatibilityViolation {
                            element: self.carrier[e].clone(),
                            left: self.left_groupoid.arrow_name(h).to_string(),
                            right: self.right_groupoid.arrow_name(g).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn left_groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.left_groupoid
    }

    pub fn right_groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.right_groupoid
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn element_name(&self, e: ElemId) -> &str {
        &self.carrier[e]
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn left_anchor(&self, e: ElemId) -> ObjectId {
        self.left_anchor[e]
    }

    pub fn right_anchor(&self, e: ElemId) -> ObjectId {
        self.right_anchor[e]
    }

    pub fn act_left(&self, h: ArrowId, e: ElemId) -> Option<ElemId> {
        self.left_table.get(&(e, h)).copied()
    }

    pub fn act_right(&self, e: ElemId, g: ArrowId) -> Option<ElemId> {
        self.right_table.get(&(e, g)).copied()
    }

    /// The left action alone, as a validated action set.
    pub fn left_action_set(&self) -> Result<ActionSet, ActionError> {
        ActionSet::new(
            Arc::clone(&self.left_groupoid),
            Side::Left,
            self.carrier.clone(),
            self.left_anchor.clone(),
            self.left_table.clone(),
        )
    }

    /// The right action alone, as a validated action set.
    pub fn right_action_set(&self) -> Result<ActionSet, ActionError> {
        ActionSet::new(
            Arc::clone(&self.right_groupoid),
            Side::Right,
            self.carrier.clone(),
            self.right_anchor.clone(),
            self.right_table.clone(),
        )
    }

    /// Orbits of the two-sided relation `h.e = e'.g`.
    pub fn orbits(&self) -> OrbitPartition {
        let mut uf = UnionFind::new(self.carrier.len());
        for (&(e, _), &img) in &self.left_table {
            uf.union(e, img);
        }
        for (&(e, _), &img) in &self.right_table {
            uf.union(e, img);
        }
        partition_from(&mut uf)
    }

    /// The sub-carrier over one object of the chosen side's anchor, with the
    /// surviving action of the *other* side, materialized as a standalone
    /// action set.
    pub fn fibre(&self, x: ObjectId, side: Side) -> Result<ActionSet, ActionError> {
        let (anchor_vec, kept_groupoid, kept_side, kept_table, kept_anchor) = match side {
            Side::Left => (
                &self.left_anchor,
                &self.right_groupoid,
                Side::Right,
                &self.right_table,
                &self.right_anchor,
            ),
            Side::Right => (
                &self.right_anchor,
                &self.left_groupoid,
                Side::Left,
                &self.left_table,
                &self.left_anchor,
            ),
        };
        let bound = match side {
            Side::Left => self.left_groupoid.n_objects(),
            Side::Right => self.right_groupoid.n_objects(),
        };
        if x.0 >= bound {
            return Err(ActionError::UnknownObject(format!("#{}", x.0)));
        }
        let members: Vec<ElemId> = (0..self.carrier.len())
            .filter(|&e| anchor_vec[e] == x)
            .collect();
        let position = |e: ElemId| members.iter().position(|&m| m == e).unwrap();
        let carrier: Vec<String> = members.iter().map(|&e| self.carrier[e].clone()).collect();
        let anchor: Vec<ObjectId> = members.iter().map(|&e| kept_anchor[e]).collect();
        let mut table = HashMap::new();
        for &e in &members {
            for a in kept_groupoid.arrows() {
                if let Some(&img) = kept_table.get(&(e, a)) {
                    // the other side's action preserves this anchor fibre
                    table.insert((position(e), a), position(img));
                }
            }
        }
        ActionSet::new(
            Arc::clone(kept_groupoid),
            kept_side,
            carrier,
            anchor,
            table,
        )
    }
}

/// The two-sided translation groupoid of a biset: objects are the carrier,
/// arrows the triples `(h, e, g)` with `src(h) = left_anchor(e)` and
/// `src(g) = right_anchor(e)`, source `e` and target `h.e.g^{-1}`.
pub fn two_sided_translation(b: &Biset) -> Result<Arc<FiniteGroupoid>, ActionError> {
    let hg = &b.left_groupoid;
    let gg = &b.right_groupoid;
    let mut triples = Vec::new();
    for e in 0..b.len() {
        for h in hg.arrows() {
            if hg.src(h) != b.left_anchor(e) {
                continue;
            }
            for g in gg.arrows() {
                if gg.src(g) == b.right_anchor(e) {
                    triples.push((h, e, g));
                }
            }
        }
    }
    let index_of = |t: &(ArrowId, ElemId, ArrowId)| triples.iter().position(|u| u == t).unwrap();
    let target_of = |&(h, e, g): &(ArrowId, ElemId, ArrowId)| -> ElemId {
        let he = b.act_left(h, e).unwrap();
        b.act_right(he, gg.inverse(g)).unwrap()
    };
    let arrows: Vec<(String, ObjectId, ObjectId)> = triples
        .iter()
        .map(|t| {
            (
                format!(
                    "({},{},{})",
                    hg.arrow_name(t.0),
                    b.element_name(t.1),
                    gg.arrow_name(t.2)
                ),
                ObjectId(t.1),
                ObjectId(target_of(t)),
            )
        })
        .collect();
    let identities: Vec<ArrowId> = (0..b.len())
        .map(|e| {
            let t = (
                hg.identity(b.left_anchor(e)),
                e,
                gg.identity(b.right_anchor(e)),
            );
            ArrowId(index_of(&t))
        })
        .collect();
    let mut composition = Vec::new();
    for (fi, f) in triples.iter().enumerate() {
        for (gi, g) in triples.iter().enumerate() {
            // f g defined when src(f) = tgt(g), i.e. f.1 = target_of(g)
            if f.1 == target_of(g) {
                let h2 = hg.compose2(f.0, g.0);
                let g2 = gg.compose2(f.2, g.2);
                let k = index_of(&(h2, g.1, g2));
                composition.push((ArrowId(fi), ArrowId(gi), ArrowId(k)));
            }
        }
    }
    Ok(Arc::new(FiniteGroupoid::from_tables(
        GroupoidTables {
            object_names: b.carrier.clone(),
            arrows,
            identities,
            composition,
            inverses: None,
        },
        &CheckConfig::default(),
    )?))
}

/// The tensor product over the shared middle groupoid of a `(G, H)`-biset
/// and an `(H, K)`-biset. The carrier is the orbit set of the fibred product
/// under `(y, x) . h = (y.h, h^{-1}.x)`, labeled by least-index
/// representatives; the outer actions act through representatives.
pub fn tensor_over(y: &Biset, x: &Biset) -> Result<Biset, ActionError> {
    if !same_groupoid(&y.right_groupoid, &x.left_groupoid) {
        return Err(ActionError::GroupoidMismatch);
    }
    let h = &y.right_groupoid;
    let pairs: Vec<(ElemId, ElemId)> = (0..y.len())
        .flat_map(|a| (0..x.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| y.right_anchor(a) == x.left_anchor(b))
        .collect();
    let pair_index = |p: (ElemId, ElemId)| pairs.iter().position(|&q| q == p).unwrap();
    let mut uf = UnionFind::new(pairs.len());
    for (pi, &(a, b)) in pairs.iter().enumerate() {
        for arr in h.arrows() {
            if h.tgt(arr) == y.right_anchor(a) {
                let ya = y.act_right(a, arr).unwrap();
                let xb = x.act_left(h.inverse(arr), b).unwrap();
                uf.union(pi, pair_index((ya, xb)));
            }
        }
    }
    let orbits = partition_from(&mut uf);
    let class_of = |p: (ElemId, ElemId)| orbits.block_of(pair_index(p));
    let carrier: Vec<String> = orbits
        .representatives
        .iter()
        .map(|&pi| {
            let (a, b) = pairs[pi];
            format!("{}(x){}", y.element_name(a), x.element_name(b))
        })
        .collect();
    let left_anchor: Vec<ObjectId> = orbits
        .representatives
        .iter()
        .map(|&pi| y.left_anchor(pairs[pi].0))
        .collect();
    let right_anchor: Vec<ObjectId> = orbits
        .representatives
        .iter()
        .map(|&pi| x.right_anchor(pairs[pi].1))
        .collect();
    let mut left_table = HashMap::new();
    let mut right_table = HashMap::new();
    for (ci, &pi) in orbits.representatives.iter().enumerate() {
        let (a, b) = pairs[pi];
        for g in y.left_groupoid.arrows() {
            if y.left_groupoid.src(g) == left_anchor[ci] {
                let ga = y.act_left(g, a).unwrap();
                left_table.insert((ci, g), class_of((ga, b)));
            }
        }
        for k in x.right_groupoid.arrows() {
            if x.right_groupoid.tgt(k) == right_anchor[ci] {
                let bk = x.act_right(b, k).unwrap();
                right_table.insert((ci, k), class_of((a, bk)));
            }
        }
    }
    Biset::new(
        Arc::clone(&y.left_groupoid),
        Arc::clone(&x.right_groupoid),
        carrier,
        left_anchor,
        right_anchor,
        left_table,
        right_table,
    )
}

/// The right pull-back biset of a morphism `phi: H -> G`: carrier
/// `{(a, u) : src(a) = phi(u)}`, a `(G, H)`-biset with `g.(a,u) = (ga, u)`
/// and `(a,u).h = (a phi(h), src(h))`.
pub fn right_pullback_biset(phi: &GroupoidMorphism) -> Result<Biset, ActionError> {
    let hg = phi.dom();
    let gg = phi.cod();
    let elems: Vec<(ArrowId, ObjectId)> = gg
        .arrows()
        .flat_map(|a| hg.objects().map(move |u| (a, u)))
        .filter(|&(a, u)| gg.src(a) == phi.on_object(u))
        .collect();
    let index_of = |p: (ArrowId, ObjectId)| elems.iter().position(|&q| q == p).unwrap();
    let carrier: Vec<String> = elems
        .iter()
        .map(|&(a, u)| format!("({},{})", gg.arrow_name(a), hg.object_name(u)))
        .collect();
    let left_anchor: Vec<ObjectId> = elems.iter().map(|&(a, _)| gg.tgt(a)).collect();
    let right_anchor: Vec<ObjectId> = elems.iter().map(|&(_, u)| u).collect();
    let mut left_table = HashMap::new();
    let mut right_table = HashMap::new();
    for (ei, &(a, u)) in elems.iter().enumerate() {
        for g in gg.arrows() {
            if gg.src(g) == gg.tgt(a) {
                left_table.insert((ei, g), index_of((gg.compose2(g, a), u)));
            }
        }
        for harr in hg.arrows() {
            if hg.tgt(harr) == u {
                let img = (gg.compose2(a, phi.on_arrow(harr)), hg.src(harr));
                right_table.insert((ei, harr), index_of(img));
            }
        }
    }
    Biset::new(
        Arc::clone(gg),
        Arc::clone(hg),
        carrier,
        left_anchor,
        right_anchor,
        left_table,
        right_table,
    )
}

/// The left pull-back biset of `phi: H -> G`: carrier
/// `{(u, a) : phi(u) = tgt(a)}`, an `(H, G)`-biset with
/// `h.(u,a) = (tgt(h), phi(h) a)` and `(u,a).g = (u, ag)`.
pub fn left_pullback_biset(phi: &GroupoidMorphism) -> Result<Biset, ActionError> {
    let hg = phi.dom();
    let gg = phi.cod();
    let elems: Vec<(ObjectId, ArrowId)> = hg
        .objects()
        .flat_map(|u| gg.arrows().map(move |a| (u, a)))
        .filter(|&(u, a)| phi.on_object(u) == gg.tgt(a))
        .collect();
    let index_of = |p: (ObjectId, ArrowId)| elems.iter().position(|&q| q == p).unwrap();
    let carrier: Vec<String> = elems
        .iter()
        .map(|&(u, a)| format!("({},{})", hg.object_name(u), gg.arrow_name(a)))
        .collect();
    let left_anchor: Vec<ObjectId> = elems.iter().map(|&(u, _)| u).collect();
    let right_anchor: Vec<ObjectId> = elems.iter().map(|&(_, a)| gg.src(a)).collect();
    let mut left_table = HashMap::new();
    let mut right_table = HashMap::new();
    for (ei, &(u, a)) in elems.iter().enumerate() {
        for harr in hg.arrows() {
            if hg.src(harr) == u {
                let img = (hg.tgt(harr), gg.compose2(phi.on_arrow(harr), a));
                left_table.insert((ei, harr), index_of(img));
            }
        }
        for g in gg.arrows() {
            if gg.tgt(g) == gg.src(a) {
                right_table.insert((ei, g), index_of((u, gg.compose2(a, g))));
            }
        }
    }
    Biset::new(
        Arc::clone(hg),
        Arc::clone(gg),
        carrier,
        left_anchor,
        right_anchor,
        left_table,
        right_table,
    )
}

/// Both pull-back bisets of a morphism: `(right, left)`.
pub fn pullback_bisets(phi: &GroupoidMorphism) -> Result<(Biset, Biset), ActionError> {
    Ok((right_pullback_biset(phi)?, left_pullback_biset(phi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{action_groupoid, cyclic_groupoid, pair_groupoid, trivial_groupoid};
    use crate::morphism::identity_morphism;

    fn z3() -> Arc<FiniteGroupoid> {
        Arc::new(cyclic_groupoid(3).unwrap())
    }

    #[test]
    fn regular_action_orbits_are_classified_by_the_target() {
        let g = Arc::new(pair_groupoid(&["a".into(), "b".into()]).unwrap());
        let reg = ActionSet::regular_right(&g);
        assert_eq!(reg.len(), 4);
        // the orbit of an arrow under right translation is its left star
        assert_eq!(reg.orbits().len(), g.n_objects());
    }

    #[test]
    fn object_action_orbits_are_connected_components() {
        let g = Arc::new(trivial_groupoid(&["a".into(), "b".into()]).unwrap());
        let obj = ActionSet::objects_right(&g);
        assert_eq!(obj.orbits().len(), g.connected_components().len());
    }

    #[test]
    fn anchor_out_of_range_is_rejected() {
        let g = z3();
        let mut table = HashMap::new();
        for a in g.arrows() {
            table.insert((0usize, a), 0usize);
        }
        let bad = ActionSet::new(
            Arc::clone(&g),
            Side::Right,
            vec!["x".into()],
            vec![ObjectId(5)],
            table,
        );
        assert!(bad.is_err());
    }

    #[test]
    fn unit_violation_is_detected() {
        let g = Arc::new(trivial_groupoid(&["a".into()]).unwrap());
        let mut table = HashMap::new();
        table.insert((0usize, ArrowId(0)), 1usize);
        table.insert((1usize, ArrowId(0)), 0usize);
        let err = ActionSet::new(
            Arc::clone(&g),
            Side::Right,
            vec!["x".into(), "y".into()],
            vec![ObjectId(0), ObjectId(0)],
            table,
        )
        .unwrap_err();
        assert!(matches!(err, ActionError::UnitViolation { .. }));
    }

    #[test]
    fn opposite_is_an_involution_preserving_orbits() {
        let g = z3();
        let reg = ActionSet::regular_right(&g);
        let opp = reg.opposite();
        assert!(matches!(opp.side(), Side::Left));
        let back = opp.opposite();
        assert_eq!(back.orbits(), reg.orbits());
        for e in 0..reg.len() {
            for a in g.arrows() {
                assert_eq!(reg.act(e, a), back.act(e, a));
            }
        }
        assert_eq!(opp.orbits(), reg.orbits());
        // the opposite of a valid right action is a valid left action
        opp.validate().unwrap();
    }

    #[test]
    fn translation_groupoid_of_object_action_recovers_the_groupoid() {
        let g = Arc::new(pair_groupoid(&["a".into(), "b".into(), "c".into()]).unwrap());
        let obj = ActionSet::objects_right(&g);
        let (trans, proj) = translation_groupoid(&obj).unwrap();
        assert_eq!(trans.n_objects(), g.n_objects());
        assert_eq!(trans.n_arrows(), g.n_arrows());
        assert!(proj.is_faithful());
    }

    #[test]
    fn translation_groupoid_of_group_action_is_the_action_groupoid() {
        let z2 = Arc::new(cyclic_groupoid(2).unwrap());
        let act =
            action_groupoid(&z2, &["1".into(), "2".into()], &[vec![0, 1], vec![1, 0]]).unwrap();
        // the same data as an action set over the one-object group
        let mut table = HashMap::new();
        for x in 0..2usize {
            for g in z2.arrows() {
                let img = if g.0 == 0 { x } else { 1 - x };
                table.insert((x, g), img);
            }
        }
        let xset = ActionSet::new(
            Arc::clone(&z2),
            Side::Right,
            vec!["1".into(), "2".into()],
            vec![ObjectId(0), ObjectId(0)],
            table,
        )
        .unwrap();
        let (trans, _) = translation_groupoid(&xset).unwrap();
        assert_eq!(trans.n_objects(), act.groupoid.n_objects());
        assert_eq!(trans.n_arrows(), act.groupoid.n_arrows());
        assert_eq!(xset.orbits().len(), trans.connected_components().len());
    }

    #[test]
    fn singleton_trivial_translation_groupoid_is_trivial() {
        let one = Arc::new(trivial_groupoid(&["*".into()]).unwrap());
        let mut table = HashMap::new();
        table.insert((0usize, ArrowId(0)), 0usize);
        let xset = ActionSet::new(
            Arc::clone(&one),
            Side::Right,
            vec!["pt".into()],
            vec![ObjectId(0)],
            table,
        )
        .unwrap();
        let (trans, _) = translation_groupoid(&xset).unwrap();
        assert_eq!(trans.n_objects(), 1);
        assert_eq!(trans.n_arrows(), 1);
    }

    #[test]
    fn pullback_bisets_of_identity_have_arrow_carriers() {
        let g = Arc::new(pair_groupoid(&["a".into(), "b".into()]).unwrap());
        let id = identity_morphism(&g);
        let (right, left) = pullback_bisets(&id).unwrap();
        assert_eq!(right.len(), g.n_arrows());
        assert_eq!(left.len(), g.n_arrows());
    }

    #[test]
    fn pullback_carriers_of_subgroup_inclusion() {
        let one = Arc::new(trivial_groupoid(&["*".into()]).unwrap());
        let z3 = z3();
        let incl = build_morphism(
            Arc::clone(&one),
            Arc::clone(&z3),
            vec![ObjectId(0)],
            vec![ArrowId(0)],
        )
        .unwrap();
        let (right, left) = pullback_bisets(&incl).unwrap();
        assert_eq!(right.len(), 3);
        assert_eq!(left.len(), 3);
    }

    #[test]
    fn biset_fibres_and_matching_orbit_counts() {
        // inclusion of the trivial groupoid on {1} into the pair groupoid on {1,2}
        let one = Arc::new(trivial_groupoid(&["1".into()]).unwrap());
        let pg = Arc::new(pair_groupoid(&["1".into(), "2".into()]).unwrap());
        let incl = build_morphism(
            Arc::clone(&one),
            Arc::clone(&pg),
            vec![ObjectId(0)],
            vec![pg.arrow_by_name("(1,1)").unwrap()],
        )
        .unwrap();
        let (right, left) = pullback_bisets(&incl).unwrap();
        // fibre of the right pull-back over object 2 of the left anchor
        let x2 = pg.object_by_name("2").unwrap();
        let fib = right.fibre(x2, Side::Left).unwrap();
        assert_eq!(fib.len(), 1);
        // orbit counts of the two fibres agree at every object
        for x in pg.objects() {
            let a = left.fibre(x, Side::Right).unwrap().orbits().len();
            let b = right.fibre(x, Side::Left).unwrap().orbits().len();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn empty_fibre_over_unreachable_object() {
        let one = Arc::new(trivial_groupoid(&["1".into()]).unwrap());
        let pg3 = Arc::new(pair_groupoid(&["1".into(), "2".into(), "3".into()]).unwrap());
        let incl3 = build_morphism(
            Arc::clone(&one),
            Arc::clone(&pg3),
            vec![ObjectId(0)],
            vec![pg3.arrow_by_name("(1,1)").unwrap()],
        )
        .unwrap();
        let (right3, _) = pullback_bisets(&incl3).unwrap();
        // the right anchor of the right pull-back lands in the domain
        // objects; its fibres over domain objects cover the whole carrier,
        // while the left anchor has all three codomain objects
        assert_eq!(right3.fibre(ObjectId(0), Side::Right).unwrap().len(), 3);
        let empty = Biset::new(
            Arc::clone(&pg3),
            Arc::clone(&one),
            vec![],
            vec![],
            vec![],
            HashMap::new(),
            HashMap::new(),
        )
        .unwrap();
        assert_eq!(empty.fibre(ObjectId(1), Side::Left).unwrap().len(), 0);
    }

    #[test]
    fn biset_orbits_match_two_sided_translation_components() {
        let g = Arc::new(pair_groupoid(&["a".into(), "b".into()]).unwrap());
        let id = identity_morphism(&g);
        let (right, _) = pullback_bisets(&id).unwrap();
        let trans = two_sided_translation(&right).unwrap();
        assert_eq!(right.orbits().len(), trans.connected_components().len());
    }

    #[test]
    fn tensor_with_the_regular_biset_has_the_expected_carrier() {
        // tensoring the two pull-backs of the identity over the middle
        // groupoid gives a biset in bijection with the arrow set
        let g = z3();
        let id = identity_morphism(&g);
        let (right, left) = pullback_bisets(&id).unwrap();
        let t = tensor_over(&right, &left).unwrap();
        assert_eq!(t.len(), g.n_arrows());
    }

    #[test]
    fn tensor_with_empty_biset_is_empty() {
        let g = z3();
        let empty = Biset::new(
            Arc::clone(&g),
            Arc::clone(&g),
            vec![],
            vec![],
            vec![],
            HashMap::new(),
            HashMap::new(),
        )
        .unwrap();
        let id = identity_morphism(&g);
        let (right, _) = pullback_bisets(&id).unwrap();
        let t = tensor_over(&right, &empty).unwrap();
        assert_eq!(t.len(), 0);
    }

    #[test]
    fn tensor_mismatched_middle_groupoid_is_rejected() {
        let g = z3();
        let h = Arc::new(cyclic_groupoid(2).unwrap());
        let (right_g, _) = pullback_bisets(&identity_morphism(&g)).unwrap();
        let (_, left_h) = pullback_bisets(&identity_morphism(&h)).unwrap();
        assert!(matches!(
            tensor_over(&right_g, &left_h),
            Err(ActionError::GroupoidMismatch)
        ));
    }
}
