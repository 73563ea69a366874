//! Finite groupoids as fully validated multiplication tables.
//!
//! A groupoid is a pair of finite sets (objects, arrows) with source, target,
//! identity and inverse maps and a partial composition `compose(f, g) = fg`
//! defined exactly when `src(f) = tgt(g)` (g is applied first). Validation at
//! construction is exhaustive: totality of composition on composable pairs,
//! unit laws, associativity over all composable triples, and two-sided
//! inverses. Everything downstream may assume the axioms.

mod families;

pub use families::{
    action_groupoid, cyclic_groupoid, equivalence_groupoid, frame_groupoid, group_groupoid,
    induced_groupoid, isotropy_groupoid, pair_groupoid, symmetric_groupoid, trivial_groupoid,
    ActionGroupoid, InducedGroupoid,
};

use std::collections::HashMap;

use crate::unionfind::UnionFind;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ObjectId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

/// Which star of an object: arrows into it (left) or out of it (right).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupoidError {
    #[error("invalid tables: {0}")]
    InvalidTables(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("missing composite for composable pair ({f}, {g})")]
    MissingComposite { f: String, g: String },
    #[error("composite recorded for non-composable pair ({f}, {g})")]
    SpuriousComposite { f: String, g: String },
    #[error("composite of ({f}, {g}) has wrong endpoints")]
    CompositeEndpoints { f: String, g: String },
    #[error("associativity fails on the triple ({f}, {g}, {h})")]
    AssociativityViolation { f: String, g: String, h: String },
    #[error("unit law fails: {witness}")]
    UnitViolation { witness: String },
    #[error("arrow {arrow} has no two-sided inverse")]
    NoInverse { arrow: String },
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
}

/// Raw input tables for [`FiniteGroupoid::from_tables`].
#[derive(Clone, Debug)]
pub struct GroupoidTables {
    pub object_names: Vec<String>,
    /// (name, source, target)
    pub arrows: Vec<(String, ObjectId, ObjectId)>,
    /// identity arrow per object, in object order
    pub identities: Vec<ArrowId>,
    /// (f, g, fg) with src(f) = tgt(g)
    pub composition: Vec<(ArrowId, ArrowId, ArrowId)>,
    /// optional; derived from the composition table when absent
    pub inverses: Option<Vec<ArrowId>>,
}

/// Caps for the exhaustive validator. With `max_triples` set, groupoids
/// whose composable-triple count exceeds the cap get a deterministic random
/// sample of that size instead of the full associativity sweep.
#[derive(Clone, Debug, Default)]
pub struct CheckConfig {
    pub max_triples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    object_names: Vec<String>,
    arrow_names: Vec<String>,
    src: Vec<ObjectId>,
    tgt: Vec<ObjectId>,
    identity: Vec<ArrowId>,
    inverse: Vec<ArrowId>,
    compose: HashMap<(ArrowId, ArrowId), ArrowId>,
    /// arrows grouped by source object
    out_star: Vec<Vec<ArrowId>>,
    /// arrows grouped by target object
    in_star: Vec<Vec<ArrowId>>,
}

/// The group of loops at one object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyGroup {
    pub base_object: ObjectId,
    pub loops: Vec<ArrowId>,
}

/// Connected components: blocks of mutually reachable objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<Vec<ObjectId>>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: ObjectId) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&x))
            .expect("object belongs to some block")
    }
}

impl FiniteGroupoid {
    pub fn from_tables(
        tables: GroupoidTables,
        cfg: &CheckConfig,
    ) -> Result<FiniteGroupoid, GroupoidError> {
        let n_obj = tables.object_names.len();
        let n_arr = tables.arrows.len();

        {
            let mut seen = std::collections::HashSet::new();
            for name in &tables.object_names {
                if !seen.insert(name.clone()) {
                    return Err(GroupoidError::InvalidTables(format!(
                        "duplicate object name {name:?}"
                    )));
                }
            }
            let mut seen = std::collections::HashSet::new();
            for (name, s, t) in &tables.arrows {
                if !seen.insert(name.clone()) {
                    return Err(GroupoidError::InvalidTables(format!(
                        "duplicate arrow name {name:?}"
                    )));
                }
                if s.0 >= n_obj || t.0 >= n_obj {
                    return Err(GroupoidError::InvalidTables(format!(
                        "arrow {name:?} references an undeclared object"
                    )));
                }
            }
        }
        if tables.identities.len() != n_obj {
            return Err(GroupoidError::InvalidTables(
                "one identity arrow required per object".into(),
            ));
        }

        let arrow_names: Vec<String> = tables.arrows.iter().map(|a| a.0.clone()).collect();
        let src: Vec<ObjectId> = tables.arrows.iter().map(|a| a.1).collect();
        let tgt: Vec<ObjectId> = tables.arrows.iter().map(|a| a.2).collect();

        let mut compose = HashMap::new();
        for &(f, g, fg) in &tables.composition {
            if f.0 >= n_arr || g.0 >= n_arr || fg.0 >= n_arr {
                return Err(GroupoidError::InvalidTables(
                    "composition entry references an undeclared arrow".into(),
                ));
            }
            if let Some(prev) = compose.insert((f, g), fg) {
                if prev != fg {
                    return Err(GroupoidError::InvalidTables(format!(
                        "conflicting composites for ({}, {})",
                        arrow_names[f.0], arrow_names[g.0]
                    )));
                }
            }
        }

        // identities sit on their object
        for (x, &i) in tables.identities.iter().enumerate() {
            if i.0 >= n_arr {
                return Err(GroupoidError::InvalidTables(
                    "identity entry references an undeclared arrow".into(),
                ));
            }
            if src[i.0].0 != x || tgt[i.0].0 != x {
                return Err(GroupoidError::UnitViolation {
                    witness: format!(
                        "identity of {} is {} with other endpoints",
                        tables.object_names[x], arrow_names[i.0]
                    ),
                });
            }
        }

        // composition total on composable pairs, undefined elsewhere,
        // endpoints consistent
        for f in 0..n_arr {
            for g in 0..n_arr {
                let composable = src[f] == tgt[g];
                match compose.get(&(ArrowId(f), ArrowId(g))) {
                    None if composable => {
                        return Err(GroupoidError::MissingComposite {
                            f: arrow_names[f].clone(),
                            g: arrow_names[g].clone(),
                        })
                    }
                    Some(_) if !composable => {
                        return Err(GroupoidError::SpuriousComposite {
                            f: arrow_names[f].clone(),
                            g: arrow_names[g].clone(),
                        })
                    }
                    Some(&fg) if composable => {
                        if src[fg.0] != src[g] || tgt[fg.0] != tgt[f] {
                            return Err(GroupoidError::CompositeEndpoints {
                                f: arrow_names[f].clone(),
                                g: arrow_names[g].clone(),
                            });
                        }
                    }
                    _ => {}
                }
            }
        }

        // unit laws
        for f in 0..n_arr {
            let fid = ArrowId(f);
            let i_src = tables.identities[src[f].0];
            let i_tgt = tables.identities[tgt[f].0];
            if compose[&(fid, i_src)] != fid {
                return Err(GroupoidError::UnitViolation {
                    witness: format!("{} * id != {0}", arrow_names[f]),
                });
            }
            if compose[&(i_tgt, fid)] != fid {
                return Err(GroupoidError::UnitViolation {
                    witness: format!("id * {} != {0}", arrow_names[f]),
                });
            }
        }

        // associativity, exhaustive or sampled
        let mut out_star: Vec<Vec<ArrowId>> = vec![Vec::new(); n_obj];
        let mut in_star: Vec<Vec<ArrowId>> = vec![Vec::new(); n_obj];
        for f in 0..n_arr {
            out_star[src[f].0].push(ArrowId(f));
            in_star[tgt[f].0].push(ArrowId(f));
        }
        let total_triples: usize = (0..n_arr)
            .map(|g| out_star[tgt[g].0].len() * in_star[src[g].0].len())
            .sum();
        let check_triple = |f: ArrowId, g: ArrowId, h: ArrowId| -> Result<(), GroupoidError> {
            let fg = compose[&(f, g)];
            let gh = compose[&(g, h)];
            if compose[&(fg, h)] != compose[&(f, gh)] {
                return Err(GroupoidError::AssociativityViolation {
                    f: arrow_names[f.0].clone(),
                    g: arrow_names[g.0].clone(),
                    h: arrow_names[h.0].clone(),
                });
            }
            Ok(())
        };
        match cfg.max_triples {
            Some(cap) if total_triples > cap => {
                // deterministic splitmix-style sampling
                let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
                let mut next = || {
                    state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
                    let mut z = state;
                    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
                    z ^ (z >> 31)
                };
                for _ in 0..cap {
                    let g = ArrowId((next() % n_arr as u64) as usize);
                    let fs = &out_star[tgt[g.0].0];
                    let hs = &in_star[src[g.0].0];
                    if fs.is_empty() || hs.is_empty() {
                        continue;
                    }
                    let f = fs[(next() % fs.len() as u64) as usize];
                    let h = hs[(next() % hs.len() as u64) as usize];
                    check_triple(f, g, h)?;
                }
            }
            _ => {
                for g in 0..n_arr {
                    let g = ArrowId(g);
                    for &f in &out_star[tgt[g.0].0] {
                        for &h in &in_star[src[g.0].0] {
                            check_triple(f, g, h)?;
                        }
                    }
                }
            }
        }

        // inverses: verify if given, derive otherwise (unique when they exist)
        let inverse = match tables.inverses {
            Some(inv) => {
                if inv.len() != n_arr {
                    return Err(GroupoidError::InvalidTables(
                        "one inverse required per arrow".into(),
                    ));
                }
                for f in 0..n_arr {
                    let g = inv[f];
                    if g.0 >= n_arr {
                        return Err(GroupoidError::InvalidTables(
                            "inverse entry references an undeclared arrow".into(),
                        ));
                    }
                    let ok = src[g.0] == tgt[f]
                        && tgt[g.0] == src[f]
                        && compose[&(ArrowId(f), g)] == tables.identities[tgt[f].0]
                        && compose[&(g, ArrowId(f))] == tables.identities[src[f].0];
                    if !ok {
                        return Err(GroupoidError::NoInverse {
                            arrow: arrow_names[f].clone(),
                        });
                    }
                }
                inv
            }
            None => {
                let mut inv = Vec::with_capacity(n_arr);
                for f in 0..n_arr {
                    let fid = ArrowId(f);
                    let candidate = out_star[tgt[f].0].iter().copied().find(|&g| {
                        tgt[g.0] == src[f]
                            && compose[&(fid, g)] == tables.identities[tgt[f].0]
                            && compose[&(g, fid)] == tables.identities[src[f].0]
                    });
                    match candidate {
                        Some(g) => inv.push(g),
                        None => {
                            return Err(GroupoidError::NoInverse {
                                arrow: arrow_names[f].clone(),
                            })
                        }
                    }
                }
                inv
            }
        };

        Ok(FiniteGroupoid {
            object_names: tables.object_names,
            arrow_names,
            src,
            tgt,
            identity: tables.identities,
            inverse,
            compose,
            out_star,
            in_star,
        })
    }

    pub fn n_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrow_names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.n_objects()).map(ObjectId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.n_arrows()).map(ArrowId)
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.object_names[x.0]
    }

    pub fn arrow_name(&self, f: ArrowId) -> &str {
        &self.arrow_names[f.0]
    }

    pub fn object_by_name(&self, name: &str) -> Result<ObjectId, GroupoidError> {
        self.object_names
            .iter()
            .position(|n| n == name)
            .map(ObjectId)
            .ok_or_else(|| GroupoidError::UnknownObject(name.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<ArrowId, GroupoidError> {
        self.arrow_names
            .iter()
            .position(|n| n == name)
            .map(ArrowId)
            .ok_or_else(|| GroupoidError::UnknownArrow(name.to_string()))
    }

    pub fn src(&self, f: ArrowId) -> ObjectId {
        self.src[f.0]
    }

    pub fn tgt(&self, f: ArrowId) -> ObjectId {
        self.tgt[f.0]
    }

    pub fn identity(&self, x: ObjectId) -> ArrowId {
        self.identity[x.0]
    }

    pub fn inverse(&self, f: ArrowId) -> ArrowId {
        self.inverse[f.0]
    }

    pub fn is_identity(&self, f: ArrowId) -> bool {
        self.identity[self.src[f.0].0] == f && self.src[f.0] == self.tgt[f.0]
    }

    /// `fg`, defined exactly when `src(f) = tgt(g)`.
    pub fn compose(&self, f: ArrowId, g: ArrowId) -> Option<ArrowId> {
        self.compose.get(&(f, g)).copied()
    }

    /// Composite of a composable pair; panics when not composable.
    pub fn compose2(&self, f: ArrowId, g: ArrowId) -> ArrowId {
        self.compose(f, g).unwrap_or_else(|| {
            panic!(
                "arrows {} and {} are not composable",
                self.arrow_name(f),
                self.arrow_name(g)
            )
        })
    }

    /// All arrows from `x` to `y`, ascending.
    pub fn hom(&self, x: ObjectId, y: ObjectId) -> Vec<ArrowId> {
        self.out_star[x.0]
            .iter()
            .copied()
            .filter(|&f| self.tgt[f.0] == y)
            .collect()
    }

    pub fn loops_at(&self, x: ObjectId) -> Vec<ArrowId> {
        self.hom(x, x)
    }

    pub fn isotropy_group(&self, x: ObjectId) -> Result<IsotropyGroup, GroupoidError> {
        if x.0 >= self.n_objects() {
            return Err(GroupoidError::UnknownObject(format!("#{}", x.0)));
        }
        let loops = self.loops_at(x);
        // closure re-verified
        for &a in &loops {
            debug_assert!(loops.contains(&self.inverse(a)));
            for &b in &loops {
                let ab = self.compose2(a, b);
                if !loops.contains(&ab) {
                    return Err(GroupoidError::InvalidTables(format!(
                        "isotropy at {} not closed",
                        self.object_name(x)
                    )));
                }
            }
        }
        Ok(IsotropyGroup {
            base_object: x,
            loops,
        })
    }

    /// Arrows into `x` (left star) or out of `x` (right star).
    pub fn star(&self, x: ObjectId, side: Side) -> Result<Vec<ArrowId>, GroupoidError> {
        if x.0 >= self.n_objects() {
            return Err(GroupoidError::UnknownObject(format!("#{}", x.0)));
        }
        Ok(match side {
            Side::Left => self.in_star[x.0].clone(),
            Side::Right => self.out_star[x.0].clone(),
        })
    }

    pub fn connected_components(&self) -> ComponentPartition {
        let mut uf = UnionFind::new(self.n_objects());
        for f in 0..self.n_arrows() {
            uf.union(self.src[f].0, self.tgt[f].0);
        }
        let blocks = uf
            .blocks()
            .into_iter()
            .map(|b| b.into_iter().map(ObjectId).collect())
            .collect();
        ComponentPartition { blocks }
    }

    /// The conjugation map `f -> g f g^{-1}` from loops at `src(g)` to loops
    /// at `tgt(g)`, returned as pairs and verified to be a bijective group
    /// homomorphism.
    pub fn adjoint(&self, g: ArrowId) -> Result<Vec<(ArrowId, ArrowId)>, GroupoidError> {
        if g.0 >= self.n_arrows() {
            return Err(GroupoidError::UnknownArrow(format!("#{}", g.0)));
        }
        let ginv = self.inverse(g);
        let domain = self.loops_at(self.src(g));
        let codomain = self.loops_at(self.tgt(g));
        let table: Vec<(ArrowId, ArrowId)> = domain
            .iter()
            .map(|&f| (f, self.compose2(self.compose2(g, f), ginv)))
            .collect();
        let images: Vec<ArrowId> = table.iter().map(|&(_, i)| i).collect();
        let bijective = images.iter().all(|i| codomain.contains(i))
            && images.len() == codomain.len()
            && {
                let mut sorted = images.clone();
                sorted.sort();
                sorted.windows(2).all(|w| w[0] != w[1])
            };
        if !bijective {
            return Err(GroupoidError::InvalidTables(format!(
                "conjugation by {} is not bijective",
                self.arrow_name(g)
            )));
        }
        let image_of = |f: ArrowId| table.iter().find(|&&(d, _)| d == f).unwrap().1;
        for &f1 in &domain {
            for &f2 in &domain {
                let lhs = image_of(self.compose2(f1, f2));
                let rhs = self.compose2(image_of(f1), image_of(f2));
                if lhs != rhs {
                    return Err(GroupoidError::InvalidTables(format!(
                        "conjugation by {} is not multiplicative",
                        self.arrow_name(g)
                    )));
                }
            }
        }
        Ok(table)
    }

    /// True when no two distinct arrows share source and target; a witness
    /// parallel pair otherwise. Groupoids with this property are exactly the
    /// equivalence-relation groupoids.
    pub fn is_equivalence_relation_groupoid(&self) -> (bool, Option<(ArrowId, ArrowId)>) {
        for x in 0..self.n_objects() {
            let out = &self.out_star[x];
            for i in 0..out.len() {
                for j in (i + 1)..out.len() {
                    if self.tgt[out[i].0] == self.tgt[out[j].0] {
                        return (false, Some((out[i], out[j])));
                    }
                }
            }
        }
        (true, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_groupoid_on_one_object_validates() {
        let g = trivial_groupoid(&["a".into()]).unwrap();
        assert_eq!(g.n_objects(), 1);
        assert_eq!(g.n_arrows(), 1);
        assert!(g.is_identity(ArrowId(0)));
    }

    #[test]
    fn symmetric_group_as_one_object_groupoid() {
        let g = symmetric_groupoid(3).unwrap();
        assert_eq!(g.n_objects(), 1);
        assert_eq!(g.n_arrows(), 6);
        let iso = g.isotropy_group(ObjectId(0)).unwrap();
        assert_eq!(iso.loops.len(), 6);
    }

    #[test]
    fn broken_associativity_is_reported_with_witness() {
        // one object, three "loops": multiplication table of Z/3 with one
        // entry corrupted (kept unital), which must break associativity
        let names = ["e", "a", "b"];
        let mut composition = Vec::new();
        for i in 0..3usize {
            for j in 0..3usize {
                let mut k = (i + j) % 3;
                if i == 1 && j == 1 {
                    k = 1; // corrupt a*a: should be b
                }
                composition.push((ArrowId(i), ArrowId(j), ArrowId(k)));
            }
        }
        let tables = GroupoidTables {
            object_names: vec!["*".into()],
            arrows: names
                .iter()
                .map(|n| (n.to_string(), ObjectId(0), ObjectId(0)))
                .collect(),
            identities: vec![ArrowId(0)],
            composition,
            inverses: None,
        };
        let err = FiniteGroupoid::from_tables(tables, &CheckConfig::default()).unwrap_err();
        assert!(matches!(err, GroupoidError::AssociativityViolation { .. }));
    }

    #[test]
    fn missing_composite_is_reported() {
        let tables = GroupoidTables {
            object_names: vec!["*".into()],
            arrows: vec![
                ("e".into(), ObjectId(0), ObjectId(0)),
                ("a".into(), ObjectId(0), ObjectId(0)),
            ],
            identities: vec![ArrowId(0)],
            composition: vec![
                (ArrowId(0), ArrowId(0), ArrowId(0)),
                (ArrowId(0), ArrowId(1), ArrowId(1)),
                (ArrowId(1), ArrowId(0), ArrowId(1)),
                // (a, a) missing
            ],
            inverses: None,
        };
        let err = FiniteGroupoid::from_tables(tables, &CheckConfig::default()).unwrap_err();
        assert!(matches!(err, GroupoidError::MissingComposite { .. }));
    }

    #[test]
    fn pair_groupoid_counts_and_component() {
        let g = pair_groupoid(&["a".into(), "b".into()]).unwrap();
        assert_eq!(g.n_arrows(), 4);
        assert_eq!(g.connected_components().len(), 1);
        // every isotropy group is trivial
        for x in g.objects() {
            assert_eq!(g.isotropy_group(x).unwrap().loops.len(), 1);
        }
        let (flag, _) = g.is_equivalence_relation_groupoid();
        assert!(flag);
    }

    #[test]
    fn trivial_groupoid_components_equal_objects() {
        let g = trivial_groupoid(&["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(g.connected_components().len(), 3);
    }

    #[test]
    fn parallel_arrows_detected_on_cyclic_group() {
        let g = cyclic_groupoid(2).unwrap();
        let (flag, witness) = g.is_equivalence_relation_groupoid();
        assert!(!flag);
        assert_eq!(witness, Some((ArrowId(0), ArrowId(1))));
    }

    #[test]
    fn stars_have_equal_cardinality_and_are_exchanged_by_inverse() {
        let g = pair_groupoid(&["a".into(), "b".into(), "c".into()]).unwrap();
        for x in g.objects() {
            let left = g.star(x, Side::Left).unwrap();
            let right = g.star(x, Side::Right).unwrap();
            assert_eq!(left.len(), right.len());
            let mut mapped: Vec<ArrowId> = left.iter().map(|&f| g.inverse(f)).collect();
            mapped.sort();
            let mut right_sorted = right.clone();
            right_sorted.sort();
            assert_eq!(mapped, right_sorted);
        }
    }

    #[test]
    fn adjoint_along_identity_is_identity_map() {
        let g = symmetric_groupoid(3).unwrap();
        let id = g.identity(ObjectId(0));
        for (f, image) in g.adjoint(id).unwrap() {
            assert_eq!(f, image);
        }
    }

    #[test]
    fn adjoint_composes() {
        let g = symmetric_groupoid(3).unwrap();
        // Ad_{gh} = Ad_g o Ad_h for loops
        for gid in g.arrows() {
            for hid in g.arrows() {
                let gh = g.compose2(gid, hid);
                let ad_gh = g.adjoint(gh).unwrap();
                let ad_g = g.adjoint(gid).unwrap();
                let ad_h = g.adjoint(hid).unwrap();
                for &(f, img) in &ad_gh {
                    let via_h = ad_h.iter().find(|&&(d, _)| d == f).unwrap().1;
                    let via_g = ad_g.iter().find(|&&(d, _)| d == via_h).unwrap().1;
                    assert_eq!(img, via_g);
                }
            }
        }
    }
}
