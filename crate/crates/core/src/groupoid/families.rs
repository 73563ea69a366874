//! Stock groupoid constructors: trivial, pair, equivalence-relation, action,
//! induced, isotropy and frame groupoids, plus one-object groups.

use super::{ArrowId, CheckConfig, FiniteGroupoid, GroupoidError, GroupoidTables, ObjectId};

fn build(tables: GroupoidTables) -> Result<FiniteGroupoid, GroupoidError> {
    FiniteGroupoid::from_tables(tables, &CheckConfig::default())
}

/// Only identity arrows.
pub fn trivial_groupoid(objects: &[String]) -> Result<FiniteGroupoid, GroupoidError> {
    let arrows = objects
        .iter()
        .enumerate()
        .map(|(i, n)| (format!("id_{n}"), ObjectId(i), ObjectId(i)))
        .collect::<Vec<_>>();
    let identities = (0..objects.len()).map(ArrowId).collect();
    let composition = (0..objects.len())
        .map(|i| (ArrowId(i), ArrowId(i), ArrowId(i)))
        .collect();
    build(GroupoidTables {
        object_names: objects.to_vec(),
        arrows,
        identities,
        composition,
        inverses: None,
    })
}

/// Exactly one arrow `(x,y): y -> x` for every ordered pair of objects.
pub fn pair_groupoid(objects: &[String]) -> Result<FiniteGroupoid, GroupoidError> {
    let n = objects.len();
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|t| (0..n).map(move |s| (t, s)))
        .collect();
    equivalence_from_pairs(objects, &all)
}

/// The groupoid of an equivalence relation, given as related index pairs
/// `(t, s)` (one arrow `s -> t` per pair). The relation must be reflexive,
/// symmetric and transitive.
pub fn equivalence_groupoid(
    objects: &[String],
    relation: &[(usize, usize)],
) -> Result<FiniteGroupoid, GroupoidError> {
    let n = objects.len();
    let mut related = vec![vec![false; n]; n];
    for &(t, s) in relation {
        if t >= n || s >= n {
            return Err(GroupoidError::InvalidParams(
                "relation references an undeclared object".into(),
            ));
        }
        related[t][s] = true;
    }
    for i in 0..n {
        if !related[i][i] {
            return Err(GroupoidError::InvalidParams(format!(
                "relation is not reflexive at {}",
                objects[i]
            )));
        }
        for j in 0..n {
            if related[i][j] && !related[j][i] {
                return Err(GroupoidError::InvalidParams(format!(
                    "relation is not symmetric at ({}, {})",
                    objects[i], objects[j]
                )));
            }
            for k in 0..n {
                if related[i][j] && related[j][k] && !related[i][k] {
                    return Err(GroupoidError::InvalidParams(format!(
                        "relation is not transitive at ({}, {}, {})",
                        objects[i], objects[j], objects[k]
                    )));
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|t| (0..n).map(move |s| (t, s)))
        .filter(|&(t, s)| related[t][s])
        .collect();
    equivalence_from_pairs(objects, &pairs)
}

fn equivalence_from_pairs(
    objects: &[String],
    pairs: &[(usize, usize)],
) -> Result<FiniteGroupoid, GroupoidError> {
    let index_of = |t: usize, s: usize| pairs.iter().position(|&p| p == (t, s));
    let arrows: Vec<(String, ObjectId, ObjectId)> = pairs
        .iter()
        .map(|&(t, s)| {
            (
                format!("({},{})", objects[t], objects[s]),
                ObjectId(s),
                ObjectId(t),
            )
        })
        .collect();
    let identities: Vec<ArrowId> = (0..objects.len())
        .map(|i| {
            index_of(i, i)
                .map(ArrowId)
                .ok_or_else(|| GroupoidError::InvalidParams("relation not reflexive".into()))
        })
        .collect::<Result<_, _>>()?;
    let mut composition = Vec::new();
    for (fi, &(ft, fs)) in pairs.iter().enumerate() {
        for (gi, &(gt, gs)) in pairs.iter().enumerate() {
            if fs == gt {
                let fg = index_of(ft, gs).ok_or_else(|| {
                    GroupoidError::InvalidParams("relation not transitive".into())
                })?;
                composition.push((ArrowId(fi), ArrowId(gi), ArrowId(fg)));
            }
        }
    }
    build(GroupoidTables {
        object_names: objects.to_vec(),
        arrows,
        identities,
        composition,
        inverses: None,
    })
}

/// A group presented by its multiplication table, as a groupoid with a
/// single object `*`. `table[i][j]` is the composite of element `i` after
/// element `j`.
pub fn group_groupoid(
    elements: &[String],
    unit: usize,
    table: &[Vec<usize>],
) -> Result<FiniteGroupoid, GroupoidError> {
    let n = elements.len();
    if unit >= n || table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(GroupoidError::InvalidParams(
            "multiplication table must be square over the declared elements".into(),
        ));
    }
    let arrows = elements
        .iter()
        .map(|e| (e.clone(), ObjectId(0), ObjectId(0)))
        .collect();
    let composition = (0..n)
        .flat_map(|i| (0..n).map(move |j| (ArrowId(i), ArrowId(j), ArrowId(0))))
        .map(|(f, g, _)| (f, g, ArrowId(table[f.0][g.0])))
        .collect();
    build(GroupoidTables {
        object_names: vec!["*".into()],
        arrows,
        identities: vec![ArrowId(unit)],
        composition,
        inverses: None,
    })
}

/// The cyclic group of order `n` as a one-object groupoid; elements
/// `r0, ..., r{n-1}` with `ri * rj = r{(i+j) mod n}`.
pub fn cyclic_groupoid(n: usize) -> Result<FiniteGroupoid, GroupoidError> {
    if n == 0 {
        return Err(GroupoidError::InvalidParams("order must be positive".into()));
    }
    let elements: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    group_groupoid(&elements, 0, &table)
}

/// The symmetric group on `n` letters as a one-object groupoid. Elements are
/// named by their image words (`e` for the identity, otherwise `p<images>`),
/// enumerated in lexicographic order; composition is function composition.
pub fn symmetric_groupoid(n: usize) -> Result<FiniteGroupoid, GroupoidError> {
    if n == 0 || n > 5 {
        return Err(GroupoidError::InvalidParams(
            "symmetric groups are supported for 1 <= n <= 5".into(),
        ));
    }
    let perms = lex_permutations(n);
    let name = |p: &[usize]| {
        if p.iter().enumerate().all(|(i, &v)| i == v) {
            "e".to_string()
        } else {
            format!(
                "p{}",
                p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("")
            )
        }
    };
    let elements: Vec<String> = perms.iter().map(|p| name(p)).collect();
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|f| {
            perms
                .iter()
                .map(|g| {
                    // f after g
                    let fg: Vec<usize> = (0..n).map(|i| f[g[i]]).collect();
                    index_of(&fg)
                })
                .collect()
        })
        .collect();
    group_groupoid(&elements, 0, &table)
}

fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// The action groupoid of a right group action. Arrows are pairs `(x, g)`
/// with target `x` and source `x.g`; `act[x][g]` is the table of the action,
/// indexed by carrier element and group arrow.
pub struct ActionGroupoid {
    pub groupoid: FiniteGroupoid,
    /// per arrow of the action groupoid, the underlying (carrier, group arrow)
    pub arrow_pairs: Vec<(usize, ArrowId)>,
}

pub fn action_groupoid(
    group: &FiniteGroupoid,
    carrier: &[String],
    act: &[Vec<usize>],
) -> Result<ActionGroupoid, GroupoidError> {
    if group.n_objects() != 1 {
        return Err(GroupoidError::InvalidParams(
            "the acting groupoid must have a single object".into(),
        ));
    }
    let n = carrier.len();
    let m = group.n_arrows();
    if act.len() != n || act.iter().any(|r| r.len() != m) {
        return Err(GroupoidError::InvalidParams(
            "action table must cover carrier x group".into(),
        ));
    }
    if act.iter().any(|r| r.iter().any(|&v| v >= n)) {
        return Err(GroupoidError::InvalidParams(
            "action table references an undeclared carrier element".into(),
        ));
    }
    let e = group.identity(ObjectId(0));
    for x in 0..n {
        if act[x][e.0] != x {
            return Err(GroupoidError::InvalidParams(format!(
                "action does not fix {} under the unit",
                carrier[x]
            )));
        }
        for g in group.arrows() {
            for h in group.arrows() {
                let gh = group.compose2(g, h);
                if act[act[x][g.0]][h.0] != act[x][gh.0] {
                    return Err(GroupoidError::InvalidParams(format!(
                        "action is not associative at ({}, {}, {})",
                        carrier[x],
                        group.arrow_name(g),
                        group.arrow_name(h)
                    )));
                }
            }
        }
    }

    let arrow_pairs: Vec<(usize, ArrowId)> = (0..n)
        .flat_map(|x| group.arrows().map(move |g| (x, g)))
        .collect();
    let index_of = |x: usize, g: ArrowId| x * m + g.0;
    let arrows: Vec<(String, ObjectId, ObjectId)> = arrow_pairs
        .iter()
        .map(|&(x, g)| {
            (
                format!("({},{})", carrier[x], group.arrow_name(g)),
                ObjectId(act[x][g.0]),
                ObjectId(x),
            )
        })
        .collect();
    let identities: Vec<ArrowId> = (0..n).map(|x| ArrowId(index_of(x, e))).collect();
    let mut composition = Vec::new();
    for &(x, g) in &arrow_pairs {
        for &(x2, g2) in &arrow_pairs {
            // (x,g)(x2,g2) = (x, g g2) defined when x.g = x2
            if act[x][g.0] == x2 {
                let gg2 = group.compose2(g, g2);
                composition.push((
                    ArrowId(index_of(x, g)),
                    ArrowId(index_of(x2, g2)),
                    ArrowId(index_of(x, gg2)),
                ));
            }
        }
    }
    let groupoid = build(GroupoidTables {
        object_names: carrier.to_vec(),
        arrows,
        identities,
        composition,
        inverses: None,
    })?;
    Ok(ActionGroupoid {
        groupoid,
        arrow_pairs,
    })
}

/// The induced groupoid along an anchor map `points -> base objects`:
/// arrows are triples `(x, g, x')` with `anchor(x) = tgt(g)` and
/// `anchor(x') = src(g)`.
pub struct InducedGroupoid {
    pub groupoid: FiniteGroupoid,
    /// per arrow, the underlying (target point, base arrow, source point)
    pub arrow_triples: Vec<(usize, ArrowId, usize)>,
}

pub fn induced_groupoid(
    base: &FiniteGroupoid,
    points: &[String],
    anchor: &[ObjectId],
) -> Result<InducedGroupoid, GroupoidError> {
    if anchor.len() != points.len() {
        return Err(GroupoidError::InvalidParams(
            "one anchor object required per point".into(),
        ));
    }
    if anchor.iter().any(|o| o.0 >= base.n_objects()) {
        return Err(GroupoidError::InvalidParams(
            "anchor references an undeclared base object".into(),
        ));
    }
    let mut arrow_triples = Vec::new();
    for x in 0..points.len() {
        for g in base.arrows() {
            for x2 in 0..points.len() {
                if anchor[x] == base.tgt(g) && anchor[x2] == base.src(g) {
                    arrow_triples.push((x, g, x2));
                }
            }
        }
    }
    let index_of = |t: &(usize, ArrowId, usize)| arrow_triples.iter().position(|u| u == t);
    let arrows: Vec<(String, ObjectId, ObjectId)> = arrow_triples
        .iter()
        .map(|&(x, g, x2)| {
            (
                format!("({},{},{})", points[x], base.arrow_name(g), points[x2]),
                ObjectId(x2),
                ObjectId(x),
            )
        })
        .collect();
    let identities: Vec<ArrowId> = (0..points.len())
        .map(|x| {
            let t = (x, base.identity(anchor[x]), x);
            ArrowId(index_of(&t).expect("identity triple is present"))
        })
        .collect();
    let mut composition = Vec::new();
    for (fi, &(ft, fg, fs)) in arrow_triples.iter().enumerate() {
        for (gi, &(gt, gg, gs)) in arrow_triples.iter().enumerate() {
            if fs == gt {
                let comp = base.compose2(fg, gg);
                let idx = index_of(&(ft, comp, gs)).expect("composite triple is present");
                composition.push((ArrowId(fi), ArrowId(gi), ArrowId(idx)));
            }
        }
    }
    let groupoid = build(GroupoidTables {
        object_names: points.to_vec(),
        arrows,
        identities,
        composition,
        inverses: None,
    })?;
    Ok(InducedGroupoid {
        groupoid,
        arrow_triples,
    })
}

/// The isotropy groupoid: same objects, only the loops of the base.
pub fn isotropy_groupoid(base: &FiniteGroupoid) -> Result<FiniteGroupoid, GroupoidError> {
    let loops: Vec<ArrowId> = base
        .arrows()
        .filter(|&a| base.src(a) == base.tgt(a))
        .collect();
    let arrows: Vec<(String, ObjectId, ObjectId)> = loops
        .iter()
        .map(|&a| (base.arrow_name(a).to_string(), base.src(a), base.tgt(a)))
        .collect();
    let identities: Vec<ArrowId> = (0..base.n_objects())
        .map(|x| {
            let id = base.identity(ObjectId(x));
            ArrowId(loops.iter().position(|&a| a == id).unwrap())
        })
        .collect();
    let mut composition = Vec::new();
    for (i, &f) in loops.iter().enumerate() {
        for (j, &g) in loops.iter().enumerate() {
            if base.src(f) == base.tgt(g) {
                let fg = base.compose2(f, g);
                let k = loops.iter().position(|&a| a == fg).unwrap();
                composition.push((ArrowId(i), ArrowId(j), ArrowId(k)));
            }
        }
    }
    build(GroupoidTables {
        object_names: (0..base.n_objects())
            .map(|x| base.object_name(ObjectId(x)).to_string())
            .collect(),
        arrows,
        identities,
        composition,
        inverses: None,
    })
}

/// The frame groupoid of a finite fibred set: objects are base points,
/// arrows from `x` to `x'` are the bijections between the fibres over them.
/// Fibres larger than 6 are refused (the arrow count is factorial).
pub fn frame_groupoid(
    base_points: &[String],
    fibres: &[Vec<String>],
) -> Result<FiniteGroupoid, GroupoidError> {
    if fibres.len() != base_points.len() {
        return Err(GroupoidError::InvalidParams(
            "one fibre required per base point".into(),
        ));
    }
    if let Some(i) = fibres.iter().position(|f| f.is_empty()) {
        return Err(GroupoidError::InvalidParams(format!(
            "fibre over {} is empty (the projection must be surjective)",
            base_points[i]
        )));
    }
    if let Some(i) = fibres.iter().position(|f| f.len() > 6) {
        return Err(GroupoidError::InvalidParams(format!(
            "fibre over {} has more than 6 elements",
            base_points[i]
        )));
    }
    // arrows x -> x2 exist iff the fibres have equal size
    #[allow(clippy::type_complexity)]
    let mut arrow_data: Vec<(usize, usize, Vec<usize>)> = Vec::new(); // (src, tgt, images)
    for x2 in 0..base_points.len() {
        for x in 0..base_points.len() {
            if fibres[x].len() == fibres[x2].len() {
                for perm in lex_permutations(fibres[x].len()) {
                    arrow_data.push((x, x2, perm));
                }
            }
        }
    }
    let name = |&(x, x2, ref perm): &(usize, usize, Vec<usize>)| {
        format!(
            "{}->{}:[{}]",
            base_points[x],
            base_points[x2],
            perm.iter()
                .map(|&i| fibres[x2][i].clone())
                .collect::<Vec<_>>()
                .join(",")
        )
    };
    let arrows: Vec<(String, ObjectId, ObjectId)> = arrow_data
        .iter()
        .map(|d| (name(d), ObjectId(d.0), ObjectId(d.1)))
        .collect();
    let find = |x: usize, x2: usize, perm: &[usize]| {
        arrow_data
            .iter()
            .position(|d| d.0 == x && d.1 == x2 && d.2 == perm)
            .unwrap()
    };
    let identities: Vec<ArrowId> = (0..base_points.len())
        .map(|x| {
            let id: Vec<usize> = (0..fibres[x].len()).collect();
            ArrowId(find(x, x, &id))
        })
        .collect();
    let mut composition = Vec::new();
    for (fi, f) in arrow_data.iter().enumerate() {
        for (gi, g) in arrow_data.iter().enumerate() {
            if f.0 == g.1 {
                // f . g : first g then f
                let comp: Vec<usize> = (0..g.2.len()).map(|i| f.2[g.2[i]]).collect();
                let k = find(g.0, f.1, &comp);
                composition.push((ArrowId(fi), ArrowId(gi), ArrowId(k)));
            }
        }
    }
    build(GroupoidTables {
        object_names: base_points.to_vec(),
        arrows,
        identities,
        composition,
        inverses: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_of_swap_on_two_points() {
        let z2 = cyclic_groupoid(2).unwrap();
        let act = action_groupoid(
            &z2,
            &["1".into(), "2".into()],
            &[vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(act.groupoid.n_arrows(), 4);
        for x in act.groupoid.objects() {
            assert_eq!(act.groupoid.isotropy_group(x).unwrap().loops.len(), 1);
        }
        let (flag, _) = act.groupoid.is_equivalence_relation_groupoid();
        assert!(flag, "a free action gives no parallel arrows");
    }

    #[test]
    fn action_groupoid_isotropy_is_the_stabilizer() {
        // Z/2 acting trivially on one of two points
        let z2 = cyclic_groupoid(2).unwrap();
        let act = action_groupoid(
            &z2,
            &["u".into(), "v".into()],
            &[vec![0, 0], vec![1, 1]],
        )
        .unwrap();
        for x in act.groupoid.objects() {
            assert_eq!(act.groupoid.isotropy_group(x).unwrap().loops.len(), 2);
        }
    }

    #[test]
    fn induced_groupoid_of_s3_along_two_points() {
        let s3 = symmetric_groupoid(3).unwrap();
        let ind = induced_groupoid(
            &s3,
            &["1".into(), "2".into()],
            &[ObjectId(0), ObjectId(0)],
        )
        .unwrap();
        assert_eq!(ind.groupoid.n_arrows(), 2 * 6 * 2);
    }

    #[test]
    fn equivalence_groupoid_rejects_non_transitive_relations() {
        let objs: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        // a~b, b~c but not a~c
        let rel = vec![
            (0, 0),
            (1, 1),
            (2, 2),
            (0, 1),
            (1, 0),
            (1, 2),
            (2, 1),
        ];
        let err = equivalence_groupoid(&objs, &rel).unwrap_err();
        assert!(matches!(err, GroupoidError::InvalidParams(_)));
    }

    #[test]
    fn frame_groupoid_of_two_matching_fibres() {
        let g = frame_groupoid(
            &["x".into(), "y".into()],
            &[vec!["a".into(), "b".into()], vec!["c".into(), "d".into()]],
        )
        .unwrap();
        // 2 bijections between each ordered pair of fibres
        assert_eq!(g.n_arrows(), 8);
        assert_eq!(g.connected_components().len(), 1);
    }

    #[test]
    fn frame_groupoid_refuses_large_fibres() {
        let fibre: Vec<String> = (0..7).map(|i| format!("v{i}")).collect();
        let err = frame_groupoid(&["x".into()], &[fibre]).unwrap_err();
        assert!(matches!(err, GroupoidError::InvalidParams(_)));
    }

    #[test]
    fn isotropy_groupoid_of_pair_groupoid_is_trivial() {
        let g = pair_groupoid(&["a".into(), "b".into()]).unwrap();
        let iso = isotropy_groupoid(&g).unwrap();
        assert_eq!(iso.n_arrows(), 2);
        assert_eq!(iso.connected_components().len(), 2);
    }
}
