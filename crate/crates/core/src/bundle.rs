//! The bundle file format: a JSON document declaring a field, named
//! groupoids (explicit tables or constructor shorthand), morphisms, action
//! sets, bisets, representations and normal subgroupoids. Everything is
//! validated at load time; loading either returns a fully checked bundle or
//! a structured error naming the offending component.
//!
//! Matrix entries are fraction strings like `"3/2"` over the rationals and
//! plain integers over a prime field declared as `{"Fp": p}`. Composition
//! entries are triples `[f, g, fg]` with `src(f) = tgt(g)`; identities are
//! listed explicitly and inverses may be omitted.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::action::{ActionSet, Biset};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::frobenius::{AlgebraElement, FrobeniusSystem, FrobeniusTriple, PathAlgebra};
use crate::groupoid::{
    action_groupoid, cyclic_groupoid, equivalence_groupoid, frame_groupoid, group_groupoid,
    induced_groupoid, isotropy_groupoid, pair_groupoid, symmetric_groupoid, trivial_groupoid,
    ArrowId, CheckConfig, FiniteGroupoid, GroupoidTables, ObjectId, Side,
};
use crate::morphism::{build_morphism, GroupoidMorphism, NormalSubgroupoid};
use crate::rep::Representation;

#[derive(Debug, thiserror::Error)]
pub enum BundleError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema version {0}")]
    Schema(u64),
    #[error("invalid field descriptor: {0}")]
    BadField(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("component {component}: {message}")]
    Validation { component: String, message: String },
}

fn validation(component: &str, err: impl std::fmt::Display) -> BundleError {
    BundleError::Validation {
        component: component.to_string(),
        message: err.to_string(),
    }
}

/// A fully validated collection of named components over one field.
#[derive(Debug)]
pub struct Bundle {
    pub field: Field,
    pub groupoids: BTreeMap<String, Arc<FiniteGroupoid>>,
    pub morphisms: BTreeMap<String, GroupoidMorphism>,
    pub actions: BTreeMap<String, ActionSet>,
    pub bisets: BTreeMap<String, Biset>,
    pub representations: BTreeMap<String, Representation>,
    pub normals: BTreeMap<String, NormalSubgroupoid>,
}

impl Bundle {
    pub fn groupoid(&self, name: &str) -> Result<&Arc<FiniteGroupoid>, BundleError> {
        self.groupoids
            .get(name)
            .ok_or_else(|| BundleError::UnknownName(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<&GroupoidMorphism, BundleError> {
        self.morphisms
            .get(name)
            .ok_or_else(|| BundleError::UnknownName(name.to_string()))
    }

    pub fn action(&self, name: &str) -> Result<&ActionSet, BundleError> {
        self.actions
            .get(name)
            .ok_or_else(|| BundleError::UnknownName(name.to_string()))
    }

    pub fn representation(&self, name: &str) -> Result<&Representation, BundleError> {
        self.representations
            .get(name)
            .ok_or_else(|| BundleError::UnknownName(name.to_string()))
    }

    pub fn normal(&self, name: &str) -> Result<&NormalSubgroupoid, BundleError> {
        self.normals
            .get(name)
            .ok_or_else(|| BundleError::UnknownName(name.to_string()))
    }

    /// The bundle name of a groupoid, when it is one of the named ones.
    pub fn name_of_groupoid(&self, g: &Arc<FiniteGroupoid>) -> Option<&str> {
        self.groupoids
            .iter()
            .find(|(_, v)| Arc::ptr_eq(v, g))
            .map(|(k, _)| k.as_str())
    }
}

#[derive(Deserialize)]
struct BundleFile {
    schema: u64,
    field: Value,
    #[serde(default)]
    groupoids: BTreeMap<String, Value>,
    #[serde(default)]
    morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default)]
    actions: BTreeMap<String, ActionSpec>,
    #[serde(default)]
    bisets: BTreeMap<String, BisetSpec>,
    #[serde(default)]
    representations: BTreeMap<String, RepSpec>,
    #[serde(default)]
    normals: BTreeMap<String, NormalSpec>,
}

#[derive(Deserialize)]
struct ArrowSpec {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Deserialize)]
struct TablesSpec {
    objects: Vec<String>,
    arrows: Vec<ArrowSpec>,
    identities: BTreeMap<String, String>,
    compose: Vec<(String, String, String)>,
    #[serde(default)]
    inverses: Option<BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
enum FamilySpec {
    Trivial {
        objects: Vec<String>,
    },
    Pair {
        objects: Vec<String>,
    },
    Equivalence {
        objects: Vec<String>,
        relation: Vec<(String, String)>,
    },
    Group {
        elements: Vec<String>,
        unit: String,
        table: Vec<Vec<String>>,
    },
    Cyclic {
        order: usize,
    },
    Symmetric {
        letters: usize,
    },
    Action {
        group: String,
        carrier: Vec<String>,
        action: BTreeMap<String, BTreeMap<String, String>>,
    },
    Induced {
        base: String,
        points: Vec<String>,
        anchor: BTreeMap<String, String>,
    },
    Isotropy {
        base: String,
    },
    Frame {
        points: Vec<String>,
        fibres: BTreeMap<String, Vec<String>>,
    },
}

#[derive(Deserialize)]
struct MorphismSpec {
    dom: String,
    cod: String,
    objects: BTreeMap<String, String>,
    arrows: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct ActionSpec {
    groupoid: String,
    side: String,
    carrier: Vec<String>,
    anchor: BTreeMap<String, String>,
    action: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Deserialize)]
struct BisetSpec {
    left: String,
    right: String,
    carrier: Vec<String>,
    left_anchor: BTreeMap<String, String>,
    right_anchor: BTreeMap<String, String>,
    left_action: BTreeMap<String, BTreeMap<String, String>>,
    right_action: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Deserialize)]
struct RepSpec {
    groupoid: String,
    dims: BTreeMap<String, usize>,
    matrices: BTreeMap<String, Vec<Vec<Value>>>,
}

#[derive(Deserialize)]
struct NormalSpec {
    parent: String,
    arrows: Vec<String>,
}

pub fn parse_field(v: &Value) -> Result<Field, BundleError> {
    match v {
        Value::String(s) => match s.as_str() {
            "Q" | "q" | "rationals" | "rational" => Ok(Field::Rationals),
            other => Err(BundleError::BadField(other.to_string())),
        },
        Value::Object(map) => {
            let p = map
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| BundleError::BadField(v.to_string()))?;
            Field::prime(p).map_err(|e| BundleError::BadField(e.to_string()))
        }
        other => Err(BundleError::BadField(other.to_string())),
    }
}

/// Parses a matrix entry: a fraction string over the rationals, an integer
/// (given as number or string) over a prime field.
pub fn scalar_from_value(field: Field, v: &Value) -> Result<Scalar, BundleError> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| BundleError::BadField(format!("non-integer entry {n}")))?;
            Ok(field.from_integer(i))
        }
        Value::String(s) => field
            .parse(s)
            .map_err(|e| BundleError::BadField(format!("bad entry {s:?}: {e}"))),
        other => Err(BundleError::BadField(format!("bad entry {other}"))),
    }
}

/// Renders a scalar in the bundle encoding.
pub fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => {
            use num::One;
            if r.denom().is_one() {
                Value::String(r.numer().to_string())
            } else {
                Value::String(format!("{}/{}", r.numer(), r.denom()))
            }
        }
        Scalar::Mod { val, .. } => json!(val),
    }
}

fn check_config_from_env() -> CheckConfig {
    let max_triples = std::env::var("GFROB_MAX_TRIPLES")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    CheckConfig { max_triples }
}

fn build_groupoid_from_tables(
    name: &str,
    spec: TablesSpec,
    cfg: &CheckConfig,
) -> Result<FiniteGroupoid, BundleError> {
    let obj_index: HashMap<&str, usize> = spec
        .objects
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let arr_index: HashMap<&str, usize> = spec
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (a.name.as_str(), i))
        .collect();
    let look_obj = |n: &str| -> Result<ObjectId, BundleError> {
        obj_index
            .get(n)
            .map(|&i| ObjectId(i))
            .ok_or_else(|| validation(name, format!("unknown object {n:?}")))
    };
    let look_arr = |n: &str| -> Result<ArrowId, BundleError> {
        arr_index
            .get(n)
            .map(|&i| ArrowId(i))
            .ok_or_else(|| validation(name, format!("unknown arrow {n:?}")))
    };
    let arrows = spec
        .arrows
        .iter()
        .map(|a| Ok((a.name.clone(), look_obj(&a.src)?, look_obj(&a.tgt)?)))
        .collect::<Result<Vec<_>, BundleError>>()?;
    let identities = spec
        .objects
        .iter()
        .map(|o| {
            let id = spec
                .identities
                .get(o)
                .ok_or_else(|| validation(name, format!("no identity declared for {o:?}")))?;
            look_arr(id)
        })
        .collect::<Result<Vec<_>, BundleError>>()?;
    let composition = spec
        .compose
        .iter()
        .map(|(f, g, fg)| Ok((look_arr(f)?, look_arr(g)?, look_arr(fg)?)))
        .collect::<Result<Vec<_>, BundleError>>()?;
    let inverses = match &spec.inverses {
        None => None,
        Some(map) => Some(
            spec.arrows
                .iter()
                .map(|a| {
                    let inv = map.get(&a.name).ok_or_else(|| {
                        validation(name, format!("no inverse declared for {:?}", a.name))
                    })?;
                    look_arr(inv)
                })
                .collect::<Result<Vec<_>, BundleError>>()?,
        ),
    };
    FiniteGroupoid::from_tables(
        GroupoidTables {
            object_names: spec.objects,
            arrows,
            identities,
            composition,
            inverses,
        },
        cfg,
    )
    .map_err(|e| validation(name, e))
}

fn build_groupoid_from_family(
    name: &str,
    spec: FamilySpec,
    ready: &BTreeMap<String, Arc<FiniteGroupoid>>,
) -> Result<FiniteGroupoid, BundleError> {
    let resolve = |base: &str| {
        ready
            .get(base)
            .cloned()
            .ok_or_else(|| BundleError::UnknownName(base.to_string()))
    };
    match spec {
        FamilySpec::Trivial { objects } => {
            trivial_groupoid(&objects).map_err(|e| validation(name, e))
        }
        FamilySpec::Pair { objects } => pair_groupoid(&objects).map_err(|e| validation(name, e)),
        FamilySpec::Equivalence { objects, relation } => {
            let idx = |n: &String| {
                objects
                    .iter()
                    .position(|o| o == n)
                    .ok_or_else(|| validation(name, format!("unknown object {n:?}")))
            };
            let pairs = relation
                .iter()
                .map(|(t, s)| Ok((idx(t)?, idx(s)?)))
                .collect::<Result<Vec<_>, BundleError>>()?;
            equivalence_groupoid(&objects, &pairs).map_err(|e| validation(name, e))
        }
        FamilySpec::Group {
            elements,
            unit,
            table,
        } => {
            let idx = |n: &String| {
                elements
                    .iter()
                    .position(|o| o == n)
                    .ok_or_else(|| validation(name, format!("unknown element {n:?}")))
            };
            let unit = idx(&unit)?;
            let table = table
                .iter()
                .map(|row| row.iter().map(idx).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, BundleError>>()?;
            group_groupoid(&elements, unit, &table).map_err(|e| validation(name, e))
        }
        FamilySpec::Cyclic { order } => cyclic_groupoid(order).map_err(|e| validation(name, e)),
        FamilySpec::Symmetric { letters } => {
            symmetric_groupoid(letters).map_err(|e| validation(name, e))
        }
        FamilySpec::Action {
            group,
            carrier,
            action,
        } => {
            let g = resolve(&group)?;
            let elem_idx = |n: &String| {
                carrier
                    .iter()
                    .position(|o| o == n)
                    .ok_or_else(|| validation(name, format!("unknown carrier element {n:?}")))
            };
            let mut act = vec![vec![0usize; g.n_arrows()]; carrier.len()];
            for (x, row) in &action {
                let xi = elem_idx(x)?;
                for (arrow, img) in row {
                    let a = g.arrow_by_name(arrow).map_err(|e| validation(name, e))?;
                    act[xi][a.0] = elem_idx(img)?;
                }
            }
            action_groupoid(&g, &carrier, &act)
                .map(|a| a.groupoid)
                .map_err(|e| validation(name, e))
        }
        FamilySpec::Induced {
            base,
            points,
            anchor,
        } => {
            let g = resolve(&base)?;
            let anchor = points
                .iter()
                .map(|p| {
                    let obj = anchor
                        .get(p)
                        .ok_or_else(|| validation(name, format!("no anchor for point {p:?}")))?;
                    g.object_by_name(obj).map_err(|e| validation(name, e))
                })
                .collect::<Result<Vec<_>, BundleError>>()?;
            induced_groupoid(&g, &points, &anchor)
                .map(|i| i.groupoid)
                .map_err(|e| validation(name, e))
        }
        FamilySpec::Isotropy { base } => {
            let g = resolve(&base)?;
            isotropy_groupoid(&g).map_err(|e| validation(name, e))
        }
        FamilySpec::Frame { points, fibres } => {
            let fibre_list = points
                .iter()
                .map(|p| {
                    fibres
                        .get(p)
                        .cloned()
                        .ok_or_else(|| validation(name, format!("no fibre over {p:?}")))
                })
                .collect::<Result<Vec<_>, BundleError>>()?;
            frame_groupoid(&points, &fibre_list).map_err(|e| validation(name, e))
        }
    }
}

fn action_table_from_spec(
    name: &str,
    g: &Arc<FiniteGroupoid>,
    carrier: &[String],
    table: &BTreeMap<String, BTreeMap<String, String>>,
) -> Result<HashMap<(usize, ArrowId), usize>, BundleError> {
    let elem_idx = |n: &str| {
        carrier
            .iter()
            .position(|o| o == n)
            .ok_or_else(|| validation(name, format!("unknown element {n:?}")))
    };
    let mut out = HashMap::new();
    for (e, row) in table {
        let ei = elem_idx(e)?;
        for (arrow, img) in row {
            let a = g.arrow_by_name(arrow).map_err(|e| validation(name, e))?;
            out.insert((ei, a), elem_idx(img)?);
        }
    }
    Ok(out)
}

pub fn load_bundle_str(text: &str) -> Result<Bundle, BundleError> {
    let file: BundleFile = serde_json::from_str(text).map_err(|e| BundleError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.schema != 1 {
        return Err(BundleError::Schema(file.schema));
    }
    let field = parse_field(&file.field)?;
    let cfg = check_config_from_env();

    // groupoids first; constructor shorthand may reference other groupoids,
    // so iterate until no progress
    let mut groupoids: BTreeMap<String, Arc<FiniteGroupoid>> = BTreeMap::new();
    let mut pending: BTreeMap<String, Value> = file.groupoids;
    loop {
        let mut progressed = false;
        let names: Vec<String> = pending.keys().cloned().collect();
        for name in names {
            let value = pending.get(&name).unwrap().clone();
            let built = if value.get("family").is_some() {
                let spec: FamilySpec =
                    serde_json::from_value(value).map_err(|e| validation(&name, e))?;
                match build_groupoid_from_family(&name, spec, &groupoids) {
                    Err(BundleError::UnknownName(dep)) if pending.contains_key(&dep) => {
                        continue; // dependency not built yet
                    }
                    other => other?,
                }
            } else {
                let spec: TablesSpec =
                    serde_json::from_value(value).map_err(|e| validation(&name, e))?;
                build_groupoid_from_tables(&name, spec, &cfg)?
            };
            groupoids.insert(name.clone(), Arc::new(built));
            pending.remove(&name);
            progressed = true;
        }
        if pending.is_empty() {
            break;
        }
        if !progressed {
            let unresolved = pending.keys().next().unwrap().clone();
            return Err(validation(
                &unresolved,
                "circular or missing groupoid reference",
            ));
        }
    }

    let mut morphisms = BTreeMap::new();
    for (name, spec) in file.morphisms {
        let dom = groupoids
            .get(&spec.dom)
            .ok_or_else(|| BundleError::UnknownName(spec.dom.clone()))?;
        let cod = groupoids
            .get(&spec.cod)
            .ok_or_else(|| BundleError::UnknownName(spec.cod.clone()))?;
        let object_map = dom
            .objects()
            .map(|x| {
                let n = dom.object_name(x);
                let img = spec
                    .objects
                    .get(n)
                    .ok_or_else(|| validation(&name, format!("no image for object {n:?}")))?;
                cod.object_by_name(img).map_err(|e| validation(&name, e))
            })
            .collect::<Result<Vec<_>, BundleError>>()?;
        let arrow_map = dom
            .arrows()
            .map(|a| {
                let n = dom.arrow_name(a);
                let img = spec
                    .arrows
                    .get(n)
                    .ok_or_else(|| validation(&name, format!("no image for arrow {n:?}")))?;
                cod.arrow_by_name(img).map_err(|e| validation(&name, e))
            })
            .collect::<Result<Vec<_>, BundleError>>()?;
        let phi = build_morphism(Arc::clone(dom), Arc::clone(cod), object_map, arrow_map)
            .map_err(|e| validation(&name, e))?;
        morphisms.insert(name, phi);
    }

    let mut actions = BTreeMap::new();
    for (name, spec) in file.actions {
        let g = groupoids
            .get(&spec.groupoid)
            .ok_or_else(|| BundleError::UnknownName(spec.groupoid.clone()))?;
        let side = match spec.side.as_str() {
            "left" => Side::Left,
            "right" => Side::Right,
            other => return Err(validation(&name, format!("bad side {other:?}"))),
        };
        let anchor = spec
            .carrier
            .iter()
            .map(|e| {
                let obj = spec
                    .anchor
                    .get(e)
                    .ok_or_else(|| validation(&name, format!("no anchor for {e:?}")))?;
                g.object_by_name(obj).map_err(|er| validation(&name, er))
            })
            .collect::<Result<Vec<_>, BundleError>>()?;
        let table = action_table_from_spec(&name, g, &spec.carrier, &spec.action)?;
        let act = ActionSet::new(Arc::clone(g), side, spec.carrier, anchor, table)
            .map_err(|e| validation(&name, e))?;
        actions.insert(name, act);
    }

    let mut bisets = BTreeMap::new();
    for (name, spec) in file.bisets {
        let left = groupoids
            .get(&spec.left)
            .ok_or_else(|| BundleError::UnknownName(spec.left.clone()))?;
        let right = groupoids
            .get(&spec.right)
            .ok_or_else(|| BundleError::UnknownName(spec.right.clone()))?;
        let anchor_of = |map: &BTreeMap<String, String>,
                         g: &Arc<FiniteGroupoid>|
         -> Result<Vec<ObjectId>, BundleError> {
            spec.carrier
                .iter()
                .map(|e| {
                    let obj = map
                        .get(e)
                        .ok_or_else(|| validation(&name, format!("no anchor for {e:?}")))?;
                    g.object_by_name(obj).map_err(|er| validation(&name, er))
                })
                .collect()
        };
        let left_anchor = anchor_of(&spec.left_anchor, left)?;
        let right_anchor = anchor_of(&spec.right_anchor, right)?;
        let left_table = action_table_from_spec(&name, left, &spec.carrier, &spec.left_action)?;
        let right_table =
            action_table_from_spec(&name, right, &spec.carrier, &spec.right_action)?;
        let b = Biset::new(
            Arc::clone(left),
            Arc::clone(right),
            spec.carrier,
            left_anchor,
            right_anchor,
            left_table,
            right_table,
        )
        .map_err(|e| validation(&name, e))?;
        bisets.insert(name, b);
    }

    let mut representations = BTreeMap::new();
    for (name, spec) in file.representations {
        let g = groupoids
            .get(&spec.groupoid)
            .ok_or_else(|| BundleError::UnknownName(spec.groupoid.clone()))?;
        let dims = g
            .objects()
            .map(|x| {
                spec.dims.get(g.object_name(x)).copied().ok_or_else(|| {
                    validation(&name, format!("no dimension for {:?}", g.object_name(x)))
                })
            })
            .collect::<Result<Vec<_>, BundleError>>()?;
        let matrices = g
            .arrows()
            .map(|a| {
                let rows = spec.matrices.get(g.arrow_name(a)).ok_or_else(|| {
                    validation(&name, format!("no matrix for {:?}", g.arrow_name(a)))
                })?;
                let expect_rows = dims[g.tgt(a).0];
                let expect_cols = dims[g.src(a).0];
                if rows.len() != expect_rows
                    || rows.iter().any(|r| r.len() != expect_cols)
                {
                    return Err(validation(
                        &name,
                        format!("matrix of {:?} has the wrong shape", g.arrow_name(a)),
                    ));
                }
                let parsed = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|v| scalar_from_value(field, v))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Matrix::from_rows(field, expect_cols, parsed))
            })
            .collect::<Result<Vec<_>, BundleError>>()?;
        let rep = Representation::new(Arc::clone(g), field, dims, matrices)
            .map_err(|e| validation(&name, e))?;
        representations.insert(name, rep);
    }

    let mut normals = BTreeMap::new();
    for (name, spec) in file.normals {
        let parent = groupoids
            .get(&spec.parent)
            .ok_or_else(|| BundleError::UnknownName(spec.parent.clone()))?;
        let arrows = spec
            .arrows
            .iter()
            .map(|a| parent.arrow_by_name(a).map_err(|e| validation(&name, e)))
            .collect::<Result<Vec<_>, BundleError>>()?;
        let n = NormalSubgroupoid::new(Arc::clone(parent), arrows)
            .map_err(|e| validation(&name, e))?;
        normals.insert(name, n);
    }

    Ok(Bundle {
        field,
        groupoids,
        morphisms,
        actions,
        bisets,
        representations,
        normals,
    })
}

pub fn load_bundle(path: &std::path::Path) -> Result<Bundle, BundleError> {
    let text = std::fs::read_to_string(path).map_err(|e| BundleError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    load_bundle_str(&text)
}

/// Serializes a groupoid as explicit tables, reloadable by the bundle
/// parser.
pub fn groupoid_to_value(g: &FiniteGroupoid) -> Value {
    let objects: Vec<Value> = g.objects().map(|x| json!(g.object_name(x))).collect();
    let arrows: Vec<Value> = g
        .arrows()
        .map(|a| {
            json!({
                "name": g.arrow_name(a),
                "src": g.object_name(g.src(a)),
                "tgt": g.object_name(g.tgt(a)),
            })
        })
        .collect();
    let identities: BTreeMap<String, String> = g
        .objects()
        .map(|x| {
            (
                g.object_name(x).to_string(),
                g.arrow_name(g.identity(x)).to_string(),
            )
        })
        .collect();
    let mut compose = Vec::new();
    for f in g.arrows() {
        for h in g.arrows() {
            if let Some(fh) = g.compose(f, h) {
                compose.push(json!([
                    g.arrow_name(f),
                    g.arrow_name(h),
                    g.arrow_name(fh)
                ]));
            }
        }
    }
    let inverses: BTreeMap<String, String> = g
        .arrows()
        .map(|a| {
            (
                g.arrow_name(a).to_string(),
                g.arrow_name(g.inverse(a)).to_string(),
            )
        })
        .collect();
    json!({
        "objects": objects,
        "arrows": arrows,
        "identities": identities,
        "compose": compose,
        "inverses": inverses,
    })
}

/// Serializes a morphism relative to named groupoids.
pub fn morphism_to_value(phi: &GroupoidMorphism, dom_name: &str, cod_name: &str) -> Value {
    let dom = phi.dom();
    let cod = phi.cod();
    let objects: BTreeMap<String, String> = dom
        .objects()
        .map(|x| {
            (
                dom.object_name(x).to_string(),
                cod.object_name(phi.on_object(x)).to_string(),
            )
        })
        .collect();
    let arrows: BTreeMap<String, String> = dom
        .arrows()
        .map(|a| {
            (
                dom.arrow_name(a).to_string(),
                cod.arrow_name(phi.on_arrow(a)).to_string(),
            )
        })
        .collect();
    json!({ "dom": dom_name, "cod": cod_name, "objects": objects, "arrows": arrows })
}

/// Serializes a representation in the bundle schema, relative to a named
/// groupoid.
pub fn representation_to_value(rep: &Representation, groupoid_name: &str) -> Value {
    let g = rep.groupoid();
    let dims: BTreeMap<String, usize> = g
        .objects()
        .map(|x| (g.object_name(x).to_string(), rep.dim(x)))
        .collect();
    let matrices: BTreeMap<String, Value> = g
        .arrows()
        .map(|a| {
            let m = rep.matrix(a);
            let rows: Vec<Value> = (0..m.rows())
                .map(|i| {
                    Value::Array((0..m.cols()).map(|j| scalar_to_value(m.get(i, j))).collect())
                })
                .collect();
            (g.arrow_name(a).to_string(), Value::Array(rows))
        })
        .collect();
    json!({ "groupoid": groupoid_name, "dims": dims, "matrices": matrices })
}

fn algebra_element_to_value(g: &FiniteGroupoid, e: &AlgebraElement) -> Value {
    Value::Array(
        e.terms()
            .map(|(a, c)| json!([g.arrow_name(a), scalar_to_value(c)]))
            .collect(),
    )
}

fn algebra_element_from_value(
    g: &FiniteGroupoid,
    field: Field,
    v: &Value,
) -> Result<AlgebraElement, BundleError> {
    let alg = PathAlgebra::new(Arc::new(g.clone()), field);
    let mut out = AlgebraElement::zero();
    let items = v
        .as_array()
        .ok_or_else(|| BundleError::BadField("element must be a list".into()))?;
    for item in items {
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| BundleError::BadField("element term must be a pair".into()))?;
        let name = pair[0]
            .as_str()
            .ok_or_else(|| BundleError::BadField("term arrow must be a string".into()))?;
        let arrow = g
            .arrow_by_name(name)
            .map_err(|e| BundleError::BadField(e.to_string()))?;
        let coeff = scalar_from_value(field, &pair[1])?;
        out = alg.add(&out, &alg.scale(&alg.basis(arrow), &coeff));
    }
    Ok(out)
}

/// Serializes a certificate: the `E` table as `(u, v, g, coefficients)`
/// records and the triples as `(x, u, b, c-coefficients)` records.
pub fn frobenius_system_to_value(
    sys: &FrobeniusSystem,
    dom: &FiniteGroupoid,
    cod: &FiniteGroupoid,
) -> Value {
    let e: Vec<Value> = sys
        .e_entries()
        .map(|(&(u, v, g), elem)| {
            json!([
                dom.object_name(u),
                dom.object_name(v),
                cod.arrow_name(g),
                algebra_element_to_value(dom, elem),
            ])
        })
        .collect();
    let triples: Vec<Value> = sys
        .all_triples()
        .iter()
        .enumerate()
        .flat_map(|(x, list)| {
            list.iter().map(move |t| {
                json!([
                    cod.object_name(ObjectId(x)),
                    dom.object_name(t.u),
                    cod.arrow_name(t.b),
                    algebra_element_to_value(cod, &t.c),
                ])
            })
        })
        .collect();
    json!({ "E": e, "triples": triples })
}

/// Reloads a serialized certificate; the inverse of
/// [`frobenius_system_to_value`].
pub fn frobenius_system_from_value(
    v: &Value,
    dom: &FiniteGroupoid,
    cod: &FiniteGroupoid,
    field: Field,
) -> Result<FrobeniusSystem, BundleError> {
    let e_records = v
        .get("E")
        .and_then(Value::as_array)
        .ok_or_else(|| BundleError::BadField("missing E table".into()))?;
    let mut e_table = BTreeMap::new();
    for rec in e_records {
        let rec = rec
            .as_array()
            .filter(|r| r.len() == 4)
            .ok_or_else(|| BundleError::BadField("bad E record".into()))?;
        let u = dom
            .object_by_name(rec[0].as_str().unwrap_or_default())
            .map_err(|e| BundleError::BadField(e.to_string()))?;
        let vv = dom
            .object_by_name(rec[1].as_str().unwrap_or_default())
            .map_err(|e| BundleError::BadField(e.to_string()))?;
        let g = cod
            .arrow_by_name(rec[2].as_str().unwrap_or_default())
            .map_err(|e| BundleError::BadField(e.to_string()))?;
        let elem = algebra_element_from_value(dom, field, &rec[3])?;
        e_table.insert((u, vv, g), elem);
    }
    let triple_records = v
        .get("triples")
        .and_then(Value::as_array)
        .ok_or_else(|| BundleError::BadField("missing triples".into()))?;
    let mut triples: Vec<Vec<FrobeniusTriple>> = vec![Vec::new(); cod.n_objects()];
    for rec in triple_records {
        let rec = rec
            .as_array()
            .filter(|r| r.len() == 4)
            .ok_or_else(|| BundleError::BadField("bad triple record".into()))?;
        let x = cod
            .object_by_name(rec[0].as_str().unwrap_or_default())
            .map_err(|e| BundleError::BadField(e.to_string()))?;
        let u = dom
            .object_by_name(rec[1].as_str().unwrap_or_default())
            .map_err(|e| BundleError::BadField(e.to_string()))?;
        let b = cod
            .arrow_by_name(rec[2].as_str().unwrap_or_default())
            .map_err(|e| BundleError::BadField(e.to_string()))?;
        let c = algebra_element_from_value(cod, field, &rec[3])?;
        triples[x.0].push(FrobeniusTriple { u, b, c });
    }
    Ok(FrobeniusSystem::from_parts(field, e_table, triples))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema": 1,
        "field": "Q",
        "groupoids": { "t": { "family": "trivial", "objects": ["a"] } }
    }"#;

    #[test]
    fn minimal_bundle_loads() {
        let b = load_bundle_str(MINIMAL).unwrap();
        assert_eq!(b.field, Field::Rationals);
        assert_eq!(b.groupoids.len(), 1);
        assert_eq!(b.groupoid("t").unwrap().n_arrows(), 1);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = load_bundle_str("{ not json").unwrap_err();
        match err {
            BundleError::Parse { line, column, .. } => {
                assert!(line >= 1);
                assert!(column >= 1);
            }
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn broken_composition_table_is_a_validation_error() {
        let text = r#"{
            "schema": 1,
            "field": "Q",
            "groupoids": {
                "bad": {
                    "objects": ["x"],
                    "arrows": [
                        {"name": "id", "src": "x", "tgt": "x"},
                        {"name": "a", "src": "x", "tgt": "x"}
                    ],
                    "identities": {"x": "id"},
                    "compose": [
                        ["id","id","id"], ["id","a","a"], ["a","id","a"]
                    ]
                }
            }
        }"#;
        let err = load_bundle_str(text).unwrap_err();
        match err {
            BundleError::Validation { component, message } => {
                assert_eq!(component, "bad");
                assert!(message.contains("missing composite"), "{message}");
            }
            other => panic!("expected a validation error, got {other}"),
        }
    }

    #[test]
    fn explicit_tables_round_trip() {
        let g = pair_groupoid(&["a".into(), "b".into()]).unwrap();
        let value = groupoid_to_value(&g);
        let text = json!({
            "schema": 1,
            "field": "Q",
            "groupoids": { "g": value }
        })
        .to_string();
        let b = load_bundle_str(&text).unwrap();
        assert_eq!(**b.groupoid("g").unwrap(), g);
    }

    #[test]
    fn representation_round_trip_over_f5() {
        let f5 = Field::prime(5).unwrap();
        let g = Arc::new(cyclic_groupoid(2).unwrap());
        let rep = Representation::representable(&g, ObjectId(0), f5);
        let text = json!({
            "schema": 1,
            "field": {"Fp": 5},
            "groupoids": { "z2": { "family": "cyclic", "order": 2 } },
            "representations": { "r": representation_to_value(&rep, "z2") }
        })
        .to_string();
        let b = load_bundle_str(&text).unwrap();
        assert_eq!(*b.representation("r").unwrap(), rep);
    }

    #[test]
    fn unknown_cross_reference_is_reported() {
        let text = r#"{
            "schema": 1,
            "field": "Q",
            "morphisms": { "phi": {"dom": "nope", "cod": "nope", "objects": {}, "arrows": {}} }
        }"#;
        let err = load_bundle_str(text).unwrap_err();
        assert!(matches!(err, BundleError::UnknownName(n) if n == "nope"));
    }

    #[test]
    fn frobenius_system_round_trip() {
        use crate::frobenius::{frobenius_system, verify_frobenius_system};
        use crate::morphism::build_morphism;
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
        let sys = frobenius_system(&phi, Field::Rationals).unwrap();
        let value = frobenius_system_to_value(&sys, &z2, &s3);
        let reloaded =
            frobenius_system_from_value(&value, &z2, &s3, Field::Rationals).unwrap();
        assert!(verify_frobenius_system(&phi, &reloaded).ok);
        assert_eq!(
            frobenius_system_to_value(&reloaded, &z2, &s3),
            value,
            "serialization is stable under reload"
        );
    }
}
