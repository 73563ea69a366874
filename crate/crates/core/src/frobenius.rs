//! Path algebras with enough orthogonal idempotents and the decision
//! procedure, with certificate, for Frobenius morphisms of finite groupoids.
//!
//! The path algebra of a groupoid has the arrows as basis and
//! composition-or-zero as multiplication; the identity arrows are a complete
//! family of orthogonal idempotents. A morphism `phi: H -> G` induces a
//! linear map between the path algebras which is multiplicative exactly
//! when it never merges idempotents, i.e. when `phi` is injective on
//! objects.
//!
//! For `phi` faithful and injective on objects, the fibres of the pull-back
//! bisets decompose into finitely many orbits, and choosing least-index
//! orbit representatives yields a certificate: a natural projection `E`
//! from connecting arrows onto the image of `phi`, together with per-object
//! element lists whose two dual-basis identities are verified exhaustively
//! on all homogeneous pairs. The same data exhibits the relevant unital
//! modules as finitely generated projective with an explicit hom-module
//! isomorphism. Outside the faithful case the tool only reports
//! induced/co-induced dimension evidence and never issues a verdict.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactlin::{Field, Matrix, Scalar};
use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use crate::morphism::GroupoidMorphism;
use crate::rep::{RepError, Representation};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrobeniusError {
    #[error("not applicable: {reason}")]
    NotApplicable { reason: String },
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// The path algebra of a finite groupoid over an exact field. Elements are
/// sparse linear combinations of arrows; the product of basis arrows is
/// their composite when composable and zero otherwise.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    groupoid: Arc<FiniteGroupoid>,
    field: Field,
}

/// A sparse element of a path algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    coeffs: BTreeMap<ArrowId, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(a: ArrowId, field: Field) -> AlgebraElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(a, field.one());
        AlgebraElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (ArrowId, &Scalar)> {
        self.coeffs.iter().map(|(&a, c)| (a, c))
    }

    pub fn coeff(&self, a: ArrowId) -> Option<&Scalar> {
        self.coeffs.get(&a)
    }

    /// True when the element is a single arrow with coefficient 1.
    pub fn is_basis_arrow(&self, a: ArrowId) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&a).is_some_and(|c| c.is_one())
    }

    fn insert(&mut self, a: ArrowId, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&a) {
            None => {
                self.coeffs.insert(a, c);
            }
            Some(prev) => {
                let sum = &prev + &c;
                if !sum.is_zero() {
                    self.coeffs.insert(a, sum);
                }
            }
        }
    }
}

impl PathAlgebra {
    pub fn new(groupoid: Arc<FiniteGroupoid>, field: Field) -> PathAlgebra {
        PathAlgebra { groupoid, field }
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of the algebra: the number of arrows.
    pub fn dim(&self) -> usize {
        self.groupoid.n_arrows()
    }

    /// The idempotent at an object: its identity arrow.
    pub fn idempotent(&self, x: ObjectId) -> AlgebraElement {
        AlgebraElement::basis(self.groupoid.identity(x), self.field)
    }

    pub fn basis(&self, a: ArrowId) -> AlgebraElement {
        AlgebraElement::basis(a, self.field)
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = a.clone();
        for (arrow, c) in b.terms() {
            out.insert(arrow, c.clone());
        }
        out
    }

    pub fn scale(&self, a: &AlgebraElement, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (arrow, coeff) in a.terms() {
            out.insert(arrow, coeff * c);
        }
        out
    }

    /// Bilinear product, composition-or-zero on basis arrows.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (f, cf) in a.terms() {
            for (g, cg) in b.terms() {
                if let Some(fg) = self.groupoid.compose(f, g) {
                    out.insert(fg, cf * cg);
                }
            }
        }
        out
    }

    /// The arrows spanning the homogeneous component `1_y . R . 1_x`
    /// (from `x` to `y`).
    pub fn component(&self, x: ObjectId, y: ObjectId) -> Vec<ArrowId> {
        self.groupoid.hom(x, y)
    }

    pub fn render(&self, a: &AlgebraElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        a.terms()
            .map(|(arrow, c)| {
                if c.is_one() {
                    self.groupoid.arrow_name(arrow).to_string()
                } else {
                    format!("{}*{}", c, self.groupoid.arrow_name(arrow))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Outcome of the multiplicativity check for the linear map between path
/// algebras induced by a morphism.
#[derive(Clone, Debug)]
pub struct AlgebraMapReport {
    pub multiplicative: bool,
    /// a failing pair of domain basis elements, with both sides
    pub witness: Option<MultiplicativityWitness>,
}

#[derive(Clone, Debug)]
pub struct MultiplicativityWitness {
    pub f: ArrowId,
    pub g: ArrowId,
    pub image_of_product: AlgebraElement,
    pub product_of_images: AlgebraElement,
}

/// Applies the induced linear map on a sparse element.
pub fn apply_algebra_map(phi: &GroupoidMorphism, a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (arrow, c) in a.terms() {
        out.insert(phi.on_arrow(arrow), c.clone());
    }
    out
}

/// Checks multiplicativity of the induced map on all pairs of basis arrows.
/// The check passes whenever the morphism is injective on objects; a
/// non-injective object map produces an explicit witness pair.
pub fn algebra_map(phi: &GroupoidMorphism, field: Field) -> AlgebraMapReport {
    let dom_alg = PathAlgebra::new(Arc::clone(phi.dom()), field);
    let cod_alg = PathAlgebra::new(Arc::clone(phi.cod()), field);
    for f in phi.dom().arrows() {
        for g in phi.dom().arrows() {
            let product = dom_alg.mul(&dom_alg.basis(f), &dom_alg.basis(g));
            let lhs = apply_algebra_map(phi, &product);
            let rhs = cod_alg.mul(
                &cod_alg.basis(phi.on_arrow(f)),
                &cod_alg.basis(phi.on_arrow(g)),
            );
            if lhs != rhs {
                return AlgebraMapReport {
                    multiplicative: false,
                    witness: Some(MultiplicativityWitness {
                        f,
                        g,
                        image_of_product: lhs,
                        product_of_images: rhs,
                    }),
                };
            }
        }
    }
    AlgebraMapReport {
        multiplicative: true,
        witness: None,
    }
}

/// Per-object fibre data for the orbit criterion: the pairs `(u, q)` with
/// `q: x -> phi(u)` under `h . (u, q) = (tgt(h), phi(h) q)`, and the pairs
/// `(q, u)` with `q: phi(u) -> x` under the dual action.
#[derive(Clone, Debug)]
pub struct FibreOrbitData {
    pub object: ObjectId,
    pub incoming_orbit_count: usize,
    pub outgoing_orbit_count: usize,
    /// least-index representatives of the incoming-fibre orbits, as pairs
    /// (domain object, connecting arrow)
    pub representatives: Vec<(ObjectId, ArrowId)>,
}

/// The orbit criterion: applicable exactly for faithful morphisms injective
/// on objects, in which case finiteness of the fibre orbits (automatic
/// here) certifies the Frobenius property and the orbit data is the
/// payload.
#[derive(Clone, Debug)]
pub struct OrbitCriterionReport {
    pub applicable: bool,
    pub faithful: bool,
    pub injective_on_objects: bool,
    /// present exactly when applicable
    pub frobenius: Option<bool>,
    pub per_object: Vec<FibreOrbitData>,
}

fn incoming_fibre_elements(
    phi: &GroupoidMorphism,
    x: ObjectId,
) -> Vec<(ObjectId, ArrowId)> {
    let hg = phi.dom();
    let gg = phi.cod();
    hg.objects()
        .flat_map(|u| gg.arrows().map(move |q| (u, q)))
        .filter(|&(u, q)| gg.src(q) == x && gg.tgt(q) == phi.on_object(u))
        .collect()
}

/// Orbits of the incoming fibre at `x` under `h . (u, q) = (tgt(h), phi(h) q)`,
/// as blocks of indices into the lexicographic element list.
fn incoming_fibre_orbits(
    phi: &GroupoidMorphism,
    elements: &[(ObjectId, ArrowId)],
) -> Vec<Vec<usize>> {
    let hg = phi.dom();
    let gg = phi.cod();
    let index_of =
        |u: ObjectId, q: ArrowId| elements.iter().position(|&e| e == (u, q)).expect("closed");
    let mut uf = UnionFind::new(elements.len());
    for (ei, &(u, q)) in elements.iter().enumerate() {
        for h in hg.arrows() {
            if hg.src(h) == u {
                uf.union(ei, index_of(hg.tgt(h), gg.compose2(phi.on_arrow(h), q)));
            }
        }
    }
    uf.blocks()
}

pub fn orbit_criterion(phi: &GroupoidMorphism) -> OrbitCriterionReport {
    let faithful = phi.is_faithful();
    let injective_on_objects = phi.is_injective_on_objects();
    let applicable = faithful && injective_on_objects;
    let gg = phi.cod();
    let hg = phi.dom();
    let mut per_object = Vec::new();
    for x in gg.objects() {
        let elements = incoming_fibre_elements(phi, x);
        let blocks = incoming_fibre_orbits(phi, &elements);
        let representatives: Vec<(ObjectId, ArrowId)> =
            blocks.iter().map(|b| elements[b[0]]).collect();
        // dual fibre: pairs (q, u) with q: phi(u) -> x under
        // (q, u) . h = (q phi(h), src(h)); counts agree through q -> q^{-1}
        let out_elements: Vec<(ArrowId, ObjectId)> = gg
            .arrows()
            .flat_map(|q| hg.objects().map(move |u| (q, u)))
            .filter(|&(q, u)| gg.tgt(q) == x && gg.src(q) == phi.on_object(u))
            .collect();
        let out_index = |q: ArrowId, u: ObjectId| {
            out_elements
                .iter()
                .position(|&e| e == (q, u))
                .expect("closed")
        };
        let mut uf = UnionFind::new(out_elements.len());
        for (ei, &(q, u)) in out_elements.iter().enumerate() {
            for h in hg.arrows() {
                if hg.tgt(h) == u {
                    uf.union(
                        ei,
                        out_index(gg.compose2(q, phi.on_arrow(h)), hg.src(h)),
                    );
                }
            }
        }
        let outgoing = uf.blocks().len();
        assert_eq!(
            blocks.len(),
            outgoing,
            "the two fibres of a morphism have matching orbit counts"
        );
        per_object.push(FibreOrbitData {
            object: x,
            incoming_orbit_count: blocks.len(),
            outgoing_orbit_count: outgoing,
            representatives,
        });
    }
    OrbitCriterionReport {
        applicable,
        faithful,
        injective_on_objects,
        frobenius: applicable.then_some(true),
        per_object,
    }
}

/// One certificate triple at a codomain object `x`: a domain object `u`, an
/// arrow `b: phi(u) -> x` and an element `c` supported in the arrows
/// `x -> phi(u)`.
#[derive(Clone, Debug)]
pub struct FrobeniusTriple {
    pub u: ObjectId,
    pub b: ArrowId,
    pub c: AlgebraElement,
}

/// The full certificate: the natural projection `E` onto the image of the
/// morphism, and the per-object triples built from least-index orbit
/// representatives (the identity pair is forced to the first position over
/// objects in the image).
#[derive(Clone, Debug)]
pub struct FrobeniusSystem {
    field: Field,
    /// (u, v, g) with g connecting phi(u) to phi(v), mapped into the span
    /// of the arrows u -> v
    e_table: BTreeMap<(ObjectId, ObjectId, ArrowId), AlgebraElement>,
    /// triples per codomain object
    triples: Vec<Vec<FrobeniusTriple>>,
}

impl FrobeniusSystem {
    /// Reassembles a certificate from its raw parts (used by the bundle
    /// serializer); the result still has to pass verification.
    pub fn from_parts(
        field: Field,
        e_table: BTreeMap<(ObjectId, ObjectId, ArrowId), AlgebraElement>,
        triples: Vec<Vec<FrobeniusTriple>>,
    ) -> FrobeniusSystem {
        FrobeniusSystem {
            field,
            e_table,
            triples,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `E` on a single connecting arrow.
    pub fn e(&self, u: ObjectId, v: ObjectId, g: ArrowId) -> AlgebraElement {
        self.e_table
            .get(&(u, v, g))
            .cloned()
            .unwrap_or_else(AlgebraElement::zero)
    }

    /// `E` extended linearly over a homogeneous element.
    pub fn e_linear(
        &self,
        alg: &PathAlgebra,
        u: ObjectId,
        v: ObjectId,
        elem: &AlgebraElement,
    ) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (arrow, c) in elem.terms() {
            let img = self.e(u, v, arrow);
            for (h, hc) in img.terms() {
                let mut scaled = AlgebraElement::basis(h, self.field);
                scaled = alg.scale(&scaled, &(hc * c));
                out = alg.add(&out, &scaled);
            }
        }
        out
    }

    pub fn triples_at(&self, x: ObjectId) -> &[FrobeniusTriple] {
        &self.triples[x.0]
    }

    pub fn all_triples(&self) -> &[Vec<FrobeniusTriple>] {
        &self.triples
    }

    /// Iterates the `E` table in a deterministic order.
    pub fn e_entries(
        &self,
    ) -> impl Iterator<Item = (&(ObjectId, ObjectId, ArrowId), &AlgebraElement)> {
        self.e_table.iter()
    }

    /// Corrupts one triple (used to exercise the verifier).
    pub fn corrupt_triple(&mut self, x: ObjectId, index: usize) {
        self.triples[x.0][index].c = AlgebraElement::zero();
    }
}

/// Builds the certificate from least-index orbit representatives. Fails
/// with `NotApplicable` unless the morphism is faithful and injective on
/// objects.
pub fn frobenius_system(
    phi: &GroupoidMorphism,
    field: Field,
) -> Result<FrobeniusSystem, FrobeniusError> {
    if !phi.is_faithful() {
        return Err(FrobeniusError::NotApplicable {
            reason: "the morphism is not faithful".into(),
        });
    }
    if !phi.is_injective_on_objects() {
        return Err(FrobeniusError::NotApplicable {
            reason: "the morphism is not injective on objects".into(),
        });
    }
    let hg = phi.dom();
    let gg = phi.cod();

    // E(u, v, g) = the unique h: u -> v with phi(h) = g, when it exists
    let mut e_table = BTreeMap::new();
    for u in hg.objects() {
        for v in hg.objects() {
            for g in gg.hom(phi.on_object(u), phi.on_object(v)) {
                let preimages: Vec<ArrowId> = hg
                    .hom(u, v)
                    .into_iter()
                    .filter(|&h| phi.on_arrow(h) == g)
                    .collect();
                match preimages.as_slice() {
                    [] => {}
                    [h] => {
                        e_table.insert((u, v, g), AlgebraElement::basis(*h, field));
                    }
                    _ => unreachable!("faithfulness gives at most one preimage"),
                }
            }
        }
    }

    let mut triples = Vec::new();
    for x in gg.objects() {
        let elements = incoming_fibre_elements(phi, x);
        let blocks = incoming_fibre_orbits(phi, &elements);
        let mut reps: Vec<(ObjectId, ArrowId)> = blocks.iter().map(|b| elements[b[0]]).collect();
        // force the identity pair's orbit to the first position when x is
        // in the image of the object map
        if let Some(u_x) = hg.objects().find(|&u| phi.on_object(u) == x) {
            let id_elem = (u_x, gg.identity(x));
            let id_elem_idx = elements
                .iter()
                .position(|&e| e == id_elem)
                .expect("the identity pair lies in the fibre over its object");
            let orbit_idx = blocks
                .iter()
                .position(|b| b.contains(&id_elem_idx))
                .expect("every element has an orbit");
            reps[orbit_idx] = id_elem;
            reps.swap(0, orbit_idx);
        }
        let triple_list = reps
            .into_iter()
            .map(|(u, q)| FrobeniusTriple {
                u,
                b: gg.inverse(q),
                c: AlgebraElement::basis(q, field),
            })
            .collect();
        triples.push(triple_list);
    }
    Ok(FrobeniusSystem {
        field,
        e_table,
        triples,
    })
}

/// A failed check found by [`verify_frobenius_system`].
#[derive(Clone, Debug)]
pub enum SystemFailure {
    /// naturality of E fails on (h, g, h')
    Naturality { h: String, g: String, h2: String },
    /// the reconstruction of `b` from the triples at `x` fails
    LeftIdentity { x: String, b: String },
    /// the reconstruction of `b'` from the triples at `x` fails
    RightIdentity { x: String, b2: String },
}

/// Outcome of the exhaustive certificate verification.
#[derive(Clone, Debug)]
pub struct SystemVerification {
    pub ok: bool,
    pub failures: Vec<SystemFailure>,
    /// homogeneous pairs checked by the two dual-basis identities
    pub pairs_checked: usize,
}

/// Verifies the certificate exhaustively: naturality of `E` over all
/// composable frames, and both dual-basis identities over every
/// homogeneous pair at every object.
pub fn verify_frobenius_system(
    phi: &GroupoidMorphism,
    sys: &FrobeniusSystem,
) -> SystemVerification {
    let hg = phi.dom();
    let gg = phi.cod();
    let field = sys.field();
    let dom_alg = PathAlgebra::new(Arc::clone(hg), field);
    let cod_alg = PathAlgebra::new(Arc::clone(gg), field);
    let mut failures = Vec::new();

    // naturality: E(phi(h') g phi(h)) = h' E(g) h for h: u' -> u,
    // h': v -> v', g: phi(u) -> phi(v)
    for h in hg.arrows() {
        for h2 in hg.arrows() {
            let u2 = hg.src(h);
            let u = hg.tgt(h);
            let v = hg.src(h2);
            let v2 = hg.tgt(h2);
            for g in gg.hom(phi.on_object(u), phi.on_object(v)) {
                let conjugated = gg.compose2(
                    gg.compose2(phi.on_arrow(h2), g),
                    phi.on_arrow(h),
                );
                let lhs = sys.e(u2, v2, conjugated);
                let rhs = dom_alg.mul(
                    &dom_alg.mul(&dom_alg.basis(h2), &sys.e(u, v, g)),
                    &dom_alg.basis(h),
                );
                if lhs != rhs {
                    failures.push(SystemFailure::Naturality {
                        h: hg.arrow_name(h).to_string(),
                        g: gg.arrow_name(g).to_string(),
                        h2: hg.arrow_name(h2).to_string(),
                    });
                }
            }
        }
    }

    // dual-basis identities on every homogeneous pair
    let mut pairs_checked = 0;
    for x in gg.objects() {
        let triples = sys.triples_at(x);
        for u in hg.objects() {
            let into = gg.hom(x, phi.on_object(u));
            let outof = gg.hom(phi.on_object(u), x);
            for &b in &into {
                // sum_i phi(E(b b_i)) c_i = b
                let mut acc = AlgebraElement::zero();
                for t in triples {
                    let bbi = cod_alg.mul(&cod_alg.basis(b), &cod_alg.basis(t.b));
                    let e_val = sys.e_linear(&dom_alg, t.u, u, &bbi);
                    let mapped = apply_algebra_map(phi, &e_val);
                    acc = cod_alg.add(&acc, &cod_alg.mul(&mapped, &t.c));
                }
                if !acc.is_basis_arrow(b) {
                    failures.push(SystemFailure::LeftIdentity {
                        x: gg.object_name(x).to_string(),
                        b: gg.arrow_name(b).to_string(),
                    });
                }
            }
            for &b2 in &outof {
                // sum_i b_i phi(E(c_i b')) = b'
                let mut acc = AlgebraElement::zero();
                for t in triples {
                    let cib = cod_alg.mul(&t.c, &cod_alg.basis(b2));
                    let e_val = sys.e_linear(&dom_alg, u, t.u, &cib);
                    let mapped = apply_algebra_map(phi, &e_val);
                    acc = cod_alg.add(&acc, &cod_alg.mul(&cod_alg.basis(t.b), &mapped));
                }
                if !acc.is_basis_arrow(b2) {
                    failures.push(SystemFailure::RightIdentity {
                        x: gg.object_name(x).to_string(),
                        b2: gg.arrow_name(b2).to_string(),
                    });
                }
            }
            pairs_checked += into.len() * outof.len();
        }
    }

    SystemVerification {
        ok: failures.is_empty(),
        failures,
        pairs_checked,
    }
}

/// Dual-basis data at one codomain object.
#[derive(Clone, Debug)]
pub struct DualBasisReport {
    pub object: ObjectId,
    /// number of certificate triples: the rank of the free decomposition
    pub rank: usize,
    pub dual_basis_ok: bool,
}

/// Hom-module comparison at one domain object.
#[derive(Clone, Debug)]
pub struct HomIsoReport {
    pub u: ObjectId,
    /// dimension of the hom module, per codomain object (degreewise)
    pub hom_dims: Vec<(ObjectId, usize)>,
    pub round_trips_ok: bool,
}

/// Outcome of the module-theoretic condition: finitely generated projective
/// unital modules with an explicit hom-module isomorphism.
#[derive(Clone, Debug)]
pub struct ModuleConditionReport {
    pub per_object: Vec<DualBasisReport>,
    pub per_domain_object: Vec<HomIsoReport>,
    pub ok: bool,
}

/// Left multiplication by a domain arrow on the span of the arrows with
/// source `u`, as a matrix over that basis.
fn left_mul_matrix(
    hg: &FiniteGroupoid,
    field: Field,
    basis_u: &[ArrowId],
    h: ArrowId,
) -> Matrix {
    let n = basis_u.len();
    let mut m = Matrix::zeros(field, n, n);
    for (j, &a) in basis_u.iter().enumerate() {
        if let Some(ha) = hg.compose(h, a) {
            let i = basis_u.iter().position(|&b| b == ha).expect("closed");
            m.set(i, j, field.one());
        }
    }
    m
}

/// Checks the module-theoretic condition from a verified certificate: per
/// codomain object, the dual-basis equation for the free decomposition of
/// the incoming component; per domain object, the mutually inverse pair of
/// maps between the outgoing component and the hom module, the latter
/// computed degreewise by an exact linear solve.
pub fn module_condition(
    phi: &GroupoidMorphism,
    field: Field,
) -> Result<ModuleConditionReport, FrobeniusError> {
    let sys = frobenius_system(phi, field)?;
    let verification = verify_frobenius_system(phi, &sys);
    if !verification.ok {
        return Err(FrobeniusError::NotApplicable {
            reason: "the constructed certificate does not verify".into(),
        });
    }
    let hg = phi.dom();
    let gg = phi.cod();
    let dom_alg = PathAlgebra::new(Arc::clone(hg), field);
    let cod_alg = PathAlgebra::new(Arc::clone(gg), field);

    // dual basis per codomain object: b = sum_i phi(E(b b_i)) c_i where the
    // i-th coordinate map is b -> E(b b_i)
    let mut per_object = Vec::new();
    for x in gg.objects() {
        let triples = sys.triples_at(x);
        let mut ok = true;
        for u in hg.objects() {
            for b in gg.hom(x, phi.on_object(u)) {
                let mut acc = AlgebraElement::zero();
                for t in triples {
                    let bbi = cod_alg.mul(&cod_alg.basis(b), &cod_alg.basis(t.b));
                    let coord = sys.e_linear(&dom_alg, t.u, u, &bbi);
                    let mapped = apply_algebra_map(phi, &coord);
                    acc = cod_alg.add(&acc, &cod_alg.mul(&mapped, &t.c));
                }
                if !acc.is_basis_arrow(b) {
                    ok = false;
                }
            }
        }
        per_object.push(DualBasisReport {
            object: x,
            rank: triples.len(),
            dual_basis_ok: ok,
        });
    }

    // hom modules per domain object u: a left-linear map from the incoming
    // component at x into the span of arrows with source u, constrained by
    // f(phi(h) m) = h f(m); solved degreewise
    let mut per_domain_object = Vec::new();
    for u in hg.objects() {
        let target_basis: Vec<ArrowId> = hg
            .arrows()
            .filter(|&a| hg.src(a) == u)
            .collect();
        let td = target_basis.len();
        let mut hom_dims = Vec::new();
        // per degree x: basis of the solution space, as matrices td x fibre
        let mut hom_bases: Vec<Vec<Matrix>> = Vec::new();
        for x in gg.objects() {
            let elements = incoming_fibre_elements(phi, x);
            let fd = elements.len();
            let index_of = |v: ObjectId, m: ArrowId| {
                elements.iter().position(|&e| e == (v, m)).expect("closed")
            };
            // unknowns: F (td x fd) column-major; constraints:
            // F[:, moved] - L_h F[:, e] = 0
            let total = td * fd;
            let mut rows = Matrix::zeros(field, 0, total);
            for (ei, &(v, m)) in elements.iter().enumerate() {
                for h in hg.arrows() {
                    if hg.src(h) != v {
                        continue;
                    }
                    let moved = index_of(hg.tgt(h), gg.compose2(phi.on_arrow(h), m));
                    let lh = left_mul_matrix(hg, field, &target_basis, h);
                    let mut block = Matrix::zeros(field, td, total);
                    for i in 0..td {
                        let c_moved = moved * td + i;
                        let cur = block.get(i, c_moved).clone();
                        block.set(i, c_moved, &cur + &field.one());
                        for k in 0..td {
                            let c_e = ei * td + k;
                            let cur = block.get(i, c_e).clone();
                            block.set(i, c_e, &cur - lh.get(i, k));
                        }
                    }
                    rows = rows.vstack(&block);
                }
            }
            let kernel = rows.kernel_basis();
            hom_dims.push((x, kernel.rows()));
            let mut mats = Vec::new();
            for bi in 0..kernel.rows() {
                let mut f = Matrix::zeros(field, td, fd);
                for e in 0..fd {
                    for i in 0..td {
                        f.set(i, e, kernel.row(bi)[e * td + i].clone());
                    }
                }
                mats.push(f);
            }
            hom_bases.push(mats);
        }

        // the forward map on a basis arrow b with source phi(u):
        // degree tgt(b), f_b(m) = E(m b); the backward map:
        // alpha -> sum_{x, i} b_i phi(alpha(c_i))
        let fwd = |b: ArrowId| -> Vec<Matrix> {
            gg.objects()
                .map(|x| {
                    let elements = incoming_fibre_elements(phi, x);
                    let mut f = Matrix::zeros(field, td, elements.len());
                    if gg.tgt(b) != x {
                        return f;
                    }
                    for (ei, &(v, m)) in elements.iter().enumerate() {
                        let mb = cod_alg.mul(&cod_alg.basis(m), &cod_alg.basis(b));
                        let val = sys.e_linear(&dom_alg, u, v, &mb);
                        for (arrow, c) in val.terms() {
                            let i = target_basis
                                .iter()
                                .position(|&a| a == arrow)
                                .expect("values land in the span of arrows out of u");
                            f.set(i, ei, c.clone());
                        }
                    }
                    f
                })
                .collect()
        };
        let bwd = |alpha: &[Matrix]| -> AlgebraElement {
            let mut acc = AlgebraElement::zero();
            for x in gg.objects() {
                let elements = incoming_fibre_elements(phi, x);
                for t in sys.triples_at(x) {
                    // alpha applied to c_i, read off the element columns
                    let mut val = AlgebraElement::zero();
                    for (carrow, cc) in t.c.terms() {
                        let ei = elements
                            .iter()
                            .position(|&e| e == (t.u, carrow))
                            .expect("certificate elements lie in the fibre");
                        for (i, &a) in target_basis.iter().enumerate() {
                            let coeff = alpha[x.0].get(i, ei);
                            if !coeff.is_zero() {
                                let term = dom_alg.scale(&dom_alg.basis(a), &(coeff * cc));
                                val = dom_alg.add(&val, &term);
                            }
                        }
                    }
                    let mapped = apply_algebra_map(phi, &val);
                    acc = cod_alg.add(&acc, &cod_alg.mul(&cod_alg.basis(t.b), &mapped));
                }
            }
            acc
        };

        let mut round_trips_ok = true;
        // backward(forward(b)) = b on every basis arrow out of phi(u)
        for b in gg.arrows().filter(|&b| gg.src(b) == phi.on_object(u)) {
            let image = fwd(b);
            let back = bwd(&image);
            if !back.is_basis_arrow(b) {
                round_trips_ok = false;
            }
        }
        // forward(backward(alpha)) = alpha on every hom-basis element
        for (xi, basis) in hom_bases.iter().enumerate() {
            for f in basis {
                let mut alpha: Vec<Matrix> = gg
                    .objects()
                    .map(|x| {
                        let fd = incoming_fibre_elements(phi, x).len();
                        Matrix::zeros(field, td, fd)
                    })
                    .collect();
                alpha[xi] = f.clone();
                let back = bwd(&alpha);
                // expand back over basis arrows and push forward again
                let mut forward_again: Vec<Matrix> = gg
                    .objects()
                    .map(|x| {
                        let fd = incoming_fibre_elements(phi, x).len();
                        Matrix::zeros(field, td, fd)
                    })
                    .collect();
                for (arrow, c) in back.terms() {
                    let img = fwd(arrow);
                    for (x, m) in img.into_iter().enumerate() {
                        forward_again[x] = forward_again[x].add(&m.scale(c));
                    }
                }
                if &forward_again[xi] != f
                    || forward_again
                        .iter()
                        .enumerate()
                        .any(|(x, m)| x != xi && !m.is_zero())
                {
                    round_trips_ok = false;
                }
            }
        }
        per_domain_object.push(HomIsoReport {
            u,
            hom_dims,
            round_trips_ok,
        });
    }

    let ok = per_object.iter().all(|r| r.dual_basis_ok)
        && per_domain_object.iter().all(|r| r.round_trips_ok);
    Ok(ModuleConditionReport {
        per_object,
        per_domain_object,
        ok,
    })
}

/// Dimension evidence comparing induction and co-induction on a battery of
/// representations. Consistency is a necessary condition for the Frobenius
/// property; the report never upgrades it to a verdict.
#[derive(Clone, Debug)]
pub struct EvidenceReport {
    /// per battery member: (object, induced dim, co-induced dim) triples
    pub per_rep: Vec<Vec<(ObjectId, usize, usize)>>,
    pub consistent: bool,
}

pub fn functor_iso_evidence(
    phi: &GroupoidMorphism,
    battery: &[Representation],
) -> Result<EvidenceReport, FrobeniusError> {
    let gg = phi.cod();
    let mut per_rep = Vec::new();
    let mut consistent = true;
    for w in battery {
        let ind = crate::functors::induce(phi, w)?;
        let coind = crate::functors::coinduce(phi, w)?;
        let mut rows = Vec::new();
        for x in gg.objects() {
            let di = ind.rep.dim(x);
            let dc = coind.rep.dim(x);
            if di != dc {
                consistent = false;
            }
            rows.push((x, di, dc));
        }
        per_rep.push(rows);
    }
    Ok(EvidenceReport {
        per_rep,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{
        cyclic_groupoid, pair_groupoid, symmetric_groupoid, trivial_groupoid,
    };
    use crate::morphism::{build_morphism, identity_morphism};

    fn q() -> Field {
        Field::Rationals
    }

    /// The inclusion of the order-two subgroup generated by a transposition.
    pub(crate) fn z2_in_s3() -> GroupoidMorphism {
        let z2 = Arc::new(cyclic_groupoid(2).unwrap());
        let s3 = Arc::new(symmetric_groupoid(3).unwrap());
        let arrow_map = vec![
            s3.arrow_by_name("e").unwrap(),
            s3.arrow_by_name("p102").unwrap(),
        ];
        build_morphism(z2, s3, vec![ObjectId(0)], arrow_map).unwrap()
    }

    /// The constant-map morphism from the trivial groupoid on two points to
    /// the pair groupoid on one point's image: both objects land on `y`.
    fn constant_collapse() -> GroupoidMorphism {
        let dom = Arc::new(trivial_groupoid(&["x".into(), "xp".into()]).unwrap());
        let cod = Arc::new(pair_groupoid(&["y".into()]).unwrap());
        build_morphism(
            Arc::clone(&dom),
            Arc::clone(&cod),
            vec![ObjectId(0), ObjectId(0)],
            vec![ArrowId(0), ArrowId(0)],
        )
        .unwrap()
    }

    #[test]
    fn path_algebra_of_trivial_groupoid_has_zero_cross_products() {
        let g = Arc::new(trivial_groupoid(&["a".into(), "b".into()]).unwrap());
        let alg = PathAlgebra::new(Arc::clone(&g), q());
        assert_eq!(alg.dim(), 2);
        let ia = alg.idempotent(ObjectId(0));
        let ib = alg.idempotent(ObjectId(1));
        assert!(alg.mul(&ia, &ib).is_zero());
        assert_eq!(alg.mul(&ia, &ia), ia);
    }

    #[test]
    fn idempotents_are_orthogonal_and_decompose_the_algebra() {
        let g = Arc::new(pair_groupoid(&["a".into(), "b".into()]).unwrap());
        let alg = PathAlgebra::new(Arc::clone(&g), q());
        for x in g.objects() {
            for y in g.objects() {
                let p = alg.mul(&alg.idempotent(x), &alg.idempotent(y));
                if x == y {
                    assert_eq!(p, alg.idempotent(x));
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        // grading: every arrow lies in exactly one component 1_y R 1_x
        let mut seen = 0;
        for x in g.objects() {
            for y in g.objects() {
                seen += alg.component(x, y).len();
            }
        }
        assert_eq!(seen, alg.dim());
    }

    #[test]
    fn constant_map_breaks_multiplicativity_with_exact_witness() {
        let phi = constant_collapse();
        let report = algebra_map(&phi, q());
        assert!(!report.multiplicative);
        let w = report.witness.unwrap();
        // the product of two distinct idempotents is zero upstairs but the
        // square of an idempotent downstairs
        assert!(w.image_of_product.is_zero());
        let cod_id = phi.cod().identity(ObjectId(0));
        assert!(w.product_of_images.is_basis_arrow(cod_id));
    }

    #[test]
    fn identity_morphism_is_multiplicative() {
        let g = Arc::new(symmetric_groupoid(3).unwrap());
        let report = algebra_map(&identity_morphism(&g), q());
        assert!(report.multiplicative);
    }

    #[test]
    fn injective_object_maps_are_multiplicative() {
        let phi = z2_in_s3();
        assert!(algebra_map(&phi, q()).multiplicative);
        let f5 = Field::prime(5).unwrap();
        assert!(algebra_map(&phi, f5).multiplicative);
    }

    #[test]
    fn orbit_criterion_on_subgroup_inclusion() {
        let phi = z2_in_s3();
        let report = orbit_criterion(&phi);
        assert!(report.applicable);
        assert_eq!(report.frobenius, Some(true));
        assert_eq!(report.per_object.len(), 1);
        // index of the subgroup
        assert_eq!(report.per_object[0].incoming_orbit_count, 3);
        assert_eq!(report.per_object[0].outgoing_orbit_count, 3);
    }

    #[test]
    fn orbit_criterion_rejects_non_faithful_morphisms() {
        let z2 = Arc::new(cyclic_groupoid(2).unwrap());
        let one = Arc::new(trivial_groupoid(&["*".into()]).unwrap());
        let collapse = build_morphism(
            Arc::clone(&z2),
            Arc::clone(&one),
            vec![ObjectId(0)],
            vec![ArrowId(0), ArrowId(0)],
        )
        .unwrap();
        let report = orbit_criterion(&collapse);
        assert!(!report.applicable);
        assert_eq!(report.frobenius, None);
    }

    #[test]
    fn identity_system_is_trivial_and_verifies() {
        let g = Arc::new(symmetric_groupoid(3).unwrap());
        let id = identity_morphism(&g);
        let sys = frobenius_system(&id, q()).unwrap();
        for x in g.objects() {
            let triples = sys.triples_at(x);
            assert_eq!(triples.len(), 1);
            assert_eq!(triples[0].b, g.identity(x));
            assert!(triples[0].c.is_basis_arrow(g.identity(x)));
        }
        let v = verify_frobenius_system(&id, &sys);
        assert!(v.ok, "{:?}", v.failures);
    }

    #[test]
    fn subgroup_system_verifies_exhaustively() {
        let phi = z2_in_s3();
        let sys = frobenius_system(&phi, q()).unwrap();
        assert_eq!(sys.triples_at(ObjectId(0)).len(), 3);
        let v = verify_frobenius_system(&phi, &sys);
        assert!(v.ok, "{:?}", v.failures);
        // all homogeneous pairs at the single object: 6 x 6
        assert_eq!(v.pairs_checked, 36);
    }

    #[test]
    fn point_into_pair_groupoid_system() {
        let one = Arc::new(trivial_groupoid(&["1".into()]).unwrap());
        let pg = Arc::new(pair_groupoid(&["1".into(), "2".into()]).unwrap());
        let incl = build_morphism(
            Arc::clone(&one),
            Arc::clone(&pg),
            vec![ObjectId(0)],
            vec![pg.arrow_by_name("(1,1)").unwrap()],
        )
        .unwrap();
        let sys = frobenius_system(&incl, q()).unwrap();
        let x1 = pg.object_by_name("1").unwrap();
        let x2 = pg.object_by_name("2").unwrap();
        assert_eq!(sys.triples_at(x1).len(), 1);
        assert_eq!(sys.triples_at(x2).len(), 1);
        // at the image object the triple is the identity pair
        assert_eq!(sys.triples_at(x1)[0].b, pg.arrow_by_name("(1,1)").unwrap());
        // at the other object, b goes from the image object to it
        let t2 = &sys.triples_at(x2)[0];
        assert_eq!(pg.src(t2.b), x1);
        assert_eq!(pg.tgt(t2.b), x2);
        let v = verify_frobenius_system(&incl, &sys);
        assert!(v.ok, "{:?}", v.failures);
    }

    #[test]
    fn corrupted_system_fails_with_witness() {
        let phi = z2_in_s3();
        let mut sys = frobenius_system(&phi, q()).unwrap();
        sys.corrupt_triple(ObjectId(0), 1);
        let v = verify_frobenius_system(&phi, &sys);
        assert!(!v.ok);
        assert!(!v.failures.is_empty());
    }

    #[test]
    fn module_condition_for_subgroup_inclusion() {
        let phi = z2_in_s3();
        let report = module_condition(&phi, q()).unwrap();
        assert!(report.ok);
        assert_eq!(report.per_object[0].rank, 3);
        // hom module at the unique domain object has total dimension 6
        let total: usize = report.per_domain_object[0]
            .hom_dims
            .iter()
            .map(|&(_, d)| d)
            .sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn module_condition_for_identity_is_rank_one() {
        let g = Arc::new(cyclic_groupoid(3).unwrap());
        let report = module_condition(&identity_morphism(&g), q()).unwrap();
        assert!(report.ok);
        for r in &report.per_object {
            assert_eq!(r.rank, 1);
        }
    }

    #[test]
    fn module_condition_rejects_non_applicable_morphisms() {
        let phi = constant_collapse();
        assert!(matches!(
            module_condition(&phi, q()),
            Err(FrobeniusError::NotApplicable { .. })
        ));
    }

    #[test]
    fn evidence_for_collapse_of_z2_is_consistent_over_q() {
        let z2 = Arc::new(cyclic_groupoid(2).unwrap());
        let one = Arc::new(trivial_groupoid(&["*".into()]).unwrap());
        let collapse = build_morphism(
            Arc::clone(&z2),
            Arc::clone(&one),
            vec![ObjectId(0)],
            vec![ArrowId(0), ArrowId(0)],
        )
        .unwrap();
        let regular = Representation::representable(&z2, ObjectId(0), q());
        let battery = vec![Representation::trivial(&z2, q()), regular];
        let evidence = functor_iso_evidence(&collapse, &battery).unwrap();
        // invariants and coinvariants agree in characteristic zero
        assert!(evidence.consistent);
    }
}
