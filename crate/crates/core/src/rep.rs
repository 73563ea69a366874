//! Linear representations of finite groupoids over an exact field.
//!
//! A representation assigns a dimension to every object and an invertible
//! matrix to every arrow, functorially: identities go to identity matrices
//! and the matrix of `fg` is the product of the matrices. Zero-dimensional
//! fibres are allowed; all the degenerate matrix shapes they produce are
//! well defined.
//!
//! Besides tensor and hom constructions this module computes invariant
//! subrepresentations, coinvariant quotients, limits and colimits of the
//! underlying functor, full hom-spaces between representations, restriction
//! along a morphism, the correspondence between representations of a
//! quotient groupoid and representations trivial on the subgroupoid, and
//! invariants under a normal subgroupoid.

use std::sync::Arc;

use crate::exactlin::{quotient_map, Field, Matrix, Scalar, Subspace};
use crate::groupoid::{ArrowId, FiniteGroupoid, ObjectId};
use crate::morphism::{kernel, same_groupoid, GroupoidMorphism, NormalSubgroupoid};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("matrix of {arrow} has shape {got} instead of {expected}")]
    ShapeMismatch {
        arrow: String,
        got: String,
        expected: String,
    },
    #[error("identity of {object} is not the identity matrix")]
    IdentityViolation { object: String },
    #[error("functoriality fails on the composable pair ({f}, {g})")]
    FunctorialityViolation { f: String, g: String },
    #[error("matrix of {arrow} is not invertible")]
    NotInvertible { arrow: String },
    #[error("representations live on different groupoids")]
    GroupoidMismatch,
    #[error("representations live over different fields")]
    FieldMismatch,
    #[error("naturality fails at arrow {arrow}")]
    NotNatural { arrow: String },
    #[error("component at {object} has the wrong shape")]
    ComponentShape { object: String },
    #[error("representation is not trivial on the subgroupoid: witness {arrow}")]
    NotTrivialOnN { arrow: String },
    #[error("{0}")]
    Invalid(String),
}

/// A functorial assignment of exact matrices to the arrows of a groupoid.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    groupoid: Arc<FiniteGroupoid>,
    field: Field,
    dims: Vec<usize>,
    matrices: Vec<Matrix>,
}

impl Representation {
    /// Validates shapes, identity matrices and full functoriality.
    /// Invertibility of every arrow matrix follows (the matrix of the
    /// inverse arrow is a two-sided inverse) and is re-checked cheaply.
    pub fn new(
        groupoid: Arc<FiniteGroupoid>,
        field: Field,
        dims: Vec<usize>,
        matrices: Vec<Matrix>,
    ) -> Result<Representation, RepError> {
        if dims.len() != groupoid.n_objects() || matrices.len() != groupoid.n_arrows() {
            return Err(RepError::Invalid(
                "one dimension per object and one matrix per arrow required".into(),
            ));
        }
        for a in groupoid.arrows() {
            let m = &matrices[a.0];
            let expected = (dims[groupoid.tgt(a).0], dims[groupoid.src(a).0]);
            if m.field() != field {
                return Err(RepError::FieldMismatch);
            }
            if (m.rows(), m.cols()) != expected {
                return Err(RepError::ShapeMismatch {
                    arrow: groupoid.arrow_name(a).to_string(),
                    got: format!("{}x{}", m.rows(), m.cols()),
                    expected: format!("{}x{}", expected.0, expected.1),
                });
            }
        }
        for x in groupoid.objects() {
            if !matrices[groupoid.identity(x).0].is_identity() {
                return Err(RepError::IdentityViolation {
                    object: groupoid.object_name(x).to_string(),
                });
            }
        }
        for f in groupoid.arrows() {
            for g in groupoid.arrows() {
                if let Some(fg) = groupoid.compose(f, g) {
                    if matrices[fg.0] != matrices[f.0].mul(&matrices[g.0]) {
                        return Err(RepError::FunctorialityViolation {
                            f: groupoid.arrow_name(f).to_string(),
                            g: groupoid.arrow_name(g).to_string(),
                        });
                    }
                }
            }
        }
        for a in groupoid.arrows() {
            let inv = groupoid.inverse(a);
            if !matrices[inv.0].mul(&matrices[a.0]).is_identity() {
                return Err(RepError::NotInvertible {
                    arrow: groupoid.arrow_name(a).to_string(),
                });
            }
        }
        Ok(Representation {
            groupoid,
            field,
            dims,
            matrices,
        })
    }

    /// Re-runs the full validation; construction already guarantees it.
    pub fn revalidate(&self) -> Result<(), RepError> {
        Representation::new(
            Arc::clone(&self.groupoid),
            self.field,
            self.dims.clone(),
            self.matrices.clone(),
        )
        .map(|_| ())
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, x: ObjectId) -> usize {
        self.dims[x.0]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn matrix(&self, a: ArrowId) -> &Matrix {
        &self.matrices[a.0]
    }

    /// All fibres one-dimensional with entry 1.
    pub fn trivial(groupoid: &Arc<FiniteGroupoid>, field: Field) -> Representation {
        let dims = vec![1; groupoid.n_objects()];
        let matrices = vec![Matrix::identity(field, 1); groupoid.n_arrows()];
        Representation::new(Arc::clone(groupoid), field, dims, matrices)
            .expect("the trivial representation is valid")
    }

    /// Every fibre zero-dimensional.
    pub fn zero(groupoid: &Arc<FiniteGroupoid>, field: Field) -> Representation {
        let dims = vec![0; groupoid.n_objects()];
        let matrices = vec![Matrix::zeros(field, 0, 0); groupoid.n_arrows()];
        Representation::new(Arc::clone(groupoid), field, dims, matrices)
            .expect("the zero representation is valid")
    }

    /// A one-dimensional representation from a family of nonzero scalars,
    /// one per arrow. Valid exactly when the family is multiplicative on
    /// composable pairs and 1 on identities.
    pub fn one_dimensional(
        groupoid: &Arc<FiniteGroupoid>,
        field: Field,
        values: &[Scalar],
    ) -> Result<Representation, RepError> {
        if values.len() != groupoid.n_arrows() {
            return Err(RepError::Invalid("one scalar per arrow required".into()));
        }
        let dims = vec![1; groupoid.n_objects()];
        let matrices = values
            .iter()
            .map(|v| Matrix::from_rows(field, 1, vec![vec![v.clone()]]))
            .collect();
        Representation::new(Arc::clone(groupoid), field, dims, matrices)
    }

    /// The representable representation at `u`: the fibre over `v` is the
    /// free space on the arrows `u -> v`, and an arrow `h: v -> v'` acts by
    /// left multiplication `a -> ha`. All matrices are permutations.
    pub fn representable(
        groupoid: &Arc<FiniteGroupoid>,
        u: ObjectId,
        field: Field,
    ) -> Representation {
        let g = groupoid;
        let bases: Vec<Vec<ArrowId>> = g.objects().map(|v| g.hom(u, v)).collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let matrices: Vec<Matrix> = g
            .arrows()
            .map(|h| {
                let s = g.src(h);
                let t = g.tgt(h);
                let mut m = Matrix::zeros(field, dims[t.0], dims[s.0]);
                for (j, &a) in bases[s.0].iter().enumerate() {
                    let ha = g.compose2(h, a);
                    let i = bases[t.0].iter().position(|&b| b == ha).unwrap();
                    m.set(i, j, field.one());
                }
                m
            })
            .collect();
        Representation::new(Arc::clone(g), field, dims, matrices)
            .expect("representable representations are valid")
    }
}

/// A natural transformation between two representations of one groupoid:
/// a matrix per object, commuting with every arrow matrix.
#[derive(Clone, Debug)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    components: Vec<Matrix>,
}

impl RepMorphism {
    pub fn new(
        source: Representation,
        target: Representation,
        components: Vec<Matrix>,
    ) -> Result<RepMorphism, RepError> {
        if !same_groupoid(source.groupoid(), target.groupoid()) {
            return Err(RepError::GroupoidMismatch);
        }
        if source.field() != target.field() {
            return Err(RepError::FieldMismatch);
        }
        let g = source.groupoid();
        if components.len() != g.n_objects() {
            return Err(RepError::Invalid("one component per object required".into()));
        }
        for x in g.objects() {
            let c = &components[x.0];
            if (c.rows(), c.cols()) != (target.dim(x), source.dim(x)) {
                return Err(RepError::ComponentShape {
                    object: g.object_name(x).to_string(),
                });
            }
        }
        for a in g.arrows() {
            let lhs = target.matrix(a).mul(&components[g.src(a).0]);
            let rhs = components[g.tgt(a).0].mul(source.matrix(a));
            if lhs != rhs {
                return Err(RepError::NotNatural {
                    arrow: g.arrow_name(a).to_string(),
                });
            }
        }
        Ok(RepMorphism {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn component(&self, x: ObjectId) -> &Matrix {
        &self.components[x.0]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn identity(rep: &Representation) -> RepMorphism {
        let g = rep.groupoid();
        let components = g
            .objects()
            .map(|x| Matrix::identity(rep.field(), rep.dim(x)))
            .collect();
        RepMorphism::new(rep.clone(), rep.clone(), components)
            .expect("the identity transformation is natural")
    }

    /// Componentwise composition `self . earlier`.
    pub fn compose(&self, earlier: &RepMorphism) -> Result<RepMorphism, RepError> {
        let g = self.source.groupoid();
        let components = g
            .objects()
            .map(|x| self.component(x).mul(earlier.component(x)))
            .collect();
        RepMorphism::new(earlier.source.clone(), self.target.clone(), components)
    }

    pub fn components_equal(&self, other: &RepMorphism) -> bool {
        self.components == other.components
    }
}

fn check_compatible(u: &Representation, v: &Representation) -> Result<(), RepError> {
    if !same_groupoid(u.groupoid(), v.groupoid()) {
        return Err(RepError::GroupoidMismatch);
    }
    if u.field() != v.field() {
        return Err(RepError::FieldMismatch);
    }
    Ok(())
}

/// Fibrewise tensor product; matrices are Kronecker products.
pub fn tensor_rep(u: &Representation, v: &Representation) -> Result<Representation, RepError> {
    check_compatible(u, v)?;
    let g = u.groupoid();
    let dims = g.objects().map(|x| u.dim(x) * v.dim(x)).collect();
    let matrices = g
        .arrows()
        .map(|a| u.matrix(a).kron(v.matrix(a)))
        .collect();
    Representation::new(Arc::clone(g), u.field(), dims, matrices)
}

/// The hom representation: the fibre at `x` is the space of linear maps
/// `U_x -> V_x`, flattened column-major (a `dv x du` matrix `s` becomes the
/// vector with entry `s[r, c]` at index `c * dv + r`), and an arrow `g` acts
/// by `s -> V^g . s . U^{g^{-1}}`.
pub fn hom_rep(u: &Representation, v: &Representation) -> Result<Representation, RepError> {
    check_compatible(u, v)?;
    let g = u.groupoid();
    let field = u.field();
    let dims: Vec<usize> = g.objects().map(|x| u.dim(x) * v.dim(x)).collect();
    let matrices: Vec<Matrix> = g
        .arrows()
        .map(|a| {
            let s = g.src(a);
            let t = g.tgt(a);
            let u_back = u.matrix(g.inverse(a));
            let v_fwd = v.matrix(a);
            let (dus, dvs) = (u.dim(s), v.dim(s));
            let (dut, dvt) = (u.dim(t), v.dim(t));
            let mut m = Matrix::zeros(field, dut * dvt, dus * dvs);
            // column (c, r) of the source basis is the matrix unit E_{r c}
            for c in 0..dus {
                for r in 0..dvs {
                    // image = V^a . E_{r c} . U^{a^{-1}}: entry (i, j) is
                    // v_fwd[i, r] * u_back[c, j]
                    let col = c * dvs + r;
                    for j in 0..dut {
                        let ub = u_back.get(c, j);
                        if ub.is_zero() {
                            continue;
                        }
                        for i in 0..dvt {
                            let vf = v_fwd.get(i, r);
                            if !vf.is_zero() {
                                m.set(j * dvt + i, col, vf * ub);
                            }
                        }
                    }
                }
            }
            m
        })
        .collect();
    Representation::new(Arc::clone(g), field, dims, matrices)
}

/// The dual representation, as maps into the trivial one.
pub fn dual_rep(v: &Representation) -> Representation {
    let one = Representation::trivial(v.groupoid(), v.field());
    hom_rep(v, &one).expect("same groupoid and field")
}

/// The invariant subrepresentation together with its embedding: the fibre
/// at `x` is the joint fixed space of all loops at `x`, and arrow matrices
/// restrict (conjugating a loop across an arrow lands in loops again, which
/// is re-verified here by solving for the restricted matrices exactly).
pub fn invariants(v: &Representation) -> (Representation, RepMorphism) {
    let g = v.groupoid();
    let field = v.field();
    let bases: Vec<Subspace> = g
        .objects()
        .map(|x| {
            let d = v.dim(x);
            let mut stacked = Matrix::zeros(field, 0, d);
            for l in g.loops_at(x) {
                stacked = stacked.vstack(&v.matrix(l).sub(&Matrix::identity(field, d)));
            }
            Subspace::from_rows(&stacked.kernel_basis())
        })
        .collect();
    sub_representation(v, &bases)
}

/// The subrepresentation spanned fibrewise by the given stable subspaces,
/// with its embedding.
fn sub_representation(v: &Representation, bases: &[Subspace]) -> (Representation, RepMorphism) {
    let g = v.groupoid();
    let field = v.field();
    let dims: Vec<usize> = bases.iter().map(|b| b.dim()).collect();
    let matrices: Vec<Matrix> = g
        .arrows()
        .map(|a| {
            let s = g.src(a);
            let t = g.tgt(a);
            let mut m = Matrix::zeros(field, dims[t.0], dims[s.0]);
            for j in 0..dims[s.0] {
                let vec = bases[s.0].basis().row_vec(j);
                let image = v.matrix(a).mul_vec(&vec);
                let coords = bases[t.0]
                    .coords_of(&image)
                    .expect("the subspace family is stable under every arrow");
                for (i, c) in coords.into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            m
        })
        .collect();
    let sub = Representation::new(Arc::clone(g), field, dims, matrices)
        .expect("restricting to stable subspaces is functorial");
    let embedding_components: Vec<Matrix> = g
        .objects()
        .map(|x| bases[x.0].basis().transpose())
        .collect();
    let embedding = RepMorphism::new(sub.clone(), v.clone(), embedding_components)
        .expect("the inclusion of a stable family is natural");
    (sub, embedding)
}

/// The coinvariant quotient with its projection: the fibre at `x` divides
/// out the span of `(e - 1) v` over all loops `e` at `x`; arrow matrices
/// descend (verified exactly).
pub fn coinvariants(v: &Representation) -> (Representation, RepMorphism) {
    let g = v.groupoid();
    let field = v.field();
    let mut projs = Vec::new();
    let mut sects = Vec::new();
    for x in g.objects() {
        let d = v.dim(x);
        let mut stacked = Matrix::zeros(field, 0, d);
        for l in g.loops_at(x) {
            // rows span the column space of (V^l - 1)
            stacked = stacked.vstack(&v.matrix(l).sub(&Matrix::identity(field, d)).transpose());
        }
        let sub = Subspace::from_rows(&stacked);
        let (p, s) = quotient_map(d, &sub);
        projs.push(p);
        sects.push(s);
    }
    let dims: Vec<usize> = projs.iter().map(|p| p.rows()).collect();
    let matrices: Vec<Matrix> = g
        .arrows()
        .map(|a| projs[g.tgt(a).0].mul(v.matrix(a)).mul(&sects[g.src(a).0]))
        .collect();
    // exact well-definedness: the descended matrix agrees with the action
    // after projection, i.e. M . proj_s = proj_t . V^a
    for a in g.arrows() {
        let s = g.src(a);
        let t = g.tgt(a);
        let lhs = matrices[a.0].mul(&projs[s.0]);
        let rhs = projs[t.0].mul(v.matrix(a));
        assert_eq!(lhs, rhs, "quotient matrices are well defined");
    }
    let q = Representation::new(Arc::clone(g), field, dims, matrices)
        .expect("coinvariant matrices are functorial");
    let projection =
        RepMorphism::new(v.clone(), q.clone(), projs).expect("the coinvariant projection is natural");
    (q, projection)
}

/// Limit and colimit of the underlying functor, with comparison data.
#[derive(Clone, Debug)]
pub struct LimitReport {
    /// basis of the limit inside the product of all fibres
    pub limit: Subspace,
    /// projection from the direct sum of fibres onto the colimit
    pub colimit_projection: Matrix,
    pub limit_dim: usize,
    pub colimit_dim: usize,
    /// limit of the invariant subrepresentation
    pub invariant_limit_dim: usize,
    /// colimit of the coinvariant quotient
    pub coinvariant_colimit_dim: usize,
    pub hom_from_trivial_dim: usize,
    pub hom_to_trivial_dim: usize,
}

fn limit_kernel_rows(v: &Representation) -> Matrix {
    let g = v.groupoid();
    let field = v.field();
    let offsets = fibre_offsets(v);
    let total = v.total_dim();
    let mut rows = Matrix::zeros(field, 0, total);
    for a in g.arrows() {
        let s = g.src(a);
        let t = g.tgt(a);
        let mut block = Matrix::zeros(field, v.dim(t), total);
        let m = v.matrix(a);
        for i in 0..v.dim(t) {
            for j in 0..v.dim(s) {
                block.set(i, offsets[s.0] + j, m.get(i, j).clone());
            }
            let cur = block.get(i, offsets[t.0] + i).clone();
            block.set(i, offsets[t.0] + i, &cur - &field.one());
        }
        rows = rows.vstack(&block);
    }
    rows
}

fn colimit_image_rows(v: &Representation) -> Matrix {
    let g = v.groupoid();
    let field = v.field();
    let offsets = fibre_offsets(v);
    let total = v.total_dim();
    let mut image_rows = Matrix::zeros(field, 0, total);
    for a in g.arrows() {
        let s = g.src(a);
        let t = g.tgt(a);
        let m = v.matrix(a);
        for j in 0..v.dim(s) {
            let mut row = vec![field.zero(); total];
            for i in 0..v.dim(t) {
                row[offsets[t.0] + i] = m.get(i, j).clone();
            }
            row[offsets[s.0] + j] = &row[offsets[s.0] + j] - &field.one();
            image_rows = image_rows.vstack(&Matrix::from_rows(field, total, vec![row]));
        }
    }
    image_rows
}

/// Block offsets of the fibres inside the product/sum of all fibres.
pub fn fibre_offsets(v: &Representation) -> Vec<usize> {
    let mut acc = 0;
    let mut out = Vec::with_capacity(v.groupoid().n_objects());
    for x in v.groupoid().objects() {
        out.push(acc);
        acc += v.dim(x);
    }
    out
}

/// Computes the limit (joint equalizer over all arrows) and colimit
/// (coequalizer) of a representation, and reports the dimensions of the
/// comparison objects: the limits/colimits of the invariant and coinvariant
/// representations and the hom-spaces to and from the trivial
/// representation. The comparison maps exist but need not be isomorphisms,
/// so only dimensions are reported, never asserted equal.
pub fn rep_limits(v: &Representation) -> LimitReport {
    let g = v.groupoid();
    let field = v.field();
    let total = v.total_dim();
    let limit = Subspace::from_rows(&limit_kernel_rows(v).kernel_basis());
    let image = Subspace::from_rows(&colimit_image_rows(v));
    let (colimit_projection, _) = quotient_map(total, &image);
    let (inv, _) = invariants(v);
    let (coinv, _) = coinvariants(v);
    let one = Representation::trivial(g, field);
    LimitReport {
        limit_dim: limit.dim(),
        colimit_dim: colimit_projection.rows(),
        invariant_limit_dim: limit_kernel_rows(&inv).kernel_basis().rows(),
        coinvariant_colimit_dim: coinv.total_dim() - colimit_image_rows(&coinv).rank(),
        hom_from_trivial_dim: hom_space(&one, v).map(|b| b.len()).unwrap_or(0),
        hom_to_trivial_dim: hom_space(v, &one).map(|b| b.len()).unwrap_or(0),
        limit,
        colimit_projection,
    }
}

/// A basis of the space of natural transformations `u -> v`, found by
/// solving every naturality constraint as one exact linear system. The
/// basis is canonical (kernel of the constraint matrix in reduced form).
pub fn hom_space(u: &Representation, v: &Representation) -> Result<Vec<RepMorphism>, RepError> {
    check_compatible(u, v)?;
    let g = u.groupoid();
    let field = u.field();
    // unknowns: per object x, the component matrix flattened column-major
    let offsets: Vec<usize> = {
        let mut acc = 0;
        let mut out = Vec::new();
        for x in g.objects() {
            out.push(acc);
            acc += u.dim(x) * v.dim(x);
        }
        out
    };
    let total: usize = g.objects().map(|x| u.dim(x) * v.dim(x)).sum();
    let mut rows = Matrix::zeros(field, 0, total);
    for a in g.arrows() {
        let s = g.src(a);
        let t = g.tgt(a);
        // V^a f_s - f_t U^a = 0, entrywise over (i, j)
        let va = v.matrix(a);
        let ua = u.matrix(a);
        let mut block = Matrix::zeros(field, v.dim(t) * u.dim(s), total);
        for i in 0..v.dim(t) {
            for j in 0..u.dim(s) {
                let r = j * v.dim(t) + i;
                // sum_k va[i,k] f_s[k,j]
                for k in 0..v.dim(s) {
                    let c = offsets[s.0] + j * v.dim(s) + k;
                    let cur = block.get(r, c).clone();
                    block.set(r, c, &cur + va.get(i, k));
                }
                // - sum_k f_t[i,k] ua[k,j]
                for k in 0..u.dim(t) {
                    let c = offsets[t.0] + k * v.dim(t) + i;
                    let cur = block.get(r, c).clone();
                    block.set(r, c, &cur - ua.get(k, j));
                }
            }
        }
        rows = rows.vstack(&block);
    }
    let basis = rows.kernel_basis();
    let mut out = Vec::new();
    for bi in 0..basis.rows() {
        let flat = basis.row(bi);
        let components: Vec<Matrix> = g
            .objects()
            .map(|x| {
                let mut m = Matrix::zeros(field, v.dim(x), u.dim(x));
                for j in 0..u.dim(x) {
                    for i in 0..v.dim(x) {
                        m.set(i, j, flat[offsets[x.0] + j * v.dim(x) + i].clone());
                    }
                }
                m
            })
            .collect();
        out.push(RepMorphism::new(u.clone(), v.clone(), components)?);
    }
    Ok(out)
}

/// Precomposition with a morphism: the restricted representation has
/// `dims = dims . phi` on objects and `matrices = matrices . phi` on arrows.
pub fn restrict(phi: &GroupoidMorphism, v: &Representation) -> Result<Representation, RepError> {
    if !same_groupoid(v.groupoid(), phi.cod()) {
        return Err(RepError::GroupoidMismatch);
    }
    let dom = phi.dom();
    let dims = dom.objects().map(|u| v.dim(phi.on_object(u))).collect();
    let matrices = dom
        .arrows()
        .map(|h| v.matrix(phi.on_arrow(h)).clone())
        .collect();
    Representation::new(Arc::clone(dom), v.field(), dims, matrices)
}

/// Direction of transport across a quotient projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransportDirection {
    /// from the parent groupoid down to the quotient (requires triviality
    /// on the kernel of the projection)
    Descend,
    /// from the quotient up to the parent (plain restriction)
    Lift,
}

/// Transport of representations across a quotient projection
/// `pi: H -> H/N`. Descending sends a representation trivial on the kernel
/// to the quotient representation acting through class representatives;
/// lifting is restriction along `pi`. The two round trips are exact table
/// identities.
pub fn quotient_rep_transport(
    pi: &GroupoidMorphism,
    rep: &Representation,
    direction: TransportDirection,
) -> Result<Representation, RepError> {
    match direction {
        TransportDirection::Lift => restrict(pi, rep),
        TransportDirection::Descend => {
            if !same_groupoid(rep.groupoid(), pi.dom()) {
                return Err(RepError::GroupoidMismatch);
            }
            let parent = pi.dom();
            let quot = pi.cod();
            let ker = kernel(pi);
            for &e in ker.arrows() {
                if !rep.matrix(e).is_identity() {
                    return Err(RepError::NotTrivialOnN {
                        arrow: parent.arrow_name(e).to_string(),
                    });
                }
            }
            // dims and matrices through class representatives; every
            // representative of one class gives the same value
            let mut dims = vec![None; quot.n_objects()];
            for x in parent.objects() {
                let cls = pi.on_object(x);
                let d = rep.dim(x);
                match dims[cls.0] {
                    None => dims[cls.0] = Some(d),
                    Some(prev) => {
                        if prev != d {
                            return Err(RepError::NotTrivialOnN {
                                arrow: parent.object_name(x).to_string(),
                            });
                        }
                    }
                }
            }
            let mut matrices: Vec<Option<Matrix>> = vec![None; quot.n_arrows()];
            for h in parent.arrows() {
                let cls = pi.on_arrow(h);
                let m = rep.matrix(h);
                match &matrices[cls.0] {
                    None => matrices[cls.0] = Some(m.clone()),
                    Some(prev) => {
                        if prev != m {
                            return Err(RepError::NotTrivialOnN {
                                arrow: parent.arrow_name(h).to_string(),
                            });
                        }
                    }
                }
            }
            Representation::new(
                Arc::clone(quot),
                rep.field(),
                dims.into_iter().map(Option::unwrap).collect(),
                matrices.into_iter().map(Option::unwrap).collect(),
            )
        }
    }
}

/// The subrepresentation of vectors fixed by all member loops of a normal
/// subgroupoid, with its embedding. Stability under every ambient arrow is
/// exercised while restricting the matrices.
pub fn normal_invariants(
    w: &Representation,
    n: &NormalSubgroupoid,
) -> Result<(Representation, RepMorphism), RepError> {
    if !same_groupoid(w.groupoid(), n.parent()) {
        return Err(RepError::GroupoidMismatch);
    }
    let g = w.groupoid();
    let field = w.field();
    let bases: Vec<Subspace> = g
        .objects()
        .map(|x| {
            let d = w.dim(x);
            let mut stacked = Matrix::zeros(field, 0, d);
            for l in g.loops_at(x) {
                if n.contains(l) {
                    stacked = stacked.vstack(&w.matrix(l).sub(&Matrix::identity(field, d)));
                }
            }
            Subspace::from_rows(&stacked.kernel_basis())
        })
        .collect();
    Ok(sub_representation(w, &bases))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::groupoid::{cyclic_groupoid, pair_groupoid, symmetric_groupoid, trivial_groupoid};
    use crate::morphism::{build_morphism, identity_morphism};

    fn q() -> Field {
        Field::Rationals
    }

    fn z2() -> Arc<FiniteGroupoid> {
        Arc::new(cyclic_groupoid(2).unwrap())
    }

    fn s3() -> Arc<FiniteGroupoid> {
        Arc::new(symmetric_groupoid(3).unwrap())
    }

    /// The two-dimensional representation of the symmetric group on three
    /// letters spanned by differences of coordinates.
    pub(crate) fn s3_standard_rep(g: &Arc<FiniteGroupoid>, field: Field) -> Representation {
        let mats = |name: &str| -> Matrix {
            match name {
                "e" => Matrix::from_i64(field, &[&[1, 0], &[0, 1]]),
                "p102" => Matrix::from_i64(field, &[&[-1, 1], &[0, 1]]),
                "p021" => Matrix::from_i64(field, &[&[1, 0], &[1, -1]]),
                "p210" => Matrix::from_i64(field, &[&[0, -1], &[-1, 0]]),
                "p120" => Matrix::from_i64(field, &[&[0, -1], &[1, -1]]),
                "p201" => Matrix::from_i64(field, &[&[-1, 1], &[-1, 0]]),
                _ => unreachable!(),
            }
        };
        let matrices: Vec<Matrix> = g.arrows().map(|a| mats(g.arrow_name(a))).collect();
        Representation::new(Arc::clone(g), field, vec![2], matrices).unwrap()
    }

    /// The regular representation of the cyclic group of order 2.
    fn z2_regular(field: Field) -> Representation {
        let g = z2();
        let matrices = vec![
            Matrix::identity(field, 2),
            Matrix::from_i64(field, &[&[0, 1], &[1, 0]]),
        ];
        Representation::new(g, field, vec![2], matrices).unwrap()
    }

    #[test]
    fn trivial_representation_is_valid() {
        let g = Arc::new(pair_groupoid(&["a".into(), "b".into()]).unwrap());
        let one = Representation::trivial(&g, q());
        one.revalidate().unwrap();
        assert_eq!(one.total_dim(), 2);
    }

    #[test]
    fn all_one_scalar_family_is_the_trivial_representation() {
        let g = z2();
        let ones: Vec<Scalar> = g.arrows().map(|_| q().one()).collect();
        let rep = Representation::one_dimensional(&g, q(), &ones).unwrap();
        assert_eq!(rep, Representation::trivial(&g, q()));
    }

    #[test]
    fn non_multiplicative_family_is_rejected() {
        let g = z2();
        let vals = vec![q().from_integer(-1), q().one()];
        assert!(Representation::one_dimensional(&g, q(), &vals).is_err());
        let sign = vec![q().one(), q().from_integer(-1)];
        Representation::one_dimensional(&g, q(), &sign).unwrap();
    }

    #[test]
    fn functoriality_violation_is_detected() {
        let g = z2();
        let matrices = vec![Matrix::identity(q(), 1), Matrix::from_i64(q(), &[&[2]])];
        let err = Representation::new(g, q(), vec![1], matrices).unwrap_err();
        assert!(matches!(err, RepError::FunctorialityViolation { .. } | RepError::NotInvertible { .. }));
    }

    #[test]
    fn tensor_multiplies_dims_and_unit_is_neutral() {
        let g = s3();
        let v = s3_standard_rep(&g, q());
        let one = Representation::trivial(v.groupoid(), q());
        let t = tensor_rep(&one, &v).unwrap();
        assert_eq!(t.dims(), v.dims());
        for a in v.groupoid().arrows() {
            assert_eq!(t.matrix(a), v.matrix(a));
        }
        let tt = tensor_rep(&v, &v).unwrap();
        assert_eq!(tt.dim(ObjectId(0)), 4);
        tt.revalidate().unwrap();
    }

    #[test]
    fn tensor_rejects_mismatched_fields() {
        let g = s3();
        let v = s3_standard_rep(&g, q());
        let w = s3_standard_rep(&g, Field::prime(5).unwrap());
        assert!(matches!(tensor_rep(&v, &w), Err(RepError::FieldMismatch)));
    }

    #[test]
    fn hom_rep_with_trivial_source_is_the_target() {
        let g = s3();
        let v = s3_standard_rep(&g, q());
        let one = Representation::trivial(v.groupoid(), q());
        let h = hom_rep(&one, &v).unwrap();
        assert_eq!(h.dims(), v.dims());
        for a in v.groupoid().arrows() {
            assert_eq!(h.matrix(a), v.matrix(a));
        }
    }

    #[test]
    fn double_dual_has_the_same_dims() {
        let g = s3();
        let v = s3_standard_rep(&g, q());
        let dd = dual_rep(&dual_rep(&v));
        assert_eq!(dd.dims(), v.dims());
    }

    #[test]
    fn hom_rep_matches_tensor_with_dual_in_dimension() {
        let g = s3();
        let v = s3_standard_rep(&g, q());
        let w = tensor_rep(&v, &v).unwrap();
        let h = hom_rep(&v, &w).unwrap();
        let t = tensor_rep(&w, &dual_rep(&v)).unwrap();
        assert_eq!(h.dims(), t.dims());
    }

    #[test]
    fn invariants_of_z2_regular() {
        let v = z2_regular(q());
        let (inv, emb) = invariants(&v);
        assert_eq!(inv.dim(ObjectId(0)), 1);
        let b = emb.component(ObjectId(0));
        let col: Vec<Scalar> = (0..b.rows()).map(|i| b.get(i, 0).clone()).collect();
        let swapped = v.matrix(ArrowId(1)).mul_vec(&col);
        assert_eq!(swapped, col);
    }

    #[test]
    fn coinvariants_of_z2_regular() {
        let v = z2_regular(q());
        let (coinv, proj) = coinvariants(&v);
        assert_eq!(coinv.dim(ObjectId(0)), 1);
        assert_eq!(proj.component(ObjectId(0)).rows(), 1);
    }

    #[test]
    fn z2_regular_in_characteristic_two() {
        let f2 = Field::prime(2).unwrap();
        let v = z2_regular(f2);
        let (inv, _) = invariants(&v);
        let (coinv, _) = coinvariants(&v);
        assert_eq!(inv.dim(ObjectId(0)), 1);
        assert_eq!(coinv.dim(ObjectId(0)), 1);
    }

    #[test]
    fn invariants_of_trivial_is_trivial() {
        let g = s3();
        let one = Representation::trivial(&g, q());
        let (inv, _) = invariants(&one);
        assert_eq!(inv.dims(), one.dims());
        let (coinv, _) = coinvariants(&one);
        assert_eq!(coinv.dims(), one.dims());
    }

    #[test]
    fn limits_of_trivial_groupoid_are_products() {
        let g = Arc::new(trivial_groupoid(&["a".into(), "b".into(), "c".into()]).unwrap());
        let one = Representation::trivial(&g, q());
        let report = rep_limits(&one);
        assert_eq!(report.limit_dim, 3);
        assert_eq!(report.colimit_dim, 3);
    }

    #[test]
    fn limit_dim_equals_hom_from_trivial() {
        let g = s3();
        for v in [z2_regular(q()), s3_standard_rep(&g, q())] {
            let report = rep_limits(&v);
            assert_eq!(report.limit_dim, report.hom_from_trivial_dim);
            assert_eq!(report.colimit_dim, report.hom_to_trivial_dim);
        }
    }

    #[test]
    fn hom_space_contains_identity_and_schur_holds() {
        let g = s3();
        let v = s3_standard_rep(&g, q());
        let endos = hom_space(&v, &v).unwrap();
        assert_eq!(endos.len(), 1, "the standard representation is irreducible");
        let c = endos[0].component(ObjectId(0));
        assert_eq!(c.get(0, 0), c.get(1, 1));
        assert!(c.get(0, 1).is_zero());
    }

    #[test]
    fn restrict_along_identity_is_identity() {
        let g = s3();
        let v = s3_standard_rep(&g, q());
        let id = identity_morphism(v.groupoid());
        let r = restrict(&id, &v).unwrap();
        assert_eq!(r, v);
    }

    #[test]
    fn restriction_composes_along_morphism_composition() {
        let g = s3();
        let z2g = z2();
        let incl = build_morphism(
            Arc::clone(&z2g),
            Arc::clone(&g),
            vec![ObjectId(0)],
            vec![
                g.arrow_by_name("e").unwrap(),
                g.arrow_by_name("p102").unwrap(),
            ],
        )
        .unwrap();
        let id = identity_morphism(&g);
        let v = s3_standard_rep(&g, q());
        let lhs = restrict(&id.compose(&incl).unwrap(), &v).unwrap();
        let rhs = restrict(&incl, &restrict(&id, &v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_of_standard_rep_to_z2_has_invariant_line() {
        let g = s3();
        let z2g = z2();
        let incl = build_morphism(
            Arc::clone(&z2g),
            Arc::clone(&g),
            vec![ObjectId(0)],
            vec![
                g.arrow_by_name("e").unwrap(),
                g.arrow_by_name("p102").unwrap(),
            ],
        )
        .unwrap();
        let v = s3_standard_rep(&g, q());
        let r = restrict(&incl, &v).unwrap();
        let (inv, _) = invariants(&r);
        assert_eq!(inv.dim(ObjectId(0)), 1);
    }

    #[test]
    fn sign_descends_to_the_quotient_by_the_alternating_group() {
        let g = s3();
        let sign_vals: Vec<Scalar> = g
            .arrows()
            .map(|a| {
                if matches!(g.arrow_name(a), "e" | "p120" | "p201") {
                    q().one()
                } else {
                    q().from_integer(-1)
                }
            })
            .collect();
        let sign = Representation::one_dimensional(&g, q(), &sign_vals).unwrap();
        let a3: Vec<ArrowId> = ["e", "p120", "p201"]
            .iter()
            .map(|n| g.arrow_by_name(n).unwrap())
            .collect();
        let n = NormalSubgroupoid::new(Arc::clone(&g), a3).unwrap();
        let (_, pi) = crate::morphism::quotient(&g, &n).unwrap();
        let descended = quotient_rep_transport(&pi, &sign, TransportDirection::Descend).unwrap();
        assert_eq!(descended.groupoid().n_arrows(), 2);
        let nontriv = descended
            .groupoid()
            .arrows()
            .find(|&a| !descended.groupoid().is_identity(a))
            .unwrap();
        assert_eq!(descended.matrix(nontriv), &Matrix::from_i64(q(), &[&[-1]]));
        // round trips are exact table identities
        let lifted = quotient_rep_transport(&pi, &descended, TransportDirection::Lift).unwrap();
        assert_eq!(lifted, sign);
        let back = quotient_rep_transport(&pi, &lifted, TransportDirection::Descend).unwrap();
        assert_eq!(back, descended);
    }

    #[test]
    fn descend_rejects_representations_not_trivial_on_kernel() {
        let g = s3();
        let v = s3_standard_rep(&g, q());
        let a3: Vec<ArrowId> = ["e", "p120", "p201"]
            .iter()
            .map(|n| g.arrow_by_name(n).unwrap())
            .collect();
        let n = NormalSubgroupoid::new(Arc::clone(&g), a3).unwrap();
        let (_, pi) = crate::morphism::quotient(&g, &n).unwrap();
        let err = quotient_rep_transport(&pi, &v, TransportDirection::Descend).unwrap_err();
        assert!(matches!(err, RepError::NotTrivialOnN { .. }));
    }

    #[test]
    fn normal_invariants_of_regular_s3_under_alternating() {
        let g = s3();
        let reg = Representation::representable(&g, ObjectId(0), q());
        assert_eq!(reg.dim(ObjectId(0)), 6);
        let a3: Vec<ArrowId> = ["e", "p120", "p201"]
            .iter()
            .map(|n| g.arrow_by_name(n).unwrap())
            .collect();
        let n = NormalSubgroupoid::new(Arc::clone(&g), a3).unwrap();
        let (inv, _) = normal_invariants(&reg, &n).unwrap();
        assert_eq!(inv.dim(ObjectId(0)), 2);
    }

    #[test]
    fn normal_invariants_under_identities_is_everything() {
        let g = s3();
        let reg = Representation::representable(&g, ObjectId(0), q());
        let n = NormalSubgroupoid::identities(&g);
        let (inv, _) = normal_invariants(&reg, &n).unwrap();
        assert_eq!(inv.dims(), reg.dims());
    }

    #[test]
    fn normal_invariants_under_full_isotropy_equals_invariants() {
        let g = s3();
        let reg = Representation::representable(&g, ObjectId(0), q());
        let n = NormalSubgroupoid::new(Arc::clone(&g), g.arrows().collect()).unwrap();
        let (a, _) = normal_invariants(&reg, &n).unwrap();
        let (b, _) = invariants(&reg);
        assert_eq!(a, b);
    }

    #[test]
    fn representable_of_pair_groupoid_is_one_dimensional_everywhere() {
        let g = Arc::new(pair_groupoid(&["a".into(), "b".into()]).unwrap());
        let r = Representation::representable(&g, ObjectId(0), q());
        assert_eq!(r.dims(), &[1, 1]);
        r.revalidate().unwrap();
    }

    #[test]
    fn zero_dimensional_fibres_are_supported() {
        let g = Arc::new(trivial_groupoid(&["a".into(), "b".into()]).unwrap());
        let dims = vec![0, 2];
        let matrices = vec![Matrix::zeros(q(), 0, 0), Matrix::identity(q(), 2)];
        let v = Representation::new(Arc::clone(&g), q(), dims, matrices).unwrap();
        let (inv, _) = invariants(&v);
        assert_eq!(inv.dim(ObjectId(0)), 0);
        let report = rep_limits(&v);
        assert_eq!(report.limit_dim, 2);
    }
}
