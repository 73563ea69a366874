//! Induction and co-induction along a groupoid morphism, the reciprocity
//! transposes exhibiting them as right and left adjoints of restriction,
//! and the projection formula.
//!
//! For `phi: H -> G` and a representation `W` of `H`, the induced fibre at a
//! `G`-object `x` is the space of natural families `alpha` assigning to each
//! pair `(u, p)` with `p: x -> phi(u)` a vector `alpha_u(p)` in `W_u`,
//! subject to `alpha_{tgt(h)}(phi(h) p) = W^h(alpha_u(p))` for every
//! `h: u -> u'` of `H`. Two independent computations of this space are kept:
//! a direct linear solve of all naturality constraints, and the
//! orbit/stabilizer normal form (one block of stabilizer-invariant vectors
//! per orbit of the pairs under `h . (u, p) = (tgt(h), phi(h) p)`). The two
//! must agree and the construction asserts they do.
//!
//! The co-induced fibre at `x` is the colimit of `W` over the translation
//! groupoid of the pairs `(a, u)` with `a: phi(u) -> x`, presented as an
//! exact cokernel with canonical bases.

use std::sync::Arc;

use crate::exactlin::{quotient_map, Matrix, Scalar, Subspace};
use crate::groupoid::{ArrowId, ObjectId};
use crate::morphism::{same_groupoid, GroupoidMorphism};
use crate::rep::{restrict, tensor_rep, RepError, RepMorphism, Representation};
use crate::unionfind::UnionFind;

/// One orbit of the induced-fibre pairs, with its invariant block.
#[derive(Clone, Debug)]
pub struct InducedOrbit {
    /// index (into the fibre element list) of the least representative
    pub rep_elem: usize,
    /// canonical basis (rows) of the stabilizer-fixed subspace at the
    /// representative
    pub basis: Subspace,
    /// offset of this orbit's coordinate block inside the fibre
    pub offset: usize,
}

/// The induced fibre at one codomain object.
#[derive(Clone, Debug)]
pub struct InducedFibre {
    /// pairs `(u, p)` with `p: x -> phi(u)`, in lexicographic order
    pub elements: Vec<(ObjectId, ArrowId)>,
    pub orbits: Vec<InducedOrbit>,
    /// orbit index of each element
    pub orbit_of: Vec<usize>,
    /// per element, an arrow moving the orbit representative onto it
    pub transporter: Vec<ArrowId>,
}

impl InducedFibre {
    pub fn element_index(&self, u: ObjectId, p: ArrowId) -> Option<usize> {
        self.elements.iter().position(|&e| e == (u, p))
    }
}

/// An induced representation together with its provenance: the orbit
/// decomposition and invariant bases realizing every fibre.
#[derive(Clone, Debug)]
pub struct InducedRep {
    pub rep: Representation,
    pub fibres: Vec<InducedFibre>,
    /// the representation that was induced
    pub of: Representation,
}

impl InducedRep {
    /// The value in `W_u` of the natural family with fibre coordinates
    /// `coeffs` at the fibre element with index `elem`.
    pub fn value_at(&self, x: ObjectId, coeffs: &[Scalar], elem: usize) -> Vec<Scalar> {
        let fibre = &self.fibres[x.0];
        let (u, _) = fibre.elements[elem];
        let orbit = &fibre.orbits[fibre.orbit_of[elem]];
        let w = &self.of;
        let field = w.field();
        let dim_rep = orbit.basis.ambient_dim();
        // linear combination of the invariant basis at the representative
        let mut at_rep = vec![field.zero(); dim_rep];
        for k in 0..orbit.basis.dim() {
            let row = orbit.basis.basis().row(k);
            let c = &coeffs[orbit.offset + k];
            if c.is_zero() {
                continue;
            }
            for (bi, b) in row.iter().enumerate() {
                if !b.is_zero() {
                    at_rep[bi] = &at_rep[bi] + &(c * b);
                }
            }
        }
        let transported = w.matrix(fibre.transporter[elem]).mul_vec(&at_rep);
        debug_assert_eq!(transported.len(), w.dim(u));
        transported
    }

    /// The evaluation matrix at one fibre element: fibre coordinates to the
    /// value in `W_u`.
    pub fn evaluation_matrix(&self, x: ObjectId, elem: usize) -> Matrix {
        let fibre = &self.fibres[x.0];
        let (u, _) = fibre.elements[elem];
        let w = &self.of;
        let field = w.field();
        let fdim = self.rep.dim(x);
        let mut m = Matrix::zeros(field, w.dim(u), fdim);
        for col in 0..fdim {
            let mut coeffs = vec![field.zero(); fdim];
            coeffs[col] = field.one();
            let val = self.value_at(x, &coeffs, elem);
            for (i, val_i) in val.into_iter().enumerate() {
                m.set(i, col, val_i);
            }
        }
        m
    }

    /// The full-coordinate expansion of the fibre basis: one row per basis
    /// vector, blocks indexed by fibre elements. Used to compare against the
    /// direct naturality solve.
    pub fn expanded_basis(&self, x: ObjectId) -> Matrix {
        let fibre = &self.fibres[x.0];
        let w = &self.of;
        let field = w.field();
        let block_offsets: Vec<usize> = {
            let mut acc = 0;
            let mut out = Vec::new();
            for &(u, _) in &fibre.elements {
                out.push(acc);
                acc += w.dim(u);
            }
            out
        };
        let total: usize = fibre.elements.iter().map(|&(u, _)| w.dim(u)).sum();
        let fdim = self.rep.dim(x);
        let mut rows = Matrix::zeros(field, fdim, total);
        for bi in 0..fdim {
            let mut coeffs = vec![field.zero(); fdim];
            coeffs[bi] = field.one();
            for ei in 0..fibre.elements.len() {
                let val = self.value_at(x, &coeffs, ei);
                for (k, v) in val.into_iter().enumerate() {
                    rows.set(bi, block_offsets[ei] + k, v);
                }
            }
        }
        rows
    }
}

fn induced_fibre_elements(phi: &GroupoidMorphism, x: ObjectId) -> Vec<(ObjectId, ArrowId)> {
    let hg = phi.dom();
    let gg = phi.cod();
    hg.objects()
        .flat_map(|u| gg.arrows().map(move |p| (u, p)))
        .filter(|&(u, p)| gg.src(p) == x && gg.tgt(p) == phi.on_object(u))
        .collect()
}

/// The direct route: the solution space of all naturality constraints on
/// full fibre coordinates, as a canonical kernel basis. Independent of the
/// orbit/stabilizer construction.
pub fn induced_fibre_direct(phi: &GroupoidMorphism, w: &Representation, x: ObjectId) -> Matrix {
    let hg = phi.dom();
    let field = w.field();
    let elements = induced_fibre_elements(phi, x);
    let offsets: Vec<usize> = {
        let mut acc = 0;
        let mut out = Vec::new();
        for &(u, _) in &elements {
            out.push(acc);
            acc += w.dim(u);
        }
        out
    };
    let total: usize = elements.iter().map(|&(u, _)| w.dim(u)).sum();
    let index_of =
        |u: ObjectId, p: ArrowId| elements.iter().position(|&e| e == (u, p)).expect("closed");
    let mut rows = Matrix::zeros(field, 0, total);
    for h in hg.arrows() {
        let wu = w.dim(hg.src(h));
        let wv = w.dim(hg.tgt(h));
        let wh = w.matrix(h);
        for (ei, &(u, p)) in elements.iter().enumerate() {
            if u != hg.src(h) {
                continue;
            }
            let moved = index_of(hg.tgt(h), phi.cod().compose2(phi.on_arrow(h), p));
            // alpha(moved) - W^h alpha(e) = 0
            let mut block = Matrix::zeros(field, wv, total);
            for i in 0..wv {
                let cur = block.get(i, offsets[moved] + i).clone();
                block.set(i, offsets[moved] + i, &cur + &field.one());
                for j in 0..wu {
                    let cur = block.get(i, offsets[ei] + j).clone();
                    block.set(i, offsets[ei] + j, &cur - wh.get(i, j));
                }
            }
            rows = rows.vstack(&block);
        }
    }
    rows.kernel_basis()
}

/// Induction along a morphism. Fibres are computed by the orbit/stabilizer
/// normal form and verified against the direct naturality solve; arrow
/// matrices act by precomposition. The result carries full provenance.
pub fn induce(phi: &GroupoidMorphism, w: &Representation) -> Result<InducedRep, RepError> {
    if !same_groupoid(w.groupoid(), phi.dom()) {
        return Err(RepError::GroupoidMismatch);
    }
    let hg = phi.dom();
    let gg = phi.cod();
    let field = w.field();

    let mut fibres = Vec::new();
    for x in gg.objects() {
        let elements = induced_fibre_elements(phi, x);
        let index_of =
            |u: ObjectId, p: ArrowId| elements.iter().position(|&e| e == (u, p)).expect("closed");
        let mut uf = UnionFind::new(elements.len());
        for (ei, &(u, p)) in elements.iter().enumerate() {
            for h in hg.arrows() {
                if hg.src(h) == u {
                    let moved = index_of(hg.tgt(h), gg.compose2(phi.on_arrow(h), p));
                    uf.union(ei, moved);
                }
            }
        }
        let blocks = uf.blocks();
        // transporters by breadth-first search from each representative
        let mut transporter: Vec<Option<ArrowId>> = vec![None; elements.len()];
        let mut orbit_of = vec![0usize; elements.len()];
        for (oi, block) in blocks.iter().enumerate() {
            for &e in block {
                orbit_of[e] = oi;
            }
            let rep = block[0];
            let (u0, _) = elements[rep];
            transporter[rep] = Some(hg.identity(u0));
            let mut queue = std::collections::VecDeque::from([rep]);
            while let Some(cur) = queue.pop_front() {
                let (u, p) = elements[cur];
                let t_cur = transporter[cur].unwrap();
                for h in hg.arrows() {
                    if hg.src(h) == u {
                        let moved = index_of(hg.tgt(h), gg.compose2(phi.on_arrow(h), p));
                        if transporter[moved].is_none() {
                            transporter[moved] = Some(hg.compose2(h, t_cur));
                            queue.push_back(moved);
                        }
                    }
                }
            }
        }
        let transporter: Vec<ArrowId> = transporter
            .into_iter()
            .map(|t| t.expect("orbit members are reachable"))
            .collect();
        // invariant block per orbit: fixed space of the stabilizer, which
        // consists of the loops mapped to the identity
        let mut orbits = Vec::new();
        let mut offset = 0;
        for block in &blocks {
            let rep = block[0];
            let (u0, p0) = elements[rep];
            let d = w.dim(u0);
            let mut stacked = Matrix::zeros(field, 0, d);
            for h in hg.loops_at(u0) {
                if phi.on_arrow(h) == gg.identity(phi.on_object(u0)) {
                    debug_assert_eq!(
                        gg.compose2(phi.on_arrow(h), p0),
                        p0,
                        "stabilizer moves nothing"
                    );
                    stacked = stacked.vstack(&w.matrix(h).sub(&Matrix::identity(field, d)));
                }
            }
            let basis = Subspace::from_rows(&stacked.kernel_basis());
            let dim = basis.dim();
            orbits.push(InducedOrbit {
                rep_elem: rep,
                basis,
                offset,
            });
            offset += dim;
        }
        fibres.push(InducedFibre {
            elements,
            orbits,
            orbit_of,
            transporter,
        });
    }

    let dims: Vec<usize> = fibres
        .iter()
        .map(|f| f.orbits.iter().map(|o| o.basis.dim()).sum())
        .collect();

    let mut provisional = InducedRep {
        rep: Representation::zero(gg, field),
        fibres,
        of: w.clone(),
    };

    // arrow action by precomposition: the image family of alpha under g
    // evaluates at (u, q) to alpha(u, q g)
    let mut matrices = Vec::new();
    for g in gg.arrows() {
        let s = gg.src(g);
        let t = gg.tgt(g);
        let mut m = Matrix::zeros(field, dims[t.0], dims[s.0]);
        for col in 0..dims[s.0] {
            let mut coeffs = vec![field.zero(); dims[s.0]];
            coeffs[col] = field.one();
            let tgt_fibre = &provisional.fibres[t.0];
            for orbit in &tgt_fibre.orbits {
                let (u0, p0) = tgt_fibre.elements[orbit.rep_elem];
                let src_elem = provisional.fibres[s.0]
                    .element_index(u0, gg.compose2(p0, g))
                    .expect("precomposition lands in the source fibre");
                let val = provisional.value_at(s, &coeffs, src_elem);
                let coords = orbit
                    .basis
                    .coords_of(&val)
                    .expect("image values are stabilizer-invariant");
                for (k, c) in coords.into_iter().enumerate() {
                    m.set(orbit.offset + k, col, c);
                }
            }
        }
        matrices.push(m);
    }
    provisional.rep = Representation::new(Arc::clone(gg), field, dims, matrices)?;

    // the two routes agree: equal dimensions and identical row spaces
    for x in gg.objects() {
        let direct = induced_fibre_direct(phi, w, x);
        assert_eq!(
            direct.rows(),
            provisional.rep.dim(x),
            "direct solve and orbit formula give one dimension"
        );
        let orbit_rows = provisional.expanded_basis(x);
        assert!(
            Subspace::from_rows(&direct).eq_subspace(&Subspace::from_rows(&orbit_rows)),
            "direct solve and orbit formula span one space"
        );
    }
    Ok(provisional)
}

/// The co-induced fibre data at one codomain object.
#[derive(Clone, Debug)]
pub struct CoinducedFibre {
    /// pairs `(a, u)` with `a: phi(u) -> x`, in lexicographic order
    pub elements: Vec<(ArrowId, ObjectId)>,
    /// block offset of each element inside the direct sum
    pub offsets: Vec<usize>,
    /// projection from the direct sum onto the colimit
    pub proj: Matrix,
    /// a section of the projection
    pub sect: Matrix,
}

impl CoinducedFibre {
    pub fn element_index(&self, a: ArrowId, u: ObjectId) -> Option<usize> {
        self.elements.iter().position(|&e| e == (a, u))
    }
}

/// A co-induced representation with its colimit presentations.
#[derive(Clone, Debug)]
pub struct CoinducedRep {
    pub rep: Representation,
    pub fibres: Vec<CoinducedFibre>,
    pub of: Representation,
}

impl CoinducedRep {
    /// The structural map from `W_u` at the element `(a, u)` into the fibre.
    pub fn upsilon(&self, x: ObjectId, elem: usize) -> Matrix {
        let fibre = &self.fibres[x.0];
        let (_, u) = fibre.elements[elem];
        let w = &self.of;
        let field = w.field();
        let mut incl = Matrix::zeros(field, fibre.proj.cols(), w.dim(u));
        for j in 0..w.dim(u) {
            incl.set(fibre.offsets[elem] + j, j, field.one());
        }
        fibre.proj.mul(&incl)
    }
}

/// Co-induction along a morphism: each fibre is the cokernel of the
/// relations `incl(a phi(h), src(h))(v) = incl(a, u)(W^h v)` ranging over
/// translation arrows, with canonical bases from the reduced presentation;
/// arrow matrices are induced blockwise through the structural maps.
pub fn coinduce(phi: &GroupoidMorphism, w: &Representation) -> Result<CoinducedRep, RepError> {
    if !same_groupoid(w.groupoid(), phi.dom()) {
        return Err(RepError::GroupoidMismatch);
    }
    let hg = phi.dom();
    let gg = phi.cod();
    let field = w.field();

    let mut fibres = Vec::new();
    for x in gg.objects() {
        let elements: Vec<(ArrowId, ObjectId)> = gg
            .arrows()
            .flat_map(|a| hg.objects().map(move |u| (a, u)))
            .filter(|&(a, u)| gg.tgt(a) == x && gg.src(a) == phi.on_object(u))
            .collect();
        let offsets: Vec<usize> = {
            let mut acc = 0;
            let mut out = Vec::new();
            for &(_, u) in &elements {
                out.push(acc);
                acc += w.dim(u);
            }
            out
        };
        let total: usize = elements.iter().map(|&(_, u)| w.dim(u)).sum();
        let index_of =
            |a: ArrowId, u: ObjectId| elements.iter().position(|&e| e == (a, u)).expect("closed");
        // relations: the class of (a phi(h), src(h)) with value v equals
        // the class of (a, u) with value W^h v, for every h with tgt(h) = u
        let mut rel_rows = Matrix::zeros(field, 0, total);
        for &(a, u) in &elements {
            let ei = index_of(a, u);
            for h in hg.arrows() {
                if hg.tgt(h) != u {
                    continue;
                }
                let moved = index_of(gg.compose2(a, phi.on_arrow(h)), hg.src(h));
                let wh = w.matrix(h);
                let ds = w.dim(hg.src(h));
                for j in 0..ds {
                    let mut row = vec![field.zero(); total];
                    row[offsets[moved] + j] = field.one();
                    for i in 0..w.dim(u) {
                        row[offsets[ei] + i] = &row[offsets[ei] + i] - wh.get(i, j);
                    }
                    rel_rows = rel_rows.vstack(&Matrix::from_rows(field, total, vec![row]));
                }
            }
        }
        let sub = Subspace::from_rows(&rel_rows);
        let (proj, sect) = quotient_map(total, &sub);
        fibres.push(CoinducedFibre {
            elements,
            offsets,
            proj,
            sect,
        });
    }

    let dims: Vec<usize> = fibres.iter().map(|f| f.proj.rows()).collect();
    let provisional = CoinducedRep {
        rep: Representation::zero(gg, field),
        fibres,
        of: w.clone(),
    };

    // matrix of g: determined by  M . upsilon^{s}(a, u) = upsilon^{t}(g a, u)
    let mut matrices = Vec::new();
    for g in gg.arrows() {
        let s = gg.src(g);
        let t = gg.tgt(g);
        let sf = &provisional.fibres[s.0];
        let total_s = sf.proj.cols();
        let mut blockwise = Matrix::zeros(field, dims[t.0], total_s);
        for (ei, &(a, u)) in sf.elements.iter().enumerate() {
            let moved = provisional.fibres[t.0]
                .element_index(gg.compose2(g, a), u)
                .expect("postcomposition lands in the target fibre");
            let ups = provisional.upsilon(t, moved);
            for j in 0..w.dim(u) {
                for i in 0..dims[t.0] {
                    blockwise.set(i, sf.offsets[ei] + j, ups.get(i, j).clone());
                }
            }
        }
        let m = blockwise.mul(&sf.sect);
        // well defined on the quotient: the blockwise map kills relations
        assert_eq!(
            m.mul(&sf.proj),
            blockwise,
            "co-induced action is well defined on the colimit"
        );
        matrices.push(m);
    }
    let rep = Representation::new(Arc::clone(gg), field, dims, matrices)?;
    Ok(CoinducedRep {
        rep,
        fibres: provisional.fibres,
        of: provisional.of,
    })
}

/// The transpose sending `sigma: restrict(phi, V) -> W` to
/// `Psi(sigma): V -> induce(phi, W)`: the component at `x` sends `v` to the
/// natural family `p -> sigma_u(V^p v)`.
pub fn psi_transpose(
    phi: &GroupoidMorphism,
    v: &Representation,
    ind: &InducedRep,
    sigma: &RepMorphism,
) -> Result<RepMorphism, RepError> {
    let gg = phi.cod();
    let field = v.field();
    let mut components = Vec::new();
    for x in gg.objects() {
        let fdim = ind.rep.dim(x);
        let mut m = Matrix::zeros(field, fdim, v.dim(x));
        let fibre = &ind.fibres[x.0];
        for col in 0..v.dim(x) {
            let mut e_j = vec![field.zero(); v.dim(x)];
            e_j[col] = field.one();
            for orbit in &fibre.orbits {
                let (u0, p0) = fibre.elements[orbit.rep_elem];
                // value at the representative: sigma_{u0}(V^{p0} e_j)
                let moved = v.matrix(p0).mul_vec(&e_j);
                let val = sigma.component(u0).mul_vec(&moved);
                let coords = orbit
                    .basis
                    .coords_of(&val)
                    .expect("transposed values are stabilizer-invariant");
                for (k, c) in coords.into_iter().enumerate() {
                    m.set(orbit.offset + k, col, c);
                }
            }
        }
        components.push(m);
    }
    RepMorphism::new(v.clone(), ind.rep.clone(), components)
}

/// The inverse transpose sending `gamma: V -> induce(phi, W)` to
/// `Phi(gamma): restrict(phi, V) -> W`: evaluate the natural family at the
/// identity pair.
pub fn phi_transpose(
    phi: &GroupoidMorphism,
    v: &Representation,
    ind: &InducedRep,
    gamma: &RepMorphism,
) -> Result<RepMorphism, RepError> {
    let hg = phi.dom();
    let gg = phi.cod();
    let restricted = restrict(phi, v)?;
    let mut components = Vec::new();
    for u in hg.objects() {
        let x = phi.on_object(u);
        let fibre = &ind.fibres[x.0];
        let elem = fibre
            .element_index(u, gg.identity(x))
            .expect("the identity pair lies in its own fibre");
        let eval = ind.evaluation_matrix(x, elem);
        components.push(eval.mul(gamma.component(x)));
    }
    RepMorphism::new(restricted, ind.of.clone(), components)
}

/// The transpose sending `theta: coinduce(phi, W) -> V` to
/// `Gamma(theta): W -> restrict(phi, V)`: precompose with the structural map
/// at the identity pair.
pub fn gamma_transpose(
    phi: &GroupoidMorphism,
    v: &Representation,
    coind: &CoinducedRep,
    theta: &RepMorphism,
) -> Result<RepMorphism, RepError> {
    let hg = phi.dom();
    let gg = phi.cod();
    let restricted = restrict(phi, v)?;
    let mut components = Vec::new();
    for u in hg.objects() {
        let x = phi.on_object(u);
        let fibre = &coind.fibres[x.0];
        let elem = fibre
            .element_index(gg.identity(x), u)
            .expect("the identity pair lies in its own fibre");
        let ups = coind.upsilon(x, elem);
        components.push(theta.component(x).mul(&ups));
    }
    RepMorphism::new(coind.of.clone(), restricted, components)
}

/// The transpose sending `delta: W -> restrict(phi, V)` to
/// `Sigma(delta): coinduce(phi, W) -> V`, the colimit-induced map with
/// blocks `V^a . delta_u`.
pub fn sigma_transpose(
    phi: &GroupoidMorphism,
    v: &Representation,
    coind: &CoinducedRep,
    delta: &RepMorphism,
) -> Result<RepMorphism, RepError> {
    let gg = phi.cod();
    let field = v.field();
    let w = &coind.of;
    let mut components = Vec::new();
    for x in gg.objects() {
        let fibre = &coind.fibres[x.0];
        let total = fibre.proj.cols();
        let mut blockwise = Matrix::zeros(field, v.dim(x), total);
        for (ei, &(a, u)) in fibre.elements.iter().enumerate() {
            let block = v.matrix(a).mul(delta.component(u));
            for j in 0..w.dim(u) {
                for i in 0..v.dim(x) {
                    blockwise.set(i, fibre.offsets[ei] + j, block.get(i, j).clone());
                }
            }
        }
        let m = blockwise.mul(&fibre.sect);
        assert_eq!(
            m.mul(&fibre.proj),
            blockwise,
            "colimit-induced map is well defined"
        );
        components.push(m);
    }
    RepMorphism::new(coind.rep.clone(), v.clone(), components)
}

/// Outcome of the projection-formula check.
#[derive(Clone, Debug)]
pub struct ProjectionFormulaReport {
    /// the natural map from `induce(W) (x) V` to `induce(W (x) restrict(V))`
    pub comparison: RepMorphism,
    /// true when every component is invertible (exact rank check)
    pub invertible: bool,
}

/// Builds the natural comparison `eta (x) v  ->  [p -> eta_u(p) (x) V^p(v)]`
/// between `induce(phi, W) (x) V` and `induce(phi, W (x) restrict(phi, V))`,
/// validates naturality, and decides invertibility by exact rank.
pub fn verify_projection_formula(
    phi: &GroupoidMorphism,
    w: &Representation,
    v: &Representation,
) -> Result<ProjectionFormulaReport, RepError> {
    let gg = phi.cod();
    let field = w.field();
    if v.field() != field {
        return Err(RepError::FieldMismatch);
    }
    let ind_w = induce(phi, w)?;
    let rhs = tensor_rep(&ind_w.rep, v)?;
    let inner = tensor_rep(w, &restrict(phi, v)?)?;
    let lhs = induce(phi, &inner)?;

    let mut components = Vec::new();
    for x in gg.objects() {
        let fdim_w = ind_w.rep.dim(x);
        let vd = v.dim(x);
        let mut m = Matrix::zeros(field, lhs.rep.dim(x), fdim_w * vd);
        for bw in 0..fdim_w {
            let mut coeffs = vec![field.zero(); fdim_w];
            coeffs[bw] = field.one();
            for j in 0..vd {
                let col = bw * vd + j;
                let mut e_j = vec![field.zero(); vd];
                e_j[j] = field.one();
                let tgt_fibre = &lhs.fibres[x.0];
                for orbit in &tgt_fibre.orbits {
                    let (u0, p0) = tgt_fibre.elements[orbit.rep_elem];
                    let src_elem = ind_w.fibres[x.0]
                        .element_index(u0, p0)
                        .expect("the two fibres share their element lists");
                    let w_val = ind_w.value_at(x, &coeffs, src_elem);
                    let v_val = v.matrix(p0).mul_vec(&e_j);
                    // Kronecker flatten: w outer, v inner
                    let mut combined = vec![field.zero(); w.dim(u0) * v_val.len()];
                    for (wi, wv) in w_val.iter().enumerate() {
                        if wv.is_zero() {
                            continue;
                        }
                        for (vi, vv) in v_val.iter().enumerate() {
                            if !vv.is_zero() {
                                combined[wi * v_val.len() + vi] = wv * vv;
                            }
                        }
                    }
                    let coords = orbit
                        .basis
                        .coords_of(&combined)
                        .expect("comparison values are stabilizer-invariant");
                    for (k, c) in coords.into_iter().enumerate() {
                        m.set(orbit.offset + k, col, c);
                    }
                }
            }
        }
        components.push(m);
    }
    let comparison = RepMorphism::new(rhs, lhs.rep.clone(), components)?;
    let invertible = comparison.components().iter().all(|c| c.is_invertible());
    Ok(ProjectionFormulaReport {
        comparison,
        invertible,
    })
}

/// A small battery of representations used for functor-level evidence:
/// the trivial representation and its square, representables at the first
/// and last objects, and the dual of the first representable.
pub fn representation_battery(
    groupoid: &Arc<crate::groupoid::FiniteGroupoid>,
    field: crate::exactlin::Field,
) -> Vec<Representation> {
    let one = Representation::trivial(groupoid, field);
    let doubled = {
        let dims = vec![2; groupoid.n_objects()];
        let matrices = vec![Matrix::identity(field, 2); groupoid.n_arrows()];
        Representation::new(Arc::clone(groupoid), field, dims, matrices)
            .expect("constant identity matrices are functorial")
    };
    let repr = Representation::representable(groupoid, ObjectId(0), field);
    let last = Representation::representable(groupoid, ObjectId(groupoid.n_objects() - 1), field);
    vec![one, doubled, crate::rep::dual_rep(&repr), repr, last]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Field;
    use crate::groupoid::{cyclic_groupoid, trivial_groupoid};
    use crate::morphism::{build_morphism, identity_morphism};
    use crate::rep::hom_space;

    fn q() -> Field {
        Field::Rationals
    }

    fn one_in_z3() -> GroupoidMorphism {
        let one = Arc::new(trivial_groupoid(&["*".into()]).unwrap());
        let z3 = Arc::new(cyclic_groupoid(3).unwrap());
        build_morphism(one, z3, vec![ObjectId(0)], vec![ArrowId(0)]).unwrap()
    }

    #[test]
    fn induction_along_identity_is_the_identity() {
        let g = Arc::new(cyclic_groupoid(3).unwrap());
        let id = identity_morphism(&g);
        let w = Representation::representable(&g, ObjectId(0), q());
        let ind = induce(&id, &w).unwrap();
        assert_eq!(ind.rep.dims(), w.dims());
        ind.rep.revalidate().unwrap();
    }

    #[test]
    fn inducing_trivial_from_trivial_group_into_z3_gives_dimension_three() {
        let phi = one_in_z3();
        let w = Representation::trivial(phi.dom(), q());
        let ind = induce(&phi, &w).unwrap();
        assert_eq!(ind.rep.dim(ObjectId(0)), 3);
        for a in phi.cod().arrows() {
            assert!(ind.rep.matrix(a).is_invertible());
        }
    }

    #[test]
    fn coinducing_trivial_from_trivial_group_into_z3_gives_dimension_three() {
        let phi = one_in_z3();
        let w = Representation::trivial(phi.dom(), q());
        let coind = coinduce(&phi, &w).unwrap();
        assert_eq!(coind.rep.dim(ObjectId(0)), 3);
        coind.rep.revalidate().unwrap();
    }

    #[test]
    fn coinduction_along_identity_is_the_identity() {
        let g = Arc::new(cyclic_groupoid(3).unwrap());
        let id = identity_morphism(&g);
        let w = Representation::representable(&g, ObjectId(0), q());
        let coind = coinduce(&id, &w).unwrap();
        assert_eq!(coind.rep.dims(), w.dims());
    }

    #[test]
    fn coinducing_zero_gives_zero() {
        let phi = one_in_z3();
        let w = Representation::zero(phi.dom(), q());
        let coind = coinduce(&phi, &w).unwrap();
        assert_eq!(coind.rep.total_dim(), 0);
    }

    #[test]
    fn right_adjunction_round_trips_on_hom_bases() {
        let phi = one_in_z3();
        let v = Representation::representable(phi.cod(), ObjectId(0), q());
        let w = Representation::trivial(phi.dom(), q());
        let ind = induce(&phi, &w).unwrap();
        let restricted = restrict(&phi, &v).unwrap();

        let from_sigma = hom_space(&restricted, &w).unwrap();
        for sigma in &from_sigma {
            let psi = psi_transpose(&phi, &v, &ind, sigma).unwrap();
            let back = phi_transpose(&phi, &v, &ind, &psi).unwrap();
            assert!(back.components_equal(sigma));
        }
        let from_gamma = hom_space(&v, &ind.rep).unwrap();
        for gamma in &from_gamma {
            let phi_t = phi_transpose(&phi, &v, &ind, gamma).unwrap();
            let back = psi_transpose(&phi, &v, &ind, &phi_t).unwrap();
            assert!(back.components_equal(gamma));
        }
        assert_eq!(from_sigma.len(), from_gamma.len());
    }

    #[test]
    fn left_adjunction_round_trips_on_hom_bases() {
        let phi = one_in_z3();
        let v = Representation::representable(phi.cod(), ObjectId(0), q());
        let w = Representation::trivial(phi.dom(), q());
        let coind = coinduce(&phi, &w).unwrap();
        let restricted = restrict(&phi, &v).unwrap();

        let from_delta = hom_space(&w, &restricted).unwrap();
        for delta in &from_delta {
            let sig = sigma_transpose(&phi, &v, &coind, delta).unwrap();
            let back = gamma_transpose(&phi, &v, &coind, &sig).unwrap();
            assert!(back.components_equal(delta));
        }
        let from_theta = hom_space(&coind.rep, &v).unwrap();
        for theta in &from_theta {
            let gam = gamma_transpose(&phi, &v, &coind, theta).unwrap();
            let back = sigma_transpose(&phi, &v, &coind, &gam).unwrap();
            assert!(back.components_equal(theta));
        }
        assert_eq!(from_delta.len(), from_theta.len());
    }

    #[test]
    fn projection_formula_with_trivial_outer_factor() {
        let phi = one_in_z3();
        let w = Representation::trivial(phi.dom(), q());
        let v = Representation::trivial(phi.cod(), q());
        let report = verify_projection_formula(&phi, &w, &v).unwrap();
        assert!(report.invertible);
        for c in report.comparison.components() {
            assert!(c.is_identity());
        }
    }

    #[test]
    fn projection_formula_on_a_nontrivial_pair() {
        let phi = one_in_z3();
        let w = Representation::trivial(phi.dom(), q());
        let v = Representation::representable(phi.cod(), ObjectId(0), q());
        let report = verify_projection_formula(&phi, &w, &v).unwrap();
        assert!(report.invertible);
    }

    #[test]
    fn battery_has_at_least_four_members() {
        let g = Arc::new(cyclic_groupoid(3).unwrap());
        let battery = representation_battery(&g, q());
        assert!(battery.len() >= 4);
        for rep in &battery {
            rep.revalidate().unwrap();
        }
    }
}
