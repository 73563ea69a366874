//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every check is exact; there are no tolerances anywhere.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;

use gfrob::action::ActionSet;
use gfrob::bundle::load_bundle_str;
use gfrob::exactlin::Subspace;
use gfrob::frobenius::{
    algebra_map, frobenius_system, functor_iso_evidence, module_condition, orbit_criterion,
    verify_frobenius_system,
};
use gfrob::functors::{
    coinduce, gamma_transpose, induce, induced_fibre_direct, phi_transpose, psi_transpose,
    representation_battery, sigma_transpose, verify_projection_formula,
};
use gfrob::groupoid::{
    pair_groupoid, trivial_groupoid, ArrowId, CheckConfig, FiniteGroupoid, GroupoidError,
    GroupoidTables, ObjectId,
};
use gfrob::morphism::{
    build_morphism, factor_through, is_normal, kernel, quotient, NormalSubgroupoid,
};
use gfrob::rep::{
    hom_space, quotient_rep_transport, rep_limits, restrict, Representation, TransportDirection,
};

fn finish(criterion: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < budget,
        "{criterion} took {elapsed:?}, budget {budget:?}"
    );
    println!("{criterion}: PASS ({elapsed:?})");
}

/// The constant-map morphism merges two objects; the induced linear map
/// between path algebras sends the product of their idempotents (zero) to
/// zero, while the product of the images is the surviving idempotent.
#[test]
fn criterion_1_constant_map_multiplicativity_failure() {
    let start = Instant::now();
    let dom = Arc::new(trivial_groupoid(&["x".into(), "xp".into()]).unwrap());
    let cod = Arc::new(pair_groupoid(&["y".into()]).unwrap());
    let phi = build_morphism(
        Arc::clone(&dom),
        Arc::clone(&cod),
        vec![ObjectId(0), ObjectId(0)],
        vec![ArrowId(0), ArrowId(0)],
    )
    .unwrap();
    let report = algebra_map(&phi, q());
    assert!(!report.multiplicative);
    let w = report.witness.expect("a witness pair is produced");
    // phi(1_x . 1_x') = phi(0) = 0
    assert!(w.image_of_product.is_zero());
    // phi(1_x) . phi(1_x') = 1_y != 0
    let one_y = cod.identity(ObjectId(0));
    assert!(w.product_of_images.is_basis_arrow(one_y));
    // the witness is the pair of distinct idempotents
    assert_ne!(w.f, w.g);
    assert!(dom.is_identity(w.f) && dom.is_identity(w.g));
    finish("criterion 1 (constant-map multiplicativity failure)", start, Duration::from_secs(1));
}

/// The index-three subgroup inclusion: three fibre orbits, a certificate
/// verified on all 36 homogeneous pairs, and the module condition with a
/// free decomposition of rank 3.
#[test]
fn criterion_2_index_three_subgroup_certificate() {
    let start = Instant::now();
    let phi = z2_in_s3();
    let criterion = orbit_criterion(&phi);
    assert!(criterion.applicable);
    assert_eq!(criterion.frobenius, Some(true));
    assert_eq!(criterion.per_object.len(), 1);
    assert_eq!(criterion.per_object[0].incoming_orbit_count, 3);
    assert_eq!(criterion.per_object[0].outgoing_orbit_count, 3);

    let sys = frobenius_system(&phi, q()).unwrap();
    assert_eq!(sys.triples_at(ObjectId(0)).len(), 3);
    let verification = verify_frobenius_system(&phi, &sys);
    assert!(verification.ok, "{:?}", verification.failures);
    assert_eq!(verification.pairs_checked, 36, "all 6x6 homogeneous pairs");

    let module = module_condition(&phi, q()).unwrap();
    assert!(module.ok);
    assert_eq!(module.per_object[0].rank, 3, "free of rank 3");
    finish("criterion 2 (index-three subgroup certificate)", start, Duration::from_secs(5));
}

/// The implication chain, executed over the whole battery and both fields:
/// orbit criterion, then a verified certificate, then the module condition,
/// then equal induced/co-induced dimensions on a representation battery.
#[test]
fn criterion_3_implication_chain_over_battery() {
    let start = Instant::now();
    let battery = morphism_battery();
    assert!(battery.len() >= 6);
    for (name, phi) in &battery {
        let criterion = orbit_criterion(phi);
        assert!(criterion.applicable, "{name}: criterion applies");
        assert_eq!(criterion.frobenius, Some(true), "{name}");
        for field in [q(), f5()] {
            let sys = frobenius_system(phi, field).unwrap();
            let verification = verify_frobenius_system(phi, &sys);
            assert!(
                verification.ok,
                "{name} over {field}: {:?}",
                verification.failures
            );
            let module = module_condition(phi, field).unwrap();
            assert!(module.ok, "{name} over {field}: module condition");
            let reps = representation_battery(phi.dom(), field);
            assert!(reps.len() >= 4);
            let evidence = functor_iso_evidence(phi, &reps).unwrap();
            assert!(
                evidence.consistent,
                "{name} over {field}: induced and co-induced dimensions agree"
            );
        }
    }
    finish("criterion 3 (implication chain over the battery)", start, Duration::from_secs(60));
}

/// Both adjunctions are exact on full hom-space bases, and the two
/// independently computed hom-space dimensions agree on each side.
#[test]
fn criterion_4_adjunction_exactness() {
    let start = Instant::now();
    for (name, phi) in &morphism_battery() {
        for field in [q(), f5()] {
            let dom_reps = representation_battery(phi.dom(), field);
            let cod_reps = representation_battery(phi.cod(), field);
            for w in &dom_reps {
                let ind = induce(phi, w).unwrap();
                let coind = coinduce(phi, w).unwrap();
                for v in &cod_reps {
                    let restricted = restrict(phi, v).unwrap();

                    // right adjunction: restriction against induction
                    let sigmas = hom_space(&restricted, w).unwrap();
                    let gammas = hom_space(v, &ind.rep).unwrap();
                    assert_eq!(sigmas.len(), gammas.len(), "{name} over {field}");
                    for sigma in &sigmas {
                        let psi = psi_transpose(phi, v, &ind, sigma).unwrap();
                        let back = phi_transpose(phi, v, &ind, &psi).unwrap();
                        assert!(back.components_equal(sigma), "{name} over {field}");
                    }
                    for gamma in &gammas {
                        let phit = phi_transpose(phi, v, &ind, gamma).unwrap();
                        let back = psi_transpose(phi, v, &ind, &phit).unwrap();
                        assert!(back.components_equal(gamma), "{name} over {field}");
                    }

                    // left adjunction: co-induction against restriction
                    let deltas = hom_space(w, &restricted).unwrap();
                    let thetas = hom_space(&coind.rep, v).unwrap();
                    assert_eq!(deltas.len(), thetas.len(), "{name} over {field}");
                    for delta in &deltas {
                        let sig = sigma_transpose(phi, v, &coind, delta).unwrap();
                        let back = gamma_transpose(phi, v, &coind, &sig).unwrap();
                        assert!(back.components_equal(delta), "{name} over {field}");
                    }
                    for theta in &thetas {
                        let gam = gamma_transpose(phi, v, &coind, theta).unwrap();
                        let back = sigma_transpose(phi, v, &coind, &gam).unwrap();
                        assert!(back.components_equal(theta), "{name} over {field}");
                    }
                }
            }
        }
    }
    finish("criterion 4 (adjunction exactness)", start, Duration::from_secs(120));
}

/// The direct naturality solve and the orbit/stabilizer formula produce the
/// same fibres: equal dimensions and identical row spaces, at every object
/// of every battery instance.
#[test]
fn criterion_5_induction_oracle_equivalence() {
    let start = Instant::now();
    for (name, phi) in &morphism_battery() {
        for field in [q(), f5()] {
            for w in &representation_battery(phi.dom(), field) {
                let ind = induce(phi, w).unwrap();
                for x in phi.cod().objects() {
                    let direct = induced_fibre_direct(phi, w, x);
                    assert_eq!(direct.rows(), ind.rep.dim(x), "{name} over {field}");
                    let expanded = ind.expanded_basis(x);
                    assert!(
                        Subspace::from_rows(&direct)
                            .eq_subspace(&Subspace::from_rows(&expanded)),
                        "{name} over {field}: row spaces agree at {:?}",
                        phi.cod().object_name(x)
                    );
                }
            }
        }
    }
    // the named instance: a point into the cyclic group of order three
    let (_, phi) = &morphism_battery()[4];
    let one = Representation::trivial(phi.dom(), q());
    let ind = induce(phi, &one).unwrap();
    assert_eq!(ind.rep.dim(ObjectId(0)), 3, "regular representation size");
    finish("criterion 5 (induction oracle equivalence)", start, Duration::from_secs(60));
}

/// Structural suites: validators with witnesses, orbit agreement with
/// translation-groupoid components, the two normality routes, quotient
/// transport round trips, quotient factorization, projection-formula
/// invertibility and limit/colimit dimension identities.
#[test]
fn criterion_6_structural_suites() {
    let start = Instant::now();

    // groupoid validators reject corrupted tables with witnesses
    {
        let mut composition = Vec::new();
        for i in 0..3usize {
            for j in 0..3usize {
                let mut k = (i + j) % 3;
                if i == 1 && j == 1 {
                    k = 1;
                }
                composition.push((ArrowId(i), ArrowId(j), ArrowId(k)));
            }
        }
        let tables = GroupoidTables {
            object_names: vec!["*".into()],
            arrows: ["e", "a", "b"]
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

    // action validators: the regular action passes, a corrupted unit fails
    {
        let g = s3();
        let reg = ActionSet::regular_right(&g);
        assert_eq!(reg.len(), 6);
        let mut table = std::collections::HashMap::new();
        for f in g.arrows() {
            for h in g.arrows() {
                if let Some(fh) = g.compose(f, h) {
                    let img = if g.is_identity(h) {
                        g.inverse(f) // break the unit law
                    } else {
                        fh
                    };
                    table.insert((f.0, h), img.0);
                }
            }
        }
        let anchor: Vec<ObjectId> = g.arrows().map(|a| g.src(a)).collect();
        let carrier: Vec<String> = g.arrows().map(|a| g.arrow_name(a).to_string()).collect();
        let err = ActionSet::new(
            Arc::clone(&g),
            gfrob::groupoid::Side::Right,
            carrier,
            anchor,
            table,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            gfrob::action::ActionError::UnitViolation { .. }
        ));
    }

    // orbits = components of the translation groupoid, two computations
    for (_, phi) in &morphism_battery() {
        let reg = ActionSet::regular_right(phi.cod());
        let (trans, _) = gfrob::action::translation_groupoid(&reg).unwrap();
        assert_eq!(reg.orbits().len(), trans.connected_components().len());
        let opp = reg.opposite();
        assert_eq!(opp.orbits(), reg.orbits());
    }

    // normality: both routes agree on kernels and on a negative instance
    for (_, phi) in &morphism_battery() {
        let ker = kernel(phi);
        let (ok, _) = is_normal(phi.dom(), ker.arrows());
        assert!(ok);
    }
    {
        let g = s3();
        let subset = vec![
            g.arrow_by_name("e").unwrap(),
            g.arrow_by_name("p102").unwrap(),
        ];
        let (ok, witness) = is_normal(&g, &subset);
        assert!(!ok);
        assert!(witness.is_some());
    }

    // quotient transport round trips are exact table identities
    {
        let g = s3();
        let sign_vals: Vec<_> = g
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
        let (_, pi) = quotient(&g, &n).unwrap();
        let down = quotient_rep_transport(&pi, &sign, TransportDirection::Descend).unwrap();
        let up = quotient_rep_transport(&pi, &down, TransportDirection::Lift).unwrap();
        assert_eq!(up, sign);
        let down_again = quotient_rep_transport(&pi, &up, TransportDirection::Descend).unwrap();
        assert_eq!(down_again, down);
    }

    // quotient factorization: phi_bar . projection = phi, arrow by arrow
    {
        let phi = z2_in_s3();
        // the sign morphism out of the symmetric group factors through the
        // quotient by its kernel
        let s3g = s3();
        let z2 = phi.dom();
        let sign = build_morphism(
            Arc::clone(&s3g),
            Arc::clone(z2),
            vec![ObjectId(0)],
            s3g.arrows()
                .map(|a| {
                    if matches!(s3g.arrow_name(a), "e" | "p120" | "p201") {
                        ArrowId(0)
                    } else {
                        ArrowId(1)
                    }
                })
                .collect(),
        )
        .unwrap();
        let ker = kernel(&sign);
        let (_, pi, bar) = factor_through(&sign, &ker).unwrap();
        for f in s3g.arrows() {
            assert_eq!(bar.on_arrow(pi.on_arrow(f)), sign.on_arrow(f));
        }
    }

    // projection formula: exact-rank invertibility across the battery
    for (name, phi) in &morphism_battery() {
        for field in [q(), f5()] {
            let w = Representation::trivial(phi.dom(), field);
            let v = Representation::representable(phi.cod(), ObjectId(0), field);
            let report = verify_projection_formula(phi, &w, &v).unwrap();
            assert!(report.invertible, "{name} over {field}");
        }
    }
    {
        let phi = z2_in_s3();
        let w = Representation::representable(phi.dom(), ObjectId(0), q());
        let v = s3_standard_rep(phi.cod(), q());
        let report = verify_projection_formula(&phi, &w, &v).unwrap();
        assert!(report.invertible);
    }

    // limit and colimit dimension identities on every battery representation
    for (_, phi) in &morphism_battery() {
        for field in [q(), f5()] {
            for v in representation_battery(phi.cod(), field) {
                let report = rep_limits(&v);
                assert_eq!(report.limit_dim, report.hom_from_trivial_dim);
                assert_eq!(report.colimit_dim, report.hom_to_trivial_dim);
            }
        }
    }

    finish("criterion 6 (structural suites)", start, Duration::from_secs(60));
}

/// The shipped bundle fixture loads and the end-to-end command reports
/// reproduce the headline numbers.
#[test]
fn shipped_bundles_load_and_reproduce_reports() {
    let z2s3 = include_str!("../examples/bundles/z2-in-s3.bundle");
    let bundle = load_bundle_str(z2s3).unwrap();
    assert_eq!(bundle.groupoids.len(), 2);
    assert_eq!(bundle.morphisms.len(), 1);
    assert_eq!(bundle.representations.len(), 3);
    let report = gfrob::cli::execute(
        &gfrob::cli::Command::Frobenius {
            morphism: "phi".into(),
        },
        &bundle,
    )
    .unwrap();
    assert!(report.passed);

    let collapse = include_str!("../examples/bundles/constant-collapse.bundle");
    let bundle = load_bundle_str(collapse).unwrap();
    let report = gfrob::cli::execute(
        &gfrob::cli::Command::AlgebraMap {
            morphism: "f".into(),
        },
        &bundle,
    )
    .unwrap();
    assert!(!report.passed);
    assert_eq!(report.exit_code(), 1);
}
