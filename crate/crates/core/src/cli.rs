//! Command dispatch and machine-readable reports over a loaded bundle.
//!
//! Exit codes: 0 when all checks pass, 1 when a mathematical check fails
//! (the report carries witnesses), 2 on invalid input (unparsable bundles,
//! failed load-time validation, unknown names, inapplicable commands).
//!
//! Reports are deterministic: identical bundle and command produce
//! byte-identical structured output.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bundle::{
    frobenius_system_to_value, groupoid_to_value, load_bundle, morphism_to_value,
    representation_to_value, Bundle, BundleError,
};
use crate::frobenius::{
    algebra_map, frobenius_system, module_condition, orbit_criterion, verify_frobenius_system,
    FrobeniusError, PathAlgebra, SystemFailure,
};
use crate::functors::{
    coinduce, gamma_transpose, induce, phi_transpose, psi_transpose, sigma_transpose,
    verify_projection_formula,
};
use crate::groupoid::Side;
use crate::morphism::quotient;
use crate::rep::{hom_space, restrict};

#[derive(Parser)]
#[command(
    name = "gfrob",
    about = "Finite groupoids over exact fields: representations, induction, Frobenius certificates",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Bundle file to operate on
    #[arg(long, global = true)]
    pub bundle: Option<PathBuf>,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Subcommand)]
pub enum Command {
    /// Load the bundle and re-run every validator
    Validate,
    /// Structural facts about a groupoid: components, isotropy, stars
    Info { groupoid: String },
    /// Orbit partition of an action set
    Orbits { action: String },
    /// Quotient groupoid by a normal subgroupoid, with the projection
    Quotient { groupoid: String, normal: String },
    /// Restrict a representation along a morphism
    Restrict { morphism: String, rep: String },
    /// Induce a representation along a morphism
    Induce { morphism: String, rep: String },
    /// Co-induce a representation along a morphism
    Coinduce { morphism: String, rep: String },
    /// Check one reciprocity adjunction on full hom-space bases
    AdjointCheck {
        morphism: String,
        rep_cod: String,
        rep_dom: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Orbit criterion, certificate, verification and module condition
    Frobenius { morphism: String },
    /// Multiplicativity of the induced map between path algebras
    AlgebraMap { morphism: String },
    /// The natural comparison between the two induced tensor products
    ProjectionFormula {
        morphism: String,
        rep_dom: String,
        rep_cod: String,
    },
}

/// A finished report: overall verdict plus a structured payload.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub payload: Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => {
                let doc = json!({
                    "command": self.command,
                    "status": if self.passed { "pass" } else { "fail" },
                    "report": self.payload,
                });
                serde_json::to_string_pretty(&doc).expect("reports serialize")
            }
            Format::Text => {
                let mut out = format!(
                    "{}: {}\n",
                    self.command,
                    if self.passed { "pass" } else { "FAIL" }
                );
                render_text(&self.payload, 0, &mut out);
                out
            }
        }
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {item}\n")),
                }
            }
        }
        other => out.push_str(&format!("{pad}{other}\n")),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("{0}")]
    Input(String),
}

impl From<FrobeniusError> for CliError {
    fn from(e: FrobeniusError) -> CliError {
        match e {
            FrobeniusError::NotApplicable { reason } => CliError::NotApplicable(reason),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<crate::rep::RepError> for CliError {
    fn from(e: crate::rep::RepError) -> CliError {
        CliError::Input(e.to_string())
    }
}

impl From<crate::morphism::MorphismError> for CliError {
    fn from(e: crate::morphism::MorphismError) -> CliError {
        CliError::Input(e.to_string())
    }
}

pub fn execute(command: &Command, bundle: &Bundle) -> Result<Report, CliError> {
    match command {
        Command::Validate => Ok(Report {
            command: "validate".into(),
            passed: true,
            payload: json!({
                "field": bundle.field.to_string(),
                "groupoids": bundle.groupoids.len(),
                "morphisms": bundle.morphisms.len(),
                "actions": bundle.actions.len(),
                "bisets": bundle.bisets.len(),
                "representations": bundle.representations.len(),
                "normals": bundle.normals.len(),
            }),
        }),
        Command::Info { groupoid } => {
            let g = bundle.groupoid(groupoid)?;
            let components = g.connected_components();
            let isotropy: Value = g
                .objects()
                .map(|x| {
                    (
                        g.object_name(x).to_string(),
                        json!(g.loops_at(x).len()),
                    )
                })
                .collect::<serde_json::Map<String, Value>>()
                .into();
            let stars: Value = g
                .objects()
                .map(|x| {
                    (
                        g.object_name(x).to_string(),
                        json!({
                            "left": g.star(x, Side::Left).map(|s| s.len()).unwrap_or(0),
                            "right": g.star(x, Side::Right).map(|s| s.len()).unwrap_or(0),
                        }),
                    )
                })
                .collect::<serde_json::Map<String, Value>>()
                .into();
            let (is_equiv, witness) = g.is_equivalence_relation_groupoid();
            Ok(Report {
                command: "info".into(),
                passed: true,
                payload: json!({
                    "groupoid": groupoid,
                    "objects": g.n_objects(),
                    "arrows": g.n_arrows(),
                    "components": components.len(),
                    "isotropy_orders": isotropy,
                    "stars": stars,
                    "equivalence_relation": is_equiv,
                    "parallel_pair": witness.map(|(a, b)| json!([
                        g.arrow_name(a), g.arrow_name(b)
                    ])),
                }),
            })
        }
        Command::Orbits { action } => {
            let a = bundle.action(action)?;
            let orbits = a.orbits();
            Ok(Report {
                command: "orbits".into(),
                passed: true,
                payload: json!({
                    "action": action,
                    "orbit_count": orbits.len(),
                    "blocks": orbits.blocks.iter().map(|b| {
                        b.iter().map(|&e| a.element_name(e)).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                    "representatives": orbits.representatives.iter()
                        .map(|&e| a.element_name(e)).collect::<Vec<_>>(),
                }),
            })
        }
        Command::Quotient { groupoid, normal } => {
            let g = bundle.groupoid(groupoid)?;
            let n = bundle.normal(normal)?;
            if !crate::morphism::same_groupoid(g, n.parent()) {
                return Err(CliError::Input(format!(
                    "normal subgroupoid {normal:?} does not live in {groupoid:?}"
                )));
            }
            let (q, pi) = quotient(g, n)?;
            Ok(Report {
                command: "quotient".into(),
                passed: true,
                payload: json!({
                    "quotient": groupoid_to_value(&q),
                    "projection": morphism_to_value(&pi, groupoid, "<quotient>"),
                }),
            })
        }
        Command::Restrict { morphism, rep } => {
            let phi = bundle.morphism(morphism)?;
            let v = bundle.representation(rep)?;
            let restricted = restrict(phi, v)?;
            Ok(Report {
                command: "restrict".into(),
                passed: true,
                payload: json!({
                    "representation": representation_to_value(
                        &restricted,
                        bundle.name_of_groupoid(phi.dom()).unwrap_or("<dom>"),
                    ),
                }),
            })
        }
        Command::Induce { morphism, rep } => {
            let phi = bundle.morphism(morphism)?;
            let w = bundle.representation(rep)?;
            let ind = induce(phi, w)?;
            let gg = phi.cod();
            let hg = phi.dom();
            let provenance: Value = gg
                .objects()
                .map(|x| {
                    let fibre = &ind.fibres[x.0];
                    let reps: Vec<Value> = fibre
                        .orbits
                        .iter()
                        .map(|o| {
                            let (u, p) = fibre.elements[o.rep_elem];
                            json!([hg.object_name(u), gg.arrow_name(p)])
                        })
                        .collect();
                    (gg.object_name(x).to_string(), json!(reps))
                })
                .collect::<serde_json::Map<String, Value>>()
                .into();
            Ok(Report {
                command: "induce".into(),
                passed: true,
                payload: json!({
                    "representation": representation_to_value(
                        &ind.rep,
                        bundle.name_of_groupoid(gg).unwrap_or("<cod>"),
                    ),
                    "orbit_representatives": provenance,
                }),
            })
        }
        Command::Coinduce { morphism, rep } => {
            let phi = bundle.morphism(morphism)?;
            let w = bundle.representation(rep)?;
            let coind = coinduce(phi, w)?;
            let gg = phi.cod();
            let hg = phi.dom();
            let provenance: Value = gg
                .objects()
                .map(|x| {
                    let fibre = &coind.fibres[x.0];
                    let elems: Vec<Value> = fibre
                        .elements
                        .iter()
                        .map(|&(a, u)| json!([gg.arrow_name(a), hg.object_name(u)]))
                        .collect();
                    (gg.object_name(x).to_string(), json!(elems))
                })
                .collect::<serde_json::Map<String, Value>>()
                .into();
            Ok(Report {
                command: "coinduce".into(),
                passed: true,
                payload: json!({
                    "representation": representation_to_value(
                        &coind.rep,
                        bundle.name_of_groupoid(gg).unwrap_or("<cod>"),
                    ),
                    "colimit_elements": provenance,
                }),
            })
        }
        Command::AdjointCheck {
            morphism,
            rep_cod,
            rep_dom,
            side,
        } => {
            let phi = bundle.morphism(morphism)?;
            let v = bundle.representation(rep_cod)?;
            let w = bundle.representation(rep_dom)?;
            let restricted = restrict(phi, v)?;
            let (label, dim_dom_side, dim_cod_side, round_trips) = match side {
                SideArg::Right => {
                    let ind = induce(phi, w)?;
                    let sigmas = hom_space(&restricted, w)?;
                    let gammas = hom_space(v, &ind.rep)?;
                    let mut ok = true;
                    for sigma in &sigmas {
                        let psi = psi_transpose(phi, v, &ind, sigma)?;
                        let back = phi_transpose(phi, v, &ind, &psi)?;
                        ok &= back.components_equal(sigma);
                    }
                    for gamma in &gammas {
                        let phit = phi_transpose(phi, v, &ind, gamma)?;
                        let back = psi_transpose(phi, v, &ind, &phit)?;
                        ok &= back.components_equal(gamma);
                    }
                    ("right", sigmas.len(), gammas.len(), ok)
                }
                SideArg::Left => {
                    let coind = coinduce(phi, w)?;
                    let deltas = hom_space(w, &restricted)?;
                    let thetas = hom_space(&coind.rep, v)?;
                    let mut ok = true;
                    for delta in &deltas {
                        let sig = sigma_transpose(phi, v, &coind, delta)?;
                        let back = gamma_transpose(phi, v, &coind, &sig)?;
                        ok &= back.components_equal(delta);
                    }
                    for theta in &thetas {
                        let gam = gamma_transpose(phi, v, &coind, theta)?;
                        let back = sigma_transpose(phi, v, &coind, &gam)?;
                        ok &= back.components_equal(theta);
                    }
                    ("left", deltas.len(), thetas.len(), ok)
                }
            };
            let dims_agree = dim_dom_side == dim_cod_side;
            Ok(Report {
                command: "adjoint-check".into(),
                passed: round_trips && dims_agree,
                payload: json!({
                    "side": label,
                    "hom_dim_domain_side": dim_dom_side,
                    "hom_dim_codomain_side": dim_cod_side,
                    "dims_agree": dims_agree,
                    "round_trips": round_trips,
                }),
            })
        }
        Command::Frobenius { morphism } => {
            let phi = bundle.morphism(morphism)?;
            let criterion = orbit_criterion(phi);
            let gg = phi.cod();
            let hg = phi.dom();
            let orbits: Value = criterion
                .per_object
                .iter()
                .map(|d| {
                    (
                        gg.object_name(d.object).to_string(),
                        json!({
                            "orbits": d.incoming_orbit_count,
                            "representatives": d.representatives.iter().map(|&(u, q)| {
                                json!([hg.object_name(u), gg.arrow_name(q)])
                            }).collect::<Vec<_>>(),
                        }),
                    )
                })
                .collect::<serde_json::Map<String, Value>>()
                .into();
            if !criterion.applicable {
                return Err(CliError::NotApplicable(format!(
                    "orbit criterion requires a faithful morphism injective on objects \
                     (faithful: {}, injective on objects: {})",
                    criterion.faithful, criterion.injective_on_objects
                )));
            }
            let sys = frobenius_system(phi, bundle.field)?;
            let verification = verify_frobenius_system(phi, &sys);
            let module = module_condition(phi, bundle.field)?;
            let failures: Vec<Value> = verification
                .failures
                .iter()
                .map(|f| match f {
                    SystemFailure::Naturality { h, g, h2 } => {
                        json!({"kind": "naturality", "h": h, "g": g, "h2": h2})
                    }
                    SystemFailure::LeftIdentity { x, b } => {
                        json!({"kind": "left-identity", "object": x, "b": b})
                    }
                    SystemFailure::RightIdentity { x, b2 } => {
                        json!({"kind": "right-identity", "object": x, "b": b2})
                    }
                })
                .collect();
            let module_value = json!({
                "per_object": module.per_object.iter().map(|r| json!({
                    "object": gg.object_name(r.object),
                    "rank": r.rank,
                    "dual_basis_ok": r.dual_basis_ok,
                })).collect::<Vec<_>>(),
                "per_domain_object": module.per_domain_object.iter().map(|r| json!({
                    "object": hg.object_name(r.u),
                    "hom_dims": r.hom_dims.iter().map(|&(x, d)| json!([
                        gg.object_name(x), d
                    ])).collect::<Vec<_>>(),
                    "round_trips_ok": r.round_trips_ok,
                })).collect::<Vec<_>>(),
                "ok": module.ok,
            });
            Ok(Report {
                command: "frobenius".into(),
                passed: verification.ok && module.ok,
                payload: json!({
                    "criterion": {
                        "applicable": criterion.applicable,
                        "faithful": criterion.faithful,
                        "injective_on_objects": criterion.injective_on_objects,
                        "frobenius": criterion.frobenius,
                        "fibre_orbits": orbits,
                    },
                    "system": frobenius_system_to_value(&sys, hg, gg),
                    "verification": {
                        "ok": verification.ok,
                        "pairs_checked": verification.pairs_checked,
                        "failures": failures,
                    },
                    "module_condition": module_value,
                }),
            })
        }
        Command::AlgebraMap { morphism } => {
            let phi = bundle.morphism(morphism)?;
            let report = algebra_map(phi, bundle.field);
            let hg = phi.dom();
            let dom_alg = PathAlgebra::new(Arc::clone(hg), bundle.field);
            let cod_alg = PathAlgebra::new(Arc::clone(phi.cod()), bundle.field);
            let witness = report.witness.as_ref().map(|w| {
                json!({
                    "f": hg.arrow_name(w.f),
                    "g": hg.arrow_name(w.g),
                    "image_of_product": cod_alg.render(&w.image_of_product),
                    "product_of_images": cod_alg.render(&w.product_of_images),
                })
            });
            let _ = dom_alg;
            Ok(Report {
                command: "algebra-map".into(),
                passed: report.multiplicative,
                payload: json!({
                    "multiplicative": report.multiplicative,
                    "witness": witness,
                }),
            })
        }
        Command::ProjectionFormula {
            morphism,
            rep_dom,
            rep_cod,
        } => {
            let phi = bundle.morphism(morphism)?;
            let w = bundle.representation(rep_dom)?;
            let v = bundle.representation(rep_cod)?;
            let report = verify_projection_formula(phi, w, v)?;
            let gg = phi.cod();
            let dims: Vec<Value> = gg
                .objects()
                .map(|x| {
                    json!([
                        gg.object_name(x),
                        report.comparison.source().dim(x),
                        report.comparison.target().dim(x),
                    ])
                })
                .collect();
            Ok(Report {
                command: "projection-formula".into(),
                passed: report.invertible,
                payload: json!({
                    "invertible": report.invertible,
                    "dims": dims,
                }),
            })
        }
    }
}

/// Entry point used by the `gfrob` binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    let Some(bundle_path) = &cli.bundle else {
        eprintln!("error: --bundle <path> is required");
        return 2;
    };
    let bundle = match load_bundle(bundle_path) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match execute(&cli.command, &bundle) {
        Ok(report) => {
            let text = report.render(cli.format);
            match &cli.out {
                None => print!("{text}"),
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::load_bundle_str;

    const SMALL: &str = r#"{
        "schema": 1,
        "field": "Q",
        "groupoids": {
            "one": { "family": "trivial", "objects": ["1"] },
            "pairs": { "family": "pair", "objects": ["1", "2"] }
        },
        "morphisms": {
            "incl": {
                "dom": "one", "cod": "pairs",
                "objects": {"1": "1"},
                "arrows": {"id_1": "(1,1)"}
            }
        },
        "representations": {
            "triv": {
                "groupoid": "one",
                "dims": {"1": 1},
                "matrices": {"id_1": [["1"]]}
            }
        }
    }"#;

    #[test]
    fn info_reports_structure() {
        let bundle = load_bundle_str(SMALL).unwrap();
        let report = execute(
            &Command::Info {
                groupoid: "pairs".into(),
            },
            &bundle,
        )
        .unwrap();
        assert!(report.passed);
        assert_eq!(report.payload["components"], json!(1));
        assert_eq!(report.payload["equivalence_relation"], json!(true));
    }

    #[test]
    fn frobenius_command_passes_on_inclusion() {
        let bundle = load_bundle_str(SMALL).unwrap();
        let report = execute(
            &Command::Frobenius {
                morphism: "incl".into(),
            },
            &bundle,
        )
        .unwrap();
        assert!(report.passed);
        assert_eq!(report.exit_code(), 0);
        assert_eq!(
            report.payload["criterion"]["applicable"],
            json!(true)
        );
    }

    #[test]
    fn induce_command_emits_reloadable_representation() {
        let bundle = load_bundle_str(SMALL).unwrap();
        let report = execute(
            &Command::Induce {
                morphism: "incl".into(),
                rep: "triv".into(),
            },
            &bundle,
        )
        .unwrap();
        // splice the induced representation back into a bundle and reload
        let text = json!({
            "schema": 1,
            "field": "Q",
            "groupoids": { "pairs": { "family": "pair", "objects": ["1", "2"] } },
            "representations": { "ind": report.payload["representation"] }
        })
        .to_string();
        let reloaded = load_bundle_str(&text).unwrap();
        assert_eq!(reloaded.representation("ind").unwrap().dims(), &[1, 1]);
    }

    #[test]
    fn unknown_names_are_input_errors() {
        let bundle = load_bundle_str(SMALL).unwrap();
        let err = execute(
            &Command::Info {
                groupoid: "nope".into(),
            },
            &bundle,
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Bundle(BundleError::UnknownName(_))));
    }

    #[test]
    fn reports_render_identically_across_runs() {
        let bundle = load_bundle_str(SMALL).unwrap();
        let a = execute(
            &Command::Frobenius {
                morphism: "incl".into(),
            },
            &bundle,
        )
        .unwrap()
        .render(Format::Structured);
        let bundle2 = load_bundle_str(SMALL).unwrap();
        let b = execute(
            &Command::Frobenius {
                morphism: "incl".into(),
            },
            &bundle2,
        )
        .unwrap()
        .render(Format::Structured);
        assert_eq!(a, b);
    }
}
