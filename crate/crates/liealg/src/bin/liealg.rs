//! Command-line front end: JSON in, JSON out. Exit codes: 0 success,
//! 2 validation failure, 3 parse error, 4 precondition failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use liealg::catalog;
use liealg::cohomology::{self, AdjointCochain, CochainJson};
use liealg::contractions::{self, ParamMatrix};
use liealg::core::{validate_jacobi, AlgebraJson, LieAlgebra, LieError, ScalarForm};
use liealg::deformations::{self, DeformationJet};
use liealg::geometry;
use liealg::homogeneous::{self, MetricSpec};
use liealg::invariants;
use liealg::linalg::{basis_vector, Matrix, Subspace};
use liealg::rigidity;
use liealg::scalar::Scalar;

#[derive(Parser)]
#[command(name = "liealg", version, about = "Exact-arithmetic Lie algebra workbench")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the Jacobi identity of an algebra file.
    Check { file: PathBuf },
    /// Structural invariants: nilpotency, solvability, series, Killing data.
    Invariants { file: PathBuf },
    /// Chevalley cohomology dimensions in adjoint degree p.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        /// Also emit a basis of the cocycle space.
        #[arg(long)]
        basis: bool,
    },
    /// Contractions: diagonal families, Inonu-Wigner, contact.
    Contract {
        file: PathBuf,
        /// Weimar-Woods exponents n1,n2,...
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        ww: Option<Vec<i64>>,
        /// 1-based basis indices spanning the fixed subalgebra.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        iw: Option<Vec<usize>>,
        /// Contract along eps times the identity (limit is abelian).
        #[arg(long)]
        abelian: bool,
        /// Search for a contact form and contract to Heisenberg.
        #[arg(long)]
        contact: bool,
    },
    /// Deformation residuals of mu + t phi through a given order.
    Deform {
        base: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Flag decomposition of a polynomial deformation jet.
    DeformDecompose { jet: PathBuf },
    /// Rigidity verdicts: H^2 test, or the root-system rank test when a
    /// torus and nilradical are supplied.
    Rigidity {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        torus: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        nilradical: Option<Vec<usize>>,
    },
    /// Geometric structures on an algebra.
    Geometry {
        file: PathBuf,
        /// 2-form file for the symplectic test.
        #[arg(long)]
        symplectic: Option<PathBuf>,
        /// 2-form file and derivation matrix file for the double extension.
        #[arg(long, num_args = 2)]
        double_extension: Option<Vec<PathBuf>>,
        /// 2n x 2n matrix file for the generalized complex test.
        #[arg(long)]
        gcs: Option<PathBuf>,
    },
    /// The Z2 x Z2 grading of so(4k).
    Grading {
        #[arg(long)]
        k: usize,
    },
    /// Adapted-metric eigenvalues, signature, and classification.
    Metric {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        spec: PathBuf,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        sub: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Names of the built-in constructors.
    List,
    /// Emit one catalog algebra as JSON.
    Show {
        name: String,
        /// Dimension parameter (abelian, filiform, so).
        #[arg(long)]
        n: Option<usize>,
        /// Pair-count parameter (heisenberg, frobenius).
        #[arg(long)]
        p: Option<usize>,
        /// Comma-separated rational weights for frobenius.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        phi: Option<Vec<String>>,
    },
}

enum CliError {
    /// Jacobi validation failed; carries the report to print.
    Validation(serde_json::Value),
    /// Unreadable file or malformed JSON.
    Parse(String),
    /// A library precondition was violated.
    Precondition(String),
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn jacobi_report(g: &LieAlgebra) -> serde_json::Value {
    let report = validate_jacobi(&g.sc);
    let violations: Vec<_> = report
        .violations
        .iter()
        .map(|(i, j, k, s, c)| {
            json!({"i": i + 1, "j": j + 1, "k": k + 1, "target": s + 1,
                   "residual": c})
        })
        .collect();
    json!({"ok": report.ok, "violations": violations})
}

/// Parse, import, and validate an algebra file.
fn load_algebra(path: &Path) -> Result<LieAlgebra, CliError> {
    let data: AlgebraJson = parse_json(path)?;
    let g = LieAlgebra::from_json(&data)?;
    let report = jacobi_report(&g);
    if !report["ok"].as_bool().unwrap() {
        return Err(CliError::Validation(report));
    }
    Ok(g)
}

fn load_form(path: &Path, g: &LieAlgebra, p: usize) -> Result<ScalarForm, CliError> {
    let form: ScalarForm = parse_json(path)?;
    if form.n != g.dim() || form.p != p {
        return Err(CliError::Precondition(format!(
            "form must have n = {} and p = {p}",
            g.dim()
        )));
    }
    if form.coeffs.len() != ScalarForm::zero(form.n, form.p).coeffs.len() {
        return Err(CliError::Precondition(
            "form coefficient count does not match (n choose p)".into(),
        ));
    }
    Ok(form)
}

fn load_matrix(path: &Path, rows: usize, cols: usize) -> Result<Matrix, CliError> {
    let data: Vec<Vec<Scalar>> = parse_json(path)?;
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(CliError::Precondition(format!(
            "matrix must be {rows} x {cols}"
        )));
    }
    Ok(Matrix::from_rows(data))
}

fn span_of(n: usize, indices: &[usize]) -> Result<Subspace, CliError> {
    if indices.iter().any(|&i| i == 0 || i > n) {
        return Err(CliError::Precondition(
            "basis indices must be 1-based and within the dimension".into(),
        ));
    }
    let vecs: Vec<Vec<Scalar>> = indices.iter().map(|&i| basis_vector(n, i - 1)).collect();
    Ok(Subspace::from_spanning(n, &vecs))
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Check { file } => {
            let data: AlgebraJson = parse_json(&file)?;
            let g = LieAlgebra::from_json(&data)?;
            let report = jacobi_report(&g);
            let ok = report["ok"].as_bool().unwrap();
            emit(&report);
            if !ok {
                // The report went to stdout already; signal failure only.
                return Err(CliError::Validation(json!(null)));
            }
            Ok(())
        }
        Cmd::Invariants { file } => {
            let g = load_algebra(&file)?;
            let nilpotent = invariants::is_nilpotent(&g);
            let char_seq = if nilpotent {
                Some(invariants::characteristic_sequence(&g)?.sequence)
            } else {
                None
            };
            emit(&json!({
                "dim": g.dim(),
                "nilpotent": nilpotent,
                "solvable": invariants::is_solvable(&g),
                "nilindex": if nilpotent { Some(invariants::nilindex(&g)) } else { None },
                "lower_central_dims": invariants::lower_central_series(&g).dims(),
                "derived_dims": invariants::derived_series(&g).dims(),
                "char_seq": char_seq,
                "killing_rank": invariants::killing_form(&g).rank(),
                "semisimple": invariants::is_semisimple(&g),
            }));
            Ok(())
        }
        Cmd::Cohomology { file, p, basis } => {
            let g = load_algebra(&file)?;
            let report = cohomology::cohomology_dims(&g, p);
            let mut out = serde_json::to_value(&report).expect("serializable");
            if basis {
                let n = g.dim();
                let cocycles: Vec<CochainJson> = if p >= n {
                    Vec::new()
                } else {
                    cohomology::delta_matrix(&g, p)
                        .kernel_basis()
                        .into_iter()
                        .map(|v| AdjointCochain::from_coeffs(n, p, v).to_json())
                        .collect()
                };
                out["cocycle_basis"] = serde_json::to_value(cocycles).expect("serializable");
            }
            emit(&out);
            Ok(())
        }
        Cmd::Contract {
            file,
            ww,
            iw,
            abelian,
            contact,
        } => {
            let g = load_algebra(&file)?;
            let n = g.dim();
            let modes = usize::from(ww.is_some())
                + usize::from(iw.is_some())
                + usize::from(abelian)
                + usize::from(contact);
            if modes != 1 {
                return Err(CliError::Precondition(
                    "choose exactly one of --ww, --iw, --abelian, --contact".into(),
                ));
            }
            let limit: Option<LieAlgebra> = if abelian {
                contractions::param_act(&g, &ParamMatrix::scalar_eps(n))?.limit_at_zero()
            } else if let Some(exps) = ww {
                if exps.len() != n {
                    return Err(CliError::Precondition(format!(
                        "--ww needs {n} exponents"
                    )));
                }
                contractions::weimar_woods(&g, &exps)
            } else if let Some(indices) = iw {
                Some(contractions::inonu_wigner(&g, &span_of(n, &indices)?)?)
            } else {
                match contractions::find_contact_form(&g)? {
                    None => None,
                    Some(w) => Some(contractions::contract_contact_to_heisenberg(&g, &w)?),
                }
            };
            match limit {
                Some(l) => emit(&json!({
                    "limit": l.to_json(),
                    "jacobi_ok": validate_jacobi(&l.sc).ok,
                })),
                None => emit(&json!({"limit": null, "reason": "no limit at eps = 0"})),
            }
            Ok(())
        }
        Cmd::Deform { base, phi, order } => {
            let g = load_algebra(&base)?;
            let data: CochainJson = parse_json(&phi)?;
            if data.p != 2 {
                return Err(CliError::Precondition("deformation cochain must have p = 2".into()));
            }
            let phi = AdjointCochain::from_json(g.dim(), &data)?;
            let linear = deformations::linear_deformation_check(&g, &phi);
            let jet = DeformationJet::linear(g, phi, order);
            let residuals: Vec<_> = deformations::jacobi_residuals(&jet, order)
                .into_iter()
                .map(|(m, r)| json!({"order": m, "zero": r.is_zero()}))
                .collect();
            emit(&json!({
                "is_cocycle": linear.is_cocycle,
                "is_square_zero": linear.is_square_zero,
                "valid_for_all_t": linear.valid_for_all_t,
                "residuals": residuals,
            }));
            Ok(())
        }
        Cmd::DeformDecompose { jet } => {
            #[derive(serde::Deserialize)]
            struct JetJson {
                base: AlgebraJson,
                order: usize,
                terms: Vec<CochainJson>,
            }
            let data: JetJson = parse_json(&jet)?;
            let g = LieAlgebra::from_json(&data.base)?;
            if !validate_jacobi(&g.sc).ok {
                return Err(CliError::Validation(jacobi_report(&g)));
            }
            let n = g.dim();
            let terms = data
                .terms
                .iter()
                .map(|t| {
                    if t.p != 2 {
                        return Err(CliError::Precondition("jet terms must have p = 2".into()));
                    }
                    Ok(AdjointCochain::from_json(n, t)?)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let jet = DeformationJet::new(g, terms, data.order);
            let vd = deformations::decompose_deformation(&jet)?;
            let fs = deformations::finite_system_check(&vd);
            emit(&json!({
                "length": vd.cochains.len(),
                "scalars": vd.scalars.iter().map(|s| s.c.clone()).collect::<Vec<_>>(),
                "cochains": vd.cochains.iter().map(AdjointCochain::to_json).collect::<Vec<_>>(),
                "finite_system": {
                    "k": fs.k,
                    "dim_v": fs.dim_v,
                    "bound": fs.bound,
                    "relations_solvable": fs.relations.iter().all(Option::is_some),
                },
            }));
            Ok(())
        }
        Cmd::Rigidity {
            file,
            torus,
            nilradical,
        } => {
            let g = load_algebra(&file)?;
            match (torus, nilradical) {
                (None, None) => {
                    let verdict = rigidity::nr_test(&g);
                    emit(&json!({"method": "h2", "verdict": verdict}));
                }
                (Some(t), Some(nr)) => {
                    let n = g.dim();
                    let torus = span_of(n, &t)?;
                    let nil = span_of(n, &nr)?;
                    let (x, dim_v0) = rigidity::regular_vector(&g, &torus, &nil)?;
                    let basis = rigidity::ad_eigenbasis(&g, &x)?;
                    let rs = rigidity::root_system(&g, &x, &basis)?;
                    let verdict = rigidity::rank_test(&rs, &nil);
                    emit(&json!({
                        "method": "rank",
                        "regular_vector": x,
                        "dim_v0": dim_v0,
                        "rank": rs.rank,
                        "num_x": rs.num_x,
                        "num_y": rs.num_y,
                        "verdict": verdict,
                    }));
                }
                _ => {
                    return Err(CliError::Precondition(
                        "--torus and --nilradical must be given together".into(),
                    ))
                }
            }
            Ok(())
        }
        Cmd::Geometry {
            file,
            symplectic,
            double_extension,
            gcs,
        } => {
            let g = load_algebra(&file)?;
            let n = g.dim();
            let modes = usize::from(symplectic.is_some())
                + usize::from(double_extension.is_some())
                + usize::from(gcs.is_some());
            if modes != 1 {
                return Err(CliError::Precondition(
                    "choose exactly one of --symplectic, --double-extension, --gcs".into(),
                ));
            }
            if let Some(path) = symplectic {
                let omega = load_form(&path, &g, 2)?;
                emit(&json!({"symplectic": geometry::symplectic_check(&g, &omega)?}));
            } else if let Some(paths) = double_extension {
                let omega = load_form(&paths[0], &g, 2)?;
                let d = load_matrix(&paths[1], n, n)?;
                match geometry::double_extension(&g, &omega, &d)? {
                    Some((ext, form)) => emit(&json!({
                        "algebra": ext.to_json(),
                        "form": form,
                    })),
                    None => emit(&json!({
                        "algebra": null,
                        "reason": "obstruction 2-form is not a coboundary",
                    })),
                }
            } else if let Some(path) = gcs {
                let j = load_matrix(&path, 2 * n, 2 * n)?;
                let report = geometry::generalized_complex_check(&g, &j)?;
                emit(&serde_json::to_value(&report).expect("serializable"));
            }
            Ok(())
        }
        Cmd::Grading { k } => {
            if k == 0 {
                return Err(CliError::Precondition("k must be positive".into()));
            }
            let st = homogeneous::build_so_grading(k);
            let components: Vec<Vec<Vec<Scalar>>> = st
                .grading
                .components
                .iter()
                .map(|c| c.basis().to_vec())
                .collect();
            emit(&json!({
                "algebra": st.algebra.to_json(),
                "labels": st.grading.labels,
                "dims": st.grading.components.iter().map(Subspace::dim).collect::<Vec<_>>(),
                "components": components,
                "grading_check": homogeneous::grading_check(&st.algebra, &st.grading)?,
            }));
            Ok(())
        }
        Cmd::Metric { k, spec } => {
            if k == 0 {
                return Err(CliError::Precondition("k must be positive".into()));
            }
            let spec: MetricSpec = parse_json(&spec)?;
            if spec.r != k || spec.dims != [k * (2 * k - 1); 3] {
                return Err(CliError::Precondition(format!(
                    "spec must have r = {k} and component dimensions {}",
                    k * (2 * k - 1)
                )));
            }
            let eigen = homogeneous::metric_eigenvalues(&spec)?;
            let (per, total) = homogeneous::metric_signature(&spec)?;
            let class = homogeneous::classify_metric(&spec)?;
            emit(&json!({
                "eigenvalues": eigen,
                "signature": {"per_component": per, "total": total},
                "class": class,
            }));
            Ok(())
        }
        Cmd::Catalog { sub } => match sub {
            CatalogCmd::List => {
                emit(&json!([
                    {"name": "abelian", "params": ["n"]},
                    {"name": "aff2", "params": []},
                    {"name": "heisenberg", "params": ["p"]},
                    {"name": "filiform", "params": ["n"]},
                    {"name": "filiform4-target", "params": []},
                    {"name": "four-dim-solvable", "params": []},
                    {"name": "sl2", "params": []},
                    {"name": "so3", "params": []},
                    {"name": "so", "params": ["n"]},
                    {"name": "poincare", "params": []},
                    {"name": "rigid11", "params": []},
                    {"name": "frobenius", "params": ["p", "phi"]},
                ]));
                Ok(())
            }
            CatalogCmd::Show { name, n, p, phi } => {
                let need = |v: Option<usize>, flag: &str| {
                    v.ok_or_else(|| CliError::Precondition(format!("{name} needs --{flag}")))
                };
                let g = match name.as_str() {
                    "abelian" => catalog::abelian(need(n, "n")?),
                    "aff2" => catalog::aff2(),
                    "heisenberg" => catalog::heisenberg(need(p, "p")?),
                    "filiform" => catalog::filiform_model(need(n, "n")?),
                    "filiform4-target" => catalog::filiform4_target(),
                    "four-dim-solvable" => catalog::four_dim_solvable(),
                    "sl2" => catalog::sl2(),
                    "so3" => catalog::so3(),
                    "so" => catalog::so(need(n, "n")?),
                    "poincare" => catalog::poincare(),
                    "rigid11" => catalog::rigid11(),
                    "frobenius" => {
                        let p = need(p, "p")?;
                        let weights = phi
                            .unwrap_or_default()
                            .iter()
                            .map(|s| {
                                s.parse::<Scalar>().map_err(|e| {
                                    CliError::Parse(format!("bad rational {s}: {e}"))
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        catalog::frobenius_model(p, &weights)?
                    }
                    other => {
                        return Err(CliError::Precondition(format!(
                            "unknown catalog entry {other}"
                        )))
                    }
                };
                emit(&serde_json::to_value(g.to_json()).expect("serializable"));
                Ok(())
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(report)) => {
            if !report.is_null() {
                eprintln!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            }
            eprintln!("validation failed");
            ExitCode::from(2)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Precondition(msg)) => {
            eprintln!("precondition failed: {msg}");
            ExitCode::from(4)
        }
    }
}
