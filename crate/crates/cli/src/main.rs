//! `conefaces`: combinatorial spectral analysis of cone-preserving maps.
//!
//! Exit codes: 0 success, 1 input/validation error, 2 unsupported mode
//! (exactness required but unavailable, or numeric iteration failed),
//! 3 cap exceeded.

mod inputs;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conefaces::classes::{
    build_classes, enumerate_initial_subsets, longest_basic_chain, longest_semidistinguished_chain,
    ClassStructure,
};
use conefaces::orthantfaces::{
    check_conditions_64, check_theorem_71, check_theorem_72, classify_face, eigencone_basis,
    face_spectral_pair, fv_vector, invariant_face_lattice, nonnegative_basis, strict_sublevel_face,
    sublevel_face, ConeVector,
};
use conefaces::polycone::{
    self, check_theorem_61, classify_face_poly_in, face_spectral_pair_poly,
    max_distinguished_order, rank_one_analysis, rothblum_chain, GeneratorCone,
};
use conefaces::ratmath::{format_rational, parse_rational, RatMatrix};
use conefaces::spectra::{spectral_pair, Radius, ToleranceConfig};
use conefaces::{Error, Result};

#[derive(Parser)]
#[command(
    name = "conefaces",
    version,
    about = "Classes, invariant face lattices, spectral pairs, and index chains of cone-preserving maps, in exact rational arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Matrix input path (JSON {"n":..,"entries":[[..]]} or whitespace rows)
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Built-in fixture name (sec7-3x3, sec7-4x4-nilpotent, ex7.3, sec4-2x2)
    #[arg(long, global = true)]
    fixture: Option<String>,

    /// Cone input path (JSON {"n":..,"generators":[[..]]}); default orthant
    #[arg(long, global = true)]
    cone: Option<PathBuf>,

    /// Relative comparison tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Lattice size cap
    #[arg(long, global = true, default_value_t = 4096)]
    cap: usize,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for restarting stalled iterations
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classes, radii, taxonomy flags, and the accessibility condensation
    Classes,
    /// All initial subsets (equivalently, all invariant orthant faces)
    InitialSubsets,
    /// The invariant-face lattice with classifications and Hasse covers
    Faces,
    /// Classify one face given by its 1-based index set
    Classify {
        #[arg(long)]
        face: String,
    },
    /// Spectral pair of a vector or of a face
    SpectralPair {
        #[arg(long)]
        vector: Option<String>,
        #[arg(long)]
        face: Option<String>,
    },
    /// Eigenvector of a distinguished class, or the eigencone basis at λ
    FrobeniusVictory {
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Basis of the span of nonnegative generalized eigenvectors at λ
    NonnegBasis {
        #[arg(long)]
        lambda: String,
    },
    /// The invariant face of spectral pairs ⪯ (λ, k); --strict gives
    /// {x : local radius < λ}
    Sublevel {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = false)]
        strict: bool,
    },
    /// Maximal chain of semi-distinguished invariant faces at λ
    RothblumChain {
        #[arg(long)]
        lambda: String,
    },
    /// Maximal order of distinguished generalized eigenvectors at λ
    MLambda {
        #[arg(long)]
        lambda: String,
    },
    /// Theorem condition batteries: 7.1, 7.2, 6.1, 6.4, B, C
    Check {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Rank-one map analysis for A = y z^T
    RankOne {
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// DOT diagram of the class condensation or the invariant-face lattice
    Dot {
        #[arg(long)]
        what: String,
    },
    /// Print a built-in fixture
    Fixture {
        #[arg(long)]
        name: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders both help and errors; usage errors exit 1.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

struct Context {
    matrix: Option<RatMatrix>,
    fixture: Option<String>,
    cone: Option<GeneratorCone>,
    tol: ToleranceConfig,
    cap: usize,
    format: Format,
}

impl Context {
    fn matrix(&self) -> Result<&RatMatrix> {
        self.matrix.as_ref().ok_or_else(|| {
            Error::InvalidArgument("a matrix is required: --input or --fixture".into())
        })
    }

    fn structure(&self) -> Result<ClassStructure> {
        build_classes(self.matrix()?, &self.tol)
    }

    /// The working cone: the one given, or the orthant of the given dimension.
    fn cone_or_orthant(&self, n: usize) -> Result<GeneratorCone> {
        match &self.cone {
            Some(k) => Ok(k.clone()),
            None => GeneratorCone::orthant(n),
        }
    }

    fn emit(&self, command: &str, payload: Value, warnings: Vec<String>) -> Result<()> {
        let report = report::envelope(
            command,
            self.matrix.as_ref(),
            self.fixture.as_deref(),
            self.cone.as_ref(),
            self.cone.is_some(),
            &self.tol,
            self.cap,
            payload,
            warnings,
        );
        match self.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serialization")
            ),
            Format::Text => print!("{}", report::render_text(&report)),
            Format::Dot => {
                return Err(Error::InvalidArgument(
                    "--format dot applies only to the dot, classes, and faces commands".into(),
                ))
            }
        }
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<()> {
    let tol = ToleranceConfig {
        rel_eps: cli.tol,
        retry_seed: cli.seed,
        ..Default::default()
    };
    tol.validate()?;

    let matrix = match (&cli.fixture, &cli.input) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidArgument(
                "give either --fixture or --input, not both".into(),
            ))
        }
        (Some(name), None) => Some(
            conefaces::fixtures::fixture(name)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture {name:?}")))?,
        ),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Some(inputs::parse_matrix(&text)?)
        }
        (None, None) => None,
    };
    let cone = match &cli.cone {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            Some(polycone::parse_cone_json(&text)?)
        }
        None => None,
    };
    let ctx = Context {
        matrix,
        fixture: cli.fixture.clone(),
        cone,
        tol,
        cap: cli.cap,
        format: cli.format,
    };

    match &cli.command {
        Command::Classes => {
            let s = ctx.structure()?;
            if ctx.format == Format::Dot {
                print!("{}", conefaces::dot::classes_dot(&s));
                return Ok(());
            }
            ctx.emit("classes", report::classes_payload(&s, &ctx.tol), vec![])
        }
        Command::InitialSubsets => {
            let s = ctx.structure()?;
            let subsets = enumerate_initial_subsets(&s, ctx.cap)?;
            let payload = json!({
                "count": subsets.len(),
                "subsets": subsets
                    .iter()
                    .map(|i| report::indices_json(&i.members))
                    .collect::<Vec<_>>(),
            });
            ctx.emit("initial-subsets", payload, vec![])
        }
        Command::Faces => command_faces(&ctx),
        Command::Classify { face } => {
            let indices = inputs::parse_index_set(face)?;
            match &ctx.cone {
                None => {
                    let s = ctx.structure()?;
                    if indices.iter().any(|&i| i >= s.dimension()) {
                        return Err(Error::InvalidArgument("face index out of range".into()));
                    }
                    let c = classify_face(&s, &indices, &ctx.tol);
                    ctx.emit(
                        "classify",
                        json!({
                            "face": report::indices_json(&indices),
                            "classification": report::classification_json(&c, &ctx.tol),
                        }),
                        vec![],
                    )
                }
                Some(k) => {
                    let a = ctx.matrix()?;
                    let lattice = polycone::invariant_face_lattice(k, a, ctx.cap)?;
                    let face = lattice
                        .faces
                        .iter()
                        .find(|f| f.generators == indices)
                        .cloned()
                        .ok_or_else(|| {
                            Error::InvalidArgument(
                                "the generator set is not an invariant face".into(),
                            )
                        })?;
                    let c = classify_face_poly_in(k, a, &lattice, &face, &ctx.tol)?;
                    ctx.emit(
                        "classify",
                        json!({
                            "face_generators": report::indices_json(&indices),
                            "classification": report::poly_classification_json(&c, &ctx.tol),
                        }),
                        vec![],
                    )
                }
            }
        }
        Command::SpectralPair { vector, face } => command_spectral_pair(&ctx, vector, face),
        Command::FrobeniusVictory { class, lambda } => {
            command_frobenius_victory(&ctx, class, lambda)
        }
        Command::NonnegBasis { lambda } => {
            let s = ctx.structure()?;
            let l = parse_rational(lambda)?;
            let basis = nonnegative_basis(&s, &l, &ctx.tol)?;
            ctx.emit(
                "nonneg-basis",
                json!({
                    "lambda": format_rational(&l),
                    "dimension": basis.len(),
                    "basis": basis
                        .iter()
                        .map(|v| report::rational_vector_json(v))
                        .collect::<Vec<_>>(),
                }),
                vec![],
            )
        }
        Command::Sublevel { lambda, k, strict } => {
            let s = ctx.structure()?;
            let l = Radius::Exact(parse_rational(lambda)?);
            let face = if *strict {
                strict_sublevel_face(&s, &l, &ctx.tol)?
            } else {
                sublevel_face(&s, &l, *k, &ctx.tol)?
            };
            let pair = face_spectral_pair(&s, &face.indices, &ctx.tol);
            ctx.emit(
                "sublevel",
                json!({
                    "lambda": lambda,
                    "k": if *strict { Value::Null } else { Value::from(*k as u64) },
                    "strict": *strict,
                    "face": report::indices_json(&face.indices),
                    "spectral_pair": report::pair_json(&pair, &ctx.tol),
                }),
                vec![],
            )
        }
        Command::RothblumChain { lambda } => {
            let a = ctx.matrix()?;
            let k = ctx.cone_or_orthant(a.rows())?;
            let l = parse_rational(lambda)?;
            let chain = rothblum_chain(&k, a, &l, &ctx.tol, ctx.cap)?;
            ctx.emit(
                "rothblum-chain",
                json!({
                    "lambda": format_rational(&l),
                    "m_lambda": chain.len(),
                    "chain": chain
                        .iter()
                        .map(|f| report::indices_json(&f.generators))
                        .collect::<Vec<_>>(),
                }),
                vec![],
            )
        }
        Command::MLambda { lambda } => command_m_lambda(&ctx, lambda),
        Command::Check { theorem, lambda } => command_check(&ctx, theorem, lambda.as_deref()),
        Command::RankOne { y, z } => {
            let yv = inputs::parse_vector(y)?;
            let zv = inputs::parse_vector(z)?;
            let k = ctx.cone_or_orthant(yv.len())?;
            let rep = rank_one_analysis(&k, &yv, &zv, &ctx.tol, ctx.cap)?;
            ctx.emit(
                "rank-one",
                json!({
                    "orthogonal": rep.orthogonal,
                    "a_join_irreducible": rep.whole_join_irreducible,
                    "b_unique_facet_including_dual": rep.unique_facet_including_dual,
                    "c_unique_facet": rep.unique_facet,
                    "facets_containing_y": rep.facets_containing_y,
                    "equivalence_ok": rep.equivalence_ok,
                }),
                vec![],
            )
        }
        Command::Dot { what } => {
            let s = ctx.structure()?;
            match what.as_str() {
                "classes" => print!("{}", conefaces::dot::classes_dot(&s)),
                "faces" => match &ctx.cone {
                    None => {
                        let lattice = invariant_face_lattice(&s, ctx.cap)?;
                        print!("{}", conefaces::dot::faces_dot(&s, &lattice, &ctx.tol));
                    }
                    Some(k) => {
                        let a = ctx.matrix()?;
                        let lattice = polycone::invariant_face_lattice(k, a, ctx.cap)?;
                        print!(
                            "{}",
                            conefaces::dot::poly_faces_dot(k, a, &lattice, &ctx.tol)
                        );
                    }
                },
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown dot target {other:?} (expected classes or faces)"
                    )))
                }
            }
            Ok(())
        }
        Command::Fixture { name } => {
            let m = conefaces::fixtures::fixture(name)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture {name:?}")))?;
            let payload = json!({
                "name": name,
                "matrix": report::matrix_json(&m),
                "available": conefaces::fixtures::FIXTURE_NAMES,
            });
            let ctx = Context {
                matrix: Some(m),
                ..ctx
            };
            ctx.emit("fixture", payload, vec![])
        }
    }
}

fn command_faces(ctx: &Context) -> Result<()> {
    match &ctx.cone {
        None => {
            let s = ctx.structure()?;
            let lattice = invariant_face_lattice(&s, ctx.cap)?;
            if ctx.format == Format::Dot {
                print!("{}", conefaces::dot::faces_dot(&s, &lattice, &ctx.tol));
                return Ok(());
            }
            let faces: Vec<Value> = lattice
                .faces
                .iter()
                .map(|f| {
                    let c = classify_face(&s, &f.indices, &ctx.tol);
                    json!({
                        "indices": report::indices_json(&f.indices),
                        "classification": report::classification_json(&c, &ctx.tol),
                    })
                })
                .collect();
            let covers: Vec<Value> = lattice.covers.iter().map(|&(a, b)| json!([a, b])).collect();
            ctx.emit(
                "faces",
                json!({ "count": faces.len(), "faces": faces, "covers": covers }),
                vec![],
            )
        }
        Some(k) => {
            let a = ctx.matrix()?;
            let lattice = polycone::invariant_face_lattice(k, a, ctx.cap)?;
            if ctx.format == Format::Dot {
                print!(
                    "{}",
                    conefaces::dot::poly_faces_dot(k, a, &lattice, &ctx.tol)
                );
                return Ok(());
            }
            let mut warnings = Vec::new();
            let faces: Vec<Value> = lattice
                .faces
                .iter()
                .map(|f| {
                    let c = classify_face_poly_in(k, a, &lattice, f, &ctx.tol)?;
                    if c.semi_distinguished.is_none() {
                        warnings.push(format!(
                            "face {} has an irrational radius; relative-interior flags unsupported",
                            conefaces::classes::format_class(&f.generators)
                        ));
                    }
                    Ok(json!({
                        "generators": report::indices_json(&f.generators),
                        "classification": report::poly_classification_json(&c, &ctx.tol),
                    }))
                })
                .collect::<Result<_>>()?;
            let covers: Vec<Value> = lattice.covers.iter().map(|&(a, b)| json!([a, b])).collect();
            ctx.emit(
                "faces",
                json!({ "count": faces.len(), "faces": faces, "covers": covers }),
                warnings,
            )
        }
    }
}

fn command_spectral_pair(
    ctx: &Context,
    vector: &Option<String>,
    face: &Option<String>,
) -> Result<()> {
    match (vector, face) {
        (Some(v), None) => {
            let x = inputs::parse_vector(v)?;
            let a = ctx.matrix()?;
            let pair = spectral_pair(a, &x, &ctx.tol)?;
            ctx.emit(
                "spectral-pair",
                json!({
                    "vector": report::rational_vector_json(&x),
                    "spectral_pair": report::pair_json(&pair, &ctx.tol),
                }),
                vec![],
            )
        }
        (None, Some(f)) => {
            let indices = inputs::parse_index_set(f)?;
            match &ctx.cone {
                None => {
                    let s = ctx.structure()?;
                    let pair = face_spectral_pair(&s, &indices, &ctx.tol);
                    ctx.emit(
                        "spectral-pair",
                        json!({
                            "face": report::indices_json(&indices),
                            "spectral_pair": report::pair_json(&pair, &ctx.tol),
                        }),
                        vec![],
                    )
                }
                Some(k) => {
                    let a = ctx.matrix()?;
                    let lattice = polycone::face_lattice(k, ctx.cap)?;
                    let face = lattice
                        .faces
                        .iter()
                        .find(|pf| pf.generators == indices)
                        .cloned()
                        .ok_or_else(|| {
                            Error::InvalidArgument("the generator set is not a face".into())
                        })?;
                    let pair = face_spectral_pair_poly(k, a, &face, &ctx.tol)?;
                    ctx.emit(
                        "spectral-pair",
                        json!({
                            "face_generators": report::indices_json(&indices),
                            "spectral_pair": report::pair_json(&pair, &ctx.tol),
                        }),
                        vec![],
                    )
                }
            }
        }
        _ => Err(Error::InvalidArgument(
            "give exactly one of --vector or --face".into(),
        )),
    }
}

fn command_frobenius_victory(
    ctx: &Context,
    class: &Option<String>,
    lambda: &Option<String>,
) -> Result<()> {
    let s = ctx.structure()?;
    match (class, lambda) {
        (Some(c), None) => {
            let members = inputs::parse_index_set(c)?;
            if members.is_empty() {
                return Err(Error::InvalidArgument("empty class specification".into()));
            }
            let idx = s.class_of_vertex(members[0]);
            let vector = fv_vector(&s, idx, &ctx.tol)?;
            ctx.emit(
                "frobenius-victory",
                json!({
                    "class": report::indices_json(&s.classes()[idx].members),
                    "lambda": report::radius_json(&s.classes()[idx].radius, &ctx.tol),
                    "vector": cone_vector_json(&vector),
                    "exact": vector.is_exact(),
                    "support": report::indices_json(&vector.support()),
                }),
                vec![],
            )
        }
        (None, Some(l)) => {
            let radius = Radius::Exact(parse_rational(l)?);
            let basis = eigencone_basis(&s, &radius, &ctx.tol)?;
            let witnesses = s.distinguished_classes_at(&radius, &ctx.tol);
            ctx.emit(
                "frobenius-victory",
                json!({
                    "lambda": l,
                    "eigencone_dimension": basis.len(),
                    "classes": witnesses
                        .iter()
                        .map(|&c| report::indices_json(&s.classes()[c].members))
                        .collect::<Vec<_>>(),
                    "basis": basis.iter().map(cone_vector_json).collect::<Vec<_>>(),
                }),
                vec![],
            )
        }
        _ => Err(Error::InvalidArgument(
            "give exactly one of --class or --lambda".into(),
        )),
    }
}

fn cone_vector_json(v: &ConeVector) -> Value {
    match v {
        ConeVector::Exact(x) => report::rational_vector_json(x),
        ConeVector::Numeric(x) => Value::Array(x.iter().map(|&f| Value::from(f)).collect()),
    }
}

fn command_m_lambda(ctx: &Context, lambda: &str) -> Result<()> {
    let a = ctx.matrix()?;
    let l = parse_rational(lambda)?;
    match &ctx.cone {
        None => {
            let s = ctx.structure()?;
            let (chain_len, chain) =
                longest_semidistinguished_chain(&s, &Radius::Exact(l.clone()), &ctx.tol)?;
            let k = GeneratorCone::orthant(a.rows())?;
            let lp_order = max_distinguished_order(&k, a, &l, &ctx.tol)?;
            let mut warnings = Vec::new();
            if lp_order != chain_len {
                warnings.push(format!(
                    "class-chain length {chain_len} disagrees with the order search {lp_order}"
                ));
            }
            ctx.emit(
                "m-lambda",
                json!({
                    "lambda": format_rational(&l),
                    "m_lambda": chain_len,
                    "chain": chain
                        .iter()
                        .map(|&c| report::indices_json(&s.classes()[c].members))
                        .collect::<Vec<_>>(),
                    "order_search": lp_order,
                    "agree": lp_order == chain_len,
                }),
                warnings,
            )
        }
        Some(k) => {
            let order = max_distinguished_order(k, a, &l, &ctx.tol)?;
            ctx.emit(
                "m-lambda",
                json!({ "lambda": format_rational(&l), "m_lambda": order }),
                vec![],
            )
        }
    }
}

fn command_check(ctx: &Context, theorem: &str, lambda: Option<&str>) -> Result<()> {
    let require_lambda = || -> Result<Radius> {
        let l = lambda.ok_or_else(|| {
            Error::InvalidArgument(format!("check --theorem {theorem} needs --lambda"))
        })?;
        Ok(Radius::Exact(parse_rational(l)?))
    };
    match theorem {
        "7.1" => {
            let s = ctx.structure()?;
            let l = require_lambda()?;
            let rep = check_theorem_71(&s, &l, &ctx.tol, ctx.cap)?;
            ctx.emit(
                "check",
                json!({
                    "theorem": "7.1",
                    "lambda": lambda,
                    "a_max_order_one": rep.a_max_order_one,
                    "b_pairwise_noncomparable": rep.b_pairwise_noncomparable,
                    "chain_length": rep.chain_length,
                    "margins": report::margins_json(&rep.margins),
                }),
                vec![],
            )
        }
        "7.2" => {
            let s = ctx.structure()?;
            let l = require_lambda()?;
            let rep = check_theorem_72(&s, &l, &ctx.tol, ctx.cap)?;
            let mut warnings = Vec::new();
            if !rep.implication_chain_ok {
                warnings.push("implication chain a=>b=>c=>d=>e violated".into());
            }
            ctx.emit(
                "check",
                json!({
                    "theorem": "7.2",
                    "lambda": lambda,
                    "a_kernel_dimension_one": opt_bool_json(rep.a_kernel_dimension_one),
                    "b_relint_faces_semi_distinguished": rep.b_relint_faces_semi_distinguished,
                    "c_relint_faces_comparable": rep.c_relint_faces_comparable,
                    "d_semi_distinguished_comparable": rep.d_semi_distinguished_comparable,
                    "e_eigencone_span_dimension_one": rep.e_eigencone_span_dimension_one,
                    "f_associated_faces_comparable": rep.f_associated_faces_comparable,
                    "implication_chain_ok": rep.implication_chain_ok,
                    "kernel_dimension": rep.kernel_dimension,
                    "margins": report::margins_json(&rep.margins),
                }),
                warnings,
            )
        }
        "6.1" => {
            let a = ctx.matrix()?;
            let k = ctx.cone_or_orthant(a.rows())?;
            let rep = check_theorem_61(&k, a, &ctx.tol, ctx.cap)?;
            let mut warnings = Vec::new();
            if !rep.equivalence_ok {
                warnings.push("equivalence of (a), (b), (c) violated".into());
            }
            ctx.emit(
                "check",
                json!({
                    "theorem": "6.1",
                    "a_unique_dual_distinguished_eigenvector": rep.unique_dual_distinguished_eigenvector,
                    "b_semi_distinguished_self": rep.semi_distinguished_self,
                    "c_dominant_spectral_pair": rep.dominant_spectral_pair,
                    "dual_extreme_ray_count": rep.dual_extreme_ray_count,
                    "equivalence_ok": rep.equivalence_ok,
                }),
                warnings,
            )
        }
        "6.4" => {
            let s = ctx.structure()?;
            let l = require_lambda()?;
            let rep = check_conditions_64(&s, &l, &ctx.tol, ctx.cap)?;
            let mut warnings = Vec::new();
            if !rep.self_check_ok {
                warnings
                    .push("library self-check failure: a condition is false on the orthant".into());
            }
            ctx.emit(
                "check",
                json!({
                    "theorem": "6.4",
                    "lambda": lambda,
                    "a_i_join_decomposition": rep.a_i_join_decomposition,
                    "a_ii_section_faces_lift": opt_bool_json(rep.a_ii_section_faces_lift),
                    "b_i_pair_saturation": rep.b_i_pair_saturation,
                    "b_ii_full_order_witness": opt_bool_json(rep.b_ii_full_order_witness),
                    "b_iii_domination_forces_semi": rep.b_iii_domination_forces_semi,
                    "c_pair_saturation_relint": rep.c_pair_saturation_relint,
                    "self_check_ok": rep.self_check_ok,
                    "margins": report::margins_json(&rep.margins),
                }),
                warnings,
            )
        }
        "B" => {
            let s = ctx.structure()?;
            let Some(rho) = s.spectral_radius().exact().cloned() else {
                return Err(Error::ExactModeRequired(
                    "the spectral radius is irrational; the kernel test needs a rational value"
                        .into(),
                ));
            };
            let rep = check_theorem_72(&s, &Radius::Exact(rho.clone()), &ctx.tol, ctx.cap)?;
            let basics: Vec<usize> = (0..s.class_count())
                .filter(|&c| s.classes()[c].basic)
                .collect();
            let mut comparable = true;
            'outer: for (i, &a) in basics.iter().enumerate() {
                for &b in &basics[i + 1..] {
                    if !s.has_access(a, b) && !s.has_access(b, a) {
                        comparable = false;
                        break 'outer;
                    }
                }
            }
            let a_verdict = rep.a_kernel_dimension_one == Some(true);
            ctx.emit(
                "check",
                json!({
                    "theorem": "B",
                    "rho": format_rational(&rho),
                    "kernel_dimension_one": a_verdict,
                    "basic_classes_pairwise_comparable": comparable,
                    "agree": a_verdict == comparable,
                }),
                vec![],
            )
        }
        "C" => {
            let s = ctx.structure()?;
            let (len, chain) = longest_basic_chain(&s);
            let basics: Vec<usize> = (0..s.class_count())
                .filter(|&c| s.classes()[c].basic)
                .collect();
            let mut no_comparable = true;
            'outer: for (i, &a) in basics.iter().enumerate() {
                for &b in &basics[i + 1..] {
                    if s.has_access(a, b) || s.has_access(b, a) {
                        no_comparable = false;
                        break 'outer;
                    }
                }
            }
            ctx.emit(
                "check",
                json!({
                    "theorem": "C",
                    "index_one": len == 1,
                    "longest_basic_chain": len,
                    "chain": chain
                        .iter()
                        .map(|&c| report::indices_json(&s.classes()[c].members))
                        .collect::<Vec<_>>(),
                    "no_comparable_basic_classes": no_comparable,
                    "agree": (len == 1) == no_comparable,
                }),
                vec![],
            )
        }
        other => Err(Error::InvalidArgument(format!(
            "unknown theorem {other:?} (expected 7.1, 7.2, 6.1, 6.4, B, or C)"
        ))),
    }
}

fn opt_bool_json(v: Option<bool>) -> Value {
    match v {
        Some(b) => Value::Bool(b),
        None => Value::String("unsupported".into()),
    }
}
