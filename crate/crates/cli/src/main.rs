mod args;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use balanced_core::assets::{bundled_lattice, is_slow_lattice, paulus_adjacency};
use balanced_core::constructors::{
    antipodal_union, c7_prime, complement, simplex_midpoints, srg_params, srg_spectral_embedding, standard_polytope,
    PolytopeConfig,
};
use balanced_core::designs::{design_strength, design_strength_float, theorem1_check, theorem1_check_float};
use balanced_core::io::{
    adjacency_to_text, configuration_to_json, coordinates_to_json, parse_adjacency, parse_config_input,
    parse_configuration, parse_euclidean, parse_lattice,
};
use balanced_core::lattice::{kissing_from_vectors, minimal_norm, short_vectors};
use balanced_core::numerics::{check_balanced_float, coordinates_from_gram, energy, saddle_demo, tangential_force};
use balanced_core::report::{analyze, analyze_float};
use balanced_core::symmetry::{fixed_subspace_dim, group_balance_with, isometry_group, point_stabilizer};
use balanced_core::{
    check_balanced, check_balanced_euclidean, ConfigInput, CoordinateSet, EigenChoice, Error, GroupSummary,
    LatticeGram, Polytope,
};
use clap::Parser;
use serde::Serialize;

use args::{Check, Cli, Command, Construct, Eigen};

/// Process outcome following the exit-code contract.
enum Failure {
    Input(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(m) => Failure::Resource(m),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<ConfigInput, Failure> {
    parse_config_input(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_exact(path: &Path) -> Result<balanced_core::Configuration, Failure> {
    parse_configuration(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_coordinates(path: &Path) -> Result<CoordinateSet, Failure> {
    Ok(match load(path)? {
        ConfigInput::Exact(c) => coordinates_from_gram(&c)?,
        ConfigInput::Float(p) => p,
    })
}

fn load_graph(spec: &str) -> Result<Vec<Vec<u8>>, Failure> {
    if spec.eq_ignore_ascii_case("paulus") {
        return Ok(paulus_adjacency());
    }
    let path = Path::new(spec);
    parse_adjacency(&read(path)?).map_err(|e| Failure::Input(format!("{spec}: {e}")))
}

fn load_lattice(spec: &str) -> Result<LatticeGram, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        return parse_lattice(&read(path)?).map_err(|e| Failure::Input(format!("{spec}: {e}")));
    }
    Ok(bundled_lattice(spec)?)
}

fn print_json<T: Serialize>(v: &T) {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    print!("{s}");
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
    }
}

fn construct(what: Construct, output: Option<&Path>) -> Outcome {
    let text = match what {
        Construct::SimplexMidpoints { n } => configuration_to_json(&simplex_midpoints(n)?),
        Construct::C7prime => configuration_to_json(&c7_prime()?),
        Construct::SrgEmbedding { graph, eigen, complement: comp } => {
            let mut adj = load_graph(&graph)?;
            if comp {
                adj = complement(&adj);
            }
            let choice = match eigen {
                Eigen::R => EigenChoice::R,
                Eigen::S => EigenChoice::S,
            };
            configuration_to_json(&srg_spectral_embedding(&adj, choice)?)
        }
        Construct::Kissing { lattice, allow_slow } => {
            let g = load_lattice(&lattice)?;
            if is_slow_lattice(&lattice) && !allow_slow {
                return Err(Failure::Resource(format!("{lattice} enumeration is slow; pass --allow-slow")));
            }
            let m = minimal_norm(&g);
            let set = short_vectors(&g, m)?;
            eprintln!("{} minimal vectors of norm {m}", set.len());
            configuration_to_json(&kissing_from_vectors(&g, &set)?)
        }
        Construct::AntipodalUnion { file } => configuration_to_json(&antipodal_union(&load_exact(&file)?)?),
        Construct::Polytope { name } => {
            let p: Polytope = name.parse()?;
            match standard_polytope(p)? {
                PolytopeConfig::Exact(c) => configuration_to_json(&c),
                PolytopeConfig::Float(p) => coordinates_to_json(&p),
            }
        }
        Construct::PaulusGraph { complement: comp } => {
            let adj = paulus_adjacency();
            adjacency_to_text(&if comp { complement(&adj) } else { adj })
        }
    };
    emit(&text, output)?;
    Ok(true)
}

fn check(what: Check) -> Outcome {
    match what {
        Check::Balanced(a) => match load(&a.file)? {
            ConfigInput::Exact(c) => {
                let r = check_balanced(&c);
                print_json(&r);
                Ok(r.balanced)
            }
            ConfigInput::Float(p) => {
                let r = check_balanced_float(&p, a.tol)?;
                print_json(&r);
                Ok(r.balanced)
            }
        },
        Check::Design(a) => {
            match load(&a.file)? {
                ConfigInput::Exact(c) => print_json(&design_strength(&c, a.cap)?),
                ConfigInput::Float(p) => print_json(&design_strength_float(&p, a.cap, a.tol)?),
            }
            Ok(true)
        }
        Check::Theorem1(a) => {
            let v = match load(&a.file)? {
                ConfigInput::Exact(c) => theorem1_check(&c, a.cap)?,
                ConfigInput::Float(p) => theorem1_check_float(&p, a.cap, a.tol)?,
            };
            print_json(&v);
            Ok(v.applies)
        }
        Check::GroupBalanced { file } => {
            let c = load_exact(&file)?;
            let g = isometry_group(&c);
            let r = group_balance_with(&c, &g)?;
            print_json(&r);
            Ok(r.group_balanced)
        }
        Check::Euclidean { file } => {
            let input =
                parse_euclidean(&read(&file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let r = check_balanced_euclidean(&input)?;
            print_json(&r);
            Ok(r.balanced)
        }
        Check::Srg { graph } => match srg_params(&load_graph(&graph)?) {
            Ok(p) => {
                #[derive(Serialize)]
                struct Out {
                    params: balanced_core::SrgParams,
                    degenerate: bool,
                    spectrum: Option<balanced_core::constructors::SrgSpectrum>,
                }
                print_json(&Out { params: p, degenerate: p.is_degenerate(), spectrum: p.spectrum().ok() });
                Ok(true)
            }
            Err(e @ Error::NotStronglyRegular(_)) => {
                eprintln!("{e}");
                Ok(false)
            }
            Err(e) => Err(e.into()),
        },
    }
}

fn symmetry(file: &Path, orbits_only: bool, stabilizer: Option<usize>) -> Outcome {
    let c = load_exact(file)?;
    let g = isometry_group(&c);
    match stabilizer {
        Some(i) => {
            let s = point_stabilizer(&g, i)?;
            #[derive(Serialize)]
            struct Out {
                point: usize,
                #[serde(flatten)]
                group: GroupSummary,
                fixed_dim: usize,
            }
            let fixed_dim = fixed_subspace_dim(&c, &s)?;
            print_json(&Out { point: i, group: GroupSummary::of(&s), fixed_dim });
        }
        None if orbits_only => {
            #[derive(Serialize)]
            struct Out {
                order: String,
                orbits: Vec<Vec<usize>>,
            }
            print_json(&Out { order: g.order().to_string(), orbits: g.orbits() });
        }
        None => print_json(&GroupSummary::of(&g)),
    }
    Ok(true)
}

fn lattice(spec: &str, norm: Option<i64>, vectors: bool, allow_slow: bool) -> Outcome {
    let g = load_lattice(spec)?;
    if is_slow_lattice(spec) && !allow_slow {
        return Err(Failure::Resource(format!("{spec} enumeration is slow; pass --allow-slow")));
    }
    let m = match norm {
        Some(m) => m,
        None => minimal_norm(&g),
    };
    let set = short_vectors(&g, m)?;
    #[derive(Serialize)]
    struct Out<'a> {
        label: Option<&'a str>,
        dimension: usize,
        norm: i64,
        count: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        vectors: Option<&'a [Vec<i64>]>,
    }
    print_json(&Out {
        label: g.label(),
        dimension: g.dim(),
        norm: m,
        count: set.len(),
        vectors: vectors.then_some(set.vectors.as_slice()),
    });
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct { what, output } => construct(what, output.as_deref()),
        Command::Check { what } => check(what),
        Command::Symmetry { file, orbits, stabilizer } => symmetry(&file, orbits, stabilizer),
        Command::Energy { file, s } => {
            let p = load_coordinates(&file)?;
            #[derive(Serialize)]
            struct Out {
                exponent: f64,
                energy: f64,
            }
            print_json(&Out { exponent: s, energy: energy(&p, s)? });
            Ok(true)
        }
        Command::Force { file, s } => {
            print_json(&tangential_force(&load_coordinates(&file)?, s)?);
            Ok(true)
        }
        Command::SaddleDemo { s, samples } => {
            print_json(&saddle_demo(s, samples)?);
            Ok(true)
        }
        Command::Lattice { lattice: spec, norm, vectors, allow_slow } => lattice(&spec, norm, vectors, allow_slow),
        Command::Report { file, cap, tol } => {
            let r = match load(&file)? {
                ConfigInput::Exact(c) => analyze(&c, cap)?,
                ConfigInput::Float(p) => analyze_float(&p, cap, tol)?,
            };
            print!("{}", r.to_json());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("error: thread pool: {e}");
        return ExitCode::from(3);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
