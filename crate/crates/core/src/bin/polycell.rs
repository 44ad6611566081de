//! Command-line front end. Complex arguments are `.pcc` paths or
//! `@fixture` names such as `@polygon:5`.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use polycell::blocks::{block_graph, face_blocks_by_label, face_blocks_intrinsic};
use polycell::complex_products::TensorProduct;
use polycell::conjecture::{parse_max_size, search, Hypotheses, SearchOptions};
use polycell::document::{emit, graph_dot, parse};
use polycell::factorization::complex_prime_factorization;
use polycell::fixtures::{by_name, FIXTURE_NAMES};
use polycell::homsearch::{count_complex_homomorphisms, count_graph_homomorphisms};
use polycell::symmetry::{complex_automorphism_group_with_budget, DEFAULT_BUDGET};
use polycell::verify::{run_suite, SuiteOptions};
use polycell::{Complex, Error};

#[derive(Parser)]
#[command(name = "polycell", version, about = "Tensor products of graphs and polygonal cell complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteFlags {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    /// Node budget for each search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Tensor product of two or more complexes, as a document.
    Product {
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Link of a vertex, by name.
    Link {
        input: String,
        vertex: String,
        #[arg(long)]
        dot: bool,
    },
    /// Euler characteristic.
    Euler { input: String },
    /// Automorphism group order and orbit counts.
    Aut {
        input: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Flag count and flag-transitivity; exits 1 when not flag-transitive.
    Flags {
        input: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Validate a document and list its properties.
    Check {
        input: String,
        /// Print the skeleton as DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Prime factorization of a simple complex.
    Factor {
        input: String,
        #[command(flatten)]
        output: Output,
    },
    /// Face blocks of the product of even-gon complexes.
    Blocks {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Print the block graph as DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Number of homomorphisms between skeletons, or between complexes.
    Homcount {
        source: String,
        target: String,
        #[arg(long)]
        complex: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        flags: SuiteFlags,
    },
    /// Search for automorphisms of product components beyond the Cartesian ones.
    Conjecture {
        /// h11 or h12.
        which: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest factor skeleton: small, medium, large or a vertex count.
        #[arg(long, default_value = "small")]
        max_size: String,
        /// Largest product component examined, in vertices.
        #[arg(long, default_value_t = 300)]
        max_component: usize,
        #[arg(long, default_value_t = 3)]
        max_factors: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Accepted for uniformity with `verify`; the search is exhaustive.
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Print a built-in fixture as a document.
    Fixture {
        name: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    /// The property asked about does not hold.
    False(String),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Error(e)
    }
}

type CliResult = Result<(), Failure>;

fn load(arg: &str) -> Result<Complex, Error> {
    if let Some(name) = arg.strip_prefix('@') {
        return by_name(name);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::BadParameter(format!("{arg}: {e}")))?;
    parse(&text)
}

fn write(output: &Output, text: &str) -> Result<(), Error> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::BadParameter(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Product { inputs, output } => {
            let factors = inputs.iter().map(|a| load(a)).collect::<Result<Vec<_>, _>>()?;
            let p = TensorProduct::new(factors)?;
            write(&output, &emit(p.complex()))?;
        }
        Command::Link { input, vertex, dot } => {
            let x = load(&input)?;
            let v = x
                .skeleton()
                .find_vertex(&vertex)
                .ok_or_else(|| Error::UnknownVertex(vertex.clone()))?;
            let link = x.link(v)?;
            if dot {
                print!("{}", graph_dot(&link.graph, &format!("link of {vertex}")));
            } else {
                let g = &link.graph;
                println!("link of {vertex}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
                for e in g.edges() {
                    println!("{} {} {}", e.name, g.vertex_name(e.ends[0]), g.vertex_name(e.ends[1]));
                }
            }
        }
        Command::Euler { input } => {
            println!("{}", load(&input)?.euler_characteristic());
        }
        Command::Aut { input, budget } => {
            let x = load(&input)?;
            let aut = complex_automorphism_group_with_budget(&x, budget)?;
            println!("order {}", aut.order());
            println!("vertex orbits {}", aut.vertex_orbits().len());
            println!("edge orbits {}", aut.edge_orbits().len());
            println!("face orbits {}", aut.face_orbits().len());
            println!("flag orbits {}", aut.flag_orbits().len());
        }
        Command::Flags { input, budget } => {
            let x = load(&input)?;
            let orbits = complex_automorphism_group_with_budget(&x, budget)?.flag_orbits().len();
            println!("flags {}", x.flag_count());
            println!("flag orbits {orbits}");
            if orbits > 1 {
                return Err(Failure::False("not flag-transitive".into()));
            }
            println!("flag-transitive");
        }
        Command::Check { input, dot } => {
            let x = load(&input)?;
            x.validate()?;
            let g = x.skeleton();
            if dot {
                print!("{}", graph_dot(g, &input));
                return Ok(());
            }
            let (rank, torsion) = x.homology_h1();
            println!("vertices {}", g.vertex_count());
            println!("edges {}", g.edge_count());
            println!("faces {}", x.face_count());
            println!("flags {}", x.flag_count());
            println!("components {}", x.components().len());
            println!("euler characteristic {}", x.euler_characteristic());
            println!("H1 rank {rank} torsion {torsion:?}");
            println!("skeleton simple {}", yes(g.is_simple()));
            println!("skeleton bipartite {}", yes(g.is_bipartite()));
            println!("simple complex {}", yes(x.is_simple_complex()));
            println!("polygonal {}", yes(x.is_polygonal()));
            println!("surface structure {}", yes(x.has_surface_structure()));
            match x.uniform_face_length() {
                Some(n) => println!("face length {n}"),
                None => println!("face length mixed"),
            }
            println!("elementary {}", yes(x.is_elementary()));
            println!("ordinary {}", yes(x.is_ordinary()));
        }
        Command::Factor { input, output } => {
            let x = load(&input)?;
            let f = complex_prime_factorization(&x)?;
            if !f.verify(&x) {
                return Err(Failure::False("certificate does not verify".into()));
            }
            let mut text = format!("# {} prime factor(s), certificate verified\n", f.factors.len());
            for (i, y) in f.factors.iter().enumerate() {
                text.push_str(&format!("# factor {i}\n"));
                text.push_str(&emit(y));
            }
            write(&output, &text)?;
        }
        Command::Blocks { inputs, dot } => {
            let factors = inputs.iter().map(|a| load(a)).collect::<Result<Vec<_>, _>>()?;
            if dot {
                let bg = block_graph(&factors)?;
                print!("{}", graph_dot(&bg.graph, "block graph"));
                return Ok(());
            }
            let p = TensorProduct::new(factors)?;
            let blocks = face_blocks_by_label(&p)?;
            let x = p.complex();
            for (i, b) in blocks.iter().enumerate() {
                let gens: Vec<String> = b
                    .generators
                    .iter()
                    .zip(&p.factors)
                    .map(|(f, y)| y.face(*f).name.clone())
                    .collect();
                let faces: Vec<&str> = b.faces.iter().map(|f| x.face(*f).name.as_str()).collect();
                println!("block {i} ({}) class {:?}: {}", gens.join(","), b.class, faces.join(" "));
            }
            let mut by_label: Vec<_> = blocks.into_iter().map(|b| b.faces).collect();
            by_label.sort();
            let mut intrinsic: Vec<_> = face_blocks_intrinsic(x)?.into_iter().map(|b| b.faces).collect();
            intrinsic.sort();
            println!("intrinsic blocks agree {}", yes(by_label == intrinsic));
            if by_label != intrinsic {
                return Err(Failure::False("intrinsic blocks differ from label blocks".into()));
            }
        }
        Command::Homcount { source, target, complex } => {
            let (x, y) = (load(&source)?, load(&target)?);
            let n = if complex {
                count_complex_homomorphisms(&x, &y)
            } else {
                count_graph_homomorphisms(x.skeleton(), y.skeleton())
            };
            println!("{n}");
        }
        Command::Verify { suite, flags } => {
            let start = Instant::now();
            let opts = SuiteOptions {
                seed: flags.seed,
                trials: flags.trials,
                budget: flags.budget,
            };
            let report = run_suite(&suite, &opts)?;
            write(&flags.output, &report.render())?;
            eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
            if !report.passed() {
                return Err(Failure::False(format!("suite {suite} failed")));
            }
        }
        Command::Conjecture {
            which,
            seed,
            max_size,
            max_component,
            max_factors,
            budget,
            trials: _,
            output,
        } => {
            let start = Instant::now();
            let hyp = Hypotheses::parse(&which)?;
            let opts = SearchOptions {
                seed,
                max_size: parse_max_size(&max_size)?,
                max_component,
                max_factors,
                budget,
            };
            let report = search(hyp, &opts)?;
            write(&output, &report.render())?;
            eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
            if report.counterexample.is_some() {
                return Err(Failure::False("counterexample found".into()));
            }
        }
        Command::Fixture { name, output } => match name {
            None => {
                for n in FIXTURE_NAMES {
                    println!("{n}");
                }
            }
            Some(name) => write(&output, &emit(&by_name(&name)?))?,
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::False(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::TooLarge(_) | Error::Budget(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

