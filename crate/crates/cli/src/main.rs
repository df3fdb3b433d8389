use clap::{Parser, Subcommand, ValueEnum};
use liereps::branching::{decompose_irrep, decompose_irrep_at, extend_registry, parse_rational, parse_registry};
use liereps::cli_io::{
    generate_table, parse_irrep_spec_with, render_irrep, render_label, render_product_sum, render_sum, render_vector,
    Format, TableKind, TableOptions, DEFAULT_MAX_DIGIT,
};
use liereps::irrep_props::{congruency_class, dim, dim_name, index, normalized_index, Part, ProductIrrep};
use liereps::roots::{positive_roots, spindle};
use liereps::tensor::decompose_product;
use liereps::weights::Irrep;
use liereps::weyl::orbit;
use liereps::{convert_basis, parse_algebra, parse_simple_algebra, AlgebraId, Basis, Error, Vector};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Weights, tensor products and branching rules of simple Lie algebras.
#[derive(Parser)]
#[command(name = "liereps", version)]
struct Cli {
    /// Output format.
    #[arg(long, short, global = true, default_value = "plain")]
    format: Format,
    /// Largest Dynkin digit searched when resolving dimensional names.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIGIT)]
    max_digit: i32,
    /// Extra embedding rules, in the built-in registry format.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Properties of one irrep.
    Irrep { algebra: String, spec: String },
    /// Decompose a tensor product.
    Product {
        algebra: String,
        #[arg(required = true, num_args = 1..)]
        specs: Vec<String>,
    },
    /// Decompose an irrep into a subalgebra.
    Branch {
        /// Simple algebra, or a product such as `SU5*SU3*U1` together with `--pos`.
        algebra: String,
        /// One spec per factor of the algebra; U1 factors take a charge.
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        specs: Vec<String>,
        #[arg(long)]
        to: String,
        /// 1-based factor to decompose when the algebra is a product.
        #[arg(long)]
        pos: Option<usize>,
    },
    /// Positive roots.
    Roots {
        algebra: String,
        /// Print all roots as a spindle, one level per line.
        #[arg(long)]
        spindle: bool,
        #[arg(long, value_enum, default_value = "omega")]
        basis: BasisArg,
    },
    /// Weyl orbit of a weight given by its Dynkin label.
    Orbit {
        algebra: String,
        label: String,
        #[arg(long, value_enum, default_value = "omega")]
        basis: BasisArg,
    },
    /// Property, product and branching tables.
    Table {
        kind: TableKind,
        algebra: String,
        #[arg(long, default_value_t = 100)]
        max_dim: u64,
        /// Also list conjugate irreps.
        #[arg(long)]
        conjugates: bool,
        /// Subalgebras whose singlet counts become extra columns.
        #[arg(long, value_delimiter = ',')]
        singlets: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Omega,
    Alpha,
    Orthogonal,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Omega => Basis::Omega,
            BasisArg::Alpha => Basis::Alpha,
            BasisArg::Orthogonal => Basis::Orthogonal,
        }
    }
}

/// Generated tables are stored here when set.
const CACHE_ENV: &str = "LIEREPS_CACHE_DIR";

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let end = if out.ends_with('\n') { "" } else { "\n" };
            match write!(stdout, "{out}{end}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("liereps: {e}");
                    ExitCode::from(4)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("liereps: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownEmbedding { .. } => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn simple(name: &str) -> liereps::Result<AlgebraId> {
    parse_simple_algebra(name)
}

fn run(cli: &Cli) -> liereps::Result<String> {
    if let Some(path) = &cli.registry {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        extend_registry(parse_registry(&text)?);
    }
    let fmt = cli.format;
    let spec = |a: AlgebraId, s: &str| parse_irrep_spec_with(a, s, cli.max_digit);
    match &cli.command {
        Command::Irrep { algebra, spec: s } => {
            let r = spec(simple(algebra)?, s)?;
            irrep_report(&r, fmt)
        }
        Command::Product { algebra, specs } => {
            let a = simple(algebra)?;
            let irreps = specs.iter().map(|s| spec(a, s)).collect::<liereps::Result<Vec<_>>>()?;
            render_sum(&decompose_product(&irreps)?, fmt)
        }
        Command::Branch { algebra, specs, to, pos } => {
            let target = parse_algebra(to)?;
            let origin = parse_algebra(algebra)?;
            match (origin.as_simple(), pos) {
                (Some(a), None | Some(1)) if specs.len() == 1 => {
                    render_product_sum(&decompose_irrep(&spec(a, &specs[0])?, &target)?, fmt)
                }
                _ => {
                    let p = product_irrep(&origin.factors, specs, cli.max_digit)?;
                    let pos = pos.ok_or_else(|| Error::InvalidInput("--pos is required for a product algebra".into()))?;
                    render_product_sum(&decompose_irrep_at(&p, &target, pos)?, fmt)
                }
            }
        }
        Command::Roots { algebra, spindle: sp, basis } => {
            let a = simple(algebra)?;
            if *sp {
                return spindle(a);
            }
            vectors(&positive_roots(a)?, (*basis).into(), fmt)
        }
        Command::Orbit { algebra, label, basis } => {
            let a = simple(algebra)?;
            let digits = parse_digits(label)?;
            let o = orbit(&Vector::weight(a, &digits)?)?;
            vectors(&o.elements, (*basis).into(), fmt)
        }
        Command::Table { kind, algebra, max_dim, conjugates, singlets } => {
            let a = simple(algebra)?;
            let mut opts = TableOptions::new(*max_dim, fmt);
            opts.conjugates = *conjugates;
            opts.singlets = singlets.iter().map(|s| parse_algebra(s)).collect::<liereps::Result<_>>()?;
            let key = format!("{kind:?}-{}-{max_dim}-{fmt:?}-{conjugates}-{}", a.cartan_name(), singlets.join("_"));
            cached(&key, || generate_table(*kind, a, &opts))
        }
    }
}

fn irrep_report(r: &Irrep, fmt: Format) -> liereps::Result<String> {
    let rows = [
        ("name", render_irrep(r, fmt)?),
        ("label", render_label(&r.label)),
        ("dim", dim(r)?.to_string()),
        ("index", index(r)?.to_string()),
        ("normalized index", normalized_index(r)?.to_string()),
        ("congruency", congruency_class(r).to_string()),
        ("dimensional name", dim_name(r)?.to_string()),
    ];
    Ok(rows.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n"))
}

fn product_irrep(factors: &[AlgebraId], specs: &[String], max_digit: i32) -> liereps::Result<ProductIrrep> {
    if factors.len() != specs.len() {
        return Err(Error::InvalidInput(format!("expected {} factor specs, got {}", factors.len(), specs.len())));
    }
    let parts = factors
        .iter()
        .zip(specs)
        .map(|(a, s)| {
            if a.is_u1() {
                parse_rational(s).map(Part::Charge).ok_or_else(|| Error::Parse(format!("bad U1 charge `{s}`")))
            } else {
                parse_irrep_spec_with(*a, s, max_digit).map(Part::Irrep)
            }
        })
        .collect::<liereps::Result<_>>()?;
    Ok(ProductIrrep::new(parts))
}

fn parse_digits(text: &str) -> liereps::Result<Vec<i32>> {
    let inner = text.trim().trim_start_matches(['(', '[', '⟨']).trim_end_matches([')', ']', '⟩']);
    inner
        .split(',')
        .map(|d| d.trim().parse().map_err(|_| Error::Parse(format!("bad Dynkin digit `{d}`"))))
        .collect()
}

fn vectors(vs: &[Vector], basis: Basis, fmt: Format) -> liereps::Result<String> {
    let lines = vs
        .iter()
        .map(|v| Ok(render_vector(&convert_basis(v, basis)?, fmt)))
        .collect::<liereps::Result<Vec<_>>>()?;
    Ok(lines.join("\n"))
}

fn cached(key: &str, make: impl FnOnce() -> liereps::Result<String>) -> liereps::Result<String> {
    let Some(dir) = std::env::var_os(CACHE_ENV).map(PathBuf::from) else {
        return make();
    };
    let path = dir.join(format!("table-{}.txt", sanitize(key)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        return Ok(text);
    }
    let text = make()?;
    store(&dir, &path, &text);
    Ok(text)
}

/// Cache writes are best effort.
fn store(dir: &Path, path: &Path, text: &str) {
    if std::fs::create_dir_all(dir).and_then(|_| std::fs::write(path, text)).is_err() {
        eprintln!("liereps: could not write cache file {}", path.display());
    }
}

fn sanitize(key: &str) -> String {
    key.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}
