use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orbwave::continuous::{
    inner_product_daughters, meyer_sample, orbital_field_hh, verify_prop1, verify_prop2,
    verify_prop3, DaughterParams, Grid1D, MeyerKind,
};
use orbwave::filters::get_filter;
use orbwave::imageio::{
    quantize, read_coefficients, read_pgm, render_mosaic, synthetic_test_image, write_coefficients,
    write_field, write_pgm, MosaicLayout, RawImage8,
};
use orbwave::metrics::{compaction_curve, subband_energy, MetricsReport};
use orbwave::{AnyPyramid, Decomposition, Scheme};

const ORTHOGONALITY_TOLERANCE: f64 = 1e-6;
const ANTISYMMETRY_TOLERANCE: f64 = 1e-13;
const DEGENERATE_BELOW: f64 = 1e-14;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        source: orbwave::Error,
    },
    #[error(transparent)]
    Core(#[from] orbwave::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Core(e) if e.is_parse_error() => 2,
            CliError::Core(_) | CliError::Failed(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Separable and orbital wavelet decompositions of grayscale images.
#[derive(Debug, Parser)]
#[command(name = "orbwave", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose a PGM image into a coefficient file.
    Decompose {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        transform: TransformArgs,
    },
    /// Rebuild a PGM image from a coefficient file.
    Reconstruct {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check the two-scale Meyer field numerically.
    Verify(VerifyArgs),
    /// Render the subbands of a PGM image as a nested-quadrant mosaic.
    Mosaic {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        transform: TransformArgs,
    },
    /// Write subband energies and compaction curves for both schemes.
    Compare {
        input: PathBuf,
        /// Output prefix; writes PREFIX.energy.csv and PREFIX.compaction.csv.
        #[arg(short, long)]
        prefix: PathBuf,
        #[arg(short, long, default_value = "sym4")]
        wavelet: String,
        #[arg(short, long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        levels: u32,
        /// Comma-separated kept-coefficient fractions, ascending.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0.01,0.02,0.05,0.1,0.2,0.5"
        )]
        fractions: Vec<f64>,
    },
    /// Write the deterministic synthetic test image.
    GenTestImage {
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 256)]
        size: usize,
    },
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(short, long, default_value = "sym4")]
    wavelet: String,
    #[arg(short, long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    levels: u32,
    #[arg(short, long, default_value = "standard")]
    scheme: Scheme,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Real,
    Analytic,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Half-width of the sampling interval [-span, span).
    #[arg(long, default_value_t = 16.0)]
    span: f64,
    /// Sampling step; accepts decimals or fractions such as 1/32.
    #[arg(long, default_value = "1/32", value_parser = parse_real)]
    dt: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    a1: f64,
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    a2: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, value_enum, default_value_t = Mode::Real)]
    mode: Mode,
    /// Also write the sampled field to this file.
    #[arg(long)]
    dump_field: Option<PathBuf>,
}

fn parse_real(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
            let den: f64 = den.trim().parse().map_err(|e| format!("`{s}`: {e}"))?;
            num / den
        }
        None => s.trim().parse().map_err(|e| format!("`{s}`: {e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not a finite number"))
    }
}

fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_pgm(path: &Path) -> CliResult<RawImage8> {
    read_pgm(&read_file(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn decompose(input: &Path, t: &TransformArgs) -> CliResult<AnyPyramid> {
    let img = load_pgm(input)?;
    let fb = get_filter(&t.wavelet)?;
    Ok(AnyPyramid::decompose(
        &img.to_image(),
        &fb,
        t.levels as usize,
        t.scheme,
    )?)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Decompose {
            input,
            output,
            transform,
        } => {
            let p = decompose(&input, &transform)?;
            write_file(&output, &write_coefficients(&p, &transform.wavelet)?)
        }
        Command::Reconstruct { input, output } => {
            let file =
                read_coefficients(&read_file(&input)?).map_err(|source| CliError::Parse {
                    path: input.clone(),
                    source,
                })?;
            let fb = get_filter(&file.filter)?;
            let img = file.pyramid.reconstruct_image(&fb)?;
            write_file(&output, &write_pgm(&quantize(&img)))
        }
        Command::Verify(args) => verify(&args),
        Command::Mosaic {
            input,
            output,
            transform,
        } => {
            let p = decompose(&input, &transform)?;
            let (rows, cols) = p.image_shape();
            let layout = MosaicLayout::new(rows, cols, p.levels())?;
            write_file(&output, &write_pgm(&render_mosaic(&p, &layout)?))
        }
        Command::Compare {
            input,
            prefix,
            wavelet,
            levels,
            fractions,
        } => compare(&input, &prefix, &wavelet, levels as usize, &fractions),
        Command::GenTestImage { output, size } => {
            write_file(&output, &write_pgm(&synthetic_test_image(size, size)?))
        }
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn compare(
    input: &Path,
    prefix: &Path,
    wavelet: &str,
    levels: usize,
    fractions: &[f64],
) -> CliResult<()> {
    let img = load_pgm(input)?.to_image();
    let fb = get_filter(wavelet)?;
    println!("# orbwave compare");
    println!(
        "input={} wavelet={wavelet} levels={levels} fractions={}",
        input.display(),
        fractions
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    let mut energy = MetricsReport::new();
    let mut compaction = MetricsReport::new();
    for scheme in [Scheme::Standard, Scheme::Orbital] {
        let p = AnyPyramid::decompose(&img, &fb, levels, scheme)?;
        energy.extend_prefixed(&scheme.to_string(), subband_energy(&p));
        compaction.extend_prefixed(&scheme.to_string(), compaction_curve(&p, &fb, fractions)?);
    }
    print!("{}", compaction.to_text());
    write_file(
        &with_suffix(prefix, ".energy.csv"),
        energy.to_csv().as_bytes(),
    )?;
    write_file(
        &with_suffix(prefix, ".compaction.csv"),
        compaction.to_csv().as_bytes(),
    )
}

fn is_dyadic(ratio: f64) -> bool {
    let l = ratio.abs().log2();
    (l - l.round()).abs() < 1e-12 && l.round() != 0.0
}

fn verify(args: &VerifyArgs) -> CliResult<()> {
    let kind = match args.mode {
        Mode::Real => MeyerKind::Wavelet,
        Mode::Analytic => MeyerKind::AnalyticWavelet,
    };
    let grid = Grid1D::symmetric(args.span, args.dt)?;
    println!("# orbwave verify");
    println!(
        "wavelet=meyer mode={} span={} dt={} n={} a1={} a2={} b={}",
        match args.mode {
            Mode::Real => "real",
            Mode::Analytic => "analytic",
        },
        args.span,
        args.dt,
        grid.n,
        args.a1,
        args.a2,
        args.b,
    );

    let w = meyer_sample(kind, &grid)?;
    let field = orbital_field_hh(&w, args.a1, args.a2, args.b, &grid)?;
    if let Some(path) = &args.dump_field {
        write_file(path, &write_field(&field)?)?;
    }

    let mut report = MetricsReport::new();
    let peak = field.max_abs();
    report.record("field.max_abs", peak);
    if peak < DEGENERATE_BELOW {
        print!("{}", report.to_text());
        println!("degeneracy: field identically zero");
        println!("result: FAIL");
        return Err(CliError::Failed(
            "degenerate configuration: field identically zero".into(),
        ));
    }
    report.check(
        "field.antisymmetry",
        field.antisymmetry_residual(),
        ANTISYMMETRY_TOLERANCE,
    );

    let ip = inner_product_daughters(
        &w,
        DaughterParams::new(args.a1, args.b)?,
        DaughterParams::new(args.a2, args.b)?,
    )?;
    if is_dyadic(args.a2 / args.a1) && kind == MeyerKind::Wavelet {
        report.check("orthogonality.abs", ip.norm(), ORTHOGONALITY_TOLERANCE);
    } else {
        report.record("orthogonality.abs", ip.norm());
    }
    report.record("orthogonality.re", ip.re);
    report.record("orthogonality.im", ip.im);

    report.extend(verify_prop1(&field));
    report.extend(verify_prop2(&field));
    match verify_prop3(&field) {
        Ok(r) => report.extend(r),
        Err(e) => println!("prop3: skipped ({e})"),
    }
    print!("{}", report.to_text());
    let failed: Vec<String> = report.failures().map(|e| e.name.clone()).collect();
    if failed.is_empty() {
        println!("result: PASS");
        Ok(())
    } else {
        println!("result: FAIL");
        Err(CliError::Failed(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
