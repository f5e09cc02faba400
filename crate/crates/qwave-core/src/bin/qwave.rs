//! Batch command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input, 2 verification failure,
//! 3 internal failure. Errors are emitted as one JSON object on stderr.
//! Output is byte-identical for identical inputs and seed.

use std::io::Read as _;
use std::process::exit;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qwave_core::bank::WaveletBank2;
use qwave_core::error::{Error, Result};
use qwave_core::io::{
    bank_to_csv, bank_to_dto, fmt_decimal15, fmt_value, moments_to_dto, pair_to_dto, phi_to_dto,
    rationalization_to_dto, scalar_to_dto, to_json_line, to_json_pretty, AnyBank, AnyPhi, BankDto,
    PairDto, PhiDto, ScalarDto,
};
use qwave_core::param::{phi_to_pair, PhiParam};
use qwave_core::rationalize::{
    bank_phi, rationalize_bank, screen, ApproxStrategy, RationalizationResult, SCREEN_BUDGET,
};
use qwave_core::scalar::{Rat, Scalar};
use qwave_core::signal::{analyze, synthesize, Signal};
use qwave_core::{daubechies, fixtures};

#[derive(Parser)]
#[command(
    name = "qwave",
    version,
    about = "Wavelet filter banks with exact rational reconstruction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Require the input (or output) scalar field.
    #[arg(long, global = true, value_enum)]
    field: Option<FieldArg>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Json)]
    output: OutputArg,

    /// Residual tolerance for float-mode checks.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tolerance: f64,

    /// Seed for randomized subcommands, recorded in their output.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FieldArg {
    Rational,
    Float64,
}

impl FieldArg {
    fn name(self) -> &'static str {
        match self {
            FieldArg::Rational => "rational",
            FieldArg::Float64 => "float64",
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputArg {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the float prototype bank of a given genus.
    Gen { genus: usize },

    /// Recover the Laurent parameter of a bank ("-" reads stdin).
    Phi { bank: String },

    /// Build the canonical pair and the bank encoded by a parameter file.
    Lift {
        phi: String,
        /// Bank genus; defaults to the parameter degree plus one.
        #[arg(long)]
        genus: Option<usize>,
    },

    /// Replace a float bank by a nearby bank that is exact over the rationals.
    Rationalize {
        bank: String,
        /// dyadic:K | best:EPS | maxden:Q
        #[arg(long)]
        strategy: String,
    },

    /// Enumerate rational banks near a float bank under a denominator cap.
    Screen {
        bank: String,
        /// screen:EPS,DMAX (alternative to --epsilon/--dmax)
        #[arg(long)]
        strategy: Option<String>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        dmax: Option<u64>,
        /// Largest candidate grid the search will accept.
        #[arg(long, default_value_t = SCREEN_BUDGET)]
        budget: usize,
    },

    /// Check the quadratic and linear conditions; exit 2 when they fail.
    Verify { bank: String },

    /// Moments of the highpass row.
    Moments {
        bank: String,
        /// Largest moment order; defaults to genus - 1.
        #[arg(long)]
        pmax: Option<usize>,
    },

    /// Analyze and resynthesize random integer signals; exit 2 on mismatch.
    PrTest {
        bank: String,
        #[arg(long, default_value_t = 128)]
        len: usize,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },

    /// Regenerate the built-in reference tables.
    Tables,
}

fn main() {
    // Die quietly on a closed pipe, like any other filter in a pipeline.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                print!("{e}");
                exit(0);
            }
            emit_error(&Error::Malformed(e.to_string()));
            exit(1);
        }
    };
    if let Err(e) = run(&cli) {
        emit_error(&e);
        exit(match e {
            Error::NotParaunitary { .. } | Error::RoundTripMismatch { .. } => 2,
            Error::SingularSystem(_) | Error::RootFindingFailure(_) | Error::BudgetExceeded { .. } => 3,
            _ => 1,
        });
    }
}

fn emit_error(e: &Error) {
    let envelope = serde_json::json!({
        "error": { "kind": e.kind(), "message": e.to_string() }
    });
    eprintln!("{envelope}");
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn check_field(cli: &Cli, actual: &'static str) -> Result<()> {
    if let Some(want) = cli.field {
        if want.name() != actual {
            return Err(Error::ModeMismatch(format!(
                "input is {actual} but --field {} was given",
                want.name()
            )));
        }
    }
    Ok(())
}

fn load_bank(cli: &Cli, path: &str) -> Result<AnyBank> {
    let bank = AnyBank::from_json(&read_input(path)?)?;
    check_field(cli, bank.field_name())?;
    Ok(bank)
}

/// Float view of a bank: rational taps are converted tap-for-tap.
fn float_view(bank: &AnyBank) -> Result<WaveletBank2<f64>> {
    match bank {
        AnyBank::Float(b) => Ok(b.clone()),
        AnyBank::Rational(b) => WaveletBank2::from_rows(
            b.h0().iter().map(Scalar::to_f64).collect(),
            b.h1().iter().map(Scalar::to_f64).collect(),
        ),
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Gen { genus } => cmd_gen(cli, *genus),
        Command::Phi { bank } => cmd_phi(cli, bank),
        Command::Lift { phi, genus } => cmd_lift(cli, phi, *genus),
        Command::Rationalize { bank, strategy } => cmd_rationalize(cli, bank, strategy),
        Command::Screen {
            bank,
            strategy,
            epsilon,
            dmax,
            budget,
        } => cmd_screen(cli, bank, strategy.as_deref(), *epsilon, *dmax, *budget),
        Command::Verify { bank } => cmd_verify(cli, bank),
        Command::Moments { bank, pmax } => cmd_moments(cli, bank, *pmax),
        Command::PrTest { bank, len, trials } => cmd_pr_test(cli, bank, *len, *trials),
        Command::Tables => cmd_tables(cli),
    }
}

fn cmd_gen(cli: &Cli, genus: usize) -> Result<()> {
    if cli.field == Some(FieldArg::Rational) {
        return Err(Error::ModeMismatch(
            "gen emits float64 banks; use rationalize for exact output".to_string(),
        ));
    }
    let bank = daubechies::generate(genus)?;
    match cli.output {
        OutputArg::Json => println!("{}", AnyBank::Float(bank).to_json()),
        OutputArg::Csv => print!("{}", bank_to_csv(&bank, genus.saturating_sub(1))),
        OutputArg::Plain => print_bank_plain(&bank, genus.saturating_sub(1)),
    }
    Ok(())
}

fn cmd_phi(cli: &Cli, path: &str) -> Result<()> {
    let any = load_bank(cli, path)?;
    let phi = match &any {
        AnyBank::Rational(b) => AnyPhi::Rational(bank_phi(b, cli.tolerance)?),
        AnyBank::Float(b) => AnyPhi::Float(bank_phi(b, cli.tolerance)?),
    };
    match cli.output {
        OutputArg::Json => println!("{}", phi.to_json()),
        OutputArg::Csv => match &phi {
            AnyPhi::Rational(p) => print!("{}", phi_csv(p)),
            AnyPhi::Float(p) => print!("{}", phi_csv(p)),
        },
        OutputArg::Plain => match &phi {
            AnyPhi::Rational(p) => print_phi_plain(p),
            AnyPhi::Float(p) => print_phi_plain(p),
        },
    }
    Ok(())
}

#[derive(Serialize)]
struct LiftDto {
    pair: PairDto,
    bank: BankDto,
}

fn cmd_lift(cli: &Cli, path: &str, genus: Option<usize>) -> Result<()> {
    let any = AnyPhi::from_json(&read_input(path)?)?;
    match any {
        AnyPhi::Rational(phi) => {
            check_field(cli, Rat::FIELD_NAME)?;
            let genus = genus.unwrap_or(phi.n() + 1);
            let pair = phi_to_pair(&phi)?;
            let bank = WaveletBank2::from_param(&pair, genus)?;
            emit_lift(cli, &pair_to_dto(&pair), &bank, genus)
        }
        AnyPhi::Float(phi) => {
            check_field(cli, f64::FIELD_NAME)?;
            let genus = genus.unwrap_or(phi.n() + 1);
            let pair = phi_to_pair(&phi)?;
            let bank = WaveletBank2::from_param(&pair, genus)?;
            emit_lift(cli, &pair_to_dto(&pair), &bank, genus)
        }
    }
}

fn emit_lift<S: Scalar>(
    cli: &Cli,
    pair: &PairDto,
    bank: &WaveletBank2<S>,
    genus: usize,
) -> Result<()> {
    match cli.output {
        OutputArg::Json => {
            let dto = LiftDto {
                pair: pair.clone(),
                bank: bank_to_dto(bank),
            };
            println!("{}", to_json_pretty(&dto));
        }
        OutputArg::Csv => print!("{}", bank_to_csv(bank, genus.saturating_sub(1))),
        OutputArg::Plain => print_bank_plain(bank, genus.saturating_sub(1)),
    }
    Ok(())
}

fn parse_strategy(text: &str) -> Result<ApproxStrategy> {
    ApproxStrategy::from_str(text)
}

fn cmd_rationalize(cli: &Cli, path: &str, strategy: &str) -> Result<()> {
    let strategy = parse_strategy(strategy)?;
    if matches!(strategy, ApproxStrategy::Screening { .. }) {
        return Err(Error::InvalidStrategy(
            "screen:EPS,DMAX enumerates many banks; use the screen subcommand".to_string(),
        ));
    }
    let any = load_bank(cli, path)?;
    let float = float_view(&any)?;
    let result = rationalize_bank(&float, &strategy, cli.tolerance)?;
    emit_rationalization(cli, &result)
}

fn emit_rationalization(cli: &Cli, r: &RationalizationResult) -> Result<()> {
    match cli.output {
        OutputArg::Json => println!("{}", to_json_pretty(&rationalization_to_dto(r))),
        OutputArg::Csv => {
            let mut out = String::from("row,value,decimal\n");
            for (k, g) in r.phi_q.gammas().iter().enumerate() {
                out.push_str(&format!(
                    "gamma{},{},{}\n",
                    k + 1,
                    fmt_value(g),
                    fmt_decimal15(Scalar::to_f64(g))
                ));
            }
            let body = bank_to_csv(&r.bank, r.bank.genus().saturating_sub(1));
            out.push_str(body.splitn(2, '\n').nth(1).unwrap_or(""));
            out.push_str(&format!(
                "max_tap_denominator,{},\ninput_distance,{},\n",
                r.max_tap_denominator, r.input_distance
            ));
            print!("{out}");
        }
        OutputArg::Plain => {
            for (k, g) in r.phi_q.gammas().iter().enumerate() {
                println!(
                    "gamma{} = {}  ({})",
                    k + 1,
                    fmt_value(g),
                    fmt_decimal15(Scalar::to_f64(g))
                );
            }
            print_bank_plain(&r.bank, r.bank.genus().saturating_sub(1));
            println!("max tap denominator: {}", r.max_tap_denominator);
            println!("distance to input:   {}", r.input_distance);
        }
    }
    Ok(())
}

fn cmd_screen(
    cli: &Cli,
    path: &str,
    strategy: Option<&str>,
    epsilon: Option<f64>,
    dmax: Option<u64>,
    budget: usize,
) -> Result<()> {
    let (epsilon, d_max) = match strategy {
        Some(text) => match parse_strategy(text)? {
            ApproxStrategy::Screening { epsilon, d_max } => (epsilon, d_max),
            other => {
                return Err(Error::InvalidStrategy(format!(
                    "screen expects screen:EPS,DMAX, got {other}"
                )))
            }
        },
        None => match (epsilon, dmax) {
            (Some(e), Some(d)) => (e, d),
            _ => {
                return Err(Error::InvalidParameter(
                    "screen needs --strategy screen:EPS,DMAX or both --epsilon and --dmax"
                        .to_string(),
                ))
            }
        },
    };
    let any = load_bank(cli, path)?;
    let float = float_view(&any)?;
    let results = screen(&float, epsilon, d_max, budget, cli.tolerance)?;
    match cli.output {
        OutputArg::Json => {
            for r in &results {
                println!("{}", to_json_line(&rationalization_to_dto(r)));
            }
        }
        OutputArg::Csv => {
            println!("rank,max_tap_denominator,phi,h0,max_moment,input_distance");
            for (i, r) in results.iter().enumerate() {
                let phi = join_scalars(r.phi_q.gammas());
                let taps = join_scalars(r.bank.h0());
                println!(
                    "{},{},{},{},{},{}",
                    i + 1,
                    r.max_tap_denominator,
                    phi,
                    taps,
                    fmt_value(&r.moments.max_abs_above_zero()),
                    r.input_distance
                );
            }
        }
        OutputArg::Plain => {
            for (i, r) in results.iter().enumerate() {
                println!(
                    "{}. den={} phi=[{}] dist={}",
                    i + 1,
                    r.max_tap_denominator,
                    join_scalars(r.phi_q.gammas()),
                    r.input_distance
                );
            }
        }
    }
    Ok(())
}

fn join_scalars<S: Scalar>(xs: &[S]) -> String {
    xs.iter().map(fmt_value).collect::<Vec<_>>().join(";")
}

#[derive(Serialize)]
struct VerifyDto {
    field: &'static str,
    genus: usize,
    shift_residual: ScalarDto,
    polyphase_residual: ScalarDto,
    modulation_residual: ScalarDto,
    h0_at_one: ScalarDto,
    h1_at_one: ScalarDto,
    exact: bool,
    tolerance: f64,
    pass: bool,
}

fn verify_report<S: Scalar>(bank: &WaveletBank2<S>, tol: f64) -> (VerifyDto, f64) {
    let quad = bank.check_quadratic();
    let (h0_one, h1_one) = bank.check_linear();
    let lin_res = (h0_one.clone() - S::from_int(2))
        .abs()
        .to_f64()
        .max(h1_one.abs().to_f64());
    let quad_ok = if S::EXACT {
        quad.is_exact_zero()
    } else {
        quad.within(tol)
    };
    let lin_ok = if S::EXACT {
        h0_one == S::from_int(2) && h1_one == S::zero()
    } else {
        lin_res <= tol
    };
    let dto = VerifyDto {
        field: S::FIELD_NAME,
        genus: bank.genus(),
        shift_residual: scalar_to_dto(&quad.shift),
        polyphase_residual: scalar_to_dto(&quad.polyphase),
        modulation_residual: scalar_to_dto(&quad.modulation),
        h0_at_one: scalar_to_dto(&h0_one),
        h1_at_one: scalar_to_dto(&h1_one),
        exact: S::EXACT,
        tolerance: tol,
        pass: quad_ok && lin_ok,
    };
    let residual = quad.max_residual().to_f64().max(lin_res);
    (dto, residual)
}

fn cmd_verify(cli: &Cli, path: &str) -> Result<()> {
    let any = load_bank(cli, path)?;
    let (dto, residual) = match &any {
        AnyBank::Rational(b) => verify_report(b, cli.tolerance),
        AnyBank::Float(b) => verify_report(b, cli.tolerance),
    };
    match cli.output {
        OutputArg::Json => println!("{}", to_json_pretty(&dto)),
        OutputArg::Csv => {
            println!("check,value");
            println!("field,{}", dto.field);
            println!("genus,{}", dto.genus);
            println!("shift_residual,{}", dto_text(&dto.shift_residual));
            println!("polyphase_residual,{}", dto_text(&dto.polyphase_residual));
            println!("modulation_residual,{}", dto_text(&dto.modulation_residual));
            println!("h0_at_one,{}", dto_text(&dto.h0_at_one));
            println!("h1_at_one,{}", dto_text(&dto.h1_at_one));
            println!("pass,{}", dto.pass);
        }
        OutputArg::Plain => {
            println!("field:               {}", dto.field);
            println!("genus:               {}", dto.genus);
            println!("shift residual:      {}", dto_text(&dto.shift_residual));
            println!("polyphase residual:  {}", dto_text(&dto.polyphase_residual));
            println!("modulation residual: {}", dto_text(&dto.modulation_residual));
            println!("h0(1):               {}", dto_text(&dto.h0_at_one));
            println!("h1(1):               {}", dto_text(&dto.h1_at_one));
            println!("pass:                {}", dto.pass);
        }
    }
    if dto.pass {
        Ok(())
    } else {
        Err(Error::NotParaunitary { residual })
    }
}

fn dto_text(s: &ScalarDto) -> String {
    match s {
        ScalarDto::Text(t) => t.clone(),
        ScalarDto::Number(x) => format!("{x}"),
    }
}

#[derive(Serialize)]
struct MomentsDto {
    field: &'static str,
    genus: usize,
    pmax: usize,
    values: Vec<ScalarDto>,
    decimals: Vec<String>,
}

fn cmd_moments(cli: &Cli, path: &str, pmax: Option<usize>) -> Result<()> {
    let any = load_bank(cli, path)?;
    let dto = match &any {
        AnyBank::Rational(b) => moments_dto(b, pmax),
        AnyBank::Float(b) => moments_dto(b, pmax),
    };
    match cli.output {
        OutputArg::Json => println!("{}", to_json_pretty(&dto)),
        OutputArg::Csv => {
            println!("row,value,decimal");
            for (p, (v, d)) in dto.values.iter().zip(&dto.decimals).enumerate() {
                println!("M{p},{},{d}", dto_text(v));
            }
        }
        OutputArg::Plain => {
            for (p, (v, d)) in dto.values.iter().zip(&dto.decimals).enumerate() {
                println!("M{p} = {}  ({d})", dto_text(v));
            }
        }
    }
    Ok(())
}

fn moments_dto<S: Scalar>(bank: &WaveletBank2<S>, pmax: Option<usize>) -> MomentsDto {
    let pmax = pmax.unwrap_or_else(|| bank.genus().saturating_sub(1));
    let report = bank.moments(pmax);
    MomentsDto {
        field: S::FIELD_NAME,
        genus: bank.genus(),
        pmax,
        decimals: report
            .values
            .iter()
            .map(|v| fmt_decimal15(v.to_f64()))
            .collect(),
        values: moments_to_dto(&report),
    }
}

#[derive(Serialize)]
struct PrTestDto {
    field: &'static str,
    genus: usize,
    seed: u64,
    trials: usize,
    length: usize,
    exact: bool,
    max_abs_error: f64,
    pass: bool,
}

fn cmd_pr_test(cli: &Cli, path: &str, len: usize, trials: usize) -> Result<()> {
    if len == 0 || trials == 0 {
        return Err(Error::InvalidParameter(
            "len and trials must be positive".to_string(),
        ));
    }
    let any = load_bank(cli, path)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let dto = match &any {
        AnyBank::Rational(b) => pr_test_bank(b, len, trials, cli, &mut rng),
        AnyBank::Float(b) => pr_test_bank(b, len, trials, cli, &mut rng),
    };
    match cli.output {
        OutputArg::Json => println!("{}", to_json_pretty(&dto)),
        OutputArg::Csv => {
            println!("key,value");
            println!("field,{}", dto.field);
            println!("seed,{}", dto.seed);
            println!("trials,{}", dto.trials);
            println!("length,{}", dto.length);
            println!("max_abs_error,{}", dto.max_abs_error);
            println!("pass,{}", dto.pass);
        }
        OutputArg::Plain => {
            println!(
                "seed {} | {} signals of length {} | max error {} | pass: {}",
                dto.seed, dto.trials, dto.length, dto.max_abs_error, dto.pass
            );
        }
    }
    if dto.pass {
        Ok(())
    } else {
        Err(Error::RoundTripMismatch {
            residual: dto.max_abs_error,
        })
    }
}

fn pr_test_bank<S: Scalar>(
    bank: &WaveletBank2<S>,
    len: usize,
    trials: usize,
    cli: &Cli,
    rng: &mut ChaCha8Rng,
) -> PrTestDto {
    let mut max_err = 0.0f64;
    let mut exact_ok = true;
    for _ in 0..trials {
        let samples: Vec<S> = (0..len)
            .map(|_| S::from_int(rng.gen_range(-99..=99)))
            .collect();
        let f = Signal::from_samples(0, samples);
        let rebuilt = synthesize(&analyze(bank, &f));
        let diff = rebuilt.sub(&f);
        if !diff.is_zero() {
            exact_ok = false;
        }
        max_err = max_err.max(diff.max_abs_f64());
    }
    let pass = if S::EXACT {
        exact_ok
    } else {
        max_err <= cli.tolerance
    };
    PrTestDto {
        field: S::FIELD_NAME,
        genus: bank.genus(),
        seed: cli.seed,
        trials,
        length: len,
        exact: S::EXACT,
        max_abs_error: max_err,
        pass,
    }
}

#[derive(Serialize)]
struct TableColumnDto {
    label: &'static str,
    phi: PhiDto,
    h0: Vec<ScalarDto>,
    h0_decimal: Vec<String>,
    moments: Vec<ScalarDto>,
    moments_decimal: Vec<String>,
}

#[derive(Serialize)]
struct TableDto {
    genus: usize,
    float_h0: Vec<f64>,
    float_moments: Vec<f64>,
    columns: Vec<TableColumnDto>,
}

fn cmd_tables(cli: &Cli) -> Result<()> {
    let mut tables = Vec::new();
    for reference in fixtures::tables() {
        let float = daubechies::generate(reference.genus)?;
        let pmax = reference.genus - 1;
        let mut columns = Vec::new();
        for col in reference.columns {
            // The genus-2 family is reproduced through the rounding
            // pipeline; the genus-3 family synthesizes its recorded
            // parameters. Both paths land on the stored taps.
            let bank = if reference.genus == 2 {
                let bits = col.phi[0].1.ilog2();
                rationalize_bank(&float, &ApproxStrategy::Dyadic { bits }, cli.tolerance)?.bank
            } else {
                let pair = phi_to_pair(&col.phi_param())?;
                WaveletBank2::from_param(&pair, reference.genus)?
            };
            let moments = bank.moments(pmax);
            columns.push(TableColumnDto {
                label: col.label,
                phi: phi_to_dto(&col.phi_param()),
                h0_decimal: bank
                    .h0()
                    .iter()
                    .map(|t| fmt_decimal15(Scalar::to_f64(t)))
                    .collect(),
                h0: bank.h0().iter().map(scalar_to_dto).collect(),
                moments_decimal: moments
                    .values
                    .iter()
                    .skip(1)
                    .map(|m| fmt_decimal15(Scalar::to_f64(m)))
                    .collect(),
                moments: moments.values.iter().skip(1).map(scalar_to_dto).collect(),
            });
        }
        let float_moments = float.moments(pmax);
        tables.push(TableDto {
            genus: reference.genus,
            float_h0: float.h0().to_vec(),
            float_moments: float_moments.values.iter().skip(1).copied().collect(),
            columns,
        });
    }
    match cli.output {
        OutputArg::Json => {
            #[derive(Serialize)]
            struct TablesDto {
                tables: Vec<TableDto>,
            }
            println!("{}", to_json_pretty(&TablesDto { tables }));
        }
        OutputArg::Csv => {
            for t in &tables {
                print_table_csv(t);
            }
        }
        OutputArg::Plain => {
            for t in &tables {
                print_table_plain(t);
            }
        }
    }
    Ok(())
}

fn print_table_csv(t: &TableDto) {
    let mut header = String::from("genus,row,float");
    for c in &t.columns {
        header.push_str(&format!(",{0},{0}_decimal", c.label));
    }
    println!("{header}");
    for k in 0..t.float_h0.len() {
        let mut line = format!("{},h0[{}],{}", t.genus, k, fmt_decimal15(t.float_h0[k]));
        for c in &t.columns {
            line.push_str(&format!(",{},{}", dto_text(&c.h0[k]), c.h0_decimal[k]));
        }
        println!("{line}");
    }
    for p in 0..t.float_moments.len() {
        let mut line = format!(
            "{},M{},{}",
            t.genus,
            p + 1,
            fmt_decimal15(t.float_moments[p])
        );
        for c in &t.columns {
            line.push_str(&format!(",{},{}", dto_text(&c.moments[p]), c.moments_decimal[p]));
        }
        println!("{line}");
    }
}

fn print_table_plain(t: &TableDto) {
    println!("genus {}", t.genus);
    for k in 0..t.float_h0.len() {
        let cols: Vec<String> = t
            .columns
            .iter()
            .map(|c| format!("{} ({})", dto_text(&c.h0[k]), c.h0_decimal[k]))
            .collect();
        println!(
            "  h0[{k}]  {}  |  {}",
            fmt_decimal15(t.float_h0[k]),
            cols.join("  |  ")
        );
    }
    for p in 0..t.float_moments.len() {
        let cols: Vec<String> = t
            .columns
            .iter()
            .map(|c| format!("{} ({})", dto_text(&c.moments[p]), c.moments_decimal[p]))
            .collect();
        println!(
            "  M{}     {}  |  {}",
            p + 1,
            fmt_decimal15(t.float_moments[p]),
            cols.join("  |  ")
        );
    }
}

fn print_bank_plain<S: Scalar>(bank: &WaveletBank2<S>, pmax: usize) {
    println!("genus {} over {}", bank.genus(), S::FIELD_NAME);
    for (name, taps) in [("h0", bank.h0()), ("h1", bank.h1())] {
        for (k, t) in taps.iter().enumerate() {
            println!(
                "  {name}[{k}] = {}  ({})",
                fmt_value(t),
                fmt_decimal15(t.to_f64())
            );
        }
    }
    let m = bank.moments(pmax);
    for (p, v) in m.values.iter().enumerate() {
        println!("  M{p} = {}  ({})", fmt_value(v), fmt_decimal15(v.to_f64()));
    }
}

fn phi_csv<S: Scalar>(phi: &PhiParam<S>) -> String {
    let mut out = String::from("row,value,decimal\n");
    for (k, g) in phi.gammas().iter().enumerate() {
        out.push_str(&format!(
            "gamma{},{},{}\n",
            k + 1,
            fmt_value(g),
            fmt_decimal15(g.to_f64())
        ));
    }
    out
}

fn print_phi_plain<S: Scalar>(phi: &PhiParam<S>) {
    println!("n = {}", phi.n());
    for (k, g) in phi.gammas().iter().enumerate() {
        println!(
            "  gamma{} = {}  ({})",
            k + 1,
            fmt_value(g),
            fmt_decimal15(g.to_f64())
        );
    }
}
