use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use clustcmp::compare::{compare_labeled, rank, rank_to_tsv, CompareOptions};
use clustcmp::io::{read_clustering, write_clustering, write_clustering_file};
use clustcmp::mutual_info::{
    expected_mi_all, expected_mi_all_onesided, expected_mi_num, expected_mi_num_onesided, expected_mi_perm,
};
use clustcmp::rand_index::{
    expected_rand_all, expected_rand_all_onesided, expected_rand_num, expected_rand_num_approx,
    expected_rand_num_onesided, expected_rand_perm,
};
use clustcmp::random_models::{pa_randomize, sample_all, sample_num, sample_perm, stream_rng, Measure};
use clustcmp::verify::{verify_all, Formula, VerifyOptions};
use clustcmp::{Clustering, Error, Evaluation, LabeledClustering, LogBase, MiNormalizer, Model, ReferenceSide};

#[derive(Parser)]
#[command(
    name = "clustcmp",
    version,
    about = "Compare clusterings with chance-corrected similarity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score two clustering files against each other.
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        #[command(flatten)]
        scoring: Scoring,
    },
    /// Print a closed-form expectation.
    Expect(ExpectArgs),
    /// Score and rank every pair of clustering files.
    Rank {
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        scoring: Scoring,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Draw clusterings from a random model.
    Sample(SampleArgs),
    /// Run a synthetic experiment.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Check every closed-form expectation against exhaustive enumeration.
    Oracle {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Perturb one formula to confirm the checker fails.
        #[arg(long, hide = true)]
        corrupt: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Rand,
    Mi,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    None,
    Perm,
    Num,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    Min,
    Sqrt,
    Sum,
    Max,
    Maxlogk,
    Logn,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    E,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct Scoring {
    #[arg(long, value_enum, default_value_t = MeasureArg::Rand)]
    measure: MeasureArg,
    #[arg(long, value_enum, default_value_t = ModelArg::Perm)]
    model: ModelArg,
    #[arg(long, requires = "reference_side")]
    one_sided: bool,
    /// Which file is the fixed reference in a one-sided comparison.
    #[arg(long, value_enum, requires = "one_sided")]
    reference_side: Option<SideArg>,
    #[arg(long, value_enum, default_value_t = NormArg::Max)]
    norm: NormArg,
    #[arg(long, value_enum, default_value_t = BaseArg::E)]
    log_base: BaseArg,
    /// Use the large-N approximation of the Rand expectation.
    #[arg(long)]
    approx: bool,
}

#[derive(Args)]
struct ExpectArgs {
    #[arg(long, value_enum, default_value_t = MeasureArg::Rand)]
    measure: MeasureArg,
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    approx: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    ka: Option<usize>,
    #[arg(long)]
    kb: Option<usize>,
    /// Comma-separated cluster sizes, e.g. 3,2,1.
    #[arg(long, value_delimiter = ',')]
    sizes_a: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    sizes_b: Vec<usize>,
    /// Reference clustering file; makes the expectation one-sided.
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Clustering whose size sequence the permutation model keeps.
    #[arg(long)]
    template: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Write `sample_<i>.tsv` files here instead of standard output.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Experiment {
    /// Preferential attachment randomization of an equal-size clustering.
    PrefAttach {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        k: usize,
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        #[arg(long, default_value_t = 100)]
        record_every: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Rand => Measure::Rand,
            MeasureArg::Mi => Measure::Mi,
        }
    }
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::None => Model::None,
            ModelArg::Perm => Model::Perm,
            ModelArg::Num => Model::Num,
            ModelArg::All => Model::All,
        }
    }
}

impl Scoring {
    fn options(&self) -> CompareOptions {
        let normalizer = match self.norm {
            NormArg::Min => MiNormalizer::Min,
            NormArg::Sqrt => MiNormalizer::Sqrt,
            NormArg::Sum => MiNormalizer::Sum,
            NormArg::Max => MiNormalizer::Max,
            NormArg::Maxlogk => MiNormalizer::MaxLogK,
            NormArg::Logn => MiNormalizer::LogN,
        };
        let options = CompareOptions {
            measure: self.measure.into(),
            model: self.model.into(),
            normalizer,
            log_base: match self.log_base {
                BaseArg::E => LogBase::E,
                BaseArg::Two => LogBase::Two,
                BaseArg::Ten => LogBase::Ten,
            },
            evaluation: if self.approx {
                Evaluation::Approx
            } else {
                Evaluation::Exact
            },
            ..CompareOptions::default()
        };
        match (self.one_sided, self.reference_side) {
            (true, Some(SideArg::A)) => options.one_sided(ReferenceSide::A),
            (true, Some(SideArg::B)) => options.one_sided(ReferenceSide::B),
            _ => options,
        }
    }
}

/// Failure with its exit code: 2 bad input, 3 element mismatch, 4 undefined adjustment.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ElementMismatch { .. } => 3,
            Error::UndefinedAdjustment { .. } | Error::UndefinedNormalization(_) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn compare_cmd(a: &Path, b: &Path, scoring: &Scoring) -> Result<(), Failure> {
    let (a, b) = (read_clustering(a)?, read_clustering(b)?);
    let result = compare_labeled(&a, &b, &scoring.options())?;
    println!("{}", to_json(&result));
    Ok(())
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn expect_cmd(args: &ExpectArgs) -> Result<(), Failure> {
    let model: Model = args.model.into();
    let measure: Measure = args.measure.into();
    let reference = args.reference.as_deref().map(read_clustering).transpose()?;
    let reference = reference.as_ref().map(LabeledClustering::clustering);
    let sizes_n = |sizes: &[usize]| sizes.iter().sum::<usize>();
    let n_or_reference = || match (args.n, reference) {
        (Some(n), _) => Ok(n),
        (None, Some(g)) => Ok(g.n_elements()),
        (None, None) => Err(usage("missing --n")),
    };
    if args.approx && !(measure == Measure::Rand && matches!(model, Model::Num | Model::All) && reference.is_none()) {
        return Err(usage(
            "--approx applies to two-sided Rand expectations under num or all",
        ));
    }
    let evaluation = if args.approx {
        Evaluation::Approx
    } else {
        Evaluation::Exact
    };
    let expectation = match (model, reference) {
        (Model::None, _) => 0.0,
        (Model::Perm, _) => {
            if args.sizes_a.is_empty() {
                return Err(usage("perm needs --sizes-a and either --sizes-b or --reference"));
            }
            let sizes_b = match reference {
                Some(g) => g.size_sequence(),
                None if !args.sizes_b.is_empty() => args.sizes_b.clone(),
                None => return Err(usage("perm needs --sizes-b or --reference")),
            };
            let n = sizes_n(&args.sizes_a);
            match measure {
                Measure::Rand => expected_rand_perm(&args.sizes_a, &sizes_b, n)?,
                Measure::Mi => expected_mi_perm(&args.sizes_a, &sizes_b, n)?,
            }
        }
        (Model::Num, Some(g)) => {
            let ka = need(args.ka, "ka")?;
            match measure {
                Measure::Rand => expected_rand_num_onesided(ka, g.n_elements(), g)?,
                Measure::Mi => expected_mi_num_onesided(ka, g.n_elements(), g)?,
            }
        }
        (Model::Num, None) => {
            let (ka, kb) = (need(args.ka, "ka")?, need(args.kb, "kb")?);
            match (measure, args.approx, args.n) {
                (Measure::Rand, true, None) => expected_rand_num_approx(ka, kb)?,
                (Measure::Rand, _, n) => expected_rand_num(ka, kb, need(n, "n")?, evaluation)?,
                (Measure::Mi, _, n) => expected_mi_num(ka, kb, need(n, "n")?)?,
            }
        }
        (Model::All, Some(g)) => match measure {
            Measure::Rand => expected_rand_all_onesided(g.n_elements(), g)?,
            Measure::Mi => expected_mi_all_onesided(g.n_elements(), g)?,
        },
        (Model::All, None) => {
            let n = n_or_reference()?;
            match measure {
                Measure::Rand => expected_rand_all(n, evaluation)?,
                Measure::Mi => expected_mi_all(n)?,
            }
        }
    };
    let record = json!({
        "measure": measure,
        "model": model,
        "sided": if reference.is_some() { "one_sided" } else { "two_sided" },
        "evaluation": evaluation,
        "expectation": expectation,
    });
    println!("{}", to_json(&record));
    Ok(())
}

fn rank_cmd(files: &[PathBuf], scoring: &Scoring, format: Format) -> Result<(), Failure> {
    let set = files
        .iter()
        .map(|p| Ok((p.display().to_string(), read_clustering(p)?)))
        .collect::<Result<Vec<_>, Error>>()?;
    let ranked = rank(&set, &scoring.options())?;
    match format {
        Format::Json => println!("{}", to_json(&ranked)),
        Format::Tsv => print!("{}", rank_to_tsv(&ranked)),
    }
    Ok(())
}

fn sample_cmd(args: &SampleArgs) -> Result<(), Failure> {
    let template = args.template.as_deref().map(read_clustering).transpose()?;
    if args.count == 0 {
        return Err(usage("--count must be positive"));
    }
    let mut outputs = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let mut rng = stream_rng(args.seed, i as u64);
        let sampled = match args.model {
            ModelArg::Perm => {
                let t = template.as_ref().ok_or_else(|| usage("perm needs --template"))?;
                let shuffled = sample_perm(t.clustering(), &mut rng);
                let records: Vec<(&str, String)> = t
                    .ids()
                    .iter()
                    .zip(shuffled.membership())
                    .map(|(id, &k)| (id.as_str(), k.to_string()))
                    .collect();
                LabeledClustering::from_pairs(records)?
            }
            ModelArg::Num => {
                let n = need(args.n, "n")?;
                LabeledClustering::from_clustering(sample_num(n, need(args.k, "k")?, &mut rng)?)
            }
            ModelArg::All => LabeledClustering::from_clustering(sample_all(need(args.n, "n")?, &mut rng)?),
            ModelArg::None => return Err(usage("sample needs --model perm, num or all")),
        };
        outputs.push(sampled);
    }
    match &args.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(Error::from)?;
            for (i, c) in outputs.iter().enumerate() {
                write_clustering_file(dir.join(format!("sample_{i}.tsv")), c)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            for (i, c) in outputs.iter().enumerate() {
                if args.count > 1 {
                    use std::io::Write;
                    writeln!(stdout, "# sample {i}").map_err(Error::from)?;
                }
                write_clustering(&mut stdout, c)?;
            }
        }
    }
    Ok(())
}

fn pref_attach_cmd(n: usize, k: usize, steps: usize, record_every: usize, seed: u64) -> Result<(), Failure> {
    if k < 2 || k > n {
        return Err(usage(format!("need 2 <= k <= n, got n = {n}, k = {k}")));
    }
    let sizes: Vec<usize> = (0..k).map(|i| n / k + usize::from(i < n % k)).collect();
    let start = Clustering::from_sizes(&sizes)?;
    let mut rng = stream_rng(seed, 0);
    let trajectory = pa_randomize(&start, steps, &mut rng, record_every)?;
    let mut out = String::from("step\tentropy_bits\tari_perm\tari_num\n");
    for p in trajectory {
        out.push_str(&format!(
            "{}\t{:.6}\t{:.6}\t{:.6}\n",
            p.step, p.size_entropy_bits, p.ari_perm, p.ari_num
        ));
    }
    print!("{out}");
    Ok(())
}

fn oracle_cmd(max_n: usize, format: Format, corrupt: Option<&str>) -> Result<bool, Failure> {
    let corrupt = corrupt
        .map(|name| {
            Formula::ALL
                .into_iter()
                .find(|f| f.name() == name)
                .ok_or_else(|| usage(format!("unknown formula {name:?}")))
        })
        .transpose()?;
    let report = verify_all(&VerifyOptions { max_n, corrupt })?;
    match format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Tsv => print!("{report}"),
    }
    Ok(report.passed())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(value) = std::env::var(clustcmp::THREADS_ENV) {
        let threads: usize = value
            .parse()
            .map_err(|_| usage(format!("{} must be a positive integer", clustcmp::THREADS_ENV)))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Compare {
            file_a,
            file_b,
            scoring,
        } => compare_cmd(&file_a, &file_b, &scoring)?,
        Command::Expect(args) => expect_cmd(&args)?,
        Command::Rank { files, scoring, format } => rank_cmd(&files, &scoring, format)?,
        Command::Sample(args) => sample_cmd(&args)?,
        Command::Experiment(Experiment::PrefAttach {
            n,
            k,
            steps,
            record_every,
            seed,
        }) => pref_attach_cmd(n, k, steps, record_every, seed)?,
        Command::Oracle { max_n, format, corrupt } => return oracle_cmd(max_n, format, corrupt.as_deref()),
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(f) => {
            eprintln!("clustcmp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
