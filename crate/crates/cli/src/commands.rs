use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use pareto_records::analysis::bounds::{census_two_records, generators_after};
use pareto_records::analysis::expectation_table;
use pareto_records::output::{write_expectation_csv, write_records_csv, Table1Summary};
use pareto_records::{
    attainable_gammas_two_records, bounds, derive_seed, generators_via_partitions, generators_via_projection,
    lower_bound_witness, next_record, simulate_on, Dimension, Error, GeneratorSet, Point, RandomSource,
    RecordState, RunLedger, Scale, Variant,
};
use rayon::prelude::*;

use crate::{BoundsArgs, ExpectedArgs, OracleArgs, RunArgs, SimulateArgs, Table1Args};

pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn ledger_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".ledger.json");
    PathBuf::from(s)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn write_ledger(out: &Path, ledger: &RunLedger) -> Outcome {
    let mut f = create(&ledger_path(out))?;
    writeln!(f, "{}", ledger.to_json())?;
    f.flush()?;
    Ok(())
}

fn run_variant(run: &RunArgs, d: Dimension) -> Variant {
    run.variant.unwrap_or(if d.get() == 2 { Variant::Bivariate } else { Variant::Efficient })
}

pub fn simulate(a: SimulateArgs) -> Outcome {
    let d = Dimension::new(a.run.dim)?;
    let variant = a.run.variant.unwrap_or(Variant::Efficient);
    let (stream, state) = simulate_on(d, a.run.records, a.run.seed, variant, a.scale)?;

    let mut f = create(&a.out)?;
    write_records_csv(&mut f, d.get(), &stream.entries)?;
    f.flush()?;
    write_ledger(&a.out, &stream.ledger)?;
    if let Some(path) = &a.snapshot {
        let mut f = create(path)?;
        serde_json::to_writer_pretty(&mut f, &state.generators().snapshot())
            .map_err(|e| Failure::Runtime(e.to_string()))?;
        writeln!(f)?;
        f.flush()?;
    }

    let m = stream.entries.len();
    let mean_rejections = if m == 0 {
        0.0
    } else {
        stream.entries.iter().map(|e| e.rejections as f64).sum::<f64>() / m as f64
    };
    let zero_break = Table1Summary::from_entries(&stream.entries).fraction(0);
    println!("records   {m}");
    println!("rho       {}", state.records().len());
    println!("gamma     {}", state.generators().len());
    println!("mean rejections {mean_rejections:.4}");
    println!("zero-break fraction {zero_break:.5}");
    Ok(())
}

pub fn table1(a: Table1Args) -> Outcome {
    let d = Dimension::new(a.run.dim)?;
    let variant = run_variant(&a.run, d);
    let (stream, state) = simulate_on(d, a.run.records, a.run.seed, variant, a.scale)?;
    let summary = Table1Summary::from_entries(&stream.entries);
    match &a.out {
        Some(path) => {
            let mut f = create(path)?;
            summary.write_csv(&mut f)?;
            f.flush()?;
            let ledger = RunLedger::new("table1", d.get(), a.run.records, a.run.seed, variant.as_str())
                .with_scale(a.scale);
            write_ledger(path, &ledger)?;
        }
        None => summary.write_csv(io::stdout().lock())?,
    }
    eprintln!(
        "d = {d}, m = {}: zero-break fraction {:.5}, rho = {}, gamma = {}",
        summary.records,
        summary.fraction(0),
        state.records().len(),
        state.generators().len()
    );
    Ok(())
}

pub fn expected(a: ExpectedArgs) -> Outcome {
    let d = Dimension::new(a.dim)?;
    let table = expectation_table(d, &a.n_list, a.poissonized, a.asymptotic)?;
    match &a.out {
        Some(path) => {
            let mut f = create(path)?;
            write_expectation_csv(&mut f, &table)?;
            f.flush()?;
            write_ledger(path, &RunLedger::new("expected", d.get(), 0, 0, "none"))?;
        }
        None => write_expectation_csv(io::stdout().lock(), &table)?,
    }
    Ok(())
}

fn format_set(s: &BTreeSet<u64>) -> String {
    let items: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

pub fn bounds_check(a: BoundsArgs) -> Outcome {
    let d = Dimension::new(a.dim)?;
    if a.rho.is_none() && !a.census_rho2 {
        return Err(Failure::Usage("nothing to check: pass --rho and/or --census-rho2".into()));
    }
    let mut ok = true;
    if let Some(rho) = a.rho {
        let (lo, hi) = bounds(rho, d)?;
        println!("bounds d={d} rho={rho}: ({lo},{hi})");
        if a.witness {
            let rho = usize::try_from(rho).map_err(|_| Failure::Usage(format!("--rho {rho} is too large")))?;
            let w = lower_bound_witness(d, rho)?;
            let gamma = generators_after(d, &w)?.len() as u128;
            let verdict = if gamma == lo { "ok" } else { "MISMATCH" };
            println!("witness gamma={gamma} lower={lo} {verdict}");
            ok &= gamma == lo;
        }
    } else if a.witness {
        return Err(Failure::Usage("--witness needs --rho".into()));
    }
    if a.census_rho2 {
        let found = census_two_records(d)?;
        let want = attainable_gammas_two_records(d)?;
        let verdict = if found == want { "ok" } else { "MISMATCH" };
        println!("census rho=2: {} expected {} {verdict}", format_set(&found), format_set(&want));
        ok &= found == want;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Runtime("verification failed".into()))
    }
}

/// Random current records: run the sampler until exactly `rho` records are
/// current, then map the coordinates back to the unit cube.
fn random_instance(d: Dimension, rho: usize, seed: u64) -> Result<Vec<Point>, Error> {
    let mut state = RecordState::with_scale(d, Variant::Efficient, Scale::Exponential)?;
    let mut rng = RandomSource::new(seed);
    while state.records().len() != rho {
        let (r, rejections) = next_record(&state, &mut rng)?;
        state.insert(r, rejections)?;
    }
    state
        .records()
        .iter()
        .map(|r| Point::new(r.coords().iter().map(|&x| Scale::Exponential.to_uniform(x)).collect()))
        .collect()
}

fn fold_generators(
    d: Dimension,
    records: &[Point],
    update: fn(&GeneratorSet, &Point) -> pareto_records::Result<(GeneratorSet, pareto_records::UpdateReport)>,
) -> Result<GeneratorSet, Error> {
    records.iter().try_fold(GeneratorSet::new(d), |g, r| update(&g, r).map(|x| x.0))
}

/// The generator count if all four methods agree.
fn compare_paths(d: Dimension, records: &[Point]) -> Result<Option<usize>, Error> {
    let naive = fold_generators(d, records, pareto_records::update_naive)?;
    let others = [
        fold_generators(d, records, pareto_records::update_efficient)?,
        generators_via_partitions(d, records)?,
        generators_via_projection(d, records)?,
    ];
    Ok(others.iter().all(|g| g.same_set(&naive)).then_some(naive.len()))
}

fn instance_json(d: Dimension, seed: u64, records: &[Point]) -> String {
    let coords: Vec<&[f64]> = records.iter().map(Point::coords).collect();
    serde_json::json!({ "dim": d.get(), "seed": seed, "records": coords }).to_string()
}

pub fn oracle_compare(a: OracleArgs) -> Outcome {
    if a.example {
        let d = Dimension::new(4)?;
        let records = vec![Point::new(vec![0.2, 0.8, 0.3, 0.7])?, Point::new(vec![0.5, 0.1, 0.4, 0.6])?];
        return match compare_paths(d, &records)? {
            Some(gamma) => {
                println!("example: all four methods agree, gamma={gamma}");
                Ok(())
            }
            None => {
                eprintln!("{}", instance_json(d, 0, &records));
                Err(Failure::Runtime("example: methods disagree".into()))
            }
        };
    }
    let d = Dimension::new(a.dim)?;
    if a.rho > 10 {
        return Err(Failure::Usage(format!("--rho {} exceeds 10; the partition oracle is exponential in rho", a.rho)));
    }
    if d.get() == 1 && a.rho > 1 {
        return Err(Failure::Usage("in one dimension at most one record is current".into()));
    }
    type Trial = (u64, Result<Option<usize>, Error>, Vec<Point>);
    let outcomes: Vec<Trial> = (0..a.trials)
        .into_par_iter()
        .map(|t| {
            let seed = derive_seed(a.seed, t);
            match random_instance(d, a.rho, seed) {
                Ok(records) => (seed, compare_paths(d, &records), records),
                Err(e) => (seed, Err(e), Vec::new()),
            }
        })
        .collect();

    let mut gammas = BTreeSet::new();
    let mut failures = 0u64;
    for (seed, outcome, records) in outcomes {
        match outcome? {
            Some(gamma) => {
                gammas.insert(gamma as u64);
            }
            None => {
                failures += 1;
                eprintln!("mismatch: {}", instance_json(d, seed, &records));
            }
        }
    }
    println!("trials {} passed {} failed {failures}", a.trials, a.trials - failures);
    println!("observed gamma {}", format_set(&gammas));
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Runtime(format!("{failures} mismatches")))
    }
}
