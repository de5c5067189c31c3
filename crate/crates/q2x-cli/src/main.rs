//! Command-line driver around the q2x library: error sweeps on the
//! benchmark geometry, randomized self-checks, recursion-vs-quadrature
//! timings, and batch expansion of mesh files.
//!
//! Exit codes: 0 on success, 1 when a computation or tolerance check
//! fails, 2 for usage errors (bad flags, unreadable input, ranges outside
//! the mathematical domain). CSV floats carry 17 significant digits so
//! they round-trip through text exactly.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use q2x::reference::{eval_point, log_spaced, standard_element, CENTROID_DISTANCE, DEFAULT_RADIUS};
use q2x::{
    analytic, error_bound, evaluate_expansion, expand, expand_by_quadrature, parse_mesh,
    ExpansionRequest, Kernel, MultipoleCoefficients, Point3, SimplexElement, SimplexKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "q2x", version, about = "Multipole expansions of simplex potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Error-vs-distance sweep on the benchmark geometry, as CSV
    Accuracy(AccuracyArgs),
    /// Randomized cross-check of recursion, quadrature, references and series
    Check(CheckArgs),
    /// Time recursive expansion against the quadrature baseline, as CSV
    Bench(BenchArgs),
    /// Expand every element of a mesh file about one center, as CSV
    Expand(ExpandArgs),
}

#[derive(Args)]
struct AccuracyArgs {
    /// Kernel: K (segment), L or M (triangle), N (tetrahedron)
    #[arg(long, value_parser = parse_kernel)]
    kind: Kernel,
    /// Comma-separated truncation orders
    #[arg(long = "p-list", value_delimiter = ',')]
    p_list: Vec<usize>,
    #[arg(long, default_value_t = 1.5)]
    d_min: f64,
    #[arg(long, default_value_t = 10.0)]
    d_max: f64,
    #[arg(long, default_value_t = 50)]
    d_steps: usize,
    /// Vertex sphere radius of the benchmark element
    #[arg(long, default_value_t = DEFAULT_RADIUS)]
    rt: f64,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// Truncation order used for every check
    #[arg(long = "p-max", default_value_t = 10)]
    p_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random elements per kernel
    #[arg(long, default_value_t = 100)]
    count: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Kernel: K (segment), L or M (triangle), N (tetrahedron)
    #[arg(long, value_parser = parse_kernel)]
    kind: Kernel,
    /// Comma-separated truncation orders
    #[arg(long = "p-list", value_delimiter = ',')]
    p_list: Vec<usize>,
    /// Timing samples per configuration (median reported)
    #[arg(long, default_value_t = 25)]
    reps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Mesh file: one element per line, see the library mesh format
    #[arg(long)]
    mesh: PathBuf,
    /// Expansion center as x,y,z
    #[arg(long, value_parser = parse_point, default_value = "0,0,0")]
    center: Point3,
    #[arg(long, default_value_t = 8)]
    p: usize,
    /// Kernel: K (segment), L or M (triangle), N (tetrahedron)
    #[arg(long, value_parser = parse_kernel)]
    kind: Kernel,
    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Usage failures exit 2, runtime failures exit 1.
enum Failure {
    Usage(String),
    Run(String),
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn parse_kernel(s: &str) -> Result<Kernel, String> {
    s.parse().map_err(|e: q2x::Error| e.to_string())
}

fn parse_point(s: &str) -> Result<Point3, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got '{s}'"));
    }
    let mut c = [0.0f64; 3];
    for (slot, part) in c.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("invalid coordinate '{part}'"))?;
    }
    Ok(Point3::new(c[0], c[1], c[2]))
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Max coefficient gap between two expansions of the same request,
/// relative to the larger overall coefficient magnitude.
fn normalized_gap(a: &MultipoleCoefficients, b: &MultipoleCoefficients) -> f64 {
    let scale = a
        .coeffs
        .as_slice()
        .iter()
        .chain(b.coeffs.as_slice())
        .map(|v| v.norm())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let gap = a
        .coeffs
        .as_slice()
        .iter()
        .zip(b.coeffs.as_slice())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0f64, f64::max);
    gap / scale
}

fn validate_orders(p_list: &[usize], quadrature_cap: bool) -> Result<(), Failure> {
    if p_list.is_empty() {
        return Err(Failure::Usage("p-list must name at least one order".into()));
    }
    for &p in p_list {
        if p == 0 {
            return Err(Failure::Usage("truncation orders must be at least 1".into()));
        }
        // the baseline needs a Gauss rule per axis; axis node counts beyond
        // 64 are not supported by the rule builder
        if quadrature_cap && p > 64 {
            return Err(Failure::Usage(format!("order {p} exceeds the quadrature cap of 64")));
        }
    }
    Ok(())
}

fn cmd_accuracy(args: &AccuracyArgs) -> Result<(), Failure> {
    validate_orders(&args.p_list, false)?;
    let element = standard_element(args.kind.element_kind(), args.rt).map_err(Failure::usage)?;
    let horizon = CENTROID_DISTANCE + args.rt;
    if !(args.d_min > horizon) {
        return Err(Failure::Usage(format!(
            "d-min {} is inside the convergence radius {horizon:.4} of the benchmark element",
            args.d_min
        )));
    }
    let distances = log_spaced(args.d_min, args.d_max, args.d_steps).map_err(Failure::usage)?;

    let blocks: Result<Vec<String>, q2x::Error> = args
        .p_list
        .par_iter()
        .map(|&p| {
            let req = ExpansionRequest::new(args.kind, Point3::ZERO, p);
            let expansion = expand(&element, &req)?;
            let mut rows = String::new();
            for &d in &distances {
                let r = eval_point(d);
                let want = analytic::potential(&element, args.kind, r)?;
                let got = evaluate_expansion(&expansion, r)?;
                let err = (got - want).abs() / want.abs();
                let bound = error_bound(args.kind, CENTROID_DISTANCE, d, p)?;
                writeln!(
                    rows,
                    "{},{},{},{},{}",
                    args.kind,
                    p,
                    fmt(d),
                    fmt(err),
                    fmt(bound)
                )
                .expect("string write");
            }
            Ok(rows)
        })
        .collect();
    let blocks = blocks.map_err(|e| Failure::Run(e.to_string()))?;

    let mut csv = String::from("kind,p,d,error,bound\n");
    for block in blocks {
        csv.push_str(&block);
    }
    emit(args.out.as_ref(), &csv)
}

fn unit_direction<R: Rng>(rng: &mut R) -> Point3 {
    loop {
        let v = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v * (1.0 / n);
        }
    }
}

fn random_box_element<R: Rng>(rng: &mut R, kind: SimplexKind) -> SimplexElement {
    loop {
        let mut v = [Point3::ZERO; 4];
        for vk in v.iter_mut().take(kind.vertex_count()) {
            *vk = Point3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
        }
        let density = rng.gen_range(0.25..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let e = match kind {
            SimplexKind::Segment => SimplexElement::segment(v[0], v[1], density),
            SimplexKind::Triangle => SimplexElement::triangle(v[0], v[1], v[2], density),
            SimplexKind::Tetrahedron => SimplexElement::tetrahedron(v[0], v[1], v[2], v[3], density),
        };
        let dim = kind.dim() as i32;
        match e.jacobian() {
            Ok(j) if j >= 0.01 * e.diameter().powi(dim) => return e,
            _ => continue,
        }
    }
}

fn cmd_check(args: &CheckArgs) -> Result<(), Failure> {
    validate_orders(&[args.p_max], true)?;
    let p = args.p_max;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut failures: Vec<String> = Vec::new();

    for kernel in Kernel::ALL {
        let kind = kernel.element_kind();
        let mut worst_gap = 0.0f64;
        let mut worst_series = 0.0f64;
        for i in 0..args.count {
            let element = random_box_element(&mut rng, kind);
            let center = element.centroid() + unit_direction(&mut rng) * rng.gen_range(0.0..2.0);
            let req = ExpansionRequest::new(kernel, center, p);
            let context = format!("{kernel} element {i} (seed {})", args.seed);

            let fast = expand(&element, &req)
                .map_err(|e| Failure::Run(format!("{context}: {e}")))?;
            let slow = expand_by_quadrature(&element, &req)
                .map_err(|e| Failure::Run(format!("{context}: {e}")))?;
            let gap = normalized_gap(&fast, &slow);
            worst_gap = worst_gap.max(gap);
            if gap > 1e-12 {
                failures.push(format!("{context}: recursion-quadrature gap {gap:.3e}"));
            }

            // series check at three source radii: inside the convergent
            // region for any center choice
            let rc = element
                .vertices()
                .iter()
                .map(|&v| (v - center).norm())
                .fold(0.0, f64::max);
            let dir = loop {
                let dir = unit_direction(&mut rng);
                match kernel {
                    // stay away from the dipole's null plane
                    Kernel::DoubleLayer
                        if element.unit_normal().map_or(false, |n| n.dot(dir).abs() < 0.3) =>
                    {
                        continue
                    }
                    _ => break dir,
                }
            };
            let r = center + dir * (3.0 * rc);
            let res = analytic::potential(&element, kernel, r)
                .and_then(|want| evaluate_expansion(&fast, r).map(|got| (got, want)));
            let (got, want) = res.map_err(|e| Failure::Run(format!("{context}: {e}")))?;
            let err = (got - want).abs() / want.abs();
            let tol = (15.0 * error_bound(kernel, rc, 3.0 * rc, p).map_err(Failure::usage)?)
                .max(1e-9);
            worst_series = worst_series.max(err / tol);
            if err > tol {
                failures.push(format!(
                    "{context}: series error {err:.3e} above tolerance {tol:.3e}"
                ));
            }
        }
        println!(
            "{kernel}: {} elements, worst recursion-quadrature gap {worst_gap:.2e} (tol 1e-12), worst series error at {:.0}% of tolerance",
            args.count,
            100.0 * worst_series
        );
    }

    if failures.is_empty() {
        println!("check passed");
        Ok(())
    } else {
        Err(Failure::Run(failures.join("\n")))
    }
}

/// Median nanoseconds per call. Each sample amortizes a batch sized so
/// sub-microsecond operations are not lost to timer granularity.
fn median_ns<F: FnMut()>(reps: usize, mut op: F) -> f64 {
    let batch = {
        let t0 = Instant::now();
        op();
        let once = t0.elapsed().as_secs_f64().max(1e-9);
        ((5e-5 / once).ceil() as usize).clamp(1, 20_000)
    };
    let mut samples: Vec<f64> = (0..reps)
        .map(|_| {
            let t0 = Instant::now();
            for _ in 0..batch {
                op();
            }
            t0.elapsed().as_secs_f64() * 1e9 / batch as f64
        })
        .collect();
    samples.sort_by(f64::total_cmp);
    samples[samples.len() / 2]
}

fn cmd_bench(args: &BenchArgs) -> Result<(), Failure> {
    validate_orders(&args.p_list, true)?;
    if args.reps == 0 {
        return Err(Failure::Usage("reps must be at least 1".into()));
    }
    let element =
        standard_element(args.kind.element_kind(), DEFAULT_RADIUS).map_err(Failure::usage)?;

    let mut csv = String::from("kind,p,method,ns_per_expansion\n");
    for &p in &args.p_list {
        let req = ExpansionRequest::new(args.kind, Point3::ZERO, p);
        let fast = expand(&element, &req).map_err(|e| Failure::Run(e.to_string()))?;
        let slow = expand_by_quadrature(&element, &req).map_err(|e| Failure::Run(e.to_string()))?;
        let gap = normalized_gap(&fast, &slow);
        if gap > 1e-11 {
            return Err(Failure::Run(format!(
                "methods disagree at p={p}: normalized gap {gap:.3e}"
            )));
        }
        let t_fast = median_ns(args.reps, || {
            std::hint::black_box(expand(std::hint::black_box(&element), &req).unwrap());
        });
        let t_slow = median_ns(args.reps, || {
            std::hint::black_box(
                expand_by_quadrature(std::hint::black_box(&element), &req).unwrap(),
            );
        });
        writeln!(csv, "{},{},recursive,{}", args.kind, p, fmt(t_fast)).expect("string write");
        writeln!(csv, "{},{},quadrature,{}", args.kind, p, fmt(t_slow)).expect("string write");
    }
    emit(args.out.as_ref(), &csv)
}

fn cmd_expand(args: &ExpandArgs) -> Result<(), Failure> {
    validate_orders(&[args.p], false)?;
    let text = std::fs::read_to_string(&args.mesh)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.mesh.display())))?;
    let elements = parse_mesh(&text).map_err(Failure::usage)?;
    for (i, e) in elements.iter().enumerate() {
        if e.kind != args.kind.element_kind() {
            return Err(Failure::Run(format!(
                "element {i} is a {}, kernel {} needs a {}",
                e.kind,
                args.kind,
                args.kind.element_kind()
            )));
        }
    }

    let req = ExpansionRequest::new(args.kind, args.center, args.p);
    let blocks: Result<Vec<String>, Failure> = elements
        .par_iter()
        .enumerate()
        .map(|(i, element)| {
            let expansion = expand(element, &req)
                .map_err(|e| Failure::Run(format!("element {i}: {e}")))?;
            let mut rows = String::new();
            for n in 0..args.p {
                for m in 0..=n {
                    let c = expansion.coeffs.get(n, m);
                    writeln!(rows, "{i},{n},{m},{},{}", fmt(c.re), fmt(c.im))
                        .expect("string write");
                }
            }
            Ok(rows)
        })
        .collect();

    let mut csv = String::from("element_index,n,m,re,im\n");
    for block in blocks? {
        csv.push_str(&block);
    }
    emit(args.out.as_ref(), &csv)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Accuracy(args) => cmd_accuracy(args),
        Command::Check(args) => cmd_check(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Expand(args) => cmd_expand(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
