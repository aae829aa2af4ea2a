//! `qtwist`: exact twisted-Alexander computations on finitely presented
//! quandles from plain-text inputs.
//!
//! Exit codes: 0 success, 1 mathematically meaningful negative result
//! (axiom violation, harness inequality), 2 input or usage error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::One;

use qtwist::alexander::{
    apply_move, build_matrix, elementary_ideal, reduce_matrix, AlexanderPair, ElementaryIdeal,
    MatrixMove, TwistedMatrix,
};
use qtwist::homology::{cocycle_basis, quandle_h2, Cocycle};
use qtwist::knots::{state_sum_weights, surface_weight_ideal, verify_theorem2, MarkedPresentation};
use qtwist::parse::{
    parse_cocycle, parse_pd, parse_presentation, parse_quandle_table, PresentationFile,
};
use qtwist::quandle::{check_axioms, FiniteQuandle, Presentation};
use qtwist::ring::{AbelianGroup, GroupRingElem, IdealLattice};
use qtwist::Int;

#[derive(Parser)]
#[command(
    name = "qtwist",
    version,
    about = "Twisted Alexander matrices and cocycle ideals of finitely presented quandles"
)]
struct Cli {
    /// Emit one machine-readable record per line.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the quandle axioms of a table file and report connectivity.
    Check { quandle: PathBuf },
    /// Enumerate homomorphisms from a presentation or PD code into a quandle.
    Homs {
        /// Presentation file (.pd files are read as PD codes).
        #[arg(long)]
        pres: PathBuf,
        /// Target quandle table file.
        #[arg(long)]
        target: PathBuf,
        /// List every homomorphism, not just the count.
        #[arg(long)]
        list: bool,
    },
    /// Second quandle homology with generator cycles.
    H2 { quandle: PathBuf },
    /// Representatives generating the degree-2 cohomology over Z/m.
    Cocycles {
        quandle: PathBuf,
        #[arg(long = "mod")]
        modulus: i64,
        /// Print one representative in cocycle-file format.
        #[arg(long)]
        index: Option<usize>,
    },
    /// Build, reduce, and print the twisted Alexander matrix per coloring.
    Matrix {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Use the constant pair (t, 1-t) over Z[t^±1].
        #[arg(long, conflicts_with = "cocycle")]
        laurent: bool,
        /// Use the pair (f_θ, 0) for the cocycle in this file.
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Restrict to the coloring with this index.
        #[arg(long)]
        coloring: Option<usize>,
        /// Also print the unreduced matrix.
        #[arg(long)]
        raw: bool,
        /// Ideal index for the normal-form basis printed with the matrix.
        #[arg(long, default_value_t = 0)]
        d: i64,
    },
    /// Elementary ideal E_d per coloring.
    Ideal {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, conflicts_with = "cocycle")]
        laurent: bool,
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Ideal index d.
        #[arg(long)]
        d: i64,
    },
    /// State-sum cocycle weights of a PD diagram, per coloring.
    Statesum {
        #[arg(long)]
        pd: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Weight ideal of a marked presentation, per coloring.
    SurfaceIdeal {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Compare E_0 of the table presentation against the cocycle image
    /// ideal, over every basis cocycle of each connected quandle.
    VerifyThm2 {
        quandles: Vec<PathBuf>,
        /// Comma-separated moduli for the cocycle bases.
        #[arg(long, default_value = "2,3")]
        mods: String,
        /// Random matrix-move invariance checks per case.
        #[arg(long, default_value_t = 0)]
        moves: usize,
        /// Seed for the randomized move checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Outcome of a subcommand: verified-false is distinct from input errors.
enum Outcome {
    Ok,
    VerifiedFalse,
}

struct CliError(String);

impl<T: std::fmt::Display> From<T> for CliError {
    fn from(e: T) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(Outcome::Ok) => ExitCode::from(0),
        Ok(Outcome::VerifiedFalse) => ExitCode::from(1),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_quandle(path: &Path) -> Result<FiniteQuandle, CliError> {
    let table = parse_quandle_table(&read(path)?)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    FiniteQuandle::from_table(table).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_presentation(path: &Path) -> Result<Presentation, CliError> {
    let text = read(path)?;
    if path.extension().and_then(|e| e.to_str()) == Some("pd") {
        let pd = parse_pd(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        Ok(pd.to_presentation())
    } else {
        let pf =
            parse_presentation(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        Ok(pf.presentation().clone())
    }
}

fn load_marked(path: &Path) -> Result<MarkedPresentation, CliError> {
    let text = read(path)?;
    let pf = parse_presentation(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    match pf {
        PresentationFile::Marked(mp) => Ok(mp),
        PresentationFile::Plain(_) => Err(CliError(format!(
            "{}: marked presentation required (add a base: line, plus loop: lines if any)",
            path.display()
        ))),
    }
}

fn load_cocycle(path: &Path, x: &FiniteQuandle) -> Result<Cocycle, CliError> {
    let theta =
        parse_cocycle(&read(path)?, x).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    theta
        .check(x)
        .map_err(|e| CliError(format!("{}: not a quandle 2-cocycle: {e}", path.display())))?;
    Ok(theta)
}

fn load_pair(
    x: &FiniteQuandle,
    laurent: bool,
    cocycle: &Option<PathBuf>,
) -> Result<AlexanderPair, CliError> {
    match (laurent, cocycle) {
        (true, None) => Ok(AlexanderPair::laurent(x)),
        (false, Some(path)) => {
            let theta = load_cocycle(path, x)?;
            Ok(AlexanderPair::from_cocycle(x, &theta)?)
        }
        _ => Err(CliError(
            "pass exactly one of --laurent or --cocycle <file>".into(),
        )),
    }
}

fn coloring_string(c: &[usize]) -> String {
    c.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_elementary(out: &mut String, machine: bool, ideal: &ElementaryIdeal) {
    match ideal {
        ElementaryIdeal::Finite(l) => print_lattice(out, machine, l),
        ElementaryIdeal::Laurent { generators, gcd } => {
            if machine {
                for g in generators {
                    let _ = writeln!(out, "gen {g}");
                }
                let _ = writeln!(out, "gcd {gcd}");
            } else {
                let _ = writeln!(out, "  {} generators, gcd: {gcd}", generators.len());
            }
        }
    }
}

fn print_lattice(out: &mut String, machine: bool, ideal: &IdealLattice) {
    if machine {
        if ideal.is_zero() {
            let _ = writeln!(out, "ideal zero");
        } else if ideal.is_full() {
            let _ = writeln!(out, "ideal full");
        } else {
            for b in ideal.basis_elements() {
                let _ = writeln!(out, "basis {b}");
            }
        }
    } else if ideal.is_zero() {
        let _ = writeln!(out, "  E = (0)");
    } else if ideal.is_full() {
        let _ = writeln!(out, "  E = (1)  [full ring]");
    } else {
        let _ = writeln!(out, "  E basis:");
        for b in ideal.basis_elements() {
            let _ = writeln!(out, "    {b}");
        }
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<Outcome, CliError> {
    let machine = cli.machine;
    match &cli.command {
        Command::Check { quandle } => {
            let table = parse_quandle_table(&read(quandle)?)
                .map_err(|e| CliError(format!("{}: {e}", quandle.display())))?;
            match check_axioms(&table) {
                Err(qtwist::quandle::QuandleError::Structural(msg)) => {
                    return Err(CliError(format!("{}: {msg}", quandle.display())));
                }
                Err(qtwist::quandle::QuandleError::Axiom(v)) => {
                    if machine {
                        let _ = writeln!(out, "axioms violation {v}");
                    } else {
                        let _ = writeln!(out, "axioms: violated ({v})");
                    }
                    return Ok(Outcome::VerifiedFalse);
                }
                Ok(()) => {}
            }
            let q = FiniteQuandle::from_table(table).expect("axioms just verified");
            let orbits = q.orbits();
            let connected = orbits.len() == 1;
            if machine {
                let _ = writeln!(out, "axioms ok");
                let _ = writeln!(out, "connected {}", if connected { "yes" } else { "no" });
                for orbit in &orbits {
                    let _ = writeln!(out, "orbit {}", coloring_string(orbit));
                }
            } else {
                let desc = if connected {
                    "yes".to_string()
                } else {
                    format!("no ({} orbits)", orbits.len())
                };
                let _ = writeln!(out, "axioms: ok; connected: {desc}");
                if !connected {
                    for orbit in &orbits {
                        let _ = writeln!(out, "  orbit: {}", coloring_string(orbit));
                    }
                }
            }
            Ok(Outcome::Ok)
        }

        Command::Homs { pres, target, list } => {
            let p = load_presentation(pres)?;
            let x = load_quandle(target)?;
            let homs = p.enumerate_homs(&x);
            if machine {
                let _ = writeln!(out, "count {}", homs.len());
                if *list {
                    for h in &homs {
                        let _ = writeln!(out, "hom {}", coloring_string(h));
                    }
                }
            } else {
                let _ = writeln!(out, "{} homomorphisms", homs.len());
                if *list {
                    for h in &homs {
                        let _ = writeln!(out, "  {}", coloring_string(h));
                    }
                }
            }
            Ok(Outcome::Ok)
        }

        Command::H2 { quandle } => {
            let q = load_quandle(quandle)?;
            let h2 = quandle_h2(&q);
            if machine {
                let _ = writeln!(out, "h2 {}", h2.group_string());
                for (f, gen) in h2.factors.iter().zip(h2.generators.iter()) {
                    let _ = writeln!(out, "factor {f}");
                    let _ = writeln!(out, "gen {}", cycle_string(gen, &h2.basis));
                }
            } else {
                let _ = writeln!(out, "H2 = {}", h2.group_string());
                for (f, gen) in h2.factors.iter().zip(h2.generators.iter()) {
                    let order = if f == &Int::from(0) {
                        "infinite order".into()
                    } else {
                        format!("order {f}")
                    };
                    let _ = writeln!(
                        out,
                        "  generator ({order}): {}",
                        cycle_string(gen, &h2.basis)
                    );
                }
            }
            Ok(Outcome::Ok)
        }

        Command::Cocycles {
            quandle,
            modulus,
            index,
        } => {
            let q = load_quandle(quandle)?;
            if *modulus < 2 {
                return Err(CliError("modulus must be >= 2".into()));
            }
            let basis = cocycle_basis(&q, *modulus);
            match index {
                Some(k) => {
                    let theta = basis.get(*k).ok_or_else(|| {
                        CliError(format!("index {k} out of range: {} classes", basis.len()))
                    })?;
                    let _ = writeln!(out, "Z/{modulus}");
                    for a in 0..q.order() {
                        for b in 0..q.order() {
                            let v = theta.value(a, b);
                            if !v.is_zero() {
                                let _ = writeln!(out, "{a} {b} {}", v.coords()[0]);
                            }
                        }
                    }
                }
                None => {
                    if machine {
                        let _ = writeln!(out, "count {}", basis.len());
                        for (k, theta) in basis.iter().enumerate() {
                            for a in 0..q.order() {
                                for b in 0..q.order() {
                                    let v = theta.value(a, b);
                                    if !v.is_zero() {
                                        let _ =
                                            writeln!(out, "value {k} {a} {b} {}", v.coords()[0]);
                                    }
                                }
                            }
                        }
                    } else {
                        let _ = writeln!(
                            out,
                            "{} generating class(es) of H^2(X; Z/{modulus})",
                            basis.len()
                        );
                        for (k, theta) in basis.iter().enumerate() {
                            let _ = writeln!(out, "  class {k}:");
                            for a in 0..q.order() {
                                for b in 0..q.order() {
                                    let v = theta.value(a, b);
                                    if !v.is_zero() {
                                        let _ =
                                            writeln!(out, "    theta({a},{b}) = {}", v.coords()[0]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            Ok(Outcome::Ok)
        }

        Command::Matrix {
            pres,
            target,
            laurent,
            cocycle,
            coloring,
            raw,
            d,
        } => {
            let p = load_presentation(pres)?;
            let x = load_quandle(target)?;
            let pair = load_pair(&x, *laurent, cocycle)?;
            let homs = select_colorings(&p, &x, coloring)?;
            for (k, c) in homs {
                if machine {
                    let _ = writeln!(out, "coloring {k} {}", coloring_string(&c));
                } else {
                    let _ = writeln!(out, "coloring {k}: [{}]", coloring_string(&c));
                }
                let m = build_matrix(&p, &c, &x, &pair)?;
                if *raw {
                    print_matrix(out, machine, "raw", &m);
                }
                let r = reduce_matrix(&m);
                print_matrix(out, machine, "reduced", &r);
                if !machine {
                    let _ = writeln!(out, "  E_{d}:");
                }
                print_elementary(out, machine, &elementary_ideal(&m, *d)?);
            }
            Ok(Outcome::Ok)
        }

        Command::Ideal {
            pres,
            target,
            laurent,
            cocycle,
            d,
        } => {
            let p = load_presentation(pres)?;
            let x = load_quandle(target)?;
            let pair = load_pair(&x, *laurent, cocycle)?;
            for (k, c) in select_colorings(&p, &x, &None)? {
                if machine {
                    let _ = writeln!(out, "coloring {k} {}", coloring_string(&c));
                } else {
                    let _ = writeln!(out, "coloring {k}: [{}]", coloring_string(&c));
                }
                let m = build_matrix(&p, &c, &x, &pair)?;
                print_elementary(out, machine, &elementary_ideal(&m, *d)?);
            }
            Ok(Outcome::Ok)
        }

        Command::Statesum {
            pd,
            target,
            cocycle,
        } => {
            let pd =
                parse_pd(&read(pd)?).map_err(|e| CliError(format!("{}: {e}", pd.display())))?;
            let x = load_quandle(target)?;
            let theta = load_cocycle(cocycle, &x)?;
            let sums = state_sum_weights(&pd, &x, &theta)?;
            let mut multiset: std::collections::BTreeMap<String, usize> =
                std::collections::BTreeMap::new();
            for (c, w) in &sums {
                *multiset.entry(w.to_string()).or_default() += 1;
                if machine {
                    let _ = writeln!(out, "weight {} {w}", coloring_string(c));
                }
            }
            if machine {
                for (w, count) in &multiset {
                    let _ = writeln!(out, "multiset {count} {w}");
                }
            } else {
                let _ = writeln!(out, "{} colorings", sums.len());
                for (w, count) in &multiset {
                    let _ = writeln!(out, "  weight {w}: {count} coloring(s)");
                }
            }
            Ok(Outcome::Ok)
        }

        Command::SurfaceIdeal {
            pres,
            target,
            cocycle,
        } => {
            let mp = load_marked(pres)?;
            let x = load_quandle(target)?;
            let theta = load_cocycle(cocycle, &x)?;
            for (k, c) in select_colorings(&mp.presentation, &x, &None)? {
                if machine {
                    let _ = writeln!(out, "coloring {k} {}", coloring_string(&c));
                } else {
                    let _ = writeln!(out, "coloring {k}: [{}]", coloring_string(&c));
                }
                let ideal = surface_weight_ideal(&mp, &c, &x, &theta)
                    .map_err(|e| CliError(e.to_string()))?;
                print_lattice(out, machine, &ideal);
            }
            Ok(Outcome::Ok)
        }

        Command::VerifyThm2 {
            quandles,
            mods,
            moves,
            seed,
        } => {
            if quandles.is_empty() {
                return Err(CliError("pass at least one quandle file".into()));
            }
            let mods: Vec<i64> = mods
                .split(',')
                .map(|m| {
                    m.trim()
                        .parse::<i64>()
                        .map_err(|_| CliError(format!("bad modulus `{m}`")))
                })
                .collect::<Result<_, _>>()?;
            let mut all_equal = true;
            let mut rng = SplitMix::new(*seed);
            for path in quandles {
                let q = load_quandle(path)?;
                let name = path.display();
                if !q.is_connected() {
                    let _ = writeln!(out, "skip {name} not-connected");
                    continue;
                }
                for &m in &mods {
                    let mut thetas = vec![Cocycle::zero(q.order(), &AbelianGroup::cyclic(m))];
                    thetas.extend(cocycle_basis(&q, m));
                    for (k, theta) in thetas.iter().enumerate() {
                        let label = if k == 0 {
                            "zero".to_string()
                        } else {
                            format!("class{}", k - 1)
                        };
                        let report = verify_theorem2(&q, theta)
                            .map_err(|e| CliError(format!("{name}: {e}")))?;
                        let verdict = if report.equal { "equal" } else { "UNEQUAL" };
                        let _ = writeln!(out, "thm2 {name} mod {m} {label} {verdict}");
                        all_equal &= report.equal;
                        if *moves > 0 {
                            let ok = move_invariance_check(&q, theta, *moves, &mut rng)?;
                            let _ = writeln!(
                                out,
                                "moves {name} mod {m} {label} {}",
                                if ok { "ok" } else { "CHANGED" }
                            );
                            all_equal &= ok;
                        }
                    }
                }
            }
            let _ = writeln!(out, "result {}", if all_equal { "ok" } else { "mismatch" });
            Ok(if all_equal {
                Outcome::Ok
            } else {
                Outcome::VerifiedFalse
            })
        }
    }
}

type IndexedColorings = Vec<(usize, Vec<usize>)>;

fn select_colorings(
    p: &Presentation,
    x: &FiniteQuandle,
    which: &Option<usize>,
) -> Result<IndexedColorings, CliError> {
    let homs = p.enumerate_homs(x);
    match which {
        None => Ok(homs.into_iter().enumerate().collect()),
        Some(k) => {
            let c = homs
                .get(*k)
                .cloned()
                .ok_or_else(|| CliError(format!("coloring {k} out of range: {}", homs.len())))?;
            Ok(vec![(*k, c)])
        }
    }
}

fn cycle_string(coeffs: &[Int], basis: &[(usize, usize)]) -> String {
    use num_traits::{Signed, Zero};
    let mut s = String::new();
    for (c, (a, b)) in coeffs.iter().zip(basis.iter()) {
        if c.is_zero() {
            continue;
        }
        if s.is_empty() {
            if c.is_negative() {
                s.push('-');
            }
        } else {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let _ = write!(s, "{}*({a},{b})", c.abs());
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn print_matrix(out: &mut String, machine: bool, tag: &str, m: &TwistedMatrix) {
    if machine {
        let _ = writeln!(out, "{tag} {} {}", m.rows(), m.cols());
        for i in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect();
            let _ = writeln!(out, "row {}", row.join(" ; "));
        }
    } else {
        let _ = writeln!(out, "  {tag} matrix {} x {}:", m.rows(), m.cols());
        for i in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect();
            let _ = writeln!(out, "    [ {} ]", row.join(" | "));
        }
    }
}

/// Deterministic splitmix64 for the seeded move checks.
struct SplitMix(u64);

impl SplitMix {
    fn new(seed: u64) -> Self {
        SplitMix(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// Applies random ideal-preserving moves to the table-presentation matrix
/// and confirms E_0 is unchanged.
fn move_invariance_check(
    q: &FiniteQuandle,
    theta: &Cocycle,
    moves: usize,
    rng: &mut SplitMix,
) -> Result<bool, CliError> {
    let x = q;
    let id: Vec<usize> = (0..q.order()).collect();
    let pair = AlexanderPair::from_cocycle(x, theta)?;
    let p = Presentation::from_table(q);
    let m = build_matrix(&p, &id, x, &pair)?;
    let base = elementary_ideal(&m, 0)?;
    let group = theta.group().clone();
    let mut current = m;
    for _ in 0..moves {
        let mv = random_move(&current, &group, rng);
        current = apply_move(&current, &mv);
        if elementary_ideal(&current, 0)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}

fn random_elem(group: &AbelianGroup, rng: &mut SplitMix) -> GroupRingElem {
    let mut e = GroupRingElem::zero(group);
    for _ in 0..rng.below(3) {
        let coords: Vec<i64> = group
            .torsion()
            .iter()
            .map(|&n| rng.below(n as usize) as i64)
            .collect();
        let c = Int::from(rng.below(5) as i64 - 2);
        e = &e + &GroupRingElem::monomial(group, c, group.elem(coords));
    }
    e
}

fn random_unit(group: &AbelianGroup, rng: &mut SplitMix) -> GroupRingElem {
    let coords: Vec<i64> = group
        .torsion()
        .iter()
        .map(|&n| rng.below(n as usize) as i64)
        .collect();
    let sign = if rng.below(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    };
    GroupRingElem::monomial(group, sign, group.elem(coords))
}

fn random_move(m: &TwistedMatrix, group: &AbelianGroup, rng: &mut SplitMix) -> MatrixMove {
    loop {
        match rng.below(10) {
            0 | 1 if m.cols() >= 2 => {
                let src = rng.below(m.cols());
                let dst = rng.below(m.cols());
                if src != dst {
                    return MatrixMove::AddColMultiple {
                        src,
                        dst,
                        r: random_elem(group, rng),
                    };
                }
            }
            2 | 3 if m.rows() >= 2 => {
                let src = rng.below(m.rows());
                let dst = rng.below(m.rows());
                if src != dst {
                    return MatrixMove::AddRowMultiple {
                        src,
                        dst,
                        r: random_elem(group, rng),
                    };
                }
            }
            4 => return MatrixMove::AppendZeroRow,
            5 => return MatrixMove::ExtendUnit,
            6 if m.cols() >= 2 => {
                let a = rng.below(m.cols());
                let b = rng.below(m.cols());
                if a != b {
                    return MatrixMove::SwapCols { a, b };
                }
            }
            7 if m.rows() >= 2 => {
                let a = rng.below(m.rows());
                let b = rng.below(m.rows());
                if a != b {
                    return MatrixMove::SwapRows { a, b };
                }
            }
            8 if m.cols() >= 1 => {
                return MatrixMove::ScaleCol {
                    col: rng.below(m.cols()),
                    u: random_unit(group, rng),
                };
            }
            9 if m.rows() >= 1 => {
                return MatrixMove::ScaleRow {
                    row: rng.below(m.rows()),
                    u: random_unit(group, rng),
                };
            }
            _ => {}
        }
    }
}
