//! `gsp` — exact arithmetic for finite symplectic similitude groups,
//! `ℓ`-adic lattices, torsion invariants, and torsion-growth exponents.
//!
//! Exit codes: 0 success, 2 invalid input or JSON, 3 verification suite
//! failure, 4 enumeration budget exceeded.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;

use gsp_core::enumerate::{count_elements, visit_elements, DEFAULT_BUDGET_LOG2};
use gsp_core::exponent::{
    alpha_product, exceptional_witnesses, gamma_ratio_search, gamma_simple, is_exceptional,
    ExceptionalFamily, Factor, ProductShape,
};
use gsp_core::lattice::{isotropic_lift, saturate, symplectic_complete};
use gsp_core::padic::PrecisionContext;
use gsp_core::symplectic::{
    chain_index_exponent, closed_form_order, codim_pr, codim_prs, hensel_order, sp_factorize,
    GroupDescriptor,
};
use gsp_core::torsion::{
    canonical_type, delta_estimate, isotropy_chain, pairing_profile, stabilizer_enumerate,
    weil_pairing,
};
use gsp_core::ResidueMatrix;

use gsp_tools::error::{ToolError, EXIT_SUITE_FAILURE};
use gsp_tools::json::{ElementJson, LatticeJson, MatrixJson, SubgroupJson};
use gsp_tools::suites::{run_suite, SuiteRequest};

#[derive(Parser)]
#[command(
    name = "gsp",
    version,
    about = "Exact symplectic group arithmetic, lattice completion, torsion invariants, and growth exponents over Z/l^N"
)]
struct Cli {
    /// Seed for the documented 64-bit generator (suites and sampling).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of randomized trials; defaults depend on the suite.
    #[arg(long, global = true)]
    trials: Option<u32>,
    /// Base-2 logarithm of the enumeration budget.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_LOG2)]
    budget_log2: u32,
    /// Write the JSON output to this path instead of standard output.
    #[arg(long = "json", global = true, value_name = "PATH")]
    json_path: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion-growth exponents: closed forms, products, exhaustive search.
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Finite symplectic-family groups: orders, elements, codimensions.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Lattice algorithms over Z/l^N.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Torsion subgroup invariants.
    #[command(subcommand)]
    Torsion(TorsionCmd),
    /// Test whether a genus lies in the exceptional set, with a witness.
    Exceptional {
        #[arg(long)]
        g: u64,
    },
    /// Run a verification suite and print its report.
    Verify {
        /// Suite name (see the documentation for the full list).
        suite: String,
        /// Grid bound for brute-force weight scans (abel suite).
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Subcommand)]
enum GammaCmd {
    /// Exponent of a simple factor: 2g/(2g^2+g+1).
    Simple {
        #[arg(long)]
        g: u32,
    },
    /// Product-case exponent: maximum over nonempty factor subsets.
    Product {
        /// A factor as "g=<genus>,n=<weight>"; repeatable.
        #[arg(long = "factor", required = true, value_name = "g=..,n=..")]
        factors: Vec<String>,
    },
    /// Exhaustive ratio search over subgroup shapes.
    Search {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 2)]
        max_t: usize,
        #[arg(long, default_value_t = 3)]
        max_level: u32,
    },
}

#[derive(Args)]
struct FamilyArgs {
    /// Family: sp, gsp, p (needs --r), prs (needs --r, --s), pair (needs --g2).
    #[arg(long)]
    family: String,
    /// Genus (g1 for pair families).
    #[arg(long)]
    g: u32,
    /// Second genus for pair families.
    #[arg(long)]
    g2: Option<u32>,
    /// Number of fixed basis vectors e_1..e_r.
    #[arg(long)]
    r: Option<u32>,
    /// Number of fixed basis vectors f_1..f_s.
    #[arg(long)]
    s: Option<u32>,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Group order by closed formula, level lifting, or enumeration.
    Order {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        level: u32,
        /// One of: formula, hensel, enumerate.
        #[arg(long, default_value = "formula")]
        method: String,
    },
    /// Enumerate group elements (count plus a capped element listing).
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        level: u32,
        /// Maximum number of elements to include in the output.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Codimension of the fixator subgroup P_r or P_{r,s} in Sp_{2g}.
    Codim {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: Option<u32>,
    },
    /// Factor a similitude element as diag(I, lambda*I) times a symplectic one.
    Factorize {
        /// Element JSON file (standard input when omitted).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Index exponent of a congruence chain.
    Index {
        /// A step as "m=<level>,family=<sp|gsp|p|prs>,g=..[,r=..][,s=..]"; repeatable.
        #[arg(long = "step", required = true, value_name = "m=..,family=..,g=..")]
        steps: Vec<String>,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Saturate a sublattice (divide out ell from the generator columns).
    Saturate {
        /// Lattice JSON file (standard input when omitted).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Complete a maximal isotropic lattice to a full symplectic basis.
    Complete {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Lift an isotropic subspace mod ell to working precision.
    Lift {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Target precision exponent N.
        #[arg(long)]
        precision: u32,
    },
}

#[derive(Subcommand)]
enum TorsionCmd {
    /// Canonical cyclic decomposition of a subgroup.
    Type {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Pairing of two generators at their common order level.
    Pairing {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Index of the first generator.
        #[arg(long, default_value_t = 0)]
        p: usize,
        /// Index of the second generator.
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// Pairing defect invariants m1 and m.
    M1 {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Isotropy flag chain with the degree-exponent prediction.
    Chain {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Pointwise stabilizer order and index at level m1 (max order).
    Stabilizer {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Family: sp or gsp.
        #[arg(long, default_value = "gsp")]
        family: String,
    },
    /// Multiplier-image index delta with its bracket.
    Delta {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Degree-exponent prediction for the subgroup.
    PredictDegree {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

// ---------------------------------------------------------------------------
// Output shapes (struct field order is the serialized key order).

#[derive(Serialize)]
struct ValueOut {
    value: String,
}

#[derive(Serialize)]
struct SubsetRow {
    factors: Vec<String>,
    value: String,
}

#[derive(Serialize)]
struct ProductOut {
    value: String,
    maximizers: Vec<Vec<String>>,
    table: Vec<SubsetRow>,
}

#[derive(Serialize)]
struct WitnessOut {
    levels: Vec<String>,
    multiplicities: Vec<String>,
    flags: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct TableRow {
    g: String,
    closed_form: String,
}

#[derive(Serialize)]
struct SearchOut {
    value: String,
    maximizers: Vec<WitnessOut>,
    table: Vec<TableRow>,
}

#[derive(Serialize)]
struct OrderOut {
    order: String,
}

#[derive(Serialize)]
struct EnumerateOut {
    count: String,
    elements: Vec<ElementJson>,
}

#[derive(Serialize)]
struct CodimOut {
    codim: String,
}

#[derive(Serialize)]
struct FactorizeOut {
    scalar_block: ElementJson,
    sp_part: ElementJson,
}

#[derive(Serialize)]
struct ExponentOut {
    exponent: String,
}

#[derive(Serialize)]
struct BasisOut {
    basis: MatrixJson,
}

#[derive(Serialize)]
struct TypeOut {
    order_exponents: Vec<String>,
    levels: Vec<String>,
    multiplicities: Vec<String>,
}

#[derive(Serialize)]
struct PairingOut {
    level: String,
    value: String,
    order_exponent: String,
}

#[derive(Serialize)]
struct M1Out {
    m1: String,
    m: String,
    totally_isotropic: bool,
}

#[derive(Serialize)]
struct ChainStepOut {
    level: String,
    r: String,
    s: String,
    delta: bool,
}

#[derive(Serialize)]
struct ChainOut {
    g: String,
    steps: Vec<ChainStepOut>,
    prediction: String,
}

#[derive(Serialize)]
struct StabilizerOut {
    family: String,
    level: String,
    order: String,
    group_order: String,
    index: String,
}

#[derive(Serialize)]
struct DeltaOut {
    level: String,
    m1: String,
    stabilizer_order: String,
    multiplier_image_order: String,
    delta: String,
    lower: String,
    upper: String,
    within_bracket: bool,
}

#[derive(Serialize)]
struct WitnessJson {
    kind: String,
    k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<u64>,
}

#[derive(Serialize)]
struct ExceptionalOut {
    exceptional: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<u8, ToolError> {
    match cli.command {
        Command::Verify { ref suite, bound } => {
            let report = run_suite(&SuiteRequest {
                name: suite.clone(),
                seed: cli.seed,
                trials: cli.trials,
                budget_log2: cli.budget_log2,
                bound,
            })?;
            let ok = report.all_passed();
            emit(&render(&report)?, &cli.json_path)?;
            Ok(if ok { 0 } else { EXIT_SUITE_FAILURE as u8 })
        }
        ref command => {
            let value = dispatch(command, &cli)?;
            emit(&value, &cli.json_path)?;
            Ok(0)
        }
    }
}

fn emit(line: &str, json_path: &Option<PathBuf>) -> Result<(), ToolError> {
    let mut text = String::from(line);
    text.push('\n');
    match json_path {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render<T: Serialize>(out: &T) -> Result<String, ToolError> {
    Ok(serde_json::to_string(out)?)
}

fn dispatch(command: &Command, cli: &Cli) -> Result<String, ToolError> {
    match command {
        Command::Gamma(cmd) => gamma_cmd(cmd),
        Command::Group(cmd) => group_cmd(cmd, cli.budget_log2),
        Command::Lattice(cmd) => lattice_cmd(cmd),
        Command::Torsion(cmd) => torsion_cmd(cmd, cli.budget_log2),
        Command::Exceptional { g } => exceptional_cmd(*g),
        Command::Verify { .. } => unreachable!("verify is handled by run()"),
    }
}

// ---------------------------------------------------------------------------
// Shared parsing helpers.

fn read_input(path: &Option<PathBuf>) -> Result<String, ToolError> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn parse_kv(text: &str) -> Result<BTreeMap<String, String>, ToolError> {
    let mut map = BTreeMap::new();
    for part in text.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| ToolError::invalid(format!("expected key=value, got {part:?}")))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn kv_u64(map: &BTreeMap<String, String>, key: &str) -> Result<u64, ToolError> {
    map.get(key)
        .ok_or_else(|| ToolError::invalid(format!("missing key {key:?}")))?
        .parse::<u64>()
        .map_err(|_| ToolError::invalid(format!("key {key:?} is not an unsigned integer")))
}

fn parse_descriptor(args: &FamilyArgs) -> Result<GroupDescriptor, ToolError> {
    let d = match args.family.as_str() {
        "sp" => GroupDescriptor::Sp { g: args.g },
        "gsp" => GroupDescriptor::GSp { g: args.g },
        "p" => GroupDescriptor::Parabolic {
            g: args.g,
            r: args
                .r
                .ok_or_else(|| ToolError::invalid("family p requires --r"))?,
        },
        "prs" => GroupDescriptor::ParabolicPair {
            g: args.g,
            r: args
                .r
                .ok_or_else(|| ToolError::invalid("family prs requires --r"))?,
            s: args
                .s
                .ok_or_else(|| ToolError::invalid("family prs requires --s"))?,
        },
        "pair" => GroupDescriptor::SimilitudePair {
            g1: args.g,
            g2: args
                .g2
                .ok_or_else(|| ToolError::invalid("family pair requires --g2"))?,
        },
        other => {
            return Err(ToolError::invalid(format!(
                "unknown family {other:?}; expected sp, gsp, p, prs, or pair"
            )))
        }
    };
    d.validate()?;
    Ok(d)
}

fn descriptor_from_kv(map: &BTreeMap<String, String>) -> Result<GroupDescriptor, ToolError> {
    let family = map
        .get("family")
        .ok_or_else(|| ToolError::invalid("missing key \"family\""))?
        .clone();
    let opt_u32 = |key: &str| -> Result<Option<u32>, ToolError> {
        match map.get(key) {
            Some(_) => Ok(Some(kv_u64(map, key)? as u32)),
            None => Ok(None),
        }
    };
    let args = FamilyArgs {
        family,
        g: kv_u64(map, "g")? as u32,
        g2: opt_u32("g2")?,
        r: opt_u32("r")?,
        s: opt_u32("s")?,
    };
    parse_descriptor(&args)
}

// ---------------------------------------------------------------------------
// gamma

fn gamma_cmd(cmd: &GammaCmd) -> Result<String, ToolError> {
    match cmd {
        GammaCmd::Simple { g } => render(&ValueOut {
            value: gamma_simple(*g)?.to_string(),
        }),
        GammaCmd::Product { factors } => gamma_product(factors),
        GammaCmd::Search {
            g,
            max_t,
            max_level,
        } => gamma_search(*g, *max_t, *max_level),
    }
}

fn gamma_product(specs: &[String]) -> Result<String, ToolError> {
    let mut factors = Vec::with_capacity(specs.len());
    for spec in specs {
        let map = parse_kv(spec)?;
        factors.push(Factor {
            genus: kv_u64(&map, "g")? as u32,
            weight: kv_u64(&map, "n")? as u32,
        });
    }
    let labels: Vec<String> = factors
        .iter()
        .map(|f| format!("g={},n={}", f.genus, f.weight))
        .collect();
    let shape = ProductShape::new(factors.clone())?;
    let alpha = alpha_product(&shape)?;
    // Recompute per-subset ratios to surface the maximizing subsets.
    let mut table = Vec::new();
    let mut maximizers = Vec::new();
    for mask in 1u32..(1 << factors.len()) {
        let mut num = 0u128;
        let mut den = 1u128;
        let mut chosen = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let (g, n) = (u128::from(f.genus), u128::from(f.weight));
                num += 2 * n * g;
                den += 2 * g * g + g;
                chosen.push(labels[i].clone());
            }
        }
        let ratio = gsp_core::padic::rational_big(BigUint::from(num), BigUint::from(den));
        if ratio == alpha {
            maximizers.push(chosen.clone());
        }
        table.push(SubsetRow {
            factors: chosen,
            value: ratio.to_string(),
        });
    }
    render(&ProductOut {
        value: alpha.to_string(),
        maximizers,
        table,
    })
}

fn gamma_search(g: u32, max_t: usize, max_level: u32) -> Result<String, ToolError> {
    let result = gamma_ratio_search(g, max_t, max_level)?;
    let maximizers = result
        .witnesses
        .iter()
        .map(|w| WitnessOut {
            levels: w.levels.iter().map(|v| v.to_string()).collect(),
            multiplicities: w.multiplicities.iter().map(|v| v.to_string()).collect(),
            flags: w
                .flags
                .iter()
                .map(|(r, s)| vec![r.to_string(), s.to_string()])
                .collect(),
        })
        .collect();
    render(&SearchOut {
        value: result.ratio.to_string(),
        maximizers,
        table: vec![TableRow {
            g: g.to_string(),
            closed_form: gamma_simple(g)?.to_string(),
        }],
    })
}

// ---------------------------------------------------------------------------
// group

fn group_cmd(cmd: &GroupCmd, budget_log2: u32) -> Result<String, ToolError> {
    match cmd {
        GroupCmd::Order {
            family,
            ell,
            level,
            method,
        } => {
            let d = parse_descriptor(family)?;
            // Validates that ell is prime and the level is in range.
            PrecisionContext::new(*ell, *level)?;
            let order = match method.as_str() {
                "formula" => closed_form_order(&d, *ell, *level).ok_or_else(|| {
                    ToolError::invalid(
                        "no closed-form order for this family; use --method hensel or enumerate",
                    )
                })?,
                "hensel" => {
                    let level1 = count_elements(&d, *ell, 1, budget_log2)?;
                    hensel_order(&d, &level1, *ell, *level)
                }
                "enumerate" => count_elements(&d, *ell, *level, budget_log2)?,
                other => {
                    return Err(ToolError::invalid(format!(
                        "unknown method {other:?}; expected formula, hensel, or enumerate"
                    )))
                }
            };
            render(&OrderOut {
                order: order.to_string(),
            })
        }
        GroupCmd::Enumerate {
            family,
            ell,
            level,
            limit,
        } => {
            let d = parse_descriptor(family)?;
            let ctx = PrecisionContext::new(*ell, *level)?;
            let side = 2 * d.genus() as usize;
            let mut kept: Vec<Vec<u64>> = Vec::new();
            let mut count = 0u64;
            visit_elements(&d, *ell, *level, budget_log2, &mut |mat, _| {
                if kept.len() < *limit {
                    kept.push(mat.to_vec());
                }
                count += 1;
            })?;
            let mut elements = Vec::with_capacity(kept.len());
            for words in kept {
                let m = ResidueMatrix::from_u64(&ctx, side, side, &words)?;
                elements.push(ElementJson::from_matrix(&m)?);
            }
            render(&EnumerateOut {
                count: count.to_string(),
                elements,
            })
        }
        GroupCmd::Codim { g, r, s } => {
            let value = match s {
                Some(s) => codim_prs(*g, *r, *s)?,
                None => codim_pr(*g, *r)?,
            };
            render(&CodimOut {
                codim: value.to_string(),
            })
        }
        GroupCmd::Factorize { input } => {
            let text = read_input(input)?;
            let element: ElementJson = serde_json::from_str(&text)?;
            let m = element.to_matrix()?;
            let (scalar_block, sp_part) = sp_factorize(&m)?;
            render(&FactorizeOut {
                scalar_block: ElementJson::from_matrix(&scalar_block)?,
                sp_part: ElementJson::from_matrix(&sp_part)?,
            })
        }
        GroupCmd::Index { steps } => {
            let mut chain = Vec::with_capacity(steps.len());
            for step in steps {
                let map = parse_kv(step)?;
                let level = kv_u64(&map, "m")? as u32;
                let d = descriptor_from_kv(&map)?;
                chain.push((level, d));
            }
            let exponent = chain_index_exponent(&chain)?;
            render(&ExponentOut {
                exponent: exponent.to_string(),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// lattice

fn lattice_cmd(cmd: &LatticeCmd) -> Result<String, ToolError> {
    match cmd {
        LatticeCmd::Saturate { input } => {
            let lattice: LatticeJson = serde_json::from_str(&read_input(input)?)?;
            let m = lattice.to_matrix()?;
            let saturated = saturate(&m)?;
            render(&LatticeJson::from_matrix(&saturated))
        }
        LatticeCmd::Complete { input } => {
            let lattice: LatticeJson = serde_json::from_str(&read_input(input)?)?;
            let m = lattice.to_matrix()?;
            let basis = symplectic_complete(&m)?;
            render(&BasisOut {
                basis: MatrixJson::from_matrix(&basis),
            })
        }
        LatticeCmd::Lift { input, precision } => {
            let lattice: LatticeJson = serde_json::from_str(&read_input(input)?)?;
            let m = lattice.to_matrix()?;
            let target = PrecisionContext::new(lattice.ell, *precision)?;
            let lifted = isotropic_lift(&m, &target)?;
            render(&LatticeJson::from_matrix(&lifted))
        }
    }
}

// ---------------------------------------------------------------------------
// torsion

fn load_subgroup(input: &Option<PathBuf>) -> Result<ResidueMatrix, ToolError> {
    let subgroup: SubgroupJson = serde_json::from_str(&read_input(input)?)?;
    subgroup.to_matrix()
}

fn torsion_cmd(cmd: &TorsionCmd, budget_log2: u32) -> Result<String, ToolError> {
    match cmd {
        TorsionCmd::Type { input } => {
            let h = load_subgroup(input)?;
            let exponents = canonical_type(&h)?;
            let mut levels: Vec<u32> = Vec::new();
            let mut multiplicities: Vec<u32> = Vec::new();
            for &e in &exponents {
                if levels.last() == Some(&e) {
                    *multiplicities.last_mut().unwrap() += 1;
                } else {
                    levels.push(e);
                    multiplicities.push(1);
                }
            }
            render(&TypeOut {
                order_exponents: exponents.iter().map(|e| e.to_string()).collect(),
                levels: levels.iter().map(|e| e.to_string()).collect(),
                multiplicities: multiplicities.iter().map(|e| e.to_string()).collect(),
            })
        }
        TorsionCmd::Pairing { input, p, q } => {
            let h = load_subgroup(input)?;
            if *p >= h.cols() || *q >= h.cols() {
                return Err(ToolError::invalid(format!(
                    "generator indices {p}, {q} out of range for {} generators",
                    h.cols()
                )));
            }
            let pairing = weil_pairing(h.ctx(), &h.column(*p), &h.column(*q))?;
            render(&PairingOut {
                level: pairing.level.to_string(),
                value: pairing.value.to_string(),
                order_exponent: pairing.order_exponent(h.ctx().ell()).to_string(),
            })
        }
        TorsionCmd::M1 { input } => {
            let h = load_subgroup(input)?;
            let profile = pairing_profile(&h)?;
            render(&M1Out {
                m1: profile.m1.to_string(),
                m: profile.m.to_string(),
                totally_isotropic: profile.is_totally_isotropic(),
            })
        }
        TorsionCmd::Chain { input } => {
            let h = load_subgroup(input)?;
            let chain = isotropy_chain(&h)?;
            render(&ChainOut {
                g: chain.g.to_string(),
                steps: chain
                    .steps
                    .iter()
                    .map(|s| ChainStepOut {
                        level: s.level.to_string(),
                        r: s.r.to_string(),
                        s: s.s.to_string(),
                        delta: s.delta,
                    })
                    .collect(),
                prediction: chain.degree_exponent_prediction()?.to_string(),
            })
        }
        TorsionCmd::Stabilizer { input, family } => {
            let h = load_subgroup(input)?;
            let similitude = match family.as_str() {
                "sp" => false,
                "gsp" => true,
                other => {
                    return Err(ToolError::invalid(format!(
                        "unknown family {other:?}; expected sp or gsp"
                    )))
                }
            };
            let count = stabilizer_enumerate(&h, similitude, budget_log2)?;
            render(&StabilizerOut {
                family: family.clone(),
                level: count.level.to_string(),
                order: count.order.to_string(),
                group_order: count.group_order.to_string(),
                index: count.index.to_string(),
            })
        }
        TorsionCmd::Delta { input } => {
            let h = load_subgroup(input)?;
            let est = delta_estimate(&h, budget_log2)?;
            render(&DeltaOut {
                level: est.level.to_string(),
                m1: est.m1.to_string(),
                stabilizer_order: est.stabilizer_order.to_string(),
                multiplier_image_order: est.multiplier_image_order.to_string(),
                delta: est.delta.to_string(),
                lower: est.lower.to_string(),
                upper: est.upper.to_string(),
                within_bracket: est.within_bracket,
            })
        }
        TorsionCmd::PredictDegree { input } => {
            let h = load_subgroup(input)?;
            let chain = isotropy_chain(&h)?;
            render(&ExponentOut {
                exponent: chain.degree_exponent_prediction()?.to_string(),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// exceptional

fn exceptional_cmd(g: u64) -> Result<String, ToolError> {
    let exceptional = is_exceptional(g);
    let witness = if exceptional {
        exceptional_witnesses(g)
            .into_iter()
            .find(|(genus, _)| *genus == g)
            .and_then(|(_, families)| families.into_iter().next())
            .map(|family| match family {
                ExceptionalFamily::HalvedPower { k, a } => WitnessJson {
                    kind: "power".to_string(),
                    k,
                    a: Some(a),
                },
                ExceptionalFamily::CentralBinomial { k } => WitnessJson {
                    kind: "binomial".to_string(),
                    k,
                    a: None,
                },
            })
    } else {
        None
    };
    render(&ExceptionalOut {
        exceptional,
        witness,
    })
}
