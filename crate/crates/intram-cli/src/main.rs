//! Command-line front end: evaluate, multiply, power, solve, search,
//! validate and benchmark, always reporting operation tallies.
//!
//! Output is a JSON object on stdout: `{"value": ...}` plus `"tally"`
//! (with `--tally`), `"seed"` (randomized commands) and `"elapsed_ms"`.
//! Exit codes: 2 for usage errors, 3 when the restricted instruction set
//! forbids a required primitive, 4 for precondition failures (the message
//! names the violated bound), 1 for runtime failures such as a `--check`
//! mismatch.

mod bench;
mod json;

use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use intram::linalg::{
    det_bareiss, make_power_witness_oracle, matmul_naive, matmul_packed, matpow_tower,
    permanent_naive, permanent_packed,
};
use intram::numtheory::{
    coprime_chain, crt_tree, find_prime_above, find_recurrence, gcd_floor_point, is_prime,
    mills_constant, mills_floor, newton_approx, rho_encode, rho_extract, verify_gcd_floor,
    verify_recurrence, CoprimeSource,
};
use intram::packing::{min_slot_width, threesum_packed};
use intram::polyeval::{
    decide_finite_language, eval_adaptive, eval_adaptive_multi, eval_blocked, eval_horner,
    eval_multi, eval_prepared, pow_tower, prepare, prepare_language, prepare_multi,
    prepare_sequence, AdaptiveMultiPoly, AdaptivePoly,
};
use intram::rng::SplitMix64;
use intram::{BigInt, BigNat, CountedContext, Error, OpSet, PrimOp};

const COST_MODEL: &str =
    "cost model: unit cost per primitive {add,sub,mul,div,rem,and,gcd,gcdex,shift,cmp}; \
     comparisons and copies tallied under cmp and excluded from headline counts";

fn long_version() -> &'static str {
    Box::leak(format!("{}\n{}", env!("CARGO_PKG_VERSION"), COST_MODEL).into_boxed_str())
}

#[derive(Parser)]
#[command(name = "intram", version, long_version = long_version(), about = "Integer algorithms over non-arithmetic primitives, with operation accounting")]
struct Cli {
    /// Restrict the instruction set, e.g. "+,-,*,div,and,gcd".
    /// Comparisons are always permitted. "div" enables division with
    /// remainder (both div and rem).
    #[arg(long, global = true)]
    ops: Option<String>,

    /// Include the operation tally in the output.
    #[arg(long, global = true)]
    tally: bool,

    /// Seed for randomized subcommands; recorded in the output.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Compact single-line JSON output (default is pretty-printed).
    #[arg(long, global = true)]
    json: bool,

    /// Also run the naive oracle and fail on mismatch.
    #[arg(long, global = true)]
    check: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMethod {
    Horner,
    Blocked,
    Prepared,
    Adaptive,
}

#[derive(Clone, Copy, ValueEnum)]
enum MultiMethod {
    Prepared,
    Adaptive,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatMethod {
    Naive,
    Packed,
}

#[derive(Clone, Copy, ValueEnum)]
enum PoolSource {
    Primes,
    Chain,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a univariate polynomial at one point.
    Eval {
        #[arg(long, value_enum)]
        method: EvalMethod,
        /// JSON array of coefficients, index = exponent.
        #[arg(long)]
        poly: String,
        #[arg(long)]
        x: String,
        /// Domain bound X (prepared method).
        #[arg(long)]
        domain: Option<String>,
        /// Coefficient bound P (blocked method); default max coefficient + 1.
        #[arg(long)]
        coeff_bound: Option<u64>,
        /// Block size override (blocked method).
        #[arg(long)]
        block: Option<u32>,
    },
    /// Evaluate a multivariate polynomial at one point.
    EvalMulti {
        #[arg(long, value_enum, default_value = "prepared")]
        method: MultiMethod,
        #[arg(long)]
        vars: usize,
        /// Per-variable degree bound (every exponent stays below it).
        #[arg(long)]
        degree: u64,
        /// JSON list of terms: [{"exponents": [..], "coeff": ..}, ...].
        #[arg(long)]
        poly: String,
        /// JSON array of argument values.
        #[arg(long)]
        x: String,
        /// Domain bound (prepared method); default max |x_i|.
        #[arg(long)]
        domain: Option<String>,
    },
    /// Compile a finite sequence (or language) and query one index.
    Seq {
        /// JSON array of sequence values.
        #[arg(long, conflicts_with = "members")]
        values: Option<String>,
        /// JSON array of language members (decides membership instead).
        #[arg(long, requires = "universe")]
        members: Option<String>,
        /// Universe bound for --members (language over 0..=universe).
        #[arg(long)]
        universe: Option<u64>,
        /// Index to query.
        #[arg(long)]
        at: u64,
    },
    /// a^(2^k) from a witness integer in O(sqrt k) operations.
    PowTower {
        #[arg(long)]
        base: String,
        #[arg(long)]
        k: u64,
        /// Witness b >= 2 a^(2^k); computed at that minimum when omitted.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Matrix product.
    Matmul {
        #[arg(long, value_enum)]
        method: MatMethod,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Matrix permanent.
    Perm {
        #[arg(long, value_enum)]
        method: MatMethod,
        #[arg(long)]
        matrix: String,
    },
    /// Determinant by fraction-free elimination.
    Det {
        #[arg(long)]
        matrix: String,
    },
    /// A^(2^k) from a witness matrix in O(d^2 sqrt k) operations.
    Matpow {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        k: u64,
        /// Witness matrix; constructed by the oracle when omitted.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Solve simultaneous congruences with pairwise coprime moduli.
    Crt {
        /// JSON: [[residue, modulus], ...] or [{"residue","modulus"}, ...].
        #[arg(long)]
        congruences: String,
    },
    /// The multiply-and-add-one pairwise coprime chain.
    Coprime {
        #[arg(long)]
        r: String,
        #[arg(long)]
        count: usize,
    },
    /// A point where every offset in {0..s-1}^d keeps gcd >= r.
    GcdFloor {
        #[arg(long)]
        dims: usize,
        #[arg(long)]
        r: String,
        #[arg(long)]
        s: u64,
        #[arg(long, value_enum, default_value = "primes")]
        source: PoolSource,
    },
    /// Randomized search for a prime at or above a bound.
    Prime {
        #[arg(long)]
        above: String,
        #[arg(long)]
        attempts: Option<u64>,
    },
    /// Packed 3SUM: does x_i + y_j = z_k have a solution?
    Threesum {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        /// Slot width in bits; default bitlen(max value) + 2.
        #[arg(long)]
        width: Option<u64>,
    },
    /// Refine an isolated root of a squarefree polynomial.
    Newton {
        #[arg(long)]
        poly: String,
        /// Target precision in bits (absolute error 2^-bits).
        #[arg(long)]
        bits: u64,
        /// Bracket endpoints as rationals ("num/den" or integers).
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
    },
    /// floor(theta^(3^n)) by exact interval powering.
    Mills {
        #[arg(long)]
        n: u32,
        /// Override the stored constant (rational).
        #[arg(long, requires = "error")]
        theta: Option<String>,
        /// Error bound of the override.
        #[arg(long)]
        error: Option<String>,
    },
    /// Pack a polynomial value stream and extract one term.
    Rho {
        #[arg(long)]
        poly: String,
        /// Number of stored terms beyond the first.
        #[arg(long)]
        terms: u64,
        /// Term index to extract.
        #[arg(long)]
        extract: u64,
    },
    /// Linear recurrence satisfied by p(1), p(c), p(c^2), ...
    Recurrence {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        c: String,
    },
    /// Exhaustively validate the fixed-width evaluation classes.
    ValidateRanges {
        /// 1-based class index; all classes when omitted.
        #[arg(long)]
        class: Option<usize>,
    },
    /// CSV timing comparison of eval64, Horner and table lookup.
    Bench {
        /// Polynomials sampled from the class-6 corpus.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ForbiddenOp(_) => 3,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<String> for Failure {
    fn from(message: String) -> Self {
        Failure::usage(message)
    }
}

fn parse_ops(tokens: &str) -> Result<OpSet, Failure> {
    let mut set = OpSet::EMPTY;
    for token in tokens.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        set = match token {
            "+" | "add" => set.with(PrimOp::Add),
            "-" | "sub" => set.with(PrimOp::Sub),
            "*" | "x" | "mul" => set.with(PrimOp::Mul),
            "div" => set.with(PrimOp::Div).with(PrimOp::Rem),
            "rem" => set.with(PrimOp::Rem),
            "and" | "&" => set.with(PrimOp::And),
            "gcd" => set.with(PrimOp::Gcd),
            "gcdex" => set.with(PrimOp::Gcdex),
            "shift" => set.with(PrimOp::Shift),
            "cmp" => set.with(PrimOp::Cmp),
            other => {
                return Err(Failure::usage(format!(
                    "unknown operation token '{other}' in --ops"
                )))
            }
        };
    }
    // Tests and copies are implicitly permitted.
    Ok(set.with(PrimOp::Cmp))
}

fn check_mismatch(what: &str, got: impl std::fmt::Display, want: impl std::fmt::Display) -> Failure {
    Failure::runtime(format!("--check failed: {what}: got {got}, oracle says {want}"))
}

fn main() {
    let cli = Cli::parse();
    let ops = match cli.ops.as_deref().map(parse_ops).transpose() {
        Ok(ops) => ops.unwrap_or_else(OpSet::all),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    };
    let mut ctx = CountedContext::with_ops(ops);
    let seed = cli.seed.unwrap_or_else(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0x5eed)
    });

    let started = Instant::now();
    let outcome = run(&cli, &mut ctx, seed);
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;

    match outcome {
        Ok(Output::Json { value, used_seed }) => {
            let mut obj = serde_json::Map::new();
            obj.insert("value".into(), value);
            if cli.tally {
                obj.insert("tally".into(), json::tally_to_value(&ctx.tally_snapshot()));
            }
            if used_seed {
                obj.insert("seed".into(), json!(seed));
            }
            obj.insert("elapsed_ms".into(), json!(elapsed_ms));
            let out = Value::Object(obj);
            if cli.json {
                println!("{out}");
            } else {
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            }
        }
        Ok(Output::Raw(text)) => print!("{text}"),
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

enum Output {
    Json { value: Value, used_seed: bool },
    Raw(String),
}

fn ok(value: Value) -> Result<Output, Failure> {
    Ok(Output::Json {
        value,
        used_seed: false,
    })
}

fn ok_seeded(value: Value) -> Result<Output, Failure> {
    Ok(Output::Json {
        value,
        used_seed: true,
    })
}

fn run(cli: &Cli, ctx: &mut CountedContext, seed: u64) -> Result<Output, Failure> {
    match &cli.command {
        Command::Eval {
            method,
            poly,
            x,
            domain,
            coeff_bound,
            block,
        } => {
            let p = json::poly_from_json(poly)?;
            let x_int = json::bigint_from_str(x)?;
            let value = match method {
                EvalMethod::Horner => eval_horner(ctx, &p, &x_int)?,
                EvalMethod::Blocked => {
                    let bound = coeff_bound.unwrap_or_else(|| {
                        p.coeffs()
                            .iter()
                            .filter_map(|c| c.abs().to_u64())
                            .max()
                            .unwrap_or(1)
                            + 1
                    });
                    let x_nat = x_int.to_nat()?;
                    BigInt::from(eval_blocked(ctx, &p, &x_nat, bound.max(2), *block)?)
                }
                EvalMethod::Prepared => {
                    let domain = match domain {
                        Some(d) => json::bignat_from_str(d)?,
                        None => x_int.abs(),
                    };
                    let prep = prepare(&p, &domain);
                    eval_prepared(ctx, &prep, &x_int)?
                }
                EvalMethod::Adaptive => {
                    let x_nat = x_int.to_nat()?;
                    let prep = AdaptivePoly::new(&p);
                    eval_adaptive(ctx, &prep, &x_nat)?
                }
            };
            if cli.check {
                let oracle = p.eval_raw(&x_int);
                if value != oracle {
                    return Err(check_mismatch("polynomial value", &value, &oracle));
                }
            }
            ok(json::bigint_to_value(&value))
        }

        Command::EvalMulti {
            method,
            vars,
            degree,
            poly,
            x,
            domain,
        } => {
            let p = json::multipoly_from_json(poly, *vars, (*degree).max(2))?;
            let xs = json::int_list_from_json(x)?;
            if xs.len() != *vars {
                return Err(Failure::usage(format!(
                    "expected {vars} arguments, got {}",
                    xs.len()
                )));
            }
            let value = match method {
                MultiMethod::Prepared => {
                    let domain = match domain {
                        Some(d) => json::bignat_from_str(d)?,
                        None => xs.iter().map(BigInt::abs).max().unwrap_or_else(BigNat::one),
                    };
                    let prep = prepare_multi(&p, &domain)?;
                    eval_multi(ctx, &prep, &xs)?
                }
                MultiMethod::Adaptive => {
                    let prep = AdaptiveMultiPoly::new(&p)?;
                    eval_adaptive_multi(ctx, &prep, &xs)?
                }
            };
            if cli.check {
                let oracle = p.eval_raw(&xs);
                if value != oracle {
                    return Err(check_mismatch("polynomial value", &value, &oracle));
                }
            }
            ok(json::bigint_to_value(&value))
        }

        Command::Seq {
            values,
            members,
            universe,
            at,
        } => match (values, members) {
            (Some(values), None) => {
                let seq = json::int_list_from_json(values)?;
                if seq.is_empty() {
                    return Err(Failure::usage("sequence must be nonempty"));
                }
                let prep = prepare_sequence(&seq);
                let value = eval_prepared(ctx, &prep, &BigInt::from(*at))?;
                if cli.check {
                    let oracle = &seq[*at as usize];
                    if &value != oracle {
                        return Err(check_mismatch("sequence value", &value, oracle));
                    }
                }
                ok(json::bigint_to_value(&value))
            }
            (None, Some(members)) => {
                let universe = universe.expect("clap enforces --universe");
                let member_list: Vec<u64> = serde_json::from_str(members)
                    .map_err(|e| json::parse_error("members", e))?;
                if let Some(&m) = member_list.iter().find(|&&m| m > universe) {
                    return Err(Failure::usage(format!(
                        "member {m} outside the universe 0..={universe}"
                    )));
                }
                let prep = prepare_language(&member_list, universe);
                let value = decide_finite_language(ctx, &prep, *at)?;
                if cli.check && value != member_list.contains(at) {
                    return Err(check_mismatch(
                        "membership",
                        value,
                        member_list.contains(at),
                    ));
                }
                ok(json!(value))
            }
            _ => Err(Failure::usage("provide exactly one of --values, --members")),
        },

        Command::PowTower { base, k, witness } => {
            let a = json::bignat_from_str(base)?;
            let oracle = || {
                let mut v = a.clone();
                for _ in 0..*k {
                    v = &v * &v;
                }
                v
            };
            let b = match witness {
                Some(w) => json::bignat_from_str(w)?,
                None => &BigNat::from(2u32) * &oracle(),
            };
            let value = pow_tower(ctx, &a, *k, &b)?;
            if cli.check {
                let want = oracle();
                if value != want {
                    return Err(check_mismatch("power", &value, &want));
                }
            }
            ok(json::bignat_to_value(&value))
        }

        Command::Matmul {
            method,
            left,
            right,
        } => {
            let a = json::matrix_from_json(left)?;
            let b = json::matrix_from_json(right)?;
            let product = match method {
                MatMethod::Naive => matmul_naive(ctx, &a, &b)?,
                MatMethod::Packed => matmul_packed(ctx, &a, &b)?,
            };
            if cli.check {
                let oracle = a.mul_raw(&b);
                if product != oracle {
                    return Err(check_mismatch("matrix product", "matrix", "differs"));
                }
            }
            ok(json::matrix_to_value(&product))
        }

        Command::Perm { method, matrix } => {
            let a = json::matrix_from_json(matrix)?;
            let value = match method {
                MatMethod::Naive => permanent_naive(ctx, &a)?,
                MatMethod::Packed => BigInt::from(permanent_packed(ctx, &a)?),
            };
            if cli.check {
                let mut oracle_ctx = CountedContext::new();
                let oracle = permanent_naive(&mut oracle_ctx, &a)?;
                if value != oracle {
                    return Err(check_mismatch("permanent", &value, &oracle));
                }
            }
            ok(json::bigint_to_value(&value))
        }

        Command::Det { matrix } => {
            let a = json::matrix_from_json(matrix)?;
            let value = det_bareiss(ctx, &a)?;
            ok(json::bigint_to_value(&value))
        }

        Command::Matpow { matrix, k, witness } => {
            let a = json::matrix_from_json(matrix)?;
            let b = match witness {
                Some(w) => json::matrix_from_json(w)?,
                None => make_power_witness_oracle(&a, *k),
            };
            let value = matpow_tower(ctx, &a, *k, &b)?;
            if cli.check {
                let mut oracle = a.clone();
                for _ in 0..*k {
                    oracle = oracle.mul_raw(&oracle);
                }
                if value != oracle {
                    return Err(check_mismatch("matrix power", "matrix", "differs"));
                }
            }
            ok(json::matrix_to_value(&value))
        }

        Command::Crt { congruences } => {
            let system = json::congruences_from_json(congruences)?;
            if system.is_empty() {
                return Err(Failure::usage("congruence system must be nonempty"));
            }
            let (x, n) = crt_tree(ctx, &system)?;
            if cli.check {
                for c in &system {
                    let (_, r) = x.div_rem(c.modulus());
                    let want = c
                        .residue()
                        .div_mod_floor(&BigInt::from(c.modulus()))
                        .1;
                    if BigInt::from(r) != want {
                        return Err(check_mismatch("residue", &x, c.modulus()));
                    }
                }
            }
            ok(json!({"solution": x.to_string(), "modulus": n.to_string()}))
        }

        Command::Coprime { r, count } => {
            let r = json::bignat_from_str(r)?;
            let chain = coprime_chain(ctx, &r, *count)?;
            if cli.check {
                for (i, a) in chain.iter().enumerate() {
                    for b in &chain[i + 1..] {
                        if !a.gcd(b).is_one() {
                            return Err(check_mismatch("pairwise gcd", a, b));
                        }
                    }
                }
            }
            ok(Value::Array(chain.iter().map(json::bignat_to_value).collect()))
        }

        Command::GcdFloor { dims, r, s, source } => {
            let r = json::bignat_from_str(r)?;
            let source = match source {
                PoolSource::Primes => CoprimeSource::Primes,
                PoolSource::Chain => CoprimeSource::Chain,
            };
            let xs = gcd_floor_point(ctx, *dims, &r, *s, source)?;
            if cli.check && !verify_gcd_floor(&xs, &r, *s) {
                return Err(Failure::runtime(
                    "--check failed: some offset drops the gcd below r",
                ));
            }
            ok(Value::Array(xs.iter().map(json::bignat_to_value).collect()))
        }

        Command::Prime { above, attempts } => {
            let n = json::bignat_from_str(above)?;
            let mut rng = SplitMix64::new(seed);
            let p = find_prime_above(ctx, &n, &mut rng, *attempts)?;
            if cli.check && (!is_prime(&p) || p < n) {
                return Err(check_mismatch("prime", &p, "a prime >= the bound"));
            }
            ok_seeded(json::bignat_to_value(&p))
        }

        Command::Threesum { x, y, z, width } => {
            let xs = json::nat_list_from_json(x)?;
            let ys = json::nat_list_from_json(y)?;
            let zs = json::nat_list_from_json(z)?;
            if xs.len() != ys.len() || xs.len() != zs.len() {
                return Err(Failure::usage("x, y, z must have equal length"));
            }
            let width = width.unwrap_or_else(|| {
                let max_xy = xs.iter().max().cloned().unwrap_or_else(BigNat::zero);
                let max_y = ys.iter().max().cloned().unwrap_or_else(BigNat::zero);
                let max_z = zs.iter().max().cloned().unwrap_or_else(BigNat::zero);
                min_slot_width(&(&max_xy + &max_y).max(max_z))
            });
            let found = threesum_packed(ctx, &xs, &ys, &zs, width)?;
            if cli.check {
                let brute = xs.iter().any(|xi| {
                    ys.iter()
                        .any(|yj| zs.iter().any(|zk| *zk == xi + yj))
                });
                if found != brute {
                    return Err(check_mismatch("3SUM", found, brute));
                }
            }
            ok(json!(found))
        }

        Command::Newton { poly, bits, lo, hi } => {
            let p = json::poly_from_json(poly)?;
            let lo = json::rational_from_str(lo)?;
            let hi = json::rational_from_str(hi)?;
            let root = newton_approx(ctx, &p, *bits, &lo, &hi)?;
            ok(json!(root.to_string()))
        }

        Command::Mills { n, theta, error } => {
            let (theta, error) = match (theta, error) {
                (Some(t), Some(e)) => (json::rational_from_str(t)?, json::rational_from_str(e)?),
                _ => mills_constant(),
            };
            let value = mills_floor(ctx, &theta, &error, *n)?;
            if cli.check && !is_prime(&value) {
                return Err(check_mismatch("Mills output", &value, "a prime"));
            }
            ok(json::bignat_to_value(&value))
        }

        Command::Rho {
            poly,
            terms,
            extract,
        } => {
            let p = json::poly_from_json(poly)?;
            let code = rho_encode(&p, *terms)?;
            let value = rho_extract(ctx, &code, *extract)?;
            if cli.check {
                let z_n = BigNat::pow2(p.norm1().bit_len().max(1) + extract);
                let oracle = p.eval_raw(&BigInt::from(z_n)).to_nat()?;
                if value != oracle {
                    return Err(check_mismatch("stored term", &value, &oracle));
                }
            }
            ok(json::bignat_to_value(&value))
        }

        Command::Recurrence { poly, c } => {
            let p = json::poly_from_json(poly)?;
            if p.is_zero() {
                return Err(Failure::usage("polynomial must be nonzero"));
            }
            let c = json::bignat_from_str(c)?;
            if c < BigNat::from(2u32) {
                return Err(Failure::usage("base c must be at least 2"));
            }
            let coeffs = find_recurrence(&p, &c);
            if cli.check && !verify_recurrence(&p, &c, &coeffs, 10) {
                return Err(Failure::runtime(
                    "--check failed: recurrence does not reproduce the sequence",
                ));
            }
            ok(Value::Array(coeffs.iter().map(json::bigint_to_value).collect()))
        }

        Command::ValidateRanges { class } => {
            let classes = intram::native64::builtin_classes();
            let selected: Vec<usize> = match class {
                Some(k) => {
                    if *k == 0 || *k > classes.len() {
                        return Err(Failure::usage(format!(
                            "class index out of range 1..={}",
                            classes.len()
                        )));
                    }
                    vec![k - 1]
                }
                None => (0..classes.len()).collect(),
            };
            let mut reports = Vec::new();
            let mut all_clean = true;
            for idx in selected {
                let report = intram::native64::validate_class(&classes[idx]);
                all_clean &= report.mismatches == 0;
                reports.push(json!({
                    "class": idx + 1,
                    "degree": classes[idx].degree(),
                    "norm1": classes[idx].norm1(),
                    "domain": classes[idx].domain(),
                    "radix": classes[idx].radix(),
                    "pow2": classes[idx].is_pow2(),
                    "polynomials": report.polynomials,
                    "evaluations": report.evaluations,
                    "mismatches": report.mismatches,
                }));
            }
            if !all_clean {
                return Err(Failure::runtime("validation found mismatches"));
            }
            ok(Value::Array(reports))
        }

        Command::Bench { samples } => {
            Ok(Output::Raw(bench::run(*samples, seed)))
        }
    }
}
