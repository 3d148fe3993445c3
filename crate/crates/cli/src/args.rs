use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 20_240_229;

const ABOUT: &str = "Exact computations with Schur-type functors of free modules";

const LONG_ABOUT: &str = "\
Computes the maps induced on Schur-type functors (iterated symmetric powers,
exterior powers and tensor products) by matrices over Z, Q, Z[1/p,...] or
polynomial rings, builds the canonical maps between such functors, and checks
the determinant identities, composition scalars and exact sequences relating
them. All arithmetic is exact.";

const AFTER_LONG_HELP: &str = "\
EXPRESSIONS
    expr    := product ( \"(+)\" product )*
    product := factor ( \"(x)\" factor )*
    factor  := primary [ \"^(x)\" nat ]
    primary := \"M\" | (\"S\" | \"W\" | \"T\") \"^\" nat \"(\" expr \")\" | \"(\" expr \")\"

    S^r is the r-th symmetric power, W^r the r-th exterior power, T^r and
    ^(x)r the r-fold tensor power. Direct sums may only appear at the top.

RINGS
    Z, Q, Z[1/3], Z[1/2,1/5] (primes only), Z[a,b,c,d] (polynomials).

MATRIX FILES
    {\"ring\": \"Z[a,b,c,d]\", \"rows\": 2, \"cols\": 2,
     \"entries\": [[\"a\", \"b\"], [\"c\", \"d\"]]}
    Entries are scalar strings such as \"3\", \"-5/9\" or \"2*a^2*d - b\".
    Output matrices add \"domain_labels\" and \"codomain_labels\".

EXIT STATUS
    0  success, or the claim was verified
    1  the claim was refuted (including not_scalar)
    2  usage, parse, file or parameter error
    3  a lift failed to descend; the witness is printed

    `verify conjecture` is exploratory and always exits 0.

EXAMPLES
    schur inspect 'S^2(S^2(M))' --n 2
    schur induced 'S^3(M)' generic2.json --det
    schur map tau --rank 2
    schur map phi_nk --n 2 --k 3 --rank 2 --allow-odd
    schur verify det --expr 'S^2(S^2(M))' --n 2 --mode symbolic
    schur --ring 'Z[1/3]' verify t52 --rank 2
    schur --output json verify t54 --rank 3
    schur verify conjecture --max-n 3 --max-k 4

OUTPUT
    JSON output is deterministic: identical arguments and seed give
    byte-identical output. Schemas live in schema/.";

#[derive(Parser, Debug)]
#[command(name = "schur", version, about = ABOUT, long_about = LONG_ABOUT, after_long_help = AFTER_LONG_HELP)]
pub struct Cli {
    /// Scalar ring: Z, Q, Z[1/p,...] or Z[v1,...]
    #[arg(long, global = true)]
    pub ring: Option<String>,

    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,

    /// Largest induced matrix dimension expanded symbolically
    #[arg(long, global = true, default_value_t = 20, value_name = "DIM")]
    pub budget: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Show the AST, degrees, ranks and canonical basis of an expression
    Inspect {
        expr: String,
        /// Rank of the free module
        #[arg(long)]
        n: u32,
        /// Number of basis labels to list
        #[arg(long, default_value_t = 20)]
        max_basis: usize,
    },
    /// Apply an expression to a square matrix read from a JSON file ("-" for stdin)
    Induced {
        expr: String,
        matrix: PathBuf,
        /// Also print the determinant of the induced matrix
        #[arg(long)]
        det: bool,
    },
    /// Build a canonical map and its descent certificate
    #[command(long_about = "\
Build a canonical map and its descent certificate.

Names and parameters:
    phi_nk   S^n(S^k F) -> S^k(W^n F)    --n --k --rank (k even unless --allow-odd)
    phi_kn   S^k(W^n F) -> S^n(S^k F)    --n --k --rank
    q        S^2(S^n F) -> S^2n F        --n --rank
    varphi   S^2n F -> S^2(S^n F)        --n --rank
    i        S^2(W^2 F) (x) S^2(S^(n-2) F) -> S^2(S^n F)   --n (>= 3) --rank
    j        S^2(S^n F) -> S^2(W^2 F) (x) S^2(S^(n-2) F)   --n (>= 3) --rank
    tau      S^2(S^2 F) -> S^2(W^2 F)    --rank
    incl     S^2(W^2 F) -> S^2(S^2 F)    --rank
    alpha1 alpha2 alpha3 beta1 beta2 beta3   --rank")]
    Map {
        name: String,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long)]
        rank: usize,
        /// Run phi_nk for odd k and report the descent witness
        #[arg(long)]
        allow_odd: bool,
    },
    /// Check a claim and print a verdict
    #[command(long_about = "\
Check a claim and print a verdict.

Claims and parameters:
    det            --expr --n [--mode symbolic|random --trials --entry-bound]
    t42_scalars    [--n --k --rank]   default: (2,2,2) (2,4,2) (3,2,3)
    t43            [--n --rank]       default: n in 2..4, ranks 2..3
    t52            [--rank]           default 2; splitting over --ring
    t54            [--rank]           default 3; exactness over --ring
    lemma51        [--m --n --trials] default: (1,1) (2,1) (2,2), 20 trials
    conjecture     [--max-n --max-k]  default 3 and 4
    rank_identity  [--max-n]          default 12")]
    Verify {
        claim: String,
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Random trials (100 for det, 20 for lemma51)
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 50)]
        entry_bound: i64,
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long)]
        max_k: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Random,
}
