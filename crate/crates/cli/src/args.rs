use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Degeneracy loci, exceptional sets and Nullstellensatz certificates for
/// holomorphic curves, plus numerical Nevanlinna functions.
#[derive(Parser, Debug)]
#[command(name = "defect-forge", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the main artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Reject input polynomials that are not homogeneous.
    #[arg(long, global = true)]
    pub require_homogeneous: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that forms are in weakly general position.
    CheckPosition(FormsArg),
    /// Find a Nullstellensatz certificate for n+1 forms in n+1 variables.
    Nullstellensatz(FormsArg),
    /// Verify a certificate file against the forms.
    VerifyCertificate {
        #[command(flatten)]
        forms: FormsArg,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Jacobian determinant of n+1 forms.
    Jacobian(FormsArg),
    /// Degeneracy polynomial B for n+2 or more forms.
    DegeneracyLocus {
        #[command(flatten)]
        forms: FormsArg,
        /// Defaults to 1/(4 d1).
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long, default_value = "1")]
        kappa: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        all_factors: bool,
        #[arg(long)]
        assert_transversal: bool,
    },
    /// Apply the derivation D_u to a polynomial.
    DuOperator {
        /// File with one polynomial F.
        #[arg(long)]
        poly: PathBuf,
        /// One component u_j = exp(p(t))*q(t) per line.
        #[arg(long)]
        model: PathBuf,
    },
    /// Generators of the bad specialization set.
    SpecializeSigma {
        #[arg(long)]
        poly: PathBuf,
        /// Parameter variables, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<String>,
        /// Optional point to test, comma separated rationals.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<String>>,
    },
    /// Unimodular matrix whose first row is the given primitive vector.
    LatticeExtend {
        /// Comma separated integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        vector: Vec<i64>,
    },
    /// Exceptional polynomials for a form.
    ExceptionalSet {
        /// File with one homogeneous form.
        #[arg(long)]
        form: PathBuf,
        #[arg(long, default_value = "1/4")]
        epsilon: String,
        #[arg(long, default_value = "1")]
        kappa: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Plane route with relation n1,n2.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        n2: Option<Vec<i64>>,
    },
    /// Smallest m satisfying the gcd inequalities.
    GcdParams {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value = "1")]
        kappa: String,
        #[arg(long = "l")]
        l: Option<u64>,
    },
    /// Counting table for a curve and divisors, as CSV.
    Nevanlinna {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        divisors: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        rmin: f64,
        #[arg(long)]
        rmax: f64,
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
}

#[derive(Args, Debug)]
pub struct FormsArg {
    /// One form per line, optional `vars:` header.
    #[arg(long)]
    pub forms: PathBuf,
}
