use clap::{Args, ValueEnum};
use qsym_core::hopfimage::Method;
use qsym_core::Tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Kernel,
    Coideal,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Kernel => Method::Kernel,
            MethodArg::Coideal => Method::Coideal,
            MethodArg::Both => Method::Both,
        }
    }
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Entrywise equality tolerance.
    #[arg(long, global = true, env = "QSYM_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Relative singular-value threshold for rank decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub rank_tol: f64,
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_iter: u64,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
}

impl RunConfig {
    pub fn tolerance(&self) -> qsym_core::Result<Tolerance> {
        Tolerance::new(self.tol, self.rank_tol)
    }
}
