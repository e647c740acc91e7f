use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "mirrorkit", version, about = "Mirror-reflective algebras of quivers with relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Homological bound (resolution length, search depth).
    #[arg(long, global = true, default_value_t = 20)]
    pub cap: usize,
    /// Degree bound for rewriting completion.
    #[arg(long = "degree-cap", global = true, default_value_t = 30)]
    pub degree_cap: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Dimension budget for the tower.
    #[arg(long, global = true, default_value_t = 400)]
    pub budget: usize,
    /// Field override: `Q` or `F<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Random trials for isomorphism and symmetry searches.
    #[arg(long, global = true, default_value_t = 8)]
    pub trials: usize,
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Exit with status 3 when any verdict is unknown.
    #[arg(long, global = true)]
    pub strict: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            cap: 20,
            degree_cap: 30,
            seed: 0,
            budget: 400,
            field: None,
            trials: 8,
            json: false,
            pretty: false,
            strict: false,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct IdemArg {
    /// `NAME` of an idempotent in the file, or `NAME=V+V` to define one.
    #[arg(long)]
    pub idem: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Parse a `.quiver` file and echo it in normalized form.
    Parse { file: PathBuf },
    /// Normal-form basis, dimension and Cartan matrix.
    Basis { file: PathBuf },
    /// The mirror-reflective algebra R(A, e, λ) and its property suite.
    Mirror {
        file: PathBuf,
        #[command(flatten)]
        idem: IdemArg,
        /// Level λ = c·e for a nonzero scalar c.
        #[arg(long, allow_hyphen_values = true)]
        scale: Option<String>,
    },
    /// The reduced mirror-reflective algebra S(A, e).
    ReducedMirror {
        file: PathBuf,
        #[command(flatten)]
        idem: IdemArg,
    },
    /// The quiver with relations of the mirror at the vertex set V₀.
    MirrorQuiver {
        file: PathBuf,
        /// Comma-separated vertex names.
        #[arg(long)]
        v0: String,
        /// Certify the isomorphism with the direct construction.
        #[arg(long = "certify-theta")]
        certify_theta: bool,
    },
    /// Symmetric algebra test with a symmetrizing form.
    CheckSymmetric { file: PathBuf },
    /// Gendo-symmetric test.
    CheckGendo { file: PathBuf },
    /// Dominant, global and injective dimensions.
    Domdim { file: PathBuf },
    /// Dimensions of Ext between simple modules.
    Ext {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Dimensions of Tor over eAe of Ae and eA.
    Tor {
        file: PathBuf,
        #[command(flatten)]
        idem: IdemArg,
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Strong idempotent test for AeA.
    StrongIdem {
        file: PathBuf,
        #[command(flatten)]
        idem: IdemArg,
    },
    /// Stratified dimension and ratio.
    StratDim {
        file: PathBuf,
        /// Largest number of simples searched exhaustively.
        #[arg(long, default_value_t = 12)]
        limit: usize,
    },
    /// The tower Aₙ, Rₙ, Bₙ, Sₙ with the level reports.
    Tower {
        file: PathBuf,
        #[command(flatten)]
        idem: IdemArg,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        /// Largest number of simples for stratified dimensions in reports.
        #[arg(long = "sd-limit", default_value_t = 4)]
        sd_limit: usize,
    },
    /// Every applicable check on one input.
    VerifyPaperSuite {
        file: PathBuf,
        #[command(flatten)]
        idem: IdemArg,
    },
}

impl Command {
    pub fn file(&self) -> &PathBuf {
        match self {
            Command::Parse { file }
            | Command::Basis { file }
            | Command::Mirror { file, .. }
            | Command::ReducedMirror { file, .. }
            | Command::MirrorQuiver { file, .. }
            | Command::CheckSymmetric { file }
            | Command::CheckGendo { file }
            | Command::Domdim { file }
            | Command::Ext { file, .. }
            | Command::Tor { file, .. }
            | Command::StrongIdem { file, .. }
            | Command::StratDim { file, .. }
            | Command::Tower { file, .. }
            | Command::VerifyPaperSuite { file, .. } => file,
        }
    }
}
