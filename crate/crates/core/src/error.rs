use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised anywhere in the library. Voter and candidate indices in
/// messages are 1-based, like the file formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("voter {voter} has an empty ballot")]
    EmptyBallot { voter: usize },
    #[error("committee size k must be positive")]
    KZero,
    #[error("committee size k = {k} exceeds the number of candidates m = {m}")]
    KTooLarge { k: usize, m: usize },
    #[error("voter {voter} approves candidate {candidate}, outside 1..={m}")]
    CandidateOutOfRange {
        voter: usize,
        candidate: usize,
        m: usize,
    },
    #[error("ballot count {ballots} does not match n = {n}")]
    BallotCountMismatch { n: usize, ballots: usize },
    #[error("instance has no voters")]
    NoVoters,
    #[error("voter {voter} out of range 1..={n}")]
    VoterOutOfRange { voter: usize, n: usize },
    #[error("invalid fractional committee: {0}")]
    InvalidFractional(String),
    #[error("invalid randomized committee: {0}")]
    InvalidLottery(String),
    #[error("invalid committee: {0}")]
    InvalidCommittee(String),
    #[error("invalid MES configuration: {0}")]
    InvalidConfig(String),
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("internal error: fractional completion infeasible: {0}")]
    InfeasibleCompletion(String),
    #[error("internal error: negative residual budget {0}")]
    NegativeResidual(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors caused by malformed user input rather than by limits or bugs.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::EmptyBallot { .. }
                | Error::KZero
                | Error::KTooLarge { .. }
                | Error::CandidateOutOfRange { .. }
                | Error::BallotCountMismatch { .. }
                | Error::NoVoters
                | Error::VoterOutOfRange { .. }
                | Error::InvalidFractional(_)
                | Error::InvalidLottery(_)
                | Error::InvalidCommittee(_)
                | Error::InvalidConfig(_)
                | Error::BadParams(_)
                | Error::Parse(_)
        )
    }
}
