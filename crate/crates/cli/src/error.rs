use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Library(#[from] nbtrace::Error),

    #[error("cannot write output: {0}")]
    Output(String),
}
