use std::io;
use std::path::PathBuf;

use tangram_core::catalog::CatalogError;
use tangram_core::render::RenderError;
use tangram_core::strips::StripError;
use tangram_core::SolveError;
use thiserror::Error;

use crate::document::DocumentError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown shape `{0}` (expected 1-20, J07, or a region key)")]
    UnknownShape(String),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed")]
    Mismatch,
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("shape numbering: {0}")]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Strip(#[from] StripError),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// 0 pass, 1 verification mismatch, 2 usage error, 3 internal or data error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch => 1,
            CliError::UnknownShape(_) | CliError::Usage(_) => 2,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}
