//! Error type and exit-code policy for the command-line tool.
//!
//! Every failure path in the binary funnels into [`CliError`], which maps
//! onto the documented process exit codes:
//!
//! * `0` — the command ran and every assertion it checked held;
//! * `1` — the command ran but an invariant or prediction failed (this is
//!   *not* a [`CliError`]; commands return the exit code directly);
//! * `2` — the command could not run: bad flags, malformed config or family
//!   files, unknown gallery cases, I/O problems, or hypothesis violations
//!   reported by the library.

use std::path::Path;

/// Convenience alias used throughout the binary.
pub type Result<T> = std::result::Result<T, CliError>;

/// Everything that can prevent a command from producing a report.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// A config file or flag value could not be parsed or validated.
    /// The message carries the file/field context produced by the parser,
    /// including line and column for TOML syntax errors.
    #[error("config error: {0}")]
    ConfigParse(String),

    /// The requested gallery case does not exist.  The catalog names are
    /// listed by `semiframe gallery list`.
    #[error("unknown gallery case '{0}' (run `semiframe gallery list`)")]
    UnknownGalleryCase(String),

    /// A family file was syntactically valid JSON but described an
    /// inconsistent family (mismatched lengths, wrong coordinate counts,
    /// non-finite entries, ...).
    #[error("family file error: {0}")]
    FamilyFile(String),

    /// Reading or writing a file failed.
    #[error("i/o error on '{path}': {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// The numerical library rejected the requested computation, e.g. a
    /// hypothesis violation in a gallery constructor.
    #[error(transparent)]
    Lib(#[from] semiframe::error::Error),
}

impl CliError {
    /// Attach a path to a raw I/O error.
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Process exit code for this error.  All of these mean "the command
    /// could not run", so they share the config-error code.
    pub fn exit_code(&self) -> u8 {
        2
    }
}
