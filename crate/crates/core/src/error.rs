use std::path::PathBuf;

/// Crate-wide error type. Variants map onto the failure classes surfaced by
/// the CLI: bad arguments, bad data, kernel failures and incomplete merges.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter is out of range or inconsistent with the input shape.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input is structurally fine but carries no usable signal for the
    /// requested operation (constant series, empty event sets, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Windowing cannot produce a single window.
    #[error("window width {width} exceeds series length {len}: no windows can be formed")]
    EmptyWindowSet { width: usize, len: usize },

    /// Malformed file contents (CSV shape, unparsable numbers, bad headers).
    #[error("bad data{}: {msg}", path_suffix(.path))]
    Data { path: Option<PathBuf>, msg: String },

    #[error("i/o error on {}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A distance kernel failed on one pair of a matrix computation.
    /// Indices are 1-based, matching the part file format.
    #[error("distance kernel failed on pair ({i}, {j}): {source}")]
    KernelFailure {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    /// Asymmetric kernels cannot fill a symmetric distance matrix.
    #[error("asymmetric kernel rejected: distance matrices require d(x, y) = d(y, x)")]
    AsymmetricKernel,

    /// Merging distance parts found uncovered pairs. Pairs are 1-based (i, j)
    /// with i < j, in canonical order.
    #[error("incomplete merge: {} missing pair(s): {}", .missing.len(), format_pair_ranges(.missing))]
    IncompleteMerge { missing: Vec<(usize, usize)> },

    /// Two parts disagree about the same pair.
    #[error("merge conflict on pair ({i}, {j}): {a} vs {b}")]
    MergeConflict { i: usize, j: usize, a: f64, b: f64 },

    /// A failure inside one layer of a temporal-network computation.
    /// The layer index is 1-based.
    #[error("window layer {layer}: {source}")]
    InLayer {
        layer: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::DegenerateInput(msg.into())
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data { path: None, msg: msg.into() }
    }

    pub fn data_in(path: impl Into<PathBuf>, msg: impl Into<String>) -> Self {
        Error::Data { path: Some(path.into()), msg: msg.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

fn path_suffix(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!(" in {}", p.display()),
        None => String::new(),
    }
}

/// Compress a sorted pair list into `(i,j)..(i,j)` ranges for display.
/// Consecutive means adjacent in canonical upper-triangle order, which we
/// approximate here by grouping pairs sharing the row `i`.
fn format_pair_ranges(missing: &[(usize, usize)]) -> String {
    const MAX_GROUPS: usize = 8;
    let mut groups: Vec<String> = Vec::new();
    let mut idx = 0;
    while idx < missing.len() && groups.len() < MAX_GROUPS {
        let start = missing[idx];
        let mut end = start;
        while idx + 1 < missing.len() {
            let next = missing[idx + 1];
            if next.0 == end.0 && next.1 == end.1 + 1 {
                end = next;
                idx += 1;
            } else {
                break;
            }
        }
        if start == end {
            groups.push(format!("({}, {})", start.0, start.1));
        } else {
            groups.push(format!("({}, {})..({}, {})", start.0, start.1, end.0, end.1));
        }
        idx += 1;
    }
    if idx < missing.len() {
        groups.push("...".to_string());
    }
    groups.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn incomplete_merge_message_compresses_runs() {
        let err = Error::IncompleteMerge {
            missing: vec![(1, 2), (1, 3), (1, 4), (3, 5)],
        };
        let msg = err.to_string();
        assert!(msg.contains("4 missing pair(s)"), "{msg}");
        assert!(msg.contains("(1, 2)..(1, 4)"), "{msg}");
        assert!(msg.contains("(3, 5)"), "{msg}");
    }

    #[test]
    fn kernel_failure_reports_pair_and_cause() {
        let err = Error::KernelFailure {
            i: 3,
            j: 7,
            source: Box::new(Error::degenerate("constant series")),
        };
        let msg = err.to_string();
        assert!(msg.contains("(3, 7)"), "{msg}");
    }
}
