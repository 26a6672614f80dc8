use lamcount::counting::CountError;
use lamcount::radicals::RadicalError;
use lamcount::sampling::SampleError;

/// A failure with the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or a request the library rejects as meaningless.
    Usage(String),
    /// Work or attempt budgets exhausted.
    Resource(String),
    /// Numerics could not be trusted at the requested precision.
    Precision(String),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Precision(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Resource(m) | CliError::Precision(m) | CliError::Io(m) => m,
        }
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            CountError::Io(_) | CountError::Corrupt(_) | CountError::VersionMismatch { .. } => {
                CliError::Io(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<RadicalError> for CliError {
    fn from(e: RadicalError) -> Self {
        match e {
            RadicalError::PrecisionAlarm(_) | RadicalError::Inconsistent { .. } => CliError::Precision(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SampleError> for CliError {
    fn from(e: SampleError) -> Self {
        match e {
            SampleError::Count(c) => c.into(),
            SampleError::Radical(r) => r.into(),
            SampleError::Rejected(_) => CliError::Resource(e.to_string()),
            SampleError::PrecisionAlarm(_) => CliError::Precision(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
