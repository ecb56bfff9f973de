use thiserror::Error;

pub type Result<T> = std::result::Result<T, LabError>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("field has {got} values but the grid has {expected} nodes")]
    ValueCount { expected: usize, got: usize },

    #[error("non-finite value at node ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    #[error("grids do not match")]
    GridMismatch,

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    #[error("region contains no grid nodes")]
    RegionEmpty,

    #[error("derivative order {0} is not supported (at most 4)")]
    UnsupportedOrder(usize),

    #[error("region reaches into the {margin}-node invalid band at the grid edge")]
    BoundaryMargin { margin: usize },

    #[error("singular weight at node ({i}, {j}) = ({x}, {y})")]
    SingularWeight { i: usize, j: usize, x: f64, y: f64 },

    #[error("ramp width {width} is below 4h = {min}")]
    UnderResolvedRamp { width: f64, min: f64 },

    #[error("bump support does not fit inside the grid")]
    BumpOutsideGrid,

    #[error("malformed data: {0}")]
    Format(String),

    #[error("invalid solution spec: {0}")]
    InvalidSpec(String),

    #[error("solver did not converge after {iterations} iterations (last residual {last})")]
    SolveFailure {
        iterations: usize,
        last: f64,
        history: Vec<f64>,
    },

    #[error("query point ({x}, {y}) lies outside the source domain")]
    DomainExceeded { x: f64, y: f64 },

    #[error("degenerate field: {0}")]
    DegenerateField(String),

    #[error("parameter regime violated: {0}")]
    ParameterRegime(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("support violation: {0}")]
    Support(String),

    #[error("boundary trace under-resolved: {0}")]
    BoundaryResolution(String),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("unknown check id `{id}`; valid ids: {}", valid.join(", "))]
    UnknownCheck { id: String, valid: Vec<String> },

    #[error("invalid config:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error("corpus unavailable: {0}")]
    Corpus(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
