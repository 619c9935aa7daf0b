use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("label array has length {found}, expected {expected}")]
    LabelLength { expected: usize, found: usize },
    #[error("edge label given for non-edge ({0}, {1})")]
    LabelOnNonEdge(usize, usize),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Graph6 { line: usize, message: String },
    #[error("line {line}: graph has {n} vertices, above the cap of {cap}")]
    TooLarge { line: usize, n: usize, cap: usize },
    #[error("invalid JSON graph: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid JSON graph: {0}")]
    Schema(String),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("no graphs found in input")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error("pattern has no vertices")]
    EmptyPattern,
    #[error("pattern is disconnected; set allow_disconnected to match it")]
    DisconnectedPattern,
    #[error("pattern has {n} vertices, above the automorphism cap of {cap}")]
    PatternTooLarge { n: usize, cap: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown substructure family '{0}'")]
    UnknownFamily(String),
    #[error("size {k} out of range for family {family} (allowed {min}..={max})")]
    SizeOutOfRange {
        family: String,
        k: usize,
        min: usize,
        max: usize,
    },
    #[error("patterns {0} and {1} are isomorphic")]
    DuplicatePattern(usize, usize),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FeatureError {
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(
        "pattern {pattern} has isolated vertices; vertex features cannot be rebuilt from edges"
    )]
    IsolatedPatternVertex { pattern: usize },
    #[error("deck check needs 4 <= n <= 8, got n = {0}")]
    DeckSize(usize),
    #[error("value {value} in dimension {dim} is missing from the frozen vocabulary")]
    UnknownValue { dim: usize, value: u64 },
    #[error("feature width {found} does not match vocabulary width {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("dataset is empty")]
    EmptyDataset,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WlError {
    #[error("k-FWL supports k in {{2, 3}}, got {0}")]
    UnsupportedK(usize),
    #[error("{k}-FWL on {n} vertices exceeds the cap of {cap}")]
    TooLarge { k: usize, n: usize, cap: usize },
    #[error("initial colouring has length {found}, expected {expected}")]
    InitialLength { expected: usize, found: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EncoderError {
    #[error("invalid encoder configuration: {0}")]
    Config(String),
    #[error("variant {0} needs structural features")]
    MissingFeatures(&'static str),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error("non-finite value in layer {layer}")]
    NonFinite { layer: usize },
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("need at least 3 repetitions, got {0}")]
    TooFewReps(usize),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Encoder(#[from] EncoderError),
    #[error(transparent)]
    Wl(#[from] WlError),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error("no graph6 files found in {0}")]
    NoData(String),
}
