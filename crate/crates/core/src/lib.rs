//! Walk counts of graphs as moment sequences of their spectral measures,
//! and the spectral-radius bounds that follow from Hankel positivity.

pub mod bounds;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod moments;
pub mod poly;
pub mod report;
pub mod spectrum;
pub mod sweep;
pub mod verify;
pub mod walks;

pub use bounds::{AtomWeight, BoundKind, BoundName, BoundParams, BoundResult, Status};
pub use corpus::CorpusEntry;
pub use error::{Error, Result};
pub use graph::{Family, Graph};
pub use moments::IndexSet;
pub use report::Report;
pub use spectrum::SpectralSummary;
pub use sweep::{MeasureSelection, SweepConfig};
pub use walks::{MeasureKind, MomentSequence};
