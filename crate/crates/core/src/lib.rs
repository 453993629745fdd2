//! Wirtinger numbers of knot, link and spatial-graph diagrams.
//!
//! The Wirtinger number of a diagram counts the fewest seed strands whose
//! coloring moves color every strand; it is an upper bound for the bridge
//! index of the underlying graph, and a complete coloring can be read back as
//! a bridge position. Quandle coloring counts give lower bounds, so the two
//! together often pin the bridge index exactly.
//!
//! ```
//! use wirtgraph::{gauss::parse_link_gauss, wirt, Diagram};
//!
//! let code = parse_link_gauss("[[1,-2,3,-1,2,-3]]").unwrap();
//! let d = Diagram::from_link(&code).unwrap();
//! let r = wirt::wirtinger_number(&d, &Default::default()).unwrap();
//! assert_eq!(r.omega, 2);
//! ```

pub mod diagram;
pub mod error;
pub mod exec;
pub mod gauss;
pub mod generate;
pub mod quandle;
pub mod wirt;

pub use diagram::{build_diagram, Crossing, Diagram, Strand, StrandId, StrandKind};
pub use error::{DiagramError, GaussError, GenerateError, QuandleError, WirtError};
pub use exec::Exec;
pub use gauss::{GaussCode, LinkGaussCode, SpatialGaussCode};
pub use quandle::{count_colorings, ColoringCount, FiniteQuandle};
pub use wirt::{wirtinger_number, SearchOptions, SeedItem, WirtingerResult};
