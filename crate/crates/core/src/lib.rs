//! Boundary slopes of diagonal surfaces in 2-bridge knot and link exteriors.
//!
//! A 2-bridge link is named by a reduced fraction `p/q` with `0 < p < q`.
//! Its diagonal essential surfaces correspond to minimal edge paths from
//! `1/0` to `p/q` in the Farey diagram, and each path's boundary slope is
//! determined by its turning numbers. All arithmetic is exact.
//!
//! ```
//! use slope_atlas::{slope_report, Fraction, DEFAULT_PATH_CAP};
//!
//! let figure_eight: Fraction = "2/5".parse().unwrap();
//! let report = slope_report(&figure_eight, DEFAULT_PATH_CAP).unwrap();
//! assert_eq!(report.slope_set(), vec![-4, 0, 4]);
//! assert_eq!(report.diameter, 2 * report.crossing_number);
//! ```

pub mod chain;
pub mod checkerboard;
pub mod error;
pub mod fraction;
pub mod path;
pub mod render;
pub mod slopes;
pub mod survey;
pub mod verify;

pub use chain::{edge_kind, lower_minimal_path, upper_minimal_path, Edge, EdgeKind, Quad, QuadChain, Side};
pub use checkerboard::{
    checkerboard_slopes, four_plat_diagram, is_diagonal, pretzel_diagram, slope_sum_identity, CheckerboardSlopes,
    Crossing, LinkDiagram,
};
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use path::{
    alternating_turning_path, count_minimal_paths, enumerate_minimal_paths, even_path_knot, even_paths_link, EdgePath,
    EvenPaths, DEFAULT_PATH_CAP,
};
pub use render::{render_svg, PathSelection};
pub use slopes::{
    crossing_number, epsilon, linking_number, sigma0, sigma1, slope_of_path, slope_report, SlopeEngine, SlopeReport,
};
pub use survey::{survey, SurveyRow};
pub use verify::{verify, Suite, VerifyOptions, VerifyReport};
