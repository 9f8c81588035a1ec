//! Region geometry, bounds on `||S||_{p -> s}`, scans over field sizes, and
//! the experiments built on them.

pub mod bounds;
pub mod distance;
pub mod family;
pub mod region;
pub mod scan;
pub mod verify;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use bounds::{
    certified_upper_bound, homogeneous_class_ratio, homogeneous_class_ratios, lower_bound_delta,
    lower_bound_exponential, lower_bound_exponential_ratio, lower_bound_sphere_radial,
    lower_bound_subspace, radial_p1_norm_exact, RadialShells,
};
pub use distance::{distance_experiment, DistanceReport};
pub use family::Family;
pub use region::{region_contains, ExponentPair, Rational, RegionKind, RegionSpec};
pub use scan::{
    fit_growth, rows_to_csv, scan, scan_reports, GrowthFit, NormReport, ScanConfig, ScanRow,
};
pub use verify::{run_verify, Check, Suite, VerifyConfig, VerifyReport};

/// The generator for `seed`, on an independent `stream`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}
