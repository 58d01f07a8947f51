//! Area-preserving maps of the unit disk, their Calabi invariant, the
//! shrinking operator, and pure braids traced by three-point configurations.

mod extract;
mod hamiltonian;
mod map;
mod mapfile;
mod trace;
mod twist;

pub use extract::{braid_of, pure_braid};
pub use hamiltonian::{Builtin, HamiltonianFlow, DEFAULT_FLOW_STEPS};
pub use map::{make_kercal_map, DiskMap, Piece};
pub use mapfile::parse_map;
pub use trace::{trace_loop, Config3, TraceOptions, TrajectoryBundle, BASEPOINT, COLLISION_TOL};
pub use twist::{norm, rotate_about, Point, RadialTwist};
