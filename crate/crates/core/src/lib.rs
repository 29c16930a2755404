//! Exact computation on finite ideal topological spaces and the discrete
//! dynamical notions built on them.
//!
//! The crate has three layers:
//!
//! * **Spaces** — [`topology`] (ground sets, bit-vector subsets, validated
//!   topologies, self-maps with cached iterate structure), [`genopen`]
//!   (semi/pre/b/beta open families), [`ideal`] (power-set ideals, the local
//!   function, the star topology), and [`density`] (the dense / ideal-dense /
//!   star-dense trichotomy).
//! * **Dynamics** — [`dynamics`] decides every transitivity variant and
//!   non-wandering notion over those families, exactly: existentials over
//!   positive iterates reduce to the map's finite iterate horizon.
//! * **Verification** — [`falsify`] enumerates every model up to five
//!   points, mirrors the key operators with definition-literal oracles for
//!   differential testing, and runs a registry of theorem targets over the
//!   whole model space, reporting violations with minimal witnesses.
//!   [`corpus`] reproduces the worked finite examples from the literature,
//!   with known erratic printed values carried as registered discrepancies.
//!
//! Everything is deterministic: families are kept in canonical (numeric
//! bit-value) order, witnesses are the first failures in that order, and
//! parallel suite runs merge by canonical instance index.

pub mod corpus;
pub mod density;
pub mod dynamics;
pub mod falsify;
pub mod genopen;
pub mod ideal;
pub mod model;
pub mod topology;

pub use density::{density_status, DensityStatus, ScanVerdict};
pub use dynamics::{
    check_transitive, forward_union, is_invariant, nonwandering_set, orbit, transitive_points,
    Direction, DynError, DynamicalSystem, OrbitDensity, PairWitness, TransitivityKind, Verdict,
};
pub use genopen::{k_closure, k_opens, OpenKind};
pub use ideal::{
    classify, cl_star, i_opens, local_function, psi, pullback, pushforward, star_operators,
    star_topology, Ideal, IdealClassification,
};
pub use model::{parse_subset, Model, ParseError};
pub use topology::{
    GroundSet, MapVerdict, SelfMap, SetFamily, Subset, Topology, TopologyError, MAX_POINTS,
};
