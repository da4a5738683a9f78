//! Chromatic zeta functions of graphs, computed three ways that must
//! agree:
//!
//! * **exactly** — the chromatic polynomial `P_H` by deletion–contraction
//!   over big integers, plus brute-force coloring, residue-tuple, and
//!   finite-box enumeration oracles;
//! * **analytically** — the Euler product
//!   `zeta_H^-1(s) = prod_p P_H(p^s)/p^(ks)` as a certified truncation
//!   with rigorous lower/upper bounds, alongside the closed forms for
//!   cycles, cliques, and the classical `zeta^-1(s)`;
//! * **empirically** — reproducible, worker-deterministic Monte Carlo
//!   estimates of the probability that random lattice points in `[1, n]^s`
//!   are mutually visible along the edges of `H`.
//!
//! Module map: [`graph`] holds the graph type and families, [`chromatic`]
//! the exact polynomial engine and counting oracles, [`euler`] the
//! certified products, [`lattice`] the visibility predicates and exact
//! enumeration, [`mc`] the seeded parallel estimators, and [`selftest`]
//! the embedded invariant suite.

// big-integer and rational types appear in the public API
pub use num_bigint;
pub use num_rational;

pub mod chromatic;
pub mod error;
pub mod euler;
pub mod graph;
pub mod lattice;
pub mod mc;
pub mod poly;
pub mod selftest;

pub use chromatic::{
    chromatic_polynomial, count_colorings, eval_at_prime_power, DEFAULT_DC_NODE_BUDGET,
    DEFAULT_ENUM_BUDGET,
};
pub use error::{Error, Result};
pub use euler::{
    conditional_limit, conditional_limit_with_caps, cycle_limit_closed_form,
    cycle_limit_closed_form_with_cap, euler_factor, primes_up_to, rearick_ratio,
    rearick_ratio_with_cap, riemann_zeta_inverse, riemann_zeta_inverse_with_cap, zeta_h_inverse,
    zeta_h_inverse_with_caps, CertifiedProduct, DEFAULT_PRIME_CAP,
};
pub use graph::{Graph, DEFAULT_MAX_VERTICES};
pub use lattice::{
    count_hp_visible_residue_tuples, exact_probability, is_h_visible, is_hp_visible, p_colour,
    segment_interior_points, visible, LatticeConfig, LatticePoint, PColour,
};
pub use mc::{
    convergence_sweep, estimate_conditional, estimate_conditional_with_confidence,
    estimate_probability, estimate_probability_with_confidence, sample_config,
    ConditionalEstimate, Estimate, SweepRow,
};
pub use poly::IntPolynomial;
