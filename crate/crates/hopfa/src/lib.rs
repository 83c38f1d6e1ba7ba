//! Exact computation for pointed Hopf algebras of Cartan type A_n over
//! abelian groups.
//!
//! Everything is computed over the cyclotomic field Q(zeta_L) with exact
//! rational coefficients; no floating point is used anywhere. The crate
//! provides:
//!
//! * [`cyclo`]: arithmetic in Q(zeta_L), with a printable/parsable scalar
//!   text form.
//! * [`group`]: finite abelian groups given by cyclic factor lists, their
//!   characters, group algebras and tensor squares, homomorphism
//!   enumeration.
//! * [`datum`]: the linking data (group, elements g_i, characters chi_i)
//!   of type A_n, validation of the braiding constraints, interval
//!   products, and the diagram flip.
//! * [`params`]: root parameter families mu, the group algebra elements
//!   u_ij(mu), normalization, the diagram-flip action on families, and
//!   the PBW coefficients for N-th powers of reverse root vectors.
//! * [`braided`]: the braided tensor algebra on generators x_1..x_n, a
//!   degree-bounded rewrite engine for its defining relations, skew group
//!   algebra projections, and the machine checks of the power identities.
//! * [`iso`]: the decision procedure for Hopf isomorphisms between the
//!   liftings determined by two (datum, family) pairs, automorphism
//!   group structure, and isomorphism classes of families.
//! * [`lattice`]: exact integer linear algebra (Smith normal form,
//!   kernels, modular solves) used by the other modules.
//! * [`wire`]: JSON wire formats for groups, data, families and reports.
//! * [`sampling`]: seeded random generation of valid data and families,
//!   used by the verification suites.

pub mod braided;
pub mod cyclo;
pub mod datum;
pub mod group;
pub mod iso;
pub mod lattice;
pub mod params;
pub mod sampling;
pub mod wire;

/// Crate-wide error type.
///
/// Arithmetic and validation failures are reported through this enum so
/// that callers (in particular the CLI) can distinguish bad input,
/// verified-false results, and exhausted budgets.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A root of unity of this order does not live in Q(zeta_conductor).
    #[error("order {order} does not divide the conductor {conductor}")]
    ConductorMismatch { order: u64, conductor: u64 },

    /// Division by the zero scalar.
    #[error("division by zero")]
    DivisionByZero,

    /// A scalar text form failed to parse.
    #[error("cannot parse scalar {input:?}: {reason}")]
    ScalarParse { input: String, reason: String },

    /// An element or character does not match the shape of its group.
    #[error("structural mismatch: {0}")]
    Structural(String),

    /// A datum failed validation; the message names the offending entry.
    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    /// The braiding parameter has even order; only odd orders > 1 are in scope.
    #[error("braiding order {order} is even; only odd orders > 1 are supported")]
    EvenOrder { order: u64 },

    /// A parameter family violates one of the root vector conditions.
    #[error("family violates ({condition}) at root ({i},{j})")]
    ConditionViolation {
        condition: &'static str,
        i: usize,
        j: usize,
    },

    /// A computation exceeded its configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// An internal invariant failed; indicates a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    /// Malformed input outside the more specific categories above.
    #[error("bad input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
