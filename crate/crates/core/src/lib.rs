//! Exact construction of Weng zeta functions `ξ^{G/P}(s)` attached to a
//! simple root system and one of its maximal parabolics, together with
//! machine checks of their functional equations.
//!
//! The crate is layered bottom-up:
//!
//! * [`rootsys`]: Cartan data, roots, coroots, weights, centers `c_p`.
//! * [`weyl`]: Weyl group enumeration, longest elements, inversion sets,
//!   admissibility and the involution `w ↦ w₀ w w_p`, diagram automorphisms.
//! * [`symexpr`]: canonical sums of terms built from exponentials, reciprocal
//!   linear factors and products of completed zeta values `ξ(k s + h)`.
//! * [`zeta`]: the period `ω^{G/P}`, count tables, the `F`/`D` factors, `Z_p`,
//!   the Weng zeta function itself, and the exact verification suites.
//! * [`numeric`]: floating-point `ζ`, `Γ`, `ξ`, expression evaluation, an
//!   iterated-residue oracle and a critical-line zero scan.
//!
//! Simple-root and parabolic indices are 0-based throughout the library;
//! the command-line front end uses 1-based indices.

pub mod error;
pub mod numeric;
pub mod rootsys;
pub mod symexpr;
pub mod weyl;
pub mod zeta;

pub use error::{Error, Result};
pub use rootsys::{all_types, build_root_system, Kind, Root, RootSystemData, Weight};
pub use weyl::{DiagramAutomorphism, GroupCap, WeylElement, WeylGroup};
