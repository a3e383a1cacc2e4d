//! Groupoid model of the little bundles operad for finite groups.
//!
//! * [`groups`]: finite groups as multiplication tables.
//! * [`perm`] and [`braids`]: permutations, braid words, Garside normal
//!   form and cabling.
//! * [`hurwitz`]: Hurwitz actions, component objects, orbit counts and the
//!   Grothendieck construction.
//! * [`trees`]: parenthesized G-braid trees, their normal forms, generator
//!   morphisms and the relation verifier.
//! * [`operad`]: colored operad interface and brute-force axiom checks.
//! * [`algebra`]: evaluation in finite braided G-crossed data and the
//!   coherence checker/solver.
//! * [`cli`]: batch commands producing JSON/CSV reports.

pub mod algebra;
pub mod braids;
pub mod cli;
pub mod groups;
pub mod hurwitz;
pub mod operad;
pub mod perm;
pub mod trees;

pub use braids::{BraidError, BraidWord, GarsideForm};
pub use groups::{make_group, Elem, FiniteGroup, GroupError, GroupSpec};
pub use perm::Permutation;
