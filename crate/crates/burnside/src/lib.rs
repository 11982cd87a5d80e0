//! Burnside rings of finite groups through their tables of marks.
//!
//! The prime spectrum of the Burnside ring A(G) of a finite group G is a
//! finite gluing of copies of Spec Z, one per conjugacy class of subgroups,
//! identified along closed points. This crate computes the resulting
//! component structure: for each connected component of the spectrum a
//! non-negative rank, collected into the multiset invariant `L`, together
//! with the partition of subgroup classes into components and the Euler
//! characteristic of the gluing graph.
//!
//! The pipeline runs in stages, each usable on its own:
//!
//! 1. [`perm`] and [`group`]: concrete permutation groups with full
//!    multiplication tables.
//! 2. [`lattice`]: subgroup enumeration and conjugacy classes of subgroups.
//! 3. [`marks`]: the table of marks and, for each prime p, the partition of
//!    classes induced by congruence of mark columns mod p.
//! 4. [`galois`]: the gluing walk that folds the partitions into `L`, with a
//!    full step trace and independent closed-form cross-checks.
//! 5. [`formats`]: group spec strings, table of marks serialization, result
//!    output.
//! 6. [`catalog`]: the built-in collection of groups used for self tests.
//!
//! ```
//! use burnside::formats::parse_group_spec;
//! use burnside::group::{make_group, OrderCap};
//! use burnside::pipeline::analyze_group;
//!
//! let spec = parse_group_spec("A5")?;
//! let group = make_group(&spec, OrderCap::default())?;
//! let analysis = analyze_group("A5", group)?;
//! assert_eq!(analysis.invariant.ranks(), vec![0, 0]);
//! assert_eq!(analysis.invariant.components().len(), 2);
//! # Ok::<(), burnside::Error>(())
//! ```

pub mod catalog;
pub mod error;
pub mod formats;
pub mod galois;
pub mod group;
pub mod lattice;
pub mod marks;
pub mod perm;
pub mod pipeline;

pub use error::{Error, Result};
