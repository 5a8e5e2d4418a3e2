//! Exact Hochschild cohomology of bound quiver algebras.

pub mod checks;
pub mod dsl;
pub mod error;
pub mod families;
pub mod field;
pub mod linalg;
pub mod presentation;
pub mod quiver;
pub mod report;
pub mod rewrite;
pub mod hochschild;
