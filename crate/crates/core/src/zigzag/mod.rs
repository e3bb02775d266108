//! Decomposition of bounded double complexes into squares and zigzags.

mod decompose;
mod random;
mod shape;

pub use decompose::{decompose, Decomposition};
pub use random::{random_page1_complex, random_shapes, random_zigzag_sum, shuffle_basis};
pub use shape::{model, page1_by_shape, parse_report, report_lines, Indecomposable};
