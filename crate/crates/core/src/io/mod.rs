//! Text format for bases, move logs and factorization words, plus SVG
//! rendering of disk base diagrams.

mod format;
mod svg;

pub use crate::error::{ParseError, RenderError};
pub use format::{parse, serialize, serialize_moves, serialize_word, Document};
pub use svg::render_svg;
