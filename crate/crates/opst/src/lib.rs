//! Order-preserving indexing for sequences of totally ordered values.
//!
//! Two sequences are *order-isomorphic* when the comparison outcome of every
//! pair of positions agrees: `x[i] <= x[j]` exactly when `y[i] <= y[j]`.
//! This crate indexes a text sequence so that all factors order-isomorphic to
//! a pattern can be reported without ever comparing raw values across
//! sequences. The machinery:
//!
//! * [`code`]: a self-delimiting per-position encoding (`(lt, eq)` pairs of
//!   predecessor counts) that characterizes order-isomorphism and is stable
//!   under appending, plus the canonical [`shape`] form.
//! * [`oracle::CharacterOracle`]: a 2-D range-counting structure that returns
//!   the encoding of any position *relative to any suffix* in logarithmic
//!   time, without materializing the quadratically many suffix encodings.
//! * [`tree::OpSuffixTree`]: a compacted trie over the (terminated) suffix
//!   encodings, built in near-linear oracle calls, answering factor queries
//!   and constant-time longest-common-prefix queries between suffixes.
//! * [`squares`]: discovery of order-preserving squares — factors `uv` with
//!   `u` order-isomorphic to `v` — in output-sensitive time.
//!
//! Positions in the public API are 1-based, matching the usual conventions
//! for suffix numbering; slices underneath are 0-based.
//!
//! ```
//! use opst::{is_order_isomorphic, tree::OpSuffixTree};
//!
//! let text = [6i64, 8, 2, 0, 7, 9, 3, 1, 4, 5];
//! assert!(is_order_isomorphic(&[1i64, 2, 3], &[0i64, 7, 9]));
//! let t = OpSuffixTree::build(&text);
//! assert_eq!(t.occurrences(&[1i64, 2, 3]), vec![4, 8]);
//! ```
//!
//! The [`refkit`] module holds deliberately naive reference implementations
//! of every operation; the test suite validates the indexed versions against
//! them.

use std::fmt::Debug;

pub mod code;
mod index;
mod lca;
pub mod oracle;
pub mod refkit;
pub mod squares;
pub mod tree;

/// Scalar values a sequence may range over: totally ordered and cheap to
/// copy. Blanket-implemented; `i64`, `u8`, `char`, … all qualify. Floats do
/// not (`f64` lacks a total order), which is deliberate: order-isomorphism
/// under NaN has no sensible meaning.
pub trait Value: Copy + Ord + Debug {}

impl<T: Copy + Ord + Debug> Value for T {}

/// The concrete sequence type used by the CLI and the text file formats.
pub type Sequence = Vec<i64>;

pub use code::{code, is_order_isomorphic, phi, shape, shape_from_code};
pub use code::{CharCode, CodeError, CodeSeq, Shape};
pub use index::IndexError;
pub use oracle::CharacterOracle;
pub use squares::{
    all_op_squares, is_op_square, non_extendible_squares, square_length_index, OpSquare,
    SquareLengthIndex,
};
pub use tree::{suf_codes, validate_quasi_suffix, Locus, NodeId, OpSuffixTree, Symbol};
