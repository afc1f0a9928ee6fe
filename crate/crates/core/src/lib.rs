//! Tangles for permutations: direct and perfect constructions, the perfect
//! recognizer, brute-force oracles, JSON persistence and SVG rendering.

pub mod cli;
pub mod direct;
pub mod error;
pub mod heights;
pub mod io;
pub mod marking;
pub mod matching;
pub mod oracle;
pub mod perfect;
pub mod perm;
pub mod recognize;
pub mod svg;
pub mod tangle;

pub use direct::{build_direct, build_direct_from_descent};
pub use error::{Error, Result};
pub use io::{read_tangle, write_tangle};
pub use marking::{align, is_aligned, is_balanced, BalanceMode, Mark, Marking, Rec};
pub use matching::{max_vertex_weight_matching, MatchEdge, MatchGraph, Matching};
pub use oracle::{balanced_marking_bruteforce, min_corners, random_simple_tangle};
pub use perfect::{build_perfect, build_perfect_from_marking, PerfectTangle};
pub use perm::{family_example, ElementClass, ElementMap, Permutation};
pub use recognize::{census, recognize, Census, CensusPredicate, NotPerfect, Verdict};
pub use svg::{to_svg, RenderOptions};
pub use tangle::{Direction, Tangle};
