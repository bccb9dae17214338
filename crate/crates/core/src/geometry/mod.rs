//! `SL(2, C)` acting on upper half-space: axes, line matrices, complex
//! distances, the standard hexagon, half-space nesting and broken geodesics.

mod halfspace;
mod hexagon;
mod line;
mod matrix;
mod path;
mod point;

pub use halfspace::{nested_halfspace_check, HalfSpace, NestingRelation, NestingReport};
pub use hexagon::{
    amplitude, axis_distance, lift_triple, standard_hexagon, AmplitudeMode, HexagonData,
};
pub use line::{
    axis, common_perpendicular, complex_distance, distance_to_line, foot_on, line_matrix, Boundary,
    ComplexDist, Line,
};
pub use matrix::{
    classify_and_half_length, eval_word, half_length_of_trace, HalfLength, Matrix2C, MatrixClass,
};
pub use path::{broken_geodesic, quasigeodesic_constants, word_quasigeodesic_constant};
pub use point::{act, displacement_of_j, hyperbolic_distance, PointH3};
