//! Gaussian-area toolkit for rotationally symmetric surfaces.
//!
//! The crate computes the Gaussian area functional F_{y,τ} over a catalogue
//! of surface-of-revolution primitives, certifies the global area bounds the
//! sweepout construction relies on, assembles and certifies the inversion
//! sweepout families themselves, and analyzes the radial stability equation
//! on the plane through its Kummer/Tricomi solutions.

pub mod bounds;
pub mod jacobi;
pub mod measure;
pub mod optimize;
pub mod quad;
pub mod report;
pub mod special;
pub mod surfaces;
pub mod sweepout;

pub use measure::{AreaResult, FunctionalCenter, Method};
pub use quad::QuadratureSpec;
pub use special::FnValue;
pub use surfaces::{CompositeSurface, Piece, RadialProfile};
