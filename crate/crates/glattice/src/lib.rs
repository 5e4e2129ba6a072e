//! G-lattice algebra and Tate cohomology for finite groups, with
//! coflasque resolutions and a set of built-in verification suites around
//! a specific rank-4 lattice for the Klein four group.

pub mod cohomology;
pub mod fileformat;
pub mod gmodules;
pub mod groups;
pub mod ideles;
pub mod klein;
pub mod lattices;
pub mod localfield;
pub mod matrix;
pub mod report;
pub mod resolutions;
