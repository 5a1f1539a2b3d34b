pub mod cube;
pub mod grid;
pub mod invariants;
pub mod moves;
pub mod obstruction;
pub mod render;
pub mod search;
