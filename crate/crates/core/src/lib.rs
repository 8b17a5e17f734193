pub mod eigen;
pub mod field;
pub mod graph;
pub mod io;
pub mod morphology;
pub mod poly;
pub mod sweep;
