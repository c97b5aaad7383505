pub mod class;
pub mod construct;
pub mod decomposition;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod planarity;
pub mod reductions;
