pub mod cli;
pub mod cohomology;
pub mod dga;
pub mod linalg;
pub mod models;
