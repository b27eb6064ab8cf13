pub mod graphmap;
pub mod spectral;
pub mod words;
pub mod families;
pub mod analysis;
pub mod document;
pub mod cli;
