pub mod facepair;
pub mod genus;
pub mod presentation;
pub mod ribbon;
mod unionfind;
