pub mod algebroid;
pub mod catalog;
pub mod cli;
pub mod cocycle;
pub mod comod;
pub mod crossprod;
pub mod doc;
pub mod error;
pub mod exactla;
pub mod galois;
pub mod hopf;
pub mod report;
pub mod twist;
