//! Library half of the command line front end: family literals, scripted
//! reproduction cases, and the property suites.

pub mod family;
pub mod repro;
pub mod suites;
