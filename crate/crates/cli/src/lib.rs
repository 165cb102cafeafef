//! Library surface of the command line front end: the workspace document
//! model, task execution and report rendering.

pub mod doc;
pub mod report;
pub mod run;
