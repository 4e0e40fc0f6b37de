//! Command-line front end: configuration, cached parallel runs, record
//! writers and table reproduction.

pub mod cache;
pub mod config;
pub mod context;
pub mod error;
pub mod manifest;
pub mod records;
pub mod reference;
pub mod reproduce;
pub mod run;
