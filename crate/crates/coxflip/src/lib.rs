//! Command line and HTTP front end for `coxflip-core`.

pub mod api;
pub mod cli;
pub mod server;
