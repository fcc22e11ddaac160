//! IO, configuration and reporting for the AddressEngine toolchain.

pub mod config;
pub mod formats;
pub mod report;
pub mod trace_out;
