//! Aperiodicity certificates, terminal pairs, bounded weights and the
//! frequent hypercyclicity criterion for weighted translations on concrete
//! groups: Z^d, Z_m, F2, the discrete Heisenberg group, GL(n,C) and S1xR.

pub mod aperiodicity;
pub mod app;
pub mod compact;
pub mod config;
pub mod error;
pub mod fhc;
pub mod group;
pub mod metric;
pub mod operator;
pub mod terminal;
pub mod weight;
