//! Order supergraphs of finite groups, cyclic separability and exact cyclic
//! vertex connectivity, plus an audit harness for the known
//! characterizations of cyclically separable order supergraphs.

pub mod arith;
pub mod group;
pub mod graph;
pub mod supergraph;
pub mod cyclic;
pub mod groupspec;
pub mod analysis;
pub mod audit;

mod error;

pub use error::{Error, Result};
