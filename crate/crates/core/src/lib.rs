pub mod arith;
pub mod linalg;
pub mod manifolds;
pub mod engine;
pub mod rep;
