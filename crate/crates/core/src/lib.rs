pub mod circuit;
pub mod device;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod outcomes;
pub mod packet;
pub mod scenario;
pub mod state;
