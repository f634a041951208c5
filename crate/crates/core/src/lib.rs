pub mod arith;
pub mod cli;
pub mod fronts;
pub mod surgery;
pub mod topology;
