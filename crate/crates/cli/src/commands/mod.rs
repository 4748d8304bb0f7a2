pub mod bounds;
pub mod conflict;
pub mod construct;
pub mod embed;
pub mod experiment;
pub mod otdb;
pub mod tn;
