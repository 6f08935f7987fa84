pub mod gfp;
pub mod catalogue;
pub mod classify;
pub mod cliffnorm;
pub mod espec;
pub mod group;
pub mod modtests;
pub mod orbits;
