pub mod exactpoly;
pub mod grassrings;
pub mod bimodules;
pub mod twomorphisms;
pub mod diagramlang;
pub mod relationsuite;
