//! Exact rational linear algebra, H-representation polyhedra, and a
//! simplex-based LP engine. Every sign decision downstream (Jacobians,
//! regularity, redundancy) rests on this module being exact.

pub mod lp;
pub mod matrix;
pub mod polyhedron;
