//! Welded knot diagrams as signed Gauss codes: welding, welded moves, knot
//! group presentations, and certificates of triviality or nontriviality.

mod bigjson;

pub mod gaussdiag;
pub mod grouppres;
pub mod moves;
pub mod analysis;
pub mod families;
