//! Exact Grothendieck–Witt valued degrees and enriched plane counts.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod groebner;
pub mod gw;
pub mod bezoutian;
pub mod charnum;
pub mod counts;
pub mod oracle;
pub mod json;
pub mod verify;
