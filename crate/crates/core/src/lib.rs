//! Exact computation with formal power series codes over the rationals:
//! monomial orders on free modules, truncated and scoped division, standard
//! bases, and reduction of series codes to normal forms.

pub mod codes;
pub mod divide;
pub mod error;
pub mod groebner;
pub mod monmod;
pub mod mora;
pub mod order;
pub mod poly;
pub mod reduce;
pub mod text;
