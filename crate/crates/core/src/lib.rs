pub mod braidmono;
pub mod curvegeom;
pub mod exactpoly;
pub mod hurwitz;
pub mod monorep;
pub mod numeric;
pub mod numtrack;
pub mod pipeline;
