pub mod angle;
pub mod combinatorics;
pub mod covers;
pub mod cyclotomic;
pub mod error;
pub mod plane;
pub mod tiling;
pub mod unfold;
pub mod svg;
pub mod fingerprint;
pub mod invariants;
