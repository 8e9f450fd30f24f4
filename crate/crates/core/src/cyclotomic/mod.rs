//! Exact arithmetic in cyclotomic fields and its reduction at a prime over p.

mod element;
pub mod local;
pub mod modp;
pub mod poly;

pub use element::Cyclotomic;
pub use local::{FiniteFieldElem, LocalContext};
pub use modp::{factor_cyclotomic_mod_p, factor_cyclotomic_mod_p_all, hensel_lift};
pub use poly::cyclotomic_polynomial;
