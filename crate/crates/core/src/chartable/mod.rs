//! Character tables: the data model, the CTJ format and derived maps.

pub mod ctj;
pub mod maps;
mod model;

pub use ctj::{encode_value, load_table, parse_table, serialize_table};
pub use maps::{
    class_mult_coefficient, galois_character_action, galois_class_action, p_factor_class, p_galois_group,
    p_galois_orbit_sizes, p_sections,
    power_class, power_map, validate_brauer_permutation_lemma, SectionPartition,
};
pub use model::{CharacterTable, ClassInfo};
