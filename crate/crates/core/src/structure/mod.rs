//! Isomorphism, siblings, distributions and the small-code catalogs.

pub mod catalog;
pub mod distribution;
pub mod iso;
pub mod siblings;
pub mod templates;

pub use catalog::{
    catalog_equivalent_pairs, catalog_partition_codes, lemma32_fixtures, lemma33_fixtures,
    normalize_pair, TwinConstraint,
};
pub use distribution::{distribution, match_corollary51, Distribution};
pub use iso::{
    apply_isomorphism, are_isomorphic, canonical_form, canonical_form_pinned, CodeIsomorphism,
    LetterMap,
};
pub use siblings::{graph_degree_bound_check, siblings_condition, siblings_graph, SiblingsGraph};
pub use templates::{classify_cover_5, TemplateForm, TemplateMatch};
