//! Covering spaces of presentation complexes, computed through coset
//! tables.
//!
//! A presentation `< g | r >` stands for its presentation complex: one
//! vertex, a loop per generator, a disc per relator. Connected coverings
//! of that complex correspond to transitive right `G`-sets, i.e. to coset
//! tables of subgroups up to conjugacy. This crate enumerates those
//! tables and computes the usual covering-space data from them: Cayley
//! complexes and Euler characteristics, deck groups, covering maps,
//! normality, sections, fibre components, low-index coverings, and the
//! abelianization.
//!
//! ```
//! use std::sync::Arc;
//! use covergraph::{coset_enumerate, deck_group, parse_presentation, parse_word_list, EnumerationLimits};
//!
//! let g = Arc::new(parse_presentation("< a, b | a^2, b^2 >").unwrap());
//! let h = parse_word_list("(a b)^3", &g).unwrap();
//! let table = coset_enumerate(&g, &h, &EnumerationLimits::default()).unwrap();
//! assert_eq!(table.num_cosets(), 6);
//! assert_eq!(deck_group(&table).order(), 6);
//! ```

pub mod abelian;
pub mod catalog;
pub mod complexes;
pub mod coverings;
pub mod enumerator;
pub mod words;

use num_bigint::BigInt;

pub use abelian::{
    abelianization, exponent_matrix, smith_normal_form, AbelianInvariants, IntegerMatrix, IntegerScalar, MatrixError,
    SmithForm,
};
pub use catalog::{amalgamated_product, attach_cells, free_product, standard, CatalogError, Standard};
pub use complexes::{
    cayley_complex, cayley_graph, euler_characteristic, free_subgroup_rank, CayleyComplex, ComplexError, Edge, Face,
};
pub use coverings::{
    covering_morphisms, deck_group, equivariant_map, is_isomorphic, is_normal, low_index_coverings, orbit_category,
    orbits, sections, CoveringError, DeckGroup, MonodromyAction, OrbitCategory, SearchBudget,
};
pub use enumerator::{
    coset_enumerate, group_order, Coset, CosetTable, EnumerationError, EnumerationLimits, InvariantViolation, Limit,
    TableError,
};
pub use words::{
    parse_presentation, parse_word, parse_word_list, Generator, Letter, ParseError, ParseErrorKind, Presentation,
    PresentationError, Syllable, Word, WordError,
};

/// Exact matrices, as used for abelianization.
pub type BigIntMatrix = IntegerMatrix<BigInt>;
/// Machine-integer matrices for small inputs.
pub type SmallIntMatrix = IntegerMatrix<i64>;
/// Machine-integer matrices with headroom for entry growth.
pub type WideIntMatrix = IntegerMatrix<i128>;
pub type BigSmithForm = SmithForm<BigInt>;
pub type SmallSmithForm = SmithForm<i64>;
