//! Relations and operations over `D = {0, …, n-1}`, the preservation
//! predicate and bounded-arity `Pol`/`Inv` enumeration.

mod operation;
mod preserve;
mod relation;
mod tuple;

pub use operation::Operation;
pub use preserve::{
    all_operations, cell_arguments, find_violation, inv_m, pol_k, pol_k_visit, preserves, Budget,
    Counterexample,
};
pub(crate) use preserve::unary_set_preserved;
pub use relation::Relation;
pub use tuple::{decode_tuple, encode_tuple, tuple_count};
