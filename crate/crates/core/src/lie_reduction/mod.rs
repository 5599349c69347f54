//! Degree-one Lie algebras and modules of VOAs, the classical Yang-Baxter
//! equation, Lie relative Rota-Baxter operators and the reduction of the
//! vertex-algebraic statements to degree one.

mod cybe;
mod lie;
mod reduce;

pub use cybe::{check_cybe, check_lie_o_operator, cybe_brackets, skew_tensor_of_operator, CybeBrackets, LieTensor};
pub use lie::{level1_lie, level1_module, LieLevelOne, LieModuleOne};
pub use reduce::{reduce_map, reduce_tensor, verify_map_reduction, verify_tensor_reduction};
