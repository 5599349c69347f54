//! Diagonal two-tensors, the vertex operator Yang-Baxter equation, the
//! tensor/operator correspondence and relative Rota-Baxter operators.

mod form;
mod maps;
mod rbo;
mod tensor;
mod triple;

pub use form::{form_transport, InvariantForm};
pub use maps::{map_to_tensor, tensor_to_map, LevelPreservingMap};
pub use rbo::{
    build_r_from_t, check_relative_rbo, check_strong_rbo, coadjoint_left_residual, coadjoint_right_residual,
    rbo_residual,
};
pub use tensor::DiagonalTensor;
pub use triple::{
    check_voybe, check_voybe_blocks, coverage_pairs, residual_component, split_blocks, triple_products,
    voybe_residual, BlockSplit, Residual, TripleComponent,
};
