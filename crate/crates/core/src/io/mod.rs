//! JSON file formats: algebra configs, module descriptors, vectors, diagonal
//! tensors and level-preserving maps.

mod codec;
mod config;
mod files;

pub use codec::{FockHandle, SpaceCodec, VecJson, VecTerm};
pub use config::{AlgebraConfig, BuiltModule, LieConfig, ModuleSpec, DEFAULT_MAX_DEGREE};
pub use files::{to_json_string, MapFile, PairJson, TensorFile, MAP_KIND, TENSOR_KIND};
