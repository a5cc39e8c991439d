//! Engine for computing with the group nu(G) attached to a finite
//! presentation: coset enumeration, permutation-group machinery, the tensor
//! subgroup [G, G^phi], and a verification suite over a built-in corpus of
//! small groups.

pub mod corpus;
pub mod driver;
pub mod error;
pub mod fp;
pub mod nu;
pub mod perm;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use fp::{parse_presentation, parse_presentations, GeneratorSymbol, Presentation, Word};
pub use nu::{realize_nu, build_nu_presentation, build_direct_tensor_square, Caps, NuGroup, NuMode, TensorSet};
pub use perm::{Homomorphism, PermGroup, Permutation, Point, PointSet, RegularRep};
