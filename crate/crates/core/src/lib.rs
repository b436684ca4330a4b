//! Central difference sets, central partial difference sets and reduced
//! linking systems in the Suzuki p-groups `A_p(m, theta)`.

pub mod error;
pub mod cyclo;
pub mod field;
pub mod group;
pub mod set;
pub mod chars;
pub mod constructions;
pub mod verifier;
pub mod io;

pub use error::{Error, Result};
pub use cyclo::CycInt;
pub use field::{FieldCtx, FieldElement, FieldSpec, SubfieldElement};
pub use group::{ClassId, GroupElement, SuzukiGroup};
pub use set::CentralSet;
pub use chars::{CharId, CharTable};
