pub mod bzclass;
pub mod cyclicalg;
pub mod dto;
pub mod error;
pub mod factors;
pub mod langlands;
pub mod qexact;
pub mod sample;
pub mod weildeligne;
pub mod wittring;

pub use bzclass::{Atom, ClassData, Form, InertialLabel, LabelKind, LabelRegistry, Segment};
pub use cyclicalg::{CyclicAlgebra, CyclicElement, DieudonneModule, KsElem, UnramifiedContext};
pub use error::{Error, Result};
pub use factors::{ConductorMode, EpsValue};
pub use qexact::{ExactScalar, Half, LFactor, LocalFieldContext};
pub use weildeligne::{WDBlock, WDRep};
pub use wittring::{CoeffRing, WittContext, WittVector};
