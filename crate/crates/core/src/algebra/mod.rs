//! The symmetric Hopf algebra S(V) over a finite basis `e_1..e_d`: the
//! commutative product ∨, the shuffle coproduct Δ, counit ε, antipode s,
//! derivations δ_k and divided powers.

mod element;
mod monomial;
mod tensor;

pub use element::{divided_power, Element};
pub use monomial::Monomial;
pub use tensor::{iterated_coproduct, MultiTensor, TensorElement};

