//! Exact-arithmetic non-commutative Gröbner-basis engine for the free
//! associative algebra on the n² magic-unitary generators u[i,j], together
//! with the relation families of the quantum symmetric group, the word
//! problem decision procedure, and the n-parametric predicate framework.

pub mod algebra;
pub mod groebner;
pub mod params;
pub mod relations;
