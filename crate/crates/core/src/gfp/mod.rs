//! Exact arithmetic over GF(p) and GF(p^a): field elements, dense matrices,
//! subspaces, the field blow-up GL(n, p^a) -> GL(na, p) and the Frobenius map.

mod field;
mod matrix;
pub mod poly;
mod subspace;

pub use field::{
    gcd_u64, is_prime, multiplicative_order_mod, prime_divisors, Field, FieldError, FieldSpec,
};
pub use matrix::{frobenius_map, FFMatrix};
pub use subspace::Subspace;

use std::sync::Arc;

/// Field-element operation selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
    Frobenius,
}

/// Single entry point for element arithmetic; `y` is ignored by unary ops.
pub fn ff_arith(field: &Field, x: u32, y: u32, op: ArithOp) -> Result<u32, FieldError> {
    field.check(x)?;
    field.check(y)?;
    Ok(match op {
        ArithOp::Add => field.add(x, y),
        ArithOp::Mul => field.mul(x, y),
        ArithOp::Inv => field.inv(x)?,
        ArithOp::Pow(n) => field.pow(x, n),
        ArithOp::Frobenius => field.frobenius(x),
    })
}

/// Null space basis of `m`.
pub fn mat_kernel(m: &FFMatrix) -> Vec<Vec<u32>> {
    m.kernel()
}

pub fn blow_up(m: &FFMatrix) -> FFMatrix {
    m.blow_up()
}

/// Block scalar matrix `x·I_n` over `field`.
pub fn scalar(field: &Arc<Field>, n: usize, x: u32) -> FFMatrix {
    FFMatrix::scalar(field, n, x)
}
