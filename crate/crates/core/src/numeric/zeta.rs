use rug::{Complex, Float};

use super::{BigComplex, PrecisionPolicy};

/// `zeta(k)` for an integer `k >= 2`, as a real number with the policy's
/// working digits.
pub fn zeta_int(k: u32, policy: &PrecisionPolicy) -> BigComplex {
    let z = zeta_bits(k, policy.working_bits());
    BigComplex::from_complex(Complex::with_val(z.prec(), z), policy.digits)
}

pub(crate) fn zeta_bits(k: u32, bits: u32) -> Float {
    assert!(k >= 2, "zeta_int needs k >= 2");
    Float::with_val(bits, Float::zeta_u(k))
}
