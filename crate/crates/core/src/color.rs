//! The color value abstraction.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive, Unsigned};

/// An unsigned integer type usable as a color and as a neighbor sum.
///
/// Sums are accumulated in the color type itself, so machine-word colors
/// panic on overflow rather than wrapping; use [`num_bigint::BigUint`] when
/// colors may be large (for instance the powers-of-two coloring on more than
/// 64 vertices).
pub trait Color:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + Unsigned
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
    /// `2^exp`, or `None` if it does not fit.
    fn checked_pow2(exp: usize) -> Option<Self> {
        let two = Self::one() + Self::one();
        num_traits::checked_pow(two, exp)
    }

    /// `self mod k` as a machine word. `k` must be positive.
    fn residue(&self, k: u64) -> u64 {
        if let Some(word) = self.to_u64() {
            return word % k;
        }
        let modulus = Self::from_u64(k).expect("every color type holds a u64 modulus");
        (self.clone() % modulus)
            .to_u64()
            .expect("a residue is below the modulus")
    }

    /// Converts to another color type, `None` if the value does not fit.
    fn cast<U: Color>(&self) -> Option<U> {
        match self.to_u128() {
            Some(word) => U::from_u128(word),
            None => U::from_str_radix(&self.to_string(), 10).ok(),
        }
    }

    fn parse_decimal(text: &str) -> Option<Self> {
        Self::from_str_radix(text, 10).ok()
    }
}

impl<T> Color for T where
    T: Clone
        + Ord
        + Hash
        + Debug
        + Display
        + Unsigned
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

/// `a + b`, panicking with a pointer to the big-integer type on overflow.
pub(crate) fn add<T: Color>(a: &T, b: &T) -> T {
    a.checked_add(b)
        .expect("neighbor sum overflowed the color type; use BigUint colors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn powers_of_two() {
        assert_eq!(u8::checked_pow2(7), Some(128));
        assert_eq!(u8::checked_pow2(8), None);
        assert_eq!(BigUint::checked_pow2(100), Some(BigUint::from(1u8) << 100usize));
    }

    #[test]
    fn residue_and_cast() {
        let big = BigUint::from(u64::MAX) * BigUint::from(3u8) + BigUint::from(5u8);
        let expected = (big.clone() % BigUint::from(7u8)).to_u64().unwrap();
        assert_eq!(big.residue(7), expected);
        assert_eq!(big.cast::<u64>(), None);
        assert_eq!(big.cast::<BigUint>(), Some(big.clone()));
        assert_eq!(300u32.cast::<u8>(), None);
        assert_eq!(200u32.cast::<BigUint>(), Some(BigUint::from(200u8)));
    }
}
