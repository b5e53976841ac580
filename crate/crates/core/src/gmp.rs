//! GMP-backed modular arithmetic for the operations num-bigint is slow at:
//! exponentiation, inversion and the Jacobi symbol. Values stay num-bigint
//! at the boundary.

use num_bigint::BigUint;
use rug::integer::Order;
use rug::Integer;

fn to_gmp(x: &BigUint) -> Integer {
    Integer::from_digits(&x.to_u64_digits(), Order::Lsf)
}

fn from_gmp(x: &Integer) -> BigUint {
    BigUint::new(x.to_digits::<u32>(Order::Lsf))
}

/// base^e mod m for m > 0.
pub(crate) fn pow_mod(base: &BigUint, e: &BigUint, m: &BigUint) -> BigUint {
    let r = to_gmp(base)
        .pow_mod(&to_gmp(e), &to_gmp(m))
        .expect("non-negative exponent");
    from_gmp(&r)
}

/// a^−1 mod m, if it exists.
pub(crate) fn inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    to_gmp(a).invert(&to_gmp(m)).ok().map(|r| from_gmp(&r))
}

/// Jacobi symbol (a/n) for odd n.
pub(crate) fn jacobi(a: &BigUint, n: &BigUint) -> i32 {
    to_gmp(a).jacobi(&to_gmp(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(w: &[u64; 4]) -> BigUint {
        BigUint::new(w.iter().flat_map(|x| [*x as u32, (*x >> 32) as u32]).collect())
    }

    proptest! {
        #[test]
        fn agrees_with_num_bigint(m in any::<[u64; 4]>(), a in any::<[u64; 4]>(), e in any::<[u64; 4]>()) {
            let m = big(&m) | BigUint::from(1u32);
            prop_assume!(m > BigUint::from(1u32));
            let (a, e) = (big(&a) % &m, big(&e));
            prop_assert_eq!(pow_mod(&a, &e, &m), a.modpow(&e, &m));
            if let Some(inv) = inverse(&a, &m) {
                prop_assert_eq!((&a * inv) % &m, BigUint::from(1u32));
            }
        }
    }
}
