//! Montgomery-form fixed-base tables for moduli up to 512 and 2048 bits,
//! backed by crypto-bigint. num-bigint remains the storage format; values
//! are converted at the boundary.

use crypto_bigint::modular::runtime_mod::{DynResidue, DynResidueParams};
use crypto_bigint::Uint;
use num_bigint::BigUint;

const SMALL: usize = 512 / 64;
const LARGE: usize = 2048 / 64;

/// A modulus prepared for Montgomery multiplication, sized to fit.
#[derive(Clone)]
pub(crate) enum Modulus {
    Small(DynResidueParams<SMALL>),
    Large(DynResidueParams<LARGE>),
}

/// Fixed-base table rows in Montgomery form.
pub(crate) enum MontRows {
    Small(DynResidueParams<SMALL>, Vec<Vec<Uint<SMALL>>>),
    Large(DynResidueParams<LARGE>, Vec<Vec<Uint<LARGE>>>),
}

fn to_uint<const L: usize>(x: &BigUint) -> Uint<L> {
    let mut bytes = x.to_bytes_le();
    debug_assert!(bytes.len() <= Uint::<L>::BYTES);
    bytes.resize(Uint::<L>::BYTES, 0);
    Uint::from_le_slice(&bytes)
}

fn from_uint<const L: usize>(x: &Uint<L>) -> BigUint {
    let bytes: Vec<u8> = x.as_words().iter().flat_map(|w| w.to_le_bytes()).collect();
    BigUint::from_bytes_le(&bytes)
}

/// Row i holds base^(d · 2^(w·i)) for d = 1..2^w.
fn table_with<const L: usize>(params: DynResidueParams<L>, base: &BigUint, nrows: usize, window: usize) -> Vec<Vec<Uint<L>>> {
    let mut row_base = DynResidue::new(&to_uint(base), params);
    (0..nrows)
        .map(|_| {
            let mut row = Vec::with_capacity((1 << window) - 1);
            let mut acc = row_base;
            for _ in 1..(1usize << window) {
                row.push(*acc.as_montgomery());
                acc *= row_base;
            }
            row_base = acc;
            row
        })
        .collect()
}

fn product_with<const L: usize>(params: DynResidueParams<L>, picks: impl Iterator<Item = Uint<L>>) -> BigUint {
    let acc = picks.fold(DynResidue::one(params), |acc, m| acc * DynResidue::from_montgomery(m, params));
    from_uint(&acc.retrieve())
}

impl Modulus {
    /// None for even moduli or moduli wider than 2048 bits.
    pub(crate) fn new(p: &BigUint) -> Option<Self> {
        if !p.bit(0) {
            return None;
        }
        match p.bits() {
            0..=512 => Some(Modulus::Small(DynResidueParams::new(&to_uint(p)))),
            513..=2048 => Some(Modulus::Large(DynResidueParams::new(&to_uint(p)))),
            _ => None,
        }
    }

    /// Fixed-base table for `base`, with `nrows` rows of window `window`.
    pub(crate) fn table(&self, base: &BigUint, nrows: usize, window: usize) -> MontRows {
        match self {
            Modulus::Small(p) => MontRows::Small(*p, table_with(*p, base, nrows, window)),
            Modulus::Large(p) => MontRows::Large(*p, table_with(*p, base, nrows, window)),
        }
    }
}

impl MontRows {
    pub(crate) fn len(&self) -> usize {
        match self {
            MontRows::Small(_, rows) => rows.len(),
            MontRows::Large(_, rows) => rows.len(),
        }
    }

    /// Product of the entries `row[i][digit_i − 1]` over rows with a
    /// nonzero digit.
    pub(crate) fn product(&self, digits: impl Iterator<Item = (usize, usize)>) -> BigUint {
        match self {
            MontRows::Small(p, rows) => product_with(*p, digits.map(|(i, d)| rows[i][d - 1])),
            MontRows::Large(p, rows) => product_with(*p, digits.map(|(i, d)| rows[i][d - 1])),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn even_and_oversized_moduli_are_declined() {
        assert!(Modulus::new(&BigUint::from(24u32)).is_none());
        assert!(Modulus::new(&((BigUint::from(1u32) << 2048u32) + 1u32)).is_none());
    }

    proptest! {
        #[test]
        fn table_products_agree_with_num_bigint(p in any::<[u64; 8]>(), b in any::<[u64; 8]>(), e in any::<u16>()) {
            let to = |w: &[u64; 8]| BigUint::from_bytes_le(&w.iter().flat_map(|x| x.to_le_bytes()).collect::<Vec<_>>());
            let p = to(&p) | BigUint::from(1u32);
            prop_assume!(p > BigUint::from(1u32));
            let b = to(&b) % &p;
            let table = Modulus::new(&p).unwrap().table(&b, 4, 4);
            let digits = (0..4).map(|i| (i, (e as usize >> (4 * i)) & 15)).filter(|&(_, d)| d != 0);
            prop_assert_eq!(table.product(digits), b.modpow(&BigUint::from(e), &p));
        }
    }
}
