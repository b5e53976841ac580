use proptest::prelude::*;

use votelab::adversaries::{helios_for, maul_ballot};
use votelab::codec::CanonicalBytes;
use votelab::elgamal::{decrypt_exp, encrypt_exp, hom_combine, keygen, reencrypt, Ciphertext};
use votelab::group::{gen_params, SecurityLevel};
use votelab::helios::{self, HeliosBallot};
use votelab::rng::seeded;
use votelab::scheme::ElectionScheme;
use votelab::sigma::FsMode;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn combining_adds_plaintexts(seed in any::<u64>(), a in 0u64..200, b in 0u64..200) {
        let params = gen_params(SecurityLevel::Test);
        let mut rng = seeded(seed);
        let kp = keygen(&params, &mut rng);
        let ca = encrypt_exp(&kp.pk, a, &params.random_scalar(&mut rng));
        let cb = encrypt_exp(&kp.pk, b, &params.random_scalar(&mut rng));
        let sum = hom_combine(&params, &ca, &cb);
        prop_assert!(sum.is_well_formed(&params));
        prop_assert_eq!(decrypt_exp(&kp, &sum, 400).unwrap(), a + b);
    }

    #[test]
    fn reencryption_keeps_the_plaintext(seed in any::<u64>(), m in 0u64..50) {
        let params = gen_params(SecurityLevel::Test);
        let mut rng = seeded(seed);
        let kp = keygen(&params, &mut rng);
        let ct = encrypt_exp(&kp.pk, m, &params.random_scalar(&mut rng));
        let re = reencrypt(&kp.pk, &ct, &params.random_nonzero_scalar(&mut rng));
        prop_assert_ne!(&re, &ct);
        prop_assert_eq!(decrypt_exp(&kp, &re, 50).unwrap(), m);
    }

    #[test]
    fn ciphertexts_round_trip_through_json(seed in any::<u64>(), m in 0u64..1000) {
        let params = gen_params(SecurityLevel::Test);
        let mut rng = seeded(seed);
        let kp = keygen(&params, &mut rng);
        let ct = encrypt_exp(&kp.pk, m, &params.random_scalar(&mut rng));
        let back: Ciphertext = serde_json::from_str(&serde_json::to_string(&ct).unwrap()).unwrap();
        prop_assert_eq!(back.canonical_bytes(), ct.canonical_bytes());
        prop_assert_eq!(back, ct);
    }

    #[test]
    fn distinct_ciphertexts_encode_distinctly(seed in any::<u64>()) {
        let params = gen_params(SecurityLevel::Test);
        let mut rng = seeded(seed);
        let kp = keygen(&params, &mut rng);
        let a = encrypt_exp(&kp.pk, 1, &params.random_scalar(&mut rng));
        let b = encrypt_exp(&kp.pk, 1, &params.random_scalar(&mut rng));
        prop_assume!(a != b);
        prop_assert_ne!(a.canonical_bytes(), b.canonical_bytes());
        // (c1, c2) and (c2, c1) must not collide either.
        let swapped = Ciphertext { c1: a.c2.clone(), c2: a.c1.clone() };
        prop_assert_ne!(swapped.canonical_bytes(), a.canonical_bytes());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn ballots_round_trip_and_stay_valid(seed in any::<u64>(), nc in 1u64..=4, v in 1u64..=4) {
        prop_assume!(v <= nc);
        let scheme = helios_for(FsMode::Strong);
        let mut rng = seeded(seed);
        let s = scheme.setup(SecurityLevel::Test, &mut rng);
        let b = scheme.vote(&s.pk, v, nc, &mut rng).unwrap();
        let back: HeliosBallot = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert!(helios::ballot_is_valid(&s.pk.key, &back, nc, FsMode::Strong));
    }

    #[test]
    fn mauling_preserves_the_combined_ciphertext(seed in any::<u64>(), v in 1u64..=4, rot in 0usize..3) {
        let nc = 4;
        let scheme = helios_for(FsMode::Weak);
        let mut rng = seeded(seed);
        let s = scheme.setup(SecurityLevel::Test, &mut rng);
        let b = scheme.vote(&s.pk, v, nc, &mut rng).unwrap();
        let chi: Vec<u64> = (0..3).map(|i| ((i + rot) % 3) as u64 + 1).collect();
        let m = maul_ballot(&b, &chi);
        prop_assert_eq!(m.combined(s.pk.params()), b.combined(s.pk.params()));
        prop_assert!(helios::ballot_is_valid(&s.pk.key, &m, nc, FsMode::Weak));
    }
}
