use proptest::collection::vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use suzuki_mst3::field::FieldSpec;
use suzuki_mst3::group::{GroupElement, GroupParams};
use suzuki_mst3::logsig::{LogSignature, SignatureType};
use suzuki_mst3::{keyfile, legacy, message, mst3};

fn scheme_params(n: u32, l: u32) -> mst3::SchemeParams {
    let group = GroupParams::new(FieldSpec::with_default_modulus(n).unwrap(), l).unwrap();
    let types = (0..l).map(|_| SignatureType::chunked(n).unwrap()).collect();
    mst3::SchemeParams::new(group, types).unwrap()
}

fn legacy_params(n: u32, l: u32) -> legacy::LegacyParams {
    let group = GroupParams::new(FieldSpec::with_default_modulus(n).unwrap(), l).unwrap();
    let types = (0..l / 2).map(|_| SignatureType::chunked(n).unwrap()).collect();
    legacy::LegacyParams::new(group, types).unwrap()
}

fn random_group_element(params: GroupParams, seed: u64) -> GroupElement {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    params.random(&mut rng)
}

proptest! {
    #[test]
    fn field_addition_is_commutative_and_associative(
        n in 2u32..=10,
        a in any::<u64>(),
        b in any::<u64>(),
        c in any::<u64>(),
    ) {
        let f = FieldSpec::with_default_modulus(n).unwrap();
        let mask = f.order() - 1;
        let (a, b, c) = (
            f.element(a & mask).unwrap(),
            f.element(b & mask).unwrap(),
            f.element(c & mask).unwrap(),
        );
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a + a, f.zero());
    }

    #[test]
    fn field_multiplication_is_commutative_and_associative(
        n in 2u32..=10,
        a in any::<u64>(),
        b in any::<u64>(),
        c in any::<u64>(),
    ) {
        let f = FieldSpec::with_default_modulus(n).unwrap();
        let mask = f.order() - 1;
        let (a, b, c) = (
            f.element(a & mask).unwrap(),
            f.element(b & mask).unwrap(),
            f.element(c & mask).unwrap(),
        );
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * f.one(), a);
    }

    #[test]
    fn field_multiplication_distributes_over_addition(
        n in 2u32..=10,
        a in any::<u64>(),
        b in any::<u64>(),
        c in any::<u64>(),
    ) {
        let f = FieldSpec::with_default_modulus(n).unwrap();
        let mask = f.order() - 1;
        let (a, b, c) = (
            f.element(a & mask).unwrap(),
            f.element(b & mask).unwrap(),
            f.element(c & mask).unwrap(),
        );
        prop_assert_eq!(a * (b + c), a * b + a * c);
    }

    #[test]
    fn field_nonzero_elements_invert(n in 2u32..=10, a in any::<u64>()) {
        let f = FieldSpec::with_default_modulus(n).unwrap();
        let a = f.element(a & (f.order() - 1)).unwrap();
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert_eq!(a * a.inv().unwrap(), f.one());
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism(
        n in 2u32..=10,
        j in 0u32..=12,
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let f = FieldSpec::with_default_modulus(n).unwrap();
        let mask = f.order() - 1;
        let (a, b) = (f.element(a & mask).unwrap(), f.element(b & mask).unwrap());
        prop_assert_eq!((a + b).frobenius_pow(j), a.frobenius_pow(j) + b.frobenius_pow(j));
        prop_assert_eq!((a * b).frobenius_pow(j), a.frobenius_pow(j) * b.frobenius_pow(j));
        // x^(2^n) = x, so exponents only matter mod n.
        prop_assert_eq!(a.frobenius_pow(n), a);
    }

    #[test]
    fn field_text_round_trips(n in 2u32..=24, a in any::<u64>()) {
        let f = FieldSpec::with_default_modulus(n).unwrap();
        let a = f.element(a & (f.order() - 1)).unwrap();
        prop_assert_eq!(f.parse_element(&a.to_hex()).unwrap(), a);
    }
}

proptest! {
    #[test]
    fn group_multiplication_is_associative(
        n in 2u32..=8,
        l in 2u32..=6,
        seeds in vec(any::<u64>(), 3),
    ) {
        let params = GroupParams::new(FieldSpec::with_default_modulus(n).unwrap(), l).unwrap();
        let a = random_group_element(params, seeds[0]);
        let b = random_group_element(params, seeds[1]);
        let c = random_group_element(params, seeds[2]);
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn group_identity_and_inverse_laws_hold(
        n in 2u32..=8,
        l in 2u32..=6,
        seed in any::<u64>(),
    ) {
        let params = GroupParams::new(FieldSpec::with_default_modulus(n).unwrap(), l).unwrap();
        let a = random_group_element(params, seed);
        let e = params.identity();
        prop_assert_eq!(a.mul(&e), a.clone());
        prop_assert_eq!(e.mul(&a), a.clone());
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.inverse().mul(&a).is_identity());
    }

    #[test]
    fn group_first_coordinate_multiplies_without_cross_terms(
        n in 2u32..=8,
        l in 2u32..=6,
        seeds in vec(any::<u64>(), 2),
    ) {
        let params = GroupParams::new(FieldSpec::with_default_modulus(n).unwrap(), l).unwrap();
        let a = random_group_element(params, seeds[0]);
        let b = random_group_element(params, seeds[1]);
        prop_assert_eq!(a.mul(&b).coord(1), a.coord(1) + b.coord(1));
        prop_assert_eq!(a.inverse().coord(1), a.coord(1));
    }

    #[test]
    fn group_text_round_trips(n in 2u32..=10, l in 2u32..=6, seed in any::<u64>()) {
        let params = GroupParams::new(FieldSpec::with_default_modulus(n).unwrap(), l).unwrap();
        let a = random_group_element(params, seed);
        prop_assert_eq!(params.parse_element(&a.to_text()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixed_radix_decompose_composes_back(
        bits in vec(1u32..=4, 1..=5),
        r in any::<u64>(),
    ) {
        let ty = SignatureType::from_segment_bits(bits).unwrap();
        let r = r % ty.index_space();
        let digits = ty.decompose(r).unwrap();
        prop_assert_eq!(digits.len(), ty.block_count());
        for (digit, radix) in digits.iter().zip(ty.radices()) {
            prop_assert!(*digit < radix);
        }
        prop_assert_eq!(ty.compose(&digits).unwrap(), r);
    }

    #[test]
    fn factorization_inverts_evaluation(
        bits in vec(1u32..=4, 2..=4),
        shuffled in any::<bool>(),
        seed in any::<u64>(),
        r in any::<u64>(),
    ) {
        let ty = SignatureType::from_segment_bits(bits).unwrap();
        let spec = FieldSpec::with_default_modulus(ty.total_bits()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let sig = if shuffled {
            LogSignature::generate_shuffled(spec, &ty, 1, &mut rng).unwrap()
        } else {
            LogSignature::generate(spec, &ty, 1, &mut rng).unwrap()
        };
        let r = r % ty.index_space();
        prop_assert_eq!(sig.factorize(sig.evaluate(r).unwrap()).unwrap(), r);
    }

    #[test]
    fn message_text_round_trips(n in 2u32..=10, l in 2u32..=6, seed in any::<u64>()) {
        let params = GroupParams::new(FieldSpec::with_default_modulus(n).unwrap(), l).unwrap();
        let x = random_group_element(params, seed);
        let hex = message::decode(&x);
        prop_assert_eq!(hex.len(), message::hex_width(params));
        prop_assert_eq!(message::encode(params, &hex).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scheme_round_trips(
        n in 2u32..=7,
        l in 2u32..=5,
        key_seed in any::<u64>(),
        msg_seed in any::<u64>(),
    ) {
        let params = scheme_params(n, l);
        let mut rng = ChaCha12Rng::seed_from_u64(key_seed);
        let pair = mst3::keygen(&params, &mut rng).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(msg_seed);
        let x = params.group().random(&mut rng);
        let ct = mst3::encrypt(&pair.public, &x, &mut rng).unwrap();
        prop_assert_eq!(mst3::decrypt(&pair.public, &pair.private, &ct).unwrap(), x);
    }

    #[test]
    fn legacy_round_trips(
        n in 2u32..=7,
        half in 1u32..=3,
        key_seed in any::<u64>(),
        msg_seed in any::<u64>(),
    ) {
        let params = legacy_params(n, 2 * half);
        let mut rng = ChaCha12Rng::seed_from_u64(key_seed);
        let pair = legacy::keygen(&params, &mut rng).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(msg_seed);
        let x = params.random_message(&mut rng);
        let ct = legacy::encrypt(&pair.public, &x, &mut rng).unwrap();
        prop_assert_eq!(legacy::decrypt(&pair.public, &pair.private, &ct).unwrap(), x);
    }

    #[test]
    fn key_and_ciphertext_files_round_trip(
        n in 2u32..=7,
        l in 2u32..=4,
        key_seed in any::<u64>(),
        msg_seed in any::<u64>(),
    ) {
        let params = scheme_params(n, l);
        let mut rng = ChaCha12Rng::seed_from_u64(key_seed);
        let pair = mst3::keygen(&params, &mut rng).unwrap();

        let public_text = keyfile::write_public_key(&pair.public);
        let reread = keyfile::parse_public_key(&public_text).unwrap();
        prop_assert_eq!(keyfile::write_public_key(&reread), public_text.clone());

        let private_text = keyfile::write_private_key(&pair.private);
        let reread = keyfile::parse_private_key(&private_text).unwrap();
        prop_assert_eq!(keyfile::write_private_key(&reread), private_text);

        let mut rng = ChaCha12Rng::seed_from_u64(msg_seed);
        let x = params.group().random(&mut rng);
        let ct = mst3::encrypt(&pair.public, &x, &mut rng).unwrap();
        let ct_text = keyfile::write_ciphertext(&ct);
        let reread = keyfile::parse_ciphertext(params.group(), &ct_text).unwrap();
        prop_assert_eq!(keyfile::write_ciphertext(&reread), ct_text);

        // A file that parses must also still decrypt.
        let pk = keyfile::parse_public_key(&public_text).unwrap();
        prop_assert_eq!(mst3::decrypt(&pk, &pair.private, &reread).unwrap(), x);
    }
}
