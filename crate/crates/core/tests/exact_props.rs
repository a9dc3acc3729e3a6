//! Property tests for the exact substrate.

use eqc_core::codec::prefix::{decode_k, decode_rational, encode_k, encode_rational, BitString};
use eqc_core::exact::rational::{dyadic_rat, parse_rat, rat_to_string, Rat};
use eqc_core::exact::{gram_schmidt_exact, to_bigfloat, Radicand, SparseVec};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (any::<i64>(), 1..u32::MAX).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #[test]
    fn rational_string_round_trip(r in rat_strategy()) {
        let s = rat_to_string(&r);
        prop_assert_eq!(parse_rat(&s).unwrap(), r);
    }

    #[test]
    fn dyadic_rat_matches_generic_reduction(x in any::<i64>(), scale in 0u64..100) {
        let fast = dyadic_rat(BigInt::from(x), scale);
        let slow = Rat::new(BigInt::from(x), BigInt::one() << scale);
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn prefix_round_trip(k in 1u64..u64::MAX / 4, tail in 1u64..1000) {
        let mut bits = encode_k(k).unwrap();
        bits.extend(&encode_k(tail).unwrap());
        let (a, pos) = decode_k(&bits, 0).unwrap();
        let (b, end) = decode_k(&bits, pos).unwrap();
        prop_assert_eq!((a, b), (k, tail));
        prop_assert_eq!(end, bits.len());
    }

    #[test]
    fn rational_descriptor_round_trip(n in 1u64..100_000, d in 1u64..100_000) {
        let r = Rat::new(BigInt::from(n), BigInt::from(d));
        let bits = encode_rational(&r).unwrap();
        let (back, used) = decode_rational(&bits, 0).unwrap();
        prop_assert_eq!(back, r);
        prop_assert_eq!(used, bits.len());
    }

    #[test]
    fn bit_packing_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..200)) {
        let mut b = BitString::new();
        for bit in &bits {
            b.push(*bit);
        }
        let bytes = b.to_bytes();
        let back = BitString::from_bytes(&bytes, bits.len()).unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn sparse_ops_match_dense(
        a in proptest::collection::vec(-5i64..=5, 6),
        b in proptest::collection::vec(-5i64..=5, 6),
        c in -5i64..=5,
    ) {
        let ar: Vec<Rat> = a.iter().map(|&x| Rat::from_integer(x.into())).collect();
        let br: Vec<Rat> = b.iter().map(|&x| Rat::from_integer(x.into())).collect();
        let sa = SparseVec::from_dense(&ar);
        let sb = SparseVec::from_dense(&br);
        let cr = Rat::from_integer(c.into());
        // dot
        let dense_dot: Rat = ar.iter().zip(&br).map(|(x, y)| x * y).sum();
        prop_assert_eq!(sa.dot(&sb), dense_dot);
        // add_scaled
        let sum = sa.add_scaled(&cr, &sb);
        let dense_sum: Vec<Rat> = ar.iter().zip(&br).map(|(x, y)| x + &cr * y).collect();
        prop_assert_eq!(sum.to_dense(), dense_sum);
    }

    #[test]
    fn to_bigfloat_error_bounds(num in -1000i64..1000, den in 1i64..1000, n in 1u64..128) {
        let r = Rat::new(BigInt::from(num), BigInt::from(den));
        let bf = to_bigfloat(&Radicand::Rational(r.clone()), n).unwrap();
        let err = (bf.to_rat() - &r).abs();
        prop_assert!(err < Rat::new(BigInt::one(), BigInt::one() << n));
        if num >= 0 {
            let bf = to_bigfloat(&Radicand::SqrtRational(r.clone()), n).unwrap();
            // |v - sqrt(r)| < 2^-n checked by squaring outward.
            let v = bf.to_rat();
            let t = Rat::new(BigInt::one(), BigInt::one() << n);
            let lo = &v - &t;
            let hi = &v + &t;
            prop_assert!(&hi * &hi > r.clone() || hi.is_negative());
            if !lo.is_negative() {
                prop_assert!(&lo * &lo < r);
            }
        }
    }
}

#[test]
fn gram_schmidt_exactness_on_random_integer_sets() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 100 {
        let dim = rng.gen_range(2..7);
        let k = rng.gen_range(1..=dim);
        let vecs: Vec<SparseVec> = (0..k)
            .map(|_| {
                SparseVec::from_dense(
                    &(0..dim)
                        .map(|_| Rat::from_integer(rng.gen_range(-4i64..=4).into()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        if let Ok(basis) = gram_schmidt_exact(&vecs) {
            assert!(basis.is_exactly_orthonormal());
            done += 1;
        }
    }
}

#[test]
fn zero_k_encoding_rejected() {
    assert!(encode_k(0).is_err());
    assert!(encode_rational(&Rat::zero()).is_err());
    assert!(encode_rational(&Rat::from_integer((-2).into())).is_err());
}
