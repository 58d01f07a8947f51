//! The braid quasi-morphism against integer-matrix and Dedekind-sum oracles written from
//! the textbook definitions.

use kercal_core::braid::{
    dedekind_sum, linking_numbers, phi_b3, psl_image, rademacher, rademacher_phi, BraidWord, PslMatrix,
};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Signed;
use proptest::prelude::*;

type Mat = [i128; 4];

fn mat_mul(x: Mat, y: Mat) -> Mat {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

fn oracle_image(letters: &[i32]) -> Mat {
    let gen = |l: i32| -> Mat {
        match l {
            1 => [1, 1, 0, 1],
            -1 => [1, -1, 0, 1],
            2 => [1, 0, -1, 1],
            -2 => [1, 0, 1, 1],
            _ => unreachable!(),
        }
    };
    letters.iter().fold([1, 0, 0, 1], |m, &l| mat_mul(m, gen(l)))
}

/// Sign-normalized so that `c > 0`, or `c = 0` and `d > 0`.
fn normalize(m: Mat) -> Mat {
    if m[2] < 0 || (m[2] == 0 && m[3] < 0) {
        m.map(|x| -x)
    } else {
        m
    }
}

fn as_i128(m: &PslMatrix) -> Mat {
    m.entries().map(|x| x.to_string().parse().unwrap())
}

/// `((x))`: the centred sawtooth, zero at the integers.
fn sawtooth(num: i128, den: i128) -> BigRational {
    if num % den == 0 {
        return BigRational::from_integer(0.into());
    }
    let frac = BigRational::new(num.rem_euclid(den).into(), den.into());
    frac - BigRational::new(1.into(), 2.into())
}

fn dedekind_by_definition(h: i128, k: i128) -> BigRational {
    (1..k).map(|i| sawtooth(i, k) * sawtooth(h * i, k)).sum()
}

/// The classical Rademacher function from the Dedekind-sum formula.
fn phi_oracle(m: Mat) -> BigRational {
    let [a, b, c, d] = normalize(m);
    if c == 0 {
        return BigRational::new(b.into(), d.into());
    }
    BigRational::new((a + d).into(), c.into()) - BigRational::from_integer(12.into()) * dedekind_by_definition(d, c)
}

fn word(letters: &[i32]) -> BraidWord {
    BraidWord::new(3, letters.to_vec()).unwrap()
}

fn letters(max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2]), 0..=max_len)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn dedekind_sums_match_the_definition() {
    for k in 1..60i128 {
        for h in -k..2 * k {
            if gcd(h, k) == 1 {
                assert_eq!(
                    dedekind_sum(&BigInt::from(h), &BigInt::from(k)),
                    dedekind_by_definition(h, k),
                    "s({h},{k})"
                );
            }
        }
    }
}

#[test]
fn braid_relations_hold_in_the_image() {
    let lhs = psl_image(&word(&[1, 2, 1])).unwrap();
    let rhs = psl_image(&word(&[2, 1, 2])).unwrap();
    assert_eq!(lhs, rhs);
    assert!(psl_image(&word(&[1, 2, 1, 2, 1, 2])).unwrap().is_identity());
    assert!(!psl_image(&word(&[1, 2, 1, 2])).unwrap().is_identity());
}

#[test]
fn generator_values_and_full_twist() {
    assert_eq!(phi_b3(&word(&[1])).unwrap(), Rational64::from(0));
    assert_eq!(phi_b3(&word(&[2])).unwrap(), Rational64::from(0));
    let full = word(&[1, 2, 1, 2, 1, 2]);
    assert_eq!(phi_b3(&full).unwrap(), Rational64::from(-6));
    assert_eq!(
        linking_numbers(&full).unwrap(),
        vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
    );
}

#[test]
fn defect_is_attained_at_six() {
    let (g, h) = (word(&[1, 1]), word(&[2, 2]));
    let gap = phi_b3(&g.concat(&h)).unwrap() - phi_b3(&g).unwrap() - phi_b3(&h).unwrap();
    assert_eq!(gap, Rational64::from(-6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn image_matches_integer_matrices(l in letters(24)) {
        let m = psl_image(&word(&l)).unwrap();
        prop_assert_eq!(as_i128(&m), normalize(oracle_image(&l)));
    }

    #[test]
    fn classical_function_matches_dedekind_formula(l in letters(14)) {
        let m = psl_image(&word(&l)).unwrap();
        let expected = phi_oracle(oracle_image(&l));
        prop_assert_eq!(BigRational::from_integer(rademacher_phi(&m)), expected);
    }

    #[test]
    fn homogeneous_value_is_the_limit_of_powers(l in letters(6)) {
        // |Phi(A^n) - n * Phi_hom(A)| never exceeds the defect 3 of Phi. The brute-force
        // Dedekind sum is linear in |c|, so stop once the entries grow large.
        let a = oracle_image(&l);
        let hom = BigRational::from_integer(rademacher(&psl_image(&word(&l)).unwrap()).into());
        let mut power = [1, 0, 0, 1];
        for n in 1..=8i64 {
            power = mat_mul(power, a);
            if power[2].abs() > 20_000 {
                break;
            }
            let gap = phi_oracle(power) - hom.clone() * BigRational::from_integer(n.into());
            prop_assert!(gap.abs() <= BigRational::from_integer(3.into()), "n = {}, gap = {}", n, gap);
        }
    }

    #[test]
    fn quasi_morphism_invariants(a in letters(10), b in letters(10), k in 1i64..=20) {
        let (g, h) = (word(&a), word(&b));
        let phi = |w: &BraidWord| phi_b3(w).unwrap();
        prop_assert_eq!(phi(&g.pow(k)), phi(&g) * k);
        prop_assert_eq!(phi(&g.conjugate_by(&h)), phi(&g));
        prop_assert_eq!(phi(&g.inverse()), -phi(&g));
        let gap = phi(&g.concat(&h)) - phi(&g) - phi(&h);
        prop_assert!(gap.abs() <= Rational64::from(6));
    }
}
