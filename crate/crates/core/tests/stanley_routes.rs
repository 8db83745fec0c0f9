use kerov_core::combinat::for_each_set_partition;
use kerov_core::diagram::Partition;
use kerov_core::kerov::kerov_polynomial;
use kerov_core::oracle::normalized_character;
use kerov_core::stanley::{
    kerov_s_derivative, kerov_via_derivatives, nn_quantity, quadratic_identity_sides, s_functional_stanley,
    stanley_character, stanley_multilinear, MultilinearCoefficients,
};
use kerov_core::CumulantPolynomial;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn evaluation_matches_oracle() {
    for k in 1..=5usize {
        let spoly = stanley_character(&[k], 3, false).unwrap();
        for n in 1..=7 {
            for lambda in Partition::all_of_size(n) {
                let d = lambda.to_multirectangular();
                if d.bands() > 3 {
                    continue;
                }
                let got = spoly.evaluate_on(&d).unwrap();
                let want = normalized_character(&lambda, &[k as u32]).unwrap();
                assert_eq!(got, want, "k = {k}, λ = {lambda}");
            }
        }
    }
}

#[test]
fn top_coefficients() {
    for k in 3..=4usize {
        let spoly = stanley_character(&[k], 1, false).unwrap();
        assert_eq!(spoly.coefficient(&[1], &[k as u32]), int(1));
    }
}

/// Both sides of `∂^l F/∂S_{k1}⋯∂S_{kl} = [p1 q1^{k1−1} ⋯ pl ql^{kl−1}] F`.
#[test]
fn coefficients_are_s_derivatives() {
    for k in 1..=6usize {
        let kk = kerov_polynomial(k).unwrap().polynomial;
        let table = stanley_multilinear(&[k], 3, false).unwrap();
        let top = k as u32 + 1;
        for k1 in 2..=top {
            assert_eq!(
                table.multilinear(&[k1 - 1]),
                kerov_s_derivative(&kk, &[k1]),
                "k = {k}, ({k1})"
            );
            for k2 in 2..=top {
                assert_eq!(
                    table.multilinear(&[k1 - 1, k2 - 1]),
                    kerov_s_derivative(&kk, &[k1, k2]),
                    "k = {k}, ({k1}, {k2})"
                );
                for k3 in 2..=top.saturating_sub(k1 + k2).max(2) {
                    assert_eq!(
                        table.multilinear(&[k1 - 1, k2 - 1, k3 - 1]),
                        kerov_s_derivative(&kk, &[k1, k2, k3])
                    );
                }
            }
        }
    }
    // the same statement for F = S_n
    for n in 2..=7u32 {
        let s = s_functional_stanley(n, 2);
        let as_poly = CumulantPolynomial::var(n);
        for k1 in 2..=8u32 {
            assert_eq!(s.multilinear(&[k1 - 1]), as_poly.derivative_at_zero(&[k1]));
            for k2 in 2..=8u32 {
                assert_eq!(s.multilinear(&[k1 - 1, k2 - 1]), as_poly.derivative_at_zero(&[k1, k2]));
            }
        }
    }
}

#[test]
fn s_functional_product_formula() {
    // [p_{i1} ⋯ p_{ir}] S_n = (−1)^{r−1} (n−1)_{r−1} q_{ir}^{n−r}
    for n in 2..=6u32 {
        let s = s_functional_stanley(n, 3);
        let falling = |r: u32| (0..r - 1).fold(1i64, |acc, i| acc * (n as i64 - 1 - i as i64));
        let sign = |r: u32| if r % 2 == 1 { 1 } else { -1 };
        for r in 1..=3u32.min(n - 1) {
            let mut p = vec![0u32; 3];
            for slot in p.iter_mut().take(r as usize) {
                *slot = 1;
            }
            let mut q = vec![0u32; 3];
            q[r as usize - 1] = n - r;
            assert_eq!(s.coefficient(&p, &q), int(sign(r) * falling(r)), "n = {n}, r = {r}");
        }
    }
}

#[test]
fn rightmost_leg_expansion() {
    // [p1 q1^{k1−1} ⋯ pm qm^{km−1}] Σ_k = Σ_Π N_{((Σ_b k_i, |b|))} over Π whose
    // blocks have all entries 1 except the last, which is ≥ 2
    for k in 1..=6usize {
        let table = stanley_multilinear(&[k], 3, false).unwrap();
        for m in 1..=3usize {
            let mut ks = vec![1u32; m];
            loop {
                let lhs = table.multilinear(&ks.iter().map(|&x| x - 1).collect::<Vec<_>>());
                let mut rhs = BigRational::zero();
                for_each_set_partition(m, |blocks| {
                    let ok = blocks.iter().all(|b| {
                        let last = *b.last().unwrap();
                        ks[last] >= 2 && b[..b.len() - 1].iter().all(|&i| ks[i] == 1)
                    });
                    if ok {
                        let pairs: Vec<(u32, u32)> = blocks
                            .iter()
                            .map(|b| (b.iter().map(|&i| ks[i]).sum(), b.len() as u32))
                            .collect();
                        rhs += nn_quantity(&table, &pairs).unwrap();
                    }
                });
                // every index 1 is never the last of its block, so there must be some k_i ≥ 2
                if ks.iter().any(|&x| x >= 2) {
                    assert_eq!(lhs, rhs, "k = {k}, ks = {ks:?}");
                }
                // next ks in [1, k+1]^m
                let mut i = 0;
                while i < m {
                    ks[i] += 1;
                    if ks[i] <= k as u32 + 1 {
                        break;
                    }
                    ks[i] = 1;
                    i += 1;
                }
                if i == m {
                    break;
                }
            }
        }
    }
}

#[test]
fn routes_agree() {
    for k in 1..=7usize {
        let direct = kerov_polynomial(k).unwrap().polynomial;
        let dual = kerov_via_derivatives(k).unwrap();
        assert_eq!(direct, dual, "k = {k}");
    }
}

#[test]
fn quadratic_identity() {
    for k in 1..=7usize {
        for l1 in 2..=k as u32 + 1 {
            for l2 in 2..=k as u32 + 1 {
                let (a, b) = quadratic_identity_sides(k, l1, l2).unwrap();
                assert_eq!(a, b, "k = {k}, ({l1}, {l2})");
            }
        }
    }
    assert_eq!(quadratic_identity_sides(5, 2, 2).unwrap().0, int(10));
    assert_eq!(quadratic_identity_sides(6, 2, 3).unwrap().1, int(35));
    assert!(quadratic_identity_sides(3, 2, 2).unwrap().0.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_of_pairs_is_irrelevant(k in 2usize..=6, a in 2u32..=7, b in 2u32..=7) {
        let table = stanley_multilinear(&[k], 2, false).unwrap();
        prop_assert_eq!(table.multilinear(&[a - 1, b - 1]), table.multilinear(&[b - 1, a - 1]));
    }
}
