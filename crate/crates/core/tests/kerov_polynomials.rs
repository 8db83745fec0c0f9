use kerov_core::diagram::{free_cumulants, Partition};
use kerov_core::kerov::{
    generalized_kerov, is_kerov_shaped, kerov_polynomial, linear_coefficient, prime_divisibility_report,
    quadratic_coefficient, quadratic_labelled_count,
};
use kerov_core::oracle::{cycle_cumulant, normalized_character};
use kerov_core::{CumulantPolynomial, Monomial};
use num_rational::BigRational;
use num_traits::One;

fn r(i: u32) -> CumulantPolynomial {
    CumulantPolynomial::var(i)
}

fn c(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn poly(terms: &[(&[u32], i64)]) -> CumulantPolynomial {
    CumulantPolynomial::from_terms(terms.iter().map(|(idx, v)| (Monomial::from_indices(idx), c(*v))))
}

#[test]
fn displayed_kerov_polynomials() {
    let expected = [
        poly(&[(&[2], 1)]),
        poly(&[(&[3], 1)]),
        poly(&[(&[4], 1), (&[2], 1)]),
        poly(&[(&[5], 1), (&[3], 5)]),
        poly(&[(&[6], 1), (&[4], 15), (&[2, 2], 5), (&[2], 8)]),
        poly(&[(&[7], 1), (&[5], 35), (&[3, 2], 35), (&[3], 84)]),
    ];
    for (k, want) in (1..).zip(expected) {
        assert_eq!(kerov_polynomial(k).unwrap().polynomial, want, "K_{k}");
    }
    assert_eq!(
        kerov_polynomial(6).unwrap().polynomial.to_latex("R"),
        "R_7 + 35R_5 + 35R_3R_2 + 84R_3"
    );
}

#[test]
fn structural_invariants() {
    for k in 1..=7usize {
        let res = kerov_polynomial(k).unwrap();
        let p = &res.polynomial;
        assert!(is_kerov_shaped(p), "K_{k} = {}", p.to_text("R"));
        assert_eq!(p.coefficient(&Monomial::var(k as u32 + 1)), BigRational::one());
        for (m, _) in p.terms() {
            assert!(m.degree() <= k as u32 + 1);
            assert_eq!(m.degree() % 2, (k as u32 + 1) % 2, "parity of {m:?} in K_{k}");
        }
        assert_eq!(res.stats.visited, (1..=k as u64).product::<u64>());
    }
}

#[test]
fn master_identity_on_small_partitions() {
    let polys: Vec<CumulantPolynomial> = (1..=6).map(|k| kerov_polynomial(k).unwrap().polynomial).collect();
    for n in 1..=8 {
        for lambda in Partition::all_of_size(n) {
            let rr = free_cumulants(&lambda.to_multirectangular(), 8);
            for (k, kk) in (1..=6u32).zip(&polys) {
                let via_poly = kk.evaluate(|i| rr.get(i as usize));
                let oracle = normalized_character(&lambda, &[k]).unwrap();
                assert_eq!(via_poly, oracle, "λ = {lambda}, k = {k}");
            }
        }
    }
}

#[test]
fn linear_terms_match() {
    for k in 1..=7usize {
        let p = kerov_polynomial(k).unwrap().polynomial;
        for l in 2..=k + 1 {
            let want = p.coefficient(&Monomial::var(l as u32));
            assert_eq!(c(linear_coefficient(k, l) as i64), want, "k = {k}, l = {l}");
        }
    }
    assert_eq!(linear_coefficient(5, 2), 8);
    assert_eq!(linear_coefficient(6, 3), 84);
}

#[test]
fn quadratic_terms_match() {
    for k in 1..=7usize {
        let p = kerov_polynomial(k).unwrap().polynomial;
        for l1 in 2..=k as u32 {
            for l2 in 2..=l1 {
                let want = p.coefficient(&Monomial::from_indices(&[l1, l2]));
                let got = quadratic_coefficient(k, l1 as usize, l2 as usize);
                assert_eq!(c(got as i64), want, "k = {k}, ({l1}, {l2})");
                let labelled = quadratic_labelled_count(k, l1 as usize, l2 as usize);
                let factor = if l1 == l2 { 2 } else { 1 };
                assert_eq!(labelled, factor * got);
            }
        }
    }
    assert_eq!(quadratic_coefficient(6, 2, 3), 35);
    assert_eq!(quadratic_coefficient(6, 3, 2), 35);
}

#[test]
fn prime_divisibility() {
    let (a, b) = prime_divisibility_report(3).unwrap();
    assert_eq!(a, r(2));
    assert!(b.is_zero());
    let (a, b) = prime_divisibility_report(5).unwrap();
    assert_eq!(a, poly(&[(&[4], 3), (&[2, 2], 1), (&[2], 2)]));
    assert_eq!(b, r(3));
    let (_, b) = prime_divisibility_report(7).unwrap();
    assert_eq!(b, poly(&[(&[5], 5), (&[3, 2], 5), (&[3], 12)]));
}

#[test]
fn generalized_polynomials_match_cumulants() {
    assert_eq!(generalized_kerov(&[1, 1]).unwrap().polynomial, r(2));
    let specs: Vec<Vec<usize>> = vec![
        vec![2, 1],
        vec![1, 1, 1],
        vec![2, 2],
        vec![3, 1],
        vec![2, 1, 1],
        vec![3, 2],
        vec![4, 1],
    ];
    for parts in specs {
        let res = generalized_kerov(&parts).unwrap();
        assert!(is_kerov_shaped(&res.polynomial), "{parts:?}");
        let ks: Vec<u32> = parts.iter().map(|&p| p as u32).collect();
        let sign = if parts.len() % 2 == 1 { c(1) } else { c(-1) };
        for n in 1..=7 {
            for lambda in Partition::all_of_size(n) {
                let rr = free_cumulants(&lambda.to_multirectangular(), 8);
                let via_poly = res.polynomial.evaluate(|i| rr.get(i as usize));
                let oracle = &sign * cycle_cumulant(&lambda, &ks).unwrap();
                assert_eq!(via_poly, oracle, "parts {parts:?}, λ = {lambda}");
            }
        }
    }
}
