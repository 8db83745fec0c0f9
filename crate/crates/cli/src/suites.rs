//! Verification suites. Each suite compares a computed quantity with an
//! independent route (character oracle, brute-force enumeration, or a second
//! derivation) and stops at the first counterexample.

use std::fmt;
use std::time::Instant;

use kerov_core::combinat::{compositions, integer_partitions, set_partitions};
use kerov_core::diagram::{dilate, free_cumulants, s_functionals};
use kerov_core::kerov::{
    generalized_kerov_with, kerov_polynomial_with, linear_coefficient, prime_divisibility_report,
    quadratic_coefficient, EnumerationOptions,
};
use kerov_core::marriage::{
    alternating_chain_sum, bad_family_for_coloring, bad_family_for_numbers, bad_family_for_partition, build_graph,
    condition_e, condition_e2, euler_characteristic, prune_disconnecting_edge, q_admissible, stirling_alternating_sum,
};
use kerov_core::oracle::{cycle_cumulant, normalized_character};
use kerov_core::perm::{enumerate_factorizations, long_cycle};
use kerov_core::series::{convert, goulden_rattan_l, moments_from_free_cumulants, r_from_s, s_from_r};
use kerov_core::stanley::{kerov_via_derivatives_with, quadratic_identity_check};
use kerov_core::{CumulantPolynomial, Monomial, MultiRectangular, Partition, SeriesRole, TruncatedSeries};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Kerov polynomials against Murnaghan–Nakayama characters.
    OracleIdentity,
    /// Factorization count against the Stanley-polynomial derivative route.
    DualRoute,
    /// Marriage condition against its matching and transportation forms.
    ConditionEquivalence,
    /// Euler characteristic, Stirling and inclusion–exclusion identities.
    Lemmas,
    /// Odd-prime divisibility of Kerov polynomials.
    Divisibility,
    /// Dilation homogeneity of free cumulants and S-functionals.
    Homogeneity,
    /// Exact conversions between moments, free cumulants and S-functionals.
    Calculus,
    /// Fast linear and quadratic coefficient counters.
    LinearQuadratic,
    /// Generalized Kerov polynomials against character cumulants.
    Generalized,
    /// Goulden–Rattan polynomials (reported).
    GouldenRattan,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::OracleIdentity,
        Suite::DualRoute,
        Suite::ConditionEquivalence,
        Suite::Lemmas,
        Suite::Divisibility,
        Suite::Homogeneity,
        Suite::Calculus,
        Suite::LinearQuadratic,
        Suite::Generalized,
        Suite::GouldenRattan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OracleIdentity => "oracle-identity",
            Suite::DualRoute => "dual-route",
            Suite::ConditionEquivalence => "condition-equivalence",
            Suite::Lemmas => "lemmas",
            Suite::Divisibility => "divisibility",
            Suite::Homogeneity => "homogeneity",
            Suite::Calculus => "calculus",
            Suite::LinearQuadratic => "linear-quadratic",
            Suite::Generalized => "generalized",
            Suite::GouldenRattan => "goulden-rattan",
        }
    }

    fn uses_seed(self) -> bool {
        matches!(self, Suite::Lemmas | Suite::Homogeneity | Suite::Calculus)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Largest `|λ|` fed to the character oracle.
    pub max_boxes: u32,
    /// Largest cycle length (or total of cycle lengths).
    pub max_k: usize,
    pub seed: u64,
    pub enumeration: EnumerationOptions,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_boxes: 8,
            max_k: 6,
            seed: 0,
            enumeration: EnumerationOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    /// Individual comparisons performed.
    pub checks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// First counterexample found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    /// Informational lines.
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

struct Run {
    checks: u64,
    notes: Vec<String>,
}

impl Run {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) -> Result<(), String> {
        self.checks += 1;
        if ok {
            Ok(())
        } else {
            Err(describe())
        }
    }

    fn note(&mut self, line: String) {
        self.notes.push(line);
    }
}

type Outcome = Result<(), String>;

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let mut run = Run {
        checks: 0,
        notes: Vec::new(),
    };
    let outcome = match suite {
        Suite::OracleIdentity => oracle_identity(&mut run, config),
        Suite::DualRoute => dual_route(&mut run, config),
        Suite::ConditionEquivalence => condition_equivalence(&mut run, config),
        Suite::Lemmas => lemmas(&mut run, config),
        Suite::Divisibility => divisibility(&mut run),
        Suite::Homogeneity => homogeneity(&mut run, config),
        Suite::Calculus => calculus(&mut run, config),
        Suite::LinearQuadratic => linear_quadratic(&mut run, config),
        Suite::Generalized => generalized(&mut run, config),
        Suite::GouldenRattan => goulden_rattan(&mut run, config),
    };
    SuiteReport {
        suite,
        passed: outcome.is_ok(),
        checks: run.checks,
        seed: suite.uses_seed().then_some(config.seed),
        failure: outcome.err(),
        notes: run.notes,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn kerov(k: usize, config: &VerifyConfig) -> Result<CumulantPolynomial, String> {
    kerov_polynomial_with(k, &config.enumeration)
        .map(|r| r.polynomial)
        .map_err(|e| e.to_string())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn oracle_identity(run: &mut Run, config: &VerifyConfig) -> Outcome {
    let polys = (1..=config.max_k)
        .map(|k| kerov(k, config))
        .collect::<Result<Vec<_>, _>>()?;
    for n in 1..=config.max_boxes {
        for lambda in Partition::all_of_size(n) {
            let rr = free_cumulants(&lambda.to_multirectangular(), config.max_k + 1);
            for (k, poly) in (1..).zip(&polys) {
                let got = poly.evaluate(|i| rr.get(i as usize));
                let want = normalized_character(&lambda, &[k]).map_err(|e| e.to_string())?;
                run.check(got == want, || {
                    format!("λ = {lambda}, k = {k}: K_k(R) = {got}, character = {want}")
                })?;
            }
        }
    }
    Ok(())
}

fn dual_route(run: &mut Run, config: &VerifyConfig) -> Outcome {
    for k in 1..=config.max_k {
        let direct = kerov(k, config)?;
        let dual = kerov_via_derivatives_with(k, &config.enumeration).map_err(|e| e.to_string())?;
        run.check(direct == dual, || {
            format!(
                "k = {k}: factorizations give {}, derivatives give {}",
                direct.to_text("R"),
                dual.to_text("R")
            )
        })?;
        for l1 in 2..=k as u32 + 1 {
            for l2 in 2..=l1 {
                let ok = quadratic_identity_check(k, l1, l2).map_err(|e| e.to_string())?;
                run.check(ok, || format!("quadratic identity fails at k = {k}, ({l1}, {l2})"))?;
            }
        }
    }
    Ok(())
}

fn condition_equivalence(run: &mut Run, config: &VerifyConfig) -> Outcome {
    let mut failure = None;
    for k in 1..=config.max_k {
        enumerate_factorizations(&long_cycle(k), |s1, s2| {
            if failure.is_some() {
                return;
            }
            let g = build_graph(s1, s2);
            let pruned = prune_disconnecting_edge(&g);
            for q in compositions((g.whites() + g.blacks()) as u32, g.blacks(), 2) {
                let e = condition_e(&g, &q);
                let e2 = condition_e2(&g, &q);
                let adm = q_admissible(&g, &q);
                let describe = || {
                    format!(
                        "σ1 = {s1:?}, σ2 = {s2:?}, q = {q:?}: (e) {e}, (e²) {e2}, admissible {adm}, pruned {pruned}"
                    )
                };
                if let Err(msg) = run.check(e == e2 && e == adm, describe) {
                    failure = Some(msg);
                    return;
                }
                if let Err(msg) = run.check(!(pruned && e), describe) {
                    failure = Some(msg);
                    return;
                }
            }
        });
        if let Some(msg) = failure {
            return Err(msg);
        }
    }
    Ok(())
}

/// `Σ (−1)^l` over all chains of the family, the empty chain included, by
/// direct search.
fn chain_sum_by_search(family: &[u32]) -> i64 {
    fn extend(family: &[u32], last: Option<u32>, sign: i64) -> i64 {
        let mut total = sign;
        for &s in family {
            if last.is_none_or(|l| l & s == l && l != s) {
                total += extend(family, Some(s), -sign);
            }
        }
        total
    }
    extend(family, None, 1)
}

fn closed_family(rng: &mut ChaCha8Rng, ground: u32, lattice: bool) -> Vec<u32> {
    if lattice {
        let count = rng.gen_range(1..=5);
        let mut family: Vec<u32> = (0..count).map(|_| rng.gen_range(0..1u32 << ground)).collect();
        family.sort_unstable();
        family.dedup();
        loop {
            let mut grown = family.clone();
            for &a in &family {
                for &b in &family {
                    for c in [a & b, a | b] {
                        if !grown.contains(&c) {
                            grown.push(c);
                        }
                    }
                }
            }
            if grown.len() == family.len() {
                return family;
            }
            family = grown;
        }
    }
    // sublevel set of a submodular coverage-minus-weight function
    let targets = rng.gen_range(1..=8);
    let cover: Vec<u32> = (0..ground).map(|_| rng.gen_range(0..1u32 << targets)).collect();
    let weight: Vec<i64> = (0..ground).map(|_| rng.gen_range(0..=3)).collect();
    (0..1u32 << ground)
        .filter(|&a| {
            let (n, w) = (0..ground)
                .filter(|&i| a >> i & 1 == 1)
                .fold((0u32, 0i64), |(n, w), i| {
                    (n | cover[i as usize], w + weight[i as usize])
                });
            n.count_ones() as i64 <= w
        })
        .collect()
}

fn lemmas(run: &mut Run, config: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut families = 0;
    while families < 200 {
        let ground = rng.gen_range(2..=8);
        let family = closed_family(&mut rng, ground, families % 2 == 0);
        if family.is_empty() {
            continue;
        }
        let closed = family.iter().all(|&a| {
            family
                .iter()
                .all(|&b| family.contains(&(a & b)) || family.contains(&(a | b)))
        });
        run.check(closed, || {
            format!("generated family lacks the closure property: {family:?}")
        })?;
        let chi = euler_characteristic(&family);
        run.check(chi == 1, || format!("χ = {chi} for the closed family {family:?}"))?;
        families += 1;
    }

    for n in 1..=12u32 {
        let got = stirling_alternating_sum(n);
        let want = if n % 2 == 0 { 1 } else { -1 };
        run.check(got == want, || format!("Stirling alternating sum for n = {n} is {got}"))?;
    }

    for k in 1..=config.max_k.min(6) {
        let mut failure = None;
        enumerate_factorizations(&long_cycle(k), |s1, s2| {
            let g = build_graph(s1, s2);
            for q in compositions((g.whites() + g.blacks()) as u32, g.blacks(), 2) {
                let bad = bad_family_for_coloring(&g, &q);
                let got = alternating_chain_sum(&bad);
                let want = i64::from(bad.is_empty());
                if failure.is_none() {
                    if let Err(m) = run.check(got == want && bad.is_empty() == condition_e(&g, &q), || {
                        format!("σ1 = {s1:?}, σ2 = {s2:?}, q = {q:?}: chain sum {got}")
                    }) {
                        failure = Some(m);
                    }
                }
            }
        });
        if let Some(m) = failure {
            return Err(m);
        }
    }

    for r in 1..=5usize {
        for trial in 0..100 {
            let n: Vec<i64> = (0..r).map(|_| rng.gen_range(-2..=4)).collect();
            let mut k = n.clone();
            if trial % 2 == 1 {
                k = (0..r).map(|_| rng.gen_range(-2..=4)).collect();
                k[r - 1] += n.iter().sum::<i64>() - k.iter().sum::<i64>();
            }
            let bad = bad_family_for_numbers(&k, &n);
            let want = if k == n {
                if r % 2 == 1 {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            let got = chain_sum_by_search(&bad);
            let fast = alternating_chain_sum(&bad);
            run.check(got == want && fast == want, || {
                format!("numbers k = {k:?}, n = {n:?}: chain sum {got} (engine {fast}), expected {want}")
            })?;
        }
    }

    for r in 1..=5usize {
        for blocks in set_partitions(r) {
            for trial in 0..20 {
                let n: Vec<i64> = (0..r).map(|_| rng.gen_range(2..=5)).collect();
                let exact: Vec<i64> = blocks.iter().map(|b| b.iter().map(|&i| n[i]).sum()).collect();
                let mut phi = exact.clone();
                if trial % 2 == 1 {
                    let shift = rng.gen_range(-3..=3);
                    let last = phi.len() - 1;
                    phi[0] += shift;
                    phi[last] -= shift;
                }
                if phi.iter().zip(&blocks).any(|(&f, b)| f < b.len() as i64) {
                    continue;
                }
                let bad = bad_family_for_partition(&blocks, &phi, &n);
                let want = match (phi == exact, blocks.len() % 2) {
                    (false, _) => 0,
                    (true, 1) => 1,
                    (true, _) => -1,
                };
                let got = chain_sum_by_search(&bad);
                let fast = alternating_chain_sum(&bad);
                run.check(got == want && fast == want, || {
                    format!("partition {blocks:?}, φ = {phi:?}, n = {n:?}: chain sum {got} (engine {fast}), expected {want}")
                })?;
            }
        }
    }
    Ok(())
}

fn divisibility(run: &mut Run) -> Outcome {
    for p in [3u32, 5, 7] {
        let result = prime_divisibility_report(p);
        run.check(result.is_ok(), || format!("p = {p}: {}", result.as_ref().unwrap_err()))?;
        let (a, b) = result.expect("checked");
        run.note(format!("(K{p} - R{} + 2 R2)/{p} = {}", p + 1, a.to_text("R")));
        run.note(format!("(K{} - R{p})/{p} = {}", p - 1, b.to_text("R")));
    }
    Ok(())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_diagram(rng: &mut ChaCha8Rng) -> MultiRectangular {
    let bands = rng.gen_range(1..=3);
    let p: Vec<BigRational> = (0..bands)
        .map(|_| ratio(rng.gen_range(1..=6), rng.gen_range(1..=3)))
        .collect();
    let mut q: Vec<BigRational> = (0..bands)
        .map(|_| ratio(rng.gen_range(1..=6), rng.gen_range(1..=3)))
        .collect();
    q.sort_by(|a, b| b.cmp(a));
    MultiRectangular::normalized(p, q).expect("positive entries")
}

fn homogeneity(run: &mut Run, config: &VerifyConfig) -> Outcome {
    const ORDER: usize = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..50 {
        let d = random_diagram(&mut rng);
        let r = free_cumulants(&d, ORDER);
        let sf = s_functionals(&d, ORDER);
        for s in [int(2), ratio(3, 2)] {
            let big = dilate(&d, &s).map_err(|e| e.to_string())?;
            let rb = free_cumulants(&big, ORDER);
            let sb = s_functionals(&big, ORDER);
            for k in 1..=ORDER {
                let factor = num_traits::pow(s.clone(), k);
                let want = r.get(k) * &factor;
                run.check(rb.get(k) == want, || {
                    format!(
                        "diagram {:?} dilated by {s}: R_{k} = {}, expected {want}",
                        d.to_json(),
                        rb.get(k)
                    )
                })?;
                let want = sf.get(k) * &factor;
                run.check(sb.get(k) == want, || {
                    format!(
                        "diagram {:?} dilated by {s}: S_{k} = {}, expected {want}",
                        d.to_json(),
                        sb.get(k)
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn is_non_crossing(blocks: &[Vec<usize>]) -> bool {
    blocks.iter().enumerate().all(|(i, a)| {
        blocks[i + 1..].iter().all(|b| {
            !a.iter().any(|&a1| {
                a.iter()
                    .any(|&a2| b.iter().any(|&b1| b.iter().any(|&b2| a1 < b1 && b1 < a2 && a2 < b2)))
                    || b.iter()
                        .any(|&b1| b.iter().any(|&b2| a.iter().any(|&a2| b1 < a1 && a1 < b2 && b2 < a2)))
            })
        })
    })
}

fn random_series(rng: &mut ChaCha8Rng, role: SeriesRole, order: usize) -> TruncatedSeries {
    let coeffs = (0..order)
        .map(|_| ratio(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
        .collect();
    TruncatedSeries::new(role, coeffs)
}

fn calculus(run: &mut Run, config: &VerifyConfig) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(1));
    let err = |e: kerov_core::Error| e.to_string();
    for _ in 0..30 {
        let r = random_series(&mut rng, SeriesRole::FreeCumulants, 10);
        let s = s_from_r(&r).map_err(err)?;
        let m = convert(&r, SeriesRole::Moments).map_err(err)?;
        let ok = r_from_s(&s).map_err(err)? == r
            && convert(&m, SeriesRole::FreeCumulants).map_err(err)? == r
            && convert(&m, SeriesRole::SFunctionals).map_err(err)? == s
            && convert(&s, SeriesRole::Moments).map_err(err)? == m;
        run.check(ok, || format!("roundtrip fails for free cumulants {:?}", r.to_json()))?;
    }
    let non_crossing: Vec<Vec<Vec<Vec<usize>>>> = (1..=8)
        .map(|n| set_partitions(n).into_iter().filter(|p| is_non_crossing(p)).collect())
        .collect();
    for _ in 0..10 {
        let r = random_series(&mut rng, SeriesRole::FreeCumulants, 8);
        let m = moments_from_free_cumulants(&r).map_err(err)?;
        for (n, parts) in (1..).zip(&non_crossing) {
            let brute: BigRational = parts
                .iter()
                .map(|p| p.iter().map(|b| r.get(b.len())).product::<BigRational>())
                .sum();
            run.check(m.get(n) == brute, || {
                format!(
                    "M_{n} = {} but the non-crossing sum is {brute} for {:?}",
                    m.get(n),
                    r.to_json()
                )
            })?;
        }
    }
    Ok(())
}

fn linear_quadratic(run: &mut Run, config: &VerifyConfig) -> Outcome {
    for k in 1..=config.max_k {
        let poly = kerov(k, config)?;
        for l in 2..=k + 1 {
            let got = linear_coefficient(k, l);
            let want = poly.coefficient(&Monomial::var(l as u32));
            run.check(int(got as i64) == want, || {
                format!("k = {k}: linear counter gives {got} for R{l}, polynomial has {want}")
            })?;
        }
        for l1 in 2..=k {
            for l2 in 2..=l1 {
                let got = quadratic_coefficient(k, l1, l2);
                let want = poly.coefficient(&Monomial::from_indices(&[l1 as u32, l2 as u32]));
                run.check(int(got as i64) == want, || {
                    format!("k = {k}: quadratic counter gives {got} for R{l1} R{l2}, polynomial has {want}")
                })?;
            }
        }
    }
    if config.max_k >= 6 {
        for (k, l, want) in [(5, 2, 8u64), (6, 3, 84)] {
            let got = linear_coefficient(k, l);
            run.check(got == want, || {
                format!("linear coefficient of R{l} in K_{k} is {got}, expected {want}")
            })?;
        }
        let got = quadratic_coefficient(6, 3, 2);
        run.check(got == 35, || {
            format!("coefficient of R3 R2 in K_6 is {got}, expected 35")
        })?;
    }
    Ok(())
}

fn generalized(run: &mut Run, config: &VerifyConfig) -> Outcome {
    let err = |e: kerov_core::Error| e.to_string();
    let two = generalized_kerov_with(&[1, 1], &config.enumeration)
        .map_err(err)?
        .polynomial;
    run.check(two == CumulantPolynomial::var(2), || {
        format!("K_(1,1) = {}", two.to_text("R"))
    })?;
    for total in 1..=config.max_k as u32 {
        for parts in integer_partitions(total, 1, total) {
            let parts: Vec<usize> = parts.iter().map(|&p| p as usize).collect();
            let poly = generalized_kerov_with(&parts, &config.enumeration)
                .map_err(err)?
                .polynomial;
            let ks: Vec<u32> = parts.iter().map(|&p| p as u32).collect();
            let sign = if parts.len() % 2 == 1 { int(1) } else { int(-1) };
            for n in 1..=config.max_boxes {
                for lambda in Partition::all_of_size(n) {
                    let rr = free_cumulants(&lambda.to_multirectangular(), total as usize + parts.len());
                    let got = poly.evaluate(|i| rr.get(i as usize));
                    let want = &sign * cycle_cumulant(&lambda, &ks).map_err(err)?;
                    run.check(got == want, || {
                        format!("cycles {parts:?}, λ = {lambda}: polynomial gives {got}, signed cumulant {want}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn goulden_rattan(run: &mut Run, config: &VerifyConfig) -> Outcome {
    let c = CumulantPolynomial::var;
    let top = config.max_k.max(7);
    let mut derived = Vec::new();
    for k in 2..=top as u32 {
        let l = goulden_rattan_l(k, &kerov(k as usize, config)?);
        let verdict = if l.all_nonnegative() {
            "nonnegative"
        } else {
            "has negative coefficients"
        };
        run.note(format!("L_{k} = {} ({verdict})", l.to_text("C")));
        derived.push(l);
    }
    let l3 = &derived[1];
    let l4 = &derived[2];
    run.check(*l3 == c(2), || format!("L_3 = {}, expected C2", l3.to_text("C")))?;
    let want = c(3).scale(&ratio(5, 2));
    run.check(*l4 == want, || format!("L_4 = {}, expected 5/2 C3", l4.to_text("C")))?;
    run.check(derived[0].is_zero(), || {
        format!("L_2 = {}, expected 0", derived[0].to_text("C"))
    })?;
    Ok(())
}
