//! Analytic functions and statistical experiments: binary entropy and its
//! inverse, the feasibility function g(p), parity-sum probabilities, the
//! first-moment codeword count, and rank-statistics experiments on sparse
//! random matrices.
//!
//! Log bases are mixed deliberately, following each formula's own notation:
//! the binary entropy `h` and the printed logs of `g(p)` are base 2, while
//! the default-log entropy `H` (used for `e' = H^{-1}(p)`), the Bernoulli
//! density `w log(n)/n`, and the quantity `a = 1 - 2 w log(n)/n` are natural.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use crate::f2la::{sample_bernoulli_matrix, subseed};
use crate::parallel::run_trials;

/// z for a two-sided 95% interval.
pub const Z_95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("argument {0} outside domain {1}")]
    Domain(f64, &'static str),
    #[error("count argument {0} outside domain {1}")]
    DomainCount(u64, &'static str),
    #[error("need at least one trial")]
    NoTrials,
}

/// Binary entropy `h(x) = -x log2(x) - (1-x) log2(1-x)`, with h(0) = h(1) = 0.
pub fn binary_entropy(x: f64) -> Result<f64, AnalysisError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(AnalysisError::Domain(x, "[0, 1]"));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

/// The unique `e' in (0, 1/2]` with `h(e') = y`, by bisection to 1e-12.
pub fn entropy_inverse(y: f64) -> Result<f64, AnalysisError> {
    bisect_inverse(y, binary_entropy)
}

/// Natural-log binary entropy `-x log(x) - (1-x) log(1-x)`, written `H`
/// here, as opposed to the base-2 `h`.
pub fn natural_entropy(x: f64) -> Result<f64, AnalysisError> {
    Ok(binary_entropy(x)? * std::f64::consts::LN_2)
}

/// The unique `e' in (0, 1/2]` with `H(e') = y` (natural log), `0 < y <= ln 2`.
pub fn natural_entropy_inverse(y: f64) -> Result<f64, AnalysisError> {
    if !(y > 0.0 && y <= std::f64::consts::LN_2) {
        return Err(AnalysisError::Domain(y, "(0, ln 2]"));
    }
    bisect_inverse(y, natural_entropy)
}

fn bisect_inverse(
    y: f64,
    f: fn(f64) -> Result<f64, AnalysisError>,
) -> Result<f64, AnalysisError> {
    if !(y > 0.0 && y <= f(0.5)?) {
        return Err(AnalysisError::Domain(y, "(0, f(1/2)]"));
    }
    if y == f(0.5)? {
        // the entropy curve is flat to double precision near 1/2, so
        // bisection cannot pin the endpoint itself
        return Ok(0.5);
    }
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Feasibility of the capacity-approaching construction at erasure
/// probability `p`, evaluated at the capacity-boundary parameters
/// `alpha = 2p`, `beta = p`.
#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityReport {
    pub p: f64,
    /// `H^{-1}(p)` under the natural-log entropy `H`, the relative distance
    /// floor of the restricted code.
    pub epsilon_prime: f64,
    pub g_value: f64,
    /// Some positive rate below capacity exists: `1 - 2p > 0`.
    pub rate_condition: bool,
    /// `(1-beta) h(e'/(1-beta)) < alpha - beta` at `alpha = 2p`, `beta = p`.
    pub restricted_distance_condition: bool,
    /// `h(e') < alpha` at `alpha = 2p`.
    pub entropy_condition: bool,
}

/// The exponent-sign function deciding whether the union bound on coset
/// collisions vanishes:
/// `g(p) = 1 - 2p - e' + log2(1 - e'/(1-p)) ((1-p) - e') + log2(2e'/(1-p)) e'`.
///
/// The printed logs in the formula are base 2, but `e' = H^{-1}(p)` uses the
/// natural-log entropy (the default log elsewhere in the derivation). The
/// base-2 reading of `e'` would put the sign change of g near p = 0.347,
/// contradicting the claimed negativity on (0.33, 1/2); the natural-log
/// reading puts it near p = 0.305, matching the claim.
pub fn g_of_p(p: f64) -> Result<FeasibilityReport, AnalysisError> {
    if !(p > 0.0 && p < 0.5) {
        return Err(AnalysisError::Domain(p, "(0, 1/2)"));
    }
    let eps = natural_entropy_inverse(p)?;
    assert!(eps < 1.0 - p, "h^{{-1}}(p) < 1 - p must hold for p < 1/2");
    let g_value = 1.0 - 2.0 * p - eps
        + (1.0 - eps / (1.0 - p)).log2() * ((1.0 - p) - eps)
        + (2.0 * eps / (1.0 - p)).log2() * eps;
    let alpha = 2.0 * p;
    let beta = p;
    Ok(FeasibilityReport {
        p,
        epsilon_prime: eps,
        g_value,
        rate_condition: 1.0 - 2.0 * p > 0.0,
        restricted_distance_condition: (1.0 - beta)
            * binary_entropy(eps / (1.0 - beta))?
            < alpha - beta,
        entropy_condition: binary_entropy(eps)? < alpha,
    })
}

/// Independent route to the same quantity: algebraically,
/// `g(p) = 1 - 2p - (1-p) h(e'/(1-p))`, with `e'` recovered by Newton
/// iteration on the natural-log entropy instead of bisection. Used to
/// cross-check [`g_of_p`].
pub fn g_of_p_alternate(p: f64) -> Result<f64, AnalysisError> {
    if !(p > 0.0 && p < 0.5) {
        return Err(AnalysisError::Domain(p, "(0, 1/2)"));
    }
    // Newton on H(e) - p = 0; H'(e) = log((1-e)/e).
    let mut eps = 0.25f64;
    for _ in 0..200 {
        let f = natural_entropy(eps)? - p;
        let df = ((1.0 - eps) / eps).ln();
        let next = (eps - f / df).clamp(1e-15, 0.5);
        if (next - eps).abs() < 1e-15 {
            eps = next;
            break;
        }
        eps = next;
    }
    Ok(1.0 - 2.0 * p - (1.0 - p) * binary_entropy(eps / (1.0 - p))?)
}

/// Probability that a sum of `k` independent Bernoulli(p) bits is odd:
/// `(1 - (1-2p)^k) / 2`.
pub fn parity_sum_prob(k: u64, p_bit: f64) -> Result<f64, AnalysisError> {
    if k < 1 {
        return Err(AnalysisError::DomainCount(k, "k >= 1"));
    }
    if !(0.0..=1.0).contains(&p_bit) {
        return Err(AnalysisError::Domain(p_bit, "[0, 1]"));
    }
    Ok((1.0 - (1.0 - 2.0 * p_bit).powi(k as i32)) / 2.0)
}

/// Probability that a sum of `k` i.i.d. Bernoulli(p) vectors of length
/// `n_cols` equals a fixed word of weight `g`:
/// `2^{-n} (1 + (1-2p)^k)^{n-g} (1 - (1-2p)^k)^g`, evaluated in log space.
pub fn coset_hit_prob(n_cols: u64, k: u64, g: u64, p_bit: f64) -> Result<f64, AnalysisError> {
    if k < 1 {
        return Err(AnalysisError::DomainCount(k, "k >= 1"));
    }
    if g > n_cols {
        return Err(AnalysisError::DomainCount(g, "g <= n_cols"));
    }
    if !(0.0..=1.0).contains(&p_bit) {
        return Err(AnalysisError::Domain(p_bit, "[0, 1]"));
    }
    let t = (1.0 - 2.0 * p_bit).powi(k as i32);
    let plus = (1.0 + t) / 2.0;
    let minus = (1.0 - t) / 2.0;
    if minus == 0.0 {
        return Ok(if g == 0 { plus.powi(n_cols as i32) } else { 0.0 });
    }
    if plus == 0.0 {
        return Ok(if g == n_cols { minus.powi(n_cols as i32) } else { 0.0 });
    }
    let ln_p = (n_cols - g) as f64 * plus.ln() + g as f64 * minus.ln();
    Ok(ln_p.exp())
}

/// First-moment count of low-weight codewords:
/// `sum_{k=1}^{floor(eps n)} C(n,k) ((1 + a^k)/2)^{alpha n}` with
/// `a = 1 - 2 w log(n)/n` (natural log), evaluated in log space with
/// compensated summation.
pub fn expected_low_weight_words(
    n: u64,
    alpha: f64,
    w: f64,
    eps: f64,
) -> Result<f64, AnalysisError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(AnalysisError::Domain(alpha, "(0, 1)"));
    }
    if eps < 0.0 {
        return Err(AnalysisError::Domain(eps, "eps >= 0"));
    }
    let nf = n as f64;
    let a = 1.0 - 2.0 * w * nf.ln() / nf;
    if a <= 0.0 {
        return Err(AnalysisError::Domain(a, "a = 1 - 2w log(n)/n > 0"));
    }
    let k_max = (eps * nf).floor() as u64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 1..=k_max.min(n) {
        let ln_choose =
            ln_gamma(nf + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0);
        let term = (ln_choose + alpha * nf * ((1.0 + a.powi(k as i32)) / 2.0).ln()).exp();
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Ok(sum)
}

/// Wilson score interval for `successes / trials` at normal quantile `z`.
pub fn wilson_ci(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0, "wilson_ci needs at least one trial");
    let n = trials as f64;
    let p_hat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n)).sqrt();
    // rounding can leave a stray epsilon at the exact endpoints
    let lo = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

/// A Monte Carlo failure-rate estimate with a 95% Wilson interval.
#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloEstimate {
    pub trials: u64,
    pub failures: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl MonteCarloEstimate {
    pub fn from_counts(failures: u64, trials: u64, seed: u64) -> Self {
        let (ci_low, ci_high) = wilson_ci(failures, trials, Z_95);
        Self {
            trials,
            failures,
            point: failures as f64 / trials as f64,
            ci_low,
            ci_high,
            seed,
        }
    }
}

/// Fraction of `floor(alpha n) x n` Bernoulli(`w log(n)/n`) matrices that are
/// not of full row rank.
pub fn kolchin_experiment(
    n: u64,
    alpha: f64,
    w: f64,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<MonteCarloEstimate, AnalysisError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(AnalysisError::Domain(alpha, "(0, 1)"));
    }
    if trials < 1 {
        return Err(AnalysisError::NoTrials);
    }
    let rows = ((alpha * n as f64).floor() as usize).max(1);
    let cols = n as usize;
    let q = bernoulli_density(n, w);
    let outcomes = run_trials(trials, threads, |t| {
        let m = sample_bernoulli_matrix(rows, cols, q, subseed(seed, t))
            .expect("density is clamped to [0, 1]");
        m.rank() < rows
    });
    let failures = outcomes.into_iter().filter(|&f| f).count() as u64;
    Ok(MonteCarloEstimate::from_counts(failures, trials, seed))
}

/// `w log(n)/n` capped at 1 (the cap only binds at tiny n).
pub fn bernoulli_density(n: u64, w: f64) -> f64 {
    (w * (n as f64).ln() / n as f64).clamp(0.0, 1.0)
}

/// Per-sample weight statistics of a random graph code against the
/// polylogarithmic thresholds.
#[derive(Clone, Debug, Serialize)]
pub struct WeightSample {
    pub max_row_weight: usize,
    pub max_degree: usize,
    pub max_generator_weight: usize,
    /// `log^{1+zeta}(n)`, natural log.
    pub row_threshold: f64,
    /// `log^{2+2zeta}(n)`, natural log.
    pub generator_threshold: f64,
}

impl WeightSample {
    pub fn rows_within(&self) -> bool {
        (self.max_row_weight as f64) <= self.row_threshold
    }

    pub fn degrees_within(&self) -> bool {
        (self.max_degree as f64) <= self.row_threshold
    }

    pub fn generators_within(&self) -> bool {
        (self.max_generator_weight as f64) <= self.generator_threshold
    }
}

/// Samples `(H, G)` pairs from the construction ensemble and reports the
/// stabilizer weight statistics of each resulting graph code.
pub fn weight_statistics(
    n: u64,
    rate: f64,
    w: f64,
    zeta: f64,
    samples: u64,
    seed: u64,
    threads: usize,
) -> Result<Vec<WeightSample>, AnalysisError> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(AnalysisError::Domain(rate, "(0, 1)"));
    }
    if samples < 1 {
        return Err(AnalysisError::NoTrials);
    }
    let q = bernoulli_density(n, w);
    let rows = (((1.0 - rate) * n as f64).round() as usize).max(1);
    let log_n = (n as f64).ln();
    let row_threshold = log_n.powf(1.0 + zeta);
    let generator_threshold = log_n.powf(2.0 + 2.0 * zeta);
    Ok(run_trials(samples, threads, |t| {
        let s = subseed(seed, t);
        let h = sample_bernoulli_matrix(rows, n as usize, q, subseed(s, 1))
            .expect("density is clamped");
        let graph = crate::graphs::Graph::sample_er(n as usize, q, subseed(s, 2))
            .expect("density is clamped");
        let max_degree = graph.max_degree();
        let max_row_weight = h.row_iter().map(|r| r.weight()).max().unwrap_or(0);
        let code = crate::codes::ParityCheckCode::from_parity_check(h)
            .expect("H is nonempty");
        let gc = crate::gcode::build_graph_code(graph, code)
            .expect("graph stabilizer products always commute");
        WeightSample {
            max_row_weight,
            max_degree,
            max_generator_weight: gc.max_generator_weight(),
            row_threshold,
            generator_threshold,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // direct evaluation of the formula at x = 0.11
        assert!((binary_entropy(0.11).unwrap() - 0.49992).abs() < 1e-4);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn entropy_symmetric_and_concave_on_grid() {
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let h = binary_entropy(x).unwrap();
            assert!((h - binary_entropy(1.0 - x).unwrap()).abs() < 1e-12);
            if i > 1 && i < 99 {
                let mid = binary_entropy(x).unwrap();
                let avg = 0.5
                    * (binary_entropy(x - 0.01).unwrap() + binary_entropy(x + 0.01).unwrap());
                assert!(mid >= avg);
            }
        }
    }

    #[test]
    fn entropy_inverse_roundtrip() {
        assert!((entropy_inverse(1.0).unwrap() - 0.5).abs() < 1e-10);
        for i in 1..=9 {
            let y = i as f64 / 10.0;
            let e = entropy_inverse(y).unwrap();
            assert!(e > 0.0 && e <= 0.5);
            assert!((binary_entropy(e).unwrap() - y).abs() < 1e-10);
        }
        assert!(entropy_inverse(0.0).is_err());
    }

    #[test]
    fn entropy_inverse_monotone() {
        let mut prev = 0.0;
        for i in 1..=100 {
            let e = entropy_inverse(i as f64 / 100.0).unwrap();
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn entropy_inverse_matches_grid_scan() {
        // 10^6-point scan of h as an independent oracle at y = 0.35.
        let y = 0.35;
        let mut best = (f64::MAX, 0.0);
        for i in 1..=1_000_000u64 {
            let x = i as f64 / 2_000_000.0; // (0, 0.5]
            let d = (binary_entropy(x).unwrap() - y).abs();
            if d < best.0 {
                best = (d, x);
            }
        }
        assert!((entropy_inverse(y).unwrap() - best.1).abs() < 1e-6);
    }

    #[test]
    fn g_negative_on_claimed_grid() {
        let mut p = 0.335;
        while p < 0.4955 {
            let report = g_of_p(p).unwrap();
            assert!(report.g_value < 0.0, "g({p}) = {}", report.g_value);
            assert!(report.rate_condition);
            assert!(report.entropy_condition);
            p += 0.005;
        }
        // no claim is made below 0.33; the sign does flip there
        assert!(g_of_p(0.29).unwrap().g_value > 0.0);
    }

    #[test]
    fn g_dual_routes_agree() {
        let mut p = 0.05;
        while p < 0.5 {
            let a = g_of_p(p).unwrap().g_value;
            let b = g_of_p_alternate(p).unwrap();
            assert!((a - b).abs() < 1e-9, "routes differ at p = {p}: {a} vs {b}");
            p += 0.01;
        }
    }

    #[test]
    fn g_reports_epsilon_invariant() {
        let r = g_of_p(0.4).unwrap();
        assert!(r.epsilon_prime > 0.0 && r.epsilon_prime <= 0.5);
        assert!((natural_entropy(r.epsilon_prime).unwrap() - 0.4).abs() < 1e-10);
        assert!(g_of_p(0.5).is_err());
        assert!(g_of_p(0.0).is_err());
    }

    #[test]
    fn natural_entropy_consistency() {
        assert!((natural_entropy(0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        for i in 1..=6 {
            let y = i as f64 / 10.0;
            let e = natural_entropy_inverse(y).unwrap();
            assert!((natural_entropy(e).unwrap() - y).abs() < 1e-10);
        }
        assert!(natural_entropy_inverse(0.7).is_err());
    }

    #[test]
    fn parity_sum_examples() {
        assert_eq!(parity_sum_prob(1, 0.3).unwrap(), 0.3);
        for k in 1..10 {
            assert!((parity_sum_prob(k, 0.5).unwrap() - 0.5).abs() < 1e-15);
        }
        // k = 2, p = 0.1: exactly one of two bits set, 2 * 0.1 * 0.9
        assert!((parity_sum_prob(2, 0.1).unwrap() - 0.18).abs() < 1e-15);
        assert!(parity_sum_prob(0, 0.1).is_err());
    }

    #[test]
    fn parity_sum_monotone_in_k_below_half() {
        let mut prev = 0.0;
        for k in 1..30 {
            let v = parity_sum_prob(k, 0.2).unwrap();
            assert!(v >= prev && v <= 0.5);
            prev = v;
        }
    }

    #[test]
    fn coset_hit_degenerate_cases() {
        assert_eq!(coset_hit_prob(5, 3, 0, 0.0).unwrap(), 1.0);
        assert_eq!(coset_hit_prob(5, 3, 2, 0.0).unwrap(), 0.0);
        assert!(coset_hit_prob(5, 0, 1, 0.3).is_err());
        assert!(coset_hit_prob(5, 1, 6, 0.3).is_err());
    }

    #[test]
    fn coset_hit_matches_brute_force() {
        // n = 4, k = 2, g = 1, p = 0.25: exhaust all 2^8 vector pairs.
        let (n, p) = (4usize, 0.25f64);
        let target = 0b0001u32; // weight 1
        let mut total = 0.0;
        for b1 in 0u32..16 {
            for b2 in 0u32..16 {
                if b1 ^ b2 != target {
                    continue;
                }
                let mut prob = 1.0;
                for bit in 0..n {
                    for b in [b1, b2] {
                        prob *= if (b >> bit) & 1 == 1 { p } else { 1.0 - p };
                    }
                }
                total += prob;
            }
        }
        let formula = coset_hit_prob(4, 2, 1, p).unwrap();
        assert!((formula - total).abs() < 1e-12, "{formula} vs {total}");
    }

    #[test]
    fn coset_hit_sums_to_one() {
        // Summing over all 2^n target words must give total probability 1.
        for n in 1..=10u64 {
            let mut total = 0.0;
            for g in 0..=n {
                let words_of_weight = {
                    let mut c = 1.0f64;
                    for i in 0..g {
                        c = c * (n - i) as f64 / (i + 1) as f64;
                    }
                    c
                };
                total += words_of_weight * coset_hit_prob(n, 3, g, 0.3).unwrap();
            }
            assert!((total - 1.0).abs() < 1e-9, "n = {n}: {total}");
        }
    }

    #[test]
    fn expected_words_empty_sum() {
        // eps * n < 1 leaves no terms.
        assert_eq!(expected_low_weight_words(16, 0.5, 1.0, 0.01).unwrap(), 0.0);
    }

    #[test]
    fn expected_words_monotone_in_eps() {
        let mut prev = 0.0;
        for i in 1..=8 {
            let v = expected_low_weight_words(16, 0.5, 1.0, i as f64 / 16.0).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn expected_words_rejects_bad_domains() {
        assert!(expected_low_weight_words(16, 1.5, 1.0, 0.2).is_err());
        // huge w drives a below zero
        assert!(expected_low_weight_words(16, 0.5, 10.0, 0.2).is_err());
    }

    #[test]
    fn wilson_interval_properties() {
        let (lo, hi) = wilson_ci(0, 100, Z_95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0, "CI never degenerate at zero failures");
        let (lo, hi) = wilson_ci(50, 100, Z_95);
        assert!(lo < 0.5 && hi > 0.5);
        let est = MonteCarloEstimate::from_counts(3, 10, 1);
        assert!(est.ci_low <= est.point && est.point <= est.ci_high);
    }

    #[test]
    fn kolchin_dense_matrices_full_rank() {
        // With the density capped at ~1 the matrix is (almost) all ones and
        // rank 1; use moderate density instead: q near 0.5 is almost surely
        // full row rank at alpha = 0.5.
        let est = kolchin_experiment(64, 0.5, 30.0, 50, 3, 1).unwrap();
        // w = 30 caps the density at 1.0 -> every matrix is all-ones, rank 1.
        assert_eq!(est.failures, est.trials);
        let est = kolchin_experiment(64, 0.5, 8.0, 50, 3, 1).unwrap();
        assert_eq!(est.failures, 0, "dense-ish random matrices are full rank");
    }

    #[test]
    fn kolchin_reproducible_and_parallel_invariant() {
        let a = kolchin_experiment(48, 0.5, 2.0, 40, 11, 1).unwrap();
        let b = kolchin_experiment(48, 0.5, 2.0, 40, 11, 4).unwrap();
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.point, b.point);
    }

    #[test]
    fn weight_statistics_reports() {
        let samples = weight_statistics(256, 0.25, 2.0, 0.25, 3, 5, 1).unwrap();
        assert_eq!(samples.len(), 3);
        for s in &samples {
            assert!(s.row_threshold > 0.0 && s.generator_threshold > s.row_threshold);
            assert!(s.max_generator_weight >= 1);
        }
    }
}
