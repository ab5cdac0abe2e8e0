//! Significance tests and agreement/classification metrics.
//!
//! The incomplete gamma and beta functions are implemented via series and
//! continued-fraction expansions to within 1e-10 absolute error; p-values
//! below 1e-300 are clamped and flagged rather than reported as zero.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

use crate::error::StatsError;

/// Floor for reported p-values. Anything smaller is clamped and displayed as
/// "<1e-300".
pub const P_VALUE_FLOOR: f64 = 1e-300;

/// Which standard deviation a summary carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StdKind {
    Population,
    Sample,
}

/// Mean/std/n triple describing one sample.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SampleSummary {
    pub mean: f64,
    pub std: f64,
    pub n: u64,
    pub std_kind: StdKind,
}

impl SampleSummary {
    pub fn new(mean: f64, std: f64, n: u64, std_kind: StdKind) -> Result<Self, StatsError> {
        if n < 2 {
            return Err(StatsError::InvalidSummary(format!("n must be >= 2, got {}", n)));
        }
        if !(std >= 0.0) || !mean.is_finite() || !std.is_finite() {
            return Err(StatsError::InvalidSummary(format!("bad mean/std: {} / {}", mean, std)));
        }
        Ok(SampleSummary { mean, std, n, std_kind })
    }

    /// Sample variance of the mean's estimator numerator, s^2 with the n-1
    /// convention regardless of how the std was recorded.
    fn sample_variance(&self) -> f64 {
        let n = self.n as f64;
        match self.std_kind {
            StdKind::Sample => self.std * self.std,
            StdKind::Population => self.std * self.std * n / (n - 1.0),
        }
    }
}

/// Outcome of a two-population comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestResult {
    pub test_name: String,
    pub statistic: f64,
    pub dof: f64,
    pub p_value: f64,
    /// True when the exact p-value underflowed [`P_VALUE_FLOOR`] or the test
    /// hit a documented degenerate case.
    #[serde(default)]
    pub degenerate: bool,
}

impl TestResult {
    /// Human-readable p-value; clamped values print as "<1e-300".
    pub fn p_display(&self) -> String {
        if self.p_value <= P_VALUE_FLOOR {
            "<1e-300".to_string()
        } else {
            format!("{:.6e}", self.p_value)
        }
    }
}

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// ln Gamma(x) for x > 0 (Lanczos approximation).
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 6] = [
        76.18009172947146,
        -86.50532032941677,
        24.01409824083091,
        -1.231739572450155,
        0.1208650973866179e-2,
        -0.5395239384953e-5,
    ];
    let tmp = x + 5.5;
    let tmp = tmp - (x + 0.5) * tmp.ln();
    let mut ser = 1.000000000190015;
    for (j, &c) in COEFFS.iter().enumerate() {
        ser += c / (x + 1.0 + j as f64);
    }
    -tmp + (2.5066282746310005 * ser / x).ln()
}

const SF_EPS: f64 = 1e-14;
const SF_MAX_ITER: usize = 500;

fn gamma_series(a: f64, x: f64) -> f64 {
    let mut sum = 1.0 / a;
    let mut term = sum;
    let mut ap = a;
    for _ in 0..SF_MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * SF_EPS {
            break;
        }
    }
    sum * (-x + a * x.ln() - ln_gamma(a)).exp()
}

fn gamma_continued_fraction(a: f64, x: f64) -> f64 {
    let tiny = 1e-30;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=SF_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < SF_EPS {
            break;
        }
    }
    (-x + a * x.ln() - ln_gamma(a)).exp() * h
}

/// Regularized lower incomplete gamma P(a, x).
pub fn regularized_gamma_p(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x < a + 1.0 {
        gamma_series(a, x)
    } else {
        1.0 - gamma_continued_fraction(a, x)
    }
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
pub fn regularized_gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < a + 1.0 {
        1.0 - gamma_series(a, x)
    } else {
        gamma_continued_fraction(a, x)
    }
}

fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    let tiny = 1e-30;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < tiny {
        d = tiny;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=SF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = 1.0 + aa / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < SF_EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta I_x(a, b).
pub fn regularized_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// Two-sided p-value for a t statistic with `dof` degrees of freedom. Uses a
/// normal approximation above 1000 degrees of freedom.
pub fn t_two_sided_p(t: f64, dof: f64) -> f64 {
    let t = t.abs();
    if dof > 1000.0 {
        return normal_two_sided_p(t);
    }
    regularized_beta(dof / 2.0, 0.5, dof / (dof + t * t))
}

/// Two-sided tail probability of the standard normal at |z|, via erfc
/// computed from the upper incomplete gamma.
pub fn normal_two_sided_p(z: f64) -> f64 {
    let z = z.abs();
    // erfc(x) = Q(1/2, x^2); two-sided p = erfc(z / sqrt(2))
    let x = z / std::f64::consts::SQRT_2;
    regularized_gamma_q(0.5, x * x)
}

/// Survival function of the chi-squared distribution with 1 degree of freedom.
pub fn chi2_sf_1(x: f64) -> f64 {
    regularized_gamma_q(0.5, x / 2.0)
}

// ---------------------------------------------------------------------------
// Tests and metrics
// ---------------------------------------------------------------------------

/// Welch's unequal-variance t-test on two summaries. Degrees of freedom by
/// Welch-Satterthwaite; two-sided p-value.
pub fn welch_t_test(a: &SampleSummary, b: &SampleSummary) -> Result<TestResult, StatsError> {
    let (na, nb) = (a.n as f64, b.n as f64);
    let va = a.sample_variance() / na;
    let vb = b.sample_variance() / nb;

    if va + vb == 0.0 {
        // Both variances zero: identical means give p = 1, distinct means a
        // flagged degenerate near-zero p.
        return Ok(if a.mean == b.mean {
            TestResult {
                test_name: "welch_t".into(),
                statistic: 0.0,
                dof: (na + nb - 2.0).max(1.0),
                p_value: 1.0,
                degenerate: true,
            }
        } else {
            TestResult {
                test_name: "welch_t".into(),
                statistic: if a.mean > b.mean { f64::INFINITY } else { f64::NEG_INFINITY },
                dof: (na + nb - 2.0).max(1.0),
                p_value: P_VALUE_FLOOR,
                degenerate: true,
            }
        });
    }

    let t = (a.mean - b.mean) / (va + vb).sqrt();
    let dof = (va + vb) * (va + vb)
        / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    let p_raw = t_two_sided_p(t, dof);
    let clamped = p_raw < P_VALUE_FLOOR;
    Ok(TestResult {
        test_name: "welch_t".into(),
        statistic: t,
        dof,
        p_value: p_raw.max(P_VALUE_FLOOR),
        degenerate: clamped,
    })
}

/// Pooled-variance (classic Student's) t-test, available for strict fidelity
/// to sources that report it.
pub fn pooled_t_test(a: &SampleSummary, b: &SampleSummary) -> Result<TestResult, StatsError> {
    let (na, nb) = (a.n as f64, b.n as f64);
    let dof = na + nb - 2.0;
    let sp2 = ((na - 1.0) * a.sample_variance() + (nb - 1.0) * b.sample_variance()) / dof;
    if sp2 == 0.0 {
        return welch_t_test(a, b);
    }
    let t = (a.mean - b.mean) / (sp2 * (1.0 / na + 1.0 / nb)).sqrt();
    let p_raw = t_two_sided_p(t, dof);
    Ok(TestResult {
        test_name: "pooled_t".into(),
        statistic: t,
        dof,
        p_value: p_raw.max(P_VALUE_FLOOR),
        degenerate: p_raw < P_VALUE_FLOOR,
    })
}

/// Chi-squared test of independence on a 2x2 table, closed form
/// N(ad-bc)^2 / ((a+b)(c+d)(a+c)(b+d)), 1 degree of freedom. Yates continuity
/// correction is available behind the flag.
pub fn chi_squared_2x2(counts: [[u64; 2]; 2], continuity: bool) -> Result<TestResult, StatsError> {
    let [[a, b], [c, d]] = counts;
    let (a, b, c, d) = (a as f64, b as f64, c as f64, d as f64);
    let margins = [
        ("row 1", a + b),
        ("row 2", c + d),
        ("column 1", a + c),
        ("column 2", b + d),
    ];
    for (name, m) in margins {
        if m == 0.0 {
            return Err(StatsError::ZeroMarginal(name.into()));
        }
    }
    let n = a + b + c + d;
    let diff = if continuity {
        ((a * d - b * c).abs() - n / 2.0).max(0.0)
    } else {
        (a * d - b * c).abs()
    };
    let chi2 = n * diff * diff / ((a + b) * (c + d) * (a + c) * (b + d));
    let p_raw = chi2_sf_1(chi2);
    Ok(TestResult {
        test_name: if continuity { "chi2_yates".into() } else { "chi2".into() },
        statistic: chi2,
        dof: 1.0,
        p_value: p_raw.max(P_VALUE_FLOOR),
        degenerate: p_raw < P_VALUE_FLOOR,
    })
}

/// Cohen's kappa for two annotators over the same items:
/// (p_o - p_e) / (1 - p_e) with chance agreement from the marginals. When
/// both annotators are constant and identical (p_e = 1, p_o = 1), kappa is
/// defined as 1.
pub fn cohens_kappa<T: Eq + std::hash::Hash + Clone>(
    labels_a: &[T],
    labels_b: &[T],
) -> Result<f64, StatsError> {
    if labels_a.len() != labels_b.len() {
        return Err(StatsError::LengthMismatch(labels_a.len(), labels_b.len()));
    }
    if labels_a.is_empty() {
        return Err(StatsError::Empty);
    }
    let n = labels_a.len() as f64;
    let agree = labels_a.iter().zip(labels_b).filter(|(a, b)| a == b).count() as f64;
    let p_o = agree / n;

    let mut count_a: HashMap<&T, f64> = HashMap::new();
    let mut count_b: HashMap<&T, f64> = HashMap::new();
    for (a, b) in labels_a.iter().zip(labels_b) {
        *count_a.entry(a).or_insert(0.0) += 1.0;
        *count_b.entry(b).or_insert(0.0) += 1.0;
    }
    let alphabet: HashSet<&T> = count_a.keys().chain(count_b.keys()).copied().collect();
    let p_e: f64 = alphabet
        .iter()
        .map(|l| {
            count_a.get(l).copied().unwrap_or(0.0) / n * (count_b.get(l).copied().unwrap_or(0.0) / n)
        })
        .sum();

    if (1.0 - p_e).abs() < 1e-15 {
        return Ok(if (p_o - 1.0).abs() < 1e-15 { 1.0 } else { 0.0 });
    }
    Ok((p_o - p_e) / (1.0 - p_e))
}

/// Accuracy, precision, recall, and F1 for binary labels. Zero-denominator
/// cases return 0 with `zero_division` set.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ClassificationMetrics {
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub zero_division: bool,
}

pub fn classification_metrics<T: Eq>(
    predicted: &[T],
    gold: &[T],
    positive_label: &T,
) -> Result<ClassificationMetrics, StatsError> {
    if predicted.len() != gold.len() {
        return Err(StatsError::LengthMismatch(predicted.len(), gold.len()));
    }
    if predicted.is_empty() {
        return Err(StatsError::Empty);
    }
    let mut tp = 0.0;
    let mut fp = 0.0;
    let mut fn_ = 0.0;
    let mut correct = 0.0;
    for (p, g) in predicted.iter().zip(gold) {
        let pp = p == positive_label;
        let gp = g == positive_label;
        if p == g {
            correct += 1.0;
        }
        match (pp, gp) {
            (true, true) => tp += 1.0,
            (true, false) => fp += 1.0,
            (false, true) => fn_ += 1.0,
            (false, false) => {}
        }
    }
    let mut zero_division = false;
    let mut ratio = |num: f64, den: f64| {
        if den == 0.0 {
            zero_division = true;
            0.0
        } else {
            num / den
        }
    };
    let precision = ratio(tp, tp + fp);
    let recall = ratio(tp, tp + fn_);
    let f1 = ratio(2.0 * precision * recall, precision + recall);
    Ok(ClassificationMetrics {
        accuracy: correct / predicted.len() as f64,
        precision,
        recall,
        f1,
        zero_division,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn summary(mean: f64, std: f64, n: u64, kind: StdKind) -> SampleSummary {
        SampleSummary::new(mean, std, n, kind).unwrap()
    }

    #[test]
    fn identical_summaries_give_p_one() {
        let a = summary(0.5, 0.1, 100, StdKind::Sample);
        let r = welch_t_test(&a, &a).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_abs_diff_eq!(r.p_value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn reported_corpus_summaries_are_significant() {
        // Both embedding rows of the published comparison: large-n token
        // populations with modest mean gaps are decisively significant.
        let news = summary(0.10, 0.094, 560_000, StdKind::Population);
        let comments = summary(0.18, 0.123, 80_000, StdKind::Population);
        let r = welch_t_test(&news, &comments).unwrap();
        assert!(r.p_value < 0.0001, "p = {}", r.p_value);

        let news = summary(-0.015, 0.109, 560_000, StdKind::Population);
        let comments = summary(-0.056, 0.141, 80_000, StdKind::Population);
        let r = welch_t_test(&news, &comments).unwrap();
        assert!(r.p_value < 0.0001, "p = {}", r.p_value);
    }

    #[test]
    fn welch_textbook_pair() {
        // Hand computation: t = -1 / sqrt(0.1 + 0.1) = -2.2360..., dof = 18.
        let a = summary(5.0, 1.0, 10, StdKind::Sample);
        let b = summary(6.0, 1.0, 10, StdKind::Sample);
        let r = welch_t_test(&a, &b).unwrap();
        assert_abs_diff_eq!(r.statistic, -2.2360, epsilon = 1e-3);
        assert_abs_diff_eq!(r.dof, 18.0, epsilon = 1e-9);
        // Two-sided p from published t tables: ~0.0382
        assert_abs_diff_eq!(r.p_value, 0.0382, epsilon = 5e-4);
    }

    #[test]
    fn welch_antisymmetric() {
        let a = summary(1.0, 0.5, 30, StdKind::Sample);
        let b = summary(1.4, 0.9, 50, StdKind::Sample);
        let r1 = welch_t_test(&a, &b).unwrap();
        let r2 = welch_t_test(&b, &a).unwrap();
        assert_abs_diff_eq!(r1.statistic, -r2.statistic, epsilon = 1e-12);
        assert_abs_diff_eq!(r1.p_value, r2.p_value, epsilon = 1e-12);
    }

    #[test]
    fn zero_variance_cases() {
        let a = summary(1.0, 0.0, 10, StdKind::Sample);
        let b = summary(1.0, 0.0, 10, StdKind::Sample);
        let r = welch_t_test(&a, &b).unwrap();
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.statistic, 0.0);

        let c = summary(2.0, 0.0, 10, StdKind::Sample);
        let r = welch_t_test(&a, &c).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.p_value, P_VALUE_FLOOR);
    }

    #[test]
    fn p_value_floor_never_zero() {
        let a = summary(0.0, 1.0, 1_000_000, StdKind::Sample);
        let b = summary(100.0, 1.0, 1_000_000, StdKind::Sample);
        let r = welch_t_test(&a, &b).unwrap();
        assert!(r.p_value >= P_VALUE_FLOOR);
        assert_eq!(r.p_display(), "<1e-300");
    }

    #[test]
    fn chi2_identical_proportions_is_zero() {
        let r = chi_squared_2x2([[10, 10], [10, 10]], false).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_abs_diff_eq!(r.p_value, 1.0, epsilon = 1e-12);

        let r = chi_squared_2x2([[7, 13], [7, 13]], false).unwrap();
        assert_eq!(r.statistic, 0.0);
    }

    #[test]
    fn chi2_closed_form_value() {
        // 80 * (900-100)^2 / (40*40*40*40) = 20; chi2_1 sf(20) ~= 7.744e-6.
        let r = chi_squared_2x2([[30, 10], [10, 30]], false).unwrap();
        assert_abs_diff_eq!(r.statistic, 20.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.p_value, 7.7e-6, epsilon = 1e-7);
        assert_abs_diff_eq!(r.p_value, 7.744216431044089e-6, epsilon = 1e-12);
    }

    #[test]
    fn chi2_zero_marginal_is_fatal() {
        match chi_squared_2x2([[0, 0], [5, 5]], false) {
            Err(StatsError::ZeroMarginal(m)) => assert_eq!(m, "row 1"),
            other => panic!("expected zero-marginal error, got {:?}", other),
        }
    }

    #[test]
    fn chi2_symmetry_under_swaps_and_transpose() {
        let base = [[12, 5], [7, 20]];
        let r0 = chi_squared_2x2(base, false).unwrap().statistic;
        let rows = chi_squared_2x2([[7, 20], [12, 5]], false).unwrap().statistic;
        let cols = chi_squared_2x2([[5, 12], [20, 7]], false).unwrap().statistic;
        let trans = chi_squared_2x2([[12, 7], [5, 20]], false).unwrap().statistic;
        assert_abs_diff_eq!(r0, rows, epsilon = 1e-12);
        assert_abs_diff_eq!(r0, cols, epsilon = 1e-12);
        assert_abs_diff_eq!(r0, trans, epsilon = 1e-12);
    }

    #[test]
    fn kappa_identical_lists() {
        let a = vec![1, 1, -1, 1, -1];
        assert_abs_diff_eq!(cohens_kappa(&a, &a).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn kappa_hand_computed_marginals() {
        // p_o = 0.5; marginals 0.5/0.5 each side so p_e = 0.5; kappa = 0.
        let a = vec!["+", "+", "-", "-"];
        let b = vec!["+", "-", "-", "+"];
        assert_abs_diff_eq!(cohens_kappa(&a, &b).unwrap(), 0.0, epsilon = 1e-12);
    }

    /// Brute-force kappa from an explicit confusion matrix.
    fn kappa_oracle(a: &[i32], b: &[i32]) -> f64 {
        let labels: Vec<i32> = {
            let mut l: Vec<i32> = a.iter().chain(b).copied().collect();
            l.sort_unstable();
            l.dedup();
            l
        };
        let n = a.len() as f64;
        let k = labels.len();
        let mut conf = vec![vec![0.0; k]; k];
        for (x, y) in a.iter().zip(b) {
            let i = labels.iter().position(|l| l == x).unwrap();
            let j = labels.iter().position(|l| l == y).unwrap();
            conf[i][j] += 1.0;
        }
        let p_o: f64 = (0..k).map(|i| conf[i][i]).sum::<f64>() / n;
        let p_e: f64 = (0..k)
            .map(|i| {
                let row: f64 = conf[i].iter().sum();
                let col: f64 = (0..k).map(|j| conf[j][i]).sum();
                (row / n) * (col / n)
            })
            .sum();
        if (1.0 - p_e).abs() < 1e-15 {
            if (p_o - 1.0).abs() < 1e-15 { 1.0 } else { 0.0 }
        } else {
            (p_o - p_e) / (1.0 - p_e)
        }
    }

    #[test]
    fn kappa_three_label_fixture_matches_oracle() {
        let a: Vec<i32> = vec![
            -1, 0, 1, 1, -1, 0, 0, 1, -1, 1, 0, -1, 1, 1, 0, -1, -1, 0, 1, 0, 1, -1, 0, 1, -1, 0,
            1, 1, -1, 0,
        ];
        let b: Vec<i32> = vec![
            -1, 0, 1, 0, -1, 0, 1, 1, -1, 1, 0, -1, 1, 0, 0, -1, 0, 0, 1, 0, 1, -1, -1, 1, -1, 0,
            1, 1, 0, 0,
        ];
        assert_abs_diff_eq!(cohens_kappa(&a, &b).unwrap(), kappa_oracle(&a, &b), epsilon = 1e-12);
    }

    #[test]
    fn kappa_constant_identical_annotators() {
        let a = vec![1, 1, 1];
        assert_eq!(cohens_kappa(&a, &a).unwrap(), 1.0);
    }

    proptest! {
        #[test]
        fn kappa_matches_oracle_on_random_pairs(
            labels in proptest::collection::vec((-1i32..=1, -1i32..=1), 1..60)
        ) {
            let a: Vec<i32> = labels.iter().map(|&(x, _)| x).collect();
            let b: Vec<i32> = labels.iter().map(|&(_, y)| y).collect();
            let k = cohens_kappa(&a, &b).unwrap();
            prop_assert!((k - kappa_oracle(&a, &b)).abs() < 1e-12);
            prop_assert!(k <= 1.0 + 1e-12);
        }

        #[test]
        fn kappa_self_agreement_is_one(a in proptest::collection::vec(-1i32..=1, 2..40)) {
            prop_assume!(a.iter().any(|&x| x != a[0]));
            prop_assert!((cohens_kappa(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn chi2_equal_rows_are_zero(a in 1u64..200, b in 1u64..200) {
            let r = chi_squared_2x2([[a, b], [a, b]], false).unwrap();
            prop_assert!(r.statistic.abs() < 1e-9);
        }
    }

    #[test]
    fn metrics_perfect_prediction() {
        let gold = vec![1, -1, 1, -1];
        let m = classification_metrics(&gold, &gold, &1).unwrap();
        assert_eq!(m.accuracy, 1.0);
        assert_eq!(m.f1, 1.0);
    }

    #[test]
    fn majority_negative_on_43_percent_positive() {
        // 43% positive gold; constant-negative predictor scores the
        // complement, 57%.
        let mut gold = vec![1i32; 43];
        gold.extend(vec![-1i32; 57]);
        let predicted = vec![-1i32; 100];
        let m = classification_metrics(&predicted, &gold, &1).unwrap();
        assert_abs_diff_eq!(m.accuracy, 0.57, epsilon = 1e-12);
        assert!(m.zero_division); // no positive predictions
        assert_eq!(m.precision, 0.0);
    }

    #[test]
    fn all_positive_on_43_percent_positive() {
        let mut gold = vec![1i32; 43];
        gold.extend(vec![-1i32; 57]);
        let predicted = vec![1i32; 100];
        let m = classification_metrics(&predicted, &gold, &1).unwrap();
        assert_abs_diff_eq!(m.precision, 0.43, epsilon = 1e-12);
        assert_abs_diff_eq!(m.recall, 1.0, epsilon = 1e-12);
        // Closed form 2 * 0.43 / 1.43
        assert_abs_diff_eq!(m.f1, 0.6014, epsilon = 1e-3);
    }

    #[test]
    fn majority_accuracy_equals_max_class_proportion() {
        let gold = [vec![1i32; 17], vec![-1i32; 33]].concat();
        let m = classification_metrics(&vec![-1i32; 50], &gold, &1).unwrap();
        assert_abs_diff_eq!(m.accuracy, 33.0 / 50.0, epsilon = 1e-15);
    }

    #[test]
    fn special_functions_reference_values() {
        // Published table values.
        assert_abs_diff_eq!(ln_gamma(0.5), 0.5723649429247001, epsilon = 1e-10);
        assert_abs_diff_eq!(ln_gamma(5.0), 24.0f64.ln(), epsilon = 1e-10);
        assert_abs_diff_eq!(regularized_gamma_p(1.0, 1.0), 1.0 - (-1.0f64).exp(), epsilon = 1e-10);
        assert_abs_diff_eq!(regularized_beta(2.0, 2.0, 0.5), 0.5, epsilon = 1e-10);
        // chi2_1 sf at 3.841459 ~= 0.05 (95th percentile)
        assert_abs_diff_eq!(chi2_sf_1(3.841458820694124), 0.05, epsilon = 1e-8);
        // Standard normal two-sided at 1.959964 ~= 0.05
        assert_abs_diff_eq!(normal_two_sided_p(1.9599639845400545), 0.05, epsilon = 1e-8);
    }

    #[test]
    fn t_distribution_reference_values() {
        // Two-sided critical values from t tables.
        assert_abs_diff_eq!(t_two_sided_p(2.228, 10.0), 0.05, epsilon = 2e-4);
        assert_abs_diff_eq!(t_two_sided_p(2.086, 20.0), 0.05, epsilon = 2e-4);
        assert_abs_diff_eq!(t_two_sided_p(12.706, 1.0), 0.05, epsilon = 2e-4);
    }
}
