use serde::{Deserialize, Serialize};

/// Summary of one sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n − 1); 0 when `n == 1`.
    pub std: f64,
    pub min: f64,
    pub max: f64,
    /// Set when `std` is a convention rather than an estimate.
    pub std_degenerate: bool,
}

impl Stats {
    /// `None` for an empty sample.
    pub fn of(values: &[f64]) -> Option<Self> {
        let n = values.len();
        if n == 0 {
            return None;
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
            (ss / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Some(Self {
            n,
            mean,
            std,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            std_degenerate: n == 1,
        })
    }
}

pub fn mean(values: &[f64]) -> Option<f64> {
    Stats::of(values).map(|s| s.mean)
}

/// Per-benchmark ranks (best method gets `M`) and the average rank per method.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rankings {
    /// `ranks[method][benchmark]`.
    pub ranks: Vec<Vec<usize>>,
    pub average: Vec<f64>,
    /// Benchmarks (column indices) where at least two methods share a mean;
    /// those ties were broken by method name.
    pub tied_benchmarks: Vec<usize>,
}

/// Ranks methods per benchmark by ascending mean best fitness. Lower
/// fitness is better and earns the higher rank number, so ranks run from
/// 1 (worst) to `M` (best). Equal means are ordered by name, earlier name
/// ranking higher.
pub fn compute_rankings(means: &[Vec<f64>], names: &[&str]) -> Rankings {
    let m = means.len();
    assert_eq!(m, names.len(), "one name per method");
    let b = means.first().map_or(0, |r| r.len());
    let mut ranks = vec![vec![0; b]; m];
    let mut tied_benchmarks = Vec::new();
    for col in 0..b {
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&i, &j| {
            means[i][col]
                .total_cmp(&means[j][col])
                .then_with(|| names[i].cmp(names[j]))
        });
        if order
            .windows(2)
            .any(|w| means[w[0]][col] == means[w[1]][col])
        {
            tied_benchmarks.push(col);
        }
        for (pos, &method) in order.iter().enumerate() {
            ranks[method][col] = m - pos;
        }
    }
    let average = ranks
        .iter()
        .map(|r| {
            if b == 0 {
                0.0
            } else {
                r.iter().sum::<usize>() as f64 / b as f64
            }
        })
        .collect();
    Rankings {
        ranks,
        average,
        tied_benchmarks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_std() {
        let s = Stats::of(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.mean, 2.5);
        // oracle: sum of squares 5 over n-1 = 3
        assert!((s.std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!((s.min, s.max), (1.0, 4.0));
        assert!(!s.std_degenerate);
    }

    #[test]
    fn single_value_std_is_flagged_zero() {
        let s = Stats::of(&[7.0]).unwrap();
        assert_eq!(s.std, 0.0);
        assert!(s.std_degenerate);
        assert!(Stats::of(&[]).is_none());
    }

    fn column(means: &[f64]) -> Vec<Vec<f64>> {
        means.iter().map(|&v| vec![v]).collect()
    }

    #[test]
    fn rastrigin_ranking() {
        let names = ["noah", "pso", "vfa", "greedy", "cvt"];
        let r = compute_rankings(&column(&[2.14, 5.61, 6.07, 12.01, 57.85]), &names);
        let ranks: Vec<usize> = r.ranks.iter().map(|c| c[0]).collect();
        assert_eq!(ranks, vec![5, 4, 3, 2, 1]);
        assert!(r.tied_benchmarks.is_empty());
    }

    #[test]
    fn bowl_ranking() {
        let names = ["cvt", "noah", "pso", "greedy", "vfa"];
        let r = compute_rankings(&column(&[-1.00, -0.991, -0.980, -0.978, -0.905]), &names);
        assert_eq!(r.ranks[0][0], 5);
        assert_eq!(r.ranks[1][0], 4);
    }

    #[test]
    fn ties_follow_name_order() {
        let names = ["pso", "greedy", "noah"];
        let r = compute_rankings(&column(&[1.0, 1.0, 0.5]), &names);
        // oracle: stable sort by (mean, name) -> noah, greedy, pso
        assert_eq!(r.ranks, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(r.tied_benchmarks, vec![0]);
    }

    #[test]
    fn averages_over_benchmarks() {
        let names = ["a", "b"];
        let r = compute_rankings(&[vec![1.0, 3.0], vec![2.0, 1.0]], &names);
        assert_eq!(r.ranks, vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(r.average, vec![1.5, 1.5]);
    }

    proptest::proptest! {
        #[test]
        fn ranks_are_permutations(means in proptest::collection::vec(proptest::collection::vec(-1e3f64..1e3, 4), 1..6)) {
            let names: Vec<String> = (0..means.len()).map(|i| format!("m{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let r = compute_rankings(&means, &refs);
            for col in 0..4 {
                let mut seen: Vec<usize> = r.ranks.iter().map(|row| row[col]).collect();
                seen.sort_unstable();
                proptest::prop_assert_eq!(seen, (1..=means.len()).collect::<Vec<_>>());
            }
            for a in &r.average {
                proptest::prop_assert!(*a >= 1.0 && *a <= means.len() as f64);
            }
        }
    }
}
