#![allow(dead_code)]

use infogeo::dist::{JointDistribution, Variable};
use proptest::prelude::*;
use rand::Rng;

pub const NAMES: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

/// Random distribution with independent cardinalities drawn from `cards`.
/// About one draw in four zeroes a random subset of cells to exercise the
/// `0 · log 0` path.
pub fn random_distribution<R: Rng>(
    rng: &mut R,
    n_vars: usize,
    cards: std::ops::RangeInclusive<usize>,
) -> JointDistribution {
    let variables: Vec<Variable> = (0..n_vars)
        .map(|i| Variable::new(NAMES[i], rng.gen_range(cards.clone())))
        .collect();
    let size: usize = variables.iter().map(|v| v.cardinality).product();
    let sparse = rng.gen_bool(0.25);
    let mut w: Vec<f64> = (0..size)
        .map(|_| {
            if sparse && rng.gen_bool(0.4) {
                0.0
            } else {
                -(1.0 - rng.gen::<f64>()).ln()
            }
        })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[0] = 1.0;
    }
    let total: f64 = w.iter().sum();
    JointDistribution::new(variables, w.into_iter().map(|x| x / total).collect()).unwrap()
}

pub fn arb_distribution(n_vars: usize, max_card: usize) -> impl Strategy<Value = JointDistribution> {
    proptest::collection::vec(2..=max_card, n_vars).prop_flat_map(move |cards| {
        let size: usize = cards.iter().product();
        proptest::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.0..1.0f64], size).prop_map(
            move |mut w| {
                if w.iter().all(|&x| x == 0.0) {
                    w[0] = 1.0;
                }
                let total: f64 = w.iter().sum();
                let variables = cards
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| Variable::new(NAMES[i], c))
                    .collect();
                JointDistribution::new(variables, w.into_iter().map(|x| x / total).collect())
                    .unwrap()
            },
        )
    })
}

pub fn fair_bits(n: usize) -> JointDistribution {
    let size = 1usize << n;
    JointDistribution::build(
        NAMES[..n].iter().map(|s| (*s, 2)),
        vec![1.0 / size as f64; size],
    )
    .unwrap()
}

pub fn ghz_z(n: usize) -> JointDistribution {
    let mut p = vec![0.0; 1 << n];
    p[0] = 0.5;
    p[(1 << n) - 1] = 0.5;
    JointDistribution::build(NAMES[..n].iter().map(|s| (*s, 2)), p).unwrap()
}

pub fn xor_triple() -> JointDistribution {
    let mut p = vec![0.0; 8];
    for a in 0..2 {
        for b in 0..2 {
            p[(a << 2) | (b << 1) | (a ^ b)] = 0.25;
        }
    }
    JointDistribution::build([("A", 2), ("B", 2), ("C", 2)], p).unwrap()
}

/// Appends a copy of variable `source` named `name`, so the new variable
/// and the source determine each other.
pub fn with_duplicate(dist: &JointDistribution, source: usize, name: &str) -> JointDistribution {
    let card = dist.variables()[source].cardinality;
    let cards = dist.cardinalities();
    let mut probs = Vec::with_capacity(dist.probabilities().len() * card);
    for (flat, &p) in dist.probabilities().iter().enumerate() {
        let digit = digits(flat, &cards)[source];
        for v in 0..card {
            probs.push(if v == digit { p } else { 0.0 });
        }
    }
    let mut vars = dist.variables().to_vec();
    vars.push(Variable::new(name, card));
    JointDistribution::new(vars, probs).unwrap()
}

/// Row-major outcome tuple of a flat index.
pub fn digits(mut flat: usize, cards: &[usize]) -> Vec<usize> {
    let mut out = vec![0; cards.len()];
    for i in (0..cards.len()).rev() {
        out[i] = flat % cards[i];
        flat /= cards[i];
    }
    out
}

/// Brute-force marginal by enumerating every outcome tuple.
pub fn brute_marginal(dist: &JointDistribution, keep: &[usize]) -> Vec<f64> {
    let cards = dist.cardinalities();
    let out_cards: Vec<usize> = keep.iter().map(|&k| cards[k]).collect();
    let mut out = vec![0.0; out_cards.iter().product()];
    for (flat, &p) in dist.probabilities().iter().enumerate() {
        let d = digits(flat, &cards);
        let mut idx = 0;
        for (&k, &c) in keep.iter().zip(&out_cards) {
            idx = idx * c + d[k];
        }
        out[idx] += p;
    }
    out
}

/// `−Σ p log₂ p` straight from the marginal tensor.
pub fn brute_entropy(dist: &JointDistribution, keep: &[usize]) -> f64 {
    if keep.is_empty() {
        return 0.0;
    }
    brute_marginal(dist, keep)
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}
