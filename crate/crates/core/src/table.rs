use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::VarSet;

/// A (possibly sub-normalized) table over an ordered list of variables,
/// enumerated row-major: the last variable varies fastest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub vars: Vec<usize>,
    pub cards: Vec<usize>,
    pub probs: Vec<f64>,
}

impl DistributionTable {
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Row index of a full assignment (values listed in `vars` order).
    pub fn index_of(&self, values: &[usize]) -> usize {
        values.iter().zip(&self.cards).fold(0, |acc, (&v, &c)| acc * c + v)
    }

    pub fn values_of(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.cards.len()];
        for (slot, &c) in out.iter_mut().zip(&self.cards).rev() {
            *slot = index % c;
            index /= c;
        }
        out
    }

    pub fn get(&self, values: &[usize]) -> f64 {
        self.probs[self.index_of(values)]
    }

    /// Probability of `var = value` under this table.
    pub fn mass_where(&self, var: usize, value: usize) -> f64 {
        let Some(pos) = self.vars.iter().position(|&v| v == var) else {
            return 0.0;
        };
        (0..self.len())
            .filter(|&i| self.values_of(i)[pos] == value)
            .map(|i| self.probs[i])
            .sum()
    }
}

/// Total-variation distance between two tables of equal length. Also used
/// on sub-normalized restrictions, where it is half the L1 distance.
pub(crate) fn tv(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

/// Calls `f` with every point of the mixed-radix space `sizes` in
/// lexicographic order (last coordinate fastest). An empty `sizes` yields the
/// single empty point; any zero size yields nothing.
pub(crate) fn for_each_point(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut point = vec![0usize; sizes.len()];
    loop {
        f(&point);
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            point[i] += 1;
            if point[i] < sizes[i] {
                break;
            }
            point[i] = 0;
        }
    }
}

/// Sums a row-major joint table (over variables `0..cards.len()`) down to the
/// variables in `keep`, preserving ascending variable order.
pub(crate) fn project(joint: &[f64], cards: &[usize], keep: VarSet) -> DistributionTable {
    let vars = keep.to_vec();
    let kept_cards: Vec<usize> = vars.iter().map(|&v| cards[v]).collect();
    let size: usize = kept_cards.iter().product();
    // stride of each joint variable inside the projected table (0 if summed out)
    let mut strides = vec![0usize; cards.len()];
    let mut s = 1;
    for &v in vars.iter().rev() {
        strides[v] = s;
        s *= cards[v];
    }
    let mut probs = vec![0.0; size];
    let mut idx = 0usize;
    for_each_point(cards, |point| {
        let target: usize = point.iter().zip(&strides).map(|(a, b)| a * b).sum();
        probs[target] += joint[idx];
        idx += 1;
    });
    DistributionTable {
        vars,
        cards: kept_cards,
        probs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_row_major() {
        let mut seen = Vec::new();
        for_each_point(&[2, 3], |p| seen.push((p[0], p[1])));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], (0, 1));
        assert_eq!(seen[3], (1, 0));
        let mut count = 0;
        for_each_point(&[], |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn projection_sums_out() {
        // joint over (A, B), A binary, B ternary
        let joint = [0.1, 0.2, 0.3, 0.05, 0.15, 0.2];
        let a = project(&joint, &[2, 3], VarSet::singleton(0));
        assert_eq!(a.vars, [0]);
        assert!((a.probs[0] - 0.6).abs() < 1e-15);
        let b = project(&joint, &[2, 3], VarSet::singleton(1));
        assert!((b.probs[2] - 0.5).abs() < 1e-15);
        let both = project(&joint, &[2, 3], VarSet::first(2));
        assert_eq!(both.probs, joint);
        assert_eq!(both.index_of(&[1, 2]), 5);
        assert_eq!(both.values_of(4), [1, 1]);
    }
}
