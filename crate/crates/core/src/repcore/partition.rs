use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RepError;

/// An integer partition (Young frame), stored as weakly decreasing positive rows.
///
/// The derived ordering is lexicographic on the row list. For partitions of the
/// same size this is the dominance-compatible "lexicographic" order, so sorting
/// in reverse gives `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    rows: Vec<usize>,
}

/// Whether [`box_neighbors`] adds or removes a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxMove {
    Add,
    Remove,
}

impl Partition {
    /// Builds a partition from rows, stripping trailing zeros.
    pub fn new(rows: impl Into<Vec<usize>>) -> Result<Self, RepError> {
        let mut rows = rows.into();
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(RepError::NotAPartition(rows));
        }
        Ok(Partition { rows })
    }

    pub fn empty() -> Self {
        Partition { rows: Vec::new() }
    }

    /// Single-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { rows: vec![n] }
        }
    }

    /// Two-row partition `(n - l, l)` with `l <= n / 2`.
    pub fn two_row(n: usize, l: usize) -> Result<Self, RepError> {
        if 2 * l > n {
            return Err(RepError::NotAPartition(vec![n.saturating_sub(l), l]));
        }
        Self::new(vec![n - l, l])
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Length of column `j` (0-based).
    pub fn column_len(&self, j: usize) -> usize {
        self.rows.iter().take_while(|&&r| r > j).count()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.rows.first().copied().unwrap_or(0);
        Partition {
            rows: (0..width).map(|j| self.column_len(j)).collect(),
        }
    }

    /// Hook length of the box in row `i`, column `j` (both 0-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.rows[i] - j - 1;
        let leg = self.column_len(j) - i - 1;
        arm + leg + 1
    }

    /// Iterates over `(row, column)` of every box.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..r).map(move |j| (i, j)))
    }

    /// True if the partition labels an irrep present in `(C^dim)^{⊗n}`.
    pub fn admissible(&self, dim: usize) -> bool {
        self.height() <= dim
    }

    /// Frames obtained by adding one box (the "μ ∈ α" relation).
    pub fn add_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.rows.len() {
            let fits = i == 0 || self.rows.get(i).copied().unwrap_or(0) < self.rows[i - 1];
            if fits {
                let mut rows = self.rows.clone();
                if i == rows.len() {
                    rows.push(1);
                } else {
                    rows[i] += 1;
                }
                out.push(Partition { rows });
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    /// Frames obtained by removing one corner box (the "α ∈ μ" relation).
    pub fn remove_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.rows.len() {
            let corner = self.rows.get(i + 1).copied().unwrap_or(0) < self.rows[i];
            if corner {
                let mut rows = self.rows.clone();
                rows[i] -= 1;
                out.push(Partition::new(rows).expect("corner removal keeps rows decreasing"));
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = RepError;

    /// Accepts `3,1`, `(3,1)` or `[3, 1]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        if trimmed.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let rows = trimmed
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| RepError::Parse(s.to_string()))?;
        Partition::new(rows)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = RepError;

    fn try_from(rows: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(rows)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.rows
    }
}

/// All partitions of `n` with at most `max_height` rows, in decreasing
/// lexicographic order. `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: usize, max_height: Option<usize>) -> Vec<Partition> {
    fn rec(remaining: usize, cap: usize, rows_left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { rows: prefix.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=remaining.min(cap)).rev() {
            prefix.push(part);
            rec(remaining - part, part, rows_left - 1, prefix, out);
            prefix.pop();
        }
    }

    let mut out = Vec::new();
    let height = max_height.unwrap_or(n).min(n.max(1));
    rec(n, n, height, &mut Vec::new(), &mut out);
    out
}

/// Single-box neighbours of `p`, sorted in decreasing lexicographic order.
pub fn box_neighbors(p: &Partition, direction: BoxMove) -> Vec<Partition> {
    match direction {
        BoxMove::Add => p.add_box(),
        BoxMove::Remove => p.remove_box(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(rows: &[usize]) -> Partition {
        Partition::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn frames_of_four() {
        let all = enumerate_partitions(4, None);
        assert_eq!(
            all,
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(4, Some(2)), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(enumerate_partitions(1, None), vec![p(&[1])]);
        assert_eq!(enumerate_partitions(0, None), vec![Partition::empty()]);
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enumerate_partitions(n, None).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn neighbours() {
        assert_eq!(
            box_neighbors(&p(&[2, 1]), BoxMove::Add),
            vec![p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1])]
        );
        assert_eq!(box_neighbors(&p(&[3, 1]), BoxMove::Remove), vec![p(&[3]), p(&[2, 1])]);
        assert_eq!(box_neighbors(&p(&[1]), BoxMove::Add), vec![p(&[2]), p(&[1, 1])]);
        assert!(box_neighbors(&Partition::empty(), BoxMove::Remove).is_empty());
        assert_eq!(box_neighbors(&Partition::empty(), BoxMove::Add), vec![p(&[1])]);
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[3, 1, 0, 0]), p(&[3, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!("(3,1)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("2, 2".parse::<Partition>().unwrap(), p(&[2, 2]));
        assert_eq!(p(&[3, 1]).to_string(), "(3,1)");
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }
}
