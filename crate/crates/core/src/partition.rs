//! Integer partitions, Young-diagram hook lengths and exhaustive enumeration.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::PartitionError;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

impl Partition {
    /// Validates and wraps `parts`.
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 {
                return Err(PartitionError::NonPositivePart { index: i });
            }
            if i > 0 && parts[i - 1] < p {
                return Err(PartitionError::Increasing { index: i });
            }
        }
        let size = parts.iter().sum();
        Ok(Partition { parts, size })
    }

    /// Accepts signed input, as it arrives from parsers and foreign callers.
    pub fn from_signed(parts: &[i64]) -> Result<Self, PartitionError> {
        let mut out = Vec::with_capacity(parts.len());
        for (i, &p) in parts.iter().enumerate() {
            if p <= 0 {
                return Err(PartitionError::NonPositivePart { index: i });
            }
            out.push(p as usize);
        }
        Self::new(out)
    }

    /// Builds from a sequence known to be sorted; trailing zeros are dropped.
    pub(crate) fn from_sorted_unchecked(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// |λ|, the number of cells.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let cols = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition::from_sorted_unchecked(cols)
    }

    /// Hook lengths, row by row. Row `i` has `λ_i` entries.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (conj.parts[j] - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// True when no hook length is divisible by `t`.
    pub fn is_core_by_hooks(&self, t: usize) -> bool {
        self.hook_lengths().iter().flatten().all(|&h| h % t != 0)
    }

    /// Parses the command-line form: parts separated by commas, no whitespace.
    /// The empty string is ∅.
    pub fn parse(s: &str) -> Result<Self, PartitionError> {
        if s.is_empty() || s == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for (index, tok) in s.split(',').enumerate() {
            let value: i64 = tok.parse().map_err(|_| PartitionError::Syntax {
                index,
                token: tok.to_string(),
            })?;
            parts.push(value);
        }
        Self::from_signed(&parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Iterator over the partitions of `n` in reverse-lexicographic order,
/// starting from `(n)` and ending with `(1,…,1)`.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

pub fn enumerate_partitions(n: usize) -> Partitions {
    let first = if n == 0 { Vec::new() } else { vec![n] };
    Partitions {
        current: Some(first),
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_sorted_unchecked(cur.clone());

        // Successor: decrement the last part exceeding 1 and refill greedily.
        let mut parts = cur;
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let cap = *last;
            let mut rest = ones + 1;
            while rest > 0 {
                let take = rest.min(cap);
                parts.push(take);
                rest -= take;
            }
            self.current = Some(parts);
        }
        Some(out)
    }
}

/// p(0), …, p(n) by Euler's pentagonal-number recurrence.
pub fn partition_counts(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let positive = k % 2 == 1;
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[m - g1].clone();
            if g2 <= m {
                term += &p[m - g2];
            }
            if positive {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[m] = acc;
    }
    p
}

/// p(n), the number of partitions of `n`.
pub fn partition_count(n: usize) -> BigInt {
    partition_counts(n).pop().expect("table has n+1 entries")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn make_partition_examples() {
        assert_eq!(p(&[5, 4, 2, 2, 1]).size(), 14);
        let e = p(&[]);
        assert!(e.is_empty());
        assert_eq!(e.size(), 0);
        assert_eq!(
            Partition::new(vec![2, 3]),
            Err(PartitionError::Increasing { index: 1 })
        );
        assert_eq!(
            Partition::from_signed(&[3, 0]),
            Err(PartitionError::NonPositivePart { index: 1 })
        );
        assert_eq!(
            Partition::from_signed(&[-1]),
            Err(PartitionError::NonPositivePart { index: 0 })
        );
    }

    #[test]
    fn hooks_of_worked_example() {
        assert_eq!(
            p(&[5, 4, 2, 2, 1]).hook_lengths(),
            vec![
                vec![9, 7, 4, 3, 1],
                vec![7, 5, 2, 1],
                vec![4, 2],
                vec![3, 1],
                vec![1]
            ]
        );
        assert!(Partition::empty().hook_lengths().is_empty());
        assert_eq!(p(&[6]).hook_lengths(), vec![vec![6, 5, 4, 3, 2, 1]]);
    }

    #[test]
    fn enumeration_order_and_counts() {
        let four: Vec<_> = enumerate_partitions(4)
            .map(|l| l.parts().to_vec())
            .collect();
        assert_eq!(
            four,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        let zero: Vec<_> = enumerate_partitions(0).collect();
        assert_eq!(zero, vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(30).count(), 5604);
    }

    #[test]
    fn pentagonal_counts() {
        assert_eq!(partition_count(0), BigInt::from(1));
        assert_eq!(partition_count(5), BigInt::from(7));
        assert_eq!(partition_count(100), BigInt::from(190_569_292u64));
        for n in 0..=30 {
            assert_eq!(
                partition_count(n),
                BigInt::from(enumerate_partitions(n).count()),
                "n = {n}"
            );
        }
    }

    #[test]
    fn parse_command_line_form() {
        assert_eq!(Partition::parse("5,4,2,2,1").unwrap(), p(&[5, 4, 2, 2, 1]));
        assert_eq!(Partition::parse("").unwrap(), Partition::empty());
        assert!(matches!(
            Partition::parse("3, 1"),
            Err(PartitionError::Syntax { index: 1, .. })
        ));
        assert!(Partition::parse("1,2").is_err());
    }

    #[test]
    fn conjugate_preserves_hook_multiset() {
        for n in 0..=20 {
            for lambda in enumerate_partitions(n) {
                let mut a: Vec<_> = lambda.hook_lengths().into_iter().flatten().collect();
                let mut b: Vec<_> = lambda
                    .conjugate()
                    .hook_lengths()
                    .into_iter()
                    .flatten()
                    .collect();
                a.sort_unstable();
                b.sort_unstable();
                assert_eq!(a, b, "{lambda}");
            }
        }
    }

    #[test]
    fn first_column_hooks_strictly_decrease() {
        for n in 1..=15 {
            for lambda in enumerate_partitions(n) {
                let col: Vec<_> = lambda.hook_lengths().iter().map(|r| r[0]).collect();
                assert!(col.windows(2).all(|w| w[0] > w[1]), "{lambda}");
            }
        }
    }
}
