//! The t-abacus: cores, quotients, reconstruction, and t-core towers.
//!
//! Quotient components follow one fixed labeling. The beta-set is padded to a
//! bead count divisible by `t`, and component `r` is read off the runner holding
//! beads congruent to `r` modulo `t`. Adding `t` further beads shifts every
//! runner by one position and leaves each runner's partition unchanged, so the
//! labeling does not depend on how much padding is used.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TowerError;
use crate::partition::Partition;

/// The modulus `t` of a core or quotient, always at least 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Modulus(usize);

impl Modulus {
    pub fn new(t: usize) -> Result<Self, TowerError> {
        if t < 2 {
            Err(TowerError::Modulus(t))
        } else {
            Ok(Modulus(t))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for Modulus {
    type Error = TowerError;

    fn try_from(t: usize) -> Result<Self, Self::Error> {
        Modulus::new(t)
    }
}

impl From<Modulus> for usize {
    fn from(t: Modulus) -> usize {
        t.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// First-column hook lengths of a partition, padded to `bead_count` beads.
///
/// Beads are distinct and stored in strictly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaSet {
    beads: Vec<usize>,
}

impl BetaSet {
    /// Beta-set of `lambda` with exactly `bead_count` beads (at least `lambda.len()`).
    pub fn with_bead_count(lambda: &Partition, bead_count: usize) -> Self {
        assert!(
            bead_count >= lambda.len(),
            "too few beads for the partition"
        );
        let beads = (0..bead_count)
            .map(|i| lambda.parts().get(i).copied().unwrap_or(0) + bead_count - 1 - i)
            .collect();
        BetaSet { beads }
    }

    /// Beta-set with the smallest bead count that is a multiple of `t`.
    pub fn normalized(lambda: &Partition, t: Modulus) -> Self {
        Self::with_bead_count(lambda, lambda.len().div_ceil(t.get()) * t.get())
    }

    fn from_beads(mut beads: Vec<usize>) -> Self {
        beads.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert!(beads.windows(2).all(|w| w[0] > w[1]));
        BetaSet { beads }
    }

    pub fn beads(&self) -> &[usize] {
        &self.beads
    }

    pub fn bead_count(&self) -> usize {
        self.beads.len()
    }

    pub fn to_partition(&self) -> Partition {
        let k = self.beads.len();
        let parts = self
            .beads
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (k - 1 - i))
            .collect();
        Partition::from_sorted_unchecked(parts)
    }

    /// Positions (`(b - r) / t`) of the beads on runner `r`, decreasing.
    fn runner(&self, t: Modulus, r: usize) -> Vec<usize> {
        let t = t.get();
        self.beads
            .iter()
            .filter(|&&b| b % t == r)
            .map(|&b| (b - r) / t)
            .collect()
    }

    /// Slides every bead as far down its runner as it will go.
    fn settled(&self, t: Modulus) -> Self {
        let beads = (0..t.get())
            .flat_map(|r| {
                let count = self.runner(t, r).len();
                (0..count).map(move |pos| r + pos * t.get())
            })
            .collect();
        Self::from_beads(beads)
    }
}

/// Reads a partition off bead positions on a single runner.
fn runner_partition(positions: &[usize]) -> Partition {
    let m = positions.len();
    let parts = positions
        .iter()
        .enumerate()
        .map(|(i, &pos)| pos - (m - 1 - i))
        .collect();
    Partition::from_sorted_unchecked(parts)
}

/// λ_(t): the partition left after removing every rim hook of length `t`.
pub fn t_core(lambda: &Partition, t: Modulus) -> Partition {
    BetaSet::normalized(lambda, t).settled(t).to_partition()
}

/// λ^(t) = (λ⁽⁰⁾, …, λ⁽ᵗ⁻¹⁾), one component per abacus runner.
pub fn t_quotient(lambda: &Partition, t: Modulus) -> Vec<Partition> {
    let beta = BetaSet::normalized(lambda, t);
    (0..t.get())
        .map(|r| runner_partition(&beta.runner(t, r)))
        .collect()
}

pub fn is_t_core(lambda: &Partition, t: Modulus) -> bool {
    let beta = BetaSet::normalized(lambda, t);
    (0..t.get()).all(|r| runner_partition(&beta.runner(t, r)).is_empty())
}

/// Rebuilds the partition with the given t-core and t-quotient.
pub fn reconstruct(
    core: &Partition,
    quotient: &[Partition],
    t: Modulus,
) -> Result<Partition, TowerError> {
    let tv = t.get();
    if quotient.len() != tv {
        return Err(TowerError::QuotientArity {
            expected: tv,
            got: quotient.len(),
        });
    }
    if !is_t_core(core, t) {
        return Err(TowerError::NotACore(core.to_string(), tv));
    }
    // Enough padding that every runner holds at least as many beads as the
    // longest quotient component has parts.
    let longest = quotient.iter().map(Partition::len).max().unwrap_or(0);
    let bead_count = (core.len().div_ceil(tv) + longest) * tv;
    let core_beta = BetaSet::with_bead_count(core, bead_count);

    let mut beads = Vec::with_capacity(bead_count);
    for (r, component) in quotient.iter().enumerate() {
        let m = core_beta.runner(t, r).len();
        for i in 0..m {
            let part = component.parts().get(i).copied().unwrap_or(0);
            beads.push(r + (part + m - 1 - i) * tv);
        }
    }
    Ok(BetaSet::from_beads(beads).to_partition())
}

/// Nonempty entries of pre-tower row `j`, with their positions in the row.
///
/// Row `j` has `t^j` entries, almost all empty, so only the nonempty ones are
/// carried from one row to the next.
pub fn pre_tower_entries(lambda: &Partition, t: Modulus, j: usize) -> Vec<(usize, Partition)> {
    let mut row = vec![(0usize, lambda.clone())];
    row.retain(|(_, p)| !p.is_empty());
    for _ in 0..j {
        if row.is_empty() {
            break;
        }
        row = row
            .iter()
            .flat_map(|(idx, p)| {
                t_quotient(p, t)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, q)| !q.is_empty())
                    .map(move |(r, q)| (idx * t.get() + r, q))
            })
            .collect();
    }
    row
}

/// Widest tower row we are willing to materialize.
pub const MAX_ROW_WIDTH: usize = 1 << 20;

fn row_width(t: Modulus, j: usize) -> Result<usize, TowerError> {
    u32::try_from(j)
        .ok()
        .and_then(|j| t.get().checked_pow(j))
        .filter(|&w| w <= MAX_ROW_WIDTH)
        .ok_or(TowerError::RowTooWide { t: t.get(), j })
}

fn densify(entries: Vec<(usize, Partition)>, width: usize) -> Vec<Partition> {
    let mut row = vec![Partition::empty(); width];
    for (idx, p) in entries {
        row[idx] = p;
    }
    row
}

/// α_j: the `t^j` partitions of pre-tower row `j`, in order.
pub fn pre_tower_row(
    lambda: &Partition,
    t: Modulus,
    j: usize,
) -> Result<Vec<Partition>, TowerError> {
    let width = row_width(t, j)?;
    Ok(densify(pre_tower_entries(lambda, t, j), width))
}

/// The t-core tower of a partition: row `j` holds the t-cores of pre-tower row `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreTower {
    t: Modulus,
    rows: Vec<Vec<Partition>>,
}

impl CoreTower {
    pub fn modulus(&self) -> Modulus {
        self.t
    }

    pub fn rows(&self) -> &[Vec<Partition>] {
        &self.rows
    }

    /// Index of the last nonempty row; 0 for the empty partition.
    pub fn height(&self) -> usize {
        self.rows.len() - 1
    }

    /// |β_j| for each row.
    pub fn row_sizes(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|row| row.iter().map(Partition::size).sum())
            .collect()
    }

    /// Σ_j t^j |β_j|, which equals the size of the source partition.
    pub fn weighted_size(&self) -> usize {
        self.row_sizes()
            .iter()
            .enumerate()
            .map(|(j, s)| s * self.t.get().pow(j as u32))
            .sum()
    }

    pub fn defect(&self) -> usize {
        let plain: usize = self.row_sizes().iter().sum();
        (self.weighted_size() - plain) / (self.t.get() - 1)
    }
}

pub fn core_tower(lambda: &Partition, t: Modulus) -> Result<CoreTower, TowerError> {
    let mut rows = Vec::new();
    let mut entries = pre_tower_entries(lambda, t, 0);
    let mut j = 0;
    loop {
        let width = row_width(t, j)?;
        let cores = entries
            .iter()
            .map(|(idx, p)| (*idx, t_core(p, t)))
            .collect();
        rows.push(densify(cores, width));
        entries = entries
            .iter()
            .flat_map(|(idx, p)| {
                t_quotient(p, t)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, q)| !q.is_empty())
                    .map(move |(r, q)| (idx * t.get() + r, q))
            })
            .collect();
        if entries.is_empty() {
            break;
        }
        j += 1;
    }
    Ok(CoreTower { t, rows })
}

/// |β_j(t; λ)|, the total size of tower row `j`.
pub fn row_size(lambda: &Partition, t: Modulus, j: usize) -> usize {
    pre_tower_entries(lambda, t, j)
        .iter()
        .map(|(_, p)| t_core(p, t).size())
        .sum()
}

/// |α_j(t; λ)|, the total size of pre-tower row `j`.
pub fn pre_row_size(lambda: &Partition, t: Modulus, j: usize) -> usize {
    pre_tower_entries(lambda, t, j)
        .iter()
        .map(|(_, p)| p.size())
        .sum()
}

/// d_t(λ) = (|λ| − Σ_j |β_j|) / (t − 1).
pub fn defect(lambda: &Partition, t: Modulus) -> usize {
    let mut core_total = 0;
    let mut row = pre_tower_entries(lambda, t, 0);
    while !row.is_empty() {
        let mut next = Vec::new();
        for (_, p) in &row {
            core_total += t_core(p, t).size();
            next.extend(
                t_quotient(p, t)
                    .into_iter()
                    .filter(|q| !q.is_empty())
                    .map(|q| (0, q)),
            );
        }
        row = next;
    }
    (lambda.size() - core_total) / (t.get() - 1)
}

/// True when pre-tower row `j + 1` is entirely empty.
pub fn is_generalized_core(lambda: &Partition, j: usize, t: Modulus) -> bool {
    pre_tower_entries(lambda, t, j + 1).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn t(v: usize) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn sorted(mut v: Vec<Partition>) -> Vec<Partition> {
        v.sort();
        v
    }

    #[test]
    fn modulus_rejects_small_values() {
        assert_eq!(Modulus::new(1), Err(TowerError::Modulus(1)));
        assert!(Modulus::new(0).is_err());
    }

    #[test]
    fn beta_set_round_trip() {
        let lambda = p(&[5, 4, 2, 2, 1]);
        let beta = BetaSet::normalized(&lambda, t(2));
        assert_eq!(beta.beads(), &[10, 8, 5, 4, 2, 0]);
        assert_eq!(beta.to_partition(), lambda);
        assert_eq!(BetaSet::with_bead_count(&lambda, 9).to_partition(), lambda);
    }

    #[test]
    fn worked_example_core_and_quotient() {
        let lambda = p(&[5, 4, 2, 2, 1]);
        assert_eq!(t_core(&lambda, t(2)), p(&[3, 2, 1]));
        assert_eq!(t_quotient(&lambda, t(2)), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(
            reconstruct(&p(&[3, 2, 1]), &[p(&[1, 1]), p(&[2])], t(2)).unwrap(),
            lambda
        );
    }

    #[test]
    fn small_cores() {
        assert_eq!(t_core(&Partition::empty(), t(3)), Partition::empty());
        assert_eq!(t_core(&p(&[3]), t(2)), p(&[1]));
        assert_eq!(
            t_quotient(&Partition::empty(), t(3)),
            vec![Partition::empty(); 3]
        );
        assert_eq!(t_quotient(&p(&[3, 1]), t(3)), vec![Partition::empty(); 3]);
        assert_eq!(
            reconstruct(
                &Partition::empty(),
                &[Partition::empty(), Partition::empty()],
                t(2)
            )
            .unwrap(),
            Partition::empty()
        );
    }

    #[test]
    fn reconstruct_rejects_bad_input() {
        assert_eq!(
            reconstruct(&p(&[2]), &[Partition::empty(), Partition::empty()], t(2)),
            Err(TowerError::NotACore("(2)".into(), 2))
        );
        assert_eq!(
            reconstruct(&p(&[1]), &[Partition::empty()], t(2)),
            Err(TowerError::QuotientArity {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn pre_tower_rows_of_worked_example() {
        let lambda = p(&[5, 4, 2, 2, 1]);
        assert_eq!(
            pre_tower_row(&lambda, t(2), 0).unwrap(),
            vec![lambda.clone()]
        );
        assert_eq!(
            sorted(pre_tower_row(&lambda, t(2), 1).unwrap()),
            sorted(vec![p(&[1, 1]), p(&[2])])
        );
        assert_eq!(
            sorted(pre_tower_row(&lambda, t(2), 2).unwrap()),
            sorted(vec![
                p(&[1]),
                Partition::empty(),
                Partition::empty(),
                p(&[1])
            ])
        );
        assert!(pre_tower_row(&lambda, t(2), 15)
            .unwrap()
            .iter()
            .all(Partition::is_empty));
        assert!(matches!(
            pre_tower_row(&lambda, t(5), 40),
            Err(TowerError::RowTooWide { t: 5, j: 40 })
        ));
    }

    #[test]
    fn tower_of_worked_example() {
        let lambda = p(&[5, 4, 2, 2, 1]);
        let tower = core_tower(&lambda, t(2)).unwrap();
        assert_eq!(tower.height(), 2);
        assert_eq!(tower.rows()[0], vec![p(&[3, 2, 1])]);
        assert_eq!(
            tower.rows()[1],
            vec![Partition::empty(), Partition::empty()]
        );
        assert_eq!(
            tower.rows()[2],
            vec![p(&[1]), Partition::empty(), Partition::empty(), p(&[1])]
        );
        assert_eq!(tower.row_sizes(), vec![6, 0, 2]);
        assert_eq!(tower.weighted_size(), 14);
        assert_eq!(tower.defect(), 6);
        assert_eq!(defect(&lambda, t(2)), 6);
        assert_eq!(row_size(&lambda, t(2), 0), 6);
        assert_eq!(row_size(&lambda, t(2), 1), 0);
        assert_eq!(row_size(&lambda, t(2), 2), 2);
    }

    #[test]
    fn empty_tower() {
        let tower = core_tower(&Partition::empty(), t(4)).unwrap();
        assert_eq!(tower.height(), 0);
        assert_eq!(tower.rows(), &[vec![Partition::empty()]]);
        assert_eq!(row_size(&Partition::empty(), t(4), 3), 0);
    }

    #[test]
    fn small_towers_and_defects() {
        let tower = core_tower(&p(&[2, 1, 1]), t(2)).unwrap();
        assert_eq!(tower.weighted_size(), 4);
        let brute: usize = enumerate_partitions(3).map(|l| row_size(&l, t(2), 0)).sum();
        assert_eq!(brute, 5);
        for tv in 2..=7 {
            assert_eq!(defect(&p(&[tv]), t(tv)), 1);
        }
        assert_eq!(defect(&p(&[3, 2, 1]), t(2)), 0);
    }

    #[test]
    fn generalized_cores() {
        assert!(is_generalized_core(&p(&[3, 2, 1]), 0, t(2)));
        assert!(is_generalized_core(&Partition::empty(), 0, t(3)));
        assert!(is_generalized_core(&Partition::empty(), 4, t(3)));
        let lambda = p(&[5, 4, 2, 2, 1]);
        assert!(!is_generalized_core(&lambda, 0, t(2)));
        assert!(!is_generalized_core(&lambda, 1, t(2)));
        assert!(is_generalized_core(&lambda, 2, t(2)));
        for n in 0..=12 {
            for lambda in enumerate_partitions(n) {
                for tv in 2..=4 {
                    assert_eq!(
                        is_generalized_core(&lambda, 0, t(tv)),
                        lambda.is_core_by_hooks(tv)
                    );
                }
            }
        }
    }
}
