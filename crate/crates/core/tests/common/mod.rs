//! Test-only oracles that do not go through the abacus.

#![allow(dead_code)]

use coretower::Partition;

/// Removes the rim hook whose corner cell is `(row, col)` (0-based).
fn remove_rim_hook(parts: &[usize], row: usize, col: usize) -> Vec<usize> {
    let conj = Partition::new(parts.to_vec()).unwrap().conjugate();
    let leg = conj.parts()[col] - row - 1;
    let mut out = parts.to_vec();
    for r in row..row + leg {
        out[r] = parts[r + 1] - 1;
    }
    out[row + leg] = col;
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Cells holding a hook of length exactly `t`, in row-major order.
fn t_hooks(lambda: &Partition, t: usize) -> Vec<(usize, usize)> {
    lambda
        .hook_lengths()
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(move |(_, &h)| h == t)
                .map(move |(j, _)| (i, j))
        })
        .collect()
}

/// Which removable rim hook to take at each step.
#[derive(Clone, Copy, Debug)]
pub enum Pick {
    Last,
    First,
}

/// t-core by repeated rim-hook deletion on the Young diagram.
pub fn core_by_deletion(lambda: &Partition, t: usize, pick: Pick) -> Partition {
    let mut cur = lambda.clone();
    loop {
        let cells = t_hooks(&cur, t);
        let cell = match pick {
            Pick::Last => cells.last(),
            Pick::First => cells.first(),
        };
        match cell {
            None => return cur,
            Some(&(i, j)) => cur = Partition::new(remove_rim_hook(cur.parts(), i, j)).unwrap(),
        }
    }
}

/// Sorted copy, for comparing rows as multisets.
pub fn multiset(row: &[Partition]) -> Vec<Partition> {
    let mut v = row.to_vec();
    v.sort();
    v
}
