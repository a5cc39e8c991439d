//! Independent oracles shared by the integration tests. These deliberately
//! avoid the production enumeration and stabilizer-chain code paths.

use std::collections::HashMap;

use nu_core::{Permutation, Presentation};

/// Order of the presented group by naive multiplication-table closure.
///
/// Rows are defined one slot at a time (first undefined slot in row-major
/// order); after every definition all relators are retraced from every live
/// row, and rows whose traces collide are merged by rewriting the whole
/// table. No scanning strategy, no deduction stacks, no union-find: slow and
/// simple, for cross-checking the production enumerator on small inputs.
pub fn naive_table_order(p: &Presentation, limit: usize) -> Option<usize> {
    let ngens = p.generators.len();
    if ngens == 0 {
        return Some(1);
    }
    let ncols = 2 * ngens;
    let relators: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(|w| {
            w.flatten()
                .iter()
                .map(|&s| {
                    let g = (s.unsigned_abs() as usize - 1) * 2;
                    if s > 0 {
                        g
                    } else {
                        g + 1
                    }
                })
                .collect()
        })
        .collect();

    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; ncols]];
    let mut alive: Vec<bool> = vec![true];

    loop {
        // Close under the relators: merge whenever a fully defined trace
        // fails to return to its start.
        loop {
            let mut pending: Option<(usize, usize)> = None;
            'scan: for a in 0..table.len() {
                if !alive[a] {
                    continue;
                }
                for rel in &relators {
                    let mut c = a;
                    let mut complete = true;
                    for &col in rel {
                        match table[c][col] {
                            Some(d) => c = d,
                            None => {
                                complete = false;
                                break;
                            }
                        }
                    }
                    if complete && c != a {
                        pending = Some((a.min(c), a.max(c)));
                        break 'scan;
                    }
                }
            }
            match pending {
                None => break,
                Some((keep, drop)) => merge_rows(&mut table, &mut alive, keep, drop),
            }
        }

        // Find the first undefined slot; if none, the table is complete.
        let mut slot = None;
        'find: for a in 0..table.len() {
            if !alive[a] {
                continue;
            }
            for col in 0..ncols {
                if table[a][col].is_none() {
                    slot = Some((a, col));
                    break 'find;
                }
            }
        }
        match slot {
            None => return Some(alive.iter().filter(|&&x| x).count()),
            Some((a, col)) => {
                if table.len() >= limit {
                    return None;
                }
                let n = table.len();
                table.push(vec![None; ncols]);
                alive.push(true);
                table[a][col] = Some(n);
                table[n][col ^ 1] = Some(a);
            }
        }
    }
}

/// Merge row `drop` into row `keep`: rewrite every reference, then reconcile
/// the two rows cell by cell, recursing on any conflicting definitions.
fn merge_rows(table: &mut Vec<Vec<Option<usize>>>, alive: &mut Vec<bool>, keep: usize, drop: usize) {
    if keep == drop || !alive[drop] {
        return;
    }
    alive[drop] = false;
    for row in table.iter_mut() {
        for cell in row.iter_mut() {
            if *cell == Some(drop) {
                *cell = Some(keep);
            }
        }
    }
    let ncols = table[0].len();
    let mut conflicts = Vec::new();
    for col in 0..ncols {
        match (table[keep][col], table[drop][col]) {
            (None, Some(d)) => table[keep][col] = Some(d),
            (Some(x), Some(y)) if x != y => conflicts.push((x.min(y), x.max(y))),
            _ => {}
        }
    }
    for (a, b) in conflicts {
        merge_rows(table, alive, a, b);
    }
}

/// Exhaustive closure of a permutation generating set.
pub fn perm_closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen: HashMap<Permutation, ()> = HashMap::new();
    let mut out = vec![Permutation::identity(degree)];
    seen.insert(out[0].clone(), ());
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for g in gens {
            let next = &cur * g;
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), ());
                out.push(next);
            }
        }
    }
    out
}
