use crate::perm::hom::coset_structure;
use crate::perm::PermGroup;

/// Diagonal of the Smith normal form of an integer matrix. Entries come out
/// non-negative with each dividing the next.
pub fn smith_normal_form(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Smallest nonzero entry of the trailing submatrix becomes the pivot.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        if m[t][t] < 0 {
            for v in m[t].iter_mut() {
                *v = -*v;
            }
        }
        let d = m[t][t];
        let mut reduced = true;
        for i in (t + 1)..rows {
            if m[i][t] != 0 {
                let q = m[i][t] / d;
                for j in t..cols {
                    m[i][j] -= q * m[t][j];
                }
                if m[i][t] != 0 {
                    reduced = false;
                }
            }
        }
        for j in (t + 1)..cols {
            if m[t][j] != 0 {
                let q = m[t][j] / d;
                for i in t..rows {
                    m[i][j] -= q * m[i][t];
                }
                if m[t][j] != 0 {
                    reduced = false;
                }
            }
        }
        if !reduced {
            // Remainders survive; the next pass finds a strictly smaller pivot.
            continue;
        }
        // Divisibility chain: the pivot must divide everything that remains.
        let mut chained = true;
        'search: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if m[i][j] % d != 0 {
                    for col in t..cols {
                        m[t][col] += m[i][col];
                    }
                    chained = false;
                    break 'search;
                }
            }
        }
        if chained {
            t += 1;
        }
    }
    (0..n).map(|i| m[i][i].abs()).collect()
}

/// Elementary divisors of the abelianization `G/G'`, each > 1, ascending and
/// each dividing the next.
///
/// A relation matrix for the quotient is assembled from the orders of the
/// generator images together with every exponent tuple that multiplies to the
/// identity coset, then diagonalized. Oversized exponent boxes fall back to a
/// count-by-element-order computation on the quotient.
pub fn abelian_invariants(g: &PermGroup) -> Vec<u64> {
    if g.is_trivial() {
        return Vec::new();
    }
    let derived = g.derived_subgroup();
    let cs = coset_structure(g, &derived).expect("derived subgroup is normal");
    let index = cs.reps.len();
    if index == 1 {
        return Vec::new();
    }
    // Images of the group generators in the quotient, skipping trivial ones.
    let mut imgs: Vec<u32> = Vec::new();
    for gen in g.generators() {
        let c = cs.coset_of(gen).expect("generator lies in the group");
        if c != 0 && !imgs.contains(&c) {
            imgs.push(c);
        }
    }
    let orders: Vec<u64> = imgs.iter().map(|&c| cs.coset_order(c)).collect();
    let boxsize: u128 = orders.iter().map(|&o| o as u128).product();
    if boxsize <= 1 << 16 {
        invariants_by_snf(&cs, &imgs, &orders)
    } else {
        invariants_by_orders(&cs)
    }
}

fn invariants_by_snf(
    cs: &crate::perm::hom::CosetStructure,
    imgs: &[u32],
    orders: &[u64],
) -> Vec<u64> {
    let k = imgs.len();
    // Power tables: powers[i][e] is the coset of imgs[i]^e.
    let powers: Vec<Vec<u32>> = imgs
        .iter()
        .zip(orders)
        .map(|(&c, &o)| {
            let mut v = vec![0u32];
            for e in 1..o {
                v.push(cs.mult(v[(e - 1) as usize], c));
            }
            v
        })
        .collect();

    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (i, &o) in orders.iter().enumerate() {
        let mut row = vec![0i64; k];
        row[i] = o as i64;
        rows.push(row);
    }
    // Every exponent tuple in the box that lands on the identity coset is a
    // relation; together with the diagonal these generate the full lattice.
    let mut exps = vec![0u64; k];
    loop {
        let mut c = 0u32;
        for i in 0..k {
            c = cs.mult(c, powers[i][exps[i] as usize]);
        }
        if c == 0 && exps.iter().any(|&e| e != 0) {
            rows.push(exps.iter().map(|&e| e as i64).collect());
        }
        // Odometer step.
        let mut i = 0;
        loop {
            if i == k {
                let diag = smith_normal_form(rows);
                return diag.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect();
            }
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Invariants of a finite abelian group from the counts of elements of each
/// prime-power order, prime by prime.
fn invariants_by_orders(cs: &crate::perm::hom::CosetStructure) -> Vec<u64> {
    let n = cs.reps.len() as u64;
    let mut partitions: Vec<(u64, Vec<u32>)> = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            partitions.push((p, partition_for_prime(cs, p)));
        }
        p += 1;
    }
    if m > 1 {
        partitions.push((m, partition_for_prime(cs, m)));
    }
    let width = partitions.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
    // Combine largest parts with largest parts to get the divisor chain.
    let mut divisors = vec![1u64; width];
    for (p, parts) in &partitions {
        for (i, &e) in parts.iter().enumerate() {
            divisors[width - parts.len() + i] *= p.pow(e);
        }
    }
    divisors.retain(|&d| d > 1);
    divisors
}

/// The partition (ascending) describing the p-primary component, recovered
/// from N_j = #{x : x^(p^j) = 1}.
fn partition_for_prime(cs: &crate::perm::hom::CosetStructure, p: u64) -> Vec<u32> {
    let n = cs.reps.len() as u32;
    let orders: Vec<u64> = (0..n).map(|c| cs.coset_order(c)).collect();
    let mut counts = vec![0u32]; // c_j = log_p N_j, with c_0 = 0
    let mut j = 1u32;
    loop {
        let pj = p.pow(j);
        let nj = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
        let mut c = 0u32;
        let mut t = nj;
        while t > 1 {
            t /= p;
            c += 1;
        }
        counts.push(c);
        if counts[j as usize] == counts[(j - 1) as usize] {
            counts.pop();
            break;
        }
        j += 1;
    }
    // m_j = c_j - c_{j-1} parts are ≥ j; read off part sizes.
    let mut parts: Vec<u32> = Vec::new();
    let levels = counts.len() - 1;
    let num_parts = if levels == 0 {
        0
    } else {
        counts[1] - counts[0]
    };
    for i in 0..num_parts {
        let mut size = 0;
        for j in 1..=levels {
            let mj = counts[j] - counts[j - 1];
            if mj > i {
                size = j as u32;
            }
        }
        parts.push(size);
    }
    parts.sort_unstable();
    parts
}
