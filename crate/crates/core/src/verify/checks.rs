//! Identity and structure checks over a realized nu(G).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nu::NuGroup;
use crate::perm::check_quotient_isomorphic;
use crate::perm::{Point, PointSet};
use crate::verify::{CheckReport, Scope, ScopePolicy};

fn tuple_desc(n: &NuGroup, label: &str, idxs: &[u32]) -> Vec<String> {
    idxs.iter()
        .map(|&i| format!("{label}[{i}] = {}", n.pres_g.word_to_string(&n.g_words[i as usize])))
        .collect()
}

/// The three commutator identities of nu(G), over quadruples (g, h, x, y)
/// of elements of G:
///
/// (a) [g, h^phi]^([x, y^phi]) = [g, h^phi]^([x, y])
/// (b) [g, h^phi, x^phi] = [g, h, x^phi] = [g, h^phi, x]
///     = [g^phi, h, x^phi] = [g^phi, h^phi, x] = [g^phi, h, x]
/// (c) [[g, h^phi], [x, y^phi]] = [[g, h], [x, y]^phi]
pub fn check_basic_identities(n: &NuGroup, scope: Scope) -> CheckReport {
    let name = "basic-identities";
    let order = n.g_order() as u32;
    let reg = &n.reg;

    let check_one = |g: u32, h: u32, x: u32, y: u32| -> bool {
        let eg = n.emb_g[g as usize];
        let ehp = n.emb_phi[h as usize];
        let ex = n.emb_g[x as usize];
        let eyp = n.emb_phi[y as usize];
        let t = reg.comm(eg, ehp);

        // (a): conjugating a tensor by [x, y^phi] or by [x, y] agree.
        let by_tensor = reg.conj(t, reg.comm(ex, eyp));
        let xy_in_g = n.g_reg.comm(x, y);
        let by_comm = reg.conj(t, n.emb_g[xy_in_g as usize]);
        if by_tensor != by_comm {
            return false;
        }

        // (b): the six weight-three commutators coincide.
        let ehg = n.emb_g[h as usize];
        let egp = n.emb_phi[g as usize];
        let exp = n.emb_phi[x as usize];
        let w = reg.comm(reg.comm(eg, ehp), exp);
        let others = [
            reg.comm(reg.comm(eg, ehg), exp),
            reg.comm(reg.comm(eg, ehp), ex),
            reg.comm(reg.comm(egp, ehg), exp),
            reg.comm(reg.comm(egp, ehp), ex),
            reg.comm(reg.comm(egp, ehg), ex),
        ];
        if others.iter().any(|&o| o != w) {
            return false;
        }

        // (c): commutator of tensors is the tensor of commutators.
        let lhs = reg.comm(t, reg.comm(ex, eyp));
        let gh_in_g = n.g_reg.comm(g, h);
        let rhs = reg.comm(n.emb_g[gh_in_g as usize], n.emb_phi[xy_in_g as usize]);
        lhs == rhs
    };

    match scope {
        Scope::Exhaustive => {
            for g in 0..order {
                for h in 0..order {
                    for x in 0..order {
                        for y in 0..order {
                            if !check_one(g, h, x, y) {
                                return CheckReport::fail(
                                    name,
                                    scope,
                                    tuple_desc(n, "g", &[g, h, x, y]),
                                );
                            }
                        }
                    }
                }
            }
        }
        Scope::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let g = rng.gen_range(0..order);
                let h = rng.gen_range(0..order);
                let x = rng.gen_range(0..order);
                let y = rng.gen_range(0..order);
                if !check_one(g, h, x, y) {
                    return CheckReport::fail(name, scope, tuple_desc(n, "g", &[g, h, x, y]));
                }
            }
        }
    }
    CheckReport::pass(name, scope)
}

/// Decomposition along rho: for alpha, beta in nu(G),
/// [alpha, beta] = [u, v^phi]·theta with u = rho(alpha), v = rho(beta) and
/// theta in Theta(G); and conjugation of tensors factors through rho in both
/// copies: [x, y^phi]^alpha = [x, y^phi]^(rho(alpha)) = [x, y^phi]^(rho(alpha)^phi).
pub fn check_rho_decomposition(n: &NuGroup, scope: Scope) -> CheckReport {
    let name = "rho-decomposition";
    let reg = &n.reg;
    let deg = n.nu_order() as u32;
    let order = n.g_order() as u32;

    let check_pair = |alpha: Point, beta: Point| -> bool {
        let u = n.rho_points[alpha as usize];
        let v = n.rho_points[beta as usize];
        let canonical = reg.comm(n.emb_g[u as usize], n.emb_phi[v as usize]);
        let theta = reg.mul(reg.comm(alpha, beta), reg.inv(canonical));
        n.theta_points.contains(theta)
    };
    let check_conj = |x: u32, y: u32, alpha: Point| -> bool {
        let t = reg.comm(n.emb_g[x as usize], n.emb_phi[y as usize]);
        let w = n.rho_points[alpha as usize] as usize;
        let direct = reg.conj(t, alpha);
        direct == reg.conj(t, n.emb_g[w]) && direct == reg.conj(t, n.emb_phi[w])
    };

    let failure = |alpha: Point, beta: Point| -> Vec<String> {
        vec![format!("alpha = nu point {alpha}"), format!("beta = nu point {beta}")]
    };

    match scope {
        Scope::Exhaustive => {
            for alpha in 0..deg {
                for beta in 0..deg {
                    if !check_pair(alpha, beta) {
                        return CheckReport::fail(name, scope, failure(alpha, beta));
                    }
                }
            }
            for x in 0..order {
                for y in 0..order {
                    for alpha in 0..deg {
                        if !check_conj(x, y, alpha) {
                            return CheckReport::fail(
                                name,
                                scope,
                                vec![format!("x = {x}, y = {y}, alpha = nu point {alpha}")],
                            );
                        }
                    }
                }
            }
        }
        Scope::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let alpha = rng.gen_range(0..deg);
                let beta = rng.gen_range(0..deg);
                if !check_pair(alpha, beta) {
                    return CheckReport::fail(name, scope, failure(alpha, beta));
                }
                let x = rng.gen_range(0..order);
                let y = rng.gen_range(0..order);
                if !check_conj(x, y, alpha) {
                    return CheckReport::fail(
                        name,
                        scope,
                        vec![format!("x = {x}, y = {y}, alpha = nu point {alpha}")],
                    );
                }
            }
        }
    }
    CheckReport::pass(name, scope)
        .with_note("tensor conjugation factors through rho in both copies of G")
}

/// Theta(G) centralizes H = [G, G^phi].
pub fn check_theta_centralizes(n: &NuGroup, policy: &ScopePolicy) -> CheckReport {
    let name = "theta-centralizes-h";
    let reg = &n.reg;
    let space = n.theta_order() as u128 * n.h_order() as u128;
    let scope = policy.decide(space);
    match scope {
        Scope::Exhaustive => {
            for theta in n.theta_points.iter() {
                for h in n.h_points.iter() {
                    if reg.comm(theta, h) != 0 {
                        return CheckReport::fail(
                            name,
                            scope,
                            vec![format!("theta = nu point {theta}"), format!("h = nu point {h}")],
                        );
                    }
                }
            }
        }
        Scope::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let thetas = n.theta_points.as_slice();
            let hs = n.h_points.as_slice();
            for _ in 0..count {
                let theta = thetas[rng.gen_range(0..thetas.len())];
                let h = hs[rng.gen_range(0..hs.len())];
                if reg.comm(theta, h) != 0 {
                    return CheckReport::fail(
                        name,
                        scope,
                        vec![format!("theta = nu point {theta}"), format!("h = nu point {h}")],
                    );
                }
            }
        }
    }
    CheckReport::pass(name, scope)
}

/// nu(G)/Theta(G) is isomorphic to G.
pub fn check_quotient_is_g(n: &NuGroup) -> Result<CheckReport> {
    let name = "quotient-by-theta-is-g";
    let ok = check_quotient_isomorphic(&n.nu, &n.theta, &n.pres_g)?;
    Ok(if ok {
        CheckReport::pass(name, Scope::Exhaustive)
    } else {
        CheckReport::fail(
            name,
            Scope::Exhaustive,
            vec!["quotient is not isomorphic to G".into()],
        )
    })
}

/// Every coset of a finite-index subgroup C ≤ H of index m contains an
/// element of tensor length at most m−1.
pub fn check_coset_length(n: &NuGroup, c: &PointSet) -> Result<CheckReport> {
    let name = "coset-length";
    if !c.is_subset_of(&n.h_points) || c.is_empty() || !c.contains(0) {
        return Err(Error::NotAMember);
    }
    // Subgroup test: closed under products (finite and nonempty suffices).
    for a in c.iter() {
        for b in c.iter() {
            if !c.contains(n.reg.mul(a, b)) {
                return Err(Error::NotAMember);
            }
        }
    }
    let m = n.h_order() / c.len();
    let mut reps: Vec<Point> = Vec::new();
    let mut min_len: Vec<u32> = Vec::new();
    // h_bfs is ordered by tensor length, so the first member of each coset
    // realizes the minimum.
    for &h in &n.h_bfs {
        let known = reps
            .iter()
            .position(|&r| c.contains(n.reg.mul(h, n.reg.inv(r))));
        if known.is_none() {
            reps.push(h);
            min_len.push(n.tensors.length_of(h).expect("member of H"));
        }
    }
    if reps.len() != m {
        return Err(Error::InternalCheck(format!(
            "expected {m} cosets, found {}",
            reps.len()
        )));
    }
    for (i, &len) in min_len.iter().enumerate() {
        if len as usize > m.saturating_sub(1) {
            return Ok(CheckReport::fail(
                name,
                Scope::Exhaustive,
                vec![format!(
                    "coset of nu point {} has minimal tensor length {len} > m-1 = {}",
                    reps[i],
                    m - 1
                )],
            ));
        }
    }
    Ok(CheckReport::pass(name, Scope::Exhaustive))
}

/// Largest nu(G)-conjugacy class among tensors.
pub fn max_tensor_class(n: &NuGroup) -> u64 {
    n.tensors
        .points()
        .iter()
        .map(|&t| n.class_of_point(t).len() as u64)
        .max()
        .unwrap_or(1)
}

/// A commutator [a, b] has at most as many conjugates in G as the tensor
/// [a, b^phi] has in nu(G).
pub fn check_commutator_vs_tensor_class(n: &NuGroup, scope: Scope) -> CheckReport {
    let name = "commutator-class-vs-tensor-class";
    let order = n.g_order() as u32;
    let g_tables: Vec<Vec<Point>> = (0..n.g_reg.num_gens())
        .map(|j| n.g_reg.conj_table_of(n.g_reg.gen_point(j)))
        .collect();

    let check_one = |a: u32, b: u32| -> bool {
        let w = n.g_reg.comm(a, b);
        let g_class = n.g_reg.class_of(w, &g_tables).len();
        let t = n.reg.comm(n.emb_g[a as usize], n.emb_phi[b as usize]);
        let t_class = n.class_of_point(t).len();
        g_class <= t_class
    };

    match scope {
        Scope::Exhaustive => {
            for a in 0..order {
                for b in 0..order {
                    if !check_one(a, b) {
                        return CheckReport::fail(name, scope, tuple_desc(n, "g", &[a, b]));
                    }
                }
            }
        }
        Scope::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let a = rng.gen_range(0..order);
                let b = rng.gen_range(0..order);
                if !check_one(a, b) {
                    return CheckReport::fail(name, scope, tuple_desc(n, "g", &[a, b]));
                }
            }
        }
    }
    CheckReport::pass(name, scope)
}

/// Orders of the subgroups [H, x] over all tensors x; records the maximum.
/// Finiteness is automatic here, so the value feeds trend tables rather than
/// a pass/fail verdict.
pub fn check_comm_finiteness(n: &NuGroup) -> CheckReport {
    let name = "comm-subgroup-orders";
    let reg = &n.reg;
    let mut max_order = 0usize;
    for &x in n.tensors.points() {
        let comms: Vec<Point> = n.h_points.iter().map(|h| reg.comm(h, x)).collect();
        let size = reg.span(&comms).len();
        max_order = max_order.max(size);
    }
    CheckReport::pass(name, Scope::Exhaustive)
        .with_note(format!("largest [H, x] over tensors has order {max_order}"))
}
