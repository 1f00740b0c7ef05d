//! Fixture loading, random generators and brute-force oracles shared by the
//! integration tests. Oracles here avoid the library's own algorithms.
#![allow(dead_code)]

use contingent::assessment::Assessment;
use contingent::bits::Event;
use contingent::games::Strategy;
use contingent::logic::{Atoms, Formula};
use contingent::model::{Appraisal, SubjectiveModel};
use contingent::rational::Q;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::path::PathBuf;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn assessment(name: &str) -> Assessment {
    Assessment::from_json(&read(name)).unwrap()
}

pub fn model(name: &str) -> SubjectiveModel {
    SubjectiveModel::from_json(&read(name), None).unwrap()
}

pub fn strategy(name: &str, atoms: &Atoms) -> Strategy {
    Strategy::from_json(&read(name), atoms).unwrap().1
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn atoms(n: usize) -> Atoms {
    let names: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
    Atoms::new(&names).unwrap()
}

/// A monotone set function on `2^n` indexed by mask, with `ν(∅)=0` and
/// `ν(Ω)=1`: half an additive measure plus half a max of weighted
/// indicator capacities, or one of the two alone.
pub fn random_capacity(rng: &mut impl Rng, n: usize, den: i64) -> Vec<Q> {
    let full = (1u64 << n) - 1;
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=den)).collect();
    let wsum: i64 = weights.iter().sum::<i64>().max(1);
    let additive = |a: u64| -> Q {
        if weights.iter().all(|&w| w == 0) {
            return if a == full { Q::one() } else { Q::zero() };
        }
        let s: i64 = (0..n).filter(|i| a & (1 << i) != 0).map(|i| weights[i]).sum();
        q(s, wsum)
    };
    let mut focal: Vec<(u64, Q)> = vec![(full, Q::one())];
    for _ in 0..rng.gen_range(0..4) {
        let b = rng.gen_range(1..=full);
        focal.push((b, q(rng.gen_range(0..=den), den)));
    }
    let necessity = |a: u64| -> Q {
        focal
            .iter()
            .filter(|(b, _)| b & !a == 0)
            .map(|(_, c)| c.clone())
            .max()
            .unwrap_or_else(Q::zero)
    };
    let mode = rng.gen_range(0..3);
    (0..=full)
        .map(|a| match mode {
            0 => additive(a),
            1 => necessity(a),
            _ => (additive(a) + necessity(a)) / q(2, 1),
        })
        .collect()
}

/// Builds a model with no stored formulas and `λ` tabulated on every event.
pub fn table_model(nu: &[Q]) -> SubjectiveModel {
    let n = nu.len().trailing_zeros() as usize;
    let states: Vec<String> = (0..n).map(|i| format!("w{}", i + 1)).collect();
    let table: BTreeMap<Event, Q> = nu
        .iter()
        .enumerate()
        .map(|(m, v)| (Event::from_mask(n, m as u64), v.clone()))
        .collect();
    SubjectiveModel::new(&atoms(1), states, Vec::new(), Appraisal::Table(table)).unwrap()
}

/// Random assessment on at most 3 atoms: `Φ` closed under conjunction,
/// `π` the restriction of a monotone capacity on valuations, so NT, E
/// and I hold by construction.
pub fn random_monotone_assessment(rng: &mut impl Rng) -> Assessment {
    let n = rng.gen_range(1..=3);
    let a = atoms(n);
    let nv = 1usize << n;
    let full = (1u64 << nv) - 1;
    let mut sets: Vec<u64> = vec![0, full];
    for _ in 0..rng.gen_range(1..=5) {
        sets.push(rng.gen_range(0..=full));
    }
    sets.sort_unstable();
    sets.dedup();
    loop {
        let mut grew = false;
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                let m = sets[i] & sets[j];
                if !sets.contains(&m) {
                    sets.push(m);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let nu = random_capacity(rng, nv, 6);
    let values: Vec<(Formula, Q)> = sets
        .iter()
        .map(|&m| {
            let f = a.formula_for(&Event::from_mask(nv, m));
            (f, nu[m as usize].clone())
        })
        .collect();
    Assessment::new(&a, values).unwrap()
}

/// Choquet integral by the sorted-permutation formula on a full table.
pub fn choquet_oracle(x: &[Q], nu: &[Q]) -> Q {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[j].cmp(&x[i]));
    let mut prev = 0u64;
    let mut total = Q::zero();
    for &i in &order {
        let cur = prev | (1 << i);
        total += &x[i] * (&nu[cur as usize] - &nu[prev as usize]);
        prev = cur;
    }
    total
}

/// Möbius masses by explicit inclusion-exclusion over subsets.
pub fn mobius_oracle(nu: &[Q]) -> Vec<Q> {
    (0..nu.len() as u64)
        .map(|a| {
            let mut m = Q::zero();
            let mut b = a;
            loop {
                let sign = (a & !b).count_ones() % 2 == 0;
                if sign {
                    m += &nu[b as usize];
                } else {
                    m -= &nu[b as usize];
                }
                if b == 0 {
                    break;
                }
                b = (b - 1) & a;
            }
            m
        })
        .collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mixed(alts: &[Vec<Q>], mu: &[Q]) -> Vec<Q> {
    (0..alts[0].len())
        .map(|w| mu.iter().zip(alts).map(|(m, a)| m * &a[w]).sum())
        .collect()
}

pub fn strictly_dominates(y: &[Q], x: &[Q]) -> bool {
    y.iter().zip(x).all(|(a, b)| a > b)
}

pub fn weakly_dominates(y: &[Q], x: &[Q]) -> bool {
    y.iter().zip(x).all(|(a, b)| a >= b) && y.iter().zip(x).any(|(a, b)| a > b)
}

/// All points of the simplex in `R^k` with denominator `den`.
pub fn simplex_grid(k: usize, den: i64) -> Vec<Vec<Q>> {
    fn rec(k: usize, left: i64, den: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<Q>>) {
        if k == 1 {
            cur.push(left);
            out.push(cur.iter().map(|&c| q(c, den)).collect());
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(k - 1, left - c, den, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, den, den, &mut Vec::new(), &mut out);
    out
}

/// Whether some mixture on the `den` grid dominates `x`.
pub fn grid_dominated(x: &[Q], alts: &[Vec<Q>], den: i64, weak: bool) -> bool {
    simplex_grid(alts.len(), den).iter().any(|mu| {
        let y = mixed(alts, mu);
        if weak {
            weakly_dominates(&y, x)
        } else {
            strictly_dominates(&y, x)
        }
    })
}

/// Unique solution of a square system by Gauss-Jordan, if nonsingular.
fn solve_square(mut m: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        b.swap(c, p);
        let piv = m[c][c].clone();
        for v in m[c].iter_mut() {
            *v /= &piv;
        }
        b[c] /= &piv;
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..n {
                    let d = &f * &m[c][k];
                    m[r][k] -= d;
                }
                let d = &f * &b[c];
                b[r] -= d;
            }
        }
    }
    Some(b)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Maximum of `obj·z` over `{ineq·z ≥ b, eq·z = b}` by enumerating every
/// vertex. Assumes the region is pointed and the maximum is attained.
pub fn vertex_max(
    obj: &[Q],
    ineqs: &[(Vec<Q>, Q)],
    eqs: &[(Vec<Q>, Q)],
) -> Option<Q> {
    let dim = obj.len();
    let free = dim - eqs.len();
    let mut best: Option<Q> = None;
    for active in combinations(ineqs.len(), free) {
        let rows: Vec<&(Vec<Q>, Q)> = eqs.iter().chain(active.iter().map(|&i| &ineqs[i])).collect();
        let Some(z) = solve_square(
            rows.iter().map(|r| r.0.clone()).collect(),
            rows.iter().map(|r| r.1.clone()).collect(),
        ) else {
            continue;
        };
        if ineqs.iter().all(|(a, b)| dot(a, &z) >= *b) {
            let v = dot(obj, &z);
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    }
    best
}

/// Exact dominance oracle by vertex enumeration.
pub fn vertex_dominated(x: &[Q], alts: &[Vec<Q>], weak: bool) -> bool {
    let k = alts.len();
    let n = x.len();
    if weak {
        // max Σ_w (mix − x)(w) over mixtures with mix ≥ x.
        let obj: Vec<Q> = (0..k).map(|i| alts[i].iter().sum()).collect();
        let mut ineqs: Vec<(Vec<Q>, Q)> = (0..n)
            .map(|w| ((0..k).map(|i| alts[i][w].clone()).collect(), x[w].clone()))
            .collect();
        for i in 0..k {
            let mut e = vec![Q::zero(); k];
            e[i] = Q::one();
            ineqs.push((e, Q::zero()));
        }
        let eqs = vec![(vec![Q::one(); k], Q::one())];
        let xs: Q = x.iter().sum();
        vertex_max(&obj, &ineqs, &eqs).is_some_and(|v| v > xs)
    } else {
        // max ε over (μ, ε) with mix(w) − ε ≥ x(w).
        let mut obj = vec![Q::zero(); k + 1];
        obj[k] = Q::one();
        let mut ineqs: Vec<(Vec<Q>, Q)> = (0..n)
            .map(|w| {
                let mut r: Vec<Q> = (0..k).map(|i| alts[i][w].clone()).collect();
                r.push(-Q::one());
                (r, x[w].clone())
            })
            .collect();
        for i in 0..k {
            let mut e = vec![Q::zero(); k + 1];
            e[i] = Q::one();
            ineqs.push((e, Q::zero()));
        }
        let mut sum = vec![Q::one(); k + 1];
        sum[k] = Q::zero();
        let eqs = vec![(sum, Q::one())];
        vertex_max(&obj, &ineqs, &eqs).is_some_and(|v| v.is_positive())
    }
}

/// The payoff values with denominator at most 4 in `[0, 1]`.
pub fn small_payoffs() -> Vec<Q> {
    let mut v: Vec<Q> = (1..=4)
        .flat_map(|d| (0..=d).map(move |n| q(n, d)))
        .collect();
    v.sort();
    v.dedup();
    v
}

pub fn random_acts(rng: &mut impl Rng, k: usize, n: usize) -> Vec<Vec<Q>> {
    let vals = small_payoffs();
    (0..k)
        .map(|_| (0..n).map(|_| vals.choose(rng).unwrap().clone()).collect())
        .collect()
}
