//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use welldoc_core::word::{Letter, Morphism, Word};

pub fn morphism(images: &[&str]) -> Morphism {
    Morphism::new(images.iter().map(|s| Word::decode(s, images.len()).unwrap()).collect()).unwrap()
}

pub fn word(s: &str) -> Word {
    Word::decode(s, 10).unwrap()
}

/// Named fixtures used across suites.
pub fn fixtures() -> Vec<(&'static str, Morphism)> {
    vec![
        ("counterexample", morphism(&["02", "101", "102"])),
        ("fibonacci", morphism(&["01", "0"])),
        ("thue-morse", morphism(&["01", "10"])),
        ("tribonacci", morphism(&["01", "02", "0"])),
        ("period-doubling", morphism(&["01", "00"])),
        ("primitive-3", morphism(&["010212", "0102112", "010221"])),
        ("chain-4", morphism(&["01", "2", "3", "30"])),
        ("unary", morphism(&["00"])),
    ]
}

/// `phi^n(0)` by repeated application of the images, with no streaming.
pub fn iterate(phi: &Morphism, n: usize) -> Vec<Letter> {
    let mut w = vec![0 as Letter];
    for _ in 0..n {
        w = w.iter().flat_map(|&a| phi.image(a).iter().copied()).collect();
    }
    w
}

/// Prefix of length `len` of the fixed point, by iterating until long enough.
pub fn naive_prefix(phi: &Morphism, len: usize) -> Vec<Letter> {
    let mut w = vec![0 as Letter];
    while w.len() < len {
        let next: Vec<Letter> = w.iter().flat_map(|&a| phi.image(a).iter().copied()).collect();
        assert!(next.len() > w.len(), "morphism does not grow the prefix");
        w = next;
    }
    w.truncate(len);
    w
}

pub fn counts(w: &[Letter], sigma: usize) -> Vec<i64> {
    let mut c = vec![0i64; sigma];
    for &a in w {
        c[a as usize] += 1;
    }
    c
}

/// Returns to 0 within `w`, found by splitting at every 0.
pub fn naive_returns(w: &[Letter]) -> BTreeSet<Vec<Letter>> {
    let zeros: Vec<usize> = (0..w.len()).filter(|&i| w[i] == 0).collect();
    zeros.windows(2).map(|p| w[p[0]..p[1]].to_vec()).collect()
}

/// `S_{a,b}` of the word `w` modulo `m`, by listing every factor.
pub fn naive_s_table(w: &[Letter], sigma: usize, m: u64) -> Vec<BTreeSet<Vec<u64>>> {
    let mut table = vec![BTreeSet::new(); sigma * sigma];
    for i in 0..w.len() {
        let mut acc = vec![0u64; sigma];
        for j in i..w.len() {
            acc[w[j] as usize] = (acc[w[j] as usize] + 1) % m;
            table[w[i] as usize * sigma + w[j] as usize].insert(acc.clone());
        }
    }
    table
}

/// Cofactor expansion determinant.
pub fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect())
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * cofactor_det(&minor);
    }
    total
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Diagonal of the Smith normal form of an integer matrix (rows x cols),
/// computed by elementary row and column operations.
pub fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest non-zero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut() {
                        let v = row[t];
                        row[j] -= q * v;
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let mut fix = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if a[i][j] % p != 0 {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j];
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            } else {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Whether the vectors generate `Z^n`: the Smith form of the `n x k` matrix
/// with the vectors as columns has `n` unit invariant factors.
pub fn snf_generates(vectors: &[Vec<i64>], n: usize) -> bool {
    let a: Vec<Vec<i128>> = (0..n).map(|i| vectors.iter().map(|v| v[i] as i128).collect()).collect();
    let d = smith_diagonal(a);
    d.len() == n && d.iter().all(|&x| x == 1)
}

/// Greatest common divisor of all `n x n` minors, a second route to the same
/// question (the product of the invariant factors).
pub fn minor_gcd(vectors: &[Vec<i64>], n: usize) -> i128 {
    let k = vectors.len();
    let mut g = 0;
    let mut pick = Vec::new();
    fn rec(start: usize, k: usize, n: usize, pick: &mut Vec<usize>, vectors: &[Vec<i64>], g: &mut i128) {
        if pick.len() == n {
            let m: Vec<Vec<i128>> = (0..n).map(|i| pick.iter().map(|&c| vectors[c][i] as i128).collect()).collect();
            *g = gcd(*g, cofactor_det(&m));
            return;
        }
        for c in start..k {
            pick.push(c);
            rec(c + 1, k, n, pick, vectors, g);
            pick.pop();
        }
    }
    rec(0, k, n, &mut pick, vectors, &mut g);
    g
}

/// Subgroup of `(Z/mZ)^n` generated by the given vectors, by closure.
pub fn subgroup_mod(generators: &[Vec<u64>], m: u64) -> BTreeSet<Vec<u64>> {
    let n = generators.first().map_or(0, Vec::len);
    let mut group: HashSet<Vec<u64>> = HashSet::from([vec![0; n]]);
    let mut frontier = vec![vec![0; n]];
    while let Some(v) = frontier.pop() {
        for g in generators {
            let s: Vec<u64> = v.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if group.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    group.into_iter().collect()
}

/// Rank of integer vectors modulo a prime, by plain Gaussian elimination.
pub fn naive_rank_mod(vectors: &[Vec<i64>], p: i64) -> usize {
    let mut rows: Vec<Vec<i64>> = vectors.iter().map(|v| v.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let n = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, r);
        let inv = (1..p).find(|&x| rows[rank][col] * x % p == 1).unwrap();
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..n {
                    rows[r][c] = (rows[r][c] - f * rows[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn random_morphism<R: Rng>(rng: &mut R, sigma: usize, max_len: usize) -> Morphism {
    let images = (0..sigma)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            Word::new((0..len).map(|_| rng.gen_range(0..sigma) as Letter).collect())
        })
        .collect();
    Morphism::new(images).unwrap()
}

/// Random morphism prolongable on 0: `phi(0)` starts with 0 and has length
/// at least two.
pub fn random_prolongable<R: Rng>(rng: &mut R, sigma: usize, max_len: usize) -> Morphism {
    let mut images: Vec<Word> = random_morphism(rng, sigma, max_len).images().to_vec();
    let len = rng.gen_range(2..=max_len.max(2));
    let mut first = vec![0 as Letter];
    first.extend((1..len).map(|_| rng.gen_range(0..sigma) as Letter));
    images[0] = Word::new(first);
    Morphism::new(images).unwrap()
}

/// Random morphism whose images all contain every letter, prolongable on 0.
pub fn random_primitive<R: Rng>(rng: &mut R, sigma: usize, extra: usize) -> Morphism {
    let images = (0..sigma)
        .map(|a| {
            let mut letters: Vec<Letter> = (0..sigma as Letter).collect();
            letters.extend((0..rng.gen_range(0..=extra)).map(|_| rng.gen_range(0..sigma) as Letter));
            for i in (1..letters.len()).rev() {
                letters.swap(i, rng.gen_range(0..=i));
            }
            if a == 0 {
                let z = letters.iter().position(|&x| x == 0).unwrap();
                letters.swap(0, z);
            }
            Word::new(letters)
        })
        .collect();
    Morphism::new(images).unwrap()
}
