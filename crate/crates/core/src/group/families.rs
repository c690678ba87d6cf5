use std::collections::VecDeque;
use std::sync::Arc;

use super::FiniteGroup;
use crate::{Error, Result};

/// Reindex a raw law so that elements appear in shortlex order of words in
/// the generators (breadth-first, right multiplication, generator order).
fn canonical(
    name: String,
    n: usize,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
    gen_names: &[&str],
    raw_label: impl Fn(usize) -> String,
) -> Result<Arc<FiniteGroup>> {
    let mut new_of = vec![usize::MAX; n];
    let mut order = vec![identity];
    new_of[identity] = 0;
    let mut queue = VecDeque::from([identity]);
    while let Some(u) = queue.pop_front() {
        for &g in gens {
            let v = mul(u, g);
            if new_of[v] == usize::MAX {
                new_of[v] = order.len();
                order.push(v);
                queue.push_back(v);
            }
        }
    }
    if order.len() != n {
        return Err(Error::InvalidGroup(format!("{name}: generators do not generate")));
    }
    let table = order
        .iter()
        .map(|&a| order.iter().map(|&b| new_of[mul(a, b)]).collect())
        .collect();
    let labels = order.iter().map(|&a| raw_label(a)).collect();
    FiniteGroup::from_table(
        name,
        table,
        labels,
        gens.iter().map(|&g| new_of[g]).collect(),
        gen_names.iter().map(|s| s.to_string()).collect(),
    )
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn join_label(parts: &[String]) -> String {
    let s: String = parts.concat();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Cyclic group of order `n` generated by `name`.
pub fn cyclic(n: usize, name: &str) -> Result<Arc<FiniteGroup>> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group of order 0".into()));
    }
    let gens: Vec<usize> = if n == 1 { vec![] } else { vec![1] };
    let names: Vec<&str> = if n == 1 { vec![] } else { vec![name] };
    canonical(
        format!("C{n}"),
        n,
        0,
        |a, b| (a + b) % n,
        &gens,
        &names,
        |a| join_label(&[power_label(name, a)]),
    )
}

/// `<x, y | x^{N/2} = y^2 = 1, y x y^{-1} = x^{-1}>` of order `N`; elements `y^s x^k`.
pub fn dihedral(order: usize) -> Result<Arc<FiniteGroup>> {
    if order < 4 || order % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "dihedral group needs even order >= 4, got {order}"
        )));
    }
    let m = order / 2;
    let enc = |s: usize, k: usize| s * m + k;
    let mul = move |a: usize, b: usize| {
        let (s, k) = (a / m, a % m);
        let (t, l) = (b / m, b % m);
        let k2 = if t == 1 { (m - k) % m } else { k };
        enc((s + t) % 2, (k2 + l) % m)
    };
    canonical(
        format!("D{order}"),
        order,
        0,
        mul,
        &[enc(0, 1), enc(1, 0)],
        &["x", "y"],
        move |a| join_label(&[power_label("y", a / m), power_label("x", a % m)]),
    )
}

/// `Q_{2^{n+2}} = <x, y | x^{2^n} = y^2, x^{2^{n+1}} = 1, y x y^{-1} = x^{-1}>`.
pub fn generalized_quaternion(n: u32) -> Result<Arc<FiniteGroup>> {
    if n == 0 || n > 12 {
        return Err(Error::InvalidParameter(format!(
            "generalized quaternion parameter must be in 1..=12, got {n}"
        )));
    }
    let m = 1usize << (n + 1);
    let half = 1usize << n;
    let enc = |s: usize, k: usize| s * m + k;
    let mul = move |a: usize, b: usize| {
        let (s, k) = (a / m, a % m);
        let (t, l) = (b / m, b % m);
        let k2 = if t == 1 { (m - k) % m } else { k };
        let extra = if s + t == 2 { half } else { 0 };
        enc((s + t) % 2, (k2 + l + extra) % m)
    };
    canonical(
        format!("Q{}", 2 * m),
        2 * m,
        0,
        mul,
        &[enc(0, 1), enc(1, 0)],
        &["x", "y"],
        move |a| join_label(&[power_label("y", a / m), power_label("x", a % m)]),
    )
}

/// `Z/2 x S_3 = <sigma, tau, j>` with `tau sigma tau = sigma^{-1}` and `j` central.
/// Elements are `sigma^a tau^b j^c`.
pub fn z2_times_s3() -> Result<Arc<FiniteGroup>> {
    let enc = |a: usize, b: usize, c: usize| (c * 2 + b) * 3 + a;
    let dec = |x: usize| (x % 3, (x / 3) % 2, x / 6);
    let mul = move |x: usize, y: usize| {
        let (a, b, c) = dec(x);
        let (a2, b2, c2) = dec(y);
        // tau^b sigma^{a2} = sigma^{(-1)^b a2} tau^b
        let a2 = if b == 1 { (3 - a2) % 3 } else { a2 };
        enc((a + a2) % 3, (b + b2) % 2, (c + c2) % 2)
    };
    canonical(
        "Z2xS3".into(),
        12,
        0,
        mul,
        &[enc(1, 0, 0), enc(0, 1, 0), enc(0, 0, 1)],
        &["σ", "τ", "j"],
        move |x| {
            let (a, b, c) = dec(x);
            join_label(&[power_label("σ", a), power_label("τ", b), power_label("j", c)])
        },
    )
}

/// `Z/2 x A_4` with `x = (12)(34)`, `y = (123)` and central `j`.
pub fn z2_times_a4() -> Result<Arc<FiniteGroup>> {
    let perms = even_permutations_4();
    let idx = |p: &[usize; 4]| perms.iter().position(|q| q == p).unwrap();
    let compose = |p: &[usize; 4], q: &[usize; 4]| -> [usize; 4] {
        // (p q)(i) = p(q(i)): apply q first
        [p[q[0]], p[q[1]], p[q[2]], p[q[3]]]
    };
    let n = 24;
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let (pa, ca) = (&perms[a % 12], a / 12);
                    let (pb, cb) = (&perms[b % 12], b / 12);
                    idx(&compose(pa, pb)) + 12 * ((ca + cb) % 2)
                })
                .collect()
        })
        .collect();
    let x = idx(&[1, 0, 3, 2]);
    let y = idx(&[1, 2, 0, 3]);
    let j = 12 + idx(&[0, 1, 2, 3]);
    let e = idx(&[0, 1, 2, 3]);
    let words = shortlex_words(n, e, |a, b| table[a][b], &[x, y, j], &["x", "y", "j"]);
    canonical(
        "Z2xA4".into(),
        n,
        e,
        |a, b| table[a][b],
        &[x, y, j],
        &["x", "y", "j"],
        |a| words[a].clone(),
    )
}

fn even_permutations_4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut s = p.to_vec();
                    s.sort_unstable();
                    s.dedup();
                    if s.len() != 4 {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| (i + 1..4).map(move |k| (i, k)))
                        .filter(|&(i, k)| p[i] > p[k])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Shortlex-minimal word for each raw element, with runs written as powers.
fn shortlex_words(
    n: usize,
    identity: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
    names: &[&str],
) -> Vec<String> {
    let mut word: Vec<Option<Vec<usize>>> = vec![None; n];
    word[identity] = Some(vec![]);
    let mut queue = VecDeque::from([identity]);
    while let Some(u) = queue.pop_front() {
        for (gi, &g) in gens.iter().enumerate() {
            let v = mul(u, g);
            if word[v].is_none() {
                let mut w = word[u].clone().unwrap();
                w.push(gi);
                word[v] = Some(w);
                queue.push_back(v);
            }
        }
    }
    word.into_iter()
        .map(|w| {
            let w = w.unwrap_or_default();
            let mut parts = Vec::new();
            let mut i = 0;
            while i < w.len() {
                let mut k = 1;
                while i + k < w.len() && w[i + k] == w[i] {
                    k += 1;
                }
                parts.push(power_label(names[w[i]], k));
                i += k;
            }
            join_label(&parts)
        })
        .collect()
}

/// `A x B` with generators of `A` followed by those of `B`; labels concatenate.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Arc<FiniteGroup>> {
    let nb = b.order();
    let n = a.order() * nb;
    let mul = |x: usize, y: usize| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    let mut gens: Vec<usize> = a.generators().iter().map(|&g| g * nb).collect();
    gens.extend(b.generators().iter().copied());
    let names: Vec<&str> = a
        .generator_names()
        .iter()
        .chain(b.generator_names())
        .map(String::as_str)
        .collect();
    let label = |x: usize| {
        let la = if x / nb == 0 { String::new() } else { a.label(x / nb).to_string() };
        let lb = if x % nb == 0 { String::new() } else { b.label(x % nb).to_string() };
        join_label(&[la, lb])
    };
    canonical(
        format!("{}x{}", a.name(), b.name()),
        n,
        0,
        mul,
        &gens,
        &names,
        label,
    )
}

/// `D_{2p} x Z/2` with the central factor generated by `j`.
pub fn z2_times_dihedral(p: usize) -> Result<Arc<FiniteGroup>> {
    let d = dihedral(2 * p)?;
    let c = cyclic(2, "j")?;
    let g = direct_product(&d, &c)?;
    Ok(rename(g, format!("Z2xD{}", 2 * p)))
}

fn rename(g: Arc<FiniteGroup>, name: String) -> Arc<FiniteGroup> {
    FiniteGroup::from_table(
        name,
        g.table().to_vec(),
        g.labels().to_vec(),
        g.generators().to_vec(),
        g.generator_names().to_vec(),
    )
    .expect("valid group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::find_isomorphism;

    #[test]
    fn canonical_enumeration_is_shortlex() {
        let g = dihedral(12).unwrap();
        let first: Vec<&str> = (0..6).map(|i| g.label(i)).collect();
        assert_eq!(first, ["1", "x", "y", "x^2", "yx^5", "yx"]);
        let h = z2_times_s3().unwrap();
        let first: Vec<&str> = (0..4).map(|i| h.label(i)).collect();
        assert_eq!(first, ["1", "σ", "τ", "j"]);
    }

    #[test]
    fn product_with_trivial_group() {
        let a = dihedral(10).unwrap();
        let t = cyclic(1, "e").unwrap();
        let p = direct_product(&a, &t).unwrap();
        assert_eq!(p.order(), 10);
        assert!(find_isomorphism(&p, &a).is_some());
    }

    #[test]
    fn product_orders_multiply() {
        let a = cyclic(3, "a").unwrap();
        let b = generalized_quaternion(1).unwrap();
        assert_eq!(direct_product(&a, &b).unwrap().order(), 24);
    }

    #[test]
    fn z2_d6_is_d12() {
        let g = z2_times_dihedral(3).unwrap();
        assert!(find_isomorphism(&g, &dihedral(12).unwrap()).is_some());
        assert!(find_isomorphism(&z2_times_s3().unwrap(), &dihedral(12).unwrap()).is_some());
        assert!(find_isomorphism(&generalized_quaternion(1).unwrap(), &dihedral(8).unwrap()).is_none());
    }

    #[test]
    fn a4_words() {
        let g = z2_times_a4().unwrap();
        let yx = g.eval_word("yx").unwrap();
        assert_eq!(g.element_order(yx), 3);
        let y2x = g.eval_word("y^2x").unwrap();
        assert_ne!(g.class_of(yx), g.class_of(y2x));
        assert_eq!(g.element_order(g.eval_word("x").unwrap()), 2);
    }
}
