use std::collections::VecDeque;
use std::sync::Arc;

use rayon::prelude::*;

use super::Character;
use crate::exactnum::Cyclotomic;
use crate::group::{FiniteGroup, Subgroup};
use crate::{Error, Result};

/// A realisation `chi = Ind_H^G phi` with `phi` one-dimensional on `H`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub subgroup: Subgroup,
    /// Position of `subgroup` in the parent's subgroup list.
    pub subgroup_index: usize,
    /// A one-dimensional character of `subgroup.as_group()`.
    pub phi: Character,
}

/// All homomorphisms `H -> C^*`, as characters of `H.as_group()`.
pub fn one_dim_characters(h: &Subgroup) -> Vec<Character> {
    let (hg, _) = h.as_group();
    one_dim_characters_of(&hg)
}

/// One-dimensional characters of a group through its abelianization. The
/// trivial character comes first; the rest follow the lexicographic order of
/// generator images `zeta_e^k`.
pub fn one_dim_characters_of(g: &Arc<FiniteGroup>) -> Vec<Character> {
    let (ab, proj) = g.abelianization().expect("commutator subgroup is normal");
    let e = ab.exponent();
    let gens = ab.generators().to_vec();
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    loop {
        if let Some(expo) = extend_hom(&ab, &gens, &images, e) {
            let values = proj
                .iter()
                .map(|&q| Cyclotomic::zeta_pow(e, expo[q] as i64))
                .collect();
            out.push(Character::new(g.clone(), values).expect("inflated homomorphism"));
        }
        let mut i = 0;
        while i < images.len() {
            images[i] += 1;
            if images[i] < e {
                break;
            }
            images[i] = 0;
            i += 1;
        }
        if i == images.len() {
            break;
        }
    }
    out
}

/// Extend generator images in `Z/e` to a homomorphism `A -> Z/e`, if consistent.
fn extend_hom(a: &FiniteGroup, gens: &[usize], images: &[usize], e: usize) -> Option<Vec<usize>> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for (&g, &k) in gens.iter().zip(images) {
            let v = a.mul(u, g);
            let w = (map[u] + k) % e;
            if map[v] == usize::MAX {
                map[v] = w;
                queue.push_back(v);
            } else if map[v] != w {
                return None;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if map[a.mul(x, y)] != (map[x] + map[y]) % e {
                return None;
            }
        }
    }
    Some(map)
}

/// Irreducible characters obtained by inducing one-dimensional characters of
/// all subgroups. Each comes with the witness of smallest `|H|`, ties broken
/// by subgroup index. Completeness is certified by `sum chi(1)^2 = |G|`.
/// Output is sorted by degree, then by discovery order.
pub fn irreducible_characters_monomial(g: &Arc<FiniteGroup>) -> Result<Vec<(Character, Witness)>> {
    let subgroups = g.subgroups()?;
    let found: Vec<Vec<(Character, Witness)>> = subgroups
        .par_iter()
        .enumerate()
        .map(|(idx, h)| {
            one_dim_characters(h)
                .into_iter()
                .filter_map(|phi| {
                    let chi = Character::induce(h, &phi).ok()?;
                    chi.is_irreducible().then(|| {
                        (
                            chi,
                            Witness {
                                subgroup: h.clone(),
                                subgroup_index: idx,
                                phi,
                            },
                        )
                    })
                })
                .collect()
        })
        .collect();
    let mut irr: Vec<(Character, Witness)> = Vec::new();
    for (chi, w) in found.into_iter().flatten() {
        if !irr.iter().any(|(c, _)| c.values() == chi.values()) {
            irr.push((chi, w));
        }
    }
    irr.sort_by_key(|(c, _)| c.degree());
    let total: usize = irr.iter().map(|(c, _)| c.degree().pow(2)).sum();
    if total != g.order() {
        return Err(Error::IncompleteTable {
            found: total.to_string(),
            order: g.order(),
        });
    }
    Ok(irr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::group::{cyclic, dihedral, generalized_quaternion, z2_times_a4};

    #[test]
    fn counts_of_linear_characters() {
        let q8 = generalized_quaternion(1).unwrap();
        assert_eq!(one_dim_characters_of(&q8).len(), 4);
        let t = q8.trivial_subgroup();
        let lin = one_dim_characters(&t);
        assert_eq!(lin.len(), 1);
        assert_eq!(lin[0].values(), &[Cyclotomic::one()]);
        let c6 = cyclic(6, "x").unwrap();
        let lin = one_dim_characters_of(&c6);
        assert_eq!(lin.len(), 6);
        assert!(lin[0].values().iter().all(Cyclotomic::is_one));
    }

    #[test]
    fn linear_characters_are_homomorphisms() {
        let g = z2_times_a4().unwrap();
        for chi in one_dim_characters_of(&g) {
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(chi.value(g.mul(a, b)), &(chi.value(a) * chi.value(b)));
                }
            }
        }
    }

    #[test]
    fn degrees_of_small_groups() {
        let degrees = |g: &Arc<FiniteGroup>| -> Vec<usize> {
            irreducible_characters_monomial(g)
                .unwrap()
                .iter()
                .map(|(c, _)| c.degree())
                .collect()
        };
        assert_eq!(degrees(&dihedral(12).unwrap()), [1, 1, 1, 1, 2, 2]);
        assert_eq!(degrees(&generalized_quaternion(1).unwrap()), [1, 1, 1, 1, 2]);
        assert_eq!(degrees(&z2_times_a4().unwrap()), [1, 1, 1, 1, 1, 1, 3, 3]);
    }

    #[test]
    fn witnesses_realise_their_characters() {
        let g = generalized_quaternion(2).unwrap();
        for (chi, w) in irreducible_characters_monomial(&g).unwrap() {
            assert_eq!(Character::induce(&w.subgroup, &w.phi).unwrap(), chi);
            assert_eq!(w.subgroup.index(), chi.degree());
            if chi.degree() == 1 {
                assert_eq!(w.subgroup.order(), g.order());
            }
            assert_eq!(chi.inner_product(&chi).unwrap(), Rational::from_integer(1.into()));
        }
    }
}
