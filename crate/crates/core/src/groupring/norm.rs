use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CentralElement, GroupRingElement};
use crate::character::{same_group, CharacterTable};
use crate::exactnum::Cyclotomic;
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// Fraction-free (Bareiss) determinant over the cyclotomics.
pub fn determinant(mut m: Vec<Vec<Cyclotomic>>) -> Cyclotomic {
    let n = m.len();
    if n == 0 {
        return Cyclotomic::one();
    }
    let mut negate = false;
    let mut prev = Cyclotomic::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Cyclotomic::zero(1);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.checked_div(&prev).expect("Bareiss pivots are nonzero").minimal();
            }
            m[i][k] = Cyclotomic::zero(1);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].minimal();
    if negate {
        -d
    } else {
        d
    }
}

/// `nr(alpha)`: component at `chi` is `det rho_chi(alpha)`.
pub fn reduced_norm(table: &Arc<CharacterTable>, alpha: &GroupRingElement) -> Result<CentralElement> {
    reduced_norm_matrix(table, &[vec![alpha.clone()]])
}

/// Reduced norm of an `n x n` matrix over `Q(zeta)[G]`: the determinant of
/// the `n chi(1)` square block matrix `(rho_chi(M_ab))`.
pub fn reduced_norm_matrix(table: &Arc<CharacterTable>, m: &[Vec<GroupRingElement>]) -> Result<CentralElement> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    if m.iter().flatten().any(|x| !same_group(x.group(), table.group())) {
        return Err(Error::InvalidInput("matrix entries over a different group".into()));
    }
    let comps: Vec<Cyclotomic> = (0..table.len())
        .into_par_iter()
        .map(|i| {
            let rep = table.monomial_rep(i);
            let d = rep.degree();
            let mut big = vec![vec![Cyclotomic::zero(1); n * d]; n * d];
            for (a, row) in m.iter().enumerate() {
                for (b, x) in row.iter().enumerate() {
                    let block = rep.apply(x);
                    for (r, brow) in block.into_iter().enumerate() {
                        for (c, v) in brow.into_iter().enumerate() {
                            big[a * d + r][b * d + c] = v;
                        }
                    }
                }
            }
            determinant(big)
        })
        .collect();
    CentralElement::new(table, comps)
}

/// Integral group ring element with coefficients in `[-bound, bound]`.
pub fn random_integral_element(group: &Arc<FiniteGroup>, bound: i64, rng: &mut impl Rng) -> GroupRingElement {
    let coeffs = group
        .elements()
        .map(|_| Cyclotomic::from_int(rng.gen_range(-bound..=bound)))
        .collect();
    GroupRingElement::from_coeffs(group, coeffs).expect("one coefficient per element")
}

/// Reduced norms of `count` pseudo-random integral matrices of size at most
/// `matrix_size_bound`, deterministic in `seed`.
pub fn nr_ideal_sample(
    table: &Arc<CharacterTable>,
    count: usize,
    matrix_size_bound: usize,
    coefficient_bound: i64,
    seed: u64,
) -> Result<Vec<CentralElement>> {
    if matrix_size_bound == 0 {
        return Err(Error::InvalidParameter("matrix_size_bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = table.group();
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=matrix_size_bound);
            let m: Vec<Vec<GroupRingElement>> = (0..n)
                .map(|_| (0..n).map(|_| random_integral_element(g, coefficient_bound, &mut rng)).collect())
                .collect();
            reduced_norm_matrix(table, &m)
        })
        .collect()
}
