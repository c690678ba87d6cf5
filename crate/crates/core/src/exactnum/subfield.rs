use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::cyclotomic::{cyclotomic_derivative_at_zeta, Cyclotomic};
use super::lattice::integer_kernel;
use super::numtheory::{euler_phi, units_mod};
use super::rational::Rational;
use crate::{Error, Result};

/// The subfield of `Q(zeta_m)` fixed by `{sigma_a : a in stabilizer}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CyclotomicSubfield {
    m: usize,
    stabilizer: Vec<usize>,
    #[serde(skip)]
    basis: OnceLock<Vec<Cyclotomic>>,
}

impl PartialEq for CyclotomicSubfield {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.stabilizer == other.stabilizer
    }
}

impl Eq for CyclotomicSubfield {}

impl CyclotomicSubfield {
    pub fn new(m: usize, stabilizer: impl IntoIterator<Item = usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("cyclotomic order 0".into()));
        }
        let units = units_mod(m);
        let mut stab: Vec<usize> = stabilizer.into_iter().map(|a| a % m).collect();
        if m <= 2 {
            stab = units.clone();
        }
        stab.sort_unstable();
        stab.dedup();
        if stab.iter().any(|a| !units.contains(a)) {
            return Err(Error::InvalidParameter(format!(
                "stabilizer {stab:?} contains non-units mod {m}"
            )));
        }
        let closed = stab.contains(&(1 % m))
            && stab
                .iter()
                .all(|a| stab.iter().all(|b| stab.binary_search(&((a * b) % m)).is_ok()));
        if !closed {
            return Err(Error::InvalidParameter(format!(
                "stabilizer {stab:?} is not a subgroup of (Z/{m})^x"
            )));
        }
        Ok(CyclotomicSubfield {
            m,
            stabilizer: stab,
            basis: OnceLock::new(),
        })
    }

    /// `Q(zeta_m)` itself.
    pub fn full(m: usize) -> Self {
        Self::new(m, [1]).expect("trivial stabilizer")
    }

    pub fn rationals() -> Self {
        Self::new(1, [0]).expect("Q")
    }

    /// The field generated by the given values, realised inside `Q(zeta_m)`
    /// for `m` the lcm of their orders.
    pub fn generated_by(values: &[Cyclotomic]) -> Self {
        let m = values.iter().fold(1usize, |acc, v| acc.lcm(&v.order()));
        let lifted: Vec<Cyclotomic> = values.iter().map(|v| v.embed(m).unwrap()).collect();
        let stab = units_mod(m)
            .into_iter()
            .filter(|&a| lifted.iter().all(|v| v.galois_exp(a.max(1)) == *v))
            .collect::<Vec<_>>();
        Self::new(m, stab).expect("fixing group is a subgroup")
    }

    pub fn ambient_order(&self) -> usize {
        self.m
    }

    pub fn stabilizer(&self) -> &[usize] {
        &self.stabilizer
    }

    pub fn degree(&self) -> usize {
        euler_phi(self.m) / self.stabilizer.len()
    }

    pub fn contains(&self, x: &Cyclotomic) -> bool {
        match x.to_order(self.m) {
            Ok(y) => self
                .stabilizer
                .iter()
                .all(|&a| y.galois_exp(a.max(1)) == y),
            Err(_) => false,
        }
    }

    /// Coset representatives of the stabilizer in `(Z/m)^x`; these index the
    /// embeddings of the subfield.
    pub fn embedding_exponents(&self) -> Vec<usize> {
        let mut seen = vec![false; self.m.max(1)];
        let mut reps = Vec::new();
        for a in units_mod(self.m) {
            if seen[a] {
                continue;
            }
            reps.push(a);
            for &h in &self.stabilizer {
                seen[(a * h) % self.m.max(1)] = true;
            }
        }
        reps
    }

    pub fn trace(&self, x: &Cyclotomic) -> Result<Rational> {
        let y = self.lift(x)?;
        Ok(y.trace() / Rational::from_integer(BigInt::from(self.stabilizer.len())))
    }

    pub fn norm(&self, x: &Cyclotomic) -> Result<Rational> {
        let y = self.lift(x)?;
        let mut p = Cyclotomic::one();
        for a in self.embedding_exponents() {
            p = &p * &y.galois_exp(a.max(1));
        }
        Ok(p.as_rational().expect("norm is rational"))
    }

    fn lift(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        let y = x.to_order(self.m)?;
        if !self.stabilizer.iter().all(|&a| y.galois_exp(a.max(1)) == y) {
            return Err(Error::NotInField(format!(
                "{x} is not fixed by the stabilizer {:?} mod {}",
                self.stabilizer, self.m
            )));
        }
        Ok(y)
    }

    /// A Z-basis of the ring of integers, as elements of `Q(zeta_m)`.
    pub fn integral_basis(&self) -> &[Cyclotomic] {
        self.basis.get_or_init(|| {
            let phi = euler_phi(self.m);
            if self.stabilizer.len() == 1 {
                return (0..phi)
                    .map(|i| Cyclotomic::zeta_pow(self.m, i as i64))
                    .collect();
            }
            // O_K = Z[zeta_m] cap K: integer vectors fixed by every h
            let mut rows: Vec<Vec<BigInt>> = Vec::new();
            for &h in &self.stabilizer {
                if h == 1 % self.m {
                    continue;
                }
                let images: Vec<Cyclotomic> = (0..phi)
                    .map(|i| Cyclotomic::zeta_pow(self.m, (i * h) as i64))
                    .collect();
                for r in 0..phi {
                    rows.push(
                        (0..phi)
                            .map(|c| {
                                let mut v = images[c].coords()[r].clone();
                                if r == c {
                                    v -= Rational::one();
                                }
                                v.to_integer()
                            })
                            .collect(),
                    );
                }
            }
            integer_kernel(&rows, phi)
                .into_iter()
                .map(|v| {
                    Cyclotomic::from_coords(self.m, v.into_iter().map(Rational::from_integer).collect())
                        .unwrap()
                })
                .collect()
        })
    }

    fn gram(&self) -> Vec<Vec<Rational>> {
        let b = self.integral_basis();
        b.iter()
            .map(|x| b.iter().map(|y| self.trace(&(x * y)).unwrap()).collect())
            .collect()
    }

    pub fn discriminant(&self) -> BigInt {
        let d = rational_det(self.gram());
        assert!(d.is_integer(), "discriminant of an order is an integer");
        d.to_integer()
    }

    /// Membership in the inverse different `{x in K : Tr_K(x O_K) subset Z}`.
    pub fn in_inverse_different(&self, x: &Cyclotomic) -> bool {
        if !self.contains(x) {
            return false;
        }
        self.integral_basis()
            .iter()
            .all(|b| self.trace(&(x * b)).unwrap().is_integer())
    }

    /// The trace-dual basis of the integral basis; it spans the inverse different.
    pub fn dual_basis(&self) -> Vec<Cyclotomic> {
        let b = self.integral_basis();
        let inv = rational_inverse(self.gram());
        (0..b.len())
            .map(|i| {
                b.iter()
                    .enumerate()
                    .fold(Cyclotomic::zero(self.m), |acc, (j, bj)| {
                        acc + bj.scale(&inv[i][j])
                    })
            })
            .collect()
    }

    /// A generator of the inverse different, if one is found among the
    /// candidates tried (powers of the ramified uniformisers, then short
    /// combinations of the dual basis).
    pub fn inverse_different_generator(&self) -> Option<Cyclotomic> {
        let disc = self.discriminant().abs();
        let target = Rational::new(BigInt::one(), disc);
        let is_gen = |x: &Cyclotomic| {
            self.in_inverse_different(x) && self.norm(x).map(|n| n.abs()) == Ok(target.clone())
        };
        if self.stabilizer.len() == 1 {
            return Some(cyclotomic_derivative_at_zeta(self.m).inv().unwrap());
        }
        for c in self.uniformiser_candidates() {
            if is_gen(&c) {
                return Some(c);
            }
        }
        let dual = self.dual_basis();
        let d = dual.len();
        let bound: i64 = if d <= 4 { 3 } else if d <= 6 { 2 } else { 1 };
        let mut coeffs = vec![-bound; d];
        loop {
            let x = dual
                .iter()
                .zip(&coeffs)
                .fold(Cyclotomic::zero(self.m), |acc, (b, &c)| {
                    acc + b.scale(&Rational::from_integer(BigInt::from(c)))
                });
            if !x.is_zero() && is_gen(&x) {
                return Some(x);
            }
            let mut i = 0;
            while i < d {
                coeffs[i] += 1;
                if coeffs[i] <= bound {
                    break;
                }
                coeffs[i] = -bound;
                i += 1;
            }
            if i == d {
                return None;
            }
        }
    }

    fn uniformiser_candidates(&self) -> Vec<Cyclotomic> {
        let m = self.m;
        let mut pis = Vec::new();
        let mut rest = m;
        let mut p = 2;
        while rest > 1 {
            if rest % p == 0 {
                let mut q = 1;
                while rest % p == 0 {
                    rest /= p;
                    q *= p;
                }
                // relative norm of 1 - zeta_q down to K
                let one_minus = &Cyclotomic::one() - &Cyclotomic::zeta(q).embed(m).unwrap();
                let pi = self
                    .stabilizer
                    .iter()
                    .fold(Cyclotomic::one(), |acc, &h| acc * one_minus.galois_exp(h.max(1)));
                pis.push(pi);
            }
            p += 1;
        }
        let maxk = self.degree() * 2 + 2;
        let mut out = Vec::new();
        let mut exps = vec![0usize; pis.len()];
        loop {
            let mut x = Cyclotomic::one();
            for (pi, &k) in pis.iter().zip(&exps) {
                x = x * pi.pow(-(k as i64)).unwrap();
            }
            out.push(x.embed(m).unwrap());
            let mut i = 0;
            while i < exps.len() {
                exps[i] += 1;
                if exps[i] <= maxk {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == exps.len() {
                break;
            }
        }
        out
    }
}

fn rational_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let d = &f * &a[c][k];
                a[r][k] -= d;
            }
        }
    }
    det
}

fn rational_inverse(a: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !aug[r][c].is_zero())
            .expect("Gram matrix of a trace form is nonsingular");
        aug.swap(p, c);
        let inv = aug[c][c].recip();
        for v in aug[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for k in 0..2 * n {
                    let d = &f * &aug[c][k];
                    aug[r][k] -= d;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn sqrt2() -> CyclotomicSubfield {
        // Q(sqrt 2) is fixed by sigma_7 inside Q(zeta_8)
        CyclotomicSubfield::new(8, [1, 7]).unwrap()
    }

    #[test]
    fn rejects_non_subgroups() {
        assert!(CyclotomicSubfield::new(8, [1, 3, 5]).is_err());
        assert!(CyclotomicSubfield::new(8, [1, 2]).is_err());
    }

    #[test]
    fn discriminants_of_small_fields() {
        assert_eq!(CyclotomicSubfield::full(3).discriminant(), BigInt::from(-3));
        assert_eq!(CyclotomicSubfield::full(4).discriminant(), BigInt::from(-4));
        assert_eq!(CyclotomicSubfield::full(5).discriminant(), BigInt::from(125));
        assert_eq!(sqrt2().discriminant(), BigInt::from(8));
        // Q(sqrt 5) inside Q(zeta_5)
        assert_eq!(
            CyclotomicSubfield::new(5, [1, 4]).unwrap().discriminant(),
            BigInt::from(5)
        );
        // Q(zeta_7)^+ has discriminant 49
        assert_eq!(
            CyclotomicSubfield::new(7, [1, 6]).unwrap().discriminant(),
            BigInt::from(49)
        );
        assert_eq!(CyclotomicSubfield::rationals().discriminant(), BigInt::from(1));
    }

    #[test]
    fn subfield_inverse_different_differs_from_overfield() {
        let quarter = Cyclotomic::from_rational(q(1, 4));
        assert!(quarter.in_inverse_different(8).unwrap());
        assert!(!sqrt2().in_inverse_different(&quarter));
        let r2 = &Cyclotomic::zeta(8) + &Cyclotomic::zeta_pow(8, 7);
        // D^{-1}(Q(sqrt 2)) = (1 / (2 sqrt 2))
        let g = r2.scale(&q(1, 4));
        assert!(sqrt2().in_inverse_different(&g));
        assert!(!sqrt2().in_inverse_different(&g.scale(&q(1, 2))));
    }

    #[test]
    fn agrees_with_derivative_test_on_full_fields() {
        for m in [3usize, 4, 5, 7, 8, 9, 12] {
            let k = CyclotomicSubfield::full(m);
            for x in k.dual_basis() {
                assert!(x.in_inverse_different(m).unwrap());
                assert!(k.in_inverse_different(&x));
            }
            let halfish = k.dual_basis()[0].scale(&q(1, 2));
            assert_eq!(
                halfish.in_inverse_different(m).unwrap(),
                k.in_inverse_different(&halfish)
            );
        }
    }

    #[test]
    fn generators_found_for_real_subfields() {
        for (m, stab) in [(5usize, vec![1usize, 4]), (7, vec![1, 6]), (8, vec![1, 7]), (16, vec![1, 15]), (11, vec![1, 10])] {
            let k = CyclotomicSubfield::new(m, stab).unwrap();
            let g = k.inverse_different_generator().expect("principal");
            assert!(k.in_inverse_different(&g));
            assert_eq!(
                k.norm(&g).unwrap().abs(),
                Rational::new(BigInt::one(), k.discriminant().abs())
            );
        }
    }

    #[test]
    fn generated_by_values() {
        let v = &Cyclotomic::zeta(10) + &Cyclotomic::zeta_pow(10, 9);
        let k = CyclotomicSubfield::generated_by(&[v.clone()]);
        assert_eq!(k.degree(), 2);
        assert!(k.contains(&v));
        assert!(!k.contains(&Cyclotomic::zeta(5)));
        let qf = CyclotomicSubfield::generated_by(&[Cyclotomic::from_int(2)]);
        assert_eq!(qf.degree(), 1);
    }
}
