use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::numtheory::{cyclotomic_polynomial, divisors, euler_phi, mobius, units_mod};
use super::rational::{rational_to_string, Rational, RationalLiteral};
use crate::{Error, Result};

/// An element of `Q(zeta_n)` in the power basis `1, zeta_n, ..., zeta_n^{phi(n)-1}`.
///
/// The order `n` is part of the value's representation, not of its identity:
/// equality compares values after embedding both sides into `Q(zeta_lcm)`.
/// Binary operations always work in `Q(zeta_lcm)` of the two orders.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: usize,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Cyclotomic {
            order,
            coords: vec![Rational::zero(); euler_phi(order)],
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coords: vec![q],
        }
    }

    pub fn from_int(i: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(i)))
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(order: usize, k: i64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let e = k.rem_euclid(order as i64) as usize;
        let mut dense = vec![Rational::zero(); order];
        dense[e] = Rational::one();
        Self::from_dense(order, dense)
    }

    pub fn zeta(order: usize) -> Self {
        Self::zeta_pow(order, 1)
    }

    pub fn from_coords(order: usize, coords: Vec<Rational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter("cyclotomic order 0".into()));
        }
        let phi = euler_phi(order);
        if coords.len() != phi {
            return Err(Error::InvalidParameter(format!(
                "Q(zeta_{order}) needs {phi} coordinates, got {}",
                coords.len()
            )));
        }
        Ok(Cyclotomic { order, coords })
    }

    /// Build from coefficients on `zeta_n^0, ..., zeta_n^{len-1}` (any length),
    /// reducing exponents mod `n` and then modulo the cyclotomic polynomial.
    pub fn from_dense(order: usize, dense: Vec<Rational>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut folded = vec![Rational::zero(); order];
        for (i, c) in dense.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % order] += c;
            }
        }
        Cyclotomic {
            order,
            coords: reduce_mod_cyclotomic(order, folded),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Embed into `Q(zeta_m)` for a multiple `m` of the current order.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m == 0 || m % self.order != 0 {
            return Err(Error::OrderMismatch {
                expected: m,
                found: self.order,
            });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            let mut c = Self::zero(m);
            c.coords[0] = q;
            return Ok(c);
        }
        let step = m / self.order;
        let mut dense = vec![Rational::zero(); m];
        for (i, c) in self.coords.iter().enumerate() {
            dense[i * step] = c.clone();
        }
        Ok(Self::from_dense(m, dense))
    }

    /// Re-express in `Q(zeta_m)`, failing if the value does not lie there.
    pub fn to_order(&self, m: usize) -> Result<Self> {
        if m == self.order {
            return Ok(self.clone());
        }
        if m % self.order == 0 {
            return self.embed(m);
        }
        let l = self.order.lcm(&m);
        let x = self.embed(l)?;
        if !x.fixed_by_congruence_subgroup(m) {
            return Err(Error::NotInField(format!("{self} is not in Q(zeta_{m})")));
        }
        x.restrict_to_divisor(m)
    }

    /// True when every `sigma_a` with `a = 1 mod m` fixes the value (`m` divides the order).
    fn fixed_by_congruence_subgroup(&self, m: usize) -> bool {
        let n = self.order;
        units_mod(n)
            .into_iter()
            .filter(|a| a % m == 1 % m)
            .all(|a| self.galois_unchecked(a) == *self)
    }

    /// Coordinates over `Q(zeta_m)` for `m | order`, assuming membership.
    fn restrict_to_divisor(&self, m: usize) -> Result<Self> {
        let n = self.order;
        let phi_n = euler_phi(n);
        let phi_m = euler_phi(m);
        // column i = zeta_m^i written in Q(zeta_n)
        let cols: Vec<Cyclotomic> = (0..phi_m)
            .map(|i| Self::zeta_pow(n, (i * (n / m)) as i64))
            .collect();
        let mut rows: Vec<Vec<Rational>> = (0..phi_n)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coords[r].clone()).collect();
                row.push(self.coords[r].clone());
                row
            })
            .collect();
        let sol = solve_consistent(&mut rows, phi_m)
            .ok_or_else(|| Error::NotInField(format!("{self} is not in Q(zeta_{m})")))?;
        Cyclotomic::from_coords(m, sol)
    }

    /// Smallest divisor `m` of the order with the value in `Q(zeta_m)`.
    pub fn conductor(&self) -> usize {
        divisors(self.order)
            .into_iter()
            .find(|&m| self.fixed_by_congruence_subgroup(m))
            .unwrap_or(self.order)
    }

    /// The same value in its smallest cyclotomic field.
    pub fn minimal(&self) -> Self {
        let m = self.conductor();
        self.to_order(m).expect("conductor field contains the value")
    }

    pub fn galois(&self, sigma: &GaloisAutomorphism) -> Result<Self> {
        if sigma.order != self.order {
            return Err(Error::OrderMismatch {
                expected: sigma.order,
                found: self.order,
            });
        }
        Ok(self.galois_unchecked(sigma.exponent))
    }

    /// Apply `zeta_n -> zeta_n^a`; `a` is taken mod the order and must be a unit.
    pub fn galois_unchecked(&self, a: usize) -> Self {
        let n = self.order;
        if n <= 2 {
            return self.clone();
        }
        let mut dense = vec![Rational::zero(); n];
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                dense[(i * a) % n] += c;
            }
        }
        Self::from_dense(n, dense)
    }

    /// Apply `sigma_a` for `a` a unit modulo some multiple of the order.
    pub fn galois_exp(&self, a: usize) -> Self {
        self.galois_unchecked(a % self.order.max(1))
    }

    /// Apply an automorphism of the compositum restricting to `sigma_a` on
    /// `Q(zeta_m)`; `a` must be a unit modulo `m`.
    pub fn galois_lift(&self, a: usize, m: usize) -> Self {
        let l = self.order.lcm(&m.max(1));
        let lifted = crate::character::lift_unit(a, m, l);
        self.embed(l).expect("l is a multiple of the order").galois_unchecked(lifted)
    }

    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois_unchecked(self.order - 1)
    }

    /// Absolute trace `Tr_{Q(zeta_n)/Q}` via Ramanujan sums.
    pub fn trace(&self) -> Rational {
        let n = self.order;
        let phi = euler_phi(n) as i64;
        let mut t = Rational::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = i.gcd(&n);
            let q = n / g;
            let ram = mobius(q) as i64 * phi / euler_phi(q) as i64;
            t += c * Rational::from_integer(BigInt::from(ram));
        }
        t
    }

    /// Absolute norm `N_{Q(zeta_n)/Q}`.
    pub fn norm(&self) -> Rational {
        let mut p = Cyclotomic::one();
        for a in units_mod(self.order) {
            p = &p * &self.galois_exp(a.max(1));
        }
        p.as_rational().expect("norm is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()).embed(self.order)?);
        }
        // solve self * y = 1 using the multiplication-by-self matrix
        let n = self.order;
        let phi = self.coords.len();
        let cols: Vec<Cyclotomic> = (0..phi)
            .map(|i| self * &Cyclotomic::zeta_pow(n, i as i64))
            .collect();
        let mut rows: Vec<Vec<Rational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<Rational> = cols.iter().map(|c| c.coords[r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        let sol = solve_consistent(&mut rows, phi).ok_or(Error::DivisionByZero)?;
        Cyclotomic::from_coords(n, sol)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Cyclotomic::one().embed(self.order)?;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Membership in `Z[zeta_n]`, i.e. algebraic integrality.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `x` lies in the inverse different of `Q(zeta_m)/Q` iff `x * Phi_m'(zeta_m)`
    /// is integral.
    pub fn in_inverse_different(&self, m: usize) -> Result<bool> {
        let x = self.to_order(m)?;
        Ok((&x * &cyclotomic_derivative_at_zeta(m)).is_integral())
    }
}

/// `Phi_m'(zeta_m)`, a generator of the different of `Z[zeta_m]`.
pub(crate) fn cyclotomic_derivative_at_zeta(m: usize) -> Cyclotomic {
    let poly = cyclotomic_polynomial(m);
    let dense: Vec<Rational> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| Rational::from_integer(BigInt::from(c * i as i128)))
        .collect();
    Cyclotomic::from_dense(m, dense)
}

fn reduce_mod_cyclotomic(order: usize, mut dense: Vec<Rational>) -> Vec<Rational> {
    let phi = euler_phi(order);
    if dense.len() <= phi {
        dense.resize(phi, Rational::zero());
        return dense;
    }
    let poly = cyclotomic_polynomial(order);
    for i in (phi..dense.len()).rev() {
        if dense[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut dense[i], Rational::zero());
        for (k, &pk) in poly.iter().enumerate().take(phi) {
            if pk != 0 {
                dense[i - phi + k] -= &c * Rational::from_integer(BigInt::from(pk));
            }
        }
    }
    dense.truncate(phi);
    dense
}

/// Solve an augmented system (last column is the right-hand side) with
/// `unknowns` columns, returning `None` when inconsistent. Assumes full column rank
/// whenever a solution exists.
fn solve_consistent(rows: &mut [Vec<Rational>], unknowns: usize) -> Option<Vec<Rational>> {
    let nrows = rows.len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (pivot_row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r2 in 0..nrows {
            if r2 != pivot_row && !rows[r2][col].is_zero() {
                let f = rows[r2][col].clone();
                for c in 0..=unknowns {
                    let delta = &f * &rows[pivot_row][c];
                    rows[r2][c] -= delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = rows[r][unknowns].clone();
    }
    Some(sol)
}

fn common(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
    if a.order == b.order {
        return (a.clone(), b.clone());
    }
    let l = a.order.lcm(&b.order);
    (a.embed(l).unwrap(), b.embed(l).unwrap())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coords == other.coords;
        }
        let (a, b) = common(self, other);
        a.coords == b.coords
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = common(self, rhs);
        for (x, y) in a.coords.iter_mut().zip(b.coords) {
            *x += y;
        }
        a
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = common(self, rhs);
        for (x, y) in a.coords.iter_mut().zip(b.coords) {
            *x -= y;
        }
        a
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let l = self.order.lcm(&rhs.order);
        if let Some(q) = self.as_rational() {
            return rhs.scale(&q).embed(l).unwrap();
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(&q).embed(l).unwrap();
        }
        let sa = l / self.order;
        let sb = l / rhs.order;
        let mut dense = vec![Rational::zero(); l];
        for (i, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                dense[(i * sa + j * sb) % l] += x * y;
            }
        }
        Cyclotomic::from_dense(l, dense)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(i: i64) -> Self {
        Cyclotomic::from_int(i)
    }
}

impl fmt::Display for Cyclotomic {
    /// Prints the value in its minimal cyclotomic field, e.g. `-1-ζ3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = if self.order > 2 { self.minimal() } else { self.clone() };
        let mut terms: Vec<String> = Vec::new();
        for (i, c) in x.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let monomial = match i {
                0 => String::new(),
                1 => format!("ζ{}", x.order),
                _ => format!("ζ{}^{}", x.order, i),
            };
            let mag = c.abs();
            let body = if monomial.is_empty() {
                rational_to_string(&mag)
            } else if mag.is_one() {
                monomial
            } else if mag.is_integer() {
                format!("{}{}", rational_to_string(&mag), monomial)
            } else {
                format!("({}){}", rational_to_string(&mag), monomial)
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if terms.is_empty() {
                terms.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                terms.push(format!("{sign}{body}"));
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.concat())
        }
    }
}

/// `sigma_a : zeta_n -> zeta_n^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisAutomorphism {
    order: usize,
    exponent: usize,
}

impl GaloisAutomorphism {
    pub fn new(order: usize, exponent: usize) -> Result<Self> {
        let valid = if order <= 1 {
            order == 1 && exponent <= 1
        } else {
            exponent >= 1 && exponent < order && exponent.gcd(&order) == 1
        };
        if !valid {
            return Err(Error::InvalidGaloisExponent { order, exponent });
        }
        Ok(GaloisAutomorphism { order, exponent })
    }

    pub fn identity(order: usize) -> Self {
        GaloisAutomorphism {
            order,
            exponent: if order == 1 { 0 } else { 1 },
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        if self.order == 1 {
            return Ok(*self);
        }
        Ok(GaloisAutomorphism {
            order: self.order,
            exponent: (self.exponent * other.exponent) % self.order,
        })
    }

    pub fn apply(&self, x: &Cyclotomic) -> Result<Cyclotomic> {
        x.galois(self)
    }

    /// All automorphisms of `Q(zeta_n)`, ordered by exponent.
    pub fn all(order: usize) -> Vec<Self> {
        units_mod(order)
            .into_iter()
            .map(|a| GaloisAutomorphism { order, exponent: a })
            .collect()
    }
}

/// Serialised form `{"order": n, "coords": [...]}`; a bare rational is also accepted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CyclotomicLiteral {
    Full {
        order: usize,
        coords: Vec<RationalLiteral>,
    },
    Rational(RationalLiteral),
}

impl CyclotomicLiteral {
    pub fn to_cyclotomic(&self) -> Result<Cyclotomic> {
        match self {
            CyclotomicLiteral::Full { order, coords } => {
                let cs = coords
                    .iter()
                    .map(RationalLiteral::to_rational)
                    .collect::<Result<Vec<_>>>()?;
                Cyclotomic::from_coords(*order, cs)
            }
            CyclotomicLiteral::Rational(q) => Ok(Cyclotomic::from_rational(q.to_rational()?)),
        }
    }

    pub fn from_cyclotomic(x: &Cyclotomic) -> Self {
        CyclotomicLiteral::Full {
            order: x.order,
            coords: x.coords.iter().map(RationalLiteral::from_rational).collect(),
        }
    }
}
