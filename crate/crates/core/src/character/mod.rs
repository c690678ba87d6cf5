//! Characters of finite groups as exact class functions.

mod monomial;
mod table;

use std::ops::{Add, Mul};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{units_mod, Cyclotomic, CyclotomicSubfield, Rational};
use crate::group::{FiniteGroup, Subgroup};
use crate::{Error, Result};

pub use monomial::{irreducible_characters_monomial, one_dim_characters, one_dim_characters_of, Witness};
pub use table::{CharacterTable, Family};
pub(crate) use table::pretty_value;

/// A class function with values in `Q(zeta_e)`, `e` the exponent of the group.
/// Values are stored per element.
#[derive(Clone, Debug)]
pub struct Character {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

/// `Q(chi)` as the fixed field of `stabilizer` inside `Q(zeta_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterField {
    pub m: usize,
    pub stabilizer: Vec<usize>,
}

impl CharacterField {
    pub fn degree(&self) -> usize {
        crate::exactnum::euler_phi(self.m) / self.stabilizer.len()
    }

    pub fn subfield(&self) -> CyclotomicSubfield {
        CyclotomicSubfield::new(self.m, self.stabilizer.iter().copied())
            .expect("stabilizer of a character is a subgroup")
    }
}

/// True when both handles describe the same multiplication table.
pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.order() == b.order() && a.table() == b.table())
}

/// Smallest `a' = a (mod m)` that is a unit modulo `e`.
pub(crate) fn lift_unit(a: usize, m: usize, e: usize) -> usize {
    let m = m.max(1);
    let mut x = a % m;
    if x == 0 && m == 1 {
        x = 1;
    }
    while x.gcd(&e) != 1 {
        x += m;
    }
    x
}

impl Character {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidParameter(format!(
                "class function needs {} values, got {}",
                group.order(),
                values.len()
            )));
        }
        let e = group.exponent();
        let values = values
            .into_iter()
            .map(|v| v.to_order(e))
            .collect::<Result<Vec<_>>>()?;
        for cls in &group.conjugacy_classes().classes {
            if cls.iter().any(|&g| values[g] != values[cls[0]]) {
                return Err(Error::InvalidParameter("values are not constant on classes".into()));
            }
        }
        Ok(Character { group, values })
    }

    pub fn from_class_values(group: Arc<FiniteGroup>, class_values: &[Cyclotomic]) -> Result<Self> {
        let cc = group.conjugacy_classes();
        if class_values.len() != cc.classes.len() {
            return Err(Error::InvalidParameter(format!(
                "{} classes, {} values",
                cc.classes.len(),
                class_values.len()
            )));
        }
        let values = group
            .elements()
            .map(|g| class_values[cc.class_of[g]].clone())
            .collect();
        Character::new(group, values)
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        Character::new(group, vec![Cyclotomic::one(); n]).expect("constant function")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, g: usize) -> &Cyclotomic {
        &self.values[g]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn class_values(&self) -> Vec<Cyclotomic> {
        self.group
            .conjugacy_classes()
            .representatives
            .iter()
            .map(|&r| self.values[r].clone())
            .collect()
    }

    /// Order of the cyclotomic field the values are stored in.
    pub fn value_order(&self) -> usize {
        self.group.exponent()
    }

    pub fn degree_rational(&self) -> Rational {
        self.values[0]
            .as_rational()
            .expect("value at the identity is rational")
    }

    pub fn degree(&self) -> usize {
        let d = self.degree_rational();
        assert!(d.is_integer() && d > Rational::zero(), "not a genuine character");
        d.to_integer().to_usize().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// `(1/|G|) sum_g chi(g) conj(psi(g))`, which is rational for genuine characters.
    pub fn inner_product_cyclotomic(&self, other: &Character) -> Result<Cyclotomic> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::InvalidParameter("characters of different groups".into()));
        }
        let cc = self.group.conjugacy_classes();
        let mut acc = Cyclotomic::zero(self.value_order());
        for (cls, &r) in cc.classes.iter().zip(&cc.representatives) {
            let term = &self.values[r] * &other.values[r].conj();
            acc = acc + term.scale(&Rational::from_integer(cls.len().into()));
        }
        Ok(acc.scale(&Rational::new(One::one(), self.group.order().into())))
    }

    pub fn inner_product(&self, other: &Character) -> Result<Rational> {
        let v = self.inner_product_cyclotomic(other)?;
        v.as_rational()
            .ok_or_else(|| Error::Inconsistent(format!("inner product {v} is not rational")))
    }

    pub fn is_irreducible(&self) -> bool {
        self.inner_product(self).map_or(false, |v| v.is_one())
            && self.degree_rational() > Rational::zero()
    }

    pub fn conj(&self) -> Character {
        Character {
            group: self.group.clone(),
            values: self.values.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// `chi^{sigma_a}`; `a` is reduced modulo the value order and must be a unit.
    pub fn galois(&self, a: usize) -> Result<Character> {
        let e = self.value_order();
        let a = if e <= 2 { 1 } else { a % e };
        if e > 2 && a.gcd(&e) != 1 {
            return Err(Error::InvalidGaloisExponent { order: e, exponent: a });
        }
        Ok(Character {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.galois_unchecked(a)).collect(),
        })
    }

    /// Smallest `m` with every value in `Q(zeta_m)`.
    pub fn field_order(&self) -> usize {
        self.values.iter().fold(1usize, |acc, v| acc.lcm(&v.conductor()))
    }

    pub fn field(&self) -> CharacterField {
        let m = self.field_order();
        let e = self.value_order();
        let stabilizer = units_mod(m)
            .into_iter()
            .filter(|&a| {
                let lifted = lift_unit(a, m, e);
                self.values.iter().all(|v| v.galois_exp(lifted) == *v)
            })
            .collect();
        CharacterField { m, stabilizer }
    }

    /// Distinct Galois conjugates, in order of the first exponent producing them.
    pub fn galois_orbit(&self) -> Vec<Character> {
        let e = self.value_order();
        let mut out: Vec<Character> = Vec::new();
        for a in units_mod(e) {
            let c = self.galois(a.max(1)).unwrap();
            if !out.iter().any(|o| o.values == c.values) {
                out.push(c);
            }
        }
        out
    }

    /// `chi(j) = -chi(1)`.
    pub fn is_odd(&self, j: usize) -> bool {
        self.values[j] == -&self.values[0]
    }

    pub fn is_even(&self, j: usize) -> bool {
        self.values[j] == self.values[0]
    }

    /// Elements with `chi(g) = chi(1)`.
    pub fn kernel(&self) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&g| self.values[g] == self.values[0])
            .collect()
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Character> {
        if !same_group(&self.group, h.parent()) {
            return Err(Error::InvalidParameter("subgroup of another group".into()));
        }
        let (hg, embed) = h.as_group();
        let values = embed.iter().map(|&g| self.values[g].clone()).collect();
        Character::new(hg, values)
    }

    /// `Ind_H^G phi(g) = (1/|H|) sum_{tau in G, tau^{-1} g tau in H} phi(tau^{-1} g tau)`.
    pub fn induce(h: &Subgroup, phi: &Character) -> Result<Character> {
        let (hg, embed) = h.as_group();
        if !same_group(&hg, &phi.group) {
            return Err(Error::InvalidParameter("character is not on the given subgroup".into()));
        }
        let g = h.parent().clone();
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in embed.iter().enumerate() {
            local[x] = i;
        }
        let e = g.exponent();
        let cc = g.conjugacy_classes();
        let scale = Rational::new(One::one(), h.order().into());
        let class_vals: Vec<Cyclotomic> = cc
            .representatives
            .iter()
            .map(|&r| {
                let mut acc = Cyclotomic::zero(e);
                for tau in g.elements() {
                    let c = g.conjugate(g.inv(tau), r);
                    if local[c] != usize::MAX {
                        acc = acc + phi.values[local[c]].clone();
                    }
                }
                acc.scale(&scale)
            })
            .collect();
        Character::from_class_values(g, &class_vals)
    }

    /// Pull back a character of `G/N` along the projection `proj: G -> G/N`.
    pub fn inflate(&self, group: Arc<FiniteGroup>, proj: &[usize]) -> Result<Character> {
        if proj.len() != group.order() || proj.iter().any(|&q| q >= self.group.order()) {
            return Err(Error::InvalidParameter("projection does not match the groups".into()));
        }
        let values = proj.iter().map(|&q| self.values[q].clone()).collect();
        Character::new(group, values)
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.values == other.values
    }
}

impl Eq for Character {}

impl Add<&Character> for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        assert!(same_group(&self.group, &rhs.group), "characters of different groups");
        Character {
            group: self.group.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Mul<&Character> for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        assert!(same_group(&self.group, &rhs.group), "characters of different groups");
        Character {
            group: self.group.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect(),
        }
    }
}
