use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::GroupRingElement;
use crate::character::{pretty_value, same_group, CharacterTable};
use crate::exactnum::{units_mod, Cyclotomic, Rational};
use crate::{Error, Result};

/// A central element given by its Wedderburn components, one per table row.
#[derive(Clone, Debug)]
pub struct CentralElement {
    table: Arc<CharacterTable>,
    components: Vec<Cyclotomic>,
}

impl CentralElement {
    pub fn new(table: &Arc<CharacterTable>, components: Vec<Cyclotomic>) -> Result<Self> {
        if components.len() != table.len() {
            return Err(Error::MalformedComponents(format!(
                "{} components for {} characters",
                components.len(),
                table.len()
            )));
        }
        Ok(CentralElement {
            table: table.clone(),
            components,
        })
    }

    pub fn zero(table: &Arc<CharacterTable>) -> Self {
        Self::constant(table, Cyclotomic::zero(1))
    }

    pub fn one(table: &Arc<CharacterTable>) -> Self {
        Self::constant(table, Cyclotomic::one())
    }

    pub fn constant(table: &Arc<CharacterTable>, c: Cyclotomic) -> Self {
        CentralElement {
            table: table.clone(),
            components: vec![c; table.len()],
        }
    }

    /// Component at `chi` is the scalar `x` acts by on `V_chi`,
    /// `(1/chi(1)) sum_g x_g chi(g)`.
    pub fn from_group_ring(table: &Arc<CharacterTable>, x: &GroupRingElement) -> Result<Self> {
        if !same_group(table.group(), x.group()) {
            return Err(Error::InvalidInput("element and table live on different groups".into()));
        }
        if !x.is_central() {
            return Err(Error::NotCentral);
        }
        let components = table
            .characters()
            .iter()
            .map(|chi| {
                let tr = x
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(Cyclotomic::zero(1), |acc, (g, c)| &acc + &(c * chi.value(g)));
                tr.scale(&chi.degree_rational().recip()).minimal()
            })
            .collect();
        Ok(CentralElement {
            table: table.clone(),
            components,
        })
    }

    /// `sum_chi a_chi e_chi`.
    pub fn to_group_ring(&self) -> GroupRingElement {
        let g = self.table.group();
        let order = Rational::from_integer(g.order().into());
        let weights: Vec<(usize, Cyclotomic)> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (i, a.scale(&(self.table.character(i).degree_rational() / &order))))
            .collect();
        let coeffs = g
            .elements()
            .map(|x| {
                let xi = g.inv(x);
                weights
                    .iter()
                    .fold(Cyclotomic::zero(1), |acc, (i, w)| {
                        &acc + &(w * self.table.character(*i).value(xi))
                    })
                    .minimal()
            })
            .collect();
        GroupRingElement::from_coeffs(g, coeffs).expect("one coefficient per element")
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn components(&self) -> &[Cyclotomic] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Cyclotomic {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Cyclotomic::is_zero)
    }

    /// Every component is an algebraic integer, i.e. the element lies in
    /// the center of a maximal order.
    pub fn is_integral(&self) -> bool {
        self.components.iter().all(|c| c.minimal().is_integral())
    }

    /// Rows at which the component fails to be integral.
    pub fn non_integral_rows(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| !self.components[i].minimal().is_integral())
            .collect()
    }

    /// `x_{chi^sigma} = sigma(x_chi)` for every row and every `sigma`.
    pub fn is_galois_equivariant(&self) -> bool {
        let e = self.table.group().exponent();
        (0..self.table.len()).all(|i| {
            units_mod(e).into_iter().all(|a| {
                let a = a.max(1);
                let k = self.table.galois_index(i, a).expect("unit exponent");
                self.components[k] == self.components[i].galois_lift(a, e)
            })
        })
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        self.map(|x| x * c)
    }

    fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        CentralElement {
            table: self.table.clone(),
            components: self.components.iter().map(|c| f(c).minimal()).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Self {
        assert!(
            Arc::ptr_eq(&self.table, &other.table) || same_group(self.table.group(), other.table.group()),
            "central elements over different tables"
        );
        CentralElement {
            table: self.table.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b).minimal())
                .collect(),
        }
    }

    /// `[χ1: v1, χ2: v2, ...]` in table order.
    pub fn component_string(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{}: {}", self.table.name(i), pretty_value(c)))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

impl PartialEq for CentralElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(self.table.group(), other.table.group()) && self.components == other.components
    }
}

impl Add<&CentralElement> for &CentralElement {
    type Output = CentralElement;
    fn add(self, rhs: &CentralElement) -> CentralElement {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub<&CentralElement> for &CentralElement {
    type Output = CentralElement;
    fn sub(self, rhs: &CentralElement) -> CentralElement {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul<&CentralElement> for &CentralElement {
    type Output = CentralElement;
    fn mul(self, rhs: &CentralElement) -> CentralElement {
        self.zip(rhs, |a, b| a * b)
    }
}

impl Neg for &CentralElement {
    type Output = CentralElement;
    fn neg(self) -> CentralElement {
        self.map(|c| -c)
    }
}

impl fmt::Display for CentralElement {
    /// Component vector, then the group ring form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\n= {}", self.component_string(), self.to_group_ring())
    }
}

/// The central primitive idempotent of row `i`.
pub fn e_chi(table: &Arc<CharacterTable>, i: usize) -> CentralElement {
    let mut x = CentralElement::zero(table);
    x.components[i] = Cyclotomic::one();
    x
}

/// `pr_chi = (|G|/chi(1)) e_chi = sum_g chi(g^{-1}) g`.
pub fn pr_chi(table: &CharacterTable, i: usize) -> GroupRingElement {
    let g = table.group();
    let chi = table.character(i);
    let coeffs = g.elements().map(|x| chi.value(g.inv(x)).clone()).collect();
    GroupRingElement::from_coeffs(g, coeffs).expect("one coefficient per element")
}

/// `w_K = sum_chi |mu(K)|^{chi(1)} e_chi`.
pub fn w_k(table: &Arc<CharacterTable>, mu_order: u64) -> Result<CentralElement> {
    if mu_order == 0 {
        return Err(Error::InvalidParameter("mu_order must be positive".into()));
    }
    let components = table
        .characters()
        .iter()
        .map(|chi| {
            let v = Rational::from_integer(mu_order.into());
            Cyclotomic::from_rational(num_traits::pow(v, chi.degree()))
        })
        .collect();
    CentralElement::new(table, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::Family;
    use proptest::prelude::*;

    fn table(f: Family) -> Arc<CharacterTable> {
        Arc::new(CharacterTable::builtin(f).unwrap())
    }

    #[test]
    fn idempotent_suite() {
        for f in [
            Family::D4p(3),
            Family::D4p(5),
            Family::Quaternion(1),
            Family::Quaternion(2),
            Family::Z2A4,
            Family::D12Example,
        ] {
            let t = table(f);
            let g = t.group();
            let es: Vec<GroupRingElement> = (0..t.len()).map(|i| e_chi(&t, i).to_group_ring()).collect();
            let one = GroupRingElement::one(g);
            let total = es.iter().fold(GroupRingElement::zero(g), |acc, e| &acc + e);
            assert_eq!(total, one, "{:?}", f);
            for (i, a) in es.iter().enumerate() {
                assert!(a.is_central());
                for (k, b) in es.iter().enumerate() {
                    let p = a * b;
                    if i == k {
                        assert_eq!(&p, a);
                    } else {
                        assert!(p.is_zero());
                    }
                }
                let chi = t.character(i);
                let scale = Rational::new(g.order().into(), chi.degree().into());
                assert_eq!(a.scale_rational(&scale), pr_chi(&t, i));
            }
        }
    }

    #[test]
    fn trivial_and_chi6_idempotents() {
        let t = table(Family::D12Example);
        let g = t.group();
        let e1 = e_chi(&t, 0).to_group_ring();
        assert!(e1.coeffs().iter().all(|c| *c == Cyclotomic::from_rational(Rational::new(1.into(), 12.into()))));
        let e6 = e_chi(&t, t.index_by_name("χ6").unwrap()).to_group_ring();
        let expect = GroupRingElement::parse(g, "(1/6)(2 - σ - σ² - 2j + σj + σ²j)").unwrap();
        assert_eq!(e6, expect);
    }

    #[test]
    fn components_of_one_and_j() {
        let t = table(Family::Quaternion(1));
        let g = t.group();
        let j = g.complex_conjugation().unwrap();
        let one = CentralElement::from_group_ring(&t, &GroupRingElement::one(g)).unwrap();
        assert_eq!(one, CentralElement::one(&t));
        let cj = CentralElement::from_group_ring(&t, &GroupRingElement::basis(g, j)).unwrap();
        for (i, c) in cj.components().iter().enumerate() {
            let expect = if t.character(i).is_odd(j) { -1 } else { 1 };
            assert_eq!(*c, Cyclotomic::from_int(expect));
        }
        let x = g.eval_word("x").unwrap();
        assert!(CentralElement::from_group_ring(&t, &GroupRingElement::basis(g, x)).is_err());
    }

    #[test]
    fn worked_example_display_components() {
        let t = table(Family::D12Example);
        let x = GroupRingElement::parse(t.group(), "(1/4)(1-j)(67-29(σ+σ²)-7(τ+στ+σ²τ))").unwrap();
        let c = CentralElement::from_group_ring(&t, &x).unwrap();
        let ints = [0, -6, 0, 15, 0, 48];
        for (i, v) in ints.iter().enumerate() {
            assert_eq!(c.component(i), &Cyclotomic::from_int(*v));
        }
    }

    #[test]
    fn w_k_of_q8() {
        let t = table(Family::Quaternion(1));
        let w = w_k(&t, 2).unwrap();
        let v: Vec<Cyclotomic> = [2, 2, 2, 2, 4].iter().map(|&k| Cyclotomic::from_int(k)).collect();
        assert_eq!(w.components(), &v[..]);
        assert_eq!(w_k(&t, 1).unwrap(), CentralElement::one(&t));
        assert!(w_k(&t, 0).is_err());
    }

    proptest! {
        #[test]
        fn component_round_trip(vals in proptest::collection::vec(-6i64..=6, 8)) {
            let t = table(Family::Z2A4);
            // rational class functions are Galois equivariant only on rational rows
            let comps: Vec<Cyclotomic> = (0..t.len())
                .map(|i| {
                    let v = Cyclotomic::from_int(vals[i]);
                    if t.character(i).field_order() <= 2 { v } else { Cyclotomic::zeta(3).pow(vals[i]).unwrap() }
                })
                .collect();
            let x = CentralElement::new(&t, comps).unwrap();
            let back = CentralElement::from_group_ring(&t, &x.to_group_ring()).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn group_ring_round_trip(vals in proptest::collection::vec(-5i64..=5, 6)) {
            let t = table(Family::D12Example);
            let g = t.group();
            let classes = g.conjugacy_classes();
            let coeffs = g.elements().map(|x| Cyclotomic::from_int(vals[classes.class_of[x]])).collect();
            let x = GroupRingElement::from_coeffs(g, coeffs).unwrap();
            let c = CentralElement::from_group_ring(&t, &x).unwrap();
            prop_assert!(c.is_galois_equivariant());
            prop_assert_eq!(c.to_group_ring(), x);
        }
    }
}
