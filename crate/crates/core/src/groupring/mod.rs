//! Exact arithmetic in `Q(zeta_N)[G]` and its center.

mod central;
mod conductor;
mod monomial_rep;
mod norm;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::character::same_group;
use crate::exactnum::{rational_to_string, Cyclotomic, Rational};
use crate::group::{FiniteGroup, Subgroup};
use crate::{Error, Result};

pub use central::{e_chi, pr_chi, w_k, CentralElement};
pub use conductor::{
    conductor_member, conductor_member_group_ring, conductor_pushdown, induced_pr_terms, orbit_element,
    orbit_pr_sum, ConductorVerdict,
};
pub use monomial_rep::MonomialRep;
pub use norm::{determinant, nr_ideal_sample, random_integral_element, reduced_norm, reduced_norm_matrix};

/// `sum_g a_g g` with cyclotomic coefficients, one per group element.
#[derive(Clone, Debug)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<Cyclotomic>,
}

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: vec![Cyclotomic::zero(1); group.order()],
        }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::basis(group, group.identity())
    }

    /// The element `g` itself.
    pub fn basis(group: &Arc<FiniteGroup>, g: usize) -> Self {
        let mut x = Self::zero(group);
        x.coeffs[g] = Cyclotomic::one();
        x
    }

    pub fn from_coeffs(group: &Arc<FiniteGroup>, coeffs: Vec<Cyclotomic>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupRingElement {
            group: group.clone(),
            coeffs,
        })
    }

    pub fn from_rationals(group: &Arc<FiniteGroup>, coeffs: &[Rational]) -> Result<Self> {
        Self::from_coeffs(group, coeffs.iter().cloned().map(Cyclotomic::from_rational).collect())
    }

    /// `Norm_N = sum_{n in N} n`.
    pub fn norm_of(n: &Subgroup) -> Self {
        let mut x = Self::zero(n.parent());
        for &g in n.members() {
            x.coeffs[g] = Cyclotomic::one();
        }
        x
    }

    /// Push an element of `Q(zeta)[H]` into `Q(zeta)[G]` along `H <= G`.
    pub fn from_subgroup(h: &Subgroup, x: &GroupRingElement) -> Result<Self> {
        let (hg, embed) = h.as_group();
        if !same_group(&hg, &x.group) {
            return Err(Error::OrderMismatch {
                expected: hg.order(),
                found: x.group.order(),
            });
        }
        let mut out = Self::zero(h.parent());
        for (i, c) in x.coeffs.iter().enumerate() {
            out.coeffs[embed[i]] = c.clone();
        }
        Ok(out)
    }

    /// Parse an expression such as `(1/4)(1-j)(67-29(σ+σ²))`.
    pub fn parse(group: &Arc<FiniteGroup>, text: &str) -> Result<Self> {
        parse::parse(group, text)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &Cyclotomic {
        &self.coeffs[g]
    }

    /// Smallest `N` with every coefficient in `Q(zeta_N)`.
    pub fn coeff_order(&self) -> usize {
        self.coeffs.iter().fold(1, |acc, c| acc.lcm(&c.conductor()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Cyclotomic::is_zero)
    }

    /// Coefficients constant on conjugacy classes.
    pub fn is_central(&self) -> bool {
        let classes = self.group.conjugacy_classes();
        self.group
            .elements()
            .all(|g| self.coeffs[g] == self.coeffs[classes.representatives[classes.class_of[g]]])
    }

    /// Every coefficient is an algebraic integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.minimal().is_integral())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.minimal().denominator()))
    }

    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(Cyclotomic::as_rational).collect()
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        self.map(|x| x * c)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.map(|x| x.scale(q))
    }

    /// Apply `sigma_a` (a unit modulo `m`) to every coefficient.
    pub fn galois(&self, a: usize, m: usize) -> Self {
        self.map(|x| x.galois_lift(a, m).minimal())
    }

    /// `sum a_g g^{-1}`.
    pub fn involution(&self) -> Self {
        let mut out = Self::zero(&self.group);
        for g in self.group.elements() {
            out.coeffs[self.group.inv(g)] = self.coeffs[g].clone();
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(&self.group), |acc, _| &acc * self)
    }

    /// Reduce every coefficient to its minimal cyclotomic field.
    pub fn minimal(&self) -> Self {
        self.map(Cyclotomic::minimal)
    }

    fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            same_group(&self.group, &other.group),
            "group ring elements over different groups"
        );
    }
}

/// Image of `((1-j)/2) alpha` under `Q(zeta)[H x <j>]^- -> Q(zeta)[H]`, `j -> -1`.
pub fn minus_part_iso(alpha: &GroupRingElement, h: &Subgroup, j: usize) -> Result<GroupRingElement> {
    let g = alpha.group();
    if !same_group(g, h.parent()) {
        return Err(Error::InvalidInput("subgroup of a different group".into()));
    }
    if j == g.identity() || g.element_order(j) != 2 || !g.is_central(j) {
        return Err(Error::NotCentral);
    }
    if h.contains(j) || 2 * h.order() != g.order() {
        return Err(Error::InvalidParameter(format!(
            "{} is not a complement of <j> in {}",
            h.order(),
            g.name()
        )));
    }
    let (hg, embed) = h.as_group();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &e) in embed.iter().enumerate() {
        local[e] = i;
    }
    let mut out = GroupRingElement::zero(&hg);
    for x in g.elements() {
        let (base, sign) = if h.contains(x) { (x, 1) } else { (g.mul(x, j), -1) };
        let c = if sign == 1 { alpha.coeffs[x].clone() } else { -&alpha.coeffs[x] };
        let slot = &mut out.coeffs[local[base]];
        *slot = &*slot + &c;
    }
    Ok(out)
}

/// Write a central minus-part element of `Q[H x <j>]` as
/// `(c)(1−j)(n_1 + n_2(k+k') + ...)`, grouping the `H`-class sums with
/// coprime integer coefficients. `None` if `x` is not of that shape.
pub fn minus_class_sum_form(x: &GroupRingElement, h: &Subgroup, j: usize) -> Option<String> {
    let g = x.group();
    let plus = &GroupRingElement::one(g) + &GroupRingElement::basis(g, j);
    if !(x * &plus).is_zero() || !x.is_central() {
        return None;
    }
    let y = minus_part_iso(x, h, j).ok()?;
    let (hg, embed) = h.as_group();
    let half = Rational::new(1.into(), 2.into());
    let coeffs = y.as_rationals()?;
    // class sums of H in order of their smallest member
    let classes = hg.conjugacy_classes();
    let mut terms: Vec<(Rational, Vec<usize>)> = Vec::new();
    for (c, &rep) in classes.representatives.iter().enumerate() {
        let members: Vec<usize> = hg.elements().filter(|&e| classes.class_of[e] == c).collect();
        let q = &coeffs[rep] * &half;
        if !num_traits::Zero::is_zero(&q) {
            terms.push((q, members));
        }
    }
    if terms.is_empty() {
        return Some("0".into());
    }
    let den = terms.iter().fold(BigInt::one(), |acc, (q, _)| acc.lcm(q.denom()));
    let nums: Vec<BigInt> = terms.iter().map(|(q, _)| (q * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut gcd = nums.iter().fold(BigInt::from(0), |acc, n| acc.gcd(n));
    if num_traits::Signed::is_negative(&nums[0]) {
        gcd = -gcd;
    }
    let scale = Rational::new(gcd.clone(), den);
    let label = |e: usize| g.label(embed[e]).to_string();
    let mut body = String::new();
    for (k, ((_, members), n)) in terms.iter().zip(&nums).enumerate() {
        let m = n / &gcd;
        let neg = num_traits::Signed::is_negative(&m);
        let mag = num_traits::Signed::abs(&m);
        let is_identity = members == &[hg.identity()];
        let names: Vec<String> = members.iter().map(|&e| label(e)).collect();
        let piece = if is_identity {
            mag.to_string()
        } else if mag.is_one() {
            names.join(if neg { " − " } else { " + " })
        } else if names.len() == 1 {
            format!("{mag}{}", names[0])
        } else {
            format!("{mag}({})", names.join("+"))
        };
        match (k == 0, neg) {
            (true, true) => body.push_str(&format!("−{piece}")),
            (true, false) => body.push_str(&piece),
            (false, true) => body.push_str(&format!(" − {piece}")),
            (false, false) => body.push_str(&format!(" + {piece}")),
        }
    }
    let j_label = g.label(j);
    let prefix = if scale.is_one() { String::new() } else { format!("({})", rational_to_string(&scale)) };
    Some(format!("{prefix}(1−{j_label})({body})"))
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Add<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        self.check_same(rhs);
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self.check_same(rhs);
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&GroupRingElement> for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        self.check_same(rhs);
        let g = &self.group;
        let mut acc: Vec<Option<Cyclotomic>> = vec![None; g.order()];
        for (a, ca) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in rhs.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let t = ca * cb;
                let slot = &mut acc[g.mul(a, b)];
                *slot = Some(match slot.take() {
                    Some(s) => &s + &t,
                    None => t,
                });
            }
        }
        GroupRingElement {
            group: g.clone(),
            coeffs: acc
                .into_iter()
                .map(|c| c.unwrap_or_else(|| Cyclotomic::zero(1)))
                .collect(),
        }
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        self.map(|c| -c)
    }
}

impl fmt::Display for GroupRingElement {
    /// `67/4 - (29/4)σ + (ζ3)x`, terms in element order, `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (g, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = if g == self.group.identity() { "" } else { self.group.label(g) };
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let mag = num_traits::Signed::abs(&q);
                    let body = if label.is_empty() {
                        rational_to_string(&mag)
                    } else if mag.is_one() {
                        label.to_string()
                    } else if mag.is_integer() {
                        format!("{}{label}", rational_to_string(&mag))
                    } else {
                        format!("({}){label}", rational_to_string(&mag))
                    };
                    (num_traits::Signed::is_negative(&q), body)
                }
                None => (false, format!("({c}){label}")),
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push_str(&format!("-{body}")),
                (true, false) => out.push_str(&body),
                (false, true) => out.push_str(&format!(" - {body}")),
                (false, false) => out.push_str(&format!(" + {body}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, z2_times_s3};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        let g = z2_times_s3().unwrap();
        let x = GroupRingElement::parse(&g, "(1/4)(1-j)(67-29(σ+σ²)-7(τ+στ+σ²τ))").unwrap();
        let text = x.to_string();
        assert!(text.starts_with("67/4"), "{text}");
        assert_eq!(GroupRingElement::parse(&g, &text).unwrap(), x);
        assert_eq!(GroupRingElement::zero(&g).to_string(), "0");
    }

    #[test]
    fn minus_part_of_z2() {
        let g = cyclic(2, "j").unwrap();
        let j = g.eval_word("j").unwrap();
        let t = g.trivial_subgroup();
        let x = GroupRingElement::from_rationals(&g, &[q(5, 1), q(2, 1)]).unwrap();
        let img = minus_part_iso(&x, &t, j).unwrap();
        assert_eq!(img.coeffs(), &[Cyclotomic::from_int(3)]);
    }

    #[test]
    fn minus_part_of_the_worked_example() {
        let g = z2_times_s3().unwrap();
        let j = g.eval_word("j").unwrap();
        let s3 = g.subgroup_generated(&[g.eval_word("σ").unwrap(), g.eval_word("τ").unwrap()]);
        let x = GroupRingElement::parse(&g, "(1/4)(1-j)(67-29(σ+σ²)-7(τ+στ+σ²τ))").unwrap();
        let img = minus_part_iso(&x, &s3, j).unwrap();
        let back = GroupRingElement::from_subgroup(&s3, &img).unwrap();
        let expect = GroupRingElement::parse(&g, "(1/2)(67-29(σ+σ²)-7(τ+στ+σ²τ))").unwrap();
        assert_eq!(back, expect);
        assert_eq!(
            minus_class_sum_form(&x, &s3, j).unwrap(),
            "(1/4)(1−j)(67 − 29(σ+σ^2) − 7(τ+στ+σ^2τ))"
        );
        let y = GroupRingElement::parse(&g, "(2/3)(1-j)(1+σ+σ²-τ-στ-σ²τ)").unwrap();
        assert_eq!(
            minus_class_sum_form(&y, &s3, j).unwrap(),
            "(2/3)(1−j)(1 + σ + σ^2 − τ − στ − σ^2τ)"
        );
    }

    fn arb_elem() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-4i64..=4, 12)
    }

    proptest! {
        #[test]
        fn ring_axioms_and_minus_hom(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let g = z2_times_s3().unwrap();
            let j = g.eval_word("j").unwrap();
            let s3 = g.subgroup_generated(&[g.eval_word("σ").unwrap(), g.eval_word("τ").unwrap()]);
            let mk = |v: &Vec<i64>| GroupRingElement::from_coeffs(&g, v.iter().map(|&k| Cyclotomic::from_int(k)).collect()).unwrap();
            let (x, y, z) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &GroupRingElement::one(&g), x.clone());
            let lhs = minus_part_iso(&(&x * &y), &s3, j).unwrap();
            let rhs = &minus_part_iso(&x, &s3, j).unwrap() * &minus_part_iso(&y, &s3, j).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
