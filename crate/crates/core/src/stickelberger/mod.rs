//! Euler factors, `delta_T`, and assembly of Stickelberger elements.

mod assemble;
mod input;

use std::sync::Arc;

use crate::character::{same_group, CharacterTable};
use crate::exactnum::{Cyclotomic, Rational};
use crate::group::Subgroup;
use crate::groupring::{determinant, reduced_norm, CentralElement, GroupRingElement};
use crate::{Error, Result};

pub use assemble::{
    assemble_theta_from_l, assemble_theta_reduction, integrality_check, AssemblyMode, IntegralityReport,
    StickelbergerElement,
};
pub use assemble::complement;
pub use input::{AbelianBlock, AbelianBlockSpec, ArithmeticInput, ArithmeticInputFile, GroupSpec, PlaceSpec};

/// How the Euler factor treats `N p^{-s}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EpsVariant {
    /// `lim_{s -> 0}`: the factor is `det(1 - phi | V^I)`.
    #[default]
    Limit,
    /// `det(1 - phi Np | V^I)` with `Np` taken at face value.
    LiteralNp,
}

/// A fixed prime above a place, with its decomposition and inertia groups
/// and a Frobenius lift.
#[derive(Clone, Debug)]
pub struct PlaceData {
    pub label: String,
    pub norm: u64,
    pub decomposition: Subgroup,
    pub inertia: Subgroup,
    pub frobenius: usize,
}

impl PlaceData {
    /// Checks `I <| G_P`, `phi in G_P` and that `phi I` generates `G_P / I`.
    pub fn new(label: impl Into<String>, norm: u64, decomposition: Subgroup, inertia: Subgroup, frobenius: usize) -> Result<Self> {
        let label = label.into();
        let g = decomposition.parent().clone();
        if !same_group(&g, inertia.parent()) || !inertia.is_subgroup_of(&decomposition) {
            return Err(Error::InvalidInput(format!("{label}: inertia is not inside decomposition")));
        }
        for &x in decomposition.members() {
            for &h in inertia.members() {
                if !inertia.contains(g.conjugate(x, h)) {
                    return Err(Error::InvalidInput(format!("{label}: inertia is not normal in decomposition")));
                }
            }
        }
        if !decomposition.contains(frobenius) {
            return Err(Error::InvalidInput(format!("{label}: Frobenius lift outside decomposition group")));
        }
        let mut gens = inertia.members().to_vec();
        gens.push(frobenius);
        if g.closure(&gens).len() != decomposition.order() {
            return Err(Error::InvalidInput(format!(
                "{label}: Frobenius coset does not generate G_P/I_P"
            )));
        }
        if norm < 2 {
            return Err(Error::InvalidInput(format!("{label}: norm must be at least 2")));
        }
        Ok(PlaceData {
            label,
            norm,
            decomposition,
            inertia,
            frobenius,
        })
    }

    pub fn is_unramified(&self) -> bool {
        self.inertia.order() == 1
    }

    /// The same data for another Frobenius lift `phi h`, `h` in `I`.
    pub fn with_frobenius(&self, frobenius: usize) -> Result<Self> {
        Self::new(
            self.label.clone(),
            self.norm,
            self.decomposition.clone(),
            self.inertia.clone(),
            frobenius,
        )
    }

    /// Data for the prime `g P g^{-1}`.
    pub fn conjugated(&self, g: usize) -> Result<Self> {
        let grp = self.decomposition.parent();
        let conj = |s: &Subgroup| -> Result<Subgroup> {
            let m: Vec<usize> = s.members().iter().map(|&x| grp.conjugate(g, x)).collect();
            grp.subgroup_from_members(&m)
        };
        Self::new(
            self.label.clone(),
            self.norm,
            conj(&self.decomposition)?,
            conj(&self.inertia)?,
            grp.conjugate(g, self.frobenius),
        )
    }
}

fn identity_minus(m: Vec<Vec<Cyclotomic>>, scale: &Rational) -> Vec<Vec<Cyclotomic>> {
    m.into_iter()
        .enumerate()
        .map(|(r, row)| {
            row.into_iter()
                .enumerate()
                .map(|(c, v)| {
                    let v = -&v.scale(scale);
                    if r == c {
                        &v + &Cyclotomic::one()
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// `det(1 - c rho_chi(phi) P_I | V_chi)` with `P_I` the inertia projector and
/// `c = 1` or `Np` according to the variant.
pub fn euler_factor_eps(table: &CharacterTable, i: usize, place: &PlaceData, variant: EpsVariant) -> Cyclotomic {
    let g = table.group();
    let inv_order = Rational::new(1.into(), place.inertia.order().into());
    let mut x = GroupRingElement::zero(g);
    let mut coeffs = x.coeffs().to_vec();
    for &h in place.inertia.members() {
        coeffs[g.mul(place.frobenius, h)] = Cyclotomic::from_rational(inv_order.clone());
    }
    x = GroupRingElement::from_coeffs(g, coeffs).expect("one coefficient per element");
    let m = table.monomial_rep(i).apply(&x);
    let c = match variant {
        EpsVariant::Limit => Rational::from_integer(1.into()),
        EpsVariant::LiteralNp => Rational::from_integer(place.norm.into()),
    };
    determinant(identity_minus(m, &c))
}

/// `prod_{P in places} eps_{chi,P}`; empty product is 1.
pub fn eps_s(table: &CharacterTable, i: usize, places: &[&PlaceData], variant: EpsVariant) -> Cyclotomic {
    places
        .iter()
        .fold(Cyclotomic::one(), |acc, p| (&acc * &euler_factor_eps(table, i, p, variant)).minimal())
}

/// `delta_T(chi) = prod_{P in T} det(1 - Np rho_chi(phi_P^{-1}))`.
pub fn delta_t(table: &CharacterTable, i: usize, t: &[&PlaceData]) -> Result<Cyclotomic> {
    let g = table.group();
    let mut acc = Cyclotomic::one();
    for p in t {
        if !p.is_unramified() {
            return Err(Error::InvalidInput(format!("T-place {} is ramified", p.label)));
        }
        let m = table.monomial_rep(i).matrix(g.inv(p.frobenius));
        let d = determinant(identity_minus(m, &Rational::from_integer(p.norm.into())));
        acc = (&acc * &d).minimal();
    }
    Ok(acc)
}

/// `nr(prod_{P in T} (1 - phi_P^{-1} Np))`.
pub fn a_s_generator(table: &Arc<CharacterTable>, t: &[&PlaceData]) -> Result<CentralElement> {
    let g = table.group();
    let mut prod = GroupRingElement::one(g);
    for p in t {
        if !p.is_unramified() {
            return Err(Error::InvalidInput(format!("T-place {} is ramified", p.label)));
        }
        let np = Cyclotomic::from_int(p.norm as i64);
        let factor = &GroupRingElement::one(g) - &GroupRingElement::basis(g, g.inv(p.frobenius)).scale(&np);
        prod = &prod * &factor;
    }
    reduced_norm(table, &prod)
}

/// Per-character `delta_T` as a central element.
pub fn delta_t_central(table: &Arc<CharacterTable>, t: &[&PlaceData]) -> Result<CentralElement> {
    let comps = (0..table.len())
        .map(|i| delta_t(table, i, t))
        .collect::<Result<Vec<_>>>()?;
    CentralElement::new(table, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::Family;

    fn d12() -> Arc<CharacterTable> {
        Arc::new(CharacterTable::builtin(Family::D12Example).unwrap())
    }

    fn place(t: &CharacterTable, label: &str, norm: u64, dec: &[&str], ine: &[&str], frob: &str) -> PlaceData {
        let g = t.group();
        let w = |s: &[&str]| -> Vec<usize> { s.iter().map(|x| g.eval_word(x).unwrap()).collect() };
        PlaceData::new(
            label,
            norm,
            g.subgroup_generated(&w(dec)),
            g.subgroup_generated(&w(ine)),
            g.eval_word(frob).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn worked_example_euler_factors() {
        let t = d12();
        let ps = [
            place(&t, "p=2", 2, &["σj"], &["j"], "σj"),
            place(&t, "p=3", 3, &["σ", "τ"], &["σ", "τ"], "1"),
            place(&t, "p=11", 11, &["τ"], &["τ"], "1"),
        ];
        let refs: Vec<&PlaceData> = ps.iter().collect();
        let e = |name: &str| eps_s(&t, t.index_by_name(name).unwrap(), &refs, EpsVariant::Limit);
        assert_eq!(e("χ2"), Cyclotomic::from_int(0));
        assert_eq!(e("χ4"), Cyclotomic::from_int(1));
        assert_eq!(e("χ6"), Cyclotomic::from_int(0));
        for p in &ps {
            let x = euler_factor_eps(&t, t.index_by_name("χ4").unwrap(), p, EpsVariant::Limit);
            assert_eq!(x, Cyclotomic::one());
        }
        let chi6 = t.index_by_name("χ6").unwrap();
        assert_eq!(euler_factor_eps(&t, chi6, &ps[2], EpsVariant::LiteralNp), Cyclotomic::from_int(-10));
        assert_eq!(eps_s(&t, chi6, &[], EpsVariant::Limit), Cyclotomic::one());
    }

    #[test]
    fn frobenius_lift_and_conjugation_invariance() {
        let t = d12();
        let g = t.group().clone();
        let p = place(&t, "p=2", 2, &["σj"], &["j"], "σj");
        for i in 0..t.len() {
            let base = euler_factor_eps(&t, i, &p, EpsVariant::Limit);
            for &h in p.inertia.members() {
                let q = p.with_frobenius(g.mul(p.frobenius, h)).unwrap();
                assert_eq!(euler_factor_eps(&t, i, &q, EpsVariant::Limit), base);
            }
            for x in g.elements() {
                assert_eq!(euler_factor_eps(&t, i, &p.conjugated(x).unwrap(), EpsVariant::Limit), base);
            }
        }
    }

    #[test]
    fn delta_t_and_a_s_agree() {
        let t = d12();
        let q = place(&t, "q=5", 5, &["τ"], &[], "τ");
        assert!(delta_t(&t, 0, &[]).unwrap().is_one());
        assert_eq!(delta_t(&t, 0, &[&q]).unwrap(), Cyclotomic::from_int(-4));
        let a = a_s_generator(&t, &[&q]).unwrap();
        assert_eq!(a, delta_t_central(&t, &[&q]).unwrap());
        assert!(a.is_integral());
        let g = t.group();
        for x in g.elements() {
            let c = q.conjugated(x).unwrap();
            assert_eq!(delta_t_central(&t, &[&c]).unwrap(), a);
        }
    }

    #[test]
    fn bad_place_data_is_rejected() {
        let t = d12();
        let g = t.group();
        let tau = g.subgroup_generated(&[g.eval_word("τ").unwrap()]);
        let s = g.subgroup_generated(&[g.eval_word("σ").unwrap()]);
        assert!(PlaceData::new("x", 5, tau.clone(), s, 0).is_err());
        assert!(PlaceData::new("x", 5, tau.clone(), g.trivial_subgroup(), 0).is_err());
        assert!(PlaceData::new("x", 5, tau, g.trivial_subgroup(), g.eval_word("σ").unwrap()).is_err());
    }
}
