use std::sync::Arc;

use super::{pr_chi, CentralElement, GroupRingElement};
use crate::character::{one_dim_characters, Character, CharacterTable};
use crate::exactnum::{units_mod, Cyclotomic, Rational};
use crate::{Error, Result};

/// Outcome of the componentwise conductor test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorVerdict {
    pub member: bool,
    /// Rows whose scaled component is outside the inverse different.
    pub failing_rows: Vec<usize>,
    pub equivariant: bool,
}

/// `x` lies in the central conductor of `Z[G]` iff every
/// `(chi(1)/|G|) x_chi` lies in the inverse different of `Q(chi)` and the
/// component map commutes with the Galois action.
pub fn conductor_member(x: &CentralElement) -> ConductorVerdict {
    let t = x.table();
    let order = Rational::from_integer(t.group().order().into());
    let failing_rows: Vec<usize> = (0..t.len())
        .filter(|&i| {
            let scaled = x.component(i).scale(&(t.character(i).degree_rational() / &order));
            !t.field(i).in_inverse_different(&scaled)
        })
        .collect();
    let equivariant = x.is_galois_equivariant();
    ConductorVerdict {
        member: failing_rows.is_empty() && equivariant,
        failing_rows,
        equivariant,
    }
}

/// Conductor test for a central group ring element, over the monomial table
/// of its group.
pub fn conductor_member_group_ring(y: &GroupRingElement) -> Result<ConductorVerdict> {
    let t = Arc::new(CharacterTable::monomial(y.group())?);
    Ok(conductor_member(&CentralElement::from_group_ring(&t, y)?))
}

/// `sum_sigma alpha^sigma pr_{chi^sigma}` for `alpha` in `Q(chi_i)`.
pub fn orbit_element(table: &Arc<CharacterTable>, i: usize, alpha: &Cyclotomic) -> Result<CentralElement> {
    if !table.field(i).contains(alpha) {
        return Err(Error::NotInField(format!("{alpha} is not in Q({})", table.name(i))));
    }
    let e = table.group().exponent();
    let scale = Rational::from_integer(table.group().order().into()) / table.character(i).degree_rational();
    let mut comps = vec![Cyclotomic::zero(1); table.len()];
    for a in units_mod(e) {
        let a = a.max(1);
        let k = table.galois_index(i, a)?;
        comps[k] = alpha.galois_lift(a, e).scale(&scale).minimal();
    }
    CentralElement::new(table, comps)
}

/// The one-dimensional characters `psi` of the witness subgroup `H` of row
/// `i` with `Ind psi = chi_i`, each with `pr_psi` pushed into `Q(zeta)[G]`.
/// Summing the second entries gives `pr_chi` when `chi` vanishes off `H`.
pub fn induced_pr_terms(table: &CharacterTable, i: usize) -> Result<Vec<(Character, GroupRingElement)>> {
    let h = &table.witness(i).subgroup;
    let target = table.character(i);
    let mut out = Vec::new();
    for psi in one_dim_characters(h) {
        if Character::induce(h, &psi)? == *target {
            let local = pr_local(&psi);
            out.push((psi, GroupRingElement::from_subgroup(h, &local)?));
        }
    }
    if out.is_empty() {
        return Err(Error::NotInduced(table.name(i).to_string()));
    }
    Ok(out)
}

fn pr_local(psi: &Character) -> GroupRingElement {
    let hg = psi.group();
    let coeffs = hg.elements().map(|x| psi.value(hg.inv(x)).clone()).collect();
    GroupRingElement::from_coeffs(hg, coeffs).expect("one coefficient per element")
}

/// Push a conductor element supported on the Galois orbit of row `i` down to
/// the witness subgroup `H`: `sum_{psi} a_{Ind psi} pr_psi` over the linear
/// characters of `H` inducing into the orbit. The result is checked to equal
/// `x` in `Q(zeta)[G]`. Here `x = sum_k a_k pr_{chi_k}`.
pub fn conductor_pushdown(x: &CentralElement, i: usize) -> Result<GroupRingElement> {
    let t = x.table();
    let orbit = t.orbit_indices(i);
    if (0..t.len()).any(|k| !orbit.contains(&k) && !x.component(k).is_zero()) {
        return Err(Error::InvalidInput(format!(
            "element is not supported on the orbit of {}",
            t.name(i)
        )));
    }
    let h = &t.witness(i).subgroup;
    let (hg, _) = h.as_group();
    let order = Rational::from_integer(t.group().order().into());
    let mut acc = GroupRingElement::zero(&hg);
    for psi in one_dim_characters(h) {
        let ind = Character::induce(h, &psi)?;
        if let Some(k) = orbit.iter().copied().find(|&k| *t.character(k) == ind) {
            // x = sum_k a_k pr_{chi_k} with a_k = (chi(1)/|G|) x_k
            let c = x.component(k).scale(&(t.character(k).degree_rational() / &order));
            if !c.is_zero() {
                acc = &acc + &pr_local(&psi).scale(&c);
            }
        }
    }
    let acc = acc.minimal();
    if GroupRingElement::from_subgroup(h, &acc)? != x.to_group_ring() {
        return Err(Error::NotInduced(format!("pushdown of {} does not recover the element", t.name(i))));
    }
    Ok(acc)
}

/// `sum_{k in orbit(i)} pr_{chi_k}`.
pub fn orbit_pr_sum(table: &CharacterTable, i: usize) -> GroupRingElement {
    let g = table.group();
    table
        .orbit_indices(i)
        .into_iter()
        .fold(GroupRingElement::zero(g), |acc, k| &acc + &pr_chi(table, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::Family;
    use crate::group::cyclic;

    #[test]
    fn z2_conductor_is_the_congruence() {
        let g = cyclic(2, "j").unwrap();
        let t = Arc::new(CharacterTable::monomial(&g).unwrap());
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let x = GroupRingElement::from_coeffs(&g, vec![Cyclotomic::from_int(a), Cyclotomic::from_int(b)]).unwrap();
                let c = CentralElement::from_group_ring(&t, &x).unwrap();
                assert_eq!(conductor_member(&c).member, (a - b).rem_euclid(2) == 0, "{a} {b}");
            }
        }
        assert!(!conductor_member(&CentralElement::one(&t)).member);
    }

    #[test]
    fn orbit_sums_of_pr_are_members() {
        let t = Arc::new(CharacterTable::builtin(Family::Quaternion(2)).unwrap());
        for i in 0..t.len() {
            let x = orbit_element(&t, i, &Cyclotomic::one()).unwrap();
            assert!(conductor_member(&x).member, "{}", t.name(i));
            assert_eq!(x.to_group_ring(), orbit_pr_sum(&t, i));
        }
    }

    #[test]
    fn q16_pushdown_is_a_member_over_the_cyclic_subgroup() {
        let t = Arc::new(CharacterTable::builtin(Family::Quaternion(2)).unwrap());
        let faithful = (0..t.len()).find(|&i| t.character(i).degree() == 2 && t.character(i).field_order() == 8);
        let i = faithful.expect("faithful character");
        let x = orbit_element(&t, i, &Cyclotomic::one()).unwrap();
        let y = conductor_pushdown(&x, i).unwrap();
        assert_eq!(y.group().order(), 8);
        assert!(conductor_member_group_ring(&y).unwrap().member);
    }

    #[test]
    fn linear_characters_push_down_to_themselves() {
        let t = Arc::new(CharacterTable::builtin(Family::D12Example).unwrap());
        let x = orbit_element(&t, 1, &Cyclotomic::from_int(3)).unwrap();
        let y = conductor_pushdown(&x, 1).unwrap();
        assert_eq!(y.group().order(), 12);
        assert_eq!(GroupRingElement::from_subgroup(&t.witness(1).subgroup, &y).unwrap(), x.to_group_ring());
    }
}
