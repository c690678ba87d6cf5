use std::sync::Arc;

use crate::character::{one_dim_characters, Character, CharacterTable};
use crate::exactnum::{units_mod, Cyclotomic};
use crate::group::FiniteGroup;
use crate::groupring::{orbit_element, w_k, CentralElement, GroupRingElement};
use crate::stickelberger::{delta_t_central, eps_s, AbelianBlock, ArithmeticInput, StickelbergerElement};
use crate::{Error, Result};

/// The separately checked links of the reduction chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    /// `pr_{psi'} theta' = psi'(theta') pr_{psi'}` in each abelian quotient.
    pub abelian_identity: bool,
    /// `pr_psi = lift(pr_{psi'}) Norm_{ker psi}` in `Q(zeta)[H]`.
    pub norm_identity: bool,
    /// `sum_psi c_psi lift(pr_{psi'} theta'_psi) Norm_{ker psi}
    ///  = (sum_sigma x^sigma pr_{chi^sigma}) theta^T` in `Q(zeta)[G]`.
    pub chain: bool,
    /// Number of `psi` on `H` inducing into the orbit of `chi`.
    pub terms: usize,
}

impl ReductionCheck {
    pub fn holds(&self) -> bool {
        self.abelian_identity && self.norm_identity && self.chain
    }
}

fn pr_of(psi: &Character) -> GroupRingElement {
    let g = psi.group();
    let coeffs = g.elements().map(|x| psi.value(g.inv(x)).clone()).collect();
    GroupRingElement::from_coeffs(g, coeffs).expect("one coefficient per element")
}

/// Over `hg`: checks the two abelian identities for `psi` and returns
/// `lift(pr_{psi'} theta') Norm_{ker psi}`.
fn abelian_side(hg: &Arc<FiniteGroup>, psi: &Character, theta: &GroupRingElement) -> Result<(bool, bool, GroupRingElement)> {
    let kernel = hg.subgroup_from_members(&psi.kernel())?;
    let (q, proj) = hg.quotient(&kernel)?;
    let mut section = vec![usize::MAX; q.order()];
    let mut psi_q = vec![Cyclotomic::zero(1); q.order()];
    let mut theta_q = vec![Cyclotomic::zero(1); q.order()];
    for h in hg.elements() {
        let k = proj[h];
        if section[k] == usize::MAX {
            section[k] = h;
            psi_q[k] = psi.value(h).clone();
        }
        theta_q[k] = &theta_q[k] + &theta.coeffs()[h];
    }
    let theta_q = GroupRingElement::from_coeffs(&q, theta_q)?;
    let psi_prime = Character::new(q.clone(), psi_q)?;
    let pr_q = pr_of(&psi_prime);
    let value = theta_q
        .coeffs()
        .iter()
        .enumerate()
        .fold(Cyclotomic::zero(1), |acc, (k, c)| &acc + &(c * psi_prime.value(k)));
    let product = &pr_q * &theta_q;
    let abelian = product == pr_q.scale(&value);
    let lift = |y: &GroupRingElement| -> GroupRingElement {
        let mut c = vec![Cyclotomic::zero(1); hg.order()];
        for (k, v) in y.coeffs().iter().enumerate() {
            c[section[k]] = v.clone();
        }
        &GroupRingElement::from_coeffs(hg, c).expect("one coefficient per element") * &GroupRingElement::norm_of(&kernel)
    };
    let norm = lift(&pr_q) == pr_of(psi);
    Ok((abelian, norm, lift(&product)))
}

/// `theta_H` transported to `psi = (phi^g)^sigma`: returns `g theta_H g^{-1}`
/// and `sigma`'s exponent, or `None` when `psi` is not of that form.
fn transport(table: &CharacterTable, block: &AbelianBlock, psi: &Character) -> Option<(GroupRingElement, usize)> {
    let g = table.group();
    let h = &block.subgroup;
    let (hg, embed) = h.as_group();
    let local = |x: usize| embed.iter().position(|&e| e == x);
    let e = g.exponent();
    for x in g.elements() {
        let conj: Option<Vec<usize>> = embed.iter().map(|&m| local(g.conjugate(x, m))).collect();
        // conj[i] = local index of x h_i x^{-1}
        let Some(conj) = conj else { continue };
        // phi^x(h) = phi(x^{-1} h x)
        let mut phi_x = vec![Cyclotomic::zero(1); hg.order()];
        let mut theta_x = vec![Cyclotomic::zero(1); hg.order()];
        for (i, &c) in conj.iter().enumerate() {
            phi_x[c] = block.phi.value(i).clone();
            theta_x[c] = block.theta_h.coeffs()[i].clone();
        }
        for a in units_mod(e) {
            let a = a.max(1);
            if (0..hg.order()).all(|k| *psi.value(k) == phi_x[k].galois_lift(a, e).minimal()) {
                let theta = GroupRingElement::from_coeffs(&hg, theta_x).expect("one coefficient per element");
                return Some((theta, a));
            }
        }
    }
    None
}

/// Checks the reduction chain for the block's character `chi` and
/// `x = x_chi` in `Q(chi)` against an assembled `theta^T`.
pub fn verify_reduction_identity(
    input: &ArithmeticInput,
    block: &AbelianBlock,
    x: &Cyclotomic,
    theta: &StickelbergerElement,
) -> Result<ReductionCheck> {
    let table = &input.table;
    let g = table.group();
    let row = block.row;
    let chi = table.character(row);
    let h = &block.subgroup;
    if g.elements().any(|y| !h.contains(y) && !chi.value(y).is_zero()) {
        return Err(Error::WitnessMismatch(format!("{} does not vanish off H", table.name(row))));
    }
    let e = g.exponent();
    let orbit = table.orbit_indices(row);
    let eps = eps_s(table, table.conj_index(row), &input.s_places(), theta.eps_variant);
    let delta = delta_t_central(table, &input.t_places())?;
    let scalar = (&(x * delta.component(row)) * &eps).minimal();
    let (hg, _) = h.as_group();
    let mut lhs = GroupRingElement::zero(&hg);
    let mut abelian_identity = true;
    let mut norm_identity = true;
    let mut terms = 0;
    for psi in one_dim_characters(h) {
        let ind = Character::induce(h, &psi)?;
        let Some(k) = orbit.iter().copied().find(|&k| *table.character(k) == ind) else {
            continue;
        };
        let (theta_psi, a) = transport(table, block, &psi).ok_or_else(|| {
            Error::Inconsistent(format!(
                "{} on H is not a conjugate of phi",
                table.name(k)
            ))
        })?;
        let (ab, nm, term) = abelian_side(&hg, &psi, &theta_psi)?;
        abelian_identity &= ab;
        norm_identity &= nm;
        lhs = &lhs + &term.scale(&scalar.galois_lift(a, e));
        terms += 1;
    }
    let lhs = GroupRingElement::from_subgroup(h, &lhs.minimal())?;
    let rhs = &orbit_element(table, row, x)?.to_group_ring() * &theta.to_group_ring();
    Ok(ReductionCheck {
        abelian_identity,
        norm_identity,
        chain: lhs.minimal() == rhs.minimal(),
        terms,
    })
}

/// A composite exponent with its `Z[G]`-integrality.
#[derive(Clone, Debug, PartialEq)]
pub struct Exponent {
    pub value: CentralElement,
    pub integral: bool,
}

impl Exponent {
    fn new(value: CentralElement) -> Self {
        let integral = value.to_group_ring().is_integral();
        Exponent { value, integral }
    }
}

/// `x w_K theta`, `z delta_T` and `z w_K`.
#[derive(Clone, Debug, PartialEq)]
pub struct BrumerStarkExponents {
    pub x_w_theta: Exponent,
    pub z_delta: Exponent,
    pub z_w: Exponent,
}

pub fn brumer_stark_exponents(
    x: &CentralElement,
    z: &CentralElement,
    theta: &CentralElement,
    mu_order: u64,
    delta_t: &CentralElement,
) -> Result<BrumerStarkExponents> {
    let table = x.table();
    let w = w_k(table, mu_order)?;
    Ok(BrumerStarkExponents {
        x_w_theta: Exponent::new(&(x * &w) * theta),
        z_delta: Exponent::new(z * delta_t),
        z_w: Exponent::new(z * &w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stickelberger::{assemble_theta_from_l, EpsVariant};

    const D12: &str = include_str!("../../examples/d12_paper.json");

    fn d12() -> ArithmeticInput {
        ArithmeticInput::from_json(D12).unwrap()
    }

    #[test]
    fn d12_chain_for_every_block() {
        for inp in [d12(), d12().with_s(&[]).unwrap()] {
            let theta = assemble_theta_from_l(&inp, EpsVariant::Limit).unwrap();
            for b in &inp.abelian {
                for x in [Cyclotomic::one(), Cyclotomic::from_int(-5)] {
                    let r = verify_reduction_identity(&inp, b, &x, &theta).unwrap();
                    assert!(r.holds(), "{} {:?}", inp.table.name(b.row), r);
                }
            }
        }
    }

    #[test]
    fn chain_detects_a_wrong_theta() {
        let inp = d12().with_s(&[]).unwrap();
        let theta = assemble_theta_from_l(&inp, EpsVariant::Limit).unwrap();
        let mut bad = theta.clone();
        bad.theta = theta.theta.scale(&Cyclotomic::from_int(2));
        let b = inp.abelian.iter().find(|b| inp.table.name(b.row) == "χ6").unwrap();
        let r = verify_reduction_identity(&inp, b, &Cyclotomic::one(), &bad).unwrap();
        assert!(r.abelian_identity && r.norm_identity && !r.chain);
        assert_eq!(r.terms, 2);
    }

    #[test]
    fn exponents_with_trivial_mu() {
        let inp = d12().with_s(&[]).unwrap();
        let t = inp.table.clone();
        let theta = assemble_theta_from_l(&inp, EpsVariant::Limit).unwrap().theta;
        let chi6 = t.index_by_name("χ6").unwrap();
        let x = orbit_element(&t, chi6, &Cyclotomic::one()).unwrap();
        let one = CentralElement::one(&t);
        let r = brumer_stark_exponents(&x, &CentralElement::zero(&t), &theta, 1, &one).unwrap();
        assert_eq!(r.x_w_theta.value, &x * &theta);
        assert!(r.x_w_theta.integral);
        assert!(r.z_delta.value.is_zero() && r.z_w.value.is_zero());
        let r2 = brumer_stark_exponents(&x, &x, &theta, 2, &one).unwrap();
        assert!(r2.x_w_theta.integral && r2.z_w.integral);
    }
}
