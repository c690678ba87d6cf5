use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{delta_t, eps_s, ArithmeticInput, EpsVariant};
use crate::character::CharacterTable;
use crate::exactnum::{units_mod, Cyclotomic};
use crate::group::Subgroup;
use crate::groupring::{conductor_member, minus_class_sum_form, CentralElement, GroupRingElement};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssemblyMode {
    /// From ingested `L_{S_infinity}(0, chi)`.
    LValues,
    /// From abelian `theta_{K_i/k_i}` through `phi'_i`.
    Reduction,
}

impl fmt::Display for AssemblyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AssemblyMode::LValues => "L-values",
            AssemblyMode::Reduction => "reduction",
        })
    }
}

/// `theta^T_{K/k,S}` with the data that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct StickelbergerElement {
    pub theta: CentralElement,
    pub s: Vec<String>,
    pub t: Vec<String>,
    pub mode: AssemblyMode,
    pub eps_variant: EpsVariant,
}

impl StickelbergerElement {
    pub fn to_group_ring(&self) -> GroupRingElement {
        self.theta.to_group_ring()
    }

    /// `(c)(1-j)(...)` in class sums of a complement of `<j>`, when one exists.
    pub fn factored_form(&self, j: usize) -> Option<String> {
        let h = complement(self.theta.table(), j)?;
        minus_class_sum_form(&self.to_group_ring(), &h, j)
    }
}

/// A complement of `<j>` containing as many of the named generators as possible.
pub fn complement(table: &CharacterTable, j: usize) -> Option<Subgroup> {
    let g = table.group();
    let subs = g.subgroups().ok()?;
    subs.into_iter()
        .filter(|h| 2 * h.order() == g.order() && !h.contains(j))
        .enumerate()
        .max_by_key(|(k, h)| {
            let hits = g.generators().iter().filter(|&&x| h.contains(x)).count();
            (hits, std::cmp::Reverse(*k))
        })
        .map(|(_, h)| h)
}

/// Fill each row from a known row of its Galois orbit: `v_{chi^sigma} = v_chi^sigma`.
fn fill_orbits(table: &CharacterTable, known: &[Option<Cyclotomic>]) -> Vec<Option<Cyclotomic>> {
    let e = table.group().exponent();
    let mut out = known.to_vec();
    for (i, v) in known.iter().enumerate() {
        let Some(v) = v else { continue };
        for a in units_mod(e) {
            let a = a.max(1);
            let k = table.galois_index(i, a).expect("unit exponent");
            if out[k].is_none() {
                out[k] = Some(v.galois_lift(a, e).minimal());
            }
        }
    }
    out
}

/// Shared tail of both assembly modes: `delta_T(chi) eps_{conj chi, S} v(chi)`
/// with `v(chi) = L_{S_infinity}(0, conj chi)`, odd rows only.
fn assemble(
    input: &ArithmeticInput,
    values: &[Option<Cyclotomic>],
    variant: EpsVariant,
    mode: AssemblyMode,
) -> Result<StickelbergerElement> {
    let table = &input.table;
    let s = input.s_places();
    let t = input.t_places();
    let trivial = table.characters().iter().position(|c| c.degree() == 1 && c.kernel().len() == table.group().order());
    let comps = (0..table.len())
        .into_par_iter()
        .map(|i| {
            let chi = table.character(i);
            if chi.is_even(input.j) || (input.omit_trivial && Some(i) == trivial) {
                return Ok(Cyclotomic::zero(1));
            }
            let v = values[i].clone().ok_or_else(|| match mode {
                AssemblyMode::LValues => Error::MissingLValue(table.name(table.conj_index(i)).to_string()),
                AssemblyMode::Reduction => {
                    Error::InvalidInput(format!("no abelian data on the orbit of {}", table.name(i)))
                }
            })?;
            let eps = eps_s(table, table.conj_index(i), &s, variant);
            let delta = delta_t(table, i, &t)?;
            Ok((&(&delta * &eps) * &v).minimal())
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = CentralElement::new(table, comps)?;
    if !theta.is_galois_equivariant() {
        return Err(Error::Inconsistent("assembled components are not Galois equivariant".into()));
    }
    Ok(StickelbergerElement {
        theta,
        s: s.iter().map(|p| p.label.clone()).collect(),
        t: t.iter().map(|p| p.label.clone()).collect(),
        mode,
        eps_variant: variant,
    })
}

/// `theta^T = sum_chi delta_T(chi) eps_{conj chi,S} L_{S_infinity}(0, conj chi) e_chi`.
/// L-values not given are filled along Galois orbits.
pub fn assemble_theta_from_l(input: &ArithmeticInput, variant: EpsVariant) -> Result<StickelbergerElement> {
    let table = &input.table;
    let filled = fill_orbits(table, &input.l_values);
    let values: Vec<Option<Cyclotomic>> = (0..table.len()).map(|i| filled[table.conj_index(i)].clone()).collect();
    assemble(input, &values, variant, AssemblyMode::LValues)
}

/// The same element from `phi'_i(theta_{K_i/k_i}) = L_{S_infinity}(0, conj chi_i)`.
pub fn assemble_theta_reduction(input: &ArithmeticInput, variant: EpsVariant) -> Result<StickelbergerElement> {
    let table = &input.table;
    let mut known = vec![None; table.len()];
    for b in &input.abelian {
        let v = b.value();
        match &known[b.row] {
            Some(w) if *w != v => {
                return Err(Error::Inconsistent(format!("two abelian blocks for {} disagree", table.name(b.row))))
            }
            _ => known[b.row] = Some(v),
        }
    }
    let values = fill_orbits(table, &known);
    assemble(input, &values, variant, AssemblyMode::Reduction)
}

/// Integrality of `theta` in the centre of a maximal order and in `Z[G]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralityReport {
    /// `(name, component, is_integral)` per character.
    pub rows: Vec<(String, Cyclotomic, bool)>,
    /// Every component is an algebraic integer.
    pub in_maximal_centre: bool,
    /// Central conductor membership.
    pub in_conductor: bool,
    pub in_group_ring: bool,
    /// Least common denominator of the group ring coefficients.
    pub denominator: BigInt,
}

impl fmt::Display for IntegralityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, c, ok) in &self.rows {
            writeln!(f, "{name}: {c} {}", if *ok { "integral" } else { "not integral" })?;
        }
        writeln!(f, "zeta(Lambda') membership: {}", self.in_maximal_centre)?;
        writeln!(f, "central conductor membership: {}", self.in_conductor)?;
        write!(f, "Z[G] coefficients integral: {} (denominator {})", self.in_group_ring, self.denominator)
    }
}

pub fn integrality_check(theta: &CentralElement) -> IntegralityReport {
    let t: &Arc<CharacterTable> = theta.table();
    let rows: Vec<(String, Cyclotomic, bool)> = (0..t.len())
        .map(|i| {
            let c = theta.component(i).clone();
            let ok = c.is_integral();
            (t.name(i).to_string(), c, ok)
        })
        .collect();
    let x = theta.to_group_ring();
    IntegralityReport {
        in_maximal_centre: rows.iter().all(|r| r.2),
        in_conductor: conductor_member(theta).member,
        in_group_ring: x.is_integral(),
        denominator: x.denominator(),
        rows,
    }
}
