use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::PlaceData;
use crate::character::{one_dim_characters, same_group, Character, CharacterTable, Family};
use crate::exactnum::{Cyclotomic, CyclotomicLiteral};
use crate::group::{FiniteGroup, Subgroup};
use crate::groupring::GroupRingElement;
use crate::{Error, Result};

/// `{"family": "d4p", "p": 3}` and friends.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

impl GroupSpec {
    pub fn family(&self) -> Result<Family> {
        Family::from_parts(&self.family, self.p, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaceSpec {
    pub label: String,
    pub norm: u64,
    pub decomposition: Vec<String>,
    pub inertia: Vec<String>,
    pub frobenius: String,
}

/// `theta` is a group ring expression in the generators of `G`, supported
/// on the subgroup; it is read modulo the kernel of `phi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelianBlockSpec {
    pub character: String,
    pub subgroup: Vec<String>,
    /// Images of the `subgroup` words under `phi`.
    pub phi: Vec<CyclotomicLiteral>,
    pub theta: String,
}

/// The file format for arithmetic data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArithmeticInputFile {
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
    pub mu_order: u64,
    #[serde(default)]
    pub omit_trivial: bool,
    #[serde(default)]
    pub places: Vec<PlaceSpec>,
    /// Labels of the finite places in `S`.
    #[serde(default, rename = "S")]
    pub s: Vec<String>,
    #[serde(default, rename = "T")]
    pub t: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyp_torsion_free: Option<bool>,
    /// `L_{S_infinity}(0, chi)` by character name.
    #[serde(default)]
    pub l_values: BTreeMap<String, CyclotomicLiteral>,
    #[serde(default)]
    pub abelian: Vec<AbelianBlockSpec>,
}

/// `phi` on `H` with `Ind phi = chi_row`, and `theta_{K_i/k_i}` on `H / ker phi`.
#[derive(Clone, Debug)]
pub struct AbelianBlock {
    pub row: usize,
    pub subgroup: Subgroup,
    pub phi: Character,
    pub kernel: Subgroup,
    pub quotient: Arc<FiniteGroup>,
    /// Index in `subgroup.as_group()` to index in `quotient`.
    pub projection: Vec<usize>,
    pub theta: GroupRingElement,
    /// `theta` over `subgroup.as_group()`, before reduction modulo the kernel.
    pub theta_h: GroupRingElement,
    phi_prime: Vec<Cyclotomic>,
}

impl AbelianBlock {
    /// `theta` is given over `G` and must be supported on `H`.
    pub fn new(table: &CharacterTable, row: usize, subgroup: Subgroup, phi: Character, theta: &GroupRingElement) -> Result<Self> {
        let (hg, embed) = subgroup.as_group();
        if !same_group(&hg, phi.group()) || phi.degree() != 1 {
            return Err(Error::WitnessMismatch("phi must be linear on the subgroup".into()));
        }
        if Character::induce(&subgroup, &phi)? != *table.character(row) {
            return Err(Error::WitnessMismatch(format!(
                "Ind phi is not {}",
                table.name(row)
            )));
        }
        let mut local = vec![usize::MAX; table.group().order()];
        for (i, &e) in embed.iter().enumerate() {
            local[e] = i;
        }
        let kernel = hg.subgroup_from_members(&phi.kernel())?;
        let (quotient, projection) = hg.quotient(&kernel)?;
        let mut coeffs = vec![Cyclotomic::zero(1); quotient.order()];
        let mut local_coeffs = vec![Cyclotomic::zero(1); hg.order()];
        for (x, c) in theta.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if local[x] == usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "theta for {} has support outside the subgroup",
                    table.name(row)
                )));
            }
            local_coeffs[local[x]] = c.clone();
            let q = projection[local[x]];
            coeffs[q] = &coeffs[q] + c;
        }
        let theta_h = GroupRingElement::from_coeffs(&hg, local_coeffs)?;
        let theta = GroupRingElement::from_coeffs(&quotient, coeffs)?.minimal();
        let mut phi_prime = vec![Cyclotomic::zero(1); quotient.order()];
        for (h, &q) in projection.iter().enumerate() {
            phi_prime[q] = phi.value(h).clone();
        }
        Ok(AbelianBlock {
            row,
            subgroup,
            phi,
            kernel,
            quotient,
            projection,
            theta,
            theta_h,
            phi_prime,
        })
    }

    /// `phi'` on the quotient.
    pub fn phi_prime(&self, q: usize) -> &Cyclotomic {
        &self.phi_prime[q]
    }

    /// `phi'(y)` extended linearly.
    pub fn phi_prime_of(&self, y: &GroupRingElement) -> Cyclotomic {
        y.coeffs()
            .iter()
            .enumerate()
            .fold(Cyclotomic::zero(1), |acc, (q, c)| &acc + &(c * &self.phi_prime[q]))
            .minimal()
    }

    /// `phi'(theta_{K_i/k_i})`.
    pub fn value(&self) -> Cyclotomic {
        self.phi_prime_of(&self.theta)
    }
}

/// Resolved arithmetic data over a character table.
#[derive(Clone, Debug)]
pub struct ArithmeticInput {
    pub raw: ArithmeticInputFile,
    pub table: Arc<CharacterTable>,
    pub j: usize,
    pub places: Vec<PlaceData>,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub mu_order: u64,
    pub omit_trivial: bool,
    pub hyp_torsion_free: Option<bool>,
    /// `L_{S_infinity}(0, chi)` per row, when given.
    pub l_values: Vec<Option<Cyclotomic>>,
    pub abelian: Vec<AbelianBlock>,
}

impl ArithmeticInput {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ArithmeticInputFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("arithmetic input: {e}")))?;
        Self::from_file(raw)
    }

    pub fn from_file(raw: ArithmeticInputFile) -> Result<Self> {
        let table = Arc::new(CharacterTable::builtin(raw.group.family()?)?);
        Self::with_table(raw, table)
    }

    /// Resolve against an existing table for the same family.
    pub fn with_table(raw: ArithmeticInputFile, table: Arc<CharacterTable>) -> Result<Self> {
        let g = table.group().clone();
        let j = match &raw.j {
            Some(w) => g.eval_word(w)?,
            None => g.complex_conjugation()?,
        };
        if j == g.identity() || !g.is_central(j) || g.element_order(j) != 2 {
            return Err(Error::InvalidInput("j must be a central involution".into()));
        }
        if raw.mu_order == 0 {
            return Err(Error::InvalidInput("mu_order must be positive".into()));
        }
        let words = |ws: &[String]| -> Result<Vec<usize>> { ws.iter().map(|w| g.eval_word(w)).collect() };
        let mut places = Vec::new();
        for p in &raw.places {
            places.push(PlaceData::new(
                p.label.clone(),
                p.norm,
                g.subgroup_generated(&words(&p.decomposition)?),
                g.subgroup_generated(&words(&p.inertia)?),
                g.eval_word(&p.frobenius)?,
            )?);
        }
        let find = |label: &String| -> Result<usize> {
            places
                .iter()
                .position(|p| &p.label == label)
                .ok_or_else(|| Error::InvalidInput(format!("unknown place {label}")))
        };
        let s = raw.s.iter().map(find).collect::<Result<Vec<_>>>()?;
        let t = raw.t.iter().map(find).collect::<Result<Vec<_>>>()?;
        if s.iter().any(|i| t.contains(i)) {
            return Err(Error::InvalidInput("S and T must be disjoint".into()));
        }
        if let Some(p) = t.iter().map(|&i| &places[i]).find(|p| !p.is_unramified()) {
            return Err(Error::InvalidInput(format!("T-place {} is ramified", p.label)));
        }
        let mut l_values = vec![None; table.len()];
        for (name, lit) in &raw.l_values {
            let row = table
                .index_by_name(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown character {name}")))?;
            l_values[row] = Some(lit.to_cyclotomic()?);
        }
        let mut abelian = Vec::new();
        for b in &raw.abelian {
            let row = table
                .index_by_name(&b.character)
                .ok_or_else(|| Error::InvalidInput(format!("unknown character {}", b.character)))?;
            let gens = words(&b.subgroup)?;
            let h = g.subgroup_generated(&gens);
            let images = b
                .phi
                .iter()
                .map(CyclotomicLiteral::to_cyclotomic)
                .collect::<Result<Vec<_>>>()?;
            if images.len() != gens.len() {
                return Err(Error::WitnessMismatch(format!(
                    "{}: {} phi images for {} generators",
                    b.character,
                    images.len(),
                    gens.len()
                )));
            }
            let (_, embed) = h.as_group();
            let local = |x: usize| embed.iter().position(|&e| e == x).expect("generator lies in H");
            let phi = one_dim_characters(&h)
                .into_iter()
                .find(|c| gens.iter().zip(&images).all(|(&x, v)| c.value(local(x)) == v))
                .ok_or_else(|| {
                    Error::WitnessMismatch(format!("{}: phi images do not define a character", b.character))
                })?;
            let theta = GroupRingElement::parse(&g, &b.theta)?;
            abelian.push(AbelianBlock::new(&table, row, h, phi, &theta)?);
        }
        Ok(ArithmeticInput {
            j,
            places,
            s,
            t,
            mu_order: raw.mu_order,
            omit_trivial: raw.omit_trivial,
            hyp_torsion_free: raw.hyp_torsion_free,
            l_values,
            abelian,
            table,
            raw,
        })
    }

    pub fn s_places(&self) -> Vec<&PlaceData> {
        self.s.iter().map(|&i| &self.places[i]).collect()
    }

    pub fn t_places(&self) -> Vec<&PlaceData> {
        self.t.iter().map(|&i| &self.places[i]).collect()
    }

    /// The same data with the finite part of `S` replaced.
    pub fn with_s(&self, labels: &[&str]) -> Result<Self> {
        let mut raw = self.raw.clone();
        raw.s = labels.iter().map(|s| s.to_string()).collect();
        Self::with_table(raw, self.table.clone())
    }

    /// The same data with `T` replaced.
    pub fn with_t(&self, labels: &[&str]) -> Result<Self> {
        let mut raw = self.raw.clone();
        raw.t = labels.iter().map(|s| s.to_string()).collect();
        Self::with_table(raw, self.table.clone())
    }
}
