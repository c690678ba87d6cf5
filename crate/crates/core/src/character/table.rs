use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use serde_json::{json, Value};

use super::{irreducible_characters_monomial, Character, Witness};
use crate::exactnum::{CyclotomicLiteral, Cyclotomic, CyclotomicSubfield};
use crate::groupring::MonomialRep;
use crate::group::{
    dihedral, generalized_quaternion, z2_times_a4, z2_times_dihedral, z2_times_s3, FiniteGroup,
};
use crate::{Error, Result};

/// The group families with built-in character tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Dihedral group of order `4p`, `p` an odd prime.
    D4p(usize),
    /// Generalized quaternion group of order `2^{n+2}`.
    Quaternion(u32),
    /// `Z/2 x A_4`.
    Z2A4,
    /// `Z/2 x S_3` presented by `sigma, tau, j`.
    D12Example,
    /// `Z/2 x D_{2p}`; its table comes from the monomial search.
    Product(usize),
}

impl Family {
    /// `d4p`/`product` take `p`, `q` takes `n`; `z2a4` and `table` take nothing.
    pub fn from_parts(name: &str, p: Option<usize>, n: Option<u32>) -> Result<Family> {
        let need_p = || p.ok_or_else(|| Error::InvalidParameter(format!("family {name} needs p")));
        Ok(match name {
            "d4p" => Family::D4p(need_p()?),
            "product" => Family::Product(need_p()?),
            "q" => Family::Quaternion(
                n.ok_or_else(|| Error::InvalidParameter("family q needs n".into()))?,
            ),
            "z2a4" => Family::Z2A4,
            "table" => Family::D12Example,
            other => return Err(Error::InvalidParameter(format!("unknown family {other}"))),
        })
    }

    pub fn group(&self) -> Result<Arc<FiniteGroup>> {
        match *self {
            Family::D4p(p) => {
                check_odd_prime(p)?;
                dihedral(4 * p)
            }
            Family::Quaternion(n) => generalized_quaternion(n),
            Family::Z2A4 => z2_times_a4(),
            Family::D12Example => z2_times_s3(),
            Family::Product(p) => {
                check_odd_prime(p)?;
                z2_times_dihedral(p)
            }
        }
    }
}

fn check_odd_prime(p: usize) -> Result<()> {
    let prime = p >= 3 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if prime {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("p must be an odd prime, got {p}")))
    }
}

/// Irreducible characters of a group with names and monomial witnesses.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    names: Vec<String>,
    characters: Vec<Character>,
    witnesses: Vec<Witness>,
    reps: Vec<OnceLock<MonomialRep>>,
    fields: Vec<OnceLock<CyclotomicSubfield>>,
}

impl CharacterTable {
    /// Table from the monomial search, rows named `χ1, χ2, ...`.
    pub fn monomial(group: &Arc<FiniteGroup>) -> Result<Self> {
        let irr = irreducible_characters_monomial(group)?;
        let names = (1..=irr.len()).map(|i| format!("χ{i}")).collect();
        let (characters, witnesses): (Vec<Character>, Vec<Witness>) = irr.into_iter().unzip();
        Ok(CharacterTable {
            group: group.clone(),
            names,
            reps: (0..characters.len()).map(|_| OnceLock::new()).collect(),
            fields: (0..characters.len()).map(|_| OnceLock::new()).collect(),
            characters,
            witnesses,
        })
    }

    /// Closed-form table for a family. Witnesses are attached from the
    /// monomial search, which also checks that both lists agree.
    pub fn builtin(family: Family) -> Result<Self> {
        let g = family.group()?;
        let rows: Vec<(String, Character)> = match family {
            Family::D4p(p) => d4p_rows(&g, p)?,
            Family::Quaternion(n) => quaternion_rows(&g, n)?,
            Family::Z2A4 => z2a4_rows(&g)?,
            Family::D12Example => d12_rows(&g)?,
            Family::Product(_) => return Self::monomial(&g),
        };
        let irr = irreducible_characters_monomial(&g)?;
        if irr.len() != rows.len() {
            return Err(Error::IncompleteTable {
                found: format!("{} closed-form rows vs {} induced", rows.len(), irr.len()),
                order: g.order(),
            });
        }
        let mut names = Vec::new();
        let mut characters = Vec::new();
        let mut witnesses = Vec::new();
        for (name, chi) in rows {
            let Some((_, w)) = irr.iter().find(|(c, _)| c.values() == chi.values()) else {
                return Err(Error::IncompleteTable {
                    found: format!("{name} is not among the induced characters"),
                    order: g.order(),
                });
            };
            names.push(name);
            characters.push(chi);
            witnesses.push(w.clone());
        }
        Ok(CharacterTable {
            group: g,
            names,
            reps: (0..characters.len()).map(|_| OnceLock::new()).collect(),
            fields: (0..characters.len()).map(|_| OnceLock::new()).collect(),
            characters,
            witnesses,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.characters[i]
    }

    pub fn witness(&self, i: usize) -> &Witness {
        &self.witnesses[i]
    }

    /// Monomial representation built from the row's witness, cached.
    pub fn monomial_rep(&self, i: usize) -> &MonomialRep {
        self.reps[i].get_or_init(|| {
            MonomialRep::new(&self.characters[i], &self.witnesses[i])
                .expect("witness induces its row")
        })
    }

    /// `Q(chi_i)` as a subfield of `Q(zeta_m)`, cached with its integral basis.
    pub fn field(&self, i: usize) -> &CyclotomicSubfield {
        self.fields[i].get_or_init(|| self.characters[i].field().subfield())
    }

    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.characters.iter().position(|c| c.values() == chi.values())
    }

    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Row of the contragredient character.
    pub fn conj_index(&self, i: usize) -> usize {
        self.index_of(&self.characters[i].conj())
            .expect("table is closed under conjugation")
    }

    /// Row of `chi_i^{sigma_a}`.
    pub fn galois_index(&self, i: usize, a: usize) -> Result<usize> {
        let c = self.characters[i].galois(a)?;
        Ok(self.index_of(&c).expect("table is closed under Galois action"))
    }

    /// Rows of the Galois orbit of row `i`, in orbit order.
    pub fn orbit_indices(&self, i: usize) -> Vec<usize> {
        self.characters[i]
            .galois_orbit()
            .iter()
            .map(|c| self.index_of(c).expect("closed under Galois action"))
            .collect()
    }

    pub fn odd_indices(&self) -> Result<Vec<usize>> {
        let j = self.group.complex_conjugation()?;
        Ok((0..self.len()).filter(|&i| self.characters[i].is_odd(j)).collect())
    }

    pub fn class_labels(&self) -> Vec<String> {
        self.group
            .conjugacy_classes()
            .representatives
            .iter()
            .map(|&r| format!("{{{}}}", self.group.label(r)))
            .collect()
    }

    /// Aligned text table, one row per character, one column per class.
    pub fn to_text(&self) -> String {
        let header = self.class_labels();
        let cells: Vec<Vec<String>> = self
            .characters
            .iter()
            .map(|c| c.class_values().iter().map(pretty_value).collect())
            .collect();
        let ncols = header.len();
        let widths: Vec<usize> = (0..ncols)
            .map(|k| {
                cells
                    .iter()
                    .map(|r| r[k].chars().count())
                    .chain([header[k].chars().count()])
                    .max()
                    .unwrap()
            })
            .collect();
        let name_w = self.names.iter().map(|n| n.chars().count()).max().unwrap_or(0);
        let pad = |s: &str, w: usize| format!("{}{}", " ".repeat(w - s.chars().count()), s);
        let mut out = String::new();
        let mut line = " ".repeat(name_w);
        for k in 0..ncols {
            line.push_str("  ");
            line.push_str(&pad(&header[k], widths[k]));
        }
        writeln!(out, "{}", line.trim_end()).unwrap();
        for (name, row) in self.names.iter().zip(&cells) {
            let mut line = pad(name, name_w);
            for k in 0..ncols {
                line.push_str("  ");
                line.push_str(&pad(&row[k], widths[k]));
            }
            writeln!(out, "{line}").unwrap();
        }
        out
    }

    /// JSON export with class representatives and exact coordinates.
    pub fn to_machine(&self) -> Value {
        let cc = self.group.conjugacy_classes();
        let j = self.group.complex_conjugation().ok();
        let classes: Vec<Value> = cc
            .representatives
            .iter()
            .zip(&cc.classes)
            .map(|(&r, c)| json!({"representative": self.group.label(r), "size": c.len()}))
            .collect();
        let chars: Vec<Value> = self
            .characters
            .iter()
            .zip(&self.names)
            .zip(&self.witnesses)
            .map(|((c, name), w)| {
                let values: Vec<CyclotomicLiteral> = c
                    .class_values()
                    .iter()
                    .map(|v| CyclotomicLiteral::from_cyclotomic(&v.minimal()))
                    .collect();
                let gens: Vec<String> = w.subgroup.as_group().0.generator_names().to_vec();
                json!({
                    "name": name,
                    "degree": c.degree(),
                    "odd": j.map(|j| c.is_odd(j)),
                    "values": values,
                    "induced_from": gens,
                })
            })
            .collect();
        json!({
            "group": self.group.name(),
            "order": self.group.order(),
            "classes": classes,
            "characters": chars,
        })
    }
}

/// `±zeta_m^k` when the value is a signed root of unity, else the power-basis form.
pub(crate) fn pretty_value(x: &Cyclotomic) -> String {
    if let Some(q) = x.as_rational() {
        return crate::exactnum::rational_to_string(&q);
    }
    let m = x.conductor();
    let neg = -x;
    for k in 1..m {
        let z = Cyclotomic::zeta_pow(m, k as i64);
        let body = if k == 1 { format!("ζ{m}") } else { format!("ζ{m}^{k}") };
        if *x == z {
            return body;
        }
        if neg == z {
            return format!("-{body}");
        }
    }
    x.to_string()
}

/// Map `(s, k) -> y^s x^k` for the dihedral and quaternion presentations.
fn yx_index(g: &FiniteGroup, half: usize) -> Result<Vec<(usize, usize)>> {
    let x = g.eval_word("x")?;
    let y = g.eval_word("y")?;
    let mut out = vec![(usize::MAX, usize::MAX); g.order()];
    for s in 0..2 {
        for k in 0..half {
            let e = g.mul(g.pow(y, s as i64), g.pow(x, k as i64));
            out[e] = (s, k);
        }
    }
    Ok(out)
}

fn rows_from(
    g: &Arc<FiniteGroup>,
    specs: Vec<(String, Box<dyn Fn(usize, usize) -> Cyclotomic>)>,
    half: usize,
) -> Result<Vec<(String, Character)>> {
    let coords = yx_index(g, half)?;
    specs
        .into_iter()
        .map(|(name, f)| {
            let values = coords.iter().map(|&(s, k)| f(s, k)).collect();
            Ok((name, Character::new(g.clone(), values)?))
        })
        .collect()
}

fn sign(k: usize) -> Cyclotomic {
    Cyclotomic::from_int(if k % 2 == 0 { 1 } else { -1 })
}

/// `w^k + w^{-k}` on `x^k`, zero on `y x^k`.
fn two_dim(w: Cyclotomic) -> Box<dyn Fn(usize, usize) -> Cyclotomic> {
    Box::new(move |s, k| {
        if s == 1 {
            Cyclotomic::zero(1)
        } else {
            let a = w.pow(k as i64).unwrap();
            let b = w.pow(-(k as i64)).unwrap();
            &a + &b
        }
    })
}

fn d4p_rows(g: &Arc<FiniteGroup>, p: usize) -> Result<Vec<(String, Character)>> {
    let mut specs: Vec<(String, Box<dyn Fn(usize, usize) -> Cyclotomic>)> = vec![
        ("χ1".into(), Box::new(|_, _| Cyclotomic::one())),
        ("χ2".into(), Box::new(|s, _| sign(s))),
        ("χ3".into(), Box::new(|_, k| sign(k))),
        ("χ4".into(), Box::new(|s, k| sign(k + s))),
    ];
    // phi^m(x^2) = zeta_p^m and phi^m(x^p) = -1, so phi^m(x) = -zeta_p^{m(p+1)/2}
    let half = (p - 1) / 2;
    for m in 1..=half {
        let w = -Cyclotomic::zeta_pow(p, (m * (p + 1) / 2) as i64);
        specs.push((format!("χ{}", m + 4), two_dim(w)));
    }
    for m in 1..=half {
        let w = Cyclotomic::zeta_pow(p, (m * (p + 1) / 2) as i64);
        specs.push((format!("χ{}", m + half + 4), two_dim(w)));
    }
    rows_from(g, specs, 2 * p)
}

fn quaternion_rows(g: &Arc<FiniteGroup>, n: u32) -> Result<Vec<(String, Character)>> {
    let order_x = 1usize << (n + 1);
    let mut specs: Vec<(String, Box<dyn Fn(usize, usize) -> Cyclotomic>)> = Vec::new();
    for (a, b) in [(0usize, 0usize), (0, 1), (1, 0), (1, 1)] {
        specs.push((
            String::new(),
            Box::new(move |s, k| sign(a * k + b * s)),
        ));
    }
    let odd = (1..order_x / 2).step_by(2);
    let even = (2..order_x / 2).step_by(2);
    for m in odd.chain(even) {
        specs.push((String::new(), two_dim(Cyclotomic::zeta_pow(order_x, m as i64))));
    }
    for (i, s) in specs.iter_mut().enumerate() {
        s.0 = format!("χ{}", i + 1);
    }
    rows_from(g, specs, order_x)
}

fn rows_from_columns(
    g: &Arc<FiniteGroup>,
    columns: &[&str],
    rows: Vec<Vec<Cyclotomic>>,
) -> Result<Vec<(String, Character)>> {
    let class_ids: Vec<usize> = columns
        .iter()
        .map(|w| g.eval_word(w).map(|e| g.class_of(e)))
        .collect::<Result<_>>()?;
    let mut sorted = class_ids.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != g.num_classes() || class_ids.len() != g.num_classes() {
        return Err(Error::Inconsistent("column words do not hit every class once".into()));
    }
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut by_class = vec![Cyclotomic::zero(1); g.num_classes()];
            for (v, &c) in row.into_iter().zip(&class_ids) {
                by_class[c] = v;
            }
            Ok((format!("χ{}", i + 1), Character::from_class_values(g.clone(), &by_class)?))
        })
        .collect()
}

fn ints(v: &[i64]) -> Vec<Cyclotomic> {
    v.iter().map(|&a| Cyclotomic::from_int(a)).collect()
}

fn d12_rows(g: &Arc<FiniteGroup>) -> Result<Vec<(String, Character)>> {
    let rows = vec![
        ints(&[1, 1, 1, 1, 1, 1]),
        ints(&[1, 1, 1, -1, -1, -1]),
        ints(&[1, 1, -1, 1, 1, -1]),
        ints(&[1, 1, -1, -1, -1, 1]),
        ints(&[2, -1, 0, 2, -1, 0]),
        ints(&[2, -1, 0, -2, 1, 0]),
    ];
    rows_from_columns(g, &["1", "σ", "τ", "j", "σj", "τj"], rows)
}

fn z2a4_rows(g: &Arc<FiniteGroup>) -> Result<Vec<(String, Character)>> {
    let one = Cyclotomic::one();
    let w = Cyclotomic::zeta(3);
    let w2 = Cyclotomic::zeta_pow(3, 2);
    let lin = |a: &Cyclotomic, b: &Cyclotomic, s: i64| {
        let s = Cyclotomic::from_int(s);
        vec![
            one.clone(),
            one.clone(),
            a.clone(),
            b.clone(),
            s.clone(),
            s.clone(),
            &s * a,
            &s * b,
        ]
    };
    let rows = vec![
        lin(&one, &one, 1),
        lin(&one, &one, -1),
        lin(&w, &w2, 1),
        lin(&w, &w2, -1),
        lin(&w2, &w, 1),
        lin(&w2, &w, -1),
        ints(&[3, -1, 0, 0, 3, -1, 0, 0]),
        ints(&[3, -1, 0, 0, -3, 1, 0, 0]),
    ];
    rows_from_columns(g, &["1", "x", "yx", "y^2x", "j", "jx", "jyx", "jy^2x"], rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use num_traits::{One, Zero};

    fn orthogonality(t: &CharacterTable) {
        for (a, ca) in t.characters().iter().enumerate() {
            for (b, cb) in t.characters().iter().enumerate() {
                let ip = ca.inner_product(cb).unwrap();
                assert_eq!(ip, if a == b { Rational::one() } else { Rational::zero() });
            }
        }
        let g = t.group();
        let cc = g.conjugacy_classes();
        for (i, &r) in cc.representatives.iter().enumerate() {
            for (k, &s) in cc.representatives.iter().enumerate() {
                let sum = t.characters().iter().fold(Cyclotomic::zero(1), |acc, c| {
                    acc + c.value(r) * &c.value(s).conj()
                });
                let expect = if i == k { (g.order() / cc.classes[i].len()) as i64 } else { 0 };
                assert_eq!(sum, Cyclotomic::from_int(expect));
            }
        }
    }

    #[test]
    fn builtin_tables_are_orthogonal() {
        for fam in [
            Family::D4p(3),
            Family::D4p(5),
            Family::Quaternion(1),
            Family::Quaternion(2),
            Family::Z2A4,
            Family::D12Example,
            Family::Product(5),
        ] {
            orthogonality(&CharacterTable::builtin(fam).unwrap());
        }
    }

    #[test]
    fn table1_values() {
        let t = CharacterTable::builtin(Family::D4p(5)).unwrap();
        let g = t.group();
        let x = g.eval_word("x").unwrap();
        for k in 0..10 {
            let v = t.character(2).value(g.pow(x, k));
            assert_eq!(v, &Cyclotomic::from_int(if k % 2 == 0 { 1 } else { -1 }));
        }
        let odd = t.odd_indices().unwrap();
        let odd_two_dim = odd.iter().filter(|&&i| t.character(i).degree() == 2).count();
        assert_eq!(odd_two_dim, 2);
        assert_eq!(t.len(), 8);
    }

    #[test]
    fn table3_rows_and_parity() {
        let t = CharacterTable::builtin(Family::Z2A4).unwrap();
        let g = t.group();
        let cols = ["1", "x", "yx", "y^2x", "j", "jx", "jyx", "jy^2x"];
        let chi7: Vec<Cyclotomic> = cols
            .iter()
            .map(|w| t.character(6).value(g.eval_word(w).unwrap()).clone())
            .collect();
        assert_eq!(chi7, ints(&[3, -1, 0, 0, 3, -1, 0, 0]));
        assert_eq!(t.odd_indices().unwrap(), [1, 3, 5, 7]);
    }

    #[test]
    fn table2_parity_and_text() {
        let t = CharacterTable::builtin(Family::D12Example).unwrap();
        assert_eq!(t.odd_indices().unwrap(), [1, 3, 5]);
        let text = t.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "    {1}  {σ}  {τ}  {j}  {σj}  {τj}");
        assert_eq!(lines[6], "χ6    2   -1    0   -2     1     0");
    }

    #[test]
    fn pretty_roots_of_unity() {
        assert_eq!(pretty_value(&Cyclotomic::zeta_pow(3, 2)), "ζ3^2");
        assert_eq!(pretty_value(&-Cyclotomic::zeta(3)), "-ζ3");
        assert_eq!(pretty_value(&Cyclotomic::zeta(6)), "-ζ3^2");
        let s = &Cyclotomic::zeta(8) + &Cyclotomic::zeta_pow(8, 7);
        assert_eq!(pretty_value(&s), "ζ8-ζ8^3");
    }

    #[test]
    fn rejects_non_prime_parameters() {
        assert!(Family::D4p(9).group().is_err());
        assert!(Family::Product(2).group().is_err());
    }
}
