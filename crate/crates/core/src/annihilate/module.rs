use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::character::same_group;
use crate::group::FiniteGroup;
use crate::groupring::GroupRingElement;
use crate::stickelberger::GroupSpec;
use crate::{Error, Result};

/// File form: `{"group": {...}, "cyclic_orders": [48], "action": {"σ": [[1]], ...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MockClassModuleFile {
    pub group: GroupSpec,
    pub cyclic_orders: Vec<u64>,
    /// Integer matrix per generator name, acting on column vectors.
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

/// `Z/n_1 + ... + Z/n_r` with a left `G`-action by integer matrices.
#[derive(Clone, Debug)]
pub struct MockClassModule {
    group: Arc<FiniteGroup>,
    orders: Vec<u64>,
    /// `action[g]` with row `i` reduced modulo `orders[i]`.
    action: Vec<Vec<Vec<u64>>>,
}

/// Outcome of `annihilates`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub element: String,
    pub annihilates: bool,
    /// A generator `v` with `alpha v != 0`.
    pub witness: Option<Vec<u64>>,
}

impl fmt::Display for AnnihilationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{} annihilates the module", self.element),
            Some(w) => write!(f, "{} does not annihilate the module: witness {:?}", self.element, w),
        }
    }
}

fn reduce(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

fn mat_mul(orders: &[u64], a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let r = orders.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let s: i128 = (0..r).map(|k| a[i][k] as i128 * b[k][j] as i128).sum();
                    reduce(s, orders[i])
                })
                .collect()
        })
        .collect()
}

impl MockClassModule {
    /// Generate the action from one matrix per group generator, checking
    /// that it extends to a homomorphism `G -> Aut(M)`.
    pub fn new(group: &Arc<FiniteGroup>, orders: Vec<u64>, generators: &[Vec<Vec<i64>>]) -> Result<Self> {
        let r = orders.len();
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::InvalidModule("cyclic orders must be positive".into()));
        }
        if generators.len() != group.generators().len() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for {} generators",
                generators.len(),
                group.generators().len()
            )));
        }
        let mut gens = Vec::new();
        for m in generators {
            if m.len() != r || m.iter().any(|row| row.len() != r) {
                return Err(Error::InvalidModule(format!("action matrices must be {r} x {r}")));
            }
            let red: Vec<Vec<u64>> = m
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().map(|&v| reduce(v as i128, orders[i])).collect())
                .collect();
            // well defined on Z/n_j: n_j m_ij = 0 mod n_i
            for i in 0..r {
                for j in 0..r {
                    if (red[i][j] as u128 * orders[j] as u128) % orders[i] as u128 != 0 {
                        return Err(Error::InvalidModule(format!("entry ({i},{j}) is not well defined")));
                    }
                }
            }
            gens.push(red);
        }
        let identity: Vec<Vec<u64>> = (0..r)
            .map(|i| (0..r).map(|j| u64::from(i == j) % orders[i]).collect())
            .collect();
        let mut action: Vec<Option<Vec<Vec<u64>>>> = vec![None; group.order()];
        action[group.identity()] = Some(identity);
        let mut queue = vec![group.identity()];
        while let Some(g) = queue.pop() {
            let mg = action[g].clone().expect("visited");
            for (s, ms) in group.generators().iter().zip(&gens) {
                let h = group.mul(*s, g);
                let mh = mat_mul(&orders, ms, &mg);
                match &action[h] {
                    Some(existing) if *existing != mh => {
                        return Err(Error::InvalidModule(format!(
                            "action is not a homomorphism at {}",
                            group.label(h)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        action[h] = Some(mh);
                        queue.push(h);
                    }
                }
            }
        }
        Ok(MockClassModule {
            group: group.clone(),
            orders,
            action: action.into_iter().map(|m| m.expect("generators generate")).collect(),
        })
    }

    /// `Z/n` on which each generator acts by the given scalar.
    pub fn cyclic(group: &Arc<FiniteGroup>, n: u64, scalars: &[i64]) -> Result<Self> {
        let gens: Vec<Vec<Vec<i64>>> = scalars.iter().map(|&s| vec![vec![s]]).collect();
        Self::new(group, vec![n], &gens)
    }

    /// Trivial action.
    pub fn trivial(group: &Arc<FiniteGroup>, orders: Vec<u64>) -> Result<Self> {
        let r = orders.len();
        let id: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let gens = vec![id; group.generators().len()];
        Self::new(group, orders, &gens)
    }

    pub fn from_file(raw: &MockClassModuleFile) -> Result<Self> {
        let group = raw.group.family()?.group()?;
        let mut gens = Vec::new();
        for name in group.generator_names() {
            gens.push(
                raw.action
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::InvalidModule(format!("no action given for {name}")))?,
            );
        }
        if let Some(extra) = raw.action.keys().find(|k| !group.generator_names().contains(k)) {
            return Err(Error::InvalidModule(format!("{extra} is not a generator")));
        }
        Self::new(&group, raw.cyclic_orders.clone(), &gens)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MockClassModuleFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("module: {e}")))?;
        Self::from_file(&raw)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// The matrix of `g`.
    pub fn matrix(&self, g: usize) -> &[Vec<u64>] {
        &self.action[g]
    }

    /// The `i`-th standard generator.
    pub fn basis(&self, i: usize) -> Vec<u64> {
        (0..self.rank()).map(|k| u64::from(k == i) % self.orders[k]).collect()
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<u64> {
        v.iter().zip(&self.orders).map(|(&x, &n)| reduce(x as i128, n)).collect()
    }

    /// `g v`.
    pub fn act_element(&self, g: usize, v: &[u64]) -> Vec<u64> {
        let m = &self.action[g];
        (0..self.rank())
            .map(|i| {
                let s: i128 = (0..self.rank()).map(|k| m[i][k] as i128 * v[k] as i128).sum();
                reduce(s, self.orders[i])
            })
            .collect()
    }

    /// `alpha v`; a rational coefficient `a/b` acts through `b^{-1}` modulo
    /// each `n_i`.
    pub fn act(&self, alpha: &GroupRingElement, v: &[u64]) -> Result<Vec<u64>> {
        if !same_group(alpha.group(), &self.group) {
            return Err(Error::InvalidModule("element over a different group".into()));
        }
        if v.len() != self.rank() {
            return Err(Error::InvalidModule(format!("vector of length {} in a module of rank {}", v.len(), self.rank())));
        }
        let coeffs = alpha
            .as_rationals()
            .ok_or_else(|| Error::InvalidModule("coefficients must be rational".into()))?;
        let mut out = vec![BigInt::zero(); self.rank()];
        for (g, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gv = self.act_element(g, v);
            for (i, &n) in self.orders.iter().enumerate() {
                let n_big = BigInt::from(n);
                let inv = mod_inverse(c.denom(), &n_big).ok_or_else(|| Error::NonInvertibleDenominator {
                    denominator: c.denom().to_string(),
                    modulus: n,
                })?;
                out[i] = (&out[i] + c.numer() * inv * BigInt::from(gv[i])).mod_floor(&n_big);
            }
        }
        Ok(out.into_iter().map(|x| x.to_u64().expect("reduced")).collect())
    }

    /// Whether `alpha` kills every standard generator.
    pub fn annihilates(&self, alpha: &GroupRingElement) -> Result<AnnihilationReport> {
        let images = (0..self.rank())
            .into_par_iter()
            .map(|i| {
                let v = self.basis(i);
                self.act(alpha, &v).map(|w| (v, w))
            })
            .collect::<Result<Vec<_>>>()?;
        let witness = images.into_iter().find(|(_, w)| w.iter().any(|&x| x != 0)).map(|(v, _)| v);
        Ok(AnnihilationReport {
            element: alpha.to_string(),
            annihilates: witness.is_none(),
            witness,
        })
    }

    pub fn direct_sum(&self, other: &MockClassModule) -> Result<MockClassModule> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::InvalidModule("modules over different groups".into()));
        }
        let (a, b) = (self.rank(), other.rank());
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let action = (0..self.group.order())
            .map(|g| {
                let mut m = vec![vec![0u64; a + b]; a + b];
                for i in 0..a {
                    m[i][..a].copy_from_slice(&self.action[g][i]);
                }
                for i in 0..b {
                    m[a + i][a..].copy_from_slice(&other.action[g][i]);
                }
                m
            })
            .collect();
        Ok(MockClassModule {
            group: self.group.clone(),
            orders,
            action,
        })
    }
}

fn mod_inverse(d: &BigInt, n: &BigInt) -> Option<BigInt> {
    if n.is_one() {
        return Some(BigInt::zero());
    }
    let e = d.extended_gcd(n);
    e.gcd.is_one().then(|| e.x.mod_floor(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Cyclotomic, Rational};
    use crate::group::{cyclic, z2_times_s3};
    use proptest::prelude::*;

    #[test]
    fn scalar_annihilation_examples() {
        let g = cyclic(1, "e").unwrap();
        let m = MockClassModule::trivial(&g, vec![8, 2]).unwrap();
        let eight = GroupRingElement::one(&g).scale(&Cyclotomic::from_int(8));
        assert!(m.annihilates(&eight).unwrap().annihilates);
        let z2 = MockClassModule::trivial(&g, vec![2]).unwrap();
        let r = z2.annihilates(&GroupRingElement::one(&g)).unwrap();
        assert!(!r.annihilates);
        assert_eq!(r.witness, Some(vec![1]));
    }

    #[test]
    fn norm_and_minus_examples() {
        let g = z2_times_s3().unwrap();
        let m = MockClassModule::trivial(&g, vec![100]).unwrap();
        let norm = GroupRingElement::norm_of(&g.whole());
        assert_eq!(m.act(&norm, &[1]).unwrap(), vec![12]);
        assert_eq!(m.act(&GroupRingElement::one(&g), &[37]).unwrap(), vec![37]);
        let j = g.eval_word("j").unwrap();
        let minus = &GroupRingElement::one(&g) - &GroupRingElement::basis(&g, j);
        assert!(m.annihilates(&minus).unwrap().annihilates);
    }

    #[test]
    fn denominators_need_inverses() {
        let g = cyclic(2, "j").unwrap();
        let m = MockClassModule::cyclic(&g, 7, &[-1]).unwrap();
        let half = GroupRingElement::from_rationals(&g, &[Rational::new(1.into(), 2.into()), Rational::zero()]).unwrap();
        assert_eq!(m.act(&half, &[1]).unwrap(), vec![4]);
        let m8 = MockClassModule::cyclic(&g, 8, &[-1]).unwrap();
        assert!(matches!(m8.act(&half, &[1]), Err(Error::NonInvertibleDenominator { .. })));
    }

    #[test]
    fn non_homomorphisms_are_rejected() {
        let g = cyclic(2, "j").unwrap();
        assert!(MockClassModule::cyclic(&g, 7, &[2]).is_err());
        assert!(MockClassModule::cyclic(&g, 7, &[-1]).is_ok());
        let g3 = cyclic(3, "s").unwrap();
        assert!(MockClassModule::cyclic(&g3, 7, &[2]).is_ok());
        assert!(MockClassModule::new(&g, vec![4, 2], &[vec![vec![1, 1], vec![0, 1]]]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let text = r#"{"group": {"family": "table"}, "cyclic_orders": [48],
            "action": {"σ": [[1]], "τ": [[-1]], "j": [[-1]]}}"#;
        let m = MockClassModule::from_json(text).unwrap();
        let g = m.group().clone();
        assert_eq!(m.matrix(g.eval_word("στj").unwrap()), &[vec![1]]);
        let bad = text.replace("\"j\"", "\"k\"");
        assert!(MockClassModule::from_json(&bad).is_err());
    }

    fn small_element(g: &Arc<FiniteGroup>) -> impl Strategy<Value = GroupRingElement> {
        let g = g.clone();
        prop::collection::vec(-3i64..=3, g.order())
            .prop_map(move |v| GroupRingElement::from_coeffs(&g, v.into_iter().map(Cyclotomic::from_int).collect()).unwrap())
    }

    fn module() -> MockClassModule {
        let g = z2_times_s3().unwrap();
        let names = g.generator_names().to_vec();
        // Z/9 + Z/3 with sigma, tau acting by a permutation-like action and j by -1
        let gens: Vec<Vec<Vec<i64>>> = names
            .iter()
            .map(|n| match n.as_str() {
                "j" => vec![vec![-1, 0], vec![0, -1]],
                "σ" => vec![vec![1, 0], vec![0, 1]],
                _ => vec![vec![-1, 0], vec![0, 1]],
            })
            .collect();
        MockClassModule::new(&g, vec![9, 3], &gens).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn action_is_multiplicative(
            a in small_element(&z2_times_s3().unwrap()),
            b in small_element(&z2_times_s3().unwrap()),
            v0 in 0i64..9, v1 in 0i64..3,
        ) {
            let m = module();
            let g = m.group().clone();
            let a = GroupRingElement::from_coeffs(&g, a.coeffs().to_vec()).unwrap();
            let b = GroupRingElement::from_coeffs(&g, b.coeffs().to_vec()).unwrap();
            let v = vec![v0 as u64, v1 as u64];
            let ab = &a * &b;
            prop_assert_eq!(m.act(&ab, &v).unwrap(), m.act(&a, &m.act(&b, &v).unwrap()).unwrap());
        }

        #[test]
        fn annihilation_passes_to_direct_sums(a in small_element(&z2_times_s3().unwrap())) {
            let m = module();
            let g = m.group().clone();
            let a = GroupRingElement::from_coeffs(&g, a.coeffs().to_vec()).unwrap();
            let n = MockClassModule::trivial(&g, vec![4]).unwrap();
            let s = m.direct_sum(&n).unwrap();
            let both = m.annihilates(&a).unwrap().annihilates && n.annihilates(&a).unwrap().annihilates;
            prop_assert_eq!(s.annihilates(&a).unwrap().annihilates, both);
        }
    }
}
