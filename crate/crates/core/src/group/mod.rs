//! Finite groups as explicit multiplication tables.

mod families;
mod iso;
mod text;
pub(crate) mod word;

use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub use families::{
    cyclic, dihedral, direct_product, generalized_quaternion, z2_times_a4, z2_times_s3,
    z2_times_dihedral,
};
pub use iso::find_isomorphism;

/// Upper bound on `|G|` for brute-force subgroup enumeration.
pub const SUBGROUP_BOUND: usize = 1000;

/// A finite group given by its multiplication table. Element 0 is the identity.
#[derive(Debug)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<usize>,
    generator_names: Vec<String>,
    element_orders: Vec<usize>,
    classes: OnceLock<ConjClassPartition>,
}

/// Conjugacy classes ordered by their smallest element; that element is the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClassPartition {
    pub classes: Vec<Vec<usize>>,
    pub representatives: Vec<usize>,
    pub class_of: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    as_group: Arc<OnceLock<(Arc<FiniteGroup>, Vec<usize>)>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl FiniteGroup {
    /// Validate a table and build the group. `labels` and `generator_names`
    /// may be empty, in which case labels `g<i>` and a greedy generating set are used.
    pub fn from_table(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        labels: Vec<String>,
        generators: Vec<usize>,
        generator_names: Vec<String>,
    ) -> Result<Arc<Self>> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square over 0..n".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row[0] != i || table[0][i] != i {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| table[a][b] == 0) else {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            };
            if table[b][a] != 0 {
                return Err(Error::InvalidGroup(format!("inverse of {a} is one-sided")));
            }
            inverse[a] = b;
        }
        check_associative(&table)?;
        let labels = if labels.is_empty() {
            (0..n).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect()
        } else if labels.len() == n {
            labels
        } else {
            return Err(Error::InvalidGroup("label count differs from order".into()));
        };
        let element_orders = (0..n)
            .map(|a| {
                let mut k = 1;
                let mut x = a;
                while x != 0 {
                    x = table[x][a];
                    k += 1;
                }
                k
            })
            .collect();
        let mut g = FiniteGroup {
            name: name.into(),
            table,
            inverse,
            labels,
            generators: Vec::new(),
            generator_names: Vec::new(),
            element_orders,
            classes: OnceLock::new(),
        };
        if generators.is_empty() {
            g.generators = g.greedy_generators(&(0..n).collect::<Vec<_>>());
            g.generator_names = g.generators.iter().map(|&x| g.labels[x].clone()).collect();
        } else {
            if generators.iter().any(|&x| x >= n) || generator_names.len() != generators.len() {
                return Err(Error::InvalidGroup("bad generator list".into()));
            }
            if g.closure(&generators).len() != n {
                return Err(Error::InvalidGroup("generators do not generate".into()));
            }
            g.generators = generators;
            g.generator_names = generator_names;
        }
        Ok(Arc::new(g))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse[a] } else { a };
        let e = k.unsigned_abs() % self.element_orders[a] as u64;
        (0..e).fold(0, |acc, _| self.table[acc][base])
    }

    /// `g h g^{-1}`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.table[self.table[g][h]][self.inverse[g]]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        self.element_orders.iter().fold(1, |acc, &o| acc.lcm(&o))
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Closure of a set under the law, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for &g in gens {
                let v = self.table[u][g];
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    fn greedy_generators(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &m in members {
            if span.binary_search(&m).is_err() {
                gens.push(m);
                span = self.closure(&gens);
            }
            if span.len() == members.len() {
                break;
            }
        }
        gens
    }

    pub fn conjugacy_classes(&self) -> &ConjClassPartition {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for a in 0..n {
                if class_of[a] != usize::MAX {
                    continue;
                }
                let mut cls: Vec<usize> = (0..n).map(|g| self.conjugate(g, a)).collect();
                cls.sort_unstable();
                cls.dedup();
                for &c in &cls {
                    class_of[c] = classes.len();
                }
                classes.push(cls);
            }
            let representatives = classes.iter().map(|c| c[0]).collect();
            ConjClassPartition {
                classes,
                representatives,
                class_of,
            }
        })
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.conjugacy_classes().class_of[a]
    }

    pub fn num_classes(&self) -> usize {
        self.conjugacy_classes().classes.len()
    }

    pub fn is_central(&self, a: usize) -> bool {
        (0..self.order()).all(|g| self.table[g][a] == self.table[a][g])
    }

    pub fn center(self: &Arc<Self>) -> Subgroup {
        let members = (0..self.order()).filter(|&a| self.is_central(a)).collect();
        Subgroup::new(self.clone(), members)
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::new(self.clone(), self.elements().collect())
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup::new(self.clone(), vec![0])
    }

    pub fn subgroup_generated(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        Subgroup::new(self.clone(), self.closure(gens))
    }

    /// Build a subgroup from an explicit member list, checking closure.
    pub fn subgroup_from_members(self: &Arc<Self>, members: &[usize]) -> Result<Subgroup> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.iter().any(|&x| x >= self.order()) || m.first() != Some(&0) {
            return Err(Error::InvalidGroup("subgroup must contain the identity".into()));
        }
        let set: HashSet<usize> = m.iter().copied().collect();
        for &a in &m {
            for &b in &m {
                if !set.contains(&self.table[a][b]) {
                    return Err(Error::InvalidGroup("member set is not closed".into()));
                }
            }
        }
        Ok(Subgroup::new(self.clone(), m))
    }

    /// All subgroups, sorted by order and then by member list.
    pub fn subgroups(self: &Arc<Self>) -> Result<Vec<Subgroup>> {
        let n = self.order();
        if n > SUBGROUP_BOUND {
            return Err(Error::TooLarge {
                order: n,
                bound: SUBGROUP_BOUND,
            });
        }
        let mut cyclic: Vec<(Vec<usize>, usize)> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for a in 0..n {
            let c = self.closure(&[a]);
            if seen.insert(c.clone()) {
                cyclic.push((c, a));
            }
        }
        let mut all: Vec<Vec<usize>> = cyclic.iter().map(|(c, _)| c.clone()).collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                let gens = self.greedy_generators(s);
                for (c, gen) in &cyclic {
                    if is_subset(c, s) {
                        continue;
                    }
                    let mut g2 = gens.clone();
                    g2.push(*gen);
                    let joined = self.closure(&g2);
                    if seen.insert(joined.clone()) {
                        all.push(joined.clone());
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(all
            .into_iter()
            .map(|members| Subgroup::new(self.clone(), members))
            .collect())
    }

    /// The unique central element of order 2.
    pub fn complex_conjugation(&self) -> Result<usize> {
        let inv: Vec<usize> = (1..self.order())
            .filter(|&a| self.element_orders[a] == 2 && self.is_central(a))
            .collect();
        if inv.len() == 1 {
            Ok(inv[0])
        } else {
            Err(Error::NoComplexConjugation { found: inv.len() })
        }
    }

    /// Quotient by a normal subgroup, with the projection as an index map.
    pub fn quotient(self: &Arc<Self>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
        if !n.is_normal() {
            return Err(Error::NotNormal);
        }
        let size = self.order();
        let mut coset_of = vec![usize::MAX; size];
        let mut reps = Vec::new();
        for g in 0..size {
            if coset_of[g] != usize::MAX {
                continue;
            }
            for &h in &n.members {
                coset_of[self.table[g][h]] = reps.len();
            }
            reps.push(g);
        }
        let table: Vec<Vec<usize>> = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.table[a][b]]).collect())
            .collect();
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        let mut gens = Vec::new();
        let mut names = Vec::new();
        for (&g, name) in self.generators.iter().zip(&self.generator_names) {
            let c = coset_of[g];
            if c != 0 && !gens.contains(&c) {
                gens.push(c);
                names.push(name.clone());
            }
        }
        let q = FiniteGroup::from_table(format!("{}/N", self.name), table, labels, gens, names)?;
        Ok((q, coset_of))
    }

    /// `G / [G, G]` with its projection.
    pub fn abelianization(self: &Arc<Self>) -> Result<(Arc<FiniteGroup>, Vec<usize>)> {
        let comm = self.commutator_subgroup();
        self.quotient(&comm)
    }

    pub fn commutator_subgroup(self: &Arc<Self>) -> Subgroup {
        let n = self.order();
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.table[self.table[a][b]][self.table[self.inverse[a]][self.inverse[b]]];
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms)
    }

    /// Associativity check on a fixed pseudo-random sample of triples.
    pub fn verify_sampled(&self, samples: usize, seed: u64) -> bool {
        let n = self.order();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]]
        })
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Exhaustive for `n <= 64`, 10^5 sampled triples above.
fn check_associative(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    let bad = if n <= 64 {
        (0..n).any(|a| {
            (0..n).any(|b| (0..n).any(|c| table[table[a][b]][c] != table[a][table[b][c]]))
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..100_000).any(|_| {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            table[table[a][b]][c] != table[a][table[b][c]]
        })
    };
    if bad {
        Err(Error::InvalidGroup("table is not associative".into()))
    } else {
        Ok(())
    }
}

impl Subgroup {
    fn new(parent: Arc<FiniteGroup>, members: Vec<usize>) -> Self {
        Subgroup {
            parent,
            members,
            as_group: Arc::new(OnceLock::new()),
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        self.members
            .iter()
            .all(|&h| g.elements().all(|x| self.contains(g.conjugate(x, h))))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        is_subset(&self.members, &other.members)
    }

    /// Position of an element in the member list.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    /// Left coset representatives, each the smallest element of its coset `tH`.
    pub fn left_transversal(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut covered = vec![false; g.order()];
        let mut reps = Vec::new();
        for t in g.elements() {
            if covered[t] {
                continue;
            }
            for &h in &self.members {
                covered[g.mul(t, h)] = true;
            }
            reps.push(t);
        }
        reps
    }

    /// The subgroup as a group in its own right, with the embedding into the
    /// parent (`embed[i]` is the parent index of element `i`). Elements are
    /// enumerated in shortlex order over a greedy generating set.
    pub fn as_group(&self) -> (Arc<FiniteGroup>, Vec<usize>) {
        self.as_group.get_or_init(|| self.build_group()).clone()
    }

    fn build_group(&self) -> (Arc<FiniteGroup>, Vec<usize>) {
        let g = &self.parent;
        let gens = g.greedy_generators(&self.members);
        let mut order = vec![0usize];
        let mut pos = std::collections::HashMap::from([(0usize, 0usize)]);
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &s in &gens {
                let v = g.mul(u, s);
                if !pos.contains_key(&v) {
                    pos.insert(v, order.len());
                    order.push(v);
                }
            }
            i += 1;
        }
        let table = order
            .iter()
            .map(|&a| order.iter().map(|&b| pos[&g.mul(a, b)]).collect())
            .collect();
        let labels = order.iter().map(|&a| g.labels[a].clone()).collect();
        let gen_idx = gens.iter().map(|s| pos[s]).collect();
        let gen_names = gens.iter().map(|&s| g.labels[s].clone()).collect();
        let name = format!("{}<{}>", g.name, gens.iter().map(|&s| g.labels[s].as_str()).collect::<Vec<_>>().join(","));
        let h = FiniteGroup::from_table(name, table, labels, gen_idx, gen_names)
            .expect("closed subset of a group is a group");
        (h, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_12_basics() {
        let g = dihedral(12).unwrap();
        assert_eq!(g.order(), 12);
        let z = g.center();
        assert_eq!(z.order(), 2);
        let j = g.complex_conjugation().unwrap();
        assert_eq!(g.label(j), "x^3");
        assert_eq!(g.element_order(g.eval_word("x").unwrap()), 6);
        assert!(dihedral(4).unwrap().is_abelian());
        assert!(dihedral(5).is_err());
    }

    #[test]
    fn center_by_brute_force() {
        let g = dihedral(20).unwrap();
        let brute: Vec<usize> = g
            .elements()
            .filter(|&a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a)))
            .collect();
        assert_eq!(g.center().members(), &brute[..]);
        let labels: Vec<&str> = brute.iter().map(|&a| g.label(a)).collect();
        assert_eq!(labels, ["1", "x^5"]);
    }

    #[test]
    fn quaternion_structure() {
        let q8 = generalized_quaternion(1).unwrap();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.num_classes(), 5);
        let subs = q8.subgroups().unwrap();
        assert_eq!(subs.len(), 6);
        assert!(subs.iter().all(Subgroup::is_normal));
        assert_eq!(q8.label(q8.complex_conjugation().unwrap()), "x^2");
        let q16 = generalized_quaternion(2).unwrap();
        assert_eq!(q16.order(), 16);
        assert_eq!(q16.element_order(q16.eval_word("x").unwrap()), 8);
        let center: Vec<&str> = q16.center().members().iter().map(|&a| q16.label(a)).collect();
        assert_eq!(center, ["1", "x^4"]);
    }

    #[test]
    fn quaternion_quotient_is_dihedral() {
        for n in 1..=3 {
            let q = generalized_quaternion(n).unwrap();
            let j = q.complex_conjugation().unwrap();
            let (d, proj) = q.quotient(&q.subgroup_generated(&[j])).unwrap();
            assert_eq!(d.order(), 1 << (n + 1));
            assert_eq!(proj[j], 0);
            assert!(find_isomorphism(&d, &dihedral(1 << (n + 1)).unwrap()).is_some());
        }
    }

    #[test]
    fn z2_a4_structure() {
        let g = z2_times_a4().unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.num_classes(), 8);
        assert_eq!(g.center().order(), 2);
        let (ab, _) = g.abelianization().unwrap();
        assert_eq!(ab.order(), 6);
        assert!(ab.is_abelian());
        // the A4 factor is generated by x and y
        let a4 = g.subgroup_generated(&[g.eval_word("x").unwrap(), g.eval_word("y").unwrap()]);
        assert_eq!(a4.order(), 12);
        let (a4g, _) = a4.as_group();
        let (ab4, _) = a4g.abelianization().unwrap();
        assert_eq!(ab4.order(), 3);
        assert_eq!(a4g.commutator_subgroup().order(), 4);
    }

    #[test]
    fn class_sizes_divide_order() {
        for g in [
            dihedral(12).unwrap(),
            dihedral(20).unwrap(),
            generalized_quaternion(2).unwrap(),
            z2_times_a4().unwrap(),
            z2_times_s3().unwrap(),
            z2_times_dihedral(5).unwrap(),
        ] {
            let cc = g.conjugacy_classes();
            let total: usize = cc.classes.iter().map(Vec::len).sum();
            assert_eq!(total, g.order());
            assert!(cc.classes.iter().all(|c| g.order() % c.len() == 0));
        }
    }

    fn brute_force_subgroup_count(g: &FiniteGroup) -> usize {
        // every subgroup of these groups is generated by at most 3 elements
        let n = g.order();
        let mut set = HashSet::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    set.insert(g.closure(&[a, b, c]));
                }
            }
        }
        set.len()
    }

    #[test]
    fn subgroup_counts_match_brute_force() {
        for g in [
            dihedral(12).unwrap(),
            dihedral(20).unwrap(),
            generalized_quaternion(1).unwrap(),
            generalized_quaternion(2).unwrap(),
            z2_times_a4().unwrap(),
            z2_times_s3().unwrap(),
            dihedral(28).unwrap(),
            z2_times_dihedral(7).unwrap(),
        ] {
            let subs = g.subgroups().unwrap();
            for s in &subs {
                assert!(g.subgroup_from_members(s.members()).is_ok());
            }
            assert_eq!(subs.len(), brute_force_subgroup_count(&g), "{}", g.name());
        }
    }

    #[test]
    fn quotient_cosets_inflate_back() {
        let g = z2_times_a4().unwrap();
        let v = g.commutator_subgroup();
        let (q, proj) = g.quotient(&v).unwrap();
        for c in q.elements() {
            let coset: Vec<usize> = g.elements().filter(|&x| proj[x] == c).collect();
            let rep = coset[0];
            let expect: Vec<usize> = {
                let mut e: Vec<usize> = v.members().iter().map(|&h| g.mul(rep, h)).collect();
                e.sort_unstable();
                e
            };
            assert_eq!(coset, expect);
        }
        let non_normal = g.subgroup_generated(&[g.eval_word("y").unwrap()]);
        assert_eq!(g.quotient(&non_normal).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn complex_conjugation_errors() {
        assert_eq!(
            cyclic(3, "x").unwrap().complex_conjugation(),
            Err(Error::NoComplexConjugation { found: 0 })
        );
        assert_eq!(
            dihedral(4).unwrap().complex_conjugation(),
            Err(Error::NoComplexConjugation { found: 3 })
        );
    }

    #[test]
    fn rejects_bad_tables() {
        let not_assoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]];
        assert!(FiniteGroup::from_table("bad", not_assoc, vec![], vec![], vec![]).is_err());
        let no_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table("bad", no_identity, vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn sampled_verification_on_large_group() {
        let g = dihedral(200).unwrap();
        assert!(g.verify_sampled(10_000, 7));
    }

    #[test]
    fn too_large_for_subgroups() {
        let g = cyclic(1001, "x").unwrap();
        assert!(matches!(g.subgroups(), Err(Error::TooLarge { .. })));
    }
}
