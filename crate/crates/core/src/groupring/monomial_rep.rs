use super::GroupRingElement;
use crate::character::{same_group, Character, Witness};
use crate::exactnum::Cyclotomic;
use crate::{Error, Result};

/// `Ind_H^G phi` realised on the cosets `t_1 H, ..., t_d H`:
/// `rho(g) e_j = phi(t_i^{-1} g t_j) e_i` where `g t_j` lies in `t_i H`.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    transversal: Vec<usize>,
    /// `perm[g][j] = i`.
    perm: Vec<Vec<usize>>,
    scalars: Vec<Vec<Cyclotomic>>,
}

impl MonomialRep {
    pub fn new(chi: &Character, witness: &Witness) -> Result<Self> {
        let h = &witness.subgroup;
        let g = chi.group();
        if !same_group(g, h.parent()) {
            return Err(Error::NotInduced("witness subgroup lives in another group".into()));
        }
        let (hg, embed) = h.as_group();
        if !same_group(&hg, witness.phi.group()) {
            return Err(Error::NotInduced("phi is not a character of the witness subgroup".into()));
        }
        let mut local = vec![usize::MAX; g.order()];
        for (i, &e) in embed.iter().enumerate() {
            local[e] = i;
        }
        let t = h.left_transversal();
        let d = t.len();
        let mut perm = Vec::with_capacity(g.order());
        let mut scalars = Vec::with_capacity(g.order());
        for x in g.elements() {
            let mut p = vec![0; d];
            let mut s = Vec::with_capacity(d);
            for j in 0..d {
                let xt = g.mul(x, t[j]);
                let (i, hh) = (0..d)
                    .map(|i| (i, g.mul(g.inv(t[i]), xt)))
                    .find(|&(_, hh)| h.contains(hh))
                    .expect("transversal covers every coset");
                p[j] = i;
                s.push(witness.phi.value(local[hh]).clone());
            }
            perm.push(p);
            scalars.push(s);
        }
        let rep = MonomialRep {
            transversal: t,
            perm,
            scalars,
        };
        if g.elements().any(|x| rep.trace(x) != *chi.value(x)) {
            return Err(Error::WitnessMismatch("trace of the induced representation differs".into()));
        }
        Ok(rep)
    }

    pub fn degree(&self) -> usize {
        self.transversal.len()
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn matrix(&self, g: usize) -> Vec<Vec<Cyclotomic>> {
        let d = self.degree();
        let mut m = vec![vec![Cyclotomic::zero(1); d]; d];
        for j in 0..d {
            m[self.perm[g][j]][j] = self.scalars[g][j].clone();
        }
        m
    }

    pub fn trace(&self, g: usize) -> Cyclotomic {
        (0..self.degree())
            .filter(|&j| self.perm[g][j] == j)
            .fold(Cyclotomic::zero(1), |acc, j| &acc + &self.scalars[g][j])
    }

    /// `sum_g a_g rho(g)`.
    pub fn apply(&self, alpha: &GroupRingElement) -> Vec<Vec<Cyclotomic>> {
        let d = self.degree();
        let mut m = vec![vec![Cyclotomic::zero(1); d]; d];
        for (g, a) in alpha.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                let i = self.perm[g][j];
                m[i][j] = &m[i][j] + &(a * &self.scalars[g][j]);
            }
        }
        m
    }
}
