//! Finite presentations of algebraic series. A family is a mother code
//! (square implicit system cutting out parameter series vanishing at the
//! origin) together with father codes, polynomial vectors whose evaluation
//! at the parameter series gives the series of interest.

use crate::error::{Error, Result};
use crate::groebner::lazard_standard_basis;
use crate::order::{extend_order, initial_vector, MonomialOrder};
use crate::poly::{jacobian_at_zero, rat_mat_inverse, Ambient, MonVec, PolyVec, Rat, VarImage};
use num_traits::{One, Zero};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct FamilyCode {
    /// variables first, then parameters; comps = rank of the module
    pub amb: Arc<Ambient>,
    /// number of leading ambient entries that are true variables
    pub n: usize,
    /// base order on the variables
    pub eta: MonomialOrder,
    /// extension of eta to the full ambient
    pub eps: MonomialOrder,
    /// one equation per parameter, scalar over amb
    pub mother: Vec<PolyVec>,
    /// vector codes in the module
    pub fathers: Vec<PolyVec>,
}

impl FamilyCode {
    pub fn params(&self) -> Vec<usize> {
        (self.n..self.amb.nvars()).collect()
    }

    pub fn new(
        amb: Arc<Ambient>,
        n: usize,
        eta: MonomialOrder,
        mother: Vec<PolyVec>,
        fathers: Vec<PolyVec>,
    ) -> Result<Self> {
        if mother.len() + n != amb.nvars() {
            return Err(Error::InvalidMotherCode(format!(
                "{} equations for {} parameters",
                mother.len(),
                amb.nvars() - n
            )));
        }
        let params: Vec<usize> = (n..amb.nvars()).collect();
        let eps = extend_order(&eta, &params);
        let mut fc = FamilyCode { amb, n, eta, eps, mother, fathers };
        fc.normalize_mother()?;
        Ok(fc)
    }

    /// Checks the mother code (vanishing at the origin, invertible parameter
    /// Jacobian) and left-multiplies by the inverse Jacobian so that the
    /// linear parameter part of equation i is exactly parameter i.
    fn normalize_mother(&mut self) -> Result<()> {
        let params = self.params();
        for h in &self.mother {
            if !h.constant_term(0).is_zero() {
                return Err(Error::InvalidMotherCode(
                    "equation does not vanish at the origin".into(),
                ));
            }
        }
        let j0 = jacobian_at_zero(&self.mother, &params);
        let inv = rat_mat_inverse(&j0)?;
        let old = self.mother.clone();
        for (i, h) in self.mother.iter_mut().enumerate() {
            let mut acc = PolyVec::zero(&h.amb);
            for (j, g) in old.iter().enumerate() {
                if !inv[i][j].is_zero() {
                    acc = acc.add(&g.scale(&inv[i][j]));
                }
            }
            *h = acc;
        }
        Ok(())
    }

    /// Unique parameter series vanishing at the origin, truncated at total
    /// degree d in the variables. Newton-style iteration off the identity
    /// linear part; panics if the residual does not vanish to order d.
    pub fn baby_expand(&self, d: u32) -> Vec<PolyVec> {
        baby_expand(&self.amb, self.n, &self.mother, d)
    }

    /// Substitute the parameter expansions into a father code.
    pub fn expand_father(&self, k: usize, d: u32) -> PolyVec {
        let h = self.baby_expand(d);
        let xamb = Ambient::new(self.amb.vars[..self.n].to_vec(), self.amb.comps);
        let mut images: Vec<VarImage> = (0..self.n).map(VarImage::Var).collect();
        for hp in &h {
            images.push(VarImage::Poly(hp.clone()));
        }
        let comp_map: Vec<usize> = (0..self.amb.comps).collect();
        self.fathers[k].substitute(&xamb, &images, &comp_map, Some(d))
    }

    /// Merge two families over the same variables into one with the
    /// concatenated parameter lists and mother equations. Parameter name
    /// clashes are an error; fathers keep their origin order.
    pub fn direct_sum(&self, other: &FamilyCode) -> Result<FamilyCode> {
        if self.amb.vars[..self.n] != other.amb.vars[..other.n]
            || self.amb.comps != other.amb.comps
        {
            return Err(Error::AmbientMismatch("direct sum needs matching base variables and rank".into()));
        }
        let mut vars = self.amb.vars.clone();
        for p in &other.amb.vars[other.n..] {
            if vars.contains(p) {
                return Err(Error::InvalidMotherCode(format!("duplicate parameter {p}")));
            }
            vars.push(p.clone());
        }
        let amb = Ambient::new(vars, self.amb.comps);
        let mut mother: Vec<PolyVec> =
            self.mother.iter().map(|h| lift(h, &amb)).collect();
        mother.extend(other.mother.iter().map(|h| lift(h, &amb)));
        let mut fathers: Vec<PolyVec> =
            self.fathers.iter().map(|g| lift(g, &amb)).collect();
        fathers.extend(other.fathers.iter().map(|g| lift(g, &amb)));
        FamilyCode::new(amb, self.n, self.eta.clone(), mother, fathers)
    }
}

/// map a polynomial into another ambient by variable name; source variables
/// absent from the target are fine as long as no term uses them
pub fn lift(p: &PolyVec, target: &Arc<Ambient>) -> PolyVec {
    let map: Vec<Option<usize>> = p
        .amb
        .vars
        .iter()
        .map(|v| target.vars.iter().position(|w| w == v))
        .collect();
    let mut out = PolyVec::zero(target);
    for (m, c) in p.iter() {
        let mut exps = vec![0u32; target.nvars()];
        for (i, e) in m.exps.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            exps[map[i].expect("missing variable in target")] = *e;
        }
        out.add_term(MonVec { exps, comp: m.comp }, c.clone());
    }
    out
}

pub fn baby_expand(
    amb: &Arc<Ambient>,
    n: usize,
    mother: &[PolyVec],
    d: u32,
) -> Vec<PolyVec> {
    let xamb = Ambient::scalar(amb.vars[..n].to_vec());
    let p = amb.nvars() - n;
    let mut h: Vec<PolyVec> = vec![PolyVec::zero(&xamb); p];
    let comp_map = vec![0usize];
    for _ in 0..=d + 1 {
        let mut images: Vec<VarImage> = (0..n).map(VarImage::Var).collect();
        for hp in &h {
            images.push(VarImage::Poly(hp.clone()));
        }
        let mut next = Vec::with_capacity(p);
        let mut changed = false;
        for (i, eq) in mother.iter().enumerate() {
            let r = eq.substitute(&xamb, &images, &comp_map, Some(d));
            let hi = h[i].sub(&r);
            if hi != h[i] {
                changed = true;
            }
            next.push(hi);
        }
        h = next;
        if !changed {
            break;
        }
    }
    // residual check
    let mut images: Vec<VarImage> = (0..n).map(VarImage::Var).collect();
    for hp in &h {
        images.push(VarImage::Poly(hp.clone()));
    }
    for eq in mother {
        let r = eq.substitute(&xamb, &images, &comp_map, Some(d));
        assert!(r.is_zero(), "expansion residual is nonzero");
    }
    h
}

/// Standard basis of the module spanned by the fathers together with the
/// parameter series relations. Computes a standard basis of the extended
/// module generated by all equation multiples H_i*e_l and the fathers, then
/// keeps the elements whose initial vector is free of parameters; those
/// initials generate the initial module of the coded series module.
pub fn code_standard_basis(fc: &FamilyCode) -> Result<FamilyCode> {
    let mut gens: Vec<PolyVec> = Vec::new();
    for h in &fc.mother {
        for l in 0..fc.amb.comps {
            gens.push(h.into_component(&fc.amb, l));
        }
    }
    gens.extend(fc.fathers.iter().cloned());
    let (basis, _) = lazard_standard_basis(&gens, &fc.eps, false);
    let params = fc.params();
    let mut fathers: Vec<PolyVec> = Vec::new();
    for b in &basis {
        let (m, _) = initial_vector(b, &fc.eps).unwrap();
        if params.iter().all(|&v| m.exps[v] == 0) {
            fathers.push(b.clone());
        }
    }
    // minimal set: one element per initial (fewest terms wins), and drop
    // any whose initial is divisible by another surviving initial
    let inits: Vec<crate::poly::MonVec> = fathers
        .iter()
        .map(|f| initial_vector(f, &fc.eps).unwrap().0.clone())
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..fathers.len() {
        match chosen.iter().position(|&j| inits[j] == inits[i]) {
            Some(slot) => {
                if fathers[i].num_terms() < fathers[chosen[slot]].num_terms() {
                    chosen[slot] = i;
                }
            }
            None => chosen.push(i),
        }
    }
    let survivors: Vec<usize> = chosen
        .iter()
        .copied()
        .filter(|&i| {
            !chosen
                .iter()
                .any(|&j| j != i && inits[j] != inits[i] && inits[j].divides(&inits[i]))
        })
        .collect();
    let fathers: Vec<PolyVec> = survivors.iter().map(|&i| fathers[i].clone()).collect();
    if fathers.is_empty() {
        return Err(Error::Invariant("standard basis came out empty".into()));
    }
    // initial coefficient 1
    let fathers = fathers
        .into_iter()
        .map(|f| {
            let (_, c) = initial_vector(&f, &fc.eps).map(|(m, c)| (m.clone(), c.clone())).unwrap();
            f.scale(&(Rat::one() / c))
        })
        .collect();
    Ok(FamilyCode {
        amb: fc.amb.clone(),
        n: fc.n,
        eta: fc.eta.clone(),
        eps: fc.eps.clone(),
        mother: fc.mother.clone(),
        fathers,
    })
}

/// initial vectors of the fathers (generators of the initial module)
pub fn initial_module(fc: &FamilyCode) -> Vec<crate::poly::MonVec> {
    fc.fathers
        .iter()
        .map(|f| initial_vector(f, &fc.eps).unwrap().0.clone())
        .collect()
}
