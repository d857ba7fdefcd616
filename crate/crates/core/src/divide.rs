//! Division engines working termwise against initial or leading monomials:
//! truncated formal division of series, its Janet-scoped refinement, and
//! scoped polynomial division against leading monomial vectors.

use crate::error::{Error, Result};
use crate::order::{initial_vector, leading_vector, MonomialOrder};
use crate::poly::{MonVec, PolyVec, Rat};
use num_traits::Zero;
use std::cmp::Ordering;

/// Which variables a divisor's quotient may involve. Outside the scope the
/// divisor's monomial must match the term exactly.
#[derive(Debug, Clone)]
pub enum Scope {
    /// the first k ambient variables
    Prefix(usize),
    /// explicit allowed set
    Mask(Vec<bool>),
}

impl Scope {
    pub fn allows(&self, var: usize) -> bool {
        match self {
            Scope::Prefix(k) => var < *k,
            Scope::Mask(m) => m[var],
        }
    }
}

#[derive(Debug, Clone)]
pub struct DivisionResult {
    /// scalar quotients, one per divisor
    pub quotients: Vec<PolyVec>,
    pub remainder: PolyVec,
}

/// Truncated formal division: repeatedly rewrites the minimal reducible
/// term of `f` by the first divisor whose initial vector divides it, up to
/// total degree `d`. The remainder support avoids the initial module of the
/// divisors.
pub fn formal_divide(
    f: &PolyVec,
    gens: &[PolyVec],
    ord: &MonomialOrder,
    d: u32,
) -> DivisionResult {
    let select = |term: &MonVec, ins: &[(MonVec, Rat)]| -> Option<usize> {
        ins.iter().position(|(m, _)| m.divides(term))
    };
    divide_by_initials(f, gens, ord, d, &select)
}

/// Janet-scoped formal division: the divisor for a term is the unique one
/// whose initial divides it with quotient supported in its scope.
pub fn janet_formal_divide(
    f: &PolyVec,
    gens: &[(PolyVec, Scope)],
    ord: &MonomialOrder,
    d: u32,
) -> Result<DivisionResult> {
    let polys: Vec<PolyVec> = gens.iter().map(|(p, _)| p.clone()).collect();
    let scopes: Vec<&Scope> = gens.iter().map(|(_, s)| s).collect();
    let mut bad: Option<(MonVec, usize)> = None;
    let select = |term: &MonVec, ins: &[(MonVec, Rat)]| -> Option<usize> {
        let hits: Vec<usize> = ins
            .iter()
            .enumerate()
            .filter(|(k, (m, _))| {
                m.divides(term) && m.exps.iter().zip(&term.exps).enumerate().all(|(i, (a, b))| {
                    scopes[*k].allows(i) || a == b
                })
            })
            .map(|(k, _)| k)
            .collect();
        match hits.len() {
            1 => Some(hits[0]),
            _ => None,
        }
    };
    let r = divide_by_initials(f, &polys, ord, d, &select);
    // a remainder term lying inside the module means the scoped cover was
    // not a partition
    for (m, _) in r.remainder.iter() {
        let raw = polys.iter().filter_map(|g| initial_vector(g, ord)).filter(|(i, _)| i.divides(m)).count();
        if raw > 0 {
            bad = Some((m.clone(), if raw == 1 { 0 } else { raw }));
            break;
        }
    }
    if let Some((m, covers)) = bad {
        return Err(Error::NotEchelon {
            term: crate::text::render_monvec(&m, &f.amb),
            covers,
        });
    }
    Ok(r)
}

fn divide_by_initials(
    f: &PolyVec,
    gens: &[PolyVec],
    ord: &MonomialOrder,
    d: u32,
    select: &dyn Fn(&MonVec, &[(MonVec, Rat)]) -> Option<usize>,
) -> DivisionResult {
    let ins: Vec<(MonVec, Rat)> = gens
        .iter()
        .map(|g| {
            let (m, c) = initial_vector(g, ord).expect("zero divisor");
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = f.truncate(d, None);
    let mut quotients: Vec<PolyVec> = gens.iter().map(|g| PolyVec::zero(&g.amb)).collect();
    let mut remainder = PolyVec::zero(&f.amb);
    while !work.is_zero() {
        let (m, c) = {
            let (m, c) = initial_vector(&work, ord).unwrap();
            (m.clone(), c.clone())
        };
        match select(&m, &ins) {
            None => {
                work.add_term(m.clone(), -c.clone());
                remainder.add_term(m, c);
            }
            Some(k) => {
                let q_exps = ins[k].0.quot(&m);
                let q_coef = c / ins[k].1.clone();
                let mut qm = MonVec { exps: q_exps.clone(), comp: 0 };
                qm.comp = 0;
                quotients[k].add_term(qm, q_coef.clone());
                let sub = gens[k].mul_term(&q_exps, &q_coef).truncate(d, None);
                work = work.sub(&sub);
            }
        }
    }
    DivisionResult { quotients, remainder }
}

/// Scoped polynomial division against leading monomial vectors (maximal
/// terms): rewrites the maximal reducible term of `f` through the unique
/// scope-respecting divisor until no term of the working vector lies in the
/// scoped cover. Exact, no truncation.
pub fn janet_poly_divide(
    f: &PolyVec,
    gens: &[(PolyVec, Scope)],
    ord: &MonomialOrder,
) -> Result<DivisionResult> {
    let leads: Vec<(MonVec, Rat)> = gens
        .iter()
        .map(|(g, _)| {
            let (m, c) = leading_vector(g, ord).expect("zero divisor");
            (m.clone(), c.clone())
        })
        .collect();
    let covering = |term: &MonVec| -> Result<Option<usize>> {
        let mut hit = None;
        let mut hits = 0usize;
        for (k, (m, _)) in leads.iter().enumerate() {
            if m.divides(term)
                && m.exps
                    .iter()
                    .zip(&term.exps)
                    .enumerate()
                    .all(|(i, (a, b))| gens[k].1.allows(i) || a == b)
            {
                hit = Some(k);
                hits += 1;
            }
        }
        if hits > 1 {
            return Err(Error::NotEchelon {
                term: crate::text::render_monvec(term, &f.amb),
                covers: hits,
            });
        }
        if hit.is_none() && leads.iter().any(|(m, _)| m.divides(term)) {
            return Err(Error::NotEchelon {
                term: crate::text::render_monvec(term, &f.amb),
                covers: 0,
            });
        }
        Ok(hit)
    };
    let mut work = f.clone();
    let mut quotients: Vec<PolyVec> = gens.iter().map(|(g, _)| PolyVec::zero(&g.amb)).collect();
    loop {
        // maximal reducible term of the working vector
        let mut best: Option<(MonVec, Rat, usize)> = None;
        for (m, c) in work.iter() {
            if let Some(k) = covering(m)? {
                let better = match &best {
                    None => true,
                    Some((bm, _, _)) => ord.compare(m, bm) == Ordering::Greater,
                };
                if better {
                    best = Some((m.clone(), c.clone(), k));
                }
            }
        }
        let Some((m, c, k)) = best else {
            break;
        };
        let q_exps = leads[k].0.quot(&m);
        let q_coef = c / leads[k].1.clone();
        quotients[k].add_term(MonVec { exps: q_exps.clone(), comp: 0 }, q_coef.clone());
        let sub = gens[k].0.mul_term(&q_exps, &q_coef);
        work = work.sub(&sub);
        debug_assert!(work.coeff(&m).is_zero());
    }
    Ok(DivisionResult { quotients, remainder: work })
}
