//! Mora's weak normal form for local (series) orders: given Q and divisors
//! P_1..P_r, find a unit S (constant term 1), multipliers W_k and a
//! remainder R with S*Q = sum W_k * P_k + R, where no term of R lies in the
//! span of the divisor initials. Divisor selection uses minimal ecart;
//! intermediate results join the candidate pool.

use crate::order::{initial_vector, MonomialOrder};
use crate::poly::{Ambient, MonVec, PolyVec, Rat};
use num_traits::{One, Zero};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct WeakNormalForm {
    pub unit: PolyVec,             // scalar, unit constant term 1
    pub multipliers: Vec<PolyVec>, // scalar, one per divisor
    pub remainder: PolyVec,
}

impl WeakNormalForm {
    /// unit*q - sum multipliers*p - remainder, for identity checks
    pub fn defect(&self, q: &PolyVec, ps: &[PolyVec]) -> PolyVec {
        let mut acc = mul_scalar(&self.unit, q);
        for (w, p) in self.multipliers.iter().zip(ps) {
            acc = acc.sub(&mul_scalar(w, p));
        }
        acc.sub(&self.remainder)
    }
}

/// multiply a vector by a scalar polynomial over the same variables
pub fn mul_scalar(s: &PolyVec, v: &PolyVec) -> PolyVec {
    let mut out = PolyVec::zero(&v.amb);
    for (m, c) in s.iter() {
        out = out.add(&v.mul_term(&m.exps, c));
    }
    out
}

#[derive(Clone)]
struct State {
    poly: PolyVec,
    unit: PolyVec,
    mults: Vec<PolyVec>,
}

fn ecart(p: &PolyVec, ord: &MonomialOrder) -> u32 {
    let (m, _) = initial_vector(p, ord).unwrap();
    p.total_deg() - m.deg()
}

pub fn mora_weak_normal_form(
    q: &PolyVec,
    ps: &[PolyVec],
    ord: &MonomialOrder,
) -> WeakNormalForm {
    let amb = q.amb.clone();
    let samb = Ambient::scalar(amb.vars.clone());
    let zero_s = PolyVec::zero(&samb);
    let one_s = PolyVec::constant(&samb, Rat::one());
    let mut h = State {
        poly: q.clone(),
        unit: one_s.clone(),
        mults: vec![zero_s.clone(); ps.len()],
    };
    // candidate pool: the divisors, then intermediate states
    struct Cand {
        init: MonVec,
        coef: Rat,
        ecart: u32,
        state: Option<State>, // None = original divisor k
        k: usize,
    }
    let mut pool: Vec<Cand> = Vec::new();
    for (k, p) in ps.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let (m, c) = initial_vector(p, ord).unwrap();
        pool.push(Cand { init: m.clone(), coef: c.clone(), ecart: ecart(p, ord), state: None, k });
    }
    let mut remainder = PolyVec::zero(&amb);
    while !h.poly.is_zero() {
        let (hm, hc) = {
            let (m, c) = initial_vector(&h.poly, ord).unwrap();
            (m.clone(), c.clone())
        };
        let mut chosen: Option<usize> = None;
        for (i, cand) in pool.iter().enumerate() {
            if cand.init.divides(&hm) {
                let better = match chosen {
                    None => true,
                    Some(j) => cand.ecart < pool[j].ecart,
                };
                if better {
                    chosen = Some(i);
                }
            }
        }
        let Some(i) = chosen else {
            // irreducible: peel the initial term into the remainder
            let mut t = PolyVec::zero(&amb);
            t.add_term(hm.clone(), hc.clone());
            remainder = remainder.add(&t);
            h.poly = h.poly.sub(&t);
            continue;
        };
        let he = ecart(&h.poly, ord);
        if pool[i].ecart > he {
            // remember the current state as a future reducer
            pool.push(Cand {
                init: hm.clone(),
                coef: hc.clone(),
                ecart: he,
                state: Some(h.clone()),
                k: usize::MAX,
            });
        }
        let qe = pool[i].init.quot(&hm);
        let lam = hc.clone() / pool[i].coef.clone();
        match &pool[i].state {
            None => {
                let k = pool[i].k;
                h.poly = h.poly.sub(&ps[k].mul_term(&qe, &lam));
                h.mults[k] = h.mults[k].add(&monomial_s(&samb, &qe, &lam));
            }
            Some(t) => {
                // t.unit * Q = sum t.mults * P + t.poly
                h.poly = h.poly.sub(&t.poly.mul_term(&qe, &lam));
                h.unit = h.unit.sub(&t.unit.mul_term(&qe, &lam));
                for (hm_, tm) in h.mults.iter_mut().zip(&t.mults) {
                    *hm_ = hm_.sub(&tm.mul_term(&qe, &lam));
                }
            }
        }
    }
    debug_assert!(!h.unit.constant_term(0).is_zero(), "unit lost its constant term");
    WeakNormalForm { unit: h.unit, multipliers: h.mults, remainder }
}

fn monomial_s(samb: &Arc<Ambient>, exps: &[u32], c: &Rat) -> PolyVec {
    let mut p = PolyVec::zero(samb);
    p.add_term(MonVec { exps: exps.to_vec(), comp: 0 }, c.clone());
    p
}
