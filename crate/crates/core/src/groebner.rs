//! Buchberger's algorithm for module vectors (polynomial convention,
//! leading = maximal term), and Lazard's homogenization method computing
//! standard bases for series orders (initial = minimal term).
//!
//! Representation tracking is optional: when enabled, every output element
//! carries scalar multipliers expressing it in terms of the inputs.

use crate::order::{initial_vector, leading_vector, MonomialOrder};
use crate::poly::{Ambient, MonVec, PolyVec, Rat};
use num_traits::One;
use std::cmp::Ordering;
use std::sync::Arc;

#[derive(Debug, Clone)]
struct Tracked {
    poly: PolyVec,
    repr: Vec<PolyVec>, // scalar multipliers over the inputs
}

fn scalar_amb(amb: &Arc<Ambient>) -> Arc<Ambient> {
    Ambient::scalar(amb.vars.clone())
}

fn lead(p: &PolyVec, ord: &MonomialOrder) -> (MonVec, Rat) {
    let (m, c) = leading_vector(p, ord).expect("zero polynomial has no leading term");
    (m.clone(), c.clone())
}

fn make_monic(t: &mut Tracked, ord: &MonomialOrder) {
    let (_, c) = lead(&t.poly, ord);
    let inv = Rat::one() / c;
    t.poly = t.poly.scale(&inv);
    for r in &mut t.repr {
        *r = r.scale(&inv);
    }
}

/// Full normal form against leading terms (global order): reduce the
/// maximal reducible term until none remains.
fn normal_form(
    p: &Tracked,
    basis: &[Tracked],
    skip: Option<usize>,
    ord: &MonomialOrder,
) -> Tracked {
    let mut h = p.clone();
    let leads: Vec<Option<(MonVec, Rat)>> = basis
        .iter()
        .map(|b| if b.poly.is_zero() { None } else { Some(lead(&b.poly, ord)) })
        .collect();
    loop {
        let mut best: Option<(MonVec, Rat, usize)> = None;
        for (m, c) in h.poly.iter() {
            for (k, l) in leads.iter().enumerate() {
                if Some(k) == skip {
                    continue;
                }
                if let Some((lm, _)) = l {
                    if lm.divides(m) {
                        let better = match &best {
                            None => true,
                            Some((bm, _, _)) => ord.compare(m, bm) == Ordering::Greater,
                        };
                        if better {
                            best = Some((m.clone(), c.clone(), k));
                        }
                        break;
                    }
                }
            }
        }
        let Some((m, c, k)) = best else {
            return h;
        };
        let (lm, lc) = leads[k].as_ref().unwrap();
        let q_exps = lm.quot(&m);
        let q = c / lc.clone();
        h.poly = h.poly.sub(&basis[k].poly.mul_term(&q_exps, &q));
        for (r, br) in h.repr.iter_mut().zip(&basis[k].repr) {
            *r = r.sub(&br.mul_term(&q_exps, &q));
        }
    }
}

/// Reduced Groebner basis of the module generated by the inputs, with
/// optional representation tracking. Pairs are processed by ascending lcm
/// degree (normal strategy), ties by input index; the output is monic,
/// fully inter-reduced and sorted by ascending leading vector.
pub fn buchberger(
    inputs: &[PolyVec],
    ord: &MonomialOrder,
    track: bool,
) -> (Vec<PolyVec>, Option<Vec<Vec<PolyVec>>>) {
    assert!(!inputs.is_empty());
    let amb = inputs[0].amb.clone();
    let samb = scalar_amb(&amb);
    let unit_repr = |k: usize, n: usize| -> Vec<PolyVec> {
        (0..n)
            .map(|j| {
                if j == k {
                    PolyVec::constant(&samb, Rat::one())
                } else {
                    PolyVec::zero(&samb)
                }
            })
            .collect()
    };
    let n_in = inputs.len();
    let mut basis: Vec<Tracked> = Vec::new();
    for (k, p) in inputs.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let mut t = Tracked { poly: p.clone(), repr: unit_repr(k, n_in) };
        make_monic(&mut t, ord);
        basis.push(t);
    }
    struct Pair {
        deg: u32,
        lcm: MonVec,
        i: usize,
        j: usize,
    }
    let mut pairs: Vec<Pair> = Vec::new();
    let lcm_of = |a: &MonVec, b: &MonVec| -> Option<MonVec> {
        if a.comp != b.comp {
            return None;
        }
        let exps: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| *x.max(y)).collect();
        Some(MonVec { exps, comp: a.comp })
    };
    // Gebauer-Moeller pair update: prune new pairs by the chain criteria
    // (divisibility among the new lcms, duplicates) and the product
    // criterion (ideals only), and drop old pairs whose lcm the new lead
    // divides strictly on both sides.
    let push_pairs = |pairs: &mut Vec<Pair>, basis: &[Tracked], t: usize| {
        let (lt, _) = lead(&basis[t].poly, ord);
        let old_leads: Vec<MonVec> =
            (0..t).map(|k| lead(&basis[k].poly, ord).0).collect();
        let mut news: Vec<Pair> = Vec::new();
        for (k, lk) in old_leads.iter().enumerate() {
            if let Some(l) = lcm_of(lk, &lt) {
                news.push(Pair { deg: l.deg(), lcm: l, i: k, j: t });
            }
        }
        pairs.retain(|p| {
            if p.lcm.comp != lt.comp || !lt.divides(&p.lcm) {
                return true;
            }
            let l_it = lcm_of(&old_leads[p.i], &lt).unwrap();
            let l_jt = lcm_of(&old_leads[p.j], &lt).unwrap();
            l_it == p.lcm || l_jt == p.lcm
        });
        let mut keep = vec![true; news.len()];
        for a in 0..news.len() {
            for b in 0..news.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let strict = news[b].lcm.divides(&news[a].lcm) && news[b].lcm != news[a].lcm;
                let dup = news[b].lcm == news[a].lcm && b < a;
                if strict || dup {
                    keep[a] = false;
                    break;
                }
            }
        }
        for (k, p) in news.into_iter().enumerate() {
            if !keep[k] {
                continue;
            }
            if basis[t].poly.amb.comps == 1 && p.deg == old_leads[p.i].deg() + lt.deg() {
                continue;
            }
            pairs.push(p);
        }
        pairs.sort_by(|a, b| (a.deg, a.i, a.j).cmp(&(b.deg, b.i, b.j)));
    };
    for j in 0..basis.len() {
        push_pairs(&mut pairs, &basis, j);
    }
    let mut steps = 0u64;
    while !pairs.is_empty() {
        steps += 1;
        if steps % 100 == 0 {
            eprintln!("TRACE buchberger: {} steps, basis {}, pairs {}", steps, basis.len(), pairs.len());
        }
        let Pair { i, j, .. } = pairs.remove(0);
        let (li, _) = lead(&basis[i].poly, ord);
        let (lj, _) = lead(&basis[j].poly, ord);
        let lcm: Vec<u32> = li.exps.iter().zip(&lj.exps).map(|(a, b)| *a.max(b)).collect();
        let qi: Vec<u32> = lcm.iter().zip(&li.exps).map(|(l, a)| l - a).collect();
        let qj: Vec<u32> = lcm.iter().zip(&lj.exps).map(|(l, a)| l - a).collect();
        let one = Rat::one();
        let mut s = Tracked {
            poly: basis[i].poly.mul_term(&qi, &one).sub(&basis[j].poly.mul_term(&qj, &one)),
            repr: basis[i]
                .repr
                .iter()
                .zip(&basis[j].repr)
                .map(|(a, b)| a.mul_term(&qi, &one).sub(&b.mul_term(&qj, &one)))
                .collect(),
        };
        s = normal_form(&s, &basis, None, ord);
        if !s.poly.is_zero() {
            make_monic(&mut s, ord);
            basis.push(s);
            push_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }
    // minimalize: drop elements whose lead is divisible by another lead
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        let (li, _) = lead(&basis[i].poly, ord);
        for j in 0..basis.len() {
            if i != j && keep[j] {
                let (lj, _) = lead(&basis[j].poly, ord);
                if lj.divides(&li) && (li != lj || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
    }
    let mut min_basis: Vec<Tracked> =
        basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b).collect();
    // inter-reduce tails
    for i in 0..min_basis.len() {
        let p = min_basis[i].clone();
        let reduced = normal_form_tail(&p, &min_basis, i, ord);
        min_basis[i] = reduced;
    }
    min_basis.sort_by(|a, b| {
        let (la, _) = lead(&a.poly, ord);
        let (lb, _) = lead(&b.poly, ord);
        ord.compare(&la, &lb)
    });
    let reprs = if track { Some(min_basis.iter().map(|t| t.repr.clone()).collect()) } else { None };
    (min_basis.into_iter().map(|t| t.poly).collect(), reprs)
}

/// reduce every non-leading term of p against the other basis elements
fn normal_form_tail(
    p: &Tracked,
    basis: &[Tracked],
    skip: usize,
    ord: &MonomialOrder,
) -> Tracked {
    let mut h = p.clone();
    let (own_lead, _) = lead(&h.poly, ord);
    loop {
        let mut best: Option<(MonVec, Rat, usize)> = None;
        for (m, c) in h.poly.iter() {
            if *m == own_lead {
                continue;
            }
            for (k, b) in basis.iter().enumerate() {
                if k == skip {
                    continue;
                }
                let (lm, _) = lead(&b.poly, ord);
                if lm.divides(m) {
                    let better = match &best {
                        None => true,
                        Some((bm, _, _)) => ord.compare(m, bm) == Ordering::Greater,
                    };
                    if better {
                        best = Some((m.clone(), c.clone(), k));
                    }
                    break;
                }
            }
        }
        let Some((m, c, k)) = best else {
            return h;
        };
        let (lm, lc) = lead(&basis[k].poly, ord);
        let q_exps = lm.quot(&m);
        let q = c / lc;
        h.poly = h.poly.sub(&basis[k].poly.mul_term(&q_exps, &q));
        for (r, br) in h.repr.iter_mut().zip(&basis[k].repr) {
            *r = r.sub(&br.mul_term(&q_exps, &q));
        }
    }
}

/// Homogenize with a fresh variable appended to the ambient.
pub fn homogenize(p: &PolyVec, target: &Arc<Ambient>, hvar: usize) -> PolyVec {
    let d = p.total_deg();
    let mut r = PolyVec::zero(target);
    for (m, c) in p.iter() {
        let mut exps = vec![0u32; target.nvars()];
        exps[..m.exps.len()].copy_from_slice(&m.exps);
        exps[hvar] = d - m.deg();
        r.add_term(MonVec { exps, comp: m.comp }, c.clone());
    }
    r
}

/// Set the homogenizing variable to 1 and map back.
pub fn dehomogenize(p: &PolyVec, target: &Arc<Ambient>, hvar: usize) -> PolyVec {
    let mut r = PolyVec::zero(target);
    for (m, c) in p.iter() {
        let mut exps = m.exps.clone();
        exps.remove(hvar);
        r.add_term(MonVec { exps, comp: m.comp }, c.clone());
    }
    r
}

/// Lazard standard basis for a series order: homogenize, run Buchberger
/// under the degree-first reversed order, dehomogenize. Every input reduces
/// to zero against the output under the weak normal form.
pub fn lazard_standard_basis(
    inputs: &[PolyVec],
    eps: &MonomialOrder,
    track: bool,
) -> (Vec<PolyVec>, Option<Vec<Vec<PolyVec>>>) {
    assert!(!inputs.is_empty());
    let amb = inputs[0].amb.clone();
    let mut hvars = amb.vars.clone();
    let hname = {
        let mut k = 0usize;
        loop {
            let cand = format!("_h{k}");
            if !hvars.contains(&cand) {
                break cand;
            }
            k += 1;
        }
    };
    hvars.push(hname);
    let hamb = Ambient::new(hvars, amb.comps);
    let hvar = hamb.nvars() - 1;
    let hord = MonomialOrder::Homogenized { eps: Box::new(eps.clone()), hvar };
    let hins: Vec<PolyVec> =
        inputs.iter().filter(|p| !p.is_zero()).map(|p| homogenize(p, &hamb, hvar)).collect();
    let (hbasis, hreprs) = buchberger(&hins, &hord, track);
    let samb = scalar_amb(&amb);
    let mut out: Vec<PolyVec> = hbasis.iter().map(|p| dehomogenize(p, &amb, hvar)).collect();
    let mut reprs: Option<Vec<Vec<PolyVec>>> = hreprs.map(|rs| {
        rs.iter()
            .map(|row| row.iter().map(|r| dehomogenize(r, &samb, hvar)).collect())
            .collect()
    });
    // account for zero inputs dropped before homogenizing
    if track {
        let nz: Vec<usize> =
            inputs.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(i, _)| i).collect();
        reprs = reprs.map(|rs| {
            rs.into_iter()
                .map(|row| {
                    let mut full = vec![PolyVec::zero(&samb); inputs.len()];
                    for (slot, r) in nz.iter().zip(row) {
                        full[*slot] = r;
                    }
                    full
                })
                .collect()
        });
    }
    // sort by ascending initial vector, normalize initial coefficient to 1
    let mut idx: Vec<usize> = (0..out.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ma, _) = initial_vector(&out[a], eps).unwrap();
        let (mb, _) = initial_vector(&out[b], eps).unwrap();
        eps.compare(ma, mb)
    });
    let mut sorted = Vec::new();
    let mut sorted_reprs = reprs.as_ref().map(|_| Vec::new());
    for &i in &idx {
        let (_, c) = initial_vector(&out[i], eps).unwrap();
        let inv = Rat::one() / c.clone();
        sorted.push(out[i].scale(&inv));
        if let (Some(sr), Some(rs)) = (&mut sorted_reprs, &reprs) {
            sr.push(rs[i].iter().map(|r| r.scale(&inv)).collect::<Vec<_>>());
        }
    }
    // minimal basis downstairs: upstairs minimality does not survive the
    // dehomogenization, so drop elements whose initial is a proper multiple
    // of another's (or a duplicate of an earlier one)
    let inits: Vec<MonVec> =
        sorted.iter().map(|g| initial_vector(g, eps).unwrap().0.clone()).collect();
    let mut keep = vec![true; sorted.len()];
    for i in 0..sorted.len() {
        for j in 0..sorted.len() {
            if i == j || !keep[j] {
                continue;
            }
            if inits[j].divides(&inits[i]) && (inits[j] != inits[i] || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    out = sorted
        .into_iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(g, _)| g)
        .collect();
    let sorted_reprs = sorted_reprs.map(|rs| {
        rs.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(r, _)| r).collect()
    });
    (out, sorted_reprs)
}
