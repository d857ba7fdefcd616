//! Monomial submodules of K[x]^s: minimal generators, regularity in the
//! last variable, Hironaka's box condition on the complement, and the
//! echelon (Janet block) decomposition with scopes.

use crate::error::{Error, Result};
use crate::poly::{Ambient, MonVec};
use std::sync::Arc;

/// A block `x^base * K[x_1..x_scope] * e_m`; `scope == 0` is a single
/// monomial over K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub base: MonVec,
    pub scope: usize,
}

#[derive(Debug, Clone)]
pub struct JanetDecomposition {
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone)]
pub struct ComplementDecomposition {
    pub blocks: Vec<Block>,
}

/// Drop generators divisible by another generator; sort canonically.
pub fn minimal_generators(gens: &[MonVec]) -> Vec<MonVec> {
    let mut out: Vec<MonVec> = Vec::new();
    let mut sorted: Vec<&MonVec> = gens.iter().collect();
    sorted.sort();
    sorted.dedup();
    for g in &sorted {
        if !sorted.iter().any(|h| h != g && h.divides(g)) {
            out.push((*g).clone());
        }
    }
    out
}

/// When the module is generated by pure powers `xn^{d_k} e_k` of the given
/// variable (distinct components), returns the pairs (component, d_k).
pub fn xn_regular_profile(gens: &[MonVec], xn: usize) -> Option<Vec<(usize, u32)>> {
    let gens = minimal_generators(gens);
    let mut prof: Vec<(usize, u32)> = Vec::new();
    for g in &gens {
        let pure = g.exps.iter().enumerate().all(|(i, &e)| i == xn || e == 0);
        if !pure {
            return None;
        }
        if prof.iter().any(|&(c, _)| c == g.comp) {
            return None;
        }
        prof.push((g.comp, g.exps[xn]));
    }
    prof.sort();
    Some(prof)
}

pub fn is_xn_regular(gens: &[MonVec], xn: usize) -> bool {
    xn_regular_profile(gens, xn).is_some()
}

fn rec(
    amb: &Arc<Ambient>,
    base: &MonVec,
    gens: &[MonVec],
    k: usize,
    out_mod: &mut Vec<Block>,
    out_co: &mut Vec<Block>,
) -> Result<()> {
    debug_assert!(!gens.is_empty());
    if k == 0 {
        // all active variables used up: the base itself generates
        out_mod.push(Block { base: base.clone(), scope: 0 });
        return Ok(());
    }
    let xn = k - 1;
    let pure: Vec<&MonVec> = gens
        .iter()
        .filter(|g| (0..xn).all(|i| g.exps[i] == 0))
        .collect();
    let Some(d) = pure.iter().map(|g| g.exps[xn]).min() else {
        return Err(Error::BoxConditionFailed {
            witness: crate::text::render_monvec(&gens[0], amb),
            component: gens[0].comp + 1,
            variable: amb.vars[xn].clone(),
        });
    };
    let mut top = base.clone();
    top.exps[xn] += d;
    out_mod.push(Block { base: top, scope: k });
    for j in 0..d {
        let mut sub_base = base.clone();
        sub_base.exps[xn] += j;
        let sub: Vec<MonVec> = gens
            .iter()
            .filter(|g| g.exps[xn] == j && (0..xn).any(|i| g.exps[i] > 0))
            .cloned()
            .collect();
        if sub.is_empty() {
            out_co.push(Block { base: sub_base, scope: xn });
        } else {
            rec(amb, &sub_base, &sub, xn, out_mod, out_co)?;
        }
    }
    Ok(())
}

/// Run the echelon recursion: peel off the pure powers of the last active
/// variable, then recurse on the complement slices over one variable less.
/// Returns both the module blocks (with scopes) and the complement blocks,
/// or the box-condition failure witness.
pub fn decompose(
    amb: &Arc<Ambient>,
    gens: &[MonVec],
) -> Result<(JanetDecomposition, ComplementDecomposition)> {
    let gens = minimal_generators(gens);
    let n = amb.nvars();
    let mut out_mod = Vec::new();
    let mut out_co = Vec::new();
    for comp in 0..amb.comps {
        let cg: Vec<MonVec> = gens.iter().filter(|g| g.comp == comp).cloned().collect();
        let mut base = MonVec::one(n);
        base.comp = comp;
        if cg.is_empty() {
            out_co.push(Block { base, scope: n });
        } else {
            rec(amb, &base, &cg, n, &mut out_mod, &mut out_co)?;
        }
    }
    Ok((JanetDecomposition { blocks: out_mod }, ComplementDecomposition { blocks: out_co }))
}

/// Echelon (Janet) decomposition of the module itself.
pub fn echelon_decompose(amb: &Arc<Ambient>, gens: &[MonVec]) -> Result<JanetDecomposition> {
    decompose(amb, gens).map(|(m, _)| m)
}

/// Box condition: the complement decomposition when it exists.
pub fn box_condition(amb: &Arc<Ambient>, gens: &[MonVec]) -> Result<ComplementDecomposition> {
    decompose(amb, gens).map(|(_, c)| c)
}

fn binom(n: u64, k: u64) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Number of monomial vectors of total degree <= d covered by the blocks
/// (blocks assumed disjoint).
pub fn count_monomials(blocks: &[Block], d: u32) -> u64 {
    blocks
        .iter()
        .filter(|b| b.base.deg() <= d)
        .map(|b| {
            let free = b.scope as u64;
            let budget = (d - b.base.deg()) as u64;
            binom(budget + free, free)
        })
        .sum()
}

/// Brute-force oracle: all monomial vectors of degree <= d covered by a
/// block list (used by tests to check disjointness and counting).
pub fn enumerate_covered(amb: &Arc<Ambient>, blocks: &[Block], d: u32) -> Vec<MonVec> {
    let mut out = Vec::new();
    let n = amb.nvars();
    let mut exps = vec![0u32; n];
    fn walk(
        i: usize,
        left: u32,
        exps: &mut Vec<u32>,
        amb: &Arc<Ambient>,
        blocks: &[Block],
        out: &mut Vec<MonVec>,
    ) {
        if i == exps.len() {
            for comp in 0..amb.comps {
                let m = MonVec { exps: exps.clone(), comp };
                let covers = blocks
                    .iter()
                    .filter(|b| {
                        b.base.divides(&m)
                            && (b.scope..exps.len()).all(|j| m.exps[j] == b.base.exps[j])
                    })
                    .count();
                for _ in 0..covers {
                    out.push(m.clone());
                }
            }
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            walk(i + 1, left - e, exps, amb, blocks, out);
        }
        exps[i] = 0;
    }
    walk(0, d, &mut exps, amb, blocks, &mut out);
    out
}
