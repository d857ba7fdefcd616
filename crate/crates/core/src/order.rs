//! Monomial orders on N^n x {1..s}, given as evaluable comparison
//! specifications: base lex / graded lex with a variable precedence, block
//! extensions for series parameters, the integer-vector order used for
//! scoped polynomial division of virtual bases, the precedence order on
//! reduction unknowns solved from a constraint graph, and the composite of
//! the latter two.

use crate::error::{Error, Result};
use crate::poly::{MonVec, PolyVec, Rat};
use std::cmp::Ordering;

/// All variable indices refer to the ambient the order is used with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic; `prec[0]` is the most significant variable.
    Lex { prec: Vec<usize> },
    /// Total degree over `prec`, ties lexicographic.
    GrLex { prec: Vec<usize> },
    /// Generic block extension: `base` decides first (over its own
    /// variables), then total degree over `ext`, then lex over `ext`.
    Extension { base: Box<MonomialOrder>, ext: Vec<usize> },
    /// Compares the integer vector (beta, alpha_n - d_m, alpha', -m, gamma,
    /// delta) lexicographically.
    Omega {
        y_vars: Vec<usize>,
        xn: usize,
        xprime: Vec<usize>,
        u_vars: Vec<usize>,
        v_vars: Vec<usize>,
        d_by_comp: Vec<i64>,
    },
    /// Graded lexicographic on a variable subset with explicit precedence,
    /// as produced by the constraint solver for reduction unknowns.
    ZetaGraded { prec: Vec<usize> },
    /// Composite: |gamma| first, then `eps` on the remaining variables and
    /// the component, then `zeta` on gamma.
    Xi { gamma_vars: Vec<usize>, zeta: Box<MonomialOrder>, eps: Box<MonomialOrder> },
    /// Order for homogenized computations: total degree first, then the
    /// attached order reversed, so leading terms project onto initials.
    Homogenized { eps: Box<MonomialOrder>, hvar: usize },
    /// Order on a quotient-view ambient: every component carries a fixed
    /// base monomial of the original ambient; terms are translated back and
    /// compared there. Variables not covered by `var_map` (and entries that
    /// are None) are parameters, compared after the base by total degree
    /// then lex.
    Induced {
        base: Box<MonomialOrder>,
        var_map: Vec<Option<usize>>,
        block_exps: Vec<Vec<u32>>,
        block_comp: Vec<usize>,
        orig_nvars: usize,
    },
}

fn lex_on(prec: &[usize], a: &MonVec, b: &MonVec) -> Ordering {
    for &i in prec {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn deg_on(prec: &[usize], a: &MonVec) -> u32 {
    prec.iter().map(|&i| a.exps[i]).sum()
}

impl MonomialOrder {
    /// Exponent comparison without the component tie-break.
    fn cmp_exps(&self, a: &MonVec, b: &MonVec) -> Ordering {
        match self {
            MonomialOrder::Lex { prec } => lex_on(prec, a, b),
            MonomialOrder::GrLex { prec } => deg_on(prec, a)
                .cmp(&deg_on(prec, b))
                .then_with(|| lex_on(prec, a, b)),
            MonomialOrder::Extension { base, ext } => base
                .cmp_exps(a, b)
                .then_with(|| deg_on(ext, a).cmp(&deg_on(ext, b)))
                .then_with(|| lex_on(ext, a, b)),
            MonomialOrder::ZetaGraded { prec } => deg_on(prec, a)
                .cmp(&deg_on(prec, b))
                .then_with(|| lex_on(prec, a, b)),
            _ => unreachable!("cmp_exps on component-aware order"),
        }
    }

    /// Total comparison of monomial vectors.
    pub fn compare(&self, a: &MonVec, b: &MonVec) -> Ordering {
        match self {
            MonomialOrder::Lex { .. }
            | MonomialOrder::GrLex { .. }
            | MonomialOrder::Extension { .. }
            | MonomialOrder::ZetaGraded { .. } => {
                self.cmp_exps(a, b).then_with(|| a.comp.cmp(&b.comp))
            }
            MonomialOrder::Omega { y_vars, xn, xprime, u_vars, v_vars, d_by_comp } => {
                lex_on(y_vars, a, b)
                    .then_with(|| {
                        let sa = a.exps[*xn] as i64 - d_by_comp[a.comp];
                        let sb = b.exps[*xn] as i64 - d_by_comp[b.comp];
                        sa.cmp(&sb)
                    })
                    .then_with(|| lex_on(xprime, a, b))
                    .then_with(|| b.comp.cmp(&a.comp))
                    .then_with(|| lex_on(u_vars, a, b))
                    .then_with(|| lex_on(v_vars, a, b))
            }
            MonomialOrder::Xi { gamma_vars, zeta, eps } => {
                deg_on(gamma_vars, a)
                    .cmp(&deg_on(gamma_vars, b))
                    .then_with(|| {
                        let ma = mask(a, gamma_vars);
                        let mb = mask(b, gamma_vars);
                        eps.compare(&ma, &mb)
                    })
                    .then_with(|| zeta.cmp_exps(a, b))
            }
            MonomialOrder::Homogenized { eps, hvar } => {
                a.deg().cmp(&b.deg()).then_with(|| {
                    let ma = mask(a, &[*hvar]);
                    let mb = mask(b, &[*hvar]);
                    eps.compare(&mb, &ma)
                })
            }
            MonomialOrder::Induced { base, var_map, block_exps, block_comp, orig_nvars } => {
                let unmap = |m: &MonVec| -> MonVec {
                    let mut exps = vec![0u32; *orig_nvars];
                    for (i, e) in block_exps[m.comp].iter().enumerate() {
                        exps[i] += e;
                    }
                    for (i, e) in m.exps.iter().enumerate() {
                        if let Some(Some(o)) = var_map.get(i) {
                            exps[*o] += e;
                        }
                    }
                    MonVec { exps, comp: block_comp[m.comp] }
                };
                let par_deg = |m: &MonVec| -> u32 {
                    m.exps
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !matches!(var_map.get(*i), Some(Some(_))))
                        .map(|(_, e)| *e)
                        .sum()
                };
                let par_lex = |x: &MonVec, y: &MonVec| -> Ordering {
                    for i in 0..x.exps.len() {
                        if matches!(var_map.get(i), Some(Some(_))) {
                            continue;
                        }
                        match x.exps[i].cmp(&y.exps[i]) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                    }
                    Ordering::Equal
                };
                base.compare(&unmap(a), &unmap(b))
                    .then_with(|| par_deg(a).cmp(&par_deg(b)))
                    .then_with(|| par_lex(a, b))
            }
        }
    }
}

fn mask(m: &MonVec, vars: &[usize]) -> MonVec {
    let mut exps = m.exps.clone();
    for &i in vars {
        exps[i] = 0;
    }
    MonVec { exps, comp: m.comp }
}

/// Initial vector of a nonzero polynomial vector: the minimal support
/// element. Returns (monomial, coefficient).
pub fn initial_vector<'a>(p: &'a PolyVec, ord: &MonomialOrder) -> Option<(&'a MonVec, &'a Rat)> {
    p.iter().min_by(|(m, _), (n, _)| ord.compare(m, n))
}

/// Leading vector of a nonzero polynomial vector: the maximal support
/// element (polynomial convention).
pub fn leading_vector<'a>(p: &'a PolyVec, ord: &MonomialOrder) -> Option<(&'a MonVec, &'a Rat)> {
    p.iter().max_by(|(m, _), (n, _)| ord.compare(m, n))
}

/// Normalized tail: writes `g = x^a e_l - gbar` after scaling the initial
/// coefficient to 1; returns (initial monomial, scaled g, tail gbar).
pub fn initial_split(p: &PolyVec, ord: &MonomialOrder) -> Option<(MonVec, PolyVec, PolyVec)> {
    let (m, c) = initial_vector(p, ord)?;
    let m = m.clone();
    let inv = Rat::new(c.denom().clone(), c.numer().clone());
    let scaled = p.scale(&inv);
    let mut tail = scaled.neg();
    tail.add_term(m.clone(), Rat::new(1.into(), 1.into()));
    Some((m, scaled, tail))
}

/// Extend a base order on the x-variables by a block of series parameters
/// that sits below every positive-degree x-monomial slicewise: restriction
/// to each parameter slice agrees with the base, the parameter block is
/// degree compatible, and a parameter is smaller than any single x-variable.
/// A graded-lex base extends to graded lex over all variables.
pub fn extend_order(base: &MonomialOrder, new_vars: &[usize]) -> MonomialOrder {
    match base {
        MonomialOrder::GrLex { prec } => {
            let mut p = prec.clone();
            p.extend_from_slice(new_vars);
            MonomialOrder::GrLex { prec: p }
        }
        // induced orders already treat unmapped variables as parameters
        MonomialOrder::Induced { .. } => base.clone(),
        _ => MonomialOrder::Extension { base: Box::new(base.clone()), ext: new_vars.to_vec() },
    }
}

/// Identification of a reduction unknown for the constraint solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum UnknownKind {
    /// coefficient u_{i l m j} of x_n^j e_m in the template for y_i e_l
    UH { i: usize, l: usize, m: usize, j: u32 },
    /// coefficient u_{k m j} of x_n^j e_m in the template for x_n^{d_k} e_k
    UG { k: usize, m: usize, j: u32 },
    /// coefficient v_{i l m} of e_m in the template for y_i e_l
    VH { i: usize, l: usize, m: usize },
    /// coefficient v_{k m} of e_m in the template for x_n^{d_k} e_k
    VG { k: usize, m: usize },
}

#[derive(Debug, Clone)]
pub struct Unknown {
    pub var: usize,
    pub kind: UnknownKind,
}

/// Data the constraint schemas evaluate against: the ambient order, the
/// y-variables (so in(H_i e_l) = y_i e_l), the distinguished last variable
/// and the regular exponents d_k (in(G_k) = x_n^{d_k} e_k).
pub struct ZetaContext<'a> {
    pub eps: &'a MonomialOrder,
    pub nvars: usize,
    pub y_vars: &'a [usize],
    pub xn: usize,
    pub d_list: &'a [u32],
    /// component of each regular generator
    pub comp_of: &'a [usize],
}

impl ZetaContext<'_> {
    fn in_h(&self, i: usize, l: usize, xn_pow: u32) -> MonVec {
        let mut exps = vec![0u32; self.nvars];
        exps[self.y_vars[i]] = 1;
        exps[self.xn] += xn_pow;
        MonVec { exps, comp: l }
    }

    fn in_g(&self, k: usize, xn_pow: u32) -> MonVec {
        let mut exps = vec![0u32; self.nvars];
        exps[self.xn] = self.d_list[k] + xn_pow;
        MonVec { exps, comp: self.comp_of[k] }
    }
}

/// Instantiate the eight precedence schemas over all unknown pairs and
/// topologically sort the resulting digraph; ties are broken by the fixed
/// rank of the index tuples. Returns the graded lex order realizing the
/// precedence, or a cycle when the constraints contradict each other.
pub fn solve_zeta_constraints(
    ctx: &ZetaContext,
    unknowns: &[Unknown],
    names: &dyn Fn(usize) -> String,
) -> Result<MonomialOrder> {
    use UnknownKind::*;
    let gt = Ordering::Greater;
    let n = unknowns.len();
    // edges[a] contains b  <=>  a >_zeta b is required
    let mut edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ai, a) in unknowns.iter().enumerate() {
        for (bi, b) in unknowns.iter().enumerate() {
            if ai == bi {
                continue;
            }
            let required = match (&a.kind, &b.kind) {
                // u_{iota l m j'} > u_{i l m j}
                (UH { i: iota, l: la, m: ma, j: jp }, UH { i, l, m, j }) => {
                    la == l
                        && ma == m
                        && jp <= j
                        && ctx.eps.compare(&ctx.in_h(*iota, *la, *j), &ctx.in_h(*i, *l, *jp)) == gt
                }
                // u_{i l m j'} > u_{k m j}
                (UH { i, l, m: ma, j: jp }, UG { k, m, j }) => {
                    ma == m
                        && jp <= j
                        && ctx.eps.compare(&ctx.in_h(*i, *l, *j), &ctx.in_g(*k, *jp)) == gt
                }
                // u_{k m j} > u_{i k m j'}  (third schema, reversed form)
                (UG { k, m: ma, j }, UH { i, l, m, j: jp }) => {
                    ma == m
                        && *l == ctx.comp_of[*k]
                        && jp >= j
                        && ctx.eps.compare(&ctx.in_g(*k, *jp), &ctx.in_h(*i, *l, *j)) == gt
                }
                // u_{kappa m j'} > u_{k m j}
                (UG { k: kappa, m: ma, j: jp }, UG { k, m, j }) => {
                    ma == m
                        && jp <= j
                        && ctx.eps.compare(&ctx.in_g(*kappa, *j), &ctx.in_g(*k, *jp)) == gt
                }
                // v_{iota l m} > v_{i l m}
                (VH { i: iota, l: la, m: ma }, VH { i, l, m }) => {
                    la == l
                        && ma == m
                        && ctx.eps.compare(&ctx.in_h(*iota, *la, 0), &ctx.in_h(*i, *l, 0)) == gt
                }
                // v_{i l m} > v_{k m}
                (VH { i, l, m: ma }, VG { k, m }) => {
                    ma == m && ctx.eps.compare(&ctx.in_h(*i, *l, 0), &ctx.in_g(*k, 0)) == gt
                }
                // v_{k m} > v_{i k m}  (seventh schema, reversed form)
                (VG { k, m: ma }, VH { i, l, m }) => {
                    ma == m
                        && *l == ctx.comp_of[*k]
                        && ctx.eps.compare(&ctx.in_g(*k, 0), &ctx.in_h(*i, *l, 0)) == gt
                }
                // v_{kappa m} > v_{k m}
                (VG { k: kappa, m: ma }, VG { k, m }) => {
                    ma == m && ctx.eps.compare(&ctx.in_g(*kappa, 0), &ctx.in_g(*k, 0)) == gt
                }
                _ => false,
            };
            if required {
                edges[ai].push(bi);
            }
        }
    }
    // Kahn topological sort, breaking ties by rank of the index tuple so
    // the result is deterministic. Big elements first.
    let mut rank: Vec<usize> = (0..n).collect();
    rank.sort_by_key(|&i| unknowns[i].kind);
    let mut indeg = vec![0usize; n];
    for outs in &edges {
        for &b in outs {
            indeg[b] += 1;
        }
    }
    let mut ready: Vec<usize> = rank.iter().cloned().filter(|&i| indeg[i] == 0).collect();
    let mut used = vec![false; n];
    let mut prec: Vec<usize> = Vec::with_capacity(n);
    while let Some(pos) = ready.iter().position(|&i| !used[i]) {
        let i = ready[pos];
        ready.remove(pos);
        used[i] = true;
        prec.push(unknowns[i].var);
        for &b in &edges[i] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                // insert keeping the rank order
                let key = rank.iter().position(|&r| r == b).unwrap();
                let at = ready
                    .iter()
                    .position(|&r| rank.iter().position(|&x| x == r).unwrap() > key)
                    .unwrap_or(ready.len());
                ready.insert(at, b);
            }
        }
    }
    if prec.len() < n {
        // find one cycle among the leftover strongly connected part
        let leftover: Vec<usize> = (0..n).filter(|&i| !used[i]).collect();
        let cycle = find_cycle(&edges, &leftover)
            .into_iter()
            .map(|i| names(unknowns[i].var))
            .collect();
        return Err(Error::CycleError(cycle));
    }
    Ok(MonomialOrder::ZetaGraded { prec })
}

fn find_cycle(edges: &[Vec<usize>], nodes: &[usize]) -> Vec<usize> {
    // DFS restricted to `nodes`; return the first back-edge cycle found.
    let inset: std::collections::HashSet<usize> = nodes.iter().cloned().collect();
    let mut state = vec![0u8; edges.len()]; // 0 unseen, 1 on stack, 2 done
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(
        v: usize,
        edges: &[Vec<usize>],
        inset: &std::collections::HashSet<usize>,
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for &w in &edges[v] {
            if !inset.contains(&w) {
                continue;
            }
            if state[w] == 1 {
                let at = stack.iter().position(|&x| x == w).unwrap();
                return Some(stack[at..].to_vec());
            }
            if state[w] == 0 {
                if let Some(c) = dfs(w, edges, inset, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    for &v in nodes {
        if state[v] == 0 {
            if let Some(c) = dfs(v, edges, &inset, &mut state, &mut stack) {
                return c;
            }
        }
    }
    Vec::new()
}

/// The composite order: |gamma| first, then eps on (alpha, beta, component),
/// then zeta on gamma.
pub fn make_xi_order(
    zeta: MonomialOrder,
    eps: MonomialOrder,
    gamma_vars: Vec<usize>,
) -> MonomialOrder {
    MonomialOrder::Xi { gamma_vars, zeta: Box::new(zeta), eps: Box::new(eps) }
}

/// The scoped-division order for virtual bases.
pub fn make_omega_order(
    y_vars: Vec<usize>,
    xn: usize,
    xprime: Vec<usize>,
    u_vars: Vec<usize>,
    v_vars: Vec<usize>,
    d_by_comp: Vec<i64>,
) -> MonomialOrder {
    MonomialOrder::Omega { y_vars, xn, xprime, u_vars, v_vars, d_by_comp }
}
