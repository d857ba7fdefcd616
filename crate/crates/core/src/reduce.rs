//! Effective reduction of coded series modules: virtual bases with unknown
//! coefficients for the regular part, extraction and simplification of the
//! unknowns' defining equations, division with quotient recovery, and the
//! recursion over a quotient view handling the non-regular generators.

use crate::codes::{code_standard_basis, lift, FamilyCode};
use crate::divide::{formal_divide, janet_poly_divide, DivisionResult, Scope};
use crate::error::{Error, Result};
use crate::groebner::lazard_standard_basis;
use crate::monmod::decompose;
use crate::mora::{mora_weak_normal_form, mul_scalar};
use crate::order::{
    extend_order, initial_split, make_omega_order, make_xi_order, solve_zeta_constraints,
    MonomialOrder, Unknown, UnknownKind, ZetaContext,
};
use crate::poly::{Ambient, MonVec, PolyVec, Rat, VarImage};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Virtual basis of the regular part: one template per mother parameter and
/// component, one per father, all tails reduced against the covered region,
/// with leftover coefficients promoted to fresh parameters of a new mother
/// code.
#[derive(Debug, Clone)]
pub struct XnRegularReduced {
    /// x variables, then the input parameters, then the kept unknowns
    pub amb: Arc<Ambient>,
    pub n: usize,
    pub p_old: usize,
    pub n_new: usize,
    pub eta: MonomialOrder,
    /// extension of eta by every non-x variable of amb
    pub eps_all: MonomialOrder,
    pub omega: MonomialOrder,
    pub xi: MonomialOrder,
    /// input equations, then one equation per kept unknown
    pub mother: Vec<PolyVec>,
    /// normalized input fathers
    pub fathers: Vec<PolyVec>,
    /// (parameter index, component, template) with lead y_i e_l
    pub b_y: Vec<(usize, usize, PolyVec)>,
    /// template per father, lead x_n^{d_k} e_{c_k}
    pub b_x: Vec<PolyVec>,
    pub k_comp: Vec<usize>,
    pub k_deg: Vec<u32>,
}

impl XnRegularReduced {
    fn xn(&self) -> usize {
        self.n - 1
    }

    /// quotient scope of the template for y_i e_l: everything except the
    /// parameters above i
    fn scope_y(&self, i: usize) -> Scope {
        let mut mask = vec![true; self.amb.nvars()];
        for (slot, m) in mask.iter_mut().enumerate().take(self.n + self.p_old).skip(self.n) {
            *m = slot - self.n <= i;
        }
        Scope::Mask(mask)
    }

    /// quotient scope of a father template: everything except the input
    /// parameters
    fn scope_x(&self) -> Scope {
        let mut mask = vec![true; self.amb.nvars()];
        for m in mask.iter_mut().take(self.n + self.p_old).skip(self.n) {
            *m = false;
        }
        Scope::Mask(mask)
    }

    fn templates(&self) -> Vec<(PolyVec, Scope)> {
        let mut t: Vec<(PolyVec, Scope)> = self
            .b_y
            .iter()
            .map(|(i, _, b)| (b.clone(), self.scope_y(*i)))
            .collect();
        t.extend(self.b_x.iter().map(|b| (b.clone(), self.scope_x())));
        t
    }

    /// the family presenting the module by its reduced regular generators
    pub fn family(&self) -> Result<FamilyCode> {
        FamilyCode::new(
            self.amb.clone(),
            self.n,
            self.eta.clone(),
            self.mother.clone(),
            self.b_x.clone(),
        )
    }
}

struct BCirc {
    y: Vec<Vec<PolyVec>>, // [param][component]
    x: Vec<PolyVec>,      // [father]
}

impl PartialEq for BCirc {
    fn eq(&self, other: &Self) -> bool {
        self.y == other.y && self.x == other.x
    }
}

/// terms of a normal form that survive setting every variable except x_n to
/// zero, below the regular exponent of their component
fn bcirc_part(r: &PolyVec, xn: usize, deg_of_comp: &[Option<u32>]) -> PolyVec {
    let mut out = PolyVec::zero(&r.amb);
    for (m, c) in r.iter() {
        let pure = m.exps.iter().enumerate().all(|(i, e)| i == xn || *e == 0);
        if !pure {
            continue;
        }
        let ok = match deg_of_comp[m.comp] {
            Some(d) => m.exps[xn] < d,
            None => m.exps[xn] == 0,
        };
        if ok {
            out.add_term(m.clone(), c.clone());
        }
    }
    out
}

fn constant_slice_data(
    fc: &FamilyCode,
    fathers: &[PolyVec],
    k_comp: &[usize],
    k_deg: &[u32],
    d: u32,
) -> BCirc {
    let s = fc.amb.comps;
    let p = fc.mother.len();
    let xn = fc.n - 1;
    let mut deg_of_comp: Vec<Option<u32>> = vec![None; s];
    for (c, dk) in k_comp.iter().zip(k_deg) {
        deg_of_comp[*c] = Some(*dk);
    }
    let mut gens: Vec<PolyVec> = Vec::new();
    for h in &fc.mother {
        for l in 0..s {
            gens.push(h.into_component(&fc.amb, l));
        }
    }
    gens.extend(fathers.iter().cloned());
    let mut y = Vec::with_capacity(p);
    for i in 0..p {
        let mut row = Vec::with_capacity(s);
        for l in 0..s {
            let mut f = PolyVec::zero(&fc.amb);
            f.add_term(MonVec::var(fc.amb.nvars(), fc.n + i).in_comp(l), Rat::one());
            let r = formal_divide(&f, &gens, &fc.eps, d);
            row.push(bcirc_part(&r.remainder, xn, &deg_of_comp));
        }
        y.push(row);
    }
    let mut x = Vec::with_capacity(fathers.len());
    for (c, dk) in k_comp.iter().zip(k_deg) {
        let mut f = PolyVec::zero(&fc.amb);
        let mut mv = MonVec::one(fc.amb.nvars());
        mv.exps[xn] = *dk;
        mv.comp = *c;
        f.add_term(mv, Rat::one());
        let r = formal_divide(&f, &gens, &fc.eps, d);
        x.push(bcirc_part(&r.remainder, xn, &deg_of_comp));
    }
    BCirc { y, x }
}

/// substitute one variable by a scalar polynomial over the same ambient
fn subst_var(p: &PolyVec, var: usize, repl: &PolyVec) -> PolyVec {
    if p.iter().all(|(m, _)| m.exps[var] == 0) {
        return p.clone();
    }
    let images: Vec<VarImage> = (0..p.amb.nvars())
        .map(|i| if i == var { VarImage::Poly(repl.clone()) } else { VarImage::Var(i) })
        .collect();
    let comp_map: Vec<usize> = (0..p.amb.comps).collect();
    p.substitute(&p.amb, &images, &comp_map, None)
}

/// drop variables that no longer occur; panics if a dropped variable occurs
fn project(p: &PolyVec, map: &[Option<usize>], target: &Arc<Ambient>) -> PolyVec {
    let mut out = PolyVec::zero(target);
    for (m, c) in p.iter() {
        let mut exps = vec![0u32; target.nvars()];
        for (i, e) in m.exps.iter().enumerate() {
            if *e > 0 {
                let t = map[i].expect("projected variable still occurs");
                exps[t] = *e;
            }
        }
        out.add_term(MonVec { exps, comp: m.comp }, c.clone());
    }
    out
}

/// Reduced basis of a module whose standard basis generators all have pure
/// x_n-power initial vectors in distinct components.
pub fn reduce_xn_regular(fc: &FamilyCode) -> Result<XnRegularReduced> {
    eprintln!(
        "TRACE reduce_xn_regular: vars={:?} comps={} fathers={}",
        fc.amb.vars, fc.amb.comps, fc.fathers.len()
    );
    let s = fc.amb.comps;
    let n = fc.n;
    let xn = n - 1;
    let p = fc.mother.len();
    if fc.fathers.is_empty() {
        return Err(Error::Invariant("no generators".into()));
    }
    // normalized fathers, regular profile
    let mut fathers: Vec<PolyVec> = Vec::new();
    let mut k_comp: Vec<usize> = Vec::new();
    let mut k_deg: Vec<u32> = Vec::new();
    for g in &fc.fathers {
        let (m, scaled, _) =
            initial_split(g, &fc.eps).ok_or(Error::Invariant("zero generator".into()))?;
        let pure = m.exps.iter().enumerate().all(|(i, e)| i == xn || *e == 0);
        if !pure || k_comp.contains(&m.comp) {
            return Err(Error::NotXnRegular(
                "every generator must start with a pure power of the last variable in a fresh component".into(),
            ));
        }
        k_comp.push(m.comp);
        k_deg.push(m.exps[xn]);
        fathers.push(scaled);
    }
    let r = fathers.len();
    let mut deg_of_comp: Vec<Option<u32>> = vec![None; s];
    for (c, d) in k_comp.iter().zip(&k_deg) {
        deg_of_comp[*c] = Some(*d);
    }
    // constant-slice coefficients, with a stabilization check
    let d0 = fathers
        .iter()
        .chain(fc.mother.iter())
        .map(|g| g.total_deg())
        .max()
        .unwrap_or(0)
        + k_deg.iter().max().copied().unwrap_or(0)
        + 2;
    eprintln!("TRACE   constant slice at d0={d0}");
    let bc = constant_slice_data(fc, &fathers, &k_comp, &k_deg, d0);
    let bc2 = constant_slice_data(fc, &fathers, &k_comp, &k_deg, 2 * d0);
    eprintln!("TRACE   constant slice done");
    if bc != bc2 {
        return Err(Error::Unstable("constant slice coefficients did not stabilize".into()));
    }
    // registry of unknown coefficients; with no x' variables the series
    // unknowns over x' are constants vanishing at the origin, hence zero
    let pin_u = n == 1;
    let mut kinds: Vec<UnknownKind> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    for i in 0..p {
        for l in 0..s {
            if deg_of_comp[l].is_some() {
                if !pin_u {
                    for (k, (mc, dc)) in k_comp.iter().zip(&k_deg).enumerate() {
                        let _ = k;
                        for j in 0..*dc {
                            kinds.push(UnknownKind::UH { i, l, m: *mc, j });
                            names.push(format!("uh{}_{}_{}_{}", i + 1, l + 1, mc + 1, j));
                        }
                    }
                }
                for m in 0..s {
                    if deg_of_comp[m].is_none() {
                        kinds.push(UnknownKind::VH { i, l, m });
                        names.push(format!("vh{}_{}_{}", i + 1, l + 1, m + 1));
                    }
                }
            } else {
                kinds.push(UnknownKind::VH { i, l, m: l });
                names.push(format!("vh{}_{}_{}", i + 1, l + 1, l + 1));
            }
        }
    }
    for k in 0..r {
        if !pin_u {
            for (mc, dc) in k_comp.iter().zip(&k_deg) {
                for j in 0..*dc {
                    kinds.push(UnknownKind::UG { k, m: *mc, j });
                    names.push(format!("ug{}_{}_{}", k + 1, mc + 1, j));
                }
            }
        }
        for m in 0..s {
            if deg_of_comp[m].is_none() {
                kinds.push(UnknownKind::VG { k, m });
                names.push(format!("vg{}_{}", k + 1, m + 1));
            }
        }
    }
    // working ambient
    let mut wvars = fc.amb.vars.clone();
    wvars.extend(names.iter().cloned());
    let wamb = Ambient::new(wvars, s);
    let q0 = fc.amb.nvars();
    let var_of = |u: usize| q0 + u; // registry index -> working variable
    let wlift = |g: &PolyVec| lift(g, &wamb);
    let wsamb = Ambient::scalar(wamb.vars.clone());
    let mother_w: Vec<PolyVec> = fc.mother.iter().map(|h| lift(h, &wsamb)).collect();
    let fathers_w: Vec<PolyVec> = fathers.iter().map(&wlift).collect();
    // templates
    let unknown_term = |kind: &UnknownKind, u: usize| -> PolyVec {
        let (m, j) = match kind {
            UnknownKind::UH { m, j, .. } => (*m, *j),
            UnknownKind::UG { m, j, .. } => (*m, *j),
            UnknownKind::VH { m, .. } => (*m, 0),
            UnknownKind::VG { m, .. } => (*m, 0),
        };
        let mut t = PolyVec::zero(&wamb);
        let mut mv = MonVec::one(wamb.nvars());
        mv.exps[var_of(u)] = 1;
        mv.exps[xn] = j;
        mv.comp = m;
        t.add_term(mv, Rat::one());
        t
    };
    let owner = |kind: &UnknownKind| -> (bool, usize, usize) {
        // (is_father_template, i-or-k, l)
        match kind {
            UnknownKind::UH { i, l, .. } | UnknownKind::VH { i, l, .. } => (false, *i, *l),
            UnknownKind::UG { k, .. } | UnknownKind::VG { k, .. } => (true, *k, 0),
        }
    };
    let mut b_y: BTreeMap<(usize, usize), PolyVec> = BTreeMap::new();
    for i in 0..p {
        for l in 0..s {
            let mut b = PolyVec::zero(&wamb);
            b.add_term(MonVec::var(wamb.nvars(), n + i).in_comp(l), Rat::one());
            b = b.sub(&wlift(&bc.y[i][l]));
            b_y.insert((i, l), b);
        }
    }
    let mut b_x: Vec<PolyVec> = Vec::with_capacity(r);
    for k in 0..r {
        let mut b = PolyVec::zero(&wamb);
        let mut mv = MonVec::one(wamb.nvars());
        mv.exps[xn] = k_deg[k];
        mv.comp = k_comp[k];
        b.add_term(mv, Rat::one());
        b_x.push(b.sub(&wlift(&bc.x[k])));
    }
    for (u, kind) in kinds.iter().enumerate() {
        let t = unknown_term(kind, u);
        match owner(kind) {
            (false, i, l) => {
                let b = b_y.get_mut(&(i, l)).unwrap();
                *b = b.sub(&t);
            }
            (true, k, _) => b_x[k] = b_x[k].sub(&t),
        }
    }
    // scoped division order
    let y_vars: Vec<usize> = (n..n + p).collect();
    let xprime: Vec<usize> = (0..xn).collect();
    let u_vars: Vec<usize> = kinds
        .iter()
        .enumerate()
        .filter(|(_, k)| matches!(k, UnknownKind::UH { .. } | UnknownKind::UG { .. }))
        .map(|(u, _)| var_of(u))
        .collect();
    let v_vars: Vec<usize> = kinds
        .iter()
        .enumerate()
        .filter(|(_, k)| matches!(k, UnknownKind::VH { .. } | UnknownKind::VG { .. }))
        .map(|(u, _)| var_of(u))
        .collect();
    // components without a generator get a shift beyond every d_k so that
    // their terms sort below the distinguished leads regardless of index
    let d_unreg = k_deg.iter().max().copied().unwrap_or(0) as i64 + 1;
    let d_by_comp: Vec<i64> =
        deg_of_comp.iter().map(|d| d.map(|x| x as i64).unwrap_or(d_unreg)).collect();
    let omega_w =
        make_omega_order(y_vars.clone(), xn, xprime, u_vars.clone(), v_vars.clone(), d_by_comp);
    // scoped division of the module generators by the templates
    let scope_y_w = |i: usize| -> Scope {
        let mut mask = vec![true; wamb.nvars()];
        for (slot, m) in mask.iter_mut().enumerate().take(n + p).skip(n) {
            *m = slot - n <= i;
        }
        Scope::Mask(mask)
    };
    let scope_x_w = {
        let mut mask = vec![true; wamb.nvars()];
        for m in mask.iter_mut().take(n + p).skip(n) {
            *m = false;
        }
        Scope::Mask(mask)
    };
    let mut templates: Vec<(PolyVec, Scope)> = Vec::new();
    for ((i, _), b) in &b_y {
        templates.push((b.clone(), scope_y_w(*i)));
    }
    for b in &b_x {
        templates.push((b.clone(), scope_x_w.clone()));
    }
    // one equation per unknown, read off the remainder slots
    let mut eq_of: Vec<Option<PolyVec>> = vec![None; kinds.len()];
    let samb = Ambient::scalar(wamb.vars.clone());
    let mut remainders: BTreeMap<(bool, usize, usize), PolyVec> = BTreeMap::new();
    eprintln!("TRACE   scoped divisions: {} unknowns", kinds.len());
    for (i, h) in mother_w.iter().enumerate() {
        for l in 0..s {
            let div = janet_poly_divide(&h.into_component(&wamb, l), &templates, &omega_w)?;
            remainders.insert((false, i, l), div.remainder);
        }
    }
    eprintln!("TRACE   scoped divisions done");
    for (k, g) in fathers_w.iter().enumerate() {
        let div = janet_poly_divide(g, &templates, &omega_w)?;
        remainders.insert((true, k, 0), div.remainder);
    }
    eprintln!("TRACE   father divisions done");
    for (u, kind) in kinds.iter().enumerate() {
        let key = owner(kind);
        let rem = remainders.get(&key).unwrap();
        let mut eq = PolyVec::zero(&samb);
        for (m, c) in rem.iter() {
            let claim = match kind {
                UnknownKind::UH { m: mc, j, .. } | UnknownKind::UG { m: mc, j, .. } => {
                    m.comp == *mc && m.exps[xn] == *j
                }
                UnknownKind::VH { m: mc, .. } | UnknownKind::VG { m: mc, .. } => m.comp == *mc,
            };
            if claim {
                let mut exps = m.exps.clone();
                if matches!(kind, UnknownKind::UH { .. } | UnknownKind::UG { .. }) {
                    exps[xn] = 0;
                }
                eq.add_term(MonVec { exps, comp: 0 }, c.clone());
            }
        }
        eq_of[u] = Some(eq);
    }
    // slots without an unknown must vanish
    for ((is_g, a, l), rem) in &remainders {
        for (m, c) in rem.iter() {
            let claimed = kinds.iter().any(|kind| {
                owner(kind) == (*is_g, *a, *l)
                    && match kind {
                        UnknownKind::UH { m: mc, j, .. } | UnknownKind::UG { m: mc, j, .. } => {
                            m.comp == *mc && m.exps[xn] == *j
                        }
                        UnknownKind::VH { m: mc, .. } | UnknownKind::VG { m: mc, .. } => {
                            m.comp == *mc
                        }
                    }
            });
            if !claimed && !c.is_zero() {
                return Err(Error::Invariant(format!(
                    "unclaimed remainder term {} in slot ({},{},{}) [k_comp={:?} k_deg={:?} rem={}]",
                    crate::text::render_monvec(m, &wamb),
                    is_g, a, l, k_comp, k_deg,
                    crate::text::render_poly(rem, None)
                )));
            }
        }
    }
    let mut eqs: Vec<(usize, PolyVec)> =
        eq_of.into_iter().enumerate().map(|(u, e)| (u, e.unwrap())).collect();
    // sanity: no input parameters, no constant term
    for (_, e) in &eqs {
        if !e.constant_term(0).is_zero() {
            return Err(Error::Invariant("equation with constant term".into()));
        }
        if e.iter().any(|(m, _)| y_vars.iter().any(|&v| m.exps[v] > 0)) {
            return Err(Error::Invariant("equation involves an input parameter".into()));
        }
    }
    // precedence order on the unknowns and its composite with the ambient
    // order; the linear parts must be headed by the matching unknown
    let zeta = {
        let ctx = ZetaContext {
            eps: &fc.eps,
            nvars: wamb.nvars(),
            y_vars: &y_vars,
            xn,
            d_list: &k_deg,
            comp_of: &k_comp,
        };
        let unknowns: Vec<Unknown> = kinds
            .iter()
            .enumerate()
            .map(|(u, kind)| Unknown { var: var_of(u), kind: *kind })
            .collect();
        let name_of = |v: usize| wamb.vars[v].clone();
        solve_zeta_constraints(&ctx, &unknowns, &name_of)?
    };
    let gamma_vars: Vec<usize> = (q0..wamb.nvars()).collect();
    let xi_w = make_xi_order(zeta, fc.eps.clone(), gamma_vars.clone());
    for (u, e) in &eqs {
        let mut linear: Vec<&MonVec> = e
            .iter()
            .filter(|(m, _)| {
                m.deg() == 1 && gamma_vars.iter().any(|&v| m.exps[v] == 1)
            })
            .map(|(m, _)| m)
            .collect();
        if linear.is_empty() {
            return Err(Error::Invariant("equation without linear unknown part".into()));
        }
        linear.sort_by(|a, b| xi_w.compare(a, b));
        if linear[0].exps[var_of(*u)] != 1 {
            return Err(Error::Invariant(format!(
                "equation for {} headed by {}",
                wamb.vars[var_of(*u)],
                crate::text::render_monvec(linear[0], &wamb)
            )));
        }
    }
    // simplification: solve off unknowns that are forced to zero or appear
    // in a single linear term with constant coefficient
    let mut solved: Vec<Option<PolyVec>> = vec![None; kinds.len()];
    let apply_subst = |eqs: &mut Vec<(usize, PolyVec)>,
                       b_y: &mut BTreeMap<(usize, usize), PolyVec>,
                       b_x: &mut Vec<PolyVec>,
                       solved: &mut Vec<Option<PolyVec>>,
                       var: usize,
                       repl: &PolyVec| {
        for (_, e) in eqs.iter_mut() {
            *e = subst_var(e, var, repl);
        }
        for b in b_y.values_mut() {
            *b = subst_var(b, var, repl);
        }
        for b in b_x.iter_mut() {
            *b = subst_var(b, var, repl);
        }
        for sol in solved.iter_mut().flatten() {
            *sol = subst_var(sol, var, repl);
        }
    };
    loop {
        // a set of unknowns whose equations each carry a set member in every
        // term solves to zero: plugging in zero satisfies those equations
        // identically, and the full solution is unique
        let mut in_set = vec![false; kinds.len()];
        for (u, _) in &eqs {
            in_set[*u] = true;
        }
        loop {
            let mut changed = false;
            for (u, e) in &eqs {
                if !in_set[*u] {
                    continue;
                }
                let ok = e.iter().all(|(m, _)| {
                    (0..kinds.len()).any(|w| in_set[w] && m.exps[var_of(w)] > 0)
                });
                if !ok {
                    in_set[*u] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if in_set.iter().any(|&b| b) {
            for w in 0..kinds.len() {
                if !in_set[w] {
                    continue;
                }
                let slot = eqs.iter().position(|(u, _)| *u == w).unwrap();
                eqs.remove(slot);
                solved[w] = Some(PolyVec::zero(&samb));
                apply_subst(
                    &mut eqs,
                    &mut b_y,
                    &mut b_x,
                    &mut solved,
                    var_of(w),
                    &PolyVec::zero(&samb),
                );
            }
            continue;
        }
        let mut action: Option<(usize, usize, PolyVec)> = None; // (eq slot, var, value)
        'search: for (slot, (u, e)) in eqs.iter().enumerate() {
            if e.is_zero() {
                return Err(Error::Invariant("degenerate equation".into()));
            }
            // a factored unknown with unit cofactor forces zero
            for w in 0..kinds.len() {
                if solved[w].is_some() {
                    continue;
                }
                let v = var_of(w);
                if e.iter().all(|(m, _)| m.exps[v] >= 1) {
                    let mut q = PolyVec::zero(&samb);
                    for (m, c) in e.iter() {
                        let mut exps = m.exps.clone();
                        exps[v] -= 1;
                        q.add_term(MonVec { exps, comp: 0 }, c.clone());
                    }
                    if !q.constant_term(0).is_zero() {
                        action = Some((slot, v, PolyVec::zero(&samb)));
                        break 'search;
                    }
                }
            }
            // a single pure linear occurrence solves the unknown
            let mut cands: Vec<usize> = vec![var_of(*u)];
            cands.extend((0..kinds.len()).filter(|w| solved[*w].is_none()).map(var_of));
            for v in cands {
                let occ: Vec<(&MonVec, &Rat)> =
                    e.iter().filter(|(m, _)| m.exps[v] > 0).collect();
                if occ.len() == 1 && occ[0].0.deg() == 1 && occ[0].0.exps[v] == 1 {
                    let c = occ[0].1.clone();
                    let mut rest = e.clone();
                    rest.add_term(occ[0].0.clone(), -c.clone());
                    let val = rest.scale(&(-Rat::one() / c));
                    action = Some((slot, v, val));
                    break 'search;
                }
            }
        }
        let Some((slot, v, val)) = action else {
            break;
        };
        eprintln!("TRACE   solving off {}", wamb.vars[v]);
        eqs.remove(slot);
        let w = v - q0;
        solved[w] = Some(val.clone());
        apply_subst(&mut eqs, &mut b_y, &mut b_x, &mut solved, v, &val);
    }
    // final ambient: drop solved unknowns, rename the kept ones
    let kept: Vec<usize> = (0..kinds.len()).filter(|w| solved[*w].is_none()).collect();
    let mut out_vars = fc.amb.vars.clone();
    // new names must clear every t-number already in scope, including those
    // of ancestor levels whose parameters were dropped from this ambient
    let mut fresh = 1 + out_vars
        .iter()
        .filter_map(|v| v.strip_prefix('t').and_then(|s| s.parse::<usize>().ok()))
        .max()
        .unwrap_or(0);
    for _ in &kept {
        let name = loop {
            let cand = format!("t{fresh}");
            fresh += 1;
            if !out_vars.contains(&cand) {
                break cand;
            }
        };
        out_vars.push(name);
    }
    let amb_out = Ambient::new(out_vars, s);
    let mut vmap: Vec<Option<usize>> = (0..q0).map(Some).collect();
    vmap.extend(vec![None; kinds.len()]);
    for (slot, w) in kept.iter().enumerate() {
        vmap[q0 + w] = Some(q0 + slot);
    }
    let pr = |g: &PolyVec| project(g, &vmap, &amb_out);
    let samb_out = Ambient::scalar(amb_out.vars.clone());
    let prs = |g: &PolyVec| project(g, &vmap, &samb_out);
    let mut mother: Vec<PolyVec> = fc.mother.iter().map(|h| lift(h, &samb_out)).collect();
    // the remaining equations become the mother code of the kept unknowns;
    // the pairing is fixed up by the Jacobian normalization
    if eqs.len() != kept.len() {
        return Err(Error::Invariant("unknown and equation counts differ".into()));
    }
    for (_, e) in &eqs {
        mother.push(prs(e));
    }
    let n_new = kept.len();
    let p_all: Vec<usize> = (n..q0 + n_new).collect();
    let eps_all = extend_order(&fc.eta, &p_all);
    let omega = make_omega_order(
        (n..n + p).collect(),
        xn,
        (0..xn).collect(),
        u_vars.iter().filter_map(|&v| vmap[v]).collect(),
        v_vars.iter().filter_map(|&v| vmap[v]).collect(),
        deg_of_comp.iter().map(|d| d.map(|x| x as i64).unwrap_or(d_unreg)).collect(),
    );
    let xi = {
        let MonomialOrder::Xi { zeta, eps, .. } = &xi_w else { unreachable!() };
        // the zeta precedence keeps only surviving unknowns
        let MonomialOrder::ZetaGraded { prec } = zeta.as_ref() else { unreachable!() };
        let prec: Vec<usize> = prec.iter().filter_map(|&v| vmap[v]).collect();
        make_xi_order(
            MonomialOrder::ZetaGraded { prec },
            eps.as_ref().clone(),
            (q0..q0 + n_new).collect(),
        )
    };
    let reduced = XnRegularReduced {
        amb: amb_out.clone(),
        n,
        p_old: p,
        n_new,
        eta: fc.eta.clone(),
        eps_all,
        omega,
        xi,
        mother,
        fathers: fathers_w.iter().map(&pr).collect(),
        b_y: b_y.into_iter().map(|((i, l), b)| (i, l, pr(&b))).collect(),
        b_x: b_x.iter().map(&pr).collect(),
        k_comp,
        k_deg,
    };
    // the new equations must again present an invertible system
    eprintln!("TRACE   assembling reduced family ({} kept unknowns)", n_new);
    reduced.family()?;
    eprintln!("TRACE   reduce_xn_regular done");
    Ok(reduced)
}

/// Division of one vector by the virtual basis, with quotient recovery on
/// the father templates: quotients come out as fractions num/den where den
/// is a unit accumulating the expression denominators of the parameter
/// templates in the module they span.
#[derive(Debug, Clone)]
pub struct DividendResult {
    pub den: PolyVec,
    pub quotients: Vec<PolyVec>,
    pub remainder: PolyVec,
}

pub fn divide_with_templates(rb: &XnRegularReduced, f: &PolyVec) -> Result<DividendResult> {
    let templates = rb.templates();
    eprintln!("TRACE divide_with_templates: janet divide ({} vars)", rb.amb.nvars());
    let div: DivisionResult = janet_poly_divide(f, &templates, &rb.omega)?;
    eprintln!("TRACE   janet divide done");
    let ny = rb.b_y.len();
    let samb = Ambient::scalar(rb.amb.vars.clone());
    let mut den = PolyVec::constant(&samb, Rat::one());
    let mut nums: Vec<PolyVec> = div.quotients[ny..]
        .iter()
        .map(|q| lift(q, &samb))
        .collect();
    // mother multipliers per (equation, component) for the exactness check
    let mut mm: BTreeMap<(usize, usize), PolyVec> = BTreeMap::new();
    for (slot, (i, l, b)) in rb.b_y.iter().enumerate() {
        let a_il = &div.quotients[slot];
        if a_il.is_zero() {
            continue;
        }
        let _ = i;
        // express the parameter template inside the module spanned by the
        // father templates and the mother equation multiples in component l
        let mut gens: Vec<PolyVec> = rb.b_x.clone();
        for h in &rb.mother {
            gens.push(h.into_component(&rb.amb, *l));
        }
        // first try the generators as they stand; fall back to a tracked
        // standard basis only when the direct reduction leaves a remainder
        eprintln!("TRACE   express slot {}", slot);
        let direct = mora_weak_normal_form(b, &gens, &rb.eps_all);
        let (unit, w_gens) = if direct.remainder.is_zero() {
            debug_assert!(direct.defect(b, &gens).is_zero());
            (direct.unit, direct.multipliers)
        } else {
            eprintln!("TRACE   express fallback (lazard) slot {}", slot);
            let (sb, reprs) = lazard_standard_basis(&gens, &rb.eps_all, true);
            let reprs = reprs.unwrap();
            let wnf = mora_weak_normal_form(b, &sb, &rb.eps_all);
            if !wnf.remainder.is_zero() {
                return Err(Error::NonzeroExpressRemainder(
                    "dividend template is not inside the father module".into(),
                ));
            }
            debug_assert!(wnf.defect(b, &sb).is_zero());
            let mut w_gens: Vec<PolyVec> = vec![PolyVec::zero(&samb); gens.len()];
            for (wb, row) in wnf.multipliers.iter().zip(&reprs) {
                if wb.is_zero() {
                    continue;
                }
                for (wg, rg) in w_gens.iter_mut().zip(row) {
                    *wg = wg.add(&mul_scalar(wb, rg));
                }
            }
            (wnf.unit, w_gens)
        };
        let s_il = lift(&unit, &samb);
        let a_il = lift(a_il, &samb);
        for (num, wk) in nums.iter_mut().zip(&w_gens) {
            *num = mul_scalar(&s_il, num).add(&mul_scalar(&a_il, &mul_scalar(wk, &den)));
        }
        for (e, _) in rb.mother.iter().enumerate() {
            let wg = &w_gens[rb.b_x.len() + e];
            if wg.is_zero() && !mm.contains_key(&(e, *l)) {
                continue;
            }
            let cur = mm.entry((e, *l)).or_insert_with(|| PolyVec::zero(&samb));
            *cur = mul_scalar(&s_il, cur).add(&mul_scalar(&a_il, &mul_scalar(wg, &den)));
        }
        for ((_, lm), cur) in mm.iter_mut() {
            if *lm != *l {
                *cur = mul_scalar(&s_il, cur);
            }
        }
        den = mul_scalar(&s_il, &den);
    }
    // unit-cleared identity: den*f = sum num_k*B_k + sum mm*(H_e e_l) + den*C
    let mut check = mul_scalar(&den, f);
    for (num, b) in nums.iter().zip(&rb.b_x) {
        check = check.sub(&mul_scalar(num, b));
    }
    for ((e, l), m) in &mm {
        check = check.sub(&mul_scalar(m, &rb.mother[*e].into_component(&rb.amb, *l)));
    }
    check = check.sub(&mul_scalar(&den, &div.remainder));
    if !check.is_zero() {
        return Err(Error::Invariant("division identity failed".into()));
    }
    Ok(DividendResult { den, quotients: nums, remainder: div.remainder })
}

/// merge the mother codes of two families by parameter name
fn merge_families(basis: &FamilyCode, dividend: &FamilyCode) -> Result<FamilyCode> {
    if basis.amb.vars[..basis.n] != dividend.amb.vars[..dividend.n]
        || basis.amb.comps != dividend.amb.comps
    {
        return Err(Error::AmbientMismatch("dividend lives in a different ambient".into()));
    }
    let mut vars = basis.amb.vars.clone();
    for pv in &dividend.amb.vars[dividend.n..] {
        if !vars.contains(pv) {
            vars.push(pv.clone());
        }
    }
    let amb = Ambient::new(vars, basis.amb.comps);
    let samb = Ambient::scalar(amb.vars.clone());
    let mut mother: Vec<PolyVec> = basis.mother.iter().map(|h| lift(h, &samb)).collect();
    for (slot, pv) in dividend.amb.vars[dividend.n..].iter().enumerate() {
        let eq = lift(&dividend.mother[slot], &samb);
        match basis.amb.vars[basis.n..].iter().position(|w| w == pv) {
            Some(old) => {
                if mother[old] != eq {
                    return Err(Error::InvalidMotherCode(format!(
                        "conflicting equations for parameter {pv}"
                    )));
                }
            }
            None => mother.push(eq),
        }
    }
    let fathers = basis.fathers.iter().map(|g| lift(g, &amb)).collect();
    FamilyCode::new(amb, basis.n, basis.eta.clone(), mother, fathers)
}

/// Divide the fathers of `dividend_fc` by the regular-part reduced basis of
/// `basis_fc`, after merging the two mother codes.
pub fn divide_xn_regular(
    dividend_fc: &FamilyCode,
    basis_fc: &FamilyCode,
) -> Result<(XnRegularReduced, Vec<DividendResult>)> {
    let merged = merge_families(basis_fc, dividend_fc)?;
    let rb = reduce_xn_regular(&merged)?;
    let mut out = Vec::new();
    for f in &dividend_fc.fathers {
        out.push(divide_with_templates(&rb, &lift(f, &rb.amb))?);
    }
    Ok((rb, out))
}

/// Translation between a level and the module over one fewer variable whose
/// components are the x_n-slices not covered by the regular part.
#[derive(Debug, Clone)]
pub struct QuotientView {
    pub xn_name: String,
    pub n: usize,
    /// sub component -> (original component, x_n exponent)
    pub blocks: Vec<(usize, u32)>,
}

impl QuotientView {
    pub fn block_of(&self, comp: usize, j: u32) -> Option<usize> {
        self.blocks.iter().position(|b| *b == (comp, j))
    }

    /// map into the sub ambient; every term must land in a block
    pub fn to_sub(&self, p: &PolyVec, target: &Arc<Ambient>) -> Result<PolyVec> {
        let src = &p.amb;
        let xn = src.vars.iter().position(|v| *v == self.xn_name).unwrap();
        let map: Vec<Option<usize>> = src
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == xn {
                    None
                } else {
                    target.vars.iter().position(|w| w == v)
                }
            })
            .collect();
        let mut out = PolyVec::zero(target);
        for (m, c) in p.iter() {
            let block = self
                .block_of(m.comp, m.exps[xn])
                .ok_or_else(|| Error::Invariant("term outside the quotient view".into()))?;
            let mut exps = vec![0u32; target.nvars()];
            for (i, e) in m.exps.iter().enumerate() {
                if i == xn || *e == 0 {
                    continue;
                }
                exps[map[i].ok_or_else(|| {
                    Error::Invariant("variable missing from the quotient view".into())
                })?] = *e;
            }
            out.add_term(MonVec { exps, comp: block }, c.clone());
        }
        Ok(out)
    }

    /// map back from the sub ambient
    pub fn to_orig(&self, p: &PolyVec, target: &Arc<Ambient>) -> PolyVec {
        let src = &p.amb;
        let xn = target.vars.iter().position(|v| *v == self.xn_name).unwrap();
        let map: Vec<usize> = src
            .vars
            .iter()
            .map(|v| target.vars.iter().position(|w| w == v).expect("missing variable"))
            .collect();
        let mut out = PolyVec::zero(target);
        for (m, c) in p.iter() {
            let (comp, j) = self.blocks[m.comp];
            let mut exps = vec![0u32; target.nvars()];
            for (i, e) in m.exps.iter().enumerate() {
                exps[map[i]] += e;
            }
            exps[xn] += j;
            out.add_term(MonVec { exps, comp }, c.clone());
        }
        out
    }
}

/// Reduced basis of a general module: standard basis, box condition check,
/// virtual basis of the regular part, then recursion over the quotient view
/// on the reduced non-regular generators.
///
/// `rb` holds the level's templates with tails already reduced against the
/// sub basis, over an ambient carrying every parameter of the subtree, so
/// divisions down the tree report quotients against the published basis.
#[derive(Debug, Clone)]
pub struct GeneralBasis {
    pub rb: XnRegularReduced,
    pub view: Option<QuotientView>,
    pub sub: Option<Box<GeneralBasis>>,
    /// final reduced family at this level, unused parameters pruned
    pub fc_out: FamilyCode,
}

pub fn reduced_basis_general(fc: &FamilyCode) -> Result<GeneralBasis> {
    eprintln!("TRACE reduced_basis_general: standard basis ({} vars)", fc.amb.nvars());
    let sb = code_standard_basis(fc)?;
    eprintln!("TRACE   standard basis done ({} fathers)", sb.fathers.len());
    let xn = sb.n - 1;
    // box condition on the initial module
    let inits: Vec<MonVec> = crate::codes::initial_module(&sb);
    let xinits: Vec<MonVec> = inits
        .iter()
        .map(|m| MonVec { exps: m.exps[..sb.n].to_vec(), comp: m.comp })
        .collect();
    let xamb = Ambient::new(sb.amb.vars[..sb.n].to_vec(), sb.amb.comps);
    decompose(&xamb, &xinits)?;
    let mut regular: Vec<PolyVec> = Vec::new();
    let mut rest: Vec<PolyVec> = Vec::new();
    for (g, m) in sb.fathers.iter().zip(&inits) {
        if m.exps.iter().enumerate().all(|(i, e)| i == xn || *e == 0) {
            regular.push(g.clone());
        } else {
            rest.push(g.clone());
        }
    }
    if regular.is_empty() {
        return Err(Error::BoxConditionFailed {
            witness: String::new(),
            component: 0,
            variable: sb.amb.vars[xn].clone(),
        });
    }
    let fc0 = FamilyCode::new(
        sb.amb.clone(),
        sb.n,
        sb.eta.clone(),
        sb.mother.clone(),
        regular,
    )?;
    let rb = reduce_xn_regular(&fc0)?;
    if rest.is_empty() {
        let fc_out = prune_params(&rb.family()?)?;
        return Ok(GeneralBasis { rb, view: None, sub: None, fc_out });
    }
    // reduce the remaining generators against the regular part
    let mut reduced_rest: Vec<PolyVec> = Vec::new();
    for g in &rest {
        let r = reduce_with_templates(&rb, &lift(g, &rb.amb))?;
        if !r.is_zero() {
            reduced_rest.push(r);
        }
    }
    if reduced_rest.is_empty() {
        let fc_out = prune_params(&rb.family()?)?;
        return Ok(GeneralBasis { rb, view: None, sub: None, fc_out });
    }
    let xn = rb.xn();
    let x_lead = |amb: &Arc<Ambient>, k: usize| -> PolyVec {
        let mut lead = PolyVec::zero(amb);
        let mut mv = MonVec::one(amb.nvars());
        mv.exps[xn] = rb.k_deg[k];
        mv.comp = rb.k_comp[k];
        lead.add_term(mv, Rat::one());
        lead
    };
    let y_lead = |amb: &Arc<Ambient>, i: usize, l: usize| -> PolyVec {
        let mut lead = PolyVec::zero(amb);
        lead.add_term(MonVec::var(amb.nvars(), rb.n + i).in_comp(l), Rat::one());
        lead
    };
    let x_tails: Vec<PolyVec> =
        rb.b_x.iter().enumerate().map(|(k, b)| x_lead(&rb.amb, k).sub(b)).collect();
    let y_tails: Vec<PolyVec> =
        rb.b_y.iter().map(|(i, l, b)| y_lead(&rb.amb, *i, *l).sub(b)).collect();
    // quotient view: one component per x_n-slice outside the regular part
    let mut deg_of_comp: Vec<Option<u32>> = vec![None; rb.amb.comps];
    for (c, d) in rb.k_comp.iter().zip(&rb.k_deg) {
        deg_of_comp[*c] = Some(*d);
    }
    let mut blocks: Vec<(usize, u32)> = Vec::new();
    for (c, d) in deg_of_comp.iter().enumerate() {
        if let Some(d) = d {
            for j in 0..*d {
                blocks.push((c, j));
            }
        }
    }
    for p in reduced_rest.iter().chain(&x_tails).chain(&y_tails) {
        for (m, _) in p.iter() {
            if deg_of_comp[m.comp].is_none() && !blocks.contains(&(m.comp, m.exps[xn])) {
                blocks.push((m.comp, m.exps[xn]));
            }
        }
    }
    blocks.sort();
    let view = QuotientView { xn_name: rb.amb.vars[xn].clone(), n: rb.n, blocks };
    // sub ambient: the first n-1 variables, the kept unknowns as parameters
    let mut sub_vars: Vec<String> = rb.amb.vars[..rb.n - 1].to_vec();
    sub_vars.extend(rb.amb.vars[rb.n + rb.p_old..].iter().cloned());
    let sub_amb = Ambient::new(sub_vars, view.blocks.len());
    let sub_eta = MonomialOrder::Induced {
        base: Box::new(rb.eta.clone()),
        var_map: (0..rb.n - 1).map(Some).collect(),
        block_exps: view
            .blocks
            .iter()
            .map(|(_, j)| {
                let mut e = vec![0u32; rb.amb.nvars()];
                e[xn] = *j;
                e
            })
            .collect(),
        block_comp: view.blocks.iter().map(|(c, _)| *c).collect(),
        orig_nvars: rb.amb.nvars(),
    };
    let sub_samb = Ambient::scalar(sub_amb.vars.clone());
    let sub_mother: Vec<PolyVec> =
        rb.mother[rb.p_old..].iter().map(|h| lift(h, &sub_samb)).collect();
    let sub_fathers: Result<Vec<PolyVec>> =
        reduced_rest.iter().map(|g| view.to_sub(g, &sub_amb)).collect();
    let sub_fc =
        FamilyCode::new(sub_amb.clone(), rb.n - 1, sub_eta, sub_mother, sub_fathers?)?;
    for g in &sub_fc.fathers {
        eprintln!("TRACE   sub father: {}", crate::text::render_poly(g, None));
    }
    for h in &sub_fc.mother {
        eprintln!("TRACE   sub mother: {}", crate::text::render_poly(h, None));
    }
    let sub_gb = reduced_basis_general(&sub_fc)?;
    // ambient carrying every parameter of the subtree
    let mut full_vars = rb.amb.vars.clone();
    for v in &sub_gb.rb.amb.vars[sub_gb.rb.n..] {
        if !full_vars.contains(v) {
            full_vars.push(v.clone());
        }
    }
    let amb_full = Ambient::new(full_vars, rb.amb.comps);
    let samb_full = Ambient::scalar(amb_full.vars.clone());
    let mut mother_full: Vec<PolyVec> =
        rb.mother.iter().map(|h| lift(h, &samb_full)).collect();
    for eq in &sub_gb.rb.mother[sub_gb.rb.p_old..] {
        mother_full.push(lift(eq, &samb_full));
    }
    // reduce the template tails against the sub basis; remainders stay
    // denominator free, only quotients pick up units
    let reduce_tail = |tail: &PolyVec| -> Result<PolyVec> {
        if tail.is_zero() {
            return Ok(lift(tail, &amb_full));
        }
        let mapped = view.to_sub(tail, &sub_gb.rb.amb)?;
        let r = reduce_with_tree(&sub_gb, &mapped)?;
        Ok(view.to_orig(&r, &amb_full))
    };
    eprintln!("TRACE   reducing template tails against the sub basis");
    let b_x_final: Vec<PolyVec> = x_tails
        .iter()
        .enumerate()
        .map(|(k, t)| Ok(x_lead(&amb_full, k).sub(&reduce_tail(t)?)))
        .collect::<Result<_>>()?;
    let b_y_final: Vec<(usize, usize, PolyVec)> = rb
        .b_y
        .iter()
        .zip(&y_tails)
        .map(|((i, l, _), t)| Ok((*i, *l, y_lead(&amb_full, *i, *l).sub(&reduce_tail(t)?))))
        .collect::<Result<_>>()?;
    let eps_all =
        extend_order(&rb.eta, &(rb.n..amb_full.nvars()).collect::<Vec<_>>());
    let omega = match &rb.omega {
        MonomialOrder::Omega { y_vars, xn, xprime, u_vars, v_vars, d_by_comp } => {
            let mut v2 = v_vars.clone();
            v2.extend(rb.amb.nvars()..amb_full.nvars());
            MonomialOrder::Omega {
                y_vars: y_vars.clone(),
                xn: *xn,
                xprime: xprime.clone(),
                u_vars: u_vars.clone(),
                v_vars: v2,
                d_by_comp: d_by_comp.clone(),
            }
        }
        _ => unreachable!(),
    };
    let rb_final = XnRegularReduced {
        amb: amb_full.clone(),
        n: rb.n,
        p_old: rb.p_old,
        n_new: amb_full.nvars() - rb.n - rb.p_old,
        eta: rb.eta.clone(),
        eps_all,
        omega,
        xi: rb.xi.clone(),
        mother: mother_full.clone(),
        fathers: rb.fathers.iter().map(|g| lift(g, &amb_full)).collect(),
        b_y: b_y_final,
        b_x: b_x_final.clone(),
        k_comp: rb.k_comp.clone(),
        k_deg: rb.k_deg.clone(),
    };
    // published family: x variables and surviving parameters; the equations
    // align with the parameter block of the full ambient
    let mut out_vars: Vec<String> = amb_full.vars[..rb.n].to_vec();
    out_vars.extend(amb_full.vars[rb.n + rb.p_old..].iter().cloned());
    let amb_out = Ambient::new(out_vars, rb.amb.comps);
    let samb_out = Ambient::scalar(amb_out.vars.clone());
    let mut fathers_out: Vec<PolyVec> =
        b_x_final.iter().map(|g| lift(g, &amb_out)).collect();
    for g in &sub_gb.fc_out.fathers {
        fathers_out.push(view.to_orig(g, &amb_out));
    }
    let mother_out: Vec<PolyVec> =
        mother_full[rb.p_old..].iter().map(|h| lift(h, &samb_out)).collect();
    let fc_out = prune_params(&FamilyCode::new(
        amb_out,
        rb.n,
        rb.eta.clone(),
        mother_out,
        fathers_out,
    )?)?;
    for g in &fc_out.fathers {
        eprintln!("TRACE   fc_out father ({} vars): {}", fc_out.amb.nvars(), crate::text::render_poly(g, None));
    }
    for (pv, h) in fc_out.amb.vars[fc_out.n..].iter().zip(&fc_out.mother) {
        eprintln!("TRACE   fc_out mother {}: {}", pv, crate::text::render_poly(h, None));
    }
    Ok(GeneralBasis { rb: rb_final, view: Some(view), sub: Some(Box::new(sub_gb)), fc_out })
}

/// drop parameters that occur in no father and in no kept equation
pub fn prune_params(fc: &FamilyCode) -> Result<FamilyCode> {
    let n = fc.n;
    let nv = fc.amb.nvars();
    let mut used = vec![false; nv];
    for g in &fc.fathers {
        for (m, _) in g.iter() {
            for (i, e) in m.exps.iter().enumerate() {
                if *e > 0 {
                    used[i] = true;
                }
            }
        }
    }
    // closure: an equation of a used parameter may pull in more parameters
    loop {
        let mut changed = false;
        for v in n..nv {
            if !used[v] {
                continue;
            }
            for (m, _) in fc.mother[v - n].iter() {
                for (i, e) in m.exps.iter().enumerate() {
                    if *e > 0 && !used[i] {
                        used[i] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    if (n..nv).all(|v| used[v]) {
        return Ok(fc.clone());
    }
    let vars: Vec<String> = (0..nv)
        .filter(|&i| i < n || used[i])
        .map(|i| fc.amb.vars[i].clone())
        .collect();
    let amb = Ambient::new(vars, fc.amb.comps);
    let mother: Vec<PolyVec> = (n..nv)
        .filter(|&v| used[v])
        .map(|v| lift(&fc.mother[v - n], &Ambient::scalar(amb.vars.clone())))
        .collect();
    let fathers: Vec<PolyVec> = fc.fathers.iter().map(|g| lift(g, &amb)).collect();
    FamilyCode::new(amb, n, fc.eta.clone(), mother, fathers)
}

/// Divide a vector down the recursion tree: by the level templates first,
/// then the mapped remainder by the sub basis. Quotients align with the
/// published fathers of the tree; terms of the remainder in slices the view
/// never saw are irreducible below and pass through.
pub fn divide_with_tree(gb: &GeneralBasis, f: &PolyVec) -> Result<DividendResult> {
    let d0 = divide_with_templates(&gb.rb, &lift(f, &gb.rb.amb))?;
    let (Some(view), Some(sub)) = (&gb.view, &gb.sub) else {
        return Ok(d0);
    };
    let samb = Ambient::scalar(gb.rb.amb.vars.clone());
    let xn = gb.rb.xn();
    let mut seen = PolyVec::zero(&gb.rb.amb);
    let mut unseen = PolyVec::zero(&gb.rb.amb);
    for (m, c) in d0.remainder.iter() {
        if view.block_of(m.comp, m.exps[xn]).is_some() {
            seen.add_term(m.clone(), c.clone());
        } else {
            unseen.add_term(m.clone(), c.clone());
        }
    }
    let total = gb.fc_out.fathers.len();
    if seen.is_zero() {
        let mut quotients = d0.quotients;
        quotients.resize(total, PolyVec::zero(&samb));
        return Ok(DividendResult { den: d0.den, quotients, remainder: d0.remainder });
    }
    let mapped = view.to_sub(&seen, &sub.rb.amb)?;
    let ds = divide_with_tree(sub, &mapped)?;
    let den_s = lift(&ds.den, &samb);
    let den_0 = lift(&d0.den, &samb);
    let mut quotients: Vec<PolyVec> =
        d0.quotients.iter().map(|q| mul_scalar(&den_s, q)).collect();
    for q in &ds.quotients {
        quotients.push(mul_scalar(&den_0, &lift(q, &samb)));
    }
    quotients.resize(total, PolyVec::zero(&samb));
    let remainder = view.to_orig(&ds.remainder, &gb.rb.amb).add(&unseen);
    Ok(DividendResult { den: mul_scalar(&den_0, &den_s), quotients, remainder })
}

/// Remainder of the scoped template division alone; quotient recovery is
/// skipped, which keeps basis construction free of the express step.
fn reduce_with_templates(rb: &XnRegularReduced, f: &PolyVec) -> Result<PolyVec> {
    let templates = rb.templates();
    Ok(janet_poly_divide(f, &templates, &rb.omega)?.remainder)
}

/// Remainder of the full tree division, again without quotient recovery.
fn reduce_with_tree(gb: &GeneralBasis, f: &PolyVec) -> Result<PolyVec> {
    let r0 = reduce_with_templates(&gb.rb, &lift(f, &gb.rb.amb))?;
    let (Some(view), Some(sub)) = (&gb.view, &gb.sub) else {
        return Ok(r0);
    };
    let xn = gb.rb.xn();
    let mut seen = PolyVec::zero(&gb.rb.amb);
    let mut unseen = PolyVec::zero(&gb.rb.amb);
    for (m, c) in r0.iter() {
        if view.block_of(m.comp, m.exps[xn]).is_some() {
            seen.add_term(m.clone(), c.clone());
        } else {
            unseen.add_term(m.clone(), c.clone());
        }
    }
    if seen.is_zero() {
        return Ok(r0);
    }
    let mapped = view.to_sub(&seen, &sub.rb.amb)?;
    let rs = reduce_with_tree(sub, &mapped)?;
    Ok(view.to_orig(&rs, &gb.rb.amb).add(&unseen))
}

/// General division: merge mothers, build the basis tree, divide every
/// dividend father down the tree.
pub fn divide_general(
    dividend_fc: &FamilyCode,
    basis_fc: &FamilyCode,
) -> Result<(GeneralBasis, Vec<DividendResult>)> {
    let merged = merge_families(basis_fc, dividend_fc)?;
    let gb = reduced_basis_general(&merged)?;
    let mut out = Vec::new();
    for f in &dividend_fc.fathers {
        out.push(divide_with_tree(&gb, &lift(f, &gb.rb.amb))?);
    }
    Ok((gb, out))
}

/// Weierstrass normal form of a single series regular in the last variable:
/// the unique monic polynomial in x_n generating the same ideal, coded over
/// the new parameters.
pub fn weierstrass_normal_form(fc: &FamilyCode) -> Result<FamilyCode> {
    if fc.amb.comps != 1 || fc.fathers.len() != 1 {
        return Err(Error::Invariant("expected a single scalar series".into()));
    }
    let rb = reduce_xn_regular(fc)?;
    prune_params(&rb.family()?)
}
