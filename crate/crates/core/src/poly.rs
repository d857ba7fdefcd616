//! Exact multivariate polynomial / truncated power-series vectors over Q.
//!
//! A `PolyVec` is an element of `Q[vars]^comps`, stored sparsely with exact
//! `BigRational` coefficients. Scalars are the `comps == 1` case. Terms
//! iterate canonically: lexicographic on (exponents, component).

use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn rint(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// A polynomial ring ambient: named variables and a component count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambient {
    pub vars: Vec<String>,
    pub comps: usize,
}

impl Ambient {
    pub fn new<S: Into<String>>(vars: Vec<S>, comps: usize) -> Arc<Ambient> {
        assert!(comps >= 1);
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            assert!(seen.insert(v.clone()), "duplicate variable {v}");
        }
        Arc::new(Ambient { vars, comps })
    }

    pub fn scalar<S: Into<String>>(vars: Vec<S>) -> Arc<Ambient> {
        Self::new(vars, 1)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// A monomial vector `x^alpha * e_comp` (component is 0-based internally).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonVec {
    pub exps: Vec<u32>,
    pub comp: usize,
}

impl MonVec {
    pub fn one(nvars: usize) -> MonVec {
        MonVec { exps: vec![0; nvars], comp: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> MonVec {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        MonVec { exps, comp: 0 }
    }

    pub fn in_comp(mut self, comp: usize) -> MonVec {
        self.comp = comp;
        self
    }

    pub fn deg(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn deg_on(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i]).sum()
    }

    /// Divisibility of monomial vectors: same component, componentwise exps.
    pub fn divides(&self, other: &MonVec) -> bool {
        self.comp == other.comp
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// The scalar quotient monomial `other / self` (requires divisibility).
    pub fn quot(&self, other: &MonVec) -> Vec<u32> {
        debug_assert!(self.divides(other));
        other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect()
    }

    pub fn mul_exps(&self, exps: &[u32]) -> MonVec {
        MonVec {
            exps: self.exps.iter().zip(exps).map(|(a, b)| a + b).collect(),
            comp: self.comp,
        }
    }

    pub fn is_unit_monomial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// Sparse polynomial vector with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVec {
    pub amb: Arc<Ambient>,
    terms: BTreeMap<MonVec, Rat>,
}

impl PolyVec {
    pub fn zero(amb: &Arc<Ambient>) -> PolyVec {
        PolyVec { amb: amb.clone(), terms: BTreeMap::new() }
    }

    pub fn from_terms(amb: &Arc<Ambient>, terms: Vec<(MonVec, Rat)>) -> PolyVec {
        let mut p = PolyVec::zero(amb);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn constant(amb: &Arc<Ambient>, c: Rat) -> PolyVec {
        let mut p = PolyVec::zero(amb);
        p.add_term(MonVec::one(amb.nvars()), c);
        p
    }

    pub fn var(amb: &Arc<Ambient>, i: usize) -> PolyVec {
        let mut p = PolyVec::zero(amb);
        p.add_term(MonVec::var(amb.nvars(), i), Rat::one());
        p
    }

    pub fn monomial(amb: &Arc<Ambient>, m: MonVec, c: Rat) -> PolyVec {
        let mut p = PolyVec::zero(amb);
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: MonVec, c: Rat) {
        debug_assert_eq!(m.exps.len(), self.amb.nvars());
        debug_assert!(m.comp < self.amb.comps);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Canonical term iteration: lexicographic on (exponents, component).
    pub fn iter(&self) -> impl Iterator<Item = (&MonVec, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MonVec) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_deg(&self) -> u32 {
        self.terms.keys().map(|m| m.deg()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &PolyVec) -> PolyVec {
        self.check_amb(other);
        let mut r = self.clone();
        for (m, c) in other.iter() {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &PolyVec) -> PolyVec {
        self.check_amb(other);
        let mut r = self.clone();
        for (m, c) in other.iter() {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> PolyVec {
        let mut r = PolyVec::zero(&self.amb);
        for (m, c) in self.iter() {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> PolyVec {
        if c.is_zero() {
            return PolyVec::zero(&self.amb);
        }
        let mut r = PolyVec::zero(&self.amb);
        for (m, k) in self.iter() {
            r.add_term(m.clone(), k.clone() * c.clone());
        }
        r
    }

    /// Multiply by a scalar term `c * x^exps`.
    pub fn mul_term(&self, exps: &[u32], c: &Rat) -> PolyVec {
        if c.is_zero() {
            return PolyVec::zero(&self.amb);
        }
        let mut r = PolyVec::zero(&self.amb);
        for (m, k) in self.iter() {
            r.add_term(m.mul_exps(exps), k.clone() * c.clone());
        }
        r
    }

    /// Ring product; `self` must be scalar (one component).
    pub fn mul(&self, other: &PolyVec) -> PolyVec {
        assert_eq!(self.amb.comps, 1, "left factor must be scalar");
        assert_eq!(self.amb.vars, other.amb.vars);
        let mut r = PolyVec::zero(&other.amb);
        for (m, c) in self.iter() {
            for (n, d) in other.iter() {
                r.add_term(n.mul_exps(&m.exps), c.clone() * d.clone());
            }
        }
        r
    }

    /// Drop terms whose total degree on `vars` (all vars when None) exceeds `d`.
    pub fn truncate(&self, d: u32, vars: Option<&[usize]>) -> PolyVec {
        let mut r = PolyVec::zero(&self.amb);
        for (m, c) in self.iter() {
            let deg = match vars {
                Some(vs) => m.deg_on(vs),
                None => m.deg(),
            };
            if deg <= d {
                r.add_term(m.clone(), c.clone());
            }
        }
        r
    }

    /// Restrict to one component, as a scalar polynomial.
    pub fn component(&self, comp: usize) -> PolyVec {
        let amb = Ambient::new(self.amb.vars.clone(), 1);
        let mut r = PolyVec::zero(&amb);
        for (m, c) in self.iter() {
            if m.comp == comp {
                r.add_term(MonVec { exps: m.exps.clone(), comp: 0 }, c.clone());
            }
        }
        r
    }

    /// Scalar polynomial placed into component `comp` of a wider ambient.
    pub fn into_component(&self, amb: &Arc<Ambient>, comp: usize) -> PolyVec {
        assert_eq!(self.amb.comps, 1);
        assert_eq!(self.amb.vars, amb.vars);
        let mut r = PolyVec::zero(amb);
        for (m, c) in self.iter() {
            r.add_term(MonVec { exps: m.exps.clone(), comp }, c.clone());
        }
        r
    }

    /// Evaluate at the origin in the given variables (set them to zero).
    pub fn set_vars_zero(&self, vars: &[usize]) -> PolyVec {
        let mut r = PolyVec::zero(&self.amb);
        for (m, c) in self.iter() {
            if vars.iter().all(|&i| m.exps[i] == 0) {
                r.add_term(m.clone(), c.clone());
            }
        }
        r
    }

    pub fn constant_term(&self, comp: usize) -> Rat {
        self.coeff(&MonVec { exps: vec![0; self.amb.nvars()], comp })
    }

    /// Substitute variables by scalar polynomials over a target ambient.
    ///
    /// `var_map[i]` is the image of variable `i`; components are relocated
    /// through `comp_map`. Products are truncated at total degree `trunc`
    /// (over all target variables) when given.
    pub fn substitute(
        &self,
        target: &Arc<Ambient>,
        var_map: &[VarImage],
        comp_map: &[usize],
        trunc: Option<u32>,
    ) -> PolyVec {
        assert_eq!(var_map.len(), self.amb.nvars());
        assert_eq!(comp_map.len(), self.amb.comps);
        let cut = |p: PolyVec| -> PolyVec {
            match trunc {
                Some(d) => p.truncate(d, None),
                None => p,
            }
        };
        let mut result = PolyVec::zero(target);
        // cache powers of each image
        let mut pows: Vec<Vec<PolyVec>> = var_map
            .iter()
            .map(|_| vec![PolyVec::constant(&Ambient::scalar(target.vars.clone()), Rat::one())])
            .collect();
        let scalar_amb = Ambient::scalar(target.vars.clone());
        let image = |i: usize| -> PolyVec {
            match &var_map[i] {
                VarImage::Var(j) => PolyVec::var(&scalar_amb, *j),
                VarImage::Poly(p) => {
                    assert_eq!(p.amb.comps, 1);
                    assert_eq!(p.amb.vars, target.vars);
                    PolyVec { amb: scalar_amb.clone(), terms: p.terms.clone() }
                }
                VarImage::Zero => PolyVec::zero(&scalar_amb),
            }
        };
        for (m, c) in self.iter() {
            let mut acc = PolyVec::constant(&scalar_amb, c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while pows[i].len() <= e as usize {
                    let last = pows[i].last().unwrap().clone();
                    pows[i].push(cut(image(i).mul(&last)));
                }
                acc = cut(acc.mul(&pows[i][e as usize]));
                if acc.is_zero() {
                    break;
                }
            }
            for (n, d) in acc.iter() {
                result.add_term(MonVec { exps: n.exps.clone(), comp: comp_map[m.comp] }, d.clone());
            }
        }
        result
    }

    /// Reinterpret over another ambient via a variable index map
    /// (`var_map[i]` = index in target) and a component map.
    pub fn map_ambient(
        &self,
        target: &Arc<Ambient>,
        var_map: &[usize],
        comp_map: &[usize],
    ) -> PolyVec {
        let mut r = PolyVec::zero(target);
        for (m, c) in self.iter() {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    exps[var_map[i]] += e;
                }
            }
            r.add_term(MonVec { exps, comp: comp_map[m.comp] }, c.clone());
        }
        r
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> PolyVec {
        let mut r = PolyVec::zero(&self.amb);
        for (m, c) in self.iter() {
            let e = m.exps[i];
            if e > 0 {
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                r.add_term(
                    MonVec { exps, comp: m.comp },
                    c.clone() * Rat::from_integer((e as i64).into()),
                );
            }
        }
        r
    }

    /// Multiply all coefficients so that they become coprime integers with
    /// positive leading (first-iterated) coefficient. Returns the factor the
    /// input was multiplied by.
    pub fn normalize_content(&self) -> (PolyVec, Rat) {
        if self.is_zero() {
            return (self.clone(), Rat::one());
        }
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut den: BigInt = One::one();
        for (_, c) in self.iter() {
            den = den.lcm(c.denom());
        }
        let mut num: BigInt = Zero::zero();
        for (_, c) in self.iter() {
            num = num.gcd(&(c.numer() * &den / c.denom()));
        }
        let mut f = Rat::new(den, num);
        let first = self.iter().next().unwrap().1;
        if (first * &f).is_negative() {
            f = -f;
        }
        (self.scale(&f), f)
    }

    fn check_amb(&self, other: &PolyVec) {
        assert_eq!(self.amb, other.amb, "ambient mismatch");
    }
}

#[derive(Debug, Clone)]
pub enum VarImage {
    /// maps to a variable of the target ambient
    Var(usize),
    /// maps to a scalar polynomial over the target ambient
    Poly(PolyVec),
    Zero,
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::render_poly(self, None))
    }
}

/// A polynomial vector known only up to total degree `deg` (inclusive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    pub poly: PolyVec,
    pub deg: u32,
}

impl TruncSeries {
    pub fn new(poly: PolyVec, deg: u32) -> TruncSeries {
        TruncSeries { poly: poly.truncate(deg, None), deg }
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let d = self.deg.min(other.deg);
        TruncSeries::new(self.poly.add(&other.poly), d)
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let d = self.deg.min(other.deg);
        TruncSeries::new(self.poly.mul(&other.poly), d)
    }
}

/// Jacobian of scalar rows with respect to the given variables, at 0.
pub fn jacobian_at_zero(rows: &[PolyVec], y_vars: &[usize]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| {
            debug_assert!(r.iter().all(|(m, _)| m.comp == 0), "jacobian rows must be scalar");
            y_vars
                .iter()
                .map(|&j| r.coeff(&MonVec::var(r.amb.nvars(), j)))
                .collect()
        })
        .collect()
}

/// Exact inverse of a square rational matrix (Gauss-Jordan).
pub fn rat_mat_inverse(m: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.iter().cloned().collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col].clone();
        for j in 0..n {
            a[col][j] = a[col][j].clone() / d.clone();
            inv[col][j] = inv[col][j].clone() / d.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = a[col][j].clone() * f.clone();
                    a[r][j] = a[r][j].clone() - x;
                    let y = inv[col][j].clone() * f.clone();
                    inv[r][j] = inv[r][j].clone() - y;
                }
            }
        }
    }
    Ok(inv)
}
