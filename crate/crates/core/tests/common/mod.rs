#![allow(dead_code)]

use sercode::codes::FamilyCode;
use sercode::order::MonomialOrder;
use sercode::poly::{Ambient, PolyVec};
use sercode::text::parse_poly;
use std::sync::Arc;

pub fn amb(vars: &[&str], comps: usize) -> Arc<Ambient> {
    Ambient::new(vars.iter().map(|v| v.to_string()).collect(), comps)
}

pub fn p(s: &str, a: &Arc<Ambient>) -> PolyVec {
    parse_poly(s, a).unwrap()
}

pub fn grlex(n: usize) -> MonomialOrder {
    MonomialOrder::GrLex { prec: (0..n).collect() }
}

pub fn lex(n: usize) -> MonomialOrder {
    MonomialOrder::Lex { prec: (0..n).collect() }
}

/// The running example: ideal in K[[x,y,z]] under grlex x>y>z, generated by
/// z^2 + xy*h(z) with 2h - h^2 = z, plus two polynomials.
pub fn example_family() -> FamilyCode {
    let a = amb(&["x", "y", "z", "t"], 1);
    let mother = vec![p("2*t - t^2 - z", &a)];
    let fathers = vec![
        p("z^2 + x*y*t", &a),
        p("y*z + x^2*z + y^2*z", &a),
        p("y^2 + x*y*z", &a),
    ];
    FamilyCode::new(a, 3, grlex(3), mother, fathers).unwrap()
}
