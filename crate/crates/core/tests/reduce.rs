mod common;

use common::{amb, example_family, grlex, p};
use sercode::codes::{lift, FamilyCode};
use sercode::error::Error;
use sercode::poly::PolyVec;
use sercode::reduce::{
    divide_general, divide_xn_regular, prune_params, reduce_xn_regular,
    reduced_basis_general, weierstrass_normal_form, XnRegularReduced,
};
use sercode::text::{render_poly, render_series};

/// substitute the parameter series of the division context into a remainder
fn expand_remainder(rb: &XnRegularReduced, rem: &PolyVec, d: u32) -> PolyVec {
    let fc = FamilyCode::new(
        rb.amb.clone(),
        rb.n,
        rb.eta.clone(),
        rb.mother.clone(),
        vec![rem.clone()],
    )
    .unwrap();
    fc.expand_father(0, d)
}

#[test]
fn weierstrass_form_of_the_z_regular_surface_series() {
    // z^2 + xy*h(z) with h = 1 - sqrt(1-z); distinguished polynomial of
    // degree 2 in z with one coefficient series
    let a = amb(&["x", "y", "z", "t"], 1);
    let fc = FamilyCode::new(
        a.clone(),
        3,
        grlex(3),
        vec![p("2*t - t^2 - z", &a)],
        vec![p("z^2 + x*y*t", &a)],
    )
    .unwrap();
    let out = weierstrass_normal_form(&fc).unwrap();
    assert_eq!(out.amb.nvars(), 4, "one surviving coefficient parameter");
    let tname = out.amb.vars[3].clone();
    assert_eq!(
        out.fathers[0],
        p(&format!("z^2 + 1/2*x*y*z + x*y*{tname}*z"), &out.amb)
    );
    // coefficient series in s = xy
    let h = out.baby_expand(6);
    assert_eq!(
        render_series(&h[0]),
        "-1/16*x*y + 3/128*x^2*y^2 - 3/256*x^3*y^3"
    );
    let xa = amb(&["x", "y", "z"], 1);
    assert_eq!(
        out.expand_father(0, 8),
        p("z^2 + 1/2*x*y*z - 1/16*x^2*y^2*z + 3/128*x^3*y^3*z", &xa)
    );
}

#[test]
fn weierstrass_form_of_a_linear_series_is_a_geometric_series() {
    // z - x + zx = (1+x)(z - x/(1+x))
    let a = amb(&["x", "z"], 1);
    let fc =
        FamilyCode::new(a.clone(), 2, grlex(2), vec![], vec![p("z - x + x*z", &a)]).unwrap();
    let out = weierstrass_normal_form(&fc).unwrap();
    let xa = amb(&["x", "z"], 1);
    assert_eq!(
        out.expand_father(0, 7),
        p("z - x + x^2 - x^3 + x^4 - x^5 + x^6 - x^7", &xa)
    );
}

#[test]
fn weierstrass_form_of_a_pure_power_is_itself() {
    let a = amb(&["x", "z"], 1);
    let fc = FamilyCode::new(a.clone(), 2, grlex(2), vec![], vec![p("z^2", &a)]).unwrap();
    let out = weierstrass_normal_form(&fc).unwrap();
    assert_eq!(out.amb.nvars(), 2);
    assert_eq!(out.fathers[0], p("z^2", &out.amb));
}

#[test]
fn regular_reduction_of_the_plane_module() {
    // generators (0, y+x^2+y^2) and (y^2, xy) of a submodule of K[[x,y]]^2,
    // y-regular with initials y*e2 and y^2*e1
    let a = amb(&["x", "y"], 2);
    let fc = FamilyCode::new(
        a.clone(),
        2,
        grlex(2),
        vec![],
        vec![
            p("y @ 2 + x^2 @ 2 + y^2 @ 2", &a),
            p("y^2 @ 1 + x*y @ 2", &a),
        ],
    )
    .unwrap();
    let out = prune_params(&reduce_xn_regular(&fc).unwrap().family().unwrap()).unwrap();
    assert_eq!(out.amb.nvars(), 3, "one surviving unknown");
    let tname = out.amb.vars[2].clone();
    assert_eq!(out.fathers[0], p(&format!("y @ 2 - {tname} @ 2"), &out.amb));
    assert_eq!(out.fathers[1], p(&format!("y^2 @ 1 + x*{tname} @ 2"), &out.amb));
    assert_eq!(
        out.mother[0],
        sercode::text::parse_poly(
            &format!("{tname}^2 + {tname} + x^2"),
            &sercode::poly::Ambient::scalar(out.amb.vars.clone())
        )
        .unwrap()
    );
    let xa = amb(&["x", "y"], 2);
    assert_eq!(
        out.expand_father(0, 8),
        p("y @ 2 + x^2 @ 2 + x^4 @ 2 + 2*x^6 @ 2 + 5*x^8 @ 2", &xa)
    );
    assert_eq!(
        out.expand_father(1, 9),
        p("y^2 @ 1 - x^3 @ 2 - x^5 @ 2 - 2*x^7 @ 2 - 5*x^9 @ 2", &xa)
    );
}

#[test]
fn division_of_the_completed_generator_by_the_principal_part() {
    // the standard-basis completion x^4z - x^3yz^2 + x^4yt of the surface
    // ideal, divided by the reduced basis of its z-regular generator
    let a = amb(&["x", "y", "z", "t"], 1);
    let mother = vec![p("2*t - t^2 - z", &a)];
    let basis = FamilyCode::new(
        a.clone(),
        3,
        grlex(3),
        mother.clone(),
        vec![p("z^2 + x*y*t", &a)],
    )
    .unwrap();
    let dividend = FamilyCode::new(
        a.clone(),
        3,
        grlex(3),
        mother,
        vec![p("x^4*z - x^3*y*z^2 + x^4*y*t", &a)],
    )
    .unwrap();
    let (rb, res) = divide_xn_regular(&dividend, &basis).unwrap();
    let rem = &res[0].remainder;
    // remainder sits in the z-degree-one slice
    for (m, _) in rem.iter() {
        assert!(m.exps[2] <= 1);
    }
    let xa = amb(&["x", "y", "z"], 1);
    assert_eq!(
        expand_remainder(&rb, rem, 10),
        p(
            "x^4*z + 1/2*x^4*y*z + 1/2*x^4*y^2*z - 1/16*x^5*y^2*z - 1/16*x^5*y^3*z \
             + 3/128*x^6*y^3*z",
            &xa
        )
    );
}

#[test]
fn division_of_the_regular_tail_by_the_plane_module() {
    // the z-slice tail of the reduced surface generator, divided by the
    // y-regular plane module; the remainder is unique in the monomial
    // complement, and reducing the second slot modulo y + x^2 + y^2 amounts
    // to substituting y by the root -x^2 - x^4 - 2x^6 - 5x^8 - ...
    let a = amb(&["x", "y"], 2);
    let basis = FamilyCode::new(
        a.clone(),
        2,
        grlex(2),
        vec![],
        vec![
            p("y @ 2 + x^2 @ 2 + y^2 @ 2", &a),
            p("y^2 @ 1 + x*y @ 2", &a),
        ],
    )
    .unwrap();
    let ad = amb(&["x", "y", "t2"], 2);
    let dividend = FamilyCode::new(
        ad.clone(),
        2,
        grlex(2),
        vec![p("8*x*y*t2^3 + 12*x*y*t2^2 + 16*t2 + 6*x*y*t2 + x*y", &ad)],
        vec![p("-1/2*x*y @ 2 - x*y*t2 @ 2", &ad)],
    )
    .unwrap();
    let (rb, res) = divide_xn_regular(&dividend, &basis).unwrap();
    let xa = amb(&["x", "y"], 2);
    assert_eq!(
        expand_remainder(&rb, &res[0].remainder, 12),
        p(
            "1/2*x^3 @ 2 + 1/2*x^5 @ 2 + 1/16*x^6 @ 2 + x^7 @ 2 + 1/8*x^8 @ 2 \
             + 323/128*x^9 @ 2 + 5/16*x^10 @ 2 + 905/128*x^11 @ 2 + 227/256*x^12 @ 2",
            &xa
        )
    );
}

#[test]
fn general_division_of_a_basis_element_is_trivial() {
    let basis = example_family();
    let a = amb(&["x", "y", "z"], 1);
    let dividend =
        FamilyCode::new(a.clone(), 3, grlex(3), vec![], vec![p("z^2 - 1/2*x^3*z", &a)])
            .unwrap();
    let (_, res) = divide_general(&dividend, &basis).unwrap();
    let d = &res[0];
    assert!(d.remainder.is_zero());
    assert_eq!(d.quotients[0], d.den, "unit quotient on the matching generator");
    for q in &d.quotients[1..] {
        assert!(q.is_zero());
    }
}

#[test]
fn general_division_strips_the_divisible_part_of_a_coefficient_series() {
    // x^3*(t + 1/2) e3 against x^4 e3: the series part of x^3*t has order 6
    // and divides away entirely, leaving the polynomial half-term
    let ab = amb(&["x"], 3);
    let basis =
        FamilyCode::new(ab.clone(), 1, grlex(1), vec![], vec![p("x^4 @ 3", &ab)]).unwrap();
    let ad = amb(&["x", "t7"], 3);
    let dividend = FamilyCode::new(
        ad.clone(),
        1,
        grlex(1),
        vec![p("8*x^3*t7^3 + 12*x^3*t7^2 - 16*t7 + 6*x^3*t7 + x^3", &ad)],
        vec![p("x^3*t7 @ 3 + 1/2*x^3 @ 3", &ad)],
    )
    .unwrap();
    let (gb, res) = divide_general(&dividend, &basis).unwrap();
    assert_eq!(render_poly(&res[0].remainder, None), "1/2*x^3 @ 3");
    let _ = gb;
}

#[test]
fn reduced_basis_of_the_surface_ideal_is_polynomial() {
    let gb = reduced_basis_general(&example_family()).unwrap();
    let out = &gb.fc_out;
    assert_eq!(out.amb.nvars(), 3, "every parameter prunes away");
    let names: Vec<String> =
        out.fathers.iter().map(|g| render_poly(g, Some(&out.eta))).collect();
    assert_eq!(
        names,
        vec!["z^2 - 1/2*x^3*z", "y*z + x^2*z", "y^2 - x^3*z", "x^4*z"]
    );
}

#[test]
fn reduced_basis_output_reduces_the_original_generators_to_zero() {
    let fc = example_family();
    let gb = reduced_basis_general(&fc).unwrap();
    let out = &gb.fc_out;
    let xa = amb(&["x", "y", "z"], 1);
    let divisors: Vec<PolyVec> = out.fathers.iter().map(|g| lift(g, &xa)).collect();
    for k in 0..fc.fathers.len() {
        let g = fc.expand_father(k, 10);
        let d = sercode::divide::formal_divide(&g, &divisors, &out.eta, 10);
        assert!(d.remainder.is_zero(), "generator {k} does not reduce to zero");
    }
}

#[test]
fn box_condition_failure_stops_the_general_reduction() {
    // (x - y^2)(y - x^2) has initial ideal <xy>, whose complement
    // K[[x]] + K[[y]] is not an echelon direct sum
    let a = amb(&["x", "y"], 1);
    let fc = FamilyCode::new(
        a.clone(),
        2,
        grlex(2),
        vec![],
        vec![p("x*y - x^3 - y^3 + x^2*y^2", &a)],
    )
    .unwrap();
    match reduced_basis_general(&fc) {
        Err(Error::BoxConditionFailed { variable, .. }) => {
            assert!(!variable.is_empty());
        }
        other => panic!("expected a box condition failure, got {other:?}"),
    }
}
