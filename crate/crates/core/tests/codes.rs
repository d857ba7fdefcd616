mod common;

use common::{amb, example_family, grlex, p};
use sercode::codes::{baby_expand, code_standard_basis, initial_module, FamilyCode};
use sercode::order::initial_vector;
use sercode::poly::Ambient;
use sercode::text::render_series;

#[test]
fn baby_expand_sqrt_code() {
    // 2t - t^2 - z cuts out h = 1 - sqrt(1-z)
    let a = amb(&["z", "t"], 1);
    let fc = FamilyCode::new(a.clone(), 1, grlex(1), vec![p("2*t - t^2 - z", &a)], vec![])
        .unwrap();
    let h = fc.baby_expand(3);
    assert_eq!(render_series(&h[0]), "1/2*z + 1/8*z^2 + 1/16*z^3");
}

#[test]
fn baby_expand_quadratic_code() {
    let a = amb(&["x", "t"], 1);
    let fc = FamilyCode::new(a.clone(), 1, grlex(1), vec![p("t^2 + t + x^2", &a)], vec![])
        .unwrap();
    let h = fc.baby_expand(8);
    assert_eq!(render_series(&h[0]), "-x^2 - x^4 - 2*x^6 - 5*x^8");
}

#[test]
fn baby_expand_two_parameters() {
    // decoupled square system, each equation solved independently
    let a = amb(&["x", "t", "u"], 1);
    let mother = vec![p("t - x - t^2", &a), p("u - x*t", &a)];
    let fc = FamilyCode::new(a.clone(), 1, grlex(1), mother, vec![]).unwrap();
    let h = fc.baby_expand(4);
    assert_eq!(render_series(&h[0]), "x + x^2 + 2*x^3 + 5*x^4");
    assert_eq!(render_series(&h[1]), "x^2 + x^3 + 2*x^4");
}

#[test]
fn mother_normalization_fixes_linear_part() {
    // swapped and scaled linear parts are rearranged to the identity
    let a = amb(&["x", "t", "u"], 1);
    let mother = vec![p("3*u - x", &a), p("2*t + u^2 - x^2", &a)];
    let fc = FamilyCode::new(a.clone(), 1, grlex(1), mother, vec![]).unwrap();
    let h = fc.baby_expand(4);
    assert_eq!(render_series(&h[0]), "4/9*x^2");
    assert_eq!(render_series(&h[1]), "1/3*x");
}

#[test]
fn mother_must_vanish_at_origin() {
    let a = amb(&["x", "t"], 1);
    let err = FamilyCode::new(a.clone(), 1, grlex(1), vec![p("t + 1", &a)], vec![]);
    assert!(err.is_err());
}

#[test]
fn mother_needs_invertible_jacobian() {
    let a = amb(&["x", "t", "u"], 1);
    let mother = vec![p("t + u - x", &a), p("2*t + 2*u - x^2", &a)];
    assert!(FamilyCode::new(a, 1, grlex(1), mother, vec![]).is_err());
}

#[test]
fn father_expansion_matches_substitution() {
    let fc = example_family();
    let g1 = fc.expand_father(0, 4);
    // z^2 + xy(z/2 + z^2/8 + ...)
    assert_eq!(render_series(&g1), "z^2 + 1/2*x*y*z + 1/8*x*y*z^2");
}

#[test]
fn standard_basis_of_example_ideal() {
    let sb = code_standard_basis(&example_family()).unwrap();
    let a = &sb.amb;
    let inits = initial_module(&sb);
    let names: Vec<String> =
        inits.iter().map(|m| sercode::text::render_monvec(m, a)).collect();
    assert_eq!(names, vec!["z^2", "y*z", "y^2", "x^4*z"]);
    let g4 = &sb.fathers[3];
    assert_eq!(g4, &p("x^4*z - x^3*y*z^2 + x^4*y*t", a));
}

#[test]
fn direct_sum_renames_nothing_and_merges() {
    let a1 = amb(&["x", "t"], 1);
    let f1 = FamilyCode::new(
        a1.clone(),
        1,
        grlex(1),
        vec![p("t - x - t^2", &a1)],
        vec![p("x + t", &a1)],
    )
    .unwrap();
    let a2 = amb(&["x", "u"], 1);
    let f2 = FamilyCode::new(
        a2.clone(),
        1,
        grlex(1),
        vec![p("u - x^2", &a2)],
        vec![p("u", &a2)],
    )
    .unwrap();
    let sum = f1.direct_sum(&f2).unwrap();
    assert_eq!(sum.amb.vars, vec!["x", "t", "u"]);
    assert_eq!(sum.mother.len(), 2);
    assert_eq!(sum.fathers.len(), 2);
    let h = sum.baby_expand(3);
    assert_eq!(render_series(&h[1]), "x^2");
    // clashing parameter names are rejected
    assert!(f1.direct_sum(&f1).is_err());
}

#[test]
fn raw_baby_expand_entry_point() {
    let a = Ambient::new(vec!["z", "t"], 1);
    let h = baby_expand(&a, 1, &[p("t - z - z*t", &a)], 4);
    assert_eq!(render_series(&h[0]), "z + z^2 + z^3 + z^4");
}

#[test]
fn initial_of_expanded_series_matches_code_initial() {
    let fc = example_family();
    let sb = code_standard_basis(&fc).unwrap();
    for k in 0..sb.fathers.len() {
        let g = sb.expand_father(k, 8);
        let (m_series, _) = initial_vector(&g, &fc.eta).unwrap();
        let (m_code, _) = initial_vector(&sb.fathers[k], &sb.eps).unwrap();
        assert_eq!(m_series.exps[..3], m_code.exps[..3]);
    }
}
