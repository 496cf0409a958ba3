//! The printed closed forms, typed in directly as integer expressions, against
//! the generic route: multiplicities from the cosine recurrence on the array
//! and valencies from the array itself.

use drgwb_core::exact::{big_pow, is_integral, rat, BigInt, BigRational};
use drgwb_core::feasibility::{family1_eliminate, family2_eliminate, Certificate};
use drgwb_core::params::{
    multiplicity, multiplicity_closed_form, p633_closed_form, ClassicalParams, ClosedForm, Family,
};

fn r(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn p(q: i64, e: u32) -> BigInt {
    big_pow(q, e)
}

/// `theta_i = [D-i](beta - alpha [i]) - [i]`.
fn theta(cp: &ClassicalParams, i: u32) -> BigRational {
    cp.bracket(cp.d() - i) * (cp.beta() - cp.alpha() * cp.bracket(i)) - cp.bracket(i)
}

fn f(cp: &ClassicalParams, i: u32) -> BigRational {
    multiplicity(&cp.intersection_array().unwrap(), &theta(cp, i))
}

#[test]
fn p633_factored_display() {
    for q in 2..30i64 {
        let a1 = p(q, 4) + p(q, 3) + p(q, 2) + q + 1;
        let a2 = p(q, 4) + 2 * p(q, 3) + 2 * p(q, 2) + 2 * q + 2;
        let a3 = p(q, 5) + 2 * p(q, 4) + 2 * p(q, 3) + 2 * p(q, 2) + 2 * q + 2;
        let num = BigInt::from((q + 1) * (q * q + 1) * (q * q - q + 1) * (q * q * q + 2 * q * q + 2 * q + 2)) * a1 * a2 * a3;
        let den = BigInt::from((q + 2) * (q * q + 2 * q + 2));
        let expect = r(num, den);
        assert_eq!(p633_closed_form(q), expect);
        let ia = ClassicalParams::family(Family::One, 6, q).unwrap().intersection_array().unwrap();
        assert_eq!(ia.p(6, 3, 3), expect, "q = {q}");
    }
    assert_eq!(p633_closed_form(2), rat(3_317_589));
}

#[test]
fn family1_f2_display() {
    for q in 2..8i64 {
        for d in 4..10u32 {
            let cp = ClassicalParams::family(Family::One, d, q).unwrap();
            let num = (p(q, d) - 1i64)
                * (p(q, d) - q)
                * (p(q, d + 1) + p(q, d) + 2i64)
                * (p(q, d + 2) + p(q, d + 1) - q * q - 1)
                * (p(q, 2 * d + 1) + p(q, 2 * d) - p(q, d + 1) + p(q, d) - 2 * p(q, 3));
            let den = BigInt::from((q - 1) * (q - 1) * (q + 1) * (q + 1))
                * (p(q, d + 1) + p(q, d) - 3 * q + 1)
                * (p(q, d + 1) + p(q, d) - 2 * q * q);
            let display = r(num, den);
            assert_eq!(f(&cp, 2), display, "q = {q}, D = {d}");
            assert_eq!(multiplicity_closed_form(&cp, ClosedForm::F2Family1).unwrap(), display);
        }
    }
}

#[test]
fn family1_small_diameters() {
    for q in 2..12i64 {
        let cp = ClassicalParams::family(Family::One, 4, q).unwrap();
        let qq = BigInt::from(q);
        let num = &qq * &qq
            * (q * q + 1)
            * BigInt::from(q * q + q + 1).pow(2)
            * (q * q * q + q * q + 1)
            * (p(q, 5) + p(q, 4) + 2i64)
            * (p(q, 5) + 2 * p(q, 4) + 2 * p(q, 3) + 2 * q * q + q + 2);
        let den = BigInt::from((q + 1) * (q * q + 2 * q + 2)) * (p(q, 4) + 2 * p(q, 3) + 2 * q * q + 2 * q - 1);
        assert_eq!(f(&cp, 2), r(num, den), "f_2 at D = 4, q = {q}");

        let cp = ClassicalParams::family(Family::One, 5, q).unwrap();
        let num = p(q, 3)
            * (q * q + 1)
            * (p(q, 4) + p(q, 3) + q * q + q + 1)
            * (p(q, 4) + 2 * p(q, 3) + 2 * q * q + 2 * q + 2)
            * (p(q, 6) + 2 * p(q, 5) + 2 * p(q, 4) + 2 * p(q, 3) + 2 * q * q + q + 1);
        let k2 = cp.intersection_array().unwrap().valencies()[2].clone();
        assert_eq!(k2, r(num, BigInt::from(q + 2)), "k_2 at D = 5, q = {q}");
    }
}

#[test]
fn family2_f2_and_f3_displays() {
    for q in 2..8i64 {
        for d in 4..11u32 {
            let cp = ClassicalParams::family(Family::Two, d, q).unwrap();
            let num = BigInt::from(q * q)
                * (p(q, d) - 1i64)
                * (p(q, d + 1) + 1i64)
                * (p(q, 2 * d - 2) - p(q, d - 2) + p(q, d - 3) - 1i64);
            let f2 = r(num, BigInt::from((q - 1) * (q - 1) * (q + 1)));
            assert_eq!(f(&cp, 2), f2, "f_2, q = {q}, D = {d}");
            let num = (p(q, d) - 1i64)
                * (p(q, d + 1) + 1i64)
                * (p(q, 2 * d + 1) - p(q, d + 1) + p(q, d) - q)
                * (p(q, 2 * d - 2) - p(q, d - 2) + p(q, d - 3) - q * q);
            let f3 = r(num, BigInt::from((q - 1).pow(3) * (q + 1) * (q * q + q + 1)));
            assert_eq!(f(&cp, 3), f3, "f_3, q = {q}, D = {d}");
        }
    }
}

#[test]
fn family2_odd_diameter_reductions() {
    // q = 3 and q = 7 with the common factors cancelled.
    for d in (5..30u32).step_by(2) {
        for (q, den) in [(3i64, 48i64), (7, 2016)] {
            let num = (p(q, d) - 1i64) * (p(q, d + 1) + 1i64) * (p(q, 2 * d + 1) - p(q, d) * (q - 1) - p(q, 3));
            let cp = ClassicalParams::family(Family::Two, d, q).unwrap();
            assert_eq!(f(&cp, 2), r(num.clone(), BigInt::from(den)));
            for factor in [p(q, d) - 1, p(q, d + 1) + 1, p(q, 2 * d + 1) - p(q, d) * (q - 1) - p(q, 3)] {
                assert_eq!(factor % 4, BigInt::from(2));
            }
            let rep = family2_eliminate(q, d).unwrap();
            assert!(rep.checks.iter().any(|c| c.certificates.iter().any(|x| matches!(x, Certificate::TwoAdic { .. }))));
        }
    }
}

#[test]
fn sparse_cases_of_the_divisibility_steps() {
    let hits = |f: &dyn Fn(i64) -> bool| (2..=1000).filter(|&q| f(q)).collect::<Vec<i64>>();
    assert_eq!(hits(&|q| (40 * (3 * q + 1)) % (q * q + 2 * q + 2) == 0), [2, 4]);
    assert_eq!(hits(&|q| (60 * (3 * q + 4)) % (q * q + 2 * q + 2) == 0), [2]);
    assert_eq!(hits(&|q| 8 % (q + 1) == 0), [3, 7]);
    // No q passes both the k_2 divisibility and f_2 integrality at D = 5.
    for q in hits(&|q| 60720 % (q + 2) == 0) {
        let cp = ClassicalParams::family(Family::One, 5, q).unwrap();
        assert!(!is_integral(&f(&cp, 2)), "q = {q}");
        assert!(family1_eliminate(q, 5).unwrap().is_eliminated());
    }
}
