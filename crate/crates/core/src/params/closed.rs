//! Printed closed forms for the two surviving families, kept apart from the
//! generic spectrum path so each can check the other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::{ClassicalParams, Family};
use crate::error::{Error, Result};
use crate::exact::big_pow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    /// `f_2` for family 1, any `D`.
    F2Family1,
    /// `f_2` for family 1 at `D = 4`, in factored form.
    F2Family1D4,
    /// `k_2` for family 1 at `D = 5`.
    K2Family1D5,
    F2Family2,
    F3Family2,
    KDFamily2,
    FDFamily2,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 7] = [
        ClosedForm::F2Family1,
        ClosedForm::F2Family1D4,
        ClosedForm::K2Family1D5,
        ClosedForm::F2Family2,
        ClosedForm::F3Family2,
        ClosedForm::KDFamily2,
        ClosedForm::FDFamily2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedForm::F2Family1 => "f2_family1",
            ClosedForm::F2Family1D4 => "f2_family1_D4",
            ClosedForm::K2Family1D5 => "k2_family1_D5",
            ClosedForm::F2Family2 => "f2_family2",
            ClosedForm::F3Family2 => "f3_family2",
            ClosedForm::KDFamily2 => "kD_family2",
            ClosedForm::FDFamily2 => "fD_family2",
        }
    }

    fn family(self) -> Family {
        match self {
            ClosedForm::F2Family1 | ClosedForm::F2Family1D4 | ClosedForm::K2Family1D5 => Family::One,
            _ => Family::Two,
        }
    }

    fn required_d(self) -> Option<u32> {
        match self {
            ClosedForm::F2Family1D4 => Some(4),
            ClosedForm::K2Family1D5 => Some(5),
            _ => None,
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClosedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown closed form {s:?}")))
    }
}

/// Integer polynomial in `q` given by coefficients from the constant term up.
fn poly(q: &BigInt, coeffs: &[i64]) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::from(0), |acc, &c| acc * q + c)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// `p^6_33` for family 1 (`D >= 6`) in factored form.
pub fn p633_closed_form(q: i64) -> BigRational {
    let qb = BigInt::from(q);
    let a1 = poly(&qb, &[1, 1, 1, 1, 1]);
    let a2 = poly(&qb, &[2, 2, 2, 2, 1]);
    let a3 = poly(&qb, &[2, 2, 2, 2, 2, 1]);
    let num = poly(&qb, &[1, 1])
        * poly(&qb, &[1, 0, 1])
        * poly(&qb, &[1, -1, 1])
        * poly(&qb, &[2, 2, 2, 1])
        * a1
        * a2
        * a3;
    let den = poly(&qb, &[2, 1]) * poly(&qb, &[2, 2, 1]);
    ratio(num, den)
}

/// Evaluates one of the printed closed forms. Fails unless `cp` is the
/// matching family member (and diameter, for the fixed-`D` forms).
pub fn multiplicity_closed_form(cp: &ClassicalParams, which: ClosedForm) -> Result<BigRational> {
    let fam = which.family();
    let d_ok = which.required_d().is_none_or(|d| d == cp.d());
    if cp.family_of() != Some(fam) || !d_ok {
        let mut expected = format!("{fam}");
        if let Some(d) = which.required_d() {
            expected.push_str(&format!(" with D = {d}"));
        }
        return Err(Error::FamilyMismatch { expected });
    }
    let q = cp.q();
    let d = cp.d();
    if d < 4 {
        return Err(Error::InvalidParameters(format!("closed forms need D >= 4, got {d}")));
    }
    let qb = BigInt::from(q);
    let qp = |e: u32| big_pow(q, e);
    let one = BigInt::one();
    Ok(match which {
        ClosedForm::F2Family1 => {
            let num = (qp(d) - &one)
                * (qp(d) - q)
                * (qp(d + 1) + qp(d) + 2)
                * (qp(d + 2) + qp(d + 1) - q * q - 1)
                * (qp(2 * d + 1) + qp(2 * d) - qp(d + 1) + qp(d) - 2 * qp(3));
            let den = big_pow(q - 1, 2)
                * big_pow(q + 1, 2)
                * (qp(d + 1) + qp(d) - 3 * q + 1)
                * (qp(d + 1) + qp(d) - 2 * q * q);
            ratio(num, den)
        }
        ClosedForm::F2Family1D4 => {
            let num = qp(2)
                * poly(&qb, &[1, 0, 1])
                * big_pow_big(&poly(&qb, &[1, 1, 1]), 2)
                * poly(&qb, &[1, 0, 1, 1])
                * poly(&qb, &[2, 0, 0, 0, 1, 1])
                * poly(&qb, &[2, 1, 2, 2, 2, 1]);
            let den = poly(&qb, &[1, 1]) * poly(&qb, &[2, 2, 1]) * poly(&qb, &[-1, 2, 2, 2, 1]);
            ratio(num, den)
        }
        ClosedForm::K2Family1D5 => {
            let num = qp(3)
                * poly(&qb, &[1, 0, 1])
                * poly(&qb, &[1, 1, 1, 1, 1])
                * poly(&qb, &[2, 2, 2, 2, 1])
                * poly(&qb, &[1, 1, 2, 2, 2, 2, 1]);
            ratio(num, poly(&qb, &[2, 1]))
        }
        ClosedForm::F2Family2 => {
            let num = qp(2)
                * (qp(d) - &one)
                * (qp(d + 1) + &one)
                * (qp(2 * d - 2) - qp(d - 2) + qp(d - 3) - &one);
            let den = big_pow(q - 1, 2) * (q + 1);
            ratio(num, den)
        }
        ClosedForm::F3Family2 => {
            let num = (qp(d) - &one)
                * (qp(d + 1) + &one)
                * (qp(2 * d + 1) - qp(d + 1) + qp(d) - q)
                * (qp(2 * d - 2) - qp(d - 2) + qp(d - 3) - qp(2));
            let den = big_pow(q - 1, 3) * (q + 1) * poly(&qb, &[1, 1, 1]);
            ratio(num, den)
        }
        ClosedForm::KDFamily2 => kd_family2(q, d),
        ClosedForm::FDFamily2 => fd_family2(q, d),
    })
}

fn big_pow_big(x: &BigInt, e: usize) -> BigInt {
    num_traits::pow(x.clone(), e)
}

/// `k_D = q^(D(D+1)/2 + 1) prod_(i=1)^(D-1) (q (q^D - 1)/(q^i - 1) - 1)`.
pub(crate) fn kd_family2(q: i64, d: u32) -> BigRational {
    let qd1 = big_pow(q, d) - 1;
    let mut acc = BigRational::from_integer(big_pow(q, d * (d + 1) / 2 + 1));
    for i in 1..d {
        let den = big_pow(q, i) - 1;
        acc *= ratio(&qd1 * q - &den, den);
    }
    acc
}

/// `f_D = (q^D (q+1) - q) prod_(i=2)^D (q^(i+1) (q^D - 1)/(q^i - 1) + 1)`.
pub(crate) fn fd_family2(q: i64, d: u32) -> BigRational {
    let qd1 = big_pow(q, d) - 1;
    let mut acc = BigRational::from_integer(big_pow(q, d) * (q + 1) - q);
    for i in 2..=d {
        let den = big_pow(q, i) - 1;
        acc *= ratio(big_pow(q, i + 1) * &qd1 + &den, den);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, is_integral, rat};
    use crate::params::spectrum::multiplicity;

    fn fam(f: Family, d: u32, q: i64) -> ClassicalParams {
        ClassicalParams::family(f, d, q).unwrap()
    }

    /// `theta_i = [D-i](beta - alpha [i]) - [i]`, used here only as a
    /// candidate list; the generic multiplicity formula does the rest.
    fn f_i(cp: &ClassicalParams, i: u32) -> BigRational {
        let ia = cp.intersection_array().unwrap();
        let theta = cp.bracket(cp.d() - i) * (cp.beta() - cp.alpha() * cp.bracket(i)) - cp.bracket(i);
        multiplicity(&ia, &theta)
    }

    #[test]
    fn p633_values() {
        assert_eq!(p633_closed_form(2), rat(3_317_589));
        assert_eq!(p633_closed_form(3), frac(28_042_509_880, 17));
        assert!(is_integral(&p633_closed_form(4)));
    }

    #[test]
    fn p633_matches_recurrence() {
        for q in 2..6 {
            for d in 6..9 {
                let ia = fam(Family::One, d, q).intersection_array().unwrap();
                assert_eq!(ia.p(6, 3, 3), p633_closed_form(q), "q={q} D={d}");
            }
        }
    }

    #[test]
    fn printed_forms_match_generic_multiplicities() {
        for q in 2..6 {
            for d in 4..9 {
                let f1 = fam(Family::One, d, q);
                assert_eq!(multiplicity_closed_form(&f1, ClosedForm::F2Family1).unwrap(), f_i(&f1, 2));
                let f2 = fam(Family::Two, d, q);
                assert_eq!(multiplicity_closed_form(&f2, ClosedForm::F2Family2).unwrap(), f_i(&f2, 2));
                assert_eq!(multiplicity_closed_form(&f2, ClosedForm::F3Family2).unwrap(), f_i(&f2, 3));
                let ia = f2.intersection_array().unwrap();
                assert_eq!(
                    multiplicity_closed_form(&f2, ClosedForm::KDFamily2).unwrap(),
                    ia.valencies()[d as usize]
                );
                assert_eq!(multiplicity_closed_form(&f2, ClosedForm::FDFamily2).unwrap(), f_i(&f2, d));
            }
            let d4 = fam(Family::One, 4, q);
            assert_eq!(multiplicity_closed_form(&d4, ClosedForm::F2Family1D4).unwrap(), f_i(&d4, 2));
            let d5 = fam(Family::One, 5, q);
            let ia = d5.intersection_array().unwrap();
            assert_eq!(multiplicity_closed_form(&d5, ClosedForm::K2Family1D5).unwrap(), ia.valencies()[2]);
        }
    }

    #[test]
    fn known_values() {
        let f1 = fam(Family::One, 4, 2);
        assert_eq!(
            multiplicity_closed_form(&f1, ClosedForm::F2Family1D4).unwrap(),
            frac(58_604_000, 1290)
        );
        let f2 = fam(Family::Two, 6, 2);
        let kd = multiplicity_closed_form(&f2, ClosedForm::KDFamily2).unwrap();
        assert_eq!(kd, BigRational::new("256896401408000".parse().unwrap(), 31.into()));
        let fd = multiplicity_closed_form(&f2, ClosedForm::FDFamily2).unwrap();
        assert_eq!(fd, BigRational::new("330417852905010".parse().unwrap(), 31.into()));
        // q = 3, D = 5: f_2 = (3^5-1)(3^6+1)(3^11 - 2*3^5 - 27)/48
        let f2 = fam(Family::Two, 5, 3);
        let printed = frac(242 * 730, 48) * rat(177147 - 486 - 27);
        assert_eq!(multiplicity_closed_form(&f2, ClosedForm::F2Family2).unwrap(), printed);
        assert!(!is_integral(&printed));
    }

    #[test]
    fn wrong_family_rejected() {
        let f1 = fam(Family::One, 6, 2);
        assert!(matches!(
            multiplicity_closed_form(&f1, ClosedForm::KDFamily2),
            Err(Error::FamilyMismatch { .. })
        ));
        assert!(multiplicity_closed_form(&f1, ClosedForm::F2Family1D4).is_err());
        assert_eq!("kD_family2".parse::<ClosedForm>().unwrap(), ClosedForm::KDFamily2);
    }
}
