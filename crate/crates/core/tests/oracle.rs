//! Independent oracles for the series and linear-algebra kernels: every
//! closed-form implementation is checked against a naive reference
//! computation or frozen classical values.

use num::{BigInt, BigRational, One};
use ulat_core::linalg::smith_normal_form;
use ulat_core::qseries::{delta, eisenstein, eta, serre_derivative};
use ulat_core::RationalSeries;

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Naive Euler product prod_{n>=1} (1 - q^n), truncated.
fn euler_product(order: u32) -> RationalSeries {
    let trunc = rat_i(order as i64);
    let mut p = RationalSeries::constant(BigRational::one(), trunc.clone());
    for n in 1..=order as i64 {
        let factor = RationalSeries::from_terms(
            vec![(rat_i(0), rat_i(1)), (rat_i(n), rat_i(-1))],
            trunc.clone(),
        );
        p = p.mul(&factor);
    }
    p
}

#[test]
fn eta_matches_naive_euler_product() {
    let order = 40;
    let e = eta(order);
    let p = euler_product(order + 1);
    let shift = rat(1, 24);
    for m in 0..(order as i64 - 1) {
        assert_eq!(
            e.coefficient(&(rat_i(m) + &shift)).unwrap(),
            p.coefficient(&rat_i(m)).unwrap(),
            "coefficient of q^({} + 1/24)",
            m
        );
    }
}

fn sigma(k: u32, n: i64) -> BigRational {
    let mut s = BigRational::from_integer(BigInt::from(0));
    for d in 1..=n {
        if n % d == 0 {
            let mut p = BigRational::one();
            for _ in 0..k {
                p *= rat_i(d);
            }
            s += p;
        }
    }
    s
}

#[test]
fn eisenstein_matches_divisor_sums() {
    let order = 25;
    for (k, c) in [(2u32, -24i64), (4, 240), (6, -504), (8, 480), (10, -264)] {
        let e = eisenstein(k, order);
        assert_eq!(e.coefficient(&rat_i(0)).unwrap(), rat_i(1));
        for n in 1..order as i64 {
            assert_eq!(
                e.coefficient(&rat_i(n)).unwrap(),
                rat_i(c) * sigma(k - 1, n),
                "E{} at q^{}",
                k,
                n
            );
        }
    }
}

#[test]
fn delta_matches_frozen_tau_values() {
    let d = delta(8);
    for (n, tau) in [
        (1i64, 1i64),
        (2, -24),
        (3, 252),
        (4, -1472),
        (5, 4830),
        (6, -6048),
        (7, -16744),
    ] {
        assert_eq!(d.coefficient(&rat_i(n)).unwrap(), rat_i(tau), "tau({})", n);
    }
}

#[test]
fn serre_derivative_classical_images() {
    let order = 30;
    // S(E4) = -E6/3, S(E6) = -E4^2/2 (Ramanujan's identities)
    let s4 = serre_derivative(&eisenstein(4, order), &rat_i(4));
    let expect4 = eisenstein(6, order).scale_rational(&rat(-1, 3));
    assert!(s4.sub(&expect4).is_zero());
    let s6 = serre_derivative(&eisenstein(6, order), &rat_i(6));
    let expect6 = eisenstein(4, order).pow(2).scale_rational(&rat(-1, 2));
    assert!(s6.sub(&expect6).is_zero());
    // S(Delta) = 0: Delta is annihilated because theta Delta = E2 Delta
    let sd = serre_derivative(&delta(order), &rat_i(12));
    assert!(sd.is_zero());
}

#[test]
fn rankin_cohen_bracket_is_delta() {
    // [E4, E6]_1 = 4 E4 theta(E6) - 6 E6 theta(E4) = -3456 Delta
    let order = 30;
    let e4 = eisenstein(4, order);
    let e6 = eisenstein(6, order);
    let bracket = e4
        .mul(&e6.theta())
        .scale_rational(&rat_i(4))
        .sub(&e6.mul(&e4.theta()).scale_rational(&rat_i(6)));
    let expect = delta(order).scale_rational(&rat_i(-3456));
    assert!(bracket.sub(&expect).is_zero());
}

fn int_mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|x| BigInt::from(*x)).collect())
        .collect()
}

#[test]
fn smith_normal_form_frozen_oracles() {
    let cases: &[(&[&[i64]], &[i64])] = &[
        (&[&[2, 0], &[0, 3]], &[1, 6]),
        (&[&[4, 0], &[0, 6]], &[2, 12]),
        (&[&[1, 2], &[3, 4]], &[1, 2]),
        (&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]], &[2, 2, 2]),
        (&[&[6, 4], &[4, 6]], &[2, 10]),
    ];
    for (m, expect) in cases {
        let (divs, _) = smith_normal_form(&int_mat(m));
        let got: Vec<BigInt> = divs;
        let want: Vec<BigInt> = expect.iter().map(|x| BigInt::from(*x)).collect();
        assert_eq!(got, want, "SNF of {:?}", m);
    }
}
