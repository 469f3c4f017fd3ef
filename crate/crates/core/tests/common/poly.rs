//! Poisson brackets computed by differentiating ordinary polynomials
//! `x^a y^b / (a! b!)`: `{f, g} = f_x g_y - f_y g_x`.

use std::collections::BTreeMap;

use hamforms::linalg::rat;
use hamforms::{HamElement, HamMonomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

type Poly = BTreeMap<(u32, u32), Rational>;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn poly_of(m: HamMonomial) -> Poly {
    let c = Rational::new(BigInt::one(), factorial(m.a) * factorial(m.b));
    BTreeMap::from([((m.a, m.b), c)])
}

fn dx(p: &Poly) -> Poly {
    p.iter()
        .filter(|((i, _), _)| *i > 0)
        .map(|(&(i, j), c)| ((i - 1, j), c * rat(i as i64)))
        .collect()
}

fn dy(p: &Poly) -> Poly {
    p.iter()
        .filter(|((_, j), _)| *j > 0)
        .map(|(&(i, j), c)| ((i, j - 1), c * rat(j as i64)))
        .collect()
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), a) in p {
        for (&(k, l), b) in q {
            *out.entry((i + k, j + l)).or_insert_with(Rational::zero) += a * b;
        }
    }
    out
}

fn sub(p: &Poly, q: &Poly) -> Poly {
    let mut out = p.clone();
    for (k, c) in q {
        *out.entry(*k).or_insert_with(Rational::zero) -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Oracle bracket, re-expressed in the divided-power basis with the
/// constant term dropped.
pub fn oracle(p: HamMonomial, q: HamMonomial) -> HamElement {
    let (f, g) = (poly_of(p), poly_of(q));
    let poly = sub(&mul(&dx(&f), &dy(&g)), &mul(&dy(&f), &dx(&g)));
    let mut out = HamElement::zero();
    for ((i, j), c) in poly {
        if i + j == 0 {
            continue;
        }
        let scale = Rational::from_integer(factorial(i) * factorial(j));
        out.add_term(HamMonomial::new(i, j), &(c * scale));
    }
    out
}

pub fn monomials(max_degree: u32) -> Vec<HamMonomial> {
    (1..=max_degree).flat_map(HamMonomial::of_degree).collect()
}
