//! Formal Hamiltonian polynomials on the plane in the divided-power basis
//! `m(a, b) = x^a/a! * y^b/b!`, with `{x, y} = 1`.
//!
//! In this basis the Poisson bracket of two monomials is a single monomial
//! with a binomial structure constant:
//!
//! ```text
//! {m(a,b), m(c,d)} = [C(a+c-1, a-1) C(b+d-1, d-1) - C(a+c-1, c-1) C(b+d-1, b-1)] m(a+c-1, b+d-1)
//! ```
//!
//! Constants are dropped, so the algebra is polynomials modulo constants.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HamMonomial {
    /// Exponent of `x`.
    pub a: u32,
    /// Exponent of `y`.
    pub b: u32,
}

impl HamMonomial {
    pub const fn new(a: u32, b: u32) -> Self {
        HamMonomial { a, b }
    }

    pub fn degree(self) -> u32 {
        self.a + self.b
    }

    /// The dual generator `w^a_A`.
    pub fn dual(self) -> Generator {
        Generator::new(self.a, self.degree())
    }

    /// All monomials of degree `d`, by increasing `x` exponent.
    pub fn of_degree(d: u32) -> impl Iterator<Item = HamMonomial> {
        (0..=d).map(move |a| HamMonomial::new(a, d - a))
    }
}

impl fmt::Display for HamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m({},{})", self.a, self.b)
    }
}

/// Dual basis element `w^a_A` of the degree-`A` Hamiltonians, dual to
/// `m(a, A - a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    // Field order gives the derived (A, a) ordering.
    degree: u32,
    index: u32,
}

impl Generator {
    pub fn new(index: u32, degree: u32) -> Self {
        assert!(
            degree >= 1 && index <= degree,
            "invalid generator w{index}_{degree}"
        );
        Generator { degree, index }
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn degree(self) -> u32 {
        self.degree
    }

    pub fn weight(self) -> i64 {
        self.degree as i64 - 2
    }

    /// Eigenvalue of the Cartan element `xy` in the coadjoint action.
    pub fn sl2_weight(self) -> i64 {
        2 * self.index as i64 - self.degree as i64
    }

    pub fn monomial(self) -> HamMonomial {
        HamMonomial::new(self.index, self.degree - self.index)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}_{}", self.index, self.degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraVariant {
    /// All formal Hamiltonian vector fields (degrees >= 1).
    Ham,
    /// Fields vanishing at the origin (degrees >= 2).
    Ham0,
}

impl AlgebraVariant {
    /// Smallest Hamiltonian degree in the Lie algebra.
    pub fn min_degree(self) -> u32 {
        match self {
            AlgebraVariant::Ham => 1,
            AlgebraVariant::Ham0 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgebraVariant::Ham => "ham",
            AlgebraVariant::Ham0 => "ham0",
        }
    }
}

impl fmt::Display for AlgebraVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AlgebraVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ham" => Ok(AlgebraVariant::Ham),
            "ham0" => Ok(AlgebraVariant::Ham0),
            _ => Err(format!("unknown variant `{s}` (expected ham or ham0)")),
        }
    }
}

/// Sparse combination of Hamiltonian monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HamElement(BTreeMap<HamMonomial, Rational>);

impl HamElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: HamMonomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: HamMonomial, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, m: HamMonomial) -> Rational {
        self.0.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (HamMonomial, &Rational)> {
        self.0.iter().map(|(&m, c)| (m, c))
    }

    pub fn add_term(&mut self, m: HamMonomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &HamElement) {
        for (m, c) in other.terms() {
            self.add_term(m, &(factor * c));
        }
    }

    pub fn negated(&self) -> HamElement {
        let mut out = HamElement::zero();
        out.add_scaled(&-Rational::one(), self);
        out
    }

    /// Bilinear extension of [`poisson_bracket`].
    pub fn bracket(&self, other: &HamElement) -> HamElement {
        let mut out = HamElement::zero();
        for (p, a) in self.terms() {
            for (q, b) in other.terms() {
                out.add_scaled(&(a * b), &poisson_bracket(p, q));
            }
        }
        out
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Structure constant `c` with `{p, q} = c * m(a+c-1, b+d-1)`.
pub fn bracket_coefficient(p: HamMonomial, q: HamMonomial) -> BigInt {
    let (a, b, c, d) = (p.a as i64, p.b as i64, q.a as i64, q.b as i64);
    binomial(a + c - 1, a - 1) * binomial(b + d - 1, d - 1)
        - binomial(a + c - 1, c - 1) * binomial(b + d - 1, b - 1)
}

/// `{p, q}` in the divided-power basis; results of degree 0 are dropped.
pub fn poisson_bracket(p: HamMonomial, q: HamMonomial) -> HamElement {
    if p.degree() + q.degree() <= 2 {
        return HamElement::zero();
    }
    let c = bracket_coefficient(p, q);
    if c.is_zero() {
        return HamElement::zero();
    }
    // Nonzero coefficient implies both exponent sums are at least 1.
    let m = HamMonomial::new(p.a + q.a - 1, p.b + q.b - 1);
    HamElement::term(m, Rational::from_integer(c))
}

/// Cochain generators of the horizontal alphabet up to `max_weight`, ordered
/// by `(A, a)`: degree 1 (for [`AlgebraVariant::Ham`]) and degrees >= 3. The
/// degree-2 layer spans `sp(2)` and never appears in horizontal cochains.
pub fn generators_of(variant: AlgebraVariant, max_weight: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    let mut degree = variant.min_degree();
    while degree as i64 - 2 <= max_weight {
        if degree != 2 {
            out.extend((0..=degree).map(|a| Generator::new(a, degree)));
        }
        degree += 1;
    }
    out
}

/// The three quadratic Hamiltonians spanning `sp(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadraticGenerator {
    /// `x^2/2`; lowers the index of a dual generator.
    XSquared,
    /// `xy`; acts diagonally.
    XY,
    /// `y^2/2`; raises the index of a dual generator.
    YSquared,
}

impl QuadraticGenerator {
    pub const ALL: [QuadraticGenerator; 3] = [
        QuadraticGenerator::XSquared,
        QuadraticGenerator::YSquared,
        QuadraticGenerator::XY,
    ];

    pub fn hamiltonian(self) -> HamMonomial {
        match self {
            QuadraticGenerator::XSquared => HamMonomial::new(2, 0),
            QuadraticGenerator::XY => HamMonomial::new(1, 1),
            QuadraticGenerator::YSquared => HamMonomial::new(0, 2),
        }
    }
}

/// Coadjoint action `(X . xi)(u) = -xi({X, u})` of a quadratic Hamiltonian on
/// a dual generator. The result has the same degree as `g`.
pub fn sl2_coadjoint(q: QuadraticGenerator, g: Generator) -> Vec<(Generator, Rational)> {
    let x = q.hamiltonian();
    let target = g.monomial();
    HamMonomial::of_degree(g.degree())
        .filter_map(|u| {
            let c = poisson_bracket(x, u).coeff(target);
            (!c.is_zero()).then(|| (u.dual(), -c))
        })
        .collect()
}
