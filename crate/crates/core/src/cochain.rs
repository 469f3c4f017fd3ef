//! Exterior algebra on the dual generators `w^a_A`.
//!
//! A [`WedgeMonomial`] keeps its factors strictly increasing under a
//! [`GenOrder`]; products are brought into that form by sorting and tracking
//! the sign of the permutation. The Chevalley-Eilenberg differential is the
//! odd derivation extending `(d xi)(u, v) = -xi({u, v})` on generators.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::ham::sl2_coadjoint;
use crate::ham::{bracket_coefficient, AlgebraVariant, Generator, HamMonomial, QuadraticGenerator};
use crate::linalg::Rational;

/// Total order on generators used for canonical wedge monomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GenOrder {
    /// `(A, a)` ascending.
    #[default]
    Standard,
    /// `(A, a)` descending.
    Reversed,
}

impl GenOrder {
    pub fn cmp(self, x: &Generator, y: &Generator) -> Ordering {
        match self {
            GenOrder::Standard => x.cmp(y),
            GenOrder::Reversed => y.cmp(x),
        }
    }

    pub fn sort(self, gens: &mut [Generator]) {
        gens.sort_by(|x, y| self.cmp(x, y));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgeMonomial {
    factors: Vec<Generator>,
}

impl WedgeMonomial {
    pub fn empty() -> Self {
        WedgeMonomial {
            factors: Vec::new(),
        }
    }

    /// Sorts `factors` under `order`. Returns the sign of the sorting
    /// permutation and the canonical monomial, or `None` when a factor
    /// repeats (the product vanishes).
    pub fn from_factors(mut factors: Vec<Generator>, order: GenOrder) -> Option<(bool, Self)> {
        let mut odd = false;
        for i in 1..factors.len() {
            let mut j = i;
            while j > 0 {
                match order.cmp(&factors[j - 1], &factors[j]) {
                    Ordering::Greater => {
                        factors.swap(j - 1, j);
                        odd = !odd;
                        j -= 1;
                    }
                    Ordering::Equal => return None,
                    Ordering::Less => break,
                }
            }
        }
        Some((odd, WedgeMonomial { factors }))
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn weight(&self) -> i64 {
        self.factors.iter().map(|g| g.weight()).sum()
    }

    pub fn sl2_weight(&self) -> i64 {
        self.factors.iter().map(|g| g.sl2_weight()).sum()
    }

    /// Sorted Hamiltonian degrees of the factors. The `sp(2)` action
    /// preserves it.
    pub fn signature(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.factors.iter().map(|g| g.degree()).collect();
        s.sort_unstable();
        s
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.factors.contains(&g)
    }
}

impl fmt::Display for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", names.join("^"))
    }
}

/// Homogeneous element of the exterior algebra: fixed degree, weight,
/// variant and generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    variant: AlgebraVariant,
    order: GenOrder,
    degree: usize,
    weight: i64,
    terms: BTreeMap<WedgeMonomial, Rational>,
}

impl Cochain {
    pub fn zero(variant: AlgebraVariant, order: GenOrder, degree: usize, weight: i64) -> Self {
        Cochain {
            variant,
            order,
            degree,
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(variant: AlgebraVariant, order: GenOrder, m: WedgeMonomial) -> Self {
        let mut c = Cochain::zero(variant, order, m.degree(), m.weight());
        c.add_term(m, &Rational::one());
        c
    }

    pub fn variant(&self) -> AlgebraVariant {
        self.variant
    }

    pub fn order(&self) -> GenOrder {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &WedgeMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c * m`.
    ///
    /// Panics if `m` has a different degree or weight than the cochain.
    pub fn add_term(&mut self, m: WedgeMonomial, c: &Rational) {
        assert!(
            m.degree() == self.degree && m.weight() == self.weight,
            "monomial {m} does not have degree {} and weight {}",
            self.degree,
            self.weight
        );
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// Adds `c * (sign) * sort(factors)`, dropping products with a repeated
    /// factor.
    pub fn add_product(&mut self, factors: Vec<Generator>, c: &Rational) {
        if let Some((odd, m)) = WedgeMonomial::from_factors(factors, self.order) {
            if odd {
                self.add_term(m, &-c);
            } else {
                self.add_term(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, factor: &Rational, other: &Cochain) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &(factor * c));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Cochain {
        let mut out = Cochain::zero(self.variant, self.order, self.degree, self.weight);
        out.add_scaled(factor, self);
        out
    }

    /// Exterior product `self ^ other`, carried in `variant`.
    pub fn wedge(&self, other: &Cochain, variant: AlgebraVariant) -> Cochain {
        let mut out = Cochain::zero(
            variant,
            self.order,
            self.degree + other.degree,
            self.weight + other.weight,
        );
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut f = m1.factors.clone();
                f.extend_from_slice(&m2.factors);
                out.add_product(f, &(c1 * c2));
            }
        }
        out
    }

    /// Monomials with a factor of Hamiltonian degree 2 (the `sp(2)` layer).
    pub fn has_vertical_part(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.factors.iter().any(|g| g.degree() == 2))
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            let c = crate::linalg::format_rational(c);
            if c.starts_with('-') || n == 0 {
                write!(f, "{c}*{m}")?;
            } else {
                write!(f, "+{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// `d xi` for `xi = w^a_A`: the sum over unordered pairs `{p, q}` of
/// monomials in the Lie algebra of `-xi({p, q}) p* ^ q*`, with `p* < q*`.
pub fn differential_of_generator(
    variant: AlgebraVariant,
    order: GenOrder,
    xi: Generator,
) -> Vec<(Generator, Generator, Rational)> {
    let target = xi.monomial();
    let min = variant.min_degree();
    let mut out = Vec::new();
    for deg_p in min..=(xi.degree() + 2 - min) {
        for p in HamMonomial::of_degree(deg_p) {
            // {m(a,b), m(c,d)} lands on m(a+c-1, b+d-1).
            let (Some(qa), Some(qb)) = (
                (target.a + 1).checked_sub(p.a),
                (target.b + 1).checked_sub(p.b),
            ) else {
                continue;
            };
            let q = HamMonomial::new(qa, qb);
            let (ps, qs) = (p.dual(), q.dual());
            if order.cmp(&ps, &qs) != Ordering::Less {
                continue;
            }
            let c = bracket_coefficient(p, q);
            if !c.is_zero() {
                out.push((ps, qs, -Rational::from_integer(c)));
            }
        }
    }
    out
}

/// Chevalley-Eilenberg coboundary, extended from generators as an odd
/// derivation.
pub fn apply_differential(c: &Cochain) -> Cochain {
    let mut cache: HashMap<Generator, Vec<(Generator, Generator, Rational)>> = HashMap::new();
    let mut out = Cochain::zero(c.variant, c.order, c.degree + 1, c.weight);
    for (m, coeff) in &c.terms {
        for (i, &xi) in m.factors.iter().enumerate() {
            let dxi = cache
                .entry(xi)
                .or_insert_with(|| differential_of_generator(c.variant, c.order, xi));
            let sign_coeff = if i % 2 == 0 { coeff.clone() } else { -coeff };
            for (p, q, k) in dxi.iter() {
                let mut f = Vec::with_capacity(m.factors.len() + 1);
                f.extend_from_slice(&m.factors[..i]);
                f.push(*p);
                f.push(*q);
                f.extend_from_slice(&m.factors[i + 1..]);
                out.add_product(f, &(&sign_coeff * k));
            }
        }
    }
    out
}

/// Coadjoint action of a quadratic Hamiltonian, extended as an even
/// derivation.
pub fn apply_sl2(q: QuadraticGenerator, c: &Cochain) -> Cochain {
    let mut out = Cochain::zero(c.variant, c.order, c.degree, c.weight);
    for (m, coeff) in &c.terms {
        for (i, &g) in m.factors.iter().enumerate() {
            for (h, k) in sl2_coadjoint(q, g) {
                let mut f = m.factors.clone();
                f[i] = h;
                out.add_product(f, &(coeff * &k));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn w(a: u32, d: u32) -> Generator {
        Generator::new(a, d)
    }

    #[test]
    fn sorting_sign() {
        let (odd, m) =
            WedgeMonomial::from_factors(vec![w(1, 3), w(0, 3)], GenOrder::Standard).unwrap();
        assert!(odd);
        assert_eq!(m.factors(), &[w(0, 3), w(1, 3)]);
        let (odd, _) =
            WedgeMonomial::from_factors(vec![w(2, 3), w(0, 3), w(1, 3)], GenOrder::Standard)
                .unwrap();
        assert!(!odd);
        assert!(
            WedgeMonomial::from_factors(vec![w(0, 3), w(1, 4), w(0, 3)], GenOrder::Standard)
                .is_none()
        );
        let (odd, m) =
            WedgeMonomial::from_factors(vec![w(0, 3), w(1, 3)], GenOrder::Reversed).unwrap();
        assert!(odd);
        assert_eq!(m.factors(), &[w(1, 3), w(0, 3)]);
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let a = Cochain::from_monomial(
            AlgebraVariant::Ham0,
            GenOrder::Standard,
            WedgeMonomial::from_factors(vec![w(0, 3)], GenOrder::Standard)
                .unwrap()
                .1,
        );
        let b = Cochain::from_monomial(
            AlgebraVariant::Ham0,
            GenOrder::Standard,
            WedgeMonomial::from_factors(vec![w(2, 4)], GenOrder::Standard)
                .unwrap()
                .1,
        );
        let ab = a.wedge(&b, AlgebraVariant::Ham0);
        let ba = b.wedge(&a, AlgebraVariant::Ham0);
        assert_eq!(ab, ba.scaled(&rat(-1)));
        assert!(a.wedge(&a, AlgebraVariant::Ham0).is_zero());
    }

    #[test]
    fn d_of_zero_is_zero() {
        let z = Cochain::zero(AlgebraVariant::Ham, GenOrder::Standard, 3, 4);
        let dz = apply_differential(&z);
        assert!(dz.is_zero());
        assert_eq!(dz.degree(), 4);
    }

    #[test]
    fn d_squared_vanishes_on_generators() {
        for variant in [AlgebraVariant::Ham, AlgebraVariant::Ham0] {
            for order in [GenOrder::Standard, GenOrder::Reversed] {
                for degree in variant.min_degree()..=7 {
                    for a in 0..=degree {
                        let c = Cochain::from_monomial(
                            variant,
                            order,
                            WedgeMonomial::from_factors(vec![w(a, degree)], order)
                                .unwrap()
                                .1,
                        );
                        let dd = apply_differential(&apply_differential(&c));
                        assert!(
                            dd.is_zero(),
                            "d^2 w{a}_{degree} = {dd} ({variant}, {order:?})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn differential_pairs_respect_variant() {
        let d = differential_of_generator(AlgebraVariant::Ham0, GenOrder::Standard, w(1, 3));
        assert!(d.iter().all(|(p, q, _)| p.degree() >= 2 && q.degree() >= 2));
        let d = differential_of_generator(AlgebraVariant::Ham, GenOrder::Standard, w(1, 3));
        assert!(d.iter().any(|(p, _, _)| p.degree() == 1));
    }
}
