//! Weight-graded Sp-basic cochain complexes.
//!
//! An Sp-basic cochain is horizontal (no factor from the degree-2 layer,
//! enforced by the generator alphabet) and invariant under the coadjoint
//! action of the three quadratic Hamiltonians. The action preserves the
//! multiset of factor degrees, so invariants are computed block by block:
//! the diagonal `xy` action is evaluated and its kernel taken, then the
//! joint kernel of the stacked `x^2/2` and `y^2/2` action matrices is
//! computed on that kernel.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::cochain::{apply_differential, apply_sl2, Cochain, GenOrder, WedgeMonomial};
use crate::error::{Error, Result};
use crate::ham::{generators_of, AlgebraVariant, Generator, QuadraticGenerator};
use crate::linalg::{make_primitive, rref, QMatrix, QVector, Rational};

/// Strictly increasing `k`-subsets of the horizontal alphabet with total
/// weight `w`, in lexicographic order of their factor sequences.
pub fn enumerate_monomials(
    variant: AlgebraVariant,
    k: usize,
    w: i64,
    order: GenOrder,
) -> Vec<WedgeMonomial> {
    if k == 0 {
        return if w == 0 {
            vec![WedgeMonomial::empty()]
        } else {
            Vec::new()
        };
    }
    // Only the two degree-1 generators have negative weight.
    let max_single = match variant {
        AlgebraVariant::Ham => w + 2,
        AlgebraVariant::Ham0 => w,
    };
    let mut gens = generators_of(variant, max_single);
    order.sort(&mut gens);
    // Ascending weights of each suffix, for bounding partial sums.
    let suffix_weights: Vec<Vec<i64>> = (0..=gens.len())
        .map(|j| {
            let mut ws: Vec<i64> = gens[j..].iter().map(|g| g.weight()).collect();
            ws.sort_unstable();
            ws
        })
        .collect();

    struct Search<'a> {
        gens: &'a [Generator],
        suffix_weights: &'a [Vec<i64>],
        order: GenOrder,
        out: Vec<WedgeMonomial>,
        stack: Vec<Generator>,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, left: usize, weight: i64) {
            if left == 0 {
                if weight == 0 {
                    let (odd, m) = WedgeMonomial::from_factors(self.stack.clone(), self.order)
                        .expect("distinct factors");
                    debug_assert!(!odd);
                    self.out.push(m);
                }
                return;
            }
            let ws = &self.suffix_weights[start];
            if ws.len() < left {
                return;
            }
            let lo: i64 = ws[..left].iter().sum();
            let hi: i64 = ws[ws.len() - left..].iter().sum();
            if weight < lo || weight > hi {
                return;
            }
            for j in start..self.gens.len() {
                let g = self.gens[j];
                self.stack.push(g);
                self.run(j + 1, left - 1, weight - g.weight());
                self.stack.pop();
            }
        }
    }

    let mut s = Search {
        gens: &gens,
        suffix_weights: &suffix_weights,
        order,
        out: Vec::new(),
        stack: Vec::with_capacity(k),
    };
    s.run(0, k, w);
    s.out
}

/// Basis of the Sp-basic cochains of one degree and weight.
///
/// Each element carries an anchor monomial where it is nonzero and every
/// other element vanishes, which makes coordinates a lookup.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    variant: AlgebraVariant,
    order: GenOrder,
    degree: usize,
    weight: i64,
    ambient_dim: usize,
    elements: Vec<Cochain>,
    anchors: Vec<(WedgeMonomial, Rational)>,
}

impl GradedBasis {
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

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Number of horizontal monomials before imposing invariance.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn elements(&self) -> &[Cochain] {
        &self.elements
    }

    pub fn zero_cochain(&self) -> Cochain {
        Cochain::zero(self.variant, self.order, self.degree, self.weight)
    }

    /// `sum coords_i * element_i`.
    pub fn combine(&self, coords: &[Rational]) -> Result<Cochain> {
        if coords.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a basis of size {}",
                coords.len(),
                self.dim()
            )));
        }
        let mut c = self.zero_cochain();
        for (x, e) in coords.iter().zip(&self.elements) {
            c.add_scaled(x, e);
        }
        Ok(c)
    }
}

/// Sp-basic subspace of `C^k` at weight `w`, as primitive integer cochains.
pub fn sp_basic_subspace(
    variant: AlgebraVariant,
    k: usize,
    w: i64,
    order: GenOrder,
) -> Result<GradedBasis> {
    let monomials = enumerate_monomials(variant, k, w, order);
    let ambient_dim = monomials.len();
    let mut blocks: Vec<(Vec<u32>, Vec<WedgeMonomial>)> = Vec::new();
    let mut block_of: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for m in monomials {
        let sig = m.signature();
        let idx = *block_of.entry(sig.clone()).or_insert_with(|| {
            blocks.push((sig, Vec::new()));
            blocks.len() - 1
        });
        blocks[idx].1.push(m);
    }

    let mut elements = Vec::new();
    let mut anchors = Vec::new();
    for (_, block) in blocks {
        let zero_h: Vec<WedgeMonomial> = block
            .into_iter()
            .map(|m| cartan_eigenvalue(variant, order, &m).map(|ev| (m, ev)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, ev)| ev.is_zero())
            .map(|(m, _)| m)
            .collect();
        if zero_h.is_empty() {
            continue;
        }
        let action = stacked_action(variant, order, &zero_h)?;
        let r = rref(&action);
        for f in r.free_columns() {
            let mut v: QVector = vec![Rational::zero(); zero_h.len()];
            v[f] = Rational::from_integer(1.into());
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.matrix[(i, f)].clone();
            }
            make_primitive(&mut v);
            let mut c = Cochain::zero(variant, order, k, w);
            for (m, x) in zero_h.iter().zip(&v) {
                c.add_term(m.clone(), x);
            }
            anchors.push((zero_h[f].clone(), v[f].clone()));
            elements.push(c);
        }
    }
    Ok(GradedBasis {
        variant,
        order,
        degree: k,
        weight: w,
        ambient_dim,
        elements,
        anchors,
    })
}

fn cartan_eigenvalue(
    variant: AlgebraVariant,
    order: GenOrder,
    m: &WedgeMonomial,
) -> Result<Rational> {
    let c = Cochain::from_monomial(variant, order, m.clone());
    let hc = apply_sl2(QuadraticGenerator::XY, &c);
    let ev = hc.coeff(m);
    if hc.len() > usize::from(!ev.is_zero()) {
        return Err(Error::Internal(format!(
            "xy does not act diagonally on {m}"
        )));
    }
    Ok(ev)
}

/// Rows: `x^2/2` images then `y^2/2` images, in monomial order.
fn stacked_action(
    variant: AlgebraVariant,
    order: GenOrder,
    cols: &[WedgeMonomial],
) -> Result<QMatrix> {
    let mut blocks = Vec::new();
    for q in [QuadraticGenerator::XSquared, QuadraticGenerator::YSquared] {
        let images: Vec<Cochain> = cols
            .iter()
            .map(|m| apply_sl2(q, &Cochain::from_monomial(variant, order, m.clone())))
            .collect();
        let mut rows: BTreeMap<&WedgeMonomial, usize> = BTreeMap::new();
        for img in &images {
            for (m, _) in img.terms() {
                rows.insert(m, 0);
            }
        }
        for (i, v) in rows.values_mut().enumerate() {
            *v = i;
        }
        let mut mat = QMatrix::zeros(rows.len(), cols.len());
        for (j, img) in images.iter().enumerate() {
            for (m, x) in img.terms() {
                mat[(rows[m], j)] = x.clone();
            }
        }
        blocks.push(mat);
    }
    blocks[0].vstack(&blocks[1])
}

/// Exact coordinates of `c` in `basis`. Fails when `c` is not in the span.
pub fn coordinates(c: &Cochain, basis: &GradedBasis) -> Result<QVector> {
    let not_in_span = |detail: String| Error::NotInSpan {
        degree: basis.degree,
        weight: basis.weight,
        detail,
    };
    if c.variant() != basis.variant || c.order() != basis.order {
        return Err(Error::Variant(format!(
            "cochain over {} ({:?}) against a basis over {} ({:?})",
            c.variant(),
            c.order(),
            basis.variant,
            basis.order
        )));
    }
    if c.degree() != basis.degree || c.weight() != basis.weight {
        return Err(not_in_span(format!(
            "cochain has degree {} and weight {}",
            c.degree(),
            c.weight()
        )));
    }
    let coords: QVector = basis.anchors.iter().map(|(m, a)| c.coeff(m) / a).collect();
    let mut residual = c.clone();
    for (x, e) in coords.iter().zip(&basis.elements) {
        if !x.is_zero() {
            residual.add_scaled(&-x, e);
        }
    }
    if let Some((m, x)) = residual.terms().next() {
        return Err(not_in_span(format!(
            "{} residual terms, e.g. {}*{m}",
            residual.len(),
            crate::linalg::format_rational(x)
        )));
    }
    Ok(coords)
}

/// `w^0_1 ^ w^1_1 ^ c`, moved from `ham0` into `ham`.
pub fn wedge_omega(c: &Cochain) -> Result<Cochain> {
    if c.variant() != AlgebraVariant::Ham0 {
        return Err(Error::Variant(format!(
            "the omega map takes ham0 cochains, got {}",
            c.variant()
        )));
    }
    if let Some((m, _)) = c
        .terms()
        .find(|(m, _)| m.factors().iter().any(|g| g.degree() == 1))
    {
        return Err(Error::Internal(format!(
            "ham0 cochain has a degree-1 factor in {m}"
        )));
    }
    let mut omega = Cochain::zero(AlgebraVariant::Ham, c.order(), 2, -2);
    omega.add_product(
        vec![Generator::new(0, 1), Generator::new(1, 1)],
        &Rational::from_integer(1.into()),
    );
    Ok(omega.wedge(c, AlgebraVariant::Ham))
}

/// Weight-graded Sp-basic complex with memoized bases and differentials.
///
/// Each degree is built at most once; the caches are write-once and the
/// complex can be shared across threads.
#[derive(Debug)]
pub struct CochainComplex {
    variant: AlgebraVariant,
    weight: i64,
    order: GenOrder,
    bases: Vec<OnceLock<GradedBasis>>,
    differentials: Vec<OnceLock<QMatrix>>,
}

impl CochainComplex {
    pub fn new(variant: AlgebraVariant, weight: i64, order: GenOrder) -> Self {
        let top = Self::degree_bound(variant, weight);
        CochainComplex {
            variant,
            weight,
            order,
            bases: (0..=top + 1).map(|_| OnceLock::new()).collect(),
            differentials: (0..=top + 1).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Largest degree that can carry cochains of this weight. At most two
    /// factors have weight -1 and every other factor has weight >= 1.
    pub fn degree_bound(variant: AlgebraVariant, weight: i64) -> usize {
        match variant {
            AlgebraVariant::Ham => (weight + 4).max(0) as usize,
            AlgebraVariant::Ham0 => weight.max(0) as usize,
        }
    }

    pub fn variant(&self) -> AlgebraVariant {
        self.variant
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn order(&self) -> GenOrder {
        self.order
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 2
    }

    /// Sp-basic basis of `C^k`, for `k <= max_degree() + 1`.
    pub fn basis(&self, k: usize) -> Result<&GradedBasis> {
        let slot = self.bases.get(k).ok_or_else(|| {
            Error::Dimension(format!(
                "degree {k} is past the bound {} for weight {}",
                self.max_degree() + 1,
                self.weight
            ))
        })?;
        if let Some(b) = slot.get() {
            return Ok(b);
        }
        let b = sp_basic_subspace(self.variant, k, self.weight, self.order)?;
        let _ = slot.set(b);
        Ok(slot.get().expect("just set"))
    }

    pub fn dim(&self, k: usize) -> Result<usize> {
        Ok(self.basis(k)?.dim())
    }

    /// Matrix of `d: C^k -> C^{k+1}`; column `j` holds the coordinates of
    /// `d(e_j)` in the degree `k+1` basis.
    pub fn differential(&self, k: usize) -> Result<&QMatrix> {
        let slot = self
            .differentials
            .get(k)
            .filter(|_| k <= self.max_degree())
            .ok_or_else(|| {
                Error::Dimension(format!(
                    "no differential out of degree {k}; the bound is {}",
                    self.max_degree()
                ))
            })?;
        if let Some(d) = slot.get() {
            return Ok(d);
        }
        let m = differential_matrix_of(self.basis(k)?, self.basis(k + 1)?)?;
        let _ = slot.set(m);
        Ok(slot.get().expect("just set"))
    }
}

fn differential_matrix_of(source: &GradedBasis, target: &GradedBasis) -> Result<QMatrix> {
    let columns: Vec<QVector> = source
        .elements
        .iter()
        .map(|e| coordinates(&apply_differential(e), target))
        .collect::<Result<_>>()?;
    QMatrix::from_columns(target.dim(), &columns)
}

/// Matrix of `d` from the Sp-basic `C^k` to the Sp-basic `C^{k+1}`.
pub fn differential_matrix(
    variant: AlgebraVariant,
    k: usize,
    w: i64,
    order: GenOrder,
) -> Result<QMatrix> {
    let source = sp_basic_subspace(variant, k, w, order)?;
    let target = sp_basic_subspace(variant, k + 1, w, order)?;
    differential_matrix_of(&source, &target)
}
