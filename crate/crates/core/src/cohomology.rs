//! Betti tables, cohomology representatives and the omega-wedge check.

use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;

use num_traits::Zero;

use crate::cochain::{apply_differential, Cochain, GenOrder};
use crate::complex::{coordinates, wedge_omega, CochainComplex};
use crate::error::{Error, Result};
use crate::groebner::{
    gb_linear, kernel_via_normal_form, normal_form, quotient_gb, GroebnerBasis, LinearForm,
    VarOrder,
};
use crate::ham::AlgebraVariant;
use crate::linalg::{format_rational, make_primitive, nullspace_basis, rank, QMatrix, QVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiRow {
    pub degree: usize,
    pub dim: usize,
    /// Rank of `d: C^{k-1} -> C^k`.
    pub rank_in: usize,
    /// Rank of `d: C^k -> C^{k+1}`.
    pub rank_out: usize,
    pub betti: usize,
}

/// Gröbner bases for one degree: `gb_e` spans the image of the incoming
/// differential, `gb_k` the kernel of the outgoing one, both in the
/// coordinates `y1..yn` of the Sp-basic basis.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub gb_e: GroebnerBasis,
    pub gb_k: GroebnerBasis,
    pub quotient: GroebnerBasis,
}

fn coordinate_order(n: usize) -> VarOrder {
    VarOrder::indexed("y", n)
}

/// Image, kernel and quotient Gröbner bases at degree `k`.
pub fn degree_data(complex: &CochainComplex, k: usize) -> Result<DegreeData> {
    let n = complex.dim(k)?;
    let y = coordinate_order(n);
    let image_forms: Vec<LinearForm> = if k == 0 {
        Vec::new()
    } else {
        complex
            .differential(k - 1)?
            .columns()
            .iter()
            .map(|c| LinearForm::from_vector(c))
            .collect()
    };
    let gb_e = gb_linear(&image_forms, &y)?;
    let kernel_forms = if k <= complex.max_degree() {
        kernel_via_normal_form(complex.differential(k)?, &VarOrder::indexed("c", n), &y)?
    } else {
        (0..n).map(LinearForm::var).collect()
    };
    let gb_k = gb_linear(&kernel_forms, &y)?;
    let quotient = quotient_gb(&gb_k, &gb_e)?;
    Ok(DegreeData {
        gb_e,
        gb_k,
        quotient,
    })
}

fn rank_of_differential(complex: &CochainComplex, k: Option<usize>) -> Result<usize> {
    match k {
        Some(k) if k <= complex.max_degree() => Ok(rank(complex.differential(k)?)),
        _ => Ok(0),
    }
}

/// Betti row for degree `k`, cross-checked three ways: dimension count,
/// size of the Gröbner quotient, and rank augmentation of the kernel by the
/// image.
pub fn betti_row(complex: &CochainComplex, k: usize) -> Result<BettiRow> {
    if k > complex.max_degree() + 1 {
        return Ok(BettiRow {
            degree: k,
            dim: 0,
            rank_in: 0,
            rank_out: 0,
            betti: 0,
        });
    }
    let dim = complex.dim(k)?;
    let rank_in = rank_of_differential(complex, k.checked_sub(1))?;
    let rank_out = rank_of_differential(complex, Some(k))?;
    let by_count = (dim - rank_out)
        .checked_sub(rank_in)
        .ok_or_else(|| Error::Internal(format!("degree {k}: image larger than kernel")))?;

    let data = degree_data(complex, k)?;
    let by_quotient = data.quotient.len();

    let kernel: Vec<QVector> = if k <= complex.max_degree() {
        nullspace_basis(complex.differential(k)?)
    } else {
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| crate::linalg::rat(i64::from(i == j)))
                    .collect()
            })
            .collect()
    };
    let image: Vec<QVector> = match k.checked_sub(1) {
        Some(j) => complex.differential(j)?.columns(),
        None => Vec::new(),
    };
    let both: Vec<QVector> = kernel.iter().chain(&image).cloned().collect();
    let by_augmentation = if both.is_empty() {
        0
    } else {
        rank(&QMatrix::from_columns(dim, &both)?)
            - if image.is_empty() {
                0
            } else {
                rank(&QMatrix::from_columns(dim, &image)?)
            }
    };

    if by_count != by_quotient || by_count != by_augmentation {
        return Err(Error::Internal(format!(
            "{} weight {} degree {k}: Betti number {by_count} by counting, {by_quotient} by Gröbner quotient, {by_augmentation} by rank augmentation",
            complex.variant(),
            complex.weight()
        )));
    }
    Ok(BettiRow {
        degree: k,
        dim,
        rank_in,
        rank_out,
        betti: by_count,
    })
}

/// Betti rows for every degree in `degrees`.
pub fn betti_table(
    complex: &CochainComplex,
    degrees: RangeInclusive<usize>,
) -> Result<Vec<BettiRow>> {
    degrees.map(|k| betti_row(complex, k)).collect()
}

/// Betti rows over every degree that can carry cochains, checking the
/// Euler characteristic along the way.
pub fn full_betti_table(complex: &CochainComplex) -> Result<Vec<BettiRow>> {
    let rows = betti_table(complex, 0..=complex.max_degree())?;
    let euler = |f: &dyn Fn(&BettiRow) -> usize| -> i64 {
        rows.iter()
            .map(|r| {
                if r.degree % 2 == 0 {
                    f(r) as i64
                } else {
                    -(f(r) as i64)
                }
            })
            .sum()
    };
    let (by_dim, by_betti) = (euler(&|r| r.dim), euler(&|r| r.betti));
    if by_dim != by_betti {
        return Err(Error::Internal(format!(
            "Euler characteristic {by_dim} from dimensions but {by_betti} from Betti numbers"
        )));
    }
    Ok(rows)
}

/// Default degree window: every degree with a nonzero cochain space.
pub fn support(complex: &CochainComplex) -> Result<Option<RangeInclusive<usize>>> {
    let mut lo = None;
    let mut hi = None;
    for k in 0..=complex.max_degree() {
        if complex.dim(k)? > 0 {
            lo.get_or_insert(k);
            hi = Some(k);
        }
    }
    Ok(lo.zip(hi).map(|(a, b)| a..=b))
}

/// One cochain per cohomology class in a basis of `H^k`: the kernel
/// generators reduced modulo the image, as integer-primitive cochains.
pub fn cohomology_representatives(complex: &CochainComplex, k: usize) -> Result<Vec<Cochain>> {
    if k > complex.max_degree() {
        return Ok(Vec::new());
    }
    let data = degree_data(complex, k)?;
    let basis = complex.basis(k)?;
    data.quotient
        .generators()
        .iter()
        .map(|g| {
            let mut v = g.to_vector(basis.dim());
            make_primitive(&mut v);
            basis.combine(&v)
        })
        .collect()
}

/// Outcome of testing whether `omega ^ h` is a coboundary in `C^7(ham)_8`,
/// where `h` represents the class in `H^5(ham0)_10`.
#[derive(Clone, Debug)]
pub struct TheoremCertificate {
    pub order: GenOrder,
    pub h: Cochain,
    /// Coordinates of `h` in the Sp-basic basis of `C^5(ham0)_10`.
    pub h_coords: QVector,
    /// Coordinates of `omega ^ h` in the Sp-basic basis of `C^7(ham)_8`.
    pub image_vector: QVector,
    /// Normal form of `image_vector` modulo the image of `d` from `C^6(ham)_8`.
    pub residual: QVector,
    /// Rank of `d: C^6(ham)_8 -> C^7(ham)_8`.
    pub image_rank: usize,
    /// Rank after adjoining `omega ^ k_i` for a kernel basis `k_i` of
    /// `d: C^5(ham0)_10 -> C^6(ham0)_10`.
    pub augmented_rank: usize,
    pub verdict: bool,
}

impl TheoremCertificate {
    pub fn residual_form(&self) -> LinearForm {
        LinearForm::from_vector(&self.residual)
    }
}

pub const THEOREM_SOURCE_WEIGHT: i64 = 10;
pub const THEOREM_SOURCE_DEGREE: usize = 5;

/// Maps the `H^5(ham0)_10` representative into `C^7(ham)_8` by wedging with
/// omega and tests membership in the image of `d`.
pub fn kontsevich_check(order: GenOrder) -> Result<TheoremCertificate> {
    let source = CochainComplex::new(AlgebraVariant::Ham0, THEOREM_SOURCE_WEIGHT, order);
    let target = CochainComplex::new(AlgebraVariant::Ham, THEOREM_SOURCE_WEIGHT - 2, order);
    kontsevich_check_on(&source, &target)
}

/// Same as [`kontsevich_check`] on prebuilt complexes, which must be `ham0`
/// at weight 10 and `ham` at weight 8 with a common generator order.
pub fn kontsevich_check_on(
    source: &CochainComplex,
    target: &CochainComplex,
) -> Result<TheoremCertificate> {
    let k = THEOREM_SOURCE_DEGREE;
    if source.variant() != AlgebraVariant::Ham0
        || target.variant() != AlgebraVariant::Ham
        || source.weight() != THEOREM_SOURCE_WEIGHT
        || target.weight() != THEOREM_SOURCE_WEIGHT - 2
        || source.order() != target.order()
    {
        return Err(Error::Variant(
            "the check runs from ham0 weight 10 to ham weight 8 in one generator order".into(),
        ));
    }
    let reps = cohomology_representatives(source, k)?;
    let [h] = <[Cochain; 1]>::try_from(reps).map_err(|reps| {
        Error::Internal(format!(
            "expected one class in H^{k}(ham0)_10, found {}",
            reps.len()
        ))
    })?;
    if !apply_differential(&h).is_zero() {
        return Err(Error::Internal("representative is not closed".into()));
    }
    let h_coords = coordinates(&h, source.basis(k)?)?;

    let target_basis = target.basis(k + 2)?;
    let image_vector = coordinates(&wedge_omega(&h)?, target_basis)?;
    let closed = target.differential(k + 2)?.mul_vec(&image_vector)?;
    if closed.iter().any(|x| !x.is_zero()) {
        return Err(Error::Internal("omega ^ h is not closed".into()));
    }

    let d6 = target.differential(k + 1)?;
    let y = coordinate_order(target_basis.dim());
    let image_forms: Vec<LinearForm> = d6
        .columns()
        .iter()
        .map(|c| LinearForm::from_vector(c))
        .collect();
    let gb_image = gb_linear(&image_forms, &y)?;
    let residual = normal_form(&LinearForm::from_vector(&image_vector), &gb_image)
        .to_vector(target_basis.dim());
    let verdict = residual.iter().any(|x| !x.is_zero());

    let image_rank = rank(d6);
    let source_basis = source.basis(k)?;
    let mut columns = d6.columns();
    for kv in nullspace_basis(source.differential(k)?) {
        let kc = source_basis.combine(&kv)?;
        columns.push(coordinates(&wedge_omega(&kc)?, target_basis)?);
    }
    let augmented_rank = rank(&QMatrix::from_columns(target_basis.dim(), &columns)?);
    if verdict != (augmented_rank > image_rank) {
        return Err(Error::Internal(format!(
            "normal form and rank checks disagree: residual {} but ranks {augmented_rank} and {image_rank}",
            if verdict { "nonzero" } else { "zero" }
        )));
    }

    Ok(TheoremCertificate {
        order: source.order(),
        h,
        h_coords,
        image_vector,
        residual,
        image_rank,
        augmented_rank,
        verdict,
    })
}

/// Table in the layout `k | dim | rank | Betti`, one column per degree.
pub struct BettiTableDisplay<'a> {
    pub variant: AlgebraVariant,
    pub weight: i64,
    pub rows: &'a [BettiRow],
}

impl fmt::Display for BettiTableDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "C^k({})_{}", self.variant, self.weight)?;
        for label in ["k", "dim", "rank", "Betti"] {
            let mut line = format!("{label:<6}|");
            for r in self.rows {
                let v = match label {
                    "k" => r.degree,
                    "dim" => r.dim,
                    "rank" => r.rank_in,
                    _ => r.betti,
                };
                write!(line, " {v:>3}").unwrap();
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

/// Key-value report of a Betti table.
pub fn betti_report(variant: AlgebraVariant, weight: i64, rows: &[BettiRow]) -> String {
    let mut s = String::new();
    writeln!(s, "variant={variant}").unwrap();
    writeln!(s, "weight={weight}").unwrap();
    for r in rows {
        let k = r.degree;
        writeln!(s, "degree.{k}.dim={}", r.dim).unwrap();
        writeln!(s, "degree.{k}.rank_in={}", r.rank_in).unwrap();
        writeln!(s, "degree.{k}.rank_out={}", r.rank_out).unwrap();
        writeln!(s, "degree.{k}.betti={}", r.betti).unwrap();
    }
    s
}

fn join(v: &[crate::linalg::Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

/// Key-value report of a certificate.
pub fn certificate_report(cert: &TheoremCertificate) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "order={}",
        match cert.order {
            GenOrder::Standard => "standard",
            GenOrder::Reversed => "reversed",
        }
    )
    .unwrap();
    writeln!(s, "h.terms={}", cert.h.len()).unwrap();
    writeln!(s, "h.coords={}", join(&cert.h_coords)).unwrap();
    writeln!(s, "image_vector={}", join(&cert.image_vector)).unwrap();
    writeln!(s, "residual={}", join(&cert.residual)).unwrap();
    let y = coordinate_order(cert.residual.len());
    writeln!(s, "residual.form={}", cert.residual_form().display(&y)).unwrap();
    writeln!(s, "image_rank={}", cert.image_rank).unwrap();
    writeln!(s, "augmented_rank={}", cert.augmented_rank).unwrap();
    writeln!(s, "verdict={}", cert.verdict).unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_weights_are_acyclic() {
        let c = CochainComplex::new(AlgebraVariant::Ham, 2, GenOrder::Standard);
        let rows = full_betti_table(&c).unwrap();
        assert!(rows.iter().all(|r| r.betti == 0));
        assert!(rows.iter().any(|r| r.dim > 0));
    }

    #[test]
    fn table_layout() {
        let rows = vec![
            BettiRow {
                degree: 2,
                dim: 1,
                rank_in: 0,
                rank_out: 1,
                betti: 0,
            },
            BettiRow {
                degree: 3,
                dim: 3,
                rank_in: 1,
                rank_out: 2,
                betti: 0,
            },
        ];
        let t = BettiTableDisplay {
            variant: AlgebraVariant::Ham0,
            weight: 10,
            rows: &rows,
        }
        .to_string();
        assert_eq!(
            t,
            "C^k(ham0)_10\nk     |   2   3\ndim   |   1   3\nrank  |   0   1\nBetti |   0   0\n"
        );
        assert!(betti_report(AlgebraVariant::Ham0, 10, &rows).contains("degree.3.rank_out=2\n"));
    }

    #[test]
    fn rows_past_the_bound_are_empty() {
        let c = CochainComplex::new(AlgebraVariant::Ham0, 2, GenOrder::Standard);
        let r = betti_row(&c, 40).unwrap();
        assert_eq!((r.dim, r.betti), (0, 0));
    }
}
