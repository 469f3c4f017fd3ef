#![allow(dead_code)]

pub mod poly;

use hamforms::groebner::{gb_linear, kernel_via_normal_form, GroebnerBasis, LinearForm, VarOrder};
use hamforms::linalg::{nullspace_basis, rank, rat, QMatrix, QVector};
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Deterministic corpus of small integer matrices, shapes up to 8x8 and
/// entries in [-5, 5]. Low-rank members are built as products.
pub fn random_corpus(count: usize, seed: u64) -> Vec<QMatrix> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let rows = rng.gen_range(1..=8);
            let cols = rng.gen_range(1..=8);
            if i % 3 == 2 {
                let inner = rng.gen_range(1..=3);
                let a = random_matrix(&mut rng, rows, inner, 2);
                let b = random_matrix(&mut rng, inner, cols, 2);
                let p = hamforms::linalg::mat_mul(&a, &b).unwrap();
                clamp(&p)
            } else {
                random_matrix(&mut rng, rows, cols, 5)
            }
        })
        .collect()
}

fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> QMatrix {
    let v: Vec<Vec<_>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| rat(rng.gen_range(-bound..=bound)))
                .collect()
        })
        .collect();
    QMatrix::from_rows(v).unwrap()
}

/// Keeps a low-rank product inside [-5, 5] by clearing larger entries'
/// rows, which preserves low rank.
fn clamp(m: &QMatrix) -> QMatrix {
    let rows: Vec<Vec<_>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            if row.iter().all(|x| x.abs() <= rat(5)) {
                row.to_vec()
            } else {
                vec![rat(0); m.cols()]
            }
        })
        .collect();
    QMatrix::from_rows(rows).unwrap()
}

pub fn rank_of_vectors(n: usize, vs: &[QVector]) -> usize {
    if vs.is_empty() {
        0
    } else {
        rank(&QMatrix::from_columns(n, vs).unwrap())
    }
}

/// Span equality by rank: both sets and their union have the same rank.
pub fn same_span(n: usize, a: &[QVector], b: &[QVector]) -> bool {
    let union: Vec<QVector> = a.iter().chain(b).cloned().collect();
    let (ra, rb) = (rank_of_vectors(n, a), rank_of_vectors(n, b));
    ra == rb && rank_of_vectors(n, &union) == ra
}

/// Kernel route through normal forms versus the RREF nullspace.
pub fn kernel_routes_agree(m: &QMatrix) -> bool {
    let n = m.cols();
    let forms =
        kernel_via_normal_form(m, &VarOrder::indexed("c", n), &VarOrder::indexed("y", n)).unwrap();
    let via_nf: Vec<QVector> = forms
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| f.to_vector(n))
        .collect();
    let via_rref = nullspace_basis(m);
    via_nf.len() == via_rref.len() && same_span(n, &via_nf, &via_rref)
}

pub fn row_forms(m: &QMatrix) -> Vec<LinearForm> {
    (0..m.rows())
        .map(|i| LinearForm::from_vector(m.row(i)))
        .collect()
}

pub fn gb_of_rows(m: &QMatrix) -> GroebnerBasis {
    gb_linear(&row_forms(m), &VarOrder::indexed("y", m.cols())).unwrap()
}

/// Gröbner row space versus the input row space.
pub fn gb_row_space_agrees(m: &QMatrix) -> bool {
    let n = m.cols();
    let gb = gb_of_rows(m);
    let input: Vec<QVector> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let output: Vec<QVector> = gb.generators().iter().map(|g| g.to_vector(n)).collect();
    output.len() == rank(m) && same_span(n, &input, &output)
}
