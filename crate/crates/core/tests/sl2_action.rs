//! The coadjoint sp(2) action on dual generators: representation property,
//! weights and irreducibility of each degree layer.

use hamforms::linalg::{rank, rat, QMatrix};
use hamforms::{
    poisson_bracket, sl2_coadjoint, Generator, HamMonomial, QuadraticGenerator, Rational,
};
use num_traits::Zero;

fn action_matrix(q: QuadraticGenerator, degree: u32) -> QMatrix {
    let n = degree as usize + 1;
    let mut m = QMatrix::zeros(n, n);
    for a in 0..=degree {
        for (g, c) in sl2_coadjoint(q, Generator::new(a, degree)) {
            assert_eq!(g.degree(), degree);
            m[(g.index() as usize, a as usize)] = c;
        }
    }
    m
}

fn mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    hamforms::linalg::mat_mul(a, b).unwrap()
}

fn sub(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| &a[(i, j)] - &b[(i, j)]).collect())
        .collect();
    QMatrix::from_rows(rows).unwrap()
}

fn scaled(a: &QMatrix, c: &Rational) -> QMatrix {
    let rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| &a[(i, j)] * c).collect())
        .collect();
    QMatrix::from_rows(rows).unwrap()
}

/// `[rho(X), rho(Y)] = rho({X, Y})` for every pair of quadratic Hamiltonians.
#[test]
fn action_is_a_representation() {
    use QuadraticGenerator::*;
    let basis = [XSquared, XY, YSquared];
    for degree in [1, 3, 4, 5, 8] {
        for &x in &basis {
            for &y in &basis {
                let (rx, ry) = (action_matrix(x, degree), action_matrix(y, degree));
                let commutator = sub(&mul(&rx, &ry), &mul(&ry, &rx));
                let mut expected = QMatrix::zeros(rx.rows(), rx.cols());
                for (m, c) in poisson_bracket(x.hamiltonian(), y.hamiltonian()).terms() {
                    let q = basis
                        .iter()
                        .find(|q| q.hamiltonian() == m)
                        .copied()
                        .unwrap();
                    expected = sub(&expected, &scaled(&action_matrix(q, degree), &-c.clone()));
                }
                assert_eq!(commutator, expected, "{x:?} {y:?} degree {degree}");
            }
        }
    }
}

#[test]
fn cartan_weights() {
    for degree in 1..=7u32 {
        let h = action_matrix(QuadraticGenerator::XY, degree);
        for a in 0..=degree {
            let g = Generator::new(a, degree);
            assert_eq!(h[(a as usize, a as usize)], rat(g.sl2_weight()));
            assert_eq!(g.sl2_weight(), 2 * a as i64 - degree as i64);
        }
    }
}

#[test]
fn raising_and_lowering_are_nilpotent_of_full_length() {
    // Each layer of degree A is the irreducible module of dimension A + 1:
    // the raising operator has rank A and its A-th power is nonzero.
    for degree in [1u32, 3, 4, 6] {
        for q in [QuadraticGenerator::XSquared, QuadraticGenerator::YSquared] {
            let e = action_matrix(q, degree);
            assert_eq!(rank(&e), degree as usize);
            let mut p = e.clone();
            for _ in 1..degree {
                p = mul(&p, &e);
            }
            assert!(!p.is_zero());
            assert!(mul(&p, &e).is_zero());
        }
    }
}

#[test]
fn quadratic_layer_brackets_close() {
    for x in QuadraticGenerator::ALL {
        for y in QuadraticGenerator::ALL {
            let b = poisson_bracket(x.hamiltonian(), y.hamiltonian());
            assert!(b.terms().all(|(m, c)| m.degree() == 2 && !c.is_zero()));
        }
    }
    assert_eq!(HamMonomial::of_degree(2).count(), 3);
}
