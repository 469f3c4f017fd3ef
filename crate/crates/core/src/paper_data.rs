//! Reference matrices and Gröbner listings, and their replay.
//!
//! The fixture tree holds the two pairs of differential matrices `M, N`
//! (weight 10) and `Mbar, Nbar` (weight 8) in the matrix text format, and the
//! expected linear forms in the form-list format. Where two independent
//! printings of a result exist, both are shipped (files with a `risa` infix
//! are the second printing) and the replay checks against each.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groebner::{
    equal_up_to_scalar, gb_linear, kernel_via_normal_form, normal_form, parse_form_list,
    quotient_gb, GroebnerBasis, LinearForm, VarOrder,
};
use crate::linalg::{format_rational, mat_mul, rank, rat, QMatrix, Rational};

pub const CHECKSUM_FILE: &str = "SHA256SUMS";

macro_rules! builtin_files {
    ($($name:literal),* $(,)?) => {
        const BUILTIN: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../fixtures/v1/", $name)))),*
        ];
    };
}

builtin_files!(
    "M.txt",
    "N.txt",
    "Mbar.txt",
    "Nbar.txt",
    "w10_risa_g.txt",
    "w10_risa_f.txt",
    "w10_gb_e.txt",
    "w10_risa_gb_e.txt",
    "w10_f.txt",
    "w10_risa_f_c.txt",
    "w10_gb_c.txt",
    "w10_risa_gb_c.txt",
    "w10_ftilde.txt",
    "w10_risa_ftilde.txt",
    "w10_gb_k.txt",
    "w10_risa_gb_k.txt",
    "w10_gb_ke.txt",
    "w10_risa_gb_ke.txt",
    "w8_f.txt",
    "w8_risa_f_c.txt",
    "w8_gb_e.txt",
    "w8_risa_gb_e.txt",
    "w8_risa_gb_c.txt",
    "w8_risa_ftilde.txt",
    "w8_gb_k.txt",
    "w8_risa_gb_k.txt",
    "w8_gb_ke.txt",
    "w8_risa_gb_ke.txt",
    "w8_hbar.txt",
    "w8_hbar_nf.txt",
    "w8_risa_hbar_nf.txt",
);

const BUILTIN_CHECKSUMS: &str = include_str!("../fixtures/v1/SHA256SUMS");

/// Names of every fixture file, in load order.
pub fn fixture_files() -> impl Iterator<Item = &'static str> {
    BUILTIN.iter().map(|(n, _)| *n)
}

const MATRIX_SHAPES: [(&str, usize, usize); 4] = [
    ("M.txt", 12, 9),
    ("N.txt", 4, 12),
    ("Mbar.txt", 14, 18),
    ("Nbar.txt", 4, 14),
];

/// A list of linear forms together with its variable order.
#[derive(Clone, Debug, PartialEq)]
pub struct FormList {
    pub order: VarOrder,
    pub forms: Vec<LinearForm>,
}

#[derive(Clone, Debug)]
pub struct FixtureSet {
    pub m: QMatrix,
    pub n: QMatrix,
    pub mbar: QMatrix,
    pub nbar: QMatrix,
    pub hbar: LinearForm,
    lists: BTreeMap<String, FormList>,
}

impl FixtureSet {
    /// The copy compiled into the library.
    pub fn builtin() -> Result<Self> {
        let files: BTreeMap<String, String> = BUILTIN
            .iter()
            .map(|(n, t)| (n.to_string(), t.to_string()))
            .collect();
        verify_checksums(BUILTIN_CHECKSUMS, &files)?;
        Self::from_files(&files)
    }

    /// Form list stored in `<name>.txt`.
    pub fn list(&self, name: &str) -> Result<&FormList> {
        self.lists.get(name).ok_or_else(|| Error::Fixture {
            file: format!("{name}.txt"),
            message: "no such form list".into(),
        })
    }

    fn from_files(files: &BTreeMap<String, String>) -> Result<Self> {
        let text = |name: &str| {
            files.get(name).ok_or_else(|| Error::Fixture {
                file: name.into(),
                message: "missing".into(),
            })
        };
        let mut matrices = Vec::new();
        for (name, rows, cols) in MATRIX_SHAPES {
            let m = QMatrix::parse(text(name)?, name)?;
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(Error::Fixture {
                    file: name.into(),
                    message: format!("shape {}x{}, expected {rows}x{cols}", m.rows(), m.cols()),
                });
            }
            matrices.push(m);
        }
        let mut lists = BTreeMap::new();
        for name in fixture_files().filter(|n| n.starts_with('w')) {
            let (order, forms) = parse_form_list(text(name)?, name)?;
            lists.insert(
                name.trim_end_matches(".txt").to_string(),
                FormList { order, forms },
            );
        }
        let hbar_list: &FormList = &lists["w8_hbar"];
        let [hbar] =
            <[LinearForm; 1]>::try_from(hbar_list.forms.clone()).map_err(|_| Error::Fixture {
                file: "w8_hbar.txt".into(),
                message: "expected exactly one form".into(),
            })?;
        let [m, n, mbar, nbar] = <[QMatrix; 4]>::try_from(matrices).expect("four shapes");
        Ok(FixtureSet {
            m,
            n,
            mbar,
            nbar,
            hbar,
            lists,
        })
    }
}

fn verify_checksums(manifest: &str, files: &BTreeMap<String, String>) -> Result<()> {
    let mut listed = BTreeMap::new();
    for (i, line) in manifest.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (digest, name) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse {
                source_name: CHECKSUM_FILE.into(),
                line: i + 1,
                message: "expected `<sha256>  <file>`".into(),
            })?;
        let name = name.trim_start().trim_start_matches('*');
        listed.insert(name.to_string(), digest.to_ascii_lowercase());
    }
    for name in fixture_files() {
        let expected = listed.get(name).ok_or_else(|| Error::Fixture {
            file: name.into(),
            message: format!("not listed in {CHECKSUM_FILE}"),
        })?;
        let got = hex::encode(Sha256::digest(files[name].as_bytes()));
        if &got != expected {
            return Err(Error::Fixture {
                file: name.into(),
                message: format!(
                    "checksum mismatch: {CHECKSUM_FILE} has {expected}, file hashes to {got}"
                ),
            });
        }
    }
    Ok(())
}

/// Reads, checksums, parses and shape-checks a fixture directory.
pub fn load_fixtures(path: impl AsRef<Path>) -> Result<FixtureSet> {
    let dir = path.as_ref();
    let read = |name: &str| {
        std::fs::read_to_string(dir.join(name)).map_err(|e| Error::Fixture {
            file: dir.join(name).display().to_string(),
            message: e.to_string(),
        })
    };
    let manifest = read(CHECKSUM_FILE)?;
    let files: BTreeMap<String, String> = fixture_files()
        .map(|n| Ok((n.to_string(), read(n)?)))
        .collect::<Result<_>>()?;
    verify_checksums(&manifest, &files)?;
    FixtureSet::from_files(&files)
}

/// Outcome of a replay: one line per passed check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReplayReport {
    pub name: String,
    pub checks: Vec<String>,
}

impl ReplayReport {
    fn new(name: &str) -> Self {
        ReplayReport {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    fn pass(&mut self, line: impl Into<String>) {
        self.checks.push(line.into());
    }
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}: ok {c}", self.name)?;
        }
        Ok(())
    }
}

fn mismatch(what: impl Into<String>, expected: impl fmt::Display, got: impl fmt::Display) -> Error {
    Error::Mismatch {
        what: what.into(),
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

fn columns_as_forms(m: &QMatrix) -> Vec<LinearForm> {
    m.columns()
        .iter()
        .map(|c| LinearForm::from_vector(c))
        .collect()
}

fn rows_as_forms(m: &QMatrix) -> Vec<LinearForm> {
    (0..m.rows())
        .map(|i| LinearForm::from_vector(m.row(i)))
        .collect()
}

/// Entrywise agreement of matrix column `j` with form `j` of a printing.
fn check_columns(
    report: &mut ReplayReport,
    matrix_name: &str,
    m: &QMatrix,
    printing: &str,
    list: &FormList,
) -> Result<()> {
    if list.forms.len() != m.cols() || list.order.len() != m.rows() {
        return Err(mismatch(
            format!("{printing}.txt shape"),
            format!("{} forms in {} variables", m.cols(), m.rows()),
            format!(
                "{} forms in {} variables",
                list.forms.len(),
                list.order.len()
            ),
        ));
    }
    for (j, form) in list.forms.iter().enumerate() {
        for i in 0..m.rows() {
            if form.coeff(i) != m[(i, j)] {
                return Err(mismatch(
                    format!(
                        "{matrix_name} row {} column {} against {printing}.txt",
                        i + 1,
                        j + 1
                    ),
                    format_rational(&form.coeff(i)),
                    format_rational(&m[(i, j)]),
                ));
            }
        }
    }
    report.pass(format!("{matrix_name} columns agree with {printing}"));
    Ok(())
}

fn check_zero_product(
    report: &mut ReplayReport,
    left: &str,
    a: &QMatrix,
    right: &str,
    b: &QMatrix,
) -> Result<()> {
    let p = mat_mul(a, b)?;
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            if !p[(i, j)].is_zero() {
                return Err(mismatch(
                    format!("{left}*{right} entry ({}, {})", i + 1, j + 1),
                    "0",
                    format_rational(&p[(i, j)]),
                ));
            }
        }
    }
    report.pass(format!("{left}*{right} = 0"));
    Ok(())
}

fn check_forms_exact(
    report: &mut ReplayReport,
    label: &str,
    got: &[LinearForm],
    printing: &str,
    list: &FormList,
) -> Result<()> {
    if got.len() != list.forms.len() {
        return Err(mismatch(
            format!("{label} count against {printing}.txt"),
            list.forms.len(),
            got.len(),
        ));
    }
    for (i, (g, e)) in got.iter().zip(&list.forms).enumerate() {
        if g != e {
            return Err(mismatch(
                format!("{label} entry {} against {printing}.txt", i + 1),
                e.display(&list.order),
                g.display(&list.order),
            ));
        }
    }
    report.pass(format!("{label} equals {printing} exactly"));
    Ok(())
}

fn check_forms_proportional(
    report: &mut ReplayReport,
    label: &str,
    got: &[LinearForm],
    printing: &str,
    list: &FormList,
) -> Result<()> {
    if got.len() != list.forms.len() {
        return Err(mismatch(
            format!("{label} count against {printing}.txt"),
            list.forms.len(),
            got.len(),
        ));
    }
    for (i, (g, e)) in got.iter().zip(&list.forms).enumerate() {
        let same = (g.is_zero() && e.is_zero()) || g.proportionality(e).is_some();
        if !same {
            return Err(mismatch(
                format!("{label} entry {} against {printing}.txt", i + 1),
                e.display(&list.order),
                g.display(&list.order),
            ));
        }
    }
    report.pass(format!("{label} agrees with {printing} up to scalar"));
    Ok(())
}

fn check_gb(
    report: &mut ReplayReport,
    label: &str,
    gb: &GroebnerBasis,
    count: usize,
    printings: &[(&str, &FormList)],
) -> Result<()> {
    if gb.len() != count {
        return Err(mismatch(
            format!("{label} generator count"),
            count,
            gb.len(),
        ));
    }
    for (printing, list) in printings {
        if list.order.len() != gb.order().len() || !equal_up_to_scalar(gb, &list.forms) {
            let missing = gb
                .generators()
                .iter()
                .find(|g| !list.forms.iter().any(|f| g.proportionality(f).is_some()));
            return Err(match missing {
                Some(g) => mismatch(
                    format!("{label} against {printing}.txt"),
                    format!("a line proportional to {}", g.display(gb.order())),
                    "none",
                ),
                None => mismatch(
                    format!("{label} against {printing}.txt"),
                    list.forms.len(),
                    gb.len(),
                ),
            });
        }
        report.pass(format!(
            "{label} ({count} generators) agrees with {printing} up to scalar"
        ));
    }
    Ok(())
}

/// Weight-10 replay: image and kernel bases from `M` and `N`, the
/// c-variable computation behind the kernel, and the one-line quotient.
pub fn replay_w10(fx: &FixtureSet) -> Result<ReplayReport> {
    let mut r = ReplayReport::new("w10");
    let y = VarOrder::indexed("y", 12);
    let c = VarOrder::indexed("c", 12);

    check_columns(&mut r, "M", &fx.m, "w10_risa_g", fx.list("w10_risa_g")?)?;
    check_columns(&mut r, "N", &fx.n, "w10_risa_f", fx.list("w10_risa_f")?)?;
    check_zero_product(&mut r, "N", &fx.n, "M", &fx.m)?;

    let gb_e = gb_linear(&columns_as_forms(&fx.m), &y)?;
    check_gb(
        &mut r,
        "GB_e",
        &gb_e,
        7,
        &[
            ("w10_gb_e", fx.list("w10_gb_e")?),
            ("w10_risa_gb_e", fx.list("w10_risa_gb_e")?),
        ],
    )?;

    let f = rows_as_forms(&fx.n);
    check_forms_exact(&mut r, "f", &f, "w10_f", fx.list("w10_f")?)?;
    check_forms_exact(&mut r, "f", &f, "w10_risa_f_c", fx.list("w10_risa_f_c")?)?;

    let gb_c = gb_linear(&f, &c)?;
    check_gb(
        &mut r,
        "GB_c",
        &gb_c,
        4,
        &[
            ("w10_gb_c", fx.list("w10_gb_c")?),
            ("w10_risa_gb_c", fx.list("w10_risa_gb_c")?),
        ],
    )?;

    let ftilde = kernel_via_normal_form(&fx.n, &c, &y)?;
    check_forms_exact(
        &mut r,
        "ftilde",
        &ftilde,
        "w10_ftilde",
        fx.list("w10_ftilde")?,
    )?;
    check_forms_proportional(
        &mut r,
        "ftilde",
        &ftilde,
        "w10_risa_ftilde",
        fx.list("w10_risa_ftilde")?,
    )?;

    let gb_k = gb_linear(&ftilde, &y)?;
    check_gb(
        &mut r,
        "GB_k",
        &gb_k,
        8,
        &[
            ("w10_gb_k", fx.list("w10_gb_k")?),
            ("w10_risa_gb_k", fx.list("w10_risa_gb_k")?),
        ],
    )?;

    let gb_ke = quotient_gb(&gb_k, &gb_e)?;
    check_gb(
        &mut r,
        "GB_k/e",
        &gb_ke,
        1,
        &[
            ("w10_gb_ke", fx.list("w10_gb_ke")?),
            ("w10_risa_gb_ke", fx.list("w10_risa_gb_ke")?),
        ],
    )?;
    Ok(r)
}

/// Weight-8 replay and the final normal form of `hbar`.
pub fn replay_w8_and_final(fx: &FixtureSet) -> Result<ReplayReport> {
    let mut r = ReplayReport::new("w8");
    let y = VarOrder::indexed("y", 14);
    let c = VarOrder::indexed("c", 14);

    let f = rows_as_forms(&fx.nbar);
    check_forms_exact(&mut r, "fbar", &f, "w8_f", fx.list("w8_f")?)?;
    check_forms_exact(&mut r, "fbar", &f, "w8_risa_f_c", fx.list("w8_risa_f_c")?)?;
    check_zero_product(&mut r, "Nbar", &fx.nbar, "Mbar", &fx.mbar)?;

    let gb_e = gb_linear(&columns_as_forms(&fx.mbar), &y)?;
    check_gb(
        &mut r,
        "GBbar_e",
        &gb_e,
        9,
        &[
            ("w8_gb_e", fx.list("w8_gb_e")?),
            ("w8_risa_gb_e", fx.list("w8_risa_gb_e")?),
        ],
    )?;

    let gb_c = gb_linear(&f, &c)?;
    check_gb(
        &mut r,
        "GBbar_c",
        &gb_c,
        4,
        &[("w8_risa_gb_c", fx.list("w8_risa_gb_c")?)],
    )?;

    let ftilde = kernel_via_normal_form(&fx.nbar, &c, &y)?;
    check_forms_proportional(
        &mut r,
        "ftildebar",
        &ftilde,
        "w8_risa_ftilde",
        fx.list("w8_risa_ftilde")?,
    )?;

    let gb_k = gb_linear(&ftilde, &y)?;
    check_gb(
        &mut r,
        "GBbar_k",
        &gb_k,
        10,
        &[
            ("w8_gb_k", fx.list("w8_gb_k")?),
            ("w8_risa_gb_k", fx.list("w8_risa_gb_k")?),
        ],
    )?;

    let gb_ke = quotient_gb(&gb_k, &gb_e)?;
    check_gb(
        &mut r,
        "GBbar_k/e",
        &gb_ke,
        1,
        &[
            ("w8_gb_ke", fx.list("w8_gb_ke")?),
            ("w8_risa_gb_ke", fx.list("w8_risa_gb_ke")?),
        ],
    )?;

    let nf = normal_form(&fx.hbar, &gb_e);
    if nf.is_zero() {
        return Err(mismatch(
            "normal form of hbar modulo GBbar_e",
            "a nonzero form",
            "0",
        ));
    }
    check_forms_exact(
        &mut r,
        "NF(hbar)",
        std::slice::from_ref(&nf),
        "w8_hbar_nf",
        fx.list("w8_hbar_nf")?,
    )?;
    let risa = fx.list("w8_risa_hbar_nf")?;
    let factor = risa.forms.first().and_then(|e| nf.proportionality(e));
    if factor != Some(rat(-100)) {
        return Err(mismatch(
            "NF(hbar) against w8_risa_hbar_nf.txt",
            "proportionality factor -100",
            factor.map_or("not proportional".to_string(), |q| format_rational(&q)),
        ));
    }
    r.pass("NF(hbar) is nonzero and equals w8_risa_hbar_nf / -100");

    let image_rank = rank(&fx.mbar);
    let hv: Vec<Rational> = fx.hbar.to_vector(14);
    let augmented = rank(&fx.mbar.hstack(&QMatrix::from_columns(14, &[hv])?)?);
    if augmented != image_rank + 1 || image_rank != 9 {
        return Err(mismatch(
            "rank of [Mbar | hbar] over rank of Mbar",
            "10 over 9",
            format!("{augmented} over {image_rank}"),
        ));
    }
    let mut line = String::new();
    write!(
        line,
        "rank [Mbar | hbar] = {augmented} > {image_rank} = rank Mbar"
    )
    .unwrap();
    r.pass(line);
    Ok(r)
}
