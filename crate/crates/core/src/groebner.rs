//! Gröbner bases of ideals generated by linear forms.
//!
//! Under a pure lex order `v1 > v2 > ... > vn`, the reduced Gröbner basis of
//! an ideal generated by linear forms is the set of nonzero rows of the
//! reduced row echelon form of their coefficient matrix, so the engine is
//! ordered Gaussian elimination. Generators are kept primitive over the
//! integers with a positive leading coefficient.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    format_rational, make_primitive, parse_rational, rref, QMatrix, QVector, Rational,
};

/// Ordered variable list; earlier names are greater.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarOrder {
    names: Vec<String>,
}

impl VarOrder {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::Dimension(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarOrder { names })
    }

    /// `prefix1 > prefix2 > ... > prefix{n}`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        VarOrder {
            names: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Header line of the form-list text format, e.g. `vars y1..y12`.
    /// Orders that are not of the `prefix1..prefixN` shape are written as a
    /// comma separated list.
    pub fn header(&self) -> String {
        if let Some(prefix) = self.common_prefix() {
            format!("vars {prefix}1..{prefix}{}", self.names.len())
        } else {
            format!("vars {}", self.names.join(","))
        }
    }

    fn common_prefix(&self) -> Option<String> {
        let first = self.names.first()?;
        let prefix = first.strip_suffix('1')?;
        (*self == VarOrder::indexed(prefix, self.names.len())).then(|| prefix.to_string())
    }

    fn parse_header(line: &str) -> std::result::Result<Self, String> {
        let rest = line
            .trim()
            .strip_prefix("vars")
            .ok_or_else(|| "expected header `vars <first>..<last>`".to_string())?
            .trim();
        if let Some((a, b)) = rest.split_once("..") {
            let split = |s: &str| {
                let i = s
                    .find(|c: char| c.is_ascii_digit())
                    .ok_or_else(|| format!("variable `{s}` has no index"))?;
                let n: usize = s[i..].parse().map_err(|_| format!("bad variable `{s}`"))?;
                Ok::<_, String>((s[..i].to_string(), n))
            };
            let (pa, na) = split(a.trim())?;
            let (pb, nb) = split(b.trim())?;
            if pa != pb || na != 1 {
                return Err(format!("unsupported variable range `{rest}`"));
            }
            Ok(VarOrder::indexed(&pa, nb))
        } else {
            VarOrder::new(rest.split(',').map(|s| s.trim().to_string()).collect())
                .map_err(|e| e.to_string())
        }
    }
}

/// Linear polynomial with coefficients keyed by variable position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: BTreeMap<usize, Rational>,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(index: usize) -> Self {
        Self::from_terms([(index, Rational::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut f = Self::zero();
        for (i, c) in terms {
            f.add_term(i, &c);
        }
        f
    }

    /// Form with the given coefficient vector.
    pub fn from_vector(v: &[Rational]) -> Self {
        Self::from_terms(v.iter().cloned().enumerate())
    }

    pub fn to_vector(&self, n: usize) -> QVector {
        let mut v = vec![Rational::zero(); n];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Rational {
        self.coeffs
            .get(&index)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    /// Greatest variable with a nonzero coefficient.
    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.coeffs.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, index: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &LinearForm) {
        if factor.is_zero() {
            return;
        }
        for (&i, c) in &other.coeffs {
            self.add_term(i, &(factor * c));
        }
    }

    pub fn scaled(&self, factor: &Rational) -> LinearForm {
        let mut out = LinearForm::zero();
        out.add_scaled(factor, self);
        out
    }

    /// Primitive integer multiple with positive leading coefficient.
    pub fn primitive(&self) -> LinearForm {
        let Some(n) = self.max_index() else {
            return LinearForm::zero();
        };
        let mut v = self.to_vector(n + 1);
        make_primitive(&mut v);
        LinearForm::from_vector(&v)
    }

    /// The factor `lambda` with `other = lambda * self`, if one exists.
    /// Zero is proportional only to zero, with factor 1.
    pub fn proportionality(&self, other: &LinearForm) -> Option<Rational> {
        match (self.leading(), other.leading()) {
            (None, None) => Some(Rational::one()),
            (Some((i, a)), Some((j, b))) if i == j => {
                let lambda = b / a;
                (self.scaled(&lambda) == *other).then_some(lambda)
            }
            _ => None,
        }
    }

    pub fn display<'a>(&'a self, order: &'a VarOrder) -> FormDisplay<'a> {
        FormDisplay { form: self, order }
    }
}

pub struct FormDisplay<'a> {
    form: &'a LinearForm,
    order: &'a VarOrder,
}

/// Terms `±c*name` in descending variable order, no spaces; `0` for the
/// zero form.
impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.form.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.form.terms().enumerate() {
            let name = self
                .order
                .names
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("?{}", i + 1));
            let sign = if c.is_negative() {
                "-"
            } else if n > 0 {
                "+"
            } else {
                ""
            };
            let a = c.abs();
            if a.is_one() {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{}*{name}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

/// Parses one linear form. Accepts `3*y8`, `3y8`, `3 y_{8}`, `3y_{{8}}`,
/// `\frac{5}{2} c_{9}` and `5/2*c9`, with terms in any order.
pub fn parse_form(text: &str, order: &VarOrder) -> std::result::Result<LinearForm, String> {
    let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    for cmd in ["\\dfrac", "\\frac"] {
        while let Some(at) = s.find(cmd) {
            let rest = &s[at + cmd.len()..];
            let (num, tail) =
                take_braced(rest).ok_or_else(|| format!("malformed {cmd} in `{text}`"))?;
            let (den, tail) =
                take_braced(tail).ok_or_else(|| format!("malformed {cmd} in `{text}`"))?;
            s = format!("{}{num}/{den}{tail}", &s[..at]);
        }
    }
    let s: String = s
        .chars()
        .filter(|c| !matches!(c, '{' | '}' | '_'))
        .collect();
    if s == "0" {
        return Ok(LinearForm::zero());
    }
    if s.is_empty() {
        return Err("empty form".into());
    }
    let bytes = s.as_bytes();
    let mut pos = 0;
    let mut form = LinearForm::zero();
    while pos < bytes.len() {
        let mut negative = false;
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                negative = true;
                pos += 1
            }
            _ if pos > 0 => return Err(format!("expected `+` or `-` at offset {pos} in `{s}`")),
            _ => {}
        }
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let mut coeff = if start == pos {
            Rational::one()
        } else {
            parse_rational(&s[start..pos])?
        };
        if pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
        }
        let name_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
            pos += 1;
        }
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let name = &s[name_start..pos];
        if name.is_empty() {
            return Err(format!("constant term or missing variable in `{s}`"));
        }
        let index = order
            .position(name)
            .ok_or_else(|| format!("unknown variable `{name}`"))?;
        if negative {
            coeff = -coeff;
        }
        form.add_term(index, &coeff);
    }
    Ok(form)
}

fn take_braced(s: &str) -> Option<(&str, &str)> {
    let s = s.strip_prefix('{')?;
    let close = s.find('}')?;
    Some((&s[..close], &s[close + 1..]))
}

/// Parses the form-list text format: a `vars` header line followed by one
/// form per line. Blank lines and lines starting with `#` are skipped.
pub fn parse_form_list(text: &str, source_name: &str) -> Result<(VarOrder, Vec<LinearForm>)> {
    let perr = |line: usize, message: String| Error::Parse {
        source_name: source_name.to_string(),
        line,
        message,
    };
    let mut order = None;
    let mut forms = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match &order {
            None => order = Some(VarOrder::parse_header(line).map_err(|m| perr(no + 1, m))?),
            Some(o) => forms.push(parse_form(line, o).map_err(|m| perr(no + 1, m))?),
        }
    }
    let order = order.ok_or_else(|| perr(1, "missing `vars` header".into()))?;
    Ok((order, forms))
}

pub fn format_form_list(order: &VarOrder, forms: &[LinearForm]) -> String {
    let mut out = order.header();
    out.push('\n');
    for f in forms {
        out.push_str(&f.display(order).to_string());
        out.push('\n');
    }
    out
}

/// Reduced lex Gröbner basis of a linear ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: VarOrder,
    generators: Vec<LinearForm>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    /// Generators sorted from the greatest leading variable down.
    pub fn generators(&self) -> &[LinearForm] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_variables(&self) -> Vec<usize> {
        self.generators
            .iter()
            .filter_map(|g| g.leading().map(|(i, _)| i))
            .collect()
    }

    /// Generator whose leading variable is `index`.
    pub fn generator_led_by(&self, index: usize) -> Option<&LinearForm> {
        self.generators
            .iter()
            .find(|g| g.leading().map(|(i, _)| i) == Some(index))
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_form_list(&self.order, &self.generators))
    }
}

fn check_range(forms: &[LinearForm], order: &VarOrder) -> Result<()> {
    for f in forms {
        if let Some(i) = f.max_index().filter(|&i| i >= order.len()) {
            return Err(Error::VariableOutOfRange {
                index: i,
                len: order.len(),
            });
        }
    }
    Ok(())
}

pub fn gb_linear(forms: &[LinearForm], order: &VarOrder) -> Result<GroebnerBasis> {
    check_range(forms, order)?;
    let n = order.len();
    let rows: Vec<QVector> = forms
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| f.to_vector(n))
        .collect();
    let generators = if rows.is_empty() {
        Vec::new()
    } else {
        let r = rref(&QMatrix::from_rows(rows)?);
        (0..r.rank())
            .map(|i| LinearForm::from_vector(r.matrix.row(i)).primitive())
            .collect()
    };
    Ok(GroebnerBasis {
        order: order.clone(),
        generators,
    })
}

/// Fully reduced remainder of `f` modulo `gb`.
pub fn normal_form(f: &LinearForm, gb: &GroebnerBasis) -> LinearForm {
    let mut r = f.clone();
    for g in &gb.generators {
        let (lead, lc) = g.leading().expect("generators are nonzero");
        let c = r.coeff(lead);
        if !c.is_zero() {
            r.add_scaled(&(-c / lc), g);
        }
    }
    r
}

pub fn is_member(f: &LinearForm, gb: &GroebnerBasis) -> bool {
    normal_form(f, gb).is_zero()
}

/// Kernel extraction through a normal form.
///
/// With `f_i(c) = sum_k n[i][k] c_k` (one form per row of `n`), computes the
/// Gröbner basis of the `f_i` in the `c` variables, reduces
/// `h = sum_j c_j y_j` treating the `y_j` as coefficients, and returns the
/// coefficient of each `c_j` in the result. The list has one entry per
/// column of `n`: the entry is zero when `c_j` is a leading variable, and
/// the nonzero entries, read as vectors in `y` coordinates, form a basis of
/// the kernel of `n`.
pub fn kernel_via_normal_form(
    n: &QMatrix,
    c_order: &VarOrder,
    y_order: &VarOrder,
) -> Result<Vec<LinearForm>> {
    if n.cols() != c_order.len() || n.cols() != y_order.len() {
        return Err(Error::Dimension(format!(
            "matrix has {} columns but the orders have {} and {} variables",
            n.cols(),
            c_order.len(),
            y_order.len()
        )));
    }
    let forms: Vec<LinearForm> = (0..n.rows())
        .map(|i| LinearForm::from_vector(n.row(i)))
        .collect();
    let gb = gb_linear(&forms, c_order)?;
    // h[j] is the y-linear coefficient of c_j.
    let mut h: Vec<LinearForm> = (0..n.cols()).map(LinearForm::var).collect();
    for g in gb.generators() {
        let (lead, lc) = g.leading().expect("generators are nonzero");
        let pivot = std::mem::take(&mut h[lead]);
        for (j, c) in g.terms().filter(|&(j, _)| j != lead) {
            h[j].add_scaled(&(-(c / lc)), &pivot);
        }
    }
    Ok(h)
}

/// Gröbner basis of `{normal_form(g, gb_e) : g in gb_k}`, the quotient of
/// the span of `gb_k` by the span of `gb_e`.
pub fn quotient_gb(gb_k: &GroebnerBasis, gb_e: &GroebnerBasis) -> Result<GroebnerBasis> {
    if gb_k.order != gb_e.order {
        return Err(Error::Dimension(
            "Gröbner bases over different orders".into(),
        ));
    }
    if let Some(g) = gb_e.generators.iter().find(|g| !is_member(g, gb_k)) {
        return Err(Error::NotContained(format!(
            "{} is not in the larger ideal",
            g.display(&gb_e.order)
        )));
    }
    let reduced: Vec<LinearForm> = gb_k
        .generators
        .iter()
        .map(|g| normal_form(g, gb_e))
        .collect();
    gb_linear(&reduced, &gb_k.order)
}

/// True when `b` has the same number of forms as `a` and every generator of
/// `a` has a partner in `b` with the same leading variable differing by a
/// nonzero rational factor.
pub fn equal_up_to_scalar(a: &GroebnerBasis, b: &[LinearForm]) -> bool {
    if a.generators.len() != b.len() {
        return false;
    }
    a.generators.iter().all(|g| {
        let lead = g.leading().map(|(i, _)| i);
        b.iter()
            .filter(|f| f.leading().map(|(i, _)| i) == lead)
            .any(|f| g.proportionality(f).is_some())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn y(n: usize) -> VarOrder {
        VarOrder::indexed("y", n)
    }

    fn form(s: &str, n: usize) -> LinearForm {
        parse_form(s, &y(n)).unwrap()
    }

    #[test]
    fn symmetric_pair_gives_coordinate_basis() {
        let gb = gb_linear(&[form("y1+y2", 2), form("y1-y2", 2)], &y(2)).unwrap();
        assert_eq!(gb.generators(), &[form("y1", 2), form("y2", 2)]);
    }

    #[test]
    fn empty_input_gives_empty_basis() {
        let gb = gb_linear(&[], &y(3)).unwrap();
        assert!(gb.is_empty());
        let gb = gb_linear(&[LinearForm::zero()], &y(3)).unwrap();
        assert!(gb.is_empty());
        assert_eq!(normal_form(&form("y2", 3), &gb), form("y2", 3));
    }

    #[test]
    fn generators_are_primitive_with_positive_lead() {
        let gb = gb_linear(&[form("-1/2*y1+3/4*y3", 3)], &y(3)).unwrap();
        assert_eq!(gb.generators(), &[form("2*y1-3*y3", 3)]);
    }

    #[test]
    fn normal_form_of_generators_vanishes() {
        let gb = gb_linear(&[form("y1+2*y2", 3), form("y2-y3", 3)], &y(3)).unwrap();
        for g in gb.generators() {
            assert!(normal_form(g, &gb).is_zero());
            assert!(is_member(g, &gb));
        }
        assert!(normal_form(&LinearForm::zero(), &gb).is_zero());
        assert_eq!(normal_form(&form("y1", 3), &gb), form("-2*y3", 3));
        assert!(!is_member(&form("y3", 3), &gb));
    }

    #[test]
    fn kernel_of_row_matrix() {
        let n = QMatrix::from_i64_rows(&[&[1, 1]]).unwrap();
        let k = kernel_via_normal_form(&n, &VarOrder::indexed("c", 2), &y(2)).unwrap();
        assert_eq!(k, vec![LinearForm::zero(), form("-y1+y2", 2)]);
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let n = QMatrix::zeros(2, 3);
        let k = kernel_via_normal_form(&n, &VarOrder::indexed("c", 3), &y(3)).unwrap();
        assert_eq!(k, (0..3).map(LinearForm::var).collect::<Vec<_>>());
    }

    #[test]
    fn kernel_rejects_bad_orders() {
        let n = QMatrix::zeros(2, 3);
        assert!(kernel_via_normal_form(&n, &VarOrder::indexed("c", 2), &y(3)).is_err());
    }

    #[test]
    fn quotient_by_itself_is_empty() {
        let gb = gb_linear(&[form("y1+y2", 3), form("y3", 3)], &y(3)).unwrap();
        assert!(quotient_gb(&gb, &gb).unwrap().is_empty());
    }

    #[test]
    fn quotient_requires_containment() {
        let big = gb_linear(&[form("y1", 3)], &y(3)).unwrap();
        let small = gb_linear(&[form("y2", 3)], &y(3)).unwrap();
        assert!(matches!(
            quotient_gb(&big, &small),
            Err(Error::NotContained(_))
        ));
    }

    #[test]
    fn scalar_equivalence() {
        let gb = gb_linear(&[form("3*y1-6*y2", 2)], &y(2)).unwrap();
        assert!(equal_up_to_scalar(&gb, &[form("-y1+2*y2", 2)]));
        assert!(equal_up_to_scalar(&gb, gb.generators()));
        assert!(!equal_up_to_scalar(&gb, &[form("y1+2*y2", 2)]));
        assert!(!equal_up_to_scalar(&gb, &[]));
    }

    #[test]
    fn parser_accepts_transcription_styles() {
        let o = y(12);
        let maple = parse_form("3 y_{8}-36 y_{9}-72 y_{10}-3 y_{11}+14 y_{12}", &o).unwrap();
        let maple2 = parse_form("3y_{{8}}-36y_{{9}}-72y_{{10}}-3y_{{11}}+14y_{{12}}", &o).unwrap();
        let risa = parse_form("-14*y12+3*y11+72*y10+36*y9-3*y8", &o).unwrap();
        assert_eq!(maple, maple2);
        assert_eq!(maple.scaled(&rat(-1)), risa);
        let frac = parse_form("\\frac{5}{2} y_{9} - \\dfrac{2}{3}y_{1}", &o).unwrap();
        assert_eq!(
            frac,
            LinearForm::from_terms([(8, ratio(5, 2)), (0, ratio(-2, 3))])
        );
        assert!(parse_form("3*y13", &o).is_err());
        assert!(parse_form("3+y1", &o).is_err());
        assert_eq!(parse_form("0", &o).unwrap(), LinearForm::zero());
    }

    #[test]
    fn printer_is_canonical() {
        let o = y(12);
        let f = parse_form("-14*y12+3*y11+72*y10+36*y9-3*y8", &o).unwrap();
        assert_eq!(f.display(&o).to_string(), "-3*y8+36*y9+72*y10+3*y11-14*y12");
        let text = "vars c1..c3\nc1-1/2*c3\n0\n";
        let (order, forms) = parse_form_list(text, "t").unwrap();
        assert_eq!(format_form_list(&order, &forms), text);
    }

    #[test]
    fn header_is_required() {
        assert!(parse_form_list("y1+y2\n", "t").is_err());
    }
}
