//! Canonical element payloads and the exact group operations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{SkError, SkResult};
use crate::group::{GroupKind, MATRIX_TOL};

/// One group element in canonical form.  Discrete payloads are exact;
/// continuous payloads (`Affine`, `Mat`) are floating point.
///
/// `Eq`/`Ord`/`Hash` are total: floating entries compare and hash by their
/// IEEE bit patterns (canonical forms are always finite and normalize
/// `-0.0`), which is what lets discrete ball enumeration share one element
/// type.  Tolerance-based comparison for continuous kinds is [`Element::approx_eq`].
#[derive(Debug, Clone)]
pub enum Element {
    /// `Z^d` vector.
    Vector(Vec<i64>),
    /// Heisenberg `(a,b,c)` for the matrix `[[1,a,b],[0,1,c],[0,0,1]]`.
    Heis(i64, i64, i64),
    /// Reduced word over free generators: nonzero signed 1-based indices.
    Word(Vec<i32>),
    /// Finite-support map index -> positive rational (entries != 1).
    Rationals(BTreeMap<u32, BigRational>),
    /// `ax+b` element `(a,b)` for the matrix `[[e^a, b],[0,1]]`.
    Affine { a: f64, b: f64 },
    /// Real `n x n` matrix, row-major.
    Mat { n: u32, rows: Vec<f64> },
    /// Integer `q x q` upper unitriangular matrix, row-major (full matrix).
    Unip(u32, Vec<i64>),
}

impl Element {
    pub fn identity(kind: GroupKind) -> Element {
        match kind {
            GroupKind::ZD(d) => Element::Vector(vec![0; d as usize]),
            GroupKind::Heisenberg => Element::Heis(0, 0, 0),
            GroupKind::Free(_) => Element::Word(Vec::new()),
            GroupKind::QTuple => Element::Rationals(BTreeMap::new()),
            GroupKind::AxB => Element::Affine { a: 0.0, b: 0.0 },
            GroupKind::Sl2 => Element::Mat {
                n: 2,
                rows: vec![1.0, 0.0, 0.0, 1.0],
            },
            GroupKind::GlN(n) => Element::Mat {
                n,
                rows: identity_rows(n as usize),
            },
            GroupKind::UnipotentZ(q) => {
                Element::Unip(q, Element::unip_identity_entries(q))
            }
        }
    }

    /// Row-major identity entries for a `q x q` integer matrix.
    pub fn unip_identity_entries(q: u32) -> Vec<i64> {
        let q = q as usize;
        let mut m = vec![0i64; q * q];
        for i in 0..q {
            m[i * q + i] = 1;
        }
        m
    }

    pub fn multiply(kind: GroupKind, a: &Element, b: &Element) -> SkResult<Element> {
        let wrong = || SkError::WrongKind(format!("{kind:?}"));
        let out = match (kind, a, b) {
            (GroupKind::ZD(_), Element::Vector(x), Element::Vector(y))
                if x.len() == y.len() =>
            {
                Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (GroupKind::Heisenberg, &Element::Heis(a1, b1, c1), &Element::Heis(a2, b2, c2)) => {
                // [[1,a,b],[0,1,c],[0,0,1]] product, exactly.
                Element::Heis(a1 + a2, b1 + b2 + a1 * c2, c1 + c2)
            }
            (GroupKind::Free(_), Element::Word(x), Element::Word(y)) => {
                let mut w = x.clone();
                for &s in y {
                    if w.last() == Some(&-s) {
                        w.pop();
                    } else {
                        w.push(s);
                    }
                }
                Element::Word(w)
            }
            (GroupKind::QTuple, Element::Rationals(x), Element::Rationals(y)) => {
                let mut m = x.clone();
                for (i, q) in y {
                    let v = m.remove(i).unwrap_or_else(BigRational::one) * q;
                    if !v.is_one() {
                        m.insert(*i, v);
                    }
                }
                Element::Rationals(m)
            }
            (GroupKind::AxB, &Element::Affine { a: a1, b: b1 }, &Element::Affine { a: a2, b: b2 }) => {
                let e = Element::Affine {
                    a: a1 + a2,
                    b: b1 + a1.exp() * b2,
                };
                check_finite_affine(&e)?;
                e
            }
            (GroupKind::Sl2 | GroupKind::GlN(_), Element::Mat { n, rows: x }, Element::Mat { n: n2, rows: y })
                if n == n2 =>
            {
                let rows = mat_mul_f64(*n as usize, x, y);
                if rows.iter().any(|v| !v.is_finite()) {
                    return Err(SkError::Unsupported {
                        group: format!("{kind:?}"),
                        reason: "numeric overflow in matrix product".into(),
                    });
                }
                Element::Mat { n: *n, rows }
            }
            (GroupKind::UnipotentZ(q), Element::Unip(q1, x), Element::Unip(q2, y))
                if q1 == q2 && *q1 == q =>
            {
                Element::Unip(q, mat_mul_i64(q as usize, x, y))
            }
            _ => return Err(wrong()),
        };
        Ok(out)
    }

    pub fn inverse(kind: GroupKind, a: &Element) -> SkResult<Element> {
        let wrong = || SkError::WrongKind(format!("{kind:?}"));
        let out = match (kind, a) {
            (GroupKind::ZD(_), Element::Vector(x)) => {
                Element::Vector(x.iter().map(|v| -v).collect())
            }
            (GroupKind::Heisenberg, &Element::Heis(a, b, c)) => {
                Element::Heis(-a, a * c - b, -c)
            }
            (GroupKind::Free(_), Element::Word(x)) => {
                Element::Word(x.iter().rev().map(|s| -s).collect())
            }
            (GroupKind::QTuple, Element::Rationals(x)) => Element::Rationals(
                x.iter().map(|(i, q)| (*i, q.recip())).collect(),
            ),
            (GroupKind::AxB, &Element::Affine { a, b }) => {
                let e = Element::Affine {
                    a: -a,
                    b: -(-a).exp() * b,
                };
                check_finite_affine(&e)?;
                e
            }
            (GroupKind::Sl2, Element::Mat { n: 2, rows }) => {
                // det is 1 up to tolerance; use the exact adjugate formula.
                let det = rows[0] * rows[3] - rows[1] * rows[2];
                Element::Mat {
                    n: 2,
                    rows: vec![
                        rows[3] / det,
                        -rows[1] / det,
                        -rows[2] / det,
                        rows[0] / det,
                    ],
                }
            }
            (GroupKind::GlN(n), Element::Mat { n: n2, rows }) if *n2 == n => {
                let inv = mat_inv_f64(n as usize, rows).ok_or_else(|| SkError::Unsupported {
                    group: format!("{kind:?}"),
                    reason: "singular matrix".into(),
                })?;
                Element::Mat { n, rows: inv }
            }
            (GroupKind::UnipotentZ(q), Element::Unip(q1, x)) if *q1 == q => {
                // (I+N)^{-1} = I - N + N^2 - ... , exact for nilpotent N.
                let qq = q as usize;
                let mut nil = x.clone();
                for i in 0..qq {
                    nil[i * qq + i] = 0;
                }
                let mut acc = Element::unip_identity_entries(q);
                let mut pow = nil.clone();
                let mut sign = -1i64;
                for _ in 1..qq {
                    for (t, p) in acc.iter_mut().zip(&pow) {
                        *t += sign * p;
                    }
                    pow = mat_mul_i64(qq, &pow, &nil);
                    sign = -sign;
                }
                Element::Unip(q, acc)
            }
            _ => return Err(wrong()),
        };
        Ok(out)
    }

    /// Canonicalizes a structurally valid payload.  Idempotent.
    pub fn canonicalize(kind: GroupKind, raw: &Element) -> SkResult<Element> {
        let wrong = || SkError::WrongKind(format!("{kind:?}"));
        let out = match (kind, raw) {
            (GroupKind::ZD(d), Element::Vector(x)) if x.len() == d as usize => raw.clone(),
            (GroupKind::Heisenberg, Element::Heis(..)) => raw.clone(),
            (GroupKind::Free(k), Element::Word(x)) => {
                if x.iter().any(|&s| s == 0 || s.unsigned_abs() > k) {
                    return Err(wrong());
                }
                let mut w: Vec<i32> = Vec::with_capacity(x.len());
                for &s in x {
                    if w.last() == Some(&-s) {
                        w.pop();
                    } else {
                        w.push(s);
                    }
                }
                Element::Word(w)
            }
            (GroupKind::QTuple, Element::Rationals(x)) => {
                let mut m = BTreeMap::new();
                for (i, q) in x {
                    if !q.is_positive() {
                        return Err(SkError::BadElement {
                            literal: format!("{q}"),
                            group: "qinf".into(),
                            reason: "tuple entries must be positive rationals".into(),
                        });
                    }
                    if !q.is_one() {
                        // BigRational arithmetic keeps lowest terms already.
                        m.insert(*i, q.clone());
                    }
                }
                Element::Rationals(m)
            }
            (GroupKind::AxB, &Element::Affine { a, b }) => {
                let e = Element::Affine {
                    a: normalize_zero(a),
                    b: normalize_zero(b),
                };
                check_finite_affine(&e)?;
                e
            }
            (GroupKind::Sl2, Element::Mat { n: 2, rows }) => {
                let rows: Vec<f64> = rows.iter().map(|&v| normalize_zero(v)).collect();
                if rows.iter().any(|v| !v.is_finite()) {
                    return Err(wrong());
                }
                let det = rows[0] * rows[3] - rows[1] * rows[2];
                let scale = rows.iter().fold(1.0f64, |m, v| m.max(v.abs()));
                if (det - 1.0).abs() > MATRIX_TOL * scale.max(1.0) {
                    return Err(SkError::BadElement {
                        literal: format!("{rows:?}"),
                        group: "sl2".into(),
                        reason: format!("determinant {det} is not 1"),
                    });
                }
                Element::Mat { n: 2, rows }
            }
            (GroupKind::GlN(n), Element::Mat { n: n2, rows }) if *n2 == n => {
                let rows: Vec<f64> = rows.iter().map(|&v| normalize_zero(v)).collect();
                if rows.iter().any(|v| !v.is_finite())
                    || mat_inv_f64(n as usize, &rows).is_none()
                {
                    return Err(SkError::BadElement {
                        literal: format!("{rows:?}"),
                        group: format!("gl:{n}"),
                        reason: "matrix not finite and invertible".into(),
                    });
                }
                Element::Mat { n, rows }
            }
            (GroupKind::UnipotentZ(q), Element::Unip(q1, x)) if *q1 == q => {
                let qq = q as usize;
                for i in 0..qq {
                    for j in 0..=i {
                        let v = x[i * qq + j];
                        let want = if i == j { 1 } else { 0 };
                        if v != want {
                            return Err(SkError::BadElement {
                                literal: format!("{x:?}"),
                                group: format!("unip:{q}"),
                                reason: "matrix is not upper unitriangular".into(),
                            });
                        }
                    }
                }
                raw.clone()
            }
            _ => return Err(wrong()),
        };
        Ok(out)
    }

    /// Tolerance-based equality for continuous kinds; exact for discrete.
    pub fn approx_eq(&self, other: &Element, tol: f64) -> bool {
        match (self, other) {
            (Element::Affine { a, b }, Element::Affine { a: a2, b: b2 }) => {
                rel_close(*a, *a2, tol) && rel_close(*b, *b2, tol)
            }
            (Element::Mat { n, rows }, Element::Mat { n: n2, rows: r2 }) => {
                n == n2 && rows.iter().zip(r2).all(|(x, y)| rel_close(*x, *y, tol))
            }
            _ => self == other,
        }
    }

    /// Parses the kind's canonical text form (see module docs); `e` is the
    /// identity for every kind.
    pub fn parse(kind: GroupKind, s: &str) -> SkResult<Element> {
        let s = s.trim();
        let bad = |reason: &str| SkError::BadElement {
            literal: s.to_string(),
            group: format!("{kind:?}"),
            reason: reason.to_string(),
        };
        if s == "e" {
            return Ok(Element::identity(kind));
        }
        let raw = match kind {
            GroupKind::ZD(_) => Element::Vector(parse_list(s).map_err(|r| bad(&r))?),
            GroupKind::Heisenberg => {
                let v: Vec<i64> = parse_list(s).map_err(|r| bad(&r))?;
                if v.len() != 3 {
                    return Err(bad("expected a,b,c"));
                }
                Element::Heis(v[0], v[1], v[2])
            }
            GroupKind::Free(k) => {
                let mut w = Vec::new();
                for ch in s.chars() {
                    let (lower, sign) = if ch.is_ascii_lowercase() {
                        (ch, 1)
                    } else if ch.is_ascii_uppercase() {
                        (ch.to_ascii_lowercase(), -1)
                    } else {
                        return Err(bad("expected letters a..z / A..Z"));
                    };
                    let idx = (lower as u8 - b'a') as i32 + 1;
                    if idx > k as i32 {
                        return Err(bad("generator index out of range"));
                    }
                    w.push(sign * idx);
                }
                Element::Word(w)
            }
            GroupKind::QTuple => {
                let mut m = BTreeMap::new();
                for part in s.split(',') {
                    let (i, q) = part
                        .split_once(':')
                        .ok_or_else(|| bad("expected index:rational pairs"))?;
                    let i: u32 = i.trim().parse().map_err(|_| bad("bad index"))?;
                    m.insert(i, parse_rational(q).map_err(|r| bad(&r))?);
                }
                Element::Rationals(m)
            }
            GroupKind::AxB => {
                let v: Vec<f64> = parse_list(s).map_err(|r| bad(&r))?;
                if v.len() != 2 {
                    return Err(bad("expected a,b"));
                }
                Element::Affine { a: v[0], b: v[1] }
            }
            GroupKind::Sl2 | GroupKind::GlN(_) => {
                let rows2d: Vec<Vec<f64>> = s
                    .split(';')
                    .map(parse_list)
                    .collect::<Result<_, _>>()
                    .map_err(|r| bad(&r))?;
                let n = rows2d.len() as u32;
                if rows2d.iter().any(|r| r.len() != n as usize) {
                    return Err(bad("matrix must be square"));
                }
                Element::Mat {
                    n,
                    rows: rows2d.into_iter().flatten().collect(),
                }
            }
            GroupKind::UnipotentZ(q) => {
                let rows2d: Vec<Vec<i64>> = s
                    .split(';')
                    .map(parse_list)
                    .collect::<Result<_, _>>()
                    .map_err(|r| bad(&r))?;
                if rows2d.len() != q as usize
                    || rows2d.iter().any(|r| r.len() != q as usize)
                {
                    return Err(bad("expected a q x q matrix"));
                }
                Element::Unip(q, rows2d.into_iter().flatten().collect())
            }
        };
        Element::canonicalize(kind, &raw)
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Vector(x) => write_list(f, x.iter()),
            Element::Heis(a, b, c) => write!(f, "{a},{b},{c}"),
            Element::Word(w) => {
                if w.is_empty() {
                    return f.write_str("e");
                }
                for &s in w {
                    let ch = (b'a' + (s.unsigned_abs() - 1) as u8) as char;
                    if s < 0 {
                        write!(f, "{}", ch.to_ascii_uppercase())?;
                    } else {
                        write!(f, "{ch}")?;
                    }
                }
                Ok(())
            }
            Element::Rationals(m) => {
                if m.is_empty() {
                    return f.write_str("e");
                }
                let mut first = true;
                for (i, q) in m {
                    if !first {
                        f.write_str(",")?;
                    }
                    first = false;
                    write!(f, "{i}:{q}")?;
                }
                Ok(())
            }
            Element::Affine { a, b } => write!(f, "{a},{b}"),
            Element::Mat { n, rows } => write_matrix(f, *n as usize, rows.iter()),
            Element::Unip(q, x) => write_matrix(f, *q as usize, x.iter()),
        }
    }
}

fn write_list<T: std::fmt::Display>(
    f: &mut std::fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> std::fmt::Result {
    let mut first = true;
    for v in items {
        if !first {
            f.write_str(",")?;
        }
        first = false;
        write!(f, "{v}")?;
    }
    Ok(())
}

fn write_matrix<T: std::fmt::Display>(
    f: &mut std::fmt::Formatter<'_>,
    n: usize,
    mut items: impl Iterator<Item = T>,
) -> std::fmt::Result {
    for i in 0..n {
        if i > 0 {
            f.write_str(";")?;
        }
        for j in 0..n {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", items.next().unwrap())?;
        }
    }
    Ok(())
}

// ---- total equality / ordering / hashing -------------------------------

/// Discriminant used to order across payload variants.
fn tag(e: &Element) -> u8 {
    match e {
        Element::Vector(_) => 0,
        Element::Heis(..) => 1,
        Element::Word(_) => 2,
        Element::Rationals(_) => 3,
        Element::Affine { .. } => 4,
        Element::Mat { .. } => 5,
        Element::Unip(..) => 6,
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Element {}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        use Element::*;
        match (self, other) {
            (Vector(x), Vector(y)) => x.cmp(y),
            (Heis(a, b, c), Heis(d, e, f)) => (a, b, c).cmp(&(d, e, f)),
            (Word(x), Word(y)) => (x.len(), x).cmp(&(y.len(), y)),
            (Rationals(x), Rationals(y)) => x.cmp(y),
            (Affine { a, b }, Affine { a: a2, b: b2 }) => a
                .total_cmp(a2)
                .then_with(|| b.total_cmp(b2)),
            (Mat { n, rows }, Mat { n: n2, rows: r2 }) => n.cmp(n2).then_with(|| {
                for (x, y) in rows.iter().zip(r2) {
                    let c = x.total_cmp(y);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }),
            (Unip(q, x), Unip(q2, y)) => q.cmp(q2).then_with(|| x.cmp(y)),
            _ => tag(self).cmp(&tag(other)),
        }
    }
}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        tag(self).hash(state);
        match self {
            Element::Vector(x) => x.hash(state),
            Element::Heis(a, b, c) => (a, b, c).hash(state),
            Element::Word(w) => w.hash(state),
            Element::Rationals(m) => m.hash(state),
            Element::Affine { a, b } => {
                a.to_bits().hash(state);
                b.to_bits().hash(state);
            }
            Element::Mat { n, rows } => {
                n.hash(state);
                for v in rows {
                    v.to_bits().hash(state);
                }
            }
            Element::Unip(q, x) => {
                q.hash(state);
                x.hash(state);
            }
        }
    }
}

// ---- small numeric helpers ---------------------------------------------

fn normalize_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0)
}

fn check_finite_affine(e: &Element) -> SkResult<()> {
    if let Element::Affine { a, b } = e {
        if !a.is_finite() || !b.is_finite() || a.exp().is_infinite() {
            return Err(SkError::Unsupported {
                group: "axb".into(),
                reason: "numeric overflow in affine product".into(),
            });
        }
    }
    Ok(())
}

fn identity_rows(n: usize) -> Vec<f64> {
    let mut rows = vec![0.0; n * n];
    for i in 0..n {
        rows[i * n + i] = 1.0;
    }
    rows
}

fn mat_mul_f64(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

fn mat_mul_i64(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// Gauss-Jordan inverse; `None` when the matrix is numerically singular.
fn mat_inv_f64(n: usize, a: &[f64]) -> Option<Vec<f64>> {
    let mut m = a.to_vec();
    let mut inv = identity_rows(n);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs()))?;
        if m[pivot * n + col].abs() < 1e-300 {
            return None;
        }
        for j in 0..n {
            m.swap(col * n + j, pivot * n + j);
            inv.swap(col * n + j, pivot * n + j);
        }
        let p = m[col * n + col];
        for j in 0..n {
            m[col * n + j] /= p;
            inv[col * n + j] /= p;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = m[i * n + col];
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                m[i * n + j] -= f * m[col * n + j];
                inv[i * n + j] -= f * inv[col * n + j];
            }
        }
    }
    Some(inv)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<T>()
                .map_err(|_| format!("bad entry `{p}`"))
        })
        .collect()
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let make = |n: &str, d: &str| -> Result<BigRational, String> {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator `{n}`"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator `{d}`"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(n, d))
    };
    match s.split_once('/') {
        Some((n, d)) => make(n, d),
        None => make(s, "1"),
    }
}
