//! Concrete groups with exact canonical forms, word evaluation and
//! Cayley-ball enumeration.
//!
//! Discrete kinds (`Z^d`, the integer Heisenberg group, free groups, tuples
//! of positive rationals, integer unitriangular groups) have exact canonical
//! payloads and support ball enumeration.  Continuous kinds (`ax+b`,
//! `SL(2,R)`, `GL(n,R)`) expose multiplication, inversion and sampling only;
//! their equality is tolerance-based and they never enter a ball.

mod ball;
mod element;

pub use ball::{ball_enumerate, word_gauge, ShellTable, DEFAULT_CAP};
pub use element::Element;

use crate::error::{SkError, SkResult};

/// Relative tolerance used for continuous-kind equality and determinant
/// checks.
pub const MATRIX_TOL: f64 = 1e-9;

/// The supported group kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Free abelian group `Z^d`, `d >= 1`.
    ZD(u32),
    /// Integer Heisenberg group: `(a,b,c)` for `[[1,a,b],[0,1,c],[0,0,1]]`.
    Heisenberg,
    /// Free group on `k >= 1` generators.
    Free(u32),
    /// Finite-support tuples of positive rationals under pointwise
    /// multiplication (a direct sum of countably many copies of the positive
    /// rationals).
    QTuple,
    /// Real affine `ax+b` group: `(a,b)` for `[[e^a, b],[0,1]]`.
    AxB,
    /// `SL(2,R)`.
    Sl2,
    /// `GL(n,R)`, `n >= 2`.
    GlN(u32),
    /// Integer upper unitriangular `q x q` matrices, `q >= 2`.
    UnipotentZ(u32),
}

/// A concrete group: kind plus derived metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub kind: GroupKind,
}

impl GroupSpec {
    pub fn new(kind: GroupKind) -> SkResult<Self> {
        let ok = match kind {
            GroupKind::ZD(d) => d >= 1,
            GroupKind::Free(k) => k >= 1 && k <= 26,
            GroupKind::GlN(n) => n >= 2,
            GroupKind::UnipotentZ(q) => q >= 2,
            _ => true,
        };
        if ok {
            Ok(Self { kind })
        } else {
            Err(SkError::BadGroupSpec(format!("{kind:?}")))
        }
    }

    /// Parses the group mini-language: `z:d`, `heis`, `free:k`, `qinf`,
    /// `axb`, `sl2`, `gl:n`, `unip:q`.  `z` alone means `z:1`.
    pub fn parse(s: &str) -> SkResult<Self> {
        let bad = || SkError::BadGroupSpec(s.to_string());
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (s, None),
        };
        let num = |p: Option<&str>| -> SkResult<u32> {
            p.ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())
        };
        let kind = match head {
            "z" => GroupKind::ZD(match param {
                Some(p) => p.parse().map_err(|_| bad())?,
                None => 1,
            }),
            "heis" => GroupKind::Heisenberg,
            "free" => GroupKind::Free(num(param)?),
            "qinf" => GroupKind::QTuple,
            "axb" => GroupKind::AxB,
            "sl2" => GroupKind::Sl2,
            "gl" => GroupKind::GlN(num(param)?),
            "unip" => GroupKind::UnipotentZ(num(param)?),
            _ => return Err(bad()),
        };
        if param.is_some() && matches!(head, "heis" | "qinf" | "axb" | "sl2") {
            return Err(bad());
        }
        Self::new(kind)
    }

    /// True for kinds with exact canonical forms and hashable payloads.
    pub fn is_discrete(&self) -> bool {
        !matches!(
            self.kind,
            GroupKind::AxB | GroupKind::Sl2 | GroupKind::GlN(_)
        )
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.kind)
    }

    /// Exact (discrete) or floating (continuous) product of two elements in
    /// canonical form.
    pub fn multiply(&self, a: &Element, b: &Element) -> SkResult<Element> {
        Element::multiply(self.kind, a, b)
    }

    pub fn inverse(&self, a: &Element) -> SkResult<Element> {
        Element::inverse(self.kind, a)
    }

    /// Canonicalizes a structurally valid payload; idempotent.
    pub fn canonical_form(&self, raw: &Element) -> SkResult<Element> {
        Element::canonicalize(self.kind, raw)
    }

    /// Parses an element literal in the kind's canonical text form.
    pub fn parse_element(&self, s: &str) -> SkResult<Element> {
        Element::parse(self.kind, s)
    }

    pub fn format(&self) -> String {
        match self.kind {
            GroupKind::ZD(d) => format!("z:{d}"),
            GroupKind::Heisenberg => "heis".into(),
            GroupKind::Free(k) => format!("free:{k}"),
            GroupKind::QTuple => "qinf".into(),
            GroupKind::AxB => "axb".into(),
            GroupKind::Sl2 => "sl2".into(),
            GroupKind::GlN(n) => format!("gl:{n}"),
            GroupKind::UnipotentZ(q) => format!("unip:{q}"),
        }
    }

    /// The kind-default symmetric generating set (`std` in the CLI).
    pub fn standard_generators(&self) -> SkResult<GeneratingSet> {
        let elements = match self.kind {
            GroupKind::ZD(d) => (0..d as usize)
                .map(|i| {
                    let mut v = vec![0i64; d as usize];
                    v[i] = 1;
                    Element::Vector(v)
                })
                .collect(),
            // x = (1,0,0) and z = (0,0,1); their commutator generates the
            // centre, so {x^{±1}, z^{±1}} generates the whole group.
            GroupKind::Heisenberg => {
                vec![Element::Heis(1, 0, 0), Element::Heis(0, 0, 1)]
            }
            GroupKind::Free(k) => (1..=k as i32).map(|i| Element::Word(vec![i])).collect(),
            GroupKind::UnipotentZ(q) => (0..(q - 1) as usize)
                .map(|i| {
                    let mut m = Element::unip_identity_entries(q);
                    // elementary e_{i,i+1}(1)
                    m[i * q as usize + i + 1] = 1;
                    Element::Unip(q, m)
                })
                .collect(),
            _ => {
                return Err(SkError::Unsupported {
                    group: self.format(),
                    reason: "no standard finite generating set".into(),
                })
            }
        };
        Ok(GeneratingSet::new(elements, true))
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format())
    }
}

/// A finite list of group elements, optionally closed under inversion.
#[derive(Debug, Clone)]
pub struct GeneratingSet {
    /// The declared elements (word indices reference this list, 1-based).
    pub elements: Vec<Element>,
    /// When true, the effective set is the symmetric closure of `elements`
    /// (Def of word gauge requires `U = U^{-1}`).
    pub symmetric: bool,
}

impl GeneratingSet {
    pub fn new(elements: Vec<Element>, symmetric: bool) -> Self {
        Self { elements, symmetric }
    }

    /// The effective generating set: declared elements, plus inverses when
    /// the symmetric flag is set, deduplicated, identity removed.
    pub fn effective(&self, group: &GroupSpec) -> SkResult<Vec<Element>> {
        let mut out: Vec<Element> = Vec::new();
        let id = group.identity();
        let push = |e: Element, out: &mut Vec<Element>| {
            if e != id && !out.contains(&e) {
                out.push(e);
            }
        };
        for e in &self.elements {
            let e = group.canonical_form(e)?;
            if self.symmetric {
                let inv = group.inverse(&e)?;
                push(e, &mut out);
                push(inv, &mut out);
            } else {
                push(e, &mut out);
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Evaluates a word of signed 1-based generator indices: `+i` means
/// `gens.elements[i-1]`, `-i` its inverse.  The empty word is the identity.
pub fn evaluate_word(
    group: &GroupSpec,
    gens: &GeneratingSet,
    word: &[i64],
) -> SkResult<Element> {
    let mut acc = group.identity();
    for &idx in word {
        if idx == 0 || idx.unsigned_abs() as usize > gens.elements.len() {
            return Err(SkError::BadProbeParams(format!(
                "word index {idx} out of range 1..={}",
                gens.elements.len()
            )));
        }
        let g = &gens.elements[idx.unsigned_abs() as usize - 1];
        let g = if idx < 0 { group.inverse(g)? } else { g.clone() };
        acc = group.multiply(&acc, &g)?;
    }
    group.canonical_form(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_group_specs() {
        assert_eq!(GroupSpec::parse("z:2").unwrap().kind, GroupKind::ZD(2));
        assert_eq!(GroupSpec::parse("z").unwrap().kind, GroupKind::ZD(1));
        assert_eq!(GroupSpec::parse("heis").unwrap().kind, GroupKind::Heisenberg);
        assert_eq!(GroupSpec::parse("free:2").unwrap().kind, GroupKind::Free(2));
        assert_eq!(GroupSpec::parse("unip:4").unwrap().kind, GroupKind::UnipotentZ(4));
        assert!(GroupSpec::parse("z:0").is_err());
        assert!(GroupSpec::parse("gl:1").is_err());
        assert!(GroupSpec::parse("nope").is_err());
        assert!(GroupSpec::parse("heis:3").is_err());
    }

    #[test]
    fn evaluate_word_z2() {
        let g = GroupSpec::parse("z:2").unwrap();
        let gens = g.standard_generators().unwrap();
        let e = evaluate_word(&g, &gens, &[1, 2, 1]).unwrap();
        assert_eq!(e, Element::Vector(vec![2, 1]));
        assert_eq!(evaluate_word(&g, &gens, &[]).unwrap(), g.identity());
    }

    #[test]
    fn evaluate_word_heisenberg_commutator() {
        // [x, z] = x z x^{-1} z^{-1} lands on the centre generator (0,1,0).
        let g = GroupSpec::parse("heis").unwrap();
        let gens = g.standard_generators().unwrap();
        let e = evaluate_word(&g, &gens, &[1, 2, -1, -2]).unwrap();
        assert_eq!(e, Element::Heis(0, 1, 0));
    }

    #[test]
    fn evaluate_word_free_reduction() {
        let g = GroupSpec::parse("free:2").unwrap();
        let gens = g.standard_generators().unwrap();
        let e = evaluate_word(&g, &gens, &[1, 2, -2, 1]).unwrap();
        assert_eq!(e, Element::Word(vec![1, 1]));
    }

    #[test]
    fn word_index_out_of_range() {
        let g = GroupSpec::parse("z").unwrap();
        let gens = g.standard_generators().unwrap();
        assert!(evaluate_word(&g, &gens, &[3]).is_err());
        assert!(evaluate_word(&g, &gens, &[0]).is_err());
    }

    #[test]
    fn standard_generators_are_symmetric() {
        for s in ["z:2", "heis", "free:2", "unip:3"] {
            let g = GroupSpec::parse(s).unwrap();
            let eff = g.standard_generators().unwrap().effective(&g).unwrap();
            for e in &eff {
                let inv = g.inverse(e).unwrap();
                assert!(eff.contains(&inv), "{s}: inverse of {e:?} missing");
            }
        }
    }

    #[test]
    fn continuous_groups_have_no_standard_generators() {
        for s in ["axb", "sl2", "gl:2", "qinf"] {
            let g = GroupSpec::parse(s).unwrap();
            assert!(g.standard_generators().is_err());
        }
    }
}
