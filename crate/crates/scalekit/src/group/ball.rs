//! Cayley-ball enumeration by breadth-first search.

use std::collections::HashMap;

use crate::error::{SkError, SkResult};
use crate::group::{Element, GeneratingSet, GroupSpec};

/// Default cap on the total number of enumerated elements.
pub const DEFAULT_CAP: usize = 5_000_000;

/// Enumerated Cayley balls `B_n` for a symmetric generating set: shells
/// `S_n = B_n \ B_{n-1}` with exact minimal word lengths.
#[derive(Debug, Clone)]
pub struct ShellTable {
    pub group: GroupSpec,
    /// The effective (symmetrized, deduplicated) generating set.
    pub generators: Vec<Element>,
    /// Enumerated radius; shell `n` lives at `shells[n]`.
    pub radius: u32,
    /// Canonically sorted shells; `shells[0] = [identity]`.
    pub shells: Vec<Vec<Element>>,
    /// True when the element cap stopped enumeration before `radius`.
    pub truncated: bool,
    index: HashMap<Element, u32>,
}

impl ShellTable {
    /// Minimal word length of `g` if `g` lies in the enumerated ball.
    pub fn gauge(&self, g: &Element) -> Option<u32> {
        self.index.get(g).copied()
    }

    /// Total number of enumerated elements `|B_radius|`.
    pub fn ball_size(&self) -> usize {
        self.index.len()
    }

    /// `|S_n|` for each enumerated shell.
    pub fn shell_sizes(&self) -> Vec<usize> {
        self.shells.iter().map(|s| s.len()).collect()
    }

    /// `|B_n|` running totals.
    pub fn ball_sizes(&self) -> Vec<usize> {
        let mut total = 0;
        self.shells
            .iter()
            .map(|s| {
                total += s.len();
                total
            })
            .collect()
    }

    /// Iterates over all enumerated elements with their word lengths.
    pub fn iter(&self) -> impl Iterator<Item = (&Element, u32)> {
        self.shells
            .iter()
            .enumerate()
            .flat_map(|(n, shell)| shell.iter().map(move |g| (g, n as u32)))
    }
}

/// Breadth-first enumeration of `B_R` for the symmetric closure of `gens`.
///
/// Deterministic: shells are sorted under the canonical element ordering.
/// When `cap` is reached the table is returned with `truncated = true` and
/// the last complete shell as its radius.
pub fn ball_enumerate(
    group: &GroupSpec,
    gens: &GeneratingSet,
    radius: u32,
    cap: usize,
) -> SkResult<ShellTable> {
    if !group.is_discrete() {
        return Err(SkError::Unsupported {
            group: group.format(),
            reason: "ball enumeration needs a discrete group".into(),
        });
    }
    let generators = gens.effective(group)?;
    let id = group.identity();
    let mut index: HashMap<Element, u32> = HashMap::new();
    index.insert(id.clone(), 0);
    let mut shells: Vec<Vec<Element>> = vec![vec![id]];
    let mut truncated = false;

    'outer: for n in 1..=radius {
        let mut next: Vec<Element> = Vec::new();
        for g in &shells[(n - 1) as usize] {
            for u in &generators {
                let h = group.multiply(g, u)?;
                if !index.contains_key(&h) {
                    if index.len() >= cap {
                        truncated = true;
                        break 'outer;
                    }
                    index.insert(h.clone(), n);
                    next.push(h);
                }
            }
        }
        if next.is_empty() {
            break; // group exhausted
        }
        next.sort();
        shells.push(next);
    }

    if truncated {
        // Drop the partial frontier: every retained shell is complete.
        let keep = shells.len() as u32 - 1;
        index.retain(|_, &mut n| n <= keep);
    }
    Ok(ShellTable {
        group: *group,
        generators,
        radius: shells.len() as u32 - 1,
        shells,
        truncated,
        index,
    })
}

/// The word gauge `tau_U(g) = min{n : g in U^n}` read off an enumerated
/// table; `None` when `g` is outside the enumerated ball (never an
/// overestimate).
pub fn word_gauge(table: &ShellTable, g: &Element) -> Option<u32> {
    table.gauge(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::evaluate_word;

    fn table(spec: &str, radius: u32) -> ShellTable {
        let g = GroupSpec::parse(spec).unwrap();
        let gens = g.standard_generators().unwrap();
        ball_enumerate(&g, &gens, radius, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn z2_ball_sizes_match_closed_form() {
        let t = table("z:2", 8);
        let sizes = t.ball_sizes();
        for (n, &b) in sizes.iter().enumerate() {
            let n = n as usize;
            assert_eq!(b, 2 * n * n + 2 * n + 1, "radius {n}");
        }
        assert_eq!(sizes[1], 5);
        assert_eq!(sizes[2], 13);
    }

    #[test]
    fn free2_ball_sizes_match_closed_form() {
        let t = table("free:2", 6);
        let sizes = t.ball_sizes();
        for (n, &b) in sizes.iter().enumerate() {
            assert_eq!(b, 2 * 3usize.pow(n as u32) - 1, "radius {n}");
        }
        assert_eq!(sizes[2], 17);
    }

    #[test]
    fn heisenberg_radius_zero_and_commutator_gauge() {
        let t0 = table("heis", 0);
        assert_eq!(t0.ball_size(), 1);
        let t = table("heis", 6);
        // (0,1,0) = [x,z] needs exactly 4 letters.
        assert_eq!(t.gauge(&Element::Heis(0, 1, 0)), Some(4));
        assert_eq!(t.gauge(&t.group.identity()), Some(0));
    }

    #[test]
    fn z_gauge_is_absolute_value() {
        let t = table("z", 10);
        assert_eq!(t.gauge(&Element::Vector(vec![5])), Some(5));
        assert_eq!(t.gauge(&Element::Vector(vec![-7])), Some(7));
        assert_eq!(t.gauge(&Element::Vector(vec![11])), None);
    }

    #[test]
    fn gauge_symmetry_and_subadditivity() {
        let t = table("heis", 8);
        let g = &t.group;
        for (x, n) in t.iter() {
            let inv = g.inverse(x).unwrap();
            assert_eq!(t.gauge(&inv), Some(n), "symmetry at {x}");
        }
        // subadditivity on the half ball, where products stay inside
        let half: Vec<_> = t
            .iter()
            .filter(|(_, n)| *n <= 4)
            .map(|(e, n)| (e.clone(), n))
            .collect();
        for (x, nx) in &half {
            for (y, ny) in &half {
                let p = g.multiply(x, y).unwrap();
                let np = t.gauge(&p).expect("product inside ball");
                assert!(np <= nx + ny, "{x} * {y}");
            }
        }
    }

    #[test]
    fn shells_reachable_from_previous_shell() {
        let t = table("z:2", 5);
        let g = &t.group;
        for n in 1..t.shells.len() {
            for e in &t.shells[n] {
                let reachable = t.shells[n - 1].iter().any(|p| {
                    t.generators
                        .iter()
                        .any(|u| g.multiply(p, u).unwrap() == *e)
                });
                assert!(reachable);
            }
        }
    }

    #[test]
    fn truncation_is_flagged_and_shells_complete() {
        let g = GroupSpec::parse("free:2").unwrap();
        let gens = g.standard_generators().unwrap();
        let t = ball_enumerate(&g, &gens, 10, 100).unwrap();
        assert!(t.truncated);
        // every kept shell is complete: sizes match 4 * 3^(n-1)
        for (n, s) in t.shell_sizes().iter().enumerate().skip(1) {
            assert_eq!(*s, 4 * 3usize.pow(n as u32 - 1));
        }
        assert_eq!(t.radius as usize, t.shells.len() - 1);
    }

    #[test]
    fn continuous_groups_rejected() {
        let g = GroupSpec::parse("axb").unwrap();
        let gens = GeneratingSet::new(vec![g.identity()], true);
        assert!(ball_enumerate(&g, &gens, 3, 100).is_err());
    }

    #[test]
    fn custom_generating_set_word_agrees() {
        // Z with doubled generator {±2}: only even numbers appear.
        let g = GroupSpec::parse("z").unwrap();
        let gens = GeneratingSet::new(vec![Element::Vector(vec![2])], true);
        let t = ball_enumerate(&g, &gens, 5, DEFAULT_CAP).unwrap();
        assert_eq!(t.gauge(&Element::Vector(vec![6])), Some(3));
        assert_eq!(t.gauge(&Element::Vector(vec![3])), None);
        let w = evaluate_word(&g, &gens, &[1, 1, 1]).unwrap();
        assert_eq!(t.gauge(&w), Some(3));
    }
}
