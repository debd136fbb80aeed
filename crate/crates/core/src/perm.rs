//! Permutations in one-line form, 0-based internally and 1-based in text.
//!
//! Composition is the usual one: `(σ ∘ τ)(i) = σ(τ(i))`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Structure(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Structure("one-line notation is 1-based".into()));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// From 1-based disjoint cycles on `{1, …, n}`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n || seen[a - 1] {
                    return Err(Error::Structure(format!("bad cycle entry {a} for n = {n}")));
                }
                seen[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// Parses `[2,1,3]` / `2 1 3` (one-line) or `(1 2)(3)` (cycles). For cycle
    /// notation the size is `n` when given, otherwise the largest entry.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let text = text.trim();
        let perm = if text.starts_with('(') && text != "()" {
            let cycles = split_cycles(text)?;
            let max = cycles.iter().flatten().copied().max().unwrap_or(0);
            let size = n.unwrap_or(max);
            if max > size {
                return Err(Error::Structure(format!(
                    "cycle entry {max} exceeds n = {size}"
                )));
            }
            Self::from_cycles(size, &cycles)?
        } else if text == "()" || text.is_empty() {
            Self::identity(n.unwrap_or(0))
        } else {
            let inner = text
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .unwrap_or(text);
            Self::from_one_line(&numbers(inner)?)?
        };
        if let Some(n) = n {
            if perm.len() != n {
                return Err(Error::Structure(format!(
                    "permutation has size {}, expected {n}",
                    perm.len()
                )));
            }
        }
        Ok(perm)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::Structure(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation(other.0.iter().map(|&i| self.0[i]).collect()))
    }

    /// Inversion pairs `(i, j)`, `i < j`, `σ(i) > σ(j)`.
    pub fn inversions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| {
            (i + 1..n)
                .filter(move |&j| self.0[i] > self.0[j])
                .map(move |j| (i, j))
        })
    }

    /// Disjoint cycles (0-based), each starting at its least element, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle type, largest part first.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// `σ` on `0..len` extended by the identity on `len..n`.
    pub fn extend(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        v.extend(self.len()..n.max(self.len()));
        Permutation(v)
    }

    /// Acts on a tuple: the entry in slot `i` moves to slot `σ(i)`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        let mut out = items.to_vec();
        for (i, item) in items.iter().enumerate() {
            out[self.0[i]] = item.clone();
        }
        out
    }

    /// All permutations of `0..n` in lexicographic order of their one-line form.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n)
                .rev()
                .find(|&j| cur[j] > cur[i - 1])
                .expect("successor");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// 1-based cycle notation with fixed points, e.g. `(1 2)(3)`.
    pub fn cycle_string(&self) -> String {
        if self.is_empty() {
            return "()".into();
        }
        self.cycles()
            .iter()
            .map(|c| {
                format!(
                    "({})",
                    c.iter()
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                )
            })
            .collect()
    }
}

fn numbers(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad entry {t:?}: {e}")))
        })
        .collect()
}

/// `(1 2)(3)` as written, 1-based.
fn split_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let (inner, tail) = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| Error::Parse(format!("bad cycle notation {text:?}")))?;
        cycles.push(numbers(inner)?);
        rest = tail.trim_start();
    }
    Ok(cycles)
}

/// An explicit cycle list on `0..n`, kept in the written order and rotation. Points
/// not mentioned become trailing fixed points.
pub fn parse_cycle_list(text: &str, n: usize) -> Result<Vec<Vec<usize>>> {
    let cycles = split_cycles(text)?;
    Permutation::from_cycles(n, &cycles)?;
    let mut seen = vec![false; n];
    let mut out: Vec<Vec<usize>> = cycles
        .into_iter()
        .filter(|c| !c.is_empty())
        .map(|c| {
            c.into_iter()
                .map(|i| {
                    seen[i - 1] = true;
                    i - 1
                })
                .collect()
        })
        .collect();
    out.extend((0..n).filter(|&i| !seen[i]).map(|i| vec![i]));
    Ok(out)
}

impl fmt::Display for Permutation {
    /// 1-based one-line notation, e.g. `[2,1,3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_cycle_lists() {
        assert_eq!(
            parse_cycle_list("(2 1)", 3).unwrap(),
            vec![vec![1, 0], vec![2]]
        );
        assert_eq!(parse_cycle_list("()", 2).unwrap(), vec![vec![0], vec![1]]);
        assert!(parse_cycle_list("(1 1)", 2).is_err());
        assert!(parse_cycle_list("(1 4)", 3).is_err());
    }

    #[test]
    fn parse_forms() {
        let a = Permutation::parse("(1 2)(3)", None).unwrap();
        assert_eq!(a.images(), &[1, 0, 2]);
        assert_eq!(Permutation::parse("[2,1,3]", Some(3)).unwrap(), a);
        assert_eq!(
            Permutation::parse("(1 2 3)", None).unwrap().to_string(),
            "[2,3,1]"
        );
        assert_eq!(
            Permutation::parse("(1 3)", Some(4)).unwrap().cycle_string(),
            "(1 3)(2)(4)"
        );
        assert!(Permutation::parse("[1,1]", None).is_err());
        assert!(Permutation::parse("(1 2)", Some(1)).is_err());
    }

    #[test]
    fn composition_applies_right_first() {
        let s = Permutation::parse("(1 2)", Some(3)).unwrap();
        let t = Permutation::parse("(2 3)", Some(3)).unwrap();
        let st = s.compose(&t).unwrap();
        assert_eq!(st.apply(1), s.apply(t.apply(1)));
        assert_eq!(st.to_string(), "[2,3,1]");
        assert!(s.compose(&Permutation::identity(2)).is_err());
    }

    #[test]
    fn all_and_inverse() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        for p in &all {
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn permute_moves_slots_forward() {
        let s = Permutation::parse("(1 2 3)", None).unwrap();
        assert_eq!(s.permute(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
        assert_eq!(s.inversions().count(), 2);
    }
}
