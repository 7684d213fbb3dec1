//! Symbolic Ziegler spectra of `V` and of the tower rings `R_n`.
//!
//! The spectrum of `R_n` is a union of copies of `Zg_V`, one per prefix `F0^{n-l} F1^l`, whose
//! completion and fraction-field points coincide (`F0^n Adic`, `F0^n Q`), plus the closed points
//! `F0^p F1^l T(m)`. A set is closed exactly when each copy is closed in `Zg_V`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::tower::{FpLabel, Seed};

/// A point of `Zg_{R_n}`; finite-length points carry the prefix `F0^f0 F1^f1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZieglerPoint {
    FinLen { f0: usize, f1: usize, j: usize },
    Prufer { f0: usize, f1: usize },
    Adic { n: usize },
    Q { n: usize },
    T { f0: usize, f1: usize, m: usize },
}

impl ZieglerPoint {
    pub fn height(&self) -> usize {
        match *self {
            ZieglerPoint::FinLen { f0, f1, .. } | ZieglerPoint::Prufer { f0, f1 } => f0 + f1,
            ZieglerPoint::Adic { n } | ZieglerPoint::Q { n } => n,
            ZieglerPoint::T { f0, f1, m } => f0 + f1 + m,
        }
    }

    pub fn is_finite_length(&self) -> bool {
        matches!(self, ZieglerPoint::FinLen { .. } | ZieglerPoint::T { .. })
    }

    /// Index `l` of the copy of `Zg_V` with prefix `F0^{n-l} F1^l`, for points in such a copy.
    pub fn copy(&self) -> Option<usize> {
        match *self {
            ZieglerPoint::FinLen { f1, .. } | ZieglerPoint::Prufer { f1, .. } => Some(f1),
            _ => None,
        }
    }

    /// Identifies `T(0)` with `FinLen(1)`.
    pub fn canonical(self) -> Self {
        match self {
            ZieglerPoint::T { f0, f1, m: 0 } => ZieglerPoint::FinLen { f0, f1, j: 1 },
            p => p,
        }
    }

    /// The finitely presented module behind a finite-length point.
    pub fn label(&self) -> Option<FpLabel> {
        match *self {
            ZieglerPoint::FinLen { f0, f1, j } => Some(FpLabel { f0, f1, seed: Seed::Ind(j) }),
            ZieglerPoint::T { f0, f1, m } => Some(FpLabel { f0, f1, seed: Seed::T(m) }.canonical()),
            _ => None,
        }
    }

    pub fn from_label(label: &FpLabel) -> Self {
        let l = label.canonical();
        match l.seed {
            Seed::Ind(j) => ZieglerPoint::FinLen { f0: l.f0, f1: l.f1, j },
            Seed::T(m) => ZieglerPoint::T { f0: l.f0, f1: l.f1, m },
        }
    }
}

fn prefix_string(f0: usize, f1: usize) -> String {
    let mut s = String::new();
    for (name, e) in [("F0", f0), ("F1", f1)] {
        match e {
            0 => {}
            1 => s.push_str(&format!("{name} ")),
            _ => s.push_str(&format!("{name}^{e} ")),
        }
    }
    s
}

fn write_prefix(f: &mut fmt::Formatter<'_>, f0: usize, f1: usize) -> fmt::Result {
    f.write_str(&prefix_string(f0, f1))
}

impl fmt::Display for ZieglerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ZieglerPoint::FinLen { f0, f1, j } => {
                write_prefix(f, f0, f1)?;
                write!(f, "FinLen({j})")
            }
            ZieglerPoint::Prufer { f0, f1 } => {
                write_prefix(f, f0, f1)?;
                f.write_str("Prufer")
            }
            ZieglerPoint::Adic { n } => {
                write_prefix(f, n, 0)?;
                f.write_str("Adic")
            }
            ZieglerPoint::Q { n } => {
                write_prefix(f, n, 0)?;
                f.write_str("Q")
            }
            ZieglerPoint::T { f0, f1, m } => {
                write_prefix(f, f0, f1)?;
                write!(f, "T({m})")
            }
        }
    }
}

/// Parses a word of `F0`/`F1` factors (outermost first, optional `^k` exponents).
/// `F1` applied to an `F0`-image is rewritten to `F0`, so the result is `F0^p F1^l`.
fn parse_prefix(tokens: &[&str]) -> Result<(usize, usize)> {
    let mut word = Vec::new();
    for t in tokens {
        let (name, exp) = match t.split_once('^') {
            Some((n, e)) => (n, e.parse::<usize>().map_err(|_| bad_point(t))?),
            None => (*t, 1),
        };
        let bit = match name {
            "F0" => 0,
            "F1" => 1,
            _ => return Err(bad_point(t)),
        };
        word.extend(core::iter::repeat_n(bit, exp));
    }
    let l = word.iter().rev().take_while(|&&b| b == 1).count();
    Ok((word.len() - l, l))
}

fn bad_point(s: &str) -> Error {
    Error::InvalidParameter(format!("malformed Ziegler point `{s}`"))
}

fn parse_arg(s: &str, head: &str) -> Option<String> {
    s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')').map(str::to_string)
}

impl FromStr for ZieglerPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let (last, prefix) = tokens.split_last().ok_or_else(|| bad_point(s))?;
        let (f0, f1) = parse_prefix(prefix)?;
        let num = |a: String| a.trim().parse::<usize>().map_err(|_| bad_point(s));
        let p = match *last {
            "Prufer" => ZieglerPoint::Prufer { f0, f1 },
            "Adic" => ZieglerPoint::Adic { n: f0 + f1 },
            "Q" => ZieglerPoint::Q { n: f0 + f1 },
            other => {
                if let Some(a) = parse_arg(other, "FinLen") {
                    let j = num(a)?;
                    if j == 0 {
                        return Err(bad_point(s));
                    }
                    ZieglerPoint::FinLen { f0, f1, j }
                } else if let Some(a) = parse_arg(other, "T") {
                    ZieglerPoint::T { f0, f1, m: num(a)? }.canonical()
                } else {
                    return Err(bad_point(s));
                }
            }
        };
        Ok(p)
    }
}

/// A set of points: explicit points plus, per copy `l`, an optional cofinite family
/// "all `FinLen(j)` of the copy except the listed `j`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    height: usize,
    points: BTreeSet<ZieglerPoint>,
    cofinite: BTreeMap<usize, BTreeSet<usize>>,
}

impl PointSet {
    pub fn empty(height: usize) -> Self {
        PointSet { height, points: BTreeSet::new(), cofinite: BTreeMap::new() }
    }

    /// The whole spectrum of `R_n`.
    pub fn spectrum(n: usize) -> Self {
        let mut s = PointSet::empty(n);
        for l in 0..=n {
            s.cofinite.insert(l, BTreeSet::new());
            s.points.insert(ZieglerPoint::Prufer { f0: n - l, f1: l });
        }
        s.points.insert(ZieglerPoint::Adic { n });
        s.points.insert(ZieglerPoint::Q { n });
        for m in 1..=n {
            for l in 0..=n - m {
                s.points.insert(ZieglerPoint::T { f0: n - m - l, f1: l, m });
            }
        }
        s
    }

    pub fn from_points(height: usize, pts: impl IntoIterator<Item = ZieglerPoint>) -> Result<Self> {
        let mut s = PointSet::empty(height);
        for p in pts {
            s.insert(p)?;
        }
        Ok(s)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn insert(&mut self, p: ZieglerPoint) -> Result<()> {
        let p = p.canonical();
        if p.height() != self.height {
            return Err(Error::InvalidParameter(format!("point {p} has height {}, set has height {}", p.height(), self.height)));
        }
        if let ZieglerPoint::FinLen { f1, j, .. } = p {
            if let Some(ex) = self.cofinite.get_mut(&f1) {
                ex.remove(&j);
                return Ok(());
            }
        }
        self.points.insert(p);
        Ok(())
    }

    /// Adds the cofinite family of copy `l`, minus `except`.
    pub fn insert_cofinite(&mut self, l: usize, except: impl IntoIterator<Item = usize>) -> Result<()> {
        if l > self.height {
            return Err(Error::InvalidParameter(format!("copy {l} exceeds height {}", self.height)));
        }
        let mut ex: BTreeSet<usize> = except.into_iter().filter(|&j| j >= 1).collect();
        if let Some(old) = self.cofinite.get(&l) {
            ex = ex.intersection(old).copied().collect();
        }
        let explicit: Vec<usize> = self.points.iter().filter_map(|p| match *p {
            ZieglerPoint::FinLen { f1, j, .. } if f1 == l => Some(j),
            _ => None,
        }).collect();
        for j in explicit {
            ex.remove(&j);
            self.points.remove(&ZieglerPoint::FinLen { f0: self.height - l, f1: l, j });
        }
        self.cofinite.insert(l, ex);
        Ok(())
    }

    pub fn contains(&self, p: &ZieglerPoint) -> bool {
        let p = p.canonical();
        if let ZieglerPoint::FinLen { f1, j, .. } = p {
            if p.height() == self.height {
                if let Some(ex) = self.cofinite.get(&f1) {
                    return !ex.contains(&j);
                }
            }
        }
        self.points.contains(&p)
    }

    pub fn explicit_points(&self) -> impl Iterator<Item = &ZieglerPoint> {
        self.points.iter()
    }

    pub fn cofinite_families(&self) -> impl Iterator<Item = (usize, &BTreeSet<usize>)> {
        self.cofinite.iter().map(|(&l, ex)| (l, ex))
    }

    pub fn infinite_points(&self) -> Vec<ZieglerPoint> {
        self.points.iter().filter(|p| !p.is_finite_length()).copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.cofinite.is_empty()
    }

    fn has_infinitely_many_finite(&self, l: usize) -> bool {
        self.cofinite.contains_key(&l)
    }

    fn check_height(&self, other: &PointSet) -> Result<()> {
        if self.height != other.height {
            return Err(Error::InvalidParameter(format!("heights {} and {} differ", self.height, other.height)));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &PointSet) -> Result<bool> {
        self.check_height(other)?;
        if !self.points.iter().all(|p| other.contains(p)) {
            return Ok(false);
        }
        for (l, ex) in &self.cofinite {
            match other.cofinite.get(l) {
                Some(oex) if oex.is_subset(ex) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.check_height(other)?;
        let mut out = self.clone();
        for (&l, ex) in &other.cofinite {
            out.insert_cofinite(l, ex.iter().copied())?;
        }
        for p in &other.points {
            out.insert(*p)?;
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &PointSet) -> Result<PointSet> {
        self.check_height(other)?;
        let mut out = PointSet::empty(self.height);
        for (&l, ex) in &self.cofinite {
            if let Some(oex) = other.cofinite.get(&l) {
                out.cofinite.insert(l, ex.union(oex).copied().collect());
            }
        }
        for p in self.points.iter().filter(|p| other.contains(p)).chain(other.points.iter().filter(|p| self.contains(p))) {
            out.insert(*p)?;
        }
        Ok(out)
    }

    /// Least closed superset: in each copy, infinitely many finite-length points force the
    /// Prüfer, adic and fraction-field points; Prüfer or adic points force the fraction-field point.
    pub fn closure(&self) -> PointSet {
        let n = self.height;
        let mut out = self.clone();
        let mut force_q = false;
        for l in 0..=n {
            if out.has_infinitely_many_finite(l) {
                out.points.insert(ZieglerPoint::Prufer { f0: n - l, f1: l });
                out.points.insert(ZieglerPoint::Adic { n });
                force_q = true;
            }
        }
        if out.points.iter().any(|p| matches!(p, ZieglerPoint::Prufer { .. } | ZieglerPoint::Adic { .. })) {
            force_q = true;
        }
        if force_q {
            out.points.insert(ZieglerPoint::Q { n });
        }
        out
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }
}

/// The closure of a single point: itself if finite-length, else `{p, F0^n Q}`.
pub fn point_closure(p: ZieglerPoint) -> PointSet {
    let mut s = PointSet::empty(p.height());
    s.insert(p).expect("height matches by construction");
    s.closure()
}

/// Header line recording how the closed-set rule is used.
pub const CLOSURE_ASSUMPTION: &str = "closed-set criterion applied as a necessary and sufficient fixpoint rule";

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.height;
        let mut items: Vec<(ZieglerPoint, String)> = self.points.iter().map(|p| (*p, p.to_string())).collect();
        for (&l, ex) in &self.cofinite {
            let key = ZieglerPoint::FinLen { f0: n - l, f1: l, j: 0 };
            let mut s = prefix_string(n - l, l);
            if ex.is_empty() {
                s.push_str("FinLen(*)");
            } else {
                let list: Vec<String> = ex.iter().map(|j| j.to_string()).collect();
                s.push_str(&format!("FinLen(*\\{})", list.join(",")));
            }
            items.push((key, s));
        }
        items.sort();
        let parts: Vec<String> = items.into_iter().map(|(_, s)| s).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl PointSet {
    /// Parses `{p1, p2, …}` at the given height; `FinLen(*)` or `FinLen(*\2,3)` is a cofinite family.
    pub fn parse(height: usize, s: &str) -> Result<Self> {
        let inner = s.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(|| bad_point(s))?;
        let mut out = PointSet::empty(height);
        let mut depth = 0usize;
        let mut start = 0;
        let mut items = Vec::new();
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    items.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        items.push(&inner[start..]);
        for item in items.into_iter().map(str::trim).filter(|t| !t.is_empty()) {
            let tokens: Vec<&str> = item.split_whitespace().collect();
            let (last, prefix) = tokens.split_last().ok_or_else(|| bad_point(item))?;
            if let Some(arg) = parse_arg(last, "FinLen").filter(|a| a.starts_with('*')) {
                let (f0, f1) = parse_prefix(prefix)?;
                if f0 + f1 != height {
                    return Err(Error::InvalidParameter(format!("family `{item}` does not have height {height}")));
                }
                let rest = arg[1..].trim();
                let except = match rest.strip_prefix('\\') {
                    Some(list) => list.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad_point(item))).collect::<Result<Vec<_>>>()?,
                    None if rest.is_empty() => Vec::new(),
                    None => return Err(bad_point(item)),
                };
                out.insert_cofinite(f1, except)?;
            } else {
                out.insert(item.parse()?)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> ZieglerPoint {
        s.parse().unwrap()
    }

    #[test]
    fn spectrum_of_v() {
        let s = PointSet::spectrum(0);
        assert_eq!(s.infinite_points(), vec![p("Prufer"), p("Adic"), p("Q")]);
        assert!(s.contains(&p("FinLen(7)")));
        assert!(s.is_closed());
    }

    #[test]
    fn infinite_points_at_height_one() {
        let s = PointSet::spectrum(1);
        let mut got = s.infinite_points();
        got.sort();
        let mut want = vec![p("F0 Prufer"), p("F1 Prufer"), p("F0 Adic"), p("F0 Q")];
        want.sort();
        assert_eq!(got, want);
        for n in 0..5 {
            assert_eq!(PointSet::spectrum(n).infinite_points().len(), n + 3);
        }
    }

    #[test]
    fn prefixes_canonicalize() {
        assert_eq!(p("F1 Adic"), p("F0 Adic"));
        assert_eq!(p("F1 F0 Prufer"), p("F0^2 Prufer"));
        assert_eq!(p("F0 F1 FinLen(2)"), ZieglerPoint::FinLen { f0: 1, f1: 1, j: 2 });
        assert_eq!(p("F0 T(0)"), p("F0 FinLen(1)"));
        assert!("F2 Prufer".parse::<ZieglerPoint>().is_err());
        assert!("FinLen(0)".parse::<ZieglerPoint>().is_err());
    }

    #[test]
    fn closure_rules_at_height_zero() {
        let mut fin = PointSet::empty(0);
        fin.insert_cofinite(0, []).unwrap();
        let c = fin.closure();
        for q in ["Prufer", "Adic", "Q"] {
            assert!(c.contains(&p(q)));
        }
        let pr = PointSet::from_points(0, [p("Prufer")]).unwrap();
        assert_eq!(pr.closure(), PointSet::from_points(0, [p("Prufer"), p("Q")]).unwrap());
        assert_eq!(PointSet::empty(0).closure(), PointSet::empty(0));
    }

    #[test]
    fn point_closures() {
        assert_eq!(point_closure(p("F0 Prufer")), PointSet::from_points(1, [p("F0 Prufer"), p("F0 Q")]).unwrap());
        assert_eq!(point_closure(p("FinLen(2)")), PointSet::from_points(0, [p("FinLen(2)")]).unwrap());
        assert!(!PointSet::from_points(1, [p("F0 Adic")]).unwrap().is_closed());
        assert!(PointSet::from_points(2, [p("T(2)"), p("F1 T(1)")]).unwrap().is_closed());
    }

    #[test]
    fn set_syntax_round_trip() {
        let s = PointSet::parse(1, "{F1 FinLen(*\\2,3), F0 FinLen(4), F0 Q}").unwrap();
        assert!(!s.contains(&p("F1 FinLen(2)")));
        assert!(s.contains(&p("F1 FinLen(9)")));
        assert_eq!(PointSet::parse(1, &s.to_string()).unwrap(), s);
        let full = PointSet::spectrum(2);
        assert_eq!(PointSet::parse(2, &full.to_string()).unwrap(), full);
    }

    #[test]
    fn finite_points_match_labels() {
        for n in 0..4 {
            let t_points = PointSet::spectrum(n).explicit_points().filter(|q| matches!(q, ZieglerPoint::T { .. })).count();
            // triples p+l+m = n, minus the m = 0 ones that coincide with FinLen(1)
            assert_eq!(t_points + n + 1, (n + 1) * (n + 2) / 2);
        }
        let l: FpLabel = "F0^1 F1^1 Ind(3)".parse().unwrap();
        assert_eq!(ZieglerPoint::from_label(&l).label(), Some(l));
    }
}
