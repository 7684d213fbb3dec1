//! Ray tubes `Q(m; n_0, …, n_{m-1})` truncated at a horizon `J`, paths modulo mesh relations,
//! and the symbolic generalized ray tube built from them.
//!
//! Paths are stored in application order: `[a, b]` means `a` first, then `b` (that is `b∘a`).
//! Rewriting moves every `λ` in front of every `μ`:
//!
//! * `μ_i^k[j], λ_i^k[j+1]` → `λ_i^k[j], μ_i^{k+1}[j]` for `k < n_i`;
//! * `μ_i^{n_i}[j], λ_i^{n_i}[j+1]` → `λ_i^{n_i}[j], μ_{i+1}^0[j-1]` for `j ≥ 2`;
//! * `μ_i^{n_i}[1], λ_i^{n_i}[2]` → zero.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// `S_i^k[j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub i: usize,
    pub k: usize,
    pub j: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{},{})", self.i, self.k, self.j)
    }
}

/// An irreducible map, named by its source `S_i^k[j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Mu { i: usize, k: usize, j: usize },
    Lambda { i: usize, k: usize, j: usize },
}

impl Arrow {
    pub fn source(&self) -> Vertex {
        match *self {
            Arrow::Mu { i, k, j } | Arrow::Lambda { i, k, j } => Vertex { i, k, j },
        }
    }

    pub fn is_mu(&self) -> bool {
        matches!(self, Arrow::Mu { .. })
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arrow::Mu { i, k, j } => write!(f, "mu_{i}^{k}[{j}]"),
            Arrow::Lambda { i, k, j } => write!(f, "lambda_{i}^{k}[{j}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TranslationQuiver {
    m: usize,
    rays: Vec<usize>,
    horizon: usize,
}

impl TranslationQuiver {
    pub fn new(m: usize, rays: &[usize], horizon: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("a ray tube has rank m ≥ 1".into()));
        }
        if rays.len() != m {
            return Err(Error::InvalidParameter(format!("expected {m} ray lengths, got {}", rays.len())));
        }
        if horizon < 2 {
            return Err(Error::InvalidParameter("the horizon J must be at least 2".into()));
        }
        Ok(TranslationQuiver { m, rays: rays.to_vec(), horizon })
    }

    /// The zero tube: no vertices at any level.
    pub fn empty(horizon: usize) -> Result<Self> {
        if horizon < 2 {
            return Err(Error::InvalidParameter("the horizon J must be at least 2".into()));
        }
        Ok(TranslationQuiver { m: 0, rays: Vec::new(), horizon })
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn ray(&self, i: usize) -> usize {
        self.rays[i % self.m]
    }

    /// Number of `λ` steps that bring `S_i^k[j]` back to ray `(i, k)` at level `j - m`.
    pub fn cycle_length(&self) -> usize {
        self.rays.iter().map(|n| n + 1).sum()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.i < self.m && v.k <= self.rays[v.i] && v.j >= 1 && v.j <= self.horizon
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        for j in 1..=self.horizon {
            for i in 0..self.m {
                for k in 0..=self.rays[i] {
                    out.push(Vertex { i, k, j });
                }
            }
        }
        out
    }

    /// Target of `a`, if `a` is an arrow of the truncated quiver.
    pub fn target(&self, a: Arrow) -> Option<Vertex> {
        let s = a.source();
        if !self.contains(s) {
            return None;
        }
        let t = match a {
            Arrow::Mu { i, k, j } => Vertex { i, k, j: j + 1 },
            Arrow::Lambda { i, k, j } if k < self.rays[i] => Vertex { i, k: k + 1, j },
            Arrow::Lambda { i, j, .. } => {
                if j < 2 {
                    return None;
                }
                Vertex { i: (i + 1) % self.m, k: 0, j: j - 1 }
            }
        };
        self.contains(t).then_some(t)
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for v in self.vertices() {
            for a in self.arrows_from(v) {
                out.push(a);
            }
        }
        out
    }

    pub fn arrows_from(&self, v: Vertex) -> Vec<Arrow> {
        [Arrow::Lambda { i: v.i, k: v.k, j: v.j }, Arrow::Mu { i: v.i, k: v.k, j: v.j }]
            .into_iter()
            .filter(|&a| self.target(a).is_some())
            .collect()
    }

    pub fn mu_from(&self, v: Vertex) -> Option<Arrow> {
        let a = Arrow::Mu { i: v.i, k: v.k, j: v.j };
        self.target(a).map(|_| a)
    }

    pub fn lambda_from(&self, v: Vertex) -> Option<Arrow> {
        let a = Arrow::Lambda { i: v.i, k: v.k, j: v.j };
        self.target(a).map(|_| a)
    }

    /// All paths with at most `max_len` arrows, starting anywhere.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<FormalPath> {
        let mut out = Vec::new();
        for v in self.vertices() {
            let mut frontier = vec![FormalPath::identity(v)];
            for _ in 0..=max_len {
                let mut next = Vec::new();
                for p in frontier {
                    if p.len() < max_len {
                        for a in self.arrows_from(p.end(self)) {
                            let mut q = p.clone();
                            q.arrows.push(a);
                            next.push(q);
                        }
                    }
                    out.push(p);
                }
                frontier = next;
            }
        }
        out
    }

    pub fn check_path(&self, p: &FormalPath) -> Result<()> {
        if !self.contains(p.start) {
            return Err(Error::NotComposable(format!("{} is outside the horizon", p.start)));
        }
        let mut at = p.start;
        for a in &p.arrows {
            if a.source() != at {
                return Err(Error::NotComposable(format!("{a} does not start at {at}")));
            }
            at = self.target(*a).ok_or_else(|| Error::NotComposable(format!("{a} leaves the horizon")))?;
        }
        Ok(())
    }

    /// One rewriting step at position `pos` (a `μ` followed by a `λ`).
    fn rewrite_at(&self, arrows: &[Arrow], pos: usize) -> Option<Vec<Arrow>> {
        let (Arrow::Mu { i, k, j }, Arrow::Lambda { .. }) = (arrows[pos], arrows[pos + 1]) else {
            unreachable!("rewrite_at needs a μλ redex");
        };
        let replacement = if k < self.rays[i] {
            [Arrow::Lambda { i, k, j }, Arrow::Mu { i, k: k + 1, j }]
        } else if j >= 2 {
            [Arrow::Lambda { i, k, j }, Arrow::Mu { i: (i + 1) % self.m, k: 0, j: j - 1 }]
        } else {
            return None;
        };
        let mut out = arrows.to_vec();
        out[pos] = replacement[0];
        out[pos + 1] = replacement[1];
        Some(out)
    }

    fn redexes(arrows: &[Arrow]) -> Vec<usize> {
        (0..arrows.len().saturating_sub(1)).filter(|&p| arrows[p].is_mu() && !arrows[p + 1].is_mu()).collect()
    }

    /// Canonical form, rewriting the leftmost redex first.
    pub fn normalize(&self, p: &FormalPath) -> Result<NormalPath> {
        self.check_path(p)?;
        if p.coeff == 0 {
            return Ok(NormalPath::Zero);
        }
        let mut arrows = p.arrows.clone();
        while let Some(&pos) = Self::redexes(&arrows).first() {
            match self.rewrite_at(&arrows, pos) {
                Some(next) => arrows = next,
                None => return Ok(NormalPath::Zero),
            }
        }
        Ok(NormalPath::Path(FormalPath { coeff: p.coeff, start: p.start, arrows }))
    }

    /// Every normal form reachable from `p` under all rewriting orders.
    pub fn all_normal_forms(&self, p: &FormalPath) -> Result<BTreeSet<NormalPath>> {
        self.check_path(p)?;
        let mut seen: BTreeSet<Vec<Arrow>> = BTreeSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![p.arrows.clone()];
        while let Some(w) = stack.pop() {
            if !seen.insert(w.clone()) {
                continue;
            }
            let red = Self::redexes(&w);
            if red.is_empty() {
                out.insert(NormalPath::Path(FormalPath { coeff: p.coeff, start: p.start, arrows: w }));
                continue;
            }
            for pos in red {
                match self.rewrite_at(&w, pos) {
                    Some(next) => stack.push(next),
                    None => {
                        out.insert(NormalPath::Zero);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Follows `count` λ-arrows from `v`.
    pub fn lambda_walk(&self, v: Vertex, count: usize) -> Option<Vec<Arrow>> {
        let mut at = v;
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let a = self.lambda_from(at)?;
            at = self.target(a)?;
            out.push(a);
        }
        Some(out)
    }

    pub fn mu_walk(&self, v: Vertex, count: usize) -> Option<Vec<Arrow>> {
        let mut at = v;
        let mut out = Vec::with_capacity(count);
        for _ in 0..count {
            let a = self.mu_from(at)?;
            at = self.target(a)?;
            out.push(a);
        }
        Some(out)
    }

    /// All non-zero normal paths `source → target`: a λ-walk followed by a μ-walk.
    pub fn normal_paths(&self, source: Vertex, target: Vertex) -> Result<Vec<FormalPath>> {
        for v in [source, target] {
            if !self.contains(v) {
                return Err(Error::HorizonExceeded { needed: v.j, horizon: self.horizon });
            }
        }
        let mut out = Vec::new();
        let mut at = source;
        let mut lambdas = Vec::new();
        loop {
            if at.i == target.i && at.k == target.k && target.j >= at.j {
                if let Some(mus) = self.mu_walk(at, target.j - at.j) {
                    let mut arrows = lambdas.clone();
                    arrows.extend(mus);
                    out.push(FormalPath { coeff: 1, start: source, arrows });
                }
            }
            match self.lambda_from(at) {
                Some(a) => {
                    lambdas.push(a);
                    at = self.target(a).expect("lambda_from returns arrows inside the horizon");
                }
                None => break,
            }
        }
        Ok(out)
    }

    /// Dimension of the space of paths `source → target` modulo mesh relations.
    pub fn hom_dimension(&self, source: Vertex, target: Vertex) -> Result<usize> {
        Ok(self.normal_paths(source, target)?.len())
    }

    /// For a non-zero normal path `S_i^k[j] → S_i^k[l]` with `l ≥ j`: the exponent `p` when it has
    /// the shape `μ[j-pm → l] ∘ λ[j → j-pm]` with `j > pm`.
    pub fn ray_shape(&self, p: &FormalPath) -> Option<usize> {
        let end = p.end(self);
        let s = p.start;
        if (s.i, s.k) != (end.i, end.k) || end.j < s.j {
            return None;
        }
        let nl = p.arrows.iter().take_while(|a| !a.is_mu()).count();
        if p.arrows[nl..].iter().any(|a| !a.is_mu()) || nl % self.cycle_length() != 0 {
            return None;
        }
        let pw = nl / self.cycle_length();
        (s.j > pw * self.m && p.arrows.len() - nl == end.j - s.j + pw * self.m).then_some(pw)
    }

    /// For a non-zero normal path `S_i^k[1+(γ+1)m] → S_i^k[1+γm]`: the exponent `p` when it has
    /// the shape `φ^p ∘ λ[1+(γ+1)m → 1+γm]` with `p ≤ γ+1`.
    pub fn coray_shape(&self, p: &FormalPath) -> Option<usize> {
        let end = p.end(self);
        let s = p.start;
        let m = self.m;
        if (s.i, s.k) != (end.i, end.k) || s.j != end.j + m || !(end.j - 1).is_multiple_of(m) {
            return None;
        }
        let gamma = (end.j - 1) / m;
        let nl = p.arrows.iter().take_while(|a| !a.is_mu()).count();
        if p.arrows[nl..].iter().any(|a| !a.is_mu()) || nl % self.cycle_length() != 0 || nl == 0 {
            return None;
        }
        let pw = nl / self.cycle_length() - 1;
        (pw <= gamma + 1 && p.arrows.len() - nl == pw * m).then_some(pw)
    }

    /// The generalized ray tube assembled from this quiver, for a tower of the given height.
    pub fn generalized_tube(&self, height: usize) -> Result<SymbolicTube> {
        if let Some(&n) = self.rays.iter().max() {
            if n > height {
                return Err(Error::InvalidParameter(format!("ray length {n} exceeds the height {height}")));
            }
        }
        Ok(SymbolicTube { quiver: self.clone(), height })
    }
}

/// A composable arrow sequence with a scalar coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalPath {
    pub coeff: i64,
    pub start: Vertex,
    pub arrows: Vec<Arrow>,
}

impl FormalPath {
    pub fn identity(v: Vertex) -> Self {
        FormalPath { coeff: 1, start: v, arrows: Vec::new() }
    }

    pub fn from_arrows(q: &TranslationQuiver, arrows: Vec<Arrow>) -> Result<Self> {
        let start = arrows.first().ok_or_else(|| Error::NotComposable("empty arrow list has no start".into()))?.source();
        let p = FormalPath { coeff: 1, start, arrows };
        q.check_path(&p)?;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &TranslationQuiver) -> Vertex {
        self.arrows.last().map_or(self.start, |a| q.target(*a).expect("path was checked"))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FormalPath) -> FormalPath {
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().copied());
        FormalPath { coeff: self.coeff * other.coeff, start: self.start, arrows }
    }
}

impl fmt::Display for FormalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != 1 {
            write!(f, "{}*", self.coeff)?;
        }
        if self.arrows.is_empty() {
            return write!(f, "id_{}", self.start);
        }
        let names: Vec<String> = self.arrows.iter().rev().map(|a| format!("{a}")).collect();
        f.write_str(&names.join(" o "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalPath {
    Zero,
    Path(FormalPath),
}

impl NormalPath {
    pub fn is_zero(&self) -> bool {
        matches!(self, NormalPath::Zero)
    }

    /// Lengths of the λ and μ segments.
    pub fn segments(&self) -> Option<(usize, usize)> {
        match self {
            NormalPath::Zero => None,
            NormalPath::Path(p) => {
                let nl = p.arrows.iter().take_while(|a| !a.is_mu()).count();
                Some((nl, p.arrows.len() - nl))
            }
        }
    }
}

impl fmt::Display for NormalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalPath::Zero => f.write_str("ZERO"),
            NormalPath::Path(p) => write!(f, "{p}"),
        }
    }
}

/// A formal linear combination of normal paths with shared endpoints, keyed by arrow word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathSum {
    terms: BTreeMap<(Vertex, Vec<Arrow>), i64>,
}

impl PathSum {
    pub fn zero() -> Self {
        PathSum::default()
    }

    pub fn single(q: &TranslationQuiver, p: &FormalPath) -> Result<Self> {
        let mut s = PathSum::zero();
        s.add_path(q, p)?;
        Ok(s)
    }

    pub fn add_path(&mut self, q: &TranslationQuiver, p: &FormalPath) -> Result<()> {
        if let NormalPath::Path(n) = q.normalize(p)? {
            *self.terms.entry((n.start, n.arrows)).or_insert(0) += n.coeff;
            self.terms.retain(|_, c| *c != 0);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> Vec<FormalPath> {
        self.terms.iter().map(|((s, w), &c)| FormalPath { coeff: c, start: *s, arrows: w.clone() }).collect()
    }

    /// `other ∘ self`.
    pub fn then(&self, q: &TranslationQuiver, other: &PathSum) -> Result<PathSum> {
        let mut out = PathSum::zero();
        for a in self.terms() {
            for b in other.terms() {
                if a.end(q) == b.start {
                    out.add_path(q, &a.then(&b))?;
                }
            }
        }
        Ok(out)
    }

    pub fn plus(&self, q: &TranslationQuiver, other: &PathSum) -> Result<PathSum> {
        let mut out = self.clone();
        for t in other.terms() {
            out.add_path(q, &t)?;
        }
        Ok(out)
    }
}

impl fmt::Display for PathSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().iter().map(|p| format!("{p}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A map between direct sums of vertices; `entries[r][c]` maps `cols[c]` to `rows[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathMatrix {
    pub rows: Vec<Vertex>,
    pub cols: Vec<Vertex>,
    pub entries: Vec<Vec<PathSum>>,
}

impl PathMatrix {
    pub fn zero(rows: Vec<Vertex>, cols: Vec<Vertex>) -> Self {
        let entries = vec![vec![PathSum::zero(); cols.len()]; rows.len()];
        PathMatrix { rows, cols, entries }
    }

    /// `self ∘ other`.
    pub fn compose(&self, q: &TranslationQuiver, other: &PathMatrix) -> Result<PathMatrix> {
        if self.cols != other.rows {
            return Err(Error::NotComposable("inner direct sums differ".into()));
        }
        let mut out = PathMatrix::zero(self.rows.clone(), other.cols.clone());
        for r in 0..self.rows.len() {
            for c in 0..other.cols.len() {
                let mut acc = PathSum::zero();
                for k in 0..self.cols.len() {
                    acc = acc.plus(q, &other.entries[k][c].then(q, &self.entries[r][k])?)?;
                }
                out.entries[r][c] = acc;
            }
        }
        Ok(out)
    }
}

/// The symbolic generalized ray tube: `M_j = ⊕_i S_i^0[j]`, `P^l_j = ⊕_i S_i^{min(l, n_i)}[j]`.
#[derive(Clone, Debug)]
pub struct SymbolicTube {
    pub quiver: TranslationQuiver,
    pub height: usize,
}

impl SymbolicTube {
    fn check_stage(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.quiver.horizon {
            return Err(Error::HorizonExceeded { needed: j, horizon: self.quiver.horizon });
        }
        Ok(())
    }

    pub fn m_obj(&self, j: usize) -> Result<Vec<Vertex>> {
        if j == 0 {
            return Ok(Vec::new());
        }
        self.check_stage(j)?;
        Ok((0..self.quiver.m).map(|i| Vertex { i, k: 0, j }).collect())
    }

    pub fn p_obj(&self, l: usize, j: usize) -> Result<Vec<Vertex>> {
        self.check_stage(j)?;
        if l == 0 {
            return self.m_obj(j);
        }
        Ok((0..self.quiver.m).map(|i| Vertex { i, k: l.min(self.quiver.rays[i]), j }).collect())
    }

    fn arrow_sum(&self, arrows: Vec<Arrow>, start: Vertex) -> Result<PathSum> {
        PathSum::single(&self.quiver, &FormalPath { coeff: 1, start, arrows })
    }

    fn diagonal(&self, rows: Vec<Vertex>, cols: Vec<Vertex>, f: impl Fn(Vertex) -> Option<Arrow>) -> Result<PathMatrix> {
        let mut out = PathMatrix::zero(rows, cols.clone());
        for (c, &v) in cols.iter().enumerate() {
            let arrows: Vec<Arrow> = f(v).into_iter().collect();
            out.entries[c][c] = self.arrow_sum(arrows, v)?;
        }
        Ok(out)
    }

    /// `ψ_j: M_j → M_{j+1}`, diagonal in `μ_i^0[j]`.
    pub fn psi(&self, j: usize) -> Result<PathMatrix> {
        let q = &self.quiver;
        self.diagonal(self.m_obj(j + 1)?, self.m_obj(j)?, |v| q.mu_from(v))
    }

    /// `ψ̄^l_j: P^l_j → P^l_{j+1}`.
    pub fn psi_bar(&self, l: usize, j: usize) -> Result<PathMatrix> {
        let q = &self.quiver;
        self.diagonal(self.p_obj(l, j + 1)?, self.p_obj(l, j)?, |v| q.mu_from(v))
    }

    /// `α^l_j: P^{l-1}_j → P^l_j`: `λ_i^{l-1}[j]` on rays with `n_i ≥ l`, identity otherwise.
    pub fn alpha(&self, l: usize, j: usize) -> Result<PathMatrix> {
        let q = &self.quiver;
        self.diagonal(self.p_obj(l, j)?, self.p_obj(l - 1, j)?, |v| (l <= q.rays[v.i]).then(|| q.lambda_from(v)).flatten())
    }

    /// `φ_j: M_{j+1} → M_j`, with `λ_i^{n_i}[j+1]∘…∘λ_i^0[j+1]` in entry `(i+1, i)`.
    pub fn phi(&self, j: usize) -> Result<PathMatrix> {
        let q = &self.quiver;
        let mut out = PathMatrix::zero(self.m_obj(j)?, self.m_obj(j + 1)?);
        if j == 0 {
            return Ok(out);
        }
        for i in 0..q.m {
            let v = Vertex { i, k: 0, j: j + 1 };
            let chain = q.lambda_walk(v, q.rays[i] + 1).ok_or(Error::HorizonExceeded { needed: j + 1, horizon: q.horizon })?;
            out.entries[(i + 1) % q.m][i] = self.arrow_sum(chain, v)?;
        }
        Ok(out)
    }

    /// `f_j: P^n_{j+1} → M_j`, finishing the λ-chains: `f_j ∘ α^n_{j+1} ∘ … ∘ α^1_{j+1} = φ_j`.
    pub fn f(&self, j: usize) -> Result<PathMatrix> {
        let q = &self.quiver;
        let n = self.height;
        let cols = self.p_obj(n, j + 1)?;
        let mut out = PathMatrix::zero(self.m_obj(j)?, cols.clone());
        if j == 0 {
            return Ok(out);
        }
        for (i, &v) in cols.iter().enumerate() {
            let chain = q.lambda_walk(v, q.rays[i] + 1 - v.k).ok_or(Error::HorizonExceeded { needed: j + 1, horizon: q.horizon })?;
            out.entries[(i + 1) % q.m][i] = self.arrow_sum(chain, v)?;
        }
        Ok(out)
    }

    /// The composite `α^l_j ∘ … ∘ α^1_j: M_j → P^l_j`.
    pub fn alpha_chain(&self, l: usize, j: usize) -> Result<PathMatrix> {
        let mut acc = self.alpha(1, j)?;
        for s in 2..=l {
            acc = self.alpha(s, j)?.compose(&self.quiver, &acc)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(m: usize, rays: &[usize], h: usize) -> TranslationQuiver {
        TranslationQuiver::new(m, rays, h).unwrap()
    }

    #[test]
    fn homogeneous_tube_shape() {
        let t = q(1, &[0], 5);
        assert_eq!(t.vertices().len(), 5);
        for a in t.arrows() {
            assert_eq!(a.source().k, 0);
        }
        // 4 μ's and 4 λ's
        assert_eq!(t.arrows().len(), 8);
    }

    #[test]
    fn layer_counts_and_boundary_targets() {
        let t = q(2, &[1, 0], 4);
        for j in 1..=4 {
            assert_eq!(t.vertices().iter().filter(|v| v.j == j).count(), 3);
        }
        assert_eq!(t.target(Arrow::Lambda { i: 0, k: 1, j: 3 }), Some(Vertex { i: 1, k: 0, j: 2 }));
        assert_eq!(t.target(Arrow::Lambda { i: 1, k: 0, j: 3 }), Some(Vertex { i: 0, k: 0, j: 2 }));
        assert_eq!(t.target(Arrow::Lambda { i: 0, k: 1, j: 1 }), None);
    }

    #[test]
    fn mesh_rules() {
        let t = q(2, &[1, 0], 5);
        let zero = FormalPath::from_arrows(&t, vec![Arrow::Mu { i: 0, k: 1, j: 1 }, Arrow::Lambda { i: 0, k: 1, j: 2 }]).unwrap();
        assert_eq!(t.normalize(&zero).unwrap(), NormalPath::Zero);
        let comm = FormalPath::from_arrows(&t, vec![Arrow::Mu { i: 0, k: 0, j: 2 }, Arrow::Lambda { i: 0, k: 0, j: 3 }]).unwrap();
        let want = FormalPath::from_arrows(&t, vec![Arrow::Lambda { i: 0, k: 0, j: 2 }, Arrow::Mu { i: 0, k: 1, j: 2 }]).unwrap();
        assert_eq!(t.normalize(&comm).unwrap(), NormalPath::Path(want));
        let id = FormalPath::identity(Vertex { i: 1, k: 0, j: 3 });
        assert_eq!(t.normalize(&id).unwrap(), NormalPath::Path(id.clone()));
    }

    #[test]
    fn hom_dimensions_along_a_ray() {
        for m in 1..=3 {
            let t = q(m, &vec![1; m], 6);
            for j in 1..=6 {
                for l in j..=6 {
                    let s = Vertex { i: 0, k: 1, j };
                    let e = Vertex { i: 0, k: 1, j: l };
                    assert_eq!(t.hom_dimension(s, e).unwrap(), (j - 1) / m + 1);
                }
            }
        }
        let t = q(2, &[1, 0], 4);
        assert_eq!(t.hom_dimension(Vertex { i: 0, k: 1, j: 1 }, Vertex { i: 1, k: 0, j: 1 }).unwrap(), 0);
        assert_eq!(t.hom_dimension(Vertex { i: 0, k: 1, j: 2 }, Vertex { i: 1, k: 0, j: 1 }).unwrap(), 1);
    }

    #[test]
    fn phi_commutes_with_psi() {
        let t = q(2, &[1, 0], 5);
        let g = t.generalized_tube(1).unwrap();
        for j in 1..4 {
            let lhs = g.phi(j).unwrap().compose(&t, &g.psi(j).unwrap()).unwrap();
            let rhs = g.psi(j - 1).map_or_else(|_| Ok(PathMatrix::zero(lhs.rows.clone(), lhs.cols.clone())), |p| p.compose(&t, &g.phi(j - 1).unwrap())).unwrap();
            assert_eq!(lhs, rhs);
            let f = g.f(j).unwrap().compose(&t, &g.alpha_chain(1, j + 1).unwrap()).unwrap();
            assert_eq!(f, g.phi(j).unwrap());
        }
    }

    fn small_tubes() -> Vec<TranslationQuiver> {
        let mut out = Vec::new();
        for m in 1..=3usize {
            let mut rays = vec![0usize; m];
            loop {
                out.push(q(m, &rays, 6));
                let mut p = 0;
                while p < m && rays[p] == 2 {
                    rays[p] = 0;
                    p += 1;
                }
                if p == m {
                    break;
                }
                rays[p] += 1;
            }
        }
        out
    }

    #[test]
    fn rewriting_is_confluent_on_short_paths() {
        for t in small_tubes() {
            for p in t.paths_up_to(8) {
                let forms = t.all_normal_forms(&p).unwrap();
                assert_eq!(forms.len(), 1, "{p} in {:?}", t.rays());
                assert_eq!(forms.into_iter().next().unwrap(), t.normalize(&p).unwrap());
            }
        }
    }

    #[test]
    fn normal_paths_have_ray_and_coray_shapes() {
        for t in small_tubes() {
            for s in t.vertices() {
                for e in t.vertices().into_iter().filter(|e| (e.i, e.k) == (s.i, s.k)) {
                    for p in t.normal_paths(s, e).unwrap() {
                        if e.j >= s.j {
                            assert!(t.ray_shape(&p).is_some(), "{p}");
                        }
                        if s.j == e.j + t.rank() && (e.j - 1) % t.rank() == 0 {
                            let pw = t.coray_shape(&p).expect("coray shape");
                            assert!(pw <= (e.j - 1) / t.rank());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hom_dimension_matches_enumerated_paths() {
        let t = q(2, &[1, 0], 4);
        let mut reached: BTreeMap<(Vertex, Vertex), BTreeSet<Vec<Arrow>>> = BTreeMap::new();
        for p in t.paths_up_to(12) {
            if let NormalPath::Path(n) = t.normalize(&p).unwrap() {
                reached.entry((p.start, p.end(&t))).or_default().insert(n.arrows);
            }
        }
        for s in t.vertices() {
            for e in t.vertices() {
                let got = reached.get(&(s, e)).map_or(0, |x| x.len());
                assert_eq!(t.hom_dimension(s, e).unwrap(), got, "{s} -> {e}");
            }
        }
    }

    #[test]
    fn powers_of_phi_normalize_to_one_lambda_run() {
        for t in small_tubes() {
            let (m, c) = (t.rank(), t.cycle_length());
            for v in t.vertices() {
                let mut n = 1;
                while n * m < v.j {
                    let mut p = FormalPath::identity(v);
                    for _ in 0..n {
                        let at = p.end(&t);
                        let mut step = t.lambda_walk(at, c).unwrap();
                        step.extend(t.mu_walk(t.target(*step.last().unwrap()).unwrap(), m).unwrap());
                        p.arrows.extend(step);
                    }
                    let mut want = t.lambda_walk(v, n * c).unwrap();
                    let low = t.target(*want.last().unwrap()).unwrap();
                    want.extend(t.mu_walk(low, n * m).unwrap());
                    assert_eq!(t.normalize(&p).unwrap(), NormalPath::Path(FormalPath { coeff: 1, start: v, arrows: want }));
                    n += 1;
                }
            }
        }
    }

    #[test]
    fn boundary_relation_with_shifted_index_is_ill_typed() {
        // λ^{n_i}[j+1]∘μ^{n_i}[j] ends at S(i+1,0,j); μ_{i+1}^0[j]∘λ^{n_i}[j+2] ends at S(i+1,0,j+2)
        let t = q(2, &[1, 0], 6);
        let j = 2;
        let lhs = FormalPath::from_arrows(&t, vec![Arrow::Mu { i: 0, k: 1, j }, Arrow::Lambda { i: 0, k: 1, j: j + 1 }]).unwrap();
        let rhs = FormalPath::from_arrows(&t, vec![Arrow::Lambda { i: 0, k: 1, j: j + 2 }, Arrow::Mu { i: 1, k: 0, j: j + 1 }]).unwrap();
        assert_ne!(lhs.start, rhs.start);
        assert_ne!(lhs.end(&t), rhs.end(&t));
        let typed = FormalPath::from_arrows(&t, vec![Arrow::Lambda { i: 0, k: 1, j }, Arrow::Mu { i: 1, k: 0, j: j - 1 }]).unwrap();
        assert_eq!(t.normalize(&lhs).unwrap(), NormalPath::Path(typed));
    }
}
