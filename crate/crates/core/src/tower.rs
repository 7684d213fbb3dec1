//! Iterated one-point extensions `R_{q+1} = [[R_q, 0], [L_q, k]]` of the truncated ring
//! `k[t]/(t^N)`, modules as triples `(M_0, M_1, Γ)`, the functors `F_0`, `F_1`, `r`, and the
//! classification of indecomposable modules by labels `F0^a F1^b Ind(j)` / `F0^a F1^b T(m)`.
//!
//! Flattened modules over `R_{q+1}` use the basis `M_1` first, then `M_0`. The basis of
//! `R_{q+1}` is the basis of `R_q`, then `L_q`, then the corner idempotent `e{q+1}`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::algebra::{truncated_dvr, AlgElem, Algebra};
use crate::decompose::{decompose, indecomposables_isomorphic};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vecops, Matrix};
use crate::module::{Module, Side};

/// The rings `R_0..R_n` and bimodules `L_0..L_n` (`L_q` a right `R_q`-module).
#[derive(Clone, Debug)]
pub struct Tower<F: Field> {
    field: F,
    horizon: usize,
    height: usize,
    rings: Vec<Arc<Algebra<F>>>,
    bimodules: Vec<Module<F>>,
}

/// A module over `R_q` (`q ≥ 1`) in triple form, with `Γ` stored as one hom `L_{q-1} → M_1`
/// per basis vector of `M_0`.
#[derive(Clone, Debug)]
pub struct Triple<F: Field> {
    pub level: usize,
    pub m0: usize,
    pub m1: Module<F>,
    pub gamma: Vec<Matrix<F>>,
}

impl<F: Field> Tower<F> {
    pub fn new(horizon: usize, height: usize, field: F) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidParameter("horizon N must be at least 1".into()));
        }
        let mut r0 = truncated_dvr(horizon, field)?;
        let labels = (0..horizon)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            })
            .collect();
        r0.relabel(labels)?;
        let r0 = Arc::new(r0);
        let l0 = Module::new(r0.clone(), Side::Right, 1, (0..horizon).map(|i| {
            Matrix::scalar(field, 1, &if i == 0 { field.one() } else { field.zero() })
        }).collect())?;
        let mut tower = Tower { field, horizon, height: 0, rings: vec![r0], bimodules: vec![l0] };
        for q in 0..height {
            let next = Arc::new(tower.extend_ring(q)?);
            tower.rings.push(next);
            tower.height = q + 1;
            let lq = tower.bimodules[q].clone();
            let l_next = tower.flatten(&Triple { level: q + 1, m0: 1, m1: lq.clone(), gamma: vec![Matrix::identity(field, lq.dim())] })?;
            tower.bimodules.push(l_next);
        }
        for q in 0..=height {
            let expect = horizon + q * (q + 3) / 2;
            if tower.rings[q].dim() != expect {
                return Err(Error::StructureViolation(format!("dim R_{q} = {} but expected {expect}", tower.rings[q].dim())));
            }
            if tower.bimodules[q].dim() != q + 1 {
                return Err(Error::StructureViolation(format!("dim L_{q} = {}", tower.bimodules[q].dim())));
            }
        }
        Ok(tower)
    }

    fn extend_ring(&self, q: usize) -> Result<Algebra<F>> {
        let f = self.field;
        let r = &self.rings[q];
        let l = &self.bimodules[q];
        let (d, h) = (r.dim(), l.dim());
        let n = d + h + 1;
        let zero = vecops::zero(f, n);
        let mut mult = vec![vec![zero.clone(); n]; n];
        for a in 0..d {
            for b in 0..d {
                let mut v = zero.clone();
                v[..d].clone_from_slice(r.product_of_basis(a, b));
                mult[a][b] = v;
            }
        }
        for a in 0..h {
            for b in 0..d {
                let col = l.action(b).col(a);
                let mut v = zero.clone();
                v[d..d + h].clone_from_slice(&col);
                mult[d + a][b] = v;
            }
            mult[n - 1][d + a] = vecops::unit(f, n, d + a);
        }
        mult[n - 1][n - 1] = vecops::unit(f, n, n - 1);
        let mut unit = zero.clone();
        unit[..d].clone_from_slice(r.unit());
        unit[n - 1] = f.one();
        let mut labels: Vec<String> = r.labels().to_vec();
        if q == 0 {
            labels[0] = "c".into();
        }
        labels.extend((0..h).map(|i| format!("l{q}_{i}")));
        labels.push(format!("e{}", q + 1));
        let mut alg = Algebra::new(f, labels, mult, unit)?;
        let embed = |x: &AlgElem<F>| {
            let mut v = zero.clone();
            v[..d].clone_from_slice(x);
            v
        };
        let mut idem: Vec<AlgElem<F>> = if q == 0 {
            vec![vecops::unit(f, n, 0)]
        } else {
            r.idempotents().iter().map(embed).collect()
        };
        idem.push(vecops::unit(f, n, n - 1));
        alg.set_idempotents(idem)?;
        Ok(alg)
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn height(&self) -> usize {
        self.height
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level > self.height {
            return Err(Error::LevelOutOfRange { level, max: self.height });
        }
        Ok(())
    }

    pub fn ring(&self, level: usize) -> Result<&Arc<Algebra<F>>> {
        self.check_level(level)?;
        Ok(&self.rings[level])
    }

    /// `L_level` as a right `R_level`-module.
    pub fn bimodule(&self, level: usize) -> Result<&Module<F>> {
        self.check_level(level)?;
        Ok(&self.bimodules[level])
    }

    /// `c_q, e_1^q, …, e_q^q` for `q ≥ 1`.
    pub fn idempotents(&self, level: usize) -> Result<Vec<AlgElem<F>>> {
        Ok(self.ring(level)?.idempotents().to_vec())
    }

    /// `V/m^j` over `R_0`.
    pub fn ind(&self, j: usize) -> Result<Module<F>> {
        if j == 0 || j > self.horizon {
            return Err(Error::InvalidParameter(format!("Ind({j}) needs 1 ≤ j ≤ N = {}", self.horizon)));
        }
        Ok(uniserial(self.rings[0].clone(), j))
    }

    /// `T_q = (k, 0, 0)` over `R_q`, `q ≥ 1`.
    pub fn simple_top(&self, level: usize) -> Result<Module<F>> {
        self.check_level(level)?;
        if level == 0 {
            return Err(Error::InvalidParameter("T(0) is identified with Ind(1)".into()));
        }
        self.flatten(&Triple { level, m0: 1, m1: Module::zero(self.rings[level - 1].clone(), Side::Right), gamma: vec![Matrix::zeros(self.field, 0, level)] })
    }

    /// The module over `R_level` with the given triple data.
    pub fn flatten(&self, t: &Triple<F>) -> Result<Module<F>> {
        let f = self.field;
        let q = t.level;
        if q == 0 || q >= self.rings.len() {
            return Err(Error::LevelOutOfRange { level: q, max: self.height });
        }
        let ring = self.rings[q].clone();
        let lower = &self.rings[q - 1];
        let l = &self.bimodules[q - 1];
        if !Arc::ptr_eq(t.m1.algebra(), lower) && !t.m1.algebra().same_as(lower) {
            return Err(Error::AlgebraMismatch);
        }
        if t.gamma.len() != t.m0 {
            return Err(Error::DimensionMismatch { expected: t.m0, found: t.gamma.len() });
        }
        for g in &t.gamma {
            if g.rows() != t.m1.dim() || g.cols() != l.dim() || !l.is_hom_to(&t.m1, g) {
                return Err(Error::StructureViolation("Γ must take values in Hom(L, M_1)".into()));
            }
        }
        let (d1, d0) = (t.m1.dim(), t.m0);
        let n = d1 + d0;
        let (d, h) = (lower.dim(), l.dim());
        let mut actions = Vec::with_capacity(d + h + 1);
        for b in 0..d {
            let mut a = Matrix::zeros(f, n, n);
            a.paste(0, 0, t.m1.action(b));
            actions.push(a);
        }
        for i in 0..h {
            let mut a = Matrix::zeros(f, n, n);
            for (j, g) in t.gamma.iter().enumerate() {
                for r in 0..d1 {
                    a.set(r, d1 + j, g.get(r, i).clone());
                }
            }
            actions.push(a);
        }
        let mut e = Matrix::zeros(f, n, n);
        e.paste(d1, d1, &Matrix::identity(f, d0));
        actions.push(e);
        Module::new(ring, Side::Right, n, actions)
    }

    /// Splits a module over `R_level` (`level ≥ 1`) into triple form; also returns the change of
    /// basis `P` with columns `[M_1 basis | M_0 basis]`.
    pub fn split(&self, level: usize, m: &Module<F>) -> Result<(Triple<F>, Matrix<F>)> {
        self.check_level(level)?;
        if level == 0 {
            return Err(Error::InvalidParameter("modules over R_0 have no triple form".into()));
        }
        let ring = &self.rings[level];
        if !m.algebra().same_as(ring) {
            return Err(Error::AlgebraMismatch);
        }
        let f = self.field;
        let nb = ring.dim();
        let e = m.action(nb - 1);
        let b0 = e.image().basis_vectors();
        let b1 = e.kernel().basis_vectors();
        let mut cols = b1.clone();
        cols.extend(b0.iter().cloned());
        let p = Matrix::from_cols(f, m.dim(), &cols)?;
        let pinv = p.inverse().ok_or_else(|| Error::StructureViolation("corner idempotent does not split".into()))?;
        let (d1, d0) = (b1.len(), b0.len());
        let lower = &self.rings[level - 1];
        let l = &self.bimodules[level - 1];
        let conj = |a: &Matrix<F>| pinv.mul(a).mul(&p);
        let m1_actions: Vec<Matrix<F>> = (0..lower.dim()).map(|b| conj(m.action(b)).submatrix(0, d1, 0, d1)).collect();
        let m1 = Module::new(lower.clone(), Side::Right, d1, m1_actions)?;
        let lmats: Vec<Matrix<F>> = (0..l.dim()).map(|i| conj(m.action(lower.dim() + i))).collect();
        let gamma = (0..d0)
            .map(|j| {
                let cols: Vec<Vec<F::Elem>> = lmats.iter().map(|a| a.submatrix(0, d1, d1 + j, 1).col(0)).collect();
                Matrix::from_cols(f, d1, &cols)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((Triple { level, m0: d0, m1, gamma }, p))
    }

    /// `r(M) = M_1`.
    pub fn forget(&self, level: usize, m: &Module<F>) -> Result<Module<F>> {
        Ok(self.split(level, m)?.0.m1)
    }

    /// `F_0 X = (0, X, 0)` for `X` over `R_level`.
    pub fn f0(&self, level: usize, x: &Module<F>) -> Result<Module<F>> {
        self.check_level(level + 1)?;
        self.flatten(&Triple { level: level + 1, m0: 0, m1: x.clone(), gamma: Vec::new() })
    }

    /// `F_1 X = (Hom(L, X), X, Id)`.
    pub fn f1(&self, level: usize, x: &Module<F>) -> Result<Module<F>> {
        self.check_level(level + 1)?;
        let homs = self.bimodules[level].hom_space(x)?;
        self.flatten(&Triple { level: level + 1, m0: homs.len(), m1: x.clone(), gamma: homs })
    }

    /// `F_0 g` for `g: X → Y`.
    pub fn f0_map(&self, g: &Matrix<F>) -> Matrix<F> {
        g.clone()
    }

    /// `F_1 g` for `g: X → Y` over `R_level`: `g` on `M_1`, `h ↦ g∘h` on `Hom(L, −)`.
    pub fn f1_map(&self, level: usize, x: &Module<F>, y: &Module<F>, g: &Matrix<F>) -> Result<Matrix<F>> {
        self.check_level(level + 1)?;
        let l = &self.bimodules[level];
        let hx = l.hom_space(x)?;
        let hy = l.hom_space(y)?;
        let f = self.field;
        let flat: Vec<Vec<F::Elem>> = hy.iter().map(|h| h.to_flat()).collect();
        let basis = Matrix::from_cols(f, y.dim() * l.dim(), &flat)?;
        let mut out = Matrix::zeros(f, y.dim() + hy.len(), x.dim() + hx.len());
        out.paste(0, 0, g);
        for (j, h) in hx.iter().enumerate() {
            let img = g.mul(h).to_flat();
            let c = if hy.is_empty() {
                if vecops::is_zero(f, &img) { Vec::new() } else { return Err(Error::NotExpressible) }
            } else {
                basis.solve(&img).ok_or(Error::NotExpressible)?
            };
            for (i, v) in c.into_iter().enumerate() {
                out.set(y.dim() + i, x.dim() + j, v);
            }
        }
        Ok(out)
    }

    /// The natural embedding `F_0 X → F_1 X`, `(0, id)`.
    pub fn natural_embedding(&self, level: usize, x: &Module<F>) -> Result<Matrix<F>> {
        self.check_level(level + 1)?;
        let h = self.bimodules[level].hom_dim(x)?;
        let f = self.field;
        let mut m = Matrix::zeros(f, x.dim() + h, x.dim());
        m.paste(0, 0, &Matrix::identity(f, x.dim()));
        Ok(m)
    }

    /// The map `F_1 X → F_0 Y` given by `(0, g)`; needs `g∘h = 0` for every `h: L → X`.
    pub fn collapse_map(&self, level: usize, x: &Module<F>, g: &Matrix<F>) -> Result<Matrix<F>> {
        self.check_level(level + 1)?;
        let homs = self.bimodules[level].hom_space(x)?;
        if homs.iter().any(|h| !g.mul(h).is_zero()) {
            return Err(Error::StructureViolation("(0, g) is not a map F_1 X → F_0 Y".into()));
        }
        let mut m = Matrix::zeros(self.field, g.rows(), x.dim() + homs.len());
        m.paste(0, 0, g);
        Ok(m)
    }

    pub fn build_label(&self, label: &FpLabel) -> Result<Module<F>> {
        let label = label.canonical();
        if label.level() > self.height {
            return Err(Error::LevelOutOfRange { level: label.level(), max: self.height });
        }
        let (mut x, mut level) = match label.seed {
            Seed::Ind(j) => (self.ind(j)?, 0),
            Seed::T(m) => (self.simple_top(m)?, m),
        };
        for _ in 0..label.f1 {
            x = self.f1(level, &x)?;
            level += 1;
        }
        for _ in 0..label.f0 {
            x = self.f0(level, &x)?;
            level += 1;
        }
        Ok(x)
    }

    /// Canonical labels at `level` whose modules have dimension at most `dim_cap`.
    pub fn labels(&self, level: usize, dim_cap: usize) -> Result<Vec<FpLabel>> {
        self.check_level(level)?;
        let mut out = Vec::new();
        for b in 0..=level {
            let a = level - b;
            for j in 1..=self.horizon {
                if j + b <= dim_cap {
                    out.push(FpLabel { f0: a, f1: b, seed: Seed::Ind(j) });
                }
            }
        }
        for m in 1..=level {
            for b in 0..=level - m {
                if b < dim_cap {
                    out.push(FpLabel { f0: level - m - b, f1: b, seed: Seed::T(m) });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Decomposes `m` (over `R_level`) and names every indecomposable summand.
    pub fn classify(&self, level: usize, m: &Module<F>) -> Result<Vec<(FpLabel, usize)>> {
        self.check_level(level)?;
        if !m.algebra().same_as(&self.rings[level]) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out: Vec<(FpLabel, usize)> = Vec::new();
        for (summand, mult) in decompose(m)?.multiplicities() {
            let label = self.identify(level, &summand)?;
            let built = self.build_label(&label)?;
            if !indecomposables_isomorphic(&built, &summand)? {
                return Err(Error::Unclassified(format!("summand of dim {} resembles {label} but is not isomorphic to it", summand.dim())));
            }
            match out.iter_mut().find(|(l, _)| *l == label) {
                Some((_, c)) => *c += mult,
                None => out.push((label, mult)),
            }
        }
        out.sort();
        Ok(out)
    }

    /// Reads off a label for an indecomposable module without certifying it.
    fn identify(&self, level: usize, x: &Module<F>) -> Result<FpLabel> {
        if level == 0 {
            if x.dim() == 0 || x.dim() > self.horizon {
                return Err(Error::Unclassified(format!("R_0-module of dim {}", x.dim())));
            }
            return Ok(FpLabel { f0: 0, f1: 0, seed: Seed::Ind(x.dim()) });
        }
        let (t, _) = self.split(level, x)?;
        if t.m1.dim() == 0 {
            if t.m0 == 1 {
                return Ok(FpLabel { f0: 0, f1: 0, seed: Seed::T(level) });
            }
            return Err(Error::Unclassified(format!("({}, 0, 0) at level {level}", t.m0)));
        }
        let inner = self.identify(level - 1, &t.m1)?;
        if t.m0 == 0 {
            return Ok(FpLabel { f0: inner.f0 + 1, ..inner });
        }
        let flat: Vec<Vec<F::Elem>> = t.gamma.iter().map(|g| g.to_flat()).collect();
        let rank = Matrix::from_rows(self.field, t.m1.dim() * self.bimodules[level - 1].dim(), &flat)?.rank();
        if t.m0 != 1 || rank != 1 {
            return Err(Error::Unclassified(format!("Γ of rank {rank} on M_0 of dim {} at level {level}", t.m0)));
        }
        Ok(if inner.f0 > 0 { FpLabel { f0: inner.f0 + 1, ..inner } } else { FpLabel { f1: inner.f1 + 1, ..inner } })
    }

    /// `dim Hom(L_n, X) ≤ 1` for every label at the top level with `dim X ≤ dim_cap`.
    pub fn verify_hom_bounds(&self, dim_cap: usize) -> Result<HomBoundsReport> {
        let l = &self.bimodules[self.height];
        let mut checks = Vec::new();
        for label in self.labels(self.height, dim_cap)? {
            let x = self.build_label(&label)?;
            checks.push((label, l.hom_dim(&x)?));
        }
        Ok(HomBoundsReport { horizon: self.horizon, height: self.height, dim_cap, checks })
    }

    /// Pairs of distinct canonical labels at `level` whose modules are isomorphic.
    pub fn label_coincidences(&self, level: usize, dim_cap: usize) -> Result<Vec<(FpLabel, FpLabel)>> {
        let labels = self.labels(level, dim_cap)?;
        let mods: Vec<Module<F>> = labels.iter().map(|l| self.build_label(l)).collect::<Result<_>>()?;
        let mut out = Vec::new();
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if mods[i].dim() == mods[j].dim() && indecomposables_isomorphic(&mods[i], &mods[j])? {
                    out.push((labels[i], labels[j]));
                }
            }
        }
        Ok(out)
    }
}

/// `k[t]/(t^j)` as a right module over `k[t]/(t^N)`, basis `1, t, …, t^{j-1}`.
pub fn uniserial<F: Field>(ring: Arc<Algebra<F>>, j: usize) -> Module<F> {
    let f = ring.field();
    let n = ring.dim();
    let actions = (0..n)
        .map(|s| {
            let mut a = Matrix::zeros(f, j, j);
            for c in 0..j {
                if c + s < j {
                    a.set(c + s, c, f.one());
                }
            }
            a
        })
        .collect();
    Module::new_unchecked(ring, Side::Right, j, actions).expect("uniserial module is well-formed")
}

/// The inclusion `V/m^j → V/m^{j+1}`, `1 ↦ t`.
pub fn uniserial_inclusion<F: Field>(f: F, j: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(f, j + 1, j);
    for c in 0..j {
        m.set(c + 1, c, f.one());
    }
    m
}

/// The projection `V/m^{j+1} → V/m^j`.
pub fn uniserial_projection<F: Field>(f: F, j: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(f, j, j + 1);
    for c in 0..j {
        m.set(c, c, f.one());
    }
    m
}

#[derive(Clone, Debug)]
pub struct HomBoundsReport {
    pub horizon: usize,
    pub height: usize,
    pub dim_cap: usize,
    pub checks: Vec<(FpLabel, usize)>,
}

impl HomBoundsReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|&(_, d)| d <= 1)
    }

    pub fn failures(&self) -> Vec<FpLabel> {
        self.checks.iter().filter(|&&(_, d)| d > 1).map(|&(l, _)| l).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Seed {
    /// `V/m^j`.
    Ind(usize),
    /// `T_m = (k, 0, 0)` over `R_m`; `T(0)` means `Ind(1)`.
    T(usize),
}

/// `F0^f0 F1^f1 seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpLabel {
    pub f0: usize,
    pub f1: usize,
    pub seed: Seed,
}

impl FpLabel {
    pub fn level(&self) -> usize {
        self.f0 + self.f1 + if let Seed::T(m) = self.seed { m } else { 0 }
    }

    /// Applies `T(0) = Ind(1)`.
    pub fn canonical(&self) -> Self {
        match self.seed {
            Seed::T(0) => FpLabel { seed: Seed::Ind(1), ..*self },
            _ => *self,
        }
    }

    /// `dim F0^a F1^b X = dim X + b`, since each `F_1` adds a one-dimensional `Hom(L, −)`.
    pub fn dim(&self) -> usize {
        let seed = match self.canonical().seed {
            Seed::Ind(j) => j,
            Seed::T(_) => 1,
        };
        seed + self.f1
    }

    /// Applies `F_1` on the outside, rewriting `F_1 F_0 ≅ F_0 F_0`.
    pub fn apply_f1(&self) -> Self {
        if self.f0 > 0 {
            FpLabel { f0: self.f0 + 1, ..*self }
        } else {
            FpLabel { f1: self.f1 + 1, ..*self }
        }
    }

    pub fn apply_f0(&self) -> Self {
        FpLabel { f0: self.f0 + 1, ..*self }
    }
}

impl fmt::Display for FpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.seed {
            Seed::T(m) if self.f0 == 0 && self.f1 == 0 => write!(f, "T({m})"),
            Seed::T(m) => write!(f, "F0^{} F1^{} T({m})", self.f0, self.f1),
            Seed::Ind(j) => write!(f, "F0^{} F1^{} Ind({j})", self.f0, self.f1),
        }
    }
}

impl FromStr for FpLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed label `{s}`"));
        let parts: Vec<&str> = s.split_whitespace().collect();
        let seed_of = |p: &str| -> Result<Seed> {
            let inner = |pre: &str| p.strip_prefix(pre).and_then(|r| r.strip_suffix(')')).and_then(|n| n.parse::<usize>().ok());
            if let Some(j) = inner("Ind(") {
                if j == 0 {
                    return Err(bad());
                }
                Ok(Seed::Ind(j))
            } else if let Some(m) = inner("T(") {
                Ok(Seed::T(m))
            } else {
                Err(bad())
            }
        };
        let exp = |p: &str, pre: &str| p.strip_prefix(pre).and_then(|n| n.parse::<usize>().ok());
        match parts.as_slice() {
            [seed] => match seed_of(seed)? {
                Seed::T(m) => Ok(FpLabel { f0: 0, f1: 0, seed: Seed::T(m) }),
                Seed::Ind(_) => Err(bad()),
            },
            [a, b, seed] => Ok(FpLabel {
                f0: exp(a, "F0^").ok_or_else(bad)?,
                f1: exp(b, "F1^").ok_or_else(bad)?,
                seed: seed_of(seed)?,
            }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn tower(n_cap: usize, h: usize) -> Tower<PrimeField> {
        Tower::new(n_cap, h, PrimeField::gf2()).unwrap()
    }

    #[test]
    fn ring_dimensions() {
        assert_eq!(tower(3, 0).ring(0).unwrap().dim(), 3);
        let t = tower(3, 1);
        assert_eq!(t.ring(1).unwrap().dim(), 5);
        assert_eq!(t.bimodule(1).unwrap().dim(), 2);
        let t = tower(2, 3);
        assert_eq!(t.ring(3).unwrap().dim(), 2 + 9);
    }

    #[test]
    fn idempotents_sum_to_one_and_are_orthogonal() {
        let t = tower(3, 2);
        let r = t.ring(2).unwrap();
        let idem = t.idempotents(2).unwrap();
        assert_eq!(idem.len(), 3);
        let mut sum = r.zero_elem();
        for (i, a) in idem.iter().enumerate() {
            sum = r.add(&sum, a);
            for (j, b) in idem.iter().enumerate() {
                let p = r.mul(a, b);
                if i == j {
                    assert_eq!(&p, a);
                } else {
                    assert!(r.is_zero(&p));
                }
            }
        }
        assert_eq!(&sum, r.unit());
    }

    #[test]
    fn forget_undoes_both_functors() {
        let t = tower(3, 2);
        let x = t.ind(2).unwrap();
        let y = t.f1(0, &x).unwrap();
        assert_eq!(y.dim(), 3);
        assert!(crate::decompose::isomorphic(&t.forget(1, &y).unwrap(), &x).unwrap());
        let z = t.f0(1, &y).unwrap();
        assert!(crate::decompose::isomorphic(&t.forget(2, &z).unwrap(), &y).unwrap());
        let (tr, _) = t.split(2, &z).unwrap();
        assert!(crate::decompose::isomorphic(&t.flatten(&tr).unwrap(), &z).unwrap());
    }

    #[test]
    fn hom_from_l_is_one_dimensional_on_l() {
        let t = tower(3, 2);
        for q in 0..=2 {
            let l = t.bimodule(q).unwrap();
            assert_eq!(l.hom_dim(l).unwrap(), 1);
        }
    }

    #[test]
    fn f1_of_f0_is_f0_of_f0() {
        let t = tower(3, 2);
        for j in 1..=3 {
            let k = t.ind(j).unwrap();
            let a = t.f1(1, &t.f0(0, &k).unwrap()).unwrap();
            let b = t.f0(1, &t.f0(0, &k).unwrap()).unwrap();
            assert!(crate::decompose::isomorphic(&a, &b).unwrap());
            let l1 = t.bimodule(1).unwrap();
            assert_eq!(l1.hom_dim(&t.f0(0, &k).unwrap()).unwrap(), 0);
        }
    }

    #[test]
    fn classify_simple_cases() {
        let t = tower(3, 1);
        let t1 = t.simple_top(1).unwrap();
        assert_eq!(t.classify(1, &t1).unwrap(), vec![("T(1)".parse().unwrap(), 1)]);
        let x = t.f1(0, &t.ind(2).unwrap()).unwrap();
        let got = t.classify(1, &x).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].0.to_string(), "F0^0 F1^1 Ind(2)");
    }

    #[test]
    fn label_round_trip() {
        for s in ["T(1)", "F0^0 F1^1 Ind(2)", "F0^1 F1^0 T(1)", "F0^2 F1^0 Ind(3)"] {
            let l: FpLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("F0^1 Ind(2)".parse::<FpLabel>().is_err());
        assert!("Ind(2)".parse::<FpLabel>().is_err());
    }

    #[test]
    fn uniserial_maps_are_homs() {
        let t = tower(4, 0);
        let f = t.field();
        for j in 1..4 {
            let a = t.ind(j).unwrap();
            let b = t.ind(j + 1).unwrap();
            assert!(a.is_hom_to(&b, &uniserial_inclusion(f, j)));
            assert!(b.is_hom_to(&a, &uniserial_projection(f, j)));
        }
    }

    #[test]
    fn hom_bounds_hold_at_small_scale() {
        let t = tower(2, 1);
        let rep = t.verify_hom_bounds(6).unwrap();
        assert!(rep.all_pass());
        let t1 = t.simple_top(1).unwrap();
        assert_eq!(t.bimodule(1).unwrap().hom_dim(&t1).unwrap(), 1);
    }

    #[test]
    fn no_label_coincidences_at_low_levels() {
        let t = tower(2, 2);
        for q in 0..=2 {
            assert!(t.label_coincidences(q, 6).unwrap().is_empty());
        }
    }

    #[test]
    fn regular_module_splits_into_indecomposable_projectives() {
        let t = tower(2, 2);
        for q in 1..=2 {
            let r = Module::regular(t.ring(q).unwrap().clone(), Side::Right);
            let got = t.classify(q, &r).unwrap();
            // c R = F0^q V and e_i R = F0^(q-i) F1^i (V/m)
            let mut want = vec![(FpLabel { f0: q, f1: 0, seed: Seed::Ind(2) }, 1)];
            want.extend((1..=q).map(|i| (FpLabel { f0: q - i, f1: i, seed: Seed::Ind(1) }, 1)));
            want.sort();
            assert_eq!(got, want);
        }
    }
}
