//! Concrete realization of a ray tube inside modules over the tower `R_n`:
//! `S_i^k[j] ↦ F_0^{n-k} F_1^k (V/m^j)`, `μ` from the inclusions `V/m^j → V/m^{j+1}`,
//! `λ_i^k` (`k < n_i`) from the natural embeddings `F_0 X → F_1 X`, and the boundary
//! `λ_i^{n_i}` from the projections `V/m^j → V/m^{j-1}` pushed through `F_1 X → F_0 Y`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::decompose::{decompose, indecomposables_isomorphic, isomorphic};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::{embedding_probe, ProbeLimits, ProbeReport};
use crate::matrix::Matrix;
use crate::module::{Module, Side};
use crate::tower::{uniserial_inclusion, uniserial_projection, Tower};
use crate::tube::{Arrow, FormalPath, NormalPath, PathMatrix, PathSum, SymbolicTube, TranslationQuiver, Vertex};

/// Which embeddings realize the `α^l` maps; recorded in every report.
pub const ALPHA_CHOICE: &str = "alpha = natural embeddings F0 X -> F1 X";

/// A commutative square `top: A → B`, `left: A → C`, `right: B → D`, `bottom: C → D`.
#[derive(Clone, Debug)]
pub struct Square<F: Field> {
    pub id: String,
    pub a: Module<F>,
    pub b: Module<F>,
    pub c: Module<F>,
    pub d: Module<F>,
    pub top: Matrix<F>,
    pub left: Matrix<F>,
    pub right: Matrix<F>,
    pub bottom: Matrix<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareCheck {
    pub id: String,
    pub pullback: bool,
    pub pushout: bool,
}

impl SquareCheck {
    pub fn passes(&self) -> bool {
        self.pullback && self.pushout
    }
}

/// Checks `A → B ⊕ C → D` for exactness at both ends by rank computations.
pub fn check_square<F: Field>(sq: &Square<F>) -> Result<SquareCheck> {
    let f = sq.a.field();
    let maps = [(&sq.a, &sq.b, &sq.top, "top"), (&sq.a, &sq.c, &sq.left, "left"), (&sq.b, &sq.d, &sq.right, "right"), (&sq.c, &sq.d, &sq.bottom, "bottom")];
    for (src, dst, g, name) in maps {
        if g.rows() != dst.dim() || g.cols() != src.dim() || !src.is_hom_to(dst, g) {
            return Err(Error::StructureViolation(format!("{}: {name} is not a module map", sq.id)));
        }
    }
    if sq.right.mul(&sq.top) != sq.bottom.mul(&sq.left) {
        return Err(Error::NonCommuting(sq.id.clone()));
    }
    let into = Matrix::vstack(f, sq.a.dim(), &[&sq.top, &sq.left]);
    let out = Matrix::hstack(f, sq.d.dim(), &[&sq.right, &sq.bottom.neg()]);
    let (da, db, dc, dd) = (sq.a.dim(), sq.b.dim(), sq.c.dim(), sq.d.dim());
    let r_in = into.rank();
    let r_out = out.rank();
    let ker_out = db + dc - r_out;
    Ok(SquareCheck {
        id: sq.id.clone(),
        pullback: r_in == da && ker_out == da,
        pushout: r_out == dd && ker_out == r_in,
    })
}

/// True iff the square is both a pullback and a pushout.
pub fn verify_pushout_pullback<F: Field>(sq: &Square<F>) -> Result<bool> {
    Ok(check_square(sq)?.passes())
}

#[derive(Clone, Debug)]
pub struct RealizationReport {
    pub horizon: usize,
    pub height: usize,
    pub stages: usize,
    pub alpha_choice: &'static str,
    pub squares: Vec<SquareCheck>,
    pub embeddings: Vec<(String, bool)>,
    pub cokernels: Vec<(String, bool)>,
}

impl RealizationReport {
    pub fn all_pass(&self) -> bool {
        self.squares.iter().all(SquareCheck::passes) && self.embeddings.iter().all(|e| e.1) && self.cokernels.iter().all(|e| e.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleReport {
    pub stage: usize,
    pub surrogate_dim: usize,
    /// `d_0 = dim M_1`, `d_l = dim P^l_1 - dim P^{l-1}_1`.
    pub expected: Vec<usize>,
    /// Multiplicity of `R_n c_n`, `R_n e_1^n`, … in the surrogate.
    pub found: Vec<usize>,
    /// Summands matching none of the indecomposable projectives.
    pub unmatched: usize,
}

impl BimoduleReport {
    pub fn matches(&self) -> bool {
        self.expected == self.found && self.unmatched == 0
    }
}

#[derive(Clone, Debug)]
pub struct RealizedTube<F: Field> {
    tower: Tower<F>,
    tube: SymbolicTube,
    /// `F_1^q (V/m^j)` over `R_q`.
    raised: BTreeMap<(usize, usize), Module<F>>,
    /// `F_0^{n-k} F_1^k (V/m^j)` over `R_n`.
    objects: BTreeMap<(usize, usize), Module<F>>,
    mu: BTreeMap<(usize, usize), Matrix<F>>,
    embed: BTreeMap<(usize, usize), Matrix<F>>,
    collapse: BTreeMap<(usize, usize), Matrix<F>>,
}

impl<F: Field> RealizedTube<F> {
    /// Builds the realization without checking any squares.
    pub fn build(tower: &Tower<F>, quiver: &TranslationQuiver) -> Result<Self> {
        let stages = quiver.horizon();
        if stages >= tower.horizon() {
            return Err(Error::HorizonExceeded { needed: stages, horizon: tower.horizon() });
        }
        let n = tower.height();
        let tube = quiver.generalized_tube(n)?;
        let f = tower.field();
        let top_k = quiver.rays().iter().copied().max().unwrap_or(0);
        let mut raised = BTreeMap::new();
        let mut mu = BTreeMap::new();
        let mut embed = BTreeMap::new();
        let mut collapse = BTreeMap::new();
        for j in 1..=stages {
            raised.insert((0, j), tower.ind(j)?);
            if j < stages {
                mu.insert((0, j), uniserial_inclusion(f, j));
            }
            if j >= 2 {
                collapse.insert((0, j), uniserial_projection(f, j - 1));
            }
        }
        for q in 0..top_k {
            for j in 1..=stages {
                let x = raised[&(q, j)].clone();
                embed.insert((q, j), tower.natural_embedding(q, &x)?);
                if j < stages {
                    let g = tower.f1_map(q, &x, &raised[&(q, j + 1)], &mu[&(q, j)])?;
                    mu.insert((q + 1, j), g);
                }
                if j >= 2 {
                    let g = tower.collapse_map(q, &x, &collapse[&(q, j)])?;
                    collapse.insert((q + 1, j), g);
                }
                raised.insert((q + 1, j), tower.f1(q, &x)?);
            }
        }
        let mut objects = BTreeMap::new();
        for (&(k, j), x) in &raised {
            let mut y = x.clone();
            for level in k..n {
                y = tower.f0(level, &y)?;
            }
            objects.insert((k, j), y);
        }
        Ok(RealizedTube { tower: tower.clone(), tube, raised, objects, mu, embed, collapse })
    }

    pub fn tower(&self) -> &Tower<F> {
        &self.tower
    }

    pub fn symbolic(&self) -> &SymbolicTube {
        &self.tube
    }

    pub fn quiver(&self) -> &TranslationQuiver {
        &self.tube.quiver
    }

    pub fn stages(&self) -> usize {
        self.tube.quiver.horizon()
    }

    /// `F_1^q (V/m^j)` over `R_q`.
    pub fn raised(&self, q: usize, j: usize) -> Option<&Module<F>> {
        self.raised.get(&(q, j))
    }

    pub fn vertex(&self, v: Vertex) -> Result<&Module<F>> {
        if !self.quiver().contains(v) {
            return Err(Error::HorizonExceeded { needed: v.j, horizon: self.stages() });
        }
        Ok(&self.objects[&(v.k, v.j)])
    }

    pub fn arrow(&self, a: Arrow) -> Result<&Matrix<F>> {
        self.quiver().target(a).ok_or_else(|| Error::NotComposable(format!("{a} is not an arrow")))?;
        Ok(match a {
            Arrow::Mu { k, j, .. } => &self.mu[&(k, j)],
            Arrow::Lambda { i, k, j } if k < self.quiver().ray(i) => &self.embed[&(k, j)],
            Arrow::Lambda { k, j, .. } => &self.collapse[&(k, j)],
        })
    }

    pub fn path(&self, p: &FormalPath) -> Result<Matrix<F>> {
        let q = self.quiver();
        q.check_path(p)?;
        let f = self.tower.field();
        let mut acc = Matrix::identity(f, self.vertex(p.start)?.dim());
        for a in &p.arrows {
            acc = self.arrow(*a)?.mul(&acc);
        }
        Ok(acc.scale(&f.from_i64(p.coeff)))
    }

    /// The realization of a normal form between the given endpoints.
    pub fn normal(&self, p: &NormalPath, source: Vertex, target: Vertex) -> Result<Matrix<F>> {
        match p {
            NormalPath::Zero => Ok(Matrix::zeros(self.tower.field(), self.vertex(target)?.dim(), self.vertex(source)?.dim())),
            NormalPath::Path(p) => self.path(p),
        }
    }

    pub fn path_sum(&self, s: &PathSum, source: Vertex, target: Vertex) -> Result<Matrix<F>> {
        let mut acc = Matrix::zeros(self.tower.field(), self.vertex(target)?.dim(), self.vertex(source)?.dim());
        for t in s.terms() {
            acc = acc.add(&self.path(&t)?);
        }
        Ok(acc)
    }

    pub fn object(&self, vertices: &[Vertex]) -> Result<Module<F>> {
        let parts = vertices.iter().map(|&v| self.vertex(v)).collect::<Result<Vec<_>>>()?;
        if parts.is_empty() {
            return Ok(Module::zero(self.tower.ring(self.tower.height())?.clone(), Side::Right));
        }
        Module::direct_sum(&parts)
    }

    pub fn matrix(&self, m: &PathMatrix) -> Result<Matrix<F>> {
        let f = self.tower.field();
        let rdims = m.rows.iter().map(|&v| Ok(self.vertex(v)?.dim())).collect::<Result<Vec<_>>>()?;
        let cdims = m.cols.iter().map(|&v| Ok(self.vertex(v)?.dim())).collect::<Result<Vec<_>>>()?;
        let mut out = Matrix::zeros(f, rdims.iter().sum(), cdims.iter().sum());
        let mut r0 = 0;
        for (r, rd) in rdims.iter().enumerate() {
            let mut c0 = 0;
            for (c, cd) in cdims.iter().enumerate() {
                out.paste(r0, c0, &self.path_sum(&m.entries[r][c], m.cols[c], m.rows[r])?);
                c0 += cd;
            }
            r0 += rd;
        }
        Ok(out)
    }

    fn square(&self, id: String, objs: [&[Vertex]; 4], maps: [&PathMatrix; 4]) -> Result<Square<F>> {
        Ok(Square {
            id,
            a: self.object(objs[0])?,
            b: self.object(objs[1])?,
            c: self.object(objs[2])?,
            d: self.object(objs[3])?,
            top: self.matrix(maps[0])?,
            left: self.matrix(maps[1])?,
            right: self.matrix(maps[2])?,
            bottom: self.matrix(maps[3])?,
        })
    }

    /// The defining squares of the generalized tube up to the stage horizon:
    /// `tube[j]` (ψ against φ), `P{l}[j]` (ψ̄ against α) and `f[j]` (ψ̄^n against f).
    pub fn squares(&self) -> Result<Vec<Square<F>>> {
        let t = &self.tube;
        let n = t.height;
        let mut out = Vec::new();
        for j in 1..self.stages() {
            let (mj, mj1, mjm) = (t.m_obj(j)?, t.m_obj(j + 1)?, t.m_obj(j - 1)?);
            out.push(self.square(format!("tube[{j}]"), [&mj, &mj1, &mjm, &mj], [&t.psi(j)?, &t.phi(j - 1)?, &t.phi(j)?, &t.psi(j - 1)?])?);
            for l in 1..=n {
                let objs = [t.p_obj(l - 1, j)?, t.p_obj(l - 1, j + 1)?, t.p_obj(l, j)?, t.p_obj(l, j + 1)?];
                let maps = [t.psi_bar(l - 1, j)?, t.alpha(l, j)?, t.alpha(l, j + 1)?, t.psi_bar(l, j)?];
                out.push(self.square(format!("P{l}[{j}]"), [&objs[0], &objs[1], &objs[2], &objs[3]], [&maps[0], &maps[1], &maps[2], &maps[3]])?);
            }
            let (pj, pj1) = (t.p_obj(n, j)?, t.p_obj(n, j + 1)?);
            out.push(self.square(format!("f[{j}]"), [&pj, &pj1, &mjm, &mj], [&t.psi_bar(n, j)?, &t.f(j - 1)?, &t.f(j)?, &t.psi(j - 1)?])?);
        }
        Ok(out)
    }

    /// Checks every defining square, the embeddings `α`, `ψ̄`, and `coker ψ̄^l_1 ≅ M_1`.
    pub fn verify(&self) -> Result<RealizationReport> {
        let t = &self.tube;
        let n = t.height;
        let squares = self.squares()?.iter().map(check_square).collect::<Result<Vec<_>>>()?;
        let mut embeddings = Vec::new();
        for j in 1..self.stages() {
            for l in 0..=n {
                let g = self.matrix(&t.psi_bar(l, j)?)?;
                embeddings.push((format!("psi_bar{l}[{j}]"), g.rank() == g.cols()));
            }
        }
        for j in 1..=self.stages() {
            for l in 1..=n {
                let g = self.matrix(&t.alpha(l, j)?)?;
                embeddings.push((format!("alpha{l}[{j}]"), g.rank() == g.cols()));
            }
        }
        let m1 = self.object(&t.m_obj(1)?)?;
        let mut cokernels = Vec::new();
        for l in 0..=n {
            let g = self.matrix(&t.psi_bar(l, 1)?)?;
            let (q, _) = self.object(&t.p_obj(l, 2)?)?.quotient(&g.image())?;
            cokernels.push((format!("coker psi_bar{l}[1]"), isomorphic(&q, &m1)?));
        }
        Ok(RealizationReport {
            horizon: self.tower.horizon(),
            height: n,
            stages: self.stages(),
            alpha_choice: ALPHA_CHOICE,
            squares,
            embeddings,
            cokernels,
        })
    }

    /// Paths of length `≤ max_len` whose realization differs from that of their normal form.
    pub fn functoriality_failures(&self, max_len: usize) -> Result<Vec<FormalPath>> {
        let q = self.quiver();
        let mut bad = Vec::new();
        for p in q.paths_up_to(max_len) {
            let nf = q.normalize(&p)?;
            if self.path(&p)? != self.normal(&nf, p.start, p.end(q))? {
                bad.push(p);
            }
        }
        Ok(bad)
    }

    /// Decomposes the stage-`J` left-module surrogate `M_J ⊕ P^1_1 ⊕ … ⊕ P^n_1` over the tower
    /// of horizon `J` and compares it with the predicted projective multiplicities.
    pub fn verify_bimodule_idempotents(&self) -> Result<BimoduleReport> {
        let t = &self.tube;
        let f = self.tower.field();
        let n = t.height;
        let stage = self.stages();
        let surrogate_tower = Tower::new(stage, n, f)?;
        let m_j = self.object(&t.m_obj(stage)?)?;
        let psi = self.matrix(&t.psi(stage - 1)?)?;
        let phi = self.matrix(&t.phi(stage - 1)?)?;
        let x = psi.mul(&phi);
        let mut u1 = Matrix::identity(f, m_j.dim());
        for j in (1..stage).rev() {
            u1 = self.matrix(&t.phi(j)?)?.mul(&u1);
        }
        let p_dims = (0..=n).map(|l| Ok(self.object(&t.p_obj(l, 1)?)?.dim())).collect::<Result<Vec<_>>>()?;
        let alphas = (1..=n).map(|l| self.matrix(&t.alpha(l, 1)?)).collect::<Result<Vec<_>>>()?;

        let mut dim = m_j.dim();
        let mut actions: Vec<Matrix<F>> = (0..stage).map(|s| x.pow(s as u64)).collect();
        let mut deltas: Vec<Matrix<F>> = match alphas.first() {
            Some(a) => vec![a.mul(&u1)],
            None => Vec::new(),
        };
        for q in 0..n {
            let p = p_dims[q + 1];
            let grow = |a: &Matrix<F>, d: &Matrix<F>, e: &Matrix<F>| {
                let mut out = Matrix::zeros(f, dim + p, dim + p);
                out.paste(0, 0, a);
                out.paste(dim, 0, d);
                out.paste(dim, dim, e);
                out
            };
            let (z_top, z_low, z_corner) = (Matrix::zeros(f, dim, dim), Matrix::zeros(f, p, dim), Matrix::zeros(f, p, p));
            let mut next: Vec<Matrix<F>> = actions.iter().map(|a| grow(a, &z_low, &z_corner)).collect();
            next.extend(deltas.iter().map(|d| grow(&z_top, d, &z_corner)));
            next.push(grow(&z_top, &z_low, &Matrix::identity(f, p)));
            if q + 1 < n {
                let a = &alphas[q + 1];
                let mut nd: Vec<Matrix<F>> = deltas.iter().map(|d| Matrix::hstack(f, a.rows(), &[&a.mul(d), &Matrix::zeros(f, a.rows(), p)])).collect();
                nd.push(Matrix::hstack(f, a.rows(), &[&Matrix::zeros(f, a.rows(), dim), a]));
                deltas = nd;
            }
            actions = next;
            dim += p;
        }
        let ring = surrogate_tower.ring(n)?.clone();
        let surrogate = Module::new(ring.clone(), Side::Left, dim, actions)?;
        let idems = if n == 0 { vec![ring.unit().to_vec()] } else { surrogate_tower.idempotents(n)? };
        let projectives = idems.iter().map(|e| Ok(Module::projective(ring.clone(), Side::Left, e)?.0)).collect::<Result<Vec<_>>>()?;
        let mut found = vec![0; projectives.len()];
        let mut unmatched = 0;
        for (summand, mult) in decompose(&surrogate)?.multiplicities() {
            let mut hit = None;
            for (idx, p) in projectives.iter().enumerate() {
                if indecomposables_isomorphic(&summand, p)? {
                    hit = Some(idx);
                    break;
                }
            }
            match hit {
                Some(idx) => found[idx] += mult,
                None => unmatched += mult,
            }
        }
        let mut expected = vec![p_dims[0]];
        expected.extend((1..=n).map(|l| p_dims[l] - p_dims[l - 1]));
        Ok(BimoduleReport { stage, surrogate_dim: dim, expected, found, unmatched })
    }
}

impl<F: Field> RealizedTube<F> {
    /// Runs [`embedding_probe`] on every realized `μ_i^k[j]` with `j ≤ max_stage`.
    pub fn mu_probes(
        &self,
        max_stage: usize,
        universe: &[(String, Module<F>)],
        budget: usize,
        limits: ProbeLimits,
    ) -> Result<Vec<(Arrow, ProbeReport<F>)>> {
        let q = self.quiver();
        let mut out = Vec::new();
        for v in q.vertices().into_iter().filter(|v| v.j <= max_stage) {
            let Some(a) = q.mu_from(v) else { continue };
            let target = q.target(a).expect("mu_from returns arrows inside the horizon");
            let report = embedding_probe(self.vertex(v)?, self.vertex(target)?, self.arrow(a)?, universe, budget, limits)?;
            out.push((a, report));
        }
        Ok(out)
    }
}

/// Builds the realization and checks every defining square.
pub fn realize_in_tower<F: Field>(tower: &Tower<F>, quiver: &TranslationQuiver) -> Result<(RealizedTube<F>, RealizationReport)> {
    let r = RealizedTube::build(tower, quiver)?;
    let report = r.verify()?;
    if let Some(bad) = report.squares.iter().find(|s| !s.passes()) {
        return Err(Error::SquareFailed(bad.id.clone()));
    }
    Ok((r, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::lattice::Verdict;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    #[test]
    fn identity_square_verifies() {
        let t = Tower::new(4, 1, gf2()).unwrap();
        let x = t.f1(0, &t.ind(2).unwrap()).unwrap();
        let id = Matrix::identity(gf2(), x.dim());
        let sq = Square { id: "id".into(), a: x.clone(), b: x.clone(), c: x.clone(), d: x, top: id.clone(), left: id.clone(), right: id.clone(), bottom: id };
        assert!(verify_pushout_pullback(&sq).unwrap());
    }

    #[test]
    fn broken_square_is_rejected() {
        let t = Tower::new(4, 1, gf2()).unwrap();
        let q = TranslationQuiver::new(1, &[0], 3).unwrap();
        let r = RealizedTube::build(&t, &q).unwrap();
        let mut sq = r.squares().unwrap().into_iter().find(|s| s.id == "tube[1]").unwrap();
        assert!(verify_pushout_pullback(&sq).unwrap());
        sq.right = Matrix::zeros(gf2(), sq.right.rows(), sq.right.cols());
        assert!(!verify_pushout_pullback(&sq).unwrap());
        let mut sq = r.squares().unwrap().into_iter().find(|s| s.id == "tube[2]").unwrap();
        sq.right = Matrix::zeros(gf2(), sq.right.rows(), sq.right.cols());
        assert!(matches!(verify_pushout_pullback(&sq), Err(Error::NonCommuting(_))));
    }

    #[test]
    fn horizon_discipline() {
        let t = Tower::new(4, 1, gf2()).unwrap();
        let q = TranslationQuiver::new(1, &[1], 4).unwrap();
        assert!(matches!(RealizedTube::build(&t, &q), Err(Error::HorizonExceeded { .. })));
    }

    #[test]
    fn realized_squares_and_cokernels() {
        let t = Tower::new(4, 1, gf2()).unwrap();
        for rays in [vec![0], vec![1], vec![1, 0], vec![0, 0]] {
            let q = TranslationQuiver::new(rays.len(), &rays, 3).unwrap();
            let (_, report) = realize_in_tower(&t, &q).unwrap();
            assert!(report.all_pass(), "{rays:?}: {report:?}");
        }
    }

    #[test]
    fn realization_is_functorial() {
        let t = Tower::new(5, 2, gf2()).unwrap();
        for rays in [vec![2], vec![1, 0], vec![2, 1]] {
            let q = TranslationQuiver::new(rays.len(), &rays, 4).unwrap();
            let r = RealizedTube::build(&t, &q).unwrap();
            assert!(r.functoriality_failures(5).unwrap().is_empty(), "{rays:?}");
        }
    }

    #[test]
    fn bimodule_surrogate_multiplicities() {
        let t = Tower::new(4, 1, gf2()).unwrap();
        let q = TranslationQuiver::new(1, &[1], 3).unwrap();
        let report = RealizedTube::build(&t, &q).unwrap().verify_bimodule_idempotents().unwrap();
        assert_eq!(report.expected, vec![1, 1]);
        assert!(report.matches(), "{report:?}");

        let t0 = Tower::new(4, 0, gf2()).unwrap();
        let q0 = TranslationQuiver::new(1, &[0], 3).unwrap();
        let report = RealizedTube::build(&t0, &q0).unwrap().verify_bimodule_idempotents().unwrap();
        assert_eq!(report.found, vec![1]);
        assert!(report.matches());
    }

    #[test]
    fn zero_tube_gives_empty_surrogate() {
        let t = Tower::new(4, 1, gf2()).unwrap();
        let q = TranslationQuiver::empty(3).unwrap();
        let report = RealizedTube::build(&t, &q).unwrap().verify_bimodule_idempotents().unwrap();
        assert_eq!(report.surrogate_dim, 0);
        assert_eq!(report.found, vec![0, 0]);
        assert!(report.matches());
    }

    #[test]
    fn larger_realizations() {
        let t = Tower::new(5, 2, gf2()).unwrap();
        for rays in [vec![2, 0], vec![1, 2], vec![0, 1, 0]] {
            let q = TranslationQuiver::new(rays.len(), &rays, 4).unwrap();
            let (r, report) = realize_in_tower(&t, &q).unwrap();
            assert!(report.all_pass(), "{rays:?}");
            let b = r.verify_bimodule_idempotents().unwrap();
            assert!(b.matches(), "{rays:?}: {b:?}");
        }
    }

    #[test]
    fn realized_mu_are_short() {
        let t = Tower::new(5, 1, gf2()).unwrap();
        let universe: Vec<(String, Module<PrimeField>)> = t.labels(1, 6).unwrap().into_iter().map(|l| (format!("{l}"), t.build_label(&l).unwrap())).collect();
        for rays in [vec![0], vec![1, 0]] {
            let q = TranslationQuiver::new(rays.len(), &rays, 4).unwrap();
            let r = RealizedTube::build(&t, &q).unwrap();
            for (a, rep) in r.mu_probes(3, &universe, 10, ProbeLimits::default()).unwrap() {
                assert_eq!(rep.verdict, Verdict::ShortWithinBound, "{a}");
                let Arrow::Mu { j, .. } = a else { unreachable!() };
                assert!(rep.chain_length() <= 2 * j);
            }
        }
    }
}
