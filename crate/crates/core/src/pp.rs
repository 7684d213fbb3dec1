//! Positive-primitive formulas over a finite-dimensional algebra.
//!
//! A pp-n-formula `∃ȳ (x̄ ȳ) H = 0` is stored as a matrix `H` with one row per variable (the `n`
//! free variables first, then the `l` bound ones) and one column per equation. Equation `j` reads
//! `Σ_i v_i · H_ij = 0` for right modules and `Σ_i H_ij · v_i = 0` for left modules; in both cases
//! this is `Σ_i X(H_ij) v_i = 0` in terms of action matrices, so a left formula's usual matrix is
//! the transpose of the stored one.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgElem, Algebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vecops, Matrix};
use crate::module::{Module, Side};
use crate::subspace::Subspace;

#[derive(Clone, Debug)]
pub struct PpFormula<F: Field> {
    algebra: Arc<Algebra<F>>,
    side: Side,
    n: usize,
    l: usize,
    m: usize,
    /// Row-major `(n + l) × m` entries.
    h: Vec<AlgElem<F>>,
}

impl<F: Field> PartialEq for PpFormula<F> {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side
            && self.n == other.n
            && self.l == other.l
            && self.m == other.m
            && self.h == other.h
            && self.algebra.same_as(&other.algebra)
    }
}

impl<F: Field> PpFormula<F> {
    pub fn new(algebra: Arc<Algebra<F>>, side: Side, n: usize, l: usize, m: usize, h: Vec<AlgElem<F>>) -> Result<Self> {
        if h.len() != (n + l) * m {
            return Err(Error::DimensionMismatch { expected: (n + l) * m, found: h.len() });
        }
        if let Some(bad) = h.iter().find(|e| e.len() != algebra.dim()) {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: bad.len() });
        }
        Ok(PpFormula { algebra, side, n, l, m, h })
    }

    /// Builds from rows (one per variable).
    pub fn from_rows(algebra: Arc<Algebra<F>>, side: Side, n: usize, rows: Vec<Vec<AlgElem<F>>>) -> Result<Self> {
        if rows.len() < n {
            return Err(Error::InvalidParameter("fewer rows than free variables".into()));
        }
        let m = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidParameter("ragged formula matrix".into()));
        }
        let l = rows.len() - n;
        Self::new(algebra, side, n, l, m, rows.into_iter().flatten().collect())
    }

    /// `x̄ = x̄` (no equations).
    pub fn tautology(algebra: Arc<Algebra<F>>, side: Side, n: usize) -> Self {
        PpFormula { algebra, side, n, l: 0, m: 0, h: Vec::new() }
    }

    /// `x̄ = 0`.
    pub fn zero(algebra: Arc<Algebra<F>>, side: Side, n: usize) -> Self {
        let mut h = vec![algebra.zero_elem(); n * n];
        for i in 0..n {
            h[i * n + i] = algebra.unit().clone();
        }
        PpFormula { algebra, side, n, l: 0, m: n, h }
    }

    /// `a | x`: `∃y x = y a` (right) or `∃y x = a y` (left).
    pub fn divisibility(algebra: Arc<Algebra<F>>, side: Side, a: &[F::Elem]) -> Self {
        let h = vec![algebra.unit().clone(), algebra.neg(a)];
        PpFormula { algebra, side, n: 1, l: 1, m: 1, h }
    }

    /// `x a = 0` (right) or `a x = 0` (left).
    pub fn annihilator(algebra: Arc<Algebra<F>>, side: Side, a: &[F::Elem]) -> Self {
        let h = vec![a.to_vec()];
        PpFormula { algebra, side, n: 1, l: 0, m: 1, h }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn side(&self) -> Side {
        self.side
    }
    /// Number of free variables.
    pub fn n(&self) -> usize {
        self.n
    }
    /// Number of bound variables.
    pub fn l(&self) -> usize {
        self.l
    }
    /// Number of equations.
    pub fn m(&self) -> usize {
        self.m
    }
    /// Coefficient of variable `var` in equation `eq`.
    pub fn entry(&self, var: usize, eq: usize) -> &AlgElem<F> {
        &self.h[var * self.m + eq]
    }

    fn check_pair(&self, other: &Self) -> Result<()> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        if self.n != other.n {
            return Err(Error::ArityMismatch(self.n, other.n));
        }
        Ok(())
    }

    fn check_module(&self, module: &Module<F>) -> Result<()> {
        if !self.algebra.same_as(module.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        if self.side != module.side() {
            return Err(Error::SideMismatch);
        }
        Ok(())
    }

    /// Linear map on the variables `vars` (each a copy of `M`) to `M^m`.
    fn system(&self, module: &Module<F>, vars: core::ops::Range<usize>) -> Matrix<F> {
        let f = module.field();
        let d = module.dim();
        let mut out = Matrix::zeros(f, self.m * d, vars.len() * d);
        for (vi, var) in vars.enumerate() {
            for eq in 0..self.m {
                let e = self.entry(var, eq);
                if self.algebra.is_zero(e) {
                    continue;
                }
                out.paste(eq * d, vi * d, &module.act(e));
            }
        }
        out
    }

    /// `φ(M) ⊆ M^n`, with tuples laid out as concatenated coordinate vectors.
    pub fn eval(&self, module: &Module<F>) -> Result<Subspace<F>> {
        self.check_module(module)?;
        let d = module.dim();
        let f = module.field();
        if self.m == 0 || d == 0 {
            return Ok(Subspace::full(f, self.n * d));
        }
        let sys = self.system(module, 0..self.n + self.l);
        Ok(sys.kernel().project_prefix(self.n * d))
    }

    /// Whether a tuple satisfies the formula (a witness exists).
    pub fn holds(&self, module: &Module<F>, tuple: &[Vec<F::Elem>]) -> Result<bool> {
        self.check_module(module)?;
        if tuple.len() != self.n {
            return Err(Error::ArityMismatch(self.n, tuple.len()));
        }
        if self.m == 0 {
            return Ok(true);
        }
        let f = module.field();
        let flat: Vec<F::Elem> = tuple.iter().flatten().cloned().collect();
        let bx = self.system(module, 0..self.n);
        let rhs: Vec<F::Elem> = bx.mul_vec(&flat).iter().map(|x| f.neg(x)).collect();
        if self.l == 0 || module.dim() == 0 {
            return Ok(vecops::is_zero(f, &rhs));
        }
        let by = self.system(module, self.n..self.n + self.l);
        Ok(by.solve(&rhs).is_some())
    }

    /// `(φ + ψ)(x̄) = ∃ū (φ(x̄ − ū) ∧ ψ(ū))`.
    pub fn pp_sum(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        let a = &self.algebra;
        let n = self.n;
        let l = n + self.l + other.l;
        let m = self.m + other.m;
        let mut h = vec![a.zero_elem(); (n + l) * m];
        let idx = |var: usize, eq: usize| var * m + eq;
        for j in 0..self.m {
            for i in 0..n {
                h[idx(i, j)] = self.entry(i, j).clone();
                h[idx(n + i, j)] = a.neg(self.entry(i, j));
            }
            for k in 0..self.l {
                h[idx(2 * n + k, j)] = self.entry(n + k, j).clone();
            }
        }
        for j in 0..other.m {
            for i in 0..n {
                h[idx(n + i, self.m + j)] = other.entry(i, j).clone();
            }
            for k in 0..other.l {
                h[idx(2 * n + self.l + k, self.m + j)] = other.entry(n + k, j).clone();
            }
        }
        Self::new(a.clone(), self.side, n, l, m, h)
    }

    /// `φ ∧ ψ` with disjoint witnesses.
    pub fn pp_meet(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        let a = &self.algebra;
        let n = self.n;
        let l = self.l + other.l;
        let m = self.m + other.m;
        let mut h = vec![a.zero_elem(); (n + l) * m];
        let idx = |var: usize, eq: usize| var * m + eq;
        for j in 0..self.m {
            for i in 0..n {
                h[idx(i, j)] = self.entry(i, j).clone();
            }
            for k in 0..self.l {
                h[idx(n + k, j)] = self.entry(n + k, j).clone();
            }
        }
        for j in 0..other.m {
            for i in 0..n {
                h[idx(i, self.m + j)] = other.entry(i, j).clone();
            }
            for k in 0..other.l {
                h[idx(n + self.l + k, self.m + j)] = other.entry(n + k, j).clone();
            }
        }
        Self::new(a.clone(), self.side, n, l, m, h)
    }

    /// Elementary dual: `Dφ(x̄) = ∃z̄ [[I, H'], [0, H'']] (x̄ z̄)ᵀ = 0` on the opposite side.
    ///
    /// In row-per-variable storage this is `[[I_n, 0], [H'ᵀ, H''ᵀ]]` for either side.
    pub fn dual(&self) -> Self {
        let a = &self.algebra;
        let (n, l, m) = (self.n, self.l, self.m);
        let cols = n + l;
        let mut h = vec![a.zero_elem(); (n + m) * cols];
        for i in 0..n {
            h[i * cols + i] = a.unit().clone();
        }
        for j in 0..m {
            for var in 0..n + l {
                h[(n + j) * cols + var] = self.entry(var, j).clone();
            }
        }
        PpFormula { algebra: a.clone(), side: self.side.flip(), n, l: m, m: cols, h }
    }

    /// The cokernel presentation realizing this formula freely.
    pub fn free_realization(&self) -> FreeRealization<F> {
        let a = &self.algebra;
        let f = a.field();
        let da = a.dim();
        let vars = self.n + self.l;
        let free = Module::regular(a.clone(), self.side).power(vars);
        let rels: Vec<Vec<F::Elem>> = (0..self.m)
            .map(|j| (0..vars).flat_map(|i| self.entry(i, j).iter().cloned()).collect())
            .collect();
        let sub = free.submodule_generated(&rels);
        let (module, proj) = free.quotient(&sub).expect("generated submodule");
        let unit = a.unit();
        let tuple = (0..self.n)
            .map(|i| {
                let mut v = vecops::zero(f, vars * da);
                for (k, c) in unit.iter().enumerate() {
                    v[i * da + k] = c.clone();
                }
                proj.mul_vec(&v)
            })
            .collect();
        FreeRealization { module, tuple }
    }

    /// `φ ≤ ψ` in every module, decided on the free realization of `φ`.
    pub fn implies(&self, other: &Self) -> Result<bool> {
        self.check_pair(other)?;
        self.free_realization().satisfies(other)
    }

    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        Ok(self.implies(other)? && other.implies(self)?)
    }
}

/// A module with a tuple whose pp-type is generated by the originating formula.
#[derive(Clone, Debug)]
pub struct FreeRealization<F: Field> {
    pub module: Module<F>,
    pub tuple: Vec<Vec<F::Elem>>,
}

impl<F: Field> FreeRealization<F> {
    /// Whether the realizing tuple satisfies `psi`; equivalently whether the realized formula implies it.
    pub fn satisfies(&self, psi: &PpFormula<F>) -> Result<bool> {
        psi.holds(&self.module, &self.tuple)
    }
}

/// A finite presentation `A^r → A^g → M → 0`.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    /// Generators as vectors of the module.
    pub generators: Vec<Vec<F::Elem>>,
    /// `g × r` relation matrix, row-major algebra elements: relation `j` is `Σ_i g_i · H_ij = 0`.
    pub relations: Vec<AlgElem<F>>,
    pub relation_count: usize,
}

/// Linear map `A^g → M`, `(c_i) ↦ Σ_i X(c_i) g_i`.
fn generator_map<F: Field>(module: &Module<F>, gens: &[Vec<F::Elem>]) -> Matrix<F> {
    let a = module.algebra();
    let f = module.field();
    let cols: Vec<Vec<F::Elem>> = gens
        .iter()
        .flat_map(|g| (0..a.dim()).map(move |t| module.action(t).mul_vec(g)))
        .collect();
    Matrix::from_cols(f, module.dim(), &cols).expect("shape")
}

fn greedy_generators<F: Field>(module: &Module<F>, candidates: impl Iterator<Item = Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let f = module.field();
    let mut gens = Vec::new();
    let mut span = Subspace::zero(f, module.dim());
    for v in candidates {
        if span.is_full() {
            break;
        }
        if !span.contains(&v) {
            gens.push(v);
            span = module.submodule_generated(&gens);
        }
    }
    gens
}

/// Computes a presentation of a module with greedily chosen generators.
pub fn present<F: Field>(module: &Module<F>) -> Presentation<F> {
    let f = module.field();
    let d = module.dim();
    let a = module.algebra();
    let gens = greedy_generators(module, (0..d).map(|i| vecops::unit(f, d, i)));
    let g = gens.len();
    let kernel = generator_map(module, &gens).kernel();
    let free = Module::regular(a.clone(), module.side()).power(g);
    let rels = greedy_generators(&free, kernel.basis_vectors().into_iter());
    let r = rels.len();
    let da = a.dim();
    let mut relations = vec![a.zero_elem(); g * r];
    for (j, rel) in rels.iter().enumerate() {
        for i in 0..g {
            relations[i * r + j] = rel[i * da..(i + 1) * da].to_vec();
        }
    }
    Presentation { generators: gens, relations, relation_count: r }
}

/// A pp-formula generating the pp-type of `tuple` in `module`: `∃ȳ (x̄ = ȳA ∧ ȳH = 0)`.
pub fn pp_type_generator<F: Field>(module: &Module<F>, tuple: &[Vec<F::Elem>]) -> Result<PpFormula<F>> {
    let pres = present(module);
    pp_type_generator_with(module, &pres, tuple)
}

/// As [`pp_type_generator`], reusing a precomputed presentation.
pub fn pp_type_generator_with<F: Field>(
    module: &Module<F>,
    pres: &Presentation<F>,
    tuple: &[Vec<F::Elem>],
) -> Result<PpFormula<F>> {
    let a = module.algebra();
    let f = module.field();
    let da = a.dim();
    let g = pres.generators.len();
    let r = pres.relation_count;
    let n = tuple.len();
    let map = generator_map(module, &pres.generators);
    let mut coeffs = Vec::with_capacity(n);
    for v in tuple {
        if v.len() != module.dim() {
            return Err(Error::DimensionMismatch { expected: module.dim(), found: v.len() });
        }
        let c = if module.dim() == 0 { vecops::zero(f, g * da) } else { map.solve(v).ok_or(Error::NotExpressible)? };
        coeffs.push(c);
    }
    let m = n + r;
    let mut h = vec![a.zero_elem(); (n + g) * m];
    for s in 0..n {
        h[s * m + s] = a.unit().clone();
        for i in 0..g {
            h[(n + i) * m + s] = a.neg(&coeffs[s][i * da..(i + 1) * da]);
        }
    }
    for j in 0..r {
        for i in 0..g {
            h[(n + i) * m + n + j] = pres.relations[i * r + j].clone();
        }
    }
    PpFormula::new(a.clone(), module.side(), n, g, m, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_dvr;
    use crate::field::PrimeField;

    fn setup(n: usize) -> (Arc<Algebra<PrimeField>>, PrimeField) {
        let f = PrimeField::gf2();
        (Arc::new(truncated_dvr(n, f).unwrap()), f)
    }

    #[test]
    fn tautology_is_everything() {
        let (a, _) = setup(2);
        let m = Module::regular(a.clone(), Side::Right);
        let t = PpFormula::tautology(a, Side::Right, 1);
        assert!(t.eval(&m).unwrap().is_full());
    }

    #[test]
    fn annihilator_and_divisibility_of_x() {
        let (a, f) = setup(2);
        let m = Module::regular(a.clone(), Side::Right);
        let x = a.elem("x").unwrap();
        let ann = PpFormula::annihilator(a.clone(), Side::Right, &x).eval(&m).unwrap();
        let div = PpFormula::divisibility(a.clone(), Side::Right, &x).eval(&m).unwrap();
        let xbar = Subspace::from_vectors(f, 2, &[vec![f.zero(), f.one()]]);
        assert_eq!(ann, xbar);
        assert_eq!(div, xbar);
    }

    #[test]
    fn divisibility_implies_annihilator_but_not_conversely() {
        let (a, _) = setup(2);
        let x = a.elem("x").unwrap();
        let div = PpFormula::divisibility(a.clone(), Side::Right, &x);
        let ann = PpFormula::annihilator(a.clone(), Side::Right, &x);
        assert!(div.implies(&ann).unwrap());
        assert!(!ann.implies(&div).unwrap());
    }

    #[test]
    fn dual_of_annihilator_is_divisibility() {
        let (a, _) = setup(3);
        for i in 0..a.dim() {
            let b = a.basis_elem(i);
            let d = PpFormula::annihilator(a.clone(), Side::Right, &b).dual();
            assert_eq!(d.side(), Side::Left);
            assert!(d.equivalent(&PpFormula::divisibility(a.clone(), Side::Left, &b)).unwrap());
        }
    }

    #[test]
    fn dual_of_tautology_is_zero() {
        let (a, _) = setup(3);
        let t = PpFormula::tautology(a.clone(), Side::Right, 2);
        assert!(t.dual().equivalent(&PpFormula::zero(a, Side::Left, 2)).unwrap());
    }

    #[test]
    fn sum_and_meet_match_subspaces() {
        let (a, _) = setup(3);
        let x = a.elem("x").unwrap();
        let x2 = a.elem("x^2").unwrap();
        let phi = PpFormula::divisibility(a.clone(), Side::Right, &x2);
        let psi = PpFormula::annihilator(a.clone(), Side::Right, &x);
        let m = Module::regular(a.clone(), Side::Right);
        let (pv, qv) = (phi.eval(&m).unwrap(), psi.eval(&m).unwrap());
        assert_eq!(phi.pp_sum(&psi).unwrap().eval(&m).unwrap(), pv.sum(&qv).unwrap());
        assert_eq!(phi.pp_meet(&psi).unwrap().eval(&m).unwrap(), pv.meet(&qv).unwrap());
    }

    #[test]
    fn free_realization_of_tautology_is_free() {
        let (a, f) = setup(3);
        let r = PpFormula::tautology(a.clone(), Side::Right, 1).free_realization();
        assert_eq!(r.module.dim(), 3);
        assert_eq!(r.tuple[0], vec![f.one(), f.zero(), f.zero()]);
        let z = PpFormula::zero(a, Side::Right, 1).free_realization();
        assert_eq!(z.module.dim(), 0);
    }

    #[test]
    fn type_generator_of_x_is_divisibility() {
        let (a, f) = setup(2);
        let m = Module::regular(a.clone(), Side::Right);
        let x = a.elem("x").unwrap();
        let gen = pp_type_generator(&m, &[vec![f.zero(), f.one()]]).unwrap();
        assert!(gen.equivalent(&PpFormula::divisibility(a.clone(), Side::Right, &x)).unwrap());
        let simple = m.quotient(&m.submodule_generated(&[vec![f.zero(), f.one()]])).unwrap().0;
        let top = pp_type_generator(&simple, &[vec![f.one()]]).unwrap();
        assert!(top.equivalent(&PpFormula::annihilator(a, Side::Right, &x)).unwrap());
    }
}
