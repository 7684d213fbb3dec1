//! The radical of the module category and its powers, computed inside `Hom(A, B)`.

use alloc::vec::Vec;

use crate::decompose::{decompose, find_isomorphism_indecomposable, indecomposables_isomorphic, Decomposition};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vecops, Matrix};
use crate::module::Module;
use crate::pp::{pp_type_generator_with, present};
use crate::subspace::Subspace;

/// A subspace of `Hom(A, B)` expressed in coordinates of a fixed hom-space basis.
#[derive(Clone, Debug)]
pub struct HomSubspace<F: Field> {
    pub hom_basis: Vec<Matrix<F>>,
    pub coords: Subspace<F>,
}

impl<F: Field> HomSubspace<F> {
    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    /// Coordinates of `f` in the hom basis, if `f` is a homomorphism.
    pub fn coordinates(&self, f: &Matrix<F>) -> Option<Vec<F::Elem>> {
        let field = f.field();
        if self.hom_basis.is_empty() {
            return f.is_zero().then(Vec::new);
        }
        let cols: Vec<_> = self.hom_basis.iter().map(|b| b.to_flat()).collect();
        Matrix::from_cols(field, f.rows() * f.cols(), &cols).ok()?.solve(&f.to_flat())
    }

    pub fn contains(&self, f: &Matrix<F>) -> bool {
        self.coordinates(f).is_some_and(|c| self.coords.contains(&c))
    }

    /// Basis of the subspace as matrices.
    pub fn matrices(&self) -> Vec<Matrix<F>> {
        self.coords.basis_vectors().iter().map(|c| combine(&self.hom_basis, c)).collect()
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.coords.leq(&other.coords)
    }
}

fn combine<F: Field>(basis: &[Matrix<F>], c: &[F::Elem]) -> Matrix<F> {
    let f = basis[0].field();
    let mut g = Matrix::zeros(f, basis[0].rows(), basis[0].cols());
    for (x, b) in c.iter().zip(basis) {
        g.add_scaled(x, b);
    }
    g
}

fn span_of<F: Field>(src: &Module<F>, hom_basis: Vec<Matrix<F>>, maps: &[Matrix<F>]) -> Result<HomSubspace<F>> {
    let f = src.field();
    let r = hom_basis.len();
    let mut h = HomSubspace { hom_basis, coords: Subspace::zero(f, r) };
    let mut coords = Vec::with_capacity(maps.len());
    for m in maps {
        coords.push(h.coordinates(m).ok_or_else(|| Error::StructureViolation("composite is not a homomorphism".into()))?);
    }
    h.coords = Subspace::from_vectors(f, r, &coords);
    Ok(h)
}

/// `rad(A, B)` from decompositions of both arguments.
pub fn radical_subspace<F: Field>(a: &Module<F>, b: &Module<F>) -> Result<HomSubspace<F>> {
    let da = decompose(a)?;
    let db = decompose(b)?;
    radical_with(a, b, &da, &db)
}

/// As [`radical_subspace`], reusing decompositions.
pub fn radical_with<F: Field>(
    a: &Module<F>,
    b: &Module<F>,
    da: &Decomposition<F>,
    db: &Decomposition<F>,
) -> Result<HomSubspace<F>> {
    let f = a.field();
    let hom = a.hom_space(b)?;
    let r = hom.len();
    let mut constraints: Vec<Vec<F::Elem>> = Vec::new();
    for sa in &da.summands {
        for sb in &db.summands {
            let Some(theta) = find_isomorphism_indecomposable(&sa.module, &sb.module)? else {
                continue;
            };
            let theta_inv = theta.inverse().expect("isomorphism");
            // c ↦ coordinates in End(sa) of θ⁻¹ π_b f ι_a must land in the radical
            let ann = sa.end.radical.annihilator();
            let mut block: Vec<Vec<F::Elem>> = Vec::with_capacity(r);
            for h in &hom {
                let g = theta_inv.mul(&sb.projection).mul(h).mul(&sa.embedding);
                block.push(sa.end.coordinates(&g).ok_or_else(|| Error::StructureViolation("component is not an endomorphism".into()))?);
            }
            for w in ann.basis_vectors() {
                let row: Vec<F::Elem> = block
                    .iter()
                    .map(|col| col.iter().zip(&w).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y))))
                    .collect();
                constraints.push(row);
            }
        }
    }
    let coords = if constraints.is_empty() {
        Subspace::full(f, r)
    } else {
        Matrix::from_rows(f, r, &constraints)?.kernel()
    };
    Ok(HomSubspace { hom_basis: hom, coords })
}

/// Indecomposables through which radical powers are composed.
#[derive(Clone, Debug)]
pub struct RadicalUniverse<F: Field> {
    pub indecomposables: Vec<Module<F>>,
    decomps: Vec<Decomposition<F>>,
}

impl<F: Field> RadicalUniverse<F> {
    /// All pairwise non-isomorphic indecomposable summands of the given modules.
    pub fn new(modules: &[Module<F>]) -> Result<Self> {
        let mut reps: Vec<Module<F>> = Vec::new();
        for m in modules {
            for (s, _) in decompose(m)?.multiplicities() {
                let mut known = false;
                for r in &reps {
                    if indecomposables_isomorphic(r, &s)? {
                        known = true;
                        break;
                    }
                }
                if !known {
                    reps.push(s);
                }
            }
        }
        let decomps = reps.iter().map(decompose).collect::<Result<Vec<_>>>()?;
        Ok(RadicalUniverse { indecomposables: reps, decomps })
    }

    /// Adds the summands of `a` and `b` to a copy of the universe.
    pub fn including(&self, extra: &[&Module<F>]) -> Result<Self> {
        let mut mods = self.indecomposables.clone();
        mods.extend(extra.iter().map(|m| (*m).clone()));
        Self::new(&mods)
    }

    /// `rad^t(A, B)` for `t ≥ 1`, composing through the universe (extended by the summands of A and B).
    pub fn radical_power(&self, a: &Module<F>, b: &Module<F>, t: usize) -> Result<HomSubspace<F>> {
        Ok(self.radical_chain(a, b, t)?.pop().expect("t ≥ 1"))
    }

    /// `[rad^1, …, rad^t]` of `Hom(A, B)`.
    pub fn radical_chain(&self, a: &Module<F>, b: &Module<F>, t: usize) -> Result<Vec<HomSubspace<F>>> {
        if t == 0 {
            return Err(Error::InvalidParameter("radical power must be at least 1".into()));
        }
        let u = self.including(&[a, b])?;
        let da = decompose(a)?;
        let db = decompose(b)?;
        let xs = &u.indecomposables;
        // rad(A, X), rad(X, Y), rad(X, B)
        let from_a: Vec<HomSubspace<F>> =
            xs.iter().zip(&u.decomps).map(|(x, dx)| radical_with(a, x, &da, dx)).collect::<Result<_>>()?;
        let mut between: Vec<Vec<Vec<Matrix<F>>>> = Vec::with_capacity(xs.len());
        for (y, dy) in xs.iter().zip(&u.decomps) {
            let mut row = Vec::with_capacity(xs.len());
            for (x, dx) in xs.iter().zip(&u.decomps) {
                row.push(radical_with(y, x, dy, dx)?.matrices());
            }
            between.push(row);
        }
        let to_b: Vec<Vec<Matrix<F>>> = xs
            .iter()
            .zip(&u.decomps)
            .map(|(x, dx)| radical_with(x, b, dx, &db).map(|h| h.matrices()))
            .collect::<Result<_>>()?;

        let mut chain = alloc::vec![radical_with(a, b, &da, &db)?];
        let hom_ab = chain[0].hom_basis.clone();
        // level[x] = basis of rad^{s}(A, X)
        let mut level: Vec<Vec<Matrix<F>>> = from_a.iter().map(|h| h.matrices()).collect();
        for _ in 1..t {
            let mut maps = Vec::new();
            for (xi, fs) in level.iter().enumerate() {
                for fm in fs {
                    for g in &to_b[xi] {
                        maps.push(g.mul(fm));
                    }
                }
            }
            chain.push(span_of(a, hom_ab.clone(), &maps)?);
            let mut next = Vec::with_capacity(xs.len());
            for (x_to, x) in xs.iter().enumerate() {
                let mut maps = Vec::new();
                for (y, fs) in level.iter().enumerate() {
                    for fm in fs {
                        for g in &between[y][x_to] {
                            maps.push(g.mul(fm));
                        }
                    }
                }
                let hom_ax = a.hom_space(x)?;
                next.push(span_of(a, hom_ax, &maps)?.matrices());
            }
            level = next;
        }
        Ok(chain)
    }

    /// Smallest `s` with `rad^s(A, B) = rad^{s+1}(A, B)`, searching up to `max`.
    pub fn stabilization_index(&self, a: &Module<F>, b: &Module<F>, max: usize) -> Result<Option<usize>> {
        let chain = self.radical_chain(a, b, max + 1)?;
        for s in 0..max {
            if chain[s].coords == chain[s + 1].coords {
                return Ok(Some(s + 1));
            }
        }
        Ok(None)
    }
}

/// Lazily filled table deciding whether the pp-type strictly grows from `a ∈ A` to `b ∈ B`.
pub struct PpStrictness<F: Field> {
    a: Module<F>,
    b: Module<F>,
    generators: Vec<Option<crate::pp::PpFormula<F>>>,
    b_elems: Vec<Vec<F::Elem>>,
    b_pres: crate::pp::Presentation<F>,
}

impl<F: Field> PpStrictness<F> {
    /// Requires a finite field (elements of `B` are enumerated).
    pub fn new(a: &Module<F>, b: &Module<F>) -> Result<Self> {
        a.check_compatible(b)?;
        let f = b.field();
        if f.elements().is_none() {
            return Err(Error::Unsupported("pp-type tables need a finite field".into()));
        }
        let b_elems = vecops::enumerate(f, b.dim());
        Ok(PpStrictness {
            a: a.clone(),
            b: b.clone(),
            generators: alloc::vec![None; b_elems.len()],
            b_elems,
            b_pres: present(b),
        })
    }

    fn index_of(&self, v: &[F::Elem]) -> usize {
        self.b_elems.binary_search_by(|x| x.as_slice().cmp(v)).expect("element of B")
    }

    /// `pp(b) ⊋ pp(a)`, i.e. `a` fails the generator of the pp-type of `b`.
    pub fn strict(&mut self, a: &[F::Elem], b: &[F::Elem]) -> Result<bool> {
        let i = self.index_of(b);
        if self.generators[i].is_none() {
            self.generators[i] = Some(pp_type_generator_with(&self.b, &self.b_pres, &[b.to_vec()])?);
        }
        let psi = self.generators[i].as_ref().expect("filled");
        Ok(!psi.holds(&self.a, &[a.to_vec()])?)
    }

    /// Whether `f` strictly increases the pp-type of every non-zero element of `A`.
    pub fn increases_all(&mut self, f: &Matrix<F>) -> Result<bool> {
        let field = f.field();
        for a in vecops::enumerate(field, self.a.dim()) {
            if vecops::is_zero(field, &a) {
                continue;
            }
            let b = f.mul_vec(&a);
            if !self.strict(&a, &b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{truncated_dvr, Algebra};
    use crate::field::PrimeField;
    use crate::module::Side;
    use alloc::sync::Arc;

    fn uniserial(a: &Arc<Algebra<PrimeField>>, j: usize) -> Module<PrimeField> {
        let f = a.field();
        let mut shift = Matrix::zeros(f, j, j);
        for i in 0..j.saturating_sub(1) {
            shift.set(i + 1, i, f.one());
        }
        Module::from_generator_action(a.clone(), Side::Right, j, &[(a.elem("x").unwrap(), shift)]).unwrap()
    }

    #[test]
    fn identity_is_not_radical() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        let m = uniserial(&a, 2);
        let r = radical_subspace(&m, &m).unwrap();
        assert!(!r.contains(&Matrix::identity(m.field(), 2)));
        assert_eq!(r.dim(), 1);
    }

    #[test]
    fn maps_between_distinct_indecomposables_are_radical() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        let (s, m) = (uniserial(&a, 1), uniserial(&a, 2));
        let r = radical_subspace(&s, &m).unwrap();
        assert_eq!(r.dim(), s.hom_dim(&m).unwrap());
    }

    #[test]
    fn radical_powers_descend_and_stabilize() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        let mods: Vec<_> = (1..=3).map(|j| uniserial(&a, j)).collect();
        let u = RadicalUniverse::new(&mods).unwrap();
        let chain = u.radical_chain(&mods[2], &mods[2], 5).unwrap();
        for w in chain.windows(2) {
            assert!(w[1].leq(&w[0]).unwrap());
        }
        assert!(u.stabilization_index(&mods[2], &mods[2], 6).unwrap().is_some());
    }

    #[test]
    fn pp_criterion_on_simple_inclusion() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        let (s, m) = (uniserial(&a, 1), uniserial(&a, 2));
        let mut t = PpStrictness::new(&s, &m).unwrap();
        for h in s.hom_space(&m).unwrap() {
            assert!(t.increases_all(&h).unwrap());
        }
        let mut t2 = PpStrictness::new(&m, &m).unwrap();
        assert!(!t2.increases_all(&Matrix::identity(m.field(), 2)).unwrap());
    }
}
