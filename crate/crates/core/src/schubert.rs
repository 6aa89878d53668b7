//! Cell ideals and tangent cones of Schubert varieties in type `A_n`.
//!
//! The open cell `N_- B/B` is identified with lower unitriangular matrices
//! `1 + x`, coordinates `x_{ij}` for `i > j`. For a reduced word
//! `a_1..a_l` of `w`, the map
//! `(t_1..t_l) ↦ (1 + t_1 E_{a_1+1,a_1}) ⋯ (1 + t_l E_{a_l+1,a_l})`
//! has dense image in the Schubert variety's affine part; eliminating the
//! `t`'s from its graph gives the cell ideal, and its ideal of lowest forms
//! cuts out the tangent cone at the origin.

use thiserror::Error;

use crate::groebner::{
    dimension_of_basis, elimination_ideal, lowest_form_ideal, GroebnerBasis, GroebnerError, Ideal,
};
use crate::poly::{MonomialOrder, PolyError, Polynomial, TableRef, VariableTable};
use crate::weyl::{reduced_word, Permutation, ReducedWord, WeylError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("window A_{k} at position {start} does not fit in A_{rank}")]
    WindowOutOfRange { k: usize, start: usize, rank: usize },
    #[error("permutation has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
}

/// Coordinate names `x{i}{j}`, `i > j`, row-major: `x21, x31, x32, x41, ...`.
pub fn coordinate_names(rank: usize) -> Vec<String> {
    (2..=rank + 1)
        .flat_map(|i| (1..i).map(move |j| format!("x{i}{j}")))
        .collect()
}

/// `(i, j)` for each coordinate, aligned with [`coordinate_names`].
pub fn coordinate_positions(rank: usize) -> Vec<(usize, usize)> {
    (2..=rank + 1).flat_map(|i| (1..i).map(move |j| (i, j))).collect()
}

pub fn coordinate_table(rank: usize) -> TableRef {
    VariableTable::new(coordinate_names(rank)).expect("distinct names")
}

fn coordinate_index(i: usize, j: usize) -> usize {
    // rows 2..i-1 hold 1 + 2 + ... + (i-2) entries
    (i - 1) * (i - 2) / 2 + (j - 1)
}

/// Square matrix of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentMatrixPoly {
    size: usize,
    entries: Vec<Polynomial>,
}

impl UnipotentMatrixPoly {
    pub fn identity(size: usize, table: &TableRef) -> Self {
        let entries = (0..size * size)
            .map(|k| {
                if k / size == k % size {
                    Polynomial::one(table)
                } else {
                    Polynomial::zero(table)
                }
            })
            .collect();
        UnipotentMatrixPoly { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[(row - 1) * self.size + (col - 1)]
    }

    pub fn mul(&self, other: &UnipotentMatrixPoly) -> UnipotentMatrixPoly {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let table = self.entries[0].table().clone();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Polynomial::zero(&table);
                for k in 0..n {
                    let (a, b) = (&self.entries[r * n + k], &other.entries[k * n + c]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        UnipotentMatrixPoly { size: n, entries }
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (1..=self.size).all(|r| {
            (1..=self.size).all(|c| match r.cmp(&c) {
                std::cmp::Ordering::Less => self.get(r, c).is_zero(),
                std::cmp::Ordering::Equal => *self.get(r, c) == Polynomial::one(self.get(r, c).table()),
                std::cmp::Ordering::Greater => true,
            })
        })
    }
}

/// `1 + t E_{i+1,i}`, the one-parameter subgroup of the negative simple root
/// `-α_i`, with `t` the variable at index `t_index` of `table`.
pub fn elementary_matrix(
    i: usize,
    t_index: usize,
    rank: usize,
    table: &TableRef,
) -> Result<UnipotentMatrixPoly, SchubertError> {
    if i == 0 || i > rank {
        return Err(WeylError::BadLetter { index: i, rank }.into());
    }
    let mut m = UnipotentMatrixPoly::identity(rank + 1, table);
    m.entries[i * (rank + 1) + (i - 1)] = Polynomial::var(table, t_index);
    Ok(m)
}

/// The parametrization of a reduced word: coordinate polynomials in `t_1..t_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    pub rank: usize,
    /// Table `t1..tl`.
    pub parameters: TableRef,
    /// Product of the elementary matrices, left to right.
    pub matrix: UnipotentMatrixPoly,
}

impl Parametrization {
    /// Polynomial for `x_{ij}`, `i > j`.
    pub fn coordinate(&self, i: usize, j: usize) -> &Polynomial {
        self.matrix.get(i, j)
    }

    /// `(name, polynomial)` in coordinate order.
    pub fn coordinates(&self) -> Vec<(String, Polynomial)> {
        coordinate_positions(self.rank)
            .into_iter()
            .map(|(i, j)| (format!("x{i}{j}"), self.coordinate(i, j).clone()))
            .collect()
    }
}

pub fn parametrization(word: &ReducedWord, rank: usize) -> Result<Parametrization, SchubertError> {
    let names: Vec<String> = (1..=word.len()).map(|k| format!("t{k}")).collect();
    let table = VariableTable::new(names)?;
    let mut m = UnipotentMatrixPoly::identity(rank + 1, &table);
    for (k, &a) in word.letters().iter().enumerate() {
        m = m.mul(&elementary_matrix(a, k, rank, &table)?);
    }
    Ok(Parametrization {
        rank,
        parameters: table,
        matrix: m,
    })
}

/// The ideal of the Schubert variety's affine part in the `x` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellIdeal {
    pub w: Permutation,
    pub rank: usize,
    /// Reduced graded-reverse-lex basis over [`coordinate_table`].
    pub ideal: Ideal,
}

/// Graph ideal `(x_{ij} - F_{ij}(t))` over the table `t1..tl, x21, ...`.
pub fn graph_ideal(param: &Parametrization) -> Result<Ideal, SchubertError> {
    let l = param.parameters.len();
    let ring = param
        .parameters
        .extended(&[], &coordinate_names(param.rank).iter().map(String::as_str).collect::<Vec<_>>())?;
    let t_map: Vec<Option<usize>> = (0..l).map(Some).collect();
    let mut gens = Vec::new();
    for (k, (_, f)) in param.coordinates().into_iter().enumerate() {
        let x = Polynomial::var(&ring, l + k);
        gens.push(&x - &f.remap(&ring, &t_map)?);
    }
    Ok(Ideal::new(&ring, gens)?)
}

pub fn cell_ideal_from_word(w: &Permutation, word: &ReducedWord) -> Result<CellIdeal, SchubertError> {
    let rank = w.rank();
    let param = parametrization(word, rank)?;
    let graph = graph_ideal(&param)?;
    let elim = elimination_ideal(&graph, word.len())?;
    let ideal = elim.to_table(&coordinate_table(rank))?;
    Ok(CellIdeal {
        w: w.clone(),
        rank,
        ideal,
    })
}

pub fn cell_ideal(w: &Permutation) -> Result<CellIdeal, SchubertError> {
    cell_ideal_from_word(w, &reduced_word(w))
}

/// Tangent cone at the origin, with its dimension checked against `l(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCone {
    pub w: Permutation,
    pub rank: usize,
    pub length: usize,
    pub dimension: i64,
    /// Reduced graded-reverse-lex basis over [`coordinate_table`].
    pub basis: GroebnerBasis,
}

impl TangentCone {
    pub fn ideal(&self) -> Ideal {
        self.basis.to_ideal()
    }

    /// `false` flags a violation of `dim C_w = l(w)`.
    pub fn dimension_matches_length(&self) -> bool {
        self.dimension == self.length as i64
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.basis.basis()
    }

    /// Reassembles a cone from stored generators (which must already be the
    /// reduced basis), recomputing the basis check and dimension.
    pub fn from_generators(w: &Permutation, generators: Vec<Polynomial>) -> Result<Self, SchubertError> {
        let rank = w.rank();
        let table = coordinate_table(rank);
        let gens = generators
            .into_iter()
            .map(|g| g.to_table(&table))
            .collect::<Result<Vec<_>, _>>()?;
        let basis = Ideal::new(&table, gens)?.groebner(&MonomialOrder::GRevLex);
        Self::from_basis(w, basis)
    }

    fn from_basis(w: &Permutation, basis: GroebnerBasis) -> Result<Self, SchubertError> {
        Ok(TangentCone {
            w: w.clone(),
            rank: w.rank(),
            length: w.length(),
            dimension: dimension_of_basis(&basis)?,
            basis,
        })
    }
}

pub fn tangent_cone_of_cell(cell: &CellIdeal) -> Result<TangentCone, SchubertError> {
    TangentCone::from_basis(&cell.w, lowest_form_ideal(&cell.ideal)?)
}

/// Bumped whenever the pipeline's output could change; stored results from
/// another version are ignored.
pub const PIPELINE_VERSION: u32 = 1;

pub fn tangent_cone(w: &Permutation) -> Result<TangentCone, SchubertError> {
    tangent_cone_of_cell(&cell_ideal(w)?)
}

/// `(x_{ij} : i - j ≥ 2)`: the annihilator of the derived subalgebra, shared
/// by all Coxeter elements.
pub fn coxeter_cone(rank: usize) -> Ideal {
    let table = coordinate_table(rank);
    let gens = coordinate_positions(rank)
        .into_iter()
        .enumerate()
        .filter(|(_, (i, j))| i - j >= 2)
        .map(|(k, _)| Polynomial::var(&table, k))
        .collect();
    Ideal::new(&table, gens).expect("same table")
}

/// Moves an ideal from rank `k` to rank `rank`, placing its coordinates on
/// the block of rows/columns `start..start+k` and adding every coordinate
/// outside that block as a generator.
pub fn subsystem_embed(cone: &Ideal, k: usize, start: usize, rank: usize) -> Result<Ideal, SchubertError> {
    if start == 0 || start + k > rank + 1 {
        return Err(SchubertError::WindowOutOfRange { k, start, rank });
    }
    let target = coordinate_table(rank);
    let map: Vec<Option<usize>> = coordinate_positions(k)
        .into_iter()
        .map(|(i, j)| Some(coordinate_index(i + start - 1, j + start - 1)))
        .collect();
    let mut gens = cone
        .generators()
        .iter()
        .map(|g| g.remap(&target, &map))
        .collect::<Result<Vec<_>, _>>()?;
    let window = start..=start + k;
    for (idx, (i, j)) in coordinate_positions(rank).into_iter().enumerate() {
        if !(window.contains(&i) && window.contains(&j)) {
            gens.push(Polynomial::var(&target, idx));
        }
    }
    Ok(Ideal::new(&target, gens)?)
}

/// A Chevalley generator of the Borel subalgebra of upper triangular
/// matrices, acting on strictly lower triangular `X` by `[ξ, X]` followed
/// by projection to the strictly lower part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BorelGenerator {
    /// `E_{kk} - E_{k+1,k+1}`
    H(usize),
    /// `E_{k,k+1}`
    E(usize),
}

impl BorelGenerator {
    pub fn all(rank: usize) -> Vec<BorelGenerator> {
        (1..=rank)
            .map(BorelGenerator::H)
            .chain((1..=rank).map(BorelGenerator::E))
            .collect()
    }

    fn matrix(&self, size: usize) -> Vec<i64> {
        let mut m = vec![0i64; size * size];
        match *self {
            BorelGenerator::H(k) => {
                m[(k - 1) * size + (k - 1)] = 1;
                m[k * size + k] = -1;
            }
            BorelGenerator::E(k) => m[(k - 1) * size + k] = 1,
        }
        m
    }
}

impl std::fmt::Display for BorelGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BorelGenerator::H(k) => write!(f, "h{k}"),
            BorelGenerator::E(k) => write!(f, "e{k}"),
        }
    }
}

/// Images `D(x_{ij})` of the coordinates under the derivation induced by
/// `xi`, as linear forms over [`coordinate_table`].
pub fn coadjoint_derivation(xi: BorelGenerator, rank: usize) -> Vec<Polynomial> {
    let size = rank + 1;
    let table = coordinate_table(rank);
    let a = xi.matrix(size);
    let x = |r: usize, c: usize| -> Option<usize> { (r > c).then(|| coordinate_index(r, c)) };
    coordinate_positions(rank)
        .into_iter()
        .map(|(i, j)| {
            // ([A, X])_{ij} = Σ_k A_{ik} X_{kj} - X_{ik} A_{kj}
            let mut terms = Vec::new();
            for k in 1..=size {
                let aik = a[(i - 1) * size + (k - 1)];
                if aik != 0 {
                    if let Some(v) = x(k, j) {
                        terms.push((v, aik));
                    }
                }
                let akj = a[(k - 1) * size + (j - 1)];
                if akj != 0 {
                    if let Some(v) = x(i, k) {
                        terms.push((v, -akj));
                    }
                }
            }
            let mut p = Polynomial::zero(&table);
            for (v, c) in terms {
                p = &p + &Polynomial::var(&table, v).scale(&crate::Rational::from(c));
            }
            p
        })
        .collect()
}

/// `D(f) = Σ ∂f/∂x_{ij} · D(x_{ij})`.
pub fn apply_derivation(f: &Polynomial, images: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero(f.table());
    for v in f.variables() {
        acc = &acc + &(&f.partial_derivative(v) * &images[v]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, radical_member, variety_equal};
    use crate::poly::parse_poly;
    use crate::weyl::{enumerate, parse_cycles};

    fn w(s: &str, rank: usize) -> Permutation {
        parse_cycles(s, rank).unwrap()
    }

    fn ideal(rank: usize, gens: &[&str]) -> Ideal {
        Ideal::parse(&coordinate_table(rank), gens).unwrap()
    }

    #[test]
    fn coordinate_layout() {
        assert_eq!(coordinate_names(3), ["x21", "x31", "x32", "x41", "x42", "x43"]);
        for (k, (i, j)) in coordinate_positions(4).into_iter().enumerate() {
            assert_eq!(coordinate_index(i, j), k);
        }
    }

    #[test]
    fn elementary_matrices() {
        let t = VariableTable::new(["t1"]).unwrap();
        let m = elementary_matrix(2, 0, 3, &t).unwrap();
        assert_eq!(m.get(3, 2), &Polynomial::var(&t, 0));
        assert!(m.is_lower_unitriangular());
        let m1 = elementary_matrix(1, 0, 3, &t).unwrap();
        assert_eq!(m1.get(2, 1), &Polynomial::var(&t, 0));
        assert!(m.mul(&m1).mul(&m).is_lower_unitriangular());
        assert!(elementary_matrix(4, 0, 3, &t).is_err());
        assert!(elementary_matrix(0, 0, 3, &t).is_err());
    }

    #[test]
    fn worked_example_parametrization() {
        let word = ReducedWord::new(vec![2, 1, 3, 2], 3).unwrap();
        let param = parametrization(&word, 3).unwrap();
        let t = &param.parameters;
        let expect = [
            ("x21", "t2"),
            ("x31", "t1*t2"),
            ("x32", "t1 + t4"),
            ("x41", "0"),
            ("x42", "t3*t4"),
            ("x43", "t3"),
        ];
        for ((name, f), (en, ef)) in param.coordinates().iter().zip(expect) {
            assert_eq!(name, en);
            assert_eq!(f, &parse_poly(ef, t).unwrap(), "{name}");
        }
        let empty = parametrization(&ReducedWord::new(vec![], 3).unwrap(), 3).unwrap();
        assert!(empty.coordinates().iter().all(|(_, f)| f.is_zero()));
        let one = parametrization(&ReducedWord::new(vec![1], 1).unwrap(), 1).unwrap();
        assert_eq!(one.coordinates()[0].1.to_string(), "t1");
    }

    #[test]
    fn worked_example_cell_ideal() {
        let cell = cell_ideal(&w("(13)(24)", 3)).unwrap();
        let expected = ideal(3, &["x41", "x43*x31 + x42*x21 - x43*x32*x21"]);
        assert_eq!(
            cell.ideal.generators(),
            buchberger(&expected, &MonomialOrder::GRevLex).basis()
        );
        // same result from the worked example's own word
        let given = ReducedWord::new(vec![2, 1, 3, 2], 3).unwrap();
        assert_eq!(cell_ideal_from_word(&cell.w, &given).unwrap().ideal, cell.ideal);
    }

    #[test]
    fn cell_ideal_extremes() {
        let e = cell_ideal(&Permutation::identity(4)).unwrap();
        assert_eq!(e.ideal.generators().len(), 6);
        assert!(cell_ideal(&w("(14)(23)", 3)).unwrap().ideal.is_zero());
    }

    #[test]
    fn tangent_cone_examples() {
        let c = tangent_cone(&w("(13)(24)", 3)).unwrap();
        assert!(variety_equal(&c.ideal(), &ideal(3, &["x41", "x43*x31 + x42*x21"])).unwrap());
        assert_eq!((c.length, c.dimension), (4, 4));

        let c = tangent_cone(&w("(14)", 3)).unwrap();
        assert!(variety_equal(&c.ideal(), &ideal(3, &["x31*x42 - x32*x41"])).unwrap());
        assert!(c.dimension_matches_length());

        let c = tangent_cone(&Permutation::identity(3)).unwrap();
        assert_eq!(c.ideal(), ideal(2, &["x21", "x31", "x32"]));
        assert_eq!(c.dimension, 0);
    }

    #[test]
    fn coxeter_cones() {
        assert_eq!(coxeter_cone(2), ideal(2, &["x31"]));
        assert_eq!(coxeter_cone(3), ideal(3, &["x31", "x41", "x42"]));
        assert!(coxeter_cone(1).is_zero());
    }

    #[test]
    fn embedding_examples() {
        let a2 = ideal(2, &["x31"]);
        let e = subsystem_embed(&a2, 2, 1, 3).unwrap();
        assert_eq!(e, ideal(3, &["x31", "x41", "x42", "x43"]));
        // shifting the window re-indexes
        let e = subsystem_embed(&a2, 2, 2, 3).unwrap();
        assert_eq!(e, ideal(3, &["x42", "x21", "x31", "x41"]));
        let origin = ideal(2, &["x21", "x31", "x32"]);
        let e = subsystem_embed(&origin, 2, 1, 3).unwrap();
        assert!(variety_equal(&e, &ideal(3, &["x21", "x31", "x32", "x41", "x42", "x43"])).unwrap());
        let a3 = ideal(3, &["x41", "x43*x31 + x42*x21"]);
        let e = subsystem_embed(&a3, 3, 1, 4).unwrap();
        assert_eq!(
            e,
            ideal(4, &["x41", "x43*x31 + x42*x21", "x51", "x52", "x53", "x54"])
        );
        assert!(matches!(
            subsystem_embed(&a2, 2, 3, 3),
            Err(SchubertError::WindowOutOfRange { .. })
        ));
    }

    #[test]
    fn derivation_example() {
        // [E12, X] for A_2: strictly lower part is -x31 E32
        let d = coadjoint_derivation(BorelGenerator::E(1), 2);
        let t = coordinate_table(2);
        assert!(d[0].is_zero());
        assert!(d[1].is_zero());
        assert_eq!(d[2], parse_poly("-x31", &t).unwrap());
        let f = parse_poly("x31", &t).unwrap();
        assert!(apply_derivation(&f, &d).is_zero());
        // h_k scale coordinates: weight vectors
        let h = coadjoint_derivation(BorelGenerator::H(1), 2);
        assert_eq!(h[0], parse_poly("-2*x21", &t).unwrap());
        assert_eq!(h[2], parse_poly("x32", &t).unwrap());
    }

    #[test]
    fn rank2_cones_are_invariant() {
        for perm in enumerate(2) {
            let c = tangent_cone(&perm).unwrap();
            let id = c.ideal();
            for xi in BorelGenerator::all(2) {
                let d = coadjoint_derivation(xi, 2);
                for g in c.generators() {
                    assert!(radical_member(&apply_derivation(g, &d), &id).unwrap(), "{perm} {xi} {g}");
                }
            }
        }
    }
}
