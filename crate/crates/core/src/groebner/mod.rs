//! Ideals and Gröbner bases.
//!
//! [`buchberger`] produces the reduced basis of an ideal for a given order.
//! On top of it sit elimination, the ideal of lowest forms (tangent cone at
//! the origin), membership, radical membership, variety comparison and the
//! Krull dimension.

mod engine;

use thiserror::Error;

use crate::poly::{
    normal_form, same_table, Monomial, MonomialOrder, OrderedPoly, PolyError, Polynomial,
    TableRef, VariableTable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error("generator `{0}` does not vanish at the origin")]
    NotAtOrigin(String),
    #[error("cannot eliminate {k} variables from a ring with {n}")]
    BadElimination { k: usize, n: usize },
    #[error("too many variables ({0}) for the subset search")]
    TooManyVariables(usize),
}

/// A finite generating set over one variable table. Zero generators are
/// dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    table: TableRef,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(table: &TableRef, generators: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if !same_table(table, g.table()) {
                return Err(PolyError::TableMismatch.into());
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            table: table.clone(),
            generators: gens,
        })
    }

    pub fn zero(table: &TableRef) -> Self {
        Ideal {
            table: table.clone(),
            generators: Vec::new(),
        }
    }

    /// Parses each string with [`crate::parse_poly`].
    pub fn parse(table: &TableRef, gens: &[&str]) -> Result<Self, GroebnerError> {
        let polys = gens
            .iter()
            .map(|s| crate::poly::parse_poly(s, table))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(table, polys)
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner(&self, ord: &MonomialOrder) -> GroebnerBasis {
        buchberger(self, ord)
    }

    pub fn to_table(&self, target: &TableRef) -> Result<Ideal, GroebnerError> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_table(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(target, gens)
    }
}

/// A Gröbner basis together with the order it was computed for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    table: TableRef,
    order: MonomialOrder,
    basis: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by decreasing leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial(&self.order).expect("nonzero basis element"))
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if self.basis.is_empty() {
            if !same_table(&self.table, f.table()) {
                return Err(PolyError::TableMismatch.into());
            }
            return Ok(f.clone());
        }
        Ok(normal_form(f, &self.basis, &self.order)?.remainder)
    }

    /// Ideal membership: the normal form vanishes.
    pub fn contains(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal {
            table: self.table.clone(),
            generators: self.basis.clone(),
        }
    }

    /// Direct check of Buchberger's criterion: every S-polynomial of two
    /// basis elements reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = s_polynomial(&self.basis[i], &self.basis[j], &self.order)
                    .expect("nonzero basis");
                if !self.contains(&s).expect("same table") {
                    return false;
                }
            }
        }
        true
    }
}

/// `S(f, g) = (lcm/LT(f)) f - (lcm/LT(g)) g` for the leading terms under `ord`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial, GroebnerError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    if !same_table(f.table(), g.table()) {
        return Err(PolyError::TableMismatch.into());
    }
    let (fo, go) = (OrderedPoly::new(f, ord), OrderedPoly::new(g, ord));
    let lcm = fo.lm().lcm(go.lm());
    Ok(engine::s_polynomial_ordered(&fo, &go, &lcm, ord).to_poly(f.table()))
}

/// The reduced Gröbner basis of `ideal` under `ord`.
pub fn buchberger(ideal: &Ideal, ord: &MonomialOrder) -> GroebnerBasis {
    let input = ideal
        .generators
        .iter()
        .map(|g| OrderedPoly::new(g, ord))
        .collect();
    let basis = engine::Engine::new(ord)
        .run(input)
        .into_iter()
        .map(|p| p.to_poly(&ideal.table))
        .collect();
    GroebnerBasis {
        table: ideal.table.clone(),
        order: ord.clone(),
        basis,
        reduced: true,
    }
}

/// Intersection of `ideal` with the subring of all but its first `k`
/// variables, computed with a block order (graded-reverse-lex in each block).
/// The result lives over the table of the remaining variables and its
/// generators are the reduced Gröbner basis there.
pub fn elimination_ideal(ideal: &Ideal, k: usize) -> Result<Ideal, GroebnerError> {
    let n = ideal.table.len();
    if k > n {
        return Err(GroebnerError::BadElimination { k, n });
    }
    let kept = VariableTable::new(ideal.table.names()[k..].iter().cloned())?;
    let map: Vec<Option<usize>> = (0..n).map(|i| i.checked_sub(k)).collect();
    let gb = buchberger(ideal, &MonomialOrder::elimination(k));
    let mut gens = Vec::new();
    for g in gb.basis {
        if g.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)) {
            gens.push(g.remap(&kept, &map)?);
        }
    }
    Ideal::new(&kept, gens)
}

fn fresh_name(table: &VariableTable, base: &str) -> String {
    let mut name = base.to_string();
    while table.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// The ideal generated by the lowest forms of all elements of `ideal`,
/// returned as a reduced graded-reverse-lex basis.
///
/// Route: take a graded basis of `I` and homogenize it with a fresh variable
/// `h` (this generates the homogenization of `I`). In a basis of that ideal
/// under an order comparing `h`-degree first, each leading term sits in the
/// part of highest `h`-degree, which dehomogenizes to the lowest form.
/// Dehomogenizing and taking lowest forms then gives a basis of the cone.
pub fn lowest_form_ideal(ideal: &Ideal) -> Result<GroebnerBasis, GroebnerError> {
    for g in &ideal.generators {
        if !g.constant_term().is_zero() {
            return Err(GroebnerError::NotAtOrigin(g.to_string()));
        }
    }
    let grevlex = MonomialOrder::GRevLex;
    let gb = buchberger(ideal, &grevlex);
    if gb.is_unit() {
        return Err(GroebnerError::UnitIdeal);
    }
    if gb.is_zero_ideal() {
        return Ok(gb);
    }
    let h = fresh_name(&ideal.table, "h");
    let ext = ideal.table.extended(&[h.as_str()], &[])?;
    let to_ext: Vec<Option<usize>> = (0..ideal.table.len()).map(|i| Some(i + 1)).collect();
    let mut homog = Vec::with_capacity(gb.basis.len());
    for g in &gb.basis {
        homog.push(g.remap(&ext, &to_ext)?.homogenize(0)?);
    }
    let h_first = MonomialOrder::block(1, MonomialOrder::Lex, MonomialOrder::GRevLex);
    let hgb = buchberger(&Ideal::new(&ext, homog)?, &h_first);
    let back: Vec<Option<usize>> = (0..ext.len()).map(|i| i.checked_sub(1)).collect();
    let mut lowest = Vec::with_capacity(hgb.basis.len());
    for g in &hgb.basis {
        let d = g.dehomogenize(0).remap(&ideal.table, &back)?;
        lowest.push(d.lowest_form()?);
    }
    Ok(buchberger(&Ideal::new(&ideal.table, lowest)?, &grevlex))
}

/// Membership of `f` in the ideal generated by `gb`.
pub fn ideal_member(f: &Polynomial, gb: &GroebnerBasis) -> Result<bool, GroebnerError> {
    gb.contains(f)
}

/// Whether `f` vanishes on `V(I)`: `1 ∈ I + (1 - y f)` with a fresh `y`.
pub fn radical_member(f: &Polynomial, ideal: &Ideal) -> Result<bool, GroebnerError> {
    radical_member_with(f, ideal, &buchberger(ideal, &MonomialOrder::GRevLex))
}

fn radical_member_with(f: &Polynomial, ideal: &Ideal, gb: &GroebnerBasis) -> Result<bool, GroebnerError> {
    if gb.contains(f)? {
        return Ok(true);
    }
    if gb.is_zero_ideal() {
        // f ≠ 0 does not vanish on the whole space
        return Ok(false);
    }
    let y = fresh_name(&ideal.table, "y");
    let ext = ideal.table.extended(&[], &[y.as_str()])?;
    let mut gens = Vec::with_capacity(gb.basis.len() + 1);
    for g in &gb.basis {
        gens.push(g.to_table(&ext)?);
    }
    let yv = Polynomial::var(&ext, ext.len() - 1);
    gens.push(&Polynomial::one(&ext) - &(&yv * &f.to_table(&ext)?));
    Ok(buchberger(&Ideal::new(&ext, gens)?, &MonomialOrder::GRevLex).is_unit())
}

/// A generator of `i` that does not vanish on `V(j)`, if any. `None` means
/// `V(j) ⊆ V(i)`.
pub fn containment_witness(i: &Ideal, j: &Ideal) -> Result<Option<Polynomial>, GroebnerError> {
    if !same_table(&i.table, &j.table) {
        return Err(PolyError::TableMismatch.into());
    }
    let gb = buchberger(j, &MonomialOrder::GRevLex);
    for g in &i.generators {
        if !radical_member_with(g, j, &gb)? {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// `V(j) ⊆ V(i)`, i.e. every generator of `i` lies in `√j`.
pub fn variety_contains(i: &Ideal, j: &Ideal) -> Result<bool, GroebnerError> {
    Ok(containment_witness(i, j)?.is_none())
}

pub fn variety_equal(i: &Ideal, j: &Ideal) -> Result<bool, GroebnerError> {
    Ok(variety_contains(i, j)? && variety_contains(j, i)?)
}

/// Krull dimension of `V(I)`: the largest set of variables containing the
/// support of no leading monomial of a Gröbner basis. `-1` for the unit ideal.
pub fn ideal_dimension(ideal: &Ideal) -> Result<i64, GroebnerError> {
    dimension_of_basis(&buchberger(ideal, &MonomialOrder::GRevLex))
}

pub fn dimension_of_basis(gb: &GroebnerBasis) -> Result<i64, GroebnerError> {
    if gb.is_unit() {
        return Ok(-1);
    }
    let n = gb.table.len();
    if n > 26 {
        return Err(GroebnerError::TooManyVariables(n));
    }
    let masks: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0u32;
    for s in 0u32..(1u32 << n) {
        let size = s.count_ones();
        if size > best && masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    Ok(best as i64)
}
