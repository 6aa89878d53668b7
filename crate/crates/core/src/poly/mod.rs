//! Multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] carries a shared [`VariableTable`] and a list of terms
//! with nonzero coefficients. Terms are kept in one fixed canonical order
//! (see [`canonical_cmp`]) so that equality is structural; algorithms that
//! need a specific [`MonomialOrder`] sort on demand.

mod division;
mod order;
mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::Rational;

pub use division::{normal_form, normal_form_with, Division, ReductionStrategy};
pub(crate) use division::OrderedPoly;
pub use order::MonomialOrder;
pub use parse::parse_poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live over different variable tables")]
    TableMismatch,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by a non-constant or zero expression at position {0}")]
    BadDivision(usize),
}

/// Ordered list of variable names, fixed for its lifetime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub type TableRef = Arc<VariableTable>;

impl VariableTable {
    pub fn new<I, S>(names: I) -> Result<TableRef, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VariableTable { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// New table with `front` placed before the existing variables and
    /// `back` after them.
    pub fn extended(&self, front: &[&str], back: &[&str]) -> Result<TableRef, PolyError> {
        VariableTable::new(
            front
                .iter()
                .map(|s| s.to_string())
                .chain(self.names.iter().cloned())
                .chain(back.iter().map(|s| s.to_string())),
        )
    }
}

pub fn same_table(a: &TableRef, b: &TableRef) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

type Exponents = SmallVec<[u32; 24]>;

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .expect("monomial degree overflow");
        Monomial {
            exps: SmallVec::from_vec(exps),
            degree,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial {
            exps,
            degree: self
                .degree
                .checked_add(other.degree)
                .expect("monomial degree overflow"),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Canonical storage order: higher total degree first, then the monomial
/// with the larger exponent in the highest-indexed differing variable.
pub fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree.cmp(&b.degree).then_with(|| {
        for (x, y) in a.exps.iter().zip(&b.exps).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// A polynomial with rational coefficients over a [`VariableTable`].
#[derive(Clone)]
pub struct Polynomial {
    table: TableRef,
    // descending under `canonical_cmp`, no zero coefficients
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(table: &TableRef) -> Self {
        Polynomial {
            table: table.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(table: &TableRef, c: Rational) -> Self {
        Self::from_terms(table, vec![(Monomial::one(table.len()), c)])
    }

    pub fn one(table: &TableRef) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn var(table: &TableRef, i: usize) -> Self {
        Self::from_terms(table, vec![(Monomial::var(table.len(), i), Rational::one())])
    }

    pub fn var_named(table: &TableRef, name: &str) -> Result<Self, PolyError> {
        let i = table
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(table, i))
    }

    pub fn monomial(table: &TableRef, m: Monomial, c: Rational) -> Self {
        Self::from_terms(table, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(table: &TableRef, mut terms: Vec<(Monomial, Rational)>) -> Self {
        assert!(
            terms.iter().all(|(m, _)| m.len() == table.len()),
            "monomial length does not match variable table"
        );
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if matches!(out.last(), Some((_, c)) if c.is_zero()) {
            out.pop();
        }
        Polynomial {
            table: table.clone(),
            terms: out,
        }
    }

    /// Terms already sorted under `canonical_cmp` with no zeros and no
    /// duplicates.
    pub(crate) fn from_sorted_terms(table: &TableRef, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| canonical_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            table: table.clone(),
            terms,
        }
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    /// Highest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Lowest total degree; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    fn check_table(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(PolyError::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_table(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_table(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_table(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Ok(Polynomial::from_terms(&self.table, terms))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Rational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match canonical_cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial::from_sorted_terms(&self.table, out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial::from_sorted_terms(&self.table, terms)
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        // canonical_cmp is a monomial order, so the product stays sorted
        let terms = self
            .terms
            .iter()
            .map(|(a, b)| (a.mul(m), b * c))
            .collect();
        Polynomial::from_sorted_terms(&self.table, terms)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.table);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(Monomial, Rational)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        t
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Rational), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .cloned()
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<Monomial, PolyError> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Scales so the leading coefficient under `ord` is 1. Zero stays zero.
    pub fn monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Sum of the terms of minimal total degree.
    pub fn lowest_form(&self) -> Result<Polynomial, PolyError> {
        let d = self.min_degree().ok_or(PolyError::ZeroPolynomial)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        Ok(Polynomial::from_sorted_terms(&self.table, terms))
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        Polynomial::from_sorted_terms(&self.table, terms)
    }

    /// Homogenizes with the variable at index `h`, which must not occur in
    /// `self`. Each term is padded with powers of `h` up to the total degree.
    pub fn homogenize(&self, h: usize) -> Result<Polynomial, PolyError> {
        let d = self.total_degree().ok_or(PolyError::ZeroPolynomial)?;
        assert!(
            self.terms.iter().all(|(m, _)| m.exponents()[h] == 0),
            "homogenizing variable already occurs in the polynomial"
        );
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e[h] = d - m.degree();
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        Ok(Polynomial::from_terms(&self.table, terms))
    }

    /// Substitutes `1` for the variable at index `h`.
    pub fn dehomogenize(&self, h: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e[h] = 0;
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(&self.table, terms)
    }

    /// Moves the polynomial to another table. `map[i]` is the target index
    /// of variable `i`, or `None` if the variable must not occur.
    pub fn remap(&self, target: &TableRef, map: &[Option<usize>]) -> Result<Polynomial, PolyError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += x,
                    None => return Err(PolyError::UnknownVariable(self.table.name(i).to_string())),
                }
            }
            terms.push((Monomial::from_exponents(e), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Moves the polynomial to `target` by matching variable names.
    pub fn to_table(&self, target: &TableRef) -> Result<Polynomial, PolyError> {
        if same_table(&self.table, target) {
            return Ok(Polynomial {
                table: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self
            .table
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        self.remap(target, &map)
    }

    /// Variables (indices) that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.table.len()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[i] > 0)
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                let k = e[i];
                e[i] -= 1;
                (Monomial::from_exponents(e), c * &Rational::from(k as i64))
            })
            .collect();
        Polynomial::from_terms(&self.table, terms)
    }

    /// Replaces every variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        assert_eq!(images.len(), self.table.len());
        let target = images
            .first()
            .map(|p| p.table.clone())
            .unwrap_or_else(|| self.table.clone());
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&images[i].pow(e))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Multiplies by the lcm of the denominators and divides by the gcd of
    /// the numerators, leaving a positive leading coefficient under the
    /// canonical order.
    pub fn primitive_part(&self) -> Polynomial {
        use crate::scalar::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = Integer::one();
        for (_, c) in &self.terms {
            let d = c.denom();
            let g = den.gcd(&d);
            den = &den * &Rational::new(d, g).unwrap().numer();
        }
        let scaled = self.scale(&Rational::from(den));
        let mut g = Integer::zero();
        for (_, c) in &scaled.terms {
            g = g.gcd(&c.numer());
        }
        let mut inv = Rational::new(Integer::one(), g).unwrap();
        if scaled.terms[0].1.is_negative() {
            inv = -inv;
        }
        scaled.scale(&inv)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: `x43*x31 + x42*x21`, `-3/2*x21^2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let mut first = true;
            for i in (0..m.len()).rev() {
                let e = m.exponents()[i];
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.table.name(i))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands use different variable tables.
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial table mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
