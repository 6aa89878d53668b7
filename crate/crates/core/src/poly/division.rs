//! Multivariate division with remainder.

use std::cmp::Ordering;

use super::{Monomial, MonomialOrder, PolyError, Polynomial, TableRef};
use crate::scalar::Rational;

/// Terms sorted descending under a fixed order. Working representation for
/// reduction loops; converted back to [`Polynomial`] at the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct OrderedPoly {
    pub terms: Vec<(Monomial, Rational)>,
}

impl OrderedPoly {
    pub fn new(p: &Polynomial, ord: &MonomialOrder) -> Self {
        OrderedPoly {
            terms: p.sorted_terms(ord),
        }
    }

    pub fn to_poly(&self, table: &TableRef) -> Polynomial {
        Polynomial::from_terms(table, self.terms.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero leading coefficient");
                for (_, a) in &mut self.terms {
                    *a *= &inv;
                }
            }
        }
    }

    /// `self - c * m * g`, merged in order.
    pub fn sub_scaled(&self, c: &Rational, m: &Monomial, g: &OrderedPoly, ord: &MonomialOrder) -> OrderedPoly {
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        for (gm, gc) in &g.terms {
            let bm = gm.mul(m);
            let bc = -(gc * c);
            while i < a.len() && ord.cmp(&a[i].0, &bm) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].0 == bm {
                let s = &a[i].1 + &bc;
                if !s.is_zero() {
                    out.push((bm, s));
                }
                i += 1;
            } else {
                out.push((bm, bc));
            }
        }
        out.extend(a[i..].iter().cloned());
        OrderedPoly { terms: out }
    }
}

/// How `normal_form_with` picks the next term to cancel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// Textbook division: always work on the current leading term and use
    /// the first divisor whose leading monomial divides it.
    LeadingFirst,
    /// Cancel the smallest reducible term first, trying divisors from the
    /// end of the list.
    SmallestFirst,
}

/// Result of dividing `p` by `g_1..g_s`: `p = sum(quotients[i] * g_i) + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub remainder: Polynomial,
    pub quotients: Vec<Polynomial>,
}

pub fn normal_form(p: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Result<Division, PolyError> {
    normal_form_with(p, divisors, ord, ReductionStrategy::LeadingFirst)
}

pub fn normal_form_with(
    p: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
    strategy: ReductionStrategy,
) -> Result<Division, PolyError> {
    let table = p.table();
    for g in divisors {
        if g.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if !super::same_table(table, g.table()) {
            return Err(PolyError::TableMismatch);
        }
    }
    let gs: Vec<OrderedPoly> = divisors.iter().map(|g| OrderedPoly::new(g, ord)).collect();
    let mut quotients: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); gs.len()];
    let mut cur = OrderedPoly::new(p, ord);
    let remainder = match strategy {
        ReductionStrategy::LeadingFirst => {
            let mut rem = Vec::new();
            while !cur.is_zero() {
                let (lm, lc) = (cur.lm().clone(), cur.lc().clone());
                match gs.iter().position(|g| g.lm().divides(&lm)) {
                    Some(i) => {
                        let m = lm.div(gs[i].lm()).expect("divides");
                        let c = &lc / gs[i].lc();
                        cur = cur.sub_scaled(&c, &m, &gs[i], ord);
                        quotients[i].push((m, c));
                    }
                    None => {
                        rem.push(cur.terms.remove(0));
                    }
                }
            }
            rem
        }
        ReductionStrategy::SmallestFirst => loop {
            let hit = cur.terms.iter().rev().find_map(|(m, c)| {
                gs.iter()
                    .rposition(|g| g.lm().divides(m))
                    .map(|i| (i, m.clone(), c.clone()))
            });
            match hit {
                Some((i, tm, tc)) => {
                    let m = tm.div(gs[i].lm()).expect("divides");
                    let c = &tc / gs[i].lc();
                    cur = cur.sub_scaled(&c, &m, &gs[i], ord);
                    quotients[i].push((m, c));
                }
                None => break cur.terms,
            }
        },
    };
    Ok(Division {
        remainder: Polynomial::from_terms(table, remainder),
        quotients: quotients
            .into_iter()
            .map(|q| Polynomial::from_terms(table, q))
            .collect(),
    })
}
