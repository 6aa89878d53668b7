//! Buchberger's algorithm with the Gebauer–Möller pair update.
//!
//! Works on [`OrderedPoly`] values sorted under the active order. Pairs are
//! taken smallest lcm first under the active order itself (the normal
//! strategy), ties broken by sugar degree. The product and chain criteria
//! are applied when a new element enters the basis.

use crate::poly::{Monomial, MonomialOrder, OrderedPoly};
use crate::scalar::Rational;

struct Element {
    poly: OrderedPoly,
    mask: u64,
    sugar: u32,
    active: bool,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

// Bit i set when variable i (mod 64) occurs. A necessary condition for
// divisibility: mask(a) & !mask(b) == 0.
fn support_mask(m: &Monomial) -> u64 {
    m.support().fold(0u64, |acc, i| acc | (1u64 << (i % 64)))
}

pub(crate) struct Engine<'a> {
    ord: &'a MonomialOrder,
    elems: Vec<Element>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    pub fn new(ord: &'a MonomialOrder) -> Self {
        Engine {
            ord,
            elems: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn find_reducer(&self, m: &Monomial, mask: u64) -> Option<usize> {
        self.elems.iter().position(|e| {
            e.active && e.mask & !mask == 0 && e.poly.lm().divides(m)
        })
    }

    /// Full reduction of `p` by the active elements; result is monic.
    fn reduce(&self, mut p: OrderedPoly) -> OrderedPoly {
        let mut k = 0;
        while k < p.terms.len() {
            let (m, c) = &p.terms[k];
            match self.find_reducer(m, support_mask(m)) {
                Some(i) => {
                    let g = &self.elems[i].poly;
                    let q = m.div(g.lm()).expect("divides");
                    let coeff = c / g.lc();
                    reduce_at(&mut p, k, &coeff, &q, g, self.ord);
                }
                None => k += 1,
            }
        }
        p.make_monic();
        p
    }

    /// Adds a polynomial (already reduced and monic) and updates the pair set.
    fn insert(&mut self, h: OrderedPoly, sugar: u32) {
        let t = self.elems.len();
        let hlm = h.lm().clone();
        let hmask = support_mask(&hlm);

        // old pairs: chain criterion (B_k in Gebauer–Möller)
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].poly.lm().lcm(&hlm);
            let lj = elems[p.j].poly.lm().lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });

        // new pairs
        let cands: Vec<(usize, Monomial, bool)> = self
            .elems
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(i, e)| {
                let lm = e.poly.lm();
                (i, lm.lcm(&hlm), lm.is_coprime(&hlm))
            })
            .collect();
        // criterion M: drop (i, t) if some (j, t) has an lcm properly dividing it
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, c) in cands.iter().enumerate() {
            let dominated = cands
                .iter()
                .any(|d| d.1 != c.1 && d.1.divides(&c.1));
            if dominated {
                continue;
            }
            // criterion F: among equal lcms keep one, preferring a coprime pair
            let dup = cands.iter().enumerate().any(|(jdx, d)| {
                d.1 == c.1 && (d.2 && !c.2 || d.2 == c.2 && jdx < idx)
            });
            if !dup {
                kept.push(c.clone());
            }
        }
        for (i, lcm, coprime) in kept {
            if !coprime {
                let e = &self.elems[i];
                let sugar = (e.sugar + lcm.degree() - e.poly.lm().degree())
                    .max(sugar + lcm.degree() - hlm.degree());
                self.pairs.push(Pair { i, j: t, lcm, sugar });
            }
        }

        for e in &mut self.elems {
            if e.active && hlm.divides(e.poly.lm()) {
                e.active = false;
            }
        }
        self.elems.push(Element {
            poly: h,
            mask: hmask,
            sugar,
            active: true,
        });
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                ord.cmp(&pa.lcm, &pb.lcm)
                    .then_with(|| pa.sugar.cmp(&pb.sugar))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        Some(self.pairs.swap_remove(best))
    }

    fn s_poly(&self, p: &Pair) -> OrderedPoly {
        let (f, g) = (&self.elems[p.i].poly, &self.elems[p.j].poly);
        s_polynomial_ordered(f, g, &p.lcm, self.ord)
    }

    /// Runs to completion and returns the reduced basis; `[1]` for the unit ideal.
    pub fn run(mut self, input: Vec<OrderedPoly>) -> Vec<OrderedPoly> {
        let mut input: Vec<OrderedPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
        // smaller leading terms first: fewer elements get retired later
        input.sort_by(|a, b| self.ord.cmp(a.lm(), b.lm()));
        for p in input {
            let sugar = p.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
            let r = self.reduce(p);
            if r.is_zero() {
                continue;
            }
            if r.lm().is_one() {
                return vec![r];
            }
            self.insert(r, sugar);
        }
        while let Some(pair) = self.next_pair() {
            let s = self.s_poly(&pair);
            if s.is_zero() {
                continue;
            }
            let r = self.reduce(s);
            if r.is_zero() {
                continue;
            }
            if r.lm().is_one() {
                return vec![r];
            }
            self.insert(r, pair.sugar);
        }
        let active: Vec<OrderedPoly> = self
            .elems
            .into_iter()
            .filter(|e| e.active)
            .map(|e| e.poly)
            .collect();
        interreduce(active, self.ord)
    }
}

fn reduce_at(p: &mut OrderedPoly, k: usize, coeff: &Rational, q: &Monomial, g: &OrderedPoly, ord: &MonomialOrder) {
    let tail = OrderedPoly {
        terms: p.terms.split_off(k),
    };
    let reduced = tail.sub_scaled(coeff, q, g, ord);
    p.terms.extend(reduced.terms);
}

pub(crate) fn s_polynomial_ordered(f: &OrderedPoly, g: &OrderedPoly, lcm: &Monomial, ord: &MonomialOrder) -> OrderedPoly {
    let mf = lcm.div(f.lm()).expect("lcm divisible");
    let mg = lcm.div(g.lm()).expect("lcm divisible");
    let cf = f.lc().inv().expect("nonzero");
    let cg = g.lc().inv().expect("nonzero");
    // (lcm/LT f) f - (lcm/LT g) g
    let zero = OrderedPoly { terms: Vec::new() };
    let a = zero.sub_scaled(&-cf, &mf, f, ord);
    a.sub_scaled(&cg, &mg, g, ord)
}

/// Minimal + fully reduced + monic basis, sorted by decreasing leading monomial.
pub(crate) fn interreduce(mut polys: Vec<OrderedPoly>, ord: &MonomialOrder) -> Vec<OrderedPoly> {
    for p in &mut polys {
        p.make_monic();
    }
    polys.retain(|p| !p.is_zero());
    polys.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
    polys.dedup_by(|a, b| a.lm() == b.lm());
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let lms: Vec<Monomial> = polys.iter().map(|p| p.lm().clone()).collect();
    let minimal: Vec<OrderedPoly> = polys
        .into_iter()
        .enumerate()
        .filter(|(i, p)| {
            !lms.iter()
                .enumerate()
                .any(|(j, m)| j != *i && m.divides(p.lm()) && (m != p.lm() || j < *i))
        })
        .map(|(_, p)| p)
        .collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut engine = Engine::new(ord);
        for (j, q) in minimal.iter().enumerate() {
            if j != i {
                engine.elems.push(Element {
                    poly: q.clone(),
                    mask: support_mask(q.lm()),
                    sugar: 0,
                    active: true,
                });
            }
        }
        // the leading term is irreducible by the others, so only the tail moves
        out.push(engine.reduce(minimal[i].clone()));
    }
    out.sort_by(|a, b| ord.cmp(b.lm(), a.lm()));
    out
}
