use std::cmp::Ordering;
use std::fmt;

use super::Monomial;

/// Monomial orders. `Ordering::Greater` means "larger", i.e. leads.
///
/// `Block` compares the first `split` variables with `outer`; only when
/// those agree are the remaining variables compared with `inner`. With
/// `split = k` it is an elimination order for the first `k` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GRevLex,
    Block {
        split: usize,
        outer: Box<MonomialOrder>,
        inner: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn block(split: usize, outer: MonomialOrder, inner: MonomialOrder) -> Self {
        MonomialOrder::Block {
            split,
            outer: Box::new(outer),
            inner: Box::new(inner),
        }
    }

    /// Graded-reverse-lex on both sides of a block split after `k` variables.
    pub fn elimination(k: usize) -> Self {
        Self::block(k, MonomialOrder::GRevLex, MonomialOrder::GRevLex)
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrLex | MonomialOrder::GRevLex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        self.cmp_exponents(a.exponents(), b.exponents())
    }

    pub fn cmp_exponents(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GrLex => degree(a)
                .cmp(&degree(b))
                .then_with(|| lex(a, b)),
            MonomialOrder::GRevLex => degree(a)
                .cmp(&degree(b))
                .then_with(|| revlex(a, b)),
            MonomialOrder::Block { split, outer, inner } => {
                let k = (*split).min(a.len());
                outer
                    .cmp_exponents(&a[..k], &b[..k])
                    .then_with(|| inner.cmp_exponents(&a[k..], &b[k..]))
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::GrLex => f.write_str("grlex"),
            MonomialOrder::GRevLex => f.write_str("grevlex"),
            MonomialOrder::Block { split, outer, inner } => {
                write!(f, "block({split}, {outer}, {inner})")
            }
        }
    }
}

fn degree(a: &[u32]) -> u64 {
    a.iter().map(|&e| e as u64).sum()
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

// Ties on degree: the monomial with the smaller exponent in the last
// differing variable is larger.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
