//! The Weyl group of type `A_n`, i.e. the symmetric group `S_{n+1}`.
//!
//! Permutations act on `1..=n+1`. Composition is function composition:
//! `compose(u, v)(i) = u(v(i))`. A word `[a_1, ..., a_l]` denotes
//! `s_{a_1} ∘ ... ∘ s_{a_l}` with `s_a` the transposition `(a a+1)`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("point {point} out of range 1..={max}")]
    OutOfRange { point: usize, max: usize },
    #[error("point {0} repeated")]
    RepeatedPoint(usize),
    #[error("malformed cycle notation at position {pos}: {msg}")]
    Malformed { pos: usize, msg: String },
    #[error("permutations of different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("simple reflection index {index} out of range for rank {rank}")]
    BadLetter { index: usize, rank: usize },
    #[error("not a permutation: {0:?}")]
    NotBijective(Vec<usize>),
}

/// A permutation of `1..=size` stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Permutation {
            images: (1..=size).collect(),
        }
    }

    pub fn from_one_line(images: Vec<usize>) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(WeylError::NotBijective(images));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// The simple reflection `s_a = (a a+1)` in `S_size`.
    pub fn simple(a: usize, size: usize) -> Result<Self, WeylError> {
        if a == 0 || a >= size {
            return Err(WeylError::BadLetter {
                index: a,
                rank: size.saturating_sub(1),
            });
        }
        let mut w = Self::identity(size);
        w.images.swap(a - 1, a);
        Ok(w)
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Rank `n` of the root system `A_n` this permutation belongs to.
    pub fn rank(&self) -> usize {
        self.size() - 1
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    /// Image of the point `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Self, WeylError> {
        if self.size() != other.size() {
            return Err(WeylError::SizeMismatch(self.size(), other.size()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        })
    }

    /// Number of inversions `#{i < j : w(i) > w(j)}`.
    pub fn length(&self) -> usize {
        let w = &self.images;
        (0..w.len())
            .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| w[i] > w[j])
            .count()
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size() + 1];
        let mut out = Vec::new();
        for start in 1..=self.size() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Cycle lengths (fixed points included) in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.size() - moved));
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_conjugate(&self, other: &Permutation) -> bool {
        self.size() == other.size() && self.cycle_type() == other.cycle_type()
    }

    /// `Some((lo, hi))`: the smallest and largest moved points.
    pub fn moved_range(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (1..=self.size()).filter(|&i| self.apply(i) != i).collect();
        Some((*moved.first()?, *moved.last()?))
    }

    /// Product of all simple reflections, each exactly once, in some order.
    pub fn is_coxeter_element(&self) -> bool {
        let word = reduced_word(self);
        let mut letters = word.letters().to_vec();
        letters.sort_unstable();
        letters == (1..self.size()).collect::<Vec<_>>()
    }

    /// Restricts to the window `start..start+size` of points, renumbered from 1.
    /// Fails if some point outside the window is moved.
    pub fn restrict(&self, start: usize, size: usize) -> Option<Permutation> {
        let end = start + size - 1;
        if start == 0 || end > self.size() {
            return None;
        }
        for i in 1..=self.size() {
            let inside = (start..=end).contains(&i);
            if !inside && self.apply(i) != i {
                return None;
            }
        }
        Some(Permutation {
            images: (start..=end).map(|i| self.apply(i) + 1 - start).collect(),
        })
    }

    /// Embeds into `S_size` acting on the points `start..start+self.size()`.
    pub fn embed(&self, start: usize, size: usize) -> Option<Permutation> {
        if start == 0 || start + self.size() - 1 > size {
            return None;
        }
        let mut images: Vec<usize> = (1..=size).collect();
        for i in 1..=self.size() {
            images[start + i - 2] = self.apply(i) + start - 1;
        }
        Some(Permutation { images })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self, self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_cycles(self))
    }
}

/// Parses cycle notation such as `(13)(24)` or `e` for an element of
/// `S_{rank+1}`. Points are single digits. `(e)` is accepted for the identity.
pub fn parse_cycles(text: &str, rank: usize) -> Result<Permutation, WeylError> {
    let size = rank + 1;
    let s = text.trim();
    if s == "e" || s == "(e)" {
        return Ok(Permutation::identity(size));
    }
    let mut images: Vec<usize> = (1..=size).collect();
    let mut used = vec![false; size + 1];
    let bytes = s.as_bytes();
    let mut i = 0;
    let malformed = |pos: usize, msg: &str| WeylError::Malformed {
        pos,
        msg: msg.to_string(),
    };
    if bytes.is_empty() {
        return Err(malformed(0, "empty input"));
    }
    while i < bytes.len() {
        match bytes[i] {
            b' ' => {
                i += 1;
                continue;
            }
            b'(' => {}
            _ => return Err(malformed(i, "expected `(`")),
        }
        i += 1;
        let mut cyc = Vec::new();
        loop {
            match bytes.get(i) {
                Some(b')') => {
                    i += 1;
                    break;
                }
                Some(b' ') => i += 1,
                Some(c) if c.is_ascii_digit() => {
                    let point = (c - b'0') as usize;
                    if point == 0 || point > size {
                        return Err(WeylError::OutOfRange { point, max: size });
                    }
                    if used[point] {
                        return Err(WeylError::RepeatedPoint(point));
                    }
                    used[point] = true;
                    cyc.push(point);
                    i += 1;
                }
                Some(_) => return Err(malformed(i, "expected a digit or `)`")),
                None => return Err(malformed(i, "unclosed cycle")),
            }
        }
        if cyc.is_empty() {
            return Err(malformed(i - 1, "empty cycle"));
        }
        for k in 0..cyc.len() {
            images[cyc[k] - 1] = cyc[(k + 1) % cyc.len()];
        }
    }
    Ok(Permutation { images })
}

pub fn print_cycles(w: &Permutation) -> String {
    let cycles = w.cycles();
    if cycles.is_empty() {
        return "e".to_string();
    }
    cycles
        .iter()
        .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<String>()))
        .collect()
}

/// A word in the simple reflections `s_1..s_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Wraps `letters` after checking the word is reduced in `S_{rank+1}`.
    pub fn new(letters: Vec<usize>, rank: usize) -> Result<Self, WeylError> {
        let w = ReducedWord { letters };
        let prod = w.product(rank)?;
        if prod.length() != w.len() {
            return Err(WeylError::Malformed {
                pos: 0,
                msg: "word is not reduced".into(),
            });
        }
        Ok(w)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `s_{a_1} ∘ ... ∘ s_{a_l}` in `S_{rank+1}`.
    pub fn product(&self, rank: usize) -> Result<Permutation, WeylError> {
        word_product(&self.letters, rank)
    }
}

/// Product of an arbitrary (not necessarily reduced) word.
pub fn word_product(letters: &[usize], rank: usize) -> Result<Permutation, WeylError> {
    let size = rank + 1;
    let mut acc = Permutation::identity(size);
    for &a in letters {
        acc = acc.compose(&Permutation::simple(a, size)?)?;
    }
    Ok(acc)
}

/// Reduced word by repeatedly splitting off the smallest left descent:
/// `w = s_a ∘ (s_a ∘ w)` where `w⁻¹(a) > w⁻¹(a+1)`.
pub fn reduced_word(w: &Permutation) -> ReducedWord {
    let size = w.size();
    let mut cur = w.clone();
    let mut letters = Vec::with_capacity(w.length());
    loop {
        let inv = cur.inverse();
        let Some(a) = (1..size).find(|&a| inv.apply(a) > inv.apply(a + 1)) else {
            break;
        };
        letters.push(a);
        cur = Permutation::simple(a, size)
            .expect("in range")
            .compose(&cur)
            .expect("same size");
    }
    ReducedWord { letters }
}

/// All of `S_{rank+1}` in lexicographic order of one-line notation.
pub fn enumerate(rank: usize) -> Vec<Permutation> {
    let size = rank + 1;
    let mut cur: Vec<usize> = (1..=size).collect();
    let mut out = vec![Permutation { images: cur.clone() }];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..size.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..size).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(Permutation { images: cur.clone() });
    }
    out
}
