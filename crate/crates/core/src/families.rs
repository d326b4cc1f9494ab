//! Constructors for the built-in code families, permutation codes with
//! their action machinery, the block-repetition blow-up, and the family
//! classifier for diagonally neighbour transitive codes.

use std::fmt;

use serde::Serialize;

use crate::code::Code;
use crate::error::{Error, Result};
use crate::hamming::{HammingAut, Space, Symbol, Vertex};
use crate::perm::{normalizer_in_sym, PermGroup, Permutation};
use crate::Caps;

/// Which family a diagonally neighbour transitive code belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyTag {
    /// A one-word code on a constant tuple.
    Singleton { a: Symbol },
    /// Rep(m,q): the q constant words.
    Repetition { m: usize, q: usize },
    /// Inj(m,q): all repetition-free tuples, m < q.
    Injection { m: usize, q: usize },
    /// W([m/2],2): binary words of weight (m±1)/2, m odd.
    MiddleWeight { m: usize },
    /// A subset of All(pq,q): every letter exactly p times per word.
    FpaSubset { p: usize, q: usize },
    /// Not diagonally neighbour transitive (or outside every family).
    None,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Singleton { a } => write!(f, "Singleton(a={a})"),
            FamilyTag::Repetition { m, q } => write!(f, "Repetition(m={m},q={q})"),
            FamilyTag::Injection { m, q } => write!(f, "Injection(m={m},q={q})"),
            FamilyTag::MiddleWeight { m } => write!(f, "MiddleWeight(m={m})"),
            FamilyTag::FpaSubset { p, q } => write!(f, "FpaSubset(p={p},q={q})"),
            FamilyTag::None => write!(f, "None"),
        }
    }
}

/// Rep(m,q): the q constant tuples.
pub fn rep(m: usize, q: usize) -> Result<Code> {
    let space = Space::new(m, q)?;
    let words = (0..q).map(|a| Vertex::new(vec![a as Symbol; m])).collect();
    Code::in_space(space, words)
}

/// Inj(m,q): all tuples with pairwise distinct entries; requires m < q.
pub fn inj(m: usize, q: usize) -> Result<Code> {
    let space = Space::new(m, q)?;
    if m >= q {
        return Err(Error::Invalid(format!(
            "injection code requires m < q, got m={m}, q={q}"
        )));
    }
    let mut words = Vec::new();
    let mut entries: Vec<Symbol> = Vec::with_capacity(m);
    let mut used = vec![false; q];
    fn extend(
        m: usize,
        q: usize,
        entries: &mut Vec<Symbol>,
        used: &mut Vec<bool>,
        words: &mut Vec<Vertex>,
    ) {
        if entries.len() == m {
            words.push(Vertex::new(entries.clone()));
            return;
        }
        for a in 0..q {
            if !used[a] {
                used[a] = true;
                entries.push(a as Symbol);
                extend(m, q, entries, used, words);
                entries.pop();
                used[a] = false;
            }
        }
    }
    extend(m, q, &mut entries, &mut used, &mut words);
    Code::in_space(space, words)
}

/// W([m/2],2): all binary words of weight (m−1)/2 or (m+1)/2; m odd, ≥ 3.
pub fn w_half(m: usize) -> Result<Code> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Invalid(format!(
            "middle-weight code requires odd m >= 3, got m={m}"
        )));
    }
    let space = Space::new(m, 2)?;
    let lo = (m - 1) / 2;
    let hi = m.div_ceil(2);
    let words = space
        .vertices()
        .filter(|v| {
            let w = v.entries().iter().filter(|&&a| a == 1).count();
            w == lo || w == hi
        })
        .collect();
    Code::in_space(space, words)
}

/// All(pq,q): every vertex of H(pq,q) in which each letter occurs exactly
/// p times. The largest frequency permutation array of its shape.
pub fn all_fpa(p: usize, q: usize) -> Result<Code> {
    if p == 0 {
        return Err(Error::Invalid(
            "blow-up parameter p must be positive".into(),
        ));
    }
    let m = p * q;
    let space = Space::new(m, q)?;
    let mut words = Vec::new();
    let mut remaining = vec![p; q];
    let mut entries: Vec<Symbol> = Vec::with_capacity(m);
    fn extend(
        m: usize,
        remaining: &mut Vec<usize>,
        entries: &mut Vec<Symbol>,
        words: &mut Vec<Vertex>,
    ) {
        if entries.len() == m {
            words.push(Vertex::new(entries.clone()));
            return;
        }
        for a in 0..remaining.len() {
            if remaining[a] > 0 {
                remaining[a] -= 1;
                entries.push(a as Symbol);
                extend(m, remaining, entries, words);
                entries.pop();
                remaining[a] += 1;
            }
        }
    }
    extend(m, &mut remaining, &mut entries, &mut words);
    Code::in_space(space, words)
}

/// α(g) ∈ H(q,q): the tuple whose i-th entry is the image of i under g.
pub fn perm_vertex(g: &Permutation) -> Vertex {
    Vertex::new((0..g.n()).map(|i| g.image(i) as Symbol).collect())
}

/// C(T) = {α(t) : t ∈ T} for any set of permutations of {0,…,q−1}.
pub fn perm_code(perms: &[Permutation]) -> Result<Code> {
    let q = perms
        .first()
        .ok_or_else(|| Error::Invalid("permutation code needs at least one permutation".into()))?
        .n();
    if perms.iter().any(|g| g.n() != q) {
        return Err(Error::SizeMismatch(
            "permutations act on differing point sets".into(),
        ));
    }
    let words = perms.iter().map(perm_vertex).collect();
    Code::new(q, q, words)
}

/// Rep_p(C): every codeword repeated p times as blocks, in H(mp,q).
/// Multiplies the minimum distance by p.
pub fn rep_p_blowup(code: &Code, p: usize) -> Result<Code> {
    if p == 0 {
        return Err(Error::Invalid(
            "blow-up parameter p must be positive".into(),
        ));
    }
    let m = code.m() * p;
    let space = Space::new(m, code.q())?;
    let words = code
        .words()
        .iter()
        .map(|w| {
            let mut entries = Vec::with_capacity(m);
            for _ in 0..p {
                entries.extend_from_slice(w.entries());
            }
            Vertex::new(entries)
        })
        .collect();
    Code::in_space(space, words)
}

/// The diagonal automorphism x_y = (y,…,y) of H(q,q).
pub fn x_y(y: &Permutation) -> HammingAut {
    HammingAut::diagonal(y.n(), y)
}

/// The column automorphism σ(y) of H(q,q) induced by y.
pub fn sigma_y(y: &Permutation) -> HammingAut {
    HammingAut::column(y.n(), y)
}

/// A(T) = {x_y σ(y) : y normalizes T}. Every element fixes α(identity) and
/// acts on C(T) by conjugation: α(t) ↦ α(y⁻¹ty).
pub fn a_group(t: &PermGroup, caps: &Caps) -> Result<Vec<HammingAut>> {
    let normalizer = normalizer_in_sym(t, caps)?;
    Ok(normalizer
        .elements()
        .iter()
        .map(|y| x_y(y).compose(&sigma_y(y)))
        .collect())
}

/// Lifts an automorphism of H(m,q) and a block permutation to H(mp,q),
/// acting blockwise on p-tuples of vertices: block b goes to block bτ with
/// x applied inside.
pub fn blowup_aut(x: &HammingAut, p: usize, block_perm: &Permutation) -> HammingAut {
    assert_eq!(block_perm.n(), p, "block permutation must act on p blocks");
    let m = x.m();
    let mut cells = Vec::with_capacity(m * p);
    let mut col_images = vec![0usize; m * p];
    for b in 0..p {
        for j in 0..m {
            cells.push(x.cells()[j].clone());
            col_images[b * m + j] = block_perm.image(b) * m + x.cols().image(j);
        }
    }
    HammingAut::new(
        cells,
        Permutation::from_images(col_images).expect("blockwise images form a bijection"),
    )
    .expect("lifted automorphism is well-formed")
}

/// Matches a diagonally neighbour transitive code against the classified
/// families. The balanced case is a containment test (subset of All(pq,q)),
/// not an equality. Returns `None` when the verdict is negative.
pub fn classify(code: &Code, diagonally_nt: bool) -> FamilyTag {
    if !diagonally_nt {
        return FamilyTag::None;
    }
    let (m, q) = (code.m(), code.q());
    if code.len() == 1 {
        let w = &code.words()[0];
        let a = w.entry(0);
        if w.entries().iter().all(|&x| x == a) {
            return FamilyTag::Singleton { a };
        }
    }
    if *code == rep(m, q).expect("shape is valid") {
        return FamilyTag::Repetition { m, q };
    }
    if m < q && *code == inj(m, q).expect("m < q") {
        return FamilyTag::Injection { m, q };
    }
    if q == 2 && m >= 3 && m % 2 == 1 && *code == w_half(m).expect("odd m >= 3") {
        return FamilyTag::MiddleWeight { m };
    }
    if m % q == 0 {
        let p = m / q;
        if code
            .words()
            .iter()
            .all(|w| w.num_profile().pairs == vec![(p, q)])
        {
            return FamilyTag::FpaSubset { p, q };
        }
    }
    FamilyTag::None
}
