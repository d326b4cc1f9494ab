//! Vertices of the Hamming graph H(m,q), the Hamming metric, composition
//! profiles, and the automorphism action.
//!
//! An automorphism is a pair (cell permutations; column permutation) acting
//! as x = gσ: cells first, then columns. For x = (g₁,…,g_m)σ the j-th entry
//! of αˣ is (α_{jσ⁻¹})^{g_{jσ⁻¹}}. Fixing this order once is load-bearing:
//! a worked example lives in the tests (`apply_order_worked_example`).

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{symmetric_elements, PermGroup, Permutation};
use crate::{factorial, Caps};

/// Alphabet symbols are 0-based: `{0, …, q−1}`.
pub type Symbol = u8;

/// An m-tuple over the alphabet; a point of H(m,q). Ordered
/// lexicographically by entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    entries: Vec<Symbol>,
}

impl Vertex {
    pub fn new(entries: Vec<Symbol>) -> Self {
        Vertex { entries }
    }

    pub fn zeros(m: usize) -> Self {
        Vertex {
            entries: vec![0; m],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> Symbol {
        self.entries[i]
    }

    pub fn entries(&self) -> &[Symbol] {
        &self.entries
    }

    /// Parses `0,1,2` or exponent form `0^2,1^3` (= `0,0,1,1,1`); the two
    /// may be mixed.
    pub fn parse(s: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                return Err(Error::Invalid(format!("empty entry in vertex `{s}`")));
            }
            let (sym, count) = match tok.split_once('^') {
                Some((sym, count)) => {
                    let count: usize = count.trim().parse().map_err(|_| {
                        Error::Invalid(format!("bad exponent `{count}` in vertex `{s}`"))
                    })?;
                    (sym.trim(), count)
                }
                None => (tok, 1),
            };
            let sym: Symbol = sym
                .parse()
                .map_err(|_| Error::Invalid(format!("bad symbol `{sym}` in vertex `{s}`")))?;
            entries.extend(std::iter::repeat_n(sym, count));
        }
        if entries.is_empty() {
            return Err(Error::Invalid(format!("vertex `{s}` has no entries")));
        }
        Ok(Vertex { entries })
    }

    /// Display with 1-based symbols, for comparison with sources that label
    /// the alphabet {1, …, q}.
    pub fn display_one_based(&self) -> String {
        self.entries.iter().map(|&a| a as usize + 1).join(",")
    }

    /// Letter multiplicities as (symbol, multiplicity) pairs sorted by
    /// symbol.
    pub fn composition(&self) -> CompositionProfile {
        let mut counts: Vec<(Symbol, usize)> = Vec::new();
        let mut sorted = self.entries.clone();
        sorted.sort_unstable();
        for &a in &sorted {
            match counts.last_mut() {
                Some((sym, c)) if *sym == a => *c += 1,
                _ => counts.push((a, 1)),
            }
        }
        CompositionProfile { pairs: counts }
    }

    /// Aggregates the composition by frequency: how many distinct letters
    /// occur with each multiplicity.
    pub fn num_profile(&self) -> NumProfile {
        let comp = self.composition();
        let mut counts: Vec<(usize, usize)> = Vec::new();
        let mut mults: Vec<usize> = comp.pairs.iter().map(|&(_, p)| p).collect();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        for p in mults {
            match counts.last_mut() {
                Some((mult, s)) if *mult == p => *s += 1,
                _ => counts.push((p, 1)),
            }
        }
        NumProfile { pairs: counts }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries.iter().join(","))
    }
}

/// Number of entries in which the two vertices differ.
pub fn distance(a: &Vertex, b: &Vertex) -> usize {
    assert_eq!(
        a.len(),
        b.len(),
        "distance requires vertices of equal length"
    );
    a.entries
        .iter()
        .zip(&b.entries)
        .filter(|(x, y)| x != y)
        .count()
}

/// Support and weight of `a` relative to `base`: the entry positions where
/// they differ and how many there are.
pub fn support_weight(a: &Vertex, base: &Vertex) -> (Vec<usize>, usize) {
    assert_eq!(
        a.len(),
        base.len(),
        "support requires vertices of equal length"
    );
    let support: Vec<usize> = (0..a.len())
        .filter(|&i| a.entry(i) != base.entry(i))
        .collect();
    let weight = support.len();
    (support, weight)
}

/// The composition Q(α): (letter, multiplicity) pairs, multiplicities ≥ 1
/// summing to m, letters pairwise distinct. Sorted by letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CompositionProfile {
    pub pairs: Vec<(Symbol, usize)>,
}

impl fmt::Display for CompositionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.pairs
                .iter()
                .map(|(a, p)| format!("({a},{p})"))
                .join(",")
        )
    }
}

/// Num(α): (multiplicity, letter-count) pairs sorted by multiplicity
/// descending, so equal profiles compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NumProfile {
    pub pairs: Vec<(usize, usize)>,
}

impl NumProfile {
    /// The multiset of letter multiplicities, expanded and sorted
    /// descending.
    pub fn multiplicities(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .flat_map(|&(p, s)| std::iter::repeat_n(p, s))
            .collect()
    }
}

impl fmt::Display for NumProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{}}}",
            self.pairs
                .iter()
                .map(|(p, s)| format!("({p},{s})"))
                .join(",")
        )
    }
}

/// The shape (m, q) of a Hamming graph; both at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Space {
    m: usize,
    q: usize,
}

impl Space {
    pub fn new(m: usize, q: usize) -> Result<Self> {
        if m < 2 || q < 2 {
            return Err(Error::Invalid(format!(
                "H(m,q) requires m,q >= 2, got m={m}, q={q}"
            )));
        }
        if q > Symbol::MAX as usize + 1 {
            return Err(Error::Invalid(format!("alphabet size {q} too large")));
        }
        Ok(Space { m, q })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertex_count(&self) -> u128 {
        (self.q as u128).pow(self.m as u32)
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        v.len() == self.m && v.entries().iter().all(|&a| (a as usize) < self.q)
    }

    /// Validates raw entries against the shape.
    pub fn vertex(&self, entries: Vec<Symbol>) -> Result<Vertex> {
        let v = Vertex::new(entries);
        if !self.contains(&v) {
            return Err(Error::Invalid(format!(
                "vertex {v} does not lie in H({},{})",
                self.m, self.q
            )));
        }
        Ok(v)
    }

    /// ν(α,i,a): copy of `a` with entry `i` replaced by `s`. Adjacent to `a`
    /// exactly when the symbol actually changes.
    pub fn nu(&self, a: &Vertex, i: usize, s: Symbol) -> Result<Vertex> {
        if a.len() != self.m {
            return Err(Error::SizeMismatch(format!(
                "vertex length {} does not match m={}",
                a.len(),
                self.m
            )));
        }
        if i >= self.m {
            return Err(Error::Invalid(format!(
                "entry index {i} out of range for m={}",
                self.m
            )));
        }
        if s as usize >= self.q {
            return Err(Error::Invalid(format!(
                "symbol {s} out of range for q={}",
                self.q
            )));
        }
        let mut entries = a.entries.clone();
        entries[i] = s;
        Ok(Vertex { entries })
    }

    /// Rank of a vertex: Σ αᵢ·qⁱ, entry 0 least significant.
    pub fn rank(&self, v: &Vertex) -> usize {
        let mut r = 0usize;
        for &a in v.entries().iter().rev() {
            r = r * self.q + a as usize;
        }
        r
    }

    pub fn unrank(&self, mut r: usize) -> Vertex {
        let mut entries = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            entries.push((r % self.q) as Symbol);
            r /= self.q;
        }
        Vertex { entries }
    }

    /// All vertices in rank order. Callers are responsible for cap checks.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count() as usize).map(move |r| self.unrank(r))
    }
}

/// An automorphism of H(m,q): cell permutations (g₁,…,g_m) on the alphabet
/// plus a column permutation σ on entry positions, acting cells-first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HammingAut {
    cells: Vec<Permutation>,
    cols: Permutation,
}

impl HammingAut {
    pub fn new(cells: Vec<Permutation>, cols: Permutation) -> Result<Self> {
        let m = cells.len();
        if m < 2 {
            return Err(Error::Invalid("automorphism needs m >= 2 cells".into()));
        }
        if cols.n() != m {
            return Err(Error::SizeMismatch(format!(
                "column permutation acts on {} points, expected {m}",
                cols.n()
            )));
        }
        let q = cells[0].n();
        if cells.iter().any(|g| g.n() != q) {
            return Err(Error::SizeMismatch(
                "cell permutations act on differing alphabets".into(),
            ));
        }
        Ok(HammingAut { cells, cols })
    }

    pub fn identity(m: usize, q: usize) -> Self {
        HammingAut {
            cells: vec![Permutation::identity(q); m],
            cols: Permutation::identity(m),
        }
    }

    /// (h, …, h) with identity column part: one alphabet permutation applied
    /// simultaneously to all entries.
    pub fn diagonal(m: usize, h: &Permutation) -> Self {
        HammingAut {
            cells: vec![h.clone(); m],
            cols: Permutation::identity(m),
        }
    }

    /// Pure column permutation with identity cells.
    pub fn column(q: usize, sigma: &Permutation) -> Self {
        HammingAut {
            cells: vec![Permutation::identity(q); sigma.n()],
            cols: sigma.clone(),
        }
    }

    pub fn m(&self) -> usize {
        self.cells.len()
    }

    pub fn q(&self) -> usize {
        self.cells[0].n()
    }

    pub fn cells(&self) -> &[Permutation] {
        &self.cells
    }

    pub fn cols(&self) -> &Permutation {
        &self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        self.cells.iter().all(|g| g == &self.cells[0])
    }

    /// αˣ: result entry jσ gets αⱼ^{gⱼ}.
    pub fn apply(&self, v: &Vertex) -> Vertex {
        assert_eq!(
            v.len(),
            self.m(),
            "vertex length does not match automorphism"
        );
        let mut entries = vec![0 as Symbol; self.m()];
        for (j, &a) in v.entries().iter().enumerate() {
            debug_assert!((a as usize) < self.q());
            entries[self.cols.image(j)] = self.cells[j].image(a as usize) as Symbol;
        }
        Vertex { entries }
    }

    /// Rank-to-rank application, for sweeps over a whole vertex set.
    pub fn apply_rank(&self, space: &Space, r: usize) -> usize {
        let q = space.q();
        let mut rr = r;
        let mut out = 0usize;
        let mut pow = Vec::with_capacity(self.m());
        let mut p = 1usize;
        for _ in 0..self.m() {
            pow.push(p);
            p *= q;
        }
        for j in 0..self.m() {
            let a = rr % q;
            rr /= q;
            out += self.cells[j].image(a) * pow[self.cols.image(j)];
        }
        out
    }

    /// Left-to-right product: `apply(self.compose(y), v) = apply(y, apply(self, v))`.
    pub fn compose(&self, other: &HammingAut) -> HammingAut {
        assert_eq!(self.m(), other.m(), "automorphism shapes differ");
        assert_eq!(self.q(), other.q(), "automorphism shapes differ");
        let cells = (0..self.m())
            .map(|k| self.cells[k].compose(&other.cells[self.cols.image(k)]))
            .collect();
        HammingAut {
            cells,
            cols: self.cols.compose(&other.cols),
        }
    }

    pub fn inverse(&self) -> HammingAut {
        let cols_inv = self.cols.inverse();
        let cells = (0..self.m())
            .map(|k| self.cells[cols_inv.image(k)].inverse())
            .collect();
        HammingAut {
            cells,
            cols: cols_inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.cols.is_identity() && self.cells.iter().all(|g| g.is_identity())
    }
}

impl fmt::Display for HammingAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} | {})",
            self.cells.iter().map(|g| g.to_string()).join(","),
            self.cols
        )
    }
}

/// Closure of a set of automorphisms under composition, sorted. Errors out
/// beyond `cap` elements.
pub fn close_auts(gens: &[HammingAut], cap: usize) -> Result<Vec<HammingAut>> {
    let (m, q) = match gens.first() {
        Some(x) => (x.m(), x.q()),
        None => return Err(Error::Invalid("cannot close an empty generator set".into())),
    };
    if gens.iter().any(|x| x.m() != m || x.q() != q) {
        return Err(Error::SizeMismatch(
            "generators have differing shapes".into(),
        ));
    }
    let mut seen: HashSet<HammingAut> = HashSet::new();
    let identity = HammingAut::identity(m, q);
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in gens {
            let next = current.compose(g);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::Capacity {
                        what: "automorphism group closure".into(),
                        requested: seen.len() as u128,
                        cap_name: "HAMNT_MAX_GROUP",
                        limit: cap as u128,
                    });
                }
                queue.push(next);
            }
        }
    }
    queue.sort();
    Ok(queue)
}

/// A small generating subset of a set known (or claimed) to be a group:
/// greedily adjoin elements not yet generated. At most log₂|X| generators.
pub fn generating_subset(elements: &[HammingAut]) -> Result<Vec<HammingAut>> {
    if elements.is_empty() {
        return Err(Error::Invalid("empty automorphism set".into()));
    }
    let mut gens: Vec<HammingAut> = Vec::new();
    let mut closed: HashSet<HammingAut> = HashSet::new();
    closed.insert(HammingAut::identity(elements[0].m(), elements[0].q()));
    for e in elements {
        if !closed.contains(e) {
            gens.push(e.clone());
            closed = close_auts(&gens, elements.len())?.into_iter().collect();
        }
    }
    Ok(gens)
}

/// Checks that an element list forms a group: the closure of a greedy
/// generating subset must reproduce the list exactly.
pub fn verify_aut_group(elements: &[HammingAut]) -> Result<()> {
    let mut sorted = elements.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != elements.len() {
        return Err(Error::NotAGroup);
    }
    let gens = generating_subset(&sorted).map_err(|e| match e {
        Error::Capacity { .. } => Error::NotAGroup,
        other => other,
    })?;
    if gens.is_empty() {
        // Only the identity generates nothing new.
        return if sorted.len() == 1 && sorted[0].is_identity() {
            Ok(())
        } else {
            Err(Error::NotAGroup)
        };
    }
    let closed = close_auts(&gens, sorted.len()).map_err(|e| match e {
        Error::Capacity { .. } => Error::NotAGroup,
        other => other,
    })?;
    if closed != sorted {
        return Err(Error::NotAGroup);
    }
    Ok(())
}

/// Diag_m(T): one diagonal automorphism per element of T, identity columns.
pub fn diag_group(m: usize, t: &PermGroup) -> Vec<HammingAut> {
    t.elements()
        .iter()
        .map(|h| HammingAut::diagonal(m, h))
        .collect()
}

/// Generators of Diag_m(S_q) ⋊ L: diagonal generators of S_q plus column
/// generators of S_m. The closure has order q!·m!.
pub fn full_diag_wreath(m: usize, q: usize) -> Result<Vec<HammingAut>> {
    Space::new(m, q)?;
    let mut gens = Vec::new();
    gens.push(HammingAut::diagonal(
        m,
        &Permutation::from_cycles(q, &[vec![0, 1]])?,
    ));
    if q >= 3 {
        gens.push(HammingAut::diagonal(
            m,
            &Permutation::from_cycles(q, &[(0..q).collect()])?,
        ));
    }
    gens.push(HammingAut::column(
        q,
        &Permutation::from_cycles(m, &[vec![0, 1]])?,
    ));
    if m >= 3 {
        gens.push(HammingAut::column(
            q,
            &Permutation::from_cycles(m, &[(0..m).collect()])?,
        ));
    }
    Ok(gens)
}

/// All q!·m! elements of Diag_m(S_q) ⋊ L, enumerated directly as
/// (alphabet permutation, column permutation) pairs.
pub fn diag_wreath_elements(m: usize, q: usize, caps: &Caps) -> Result<Vec<HammingAut>> {
    Space::new(m, q)?;
    caps.check_group(
        &format!("Diag_{m}(S_{q}) x S_{m}"),
        factorial(q) * factorial(m),
    )?;
    let sym_q = symmetric_elements(q, caps)?;
    let sym_m = symmetric_elements(m, caps)?;
    let mut out = Vec::with_capacity(sym_q.len() * sym_m.len());
    for h in &sym_q {
        for sigma in &sym_m {
            out.push(HammingAut {
                cells: vec![h.clone(); m],
                cols: sigma.clone(),
            });
        }
    }
    out.sort();
    Ok(out)
}

/// All q!^m · m! elements of the full automorphism group S_q^m ⋊ S_m.
/// Only feasible at tiny shapes; capacity-guarded.
pub fn full_wreath_elements(m: usize, q: usize, caps: &Caps) -> Result<Vec<HammingAut>> {
    Space::new(m, q)?;
    let order = factorial(q).pow(m as u32) * factorial(m);
    caps.check_group(&format!("S_{q}^{m} x S_{m}"), order)?;
    let sym_q = symmetric_elements(q, caps)?;
    let sym_m = symmetric_elements(m, caps)?;
    let mut out = Vec::with_capacity(order as usize);
    let mut idx = vec![0usize; m];
    loop {
        let cells: Vec<Permutation> = idx.iter().map(|&i| sym_q[i].clone()).collect();
        for sigma in &sym_m {
            out.push(HammingAut {
                cells: cells.clone(),
                cols: sigma.clone(),
            });
        }
        // Odometer over cell choices.
        let mut k = 0;
        loop {
            if k == m {
                out.sort();
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < sym_q.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
