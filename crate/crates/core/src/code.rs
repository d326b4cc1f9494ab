//! Codes as vertex sets with their metric invariants, regularity and design
//! tests, stabilizers, and orbit-based neighbour-transitivity certificates.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{
    distance, generating_subset, support_weight, verify_aut_group, HammingAut, NumProfile, Space,
    Symbol, Vertex,
};
use crate::perm::symmetric_elements;
use crate::{factorial, Caps};

/// A nonempty set of vertices of H(m,q), held sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    space: Space,
    words: Vec<Vertex>,
}

impl Code {
    pub fn new(m: usize, q: usize, words: Vec<Vertex>) -> Result<Self> {
        let space = Space::new(m, q)?;
        Code::in_space(space, words)
    }

    pub fn in_space(space: Space, mut words: Vec<Vertex>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::Invalid("a code must be nonempty".into()));
        }
        for w in &words {
            if !space.contains(w) {
                return Err(Error::Invalid(format!(
                    "word {w} does not lie in H({},{})",
                    space.m(),
                    space.q()
                )));
            }
        }
        words.sort();
        words.dedup();
        Ok(Code { space, words })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    pub fn q(&self) -> usize {
        self.space.q()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[Vertex] {
        &self.words
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.words.binary_search(v).is_ok()
    }

    pub fn is_complete(&self) -> bool {
        self.words.len() as u128 == self.space.vertex_count()
    }

    /// The image Cˣ.
    pub fn apply(&self, x: &HammingAut) -> Code {
        let words = self.words.iter().map(|w| x.apply(w)).collect();
        Code::in_space(self.space, words).expect("automorphisms preserve the space")
    }

    /// Minimum distance δ: smallest distance between distinct codewords.
    /// Undefined for singletons.
    pub fn min_distance(&self) -> Result<usize> {
        if self.words.len() < 2 {
            return Err(Error::MinDistanceUndefined);
        }
        let mut best = usize::MAX;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                best = best.min(distance(a, b));
            }
        }
        Ok(best)
    }

    /// Parses the `.code` text format: first content line `m q`, then one
    /// vertex per line (exponent form allowed); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut shape: Option<(usize, usize)> = None;
        let mut words = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            match shape {
                None => {
                    let mut parts = line.split_whitespace();
                    let m = parts
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse {
                            line: line_no,
                            msg: format!("expected header `m q`, found `{line}`"),
                        })?;
                    let q = parts
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse {
                            line: line_no,
                            msg: format!("expected header `m q`, found `{line}`"),
                        })?;
                    if parts.next().is_some() {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("trailing tokens after header `{line}`"),
                        });
                    }
                    Space::new(m, q).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                    shape = Some((m, q));
                }
                Some((m, q)) => {
                    let v = Vertex::parse(line).map_err(|e| Error::Parse {
                        line: line_no,
                        msg: e.to_string(),
                    })?;
                    if v.len() != m {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("vertex has {} entries, expected {m}", v.len()),
                        });
                    }
                    if let Some(&bad) = v.entries().iter().find(|&&a| a as usize >= q) {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("symbol {bad} out of range for q={q}"),
                        });
                    }
                    words.push(v);
                }
            }
        }
        let (m, q) = shape.ok_or(Error::Parse {
            line: 0,
            msg: "missing `m q` header".into(),
        })?;
        if words.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "code file contains no words".into(),
            });
        }
        Code::new(m, q, words)
    }

    /// Serializes to the `.code` text format.
    pub fn to_code_string(&self) -> String {
        let mut out = format!("{} {}\n", self.m(), self.q());
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }
}

/// The distance partition {C, C₁, …, C_ρ}: cell i holds the vertices at
/// distance exactly i from the code, as sorted ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistancePartition {
    space: Space,
    cells: Vec<Vec<u32>>,
}

impl DistancePartition {
    pub fn rho(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self) -> &[Vec<u32>] {
        &self.cells
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    pub fn cell_vertices(&self, i: usize) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.cells[i]
            .iter()
            .map(|&r| self.space.unrank(r as usize))
            .collect();
        vs.sort();
        vs
    }

    /// Distinct Num profiles occurring in each cell, sorted.
    pub fn cell_num_profiles(&self) -> Vec<Vec<NumProfile>> {
        self.cells
            .iter()
            .map(|cell| {
                let mut profiles: Vec<NumProfile> = cell
                    .iter()
                    .map(|&r| self.space.unrank(r as usize).num_profile())
                    .collect();
                profiles.sort();
                profiles.dedup();
                profiles
            })
            .collect()
    }
}

/// Multi-source breadth-first layering over the Hamming graph from all
/// codewords at once. The covering radius ρ is the index of the last cell.
pub fn distance_partition(code: &Code, caps: &Caps) -> Result<DistancePartition> {
    let space = code.space();
    let n = caps.check_vertices(space.m(), space.q())?;
    let (m, q) = (space.m(), space.q());
    let mut dist = vec![u8::MAX; n];
    let mut frontier: Vec<u32> = code.words().iter().map(|w| space.rank(w) as u32).collect();
    for &r in &frontier {
        dist[r as usize] = 0;
    }
    let mut cells = vec![frontier.clone()];
    let mut level: u8 = 0;
    let mut pow = Vec::with_capacity(m);
    let mut p = 1usize;
    for _ in 0..m {
        pow.push(p);
        p *= q;
    }
    while !frontier.is_empty() {
        level += 1;
        let mut next = Vec::new();
        for &r in &frontier {
            let r = r as usize;
            for &pi in &pow {
                let digit = (r / pi) % q;
                let base = r - digit * pi;
                for s in 0..q {
                    if s == digit {
                        continue;
                    }
                    let nb = base + s * pi;
                    if dist[nb] == u8::MAX {
                        dist[nb] = level;
                        next.push(nb as u32);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        cells.push(next.clone());
        frontier = next;
    }
    cells[0].sort_unstable();
    Ok(DistancePartition { space, cells })
}

/// The set C₁ of vertices adjacent to the code but not in it.
pub fn neighbour_set(code: &Code, caps: &Caps) -> Result<Vec<Vertex>> {
    let partition = distance_partition(code, caps)?;
    if partition.rho() == 0 {
        return Err(Error::NoNeighbours);
    }
    Ok(partition.cell_vertices(1))
}

/// s-regularity: for each cell C_i with i ≤ s, the distance distribution
/// from γ to the code is the same for every γ in the cell.
pub fn is_s_regular(code: &Code, s: usize, caps: &Caps) -> Result<bool> {
    let partition = distance_partition(code, caps)?;
    let space = code.space();
    let top = s.min(partition.rho());
    for cell in &partition.cells()[..=top] {
        let mut reference: Option<Vec<usize>> = None;
        for &r in cell {
            let gamma = space.unrank(r as usize);
            let mut counts = vec![0usize; space.m() + 1];
            for w in code.words() {
                counts[distance(&gamma, w)] += 1;
            }
            match &reference {
                None => reference = Some(counts),
                Some(first) => {
                    if first != &counts {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn is_completely_regular(code: &Code, caps: &Caps) -> Result<bool> {
    is_s_regular(code, usize::MAX, caps)
}

/// Connectivity of the subgraph induced on an arbitrary vertex set.
pub fn is_connected_set(space: &Space, vertices: &[Vertex]) -> bool {
    assert!(
        !vertices.is_empty(),
        "connectivity of the empty set is undefined"
    );
    let mut sorted: Vec<&Vertex> = vertices.iter().collect();
    sorted.sort();
    sorted.dedup();
    let index: HashMap<&Vertex, usize> = sorted.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut seen = vec![false; sorted.len()];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut reached = 1usize;
    while let Some(i) = stack.pop() {
        let v = sorted[i];
        for pos in 0..space.m() {
            for s in 0..space.q() as Symbol {
                if s == v.entry(pos) {
                    continue;
                }
                let nb = space.nu(v, pos, s).expect("in-range substitution");
                if let Some(&j) = index.get(&nb) {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        stack.push(j);
                    }
                }
            }
        }
    }
    reached == sorted.len()
}

pub fn is_connected(code: &Code) -> bool {
    is_connected_set(&code.space(), code.words())
}

/// Outcome of a q-ary t-(q,k,λ) design check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignCheck {
    pub is_design: bool,
    pub lambda: Option<usize>,
}

/// Checks whether `blocks` (all of weight k relative to `base`) cover every
/// weight-t vertex the same number of times. `γ` covers `ν` when they agree
/// on the support of `ν`.
pub fn is_qary_design(
    space: &Space,
    blocks: &[Vertex],
    t: usize,
    k: usize,
    base: &Vertex,
) -> Result<DesignCheck> {
    if blocks.is_empty() {
        return Err(Error::Invalid(
            "design check requires a nonempty block set".into(),
        ));
    }
    if base.len() != space.m() {
        return Err(Error::SizeMismatch(
            "base vertex does not match the space".into(),
        ));
    }
    if t > k {
        return Err(Error::Invalid(format!(
            "strength t={t} exceeds block weight k={k}"
        )));
    }
    for b in blocks {
        let (_, w) = support_weight(b, base);
        if w != k {
            return Err(Error::Invalid(format!(
                "block {b} has weight {w}, expected k={k}"
            )));
        }
    }
    let mut lambda: Option<usize> = None;
    for positions in (0..space.m()).combinations(t) {
        // Odometer over non-base symbols at the chosen positions.
        let mut choice = vec![0usize; t];
        loop {
            let mut nu = base.clone();
            for (slot, &pos) in positions.iter().enumerate() {
                let mut s = choice[slot] as Symbol;
                if s >= base.entry(pos) {
                    s += 1;
                }
                nu = space.nu(&nu, pos, s)?;
            }
            let covers = blocks
                .iter()
                .filter(|gamma| {
                    positions
                        .iter()
                        .all(|&pos| gamma.entry(pos) == nu.entry(pos))
                })
                .count();
            match lambda {
                None => lambda = Some(covers),
                Some(l) if l != covers => {
                    return Ok(DesignCheck {
                        is_design: false,
                        lambda: None,
                    })
                }
                _ => {}
            }
            let mut slot = 0;
            while slot < t {
                choice[slot] += 1;
                if choice[slot] < space.q() - 1 {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
            if slot == t {
                break;
            }
        }
    }
    Ok(DesignCheck {
        is_design: true,
        lambda,
    })
}

/// {x ∈ ambient : Cˣ = C}.
pub fn setwise_stabilizer(code: &Code, ambient: &[HammingAut]) -> Vec<HammingAut> {
    ambient
        .iter()
        .filter(|x| code.words().iter().all(|w| code.contains(&x.apply(w))))
        .cloned()
        .collect()
}

/// A neighbour-transitivity certificate: the witness group used, per-cell
/// orbit counts, and the headline invariants of the code.
#[derive(Debug, Clone, Serialize)]
pub struct NtCertificate {
    pub verdict: bool,
    pub group_order: usize,
    /// Number of witness-group orbits meeting each distance-partition cell.
    pub orbit_counts: Vec<usize>,
    pub delta: Option<usize>,
    pub rho: usize,
    pub num_profiles: Vec<Vec<NumProfile>>,
    #[serde(skip)]
    pub witness: Vec<HammingAut>,
}

fn orbit_ids(space: &Space, gens: &[HammingAut], n: usize) -> (Vec<u32>, Vec<usize>) {
    let mut ids = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for start in 0..n {
        if ids[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        let mut size = 1usize;
        ids[start] = id;
        stack.push(start);
        while let Some(r) = stack.pop() {
            for g in gens {
                let img = g.apply_rank(space, r);
                if ids[img] == u32::MAX {
                    ids[img] = id;
                    size += 1;
                    stack.push(img);
                }
            }
        }
        sizes.push(size);
    }
    (ids, sizes)
}

fn nt_with_group(code: &Code, group: &[HammingAut], caps: &Caps) -> Result<NtCertificate> {
    let space = code.space();
    if let Some(x) = group.first() {
        if x.m() != space.m() || x.q() != space.q() {
            return Err(Error::SizeMismatch(
                "witness group does not act on the code's space".into(),
            ));
        }
    }
    let partition = distance_partition(code, caps)?;
    let n = space.vertex_count() as usize;
    let gens = generating_subset(group)?;
    let (ids, sizes) = orbit_ids(&space, &gens, n);

    let mut orbit_counts = Vec::with_capacity(partition.cells().len());
    let mut exact = Vec::with_capacity(partition.cells().len());
    for cell in partition.cells() {
        let mut seen: HashSet<u32> = HashSet::new();
        for &r in cell {
            seen.insert(ids[r as usize]);
        }
        orbit_counts.push(seen.len());
        exact.push(
            seen.len() == 1
                && sizes[*seen.iter().next().expect("nonempty cell") as usize] == cell.len(),
        );
    }

    let verdict = exact[0] && partition.rho() >= 1 && exact[1];
    Ok(NtCertificate {
        verdict,
        group_order: group.len(),
        orbit_counts,
        delta: code.min_distance().ok(),
        rho: partition.rho(),
        num_profiles: partition.cell_num_profiles(),
        witness: group.to_vec(),
    })
}

/// Is the code X-neighbour transitive: are C and C₁ both single X-orbits?
/// `x` must be closed under composition (a group); anything else is
/// rejected.
pub fn is_nt(code: &Code, x: &[HammingAut], caps: &Caps) -> Result<NtCertificate> {
    verify_aut_group(x)?;
    nt_with_group(code, x, caps)
}

/// Is every distance-partition cell a single X-orbit?
pub fn is_completely_transitive(code: &Code, x: &[HammingAut], caps: &Caps) -> Result<bool> {
    verify_aut_group(x)?;
    let space = code.space();
    let partition = distance_partition(code, caps)?;
    let n = space.vertex_count() as usize;
    let gens = generating_subset(x)?;
    let (ids, sizes) = orbit_ids(&space, &gens, n);
    for cell in partition.cells() {
        let first = ids[cell[0] as usize];
        if cell.iter().any(|&r| ids[r as usize] != first) {
            return Ok(false);
        }
        if sizes[first as usize] != cell.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides diagonal neighbour transitivity exactly.
///
/// The existential quantifier over subgroups X ≤ Diag_m(S_q) ⋊ L collapses
/// to one stabilizer computation: any witness X lies inside
/// G = Aut(C) ∩ (Diag_m(S_q) ⋊ L), the cells are G-invariant, and a subgroup
/// acting transitively on a G-invariant set forces G transitive on it;
/// conversely G itself is a witness.
pub fn is_diagonally_nt(code: &Code, caps: &Caps) -> Result<NtCertificate> {
    let stabilizer = diag_stabilizer(code, caps)?;
    nt_with_group(code, &stabilizer, caps)
}

/// The stabilizer of the code in Diag_m(S_q) ⋊ L, scanning the (h, σ) pairs
/// without materializing the whole ambient group.
pub fn diag_stabilizer(code: &Code, caps: &Caps) -> Result<Vec<HammingAut>> {
    let space = code.space();
    let (m, q) = (space.m(), space.q());
    caps.check_group(
        &format!("Diag_{m}(S_{q}) x S_{m}"),
        factorial(q) * factorial(m),
    )?;
    let sym_q = symmetric_elements(q, caps)?;
    let sym_m = symmetric_elements(m, caps)?;
    let mut stab = Vec::new();
    let mut scratch = vec![0 as Symbol; m];
    for h in &sym_q {
        for sigma in &sym_m {
            let fixes = code.words().iter().all(|w| {
                for (j, &a) in w.entries().iter().enumerate() {
                    scratch[sigma.image(j)] = h.image(a as usize) as Symbol;
                }
                code.contains(&Vertex::new(scratch.clone()))
            });
            if fixes {
                let mut aut = HammingAut::diagonal(m, h);
                aut = aut.compose(&HammingAut::column(q, sigma));
                stab.push(aut);
            }
        }
    }
    stab.sort();
    Ok(stab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{all_fpa, inj, rep, w_half};
    use crate::hamming::{close_auts, diag_wreath_elements, full_wreath_elements};
    use rand::{seq::SliceRandom, Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn caps() -> Caps {
        Caps::default()
    }

    fn v(s: &str) -> Vertex {
        Vertex::parse(s).unwrap()
    }

    fn code(m: usize, q: usize, words: &[&str]) -> Code {
        Code::new(m, q, words.iter().map(|s| v(s)).collect()).unwrap()
    }

    #[test]
    fn min_distance_of_families() {
        assert_eq!(rep(3, 3).unwrap().min_distance().unwrap(), 3);
        assert_eq!(inj(2, 3).unwrap().min_distance().unwrap(), 1);
        assert_eq!(all_fpa(2, 2).unwrap().min_distance().unwrap(), 2);
        let singleton = code(2, 2, &["0,0"]);
        assert_eq!(singleton.min_distance(), Err(Error::MinDistanceUndefined));
    }

    /// Nearest-codeword-scan oracle for the BFS layering.
    fn oracle_partition(code: &Code) -> Vec<Vec<u32>> {
        let space = code.space();
        let mut cells: Vec<Vec<u32>> = Vec::new();
        for r in 0..space.vertex_count() as usize {
            let gamma = space.unrank(r);
            let d = code
                .words()
                .iter()
                .map(|w| distance(&gamma, w))
                .min()
                .unwrap();
            if cells.len() <= d {
                cells.resize(d + 1, Vec::new());
            }
            cells[d].push(r as u32);
        }
        cells
    }

    #[test]
    fn distance_partition_matches_scan_oracle() {
        for c in [
            rep(3, 2).unwrap(),
            rep(5, 2).unwrap(),
            w_half(5).unwrap(),
            all_fpa(2, 2).unwrap(),
            code(3, 2, &["0,0,0", "0,1,1", "1,0,1"]),
        ] {
            let partition = distance_partition(&c, &caps()).unwrap();
            assert_eq!(partition.cells(), &oracle_partition(&c)[..]);
        }
    }

    #[test]
    fn complete_code_has_trivial_partition() {
        let space = Space::new(2, 2).unwrap();
        let complete = Code::in_space(space, space.vertices().collect()).unwrap();
        let partition = distance_partition(&complete, &caps()).unwrap();
        assert_eq!(partition.rho(), 0);
        assert_eq!(partition.cell_sizes(), vec![4]);
        assert_eq!(neighbour_set(&complete, &caps()), Err(Error::NoNeighbours));
    }

    #[test]
    fn covering_radius_examples() {
        let w5 = w_half(5).unwrap();
        let partition = distance_partition(&w5, &caps()).unwrap();
        assert_eq!(partition.rho(), 2);
        assert_eq!(
            partition.cell_vertices(2),
            rep(5, 2).unwrap().words().to_vec()
        );

        let fpa = all_fpa(2, 2).unwrap();
        let partition = distance_partition(&fpa, &caps()).unwrap();
        assert_eq!(partition.rho(), 2);
        assert_eq!(
            partition.cell_vertices(2),
            rep(4, 2).unwrap().words().to_vec()
        );
    }

    #[test]
    fn partition_respects_vertex_cap() {
        let tiny = Caps {
            max_vertices: 7,
            ..Caps::default()
        };
        let err = distance_partition(&rep(3, 2).unwrap(), &tiny).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    #[test]
    fn neighbour_sets() {
        let single = code(2, 2, &["0,0"]);
        assert_eq!(
            neighbour_set(&single, &caps()).unwrap(),
            vec![v("0,1"), v("1,0")]
        );

        // Neighbours of the binary length-3 repetition code are exactly the
        // vertices with one letter twice and one letter once.
        let neighbours = neighbour_set(&rep(3, 2).unwrap(), &caps()).unwrap();
        assert_eq!(neighbours.len(), 6);
        for nb in &neighbours {
            assert_eq!(nb.num_profile().pairs, vec![(2, 1), (1, 1)]);
        }

        // For the length-2 injection code over three letters, the observed
        // neighbour profile is {(2,1)}: the (1, m−2) part is degenerate.
        let neighbours = neighbour_set(&inj(2, 3).unwrap(), &caps()).unwrap();
        assert_eq!(neighbours.len(), 3);
        for nb in &neighbours {
            assert_eq!(nb.num_profile().pairs, vec![(2, 1)]);
        }
    }

    #[test]
    fn regularity_checks() {
        assert!(is_completely_regular(&rep(3, 2).unwrap(), &caps()).unwrap());

        // Equidistant triple: constant distribution from the code itself but
        // not from its neighbour cell.
        let c = code(3, 2, &["0,0,0", "0,1,1", "1,0,1"]);
        assert!(is_s_regular(&c, 0, &caps()).unwrap());
        assert!(!is_s_regular(&c, 1, &caps()).unwrap());

        // Enumeration oracle for the same code: distributions from both
        // cells, compared directly.
        let partition = distance_partition(&c, &caps()).unwrap();
        let space = c.space();
        for (i, expect_constant) in [(0usize, true), (1usize, false)] {
            let dists: HashSet<Vec<usize>> = partition.cells()[i]
                .iter()
                .map(|&r| {
                    let gamma = space.unrank(r as usize);
                    let mut counts = vec![0usize; 4];
                    for w in c.words() {
                        counts[distance(&gamma, w)] += 1;
                    }
                    counts
                })
                .collect();
            assert_eq!(dists.len() == 1, expect_constant);
        }
    }

    #[test]
    fn design_checks() {
        // Weight-2 words of the full permutation code over three letters
        // form a 1-design with λ = 1: three transposition words, each
        // covering two of the six weight-1 vertices.
        let space = Space::new(3, 3).unwrap();
        let base = v("0,1,2");
        let blocks = vec![v("1,0,2"), v("2,1,0"), v("0,2,1")];
        let check = is_qary_design(&space, &blocks, 1, 2, &base).unwrap();
        assert!(check.is_design);
        assert_eq!(check.lambda, Some(1));
        // Counting identity: |blocks| = q(q−1)λ/2.
        assert_eq!(blocks.len(), 3 * 2 * check.lambda.unwrap() / 2);

        // All weight-k vertices form a design for every t ≤ k.
        let all_weight_2: Vec<Vertex> = space
            .vertices()
            .filter(|w| support_weight(w, &base).1 == 2)
            .collect();
        for t in 0..=2 {
            let check = is_qary_design(&space, &all_weight_2, t, 2, &base).unwrap();
            assert!(check.is_design, "t = {t}");
        }

        // A single weight-2 vertex misses some weight-1 vertices.
        let lone = vec![v("1,0,2")];
        let check = is_qary_design(&space, &lone, 1, 2, &base).unwrap();
        assert!(!check.is_design);

        assert!(is_qary_design(&space, &[], 1, 2, &base).is_err());
        assert!(is_qary_design(&space, &blocks, 1, 3, &base).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(is_connected(&inj(2, 3).unwrap()));
        assert!(is_connected(&w_half(3).unwrap()));
        assert!(!is_connected(&rep(2, 2).unwrap()));
    }

    #[test]
    fn stabilizer_examples() {
        let diag = diag_wreath_elements(3, 3, &caps()).unwrap();
        assert_eq!(setwise_stabilizer(&rep(3, 3).unwrap(), &diag).len(), 36);

        let singleton = code(3, 3, &["0,0,0"]);
        assert_eq!(setwise_stabilizer(&singleton, &diag).len(), 12);

        let identity_only = vec![HammingAut::identity(3, 3)];
        assert_eq!(
            setwise_stabilizer(&rep(3, 3).unwrap(), &identity_only).len(),
            1
        );

        // The lazy scan agrees with filtering a materialized ambient list.
        let scan = diag_stabilizer(&singleton, &caps()).unwrap();
        let mut filtered = setwise_stabilizer(&singleton, &diag);
        filtered.sort();
        assert_eq!(scan, filtered);
    }

    #[test]
    fn nt_certificates() {
        let diag32 = diag_wreath_elements(3, 2, &caps()).unwrap();
        assert!(is_completely_transitive(&rep(3, 2).unwrap(), &diag32, &caps()).unwrap());

        let diag42 = diag_wreath_elements(4, 2, &caps()).unwrap();
        let cert = is_nt(&all_fpa(2, 2).unwrap(), &diag42, &caps()).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.orbit_counts[0], 1);
        assert_eq!(cert.orbit_counts[1], 1);

        let singleton = code(2, 2, &["0,0"]);
        let identity_only = vec![HammingAut::identity(2, 2)];
        let cert = is_nt(&singleton, &identity_only, &caps()).unwrap();
        assert!(!cert.verdict);
        assert_eq!(cert.orbit_counts[1], 2);

        // Non-groups are rejected.
        let partial = &diag42[..3];
        assert_eq!(
            is_nt(&all_fpa(2, 2).unwrap(), partial, &caps()).unwrap_err(),
            Error::NotAGroup
        );
    }

    #[test]
    fn diagonal_nt_examples() {
        assert!(
            is_diagonally_nt(&w_half(3).unwrap(), &caps())
                .unwrap()
                .verdict
        );

        // The full permutation code over three letters.
        assert!(
            is_diagonally_nt(&all_fpa(1, 3).unwrap(), &caps())
                .unwrap()
                .verdict
        );

        // A non-constant singleton outside the balanced world fails: its
        // neighbour cell splits into two orbits.
        let cert = is_diagonally_nt(&code(3, 2, &["0,0,1"]), &caps()).unwrap();
        assert!(!cert.verdict);
        assert_eq!(cert.orbit_counts[0], 1);
        assert!(cert.orbit_counts[1] > 1);

        // Constant singletons pass.
        assert!(
            is_diagonally_nt(&code(2, 2, &["0,0"]), &caps())
                .unwrap()
                .verdict
        );
    }

    #[test]
    fn certificate_fields_are_consistent() {
        let cert = is_diagonally_nt(&rep(3, 2).unwrap(), &caps()).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.group_order, 12);
        assert_eq!(cert.delta, Some(3));
        assert_eq!(cert.rho, 1);
        assert_eq!(cert.orbit_counts, vec![1, 1]);
        assert_eq!(cert.num_profiles.len(), 2);
        assert_eq!(cert.witness.len(), cert.group_order);
        // Every witness element is diagonal.
        assert!(cert.witness.iter().all(|x| x.is_diagonal()));
    }

    #[test]
    fn partition_equivariance_under_random_automorphisms() {
        // (C_i)ʸ = (Cʸ)_i for every cell, full wreath on H(3,2).
        let wreath = full_wreath_elements(3, 2, &caps()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let space = Space::new(3, 2).unwrap();
        for _ in 0..40 {
            let size = rng.gen_range(1..=8usize);
            let mut ranks: Vec<usize> = (0..8).collect();
            ranks.shuffle(&mut rng);
            let words: Vec<Vertex> = ranks[..size].iter().map(|&r| space.unrank(r)).collect();
            let c = Code::in_space(space, words).unwrap();
            let y = wreath.choose(&mut rng).unwrap();
            let cy = c.apply(y);
            let p = distance_partition(&c, &caps()).unwrap();
            let py = distance_partition(&cy, &caps()).unwrap();
            assert_eq!(p.rho(), py.rho());
            for i in 0..=p.rho() {
                let mut mapped: Vec<Vertex> =
                    p.cell_vertices(i).iter().map(|w| y.apply(w)).collect();
                mapped.sort();
                assert_eq!(mapped, py.cell_vertices(i));
            }
        }
    }

    #[test]
    fn nt_verdict_invariant_under_conjugation() {
        let wreath = full_wreath_elements(3, 2, &caps()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for c in [
            rep(3, 2).unwrap(),
            w_half(3).unwrap(),
            code(3, 2, &["0,0,1"]),
        ] {
            let stab = diag_stabilizer(&c, &caps()).unwrap();
            let base = is_nt(&c, &stab, &caps()).unwrap();
            for _ in 0..10 {
                let y = wreath.choose(&mut rng).unwrap();
                let conj: Vec<HammingAut> = stab
                    .iter()
                    .map(|x| y.inverse().compose(x).compose(y))
                    .collect();
                let cert = is_nt(&c.apply(y), &conj, &caps()).unwrap();
                assert_eq!(cert.verdict, base.verdict);
                assert_eq!(cert.orbit_counts, base.orbit_counts);
            }
        }
    }

    #[test]
    fn nt_implies_one_regular() {
        for c in [
            rep(3, 2).unwrap(),
            w_half(5).unwrap(),
            all_fpa(2, 2).unwrap(),
        ] {
            let cert = is_diagonally_nt(&c, &caps()).unwrap();
            assert!(cert.verdict);
            assert!(is_s_regular(&c, 1, &caps()).unwrap());
        }
    }

    #[test]
    fn completely_regular_codes_reverse_their_partition() {
        // C_ρ of a completely regular code is completely regular with the
        // reversed partition, and shares its stabilizer.
        for c in [
            rep(3, 2).unwrap(),
            rep(5, 2).unwrap(),
            all_fpa(2, 2).unwrap(),
        ] {
            assert!(is_completely_regular(&c, &caps()).unwrap());
            let partition = distance_partition(&c, &caps()).unwrap();
            let rho = partition.rho();
            let far = Code::in_space(c.space(), partition.cell_vertices(rho)).unwrap();
            assert!(is_completely_regular(&far, &caps()).unwrap());
            let far_partition = distance_partition(&far, &caps()).unwrap();
            assert_eq!(far_partition.rho(), rho);
            for i in 0..=rho {
                assert_eq!(
                    far_partition.cell_vertices(i),
                    partition.cell_vertices(rho - i)
                );
            }
            let ambient = diag_wreath_elements(c.m(), c.q(), &caps()).unwrap();
            assert_eq!(
                setwise_stabilizer(&c, &ambient),
                setwise_stabilizer(&far, &ambient)
            );
        }
    }

    #[test]
    fn orbit_strategies_agree() {
        // Orbit partition from generator BFS matches the one from applying
        // every group element.
        let diag = diag_wreath_elements(3, 3, &caps()).unwrap();
        let space = Space::new(3, 3).unwrap();
        let n = space.vertex_count() as usize;
        let gens = generating_subset(&diag).unwrap();
        let (ids, _) = orbit_ids(&space, &gens, n);
        for r in 0..n {
            let mut orbit: Vec<usize> = diag.iter().map(|x| x.apply_rank(&space, r)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            let mut bfs_orbit: Vec<usize> = (0..n).filter(|&s| ids[s] == ids[r]).collect();
            bfs_orbit.sort_unstable();
            assert_eq!(orbit, bfs_orbit);
        }
        let _ = close_auts(&gens, 10_000).unwrap();
    }

    #[test]
    fn code_file_roundtrip_and_errors() {
        let c = w_half(3).unwrap();
        let text = c.to_code_string();
        assert_eq!(Code::parse(&text).unwrap(), c);

        let exp = "4 2\n0^2,1^2\n1^2,0^2\n";
        let parsed = Code::parse(exp).unwrap();
        assert_eq!(parsed.words(), &[v("0,0,1,1"), v("1,1,0,0")]);

        let commented = "# repetition\n3 2\n0,0,0 # zero word\n1,1,1\n";
        assert_eq!(Code::parse(commented).unwrap(), rep(3, 2).unwrap());

        let bad_symbol = "2 3\n0,1\n0,5\n";
        match Code::parse(bad_symbol) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 3);
                assert!(msg.contains("symbol 5 out of range for q=3"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }

        let bad_len = "3 2\n0,0\n";
        assert!(matches!(
            Code::parse(bad_len),
            Err(Error::Parse { line: 2, .. })
        ));

        assert!(Code::parse("").is_err());
        assert!(Code::parse("3 2\n").is_err());
    }
}
