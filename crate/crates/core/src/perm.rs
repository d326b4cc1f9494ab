//! Permutations on `{0, …, n−1}` and fully enumerated permutation groups.
//!
//! Groups are held as explicit element sets: desk-scale exactness beats
//! asymptotic cleverness, and every acceptance-sized computation fits. There
//! is deliberately no stabilizer-chain machinery here.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::{factorial, Caps};

/// A permutation of `{0, …, n−1}`, stored as its image array: entry `i` is
/// the image of point `i`. Composition is left-to-right: `(i^p)^r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n || seen[j] {
                return Err(Error::Invalid(format!(
                    "image array {images:?} is not a bijection of 0..{n}"
                )));
            }
            seen[j] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds the product of the given cycles, applied left to right.
    /// Cycles need not be disjoint; points omitted everywhere are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut result = Permutation::identity(n);
        for cycle in cycles {
            let distinct: HashSet<usize> = cycle.iter().copied().collect();
            if distinct.len() != cycle.len() {
                return Err(Error::Invalid(format!("cycle {cycle:?} repeats a point")));
            }
            let mut images: Vec<usize> = (0..n).collect();
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= n || b >= n {
                    return Err(Error::Invalid(format!(
                        "cycle point {} out of range for n={n}",
                        a.max(b)
                    )));
                }
                images[a] = b;
            }
            result = result.compose(&Permutation { images });
        }
        Ok(result)
    }

    /// Parses either one-line image form `[1,0,3,2]` or cycle form
    /// `(0 1)(2 3)`; `()` denotes the identity. Cycle entries may be
    /// separated by spaces or commas.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Invalid("empty permutation string".into()));
        }
        if s.starts_with('[') {
            if !s.ends_with(']') {
                return Err(Error::Invalid(format!("unterminated image list: {s}")));
            }
            let body = &s[1..s.len() - 1];
            let images: Vec<usize> = body
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Invalid(format!("bad image entry `{t}` in {s}")))
                })
                .collect::<Result<_>>()?;
            if images.len() != n {
                return Err(Error::SizeMismatch(format!(
                    "image list {s} has length {}, expected {n}",
                    images.len()
                )));
            }
            return Permutation::from_images(images);
        }
        if s.starts_with('(') {
            let mut cycles = Vec::new();
            let mut rest = s;
            while !rest.is_empty() {
                let rest_trim = rest.trim_start();
                if !rest_trim.starts_with('(') {
                    return Err(Error::Invalid(format!("expected `(` in {s}")));
                }
                let close = rest_trim
                    .find(')')
                    .ok_or_else(|| Error::Invalid(format!("unbalanced parentheses in {s}")))?;
                let body = &rest_trim[1..close];
                let points: Vec<usize> = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| Error::Invalid(format!("bad cycle point `{t}` in {s}")))
                    })
                    .collect::<Result<_>>()?;
                if !points.is_empty() {
                    cycles.push(points);
                }
                rest = &rest_trim[close + 1..];
            }
            return Permutation::from_cycles(n, &cycles);
        }
        Err(Error::Invalid(format!(
            "unrecognized permutation syntax: {s} (expected `[..]` or `(..)`)"
        )))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Left-to-right composition: the result maps `i ↦ (i^self)^other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.n(),
            other.n(),
            "cannot compose permutations on different point sets"
        );
        Permutation {
            images: self.images.iter().map(|&j| other.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.images[i] == i).collect()
    }

    /// Number of points moved: `n − |fix|`.
    pub fn degree(&self) -> usize {
        self.n() - self.fixed_points().len()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

/// Degree together with the fixed-point set.
pub fn degree_and_fix(p: &Permutation) -> (usize, Vec<usize>) {
    let fixed = p.fixed_points();
    (p.n() - fixed.len(), fixed)
}

/// All n! elements of the symmetric group on `n` points, sorted.
pub fn symmetric_elements(n: usize, caps: &Caps) -> Result<Vec<Permutation>> {
    caps.check_sym_points(n)?;
    caps.check_group(&format!("S_{n}"), factorial(n))?;
    let mut elements: Vec<Permutation> = (0..n)
        .permutations(n)
        .map(|images| Permutation { images })
        .collect();
    if elements.is_empty() {
        elements.push(Permutation::identity(n));
    }
    elements.sort();
    Ok(elements)
}

/// A finite permutation group held as generators plus its full element set
/// (sorted, deduplicated, closed under composition and inverse).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        PermGroup {
            n,
            generators: Vec::new(),
            elements: vec![Permutation::identity(n)],
        }
    }

    /// Enumerates the closure of the generators. Fails with a capacity error
    /// if the group would exceed `caps.max_group` — never truncates silently.
    pub fn generate(n: usize, gens: &[Permutation], caps: &Caps) -> Result<Self> {
        for g in gens {
            if g.n() != n {
                return Err(Error::SizeMismatch(format!(
                    "generator {g} acts on {} points, expected {n}",
                    g.n()
                )));
            }
        }
        let elements = close_elements(n, gens, caps.max_group)?;
        Ok(PermGroup {
            n,
            generators: gens.to_vec(),
            elements,
        })
    }

    /// Wraps an explicit element list, verifying that it is a group.
    pub fn from_elements(n: usize, elements: Vec<Permutation>) -> Result<Self> {
        let as_group = |e: Error| match e {
            Error::Capacity { .. } => Error::NotAGroup,
            other => other,
        };
        let mut sorted = elements;
        sorted.sort();
        sorted.dedup();
        let generators = greedy_generators(n, &sorted).map_err(as_group)?;
        let closed = close_elements(n, &generators, sorted.len()).map_err(as_group)?;
        if closed != sorted {
            return Err(Error::NotAGroup);
        }
        Ok(PermGroup {
            n,
            generators,
            elements: sorted,
        })
    }

    /// The full symmetric group S_n.
    pub fn symmetric(n: usize, caps: &Caps) -> Result<Self> {
        let elements = symmetric_elements(n, caps)?;
        let mut generators = Vec::new();
        if n >= 2 {
            generators.push(Permutation::from_cycles(n, &[vec![0, 1]])?);
        }
        if n >= 3 {
            generators.push(Permutation::from_cycles(n, &[(0..n).collect()])?);
        }
        Ok(PermGroup {
            n,
            generators,
            elements,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// A small generating set recomputed greedily from the element list;
    /// used when reporting groups compactly.
    pub fn minimal_generators(&self) -> Vec<Permutation> {
        greedy_generators(self.n, &self.elements).expect("stored element set is a group")
    }

    /// True iff the group has a single orbit on points.
    pub fn is_transitive(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let orbit: HashSet<usize> = self.elements.iter().map(|g| g.image(0)).collect();
        orbit.len() == self.n
    }

    /// True iff the group is transitive on ordered pairs of distinct points.
    pub fn is_2_transitive(&self) -> bool {
        if self.n < 2 {
            return false;
        }
        let orbit: HashSet<(usize, usize)> = self
            .elements
            .iter()
            .map(|g| (g.image(0), g.image(1)))
            .collect();
        orbit.len() == self.n * (self.n - 1)
    }

    /// Least number of points moved by a non-identity element.
    pub fn minimal_degree(&self) -> Result<usize> {
        self.elements
            .iter()
            .filter(|g| !g.is_identity())
            .map(|g| g.degree())
            .min()
            .ok_or(Error::MinimalDegreeUndefined)
    }
}

fn close_elements(n: usize, gens: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let identity = Permutation::identity(n);
    seen.insert(identity.clone());
    let mut queue: Vec<Permutation> = vec![identity];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in gens {
            let next = current.compose(g);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::Capacity {
                        what: format!("closure of {} generators on {n} points", gens.len()),
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

fn greedy_generators(n: usize, elements: &[Permutation]) -> Result<Vec<Permutation>> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut closed: HashSet<Permutation> = HashSet::new();
    closed.insert(Permutation::identity(n));
    for e in elements {
        if !closed.contains(e) {
            gens.push(e.clone());
            closed = close_elements(n, &gens, elements.len())?
                .into_iter()
                .collect();
        }
    }
    Ok(gens)
}

/// Every subgroup of the symmetric group on `n` points, exactly once
/// (deduplicated by element set), by cyclic extension: grow known subgroups
/// by adjoining single elements and closing. Exhaustive because any subgroup
/// arises from the trivial group through a chain of single-element adjoins.
pub fn all_subgroups(n: usize, caps: &Caps) -> Result<Vec<PermGroup>> {
    caps.check_sym_points(n)?;
    let sym = symmetric_elements(n, caps)?;
    let index: HashMap<&Permutation, u32> =
        sym.iter().enumerate().map(|(i, p)| (p, i as u32)).collect();
    let identity_idx = index[&Permutation::identity(n)];

    // Subgroups as sorted element-index vectors alongside a small generating
    // index set used to keep extension closures cheap.
    let close_idx = |gen_idx: &[u32]| -> Vec<u32> {
        let mut seen: HashSet<u32> = HashSet::new();
        seen.insert(identity_idx);
        let mut queue = vec![identity_idx];
        let mut head = 0;
        while head < queue.len() {
            let c = queue[head];
            head += 1;
            for &g in gen_idx {
                let prod = sym[c as usize].compose(&sym[g as usize]);
                let p = index[&prod];
                if seen.insert(p) {
                    queue.push(p);
                }
            }
        }
        queue.sort_unstable();
        queue
    };

    let trivial = vec![identity_idx];
    let mut known: HashSet<Vec<u32>> = HashSet::new();
    known.insert(trivial.clone());
    let mut worklist: Vec<(Vec<u32>, Vec<u32>)> = vec![(trivial, Vec::new())];
    let mut head = 0;
    while head < worklist.len() {
        let (elems, gens) = worklist[head].clone();
        head += 1;
        for g in 0..sym.len() as u32 {
            if elems.binary_search(&g).is_ok() {
                continue;
            }
            let mut ext_gens = gens.clone();
            ext_gens.push(g);
            let ext = close_idx(&ext_gens);
            if known.insert(ext.clone()) {
                worklist.push((ext, ext_gens));
            }
        }
    }

    let mut groups: Vec<PermGroup> = worklist
        .into_iter()
        .map(|(elems, gens)| PermGroup {
            n,
            generators: gens.iter().map(|&g| sym[g as usize].clone()).collect(),
            elements: elems.iter().map(|&e| sym[e as usize].clone()).collect(),
        })
        .collect();
    groups.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(groups)
}

/// The normalizer N_{S_n}(T) = {y in S_n : y⁻¹Ty = T}, by brute force over
/// the full symmetric group.
pub fn normalizer_in_sym(t: &PermGroup, caps: &Caps) -> Result<PermGroup> {
    let sym = symmetric_elements(t.n(), caps)?;
    let gens = t.minimal_generators();
    let normalizing: Vec<Permutation> = sym
        .into_iter()
        .filter(|y| {
            let y_inv = y.inverse();
            // y⁻¹⟨gens⟩y ⊆ T suffices: conjugation preserves order.
            gens.iter()
                .all(|g| t.contains(&y_inv.compose(g).compose(y)))
        })
        .collect();
    PermGroup::from_elements(t.n(), normalizing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn caps() -> Caps {
        Caps::default()
    }

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    /// Independent composition oracle: point-by-point lookup through hash
    /// maps built from the two image tables.
    fn oracle_compose(p: &Permutation, r: &Permutation) -> Vec<usize> {
        let pm: HashMap<usize, usize> = p.images().iter().cloned().enumerate().collect();
        let rm: HashMap<usize, usize> = r.images().iter().cloned().enumerate().collect();
        (0..p.n()).map(|i| rm[&pm[&i]]).collect()
    }

    #[test]
    fn compose_identity_and_involution() {
        let id = Permutation::identity(3);
        let c3 = cyc(3, "(0 1 2)");
        assert_eq!(id.compose(&c3), c3);
        let swap = cyc(2, "(0 1)");
        assert_eq!(swap.compose(&swap), Permutation::identity(2));
    }

    #[test]
    fn compose_follows_left_to_right_convention() {
        let p = cyc(3, "(0 1)");
        let r = cyc(3, "(1 2)");
        let composed = p.compose(&r);
        // i ↦ (i^p)^r: frozen from the lookup oracle below.
        assert_eq!(composed.images(), &[2, 0, 1]);
        assert_eq!(oracle_compose(&p, &r), vec![2, 0, 1]);
    }

    #[test]
    fn degree_and_fixed_points() {
        assert_eq!(
            degree_and_fix(&Permutation::identity(4)),
            (0, vec![0, 1, 2, 3])
        );
        assert_eq!(degree_and_fix(&cyc(4, "(0 1)")), (2, vec![2, 3]));
        assert_eq!(degree_and_fix(&cyc(3, "(0 1 2)")), (3, vec![]));
    }

    #[test]
    #[should_panic(expected = "different point sets")]
    fn compose_rejects_size_mismatch() {
        let _ = cyc(2, "(0 1)").compose(&cyc(3, "(0 1 2)"));
    }

    #[test]
    fn parse_both_forms_and_canonical_display() {
        let p = Permutation::parse("[1,0,3,2]", 4).unwrap();
        assert_eq!(p, cyc(4, "(0 1)(2 3)"));
        assert_eq!(p.to_string(), "[1,0,3,2]");
        assert_eq!(
            Permutation::parse("()", 3).unwrap(),
            Permutation::identity(3)
        );
        assert!(Permutation::parse("[0,0,1]", 3).is_err());
        assert!(Permutation::parse("(0 1", 3).is_err());
        assert!(Permutation::parse("[1,0]", 3).is_err());
    }

    /// Brute-force closure oracle: saturate all pairwise products until no
    /// new element appears.
    fn oracle_closure(n: usize, gens: &[Permutation]) -> Vec<Permutation> {
        let mut set: HashSet<Permutation> = gens.iter().cloned().collect();
        set.insert(Permutation::identity(n));
        loop {
            let mut fresh = Vec::new();
            for a in &set {
                for b in &set {
                    let ab = a.compose(b);
                    if !set.contains(&ab) {
                        fresh.push(ab);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            set.extend(fresh);
        }
        let mut v: Vec<_> = set.into_iter().collect();
        v.sort();
        v
    }

    #[test]
    fn generate_small_groups() {
        let s3 = PermGroup::generate(3, &[cyc(3, "(0 1)"), cyc(3, "(0 1 2)")], &caps()).unwrap();
        assert_eq!(s3.order(), 6);

        let trivial = PermGroup::generate(4, &[], &caps()).unwrap();
        assert_eq!(trivial.order(), 1);

        let gens = [cyc(4, "(0 1)(2 3)"), cyc(4, "(0 2)(1 3)")];
        let klein = PermGroup::generate(4, &gens, &caps()).unwrap();
        assert_eq!(klein.order(), 4);
        assert_eq!(klein.elements(), &oracle_closure(4, &gens)[..]);
    }

    #[test]
    fn generate_respects_group_cap() {
        let small = Caps {
            max_group: 5,
            ..Caps::default()
        };
        let err =
            PermGroup::generate(3, &[cyc(3, "(0 1)"), cyc(3, "(0 1 2)")], &small).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    /// Brute-force subgroup oracle: sweep all subsets containing the
    /// identity whose size divides n!, keep the ones closed under
    /// composition.
    fn oracle_subgroup_count(n: usize) -> usize {
        let sym = symmetric_elements(n, &caps()).unwrap();
        let sz = sym.len();
        let table: Vec<Vec<usize>> = sym
            .iter()
            .map(|a| {
                sym.iter()
                    .map(|b| sym.binary_search(&a.compose(b)).unwrap())
                    .collect()
            })
            .collect();
        let id = sym.binary_search(&Permutation::identity(n)).unwrap();
        let mut count = 0usize;
        for mask in 0u32..(1 << sz) {
            if mask & (1 << id) == 0 {
                continue;
            }
            let size = mask.count_ones() as usize;
            if !sz.is_multiple_of(size) {
                continue;
            }
            let members: Vec<usize> = (0..sz).filter(|&i| mask & (1 << i) != 0).collect();
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| mask & (1 << table[a][b]) != 0));
            if closed {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn all_subgroups_matches_subset_brute_force() {
        assert_eq!(all_subgroups(2, &caps()).unwrap().len(), 2);
        let at3 = all_subgroups(3, &caps()).unwrap();
        assert_eq!(at3.len(), 6);
        assert_eq!(oracle_subgroup_count(3), 6);
        let at4 = all_subgroups(4, &caps()).unwrap();
        assert_eq!(at4.len(), 30);
        assert_eq!(oracle_subgroup_count(4), 30);
        // No duplicates by element set.
        let keys: HashSet<Vec<Permutation>> = at4.iter().map(|g| g.elements().to_vec()).collect();
        assert_eq!(keys.len(), 30);
    }

    #[test]
    fn all_subgroups_rejects_large_point_sets() {
        let err = all_subgroups(9, &caps()).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }));
    }

    /// Quantifier oracle for 2-transitivity, straight from the definition.
    fn oracle_2_transitive(g: &PermGroup) -> bool {
        let n = g.n();
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                for c in 0..n {
                    for d in 0..n {
                        if c == d {
                            continue;
                        }
                        if !g
                            .elements()
                            .iter()
                            .any(|x| x.image(a) == c && x.image(b) == d)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn transitivity_tests() {
        let s3 = PermGroup::symmetric(3, &caps()).unwrap();
        assert!(s3.is_transitive());
        assert!(s3.is_2_transitive());

        let c3 = PermGroup::generate(3, &[cyc(3, "(0 1 2)")], &caps()).unwrap();
        assert!(c3.is_transitive());
        assert!(!c3.is_2_transitive());

        let a4 =
            PermGroup::generate(4, &[cyc(4, "(0 1 2)"), cyc(4, "(0 1)(2 3)")], &caps()).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.is_2_transitive());
        assert_eq!(oracle_2_transitive(&a4), a4.is_2_transitive());
        assert_eq!(oracle_2_transitive(&c3), c3.is_2_transitive());
    }

    /// Normalizer oracle conjugating the full element set.
    fn oracle_normalizer_order(t: &PermGroup) -> usize {
        let sym = symmetric_elements(t.n(), &caps()).unwrap();
        sym.iter()
            .filter(|y| {
                let mut conj: Vec<Permutation> = t
                    .elements()
                    .iter()
                    .map(|g| y.inverse().compose(g).compose(y))
                    .collect();
                conj.sort();
                conj == t.elements()
            })
            .count()
    }

    #[test]
    fn normalizers_in_s4() {
        let trivial = PermGroup::trivial(4);
        assert_eq!(normalizer_in_sym(&trivial, &caps()).unwrap().order(), 24);

        let klein =
            PermGroup::generate(4, &[cyc(4, "(0 1)(2 3)"), cyc(4, "(0 2)(1 3)")], &caps()).unwrap();
        let n_klein = normalizer_in_sym(&klein, &caps()).unwrap();
        assert_eq!(n_klein.order(), 24);
        assert_eq!(oracle_normalizer_order(&klein), 24);

        let swap = PermGroup::generate(4, &[cyc(4, "(0 1)")], &caps()).unwrap();
        let n_swap = normalizer_in_sym(&swap, &caps()).unwrap();
        assert_eq!(n_swap.order(), 4);
        assert_eq!(oracle_normalizer_order(&swap), 4);
        // ⟨(0 1)⟩ × ⟨(2 3)⟩ exactly.
        assert!(n_swap.contains(&cyc(4, "(2 3)")));
        assert!(n_swap.contains(&cyc(4, "(0 1)(2 3)")));
    }

    #[test]
    fn minimal_degree_values() {
        let s3 = PermGroup::symmetric(3, &caps()).unwrap();
        assert_eq!(s3.minimal_degree().unwrap(), 2);

        // Oracle: enumerate the powers of the 4-cycle; every non-identity
        // power moves all four points, so the minimum is 4.
        let c = cyc(4, "(0 1 2 3)");
        let powers = [c.clone(), c.compose(&c), c.compose(&c).compose(&c)];
        let oracle_min = powers.iter().map(|p| p.degree()).min().unwrap();
        assert_eq!(oracle_min, 4);
        let c4 = PermGroup::generate(4, &[c], &caps()).unwrap();
        assert_eq!(c4.minimal_degree().unwrap(), 4);

        let a4 =
            PermGroup::generate(4, &[cyc(4, "(0 1 2)"), cyc(4, "(0 1)(2 3)")], &caps()).unwrap();
        assert_eq!(a4.minimal_degree().unwrap(), 3);

        assert_eq!(
            PermGroup::trivial(3).minimal_degree(),
            Err(Error::MinimalDegreeUndefined)
        );
    }

    #[test]
    fn group_invariants_over_s4_subgroups() {
        let subs = all_subgroups(4, &caps()).unwrap();
        for t in &subs {
            assert_eq!(24 % t.order(), 0, "Lagrange fails for {:?}", t.generators());
            let norm = normalizer_in_sym(t, &caps()).unwrap();
            for g in t.elements() {
                assert!(norm.contains(g));
            }
            if t.is_2_transitive() {
                assert!(t.is_transitive());
            }
        }
    }

    #[test]
    fn from_elements_rejects_non_groups() {
        let not_closed = vec![Permutation::identity(3), cyc(3, "(0 1 2)")];
        assert_eq!(
            PermGroup::from_elements(3, not_closed),
            Err(Error::NotAGroup)
        );
    }

    proptest! {
        #[test]
        fn compose_inverse_is_identity(seed in 0u64..1000) {
            use rand::{SeedableRng, seq::SliceRandom};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 1 + (seed as usize % 8);
            let mut images: Vec<usize> = (0..n).collect();
            images.shuffle(&mut rng);
            let p = Permutation::from_images(images).unwrap();
            prop_assert_eq!(p.compose(&p.inverse()), Permutation::identity(n));
            prop_assert_eq!(p.inverse().compose(&p), Permutation::identity(n));
            prop_assert_eq!(Permutation::identity(n).degree(), 0);
        }
    }
}
