//! Cross-module checks that are too expensive or too entangled for unit
//! tests: the stabilizer reduction behind the diagonal-transitivity
//! decision, and profile constancy on the first two cells.

use std::collections::{HashMap, HashSet};

use hamnt_core::code::{distance_partition, is_diagonally_nt, is_nt, Code};
use hamnt_core::families::{perm_code, w_half};
use hamnt_core::hamming::{diag_wreath_elements, HammingAut, Space, Vertex};
use hamnt_core::perm::{all_subgroups, Permutation};
use hamnt_core::Caps;

/// All subgroups of an explicitly listed group, by subset brute force over
/// its multiplication table. Only sane for very small groups.
fn subgroups_of(elements: &[HammingAut]) -> Vec<Vec<usize>> {
    let index: HashMap<&HammingAut, usize> =
        elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
        .collect();
    let identity = elements
        .iter()
        .position(|x| x.is_identity())
        .expect("group contains the identity");
    let n = elements.len();
    assert!(n <= 16, "subset brute force only runs on tiny groups");
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << identity) == 0 {
            continue;
        }
        let size = mask.count_ones() as usize;
        if !n.is_multiple_of(size) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| mask & (1 << table[a][b]) != 0));
        if closed {
            out.push(members);
        }
    }
    out
}

/// Is the given cell a single orbit of the listed automorphisms?
fn cell_is_orbit(cell: &[Vertex], subgroup: &[&HammingAut]) -> bool {
    let seed = &cell[0];
    let mut orbit: Vec<Vertex> = subgroup.iter().map(|x| x.apply(seed)).collect();
    orbit.sort();
    orbit.dedup();
    orbit == cell
}

/// The decision procedure collapses "some subgroup of the diagonal wreath
/// works" to "the full stabilizer works". Cross-check against the literal
/// existential at shapes where every subgroup can be enumerated.
#[test]
fn diagonal_nt_matches_subgroup_existential_oracle() {
    let caps = Caps::default();
    for (m, q) in [(2usize, 2usize), (2, 3)] {
        let space = Space::new(m, q).unwrap();
        let ambient = diag_wreath_elements(m, q, &caps).unwrap();
        let subgroup_indices = subgroups_of(&ambient);
        let n = space.vertex_count() as usize;
        for mask in 1u32..(1 << n) {
            let words: Vec<Vertex> = (0..n)
                .filter(|&r| mask & (1 << r) != 0)
                .map(|r| space.unrank(r))
                .collect();
            let code = Code::in_space(space, words).unwrap();
            let partition = distance_partition(&code, &caps).unwrap();
            let exists = partition.rho() >= 1
                && subgroup_indices.iter().any(|members| {
                    let sub: Vec<&HammingAut> = members.iter().map(|&i| &ambient[i]).collect();
                    cell_is_orbit(&partition.cell_vertices(0), &sub)
                        && cell_is_orbit(&partition.cell_vertices(1), &sub)
                });
            let verdict = is_diagonally_nt(&code, &caps).unwrap().verdict;
            assert_eq!(
                exists, verdict,
                "H({m},{q}) mask {mask:#b}: existential {exists} vs stabilizer {verdict}"
            );
        }
    }
}

/// Profile constancy on the code and its neighbour set: Num under any
/// diagonal witness, full composition when the witness fixes the alphabet.
#[test]
fn certified_codes_have_constant_profiles_on_first_cells() {
    let caps = Caps::default();
    for code in [
        w_half(5).unwrap(),
        perm_code(
            hamnt_core::perm::PermGroup::generate(
                3,
                &[Permutation::parse("(0 1 2)", 3).unwrap()],
                &caps,
            )
            .unwrap()
            .elements(),
        )
        .unwrap(),
    ] {
        let cert = is_diagonally_nt(&code, &caps).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.num_profiles[0].len(), 1);
        assert_eq!(cert.num_profiles[1].len(), 1);
    }

    // A witness inside the column group alone also pins the composition.
    let space = Space::new(3, 2).unwrap();
    let ones = Code::in_space(space, vec![Vertex::parse("1,1,1").unwrap()]).unwrap();
    let caps_v = caps;
    let sym3 = hamnt_core::perm::symmetric_elements(3, &caps_v).unwrap();
    let column_group: Vec<HammingAut> = sym3
        .iter()
        .map(|sigma| HammingAut::column(2, sigma))
        .collect();
    let cert = is_nt(&ones, &column_group, &caps_v).unwrap();
    assert!(cert.verdict);
    let partition = distance_partition(&ones, &caps_v).unwrap();
    for i in 0..=1usize {
        let compositions: HashSet<Vec<(u8, usize)>> = partition
            .cell_vertices(i)
            .iter()
            .map(|v| v.composition().pairs)
            .collect();
        assert_eq!(compositions.len(), 1, "cell {i}");
    }
}

/// Permutation-code minimum distance equals the group's minimal degree,
/// swept over every subgroup of S₃ and S₄.
#[test]
fn permutation_code_distance_is_minimal_degree() {
    let caps = Caps::default();
    for q in [3usize, 4] {
        for t in all_subgroups(q, &caps).unwrap() {
            if t.order() < 2 {
                continue;
            }
            let code = perm_code(t.elements()).unwrap();
            assert_eq!(code.min_distance().unwrap(), t.minimal_degree().unwrap());
        }
    }
}
