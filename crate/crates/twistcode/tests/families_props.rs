//! Family-generator properties: lattice equivalences, the checkerboardable
//! distance formula, cyclic-family number theory against brute oracles.

mod common;

use common::{in_group, rng, shifts};
use rand::Rng;
use twistcode::families::{
    self, cyclic2_code, cyclic4_consistent, cyclic4_k, membership_xz_4param, min_linf_combination,
    rotated_toric, rotated_toric_distance_formula, square_toric, CyclicSpec, LatticeVectors,
};
use twistcode::logical::{exact_distance, SearchStrategy, DEFAULT_BUDGET};
use twistcode::pauli::Pauli;
use twistcode::surface;

fn nkd(stabs: &[Pauli]) -> (usize, usize, usize) {
    let n = stabs[0].n();
    let rows: Vec<_> = stabs.iter().map(|p| p.symplectic_row()).collect();
    let k = n - twistcode::f2::rank(&rows, 2 * n);
    let (d, _) = exact_distance(stabs, DEFAULT_BUDGET, SearchStrategy::Auto).unwrap();
    (n, k, d)
}

#[test]
fn rotated_toric_axis_aligned_equals_square() {
    let a = rotated_toric(LatticeVectors::new((2, 0), (0, 2)).unwrap()).unwrap();
    let b = square_toric(2, 2).unwrap();
    let sa = a.system.summary().unwrap();
    let sb = b.system.summary().unwrap();
    assert_eq!(
        (sa.vertex_count(), sa.edge_count(), sa.face_count()),
        (sb.vertex_count(), sb.edge_count(), sb.face_count())
    );
    let ca = surface::build_default(&a.system).unwrap();
    let cb = surface::build_default(&b.system).unwrap();
    assert_eq!(ca.params_nk().unwrap(), cb.params_nk().unwrap());
    assert_eq!(
        nkd(&ca.stabilizers),
        nkd(&cb.stabilizers)
    );
}

#[test]
fn rotated_toric_small_vectors() {
    // (1,2), (-2,1): five vertices, K = 1 (odd one-norms).
    let r = rotated_toric(LatticeVectors::new((1, 2), (-2, 1)).unwrap()).unwrap();
    let code = surface::build_default(&r.system).unwrap();
    assert_eq!(code.params_nk().unwrap(), (5, 1));
    // (2,2), (-2,2): eight vertices, K = 2 (even one-norms).
    let r = rotated_toric(LatticeVectors::new((2, 2), (-2, 2)).unwrap()).unwrap();
    let code = surface::build_default(&r.system).unwrap();
    assert_eq!(code.params_nk().unwrap(), (8, 2));
    let lattice = LatticeVectors::new((2, 2), (-2, 2)).unwrap();
    let formula = rotated_toric_distance_formula(&lattice).unwrap();
    let (d, _) = exact_distance(&code.stabilizers, DEFAULT_BUDGET, SearchStrategy::Auto).unwrap();
    assert_eq!(formula, 2);
    assert_eq!(d, 2);
}

#[test]
fn distance_formula_checkerboardable_cases() {
    // Square lattices and the even cyclic-toric case.
    let square = LatticeVectors::new((2, 0), (0, 2)).unwrap();
    assert_eq!(rotated_toric_distance_formula(&square).unwrap(), 2);
    let c13 = LatticeVectors::new((1, 3), (-3, 1)).unwrap();
    assert_eq!(rotated_toric_distance_formula(&c13).unwrap(), 3);
    // Non-checkerboardable input rejected.
    let odd = LatticeVectors::new((1, 2), (-2, 1)).unwrap();
    assert!(rotated_toric_distance_formula(&odd).is_err());
    // Widening the search box never changes the minimum.
    for lattice in [square, c13, LatticeVectors::new((2, 2), (-2, 2)).unwrap()] {
        assert_eq!(
            min_linf_combination(&lattice, 1),
            min_linf_combination(&lattice, 2)
        );
    }
}

#[test]
fn distance_formula_matches_exact_on_checkerboardable_instances() {
    for (l1, l2) in [
        ((2i64, 0i64), (0i64, 2i64)),
        ((2, 0), (0, 4)),
        ((4, 0), (0, 4)),
        ((2, 2), (-2, 2)),
        ((1, 3), (-3, 1)),
        ((3, 1), (-1, 3)),
    ] {
        let lattice = LatticeVectors::new(l1, l2).unwrap();
        assert!(lattice.checkerboardable());
        let formula = rotated_toric_distance_formula(&lattice).unwrap();
        let graph = rotated_toric(lattice).unwrap();
        let code = surface::build_default(&graph.system).unwrap();
        let (d, _) =
            exact_distance(&code.stabilizers, DEFAULT_BUDGET, SearchStrategy::Auto).unwrap();
        assert_eq!(formula, d, "{l1:?} {l2:?}");
    }
}

#[test]
fn cyclic4_special_condition_subfamily_b() {
    // (N, p, q, r) = (s + t + 4, s + 1, s + 3, 1) is consistent for all s, t.
    for s in 0..6 {
        for t in 0..6 {
            let spec = CyclicSpec::new(s + t + 4, s + 1, s + 3, 1).unwrap();
            assert!(cyclic4_consistent(&spec), "s={s} t={t}");
        }
    }
}

#[test]
fn cyclic4_consistency_matches_brute_force() {
    let mut r = rng(101);
    let mut checked = 0;
    while checked < 200 {
        let n = r.gen_range(4..=16);
        let p = r.gen_range(1..n);
        let q = r.gen_range(1..n);
        let rr = r.gen_range(1..n);
        let Ok(spec) = CyclicSpec::new(n, p, q, rr) else {
            continue;
        };
        checked += 1;
        let stabs = spec.stabilizers();
        let brute = (0..n).all(|i| {
            ((i + 1)..n).all(|j| !twistcode::pauli::commute_bit(&stabs[i], &stabs[j]))
        });
        assert_eq!(cyclic4_consistent(&spec), brute, "{spec:?}");
    }
}

#[test]
fn cyclic4_membership_spot_checks() {
    // 2-parameter embeddings: s=3, t=1 -> Z^N in the group; s=1, t=3 -> X^N.
    let z_case = CyclicSpec::new(3 + 1 + 4, 4, 6, 1).unwrap();
    let (z_in, x_in) = membership_xz_4param(&z_case).unwrap();
    assert!(z_in && !x_in);
    let x_case = CyclicSpec::new(1 + 3 + 4, 2, 4, 1).unwrap();
    let (z_in, x_in) = membership_xz_4param(&x_case).unwrap();
    assert!(!z_in && x_in);
    // s = t = 0: neither, but Y^N is generated.
    let y_case = CyclicSpec::new(4, 1, 3, 1).unwrap();
    let (z_in, x_in) = membership_xz_4param(&y_case).unwrap();
    assert!(!z_in && !x_in);
    let all_y = Pauli::parse("YYYY").unwrap();
    assert!(in_group(&y_case.stabilizers(), &all_y));
}

#[test]
fn two_param_membership_theorem_vs_solves() {
    // Z^N iff s=3, t=1 (mod 4); X^N iff s=1, t=3 (mod 4); Y^N iff both even.
    for s in 0..=9usize {
        for t in 0..=9usize {
            let (stabs, _) = cyclic2_code(s, t).unwrap();
            let n = s + t + 4;
            let z = in_group(&stabs, &Pauli::parse(&"Z".repeat(n)).unwrap());
            let x = in_group(&stabs, &Pauli::parse(&"X".repeat(n)).unwrap());
            let y = in_group(&stabs, &Pauli::parse(&"Y".repeat(n)).unwrap());
            assert_eq!(z, s % 4 == 3 && t % 4 == 1, "Z s={s} t={t}");
            assert_eq!(x, s % 4 == 1 && t % 4 == 3, "X s={s} t={t}");
            assert_eq!(y, s % 2 == 0 && t % 2 == 0, "Y s={s} t={t}");
            // At most one of the three.
            assert!(u32::from(z) + u32::from(x) + u32::from(y) <= 1);
            // And the membership_xz parity conditions agree (cross-check
            // built into the call).
            let spec = CyclicSpec::new(n, s + 1, s + 3, 1).unwrap();
            let (zf, xf) = membership_xz_4param(&spec).unwrap();
            assert_eq!((zf, xf), (z, x));
        }
    }
}

#[test]
fn interchange_s_t_preserves_parameters() {
    for s in 0..=6usize {
        for t in (s + 1)..=6usize {
            let (a, _) = cyclic2_code(s, t).unwrap();
            let (b, _) = cyclic2_code(t, s).unwrap();
            assert_eq!(nkd(&a), nkd(&b), "({s},{t})");
        }
    }
}

#[test]
fn shift_subsets_multiplying_to_identity_are_coset_unions() {
    // For consistent specs with N <= 12: a nonempty shift subset multiplies
    // to I (mod phase) iff it is a union of cosets of {kK}.
    for spec in [
        CyclicSpec::new(6, 2, 4, 1).unwrap(),
        CyclicSpec::new(8, 2, 4, 1).unwrap(),
        CyclicSpec::new(10, 2, 4, 1).unwrap(),
        CyclicSpec::new(12, 4, 6, 1).unwrap(),
        CyclicSpec::new(9, 3, 6, 1).unwrap(),
    ] {
        if !cyclic4_consistent(&spec) {
            continue;
        }
        let n = spec.n;
        let k = cyclic4_k(&spec).unwrap();
        let stabs = spec.stabilizers();
        let coset_of = |x: usize| x % k;
        for mask in 1u32..(1 << n) {
            let mut prod = Pauli::identity(n);
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    prod = prod.mul(&stabs[i]);
                }
            }
            // Union of cosets: membership is constant on each residue class
            // mod K... the subgroup {kK} has N/K elements; its cosets are
            // the residues mod K shifted: coset c = {x : x % K == c}? The
            // subgroup generated by K in Z_N is {0, K, 2K, ...}; its cosets
            // are exactly the residue classes mod K.
            let is_union = (0..k).all(|c| {
                let members: Vec<usize> = (0..n).filter(|x| coset_of(*x) == c).collect();
                let selected: Vec<bool> =
                    members.iter().map(|&x| mask >> x & 1 == 1).collect();
                selected.iter().all(|&b| b) || selected.iter().all(|&b| !b)
            });
            assert_eq!(prod.is_identity(), is_union, "{spec:?} mask {mask:b}");
        }
    }
}

#[test]
fn cyclic2_first_diagonals() {
    // D(s, s) = 2, D(s, s+1) = 3, D(s, s+2) = 2 for s <= 7.
    for s in 0..=7usize {
        let (a, _) = cyclic2_code(s, s).unwrap();
        assert_eq!(nkd(&a).2, 2, "(s,s) s={s}");
        let (b, _) = cyclic2_code(s, s + 1).unwrap();
        assert_eq!(nkd(&b).2, 3, "(s,s+1) s={s}");
        let (c, _) = cyclic2_code(s, s + 2).unwrap();
        assert_eq!(nkd(&c).2, 2, "(s,s+2) s={s}");
    }
}

#[test]
fn five_qubit_code_is_smallest_member() {
    let ct = families::cyclic_toric(1, 2).unwrap();
    assert_eq!(nkd(&ct.stabilizers), (5, 1, 3));
    // And the (0,1) entry of the 2-parameter table is the same code.
    let (stabs, k) = cyclic2_code(0, 1).unwrap();
    assert_eq!(k, 1);
    assert_eq!(stabs[0].to_string(), "ZXXZI");
    assert_eq!(nkd(&stabs).2, 3);
}

#[test]
fn shifts_helper_agrees_with_family_strings() {
    let ct = families::cyclic_toric(1, 2).unwrap();
    let expect = shifts("ZXIXZ");
    for (a, b) in ct.stabilizers.iter().zip(&expect) {
        assert_eq!(a.to_string(), b.to_string());
    }
}
