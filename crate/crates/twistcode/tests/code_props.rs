//! Surface-code assembly and logical-operator analysis: sigma/omega maps,
//! trail triviality, homological systoles, path-basis bounds, and distance
//! reports, with independent oracles.

mod common;

use common::{edge_between, fixtures, in_group, random_combination, rng, shifts};
use twistcode::bits::BitVec;
use twistcode::checkerboard;
use twistcode::derived;
use twistcode::families;
use twistcode::logical::{
    self, centralizer_basis, decoding_edge_count, distance_upper_j, exact_distance, hsys, omega,
    sigma, sigma_preimage, t0_basis, trail_is_trivial, DistanceReport, ReportOptions,
    SearchStrategy, DEFAULT_BUDGET, DEFAULT_HSYS_CAP,
};
use twistcode::pauli::{self, Pauli};
use twistcode::surface::{self, SurfaceCode};

fn build(sys: &twistcode::RotationSystem) -> SurfaceCode {
    surface::build_default(sys).unwrap()
}

#[test]
fn cyclic_toric_code_equals_shift_code() {
    // The graph route and the explicit cyclic strings generate the same
    // stabilizer group after relabeling qubits along the lattice line.
    for (a, b) in [(1u64, 2u64), (1, 3), (2, 3)] {
        let ct = families::cyclic_toric(a, b).unwrap();
        let code = build(&ct.graph.system);
        let n = code.qubit_count;
        let relabel: Vec<usize> = (0..n).map(|k| ct.graph.class_of((k as i64, 0))).collect();
        // Relabeled graph stabilizers.
        let relabeled: Vec<Pauli> = code
            .stabilizers
            .iter()
            .map(|s| {
                let text = s.to_string();
                let bytes = text.as_bytes();
                Pauli::parse(&(0..n).map(|i| bytes[relabel[i]] as char).collect::<String>())
                    .unwrap()
            })
            .collect();
        // Each relabeled stabilizer is one of the shift strings, and the
        // row spaces agree.
        let shift_set: Vec<String> = ct.stabilizers.iter().map(|p| p.to_string()).collect();
        for p in &relabeled {
            assert!(
                shift_set.contains(&p.to_string()),
                "({a},{b}): {p} not a shift"
            );
        }
        for p in &ct.stabilizers {
            assert!(in_group(&relabeled, p), "({a},{b})");
        }
        for p in &relabeled {
            assert!(in_group(&ct.stabilizers, p), "({a},{b})");
        }
    }
}

#[test]
fn code_params_examples() {
    let cases: Vec<(&str, SurfaceCode, (usize, usize))> = vec![
        (
            "cyclic-1-2",
            build(&families::cyclic_toric(1, 2).unwrap().graph.system),
            (5, 1),
        ),
        (
            "stellated-3-2",
            build(&families::stellated_high_genus(3, 2).unwrap()),
            (13, 2),
        ),
        (
            "stellated-5-2",
            build(&families::stellated_high_genus(5, 2).unwrap()),
            (23, 4),
        ),
        (
            "torus-4x4",
            build(&families::square_toric(4, 4).unwrap().system),
            (16, 2),
        ),
        (
            "rotated-surface-5",
            build(&families::rotated_surface(5).unwrap()),
            (25, 1),
        ),
    ];
    for (name, code, want) in cases {
        assert_eq!(code.params_nk().unwrap(), want, "{name}");
        assert_eq!(code.qubit_count, code.expected_n(), "{name}");
        assert!(pauli::product(&code.stabilizers).is_identity(), "{name}");
    }
}

#[test]
fn stabilizers_commute_on_random_graphs() {
    let mut r = rng(67);
    for _ in 0..60 {
        let sys = common::random_rotation_system(&mut r, 30);
        let code = build(&sys);
        // build_default checks pairwise commutation internally; re-verify N.
        assert_eq!(code.qubit_count, code.expected_n());
        code.params_nk().unwrap();
    }
}

/// The facial cycle of face `f` in the decoding graph: at each corner
/// sector of `f`, the two neighbouring sectors around the shared vertex
/// (XOR-accumulated, since a sector can neighbour `f` twice).
fn facial_cycle(code: &SurfaceCode, f: usize) -> BitVec {
    let summary = &code.summary;
    let mut t = BitVec::zeros(decoding_edge_count(summary));
    for &(v, k) in &code.sectors_of_face[f] {
        let deg = summary.degrees[v];
        t.flip(logical::decoding_edge_index(summary, v, (k + 1) % deg));
        t.flip(logical::decoding_edge_index(summary, v, (k + deg - 1) % deg));
    }
    t
}

#[test]
fn sigma_empty_and_facial_cycles() {
    for (name, sys) in fixtures() {
        let code = build(&sys);
        let empty = BitVec::zeros(decoding_edge_count(&code.summary));
        assert!(sigma(&code, &empty).unwrap().is_identity(), "{name}");
        // The facial cycle of each face maps to exactly its stabilizer.
        for f in 0..code.stabilizers.len() {
            let t = facial_cycle(&code, f);
            let p = sigma(&code, &t).unwrap();
            assert_eq!(
                p.symplectic_row(),
                code.stabilizers[f].symplectic_row(),
                "{name} face {f}"
            );
        }
    }
}

#[test]
fn sigma_surjective_onto_centralizer() {
    // Constructive: sigma(sigma_preimage(p)) = p for every centralizer basis
    // element, on the small fixtures.
    for (name, sys) in fixtures() {
        let s = sys.summary().unwrap();
        if s.edge_count() > 26 {
            continue;
        }
        let code = build(&sys);
        for p in centralizer_basis(&code.stabilizers) {
            let t = sigma_preimage(&code, &p);
            let image = sigma(&code, &t).unwrap();
            assert_eq!(image.symplectic_row(), p.symplectic_row(), "{name}");
        }
    }
}

#[test]
fn sigma_homomorphism_and_nontriviality_iff_homology() {
    // Random decoding cycles on the checkerboardable 2x2 torus: sigma is a
    // homomorphism and sigma(c) is a stabilizer exactly when c lies in the
    // span of the facial cycles, via an independent cycle-space computation
    // on the decoding graph.
    let sys = families::square_toric(2, 2).unwrap().system;
    let code = build(&sys);
    let summary = &code.summary;
    let nd = decoding_edge_count(summary);
    let dec = derived::decoding_graph(&sys).unwrap();
    // Cycle space of the decoding graph as edge sets over its own edges.
    let ne = dec.edges.len();
    assert_eq!(ne, nd);
    // Build adjacency for spanning forest.
    let nn = dec.nodes.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nn];
    for (i, e) in dec.edges.iter().enumerate() {
        adj[e.face_node].push((i, e.vertex_node));
        adj[e.vertex_node].push((i, e.face_node));
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nn];
    let mut seen = vec![false; nn];
    let mut tree = vec![false; ne];
    for root in 0..nn {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut q = std::collections::VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for &(ei, w2) in &adj[u] {
                if !seen[w2] {
                    seen[w2] = true;
                    parent[w2] = Some((ei, u));
                    tree[ei] = true;
                    q.push_back(w2);
                }
            }
        }
    }
    let path_up = |mut u: usize| {
        let mut edges = BitVec::zeros(ne);
        while let Some((ei, p)) = parent[u] {
            edges.flip(ei);
            u = p;
        }
        edges
    };
    let mut cycle_basis = Vec::new();
    for (i, e) in dec.edges.iter().enumerate() {
        if !tree[i] {
            let mut c = path_up(e.face_node);
            c.xor_assign(&path_up(e.vertex_node));
            c.set(i, true);
            cycle_basis.push(c);
        }
    }
    // Decoding-edge index mapping: dec.edges[i] <-> decoding_edge_index.
    let to_dec_index: Vec<usize> = dec
        .edges
        .iter()
        .map(|e| logical::decoding_edge_index(summary, e.vertex, e.position))
        .collect();
    let mut r = rng(71);
    // sigma is a homomorphism and sigma(c) is a stabilizer iff c is in the
    // span of facial cycles.
    let facial: Vec<BitVec> = code
        .sectors_of_face
        .iter()
        .map(|sectors| {
            let mut t = BitVec::zeros(ne);
            for &(v, k) in sectors {
                let idx = logical::decoding_edge_index(summary, v, k);
                let local = to_dec_index.iter().position(|&x| x == idx).unwrap();
                t.set(local, true);
            }
            t
        })
        .collect();
    for _ in 0..200 {
        let c1 = random_combination(&mut r, &cycle_basis, ne);
        let c2 = random_combination(&mut r, &cycle_basis, ne);
        let lift = |c: &BitVec| {
            let mut t = BitVec::zeros(nd);
            for i in c.iter_ones() {
                t.set(to_dec_index[i], true);
            }
            t
        };
        let p1 = sigma(&code, &lift(&c1)).unwrap();
        let p2 = sigma(&code, &lift(&c2)).unwrap();
        let mut c12 = c1.clone();
        c12.xor_assign(&c2);
        let p12 = sigma(&code, &lift(&c12)).unwrap();
        assert_eq!(p1.mul(&p2).symplectic_row(), p12.symplectic_row());
        // Homological triviality (in-span of facial cycles) iff stabilizer.
        let trivial = twistcode::f2::solve_left(&facial, ne, &c1).is_some();
        assert_eq!(in_group(&code.stabilizers, &p1), trivial);
    }
}

#[test]
fn omega_basics_and_kernel() {
    for (name, sys) in fixtures() {
        let code = build(&sys);
        let s = &code.summary;
        let ne = s.edge_count();
        // t = all edges: the identity.
        let all = BitVec::from_indices(ne, 0..ne);
        assert!(omega(&code, &all).unwrap().is_identity(), "{name}");
        // A face boundary row maps to that face's stabilizer (mod phase).
        let phi = checkerboard::face_edge_matrix(s);
        for (f, row) in phi.iter().enumerate() {
            let p = omega(&code, row).unwrap();
            assert_eq!(
                p.symplectic_row(),
                code.stabilizers[f].symplectic_row(),
                "{name} face {f}"
            );
        }
        // Homomorphism on random T_0 elements.
        let basis = t0_basis(s);
        let mut r = rng(83);
        for _ in 0..20 {
            let t1 = random_combination(&mut r, &basis, ne);
            let t2 = random_combination(&mut r, &basis, ne);
            let p1 = omega(&code, &t1).unwrap();
            let p2 = omega(&code, &t2).unwrap();
            let mut t12 = t1.clone();
            t12.xor_assign(&t2);
            let p12 = omega(&code, &t12).unwrap();
            assert_eq!(p1.mul(&p2).symplectic_row(), p12.symplectic_row(), "{name}");
        }
    }
}

#[test]
fn omega_kernel_is_zero_and_all_ones() {
    // Exhaustive kernel check on small fixtures: omega(t) = I (mod phase)
    // only for t = 0 and t = 1.
    for (name, sys) in [
        ("theta", common::theta_on_torus()),
        ("torus-2x2", families::square_toric(2, 2).unwrap().system),
    ] {
        let code = build(&sys);
        let s = &code.summary;
        let ne = s.edge_count();
        let basis = t0_basis(s);
        let dim = basis.len();
        assert!(dim <= 16);
        for mask in 0u32..(1 << dim) {
            let mut t = BitVec::zeros(ne);
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    t.xor_assign(b);
                }
            }
            let p = omega(&code, &t).unwrap();
            let expect_identity = t.is_zero() || t.count_ones() == ne;
            assert_eq!(p.is_identity(), expect_identity, "{name} mask {mask:b}");
        }
    }
}

#[test]
fn omega_column_of_odd_by_even_torus() {
    // The odd-length cycle around the 3x6 torus (the x-direction loop
    // through y = 0) is a nontrivial logical of weight 3 = min(3, 6).
    let toric = families::square_toric(3, 6).unwrap();
    let sys = &toric.system;
    let code = build(sys);
    let s = &code.summary;
    let mut col = BitVec::zeros(s.edge_count());
    for x in 0..3i64 {
        let u = toric.class_of((x, 0));
        let v = toric.class_of((x + 1, 0));
        let e = edge_between(s, u, v).unwrap();
        col.set(e, true);
    }
    assert_eq!(col.count_ones(), 3);
    assert!(!trail_is_trivial(s, &col).unwrap());
    let p = omega(&code, &col).unwrap();
    assert_eq!(p.weight(), 3.min(6));
    assert!(!in_group(&code.stabilizers, &p));
    assert!(code.stabilizers.iter().all(|st| !pauli::commute_bit(st, &p)));
}

#[test]
fn trail_triviality_matches_stabilizer_membership() {
    let mut r = rng(97);
    for (name, sys) in fixtures() {
        let code = build(&sys);
        let s = &code.summary;
        let basis = t0_basis(s);
        // The basis paths themselves plus 500 random trails.
        let mut trails: Vec<BitVec> = basis.clone();
        for _ in 0..500 {
            trails.push(random_combination(&mut r, &basis, s.edge_count()));
        }
        for t in &trails {
            let trivial = trail_is_trivial(s, t).unwrap();
            let p = omega(&code, t).unwrap();
            assert_eq!(trivial, in_group(&code.stabilizers, &p), "{name}");
        }
    }
}

#[test]
fn hsys_values() {
    // 3x3 torus: girth around the handle.
    let three = families::square_toric(3, 3).unwrap().system;
    let h = hsys(&three.summary().unwrap(), DEFAULT_HSYS_CAP).unwrap().unwrap();
    assert!(h.exact);
    assert_eq!(h.value, 3);
    // Decoding component of the 4x4 torus: hsys 8, so half = 4 = D.
    let four = families::square_toric(4, 4).unwrap().system;
    let (w, b) = derived::embedded_decoding_components(&four).unwrap();
    for comp in [w, b] {
        let h = hsys(&comp.summary().unwrap(), DEFAULT_HSYS_CAP).unwrap().unwrap();
        assert!(h.exact);
        assert_eq!(h.value, 8);
    }
    // Face-vertex graph of the m x n torus: 2 min(m, n).
    for (m, n) in [(3usize, 3usize), (3, 4), (4, 5)] {
        let sys = families::square_toric(m, n).unwrap().system;
        let fv = derived::face_vertex(&sys);
        let h = hsys(&fv.summary().unwrap(), DEFAULT_HSYS_CAP).unwrap().unwrap();
        assert_eq!(h.value, 2 * m.min(n), "{m}x{n}");
    }
    // Genus 0: no nontrivial class.
    let rs = families::rotated_surface(3).unwrap();
    assert!(hsys(&rs.summary().unwrap(), DEFAULT_HSYS_CAP).unwrap().is_none());
}

#[test]
fn path_basis_upper_bound_values() {
    // Odd x even torus: J = min(m, n).
    for (m, n) in [(3usize, 4usize), (3, 6)] {
        let sys = families::square_toric(m, n).unwrap().system;
        let (j, _) = distance_upper_j(&sys.summary().unwrap()).unwrap();
        assert_eq!(j, m.min(n), "{m}x{n}");
    }
    // The 5-qubit code graph: J = 3 = D.
    let k5 = families::cyclic_toric(1, 2).unwrap().graph.system;
    let (j, _) = distance_upper_j(&k5.summary().unwrap()).unwrap();
    assert_eq!(j, 3);
}

#[test]
fn exact_distance_strategies_agree() {
    // Full overlap sweep on instances with N <= 12.
    let mut instances: Vec<Vec<Pauli>> = vec![
        shifts("ZXIXZ"),
        shifts("ZXIXZI"),
        shifts("ZXIXZII"),
        shifts("ZXXZ"),
        shifts("ZXIIXZIII"),
    ];
    for sys in [
        families::square_toric(2, 2).unwrap().system,
        families::square_toric(2, 3).unwrap().system,
        families::cyclic_toric(1, 2).unwrap().graph.system,
        common::theta_on_torus(),
    ] {
        instances.push(build(&sys).stabilizers);
    }
    for stabs in &instances {
        let n = stabs[0].n();
        assert!(n <= 12);
        let a = exact_distance(stabs, DEFAULT_BUDGET, SearchStrategy::GrayCode).unwrap();
        let b = exact_distance(stabs, DEFAULT_BUDGET, SearchStrategy::WeightLimited).unwrap();
        assert_eq!(a.0, b.0);
    }
}

fn assert_sandwich(report: &DistanceReport) {
    let d = report.exact.expect("exact distance computed");
    for b in &report.lower_bounds {
        assert!(b.value <= d, "lower {:?} vs exact {d}", b);
    }
    for b in &report.upper_bounds {
        assert!(b.value >= d, "upper {:?} vs exact {d}", b);
    }
}

#[test]
fn distance_reports_on_fixtures() {
    // 4x4 torus: exact 4 with the 4-valent half-systole equality.
    let code = build(&families::square_toric(4, 4).unwrap().system);
    let report = logical::distance_report(&code, &ReportOptions::default()).unwrap();
    assert_eq!(report.exact, Some(4));
    assert!(report
        .lower_bounds
        .iter()
        .any(|b| b.value == 4 && matches!(b.source, logical::BoundSource::HalfHsysDecoding)));
    assert!(report.upper_bounds.iter().any(|b| {
        b.value == 4 && matches!(b.source, logical::BoundSource::HalfHsysDecoding4Valent)
    }));
    assert_sandwich(&report);

    // cyclic-toric(2, 3): exact 5 within the doubled-graph bounds.
    let code = build(&families::cyclic_toric(2, 3).unwrap().graph.system);
    let report = logical::distance_report(&code, &ReportOptions::default()).unwrap();
    assert_eq!(report.exact, Some(5));
    assert!(report
        .lower_bounds
        .iter()
        .any(|b| matches!(b.source, logical::BoundSource::QuarterHsysDoubled)));
    assert!(report
        .upper_bounds
        .iter()
        .any(|b| matches!(b.source, logical::BoundSource::HalfHsysDoubled)));
    assert_sandwich(&report);

    // stellated(3, 2): exact 4 with a weight-4 witness; D <= 2t = 4.
    let code = build(&families::stellated_high_genus(3, 2).unwrap());
    let report = logical::distance_report(&code, &ReportOptions::default()).unwrap();
    assert_eq!(report.exact, Some(4));
    let witness = Pauli::parse(report.witness.as_ref().unwrap()).unwrap();
    assert_eq!(witness.weight(), 4);
    assert!(report.upper_bounds.iter().any(|b| b.value <= 4));
    assert_sandwich(&report);
}

#[test]
fn distance_reports_sandwich_on_all_fixtures() {
    for (name, sys) in fixtures() {
        let code = build(&sys);
        let report = logical::distance_report(&code, &ReportOptions::default()).unwrap();
        assert!(report.exact.is_some(), "{name}");
        assert_sandwich(&report);
        let _ = name;
    }
}

#[test]
fn spinal_decomposition_preserves_code_parameters() {
    // Stellated codes carry degree-5+ vertices; decomposing them yields the
    // same (N, K) and the same exact distance.
    for (s, t) in [(3usize, 1usize), (3, 2), (5, 1)] {
        let sys = families::stellated_high_genus(s, t).unwrap();
        let code = build(&sys);
        let (n1, k1) = code.params_nk().unwrap();
        let split = derived::decompose_high_degree(&sys).unwrap();
        let code2 = build(&split);
        let (n2, k2) = code2.params_nk().unwrap();
        assert_eq!((n1, k1), (n2, k2), "stellated({s},{t})");
        let (d1, _) = exact_distance(&code.stabilizers, DEFAULT_BUDGET, SearchStrategy::Auto).unwrap();
        let (d2, _) = exact_distance(&code2.stabilizers, DEFAULT_BUDGET, SearchStrategy::Auto).unwrap();
        assert_eq!(d1, d2, "stellated({s},{t})");
    }
}

#[test]
fn cal_rotation_preserves_nk_and_mirror_preserves_d() {
    let sys = families::cyclic_toric(1, 2).unwrap().graph.system;
    let summary = sys.summary().unwrap();
    let base = build(&sys);
    let (n0, k0) = base.params_nk().unwrap();
    let (d0, _) = exact_distance(&base.stabilizers, DEFAULT_BUDGET, SearchStrategy::Auto).unwrap();
    // Rotating one vertex's CAL preserves (N, K).
    for rot in 1..4 {
        let mut cals = surface::assign_cals(&sys, &summary, None).unwrap();
        cals[0].rotate_left(rot);
        let code = surface::build_code(&sys, cals).unwrap();
        assert_eq!(code.params_nk().unwrap(), (n0, k0), "rotation {rot}");
    }
    // Reversing every CAL (the mirrored sector order) preserves (N, K, D).
    let mut cals = surface::assign_cals(&sys, &summary, None).unwrap();
    for cal in &mut cals {
        cal.reverse();
        cal.rotate_right(1); // keep element 0 anchored at sector 0
    }
    let mirrored = surface::build_code(&sys, cals).unwrap();
    assert_eq!(mirrored.params_nk().unwrap(), (n0, k0));
    let (dm, _) =
        exact_distance(&mirrored.stabilizers, DEFAULT_BUDGET, SearchStrategy::Auto).unwrap();
    assert_eq!(dm, d0);
}

#[test]
fn centralizer_contains_stabilizer_prefix() {
    let stabs = shifts("ZXIXZ");
    let basis = centralizer_basis(&stabs);
    assert_eq!(basis.len(), 6);
    // The first rank elements generate the same row space as the input.
    let rows: Vec<BitVec> = stabs.iter().map(|p| p.symplectic_row()).collect();
    let rank = twistcode::f2::rank(&rows, 10);
    for p in &basis[..rank] {
        assert!(in_group(&stabs, p));
    }
    for p in &basis {
        assert!(stabs.iter().all(|s| !pauli::commute_bit(s, p)));
    }
}
