//! Shared fixtures and oracles for the integration suites.
//!
//! Each test binary compiles this module separately and uses a subset of it.
#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use twistcode::bits::BitVec;
use twistcode::facewalk::{FaceWalkBuilder, Step};
use twistcode::families;
use twistcode::pauli::Pauli;
use twistcode::rotation::{GraphSummary, RotationSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Theta graph on the torus: two degree-3 vertices, three parallel edges,
/// one face.
pub fn theta_on_torus() -> RotationSystem {
    let mut b = FaceWalkBuilder::new(2, 3);
    b.add_face(vec![
        Step::new(0, 0, 1),
        Step::new(1, 1, 0),
        Step::new(2, 0, 1),
        Step::new(0, 1, 0),
        Step::new(1, 0, 1),
        Step::new(2, 1, 0),
    ]);
    b.build().unwrap()
}

/// The named graph fixtures used across the property suites.
pub fn fixtures() -> Vec<(&'static str, RotationSystem)> {
    vec![
        ("torus-2x2", families::square_toric(2, 2).unwrap().system),
        ("torus-3x3", families::square_toric(3, 3).unwrap().system),
        ("torus-3x4", families::square_toric(3, 4).unwrap().system),
        ("torus-4x4", families::square_toric(4, 4).unwrap().system),
        ("k5-cyclic-1-2", families::cyclic_toric(1, 2).unwrap().graph.system),
        ("cyclic-1-3", families::cyclic_toric(1, 3).unwrap().graph.system),
        ("theta", theta_on_torus()),
        ("stellated-3-2", families::stellated_high_genus(3, 2).unwrap()),
        ("rotated-surface-3", families::rotated_surface(3).unwrap()),
    ]
}

/// Random connected multigraph with degrees in 3..=6, as a rotation system
/// with random rotations and random per-edge gluing flips (so both
/// orientable and non-orientable embeddings occur).
pub fn random_rotation_system(rng: &mut ChaCha8Rng, max_edges: usize) -> RotationSystem {
    loop {
        let nv = rng.gen_range(2..=8);
        let degrees: Vec<usize> = (0..nv).map(|_| rng.gen_range(3..=6)).collect();
        let total: usize = degrees.iter().sum();
        if total % 2 != 0 || total / 2 > max_edges {
            continue;
        }
        // Configuration model.
        let mut stubs: Vec<(usize, usize)> = Vec::new();
        for (v, &d) in degrees.iter().enumerate() {
            for i in 0..d {
                stubs.push((v, i));
            }
        }
        stubs.shuffle(rng);
        let pairs: Vec<((usize, usize), (usize, usize))> = stubs
            .chunks(2)
            .map(|c| (c[0], c[1]))
            .collect();
        // Connectivity of the multigraph.
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &((a, _), (b, _)) in &pairs {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        if (0..nv).any(|v| find(&mut parent, v) != 0) {
            continue;
        }
        // Flags: stub (v, i) owns base + 2i (side a) and base + 2i + 1
        // (side b) where base = 2 * (degree prefix of v).
        let mut base = vec![0usize; nv];
        for v in 1..nv {
            base[v] = base[v - 1] + 2 * degrees[v - 1];
        }
        let nflags = 2 * total;
        let mut lambda = vec![usize::MAX; nflags];
        let mut rho = vec![usize::MAX; nflags];
        let mut tau = vec![usize::MAX; nflags];
        for (v, &d) in degrees.iter().enumerate() {
            for i in 0..d {
                let a = base[v] + 2 * i;
                let b = a + 1;
                tau[a] = b;
                tau[b] = a;
                let a_next = base[v] + 2 * ((i + 1) % d);
                rho[b] = a_next;
                rho[a_next] = b;
            }
        }
        for &((v, i), (w, j)) in &pairs {
            let (a1, b1) = (base[v] + 2 * i, base[v] + 2 * i + 1);
            let (a2, b2) = (base[w] + 2 * j, base[w] + 2 * j + 1);
            if rng.gen_bool(0.5) {
                lambda[a1] = a2;
                lambda[a2] = a1;
                lambda[b1] = b2;
                lambda[b2] = b1;
            } else {
                lambda[a1] = b2;
                lambda[b2] = a1;
                lambda[b1] = a2;
                lambda[a2] = b1;
            }
        }
        let r = RotationSystem::new_unchecked(lambda, rho, tau);
        if r.validate().is_valid() {
            return r;
        }
    }
}

/// The edge joining two vertices (any one of them if parallel).
pub fn edge_between(summary: &GraphSummary, u: usize, v: usize) -> Option<usize> {
    (0..summary.edge_count()).find(|&e| {
        let (a, b) = summary.edge_endpoints(e);
        (a, b) == (u.min(v), u.max(v))
    })
}

/// All cyclic shifts of a Pauli string.
pub fn shifts(base: &str) -> Vec<Pauli> {
    let n = base.len();
    (0..n)
        .map(|s| {
            let rotated: String = (0..n)
                .map(|i| base.as_bytes()[(i + n - s) % n] as char)
                .collect();
            Pauli::parse(&rotated).unwrap()
        })
        .collect()
}

/// Symplectic row-space membership.
pub fn in_group(stabilizers: &[Pauli], p: &Pauli) -> bool {
    let rows: Vec<BitVec> = stabilizers.iter().map(|s| s.symplectic_row()).collect();
    twistcode::f2::solve_left(&rows, 2 * p.n(), &p.symplectic_row()).is_some()
}

/// Random element of the span of the given basis vectors.
pub fn random_combination(rng: &mut ChaCha8Rng, basis: &[BitVec], len: usize) -> BitVec {
    let mut out = BitVec::zeros(len);
    for b in basis {
        if rng.gen_bool(0.5) {
            out.xor_assign(b);
        }
    }
    out
}

/// Cycle-space basis of the decoding graph, as indicators over the global
/// decoding-edge indexing of `twistcode::logical`.
pub fn decoding_cycle_basis(code: &twistcode::surface::SurfaceCode) -> Vec<BitVec> {
    let summary = &code.summary;
    let dec = twistcode::derived::decoding_graph(&code.graph).unwrap();
    let ne = dec.edges.len();
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
            for &(ei, w) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((ei, u));
                    tree[ei] = true;
                    q.push_back(w);
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
    let to_global: Vec<usize> = dec
        .edges
        .iter()
        .map(|e| twistcode::logical::decoding_edge_index(summary, e.vertex, e.position))
        .collect();
    let mut basis = Vec::new();
    let nd = twistcode::logical::decoding_edge_count(summary);
    for (i, e) in dec.edges.iter().enumerate() {
        if !tree[i] {
            let mut c = path_up(e.face_node);
            c.xor_assign(&path_up(e.vertex_node));
            c.set(i, true);
            let mut global = BitVec::zeros(nd);
            for j in c.iter_ones() {
                global.set(to_global[j], true);
            }
            basis.push(global);
        }
    }
    basis
}
