//! Logical-operator analysis: centralizer bases, exact code distance, the
//! sigma (decoding-cycle) and omega (trail) maps, homological systoles, and
//! the assembled distance report with certified bounds.

use serde::Serialize;

use crate::bits::BitVec;
use crate::checkerboard;
use crate::derived;
use crate::f2::{self, RowSpace};
use crate::majorana::{self, MajoranaOp};
use crate::pauli::{self, Pauli};
use crate::rotation::{GraphSummary, RotationSystem};
use crate::surface::SurfaceCode;
use crate::{Error, Result};

/// Default exact-distance budget: Gray-code steps or weight-search
/// candidates.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Homology dimension cap for the product-space BFS.
pub const DEFAULT_HSYS_CAP: usize = 12;

/// Basis of the centralizer `{v : S Lambda v^T = 0}` with a basis of the
/// stabilizer group as its prefix. Dimension `N + K`.
pub fn centralizer_basis(stabilizers: &[Pauli]) -> Vec<Pauli> {
    let n = stabilizers.first().map_or(0, |p| p.n());
    let mut stab_space = RowSpace::new(2 * n);
    let mut basis: Vec<Pauli> = Vec::new();
    for s in stabilizers {
        if stab_space.insert(&s.symplectic_row()) {
            basis.push(s.clone());
        }
    }
    // Kernel of the symplectically-twisted stabilizer matrix.
    let twisted: Vec<BitVec> = stabilizers
        .iter()
        .map(|s| s.z().concat(s.x()))
        .collect();
    let kernel = f2::right_kernel(&twisted, 2 * n);
    let mut span = RowSpace::new(2 * n);
    for p in &basis {
        span.insert(&p.symplectic_row());
    }
    for v in kernel {
        if span.insert(&v) {
            basis.push(Pauli::from_symplectic_row(&v));
        }
    }
    basis
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStrategy {
    Auto,
    GrayCode,
    WeightLimited,
}

/// Exact code distance: minimum weight over the nontrivial logical classes.
///
/// Strategy (a) enumerates the centralizer over a Gray code on the
/// `N + K`-element basis, skipping pure-stabilizer combinations; feasible
/// when `2^(N+K) <= budget`. Strategy (b) enumerates candidate Paulis by
/// increasing weight with early exit. Returns the distance and a witness.
pub fn exact_distance(
    stabilizers: &[Pauli],
    budget: u64,
    strategy: SearchStrategy,
) -> Result<(usize, Pauli)> {
    let n = stabilizers.first().map_or(0, |p| p.n());
    let rows: Vec<BitVec> = stabilizers.iter().map(|s| s.symplectic_row()).collect();
    let rank = f2::rank(&rows, 2 * n);
    let k = n - rank;
    if k == 0 {
        return Err(Error::Inconsistent(
            "code has no logical qubits; distance undefined".into(),
        ));
    }
    let total_bits = n + k;
    let gray_feasible = total_bits < 63 && (1u64 << total_bits) <= budget;
    match strategy {
        SearchStrategy::GrayCode => gray_distance(stabilizers, n, rank),
        SearchStrategy::WeightLimited => weight_limited_distance(stabilizers, n, budget),
        SearchStrategy::Auto => {
            if gray_feasible {
                gray_distance(stabilizers, n, rank)
            } else {
                weight_limited_distance(stabilizers, n, budget)
            }
        }
    }
}

fn gray_distance(stabilizers: &[Pauli], n: usize, rank: usize) -> Result<(usize, Pauli)> {
    let basis = centralizer_basis(stabilizers);
    let total = basis.len();
    debug_assert_eq!(total, 2 * n - rank);
    let stab_dim = rank;
    let xs: Vec<BitVec> = basis.iter().map(|p| p.x().clone()).collect();
    let zs: Vec<BitVec> = basis.iter().map(|p| p.z().clone()).collect();
    let mut cx = BitVec::zeros(n);
    let mut cz = BitVec::zeros(n);
    let mut logical_mask: u64 = 0;
    let mut best: Option<(usize, Pauli)> = None;
    let steps: u64 = 1u64 << total;
    for i in 1..steps {
        let t = i.trailing_zeros() as usize;
        cx.xor_assign(&xs[t]);
        cz.xor_assign(&zs[t]);
        if t >= stab_dim {
            logical_mask ^= 1 << (t - stab_dim);
        }
        if logical_mask == 0 {
            continue;
        }
        let w = cx.or_weight(&cz);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, Pauli::from_xz(cx.clone(), cz.clone())));
        }
    }
    best.ok_or_else(|| Error::Inconsistent("no logical class enumerated".into()))
}

fn next_combination(support: &mut [usize], n: usize) -> bool {
    let w = support.len();
    let mut i = w;
    while i > 0 {
        i -= 1;
        if support[i] < n - w + i {
            support[i] += 1;
            for j in (i + 1)..w {
                support[j] = support[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn next_assignment(a: &mut [u8]) -> bool {
    for slot in a.iter_mut() {
        *slot += 1;
        if *slot < 3 {
            return true;
        }
        *slot = 0;
    }
    false
}

fn weight_limited_distance(
    stabilizers: &[Pauli],
    n: usize,
    budget: u64,
) -> Result<(usize, Pauli)> {
    let mut stab_space = RowSpace::new(2 * n);
    for s in stabilizers {
        stab_space.insert(&s.symplectic_row());
    }
    let mut spent: u64 = 0;
    for w in 1..=n {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut assignment = vec![0u8; w];
            loop {
                spent += 1;
                if spent > budget {
                    return Err(Error::BudgetExceeded);
                }
                let mut x = BitVec::zeros(n);
                let mut z = BitVec::zeros(n);
                for (slot, &q) in support.iter().enumerate() {
                    match assignment[slot] {
                        0 => x.set(q, true),
                        1 => {
                            x.set(q, true);
                            z.set(q, true);
                        }
                        _ => z.set(q, true),
                    }
                }
                let p = Pauli::from_xz(x, z);
                let commutes = stabilizers.iter().all(|s| !pauli::commute_bit(s, &p));
                if commutes && !stab_space.contains(&p.symplectic_row()) {
                    return Ok((w, p));
                }
                if !next_assignment(&mut assignment) {
                    break;
                }
            }
            if !next_combination(&mut support, n) {
                break;
            }
        }
    }
    Err(Error::Inconsistent("no logical operator found".into()))
}

/// Global index of a decoding edge `(vertex, position)`.
pub fn decoding_edge_index(summary: &GraphSummary, vertex: usize, position: usize) -> usize {
    let mut base = 0;
    for v in 0..vertex {
        base += summary.degrees[v];
    }
    base + position
}

pub fn decoding_edge_count(summary: &GraphSummary) -> usize {
    summary.degrees.iter().sum()
}

/// The sigma map: a sum of cycles in the decoding graph (given as an
/// indicator over decoding edges = sectors) becomes a logical Pauli by
/// solving each vertex's commutation pattern against its CAL.
pub fn sigma(code: &SurfaceCode, edge_set: &BitVec) -> Result<Pauli> {
    let summary = &code.summary;
    // Even degree at every face node.
    let mut face_parity = vec![false; summary.face_count()];
    for (f, sectors) in code.sectors_of_face.iter().enumerate() {
        for &(v, k) in sectors {
            if edge_set.get(decoding_edge_index(summary, v, k)) {
                face_parity[f] ^= true;
            }
        }
    }
    if let Some(f) = face_parity.iter().position(|&p| p) {
        return Err(Error::Inconsistent(format!(
            "odd degree at face node {f}: not a sum of decoding cycles"
        )));
    }
    let mut out = Pauli::identity(code.qubit_count);
    let mut base = 0usize;
    for v in 0..summary.vertex_count() {
        let deg = summary.degrees[v];
        let mut x = BitVec::zeros(deg);
        for k in 0..deg {
            if edge_set.get(base + k) {
                x.set(k, true);
            }
        }
        base += deg;
        if x.is_zero() {
            continue;
        }
        let local = pauli::solve_pattern(&code.cal_map[v], &x)?;
        out = out.mul(&local.embed(code.qubit_count, code.qubit_offset[v]));
    }
    debug_assert!(code
        .stabilizers
        .iter()
        .all(|s| !pauli::commute_bit(s, &out)));
    Ok(out)
}

/// The decoding cycle reproducing a centralizer element under sigma: sector
/// `(v, k)` is selected exactly when the element anticommutes with CAL
/// element `k` of vertex `v`. For `p` in the centralizer this is a cycle sum
/// and `sigma` maps it back to `p` (mod phase).
pub fn sigma_preimage(code: &SurfaceCode, p: &Pauli) -> BitVec {
    let summary = &code.summary;
    let mut t = BitVec::zeros(decoding_edge_count(summary));
    let mut base = 0usize;
    for v in 0..summary.vertex_count() {
        let deg = summary.degrees[v];
        for k in 0..deg {
            let elem = code.cal_map[v][k].embed(code.qubit_count, code.qubit_offset[v]);
            if pauli::commute_bit(&elem, p) {
                t.set(base + k, true);
            }
        }
        base += deg;
    }
    t
}

/// A basis of `T_0(G)`: fundamental cycles of a BFS spanning tree plus tree
/// paths from the first odd-degree vertex to each other one.
pub fn t0_basis(summary: &GraphSummary) -> Vec<BitVec> {
    let nv = summary.vertex_count();
    let ne = summary.edge_count();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in 0..ne {
        let (a, b) = summary.edge_endpoints(e);
        adjacency[a].push((e, b));
        if a != b {
            adjacency[b].push((e, a));
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut visited = vec![false; nv];
    let mut tree_edge = vec![false; ne];
    let mut queue = std::collections::VecDeque::from([0usize]);
    visited[0] = true;
    while let Some(u) = queue.pop_front() {
        for &(e, w) in &adjacency[u] {
            if !visited[w] {
                visited[w] = true;
                parent[w] = Some((e, u));
                tree_edge[e] = true;
                queue.push_back(w);
            }
        }
    }
    let path_to_root = |mut u: usize| -> BitVec {
        let mut edges = BitVec::zeros(ne);
        while let Some((e, p)) = parent[u] {
            edges.flip(e);
            u = p;
        }
        edges
    };
    let mut basis = Vec::new();
    for e in 0..ne {
        if !tree_edge[e] {
            let (a, b) = summary.edge_endpoints(e);
            let mut cyc = path_to_root(a);
            cyc.xor_assign(&path_to_root(b));
            cyc.set(e, true);
            basis.push(cyc);
        }
    }
    let odd: Vec<usize> = (0..nv).filter(|&v| summary.degrees[v] % 2 == 1).collect();
    for &v in odd.iter().skip(1) {
        let mut path = path_to_root(odd[0]);
        path.xor_assign(&path_to_root(v));
        basis.push(path);
    }
    basis
}

/// Membership of an edge set in `T_0(G)`: every vertex with odd incidence
/// parity must be an odd-degree vertex.
pub fn in_t0(summary: &GraphSummary, t: &BitVec) -> bool {
    let mut parity = vec![false; summary.vertex_count()];
    for e in t.iter_ones() {
        let (a, b) = summary.edge_endpoints(e);
        if a != b {
            parity[a] ^= true;
            parity[b] ^= true;
        }
    }
    (0..summary.vertex_count()).all(|v| !parity[v] || summary.degrees[v] % 2 == 1)
}

/// The omega map: a trail sum in `T_0(G)` becomes a logical Pauli via the
/// product of the Majoranas on its edges (plus endpoint modes), converted
/// per vertex through the sector-operator commutation pattern.
pub fn omega(code: &SurfaceCode, t: &BitVec) -> Result<Pauli> {
    let summary = &code.summary;
    if !in_t0(summary, t) {
        return Err(Error::Inconsistent(
            "edge set is outside T_0: odd parity at an even-degree vertex".into(),
        ));
    }
    let labeling = majorana::label_majoranas(&code.graph, summary)?;
    let mut modes: Vec<usize> = Vec::new();
    let mut parity = vec![false; summary.vertex_count()];
    for e in t.iter_ones() {
        let h = summary.edges[e][0];
        modes.push(labeling.label_of_flag[h]);
        modes.push(labeling.label_of_flag[code.graph.lambda(h)]);
        let (a, b) = summary.edge_endpoints(e);
        if a != b {
            parity[a] ^= true;
            parity[b] ^= true;
        }
    }
    for v in 0..summary.vertex_count() {
        if parity[v] {
            modes.push(labeling.odd_vertex_label[v].expect("odd vertex mode"));
        }
    }
    let op = MajoranaOp::from_support(labeling.mode_count, 0, modes);
    let mut out = Pauli::identity(code.qubit_count);
    for v in 0..summary.vertex_count() {
        let walk = code.graph.sector_walk(summary, v);
        let mut x = BitVec::zeros(walk.len());
        for (k, &h) in walk.iter().enumerate() {
            let q = majorana::sector_operator(&code.graph, &labeling, h);
            if majorana::com(&op, &q) {
                x.set(k, true);
            }
        }
        if x.is_zero() {
            continue;
        }
        let local = pauli::solve_pattern(&code.cal_map[v], &x)?;
        out = out.mul(&local.embed(code.qubit_count, code.qubit_offset[v]));
    }
    debug_assert!(code
        .stabilizers
        .iter()
        .all(|s| !pauli::commute_bit(s, &out)));
    Ok(out)
}

/// Is `omega(t)` a stabilizer? Decided by the two F2 solves
/// `x Phi = 1 + t` and `x Phi = t`.
pub fn trail_is_trivial(summary: &GraphSummary, t: &BitVec) -> Result<bool> {
    if !in_t0(summary, t) {
        return Err(Error::Inconsistent("edge set is outside T_0".into()));
    }
    let phi = checkerboard::face_edge_matrix(summary);
    let ne = summary.edge_count();
    let mut ones_plus_t = BitVec::from_indices(ne, 0..ne);
    ones_plus_t.xor_assign(t);
    Ok(f2::solve_left(&phi, ne, &ones_plus_t).is_some()
        || f2::solve_left(&phi, ne, t).is_some())
}

#[derive(Debug, Clone)]
pub struct HsysResult {
    pub value: usize,
    /// False when the homology dimension exceeded the cap and the value is
    /// only an upper bound on the true systole.
    pub exact: bool,
}

struct HomologySignatures {
    dim: usize,
    sig_of_edge: Vec<u32>,
}

fn homology_signatures(summary: &GraphSummary) -> HomologySignatures {
    let nv = summary.vertex_count();
    let ne = summary.edge_count();
    // BFS spanning tree, smallest edge first.
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in 0..ne {
        let (a, b) = summary.edge_endpoints(e);
        adjacency[a].push((e, b));
        if a != b {
            adjacency[b].push((e, a));
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let mut tree_edge = vec![false; ne];
    let mut parent_edge = vec![usize::MAX; nv];
    let mut visited = vec![false; nv];
    let mut queue = std::collections::VecDeque::new();
    visited[0] = true;
    queue.push_back(0usize);
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adjacency[v] {
            if !visited[w] {
                visited[w] = true;
                tree_edge[e] = true;
                parent_edge[w] = e;
                queue.push_back(w);
            }
        }
    }
    let nontree: Vec<usize> = (0..ne).filter(|&e| !tree_edge[e]).collect();
    let mut nontree_index = vec![usize::MAX; ne];
    for (i, &e) in nontree.iter().enumerate() {
        nontree_index[e] = i;
    }
    let c = nontree.len();
    // Face boundary rows restricted to non-tree coordinates; their kernel
    // gives the functionals that vanish on all boundaries.
    let phi = checkerboard::face_edge_matrix(summary);
    // The boundary of face f over F2 is exactly its row of Phi (edges with
    // two distinct adjacent faces, one of which is f).
    let b_rows: Vec<BitVec> = phi
        .iter()
        .map(|row| {
            let mut v = BitVec::zeros(c);
            for e in row.iter_ones() {
                if nontree_index[e] != usize::MAX {
                    v.set(nontree_index[e], true);
                }
            }
            v
        })
        .collect();
    // Boundary rows with tree-edge components need those components in the
    // fundamental coordinates too: fundamental coordinates of a cycle are
    // its restriction to non-tree edges, so nothing further is required.
    let functionals = f2::right_kernel(&b_rows, c);
    let dim = functionals.len();
    let mut sig_of_edge = vec![0u32; ne];
    for (j, q) in functionals.iter().enumerate() {
        for i in q.iter_ones() {
            sig_of_edge[nontree[i]] |= 1 << j;
        }
    }
    let _ = parent_edge;
    HomologySignatures { dim, sig_of_edge }
}

/// Exact homological systole: the shortest homologically nontrivial closed
/// walk (always realized by a cycle), by BFS on `V x F2^dim`. `class_filter`
/// restricts which nonzero classes count. Returns None when the homology is
/// trivial.
pub fn hsys_filtered(
    summary: &GraphSummary,
    cap: usize,
    class_filter: Option<&dyn Fn(u32) -> bool>,
) -> Result<Option<HsysResult>> {
    let sigs = homology_signatures(summary);
    if sigs.dim == 0 {
        return Ok(None);
    }
    let accept = |class: u32| class != 0 && class_filter.map_or(true, |f| f(class));
    if sigs.dim > cap {
        return Ok(bounded_hsys(summary, &sigs, &accept).map(|value| HsysResult {
            value,
            exact: false,
        }));
    }
    let nv = summary.vertex_count();
    let ne = summary.edge_count();
    let mut adjacency: Vec<Vec<(usize, u32)>> = vec![Vec::new(); nv];
    for e in 0..ne {
        let (a, b) = summary.edge_endpoints(e);
        let s = sigs.sig_of_edge[e];
        adjacency[a].push((b, s));
        if a != b {
            adjacency[b].push((a, s));
        } else if s != 0 {
            // Loop already pushed once; a loop traversal is available in one
            // step regardless of direction.
        }
    }
    let classes = 1usize << sigs.dim;
    let mut best: Option<usize> = None;
    let mut dist = vec![u32::MAX; nv * classes];
    let mut queue = std::collections::VecDeque::new();
    for start in 0..nv {
        for d in dist.iter_mut() {
            *d = u32::MAX;
        }
        queue.clear();
        dist[start * classes] = 0;
        queue.push_back((start, 0u32));
        while let Some((v, h)) = queue.pop_front() {
            let d = dist[v * classes + h as usize];
            if best.is_some_and(|b| d as usize >= b) {
                continue;
            }
            for &(w, s) in &adjacency[v] {
                let nh = h ^ s;
                let slot = w * classes + nh as usize;
                if dist[slot] == u32::MAX {
                    dist[slot] = d + 1;
                    queue.push_back((w, nh));
                }
            }
        }
        for h in 1..classes {
            if accept(h as u32) && dist[start * classes + h] != u32::MAX {
                let d = dist[start * classes + h] as usize;
                if best.is_none_or(|b| d < b) {
                    best = Some(d);
                }
            }
        }
    }
    Ok(best.map(|value| HsysResult { value, exact: true }))
}

pub fn hsys(summary: &GraphSummary, cap: usize) -> Result<Option<HsysResult>> {
    hsys_filtered(summary, cap, None)
}

/// Fallback above the dimension cap: the best homologically nontrivial cycle
/// among Horton candidates; an upper bound on the systole.
fn bounded_hsys(
    summary: &GraphSummary,
    sigs: &HomologySignatures,
    accept: &dyn Fn(u32) -> bool,
) -> Option<usize> {
    let candidates = horton_candidates(summary);
    let mut best: Option<usize> = None;
    for cyc in candidates {
        let mut class = 0u32;
        for e in cyc.edges.iter_ones() {
            class ^= sigs.sig_of_edge[e];
        }
        if accept(class) {
            let len = cyc.edges.count_ones();
            if best.is_none_or(|b| len < b) {
                best = Some(len);
            }
        }
    }
    best
}

#[derive(Clone)]
struct CandidateCycle {
    edges: BitVec,
}

/// Horton candidate cycles of the underlying multigraph: for every vertex v
/// and edge (x, y), the two BFS shortest paths v->x, v->y plus the edge,
/// kept when vertex-disjoint away from v. Loops and parallel pairs appear as
/// their own short cycles.
fn horton_candidates(summary: &GraphSummary) -> Vec<CandidateCycle> {
    let nv = summary.vertex_count();
    let ne = summary.edge_count();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in 0..ne {
        let (a, b) = summary.edge_endpoints(e);
        adjacency[a].push((e, b));
        if a != b {
            adjacency[b].push((e, a));
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let mut out = Vec::new();
    for v in 0..nv {
        // BFS tree from v.
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv]; // (edge, prev)
        let mut depth = vec![u32::MAX; nv];
        depth[v] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &(e, w) in &adjacency[u] {
                if depth[w] == u32::MAX && w != v {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some((e, u));
                    queue.push_back(w);
                }
            }
        }
        let path_to = |mut u: usize| -> Option<(BitVec, Vec<usize>)> {
            let mut edges = BitVec::zeros(ne);
            let mut verts = vec![u];
            while u != v {
                let (e, p) = parent[u]?;
                edges.set(e, true);
                u = p;
                verts.push(u);
            }
            Some((edges, verts))
        };
        for e in 0..ne {
            let (x, y) = summary.edge_endpoints(e);
            if x == y {
                if x == v {
                    out.push(CandidateCycle {
                        edges: BitVec::from_indices(ne, [e]),
                    });
                }
                continue;
            }
            if depth[x] == u32::MAX || depth[y] == u32::MAX {
                continue;
            }
            let Some((ex, vx)) = path_to(x) else { continue };
            let Some((ey, vy)) = path_to(y) else { continue };
            if ex.get(e) || ey.get(e) {
                continue;
            }
            // Vertex-disjoint except at v.
            let mut seen = vec![false; nv];
            for &u in &vx {
                seen[u] = true;
            }
            let mut ok = true;
            for &u in &vy {
                if u != v && seen[u] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let mut edges = ex;
            edges.xor_assign(&ey);
            edges.set(e, true);
            out.push(CandidateCycle { edges });
        }
    }
    out
}

/// A graph extended by a clique on its odd-degree vertices, tracked so basis
/// cycles can be converted back to trails of the original graph.
struct OddCliqueGraph {
    /// Original edge count; clique edges get ids `ne ..`.
    ne: usize,
    endpoints: Vec<(usize, usize)>,
    nv: usize,
}

impl OddCliqueGraph {
    fn new(summary: &GraphSummary) -> Self {
        let mut endpoints: Vec<(usize, usize)> =
            (0..summary.edge_count()).map(|e| summary.edge_endpoints(e)).collect();
        let odd: Vec<usize> = (0..summary.vertex_count())
            .filter(|&v| summary.degrees[v] % 2 == 1)
            .collect();
        for i in 0..odd.len() {
            for j in (i + 1)..odd.len() {
                endpoints.push((odd[i], odd[j]));
            }
        }
        OddCliqueGraph {
            ne: summary.edge_count(),
            endpoints,
            nv: summary.vertex_count(),
        }
    }

    fn edge_count(&self) -> usize {
        self.endpoints.len()
    }
}

fn horton_candidates_for(g: &OddCliqueGraph) -> Vec<CandidateCycle> {
    let ne = g.edge_count();
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.nv];
    for (e, &(a, b)) in g.endpoints.iter().enumerate() {
        adjacency[a].push((e, b));
        if a != b {
            adjacency[b].push((e, a));
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    let mut out = Vec::new();
    for v in 0..g.nv {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.nv];
        let mut depth = vec![u32::MAX; g.nv];
        depth[v] = 0;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for &(e, w) in &adjacency[u] {
                if depth[w] == u32::MAX && w != v {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some((e, u));
                    queue.push_back(w);
                }
            }
        }
        let path_to = |mut u: usize| -> Option<(BitVec, Vec<usize>)> {
            let mut edges = BitVec::zeros(ne);
            let mut verts = vec![u];
            while u != v {
                let (e, p) = parent[u]?;
                edges.set(e, true);
                u = p;
                verts.push(u);
            }
            Some((edges, verts))
        };
        for (e, &(x, y)) in g.endpoints.iter().enumerate() {
            if x == y {
                if x == v {
                    out.push(CandidateCycle {
                        edges: BitVec::from_indices(ne, [e]),
                    });
                }
                continue;
            }
            if depth[x] == u32::MAX || depth[y] == u32::MAX {
                continue;
            }
            let Some((ex, vx)) = path_to(x) else { continue };
            let Some((ey, vy)) = path_to(y) else { continue };
            if ex.get(e) || ey.get(e) {
                continue;
            }
            let mut seen = vec![false; g.nv];
            for &u in &vx {
                seen[u] = true;
            }
            if vy.iter().any(|&u| u != v && seen[u]) {
                continue;
            }
            let mut edges = ex;
            edges.xor_assign(&ey);
            edges.set(e, true);
            out.push(CandidateCycle { edges });
        }
    }
    out
}

/// Minimum-path-basis distance upper bound `J` (Horton minimum cycle basis
/// on the graph plus its odd-vertex clique). Returns `J` and the nontrivial
/// basis paths as edge sets of the original graph.
pub fn distance_upper_j(summary: &GraphSummary) -> Result<(usize, Vec<BitVec>)> {
    let g = OddCliqueGraph::new(summary);
    let mut candidates = horton_candidates_for(&g);
    candidates.sort_by_key(|c| (c.edges.count_ones(), c.edges.iter_ones().collect::<Vec<_>>()));
    let want = g.edge_count() + 1 - g.nv; // cycle space dimension (connected)
    let mut space = RowSpace::new(g.edge_count());
    let mut basis = Vec::new();
    for c in candidates {
        if space.insert(&c.edges) {
            basis.push(c);
            if basis.len() == want {
                break;
            }
        }
    }
    if basis.len() != want {
        return Err(Error::Inconsistent(
            "Horton candidates failed to span the cycle space".into(),
        ));
    }
    let mut best: Option<usize> = None;
    let mut nontrivial_paths = Vec::new();
    for c in &basis {
        let mut t = BitVec::zeros(summary.edge_count());
        let mut uses_original = false;
        for e in c.edges.iter_ones() {
            if e < g.ne {
                t.set(e, true);
                uses_original = true;
            }
        }
        if !uses_original {
            continue;
        }
        if !trail_is_trivial(summary, &t)? {
            // Vertices visited by the path = endpoints of its edges.
            let mut seen = vec![false; summary.vertex_count()];
            for e in t.iter_ones() {
                let (a, b) = summary.edge_endpoints(e);
                seen[a] = true;
                seen[b] = true;
            }
            let count = seen.iter().filter(|&&s| s).count();
            if best.is_none_or(|b| count < b) {
                best = Some(count);
            }
            nontrivial_paths.push(t);
        }
    }
    match best {
        Some(j) => Ok((j, nontrivial_paths)),
        None => Err(Error::NoNontrivialPath),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundSource {
    #[serde(rename = "face-width")]
    FaceWidth,
    #[serde(rename = "half-hsys-decoding")]
    HalfHsysDecoding,
    #[serde(rename = "quarter-hsys-doubled")]
    QuarterHsysDoubled,
    #[serde(rename = "J-path-basis")]
    JPathBasis,
    #[serde(rename = "half-hsys-doubled")]
    HalfHsysDoubled,
    #[serde(rename = "half-hsys-decoding-4valent")]
    HalfHsysDecoding4Valent,
    #[serde(rename = "witness-operator")]
    WitnessOperator,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceBound {
    pub value: usize,
    pub source: BoundSource,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct DistanceReport {
    pub exact: Option<usize>,
    pub lower_bounds: Vec<DistanceBound>,
    pub upper_bounds: Vec<DistanceBound>,
    /// Minimal-weight nontrivial logical operator when exact.
    pub witness: Option<String>,
    /// Bounds that hold only under extra hypotheses we could not certify
    /// here (e.g. face-width off the torus).
    pub informational: Vec<DistanceBound>,
}

pub struct ReportOptions {
    pub budget: u64,
    pub bounds_only: bool,
    pub hsys_cap: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            budget: DEFAULT_BUDGET,
            bounds_only: false,
            hsys_cap: DEFAULT_HSYS_CAP,
        }
    }
}

fn min_component_hsys(r: &RotationSystem, cap: usize) -> Result<Option<HsysResult>> {
    let (w, b) = derived::embedded_decoding_components(r)?;
    let hw = hsys(&w.summary()?, cap)?;
    let hb = hsys(&b.summary()?, cap)?;
    Ok(match (hw, hb) {
        (None, x) | (x, None) => x,
        (Some(a), Some(c)) => Some(if a.value <= c.value { a } else { c }),
    })
}

/// Aggregate the paper's distance bounds and (budget permitting) the exact
/// distance, cross-validated.
///
/// Graphs with vertices of degree five or more get their systole-based and
/// path-basis bounds from the spinal decomposition (an identical code when
/// the CALs are canonical); with custom CALs on such graphs those bounds are
/// only informational.
pub fn distance_report(code: &SurfaceCode, options: &ReportOptions) -> Result<DistanceReport> {
    let summary = &code.summary;
    let (_, k) = code.params_nk()?;
    if k == 0 {
        return Err(Error::Inconsistent(
            "code has no logical qubits; distance undefined".into(),
        ));
    }
    let mut report = DistanceReport::default();
    let high_degree = summary.degrees.iter().any(|&d| d >= 5);
    let canonical_cals = (0..summary.vertex_count()).all(|v| {
        pauli::cal_construct(summary.degrees[v])
            .map(|c| c == code.cal_map[v])
            .unwrap_or(false)
    });
    let bound_graph; // graph whose cycle structure certifies bounds
    let bounds_certified;
    if high_degree {
        if canonical_cals {
            bound_graph = derived::decompose_high_degree(&code.graph)?;
            bounds_certified = true;
        } else {
            bound_graph = code.graph.clone();
            bounds_certified = false;
        }
    } else {
        bound_graph = code.graph.clone();
        bounds_certified = true;
    }
    let bsum = bound_graph.summary()?;
    let push = |list_is_lower: bool, value: usize, source: BoundSource, report: &mut DistanceReport| {
        let entry = DistanceBound { value, source };
        if !bounds_certified {
            report.informational.push(entry);
        } else if list_is_lower {
            report.lower_bounds.push(entry);
        } else {
            report.upper_bounds.push(entry);
        }
    };

    // An inexact (capped) systole value still upper-bounds the true systole,
    // so it still certifies the derived distance *upper* bounds; lower
    // bounds need the exact value.
    let checkerboardable = checkerboard::is_checkerboardable(&bsum).0;
    if checkerboardable {
        if let Some(h) = min_component_hsys(&bound_graph, options.hsys_cap)? {
            if h.exact {
                push(true, h.value / 2, BoundSource::HalfHsysDecoding, &mut report);
            }
            if bsum.degrees.iter().all(|&d| d == 4) {
                push(false, h.value / 2, BoundSource::HalfHsysDecoding4Valent, &mut report);
            }
        }
    } else {
        let defect = checkerboard::find_defect(&bsum);
        let squared = derived::doubled(&bound_graph, &defect)?;
        if let Some(h) = min_component_hsys(&squared, options.hsys_cap)? {
            if h.exact {
                push(true, h.value.div_ceil(4), BoundSource::QuarterHsysDoubled, &mut report);
            }
            push(false, h.value / 2, BoundSource::HalfHsysDoubled, &mut report);
        }
    }

    match distance_upper_j(&bsum) {
        Ok((j, _)) => push(false, j, BoundSource::JPathBasis, &mut report),
        Err(Error::NoNontrivialPath) => {}
        Err(e) => return Err(e),
    }

    // The omega image of any nontrivial path upper-bounds D for every CAL
    // assignment, including custom ones on high-degree graphs.
    match distance_upper_j(summary) {
        Ok((_, paths)) => {
            let mut best: Option<usize> = None;
            for t in &paths {
                let w = omega(code, t)?.weight();
                if best.is_none_or(|b| w < b) {
                    best = Some(w);
                }
            }
            if let Some(w) = best {
                report.upper_bounds.push(DistanceBound {
                    value: w,
                    source: BoundSource::WitnessOperator,
                });
            }
        }
        Err(Error::NoNontrivialPath) => {}
        Err(e) => return Err(e),
    }

    // Face-width: certified only on the torus with all degrees even.
    if summary.degrees.iter().all(|&d| d % 2 == 0) && summary.genus > 0 {
        let fv = derived::face_vertex(&code.graph);
        if let Some(h) = hsys(&fv.summary()?, options.hsys_cap)? {
            if h.exact {
                let fw = h.value / 2;
                if summary.orientable && summary.genus == 1 {
                    report.lower_bounds.push(DistanceBound {
                        value: fw,
                        source: BoundSource::FaceWidth,
                    });
                } else {
                    report.informational.push(DistanceBound {
                        value: fw,
                        source: BoundSource::FaceWidth,
                    });
                }
            }
        }
    }

    if !options.bounds_only {
        match exact_distance(&code.stabilizers, options.budget, SearchStrategy::Auto) {
            Ok((d, witness)) => {
                report.exact = Some(d);
                report.witness = Some(witness.to_string());
            }
            Err(Error::BudgetExceeded) => {}
            Err(e) => return Err(e),
        }
    }

    // Cross-validation: every lower <= every upper; exact within all bounds.
    let max_lower = report.lower_bounds.iter().map(|b| b.value).max();
    let min_upper = report.upper_bounds.iter().map(|b| b.value).min();
    if let (Some(lo), Some(hi)) = (max_lower, min_upper) {
        if lo > hi {
            return Err(Error::Inconsistent(format!(
                "distance bounds cross: lower {lo} > upper {hi}"
            )));
        }
    }
    if let Some(d) = report.exact {
        if max_lower.is_some_and(|lo| d < lo) || min_upper.is_some_and(|hi| d > hi) {
            return Err(Error::Inconsistent(format!(
                "exact distance {d} escapes bounds [{max_lower:?}, {min_upper:?}]"
            )));
        }
    }
    Ok(report)
}
