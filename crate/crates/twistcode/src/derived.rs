//! Graphs derived from an embedded graph: medial, face-vertex, decoding,
//! doubled, and the spinal vertex decomposition.
//!
//! All constructions that preserve embedding data are given directly on
//! flags. Derived systems on `H x {+1,-1}` map flag `(h, +1) -> 2h` and
//! `(h, -1) -> 2h + 1`.

use crate::checkerboard::{self, Defect};
use crate::rotation::{orbits, GraphSummary, RotationSystem};
use crate::{Error, Result};

/// The medial rotation system: 4-valent, checkerboardable, embedded in the
/// same manifold. One medial vertex per edge of the original.
pub fn medial(r: &RotationSystem) -> RotationSystem {
    let n = r.flag_count();
    let mut lambda = vec![0; 2 * n];
    let mut rho = vec![0; 2 * n];
    let mut tau = vec![0; 2 * n];
    for h in 0..n {
        tau[2 * h] = 2 * h + 1;
        tau[2 * h + 1] = 2 * h;
        lambda[2 * h] = 2 * r.rho(h);
        lambda[2 * h + 1] = 2 * r.rho(h) + 1;
        rho[2 * h] = 2 * r.tau(h); // j = +1
        rho[2 * h + 1] = 2 * r.lambda(h) + 1; // j = -1
    }
    RotationSystem::new_unchecked(lambda, rho, tau)
}

/// The face-vertex rotation system: bipartite between vertex-nodes and
/// face-nodes, equal to the dual of the medial up to relabeling.
pub fn face_vertex(r: &RotationSystem) -> RotationSystem {
    let n = r.flag_count();
    let mut lambda = vec![0; 2 * n];
    let mut rho = vec![0; 2 * n];
    let mut tau = vec![0; 2 * n];
    for h in 0..n {
        lambda[2 * h] = 2 * h + 1;
        lambda[2 * h + 1] = 2 * h;
        rho[2 * h] = 2 * r.lambda(h); // j = +1
        rho[2 * h + 1] = 2 * r.tau(h) + 1; // j = -1
        tau[2 * h] = 2 * r.rho(h);
        tau[2 * h + 1] = 2 * r.rho(h) + 1;
    }
    RotationSystem::new_unchecked(lambda, rho, tau)
}

/// If `r` is 4-valent and checkerboardable, the rotation system whose medial
/// it is. The returned preimage is verified through the explicit flag
/// bijection `phi((h, tau h), +1) = h`, `phi((h, tau h), -1) = tau h`.
pub fn medial_preimage(r: &RotationSystem) -> Result<Option<RotationSystem>> {
    let summary = r.summary()?;
    if summary.degrees.iter().any(|&d| d != 4) {
        return Ok(None);
    }
    let (ok, coloring) = checkerboard::is_checkerboardable(&summary);
    let Some(coloring) = coloring.filter(|_| ok) else {
        return Ok(None);
    };
    let x = coloring.indicator(summary.face_count());
    // H'_1 = flags on black faces; tau maps them into the white class.
    let class1: Vec<usize> = (0..r.flag_count())
        .filter(|&h| x.get(summary.face_of_flag[h]))
        .collect();
    let mut pos = vec![usize::MAX; r.flag_count()];
    for (i, &h) in class1.iter().enumerate() {
        pos[h] = i;
    }
    let m = class1.len();
    let mut lambda = vec![0; m];
    let mut rho = vec![0; m];
    let mut tau = vec![0; m];
    for (i, &h) in class1.iter().enumerate() {
        lambda[i] = pos[r.tau(r.rho(r.tau(h)))];
        rho[i] = pos[r.lambda(h)];
        tau[i] = pos[r.rho(h)];
    }
    let q = RotationSystem::new(lambda, rho, tau)?;
    let med = medial(&q);
    let phi = |flag: usize| -> usize {
        let (idx, j) = (flag / 2, flag % 2);
        if j == 0 {
            class1[idx]
        } else {
            r.tau(class1[idx])
        }
    };
    for flag in 0..med.flag_count() {
        if phi(med.lambda(flag)) != r.lambda(phi(flag))
            || phi(med.rho(flag)) != r.rho(phi(flag))
            || phi(med.tau(flag)) != r.tau(phi(flag))
        {
            return Err(Error::Inconsistent(
                "medial preimage verification failed".into(),
            ));
        }
    }
    Ok(Some(q))
}

/// Node of the (unembedded) decoding graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodingNode {
    Face(usize),
    OddVertex(usize),
    /// Even-degree vertex with side `+1` or `-1`; side `+1` holds the sector
    /// of the vertex's minimal flag.
    EvenVertex(usize, i8),
}

/// Edge of the decoding graph: one per sector of the original graph.
#[derive(Debug, Clone)]
pub struct DecodingEdge {
    /// Canonical sector id: the smaller flag of `{h, rho h}`.
    pub sector_flag: usize,
    /// Vertex owning the sector and the sector's position in the vertex's
    /// `(tau rho)`-walk from its minimal flag.
    pub vertex: usize,
    pub position: usize,
    pub face_node: usize,
    pub vertex_node: usize,
}

#[derive(Debug, Clone)]
pub struct DecodingGraph {
    pub nodes: Vec<DecodingNode>,
    pub edges: Vec<DecodingEdge>,
}

impl DecodingGraph {
    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.face_node);
            let b = find(&mut parent, e.vertex_node);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut roots: Vec<usize> = (0..parent.len()).map(|i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Deterministic DOT rendering.
    pub fn to_dot(&self) -> String {
        let name = |node: &DecodingNode| match node {
            DecodingNode::Face(f) => format!("u_f{f}"),
            DecodingNode::OddVertex(v) => format!("w_v{v}"),
            DecodingNode::EvenVertex(v, s) => {
                format!("w_v{v}_{}", if *s > 0 { "p" } else { "m" })
            }
        };
        let mut out = String::from("graph decoding {\n");
        for node in &self.nodes {
            out.push_str(&format!("  {};\n", name(node)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  {} -- {} [label=\"s{}\"];\n",
                name(&self.nodes[e.face_node]),
                name(&self.nodes[e.vertex_node]),
                e.sector_flag
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Build the decoding graph: a node per face, one (odd) or two (even) nodes
/// per vertex, an edge per sector. Consecutive sectors at an even vertex
/// attach to alternating sides.
pub fn decoding_graph(r: &RotationSystem) -> Result<DecodingGraph> {
    let summary = r.summary()?;
    for (v, &d) in summary.degrees.iter().enumerate() {
        if d < 3 {
            return Err(Error::DegreeTooSmall { vertex: v, degree: d });
        }
    }
    let mut nodes = Vec::new();
    for f in 0..summary.face_count() {
        nodes.push(DecodingNode::Face(f));
    }
    let mut vertex_node_base = vec![0usize; summary.vertex_count()];
    for v in 0..summary.vertex_count() {
        vertex_node_base[v] = nodes.len();
        if summary.degrees[v] % 2 == 1 {
            nodes.push(DecodingNode::OddVertex(v));
        } else {
            nodes.push(DecodingNode::EvenVertex(v, 1));
            nodes.push(DecodingNode::EvenVertex(v, -1));
        }
    }
    let mut edges = Vec::new();
    for v in 0..summary.vertex_count() {
        let walk = r.sector_walk(&summary, v);
        for (k, &h) in walk.iter().enumerate() {
            let vertex_node = if summary.degrees[v] % 2 == 1 {
                vertex_node_base[v]
            } else {
                vertex_node_base[v] + (k % 2)
            };
            edges.push(DecodingEdge {
                sector_flag: h.min(r.rho(h)),
                vertex: v,
                position: k,
                face_node: summary.face_of_flag[h],
                vertex_node,
            });
        }
    }
    Ok(DecodingGraph { nodes, edges })
}

/// The two embedded components of the decoding graph of a checkerboardable
/// graph, as rotation systems on `H_w x {+-1}` and `H_b x {+-1}` (white
/// first). Each embeds in the same manifold as the original.
pub fn embedded_decoding_components(
    r: &RotationSystem,
) -> Result<(RotationSystem, RotationSystem)> {
    let summary = r.summary()?;
    let (ok, coloring) = checkerboard::is_checkerboardable(&summary);
    let Some(coloring) = coloring.filter(|_| ok) else {
        return Err(Error::NotCheckerboardable);
    };
    let (white, black) = checkerboard::flag_partition(&summary, &coloring);
    let build = |class: &[usize]| -> Result<RotationSystem> {
        let mut pos = vec![usize::MAX; r.flag_count()];
        for (i, &h) in class.iter().enumerate() {
            pos[h] = i;
        }
        let m = 2 * class.len();
        let mut lambda = vec![0; m];
        let mut rho = vec![0; m];
        let mut tau = vec![0; m];
        for (i, &h) in class.iter().enumerate() {
            lambda[2 * i] = 2 * i + 1;
            lambda[2 * i + 1] = 2 * i;
            rho[2 * i] = 2 * pos[r.lambda(h)]; // j = +1
            rho[2 * i + 1] = 2 * pos[r.tau(r.rho(r.tau(h)))] + 1; // j = -1
            tau[2 * i] = 2 * pos[r.rho(h)];
            tau[2 * i + 1] = 2 * pos[r.rho(h)] + 1;
        }
        RotationSystem::new(lambda, rho, tau)
    };
    Ok((build(&white)?, build(&black)?))
}

/// The doubled rotation system over a defect: two sheets glued along the
/// defect edges. Rejects already-checkerboardable inputs and invalid
/// defects.
pub fn doubled(r: &RotationSystem, defect: &Defect) -> Result<RotationSystem> {
    let summary = r.summary()?;
    if checkerboard::is_checkerboardable(&summary).0 {
        return Err(Error::AlreadyCheckerboardable);
    }
    if !checkerboard::is_checkerboardable_with_defect(&summary, defect) {
        return Err(Error::NotCheckerboardableWithDefect);
    }
    let n = r.flag_count();
    let mut lambda = vec![0; 2 * n];
    let mut rho = vec![0; 2 * n];
    let mut tau = vec![0; 2 * n];
    for h in 0..n {
        lambda[2 * h] = 2 * r.lambda(h);
        lambda[2 * h + 1] = 2 * r.lambda(h) + 1;
        rho[2 * h] = 2 * r.rho(h);
        rho[2 * h + 1] = 2 * r.rho(h) + 1;
        if defect.0.get(summary.edge_of_flag[h]) {
            tau[2 * h] = 2 * r.tau(h) + 1;
            tau[2 * h + 1] = 2 * r.tau(h);
        } else {
            tau[2 * h] = 2 * r.tau(h);
            tau[2 * h + 1] = 2 * r.tau(h) + 1;
        }
    }
    RotationSystem::new(lambda, rho, tau)
}

/// Split one vertex of degree >= 5 into a degree-4 vertex carrying the first
/// two and the last edge-ends (anchored at `anchor_flag`'s sector) and a
/// degree-`(d-2)` vertex carrying the rest, joined by a fresh edge. Returns
/// the new system and the flag anchoring a follow-up split of the big half.
pub fn split_vertex(r: &RotationSystem, anchor_flag: usize) -> Result<(RotationSystem, usize)> {
    let summary = r.summary()?;
    let v = summary.vertex_of_flag[anchor_flag];
    let d = summary.degrees[v];
    if d < 5 {
        return Err(Error::Inconsistent(format!(
            "vertex {v} has degree {d} < 5, nothing to split"
        )));
    }
    let mut walk = Vec::with_capacity(d);
    let mut h = anchor_flag;
    for _ in 0..d {
        walk.push(h);
        h = r.tau(r.rho(h));
    }
    let n = r.flag_count();
    let (na1, na2, nb1, nb2) = (n, n + 1, n + 2, n + 3);
    let mut lambda: Vec<usize> = r.lambda_slice().to_vec();
    let mut rho: Vec<usize> = r.rho_slice().to_vec();
    let mut tau: Vec<usize> = r.tau_slice().to_vec();
    lambda.extend([nb1, nb2, na1, na2]);
    rho.extend([0, 0, 0, 0]);
    tau.extend([na2, na1, nb2, nb1]);
    // Old sector 1 = {w1, rho w1} splits into (w1, na1) at the small vertex
    // and (nb1, rho w1) at the big one; old sector d-2 splits likewise into
    // (w_{d-2}, nb2) and (na2, rho w_{d-2}).
    let w1 = walk[1];
    let wd2 = walk[d - 2];
    let rw1 = rho[w1];
    let rwd2 = rho[wd2];
    rho[w1] = na1;
    rho[na1] = w1;
    rho[nb1] = rw1;
    rho[rw1] = nb1;
    rho[wd2] = nb2;
    rho[nb2] = wd2;
    rho[na2] = rwd2;
    rho[rwd2] = na2;
    let out = RotationSystem::new(lambda, rho, tau)?;
    Ok((out, nb1))
}

/// Repeatedly split until every vertex has degree 3 or 4. Follow-up splits of
/// the same original vertex stay anchored along the spine, so the result
/// realizes the seed composition behind the canonical CAL construction.
pub fn decompose_high_degree(r: &RotationSystem) -> Result<RotationSystem> {
    let mut current = r.clone();
    loop {
        let summary = current.summary()?;
        let Some(v) = (0..summary.vertex_count()).find(|&v| summary.degrees[v] >= 5) else {
            return Ok(current);
        };
        let mut anchor = summary.vertex_min_flag(v);
        let mut deg = summary.degrees[v];
        while deg >= 5 {
            let (next, next_anchor) = split_vertex(&current, anchor)?;
            current = next;
            anchor = next_anchor;
            deg -= 2;
        }
    }
}

/// DOT rendering of the underlying multigraph of a rotation system.
pub fn rotation_system_to_dot(summary: &GraphSummary) -> String {
    let mut out = String::from("graph embedded {\n");
    for v in 0..summary.vertex_count() {
        out.push_str(&format!("  v{v};\n"));
    }
    for e in 0..summary.edge_count() {
        let (a, b) = summary.edge_endpoints(e);
        out.push_str(&format!("  v{a} -- v{b} [label=\"e{e}\"];\n"));
    }
    out.push_str("}\n");
    out
}

/// Expected doubled-graph counts: `|V'| = 2|V| - M`, `|E'| = 2|E|`,
/// `|F'| = 2|F|`.
pub fn expected_doubled_counts(summary: &GraphSummary) -> (usize, usize, usize) {
    (
        2 * summary.vertex_count() - summary.odd_vertex_count,
        2 * summary.edge_count(),
        2 * summary.face_count(),
    )
}

/// Orbit count of the monodromy action; an independent connectivity oracle.
pub fn monodromy_orbit_count(r: &RotationSystem) -> usize {
    orbits(
        &[r.lambda_slice(), r.rho_slice(), r.tau_slice()],
        r.flag_count(),
    )
    .len()
}
