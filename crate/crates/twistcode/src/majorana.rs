//! Phase-tracked Majorana operator algebra and the Majorana surface code:
//! two Majorana modes per edge, one per odd-degree vertex, a stabilizer per
//! vertex and per face.
//!
//! An operator is `i^phase * gamma_a` with `gamma_a` the ascending-order
//! product over the support `a`; multiplication tracks the exact phase via
//! the reordering count `xi(a, b)`.

use crate::bits::BitVec;
use crate::pauli::Pauli;
use crate::rotation::{GraphSummary, RotationSystem};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct MajoranaOp {
    mode_count: usize,
    /// Exponent of `i`, mod 4.
    phase: u8,
    support: BitVec,
}

impl MajoranaOp {
    pub fn identity(mode_count: usize) -> Self {
        MajoranaOp {
            mode_count,
            phase: 0,
            support: BitVec::zeros(mode_count),
        }
    }

    pub fn single(mode_count: usize, mode: usize) -> Self {
        MajoranaOp {
            mode_count,
            phase: 0,
            support: BitVec::from_indices(mode_count, [mode]),
        }
    }

    pub fn from_support(mode_count: usize, phase: u8, modes: impl IntoIterator<Item = usize>) -> Self {
        MajoranaOp {
            mode_count,
            phase: phase % 4,
            support: BitVec::from_indices(mode_count, modes),
        }
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn support(&self) -> &BitVec {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.count_ones()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.support.is_zero()
    }

    pub fn is_plus_identity(&self) -> bool {
        self.support.is_zero() && self.phase == 0
    }

    pub fn is_minus_identity(&self) -> bool {
        self.support.is_zero() && self.phase == 2
    }

    /// Number of transpositions moving `gamma_a gamma_b` into ascending
    /// order: `xi(a, b) = sum_{i in b} #{j in a : j > i}`.
    fn xi(a: &BitVec, b: &BitVec) -> usize {
        let mut total = 0usize;
        for i in b.iter_ones() {
            total += a.count_ones_above(i);
        }
        total
    }

    /// Exact product: `gamma_a gamma_b = (-1)^{xi(a,b)} gamma_{a+b}`.
    pub fn mul(&self, other: &MajoranaOp) -> MajoranaOp {
        assert_eq!(self.mode_count, other.mode_count);
        let xi = Self::xi(&self.support, &other.support);
        let mut support = self.support.clone();
        support.xor_assign(&other.support);
        MajoranaOp {
            mode_count: self.mode_count,
            phase: ((self.phase as usize + other.phase as usize + 2 * xi) % 4) as u8,
            support,
        }
    }

    /// Hermitian iff the square is `+I`: `phase + C(|a|, 2)` even.
    pub fn is_hermitian(&self) -> bool {
        let w = self.weight();
        (self.phase as usize + w * w.saturating_sub(1) / 2) % 2 == 0
    }

    pub fn scale_phase(&self, extra: u8) -> MajoranaOp {
        MajoranaOp {
            mode_count: self.mode_count,
            phase: (self.phase + extra) % 4,
            support: self.support.clone(),
        }
    }
}

impl std::fmt::Debug for MajoranaOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i^{} g{:?}", self.phase, self.support)
    }
}

/// 1 iff anticommuting: `|a||b| + a.b` odd.
pub fn com(a: &MajoranaOp, b: &MajoranaOp) -> bool {
    let mut inter = a.support.clone();
    inter.and_assign(&b.support);
    (a.weight() * b.weight() + inter.count_ones()) % 2 == 1
}

/// Mode labels of a Majorana surface code: one mode per half-edge plus one
/// per odd-degree vertex, `m = 2|E| + M`.
///
/// The two modes of an edge always get consecutive labels. On a
/// checkerboardable graph the labels follow an Euler cycle so that modes
/// `2j+1` and `2j+2 (mod m)` sit at a common vertex.
#[derive(Debug, Clone)]
pub struct MajoranaLabeling {
    pub mode_count: usize,
    /// Half-edge label per flag (both flags of a half-edge agree).
    pub label_of_flag: Vec<usize>,
    /// Label of the lone mode at an odd-degree vertex.
    pub odd_vertex_label: Vec<Option<usize>>,
    /// Owning vertex per label.
    pub vertex_of_label: Vec<usize>,
}

/// Deterministic Euler cycle on an all-even-degree connected multigraph,
/// Hierholzer starting at `start`, lowest edge id first. Returns the edge
/// sequence together with the entry vertex of each traversal.
fn euler_cycle(summary: &GraphSummary, start: usize) -> Vec<(usize, usize)> {
    let ne = summary.edge_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); summary.vertex_count()];
    for e in 0..ne {
        let (a, b) = summary.edge_endpoints(e);
        incident[a].push(e);
        if b != a {
            incident[b].push(e);
        }
    }
    for list in &mut incident {
        list.sort_unstable();
        list.reverse(); // pop() takes the smallest remaining edge
    }
    let mut used = vec![false; ne];
    let mut stack: Vec<usize> = vec![start];
    let mut path: Vec<(usize, usize)> = Vec::new(); // (entered via edge, at vertex)
    let mut trail: Vec<(usize, usize)> = Vec::new();
    while let Some(&v) = stack.last() {
        let next = loop {
            match incident[v].last() {
                Some(&e) if used[e] => {
                    incident[v].pop();
                }
                Some(&e) => break Some(e),
                None => break None,
            }
        };
        match next {
            Some(e) => {
                used[e] = true;
                let (a, b) = summary.edge_endpoints(e);
                let w = if a == v { b } else { a };
                stack.push(w);
                path.push((e, v));
            }
            None => {
                stack.pop();
                if let Some(step) = path.pop() {
                    trail.push(step);
                }
            }
        }
    }
    trail.reverse();
    debug_assert_eq!(trail.len(), ne);
    trail
}

/// Label the Majorana modes of the graph. Degrees below three are rejected.
pub fn label_majoranas(r: &RotationSystem, summary: &GraphSummary) -> Result<MajoranaLabeling> {
    for (v, &d) in summary.degrees.iter().enumerate() {
        if d < 3 {
            return Err(Error::DegreeTooSmall { vertex: v, degree: d });
        }
    }
    let nflags = r.flag_count();
    let m = 2 * summary.edge_count() + summary.odd_vertex_count;
    let mut label_of_flag = vec![usize::MAX; nflags];
    let mut vertex_of_label = vec![usize::MAX; m];
    let assign = |half_edge_rep: usize,
                      label: usize,
                      label_of_flag: &mut Vec<usize>,
                      vertex_of_label: &mut Vec<usize>| {
        let mate = r.tau(half_edge_rep);
        label_of_flag[half_edge_rep] = label;
        label_of_flag[mate] = label;
        vertex_of_label[label] = summary.vertex_of_flag[half_edge_rep];
    };
    let checkerboardable = summary.odd_vertex_count == 0
        && crate::checkerboard::is_checkerboardable(summary).0;
    if checkerboardable {
        let start = summary.vertex_of_flag[0];
        let trail = euler_cycle(summary, start);
        for (k, &(e, entry_vertex)) in trail.iter().enumerate() {
            // Half-edges of edge e: [h] and [lambda h]; pick the one at the
            // entry vertex first (min flag side for loops).
            let h = summary.edges[e][0];
            let (h_at, h_other) = {
                let g = r.lambda(h);
                if summary.vertex_of_flag[h] == entry_vertex {
                    (h, g)
                } else {
                    (g, h)
                }
            };
            assign(h_at, 2 * k, &mut label_of_flag, &mut vertex_of_label);
            assign(h_other, 2 * k + 1, &mut label_of_flag, &mut vertex_of_label);
        }
    } else {
        for (e, orb) in summary.edges.iter().enumerate() {
            let h = orb[0];
            assign(h, 2 * e, &mut label_of_flag, &mut vertex_of_label);
            assign(r.lambda(h), 2 * e + 1, &mut label_of_flag, &mut vertex_of_label);
        }
    }
    let mut odd_vertex_label = vec![None; summary.vertex_count()];
    let mut next = 2 * summary.edge_count();
    for v in 0..summary.vertex_count() {
        if summary.degrees[v] % 2 == 1 {
            odd_vertex_label[v] = Some(next);
            vertex_of_label[next] = v;
            next += 1;
        }
    }
    Ok(MajoranaLabeling {
        mode_count: m,
        label_of_flag,
        odd_vertex_label,
        vertex_of_label,
    })
}

/// The vertex and face stabilizers of the Majorana surface code, exact
/// phases included.
pub fn majorana_stabilizers(
    r: &RotationSystem,
    summary: &GraphSummary,
    labeling: &MajoranaLabeling,
) -> (Vec<MajoranaOp>, Vec<MajoranaOp>) {
    let m = labeling.mode_count;
    let mut vertex_stabs = Vec::with_capacity(summary.vertex_count());
    for (v, orb) in summary.vertices.iter().enumerate() {
        let mut labels: Vec<usize> = Vec::new();
        for &h in orb {
            let l = labeling.label_of_flag[h];
            if !labels.contains(&l) {
                labels.push(l);
            }
        }
        let deg = summary.degrees[v];
        let phase = if deg % 2 == 0 {
            (deg / 2) % 4
        } else {
            let l = labeling.odd_vertex_label[v].expect("odd vertex has a mode");
            labels.push(l);
            ((deg + 1) / 2) % 4
        };
        vertex_stabs.push(MajoranaOp::from_support(m, phase as u8, labels));
    }
    let mut face_stabs = Vec::with_capacity(summary.face_count());
    for orb in &summary.faces {
        let mut labels: Vec<usize> = Vec::new();
        for &h in orb {
            if summary.face_of_flag[r.tau(h)] != summary.face_of_flag[h] {
                let l = labeling.label_of_flag[h];
                if !labels.contains(&l) {
                    labels.push(l);
                }
            }
        }
        let phase = (labels.len() / 2) % 4;
        face_stabs.push(MajoranaOp::from_support(m, phase as u8, labels));
    }
    (vertex_stabs, face_stabs)
}

/// Sector operator `q_{[h]_rho} = i gamma_{[h]} gamma_{[rho h]}`, exact
/// phase.
pub fn sector_operator(
    r: &RotationSystem,
    labeling: &MajoranaLabeling,
    flag: usize,
) -> MajoranaOp {
    let m = labeling.mode_count;
    let a = MajoranaOp::single(m, labeling.label_of_flag[flag]);
    let b = MajoranaOp::single(m, labeling.label_of_flag[r.rho(flag)]);
    a.mul(&b).scale_phase(1)
}

/// Jordan-Wigner image of a single mode: `gamma_{2k} -> X_k Z_{<k}`,
/// `gamma_{2k+1} -> Y_k Z_{<k}`, as `(phase exponent, x, z)` in the
/// `i^c X^x Z^z` convention.
fn jw_mode(nq: usize, mode: usize) -> (u8, BitVec, BitVec) {
    let k = mode / 2;
    let mut x = BitVec::zeros(nq);
    let mut z = BitVec::zeros(nq);
    x.set(k, true);
    for i in 0..k {
        z.set(i, true);
    }
    if mode % 2 == 1 {
        z.set(k, true);
        (1, x, z)
    } else {
        (0, x, z)
    }
}

/// Jordan-Wigner transform of an operator on an even number of modes:
/// the Pauli (mod phase) and the exact phase exponent of `i` relative to the
/// `X^x Z^z` normal form.
pub fn jordan_wigner(op: &MajoranaOp) -> (Pauli, u8) {
    assert!(op.mode_count % 2 == 0, "Jordan-Wigner needs an even mode count");
    let nq = op.mode_count / 2;
    let mut cx = BitVec::zeros(nq);
    let mut cz = BitVec::zeros(nq);
    let mut phase = op.phase as usize;
    for mode in op.support.iter_ones() {
        let (c, x, z) = jw_mode(nq, mode);
        // (c1, x1, z1) * (c2, x2, z2): moving X^x2 past Z^z1 costs
        // (-1)^{z1 . x2}.
        let cross = cz.dot(&x) as usize;
        phase = (phase + c as usize + 2 * cross) % 4;
        cx.xor_assign(&x);
        cz.xor_assign(&z);
    }
    // i^phase X^x Z^z; on qubits with both bits set, XZ = -iY, so the
    // standard Pauli letter absorbs one factor of -i per Y.
    let mut y_mask = cx.clone();
    y_mask.and_assign(&cz);
    let ys = y_mask.count_ones();
    let phase = (phase as i64 - ys as i64).rem_euclid(4);
    (Pauli::from_xz(cx, cz), phase as u8)
}

/// Number of logical qubits of the Majorana surface code: the topological
/// formula, cross-checked against the symplectic rank after Jordan-Wigner.
pub fn k_majorana(r: &RotationSystem) -> Result<usize> {
    let summary = r.summary()?;
    let labeling = label_majoranas(r, &summary)?;
    let (vertex_stabs, face_stabs) = majorana_stabilizers(r, &summary, &labeling);
    let checkerboardable = crate::checkerboard::is_checkerboardable(&summary).0;
    let topological = if summary.orientable {
        2 * summary.genus as i64
    } else {
        summary.genus as i64
    } + if checkerboardable {
        0
    } else {
        (summary.odd_vertex_count as i64 - 2) / 2
    };
    // Rank route: K = m/2 - rank(JW image of all stabilizers).
    let rows: Vec<BitVec> = vertex_stabs
        .iter()
        .chain(&face_stabs)
        .map(|s| jordan_wigner(s).0.symplectic_row())
        .collect();
    let rank = crate::f2::rank(&rows, labeling.mode_count) as i64;
    let by_rank = labeling.mode_count as i64 / 2 - rank;
    if topological != by_rank {
        return Err(Error::KMismatch {
            formula: topological,
            rank: by_rank,
        });
    }
    Ok(topological as usize)
}

/// Is `-I` in the group generated by commuting Hermitian operators?
///
/// The support matrix's left kernel spans all identity-support products; the
/// phase map is linear on it with values in {0, 2}, so it suffices to check
/// the kernel basis.
pub fn contains_minus_identity(generators: &[MajoranaOp]) -> bool {
    let Some(first) = generators.first() else {
        return false;
    };
    let m = first.mode_count;
    let rows: Vec<BitVec> = generators.iter().map(|g| g.support.clone()).collect();
    for combo in crate::f2::left_kernel(&rows, m) {
        let mut acc = MajoranaOp::identity(m);
        for i in combo.iter_ones() {
            acc = acc.mul(&generators[i]);
        }
        debug_assert!(acc.is_identity_up_to_phase());
        if acc.phase % 2 == 1 || acc.phase == 2 {
            return true;
        }
    }
    false
}
