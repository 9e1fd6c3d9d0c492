//! Checkerboard colorings of embedded graphs, with and without defects.
//!
//! A graph embedding is checkerboardable when its faces can be two-colored so
//! the faces on either side of every edge differ, i.e. `x * Phi = 1` is
//! solvable for the face-edge adjacency matrix `Phi`. A defect `delta` relaxes
//! this to `x * Phi = 1 + delta`: the two faces must *agree* across defect
//! edges.

use crate::bits::BitVec;
use crate::f2;
use crate::rotation::{GraphSummary, RotationSystem};
use crate::{Error, Result};

/// Face-edge adjacency matrix `Phi` as rows indexed by faces. The column of
/// an edge has two ones (its adjacent faces) or none when the edge is
/// interior to a single face.
pub fn face_edge_matrix(summary: &GraphSummary) -> Vec<BitVec> {
    let ne = summary.edge_count();
    let mut rows = vec![BitVec::zeros(ne); summary.face_count()];
    for (e, orb) in summary.edges.iter().enumerate() {
        let h = orb[0];
        // The four flags of an edge split into sides {h, lambda h} and
        // {tau h, lambda tau h}; lambda preserves faces, tau crosses.
        let f1 = summary.face_of_flag[h];
        let f2 = summary.face_of_flag[*orb
            .iter()
            .find(|&&g| summary.face_of_flag[g] != f1)
            .unwrap_or(&h)];
        if f1 != f2 {
            rows[f1].set(e, true);
            rows[f2].set(e, true);
        }
    }
    rows
}

/// Edge-indicator defect vector, canonical edge order (by minimal flag).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect(pub BitVec);

/// A face two-coloring. `black` holds face ids; `x[f] = true` iff `f` black.
#[derive(Clone, Debug)]
pub struct Coloring {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
}

impl Coloring {
    fn from_indicator(x: &BitVec, nfaces: usize) -> Coloring {
        let mut black = Vec::new();
        let mut white = Vec::new();
        for f in 0..nfaces {
            if x.get(f) {
                black.push(f);
            } else {
                white.push(f);
            }
        }
        Coloring { black, white }
    }

    pub fn indicator(&self, nfaces: usize) -> BitVec {
        BitVec::from_indices(nfaces, self.black.iter().copied())
    }
}

/// The greedy checkerboard pass over the rows of `Phi`.
///
/// Faces neighbouring already-colored faces are colored to satisfy the
/// candidate defect where possible; edges that cannot be satisfied are
/// toggled in the output defect `gamma`. The input `delta` was itself a valid
/// defect exactly when `gamma == delta`.
pub fn checkerboard(phi: &[BitVec], delta: &BitVec) -> (Vec<usize>, Vec<usize>, BitVec) {
    let nfaces = phi.len();
    let nedges = delta.len();
    let mut gamma = delta.clone();
    // Edges interior to a single face can never separate two colors.
    let mut column_count = vec![0u8; nedges];
    for row in phi {
        for e in row.iter_ones() {
            column_count[e] += 1;
        }
    }
    for e in 0..nedges {
        if column_count[e] == 0 {
            gamma.set(e, true);
        }
    }
    let mut faces_of_edge: Vec<Vec<usize>> = vec![Vec::new(); nedges];
    for (f, row) in phi.iter().enumerate() {
        for e in row.iter_ones() {
            faces_of_edge[e].push(f);
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        None,
        Black,
        White,
    }
    let mut color = vec![Color::None; nfaces];
    if nfaces > 0 {
        color[0] = Color::Black;
    }
    let mut boundary = phi.first().cloned().unwrap_or_else(|| BitVec::zeros(nedges));
    while let Some(e) = boundary.first_one() {
        let fs = &faces_of_edge[e];
        let (fa, fb) = (fs[0], fs[1]);
        let uncolored = match (color[fa] == Color::None, color[fb] == Color::None) {
            (true, false) => Some((fa, fb)),
            (false, true) => Some((fb, fa)),
            _ => None,
        };
        if let Some((f, g)) = uncolored {
            let same_side = gamma.get(e);
            color[f] = match (color[g], same_side) {
                (Color::White, false) | (Color::Black, true) => Color::Black,
                _ => Color::White,
            };
            for e2 in phi[f].iter_ones() {
                let other = faces_of_edge[e2].iter().any(|&f2| color[f2] == Color::None);
                if other {
                    boundary.set(e2, true);
                }
            }
        } else {
            // Both adjacent faces already colored: record whether this edge
            // must be a defect edge.
            gamma.set(e, color[fa] == color[fb]);
        }
        boundary.set(e, false);
    }
    let black = (0..nfaces).filter(|&f| color[f] == Color::Black).collect();
    let white = (0..nfaces).filter(|&f| color[f] == Color::White).collect();
    (black, white, gamma)
}

/// Exact F2 test: is `x * Phi = 1 + delta` solvable?
pub fn is_checkerboardable_with_defect(summary: &GraphSummary, delta: &Defect) -> bool {
    let phi = face_edge_matrix(summary);
    let mut target = BitVec::zeros(summary.edge_count());
    for e in 0..summary.edge_count() {
        target.set(e, true);
    }
    target.xor_assign(&delta.0);
    f2::solve_left(&phi, summary.edge_count(), &target).is_some()
}

/// Checkerboardability without defects; on success returns the coloring whose
/// black set contains the face of flag 0.
pub fn is_checkerboardable(summary: &GraphSummary) -> (bool, Option<Coloring>) {
    let phi = face_edge_matrix(summary);
    let ne = summary.edge_count();
    let target = BitVec::from_indices(ne, 0..ne);
    match f2::solve_left(&phi, ne, &target) {
        None => (false, None),
        Some(mut x) => {
            let f0 = summary.face_of_flag[0];
            if !x.get(f0) {
                // The only other solution is the complement.
                for f in 0..summary.face_count() {
                    x.flip(f);
                }
            }
            (true, Some(Coloring::from_indicator(&x, summary.face_count())))
        }
    }
}

/// Some defect that makes the graph checkerboardable; the zero defect when it
/// already is.
pub fn find_defect(summary: &GraphSummary) -> Defect {
    let phi = face_edge_matrix(summary);
    let delta = BitVec::zeros(summary.edge_count());
    let (_, _, gamma) = checkerboard(&phi, &delta);
    let d = Defect(gamma);
    debug_assert!(is_checkerboardable_with_defect(summary, &d));
    d
}

/// Flag partition `(H_w, H_b)` from a coloring: a flag is black iff its face
/// is black. Lambda and rho preserve the classes, tau exchanges them.
pub fn flag_partition(summary: &GraphSummary, coloring: &Coloring) -> (Vec<usize>, Vec<usize>) {
    let x = coloring.indicator(summary.face_count());
    let mut white = Vec::new();
    let mut black = Vec::new();
    for h in 0..summary.vertex_of_flag.len() {
        if x.get(summary.face_of_flag[h]) {
            black.push(h);
        } else {
            white.push(h);
        }
    }
    (white, black)
}

/// Vertex-parity check of the defect decomposition lemma: the parity of
/// defect edges at `v` is 1 exactly when `deg(v)` is odd.
pub fn defect_vertex_parities_ok(summary: &GraphSummary, delta: &Defect) -> bool {
    let mut parity = vec![false; summary.vertex_count()];
    for e in delta.0.iter_ones() {
        let (a, b) = summary.edge_endpoints(e);
        if a == b {
            continue; // loop: contributes 2 to the vertex, parity unchanged
        }
        parity[a] ^= true;
        parity[b] ^= true;
    }
    (0..summary.vertex_count()).all(|v| parity[v] == (summary.degrees[v] % 2 == 1))
}

/// Convenience wrapper producing all checkerboard data for a system at once.
pub struct CheckerboardInfo {
    pub checkerboardable: bool,
    pub coloring: Option<Coloring>,
    pub defect: Defect,
}

pub fn analyze(r: &RotationSystem) -> Result<CheckerboardInfo> {
    let summary = r.summary()?;
    let (ok, coloring) = is_checkerboardable(&summary);
    let defect = find_defect(&summary);
    if ok && !defect.0.is_zero() {
        return Err(Error::Inconsistent(
            "greedy defect nonzero on a checkerboardable graph".into(),
        ));
    }
    Ok(CheckerboardInfo {
        checkerboardable: ok,
        coloring,
        defect,
    })
}
