//! Assemble a rotation system from the face walks of a polygonal complex.
//!
//! Every face is a closed walk of directed edge occurrences; every edge must
//! appear in exactly two occurrences across all walks (opposite directions
//! when the gluing is orientable, same direction when it is not). Each
//! occurrence contributes two flags, one at its tail and one at its head:
//!
//!   - lambda pairs the tail and head flags of one occurrence (same side),
//!   - rho pairs the head of an occurrence with the tail of the next
//!     occurrence in the same face walk,
//!   - tau pairs the flags of the two occurrences of an edge end-by-end.
//!
//! Loop edges (equal endpoints) are always glued with the orientable
//! convention (tail of one occurrence to head of the other); same-direction
//! cross-cap gluings of loops are not expressible here.

use crate::rotation::RotationSystem;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
}

impl Step {
    pub fn new(edge: usize, from: usize, to: usize) -> Self {
        Step { edge, from, to }
    }
}

pub struct FaceWalkBuilder {
    vertex_count: usize,
    edge_count: usize,
    faces: Vec<Vec<Step>>,
}

impl FaceWalkBuilder {
    pub fn new(vertex_count: usize, edge_count: usize) -> Self {
        FaceWalkBuilder {
            vertex_count,
            edge_count,
            faces: Vec::new(),
        }
    }

    pub fn add_face(&mut self, walk: Vec<Step>) {
        self.faces.push(walk);
    }

    pub fn build(&self) -> Result<RotationSystem> {
        // Occurrence index: (face, position) flattened in insertion order.
        let mut occurrences = Vec::new();
        for (f, walk) in self.faces.iter().enumerate() {
            if walk.is_empty() {
                return Err(Error::Parse(format!("face {f} has an empty walk")));
            }
            for (k, step) in walk.iter().enumerate() {
                let next = walk[(k + 1) % walk.len()];
                if step.to != next.from {
                    return Err(Error::Parse(format!(
                        "face {f} walk breaks at position {k}: {} != {}",
                        step.to, next.from
                    )));
                }
                if step.from >= self.vertex_count
                    || step.to >= self.vertex_count
                    || step.edge >= self.edge_count
                {
                    return Err(Error::Parse(format!(
                        "face {f} step {k} references out-of-range ids"
                    )));
                }
                occurrences.push((f, k, *step));
            }
        }
        let mut occ_of_edge: Vec<Vec<usize>> = vec![Vec::new(); self.edge_count];
        for (i, &(_, _, step)) in occurrences.iter().enumerate() {
            occ_of_edge[step.edge].push(i);
        }
        for (e, occs) in occ_of_edge.iter().enumerate() {
            if occs.len() != 2 {
                return Err(Error::Parse(format!(
                    "edge {e} appears {} times across face walks, need 2",
                    occs.len()
                )));
            }
        }
        // Flags: occurrence i owns 2i (tail flag) and 2i + 1 (head flag).
        let n = 2 * occurrences.len();
        let mut lambda = vec![usize::MAX; n];
        let mut rho = vec![usize::MAX; n];
        let mut tau = vec![usize::MAX; n];
        for (i, &(f, k, _)) in occurrences.iter().enumerate() {
            lambda[2 * i] = 2 * i + 1;
            lambda[2 * i + 1] = 2 * i;
            // Occurrences of one face are contiguous in insertion order.
            let next_occ = i - k + (k + 1) % self.faces[f].len();
            rho[2 * i + 1] = 2 * next_occ;
            rho[2 * next_occ] = 2 * i + 1;
        }
        for occs in &occ_of_edge {
            let (i, j) = (occs[0], occs[1]);
            let (si, sj) = (occurrences[i].2, occurrences[j].2);
            let is_loop = si.from == si.to;
            if is_loop || (si.from == sj.to && si.to == sj.from) {
                // Opposite directions: tails meet heads end-by-end.
                tau[2 * i] = 2 * j + 1;
                tau[2 * j + 1] = 2 * i;
                tau[2 * i + 1] = 2 * j;
                tau[2 * j] = 2 * i + 1;
            } else if si.from == sj.from && si.to == sj.to {
                // Same direction (non-orientable gluing): tails meet tails.
                tau[2 * i] = 2 * j;
                tau[2 * j] = 2 * i;
                tau[2 * i + 1] = 2 * j + 1;
                tau[2 * j + 1] = 2 * i + 1;
            } else {
                return Err(Error::Parse(format!(
                    "edge {} has inconsistent endpoints across its occurrences",
                    si.edge
                )));
            }
        }
        RotationSystem::new(lambda, rho, tau)
    }
}
