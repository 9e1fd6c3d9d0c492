//! Qubit surface codes on embedded graphs: `ceil((deg(v)-2)/2)` qubits per
//! vertex, an extremal CAL of Paulis over the sectors around each vertex, and
//! one stabilizer per face (the product of its sector Paulis).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::pauli::{self, Pauli};
use crate::rotation::{GraphSummary, RotationSystem};
use crate::{checkerboard, Error, Result};

#[derive(Clone)]
pub struct SurfaceCode {
    pub graph: RotationSystem,
    pub summary: GraphSummary,
    /// First global qubit index per vertex; vertex `v` owns
    /// `qubit_offset[v] .. qubit_offset[v] + qubits_at[v]`.
    pub qubit_offset: Vec<usize>,
    pub qubits_at: Vec<usize>,
    pub qubit_count: usize,
    /// Per vertex: the CAL over its local qubits, one Pauli per sector in
    /// `(tau rho)`-order from the vertex's minimal flag.
    pub cal_map: Vec<Vec<Pauli>>,
    /// Per face: its sectors as `(vertex, position)` pairs, in face order.
    pub sectors_of_face: Vec<Vec<(usize, usize)>>,
    /// One stabilizer per face, on all `qubit_count` qubits.
    pub stabilizers: Vec<Pauli>,
}

/// Qubits at a vertex of the given degree.
pub fn qubits_for_degree(deg: usize) -> usize {
    (deg - 2).div_ceil(2)
}

/// Default CALs (the canonical construction per degree), with optional
/// per-vertex overrides keyed by the vertex's minimal flag.
pub fn assign_cals(
    r: &RotationSystem,
    summary: &GraphSummary,
    spec: Option<&BTreeMap<usize, Vec<String>>>,
) -> Result<Vec<Vec<Pauli>>> {
    let mut out = Vec::with_capacity(summary.vertex_count());
    for v in 0..summary.vertex_count() {
        let deg = summary.degrees[v];
        if deg < 3 {
            return Err(Error::DegreeTooSmall { vertex: v, degree: deg });
        }
        let min_flag = summary.vertex_min_flag(v);
        let from_spec = spec.and_then(|m| m.get(&min_flag));
        let cal = match from_spec {
            None => pauli::cal_construct(deg)?,
            Some(strings) => {
                if strings.len() != deg {
                    return Err(Error::CalSpec(format!(
                        "vertex {v} (flag {min_flag}): {} Paulis for degree {deg}",
                        strings.len()
                    )));
                }
                let list: Vec<Pauli> = strings
                    .iter()
                    .map(|s| Pauli::parse(s))
                    .collect::<Result<_>>()?;
                let nq = qubits_for_degree(deg);
                if list.iter().any(|p| p.n() != nq) {
                    return Err(Error::CalSpec(format!(
                        "vertex {v} (flag {min_flag}): Paulis must act on {nq} qubits"
                    )));
                }
                if !pauli::is_extremal_cal(&list) {
                    return Err(Error::CalSpec(format!(
                        "vertex {v} (flag {min_flag}): list is not an extremal CAL"
                    )));
                }
                list
            }
        };
        let _ = r;
        out.push(cal);
    }
    Ok(out)
}

/// Assemble the code: qubit layout, face sector lists, stabilizers; checks
/// stabilizer commutativity and the all-faces product.
pub fn build_code(r: &RotationSystem, cal_map: Vec<Vec<Pauli>>) -> Result<SurfaceCode> {
    let summary = r.summary()?;
    if cal_map.len() != summary.vertex_count() {
        return Err(Error::CalSpec("one CAL per vertex required".into()));
    }
    let mut qubit_offset = vec![0usize; summary.vertex_count()];
    let mut qubits_at = vec![0usize; summary.vertex_count()];
    let mut total = 0usize;
    for v in 0..summary.vertex_count() {
        qubit_offset[v] = total;
        qubits_at[v] = qubits_for_degree(summary.degrees[v]);
        total += qubits_at[v];
    }
    let mut sectors_of_face: Vec<Vec<(usize, usize)>> = vec![Vec::new(); summary.face_count()];
    for v in 0..summary.vertex_count() {
        let walk = r.sector_walk(&summary, v);
        for (k, &h) in walk.iter().enumerate() {
            sectors_of_face[summary.face_of_flag[h]].push((v, k));
        }
    }
    let mut stabilizers = Vec::with_capacity(summary.face_count());
    for sectors in &sectors_of_face {
        let mut s = Pauli::identity(total);
        for &(v, k) in sectors {
            s = s.mul(&cal_map[v][k].embed(total, qubit_offset[v]));
        }
        stabilizers.push(s);
    }
    for i in 0..stabilizers.len() {
        for j in (i + 1)..stabilizers.len() {
            if pauli::commute_bit(&stabilizers[i], &stabilizers[j]) {
                return Err(Error::NonCommutingStabilizers(i, j));
            }
        }
    }
    debug_assert!(pauli::product(&stabilizers).is_identity());
    Ok(SurfaceCode {
        graph: r.clone(),
        summary,
        qubit_offset,
        qubits_at,
        qubit_count: total,
        cal_map,
        sectors_of_face,
        stabilizers,
    })
}

impl SurfaceCode {
    /// `(N, K)`: N from the layout, K computed both by the topological
    /// formula and as `N - rank(stabilizers)`; the two must agree.
    pub fn params_nk(&self) -> Result<(usize, usize)> {
        let n = self.qubit_count;
        let rows: Vec<_> = self
            .stabilizers
            .iter()
            .map(|s| s.symplectic_row())
            .collect();
        let rank = crate::f2::rank(&rows, 2 * n);
        let by_rank = n as i64 - rank as i64;
        let checkerboardable = checkerboard::is_checkerboardable(&self.summary).0;
        let formula = if self.summary.orientable {
            2 * self.summary.genus as i64
        } else {
            self.summary.genus as i64
        } + if checkerboardable {
            0
        } else {
            (self.summary.odd_vertex_count as i64 - 2) / 2
        };
        if formula != by_rank {
            return Err(Error::KMismatch {
                formula,
                rank: by_rank,
            });
        }
        Ok((n, formula as usize))
    }

    /// Expected qubit count `|E| - |V| + M/2`.
    pub fn expected_n(&self) -> usize {
        self.summary.edge_count() - self.summary.vertex_count()
            + self.summary.odd_vertex_count / 2
    }
}

/// The on-disk code document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeDoc {
    pub n: usize,
    pub k: usize,
    pub stabilizers: Vec<String>,
    pub source: serde_json::Value,
}

impl CodeDoc {
    pub fn from_code(code: &SurfaceCode, source: serde_json::Value) -> Result<CodeDoc> {
        let (n, k) = code.params_nk()?;
        Ok(CodeDoc {
            n,
            k,
            stabilizers: code.stabilizers.iter().map(|s| s.to_string()).collect(),
            source,
        })
    }

    pub fn from_stabilizers(stabilizers: &[Pauli], source: serde_json::Value) -> CodeDoc {
        let n = stabilizers.first().map_or(0, |p| p.n());
        let rows: Vec<_> = stabilizers.iter().map(|s| s.symplectic_row()).collect();
        let k = n - crate::f2::rank(&rows, 2 * n);
        CodeDoc {
            n,
            k,
            stabilizers: stabilizers.iter().map(|s| s.to_string()).collect(),
            source,
        }
    }

    pub fn parse(text: &str) -> Result<CodeDoc> {
        let doc: CodeDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad code JSON: {e}")))?;
        for s in &doc.stabilizers {
            let p = Pauli::parse(s)?;
            if p.n() != doc.n {
                return Err(Error::Parse(format!(
                    "stabilizer {s:?} length differs from n = {}",
                    doc.n
                )));
            }
        }
        Ok(doc)
    }

    pub fn stabilizer_paulis(&self) -> Vec<Pauli> {
        self.stabilizers
            .iter()
            .map(|s| Pauli::parse(s).expect("validated at parse"))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization cannot fail")
    }
}

/// Build with canonical CALs.
pub fn build_default(r: &RotationSystem) -> Result<SurfaceCode> {
    let summary = r.summary()?;
    let cals = assign_cals(r, &summary, None)?;
    build_code(r, cals)
}

/// Build honoring the optional CAL block of a rotation-system document.
pub fn build_from_doc(doc: &crate::rotation::RotationSystemDoc) -> Result<SurfaceCode> {
    let summary = doc.system.summary()?;
    let cals = assign_cals(&doc.system, &summary, doc.cals.as_ref())?;
    build_code(&doc.system, cals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_counts_per_degree() {
        assert_eq!(qubits_for_degree(3), 1);
        assert_eq!(qubits_for_degree(4), 1);
        assert_eq!(qubits_for_degree(5), 2);
        assert_eq!(qubits_for_degree(6), 2);
    }

    #[test]
    fn default_cals_for_small_degrees() {
        // Theta graph on the torus: two degree-3 vertices.
        let mut b = crate::facewalk::FaceWalkBuilder::new(2, 3);
        b.add_face(vec![
            crate::facewalk::Step::new(0, 0, 1),
            crate::facewalk::Step::new(1, 1, 0),
            crate::facewalk::Step::new(2, 0, 1),
            crate::facewalk::Step::new(0, 1, 0),
            crate::facewalk::Step::new(1, 0, 1),
            crate::facewalk::Step::new(2, 1, 0),
        ]);
        let r = b.build().unwrap();
        let summary = r.summary().unwrap();
        let cals = assign_cals(&r, &summary, None).unwrap();
        for cal in &cals {
            assert_eq!(cal.len(), 3);
            assert_eq!(
                cal.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                vec!["X", "Y", "Z"]
            );
        }
        let code = build_code(&r, cals).unwrap();
        assert_eq!(code.qubit_count, code.expected_n());
        assert_eq!(code.qubit_count, 2);
        let (n, k) = code.params_nk().unwrap();
        assert_eq!(n, 2);
        // Torus, checkerboardable? The theta graph has one face, so no;
        // odd-degree vertices M = 2: K = 2g + 0 = 2.
        assert_eq!(k, 2);
    }
}
