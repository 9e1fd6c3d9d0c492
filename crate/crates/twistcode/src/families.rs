//! Generators for the code families: square and rotated toric lattices,
//! cyclic toric codes, high-genus stellated codes, the rotated surface code,
//! and the 2- and 4-parameter cyclic shift families with their
//! number-theoretic structure.

use crate::bits::BitVec;
use crate::f2;
use crate::facewalk::{FaceWalkBuilder, Step};
use crate::pauli::Pauli;
use crate::rotation::{OrientedRotationSystem, RotationSystem};
use crate::{Error, Result};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Integer lattice vectors spanning a torus quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeVectors {
    pub l1: (i64, i64),
    pub l2: (i64, i64),
}

impl LatticeVectors {
    pub fn new(l1: (i64, i64), l2: (i64, i64)) -> Result<Self> {
        let det = l1.0 * l2.1 - l1.1 * l2.0;
        if det == 0 {
            return Err(Error::BadFamilyParams(
                "lattice vectors are parallel".into(),
            ));
        }
        Ok(LatticeVectors { l1, l2 })
    }

    pub fn determinant(&self) -> i64 {
        (self.l1.0 * self.l2.1 - self.l1.1 * self.l2.0).abs()
    }

    pub fn contains(&self, d: (i64, i64)) -> bool {
        let det = self.l1.0 * self.l2.1 - self.l1.1 * self.l2.0;
        let m1_num = d.0 * self.l2.1 - d.1 * self.l2.0;
        let m2_num = self.l1.0 * d.1 - self.l1.1 * d.0;
        m1_num % det == 0 && m2_num % det == 0
    }

    pub fn checkerboardable(&self) -> bool {
        (self.l1.0 + self.l1.1) % 2 == 0 && (self.l2.0 + self.l2.1) % 2 == 0
    }
}

/// The square-lattice quotient graph on the torus: vertices are lattice
/// classes, edges step east and north. Also returns the class
/// representatives in BFS order (the canonical vertex coordinates).
pub struct RotatedToric {
    pub system: RotationSystem,
    pub lattice: LatticeVectors,
    pub reps: Vec<(i64, i64)>,
}

impl RotatedToric {
    /// Vertex class of an arbitrary lattice point.
    pub fn class_of(&self, p: (i64, i64)) -> usize {
        self.reps
            .iter()
            .position(|&r| self.lattice.contains((p.0 - r.0, p.1 - r.1)))
            .expect("point reduces to some representative")
    }
}

pub fn rotated_toric(lattice: LatticeVectors) -> Result<RotatedToric> {
    let n = lattice.determinant() as usize;
    if n == 0 {
        return Err(Error::BadFamilyParams("degenerate lattice".into()));
    }
    if lattice.contains((1, 0)) || lattice.contains((0, 1)) {
        return Err(Error::BadFamilyParams(
            "lattice identifies adjacent sites; the quotient graph would have loops".into(),
        ));
    }
    // BFS over the quotient, first-visited representative is canonical.
    let mut reps: Vec<(i64, i64)> = vec![(0, 0)];
    let mut queue = std::collections::VecDeque::from([0usize]);
    let class_of = |reps: &[(i64, i64)], p: (i64, i64)| -> Option<usize> {
        reps.iter()
            .position(|&r| lattice.contains((p.0 - r.0, p.1 - r.1)))
    };
    while let Some(v) = queue.pop_front() {
        let p = reps[v];
        for d in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            let q = (p.0 + d.0, p.1 + d.1);
            if class_of(&reps, q).is_none() {
                reps.push(q);
                queue.push_back(reps.len() - 1);
            }
        }
    }
    if reps.len() != n {
        return Err(Error::BadFamilyParams(format!(
            "lattice quotient has {} classes, expected {n}",
            reps.len()
        )));
    }
    // Oriented rotation system: half-edges 4v + {0: E, 1: N, 2: W, 3: S},
    // counterclockwise nu.
    let mut nu = vec![0usize; 4 * n];
    let mut epsilon = vec![0usize; 4 * n];
    for v in 0..n {
        for k in 0..4 {
            nu[4 * v + k] = 4 * v + (k + 1) % 4;
        }
        let p = reps[v];
        let east = class_of(&reps, (p.0 + 1, p.1)).unwrap();
        let north = class_of(&reps, (p.0, p.1 + 1)).unwrap();
        epsilon[4 * v] = 4 * east + 2;
        epsilon[4 * east + 2] = 4 * v;
        epsilon[4 * v + 1] = 4 * north + 3;
        epsilon[4 * north + 3] = 4 * v + 1;
    }
    let oriented = OrientedRotationSystem::new(nu, epsilon)?;
    Ok(RotatedToric {
        system: oriented.to_general(),
        lattice,
        reps,
    })
}

/// The m x n square-lattice toric graph.
pub fn square_toric(m: usize, n: usize) -> Result<RotatedToric> {
    if m < 2 || n < 2 {
        return Err(Error::BadFamilyParams(
            "square toric lattice needs m, n >= 2".into(),
        ));
    }
    rotated_toric(LatticeVectors::new((m as i64, 0), (0, n as i64))?)
}

/// Distance of a checkerboardable rotated toric code:
/// `min ||m1 L1 + m2 L2||_inf` over nonzero integer combinations, searched
/// in a provably sufficient box (doubling the box is asserted not to help
/// in tests).
pub fn rotated_toric_distance_formula(lattice: &LatticeVectors) -> Result<usize> {
    if !lattice.checkerboardable() {
        return Err(Error::BadFamilyParams(
            "distance formula applies to the checkerboardable case only".into(),
        ));
    }
    Ok(min_linf_combination(lattice, 1))
}

pub fn min_linf_combination(lattice: &LatticeVectors, widen: i64) -> usize {
    let linf = |v: (i64, i64)| v.0.abs().max(v.1.abs());
    let bound = widen * (linf(lattice.l1) + linf(lattice.l2) + 2);
    let mut best = u64::MAX;
    for m1 in -bound..=bound {
        for m2 in -bound..=bound {
            if m1 == 0 && m2 == 0 {
                continue;
            }
            let v = (
                m1 * lattice.l1.0 + m2 * lattice.l2.0,
                m1 * lattice.l1.1 + m2 * lattice.l2.1,
            );
            best = best.min(linf(v) as u64);
        }
    }
    best as usize
}

/// The cyclic toric code: the `K_5`-style lattice `(a, b), (-b, a)` together
/// with the explicit cyclic stabilizer strings
/// `Z X I^s X Z I^(N-s-4)` and shifts, `s = ceil(N t / b) - 2`.
pub struct CyclicToric {
    pub graph: RotatedToric,
    pub stabilizers: Vec<Pauli>,
    pub n: usize,
}

pub fn cyclic_toric(a: u64, b: u64) -> Result<CyclicToric> {
    if !(b > a && a >= 1) || gcd(a, b) != 1 {
        return Err(Error::BadFamilyParams(
            "cyclic toric code needs gcd(a, b) = 1 and b > a >= 1".into(),
        ));
    }
    let n = (a * a + b * b) as usize;
    let lattice = LatticeVectors::new((a as i64, b as i64), (-(b as i64), a as i64))?;
    let graph = rotated_toric(lattice)?;
    // t: minimal positive integer with (t a + 1) divisible by b.
    let t = (1..=b).find(|t| (t * a + 1) % b == 0).expect("gcd(a,b) = 1");
    let s = (n * t as usize).div_ceil(b as usize) - 2;
    let stabilizers = cyclic_shift_strings(n, &[(0, 'Z'), (1, 'X'), (s + 2, 'X'), (s + 3, 'Z')]);
    Ok(CyclicToric {
        graph,
        stabilizers,
        n,
    })
}

/// All N cyclic shifts of the Pauli string with the given letters.
pub fn cyclic_shift_strings(n: usize, letters: &[(usize, char)]) -> Vec<Pauli> {
    (0..n)
        .map(|shift| {
            let mut chars = vec!['I'; n];
            for &(pos, c) in letters {
                chars[(pos + shift) % n] = c;
            }
            Pauli::parse(&chars.iter().collect::<String>()).unwrap()
        })
        .collect()
}

/// High-genus stellated code graph: s square t x t patches glued around a
/// center inside a 2s-gon with opposite sides identified. Orientable genus
/// (s-1)/2; two degree-s vertices, one degree-2s vertex, the rest degree 4.
pub fn stellated_high_genus(s: usize, t: usize) -> Result<RotationSystem> {
    if s < 3 || s % 2 == 0 {
        return Err(Error::BadFamilyParams("stellated code needs odd s >= 3".into()));
    }
    if t < 1 {
        return Err(Error::BadFamilyParams("stellated code needs t >= 1".into()));
    }
    // Local vertex key (slice, x, y), 0 <= x, y <= t.
    let coord = |i: usize, x: usize, y: usize| (i * (t + 1) + x) * (t + 1) + y;
    let total = s * (t + 1) * (t + 1);
    let mut vuf = UnionFind::new(total);
    for i in 0..s {
        let next = (i + 1) % s;
        for k in 0..=t {
            vuf.union(coord(i, 0, k), coord(next, k, 0));
        }
        let k = (i + (s - 1) / 2) % s;
        for y in 0..=t {
            vuf.union(coord(i, t, y), coord(k, y, t));
        }
    }
    let vertex_id = vuf.compress(total);
    let nv = vuf.class_count();
    // Edge keys: per slice, horizontal (0) and vertical (1) grid edges.
    let edge_key = |i: usize, kind: usize, x: usize, y: usize| {
        ((i * 2 + kind) * (t + 1) + x) * (t + 1) + y
    };
    let etotal = s * 2 * (t + 1) * (t + 1);
    let mut euf = UnionFind::new(etotal);
    for i in 0..s {
        let next = (i + 1) % s;
        for k in 0..t {
            // Spoke: V(i, 0, k) == H(next, k, 0).
            euf.union(edge_key(i, 1, 0, k), edge_key(next, 0, k, 0));
        }
        let kk = (i + (s - 1) / 2) % s;
        for y in 0..t {
            // Outer: V(i, t, y) == H(kk, y, t).
            euf.union(edge_key(i, 1, t, y), edge_key(kk, 0, y, t));
        }
    }
    // Keep only edge keys that really name grid edges.
    let mut edge_id = vec![usize::MAX; etotal];
    let mut ne = 0usize;
    let mut id_of_root = std::collections::HashMap::new();
    for i in 0..s {
        for x in 0..=t {
            for y in 0..=t {
                if x < t {
                    let root = euf.find(edge_key(i, 0, x, y));
                    let id = *id_of_root.entry(root).or_insert_with(|| {
                        let id = ne;
                        ne += 1;
                        id
                    });
                    edge_id[edge_key(i, 0, x, y)] = id;
                }
                if y < t {
                    let root = euf.find(edge_key(i, 1, x, y));
                    let id = *id_of_root.entry(root).or_insert_with(|| {
                        let id = ne;
                        ne += 1;
                        id
                    });
                    edge_id[edge_key(i, 1, x, y)] = id;
                }
            }
        }
    }
    let mut builder = FaceWalkBuilder::new(nv, ne);
    for i in 0..s {
        for x in 0..t {
            for y in 0..t {
                let v00 = vertex_id[coord(i, x, y)];
                let v10 = vertex_id[coord(i, x + 1, y)];
                let v11 = vertex_id[coord(i, x + 1, y + 1)];
                let v01 = vertex_id[coord(i, x, y + 1)];
                builder.add_face(vec![
                    Step::new(edge_id[edge_key(i, 0, x, y)], v00, v10),
                    Step::new(edge_id[edge_key(i, 1, x + 1, y)], v10, v11),
                    Step::new(edge_id[edge_key(i, 0, x, y + 1)], v11, v01),
                    Step::new(edge_id[edge_key(i, 1, x, y)], v01, v00),
                ]);
            }
        }
    }
    let r = builder.build()?;
    let summary = r.summary()?;
    let expect_v = s * t * t - s + 3;
    let expect_e = 2 * s * t * t;
    let expect_f = s * t * t;
    if (summary.vertex_count(), summary.edge_count(), summary.face_count())
        != (expect_v, expect_e, expect_f)
    {
        return Err(Error::Inconsistent(format!(
            "stellated({s},{t}) counts: got ({}, {}, {}), want ({expect_v}, {expect_e}, {expect_f})",
            summary.vertex_count(),
            summary.edge_count(),
            summary.face_count()
        )));
    }
    Ok(r)
}

/// The rotated surface code graph: a d x d grid plus alternating boundary
/// arcs, planar, with exactly four degree-3 corners.
pub fn rotated_surface(d: usize) -> Result<RotationSystem> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::BadFamilyParams(
            "rotated surface code needs odd d >= 3".into(),
        ));
    }
    let vid = |x: usize, y: usize| y * d + x;
    let nv = d * d;
    // Edges: H(x, y) for x < d-1, V(x, y) for y < d-1, then arcs.
    let hid = |x: usize, y: usize| y * (d - 1) + x;
    let nh = d * (d - 1);
    let vid_e = |x: usize, y: usize| nh + x * (d - 1) + y;
    let nvert = d * (d - 1);
    let mut ne = nh + nvert;
    let mut arcs: Vec<(usize, usize, usize)> = Vec::new(); // (edge id, vid a, vid b)
    let mut arc_at = std::collections::HashMap::new();
    // Bottom: gaps x in {0, 2, ...}; top: {1, 3, ...}; left: y odd; right: y even.
    for x in (0..d - 1).step_by(2) {
        arc_at.insert(("b", x), ne);
        arcs.push((ne, vid(x, 0), vid(x + 1, 0)));
        ne += 1;
    }
    for x in (1..d - 1).step_by(2) {
        arc_at.insert(("t", x), ne);
        arcs.push((ne, vid(x, d - 1), vid(x + 1, d - 1)));
        ne += 1;
    }
    for y in (1..d - 1).step_by(2) {
        arc_at.insert(("l", y), ne);
        arcs.push((ne, vid(0, y), vid(0, y + 1)));
        ne += 1;
    }
    for y in (0..d - 1).step_by(2) {
        arc_at.insert(("r", y), ne);
        arcs.push((ne, vid(d - 1, y), vid(d - 1, y + 1)));
        ne += 1;
    }
    let mut builder = FaceWalkBuilder::new(nv, ne);
    // Interior cells, counterclockwise.
    for x in 0..d - 1 {
        for y in 0..d - 1 {
            builder.add_face(vec![
                Step::new(hid(x, y), vid(x, y), vid(x + 1, y)),
                Step::new(vid_e(x + 1, y), vid(x + 1, y), vid(x + 1, y + 1)),
                Step::new(hid(x, y + 1), vid(x + 1, y + 1), vid(x, y + 1)),
                Step::new(vid_e(x, y), vid(x, y + 1), vid(x, y)),
            ]);
        }
    }
    // Two-gons: arc + covered grid edge, opposite to the cell traversal.
    for (&(side, k), &arc) in &arc_at {
        match side {
            "b" => builder.add_face(vec![
                Step::new(arc, vid(k, 0), vid(k + 1, 0)),
                Step::new(hid(k, 0), vid(k + 1, 0), vid(k, 0)),
            ]),
            "t" => builder.add_face(vec![
                Step::new(hid(k, d - 1), vid(k, d - 1), vid(k + 1, d - 1)),
                Step::new(arc, vid(k + 1, d - 1), vid(k, d - 1)),
            ]),
            "l" => builder.add_face(vec![
                Step::new(vid_e(0, k), vid(0, k), vid(0, k + 1)),
                Step::new(arc, vid(0, k + 1), vid(0, k)),
            ]),
            "r" => builder.add_face(vec![
                Step::new(arc, vid(d - 1, k), vid(d - 1, k + 1)),
                Step::new(vid_e(d - 1, k), vid(d - 1, k + 1), vid(d - 1, k)),
            ]),
            _ => unreachable!(),
        }
    }
    // Outer face, clockwise in plane coordinates: bottom right-to-left, up
    // the left side, top left-to-right, down the right side.
    let mut outer = Vec::new();
    for x in (0..d - 1).rev() {
        match arc_at.get(&("b", x)) {
            Some(&arc) => outer.push(Step::new(arc, vid(x + 1, 0), vid(x, 0))),
            None => outer.push(Step::new(hid(x, 0), vid(x + 1, 0), vid(x, 0))),
        }
    }
    for y in 0..d - 1 {
        match arc_at.get(&("l", y)) {
            Some(&arc) => outer.push(Step::new(arc, vid(0, y), vid(0, y + 1))),
            None => outer.push(Step::new(vid_e(0, y), vid(0, y), vid(0, y + 1))),
        }
    }
    for x in 0..d - 1 {
        match arc_at.get(&("t", x)) {
            Some(&arc) => outer.push(Step::new(arc, vid(x, d - 1), vid(x + 1, d - 1))),
            None => outer.push(Step::new(hid(x, d - 1), vid(x, d - 1), vid(x + 1, d - 1))),
        }
    }
    for y in (0..d - 1).rev() {
        match arc_at.get(&("r", y)) {
            Some(&arc) => outer.push(Step::new(arc, vid(d - 1, y + 1), vid(d - 1, y))),
            None => outer.push(Step::new(vid_e(d - 1, y), vid(d - 1, y + 1), vid(d - 1, y))),
        }
    }
    builder.add_face(outer);
    let r = builder.build()?;
    let summary = r.summary()?;
    let odd: Vec<usize> = (0..summary.vertex_count())
        .filter(|&v| summary.degrees[v] % 2 == 1)
        .collect();
    if odd.len() != 4 || summary.genus != 0 || !summary.orientable {
        return Err(Error::Inconsistent(format!(
            "rotated surface d={d}: {} odd vertices, genus {}",
            odd.len(),
            summary.genus
        )));
    }
    Ok(r)
}

/// Specification of a 4-parameter cyclic code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicSpec {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl CyclicSpec {
    pub fn new(n: usize, p: usize, q: usize, r: usize) -> Result<Self> {
        if p < 1 || q < 1 || r < 1 {
            return Err(Error::BadFamilyParams("need p, q, r >= 1".into()));
        }
        if r == q || q == p + r || r == p + r {
            return Err(Error::BadFamilyParams("need r, q, p+r distinct".into()));
        }
        if q.max(p + r) + 1 > n {
            return Err(Error::BadFamilyParams(
                "need max(q, p+r) + 1 <= N".into(),
            ));
        }
        Ok(CyclicSpec { n, p, q, r })
    }

    /// The N cyclic shifts of `Z@0, Z@q, X@r, X@(p+r)`.
    pub fn stabilizers(&self) -> Vec<Pauli> {
        cyclic_shift_strings(
            self.n,
            &[(0, 'Z'), (self.q, 'Z'), (self.r, 'X'), (self.p + self.r, 'X')],
        )
    }
}

/// Pairwise commutation of `{S_0, S_q, S_r, S_{p+r}}` decides commutation of
/// the whole shift family.
pub fn cyclic4_consistent(spec: &CyclicSpec) -> bool {
    let stabs = spec.stabilizers();
    let idx = [0, spec.q % spec.n, spec.r % spec.n, (spec.p + spec.r) % spec.n];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if crate::pauli::commute_bit(&stabs[idx[i]], &stabs[idx[j]]) {
                return false;
            }
        }
    }
    true
}

/// Encoded qubits of a consistent 4-parameter code:
/// `K = gcd(p,N) gcd(q,N) / gcd(lcm(p,q), N)`, cross-checked against the
/// symplectic rank of the shift rows.
pub fn cyclic4_k(spec: &CyclicSpec) -> Result<usize> {
    let (n, p, q) = (spec.n as u64, spec.p as u64, spec.q as u64);
    let formula = gcd(p, n) * gcd(q, n) / gcd(lcm(p, q), n);
    let stabs = spec.stabilizers();
    let rows: Vec<BitVec> = stabs.iter().map(|s| s.symplectic_row()).collect();
    let rank = f2::rank(&rows, 2 * spec.n);
    let by_rank = spec.n as i64 - rank as i64;
    if formula as i64 != by_rank {
        return Err(Error::KMismatch {
            formula: formula as i64,
            rank: by_rank,
        });
    }
    Ok(formula as usize)
}

/// Membership of `Z^N` and `X^N` in the shift group: the gcd parity
/// conditions, each verified against a direct F2 solve.
pub fn membership_xz_4param(spec: &CyclicSpec) -> Result<(bool, bool)> {
    let (n, p, q) = (spec.n as u64, spec.p as u64, spec.q as u64);
    let z_formula = (gcd(p, n) / gcd(q, gcd(p, n))) % 2 == 0;
    let x_formula = (gcd(q, n) / gcd(p, gcd(q, n))) % 2 == 0;
    let stabs = spec.stabilizers();
    let rows: Vec<BitVec> = stabs.iter().map(|s| s.symplectic_row()).collect();
    let all_z = Pauli::parse(&"Z".repeat(spec.n)).unwrap().symplectic_row();
    let all_x = Pauli::parse(&"X".repeat(spec.n)).unwrap().symplectic_row();
    let z_solve = f2::solve_left(&rows, 2 * spec.n, &all_z).is_some();
    let x_solve = f2::solve_left(&rows, 2 * spec.n, &all_x).is_some();
    if z_formula != z_solve || x_formula != x_solve {
        return Err(Error::Inconsistent(format!(
            "membership parity conditions disagree with solves for {spec:?}"
        )));
    }
    Ok((z_formula, x_formula))
}

/// The 2-parameter family: shifts of `Z X I^s X Z I^t`, `N = s + t + 4`.
pub fn cyclic2_code(s: usize, t: usize) -> Result<(Vec<Pauli>, usize)> {
    let n = s + t + 4;
    let stabs = cyclic_shift_strings(n, &[(0, 'Z'), (1, 'X'), (s + 2, 'X'), (s + 3, 'Z')]);
    let k_formula = if s % 2 == 1 && t % 2 == 1 { 2 } else { 1 };
    let rows: Vec<BitVec> = stabs.iter().map(|p| p.symplectic_row()).collect();
    let k_rank = n - f2::rank(&rows, 2 * n);
    if k_formula != k_rank {
        return Err(Error::KMismatch {
            formula: k_formula as i64,
            rank: k_rank as i64,
        });
    }
    Ok((stabs, k_formula))
}

/// Order of `{k1 a + k2 b mod m}`: `m gcd(lcm(a,b), m) / (gcd(a,m) gcd(b,m))`.
pub fn subgroup_order(a: u64, b: u64, m: u64) -> u64 {
    m * gcd(lcm(a, b), m) / (gcd(a, m) * gcd(b, m))
}

/// Can `{0..m-1}` be partitioned as `M1 and M1 + a (mod m)`? Possible iff
/// `m / gcd(a, m)` is even; the constructive partition is returned.
pub fn shift_partition_exists(a: u64, m: u64) -> Option<(Vec<u64>, Vec<u64>)> {
    let orbit_len = m / gcd(a, m);
    if orbit_len % 2 != 0 {
        return None;
    }
    let mut m1 = Vec::new();
    let mut m2 = Vec::new();
    for x in 0..gcd(a, m) {
        for k in 0..orbit_len {
            let value = (x + k * a) % m;
            if k % 2 == 0 {
                m1.push(value);
            } else {
                m2.push(value);
            }
        }
    }
    m1.sort_unstable();
    m2.sort_unstable();
    // Validate M2 = M1 + a.
    let mut shifted: Vec<u64> = m1.iter().map(|&x| (x + a) % m).collect();
    shifted.sort_unstable();
    debug_assert_eq!(shifted, m2);
    Some((m1, m2))
}

struct UnionFind {
    parent: Vec<usize>,
    ids: Vec<usize>,
    classes: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            ids: Vec::new(),
            classes: 0,
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
    /// Dense ids per class, ordered by minimal member.
    fn compress(&mut self, n: usize) -> Vec<usize> {
        let mut id_of_root = std::collections::BTreeMap::new();
        let mut out = vec![0usize; n];
        for x in 0..n {
            let r = self.find(x);
            let next = id_of_root.len();
            let id = *id_of_root.entry(r).or_insert(next);
            out[x] = id;
        }
        self.classes = id_of_root.len();
        self.ids = out.clone();
        out
    }
    fn class_count(&self) -> usize {
        self.classes
    }
}
