//! General and oriented rotation systems: validation, orbits, Euler
//! characteristic, orientability, duality, and the JSON file format.
//!
//! A general rotation system is a flag set `{0..flag_count-1}` together with
//! three fixed-point-free involutions `lambda`, `rho`, `tau` where
//! `lambda tau = tau lambda` and the generated group acts transitively.
//! Vertices are orbits of `<rho,tau>`, edges of `<lambda,tau>`, faces of
//! `<rho,lambda>`. Every orbit is canonically identified by its minimal flag.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RotationSystem {
    lambda: Vec<usize>,
    rho: Vec<usize>,
    tau: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The named array is not a permutation of `0..flag_count`.
    NotPermutation { perm: &'static str },
    /// `perm(flag) == flag`.
    FixedPoint { perm: &'static str, flag: usize },
    /// `perm(perm(flag)) != flag`.
    NotInvolution { perm: &'static str, flag: usize },
    /// `lambda(tau(flag)) != tau(lambda(flag))`.
    LambdaTauDoNotCommute { flag: usize },
    /// The monodromy group does not act transitively.
    NotTransitive { orbit_count: usize },
    /// `flag_count % 4 != 0`.
    FlagCountNotMultipleOfFour { flag_count: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotPermutation { perm } => write!(f, "{perm} is not a permutation"),
            Violation::FixedPoint { perm, flag } => write!(f, "{perm} has fixed point at flag {flag}"),
            Violation::NotInvolution { perm, flag } => {
                write!(f, "{perm} is not an involution at flag {flag}")
            }
            Violation::LambdaTauDoNotCommute { flag } => {
                write!(f, "lambda and tau do not commute at flag {flag}")
            }
            Violation::NotTransitive { orbit_count } => {
                write!(f, "monodromy group is not transitive ({orbit_count} orbits)")
            }
            Violation::FlagCountNotMultipleOfFour { flag_count } => {
                write!(f, "flag count {flag_count} is not a multiple of 4")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", msgs.join("; "))
        }
    }
}

/// Orbit and invariant data of a valid rotation system.
#[derive(Debug, Clone)]
pub struct GraphSummary {
    /// Vertex orbits (flags sorted; orbits ordered by minimal flag).
    pub vertices: Vec<Vec<usize>>,
    /// Edge orbits, each of size 4.
    pub edges: Vec<Vec<usize>>,
    /// Face orbits.
    pub faces: Vec<Vec<usize>>,
    /// `deg(v) = |v| / 2` per vertex, in vertex order.
    pub degrees: Vec<usize>,
    /// Number of odd-degree vertices (twists), always even.
    pub odd_vertex_count: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    /// Orientable genus `(2 - chi) / 2`, or non-orientable genus `2 - chi`.
    pub genus: usize,
    pub vertex_of_flag: Vec<usize>,
    pub edge_of_flag: Vec<usize>,
    pub face_of_flag: Vec<usize>,
}

impl GraphSummary {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
    /// Minimal flag of vertex `v` (its canonical id).
    pub fn vertex_min_flag(&self, v: usize) -> usize {
        self.vertices[v][0]
    }
    /// The two vertices adjacent to edge `e` (equal for a loop).
    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let h = self.edges[e][0];
        let mut vs: Vec<usize> = self.edges[e].iter().map(|&g| self.vertex_of_flag[g]).collect();
        vs.sort_unstable();
        vs.dedup();
        match vs.len() {
            1 => (vs[0], vs[0]),
            _ => {
                let a = self.vertex_of_flag[h];
                let b = *vs.iter().find(|&&v| v != a).unwrap();
                (a.min(b), a.max(b))
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
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
            // Smaller root wins so orbit reps are minimal flags.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Orbits of the group generated by the given permutations, ordered by
/// minimal element, flags sorted within each orbit.
pub fn orbits(perms: &[&[usize]], n: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for p in perms {
        for i in 0..n {
            uf.union(i, p[i]);
        }
    }
    let mut map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = uf.find(i);
        map.entry(r).or_default().push(i);
    }
    map.into_values().collect()
}

fn check_involution(perm: &[usize], name: &'static str, out: &mut Vec<Violation>) {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut ok = true;
    for &img in perm {
        if img >= n || seen[img] {
            ok = false;
            break;
        }
        seen[img] = true;
    }
    if !ok {
        out.push(Violation::NotPermutation { perm: name });
        return;
    }
    for i in 0..n {
        if perm[i] == i {
            out.push(Violation::FixedPoint { perm: name, flag: i });
            return;
        }
    }
    for i in 0..n {
        if perm[perm[i]] != i {
            out.push(Violation::NotInvolution { perm: name, flag: i });
            return;
        }
    }
}

impl RotationSystem {
    /// Build without validation; `validate` reports axiom violations.
    pub fn new_unchecked(lambda: Vec<usize>, rho: Vec<usize>, tau: Vec<usize>) -> Self {
        RotationSystem { lambda, rho, tau }
    }

    /// Build and require validity.
    pub fn new(lambda: Vec<usize>, rho: Vec<usize>, tau: Vec<usize>) -> Result<Self> {
        let r = Self::new_unchecked(lambda, rho, tau);
        let report = r.validate();
        if report.is_valid() {
            Ok(r)
        } else {
            Err(Error::Validation(report))
        }
    }

    pub fn flag_count(&self) -> usize {
        self.lambda.len()
    }

    #[inline]
    pub fn lambda(&self, h: usize) -> usize {
        self.lambda[h]
    }
    #[inline]
    pub fn rho(&self, h: usize) -> usize {
        self.rho[h]
    }
    #[inline]
    pub fn tau(&self, h: usize) -> usize {
        self.tau[h]
    }

    pub fn lambda_slice(&self) -> &[usize] {
        &self.lambda
    }
    pub fn rho_slice(&self) -> &[usize] {
        &self.rho
    }
    pub fn tau_slice(&self) -> &[usize] {
        &self.tau
    }

    /// Report every violated axiom; an empty report means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.lambda.len();
        if self.rho.len() != n || self.tau.len() != n {
            violations.push(Violation::NotPermutation { perm: "rho/tau length" });
            return ValidationReport { violations };
        }
        if n == 0 || n % 4 != 0 {
            violations.push(Violation::FlagCountNotMultipleOfFour { flag_count: n });
        }
        check_involution(&self.lambda, "lambda", &mut violations);
        check_involution(&self.rho, "rho", &mut violations);
        check_involution(&self.tau, "tau", &mut violations);
        let perms_ok = violations
            .iter()
            .all(|v| !matches!(v, Violation::NotPermutation { .. }));
        if perms_ok && n > 0 {
            for h in 0..n {
                if self.lambda[self.tau[h]] != self.tau[self.lambda[h]] {
                    violations.push(Violation::LambdaTauDoNotCommute { flag: h });
                    break;
                }
            }
            let orbs = orbits(&[&self.lambda, &self.rho, &self.tau], n);
            if orbs.len() != 1 {
                violations.push(Violation::NotTransitive {
                    orbit_count: orbs.len(),
                });
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Orbits, Euler characteristic, orientability, genus.
    pub fn summary(&self) -> Result<GraphSummary> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::Validation(report));
        }
        let n = self.flag_count();
        let vertices = orbits(&[&self.rho, &self.tau], n);
        let edges = orbits(&[&self.lambda, &self.tau], n);
        let faces = orbits(&[&self.rho, &self.lambda], n);
        let mut vertex_of_flag = vec![0; n];
        let mut edge_of_flag = vec![0; n];
        let mut face_of_flag = vec![0; n];
        for (i, orb) in vertices.iter().enumerate() {
            for &h in orb {
                vertex_of_flag[h] = i;
            }
        }
        for (i, orb) in edges.iter().enumerate() {
            for &h in orb {
                edge_of_flag[h] = i;
            }
        }
        for (i, orb) in faces.iter().enumerate() {
            for &h in orb {
                face_of_flag[h] = i;
            }
        }
        let degrees: Vec<usize> = vertices.iter().map(|orb| orb.len() / 2).collect();
        let odd_vertex_count = degrees.iter().filter(|&&d| d % 2 == 1).count();
        let euler_characteristic =
            vertices.len() as i64 - edges.len() as i64 + faces.len() as i64;
        let orientable = self.is_orientable();
        let genus = if orientable {
            ((2 - euler_characteristic) / 2) as usize
        } else {
            (2 - euler_characteristic) as usize
        };
        Ok(GraphSummary {
            vertices,
            edges,
            faces,
            degrees,
            odd_vertex_count,
            euler_characteristic,
            orientable,
            genus,
            vertex_of_flag,
            edge_of_flag,
            face_of_flag,
        })
    }

    /// Two-colorability of flags with lambda, rho, tau all color-flipping.
    fn is_orientable(&self) -> bool {
        let n = self.flag_count();
        let mut color = vec![0i8; n];
        let mut stack = vec![0usize];
        color[0] = 1;
        while let Some(h) = stack.pop() {
            for img in [self.lambda[h], self.rho[h], self.tau[h]] {
                if color[img] == 0 {
                    color[img] = -color[h];
                    stack.push(img);
                } else if color[img] == color[h] {
                    return false;
                }
            }
        }
        true
    }

    /// The flag partition witnessing orientability (colors +1/-1, flag 0
    /// colored +1), or None when non-orientable.
    pub fn orientation_classes(&self) -> Option<Vec<i8>> {
        let n = self.flag_count();
        let mut color = vec![0i8; n];
        let mut stack = vec![0usize];
        color[0] = 1;
        while let Some(h) = stack.pop() {
            for img in [self.lambda[h], self.rho[h], self.tau[h]] {
                if color[img] == 0 {
                    color[img] = -color[h];
                    stack.push(img);
                } else if color[img] == color[h] {
                    return None;
                }
            }
        }
        Some(color)
    }

    /// The embedded dual: exchange lambda and tau.
    pub fn dual(&self) -> RotationSystem {
        RotationSystem {
            lambda: self.tau.clone(),
            rho: self.rho.clone(),
            tau: self.lambda.clone(),
        }
    }

    /// Sectors of vertex `v` in `(tau rho)`-order starting from the vertex's
    /// minimal flag. Entry `k` is the flag `(tau rho)^k h0`, which together
    /// with its rho-image spans sector `k`.
    pub fn sector_walk(&self, summary: &GraphSummary, v: usize) -> Vec<usize> {
        let h0 = summary.vertex_min_flag(v);
        let deg = summary.degrees[v];
        let mut walk = Vec::with_capacity(deg);
        let mut h = h0;
        for _ in 0..deg {
            walk.push(h);
            h = self.tau[self.rho[h]];
        }
        debug_assert_eq!(h, h0);
        walk
    }
}

impl std::fmt::Debug for RotationSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RotationSystem {{ flags: {}, lambda: {:?}, rho: {:?}, tau: {:?} }}",
            self.flag_count(),
            self.lambda,
            self.rho,
            self.tau
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedRotationSystem {
    nu: Vec<usize>,
    epsilon: Vec<usize>,
}

impl OrientedRotationSystem {
    pub fn new(nu: Vec<usize>, epsilon: Vec<usize>) -> Result<Self> {
        let r = OrientedRotationSystem { nu, epsilon };
        r.validate()?;
        Ok(r)
    }

    pub fn half_edge_count(&self) -> usize {
        self.nu.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.nu.len();
        if self.epsilon.len() != n || n == 0 || n % 2 != 0 {
            return Err(Error::Parse(
                "oriented rotation system: bad permutation lengths".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &img in &self.nu {
            if img >= n || std::mem::replace(&mut seen[img], true) {
                return Err(Error::Parse("nu is not a permutation".into()));
            }
        }
        for h in 0..n {
            if self.epsilon[h] == h || self.epsilon[self.epsilon[h]] != h {
                return Err(Error::Parse(
                    "epsilon is not a fixed-point-free involution".into(),
                ));
            }
        }
        let mut nu_inv = vec![0; n];
        for h in 0..n {
            nu_inv[self.nu[h]] = h;
        }
        let orbs = orbits(&[&self.nu, &nu_inv, &self.epsilon], n);
        if orbs.len() != 1 {
            return Err(Error::Parse(
                "<nu, epsilon> does not act transitively".into(),
            ));
        }
        Ok(())
    }

    /// The corresponding general rotation system on flags `H_O x {+1,-1}`,
    /// flag `(h, +1) -> 2h`, `(h, -1) -> 2h+1`.
    pub fn to_general(&self) -> RotationSystem {
        let n = self.nu.len();
        let mut nu_inv = vec![0; n];
        for h in 0..n {
            nu_inv[self.nu[h]] = h;
        }
        let mut lambda = vec![0; 2 * n];
        let mut rho = vec![0; 2 * n];
        let mut tau = vec![0; 2 * n];
        for h in 0..n {
            // lambda(h, i) = (epsilon h, -i)
            lambda[2 * h] = 2 * self.epsilon[h] + 1;
            lambda[2 * h + 1] = 2 * self.epsilon[h];
            // rho(h, i) = (nu^i h, -i)
            rho[2 * h] = 2 * self.nu[h] + 1;
            rho[2 * h + 1] = 2 * nu_inv[h];
            // tau(h, i) = (h, -i)
            tau[2 * h] = 2 * h + 1;
            tau[2 * h + 1] = 2 * h;
        }
        RotationSystem { lambda, rho, tau }
    }
}

/// Recover an oriented rotation system from an orientable general one, using
/// half-edges `[h]_tau` with representatives in the orientation class of
/// flag 0: `nu [h] = [rho tau h]`, `epsilon [h] = [lambda tau h]`.
pub fn to_oriented(r: &RotationSystem) -> Result<OrientedRotationSystem> {
    let colors = r
        .orientation_classes()
        .ok_or_else(|| Error::Inconsistent("rotation system is not orientable".into()))?;
    let n = r.flag_count();
    // Half-edges sorted by their minimal flag; the representative is the
    // flag of the orbit coloured like flag 0.
    let mut he_of_flag = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for h in 0..n {
        if he_of_flag[h] == usize::MAX {
            let mate = r.tau(h);
            let id = reps.len();
            he_of_flag[h] = id;
            he_of_flag[mate] = id;
            reps.push(if colors[h] == 1 { h } else { mate });
        }
    }
    let mut nu = vec![0; reps.len()];
    let mut epsilon = vec![0; reps.len()];
    for (id, &h) in reps.iter().enumerate() {
        nu[id] = he_of_flag[r.rho(r.tau(h))];
        epsilon[id] = he_of_flag[r.lambda(r.tau(h))];
    }
    OrientedRotationSystem::new(nu, epsilon)
}

#[derive(Serialize, Deserialize)]
struct RotationSystemFile {
    flag_count: usize,
    lambda: Vec<usize>,
    rho: Vec<usize>,
    tau: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cals: Option<BTreeMap<String, Vec<String>>>,
}

/// A rotation system plus the optional per-vertex CAL block from its file.
#[derive(Clone, Debug)]
pub struct RotationSystemDoc {
    pub system: RotationSystem,
    /// Keyed by the vertex's minimal flag; one Pauli string per sector in
    /// `(tau rho)`-order from that flag.
    pub cals: Option<BTreeMap<usize, Vec<String>>>,
}

/// Parse the rotation-system JSON format.
pub fn parse_rotation_system(text: &str) -> Result<RotationSystemDoc> {
    let file: RotationSystemFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad JSON: {e}")))?;
    if file.lambda.len() != file.flag_count
        || file.rho.len() != file.flag_count
        || file.tau.len() != file.flag_count
    {
        return Err(Error::Parse(format!(
            "permutation arrays must have length flag_count = {}",
            file.flag_count
        )));
    }
    for (name, perm) in [("lambda", &file.lambda), ("rho", &file.rho), ("tau", &file.tau)] {
        if let Some(&bad) = perm.iter().find(|&&x| x >= file.flag_count) {
            return Err(Error::Parse(format!(
                "{name} contains out-of-range flag index {bad}"
            )));
        }
    }
    let system = RotationSystem::new(file.lambda, file.rho, file.tau)?;
    let cals = match file.cals {
        None => None,
        Some(map) => {
            let mut parsed = BTreeMap::new();
            for (key, strings) in map {
                let flag: usize = key
                    .parse()
                    .map_err(|_| Error::Parse(format!("cals key {key:?} is not a flag index")))?;
                parsed.insert(flag, strings);
            }
            Some(parsed)
        }
    };
    Ok(RotationSystemDoc { system, cals })
}

/// Serialize a rotation system (and optional CAL block) to the JSON format.
pub fn serialize_rotation_system(doc: &RotationSystemDoc) -> String {
    let file = RotationSystemFile {
        flag_count: doc.system.flag_count(),
        lambda: doc.system.lambda.clone(),
        rho: doc.system.rho.clone(),
        tau: doc.system.tau.clone(),
        cals: doc
            .cals
            .as_ref()
            .map(|m| m.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}

/// The 4-flag system of a single loop on the sphere.
pub fn loop_on_sphere() -> RotationSystem {
    RotationSystem::new_unchecked(vec![1, 0, 3, 2], vec![1, 0, 3, 2], vec![2, 3, 0, 1])
}
