//! Phase-free Pauli algebra over F2 symplectic vectors, the commutation
//! matrix realization (LBL decomposition), and cyclically anticommuting
//! lists (CALs).
//!
//! A Pauli on `n` qubits is a pair of bit vectors `(x|z)`; qubit `i` carries
//! I/X/Y/Z for `(x_i, z_i)` in {00, 10, 11, 01}. Phases are dropped here (the
//! group modulo `<iI>`); phase tracking lives in the Majorana module.

use crate::bits::BitVec;
use crate::f2;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pauli {
    n: usize,
    x: BitVec,
    z: BitVec,
}

impl Pauli {
    pub fn identity(n: usize) -> Self {
        Pauli {
            n,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_xz(x: BitVec, z: BitVec) -> Self {
        assert_eq!(x.len(), z.len());
        Pauli { n: x.len(), x, z }
    }

    /// Parse a string of I/X/Y/Z, leftmost character = qubit 0.
    pub fn parse(s: &str) -> Result<Self> {
        let n = s.chars().count();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for (i, c) in s.chars().enumerate() {
            match c {
                'I' => {}
                'X' => x.set(i, true),
                'Y' => {
                    x.set(i, true);
                    z.set(i, true);
                }
                'Z' => z.set(i, true),
                other => {
                    return Err(Error::Parse(format!(
                        "bad Pauli character {other:?} (want I, X, Y, Z)"
                    )))
                }
            }
        }
        Ok(Pauli { n, x, z })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &BitVec {
        &self.x
    }

    pub fn z(&self) -> &BitVec {
        &self.z
    }

    pub fn weight(&self) -> usize {
        self.x.or_weight(&self.z)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Multiply (mod phase): XOR of symplectic rows.
    pub fn mul(&self, other: &Pauli) -> Pauli {
        assert_eq!(self.n, other.n);
        let mut x = self.x.clone();
        let mut z = self.z.clone();
        x.xor_assign(&other.x);
        z.xor_assign(&other.z);
        Pauli { n: self.n, x, z }
    }

    /// The symplectic row `(x|z)` of length `2n`.
    pub fn symplectic_row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic_row(row: &BitVec) -> Pauli {
        let n = row.len() / 2;
        Pauli {
            n,
            x: row.slice(0, n),
            z: row.slice(n, n),
        }
    }

    pub fn restriction(&self, qubits: std::ops::Range<usize>) -> Pauli {
        let len = qubits.len();
        Pauli {
            n: len,
            x: self.x.slice(qubits.start, len),
            z: self.z.slice(qubits.start, len),
        }
    }

    /// Embed into `n_total` qubits starting at `offset`.
    pub fn embed(&self, n_total: usize, offset: usize) -> Pauli {
        let mut x = BitVec::zeros(n_total);
        let mut z = BitVec::zeros(n_total);
        for i in self.x.iter_ones() {
            x.set(offset + i, true);
        }
        for i in self.z.iter_ones() {
            z.set(offset + i, true);
        }
        Pauli { n: n_total, x, z }
    }

    pub fn contains_y(&self) -> bool {
        let mut both = self.x.clone();
        both.and_assign(&self.z);
        !both.is_zero()
    }
}

impl std::fmt::Display for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            let c = match (self.x.get(i), self.z.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// 1 iff the Paulis anticommute: the symplectic form `x1.z2 + z1.x2`.
pub fn commute_bit(p: &Pauli, q: &Pauli) -> bool {
    p.x.dot(&q.z) ^ p.z.dot(&q.x)
}

/// Symplectic rank of a list of Paulis.
pub fn dim(list: &[Pauli]) -> usize {
    let rows: Vec<BitVec> = list.iter().map(|p| p.symplectic_row()).collect();
    let ncols = list.first().map_or(0, |p| 2 * p.n());
    f2::rank(&rows, ncols)
}

/// Commutation matrix `C_ij = Com(p_i, p_j)`.
pub fn commutation_matrix(list: &[Pauli]) -> Vec<BitVec> {
    let l = list.len();
    let mut c = vec![BitVec::zeros(l); l];
    for i in 0..l {
        for j in (i + 1)..l {
            if commute_bit(&list[i], &list[j]) {
                c[i].set(j, true);
                c[j].set(i, true);
            }
        }
    }
    c
}

fn is_symmetric_zero_diag(c: &[BitVec]) -> bool {
    let l = c.len();
    c.iter().all(|row| row.len() == l)
        && (0..l).all(|i| !c[i].get(i))
        && (0..l).all(|i| (0..l).all(|j| c[i].get(j) == c[j].get(i)))
}

/// Symmetric rank-revealing factorization `C = L B L^T` over F2 with `L`
/// lower-triangular invertible and `B` symmetric, zero-diagonal, at most one
/// 1 per row and column (so `|B| = rank C`, an even number).
pub fn lbl_decompose(c: &[BitVec]) -> Result<(Vec<BitVec>, Vec<BitVec>)> {
    if !is_symmetric_zero_diag(c) {
        return Err(Error::Inconsistent(
            "commutation matrix must be symmetric with zero diagonal".into(),
        ));
    }
    let l = c.len();
    let mut b: Vec<BitVec> = c.to_vec();
    let mut lmat: Vec<BitVec> = (0..l).map(|i| BitVec::from_indices(l, [i])).collect();
    // Row/column i of the paper's 1-based loop is index i-1 here; the loop
    // body clears column j_i below row i by adding row/column i.
    for i in 0..l.saturating_sub(1) {
        let ji = b[i].first_one().unwrap_or(i);
        loop {
            let Some(k) = ((i + 1)..l).find(|&k| b[k].get(ji)) else {
                break;
            };
            // B <- E^(k,i) B E^(k,i)^T : add row i to row k, col i to col k.
            let row_i = b[i].clone();
            b[k].xor_assign(&row_i);
            for row in b.iter_mut() {
                if row.get(i) {
                    row.flip(k);
                }
            }
            // L <- L E^(k,i) : add column k of L to column i.
            for row in lmat.iter_mut() {
                if row.get(k) {
                    row.flip(i);
                }
            }
        }
    }
    Ok((lmat, b))
}

/// Multiply two square F2 matrices given as row lists.
pub fn mat_mul(a: &[BitVec], b: &[BitVec]) -> Vec<BitVec> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut acc = BitVec::zeros(n);
            for j in row.iter_ones() {
                acc.xor_assign(&b[j]);
            }
            acc
        })
        .collect()
}

pub fn mat_transpose(a: &[BitVec]) -> Vec<BitVec> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = vec![BitVec::zeros(rows); cols];
    for (i, row) in a.iter().enumerate() {
        for j in row.iter_ones() {
            out[j].set(i, true);
        }
    }
    out
}

/// Realize a commutation matrix: a list of Paulis on
/// `n = max(1, rank C / 2)` qubits (or `n = max(1, k - rank C / 2)` when a
/// target dimension `k` is given) whose commutation matrix is exactly `C`.
pub fn realize_commutation(c: &[BitVec], target_dim: Option<usize>) -> Result<Vec<Pauli>> {
    let l = c.len();
    let (lmat, b) = lbl_decompose(c)?;
    let rank: usize = b.iter().map(|r| r.count_ones()).sum();
    if let Some(k) = target_dim {
        if k < rank || k > l {
            return Err(Error::Inconsistent(format!(
                "target dimension {k} outside [rank C = {rank}, {l}]"
            )));
        }
    }
    let n = match target_dim {
        None => (rank / 2).max(1),
        Some(k) => (k - rank / 2).max(1),
    };
    // Paulis q_i with commutation matrix B: X/Z pairs, one fresh qubit per 1
    // in the upper triangle; with a target dimension, lone Z's on fresh
    // qubits for enough of the zero rows.
    let mut q: Vec<Pauli> = vec![Pauli::identity(n); l];
    let mut qubit = 0usize;
    for i in 0..l {
        if let Some(j) = b[i].first_one() {
            if j > i {
                let mut xi = BitVec::zeros(n);
                xi.set(qubit, true);
                q[i] = Pauli::from_xz(xi, BitVec::zeros(n));
                let mut zj = BitVec::zeros(n);
                zj.set(qubit, true);
                q[j] = Pauli::from_xz(BitVec::zeros(n), zj);
                qubit += 1;
            }
        }
    }
    if let Some(k) = target_dim {
        let mut extra = k - rank;
        for i in 0..l {
            if extra == 0 {
                break;
            }
            if b[i].is_zero() {
                let mut z = BitVec::zeros(n);
                z.set(qubit, true);
                q[i] = Pauli::from_xz(BitVec::zeros(n), z);
                qubit += 1;
                extra -= 1;
            }
        }
        if extra > 0 {
            return Err(Error::Inconsistent(
                "not enough independent rows to reach the target dimension".into(),
            ));
        }
    }
    // P = L Q.
    let out: Vec<Pauli> = lmat
        .iter()
        .map(|row| {
            let mut p = Pauli::identity(n);
            for j in row.iter_ones() {
                p = p.mul(&q[j]);
            }
            p
        })
        .collect();
    debug_assert_eq!(commutation_matrix(&out), c.to_vec());
    Ok(out)
}

/// The cyclic anticommutation pattern of length `l`.
pub fn cyclic_commutation_matrix(l: usize) -> Vec<BitVec> {
    let mut c = vec![BitVec::zeros(l); l];
    if l == 1 {
        return c;
    }
    if l == 2 {
        c[0].set(1, true);
        c[1].set(0, true);
        return c;
    }
    for i in 0..l {
        c[i].set((i + 1) % l, true);
        c[i].set((i + l - 1) % l, true);
    }
    c
}

/// Minimum qubit count for a CAL of length `l`.
pub fn cal_min_qubits(l: usize) -> usize {
    match l {
        0..=2 => 1,
        _ if l % 2 == 1 => (l - 1) / 2,
        _ => (l - 2) / 2,
    }
}

/// Compose an even-length CAL with another CAL on disjoint qubits:
/// `{p} o {p'}` has length `len(p) + len(p') - 2`.
fn cal_compose(a: &[Pauli], b: &[Pauli]) -> Vec<Pauli> {
    let la = a.len();
    assert!(la >= 4 && la % 2 == 0);
    let na = a[0].n();
    let nb = b[0].n();
    let n = na + nb;
    let lift_a = |p: &Pauli| p.embed(n, 0);
    let lift_b = |p: &Pauli| p.embed(n, na);
    let mut out = Vec::with_capacity(la + b.len() - 2);
    for p in &a[..la / 2 - 1] {
        out.push(lift_a(p));
    }
    out.push(lift_a(&a[la / 2 - 1]).mul(&lift_b(&b[0])));
    for p in &b[1..b.len() - 1] {
        out.push(lift_b(p));
    }
    out.push(lift_b(&b[b.len() - 1]).mul(&lift_a(&a[la / 2])));
    for p in &a[la / 2 + 1..] {
        out.push(lift_a(p));
    }
    out
}

/// The canonical extremal CAL of length `l >= 3`: length-4 seeds composed
/// left-to-right, finishing with one length-3 seed when `l` is odd. Every
/// element has weight at most two.
pub fn cal_construct(l: usize) -> Result<Vec<Pauli>> {
    if l < 3 {
        return Err(Error::Inconsistent(format!(
            "CAL construction needs length >= 3, got {l}"
        )));
    }
    let seed3 = vec![
        Pauli::parse("X").unwrap(),
        Pauli::parse("Y").unwrap(),
        Pauli::parse("Z").unwrap(),
    ];
    let seed4 = vec![
        Pauli::parse("X").unwrap(),
        Pauli::parse("Z").unwrap(),
        Pauli::parse("X").unwrap(),
        Pauli::parse("Z").unwrap(),
    ];
    if l == 3 {
        return Ok(seed3);
    }
    if l == 4 {
        return Ok(seed4);
    }
    let inner = cal_construct(l - 2)?;
    Ok(cal_compose(&seed4, &inner))
}

/// Does the list's commutation matrix equal the cyclic pattern?
pub fn is_cal(list: &[Pauli]) -> bool {
    if list.is_empty() {
        return true;
    }
    commutation_matrix(list) == cyclic_commutation_matrix(list.len())
}

/// A CAL on the minimum possible qubit count for its length.
pub fn is_extremal_cal(list: &[Pauli]) -> bool {
    is_cal(list) && !list.is_empty() && list[0].n() == cal_min_qubits(list.len())
}

/// Symplectic rank of a CAL.
pub fn cal_dim(list: &[Pauli]) -> usize {
    dim(list)
}

/// For an extremal CAL of length `l >= 3`, the unique (mod phase) Pauli whose
/// commutation vector against the CAL is `x`; errors when `x M != 0`.
pub fn solve_pattern(cal: &[Pauli], x: &BitVec) -> Result<Pauli> {
    let l = cal.len();
    if !is_extremal_cal(cal) || l < 3 {
        return Err(Error::Inconsistent(
            "solve_pattern requires an extremal CAL of length >= 3".into(),
        ));
    }
    assert_eq!(x.len(), l);
    // Consistency x M = 0: total parity always, even-index parity for even l.
    let total: usize = x.count_ones();
    if total % 2 != 0 {
        return Err(Error::InconsistentPattern);
    }
    if l % 2 == 0 {
        let evens = x.iter_ones().filter(|i| i % 2 == 0).count();
        if evens % 2 != 0 {
            return Err(Error::InconsistentPattern);
        }
    }
    let n = cal[0].n();
    if x.is_zero() {
        return Ok(Pauli::identity(n));
    }
    // Find v in F2^{2n} with Com(p_i, v) = x_i; row i of the system is
    // (p_z | p_x) so the condition reads row_i . (v_x | v_z) = x_i. Solving
    // over the transpose expresses x as a combination of coordinate columns,
    // i.e. the support of v.
    let rows: Vec<BitVec> = cal.iter().map(|p| p.z().concat(p.x())).collect();
    let cols = mat_transpose(&rows);
    let v = f2::solve_left(&cols, l, x).ok_or(Error::InconsistentPattern)?;
    let q = Pauli::from_symplectic_row(&v);
    debug_assert!((0..l).all(|i| commute_bit(&cal[i], &q) == x.get(i)));
    Ok(q)
}

/// True iff some element has both x and z set on some qubit.
pub fn contains_y(list: &[Pauli]) -> bool {
    list.iter().any(|p| p.contains_y())
}

/// Product of all elements, mod phase.
pub fn product(list: &[Pauli]) -> Pauli {
    let n = list.first().map_or(0, |p| p.n());
    list.iter().fold(Pauli::identity(n), |acc, p| acc.mul(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pauli {
        Pauli::parse(s).unwrap()
    }

    #[test]
    fn commute_basics() {
        assert!(commute_bit(&p("X"), &p("Z")));
        assert!(!commute_bit(&p("X"), &p("X")));
        assert!(!commute_bit(&p("XX"), &p("ZZ")));
        // Shifts of ZXIXZ commute.
        assert!(!commute_bit(&p("ZXIXZ"), &p("ZZXIX")));
    }

    #[test]
    fn rank_of_zxixz_shifts_is_four() {
        let base = "ZXIXZ";
        let shifts: Vec<Pauli> = (0..5)
            .map(|s| {
                let rotated: String = (0..5)
                    .map(|i| base.as_bytes()[(i + 5 - s) % 5] as char)
                    .collect();
                p(&rotated)
            })
            .collect();
        assert_eq!(dim(&shifts), 4);
    }

    #[test]
    fn lbl_trivial_cases() {
        let zero = vec![BitVec::zeros(3); 3];
        let (l, b) = lbl_decompose(&zero).unwrap();
        assert!(b.iter().all(|r| r.is_zero()));
        for (i, row) in l.iter().enumerate() {
            assert_eq!(row.iter_ones().collect::<Vec<_>>(), vec![i]);
        }
        let mut anti = vec![BitVec::zeros(2); 2];
        anti[0].set(1, true);
        anti[1].set(0, true);
        let (l2, b2) = lbl_decompose(&anti).unwrap();
        assert_eq!(b2, anti);
        assert_eq!(mat_mul(&mat_mul(&l2, &b2), &mat_transpose(&l2)), anti);
    }

    #[test]
    fn realize_all_anticommuting_is_jordan_wigner_triple() {
        let mut c = vec![BitVec::zeros(3); 3];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    c[i].set(j, true);
                }
            }
        }
        let list = realize_commutation(&c, None).unwrap();
        assert_eq!(list[0].n(), 1);
        let set: Vec<String> = list.iter().map(|q| q.to_string()).collect();
        assert_eq!(set, vec!["X", "Z", "Y"]);
    }

    #[test]
    fn realize_cyclic_five_on_two_qubits() {
        let c = cyclic_commutation_matrix(5);
        let list = realize_commutation(&c, None).unwrap();
        assert_eq!(list[0].n(), 2);
        assert_eq!(commutation_matrix(&list), c);
    }

    #[test]
    fn realize_with_target_dim() {
        let c = vec![BitVec::zeros(3); 3];
        let list = realize_commutation(&c, Some(2)).unwrap();
        assert_eq!(list[0].n(), 2);
        assert_eq!(dim(&list), 2);
        assert_eq!(commutation_matrix(&list), c);
    }

    #[test]
    fn cal_construct_small() {
        assert_eq!(
            cal_construct(3)
                .unwrap()
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>(),
            vec!["X", "Y", "Z"]
        );
        assert_eq!(
            cal_construct(4)
                .unwrap()
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>(),
            vec!["X", "Z", "X", "Z"]
        );
        let c7 = cal_construct(7).unwrap();
        assert_eq!(c7[0].n(), 3);
        assert!(is_extremal_cal(&c7));
        assert!(c7.iter().all(|q| q.weight() <= 2));
    }

    #[test]
    fn cal_checks() {
        let c5 = cal_construct(5).unwrap();
        assert!(is_cal(&c5) && is_extremal_cal(&c5));
        assert_eq!(cal_dim(&c5), 4);
        let c6 = cal_construct(6).unwrap();
        assert_eq!(cal_dim(&c6), 4);
        // {X, Z} on 2 qubits: a CAL but not extremal.
        let fat = vec![p("XI"), p("ZI")];
        assert!(is_cal(&fat));
        assert!(!is_extremal_cal(&fat));
        assert_eq!(dim(&fat), 2);
        // {X, Z, Y, Z} is not a CAL (X and Y anticommute).
        let not = vec![p("X"), p("Z"), p("Y"), p("Z")];
        assert!(!is_cal(&not));
    }

    #[test]
    fn solve_pattern_examples() {
        let cal = cal_construct(3).unwrap(); // {X, Y, Z}
        let x0 = BitVec::zeros(3);
        assert!(solve_pattern(&cal, &x0).unwrap().is_identity());
        // Y anticommutes with X and Z but commutes with itself.
        let want = BitVec::from_bools(&[true, false, true]);
        assert_eq!(solve_pattern(&cal, &want).unwrap().to_string(), "Y");
        // Odd-weight pattern is inconsistent for odd length.
        let odd = BitVec::from_bools(&[true, false, false]);
        assert!(matches!(
            solve_pattern(&cal, &odd),
            Err(Error::InconsistentPattern)
        ));
    }

    #[test]
    fn contains_y_cases() {
        assert!(!contains_y(&cal_construct(4).unwrap()));
        assert!(contains_y(&cal_construct(3).unwrap()));
        // Even-length X/Z-only CAL on one qubit.
        let c41 = vec![p("X"), p("Z"), p("X"), p("Z")];
        assert!(!contains_y(&c41));
    }
}
