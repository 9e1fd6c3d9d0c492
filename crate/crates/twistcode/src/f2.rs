//! Gaussian elimination over F2, deterministic leftmost-pivot order.

use crate::bits::BitVec;

/// Incremental reduced row basis with optional combination tracking.
///
/// The stored rows are kept in reduced row echelon form (pivot columns
/// sorted ascending, each pivot the only 1 in its column among stored rows).
/// When built `with_combos`, each stored row also carries the F2 combination
/// of *inserted* rows that produced it, so targets can be expressed in terms
/// of the original inputs.
pub struct RowSpace {
    ncols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    combos: Option<Vec<BitVec>>,
    inserted: usize,
    combo_capacity: usize,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            inserted: 0,
            combo_capacity: 0,
        }
    }

    /// Track combinations for up to `capacity` inserted rows.
    pub fn with_combos(ncols: usize, capacity: usize) -> Self {
        RowSpace {
            combos: Some(Vec::new()),
            combo_capacity: capacity,
            ..Self::new(ncols)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduce `row` against the basis. Returns the residual and, when
    /// tracking, the combination of inserted rows such that
    /// `residual = row + sum(combination)`.
    pub fn reduce(&self, row: &BitVec) -> (BitVec, Option<BitVec>) {
        assert_eq!(row.len(), self.ncols);
        let mut r = row.clone();
        let mut combo = self
            .combos
            .as_ref()
            .map(|_| BitVec::zeros(self.combo_capacity));
        for (k, &p) in self.pivots.iter().enumerate() {
            if r.get(p) {
                r.xor_assign(&self.rows[k]);
                if let Some(c) = combo.as_mut() {
                    c.xor_assign(&self.combos.as_ref().unwrap()[k]);
                }
            }
        }
        (r, combo)
    }

    /// Insert a row; returns true if it enlarged the basis.
    pub fn insert(&mut self, row: &BitVec) -> bool {
        self.insert_traced(row).is_none()
    }

    /// Insert a row. On a dependent row, returns the combination of earlier
    /// inserted rows it equals (kernel witness, own index excluded).
    pub fn insert_traced(&mut self, row: &BitVec) -> Option<BitVec> {
        let (r, combo) = self.reduce(row);
        let idx = self.inserted;
        self.inserted += 1;
        if self.combos.is_some() {
            assert!(idx < self.combo_capacity, "combo capacity exceeded");
        }
        match r.first_one() {
            None => Some(combo.unwrap_or_else(|| BitVec::zeros(0))),
            Some(p) => {
                let mut c = combo.unwrap_or_else(|| BitVec::zeros(0));
                if self.combos.is_some() {
                    c.set(idx, true);
                }
                for k in 0..self.rows.len() {
                    if self.rows[k].get(p) {
                        self.rows[k].xor_assign(&r);
                        if let Some(cs) = self.combos.as_mut() {
                            cs[k].xor_assign(&c);
                        }
                    }
                }
                let pos = self.pivots.partition_point(|&q| q < p);
                self.pivots.insert(pos, p);
                self.rows.insert(pos, r);
                if let Some(cs) = self.combos.as_mut() {
                    cs.insert(pos, c);
                }
                None
            }
        }
    }

    pub fn contains(&self, row: &BitVec) -> bool {
        self.reduce(row).0.is_zero()
    }
}

/// Rank of a list of rows.
pub fn rank(rows: &[BitVec], ncols: usize) -> usize {
    let mut rs = RowSpace::new(ncols);
    for r in rows {
        rs.insert(r);
    }
    rs.rank()
}

/// Solve `x * A = target` where the rows of `A` are `rows`. Returns the
/// indicator of rows to sum, or None when the target is outside the span.
pub fn solve_left(rows: &[BitVec], ncols: usize, target: &BitVec) -> Option<BitVec> {
    let mut rs = RowSpace::with_combos(ncols, rows.len());
    for r in rows {
        rs.insert_traced(r);
    }
    let (res, combo) = rs.reduce(target);
    if res.is_zero() {
        combo
    } else {
        None
    }
}

/// Basis of `{x : x * A = 0}` (dependencies among the rows).
pub fn left_kernel(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut rs = RowSpace::with_combos(ncols, rows.len());
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if let Some(mut combo) = rs.insert_traced(r) {
            combo.set(i, true);
            kernel.push(combo);
        }
    }
    kernel
}

/// Basis of `{v : A v^T = 0}` (the classical null space).
pub fn right_kernel(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    let mut rs = RowSpace::new(ncols);
    for r in rows {
        rs.insert(r);
    }
    let pivots = rs.pivots().to_vec();
    let rref = rs.rows().to_vec();
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for j in 0..ncols {
        if is_pivot[j] {
            continue;
        }
        let mut v = BitVec::zeros(ncols);
        v.set(j, true);
        for (k, &p) in pivots.iter().enumerate() {
            if rref[k].get(j) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}
