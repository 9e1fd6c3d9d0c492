//! Regular tilings as rotation systems via coset enumeration.
//!
//! A regular `(m, n)` tiling compactified by extra relators is presented as
//! `< l, r, t | l^2, r^2, t^2, (lt)^2, (lr)^m, (rt)^n, extra >`; the flags of
//! the rotation system are the group elements and the involutions act by
//! right multiplication. Enumeration is HLT-style Todd-Coxeter over the
//! trivial subgroup; all generators are involutions here, so the coset table
//! stays symmetric.

use std::collections::VecDeque;

use crate::rotation::RotationSystem;
use crate::{Error, Result};

const NGENS: usize = 3; // l = 0, r = 1, t = 2

struct Enumerator {
    table: Vec<[Option<usize>; NGENS]>,
    parent: Vec<usize>,
    queue: VecDeque<(usize, usize)>,
    max_cosets: usize,
}

impl Enumerator {
    fn new(max_cosets: usize) -> Self {
        Enumerator {
            table: vec![[None; NGENS]],
            parent: vec![0],
            queue: VecDeque::new(),
            max_cosets,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn new_coset(&mut self) -> Result<usize> {
        if self.table.len() >= self.max_cosets {
            return Err(Error::Inconsistent(
                "coset enumeration exceeded its limit".into(),
            ));
        }
        self.table.push([None; NGENS]);
        self.parent.push(self.table.len() - 1);
        Ok(self.table.len() - 1)
    }

    /// Record `a . g = b` (and by involution symmetry `b . g = a`),
    /// queueing coincidences on conflicts.
    fn set(&mut self, a: usize, g: usize, b: usize) {
        let a = self.find(a);
        let b = self.find(b);
        match self.table[a][g] {
            None => self.table[a][g] = Some(b),
            Some(c) => {
                let c = self.find(c);
                if c != b {
                    self.queue.push_back((c, b));
                }
            }
        }
        match self.table[b][g] {
            None => self.table[b][g] = Some(a),
            Some(c) => {
                let c = self.find(c);
                if c != a {
                    self.queue.push_back((c, a));
                }
            }
        }
    }

    fn process_coincidences(&mut self) {
        while let Some((x, y)) = self.queue.pop_front() {
            let x = self.find(x);
            let y = self.find(y);
            if x == y {
                continue;
            }
            let (keep, kill) = (x.min(y), x.max(y));
            self.parent[kill] = keep;
            for g in 0..NGENS {
                if let Some(d) = self.table[kill][g] {
                    let d = self.find(d);
                    self.set(keep, g, d);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: usize, word: &[usize]) -> Result<()> {
        let mut f = self.find(start);
        let mut i = 0usize;
        loop {
            while i < word.len() {
                match self.table[f][word[i]] {
                    Some(d) => {
                        f = self.find(d);
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == word.len() {
                let s = self.find(start);
                if f != s {
                    self.queue.push_back((f, s));
                }
                return Ok(());
            }
            let mut b = self.find(start);
            let mut j = word.len();
            while j > i + 1 {
                match self.table[b][word[j - 1]] {
                    Some(d) => {
                        b = self.find(d);
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i + 1 {
                self.set(f, word[i], b);
                return Ok(());
            }
            let d = self.new_coset()?;
            self.set(f, word[i], d);
            f = self.find(d);
            i += 1;
        }
    }
}

/// Enumerate the group presented by the relators (all three generators are
/// involutions; include their squares among the relators) and return the
/// right-multiplication action of `l, r, t` on its elements.
pub fn coset_enumeration(
    relators: &[Vec<usize>],
    max_cosets: usize,
) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut en = Enumerator::new(max_cosets);
    let mut c = 0usize;
    while c < en.table.len() {
        if en.find(c) != c {
            c += 1;
            continue;
        }
        for rel in relators {
            en.scan_and_fill(c, rel)?;
            en.process_coincidences();
            if en.find(c) != c {
                break;
            }
        }
        c += 1;
    }
    // Compress to dense live ids.
    let total = en.table.len();
    let mut id = vec![usize::MAX; total];
    let mut live = Vec::new();
    for x in 0..total {
        if en.find(x) == x {
            id[x] = live.len();
            live.push(x);
        }
    }
    let mut perms = [Vec::new(), Vec::new(), Vec::new()];
    for (g, perm) in perms.iter_mut().enumerate() {
        for &x in &live {
            let img = en.table[x][g].ok_or_else(|| {
                Error::Inconsistent("coset table incomplete after enumeration".into())
            })?;
            let img = en.find(img);
            perm.push(id[img]);
        }
    }
    let [l, r, t] = perms;
    Ok((l, r, t))
}

fn power(word: &[usize], k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() * k);
    for _ in 0..k {
        out.extend_from_slice(word);
    }
    out
}

/// The rotation system of a compactified regular `(m, n)` tiling. `extra`
/// holds additional relators as strings over `l`, `r`, `t` with a trailing
/// `^k` power, e.g. `"(rtrl)^4"`.
pub fn regular_tiling(m: usize, n: usize, extra: &[&str], max_cosets: usize) -> Result<RotationSystem> {
    const L: usize = 0;
    const R: usize = 1;
    const T: usize = 2;
    let mut relators = vec![
        vec![L, L],
        vec![R, R],
        vec![T, T],
        power(&[L, T], 2),
        power(&[L, R], m),
        power(&[R, T], n),
    ];
    for spec in extra {
        relators.push(parse_relator(spec)?);
    }
    let (l, r, t) = coset_enumeration(&relators, max_cosets)?;
    RotationSystem::new(l, r, t)
}

fn parse_relator(spec: &str) -> Result<Vec<usize>> {
    let (base, pow) = match spec.split_once("^") {
        Some((b, p)) => (
            b.trim_matches(|c| c == '(' || c == ')'),
            p.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad relator power in {spec:?}")))?,
        ),
        None => (spec, 1),
    };
    let mut word = Vec::new();
    for ch in base.chars() {
        match ch {
            'l' => word.push(0),
            'r' => word.push(1),
            't' => word.push(2),
            '(' | ')' | ' ' => {}
            other => return Err(Error::Parse(format!("bad relator letter {other:?}"))),
        }
    }
    Ok(power(&word, pow))
}

/// The `(5,4)` tiling quotient with 160 flags: a non-orientable genus-6
/// surface whose surface code is `[[20, 5, 4]]`.
pub fn hyperbolic_5_4() -> Result<RotationSystem> {
    regular_tiling(5, 4, &["(rtrl)^4", "(rlt)^5"], 200_000)
}
