//! HLT-style Todd-Coxeter coset enumeration over the trivial subgroup.
//!
//! The enumeration is capped at ten times the configured order bound; the
//! finished table is standardized by a breadth-first renumbering so that
//! identical presentations always produce identical permutation tables.

use super::{Presentation, Word};
use crate::{Error, Result};

const UNDEF: u32 = u32::MAX;

struct Table {
    ncols: usize,
    rows: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
}

impl Table {
    fn new(ngens: usize, cap: usize) -> Self {
        let mut t = Table {
            ncols: 2 * ngens,
            rows: Vec::new(),
            parent: Vec::new(),
            live: 0,
            cap,
        };
        t.define_root();
        t
    }

    fn define_root(&mut self) {
        self.rows.push(vec![UNDEF; self.ncols]);
        self.parent.push(0);
        self.live = 1;
    }

    fn define(&mut self) -> Result<u32> {
        if self.rows.len() >= self.cap {
            return Err(Error::CosetLimit { cap: self.cap });
        }
        let idx = self.rows.len() as u32;
        self.rows.push(vec![UNDEF; self.ncols]);
        self.parent.push(idx);
        self.live += 1;
        Ok(idx)
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let p = self.parent[c as usize];
            self.parent[c as usize] = self.parent[p as usize];
            c = self.parent[c as usize];
        }
        c
    }

    fn entry(&mut self, c: u32, col: usize) -> Option<u32> {
        let c = self.find(c);
        let e = self.rows[c as usize][col];
        if e == UNDEF {
            None
        } else {
            let r = self.find(e);
            self.rows[c as usize][col] = r;
            Some(r)
        }
    }

    /// Record c . col = d, queueing any coincidence this uncovers.
    fn deduce(&mut self, c: u32, col: usize, d: u32, pending: &mut Vec<(u32, u32)>) {
        let c = self.find(c);
        let d = self.find(d);
        match self.entry(c, col) {
            Some(x) if x == d => {}
            Some(x) => pending.push((x, d)),
            None => self.rows[c as usize][col] = d,
        }
        let icol = col ^ 1;
        match self.entry(d, icol) {
            Some(x) if x == c => {}
            Some(x) => pending.push((x, c)),
            None => self.rows[d as usize][icol] = c,
        }
    }

    fn process_coincidences(&mut self, pending: &mut Vec<(u32, u32)>) {
        while let Some((a, b)) = pending.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, drop) = if a < b { (a, b) } else { (b, a) };
            self.parent[drop as usize] = keep;
            self.live -= 1;
            for col in 0..self.ncols {
                let e = std::mem::replace(&mut self.rows[drop as usize][col], UNDEF);
                if e != UNDEF {
                    let e = self.find(e);
                    match self.entry(keep, col) {
                        Some(x) if x == e => {}
                        Some(x) => pending.push((x, e)),
                        None => {
                            // install both directions
                            let k = self.find(keep);
                            self.rows[k as usize][col] = e;
                            let icol = col ^ 1;
                            match self.entry(e, icol) {
                                Some(x) if self.find(x) == k => {}
                                Some(x) => pending.push((x, k)),
                                None => self.rows[e as usize][icol] = k,
                            }
                        }
                    }
                }
            }
        }
    }

    /// Scan the relator at coset c, defining new cosets to close gaps.
    fn scan_and_fill(&mut self, c: u32, letters: &[usize]) -> Result<()> {
        let mut pending = Vec::new();
        let mut f = self.find(c);
        let mut fi = 0usize;
        let mut b = f;
        let mut bi = letters.len();
        loop {
            while fi < bi {
                match self.entry(f, letters[fi]) {
                    Some(x) => {
                        f = x;
                        fi += 1;
                    }
                    None => break,
                }
            }
            if fi == bi {
                if f != b {
                    pending.push((f, b));
                    self.process_coincidences(&mut pending);
                }
                return Ok(());
            }
            while bi > fi {
                match self.entry(b, letters[bi - 1] ^ 1) {
                    Some(x) => {
                        b = x;
                        bi -= 1;
                    }
                    None => break,
                }
            }
            if fi == bi {
                if f != b {
                    pending.push((f, b));
                    self.process_coincidences(&mut pending);
                }
                return Ok(());
            }
            if bi == fi + 1 {
                self.deduce(f, letters[fi], b, &mut pending);
                self.process_coincidences(&mut pending);
                return Ok(());
            }
            // gap of length >= 2: define a new coset and keep scanning
            let new = self.define()?;
            self.deduce(f, letters[fi], new, &mut pending);
            self.process_coincidences(&mut pending);
            f = self.find(f);
            b = self.find(b);
        }
    }
}

/// Expand a word into a letter sequence over columns (2g = generator,
/// 2g + 1 = its inverse).
fn letters(word: &Word) -> Vec<usize> {
    let mut out = Vec::new();
    for &(g, e) in word {
        let col = if e >= 0 { 2 * g } else { 2 * g + 1 };
        for _ in 0..e.unsigned_abs() {
            out.push(col);
        }
    }
    out
}

/// Run the enumeration; returns one permutation per generator acting on the
/// standardized coset space 0..degree.
pub fn enumerate(pres: &Presentation, order_bound: usize) -> Result<Vec<Vec<u32>>> {
    let ngens = pres.gens.len();
    let cap = order_bound.saturating_mul(10).max(16);
    let mut table = Table::new(ngens, cap);
    let relator_letters: Vec<Vec<usize>> = pres.relators.iter().map(letters).collect();

    let mut scanned = 0usize;
    loop {
        // find the next live coset at or after `scanned` in definition order
        let next = (scanned..table.rows.len()).find(|&i| table.find(i as u32) == i as u32);
        let c = match next {
            Some(c) => c as u32,
            None => break,
        };
        for rel in &relator_letters {
            if table.find(c) != c {
                break; // this coset got merged away mid-scan
            }
            table.scan_and_fill(c, rel)?;
        }
        scanned = c as usize + 1;
    }

    // survivors in definition order
    let all: Vec<u32> = (0..table.rows.len() as u32)
        .filter(|&i| table.find(i) == i)
        .collect();
    if all.len() > order_bound {
        return Err(Error::CosetLimit { cap: order_bound });
    }
    for &c in &all {
        for col in 0..table.ncols {
            if table.entry(c, col).is_none() {
                return Err(Error::IncompleteEnumeration);
            }
        }
    }

    // breadth-first standardization from the subgroup coset
    let root = table.find(0);
    let mut index = vec![UNDEF; table.rows.len()];
    let mut order: Vec<u32> = Vec::with_capacity(all.len());
    index[root as usize] = 0;
    order.push(root);
    let mut head = 0usize;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for col in 0..table.ncols {
            let d = table.entry(c, col).unwrap();
            if index[d as usize] == UNDEF {
                index[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
    }
    if order.len() != all.len() {
        return Err(Error::IncompleteEnumeration);
    }

    let degree = order.len();
    let mut perms = vec![vec![0u32; degree]; ngens];
    for (new_c, &old_c) in order.iter().enumerate() {
        for (g, perm) in perms.iter_mut().enumerate() {
            let img = table.entry(old_c, 2 * g).unwrap();
            perm[new_c] = index[img as usize];
        }
    }
    // each generator must act by a permutation
    for p in &perms {
        let mut seen = vec![false; degree];
        for &v in p {
            if seen[v as usize] {
                return Err(Error::IncompleteEnumeration);
            }
            seen[v as usize] = true;
        }
    }
    Ok(perms)
}
