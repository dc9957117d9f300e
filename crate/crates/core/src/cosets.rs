//! Enumeration of transitive permutation actions of a finitely presented
//! group, i.e. coset tables of its finite-index subgroups.
//!
//! The search fills a coset table column by column in scan order, only ever
//! introducing the next unused coset number, so every complete table is
//! standardized and each subgroup is produced exactly once. Conjugacy
//! classes of subgroups (= covering spaces up to equivalence) are then
//! obtained by restandardizing each table from every base point and keeping
//! one representative per orbit.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::fundamental::{Presentation, Word};
use crate::homology::smith_normal_form;

/// A transitive action of the group on `n` points: one permutation per
/// generator (images of each point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetAction {
    pub degree: usize,
    pub perms: Vec<Vec<u32>>,
}

impl CosetAction {
    pub fn trace(&self, start: usize, word: &Word) -> usize {
        let mut x = start;
        for &l in word {
            let g = l.unsigned_abs() as usize - 1;
            x = if l > 0 {
                self.perms[g][x] as usize
            } else {
                self.perms[g].iter().position(|&y| y as usize == x).unwrap()
            };
        }
        x
    }

    /// The permutation induced by a word over this action's generators.
    pub fn word_permutation(&self, word: &Word) -> Vec<u32> {
        let mut inv: Vec<Vec<u32>> = Vec::new();
        for p in &self.perms {
            let mut q = vec![0u32; self.degree];
            for (i, &v) in p.iter().enumerate() {
                q[v as usize] = i as u32;
            }
            inv.push(q);
        }
        (0..self.degree)
            .map(|mut x| {
                for &l in word {
                    let g = l.unsigned_abs() as usize - 1;
                    x = if l > 0 {
                        self.perms[g][x] as usize
                    } else {
                        inv[g][x] as usize
                    };
                }
                x as u32
            })
            .collect()
    }

    /// Order of the permutation group generated by the action.
    pub fn image_order(&self) -> usize {
        let id: Vec<u32> = (0..self.degree as u32).collect();
        let mut seen = HashSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for p in &self.perms {
                let h: Vec<u32> = g.iter().map(|&x| p[x as usize]).collect();
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        seen.len()
    }

    /// Whether the action is that of a cyclic group of order `degree`.
    pub fn is_cyclic_regular(&self) -> bool {
        let n = self.degree;
        if self.image_order() != n {
            return false;
        }
        // regular with an element of order n
        let id: Vec<u32> = (0..n as u32).collect();
        let mut seen = HashSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            if permutation_order(&g) == n {
                return true;
            }
            for p in &self.perms {
                let h: Vec<u32> = g.iter().map(|&x| p[x as usize]).collect();
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        false
    }
}

fn permutation_order(p: &[u32]) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut order = 1usize;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

const UNDEF: u32 = u32::MAX;

struct TableSearch<'a> {
    relators: &'a [Word],
    num_gens: usize,
    degree: usize,
    /// columns: generator g at 2g, inverse at 2g+1
    table: Vec<Vec<u32>>,
    used: usize,
    out: Vec<CosetAction>,
}

impl<'a> TableSearch<'a> {
    fn column(letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            2 * g
        } else {
            2 * g + 1
        }
    }

    /// All relators must trace back to their starting coset wherever the
    /// trace is fully defined.
    fn relators_ok(&self) -> bool {
        for w in self.relators {
            for start in 0..self.used {
                let mut x = start as u32;
                let mut complete = true;
                for &l in w {
                    let y = self.table[Self::column(l)][x as usize];
                    if y == UNDEF {
                        complete = false;
                        break;
                    }
                    x = y;
                }
                if complete && x != start as u32 {
                    return false;
                }
            }
        }
        true
    }

    fn first_undefined(&self) -> Option<(usize, usize)> {
        for c in 0..self.used {
            for col in 0..2 * self.num_gens {
                if self.table[col][c] == UNDEF {
                    return Some((c, col));
                }
            }
        }
        None
    }

    fn search(&mut self) {
        let Some((c, col)) = self.first_undefined() else {
            if self.used == self.degree {
                let perms = (0..self.num_gens)
                    .map(|g| self.table[2 * g][..self.degree].to_vec())
                    .collect();
                self.out.push(CosetAction {
                    degree: self.degree,
                    perms,
                });
            }
            return;
        };
        let inv_col = col ^ 1;
        let limit = (self.used + 1).min(self.degree);
        for d in 0..limit {
            if self.table[inv_col][d] != UNDEF {
                continue;
            }
            let is_new = d == self.used;
            self.table[col][c] = d as u32;
            self.table[inv_col][d] = c as u32;
            if is_new {
                self.used += 1;
            }
            if self.relators_ok() {
                self.search();
            }
            if is_new {
                self.used -= 1;
            }
            self.table[col][c] = UNDEF;
            self.table[inv_col][d] = UNDEF;
        }
    }
}

/// All transitive actions of the presented group on exactly `degree`
/// points, up to conjugacy (equivalently, the conjugacy classes of
/// subgroups of index `degree`).
pub fn transitive_actions(p: &Presentation, degree: usize) -> Vec<CosetAction> {
    assert!(degree >= 1);
    let mut search = TableSearch {
        relators: &p.relators,
        num_gens: p.num_generators,
        degree,
        table: vec![vec![UNDEF; degree]; 2 * p.num_generators.max(1)],
        used: 1,
        out: Vec::new(),
    };
    if p.num_generators == 0 {
        return if degree == 1 {
            vec![CosetAction {
                degree: 1,
                perms: Vec::new(),
            }]
        } else {
            Vec::new()
        };
    }
    search.search();
    let all = search.out;

    // conjugacy: restandardize from each base point, keep the minimum
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for action in all {
        let canon = (0..degree)
            .map(|base| restandardize(&action, base))
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(action);
        }
    }
    out
}

/// Renumbers the points of an action in the discovery order of a scan from
/// `base`, serializing the renumbered table.
fn restandardize(action: &CosetAction, base: usize) -> Vec<u32> {
    let n = action.degree;
    let mut inv: Vec<Vec<u32>> = Vec::new();
    for p in &action.perms {
        let mut q = vec![0u32; n];
        for (i, &v) in p.iter().enumerate() {
            q[v as usize] = i as u32;
        }
        inv.push(q);
    }
    let mut new_of_old = vec![UNDEF; n];
    let mut old_of_new = vec![0usize; n];
    new_of_old[base] = 0;
    old_of_new[0] = base;
    let mut used = 1;
    let mut cursor = 0;
    while used < n {
        debug_assert!(cursor < used);
        let old = old_of_new[cursor];
        for g in 0..action.perms.len() {
            for dir in 0..2 {
                let y = if dir == 0 {
                    action.perms[g][old] as usize
                } else {
                    inv[g][old] as usize
                };
                if new_of_old[y] == UNDEF {
                    new_of_old[y] = used as u32;
                    old_of_new[used] = y;
                    used += 1;
                }
            }
        }
        cursor += 1;
    }
    let mut ser = Vec::with_capacity(2 * action.perms.len() * n);
    for g in 0..action.perms.len() {
        for new in 0..n {
            ser.push(new_of_old[action.perms[g][old_of_new[new]] as usize]);
        }
        for new in 0..n {
            ser.push(new_of_old[inv[g][old_of_new[new]] as usize]);
        }
    }
    ser
}

/// Surjections of the abelianization onto Z/n, one per cyclic degree-n
/// cover: generator images in Z/n, deduplicated under the automorphisms of
/// Z/n (multiplication by units).
pub fn cyclic_quotients(p: &Presentation, n: usize) -> Vec<Vec<u32>> {
    assert!(n >= 2);
    let gens = p.num_generators;
    let rows = p.abelianized_rows();
    // coker coordinates via the left transform of SNF(A^T)
    let mut at = vec![vec![BigInt::zero(); rows.len().max(1)]; gens];
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            at[j][i] = BigInt::from(v);
        }
    }
    let snf = smith_normal_form(at);
    let nn = BigInt::from(n as i64);

    // a hom to Z/n assigns psi_j to diagonal coordinate j with d_j psi_j = 0
    let mut choices: Vec<Vec<u32>> = Vec::new();
    for i in 0..gens {
        let d = snf.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            choices.push((0..n as u32).collect());
        } else {
            let g = d.gcd(&nn);
            let step = (&nn / &g).to_string().parse::<u32>().unwrap();
            let g = g.to_string().parse::<u32>().unwrap();
            choices.push((0..g).map(|m| m * step).collect());
        }
    }

    // generator images: phi(e_i) = sum_j U[j][i] * psi_j
    let u = &snf.left;
    let mut out = HashSet::new();
    let mut psi = vec![0u32; gens];
    enumerate_choices(&choices, 0, &mut psi, &mut |psi| {
        let phi: Vec<u32> = (0..gens)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (j, &v) in psi.iter().enumerate() {
                    acc += &u[j][i] * BigInt::from(v as i64);
                }
                let m = acc.mod_floor(&nn);
                m.to_string().parse::<u32>().unwrap()
            })
            .collect();
        // surjective onto Z/n?
        let mut g = n as u32;
        for &v in &phi {
            g = gcd_u32(g, v);
        }
        if g != 1 {
            return;
        }
        // canonical representative under unit multiplication
        let canon = (1..n as u32)
            .filter(|u| gcd_u32(*u, n as u32) == 1)
            .map(|u| {
                phi.iter()
                    .map(|&v| (v as u64 * u as u64 % n as u64) as u32)
                    .collect::<Vec<u32>>()
            })
            .min()
            .unwrap();
        out.insert(canon);
    });
    let mut result: Vec<Vec<u32>> = out.into_iter().collect();
    result.sort();
    result
}

fn enumerate_choices(
    choices: &[Vec<u32>],
    i: usize,
    cur: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if i == choices.len() {
        f(cur);
        return;
    }
    for &v in &choices[i] {
        cur[i] = v;
        enumerate_choices(choices, i + 1, cur, f);
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// Sanity helper used by tests: number of index-2 subgroups from the
/// abelianization, `2^s - 1` with `s` the number of even torsion factors
/// plus the rank.
pub fn index2_count_from_homology(h: &crate::homology::AbelianGroup) -> usize {
    let s = h.rank
        + h.torsion
            .iter()
            .filter(|d| (*d % BigInt::from(2)).is_zero())
            .count();
    (1usize << s) - 1
}
