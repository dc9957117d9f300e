//! Finitely generated abelian groups and Smith normal form over the
//! integers.
//!
//! Relation matrices here are small (at most a few hundred rows), but the
//! intermediate entries of a Smith reduction can grow quickly, so the
//! computation runs on arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A finitely generated abelian group in canonical form: a free rank plus a
/// divisor chain `d1 | d2 | ...` of torsion coefficients, each at least 2.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Convenience constructor from small torsion values.
    pub fn from_parts(rank: usize, torsion: &[u64]) -> Self {
        let g = AbelianGroup {
            rank,
            torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        };
        debug_assert!(g.is_canonical());
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|d| *d >= BigInt::from(2))
            && self
                .torsion
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero())
    }

    /// Compact form `r;d1,d2,...` used in reports.
    pub fn compact(&self) -> String {
        let ds: Vec<String> = self.torsion.iter().map(|d| d.to_string()).collect();
        format!("{};{}", self.rank, ds.join(","))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Smith normal form `D = U * A * V` with unimodular `U`, `V`; only `U` is
/// tracked (it is what coker computations need).
pub(crate) struct Snf {
    /// Diagonal entries, nonneg, d[i] divides d[i+1]; zeros at the end.
    pub diag: Vec<BigInt>,
    /// Row transform: `U * A` has the diagonal in its leading block.
    pub left: Vec<Vec<BigInt>>,
}

/// Reduces `a` (dense, row-major) to Smith normal form in place, applying
/// all row operations to an identity matrix alongside.
pub(crate) fn smith_normal_form(mut a: Vec<Vec<BigInt>>) -> Snf {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut left: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let n = rows.min(cols);
    let mut t = 0usize;
    while t < n {
        // find a pivot: smallest nonzero absolute value in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot
                        .map(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        left.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        // clear column and row below/right of the pivot
        let mut again = false;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = div_nearest(&a[i][t], &a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                    for j in 0..rows {
                        let sub = &q * &left[t][j];
                        left[i][j] -= sub;
                    }
                }
                if !a[i][t].is_zero() {
                    again = true;
                }
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = div_nearest(&a[t][j], &a[t][t]);
                if !q.is_zero() {
                    for i in t..rows {
                        let sub = &q * &a[i][t];
                        let v = &a[i][j] - sub;
                        a[i][j] = v;
                    }
                }
                if !a[t][j].is_zero() {
                    again = true;
                }
            }
        }
        if again {
            continue; // remainders became new, smaller pivot candidates
        }

        // pivot divides everything in its row/column; enforce divisibility
        // against the rest of the block
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[i][j] % &a[t][t]).is_zero() {
                    // add row i to row t and restart the elimination
                    for jj in 0..cols {
                        let v = a[i][jj].clone();
                        a[t][jj] += v;
                    }
                    for jj in 0..rows {
                        let v = left[i][jj].clone();
                        left[t][jj] += v;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if a[t][t].is_negative() {
            for j in t..cols {
                let v = -a[t][j].clone();
                a[t][j] = v;
            }
            for j in 0..rows {
                let v = -left[t][j].clone();
                left[t][j] = v;
            }
        }
        t += 1;
    }

    let diag: Vec<BigInt> = (0..n).map(|i| a[i][i].clone()).collect();
    debug_assert!(diag
        .windows(2)
        .all(|w| w[0].is_zero() && w[1].is_zero() || !w[0].is_zero()));
    Snf { diag, left }
}

/// Quotient rounding to nearest, which keeps remainders at most half the
/// divisor and the reduction fast.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// The cokernel of the column space of `a^T`, i.e. `Z^gens` modulo the
/// subgroup generated by the rows of `a`.
pub fn abelian_group_from_relations(rows: &[Vec<i64>], num_generators: usize) -> AbelianGroup {
    let a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            debug_assert_eq!(r.len(), num_generators);
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    // coker(A^T): transpose so generators index rows
    let mut at = vec![vec![BigInt::zero(); a.len().max(1)]; num_generators];
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            at[j][i] = v.clone();
        }
    }
    let snf = smith_normal_form(at);
    group_from_diag(&snf.diag, num_generators)
}

pub(crate) fn group_from_diag(diag: &[BigInt], num_generators: usize) -> AbelianGroup {
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion: Vec<BigInt> = diag
        .iter()
        .filter(|d| !d.is_zero() && **d != BigInt::from(1))
        .cloned()
        .collect();
    AbelianGroup {
        rank: num_generators - nonzero,
        torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn snf_diag(rows: &[Vec<i64>]) -> Vec<i64> {
        let a: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let snf = smith_normal_form(a);
        snf.diag
            .iter()
            .map(|d| i64::try_from(d.clone()).unwrap())
            .collect()
    }

    #[test]
    fn simple_cases() {
        assert_eq!(snf_diag(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf_diag(&[vec![2, 4], vec![4, 8]]), vec![2, 0]);
        assert_eq!(snf_diag(&[vec![0, 0], vec![0, 0]]), vec![0, 0]);
    }

    /// Determinantal-divisor oracle: the product d1*...*dk equals the gcd of
    /// all k x k minors.
    fn minor_gcd(m: &[Vec<i64>], k: usize) -> i128 {
        let rows = m.len();
        let cols = m[0].len();
        let mut g: i128 = 0;
        let row_sets = subsets(rows, k);
        let col_sets = subsets(cols, k);
        for rs in &row_sets {
            for cs in &col_sets {
                let d = det(m, rs, cs);
                g = gcd128(g, d.abs());
            }
        }
        g
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        go(0, n, k, &mut cur, &mut out);
        out
    }

    fn det(m: &[Vec<i64>], rs: &[usize], cs: &[usize]) -> i128 {
        let k = rs.len();
        if k == 1 {
            return m[rs[0]][cs[0]] as i128;
        }
        let mut sum: i128 = 0;
        let sub_rs = &rs[1..];
        for (i, &c) in cs.iter().enumerate() {
            let mut sub_cs = cs.to_vec();
            sub_cs.remove(i);
            let cofactor = m[rs[0]][c] as i128 * det(m, sub_rs, &sub_cs);
            if i % 2 == 0 {
                sum += cofactor;
            } else {
                sum -= cofactor;
            }
        }
        sum
    }

    fn gcd128(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd128(b, a % b)
        }
    }

    #[test]
    fn random_matrices_match_determinantal_divisors() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect())
                .collect();
            let diag = snf_diag(&m);
            let mut prod: i128 = 1;
            for (k, d) in diag.iter().enumerate() {
                prod = prod.saturating_mul(*d as i128);
                let oracle = minor_gcd(&m, k + 1);
                assert_eq!(prod.abs(), oracle, "matrix {m:?} at k={}", k + 1);
                if *d == 0 {
                    break;
                }
            }
            // divisor chain
            for w in diag.windows(2) {
                if w[0] != 0 && w[1] != 0 {
                    assert_eq!(w[1] % w[0], 0);
                }
            }
        }
    }

    #[test]
    fn left_transform_is_consistent() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect())
                .collect();
            let a: Vec<Vec<BigInt>> = m
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let snf = smith_normal_form(a.clone());
            // U must be unimodular: |det U| == 1
            let u: Vec<Vec<i64>> = snf
                .left
                .iter()
                .map(|r| r.iter().map(|v| i64::try_from(v.clone()).unwrap()).collect())
                .collect();
            if rows > 0 {
                let all: Vec<usize> = (0..rows).collect();
                assert_eq!(det(&u, &all, &all).abs(), 1);
            }
        }
    }

    #[test]
    fn relation_cokernels() {
        // Z^2 / <(2,1)> = Z (the relation kills one generator)
        let g = abelian_group_from_relations(&[vec![2, 1]], 2);
        assert_eq!(g, AbelianGroup::free(1));
        // Z^1 / <5> = Z/5
        let g = abelian_group_from_relations(&[vec![5]], 1);
        assert_eq!(g, AbelianGroup::from_parts(0, &[5]));
        // Z^2 / <(5,0),(0,15)> = Z/5 + Z/15
        let g = abelian_group_from_relations(&[vec![5, 0], vec![0, 15]], 2);
        assert_eq!(g, AbelianGroup::from_parts(0, &[5, 15]));
        // no relations
        let g = abelian_group_from_relations(&[], 3);
        assert_eq!(g, AbelianGroup::free(3));
    }

    #[test]
    fn display_forms() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(AbelianGroup::free(1).to_string(), "Z");
        assert_eq!(AbelianGroup::from_parts(0, &[5, 5, 5]).to_string(), "Z/5 + Z/5 + Z/5");
        assert_eq!(AbelianGroup::from_parts(2, &[3]).compact(), "2;3");
    }
}
