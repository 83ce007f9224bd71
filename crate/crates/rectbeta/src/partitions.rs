//! Integer partitions, Young-diagram statistics, and set partitions of
//! `{1..n}` with the block weights used by the moment-cumulant formulas.

use std::collections::HashMap;
use std::fmt;


use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// Weakly decreasing tuple of positive integers (trailing zeros are dropped).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("parts {parts:?} are not weakly decreasing"));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Sorts the input into decreasing order first.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    pub(crate) fn from_sorted(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition (k).
    pub fn row(k: usize) -> Self {
        Self::from_sorted(vec![k])
    }

    /// The one-column partition (1^k).
    pub fn column(k: usize) -> Self {
        Self::from_sorted(vec![1; k])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of positive parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The i-th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Parts padded with zeros to length `m`.
    pub fn padded(&self, m: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(m.max(v.len()), 0);
        v
    }

    pub fn conjugate(&self) -> Self {
        let width = self.part(0);
        let parts = (0..width).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// Boxes as 0-based (row, column) pairs.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    /// Arm and leg lengths of the box at (row i, column j), 0-based.
    pub fn arm_leg(&self, i: usize, j: usize) -> (usize, usize) {
        let arm = self.part(i) - j - 1;
        let leg = self.parts.iter().skip(i + 1).filter(|&&p| p > j).count();
        (arm, leg)
    }

    pub fn is_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// Dominance order on partitions of equal size.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` with at most `max_len` parts, in decreasing lexicographic order.
pub fn enumerate_partitions(n: usize, max_len: usize) -> Vec<Partition> {
    fn rec(rem: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=rem.min(cap)).rev() {
            cur.push(p);
            rec(rem - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_len, &mut Vec::new(), &mut out);
    out
}

/// H(mu) = prod (a(s) + 1 + theta l(s)) and H'(mu) = prod (a(s) + theta + theta l(s)).
pub fn hook_products<S: Scalar>(mu: &Partition, theta: &S) -> (S, S) {
    let mut h = S::one();
    let mut hp = S::one();
    for (i, j) in mu.boxes() {
        let (a, l) = mu.arm_leg(i, j);
        let a = S::from_nat(a);
        let tl = theta.clone() * S::from_nat(l);
        h = h * (a.clone() + S::one() + tl.clone());
        hp = hp * (a + theta.clone() + tl);
    }
    (h, hp)
}

/// Generalized Pochhammer symbol: product over boxes (i, j) of t + (j-1) - theta (i-1), 1-based.
pub fn gen_pochhammer<S: Scalar>(t: &S, mu: &Partition, theta: &S) -> S {
    let mut acc = S::one();
    for (i, j) in mu.boxes() {
        acc = acc * (t.clone() + S::from_nat(j) - theta.clone() * S::from_nat(i));
    }
    acc
}

/// A set partition of {1..n}; blocks are sorted internally and ordered by their minima.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

/// Per-block data entering W(pi): P_i and Q_i count elements of B_1..B_i above min(B_i) and max(B_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightData {
    pub p: Vec<usize>,
    pub q: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetPartitionFilter {
    All,
    NonCrossing,
    NonCrossingEven,
    NcPerfectMatchings,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return invalid("empty block");
            }
            for &x in b {
                if x == 0 || x > n || seen[x] {
                    return invalid(format!("element {x} out of range or repeated"));
                }
                seen[x] = true;
            }
        }
        if seen.iter().skip(1).any(|s| !s) {
            return invalid("blocks do not cover 1..n");
        }
        Ok(Self::normalized(n, blocks))
    }

    fn normalized(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn is_even(&self) -> bool {
        self.blocks.iter().all(|b| b.len() % 2 == 0)
    }

    /// Linear stack scan: an element may only join the innermost open block.
    pub fn is_noncrossing(&self) -> bool {
        let mut owner = vec![0usize; self.n + 1];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                owner[x] = bi;
            }
        }
        let mut stack: Vec<usize> = Vec::new();
        for x in 1..=self.n {
            while let Some(&t) = stack.last() {
                if *self.blocks[t].last().unwrap() < x {
                    stack.pop();
                } else {
                    break;
                }
            }
            let b = owner[x];
            if self.blocks[b][0] == x {
                stack.push(b);
            } else if stack.last() != Some(&b) {
                return false;
            }
        }
        true
    }

    pub fn weight_data(&self) -> WeightData {
        let mut p = Vec::with_capacity(self.blocks.len());
        let mut q = Vec::with_capacity(self.blocks.len());
        for i in 0..self.blocks.len() {
            let lo = self.blocks[i][0];
            let hi = *self.blocks[i].last().unwrap();
            let prefix = self.blocks[..=i].iter().flatten();
            let (mut pi, mut qi) = (0, 0);
            for &x in prefix {
                if x > lo {
                    pi += 1;
                }
                if x > hi {
                    qi += 1;
                }
            }
            p.push(pi);
            q.push(qi);
        }
        WeightData { p, q }
    }

    /// Number of blocks whose minimum is even.
    pub fn even_min_count(&self) -> usize {
        self.blocks.iter().filter(|b| b[0] % 2 == 0).count()
    }

    /// prod_i C_{Q_i+1} ... C_{P_i} for an arbitrary 1-based constant sequence `c`.
    pub fn weight_with<S: Scalar>(&self, c: impl Fn(usize) -> S) -> Result<S> {
        if !self.is_noncrossing() {
            return invalid("weight is only defined for non-crossing partitions");
        }
        let wd = self.weight_data();
        let mut acc = S::one();
        for (&p, &q) in wd.p.iter().zip(&wd.q) {
            for i in (q + 1)..=p {
                acc = acc * c(i);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", s.join("|"))
    }
}

/// The alternating constants C_1 = 2q gamma, C_2 = 2 gamma + 2, C_3 = 2q gamma + 2, ...
pub fn c_seq<S: Scalar>(i: usize, q: &S, gamma: &S) -> S {
    assert!(i >= 1, "C index starts at 1");
    let two = S::from_int(2);
    if i % 2 == 1 {
        let j = i.div_ceil(2);
        two.clone() * q.clone() * gamma.clone() + two * S::from_nat(j - 1)
    } else {
        let j = i / 2;
        two.clone() * gamma.clone() + two * S::from_nat(j)
    }
}

/// W(pi) with the alternating q-gamma constants; rejects crossing partitions.
pub fn weight_w<S: Scalar>(pi: &SetPartition, q: &S, gamma: &S) -> Result<S> {
    pi.weight_with(|i| c_seq(i, q, gamma))
}

pub fn even_min_count(pi: &SetPartition) -> usize {
    pi.even_min_count()
}

type Blocks = Vec<Vec<usize>>;

/// Non-crossing partitions of {1..len} whose block sizes pass `ok`, memoized by length.
struct NcGen<'a> {
    ok: &'a dyn Fn(usize) -> bool,
    memo: HashMap<usize, Vec<Blocks>>,
}

impl NcGen<'_> {
    fn range(&mut self, lo: usize, hi: usize) -> Vec<Blocks> {
        if lo > hi {
            return vec![Vec::new()];
        }
        let len = hi - lo + 1;
        if !self.memo.contains_key(&len) {
            let base = self.grow(vec![1], 1, len);
            self.memo.insert(len, base);
        }
        let shift = lo - 1;
        self.memo[&len]
            .iter()
            .map(|bs| bs.iter().map(|b| b.iter().map(|x| x + shift).collect()).collect())
            .collect()
    }

    // `block` is the block of the leftmost element, currently ending at `last`.
    fn grow(&mut self, block: Vec<usize>, last: usize, hi: usize) -> Vec<Blocks> {
        let mut out = Vec::new();
        if (self.ok)(block.len()) {
            for mut rest in self.range(last + 1, hi) {
                rest.insert(0, block.clone());
                out.push(rest);
            }
        }
        for y in (last + 1)..=hi {
            let gaps = self.range(last + 1, y - 1);
            if gaps.is_empty() {
                continue;
            }
            let mut next = block.clone();
            next.push(y);
            for tail in self.grow(next, y, hi) {
                for g in &gaps {
                    let mut bs = tail.clone();
                    bs.extend(g.iter().cloned());
                    out.push(bs);
                }
            }
        }
        out
    }
}

fn all_set_partitions(n: usize) -> Vec<Blocks> {
    // restricted growth strings
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    fn rec(i: usize, maxv: usize, a: &mut Vec<usize>, out: &mut Vec<Blocks>) {
        let n = a.len();
        if i == n {
            let k = a.iter().copied().max().map_or(0, |m| m + 1);
            let mut blocks = vec![Vec::new(); k];
            for (x, &b) in a.iter().enumerate() {
                blocks[b].push(x + 1);
            }
            out.push(blocks);
            return;
        }
        for v in 0..=maxv + 1 {
            a[i] = v;
            rec(i + 1, maxv.max(v), a, out);
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    a[0] = 0;
    rec(1, 0, &mut a, &mut out);
    out
}

pub fn enumerate_set_partitions(n: usize, filter: SetPartitionFilter) -> Vec<SetPartition> {
    let raw = match filter {
        SetPartitionFilter::All => all_set_partitions(n),
        SetPartitionFilter::NonCrossing => NcGen { ok: &|_| true, memo: HashMap::new() }.range(1, n),
        SetPartitionFilter::NonCrossingEven => NcGen { ok: &|s| s % 2 == 0, memo: HashMap::new() }.range(1, n),
        SetPartitionFilter::NcPerfectMatchings => NcGen { ok: &|s| s == 2, memo: HashMap::new() }.range(1, n),
    };
    raw.into_iter().map(|b| SetPartition::normalized(n, b)).collect()
}
