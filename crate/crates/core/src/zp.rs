//! Minimal sumsets of squares in `ℤ_p`.
//!
//! [`min_sumset`] finds `min |A + A|` over `n`-subsets `A` of the squares
//! modulo `p` (zero included) by depth-first search over ascending
//! candidates. The partial sumset is kept as a multiplicity table so adding
//! and removing an element costs `O(n)`. A branch is cut as soon as its
//! partial sumset is no smaller than the best complete set, which is sound
//! because sumsets only grow under inclusion, and the whole search stops
//! once the Cauchy–Davenport bound `min(2n − 1, p)` is reached.
//!
//! Multiplying by a nonzero square permutes the squares and preserves
//! `|A + A|`. With symmetry reduction on, only sets that are lexicographically
//! smallest in their orbit are accepted; such a set always has `1` as its
//! smallest nonzero element, which is what prunes the tree.
//!
//! The tree is split into independent branches (fixed prefixes of up to two
//! elements) that may run on separate threads. Branches share the best value
//! through an atomic cell holding `(size, branch)`; a branch only cuts on an
//! equal size when the holder is an earlier branch, so the reported witness
//! (the lexicographically smallest optimal set) does not depend on
//! scheduling.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::{Error, Result};

/// Largest modulus the dense searches accept.
pub const MAX_SEARCH_MODULUS: u64 = 1 << 24;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64` (the first twelve prime bases
/// suffice below 3.3·10²⁴).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A verified prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeModulus(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `|S(ℤ_p)|`: `(p + 1)/2` for odd `p`, 2 for `p = 2`.
    pub fn square_count(self) -> usize {
        if self.0 == 2 {
            2
        } else {
            self.0.div_ceil(2) as usize
        }
    }

    fn check_searchable(self) -> Result<()> {
        if self.0 > MAX_SEARCH_MODULUS {
            return Err(Error::ModulusTooLarge(self.0));
        }
        Ok(())
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A subset of `ℤ_p` stored as a bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: PrimeModulus,
    words: Vec<u64>,
    len: usize,
}

impl ResidueSet {
    pub fn empty(modulus: PrimeModulus) -> Result<Self> {
        modulus.check_searchable()?;
        Ok(ResidueSet {
            modulus,
            words: vec![0; (modulus.get() as usize).div_ceil(64)],
            len: 0,
        })
    }

    /// Fails on any member `≥ p`; repeated members are merged.
    pub fn from_members<I: IntoIterator<Item = u64>>(modulus: PrimeModulus, members: I) -> Result<Self> {
        let mut set = Self::empty(modulus)?;
        for m in members {
            if m >= modulus.get() {
                return Err(Error::InvalidArgument(format!("{m} is not reduced mod {modulus}")));
            }
            set.insert(m);
        }
        Ok(set)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// `x` is reduced mod `p` first.
    pub fn insert(&mut self, x: u64) -> bool {
        let x = (x % self.modulus.get()) as usize;
        let (w, b) = (x / 64, x % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, x: u64) -> bool {
        if x >= self.modulus.get() {
            return false;
        }
        let x = x as usize;
        self.words[x / 64] & (1 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(w as u64 * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// `A + A` in `ℤ_p`.
    pub fn sumset(&self) -> ResidueSet {
        let p = self.modulus.get();
        let members = self.to_vec();
        let mut out = Self::empty(self.modulus).expect("same modulus");
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i..] {
                out.insert((a + b) % p);
            }
        }
        out
    }

    /// `{c·a : a ∈ A}`.
    pub fn scale(&self, c: u64) -> ResidueSet {
        let p = self.modulus.get();
        let mut out = Self::empty(self.modulus).expect("same modulus");
        for a in self.iter() {
            out.insert(mul_mod(a, c, p));
        }
        out
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.modulus == other.modulus
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.to_vec(), self.modulus)
    }
}

/// `S(ℤ_p) = {a² mod p}`, zero included.
pub fn squares_mod_p(p: PrimeModulus) -> Result<ResidueSet> {
    let mut set = ResidueSet::empty(p)?;
    let m = p.get();
    for a in 0..=m / 2 {
        set.insert(mul_mod(a, a, m));
    }
    Ok(set)
}

/// `min(2n − 1, p)`, for `1 ≤ n ≤ |S(ℤ_p)|`.
pub fn cauchy_davenport_bound(n: usize, p: PrimeModulus) -> Result<usize> {
    check_feasible(n, p)?;
    Ok((2 * n - 1).min(p.get() as usize))
}

fn check_feasible(n: usize, p: PrimeModulus) -> Result<()> {
    let available = p.square_count();
    if n == 0 || n > available {
        return Err(Error::Infeasible {
            n,
            p: p.get(),
            available,
        });
    }
    Ok(())
}

/// Whether `A = {s, s + d, …, s + (|A| − 1)d}` for some `s`, `d ≠ 0`.
pub fn is_ap_mod_p(set: &ResidueSet) -> bool {
    let members = set.to_vec();
    let n = members.len() as u64;
    let p = set.modulus().get();
    if n <= 2 || n == p {
        return true;
    }
    // s must be a member and s + d must be one too
    for &s in &members {
        for &t in &members {
            if t == s {
                continue;
            }
            let d = (t + p - s) % p;
            if (0..n).all(|k| set.contains((s + mul_mod(k, d, p)) % p)) {
                return true;
            }
        }
    }
    false
}

/// An `n`-term progression `s, s + d, …` inside a set of squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareProgression {
    pub start: u64,
    pub step: u64,
    pub members: ResidueSet,
}

/// The lexicographically first `(s, d)`, `d ≠ 0`, whose `n`-term progression
/// lies in the nonzero squares mod `p`.
pub fn find_qr_ap(p: PrimeModulus, n: usize) -> Result<Option<SquareProgression>> {
    find_square_ap(p, n, false)
}

/// [`find_qr_ap`], optionally letting the progression pass through zero.
pub fn find_square_ap(p: PrimeModulus, n: usize, include_zero: bool) -> Result<Option<SquareProgression>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("progression length {n} < 3")));
    }
    let mut pool = squares_mod_p(p)?;
    if !include_zero {
        pool.words[0] &= !1;
        pool.len -= 1;
    }
    let m = p.get();
    if n > pool.len() {
        return Ok(None);
    }
    for s in pool.iter() {
        'step: for d in 1..m {
            let mut x = s;
            for _ in 1..n {
                x = (x + d) % m;
                if !pool.contains(x) {
                    continue 'step;
                }
            }
            let members =
                ResidueSet::from_members(p, (0..n as u64).map(|k| (s + mul_mod(k, d, m)) % m))?;
            return Ok(Some(SquareProgression {
                start: s,
                step: d,
                members,
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Restrict to orbit-canonical sets under multiplication by squares.
    pub symmetry: bool,
    /// Stop after this many search nodes; the result is then not exact.
    pub budget: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry: true,
            budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub p: PrimeModulus,
    pub minimum: usize,
    pub witness: ResidueSet,
    pub nodes_explored: u64,
    /// The Cauchy–Davenport bound was attained and the search stopped there.
    pub early_exit: bool,
    /// False when the node budget ran out; `minimum` is then only an upper
    /// bound.
    pub exact: bool,
}

/// Best `(size, branch)` seen by any branch, packed so that `fetch_min`
/// prefers smaller sizes and then earlier branches.
#[derive(Debug)]
pub struct SharedBest(AtomicU64);

impl SharedBest {
    fn new(initial: usize) -> Self {
        SharedBest(AtomicU64::new(Self::pack(initial, u32::MAX as usize)))
    }

    fn pack(size: usize, branch: usize) -> u64 {
        (size as u64) << 32 | branch as u64
    }

    fn offer(&self, size: usize, branch: usize) {
        self.0.fetch_min(Self::pack(size, branch), Ordering::Relaxed);
    }

    /// Smallest partial-sumset size that `branch` can no longer use.
    fn cutoff(&self, branch: usize) -> usize {
        let v = self.0.load(Ordering::Relaxed);
        let (size, holder) = ((v >> 32) as usize, (v & 0xffff_ffff) as usize);
        if holder < branch {
            size
        } else {
            size + 1
        }
    }
}

#[derive(Debug)]
pub struct NodeBudget {
    limit: Option<u64>,
    used: AtomicU64,
    exhausted: AtomicBool,
}

impl NodeBudget {
    pub fn new(limit: Option<u64>) -> Self {
        NodeBudget {
            limit,
            used: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    fn over_limit(&self, total: u64) -> bool {
        self.limit.is_some_and(|l| total > l)
    }

    /// Records `nodes`; returns false if the caller has to stop, in which
    /// case the budget is marked exhausted.
    fn charge(&self, nodes: u64) -> bool {
        let total = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if self.over_limit(total) || self.is_exhausted() {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// Records nodes of a walk that already finished.
    fn settle(&self, nodes: u64) {
        self.used.fetch_add(nodes, Ordering::Relaxed);
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

/// What one branch found.
#[derive(Clone, Debug, Default)]
pub struct BranchOutcome {
    pub best: Option<(usize, Vec<u32>)>,
    pub nodes: u64,
    pub hit_bound: bool,
}

const FLUSH_EVERY: u64 = 1 << 12;

/// A prepared search for `N_n(ℤ_p)`, split into independent branches.
#[derive(Debug)]
pub struct ZpSearch {
    n: usize,
    p: PrimeModulus,
    options: SearchOptions,
    candidates: Vec<u32>,
    unit_squares: Vec<u32>,
    bound: usize,
    prefixes: Vec<Vec<usize>>,
    shared: SharedBest,
    budget: NodeBudget,
}

impl ZpSearch {
    pub fn new(n: usize, p: PrimeModulus, options: SearchOptions) -> Result<Self> {
        let bound = cauchy_davenport_bound(n, p)?;
        let squares = squares_mod_p(p)?;
        let candidates: Vec<u32> = squares.iter().map(|x| x as u32).collect();
        let unit_squares: Vec<u32> = candidates.iter().copied().filter(|&x| x > 1).collect();
        let upper = (n * (n + 1) / 2).min(p.get() as usize);

        let mut search = ZpSearch {
            n,
            p,
            options,
            candidates,
            unit_squares,
            bound,
            prefixes: Vec::new(),
            shared: SharedBest::new(upper + 1),
            budget: NodeBudget::new(options.budget),
        };
        search.prefixes = search.enumerate_prefixes(n.min(2));
        Ok(search)
    }

    /// Index prefixes of length `k` in lexicographic order.
    fn enumerate_prefixes(&self, k: usize) -> Vec<Vec<usize>> {
        let m = self.candidates.len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        self.prefixes_rec(k, m, 0, &mut cur, &mut out);
        out
    }

    fn prefixes_rec(&self, k: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let remaining = self.n - cur.len();
        for i in start..=m - remaining {
            if !self.allowed_next(cur.iter().map(|&j| self.candidates[j]), self.candidates[i]) {
                break;
            }
            cur.push(i);
            self.prefixes_rec(k, m, i + 1, cur, out);
            cur.pop();
        }
    }

    /// Under symmetry reduction the first nonzero element must be 1; since
    /// candidates ascend, a `false` here rules out every later candidate too.
    fn allowed_next(&self, mut chosen: impl Iterator<Item = u32>, x: u32) -> bool {
        !self.options.symmetry || x <= 1 || chosen.any(|c| c != 0)
    }

    pub fn branch_count(&self) -> usize {
        self.prefixes.len()
    }

    pub fn budget(&self) -> &NodeBudget {
        &self.budget
    }

    /// Explores branch `index`. Safe to call concurrently for different
    /// indices.
    pub fn run_branch(&self, index: usize) -> BranchOutcome {
        if self.shared.cutoff(index) <= self.bound {
            // an earlier branch already reached the bound
            return BranchOutcome::default();
        }
        let mut walker = Walker {
            search: self,
            branch: index,
            chosen: Vec::with_capacity(self.n),
            counts: vec![0; self.p.get() as usize],
            size: 0,
            best: None,
            best_size: usize::MAX,
            nodes: 0,
            unflushed: 0,
            stop: false,
            hit_bound: false,
        };
        if self.budget.charge(0) {
            walker.run(&self.prefixes[index]);
        }
        self.budget.settle(walker.unflushed);
        BranchOutcome {
            best: walker.best.map(|w| (walker.best_size, w)),
            nodes: walker.nodes,
            hit_bound: walker.hit_bound,
        }
    }

    /// Combines per-branch outcomes (indexed like the branches).
    pub fn finish(self, outcomes: Vec<BranchOutcome>) -> Result<SearchResult> {
        let nodes: u64 = outcomes.iter().map(|o| o.nodes).sum();
        let best = outcomes
            .iter()
            .enumerate()
            .filter_map(|(i, o)| o.best.as_ref().map(|(s, w)| (*s, i, w)))
            .min_by_key(|&(s, i, _)| (s, i));
        let exact = !self.budget.is_exhausted();
        let Some((minimum, _, witness)) = best else {
            return Err(Error::BudgetExhausted { nodes });
        };
        let witness = ResidueSet::from_members(self.p, witness.iter().map(|&x| x as u64))?;
        debug_assert_eq!(witness.sumset().len(), minimum);
        Ok(SearchResult {
            n: self.n,
            p: self.p,
            minimum,
            witness,
            nodes_explored: nodes,
            early_exit: minimum == self.bound && outcomes.iter().any(|o| o.hit_bound),
            exact,
        })
    }

    /// Lexicographically smallest in its orbit under multiplication by
    /// nonzero squares. `set` is ascending.
    fn is_canonical(&self, set: &[u32]) -> bool {
        let p = self.p.get();
        let mut image = Vec::with_capacity(set.len());
        self.unit_squares.iter().all(|&c| {
            image.clear();
            image.extend(set.iter().map(|&a| mul_mod(a as u64, c as u64, p) as u32));
            image.sort_unstable();
            image.as_slice() >= set
        })
    }
}

struct Walker<'a> {
    search: &'a ZpSearch,
    branch: usize,
    chosen: Vec<u32>,
    counts: Vec<u32>,
    size: usize,
    best: Option<Vec<u32>>,
    best_size: usize,
    nodes: u64,
    unflushed: u64,
    stop: bool,
    hit_bound: bool,
}

impl Walker<'_> {
    fn push(&mut self, x: u32) {
        let p = self.search.p.get() as u32;
        let bump = |s: u32, counts: &mut Vec<u32>, size: &mut usize| {
            let s = if s >= p { s - p } else { s } as usize;
            if counts[s] == 0 {
                *size += 1;
            }
            counts[s] += 1;
        };
        bump(2 * x % p, &mut self.counts, &mut self.size);
        for &c in &self.chosen {
            bump(x + c, &mut self.counts, &mut self.size);
        }
        self.chosen.push(x);
    }

    fn pop(&mut self) {
        let p = self.search.p.get() as u32;
        let x = self.chosen.pop().expect("non-empty");
        let drop = |s: u32, counts: &mut Vec<u32>, size: &mut usize| {
            let s = if s >= p { s - p } else { s } as usize;
            counts[s] -= 1;
            if counts[s] == 0 {
                *size -= 1;
            }
        };
        drop(2 * x % p, &mut self.counts, &mut self.size);
        for &c in &self.chosen {
            drop(x + c, &mut self.counts, &mut self.size);
        }
    }

    fn cutoff(&self) -> usize {
        self.best_size.min(self.search.shared.cutoff(self.branch))
    }

    fn tick(&mut self) {
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            if !self.search.budget.charge(self.unflushed) {
                self.stop = true;
            }
            self.unflushed = 0;
        }
    }

    fn run(&mut self, prefix: &[usize]) {
        for &i in prefix {
            self.tick();
            self.push(self.search.candidates[i]);
            if self.size >= self.cutoff() {
                return;
            }
        }
        self.descend(prefix.last().map_or(0, |&i| i + 1));
    }

    fn descend(&mut self, start: usize) {
        let search = self.search;
        if self.chosen.len() == search.n {
            self.leaf();
            return;
        }
        let m = search.candidates.len();
        let remaining = search.n - self.chosen.len();
        for i in start..=m - remaining {
            if self.stop || self.cutoff() <= search.bound {
                return;
            }
            let x = search.candidates[i];
            if !search.allowed_next(self.chosen.iter().copied(), x) {
                return;
            }
            self.tick();
            self.push(x);
            if self.size < self.cutoff() {
                self.descend(i + 1);
            }
            self.pop();
        }
    }

    fn leaf(&mut self) {
        if self.size >= self.cutoff() {
            return;
        }
        if self.search.options.symmetry && !self.search.is_canonical(&self.chosen) {
            return;
        }
        self.best_size = self.size;
        self.best = Some(self.chosen.clone());
        self.search.shared.offer(self.size, self.branch);
        if self.size == self.search.bound {
            self.hit_bound = true;
            self.stop = true;
        }
    }
}

/// Exact `N_n(ℤ_p)` with the lexicographically smallest optimal witness,
/// single-threaded.
pub fn min_sumset(n: usize, p: PrimeModulus, options: SearchOptions) -> Result<SearchResult> {
    let search = ZpSearch::new(n, p, options)?;
    let outcomes = (0..search.branch_count())
        .map(|i| search.run_branch(i))
        .collect();
    search.finish(outcomes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub p: u64,
    pub outcome: Result<SearchResult>,
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range [{lo}, {hi}]")));
    }
    Ok((lo..=hi).filter(|&p| is_prime(p)).collect())
}

/// [`min_sumset`] for every prime in `[p_min, p_max]`; a failing prime is
/// reported in its row and does not stop the scan.
pub fn table_scan(n: usize, p_min: u64, p_max: u64, options: SearchOptions) -> Result<Vec<TableRow>> {
    Ok(primes_in(p_min, p_max)?
        .into_iter()
        .map(|p| TableRow {
            n,
            p,
            outcome: PrimeModulus::new(p).and_then(|m| min_sumset(n, m, options)),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use itertools::Itertools;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn rs(p: u64, xs: &[u64]) -> ResidueSet {
        ResidueSet::from_members(pm(p), xs.iter().copied()).unwrap()
    }

    const EXACT: SearchOptions = SearchOptions {
        symmetry: false,
        budget: None,
    };

    /// Full enumeration of n-subsets straight from the definition.
    fn naive(n: usize, p: u64) -> (usize, Vec<u64>) {
        let squares: BTreeSet<u64> = (0..p).map(|a| a * a % p).collect();
        squares
            .into_iter()
            .combinations(n)
            .map(|a| {
                let sums: BTreeSet<u64> =
                    a.iter().flat_map(|x| a.iter().map(move |y| (x + y) % p)).collect();
                (sums.len(), a)
            })
            .min()
            .unwrap()
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        for n in 2..5000u64 {
            let trial = (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "{n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert!(!is_prime(u64::MAX));
        assert_eq!(PrimeModulus::new(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn squares_examples() {
        assert_eq!(squares_mod_p(pm(3)).unwrap().to_vec(), [0, 1]);
        assert_eq!(squares_mod_p(pm(7)).unwrap().to_vec(), [0, 1, 2, 4]);
        let s = squares_mod_p(pm(17)).unwrap();
        assert_eq!(s.to_vec(), [0, 1, 2, 4, 8, 9, 13, 15, 16]);
        assert_eq!(squares_mod_p(pm(2)).unwrap().to_vec(), [0, 1]);
        for p in [5u64, 11, 101, 257, 1009] {
            assert_eq!(squares_mod_p(pm(p)).unwrap().len(), p.div_ceil(2) as usize);
        }
    }

    #[test]
    fn cauchy_davenport_examples() {
        assert_eq!(cauchy_davenport_bound(5, pm(11)), Ok(9));
        assert_eq!(cauchy_davenport_bound(6, pm(11)), Ok(11));
        assert_eq!(cauchy_davenport_bound(1, pm(2)), Ok(1));
        assert_eq!(cauchy_davenport_bound(2, pm(2)), Ok(2));
        assert!(matches!(cauchy_davenport_bound(7, pm(11)), Err(Error::Infeasible { .. })));
        assert!(cauchy_davenport_bound(0, pm(11)).is_err());
    }

    #[test]
    fn progressions() {
        assert!(is_ap_mod_p(&rs(7, &[0, 1, 2])));
        assert!(!is_ap_mod_p(&rs(7, &[1, 2, 4])));
        assert!(!is_ap_mod_p(&rs(13, &[0, 1, 4])));
        // wraps around: 15, 16, 0, 1, 2
        assert!(is_ap_mod_p(&rs(17, &[0, 1, 2, 15, 16])));
        // step 5: 1, 6, 11, 3, 8 mod 13
        assert!(is_ap_mod_p(&rs(13, &[1, 3, 6, 8, 11])));
        assert!(is_ap_mod_p(&rs(13, &[4])));
        assert!(is_ap_mod_p(&rs(13, &[4, 9])));
    }

    #[test]
    fn progression_check_matches_brute_force() {
        let p = 13u64;
        for n in 1..=5 {
            for a in (0..p).combinations(n) {
                let set = rs(p, &a);
                let brute = n == 1
                    || (0..p).any(|s| {
                        (1..p).any(|d| {
                            let ap: BTreeSet<u64> = (0..n as u64).map(|k| (s + k * d) % p).collect();
                            ap == a.iter().copied().collect()
                        })
                    });
                assert_eq!(is_ap_mod_p(&set), brute, "{a:?}");
            }
        }
    }

    #[test]
    fn qr_progressions() {
        let ap = find_qr_ap(pm(41), 5).unwrap().unwrap();
        assert_eq!((ap.start, ap.step), (1, 15));
        assert_eq!(ap.members.to_vec(), [1, 5, 16, 20, 31]);
        assert!(ap.members.is_subset(&squares_mod_p(pm(41)).unwrap()));
        assert_eq!(ap.members.sumset().len(), 9);

        assert_eq!(find_qr_ap(pm(13), 5).unwrap(), None);
        assert_eq!(find_qr_ap(pm(7), 3).unwrap(), None);
        assert_eq!(find_square_ap(pm(7), 3, true).unwrap().unwrap().members.to_vec(), [0, 1, 2]);
        // only through zero at p = 17
        assert_eq!(find_qr_ap(pm(17), 5).unwrap(), None);
        assert!(find_square_ap(pm(17), 5, true).unwrap().is_some());
        assert!(find_qr_ap(pm(41), 2).is_err());
    }

    #[test]
    fn min_sumset_examples() {
        for (n, p, expected) in [(5, 13, 11), (5, 17, 9), (6, 29, 14), (3, 7, 5)] {
            for symmetry in [false, true] {
                let opts = SearchOptions { symmetry, budget: None };
                let r = min_sumset(n, pm(p), opts).unwrap();
                assert_eq!(r.minimum, expected, "n={n} p={p}");
                assert!(r.exact);
                assert_eq!(r.witness.len(), n);
                assert_eq!(r.witness.sumset().len(), expected);
            }
        }
        let r = min_sumset(3, pm(7), EXACT).unwrap();
        assert_eq!(r.witness.to_vec(), [0, 1, 2]);
        assert!(r.early_exit);
        assert!(matches!(min_sumset(3, pm(3), EXACT), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn trivial_sizes() {
        let r = min_sumset(1, pm(2), EXACT).unwrap();
        assert_eq!((r.minimum, r.witness.to_vec()), (1, alloc::vec![0]));
        let r = min_sumset(2, pm(2), EXACT).unwrap();
        assert_eq!(r.minimum, 2);
        let r = min_sumset(2, pm(5), SearchOptions::default()).unwrap();
        assert_eq!((r.minimum, r.witness.to_vec()), (3, alloc::vec![0, 1]));
        // n = |S|: the whole set
        let r = min_sumset(6, pm(11), SearchOptions::default()).unwrap();
        assert_eq!(r.minimum, 11);
        assert_eq!(r.witness.to_vec(), [0, 1, 3, 4, 5, 9]);
    }

    #[test]
    fn matches_naive_enumeration() {
        for p in primes_in(2, 31).unwrap() {
            for n in 1..=5usize.min(pm(p).square_count()) {
                let (min, wit) = naive(n, p);
                for symmetry in [false, true] {
                    let r = min_sumset(n, pm(p), SearchOptions { symmetry, budget: None }).unwrap();
                    assert_eq!(r.minimum, min, "n={n} p={p} symmetry={symmetry}");
                    assert_eq!(r.witness.to_vec(), wit, "n={n} p={p} symmetry={symmetry}");
                }
            }
        }
    }

    #[test]
    fn branches_in_any_order_agree() {
        // run branches back to front: the shared cutoff must not change the answer
        for (n, p) in [(5, 37), (4, 29), (6, 23), (5, 13)] {
            for symmetry in [false, true] {
                let opts = SearchOptions { symmetry, budget: None };
                let forward = min_sumset(n, pm(p), opts).unwrap();
                let search = ZpSearch::new(n, pm(p), opts).unwrap();
                let mut outcomes: Vec<BranchOutcome> = (0..search.branch_count())
                    .rev()
                    .map(|i| search.run_branch(i))
                    .collect();
                outcomes.reverse();
                let backward = search.finish(outcomes).unwrap();
                assert_eq!(forward.minimum, backward.minimum);
                assert_eq!(forward.witness, backward.witness);
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let opts = SearchOptions {
            symmetry: false,
            budget: Some(10_000),
        };
        let r = min_sumset(6, pm(139), opts).unwrap();
        assert!(!r.exact);
        assert!(r.minimum >= 11);
        let tiny = SearchOptions {
            symmetry: false,
            budget: Some(0),
        };
        // finishes before the first budget check
        let r = min_sumset(3, pm(7), tiny).unwrap();
        assert!(r.exact);
        // more than one branch: the second one sees the spent budget
        let r = min_sumset(5, pm(37), SearchOptions { symmetry: false, budget: Some(500) });
        assert!(matches!(r, Err(Error::BudgetExhausted { .. })) || !r.unwrap().exact);
    }

    #[test]
    fn scaling_by_squares_preserves_sumset_size() {
        let p = 101u64;
        let squares = squares_mod_p(pm(p)).unwrap().to_vec();
        for (i, a) in squares.iter().copied().combinations(4).step_by(97).enumerate() {
            let set = rs(p, &a);
            let c = squares[1 + i % (squares.len() - 1)];
            assert_eq!(set.scale(c).sumset().len(), set.sumset().len());
        }
    }

    #[test]
    fn table_rows() {
        let rows = table_scan(5, 11, 41, SearchOptions::default()).unwrap();
        let got: Vec<(u64, usize)> = rows
            .iter()
            .map(|r| (r.p, r.outcome.as_ref().unwrap().minimum))
            .collect();
        assert_eq!(
            got,
            [(11, 10), (13, 11), (17, 9), (19, 10), (23, 9), (29, 10), (31, 10), (37, 10), (41, 9)]
        );

        let rows = table_scan(6, 11, 29, SearchOptions::default()).unwrap();
        let got: Vec<usize> = rows.iter().map(|r| r.outcome.as_ref().unwrap().minimum).collect();
        assert_eq!(got, [11, 13, 12, 13, 12, 14]);

        let rows = table_scan(3, 3, 7, SearchOptions::default()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(matches!(rows[0].outcome, Err(Error::Infeasible { .. })));
        assert_eq!(rows[1].outcome.as_ref().unwrap().minimum, 5);
        assert_eq!(rows[2].outcome.as_ref().unwrap().minimum, 5);

        assert!(table_scan(5, 20, 10, SearchOptions::default()).is_err());
    }
}
