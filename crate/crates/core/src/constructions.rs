//! Explicit square sets with small sumsets, and the bounded scans around
//! them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_traits::Signed;

use crate::arith::{exact_sqrt, is_square_u64};
use crate::curve::{ap_to_point, ApTriple, CurveParam, CurvePoint};
use crate::sumset::{sumset, SquareSet};
use crate::{Error, Integer, Rational, Result};

/// Common difference of the seed progression `1, 25, 49`.
pub const SEED_DIFFERENCE: u32 = 24;

/// Union of progression blocks generated by repeatedly doubling the point
/// of `1, 25, 49` on `y² = x³ − 576x`.
#[derive(Clone, Debug)]
pub struct EcFamily {
    pub points: Vec<CurvePoint>,
    pub blocks: Vec<ApTriple>,
    pub set: SquareSet,
}

fn seed_point() -> Result<CurvePoint> {
    let param = CurveParam::from(SEED_DIFFERENCE);
    let seed = ApTriple::new(1.into(), 5.into(), 7.into(), &param)?;
    ap_to_point(&seed)
}

/// Point/block pairs `P_1, P_2 = 2P_1, …` for `count` blocks.
fn blocks(count: usize) -> Result<(Vec<CurvePoint>, Vec<ApTriple>)> {
    let mut points = Vec::with_capacity(count);
    let mut blocks = Vec::with_capacity(count);
    let mut p = seed_point()?;
    for i in 0..count {
        blocks.push(p.to_ap()?);
        if i + 1 < count {
            let next = p.double()?;
            points.push(p);
            p = next;
        } else {
            points.push(p.clone());
        }
    }
    Ok((points, blocks))
}

pub fn build_ec_family(n: usize) -> Result<EcFamily> {
    if n == 0 {
        return Err(Error::InvalidArgument("family needs at least one block".into()));
    }
    let (points, blocks) = blocks(n)?;
    let mut set = SquareSet::new();
    for b in &blocks {
        for r in b.roots() {
            set.insert_root(r).map_err(|_| Error::Collision {
                expected: 3 * n,
                got: set.len(),
            })?;
        }
    }
    Ok(EcFamily {
        points,
        blocks,
        set,
    })
}

/// The general-size family: `n = m / 3` full blocks plus the first
/// `m mod 3` squares of the next block, with its measured sumset size and
/// the closed-form bound it is compared against.
#[derive(Clone, Debug)]
pub struct RemainderFamily {
    pub size: usize,
    pub full_blocks: usize,
    pub remainder: usize,
    pub set: SquareSet,
    pub sumset_size: usize,
    /// `(5n² + n)/2`, `(5n² + 9n + 2)/2` or `(5n² + 13n + 6)/2` by remainder.
    pub formula_bound: usize,
    /// `5n(n + 1)/2`; only present when the size is a multiple of three.
    pub block_bound: Option<usize>,
}

impl RemainderFamily {
    pub fn within_formula(&self) -> bool {
        self.sumset_size <= self.formula_bound
    }
}

pub fn block_bound(n: usize) -> usize {
    5 * n * (n + 1) / 2
}

pub fn remainder_formula(n: usize, r: usize) -> usize {
    match r {
        0 => (5 * n * n + n) / 2,
        1 => (5 * n * n + 9 * n + 2) / 2,
        _ => (5 * n * n + 13 * n + 6) / 2,
    }
}

pub fn build_ec_family_rem(m: usize) -> Result<RemainderFamily> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!("size {m} < 4")));
    }
    let (n, r) = (m / 3, m % 3);
    let set = if r == 0 {
        build_ec_family(n)?.set
    } else {
        let (_, blocks) = blocks(n + 1)?;
        let mut set = SquareSet::new();
        let roots = blocks[..n]
            .iter()
            .flat_map(|b| b.roots())
            .chain(blocks[n].roots().into_iter().take(r));
        for root in roots {
            set.insert_root(root).map_err(|_| Error::Collision {
                expected: m,
                got: set.len(),
            })?;
        }
        set
    };
    let sumset_size = sumset(&set.to_set())?.len();
    Ok(RemainderFamily {
        size: m,
        full_blocks: n,
        remainder: r,
        set,
        sumset_size,
        formula_bound: remainder_formula(n, r),
        block_bound: (r == 0).then(|| block_bound(n)),
    })
}

/// `{a + m₁n₁ + … + m_d n_d : 0 ≤ mᵢ < kᵢ}` where `kᵢ` counts the values of
/// `mᵢ`, so a 3×3 progression has `sizes = [3, 3]` and nine elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GapDescriptor {
    base: Integer,
    steps: Vec<Integer>,
    sizes: Vec<usize>,
}

impl GapDescriptor {
    pub fn new(base: Integer, steps: Vec<Integer>, sizes: Vec<usize>) -> Result<Self> {
        if steps.is_empty() || steps.len() != sizes.len() {
            return Err(Error::InvalidArgument(format!(
                "{} steps for {} sizes",
                steps.len(),
                sizes.len()
            )));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidArgument("sizes must be at least 1".into()));
        }
        Ok(GapDescriptor { base, steps, sizes })
    }

    pub fn base(&self) -> &Integer {
        &self.base
    }

    pub fn steps(&self) -> &[Integer] {
        &self.steps
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn dimension(&self) -> usize {
        self.steps.len()
    }

    pub fn volume(&self) -> usize {
        self.sizes.iter().product()
    }

    /// The progression generating `A + A`: base `2a`, same steps, sizes
    /// `2kᵢ − 1`. `|A + A|` reaches `∏(2kᵢ − 1)` exactly when this one is
    /// proper.
    pub fn doubled(&self) -> GapDescriptor {
        GapDescriptor {
            base: &self.base + &self.base,
            steps: self.steps.clone(),
            sizes: self.sizes.iter().map(|k| 2 * k - 1).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapElements {
    /// One entry per index vector, first coordinate varying slowest.
    pub generated: Vec<Integer>,
    pub distinct: BTreeSet<Integer>,
    /// No two index vectors give the same value.
    pub proper: bool,
}

pub fn gap_elements(g: &GapDescriptor) -> GapElements {
    let mut generated = Vec::with_capacity(g.volume());
    let mut idx = alloc::vec![0usize; g.dimension()];
    'outer: loop {
        let mut v = g.base.clone();
        for (m, step) in idx.iter().zip(&g.steps) {
            v += step * Integer::from(*m);
        }
        generated.push(v);
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < g.sizes[k] {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    let distinct: BTreeSet<Integer> = generated.iter().cloned().collect();
    let proper = distinct.len() == generated.len();
    GapElements {
        generated,
        distinct,
        proper,
    }
}

/// Bounded scan for proper generalized progressions with many squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapSearch {
    pub sizes: Vec<usize>,
    pub base_max: u64,
    pub step_max: u64,
    pub min_squares: usize,
}

impl GapSearch {
    /// Base in `[0, bound]`, every step in `[1, bound]`.
    pub fn new(sizes: Vec<usize>, bound: u64, min_squares: usize) -> Result<Self> {
        Self::with_bounds(sizes, bound, bound, min_squares)
    }

    pub fn with_bounds(
        sizes: Vec<usize>,
        base_max: u64,
        step_max: u64,
        min_squares: usize,
    ) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidArgument("sizes must be non-empty and positive".into()));
        }
        if step_max == 0 {
            return Err(Error::InvalidArgument("bound must be at least 1".into()));
        }
        let volume = sizes.iter().try_fold(1u64, |acc, &k| acc.checked_mul(k as u64));
        let largest = sizes.iter().try_fold(base_max, |acc, &k| {
            step_max.checked_mul(k as u64 - 1).and_then(|s| acc.checked_add(s))
        });
        if volume.is_none() || largest.is_none() {
            return Err(Error::InvalidArgument("scan range overflows u64".into()));
        }
        Ok(GapSearch {
            sizes,
            base_max,
            step_max,
            min_squares,
        })
    }

    pub fn bases(&self) -> RangeInclusive<u64> {
        0..=self.base_max
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapHit {
    pub base: u64,
    pub steps: Vec<u64>,
    pub sizes: Vec<usize>,
    /// Generated elements, ascending.
    pub elements: Vec<u64>,
    pub square_count: usize,
}

impl GapHit {
    pub fn descriptor(&self) -> GapDescriptor {
        GapDescriptor::new(
            self.base.into(),
            self.steps.iter().map(|&s| s.into()).collect(),
            self.sizes.clone(),
        )
        .expect("hit came from a valid search")
    }
}

/// Odometer step over `[1, max]^d`, last coordinate fastest. Returns false
/// after the last vector.
fn advance(steps: &mut [u64], max: u64) -> bool {
    for s in steps.iter_mut().rev() {
        if *s < max {
            *s += 1;
            return true;
        }
        *s = 1;
    }
    false
}

/// Every hit with base in `bases` (clipped to the search bounds), in
/// ascending `(base, steps)` order.
pub fn scan_gap_bases(search: &GapSearch, bases: RangeInclusive<u64>) -> Vec<GapHit> {
    let dim = search.sizes.len();
    let volume: usize = search.sizes.iter().product();
    let mut hits = Vec::new();
    if search.min_squares > volume {
        return hits;
    }
    let lo = *bases.start();
    let hi = (*bases.end()).min(search.base_max);
    let mut elements = Vec::with_capacity(volume);
    let mut steps = alloc::vec![1u64; dim];
    if lo > hi {
        return hits;
    }
    for base in lo..=hi {
        steps.iter_mut().for_each(|s| *s = 1);
        loop {
            elements.clear();
            let mut idx = alloc::vec![0usize; dim];
            'gen: loop {
                let v = base + idx.iter().zip(&steps).map(|(&m, &s)| m as u64 * s).sum::<u64>();
                elements.push(v);
                for k in (0..dim).rev() {
                    idx[k] += 1;
                    if idx[k] < search.sizes[k] {
                        continue 'gen;
                    }
                    idx[k] = 0;
                }
                break;
            }
            let square_count = elements.iter().filter(|&&v| is_square_u64(v)).count();
            if square_count >= search.min_squares {
                elements.sort_unstable();
                let proper = elements.windows(2).all(|w| w[0] != w[1]);
                if proper {
                    hits.push(GapHit {
                        base,
                        steps: steps.clone(),
                        sizes: search.sizes.clone(),
                        elements: elements.clone(),
                        square_count,
                    });
                }
            }
            if !advance(&mut steps, search.step_max) {
                break;
            }
        }
    }
    hits
}

pub fn search_gap_of_squares(search: &GapSearch) -> Vec<GapHit> {
    scan_gap_bases(search, search.bases())
}

/// A 3×3 grid whose rows, columns and diagonals share one sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicSquare3 {
    grid: [[Integer; 3]; 3],
    magic_constant: Integer,
}

/// The eight line sums: rows, columns, main diagonal, anti-diagonal.
pub fn line_sums(g: &[[Integer; 3]; 3]) -> [Integer; 8] {
    let row = |i: usize| &g[i][0] + &g[i][1] + &g[i][2];
    let col = |j: usize| &g[0][j] + &g[1][j] + &g[2][j];
    [
        row(0),
        row(1),
        row(2),
        col(0),
        col(1),
        col(2),
        &g[0][0] + &g[1][1] + &g[2][2],
        &g[0][2] + &g[1][1] + &g[2][0],
    ]
}

impl MagicSquare3 {
    pub fn new(grid: [[Integer; 3]; 3]) -> Result<Self> {
        let sums = line_sums(&grid);
        if sums.iter().any(|s| *s != sums[0]) {
            return Err(Error::InvalidArgument(format!("line sums differ: {sums:?}")));
        }
        let magic_constant = sums[0].clone();
        Ok(MagicSquare3 {
            grid,
            magic_constant,
        })
    }

    pub fn grid(&self) -> &[[Integer; 3]; 3] {
        &self.grid
    }

    pub fn magic_constant(&self) -> &Integer {
        &self.magic_constant
    }

    /// Entries that are perfect squares, with their roots, row-major.
    pub fn square_entries(&self) -> Vec<(usize, usize, Integer)> {
        let mut out = Vec::new();
        for (i, row) in self.grid.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if let Some(r) = exact_sqrt(v) {
                    out.push((i, j, r));
                }
            }
        }
        out
    }
}

const MAGIC7_ROOTS: [[Option<u32>; 3]; 3] = [
    [Some(373), Some(289), Some(565)],
    [None, Some(425), Some(23)],
    [Some(205), Some(527), None],
];

/// Middle-left entry as it has to be for every line to sum to 541875.
pub const MAGIC7_MIDDLE_LEFT: u64 = 360_721;
pub const MAGIC7_BOTTOM_RIGHT: u64 = 222_121;
/// Middle-left entry as usually printed; it breaks the second row.
pub const MAGIC7_MIDDLE_LEFT_MISPRINT: u64 = 360_761;

fn magic7_grid_with(middle_left: u64) -> [[Integer; 3]; 3] {
    let fill = [[0, 0, 0], [middle_left, 0, 0], [0, 0, MAGIC7_BOTTOM_RIGHT]];
    core::array::from_fn(|i| {
        core::array::from_fn(|j| match MAGIC7_ROOTS[i][j] {
            Some(r) => Integer::from(r) * Integer::from(r),
            None => Integer::from(fill[i][j]),
        })
    })
}

/// The misprinted grid, for negative checks.
pub fn magic7_grid_misprinted() -> [[Integer; 3]; 3] {
    magic7_grid_with(MAGIC7_MIDDLE_LEFT_MISPRINT)
}

/// The known 3×3 magic square with seven square entries.
pub fn magic7_square() -> MagicSquare3 {
    MagicSquare3::new(magic7_grid_with(MAGIC7_MIDDLE_LEFT)).expect("grid is magic")
}

/// The seven square entries of [`magic7_square`].
pub fn magic7_set() -> SquareSet {
    let roots: Vec<Rational> = MAGIC7_ROOTS
        .iter()
        .flatten()
        .flatten()
        .map(|&r| Rational::from(i64::from(r)))
        .collect();
    SquareSet::from_roots(&roots).expect("distinct roots")
}

/// Which of the four cuboid diagonals are integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuboidReport {
    pub edges: [Integer; 3],
    /// Roots of `a² + b²`, `a² + c²`, `b² + c²`.
    pub face_diagonals: [Option<Integer>; 3],
    /// Root of `a² + b² + c²`.
    pub space_diagonal: Option<Integer>,
}

impl CuboidReport {
    pub fn is_euler_brick(&self) -> bool {
        self.face_diagonals.iter().all(Option::is_some)
    }

    pub fn is_perfect(&self) -> bool {
        self.is_euler_brick() && self.space_diagonal.is_some()
    }
}

pub fn check_perfect_cuboid(a: &Integer, b: &Integer, c: &Integer) -> Result<CuboidReport> {
    for e in [a, b, c] {
        if !e.is_positive() {
            return Err(Error::InvalidArgument(format!("edge {e} is not positive")));
        }
    }
    let (a2, b2, c2) = (a * a, b * b, c * c);
    let face_diagonals = [
        exact_sqrt(&(&a2 + &b2)),
        exact_sqrt(&(&a2 + &c2)),
        exact_sqrt(&(&b2 + &c2)),
    ];
    let space_diagonal = exact_sqrt(&(&a2 + &b2 + &c2));
    Ok(CuboidReport {
        edges: [a.clone(), b.clone(), c.clone()],
        face_diagonals,
        space_diagonal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sumset::report;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn int(n: i64) -> Integer {
        Integer::from(n)
    }

    #[test]
    fn ec_family_small() {
        let f = build_ec_family(1).unwrap();
        assert_eq!(f.set.to_set(), [q("1"), q("25"), q("49")].into_iter().collect());

        let f = build_ec_family(2).unwrap();
        let expected: BTreeSet<Rational> = ["1", "5", "7", "1151/70", "1201/70", "1249/70"]
            .iter()
            .map(|r| q(r).square())
            .collect();
        assert_eq!(f.set.to_set(), expected);
        assert_eq!(f.points[1].x(), &q("25"));

        let f = build_ec_family(3).unwrap();
        assert_eq!(f.set.len(), 9);
        assert!(report(&f.set).unwrap().sumset_size <= 30);

        assert!(build_ec_family(0).is_err());
    }

    #[test]
    fn blocks_share_the_difference() {
        let f = build_ec_family(4).unwrap();
        let d = q("24");
        for b in &f.blocks {
            let [a2, b2, c2] = b.squares();
            assert_eq!(&b2 - &a2, d);
            assert_eq!(&c2 - &b2, d);
        }
    }

    #[test]
    fn disjoint_blocks_have_five_cross_sums() {
        let f = build_ec_family(4).unwrap();
        for (i, bi) in f.blocks.iter().enumerate() {
            for bj in &f.blocks[i + 1..] {
                let cross: BTreeSet<Rational> = bi
                    .squares()
                    .iter()
                    .flat_map(|x| bj.squares().map(|y| x + &y))
                    .collect();
                assert_eq!(cross.len(), 5);
            }
        }
    }

    #[test]
    fn remainder_families() {
        let r = build_ec_family_rem(4).unwrap();
        assert_eq!((r.size, r.full_blocks, r.remainder, r.set.len()), (4, 1, 1, 4));
        assert_eq!(r.formula_bound, 8);
        // {1, 25, 49, (1151/70)²}: 5 sums inside the block plus 4 new ones
        assert_eq!(r.sumset_size, 9);
        assert!(!r.within_formula());

        let r = build_ec_family_rem(5).unwrap();
        assert_eq!(r.set.len(), 5);
        assert_eq!(r.formula_bound, 12);

        let r = build_ec_family_rem(6).unwrap();
        assert_eq!(r.block_bound, Some(15));
        assert_eq!(r.set, build_ec_family(2).unwrap().set);

        assert!(build_ec_family_rem(3).is_err());
    }

    #[test]
    fn formulas() {
        assert_eq!(remainder_formula(1, 0), 3);
        assert_eq!(remainder_formula(2, 0), 11);
        assert_eq!(remainder_formula(1, 1), 8);
        assert_eq!(remainder_formula(1, 2), 12);
        assert_eq!(remainder_formula(2, 1), 20);
        assert_eq!(block_bound(3), 30);
    }

    #[test]
    fn gap_examples() {
        let g = GapDescriptor::new(int(0), alloc::vec![int(1)], alloc::vec![4]).unwrap();
        let e = gap_elements(&g);
        assert_eq!(e.distinct, (0..4).map(int).collect());
        assert!(e.proper);

        let g = GapDescriptor::new(int(0), alloc::vec![int(1), int(2)], alloc::vec![3, 3]).unwrap();
        let e = gap_elements(&g);
        assert_eq!(e.generated.len(), 9);
        assert_eq!(e.distinct.len(), 7);
        assert!(!e.proper);

        assert!(GapDescriptor::new(int(0), alloc::vec![], alloc::vec![]).is_err());
        assert!(GapDescriptor::new(int(0), alloc::vec![int(1)], alloc::vec![0]).is_err());
        assert!(GapDescriptor::new(int(0), alloc::vec![int(1)], alloc::vec![2, 2]).is_err());
    }

    #[test]
    fn three_by_three_gap_sumsets() {
        let as_rationals = |e: &GapElements| -> BTreeSet<Rational> {
            e.distinct.iter().cloned().map(Rational::from).collect()
        };
        for (a, s1, s2) in [(1, 24, 7), (5, 2, 100), (-3, 10, 11), (0, 1, 5)] {
            let g = GapDescriptor::new(int(a), alloc::vec![int(s1), int(s2)], alloc::vec![3, 3])
                .unwrap();
            let e = gap_elements(&g);
            assert!(e.proper);
            assert!(gap_elements(&g.doubled()).proper);
            assert_eq!(e.distinct.len(), 9);
            assert_eq!(sumset(&as_rationals(&e)).unwrap().len(), 25);
        }
        // proper, but its sums collide: {0..8} + {0..8} = {0..16}
        let g = GapDescriptor::new(int(0), alloc::vec![int(1), int(3)], alloc::vec![3, 3]).unwrap();
        let e = gap_elements(&g);
        assert!(e.proper && !gap_elements(&g.doubled()).proper);
        assert_eq!(sumset(&as_rationals(&e)).unwrap().len(), 17);
    }

    #[test]
    fn doubled_gap_generates_the_sumset() {
        for (a, steps) in [(0, [1, 3]), (1, [24, 7]), (2, [4, 6]), (-1, [5, 5])] {
            let g = GapDescriptor::new(int(a), steps.iter().map(|&s| int(s)).collect(), alloc::vec![3, 2])
                .unwrap();
            let e = gap_elements(&g);
            let direct: BTreeSet<Integer> = e
                .distinct
                .iter()
                .flat_map(|x| e.distinct.iter().map(move |y| x + y))
                .collect();
            assert_eq!(gap_elements(&g.doubled()).distinct, direct);
        }
    }

    #[test]
    fn gap_search_examples() {
        let hits = search_gap_of_squares(&GapSearch::new(alloc::vec![2], 50, 2).unwrap());
        assert!(hits.iter().any(|h| h.base == 9 && h.steps == [7]));
        assert!(hits.iter().all(|h| h.square_count == 2));

        let hits = search_gap_of_squares(&GapSearch::new(alloc::vec![3], 30, 3).unwrap());
        assert!(hits.iter().any(|h| h.base == 1 && h.steps == [24] && h.elements == [1, 25, 49]));

        let hits = search_gap_of_squares(&GapSearch::new(alloc::vec![3, 3], 30, 9).unwrap());
        assert!(hits.is_empty());

        let hits = search_gap_of_squares(&GapSearch::new(alloc::vec![4], 200, 4).unwrap());
        assert!(hits.is_empty());
    }

    #[test]
    fn gap_search_matches_brute_force() {
        // independent enumeration straight from the definition
        let search = GapSearch::new(alloc::vec![2, 2], 12, 3).unwrap();
        let mut expected = Vec::new();
        for base in 0..=12u64 {
            for s1 in 1..=12u64 {
                for s2 in 1..=12u64 {
                    let mut els = [base, base + s2, base + s1, base + s1 + s2];
                    els.sort();
                    let distinct = els.windows(2).all(|w| w[0] != w[1]);
                    let sq = els.iter().filter(|&&v| (0..=40u64).any(|r| r * r == v)).count();
                    if distinct && sq >= 3 {
                        expected.push((base, [s1, s2], els.to_vec()));
                    }
                }
            }
        }
        let got: Vec<_> = search_gap_of_squares(&search)
            .into_iter()
            .map(|h| (h.base, [h.steps[0], h.steps[1]], h.elements))
            .collect();
        assert_eq!(got, expected);
        assert!(!got.is_empty());

        let split: Vec<_> = [0..=4u64, 5..=9, 10..=12]
            .into_iter()
            .flat_map(|r| scan_gap_bases(&search, r))
            .collect();
        assert_eq!(split, search_gap_of_squares(&search));
    }

    #[test]
    fn gap_search_rejects() {
        assert!(GapSearch::new(alloc::vec![], 5, 1).is_err());
        assert!(GapSearch::new(alloc::vec![3], 0, 1).is_err());
        assert!(GapSearch::with_bounds(alloc::vec![3], u64::MAX, 2, 1).is_err());
    }

    #[test]
    fn magic_square() {
        let m = magic7_square();
        assert_eq!(m.magic_constant(), &int(541_875));
        assert_eq!(int(373 * 373 + 289 * 289 + 565 * 565), int(541_875));
        assert!(line_sums(m.grid()).iter().all(|s| *s == int(541_875)));
        assert_eq!(m.square_entries().len(), 7);

        let bad = line_sums(&magic7_grid_misprinted());
        assert_eq!(bad[1], int(541_915));
        assert!(MagicSquare3::new(magic7_grid_misprinted()).is_err());

        let set = magic7_set();
        assert_eq!(set.len(), 7);
        assert_eq!(report(&set).unwrap().sumset_size, 19);
        for (_, _, r) in m.square_entries() {
            assert!(set.contains(&Rational::from(&r * &r)));
        }
    }

    #[test]
    fn cuboids() {
        let r = check_perfect_cuboid(&int(44), &int(117), &int(240)).unwrap();
        assert_eq!(r.face_diagonals, [Some(int(125)), Some(int(244)), Some(int(267))]);
        assert_eq!(r.space_diagonal, None);
        assert!(r.is_euler_brick() && !r.is_perfect());

        let r = check_perfect_cuboid(&int(3), &int(4), &int(12)).unwrap();
        assert_eq!(r.face_diagonals, [Some(int(5)), None, None]);
        assert_eq!(r.space_diagonal, Some(int(13)));

        let r = check_perfect_cuboid(&int(1), &int(1), &int(1)).unwrap();
        assert_eq!(r.face_diagonals, [None, None, None]);
        assert_eq!(r.space_diagonal, None);

        assert!(check_perfect_cuboid(&int(0), &int(1), &int(1)).is_err());
    }

    #[test]
    fn cuboid_values_satisfy_equations() {
        for a in 1..40i64 {
            for b in a..40 {
                let c = b + 1;
                let r = check_perfect_cuboid(&int(a), &int(b), &int(c)).unwrap();
                let sums = [a * a + b * b, a * a + c * c, b * b + c * c];
                for (d, s) in r.face_diagonals.iter().zip(sums) {
                    if let Some(d) = d {
                        assert_eq!(d * d, int(s));
                    }
                }
                if let Some(g) = &r.space_diagonal {
                    assert_eq!(g * g, int(a * a + b * b + c * c));
                }
            }
        }
    }
}
