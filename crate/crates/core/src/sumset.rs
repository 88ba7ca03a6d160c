//! Sumsets over the rationals.

use alloc::collections::{btree_map, BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use num_integer::Integer as _;
use num_traits::One;

use crate::{Error, Integer, Rational, Result};

/// A finite set of rational squares, each paired with its non-negative root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SquareSet {
    roots: BTreeMap<Rational, Rational>,
}

impl SquareSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `root²`. Fails if that square is already present.
    pub fn insert_root(&mut self, root: &Rational) -> Result<()> {
        let square = root.square();
        match self.roots.entry(square) {
            btree_map::Entry::Occupied(e) => Err(Error::Duplicate(e.key().to_string())),
            btree_map::Entry::Vacant(e) => {
                e.insert(root.abs());
                Ok(())
            }
        }
    }

    /// Inserts a value that must be a rational square.
    pub fn insert(&mut self, value: Rational) -> Result<()> {
        let root = value
            .as_square_root()
            .ok_or_else(|| Error::NotSquare(value.to_string()))?;
        self.insert_root(&root)
    }

    pub fn from_roots<'a, I: IntoIterator<Item = &'a Rational>>(roots: I) -> Result<Self> {
        let mut set = Self::new();
        for r in roots {
            set.insert_root(r)?;
        }
        Ok(set)
    }

    pub fn from_values<I: IntoIterator<Item = Rational>>(values: I) -> Result<Self> {
        let mut set = Self::new();
        for v in values {
            set.insert(v)?;
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.roots.contains_key(value)
    }

    pub fn root(&self, value: &Rational) -> Option<&Rational> {
        self.roots.get(value)
    }

    /// Elements in ascending order.
    pub fn values(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.roots.keys()
    }

    /// `(element, root)` pairs in ascending element order.
    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &Rational)> + '_ {
        self.roots.iter()
    }

    pub fn to_set(&self) -> BTreeSet<Rational> {
        self.roots.keys().cloned().collect()
    }

    pub fn is_integral(&self) -> bool {
        self.roots.keys().all(Rational::is_integer)
    }

    /// Multiplies every element by `factor²`.
    pub fn scale_by_square(&self, factor: &Rational) -> Result<SquareSet> {
        if factor.is_zero() {
            return Err(Error::ZeroScale);
        }
        let roots: Vec<Rational> = self.roots.values().map(|r| r * factor).collect();
        SquareSet::from_roots(&roots)
    }
}

/// `A + A = {a + b : a, b ∈ A}`, including `a = b`.
pub fn sumset(set: &BTreeSet<Rational>) -> Result<BTreeSet<Rational>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let elems: Vec<&Rational> = set.iter().collect();
    let mut out = BTreeSet::new();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i..] {
            out.insert(*a + *b);
        }
    }
    Ok(out)
}

/// `{t·a : a ∈ A}` for `t ≠ 0`.
pub fn scale(set: &BTreeSet<Rational>, t: &Rational) -> Result<BTreeSet<Rational>> {
    if t.is_zero() {
        return Err(Error::ZeroScale);
    }
    Ok(set.iter().map(|a| a * t).collect())
}

/// Scales by `L²`, `L` the lcm of the root denominators, giving an integral
/// square set with the same sumset size.
pub fn clear_denominators(set: &SquareSet) -> SquareSet {
    let lcm = set
        .roots
        .values()
        .fold(Integer::one(), |acc, r| acc.lcm(r.denom()));
    if lcm.is_one() {
        return set.clone();
    }
    set.scale_by_square(&Rational::from_integer(lcm))
        .expect("scaling by a nonzero square is injective")
}

/// Sumset of a square set together with the trivial bounds
/// `2n − 1 ≤ |A + A| ≤ n(n + 1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumsetReport {
    pub source_size: usize,
    pub sumset_size: usize,
    pub sumset: BTreeSet<Rational>,
    pub lower_bound: usize,
    pub upper_bound: usize,
}

pub fn report(set: &SquareSet) -> Result<SumsetReport> {
    report_values(&set.to_set())
}

/// [`report`] for an arbitrary set of rationals. The bounds hold for any
/// finite set in an ordered field, squares or not.
pub fn report_values(set: &BTreeSet<Rational>) -> Result<SumsetReport> {
    let sums = sumset(set)?;
    let n = set.len();
    let lower = 2 * n - 1;
    let upper = n * (n + 1) / 2;
    let size = sums.len();
    if size < lower || size > upper {
        return Err(Error::BoundViolation {
            size,
            lower,
            upper,
        });
    }
    Ok(SumsetReport {
        source_size: n,
        sumset_size: size,
        sumset: sums,
        lower_bound: lower,
        upper_bound: upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> BTreeSet<Rational> {
        items.iter().map(|s| q(s)).collect()
    }

    fn squares(roots: &[&str]) -> SquareSet {
        let roots: Vec<Rational> = roots.iter().map(|s| q(s)).collect();
        SquareSet::from_roots(&roots).unwrap()
    }

    #[test]
    fn sumset_examples() {
        let s = sumset(&set(&["1", "25", "49"])).unwrap();
        assert_eq!(s, set(&["2", "26", "50", "74", "98"]));

        assert_eq!(sumset(&set(&["3/7"])).unwrap(), set(&["6/7"]));

        let s = sumset(&set(&["49", "169", "289", "529"])).unwrap();
        assert_eq!(
            s,
            set(&["98", "218", "338", "458", "578", "698", "818", "1058"])
        );

        assert_eq!(sumset(&BTreeSet::new()), Err(Error::EmptySet));
    }

    #[test]
    fn scale_examples() {
        let a = set(&["1", "25", "49"]);
        let b = scale(&a, &q("4")).unwrap();
        assert_eq!(b, set(&["4", "100", "196"]));
        assert_eq!(sumset(&b).unwrap().len(), 5);

        let a: BTreeSet<_> = ["31/12", "41/12", "49/12"].iter().map(|r| q(r).square()).collect();
        assert_eq!(scale(&a, &q("144")).unwrap(), set(&["961", "1681", "2401"]));

        assert_eq!(scale(&a, &q("1")).unwrap(), a);
        assert_eq!(scale(&a, &q("0")), Err(Error::ZeroScale));
    }

    #[test]
    fn clear_denominator_examples() {
        let b = clear_denominators(&squares(&["31/12", "41/12", "49/12"]));
        assert_eq!(b.to_set(), set(&["961", "1681", "2401"]));
        assert_eq!(b.root(&q("961")), Some(&q("31")));

        let a = squares(&["1", "5", "7"]);
        assert_eq!(clear_denominators(&a), a);

        let b = clear_denominators(&squares(&["1/2", "1/3"]));
        assert_eq!(b.to_set(), set(&["9", "4"]));
    }

    #[test]
    fn report_examples() {
        let r = report(&squares(&["1", "5", "7"])).unwrap();
        assert_eq!((r.source_size, r.sumset_size, r.lower_bound, r.upper_bound), (3, 5, 5, 6));

        let r = report(&squares(&["7", "13", "17", "23"])).unwrap();
        assert_eq!((r.source_size, r.sumset_size, r.lower_bound, r.upper_bound), (4, 8, 7, 10));

        let r = report(&squares(&["2/3"])).unwrap();
        assert_eq!((r.source_size, r.sumset_size, r.lower_bound, r.upper_bound), (1, 1, 1, 1));

        assert_eq!(report(&SquareSet::new()), Err(Error::EmptySet));
    }

    #[test]
    fn square_set_rejects() {
        let mut s = SquareSet::new();
        s.insert(q("4/9")).unwrap();
        assert_eq!(s.insert(q("4/9")), Err(Error::Duplicate("4/9".into())));
        // −2/3 has the same square
        assert!(s.insert_root(&q("-2/3")).is_err());
        assert_eq!(s.insert(q("2")), Err(Error::NotSquare("2".into())));
        assert_eq!(s.insert(q("-4")), Err(Error::NotSquare("-4".into())));
        assert_eq!(s.root(&q("4/9")), Some(&q("2/3")));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-500i64..500, 1i64..60).prop_map(|(n, d)| Rational::new(n.into(), d.into()).unwrap())
    }

    fn rational_set() -> impl Strategy<Value = BTreeSet<Rational>> {
        proptest::collection::btree_set(small_rational(), 1..9)
    }

    fn root_set() -> impl Strategy<Value = SquareSet> {
        proptest::collection::btree_set(small_rational().prop_map(|r| r.abs()), 1..9)
            .prop_map(|roots| SquareSet::from_roots(&roots).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn scaling_preserves_cardinality(a in rational_set(), t in small_rational()) {
            prop_assume!(!t.is_zero());
            let scaled = scale(&a, &t).unwrap();
            prop_assert_eq!(scaled.len(), a.len());
            prop_assert_eq!(sumset(&scaled).unwrap().len(), sumset(&a).unwrap().len());
        }

        #[test]
        fn bounds_sandwich(a in rational_set()) {
            let n = a.len();
            let size = sumset(&a).unwrap().len();
            prop_assert!(2 * n - 1 <= size && size <= n * (n + 1) / 2);
            prop_assert!(report_values(&a).is_ok());
        }

        #[test]
        fn clearing_is_integral_and_preserves_size(a in root_set()) {
            let b = clear_denominators(&a);
            prop_assert!(b.is_integral());
            prop_assert!(b.iter().all(|(v, r)| r.is_integer() && r.square() == *v));
            prop_assert_eq!(b.len(), a.len());
            prop_assert_eq!(report(&b).unwrap().sumset_size, report(&a).unwrap().sumset_size);
        }

        #[test]
        fn monotone_under_inclusion(b in rational_set(), keep in proptest::collection::vec(any::<bool>(), 9)) {
            let a: BTreeSet<_> = b.iter().zip(&keep).filter(|(_, k)| **k).map(|(x, _)| x.clone()).collect();
            prop_assume!(!a.is_empty());
            prop_assert!(sumset(&a).unwrap().len() <= sumset(&b).unwrap().len());
        }
    }
}
