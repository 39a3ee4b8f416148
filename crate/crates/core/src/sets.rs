//! Ground set types over Z and Z_m, structural predicates, and the affine
//! symmetry machinery used by the search module.
//!
//! `ZmSet` stores a subset of Z_m as a modulus plus a dense membership
//! bitmask; `IntSet` stores a finite set of integers as a strictly
//! increasing vector. Both are immutable values in practice: every
//! operation returns a fresh set.

use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Default cap on the modulus (and on integer bitset windows).
pub const DEFAULT_MAX_MODULUS: u64 = 1_000_000;

/// Build-configurable modulus cap: set `ZMSET_MAX_MODULUS` at compile time.
pub fn max_modulus() -> u64 {
    match option_env!("ZMSET_MAX_MODULUS") {
        Some(s) => s.parse().unwrap_or(DEFAULT_MAX_MODULUS),
        None => DEFAULT_MAX_MODULUS,
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// A subset of Z_m = {0, 1, ..., m-1}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZmSet {
    modulus: u64,
    bits: Bits,
}

impl ZmSet {
    pub fn empty(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let cap = max_modulus();
        if modulus > cap {
            return Err(Error::ModulusTooLarge { m: modulus, max: cap });
        }
        Ok(ZmSet {
            modulus,
            bits: Bits::new(modulus as usize),
        })
    }

    /// Builds a set from residues, reducing each element mod m.
    /// Duplicates (after reduction) collapse; this is set semantics.
    pub fn from_elements<I: IntoIterator<Item = u64>>(modulus: u64, elements: I) -> Result<Self> {
        let mut s = ZmSet::empty(modulus)?;
        for e in elements {
            s.insert(e % modulus);
        }
        Ok(s)
    }

    /// The singleton {0}, the identity for Minkowski addition.
    pub fn zero(modulus: u64) -> Result<Self> {
        ZmSet::from_elements(modulus, [0])
    }

    pub(crate) fn from_bits(modulus: u64, bits: Bits) -> Self {
        debug_assert_eq!(bits.width(), modulus as usize);
        ZmSet { modulus, bits }
    }

    /// Builds a set from the low `m` bits of a mask. Search-scale helper.
    pub(crate) fn from_mask(modulus: u64, mask: u64) -> Self {
        debug_assert!(modulus <= 64);
        let mut bits = Bits::new(modulus as usize);
        for i in 0..modulus {
            if mask >> i & 1 == 1 {
                bits.set(i as usize);
            }
        }
        ZmSet { modulus, bits }
    }

    pub(crate) fn bits(&self) -> &Bits {
        &self.bits
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        x < self.modulus && self.bits.get(x as usize)
    }

    pub fn insert(&mut self, x: u64) {
        self.bits.set((x % self.modulus) as usize);
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.ones().map(|i| i as u64)
    }

    pub fn elements(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// The image {u*a + c mod m : a in A}. Requires gcd(u, m) = 1, so the
    /// map is a bijection of Z_m and cardinality is preserved.
    pub fn affine_image(&self, unit: u64, shift: u64) -> Result<ZmSet> {
        let m = self.modulus;
        if gcd_u64(unit % m, m) != 1 {
            return Err(Error::NotAUnit { u: unit, m });
        }
        let mut bits = Bits::new(m as usize);
        for a in self.iter() {
            let image = (((unit as u128 * a as u128) + shift as u128) % m as u128) as usize;
            bits.set(image);
        }
        Ok(ZmSet::from_bits(m, bits))
    }

    /// The least set in the orbit {uA + c : gcd(u,m)=1, c in Z_m} under the
    /// element-wise lexicographic order (the order implemented by `Ord`).
    /// Idempotent and constant on orbits. Cost is O(phi(m) * k^2) set
    /// builds, intended for search scale.
    pub fn canonical_form(&self) -> ZmSet {
        let m = self.modulus;
        if self.is_empty() {
            return self.clone();
        }
        let elems = self.elements();
        let mut best: Option<ZmSet> = None;
        for unit in 1..=m {
            if gcd_u64(unit % m, m) != 1 {
                continue;
            }
            let image: Vec<u64> =
                elems.iter().map(|&a| ((unit as u128 * a as u128) % m as u128) as u64).collect();
            // The minimum over translations must map some element to 0:
            // a candidate containing 0 precedes every candidate that does not.
            for &pivot in &image {
                let mut bits = Bits::new(m as usize);
                for &x in &image {
                    bits.set(((x + m - pivot) % m) as usize);
                }
                let candidate = ZmSet::from_bits(m, bits);
                if best.as_ref().is_none_or(|b| candidate < *b) {
                    best = Some(candidate);
                }
            }
        }
        best.unwrap()
    }

    /// If A = {a + i*d mod m : 0 <= i < k} for k distinct residues, returns
    /// the least such (a, d) scanning d ascending then a ascending.
    /// Singletons report (a, 0); size-2 sets are always progressions.
    pub fn arithmetic_progression(&self) -> Option<(u64, u64)> {
        let m = self.modulus;
        let k = self.len();
        if k == 0 {
            return None;
        }
        if k == 1 {
            return Some((self.iter().next().unwrap(), 0));
        }
        for step in 1..m {
            // a + i*step must hit k distinct residues.
            if (m / gcd_u64(step, m)) < k as u64 {
                continue;
            }
            'start: for start in 0..m {
                let mut x = start;
                for _ in 0..k {
                    if !self.contains(x) {
                        continue 'start;
                    }
                    x = (x + step) % m;
                }
                return Some((start, step));
            }
        }
        None
    }
}

/// Element-wise lexicographic order: at the first residue where membership
/// differs, the set containing it sorts first. For equal cardinalities this
/// is lexicographic order on the sorted element lists.
impl Ord for ZmSet {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.modulus, other.modulus);
        for (a, b) in self.bits.words().iter().zip(other.bits.words()) {
            if a != b {
                let diff = a ^ b;
                let low = diff & diff.wrapping_neg();
                return if a & low != 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for ZmSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for ZmSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ZmSet", 2)?;
        s.serialize_field("modulus", &self.modulus)?;
        s.serialize_field("elements", &self.elements())?;
        s.end()
    }
}

/// A finite set of integers, stored strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct IntSet {
    elems: Vec<i64>,
}

impl IntSet {
    /// Sorts and deduplicates: set semantics.
    pub fn new(mut elems: Vec<i64>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        IntSet { elems }
    }

    pub(crate) fn from_sorted(elems: Vec<i64>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        IntSet { elems }
    }

    pub fn zero() -> Self {
        IntSet { elems: vec![0] }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[i64] {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elems.iter().copied()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<i64> {
        self.elems.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.elems.last().copied()
    }

    /// Translates the minimum to 0 and divides by the gcd of the nonzero
    /// elements. Returns (normalized set, gcd, offset). Needs at least two
    /// elements, otherwise the gcd of differences is undefined.
    pub fn normalize(&self) -> Result<(IntSet, i64, i64)> {
        if self.len() < 2 {
            return Err(Error::hypothesis("normalize", "a set with at least 2 elements"));
        }
        let offset = self.elems[0];
        let mut g: i64 = 0;
        for &a in &self.elems[1..] {
            g = gcd_i64(g, a - offset);
        }
        debug_assert!(g >= 1);
        let elems = self.elems.iter().map(|&a| (a - offset) / g).collect();
        Ok((IntSet::from_sorted(elems), g, offset))
    }

    /// True when the first element is 0 and the gcd of the elements is 1;
    /// the hypothesis under which the growth theorems are stated.
    pub fn is_normalized(&self) -> bool {
        if self.len() < 2 || self.elems[0] != 0 {
            return false;
        }
        let mut g: i64 = 0;
        for &a in &self.elems[1..] {
            g = gcd_i64(g, a);
        }
        g == 1
    }

    /// The common difference when the set is an arithmetic progression.
    /// Sets of size 1 (reported as 0) and 2 (the gap) always qualify.
    pub fn arithmetic_progression(&self) -> Option<i64> {
        match self.elems.len() {
            0 => None,
            1 => Some(0),
            _ => {
                let step = self.elems[1] - self.elems[0];
                if self.elems.windows(2).all(|w| w[1] - w[0] == step) {
                    Some(step)
                } else {
                    None
                }
            }
        }
    }
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elems.iter())
    }
}

/// A positive-remainder division n = u*d + v with v in [1, d].
/// When d divides n this forces v = d and u = n/d - 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct RemainderDecomposition {
    pub d: u64,
    pub u: u64,
    pub v: u64,
}

pub fn positive_remainder(n: u64, d: u64) -> Result<RemainderDecomposition> {
    if n == 0 || d == 0 {
        return Err(Error::hypothesis("positive_remainder", "n >= 1 and d >= 1"));
    }
    let r = n % d;
    let (u, v) = if r == 0 { (n / d - 1, d) } else { (n / d, r) };
    debug_assert_eq!(u * d + v, n);
    Ok(RemainderDecomposition { d, u, v })
}

/// Positive divisors of m, ascending.
pub fn divisors(m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// The order-d subgroup {0, m/d, ..., (d-1)(m/d)} of Z_m.
pub fn subgroup(m: u64, d: u64) -> Result<ZmSet> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if d == 0 || m % d != 0 {
        return Err(Error::NotADivisor { d, m });
    }
    let step = m / d;
    ZmSet::from_elements(m, (0..d).map(|j| j * step))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
        assert_eq!(divisors(0), Err(Error::ZeroModulus));
    }

    #[test]
    fn subgroup_examples() {
        assert_eq!(subgroup(12, 3).unwrap().elements(), vec![0, 4, 8]);
        assert_eq!(subgroup(12, 1).unwrap().elements(), vec![0]);
        assert_eq!(subgroup(8, 4).unwrap().elements(), vec![0, 2, 4, 6]);
        assert!(subgroup(12, 5).is_err());
    }

    #[test]
    fn positive_remainder_examples() {
        let r = positive_remainder(4, 3).unwrap();
        assert_eq!((r.u, r.v), (1, 1));
        let r = positive_remainder(6, 3).unwrap();
        assert_eq!((r.u, r.v), (1, 3));
        let r = positive_remainder(2, 5).unwrap();
        assert_eq!((r.u, r.v), (0, 2));
    }

    #[test]
    fn normalize_examples() {
        let (a, g, off) = IntSet::new(vec![3, 5, 9]).normalize().unwrap();
        assert_eq!((a.elements(), g, off), (&[0i64, 1, 3][..], 2, 3));
        let (a, g, off) = IntSet::new(vec![0, 1, 3]).normalize().unwrap();
        assert_eq!((a.elements(), g, off), (&[0i64, 1, 3][..], 1, 0));
        let (a, g, off) = IntSet::new(vec![10, 20, 30]).normalize().unwrap();
        assert_eq!((a.elements(), g, off), (&[0i64, 1, 2][..], 10, 10));
        assert!(IntSet::new(vec![5]).normalize().is_err());
    }

    #[test]
    fn ap_integers_examples() {
        assert_eq!(IntSet::new(vec![3, 5, 7, 9]).arithmetic_progression(), Some(2));
        assert_eq!(IntSet::new(vec![0, 1, 3]).arithmetic_progression(), None);
        assert_eq!(IntSet::new(vec![4]).arithmetic_progression(), Some(0));
        assert_eq!(IntSet::new(vec![2, 9]).arithmetic_progression(), Some(7));
    }

    #[test]
    fn ap_mod_examples() {
        let a = ZmSet::from_elements(12, [0, 4, 8]).unwrap();
        assert_eq!(a.arithmetic_progression(), Some((0, 4)));

        // Exhaustion over all (start, step) pairs finds nothing.
        let b = ZmSet::from_elements(12, [0, 1, 4, 8]).unwrap();
        assert_eq!(b.arithmetic_progression(), None);

        // {0,1,4} in Z_5 is 4,0,1 with step 1.
        let c = ZmSet::from_elements(5, [1, 4, 0]).unwrap();
        assert_eq!(c.arithmetic_progression(), Some((4, 1)));
    }

    #[test]
    fn ap_mod_rejects_short_cycles() {
        // {0,3} with step 3 in Z_6 cycles with order 2; a 3-term walk must
        // not claim {0,3,x} is a progression by revisiting elements.
        let a = ZmSet::from_elements(6, [0, 1, 3]).unwrap();
        assert_eq!(a.arithmetic_progression(), None);
    }

    #[test]
    fn affine_image_examples() {
        let a = ZmSet::from_elements(5, [0, 1, 2]).unwrap();
        assert_eq!(a.affine_image(2, 0).unwrap().elements(), vec![0, 2, 4]);
        assert_eq!(a.affine_image(1, 0).unwrap(), a);
        let b = ZmSet::from_elements(6, [0, 2, 4]).unwrap();
        assert_eq!(b.affine_image(1, 1).unwrap().elements(), vec![1, 3, 5]);
        assert!(b.affine_image(2, 0).is_err());
    }

    #[test]
    fn canonical_form_examples() {
        let a = ZmSet::from_elements(6, [1, 3, 5]).unwrap();
        assert_eq!(a.canonical_form().elements(), vec![0, 2, 4]);
        let b = ZmSet::from_elements(5, [0, 2, 4]).unwrap();
        assert_eq!(b.canonical_form().elements(), vec![0, 1, 2]);
        let c = a.canonical_form();
        assert_eq!(c.canonical_form(), c);
    }

    #[test]
    fn zm_set_order_is_element_lex() {
        let a = ZmSet::from_elements(6, [0, 1, 2]).unwrap();
        let b = ZmSet::from_elements(6, [0, 2, 4]).unwrap();
        let c = ZmSet::from_elements(6, [1, 3, 5]).unwrap();
        assert!(a < b && b < c);
    }

    #[test]
    fn modulus_cap_enforced() {
        assert!(ZmSet::empty(max_modulus()).is_ok());
        assert!(matches!(
            ZmSet::empty(max_modulus() + 1),
            Err(Error::ModulusTooLarge { .. })
        ));
    }

    proptest! {
        #[test]
        fn positive_remainder_reconstructs(n in 1u64..10_000, d in 1u64..10_000) {
            let r = positive_remainder(n, d).unwrap();
            prop_assert_eq!(r.u * r.d + r.v, n);
            prop_assert!(r.v >= 1 && r.v <= d);
        }

        #[test]
        fn normalize_postconditions(elems in prop::collection::btree_set(-1000i64..1000, 2..8)) {
            let a = IntSet::new(elems.into_iter().collect());
            let (n, g, off) = a.normalize().unwrap();
            prop_assert_eq!(n.min(), Some(0));
            prop_assert!(n.is_normalized());
            prop_assert!(g >= 1);
            prop_assert_eq!(off, a.min().unwrap());
            let back: Vec<i64> = n.iter().map(|x| x * g + off).collect();
            prop_assert_eq!(back, a.elements().to_vec());
        }

        #[test]
        fn affine_preserves_cardinality_and_orbit(
            mask in 1u64..(1 << 10),
            unit in 1u64..10,
            shift in 0u64..10,
        ) {
            let m = 10;
            let a = ZmSet::from_mask(m, mask);
            if gcd_u64(unit, m) == 1 {
                let b = a.affine_image(unit, shift).unwrap();
                prop_assert_eq!(a.len(), b.len());
                prop_assert_eq!(a.canonical_form(), b.canonical_form());
                prop_assert_eq!(
                    a.arithmetic_progression().is_some(),
                    b.arithmetic_progression().is_some()
                );
            }
        }
    }
}
