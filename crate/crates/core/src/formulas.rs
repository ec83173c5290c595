//! Closed-form orbit counts over exact integers.
//!
//! Every division here is exact by construction; [`exact_div`] panics if a
//! remainder ever shows up, since that would mean a formula is wrong.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::strings::CubeKind;

/// Arbitrary-precision signed integer used for every count.
pub type ExactInt = BigInt;

/// `F_n` for `n >= -1`, with `F_{-1} = 1`.
pub fn fib(n: i64) -> Result<ExactInt> {
    match n {
        n if n < -1 => Err(Error::below("fib", -1, n)),
        -1 => Ok(BigInt::one()),
        n => Ok(fib_nat(n as u64)),
    }
}

/// `L_n` for `n >= 0`.
pub fn lucas(n: i64) -> Result<ExactInt> {
    if n < 0 {
        return Err(Error::below("lucas", 0, n));
    }
    Ok(lucas_nat(n as u64))
}

fn fib_nat(n: u64) -> BigInt {
    fib_pair(n).0
}

fn lucas_nat(n: u64) -> BigInt {
    // L_n = F_{n-1} + F_{n+1} = 2 F_{n+1} - F_n
    let (f, next) = fib_pair(n);
    (next << 1) - f
}

/// `(F_n, F_{n+1})` by fast doubling.
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * ((&b << 1) - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::below("mobius", 1, 0));
    }
    let mut sign = 1i8;
    for (_, exp) in factorize(n) {
        if exp > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::below("euler_phi", 1, 0));
    }
    Ok(factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1)))
}

/// Positive divisors in ascending order; empty for `n = 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut exp = 0;
            while n % p == 0 {
                n /= p;
                exp += 1;
            }
            out.push((p, exp));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `num / den`, asserting the remainder is zero.
pub fn exact_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    assert!(r.is_zero(), "inexact division {num} / {den}");
    q
}

fn small(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Number of orbits of each size. Sizes absent from the map count zero, and
/// equality ignores explicit zero entries.
#[derive(Debug, Clone, Default)]
pub struct SizeHistogram(BTreeMap<u64, ExactInt>);

impl SizeHistogram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets the count for `size`, keeping explicit zeros.
    pub fn set(&mut self, size: u64, count: ExactInt) {
        self.0.insert(size, count);
    }

    pub fn add(&mut self, size: u64, count: ExactInt) {
        *self.0.entry(size).or_default() += count;
    }

    pub fn get(&self, size: u64) -> ExactInt {
        self.0.get(&size).cloned().unwrap_or_default()
    }

    /// Stored entries in ascending size order, including explicit zeros.
    pub fn entries(&self) -> impl Iterator<Item = (u64, &ExactInt)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    /// Sizes with a nonzero count.
    pub fn support(&self) -> BTreeSet<u64> {
        self.entries()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
            .collect()
    }

    /// `Σ count(k)`: the total number of orbits.
    pub fn orbit_count(&self) -> ExactInt {
        self.0.values().sum()
    }

    /// `Σ k · count(k)`: the number of elements partitioned.
    pub fn element_count(&self) -> ExactInt {
        self.0.iter().map(|(k, c)| small(*k) * c).sum()
    }
}

impl PartialEq for SizeHistogram {
    fn eq(&self, other: &Self) -> bool {
        let nonzero = |h: &SizeHistogram| -> Vec<(u64, ExactInt)> {
            h.entries()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect()
        };
        nonzero(self) == nonzero(other)
    }
}

impl Eq for SizeHistogram {}

impl FromIterator<(u64, ExactInt)> for SizeHistogram {
    fn from_iter<I: IntoIterator<Item = (u64, ExactInt)>>(iter: I) -> Self {
        let mut h = SizeHistogram::new();
        for (k, c) in iter {
            h.add(k, c);
        }
        h
    }
}

impl fmt::Display for SizeHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, c)) in self.entries().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}: {c}")?;
        }
        f.write_str("}")
    }
}

/// Total orbit count together with the per-size breakdown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCounts {
    pub total: ExactInt,
    pub histogram: SizeHistogram,
}

/// `(|V|, |E|)` of the cube of dimension `n`.
pub fn graph_counts(n: u64, kind: CubeKind) -> (ExactInt, ExactInt) {
    match kind {
        CubeKind::Gamma => (fib_nat(n + 2), gamma_edge_count(n)),
        CubeKind::Lambda => {
            let vertices = if n == 0 { BigInt::one() } else { lucas_nat(n) };
            let edges = if n == 0 {
                BigInt::zero()
            } else {
                small(n) * fib_nat(n - 1)
            };
            (vertices, edges)
        }
    }
}

fn gamma_edge_count(n: u64) -> BigInt {
    let num = small(n) * fib_nat(n + 1) + small(2 * (n + 1)) * fib_nat(n);
    exact_div(&num, &small(5))
}

/// Which Fibonacci palindromes [`fib_palindrome_fix`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PalindromeClass {
    All,
    StartsWithZero,
    StartsWithOne,
}

/// Number of Fibonacci strings of length `n >= 1` fixed by reversal,
/// optionally restricted by first character.
pub fn fib_palindrome_fix(n: u64, class: PalindromeClass) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::below("fib_palindrome_fix", 1, 0));
    }
    let k = (n / 2) as i64;
    let index = match (n % 2 == 0, class) {
        (true, PalindromeClass::All) => k + 1,
        (true, PalindromeClass::StartsWithZero) => k,
        (true, PalindromeClass::StartsWithOne) => k - 1,
        (false, PalindromeClass::All) => k + 3,
        (false, PalindromeClass::StartsWithZero) => k + 2,
        (false, PalindromeClass::StartsWithOne) => k + 1,
    };
    fib(index)
}

/// `F_{⌊(n - (-1)^n)/2⌋ + 2}`: the number of Fibonacci palindromes of length `n`.
fn gamma_palindromes(n: u64) -> BigInt {
    let idx = if n % 2 == 0 { n / 2 + 1 } else { (n + 1) / 2 + 2 };
    fib_nat(idx)
}

/// Vertex orbits of the Fibonacci cube under `{id, β}`, for `n >= 2`.
pub fn gamma_vertex_orbits(n: u64) -> Result<OrbitCounts> {
    if n < 2 {
        return Err(Error::below("gamma_vertex_orbits", 2, n as i64));
    }
    let fixed = gamma_palindromes(n);
    let vertices = fib_nat(n + 2);
    let pairs = exact_div(&(&vertices - &fixed), &small(2));
    let total = exact_div(&(&vertices + &fixed), &small(2));
    let mut histogram = SizeHistogram::new();
    histogram.set(1, fixed);
    histogram.set(2, pairs);
    Ok(OrbitCounts { total, histogram })
}

/// Edge orbits of the Fibonacci cube, for all `n >= 0`.
pub fn gamma_edge_orbits(n: u64) -> OrbitCounts {
    // (1 - (-1)^n)/2 · F_{⌊(n+1)/2⌋}
    let fixed = if n % 2 == 1 {
        fib_nat((n + 1) / 2)
    } else {
        BigInt::zero()
    };
    let edges = gamma_edge_count(n);
    let pairs = exact_div(&(&edges - &fixed), &small(2));
    let total = &fixed + &pairs;
    let mut histogram = SizeHistogram::new();
    histogram.set(1, fixed);
    histogram.set(2, pairs);
    OrbitCounts { total, histogram }
}

/// Binary necklaces of length `n >= 1` with no two cyclically adjacent 1s:
/// `(1/n) Σ_{d|n} φ(n/d) L_d`.
pub fn necklace_count(n: u64) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::below("necklace_count", 1, 0));
    }
    let sum: BigInt = divisors(n)
        .into_iter()
        .map(|d| small(euler_phi(n / d).expect("n/d >= 1")) * lucas_nat(d))
        .sum();
    Ok(exact_div(&sum, &small(n)))
}

/// Number of vertex orbits of the Lucas cube under the dihedral group, for
/// `n >= 1`.
pub fn lambda_vertex_orbit_total(n: u64) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::below("lambda_vertex_orbit_total", 1, 0));
    }
    let half = n / 2;
    let reflective: BigInt = (0..=half)
        .map(|a| binomial(half - (a + 1) / 2, a / 2))
        .sum();
    let sum = necklace_count(n)? + reflective;
    Ok(exact_div(&sum, &small(2)))
}

/// Counts of primitive, primitive symmetric and asymmetric Lucas strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LucasClasses {
    pub primitive: ExactInt,
    pub primitive_symmetric: ExactInt,
    pub asymmetric: ExactInt,
}

/// `(p_n, s_n, a_n)` by Möbius inversion over divisors of `n >= 1`.
pub fn lucas_string_classes(n: u64) -> Result<LucasClasses> {
    if n == 0 {
        return Err(Error::below("lucas_string_classes", 1, 0));
    }
    let mut primitive = BigInt::zero();
    let mut symmetric_sum = BigInt::zero();
    let mut asymmetric = BigInt::zero();
    for d in divisors(n) {
        let mu = BigInt::from(mobius(n / d)?);
        if mu.is_zero() {
            continue;
        }
        let l = lucas_nat(d);
        let f = fib_nat(d / 2 + 2);
        asymmetric += &mu * (&l - small(n) * &f);
        primitive += &mu * l;
        symmetric_sum += &mu * f;
    }
    Ok(LucasClasses {
        primitive,
        primitive_symmetric: small(n) * symmetric_sum,
        asymmetric,
    })
}

/// Orbit sizes occurring among Lucas strings of length `n >= 1`:
/// `{k >= 1 : k | n} ∪ {k >= 18 : k | 2n}`.
pub fn lambda_vertex_orbit_size_set(n: u64) -> Result<BTreeSet<u64>> {
    if n == 0 {
        return Err(Error::below("lambda_vertex_orbit_size_set", 1, 0));
    }
    let mut sizes: BTreeSet<u64> = divisors(n).into_iter().collect();
    sizes.extend(divisors(2 * n).into_iter().filter(|&k| k >= 18));
    Ok(sizes)
}

/// Number of vertex orbits of size `k` in the Lucas cube of dimension
/// `n >= 1`. Zero whenever `k` does not divide `2n`.
pub fn lambda_vertex_orbit_count(n: u64, k: u64) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::below("lambda_vertex_orbit_count", 1, 0));
    }
    if k == 0 || (2 * n) % k != 0 {
        return Ok(BigInt::zero());
    }
    let strings = if n % k == 0 {
        let s_k = lucas_string_classes(k)?.primitive_symmetric;
        if k % 2 == 0 {
            s_k + lucas_string_classes(k / 2)?.asymmetric
        } else {
            s_k
        }
    } else {
        lucas_string_classes(k / 2)?.asymmetric
    };
    Ok(exact_div(&strings, &small(k)))
}

/// Vertex orbits of the Lucas cube: the closed-form total and the per-size
/// counts for every divisor of `2n`.
pub fn lambda_vertex_orbits(n: u64) -> Result<OrbitCounts> {
    let total = lambda_vertex_orbit_total(n)?;
    let mut histogram = SizeHistogram::new();
    for k in divisors(2 * n) {
        histogram.set(k, lambda_vertex_orbit_count(n, k)?);
    }
    Ok(OrbitCounts { total, histogram })
}

/// Edge orbits of the Lucas cube for `n >= 1`; all have size `n` or `2n`.
pub fn lambda_edge_orbits(n: u64) -> Result<OrbitCounts> {
    if n == 0 {
        return Err(Error::below("lambda_edge_orbits", 1, 0));
    }
    // F_{⌊(n+1+(-1)^n)/2⌋}
    let idx = if n % 2 == 0 { n / 2 + 1 } else { n / 2 };
    let size_n = fib_nat(idx);
    let all = fib_nat(n - 1);
    let size_2n = exact_div(&(&all - &size_n), &small(2));
    let total = exact_div(&(&all + &size_n), &small(2));
    debug_assert!(!size_2n.is_negative());
    let mut histogram = SizeHistogram::new();
    histogram.set(n, size_n);
    histogram.set(2 * n, size_2n);
    Ok(OrbitCounts { total, histogram })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn hist(pairs: &[(u64, i64)]) -> SizeHistogram {
        pairs.iter().map(|&(k, c)| (k, big(c))).collect()
    }

    #[test]
    fn fibonacci_and_lucas() {
        assert_eq!(fib(10).unwrap(), big(55));
        assert_eq!(fib(-1).unwrap(), big(1));
        assert_eq!(fib(0).unwrap(), big(0));
        assert!(fib(-2).is_err());
        assert_eq!(lucas(9).unwrap(), big(76));
        assert_eq!(lucas(0).unwrap(), big(2));
        assert!(lucas(-1).is_err());
        // F_93 no longer fits in a u64
        assert_eq!(fib(93).unwrap().to_string(), "12200160415121876738");
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(mobius(9).unwrap(), 0);
        assert_eq!(mobius(3).unwrap(), -1);
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert!(mobius(0).is_err());
        assert_eq!(euler_phi(12).unwrap(), 4);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert!(euler_phi(0).is_err());
        assert_eq!(divisors(18), vec![1, 2, 3, 6, 9, 18]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert!(divisors(0).is_empty());
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(2, 5), big(0));
        assert_eq!(binomial(0, 0), big(1));
    }

    #[test]
    fn graph_count_examples() {
        assert_eq!(graph_counts(5, CubeKind::Gamma), (big(13), big(20)));
        assert_eq!(graph_counts(9, CubeKind::Lambda), (big(76), big(189)));
        assert_eq!(graph_counts(0, CubeKind::Lambda), (big(1), big(0)));
        assert_eq!(graph_counts(0, CubeKind::Gamma), (big(1), big(0)));
    }

    #[test]
    fn palindrome_counts() {
        assert_eq!(fib_palindrome_fix(4, PalindromeClass::All).unwrap(), big(2));
        assert_eq!(fib_palindrome_fix(5, PalindromeClass::All).unwrap(), big(5));
        assert_eq!(fib_palindrome_fix(5, PalindromeClass::StartsWithOne).unwrap(), big(2));
        // n = 1: both "0" and "1"; n = 2: only "00"
        assert_eq!(fib_palindrome_fix(1, PalindromeClass::All).unwrap(), big(2));
        assert_eq!(fib_palindrome_fix(2, PalindromeClass::All).unwrap(), big(1));
        assert_eq!(fib_palindrome_fix(2, PalindromeClass::StartsWithOne).unwrap(), big(0));
        assert!(fib_palindrome_fix(0, PalindromeClass::All).is_err());
    }

    #[test]
    fn gamma_vertex_examples() {
        let o = gamma_vertex_orbits(5).unwrap();
        assert_eq!(o.total, big(9));
        assert_eq!(o.histogram, hist(&[(1, 5), (2, 4)]));
        let o = gamma_vertex_orbits(15).unwrap();
        assert_eq!(o.total, big(826));
        assert_eq!(o.histogram, hist(&[(1, 55), (2, 771)]));
        let o = gamma_vertex_orbits(2).unwrap();
        assert_eq!(o.total, big(2));
        assert_eq!(o.histogram, hist(&[(1, 1), (2, 1)]));
        assert!(gamma_vertex_orbits(1).is_err());
    }

    #[test]
    fn gamma_edge_examples() {
        let o = gamma_edge_orbits(5);
        assert_eq!(o.total, big(11));
        assert_eq!(o.histogram, hist(&[(1, 2), (2, 9)]));
        let o = gamma_edge_orbits(14);
        assert_eq!(o.total, big(1985));
        assert_eq!(o.histogram.get(1), big(0));
        assert_eq!(o.histogram.get(2), big(1985));
        assert_eq!(gamma_edge_orbits(0).total, big(0));
        assert_eq!(gamma_edge_orbits(1).histogram, hist(&[(1, 1)]));
    }

    #[test]
    fn lambda_vertex_examples() {
        assert_eq!(lambda_vertex_orbit_total(5).unwrap(), big(3));
        assert_eq!(lambda_vertex_orbit_total(12).unwrap(), big(26));
        assert_eq!(lambda_vertex_orbit_total(18).unwrap(), big(209));
        assert!(lambda_vertex_orbit_total(0).is_err());
    }

    #[test]
    fn necklaces() {
        assert_eq!(necklace_count(2).unwrap(), big(2));
        assert_eq!(necklace_count(5).unwrap(), big(3));
        assert_eq!(necklace_count(1).unwrap(), big(1));
        assert!(necklace_count(0).is_err());
    }

    #[test]
    fn lucas_classes_examples() {
        let expect = |n, p, s, a| {
            assert_eq!(
                lucas_string_classes(n).unwrap(),
                LucasClasses {
                    primitive: big(p),
                    primitive_symmetric: big(s),
                    asymmetric: big(a)
                },
                "n = {n}"
            );
        };
        expect(9, 72, 54, 18);
        expect(12, 300, 180, 120);
        expect(8, 40, 40, 0);
        expect(1, 1, 1, 0);
    }

    #[test]
    fn orbit_size_sets() {
        let set = |xs: &[u64]| xs.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(lambda_vertex_orbit_size_set(9).unwrap(), set(&[1, 3, 9, 18]));
        assert_eq!(lambda_vertex_orbit_size_set(6).unwrap(), set(&[1, 2, 3, 6]));
        assert_eq!(
            lambda_vertex_orbit_size_set(12).unwrap(),
            set(&[1, 2, 3, 4, 6, 12, 24])
        );
    }

    #[test]
    fn lambda_vertex_counts() {
        assert_eq!(lambda_vertex_orbit_count(9, 9).unwrap(), big(6));
        assert_eq!(lambda_vertex_orbit_count(9, 18).unwrap(), big(1));
        assert_eq!(lambda_vertex_orbit_count(9, 6).unwrap(), big(0));
        assert_eq!(lambda_vertex_orbit_count(9, 4).unwrap(), big(0));
        assert_eq!(lambda_vertex_orbit_count(9, 0).unwrap(), big(0));
        let o = lambda_vertex_orbits(9).unwrap();
        assert_eq!(o.histogram, hist(&[(1, 1), (3, 1), (9, 6), (18, 1)]));
        assert_eq!(o.total, big(9));
    }

    #[test]
    fn lambda_edge_examples() {
        let o = lambda_edge_orbits(9).unwrap();
        assert_eq!(o.total, big(12));
        assert_eq!(o.histogram, hist(&[(9, 3), (18, 9)]));
        let o = lambda_edge_orbits(4).unwrap();
        assert_eq!(o.total, big(2));
        assert_eq!(o.histogram.get(4), big(2));
        assert_eq!(o.histogram.get(8), big(0));
        let o = lambda_edge_orbits(16).unwrap();
        assert_eq!(o.total, big(322));
        assert_eq!(o.histogram, hist(&[(16, 34), (32, 288)]));
        assert_eq!(lambda_edge_orbits(1).unwrap().total, big(0));
    }

    #[test]
    fn histogram_equality_ignores_zeros() {
        let mut a = hist(&[(1, 3)]);
        a.set(2, big(0));
        assert_eq!(a, hist(&[(1, 3)]));
        assert_eq!(a.support(), [1].into_iter().collect());
        assert_eq!(a.to_string(), "{1: 3, 2: 0}");
        assert_ne!(a, hist(&[(1, 2)]));
    }

    #[test]
    #[should_panic(expected = "inexact division")]
    fn exact_div_rejects_remainders() {
        exact_div(&big(7), &big(2));
    }
}
