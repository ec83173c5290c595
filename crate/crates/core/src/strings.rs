//! Binary strings as vertices of Fibonacci and Lucas cubes, and the dihedral
//! group acting on them.
//!
//! Strings are packed into a `u64` with the first character in the most
//! significant of the `len` low bits, so numeric order on strings of equal
//! length coincides with lexicographic order. Positions are 0-based
//! throughout.
//!
//! The cyclic shift `α` moves the last character to the front and the
//! reversal `β` reads the string backwards. [`DihedralElement`] represents
//! `α^j` or `α^j ∘ β`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::divisors;

/// Longest string a [`CubeString`] can hold.
pub const MAX_LEN: usize = 64;

/// Which family of cube a string or graph belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubeKind {
    /// Fibonacci cube: no two consecutive 1s.
    Gamma,
    /// Lucas cube: no two cyclically consecutive 1s.
    Lambda,
}

impl fmt::Display for CubeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeKind::Gamma => f.write_str("gamma"),
            CubeKind::Lambda => f.write_str("lambda"),
        }
    }
}

#[inline]
const fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// A binary string of length at most [`MAX_LEN`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeString {
    bits: u64,
    len: u8,
}

impl CubeString {
    pub const EMPTY: CubeString = CubeString { bits: 0, len: 0 };

    /// Builds a string of length `len` from the low `len` bits of `bits`;
    /// higher bits are discarded.
    pub fn from_bits(bits: u64, len: usize) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::TooLong(len));
        }
        Ok(CubeString {
            bits: bits & mask(len),
            len: len as u8,
        })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::from_bits(0, len)
    }

    pub fn from_bit_slice(bits: &[u8]) -> Result<Self> {
        if bits.len() > MAX_LEN {
            return Err(Error::TooLong(bits.len()));
        }
        let mut packed = 0u64;
        for &b in bits {
            packed = match b {
                0 => packed << 1,
                1 => (packed << 1) | 1,
                other => return Err(Error::InvalidBit(char::from(b'0'.wrapping_add(other)))),
            };
        }
        Self::from_bits(packed, bits.len())
    }

    /// Packed value; the first character is bit `len - 1`.
    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Character at 0-based position `i` (counted from the left).
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.bits >> (self.len() - 1 - i)) & 1) as u8
    }

    pub fn to_bit_vec(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.bit(i)).collect()
    }

    pub fn with_bit_flipped(&self, i: usize) -> Self {
        debug_assert!(i < self.len());
        CubeString {
            bits: self.bits ^ (1u64 << (self.len() - 1 - i)),
            len: self.len,
        }
    }

    /// Number of 1s.
    #[inline]
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// No occurrence of `11`.
    #[inline]
    pub fn is_fibonacci(&self) -> bool {
        self.bits & (self.bits >> 1) == 0
    }

    /// Fibonacci and not both starting and ending with 1. The one-character
    /// string `1` starts and ends with 1, so it is not a Lucas string.
    pub fn is_lucas(&self) -> bool {
        if !self.is_fibonacci() {
            return false;
        }
        self.is_empty() || !(self.bit(0) == 1 && self.bit(self.len() - 1) == 1)
    }

    pub fn is_valid(&self, kind: CubeKind) -> bool {
        match kind {
            CubeKind::Gamma => self.is_fibonacci(),
            CubeKind::Lambda => self.is_lucas(),
        }
    }

    /// `α^j`: cyclic shift moving the last `j` characters to the front.
    /// `j` is reduced mod the length; the empty string is returned unchanged.
    pub fn rotate(&self, j: usize) -> Self {
        let n = self.len();
        if n == 0 {
            return *self;
        }
        let j = j % n;
        if j == 0 {
            return *self;
        }
        CubeString {
            bits: ((self.bits >> j) | (self.bits << (n - j))) & mask(n),
            len: self.len,
        }
    }

    /// `β`: the reversed string.
    pub fn reverse(&self) -> Self {
        if self.is_empty() {
            return *self;
        }
        CubeString {
            bits: self.bits.reverse_bits() >> (64 - self.len()),
            len: self.len,
        }
    }

    /// Applies a dihedral element; rejects the empty string and shifts `>= n`.
    pub fn apply(&self, g: DihedralElement) -> Result<Self> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyString);
        }
        if g.shift >= n {
            return Err(Error::ShiftOutOfRange { shift: g.shift, n });
        }
        Ok(g.act(self))
    }

    pub fn concat(&self, other: &CubeString) -> Result<Self> {
        let len = self.len() + other.len();
        if len > MAX_LEN {
            return Err(Error::TooLong(len));
        }
        let shifted = if other.len() >= 64 { 0 } else { self.bits << other.len() };
        Self::from_bits(shifted | other.bits, len)
    }

    /// `self` repeated `k` times.
    pub fn power(&self, k: usize) -> Result<Self> {
        let len = self.len() * k;
        if len > MAX_LEN {
            return Err(Error::TooLong(len));
        }
        let mut out = CubeString::EMPTY;
        for _ in 0..k {
            out = out.concat(self)?;
        }
        Ok(out)
    }

    /// First `len` characters.
    pub fn prefix(&self, len: usize) -> Self {
        debug_assert!(len <= self.len());
        CubeString {
            bits: self.bits >> (self.len() - len),
            len: len as u8,
        }
    }

    /// Period, exponent, root and the symmetry class of the root.
    pub fn decompose(&self) -> Result<PeriodDecomposition> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyString);
        }
        // The period divides n, so only divisors need testing.
        let period = divisors(n as u64)
            .into_iter()
            .map(|d| d as usize)
            .find(|&d| self.rotate(d) == *self)
            .unwrap_or(n);
        let root = self.prefix(period);
        let symmetry = if primitive_is_symmetric(&root) {
            Symmetry::Symmetric
        } else {
            Symmetry::Asymmetric
        };
        Ok(PeriodDecomposition {
            period,
            exponent: n / period,
            root,
            symmetry,
        })
    }

    pub fn period(&self) -> Result<usize> {
        Ok(self.decompose()?.period)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.decompose()?.exponent == 1)
    }

    /// Whether the dihedral orbit has fewer than `2n` elements, decided on
    /// the root.
    pub fn is_symmetric(&self) -> Result<bool> {
        Ok(self.decompose()?.symmetry == Symmetry::Symmetric)
    }

    /// Size of the dihedral orbit: the period if the root is symmetric,
    /// twice the period otherwise.
    pub fn orbit_size(&self) -> Result<usize> {
        Ok(self.decompose()?.orbit_size())
    }

    /// All images under the `2n` dihedral elements.
    pub fn dihedral_orbit(&self) -> Result<BTreeSet<CubeString>> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyString);
        }
        Ok(DihedralElement::all(n).map(|g| g.act(self)).collect())
    }

    /// Lexicographically least element of the dihedral orbit.
    pub fn canonical_rep(&self) -> Result<CubeString> {
        let n = self.len();
        if n == 0 {
            return Err(Error::EmptyString);
        }
        Ok(DihedralElement::all(n)
            .map(|g| g.act(self))
            .min()
            .expect("dihedral group is nonempty"))
    }

    /// `"0"`/`"1"` characters with nothing for the empty string.
    pub fn to_machine_string(&self) -> String {
        (0..self.len())
            .map(|i| if self.bit(i) == 1 { '1' } else { '0' })
            .collect()
    }
}

/// Tests a primitive string for symmetry: `β(r) = α^j(r)` for some `j`.
fn primitive_is_symmetric(root: &CubeString) -> bool {
    let reversed = root.reverse();
    (0..root.len()).any(|j| root.rotate(j) == reversed)
}

impl Ord for CubeString {
    /// Lexicographic order with `0 < 1`; a proper prefix sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len().min(other.len());
        let a = self.prefix(common).bits;
        let b = other.prefix(common).bits;
        a.cmp(&b).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for CubeString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CubeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.to_machine_string())
        }
    }
}

impl fmt::Debug for CubeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubeString({self})")
    }
}

impl FromStr for CubeString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "ε" {
            return Ok(CubeString::EMPTY);
        }
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        CubeString::from_bit_slice(&bits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodDecomposition {
    /// Least `k > 0` with `α^k(u) = u`.
    pub period: usize,
    /// Largest `k` with `u = v^k`.
    pub exponent: usize,
    /// The primitive string whose `exponent`-th power is `u`.
    pub root: CubeString,
    /// Symmetry class of the root, which is also that of `u`'s orbit.
    pub symmetry: Symmetry,
}

impl PeriodDecomposition {
    pub fn orbit_size(&self) -> usize {
        match self.symmetry {
            Symmetry::Symmetric => self.period,
            Symmetry::Asymmetric => 2 * self.period,
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.exponent == 1
    }
}

/// An element of the dihedral group `D_n`: `α^shift`, or `α^shift ∘ β` when
/// `reflected` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    pub shift: usize,
    pub reflected: bool,
}

impl DihedralElement {
    pub const IDENTITY: DihedralElement = DihedralElement {
        shift: 0,
        reflected: false,
    };

    /// `α`
    pub const ALPHA: DihedralElement = DihedralElement {
        shift: 1,
        reflected: false,
    };

    /// `β`
    pub const BETA: DihedralElement = DihedralElement {
        shift: 0,
        reflected: true,
    };

    pub fn rotation(shift: usize) -> Self {
        DihedralElement {
            shift,
            reflected: false,
        }
    }

    pub fn reflection(shift: usize) -> Self {
        DihedralElement {
            shift,
            reflected: true,
        }
    }

    /// The `2n` elements of `D_n`: rotations first, then reflections.
    pub fn all(n: usize) -> impl Iterator<Item = DihedralElement> {
        (0..n)
            .map(DihedralElement::rotation)
            .chain((0..n).map(DihedralElement::reflection))
    }

    /// `self ∘ other` in `D_n` (apply `other` first), using `βα = α⁻¹β`.
    pub fn compose(self, other: DihedralElement, n: usize) -> DihedralElement {
        let shift = if self.reflected {
            (self.shift + n - other.shift % n) % n
        } else {
            (self.shift + other.shift) % n
        };
        DihedralElement {
            shift,
            reflected: self.reflected ^ other.reflected,
        }
    }

    pub fn inverse(self, n: usize) -> DihedralElement {
        if self.reflected {
            self
        } else {
            DihedralElement::rotation((n - self.shift % n) % n)
        }
    }

    /// Unchecked action; the shift is taken mod the string length.
    #[inline]
    pub(crate) fn act(&self, u: &CubeString) -> CubeString {
        if self.reflected {
            u.reverse().rotate(self.shift)
        } else {
            u.rotate(self.shift)
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.shift, self.reflected) {
            (0, false) => f.write_str("id"),
            (0, true) => f.write_str("beta"),
            (j, false) => write!(f, "alpha^{j}"),
            (j, true) => write!(f, "alpha^{j} beta"),
        }
    }
}

/// All strings of length `n` valid for `kind`, in ascending lexicographic
/// order.
pub fn enumerate(n: usize, kind: CubeKind) -> Result<Vec<CubeString>> {
    if n > MAX_LEN {
        return Err(Error::TooLong(n));
    }
    let mut out = Vec::new();
    extend_fibonacci(0, 0, false, n, &mut out);
    if kind == CubeKind::Lambda {
        out.retain(CubeString::is_lucas);
    }
    Ok(out)
}

fn extend_fibonacci(prefix: u64, depth: usize, last_one: bool, n: usize, out: &mut Vec<CubeString>) {
    if depth == n {
        out.push(CubeString {
            bits: prefix,
            len: n as u8,
        });
        return;
    }
    extend_fibonacci(prefix << 1, depth + 1, false, n, out);
    if !last_one {
        extend_fibonacci((prefix << 1) | 1, depth + 1, true, n, out);
    }
}

/// `1010010^{n-6}`: a primitive asymmetric Lucas string of length `n >= 9`.
pub fn asymmetric_witness(n: usize) -> Result<CubeString> {
    if n < 9 {
        return Err(Error::NoAsymmetricString { n });
    }
    if n > MAX_LEN {
        return Err(Error::TooLong(n));
    }
    CubeString::from_bits(0b101001 << (n - 6), n)
}

/// Whether `D_n` has a vertex orbit of size `k` on the Lucas cube of
/// dimension `n`: `k | n`, or `k >= 18` and `k | 2n`.
pub fn is_lucas_orbit_size(n: usize, k: usize) -> bool {
    k >= 1 && (n % k == 0 || (k >= 18 && (2 * n) % k == 0))
}

/// A Lucas string of length `n >= 3` whose dihedral orbit has size `k`.
pub fn vertex_orbit_witness(n: usize, k: usize) -> Result<CubeString> {
    if n < 3 {
        return Err(Error::below("vertex_orbit_witness", 3, n as i64));
    }
    if n > MAX_LEN {
        return Err(Error::TooLong(n));
    }
    if !is_lucas_orbit_size(n, k) {
        return Err(Error::UnattainableOrbitSize { n, k });
    }
    if n % k == 0 {
        if k == 1 {
            return CubeString::zeros(n);
        }
        // (10^{k-1})^{n/k}
        let block = CubeString::from_bits(1 << (k - 1), k)?;
        block.power(n / k)
    } else {
        asymmetric_witness(k / 2)?.power(2 * n / k)
    }
}
