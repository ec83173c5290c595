//! Structural correspondences behind the orbit counts.
//!
//! * Fibonacci strings of length `n` and domino tilings of the `2 × (n+1)`
//!   rectangle: read `u0` left to right, `0` is a vertical domino and `10` a
//!   pair of stacked horizontal dominoes.
//! * Ordered partitions of `n+1` into parts 1 and 2, counted up to reversal.
//! * The map `s` from edges of `Λ_n` to vertices of `Γ_{n-3}`, which induces
//!   a bijection between edge orbits and vertex orbits.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formulas::ExactInt;
use crate::oracle::{self, CubeGraph};
use crate::strings::{CubeKind, CubeString, MAX_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tile {
    /// One vertical domino, one column wide.
    Vertical,
    /// Two stacked horizontal dominoes, two columns wide.
    HorizontalPair,
}

impl Tile {
    pub fn width(self) -> usize {
        match self {
            Tile::Vertical => 1,
            Tile::HorizontalPair => 2,
        }
    }
}

/// A tiling of a `2 × m` rectangle as its left-to-right sequence of pieces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tiling {
    pieces: Vec<Tile>,
}

impl Tiling {
    pub fn new(pieces: Vec<Tile>) -> Self {
        Tiling { pieces }
    }

    pub fn pieces(&self) -> &[Tile] {
        &self.pieces
    }

    pub fn width(&self) -> usize {
        self.pieces.iter().map(|t| t.width()).sum()
    }

    /// Left-right mirror image.
    pub fn reflect(&self) -> Tiling {
        Tiling {
            pieces: self.pieces.iter().rev().copied().collect(),
        }
    }

    /// All tilings of the `2 × width` rectangle.
    pub fn all(width: usize) -> Vec<Tiling> {
        fn extend(rest: usize, prefix: &mut Vec<Tile>, out: &mut Vec<Tiling>) {
            if rest == 0 {
                out.push(Tiling::new(prefix.clone()));
                return;
            }
            for tile in [Tile::Vertical, Tile::HorizontalPair] {
                if tile.width() <= rest {
                    prefix.push(tile);
                    extend(rest - tile.width(), prefix, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        extend(width, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for tile in &self.pieces {
            f.write_str(match tile {
                Tile::Vertical => "V",
                Tile::HorizontalPair => "H",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Tiling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'V' => Ok(Tile::Vertical),
                'H' => Ok(Tile::HorizontalPair),
                other => Err(Error::MalformedTiling(format!("unknown piece {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Tiling::new)
    }
}

/// Tiling of width `|u| + 1` coding `u0`.
pub fn string_to_tiling(u: &CubeString) -> Result<Tiling> {
    if !u.is_fibonacci() {
        return Err(Error::NotFibonacci(u.to_string()));
    }
    let mut code = u.to_bit_vec();
    code.push(0);
    let mut pieces = Vec::with_capacity(code.len());
    let mut i = 0;
    while i < code.len() {
        if code[i] == 0 {
            pieces.push(Tile::Vertical);
            i += 1;
        } else {
            // a 1 is always followed by a 0 here
            pieces.push(Tile::HorizontalPair);
            i += 2;
        }
    }
    Ok(Tiling::new(pieces))
}

/// Inverse of [`string_to_tiling`].
pub fn tiling_to_string(t: &Tiling) -> Result<CubeString> {
    let mut code = Vec::with_capacity(t.width());
    for tile in t.pieces() {
        match tile {
            Tile::Vertical => code.push(0),
            Tile::HorizontalPair => code.extend([1, 0]),
        }
    }
    match code.pop() {
        Some(0) => {}
        _ => {
            return Err(Error::MalformedTiling(format!(
                "code of {t} does not end in 0"
            )))
        }
    }
    if code.len() > MAX_LEN {
        return Err(Error::TooLong(code.len()));
    }
    CubeString::from_bit_slice(&code)
}

/// A domino on the `2 × m` grid as its two cells `row * m + col`, smaller
/// first.
type Domino = (usize, usize);

/// Every domino tiling of the `2 × m` grid, found by covering the first
/// empty cell in column-major order.
fn grid_tilings(m: usize) -> Vec<Vec<Domino>> {
    fn fill(m: usize, covered: &mut [bool], placed: &mut Vec<Domino>, out: &mut Vec<Vec<Domino>>) {
        let next = (0..m)
            .flat_map(|c| [c, m + c])
            .find(|&cell| !covered[cell]);
        let Some(cell) = next else {
            let mut tiling = placed.clone();
            tiling.sort_unstable();
            out.push(tiling);
            return;
        };
        let (row, col) = (cell / m, cell % m);
        let mut options = Vec::with_capacity(2);
        if row == 0 && !covered[m + col] {
            options.push((cell, m + col));
        }
        if col + 1 < m && !covered[cell + 1] {
            options.push((cell, cell + 1));
        }
        for (a, b) in options {
            covered[a] = true;
            covered[b] = true;
            placed.push((a, b));
            fill(m, covered, placed, out);
            placed.pop();
            covered[a] = false;
            covered[b] = false;
        }
    }
    let mut out = Vec::new();
    fill(m, &mut vec![false; 2 * m], &mut Vec::new(), &mut out);
    out
}

/// A map on grid cells `(row, col) -> (row, col)`.
type CellMap = Box<dyn Fn(usize, usize) -> (usize, usize)>;

/// Symmetries of the `2 × m` rectangle. For `m = 2` the rectangle is a
/// square and all eight apply.
fn rectangle_symmetries(m: usize) -> Vec<CellMap> {
    let last = m - 1;
    let mut maps: Vec<CellMap> = vec![
        Box::new(|r, c| (r, c)),
        Box::new(|r, c| (1 - r, c)),
        Box::new(move |r, c| (r, last - c)),
        Box::new(move |r, c| (1 - r, last - c)),
    ];
    if m == 2 {
        maps.push(Box::new(|r, c| (c, 1 - r)));
        maps.push(Box::new(|r, c| (1 - c, r)));
        maps.push(Box::new(|r, c| (c, r)));
        maps.push(Box::new(|r, c| (1 - c, 1 - r)));
    }
    maps
}

/// Number of domino tilings of the `2 × m` rectangle up to its symmetries
/// (rotations and reflections), for `m >= 2`.
pub fn distinct_tilings(m: usize) -> Result<ExactInt> {
    if m < 2 {
        return Err(Error::below("distinct_tilings", 2, m as i64));
    }
    let symmetries = rectangle_symmetries(m);
    let canonical: BTreeSet<Vec<Domino>> = grid_tilings(m)
        .into_iter()
        .map(|tiling| {
            symmetries
                .iter()
                .map(|sym| {
                    let cell = |x: usize| {
                        let (r, c) = sym(x / m, x % m);
                        r * m + c
                    };
                    let mut image: Vec<Domino> = tiling
                        .iter()
                        .map(|&(a, b)| {
                            let (a, b) = (cell(a), cell(b));
                            (a.min(b), a.max(b))
                        })
                        .collect();
                    image.sort_unstable();
                    image
                })
                .min()
                .expect("identity is always present")
        })
        .collect();
    Ok(ExactInt::from(canonical.len()))
}

/// Ordered partitions of `m` into parts 1 and 2, counted up to reversal.
pub fn distinct_partitions(m: usize) -> ExactInt {
    fn extend(rest: usize, prefix: &mut Vec<u8>, out: &mut BTreeSet<Vec<u8>>) {
        if rest == 0 {
            let reversed: Vec<u8> = prefix.iter().rev().copied().collect();
            out.insert(prefix.clone().min(reversed));
            return;
        }
        for part in [1u8, 2] {
            if part as usize <= rest {
                prefix.push(part);
                extend(rest - part as usize, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut classes = BTreeSet::new();
    extend(m, &mut Vec::new(), &mut classes);
    ExactInt::from(classes.len())
}

/// `s(e)` for an edge `e = {u, v}` of `Λ_n`, `n >= 5`: the `n - 3`
/// characters read cyclically starting two places after the position where
/// `u` and `v` differ. Read from the endpoint carrying the 1 there.
pub fn lambda_edge_to_gamma_vertex(u: &CubeString, v: &CubeString) -> Result<CubeString> {
    let n = u.len();
    let describe = || format!("{{{u}, {v}}}");
    if v.len() != n {
        return Err(Error::NotAnEdge(describe()));
    }
    if n < 5 {
        return Err(Error::below("lambda_edge_to_gamma_vertex", 5, n as i64));
    }
    let diff = u.bits() ^ v.bits();
    if !u.is_lucas() || !v.is_lucas() || diff.count_ones() != 1 {
        return Err(Error::NotAnEdge(describe()));
    }
    let i = n - 1 - diff.trailing_zeros() as usize;
    let upper = if u.bit(i) == 1 { u } else { v };
    // bring position i + 2 to the front
    Ok(upper.rotate((2 * n - i - 2) % n).prefix(n - 3))
}

/// Outcome of checking that `s` induces a bijection from the edge orbits of
/// `Λ_n` onto the vertex orbits of `Γ_{n-3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBijectionReport {
    pub n: usize,
    pub edge_orbits: usize,
    pub vertex_orbits: usize,
    /// Every edge orbit maps into a single vertex orbit.
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl EdgeBijectionReport {
    pub fn is_bijective(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}

pub const EDGE_BIJECTION_RANGE: std::ops::RangeInclusive<usize> = 5..=18;

/// Computes both orbit partitions by brute force and compares them through
/// `s`, identifying vertex orbits of `Γ_{n-3}` by `min(w, β(w))`.
pub fn verify_edge_orbit_bijection(n: usize) -> Result<EdgeBijectionReport> {
    if n < *EDGE_BIJECTION_RANGE.start() {
        return Err(Error::below("verify_edge_orbit_bijection", 5, n as i64));
    }
    if n > *EDGE_BIJECTION_RANGE.end() {
        return Err(Error::above("verify_edge_orbit_bijection", 18, n));
    }
    let lambda = CubeGraph::build(n, CubeKind::Lambda)?;
    let gamma = CubeGraph::build(n - 3, CubeKind::Gamma)?;
    let edge_partition = oracle::edge_orbits(&lambda)?;
    let vertex_partition = oracle::vertex_orbits(&gamma)?;
    let gamma_class = |w: CubeString| w.min(w.reverse());

    let mut well_defined = true;
    let mut images = Vec::with_capacity(edge_partition.orbits.len());
    for orbit in &edge_partition.orbits {
        let mut keys = BTreeSet::new();
        for &e in &orbit.members {
            let (u, v) = lambda.edge_strings(e);
            keys.insert(gamma_class(lambda_edge_to_gamma_vertex(&u, &v)?));
        }
        well_defined &= keys.len() == 1;
        images.extend(keys.into_iter().next());
    }
    let image_set: BTreeSet<CubeString> = images.iter().copied().collect();
    let targets: BTreeSet<CubeString> = vertex_partition
        .orbits
        .iter()
        .map(|o| gamma.vertices()[o.representative()])
        .collect();
    Ok(EdgeBijectionReport {
        n,
        edge_orbits: edge_partition.orbits.len(),
        vertex_orbits: vertex_partition.orbits.len(),
        well_defined,
        injective: image_set.len() == images.len(),
        surjective: image_set == targets,
    })
}
