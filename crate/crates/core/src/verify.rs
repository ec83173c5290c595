//! Verification suites: named checks run over a range of dimensions, each
//! reporting the first counterexample it finds.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bijections::{self, Tiling};
use crate::error::Result;
use crate::formulas::{self, exact_div, ExactInt, PalindromeClass, SizeHistogram};
use crate::oracle::{self, CubeGraph, Ground};
use crate::strings::{self, CubeKind, CubeString, DihedralElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Formulas,
    OracleVsFormula,
    Bijections,
    Automorphisms,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Formulas,
        Suite::OracleVsFormula,
        Suite::Bijections,
        Suite::Automorphisms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Formulas => "formulas",
            Suite::OracleVsFormula => "oracle-vs-formula",
            Suite::Bijections => "bijections",
            Suite::Automorphisms => "automorphisms",
        }
    }

    /// Largest `max` the suite accepts.
    pub fn bound(self) -> usize {
        match self {
            Suite::Formulas => 200,
            Suite::OracleVsFormula => 20,
            Suite::Bijections => *bijections::EDGE_BIJECTION_RANGE.end(),
            // Γ_8 has 55 vertices; Γ_9 and Λ_9 exceed the search bound.
            Suite::Automorphisms => 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub range: String,
    pub passed: bool,
    /// First counterexample, if any.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_n: usize,
    /// Set when `max_n` exceeds the suite's bound; no checks run then.
    pub refused: Option<String>,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.refused.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| !c.passed)
    }
}

type Verdict = std::result::Result<(), String>;

fn expect_eq<T: PartialEq + Display>(what: &str, expected: T, actual: T) -> Verdict {
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected}, got {actual}"))
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Runs `f` for every `n` in `range`, stopping at the first failure.
fn check(name: &str, range: RangeInclusive<usize>, mut f: impl FnMut(usize) -> Verdict) -> CheckOutcome {
    let label = if range.is_empty() {
        "empty".to_string()
    } else {
        format!("{}..={}", range.start(), range.end())
    };
    let detail = range.into_iter().find_map(|n| f(n).err().map(|e| format!("n = {n}: {e}")));
    CheckOutcome {
        name: name.to_string(),
        range: label,
        passed: detail.is_none(),
        detail,
    }
}

pub fn run_suite(suite: Suite, max_n: usize) -> SuiteReport {
    if max_n > suite.bound() {
        return SuiteReport {
            suite,
            max_n,
            refused: Some(format!(
                "--max {max_n} exceeds the bound {} of suite {}",
                suite.bound(),
                suite.name()
            )),
            checks: Vec::new(),
        };
    }
    let checks = match suite {
        Suite::Formulas => formula_checks(max_n),
        Suite::OracleVsFormula => oracle_checks(max_n),
        Suite::Bijections => bijection_checks(max_n),
        Suite::Automorphisms => automorphism_checks(max_n),
    };
    SuiteReport {
        suite,
        max_n,
        refused: None,
        checks,
    }
}

/// `F_0..=F_len` and `L_0..=L_len` by the plain recurrences.
pub fn reference_sequences(len: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut f = vec![BigInt::zero(), BigInt::one()];
    let mut l = vec![BigInt::from(2), BigInt::one()];
    while f.len() <= len {
        let k = f.len();
        f.push(&f[k - 1] + &f[k - 2]);
        l.push(&l[k - 1] + &l[k - 2]);
    }
    (f, l)
}

fn formula_checks(max_n: usize) -> Vec<CheckOutcome> {
    let (f, l) = reference_sequences(max_n + 3);
    let fb = |i: usize| lib(formulas::fib(i as i64));
    let lu = |i: usize| lib(formulas::lucas(i as i64));
    let big = |x: usize| BigInt::from(x);
    vec![
        check("fib and lucas agree with their recurrences", 0..=max_n, |n| {
            expect_eq("F_n", f[n].clone(), fb(n)?)?;
            expect_eq("L_n", l[n].clone(), lu(n)?)
        }),
        check("F(n+1) = sum_k C(n-k, k)", 1..=max_n, |n| {
            let sum: BigInt = (0..=n / 2).map(|k| formulas::binomial((n - k) as u64, k as u64)).sum();
            expect_eq("binomial sum", f[n + 1].clone(), sum)
        }),
        check("L(n) = sum_k n/(n-k) C(n-k, k)", 1..=max_n, |n| {
            let sum: BigInt = (0..=n / 2)
                .map(|k| exact_div(&(big(n) * formulas::binomial((n - k) as u64, k as u64)), &big(n - k)))
                .sum();
            expect_eq("weighted binomial sum", l[n].clone(), sum)
        }),
        check("sum_i F(i) L(n-i) = (n+1) F(n)", 1..=max_n, |n| {
            let sum: BigInt = (0..=n).map(|i| &f[i] * &l[n - i]).sum();
            expect_eq("convolution", big(n + 1) * &f[n], sum)
        }),
        check("L(n) = F(n-1) + F(n+1)", 1..=max_n, |n| {
            expect_eq("L_n", &f[n - 1] + &f[n + 1], l[n].clone())
        }),
        check("sum over d | n of p(d) = L(n)", 1..=max_n, |n| {
            let mut sum = BigInt::zero();
            for d in formulas::divisors(n as u64) {
                sum += lib(formulas::lucas_string_classes(d))?.primitive;
            }
            expect_eq("primitive counts", l[n].clone(), sum)
        }),
        check("p(n) = s(n) + a(n)", 1..=max_n, |n| {
            let c = lib(formulas::lucas_string_classes(n as u64))?;
            expect_eq("p_n", c.primitive, c.primitive_symmetric + c.asymmetric)
        }),
        check("a(n) = 0 exactly when n <= 8", 1..=max_n, |n| {
            let a = lib(formulas::lucas_string_classes(n as u64))?.asymmetric;
            if (n <= 8) == a.is_zero() {
                Ok(())
            } else {
                Err(format!("a_n = {a}"))
            }
        }),
        check("gamma vertex histogram sums", 2..=max_n, |n| {
            let o = lib(formulas::gamma_vertex_orbits(n as u64))?;
            expect_eq("sum k*count", f[n + 2].clone(), o.histogram.element_count())?;
            expect_eq("sum count", o.total, o.histogram.orbit_count())
        }),
        check("gamma edge histogram sums", 0..=max_n, |n| {
            let o = formulas::gamma_edge_orbits(n as u64);
            let (_, edges) = formulas::graph_counts(n as u64, CubeKind::Gamma);
            expect_eq("sum k*count", edges, o.histogram.element_count())?;
            expect_eq("sum count", o.total, o.histogram.orbit_count())
        }),
        check("lambda vertex histogram sums", 1..=max_n, |n| {
            let o = lib(formulas::lambda_vertex_orbits(n as u64))?;
            expect_eq("sum k*count", l[n].clone(), o.histogram.element_count())?;
            expect_eq("sum count", o.total, o.histogram.orbit_count())
        }),
        check("lambda edge histogram sums", 1..=max_n, |n| {
            let o = lib(formulas::lambda_edge_orbits(n as u64))?;
            expect_eq("sum k*count", big(n) * &f[n - 1], o.histogram.element_count())?;
            expect_eq("sum count", o.total.clone(), o.histogram.orbit_count())?;
            let zero_2n = o.histogram.get(2 * n as u64).is_zero();
            expect_eq("size-2n count vanishes", n <= 4, zero_2n)
        }),
        check("lambda edge orbits = gamma vertex orbits shifted by 3", 5..=max_n, |n| {
            let lam = lib(formulas::lambda_edge_orbits(n as u64))?.total;
            let gam = lib(formulas::gamma_vertex_orbits(n as u64 - 3))?.total;
            expect_eq("orbit totals", gam, lam)
        }),
        check("lambda vertex size support = orbit size set", 1..=max_n, |n| {
            let support = lib(formulas::lambda_vertex_orbits(n as u64))?.histogram.support();
            let set = lib(formulas::lambda_vertex_orbit_size_set(n as u64))?;
            expect_eq("sizes", fmt_set(&set), fmt_set(&support))
        }),
    ]
}

fn fmt_set(s: &BTreeSet<u64>) -> String {
    format!("{s:?}")
}

fn oracle_histograms(n: usize, kind: CubeKind) -> std::result::Result<(SizeHistogram, SizeHistogram), String> {
    let g = lib(CubeGraph::build(n, kind))?;
    let v = lib(oracle::vertex_orbits(&g))?.histogram();
    let e = lib(oracle::edge_orbits(&g))?.histogram();
    Ok((v, e))
}

fn oracle_checks(max_n: usize) -> Vec<CheckOutcome> {
    // Build every cube once and reuse it across checks.
    let gammas: Vec<(SizeHistogram, SizeHistogram)> = (0..=max_n)
        .map(|n| oracle_histograms(n, CubeKind::Gamma).expect("within oracle bounds"))
        .collect();
    let lambdas: Vec<(SizeHistogram, SizeHistogram)> = (0..=max_n)
        .map(|n| oracle_histograms(n, CubeKind::Lambda).expect("within oracle bounds"))
        .collect();
    let (f, _) = reference_sequences(max_n + 3);

    vec![
        check("gamma vertex orbits: oracle = closed form", 2..=max_n, |n| {
            let o = lib(formulas::gamma_vertex_orbits(n as u64))?;
            expect_eq("histogram", o.histogram, gammas[n].0.clone())?;
            expect_eq("total", o.total, gammas[n].0.orbit_count())
        }),
        check("gamma edge orbits: oracle = closed form", 0..=max_n, |n| {
            let o = formulas::gamma_edge_orbits(n as u64);
            expect_eq("histogram", o.histogram, gammas[n].1.clone())?;
            expect_eq("total", o.total, gammas[n].1.orbit_count())
        }),
        check("lambda vertex orbits: oracle = closed form", 1..=max_n, |n| {
            let o = lib(formulas::lambda_vertex_orbits(n as u64))?;
            expect_eq("histogram", o.histogram, lambdas[n].0.clone())?;
            expect_eq("total", o.total, lambdas[n].0.orbit_count())
        }),
        check("lambda edge orbits: oracle = closed form", 1..=max_n, |n| {
            let o = lib(formulas::lambda_edge_orbits(n as u64))?;
            expect_eq("histogram", o.histogram, lambdas[n].1.clone())?;
            expect_eq("total", o.total, lambdas[n].1.orbit_count())
        }),
        check("lambda vertex orbit sizes = orbit size set", 3..=max_n, |n| {
            let set = lib(formulas::lambda_vertex_orbit_size_set(n as u64))?;
            expect_eq("sizes", fmt_set(&set), fmt_set(&lambdas[n].0.support()))
        }),
        check("lambda edge orbit sizes within {n, 2n}, equal iff n >= 5", 1..=max_n, |n| {
            let sizes = lambdas[n].1.support();
            let allowed: BTreeSet<u64> = [n as u64, 2 * n as u64].into();
            if !sizes.is_subset(&allowed) {
                return Err(format!("sizes {sizes:?}"));
            }
            expect_eq("equality", n >= 5, sizes == allowed)
        }),
        check("lucas string classes: enumeration = Mobius formulas", 1..=max_n, |n| {
            let counted = lib(oracle::classify_lucas_strings(n))?;
            let c = lib(formulas::lucas_string_classes(n as u64))?;
            expect_eq("p_n", c.primitive, counted.primitive.into())?;
            expect_eq("s_n", c.primitive_symmetric, counted.primitive_symmetric.into())?;
            expect_eq("a_n", c.asymmetric, counted.asymmetric.into())
        }),
        check("necklaces: rotation orbits = closed form", 1..=max_n, |n| {
            let g = lib(CubeGraph::build(n, CubeKind::Lambda))?;
            let count = lib(oracle::rotation_orbits(&g))?.orbits.len();
            expect_eq("c(n)", lib(formulas::necklace_count(n as u64))?, count.into())
        }),
        check("sum_j fix(alpha^j beta) on lambda_d = d F(floor(d/2)+2)", 1..=max_n.min(14), |d| {
            let g = lib(CubeGraph::build(d, CubeKind::Lambda))?;
            let mut total = 0usize;
            for j in 0..d {
                total += lib(oracle::fixed_points(DihedralElement::reflection(j), &g, Ground::Vertices))?.len();
            }
            expect_eq("fixed points", BigInt::from(d) * &f[d / 2 + 2], total.into())
        }),
        check("fibonacci palindromes: enumeration = closed form", 1..=max_n, |n| {
            let mut counts = [0usize; 3];
            for u in lib(strings::enumerate(n, CubeKind::Gamma))? {
                if u.reverse() == u {
                    counts[0] += 1;
                    counts[1 + u.bit(0) as usize] += 1;
                }
            }
            let classes = [
                PalindromeClass::All,
                PalindromeClass::StartsWithZero,
                PalindromeClass::StartsWithOne,
            ];
            for (class, count) in classes.into_iter().zip(counts) {
                expect_eq(
                    &format!("{class:?}"),
                    lib(formulas::fib_palindrome_fix(n as u64, class))?,
                    count.into(),
                )?;
            }
            Ok(())
        }),
        check("every lambda edge has a primitive endpoint", 5..=max_n, |n| {
            let g = lib(CubeGraph::build(n, CubeKind::Lambda))?;
            for e in 0..g.edge_count() {
                let (u, v) = g.edge_strings(e);
                if !lib(u.is_primitive())? && !lib(v.is_primitive())? {
                    return Err(format!("edge {{{u}, {v}}}"));
                }
            }
            Ok(())
        }),
    ]
}

fn bijection_checks(max_n: usize) -> Vec<CheckOutcome> {
    vec![
        check("distinct tilings of 2 x 2 = 1", 2..=max_n.min(2), |m| {
            expect_eq("tilings", ExactInt::one(), lib(bijections::distinct_tilings(m))?)
        }),
        check("distinct tilings of 2 x m = gamma vertex orbits of m-1", 3..=max_n, |m| {
            let expected = lib(formulas::gamma_vertex_orbits(m as u64 - 1))?.total;
            expect_eq("tilings", expected, lib(bijections::distinct_tilings(m))?)
        }),
        check("distinct {1,2}-partitions of m = gamma vertex orbits of m-1", 3..=max_n, |m| {
            let expected = lib(formulas::gamma_vertex_orbits(m as u64 - 1))?.total;
            expect_eq("partitions", expected, bijections::distinct_partitions(m))
        }),
        check("string -> tiling -> string round trip", 0..=max_n, |n| {
            for u in lib(strings::enumerate(n, CubeKind::Gamma))? {
                let t = lib(bijections::string_to_tiling(&u))?;
                expect_eq("round trip", u, lib(bijections::tiling_to_string(&t))?)?;
                expect_eq(
                    &format!("palindrome {u}"),
                    u.reverse() == u,
                    t.reflect() == t,
                )?;
            }
            Ok(())
        }),
        check("tiling -> string -> tiling round trip", 1..=max_n + 1, |m| {
            for t in Tiling::all(m) {
                let u = lib(bijections::tiling_to_string(&t))?;
                expect_eq("round trip", t.to_string(), lib(bijections::string_to_tiling(&u))?.to_string())?;
            }
            Ok(())
        }),
        check("edge map is constant on edge orbits up to reversal", 5..=max_n, edge_map_well_defined),
        check("edge map is onto gamma_(n-3)", 5..=max_n, |n| {
            for w in lib(strings::enumerate(n - 3, CubeKind::Gamma))? {
                let head = lib(CubeString::from_bits(0b010, 3))?;
                let zero = lib(CubeString::zeros(3))?;
                let u = lib(head.concat(&w))?;
                let v = lib(zero.concat(&w))?;
                expect_eq("s(e)", w, lib(bijections::lambda_edge_to_gamma_vertex(&u, &v))?)?;
            }
            Ok(())
        }),
        check("edge orbits of lambda_n biject onto vertex orbits of gamma_(n-3)", 5..=max_n, |n| {
            let r = lib(bijections::verify_edge_orbit_bijection(n))?;
            if r.is_bijective() {
                expect_eq("orbit counts", r.vertex_orbits, r.edge_orbits)
            } else {
                Err(format!("{r:?}"))
            }
        }),
    ]
}

fn edge_map_well_defined(n: usize) -> Verdict {
    let g = lib(CubeGraph::build(n, CubeKind::Lambda))?;
    let class = |w: CubeString| w.min(w.reverse());
    for e in 0..g.edge_count() {
        let (u, v) = g.edge_strings(e);
        let base = class(lib(bijections::lambda_edge_to_gamma_vertex(&u, &v))?);
        for d in DihedralElement::all(n) {
            let (gu, gv) = (lib(u.apply(d))?, lib(v.apply(d))?);
            let image = class(lib(bijections::lambda_edge_to_gamma_vertex(&gu, &gv))?);
            if image != base {
                return Err(format!("edge {{{u}, {v}}} under {d}: {image} vs {base}"));
            }
        }
    }
    Ok(())
}

fn automorphism_checks(max_n: usize) -> Vec<CheckOutcome> {
    let group = |n: usize, kind: CubeKind| -> std::result::Result<(CubeGraph, Vec<oracle::Permutation>), String> {
        let g = lib(CubeGraph::build(n, kind))?;
        let aut = lib(oracle::automorphism_group(&g))?;
        Ok((g, aut))
    };
    vec![
        check("|Aut(gamma_n)| = 2", 1..=max_n, |n| {
            let (_, aut) = group(n, CubeKind::Gamma)?;
            expect_eq("order", 2, aut.len())
        }),
        check("Aut(gamma_n) = {id, beta}", 2..=max_n, |n| {
            // Compare as permutations: on Γ_2 the maps α and β coincide.
            let (g, aut) = group(n, CubeKind::Gamma)?;
            let found: BTreeSet<Vec<usize>> = aut.iter().map(|p| p.as_slice().to_vec()).collect();
            let expected: BTreeSet<Vec<usize>> = [DihedralElement::IDENTITY, DihedralElement::BETA]
                .into_iter()
                .filter_map(|d| g.permutation_of(d))
                .map(|p| p.as_slice().to_vec())
                .collect();
            expect_eq("permutations", format!("{expected:?}"), format!("{found:?}"))
        }),
        check("|Aut(lambda_n)| = 2n", 3..=max_n, |n| {
            let (_, aut) = group(n, CubeKind::Lambda)?;
            expect_eq("order", 2 * n, aut.len())
        }),
        check("every automorphism of lambda_n is dihedral", 3..=max_n, |n| {
            let (g, aut) = group(n, CubeKind::Lambda)?;
            let realized: BTreeSet<_> = aut
                .iter()
                .map(|p| oracle::dihedral_realization(p, &g).ok_or("non-dihedral automorphism".to_string()))
                .collect::<std::result::Result<_, _>>()?;
            expect_eq("distinct dihedral maps", 2 * n, realized.len())
        }),
        check("small lucas cubes: |Aut| of lambda_0, lambda_1, lambda_2 = 1, 1, 2", 0..=max_n.min(2), |n| {
            let (_, aut) = group(n, CubeKind::Lambda)?;
            expect_eq("order", [1, 1, 2][n], aut.len())
        }),
        check("automorphisms preserve weight", 2..=max_n, |n| {
            for kind in [CubeKind::Gamma, CubeKind::Lambda] {
                let (g, aut) = group(n, kind)?;
                if let Some(p) = aut.iter().find(|p| !p.preserves_weight(&g)) {
                    return Err(format!("{kind} automorphism {:?}", p.as_slice()));
                }
            }
            Ok(())
        }),
        check("found permutations are automorphisms", 0..=max_n, |n| {
            for kind in [CubeKind::Gamma, CubeKind::Lambda] {
                let (g, aut) = group(n, kind)?;
                if !aut.iter().all(|p| p.is_automorphism(&g)) {
                    return Err(format!("{kind}: invalid permutation"));
                }
            }
            Ok(())
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_ranges() {
        for suite in Suite::ALL {
            let report = run_suite(suite, 7);
            for c in &report.checks {
                assert!(c.passed, "{}: {} {:?}", suite.name(), c.name, c.detail);
            }
            assert!(report.passed());
        }
    }

    #[test]
    fn refuses_beyond_bound() {
        let report = run_suite(Suite::OracleVsFormula, 40);
        assert!(report.refused.is_some());
        assert!(report.checks.is_empty());
        assert!(!report.passed());
        assert!(!report.failed());
    }

    #[test]
    fn failing_check_reports_first_counterexample() {
        let outcome = check("demo", 1..=5, |n| if n >= 3 { Err("boom".into()) } else { Ok(()) });
        assert!(!outcome.passed);
        assert_eq!(outcome.detail.as_deref(), Some("n = 3: boom"));
        assert_eq!(outcome.range, "1..=5");
    }
}
