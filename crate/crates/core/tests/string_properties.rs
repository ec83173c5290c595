//! Exhaustive string properties, checked against a plain `Vec<u8>` model that
//! applies the 1-based index formulas directly.

use std::collections::BTreeSet;

use cube_orbits::{CubeKind, CubeString, DihedralElement};
use proptest::prelude::*;

/// Every binary string of length `n`.
fn all_strings(n: usize) -> impl Iterator<Item = CubeString> {
    (0..1u64 << n).map(move |bits| CubeString::from_bits(bits, n).unwrap())
}

fn model(u: &CubeString) -> Vec<u8> {
    u.to_bit_vec()
}

/// `x = α^j(u)`: `x_i = u_{(i - j) mod n}` with positions in `1..=n`.
fn model_rotate(u: &[u8], j: usize) -> Vec<u8> {
    let n = u.len();
    (1..=n).map(|i| u[((i + n * n - j) - 1) % n]).collect()
}

/// `x = α^j β(u)`: `x_i = u_{(1 - i + j) mod n}` with positions in `1..=n`.
fn model_reflect(u: &[u8], j: usize) -> Vec<u8> {
    let n = u.len();
    (1..=n)
        .map(|i| {
            let pos = (1 + j + 2 * n - i) % n;
            u[if pos == 0 { n } else { pos } - 1]
        })
        .collect()
}

fn model_orbit(u: &[u8]) -> BTreeSet<Vec<u8>> {
    (0..u.len())
        .flat_map(|j| [model_rotate(u, j), model_reflect(u, j)])
        .collect()
}

fn is_palindrome(x: &[u8]) -> bool {
    x.iter().eq(x.iter().rev())
}

#[test]
fn dihedral_action_matches_index_formulas() {
    for n in 1..=10 {
        for u in all_strings(n) {
            let m = model(&u);
            for j in 0..n {
                assert_eq!(model(&u.rotate(j)), model_rotate(&m, j), "alpha^{j} {u}");
                let reflected = u.apply(DihedralElement::reflection(j)).unwrap();
                assert_eq!(model(&reflected), model_reflect(&m, j), "alpha^{j} beta {u}");
            }
        }
    }
}

#[test]
fn orbit_size_formula_equals_brute_force_orbit_for_all_strings() {
    for n in 1..=10 {
        for u in all_strings(n) {
            let expected = model_orbit(&model(&u)).len();
            assert_eq!(u.orbit_size().unwrap(), expected, "{u}");
            assert_eq!(u.dihedral_orbit().unwrap().len(), expected, "{u}");
            assert_eq!((2 * n) % expected, 0);
        }
    }
}

#[test]
fn period_counts_distinct_rotations() {
    for n in 1..=10 {
        for u in all_strings(n) {
            let m = model(&u);
            let rotations: BTreeSet<Vec<u8>> = (0..n).map(|j| model_rotate(&m, j)).collect();
            let d = u.decompose().unwrap();
            assert_eq!(d.period, rotations.len(), "{u}");
            assert_eq!(d.period * d.exponent, n);
            assert_eq!(n % d.period, 0);
            assert_eq!(d.root.power(d.exponent).unwrap(), u);
            assert_eq!(d.root.len(), d.period);
            assert!(d.root.is_primitive().unwrap());
        }
    }
}

#[test]
fn period_of_a_power_is_the_period_of_the_base() {
    for len in 1..=5 {
        for u in all_strings(len) {
            for k in 1..=3 {
                let power = u.power(k).unwrap();
                assert_eq!(power.period().unwrap(), u.period().unwrap(), "{u}^{k}");
            }
        }
    }
}

#[test]
fn dihedral_maps_commute_with_powers() {
    for len in 1..=6 {
        for u in all_strings(len) {
            for k in 1..=3 {
                let power = u.power(k).unwrap();
                for j in 0..=len {
                    assert_eq!(power.rotate(j), u.rotate(j).power(k).unwrap(), "{u}^{k}, j = {j}");
                }
                assert_eq!(power.reverse(), u.reverse().power(k).unwrap());
            }
        }
    }
}

#[test]
fn group_relations_hold_as_transformations() {
    for n in 1..=8 {
        for u in all_strings(n) {
            let mut v = u;
            for _ in 0..n {
                v = v.apply(DihedralElement::rotation(1 % n)).unwrap();
            }
            assert_eq!(v, u);
            assert_eq!(u.reverse().reverse(), u);
            // α β = β α^{-1}
            let left = u.reverse().rotate(1);
            let right = u.rotate(n - 1).reverse();
            assert_eq!(left, right, "{u}");
            for g in DihedralElement::all(n) {
                for h in DihedralElement::all(n) {
                    let sequential = u.apply(h).unwrap().apply(g).unwrap();
                    assert_eq!(u.apply(g.compose(h, n)).unwrap(), sequential);
                }
            }
        }
    }
}

#[test]
fn asymmetric_strings_are_primitive() {
    for n in 1..=12 {
        for u in all_strings(n) {
            if u.orbit_size().unwrap() == 2 * n {
                assert_eq!(u.decompose().unwrap().exponent, 1, "{u}");
            }
        }
    }
}

#[test]
fn primitive_symmetric_iff_fixed_by_a_reflection() {
    for n in 1..=10 {
        for u in all_strings(n) {
            let primitive = u.is_primitive().unwrap();
            let by_definition = primitive && model_orbit(&model(&u)).len() < 2 * n;
            let fixed = (0..n).any(|j| u.apply(DihedralElement::reflection(j)).unwrap() == u);
            assert_eq!(by_definition, primitive && fixed, "{u}");
        }
    }
}

#[test]
fn reflection_fixed_points_are_palindrome_pairs() {
    for n in 1..=8 {
        for u in all_strings(n) {
            let m = model(&u);
            for j in 0..n {
                let fixed = u.apply(DihedralElement::reflection(j)).unwrap() == u;
                let (x, y) = m.split_at(j);
                assert_eq!(fixed, is_palindrome(x) && is_palindrome(y), "{u}, j = {j}");
            }
        }
    }
}

#[test]
fn primitive_strings_have_at_most_one_fixing_reflection() {
    for n in 1..=10 {
        for u in all_strings(n) {
            if !u.is_primitive().unwrap() {
                continue;
            }
            let fixing = (0..n)
                .filter(|&j| u.apply(DihedralElement::reflection(j)).unwrap() == u)
                .count();
            assert!(fixing <= 1, "{u} fixed by {fixing} reflections");
        }
    }
}

#[test]
fn symmetry_of_root_decides_orbit_size() {
    for n in 1..=10 {
        for u in all_strings(n) {
            let d = u.decompose().unwrap();
            let expected = if u.is_symmetric().unwrap() { d.period } else { 2 * d.period };
            assert_eq!(u.orbit_size().unwrap(), expected, "{u}");
        }
    }
}

#[test]
fn canonical_rep_is_least_orbit_element() {
    for n in 1..=9 {
        for u in all_strings(n) {
            let orbit = u.dihedral_orbit().unwrap();
            let rep = u.canonical_rep().unwrap();
            assert_eq!(Some(&rep), orbit.iter().next());
            for v in &orbit {
                assert_eq!(v.canonical_rep().unwrap(), rep);
            }
        }
    }
}

#[test]
fn dihedral_maps_preserve_weight_and_validity() {
    for n in 1..=10 {
        for u in all_strings(n) {
            for g in DihedralElement::all(n) {
                let v = u.apply(g).unwrap();
                assert_eq!(v.weight(), u.weight());
                assert_eq!(v.is_lucas(), u.is_lucas(), "{g} on {u}");
            }
        }
    }
}

#[test]
fn enumeration_matches_filtered_brute_force() {
    for n in 0..=14 {
        for kind in [CubeKind::Gamma, CubeKind::Lambda] {
            let expected: Vec<CubeString> = all_strings(n).filter(|u| u.is_valid(kind)).collect();
            let listed = cube_orbits::strings::enumerate(n, kind).unwrap();
            assert_eq!(listed, expected, "{kind} n = {n}");
            assert!(listed.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

#[test]
fn validity_matches_model() {
    for n in 0..=10 {
        for u in all_strings(n) {
            let m = model(&u);
            let fib = !m.windows(2).any(|w| w == [1, 1]);
            let cyclic = n == 0 || !(m[0] == 1 && m[n - 1] == 1);
            assert_eq!(u.is_fibonacci(), fib, "{u}");
            assert_eq!(u.is_lucas(), fib && cyclic, "{u}");
        }
    }
}

#[test]
fn witnesses_have_requested_orbit_sizes() {
    for n in 9..=40 {
        let w = cube_orbits::strings::asymmetric_witness(n).unwrap();
        assert!(w.is_lucas());
        assert_eq!(model_orbit(&model(&w)).len(), 2 * n);
    }
    for n in 3..=40 {
        for k in 1..=2 * n {
            let attainable = cube_orbits::strings::is_lucas_orbit_size(n, k);
            match cube_orbits::strings::vertex_orbit_witness(n, k) {
                Ok(w) => {
                    assert!(attainable);
                    assert!(w.is_lucas(), "{w}");
                    assert_eq!(w.len(), n);
                    assert_eq!(model_orbit(&model(&w)).len(), k, "n = {n}, k = {k}");
                }
                Err(_) => assert!(!attainable, "n = {n}, k = {k}"),
            }
        }
    }
}

#[test]
fn text_round_trip() {
    for n in 0..=8 {
        for u in all_strings(n) {
            assert_eq!(u.to_machine_string().parse::<CubeString>().unwrap(), u);
            assert_eq!(u.to_string().parse::<CubeString>().unwrap(), u);
        }
    }
    assert_eq!(CubeString::EMPTY.to_string(), "ε");
    assert_eq!(CubeString::EMPTY.to_machine_string(), "");
}

proptest! {
    #[test]
    fn long_strings_agree_with_model(bits in any::<u64>(), len in 1usize..=64, j in 0usize..64) {
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        let u = CubeString::from_bits(bits & mask, len).unwrap();
        let m = model(&u);
        let j = j % len;
        prop_assert_eq!(model(&u.rotate(j)), model_rotate(&m, j));
        prop_assert_eq!(model(&u.apply(DihedralElement::reflection(j)).unwrap()), model_reflect(&m, j));
        let d = u.decompose().unwrap();
        prop_assert_eq!(d.root.power(d.exponent).unwrap(), u);
        prop_assert_eq!(u.orbit_size().unwrap(), model_orbit(&m).len());
    }
}
