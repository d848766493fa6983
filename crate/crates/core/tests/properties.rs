use proptest::prelude::*;

use shortedge::drawing::{
    outer_face_vertex, point_in_closed_curve, random_geometric_complete, relabel_ccw, triangle_curve, validate_simple,
    DEFAULT_BBOX,
};
use shortedge::geometry::{Point, Vector};
use shortedge::oracle::winding_number;
use shortedge::set_system::{stab_count, venn_cells};
use shortedge::{key_matching, verify_matching, Constants, Drawing, LowStabMatching, MatchConfig, MemberKey, SetFamily};

fn family_strategy() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (2usize..24).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(0..n, 0..n), 1..12)))
}

fn build(n: usize, sets: &[Vec<usize>]) -> SetFamily {
    let slices: Vec<&[usize]> = sets.iter().map(Vec::as_slice).collect();
    SetFamily::from_sets(n, &slices).unwrap()
}

fn dist(f: &SetFamily, u: usize, v: usize) -> u64 {
    if u == v {
        0
    } else {
        stab_count(f, u, v).unwrap().exact().unwrap()
    }
}

proptest! {
    #[test]
    fn stab_count_is_a_pseudometric((n, sets) in family_strategy(), a in 0usize..24, b in 0usize..24, c in 0usize..24) {
        let f = build(n, &sets);
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(dist(&f, a, b), dist(&f, b, a));
        prop_assert!(dist(&f, a, c) <= dist(&f, a, b) + dist(&f, b, c));
    }

    #[test]
    fn venn_cells_bounded_by_ground_and_power((n, sets) in family_strategy()) {
        let f = build(n, &sets);
        let keys: Vec<MemberKey> = f.members().iter().map(|m| m.key).collect();
        let cells = venn_cells(&f, &keys).unwrap();
        prop_assert!(cells >= 1);
        prop_assert!(cells <= n.min(1usize << keys.len().min(20)));
    }

    #[test]
    fn venn_cells_ignore_key_order((n, sets) in family_strategy(), rot in 0usize..12) {
        let f = build(n, &sets);
        let keys: Vec<MemberKey> = f.members().iter().map(|m| m.key).collect();
        let mut turned = keys.clone();
        turned.rotate_left(rot % keys.len());
        turned.reverse();
        prop_assert_eq!(venn_cells(&f, &keys).unwrap(), venn_cells(&f, &turned).unwrap());
    }

    #[test]
    fn stab_counts_ignore_member_order((n, sets) in family_strategy(), u in 0usize..24, v in 0usize..24) {
        let (u, v) = (u % n, v % n);
        prop_assume!(u != v);
        let mut reversed = sets.clone();
        reversed.reverse();
        prop_assert_eq!(dist(&build(n, &sets), u, v), dist(&build(n, &reversed), u, v));
    }

    #[test]
    fn family_json_round_trips((n, sets) in family_strategy()) {
        let f = build(n, &sets);
        prop_assert_eq!(SetFamily::from_json_str(&f.to_json()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn containment_does_not_depend_on_ray_direction(seed in 0u64..1000, px in 0i64..(1 << 20), py in 0i64..(1 << 20)) {
        let d = random_geometric_complete(9, seed, DEFAULT_BBOX).unwrap();
        let l = relabel_ccw(&d, outer_face_vertex(&d, None).unwrap()).unwrap();
        let cycle = triangle_curve(&d, &l, 1, 6).unwrap();
        let p = Point::new(px, py);
        let Ok(auto) = point_in_closed_curve(&cycle, p, None) else { return Ok(()) };
        let auto = auto.unwrap();
        prop_assert_eq!(auto, winding_number(&cycle, p).unwrap() != 0);
        for dir in [Vector::new(3, 7), Vector::new(-5, 2), Vector::new(-1, -9), Vector::new(11, -4)] {
            if let Some(inside) = point_in_closed_curve(&cycle, p, Some(dir)).unwrap() {
                prop_assert_eq!(inside, auto);
            }
        }
    }

    #[test]
    fn matching_is_deterministic(seed in 0u64..1000) {
        let d = random_geometric_complete(36, seed, DEFAULT_BBOX).unwrap();
        let l = relabel_ccw(&d, outer_face_vertex(&d, None).unwrap()).unwrap();
        let f = shortedge::drawing::triangle_family(&d, &l).unwrap();
        let cfg = MatchConfig::default();
        prop_assert_eq!(key_matching(&f, &cfg).unwrap(), key_matching(&f, &cfg).unwrap());
    }
}

/// The fuzz corpus seeds, for mutation on a stable toolchain.
fn seeds() -> Vec<(String, Vec<u8>)> {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut out = Vec::new();
    for target in std::fs::read_dir(&root).unwrap() {
        let target = target.unwrap();
        for file in std::fs::read_dir(target.path()).unwrap() {
            let name = target.file_name().to_string_lossy().into_owned();
            out.push((name, std::fs::read(file.unwrap().path()).unwrap()));
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn parsers_survive_mutated_seeds(
        pick in any::<prop::sample::Index>(),
        edits in prop::collection::vec((any::<prop::sample::Index>(), any::<u8>(), 0u8..3), 1..6),
    ) {
        let all = seeds();
        let (target, seed) = &all[pick.index(all.len())];
        let mut bytes = seed.clone();
        for (at, byte, op) in edits {
            let k = at.index(bytes.len().max(1));
            match op {
                0 if !bytes.is_empty() => bytes[k] = byte,
                1 => bytes.insert(k.min(bytes.len()), byte),
                _ if !bytes.is_empty() => { bytes.remove(k); }
                _ => {}
            }
        }
        match target.as_str() {
            "drawing_json" => {
                if let Ok(d) = Drawing::from_json_slice(&bytes) {
                    let _ = validate_simple(&d);
                    prop_assert_eq!(Drawing::from_json_str(&d.to_json()).unwrap().to_json(), d.to_json());
                }
            }
            "set_family_json" => {
                if let Ok(f) = SetFamily::from_json_slice(&bytes) {
                    prop_assert_eq!(SetFamily::from_json_str(&f.to_json()).unwrap(), f);
                }
            }
            "matching_json" => {
                if let Ok(m) = LowStabMatching::from_json_slice(&bytes) {
                    let f = SetFamily::from_sets(8, &[&[0, 3], &[5]]).unwrap();
                    let _ = verify_matching(&f, &m, &MatchConfig::default());
                }
            }
            "constants_json" => {
                if let Ok(c) = std::str::from_utf8(&bytes).map_err(|_| ()).and_then(|t| Constants::from_json_str(t).map_err(|_| ())) {
                    prop_assert!(MatchConfig::from(&c).validate().is_ok());
                }
            }
            other => prop_assert!(false, "unknown corpus {}", other),
        }
    }
}
