use std::collections::{HashMap, VecDeque};

use ptbundle::farey::{farey_depth, farey_geodesic, is_farey_edge, pants_distance, FareySlope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Single-source BFS over slopes with `q <= max_q`, `|p| <= max_p`, plus `∞`.
fn bfs_from(src: FareySlope, max_q: i64, max_p: i64) -> HashMap<FareySlope, u32> {
    let mut dist = HashMap::new();
    dist.insert(src, 0);
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        let mut nbrs = Vec::new();
        if v.is_infinity() {
            nbrs.extend((-max_p..=max_p).map(FareySlope::integer));
        } else {
            let (p, q) = (v.p(), v.q());
            if q == 1 {
                nbrs.push(FareySlope::INFINITY);
            }
            for s in 1..=max_q {
                for sign in [-1, 1] {
                    let num = p * s + sign;
                    if num % q == 0 {
                        let r = num / q;
                        if r.abs() <= max_p {
                            nbrs.push(FareySlope::new(r, s).unwrap());
                        }
                    }
                }
            }
        }
        for w in nbrs {
            if !dist.contains_key(&w) {
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

#[test]
fn depth_matches_bfs_for_denominators_up_to_60() {
    let max_q = 60;
    let max_p = 2 * max_q + 2;
    let dist = bfs_from(FareySlope::ZERO, max_q, max_p);
    let mut checked = 0;
    for q in 1..=max_q {
        for p in -2 * q..=2 * q {
            if gcd(p, q) != 1 || (p == 0 && q == 1) {
                continue;
            }
            let s = FareySlope::new(p, q).unwrap();
            assert_eq!(farey_depth(&s), dist[&s], "{s}");
            checked += 1;
        }
    }
    assert!(checked > 4000);
}

#[test]
fn pants_distance_matches_bfs_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random_slope = |rng: &mut ChaCha8Rng| loop {
        let q = rng.gen_range(1..=40i64);
        let p = rng.gen_range(-2 * q..=2 * q);
        if gcd(p, q) == 1 {
            return FareySlope::new(p, q).unwrap();
        }
    };
    let mut pairs = 0;
    while pairs < 500 {
        let s = random_slope(&mut rng);
        let t = random_slope(&mut rng);
        if s == t {
            continue;
        }
        let dist = bfs_from(s, 40, 82);
        assert_eq!(pants_distance(&s, &t), dist[&t], "{s} -> {t}");
        pairs += 1;
    }
}

#[test]
fn geodesics_are_farey_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let q = rng.gen_range(1..=50i64);
        let p = rng.gen_range(-3 * q..=3 * q);
        let Ok(t) = FareySlope::new(p, q) else { continue };
        let s = FareySlope::new(rng.gen_range(-5..=5), rng.gen_range(1..=7)).unwrap();
        if s == t {
            assert!(farey_geodesic(&s, &t).is_empty());
            continue;
        }
        let path = farey_geodesic(&s, &t);
        assert_eq!(path.first(), Some(&s));
        assert_eq!(path.last(), Some(&t));
        assert_eq!(path.len() as u32, pants_distance(&s, &t) + 1);
        for w in path.windows(2) {
            assert!(is_farey_edge(&w[0], &w[1]).unwrap(), "{} {}", w[0], w[1]);
        }
    }
}

#[test]
fn triangle_inequality_small_denominators() {
    let mut slopes = vec![FareySlope::INFINITY];
    for q in 1..=20 {
        for p in -q..=q {
            if gcd(p, q) == 1 {
                slopes.push(FareySlope::new(p, q).unwrap());
            }
        }
    }
    // a deterministic sample of triples keeps this fast
    let n = slopes.len();
    for i in (0..n).step_by(7) {
        for j in (0..n).step_by(11) {
            for k in (0..n).step_by(13) {
                let (a, b, c) = (&slopes[i], &slopes[j], &slopes[k]);
                assert!(pants_distance(a, c) <= pants_distance(a, b) + pants_distance(b, c));
            }
        }
    }
}

#[test]
fn every_slope_has_two_nearby_neighbours() {
    for q in 1..=30i64 {
        for p in -q..=q {
            if gcd(p, q) != 1 {
                continue;
            }
            let s = FareySlope::new(p, q).unwrap();
            let mut count = 0;
            for d in 1..=2 * q {
                for r in (p * d - 1) / q - 1..=(p * d + 1) / q + 1 {
                    if gcd(r, d) != 1 || (r, d) == (p, q) {
                        continue;
                    }
                    if is_farey_edge(&s, &FareySlope::new(r, d).unwrap()).unwrap() {
                        count += 1;
                    }
                }
            }
            assert!(count >= 2, "{s}");
        }
    }
}
