#![allow(dead_code)]

use quasicartan::{build_triangulation, SurfaceSpec, Triangulation};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Every unpunctured surface whose triangulations have between 1 and
/// `max_n` arcs.
pub fn specs_up_to(max_n: usize) -> Vec<SurfaceSpec> {
    let mut out = Vec::new();
    let fits = |s: &SurfaceSpec| (1..=max_n as i64).contains(&s.arc_count());
    for g in 0..=2 {
        for b in 1..=4 {
            let mut k = vec![1; b];
            loop {
                if let Ok(spec) = SurfaceSpec::new(g, k.clone()) {
                    if fits(&spec) {
                        out.push(spec);
                    }
                }
                // next non-increasing sequence with entries up to max_n + 3
                let Some(i) = (0..b).rev().find(|&i| k[i] < max_n + 3 && (i == 0 || k[i] < k[i - 1])) else {
                    break;
                };
                k[i] += 1;
                for x in k.iter_mut().skip(i + 1) {
                    *x = 1;
                }
            }
        }
    }
    out
}

/// A random triangulation: a random surface with at most `max_n` arcs,
/// then a random walk in its flip graph.
pub fn random_triangulation(rng: &mut impl Rng, max_n: usize) -> Triangulation {
    static SPECS: OnceLock<Mutex<HashMap<usize, Vec<SurfaceSpec>>>> = OnceLock::new();
    let spec = {
        let mut cache = SPECS.get_or_init(Default::default).lock().unwrap();
        let specs = cache.entry(max_n).or_insert_with(|| specs_up_to(max_n));
        specs.choose(rng).expect("some surface fits").clone()
    };
    let spec = &spec;
    let mut t = build_triangulation(spec).expect("standard triangulation");
    for _ in 0..rng.gen_range(0..25) {
        let arc = rng.gen_range(0..t.arc_count());
        t = t.flip(arc).expect("every arc of an unpunctured surface is flippable");
    }
    t
}
