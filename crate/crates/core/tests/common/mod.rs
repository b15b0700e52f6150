#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use ssu_core::semigroup::{nonempty_subsets, Quad};
use ssu_core::{fixtures, Elem, GroupElem, Path, System};

pub fn system(name: &str) -> System {
    fixtures::example(name).unwrap().build().unwrap()
}

pub fn ex53(t0: i64, t1: i64) -> System {
    fixtures::ex53(t0, t1).build().unwrap()
}

/// `(alpha; A; g; beta)` in instance notation.
pub fn elem(sys: &System, src: &str) -> Elem {
    ssu_core::notation::eval_semigroup_expr(sys, src).unwrap()
}

pub fn paths_upto(sys: &System, n: usize) -> Vec<Path> {
    let mut out = vec![Path::omega()];
    out.extend(
        sys.graph()
            .enumerate_paths(&sys.universe().all(), n)
            .unwrap(),
    );
    out
}

/// Random elements with `|α|, |β| ≤ max_len` and `g` in `[-g_max, g_max]`,
/// for `Z` acting on a finite universe.
pub fn random_elements(
    sys: &System,
    rng: &mut StdRng,
    count: usize,
    max_len: usize,
    g_max: i64,
) -> Vec<Elem> {
    let graph = sys.graph();
    let paths = paths_upto(sys, max_len);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let alpha = paths.choose(rng).unwrap().clone();
        let beta = paths.choose(rng).unwrap().clone();
        let g = GroupElem(rng.gen_range(-g_max..=g_max));
        let cap = graph
            .path_source(&alpha)
            .intersect(&sys.act_set(g, &graph.path_source(&beta)));
        let subsets = nonempty_subsets(&cap);
        if let Some(set) = subsets.choose(rng) {
            out.push(Elem::Quad(Quad {
                alpha,
                set: set.clone(),
                g,
                beta,
            }));
        }
    }
    out
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
