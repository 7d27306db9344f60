//! Exhaustive search for all derivations (or Jordan derivations) of a ring.
//!
//! An additive map is fixed by the images of a [`GeneratorBasis`], and the
//! image of a generator of order `k` can be any element whose order divides
//! `k`. The Leibniz and Jordan defects are biadditive, so the law holds
//! everywhere iff it holds on generator pairs. Each pair is checked at the
//! first search depth where every value it needs is already determined,
//! which prunes most branches long before the leaves.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{defect, AdditiveMap, GeneratorBasis, Law};
use crate::ring::{Elem, FiniteRing};

/// Live counters for a running enumeration.
#[derive(Debug, Default)]
pub struct Progress {
    nodes: AtomicU64,
    pruned: AtomicU64,
    found: AtomicU64,
}

impl Progress {
    pub fn new() -> Self {
        Self::default()
    }

    /// `(nodes visited, branches pruned, maps found)`
    pub fn snapshot(&self) -> (u64, u64, u64) {
        (
            self.nodes.load(Ordering::Relaxed),
            self.pruned.load(Ordering::Relaxed),
            self.found.load(Ordering::Relaxed),
        )
    }
}

struct Search<'a> {
    ring: &'a FiniteRing,
    basis: GeneratorBasis,
    law: Law,
    candidates: Vec<Vec<Elem>>,
    /// Generator pairs to check once depth `i` is assigned.
    schedule: Vec<Vec<(usize, usize)>>,
    progress: Option<&'a Progress>,
}

impl<'a> Search<'a> {
    fn new(ring: &'a FiniteRing, law: Law, progress: Option<&'a Progress>) -> Self {
        let basis = GeneratorBasis::compute(ring);
        let gens = basis.generators().to_vec();
        let candidates = basis
            .orders()
            .iter()
            .map(|&order| {
                ring.elements()
                    .filter(|&e| order % ring.additive_order(e) == 0)
                    .collect()
            })
            .collect();
        let mut schedule = vec![Vec::new(); gens.len()];
        for a in 0..gens.len() {
            for b in 0..gens.len() {
                if law == Law::Jordan && b < a {
                    continue; // symmetric defect
                }
                let product = match law {
                    Law::Leibniz => ring.mul(gens[a], gens[b]),
                    Law::Jordan => ring.jordan(gens[a], gens[b]),
                };
                let level = a.max(b).max(basis.top(product).unwrap_or(0));
                schedule[level].push((a, b));
            }
        }
        Search {
            ring,
            basis,
            law,
            candidates,
            schedule,
            progress,
        }
    }

    fn consistent(&self, depth: usize, images: &[Elem]) -> bool {
        let ring = self.ring;
        let gens = self.basis.generators();
        let f = |x: Elem| self.basis.extend(ring, images, x);
        self.schedule[depth]
            .iter()
            .all(|&(a, b)| defect(ring, self.law, f, gens[a], gens[b]) == ring.zero())
    }

    fn descend(&self, images: &mut Vec<Elem>, out: &mut Vec<AdditiveMap>) {
        let depth = images.len();
        if depth == self.basis.len() {
            let table = self
                .ring
                .elements()
                .map(|x| self.basis.extend(self.ring, images, x))
                .collect();
            let map = AdditiveMap::new(self.ring, table).expect("generator images extend additively");
            debug_assert!(match self.law {
                Law::Leibniz => map.is_derivation(),
                Law::Jordan => map.is_jordan_derivation(),
            });
            if let Some(p) = self.progress {
                p.found.fetch_add(1, Ordering::Relaxed);
            }
            out.push(map);
            return;
        }
        for &candidate in &self.candidates[depth] {
            if let Some(p) = self.progress {
                p.nodes.fetch_add(1, Ordering::Relaxed);
            }
            images.push(candidate);
            if self.consistent(depth, images) {
                self.descend(images, out);
            } else if let Some(p) = self.progress {
                p.pruned.fetch_add(1, Ordering::Relaxed);
            }
            images.pop();
        }
    }
}

/// All maps satisfying `law`, sorted lexicographically by table.
///
/// The first generator's choices are split across the rayon pool; the
/// result does not depend on the number of workers.
pub fn enumerate_maps(ring: &FiniteRing, law: Law, progress: Option<&Progress>) -> Vec<AdditiveMap> {
    let search = Search::new(ring, law, progress);
    if search.basis.is_empty() {
        return vec![AdditiveMap::zero(ring)];
    }
    let mut maps: Vec<AdditiveMap> = search.candidates[0]
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            let mut images = vec![first];
            if let Some(p) = progress {
                p.nodes.fetch_add(1, Ordering::Relaxed);
            }
            if search.consistent(0, &images) {
                search.descend(&mut images, &mut out);
            } else if let Some(p) = progress {
                p.pruned.fetch_add(1, Ordering::Relaxed);
            }
            out
        })
        .collect();
    maps.sort_by(|a, b| a.table().cmp(b.table()));
    maps
}

pub fn enumerate_derivations(ring: &FiniteRing) -> Vec<AdditiveMap> {
    enumerate_maps(ring, Law::Leibniz, None)
}

pub fn enumerate_jordan_derivations(ring: &FiniteRing) -> Vec<AdditiveMap> {
    enumerate_maps(ring, Law::Jordan, None)
}
