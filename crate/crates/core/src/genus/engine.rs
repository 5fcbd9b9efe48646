//! Search over products of cyclic orders.
//!
//! A landscape is a list of blocks, each holding a cyclic order of its
//! elements (slots of a generator, darts at a vertex). Rotating a block's
//! order never changes the objective, so exhaustive search pins the first
//! element of every block and walks the `(len-1)!` orders of the rest.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) trait Landscape {
    fn set_block(&mut self, block: usize, order: &[usize]);
    fn genus(&mut self) -> usize;
}

/// Orbit counter for `next ∘ partner` over a fixed dart set.
#[derive(Clone, Debug)]
pub(crate) struct FaceCounter {
    pub partner: Vec<u32>,
    pub next: Vec<u32>,
    darts: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl FaceCounter {
    pub fn new(partner: Vec<u32>, darts: Vec<u32>) -> Self {
        let n = partner.len();
        FaceCounter { next: (0..n as u32).collect(), partner, darts, stamp: vec![0; n], epoch: 0 }
    }

    pub fn faces(&mut self) -> usize {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let mut faces = 0;
        for &s in &self.darts {
            if self.stamp[s as usize] == self.epoch {
                continue;
            }
            faces += 1;
            let mut d = s;
            while self.stamp[d as usize] != self.epoch {
                self.stamp[d as usize] = self.epoch;
                d = self.next[self.partner[d as usize] as usize];
            }
        }
        faces
    }
}

/// `Π (len-1)!` over blocks, saturating.
pub(crate) fn class_count(lens: impl IntoIterator<Item = usize>) -> u128 {
    let mut total: u128 = 1;
    for len in lens {
        for k in 2..len.max(1) {
            total = total.saturating_mul(k as u128);
        }
    }
    total
}

/// Lexicographic successor; false once the slice is back to ascending order.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub(crate) struct Outcome {
    pub best: usize,
    pub orders: Vec<Vec<usize>>,
    pub evaluated: u64,
    /// Exhaustive search ran to completion or stopped at the lower bound.
    pub complete: bool,
}

fn out_of_time(deadline: Option<Instant>, evaluated: u64) -> bool {
    evaluated.is_multiple_of(256) && deadline.is_some_and(|d| Instant::now() >= d)
}

/// Walk every class once. `visit` sees each genus; returning false stops.
pub(crate) fn exhaustive<L: Landscape>(
    land: &mut L,
    blocks: &[Vec<usize>],
    lower: usize,
    stop_at_lower: bool,
    deadline: Option<Instant>,
    mut visit: impl FnMut(usize),
) -> Outcome {
    let mut orders: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| {
            let mut o = b.clone();
            o.sort_unstable();
            o
        })
        .collect();
    for (b, o) in orders.iter().enumerate() {
        land.set_block(b, o);
    }
    let free: Vec<usize> = (0..orders.len()).filter(|&b| orders[b].len() >= 3).collect();
    let mut best = usize::MAX;
    let mut best_orders = orders.clone();
    let mut evaluated = 0u64;
    loop {
        let g = land.genus();
        evaluated += 1;
        visit(g);
        if g < best {
            best = g;
            best_orders = orders.clone();
        }
        if stop_at_lower && best <= lower {
            return Outcome { best, orders: best_orders, evaluated, complete: true };
        }
        if out_of_time(deadline, evaluated) {
            return Outcome { best, orders: best_orders, evaluated, complete: false };
        }
        // Odometer with the last free block turning fastest.
        let mut advanced = false;
        for &b in free.iter().rev() {
            let more = next_permutation(&mut orders[b][1..]);
            land.set_block(b, &orders[b]);
            if more {
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Outcome { best, orders: best_orders, evaluated, complete: true };
        }
    }
}

/// Simulated annealing from `start`: adjacent transpositions inside one block
/// plus occasional reshuffles of a whole block, with a geometric cooling
/// schedule reheated at each of four restarts from the best state.
pub(crate) fn anneal<L: Landscape>(
    land: &mut L,
    start: &[Vec<usize>],
    lower: usize,
    iterations: u64,
    seed: u64,
    deadline: Option<Instant>,
) -> Outcome {
    const RESTARTS: u64 = 4;
    const T_HIGH: f64 = 1.5;
    const T_LOW: f64 = 0.05;
    const RESHUFFLE: f64 = 0.03;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orders: Vec<Vec<usize>> = start.to_vec();
    for (b, o) in orders.iter().enumerate() {
        land.set_block(b, o);
    }
    let free: Vec<usize> = (0..orders.len()).filter(|&b| orders[b].len() >= 3).collect();
    let mut cur = land.genus();
    let mut best = cur;
    let mut best_orders = orders.clone();
    let mut evaluated = 1u64;
    if free.is_empty() {
        return Outcome { best, orders: best_orders, evaluated, complete: true };
    }
    let segment = (iterations / RESTARTS).max(1);
    let mut it = 0u64;
    while it < iterations && best > lower {
        if it > 0 && it.is_multiple_of(segment) {
            for (b, o) in best_orders.iter().enumerate() {
                if orders[b] != *o {
                    orders[b] = o.clone();
                    land.set_block(b, o);
                }
            }
            cur = best;
        }
        let frac = (it % segment) as f64 / segment as f64;
        let temp = T_HIGH * (T_LOW / T_HIGH).powf(frac);
        let b = free[rng.random_range(0..free.len())];
        let saved = orders[b].clone();
        if rng.random::<f64>() < RESHUFFLE {
            orders[b].shuffle(&mut rng);
        } else {
            let len = orders[b].len();
            let q = rng.random_range(0..len);
            orders[b].swap(q, (q + 1) % len);
        }
        land.set_block(b, &orders[b]);
        let g = land.genus();
        evaluated += 1;
        it += 1;
        let delta = g as f64 - cur as f64;
        if delta <= 0.0 || rng.random::<f64>() < (-delta / temp).exp() {
            cur = g;
            if g < best {
                best = g;
                best_orders = orders.clone();
            }
        } else {
            orders[b] = saved;
            land.set_block(b, &orders[b]);
        }
        if out_of_time(deadline, evaluated) {
            break;
        }
    }
    Outcome { best, orders: best_orders, evaluated, complete: false }
}
