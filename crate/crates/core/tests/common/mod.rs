#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use ribbon_genus::facepair::{FacePairing, TriangulatedSphere};
use ribbon_genus::presentation::{Presentation, Sign, Word};
use ribbon_genus::ribbon::Convention;

pub const CORPUS: &str = include_str!("../../fixtures/corpus.txt");

/// Named corpus entries: each presentation line follows a `# name` line.
pub fn corpus() -> Vec<(String, Presentation)> {
    let mut out = Vec::new();
    let mut name = String::new();
    for line in CORPUS.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(n) = line.strip_prefix('#') {
            name = n.trim().to_string();
        } else {
            out.push((name.clone(), line.parse().unwrap_or_else(|e| panic!("{line}: {e}"))));
        }
    }
    out
}

pub fn fixture(name: &str) -> Presentation {
    corpus().into_iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no fixture {name}")).1
}

pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x5EED_2024), failure_persistence: None, ..Config::default() }
}

/// Presentations on up to `max_gens` generators with every degree at most 8.
pub fn arb_presentation(max_gens: usize, max_rels: usize, max_len: usize) -> impl Strategy<Value = Presentation> {
    (1..=max_gens)
        .prop_flat_map(move |n| {
            let letter = (0..n, any::<bool>());
            let rel = prop::collection::vec(letter, 1..=max_len);
            (Just(n), prop::collection::vec(rel, 0..=max_rels))
        })
        .prop_map(|(n, rels)| {
            let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let words = rels
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(g, neg)| ribbon_genus::presentation::Letter {
                            generator: g,
                            sign: if neg { Sign::Minus } else { Sign::Plus },
                        })
                        .collect::<Word>()
                })
                .collect();
            Presentation::new(names, words).unwrap()
        })
        .prop_filter("degree at most 8", |p| p.occurrence_stats().degrees.iter().all(|&d| d <= 8))
}

/// Random permutations of `0..d` for each degree.
pub fn arb_perms(degrees: Vec<usize>) -> impl Strategy<Value = Vec<Vec<usize>>> {
    degrees.into_iter().map(|d| Just((0..d).collect::<Vec<usize>>()).prop_shuffle()).collect::<Vec<_>>()
}

#[derive(Debug, PartialEq, Eq)]
pub struct OracleSurface {
    pub faces: usize,
    pub components: usize,
    pub euler: i64,
    pub genus: usize,
}

/// Walk the boundary of the ribbon surface directly from the letters.
///
/// Every letter occurrence `o` of `x_i^e` puts one leg on each disc of
/// `x_i`: an outgoing leg on disc `(i, e)` whose band runs to the incoming
/// leg of the next letter, on disc `(j, -f)`. Legs sit at `positions[i][rank]`
/// where `rank` counts earlier occurrences of `x_i`. The boundary walk runs
/// along a disc to the next leg counter-clockwise, then across that leg's
/// band.
pub fn face_oracle(p: &Presentation, convention: Convention, positions: &[Vec<usize>]) -> OracleSurface {
    type LegKey = (usize, bool); // (occurrence, on the disc with the letter's own sign)
    let n = p.generator_count();
    let mut occ: Vec<(usize, i8, usize)> = Vec::new(); // generator, sign, rank
    let mut next_occ: Vec<usize> = Vec::new();
    let mut seen_rank = vec![0usize; n];
    for w in p.relators() {
        let start = occ.len();
        for (t, l) in w.letters().iter().enumerate() {
            occ.push((l.generator, l.sign.value() as i8, seen_rank[l.generator]));
            seen_rank[l.generator] += 1;
            next_occ.push(if t + 1 == w.len() { start } else { occ.len() });
        }
    }
    // Disc of a leg: (generator, sign of that disc).
    let disc_of = |k: LegKey| {
        let (g, s, _) = occ[k.0];
        (g, if k.1 { s } else { -s })
    };
    let mut band: HashMap<LegKey, LegKey> = HashMap::new();
    for o in 0..occ.len() {
        let a = (o, true);
        let b = (next_occ[o], false);
        band.insert(a, b);
        band.insert(b, a);
    }
    // Counter-clockwise successor on each disc.
    let mut on_disc: HashMap<(usize, i8), Vec<(usize, LegKey)>> = HashMap::new();
    for o in 0..occ.len() {
        for own in [true, false] {
            let k = (o, own);
            let (g, _, rank) = occ[k.0];
            on_disc.entry(disc_of(k)).or_default().push((positions[g][rank], k));
        }
    }
    let mut ccw: HashMap<LegKey, LegKey> = HashMap::new();
    for (&(_, side), legs) in on_disc.iter_mut() {
        legs.sort();
        if side < 0 && convention == Convention::Mirrored {
            legs.reverse();
        }
        for t in 0..legs.len() {
            ccw.insert(legs[t].1, legs[(t + 1) % legs.len()].1);
        }
    }
    // Faces: walk arc then band until back at the start.
    let mut visited: HashSet<LegKey> = HashSet::new();
    let mut face_disc: Vec<(usize, i8)> = Vec::new();
    let mut keys: Vec<LegKey> = band.keys().copied().collect();
    keys.sort();
    for start in keys {
        if visited.contains(&start) {
            continue;
        }
        face_disc.push(disc_of(start));
        let mut k = start;
        loop {
            visited.insert(k);
            k = ccw[&band[&k]];
            if k == start {
                break;
            }
        }
    }
    // Components by breadth-first search over bands.
    let discs: Vec<(usize, i8)> = (0..n).flat_map(|g| [(g, 1i8), (g, -1i8)]).collect();
    let mut adj: HashMap<(usize, i8), Vec<(usize, i8)>> = HashMap::new();
    for (&a, &b) in &band {
        adj.entry(disc_of(a)).or_default().push(disc_of(b));
    }
    let mut comp: HashMap<(usize, i8), usize> = HashMap::new();
    for &d in &discs {
        if comp.contains_key(&d) {
            continue;
        }
        let c = comp.values().copied().max().map_or(0, |m| m + 1);
        let mut queue = VecDeque::from([d]);
        comp.insert(d, c);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                if let std::collections::hash_map::Entry::Vacant(e) = comp.entry(y) {
                    e.insert(c);
                    queue.push_back(y);
                }
            }
        }
    }
    let components = comp.values().copied().max().map_or(0, |m| m + 1);
    let mut chi = vec![0i64; components];
    for d in &discs {
        chi[comp[d]] += 1;
        // A disc without legs is a sphere on its own: one face.
        if !on_disc.contains_key(d) {
            chi[comp[d]] += 1;
        }
    }
    for o in 0..occ.len() {
        chi[comp[&disc_of((o, true))]] -= 1;
    }
    for d in &face_disc {
        chi[comp[d]] += 1;
    }
    let isolated = discs.iter().filter(|d| !on_disc.contains_key(d)).count();
    OracleSurface {
        faces: face_disc.len() + isolated,
        components,
        euler: chi.iter().sum(),
        genus: chi.iter().map(|&x| ((2 - x) / 2) as usize).sum(),
    }
}

pub fn identity_positions(p: &Presentation) -> Vec<Vec<usize>> {
    p.occurrence_stats().degrees.iter().map(|&d| (0..d).collect()).collect()
}

/// Cell counts of the quotient found by repeated relabelling to the
/// smallest label, without union-find.
pub fn simplicial_counts(s: &TriangulatedSphere, fp: &FacePairing) -> [usize; 4] {
    let tris = s.triangles();
    let apex = s.vertex_count();
    let global = |t: usize, k: usize| if k == 0 { apex } else { tris[t][k - 1] };
    // Every (tetrahedron, corner subset), keyed before gluing. Simplices
    // through the apex, and all edges and vertices, are determined by their
    // vertices; boundary triangles and tetrahedra belong to one cone only.
    let mut refs: Vec<(usize, Vec<usize>)> = Vec::new();
    for t in 0..tris.len() {
        for mask in 1u32..16 {
            refs.push((t, (0..4).filter(|&k| mask & (1 << k) != 0).collect()));
        }
    }
    let key = |(t, sub): &(usize, Vec<usize>)| -> (Vec<usize>, Option<usize>) {
        let vs: BTreeSet<usize> = sub.iter().map(|&k| global(*t, k)).collect();
        let own = sub.len() == 4 || (sub.len() == 3 && !sub.contains(&0));
        (vs.into_iter().collect(), own.then_some(*t))
    };
    let mut label: Vec<usize> = {
        let mut keys: Vec<_> = refs.iter().map(key).collect::<BTreeSet<_>>().into_iter().collect();
        keys.sort();
        let index: HashMap<_, usize> = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        refs.iter().map(|r| index[&key(r)]).collect()
    };
    let pos: HashMap<(usize, Vec<usize>), usize> = refs.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut glue: Vec<(usize, usize)> = Vec::new();
    for (&(a, b), g) in fp.pairs().iter().zip(fp.gluings()) {
        for mask in 1u32..8 {
            let sa: Vec<usize> = (0..3).filter(|&c| mask & (1 << c) != 0).collect();
            let mut sb: Vec<usize> = sa.iter().map(|&c| 1 + g.apply(c)).collect();
            sb.sort();
            let sa: Vec<usize> = sa.iter().map(|&c| 1 + c).collect();
            glue.push((pos[&(a, sa)], pos[&(b, sb)]));
        }
    }
    loop {
        let mut changed = false;
        for &(x, y) in &glue {
            let m = label[x].min(label[y]);
            let (lx, ly) = (label[x], label[y]);
            if lx != ly {
                for l in label.iter_mut() {
                    if *l == lx || *l == ly {
                        *l = m;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: [BTreeSet<usize>; 4] = Default::default();
    for (i, (_, sub)) in refs.iter().enumerate() {
        classes[sub.len() - 1].insert(label[i]);
    }
    [classes[0].len(), classes[1].len(), classes[2].len(), classes[3].len()]
}
