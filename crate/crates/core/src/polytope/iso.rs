//! Isomorphism of vertex–facet incidence structures by colour refinement
//! with individualization.

use std::collections::BTreeMap;

use super::lattice::FaceLattice;

/// Bipartite incidence between `vertices` vertices and the facets listed in
/// `facets` (each a sorted list of vertex indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

/// Matching bijections of vertices and facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceIso {
    pub vertex_map: Vec<usize>,
    pub facet_map: Vec<usize>,
}

impl Incidence {
    pub fn of(lattice: &FaceLattice) -> Self {
        Incidence {
            vertices: lattice.vertex_count(),
            facets: lattice.facet_vertex_lists(),
        }
    }

    /// The `d`-cube: vertices are bit strings, facets fix one bit.
    pub fn cube(d: usize) -> Self {
        let nv = 1usize << d;
        let mut facets = Vec::with_capacity(2 * d);
        for bit in 0..d {
            for val in 0..2 {
                facets.push((0..nv).filter(|x| (x >> bit) & 1 == val).collect());
            }
        }
        Incidence {
            vertices: nv,
            facets,
        }
    }

    fn node_count(&self) -> usize {
        self.vertices + self.facets.len()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for (f, vs) in self.facets.iter().enumerate() {
            let fnode = self.vertices + f;
            for &v in vs {
                adj[v].push(fnode);
                adj[fnode].push(v);
            }
        }
        adj
    }
}

struct Pair {
    adj: [Vec<Vec<usize>>; 2],
    sizes: [usize; 2],
    vertices: [usize; 2],
}

impl Pair {
    /// Refines both colourings jointly so equal colours mean equal
    /// signatures across the two structures. Returns false if the colour
    /// class sizes diverge.
    fn refine(&self, colors: &mut [Vec<u32>; 2]) -> bool {
        let mut classes = count_classes(colors);
        loop {
            let mut table: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
            let mut sigs: [Vec<(u32, Vec<u32>)>; 2] = [Vec::new(), Vec::new()];
            for s in 0..2 {
                sigs[s] = (0..self.sizes[s])
                    .map(|x| {
                        let mut nb: Vec<u32> = self.adj[s][x].iter().map(|&y| colors[s][y]).collect();
                        nb.sort_unstable();
                        (colors[s][x], nb)
                    })
                    .collect();
                for sig in &sigs[s] {
                    table.entry(sig.clone()).or_insert(0);
                }
            }
            for (id, val) in table.values_mut().enumerate() {
                *val = id as u32;
            }
            for s in 0..2 {
                for x in 0..self.sizes[s] {
                    colors[s][x] = table[&sigs[s][x]];
                }
            }
            if !same_histogram(colors) {
                return false;
            }
            let now = count_classes(colors);
            if now == classes {
                return true;
            }
            classes = now;
        }
    }

    fn search(&self, colors: [Vec<u32>; 2], a: &Incidence, b: &Incidence) -> Option<IncidenceIso> {
        let mut colors = colors;
        if !self.refine(&mut colors) {
            return None;
        }
        let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &colors[0] {
            *hist.entry(c).or_default() += 1;
        }
        let target = hist
            .iter()
            .filter(|(_, &k)| k > 1)
            .min_by_key(|(c, &k)| (k, **c))
            .map(|(c, _)| *c);
        let Some(target) = target else {
            return self.leaf(&colors, a, b);
        };
        let fresh = hist.keys().max().copied().unwrap_or(0) + 1;
        let x = colors[0].iter().position(|&c| c == target).unwrap();
        for y in (0..self.sizes[1]).filter(|&y| colors[1][y] == target) {
            let mut next = colors.clone();
            next[0][x] = fresh;
            next[1][y] = fresh;
            if let Some(iso) = self.search(next, a, b) {
                return Some(iso);
            }
        }
        None
    }

    fn leaf(&self, colors: &[Vec<u32>; 2], a: &Incidence, b: &Incidence) -> Option<IncidenceIso> {
        let mut by_color: BTreeMap<u32, usize> = BTreeMap::new();
        for (y, &c) in colors[1].iter().enumerate() {
            by_color.insert(c, y);
        }
        let map: Vec<usize> = colors[0].iter().map(|c| by_color[c]).collect();
        let nv = self.vertices[0];
        let vertex_map: Vec<usize> = map[..nv].to_vec();
        if vertex_map.iter().any(|&y| y >= self.vertices[1]) {
            return None;
        }
        let facet_map: Vec<usize> = map[nv..]
            .iter()
            .map(|&y| y.checked_sub(self.vertices[1]))
            .collect::<Option<_>>()?;
        let ok = a.facets.iter().enumerate().all(|(f, vs)| {
            let mut img: Vec<usize> = vs.iter().map(|&v| vertex_map[v]).collect();
            img.sort_unstable();
            img == b.facets[facet_map[f]]
        });
        ok.then_some(IncidenceIso {
            vertex_map,
            facet_map,
        })
    }
}

fn count_classes(colors: &[Vec<u32>; 2]) -> usize {
    let mut all: Vec<u32> = colors[0].iter().chain(&colors[1]).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn same_histogram(colors: &[Vec<u32>; 2]) -> bool {
    let mut a = colors[0].clone();
    let mut b = colors[1].clone();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// An incidence-preserving pair of bijections from `a` to `b`, if any.
pub fn incidence_isomorphism(a: &Incidence, b: &Incidence) -> Option<IncidenceIso> {
    if a.vertices != b.vertices || a.facets.len() != b.facets.len() {
        return None;
    }
    let pair = Pair {
        adj: [a.adjacency(), b.adjacency()],
        sizes: [a.node_count(), b.node_count()],
        vertices: [a.vertices, b.vertices],
    };
    let init = |inc: &Incidence| -> Vec<u32> {
        (0..inc.node_count())
            .map(|x| u32::from(x >= inc.vertices))
            .collect()
    };
    pair.search([init(a), init(b)], a, b)
}
