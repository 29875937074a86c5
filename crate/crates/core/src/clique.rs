//! Exact clique number and chromatic number by branch and bound.

use crate::error::Error;
use crate::graph::Graph;
use crate::Result;

/// Exact clique number with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    pub omega: usize,
    /// Lexicographically least maximum clique, sorted ascending.
    pub witness: Vec<usize>,
}

/// Exact chromatic number with a proper coloring using `chi` colors.
#[derive(Clone, Debug)]
pub struct ChromaticResult {
    pub chi: usize,
    pub coloring: Vec<usize>,
}

/// Word-packed vertex subset, matching the graph's row layout.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn full(n: usize, words: usize) -> Bits {
        let mut v = vec![u64::MAX; words];
        let tail = n % 64;
        if tail != 0 {
            v[words - 1] = (1u64 << tail) - 1;
        }
        if n == 0 {
            v.fill(0);
        }
        Bits(v)
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn intersect(&self, row: &[u64]) -> Bits {
        Bits(self.0.iter().zip(row).map(|(a, b)| a & b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + bit)
            })
        })
    }
}

/// Exact maximum clique: branch and bound over candidates in ascending
/// vertex order with a greedy-coloring upper bound. Strict-improvement
/// updates under lexicographic depth-first order make the reported witness
/// the lexicographically least maximum clique.
pub fn max_clique(g: &Graph) -> CliqueResult {
    let n = g.n();
    if n == 0 {
        return CliqueResult {
            omega: 0,
            witness: vec![],
        };
    }
    let mut best = CliqueResult {
        omega: 0,
        witness: vec![],
    };
    let mut current = Vec::new();
    let candidates = Bits::full(n, g.words_per_row());
    expand(g, &mut current, &candidates, &mut best);
    best
}

fn expand(g: &Graph, current: &mut Vec<usize>, candidates: &Bits, best: &mut CliqueResult) {
    if current.len() > best.omega {
        best.omega = current.len();
        best.witness = current.clone();
    }
    if candidates.is_empty() {
        return;
    }
    if current.len() + coloring_bound(g, candidates) <= best.omega {
        return;
    }
    let verts: Vec<usize> = candidates.iter().collect();
    let mut rest = candidates.clone();
    for (idx, &v) in verts.iter().enumerate() {
        if current.len() + (verts.len() - idx) <= best.omega {
            break;
        }
        rest.remove(v);
        current.push(v);
        expand(g, current, &rest.intersect(g.row(v)), best);
        current.pop();
    }
}

/// Greedy sequential coloring of the candidate set; the number of color
/// classes bounds the largest clique inside it.
fn coloring_bound(g: &Graph, candidates: &Bits) -> usize {
    let mut classes: Vec<Bits> = Vec::new();
    for v in candidates.iter() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if class.intersect(g.row(v)).is_empty() {
                class.0[v / 64] |= 1 << (v % 64);
                placed = true;
                break;
            }
        }
        if !placed {
            let mut class = Bits(vec![0; g.words_per_row()]);
            class.0[v / 64] |= 1 << (v % 64);
            classes.push(class);
        }
    }
    classes.len()
}

/// Exact chromatic number for n <= 64: iterative deepening from the clique
/// lower bound, with the first maximum clique pre-colored to break symmetry.
pub fn chromatic_number(g: &Graph) -> Result<ChromaticResult> {
    let n = g.n();
    if n > 64 {
        return Err(Error::ChromaticTooLarge(n));
    }
    if n == 0 {
        return Ok(ChromaticResult {
            chi: 0,
            coloring: vec![],
        });
    }
    let clique = max_clique(g);
    // color remaining vertices in descending-degree order
    let mut order: Vec<usize> = (0..n).filter(|v| !clique.witness.contains(v)).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    for k in clique.omega..=n {
        let mut coloring = vec![usize::MAX; n];
        for (c, &v) in clique.witness.iter().enumerate() {
            coloring[v] = c;
        }
        if color_rest(g, &order, 0, k, clique.omega, &mut coloring) {
            return Ok(ChromaticResult { chi: k, coloring });
        }
    }
    unreachable!("n colors always suffice")
}

fn color_rest(
    g: &Graph,
    order: &[usize],
    pos: usize,
    k: usize,
    used: usize,
    coloring: &mut [usize],
) -> bool {
    let Some(&v) = order.get(pos) else {
        return true;
    };
    // symmetry break: at most one brand-new color may be introduced
    let limit = k.min(used + 1);
    'colors: for c in 0..limit {
        for u in g.neighbors(v) {
            if coloring[u] == c {
                continue 'colors;
            }
        }
        coloring[v] = c;
        if color_rest(g, order, pos + 1, k, used.max(c + 1), coloring) {
            return true;
        }
        coloring[v] = usize::MAX;
    }
    false
}
