//! Digraphs, their totally cyclic subdigraphs, the graphic NL-coflow
//! polynomial and a brute-force acyclic coloring counter.

use std::fmt;
use std::str::FromStr;

use crate::bits::{self, Mask, MAX_GROUND};
use crate::error::{Error, Result};
use crate::exact::{rank_rat, rat, RatMatrix};
use crate::om::{mobius_from_bottom, RealizedOM};
use crate::poly::TriPoly;

/// Largest arc count for which subsets are enumerated by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Largest number of colorings `k^|V|` the counter will enumerate.
pub const DEFAULT_COLORING_BUDGET: u64 = 20_000_000;

/// A directed multigraph; self-loops and parallel arcs are allowed. The
/// order of `arcs` fixes the column order of the incidence matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    vertex_count: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertex_count: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(t, h)) = arcs
            .iter()
            .find(|(t, h)| *t >= vertex_count || *h >= vertex_count)
        {
            return Err(Error::Dimension(format!(
                "arc ({t}, {h}) has an endpoint outside 0..{vertex_count}"
            )));
        }
        Ok(Self { vertex_count, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn all_arcs(&self) -> Mask {
        bits::full_mask(self.arcs.len())
    }

    pub fn has_self_loop(&self) -> bool {
        self.arcs.iter().any(|(t, h)| t == h)
    }

    fn check_mask_width(&self) -> Result<()> {
        if self.arcs.len() > MAX_GROUND {
            return Err(Error::Resource(format!(
                "{} arcs; at most {MAX_GROUND} are supported",
                self.arcs.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "digraph {}", self.vertex_count)?;
        for (t, h) in &self.arcs {
            writeln!(f, "{t} {h}")?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Text format: a header line `digraph <vertexCount>`, then one
/// `<tail> <head>` line per arc (0-based ids). Blank lines and lines
/// starting with `#` are skipped.
impl FromStr for Digraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut vertex_count = None;
        let mut arcs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            // 1-based column of every whitespace-separated token
            let tokens: Vec<(usize, &str)> = raw
                .split_whitespace()
                .map(|t| (t.as_ptr() as usize - raw.as_ptr() as usize + 1, t))
                .collect();
            let Some(n) = vertex_count else {
                match tokens.as_slice() {
                    [(_, "digraph"), (col, count)] => {
                        let n = count.parse::<usize>().map_err(|_| {
                            parse_err(line, *col, format!("bad vertex count {count:?}"))
                        })?;
                        vertex_count = Some(n);
                    }
                    _ => {
                        return Err(parse_err(
                            line,
                            1,
                            "expected header `digraph <vertexCount>`",
                        ))
                    }
                }
                continue;
            };
            let [(tc, tail), (hc, head)] = tokens.as_slice() else {
                let col = tokens.get(2).map_or(1, |t| t.0);
                return Err(parse_err(line, col, "expected `<tail> <head>`"));
            };
            let vertex = |s: &str, col: usize| -> Result<usize> {
                let v = s
                    .parse::<usize>()
                    .map_err(|_| parse_err(line, col, format!("bad vertex id {s:?}")))?;
                if v >= n {
                    return Err(parse_err(
                        line,
                        col,
                        format!("vertex {v} out of range 0..{n}"),
                    ));
                }
                Ok(v)
            };
            arcs.push((vertex(tail, *tc)?, vertex(head, *hc)?));
        }
        let n = vertex_count.ok_or_else(|| parse_err(1, 1, "missing `digraph` header"))?;
        Digraph::new(n, arcs)
    }
}

/// Vertex-by-arc matrix with `+1` at the tail and `−1` at the head; a
/// self-loop gives a zero column.
pub fn incidence_matrix(d: &Digraph) -> RatMatrix {
    let mut m = RatMatrix::zeros(d.vertex_count, d.arcs.len());
    for (j, &(t, h)) in d.arcs.iter().enumerate() {
        if t != h {
            m.set(t, j, rat(1));
            m.set(h, j, rat(-1));
        }
    }
    m
}

/// Strongly connected component index of every vertex in the spanning
/// subdigraph with arc set `subset` (Tarjan, iterative).
pub fn strong_components(d: &Digraph, subset: Mask) -> Vec<usize> {
    let n = d.vertex_count;
    let mut adj = vec![Vec::new(); n];
    for a in bits::elements(subset) {
        let (t, h) = d.arcs[a];
        adj[t].push(h);
    }
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut work = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = work.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Arcs of `subset` that lie on a directed cycle of `D[subset]`.
fn cyclic_arcs(d: &Digraph, subset: Mask) -> Mask {
    let comp = strong_components(d, subset);
    bits::elements(subset)
        .filter(|&a| {
            let (t, h) = d.arcs[a];
            comp[t] == comp[h]
        })
        .fold(0, |m, a| m | 1 << a)
}

/// Whether every arc of `D[subset]` lies on a directed cycle of `D[subset]`.
pub fn is_totally_cyclic(d: &Digraph, subset: Mask) -> bool {
    cyclic_arcs(d, subset) == subset
}

/// `Q = {B ⊆ A : D[B] totally cyclic}` ordered by inclusion.
#[derive(Clone, Debug)]
pub struct TotallyCyclicPoset {
    pub members: Vec<Mask>,
    /// `μ_Q(∅, B)` for each member, in the same order.
    pub mobius: Vec<i64>,
}

pub fn totally_cyclic_poset(d: &Digraph, cap: usize) -> Result<TotallyCyclicPoset> {
    if d.arcs.len() > cap {
        return Err(Error::Resource(format!(
            "{} arcs exceed the enumeration cap of {cap}",
            d.arcs.len()
        )));
    }
    d.check_mask_width()?;
    let members: Vec<Mask> = (0..=d.all_arcs())
        .filter(|&b| is_totally_cyclic(d, b))
        .collect();
    let mobius = mobius_from_bottom(&members, |a, b| bits::is_subset(*a, *b))?;
    Ok(TotallyCyclicPoset { members, mobius })
}

/// `ψ(x) = Σ_{B ∈ Q} μ_Q(∅, B) · x^{rk(A/B)}` with `rk(A/B) = rk(A) − rk(B)`
/// from incidence-matrix ranks.
pub fn nl_coflow_graphic(d: &Digraph, cap: usize) -> Result<TriPoly> {
    let q = totally_cyclic_poset(d, cap)?;
    let inc = incidence_matrix(d);
    let full = rank_rat(&inc);
    let mut psi = TriPoly::zero();
    for (&b, &mu) in q.members.iter().zip(&q.mobius) {
        let cols: Vec<usize> = bits::elements(b).collect();
        let exp = full - rank_rat(&inc.select_columns(&cols));
        psi.add_term((exp as u32, 0, 0), mu.into());
    }
    Ok(psi)
}

/// Number of maps `V → {1..k}` in which no color class induces a directed
/// cycle, by exhaustive enumeration.
pub fn count_acyclic_colorings(d: &Digraph, k: u64, budget: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Contract(
            "the number of colors must be positive".into(),
        ));
    }
    d.check_mask_width()?;
    let total = u32::try_from(d.vertex_count)
        .ok()
        .and_then(|v| k.checked_pow(v))
        .filter(|&t| t <= budget)
        .ok_or_else(|| {
            Error::Resource(format!(
                "{k}^{} colorings exceed the budget of {budget}",
                d.vertex_count
            ))
        })?;
    let mut color = vec![0u64; d.vertex_count];
    let mut count = 0;
    for _ in 0..total {
        let mono = d
            .arcs
            .iter()
            .enumerate()
            .filter(|(_, (t, h))| color[*t] == color[*h])
            .fold(0, |m, (a, _)| m | 1 << a);
        if cyclic_arcs(d, mono) == 0 {
            count += 1;
        }
        // next coloring in base k
        for c in color.iter_mut() {
            *c += 1;
            if *c < k {
                break;
            }
            *c = 0;
        }
    }
    Ok(count)
}

/// The graphic oriented matroid of `d`, realized by a row-reduced
/// incidence matrix. Elements are the arcs, labelled `1..=|A|`.
pub fn matroid_from_digraph(d: &Digraph) -> Result<RealizedOM> {
    RealizedOM::from_rat_matrix(&incidence_matrix(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::new(n, arcs.to_vec()).unwrap()
    }

    fn triangle() -> Digraph {
        g(3, &[(0, 1), (1, 2), (2, 0)])
    }

    fn digon() -> Digraph {
        g(2, &[(0, 1), (1, 0)])
    }

    #[test]
    fn incidence_examples() {
        let one = incidence_matrix(&g(2, &[(0, 1)]));
        assert_eq!(one, RatMatrix::from_i64_rows(1, &[&[1], &[-1]]).unwrap());
        let two = incidence_matrix(&digon());
        assert_eq!(
            two,
            RatMatrix::from_i64_rows(2, &[&[1, -1], &[-1, 1]]).unwrap()
        );
        let lp = incidence_matrix(&g(1, &[(0, 0)]));
        assert_eq!(lp, RatMatrix::zeros(1, 1));
    }

    #[test]
    fn totally_cyclic_examples() {
        assert!(is_totally_cyclic(&triangle(), 0));
        assert!(!is_totally_cyclic(&g(2, &[(0, 1)]), 1));
        assert!(is_totally_cyclic(&digon(), 0b11));
        assert!(is_totally_cyclic(&g(1, &[(0, 0)]), 1));
        assert!(!is_totally_cyclic(&triangle(), 0b011));
    }

    #[test]
    fn poset_examples() {
        let q = totally_cyclic_poset(&g(2, &[(0, 1)]), 16).unwrap();
        assert_eq!(q.members, vec![0]);
        let q = totally_cyclic_poset(&digon(), 16).unwrap();
        assert_eq!(q.members, vec![0, 0b11]);
        assert_eq!(q.mobius, vec![1, -1]);
        let q = totally_cyclic_poset(&triangle(), 16).unwrap();
        assert_eq!(q.members, vec![0, 0b111]);
    }

    #[test]
    fn poset_respects_cap() {
        let many = g(2, &[(0, 1); 5]);
        assert!(matches!(
            totally_cyclic_poset(&many, 4),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn graphic_coflow_examples() {
        assert_eq!(
            nl_coflow_graphic(&triangle(), 16).unwrap(),
            TriPoly::from_x_coeffs(&[-1, 0, 1])
        );
        assert_eq!(
            nl_coflow_graphic(&digon(), 16).unwrap(),
            TriPoly::from_x_coeffs(&[-1, 1])
        );
        assert_eq!(nl_coflow_graphic(&g(3, &[]), 16).unwrap(), TriPoly::one());
    }

    #[test]
    fn coloring_examples() {
        let b = DEFAULT_COLORING_BUDGET;
        assert_eq!(count_acyclic_colorings(&g(1, &[]), 3, b).unwrap(), 3);
        assert_eq!(count_acyclic_colorings(&digon(), 2, b).unwrap(), 2);
        assert_eq!(count_acyclic_colorings(&triangle(), 2, b).unwrap(), 6);
        assert_eq!(count_acyclic_colorings(&g(0, &[]), 4, b).unwrap(), 1);
        assert_eq!(count_acyclic_colorings(&g(2, &[(1, 1)]), 3, b).unwrap(), 0);
    }

    #[test]
    fn coloring_budget_and_zero_colors() {
        assert!(matches!(
            count_acyclic_colorings(&g(10, &[]), 10, 1000),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            count_acyclic_colorings(&digon(), 0, 1000),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn matroid_examples() {
        let m = matroid_from_digraph(&g(2, &[(0, 1)])).unwrap();
        assert_eq!(
            m.to_rat().unwrap(),
            RatMatrix::from_i64_rows(1, &[&[1]]).unwrap()
        );
        let m = matroid_from_digraph(&digon()).unwrap();
        assert_eq!(
            m.to_rat().unwrap(),
            RatMatrix::from_i64_rows(2, &[&[1, -1]]).unwrap()
        );
        let m = matroid_from_digraph(&g(1, &[(0, 0)])).unwrap();
        assert_eq!((m.rank(), m.ground_size()), (0, 1));
    }

    #[test]
    fn parse_and_print() {
        let text = "# a digon\ndigraph 2\n0 1\n\n1 0\n";
        let d: Digraph = text.parse().unwrap();
        assert_eq!(d, digon());
        assert_eq!(d.to_string().parse::<Digraph>().unwrap(), d);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "digraph 2\n0 1\n0  7\n".parse::<Digraph>().unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 4,
                message: "vertex 7 out of range 0..2".into()
            }
        );
        assert!(matches!(
            "graph 2\n".parse::<Digraph>(),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            "digraph 2\n0 1 1\n".parse::<Digraph>(),
            Err(Error::Parse {
                line: 2,
                column: 5,
                ..
            })
        ));
        assert!(matches!("".parse::<Digraph>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn components_of_a_path_and_cycle() {
        // 0 -> 1 -> 2 -> 1, 3 isolated
        let d = g(4, &[(0, 1), (1, 2), (2, 1)]);
        let c = strong_components(&d, d.all_arcs());
        assert_eq!(c[1], c[2]);
        assert_ne!(c[0], c[1]);
        assert_ne!(c[3], c[0]);
    }
}
