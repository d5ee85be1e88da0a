//! Order in which the selected components are patched.
//!
//! Every selected component contributes its dual edge in `g`'s subdivision.
//! These edges must be distinct and form a forest. A plan walks each tree
//! from a root and patches the coefficient of `g` at the newly reached
//! vertex, one component per edge.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::lattice::{det_e, sub_e, Exp};
use crate::intersect::IntersectionReport;

/// How the selected components are made independent of each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Margin mode if its bound holds, span mode otherwise.
    Auto,
    /// Each target lies closer to `P₊` than the margin of `g` on that edge,
    /// so later patches cannot disturb earlier components.
    Margin,
    /// No patched vertex lies on the line of an already finished edge.
    Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanStep {
    pub component: usize,
    pub simplex: (Exp, Exp),
    pub parent: Exp,
    pub child: Exp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderPlan {
    pub mode: Mode,
    pub steps: Vec<PlanStep>,
    /// Every vertex of the forest in placement order.
    pub vertices: Vec<Exp>,
}

fn norm(s: (Exp, Exp)) -> (Exp, Exp) {
    if s.0 <= s.1 {
        s
    } else {
        (s.1, s.0)
    }
}

/// Whether `p` lies on the affine line through `s`.
fn on_aff(p: Exp, s: (Exp, Exp)) -> bool {
    det_e(sub_e(s.1, s.0), sub_e(p, s.0)) == 0
}

struct Forest {
    vertices: Vec<Exp>,
    index: BTreeMap<Exp, usize>,
    /// Neighbour, component, sorted by neighbour.
    adj: Vec<Vec<(usize, usize)>>,
    /// Simplex and component of every edge.
    edges: Vec<((Exp, Exp), usize)>,
    tree: Vec<usize>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

fn path(adj: &[Vec<(usize, usize)>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &(w, _) in &adj[u] {
            if prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut out = vec![to];
    let mut u = to;
    while u != from {
        u = prev[u];
        out.push(u);
    }
    out.reverse();
    out
}

fn build_forest(report: &IntersectionReport, selection: &[usize]) -> Result<Forest> {
    let mut pairs = Vec::new();
    for &k in selection {
        let c = report
            .components
            .get(k)
            .filter(|c| c.is_selectable())
            .ok_or(Error::NotALsComponent(k))?;
        pairs.push((c.phi2.unwrap(), k));
    }
    forest_of(&pairs)
}

fn forest_of(pairs: &[((Exp, Exp), usize)]) -> Result<Forest> {
    let mut by_simplex: BTreeMap<(Exp, Exp), Vec<usize>> = BTreeMap::new();
    for &(s, k) in pairs {
        by_simplex.entry(norm(s)).or_default().push(k);
    }
    if let Some((s, ks)) = by_simplex.iter().find(|(_, ks)| ks.len() > 1) {
        return Err(Error::InjectivityFailure {
            simplex: *s,
            components: ks.clone(),
        });
    }
    let vertices: Vec<Exp> = by_simplex
        .keys()
        .flat_map(|s| [s.0, s.1])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<Exp, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = vertices.len();
    let mut adj = vec![Vec::new(); n];
    let mut parent: Vec<usize> = (0..n).collect();
    let mut edges = Vec::new();
    for (s, ks) in &by_simplex {
        let (a, b) = (index[&s.0], index[&s.1]);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            let cycle = path(&adj, a, b).into_iter().map(|i| vertices[i]).collect();
            return Err(Error::CycleFailure { cycle });
        }
        parent[ra] = rb;
        adj[a].push((b, ks[0]));
        adj[b].push((a, ks[0]));
        edges.push((*s, ks[0]));
    }
    for l in &mut adj {
        l.sort();
    }
    let tree = (0..n).map(|i| find(&mut parent, i)).collect();
    Ok(Forest {
        vertices,
        index,
        adj,
        edges,
        tree,
    })
}

fn margin_order(fr: &Forest) -> OrderPlan {
    let n = fr.vertices.len();
    let mut seen = vec![false; n];
    let mut steps = Vec::new();
    let mut order = Vec::new();
    // vertices are sorted, so the first unseen one is its tree's smallest
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        order.push(fr.vertices[root]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &(w, comp) in &fr.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(fr.vertices[w]);
                    steps.push(PlanStep {
                        component: comp,
                        simplex: norm((fr.vertices[u], fr.vertices[w])),
                        parent: fr.vertices[u],
                        child: fr.vertices[w],
                    });
                    queue.push_back(w);
                }
            }
        }
    }
    OrderPlan {
        mode: Mode::Margin,
        steps,
        vertices: order,
    }
}

struct SpanSearch<'a> {
    fr: &'a Forest,
    failed: HashSet<u64>,
    order: Vec<usize>,
    /// Edges finished so far.
    done: Vec<(Exp, Exp)>,
}

impl SpanSearch<'_> {
    fn run(&mut self, placed: u64) -> bool {
        let n = self.fr.vertices.len();
        if placed.count_ones() as usize == n {
            return true;
        }
        if self.failed.contains(&placed) {
            return false;
        }
        for v in 0..n {
            if placed & (1 << v) != 0 {
                continue;
            }
            let started = (0..n).any(|u| placed & (1 << u) != 0 && self.fr.tree[u] == self.fr.tree[v]);
            let link = self.fr.adj[v].iter().find(|(u, _)| placed & (1 << u) != 0);
            if started && link.is_none() {
                continue;
            }
            if link.is_some() && self.done.iter().any(|s| on_aff(self.fr.vertices[v], *s)) {
                continue;
            }
            self.order.push(v);
            if let Some(&(u, _)) = link {
                self.done.push(norm((self.fr.vertices[u], self.fr.vertices[v])));
            }
            if self.run(placed | (1 << v)) {
                return true;
            }
            self.order.pop();
            if link.is_some() {
                self.done.pop();
            }
        }
        self.failed.insert(placed);
        false
    }
}

fn span_order(fr: &Forest) -> Result<OrderPlan> {
    for (s, _) in &fr.edges {
        if let Some((o, _)) = fr.edges.iter().find(|(o, _)| o != s && on_aff(o.0, *s) && on_aff(o.1, *s)) {
            return Err(Error::OrderingFailure(format!(
                "dual edges {s:?} and {o:?} are collinear"
            )));
        }
    }
    let n = fr.vertices.len();
    if n > 64 {
        return Err(Error::OrderingFailure(format!("{n} vertices exceed the search limit of 64")));
    }
    let mut search = SpanSearch {
        fr,
        failed: HashSet::new(),
        order: Vec::new(),
        done: Vec::new(),
    };
    if !search.run(0) {
        return Err(Error::OrderingFailure(
            "every vertex order patches a vertex on the line of a finished edge".into(),
        ));
    }
    let mut placed = vec![false; n];
    let mut steps = Vec::new();
    for &v in &search.order {
        if let Some(&(u, comp)) = fr.adj[v].iter().find(|(u, _)| placed[*u]) {
            steps.push(PlanStep {
                component: comp,
                simplex: norm((fr.vertices[u], fr.vertices[v])),
                parent: fr.vertices[u],
                child: fr.vertices[v],
            });
        }
        placed[v] = true;
    }
    Ok(OrderPlan {
        mode: Mode::Span,
        steps,
        vertices: search.order.iter().map(|&v| fr.vertices[v]).collect(),
    })
}

/// A patch order for `selection` in the given mode. `Auto` tries margin
/// order first (its numeric bound is checked by the caller).
pub fn plan_order(report: &IntersectionReport, selection: &[usize], mode: Mode) -> Result<OrderPlan> {
    let fr = build_forest(report, selection)?;
    debug_assert_eq!(fr.index.len(), fr.vertices.len());
    match mode {
        Mode::Auto | Mode::Margin => Ok(margin_order(&fr)),
        Mode::Span => span_order(&fr),
    }
}
