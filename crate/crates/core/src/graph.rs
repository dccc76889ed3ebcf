//! Simple graphs on `1..=n`, closed labelings, and the combinatorial
//! invariants the closed-form formulas consume.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Certificate, Error, ParseError, ParseErrorKind, Result};

/// Largest `n` for exhaustive subset searches.
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 12;
/// Largest `n` for the permutation search in [`find_closed_labeling`].
pub const LABELING_SEARCH_CAP: usize = 9;

/// Simple undirected graph on vertices `1..=n`. Edges are stored as
/// `(i, j)` with `i < j`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(g: GraphJson) -> Result<Self> {
        Graph::new(g.n, g.edges.into_iter().map(|[i, j]| (i, j)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson { n: g.n, edges: g.edges.iter().map(|&(i, j)| [i, j]).collect() }
    }
}

impl Graph {
    /// Validates and normalizes `edges`; either endpoint order is accepted.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            let (i, j) = (a.min(b), a.max(b));
            if i == j {
                return Err(Error::InvalidGraph(format!("loop at vertex {i}")));
            }
            if i < 1 || j > n {
                return Err(Error::InvalidGraph(format!("edge {{{a},{b}}} outside 1..{n}")));
            }
            if !set.insert((i, j)) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{i},{j}}}")));
            }
        }
        Ok(Graph { n, edges: set.into_iter().collect() })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        Graph { n, edges: (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect() }
    }

    pub fn path(n: usize) -> Self {
        Graph { n, edges: (1..n).map(|i| (i, i + 1)).collect() }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        g.edges.push((1, n));
        g.edges.sort_unstable();
        g
    }

    /// Vertex-disjoint union; `other` is shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(i, j)| (i + shift, j + shift)));
        Graph { n: self.n + other.n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }

    /// Adjacency matrix indexed `1..=n`.
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n + 1]; self.n + 1];
        for &(i, j) in &self.edges {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        adj
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(i, j)| if i == v { Some(j) } else if j == v { Some(i) } else { None })
            .collect()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut touched = vec![false; self.n + 1];
        for &(i, j) in &self.edges {
            touched[i] = true;
            touched[j] = true;
        }
        (1..=self.n).filter(|&v| !touched[v]).collect()
    }

    /// Induced subgraph on `vertices` (any order), relabeled `1..=k` by
    /// increasing original label. Returns the graph and the original labels.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut vs: Vec<usize> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut pos = vec![0; self.n + 1];
        for (k, &v) in vs.iter().enumerate() {
            pos[v] = k + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| pos[i] != 0 && pos[j] != 0)
            .map(|&(i, j)| (pos[i], pos[j]))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        (Graph { n: vs.len().max(1), edges }, vs)
    }

    /// Drops isolated vertices, keeping the relative order of the rest.
    /// Returns the stripped graph and the removed vertices.
    pub fn strip_isolated(&self) -> (Graph, Vec<usize>) {
        let iso = self.isolated_vertices();
        if iso.is_empty() {
            return (self.clone(), iso);
        }
        let keep: Vec<usize> = (1..=self.n).filter(|v| !iso.contains(v)).collect();
        if keep.is_empty() {
            return (Graph::empty(1), iso);
        }
        (self.induced(&keep).0, iso)
    }

    /// Edge `{i,j}` becomes `{perm(i), perm(j)}`.
    pub fn relabel(&self, labeling: &Labeling) -> Result<Graph> {
        if labeling.len() != self.n {
            return Err(Error::InvalidLabeling(format!(
                "labeling has {} entries for {} vertices",
                labeling.len(),
                self.n
            )));
        }
        Graph::new(self.n, self.edges.iter().map(|&(i, j)| (labeling.apply(i), labeling.apply(j))))
    }

    /// Edge-set bitmask over the lexicographic list of pairs; the catalog key.
    pub fn encoding(&self) -> u128 {
        let mut code = 0u128;
        for &(i, j) in &self.edges {
            code |= 1u128 << pair_index(self.n, i, j);
        }
        code
    }

    pub fn from_encoding(n: usize, code: u128) -> Graph {
        let edges = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| code >> pair_index(n, i, j) & 1 == 1)
            .collect();
        Graph { n, edges }
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for (i, j) in &self.edges {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // pairs (1,2),(1,3),..,(1,n),(2,3),..
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

/// Parses the edge-list format: header `n m`, then `m` lines `i j`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError { line: 1, kind: ParseErrorKind::MissingHeader })?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| ParseError { line: hline, kind: ParseErrorKind::Malformed(header.into()) })?;
    let [n, m] = nums[..] else {
        return Err(ParseError { line: hline, kind: ParseErrorKind::Malformed(header.into()) });
    };
    if n == 0 {
        return Err(ParseError { line: hline, kind: ParseErrorKind::Malformed(header.into()) });
    }

    let mut edges = BTreeSet::new();
    let mut last_line = hline;
    for (line, l) in lines {
        last_line = line;
        let malformed = || ParseError { line, kind: ParseErrorKind::Malformed(l.into()) };
        let v: Vec<usize> = l
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| malformed())?;
        let [a, b] = v[..] else { return Err(malformed()) };
        for x in [a, b] {
            if x < 1 || x > n {
                return Err(ParseError { line, kind: ParseErrorKind::OutOfRange { vertex: x, n } });
            }
        }
        if a == b {
            return Err(ParseError { line, kind: ParseErrorKind::Loop(a) });
        }
        let e = (a.min(b), a.max(b));
        if !edges.insert(e) {
            return Err(ParseError { line, kind: ParseErrorKind::DuplicateEdge(e.0, e.1) });
        }
        if edges.len() > m {
            return Err(ParseError { line, kind: ParseErrorKind::EdgeCount { declared: m, found: edges.len() } });
        }
    }
    if edges.len() != m {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::EdgeCount { declared: m, found: edges.len() },
        });
    }
    Ok(Graph { n, edges: edges.into_iter().collect() })
}

/// A relabeling: vertex `i` gets label `perm[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Labeling {
    perm: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Labeling {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Labeling::new(v)
    }
}

impl From<Labeling> for Vec<usize> {
    fn from(l: Labeling) -> Self {
        l.perm
    }
}

impl Labeling {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n + 1];
        for &p in &perm {
            if p < 1 || p > n || seen[p] {
                return Err(Error::InvalidLabeling(format!("{perm:?} is not a permutation of 1..{n}")));
            }
            seen[p] = true;
        }
        Ok(Labeling { perm })
    }

    pub fn identity(n: usize) -> Self {
        Labeling { perm: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &p)| p == k + 1)
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v - 1]
    }

    pub fn inverse(&self) -> Labeling {
        let mut inv = vec![0; self.perm.len()];
        for (k, &p) in self.perm.iter().enumerate() {
            inv[p - 1] = k + 1;
        }
        Labeling { perm: inv }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Labeling> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Labeling { perm: cur.clone() });
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

/// First violating triple of the closedness criterion under the given
/// labels, or `None` when the graph is closed for them.
pub fn closed_violation(g: &Graph) -> Option<Certificate> {
    let adj = g.adjacency();
    let n = g.n();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                if adj[i][j] && adj[i][k] && !adj[j][k] {
                    return Some(Certificate::Triple { i, j, k, present: [(i, j), (i, k)], missing: (j, k) });
                }
                if adj[i][k] && adj[j][k] && !adj[i][j] {
                    return Some(Certificate::Triple { i, j, k, present: [(i, k), (j, k)], missing: (i, j) });
                }
            }
        }
    }
    None
}

/// Closed for its current labels: `J_G`'s generators form a quadratic
/// Gröbner basis under lex `x_1 > ... > x_n > y_1 > ... > y_n`. Decided by
/// the triple criterion.
pub fn is_closed(g: &Graph) -> bool {
    closed_violation(g).is_none()
}

pub fn is_closed_labeling(g: &Graph, l: &Labeling) -> Result<bool> {
    Ok(is_closed(&g.relabel(l)?))
}

/// Searches orderings position by position, rejecting a partial ordering as
/// soon as a triple among placed vertices violates the criterion. Returns the
/// first closed labeling in that search order.
pub fn find_closed_labeling(g: &Graph) -> Result<Option<Labeling>> {
    if is_closed(g) {
        return Ok(Some(Labeling::identity(g.n())));
    }
    if g.n() > LABELING_SEARCH_CAP {
        return Err(Error::ScaleExceeded {
            what: "vertex count for labeling search",
            limit: LABELING_SEARCH_CAP,
            actual: g.n(),
        });
    }
    let adj = g.adjacency();
    let n = g.n();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];

    fn extend(adj: &[Vec<bool>], n: usize, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if order.len() == n {
            return true;
        }
        for v in 1..=n {
            if used[v] {
                continue;
            }
            // v takes the next (largest so far) label k
            let ok = (0..order.len()).all(|a| {
                (a + 1..order.len()).all(|b| {
                    let (i, j) = (order[a], order[b]);
                    !(adj[i][j] && adj[i][v] && !adj[j][v]) && !(adj[i][v] && adj[j][v] && !adj[i][j])
                })
            });
            if !ok {
                continue;
            }
            order.push(v);
            used[v] = true;
            if extend(adj, n, order, used) {
                return true;
            }
            order.pop();
            used[v] = false;
        }
        false
    }

    if !extend(&adj, n, &mut order, &mut used) {
        return Ok(None);
    }
    let mut perm = vec![0; n];
    for (label, &v) in order.iter().enumerate() {
        perm[v - 1] = label + 1;
    }
    Ok(Some(Labeling { perm }))
}

/// Connected components, each sorted, listed by smallest vertex. Isolated
/// vertices are singleton components.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for &(i, j) in g.edges() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for v in 1..=n {
        let r = find(&mut parent, v);
        let k = *index.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[k].push(v);
    }
    groups
}

/// One identification in a decomposition: `vertex` is shared by parts `a` and `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Glue {
    pub vertex: usize,
    pub a: usize,
    pub b: usize,
}

/// Decomposition of a connected graph into indecomposable pieces glued at
/// vertices simplicial in both pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<Vec<usize>>,
    pub r: usize,
    pub glue: Vec<Glue>,
    /// Whether all maximal split sequences were enumerated.
    pub uniqueness_checked: bool,
    /// Set when two maximal split sequences produced different parts.
    pub ambiguous: bool,
}

type Mask = u64;

fn mask_vertices(m: Mask) -> Vec<usize> {
    (0..64).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect()
}

struct SplitSearch<'a> {
    adj: &'a [Vec<bool>],
    memo: HashMap<Mask, BTreeSet<Vec<Mask>>>,
}

impl SplitSearch<'_> {
    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    fn components_without(&self, mask: Mask, v: usize) -> Vec<Mask> {
        let mut rest = mask & !(1 << (v - 1));
        let mut comps = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize + 1;
            let mut comp: Mask = 1 << (start - 1);
            let mut frontier = vec![start];
            while let Some(u) = frontier.pop() {
                for w in mask_vertices(rest & !comp) {
                    if self.adjacent(u, w) {
                        comp |= 1 << (w - 1);
                        frontier.push(w);
                    }
                }
            }
            rest &= !comp;
            comps.push(comp);
        }
        comps
    }

    fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(k, &a)| vs[k + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    fn simplicial_in(&self, v: usize, side: Mask) -> bool {
        let nbrs: Vec<usize> = mask_vertices(side).into_iter().filter(|&u| self.adjacent(v, u)).collect();
        self.is_clique(&nbrs)
    }

    /// Valid binary splits of the induced subgraph on `mask`:
    /// `(vertex, side_a, side_b)` with both sides containing the vertex.
    fn splits(&self, mask: Mask) -> Vec<(usize, Mask, Mask)> {
        let mut out = Vec::new();
        for v in mask_vertices(mask) {
            let comps = self.components_without(mask, v);
            if comps.len() < 2 {
                continue;
            }
            let k = comps.len();
            // subsets containing comps[0], to skip mirror images
            for sel in 0..(1u64 << (k - 1)) {
                let chosen = (sel << 1) | 1;
                if chosen == (1 << k) - 1 {
                    continue;
                }
                let (mut a, mut b) = (0, 0);
                for (c, comp) in comps.iter().enumerate() {
                    if chosen >> c & 1 == 1 {
                        a |= comp;
                    } else {
                        b |= comp;
                    }
                }
                if self.simplicial_in(v, a) && self.simplicial_in(v, b) {
                    let bit = 1 << (v - 1);
                    out.push((v, a | bit, b | bit));
                }
            }
        }
        out
    }

    fn all_maximal(&mut self, mask: Mask) -> BTreeSet<Vec<Mask>> {
        if let Some(r) = self.memo.get(&mask) {
            return r.clone();
        }
        let splits = self.splits(mask);
        let mut out = BTreeSet::new();
        if splits.is_empty() {
            out.insert(vec![mask]);
        }
        for (_, a, b) in splits {
            let left = self.all_maximal(a);
            let right = self.all_maximal(b);
            for l in &left {
                for r in &right {
                    let mut parts: Vec<Mask> = l.iter().chain(r.iter()).copied().collect();
                    parts.sort_unstable();
                    out.insert(parts);
                }
            }
        }
        self.memo.insert(mask, out.clone());
        out
    }

    fn greedy(&self, mask: Mask, parts: &mut Vec<Mask>) {
        match self.splits(mask).first() {
            None => parts.push(mask),
            Some(&(_, a, b)) => {
                self.greedy(a, parts);
                self.greedy(b, parts);
            }
        }
    }
}

/// Decomposes a connected graph into indecomposable pieces by repeated
/// binary splits at a vertex simplicial on both sides.
///
/// When `n` is within `brute_force_cap` every maximal split sequence is
/// enumerated and [`Decomposition::ambiguous`] records whether they disagree.
pub fn decompose_indecomposable(g: &Graph, brute_force_cap: usize) -> Result<Decomposition> {
    if g.n() > 64 {
        return Err(Error::ScaleExceeded { what: "vertex count for decomposition", limit: 64, actual: g.n() });
    }
    if connected_components(g).len() != 1 {
        return Err(Error::InvalidGraph("decomposition needs a connected graph".into()));
    }
    let adj = g.adjacency();
    let mut search = SplitSearch { adj: &adj, memo: HashMap::new() };
    let full: Mask = if g.n() == 64 { u64::MAX } else { (1 << g.n()) - 1 };
    let mut parts = Vec::new();
    search.greedy(full, &mut parts);
    parts.sort_unstable();

    let (uniqueness_checked, ambiguous) = if g.n() <= brute_force_cap {
        let all = search.all_maximal(full);
        (true, all.len() != 1 || all.first() != Some(&parts))
    } else {
        (false, false)
    };

    let vertex_parts: Vec<Vec<usize>> = parts.iter().map(|&m| mask_vertices(m)).collect();
    let mut glue = Vec::new();
    for a in 0..parts.len() {
        for b in a + 1..parts.len() {
            let common = parts[a] & parts[b];
            if common != 0 {
                glue.push(Glue { vertex: common.trailing_zeros() as usize + 1, a, b });
            }
        }
    }
    Ok(Decomposition { r: parts.len(), parts: vertex_parts, glue, uniqueness_checked, ambiguous })
}

/// Number of indecomposable pieces summed over connected components.
pub fn indecomposable_count(g: &Graph, brute_force_cap: usize) -> Result<usize> {
    let mut r = 0;
    for comp in connected_components(g) {
        let (sub, _) = g.induced(&comp);
        r += decompose_indecomposable(&sub, brute_force_cap)?.r;
    }
    Ok(r)
}

/// Clique number, by Bron–Kerbosch with pivoting.
pub fn clique_number(g: &Graph) -> usize {
    let adj = g.adjacency();
    fn bk(adj: &[Vec<bool>], size: usize, p: Vec<usize>, x: Vec<usize>, best: &mut usize) {
        if p.is_empty() {
            *best = (*best).max(size);
            return;
        }
        if size + p.len() <= *best {
            return;
        }
        let pivot = p.iter().chain(x.iter()).copied().max_by_key(|&u| p.iter().filter(|&&w| adj[u][w]).count()).unwrap();
        let mut p = p;
        let mut x = x;
        let cand: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        for v in cand {
            let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
            bk(adj, size + 1, np, nx, best);
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut best = 0;
    bk(&adj, 0, (1..=g.n()).collect(), Vec::new(), &mut best);
    best
}

/// Number of edges in a longest induced path, by subset enumeration.
pub fn longest_induced_path(g: &Graph, brute_force_cap: usize) -> Result<usize> {
    let n = g.n();
    if n > brute_force_cap.min(63) {
        return Err(Error::ScaleExceeded {
            what: "vertex count for induced-path enumeration",
            limit: brute_force_cap.min(63),
            actual: n,
        });
    }
    let mut nbr = vec![0u64; n + 1];
    for &(i, j) in g.edges() {
        nbr[i] |= 1 << (j - 1);
        nbr[j] |= 1 << (i - 1);
    }
    let mut best = 0;
    for mask in 1u64..(1 << n) {
        let k = mask.count_ones() as usize;
        if k - 1 <= best {
            continue;
        }
        let vs = mask_vertices(mask);
        let degs: Vec<u32> = vs.iter().map(|&v| (nbr[v] & mask).count_ones()).collect();
        let edges: u32 = degs.iter().sum::<u32>() / 2;
        if edges as usize != k - 1 || degs.iter().any(|&d| d > 2) {
            continue;
        }
        // connected + |E| = |V| - 1 + max degree 2 => path
        let mut seen = 1u64 << (vs[0] - 1);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in mask_vertices(frontier) {
                next |= nbr[v] & mask;
            }
            frontier = next & !seen;
            seen |= next;
        }
        if seen == mask {
            best = k - 1;
        }
    }
    Ok(best)
}

/// Bipartite graph whose edge ideal is the initial ideal of `J_G` for a
/// closed labeling: left vertex `X_i`, right vertex `Y_j`, edge for every
/// `{i,j} ∈ E(G)` with `i < j`, all in the closed labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteH {
    /// Closed labels `i` carrying an `X_i` vertex (not the largest of their component).
    pub left: Vec<usize>,
    /// Closed labels `j` carrying a `Y_j` vertex (not the smallest of their component).
    pub right: Vec<usize>,
    /// `(i, j)` meaning `X_i — Y_j`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Edge of `G` (original labels) behind each entry of `edges`.
    pub origin: Vec<(usize, usize)>,
    /// Components of the relabeled graph, each sorted.
    pub components: Vec<Vec<usize>>,
}

impl BipartiteH {
    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// `{X_i, Y_next(i)}` for consecutive vertices of each component.
    pub fn consecutive_matching(&self) -> Vec<(usize, usize)> {
        self.components.iter().flat_map(|c| c.windows(2).map(|w| (w[0], w[1]))).collect()
    }
}

pub fn build_h(g: &Graph, l: &Labeling) -> Result<BipartiteH> {
    let relabeled = g.relabel(l)?;
    if let Some(cert) = closed_violation(&relabeled) {
        return Err(Error::NotClosed(cert));
    }
    if let Some(&v) = relabeled.isolated_vertices().first() {
        return Err(Error::IsolatedVertex(l.inverse().apply(v)));
    }
    let components = connected_components(&relabeled);
    let mut left: Vec<usize> = components.iter().flat_map(|c| c[..c.len() - 1].to_vec()).collect();
    let mut right: Vec<usize> = components.iter().flat_map(|c| c[1..].to_vec()).collect();
    left.sort_unstable();
    right.sort_unstable();
    let inv = l.inverse();
    let edges = relabeled.edges().to_vec();
    let origin = edges
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (inv.apply(i), inv.apply(j));
            (a.min(b), a.max(b))
        })
        .collect();
    Ok(BipartiteH { left, right, edges, origin, components })
}

/// Maximum matching size by augmenting paths, and whether it is perfect.
pub fn matching_data(h: &BipartiteH) -> (usize, bool) {
    let lpos: HashMap<usize, usize> = h.left.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let rpos: HashMap<usize, usize> = h.right.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut adj = vec![Vec::new(); h.left.len()];
    for &(i, j) in &h.edges {
        adj[lpos[&i]].push(rpos[&j]);
    }
    let mut match_r: Vec<Option<usize>> = vec![None; h.right.len()];

    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], match_r: &mut [Option<usize>]) -> bool {
        for &w in &adj[u] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if match_r[w].is_none() || augment(match_r[w].unwrap(), adj, seen, match_r) {
                match_r[w] = Some(u);
                return true;
            }
        }
        false
    }

    let mut size = 0;
    for u in 0..h.left.len() {
        let mut seen = vec![false; h.right.len()];
        if augment(u, &adj, &mut seen, &mut match_r) {
            size += 1;
        }
    }
    (size, 2 * size == h.vertex_count())
}
