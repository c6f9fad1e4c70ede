//! A compacted trie over the terminated suffix encodings of a text, built
//! with one left-to-right pass in the style of McCreight's suffix-tree
//! algorithm.
//!
//! Row `i` of the underlying string family is the code of the suffix
//! starting at `i`, followed by a terminator `#`. The rows form a
//! *quasi-suffix collection*: lengths drop by one, no row is a prefix of
//! another (the terminator guarantees that), and two rows sharing a prefix
//! of length `l` have successor rows sharing at least `l - 1`. That last
//! property is what makes suffix links work even though chopping the first
//! position off a suffix rewrites its encoding.
//!
//! Nothing here ever materializes a row: every symbol is read on demand
//! from a [`CharacterOracle`], so construction costs
//! O(oracle calls × log n) with an empirically near-linear call count.
//!
//! Two departures from the classic algorithm, both forced by the encoded
//! alphabet:
//!
//! * Suffix links may point *inside* an edge, because dropping the first
//!   position can merge encodings that used to differ. Such links are
//!   stored as an explicit ancestor plus a target depth and re-resolved by
//!   skip/count when used (the resolution is stored back, so repeated uses
//!   stay cheap as edges split).
//! * Edge labels are reconstructed through a *witness*: each node remembers
//!   one suffix whose row passes through it, and label symbols are oracle
//!   queries against that suffix. After construction each node's witness is
//!   canonicalized to the smallest leaf below it.

use crate::code::CharCode;
use crate::lca::SparseMin;
use crate::oracle::CharacterOracle;
use crate::Value;
use std::collections::HashMap;

/// Arena index of a tree node.
pub type NodeId = usize;

const ROOT: NodeId = 0;

/// One symbol of the encoded alphabet: a code character, or the terminator
/// that ends every row. Ordered with the terminator last, matching the
/// child ordering used in traversals.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Char(CharCode),
    Terminator,
}

impl std::fmt::Debug for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Symbol::Char(c) => write!(f, "{c:?}"),
            Symbol::Terminator => write!(f, "#"),
        }
    }
}

/// A position in the tree: an explicit node, or a spot `offset` code
/// characters below `parent` on the edge selected by `head`. Edge offsets
/// stay strictly inside the edge's code characters, except that on a leaf
/// edge the offset may reach their end — the position just in front of the
/// terminator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Locus {
    Node(NodeId),
    Edge {
        parent: NodeId,
        head: Symbol,
        offset: usize,
    },
}

/// Suffix link target: resolved to an explicit node, or floating at `depth`
/// somewhere below `ancestor` (edge splits may have put new nodes on the
/// way since it was stored).
#[derive(Clone, Copy)]
enum Slink {
    Node(NodeId),
    Floating { ancestor: NodeId, depth: usize },
}

pub(crate) struct Node {
    pub(crate) parent: NodeId,
    /// Code characters on the path from the root; the terminator on a leaf
    /// edge is not counted, so a leaf hanging off a pure-`#` edge shares its
    /// parent's depth.
    pub(crate) depth: usize,
    pub(crate) children: HashMap<Symbol, NodeId>,
    slink: Option<Slink>,
    /// Start of some suffix whose row runs through this node; the smallest
    /// one once the tree is finalized.
    pub(crate) witness: usize,
    /// For leaves, the 1-based start of the suffix ending here.
    pub(crate) start: Option<usize>,
}

impl Node {
    pub(crate) fn new(parent: NodeId, depth: usize, witness: usize, start: Option<usize>) -> Self {
        Node {
            parent,
            depth,
            children: HashMap::new(),
            slink: None,
            witness,
            start,
        }
    }

    fn is_leaf(&self) -> bool {
        self.start.is_some()
    }
}

/// Suffix tree over the order-preserving encodings of a text's suffixes.
///
/// Immutable once built; queries are read-only, so shared references can be
/// used concurrently.
pub struct OpSuffixTree<T> {
    oracle: CharacterOracle<T>,
    nodes: Vec<Node>,
    /// Suffix start (1-based) to its leaf.
    leaf_of: Vec<NodeId>,
    /// Node to its first position in the Euler tour.
    tour_first: Vec<usize>,
    /// Range-minimum over the code depths along the Euler tour.
    rmq: SparseMin,
}

impl<T: Value> OpSuffixTree<T> {
    /// Indexes `text`: builds the character oracle and the tree over it.
    ///
    /// # Panics
    ///
    /// If `text` is empty — there is nothing to index.
    pub fn build(text: &[T]) -> Self {
        Self::from_oracle(CharacterOracle::build(text))
    }

    /// Builds the tree over an existing oracle (which fully determines the
    /// suffix encodings).
    ///
    /// # Panics
    ///
    /// If the oracle's text is empty.
    pub fn from_oracle(oracle: CharacterOracle<T>) -> Self {
        assert!(!oracle.is_empty(), "cannot index an empty text");
        let n = oracle.len();
        let nodes = {
            let mut builder = Builder {
                o: &oracle,
                n,
                nodes: vec![Node::new(ROOT, 0, 1, None)],
            };
            builder.insert_all();
            builder.nodes
        };
        Self::finalize(oracle, nodes)
    }

    /// Witness canonicalization, leaf lookup and Euler-tour RMQ; shared by
    /// construction and index deserialization.
    pub(crate) fn finalize(oracle: CharacterOracle<T>, mut nodes: Vec<Node>) -> Self {
        let n = oracle.len();
        let kids: Vec<Vec<NodeId>> = nodes
            .iter()
            .map(|node| {
                let mut ks: Vec<(Symbol, NodeId)> =
                    node.children.iter().map(|(&s, &c)| (s, c)).collect();
                ks.sort_unstable();
                ks.into_iter().map(|(_, c)| c).collect()
            })
            .collect();

        let mut leaf_of = vec![usize::MAX; n + 1];
        let mut tour_first = vec![usize::MAX; nodes.len()];
        let mut tour_depth: Vec<u32> = Vec::with_capacity(2 * nodes.len());
        // One iterative pass plays both the Euler tour (on the way down) and
        // the post-order witness canonicalization (on the way back up).
        let mut stack: Vec<(NodeId, usize)> = vec![(ROOT, 0)];
        tour_first[ROOT] = 0;
        tour_depth.push(nodes[ROOT].depth as u32);
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&c) = kids[v].get(*next) {
                *next += 1;
                tour_first[c] = tour_depth.len();
                tour_depth.push(nodes[c].depth as u32);
                stack.push((c, 0));
            } else {
                stack.pop();
                if let Some(s) = nodes[v].start {
                    leaf_of[s] = v;
                } else {
                    nodes[v].witness = kids[v]
                        .iter()
                        .map(|&c| nodes[c].witness)
                        .min()
                        .expect("internal node without children");
                }
                if let Some(&(p, _)) = stack.last() {
                    tour_depth.push(nodes[p].depth as u32);
                }
            }
        }
        debug_assert!(leaf_of[1..].iter().all(|&l| l != usize::MAX));
        let rmq = SparseMin::build(&tour_depth);
        OpSuffixTree {
            oracle,
            nodes,
            leaf_of,
            tour_first,
            rmq,
        }
    }

    /// Length of the indexed text (never zero).
    pub fn len(&self) -> usize {
        self.oracle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.oracle.is_empty()
    }

    /// The oracle the tree reads its symbols from.
    pub fn oracle(&self) -> &CharacterOracle<T> {
        &self.oracle
    }

    pub fn root(&self) -> NodeId {
        ROOT
    }

    /// Total number of explicit nodes (root, inner nodes and leaves).
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Number of leaves; one per suffix.
    pub fn leaf_count(&self) -> usize {
        self.len()
    }

    /// Number of non-leaf nodes, root included.
    pub fn internal_count(&self) -> usize {
        self.node_count() - self.leaf_count()
    }

    /// Largest code depth of any node (the depth of the whole-text leaf).
    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|nd| nd.depth).max().unwrap_or(0)
    }

    pub fn parent(&self, v: NodeId) -> NodeId {
        self.nodes[v].parent
    }

    /// Code characters from the root down to `v` (terminators not counted).
    pub fn depth(&self, v: NodeId) -> usize {
        self.nodes[v].depth
    }

    /// `Some(start)` if `v` is the leaf of the suffix beginning at `start`.
    pub fn leaf_start(&self, v: NodeId) -> Option<usize> {
        self.nodes[v].start
    }

    /// Smallest suffix start among the leaves below `v`.
    pub fn witness(&self, v: NodeId) -> usize {
        self.nodes[v].witness
    }

    /// Child of `v` along the edge whose label starts with `sym`.
    pub fn child(&self, v: NodeId, sym: Symbol) -> Option<NodeId> {
        self.nodes[v].children.get(&sym).copied()
    }

    /// Children of `v` with their edge head symbols, in symbol order
    /// (terminator edge last).
    pub fn children_sorted(&self, v: NodeId) -> Vec<(Symbol, NodeId)> {
        let mut ks: Vec<(Symbol, NodeId)> = self.nodes[v]
            .children
            .iter()
            .map(|(&s, &c)| (s, c))
            .collect();
        ks.sort_unstable();
        ks
    }

    /// Label of the edge leading into `v` (empty for the root), including
    /// the trailing terminator on leaf edges. Reconstructed through `v`'s
    /// witness, one oracle query per symbol.
    pub fn edge_symbols(&self, v: NodeId) -> Vec<Symbol> {
        if v == ROOT {
            return Vec::new();
        }
        let nd = &self.nodes[v];
        let from = self.nodes[nd.parent].depth;
        let w = nd.witness;
        let mut label: Vec<Symbol> = (from + 1..=nd.depth)
            .map(|d| Symbol::Char(self.oracle.suffix_char_code(w, w + d - 1)))
            .collect();
        if nd.is_leaf() {
            label.push(Symbol::Terminator);
        }
        label
    }

    /// Length of the longest common prefix of the encodings of the suffixes
    /// starting at `i` and `j`; equivalently, the code depth of the lowest
    /// common ancestor of their leaves. O(1).
    ///
    /// # Panics
    ///
    /// If a position is out of `1..=n`.
    pub fn lca_depth(&self, i: usize, j: usize) -> usize {
        let n = self.len();
        assert!(
            (1..=n).contains(&i) && (1..=n).contains(&j),
            "positions ({i}, {j}) out of range 1..={n}"
        );
        let a = self.tour_first[self.leaf_of[i]];
        let b = self.tour_first[self.leaf_of[j]];
        self.rmq.query(a.min(b), a.max(b)) as usize
    }

    /// Locus of the pattern's code in the tree: the position reached after
    /// matching all `|x|` code characters of `x`, or `None` if some
    /// comparison fails. Pattern loci never consume terminators.
    /// O(|x| log n), plus building the pattern's own oracle.
    ///
    /// # Panics
    ///
    /// If `x` is empty.
    pub fn find_locus<U: Value>(&self, x: &[U]) -> Option<Locus> {
        assert!(!x.is_empty(), "empty pattern");
        let m = x.len();
        let po = CharacterOracle::build(x);
        let mut node = ROOT;
        loop {
            let d = self.nodes[node].depth;
            if d == m {
                return Some(Locus::Node(node));
            }
            let head = Symbol::Char(po.suffix_char_code(1, d + 1));
            let c = self.child(node, head)?;
            let code_len = self.nodes[c].depth - d;
            let take = code_len.min(m - d);
            let w = self.nodes[c].witness;
            for q in 2..=take {
                let tree_sym = self.oracle.suffix_char_code(w, w + d + q - 1);
                let pat_sym = po.suffix_char_code(1, d + q);
                if tree_sym != pat_sym {
                    return None;
                }
            }
            if take < code_len {
                return Some(Locus::Edge {
                    parent: node,
                    head,
                    offset: take,
                });
            }
            node = c;
        }
    }

    /// Starting positions (1-based, ascending) of all factors of the text
    /// order-isomorphic to `x`: the leaves below the pattern's locus. Every
    /// leaf below a locus of depth `|x|` starts a suffix of length at least
    /// `|x|`, so no filtering is needed. A pattern longer than the text has
    /// no occurrences. O(|x| log n + output).
    ///
    /// # Panics
    ///
    /// If `x` is empty.
    pub fn occurrences<U: Value>(&self, x: &[U]) -> Vec<usize> {
        assert!(!x.is_empty(), "empty pattern");
        if x.len() > self.len() {
            return Vec::new();
        }
        let top = match self.find_locus(x) {
            None => return Vec::new(),
            Some(Locus::Node(v)) => v,
            Some(Locus::Edge { parent, head, .. }) => self.child(parent, head).unwrap(),
        };
        let mut out = Vec::new();
        let mut stack = vec![top];
        while let Some(v) = stack.pop() {
            if let Some(s) = self.nodes[v].start {
                out.push(s);
            } else {
                stack.extend(self.nodes[v].children.values());
            }
        }
        out.sort_unstable();
        out
    }

    pub(crate) fn nodes(&self) -> &[Node] {
        &self.nodes
    }
}

impl<T: Value> std::fmt::Debug for OpSuffixTree<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OpSuffixTree")
            .field("len", &self.len())
            .field("nodes", &self.node_count())
            .finish_non_exhaustive()
    }
}

/// The terminated code rows of all suffixes of `w`, materialized. Row `i`
/// (1-based) is the code of `w[i..]` followed by the terminator. Quadratic
/// output; meant for validation and small-scale inspection — the tree
/// itself never builds this.
pub fn suf_codes<T: Value>(w: &[T]) -> Vec<Vec<Symbol>> {
    (0..w.len())
        .map(|i| {
            let mut row: Vec<Symbol> = crate::code::code(&w[i..])
                .into_iter()
                .map(Symbol::Char)
                .collect();
            row.push(Symbol::Terminator);
            row
        })
        .collect()
}

/// Checks the three quasi-suffix-collection conditions on a family of rows:
/// each row one symbol shorter than the previous (none empty), no row a
/// prefix of another, and common prefixes shrinking by at most one between
/// successor rows. Quadratic; a validation helper, not used in
/// construction.
pub fn validate_quasi_suffix(rows: &[Vec<Symbol>]) -> bool {
    let m = rows.len();
    if rows.iter().any(|r| r.is_empty()) {
        return false;
    }
    if (1..m).any(|i| rows[i].len() + 1 != rows[i - 1].len()) {
        return false;
    }
    let lcp = |a: &[Symbol], b: &[Symbol]| a.iter().zip(b).take_while(|(x, y)| x == y).count();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let l = lcp(&rows[i], &rows[j]);
            if l == rows[i].len() {
                return false; // rows[i] is a prefix of rows[j]
            }
            if i + 1 < m && j + 1 < m && lcp(&rows[i + 1], &rows[j + 1]) + 1 < l {
                return false;
            }
        }
    }
    true
}

/// Construction state: arena plus the oracle everything is read from.
struct Builder<'a, T> {
    o: &'a CharacterOracle<T>,
    n: usize,
    nodes: Vec<Node>,
}

/// Matching position during a scan; like [`Locus`] but keeps partially
/// consumed edges first-class.
#[derive(Clone, Copy)]
enum Pos {
    At(NodeId),
    On(NodeId, Symbol, usize),
}

impl<T: Value> Builder<'_, T> {
    /// Symbol `q` (1-based) of row `r`: a code character up to the row's
    /// code length, then the terminator.
    fn row_symbol(&self, r: usize, q: usize) -> Symbol {
        let code_len = self.n - r + 1;
        if q <= code_len {
            Symbol::Char(self.o.suffix_char_code(r, r + q - 1))
        } else {
            assert!(q == code_len + 1, "read past the end of row {r}");
            Symbol::Terminator
        }
    }

    /// Symbol at 1-based offset `q` of the edge into `child`, read through
    /// the child's witness.
    fn edge_symbol(&self, child: NodeId, q: usize) -> Symbol {
        let nd = &self.nodes[child];
        let abs = self.nodes[nd.parent].depth + q;
        if abs <= nd.depth {
            Symbol::Char(self.o.suffix_char_code(nd.witness, nd.witness + abs - 1))
        } else {
            debug_assert!(nd.is_leaf() && abs == nd.depth + 1);
            Symbol::Terminator
        }
    }

    /// Symbols on the edge into `child`: code characters plus a terminator
    /// on leaf edges.
    fn edge_sym_len(&self, child: NodeId) -> usize {
        let nd = &self.nodes[child];
        nd.depth - self.nodes[nd.parent].depth + usize::from(nd.is_leaf())
    }

    fn insert_all(&mut self) {
        self.add_leaf(ROOT, 1);
        let mut prev_head = ROOT;
        for r in 2..=self.n {
            let start = if prev_head == ROOT {
                Locus::Node(ROOT)
            } else if let Some(sl) = self.nodes[prev_head].slink {
                let locus = self.resolve(sl, r);
                self.nodes[prev_head].slink = Some(self.to_slink(locus));
                locus
            } else {
                // McCreight's step: hop through the parent's suffix link,
                // then skip/count back down to one character less than the
                // previous head's depth — guaranteed present in the tree.
                let p = self.nodes[prev_head].parent;
                let base = if p == ROOT {
                    Locus::Node(ROOT)
                } else {
                    let sl = self.nodes[p].slink.expect("missing suffix link");
                    let resolved = self.resolve(sl, r);
                    self.nodes[p].slink = Some(self.to_slink(resolved));
                    resolved
                };
                let locus = self.descend(base, self.nodes[prev_head].depth - 1, r);
                self.nodes[prev_head].slink = Some(self.to_slink(locus));
                locus
            };
            let head = self.slow_scan(start, r);
            self.add_leaf(head, r);
            prev_head = head;
        }
    }

    fn to_slink(&self, locus: Locus) -> Slink {
        match locus {
            Locus::Node(v) => Slink::Node(v),
            Locus::Edge { parent, offset, .. } => Slink::Floating {
                ancestor: parent,
                depth: self.nodes[parent].depth + offset,
            },
        }
    }

    fn resolve(&self, sl: Slink, r: usize) -> Locus {
        match sl {
            Slink::Node(v) => Locus::Node(v),
            Slink::Floating { ancestor, depth } => self.descend(Locus::Node(ancestor), depth, r),
        }
    }

    /// Skip/count from `base` down to code depth `d` along the path
    /// spelling row `r`'s code — the caller guarantees that path exists.
    /// One oracle query per explicit node passed.
    fn descend(&self, base: Locus, d: usize, r: usize) -> Locus {
        let mut x = match base {
            Locus::Node(x) => x,
            Locus::Edge {
                parent,
                head,
                offset,
            } => {
                debug_assert!(self.nodes[parent].depth + offset <= d);
                let c = self.nodes[parent].children[&head];
                match self.clip(parent, head, c, d) {
                    Some(locus) => return locus,
                    None => c,
                }
            }
        };
        while self.nodes[x].depth < d {
            let head = self.row_symbol(r, self.nodes[x].depth + 1);
            let c = self.nodes[x].children[&head];
            match self.clip(x, head, c, d) {
                Some(locus) => return locus,
                None => x = c,
            }
        }
        debug_assert_eq!(self.nodes[x].depth, d);
        Locus::Node(x)
    }

    /// If code depth `d` falls inside the edge `parent → child` (or at a
    /// leaf child's code end, in front of its terminator), the locus there;
    /// `None` when the walk should continue from `child`.
    fn clip(&self, parent: NodeId, head: Symbol, child: NodeId, d: usize) -> Option<Locus> {
        let cd = self.nodes[child].depth;
        if d < cd || (d == cd && self.nodes[child].is_leaf()) {
            Some(Locus::Edge {
                parent,
                head,
                offset: d - self.nodes[parent].depth,
            })
        } else {
            None
        }
    }

    /// Match row `r` symbol by symbol from `start` until the first
    /// mismatch, split there if mid-edge, and return the explicit node the
    /// row diverges at. A full match is impossible: distinct rows have
    /// distinct lengths, and terminators only ever face non-terminators.
    fn slow_scan(&mut self, start: Locus, r: usize) -> NodeId {
        let mut pos = match start {
            Locus::Node(x) => Pos::At(x),
            Locus::Edge {
                parent,
                head,
                offset,
            } => Pos::On(parent, head, offset),
        };
        loop {
            match pos {
                Pos::At(x) => {
                    let sym = self.row_symbol(r, self.nodes[x].depth + 1);
                    match self.nodes[x].children.get(&sym) {
                        None => return x,
                        Some(&c) => {
                            debug_assert!(
                                sym != Symbol::Terminator,
                                "rows may not collide on a terminator"
                            );
                            pos = if self.edge_sym_len(c) == 1 {
                                Pos::At(c)
                            } else {
                                Pos::On(x, sym, 1)
                            };
                        }
                    }
                }
                Pos::On(parent, head, off) => {
                    let c = self.nodes[parent].children[&head];
                    debug_assert!(off < self.edge_sym_len(c));
                    let tree_sym = self.edge_symbol(c, off + 1);
                    let row_sym = self.row_symbol(r, self.nodes[parent].depth + off + 1);
                    if tree_sym != row_sym {
                        return self.split(parent, head, off);
                    }
                    pos = if off + 1 == self.edge_sym_len(c) {
                        Pos::At(c)
                    } else {
                        Pos::On(parent, head, off + 1)
                    };
                }
            }
        }
    }

    /// Splits the edge `parent → (child via head)` after `off` code
    /// characters and returns the new node created there.
    fn split(&mut self, parent: NodeId, head: Symbol, off: usize) -> NodeId {
        let v = self.nodes[parent].children[&head];
        let next_sym = self.edge_symbol(v, off + 1);
        let x = self.nodes.len();
        let mut node = Node::new(
            parent,
            self.nodes[parent].depth + off,
            self.nodes[v].witness,
            None,
        );
        node.children.insert(next_sym, v);
        self.nodes.push(node);
        self.nodes[v].parent = x;
        self.nodes[parent].children.insert(head, x);
        x
    }

    /// Hangs the leaf of row `r` off `at`.
    fn add_leaf(&mut self, at: NodeId, r: usize) {
        let code_len = self.n - r + 1;
        debug_assert!(self.nodes[at].depth <= code_len);
        let head = self.row_symbol(r, self.nodes[at].depth + 1);
        let leaf = self.nodes.len();
        self.nodes.push(Node::new(at, code_len, r, Some(r)));
        let displaced = self.nodes[at].children.insert(head, leaf);
        debug_assert!(displaced.is_none(), "edge head collision at node {at}");
    }
}
