//! Plain-text serialization of a built tree, so an index can be cached on
//! disk and reloaded next to its text.
//!
//! The format stores only the *structure* — node ids, parents, code depths,
//! edge head symbols and the start position of each leaf. Full edge labels
//! are never written: on load they are reconstructed on demand from the
//! text through the character oracle, exactly as during construction. The
//! reader therefore needs the original text, verifies that lengths agree,
//! re-derives every edge head from the text, and rejects the index if any
//! stored head disagrees — a cheap consistency check that catches a swapped
//! or edited text in practice.
//!
//! Layout (line oriented, whitespace separated):
//!
//! ```text
//! opst-index 1
//! n <text length>
//! nodes <node count>
//! <id> <parent> <code depth> <head>     (one line per node)
//! leaves <text length>
//! <suffix start> <node id>              (one line per leaf)
//! ```
//!
//! Node ids are canonical: breadth-first from the root (id 0), children in
//! symbol order with the terminator last. `<head>` is the first symbol of
//! the edge above the node — `lt,eq` for a code character, `#` for a
//! terminator — and both `<parent>` and `<head>` are `-` on the root line.
//! Leaf lines are sorted by suffix start. Serializing the same tree twice
//! yields byte-identical output.

use crate::code::CharCode;
use crate::oracle::CharacterOracle;
use crate::tree::{Node, NodeId, OpSuffixTree, Symbol};
use crate::Value;
use std::fmt::Write as _;
use thiserror::Error;

const HEADER: &str = "opst-index 1";

/// Failures while reading a serialized index.
#[derive(Debug, Error)]
pub enum IndexError {
    /// A line did not parse as the format requires.
    #[error("index line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The lines parsed but do not describe a valid tree for the text.
    #[error("malformed index: {0}")]
    Structure(String),
    /// The index was written for a text of a different length.
    #[error("index describes a text of length {index_n}, but the text has length {text_n}")]
    TextMismatch { index_n: usize, text_n: usize },
}

fn parse_err(line: usize, msg: impl Into<String>) -> IndexError {
    IndexError::Parse {
        line,
        msg: msg.into(),
    }
}

impl<T: Value> OpSuffixTree<T> {
    /// Serializes the tree structure to the textual index format.
    pub fn write_index(&self) -> String {
        let n = self.len();
        // Canonical ids: breadth-first, children in symbol order.
        let mut order: Vec<NodeId> = Vec::with_capacity(self.node_count());
        let mut new_id = vec![usize::MAX; self.node_count()];
        let mut heads: Vec<Option<Symbol>> = vec![None; self.node_count()];
        order.push(self.root());
        new_id[self.root()] = 0;
        let mut at = 0;
        while at < order.len() {
            let v = order[at];
            at += 1;
            for (sym, c) in self.children_sorted(v) {
                new_id[c] = order.len();
                heads[c] = Some(sym);
                order.push(c);
            }
        }

        let mut out = String::new();
        let _ = writeln!(out, "{HEADER}");
        let _ = writeln!(out, "n {n}");
        let _ = writeln!(out, "nodes {}", self.node_count());
        for (id, &v) in order.iter().enumerate() {
            if v == self.root() {
                let _ = writeln!(out, "0 - 0 -");
                continue;
            }
            let head = match heads[v].unwrap() {
                Symbol::Char(c) => format!("{},{}", c.lt, c.eq),
                Symbol::Terminator => "#".to_string(),
            };
            let _ = writeln!(
                out,
                "{id} {} {} {head}",
                new_id[self.parent(v)],
                self.depth(v)
            );
        }
        let mut leaf_node = vec![usize::MAX; n + 1];
        for &v in &order {
            if let Some(s) = self.leaf_start(v) {
                leaf_node[s] = new_id[v];
            }
        }
        let _ = writeln!(out, "leaves {n}");
        for (start, &id) in leaf_node.iter().enumerate().skip(1) {
            let _ = writeln!(out, "{start} {id}");
        }
        out
    }

    /// Reads a serialized index back into a queryable tree over `text`.
    ///
    /// The text must be the one the index was written for: lengths are
    /// checked first, and every stored edge head is re-derived from the
    /// text and compared.
    pub fn read_index(s: &str, text: &[T]) -> Result<Self, IndexError> {
        let mut lines = s.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next_line = |what: &str| {
            lines
                .next()
                .ok_or_else(|| parse_err(usize::MAX, format!("missing {what}")))
        };

        let (ln, header) = next_line("header")?;
        if header.trim_end() != HEADER {
            return Err(parse_err(ln, format!("expected header \"{HEADER}\"")));
        }
        let n = parse_counted(next_line("text length")?, "n")?;
        if n == 0 {
            return Err(IndexError::Structure("empty text".into()));
        }
        if text.len() != n {
            return Err(IndexError::TextMismatch {
                index_n: n,
                text_n: text.len(),
            });
        }
        let count = parse_counted(next_line("node count")?, "nodes")?;
        if !(n + 1..=2 * n).contains(&count) {
            return Err(IndexError::Structure(format!(
                "{count} nodes cannot form a compacted trie over {n} suffixes"
            )));
        }

        let mut nodes: Vec<Node> = Vec::with_capacity(count);
        let mut heads: Vec<Option<Symbol>> = Vec::with_capacity(count);
        for id in 0..count {
            let (ln, line) = next_line("node line")?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [got_id, parent, depth, head] = fields[..] else {
                return Err(parse_err(ln, "expected: <id> <parent> <depth> <head>"));
            };
            if got_id.parse() != Ok(id) {
                return Err(parse_err(ln, format!("expected node id {id}")));
            }
            let depth: usize = depth
                .parse()
                .map_err(|_| parse_err(ln, "bad depth field"))?;
            if id == 0 {
                if parent != "-" || head != "-" || depth != 0 {
                    return Err(parse_err(ln, "root line must be \"0 - 0 -\""));
                }
                nodes.push(Node::new(0, 0, usize::MAX, None));
                heads.push(None);
                continue;
            }
            let parent: usize = parent
                .parse()
                .map_err(|_| parse_err(ln, "bad parent field"))?;
            if parent >= id {
                return Err(parse_err(ln, "parent must precede child"));
            }
            let head = parse_head(head).ok_or_else(|| parse_err(ln, "bad head field"))?;
            match head {
                Symbol::Char(_) if depth <= nodes[parent].depth => {
                    return Err(parse_err(ln, "depth must exceed the parent's"));
                }
                Symbol::Terminator if depth != nodes[parent].depth => {
                    return Err(parse_err(
                        ln,
                        "a terminator edge adds no code depth; depths must match",
                    ));
                }
                _ => {}
            }
            nodes.push(Node::new(parent, depth, usize::MAX, None));
            heads.push(Some(head));
            if nodes[parent].children.insert(head, id).is_some() {
                return Err(IndexError::Structure(format!(
                    "node {parent} has two {head:?} edges"
                )));
            }
        }

        let leaves = parse_counted(next_line("leaf table")?, "leaves")?;
        if leaves != n {
            return Err(IndexError::Structure(format!(
                "{leaves} leaves listed for {n} suffixes"
            )));
        }
        for start in 1..=n {
            let (ln, line) = next_line("leaf line")?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [got_start, id] = fields[..] else {
                return Err(parse_err(ln, "expected: <start> <node id>"));
            };
            if got_start.parse() != Ok(start) {
                return Err(parse_err(ln, format!("expected leaf of suffix {start}")));
            }
            let id: NodeId = id
                .parse()
                .ok()
                .filter(|&v| v < count)
                .ok_or_else(|| parse_err(ln, "bad node id"))?;
            let node = &mut nodes[id];
            if id == 0 || node.start.is_some() {
                return Err(IndexError::Structure(format!(
                    "node {id} cannot be the leaf of suffix {start}"
                )));
            }
            if node.depth != n - start + 1 {
                return Err(IndexError::Structure(format!(
                    "leaf of suffix {start} must have code depth {}, found {}",
                    n - start + 1,
                    node.depth
                )));
            }
            node.start = Some(start);
            node.witness = start;
        }
        for (ln, line) in lines {
            if !line.trim().is_empty() {
                return Err(parse_err(ln, "trailing content"));
            }
        }

        for (id, node) in nodes.iter().enumerate() {
            if node.start.is_some() {
                if !node.children.is_empty() {
                    return Err(IndexError::Structure(format!("leaf {id} has children")));
                }
            } else if node.children.len() < 2 && id != 0 {
                return Err(IndexError::Structure(format!(
                    "internal node {id} does not branch"
                )));
            }
            if heads[id] == Some(Symbol::Terminator) && node.start.is_none() {
                return Err(IndexError::Structure(format!(
                    "terminator edge leads to non-leaf {id}"
                )));
            }
        }

        let tree = OpSuffixTree::finalize(CharacterOracle::build(text), nodes);
        for (id, head) in heads.iter().enumerate() {
            let Some(head) = head else { continue };
            let nd = &tree.nodes()[id];
            let pd = tree.nodes()[nd.parent].depth;
            let derived = if nd.depth == pd {
                Symbol::Terminator
            } else {
                Symbol::Char(tree.oracle().suffix_char_code(nd.witness, nd.witness + pd))
            };
            if derived != *head {
                return Err(IndexError::Structure(format!(
                    "edge head of node {id} disagrees with the text (stored {head:?}, derived {derived:?})"
                )));
            }
        }
        Ok(tree)
    }
}

/// Parses `"<keyword> <count>"`.
fn parse_counted((ln, line): (usize, &str), keyword: &str) -> Result<usize, IndexError> {
    let rest = line
        .strip_prefix(keyword)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| parse_err(ln, format!("expected \"{keyword} <count>\"")))?;
    rest.trim()
        .parse()
        .map_err(|_| parse_err(ln, format!("bad {keyword} count")))
}

fn parse_head(tok: &str) -> Option<Symbol> {
    if tok == "#" {
        return Some(Symbol::Terminator);
    }
    let (lt, eq) = tok.split_once(',')?;
    Some(Symbol::Char(CharCode::new(
        lt.parse().ok()?,
        eq.parse().ok()?,
    )))
}
