//! Lambda terms and Motzkin trees as enriched trees.
//!
//! A [`Term`] is stored as its preorder node sequence, so structural
//! equality is sequence equality and no algorithm here recurses.

mod dot;
pub mod enumerate;
mod json;
mod stats;
mod text;

use std::fmt;
use std::num::NonZeroU32;

pub use stats::{stats, validate, TermStats};
pub use text::ParseError;

/// What a leaf points at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Binder {
    /// No binder: Motzkin leaves, or a free variable.
    Free,
    /// de Bruijn index, 1 is the nearest enclosing abstraction.
    Index(NonZeroU32),
}

impl Binder {
    pub fn index(d: u32) -> Binder {
        Binder::Index(NonZeroU32::new(d).expect("de Bruijn indices start at 1"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf(Binder),
    Unary,
    Binary,
}

impl Node {
    fn arity(self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Unary => 1,
            Node::Binary => 2,
        }
    }
}

/// An immutable tree with nodes of out-degree 0, 1 or 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    nodes: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("node sequence is not a complete preorder tree")]
pub struct MalformedPreorder;

/// Output formats of [`render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Debruijn,
    Json,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "debruijn" | "text" => Ok(Format::Debruijn),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            _ => Err(format!("unknown term format `{s}` (debruijn, json, dot)")),
        }
    }
}

impl Term {
    pub fn leaf(b: Binder) -> Term {
        Term { nodes: vec![Node::Leaf(b)] }
    }

    /// Leaf carrying de Bruijn index `d`. Panics if `d == 0`.
    pub fn var(d: u32) -> Term {
        Term::leaf(Binder::index(d))
    }

    pub fn free() -> Term {
        Term::leaf(Binder::Free)
    }

    pub fn unary(body: Term) -> Term {
        let mut nodes = Vec::with_capacity(body.nodes.len() + 1);
        nodes.push(Node::Unary);
        nodes.extend_from_slice(&body.nodes);
        Term { nodes }
    }

    pub fn binary(left: Term, right: Term) -> Term {
        let mut nodes = Vec::with_capacity(left.nodes.len() + right.nodes.len() + 1);
        nodes.push(Node::Binary);
        nodes.extend_from_slice(&left.nodes);
        nodes.extend_from_slice(&right.nodes);
        Term { nodes }
    }

    /// Rebuilds a term from a preorder node list, checking it is one tree.
    pub fn from_preorder(nodes: Vec<Node>) -> Result<Term, MalformedPreorder> {
        let mut open = 1usize;
        for (i, n) in nodes.iter().enumerate() {
            if open == 0 {
                return Err(MalformedPreorder);
            }
            open = open - 1 + n.arity();
            if open == 0 && i + 1 != nodes.len() {
                return Err(MalformedPreorder);
            }
        }
        if open != 0 {
            return Err(MalformedPreorder);
        }
        Ok(Term { nodes })
    }

    pub fn preorder(&self) -> &[Node] {
        &self.nodes
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> Node {
        self.nodes[0]
    }

    /// Children of the root, much like pattern matching on a recursive type.
    pub fn view(&self) -> View<'_> {
        SubTerm { nodes: &self.nodes }.view()
    }

    pub fn as_subterm(&self) -> SubTerm<'_> {
        SubTerm { nodes: &self.nodes }
    }

    /// Preorder traversal with per-node context.
    pub fn walk(&self) -> Walk<'_> {
        Walk { nodes: &self.nodes, pos: 0, stack: vec![Frame::default()], binders: Vec::new() }
    }

    /// Replaces every binder by `Free`, giving the underlying Motzkin tree.
    pub fn skeleton(&self) -> Term {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                Node::Leaf(_) => Node::Leaf(Binder::Free),
                other => *other,
            })
            .collect();
        Term { nodes }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({})", text::to_debruijn(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::to_debruijn(self))
    }
}

/// A borrowed subtree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubTerm<'a> {
    nodes: &'a [Node],
}

pub enum View<'a> {
    Leaf(Binder),
    Unary(SubTerm<'a>),
    Binary(SubTerm<'a>, SubTerm<'a>),
}

impl<'a> SubTerm<'a> {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn view(&self) -> View<'a> {
        match self.nodes[0] {
            Node::Leaf(b) => View::Leaf(b),
            Node::Unary => View::Unary(SubTerm { nodes: &self.nodes[1..] }),
            Node::Binary => {
                let end = subtree_end(self.nodes, 1);
                View::Binary(SubTerm { nodes: &self.nodes[1..end] }, SubTerm { nodes: &self.nodes[end..] })
            }
        }
    }

    pub fn to_term(&self) -> Term {
        Term { nodes: self.nodes.to_vec() }
    }
}

/// Index one past the subtree that starts at `start`.
fn subtree_end(nodes: &[Node], start: usize) -> usize {
    let mut open = 1usize;
    let mut i = start;
    while open > 0 {
        open = open - 1 + nodes[i].arity();
        i += 1;
    }
    i
}

/// Context of one node met during [`Term::walk`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub index: usize,
    pub node: Node,
    pub parent: Option<usize>,
    /// Number of edges from the root.
    pub depth: usize,
    /// Number of unary strict ancestors.
    pub unary_ancestors: usize,
    /// Preorder index of the binding unary node, for a leaf whose index is in range.
    pub binder: Option<usize>,
}

#[derive(Clone, Copy, Default)]
struct Frame {
    parent: Option<usize>,
    depth: usize,
    unary_ancestors: usize,
}

pub struct Walk<'a> {
    nodes: &'a [Node],
    pos: usize,
    stack: Vec<Frame>,
    // preorder indices of the unary ancestors of the current node, outermost first
    binders: Vec<usize>,
}

impl Iterator for Walk<'_> {
    type Item = Visit;

    fn next(&mut self) -> Option<Visit> {
        let frame = self.stack.pop()?;
        let index = self.pos;
        let node = self.nodes[index];
        self.pos += 1;
        self.binders.truncate(frame.unary_ancestors);
        let mut binder = None;
        let child = Frame { parent: Some(index), depth: frame.depth + 1, unary_ancestors: frame.unary_ancestors };
        match node {
            Node::Leaf(Binder::Index(d)) => {
                let d = d.get() as usize;
                if d <= self.binders.len() {
                    binder = Some(self.binders[self.binders.len() - d]);
                }
            }
            Node::Leaf(Binder::Free) => {}
            Node::Unary => {
                self.binders.push(index);
                self.stack.push(Frame { unary_ancestors: frame.unary_ancestors + 1, ..child });
            }
            Node::Binary => {
                self.stack.push(child);
                self.stack.push(child);
            }
        }
        Some(Visit {
            index,
            node,
            parent: frame.parent,
            depth: frame.depth,
            unary_ancestors: frame.unary_ancestors,
            binder,
        })
    }
}

/// Renders a term as de Bruijn text, JSON or Graphviz DOT.
pub fn render(t: &Term, format: Format) -> String {
    match format {
        Format::Debruijn => text::to_debruijn(t),
        Format::Json => json::to_json(t),
        Format::Dot => dot::to_dot(t),
    }
}

/// Parses de Bruijn text or JSON back into a term.
pub fn parse(input: &str, format: Format) -> Result<Term, ParseError> {
    match format {
        Format::Debruijn => text::parse_debruijn(input),
        Format::Json => json::parse_json(input),
        Format::Dot => Err(ParseError::new(0, "DOT output cannot be parsed back")),
    }
}
