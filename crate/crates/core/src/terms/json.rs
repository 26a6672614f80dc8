use serde::{Deserialize, Serialize};

use super::text::ParseError;
use super::{Binder, Node, Term};

const VERSION: u32 = 1;

// Flat preorder: "app", "lam", "free", or a de Bruijn index.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonNode {
    Index(u32),
    Tag(String),
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    version: u32,
    nodes: Vec<JsonNode>,
}

pub(super) fn to_json(t: &Term) -> String {
    let nodes = t
        .preorder()
        .iter()
        .map(|n| match n {
            Node::Binary => JsonNode::Tag("app".into()),
            Node::Unary => JsonNode::Tag("lam".into()),
            Node::Leaf(Binder::Free) => JsonNode::Tag("free".into()),
            Node::Leaf(Binder::Index(d)) => JsonNode::Index(d.get()),
        })
        .collect();
    serde_json::to_string(&JsonTerm { version: VERSION, nodes }).expect("plain data serializes")
}

pub(super) fn parse_json(input: &str) -> Result<Term, ParseError> {
    let doc: JsonTerm = serde_json::from_str(input).map_err(|e| {
        let offset = line_col_offset(input, e.line(), e.column());
        ParseError::new(offset, e.to_string())
    })?;
    if doc.version != VERSION {
        return Err(ParseError::new(0, format!("unsupported term JSON version {}", doc.version)));
    }
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.into_iter().enumerate() {
        nodes.push(match n {
            JsonNode::Index(0) => return Err(ParseError::new(i, format!("node {i}: de Bruijn indices start at 1"))),
            JsonNode::Index(d) => Node::Leaf(Binder::index(d)),
            JsonNode::Tag(s) => match s.as_str() {
                "app" => Node::Binary,
                "lam" => Node::Unary,
                "free" => Node::Leaf(Binder::Free),
                other => return Err(ParseError::new(i, format!("node {i}: unknown tag `{other}`"))),
            },
        });
    }
    let len = nodes.len();
    Term::from_preorder(nodes).map_err(|_| ParseError::new(len, "node list is not a single complete tree"))
}

fn line_col_offset(input: &str, line: usize, col: usize) -> usize {
    let before: usize = input.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + col.saturating_sub(1)
}
