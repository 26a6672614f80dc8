use std::fmt::Write;

use super::{Binder, Node, Term};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> ParseError {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    // top level or abstraction body
    Plain,
    // operand of an application: abstractions get parenthesised
    Operand,
}

enum Task {
    Node(Role),
    Text(&'static str),
}

pub(super) fn to_debruijn(t: &Term) -> String {
    let mut out = String::with_capacity(t.size() * 3);
    let mut nodes = t.preorder().iter();
    let mut tasks = vec![Task::Node(Role::Plain)];
    while let Some(task) = tasks.pop() {
        let role = match task {
            Task::Text(s) => {
                out.push_str(s);
                continue;
            }
            Task::Node(r) => r,
        };
        match nodes.next().expect("preorder is complete") {
            Node::Leaf(Binder::Index(d)) => write!(out, "{d}").unwrap(),
            Node::Leaf(Binder::Free) => out.push('_'),
            Node::Unary => {
                if role == Role::Operand {
                    out.push('(');
                    tasks.push(Task::Text(")"));
                }
                out.push_str("\\ ");
                tasks.push(Task::Node(Role::Plain));
            }
            Node::Binary => {
                out.push('(');
                tasks.push(Task::Text(")"));
                tasks.push(Task::Node(Role::Operand));
                tasks.push(Task::Text(" "));
                tasks.push(Task::Node(Role::Operand));
            }
        }
    }
    out
}

// Parsed nodes live in an arena and are flattened to preorder at the end.
enum Arena {
    Leaf(Binder),
    Unary(usize),
    Binary(usize, usize),
}

enum Open {
    Lambda,
    Paren { offset: usize, items: Vec<usize> },
}

/// Grammar: `term := INT | "_" | "\" term | "(" term ")" | "(" term term ")"`.
pub(super) fn parse_debruijn(input: &str) -> Result<Term, ParseError> {
    let bytes = input.as_bytes();
    let mut arena: Vec<Arena> = Vec::new();
    let mut open: Vec<Open> = Vec::new();
    let mut root: Option<usize> = None;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if root.is_some() {
            return Err(ParseError::new(start, "trailing input after complete term"));
        }
        let mut done = match c {
            b'\\' | b'\xce' => {
                if c == b'\xce' {
                    // UTF-8 lambda
                    if bytes.get(i + 1) != Some(&0xbb) {
                        return Err(ParseError::new(start, "unexpected character"));
                    }
                    i += 1;
                }
                i += 1;
                open.push(Open::Lambda);
                None
            }
            b'(' => {
                i += 1;
                open.push(Open::Paren { offset: start, items: Vec::new() });
                None
            }
            b')' => {
                i += 1;
                match open.pop() {
                    Some(Open::Paren { items, .. }) => match items[..] {
                        [a] => Some(a),
                        [a, b] => {
                            arena.push(Arena::Binary(a, b));
                            Some(arena.len() - 1)
                        }
                        _ => return Err(ParseError::new(start, "empty parentheses")),
                    },
                    _ => return Err(ParseError::new(start, "unmatched `)`")),
                }
            }
            b'_' => {
                i += 1;
                arena.push(Arena::Leaf(Binder::Free));
                Some(arena.len() - 1)
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let d: u32 =
                    input[start..i].parse().map_err(|_| ParseError::new(start, "de Bruijn index out of range"))?;
                if d == 0 {
                    return Err(ParseError::new(start, "de Bruijn indices start at 1"));
                }
                arena.push(Arena::Leaf(Binder::index(d)));
                Some(arena.len() - 1)
            }
            _ => {
                return Err(ParseError::new(
                    start,
                    format!("unexpected character `{}`", input[start..].chars().next().unwrap()),
                ))
            }
        };
        while let Some(id) = done.take() {
            match open.last_mut() {
                None => root = Some(id),
                Some(Open::Lambda) => {
                    open.pop();
                    arena.push(Arena::Unary(id));
                    done = Some(arena.len() - 1);
                }
                Some(Open::Paren { items, .. }) => {
                    if items.len() == 2 {
                        return Err(ParseError::new(start, "expected `)` after two operands"));
                    }
                    items.push(id);
                }
            }
        }
    }
    match (root, open.last()) {
        (Some(r), None) => Ok(flatten(&arena, r)),
        (_, Some(Open::Paren { offset, .. })) => Err(ParseError::new(*offset, "unclosed `(`")),
        _ => Err(ParseError::new(input.len(), "unexpected end of input")),
    }
}

fn flatten(arena: &[Arena], root: usize) -> Term {
    let mut nodes = Vec::with_capacity(arena.len());
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        match arena[id] {
            Arena::Leaf(b) => nodes.push(Node::Leaf(b)),
            Arena::Unary(c) => {
                nodes.push(Node::Unary);
                stack.push(c);
            }
            Arena::Binary(l, r) => {
                nodes.push(Node::Binary);
                stack.push(r);
                stack.push(l);
            }
        }
    }
    Term { nodes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_examples() {
        let id = Term::unary(Term::var(1));
        assert_eq!(to_debruijn(&id), "\\ 1");
        let t = Term::binary(Term::unary(Term::binary(Term::var(1), Term::var(1))), id.clone());
        assert_eq!(to_debruijn(&t), "((\\ (1 1)) (\\ 1))");
        assert_eq!(to_debruijn(&Term::binary(Term::free(), Term::var(3))), "(_ 3)");
    }

    #[test]
    fn parses_with_loose_whitespace() {
        let t = parse_debruijn(" ( (\\(1 1))(\\1 ) ) ").unwrap();
        assert_eq!(to_debruijn(&t), "((\\ (1 1)) (\\ 1))");
        assert_eq!(parse_debruijn("λ λ 2").unwrap(), Term::unary(Term::unary(Term::var(2))));
        assert_eq!(parse_debruijn("\\ \\ (1 2)").unwrap(), parse_debruijn("\\\\(1 2)").unwrap());
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_debruijn("(1 2 3)").unwrap_err().offset, 5);
        assert_eq!(parse_debruijn("(1 2").unwrap_err().offset, 0);
        assert_eq!(parse_debruijn("\\ 0").unwrap_err().offset, 2);
        assert_eq!(parse_debruijn("1 2").unwrap_err().offset, 2);
        assert_eq!(parse_debruijn("\\ x").unwrap_err().offset, 2);
        assert_eq!(parse_debruijn("()").unwrap_err().offset, 1);
        assert_eq!(parse_debruijn("\\").unwrap_err().offset, 1);
        assert_eq!(parse_debruijn(")").unwrap_err().offset, 0);
    }

    #[test]
    fn deep_nesting() {
        let n = 200_000;
        let s = format!("{}1", "\\ ".repeat(n));
        let t = parse_debruijn(&s).unwrap();
        assert_eq!(t.size(), n + 1);
        assert_eq!(to_debruijn(&t), s);
    }
}
