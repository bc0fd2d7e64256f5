//! Bracketed words, binary trees and the transfer to bracketing functions.
//!
//! A word `x0 x1 ... xn` with a full binary bracketing is a binary tree with
//! `n + 1` leaves. Rewriting every `(AB)` as `A(B)` gives the right
//! bracketing, in which each letter but `x0` opens exactly one bracket. If the
//! bracket opened at `xi` closes after `xj`, the bracketing function takes
//! `E(i) = j`.
//!
//! Letters are written `a`..`z` (`a` is `x0`) or as indexed tokens `x0`,
//! `x1`, ... The two styles may not be told apart by the parser only when an
//! `x` is followed by a digit, which always starts an indexed token.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::tamari::BracketingFn;

/// Largest leaf index printed as a single letter.
const MAX_LETTER: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {ch:?} at offset {offset}")]
    UnexpectedChar { offset: usize, ch: char },
    #[error("unbalanced parentheses: '(' at offset {offset} is never closed")]
    Unclosed { offset: usize },
    #[error("unbalanced parentheses: stray ')' at offset {offset}")]
    StrayClose { offset: usize },
    #[error("bracket at offset {offset} holds {children} terms; exactly 2 are required")]
    NonBinary { offset: usize, children: usize },
    #[error("letter at offset {offset} is x{found}, expected x{expected}")]
    OutOfOrder {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("outermost parentheses missing before offset {offset}")]
    MissingOuterBrackets { offset: usize },
    #[error("letter index at offset {offset} is too large")]
    IndexOverflow { offset: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Letter(usize),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (offset, ch) = bytes[i];
        i += 1;
        match ch {
            c if c.is_whitespace() => {}
            '(' => tokens.push((offset, Token::Open)),
            ')' => tokens.push((offset, Token::Close)),
            'x' if bytes.get(i).is_some_and(|(_, d)| d.is_ascii_digit()) => {
                let mut index: usize = 0;
                while let Some(&(_, d)) = bytes.get(i) {
                    let Some(digit) = d.to_digit(10) else { break };
                    index = index
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(digit as usize))
                        .ok_or(ParseError::IndexOverflow { offset })?;
                    i += 1;
                }
                tokens.push((offset, Token::Letter(index)));
            }
            'a'..='z' => tokens.push((offset, Token::Letter(ch as usize - 'a' as usize))),
            _ => return Err(ParseError::UnexpectedChar { offset, ch }),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    next_leaf: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, Token)> {
        self.tokens.get(self.pos).copied()
    }

    // term := letter | '(' term term ')'
    fn term(&mut self) -> Result<BinaryTree, ParseError> {
        let (offset, token) = self.peek().ok_or(ParseError::Empty)?;
        self.pos += 1;
        match token {
            Token::Letter(found) => {
                if found != self.next_leaf {
                    return Err(ParseError::OutOfOrder {
                        offset,
                        expected: self.next_leaf,
                        found,
                    });
                }
                self.next_leaf += 1;
                Ok(BinaryTree::Leaf(found))
            }
            Token::Close => Err(ParseError::StrayClose { offset }),
            Token::Open => {
                let mut children = Vec::new();
                loop {
                    match self.peek() {
                        None => return Err(ParseError::Unclosed { offset }),
                        Some((_, Token::Close)) => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => children.push(self.term()?),
                    }
                }
                if children.len() != 2 {
                    return Err(ParseError::NonBinary {
                        offset,
                        children: children.len(),
                    });
                }
                let right = children.pop().unwrap();
                let left = children.pop().unwrap();
                Ok(BinaryTree::node(left, right))
            }
        }
    }
}

/// Parses a fully bracketed word such as `((a((bc)d))e)`.
pub fn parse_word(text: &str) -> Result<BinaryTree, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        next_leaf: 0,
    };
    let tree = parser.term()?;
    match parser.peek() {
        None => Ok(tree),
        Some((offset, Token::Close)) => Err(ParseError::StrayClose { offset }),
        Some((offset, _)) => Err(ParseError::MissingOuterBrackets { offset }),
    }
}

/// How letters are printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lexeme {
    /// `a`, `b`, ... (only for up to 26 letters).
    Letters,
    /// `x0`, `x1`, ...
    Indexed,
}

impl Lexeme {
    fn write(self, out: &mut String, leaf: usize) {
        match self {
            Lexeme::Letters if leaf <= MAX_LETTER => out.push((b'a' + leaf as u8) as char),
            _ => {
                out.push('x');
                out.push_str(&leaf.to_string());
            }
        }
    }
}

/// A full binary tree whose leaves are numbered `0..=n` left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf(usize),
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf(_) => 1,
            BinaryTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    fn leftmost(&self) -> usize {
        match self {
            BinaryTree::Leaf(i) => *i,
            BinaryTree::Node(l, _) => l.leftmost(),
        }
    }

    /// Letters for up to 26 leaves, indexed tokens beyond.
    pub fn default_lexeme(&self) -> Lexeme {
        if self.leaf_count() <= MAX_LETTER + 1 {
            Lexeme::Letters
        } else {
            Lexeme::Indexed
        }
    }

    /// Canonical fully bracketed word.
    pub fn to_word(&self) -> String {
        self.to_word_with(self.default_lexeme())
    }

    pub fn to_word_with(&self, lexeme: Lexeme) -> String {
        fn go(t: &BinaryTree, lexeme: Lexeme, out: &mut String) {
            match t {
                BinaryTree::Leaf(i) => lexeme.write(out, *i),
                BinaryTree::Node(l, r) => {
                    out.push('(');
                    go(l, lexeme, out);
                    go(r, lexeme, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, lexeme, &mut out);
        out
    }

    /// `R(leaf) = letter`, `R(UV) = R(U) "(" R(V) ")"`.
    pub fn right_bracketing(&self) -> String {
        self.right_bracketing_with(self.default_lexeme())
    }

    pub fn right_bracketing_with(&self, lexeme: Lexeme) -> String {
        fn go(t: &BinaryTree, lexeme: Lexeme, out: &mut String) {
            match t {
                BinaryTree::Leaf(i) => lexeme.write(out, *i),
                BinaryTree::Node(l, r) => {
                    go(l, lexeme, out);
                    out.push('(');
                    go(r, lexeme, out);
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        go(self, lexeme, &mut out);
        out
    }

    /// The bracket opened at `x_i` in the right bracketing encloses exactly
    /// the right subtree whose leftmost leaf is `i`, so `E(i)` is that
    /// subtree's rightmost leaf.
    pub fn to_bracketing_fn(&self) -> Result<BracketingFn> {
        let n = self.leaf_count() - 1;
        if n == 0 {
            return Err(Error::SingleLeaf);
        }
        // Returns the rightmost leaf of `t`.
        fn go(t: &BinaryTree, values: &mut [usize]) -> usize {
            match t {
                BinaryTree::Leaf(i) => *i,
                BinaryTree::Node(l, r) => {
                    go(l, values);
                    let last = go(r, values);
                    values[r.leftmost() - 1] = last;
                    last
                }
            }
        }
        let mut values = vec![0; n];
        go(self, &mut values);
        BracketingFn::new(values)
    }

    /// Inverse of [`BinaryTree::to_bracketing_fn`].
    ///
    /// Scans `k = 1..=n` with a stack of partial trees: `x_k` is pushed with
    /// its closing position `E(k)`, and every bracket closing at `k` pops its
    /// contents `V` and the tree `U` below, pushing `(UV)` in their place.
    pub fn from_bracketing_fn(e: &BracketingFn) -> BinaryTree {
        // (tree, position where the bracket holding it closes)
        let mut stack: Vec<(BinaryTree, usize)> = vec![(BinaryTree::Leaf(0), usize::MAX)];
        for k in 1..=e.n() {
            stack.push((BinaryTree::Leaf(k), e.get(k)));
            while stack.len() > 1 && stack.last().unwrap().1 == k {
                let (right, _) = stack.pop().unwrap();
                let (left, closes) = stack.pop().unwrap();
                stack.push((BinaryTree::node(left, right), closes));
            }
        }
        debug_assert_eq!(stack.len(), 1);
        stack.pop().unwrap().0
    }

    /// Indented outline, one node per line.
    pub fn render(&self) -> String {
        fn go(t: &BinaryTree, lexeme: Lexeme, depth: usize, out: &mut String) {
            out.push_str(&"  ".repeat(depth));
            match t {
                BinaryTree::Leaf(i) => {
                    lexeme.write(out, *i);
                    out.push('\n');
                }
                BinaryTree::Node(l, r) => {
                    out.push_str("*\n");
                    go(l, lexeme, depth + 1, out);
                    go(r, lexeme, depth + 1, out);
                }
            }
        }
        let mut out = String::new();
        go(self, self.default_lexeme(), 0, &mut out);
        out
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_word())
    }
}

impl FromStr for BinaryTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_word(s)
    }
}
