//! The bijection between Dyck paths avoiding `NNN` and Motzkin paths,
//! together with the two binary-tree encodings of Dyck paths and type
//! reversal.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::path::{PathError, PathWord, Step, TypeWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("path contains NNN (north run of length {run_len})")]
    ContainsNNN { run_len: usize },
    #[error("malformed tree at byte {pos}: {msg}")]
    TreeSyntax { pos: usize, msg: &'static str },
}

/// Maximal-run factorization `N^{a_1} E^{b_1} ... N^{a_k} E^{b_k}` of a Dyck
/// path avoiding `NNN`, with every `a_i` in `{1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    pub runs: Vec<(u8, usize)>,
}

impl RunDecomposition {
    pub fn to_steps(&self) -> Vec<Step> {
        let mut out = Vec::new();
        for &(a, b) in &self.runs {
            out.extend(std::iter::repeat_n(Step::N, a as usize));
            out.extend(std::iter::repeat_n(Step::E, b));
        }
        out
    }
}

pub fn run_decomposition(path: &PathWord) -> Result<RunDecomposition, BijectionError> {
    let steps = path.steps();
    if let Some(pos) = steps.iter().position(|&s| s == Step::D) {
        return Err(PathError::NotADyckPath { pos }.into());
    }
    let mut runs = Vec::new();
    let mut i = 0;
    while i < steps.len() {
        let start = i;
        while i < steps.len() && steps[i] == Step::N {
            i += 1;
        }
        let a = i - start;
        if a > 2 {
            return Err(BijectionError::ContainsNNN { run_len: a });
        }
        let start = i;
        while i < steps.len() && steps[i] == Step::E {
            i += 1;
        }
        // A valid Dyck word starts with N and alternates nonempty runs.
        runs.push((a as u8, i - start));
    }
    Ok(RunDecomposition { runs })
}

/// `φ`: replace each `NE` opening a one-step run by `D` and each `NNE`
/// opening a two-step run by `N`.
pub fn phi(path: &PathWord) -> Result<PathWord, BijectionError> {
    let runs = run_decomposition(path)?;
    let mut out = Vec::with_capacity(path.len() / 2);
    for (a, b) in runs.runs {
        out.push(if a == 1 { Step::D } else { Step::N });
        out.extend(std::iter::repeat_n(Step::E, b - 1));
    }
    Ok(PathWord::from_steps_unchecked(out))
}

/// `φ⁻¹`: `D -> NE`, `N -> NNE`, `E -> E`.
pub fn phi_inv(path: &PathWord) -> PathWord {
    let mut out = Vec::with_capacity(2 * path.len());
    for &s in path.steps() {
        match s {
            Step::D => out.extend([Step::N, Step::E]),
            Step::N => out.extend([Step::N, Step::N, Step::E]),
            Step::E => out.push(Step::E),
        }
    }
    PathWord::from_steps_unchecked(out)
}

/// Reads `w` right to left, exchanging `N` and `E`.
pub fn reverse_type(w: &TypeWord) -> TypeWord {
    TypeWord::new(
        w.letters()
            .iter()
            .rev()
            .map(|&s| if s == Step::N { Step::E } else { Step::N })
            .collect(),
    )
}

/// A binary tree. Textual form: `.` for the empty tree and `(L R)` for a node
/// with subtrees `L` and `R`, so a single node is `(. .)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Empty,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> BinaryTree {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf() -> BinaryTree {
        BinaryTree::node(BinaryTree::Empty, BinaryTree::Empty)
    }

    pub fn size(&self) -> usize {
        match self {
            BinaryTree::Empty => 0,
            BinaryTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Every tree with exactly `n` nodes.
    pub fn all(n: usize) -> Vec<BinaryTree> {
        let mut table: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::Empty]];
        for k in 1..=n {
            let mut level = Vec::new();
            for a in 0..k {
                for l in &table[a] {
                    for r in &table[k - 1 - a] {
                        level.push(BinaryTree::node(l.clone(), r.clone()));
                    }
                }
            }
            table.push(level);
        }
        table.swap_remove(n)
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Empty => f.write_str("."),
            BinaryTree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl FromStr for BinaryTree {
    type Err = BijectionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let tree = parse_tree(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(BijectionError::TreeSyntax { pos, msg: "trailing input" });
        }
        Ok(tree)
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<BinaryTree, BijectionError> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(BinaryTree::Empty)
        }
        Some(b'(') => {
            *pos += 1;
            let left = parse_tree(bytes, pos)?;
            let right = parse_tree(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                return Err(BijectionError::TreeSyntax { pos: *pos, msg: "expected ')'" });
            }
            *pos += 1;
            Ok(BinaryTree::node(left, right))
        }
        Some(_) => Err(BijectionError::TreeSyntax { pos: *pos, msg: "expected '.' or '('" }),
        None => Err(BijectionError::TreeSyntax { pos: *pos, msg: "unexpected end" }),
    }
}

/// `δ₁(ε) = ε`, `δ₁((L, R)) = δ₁(L) · N · δ₁(R) · E`. The result is empty
/// only for the empty tree.
pub fn delta1(tree: &BinaryTree) -> Vec<Step> {
    let mut out = Vec::with_capacity(2 * tree.size());
    fn go(t: &BinaryTree, out: &mut Vec<Step>) {
        if let BinaryTree::Node(l, r) = t {
            go(l, out);
            out.push(Step::N);
            go(r, out);
            out.push(Step::E);
        }
    }
    go(tree, &mut out);
    out
}

/// `δ₂(ε) = ε`, `δ₂((L, R)) = N · δ₂(L) · E · δ₂(R)`.
pub fn delta2(tree: &BinaryTree) -> Vec<Step> {
    let mut out = Vec::with_capacity(2 * tree.size());
    fn go(t: &BinaryTree, out: &mut Vec<Step>) {
        if let BinaryTree::Node(l, r) = t {
            out.push(Step::N);
            go(l, out);
            out.push(Step::E);
            go(r, out);
        }
    }
    go(tree, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::{parse_path, render};

    fn p(s: &str) -> PathWord {
        parse_path(s).unwrap()
    }

    #[test]
    fn run_decomposition_examples() {
        assert_eq!(run_decomposition(&p("NENE")).unwrap().runs, vec![(1, 1), (1, 1)]);
        assert_eq!(run_decomposition(&p("NNEE")).unwrap().runs, vec![(2, 2)]);
        assert_eq!(
            run_decomposition(&p("NNENEE")).unwrap().runs,
            vec![(2, 1), (1, 2)]
        );
        assert_eq!(
            run_decomposition(&p("NNNEEE")),
            Err(BijectionError::ContainsNNN { run_len: 3 })
        );
        assert!(matches!(
            run_decomposition(&p("NDE")),
            Err(BijectionError::Path(PathError::NotADyckPath { pos: 1 }))
        ));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&p("NE")).unwrap(), p("D"));
        assert_eq!(phi(&p("NNEE")).unwrap(), p("NE"));
        assert_eq!(phi(&p("NENE")).unwrap(), p("DD"));
        assert_eq!(phi(&p("NNENEE")).unwrap(), p("NDE"));
        assert!(matches!(phi(&p("NNNEEE")), Err(BijectionError::ContainsNNN { .. })));
    }

    #[test]
    fn phi_inv_examples() {
        assert_eq!(phi_inv(&p("D")), p("NE"));
        assert_eq!(phi_inv(&p("NED")), p("NNEENE"));
    }

    #[test]
    fn reverse_type_examples() {
        let w = |s: &str| s.parse::<TypeWord>().unwrap();
        assert_eq!(reverse_type(&w("NN")), w("EE"));
        assert_eq!(reverse_type(&w("NE")), w("NE"));
        assert_eq!(reverse_type(&w("")), w(""));
    }

    #[test]
    fn delta_examples() {
        let leaf = BinaryTree::leaf();
        assert_eq!(render(&delta1(&leaf)), "NE");
        assert_eq!(render(&delta2(&leaf)), "NE");
        let t = BinaryTree::node(BinaryTree::leaf(), BinaryTree::Empty);
        assert_eq!(render(&delta1(&t)), "NENE");
        assert_eq!(render(&delta2(&t)), "NNEE");
        assert!(delta1(&BinaryTree::Empty).is_empty());
        assert!(delta2(&BinaryTree::Empty).is_empty());
    }

    #[test]
    fn tree_text_form() {
        let t: BinaryTree = "((. .) .)".parse().unwrap();
        assert_eq!(t, BinaryTree::node(BinaryTree::leaf(), BinaryTree::Empty));
        assert_eq!(t.to_string(), "((. .) .)");
        assert_eq!(".".parse::<BinaryTree>().unwrap(), BinaryTree::Empty);
        assert!("(. .".parse::<BinaryTree>().is_err());
        assert!("(. .))".parse::<BinaryTree>().is_err());
        assert!("x".parse::<BinaryTree>().is_err());
        assert_eq!(BinaryTree::all(3).len(), 5);
        assert_eq!(BinaryTree::all(0), vec![BinaryTree::Empty]);
    }
}
