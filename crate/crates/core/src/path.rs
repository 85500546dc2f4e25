//! Lattice paths over the step alphabet `{N, E, D}` that start at the origin
//! and end on the main diagonal without ever crossing below it.
//!
//! Heights are measured as `y - x`: a north step raises the height by one, an
//! east step lowers it by one and a diagonal step leaves it unchanged.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty path word")]
    EmptyInput,
    #[error("invalid step character {ch:?} at position {pos}")]
    InvalidCharacter { ch: char, pos: usize },
    #[error("path goes below the diagonal after step {pos}")]
    BelowDiagonal { pos: usize },
    #[error("path ends at height {height}, not on the diagonal")]
    OpenPath { height: i64 },
    #[error("not a Dyck path: diagonal step at position {pos}")]
    NotADyckPath { pos: usize },
    #[error("length {0} is odd")]
    OddLength(usize),
    #[error("length must be positive")]
    ZeroLength,
}

/// A single step. The declaration order `N < E < D` is the canonical
/// enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    N,
    E,
    D,
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::N => 1,
            Step::E => -1,
            Step::D => 0,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::N => 'N',
            Step::E => 'E',
            Step::D => 'D',
        }
    }

    pub fn from_char(ch: char) -> Option<Step> {
        match ch {
            'N' => Some(Step::N),
            'E' => Some(Step::E),
            'D' => Some(Step::D),
            _ => None,
        }
    }
}

pub(crate) fn render(steps: &[Step]) -> String {
    steps.iter().map(|s| s.as_char()).collect()
}

/// A validated, nonempty path word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathWord(Vec<Step>);

impl PathWord {
    pub fn from_steps(steps: Vec<Step>) -> Result<PathWord, PathError> {
        if steps.is_empty() {
            return Err(PathError::EmptyInput);
        }
        let mut h = 0i64;
        for (pos, s) in steps.iter().enumerate() {
            h += s.delta();
            if h < 0 {
                return Err(PathError::BelowDiagonal { pos });
            }
        }
        if h != 0 {
            return Err(PathError::OpenPath { height: h });
        }
        Ok(PathWord(steps))
    }

    /// Wraps steps already known to be valid (generated by an enumerator or a
    /// structure-preserving rewrite).
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> PathWord {
        debug_assert!(PathWord::from_steps(steps.clone()).is_ok());
        PathWord(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, step: Step) -> usize {
        self.0.iter().filter(|&&s| s == step).count()
    }

    pub fn d_step_count(&self) -> usize {
        self.count(Step::D)
    }

    pub fn is_dyck(&self) -> bool {
        !self.0.contains(&Step::D)
    }

    /// Heights `h_0 = 0, h_1, ..., h_len` of the lattice points along the path.
    pub fn height_profile(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut h = 0;
        out.push(h);
        for s in &self.0 {
            h += s.delta();
            out.push(h);
        }
        out
    }

    /// Length once each diagonal step is weighted 2 (the Schröder length).
    pub fn weighted_length(&self) -> usize {
        self.0.len() + self.d_step_count()
    }

    fn require_dyck(&self) -> Result<(), PathError> {
        match self.0.iter().position(|&s| s == Step::D) {
            Some(pos) => Err(PathError::NotADyckPath { pos }),
            None => Ok(()),
        }
    }

    pub fn contains_nnn(&self) -> bool {
        self.0.windows(3).any(|w| w == [Step::N, Step::N, Step::N])
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.0))
    }
}

impl FromStr for PathWord {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_path(s)
    }
}

pub fn parse_path(text: &str) -> Result<PathWord, PathError> {
    if text.is_empty() {
        return Err(PathError::EmptyInput);
    }
    let steps = text
        .chars()
        .enumerate()
        .map(|(pos, ch)| Step::from_char(ch).ok_or(PathError::InvalidCharacter { ch, pos }))
        .collect::<Result<Vec<_>, _>>()?;
    PathWord::from_steps(steps)
}

/// Heights of the diagonal steps, i.e. the number of `N` and `D` steps up to
/// and including each `D`. Strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ClassSignature(pub Vec<usize>);

impl fmt::Display for ClassSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str(")")
    }
}

pub fn class_of(path: &PathWord) -> ClassSignature {
    let mut rising = 0;
    let mut heights = Vec::new();
    for &s in path.steps() {
        if s != Step::E {
            rising += 1;
        }
        if s == Step::D {
            heights.push(rising);
        }
    }
    ClassSignature(heights)
}

/// The canopy word of a Dyck path: one letter per north step except the last,
/// `N` when that north step is followed by an east step and `E` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeWord(Vec<Step>);

impl TypeWord {
    /// Panics if `letters` contains a diagonal step.
    pub fn new(letters: Vec<Step>) -> TypeWord {
        assert!(!letters.contains(&Step::D), "type words use only N and E");
        TypeWord(letters)
    }

    pub fn letters(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_factor(&self, a: Step, b: Step) -> bool {
        self.0.windows(2).any(|w| w[0] == a && w[1] == b)
    }

    /// All words over `{N, E}` of the given length, in canonical order.
    pub fn all(len: usize) -> Vec<TypeWord> {
        (0..1u64 << len)
            .map(|bits| {
                TypeWord(
                    (0..len)
                        .map(|i| {
                            if bits >> (len - 1 - i) & 1 == 0 {
                                Step::N
                            } else {
                                Step::E
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for TypeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.0))
    }
}

impl FromStr for TypeWord {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                'N' => Ok(Step::N),
                'E' => Ok(Step::E),
                _ => Err(PathError::InvalidCharacter { ch, pos }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TypeWord)
    }
}

pub fn type_of(path: &PathWord) -> Result<TypeWord, PathError> {
    path.require_dyck()?;
    let steps = path.steps();
    let mut letters: Vec<Step> = steps
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Step::N)
        .map(|(i, _)| match steps.get(i + 1) {
            Some(Step::E) => Step::N,
            _ => Step::E,
        })
        .collect();
    letters.pop();
    Ok(TypeWord(letters))
}

/// Lengths of the maximal runs of `N` steps, in order.
pub(crate) fn north_runs(steps: &[Step]) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut cur = 0;
    for &s in steps {
        if s == Step::N {
            cur += 1;
        } else if cur > 0 {
            runs.push(cur);
            cur = 0;
        }
    }
    if cur > 0 {
        runs.push(cur);
    }
    runs
}

/// Number of isolated north steps: maximal `N` runs of length exactly one.
pub fn ds_statistic(path: &PathWord) -> Result<usize, PathError> {
    path.require_dyck()?;
    Ok(north_runs(path.steps()).into_iter().filter(|&r| r == 1).count())
}

/// Lattice points on the diagonal, both endpoints included.
pub fn contacts(path: &PathWord) -> usize {
    path.height_profile().iter().filter(|&&h| h == 0).count()
}

pub fn is_primitive(path: &PathWord) -> bool {
    contacts(path) == 2
}

/// Lattice-point indices `v` such that step `v - 1` is `E` and step `v` is
/// `N` or `D`.
pub fn valleys(path: &PathWord) -> Vec<usize> {
    path.steps()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] == Step::E && w[1] != Step::E)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Depth-first generation in canonical order. `can_finish(height, remaining)`
/// prunes prefixes that can no longer return to the diagonal.
fn generate<F>(len: usize, alphabet: &[Step], out: &mut Vec<PathWord>, can_finish: F)
where
    F: Fn(i64, usize) -> bool + Copy,
{
    fn rec<F: Fn(i64, usize) -> bool + Copy>(
        len: usize,
        alphabet: &[Step],
        buf: &mut Vec<Step>,
        h: i64,
        out: &mut Vec<PathWord>,
        can_finish: F,
    ) {
        if buf.len() == len {
            if h == 0 {
                out.push(PathWord::from_steps_unchecked(buf.clone()));
            }
            return;
        }
        for &s in alphabet {
            let nh = h + s.delta();
            let remaining = len - buf.len() - 1;
            if nh < 0 || !can_finish(nh, remaining) {
                continue;
            }
            buf.push(s);
            rec(len, alphabet, buf, nh, out, can_finish);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(len);
    rec(len, alphabet, &mut buf, 0, out, can_finish);
}

/// All Motzkin paths with exactly `n` steps, in canonical order.
pub fn enumerate_motzkin(n: usize) -> Result<Vec<PathWord>, PathError> {
    if n == 0 {
        return Err(PathError::ZeroLength);
    }
    let mut out = Vec::new();
    generate(n, &[Step::N, Step::E, Step::D], &mut out, |h, rem| {
        h as usize <= rem
    });
    Ok(out)
}

fn check_even(two_n: usize) -> Result<(), PathError> {
    if two_n == 0 {
        Err(PathError::ZeroLength)
    } else if two_n % 2 == 1 {
        Err(PathError::OddLength(two_n))
    } else {
        Ok(())
    }
}

/// All Dyck paths of length `two_n`, in canonical order.
pub fn enumerate_dyck(two_n: usize) -> Result<Vec<PathWord>, PathError> {
    check_even(two_n)?;
    let mut out = Vec::new();
    generate(two_n, &[Step::N, Step::E], &mut out, |h, rem| {
        h as usize <= rem
    });
    Ok(out)
}

pub fn enumerate_nnn_avoiding_dyck(two_n: usize) -> Result<Vec<PathWord>, PathError> {
    Ok(enumerate_dyck(two_n)?
        .into_iter()
        .filter(|p| !p.contains_nnn())
        .collect())
}

/// All Schröder paths of weighted length `two_n`: paths over `{N, E, D}`
/// ending at `(n, n)`, in canonical order.
pub fn enumerate_schroder(two_n: usize) -> Result<Vec<PathWord>, PathError> {
    check_even(two_n)?;
    let n = two_n / 2;
    let mut out = Vec::new();
    let mut buf = Vec::new();
    schroder_rec(n, 0, 0, &mut buf, &mut out);
    Ok(out)
}

fn schroder_rec(n: usize, y: usize, h: i64, buf: &mut Vec<Step>, out: &mut Vec<PathWord>) {
    if y == n && h == 0 {
        out.push(PathWord::from_steps_unchecked(buf.clone()));
        return;
    }
    for s in [Step::N, Step::E, Step::D] {
        let (ny, nh) = match s {
            Step::N => (y + 1, h + 1),
            Step::E => (y, h - 1),
            Step::D => (y + 1, h),
        };
        if ny > n || nh < 0 {
            continue;
        }
        buf.push(s);
        schroder_rec(n, ny, nh, buf, out);
        buf.pop();
    }
}

/// Dyck paths generated by the grammar `R -> ε | N R R E`, in canonical
/// order. The grammar is ambiguous, so the language is collected as a set.
pub fn enumerate_motzkin_word_paths(two_n: usize) -> Result<Vec<PathWord>, PathError> {
    check_even(two_n)?;
    let n = two_n / 2;
    // words[k]: the language restricted to semilength k (empty word at k = 0).
    let mut words: Vec<Vec<Vec<Step>>> = vec![vec![Vec::new()]];
    for k in 1..=n {
        let mut set = HashSet::new();
        for a in 0..k {
            let b = k - 1 - a;
            for left in &words[a] {
                for right in &words[b] {
                    let mut w = Vec::with_capacity(2 * k);
                    w.push(Step::N);
                    w.extend_from_slice(left);
                    w.extend_from_slice(right);
                    w.push(Step::E);
                    set.insert(w);
                }
            }
        }
        let mut level: Vec<_> = set.into_iter().collect();
        level.sort();
        words.push(level);
    }
    Ok(words
        .pop()
        .unwrap_or_default()
        .into_iter()
        .map(PathWord::from_steps_unchecked)
        .collect())
}

/// Per-path record used by the JSON renderings.
#[derive(Debug, Clone, Serialize)]
pub struct PathSummary {
    pub word: String,
    pub class: ClassSignature,
    pub primitive: bool,
    pub contacts: usize,
    pub d_steps: usize,
}

impl PathSummary {
    pub fn of(path: &PathWord) -> PathSummary {
        PathSummary {
            word: path.to_string(),
            class: class_of(path),
            primitive: is_primitive(path),
            contacts: contacts(path),
            d_steps: path.d_step_count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PathWord {
        parse_path(s).unwrap()
    }

    #[test]
    fn parse_accepts_valid_words() {
        let path = p("NNDEDNNEEDE");
        assert_eq!(path.len(), 11);
        assert_eq!(path.to_string(), "NNDEDNNEEDE");
        assert_eq!(p("D").len(), 1);
        assert_eq!(p("NED").height_profile(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_path(""), Err(PathError::EmptyInput));
        assert_eq!(
            parse_path("NXE"),
            Err(PathError::InvalidCharacter { ch: 'X', pos: 1 })
        );
        assert_eq!(parse_path("ned").unwrap_err(), PathError::InvalidCharacter { ch: 'n', pos: 0 });
        assert_eq!(parse_path("NDEE"), Err(PathError::BelowDiagonal { pos: 3 }));
        assert_eq!(parse_path("E"), Err(PathError::BelowDiagonal { pos: 0 }));
        assert_eq!(parse_path("NN"), Err(PathError::OpenPath { height: 2 }));
    }

    #[test]
    fn class_examples() {
        assert_eq!(class_of(&p("NNDEDNNEEDE")).0, vec![3, 4, 7]);
        assert_eq!(class_of(&p("NE")).0, Vec::<usize>::new());
        assert_eq!(class_of(&p("NEDD")).0, vec![2, 3]);
        assert_eq!(class_of(&p("NDED")).0, vec![2, 3]);
        assert_eq!(class_of(&p("NNDEDNNEEDE")).to_string(), "(3,4,7)");
    }

    #[test]
    fn type_examples() {
        assert_eq!(type_of(&p("NENE")).unwrap().to_string(), "N");
        assert_eq!(type_of(&p("NNEE")).unwrap().to_string(), "E");
        assert!(type_of(&p("NE")).unwrap().is_empty());
        assert_eq!(
            type_of(&p("NDE")),
            Err(PathError::NotADyckPath { pos: 1 })
        );
    }

    #[test]
    fn ds_examples() {
        assert_eq!(ds_statistic(&p("NENE")).unwrap(), 2);
        assert_eq!(ds_statistic(&p("NNEE")).unwrap(), 0);
        assert_eq!(ds_statistic(&p("NE")).unwrap(), 1);
        assert_eq!(ds_statistic(&p("NNNEEE")).unwrap(), 0);
        assert!(ds_statistic(&p("D")).is_err());
    }

    #[test]
    fn contact_and_primitive_examples() {
        assert_eq!(contacts(&p("NE")), 2);
        assert_eq!(contacts(&p("NENE")), 3);
        for k in 1..6 {
            let w = format!("{}{}", "N".repeat(k), "E".repeat(k));
            assert_eq!(contacts(&p(&w)), 2);
        }
        assert!(is_primitive(&p("D")));
        assert!(is_primitive(&p("NE")));
        assert!(!is_primitive(&p("NENE")));
        assert!(is_primitive(&p("NDE")));
    }

    #[test]
    fn valley_examples() {
        assert_eq!(valleys(&p("NED")), vec![2]);
        assert!(valleys(&p("NE")).is_empty());
        // Linear-scan oracle: E followed by N or D.
        let w = p("NNDEDNNEEDE");
        let oracle: Vec<usize> = (1..w.len())
            .filter(|&i| w.steps()[i - 1] == Step::E && matches!(w.steps()[i], Step::N | Step::D))
            .collect();
        assert_eq!(oracle, vec![4, 9]);
        assert_eq!(valleys(&w), oracle);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_motzkin(1).unwrap(), vec![p("D")]);
        let m3: Vec<String> = enumerate_motzkin(3)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(m3, vec!["NED", "NDE", "DNE", "DDD"]);
        assert_eq!(enumerate_dyck(2).unwrap(), vec![p("NE")]);
        assert_eq!(enumerate_nnn_avoiding_dyck(2).unwrap(), vec![p("NE")]);
        assert_eq!(enumerate_dyck(6).unwrap().len(), 5);
        assert_eq!(enumerate_schroder(2).unwrap(), vec![p("NE"), p("D")]);
        assert_eq!(enumerate_schroder(4).unwrap().len(), 6);
        assert_eq!(enumerate_motzkin_word_paths(2).unwrap(), vec![p("NE")]);
        assert_eq!(enumerate_motzkin_word_paths(4).unwrap(), vec![p("NNEE")]);
    }

    #[test]
    fn enumeration_errors() {
        assert_eq!(enumerate_dyck(5), Err(PathError::OddLength(5)));
        assert_eq!(enumerate_schroder(3), Err(PathError::OddLength(3)));
        assert_eq!(enumerate_motzkin_word_paths(7), Err(PathError::OddLength(7)));
        assert_eq!(enumerate_motzkin(0), Err(PathError::ZeroLength));
        assert_eq!(enumerate_dyck(0), Err(PathError::ZeroLength));
    }

    #[test]
    fn summary_json() {
        let json = serde_json::to_string(&PathSummary::of(&p("NNDEDNNEEDE"))).unwrap();
        assert_eq!(
            json,
            r#"{"word":"NNDEDNNEEDE","class":[3,4,7],"primitive":true,"contacts":2,"d_steps":3}"#
        );
    }

    #[test]
    fn type_word_listing() {
        let all: Vec<String> = TypeWord::all(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(all, vec!["NN", "NE", "EN", "EE"]);
        assert_eq!("NE".parse::<TypeWord>().unwrap().to_string(), "NE");
        assert!("ND".parse::<TypeWord>().is_err());
    }
}
