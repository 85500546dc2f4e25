//! Cover relations, Hasse diagrams, reflexive-transitive closures, connected
//! components and brute-force interval counts.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bijection::{phi_inv, reverse_type};
use crate::path::{
    class_of, contacts, ds_statistic, enumerate_dyck, enumerate_motzkin, enumerate_schroder,
    type_of, valleys, ClassSignature, PathError, PathWord, Step, TypeWord,
};
use crate::poly::{Coefficient, UPoly, UXPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("cover {cover} of {element} is outside the element set")]
    CoverOutsideUniverse { element: String, cover: String },
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("cover relation has a cycle")]
    CycleDetected,
    #[error("component {component} mixes classes {first} and {second}")]
    ComponentClassMismatch {
        component: usize,
        first: String,
        second: String,
    },
    #[error("class {class} is split over {count} components")]
    ClassSplit { class: String, count: usize },
    #[error("{family} size {size} exceeds the brute-force budget {limit}")]
    BudgetExceeded {
        family: &'static str,
        size: usize,
        limit: usize,
    },
}

/// Paths covering `path`: for each valley `v`, the sub-path `S` from `v` to
/// the next lattice point at the same height is swapped with the east step
/// preceding `v`. Sorted and duplicate-free.
pub fn motzkin_covers(path: &PathWord) -> Vec<PathWord> {
    let steps = path.steps();
    let heights = path.height_profile();
    let mut out: Vec<PathWord> = valleys(path)
        .into_iter()
        .map(|v| {
            let w = (v + 1..heights.len())
                .find(|&i| heights[i] == heights[v])
                .expect("a valid path returns to every height it leaves");
            let mut next = Vec::with_capacity(steps.len());
            next.extend_from_slice(&steps[..v - 1]);
            next.extend_from_slice(&steps[v..w]);
            next.push(Step::E);
            next.extend_from_slice(&steps[w..]);
            PathWord::from_steps_unchecked(next)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Tamari covers of a Dyck path (the same valley rule).
pub fn tamari_covers(path: &PathWord) -> Result<Vec<PathWord>, PathError> {
    if let Some(pos) = path.steps().iter().position(|&s| s == Step::D) {
        return Err(PathError::NotADyckPath { pos });
    }
    Ok(motzkin_covers(path))
}

/// Cover-edge DAG over a canonically ordered element list. An edge `(i, j)`
/// means element `j` covers element `i`.
#[derive(Debug, Clone)]
pub struct HasseDiagram {
    elements: Vec<PathWord>,
    covers: Vec<(usize, usize)>,
    index: HashMap<PathWord, usize>,
}

impl HasseDiagram {
    pub fn elements(&self) -> &[PathWord] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, path: &PathWord) -> Option<usize> {
        self.index.get(path).copied()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.elements.len()];
        for &(i, j) in &self.covers {
            succ[i].push(j);
        }
        succ
    }

    /// Graphviz rendering. With a partition, each component becomes a
    /// cluster labelled by its class.
    pub fn to_dot(&self, partition: Option<&ComponentPartition>) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        let node = |out: &mut String, i: usize, indent: &str| {
            let _ = writeln!(out, "{indent}n{i} [label=\"{}\"];", self.elements[i]);
        };
        match partition {
            Some(p) => {
                for (c, members) in p.members().iter().enumerate() {
                    let _ = writeln!(out, "  subgraph cluster_{c} {{");
                    let _ = writeln!(out, "    label=\"{}\";", p.classes[c]);
                    for &i in members {
                        node(&mut out, i, "    ");
                    }
                    out.push_str("  }\n");
                }
            }
            None => {
                for i in 0..self.elements.len() {
                    node(&mut out, i, "  ");
                }
            }
        }
        for &(i, j) in &self.covers {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, n: usize, partition: Option<&ComponentPartition>) -> serde_json::Value {
        #[derive(Serialize)]
        struct Component<'a> {
            class: &'a ClassSignature,
            members: Vec<usize>,
        }
        let components: Vec<Component> = partition
            .map(|p| {
                p.members()
                    .into_iter()
                    .zip(&p.classes)
                    .map(|(members, class)| Component { class, members })
                    .collect()
            })
            .unwrap_or_default();
        serde_json::json!({
            "n": n,
            "elements": self.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "covers": self.covers.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "components": components,
        })
    }
}

pub fn build_poset<F>(elements: Vec<PathWord>, cover_fn: F) -> Result<HasseDiagram, PosetError>
where
    F: Fn(&PathWord) -> Vec<PathWord> + Sync,
{
    build_poset_with(elements, cover_fn, false)
}

/// As [`build_poset`], optionally generating covers in parallel. The result
/// does not depend on `parallel`.
pub fn build_poset_with<F>(
    elements: Vec<PathWord>,
    cover_fn: F,
    parallel: bool,
) -> Result<HasseDiagram, PosetError>
where
    F: Fn(&PathWord) -> Vec<PathWord> + Sync,
{
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(PosetError::DuplicateElement(e.to_string()));
        }
    }
    let cover_lists: Vec<Vec<PathWord>> = if parallel {
        elements.par_iter().map(&cover_fn).collect()
    } else {
        elements.iter().map(&cover_fn).collect()
    };
    let mut covers = Vec::new();
    for (i, list) in cover_lists.into_iter().enumerate() {
        let mut targets = list
            .iter()
            .map(|c| {
                index.get(c).copied().ok_or_else(|| PosetError::CoverOutsideUniverse {
                    element: elements[i].to_string(),
                    cover: c.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        targets.sort_unstable();
        targets.dedup();
        covers.extend(targets.into_iter().map(|j| (i, j)));
    }
    Ok(HasseDiagram {
        elements,
        covers,
        index,
    })
}

/// Dense boolean matrix, one row of 64-bit words per element.
/// `get(i, j)` holds iff element `i` ≤ element `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparabilityMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl ComparabilityMatrix {
    pub fn new(n: usize) -> ComparabilityMatrix {
        let words = n.div_ceil(64);
        ComparabilityMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn row_count(&self, i: usize) -> u64 {
        self.row(i).iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `row[dst] |= row[src]`.
    fn union_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words;
        let (d, s) = if dst < src {
            let (a, b) = self.bits.split_at_mut(src * w);
            (&mut a[dst * w..(dst + 1) * w], &b[..w])
        } else {
            let (a, b) = self.bits.split_at_mut(dst * w);
            (&mut b[..w], &a[src * w..(src + 1) * w])
        };
        for (x, y) in d.iter_mut().zip(s) {
            *x |= y;
        }
    }

    pub fn count_true(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| !(self.get(i, j) && self.get(j, i))))
    }

    /// Every row already contains the rows of everything it reaches.
    pub fn is_transitive(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).filter(|&j| self.get(i, j)).all(|j| {
                self.row(j)
                    .iter()
                    .zip(self.row(i))
                    .all(|(rj, ri)| rj & !ri == 0)
            })
        })
    }
}

/// Reflexive-transitive closure of the cover relation, built row by row in
/// reverse topological order.
pub fn transitive_closure(h: &HasseDiagram) -> Result<ComparabilityMatrix, PosetError> {
    let n = h.len();
    let succ = h.successors();
    let mut indegree = vec![0usize; n];
    for &(_, j) in &h.covers {
        indegree[j] += 1;
    }
    let mut order: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for &j in &succ[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                order.push(j);
            }
        }
    }
    if order.len() != n {
        return Err(PosetError::CycleDetected);
    }
    let mut m = ComparabilityMatrix::new(n);
    for &i in order.iter().rev() {
        m.set(i, i);
        for &j in &succ[i] {
            m.union_rows(i, j);
        }
    }
    Ok(m)
}

/// Ordered comparable pairs, reflexive pairs included.
pub fn count_intervals(m: &ComparabilityMatrix) -> u64 {
    m.count_true()
}

struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> DisjointSets {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Connected components of the undirected cover graph. Components are
/// numbered by their first element in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub component_of: Vec<usize>,
    pub classes: Vec<ClassSignature>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count()];
        for (i, &c) in self.component_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

/// Components of `h`, checked to coincide with the partition by class.
pub fn connected_components(h: &HasseDiagram) -> Result<ComponentPartition, PosetError> {
    let n = h.len();
    let mut dsu = DisjointSets::new(n);
    for &(i, j) in &h.covers {
        dsu.union(i, j);
    }
    let mut id_of_root = HashMap::new();
    let mut component_of = Vec::with_capacity(n);
    let mut classes: Vec<ClassSignature> = Vec::new();
    for i in 0..n {
        let root = dsu.find(i);
        let next = id_of_root.len();
        let id = *id_of_root.entry(root).or_insert(next);
        let class = class_of(&h.elements[i]);
        if id == classes.len() {
            classes.push(class);
        } else if classes[id] != class {
            return Err(PosetError::ComponentClassMismatch {
                component: id,
                first: classes[id].to_string(),
                second: class.to_string(),
            });
        }
        component_of.push(id);
    }
    let mut seen: HashMap<&ClassSignature, usize> = HashMap::new();
    for c in &classes {
        *seen.entry(c).or_default() += 1;
    }
    if let Some((class, &count)) = seen.iter().find(|(_, &k)| k > 1) {
        return Err(PosetError::ClassSplit {
            class: class.to_string(),
            count,
        });
    }
    Ok(ComponentPartition {
        component_of,
        classes,
    })
}

/// Families whose intervals are counted by the generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalFamily {
    Motzkin,
    Schroder,
}

/// Size limits for the brute-force pipelines. Closure cost grows with the
/// square of the family size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub motzkin_max_n: usize,
    pub schroder_max_two_n: usize,
    pub tamari_max_two_n: usize,
    pub isomorphism_max_n: usize,
    pub overridden: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            motzkin_max_n: 12,
            schroder_max_two_n: 14,
            tamari_max_two_n: 14,
            isomorphism_max_n: 10,
            overridden: false,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget {
            overridden: true,
            ..Budget::default()
        }
    }

    fn check(&self, family: &'static str, size: usize, limit: usize) -> Result<(), PosetError> {
        if self.overridden || size <= limit {
            Ok(())
        } else {
            Err(PosetError::BudgetExceeded {
                family,
                size,
                limit,
            })
        }
    }

    pub fn check_motzkin(&self, n: usize) -> Result<(), PosetError> {
        self.check("motzkin", n, self.motzkin_max_n)
    }

    pub fn check_schroder(&self, two_n: usize) -> Result<(), PosetError> {
        self.check("schroder", two_n, self.schroder_max_two_n)
    }

    pub fn check_tamari(&self, two_n: usize) -> Result<(), PosetError> {
        self.check("tamari", two_n, self.tamari_max_two_n)
    }

    pub fn check_isomorphism(&self, n: usize) -> Result<(), PosetError> {
        self.check("isomorphism", n, self.isomorphism_max_n)
    }
}

pub fn motzkin_poset(n: usize) -> Result<HasseDiagram, PosetError> {
    build_poset(enumerate_motzkin(n)?, motzkin_covers)
}

pub fn schroder_poset(two_n: usize) -> Result<HasseDiagram, PosetError> {
    build_poset(enumerate_schroder(two_n)?, motzkin_covers)
}

pub fn tamari_poset(two_n: usize) -> Result<HasseDiagram, PosetError> {
    build_poset(enumerate_dyck(two_n)?, motzkin_covers)
}

/// `Σ u^{#D(P)}` over intervals `[P, Q]` of the Motzkin poset on `n` steps or
/// the Schröder poset of length `2n`.
pub fn refined_interval_polynomial(
    n: usize,
    family: IntervalFamily,
    budget: &Budget,
) -> Result<UPoly, PosetError> {
    let h = match family {
        IntervalFamily::Motzkin => {
            budget.check_motzkin(n)?;
            motzkin_poset(n)?
        }
        IntervalFamily::Schroder => {
            budget.check_schroder(2 * n)?;
            schroder_poset(2 * n)?
        }
    };
    let m = transitive_closure(&h)?;
    let mut by_d: Vec<u64> = Vec::new();
    for (i, e) in h.elements().iter().enumerate() {
        let d = e.d_step_count();
        if by_d.len() <= d {
            by_d.resize(d + 1, 0);
        }
        by_d[d] += m.row_count(i);
    }
    Ok(UPoly::from_coeffs(by_d.into_iter().map(Into::into).collect()))
}

/// `Σ u^{ds(S)} x^{cont(R) - 1}` over Tamari intervals `R ≤ S` of length
/// `two_n` with `type(R) = type(S)`, optionally restricted to paths avoiding
/// `NNN`.
pub fn synchronized_interval_polynomial(
    two_n: usize,
    restrict_nnn: bool,
    budget: &Budget,
) -> Result<UXPoly, PosetError> {
    budget.check_tamari(two_n)?;
    let h = tamari_poset(two_n)?;
    let m = transitive_closure(&h)?;
    let elems = h.elements();
    let types: Vec<TypeWord> = elems.iter().map(type_of).collect::<Result<_, _>>()?;
    let keep: Vec<bool> = elems
        .iter()
        .map(|e| !restrict_nnn || !e.contains_nnn())
        .collect();
    let mut acc = UXPoly::default();
    for i in 0..elems.len() {
        if !keep[i] {
            continue;
        }
        let x_pow = contacts(&elems[i]) - 1;
        for j in 0..elems.len() {
            if keep[j] && m.get(i, j) && types[i] == types[j] {
                let ds = ds_statistic(&elems[j])?;
                acc.add_assign(&UXPoly::monomial(1, ds, x_pow));
            }
        }
    }
    Ok(acc)
}

/// Number of components of the Motzkin poset on `n` steps whose elements
/// have `n - 2k` diagonal steps.
pub fn component_count_refined(n: usize, k: usize) -> Result<usize, PosetError> {
    let h = motzkin_poset(n)?;
    let p = connected_components(&h)?;
    Ok(p.classes.iter().filter(|c| c.0.len() + 2 * k == n).count())
}

/// Checks that `φ⁻¹` carries the Motzkin order on `n` steps onto the Tamari
/// order restricted to pairs of equal type, by comparing full comparability
/// matrices.
pub fn verify_order_isomorphism(n: usize, budget: &Budget) -> Result<bool, PosetError> {
    budget.check_isomorphism(n)?;
    let motzkin = motzkin_poset(n)?;
    let motzkin_le = transitive_closure(&motzkin)?;
    let tamari = tamari_poset(2 * n)?;
    let tamari_le = transitive_closure(&tamari)?;
    let images: Vec<usize> = motzkin
        .elements()
        .iter()
        .map(|p| {
            tamari
                .index_of(&phi_inv(p))
                .expect("φ⁻¹ of a Motzkin path is a Dyck path of twice the length")
        })
        .collect();
    let types: Vec<TypeWord> = images
        .iter()
        .map(|&r| type_of(&tamari.elements()[r]))
        .collect::<Result<_, _>>()?;
    let len = motzkin.len();
    Ok((0..len).all(|i| {
        (0..len).all(|j| {
            let rhs = tamari_le.get(images[i], images[j]) && types[i] == types[j];
            motzkin_le.get(i, j) == rhs
        })
    }))
}

/// Interval and cover-edge counts of the Tamari order induced on the Dyck
/// paths of one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberCounts {
    pub elements: usize,
    pub intervals: u64,
    pub cover_edges: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualTypeRow {
    pub ty: String,
    pub reversed: String,
    pub fiber: FiberCounts,
    pub reversed_fiber: FiberCounts,
}

impl DualTypeRow {
    pub fn matches(&self) -> bool {
        self.fiber.intervals == self.reversed_fiber.intervals
            && self.fiber.cover_edges == self.reversed_fiber.cover_edges
            && self.fiber.elements == self.reversed_fiber.elements
    }
}

/// For every type word `ν`, compares the sub-poset induced on the fiber of `ν`
/// with the one on the fiber of its reversal.
pub fn dual_type_counts(two_n: usize, budget: &Budget) -> Result<Vec<DualTypeRow>, PosetError> {
    budget.check_tamari(two_n)?;
    let h = tamari_poset(two_n)?;
    let m = transitive_closure(&h)?;
    let mut fibers: HashMap<TypeWord, Vec<usize>> = HashMap::new();
    for (i, e) in h.elements().iter().enumerate() {
        fibers.entry(type_of(e)?).or_default().push(i);
    }
    let fiber_counts = |ty: &TypeWord| -> FiberCounts {
        let members = fibers.get(ty).map(Vec::as_slice).unwrap_or(&[]);
        let mut intervals = 0;
        let mut cover_edges = 0;
        for &a in members {
            for &b in members {
                if !m.get(a, b) {
                    continue;
                }
                intervals += 1;
                // Hasse edge of the induced order: nothing of the fiber strictly between.
                if a != b && !members.iter().any(|&c| c != a && c != b && m.get(a, c) && m.get(c, b)) {
                    cover_edges += 1;
                }
            }
        }
        FiberCounts {
            elements: members.len(),
            intervals,
            cover_edges,
        }
    };
    Ok(TypeWord::all(two_n / 2 - 1)
        .into_iter()
        .map(|ty| {
            let rev = reverse_type(&ty);
            DualTypeRow {
                fiber: fiber_counts(&ty),
                reversed_fiber: fiber_counts(&rev),
                ty: ty.to_string(),
                reversed: rev.to_string(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::parse_path;

    fn p(s: &str) -> PathWord {
        parse_path(s).unwrap()
    }

    fn words(v: &[PathWord]) -> Vec<String> {
        v.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn cover_examples() {
        assert_eq!(words(&motzkin_covers(&p("NED"))), vec!["NDE"]);
        assert!(motzkin_covers(&p("NE")).is_empty());
        assert_eq!(words(&motzkin_covers(&p("NEDD"))), vec!["NDED"]);
        assert_eq!(words(&motzkin_covers(&p("NDED"))), vec!["NDDE"]);
        assert!(motzkin_covers(&p("NDDE")).is_empty());
        assert_eq!(words(&tamari_covers(&p("NENE")).unwrap()), vec!["NNEE"]);
        assert!(tamari_covers(&p("NNEE")).unwrap().is_empty());
        assert!(tamari_covers(&p("NED")).is_err());
    }

    #[test]
    fn small_posets() {
        let h = motzkin_poset(3).unwrap();
        assert_eq!(h.len(), 4);
        assert_eq!(h.covers().len(), 1);
        let (i, j) = h.covers()[0];
        assert_eq!((h.elements()[i].to_string(), h.elements()[j].to_string()), ("NED".into(), "NDE".into()));
        let d2 = tamari_poset(2).unwrap();
        assert_eq!((d2.len(), d2.covers().len()), (1, 0));
        // Tamari lattice of order 3: the pentagon.
        assert_eq!(tamari_poset(6).unwrap().covers().len(), 5);
    }

    #[test]
    fn cover_outside_universe() {
        let err = build_poset(vec![p("NED")], motzkin_covers).unwrap_err();
        assert!(matches!(err, PosetError::CoverOutsideUniverse { .. }));
        let dup = build_poset(vec![p("NE"), p("NE")], motzkin_covers).unwrap_err();
        assert!(matches!(dup, PosetError::DuplicateElement(_)));
    }

    #[test]
    fn chain_and_antichain_closures() {
        let chain = build_poset(vec![p("NEDD"), p("NDED"), p("NDDE")], motzkin_covers).unwrap();
        let m = transitive_closure(&chain).unwrap();
        assert_eq!(count_intervals(&m), 6);
        assert!(m.get(0, 2) && !m.get(2, 0));
        let anti = build_poset(vec![p("DD"), p("NE")], motzkin_covers).unwrap();
        assert_eq!(count_intervals(&transitive_closure(&anti).unwrap()), 2);
    }

    #[test]
    fn cycle_is_detected() {
        let h = build_poset(vec![p("NEDD"), p("NDED")], |w| {
            if *w == p("NEDD") {
                vec![p("NDED")]
            } else {
                vec![p("NEDD")]
            }
        })
        .unwrap();
        assert_eq!(transitive_closure(&h), Err(PosetError::CycleDetected));
    }

    #[test]
    fn interval_counts_small() {
        for (n, want) in [(1, 1), (3, 5), (4, 14)] {
            let m = transitive_closure(&motzkin_poset(n).unwrap()).unwrap();
            assert_eq!(count_intervals(&m), want, "n = {n}");
        }
    }

    #[test]
    fn refined_polynomials_small() {
        let b = Budget::default();
        let m2 = refined_interval_polynomial(2, IntervalFamily::Motzkin, &b).unwrap();
        assert_eq!(m2.to_string(), "u^2+1");
        let m1 = refined_interval_polynomial(1, IntervalFamily::Motzkin, &b).unwrap();
        assert_eq!(m1.to_string(), "u");
        let s1 = refined_interval_polynomial(1, IntervalFamily::Schroder, &b).unwrap();
        assert_eq!(s1.to_string(), "u+1");
        assert_eq!(s1.eval_at_one(), 2.into());
        assert!(matches!(
            refined_interval_polynomial(13, IntervalFamily::Motzkin, &b),
            Err(PosetError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn synchronized_small() {
        let b = Budget::default();
        assert_eq!(synchronized_interval_polynomial(2, true, &b).unwrap().to_string(), "ux");
        assert_eq!(
            synchronized_interval_polynomial(4, true, &b).unwrap().to_string(),
            "u^2x^2+x"
        );
        assert!(matches!(
            synchronized_interval_polynomial(3, true, &b),
            Err(PosetError::Path(PathError::OddLength(3)))
        ));
        assert!(matches!(
            synchronized_interval_polynomial(16, true, &b),
            Err(PosetError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn components_small() {
        let c2 = connected_components(&motzkin_poset(2).unwrap()).unwrap();
        assert_eq!(c2.count(), 2);
        let c3 = connected_components(&motzkin_poset(3).unwrap()).unwrap();
        assert_eq!(c3.count(), 3);
        let s4 = connected_components(&schroder_poset(4).unwrap()).unwrap();
        assert_eq!(s4.count(), 4);
        assert_eq!(component_count_refined(1, 0).unwrap(), 1);
    }

    #[test]
    fn order_isomorphism_small() {
        assert!(verify_order_isomorphism(3, &Budget::default()).unwrap());
    }

    #[test]
    fn dual_types_size_two() {
        let rows = dual_type_counts(4, &Budget::default()).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            assert_eq!(row.fiber, FiberCounts { elements: 1, intervals: 1, cover_edges: 0 });
            assert!(row.matches());
        }
    }

    #[test]
    fn exports() {
        let h = motzkin_poset(3).unwrap();
        let parts = connected_components(&h).unwrap();
        let dot = h.to_dot(Some(&parts));
        assert_eq!(dot.matches("subgraph cluster_").count(), 3);
        assert_eq!(dot.matches(" -> ").count(), 1);
        assert!(dot.contains("n0 [label=\"NED\"]"));
        let json = h.to_json(3, Some(&parts));
        assert_eq!(json["elements"].as_array().unwrap().len(), 4);
        assert_eq!(json["covers"], serde_json::json!([[0, 1]]));
        assert_eq!(json["components"].as_array().unwrap().len(), 3);
    }
}
