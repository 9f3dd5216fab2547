use std::collections::{HashMap, HashSet, VecDeque};

use super::{Isometry, LinePerm, WeylError, WEYL_E6_ORDER};
use crate::lattice::LineLabel;

/// A finite group of lattice isometries.
///
/// Elements are kept sorted by their line permutation, so two handles for
/// the same group compare equal and iterate in the same order regardless of
/// how they were generated.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<Isometry>,
    generators: Vec<Isometry>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup {
            elements: vec![Isometry::identity()],
            generators: Vec::new(),
        }
    }

    /// Closure of `gens` under composition.
    pub fn generate(gens: &[Isometry]) -> Result<Self, WeylError> {
        let elements = closure(gens, WEYL_E6_ORDER)?;
        Ok(Subgroup {
            elements,
            generators: gens.to_vec(),
        })
    }

    /// Wrap a set already known to be a group and pick a generating set for it.
    pub(crate) fn from_elements(mut elements: Vec<Isometry>) -> Self {
        elements.sort();
        elements.dedup();
        let mut generators = Vec::new();
        let mut reached: HashSet<LinePerm> = HashSet::new();
        reached.insert(LinePerm::identity());
        for e in &elements {
            if reached.contains(e.perm()) {
                continue;
            }
            generators.push(*e);
            reached = closure(&generators, usize::MAX)
                .expect("unbounded closure")
                .into_iter()
                .map(|g| *g.perm())
                .collect();
        }
        debug_assert_eq!(reached.len(), elements.len());
        Subgroup {
            elements,
            generators,
        }
    }

    pub(crate) fn from_parts(elements: Vec<Isometry>, generators: Vec<Isometry>) -> Self {
        let mut elements = elements;
        elements.sort();
        Subgroup {
            elements,
            generators,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Isometry] {
        &self.elements
    }

    pub fn generators(&self) -> &[Isometry] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &Isometry) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// Elements that must be checked to test a property holding for the whole
    /// group: the generators if any are recorded, otherwise every element.
    pub(crate) fn checking_set(&self) -> &[Isometry] {
        if self.generators.is_empty() {
            &self.elements
        } else {
            &self.generators
        }
    }

    /// `w H w⁻¹`.
    pub fn conjugate_by(&self, w: &Isometry) -> Subgroup {
        let elements = self.elements.iter().map(|g| w.conjugate(g)).collect();
        let generators = self.generators.iter().map(|g| w.conjugate(g)).collect();
        Subgroup::from_parts(elements, generators)
    }

    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        ambient
            .checking_set()
            .iter()
            .all(|w| self.elements.iter().all(|g| self.contains(&w.conjugate(g))))
    }

    /// True iff every element of `self` commutes with every element of `other`.
    pub fn commutes_with(&self, other: &Subgroup) -> bool {
        self.checking_set()
            .iter()
            .all(|g| other.checking_set().iter().all(|h| g.commutes_with(h)))
    }

    /// The group generated by `self` and `other`.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup, WeylError> {
        let mut gens = self.checking_set().to_vec();
        gens.extend_from_slice(other.checking_set());
        Subgroup::generate(&gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let common = self
            .elements
            .iter()
            .filter(|g| other.contains(g))
            .copied()
            .collect();
        Subgroup::from_elements(common)
    }

    /// Elements sorted by permutation; a canonical key for the element set.
    pub fn key(&self) -> Vec<LinePerm> {
        self.elements.iter().map(|g| *g.perm()).collect()
    }

    /// Smallest key among all conjugates `w H w⁻¹`, `w` in `conjugating`.
    pub fn conjugacy_key(&self, conjugating: &Subgroup) -> Vec<LinePerm> {
        conjugating
            .elements
            .iter()
            .map(|w| {
                let mut k: Vec<LinePerm> = self
                    .elements
                    .iter()
                    .map(|g| *w.conjugate(g).perm())
                    .collect();
                k.sort();
                k
            })
            .min()
            .expect("conjugating group is never empty")
    }

    /// Histogram of element orders, sorted by order.
    pub fn order_statistics(&self) -> Vec<(usize, usize)> {
        let mut m: HashMap<usize, usize> = HashMap::new();
        for g in &self.elements {
            *m.entry(g.order()).or_default() += 1;
        }
        let mut v: Vec<_> = m.into_iter().collect();
        v.sort();
        v
    }

    pub fn is_abelian(&self) -> bool {
        self.commutes_with(self)
    }
}

/// Breadth-first closure from the identity; returns sorted elements.
fn closure(gens: &[Isometry], budget: usize) -> Result<Vec<Isometry>, WeylError> {
    let id = LinePerm::identity();
    let gperms: Vec<LinePerm> = gens.iter().map(|g| *g.perm()).collect();
    let mut seen: HashSet<LinePerm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id);
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in &gperms {
            let y = g.compose(&x);
            if seen.insert(y) {
                if seen.len() > budget {
                    return Err(WeylError::BudgetExceeded { limit: budget });
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Isometry> = seen.into_iter().map(Isometry::from_perm_trusted).collect();
    out.sort();
    Ok(out)
}

/// Closure of a list of generators.
pub fn generate(gens: &[Isometry]) -> Result<Subgroup, WeylError> {
    Subgroup::generate(gens)
}

/// Elements of `ambient` commuting with all of `target`.
pub fn centralizer(ambient: &Subgroup, target: &Subgroup) -> Subgroup {
    let check = target.checking_set();
    let elements: Vec<Isometry> = ambient
        .elements
        .iter()
        .filter(|g| check.iter().all(|h| g.commutes_with(h)))
        .copied()
        .collect();
    Subgroup::from_elements(elements)
}

/// Elements `w` of `ambient` with `w H w⁻¹ = H`.
pub fn normalizer(ambient: &Subgroup, target: &Subgroup) -> Subgroup {
    let check = target.checking_set();
    let elements: Vec<Isometry> = ambient
        .elements
        .iter()
        .filter(|w| check.iter().all(|h| target.contains(&w.conjugate(h))))
        .copied()
        .collect();
    Subgroup::from_elements(elements)
}

/// Elements of `ambient` fixing each of `labels`.
pub fn pointwise_line_fixator(ambient: &Subgroup, labels: &[LineLabel]) -> Subgroup {
    let elements: Vec<Isometry> = ambient
        .elements
        .iter()
        .filter(|g| labels.iter().all(|l| g.image(*l) == *l))
        .copied()
        .collect();
    Subgroup::from_elements(elements)
}

/// Some `w` in `ambient` with `w g w⁻¹ = h`; the smallest such in the
/// element ordering.
pub fn are_conjugate(ambient: &Subgroup, g: &Isometry, h: &Isometry) -> Option<Isometry> {
    if g.order() != h.order() {
        return None;
    }
    ambient
        .elements
        .iter()
        .find(|w| w.conjugate(g) == *h)
        .copied()
}

/// Conjugacy classes of `group`, each sorted; classes ordered by element
/// order, then size, then smallest element.
pub fn conjugacy_classes(group: &Subgroup) -> Vec<Vec<Isometry>> {
    let conj = group.checking_set();
    let mut assigned: HashSet<LinePerm> = HashSet::new();
    let mut classes = Vec::new();
    for g in &group.elements {
        if assigned.contains(g.perm()) {
            continue;
        }
        // orbit of g under conjugation by the generators
        let mut class = vec![*g];
        assigned.insert(*g.perm());
        let mut i = 0;
        while i < class.len() {
            let x = class[i];
            for w in conj {
                let y = w.conjugate(&x);
                if assigned.insert(*y.perm()) {
                    class.push(y);
                }
            }
            i += 1;
        }
        class.sort();
        classes.push(class);
    }
    classes.sort_by(|a, b| (a[0].order(), a.len(), a[0]).cmp(&(b[0].order(), b.len(), b[0])));
    classes
}
