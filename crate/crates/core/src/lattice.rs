//! The Picard lattice of a smooth cubic surface.
//!
//! Classes are written in the basis `(L, E1, ..., E6)` of the blow-up of the
//! plane in six points, with intersection form `diag(1, -1, ..., -1)`. The
//! 27 lines are the classes `E_i`, `L_ij = L - E_i - E_j` and
//! `Q_j = 2L + E_j - (E1 + ... + E6)`.
//!
//! Contraction never re-bases the lattice: a blow-down is recorded as the set
//! of contracted classes, and the lines of the blown-down surface are the
//! lines of the cubic orthogonal to every contracted class.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Rank of the Picard lattice of a cubic surface.
pub const RANK: usize = 7;

/// Number of lines on a smooth cubic surface.
pub const LINE_COUNT: usize = 27;

/// A divisor class, as coefficients on `(L, E1, ..., E6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub [i64; RANK]);

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass([0; RANK]);

    pub fn new(coeffs: [i64; RANK]) -> Self {
        DivisorClass(coeffs)
    }

    /// The pullback `L` of a line in the plane.
    pub fn hyperplane() -> Self {
        let mut c = [0; RANK];
        c[0] = 1;
        DivisorClass(c)
    }

    /// The exceptional class `E_i`, `i` in `1..=6`.
    pub fn exceptional(i: usize) -> Self {
        assert!((1..=6).contains(&i), "exceptional index out of range: {i}");
        let mut c = [0; RANK];
        c[i] = 1;
        DivisorClass(c)
    }

    pub fn coeffs(&self) -> &[i64; RANK] {
        &self.0
    }

    /// Intersection pairing `d0 d0' - sum di di'`.
    pub fn pairing(&self, other: &DivisorClass) -> i64 {
        let mut acc = self.0[0] * other.0[0];
        for i in 1..RANK {
            acc -= self.0[i] * other.0[i];
        }
        acc
    }

    pub fn self_intersection(&self) -> i64 {
        self.pairing(self)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a += b;
        }
        DivisorClass(c)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        self + (-rhs)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.map(|x| -x))
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass(rhs.0.map(|x| self * x))
    }
}

impl std::iter::Sum for DivisorClass {
    fn sum<I: Iterator<Item = DivisorClass>>(iter: I) -> DivisorClass {
        iter.fold(DivisorClass::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.0;
        write!(
            f,
            "({}; {}, {}, {}, {}, {}, {})",
            c[0], c[1], c[2], c[3], c[4], c[5], c[6]
        )
    }
}

/// Pairing of two classes.
pub fn pairing(a: &DivisorClass, b: &DivisorClass) -> i64 {
    a.pairing(b)
}

/// The canonical class `K = -3L + E1 + ... + E6`.
pub fn canonical() -> DivisorClass {
    DivisorClass([-3, 1, 1, 1, 1, 1, 1])
}

/// Name of one of the 27 lines.
///
/// The derived ordering (all `E`, then all `L`, then all `Q`, each by index)
/// is the ordering used for every deterministic tie-break in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LineLabel {
    E(u8),
    L(u8, u8),
    Q(u8),
}

impl LineLabel {
    /// All 27 labels in index order.
    pub fn all() -> [LineLabel; LINE_COUNT] {
        let mut out = [LineLabel::E(1); LINE_COUNT];
        let mut k = 0;
        for i in 1..=6 {
            out[k] = LineLabel::E(i);
            k += 1;
        }
        for i in 1..=6 {
            for j in (i + 1)..=6 {
                out[k] = LineLabel::L(i, j);
                k += 1;
            }
        }
        for i in 1..=6 {
            out[k] = LineLabel::Q(i);
            k += 1;
        }
        out
    }

    /// Position in `LineLabel::all()`.
    pub fn index(self) -> usize {
        match self {
            LineLabel::E(i) => i as usize - 1,
            LineLabel::L(i, j) => {
                let (i, j) = (i as usize, j as usize);
                // pairs (1,2)..(1,6) come first, then (2,3).. and so on
                let before: usize = (1..i).map(|r| 6 - r).sum();
                6 + before + (j - i - 1)
            }
            LineLabel::Q(i) => 21 + i as usize - 1,
        }
    }

    pub fn from_index(idx: usize) -> LineLabel {
        LineLabel::all()[idx]
    }

    /// Build `L(i, j)` with the indices in either order.
    pub fn l(i: u8, j: u8) -> LineLabel {
        assert!(i != j && (1..=6).contains(&i) && (1..=6).contains(&j));
        LineLabel::L(i.min(j), i.max(j))
    }

    pub fn class(self) -> DivisorClass {
        match self {
            LineLabel::E(i) => DivisorClass::exceptional(i as usize),
            LineLabel::L(i, j) => {
                DivisorClass::hyperplane()
                    - DivisorClass::exceptional(i as usize)
                    - DivisorClass::exceptional(j as usize)
            }
            LineLabel::Q(j) => {
                let sum_e: DivisorClass = (1..=6).map(DivisorClass::exceptional).sum();
                2 * DivisorClass::hyperplane() + DivisorClass::exceptional(j as usize) - sum_e
            }
        }
    }

    /// Inverse of `class` on the 27 line classes.
    pub fn from_class(d: &DivisorClass) -> Option<LineLabel> {
        line_classes()
            .iter()
            .position(|c| c == d)
            .map(LineLabel::from_index)
    }
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::E(i) => write!(f, "E{i}"),
            LineLabel::L(i, j) => write!(f, "L{i}{j}"),
            LineLabel::Q(i) => write!(f, "Q{i}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("not a line label: {0:?}")]
pub struct ParseLabelError(pub String);

impl FromStr for LineLabel {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseLabelError(s.to_string());
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(err)?;
        let digits: Vec<u8> = chars
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(err))
            .collect::<Result<_, _>>()?;
        if digits.iter().any(|d| !(1..=6).contains(d)) {
            return Err(err());
        }
        match (head, digits.as_slice()) {
            ('E', [i]) => Ok(LineLabel::E(*i)),
            ('Q', [i]) => Ok(LineLabel::Q(*i)),
            ('L', [i, j]) if i != j => Ok(LineLabel::l(*i, *j)),
            _ => Err(err()),
        }
    }
}

impl Serialize for LineLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LineLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The 27 line classes, indexed like `LineLabel::all()`.
pub fn line_classes() -> &'static [DivisorClass; LINE_COUNT] {
    use std::sync::OnceLock;
    static CLASSES: OnceLock<[DivisorClass; LINE_COUNT]> = OnceLock::new();
    CLASSES.get_or_init(|| LineLabel::all().map(LineLabel::class))
}

/// All lines with their classes.
pub fn all_lines() -> Vec<(LineLabel, DivisorClass)> {
    LineLabel::all()
        .into_iter()
        .map(|l| (l, l.class()))
        .collect()
}

/// True iff `d` is the class of one of the 27 lines.
pub fn is_line(d: &DivisorClass) -> bool {
    line_classes().contains(d)
}

/// A set of line indices, bit `i` standing for `LineLabel::from_index(i)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineSet(pub u32);

impl LineSet {
    pub const EMPTY: LineSet = LineSet(0);
    pub const ALL: LineSet = LineSet((1 << LINE_COUNT) - 1);

    pub fn contains(self, label: LineLabel) -> bool {
        self.0 & (1 << label.index()) != 0
    }

    pub fn insert(&mut self, label: LineLabel) {
        self.0 |= 1 << label.index();
    }

    pub fn union(self, other: LineSet) -> LineSet {
        LineSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: LineSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn labels(self) -> Vec<LineLabel> {
        (0..LINE_COUNT)
            .filter(|i| self.0 & (1 << i) != 0)
            .map(LineLabel::from_index)
            .collect()
    }
}

impl FromIterator<LineLabel> for LineSet {
    fn from_iter<I: IntoIterator<Item = LineLabel>>(iter: I) -> Self {
        let mut s = LineSet::EMPTY;
        for l in iter {
            s.insert(l);
        }
        s
    }
}

/// Pairing table of the 27 lines, indexed like `LineLabel::all()`.
pub fn intersection_table() -> [[i64; LINE_COUNT]; LINE_COUNT] {
    let classes = line_classes();
    let mut t = [[0; LINE_COUNT]; LINE_COUNT];
    for i in 0..LINE_COUNT {
        for j in 0..LINE_COUNT {
            t[i][j] = classes[i].pairing(&classes[j]);
        }
    }
    t
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContractionError {
    #[error("classes {0} and {1} are not disjoint")]
    NotDisjoint(DivisorClass, DivisorClass),
    #[error("class {0} is not a surviving line")]
    NotALine(DivisorClass),
}

/// A blow-down of the cubic, tracked inside the original lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContractionState {
    contracted: LineSet,
    survivors: LineSet,
}

impl Default for ContractionState {
    fn default() -> Self {
        Self::initial()
    }
}

impl ContractionState {
    /// The cubic itself: nothing contracted, all 27 lines present.
    pub fn initial() -> Self {
        ContractionState {
            contracted: LineSet::EMPTY,
            survivors: LineSet::ALL,
        }
    }

    pub(crate) fn from_contracted(contracted: LineSet) -> Self {
        let classes = line_classes();
        let survivors = (0..LINE_COUNT)
            .filter(|&i| {
                contracted
                    .labels()
                    .iter()
                    .all(|c| classes[c.index()].pairing(&classes[i]) == 0)
                    && !contracted.contains(LineLabel::from_index(i))
            })
            .map(LineLabel::from_index)
            .collect();
        ContractionState {
            contracted,
            survivors,
        }
    }

    /// `K^2` of the current surface.
    pub fn degree(&self) -> i64 {
        3 + self.contracted.len() as i64
    }

    pub fn contracted(&self) -> LineSet {
        self.contracted
    }

    pub fn contracted_classes(&self) -> Vec<DivisorClass> {
        self.contracted
            .labels()
            .into_iter()
            .map(LineLabel::class)
            .collect()
    }

    pub fn survivors(&self) -> LineSet {
        self.survivors
    }

    pub fn survivor_labels(&self) -> Vec<LineLabel> {
        self.survivors.labels()
    }

    /// Pull-back of the canonical class of the blow-down: `K - sum of contracted`.
    pub fn canonical_class(&self) -> DivisorClass {
        canonical() - self.contracted_classes().into_iter().sum()
    }

    /// Contract a set of pairwise disjoint surviving lines.
    pub fn contract(&self, lines: &[DivisorClass]) -> Result<ContractionState, ContractionError> {
        let mut set = LineSet::EMPTY;
        let mut uniq: Vec<DivisorClass> = Vec::new();
        for d in lines {
            let label = LineLabel::from_class(d).ok_or(ContractionError::NotALine(*d))?;
            if !self.survivors.contains(label) {
                return Err(ContractionError::NotALine(*d));
            }
            if !set.contains(label) {
                set.insert(label);
                uniq.push(*d);
            }
        }
        for (i, a) in uniq.iter().enumerate() {
            for b in &uniq[i + 1..] {
                if a.pairing(b) != 0 {
                    return Err(ContractionError::NotDisjoint(*a, *b));
                }
            }
        }
        Ok(Self::from_contracted(self.contracted.union(set)))
    }
}

/// Contract lines starting from the cubic.
pub fn contract(
    state: &ContractionState,
    lines: &[DivisorClass],
) -> Result<ContractionState, ContractionError> {
    state.contract(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use LineLabel::*;

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&E(1).class(), &E(1).class()), -1);
        assert_eq!(pairing(&E(1).class(), &Q(1).class()), 0);
        assert_eq!(pairing(&L(1, 2).class(), &L(3, 4).class()), 1);
    }

    #[test]
    fn canonical_examples() {
        let k = canonical();
        assert_eq!(k.self_intersection(), 3);
        assert_eq!((-k).pairing(&E(1).class()), 1);
        assert_eq!((-k).pairing(&Q(1).class()), 1);
    }

    #[test]
    fn line_list() {
        let lines = all_lines();
        assert_eq!(lines.len(), 27);
        let k = canonical();
        for (_, d) in &lines {
            assert_eq!(d.self_intersection(), -1);
            assert_eq!(d.pairing(&k), -1);
        }
        assert_eq!(L(1, 2).class(), DivisorClass([1, -1, -1, 0, 0, 0, 0]));
        assert_eq!(Q(3).class(), DivisorClass([2, -1, -1, 0, -1, -1, -1]));
    }

    #[test]
    fn label_index_round_trip() {
        for (i, l) in LineLabel::all().iter().enumerate() {
            assert_eq!(l.index(), i);
            assert_eq!(l.to_string().parse::<LineLabel>().unwrap(), *l);
            assert_eq!(LineLabel::from_class(&l.class()), Some(*l));
        }
        assert!("L11".parse::<LineLabel>().is_err());
        assert!("E7".parse::<LineLabel>().is_err());
        assert_eq!("L21".parse::<LineLabel>().unwrap(), L(1, 2));
    }

    #[test]
    fn is_line_examples() {
        assert!(is_line(&E(1).class()));
        assert!(!is_line(&canonical()));
        let d = DivisorClass::hyperplane() - E(1).class();
        assert_eq!(d.self_intersection(), 0);
        assert!(!is_line(&d));
    }

    #[test]
    fn q_sum_identity() {
        let sum_q: DivisorClass = (1..=6).map(|i| Q(i).class()).sum();
        let sum_e: DivisorClass = (1..=6).map(|i| E(i).class()).sum();
        assert_eq!(sum_q, 12 * DivisorClass::hyperplane() - 5 * sum_e);
    }

    #[test]
    fn contraction_examples() {
        let s0 = ContractionState::initial();
        assert_eq!(s0.degree(), 3);

        let s1 = s0.contract(&[E(1).class()]).unwrap();
        assert_eq!(s1.degree(), 4);
        assert_eq!(s1.survivors().len(), 16);

        let all_e: Vec<_> = (1..=6).map(|i| E(i).class()).collect();
        let s6 = s0.contract(&all_e).unwrap();
        assert_eq!(s6.degree(), 9);
        assert_eq!(s6.survivors().len(), 0);

        assert_eq!(
            s0.contract(&[E(1).class(), L(1, 2).class()]),
            Err(ContractionError::NotDisjoint(E(1).class(), L(1, 2).class()))
        );
    }

    #[test]
    fn contraction_rejects_non_lines() {
        let s0 = ContractionState::initial();
        assert_eq!(
            s0.contract(&[canonical()]),
            Err(ContractionError::NotALine(canonical()))
        );
        let s1 = s0.contract(&[E(1).class()]).unwrap();
        // already contracted
        assert_eq!(
            s1.contract(&[E(1).class()]),
            Err(ContractionError::NotALine(E(1).class()))
        );
        // meets E1, so it is not a line of the blow-down
        assert_eq!(
            s1.contract(&[L(1, 2).class()]),
            Err(ContractionError::NotALine(L(1, 2).class()))
        );
    }

    #[test]
    fn canonical_class_after_contraction() {
        let s = ContractionState::initial()
            .contract(&[E(1).class(), E(2).class()])
            .unwrap();
        let ky = s.canonical_class();
        // K_Y^2 = 3 + k
        assert_eq!(ky.self_intersection(), 5);
        for l in s.survivor_labels() {
            assert_eq!(l.class().pairing(&ky), -1);
        }
    }
}
