use std::fmt;

use serde::{Deserialize, Serialize};

use super::WeylError;
use crate::lattice::{canonical, line_classes, DivisorClass, LineLabel, LINE_COUNT, RANK};

/// Images of the 27 lines: entry `i` is the index of the image of line `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinePerm(pub [u8; LINE_COUNT]);

impl LinePerm {
    pub fn identity() -> Self {
        let mut p = [0u8; LINE_COUNT];
        for (i, x) in p.iter_mut().enumerate() {
            *x = i as u8;
        }
        LinePerm(p)
    }

    /// `self ∘ other`: apply `other` first.
    #[inline]
    pub fn compose(&self, other: &LinePerm) -> LinePerm {
        let mut p = [0u8; LINE_COUNT];
        for i in 0..LINE_COUNT {
            p[i] = self.0[other.0[i] as usize];
        }
        LinePerm(p)
    }

    pub fn inverse(&self) -> LinePerm {
        let mut p = [0u8; LINE_COUNT];
        for i in 0..LINE_COUNT {
            p[self.0[i] as usize] = i as u8;
        }
        LinePerm(p)
    }

    pub fn image(&self, label: LineLabel) -> LineLabel {
        LineLabel::from_index(self.0[label.index()] as usize)
    }

    pub fn is_identity(&self) -> bool {
        *self == LinePerm::identity()
    }

    pub fn is_permutation(values: &[u8; LINE_COUNT]) -> bool {
        let mut seen = [false; LINE_COUNT];
        for &v in values {
            if v as usize >= LINE_COUNT || seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    /// Disjoint cycles of length > 1, each starting at its smallest label.
    pub fn cycles(&self) -> Vec<Vec<LineLabel>> {
        let mut seen = [false; LINE_COUNT];
        let mut out = Vec::new();
        for start in 0..LINE_COUNT {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(LineLabel::from_index(i));
                i = self.0[i] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

impl fmt::Debug for LinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, l) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub type Matrix = [[i64; RANK]; RANK];

/// A lattice automorphism fixing `K`, together with the permutation it
/// induces on the lines. Equality, hashing and ordering go through the
/// permutation, which determines the matrix.
#[derive(Clone, Copy)]
pub struct Isometry {
    matrix: Matrix,
    perm: LinePerm,
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for Isometry {}

impl std::hash::Hash for Isometry {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state)
    }
}

impl PartialOrd for Isometry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Isometry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.perm.cmp(&other.perm)
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry{}", self.perm)
    }
}

fn apply_matrix(m: &Matrix, v: &DivisorClass) -> DivisorClass {
    let mut out = [0i64; RANK];
    for (r, row) in m.iter().enumerate() {
        out[r] = row.iter().zip(v.0.iter()).map(|(a, b)| a * b).sum();
    }
    DivisorClass(out)
}

fn basis(i: usize) -> DivisorClass {
    let mut c = [0; RANK];
    c[i] = 1;
    DivisorClass(c)
}

/// Matrix whose columns are the images of `L, E1, ..., E6` as recorded by a
/// line permutation; `L = L12 + E1 + E2`.
fn matrix_from_perm(perm: &LinePerm) -> Matrix {
    let classes = line_classes();
    let img = |l: LineLabel| classes[perm.0[l.index()] as usize];
    let mut cols = [DivisorClass::ZERO; RANK];
    cols[0] = img(LineLabel::L(1, 2)) + img(LineLabel::E(1)) + img(LineLabel::E(2));
    for i in 1..=6 {
        cols[i] = img(LineLabel::E(i as u8));
    }
    columns_to_matrix(&cols)
}

fn columns_to_matrix(cols: &[DivisorClass; RANK]) -> Matrix {
    let mut m = [[0; RANK]; RANK];
    for (c, col) in cols.iter().enumerate() {
        for r in 0..RANK {
            m[r][c] = col.0[r];
        }
    }
    m
}

impl Isometry {
    pub fn identity() -> Self {
        let perm = LinePerm::identity();
        Isometry {
            matrix: matrix_from_perm(&perm),
            perm,
        }
    }

    /// Build from a matrix, checking that it preserves the pairing and `K`.
    pub fn from_matrix(matrix: Matrix) -> Result<Self, WeylError> {
        let col = |i: usize| apply_matrix(&matrix, &basis(i));
        for i in 0..RANK {
            for j in i..RANK {
                let expected = basis(i).pairing(&basis(j));
                let found = col(i).pairing(&col(j));
                if expected != found {
                    return Err(WeylError::NotIsometry {
                        left: i,
                        right: j,
                        expected,
                        found,
                    });
                }
            }
        }
        if apply_matrix(&matrix, &canonical()) != canonical() {
            return Err(WeylError::CanonicalNotFixed);
        }
        let classes = line_classes();
        let mut p = [0u8; LINE_COUNT];
        for (i, c) in classes.iter().enumerate() {
            let image = apply_matrix(&matrix, c);
            // a K-fixing isometry sends lines to classes with D^2 = D.K = -1
            let j = classes
                .iter()
                .position(|d| *d == image)
                .ok_or(WeylError::CanonicalNotFixed)?;
            p[i] = j as u8;
        }
        Ok(Isometry {
            matrix,
            perm: LinePerm(p),
        })
    }

    /// Linear extension of prescribed images of `L` and `E1..E6`.
    pub fn from_basis_images(
        image_l: DivisorClass,
        image_e: [DivisorClass; 6],
    ) -> Result<Self, WeylError> {
        let mut cols = [DivisorClass::ZERO; RANK];
        cols[0] = image_l;
        cols[1..].copy_from_slice(&image_e);
        Self::from_matrix(columns_to_matrix(&cols))
    }

    /// Build from a permutation of the lines, checking that it is induced by
    /// a lattice isometry.
    pub fn from_perm(perm: LinePerm) -> Result<Self, WeylError> {
        if !LinePerm::is_permutation(&perm.0) {
            return Err(WeylError::NotAPermutation);
        }
        let iso = Self::from_matrix(matrix_from_perm(&perm))?;
        if iso.perm != perm {
            return Err(WeylError::PermNotInduced);
        }
        Ok(iso)
    }

    /// Reflection `v -> v + (v.root) root` in a root of self-pairing -2.
    pub fn reflection(root: DivisorClass) -> Result<Self, WeylError> {
        if root.self_intersection() != -2 {
            return Err(WeylError::NotARoot(root));
        }
        let mut cols = [DivisorClass::ZERO; RANK];
        for (i, c) in cols.iter_mut().enumerate() {
            let v = basis(i);
            *c = v + v.pairing(&root) * root;
        }
        Self::from_matrix(columns_to_matrix(&cols))
    }

    pub(crate) fn from_perm_trusted(perm: LinePerm) -> Self {
        Isometry {
            matrix: matrix_from_perm(&perm),
            perm,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn perm(&self) -> &LinePerm {
        &self.perm
    }

    pub fn apply(&self, v: &DivisorClass) -> DivisorClass {
        apply_matrix(&self.matrix, v)
    }

    pub fn image(&self, label: LineLabel) -> LineLabel {
        self.perm.image(label)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry::from_perm_trusted(self.perm.compose(&other.perm))
    }

    pub fn inverse(&self) -> Isometry {
        Isometry::from_perm_trusted(self.perm.inverse())
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Isometry) -> Isometry {
        Isometry::from_perm_trusted(self.perm.compose(&g.perm).compose(&self.perm.inverse()))
    }

    pub fn pow(&self, n: u32) -> Isometry {
        let mut acc = LinePerm::identity();
        for _ in 0..n {
            acc = acc.compose(&self.perm);
        }
        Isometry::from_perm_trusted(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity()
    }

    pub fn order(&self) -> usize {
        let mut acc = self.perm;
        let mut n = 1;
        while !acc.is_identity() {
            acc = acc.compose(&self.perm);
            n += 1;
        }
        n
    }

    pub fn commutes_with(&self, other: &Isometry) -> bool {
        self.perm.compose(&other.perm) == other.perm.compose(&self.perm)
    }

    pub fn fixed_lines(&self) -> Vec<LineLabel> {
        LineLabel::all()
            .into_iter()
            .filter(|l| self.image(*l) == *l)
            .collect()
    }

    /// Re-check the isometry invariants from the stored matrix.
    pub fn check_invariants(&self) -> Result<(), WeylError> {
        let rebuilt = Self::from_matrix(self.matrix)?;
        if rebuilt.perm != self.perm {
            return Err(WeylError::PermNotInduced);
        }
        Ok(())
    }
}

/// Serialized form of an isometry: cycle notation plus matrix rows.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IsometryRecord {
    pub cycles: String,
    pub matrix: Matrix,
}

impl From<&Isometry> for IsometryRecord {
    fn from(g: &Isometry) -> Self {
        IsometryRecord {
            cycles: g.perm.to_string(),
            matrix: g.matrix,
        }
    }
}
