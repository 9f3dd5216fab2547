//! The embedded symmetric group and the named elements `a, b, c, r, s`.

use super::{Isometry, LinePerm, WeylError};
use crate::lattice::{DivisorClass, LineLabel, LINE_COUNT};

/// Image of the permutation `sigma` of `{1..6}` (one-line notation:
/// `sigma[i-1]` is the image of `i`) acting on indices of `E_i, L_ij, Q_i`.
pub fn s6_embed(sigma: &[u8]) -> Result<Isometry, WeylError> {
    if sigma.len() != 6 {
        return Err(WeylError::InvalidPermutation(format!("{sigma:?}")));
    }
    let mut seen = [false; 7];
    for &x in sigma {
        if !(1..=6).contains(&x) || seen[x as usize] {
            return Err(WeylError::InvalidPermutation(format!("{sigma:?}")));
        }
        seen[x as usize] = true;
    }
    let s = |i: u8| sigma[i as usize - 1];
    let mut p = [0u8; LINE_COUNT];
    for l in LineLabel::all() {
        let image = match l {
            LineLabel::E(i) => LineLabel::E(s(i)),
            LineLabel::L(i, j) => LineLabel::l(s(i), s(j)),
            LineLabel::Q(i) => LineLabel::Q(s(i)),
        };
        p[l.index()] = image.index() as u8;
    }
    Isometry::from_perm(LinePerm(p))
}

/// Parse cycle notation on `{1..6}` such as `(123)(456)` into one-line form.
pub fn s6_from_cycles(cycles: &str) -> Result<[u8; 6], WeylError> {
    let bad = || WeylError::InvalidPermutation(cycles.to_string());
    let mut sigma = [1, 2, 3, 4, 5, 6];
    let mut used = [false; 7];
    let mut rest = cycles.trim();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(bad)?;
        if !rest.starts_with('(') {
            return Err(bad());
        }
        let digits: Vec<u8> = rest[1..body_end]
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        for &d in &digits {
            if !(1..=6).contains(&d) || used[d as usize] {
                return Err(bad());
            }
            used[d as usize] = true;
        }
        for k in 0..digits.len() {
            sigma[digits[k] as usize - 1] = digits[(k + 1) % digits.len()];
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(sigma)
}

fn sum_e(range: std::ops::RangeInclusive<usize>) -> DivisorClass {
    range.map(DivisorClass::exceptional).sum()
}

/// The involution `s`: `E_i -> Q_i`, `L -> 5L - 2(E1 + ... + E6)`.
fn element_s() -> Result<Isometry, WeylError> {
    let l = DivisorClass::hyperplane();
    let image_l = 5 * l - 2 * sum_e(1..=6);
    let image_e = [1, 2, 3, 4, 5, 6].map(|i| LineLabel::Q(i).class());
    Isometry::from_basis_images(image_l, image_e)
}

/// The order-3 element `r`: `E_i -> Q_i` for `i <= 3`,
/// `E4 -> L56, E5 -> L46, E6 -> L45`,
/// `L -> 4L - (E1 + E2 + E3) - 2(E4 + E5 + E6)`.
fn element_r() -> Result<Isometry, WeylError> {
    let l = DivisorClass::hyperplane();
    let image_l = 4 * l - sum_e(1..=3) - 2 * sum_e(4..=6);
    let image_e = [
        LineLabel::Q(1).class(),
        LineLabel::Q(2).class(),
        LineLabel::Q(3).class(),
        LineLabel::L(5, 6).class(),
        LineLabel::L(4, 6).class(),
        LineLabel::L(4, 5).class(),
    ];
    Isometry::from_basis_images(image_l, image_e)
}

/// One of `a = (123)`, `b = (456)`, `c = (14)(25)(36)`, `r`, `s`, `cs`.
pub fn named_element(name: &str) -> Result<Isometry, WeylError> {
    let from_cycles = |c: &str| s6_embed(&s6_from_cycles(c)?);
    match name {
        "a" => from_cycles("(123)"),
        "b" => from_cycles("(456)"),
        "c" => from_cycles("(14)(25)(36)"),
        "s" => element_s(),
        "r" => element_r(),
        "cs" => Ok(named_element("c")?.compose(&named_element("s")?)),
        other => Err(WeylError::UnknownName(other.to_string())),
    }
}

/// Roots `E_i - E_{i+1}` for `i = 1..5` and `L - E1 - E2 - E3`.
pub fn simple_roots() -> [DivisorClass; 6] {
    let e = DivisorClass::exceptional;
    [
        e(1) - e(2),
        e(2) - e(3),
        e(3) - e(4),
        e(4) - e(5),
        e(5) - e(6),
        DivisorClass::hyperplane() - e(1) - e(2) - e(3),
    ]
}

pub fn simple_reflections() -> Vec<Isometry> {
    simple_roots()
        .into_iter()
        .map(|r| Isometry::reflection(r).expect("simple roots have self-pairing -2"))
        .collect()
}
