//! Exhaustive subgroup enumeration for small groups of isometries.

use std::collections::{HashMap, HashSet};

use super::{Isometry, LinePerm, Subgroup, WeylError};

/// Largest ambient order accepted by the enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 1000;

#[derive(Clone, PartialEq, Eq, Hash)]
struct ElemSet(Vec<u64>);

impl ElemSet {
    fn empty(n: usize) -> Self {
        ElemSet(vec![0; n.div_ceil(64)])
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.0[i / 64] |= 1 << (i % 64);
        !had
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.0.len() * 64).filter(|&i| self.contains(i))
    }
}

/// Multiplication table of a small group.
struct Table {
    elems: Vec<Isometry>,
    mul: Vec<u16>,
}

impl Table {
    fn new(group: &Subgroup) -> Result<Self, WeylError> {
        let n = group.order();
        if n > MAX_ENUMERATION_ORDER {
            return Err(WeylError::BudgetExceeded {
                limit: MAX_ENUMERATION_ORDER,
            });
        }
        let elems = group.elements().to_vec();
        let index: HashMap<LinePerm, u16> = elems
            .iter()
            .enumerate()
            .map(|(i, g)| (*g.perm(), i as u16))
            .collect();
        let mut mul = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = elems[i].perm().compose(elems[j].perm());
                mul[i * n + j] = index[&p];
            }
        }
        Ok(Table { elems, mul })
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn closure(&self, gens: &[usize]) -> ElemSet {
        let n = self.n();
        let mut set = ElemSet::empty(n);
        // the identity sorts first
        set.insert(0);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul[g * n + x] as usize;
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    fn to_subgroup(&self, set: &ElemSet, gens: &[usize]) -> Subgroup {
        let elements = set.iter().map(|i| self.elems[i]).collect();
        let generators = gens.iter().map(|&i| self.elems[i]).collect();
        Subgroup::from_parts(elements, generators)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn all_subgroup_sets(table: &Table) -> Vec<(ElemSet, Vec<usize>)> {
    let n = table.n();
    let trivial = table.closure(&[]);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    seen.insert(trivial.clone());
    let mut found = vec![(trivial, Vec::new())];
    let mut i = 0;
    while i < found.len() {
        let (set, gens) = found[i].clone();
        let mut tried = set.clone();
        for g in 0..n {
            if tried.contains(g) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(g);
            let next = table.closure(&next_gens);
            // s * g^m with s in the subgroup and m prime to ord(g) give the
            // same extension
            let mut powers = Vec::new();
            let mut x = g;
            loop {
                powers.push(x);
                x = table.mul[g * n + x] as usize;
                if x == g {
                    break;
                }
            }
            let order = powers.len();
            for (m, &gm) in powers.iter().enumerate() {
                if gcd(m + 1, order) != 1 {
                    continue;
                }
                for s in set.iter() {
                    tried.insert(table.mul[s * n + gm] as usize);
                }
            }
            if seen.insert(next.clone()) {
                found.push((next, next_gens));
            }
        }
        i += 1;
    }
    found
}

/// Every subgroup of `group`, ordered by order and then element key.
pub fn all_subgroups(group: &Subgroup) -> Result<Vec<Subgroup>, WeylError> {
    let table = Table::new(group)?;
    let mut out: Vec<Subgroup> = all_subgroup_sets(&table)
        .iter()
        .map(|(set, gens)| table.to_subgroup(set, gens))
        .collect();
    out.sort_by_key(|s| (s.order(), s.key()));
    Ok(out)
}

/// One representative per conjugacy class of subgroups of `ambient`, where
/// conjugation runs over `conjugating`. Representatives are the subgroups
/// actually found in `ambient`, ordered by order and conjugacy key.
pub fn subgroups_up_to_conjugacy(
    ambient: &Subgroup,
    conjugating: &Subgroup,
) -> Result<Vec<Subgroup>, WeylError> {
    let subgroups = all_subgroups(ambient)?;
    let mut reps: Vec<(Vec<LinePerm>, Subgroup)> = Vec::new();
    let mut keys: HashSet<Vec<LinePerm>> = HashSet::new();
    for s in subgroups {
        let key = s.conjugacy_key(conjugating);
        if keys.insert(key.clone()) {
            reps.push((key, s));
        }
    }
    reps.sort_by(|a, b| (a.1.order(), &a.0).cmp(&(b.1.order(), &b.0)));
    Ok(reps.into_iter().map(|(_, s)| s).collect())
}

/// A nontrivial normal subgroup of `group` that is conjugate in `ambient` to
/// one of `candidates`, with the index of that candidate. Smaller normal
/// subgroups are tried first.
pub fn normal_subgroup_witness(
    group: &Subgroup,
    ambient: &Subgroup,
    candidates: &[Subgroup],
) -> Result<Option<(Subgroup, usize)>, WeylError> {
    let table = Table::new(group)?;
    let mut normals: Vec<Subgroup> = all_subgroup_sets(&table)
        .iter()
        .map(|(set, gens)| table.to_subgroup(set, gens))
        .filter(|s| !s.is_trivial() && s.is_normal_in(group))
        .collect();
    normals.sort_by_key(|s| (s.order(), s.key()));
    for n in normals {
        for (idx, c) in candidates.iter().enumerate() {
            if c.order() != n.order() {
                continue;
            }
            let target = c.key();
            let hit = ambient.elements().iter().any(|w| {
                let mut k: Vec<LinePerm> = n
                    .elements()
                    .iter()
                    .map(|g| *w.conjugate(g).perm())
                    .collect();
                k.sort();
                k == target
            });
            if hit {
                return Ok(Some((n, idx)));
            }
        }
    }
    Ok(None)
}
