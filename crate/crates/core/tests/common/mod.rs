//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms under test; lines, groups and numbers are rebuilt from
//! first principles on plain arrays.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LINES: usize = 27;

pub type Perm = [u8; LINES];
pub type Vector = [i64; 7];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- lines

/// Line names in the order E1..E6, L12..L56, Q1..Q6.
pub fn line_names() -> &'static [String] {
    static NAMES: OnceLock<Vec<String>> = OnceLock::new();
    NAMES.get_or_init(|| {
        let mut v: Vec<String> = (1..=6).map(|i| format!("E{i}")).collect();
        for i in 1..=6 {
            for j in i + 1..=6 {
                v.push(format!("L{i}{j}"));
            }
        }
        v.extend((1..=6).map(|i| format!("Q{i}")));
        v
    })
}

pub fn line_index(name: &str) -> usize {
    line_names()
        .iter()
        .position(|n| n == name)
        .unwrap_or_else(|| panic!("no line {name}"))
}

/// Classes in the basis `h, e1..e6`: `E_i = e_i`, `L_ij = h - e_i - e_j`,
/// `Q_i = 2h - Σe + e_i`.
pub fn line_vectors() -> &'static [Vector] {
    static V: OnceLock<Vec<Vector>> = OnceLock::new();
    V.get_or_init(|| {
        let mut v = Vec::with_capacity(LINES);
        for i in 1..=6 {
            let mut x = [0; 7];
            x[i] = 1;
            v.push(x);
        }
        for i in 1..=6 {
            for j in i + 1..=6 {
                let mut x = [0; 7];
                x[0] = 1;
                x[i] = -1;
                x[j] = -1;
                v.push(x);
            }
        }
        for i in 1..=6 {
            let mut x = [-1; 7];
            x[0] = 2;
            x[i] = 0;
            v.push(x);
        }
        v
    })
}

pub fn form(a: &Vector, b: &Vector) -> i64 {
    a[0] * b[0] - (1..7).map(|i| a[i] * b[i]).sum::<i64>()
}

pub fn canonical_vector() -> Vector {
    [-3, 1, 1, 1, 1, 1, 1]
}

pub fn pairing_matrix() -> &'static [[i64; LINES]; LINES] {
    static M: OnceLock<[[i64; LINES]; LINES]> = OnceLock::new();
    M.get_or_init(|| {
        let v = line_vectors();
        let mut m = [[0; LINES]; LINES];
        for i in 0..LINES {
            for j in 0..LINES {
                m[i][j] = form(&v[i], &v[j]);
            }
        }
        m
    })
}

#[derive(Clone, Copy)]
enum Kind {
    E(u8),
    L(u8, u8),
    Q(u8),
}

fn kind(name: &str) -> Kind {
    let d: Vec<u8> = name[1..].bytes().map(|b| b - b'0').collect();
    match name.as_bytes()[0] {
        b'E' => Kind::E(d[0]),
        b'Q' => Kind::Q(d[0]),
        _ => Kind::L(d[0], d[1]),
    }
}

/// Intersection numbers stated as incidence rules on the indices.
pub fn rule_pairing(a: &str, b: &str) -> i64 {
    use Kind::{E, L, Q};
    match (kind(a), kind(b)) {
        (E(i), E(j)) | (Q(i), Q(j)) => {
            if i == j {
                -1
            } else {
                0
            }
        }
        (E(i), Q(j)) | (Q(j), E(i)) => i64::from(i != j),
        (E(i), L(j, k)) | (L(j, k), E(i)) | (Q(i), L(j, k)) | (L(j, k), Q(i)) => {
            i64::from(i == j || i == k)
        }
        (L(i, j), L(k, l)) => {
            if (i, j) == (k, l) {
                -1
            } else if i == k || i == l || j == k || j == l {
                0
            } else {
                1
            }
        }
    }
}

// ---------------------------------------------------------------- groups

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    // p after q
    std::array::from_fn(|i| p[q[i] as usize])
}

pub fn inverse(p: &Perm) -> Perm {
    let mut out = [0; LINES];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

pub fn identity() -> Perm {
    std::array::from_fn(|i| i as u8)
}

pub fn conjugate(w: &Perm, g: &Perm) -> Perm {
    compose(&compose(w, g), &inverse(w))
}

pub fn order(p: &Perm) -> usize {
    let id = identity();
    let mut q = *p;
    let mut n = 1;
    while q != id {
        q = compose(p, &q);
        n += 1;
    }
    n
}

fn perm_of_vectors(images: impl Fn(&Vector) -> Vector) -> Perm {
    let v = line_vectors();
    std::array::from_fn(|i| {
        let target = images(&v[i]);
        v.iter()
            .position(|w| *w == target)
            .expect("image of a line is a line") as u8
    })
}

/// Reflection in a root `α` with `α² = -2`: `x ↦ x + (x·α)α`.
pub fn reflection(root: &Vector) -> Perm {
    perm_of_vectors(|x| {
        let k = form(x, root);
        std::array::from_fn(|i| x[i] + k * root[i])
    })
}

pub fn simple_root_vectors() -> [Vector; 6] {
    let mut roots = [[0; 7]; 6];
    for (i, r) in roots.iter_mut().enumerate().take(5) {
        r[i + 1] = 1;
        r[i + 2] = -1;
    }
    roots[5] = [1, -1, -1, -1, 0, 0, 0];
    roots
}

pub fn simple_reflection_perms() -> Vec<Perm> {
    simple_root_vectors().iter().map(reflection).collect()
}

/// Breadth-first closure of `gens` under composition.
pub fn closure(gens: &[Perm]) -> Vec<Perm> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity());
    queue.push_back(identity());
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        out.push(x);
        for g in gens {
            let y = compose(g, &x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    out
}

/// W(E6) as permutations of the 27 lines.
pub fn weyl_perms() -> &'static [Perm] {
    static W: OnceLock<Vec<Perm>> = OnceLock::new();
    W.get_or_init(|| closure(&simple_reflection_perms()))
}

/// Index permutation of the embedded S6, `sigma[i-1]` the image of `i`.
pub fn s6_perm(sigma: [u8; 6]) -> Perm {
    let names = line_names();
    std::array::from_fn(|k| {
        let image = match kind(&names[k]) {
            Kind::E(i) => format!("E{}", sigma[i as usize - 1]),
            Kind::Q(i) => format!("Q{}", sigma[i as usize - 1]),
            Kind::L(i, j) => {
                let (a, b) = (sigma[i as usize - 1], sigma[j as usize - 1]);
                format!("L{}{}", a.min(b), a.max(b))
            }
        };
        line_index(&image) as u8
    })
}

/// Conjugacy classes of the elements of `group` satisfying `keep`, found as
/// orbits under conjugation by `gens`.
pub fn classes_where(
    group: &[Perm],
    gens: &[Perm],
    keep: impl Fn(&Perm) -> bool,
) -> Vec<Vec<Perm>> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut classes = Vec::new();
    for g in group.iter().filter(|g| keep(g)) {
        if seen.contains(g) {
            continue;
        }
        let mut class = vec![*g];
        seen.insert(*g);
        let mut i = 0;
        while i < class.len() {
            let x = class[i];
            for w in gens {
                let y = conjugate(w, &x);
                if seen.insert(y) {
                    class.push(y);
                }
            }
            i += 1;
        }
        classes.push(class);
    }
    classes
}

/// Linear map on `h, e1..e6` induced by a line permutation, as the images of
/// the basis vectors.
pub fn basis_images(p: &Perm) -> [Vector; 7] {
    let v = line_vectors();
    let img = |name: &str| v[p[line_index(name)] as usize];
    // h = L12 + E1 + E2
    let (l12, e1, e2) = (img("L12"), img("E1"), img("E2"));
    let mut out = [[0; 7]; 7];
    out[0] = std::array::from_fn(|k| l12[k] + e1[k] + e2[k]);
    for i in 1..=6 {
        out[i] = img(&format!("E{i}"));
    }
    out
}

pub fn trace(p: &Perm) -> i64 {
    let b = basis_images(p);
    (0..7).map(|k| b[k][k]).sum()
}

/// Rank of the invariant sublattice as the average trace over the group.
pub fn invariant_rank_by_trace(group: &[Perm]) -> usize {
    let total: i64 = group.iter().map(trace).sum();
    assert_eq!(total % group.len() as i64, 0, "average trace is an integer");
    (total / group.len() as i64) as usize
}

pub fn orbits(group: &[Perm]) -> Vec<u32> {
    let mut covered = 0u32;
    let mut out = Vec::new();
    for i in 0..LINES {
        if covered & (1 << i) != 0 {
            continue;
        }
        let orbit = group.iter().fold(0u32, |acc, g| acc | (1 << g[i]));
        covered |= orbit;
        out.push(orbit);
    }
    out
}

fn disjoint_masks() -> [u32; LINES] {
    let m = pairing_matrix();
    std::array::from_fn(|i| {
        (0..LINES)
            .filter(|&j| j != i && m[i][j] == 0)
            .fold(0, |acc, j| acc | (1 << j))
    })
}

fn pairwise_disjoint(set: u32, masks: &[u32; LINES]) -> bool {
    (0..LINES)
        .filter(|i| set & (1 << i) != 0)
        .all(|i| set & !(1 << i) & !masks[i] == 0)
}

/// `3 + ` the largest union of orbits whose lines are pairwise disjoint.
pub fn max_degree_by_bitmask(group: &[Perm]) -> i64 {
    let masks = disjoint_masks();
    let usable: Vec<u32> = orbits(group)
        .into_iter()
        .filter(|&o| pairwise_disjoint(o, &masks))
        .collect();
    fn dfs(usable: &[u32], masks: &[u32; LINES], start: usize, set: u32) -> u32 {
        let mut best = set.count_ones();
        for k in start..usable.len() {
            let next = set | usable[k];
            if set & usable[k] == 0 && pairwise_disjoint(next, masks) {
                best = best.max(dfs(usable, masks, k + 1, next));
            }
        }
        best
    }
    3 + dfs(&usable, &masks, 0, 0) as i64
}

pub fn random_element(rng: &mut ChaCha8Rng, group: &[Perm]) -> Perm {
    group[rng.gen_range(0..group.len())]
}

// ---------------------------------------------------------------- S5

pub type P5 = [u8; 5];

pub fn p5_compose(p: &P5, q: &P5) -> P5 {
    std::array::from_fn(|i| p[q[i] as usize])
}

pub fn p5_inverse(p: &P5) -> P5 {
    let mut out = [0; 5];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u8;
    }
    out
}

pub fn p5_all() -> Vec<P5> {
    let mut out = Vec::new();
    let mut p = [0u8, 1, 2, 3, 4];
    fn rec(k: usize, p: &mut P5, out: &mut Vec<P5>) {
        if k == 5 {
            out.push(*p);
            return;
        }
        for i in k..5 {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Cycle notation on 1..5, e.g. `(12)(34)`.
pub fn p5_cycles(text: &str) -> P5 {
    let mut p = [0u8, 1, 2, 3, 4];
    for cycle in text.split(')').filter(|c| !c.is_empty()) {
        let d: Vec<u8> = cycle
            .trim_start_matches('(')
            .bytes()
            .map(|b| b - b'1')
            .collect();
        for k in 0..d.len() {
            p[d[k] as usize] = d[(k + 1) % d.len()];
        }
    }
    p
}

pub fn p5_closure(gens: &[P5]) -> Vec<P5> {
    let mut set: Vec<P5> = vec![[0, 1, 2, 3, 4]];
    let mut i = 0;
    while i < set.len() {
        for g in gens {
            let y = p5_compose(g, &set[i]);
            if !set.contains(&y) {
                set.push(y);
            }
        }
        i += 1;
    }
    set.sort();
    set
}

/// Every subgroup of S5 as a sorted element list; each is generated by two
/// elements.
pub fn s5_subgroups() -> Vec<Vec<P5>> {
    let all = p5_all();
    let mut found: HashSet<Vec<P5>> = HashSet::new();
    for a in &all {
        for b in &all {
            found.insert(p5_closure(&[*a, *b]));
        }
    }
    let mut v: Vec<Vec<P5>> = found.into_iter().collect();
    v.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    v
}

pub fn p5_conjugate_set(w: &P5, h: &[P5]) -> Vec<P5> {
    let wi = p5_inverse(w);
    let mut v: Vec<P5> = h
        .iter()
        .map(|g| p5_compose(&p5_compose(w, g), &wi))
        .collect();
    v.sort();
    v
}

// ---------------------------------------------------------------- Z[ω]

/// `a + bω` with `ω² = -1 - ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Eis(pub i128, pub i128);

impl Eis {
    pub const ZERO: Eis = Eis(0, 0);
    pub const ONE: Eis = Eis(1, 0);

    pub fn add(self, o: Eis) -> Eis {
        Eis(self.0 + o.0, self.1 + o.1)
    }

    pub fn sub(self, o: Eis) -> Eis {
        Eis(self.0 - o.0, self.1 - o.1)
    }

    pub fn mul(self, o: Eis) -> Eis {
        let (a, b, c, d) = (self.0, self.1, o.0, o.1);
        Eis(a * c - b * d, a * d + b * c - b * d)
    }

    pub fn scale(self, k: i128) -> Eis {
        Eis(self.0 * k, self.1 * k)
    }

    pub fn norm(self) -> i128 {
        self.0 * self.0 - self.0 * self.1 + self.1 * self.1
    }

    pub fn is_zero(self) -> bool {
        self == Eis::ZERO
    }
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    Some(r)
}

/// All `a + bω` of norm `n`, from `b = (a ± √(4n − 3a²))/2`.
pub fn of_norm(n: i128) -> Vec<Eis> {
    let mut out = Vec::new();
    let bound = isqrt(4 * n / 3).unwrap_or(0) + 1;
    for a in -bound..=bound {
        let Some(d) = isqrt(4 * n - 3 * a * a) else {
            continue;
        };
        if d * d != 4 * n - 3 * a * a {
            continue;
        }
        for b in [(a + d), (a - d)] {
            if b % 2 == 0 {
                let z = Eis(a, b / 2);
                if z.norm() == n && !out.contains(&z) {
                    out.push(z);
                }
            }
        }
    }
    out
}

pub fn is_square(z: Eis) -> bool {
    if z.is_zero() {
        return true;
    }
    let Some(m) = isqrt(z.norm()) else {
        return false;
    };
    m * m == z.norm() && of_norm(m).into_iter().any(|s| s.mul(s) == z)
}

fn int_divisors(n: i128) -> Vec<i128> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Elements whose norm divides `N(z)`.
fn norm_divisor_candidates(z: Eis) -> Vec<Eis> {
    int_divisors(z.norm())
        .into_iter()
        .flat_map(of_norm)
        .collect()
}

pub fn discriminant(c: [Eis; 4]) -> Eis {
    let [a, b, cc, d] = c;
    let t1 = b.mul(b).mul(cc).mul(cc);
    let t2 = a.mul(cc).mul(cc).mul(cc).scale(4);
    let t3 = b.mul(b).mul(b).mul(d).scale(4);
    let t4 = a.mul(a).mul(d).mul(d).scale(27);
    let t5 = a.mul(b).mul(cc).mul(d).scale(18);
    t1.sub(t2).sub(t3).sub(t4).add(t5)
}

/// Number of distinct roots in Q(ω) of `c3 x³ + c2 x² + c1 x + c0`, by trying
/// every `u/v` with `N(u) | N(c0)` and `N(v) | N(c3)`.
pub fn count_roots(c: [Eis; 4]) -> usize {
    let [c3, c2, c1, c0] = c;
    if c0.is_zero() {
        let d = c2.mul(c2).sub(c3.mul(c1).scale(4));
        return if is_square(d) { 3 } else { 1 };
    }
    let tops = norm_divisor_candidates(c0);
    let bottoms = norm_divisor_candidates(c3);
    let mut roots: Vec<(Eis, Eis)> = Vec::new();
    for u in &tops {
        for v in &bottoms {
            let (u, v) = (*u, *v);
            let value = c3
                .mul(u.mul(u).mul(u))
                .add(c2.mul(u.mul(u).mul(v)))
                .add(c1.mul(u.mul(v).mul(v)))
                .add(c0.mul(v.mul(v).mul(v)));
            if value.is_zero() && !roots.iter().any(|(p, q)| p.mul(v) == u.mul(*q)) {
                roots.push((u, v));
            }
        }
    }
    roots.len()
}

/// `"trivial"`, `"C2"`, `"C3"` or `"S3"` for a separable cubic.
pub fn galois_class_by_brute_force(c: [Eis; 4]) -> &'static str {
    match count_roots(c) {
        3 => "trivial",
        1 => "C2",
        0 if is_square(discriminant(c)) => "C3",
        0 => "S3",
        n => panic!("separable cubic with {n} roots"),
    }
}

pub fn random_eis(rng: &mut ChaCha8Rng, bound: i128) -> Eis {
    Eis(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

pub fn random_nonzero_eis(rng: &mut ChaCha8Rng, bound: i128) -> Eis {
    loop {
        let z = random_eis(rng, bound);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Coefficients of `k (x − r1)(x − r2)(x − r3)`.
pub fn from_roots(k: Eis, r: [Eis; 3]) -> [Eis; 4] {
    let e1 = r[0].add(r[1]).add(r[2]);
    let e2 = r[0].mul(r[1]).add(r[0].mul(r[2])).add(r[1].mul(r[2]));
    let e3 = r[0].mul(r[1]).mul(r[2]);
    [k, k.mul(e1).scale(-1), k.mul(e2), k.mul(e3).scale(-1)]
}

// ---------------------------------------------------------------- rationals

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Minimal resolution data of `1/m(1,q)` from the Hirzebruch–Jung continued
/// fraction: `(ΔK², ΔC² at the first end, ΔC² at the last end, chain)`.
pub fn hirzebruch_jung(m: i64, qq: i64) -> (BigRational, BigRational, BigRational, Vec<i64>) {
    let mut b = Vec::new();
    let (mut num, mut den) = (m, qq);
    while den != 0 {
        let bi = (num + den - 1) / den;
        b.push(bi);
        let rest = bi * den - num;
        num = den;
        den = rest;
    }
    let n = b.len();
    let mut matrix = vec![vec![q(0, 1); n]; n];
    for i in 0..n {
        matrix[i][i] = q(-b[i], 1);
        if i + 1 < n {
            matrix[i][i + 1] = q(1, 1);
            matrix[i + 1][i] = q(1, 1);
        }
    }
    // K·E_i = b_i - 2 on the resolution
    let discrepancy = solve(&matrix, b.iter().map(|&bi| q(bi - 2, 1)).collect());
    let d_k2: BigRational = discrepancy
        .iter()
        .zip(&b)
        .map(|(a, &bi)| a * q(bi - 2, 1))
        .sum();
    let unit = |k: usize| {
        (0..n)
            .map(|i| if i == k { q(-1, 1) } else { q(0, 1) })
            .collect::<Vec<_>>()
    };
    let first = solve(&matrix, unit(0));
    let last = solve(&matrix, unit(n - 1));
    (
        d_k2,
        -first[0].clone(),
        -last[n - 1].clone(),
        b.iter().map(|x| -x).collect(),
    )
}

fn solve(matrix: &[Vec<BigRational>], rhs: Vec<BigRational>) -> Vec<BigRational> {
    let n = rhs.len();
    let mut a: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(&rhs)
        .map(|(r, y)| {
            let mut row = r.clone();
            row.push(y.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != q(0, 1))
            .expect("nonsingular");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for k in col..=n {
            a[col][k] = &a[col][k] / &p;
        }
        for r in 0..n {
            if r != col && a[r][col] != q(0, 1) {
                let f = a[r][col].clone();
                for k in col..=n {
                    let t = &f * &a[col][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}
