//! Permutations split into cycle layers, local equivalence, and the
//! centralizer-equality decisions in `S_n` and `A_n`.
//!
//! Points are 0-based internally and 1-based in text and JSON.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest degree the brute-force centralizer enumerates.
pub const BRUTEFORCE_MAX_N: usize = 9;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    /// From 1-based images: position `i` holds the image of `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Parse(format!("not a permutation of 1..{n}: {images:?}")));
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Permutation { images: out })
    }

    /// 1-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::Parse(format!("point {a} outside 1..{n}")));
                }
                if seen[a - 1] {
                    return Err(Error::Parse(format!("point {a} repeated")));
                }
                seen[a - 1] = true;
                images[a - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation `"(1 2)(3 4)"` (empty or `"()"` is the identity)
    /// or a JSON image array `"[2,1,4,3]"`. `n` defaults to the largest point.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Permutation> {
        let t = s.trim();
        if t.starts_with('[') {
            let images: Vec<usize> =
                serde_json::from_str(t).map_err(|e| Error::Parse(format!("bad image array: {e}")))?;
            let p = Permutation::from_images(&images)?;
            return match n {
                Some(m) if m < p.n() => Err(Error::Parse(format!("image array longer than n = {m}"))),
                Some(m) => Ok(p.extend(m)),
                None => Ok(p),
            };
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::Parse(format!("expected '(' in {s:?}")));
            };
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let pts = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {x:?}"))))
                .collect::<Result<Vec<usize>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = body[close + 1..].trim_start();
        }
        let maxp = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = n.unwrap_or(maxp);
        if maxp > n {
            return Err(Error::Parse(format!("point {maxp} outside 1..{n}")));
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    /// 1-based image array.
    pub fn images_1based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// The same permutation on `m >= n` points.
    pub fn extend(&self, m: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.n()..m);
        Permutation { images }
    }

    /// `self` then `other`: `i -> other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.n());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.n() == other.n() && (0..self.n()).all(|i| other.images[self.images[i]] == self.images[other.images[i]])
    }

    /// All cycles including fixed points, 0-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        (self.n() - self.cycles().len()).is_multiple_of(2)
    }

    /// Multiplicity of each cycle length, as `(length, count)` pairs.
    pub fn cycle_type(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for c in self.cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Order of the centralizer in `S_n`: `prod i^{m_i} m_i!`.
    pub fn sn_centralizer_order(&self) -> u64 {
        self.cycle_type()
            .iter()
            .map(|&(i, m)| (i as u64).pow(m as u32) * (1..=m as u64).product::<u64>())
            .product()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in S_{}", self.n())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub length: usize,
    pub perm: Permutation,
    /// Points moved by this layer, numbered from 1.
    pub support: BTreeSet<usize>,
}

/// `g = v_1 v_2 ... v_n` with `v_i` the product of the `i`-cycles of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleLayers {
    pub n: usize,
    pub layers: Vec<Layer>,
}

impl CycleLayers {
    pub fn layer(&self, i: usize) -> Option<&Layer> {
        self.layers.iter().find(|l| l.length == i)
    }

    pub fn support(&self, i: usize) -> BTreeSet<usize> {
        self.layer(i).map(|l| l.support.clone()).unwrap_or_default()
    }

    pub fn perm(&self, i: usize) -> Permutation {
        self.layer(i).map(|l| l.perm.clone()).unwrap_or_else(|| Permutation::identity(self.n))
    }

    /// Product of all layers.
    pub fn product(&self) -> Permutation {
        self.layers.iter().fold(Permutation::identity(self.n), |acc, l| acc.then(&l.perm))
    }
}

pub fn cycle_layers(g: &Permutation) -> CycleLayers {
    let n = g.n();
    let mut layers: Vec<Layer> = Vec::new();
    for c in g.cycles() {
        let len = c.len();
        let pos = match layers.iter().position(|l| l.length == len) {
            Some(p) => p,
            None => {
                layers.push(Layer { length: len, perm: Permutation::identity(n), support: BTreeSet::new() });
                layers.len() - 1
            }
        };
        let layer = &mut layers[pos];
        for &x in &c {
            layer.perm.images[x] = g.images[x];
            layer.support.insert(x + 1);
        }
    }
    layers.sort_by_key(|l| l.length);
    CycleLayers { n, layers }
}

/// Smallest `k` in `1..=i` coprime to `i` with `w_i = v_i^k`.
pub fn locally_equivalent(g: &Permutation, h: &Permutation, i: usize) -> Option<usize> {
    if g.n() != h.n() {
        return None;
    }
    let (lg, lh) = (cycle_layers(g), cycle_layers(h));
    local_exponent(&lg, &lh, i)
}

fn local_exponent(lg: &CycleLayers, lh: &CycleLayers, i: usize) -> Option<usize> {
    if lg.support(i) != lh.support(i) {
        return None;
    }
    let (v, w) = (lg.perm(i), lh.perm(i));
    (1..=i.max(1)).filter(|k| k.gcd(&i) == 1).find(|&k| v.pow(k) == w)
}

fn variation_set(lg: &CycleLayers, lh: &CycleLayers) -> BTreeSet<usize> {
    (1..=lg.n).filter(|&i| local_exponent(lg, lh, i).is_none()).collect()
}

pub fn perm_equivalent(g: &Permutation, h: &Permutation) -> bool {
    g.n() == h.n() && variation_set(&cycle_layers(g), &cycle_layers(h)).is_empty()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VariationKind {
    #[serde(rename = "equivalent")]
    Equivalent,
    #[serde(rename = "S-case-1")]
    SCase1,
    #[serde(rename = "S-case-2")]
    SCase2,
    #[serde(rename = "A-case-1")]
    ACase1,
    #[serde(rename = "A-case-2")]
    ACase2,
    #[serde(rename = "A-case-3")]
    ACase3,
    #[serde(rename = "A-case-4")]
    ACase4,
    #[serde(rename = "not-equal")]
    NotEqual,
}

impl fmt::Display for VariationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().expect("string"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariationReport {
    pub equal: bool,
    pub kind: VariationKind,
    /// Cycle lengths at which local equivalence fails.
    pub variation: BTreeSet<usize>,
    pub details: String,
}

impl VariationReport {
    fn new(kind: VariationKind, variation: BTreeSet<usize>, details: impl Into<String>) -> Self {
        VariationReport { equal: kind != VariationKind::NotEqual, kind, variation, details: details.into() }
    }
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

/// `(12)` against `(1)(2)` on a common two-point support of layers 1 and 2.
fn transposition_vs_fixed(lg: &CycleLayers, lh: &CycleLayers) -> bool {
    let one_way = |a: &CycleLayers, b: &CycleLayers| {
        a.support(1).is_empty() && a.support(2).len() == 2 && b.support(2).is_empty() && b.support(1) == a.support(2)
    };
    one_way(lg, lh) || one_way(lh, lg)
}

/// `(12)(3)(4)` against `(1)(2)(34)` on a common four-point support.
fn swapped_pairs(lg: &CycleLayers, lh: &CycleLayers) -> bool {
    let (g1, g2, h1, h2) = (lg.support(1), lg.support(2), lh.support(1), lh.support(2));
    g1.len() == 2 && g2.len() == 2 && h1 == g2 && h2 == g1
}

/// Outside the layers in `skip`, only odd cycles of pairwise distinct lengths.
fn odd_distinct_elsewhere(l: &CycleLayers, skip: &BTreeSet<usize>) -> bool {
    l.layers
        .iter()
        .filter(|layer| !skip.contains(&layer.length))
        .all(|layer| layer.length % 2 == 1 && layer.support.len() == layer.length)
}

/// Decides `C_{S_n}(g) = C_{S_n}(h)`.
pub fn sn_cent_equal(g: &Permutation, h: &Permutation) -> Result<VariationReport> {
    if g.n() != h.n() {
        return Err(Error::SizeMismatch);
    }
    let (lg, lh) = (cycle_layers(g), cycle_layers(h));
    let var = variation_set(&lg, &lh);
    if var.is_empty() {
        return Ok(VariationReport::new(VariationKind::Equivalent, var, "locally equivalent at every length"));
    }
    if var == set(&[1, 2]) {
        if transposition_vs_fixed(&lg, &lh) {
            return Ok(VariationReport::new(VariationKind::SCase1, var, "layers 1 and 2: (12) against (1)(2)"));
        }
        if swapped_pairs(&lg, &lh) {
            return Ok(VariationReport::new(VariationKind::SCase2, var, "layers 1 and 2: (12)(3)(4) against (1)(2)(34)"));
        }
    }
    Ok(VariationReport::new(VariationKind::NotEqual, var, "no admissible local variation"))
}

/// Exponents `(a, b)` with `w_m = c_1^a c_2^b` for the two cycles `c_1`, `c_2`
/// of `v_m`, when that shape holds.
fn two_cycle_exponents(lg: &CycleLayers, lh: &CycleLayers, m: usize) -> Option<(usize, usize)> {
    let n = lg.n;
    let (v, w) = (lg.perm(m), lh.perm(m));
    let vc: Vec<Vec<usize>> = v.cycles().into_iter().filter(|c| c.len() == m).collect();
    let wc: Vec<Vec<usize>> = w.cycles().into_iter().filter(|c| c.len() == m).collect();
    if vc.len() != 2 || wc.len() != 2 {
        return None;
    }
    let as_perm = |c: &Vec<usize>| {
        let mut images: Vec<usize> = (0..n).collect();
        for (k, &x) in c.iter().enumerate() {
            images[x] = c[(k + 1) % c.len()];
        }
        Permutation { images }
    };
    let mut exps = Vec::new();
    for c in &vc {
        let cp = as_perm(c);
        let support: BTreeSet<usize> = c.iter().copied().collect();
        let d = wc.iter().find(|d| d.iter().copied().collect::<BTreeSet<_>>() == support)?;
        let dp = as_perm(d);
        exps.push((1..m).find(|&k| cp.pow(k) == dp)?);
    }
    Some((exps[0], exps[1]))
}

/// Which case list [`an_cent_equal_with`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnRules {
    /// The four published cases, read literally.
    Literal,
    /// Case 3 also admits three-cycles on two common 3-point blocks, as in
    /// `(4 5 6)` against `(1 2 3)(4 5 6)` in `A_6`.
    Extended,
}

/// Decides `C_{A_n}(g) = C_{A_n}(h)` for even `g`, `h`.
pub fn an_cent_equal(g: &Permutation, h: &Permutation) -> Result<VariationReport> {
    an_cent_equal_with(g, h, AnRules::Extended)
}

/// Supports of the 3-cycles of `g`.
fn three_blocks(l: &CycleLayers) -> Vec<BTreeSet<usize>> {
    l.perm(3).cycles().into_iter().filter(|c| c.len() == 3).map(|c| c.into_iter().collect()).collect()
}

fn six_point_blocks(lg: &CycleLayers, lh: &CycleLayers) -> bool {
    let u: BTreeSet<usize> = lg.support(1).union(&lg.support(3)).copied().collect();
    let uh: BTreeSet<usize> = lh.support(1).union(&lh.support(3)).copied().collect();
    if u != uh || u.len() != 6 {
        return false;
    }
    let (bg, bh) = (three_blocks(lg), three_blocks(lh));
    if bg.is_empty() || bh.is_empty() {
        return false;
    }
    let mut blocks = bg.clone();
    for b in bh {
        if !blocks.contains(&b) {
            blocks.push(b);
        }
    }
    blocks.len() == 2 && blocks[0].is_disjoint(&blocks[1])
}

pub fn an_cent_equal_with(g: &Permutation, h: &Permutation, rules: AnRules) -> Result<VariationReport> {
    if g.n() != h.n() {
        return Err(Error::SizeMismatch);
    }
    if !g.is_even() || !h.is_even() {
        return Err(Error::OddPermutation);
    }
    let (lg, lh) = (cycle_layers(g), cycle_layers(h));
    let var = variation_set(&lg, &lh);
    if var.is_empty() {
        return Ok(VariationReport::new(VariationKind::Equivalent, var, "locally equivalent at every length"));
    }
    let elsewhere = |skip: &BTreeSet<usize>| odd_distinct_elsewhere(&lg, skip) && odd_distinct_elsewhere(&lh, skip);
    if var == set(&[1, 2]) && swapped_pairs(&lg, &lh) {
        return Ok(VariationReport::new(VariationKind::ACase1, var, "layers 1 and 2: (12)(3)(4) against (1)(2)(34)"));
    }
    if var == set(&[2])
        && lg.support(2).len() == 4
        && lg.support(2) == lh.support(2)
        && elsewhere(&var)
    {
        return Ok(VariationReport::new(VariationKind::ACase2, var, "layer 2: (12)(34) against (13)(24)"));
    }
    if var == set(&[1, 3]) && elsewhere(&var) {
        let one_way = |a: &CycleLayers, b: &CycleLayers| {
            a.support(1).is_empty() && a.support(3).len() == 3 && b.support(3).is_empty() && b.support(1) == a.support(3)
        };
        if one_way(&lg, &lh) || one_way(&lh, &lg) {
            return Ok(VariationReport::new(VariationKind::ACase3, var, "layers 1 and 3: (123) against (1)(2)(3)"));
        }
        if rules == AnRules::Extended && six_point_blocks(&lg, &lh) {
            return Ok(VariationReport::new(
                VariationKind::ACase3,
                var,
                "layers 1 and 3: three-cycles on two common 3-point blocks",
            ));
        }
    }
    if var.len() == 1 {
        let m = *var.iter().next().expect("one element");
        if m % 2 == 1 && m > 1 && elsewhere(&var) {
            if let Some((a, b)) = two_cycle_exponents(&lg, &lh, m) {
                if a % m != b % m {
                    return Ok(VariationReport::new(
                        VariationKind::ACase4,
                        var,
                        format!("layer {m}: two cycles raised to exponents {a} and {b}"),
                    ));
                }
            }
        }
    }
    Ok(VariationReport::new(VariationKind::NotEqual, var, "no admissible local variation"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Symmetric,
    Alternating,
}

/// The `k`-th permutation of `n` points in lexicographic order.
pub fn nth_permutation(n: usize, mut k: u64) -> Permutation {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut fact: Vec<u64> = vec![1; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as u64;
    }
    let mut images = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let idx = (k / fact[i]) as usize;
        k %= fact[i];
        images.push(pool.remove(idx));
    }
    Permutation { images }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All elements of the group commuting with `g`, sorted.
pub fn perm_centralizer_bruteforce(g: &Permutation, group: Group) -> Result<Vec<Permutation>> {
    let n = g.n();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::TooLarge);
    }
    let mut out: Vec<Permutation> = (0..factorial(n))
        .into_par_iter()
        .map(|k| nth_permutation(n, k))
        .filter(|x| (group == Group::Symmetric || x.is_even()) && x.commutes_with(g))
        .collect();
    out.sort();
    Ok(out)
}
