//! Self-maps of a finite set: series classification, composition closures
//! and the generating-set searches for maps on four points.

mod compositive;
mod search;

pub use compositive::{compositive_trick_check, postcritical_of_composition, CompositiveReport};
pub use search::{find_generating_pair, verify_sa_generating, CompositionTable, SaGenerating};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

/// Largest set size accepted by [`closure`]; `k^k` maps must stay enumerable.
pub const MAX_K: usize = 8;

/// A total map `{0..k-1} -> {0..k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteSelfMap {
    image: Vec<u8>,
}

impl FiniteSelfMap {
    pub fn new(image: Vec<u8>) -> Result<Self> {
        let k = image.len();
        if k == 0 || k > u8::MAX as usize || image.iter().any(|&i| i as usize >= k) {
            return Err(Error::Invalid(format!("not a self-map of a {k}-point set: {image:?}")));
        }
        Ok(FiniteSelfMap { image })
    }

    /// From 1-based point labels, as in `p1 -> p2`.
    pub fn from_one_based(image: &[u8]) -> Result<Self> {
        Self::new(image.iter().map(|&p| p.wrapping_sub(1)).collect())
    }

    pub fn identity(k: usize) -> Self {
        FiniteSelfMap { image: (0..k as u8).collect() }
    }

    pub fn k(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[u8] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    /// Base-`k` code with point 0 as the least significant digit.
    pub fn code(&self) -> usize {
        let k = self.k();
        self.image.iter().rev().fold(0, |acc, &d| acc * k + d as usize)
    }

    pub fn from_code(code: usize, k: usize) -> Self {
        let mut c = code;
        let image = (0..k)
            .map(|_| {
                let d = (c % k) as u8;
                c /= k;
                d
            })
            .collect();
        FiniteSelfMap { image }
    }

    /// Every self-map of a `k`-point set, in code order.
    pub fn all(k: usize) -> Result<Vec<Self>> {
        if k == 0 || k > MAX_K {
            return Err(Error::SizeGuard(k));
        }
        Ok((0..k.pow(k as u32)).map(|c| Self::from_code(c, k)).collect())
    }

    pub fn power(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(self.k()), |acc, _| compose_fm(self, &acc).expect("same k"))
    }
}

impl fmt::Display for FiniteSelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().enumerate().map(|(i, &j)| format!("p{}->p{}", i + 1, j + 1)).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `f ∘ g`.
pub fn compose_fm(f: &FiniteSelfMap, g: &FiniteSelfMap) -> Result<FiniteSelfMap> {
    if f.k() != g.k() {
        return Err(Error::SizeMismatch(f.k(), g.k()));
    }
    Ok(FiniteSelfMap { image: g.image.iter().map(|&x| f.image[x as usize]).collect() })
}

/// Every point periodic; for a finite self-map, the same as bijective.
pub fn is_periodic(f: &FiniteSelfMap) -> bool {
    let mut seen = vec![false; f.k()];
    f.image.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
}

/// Functional-graph isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesLabel {
    /// Series name for four-point maps, `None` otherwise.
    pub name: Option<String>,
    /// Canonical encoding of the functional graph.
    pub structure: String,
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}", self.structure),
        }
    }
}

/// Canonical form: each component is a cycle with rooted trees hanging off
/// its points. Trees use the nested-parenthesis encoding with sorted
/// children, a cycle takes the least rotation of its tree list, and the
/// components are sorted.
pub fn canonical_structure(f: &FiniteSelfMap) -> String {
    let k = f.k();
    let on_cycle: Vec<bool> = (0..k).map(|x| (1..=k).any(|n| f.power_apply(x, n) == x)).collect();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); k];
    for x in 0..k {
        if !on_cycle[x] {
            children[f.apply(x)].push(x);
        }
    }
    fn tree(x: usize, children: &[Vec<usize>]) -> String {
        let mut subs: Vec<String> = children[x].iter().map(|&c| tree(c, children)).collect();
        subs.sort();
        format!("({})", subs.concat())
    }
    let mut done = vec![false; k];
    let mut comps = Vec::new();
    for start in 0..k {
        if !on_cycle[start] || done[start] {
            continue;
        }
        let mut cycle = vec![start];
        done[start] = true;
        let mut y = f.apply(start);
        while y != start {
            done[y] = true;
            cycle.push(y);
            y = f.apply(y);
        }
        let trees: Vec<String> = cycle.iter().map(|&c| tree(c, &children)).collect();
        let n = trees.len();
        let best = (0..n).map(|r| trees[r..].iter().chain(&trees[..r]).cloned().collect::<Vec<_>>().join("")).min().unwrap_or_default();
        comps.push(format!("[{best}]"));
    }
    comps.sort();
    comps.concat()
}

impl FiniteSelfMap {
    fn power_apply(&self, x: usize, n: usize) -> usize {
        (0..n).fold(x, |y, _| self.apply(y))
    }
}

/// Named representative of each series of four-point maps, 1-based.
pub const SERIES_REPRESENTATIVES: &[(&str, [u8; 4])] = &[
    ("𝔓|", [2, 3, 4, 1]),
    ("𝔓||A", [2, 3, 1, 4]),
    ("𝔓||B", [2, 1, 4, 3]),
    ("𝔓|||", [1, 2, 4, 3]),
    ("𝔓||||", [1, 2, 3, 4]),
    ("𝔖|A", [2, 3, 4, 2]),
    ("𝔖|B", [2, 3, 4, 3]),
    ("𝔖|C", [2, 3, 2, 3]),
    ("𝔖|D", [2, 1, 1, 1]),
    ("𝔖|E", [2, 3, 4, 4]),
    ("𝔖|F", [2, 3, 3, 3]),
    ("𝔖|G", [2, 2, 1, 1]),
    ("𝔖|H", [1, 1, 1, 1]),
    ("𝔖||A", [1, 3, 4, 3]),
    ("𝔖||B", [1, 3, 4, 4]),
    ("𝔖||C", [1, 3, 3, 3]),
    ("𝔖||D", [2, 2, 4, 4]),
    ("𝔖||E", [2, 1, 4, 4]),
    ("𝔖|||", [1, 2, 4, 4]),
];

fn series_names() -> &'static BTreeMap<String, &'static str> {
    static NAMES: std::sync::OnceLock<BTreeMap<String, &'static str>> = std::sync::OnceLock::new();
    NAMES.get_or_init(|| {
        SERIES_REPRESENTATIVES
            .iter()
            .map(|(name, rep)| (canonical_structure(&FiniteSelfMap::from_one_based(rep).expect("valid")), *name))
            .collect()
    })
}

pub fn classify_series(f: &FiniteSelfMap) -> SeriesLabel {
    let structure = canonical_structure(f);
    let name = if f.k() == 4 { series_names().get(&structure).map(|s| s.to_string()) } else { None };
    SeriesLabel { name, structure }
}

/// Named maps used as generators.
pub fn named_map(name: &str) -> Result<FiniteSelfMap> {
    let image: [u8; 4] = match name {
        "P|1" | "𝔓|1" => [2, 3, 4, 1],
        "P|6" | "𝔓|6" => [2, 4, 1, 3],
        "P||A1" | "𝔓||A1" => [2, 3, 1, 4],
        "S|A1" | "𝔖|A1" | "+S|A1" | "+𝔖|A1" => [2, 3, 4, 2],
        "S|F1" | "𝔖|F1" => [2, 3, 3, 3],
        "id" => [1, 2, 3, 4],
        _ => return Err(Error::UnknownId(name.into())),
    };
    FiniteSelfMap::from_one_based(&image)
}

/// Parses a comma-separated generator list: named maps or 1-based images
/// such as `2341`.
pub fn parse_generators(spec: &str) -> Result<Vec<FiniteSelfMap>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            if s.chars().all(|c| c.is_ascii_digit()) {
                FiniteSelfMap::from_one_based(&s.bytes().map(|b| b - b'0').collect::<Vec<_>>())
            } else {
                named_map(s)
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosureResult {
    pub generators: Vec<FiniteSelfMap>,
    pub closure: Vec<FiniteSelfMap>,
    pub size: usize,
}

impl ClosureResult {
    /// One full pass over all products.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&FiniteSelfMap> = self.closure.iter().collect();
        self.closure
            .iter()
            .all(|f| self.closure.iter().all(|g| set.contains(&compose_fm(f, g).expect("same k"))))
    }
}

/// Semigroup generated by `gens` (identity only when generated).
pub fn closure(gens: &[FiniteSelfMap]) -> Result<ClosureResult> {
    let Some(k) = gens.first().map(FiniteSelfMap::k) else {
        return Ok(ClosureResult { generators: Vec::new(), closure: Vec::new(), size: 0 });
    };
    if k > MAX_K {
        return Err(Error::SizeGuard(k));
    }
    if let Some(g) = gens.iter().find(|g| g.k() != k) {
        return Err(Error::SizeMismatch(k, g.k()));
    }
    let mut seen: HashSet<FiniteSelfMap> = gens.iter().cloned().collect();
    let mut queue: VecDeque<FiniteSelfMap> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose_fm(&x, g)?;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut all: Vec<FiniteSelfMap> = seen.into_iter().collect();
    all.sort();
    Ok(ClosureResult { generators: gens.to_vec(), size: all.len(), closure: all })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Census {
    pub total: usize,
    pub bijections: usize,
    pub non_bijections: usize,
    /// `(table, series, count)` in table order.
    pub rows: Vec<(String, String, usize)>,
}

impl Census {
    pub fn count(&self, series: &str) -> usize {
        self.rows.iter().find(|r| r.1 == series).map_or(0, |r| r.2)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("table,series,count\n");
        for (t, s, c) in &self.rows {
            out.push_str(&format!("{t},{s},{c}\n"));
        }
        out.push_str(&format!("total,all,{}\ntotal,periodic,{}\ntotal,strictly_preperiodic,{}\n", self.total, self.bijections, self.non_bijections));
        out
    }
}

fn table_of(series: &str) -> &'static str {
    if series.starts_with("𝔓") {
        "periodic"
    } else if series == "𝔖|||" {
        "three_orbits"
    } else if series.starts_with("𝔖||") {
        "two_orbits"
    } else {
        "one_orbit"
    }
}

/// Series counts over all 256 maps on four points.
pub fn census() -> Census {
    let all = FiniteSelfMap::all(4).expect("k = 4");
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for f in &all {
        let name = classify_series(f).name.unwrap_or_else(|| "unnamed".into());
        *counts.entry(name).or_default() += 1;
    }
    let bijections = all.iter().filter(|f| is_periodic(f)).count();
    let rows = SERIES_REPRESENTATIVES
        .iter()
        .map(|(s, _)| (table_of(s).to_string(), s.to_string(), counts.get(*s).copied().unwrap_or(0)))
        .collect();
    Census { total: all.len(), bijections, non_bijections: all.len() - bijections, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(img: [u8; 4]) -> FiniteSelfMap {
        FiniteSelfMap::from_one_based(&img).unwrap()
    }

    #[test]
    fn code_round_trip() {
        for c in 0..256 {
            assert_eq!(FiniteSelfMap::from_code(c, 4).code(), c);
        }
    }

    #[test]
    fn composition_examples() {
        let sa1 = named_map("S|A1").unwrap();
        assert_eq!(compose_fm(&sa1, &sa1).unwrap(), m([3, 4, 2, 3]));
        let p1 = named_map("P|1").unwrap();
        assert_eq!(p1.power(4), FiniteSelfMap::identity(4));
        assert!(compose_fm(&p1, &FiniteSelfMap::identity(3)).is_err());
    }

    #[test]
    fn periodicity() {
        assert!(is_periodic(&FiniteSelfMap::identity(4)));
        assert!(!is_periodic(&named_map("S|A1").unwrap()));
        assert!(!is_periodic(&m([1, 1, 1, 1])));
    }

    #[test]
    fn labels() {
        assert_eq!(classify_series(&m([2, 3, 4, 1])).name.as_deref(), Some("𝔓|"));
        assert_eq!(classify_series(&m([2, 3, 4, 2])).name.as_deref(), Some("𝔖|A"));
        assert_eq!(classify_series(&m([3, 4, 1, 2])).name.as_deref(), Some("𝔓||B"));
        assert_eq!(classify_series(&m([1, 4, 3, 2])).name.as_deref(), Some("𝔓|||"));
        assert!(classify_series(&FiniteSelfMap::identity(5)).name.is_none());
    }

    #[test]
    fn named_representatives_are_distinct_classes() {
        let classes: HashSet<String> = SERIES_REPRESENTATIVES.iter().map(|(_, r)| canonical_structure(&m(*r))).collect();
        assert_eq!(classes.len(), SERIES_REPRESENTATIVES.len());
    }

    #[test]
    fn small_closures() {
        let id = FiniteSelfMap::identity(4);
        assert_eq!(closure(&[id]).unwrap().size, 1);
        let p = closure(&[named_map("P|1").unwrap(), named_map("P||A1").unwrap()]).unwrap();
        assert_eq!(p.size, 24);
        assert!(p.is_closed());
        assert!(closure(&[FiniteSelfMap::identity(9)]).is_err());
    }

    #[test]
    fn parse_generator_lists() {
        let g = parse_generators("P|1, 2314 ,S|A1").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[1], named_map("P||A1").unwrap());
        assert!(parse_generators("5111").is_err());
    }
}
