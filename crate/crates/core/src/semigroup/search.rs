//! Exhaustive generator searches over the 256 maps on four points.

use super::{classify_series, is_periodic, ClosureResult, FiniteSelfMap};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const N: usize = 256;

/// `table[f * 256 + g]` is the code of `f ∘ g`.
pub struct CompositionTable {
    table: Vec<u8>,
}

impl Default for CompositionTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CompositionTable {
    pub fn new() -> Self {
        let maps: Vec<FiniteSelfMap> = (0..N).map(|c| FiniteSelfMap::from_code(c, 4)).collect();
        let mut table = vec![0u8; N * N];
        for (f, mf) in maps.iter().enumerate() {
            for (g, mg) in maps.iter().enumerate() {
                table[f * N + g] = super::compose_fm(mf, mg).expect("same k").code() as u8;
            }
        }
        CompositionTable { table }
    }

    pub fn compose(&self, f: u8, g: u8) -> u8 {
        self.table[f as usize * N + g as usize]
    }

    /// Size of the semigroup generated by `gens`, stopping early once it
    /// exceeds `limit`.
    pub fn closure_size(&self, gens: &[u8], limit: usize) -> (usize, [u64; 4]) {
        let mut seen = [0u64; 4];
        let mut stack: Vec<u8> = Vec::with_capacity(N);
        let mut count = 0;
        for &g in gens {
            if seen[g as usize / 64] >> (g % 64) & 1 == 0 {
                seen[g as usize / 64] |= 1 << (g % 64);
                stack.push(g);
                count += 1;
            }
        }
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.compose(x, g);
                if seen[y as usize / 64] >> (y % 64) & 1 == 0 {
                    seen[y as usize / 64] |= 1 << (y % 64);
                    stack.push(y);
                    count += 1;
                    if count > limit {
                        return (count, seen);
                    }
                }
            }
        }
        (count, seen)
    }
}

fn members(bits: &[u64; 4]) -> Vec<FiniteSelfMap> {
    (0..N).filter(|&c| bits[c / 64] >> (c % 64) & 1 == 1).map(|c| FiniteSelfMap::from_code(c, 4)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SaGenerating {
    /// The chosen half of the series, one map from each `{f, f²}` pair.
    pub chosen: Vec<FiniteSelfMap>,
    /// The squares of the chosen maps, which are the unchosen half.
    pub squares: Vec<FiniteSelfMap>,
    pub closure: ClosureResult,
    /// Index of the selection among the 4096 candidates.
    pub selection: usize,
}

/// Searches the one-per-pair selections of the 𝔖|A series, pairing each map
/// with its square, for the first whose closure is exactly the 232
/// non-bijections.
pub fn verify_sa_generating() -> Result<SaGenerating> {
    let table = CompositionTable::new();
    let series: Vec<u8> = (0..N)
        .filter(|&c| classify_series(&FiniteSelfMap::from_code(c, 4)).name.as_deref() == Some("𝔖|A"))
        .map(|c| c as u8)
        .collect();
    let mut pairs: Vec<(u8, u8)> = Vec::new();
    for &f in &series {
        let sq = table.compose(f, f);
        if !series.contains(&sq) || table.compose(sq, sq) != f {
            return Err(Error::NoSubsetFound);
        }
        if f < sq {
            pairs.push((f, sq));
        }
    }
    if pairs.len() * 2 != series.len() {
        return Err(Error::NoSubsetFound);
    }
    let target = N - 24;
    let found = (0..1usize << pairs.len()).into_par_iter().find_first(|&mask| {
        let gens: Vec<u8> = pairs.iter().enumerate().map(|(j, p)| if mask >> j & 1 == 0 { p.0 } else { p.1 }).collect();
        table.closure_size(&gens, target).0 == target
    });
    let mask = found.ok_or(Error::NoSubsetFound)?;
    let pick = |j: usize, p: &(u8, u8)| if mask >> j & 1 == 0 { (p.0, p.1) } else { (p.1, p.0) };
    let chosen_codes: Vec<u8> = pairs.iter().enumerate().map(|(j, p)| pick(j, p).0).collect();
    let (size, bits) = table.closure_size(&chosen_codes, N);
    let closure_maps = members(&bits);
    debug_assert!(closure_maps.iter().all(|f| !is_periodic(f)));
    let chosen: Vec<FiniteSelfMap> = chosen_codes.iter().map(|&c| FiniteSelfMap::from_code(c as usize, 4)).collect();
    let squares = pairs.iter().enumerate().map(|(j, p)| FiniteSelfMap::from_code(pick(j, p).1 as usize, 4)).collect();
    Ok(SaGenerating {
        closure: ClosureResult { generators: chosen.clone(), size, closure: closure_maps },
        chosen,
        squares,
        selection: mask,
    })
}

/// First pair `(f, g)` in code order generating every map, if any.
pub fn find_generating_pair() -> Option<(FiniteSelfMap, FiniteSelfMap)> {
    let table = CompositionTable::new();
    (0..N * N)
        .into_par_iter()
        .find_first(|&i| table.closure_size(&[(i / N) as u8, (i % N) as u8], N).0 == N)
        .map(|i| (FiniteSelfMap::from_code(i / N, 4), FiniteSelfMap::from_code(i % N, 4)))
}
