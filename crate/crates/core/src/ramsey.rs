//! Pair colorings of element sequences, greedy monochromatic extraction and the
//! `Z_k` chain replay.
//!
//! For a sequence `x_0, x_1, …` of distinct elements, each pair `n < m` is colored by how
//! `x_n x_m` and `x_m x_n` relate to `{x_n, x_m}`. A large monochromatic index set then
//! forces structure: color 4 of [`chi5`] and color 5 of [`chi6`] are antichains, color 0
//! of [`chi6`] is a chain, and color 1 of [`chi6`] makes every `Z_k` a chain.

use serde::Serialize;

use crate::order::is_chain;
use crate::sgcore::{CayleyTable, Element, ElementSet};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RamseyError {
    #[error("element {element} appears more than once")]
    Repeated { element: Element },
    #[error("element {element} is not idempotent")]
    NotIdempotent { element: Element },
    #[error("pair ({n}, {m}) matches cases {matches:?}; exactly one was expected")]
    IllDefined {
        n: usize,
        m: usize,
        matches: Vec<u8>,
    },
}

/// A coloring of all pairs `n < m < item_count` with colors in `0..palette_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairColoring {
    item_count: usize,
    palette_size: u8,
    // Row-major upper triangle.
    colors: Vec<u8>,
}

impl PairColoring {
    pub fn from_fn(
        item_count: usize,
        palette_size: u8,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Self {
        let mut colors = Vec::with_capacity(item_count * item_count.saturating_sub(1) / 2);
        for n in 0..item_count {
            for m in n + 1..item_count {
                let c = f(n, m);
                assert!(c < palette_size, "color {c} outside palette {palette_size}");
                colors.push(c);
            }
        }
        PairColoring {
            item_count,
            palette_size,
            colors,
        }
    }

    pub fn constant(item_count: usize, palette_size: u8, color: u8) -> Self {
        Self::from_fn(item_count, palette_size, |_, _| color)
    }

    pub fn item_count(&self) -> usize {
        self.item_count
    }

    pub fn palette_size(&self) -> u8 {
        self.palette_size
    }

    pub fn pair_count(&self) -> usize {
        self.colors.len()
    }

    fn offset(&self, n: usize) -> usize {
        // Pairs before row n: sum_{i<n} (N - 1 - i).
        n * (2 * self.item_count - n - 1) / 2
    }

    /// Color of `{n, m}`; argument order does not matter.
    pub fn color(&self, n: usize, m: usize) -> u8 {
        let (n, m) = if n < m { (n, m) } else { (m, n) };
        assert!(
            n != m && m < self.item_count,
            "pair ({n}, {m}) out of range"
        );
        self.colors[self.offset(n) + (m - n - 1)]
    }

    /// Row `n` lists the colors of `(n, n+1), …, (n, N-1)`.
    pub fn triangular_rows(&self) -> Vec<Vec<u8>> {
        (0..self.item_count)
            .map(|n| {
                let start = self.offset(n);
                self.colors[start..start + (self.item_count - n - 1)].to_vec()
            })
            .collect()
    }

    pub fn is_monochromatic(&self, indices: &[usize], color: u8) -> bool {
        indices
            .iter()
            .enumerate()
            .all(|(i, &n)| indices[i + 1..].iter().all(|&m| self.color(n, m) == color))
    }
}

impl Serialize for PairColoring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            item_count: usize,
            palette_size: u8,
            rows: Vec<Vec<u8>>,
        }
        Wire {
            item_count: self.item_count,
            palette_size: self.palette_size,
            rows: self.triangular_rows(),
        }
        .serialize(serializer)
    }
}

fn ensure_distinct(xs: &[Element]) -> Result<(), RamseyError> {
    for (i, &x) in xs.iter().enumerate() {
        if xs[..i].contains(&x) {
            return Err(RamseyError::Repeated { element: x });
        }
    }
    Ok(())
}

/// Five-color pair coloring; overlapping cases resolve to the first match in the order
/// `x_n x_m = x_n`, `x_m x_n = x_n`, `x_n x_m = x_m`, `x_m x_n = x_m`, otherwise 4.
pub fn chi5(table: &CayleyTable, xs: &[Element]) -> Result<PairColoring, RamseyError> {
    ensure_distinct(xs)?;
    Ok(PairColoring::from_fn(xs.len(), 5, |n, m| {
        let (a, b) = (xs[n], xs[m]);
        let (ab, ba) = (table.mul(a, b), table.mul(b, a));
        if ab == a {
            0
        } else if ba == a {
            1
        } else if ab == b {
            2
        } else if ba == b {
            3
        } else {
            4
        }
    }))
}

/// Every case of the six-color coloring that holds for the pair `(a, b)`, each
/// condition evaluated literally.
pub fn chi6_matches(table: &CayleyTable, a: Element, b: Element) -> Vec<u8> {
    let (ab, ba) = (table.mul(a, b), table.mul(b, a));
    let ab_in = ab == a || ab == b;
    let ba_in = ba == a || ba == b;
    let cases = [
        ab_in && ba_in,
        ab == a && !ba_in,
        ab == b && !ba_in,
        !ab_in && ba == a,
        !ab_in && ba == b,
        !ab_in && !ba_in,
    ];
    (0..6u8).filter(|&c| cases[c as usize]).collect()
}

/// Six-color coloring of distinct idempotents by the membership pattern of
/// `e_n e_m` and `e_m e_n` in `{e_n, e_m}`.
pub fn chi6(table: &CayleyTable, es: &[Element]) -> Result<PairColoring, RamseyError> {
    ensure_distinct(es)?;
    if let Some(&element) = es.iter().find(|&&e| !table.is_idempotent(e)) {
        return Err(RamseyError::NotIdempotent { element });
    }
    let mut failure = None;
    let coloring = PairColoring::from_fn(es.len(), 6, |n, m| {
        let matches = chi6_matches(table, es[n], es[m]);
        if matches.len() == 1 {
            matches[0]
        } else {
            failure.get_or_insert(RamseyError::IllDefined { n, m, matches });
            0
        }
    });
    match failure {
        Some(err) => Err(err),
        None => Ok(coloring),
    }
}

/// Result of [`greedy_monochromatic`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Monochromatic {
    pub color: u8,
    /// Ascending item indices; every pair inside has `color`.
    pub indices: Vec<usize>,
    /// Size the pivot chain certifies: `⌈(pivots - 1) / palette⌉ + 1`.
    pub guarantee: usize,
    /// Pivots in order with the color they share with every later pivot.
    pub pivots: Vec<(usize, Option<u8>)>,
}

/// Pivot-and-refine extraction.
///
/// The least remaining index becomes a pivot, the rest are split by their color with the
/// pivot, and the largest class (least color on ties) survives. Pivots sharing a color
/// form a monochromatic set; the last pivot joins whichever color is chosen.
pub fn greedy_monochromatic(coloring: &PairColoring) -> Monochromatic {
    let palette = coloring.palette_size().max(1) as usize;
    let mut remaining: Vec<usize> = (0..coloring.item_count()).collect();
    let mut pivots = Vec::new();
    while let Some((&pivot, rest)) = remaining.split_first() {
        let mut classes = vec![Vec::new(); palette];
        for &m in rest {
            classes[coloring.color(pivot, m) as usize].push(m);
        }
        if rest.is_empty() {
            pivots.push((pivot, None));
            break;
        }
        // max_by_key keeps the last maximum, so scan colors in reverse.
        let (color, class) = classes
            .into_iter()
            .enumerate()
            .rev()
            .max_by_key(|(_, c)| c.len())
            .expect("palette is nonempty");
        pivots.push((pivot, Some(color as u8)));
        remaining = class;
    }

    let mut counts = vec![0usize; palette];
    for (_, c) in &pivots {
        if let Some(c) = c {
            counts[*c as usize] += 1;
        }
    }
    let color = (0..palette).rev().max_by_key(|&c| counts[c]).unwrap_or(0) as u8;
    let indices: Vec<usize> = pivots
        .iter()
        .filter(|(_, c)| c.is_none() || *c == Some(color))
        .map(|(p, _)| *p)
        .collect();
    let guarantee = match pivots.len() {
        0 => 0,
        l => (l - 1).div_ceil(palette) + 1,
    };
    Monochromatic {
        color,
        indices,
        guarantee,
        pivots,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ZChainError {
    #[error("index {k} out of range for a sequence of {len} idempotents")]
    IndexOutOfRange { k: usize, len: usize },
    #[error(transparent)]
    Input(#[from] RamseyError),
    #[error("premise fails at pair ({n}, {m}): e_n·e_m = {product}, expected {expected}")]
    PremiseViolation {
        n: usize,
        m: usize,
        product: Element,
        expected: Element,
    },
    #[error(
        "CONCLUSION FAILED for k = {k}, pair ({n}, {m}): step values {steps:?} are not all equal"
    )]
    ConclusionFailed {
        k: usize,
        n: usize,
        m: usize,
        steps: [Element; 4],
    },
    #[error("CONCLUSION FAILED for k = {k}: Z_k = {members} is not a chain")]
    NotAChain { k: usize, members: ElementSet },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZChain {
    pub k: usize,
    pub members: ElementSet,
}

/// Builds `Z_k = {e_n e_k : n > k}` and replays why it is a chain.
///
/// Premise: `e_n e_m = e_n` for all `n < m`. For `n, m > k` the replay evaluates
/// `(e_n e_k)(e_m e_k)`, `e_n((e_k e_m) e_k)`, `(e_n e_k) e_k` and `e_n e_k`
/// and requires them to agree.
pub fn replay_zchain(table: &CayleyTable, es: &[Element], k: usize) -> Result<ZChain, ZChainError> {
    ensure_distinct(es)?;
    if let Some(&element) = es.iter().find(|&&e| !table.is_idempotent(e)) {
        return Err(RamseyError::NotIdempotent { element }.into());
    }
    if k >= es.len() {
        return Err(ZChainError::IndexOutOfRange { k, len: es.len() });
    }
    for n in 0..es.len() {
        for m in n + 1..es.len() {
            let product = table.mul(es[n], es[m]);
            if product != es[n] {
                return Err(ZChainError::PremiseViolation {
                    n,
                    m,
                    product,
                    expected: es[n],
                });
            }
        }
    }
    let ek = es[k];
    for n in k + 1..es.len() {
        for m in k + 1..es.len() {
            let (en, em) = (es[n], es[m]);
            let steps = [
                table.mul(table.mul(en, ek), table.mul(em, ek)),
                table.mul(en, table.mul(table.mul(ek, em), ek)),
                table.mul(table.mul(en, ek), ek),
                table.mul(en, ek),
            ];
            if steps.iter().any(|&s| s != steps[0]) {
                return Err(ZChainError::ConclusionFailed { k, n, m, steps });
            }
        }
    }
    let members = ElementSet::from_elements(
        table.order(),
        es[k + 1..].iter().map(|&en| table.mul(en, ek)),
    );
    if !is_chain(table, &members) {
        return Err(ZChainError::NotAChain { k, members });
    }
    Ok(ZChain { k, members })
}
