//! Corpus specifications: which tables a suite run covers.
//!
//! A corpus specification is a `;`-separated list of sources:
//!
//! | source                      | tables                                              |
//! |-----------------------------|-----------------------------------------------------|
//! | `enum:1..3`, `enum:3/iso`   | enumerated classes (default symmetry `iso-anti`)    |
//! | `stock:1..12`               | the four stock families for each order              |
//! | `example:1..8`              | level-semilattice truncations                       |
//! | `monogenic:12`              | `monogenic(m, r)` for all `m + r ≤ 12`              |
//! | `random:10000/6/42`         | count / max order / base seed                       |
//! | `file:path.sgt`, `dir:path` | `.sgt` files (a directory contributes every `.sgt`) |

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use crate::enumerate::{enumerate_semigroups, random_semigroup, Symmetry};
use crate::sgcore::{parse_sgt, CayleyTable};
use crate::witness::{ex_truncate, monogenic, stock, Family};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusSource {
    Enumerated {
        orders: RangeInclusive<usize>,
        symmetry: Symmetry,
    },
    Stock {
        orders: RangeInclusive<usize>,
    },
    Example {
        levels: RangeInclusive<usize>,
    },
    Monogenic {
        max_sum: usize,
    },
    Random {
        count: usize,
        max_order: usize,
        seed: u64,
    },
    File(PathBuf),
    Dir(PathBuf),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusSpec {
    pub sources: Vec<CorpusSource>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("corpus spec item `{item}`: {message}")]
pub struct CorpusSpecError {
    pub item: String,
    pub message: String,
}

fn parse_range(s: &str) -> Option<RangeInclusive<usize>> {
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (a <= b).then_some(a..=b)
        }
        None => {
            let v = s.trim().parse().ok()?;
            Some(v..=v)
        }
    }
}

impl std::str::FromStr for CorpusSpec {
    type Err = CorpusSpecError;

    fn from_str(spec: &str) -> Result<Self, CorpusSpecError> {
        let mut sources = Vec::new();
        for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let err = |message: &str| CorpusSpecError {
                item: item.to_string(),
                message: message.to_string(),
            };
            let (kind, arg) = item
                .split_once(':')
                .ok_or_else(|| err("expected `kind:argument`"))?;
            let range = || parse_range(arg).ok_or_else(|| err("expected `a..b` or `n`"));
            let source = match kind.trim() {
                "enum" => {
                    let (range_part, symmetry) = match arg.split_once('/') {
                        Some((r, s)) => (r, s.parse().map_err(|_| err("unknown symmetry"))?),
                        None => (arg, Symmetry::IsoAnti),
                    };
                    CorpusSource::Enumerated {
                        orders: parse_range(range_part)
                            .ok_or_else(|| err("expected order range"))?,
                        symmetry,
                    }
                }
                "stock" => CorpusSource::Stock { orders: range()? },
                "example" => CorpusSource::Example { levels: range()? },
                "monogenic" => CorpusSource::Monogenic {
                    max_sum: arg.trim().parse().map_err(|_| err("expected an integer"))?,
                },
                "random" => {
                    let parts: Vec<&str> = arg.split('/').collect();
                    if parts.len() != 3 {
                        return Err(err("expected count/max_order/seed"));
                    }
                    let num = |s: &str| {
                        s.trim()
                            .parse::<u64>()
                            .map_err(|_| err("expected integers"))
                    };
                    CorpusSource::Random {
                        count: num(parts[0])? as usize,
                        max_order: num(parts[1])? as usize,
                        seed: num(parts[2])?,
                    }
                }
                "file" => CorpusSource::File(PathBuf::from(arg.trim())),
                "dir" => CorpusSource::Dir(PathBuf::from(arg.trim())),
                _ => return Err(err("unknown source kind")),
            };
            sources.push(source);
        }
        Ok(CorpusSpec { sources })
    }
}

/// One table of a corpus, or the reason it could not be produced.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub table: Result<CayleyTable, String>,
}

fn load_file(path: &std::path::Path) -> CorpusEntry {
    let id = format!("file({})", path.display());
    let table = fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|text| parse_sgt(&text).map_err(|e| e.to_string()))
        .and_then(|t| t.validated().map_err(|e| e.to_string()));
    CorpusEntry { id, table }
}

impl CorpusSpec {
    /// Materializes every source in order.
    pub fn entries(&self) -> Vec<CorpusEntry> {
        let mut out = Vec::new();
        for source in &self.sources {
            match source {
                CorpusSource::Enumerated { orders, symmetry } => {
                    for n in orders.clone() {
                        match enumerate_semigroups(n, *symmetry) {
                            Ok(tables) => {
                                out.extend(tables.into_iter().enumerate().map(|(i, t)| {
                                    CorpusEntry {
                                        id: format!("enum({n},{symmetry})#{i}"),
                                        table: Ok(t),
                                    }
                                }))
                            }
                            Err(e) => out.push(CorpusEntry {
                                id: format!("enum({n},{symmetry})"),
                                table: Err(e.to_string()),
                            }),
                        }
                    }
                }
                CorpusSource::Stock { orders } => {
                    for n in orders.clone().filter(|&n| n >= 1) {
                        for family in Family::ALL {
                            out.push(CorpusEntry {
                                id: format!("stock({family},{n})"),
                                table: Ok(stock(family, n)),
                            });
                        }
                    }
                }
                CorpusSource::Example { levels } => {
                    for n in levels.clone().filter(|&n| n >= 1) {
                        out.push(CorpusEntry {
                            id: format!("example({n})"),
                            table: Ok(ex_truncate(n).table),
                        });
                    }
                }
                CorpusSource::Monogenic { max_sum } => {
                    for sum in 2..=*max_sum {
                        for index in 1..sum {
                            out.push(CorpusEntry {
                                id: format!("monogenic({index},{})", sum - index),
                                table: Ok(monogenic(index, sum - index)),
                            });
                        }
                    }
                }
                CorpusSource::Random {
                    count,
                    max_order,
                    seed,
                } => {
                    for i in 0..*count as u64 {
                        let s = seed.wrapping_add(i);
                        out.push(CorpusEntry {
                            id: format!("random({max_order},seed={s})"),
                            table: random_semigroup(*max_order, s).map_err(|e| e.to_string()),
                        });
                    }
                }
                CorpusSource::File(path) => out.push(load_file(path)),
                CorpusSource::Dir(path) => match fs::read_dir(path) {
                    Ok(dir) => {
                        let mut files: Vec<PathBuf> = dir
                            .filter_map(|e| e.ok().map(|e| e.path()))
                            .filter(|p| p.extension().is_some_and(|x| x == "sgt"))
                            .collect();
                        files.sort();
                        out.extend(files.iter().map(|p| load_file(p)));
                    }
                    Err(e) => out.push(CorpusEntry {
                        id: format!("dir({})", path.display()),
                        table: Err(e.to_string()),
                    }),
                },
            }
        }
        out
    }
}
