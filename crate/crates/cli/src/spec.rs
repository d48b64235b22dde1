//! Parsers for the `--J` index lists and inclusive `a..b` ranges.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Upper {
    Num(usize),
    /// The literal `k`, resolved against the arity.
    Arity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Item {
    One(usize),
    Range(usize, Upper),
}

/// A comma list of indices and `a..b` ranges; `b` may be the literal `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSpec {
    items: Vec<Item>,
    text: String,
}

impl IndexSpec {
    /// The sorted, deduplicated index set for arity k.
    pub fn resolve(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for item in &self.items {
            match *item {
                Item::One(i) => out.push(i),
                Item::Range(lo, hi) => {
                    let hi = match hi {
                        Upper::Num(h) => h,
                        Upper::Arity => k,
                    };
                    out.extend(lo..=hi);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for IndexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn parse_index(s: &str) -> Result<usize, String> {
    let s = s.trim();
    s.parse::<usize>().map_err(|_| format!("'{s}' is not a non-negative integer"))
}

impl FromStr for IndexSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut items = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(format!("empty entry in index list '{s}'"));
            }
            let item = match part.split_once("..") {
                Some((lo, hi)) => {
                    let lo = parse_index(lo)?;
                    let hi = match hi.trim() {
                        "k" => Upper::Arity,
                        h => Upper::Num(parse_index(h)?),
                    };
                    Item::Range(lo, hi)
                }
                None => Item::One(parse_index(part)?),
            };
            items.push(item);
        }
        Ok(IndexSpec { items, text: s.split(',').map(str::trim).collect::<Vec<_>>().join(",") })
    }
}

/// An inclusive integer range `a..b`, or a single value `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeSpec {
    pub lo: u64,
    pub hi: u64,
}

impl RangeSpec {
    pub fn single(v: u64) -> Self {
        RangeSpec { lo: v, hi: v }
    }

    pub fn iter(self) -> impl Iterator<Item = u64> + Clone {
        self.lo..=self.hi
    }
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num =
            |t: &str| t.trim().parse::<u64>().map_err(|_| format!("'{}' is not a non-negative integer", t.trim()));
        match s.split_once("..") {
            Some((lo, hi)) => {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                Ok(RangeSpec { lo: num(lo)?, hi: num(hi)? })
            }
            None => Ok(RangeSpec::single(num(s)?)),
        }
    }
}

/// Comma-separated signed integers.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| format!("'{}' is not an integer", t.trim()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_lists() {
        let j: IndexSpec = "1, 2".parse().unwrap();
        assert_eq!(j.resolve(5), vec![1, 2]);
        assert_eq!(j.to_string(), "1,2");
        let j: IndexSpec = "1..k".parse().unwrap();
        assert_eq!(j.resolve(4), vec![1, 2, 3, 4]);
        let j: IndexSpec = "3,1..2,2".parse().unwrap();
        assert_eq!(j.resolve(9), vec![1, 2, 3]);
        assert!("1,,2".parse::<IndexSpec>().is_err());
        assert!("a".parse::<IndexSpec>().is_err());
        assert!("1..x".parse::<IndexSpec>().is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!("3..13".parse::<RangeSpec>().unwrap(), RangeSpec { lo: 3, hi: 13 });
        assert_eq!("3..=5".parse::<RangeSpec>().unwrap(), RangeSpec { lo: 3, hi: 5 });
        assert_eq!("7".parse::<RangeSpec>().unwrap().iter().collect::<Vec<_>>(), vec![7]);
        assert_eq!("5..4".parse::<RangeSpec>().unwrap().iter().count(), 0);
        assert!("x..4".parse::<RangeSpec>().is_err());
    }

    #[test]
    fn int_lists() {
        assert_eq!(parse_int_list("1,-2, 3").unwrap(), vec![1, -2, 3]);
        assert!(parse_int_list("1,x").is_err());
    }
}
